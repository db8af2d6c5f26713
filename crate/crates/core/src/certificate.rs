//! The linear-system certificate machinery: the recurrence at depth N as a
//! unit-lower-banded system A·y = b (shifted so the solution is
//! β_k = E_k − r), the Cramer column-replacement indicator, witness rows of
//! A⁻¹, the coefficient collapse of Σ R_i·S_i, the rank argument that
//! forces trivial assignments at non-reached indices, and the Q_k rational
//! expressions with their target substitution.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{det_elimination, inverse_row, rank, ExactMatrix, ExactVector};
use crate::rational::Rational;
use crate::recurrence::{eval_terms, oracle_reach, RecurrenceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("evaluation point entry {index} is zero")]
    ZeroEvaluationPoint { index: usize },
}

/// The recurrence at depth N as A·y = b with target shift r baked into b.
///
/// A has 1 on the diagonal and −f_m(k) at (k, k−m) for k > L (1-based), so
/// det A = 1: the uniqueness assumption holds by construction. The held b
/// is the shifted b′ = b − r·(A·1), whose solution is β_k = E_k − r, so
/// zero entries of the solution mark exactly the indices where r is
/// reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    n: usize,
    a: ExactMatrix,
    b: ExactVector,
    r: Rational,
    det_a: Rational,
}

impl LinearSystem {
    pub fn depth(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn b(&self) -> &ExactVector {
        &self.b
    }

    pub fn target(&self) -> &Rational {
        &self.r
    }

    pub fn det_a(&self) -> &Rational {
        &self.det_a
    }

    /// The shifted solution β = solve(A, b), entry k being E_k − r.
    pub fn beta(&self) -> ExactVector {
        crate::matrix::solve(&self.a, &self.b).expect("det A = 1, never singular")
    }
}

/// Encode the recurrence at depth `n` with target `r`.
pub fn build_system(spec: &RecurrenceSpec, n: usize, r: &Rational) -> LinearSystem {
    assert!(n >= 1, "depth must be at least 1");
    let order = spec.order();

    let mut a = ExactMatrix::identity(n);
    let mut base = ExactVector::zeros(n);
    for k in 1..=n {
        let row = k - 1;
        if k <= order {
            base.set(row, spec.alpha(k).clone());
        } else {
            base.set(row, spec.coeff_at(0, k));
            for m in 1..=order {
                a.set(row, k - m - 1, -spec.coeff_at(m, k));
            }
        }
    }

    let ones = ExactVector::new(vec![Rational::one(); n]);
    let row_sums = a.mul_vector(&ones);
    let b = base
        .iter()
        .zip(row_sums.iter())
        .map(|(base_k, sum_k)| base_k - &(r * sum_k))
        .collect();

    let det_a = det_elimination(&a).expect("square by construction");
    assert!(det_a.is_one(), "system determinant must be 1 by construction");

    LinearSystem {
        n,
        a,
        b,
        r: r.clone(),
        det_a,
    }
}

/// Determinant of A with column t (1-based) replaced by b. Because
/// det A = 1, the value is exactly β_t = E_t − r, and it vanishes iff the
/// target is reached at index t.
pub fn cramer_indicator(sys: &LinearSystem, t: usize) -> Rational {
    assert!((1..=sys.n).contains(&t), "index {t} out of range");
    det_elimination(&sys.a.with_column_replaced(t - 1, &sys.b))
        .expect("square by construction")
}

/// Smallest index whose Cramer indicator vanishes: the linear-system
/// route to the answer the term oracle finds by scanning the sequence.
pub fn cramer_reach(sys: &LinearSystem) -> Option<usize> {
    (1..=sys.n).find(|&t| cramer_indicator(sys, t).is_zero())
}

/// Row t of A⁻¹: the vector w with wᵀ·(column k of A) = δ_{tk} and
/// wᵀ·b = β_t, so wᵀ·b = 0 iff the target is reached at index t.
pub fn witness(sys: &LinearSystem, t: usize) -> ExactVector {
    assert!((1..=sys.n).contains(&t), "index {t} out of range");
    inverse_row(&sys.a, t).expect("det A = 1, never singular")
}

/// Variable coefficients of the R polynomials: entry (i, j) is the
/// coefficient of z_j in R_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DMatrix(ExactMatrix);

impl DMatrix {
    pub fn new(matrix: ExactMatrix) -> Self {
        assert!(matrix.is_square(), "coefficient grid must be square");
        Self(matrix)
    }

    pub fn zeros(n: usize) -> Self {
        Self(ExactMatrix::zeros(n, n))
    }

    /// The assignment from the reachability certificate: column t holds
    /// the witness for index t, every other column is zero. When
    /// E_t = r this collapses Σ R_i·S_i to the constant 1.
    pub fn certificate_assignment(sys: &LinearSystem, t: usize) -> Self {
        let w = witness(sys, t);
        let mut m = ExactMatrix::zeros(sys.n, sys.n);
        for (i, entry) in w.iter().enumerate() {
            if !entry.is_zero() {
                m.set(i, t - 1, entry.clone());
            }
        }
        Self(m)
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        self.0.at(i, j)
    }
}

/// Σ R_i·S_i regrouped by shape: a constant, one coefficient per cross
/// term z_j/z_k (j ≠ k), and one per linear term z_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapsedCoefficients {
    /// Σ_j Σ_i D[i][j]·A[i][j].
    pub const_term: Rational,
    /// cross[j][k] = Σ_i D[i][j]·A[i][k] for j ≠ k; the diagonal is
    /// meaningless and stored as zero.
    pub cross: ExactMatrix,
    /// linear[j] = −Σ_i D[i][j]·b[i].
    pub linear: ExactVector,
}

impl CollapsedCoefficients {
    pub fn cross_all_zero(&self) -> bool {
        (0..self.cross.rows()).all(|j| self.cross.row(j).iter().all(Zero::is_zero))
    }

    pub fn linear_all_zero(&self) -> bool {
        self.linear.is_zero()
    }

    /// True exactly when the collapsed sum is identically 1.
    pub fn is_constant_one(&self) -> bool {
        self.const_term.is_one() && self.cross_all_zero() && self.linear_all_zero()
    }

    /// Evaluate const + Σ cross[j][k]·z_j/z_k + Σ linear[j]·z_j at a
    /// concrete point.
    pub fn eval(&self, z: &ExactVector) -> Result<Rational, CertificateError> {
        require_nonzero(z)?;
        let n = self.cross.rows();
        assert_eq!(z.len(), n, "evaluation point length mismatch");
        let mut acc = self.const_term.clone();
        for j in 0..n {
            for k in 0..n {
                if j == k || self.cross.at(j, k).is_zero() {
                    continue;
                }
                acc += self.cross.at(j, k) * &(&z[j] / &z[k]);
            }
            if !self.linear[j].is_zero() {
                acc += &self.linear[j] * &z[j];
            }
        }
        Ok(acc)
    }
}

fn require_nonzero(z: &ExactVector) -> Result<(), CertificateError> {
    match z.iter().position(Zero::is_zero) {
        Some(idx) => Err(CertificateError::ZeroEvaluationPoint { index: idx + 1 }),
        None => Ok(()),
    }
}

/// Collect the coefficients of Σ R_i·S_i by shape, exactly.
pub fn collapse(sys: &LinearSystem, d: &DMatrix) -> CollapsedCoefficients {
    let n = sys.n;
    assert_eq!(d.size(), n, "coefficient grid size mismatch");

    let mut const_term = Rational::zero();
    let mut cross = ExactMatrix::zeros(n, n);
    let mut linear = ExactVector::zeros(n);

    for j in 0..n {
        for k in 0..n {
            let mut acc = Rational::zero();
            for i in 0..n {
                let dij = d.at(i, j);
                if dij.is_zero() || sys.a.at(i, k).is_zero() {
                    continue;
                }
                acc += dij * sys.a.at(i, k);
            }
            if j == k {
                const_term += acc;
            } else {
                cross.set(j, k, acc);
            }
        }
        let mut acc = Rational::zero();
        for i in 0..n {
            let dij = d.at(i, j);
            if !dij.is_zero() && !sys.b[i].is_zero() {
                acc += dij * &sys.b[i];
            }
        }
        linear.set(j, -acc);
    }

    CollapsedCoefficients {
        const_term,
        cross,
        linear,
    }
}

/// Evaluate Σ R_i(z)·S_i(z) directly at a nonzero point, where
/// R_i = Σ_j D[i][j]·z_j and S_i = Σ_k A[i][k]/z_k − b_i. Cross-validates
/// the symbolic [`collapse`] route.
pub fn eval_sum(
    sys: &LinearSystem,
    d: &DMatrix,
    z: &ExactVector,
) -> Result<Rational, CertificateError> {
    let n = sys.n;
    assert_eq!(d.size(), n, "coefficient grid size mismatch");
    assert_eq!(z.len(), n, "evaluation point length mismatch");
    require_nonzero(z)?;

    let mut total = Rational::zero();
    for i in 0..n {
        let mut r_i = Rational::zero();
        for j in 0..n {
            if !d.at(i, j).is_zero() {
                r_i += d.at(i, j) * &z[j];
            }
        }
        if r_i.is_zero() {
            continue;
        }
        let mut s_i = -sys.b[i].clone();
        for k in 0..n {
            if !sys.a.at(i, k).is_zero() {
                s_i += sys.a.at(i, k) / &z[k];
            }
        }
        total += r_i * s_i;
    }
    Ok(total)
}

/// The rank argument at index t: stack the columns {a_k : k ≠ t} of A
/// together with b as the rows of an N×N matrix. Full rank means the only
/// way to annihilate every cross and linear coefficient is the all-zero
/// column t, which happens exactly when E_t ≠ r.
pub fn forcing_rank(sys: &LinearSystem, t: usize) -> (usize, bool) {
    assert!((1..=sys.n).contains(&t), "index {t} out of range");
    let n = sys.n;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for k in 1..=n {
        if k == t {
            continue;
        }
        rows.push(sys.a.column(k - 1).into_vec());
    }
    rows.push(sys.b.as_slice().to_vec());
    let value = rank(&ExactMatrix::from_rows(rows));
    (value, value == n)
}

/// Evaluate the rational expressions Q_1..Q_N at a nonzero point x, with
/// every occurrence of 1/x_i replaced by (r·x_i + 1)/x_i (the target
/// substitution; r = 0 recovers the plain 1/x_i reading):
///
/// ```text
/// Q_k = α_k − (r·x_k + 1)/x_k                                   k ≤ L
/// Q_k = f_0(k) + Σ_m f_m(k)·(r·x_{k−m} + 1)/x_{k−m}
///       − (r·x_k + 1)/x_k                                       k > L
/// ```
///
/// At x_k = 1/(E_k − r) each substituted term becomes E_k, reproducing the
/// recurrence rows, so the whole vector vanishes.
pub fn eval_q(
    spec: &RecurrenceSpec,
    n: usize,
    r: &Rational,
    x: &ExactVector,
) -> Result<ExactVector, CertificateError> {
    assert!(n >= 1, "depth must be at least 1");
    assert_eq!(x.len(), n, "evaluation point length mismatch");
    require_nonzero(x)?;

    let substituted: Vec<Rational> = x
        .iter()
        .map(|xi| (r * xi + Rational::one()) / xi)
        .collect();

    let order = spec.order();
    let mut values = Vec::with_capacity(n);
    for k in 1..=n {
        let mut q = if k <= order {
            spec.alpha(k).clone()
        } else {
            let mut q = spec.coeff_at(0, k);
            for m in 1..=order {
                let f = spec.coeff_at(m, k);
                if !f.is_zero() {
                    q += f * &substituted[k - m - 1];
                }
            }
            q
        };
        q -= &substituted[k - 1];
        values.push(q);
    }
    Ok(ExactVector::new(values))
}

/// Verdict for a single index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexVerdict {
    /// 1-based term index t.
    pub index: usize,
    /// The Cramer determinant, equal to E_t − r.
    pub cramer_value: Rational,
    /// True iff cramer_value = 0, i.e. E_t = r.
    pub reaches: bool,
    /// The witness row of A⁻¹, attached when the index reaches the target.
    pub witness: Option<ExactVector>,
    /// Rank of the stacked {a_k : k ≠ t} ∪ {b} matrix.
    pub forcing_rank: usize,
    /// True iff that rank is N, forcing the trivial assignment at t.
    pub forced_trivial: bool,
}

/// Full per-index certificate sweep at depth N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub depth: usize,
    pub target: Rational,
    pub verdicts: Vec<IndexVerdict>,
    /// True iff some index reaches the target, i.e. Σ R_i·S_i = 1 is
    /// attainable.
    pub sum_can_equal_one: bool,
}

impl CertificateReport {
    pub fn reached_indices(&self) -> Vec<usize> {
        self.verdicts
            .iter()
            .filter(|v| v.reaches)
            .map(|v| v.index)
            .collect()
    }
}

/// Run the certificate mechanism at every index t ≤ N. The verdict set is
/// cross-checked against the direct-iteration oracle before returning;
/// disagreement would mean an internal inconsistency and panics.
pub fn certify(spec: &RecurrenceSpec, n: usize, r: &Rational) -> CertificateReport {
    let sys = build_system(spec, n, r);
    let verdicts: Vec<IndexVerdict> = (1..=n)
        .map(|t| {
            let cramer_value = cramer_indicator(&sys, t);
            let reaches = cramer_value.is_zero();
            let (rank_value, forced_trivial) = forcing_rank(&sys, t);
            IndexVerdict {
                index: t,
                cramer_value,
                reaches,
                witness: reaches.then(|| witness(&sys, t)),
                forcing_rank: rank_value,
                forced_trivial,
            }
        })
        .collect();

    let terms = eval_terms(spec, n);
    for v in &verdicts {
        assert_eq!(
            v.reaches,
            terms.term(v.index) == r,
            "certificate disagrees with direct iteration at index {}",
            v.index
        );
    }
    let first_reach = verdicts.iter().find(|v| v.reaches).map(|v| v.index);
    assert_eq!(
        first_reach,
        oracle_reach(spec, r, n),
        "certificate disagrees with the reachability oracle"
    );

    let sum_can_equal_one = first_reach.is_some();
    CertificateReport {
        depth: n,
        target: r.clone(),
        verdicts,
        sum_can_equal_one,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(values: &[i64]) -> ExactVector {
        ExactVector::new(values.iter().map(|&v| int(v)).collect())
    }

    fn nonzero_point<R: Rng>(rng: &mut R, n: usize) -> ExactVector {
        (0..n)
            .map(|_| loop {
                let v = fixtures::random_rational(rng, 9, false);
                if !v.is_zero() {
                    break v;
                }
            })
            .collect()
    }

    #[test]
    fn system_solution_is_shifted_terms() {
        let fib = fixtures::fibonacci();
        let sys = build_system(&fib, 5, &int(0));
        assert_eq!(sys.beta(), ints(&[1, 1, 2, 3, 5]));

        let sys = build_system(&fib, 5, &int(3));
        assert_eq!(sys.beta(), ints(&[-2, -2, -1, 0, 2]));
    }

    #[test]
    fn system_at_depth_equal_to_order() {
        let fib = fixtures::fibonacci();
        let sys = build_system(&fib, 2, &int(0));
        assert_eq!(sys.a(), &ExactMatrix::identity(2));
        assert_eq!(sys.b(), &ints(&[1, 1]));
        assert!(sys.det_a().is_one());
    }

    #[test]
    fn system_matrix_is_unit_lower_banded() {
        let spec = fixtures::period6();
        let sys = build_system(&spec, 7, &rat(1, 3));
        let a = sys.a();
        for row in 0..7 {
            assert!(a.at(row, row).is_one());
            for col in 0..7 {
                if col > row || row - col > spec.order() {
                    assert!(a.at(row, col).is_zero(), "({row}, {col})");
                }
            }
        }
    }

    #[test]
    fn cramer_examples() {
        let sys = build_system(&fixtures::period6(), 6, &int(0));
        assert_eq!(cramer_indicator(&sys, 3), int(0));

        let sys = build_system(&fixtures::fibonacci(), 6, &int(0));
        assert_eq!(cramer_indicator(&sys, 3), int(2));

        let spec = fixtures::mersenne_like();
        let sys = build_system(&spec, 4, spec.alpha(1));
        assert_eq!(cramer_indicator(&sys, 1), int(0));
    }

    #[test]
    fn cramer_equals_solution_entries() {
        let spec = fixtures::factorial();
        let sys = build_system(&spec, 8, &rat(5, 3));
        let beta = sys.beta();
        for t in 1..=8 {
            assert_eq!(cramer_indicator(&sys, t), beta[t - 1]);
        }
    }

    #[test]
    fn cramer_reach_finds_smallest_zero() {
        let sys = build_system(&fixtures::period6(), 10, &int(0));
        assert_eq!(cramer_reach(&sys), Some(3));

        let sys = build_system(&fixtures::fibonacci(), 10, &int(0));
        assert_eq!(cramer_reach(&sys), None);

        let spec = fixtures::mersenne_like();
        let sys = build_system(&spec, 10, &int(7));
        assert_eq!(cramer_reach(&sys), Some(3));
    }

    #[test]
    fn witness_identities() {
        let sys = build_system(&fixtures::fibonacci(), 2, &int(0));
        assert_eq!(witness(&sys, 1), ints(&[1, 0]));

        let sys = build_system(&fixtures::period6(), 6, &int(0));
        assert_eq!(witness(&sys, 3).dot(sys.b()), int(0));

        let sys = build_system(&fixtures::fibonacci(), 6, &int(0));
        let w = witness(&sys, 4);
        assert_eq!(w.dot(sys.b()), int(3));
        for k in 1..=6 {
            let expect = if k == 4 { int(1) } else { int(0) };
            assert_eq!(w.dot(&sys.a().column(k - 1)), expect);
        }
    }

    #[test]
    fn collapse_of_zero_assignment() {
        let sys = build_system(&fixtures::fibonacci(), 5, &int(0));
        let collapsed = collapse(&sys, &DMatrix::zeros(5));
        assert!(collapsed.const_term.is_zero());
        assert!(collapsed.cross_all_zero());
        assert!(collapsed.linear_all_zero());
    }

    #[test]
    fn collapse_of_certificate_assignment_at_reached_index() {
        let sys = build_system(&fixtures::period6(), 6, &int(0));
        let d = DMatrix::certificate_assignment(&sys, 3);
        let collapsed = collapse(&sys, &d);
        assert!(collapsed.is_constant_one());
    }

    #[test]
    fn collapse_of_certificate_assignment_at_missed_index() {
        let sys = build_system(&fixtures::fibonacci(), 6, &int(0));
        let d = DMatrix::certificate_assignment(&sys, 3);
        let collapsed = collapse(&sys, &d);
        assert_eq!(collapsed.const_term, int(1));
        assert!(collapsed.cross_all_zero());
        assert_eq!(collapsed.linear[2], int(-2));
    }

    #[test]
    fn eval_sum_zero_assignment() {
        let sys = build_system(&fixtures::fibonacci(), 4, &int(0));
        let z = ints(&[1, 2, 3, 4]);
        assert_eq!(eval_sum(&sys, &DMatrix::zeros(4), &z).unwrap(), int(0));
    }

    #[test]
    fn eval_sum_is_one_at_reached_index() {
        let sys = build_system(&fixtures::mersenne_like(), 10, &int(7));
        let d = DMatrix::certificate_assignment(&sys, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let z = nonzero_point(&mut rng, 10);
            assert_eq!(eval_sum(&sys, &d, &z).unwrap(), int(1));
        }
    }

    #[test]
    fn eval_sum_matches_collapsed_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let sys = build_system(&fixtures::period6(), 6, &rat(1, 2));
        for _ in 0..5 {
            let mut grid = ExactMatrix::zeros(6, 6);
            for i in 0..6 {
                for j in 0..6 {
                    grid.set(i, j, fixtures::random_rational(&mut rng, 9, false));
                }
            }
            let d = DMatrix::new(grid);
            let collapsed = collapse(&sys, &d);
            let z = nonzero_point(&mut rng, 6);
            assert_eq!(
                eval_sum(&sys, &d, &z).unwrap(),
                collapsed.eval(&z).unwrap()
            );
        }
    }

    #[test]
    fn eval_sum_rejects_zero_point() {
        let sys = build_system(&fixtures::fibonacci(), 3, &int(0));
        let z = ints(&[1, 0, 2]);
        assert_eq!(
            eval_sum(&sys, &DMatrix::zeros(3), &z),
            Err(CertificateError::ZeroEvaluationPoint { index: 2 })
        );
    }

    #[test]
    fn rank_argument_examples() {
        let sys = build_system(&fixtures::period6(), 6, &int(0));
        assert_eq!(forcing_rank(&sys, 3), (5, false));

        let sys = build_system(&fixtures::fibonacci(), 6, &int(0));
        assert_eq!(forcing_rank(&sys, 3), (6, true));

        let fib = fixtures::fibonacci();
        let sys = build_system(&fib, 2, fib.alpha(1));
        assert!(!forcing_rank(&sys, 1).1);
    }

    #[test]
    fn q_vanishes_at_reciprocal_shifted_terms() {
        let spec = fixtures::fibonacci();
        let x = ExactVector::new(vec![int(1), int(1), rat(1, 2)]);
        let q = eval_q(&spec, 3, &int(0), &x).unwrap();
        assert!(q.is_zero());

        // Fibonacci terms are all >= 1, so r = -1 is never reached and
        // every x_k = 1/(E_k - r) is defined.
        let r = int(-1);
        let terms = eval_terms(&spec, 8);
        let x: ExactVector = (1..=8)
            .map(|k| Rational::one() / (terms.term(k) - &r))
            .collect();
        let q = eval_q(&spec, 8, &r, &x).unwrap();
        assert!(q.is_zero(), "{q:?}");
    }

    #[test]
    fn q_first_entry_trivial_case() {
        let spec = fixtures::fibonacci();
        let x = ints(&[1, 1, 1]);
        let q = eval_q(&spec, 3, &int(0), &x).unwrap();
        assert_eq!(q[0], int(0));
    }

    #[test]
    fn q_rejects_zero_point() {
        let spec = fixtures::fibonacci();
        let x = ints(&[1, 0, 1]);
        assert_eq!(
            eval_q(&spec, 3, &int(0), &x),
            Err(CertificateError::ZeroEvaluationPoint { index: 2 })
        );
    }

    #[test]
    fn certify_period6() {
        let report = certify(&fixtures::period6(), 10, &int(0));
        assert!(report.sum_can_equal_one);
        assert_eq!(report.reached_indices(), vec![3, 6, 9]);
        for v in &report.verdicts {
            assert_eq!(v.reaches, v.index % 3 == 0);
            assert_eq!(v.forced_trivial, !v.reaches);
            assert_eq!(v.witness.is_some(), v.reaches);
            let expected_rank = if v.reaches { 9 } else { 10 };
            assert_eq!(v.forcing_rank, expected_rank);
        }
    }

    #[test]
    fn certify_fibonacci_never_zero() {
        let report = certify(&fixtures::fibonacci(), 20, &int(0));
        assert!(!report.sum_can_equal_one);
        assert!(report.verdicts.iter().all(|v| v.forced_trivial));
        assert!(report.verdicts.iter().all(|v| v.witness.is_none()));
    }

    #[test]
    fn certify_mersenne_hits_seven() {
        let report = certify(&fixtures::mersenne_like(), 10, &int(7));
        assert_eq!(report.reached_indices(), vec![3]);
    }
}
