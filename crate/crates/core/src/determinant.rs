//! The Ω determinant family: an i×i lower-Hessenberg matrix whose
//! determinant equals the i-th recurrence term, its (i+1)×(i+1) augmented
//! variant whose determinant is Ω_i − r, the partial product
//! Π(Ω_k − r) that vanishes exactly when r is reached within depth N, the
//! block-diagonal μ carrying that product as a single determinant, and the
//! small-factor convergence caveat monitor.
//!
//! Layout convention (validated by the three-way identity in
//! [`verify_theorem1`]): columns are ordered F_0, F_1, ..., row k for
//! k ≤ L encodes α_k·F_0 − F_k, row k for k > L encodes
//! f_0(k)·F_0 + Σ_m f_m(k)·F_{k−m} − F_k. In the square Ω_i form the F_i
//! column is deleted, so row i carries no −1.

use num_traits::{One, Signed, Zero};

use crate::matrix::{det_elimination, ExactMatrix};
use crate::rational::{bit_size, int, is_integer, Rational};
use crate::recurrence::{eval_terms, RecurrenceSpec};

/// Trailing-window length used by [`partial_product`] when no explicit
/// window is given (clamped to the depth).
pub const DEFAULT_CAVEAT_WINDOW: usize = 8;

/// The i×i matrix whose determinant is Ω_i = E_i.
pub fn build_omega(spec: &RecurrenceSpec, i: usize) -> ExactMatrix {
    assert!(i >= 1, "matrix size must be at least 1");
    let order = spec.order();
    let mut m = ExactMatrix::zeros(i, i);
    for k in 1..=i {
        let row = k - 1;
        if k <= order {
            m.set(row, 0, spec.alpha(k).clone());
        } else {
            m.set(row, 0, spec.coeff_at(0, k));
            for step in 1..=order {
                m.set(row, k - step, spec.coeff_at(step, k));
            }
        }
        if k < i {
            m.set(row, k, int(-1));
        }
    }
    m
}

/// The (i+1)×(i+1) matrix over columns F_0..F_i whose last row
/// (−r, 0, ..., 0, 1) encodes F_i − r·F_0 = 0; its determinant is Ω_i − r.
/// Deleting the last row and column recovers [`build_omega`].
pub fn build_augmented(spec: &RecurrenceSpec, i: usize, r: &Rational) -> ExactMatrix {
    assert!(i >= 1, "matrix size must be at least 1");
    let order = spec.order();
    let mut m = ExactMatrix::zeros(i + 1, i + 1);
    for k in 1..=i {
        let row = k - 1;
        if k <= order {
            m.set(row, 0, spec.alpha(k).clone());
        } else {
            m.set(row, 0, spec.coeff_at(0, k));
            for step in 1..=order {
                m.set(row, k - step, spec.coeff_at(step, k));
            }
        }
        m.set(row, k, int(-1));
    }
    m.set(i, 0, -r.clone());
    m.set(i, i, Rational::one());
    m
}

/// Ω_1..Ω_N by the cofactor recurrence along the constant −1
/// superdiagonal: Ω_k = α_k for k ≤ L, and
/// Ω_k = f_0(k) + Σ_m f_m(k)·Ω_{k−m} for k > L. No matrix is built; this
/// is the structural fast path cross-checked against the generic
/// determinant in [`verify_theorem1`].
pub fn omega_values(spec: &RecurrenceSpec, n: usize) -> Vec<Rational> {
    assert!(n >= 1, "depth must be at least 1");
    let order = spec.order();
    let mut values: Vec<Rational> = Vec::with_capacity(n);
    for k in 1..=n {
        if k <= order {
            values.push(spec.alpha(k).clone());
            continue;
        }
        let mut value = spec.coeff_at(0, k);
        for m in 1..=order {
            let f = spec.coeff_at(m, k);
            if !f.is_zero() {
                value += f * &values[k - m - 1];
            }
        }
        values.push(value);
    }
    values
}

/// Ω_i alone; see [`omega_values`].
pub fn omega_value(spec: &RecurrenceSpec, i: usize) -> Rational {
    omega_values(spec, i).pop().expect("nonempty by construction")
}

/// One failed identity inside [`verify_theorem1`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Failure {
    /// Index i at which the identity broke.
    pub index: usize,
    /// Which identity broke.
    pub check: &'static str,
    pub expected: Rational,
    pub actual: Rational,
}

/// Outcome of the three-way identity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Report {
    pub depth: usize,
    /// Target used for the shifted-determinant leg of the sweep.
    pub sampled_r: Rational,
    /// Indices verified before stopping (equals depth on full pass).
    pub checked: usize,
    pub first_failure: Option<Theorem1Failure>,
}

impl Theorem1Report {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// For every i ≤ N, check det(build_omega) = omega_value = E_i, and
/// det(build_augmented) = Ω_i − r for a sampled target r. The sample is
/// the middle term of the sequence itself, so the shifted determinant
/// vanishes at that index and the zero case is always exercised. A
/// failure here means the layout convention is broken and is reported,
/// not thrown.
pub fn verify_theorem1(spec: &RecurrenceSpec, n: usize) -> Theorem1Report {
    let terms = eval_terms(spec, n);
    let omegas = omega_values(spec, n);
    let sampled_r = terms.term(n.div_ceil(2)).clone();

    let mut report = Theorem1Report {
        depth: n,
        sampled_r: sampled_r.clone(),
        checked: 0,
        first_failure: None,
    };

    for i in 1..=n {
        let expected = terms.term(i);
        if &omegas[i - 1] != expected {
            report.first_failure = Some(Theorem1Failure {
                index: i,
                check: "cofactor recurrence vs direct iteration",
                expected: expected.clone(),
                actual: omegas[i - 1].clone(),
            });
            return report;
        }
        let det = det_elimination(&build_omega(spec, i)).expect("square by construction");
        if &det != expected {
            report.first_failure = Some(Theorem1Failure {
                index: i,
                check: "omega determinant vs direct iteration",
                expected: expected.clone(),
                actual: det,
            });
            return report;
        }
        let shifted = det_elimination(&build_augmented(spec, i, &sampled_r))
            .expect("square by construction");
        let expected_shift = expected - &sampled_r;
        if shifted != expected_shift {
            report.first_failure = Some(Theorem1Failure {
                index: i,
                check: "augmented determinant vs omega minus target",
                expected: expected_shift,
                actual: shifted,
            });
            return report;
        }
        report.checked = i;
    }
    report
}

/// Exact partial product Π_{k≤N}(Ω_k − r) with reachability bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductReport {
    pub depth: usize,
    pub target: Rational,
    /// Π_{k≤N}(Ω_k − r), exact. Zero exactly when a factor vanished.
    pub value: Rational,
    /// Smallest k with Ω_k = r, when present.
    pub first_zero_index: Option<usize>,
    pub caveat_flag: bool,
    pub integer_exempt: bool,
    /// The trailing factors Ω_k − r inspected by the caveat monitor.
    pub caveat_window: Vec<Rational>,
    /// Combined numerator+denominator bit size of the product, for
    /// growth observability.
    pub product_bits: u64,
}

/// Compute Π_{k≤N}(Ω_k − r) exactly. Once a factor hits zero the running
/// multiplication short-circuits (the value is exactly 0 from then on)
/// while the factors themselves are still recorded for the caveat window.
/// The caveat uses the default trailing window, clamped to N.
pub fn partial_product(spec: &RecurrenceSpec, r: &Rational, n: usize) -> ProductReport {
    assert!(n >= 1, "depth must be at least 1");
    let omegas = omega_values(spec, n);
    let mut value = Rational::one();
    let mut first_zero_index = None;
    let mut factors = Vec::with_capacity(n);
    for (idx, omega) in omegas.iter().enumerate() {
        let factor = omega - r;
        if factor.is_zero() && first_zero_index.is_none() {
            first_zero_index = Some(idx + 1);
        }
        if first_zero_index.is_none() {
            value *= &factor;
        }
        factors.push(factor);
    }
    if first_zero_index.is_some() {
        value = Rational::zero();
    }

    let window = DEFAULT_CAVEAT_WINDOW.min(n);
    let caveat = caveat_from_factors(spec, r, &factors, window);
    ProductReport {
        depth: n,
        target: r.clone(),
        product_bits: bit_size(&value),
        value,
        first_zero_index,
        caveat_flag: caveat.caveat_flag,
        integer_exempt: caveat.integer_exempt,
        caveat_window: caveat.values,
    }
}

/// Caveat monitor outcome: whether every trailing factor sits strictly
/// between 0 and 1 in absolute value, the situation in which a nonzero
/// infinite product could still drift toward zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaveatReport {
    pub depth: usize,
    pub window: usize,
    /// Ω_k − r for k in the trailing window (N−W, N].
    pub values: Vec<Rational>,
    /// True iff 0 < |Ω_k − r| < 1 for every k in the window.
    pub caveat_flag: bool,
    /// True when all spec data and r are integers: every |Ω_k − r| is then
    /// a nonnegative integer and the caveat situation cannot occur.
    pub integer_exempt: bool,
}

/// Inspect the trailing `window` factors Ω_k − r of a depth-N run.
pub fn convergence_monitor(
    spec: &RecurrenceSpec,
    r: &Rational,
    n: usize,
    window: usize,
) -> CaveatReport {
    assert!(window >= 1, "window must be at least 1");
    assert!(window <= n, "window {window} exceeds depth {n}");
    let factors: Vec<Rational> = omega_values(spec, n)
        .iter()
        .map(|omega| omega - r)
        .collect();
    caveat_from_factors(spec, r, &factors, window)
}

fn caveat_from_factors(
    spec: &RecurrenceSpec,
    r: &Rational,
    factors: &[Rational],
    window: usize,
) -> CaveatReport {
    let n = factors.len();
    let values: Vec<Rational> = factors[n - window..].to_vec();
    let one = Rational::one();
    let caveat_flag = values
        .iter()
        .all(|v| !v.is_zero() && v.abs() < one);
    CaveatReport {
        depth: n,
        window,
        values,
        caveat_flag,
        integer_exempt: spec.is_integer() && is_integer(r),
    }
}

/// Block-diagonal assembly of the augmented matrices for k = 1..N; its
/// determinant equals the depth-N partial product.
pub fn build_mu(spec: &RecurrenceSpec, r: &Rational, n: usize) -> ExactMatrix {
    assert!(n >= 1, "depth must be at least 1");
    let blocks: Vec<ExactMatrix> = (1..=n).map(|k| build_augmented(spec, k, r)).collect();
    ExactMatrix::block_diagonal(&blocks)
}
