//! Recurrence specifications and exact term evaluation.
//!
//! A spec of order `L` holds initial terms `α_1..α_L` and coefficient
//! polynomials `f_0..f_L` in the 1-based term index `i`, defining
//!
//! ```text
//! E_k = α_k                                        for k <= L
//! E_k = f_0(k) + f_1(k)·E_{k-1} + ... + f_L(k)·E_{k-L}   for k > L
//! ```
//!
//! Direct iteration here is the ground-truth oracle every other
//! mechanism in this crate is checked against.

use num_traits::Zero;

use crate::poly::IndexPolynomial;
use crate::rational::Rational;

/// Order, initial terms, and coefficient polynomials of a recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    initial: Vec<Rational>,
    coeffs: Vec<IndexPolynomial>,
}

impl RecurrenceSpec {
    /// Build a spec from `L` initial terms and `L + 1` coefficient
    /// polynomials (`f_0` first). Panics when the shape invariants are
    /// violated; user-facing input is validated in the spec-file parser
    /// before reaching this constructor.
    pub fn new(initial: Vec<Rational>, coeffs: Vec<IndexPolynomial>) -> Self {
        assert!(!initial.is_empty(), "order must be at least 1");
        assert_eq!(
            coeffs.len(),
            initial.len() + 1,
            "need order + 1 coefficient polynomials (constant term first)"
        );
        Self { initial, coeffs }
    }

    /// The order `L`.
    pub fn order(&self) -> usize {
        self.initial.len()
    }

    /// Initial terms `α_1..α_L`.
    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    /// `α_k`, 1-based, `k <= L`.
    pub fn alpha(&self, k: usize) -> &Rational {
        assert!((1..=self.order()).contains(&k), "alpha index {k} out of range");
        &self.initial[k - 1]
    }

    /// All coefficient polynomials, `f_0` first.
    pub fn coeffs(&self) -> &[IndexPolynomial] {
        &self.coeffs
    }

    /// Coefficient polynomial `f_m` for the `E_{i-m}` term (`f_0` is the
    /// inhomogeneous part).
    pub fn coeff(&self, m: usize) -> &IndexPolynomial {
        &self.coeffs[m]
    }

    /// `f_m` evaluated at term index `i`.
    pub fn coeff_at(&self, m: usize, i: usize) -> Rational {
        self.coeffs[m].eval(i)
    }

    /// True when every initial term and every coefficient of every
    /// polynomial is an integer. Such specs generate integer terms only,
    /// which exempts them from the convergence caveat.
    pub fn is_integer(&self) -> bool {
        self.initial.iter().all(crate::rational::is_integer)
            && self.coeffs.iter().all(IndexPolynomial::is_integer)
    }
}

/// Exact terms `E_1..E_N` produced by iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSequence {
    terms: Vec<Rational>,
}

impl TermSequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `E_k`, 1-based.
    pub fn term(&self, k: usize) -> &Rational {
        assert!((1..=self.terms.len()).contains(&k), "term index {k} out of range");
        &self.terms[k - 1]
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Rational> {
        self.terms
    }
}

/// Evaluate `E_1..E_N` by direct iteration, exactly.
pub fn eval_terms(spec: &RecurrenceSpec, n: usize) -> TermSequence {
    assert!(n >= 1, "depth must be at least 1");
    let order = spec.order();
    let mut terms: Vec<Rational> = Vec::with_capacity(n);
    for k in 1..=n {
        if k <= order {
            terms.push(spec.alpha(k).clone());
            continue;
        }
        let mut value = spec.coeff_at(0, k);
        for m in 1..=order {
            let f = spec.coeff_at(m, k);
            if !f.is_zero() {
                value += f * &terms[k - m - 1];
            }
        }
        terms.push(value);
    }
    TermSequence { terms }
}

/// Evaluate the scaled system `F_1..F_N` with `F_0` as the scale:
/// `F_k = α_k·F_0` for `k <= L` and
/// `F_k = f_0(k)·F_0 + Σ f_m(k)·F_{k-m}` for `k > L`. Every term is a
/// linear multiple of `F_0`.
pub fn eval_scaled(spec: &RecurrenceSpec, f0: &Rational, n: usize) -> TermSequence {
    assert!(n >= 1, "depth must be at least 1");
    let order = spec.order();
    let mut terms: Vec<Rational> = Vec::with_capacity(n);
    for k in 1..=n {
        if k <= order {
            terms.push(spec.alpha(k) * f0);
            continue;
        }
        let mut value = spec.coeff_at(0, k) * f0;
        for m in 1..=order {
            let f = spec.coeff_at(m, k);
            if !f.is_zero() {
                value += f * &terms[k - m - 1];
            }
        }
        terms.push(value);
    }
    TermSequence { terms }
}

/// Smallest `k <= N` with `E_k = r`, if any. Ground truth for the
/// determinant and certificate mechanisms.
pub fn oracle_reach(spec: &RecurrenceSpec, r: &Rational, n: usize) -> Option<usize> {
    eval_terms(spec, n)
        .terms()
        .iter()
        .position(|term| term == r)
        .map(|idx| idx + 1)
}
