//! Polynomials in the 1-based term index, the coefficient functions of a
//! recurrence.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{format_rational, Rational};

/// A univariate polynomial in the term index `i`, stored as rational
/// coefficients in ascending powers. Trailing zero coefficients are trimmed;
/// the zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexPolynomial {
    coeffs: Vec<Rational>,
}

impl IndexPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(value: Rational) -> Self {
        Self::new(vec![value])
    }

    /// The polynomial `f(i) = i`.
    pub fn identity() -> Self {
        Self::new(vec![Rational::zero(), Rational::from_integer(BigInt::from(1))])
    }

    /// Evaluate at a 1-based term index, exactly (Horner form).
    pub fn eval(&self, index: usize) -> Rational {
        debug_assert!(index >= 1, "term indices are 1-based");
        let i = Rational::from_integer(BigInt::from(index));
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &i + c;
        }
        acc
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when every coefficient is an integer.
    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(crate::rational::is_integer)
    }
}

impl std::fmt::Display for IndexPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match power {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "{}*i", format_rational(c))?,
                _ => write!(f, "{}*i^{}", format_rational(c), power)?,
            }
        }
        Ok(())
    }
}
