//! Named example recurrences used across tests, the CLI, and the demo,
//! plus seeded random-spec generation for property suites.

use rand::Rng;

use crate::poly::IndexPolynomial;
use crate::rational::{int, rat, Rational};
use crate::recurrence::RecurrenceSpec;

fn poly(coeffs: &[Rational]) -> IndexPolynomial {
    IndexPolynomial::new(coeffs.to_vec())
}

/// `E_i = E_{i-1} + E_{i-2}`, starting 1, 1. Terms: 1, 1, 2, 3, 5, 8, ...
pub fn fibonacci() -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![int(1), int(1)],
        vec![poly(&[int(0)]), poly(&[int(1)]), poly(&[int(1)])],
    )
}

/// `E_i = E_{i-1} - E_{i-2}`, starting 1, 1. Period six:
/// 1, 1, 0, -1, -1, 0, 1, ... with zeros at every third index.
pub fn period6() -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![int(1), int(1)],
        vec![poly(&[int(0)]), poly(&[int(1)]), poly(&[int(-1)])],
    )
}

/// `E_i = 2E_{i-1} + 1`, starting 1. Terms: 1, 3, 7, 15, 31, ...
/// (one less than the powers of two).
pub fn mersenne_like() -> RecurrenceSpec {
    RecurrenceSpec::new(vec![int(1)], vec![poly(&[int(1)]), poly(&[int(2)])])
}

/// `E_i = i·E_{i-1}`, starting 1. Terms: 1, 2, 6, 24, ... — exercises a
/// non-constant coefficient polynomial.
pub fn factorial() -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![int(1)],
        vec![poly(&[int(0)]), poly(&[int(0), int(1)])],
    )
}

/// `E_i = E_{i-1}`, starting 1/2. Constantly one half: every factor
/// `|E_k - 0|` sits strictly between 0 and 1, the convergence-caveat
/// situation.
pub fn constant_half() -> RecurrenceSpec {
    RecurrenceSpec::new(vec![rat(1, 2)], vec![poly(&[int(0)]), poly(&[int(1)])])
}

/// All named fixtures with their conventional names.
pub fn named() -> Vec<(&'static str, RecurrenceSpec)> {
    vec![
        ("fibonacci", fibonacci()),
        ("period6", period6()),
        ("mersenne-like", mersenne_like()),
        ("factorial", factorial()),
        ("constant-half", constant_half()),
    ]
}

/// Bounds for random spec generation.
#[derive(Debug, Clone)]
pub struct RandomSpecParams {
    /// Order drawn uniformly from `1..=max_order`.
    pub max_order: usize,
    /// Coefficient polynomial degree drawn uniformly from `0..=max_degree`.
    pub max_degree: usize,
    /// Numerators drawn from `[-magnitude, magnitude]`, denominators from
    /// `[1, magnitude]`.
    pub magnitude: i64,
    /// When set, denominators are forced to 1.
    pub integers_only: bool,
}

impl Default for RandomSpecParams {
    fn default() -> Self {
        Self {
            max_order: 4,
            max_degree: 2,
            magnitude: 9,
            integers_only: false,
        }
    }
}

/// Uniform rational with numerator in `[-magnitude, magnitude]` and
/// denominator in `[1, magnitude]`, reduced to canonical form.
pub fn random_rational<R: Rng>(rng: &mut R, magnitude: i64, integers_only: bool) -> Rational {
    let numer = rng.random_range(-magnitude..=magnitude);
    let denom = if integers_only {
        1
    } else {
        rng.random_range(1..=magnitude)
    };
    rat(numer, denom)
}

/// Seeded random recurrence spec within the given bounds.
pub fn random_spec<R: Rng>(rng: &mut R, params: &RandomSpecParams) -> RecurrenceSpec {
    let order = rng.random_range(1..=params.max_order);
    let initial = (0..order)
        .map(|_| random_rational(rng, params.magnitude, params.integers_only))
        .collect();
    let coeffs = (0..=order)
        .map(|_| {
            let degree = rng.random_range(0..=params.max_degree);
            IndexPolynomial::new(
                (0..=degree)
                    .map(|_| random_rational(rng, params.magnitude, params.integers_only))
                    .collect(),
            )
        })
        .collect();
    RecurrenceSpec::new(initial, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mersenne_terms() {
        let seq = crate::recurrence::eval_terms(&mersenne_like(), 4);
        let expect: Vec<_> = [1, 3, 7, 15].iter().map(|&x| int(x)).collect();
        assert_eq!(seq.terms(), expect.as_slice());
    }

    #[test]
    fn random_spec_respects_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let params = RandomSpecParams::default();
        for _ in 0..50 {
            let spec = random_spec(&mut rng, &params);
            assert!((1..=4).contains(&spec.order()));
            assert_eq!(spec.coeffs().len(), spec.order() + 1);
            for p in spec.coeffs() {
                assert!(p.degree().is_none_or(|d| d <= 2));
            }
        }
    }

    #[test]
    fn random_spec_is_deterministic_per_seed() {
        let params = RandomSpecParams::default();
        let a = random_spec(&mut ChaCha8Rng::seed_from_u64(42), &params);
        let b = random_spec(&mut ChaCha8Rng::seed_from_u64(42), &params);
        assert_eq!(a, b);
    }

    #[test]
    fn integers_only_mode() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = RandomSpecParams {
            integers_only: true,
            ..RandomSpecParams::default()
        };
        for _ in 0..20 {
            assert!(random_spec(&mut rng, &params).is_integer());
        }
    }
}
