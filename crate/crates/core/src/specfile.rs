//! JSON spec files: the on-disk recurrence format shared by the CLI and
//! the browser demo.
//!
//! ```json
//! {"order":2,"initial":["1","1"],"coeffs":[["0"],["1"],["1"]],"name":"fibonacci"}
//! ```
//!
//! `initial` holds α_1..α_L, `coeffs` holds the L+1 coefficient
//! polynomials f_0..f_L, each as a list of rational strings in ascending
//! powers of the 1-based term index i. Rationals use the strict
//! `-?digits(/digits)?` grammar from [`crate::rational::parse_rational`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::IndexPolynomial;
use crate::rational::{format_rational, parse_rational, Rational, RationalParseError};
use crate::recurrence::RecurrenceSpec;

/// Serialized form of a recurrence spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFile {
    pub order: usize,
    pub initial: Vec<String>,
    pub coeffs: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("invalid spec JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational at {path}: {source}")]
    Rational {
        path: String,
        #[source]
        source: RationalParseError,
    },
    #[error("{0}")]
    Shape(String),
}

impl SpecFile {
    pub fn parse(json: &str) -> Result<Self, SpecFileError> {
        Ok(serde_json::from_str(json)?)
    }

    /// Validate shapes, parse every rational string, and build the spec.
    /// Diagnostics carry the JSON path of the offending field.
    pub fn to_spec(&self) -> Result<RecurrenceSpec, SpecFileError> {
        if self.order == 0 {
            return Err(SpecFileError::Shape(
                "order must be at least 1".to_string(),
            ));
        }
        if self.initial.len() != self.order {
            return Err(SpecFileError::Shape(format!(
                "expected {} initial terms for order {}, got {}",
                self.order,
                self.order,
                self.initial.len()
            )));
        }
        if self.coeffs.len() != self.order + 1 {
            return Err(SpecFileError::Shape(format!(
                "expected {} coefficient polynomials for order {} (constant term first), got {}",
                self.order + 1,
                self.order,
                self.coeffs.len()
            )));
        }

        let initial = self
            .initial
            .iter()
            .enumerate()
            .map(|(k, s)| parse_at(s, &format!("initial[{k}]")))
            .collect::<Result<Vec<Rational>, _>>()?;

        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, poly)| {
                let coefficients = poly
                    .iter()
                    .enumerate()
                    .map(|(p, s)| parse_at(s, &format!("coeffs[{m}][{p}]")))
                    .collect::<Result<Vec<Rational>, _>>()?;
                Ok(IndexPolynomial::new(coefficients))
            })
            .collect::<Result<Vec<IndexPolynomial>, SpecFileError>>()?;

        Ok(RecurrenceSpec::new(initial, coeffs))
    }

    /// Canonical serialized form of a spec: rationals reduced, trailing
    /// zero coefficients trimmed (a zero polynomial serializes as ["0"]).
    pub fn from_spec(spec: &RecurrenceSpec, name: Option<&str>) -> Self {
        Self {
            order: spec.order(),
            initial: spec.initial().iter().map(format_rational).collect(),
            coeffs: spec
                .coeffs()
                .iter()
                .map(|p| {
                    let coefficients = p.coefficients();
                    if coefficients.is_empty() {
                        vec!["0".to_string()]
                    } else {
                        coefficients.iter().map(format_rational).collect()
                    }
                })
                .collect(),
            name: name.map(str::to_string),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec file shape always serializes")
    }
}

fn parse_at(s: &str, path: &str) -> Result<Rational, SpecFileError> {
    parse_rational(s).map_err(|source| SpecFileError::Rational {
        path: path.to_string(),
        source,
    })
}

/// Parse and validate a spec file, returning the spec together with its
/// canonical echo form (reduced rationals, trimmed polynomials).
pub fn load_spec(json: &str) -> Result<(RecurrenceSpec, SpecFile), SpecFileError> {
    let file = SpecFile::parse(json)?;
    let spec = file.to_spec()?;
    let echo = SpecFile::from_spec(&spec, file.name.as_deref());
    Ok((spec, echo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const FIB_JSON: &str =
        r#"{"order":2,"initial":["1","1"],"coeffs":[["0"],["1"],["1"]],"name":"fibonacci"}"#;

    #[test]
    fn parses_the_documented_example() {
        let (spec, echo) = load_spec(FIB_JSON).unwrap();
        assert_eq!(spec, fixtures::fibonacci());
        assert_eq!(echo.name.as_deref(), Some("fibonacci"));
        assert_eq!(echo.to_json(), FIB_JSON);
    }

    #[test]
    fn round_trips_every_fixture() {
        for (name, spec) in fixtures::named() {
            let file = SpecFile::from_spec(&spec, Some(name));
            let (reparsed, echo) = load_spec(&file.to_json()).unwrap();
            assert_eq!(reparsed, spec, "{name}");
            assert_eq!(echo, file, "{name}");
        }
    }

    #[test]
    fn noncanonical_input_is_reduced() {
        let json = r#"{"order":1,"initial":["2/4"],"coeffs":[["0"],["3/3"]]}"#;
        let (spec, echo) = load_spec(json).unwrap();
        assert_eq!(spec.alpha(1), &crate::rational::rat(1, 2));
        assert_eq!(echo.initial, vec!["1/2"]);
        assert_eq!(echo.coeffs[1], vec!["1"]);
    }

    #[test]
    fn rejects_malformed_rational_with_path() {
        let json = r#"{"order":2,"initial":["1","1//2"],"coeffs":[["0"],["1"],["1"]]}"#;
        let err = load_spec(json).unwrap_err();
        match err {
            SpecFileError::Rational { ref path, .. } => assert_eq!(path, "initial[1]"),
            other => panic!("expected rational error, got {other:?}"),
        }
        assert!(err.to_string().contains("initial[1]"));
    }

    #[test]
    fn rejects_zero_denominator_in_polynomial() {
        let json = r#"{"order":1,"initial":["1"],"coeffs":[["0"],["1/0"]]}"#;
        let err = load_spec(json).unwrap_err();
        match err {
            SpecFileError::Rational { ref path, .. } => assert_eq!(path, "coeffs[1][0]"),
            other => panic!("expected rational error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_order_zero() {
        let json = r#"{"order":0,"initial":[],"coeffs":[["1"]]}"#;
        assert!(matches!(
            load_spec(json).unwrap_err(),
            SpecFileError::Shape(_)
        ));
    }

    #[test]
    fn rejects_shape_mismatches() {
        let wrong_initial = r#"{"order":2,"initial":["1"],"coeffs":[["0"],["1"],["1"]]}"#;
        assert!(matches!(
            load_spec(wrong_initial).unwrap_err(),
            SpecFileError::Shape(_)
        ));

        let wrong_coeffs = r#"{"order":2,"initial":["1","1"],"coeffs":[["0"],["1"]]}"#;
        assert!(matches!(
            load_spec(wrong_coeffs).unwrap_err(),
            SpecFileError::Shape(_)
        ));
    }

    #[test]
    fn rejects_invalid_json() {
        assert!(matches!(
            load_spec("{not json").unwrap_err(),
            SpecFileError::Json(_)
        ));
    }
}
