use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{FieldElement, NumberField};
use super::poly::{PolynomialMap, ProjectivePoint};
use crate::error::{Error, Result};
use crate::numeric::parse_rational;

/// A field element in JSON: a rational string `"p/q"` or the full
/// coefficient vector `["c0", "c1", ...]` over `1, y, y^2, ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Scalar(String),
    Vector(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldJson {
    pub min_poly: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalPointJson {
    pub point: ElementJson,
    pub local_degree: usize,
}

/// The polynomial file format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    pub coeffs: Vec<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_points: Option<Vec<CriticalPointJson>>,
}

/// A generator word attached to a point of `P_f ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDesignation {
    /// `"inf"`, a rational `"p/q"`, or a JSON coefficient vector.
    pub point: String,
    pub word: String,
}

impl PolynomialDocument {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn number_field(&self) -> Result<Arc<NumberField>> {
        let field = match &self.field {
            None => NumberField::rationals(),
            Some(f) => {
                let m = f
                    .min_poly
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>>>()?;
                NumberField::new(m)?
            }
        };
        Ok(Arc::new(field))
    }

    pub fn polynomial(&self) -> Result<PolynomialMap> {
        let k = self.number_field()?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_element(&k, c))
            .collect::<Result<Vec<_>>>()?;
        PolynomialMap::map(k, coeffs)
    }

    /// The claimed critical points, if the document lists any.
    pub fn claimed_critical_points(&self, k: &NumberField) -> Result<Option<Vec<(FieldElement, usize)>>> {
        self.critical_points
            .as_ref()
            .map(|cps| {
                cps.iter()
                    .map(|c| Ok((parse_element(k, &c.point)?, c.local_degree)))
                    .collect()
            })
            .transpose()
    }

    pub fn from_polynomial(f: &PolynomialMap) -> Self {
        let k = f.field();
        Self {
            field: (!k.is_rational()).then(|| FieldJson {
                min_poly: k.min_poly().iter().map(crate::numeric::format_rational).collect(),
            }),
            coeffs: f.coeffs().iter().map(element_json).collect(),
            critical_points: None,
        }
    }
}

pub fn element_json(z: &FieldElement) -> ElementJson {
    match z.as_rational() {
        Some(r) if z.coeffs().len() == 1 => ElementJson::Scalar(crate::numeric::format_rational(r)),
        _ => ElementJson::Vector(z.to_strings()),
    }
}

pub fn parse_element(k: &NumberField, e: &ElementJson) -> Result<FieldElement> {
    match e {
        ElementJson::Scalar(s) => Ok(k.from_rational(parse_rational(s)?)),
        ElementJson::Vector(v) => {
            if v.len() > k.degree() {
                return Err(Error::Schema(format!(
                    "field element has {} coefficients, field degree is {}",
                    v.len(),
                    k.degree()
                )));
            }
            let c = v.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
            Ok(k.element(c))
        }
    }
}

/// Parses `"inf"`, a rational, or a JSON coefficient vector.
pub fn parse_point(k: &NumberField, s: &str) -> Result<ProjectivePoint> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") || s == "∞" {
        return Ok(ProjectivePoint::Infinity);
    }
    let e = if s.starts_with('[') {
        let v: Vec<String> = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        ElementJson::Vector(v)
    } else {
        ElementJson::Scalar(s.to_string())
    };
    Ok(ProjectivePoint::Affine(parse_element(k, &e)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_and_vector_forms() {
        let doc = PolynomialDocument::parse(r#"{"coeffs":["-2", ["0"], "1"]}"#).unwrap();
        let f = doc.polynomial().unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.to_string(), "x^2 - 2");
        let round = serde_json::to_string(&PolynomialDocument::from_polynomial(&f)).unwrap();
        assert_eq!(round, r#"{"coeffs":["-2/1","0/1","1/1"]}"#);
    }

    #[test]
    fn number_field_documents() {
        let doc = PolynomialDocument::parse(
            r#"{"field":{"min_poly":["-2","0","1"]},"coeffs":[["0","1"],"0","1"],
                "critical_points":[{"point":"0","local_degree":2}]}"#,
        )
        .unwrap();
        let f = doc.polynomial().unwrap();
        assert_eq!(f.field().degree(), 2);
        let claimed = doc.claimed_critical_points(f.field()).unwrap().unwrap();
        assert_eq!(claimed[0].1, 2);
        assert!(parse_point(f.field(), r#"["1","1"]"#).is_ok());
        assert!(parse_point(f.field(), r#"["1","1","1"]"#).is_err());
        assert_eq!(parse_point(f.field(), "inf").unwrap(), ProjectivePoint::Infinity);
    }

    #[test]
    fn rejects_low_degree_and_bad_json() {
        assert!(PolynomialDocument::parse(r#"{"coeffs":["1","1"]}"#).unwrap().polynomial().is_err());
        assert!(PolynomialDocument::parse(r#"{"coef":[]}"#).is_err());
    }
}
