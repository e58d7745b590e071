use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::critical::CriticalData;
use super::field::FieldElement;
use super::poly::PolynomialMap;
use crate::error::{Error, Result};

pub const DEFAULT_PCF_BOUND: usize = 64;

/// Orbit points whose coefficients outgrow this many bits are treated as
/// escaping (a number-field orbit has no archimedean escape test here).
const SIZE_LIMIT_BITS: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PostCriticalPoint {
    #[serde(serialize_with = "super::serialize_element")]
    pub point: FieldElement,
    /// Steps until the orbit of the point enters its cycle.
    pub preperiod: usize,
    pub period: usize,
}

/// `P_f ∩ K`; `∞` is always post-critical for a polynomial and is not listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PostCriticalSet {
    pub points: Vec<PostCriticalPoint>,
}

impl PostCriticalSet {
    pub fn contains(&self, z: &FieldElement) -> bool {
        self.points.binary_search_by(|p| p.point.cmp(z)).is_ok()
    }

    pub fn elements(&self) -> impl Iterator<Item = &FieldElement> {
        self.points.iter().map(|p| &p.point)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PcfOutcome {
    Pcf(PostCriticalSet),
    NotPcfWithinBound {
        #[serde(serialize_with = "super::serialize_element")]
        critical: FieldElement,
        #[serde(serialize_with = "super::serialize_elements")]
        prefix: Vec<FieldElement>,
        reason: &'static str,
    },
}

impl PcfOutcome {
    pub fn into_result(self, bound: usize) -> Result<PostCriticalSet> {
        match self {
            Self::Pcf(p) => Ok(p),
            Self::NotPcfWithinBound { .. } => Err(Error::NotPcf { bound }),
        }
    }
}

/// Over `Q`: a radius beyond which `|f(z)| ≥ 2|z|`, so orbits escape.
fn escape_radius(f: &PolynomialMap) -> Option<BigRational> {
    let coeffs: Option<Vec<&BigRational>> = f.coeffs().iter().map(|c| c.as_rational()).collect();
    let coeffs = coeffs?;
    let (lead, rest) = coeffs.split_last()?;
    let sum: BigRational = rest.iter().map(|c| c.abs()).sum();
    let two = BigRational::from_integer(2.into());
    let r = (sum + &two) / lead.abs();
    Some(if r > two { r } else { two })
}

fn escapes(z: &FieldElement, radius: Option<&BigRational>) -> Option<&'static str> {
    if let (Some(r), Some(q)) = (radius, z.as_rational()) {
        if z.coeffs().len() == 1 && &q.abs() > r {
            return Some("escaped past the escape radius");
        }
    }
    let bits = z
        .coeffs()
        .iter()
        .map(|c| c.numer().bits() + c.denom().bits())
        .max()
        .unwrap_or(0);
    (bits > SIZE_LIMIT_BITS).then_some("orbit coefficients exceeded the size limit")
}

/// Forward orbits of the critical points with exact cycle detection.
/// `bound` caps the number of images computed per critical point.
pub fn post_critical_orbit(f: &PolynomialMap, crit: &CriticalData, bound: usize) -> Result<PcfOutcome> {
    if bound == 0 {
        return Err(Error::InvalidArgument("PCF bound must be at least 1".into()));
    }
    let radius = escape_radius(f);
    let mut post: BTreeSet<FieldElement> = BTreeSet::new();
    for c in &crit.points {
        let mut prefix: Vec<FieldElement> = Vec::new();
        let mut z = f.eval(&c.point);
        loop {
            if post.contains(&z) || prefix.contains(&z) {
                break;
            }
            let reason = escapes(&z, radius.as_ref());
            prefix.push(z.clone());
            if reason.is_some() || prefix.len() > bound {
                return Ok(PcfOutcome::NotPcfWithinBound {
                    critical: c.point.clone(),
                    prefix,
                    reason: reason.unwrap_or("iteration bound reached"),
                });
            }
            z = f.eval(&z);
        }
        post.extend(prefix);
    }
    let points = post
        .iter()
        .map(|p| {
            let (preperiod, period) = tail_and_cycle(f, p);
            PostCriticalPoint {
                point: p.clone(),
                preperiod,
                period,
            }
        })
        .collect();
    Ok(PcfOutcome::Pcf(PostCriticalSet { points }))
}

/// `(preperiod, period)` of a point already known to be preperiodic.
fn tail_and_cycle(f: &PolynomialMap, z: &FieldElement) -> (usize, usize) {
    let mut seen: BTreeMap<FieldElement, usize> = BTreeMap::new();
    let mut cur = z.clone();
    let mut i = 0;
    loop {
        if let Some(&j) = seen.get(&cur) {
            return (j, i - j);
        }
        seen.insert(cur.clone(), i);
        cur = f.eval(&cur);
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::critical::critical_data;
    use crate::dynamics::field::NumberField;
    use std::sync::Arc;

    fn poly(c: &[i64]) -> PolynomialMap {
        let k = Arc::new(NumberField::rationals());
        let coeffs = c.iter().map(|&x| k.from_int(x)).collect();
        PolynomialMap::map(k, coeffs).unwrap()
    }

    fn pcf(c: &[i64]) -> PostCriticalSet {
        let f = poly(c);
        let crit = critical_data(&f, None).unwrap();
        post_critical_orbit(&f, &crit, DEFAULT_PCF_BOUND)
            .unwrap()
            .into_result(DEFAULT_PCF_BOUND)
            .unwrap()
    }

    #[test]
    fn chebyshev_orbit() {
        let p = pcf(&[-2, 0, 1]);
        let pts: Vec<(String, usize, usize)> = p
            .points
            .iter()
            .map(|q| (q.point.to_string(), q.preperiod, q.period))
            .collect();
        assert_eq!(pts, [("-2".into(), 1, 1), ("2".into(), 0, 1)]);
    }

    #[test]
    fn basilica_two_cycle() {
        let p = pcf(&[-1, 0, 1]);
        assert_eq!(p.len(), 2);
        assert!(p.points.iter().all(|q| q.preperiod == 0 && q.period == 2));
    }

    #[test]
    fn escaping_orbit_is_a_value() {
        let f = poly(&[1, 0, 1]);
        let crit = critical_data(&f, None).unwrap();
        match post_critical_orbit(&f, &crit, 10).unwrap() {
            PcfOutcome::NotPcfWithinBound { prefix, .. } => {
                let s: Vec<String> = prefix.iter().map(ToString::to_string).collect();
                assert_eq!(&s[..3], ["1", "2", "5"]);
            }
            other => panic!("expected escape, got {other:?}"),
        }
        assert!(matches!(
            post_critical_orbit(&f, &crit, 64).unwrap().into_result(64),
            Err(Error::NotPcf { bound: 64 })
        ));
    }
}
