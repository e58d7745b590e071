use num_rational::BigRational;
use serde::Serialize;

use super::critical::CriticalData;
use super::exceptional::{delta_set, sigma_set, upsilon_set};
use super::field::FieldElement;
use super::orbifold::{orbifold_signature, NuEntry, OrbifoldClass};
use super::orbit::{post_critical_orbit, PostCriticalSet};
use super::poly::PolynomialMap;
use crate::error::{Error, Result};
use crate::numeric::{ratio, rational_str};

/// Delay `N` with which every `g_p`, `p ∉ Υ_f`, is seen in `St_G(n)_v`
/// for `|v| ≥ n + N`.
pub const MIXING_DELAY_BOUND: usize = 4;

pub const SCOPE_NOTE: &str =
    "sets are computed inside the supplied field K; points outside K are not visible";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    /// Orbifold of type `(2,2,∞)`; the fixed-point proportion is `1/2`
    /// for odd `d` and `1/4` for even `d`.
    ChebyshevLike {
        #[serde(with = "rational_str")]
        predicted_fpp: BigRational,
    },
    /// `#(Υ_f ∩ K) ≤ 1`: the group is mixing, so the fixed-point
    /// proportion is 0.
    ZeroFpp { route: &'static str, delay_bound: usize },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::ChebyshevLike { .. } => "ChebyshevLike",
            Verdict::ZeroFpp { .. } => "ZeroFpp",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DynOrbifoldReport {
    pub polynomial: String,
    pub degree: usize,
    pub critical: CriticalData,
    pub post_critical: PostCriticalSet,
    /// `∞` is a post-critical, totally ramified fixed point.
    pub infinity_post_critical: bool,
    #[serde(serialize_with = "super::serialize_elements")]
    pub delta: Vec<FieldElement>,
    #[serde(serialize_with = "super::serialize_elements")]
    pub sigma: Vec<FieldElement>,
    #[serde(serialize_with = "super::serialize_elements")]
    pub upsilon: Vec<FieldElement>,
    pub nu: Vec<NuEntry>,
    #[serde(with = "rational_str")]
    pub chi: BigRational,
    pub class: OrbifoldClass,
    pub orbifold_type: String,
    pub verdict: Verdict,
    pub scope: &'static str,
}

/// Full analysis: PCF check, exceptional sets, orbifold and verdict.
pub fn analyze(f: &PolynomialMap, crit: &CriticalData, bound: usize) -> Result<DynOrbifoldReport> {
    let post = post_critical_orbit(f, crit, bound)?.into_result(bound)?;
    let delta = delta_set(f, crit, &post)?;
    let sigma = sigma_set(f, crit, &post)?;
    let upsilon = upsilon_set(f, crit, &post)?;
    let sig = orbifold_signature(f, crit, &post)?;
    let d = f.degree();

    let inconsistent = |msg: String| Err(Error::InternalInconsistency(msg));
    if !upsilon.iter().all(|p| delta.contains(p)) {
        return inconsistent("Υ is not contained in Δ".into());
    }
    let verdict = match upsilon.len() {
        0 | 1 => {
            if sig.is_type_22inf() {
                return inconsistent(format!(
                    "orbifold type (2,2,∞) but #Υ = {}",
                    upsilon.len()
                ));
            }
            Verdict::ZeroFpp {
                route: "mixing",
                delay_bound: MIXING_DELAY_BOUND,
            }
        }
        2 => {
            if !sig.is_type_22inf() {
                return inconsistent(format!("#Υ = 2 but orbifold type is {}", sig.type_string()));
            }
            if sigma.len() != 2 {
                return inconsistent(format!("orbifold type (2,2,∞) but #Σ = {}", sigma.len()));
            }
            Verdict::ChebyshevLike {
                predicted_fpp: if d % 2 == 1 { ratio(1, 2) } else { ratio(1, 4) },
            }
        }
        n => return inconsistent(format!("#Υ = {n} exceeds 2 for a polynomial")),
    };
    Ok(DynOrbifoldReport {
        polynomial: f.to_string(),
        degree: d,
        critical: crit.clone(),
        infinity_post_critical: true,
        post_critical: post,
        delta,
        sigma,
        upsilon,
        orbifold_type: sig.type_string(),
        nu: sig.nu,
        chi: sig.chi,
        class: sig.class,
        verdict,
        scope: SCOPE_NOTE,
    })
}

pub fn classify_polynomial(f: &PolynomialMap, crit: &CriticalData, bound: usize) -> Result<Verdict> {
    Ok(analyze(f, crit, bound)?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::critical::critical_data;
    use crate::dynamics::field::NumberField;
    use crate::dynamics::orbit::DEFAULT_PCF_BOUND;
    use std::sync::Arc;

    fn verdict(c: &[i64]) -> Result<Verdict> {
        let k = Arc::new(NumberField::rationals());
        let coeffs = c.iter().map(|&x| k.from_int(x)).collect();
        let f = PolynomialMap::map(k, coeffs).unwrap();
        let crit = critical_data(&f, None).unwrap();
        classify_polynomial(&f, &crit, DEFAULT_PCF_BOUND)
    }

    #[test]
    fn theorem_examples() {
        assert_eq!(
            verdict(&[-2, 0, 1]).unwrap(),
            Verdict::ChebyshevLike {
                predicted_fpp: ratio(1, 4)
            }
        );
        assert_eq!(
            verdict(&[0, -3, 0, 1]).unwrap(),
            Verdict::ChebyshevLike {
                predicted_fpp: ratio(1, 2)
            }
        );
        assert_eq!(verdict(&[-1, 0, 1]).unwrap().name(), "ZeroFpp");
        assert_eq!(verdict(&[0, 0, 1]).unwrap().name(), "ZeroFpp");
        // x^2 + 1 is not PCF
        assert!(matches!(verdict(&[1, 0, 1]), Err(Error::NotPcf { .. })));
    }

    #[test]
    fn report_serializes() {
        let k = Arc::new(NumberField::rationals());
        let f = PolynomialMap::map(k.clone(), vec![k.from_int(-2), k.zero(), k.one()]).unwrap();
        let crit = critical_data(&f, None).unwrap();
        let r = analyze(&f, &crit, DEFAULT_PCF_BOUND).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["chi"], "0/1");
        assert_eq!(j["verdict"]["verdict"], "ChebyshevLike");
        assert_eq!(j["verdict"]["predicted_fpp"], "1/4");
        assert_eq!(j["orbifold_type"], "(2,2,∞)");
        assert_eq!(j["nu"][2]["nu"], "inf");
    }
}
