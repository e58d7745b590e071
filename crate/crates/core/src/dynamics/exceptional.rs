//! The exceptional-type subsets of `P_f ∩ K`:
//! `Δ_f = {p : f⁻¹(p) ⊆ C_f ∪ P_f}`, the maximal `Σ = f⁻¹(Σ) \ C_f`, and
//! the maximal `Υ = f⁻¹(Υ) \ ((C_f ∪ P_f) \ Υ)`.
//!
//! Preimages are decided by exact division of `f(x) - p` by the linear
//! factors `x - s` of the listed points `s ∈ C_f ∪ P_f`; whatever degree is
//! left over belongs to preimages outside the listed set.

use std::collections::BTreeSet;

use serde::Serialize;

use super::critical::CriticalData;
use super::field::FieldElement;
use super::orbit::PostCriticalSet;
use super::poly::{PolynomialMap, ProjectivePoint};
use crate::error::{Error, Result};

/// `f⁻¹(p)` split into listed points (with local degrees) and the total
/// degree of the unlisted part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Preimages {
    #[serde(serialize_with = "super::serialize_element")]
    pub point: FieldElement,
    #[serde(serialize_with = "super::serialize_weighted")]
    pub listed: Vec<(FieldElement, usize)>,
    pub unlisted_degree: usize,
}

impl Preimages {
    pub fn is_exhausted(&self) -> bool {
        self.unlisted_degree == 0
    }
}

/// `C_f ∪ (P_f ∩ K)`, sorted.
pub fn listed_points(crit: &CriticalData, post: &PostCriticalSet) -> BTreeSet<FieldElement> {
    crit.points
        .iter()
        .map(|c| c.point.clone())
        .chain(post.elements().cloned())
        .collect()
}

/// Divides `f(x) - p` by `(x - s)^{e_f(s)}` for each listed `s` with
/// `f(s) = p`; every division has to be exact.
pub fn preimages(f: &PolynomialMap, listed: &BTreeSet<FieldElement>, p: &FieldElement) -> Result<Preimages> {
    let mut rest = f.sub_constant(p);
    let mut found = Vec::new();
    for s in listed {
        if &f.eval(s) != p {
            continue;
        }
        let e = f.local_degree(&ProjectivePoint::Affine(s.clone()));
        for _ in 0..e {
            let (q, r) = rest.div_linear(s);
            if !r.is_zero() {
                return Err(Error::InternalInconsistency(format!(
                    "(x - {s})^{e} does not divide f(x) - {p}"
                )));
            }
            rest = q;
        }
        found.push((s.clone(), e));
    }
    Ok(Preimages {
        point: p.clone(),
        listed: found,
        unlisted_degree: rest.degree(),
    })
}

/// `Δ_f ∩ K`, which has at most two points for a polynomial.
pub fn delta_set(f: &PolynomialMap, crit: &CriticalData, post: &PostCriticalSet) -> Result<Vec<FieldElement>> {
    let listed = listed_points(crit, post);
    let mut delta = Vec::new();
    for p in post.elements() {
        if preimages(f, &listed, p)?.is_exhausted() {
            delta.push(p.clone());
        }
    }
    if delta.len() > 2 {
        return Err(Error::InternalInconsistency(format!(
            "#Δ = {} exceeds 2 for a polynomial",
            delta.len()
        )));
    }
    Ok(delta)
}

/// `f⁻¹(S)` among the listed points, or `None` if some point of `S` has
/// an unlisted preimage.
fn listed_preimage_set(
    f: &PolynomialMap,
    listed: &BTreeSet<FieldElement>,
    set: &BTreeSet<FieldElement>,
) -> Result<Option<BTreeSet<FieldElement>>> {
    let mut out = BTreeSet::new();
    for p in set {
        let pre = preimages(f, listed, p)?;
        if !pre.is_exhausted() {
            return Ok(None);
        }
        out.extend(pre.listed.into_iter().map(|(s, _)| s));
    }
    Ok(Some(out))
}

/// Checks `S = f⁻¹(S) \ C_f`.
pub fn is_exceptional(
    f: &PolynomialMap,
    crit: &CriticalData,
    post: &PostCriticalSet,
    set: &BTreeSet<FieldElement>,
) -> Result<bool> {
    let listed = listed_points(crit, post);
    Ok(match listed_preimage_set(f, &listed, set)? {
        None => false,
        Some(pre) => pre.into_iter().filter(|q| !crit.contains(q)).collect::<BTreeSet<_>>() == *set,
    })
}

/// Checks `S = f⁻¹(S) \ ((C_f ∪ P_f) \ S)`.
pub fn is_critically_exceptional(
    f: &PolynomialMap,
    crit: &CriticalData,
    post: &PostCriticalSet,
    set: &BTreeSet<FieldElement>,
) -> Result<bool> {
    let listed = listed_points(crit, post);
    Ok(match listed_preimage_set(f, &listed, set)? {
        None => false,
        Some(pre) => {
            pre.into_iter()
                .filter(|q| set.contains(q) || !listed.contains(q))
                .collect::<BTreeSet<_>>()
                == *set
        }
    })
}

/// The maximal exceptional `Σ_f ∩ K`: the union of all exceptional subsets
/// of `Δ_f` (every exceptional set lies in `Δ_f`, and unions of
/// exceptional sets are exceptional).
pub fn sigma_set(f: &PolynomialMap, crit: &CriticalData, post: &PostCriticalSet) -> Result<Vec<FieldElement>> {
    let delta = delta_set(f, crit, post)?;
    let mut sigma = BTreeSet::new();
    for mask in 1u32..(1 << delta.len()) {
        let subset: BTreeSet<FieldElement> = delta
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p.clone())
            .collect();
        if is_exceptional(f, crit, post, &subset)? {
            sigma.extend(subset);
        }
    }
    if !is_exceptional(f, crit, post, &sigma)? {
        return Err(Error::InternalInconsistency("union of exceptional sets is not exceptional".into()));
    }
    Ok(sigma.into_iter().collect())
}

/// `Υ_f ∩ K` as the largest forward-invariant subset of `Δ_f ∩ K`,
/// re-checked against its defining equation.
pub fn upsilon_set(f: &PolynomialMap, crit: &CriticalData, post: &PostCriticalSet) -> Result<Vec<FieldElement>> {
    let delta = delta_set(f, crit, post)?;
    let mut ups: BTreeSet<FieldElement> = delta.iter().cloned().collect();
    loop {
        let keep: BTreeSet<FieldElement> = ups.iter().filter(|p| ups.contains(&f.eval(p))).cloned().collect();
        if keep.len() == ups.len() {
            break;
        }
        ups = keep;
    }
    if !is_critically_exceptional(f, crit, post, &ups)? {
        return Err(Error::InternalInconsistency(
            "forward-invariant part of Δ fails the defining equation of Υ".into(),
        ));
    }
    let sigma = sigma_set(f, crit, post)?;
    if !sigma.iter().all(|s| ups.contains(s)) {
        return Err(Error::InternalInconsistency("Σ is not contained in Υ".into()));
    }
    Ok(ups.into_iter().collect())
}
