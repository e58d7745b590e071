use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::critical::CriticalData;
use super::exceptional::listed_points;
use super::field::FieldElement;
use super::orbit::PostCriticalSet;
use super::poly::{PolynomialMap, ProjectivePoint};
use crate::error::{Error, Result};
use crate::numeric::rational_str;

/// Cap on finite orbifold weights during the fixpoint iteration.
pub const NU_CAP: u64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nu {
    Finite(u64),
    Infinite,
}

impl Nu {
    fn times(self, e: usize) -> Nu {
        match self {
            Nu::Finite(n) => Nu::Finite(n * e as u64),
            Nu::Infinite => Nu::Infinite,
        }
    }

    fn lcm(self, other: Nu) -> Nu {
        match (self, other) {
            (Nu::Finite(a), Nu::Finite(b)) => Nu::Finite(num_integer::lcm(a, b)),
            _ => Nu::Infinite,
        }
    }

    /// `1 - 1/ν`, with `1` for `ν = ∞`.
    fn deficiency(self) -> BigRational {
        match self {
            Nu::Finite(n) => BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(n)),
            Nu::Infinite => BigRational::one(),
        }
    }
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nu::Finite(n) => write!(f, "{n}"),
            Nu::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for Nu {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Nu::Finite(n) => s.serialize_u64(*n),
            Nu::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbifoldClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

#[derive(Debug, Clone, Serialize)]
pub struct NuEntry {
    #[serde(serialize_with = "super::serialize_point")]
    pub point: ProjectivePoint,
    pub nu: Nu,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbifoldSignature {
    /// `ν` on `(P_f ∩ K) ∪ {∞}`, affine points first.
    pub nu: Vec<NuEntry>,
    #[serde(with = "rational_str")]
    pub chi: BigRational,
    pub class: OrbifoldClass,
}

impl OrbifoldSignature {
    /// The weights as a sorted tuple, e.g. `(2,2,∞)`.
    pub fn orbifold_type(&self) -> Vec<Nu> {
        let mut t: Vec<Nu> = self.nu.iter().map(|e| e.nu).collect();
        t.sort();
        t
    }

    pub fn type_string(&self) -> String {
        let parts: Vec<String> = self.orbifold_type().iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }

    pub fn is_type_22inf(&self) -> bool {
        self.orbifold_type() == [Nu::Finite(2), Nu::Finite(2), Nu::Infinite]
    }
}

/// Least `ν` with `ν(w)·e_f(w) | ν(f(w))` on `C_f ∪ P_f`, `ν = ∞` on
/// super-attracting cycles, plus `χ = 2 - Σ (1 - 1/ν)` over `P_f ∪ {∞}`.
pub fn orbifold_signature(
    f: &PolynomialMap,
    crit: &CriticalData,
    post: &PostCriticalSet,
) -> Result<OrbifoldSignature> {
    let listed = listed_points(crit, post);
    let mut nu: BTreeMap<FieldElement, Nu> = listed.iter().map(|z| (z.clone(), Nu::Finite(1))).collect();
    for p in &post.points {
        if p.preperiod != 0 {
            continue;
        }
        // p is periodic; its cycle is super-attracting if it meets C_f
        let mut cycle = vec![p.point.clone()];
        for _ in 1..p.period {
            let next = f.eval(cycle.last().unwrap());
            cycle.push(next);
        }
        if cycle.iter().any(|z| crit.contains(z)) {
            nu.insert(p.point.clone(), Nu::Infinite);
        }
    }
    loop {
        let mut changed = false;
        for w in &listed {
            let image = f.eval(w);
            let push = nu[w].times(crit.local_degree(w));
            let slot = nu.get_mut(&image).ok_or_else(|| {
                Error::InternalInconsistency(format!("f({w}) = {image} is not post-critical"))
            })?;
            let new = slot.lcm(push);
            if let Nu::Finite(n) = new {
                if n > NU_CAP {
                    return Err(Error::InternalInconsistency(format!(
                        "orbifold weight at {image} exceeds {NU_CAP}"
                    )));
                }
            }
            if new != *slot {
                *slot = new;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut entries: Vec<NuEntry> = post
        .elements()
        .map(|p| NuEntry {
            point: ProjectivePoint::Affine(p.clone()),
            nu: nu[p],
        })
        .collect();
    entries.push(NuEntry {
        point: ProjectivePoint::Infinity,
        nu: Nu::Infinite,
    });
    let two = BigRational::from_integer(BigInt::from(2));
    let chi = entries.iter().fold(two, |acc, e| acc - e.nu.deficiency());
    let class = if chi.is_zero() {
        OrbifoldClass::Euclidean
    } else if chi.is_positive() {
        OrbifoldClass::Spherical
    } else {
        OrbifoldClass::Hyperbolic
    };
    Ok(OrbifoldSignature { nu: entries, chi, class })
}
