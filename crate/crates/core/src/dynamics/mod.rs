//! Exact characteristic-0 dynamics of polynomials over number fields:
//! critical data, post-critical orbits, exceptional sets, orbifolds and
//! the FPP classification, plus a consistency check of a wreath recursion
//! against a polynomial.

mod chebyshev;
mod classify;
mod critical;
mod document;
mod exceptional;
mod field;
mod orbifold;
mod orbit;
mod poly;
mod validate;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

pub use chebyshev::{detect_twisted_chebyshev, ChebyshevAttempt, TwistedChebyshevReport};
pub use classify::{analyze, classify_polynomial, DynOrbifoldReport, Verdict, MIXING_DELAY_BOUND, SCOPE_NOTE};
pub use critical::{critical_data, rational_roots, CriticalData, CriticalPoint};
pub use document::{
    element_json, parse_element, parse_point, CriticalPointJson, ElementJson, FieldJson, PointDesignation,
    PolynomialDocument,
};
pub use exceptional::{
    delta_set, is_critically_exceptional, is_exceptional, listed_points, preimages, sigma_set, upsilon_set,
    Preimages,
};
pub use field::{FieldElement, NumberField};
pub use orbifold::{orbifold_signature, Nu, NuEntry, OrbifoldClass, OrbifoldSignature, NU_CAP};
pub use orbit::{post_critical_orbit, PcfOutcome, PostCriticalPoint, PostCriticalSet, DEFAULT_PCF_BOUND};
pub use poly::{Polynomial, PolynomialMap, ProjectivePoint};
pub use validate::{validate_recursion_against_polynomial, ClauseReport, ValidationReport};

fn serialize_element<S: Serializer>(z: &FieldElement, s: S) -> Result<S::Ok, S::Error> {
    element_json(z).serialize(s)
}

fn serialize_elements<S: Serializer>(v: &[FieldElement], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&element_json(z))?;
    }
    seq.end()
}

fn serialize_point<S: Serializer>(p: &ProjectivePoint, s: S) -> Result<S::Ok, S::Error> {
    match p {
        ProjectivePoint::Affine(z) => element_json(z).serialize(s),
        ProjectivePoint::Infinity => s.serialize_str("inf"),
    }
}

fn serialize_weighted<S: Serializer>(v: &[(FieldElement, usize)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (z, e) in v {
        seq.serialize_element(&(element_json(z), e))?;
    }
    seq.end()
}
