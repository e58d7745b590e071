use serde::Serialize;

use super::classify::{analyze, Verdict};
use super::critical::CriticalData;
use super::field::FieldElement;
use super::poly::{Polynomial, PolynomialMap};
use crate::error::{Error, Result};

/// One attempt `λ(x) = αx + β` with `g = λ ∘ f ∘ λ⁻¹`, compared with
/// `g(x + 1/x) = x^d + ζ/x^d` after multiplying through by `x^d`.
#[derive(Debug, Clone, Serialize)]
pub struct ChebyshevAttempt {
    #[serde(serialize_with = "super::serialize_element")]
    pub alpha: FieldElement,
    #[serde(serialize_with = "super::serialize_element")]
    pub beta: FieldElement,
    pub conjugate: String,
    /// Read off from the constant term of `x^d g(x + 1/x)`.
    #[serde(serialize_with = "super::serialize_element")]
    pub zeta: FieldElement,
    /// `ζ^{d-1} = 1`.
    pub zeta_is_admissible: bool,
    /// Coefficients of `x^d g(x + 1/x) - x^{2d} - ζ`, lowest first.
    #[serde(serialize_with = "super::serialize_elements")]
    pub residual: Vec<FieldElement>,
    pub matched: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistedChebyshevReport {
    pub attempts: Vec<ChebyshevAttempt>,
    /// Index into `attempts` of the first match.
    pub matched: Option<usize>,
}

impl TwistedChebyshevReport {
    pub fn matched(&self) -> Option<&ChebyshevAttempt> {
        self.matched.map(|i| &self.attempts[i])
    }
}

/// `x^d g(x + 1/x) = Σ_k g_k (x^2 + 1)^k x^{d-k}`.
fn cleared_substitution(g: &Polynomial) -> Polynomial {
    let k = g.field().clone();
    let d = g.degree();
    let x2p1 = Polynomial::new(k.clone(), vec![k.one(), k.zero(), k.one()]);
    let mut acc = Polynomial::zero(k.clone());
    for (i, c) in g.coeffs().iter().enumerate() {
        let term = x2p1.pow(i).mul(&Polynomial::monomial(k.clone(), d - i)).scale(c);
        acc = acc.add(&term);
    }
    acc
}

fn attempt(f: &PolynomialMap, from_minus: &FieldElement, from_plus: &FieldElement) -> Result<ChebyshevAttempt> {
    let k = f.field().clone();
    let d = f.degree();
    // λ(from_minus) = -2, λ(from_plus) = 2
    let alpha = k.div(&k.from_int(4), &k.sub(from_plus, from_minus))?;
    let beta = k.sub(&k.from_int(2), &k.mul(&alpha, from_plus));
    let alpha_inv = k.inv(&alpha)?;
    let inner = Polynomial::new(k.clone(), vec![k.neg(&k.mul(&beta, &alpha_inv)), alpha_inv]);
    let g = f
        .compose(&inner)
        .scale(&alpha)
        .add(&Polynomial::constant(k.clone(), beta.clone()));
    let h = cleared_substitution(&g);
    let zeta = h.coeff(0);
    let target = Polynomial::monomial(k.clone(), 2 * d).add(&Polynomial::constant(k.clone(), zeta.clone()));
    let residual = h.sub(&target);
    let zeta_is_admissible = k.pow(&zeta, (d - 1) as u64) == k.one();
    Ok(ChebyshevAttempt {
        alpha,
        beta,
        conjugate: g.to_string(),
        matched: residual.is_zero() && zeta_is_admissible,
        residual: residual.coeffs().to_vec(),
        zeta,
        zeta_is_admissible,
    })
}

/// Looks for an affine `λ` sending `P_f ∩ K = {p₁, p₂}` to `{-2, 2}` that
/// conjugates `f` to a standard twisted Chebyshev polynomial. Both
/// orientations of `λ` are tried.
pub fn detect_twisted_chebyshev(
    f: &PolynomialMap,
    crit: &CriticalData,
    bound: usize,
) -> Result<TwistedChebyshevReport> {
    let report = analyze(f, crit, bound)?;
    if !matches!(report.verdict, Verdict::ChebyshevLike { .. }) || report.post_critical.len() != 2 {
        return Err(Error::PreconditionNotChebyshevLike);
    }
    let p1 = &report.post_critical.points[0].point;
    let p2 = &report.post_critical.points[1].point;
    let attempts = vec![attempt(f, p1, p2)?, attempt(f, p2, p1)?];
    let matched = attempts.iter().position(|a| a.matched);
    Ok(TwistedChebyshevReport { attempts, matched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::critical::critical_data;
    use crate::dynamics::field::NumberField;
    use crate::dynamics::orbit::DEFAULT_PCF_BOUND;
    use std::sync::Arc;

    fn detect(c: &[i64]) -> Result<TwistedChebyshevReport> {
        let k = Arc::new(NumberField::rationals());
        let coeffs = c.iter().map(|&x| k.from_int(x)).collect();
        let f = PolynomialMap::map(k, coeffs).unwrap();
        let crit = critical_data(&f, None).unwrap();
        detect_twisted_chebyshev(&f, &crit, DEFAULT_PCF_BOUND)
    }

    #[test]
    fn chebyshev_polynomials_are_standard() {
        for c in [&[-2, 0, 1][..], &[0, -3, 0, 1]] {
            let r = detect(c).unwrap();
            let m = r.matched().expect("match");
            assert_eq!(m.alpha.to_string(), "1");
            assert_eq!(m.beta.to_string(), "0");
            assert_eq!(m.zeta.to_string(), "1");
        }
    }

    #[test]
    fn conjugated_chebyshev() {
        // 2x^2 - 1 = λ⁻¹ ∘ T₂ ∘ λ with λ(x) = 2x
        let r = detect(&[-1, 0, 2]).unwrap();
        let m = r.matched().unwrap();
        assert_eq!((m.alpha.to_string(), m.beta.to_string()), ("2".into(), "0".into()));
        assert_eq!(m.conjugate, "x^2 - 2");
        // 2 - x^2 = -T₂(-x) needs the orientation-reversing λ(x) = -x
        let r = detect(&[2, 0, -1]).unwrap();
        let m = r.matched().unwrap();
        assert_eq!(m.alpha.to_string(), "-1");
        assert!(!r.attempts[1 - r.matched.unwrap()].residual.is_empty());
    }

    #[test]
    fn precondition() {
        assert!(matches!(detect(&[-1, 0, 1]), Err(Error::PreconditionNotChebyshevLike)));
    }
}
