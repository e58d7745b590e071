use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::field::FieldElement;
use super::poly::{PolynomialMap, ProjectivePoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    #[serde(serialize_with = "super::serialize_element")]
    pub point: FieldElement,
    pub local_degree: usize,
}

/// The affine critical points with their local degrees; `∞` (of local
/// degree `d`) is implicit. Complete by construction: the Riemann-Hurwitz
/// sum `Σ (e_f(c) - 1)` equals `d - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalData {
    pub degree: usize,
    pub points: Vec<CriticalPoint>,
}

impl CriticalData {
    pub fn contains(&self, z: &FieldElement) -> bool {
        self.points.iter().any(|c| &c.point == z)
    }

    pub fn local_degree(&self, z: &FieldElement) -> usize {
        self.points
            .iter()
            .find(|c| &c.point == z)
            .map_or(1, |c| c.local_degree)
    }

    /// `Σ_{affine} (e_f(c) - 1)`.
    pub fn ramification(&self) -> usize {
        self.points.iter().map(|c| c.local_degree - 1).sum()
    }
}

/// Verifies `claimed` (or, over `Q` with nothing claimed, finds the
/// rational roots of `f'`) and certifies completeness.
pub fn critical_data(f: &PolynomialMap, claimed: Option<&[(FieldElement, usize)]>) -> Result<CriticalData> {
    let d = f.degree();
    let deriv = f.derivative();
    let mut points: Vec<CriticalPoint> = Vec::new();
    match claimed {
        Some(list) => {
            for (c, e) in list {
                if !deriv.eval(c).is_zero() {
                    return Err(Error::NotCritical(c.to_string()));
                }
                let actual = f.local_degree(&ProjectivePoint::Affine(c.clone()));
                if actual != *e {
                    return Err(Error::InvalidArgument(format!(
                        "critical point {c} has local degree {actual}, not {e}"
                    )));
                }
                if points.iter().any(|p| &p.point == c) {
                    return Err(Error::InvalidArgument(format!("critical point {c} listed twice")));
                }
                points.push(CriticalPoint {
                    point: c.clone(),
                    local_degree: actual,
                });
            }
        }
        None => {
            if !f.field().is_rational() {
                return Err(Error::InvalidArgument(
                    "critical points must be supplied over a number field".into(),
                ));
            }
            let coeffs: Vec<BigRational> = deriv
                .coeffs()
                .iter()
                .map(|c| c.as_rational().cloned().expect("rational field"))
                .collect();
            for (r, _) in rational_roots(&coeffs)? {
                let c = f.field().from_rational(r);
                let e = f.local_degree(&ProjectivePoint::Affine(c.clone()));
                points.push(CriticalPoint { point: c, local_degree: e });
            }
        }
    }
    points.sort_by(|a, b| a.point.cmp(&b.point));
    let data = CriticalData { degree: d, points };
    let sum = data.ramification();
    if sum < d - 1 {
        return Err(Error::IncompleteCriticalData {
            deficit: (d - 1 - sum) as i64,
        });
    }
    if sum > d - 1 {
        return Err(Error::InternalInconsistency(format!(
            "ramification {sum} exceeds d - 1 = {}",
            d - 1
        )));
    }
    Ok(data)
}

/// Largest absolute value whose divisors are enumerated by trial division.
const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&n| n <= DIVISOR_LIMIT)
        .ok_or_else(|| {
            Error::InvalidArgument("coefficients too large for the rational-root search; list the critical points".into())
        })?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Rational roots with multiplicities, by the rational root theorem and
/// deflation. Coefficients lowest degree first.
pub fn rational_roots(coeffs: &[BigRational]) -> Result<Vec<(BigRational, usize)>> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut p: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let mut roots = Vec::new();
    let zero_mult = p.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
        p.drain(..zero_mult);
    }
    if p.len() < 2 {
        return Ok(roots);
    }
    let num = divisors(&p[0])?;
    let den = divisors(p.last().unwrap())?;
    let mut candidates: Vec<BigRational> = num
        .iter()
        .flat_map(|&a| den.iter().map(move |&b| BigRational::new(a.into(), b.into())))
        .flat_map(|r| [r.clone(), -r])
        .collect();
    candidates.sort();
    candidates.dedup();
    let mut poly: Vec<BigRational> = p.into_iter().map(BigRational::from_integer).collect();
    for r in candidates {
        let mut mult = 0;
        while poly.len() > 1 {
            let (q, rem) = synthetic_division(&poly, &r);
            if !rem.is_zero() {
                break;
            }
            poly = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    roots.sort();
    Ok(roots)
}

fn synthetic_division(p: &[BigRational], r: &BigRational) -> (Vec<BigRational>, BigRational) {
    let mut q = vec![BigRational::zero(); p.len() - 1];
    let mut acc = BigRational::zero();
    for i in (0..p.len()).rev() {
        acc = acc * r + &p[i];
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    (q, acc)
}
