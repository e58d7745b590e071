use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::format_rational;

/// Dense polynomial over `Q`, lowest degree first, no trailing zeros.
type QPoly = Vec<BigRational>;

fn q_trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn q_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: QPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    q_trim(&mut out);
    out
}

fn q_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(&mut out);
    out
}

fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r: QPoly = a.to_vec();
    q_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        q_trim(&mut r);
    }
    q_trim(&mut q);
    (q, r)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
fn q_ext_gcd(a: &[BigRational], m: &[BigRational]) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    q_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let s2 = q_sub(&s0, &q_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let lead = r0.last().cloned().unwrap_or_else(BigRational::one);
    let g = r0.iter().map(|c| c / &lead).collect();
    let s = s0.iter().map(|c| c / &lead).collect();
    (g, s)
}

/// `K = Q[y]/(m(y))` for a monic squarefree `m`. Irreducibility of `m` is
/// the caller's contract; without it, inverses may not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    min_poly: Vec<BigRational>,
}

/// An element of a [`NumberField`]: `k` rational coefficients of
/// `1, y, ..., y^{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<BigRational>);

impl NumberField {
    pub fn rationals() -> Self {
        Self {
            min_poly: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn new(min_poly: Vec<BigRational>) -> Result<Self> {
        let mut m = min_poly;
        q_trim(&mut m);
        if m.len() < 2 {
            return Err(Error::Schema("minimal polynomial must have degree at least 1".into()));
        }
        if !m.last().unwrap().is_one() {
            return Err(Error::Schema("minimal polynomial must be monic".into()));
        }
        let deriv: QPoly = m
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        let (g, _) = q_ext_gcd(&deriv, &m);
        if g.len() > 1 {
            return Err(Error::Schema("minimal polynomial is not squarefree".into()));
        }
        Ok(Self { min_poly: m })
    }

    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    /// `k = [K : Q]`.
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    fn reduce(&self, p: &[BigRational]) -> FieldElement {
        let (_, mut r) = q_divrem(p, &self.min_poly);
        r.resize(self.degree(), BigRational::zero());
        FieldElement(r)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![BigRational::zero(); self.degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> FieldElement {
        self.reduce(&[r])
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds an element from at most `k` coefficients (missing ones are 0).
    /// Longer vectors are reduced modulo `m`.
    pub fn element(&self, coeffs: Vec<BigRational>) -> FieldElement {
        self.reduce(&coeffs)
    }

    /// The class of `y`.
    pub fn generator(&self) -> FieldElement {
        self.reduce(&[BigRational::zero(), BigRational::one()])
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.is_rational() {
            return FieldElement(vec![&a.0[0] * &b.0[0]]);
        }
        self.reduce(&q_mul(&a.0, &b.0))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::NotInvertible);
        }
        if self.is_rational() {
            return Ok(FieldElement(vec![a.0[0].recip()]));
        }
        let (g, s) = q_ext_gcd(&a.0, &self.min_poly);
        if g.len() != 1 {
            return Err(Error::NotInvertible);
        }
        Ok(self.reduce(&s))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl FieldElement {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.0[1..].iter().all(Zero::is_zero) {
            Some(&self.0[0])
        } else {
            None
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |r: &BigRational| {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format_rational(r)
            }
        };
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", show(r));
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", show(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", show(&mag))?;
                    }
                    if i == 1 {
                        write!(f, "y")?;
                    } else {
                        write!(f, "y^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn sqrt2() -> NumberField {
        NumberField::new(vec![ratio(-2, 1), ratio(0, 1), ratio(1, 1)]).unwrap()
    }

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let k = sqrt2();
        let y = k.generator();
        assert_eq!(k.mul(&y, &y), k.from_int(2));
        let a = k.add(&k.one(), &y);
        let inv = k.inv(&a).unwrap();
        // (1 + y)^{-1} = y - 1
        assert_eq!(inv, k.sub(&y, &k.one()));
        assert_eq!(k.mul(&a, &inv), k.one());
        assert_eq!(a.to_string(), "1 + y");
        assert_eq!(k.neg(&a).to_string(), "-1 - y");
    }

    #[test]
    fn rejects_bad_minimal_polynomials() {
        // (y - 1)^2 is not squarefree
        assert!(NumberField::new(vec![ratio(1, 1), ratio(-2, 1), ratio(1, 1)]).is_err());
        assert!(NumberField::new(vec![ratio(1, 1), ratio(2, 1)]).is_err());
    }

    #[test]
    fn reducible_modulus_reports_non_invertible() {
        // y^2 - 1 is squarefree but reducible: y - 1 is a zero divisor
        let k = NumberField::new(vec![ratio(-1, 1), ratio(0, 1), ratio(1, 1)]).unwrap();
        let z = k.sub(&k.generator(), &k.one());
        assert!(matches!(k.inv(&z), Err(Error::NotInvertible)));
        assert!(matches!(k.inv(&k.zero()), Err(Error::NotInvertible)));
    }

    #[test]
    fn rational_field() {
        let q = NumberField::rationals();
        let h = q.from_rational(ratio(1, 2));
        assert_eq!(q.inv(&h).unwrap(), q.from_int(2));
        assert_eq!(h.to_string(), "1/2");
        assert_eq!(q.pow(&q.from_int(-2), 3), q.from_int(-8));
    }
}
