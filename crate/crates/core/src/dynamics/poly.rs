use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::field::{FieldElement, NumberField};
use crate::error::{Error, Result};

/// A point of the projective line over `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectivePoint {
    Affine(FieldElement),
    Infinity,
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Affine(z) => write!(f, "{z}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

/// A univariate polynomial over a number field, lowest degree first with
/// no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Arc<NumberField>,
    coeffs: Vec<FieldElement>,
}

/// A polynomial dynamical system: a [`Polynomial`] of degree at least 2.
pub type PolynomialMap = Polynomial;

impl Polynomial {
    pub fn new(field: Arc<NumberField>, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    /// Like [`Polynomial::new`], but requires degree at least 2.
    pub fn map(field: Arc<NumberField>, coeffs: Vec<FieldElement>) -> Result<Self> {
        let p = Self::new(field, coeffs);
        if p.coeffs.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "a polynomial map needs degree at least 2, got {}",
                p.coeffs.len().saturating_sub(1)
            )));
        }
        Ok(p)
    }

    pub fn zero(field: Arc<NumberField>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: Arc<NumberField>, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    /// `x - s`.
    pub fn linear_root(field: Arc<NumberField>, s: &FieldElement) -> Self {
        let c = vec![field.neg(s), field.one()];
        Self::new(field, c)
    }

    /// `x^n`.
    pub fn monomial(field: Arc<NumberField>, n: usize) -> Self {
        let mut c = vec![field.zero(); n];
        c.push(field.one());
        Self::new(field, c)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, z: &FieldElement) -> FieldElement {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, z), c))
    }

    /// The image of a projective point; `∞ ↦ ∞`.
    pub fn eval_point(&self, z: &ProjectivePoint) -> ProjectivePoint {
        match z {
            ProjectivePoint::Affine(z) => ProjectivePoint::Affine(self.eval(z)),
            ProjectivePoint::Infinity => ProjectivePoint::Infinity,
        }
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_int(i as i64)))
            .collect();
        Self::new(self.field.clone(), c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| k.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| k.sub(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let c = self.coeffs.iter().map(|c| self.field.mul(c, s)).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let k = &self.field;
        let mut c = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = k.add(&c[i + j], &k.mul(a, b));
            }
        }
        Self::new(self.field.clone(), c)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.field.clone(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(self.field.clone()), |acc, c| {
            acc.mul(inner).add(&Self::constant(self.field.clone(), c.clone()))
        })
    }

    /// `self - c`.
    pub fn sub_constant(&self, c: &FieldElement) -> Self {
        self.sub(&Self::constant(self.field.clone(), c.clone()))
    }

    /// Synthetic division by `x - s`: `(quotient, remainder)`.
    pub fn div_linear(&self, s: &FieldElement) -> (Self, FieldElement) {
        let k = &self.field;
        if self.is_zero() {
            return (self.clone(), k.zero());
        }
        let mut q = vec![k.zero(); self.coeffs.len() - 1];
        let mut acc = k.zero();
        for i in (0..self.coeffs.len()).rev() {
            acc = k.add(&k.mul(&acc, s), &self.coeffs[i]);
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        (Self::new(self.field.clone(), q), acc)
    }

    /// Multiplicity of `s` as a root (0 if not a root). The zero
    /// polynomial is rejected.
    pub fn root_multiplicity(&self, s: &FieldElement) -> usize {
        assert!(!self.is_zero(), "root multiplicity of the zero polynomial");
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_linear(s);
            if !r.is_zero() {
                return m;
            }
            m += 1;
            p = q;
        }
    }

    /// `e_f(z)`: the multiplicity of `z` as a root of `f(x) - f(z)`,
    /// read off from the first non-vanishing derivative. `e_f(∞) = d`.
    pub fn local_degree(&self, z: &ProjectivePoint) -> usize {
        let z = match z {
            ProjectivePoint::Infinity => return self.degree(),
            ProjectivePoint::Affine(z) => z,
        };
        let mut der = self.derivative();
        let mut e = 1;
        while der.eval(z).is_zero() {
            der = der.derivative();
            e += 1;
        }
        e
    }

    /// `f^n`.
    pub fn iterate(&self, n: usize) -> Self {
        let mut acc = Self::monomial(self.field.clone(), 1);
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.as_rational().is_some_and(Signed::is_negative);
            let mag = if negative { self.field.neg(c) } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let coeff = if mag.as_rational().is_some() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match i {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if mag != self.field.one() {
                        write!(f, "{coeff}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
