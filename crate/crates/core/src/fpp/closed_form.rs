use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{rational_to_f64, rational_vec_str};

/// Derangement numbers `D_0, ..., D_d` by `D_j = (j - 1)(D_{j-1} + D_{j-2})`.
pub fn derangements(d: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one(), BigUint::zero()];
    for j in 2..=d {
        let next = BigUint::from(j - 1) * (&out[j - 1] + &out[j - 2]);
        out.push(next);
    }
    out.truncate(d + 1);
    out
}

/// Denominators above this many bits stop the exact recursion; the
/// remaining terms are continued in `f64`.
pub const AUT_TREE_EXACT_BITS: u64 = 1 << 14;

/// `p_n = μ(X_n ≥ 1)` for Haar measure on `Aut(T)`.
#[derive(Debug, Clone, Serialize)]
pub struct AutTreeSequence {
    pub degree: usize,
    /// `p_0, p_1, ...` while the denominators stay small enough.
    #[serde(with = "rational_vec_str")]
    pub exact: Vec<BigRational>,
    /// `p_k` for `k = exact.len(), ..., n_max`.
    pub approx: Vec<f64>,
}

impl AutTreeSequence {
    pub fn float(&self, n: usize) -> Option<f64> {
        match self.exact.get(n) {
            Some(p) => Some(rational_to_f64(p)),
            None => self.approx.get(n - self.exact.len()).copied(),
        }
    }

    pub fn len(&self) -> usize {
        self.exact.len() + self.approx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `p_n = 1 - q_n` with `q_0 = 0` and
/// `q_{n+1} = (1/d!) Σ_k C(d,k) D_{d-k} q_n^k`, for `n = 0..=n_max`.
pub fn aut_tree_fpp(d: usize, n_max: usize) -> Result<AutTreeSequence> {
    if d < 2 {
        return Err(Error::InvalidDegree(d));
    }
    let der = derangements(d);
    let fact: BigUint = (1..=d).map(BigUint::from).product();
    // weights[k] = C(d,k) D_{d-k} / d!, the probability of exactly k fixed points
    let mut weights = Vec::with_capacity(d + 1);
    let mut binom = BigUint::one();
    for k in 0..=d {
        let w = BigRational::new(BigInt::from(&binom * &der[d - k]), BigInt::from(fact.clone()));
        weights.push(w);
        binom = binom * BigUint::from(d - k) / BigUint::from(k + 1);
    }
    let horner = |q: &BigRational| weights.iter().rev().fold(BigRational::zero(), |acc, w| acc * q + w);
    let mut exact = vec![BigRational::one()];
    let mut q = BigRational::zero();
    let mut n = 0;
    while n < n_max && q.denom().bits() * d as u64 <= AUT_TREE_EXACT_BITS {
        q = horner(&q);
        exact.push(BigRational::one() - &q);
        n += 1;
    }
    let wf: Vec<f64> = weights.iter().map(rational_to_f64).collect();
    let mut qf = rational_to_f64(&q);
    let mut approx = Vec::new();
    while n < n_max {
        qf = wf.iter().rev().fold(0.0, |acc, w| acc * qf + w);
        approx.push(1.0 - qf);
        n += 1;
    }
    Ok(AutTreeSequence { degree: d, exact, approx })
}

/// Fixer proportion of the dihedral group of order `2 d^n` on the
/// `d^n`-cycle: the identity plus the reflections that fix a vertex.
pub fn dihedral_fpp_closed_form(d: usize, n: usize) -> Result<BigRational> {
    if d < 2 {
        return Err(Error::InvalidDegree(d));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let size = BigInt::from(d).pow(n.to_u32().ok_or_else(|| Error::InvalidArgument("level too large".into()))?);
    let reflections = if d % 2 == 1 { size.clone() } else { &size / 2 };
    Ok(BigRational::new(BigInt::one() + reflections, BigInt::from(2) * size))
}
