//! Small helpers for permutations of `{0..d-1}` stored as image arrays.
//!
//! Labels are right actions: `x^p = p[x]`, and the product `p * q` applies
//! `p` first.

use crate::error::{Error, Result};

pub fn identity(d: usize) -> Vec<u8> {
    (0..d as u8).collect()
}

pub fn is_identity(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x as usize)
}

/// `p` then `q`.
pub fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    p.iter().map(|&x| q[x as usize]).collect()
}

pub fn inverse(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// Validates a 1-based image list and converts it to 0-based.
pub fn from_one_based(images: &[usize], d: usize) -> Result<Vec<u8>> {
    if images.len() != d {
        return Err(Error::BadPermutation(format!(
            "expected {d} images, got {}",
            images.len()
        )));
    }
    let mut seen = vec![false; d];
    let mut out = Vec::with_capacity(d);
    for &x in images {
        if x == 0 || x > d || seen[x - 1] {
            return Err(Error::BadPermutation(format!("{images:?} is not a bijection of 1..={d}")));
        }
        seen[x - 1] = true;
        out.push((x - 1) as u8);
    }
    Ok(out)
}

pub fn to_one_based(p: &[u8]) -> Vec<usize> {
    p.iter().map(|&x| x as usize + 1).collect()
}

/// Cycle lengths, sorted ascending (fixed points included as 1-cycles).
pub fn cycle_type(p: &[u8]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable();
    lens
}

/// Cycles as lists of points, each starting at its smallest point.
pub fn cycles(p: &[u8]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = p[x] as usize;
        }
        out.push(cyc);
    }
    out
}

pub fn order(p: &[u8]) -> u64 {
    cycle_type(p)
        .into_iter()
        .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
}

/// All permutations of `{0..d-1}` in lexicographic order.
pub fn all(d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = identity(d);
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..d).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_to_right() {
        let p = vec![1, 0, 2]; // (1 2)
        let q = vec![0, 2, 1]; // (2 3)
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        assert_eq!(compose(&p, &q), vec![2, 0, 1]);
        assert_eq!(cycle_type(&compose(&p, &q)), vec![3]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(from_one_based(&[1, 1], 2).is_err());
        assert!(from_one_based(&[0, 1], 2).is_err());
        assert!(from_one_based(&[1], 2).is_err());
        assert_eq!(from_one_based(&[2, 1], 2).unwrap(), vec![1, 0]);
    }

    #[test]
    fn enumerates_symmetric_group() {
        assert_eq!(all(3).len(), 6);
        assert_eq!(all(4).len(), 24);
        assert!(all(3).iter().all(|p| is_identity(&compose(p, &inverse(p)))));
    }
}
