use serde::{Deserialize, Serialize};

use super::{TreeShape, Vertex};
use crate::error::{Error, Result};
use crate::perm;

/// A depth-`m` truncation of a tree automorphism: one permutation label per
/// vertex of level `< m`.
///
/// Labels are stored densely in level-major order (root first, then level 1
/// left to right, ...). Each label occupies `d` bytes holding 0-based images.
/// The derived `Eq`/`Hash`/`Ord` on that byte array is the canonical key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Portrait {
    degree: u8,
    depth: u32,
    labels: Box<[u8]>,
}

/// Serialized form: labels as 1-based image lists in level-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortraitJson {
    pub degree: usize,
    pub depth: usize,
    pub labels: Vec<Vec<usize>>,
}

impl Portrait {
    pub fn identity(shape: TreeShape, depth: usize) -> Self {
        let d = shape.degree();
        let n = shape.internal_count(depth);
        let mut labels = Vec::with_capacity(n * d);
        for _ in 0..n {
            labels.extend(0..d as u8);
        }
        Self {
            degree: d as u8,
            depth: depth as u32,
            labels: labels.into_boxed_slice(),
        }
    }

    /// Builds a portrait from 0-based labels in level-major order.
    pub fn from_labels(shape: TreeShape, depth: usize, labels: &[Vec<u8>]) -> Result<Self> {
        let d = shape.degree();
        let n = shape.internal_count(depth);
        if labels.len() != n {
            return Err(Error::Schema(format!(
                "depth-{depth} portrait needs {n} labels, got {}",
                labels.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * d);
        for l in labels {
            let one: Vec<usize> = l.iter().map(|&x| x as usize + 1).collect();
            flat.extend(perm::from_one_based(&one, d)?);
        }
        Ok(Self {
            degree: d as u8,
            depth: depth as u32,
            labels: flat.into_boxed_slice(),
        })
    }

    /// The portrait with root label `root` and sections `children[x]` below.
    pub fn from_recursion(root: &[u8], children: &[Portrait]) -> Self {
        let d = root.len();
        debug_assert_eq!(children.len(), d);
        let sub_depth = children[0].depth();
        let shape = TreeShape { degree: d };
        let mut labels = Vec::with_capacity(d * shape.internal_count(sub_depth + 1));
        labels.extend_from_slice(root);
        for level in 0..sub_depth {
            let off = shape.internal_count(level) * d;
            let len = shape.level_size(level) * d;
            for child in children {
                labels.extend_from_slice(&child.labels[off..off + len]);
            }
        }
        Self {
            degree: d as u8,
            depth: sub_depth as u32 + 1,
            labels: labels.into_boxed_slice(),
        }
    }

    /// Wraps an already validated level-major label array.
    pub(crate) fn from_flat(shape: TreeShape, depth: usize, labels: Vec<u8>) -> Self {
        debug_assert_eq!(labels.len(), shape.internal_count(depth) * shape.degree());
        Self {
            degree: shape.degree() as u8,
            depth: depth as u32,
            labels: labels.into_boxed_slice(),
        }
    }

    pub fn shape(&self) -> TreeShape {
        TreeShape {
            degree: self.degree as usize,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    /// Raw canonical key bytes.
    pub fn key(&self) -> &[u8] {
        &self.labels
    }

    /// Label at the vertex with global level-major index `idx`.
    pub fn label(&self, idx: usize) -> &[u8] {
        let d = self.degree as usize;
        &self.labels[idx * d..(idx + 1) * d]
    }

    pub fn label_at(&self, v: &Vertex) -> Result<&[u8]> {
        let shape = self.shape();
        v.check(shape)?;
        if v.level() >= self.depth() {
            return Err(Error::DepthExceeded {
                len: v.level() + 1,
                depth: self.depth(),
            });
        }
        Ok(self.label(shape.internal_count(v.level()) + v.position(shape)))
    }

    pub fn root_label(&self) -> &[u8] {
        if self.depth == 0 {
            // the trivial object has no labels; report the identity
            return &IDENTITY_LABELS[..self.degree as usize];
        }
        self.label(0)
    }

    pub fn is_identity(&self) -> bool {
        self.labels
            .chunks(self.degree as usize)
            .all(perm::is_identity)
    }

    /// Image positions of all level-`n` vertices, `n ≤ depth`.
    pub fn level_action(&self, n: usize) -> Vec<u32> {
        assert!(n <= self.depth(), "level {n} beyond depth {}", self.depth);
        let d = self.degree as usize;
        let shape = self.shape();
        let mut img = vec![0u32];
        for k in 0..n {
            let off = shape.internal_count(k);
            let mut next = vec![0u32; img.len() * d];
            for (s, &t) in img.iter().enumerate() {
                let lab = self.label(off + s);
                for x in 0..d {
                    next[s * d + x] = t * d as u32 + lab[x] as u32;
                }
            }
            img = next;
        }
        img
    }

    /// `v^p`.
    pub fn apply(&self, v: &Vertex) -> Result<Vertex> {
        let shape = self.shape();
        v.check(shape)?;
        if v.level() > self.depth() {
            return Err(Error::DepthExceeded {
                len: v.level(),
                depth: self.depth(),
            });
        }
        let d = self.degree as usize;
        let mut out = Vec::with_capacity(v.level());
        let mut pos = 0usize;
        for (k, &x) in v.digits().iter().enumerate() {
            let lab = self.label(shape.internal_count(k) + pos);
            out.push(lab[x as usize]);
            pos = pos * d + x as usize;
        }
        Ok(Vertex::from_digits(out))
    }

    /// `self` then `other`; the result has depth `min` of the two.
    pub fn compose(&self, other: &Portrait) -> Result<Portrait> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let depth = self.depth().min(other.depth());
        let d = self.degree as usize;
        let shape = self.shape();
        let mut labels = Vec::with_capacity(shape.internal_count(depth) * d);
        let mut img = vec![0u32];
        for k in 0..depth {
            let off = shape.internal_count(k);
            let last = k + 1 == depth;
            let mut next = if last { Vec::new() } else { vec![0u32; img.len() * d] };
            for (s, &t) in img.iter().enumerate() {
                let lp = self.label(off + s);
                let lq = other.label(off + t as usize);
                for x in 0..d {
                    let y = lp[x];
                    labels.push(lq[y as usize]);
                    if !last {
                        next[s * d + x] = t * d as u32 + y as u32;
                    }
                }
            }
            img = next;
        }
        Ok(Portrait {
            degree: self.degree,
            depth: depth as u32,
            labels: labels.into_boxed_slice(),
        })
    }

    pub fn inverse(&self) -> Portrait {
        let d = self.degree as usize;
        let shape = self.shape();
        let mut labels = vec![0u8; self.labels.len()];
        let mut img = vec![0u32];
        for k in 0..self.depth() {
            let off = shape.internal_count(k);
            let mut next = vec![0u32; img.len() * d];
            for (s, &t) in img.iter().enumerate() {
                let lp = self.label(off + s);
                // label of p^{-1} at t = s^p is the inverse of p's label at s
                let dst = &mut labels[(off + t as usize) * d..(off + t as usize + 1) * d];
                for x in 0..d {
                    dst[lp[x] as usize] = x as u8;
                    next[s * d + x] = t * d as u32 + lp[x] as u32;
                }
            }
            img = next;
        }
        Portrait {
            degree: self.degree,
            depth: self.depth,
            labels: labels.into_boxed_slice(),
        }
    }

    /// `g|_v`, of depth `depth - |v|`.
    pub fn section(&self, v: &Vertex) -> Result<Portrait> {
        let shape = self.shape();
        v.check(shape)?;
        if v.level() > self.depth() {
            return Err(Error::DepthExceeded {
                len: v.level(),
                depth: self.depth(),
            });
        }
        let d = self.degree as usize;
        let base = v.level();
        let pos = v.position(shape);
        let sub_depth = self.depth() - base;
        let mut labels = Vec::with_capacity(shape.internal_count(sub_depth) * d);
        for j in 0..sub_depth {
            let width = shape.level_size(j);
            let start = shape.internal_count(base + j) + pos * width;
            labels.extend_from_slice(&self.labels[start * d..(start + width) * d]);
        }
        Ok(Portrait {
            degree: self.degree,
            depth: sub_depth as u32,
            labels: labels.into_boxed_slice(),
        })
    }

    /// `π_k` of this portrait.
    pub fn truncate(&self, k: usize) -> Result<Portrait> {
        if k > self.depth() {
            return Err(Error::DepthExceeded {
                len: k,
                depth: self.depth(),
            });
        }
        let n = self.shape().internal_count(k) * self.degree as usize;
        Ok(Portrait {
            degree: self.degree,
            depth: k as u32,
            labels: self.labels[..n].into(),
        })
    }

    /// Number of level-`n` vertices fixed by the portrait.
    pub fn fixed_count(&self, n: usize) -> Result<u64> {
        if n > self.depth() {
            return Err(Error::DepthExceeded {
                len: n,
                depth: self.depth(),
            });
        }
        Ok(self.fixed_positions(n).len() as u64)
    }

    /// Positions of fixed level-`n` vertices. Fixed vertices form a subtree,
    /// so only children of fixed vertices are inspected.
    pub fn fixed_positions(&self, n: usize) -> Vec<usize> {
        let d = self.degree as usize;
        let shape = self.shape();
        let mut fixed = vec![0usize];
        for k in 0..n {
            let off = shape.internal_count(k);
            let mut next = Vec::new();
            for &s in &fixed {
                for (x, &y) in self.label(off + s).iter().enumerate() {
                    if y as usize == x {
                        next.push(s * d + x);
                    }
                }
            }
            fixed = next;
            if fixed.is_empty() {
                break;
            }
        }
        fixed
    }

    /// True iff every vertex of level `n` is fixed.
    pub fn fixes_level(&self, n: usize) -> bool {
        let d = self.degree as usize;
        let k = self.shape().internal_count(n.min(self.depth()));
        self.labels[..k * d].chunks(d).all(perm::is_identity)
    }

    pub fn to_json(&self) -> PortraitJson {
        PortraitJson {
            degree: self.degree(),
            depth: self.depth(),
            labels: self
                .labels
                .chunks(self.degree as usize)
                .map(perm::to_one_based)
                .collect(),
        }
    }

    pub fn from_json(json: &PortraitJson) -> Result<Portrait> {
        let shape = TreeShape::new(json.degree)?;
        let n = shape.internal_count(json.depth);
        if json.labels.len() != n {
            return Err(Error::Schema(format!(
                "depth-{} portrait needs {n} labels, got {}",
                json.depth,
                json.labels.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * json.degree);
        for l in &json.labels {
            flat.extend(perm::from_one_based(l, json.degree)?);
        }
        Ok(Portrait {
            degree: json.degree as u8,
            depth: json.depth as u32,
            labels: flat.into_boxed_slice(),
        })
    }
}

static IDENTITY_LABELS: [u8; 256] = {
    let mut a = [0u8; 256];
    let mut i = 0;
    while i < 256 {
        a[i] = i as u8;
        i += 1;
    }
    a
};

impl Serialize for Portrait {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Portrait {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = PortraitJson::deserialize(d)?;
        Portrait::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape2() -> TreeShape {
        TreeShape::new(2).unwrap()
    }

    /// Odometer o = (o, 1)σ unfolded to depth m.
    fn odometer(m: usize) -> Portrait {
        let shape = shape2();
        let mut p = Portrait::identity(shape, 0);
        for _ in 0..m {
            let id = Portrait::identity(shape, p.depth());
            p = Portrait::from_recursion(&[1, 0], &[p, id]);
        }
        p
    }

    fn root_swap(m: usize) -> Portrait {
        let shape = shape2();
        let id = Portrait::identity(shape, m - 1);
        Portrait::from_recursion(&[1, 0], &[id.clone(), id])
    }

    fn v(s: &str) -> Vertex {
        Vertex::parse(shape2(), s).unwrap()
    }

    #[test]
    fn apply_examples() {
        let id = Portrait::identity(shape2(), 3);
        assert_eq!(id.apply(&v("12")).unwrap(), v("12"));
        assert_eq!(odometer(2).apply(&v("11")).unwrap(), v("22"));
        assert_eq!(root_swap(2).apply(&v("12")).unwrap(), v("22"));
        assert!(matches!(
            odometer(1).apply(&v("11")),
            Err(Error::DepthExceeded { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let r = root_swap(3);
        assert!(r.compose(&r).unwrap().is_identity());
        let o = odometer(2);
        let oo = o.compose(&o).unwrap();
        assert_eq!(oo.apply(&v("11")).unwrap(), v("12"));
        // p ∘ identity truncates to the smaller depth
        let p = odometer(3);
        let q = p.compose(&Portrait::identity(shape2(), 2)).unwrap();
        assert_eq!(q, p.truncate(2).unwrap());
        let three = TreeShape::new(3).unwrap();
        assert!(matches!(
            p.compose(&Portrait::identity(three, 2)),
            Err(Error::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn invert_examples() {
        assert!(Portrait::identity(shape2(), 3).inverse().is_identity());
        assert_eq!(root_swap(2).inverse(), root_swap(2));
        let inv = odometer(3).inverse();
        assert_eq!(inv.apply(&v("22")).unwrap(), v("11"));
        assert!(odometer(3).compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn section_examples() {
        let id = Portrait::identity(shape2(), 3);
        assert!(id.section(&v("21")).unwrap().is_identity());
        assert_eq!(odometer(3).section(&v("1")).unwrap(), odometer(2));
        assert_eq!(
            odometer(3).section(&v("2")).unwrap(),
            Portrait::identity(shape2(), 2)
        );
        assert_eq!(odometer(3).section(&Vertex::root()).unwrap(), odometer(3));
    }

    #[test]
    fn truncate_examples() {
        let p = odometer(3);
        assert_eq!(p.truncate(3).unwrap(), p);
        let t = p.truncate(0).unwrap();
        assert_eq!(t, Portrait::identity(shape2(), 0));
        assert!(p.truncate(4).is_err());
    }

    #[test]
    fn fixed_count_examples() {
        assert_eq!(Portrait::identity(shape2(), 4).fixed_count(4).unwrap(), 16);
        assert_eq!(root_swap(1).fixed_count(1).unwrap(), 0);
        for n in 1..=5 {
            assert_eq!(odometer(5).fixed_count(n).unwrap(), 0);
        }
        // the odometer is a single 2^n-cycle on each level
        let o = odometer(4);
        let mut p = o.clone();
        for k in 1..16 {
            assert_eq!(p.fixed_count(4).unwrap(), 0, "o^{k}");
            p = p.compose(&o).unwrap();
        }
        assert!(p.is_identity());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = odometer(3);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"{"degree":2,"depth":3,"labels":[[2,1],[2,1],[1,2],[2,1],[1,2],[1,2],[1,2]]}"#
        );
        let back: Portrait = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert!(serde_json::from_str::<Portrait>(r#"{"degree":2,"depth":1,"labels":[[1,1]]}"#).is_err());
    }
}
