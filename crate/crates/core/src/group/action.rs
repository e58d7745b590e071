use std::ops::Range;

use num_bigint::BigUint;

use super::schreier::{Perm, StabilizerChain};
use super::source::GroupSource;
use crate::tree::{Portrait, TreeShape, Vertex};

/// The action of a truncated group on the vertices of levels `1..=depth`,
/// numbered level-major (level 1 first). Faithful for `π_depth(G)`.
#[derive(Debug, Clone)]
pub struct VertexAction {
    shape: TreeShape,
    depth: usize,
    gens: Vec<Perm>,
}

impl VertexAction {
    pub fn new(source: &dyn GroupSource, depth: usize) -> Self {
        let gens = source.generator_portraits(depth);
        Self::from_portraits(source.shape(), depth, &gens)
    }

    pub fn from_portraits(shape: TreeShape, depth: usize, gens: &[Portrait]) -> Self {
        let mut out = Self {
            shape,
            depth,
            gens: Vec::new(),
        };
        out.gens = gens.iter().map(|g| out.perm_of(g)).collect();
        out
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn npoints(&self) -> usize {
        self.shape.internal_count(self.depth + 1) - 1
    }

    /// Number of points on levels `1..=n`.
    pub fn points_through(&self, n: usize) -> usize {
        self.shape.internal_count(n + 1) - 1
    }

    /// All points of levels `1..=n`, in order; fixing them pointwise is
    /// the same as lying in `St(n)`.
    pub fn prefix_through(&self, n: usize) -> Vec<u32> {
        (0..self.points_through(n) as u32).collect()
    }

    fn offset(&self, k: usize) -> usize {
        self.shape.internal_count(k) - 1
    }

    pub fn level_points(&self, k: usize) -> Range<u32> {
        assert!((1..=self.depth).contains(&k));
        let off = self.offset(k) as u32;
        off..off + self.shape.level_size(k) as u32
    }

    pub fn point(&self, v: &Vertex) -> u32 {
        assert!((1..=self.depth).contains(&v.level()));
        (self.offset(v.level()) + v.position(self.shape)) as u32
    }

    /// Points of the descendants of `u` on level `k`.
    pub fn descendant_points(&self, u: &Vertex, k: usize) -> Range<u32> {
        let width = self.shape.level_size(k - u.level());
        let start = self.offset(k) + u.position(self.shape) * width;
        start as u32..(start + width) as u32
    }

    pub fn perm_of(&self, p: &Portrait) -> Perm {
        let mut perm = Vec::with_capacity(self.npoints());
        for k in 1..=self.depth {
            let off = self.offset(k) as u32;
            perm.extend(p.level_action(k).into_iter().map(|x| x + off));
        }
        perm
    }

    pub fn portrait_of(&self, perm: &[u32]) -> Portrait {
        let d = self.shape.degree();
        let mut flat = Vec::with_capacity(self.shape.internal_count(self.depth) * d);
        flat.extend(perm[..d].iter().map(|&x| x as u8));
        for k in 1..self.depth {
            let off = self.offset(k + 1);
            for i in 0..self.shape.level_size(k + 1) {
                flat.push(((perm[off + i] as usize - off) % d) as u8);
            }
        }
        Portrait::from_flat(self.shape, self.depth, flat)
    }

    pub fn chain(&self, base_prefix: &[u32]) -> StabilizerChain {
        StabilizerChain::new(self.npoints(), &self.gens, base_prefix)
    }

    pub fn order(&self) -> BigUint {
        if self.depth == 0 {
            return BigUint::from(1u32);
        }
        self.chain(&[]).order()
    }
}

/// Order of the group generated by `gens` (all of one depth).
pub fn portrait_group_order(shape: TreeShape, depth: usize, gens: &[Portrait]) -> BigUint {
    VertexAction::from_portraits(shape, depth, gens).order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FullAut, WreathPresentation};

    #[test]
    fn perm_round_trip() {
        let p = WreathPresentation::parse_json(
            r#"{"degree":2,"generators":[{"name":"a","perm":[2,1],"sections":[["a"],[]]}]}"#,
        )
        .unwrap();
        let g = WreathPresentation::generator_portraits(&p, 4).remove(0);
        let act = VertexAction::new(&p, 4);
        assert_eq!(act.npoints(), 30);
        assert_eq!(act.portrait_of(&act.perm_of(&g)), g);
        let v = Vertex::parse(p.shape(), "12").unwrap();
        let img = g.apply(&v).unwrap();
        assert_eq!(act.perm_of(&g)[act.point(&v) as usize], act.point(&img));
    }

    #[test]
    fn full_aut_orders() {
        let shape = TreeShape::new(2).unwrap();
        for m in 1..=5 {
            let act = VertexAction::new(&FullAut::new(shape), m);
            assert_eq!(act.order(), BigUint::from(2u32).pow((1 << m) - 1));
        }
        let shape3 = TreeShape::new(3).unwrap();
        let act = VertexAction::new(&FullAut::new(shape3), 2);
        assert_eq!(act.order(), BigUint::from(6u32).pow(4));
    }
}
