use super::presentation::WreathPresentation;
use crate::tree::{Portrait, TreeShape};

/// Anything that can hand out generator portraits at a requested depth.
pub trait GroupSource: Sync {
    fn shape(&self) -> TreeShape;

    fn generator_names(&self) -> Vec<String>;

    /// Depth-`m` portraits of the generators, in `generator_names` order.
    fn generator_portraits(&self, m: usize) -> Vec<Portrait>;
}

impl GroupSource for WreathPresentation {
    fn shape(&self) -> TreeShape {
        WreathPresentation::shape(self)
    }

    fn generator_names(&self) -> Vec<String> {
        self.active_generators()
            .into_iter()
            .map(|i| self.names()[i].clone())
            .collect()
    }

    fn generator_portraits(&self, m: usize) -> Vec<Portrait> {
        let all = WreathPresentation::generator_portraits(self, m);
        self.active_generators()
            .into_iter()
            .map(|i| all[i].clone())
            .collect()
    }
}

/// The full automorphism group `Aut(T)`. It is not finitely generated, but
/// each truncation `Aut(T^m)` is generated by elementary portraits: a
/// transposition (and, for `d > 2`, a `d`-cycle) at a single vertex.
#[derive(Debug, Clone, Copy)]
pub struct FullAut {
    shape: TreeShape,
}

impl FullAut {
    pub fn new(shape: TreeShape) -> Self {
        Self { shape }
    }

    fn labels_per_vertex(&self) -> Vec<Vec<u8>> {
        let d = self.shape.degree();
        let mut swap: Vec<u8> = (0..d as u8).collect();
        swap.swap(0, 1);
        let mut out = vec![swap];
        if d > 2 {
            out.push((0..d as u8).map(|x| (x + 1) % d as u8).collect());
        }
        out
    }
}

impl GroupSource for FullAut {
    fn shape(&self) -> TreeShape {
        self.shape
    }

    fn generator_names(&self) -> Vec<String> {
        // names only depend on the kind of label; indices are filled per depth
        vec![]
    }

    fn generator_portraits(&self, m: usize) -> Vec<Portrait> {
        let d = self.shape.degree();
        let n = self.shape.internal_count(m);
        let mut out = Vec::new();
        for idx in 0..n {
            for lab in self.labels_per_vertex() {
                let mut flat: Vec<u8> = Vec::with_capacity(n * d);
                for j in 0..n {
                    if j == idx {
                        flat.extend_from_slice(&lab);
                    } else {
                        flat.extend(0..d as u8);
                    }
                }
                out.push(Portrait::from_flat(self.shape, m, flat));
            }
        }
        out
    }
}

/// Generator names for a source at a given depth; sources without fixed
/// names get `g1, g2, ...`.
pub fn names_at_depth(source: &dyn GroupSource, count: usize) -> Vec<String> {
    let names = source.generator_names();
    if names.len() == count {
        names
    } else {
        (1..=count).map(|i| format!("g{i}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_aut_generators_are_elementary() {
        let shape = TreeShape::new(3).unwrap();
        let gens = FullAut::new(shape).generator_portraits(2);
        assert_eq!(gens.len(), 2 * 4);
        for g in &gens {
            let moved = g.key().chunks(3).filter(|l| !crate::perm::is_identity(l)).count();
            assert_eq!(moved, 1);
        }
    }
}
