use rand::seq::SliceRandom;
use rand::Rng;

use super::{Portrait, TreeShape};

/// A Haar-random element of `Aut(T^m)`: every internal label is an
/// independent uniform permutation.
pub fn uniform_aut_sample<R: Rng + ?Sized>(shape: TreeShape, m: usize, rng: &mut R) -> Portrait {
    let d = shape.degree();
    let n = shape.internal_count(m);
    let mut labels = Vec::with_capacity(n);
    let mut lab: Vec<u8> = (0..d as u8).collect();
    for _ in 0..n {
        lab.shuffle(rng);
        labels.push(lab.clone());
    }
    Portrait::from_labels(shape, m, &labels).expect("shuffled labels are permutations")
}
