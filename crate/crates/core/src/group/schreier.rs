//! Stabilizer chains (Schreier–Sims) for permutation groups on a few
//! thousand points. Used to get exact group orders and level/vertex
//! stabilizers without listing every element.

use num_bigint::BigUint;

/// A permutation of `0..n` as an image array; `x^p = p[x]`.
pub type Perm = Vec<u32>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn perm_is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// `p` then `q`.
pub fn perm_mul(p: &[u32], q: &[u32]) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

pub fn perm_inv(p: &[u32]) -> Perm {
    let mut inv = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

#[derive(Debug, Clone)]
struct ChainLevel {
    point: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// `transversal[β]` maps `point` to `β`.
    transversal: Vec<Option<Perm>>,
}

impl ChainLevel {
    fn new(point: u32, npoints: usize) -> Self {
        let mut transversal = vec![None; npoints];
        transversal[point as usize] = Some(perm_identity(npoints));
        Self {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let n = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.point as usize] = Some(perm_identity(n));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for g in &self.gens {
                let gamma = g[beta as usize];
                if self.transversal[gamma as usize].is_none() {
                    let u = perm_mul(self.transversal[beta as usize].as_ref().unwrap(), g);
                    self.transversal[gamma as usize] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    npoints: usize,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    /// Builds a chain whose base starts with `base_prefix` (points may be
    /// redundant), extended as needed by the first moved point.
    pub fn new(npoints: usize, gens: &[Perm], base_prefix: &[u32]) -> Self {
        let gens: Vec<Perm> = gens
            .iter()
            .filter(|g| !perm_is_identity(g))
            .cloned()
            .collect();
        let mut base: Vec<u32> = base_prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g[b as usize] == b) {
                base.push(first_moved(g));
            }
        }
        let mut levels: Vec<ChainLevel> = base.iter().map(|&b| ChainLevel::new(b, npoints)).collect();
        for (i, level) in levels.iter_mut().enumerate() {
            level.gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g[b as usize] == b))
                .cloned()
                .collect();
            level.rebuild_orbit();
        }
        let mut chain = Self { npoints, levels };
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lv = i - 1;
            match self.find_nonsifting(lv) {
                Some((y, j)) => {
                    if j == self.levels.len() {
                        let b = first_moved(&y);
                        self.levels.push(ChainLevel::new(b, self.npoints));
                    }
                    for l in lv + 1..=j {
                        self.levels[l].gens.push(y.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// Finds a Schreier generator of level `lv` that does not sift through
    /// the levels below, returning the residue and the level where it stopped.
    fn find_nonsifting(&self, lv: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[lv];
        for &beta in &level.orbit {
            let u_beta = level.transversal[beta as usize].as_ref().unwrap();
            for x in &level.gens {
                let gamma = x[beta as usize];
                let u_gamma = level.transversal[gamma as usize].as_ref().unwrap();
                let h = perm_mul(&perm_mul(u_beta, x), &perm_inv(u_gamma));
                if perm_is_identity(&h) {
                    continue;
                }
                let (y, j) = self.strip(h, lv + 1);
                if j < self.levels.len() || !perm_is_identity(&y) {
                    return Some((y, j));
                }
            }
        }
        None
    }

    fn strip(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = h[level.point as usize];
            match &level.transversal[beta as usize] {
                Some(u) => h = perm_mul(&h, &perm_inv(u)),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        let (y, j) = self.strip(p.to_vec(), 0);
        j == self.levels.len() && perm_is_identity(&y)
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as `u64`, or `None` when it does not fit.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Perm> {
        if k == 0 {
            let mut all: Vec<Perm> = Vec::new();
            for l in &self.levels {
                for g in &l.gens {
                    if !all.contains(g) {
                        all.push(g.clone());
                    }
                }
            }
            return all;
        }
        self.levels.get(k).map(|l| l.gens.clone()).unwrap_or_default()
    }
}

fn first_moved(g: &[u32]) -> u32 {
    g.iter()
        .enumerate()
        .find(|(i, &x)| *i as u32 != x)
        .map(|(i, _)| i as u32)
        .expect("non-identity permutation")
}

/// Orbits of the group generated by `gens` on `0..n`, as a label per point
/// (label = smallest point of the orbit).
pub fn orbit_labels(n: usize, gens: &[Perm]) -> Vec<u32> {
    let mut label = vec![u32::MAX; n];
    for start in 0..n {
        if label[start] != u32::MAX {
            continue;
        }
        label[start] = start as u32;
        let mut stack = vec![start as u32];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g[x as usize];
                if label[y as usize] == u32::MAX {
                    label[y as usize] = start as u32;
                    stack.push(y);
                }
            }
        }
    }
    label
}
