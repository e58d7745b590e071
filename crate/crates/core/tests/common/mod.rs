//! Randomized invariant checks shared by the property tests and the
//! acceptance runner. Each takes a case count and returns the first
//! counterexample as an error message.

#![allow(dead_code)]

use std::sync::Arc;

use arbor_core::dynamics::{critical_data, NumberField, Polynomial};
use arbor_core::group::FiniteQuotient;
use arbor_core::tree::{uniform_aut_sample, Portrait, TreeShape, Vertex};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn portrait(d: usize, depth: usize, seed: u64) -> Portrait {
    let shape = TreeShape::new(d).unwrap();
    uniform_aut_sample(shape, depth, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `(d, depth)` pairs with at most a few hundred internal vertices.
fn shape_and_depth() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=4).prop_flat_map(|d| (Just(d), 0usize..=(9 - 2 * d)))
}

pub fn group_laws(cases: u32) -> Result<(), String> {
    let strat = (shape_and_depth(), any::<u64>(), any::<u64>(), any::<u64>());
    runner(cases)
        .run(&strat, |((d, m), s1, s2, s3)| {
            let (p, q, r) = (portrait(d, m, s1), portrait(d, m, s2), portrait(d, m, s3));
            let pq_r = p.compose(&q).unwrap().compose(&r).unwrap();
            let p_qr = p.compose(&q.compose(&r).unwrap()).unwrap();
            prop_assert_eq!(pq_r, p_qr);
            let id = Portrait::identity(p.shape(), m);
            prop_assert_eq!(&p.compose(&id).unwrap(), &p);
            prop_assert_eq!(&id.compose(&p).unwrap(), &p);
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn section_cocycle(cases: u32) -> Result<(), String> {
    let strat = (shape_and_depth(), any::<u64>(), any::<u64>(), any::<u64>(), any::<usize>());
    runner(cases)
        .run(&strat, |((d, m), s1, s2, s3, pos)| {
            let (p, q) = (portrait(d, m, s1), portrait(d, m, s2));
            let shape = p.shape();
            let k = (s3 as usize) % (m + 1);
            let v = Vertex::from_position(shape, k, pos % shape.level_size(k));
            let lhs = p.compose(&q).unwrap().section(&v).unwrap();
            let rhs = p
                .section(&v)
                .unwrap()
                .compose(&q.section(&p.apply(&v).unwrap()).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Fixed vertices form a subtree, so `X_n ≥ 1` implies `X_{n-1} ≥ 1`.
pub fn fixer_subtree(cases: u32) -> Result<(), String> {
    let strat = (shape_and_depth(), any::<u64>());
    runner(cases)
        .run(&strat, |((d, m), seed)| {
            let p = portrait(d, m, seed);
            let shape = p.shape();
            let mut prev_nonempty = true;
            for n in 0..=m {
                let fixed = p.fixed_positions(n);
                prop_assert_eq!(fixed.len() as u64, p.fixed_count(n).unwrap());
                if !fixed.is_empty() {
                    prop_assert!(prev_nonempty);
                }
                prev_nonempty = !fixed.is_empty();
                for &pos in &fixed {
                    let v = Vertex::from_position(shape, n, pos);
                    for k in 0..=n {
                        let u = v.prefix(k);
                        prop_assert_eq!(p.apply(&u).unwrap(), u);
                    }
                }
                let brute = shape
                    .level(n)
                    .filter(|v| p.apply(v).unwrap() == *v)
                    .count();
                prop_assert_eq!(brute, fixed.len());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Burnside: `Σ_g X_n(g) = |G| · #orbits`, so `E[X_n] = 1` exactly on
/// level-transitive quotients.
pub fn mean_fixed_points(cases: u32) -> Result<(), String> {
    let strat = (
        prop_oneof![Just((2usize, 1usize)), Just((2, 2)), Just((2, 3)), Just((3, 1)), Just((3, 2)), Just((4, 1))],
        prop::collection::vec(any::<u64>(), 1..=3),
    );
    runner(cases)
        .run(&strat, |((d, n), seeds)| {
            let gens: Vec<Portrait> = seeds.iter().map(|&s| portrait(d, n, s)).collect();
            let names = (0..gens.len()).map(|i| format!("g{i}")).collect();
            let shape = TreeShape::new(d).unwrap();
            let q = FiniteQuotient::from_generators(shape, n, names, gens, 100_000).unwrap();
            let total: u64 = q.elements().iter().map(|g| g.fixed_count(n).unwrap()).sum();
            let orbits = q.orbit_count(n) as u64;
            prop_assert_eq!(total, q.order() as u64 * orbits);
            let mean = BigRational::new(BigInt::from(total), BigInt::from(q.order()));
            if q.is_level_transitive() {
                prop_assert_eq!(mean, BigRational::from_integer(1.into()));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn rational_poly(max_degree: usize) -> impl Strategy<Value = Vec<BigRational>> {
    (prop::collection::vec(small_rational(), 1..=max_degree), 1i64..=5, any::<bool>()).prop_map(|(mut c, lead, neg)| {
        c.push(BigRational::from_integer(if neg { -lead } else { lead }.into()));
        c
    })
}

fn to_poly(k: &Arc<NumberField>, c: &[BigRational]) -> Polynomial {
    Polynomial::new(k.clone(), c.iter().map(|r| k.from_rational(r.clone())).collect())
}

/// `f` is built as an antiderivative of `c Π (x - r_i)^{m_i}`, so its
/// critical points are rational and `Σ (e_f(c) - 1) = d - 1`.
pub fn riemann_hurwitz(cases: u32) -> Result<(), String> {
    let strat = (
        prop::collection::vec((small_rational(), 1usize..=3), 1..=3),
        1i64..=4,
        small_rational(),
    );
    runner(cases)
        .run(&strat, |(mut roots, lead, constant)| {
            roots.sort_by(|a, b| a.0.cmp(&b.0));
            roots.dedup_by(|a, b| a.0 == b.0);
            let k = Arc::new(NumberField::rationals());
            let mut deriv = Polynomial::constant(k.clone(), k.from_int(lead));
            for (r, m) in &roots {
                deriv = deriv.mul(&Polynomial::linear_root(k.clone(), &k.from_rational(r.clone())).pow(*m));
            }
            let mut coeffs = vec![k.from_rational(constant)];
            for (i, c) in deriv.coeffs().iter().enumerate() {
                coeffs.push(k.div(c, &k.from_int(i as i64 + 1)).unwrap());
            }
            let f = Polynomial::map(k.clone(), coeffs).unwrap();
            prop_assert_eq!(&f.derivative(), &deriv);
            let crit = critical_data(&f, None).unwrap();
            prop_assert_eq!(crit.ramification(), f.degree() - 1);
            prop_assert_eq!(crit.points.len(), roots.len());
            for (r, m) in &roots {
                prop_assert_eq!(crit.local_degree(&k.from_rational(r.clone())), m + 1);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `(f ∘ g)' = (f' ∘ g) · g'`.
pub fn chain_rule(cases: u32) -> Result<(), String> {
    let strat = (rational_poly(4), rational_poly(3), small_rational());
    runner(cases)
        .run(&strat, |(fc, gc, z)| {
            let k = Arc::new(NumberField::rationals());
            let (f, g) = (to_poly(&k, &fc), to_poly(&k, &gc));
            let lhs = f.compose(&g).derivative();
            let rhs = f.derivative().compose(&g).mul(&g.derivative());
            prop_assert_eq!(&lhs, &rhs);
            let z = k.from_rational(z);
            prop_assert_eq!(f.compose(&g).eval(&z), f.eval(&g.eval(&z)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}
