//! Randomized algebraic identities, each run for a fixed number of cases
//! from a fixed seed.

use std::sync::Arc;

use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{RngSeed, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fibrewise_core::cintersect::CompleteIntersection;
use fibrewise_core::fibint::{build_pi, LerayHirsch};
use fibrewise_core::sample;
use fibrewise_core::spaces::Space;
use fibrewise_core::{AlgElement, Derivation, FreeGcAlgebra, Q};

pub const CASES: u32 = 128;

fn runner() -> TestRunner {
    TestRunner::new(ProptestConfig {
        cases: CASES,
        rng_seed: RngSeed::Fixed(0x0dd5_eed5),
        failure_persistence: None,
        ..ProptestConfig::default()
    })
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

fn mixed() -> Arc<FreeGcAlgebra> {
    FreeGcAlgebra::from_pairs(&[("a", 2), ("b", 3), ("c", 4), ("e", 5)]).unwrap()
}

fn sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

fn random_derivation(alg: &Arc<FreeGcAlgebra>, shift: i32, rng: &mut ChaCha8Rng) -> Derivation {
    let images = alg
        .generators()
        .iter()
        .map(|g| {
            let deg = g.degree as i32 + shift;
            if deg < 0 {
                alg.zero()
            } else {
                sample::homogeneous(alg, deg as u32, 3, rng)
            }
        })
        .collect();
    Derivation::new(alg, shift, images).unwrap()
}

pub fn graded_commutativity() -> Result<(), String> {
    run((any::<u64>(), 0u32..12, 0u32..12), |(seed, p, q)| {
        let alg = mixed();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = sample::homogeneous(&alg, p, 4, &mut rng);
        let v = sample::homogeneous(&alg, q, 4, &mut rng);
        prop_assert_eq!(&u * &v, (&v * &u).scale(&sign(p * q % 2 == 1)));
        Ok(())
    })
}

pub fn associativity() -> Result<(), String> {
    run(any::<u64>(), |seed| {
        let alg = mixed();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = sample::element(&alg, 8, 3, &mut rng);
        let v = sample::element(&alg, 8, 3, &mut rng);
        let w = sample::element(&alg, 8, 3, &mut rng);
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        Ok(())
    })
}

pub fn leibniz() -> Result<(), String> {
    run(
        (any::<u64>(), -3i32..4, 0u32..10, 0u32..10),
        |(seed, shift, p, q)| {
            let alg = mixed();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let theta = random_derivation(&alg, shift, &mut rng);
            let u = sample::homogeneous(&alg, p, 3, &mut rng);
            let v = sample::homogeneous(&alg, q, 3, &mut rng);
            let lhs = theta.apply(&(&u * &v)).unwrap();
            let koszul = sign(shift.rem_euclid(2) == 1 && p % 2 == 1);
            let rhs = &(&theta.apply(&u).unwrap() * &v)
                + &(&u * &theta.apply(&v).unwrap()).scale(&koszul);
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    )
}

pub fn bracket_antisymmetry_and_jacobi() -> Result<(), String> {
    run(
        (any::<u64>(), -2i32..3, -2i32..3, -2i32..3),
        |(seed, s, t, r)| {
            let alg = mixed();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let th = random_derivation(&alg, s, &mut rng);
            let et = random_derivation(&alg, t, &mut rng);
            let ze = random_derivation(&alg, r, &mut rng);
            let st = sign((s * t).rem_euclid(2) == 1);
            let ab = th.bracket(&et).unwrap();
            let ba = et.bracket(&th).unwrap();
            let neg_ba = ba.scale(&-st.clone());
            prop_assert_eq!(ab.images(), neg_ba.images());
            // [θ,[η,ζ]] = [[θ,η],ζ] + (−1)^{st}[η,[θ,ζ]]
            let lhs = th.bracket(&et.bracket(&ze).unwrap()).unwrap();
            let a = ab.bracket(&ze).unwrap();
            let b = et.bracket(&th.bracket(&ze).unwrap()).unwrap().scale(&st);
            for g in 0..alg.ngens() {
                prop_assert_eq!(lhs.image(g), &(a.image(g) + b.image(g)));
            }
            Ok(())
        },
    )
}

pub fn push_pull() -> Result<(), String> {
    run((any::<u64>(), 0u32..13, 0usize..3), |(seed, k, which)| {
        let dims: &[u32] = [&[3][..], &[3, 5][..], &[3, 3, 3][..]][which];
        let um = Space::odd_product(dims).unwrap().universal_model().unwrap();
        let m = &um.model;
        let pi = build_pi(m, Q::one(), 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = sample::homogeneous(m.base_algebra(), k, 3, &mut rng);
        let e = sample::element(m.total_algebra(), pi.dimension() + 8, 3, &mut rng);
        let lhs = pi.apply(&(&m.include_base(&b) * &e));
        let rhs = (&b * &pi.apply(&e)).scale(&sign(pi.dimension() % 2 == 1 && k % 2 == 1));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn normal_form_idempotent() -> Result<(), String> {
    run((any::<u64>(), 1u32..4), |(seed, n)| {
        let ci = CompleteIntersection::projective_space(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::element(ci.ambient(), 4 * n + 4, 3, &mut rng);
        let b = sample::element(ci.ambient(), 4 * n, 3, &mut rng);
        let na = ci.normal_form(&a);
        prop_assert!(ci.is_normal(&na));
        prop_assert_eq!(ci.normal_form(&na), na.clone());
        prop_assert_eq!(ci.normal_form(&(&a * &b)), ci.mul(&na, &ci.normal_form(&b)));
        Ok(())
    })
}

pub fn dual_basis() -> Result<(), String> {
    run((any::<u64>(), 1u32..5), |(seed, n)| {
        // unitriangular perturbations of 1, x, …, xⁿ
        let ci = CompleteIntersection::projective_space(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = ci.fibre_var(0);
        let basis: Vec<AlgElement> = (0..=n)
            .map(|i| {
                let mut e = x.pow(i);
                for j in 0..i {
                    if rng.gen_bool(0.6) {
                        let b = sample::homogeneous(ci.base(), 2 * (i - j), 2, &mut rng);
                        e += &(&ci.include_base(&b) * &x.pow(j));
                    }
                }
                e
            })
            .collect();
        let lh = LerayHirsch::new(&ci, basis.clone()).unwrap();
        let dual = lh.dual_basis().unwrap();
        for (i, ei) in basis.iter().enumerate() {
            for (j, fj) in dual.iter().enumerate() {
                let v = lh.fibre_integrate(&ci.mul(ei, fj));
                if i == j {
                    prop_assert!(v == ci.base().one(), "π_!(e_{}·e_{}^#) = {}", i, j, v);
                } else {
                    prop_assert!(v.is_zero(), "π_!(e_{}·e_{}^#) = {}", i, j, v);
                }
            }
        }
        prop_assert_eq!(lh.euler_class().unwrap(), ci.euler_class());
        Ok(())
    })
}
