use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use torus_shadow::rep::{character_eval, character_eval_f64, weight_multiplicities, weyl_dimension};
use torus_shadow::{RootSystem, TorusVector, Weight, Q};

/// All dominant weights with labels summing to at most `bound`.
fn dominant_box(rank: usize, bound: i64) -> Vec<Weight> {
    let mut out = vec![Weight(vec![])];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                let used: i64 = w.0.iter().sum();
                (0..=bound - used).map(move |a| {
                    let mut v = w.0.clone();
                    v.push(a);
                    Weight(v)
                })
            })
            .collect();
    }
    out
}

#[test]
fn freudenthal_dimension_matches_weyl_formula() {
    for (label, bound) in [("A1", 40), ("A2", 8), ("B2", 7), ("G2", 4)] {
        let rs = RootSystem::from_label(label).unwrap();
        for lambda in dominant_box(rs.rank(), bound) {
            let dim = weyl_dimension(&rs, &lambda).unwrap();
            if dim > 10_000 {
                continue;
            }
            let ws = weight_multiplicities(&rs, &lambda).unwrap();
            let total: u128 = ws.weights().map(|(_, m)| m as u128).sum();
            assert_eq!(total, dim, "{label} {lambda}");
        }
    }
}

#[test]
fn known_multiplicities() {
    // adjoint representations: zero weight has multiplicity equal to the rank
    for label in ["A2", "B2", "G2", "A3"] {
        let rs = RootSystem::from_label(label).unwrap();
        let theta = rs.highest_root().as_weight();
        let ws = weight_multiplicities(&rs, &theta).unwrap();
        assert_eq!(ws.multiplicity(&Weight::zero(rs.rank())), rs.rank() as u64);
        assert_eq!(ws.dimension(), rs.dimension() as u128, "{label}");
    }
    // A2 (2,2): the 27 has multiplicities 1, 2, 3 on its three dominant levels
    let a2 = RootSystem::from_label("A2").unwrap();
    let ws = weight_multiplicities(&a2, &Weight(vec![2, 2])).unwrap();
    assert_eq!(ws.multiplicity(&Weight(vec![2, 2])), 1);
    assert_eq!(ws.multiplicity(&Weight(vec![1, 1])), 2);
    assert_eq!(ws.multiplicity(&Weight(vec![0, 0])), 3);
    assert_eq!(ws.dimension(), 27);
}

/// The Weyl character formula at a generic point, evaluated directly.
fn weyl_character(rs: &RootSystem, lambda: &Weight, b: &[f64]) -> Complex64 {
    let alt = |w: &Weight| -> Complex64 {
        rs.weyl_orbit_weight(w)
            .into_iter()
            .map(|(x, s)| {
                let v = rs.weight_vector(&x).unwrap().to_f64();
                let phase = 2.0 * PI * rs.inner_product_f64(&v, b);
                Complex64::from_polar(s as f64, phase)
            })
            .sum()
    };
    let rho = rs.rho_weight();
    alt(&(lambda + &rho)) / alt(&rho)
}

fn sample_label() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1", "A2", "B2", "G2", "A3", "C3"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn character_matches_weyl_formula(
        l in sample_label(),
        raw in prop::collection::vec(0i64..3, 3),
        b in prop::collection::vec(0.01f64..0.99, 3),
    ) {
        let rs = RootSystem::from_label(l).unwrap();
        let lambda = Weight(raw[..rs.rank()].to_vec());
        let bt = rs.torus_from_simple_root_values_f64(&b[..rs.rank()]);
        let denom = {
            let rho = rs.rho_weight();
            rs.weyl_orbit_weight(&rho).into_iter().map(|(x, s)| {
                let v = rs.weight_vector(&x).unwrap().to_f64();
                Complex64::from_polar(s as f64, 2.0 * PI * rs.inner_product_f64(&v, &bt))
            }).sum::<Complex64>()
        };
        prop_assume!(denom.norm() > 1e-3);
        let ws = weight_multiplicities(&rs, &lambda).unwrap();
        let got = character_eval_f64(&rs, &ws, &bt);
        let expect = weyl_character(&rs, &lambda, &bt);
        prop_assert!((got - expect).norm() < 1e-8 * (1.0 + expect.norm()), "{} vs {}", got, expect);
    }

    #[test]
    fn character_is_coroot_periodic(
        l in sample_label(),
        raw in prop::collection::vec(0i64..3, 3),
        num in prop::collection::vec(-20i64..20, 3),
        den in 1i64..9,
        shift in prop::collection::vec(-2i64..3, 3),
    ) {
        let rs = RootSystem::from_label(l).unwrap();
        let r = rs.rank();
        let lambda = Weight(raw[..r].to_vec());
        let ws = weight_multiplicities(&rs, &lambda).unwrap();
        let vals: Vec<Q> = num[..r].iter().map(|&n| Q::new(n, den)).collect();
        let b = rs.torus_from_simple_root_values(&vals).unwrap();
        let mut gamma = TorusVector::zeros(rs.ambient_dim());
        for (i, &c) in shift[..r].iter().enumerate() {
            gamma = &gamma + &rs.coroot(&rs.simple_roots()[i]).scaled(Q::from_integer(c));
        }
        let x = character_eval(&rs, &ws, &b).unwrap();
        let y = character_eval(&rs, &ws, &(&b + &gamma)).unwrap();
        prop_assert!((x - y).norm() < 1e-9 * (1.0 + x.norm()));
        // and Weyl invariant
        for i in 0..r {
            let z = character_eval(&rs, &ws, &rs.reflect(i, &b)).unwrap();
            prop_assert!((x - z).norm() < 1e-9 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn multiplicities_are_weyl_invariant(l in sample_label(), raw in prop::collection::vec(0i64..3, 3)) {
        let rs = RootSystem::from_label(l).unwrap();
        let lambda = Weight(raw[..rs.rank()].to_vec());
        let ws = weight_multiplicities(&rs, &lambda).unwrap();
        for (beta, m) in ws.weights() {
            for i in 0..rs.rank() {
                prop_assert_eq!(ws.multiplicity(&rs.reflect_weight(i, beta)), m);
            }
        }
    }
}
