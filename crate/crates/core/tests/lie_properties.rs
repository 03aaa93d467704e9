use nalgebra::DMatrix;
use proptest::prelude::*;
use torus_shadow::lie::q;
use torus_shadow::{RootSystem, TorusVector, Weight, Q};

const SMALL: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "D4"];

/// Ambient matrix of the simple reflection `s_i`, in rationals.
fn reflection_matrix(rs: &RootSystem, i: usize) -> DMatrix<Q> {
    let d = rs.ambient_dim();
    DMatrix::from_fn(d, d, |r, c| {
        let mut e = vec![Q::from_integer(0); d];
        e[c] = Q::from_integer(1);
        rs.reflect(i, &TorusVector::new(e)).coords()[r]
    })
}

fn coxeter_exponent(a: i64, b: i64) -> usize {
    match a * b {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        p => panic!("unexpected Cartan product {p}"),
    }
}

#[test]
fn simple_reflections_satisfy_coxeter_relations() {
    for l in SMALL.iter().filter(|l| l[1..].parse::<usize>().unwrap() <= 3) {
        let rs = RootSystem::from_label(l).unwrap();
        let a = rs.cartan_matrix();
        let d = rs.ambient_dim();
        let id = DMatrix::<Q>::identity(d, d);
        let mats: Vec<_> = (0..rs.rank()).map(|i| reflection_matrix(&rs, i)).collect();
        for i in 0..rs.rank() {
            for j in 0..rs.rank() {
                let m = if i == j { 1 } else { coxeter_exponent(a[i][j], a[j][i]) };
                let st = &mats[i] * &mats[j];
                let mut p = id.clone();
                for k in 1..=m {
                    p = &p * &st;
                    // the order is exactly m, not a proper divisor
                    assert_eq!(p == id, k == m, "{l}: (s{i} s{j})^{k}");
                }
            }
        }
    }
}

#[test]
fn form_is_reflection_invariant_on_roots() {
    for l in SMALL {
        let rs = RootSystem::from_label(l).unwrap();
        let roots: Vec<_> = rs.positive_roots().iter().map(|r| r.vector.clone()).collect();
        for i in 0..rs.rank() {
            for x in &roots {
                for y in &roots {
                    let lhs = rs.inner_product(&rs.reflect(i, x), &rs.reflect(i, y)).unwrap();
                    assert_eq!(lhs, rs.inner_product(x, y).unwrap(), "{l}");
                }
            }
        }
    }
}

#[test]
fn reflections_permute_the_root_system() {
    for l in SMALL {
        let rs = RootSystem::from_label(l).unwrap();
        let mut all: Vec<TorusVector> = rs.positive_roots().iter().map(|r| r.vector.clone()).collect();
        all.extend(rs.positive_roots().iter().map(|r| -&r.vector));
        for i in 0..rs.rank() {
            for x in &all {
                assert!(all.contains(&rs.reflect(i, x)), "{l}");
            }
        }
    }
}

#[test]
fn theta_is_the_unique_long_root_in_the_closed_chamber() {
    for l in SMALL.iter().chain(["E6", "E7", "E8", "F4"].iter()) {
        let rs = RootSystem::from_label(l).unwrap();
        let long = q(2);
        let mut hits = Vec::new();
        for r in rs.positive_roots() {
            for v in [r.vector.clone(), -&r.vector] {
                let in_chamber = rs
                    .simple_roots()
                    .iter()
                    .all(|a| rs.inner_product(&v, a).unwrap() >= Q::from_integer(0));
                if in_chamber && rs.inner_product(&v, &v).unwrap() == long {
                    hits.push(v);
                }
            }
        }
        assert_eq!(hits, vec![rs.highest_root().vector.clone()], "{l}");
    }
}

fn label_strategy() -> impl Strategy<Value = &'static str> {
    prop::sample::select(SMALL.to_vec())
}

proptest! {
    #[test]
    fn orbit_sizes_divide_the_group_order(l in label_strategy(), raw in prop::collection::vec(-3i64..4, 4)) {
        let rs = RootSystem::from_label(l).unwrap();
        let w = Weight(raw[..rs.rank()].to_vec());
        let orbit = rs.weyl_orbit_weight(&w);
        prop_assert_eq!(rs.weyl_group_order() % orbit.len() as u128, 0);
        let (dom, _) = rs.dominant_representative(&w);
        prop_assert!(dom.is_dominant());
        prop_assert!(orbit.iter().any(|(x, _)| *x == w));
        // norms are constant on the orbit
        let n = rs.weight_inner(&w, &w);
        for (x, _) in &orbit {
            prop_assert_eq!(rs.weight_inner(x, x), n);
        }
    }

    #[test]
    fn orbit_signs_are_determinants(l in label_strategy(), raw in prop::collection::vec(0i64..3, 4)) {
        // on a regular orbit every element has a unique group element, whose
        // determinant is the sign of the permutation of the chamber
        let rs = RootSystem::from_label(l).unwrap();
        let w = &Weight(raw[..rs.rank()].to_vec()) + &rs.rho_weight();
        let orbit = rs.weyl_orbit_weight(&w);
        prop_assert_eq!(orbit.len() as u128, rs.weyl_group_order());
        for (x, s) in &orbit {
            let (_, back) = rs.dominant_representative(x);
            prop_assert_eq!(back, *s);
        }
    }

    #[test]
    fn ambient_and_label_orbits_agree(l in label_strategy(), raw in prop::collection::vec(0i64..3, 4)) {
        let rs = RootSystem::from_label(l).unwrap();
        let w = Weight(raw[..rs.rank()].to_vec());
        let mut a: Vec<_> = rs.weyl_orbit_weight(&w).into_iter()
            .map(|(x, s)| (rs.weight_vector(&x).unwrap(), s)).collect();
        let mut b = rs.weyl_orbit(&rs.weight_vector(&w).unwrap()).unwrap();
        let key = |v: &(TorusVector, i8)| format!("{:?}", v.0);
        a.sort_by_key(key);
        b.sort_by_key(key);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn regularity_matches_root_values(num in prop::collection::vec(-12i64..12, 2), den in 1i64..7) {
        let rs = RootSystem::from_label("B2").unwrap();
        let vals: Vec<Q> = num.iter().map(|&n| Q::new(n, den)).collect();
        let b = rs.torus_from_simple_root_values(&vals).unwrap();
        let rv = rs.root_values(&b).unwrap();
        prop_assert_eq!(&rv[..2], &vals[..]);
        prop_assert_eq!(rs.is_regular(&b).unwrap(), rv.iter().all(|v| !v.is_integer()));
    }
}
