use std::sync::Arc;

use torus_shadow::fusion::{quantum_dimension, FusionTable, VerlindeOracle};
use torus_shadow::{LevelAlphabet, RootSystem};

fn ranges() -> Vec<(&'static str, i64)> {
    let mut v = Vec::new();
    for k in 3..=10 {
        v.push(("A1", k));
    }
    for k in 4..=6 {
        v.push(("A2", k));
    }
    for k in 4..=6 {
        v.push(("B2", k));
    }
    v
}

fn setup(label: &str, k: i64) -> (Arc<LevelAlphabet>, FusionTable) {
    let rs = Arc::new(RootSystem::from_label(label).unwrap());
    let al = Arc::new(LevelAlphabet::new(rs, k).unwrap());
    let t = FusionTable::new(al.clone()).unwrap();
    (al, t)
}

#[test]
fn quantum_weyl_group_sum_equals_verlinde() {
    for (label, k) in ranges() {
        let (al, t) = setup(label, k);
        let o = VerlindeOracle::new(al.clone()).unwrap();
        let n = al.len();
        for l in 0..n {
            for m in 0..n {
                for v in 0..n {
                    assert_eq!(
                        t.get(l, m, v),
                        o.coefficient_by_index(l, m, v).unwrap(),
                        "{label} k={k} ({l},{m},{v})"
                    );
                }
            }
        }
    }
}

#[test]
fn fusion_is_symmetric_in_the_lower_pair() {
    // N^l_{m v} counts v in l (x) m, so l (x) m = m (x) l reads N^l_{m v} = N^m_{l v}
    for (label, k) in ranges() {
        let (al, t) = setup(label, k);
        let n = al.len();
        for l in 0..n {
            for m in 0..n {
                for v in 0..n {
                    assert_eq!(t.get(l, m, v), t.get(m, l, v), "{label} k={k}");
                }
            }
        }
    }
}

#[test]
fn quantum_dimensions_form_a_ring_homomorphism() {
    for (label, k) in ranges() {
        let (al, t) = setup(label, k);
        let dims: Vec<f64> = al
            .elements()
            .iter()
            .map(|w| quantum_dimension(&al, w).unwrap())
            .collect();
        assert!(dims.iter().all(|&d| d > 0.0), "{label} k={k}");
        let n = al.len();
        for l in 0..n {
            for m in 0..n {
                let lhs: f64 = (0..n).map(|v| t.get(l, m, v) as f64 * dims[v]).sum();
                assert!((lhs - dims[l] * dims[m]).abs() < 1e-9, "{label} k={k}");
            }
        }
    }
}

#[test]
fn g2_and_c3_tables_match_verlinde() {
    for (label, k) in [("G2", 7), ("G2", 8), ("C3", 6), ("A3", 6)] {
        let (al, t) = setup(label, k);
        let o = VerlindeOracle::new(al.clone()).unwrap();
        let n = al.len();
        for l in 0..n {
            for m in 0..n {
                for v in 0..n {
                    assert_eq!(t.get(l, m, v), o.coefficient_by_index(l, m, v).unwrap());
                }
            }
        }
    }
}
