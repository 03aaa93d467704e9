//! Holonomies as ordered products of matrix exponentials, and the closed form
//! of ribbon Wilson loops for torus-valued connections.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::kernel::metric::gauss_legendre;
use crate::lie::RootSystem;
use crate::rep::{character_eval_f64, WeightSystem};

pub type Mat = DMatrix<Complex64>;

/// `prod_{j=1}^n exp(A(j/n) / n)`, with the `j = 1` factor leftmost.
///
/// `a(t)` is the connection evaluated on the tangent of the loop at `t`, in a
/// fixed matrix representation.
pub fn holonomy<F>(n: usize, a: F) -> Mat
where
    F: Fn(f64) -> Mat,
{
    assert!(n >= 1, "holonomy needs at least one factor");
    let h = 1.0 / n as f64;
    let mut acc: Option<Mat> = None;
    for j in 1..=n {
        let f = (a(j as f64 * h) * Complex64::new(h, 0.0)).exp();
        acc = Some(match acc {
            None => f,
            Some(m) => m * f,
        });
    }
    acc.expect("n >= 1")
}

/// Ribbon holonomy: each factor averages the connection over the ribbon
/// parameter `u` with a Gauss-Legendre rule of `u_nodes` points.
pub fn ribbon_holonomy<F>(n: usize, u_nodes: usize, a: F) -> Mat
where
    F: Fn(f64, f64) -> Mat,
{
    let (x, w) = gauss_legendre(u_nodes);
    holonomy(n, |t| {
        let mut acc: Option<Mat> = None;
        for (xi, wi) in x.iter().zip(&w) {
            let term = a(0.5 * (xi + 1.0), t) * Complex64::new(0.5 * wi, 0.0);
            acc = Some(match acc {
                None => term,
                Some(m) => m + term,
            });
        }
        acc.expect("at least one node")
    })
}

/// The ribbon shrunk by the factor `s` around its core `u = 1/2`.
pub fn scaled_ribbon<F>(s: f64, a: F) -> impl Fn(f64, f64) -> Mat
where
    F: Fn(f64, f64) -> Mat,
{
    move |u, t| a(s * (u - 0.5) + 0.5, t)
}

/// The diagonal matrix of `b` in the weight basis of a representation, with
/// `exp` of it equal to the group element acting as `exp(2 pi i beta(b))`.
pub fn torus_representation(rs: &RootSystem, ws: &WeightSystem, b: &[f64]) -> Mat {
    let c: Vec<f64> = rs
        .fundamental_weights()
        .iter()
        .map(|w| rs.inner_product_f64(&w.to_f64(), b))
        .collect();
    let mut diag = Vec::new();
    for (beta, m) in ws.weights() {
        let phase: f64 = beta.0.iter().zip(&c).map(|(&x, ci)| x as f64 * ci).sum();
        for _ in 0..m {
            diag.push(Complex64::new(0.0, 2.0 * PI * phase));
        }
    }
    Mat::from_diagonal(&nalgebra::DVector::from_vec(diag))
}

/// `int_0^1 du oint dt f(u, t)` for a torus-valued integrand: Gauss-Legendre in
/// `u` and the periodic trapezoid rule in `t`.
pub fn ribbon_integral<F>(u_nodes: usize, t_nodes: usize, f: F) -> Vec<f64>
where
    F: Fn(f64, f64) -> Vec<f64>,
{
    let (x, w) = gauss_legendre(u_nodes);
    let mut acc: Vec<f64> = Vec::new();
    for (xi, wi) in x.iter().zip(&w) {
        let u = 0.5 * (xi + 1.0);
        for j in 0..t_nodes {
            let v = f(u, j as f64 / t_nodes as f64);
            if acc.is_empty() {
                acc = vec![0.0; v.len()];
            }
            let weight = 0.5 * wi / t_nodes as f64;
            for (a, x) in acc.iter_mut().zip(&v) {
                *a += weight * x;
            }
        }
    }
    acc
}

/// `prod_i Tr_{rho_i} exp(v_i)` where `v_i` is the ribbon integral of
/// `A_c + B dt` along the `i`-th ribbon.
pub fn closed_form_wilson(rs: &RootSystem, ribbons: &[(&WeightSystem, Vec<f64>)]) -> Complex64 {
    ribbons
        .iter()
        .map(|(ws, v)| character_eval_f64(rs, ws, v))
        .product()
}

/// Direct evaluation: the product of traces of ribbon holonomies with `n`
/// factors, for torus-valued integrands.
pub fn direct_wilson<F>(
    rs: &RootSystem,
    ribbons: &[(&WeightSystem, F)],
    n: usize,
    u_nodes: usize,
) -> Complex64
where
    F: Fn(f64, f64) -> Vec<f64>,
{
    ribbons
        .iter()
        .map(|(ws, f)| {
            ribbon_holonomy(n, u_nodes, |u, t| torus_representation(rs, ws, &f(u, t))).trace()
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::weight_multiplicities;
    use crate::{Weight, Q};

    #[test]
    fn constant_vertical_loop_is_exact_for_every_n() {
        let rs = RootSystem::from_label("A1").unwrap();
        let ws = weight_multiplicities(&rs, &Weight(vec![1])).unwrap();
        let b = rs.torus_from_simple_root_values_f64(&[0.3]);
        let m = torus_representation(&rs, &ws, &b);
        let target = m.clone().exp();
        for n in [1, 2, 7, 32] {
            let h = holonomy(n, |_| m.clone());
            assert!((h - &target).norm() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn vertical_ribbon_gives_character() {
        let rs = RootSystem::from_label("A2").unwrap();
        let ws = weight_multiplicities(&rs, &Weight(vec![1, 1])).unwrap();
        let b = rs
            .torus_from_simple_root_values(&[Q::new(1, 5), Q::new(1, 3)])
            .unwrap();
        let bf = b.to_f64();
        let v = ribbon_integral(4, 16, |_, _| bf.clone());
        let closed = closed_form_wilson(&rs, &[(&ws, v)]);
        let expect = crate::rep::character_eval(&rs, &ws, &b).unwrap();
        assert!((closed - expect).norm() < 1e-12);
        let triv = weight_multiplicities(&rs, &Weight(vec![0, 0])).unwrap();
        let one = closed_form_wilson(&rs, &[(&triv, vec![0.7, -0.1, -0.6])]);
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn winding_multiplies_the_face_value() {
        let rs = RootSystem::from_label("A1").unwrap();
        let ws = weight_multiplicities(&rs, &Weight(vec![2])).unwrap();
        let b = rs.torus_from_simple_root_values(&[Q::new(1, 7)]).unwrap();
        let w = 3.0;
        let bf: Vec<f64> = b.to_f64().iter().map(|x| w * x).collect();
        let v = ribbon_integral(3, 8, |_, _| bf.clone());
        let expect = crate::rep::character_eval(&rs, &ws, &b.scaled(Q::from_integer(3))).unwrap();
        assert!((closed_form_wilson(&rs, &[(&ws, v)]) - expect).norm() < 1e-12);
    }
}
