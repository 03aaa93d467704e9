//! Quadrature grids on the sphere and the quadrature form of the regularized
//! determinant.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::det::{root_values_f64, RootValue};
use crate::lie::RootSystem;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(z) and its derivative
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint {
    /// `cos` of the polar angle.
    pub z: f64,
    pub phi: f64,
    /// Embedding in `R^3` (or the unit square for flat patches).
    pub xyz: [f64; 3],
}

/// A product quadrature rule on a closed surface with curvature samples.
#[derive(Clone, Debug)]
pub struct SphereMetricSample {
    n_lat: usize,
    n_lon: usize,
    /// Node `(i, j)` is stored at `i * n_lon + j`.
    points: Vec<SpherePoint>,
    weights: Vec<f64>,
    curvature: Vec<f64>,
}

impl SphereMetricSample {
    /// Round unit sphere: Gauss-Legendre in `cos(theta)` times the uniform rule in `phi`.
    /// Scalar curvature is 2 everywhere.
    pub fn round(n_lat: usize, n_lon: usize) -> Self {
        assert!(n_lat > 0 && n_lon > 0, "grid needs at least one node per direction");
        let (zs, ws) = gauss_legendre(n_lat);
        let dphi = 2.0 * PI / n_lon as f64;
        let mut points = Vec::with_capacity(n_lat * n_lon);
        let mut weights = Vec::with_capacity(n_lat * n_lon);
        for (&z, &w) in zs.iter().zip(&ws) {
            let r = (1.0 - z * z).max(0.0).sqrt();
            for j in 0..n_lon {
                let phi = (j as f64 + 0.5) * dphi;
                points.push(SpherePoint {
                    z,
                    phi,
                    xyz: [r * phi.cos(), r * phi.sin(), z],
                });
                weights.push(w * dphi);
            }
        }
        let curvature = vec![2.0; points.len()];
        Self {
            n_lat,
            n_lon,
            points,
            weights,
            curvature,
        }
    }

    /// Flat unit-area patch with zero curvature, for diagnostics only.
    pub fn flat_patch(n_lat: usize, n_lon: usize) -> Self {
        assert!(n_lat > 0 && n_lon > 0, "grid needs at least one node per direction");
        let h = 1.0 / (n_lat * n_lon) as f64;
        let mut points = Vec::with_capacity(n_lat * n_lon);
        for i in 0..n_lat {
            for j in 0..n_lon {
                let u = (i as f64 + 0.5) / n_lat as f64;
                let v = (j as f64 + 0.5) / n_lon as f64;
                points.push(SpherePoint {
                    z: 2.0 * u - 1.0,
                    phi: 2.0 * PI * v,
                    xyz: [u, v, 0.0],
                });
            }
        }
        let n = points.len();
        Self {
            n_lat,
            n_lon,
            points,
            weights: vec![h; n],
            curvature: vec![0.0; n],
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_lat, self.n_lon)
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn curvature(&self) -> &[f64] {
        &self.curvature
    }

    pub fn area(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `int R dmu`, which is `8 pi` on any sphere.
    pub fn total_curvature(&self) -> f64 {
        self.weights.iter().zip(&self.curvature).map(|(w, r)| w * r).sum()
    }
}

/// `log(x) = ln|x| + i pi H(-x)` on nonzero reals.
pub fn real_log(x: f64) -> Complex64 {
    Complex64::new(x.abs().ln(), if x < 0.0 { PI } else { 0.0 })
}

/// `prod_alpha exp( int log(2 sin(pi alpha(B))) R / (4 pi) dmu )` by quadrature.
///
/// `field` returns ambient coordinates of `B` at a grid point.
pub fn det_rig_quadrature<F>(
    rs: &RootSystem,
    field: F,
    metric: &SphereMetricSample,
) -> Result<Complex64>
where
    F: Fn(&SpherePoint) -> Vec<f64>,
{
    let npos = rs.positive_roots().len();
    let mut integrals = vec![Complex64::new(0.0, 0.0); npos];
    for (idx, p) in metric.points().iter().enumerate() {
        let b = field(p);
        if b.len() != rs.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: rs.ambient_dim(),
                found: b.len(),
            });
        }
        let values = root_values_f64(rs, &b);
        let m = metric.weights[idx] * metric.curvature[idx] / (4.0 * PI);
        for (acc, v) in integrals.iter_mut().zip(&values) {
            if v.is_integer() {
                return Err(singular_node(idx, p, v));
            }
            let s = 2.0 * v.sin_pi();
            if s == 0.0 {
                return Err(singular_node(idx, p, v));
            }
            if m != 0.0 {
                *acc += real_log(s) * m;
            }
        }
    }
    Ok(integrals.iter().map(|i| i.exp()).product())
}

fn singular_node(idx: usize, p: &SpherePoint, v: &RootValue) -> Error {
    Error::Singular(format!(
        "grid node {idx} at (z = {:.6}, phi = {:.6}) has root value {}",
        p.z,
        p.phi,
        v.to_f64()
    ))
}
