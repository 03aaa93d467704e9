//! The operator `d/dt + ad(b)` on truncated Fourier series over the circle.
//!
//! The Lie algebra is split as `g = t + k` with `k` the sum of the real root
//! planes. Coordinates of an element of `g` are laid out as `rank` entries for
//! `t` followed by one `(x, y)` pair per positive root, in the order of
//! [`RootSystem::positive_roots`]. On the plane of `alpha` the operator `ad(b)`
//! acts as `theta * J` with `theta = 2 pi alpha(b)` and `J = [[0, -1], [1, 0]]`,
//! so `exp(ad b)` rotates the plane by `theta`.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::det::{root_values, root_values_f64, RootValue};
use crate::lie::{RootSystem, TorusVector};

/// A `g`-valued trigonometric polynomial `sum_{|m| <= N} c_m exp(2 pi i m t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    order: usize,
    dim: usize,
    /// `coeffs[m + N]` is the coefficient vector of mode `m`.
    coeffs: Vec<Vec<Complex64>>,
}

impl TruncatedSeries {
    pub fn zeros(order: usize, dim: usize) -> Self {
        Self {
            order,
            dim,
            coeffs: vec![vec![Complex64::new(0.0, 0.0); dim]; 2 * order + 1],
        }
    }

    pub fn from_modes(order: usize, dim: usize, coeffs: Vec<Vec<Complex64>>) -> Result<Self> {
        if coeffs.len() != 2 * order + 1 {
            return Err(Error::DimensionMismatch {
                expected: 2 * order + 1,
                found: coeffs.len(),
            });
        }
        if let Some(c) = coeffs.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
        Ok(Self { order, dim, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self, m: i64) -> &[Complex64] {
        &self.coeffs[(m + self.order as i64) as usize]
    }

    pub fn mode_mut(&mut self, m: i64) -> &mut [Complex64] {
        let o = self.order as i64;
        &mut self.coeffs[(m + o) as usize]
    }

    pub fn modes(&self) -> impl Iterator<Item = (i64, &[Complex64])> {
        let o = self.order as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (i as i64 - o, c.as_slice()))
    }

    /// Value at `t`.
    pub fn eval(&self, t: f64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (m, c) in self.modes() {
            let e = Complex64::from_polar(1.0, 2.0 * PI * m as f64 * t);
            for (o, x) in out.iter_mut().zip(c) {
                *o += e * x;
            }
        }
        out
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &TruncatedSeries) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// `b` together with the data needed to invert `d/dt + ad(b)`.
#[derive(Clone, Debug)]
pub struct CircleOperatorData {
    rank: usize,
    order: usize,
    /// `2 pi alpha(b)` per positive root.
    angles: Vec<f64>,
}

impl CircleOperatorData {
    pub fn new(rs: &RootSystem, b: &TorusVector, order: usize) -> Result<Self> {
        Self::from_values(rs.rank(), &root_values(rs, b)?, order)
    }

    pub fn new_f64(rs: &RootSystem, b: &[f64], order: usize) -> Result<Self> {
        if b.len() != rs.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: rs.ambient_dim(),
                found: b.len(),
            });
        }
        Self::from_values(rs.rank(), &root_values_f64(rs, b), order)
    }

    fn from_values(rank: usize, values: &[RootValue], order: usize) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| v.is_integer()) {
            return Err(Error::Singular(format!(
                "T(b) is undefined: a positive root takes the integer value {}",
                v.to_f64()
            )));
        }
        Ok(Self {
            rank,
            order,
            angles: values.iter().map(|v| 2.0 * PI * v.to_f64()).collect(),
        })
    }

    /// `dim g`.
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.angles.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// `ad(b)` restricted to the plane of the `r`-th positive root.
    pub fn ad_block(&self, r: usize) -> Matrix2<f64> {
        let th = self.angles[r];
        Matrix2::new(0.0, -th, th, 0.0)
    }

    /// `T(b) = (exp(ad b) - 1)^(-1)` on the plane of the `r`-th positive root.
    pub fn t_block(&self, r: usize) -> Matrix2<f64> {
        let th = self.angles[r];
        let m = Matrix2::new(th.cos() - 1.0, -th.sin(), th.sin(), th.cos() - 1.0);
        m.try_inverse().expect("regular b keeps exp(ad b) - 1 invertible")
    }

    fn check(&self, f: &TruncatedSeries) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.dim(),
            });
        }
        if f.order() > self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: f.order(),
            });
        }
        Ok(())
    }

    /// `(d/dt + ad b) f`.
    pub fn apply_operator(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(f)?;
        let mut out = TruncatedSeries::zeros(f.order(), f.dim());
        for (m, c) in f.modes() {
            let w = Complex64::new(0.0, 2.0 * PI * m as f64);
            let o = out.mode_mut(m);
            for i in 0..self.rank {
                o[i] = w * c[i];
            }
            for r in 0..self.angles.len() {
                let th = self.angles[r];
                let (x, y) = (c[self.rank + 2 * r], c[self.rank + 2 * r + 1]);
                o[self.rank + 2 * r] = w * x - y * th;
                o[self.rank + 2 * r + 1] = w * y + x * th;
            }
        }
        Ok(out)
    }

    /// Inverts `d/dt + ad b` mode by mode.
    ///
    /// On `k` the mode-`m` coefficient is mapped by `(ad b + 2 pi i m)^(-1)`,
    /// which agrees with `T(b) int_0^1 exp(s ad b) f(t + s) ds`. On `t` the
    /// operator is `d/dt`, invertible only on nonzero modes; the zero mode of
    /// the `t`-component must vanish and the output has zero mean in `t`.
    pub fn inverse_apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(f)?;
        let scale = 1.0 + f.max_abs();
        if let Some(x) = f.mode(0)[..self.rank].iter().find(|x| x.norm() > 1e-12 * scale) {
            return Err(Error::Constraint(format!(
                "the mean of f has a t-component of size {:.3e}; it must lie in k",
                x.norm()
            )));
        }
        let mut out = TruncatedSeries::zeros(f.order(), f.dim());
        for (m, c) in f.modes() {
            let w = Complex64::new(0.0, 2.0 * PI * m as f64);
            let o = out.mode_mut(m);
            if m != 0 {
                for i in 0..self.rank {
                    o[i] = c[i] / w;
                }
            }
            for r in 0..self.angles.len() {
                // (w I + th J)^(-1) = (w I - th J) / (w^2 + th^2)
                let th = self.angles[r];
                let (x, y) = (c[self.rank + 2 * r], c[self.rank + 2 * r + 1]);
                let det = w * w + th * th;
                o[self.rank + 2 * r] = (w * x + y * th) / det;
                o[self.rank + 2 * r + 1] = (w * y - x * th) / det;
            }
        }
        Ok(out)
    }

    /// `max |(d/dt + ad b) C_b f - f|` over all coefficients.
    pub fn residual(&self, f: &TruncatedSeries) -> Result<f64> {
        let g = self.inverse_apply(f)?;
        Ok(self.apply_operator(&g)?.max_abs_diff(f))
    }

    /// `exp(s ad b) v` on a single plane, for quadrature checks.
    pub fn rotate(&self, r: usize, s: f64, v: Vector2<Complex64>) -> Vector2<Complex64> {
        let a = s * self.angles[r];
        Vector2::new(
            v[0] * a.cos() - v[1] * a.sin(),
            v[0] * a.sin() + v[1] * a.cos(),
        )
    }
}
