//! Regularization sequences for the indicator of the regular set and for the
//! regularized determinant.
//!
//! Both sequences are evaluated on a mesh of cells. A cell carries the mean
//! value of the field on it, its curvature mass `int_F R / (4 pi) dmu`, and a
//! multiplicity (the number of identical cells it stands for). Stepped fields
//! on a diagram refine each face into `4^(n+1)` cells whose means equal the
//! face value exactly; sampled fields on a quadrature grid are refined into
//! latitude-longitude blocks.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::kernel::det::{root_values_f64, RootValue, SteppedField};
use crate::kernel::metric::{SpherePoint, SphereMetricSample};
use crate::lie::RootSystem;

/// Width factor `C` of the transition region of the bump.
pub const BUMP_WIDTH: f64 = 0.25;

/// Smallest Fourier truncation tolerance used; below this the bound is not
/// representable in double precision.
pub const EPS_FLOOR: f64 = 1e-13;

fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let f = |s: f64| (-1.0 / s).exp();
    f(t) / (f(t) + f(1.0 - t))
}

/// The smooth 1-periodic function that vanishes on the integers and equals 1
/// outside the `C/n`-neighborhood of the integers.
pub fn bump(n: usize, x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    let d = r.min(1.0 - r);
    smooth_step(d * n as f64 / BUMP_WIDTH)
}

/// A trigonometric polynomial `p` approximating [`bump`] to within `eps`,
/// shifted so that it vanishes on the integers.
#[derive(Clone, Debug)]
pub struct TrigIndicator {
    n: usize,
    /// Cosine coefficients `c_0, ..., c_K`.
    coeffs: Vec<f64>,
    p0: f64,
    eps: f64,
}

impl TrigIndicator {
    pub fn new(n: usize, eps: f64) -> Self {
        assert!(n >= 1, "regularization index starts at 1");
        let eps = eps.max(EPS_FLOOR);
        let m = (1usize << 16) * n.div_ceil(8).next_power_of_two();
        let mut buf: Vec<Complex64> = (0..m)
            .map(|j| Complex64::new(bump(n, j as f64 / m as f64), 0.0))
            .collect();
        FftPlanner::new().plan_fft_forward(m).process(&mut buf);
        // psi is even, so its series is a cosine series with coefficient
        // c_0 = a_0 and c_j = 2 a_j
        let half = m / 2;
        let amp: Vec<f64> = (0..half)
            .map(|j| {
                let a = buf[j].re / m as f64;
                if j == 0 {
                    a
                } else {
                    2.0 * a
                }
            })
            .collect();
        let mut tail = 0.0;
        let mut k = half - 1;
        while k > 0 && tail + amp[k].abs() < eps / 2.0 {
            tail += amp[k].abs();
            k -= 1;
        }
        let coeffs = amp[..=k].to_vec();
        let p0 = coeffs.iter().sum();
        Self { n, coeffs, p0, eps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// The truncated series `p(x)`.
    pub fn p(&self, x: f64) -> f64 {
        let r = x.rem_euclid(1.0);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * (2.0 * PI * j as f64 * r).cos())
            .sum()
    }

    /// `p(x) - p(0)`, exactly zero on integers.
    pub fn p_bar(&self, v: &RootValue) -> f64 {
        if v.is_integer() {
            return 0.0;
        }
        let r = v.to_f64().rem_euclid(1.0);
        if r == 0.0 {
            return 0.0;
        }
        self.p(r) - self.p0
    }
}

/// Polynomial approximation of the principal logarithm on `[-2, 2] \ {0}`.
///
/// `log_n(x) = P(x^2) / 2 + i pi / 2 * (1 - x Q(x^2))` where `P` and `Q` are
/// Chebyshev interpolants of `ln y` and `y^(-1/2)` on `[1/n^2, 4]`. As `n`
/// grows the interval and the degree both grow, so the sequence converges
/// uniformly on compact subsets of `[-2, 2] \ {0}`.
#[derive(Clone, Debug)]
pub struct LogPolynomial {
    n: usize,
    lo: f64,
    hi: f64,
    ln_coeffs: Vec<f64>,
    rsqrt_coeffs: Vec<f64>,
}

impl LogPolynomial {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "regularization index starts at 1");
        let lo = 1.0 / (n * n) as f64;
        let hi = 4.0;
        let degree = 24 * n + 16;
        Self {
            n,
            lo,
            hi,
            ln_coeffs: chebyshev_interpolant(f64::ln, lo, hi, degree),
            rsqrt_coeffs: chebyshev_interpolant(|y| 1.0 / y.sqrt(), lo, hi, degree),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree_in_x(&self) -> usize {
        2 * self.ln_coeffs.len().max(self.rsqrt_coeffs.len()) - 1
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let y = x * x;
        let re = 0.5 * clenshaw(&self.ln_coeffs, self.lo, self.hi, y);
        let im = 0.5 * PI * (1.0 - x * clenshaw(&self.rsqrt_coeffs, self.lo, self.hi, y));
        Complex64::new(re, im)
    }
}

fn chebyshev_interpolant(f: impl Fn(f64) -> f64, lo: f64, hi: f64, degree: usize) -> Vec<f64> {
    let m = degree + 1;
    let mid = 0.5 * (hi + lo);
    let half = 0.5 * (hi - lo);
    let samples: Vec<f64> = (0..m)
        .map(|k| f(mid + half * (PI * (k as f64 + 0.5) / m as f64).cos()))
        .collect();
    (0..m)
        .map(|j| {
            let s: f64 = samples
                .iter()
                .enumerate()
                .map(|(k, v)| v * (PI * j as f64 * (k as f64 + 0.5) / m as f64).cos())
                .sum();
            let c = 2.0 * s / m as f64;
            if j == 0 {
                c / 2.0
            } else {
                c
            }
        })
        .collect()
}

fn clenshaw(c: &[f64], lo: f64, hi: f64, y: f64) -> f64 {
    let t = (2.0 * y - lo - hi) / (hi - lo);
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

/// Degree-`n` Taylor polynomial of `exp`.
pub fn exp_taylor(n: usize, z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = term;
    for k in 1..=n {
        term *= z / k as f64;
        acc += term;
    }
    acc
}

/// A group of `multiplicity` identical cells.
#[derive(Clone, Debug)]
pub struct MeshCell {
    /// Root values of the cell mean.
    pub values: Vec<RootValue>,
    /// Curvature mass `int R / (4 pi) dmu` of the whole group.
    pub curvature_mass: f64,
    pub multiplicity: f64,
}

/// The `n`-th refinement of a mesh, reduced to cell means.
#[derive(Clone, Debug)]
pub struct RegularizationMesh {
    n: usize,
    positive_roots: usize,
    cells: Vec<MeshCell>,
    total_cells: f64,
}

/// Exponent cap for stepped refinements: `4^(n+1)` cells per face.
pub const MAX_STEP_LEVEL: usize = 24;

impl RegularizationMesh {
    /// Stepped field on a diagram whose faces are geodesically bounded, so
    /// the curvature mass of face `Y` is `chi(Y)`.
    pub fn stepped(rs: &RootSystem, field: &SteppedField, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_STEP_LEVEL {
            return Err(Error::Overflow(format!(
                "refinement level {n} outside 1..={MAX_STEP_LEVEL}"
            )));
        }
        let per_face = 4f64.powi(n as i32 + 1);
        let values = field.root_values(rs)?;
        let cells: Vec<MeshCell> = field
            .diagram()
            .faces()
            .iter()
            .zip(values)
            .map(|(f, values)| MeshCell {
                values,
                curvature_mass: f.chi as f64,
                multiplicity: per_face,
            })
            .collect();
        let total_cells = per_face * cells.len() as f64;
        Ok(Self {
            n,
            positive_roots: rs.positive_roots().len(),
            cells,
            total_cells,
        })
    }

    /// A sampled field on a quadrature grid, split into `2^n x 2^(n+1)`
    /// latitude-longitude blocks (capped at the grid resolution).
    pub fn sampled<F>(
        rs: &RootSystem,
        field: F,
        metric: &SphereMetricSample,
        n: usize,
    ) -> Result<Self>
    where
        F: Fn(&SpherePoint) -> Vec<f64>,
    {
        if n == 0 {
            return Err(Error::Overflow("refinement level starts at 1".into()));
        }
        let (n_lat, n_lon) = metric.shape();
        let bands = (1usize << n.min(30)).min(n_lat);
        let sectors = (1usize << (n + 1).min(31)).min(n_lon);
        let dim = rs.ambient_dim();
        let mut sums = vec![(vec![0.0; dim], 0.0, 0.0); bands * sectors];
        for (idx, p) in metric.points().iter().enumerate() {
            let (i, j) = (idx / n_lon, idx % n_lon);
            let cell = (i * bands / n_lat) * sectors + j * sectors / n_lon;
            let b = field(p);
            if b.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: b.len(),
                });
            }
            let w = metric.weights()[idx];
            let entry = &mut sums[cell];
            for (acc, x) in entry.0.iter_mut().zip(&b) {
                *acc += w * x;
            }
            entry.1 += w;
            entry.2 += w * metric.curvature()[idx] / (4.0 * PI);
        }
        let cells: Vec<MeshCell> = sums
            .into_iter()
            .map(|(s, w, mass)| {
                let mean: Vec<f64> = s.iter().map(|x| x / w).collect();
                MeshCell {
                    values: root_values_f64(rs, &mean),
                    curvature_mass: mass,
                    multiplicity: 1.0,
                }
            })
            .collect();
        let total_cells = cells.len() as f64;
        Ok(Self {
            n,
            positive_roots: rs.positive_roots().len(),
            cells,
            total_cells,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[MeshCell] {
        &self.cells
    }

    /// `N_n`, the number of 2-cells.
    pub fn total_cells(&self) -> f64 {
        self.total_cells
    }

    /// The trigonometric indicator tuned to this mesh: tolerance
    /// `1 / (4 |R+| N_n^2)`, floored at [`EPS_FLOOR`].
    pub fn trig_indicator(&self) -> TrigIndicator {
        let r = self.positive_roots.max(1) as f64;
        TrigIndicator::new(self.n, 1.0 / (4.0 * r * self.total_cells * self.total_cells))
    }
}

/// `prod_F prod_alpha pbar_n(alpha(B(F)))`.
pub fn regularized_indicator(mesh: &RegularizationMesh) -> f64 {
    regularized_indicator_with(mesh, &mesh.trig_indicator())
}

pub fn regularized_indicator_with(mesh: &RegularizationMesh, p: &TrigIndicator) -> f64 {
    let mut acc = 1.0;
    for cell in mesh.cells() {
        let f: f64 = cell.values.iter().map(|v| p.p_bar(v)).product();
        if f == 0.0 {
            return 0.0;
        }
        acc *= f.powf(cell.multiplicity);
    }
    acc
}

/// `prod_alpha exp_n( sum_F log_n(2 sin(pi alpha(B(F)))) * mass(F) )`.
pub fn det_rig_n(mesh: &RegularizationMesh) -> Complex64 {
    det_rig_n_with(mesh, &LogPolynomial::new(mesh.n))
}

pub fn det_rig_n_with(mesh: &RegularizationMesh, log_n: &LogPolynomial) -> Complex64 {
    let mut integrals = vec![Complex64::new(0.0, 0.0); mesh.positive_roots];
    for cell in mesh.cells() {
        for (acc, v) in integrals.iter_mut().zip(&cell.values) {
            *acc += log_n.eval(2.0 * v.sin_pi()) * cell.curvature_mass;
        }
    }
    integrals.iter().map(|i| exp_taylor(mesh.n, *i)).product()
}

/// Shared cache of the regularization data for a range of `n`.
#[derive(Clone, Debug, Default)]
pub struct RegularizationCache {
    logs: Vec<Arc<LogPolynomial>>,
}

impl RegularizationCache {
    pub fn log(&mut self, n: usize) -> Arc<LogPolynomial> {
        while self.logs.len() < n {
            let k = self.logs.len() + 1;
            self.logs.push(Arc::new(LogPolynomial::new(k)));
        }
        Arc::clone(&self.logs[n - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::det::{det_rig_constant, det_rig_step};
    use crate::lie::TorusVector;
    use crate::shadow::{Circle, ShadowDiagram, Side};
    use crate::{Weight, Q};

    #[test]
    fn bump_shape() {
        for n in [1, 3, 8] {
            assert_eq!(bump(n, 0.0), 0.0);
            assert_eq!(bump(n, 2.0), 0.0);
            assert_eq!(bump(n, 0.5), 1.0);
            assert_eq!(bump(n, 1.0 + BUMP_WIDTH / n as f64 + 1e-9), 1.0);
            assert!(bump(n, 0.5 * BUMP_WIDTH / n as f64) > 0.0);
        }
    }

    #[test]
    fn trig_indicator_approximates_bump() {
        for n in [1, 2, 5] {
            let p = TrigIndicator::new(n, 1e-10);
            for i in 0..2000 {
                let x = i as f64 / 2000.0 - 0.3;
                let err = (p.p_bar(&RootValue::Approx(x)) - bump(n, x)).abs();
                assert!(err < 2e-10, "n={n} x={x} err={err}");
            }
            assert_eq!(p.p_bar(&RootValue::Approx(3.0)), 0.0);
            assert_eq!(p.p_bar(&RootValue::Exact(Q::from_integer(-2))), 0.0);
        }
    }

    #[test]
    fn log_polynomial_converges_on_compact_sets() {
        let mut prev = f64::INFINITY;
        for n in [2, 4, 8, 12] {
            let l = LogPolynomial::new(n);
            let mut worst: f64 = 0.0;
            for i in 0..=400 {
                let t = 0.25 + 1.75 * i as f64 / 400.0;
                for x in [t, -t] {
                    let exact = Complex64::new(x.abs().ln(), if x < 0.0 { PI } else { 0.0 });
                    worst = worst.max((l.eval(x) - exact).norm());
                }
            }
            assert!(worst <= prev * 1.0001 + 1e-12, "n={n}: {worst} > {prev}");
            prev = worst;
        }
        assert!(prev < 1e-8, "{prev}");
    }

    #[test]
    fn exp_taylor_matches_exp() {
        let z = Complex64::new(1.2, 0.7);
        assert!((exp_taylor(30, z) - z.exp()).norm() < 1e-14);
        assert_eq!(exp_taylor(0, z), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn stepped_det_converges_to_closed_form() {
        let a1 = RootSystem::from_label("A1").unwrap();
        let d = ShadowDiagram::new(vec![Circle {
            id: "c".into(),
            parent: None,
            winding: 0,
            positive_side: Side::Inside,
            color: Weight(vec![0]),
        }])
        .unwrap();
        let vals = [Q::new(1, 2), Q::new(3, 2)];
        let field = SteppedField::new(
            d,
            vals.iter()
                .map(|v| a1.torus_from_simple_root_values(&[*v]).unwrap())
                .collect(),
        )
        .unwrap();
        let exact = det_rig_step(&a1, &field).unwrap();
        assert_eq!(exact, -4.0);
        let mesh = RegularizationMesh::stepped(&a1, &field, 14).unwrap();
        let got = det_rig_n(&mesh);
        assert!((got - Complex64::new(exact, 0.0)).norm() < 1e-3, "{got}");
    }

    #[test]
    fn sampled_constant_field() {
        let a1 = RootSystem::from_label("A1").unwrap();
        let b = a1.torus_from_simple_root_values(&[Q::new(1, 2)]).unwrap();
        let bf = b.to_f64();
        let metric = SphereMetricSample::round(32, 64);
        let mesh = RegularizationMesh::sampled(&a1, |_| bf.clone(), &metric, 3).unwrap();
        assert_eq!(mesh.cells().len(), 8 * 16);
        let mass: f64 = mesh.cells().iter().map(|c| c.curvature_mass).sum();
        assert!((mass - 2.0).abs() < 1e-12);
        let target = det_rig_constant(&a1, &b, 2).unwrap();
        let got = det_rig_n(&RegularizationMesh::sampled(&a1, |_| bf.clone(), &metric, 12).unwrap());
        assert!((got.re - target).abs() < 1e-3 && got.im.abs() < 1e-3, "{got}");
        assert!(regularized_indicator(&mesh) > 0.999);
        let zero = RegularizationMesh::sampled(&a1, |_| TorusVector::zeros(2).to_f64(), &metric, 2)
            .unwrap();
        assert_eq!(regularized_indicator(&zero), 0.0);
    }
}
