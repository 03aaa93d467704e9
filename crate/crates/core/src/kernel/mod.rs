//! Finite-dimensional analytic kernels of the torus-gauge formula.
//!
//! * [`det`]: sine-product determinants and their stepped-field form.
//! * [`metric`]: sphere quadrature and the quadrature determinant.
//! * [`regularize`]: the regularized indicator and determinant sequences.
//! * [`circle`]: the inverse of `d/dt + ad(b)` on truncated Fourier series.
//! * [`holonomy`]: ordered-product holonomies and ribbon Wilson loops.

pub mod circle;
pub mod det;
pub mod holonomy;
pub mod metric;
pub mod regularize;

pub use circle::{CircleOperatorData, TruncatedSeries};
pub use det::{det_half, det_k, det_rig_constant, det_rig_step, RootValue, SteppedField};
pub use metric::{det_rig_quadrature, SphereMetricSample, SpherePoint};
pub use regularize::{det_rig_n, regularized_indicator, RegularizationMesh};
