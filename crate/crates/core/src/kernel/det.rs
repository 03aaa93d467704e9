//! Sine-product determinants on the maximal torus and their step-field version.

use std::f64::consts::PI;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{q, q_to_f64, RootSystem, TorusVector, Q};
use crate::shadow::ShadowDiagram;

/// A root value `alpha(b)`, exact when `b` is rational.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootValue {
    Exact(Q),
    Approx(f64),
}

impl RootValue {
    pub fn is_integer(&self) -> bool {
        match self {
            RootValue::Exact(x) => x.is_integer(),
            RootValue::Approx(x) => x.fract() == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RootValue::Exact(x) => q_to_f64(*x),
            RootValue::Approx(x) => *x,
        }
    }

    /// `sin(pi x)`, exactly zero on integers and exactly `+-1` on half-integers.
    pub fn sin_pi(&self) -> f64 {
        let r = match self {
            RootValue::Exact(x) => {
                let two = q(2);
                let r = *x - (*x / two).floor() * two;
                if r.is_zero() || r == q(1) {
                    return 0.0;
                }
                if r == Q::new(1, 2) {
                    return 1.0;
                }
                if r == Q::new(3, 2) {
                    return -1.0;
                }
                q_to_f64(r)
            }
            RootValue::Approx(x) => {
                let r = x.rem_euclid(2.0);
                if r == 0.0 || r == 1.0 {
                    return 0.0;
                }
                r
            }
        };
        (PI * r).sin()
    }
}

/// Values of every positive root on `b`, exactly.
pub fn root_values(rs: &RootSystem, b: &TorusVector) -> Result<Vec<RootValue>> {
    Ok(rs.root_values(b)?.into_iter().map(RootValue::Exact).collect())
}

/// Values of every positive root on ambient floating coordinates.
pub fn root_values_f64(rs: &RootSystem, b: &[f64]) -> Vec<RootValue> {
    rs.root_values_f64(b).into_iter().map(RootValue::Approx).collect()
}

/// `prod_{alpha > 0} 4 sin^2(pi alpha(b))`.
pub fn det_k_of(values: &[RootValue]) -> f64 {
    values
        .iter()
        .map(|v| {
            let s = v.sin_pi();
            4.0 * s * s
        })
        .product()
}

/// `prod_{alpha > 0} 2 sin(pi alpha(b))`, sign retained.
pub fn det_half_of(values: &[RootValue]) -> f64 {
    values.iter().map(|v| 2.0 * v.sin_pi()).product()
}

pub fn det_k(rs: &RootSystem, b: &TorusVector) -> Result<f64> {
    Ok(det_k_of(&root_values(rs, b)?))
}

pub fn det_half(rs: &RootSystem, b: &TorusVector) -> Result<f64> {
    Ok(det_half_of(&root_values(rs, b)?))
}

fn require_regular(values: &[RootValue], what: &str) -> Result<()> {
    if let Some(v) = values.iter().find(|v| v.is_integer()) {
        return Err(Error::Singular(format!(
            "{what}: a positive root takes the integer value {}",
            v.to_f64()
        )));
    }
    Ok(())
}

/// `det_k(b)^(chi / 2)` for regular `b`.
pub fn det_rig_constant(rs: &RootSystem, b: &TorusVector, chi: i64) -> Result<f64> {
    let values = root_values(rs, b)?;
    require_regular(&values, "constant field")?;
    let d = det_k_of(&values);
    Ok(if chi % 2 == 0 {
        d.powi((chi / 2) as i32)
    } else {
        d.powf(chi as f64 / 2.0)
    })
}

/// A torus-valued field that is constant on each face of a diagram.
#[derive(Clone, Debug)]
pub struct SteppedField {
    diagram: ShadowDiagram,
    values: Vec<TorusVector>,
}

impl SteppedField {
    pub fn new(diagram: ShadowDiagram, values: Vec<TorusVector>) -> Result<Self> {
        if values.len() != diagram.faces().len() {
            return Err(Error::DimensionMismatch {
                expected: diagram.faces().len(),
                found: values.len(),
            });
        }
        Ok(Self { diagram, values })
    }

    /// The constant field on the bare sphere.
    pub fn constant(b: TorusVector) -> Self {
        Self {
            diagram: ShadowDiagram::empty(),
            values: vec![b],
        }
    }

    pub fn diagram(&self) -> &ShadowDiagram {
        &self.diagram
    }

    pub fn values(&self) -> &[TorusVector] {
        &self.values
    }

    /// Per-face root values, each checked against the ambient dimension.
    pub fn root_values(&self, rs: &RootSystem) -> Result<Vec<Vec<RootValue>>> {
        self.values.iter().map(|b| root_values(rs, b)).collect()
    }
}

/// `prod_i det_half(b_i)^chi(Y_i)` over the faces of a stepped field.
pub fn det_rig_step(rs: &RootSystem, field: &SteppedField) -> Result<f64> {
    let mut acc = 1.0;
    for (face, values) in field.diagram.faces().iter().zip(field.root_values(rs)?) {
        require_regular(&values, &format!("face {}", face.id))?;
        acc *= det_half_of(&values).powi(face.chi as i32);
    }
    Ok(acc)
}
