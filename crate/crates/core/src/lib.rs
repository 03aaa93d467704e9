//! Turaev shadow invariants of colored links in `S^2 x S^1` together with the
//! finite-dimensional kernels of the torus-gauge Chern-Simons formula.
//!
//! The crate is organized bottom-up:
//!
//! * [`lie`]: root systems, the normalized invariant form, Weyl orbits.
//! * [`rep`]: weight multiplicities, dimensions, characters, level alphabets.
//! * [`fusion`]: quantum dimensions and fusion coefficients, with a Verlinde
//!   cross-check.
//! * [`shadow`]: circle diagrams on the sphere and the shadow state sum.
//! * [`kernel`]: regularized determinants, their regularization sequences,
//!   the circle-operator inverse, and holonomies.

pub mod error;
pub mod lie;
pub mod fusion;
pub mod kernel;
pub mod rep;
pub mod shadow;
pub mod sum;

pub use error::{Error, Result};
pub use lie::{Family, Q, Root, RootSystem, TorusVector, TypeLabel, Weight};
pub use fusion::{FusionTable, QuantumWeylGroup, VerlindeOracle};
pub use rep::{LevelAlphabet, WeightSystem};
pub use shadow::{LinkDescription, ShadowDiagram, StateSumOptions, StateSumResult};
