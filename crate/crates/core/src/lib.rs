//! Weak-shock regular reflection and diffraction by a wedge in a covolume
//! (van der Waals) gas.
//!
//! The crate is organised from the thermodynamics outwards: [`thermo`] fixes
//! the closure, [`shock_relations`] and [`regular_reflection`] treat the
//! exact jump conditions at the reflection point, and the remaining modules
//! build the small-strength asymptotic picture of the diffracted field.
// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod inner_singular;
pub mod linear_acoustics;
pub mod nonlinear_front;
pub mod regular_reflection;
pub mod shock_relations;
pub mod thermo;

pub use error::{Error, Result};
pub use thermo::{GasModel, ReferenceState, ThermoState};

/// Arctangent of `num / den` on the branch `[0, pi]`.
///
/// A zero numerator maps to `0` when `den > 0` and to `pi` otherwise.
pub fn atan_pi(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        return if den > 0.0 { 0.0 } else { std::f64::consts::PI };
    }
    let a = num.atan2(den);
    if a < 0.0 {
        a + std::f64::consts::PI
    } else {
        a
    }
}
