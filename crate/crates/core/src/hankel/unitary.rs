use serde::Serialize;

use crate::bergman::ProductDomain;
use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, Unimodular};
use crate::symbol::Symbol;

/// Holomorphic automorphisms of a product of disks that act unitarily by
/// composition: coordinate rotations, and the swap when both radii agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[allow(clippy::large_enum_variant)]
pub enum Transform {
    /// `(z, w) -> (alpha z, beta w)`.
    Rotate(#[serde(serialize_with = "angle")] Unimodular, #[serde(serialize_with = "angle")] Unimodular),
    /// `(z, w) -> (w, z)`.
    Swap,
}

fn angle<S: serde::Serializer>(u: &Unimodular, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(u.angle())
}

/// `phi o F`.
pub fn apply_unitary(phi: &Symbol, t: &Transform, dom: &ProductDomain) -> Result<Symbol> {
    match t {
        Transform::Rotate(a, b) => Ok(phi.compose_diagonal(a.value(), b.value())),
        Transform::Swap => {
            if dom.r1() != dom.r2() {
                return Err(Error::SwapRadii(rat_to_f64(dom.r1()), rat_to_f64(dom.r2())));
            }
            Ok(phi.swap())
        }
    }
}
