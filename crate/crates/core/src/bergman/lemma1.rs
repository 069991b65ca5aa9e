use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, PiScaled, Rational};
use crate::symbol::DiskPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Values {
    #[serde(serialize_with = "pi_scaled_f64")]
    pub d_xi: PiScaled,
    #[serde(serialize_with = "pi_scaled_f64")]
    pub d_xibar: PiScaled,
}

fn pi_scaled_f64<S: serde::Serializer>(v: &PiScaled, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(v.to_f64())
}

/// Exact `(||gamma_xi||^2, ||gamma_xibar||^2)` over `|xi| < radius` for a
/// polynomial vanishing on the boundary circle.
pub fn lemma1_check(gamma: &DiskPoly, radius: &Rational) -> Result<Lemma1Values> {
    if !gamma.circle_residual(radius).is_empty() {
        return Err(Error::NotVanishing(rat_to_f64(radius)));
    }
    Ok(Lemma1Values { d_xi: gamma.d_xi().norm_sq(radius), d_xibar: gamma.d_xibar().norm_sq(radius) })
}
