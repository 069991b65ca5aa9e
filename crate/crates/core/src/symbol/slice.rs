use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Coord, DiskPoly, Symbol};
use crate::bergman::ProductDomain;
use crate::error::{Error, Result};
use crate::exact::{c_real, norm_sq, pow_c, to_c64, CRational, Rational, Unimodular};

/// Affine analytic disk in the boundary of a product domain.
///
/// For the `Z` family, `F(xi) = (center + scale * xi, r2 * e^{i theta})`;
/// the `W` family is the mirror image. The fixed coordinate is kept as an
/// exact unimodular constant so restrictions stay exact.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskSlice {
    family: Coord,
    boundary_angle: f64,
    boundary_point: Unimodular,
    center: CRational,
    scale: CRational,
    varying_radius: Rational,
    fixed_radius: Rational,
}

/// Float description of a slice, as reported by the bound searches.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceParams {
    pub family: Coord,
    pub theta: f64,
    pub center: Complex64,
    pub scale: Complex64,
}

impl DiskSlice {
    pub fn new(
        dom: &ProductDomain,
        family: Coord,
        boundary_angle: f64,
        center: CRational,
        scale: CRational,
    ) -> Result<Self> {
        let boundary_point = Unimodular::from_angle(boundary_angle)?;
        Self::with_point(dom, family, boundary_angle, boundary_point, center, scale)
    }

    pub fn with_point(
        dom: &ProductDomain,
        family: Coord,
        boundary_angle: f64,
        boundary_point: Unimodular,
        center: CRational,
        scale: CRational,
    ) -> Result<Self> {
        let varying_radius = dom.radius(family).clone();
        let fixed_radius = dom.radius(family.other()).clone();
        if scale.is_zero() {
            return Err(Error::InvalidSlice("scale must be nonzero".into()));
        }
        if !contained(&center, &scale, &varying_radius) {
            return Err(Error::InvalidSlice(format!(
                "|center| + |scale| = {:.6} exceeds radius {:.6}",
                to_c64(&center).norm() + to_c64(&scale).norm(),
                crate::exact::rat_to_f64(&varying_radius)
            )));
        }
        Ok(DiskSlice { family, boundary_angle, boundary_point, center, scale, varying_radius, fixed_radius })
    }

    pub fn from_params(dom: &ProductDomain, p: &SliceParams) -> Result<Self> {
        Self::new(dom, p.family, p.theta, crate::exact::c_from_c64(p.center)?, crate::exact::c_from_c64(p.scale)?)
    }

    pub fn family(&self) -> Coord {
        self.family
    }

    pub fn boundary_angle(&self) -> f64 {
        self.boundary_angle
    }

    pub fn boundary_point(&self) -> &Unimodular {
        &self.boundary_point
    }

    pub fn center(&self) -> &CRational {
        &self.center
    }

    pub fn scale(&self) -> &CRational {
        &self.scale
    }

    /// The frozen coordinate `r * e^{i theta}` as a floating value.
    pub fn fixed_value(&self) -> Complex64 {
        self.boundary_point.to_c64() * crate::exact::rat_to_f64(&self.fixed_radius)
    }

    /// `F(xi)` as a point of C^2.
    pub fn point(&self, xi: Complex64) -> (Complex64, Complex64) {
        let v = to_c64(&self.center) + to_c64(&self.scale) * xi;
        let f = self.fixed_value();
        match self.family {
            Coord::Z => (v, f),
            Coord::W => (f, v),
        }
    }

    pub fn params(&self) -> SliceParams {
        SliceParams {
            family: self.family,
            theta: self.boundary_angle,
            center: to_c64(&self.center),
            scale: to_c64(&self.scale),
        }
    }
}

/// `|a| + |c| <= r`, decided exactly by squaring twice.
fn contained(a: &CRational, c: &CRational, r: &Rational) -> bool {
    let aa = norm_sq(a);
    let cc = norm_sq(c);
    let rr = r * r;
    if cc > rr {
        return false;
    }
    let rhs = &rr + &cc - &aa;
    if rhs < Rational::zero() {
        return false;
    }
    Rational::from_integer(4.into()) * &rr * &cc <= &rhs * &rhs
}

/// `phi o F` and its `xi-bar` derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct Restriction {
    pub poly: DiskPoly,
    pub dbar: DiskPoly,
}

pub fn restrict(s: &Symbol, slice: &DiskSlice) -> Restriction {
    let (vs, vbs) = slice.family.slots();
    let (fs, fbs) = slice.family.other().slots();
    let v = &DiskPoly::constant(slice.center.clone()) + &DiskPoly::monomial(1, 0, slice.scale.clone());
    let vb = &DiskPoly::constant(slice.center.conj()) + &DiskPoly::monomial(0, 1, slice.scale.conj());
    let fixed = slice.boundary_point.value() * c_real(slice.fixed_radius.clone());
    let fixed_bar = fixed.conj();

    let max = s.terms().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
    let powers = |base: &DiskPoly| {
        let mut out = vec![DiskPoly::constant(crate::exact::c_one())];
        for k in 1..=max {
            let next = &out[k - 1] * base;
            out.push(next);
        }
        out
    };
    let vp = powers(&v);
    let vbp = powers(&vb);

    let mut poly = DiskPoly::zero();
    for (e, c) in s.terms() {
        let k = c * pow_c(&fixed, e[fs]) * pow_c(&fixed_bar, e[fbs]);
        let term = (&vp[e[vs] as usize] * &vbp[e[vbs] as usize]).scale(&k);
        poly = &poly + &term;
    }
    let dbar = poly.d_xibar();
    Restriction { poly, dbar }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{c_int, c_one, c_zero, rat};

    fn unit() -> ProductDomain {
        ProductDomain::unit_bidisk()
    }

    #[test]
    fn restrict_examples() {
        let f = DiskSlice::new(&unit(), Coord::Z, 0.0, c_zero(), c_one()).unwrap();
        let r = restrict(&Symbol::zbar(), &f);
        assert_eq!(r.poly, DiskPoly::xibar());
        assert_eq!(r.dbar, DiskPoly::constant(c_one()));

        let r = restrict(&Symbol::wbar(), &f);
        assert_eq!(r.poly, DiskPoly::constant(c_one()));
        assert!(r.dbar.is_zero());

        let half = DiskSlice::new(&unit(), Coord::Z, 0.0, c_zero(), c_real(rat(1, 2))).unwrap();
        let zb2 = Symbol::monomial([0, 2, 0, 0], c_one());
        let r = restrict(&zb2, &half);
        assert_eq!(r.poly, DiskPoly::monomial(0, 2, c_real(rat(1, 4))));
        assert_eq!(r.dbar, DiskPoly::monomial(0, 1, c_real(rat(1, 2))));
    }

    #[test]
    fn fixed_coordinate_is_conjugated_boundary_point() {
        let theta = 0.9;
        let f = DiskSlice::new(&unit(), Coord::Z, theta, c_zero(), c_one()).unwrap();
        let r = restrict(&Symbol::wbar(), &f);
        let c = to_c64(r.poly.coefficient(0, 0).unwrap());
        assert!((c - Complex64::from_polar(1.0, -theta)).norm() < 1e-12);
    }

    #[test]
    fn containment_is_enforced() {
        let d = unit();
        assert!(DiskSlice::new(&d, Coord::Z, 0.0, c_real(rat(1, 2)), c_real(rat(1, 2))).is_ok());
        assert!(DiskSlice::new(&d, Coord::Z, 0.0, c_real(rat(1, 2)), c_real(rat(51, 100))).is_err());
        assert!(DiskSlice::new(&d, Coord::W, 0.0, c_zero(), c_zero()).is_err());
        assert!(DiskSlice::new(&d, Coord::Z, 0.0, c_zero(), c_int(2)).is_err());
    }
}
