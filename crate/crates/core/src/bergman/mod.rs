//! Bergman space of a product of two disks: domain data, the orthonormal
//! monomial basis, exact moments and inner products, kernels and quadrature.

mod kernel;
mod lemma1;
mod quadrature;

use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{c_real, pow_rat, rat_from_f64, rat_to_f64, CRational, PiScaled, Rational};
use crate::symbol::{Coord, Symbol};

pub use kernel::{bergman_kernel, kernel_degree_for_tail, normalized_kernel_coeffs, KernelCoeffs};
pub use lemma1::{lemma1_check, Lemma1Values};
pub use quadrature::{gauss_legendre, quad_integrate, QuadRule, Region};

/// Product of the disks `|z| < r1` and `|w| < r2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDomain {
    r1: Rational,
    r2: Rational,
}

impl ProductDomain {
    pub fn new(r1: Rational, r2: Rational) -> Result<Self> {
        if !r1.is_positive() || !r2.is_positive() {
            return Err(Error::InvalidParameter("disk radii must be positive".into()));
        }
        Ok(ProductDomain { r1, r2 })
    }

    pub fn from_f64(r1: f64, r2: f64) -> Result<Self> {
        Self::new(rat_from_f64(r1)?, rat_from_f64(r2)?)
    }

    pub fn unit_bidisk() -> Self {
        ProductDomain { r1: Rational::one(), r2: Rational::one() }
    }

    pub fn r1(&self) -> &Rational {
        &self.r1
    }

    pub fn r2(&self) -> &Rational {
        &self.r2
    }

    pub fn radius(&self, coord: Coord) -> &Rational {
        match coord {
            Coord::Z => &self.r1,
            Coord::W => &self.r2,
        }
    }

    pub fn radius_f64(&self, coord: Coord) -> f64 {
        rat_to_f64(self.radius(coord))
    }

    pub fn is_unit_bidisk(&self) -> bool {
        self.r1.is_one() && self.r2.is_one()
    }

    /// Diameter `2 sqrt(r1^2 + r2^2)`, the distance between opposite corners
    /// of the distinguished boundary.
    pub fn tau(&self) -> f64 {
        let (a, b) = (rat_to_f64(&self.r1), rat_to_f64(&self.r2));
        2.0 * (a * a + b * b).sqrt()
    }

    pub fn volume(&self) -> f64 {
        let (a, b) = (rat_to_f64(&self.r1), rat_to_f64(&self.r2));
        PI * a * a * PI * b * b
    }

    pub fn contains(&self, z: num_complex::Complex64, w: num_complex::Complex64) -> bool {
        z.norm() < rat_to_f64(&self.r1) && w.norm() < rat_to_f64(&self.r2)
    }

    /// `phi(r1 z, r2 w)`: Hankel operators of `phi` here and of the dilated
    /// symbol on the unit bidisk have identical matrices in the orthonormal
    /// monomial bases.
    pub fn to_unit(&self, phi: &Symbol) -> Symbol {
        phi.dilate(&self.r1, &self.r2)
    }
}

/// Orthonormal basis element `e_{mn} = c_m c_n z^m w^n`,
/// `c_m = sqrt((m + 1) / (pi r1^{2m+2}))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisIndex {
    pub m: u32,
    pub n: u32,
}

impl BasisIndex {
    pub fn new(m: u32, n: u32) -> Self {
        BasisIndex { m, n }
    }

    pub fn degree(&self) -> u32 {
        self.m + self.n
    }

    /// Graded order: total degree first, then `m`.
    pub fn graded_key(&self) -> (u32, u32) {
        (self.m + self.n, self.m)
    }

    /// `(m + 1)(n + 1)`: `e_{mn} = sqrt(weight) / pi * z^m w^n` on the unit bidisk.
    pub fn weight(&self) -> u64 {
        (self.m as u64 + 1) * (self.n as u64 + 1)
    }

    /// Monomial `z^m w^n` scaled to unit norm on `dom`, as a symbol when the
    /// normalization is rational, else via `norm_constant`.
    pub fn norm_constant(&self, dom: &ProductDomain) -> f64 {
        let cm = ((self.m as f64 + 1.0) / (PI * rat_to_f64(dom.r1()).powi(2 * self.m as i32 + 2))).sqrt();
        let cn = ((self.n as f64 + 1.0) / (PI * rat_to_f64(dom.r2()).powi(2 * self.n as i32 + 2))).sqrt();
        cm * cn
    }

    pub fn eval(
        &self,
        dom: &ProductDomain,
        z: num_complex::Complex64,
        w: num_complex::Complex64,
    ) -> num_complex::Complex64 {
        z.powu(self.m) * w.powu(self.n) * self.norm_constant(dom)
    }
}

/// `int_{|z| < radius} z^a conj(z)^b dV`, exact as a multiple of pi.
pub fn moment(a: u32, b: u32, radius: &Rational) -> PiScaled {
    if a != b {
        return PiScaled::zero(1);
    }
    let v = pow_rat(radius, 2 * a + 2) / Rational::from_integer((a + 1).into());
    PiScaled { coeff: c_real(v), power: 1 }
}

/// `<f, g> = int f conj(g) dV` over the product domain, exact as a multiple of pi^2.
pub fn inner_product(f: &Symbol, g: &Symbol, dom: &ProductDomain) -> PiScaled {
    let mut acc = CRational::zero();
    for (ef, cf) in f.terms() {
        for (eg, cg) in g.terms() {
            // z^{a+b'} conj(z)^{b+a'} and the same in w
            let mz = moment(ef[0] + eg[1], ef[1] + eg[0], dom.r1());
            if mz.coeff.is_zero() {
                continue;
            }
            let mw = moment(ef[2] + eg[3], ef[3] + eg[2], dom.r2());
            acc += cf * cg.conj() * mz.coeff * mw.coeff;
        }
    }
    PiScaled { coeff: acc, power: 2 }
}
