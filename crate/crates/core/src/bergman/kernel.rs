use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::ProductDomain;
use crate::error::{Error, Result};
use crate::symbol::Coord;

/// Default bound on the discarded kernel mass.
pub const KERNEL_TAIL_TOL: f64 = 1e-8;

/// `K((z1, w1), (z2, w2))`, the product of the one-disk kernels
/// `r^2 / (pi (r^2 - z conj(q))^2)`.
pub fn bergman_kernel(dom: &ProductDomain, p: (Complex64, Complex64), q: (Complex64, Complex64)) -> Result<Complex64> {
    for pt in [p, q] {
        if !dom.contains(pt.0, pt.1) {
            return Err(Error::OutsideDomain(format!("({}, {})", pt.0, pt.1)));
        }
    }
    let one = |r: f64, a: Complex64, b: Complex64| {
        let r2 = r * r;
        let d = Complex64::new(r2, 0.0) - a * b.conj();
        r2 / (PI * d * d)
    };
    Ok(one(dom.radius_f64(Coord::Z), p.0, q.0) * one(dom.radius_f64(Coord::W), p.1, q.1))
}

/// Coefficients of the normalized one-disk kernel `k_p = K(., p) / |K(., p)|`
/// in the orthonormal basis `e_m`, truncated at degree `M`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelCoeffs {
    pub p: Complex64,
    pub coeffs: Vec<Complex64>,
    /// `1 - sum |coeffs|^2`, from the closed form of the discarded series.
    pub tail: f64,
}

impl KernelCoeffs {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `1 - (1 - x)^2 sum_{m <= M} (m + 1) x^m = x^{M+1} ((M + 2) - (M + 1) x)`.
fn tail_mass(x: f64, m: usize) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mf = m as f64;
    x.powf(mf + 1.0) * ((mf + 2.0) - (mf + 1.0) * x)
}

/// Smallest `M` whose discarded mass is below `tol`.
pub fn kernel_degree_for_tail(p_abs: f64, tol: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&p_abs) {
        return Err(Error::KernelCenter(p_abs));
    }
    let x = p_abs * p_abs;
    if x == 0.0 {
        return Ok(0);
    }
    // start from the geometric estimate, then walk to the exact threshold
    let mut m = ((tol.ln() / x.ln()).floor().max(0.0)) as usize;
    while m > 0 && tail_mass(x, m - 1) < tol {
        m -= 1;
    }
    while tail_mass(x, m) >= tol {
        m += 1;
    }
    Ok(m)
}

/// `k_p = (1 - |p|^2) sum_m sqrt(m + 1) conj(p)^m e_m`; `degree = None` picks
/// the smallest degree with tail below the default tolerance.
pub fn normalized_kernel_coeffs(p: Complex64, degree: Option<usize>) -> Result<KernelCoeffs> {
    let p_abs = p.norm();
    if p_abs.is_nan() || p_abs >= 1.0 {
        return Err(Error::KernelCenter(p_abs));
    }
    let m_max = match degree {
        Some(m) => m,
        None => kernel_degree_for_tail(p_abs, KERNEL_TAIL_TOL)?,
    };
    let x = p_abs * p_abs;
    let pb = p.conj();
    let mut pow = Complex64::new(1.0 - x, 0.0);
    let mut coeffs = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        coeffs.push(pow * ((m + 1) as f64).sqrt());
        pow *= pb;
    }
    Ok(KernelCoeffs { p, coeffs, tail: tail_mass(x, m_max) })
}
