//! Boundary-disk bounds for the essential norm of a Hankel operator on a
//! product of disks: maximin lower bounds, the upper bound through the
//! `dbar`-Neumann constants, and the ordering check against spectral brackets.

mod search;

use std::f64::consts::{E, PI, SQRT_2};

use num_complex::Complex64;
use serde::Serialize;

use crate::bergman::ProductDomain;
use crate::error::{Error, Result};
use crate::exact::to_c64;
use crate::hankel::EssNormBracket;
use crate::symbol::{require_admissible, restrict, DiskSlice, SliceParams, Symbol};

pub use search::{maximin_search, sup_dbar, Maximin, SearchConfig, UpperArgmax};

/// Default slack for the ordering checks.
pub const SANDWICH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NeumannConstants {
    pub tau: f64,
    pub norm_n: f64,
    pub norm_dbar_n: f64,
    pub norm_dbarstar_n: f64,
}

pub fn neumann_constants(dom: &ProductDomain) -> NeumannConstants {
    let tau = dom.tau();
    NeumannConstants { tau, norm_n: E * tau * tau, norm_dbar_n: E.sqrt() * tau, norm_dbarstar_n: E.sqrt() * tau }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchDiagnostics {
    pub grid_theta: usize,
    pub grid_center: usize,
    pub grid_scale: usize,
    pub grid_inner: [usize; 2],
    pub refine_rounds: usize,
    pub candidates: usize,
    pub evaluated: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub thm1_lower: f64,
    pub thm1_upper: f64,
    /// Defined on the unit bidisk only.
    pub thm2_lower: Option<f64>,
    /// `sup |F'(0)|^2 inf |phi_vbar|` shared by both lower bounds.
    pub maximin: f64,
    pub lower_argmax: Option<SliceParams>,
    pub upper_argmax: Option<UpperArgmax>,
    pub neumann: NeumannConstants,
    pub diagnostics: SearchDiagnostics,
}

pub fn thm1_lower(phi: &Symbol, dom: &ProductDomain, cfg: &SearchConfig) -> Result<(f64, Option<SliceParams>)> {
    require_admissible(phi, dom)?;
    let m = maximin_search(phi, dom, cfg)?;
    Ok((m.value / (SQRT_2 * dom.tau()), m.argmax))
}

pub fn thm1_upper(phi: &Symbol, dom: &ProductDomain, cfg: &SearchConfig) -> Result<(f64, Option<UpperArgmax>)> {
    require_admissible(phi, dom)?;
    let (s, arg) = sup_dbar(phi, dom, cfg)?;
    Ok((neumann_constants(dom).norm_dbarstar_n * s, arg))
}

pub fn thm2_lower(phi: &Symbol, dom: &ProductDomain, cfg: &SearchConfig) -> Result<(f64, Option<SliceParams>)> {
    if !dom.is_unit_bidisk() {
        return Err(Error::NotUnitBidisk);
    }
    require_admissible(phi, dom)?;
    let m = maximin_search(phi, dom, cfg)?;
    Ok((m.value / SQRT_2, m.argmax))
}

/// All bounds from one maximin search.
pub fn evaluate_bounds(phi: &Symbol, dom: &ProductDomain, cfg: &SearchConfig) -> Result<BoundReport> {
    require_admissible(phi, dom)?;
    let m = maximin_search(phi, dom, cfg)?;
    let (s, upper_argmax) = sup_dbar(phi, dom, cfg)?;
    let neumann = neumann_constants(dom);
    Ok(BoundReport {
        thm1_lower: m.value / (SQRT_2 * neumann.tau),
        thm1_upper: neumann.norm_dbarstar_n * s,
        thm2_lower: dom.is_unit_bidisk().then(|| m.value / SQRT_2),
        maximin: m.value,
        lower_argmax: m.argmax,
        upper_argmax,
        neumann,
        diagnostics: SearchDiagnostics {
            grid_theta: cfg.grid_theta,
            grid_center: cfg.grid_center,
            grid_scale: cfg.grid_scale,
            grid_inner: cfg.grid_inner,
            refine_rounds: cfg.refine_rounds,
            candidates: m.candidates,
            evaluated: m.evaluated,
        },
    })
}

/// `(V(D) inf_D |phi_vbar|, pi |F'(0)| inf |(phi o F)_xibar|)` for the image
/// `D` of `slice`; both infima use the same disk grid, one evaluated on `D`
/// directly and one through the restricted polynomial.
pub fn vd_identity_check(phi: &Symbol, slice: &DiskSlice, cfg: &SearchConfig) -> (f64, f64) {
    let c = to_c64(slice.scale()).norm();
    let dbar = phi.dbar(slice.family()).to_float();
    let never = |_: f64| false;
    let origin = Complex64::new(0.0, 0.0);
    let grid = search::InnerGrid::new(cfg.grid_inner);
    let lhs_inf = grid
        .inf(
            |xi| {
                let (z, w) = slice.point(xi);
                dbar.eval(z, w).norm()
            },
            origin,
            1.0,
            cfg.refine_rounds,
            &never,
        )
        .map_or(0.0, |r| r.0);
    let restricted = restrict(phi, slice).dbar.to_float();
    let rhs_inf =
        grid.inf(|xi| restricted.eval(xi).norm(), origin, 1.0, cfg.refine_rounds, &never).map_or(0.0, |r| r.0);
    (PI * c * c * lhs_inf, PI * c * rhs_inf)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichRow {
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichReport {
    pub thm1_lower: f64,
    pub thm2_lower: Option<f64>,
    pub lower_est: f64,
    pub upper_est: f64,
    pub thm1_upper: f64,
    pub tol: f64,
    pub rows: Vec<SandwichRow>,
    pub pass: bool,
}

/// `thm1_lower <= thm2_lower <= lower_est + tol` and `upper_est <= thm1_upper + tol`.
pub fn sandwich_check(bounds: &BoundReport, bracket: &EssNormBracket, tol: f64) -> SandwichReport {
    let mut rows = Vec::new();
    let mut push = |relation: &str, lhs: f64, rhs: f64, slack: f64| {
        rows.push(SandwichRow { relation: relation.into(), lhs, rhs, pass: lhs <= rhs + slack });
    };
    match bounds.thm2_lower {
        Some(t2) => {
            push("thm1_lower <= thm2_lower", bounds.thm1_lower, t2, 0.0);
            push("thm2_lower <= lower_est", t2, bracket.lower_est, tol);
        }
        None => push("thm1_lower <= lower_est", bounds.thm1_lower, bracket.lower_est, tol),
    }
    push("upper_est <= thm1_upper", bracket.upper_est, bounds.thm1_upper, tol);
    let pass = rows.iter().all(|r| r.pass);
    SandwichReport {
        thm1_lower: bounds.thm1_lower,
        thm2_lower: bounds.thm2_lower,
        lower_est: bracket.lower_est,
        upper_est: bracket.upper_est,
        thm1_upper: bounds.thm1_upper,
        tol,
        rows,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{c_real, c_zero, rat};
    use crate::symbol::Coord;

    #[test]
    fn neumann_examples() {
        let n = neumann_constants(&ProductDomain::unit_bidisk());
        assert!((n.norm_n - 8.0 * E).abs() < 1e-12);
        assert!((n.norm_dbarstar_n - 4.663287).abs() < 1e-6);
        let big = neumann_constants(&ProductDomain::from_f64(2.0, 2.0).unwrap());
        assert!((big.norm_n - 4.0 * n.norm_n).abs() < 1e-12);
        assert!((big.norm_dbar_n - 2.0 * n.norm_dbar_n).abs() < 1e-12);
        assert_eq!(n, neumann_constants(&ProductDomain::unit_bidisk()));
    }

    #[test]
    fn zbar_bounds() {
        let r = evaluate_bounds(&Symbol::zbar(), &ProductDomain::unit_bidisk(), &SearchConfig::default()).unwrap();
        assert!((r.thm1_lower - 0.25).abs() < 1e-12);
        assert!((r.thm2_lower.unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((r.thm1_upper - E.sqrt() * 2.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn gate_and_domain_errors() {
        let d = ProductDomain::unit_bidisk();
        let bad = &Symbol::z() * &Symbol::zbar();
        assert!(thm1_lower(&bad, &d, &SearchConfig::default()).is_err());
        let d2 = ProductDomain::from_f64(1.0, 2.0).unwrap();
        assert!(matches!(thm2_lower(&Symbol::zbar(), &d2, &SearchConfig::default()), Err(Error::NotUnitBidisk)));
    }

    #[test]
    fn vd_identity_example() {
        let d = ProductDomain::unit_bidisk();
        let s = DiskSlice::new(&d, Coord::Z, 0.0, c_zero(), c_real(rat(1, 2))).unwrap();
        let (l, r) = vd_identity_check(&Symbol::zbar(), &s, &SearchConfig::default());
        assert!((l - PI * 0.25).abs() < 1e-14);
        assert!((r - PI * 0.25).abs() < 1e-14);
        let (l, r) = vd_identity_check(&Symbol::z(), &s, &SearchConfig::default());
        assert_eq!((l, r), (0.0, 0.0));
    }
}
