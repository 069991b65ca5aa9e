//! Closed-form integral identities behind the boundary-disk bounds, checked
//! by quadrature and exact arithmetic.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bergman::{lemma1_check, quad_integrate, ProductDomain, QuadRule};
use crate::bounds::{vd_identity_check, SearchConfig};
use crate::error::{Error, Result};
use crate::exact::{c_real, c_zero, rat, rat_from_f64, rat_int, PiScaled, Unimodular};
use crate::hankel::{apply_unitary, gram, BasisWindow, Transform};
use crate::symbol::{Coord, DiskPoly, DiskSlice, Symbol};

/// Relative tolerance of every row.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub tau0: f64,
    pub r0: f64,
    pub eps1: f64,
    pub j: Vec<u32>,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Relative change applied to the bump function's coefficient; nonzero
    /// values make the bump rows fail on purpose.
    pub self_test_perturb: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            tau0: 1.0,
            r0: 0.5,
            eps1: 0.1,
            j: vec![1, 2, 3],
            radial_nodes: 32,
            angular_nodes: 64,
            self_test_perturb: 0.0,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tau0.is_nan() || self.tau0 <= 0.0 {
            return Err(Error::InvalidParameter("tau0 must be positive".into()));
        }
        if self.r0.is_nan() || self.r0 <= 0.0 {
            return Err(Error::InvalidParameter("r0 must be positive".into()));
        }
        if self.eps1.is_nan() || self.eps1 <= 0.0 || self.eps1 >= PI {
            return Err(Error::InvalidParameter("eps1 must lie in (0, pi)".into()));
        }
        if self.j.iter().any(|&j| j == 0 || j > 20) {
            return Err(Error::InvalidParameter("j must lie in 1..=20".into()));
        }
        if self.radial_nodes == 0 || self.angular_nodes == 0 {
            return Err(Error::InvalidParameter("node counts must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyRow {
    pub name: String,
    pub closed_form: f64,
    pub computed: f64,
    pub abs_error: f64,
    /// Exact closed form, when both sides were computed exactly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub pass: bool,
}

impl VerifyRow {
    /// Row whose two sides are exact `pi`-multiples; passes on exact equality.
    fn exact(name: impl Into<String>, lhs: &PiScaled, rhs: &PiScaled) -> Self {
        let mut row = VerifyRow::new(name, lhs.to_f64(), rhs.to_f64());
        row.pass = lhs == rhs;
        row.exact = Some(lhs.to_string());
        row
    }

    fn new(name: impl Into<String>, closed_form: f64, computed: f64) -> Self {
        let abs_error = (computed - closed_form).abs();
        let pass = abs_error <= VERIFY_TOL * closed_form.abs().max(1e-300) || abs_error == 0.0;
        VerifyRow { name: name.into(), closed_form, computed, abs_error, exact: None, pass }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub pass: bool,
}

/// `chi(z) = (2 / (pi tau0^2)) (1 - |z|^2 / tau0^2)` scaled by `1 + perturb`.
fn chi(cfg: &VerifyConfig) -> impl Fn(Complex64) -> f64 + '_ {
    move |z| {
        let t2 = cfg.tau0 * cfg.tau0;
        (1.0 + cfg.self_test_perturb) * 2.0 / (PI * t2) * (1.0 - z.norm_sqr() / t2)
    }
}

/// `|chi_z|^2`, with `chi_z = -(2 / (pi tau0^4)) conj(z)` before scaling.
fn chi_z_sq(cfg: &VerifyConfig) -> impl Fn(Complex64) -> f64 + '_ {
    move |z| {
        let c = (1.0 + cfg.self_test_perturb) * 2.0 / (PI * cfg.tau0.powi(4));
        c * c * z.norm_sqr()
    }
}

pub fn alpha(j: u32) -> f64 {
    1.0 - 0.5f64.powi(2 * j as i32 + 1)
}

fn bump_rows(cfg: &VerifyConfig) -> Vec<VerifyRow> {
    let rule = QuadRule::disk(cfg.tau0, cfg.radial_nodes, cfg.angular_nodes);
    let f = chi(cfg);
    let g = chi_z_sq(cfg);
    let integral = quad_integrate(|z| Complex64::new(f(z), 0.0), &rule).re;
    let norm_sq = quad_integrate(|z| Complex64::new(g(z), 0.0), &rule).re;
    let t2 = cfg.tau0 * cfg.tau0;
    vec![
        VerifyRow::new("bump integral", 1.0, integral),
        VerifyRow::new("bump gradient norm^2", 2.0 / (PI * t2 * t2), norm_sq),
        VerifyRow::new("bump ratio tau0^2 sqrt(pi/2)", t2 * (PI / 2.0).sqrt(), integral / norm_sq.sqrt()),
        VerifyRow::new("bump ratio V(D)/sqrt(2 pi)", PI * t2 / (2.0 * PI).sqrt(), integral / norm_sq.sqrt()),
    ]
}

fn wedge_rows(cfg: &VerifyConfig) -> Vec<VerifyRow> {
    cfg.j
        .iter()
        .map(|&j| {
            let a = alpha(j);
            let rule =
                QuadRule::wedge(cfg.r0, cfg.eps1, cfg.radial_nodes, cfg.angular_nodes).with_radial_power(2.0 - 2.0 * a);
            // |f_j|^2 = 4^{-j} r^{-2 alpha}, summed in log form
            let ln_scale = -2.0 * j as f64 * std::f64::consts::LN_2;
            let norm_sq: f64 = rule
                .log_polar_nodes()
                .into_iter()
                .map(|(ln_r, _, ln_w)| (ln_scale - 2.0 * a * ln_r + ln_w).exp())
                .sum();
            let closed = (PI - cfg.eps1).sqrt() * cfg.r0.powf(1.0 - a);
            VerifyRow::new(format!("wedge norm j={j}"), closed, norm_sq.sqrt())
        })
        .collect()
}

fn derivative_rows(cfg: &VerifyConfig) -> Result<Vec<VerifyRow>> {
    let one = rat_int(1);
    let b = DiskPoly::boundary_factor(&one);
    let g1 = b.pow(2);
    let g2 = &DiskPoly::xi() * &g1;
    let g3 = &(&DiskPoly::monomial(2, 1, c_real(rat(3, 2))) + &DiskPoly::constant(c_real(rat(-1, 5)))) * &b;
    let mut rows = Vec::new();
    let v = lemma1_check(&g1, &one)?;
    let pi_third = PiScaled { coeff: c_real(rat(1, 3)), power: 1 };
    rows.push(VerifyRow::exact("derivative norm of (1-|xi|^2)^2, closed form", &pi_third, &v.d_xi));
    rows.push(VerifyRow::exact("derivative norms of (1-|xi|^2)^2", &v.d_xi, &v.d_xibar));
    let dq = g1.d_xi().to_float();
    let rule = QuadRule::disk(1.0, cfg.radial_nodes, cfg.angular_nodes);
    let q = quad_integrate(|z| Complex64::new(dq.eval(z).norm_sqr(), 0.0), &rule).re;
    rows.push(VerifyRow::new("derivative norm of (1-|xi|^2)^2 by quadrature", PI / 3.0, q));
    for (name, g) in
        [("derivative norms of xi(1-|xi|^2)^2", g2), ("derivative norms of (3/2 xi^2 conj(xi) - 1/5)(1-|xi|^2)", g3)]
    {
        let v = lemma1_check(&g, &one)?;
        rows.push(VerifyRow::exact(name, &v.d_xi, &v.d_xibar));
    }
    Ok(rows)
}

fn spectrum_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn unitary_rows() -> Result<Vec<VerifyRow>> {
    let dom = ProductDomain::unit_bidisk();
    let phi = &(&Symbol::zbar() * &Symbol::w())
        + &(&Symbol::monomial([0, 0, 0, 2], c_real(rat(1, 2))) + &Symbol::monomial([2, 1, 0, 0], c_real(rat(-1, 3))));
    let window = BasisWindow::graded(8);
    let base = gram(&phi, &window, &dom).eigenvalues();
    let top = base.last().copied().unwrap_or(0.0);
    let mut rows = Vec::new();
    let rot = Transform::Rotate(Unimodular::from_tangent(&rat(1, 2)), Unimodular::from_tangent(&rat(-2, 7)));
    for (name, t) in [("spectrum under swap, N=8", Transform::Swap), ("spectrum under rotation, N=8", rot)] {
        let mapped = apply_unitary(&phi, &t, &dom)?;
        let ev = gram(&mapped, &window, &dom).eigenvalues();
        let gap = spectrum_gap(&base, &ev);
        rows.push(VerifyRow::new(name, top, top + gap));
    }
    Ok(rows)
}

fn vd_rows(cfg: &VerifyConfig) -> Result<Vec<VerifyRow>> {
    let dom = ProductDomain::unit_bidisk();
    let phi = &Symbol::zbar() + &Symbol::monomial([0, 2, 0, 0], c_real(rat(1, 4)));
    let c = rat_from_f64(cfg.tau0.min(1.0))?;
    let slice = DiskSlice::new(&dom, Coord::Z, 0.0, c_zero(), c_real(c))?;
    let (lhs, rhs) = vd_identity_check(&phi, &slice, &SearchConfig::default());
    Ok(vec![VerifyRow::new("V(D) identity", lhs, rhs)])
}

pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut rows = bump_rows(cfg);
    rows.extend(wedge_rows(cfg));
    rows.extend(derivative_rows(cfg)?);
    rows.extend(unitary_rows()?);
    rows.extend(vd_rows(cfg)?);
    let pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport { rows, pass })
}
