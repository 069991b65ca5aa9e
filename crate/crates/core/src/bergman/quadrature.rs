use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the three-term recurrence. Exact for polynomials of degree `< 2n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// `(P_n(z), P_n'(z))`.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Region {
    Disk {
        radius: f64,
    },
    /// `{r e^{i theta}: 0 <= r < r0, |theta| < (pi - eps1) / 2}`.
    Wedge {
        r0: f64,
        eps1: f64,
    },
}

impl Region {
    pub fn area(&self) -> f64 {
        match *self {
            Region::Disk { radius } => PI * radius * radius,
            Region::Wedge { r0, eps1 } => 0.5 * (PI - eps1) * r0 * r0,
        }
    }
}

/// Product rule in polar coordinates. The radial variable is `t = r^beta`
/// (`beta = radial_power`, default 2) with Gauss-Legendre nodes in `t`; the
/// angular rule is uniform on full disks and Gauss-Legendre on wedges.
///
/// `beta = 2 - 2 alpha` turns `|w|^{-2 alpha} dV` into a constant radial
/// density, which is how the singular wedge integrands are handled.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadRule {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub region: Region,
    #[serde(default = "default_power")]
    pub radial_power: f64,
}

fn default_power() -> f64 {
    2.0
}

impl QuadRule {
    pub fn disk(radius: f64, radial_nodes: usize, angular_nodes: usize) -> Self {
        QuadRule { radial_nodes, angular_nodes, region: Region::Disk { radius }, radial_power: 2.0 }
    }

    pub fn wedge(r0: f64, eps1: f64, radial_nodes: usize, angular_nodes: usize) -> Self {
        QuadRule { radial_nodes, angular_nodes, region: Region::Wedge { r0, eps1 }, radial_power: 2.0 }
    }

    pub fn with_radial_power(mut self, beta: f64) -> Self {
        self.radial_power = beta;
        self
    }

    /// Nodes as `(ln r, theta, ln weight)`, deterministic order (radial outer).
    /// Radial substitutions with small `beta` push `r` below the floating
    /// range; integrands that are powers of `r` stay exact in this form.
    pub fn log_polar_nodes(&self) -> Vec<(f64, f64, f64)> {
        let beta = self.radial_power;
        let rmax = match self.region {
            Region::Disk { radius } => radius,
            Region::Wedge { r0, .. } => r0,
        };
        let ln_tmax = beta * rmax.ln();
        let (gx, gw) = gauss_legendre(self.radial_nodes);
        let radial: Vec<(f64, f64)> = gx
            .iter()
            .zip(&gw)
            .map(|(x, w)| {
                let ln_t = ln_tmax + (0.5 * (x + 1.0)).ln();
                // r dr = (1/beta) t^{2/beta - 1} dt
                let ln_jac = (2.0 / beta - 1.0) * ln_t - beta.ln();
                (ln_t / beta, ln_tmax + (0.5 * w).ln() + ln_jac)
            })
            .collect();
        let angular: Vec<(f64, f64)> = match self.region {
            Region::Disk { .. } => {
                let n = self.angular_nodes;
                (0..n).map(|j| (2.0 * PI * j as f64 / n as f64, 2.0 * PI / n as f64)).collect()
            }
            Region::Wedge { eps1, .. } => {
                let half = 0.5 * (PI - eps1);
                let (ax, aw) = gauss_legendre(self.angular_nodes);
                ax.iter().zip(&aw).map(|(x, w)| (half * x, half * w)).collect()
            }
        };
        let mut out = Vec::with_capacity(radial.len() * angular.len());
        for (ln_r, ln_wr) in &radial {
            for (th, wt) in &angular {
                out.push((*ln_r, *th, ln_wr + wt.ln()));
            }
        }
        out
    }

    /// Points and positive weights, deterministic order (radial outer). Nodes
    /// whose weight underflows to zero are dropped.
    pub fn nodes(&self) -> Vec<(Complex64, f64)> {
        self.log_polar_nodes()
            .into_iter()
            .map(|(ln_r, th, ln_w)| (Complex64::from_polar(ln_r.exp(), th), ln_w.exp()))
            .filter(|&(_, w)| w > 0.0)
            .collect()
    }
}

pub fn quad_integrate<F: Fn(Complex64) -> Complex64>(f: F, rule: &QuadRule) -> Complex64 {
    rule.nodes().into_iter().map(|(z, w)| f(z) * w).sum()
}
