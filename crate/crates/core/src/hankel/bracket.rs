use serde::{Deserialize, Serialize};

use super::eigen::HermitianGram;
use super::gram::gram;
use super::kernel_seq::{kernel_sequence_est, KernelValue};
use super::window::BasisWindow;
use crate::bergman::ProductDomain;
use crate::error::{Error, Result};
use crate::symbol::{Coord, Symbol};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BracketConfig {
    pub degree: u32,
    pub tail_starts: Vec<u32>,
    /// Kernel truncation degree; `None` picks it from the tail tolerance.
    pub kernel_degree: Option<usize>,
    pub p_schedule: Vec<f64>,
    pub kernel_angle: f64,
}

impl Default for BracketConfig {
    fn default() -> Self {
        BracketConfig {
            degree: 30,
            tail_starts: vec![5, 10, 15, 20, 25],
            kernel_degree: None,
            p_schedule: vec![0.0, 0.5, 0.9, 0.99, 0.999, 0.9999],
            kernel_angle: 0.0,
        }
    }
}

impl BracketConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(&k) = self.tail_starts.iter().max() {
            if k >= self.degree {
                return Err(Error::InvalidParameter(format!(
                    "degree {} must exceed every tail start (max {k})",
                    self.degree
                )));
            }
        }
        if let Some(p) = self.p_schedule.iter().find(|p| !(**p >= 0.0 && **p < 1.0)) {
            return Err(Error::KernelCenter(*p));
        }
        if !self.kernel_angle.is_finite() {
            return Err(Error::InvalidParameter("kernel_angle".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelSequence {
    pub family: Coord,
    pub values: Vec<KernelValue>,
    /// `|p| -> 1` limit of the squared values, extrapolated in `1 - |p|^2`.
    pub extrapolated: f64,
}

/// Spectral bracket for the essential norm with its audit data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EssNormBracket {
    pub lower_est: f64,
    pub upper_est: f64,
    /// Largest Rayleigh quotient evaluated anywhere, including small `|p|`:
    /// a certified lower bound for the operator norm, not the essential norm.
    pub op_norm_lower: f64,
    /// Best kernel value at the largest `|p|` of the schedule.
    pub kernel_last: f64,
    /// Largest `|p| -> 1` extrapolation over the kernel families.
    pub kernel_extrapolated: f64,
    /// Tail supremum at the largest tail start and full degree.
    pub tail_value: f64,
    /// Tail supremum extrapolated in `1/N`.
    pub tail_extrapolated: f64,
    /// Extrapolation spread plus the kernel truncation effect.
    pub error_bar: f64,
    /// `(k, N, sup singular value on the window k < m + n <= N)`.
    pub table: Vec<(u32, u32, f64)>,
    /// `(|p|, best value over both kernel families)`.
    pub sequence: Vec<(f64, f64)>,
    pub kernels: Vec<KernelSequence>,
    pub max_kernel_tail: f64,
    pub exact: bool,
}

/// Polynomial through `(xs, ys)` evaluated at `x0`.
pub fn neville(xs: &[f64], ys: &[f64], x0: f64) -> f64 {
    let n = xs.len();
    if n == 0 {
        return 0.0;
    }
    let mut p = ys.to_vec();
    for level in 1..n {
        for i in 0..(n - level) {
            let j = i + level;
            p[i] = ((x0 - xs[j]) * p[i] + (xs[i] - x0) * p[i + 1]) / (xs[i] - xs[j]);
        }
    }
    p[0]
}

/// Tail suprema `sqrt(lambda_max)` of `full` on windows `(k, n]`.
pub fn tail_table(full: &HermitianGram, tail_starts: &[u32], degree: u32) -> Vec<(u32, u32, f64)> {
    let mut table = Vec::new();
    for &k in tail_starts {
        for n in (k + 1)..=degree {
            let sub = full.principal(|i| i.degree() > k && i.degree() <= n);
            table.push((k, n, sub.norm()));
        }
    }
    table
}

/// `sqrt(lambda_max)` of the Gram matrix over all indices of degree `<= n`.
pub fn op_norm(phi: &Symbol, n: u32, dom: &ProductDomain) -> f64 {
    gram(phi, &BasisWindow::graded(n), dom).norm()
}

pub fn ess_norm_bracket(phi: &Symbol, dom: &ProductDomain, cfg: &BracketConfig) -> Result<EssNormBracket> {
    cfg.validate()?;
    let n = cfg.degree;
    let full = gram(phi, &BasisWindow::graded(n), dom);
    let table = tail_table(&full, &cfg.tail_starts, n);

    let k_max = cfg.tail_starts.iter().max().copied();
    let (tail_value, tail_extrapolated) = match k_max {
        Some(k) => {
            let last: Vec<(f64, f64)> = table
                .iter()
                .filter(|(kk, nn, _)| *kk == k && *nn + 2 >= n)
                .map(|(_, nn, v)| (1.0 / *nn as f64, *v))
                .collect();
            let value = last.last().map_or(0.0, |p| p.1);
            let xs: Vec<f64> = last.iter().map(|p| p.0).collect();
            let ys: Vec<f64> = last.iter().map(|p| p.1).collect();
            (value, neville(&xs, &ys, 0.0))
        }
        None => (0.0, 0.0),
    };

    let mut ps = cfg.p_schedule.clone();
    ps.sort_by(|a, b| a.total_cmp(b));
    let mut kernels = Vec::new();
    for family in [Coord::Z, Coord::W] {
        let values = kernel_sequence_est(phi, dom, family, &ps, cfg.kernel_degree, n, cfg.kernel_angle)?;
        let last = &values[values.len().saturating_sub(3)..];
        let xs: Vec<f64> = last.iter().map(|v| 1.0 - v.p_abs * v.p_abs).collect();
        let ys: Vec<f64> = last.iter().map(|v| v.value * v.value).collect();
        let extrapolated = neville(&xs, &ys, 0.0).max(0.0).sqrt();
        kernels.push(KernelSequence { family, values, extrapolated });
    }

    let sequence: Vec<(f64, f64)> = ps
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, kernels.iter().map(|k| k.values[i].value).fold(0.0, f64::max)))
        .collect();
    let max_kernel_tail = kernels.iter().flat_map(|k| k.values.iter().map(|v| v.tail)).fold(0.0, f64::max);

    let op_norm_lower = sequence.iter().map(|s| s.1).fold(tail_value, f64::max);
    let kernel_last = sequence.last().map_or(0.0, |s| s.1);
    let kernel_extrapolated = kernels.iter().map(|k| k.extrapolated).fold(0.0, f64::max);
    let measured = tail_value.max(kernel_last);
    let lower_est = measured.max(kernel_extrapolated);
    let upper_est = tail_value.max(tail_extrapolated);
    let error_bar = (upper_est - tail_value) + (lower_est - measured) + op_norm_lower * max_kernel_tail.sqrt();

    Ok(EssNormBracket {
        lower_est,
        upper_est,
        op_norm_lower,
        kernel_last,
        kernel_extrapolated,
        tail_value,
        tail_extrapolated,
        error_bar,
        table,
        sequence,
        kernels,
        max_kernel_tail,
        exact: full.is_exact(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neville_reproduces_quadratics() {
        let f = |x: f64| 1.0 + 2.0 * x - 3.0 * x * x;
        let xs = [0.1, 0.2, 0.4];
        let ys: Vec<f64> = xs.iter().map(|x| f(*x)).collect();
        assert!((neville(&xs, &ys, 0.0) - 1.0).abs() < 1e-14);
        assert_eq!(neville(&[0.5], &[3.0], 0.0), 3.0);
    }

    #[test]
    fn holomorphic_bracket_is_zero() {
        let cfg = BracketConfig { degree: 8, tail_starts: vec![2, 4], ..Default::default() };
        let b = ess_norm_bracket(&Symbol::z(), &ProductDomain::unit_bidisk(), &cfg).unwrap();
        assert_eq!(b.lower_est, 0.0);
        assert_eq!(b.upper_est, 0.0);
    }

    #[test]
    fn zbar_bracket_is_tight() {
        let cfg = BracketConfig { degree: 12, tail_starts: vec![3, 6, 9], ..Default::default() };
        let b = ess_norm_bracket(&Symbol::zbar(), &ProductDomain::unit_bidisk(), &cfg).unwrap();
        let s = 0.5f64.sqrt();
        assert!((b.lower_est - s).abs() < 1e-12);
        assert!((b.upper_est - s).abs() < 1e-12);
        assert!(b.table.iter().all(|r| (r.2 - s).abs() < 1e-12));
    }

    #[test]
    fn op_norm_examples() {
        let d = ProductDomain::unit_bidisk();
        assert!((op_norm(&Symbol::zbar(), 4, &d) - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((op_norm(&(&Symbol::zbar() + &Symbol::z()), 4, &d) - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_config() {
        let d = ProductDomain::unit_bidisk();
        let cfg = BracketConfig { degree: 5, tail_starts: vec![5], ..Default::default() };
        assert!(ess_norm_bracket(&Symbol::zbar(), &d, &cfg).is_err());
        let cfg = BracketConfig { p_schedule: vec![1.0], ..Default::default() };
        assert!(ess_norm_bracket(&Symbol::zbar(), &d, &cfg).is_err());
    }
}
