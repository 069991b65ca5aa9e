use num_complex::Complex64;
use serde::Serialize;

use crate::bergman::{normalized_kernel_coeffs, ProductDomain};
use crate::error::{Error, Result};
use crate::exact::to_c64;
use crate::symbol::{Coord, Symbol};

/// Values within this of the running best are ties; the lower index wins.
pub const TIE_TOL: f64 = 1e-12;

/// Squared norms below this fraction of the summed magnitudes are rounding noise.
const ROUNDING_FLOOR: f64 = 1e-13;

/// Best Rayleigh value `||H f|| / ||f||` over `f = e_m (x) k_p`, `m <= N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelValue {
    pub p_abs: f64,
    pub value: f64,
    /// Index `m` of the best basis vector in the other coordinate.
    pub best_g: u32,
    pub kernel_degree: usize,
    pub tail: f64,
}

/// Symbol term split by coordinate: `(a, b)` in the test coordinate,
/// `(c, d)` in the kernel coordinate.
struct Split {
    ab: (i64, i64),
    cd: (i64, i64),
    coeff: Complex64,
}

/// Kernel-coordinate factors `(full, projected)` for one term pair:
/// sums over `h_scaled[n] = h_n sqrt(n + 1)` of the one-variable Gram pieces.
fn kernel_factors(t: &Split, u: &Split, h_scaled: &[Complex64]) -> (Complex64, Complex64) {
    let (c, d) = t.cd;
    let (c2, d2) = u.cd;
    let shift = (c - d) - (c2 - d2);
    let len = h_scaled.len() as i64;
    let mut full = Complex64::new(0.0, 0.0);
    let mut proj = Complex64::new(0.0, 0.0);
    let lo = 0.max(-shift);
    let hi = len.min(len - shift);
    for nj in lo..hi {
        let ni = nj + shift;
        let w = h_scaled[nj as usize] * h_scaled[ni as usize].conj();
        full += w / (c + nj + d2 + 1) as f64;
        let l = c + nj - d;
        if l >= 0 {
            proj += w * ((l + 1) as f64 / ((c + nj + 1) * (c2 + ni + 1)) as f64);
        }
    }
    (full, proj)
}

/// Test-coordinate factors for `g = e_m`.
fn basis_factors(t: &Split, u: &Split, m: i64) -> (f64, f64) {
    let (a, b) = t.ab;
    let (a2, b2) = u.ab;
    if a - b != a2 - b2 {
        return (0.0, 0.0);
    }
    let s = (m + 1) as f64;
    let full = s / (a + m + b2 + 1) as f64;
    let k = a + m - b;
    let proj = if k >= 0 { s * (k + 1) as f64 / ((a + m + 1) * (a2 + m + 1)) as f64 } else { 0.0 };
    (full, proj)
}

/// Rayleigh values of `H_phi` on product test vectors `e_m (x) k_p` whose
/// kernel factor lives in the `family` coordinate; `p` has modulus `|p|`
/// relative to that coordinate's radius and argument `angle`.
pub fn kernel_sequence_est(
    phi: &Symbol,
    dom: &ProductDomain,
    family: Coord,
    p_abs: &[f64],
    degree: Option<usize>,
    n: u32,
    angle: f64,
) -> Result<Vec<KernelValue>> {
    if let Some(bad) = p_abs.iter().find(|p| !(**p >= 0.0 && **p < 1.0)) {
        return Err(Error::KernelCenter(*bad));
    }
    let phi = dom.to_unit(phi);
    let (ks, kbs) = match family {
        Coord::Z => (0, 1),
        Coord::W => (2, 3),
    };
    let (gs, gbs) = match family {
        Coord::Z => (2, 3),
        Coord::W => (0, 1),
    };
    let terms: Vec<Split> = phi
        .terms()
        .map(|(e, c)| Split { ab: (e[gs] as i64, e[gbs] as i64), cd: (e[ks] as i64, e[kbs] as i64), coeff: to_c64(c) })
        .collect();

    let mut out = Vec::with_capacity(p_abs.len());
    for &pa in p_abs {
        let p = Complex64::from_polar(pa, angle);
        let k = normalized_kernel_coeffs(p, degree)?;
        let h_scaled: Vec<Complex64> = k.coeffs.iter().enumerate().map(|(i, v)| v * ((i + 1) as f64).sqrt()).collect();
        let norm_sq = 1.0 - k.tail;
        let pairs: Vec<(usize, usize, Complex64, Complex64)> = (0..terms.len())
            .flat_map(|t| (0..terms.len()).map(move |u| (t, u)))
            .filter(|(t, u)| terms[*t].ab.0 - terms[*t].ab.1 == terms[*u].ab.0 - terms[*u].ab.1)
            .map(|(t, u)| {
                let (f, pr) = kernel_factors(&terms[t], &terms[u], &h_scaled);
                (t, u, f, pr)
            })
            .collect();

        let mut best = (0u32, f64::NEG_INFINITY);
        for m in 0..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut scale = 0.0;
            for (t, u, wf, wp) in &pairs {
                let (zf, zp) = basis_factors(&terms[*t], &terms[*u], m as i64);
                let c = terms[*t].coeff * terms[*u].coeff.conj();
                acc += c * (wf * zf - wp * zp);
                scale += c.norm() * ((wf * zf).norm() + (wp * zp).norm());
            }
            // full and projected parts cancel exactly for holomorphic symbols
            let sq = if acc.re <= ROUNDING_FLOOR * scale { 0.0 } else { acc.re };
            let v = (sq / norm_sq).sqrt();
            if v > best.1 + TIE_TOL {
                best = (m, v);
            }
        }
        out.push(KernelValue {
            p_abs: pa,
            value: best.1.max(0.0),
            best_g: best.0,
            kernel_degree: k.degree(),
            tail: k.tail,
        });
    }
    Ok(out)
}
