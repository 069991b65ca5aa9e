use num_complex::Complex64;
use num_traits::{One, Zero};

use super::window::BasisWindow;
use crate::bergman::BasisIndex;
use crate::exact::{c_real, CRational, Rational};

/// Off-diagonal Frobenius threshold relative to the matrix norm.
pub const JACOBI_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

/// Dense Hermitian Gram matrix over a basis window.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianGram {
    window: BasisWindow,
    data: Vec<Complex64>,
    exact: bool,
}

impl HermitianGram {
    pub fn new(window: BasisWindow, data: Vec<Complex64>, exact: bool) -> Self {
        assert_eq!(data.len(), window.len() * window.len());
        HermitianGram { window, data, exact }
    }

    pub fn window(&self) -> &BasisWindow {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.window.len()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim() + j]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `f^H G f = ||H f||^2` for coefficients `f` in window order.
    pub fn quad_form(&self, f: &[Complex64]) -> f64 {
        let n = self.dim();
        let mut acc = Complex64::zero();
        for i in 0..n {
            if f[i] == Complex64::zero() {
                continue;
            }
            let row: Complex64 = self.data[i * n..(i + 1) * n].iter().zip(f).map(|(g, x)| g * x).sum();
            acc += f[i].conj() * row;
        }
        acc.re
    }

    /// Principal submatrix on the indices accepted by `keep`.
    pub fn principal<F: Fn(BasisIndex) -> bool>(&self, keep: F) -> HermitianGram {
        let pos: Vec<usize> = (0..self.dim()).filter(|&i| keep(self.window.indices()[i])).collect();
        let window = BasisWindow::from_indices(pos.iter().map(|&i| self.window.indices()[i]));
        let n = self.dim();
        let mut data = Vec::with_capacity(pos.len() * pos.len());
        for &i in &pos {
            for &j in &pos {
                data.push(self.data[i * n + j]);
            }
        }
        HermitianGram { window, data, exact: self.exact }
    }

    /// Connected components of the nonzero pattern, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.data[i * n + j] != Complex64::zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// Eigenvalues in ascending order, block by block.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.dim();
        let scale = self.frobenius_norm();
        let mut out = Vec::with_capacity(n);
        for block in self.blocks() {
            let k = block.len();
            let mut a = vec![Complex64::zero(); k * k];
            for (p, &i) in block.iter().enumerate() {
                for (q, &j) in block.iter().enumerate() {
                    a[p * k + q] = self.data[i * n + j];
                }
            }
            out.extend(jacobi_eigenvalues(&mut a, k, scale));
        }
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues().last().copied().unwrap_or(0.0)
    }

    /// `sqrt` of the largest eigenvalue, clamped at zero.
    pub fn norm(&self) -> f64 {
        self.max_eigenvalue().max(0.0).sqrt()
    }
}

/// Cyclic complex Jacobi on a dense row-major Hermitian `k x k` matrix,
/// overwritten in place. Stops once the off-diagonal Frobenius norm is at
/// most `JACOBI_TOL * scale`.
pub fn jacobi_eigenvalues(a: &mut [Complex64], k: usize, scale: f64) -> Vec<f64> {
    let threshold = JACOBI_TOL * scale;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * k + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..k {
            for q in (p + 1)..k {
                rotate(a, k, p, q);
            }
        }
    }
    (0..k).map(|i| a[i * k + i].re).collect()
}

fn rotate(a: &mut [Complex64], k: usize, p: usize, q: usize) {
    let apq = a[p * k + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let e = apq / mag;
    let app = a[p * k + p].re;
    let aqq = a[q * k + q].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // A <- A P with P_pp = P_qq = c, P_pq = s e, P_qp = -s conj(e)
    for i in 0..k {
        let xp = a[i * k + p];
        let xq = a[i * k + q];
        a[i * k + p] = xp * c - xq * (s * e.conj());
        a[i * k + q] = xp * (s * e) + xq * c;
    }
    // A <- P^H A
    for j in 0..k {
        let xp = a[p * k + j];
        let xq = a[q * k + j];
        a[p * k + j] = xp * c - xq * (s * e);
        a[q * k + j] = xp * (s * e.conj()) + xq * c;
    }
    a[p * k + q] = Complex64::zero();
    a[q * k + p] = Complex64::zero();
    a[p * k + p].im = 0.0;
    a[q * k + q].im = 0.0;
}

/// Faddeev-LeVerrier: monic characteristic polynomial `det(x I - A)`,
/// coefficients from the constant term up.
pub fn char_poly(a: &[Vec<CRational>]) -> Vec<CRational> {
    let n = a.len();
    let mut coeffs = vec![CRational::zero(); n + 1];
    coeffs[n] = CRational::one();
    let mut m = vec![vec![CRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![CRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = CRational::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        acc += &a[i][l] * &m[l][j];
                    }
                }
                if i == j {
                    acc += &coeffs[n - k + 1];
                }
                next[i][j] = acc;
            }
        }
        m = next;
        let mut tr = CRational::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() && !m[l][i].is_zero() {
                    tr += &a[i][l] * &m[l][i];
                }
            }
        }
        coeffs[n - k] = -tr * c_real(Rational::new(1.into(), (k as i64).into()));
    }
    coeffs
}
