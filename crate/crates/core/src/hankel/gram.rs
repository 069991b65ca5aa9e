use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::eigen::{char_poly, HermitianGram};
use super::window::BasisWindow;
use crate::bergman::{BasisIndex, ProductDomain};
use crate::exact::{c_real, to_c64, CRational, Rational, SqrtRational};
use crate::symbol::{Exponents, Symbol};

fn frac(num: i128, den: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exponents of `z^A conj(z)^B w^C conj(w)^D` produced by one symbol term
/// acting on `z^m w^n`, with its charge `(A - B, C - D)`.
#[derive(Clone, Copy, Debug)]
struct Product {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl Product {
    fn new(e: &Exponents, idx: BasisIndex) -> Self {
        Product { a: (e[0] + idx.m) as i128, b: e[1] as i128, c: (e[2] + idx.n) as i128, d: e[3] as i128 }
    }

    fn charge(&self) -> (i128, i128) {
        (self.a - self.b, self.c - self.d)
    }
}

/// `<x_j, x_i> - <P x_j, P x_i>` on the unit bidisk for two products of
/// equal charge, with the `pi^2` and basis weights stripped.
fn pair_value(j: &Product, i: &Product) -> Rational {
    let full = frac(1, (j.a + i.b + 1) * (j.c + i.d + 1));
    let (k, l) = j.charge();
    if k < 0 || l < 0 {
        return full;
    }
    let proj = frac((k + 1) * (l + 1), (j.a + 1) * (j.c + 1) * (i.a + 1) * (i.c + 1));
    full - proj
}

/// Exact Gram matrix in the factored form `G_ij = Q_ij sqrt(s_i s_j)`,
/// `s = (m + 1)(n + 1)`, with `Q` stored sparsely.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactGram {
    window: BasisWindow,
    q: BTreeMap<(usize, usize), CRational>,
    exact_input: bool,
}

impl ExactGram {
    pub fn window(&self) -> &BasisWindow {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.window.len()
    }

    pub fn q(&self) -> &BTreeMap<(usize, usize), CRational> {
        &self.q
    }

    pub fn is_exact(&self) -> bool {
        self.exact_input
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_empty()
    }

    pub fn q_entry(&self, i: usize, j: usize) -> CRational {
        self.q.get(&(i, j)).cloned().unwrap_or_else(CRational::zero)
    }

    pub fn entry(&self, i: usize, j: usize) -> SqrtRational {
        let idx = self.window.indices();
        SqrtRational { q: self.q_entry(i, j), radicand: idx[i].weight() * idx[j].weight() }
    }

    pub fn to_float(&self) -> HermitianGram {
        let n = self.dim();
        let w: Vec<f64> = self.window.indices().iter().map(|i| (i.weight() as f64).sqrt()).collect();
        let mut data = vec![Complex64::zero(); n * n];
        for ((i, j), v) in &self.q {
            data[i * n + j] = to_c64(v) * (w[*i] * w[*j]);
        }
        HermitianGram::new(self.window.clone(), data, self.exact_input)
    }

    /// Characteristic polynomial of `G`, computed exactly from the similar
    /// matrix `S Q` with `S = diag(s)`; coefficients from the constant term up.
    pub fn char_poly(&self) -> Vec<CRational> {
        let n = self.dim();
        let s: Vec<Rational> =
            self.window.indices().iter().map(|i| Rational::from_integer(BigInt::from(i.weight()))).collect();
        let mut m = vec![vec![CRational::zero(); n]; n];
        for ((i, j), v) in &self.q {
            m[*i][*j] = v * c_real(s[*i].clone());
        }
        char_poly(&m)
    }
}

/// Products sharing a charge `(A - B, C - D)`, tagged by basis position and term.
type ChargeClasses = HashMap<(i128, i128), Vec<(usize, usize, Product)>>;

/// Exact Gram matrix of `H_phi` over `window`.
pub fn gram_exact(phi: &Symbol, window: &BasisWindow, dom: &ProductDomain) -> ExactGram {
    let phi = dom.to_unit(phi);
    let terms: Vec<(&Exponents, &CRational)> = phi.terms().collect();
    let mut classes = ChargeClasses::new();
    for (j, idx) in window.indices().iter().enumerate() {
        for (t, (e, _)) in terms.iter().enumerate() {
            let p = Product::new(e, *idx);
            classes.entry(p.charge()).or_default().push((j, t, p));
        }
    }
    let mut q: BTreeMap<(usize, usize), CRational> = BTreeMap::new();
    for members in classes.values() {
        for (j, t, pj) in members {
            for (i, u, pi) in members {
                let v = pair_value(pj, pi);
                if v.is_zero() {
                    continue;
                }
                let c = terms[*t].1 * terms[*u].1.conj() * c_real(v);
                *q.entry((*i, *j)).or_insert_with(CRational::zero) += c;
            }
        }
    }
    q.retain(|_, v| !v.is_zero());
    ExactGram { window: window.clone(), q, exact_input: phi.is_exact() }
}

/// Gram matrix through the exact route, converted to floating point.
pub fn gram(phi: &Symbol, window: &BasisWindow, dom: &ProductDomain) -> HermitianGram {
    gram_exact(phi, window, dom).to_float()
}

/// Independent floating-point Gram matrix assembled directly on the
/// (undilated) domain with explicit pi factors and basis constants.
pub fn gram_float(phi: &Symbol, window: &BasisWindow, dom: &ProductDomain) -> HermitianGram {
    use std::f64::consts::PI;
    let r1 = dom.radius_f64(crate::symbol::Coord::Z);
    let r2 = dom.radius_f64(crate::symbol::Coord::W);
    let terms: Vec<(Exponents, Complex64)> = phi.terms().map(|(e, c)| (*e, to_c64(c))).collect();
    let n = window.len();
    let idx = window.indices();
    let norm: Vec<f64> = idx.iter().map(|i| i.norm_constant(dom)).collect();

    // one-disk integral of x conj(y), x = v^A conj(v)^B, y = v^A' conj(v)^B' of equal charge
    let full = |a: i64, b2: i64, r: f64| PI * r.powi((2 * (a + b2) + 2) as i32) / (a + b2 + 1) as f64;
    let proj = |a: i64, b: i64, a2: i64, b2: i64, r: f64| {
        let k = a - b;
        if k < 0 {
            return 0.0;
        }
        let ck = r.powi((2 * b) as i32) * (k + 1) as f64 / (a + 1) as f64;
        let ck2 = r.powi((2 * b2) as i32) * (k + 1) as f64 / (a2 + 1) as f64;
        ck * ck2 * PI * r.powi((2 * k + 2) as i32) / (k + 1) as f64
    };

    let mut classes: HashMap<(i64, i64), Vec<(usize, usize)>> = HashMap::new();
    for (j, ix) in idx.iter().enumerate() {
        for (t, (e, _)) in terms.iter().enumerate() {
            let key = (e[0] as i64 + ix.m as i64 - e[1] as i64, e[2] as i64 + ix.n as i64 - e[3] as i64);
            classes.entry(key).or_default().push((j, t));
        }
    }
    let mut data = vec![Complex64::zero(); n * n];
    let mut keys: Vec<_> = classes.keys().copied().collect();
    keys.sort();
    for key in keys {
        let members = &classes[&key];
        for &(j, t) in members {
            let (ej, cj) = &terms[t];
            let (aj, bj) = ((ej[0] + idx[j].m) as i64, ej[1] as i64);
            let (cj_, dj) = ((ej[2] + idx[j].n) as i64, ej[3] as i64);
            for &(i, u) in members {
                let (ei, ci) = &terms[u];
                let (ai, bi) = ((ei[0] + idx[i].m) as i64, ei[1] as i64);
                let (ci_, di) = ((ei[2] + idx[i].n) as i64, ei[3] as i64);
                let m = full(aj, bi, r1) * full(cj_, di, r2);
                let p = proj(aj, bj, ai, bi, r1) * proj(cj_, dj, ci_, di, r2);
                data[i * n + j] += cj * ci.conj() * ((m - p) * norm[i] * norm[j]);
            }
        }
    }
    HermitianGram::new(window.clone(), data, false)
}

/// Exact expansion coefficients `<phi e_idx, e_kl>` of the Bergman
/// projection of `phi e_idx`, in basis order; omitted coefficients vanish.
pub fn projection_coeffs(phi: &Symbol, idx: BasisIndex, dom: &ProductDomain) -> Vec<(BasisIndex, SqrtRational)> {
    let phi = dom.to_unit(phi);
    let mut acc: BTreeMap<(u32, u32), CRational> = BTreeMap::new();
    for (e, c) in phi.terms() {
        let p = Product::new(e, idx);
        let (k, l) = p.charge();
        if k < 0 || l < 0 {
            continue;
        }
        let v = c * c_real(frac(1, (p.a + 1) * (p.c + 1)));
        *acc.entry(((k + l) as u32, k as u32)).or_insert_with(CRational::zero) += v;
    }
    acc.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((deg, m), q)| {
            let kl = BasisIndex::new(m, deg - m);
            (kl, SqrtRational { q, radicand: idx.weight() * kl.weight() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{c_int, c_one, c_rat, rat, rat_int};

    fn unit() -> ProductDomain {
        ProductDomain::unit_bidisk()
    }

    #[test]
    fn holomorphic_symbol_has_zero_gram() {
        let phi = &Symbol::z() + &(&Symbol::w() * &Symbol::z());
        let g = gram_exact(&phi, &BasisWindow::graded(5), &unit());
        assert!(g.is_zero());
    }

    #[test]
    fn zbar_gram_is_diagonal() {
        let window = BasisWindow::from_indices((0..=4).map(|m| BasisIndex::new(m, 0)));
        let g = gram_exact(&Symbol::zbar(), &window, &unit());
        let expected = [rat(1, 2), rat(1, 6), rat(1, 12), rat(1, 20), rat(1, 30)];
        for (i, e) in expected.iter().enumerate() {
            for j in 0..5 {
                let v = g.entry(i, j);
                if i == j {
                    // q * sqrt(s^2) = q * s
                    let s = rat_int(window.indices()[i].weight() as i64);
                    assert_eq!(v.q * c_real(s), c_real(e.clone()));
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn zbar_wbar_diagonal_formula() {
        let phi = &Symbol::zbar() * &Symbol::wbar();
        let window = BasisWindow::graded(6);
        let g = gram_exact(&phi, &window, &unit());
        for (i, ix) in window.indices().iter().enumerate() {
            let (m, n) = (ix.m as i64, ix.n as i64);
            let want = rat((m + 1) * (n + 1), (m + 2) * (n + 2)) - rat(m * n, (m + 1) * (n + 1));
            let s = rat_int(ix.weight() as i64);
            assert_eq!(g.q_entry(i, i) * c_real(s), c_real(want));
        }
        assert_eq!(g.q().keys().filter(|(i, j)| i != j).count(), 0);
    }

    #[test]
    fn float_route_agrees() {
        let phi = &(&Symbol::zbar() * &Symbol::w()) + &Symbol::monomial([1, 2, 0, 1], c_rat(rat(1, 3), rat(-2, 5)));
        let dom = ProductDomain::new(rat(3, 4), rat(5, 4)).unwrap();
        let window = BasisWindow::graded(5);
        let a = gram(&phi, &window, &dom);
        let b = gram_float(&phi, &window, &dom);
        let scale = a.frobenius_norm();
        for i in 0..window.len() {
            for j in 0..window.len() {
                assert!((a.get(i, j) - b.get(i, j)).norm() <= 1e-13 * scale, "{i} {j}");
            }
        }
    }

    #[test]
    fn projection_examples() {
        let c = projection_coeffs(&Symbol::zbar(), BasisIndex::new(1, 0), &unit());
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, BasisIndex::new(0, 0));
        assert_eq!(c[0].1.q, c_real(rat(1, 2)));
        assert_eq!(c[0].1.radicand, 2);
        assert!((c[0].1.to_c64().re - 0.5f64.sqrt()).abs() < 1e-15);

        assert!(projection_coeffs(&Symbol::zbar(), BasisIndex::new(0, 0), &unit()).is_empty());

        // z e_00 = e_10 / sqrt(2)
        let c = projection_coeffs(&Symbol::z(), BasisIndex::new(0, 0), &unit());
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, BasisIndex::new(1, 0));
        assert!((c[0].1.to_c64().re - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn projection_matches_gram_identity() {
        // <phi e_j, phi e_i> - sum_kl a_jkl conj(a_ikl) equals G_ij
        let phi = &Symbol::zbar() + &Symbol::monomial([2, 1, 0, 1], c_int(3));
        let dom = unit();
        let window = BasisWindow::graded(3);
        let g = gram(&phi, &window, &dom);
        let idx = window.indices();
        let norm = |i: BasisIndex| Symbol::monomial([i.m, 0, i.n, 0], c_one());
        for (i, ii) in idx.iter().enumerate() {
            for (j, jj) in idx.iter().enumerate() {
                let fi = &phi * &norm(*ii);
                let fj = &phi * &norm(*jj);
                let m = crate::bergman::inner_product(&fj, &fi, &dom).coeff;
                let m = to_c64(&m) * ((ii.weight() * jj.weight()) as f64).sqrt();
                let pi_ = projection_coeffs(&phi, *ii, &dom);
                let pj = projection_coeffs(&phi, *jj, &dom);
                let mut p = Complex64::zero();
                for (k, a) in &pj {
                    for (l, b) in &pi_ {
                        if k == l {
                            p += a.to_c64() * b.to_c64().conj();
                        }
                    }
                }
                assert!((m - p - g.get(i, j)).norm() < 1e-12);
            }
        }
    }
}
