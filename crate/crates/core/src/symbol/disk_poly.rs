use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::exact::{c_real, pow_c, pow_rat, to_c64, CRational, PiScaled, Rational};

/// Polynomial in one complex variable and its conjugate, `sum c_{pq} xi^p conj(xi)^q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiskPoly {
    terms: BTreeMap<(u32, u32), CRational>,
}

impl DiskPoly {
    pub fn zero() -> Self {
        DiskPoly::default()
    }

    pub fn constant(c: CRational) -> Self {
        DiskPoly::monomial(0, 0, c)
    }

    pub fn monomial(p: u32, q: u32, c: CRational) -> Self {
        let mut out = DiskPoly::zero();
        out.add_term(p, q, c);
        out
    }

    pub fn xi() -> Self {
        DiskPoly::monomial(1, 0, crate::exact::c_one())
    }

    pub fn xibar() -> Self {
        DiskPoly::monomial(0, 1, crate::exact::c_one())
    }

    /// `radius^2 - |xi|^2`, which vanishes on the circle `|xi| = radius`.
    pub fn boundary_factor(radius: &Rational) -> Self {
        &DiskPoly::constant(c_real(radius * radius)) - &DiskPoly::monomial(1, 1, crate::exact::c_one())
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: CRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q)).or_insert_with(CRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: u32, q: u32) -> Option<&CRational> {
        self.terms.get(&(p, q))
    }

    pub fn scale(&self, c: &CRational) -> DiskPoly {
        let mut out = DiskPoly::zero();
        for ((p, q), v) in &self.terms {
            out.add_term(*p, *q, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> DiskPoly {
        let mut out = DiskPoly::constant(crate::exact::c_one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn d_xi(&self) -> DiskPoly {
        let mut out = DiskPoly::zero();
        for ((p, q), v) in &self.terms {
            if *p > 0 {
                out.add_term(p - 1, *q, v * c_real(Rational::from_integer((*p).into())));
            }
        }
        out
    }

    pub fn d_xibar(&self) -> DiskPoly {
        let mut out = DiskPoly::zero();
        for ((p, q), v) in &self.terms {
            if *q > 0 {
                out.add_term(*p, q - 1, v * c_real(Rational::from_integer((*q).into())));
            }
        }
        out
    }

    pub fn eval_exact(&self, xi: &CRational) -> CRational {
        let xb = xi.conj();
        self.terms.iter().map(|((p, q), v)| v * pow_c(xi, *p) * pow_c(&xb, *q)).fold(CRational::zero(), |a, b| a + b)
    }

    pub fn to_float(&self) -> FloatDiskPoly {
        FloatDiskPoly::from_terms(self.terms.iter().map(|((p, q), v)| (*p, *q, to_c64(v))))
    }

    /// Laurent coefficients of the restriction to `|xi| = radius`, obtained by
    /// substituting `conj(xi) = radius^2 / xi`. Zero entries are dropped, so an
    /// empty result means the polynomial vanishes identically on the circle.
    pub fn circle_residual(&self, radius: &Rational) -> BTreeMap<i64, CRational> {
        let r2 = radius * radius;
        let mut out: BTreeMap<i64, CRational> = BTreeMap::new();
        for ((p, q), v) in &self.terms {
            let k = *p as i64 - *q as i64;
            *out.entry(k).or_insert_with(CRational::zero) += v * c_real(pow_rat(&r2, *q));
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Exact squared L^2 norm over the disk `|xi| < radius`, as a multiple of pi.
    pub fn norm_sq(&self, radius: &Rational) -> PiScaled {
        let r2 = radius * radius;
        let mut acc = CRational::zero();
        for ((p1, q1), v1) in &self.terms {
            for ((p2, q2), v2) in &self.terms {
                // xi^{p1} conj(xi)^{q1} * conj(xi^{p2} conj(xi)^{q2})
                let a = p1 + q2;
                let b = q1 + p2;
                if a != b {
                    continue;
                }
                let m = pow_rat(&r2, a + 1) / Rational::from_integer((a + 1).into());
                acc += v1 * v2.conj() * c_real(m);
            }
        }
        PiScaled { coeff: acc, power: 1 }
    }
}

impl Add for &DiskPoly {
    type Output = DiskPoly;
    fn add(self, rhs: &DiskPoly) -> DiskPoly {
        let mut out = self.clone();
        for ((p, q), v) in &rhs.terms {
            out.add_term(*p, *q, v.clone());
        }
        out
    }
}

impl Sub for &DiskPoly {
    type Output = DiskPoly;
    fn sub(self, rhs: &DiskPoly) -> DiskPoly {
        let mut out = self.clone();
        for ((p, q), v) in &rhs.terms {
            out.add_term(*p, *q, -v.clone());
        }
        out
    }
}

impl Mul for &DiskPoly {
    type Output = DiskPoly;
    fn mul(self, rhs: &DiskPoly) -> DiskPoly {
        let mut out = DiskPoly::zero();
        for ((p1, q1), v1) in &self.terms {
            for ((p2, q2), v2) in &rhs.terms {
                out.add_term(p1 + p2, q1 + q2, v1 * v2);
            }
        }
        out
    }
}

const POW_CACHE: usize = 16;

/// Floating one-variable polynomial in `xi, conj(xi)`, tuned for the many
/// pointwise evaluations of grid searches.
#[derive(Clone, Debug)]
pub struct FloatDiskPoly {
    terms: Vec<(u32, u32, Complex64)>,
    max_p: u32,
    max_q: u32,
}

impl FloatDiskPoly {
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Complex64)>>(terms: I) -> Self {
        let mut merged: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (p, q, c) in terms {
            *merged.entry((p, q)).or_default() += c;
        }
        let terms: Vec<_> =
            merged.into_iter().filter(|(_, c)| *c != Complex64::zero()).map(|((p, q), c)| (p, q, c)).collect();
        let max_p = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let max_q = terms.iter().map(|t| t.1).max().unwrap_or(0);
        FloatDiskPoly { terms, max_p, max_q }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, xi: Complex64) -> Complex64 {
        if self.max_p as usize >= POW_CACHE || self.max_q as usize >= POW_CACHE {
            let xb = xi.conj();
            return self.terms.iter().map(|(p, q, c)| c * xi.powu(*p) * xb.powu(*q)).sum();
        }
        let mut xp = [Complex64::new(1.0, 0.0); POW_CACHE];
        let mut xq = [Complex64::new(1.0, 0.0); POW_CACHE];
        let xb = xi.conj();
        for k in 1..=self.max_p as usize {
            xp[k] = xp[k - 1] * xi;
        }
        for k in 1..=self.max_q as usize {
            xq[k] = xq[k - 1] * xb;
        }
        self.terms.iter().map(|(p, q, c)| c * xp[*p as usize] * xq[*q as usize]).sum()
    }
}
