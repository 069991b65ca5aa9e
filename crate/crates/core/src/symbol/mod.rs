//! Polynomial symbols in `z, zbar, w, wbar` with exact complex-rational
//! coefficients.

mod disk_poly;
mod harmonic;
mod json;
mod slice;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::{c_one, c_real, format_complex, pow_c, pow_rat, to_c64, CRational, Rational};

pub use disk_poly::{DiskPoly, FloatDiskPoly};
pub use harmonic::{check_admissible, require_admissible, HarmonicityReport, LaurentTerm, Witness};
pub use json::{NumberLike, SymbolJson, TermJson};
pub use slice::{restrict, DiskSlice, Restriction, SliceParams};

/// Exponents of `z, zbar, w, wbar`.
pub type Exponents = [u32; 4];

const Z: usize = 0;
const ZBAR: usize = 1;
const W: usize = 2;
const WBAR: usize = 3;

/// One of the two coordinates of C^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coord {
    Z,
    W,
}

impl Coord {
    pub fn other(self) -> Coord {
        match self {
            Coord::Z => Coord::W,
            Coord::W => Coord::Z,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Coord::Z => 0,
            Coord::W => 1,
        }
    }

    fn slots(self) -> (usize, usize) {
        match self {
            Coord::Z => (Z, ZBAR),
            Coord::W => (W, WBAR),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coord::Z => "z",
            Coord::W => "w",
        })
    }
}

/// A polynomial symbol. Zero coefficients are never stored, so two symbols
/// are equal exactly when their term maps are.
///
/// `exact` is false when any coefficient came from decimal input; arithmetic
/// stays exact on the parsed value, the flag only travels with the results.
#[derive(Clone, Debug)]
pub struct Symbol {
    terms: BTreeMap<Exponents, CRational>,
    exact: bool,
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Symbol {}

impl Default for Symbol {
    fn default() -> Self {
        Symbol::zero()
    }
}

impl Symbol {
    pub fn zero() -> Self {
        Symbol { terms: BTreeMap::new(), exact: true }
    }

    pub fn constant(c: CRational) -> Self {
        Symbol::monomial([0; 4], c)
    }

    pub fn monomial(exps: Exponents, c: CRational) -> Self {
        let mut s = Symbol::zero();
        s.add_term(exps, c);
        s
    }

    pub fn z() -> Self {
        Symbol::monomial([1, 0, 0, 0], c_one())
    }

    pub fn zbar() -> Self {
        Symbol::monomial([0, 1, 0, 0], c_one())
    }

    pub fn w() -> Self {
        Symbol::monomial([0, 0, 1, 0], c_one())
    }

    pub fn wbar() -> Self {
        Symbol::monomial([0, 0, 0, 1], c_one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, CRational)>>(terms: I) -> Self {
        let mut s = Symbol::zero();
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Adds `c * monomial(exps)`, keeping the map canonical.
    pub fn add_term(&mut self, exps: Exponents, c: CRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(CRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &CRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &Exponents) -> Option<&CRational> {
        self.terms.get(exps)
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn with_exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    /// Total degree; `None` for the zero symbol.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when no term involves `zbar` or `wbar`.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|e| e[ZBAR] == 0 && e[WBAR] == 0)
    }

    pub fn scale(&self, c: &CRational) -> Symbol {
        let mut out = Symbol::zero().with_exact(self.exact);
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    /// Complex conjugate: `(a, b, c, d) -> (b, a, d, c)` with conjugated coefficients.
    pub fn conj(&self) -> Symbol {
        let mut out = Symbol::zero().with_exact(self.exact);
        for (e, v) in &self.terms {
            out.add_term([e[ZBAR], e[Z], e[WBAR], e[W]], v.conj());
        }
        out
    }

    fn partial(&self, slot: usize) -> Symbol {
        let mut out = Symbol::zero().with_exact(self.exact);
        for (e, v) in &self.terms {
            if e[slot] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[slot] -= 1;
            out.add_term(ne, v * c_real(Rational::from_integer(e[slot].into())));
        }
        out
    }

    pub fn d_z(&self) -> Symbol {
        self.partial(Z)
    }

    pub fn dbar_z(&self) -> Symbol {
        self.partial(ZBAR)
    }

    pub fn d_w(&self) -> Symbol {
        self.partial(W)
    }

    pub fn dbar_w(&self) -> Symbol {
        self.partial(WBAR)
    }

    /// Wirtinger `d/d(coord)`.
    pub fn d(&self, coord: Coord) -> Symbol {
        self.partial(coord.slots().0)
    }

    /// Wirtinger `d/d(conj coord)`.
    pub fn dbar(&self, coord: Coord) -> Symbol {
        self.partial(coord.slots().1)
    }

    /// `d^2 / d(coord) d(conj coord)`, a quarter of the Laplacian in that coordinate.
    pub fn laplacian(&self, coord: Coord) -> Symbol {
        self.dbar(coord).d(coord)
    }

    /// Exact evaluation at `(z, w)`.
    pub fn eval_exact(&self, z: &CRational, w: &CRational) -> CRational {
        let (zb, wb) = (z.conj(), w.conj());
        let mut acc = CRational::zero();
        for (e, v) in &self.terms {
            acc += v * pow_c(z, e[Z]) * pow_c(&zb, e[ZBAR]) * pow_c(w, e[W]) * pow_c(&wb, e[WBAR]);
        }
        acc
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.to_float().eval(z, w)
    }

    pub fn to_float(&self) -> FloatSymbol {
        FloatSymbol { terms: self.terms.iter().map(|(e, v)| (*e, to_c64(v))).collect() }
    }

    /// `phi(r1 z, r2 w)`: the symbol transported to the unit bidisk by the
    /// dilation that maps it onto the product of disks with radii `r1, r2`.
    pub fn dilate(&self, r1: &Rational, r2: &Rational) -> Symbol {
        let mut out = Symbol::zero().with_exact(self.exact);
        for (e, v) in &self.terms {
            let f = pow_rat(r1, e[Z] + e[ZBAR]) * pow_rat(r2, e[W] + e[WBAR]);
            out.add_term(*e, v * c_real(f));
        }
        out
    }

    /// Swaps the roles of `z` and `w`.
    pub fn swap(&self) -> Symbol {
        let mut out = Symbol::zero().with_exact(self.exact);
        for (e, v) in &self.terms {
            out.add_term([e[W], e[WBAR], e[Z], e[ZBAR]], v.clone());
        }
        out
    }

    /// `phi(u z, v w)` for exact unimodular (or arbitrary) constants `u, v`.
    pub fn compose_diagonal(&self, u: &CRational, v: &CRational) -> Symbol {
        let (ub, vb) = (u.conj(), v.conj());
        let mut out = Symbol::zero().with_exact(self.exact);
        for (e, c) in &self.terms {
            let f = pow_c(u, e[Z]) * pow_c(&ub, e[ZBAR]) * pow_c(v, e[W]) * pow_c(&vb, e[WBAR]);
            out.add_term(*e, c * f);
        }
        out
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        const NAMES: [&str; 4] = ["z", "zbar", "w", "wbar"];
        for (k, (e, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(NAMES)
                .filter(|(p, _)| **p > 0)
                .map(|(p, n)| if *p == 1 { n.to_string() } else { format!("{n}^{p}") })
                .collect();
            if mono.is_empty() {
                write!(f, "({})", format_complex(v))?;
            } else if *v == c_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({})*{}", format_complex(v), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Symbol {
    type Output = Symbol;
    fn add(self, rhs: &Symbol) -> Symbol {
        let mut out = self.clone().with_exact(self.exact && rhs.exact);
        for (e, v) in &rhs.terms {
            out.add_term(*e, v.clone());
        }
        out
    }
}

impl Sub for &Symbol {
    type Output = Symbol;
    fn sub(self, rhs: &Symbol) -> Symbol {
        self + &(-rhs)
    }
}

impl Neg for &Symbol {
    type Output = Symbol;
    fn neg(self) -> Symbol {
        let mut out = Symbol::zero().with_exact(self.exact);
        for (e, v) in &self.terms {
            out.add_term(*e, -v.clone());
        }
        out
    }
}

impl Mul for &Symbol {
    type Output = Symbol;
    fn mul(self, rhs: &Symbol) -> Symbol {
        let mut out = Symbol::zero().with_exact(self.exact && rhs.exact);
        for (e1, v1) in &self.terms {
            for (e2, v2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, v1 * v2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Symbol {
            type Output = Symbol;
            fn $m(self, rhs: Symbol) -> Symbol {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Symbol {
    type Output = Symbol;
    fn neg(self) -> Symbol {
        -&self
    }
}

/// Floating copy of a symbol for fast pointwise evaluation.
#[derive(Clone, Debug)]
pub struct FloatSymbol {
    terms: Vec<(Exponents, Complex64)>,
}

impl FloatSymbol {
    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        let (zb, wb) = (z.conj(), w.conj());
        self.terms.iter().map(|(e, c)| c * z.powu(e[Z]) * zb.powu(e[ZBAR]) * w.powu(e[W]) * wb.powu(e[WBAR])).sum()
    }

    /// One-variable function of the `varying` coordinate with the other
    /// coordinate frozen at `fixed`.
    pub fn freeze(&self, varying: Coord, fixed: Complex64) -> FloatDiskPoly {
        let (vs, vbs) = varying.slots();
        let (fs, fbs) = varying.other().slots();
        let fb = fixed.conj();
        FloatDiskPoly::from_terms(
            self.terms.iter().map(|(e, c)| (e[vs], e[vbs], c * fixed.powu(e[fs]) * fb.powu(e[fbs]))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{c_i, c_int, c_rat, rat};

    #[test]
    fn eval_examples() {
        let i = Complex64::i();
        assert_eq!(Symbol::zbar().eval(i, Complex64::new(0.0, 0.0)), -i);
        assert_eq!(Symbol::zero().eval(i, i), Complex64::new(0.0, 0.0));
        let s = &(&Symbol::zbar() * &Symbol::wbar()) + &Symbol::constant(c_int(2));
        assert_eq!(s.eval_exact(&c_int(1), &c_i()), c_rat(rat(2, 1), rat(-1, 1)));
    }

    #[test]
    fn wirtinger_examples() {
        assert_eq!(Symbol::zbar().dbar_z(), Symbol::constant(c_one()));
        let z3 = Symbol::monomial([3, 0, 0, 0], c_one());
        assert!(z3.dbar_z().is_zero());
        let s = Symbol::monomial([0, 1, 0, 2], c_one());
        assert_eq!(s.dbar_w(), Symbol::monomial([0, 1, 0, 1], c_int(2)));
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let s = &Symbol::z() - &Symbol::z();
        assert!(s.is_zero());
        assert_eq!(s, Symbol::zero());
    }

    #[test]
    fn conjugation_swaps_exponents() {
        let s = Symbol::monomial([2, 1, 0, 3], c_i());
        assert_eq!(s.conj(), Symbol::monomial([1, 2, 3, 0], -c_i()));
    }

    #[test]
    fn display_is_readable() {
        let s = &Symbol::zbar() + &Symbol::monomial([0, 0, 2, 0], c_int(3));
        assert_eq!(s.to_string(), "(3)*w^2 + zbar");
    }
}
