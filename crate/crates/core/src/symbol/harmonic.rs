use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{Coord, Symbol};
use crate::bergman::ProductDomain;
use crate::error::{Error, Result};
use crate::exact::{c_real, format_complex, pow_rat, CRational};

/// One residual term `coeff * v^a * conj(v)^b * f^k` of the mixed second
/// derivative restricted to the boundary circle of the frozen coordinate `f`
/// (`k` may be negative after substituting `conj(f) = r^2 / f`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentTerm {
    pub vary: [u32; 2],
    pub fixed_exp: i64,
    pub coeff: String,
    #[serde(skip)]
    pub exact: CRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub family: Coord,
    pub residual: Vec<LaurentTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicityReport {
    pub admissible: bool,
    pub witnesses: Vec<Witness>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fixed = self.family.other();
        let parts: Vec<String> = self
            .residual
            .iter()
            .map(|t| {
                let mut s = format!("({})", t.coeff);
                if t.vary[0] > 0 {
                    s += &format!("*{}^{}", self.family, t.vary[0]);
                }
                if t.vary[1] > 0 {
                    s += &format!("*{}bar^{}", self.family, t.vary[1]);
                }
                if t.fixed_exp != 0 {
                    s += &format!("*{}^{}", fixed, t.fixed_exp);
                }
                s
            })
            .collect();
        write!(f, "{}-family residual: {}", self.family, parts.join(" + "))
    }
}

/// Checks that `v -> s(v, f)` is harmonic for every `f` on the boundary
/// circle of the other coordinate, for both coordinate families.
pub fn check_admissible(s: &Symbol, dom: &ProductDomain) -> HarmonicityReport {
    let mut witnesses = Vec::new();
    for family in [Coord::Z, Coord::W] {
        let lap = s.laplacian(family);
        let r = dom.radius(family.other());
        let r2 = r * r;
        let (vs, vbs) = family.slots();
        let (fs, fbs) = family.other().slots();
        let mut residual: BTreeMap<([u32; 2], i64), CRational> = BTreeMap::new();
        for (e, c) in lap.terms() {
            let k = e[fs] as i64 - e[fbs] as i64;
            *residual.entry(([e[vs], e[vbs]], k)).or_insert_with(CRational::zero) += c * c_real(pow_rat(&r2, e[fbs]));
        }
        let residual: Vec<LaurentTerm> = residual
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((vary, fixed_exp), c)| LaurentTerm { vary, fixed_exp, coeff: format_complex(&c), exact: c })
            .collect();
        if !residual.is_empty() {
            witnesses.push(Witness { family, residual });
        }
    }
    HarmonicityReport { admissible: witnesses.is_empty(), witnesses }
}

pub fn require_admissible(s: &Symbol, dom: &ProductDomain) -> Result<()> {
    let report = check_admissible(s, dom);
    if report.admissible {
        Ok(())
    } else {
        Err(Error::NotAdmissible(Box::new(report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{c_int, c_one};

    fn unit() -> ProductDomain {
        ProductDomain::unit_bidisk()
    }

    #[test]
    fn zbar_is_admissible() {
        assert!(check_admissible(&Symbol::zbar(), &unit()).admissible);
    }

    #[test]
    fn modulus_squared_fails_with_unit_residual() {
        let s = &Symbol::z() * &Symbol::zbar();
        let r = check_admissible(&s, &unit());
        assert!(!r.admissible);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].family, Coord::Z);
        assert_eq!(r.witnesses[0].residual[0].exact, c_one());
        assert_eq!(r.witnesses[0].residual[0].vary, [0, 0]);
    }

    #[test]
    fn boundary_vanishing_factor_passes_one_family_only() {
        // zbar (1 - w wbar)
        let one_minus = &Symbol::constant(c_one()) - &(&Symbol::w() * &Symbol::wbar());
        let s = &Symbol::zbar() * &one_minus;
        let r = check_admissible(&s, &unit());
        assert!(!r.admissible);
        assert_eq!(r.witnesses.len(), 1);
        let w = &r.witnesses[0];
        assert_eq!(w.family, Coord::W);
        // -zbar on |z| = 1 becomes -z^{-1}
        assert_eq!(w.residual.len(), 1);
        assert_eq!(w.residual[0].exact, c_int(-1));
        assert_eq!(w.residual[0].fixed_exp, -1);
    }

    #[test]
    fn radius_enters_the_substitution() {
        // zz̄ (r2^2 - w wbar) is harmonic in z on |w| = r2 only for the right r2
        let dom = ProductDomain::new(crate::exact::rat_int(1), crate::exact::rat_int(2)).unwrap();
        let factor = &Symbol::constant(c_int(4)) - &(&Symbol::w() * &Symbol::wbar());
        let s = &(&Symbol::z() * &Symbol::zbar()) * &factor;
        let r = check_admissible(&s, &dom);
        assert!(r.witnesses.iter().all(|w| w.family == Coord::W));
        let r = check_admissible(&s, &unit());
        assert!(r.witnesses.iter().any(|w| w.family == Coord::Z));
    }
}
