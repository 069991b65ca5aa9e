#![allow(dead_code)]

use essnorm_core::exact::{c_rat, rat, CRational, Rational};
use essnorm_core::symbol::{DiskPoly, Exponents};
use essnorm_core::Symbol;
use proptest::prelude::*;

pub fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn coeff() -> impl Strategy<Value = CRational> {
    (small_rat(), small_rat()).prop_map(|(re, im)| c_rat(re, im))
}

pub fn exps(max: u32) -> impl Strategy<Value = Exponents> {
    [0..=max, 0..=max, 0..=max, 0..=max]
}

pub fn symbol(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Symbol> {
    prop::collection::vec((exps(max_exp), coeff()), 1..=max_terms).prop_map(Symbol::from_terms)
}

/// Sums of `z^a w^c` times at most one conjugate per coordinate: every
/// restriction to a boundary disk is harmonic.
pub fn admissible_symbol(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Symbol> {
    let term = (0..=max_exp, any::<bool>(), 0..=max_exp, any::<bool>(), coeff()).prop_map(|(a, zc, b, wc, c)| {
        let e = [if zc { 0 } else { a }, if zc { a } else { 0 }, if wc { 0 } else { b }, if wc { b } else { 0 }];
        (e, c)
    });
    prop::collection::vec(term, 1..=max_terms).prop_map(Symbol::from_terms)
}

pub fn disk_poly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = DiskPoly> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, coeff()), 1..=max_terms).prop_map(|ts| {
        let mut p = DiskPoly::zero();
        for (a, b, c) in ts {
            p.add_term(a, b, c);
        }
        p
    })
}
