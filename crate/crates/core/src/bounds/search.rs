use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bergman::ProductDomain;
use crate::error::{Error, Result};
use crate::symbol::{Coord, FloatDiskPoly, SliceParams, Symbol};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub grid_theta: usize,
    pub grid_center: usize,
    pub grid_scale: usize,
    /// `[angular, radial]` resolution of the inner disk grid.
    pub grid_inner: [usize; 2],
    pub refine_rounds: usize,
    /// Disk families searched; an empty list gives the empty family.
    pub families: Vec<Coord>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid_theta: 64,
            grid_center: 33,
            grid_scale: 32,
            grid_inner: [64, 16],
            refine_rounds: 3,
            families: vec![Coord::Z, Coord::W],
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [self.grid_theta, self.grid_center, self.grid_scale, self.grid_inner[0], self.grid_inner[1]];
        if counts.contains(&0) {
            return Err(Error::InvalidParameter("search grid sizes must be positive".into()));
        }
        Ok(())
    }
}

/// Grid point of the maximin search: boundary angle, disk center and radius.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Candidate {
    family: Coord,
    theta: f64,
    center: Complex64,
    rho: f64,
}

impl Candidate {
    fn key_cmp(&self, other: &Candidate) -> Ordering {
        self.family
            .cmp(&other.family)
            .then(self.theta.total_cmp(&other.theta))
            .then(self.center.re.total_cmp(&other.center.re))
            .then(self.center.im.total_cmp(&other.center.im))
            .then(self.rho.total_cmp(&other.rho))
    }
}

/// Running best with the deterministic tie rule: larger value wins, equal
/// values go to the lexicographically smaller key.
struct Best {
    value: f64,
    at: Option<Candidate>,
}

impl Best {
    fn new() -> Self {
        Best { value: f64::NEG_INFINITY, at: None }
    }

    /// Whether a candidate with value at most `bound` could still win.
    fn reachable(&self, bound: f64, c: &Candidate) -> bool {
        match self.at {
            None => true,
            Some(b) => bound > self.value || (bound == self.value && c.key_cmp(&b) == Ordering::Less),
        }
    }

    fn offer(&mut self, value: f64, c: Candidate) {
        if self.reachable(value, &c) && value >= self.value {
            self.value = value;
            self.at = Some(c);
        }
    }

    /// Replaces the incumbent only on a strict increase.
    fn improve(&mut self, value: f64, c: Candidate) {
        if value > self.value {
            self.value = value;
            self.at = Some(c);
        }
    }
}

/// Polar grid `s e^{i a}` on the closed unit disk (`s = i / n_rad`,
/// `a = 2 pi j / n_ang`), stored coarse-to-fine so that running minima
/// settle after a few evaluations.
pub(crate) struct InnerGrid {
    offsets: Vec<(Complex64, f64, f64)>,
    n_rad: usize,
    n_ang: usize,
}

impl InnerGrid {
    pub(crate) fn new(grid: [usize; 2]) -> Self {
        let [n_ang, n_rad] = grid;
        let level = |i: usize, n: usize| if i == 0 || i == n { 0 } else { u32::BITS - i.trailing_zeros() };
        let mut pts: Vec<(u32, u32, u32, usize, usize)> = vec![(0, 0, 0, 0, 0)];
        for i in 1..=n_rad {
            for j in 0..n_ang {
                let (li, lj) = (level(i, n_rad), level(j, n_ang));
                pts.push((li.max(lj), li, lj, n_rad - i, j));
            }
        }
        pts.sort();
        let offsets = pts
            .into_iter()
            .map(|(_, _, _, ri, j)| {
                let s = (n_rad - ri) as f64 / n_rad as f64;
                let a = 2.0 * PI * j as f64 / n_ang as f64;
                (Complex64::from_polar(s, a), s, a)
            })
            .collect();
        InnerGrid { offsets, n_rad, n_ang }
    }

    /// Infimum of `f` over the closed disk `|v - center| <= rho`: grid plus
    /// `rounds` of local refinement. Returns `None` as soon as `give_up`
    /// accepts the running minimum.
    pub(crate) fn inf<F: Fn(Complex64) -> f64>(
        &self,
        f: F,
        center: Complex64,
        rho: f64,
        rounds: usize,
        give_up: &dyn Fn(f64) -> bool,
    ) -> Option<(f64, Complex64)> {
        let mut best = (f64::INFINITY, 0.0f64, 0.0f64);
        for (u, s, a) in &self.offsets {
            let v = f(center + u * rho);
            if v < best.0 {
                best = (v, *s, *a);
                if give_up(v) {
                    return None;
                }
            }
        }
        let point = |s: f64, a: f64| center + Complex64::from_polar(rho * s, a);
        let (mut ds, mut da) = (1.0 / self.n_rad as f64, 2.0 * PI / self.n_ang as f64);
        for _ in 0..rounds {
            ds /= 4.0;
            da /= 4.0;
            let (s0, a0) = (best.1, best.2);
            for i in -2i32..=2 {
                for j in -2i32..=2 {
                    let s = (s0 + i as f64 * ds).clamp(0.0, 1.0);
                    let a = a0 + j as f64 * da;
                    let v = f(point(s, a));
                    if v < best.0 {
                        best = (v, s, a);
                        if give_up(v) {
                            return None;
                        }
                    }
                }
            }
        }
        Some((best.0, point(best.1, best.2)))
    }
}

/// Result of `sup_F |F'(0)|^2 inf_D |phi_vbar|` over affine boundary disks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Maximin {
    pub value: f64,
    pub argmax: Option<SliceParams>,
    pub candidates: usize,
    pub evaluated: usize,
}

struct FamilyData {
    family: Coord,
    radius: f64,
    fixed_radius: f64,
    dbar: crate::symbol::FloatSymbol,
}

impl FamilyData {
    fn new(phi: &Symbol, dom: &ProductDomain, family: Coord) -> Self {
        FamilyData {
            family,
            radius: dom.radius_f64(family),
            fixed_radius: dom.radius_f64(family.other()),
            dbar: phi.dbar(family).to_float(),
        }
    }

    fn slice_fn(&self, theta: f64) -> FloatDiskPoly {
        self.dbar.freeze(self.family, Complex64::from_polar(self.fixed_radius, theta))
    }
}

/// `min |h|` over the center and sixteen rim points: an upper bound for the
/// inner infimum that is cheap enough to screen every candidate.
fn coarse_min(h: &FloatDiskPoly, c: &Candidate) -> f64 {
    let mut m = h.eval(c.center).norm();
    for j in 0..16 {
        let v = c.center + Complex64::from_polar(c.rho, PI * j as f64 / 8.0);
        m = m.min(h.eval(v).norm());
    }
    m
}

fn objective(h: &FloatDiskPoly, c: &Candidate, grid: &InnerGrid, rounds: usize, best: &Best) -> Option<f64> {
    let rho2 = c.rho * c.rho;
    let give_up = |m: f64| !best.reachable(rho2 * m, c);
    grid.inf(|v| h.eval(v).norm(), c.center, c.rho, rounds, &give_up).map(|(m, _)| rho2 * m)
}

/// Maximin search over the configured families (grid, then refinement).
pub fn maximin_search(phi: &Symbol, dom: &ProductDomain, cfg: &SearchConfig) -> Result<Maximin> {
    cfg.validate()?;
    let mut best = Best::new();
    let (mut candidates, mut evaluated) = (0usize, 0usize);
    let mut families: Vec<Coord> = cfg.families.clone();
    families.sort();
    families.dedup();
    let data: Vec<FamilyData> = families.iter().map(|f| FamilyData::new(phi, dom, *f)).collect();
    let grid = InnerGrid::new(cfg.grid_inner);

    for fam in &data {
        let r = fam.radius;
        let mut centers = vec![Complex64::new(0.0, 0.0)];
        for i in 1..cfg.grid_center {
            for j in 0..cfg.grid_center {
                let rad = r * i as f64 / cfg.grid_center as f64;
                centers.push(Complex64::from_polar(rad, 2.0 * PI * j as f64 / cfg.grid_center as f64));
            }
        }
        for t in 0..cfg.grid_theta {
            let theta = 2.0 * PI * t as f64 / cfg.grid_theta as f64;
            let h = fam.slice_fn(theta);
            let mut cands: Vec<(f64, Candidate)> = Vec::new();
            for a in &centers {
                let ha = h.eval(*a).norm();
                for k in 1..=cfg.grid_scale {
                    let rho = r * k as f64 / cfg.grid_scale as f64;
                    if a.norm() + rho > r * (1.0 + 1e-12) {
                        break;
                    }
                    let c = Candidate { family: fam.family, theta, center: *a, rho };
                    cands.push((rho * rho * ha, c));
                }
            }
            candidates += cands.len();
            cands.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.key_cmp(&y.1)));
            for (bound, c) in cands {
                if !best.reachable(bound, &c) {
                    break;
                }
                if !best.reachable(c.rho * c.rho * coarse_min(&h, &c), &c) {
                    continue;
                }
                evaluated += 1;
                if let Some(v) = objective(&h, &c, &grid, cfg.refine_rounds, &best) {
                    best.offer(v, c);
                }
            }
        }
    }

    // local refinement around the grid winner; ties keep the incumbent
    if let Some(start) = best.at {
        let fam = data.iter().find(|d| d.family == start.family).expect("family present");
        let r = fam.radius;
        let mut steps = [
            2.0 * PI / cfg.grid_theta as f64,
            r / cfg.grid_center as f64,
            r / cfg.grid_center as f64,
            r / cfg.grid_scale as f64,
        ];
        for _ in 0..cfg.refine_rounds {
            for s in steps.iter_mut() {
                *s /= 4.0;
            }
            let c0 = best.at.expect("best set");
            for dt in -2i32..=2 {
                let theta = c0.theta + dt as f64 * steps[0];
                let h = fam.slice_fn(theta);
                for dx in -2i32..=2 {
                    for dy in -2i32..=2 {
                        let center = c0.center + Complex64::new(dx as f64 * steps[1], dy as f64 * steps[2]);
                        for dr in -2i32..=2 {
                            let rho = c0.rho + dr as f64 * steps[3];
                            if rho <= 0.0 || center.norm() + rho > r * (1.0 + 1e-12) {
                                continue;
                            }
                            let c = Candidate { family: fam.family, theta, center, rho };
                            candidates += 1;
                            if rho * rho * coarse_min(&h, &c) <= best.value {
                                continue;
                            }
                            evaluated += 1;
                            if let Some(v) = objective(&h, &c, &grid, cfg.refine_rounds, &best) {
                                best.improve(v, c);
                            }
                        }
                    }
                }
            }
        }
    }

    let value = best.value.max(0.0);
    let argmax = best.at.map(|c| SliceParams {
        family: c.family,
        theta: c.theta,
        center: c.center,
        scale: Complex64::new(c.rho, 0.0),
    });
    Ok(Maximin { value, argmax, candidates, evaluated })
}

/// Point where `|phi_vbar|` is largest over the boundary disks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UpperArgmax {
    pub family: Coord,
    pub theta: f64,
    pub point: Complex64,
}

/// `sup |phi_vbar(v, r e^{i theta})|` over `|v| <= r_v` and both families.
pub fn sup_dbar(phi: &Symbol, dom: &ProductDomain, cfg: &SearchConfig) -> Result<(f64, Option<UpperArgmax>)> {
    cfg.validate()?;
    let mut families: Vec<Coord> = cfg.families.clone();
    families.sort();
    families.dedup();
    let mut best: (f64, Option<UpperArgmax>) = (0.0, None);
    for f in families {
        let fam = FamilyData::new(phi, dom, f);
        let r = fam.radius;
        let n_ang = cfg.grid_inner[0];
        let mut local: (f64, f64, Complex64) = (f64::NEG_INFINITY, 0.0, Complex64::new(0.0, 0.0));
        for t in 0..cfg.grid_theta {
            let theta = 2.0 * PI * t as f64 / cfg.grid_theta as f64;
            let h = fam.slice_fn(theta);
            for i in 0..=cfg.grid_center {
                let rad = r * i as f64 / cfg.grid_center as f64;
                let angles = if i == 0 { 1 } else { n_ang };
                for j in 0..angles {
                    let v = Complex64::from_polar(rad, 2.0 * PI * j as f64 / n_ang as f64);
                    let val = h.eval(v).norm();
                    if val > local.0 {
                        local = (val, theta, v);
                    }
                }
            }
        }
        let mut steps = [2.0 * PI / cfg.grid_theta as f64, r / cfg.grid_center as f64];
        for _ in 0..cfg.refine_rounds {
            steps[0] /= 4.0;
            steps[1] /= 4.0;
            let (_, t0, v0) = local;
            for dt in -2i32..=2 {
                let theta = t0 + dt as f64 * steps[0];
                let h = fam.slice_fn(theta);
                for dx in -2i32..=2 {
                    for dy in -2i32..=2 {
                        let mut v = v0 + Complex64::new(dx as f64 * steps[1], dy as f64 * steps[1]);
                        if v.norm() > r {
                            v *= r / v.norm();
                        }
                        let val = h.eval(v).norm();
                        if val > local.0 {
                            local = (val, theta, v);
                        }
                    }
                }
            }
        }
        if local.0 > best.0 {
            best = (local.0, Some(UpperArgmax { family: f, theta: local.1, point: local.2 }));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{c_int, c_one};

    fn small() -> SearchConfig {
        SearchConfig {
            grid_theta: 8,
            grid_center: 9,
            grid_scale: 8,
            grid_inner: [32, 8],
            refine_rounds: 2,
            ..Default::default()
        }
    }

    #[test]
    fn zbar_maximin_is_one() {
        let m = maximin_search(&Symbol::zbar(), &ProductDomain::unit_bidisk(), &small()).unwrap();
        assert!((m.value - 1.0).abs() < 1e-15);
        let a = m.argmax.unwrap();
        assert_eq!(a.family, Coord::Z);
        assert_eq!(a.center, Complex64::new(0.0, 0.0));
        assert_eq!(a.scale.re, 1.0);
    }

    #[test]
    fn holomorphic_is_zero() {
        let m = maximin_search(&(&Symbol::z() * &Symbol::w()), &ProductDomain::unit_bidisk(), &small()).unwrap();
        assert_eq!(m.value, 0.0);
        let (s, _) = sup_dbar(&Symbol::z(), &ProductDomain::unit_bidisk(), &small()).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn empty_family_gives_zero() {
        let cfg = SearchConfig { families: vec![], ..small() };
        let m = maximin_search(&Symbol::zbar(), &ProductDomain::unit_bidisk(), &cfg).unwrap();
        assert_eq!(m.value, 0.0);
        assert!(m.argmax.is_none());
    }

    #[test]
    fn zbar_squared_optimum() {
        // sup rho^2 * 2 (|a| - rho) with |a| + rho <= 1 is 2/27 at rho = 1/3
        let phi = Symbol::monomial([0, 2, 0, 0], c_one());
        let m = maximin_search(&phi, &ProductDomain::unit_bidisk(), &SearchConfig::default()).unwrap();
        assert!((m.value - 2.0 / 27.0).abs() < 1e-4, "{}", m.value);
        assert!(m.value <= 2.0 / 27.0 + 1e-12);
    }

    #[test]
    fn sup_dbar_scales_with_coefficient() {
        let phi = Symbol::zbar().scale(&c_int(3));
        let (s, arg) = sup_dbar(&phi, &ProductDomain::unit_bidisk(), &small()).unwrap();
        assert!((s - 3.0).abs() < 1e-14);
        assert_eq!(arg.unwrap().family, Coord::Z);
    }
}
