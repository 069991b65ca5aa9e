//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints its `criterion N: PASS|FAIL ...` line; any failure makes
//! the target exit nonzero.

use std::f64::consts::{E, FRAC_1_SQRT_2, PI};
use std::process::Command;
use std::time::Instant;

use essnorm_core::bergman::lemma1_check;
use essnorm_core::bounds::{evaluate_bounds, sandwich_check, SearchConfig, SANDWICH_TOL};
use essnorm_core::exact::{c_rat, c_real, rat, rat_int, CRational, Unimodular};
use essnorm_core::hankel::{
    apply_unitary, ess_norm_bracket, gram, gram_exact, gram_float, kernel_sequence_est, BasisWindow, BracketConfig,
    Transform,
};
use essnorm_core::symbol::{check_admissible, DiskPoly};
use essnorm_core::verify::{run_verification, VerifyConfig};
use essnorm_core::{Coord, ProductDomain, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

fn unit() -> ProductDomain {
    ProductDomain::unit_bidisk()
}

fn random_coeff(rng: &mut ChaCha8Rng) -> CRational {
    c_rat(rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)), rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
}

fn criterion_1_exact_zbar_gram() -> Outcome {
    let start = Instant::now();
    let window = BasisWindow::rectangle(20, 20);
    let exact = gram_exact(&Symbol::zbar(), &window, &unit());
    let float = gram_float(&Symbol::zbar(), &window, &unit());
    let mut exact_ok = exact.is_exact();
    let mut float_err = 0.0f64;
    for (i, idx) in window.indices().iter().enumerate() {
        let expected = rat(1, ((idx.m + 1) * (idx.m + 2)) as i64);
        let s = idx.weight() as i64;
        exact_ok &= exact.q_entry(i, i) * c_real(rat_int(s)) == c_real(expected.clone());
        float_err = float_err.max((float.get(i, i).re - 1.0 / ((idx.m + 1) * (idx.m + 2)) as f64).abs());
        for j in 0..window.len() {
            if j != i {
                exact_ok &= exact.entry(i, j).is_zero();
                float_err = float_err.max(float.get(i, j).norm());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = exact_ok && float_err <= 1e-12 && secs < 10.0;
    (pass, format!("exact diagonal {exact_ok}, float error {float_err:.2e}, {secs:.2} s"))
}

fn criterion_2_sharp_bracket() -> Outcome {
    let cfg = BracketConfig::default();
    assert_eq!(cfg.degree, 30);
    let search = SearchConfig::default();
    let zb = ess_norm_bracket(&Symbol::zbar(), &unit(), &cfg).unwrap();
    let zb_bounds = evaluate_bounds(&Symbol::zbar(), &unit(), &search).unwrap();
    let t2 = zb_bounds.thm2_lower.unwrap();
    let zbar_ok = [zb.lower_est, zb.upper_est, t2].iter().all(|v| (v - FRAC_1_SQRT_2).abs() <= 1e-6);

    let zw = &Symbol::zbar() * &Symbol::wbar();
    let b = ess_norm_bracket(&zw, &unit(), &cfg).unwrap();
    let t2w = evaluate_bounds(&zw, &unit(), &search).unwrap().thm2_lower.unwrap();
    let three = [b.lower_est, b.upper_est, t2w];
    let spread = three.iter().cloned().fold(f64::MIN, f64::max) - three.iter().cloned().fold(f64::MAX, f64::min);
    let pass = zbar_ok && spread <= 5e-3;
    (
        pass,
        format!(
            "zbar [{:.9}, {:.9}] thm2 {:.9}; zbar*wbar [{:.9}, {:.9}] thm2 {:.9} spread {spread:.2e}",
            zb.lower_est, zb.upper_est, t2, b.lower_est, b.upper_est, t2w
        ),
    )
}

fn criterion_3_sandwich_ordering() -> Outcome {
    let one = c_real(rat_int(1));
    let regression: Vec<(&str, Symbol)> = vec![
        ("zbar", Symbol::zbar()),
        ("wbar", Symbol::wbar()),
        ("zbar*wbar", &Symbol::zbar() * &Symbol::wbar()),
        ("zbar+wbar", &Symbol::zbar() + &Symbol::wbar()),
        ("zbar^2", Symbol::monomial([0, 2, 0, 0], one)),
        ("0.5*zbar", Symbol::zbar().scale(&c_real(rat(1, 2)))),
        ("2i*zbar", Symbol::zbar().scale(&c_rat(rat_int(0), rat_int(2)))),
    ];
    let mut failures = Vec::new();
    let mut zbar_upper = f64::NAN;
    for (name, phi) in &regression {
        assert!(check_admissible(phi, &unit()).admissible);
        let bounds = evaluate_bounds(phi, &unit(), &SearchConfig::default()).unwrap();
        let bracket = ess_norm_bracket(phi, &unit(), &BracketConfig::default()).unwrap();
        let s = sandwich_check(&bounds, &bracket, SANDWICH_TOL);
        if !s.pass {
            failures.push(format!("{name}: {:?}", s.rows));
        }
        if *name == "zbar" {
            zbar_upper = bounds.thm1_upper;
            let ordered =
                (bounds.thm1_lower - 0.25).abs() < 1e-12 && (bounds.thm2_lower.unwrap() - FRAC_1_SQRT_2).abs() < 1e-5;
            if !ordered {
                failures.push(format!("zbar bounds {} {:?}", bounds.thm1_lower, bounds.thm2_lower));
            }
        }
    }
    let closed = E.sqrt() * 2.0 * 2f64.sqrt();
    let upper_ok = (zbar_upper - closed).abs() <= 1e-9 && (zbar_upper - 4.663287).abs() < 1e-6;
    let pass = failures.is_empty() && upper_ok;
    (
        pass,
        format!(
            "{} symbols, zbar thm1_upper {zbar_upper:.9} (2 sqrt(2e) = {closed:.9}) {failures:?}",
            regression.len()
        ),
    )
}

fn criterion_4_closed_form_suite() -> Outcome {
    let start = Instant::now();
    let report = run_verification(&VerifyConfig::default()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let needed = [
        "bump integral",
        "bump gradient norm^2",
        "bump ratio tau0^2 sqrt(pi/2)",
        "wedge norm j=1",
        "wedge norm j=2",
        "wedge norm j=3",
    ];
    let mut worst = 0.0f64;
    let mut ok = true;
    for name in needed {
        match report.rows.iter().find(|r| r.name == name) {
            Some(r) => {
                let rel = r.abs_error / r.closed_form.abs();
                worst = worst.max(rel);
                ok &= r.pass && rel <= 1e-8;
            }
            None => ok = false,
        }
    }
    let pass = ok && report.pass && secs < 5.0;
    (pass, format!("{} rows, worst relative error {worst:.2e}, {secs:.3} s", report.rows.len()))
}

fn criterion_5_boundary_derivative_norms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let one = rat_int(1);
    let factor = DiskPoly::boundary_factor(&one);
    let mut exact_ok = true;
    for _ in 0..50 {
        let mut q = DiskPoly::zero();
        for _ in 0..rng.gen_range(1..=4) {
            q.add_term(rng.gen_range(0..=3), rng.gen_range(0..=3), random_coeff(&mut rng));
        }
        let gamma = &factor * &q;
        let v = lemma1_check(&gamma, &one).unwrap();
        exact_ok &= v.d_xi == v.d_xibar;
    }
    let sq = lemma1_check(&factor.pow(2), &one).unwrap();
    let (a, b) = (sq.d_xi.to_f64(), sq.d_xibar.to_f64());
    let float_ok = (a - PI / 3.0).abs() <= 1e-12 && (b - PI / 3.0).abs() <= 1e-12;
    (exact_ok && float_ok, format!("50 random exact pairs equal: {exact_ok}; (1-|xi|^2)^2 gives {a:.15} and {b:.15}"))
}

fn criterion_6_unitary_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let window = BasisWindow::graded(12);
    let mut worst = 0.0f64;
    let mut admissible = true;
    for _ in 0..20 {
        let mut phi = Symbol::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let (a, b) = (rng.gen_range(0..=3u32), rng.gen_range(0..=3u32));
            let e = match (rng.gen_bool(0.5), rng.gen_bool(0.5)) {
                (true, true) => [0, a, 0, b],
                (true, false) => [0, a, b, 0],
                (false, true) => [a, 0, 0, b],
                (false, false) => [a, 0, b, 0],
            };
            phi.add_term(e, random_coeff(&mut rng));
        }
        admissible &= check_admissible(&phi, &unit()).admissible;
        let base = gram(&phi, &window, &unit()).eigenvalues();
        let t1 = rat(rng.gen_range(-5..=5), rng.gen_range(1..=5));
        let t2 = rat(rng.gen_range(-5..=5), rng.gen_range(1..=5));
        let rot = Transform::Rotate(Unimodular::from_tangent(&t1), Unimodular::from_tangent(&t2));
        for t in [Transform::Swap, rot] {
            let ev = gram(&apply_unitary(&phi, &t, &unit()).unwrap(), &window, &unit()).eigenvalues();
            let gap = base.iter().zip(&ev).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            worst = worst.max(gap);
        }
    }
    (admissible && worst <= 1e-12, format!("20 symbols at N = 12, largest eigenvalue gap {worst:.2e}"))
}

fn run_cli(args: &[&str], config: &str) -> i32 {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, config).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_essnorm")).args(args).arg("--config").arg(&path).output().unwrap();
    out.status.code().unwrap_or(-1)
}

fn criterion_7_admissibility_gate() -> Outcome {
    let one = c_real(rat_int(1));
    let accept = [
        Symbol::zbar(),
        Symbol::wbar(),
        &Symbol::zbar() * &Symbol::wbar(),
        &Symbol::zbar() + &Symbol::wbar(),
        &Symbol::z() * &Symbol::w(),
        Symbol::monomial([2, 0, 3, 0], one.clone()),
    ];
    let reject = [
        &Symbol::z() * &Symbol::zbar(),
        &Symbol::w() * &Symbol::wbar(),
        &Symbol::zbar() * &(&Symbol::constant(one) - &(&Symbol::w() * &Symbol::wbar())),
    ];
    let accept_ok = accept.iter().all(|s| check_admissible(s, &unit()).admissible);
    let reject_ok = reject.iter().all(|s| {
        let r = check_admissible(s, &unit());
        !r.admissible && !r.witnesses.is_empty() && r.witnesses.iter().all(|w| !w.residual.is_empty())
    });
    let codes = [
        run_cli(&["check-symbol"], r#"{"symbol":{"terms":[{"zbar":1,"re":1}]}}"#),
        run_cli(&["check-symbol"], r#"{"symbol":{"terms":[{"z":1,"zbar":1,"re":1}]}}"#),
        run_cli(&["check-symbol"], r#"{"symbol":{"terms":[{"zbar":1,"re":1}"#),
        run_cli(&["bounds"], r#"{"symbol":{"terms":[{"w":1,"wbar":1,"re":1}]}}"#),
        run_cli(
            &["essnorm"],
            r#"{"symbol":{"terms":[{"zbar":1,"re":1}]},"truncation":{"degree":5,"tail_starts":[5]}}"#,
        ),
    ];
    let codes_ok = codes == [0, 1, 2, 1, 2];
    (accept_ok && reject_ok && codes_ok, format!("accept {accept_ok}, reject {reject_ok}, exit codes {codes:?}"))
}

fn wbar_closed_form(x: f64) -> f64 {
    let mut s = 0.0;
    let mut xm = 1.0;
    let mut m = 0.0;
    while xm > 1e-20 {
        s += xm / (m + 2.0);
        xm *= x;
        m += 1.0;
    }
    (1.0 - x).powi(2) * s
}

fn criterion_8_kernel_sequence() -> Outcome {
    let ps = [0.0, 0.5, 0.9, 0.99];
    let zb = kernel_sequence_est(&Symbol::zbar(), &unit(), Coord::W, &ps, None, 4, 0.0).unwrap();
    let flat = zb.iter().map(|k| (k.value - FRAC_1_SQRT_2).abs()).fold(0.0, f64::max);
    let wb = kernel_sequence_est(&Symbol::wbar(), &unit(), Coord::W, &ps, None, 4, 0.0).unwrap();
    let decreasing = wb.windows(2).all(|w| w[1].value < w[0].value);
    let closed = wb.iter().zip(ps).map(|(k, p)| (k.value - wbar_closed_form(p * p).sqrt()).abs()).fold(0.0, f64::max);
    let pass = flat <= 1e-8 && decreasing && closed <= 1e-6;
    let values: Vec<String> = wb.iter().map(|k| format!("{:.6}", k.value)).collect();
    (
        pass,
        format!("zbar deviation {flat:.2e}; wbar {values:?} decreasing {decreasing}, closed-form error {closed:.2e}"),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1_exact_zbar_gram),
        (2, criterion_2_sharp_bracket),
        (3, criterion_3_sandwich_ordering),
        (4, criterion_4_closed_form_suite),
        (5, criterion_5_boundary_derivative_norms),
        (6, criterion_6_unitary_invariance),
        (7, criterion_7_admissibility_gate),
        (8, criterion_8_kernel_sequence),
    ];
    let mut failed = Vec::new();
    for (n, run) in criteria {
        let (pass, detail) = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
