use std::collections::BTreeMap;
use std::time::Instant;

use essnorm_core::bounds::{evaluate_bounds, sandwich_check, BoundReport, SandwichReport, SANDWICH_TOL};
use essnorm_core::hankel::{ess_norm_bracket, EssNormBracket};
use essnorm_core::symbol::{check_admissible, HarmonicityReport, SymbolJson};
use essnorm_core::verify::{run_verification, VerifyReport};
use serde::Serialize;

use crate::config::{ConfigError, Job};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckSymbol,
    Bounds,
    Essnorm,
    Verify,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckSymbol => "check-symbol",
            Command::Bounds => "bounds",
            Command::Essnorm => "essnorm",
            Command::Verify => "verify",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DomainOut {
    pub r1: String,
    pub r2: String,
}

/// Everything a command produced; sections a command does not run stay empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub domain: DomainOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_input: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissibility: Option<HarmonicityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<EssNormBracket>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<SandwichReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    /// 0 on success, 1 on a rejected symbol or a failed check.
    pub fn exit_code(&self) -> i32 {
        let rejected = self.admissibility.as_ref().is_some_and(|a| !a.admissible);
        let failed =
            self.sandwich.as_ref().is_some_and(|s| !s.pass) || self.verification.as_ref().is_some_and(|v| !v.pass);
        if rejected || failed {
            1
        } else {
            0
        }
    }
}

struct Clock(BTreeMap<String, f64>);

impl Clock {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.insert(stage.to_string(), start.elapsed().as_secs_f64());
        out
    }
}

pub fn run(cmd: Command, job: &Job, timings: bool) -> Result<RunReport, ConfigError> {
    let (r1, r2) = job.domain_strings();
    let mut report = RunReport {
        command: cmd.name(),
        domain: DomainOut { r1, r2 },
        symbol: None,
        exact_input: None,
        admissibility: None,
        bounds: None,
        bracket: None,
        sandwich: None,
        verification: None,
        timings: None,
    };
    let mut clock = Clock(BTreeMap::new());
    let cfg = &job.config;

    if cmd != Command::Verify {
        let phi = job.symbol()?;
        report.symbol = Some(SymbolJson::from(phi));
        report.exact_input = Some(phi.is_exact());
        let adm = clock.time("admissibility", || check_admissible(phi, &job.domain));
        let admissible = adm.admissible;
        report.admissibility = Some(adm);
        if admissible {
            let want_bounds = matches!(cmd, Command::Bounds | Command::Essnorm | Command::Report);
            let want_bracket = matches!(cmd, Command::Essnorm | Command::Report);
            // bounds and bracket are independent; run them side by side
            let (bounds, bracket) = std::thread::scope(|s| {
                let b = s.spawn(|| {
                    want_bounds.then(|| {
                        let start = Instant::now();
                        (evaluate_bounds(phi, &job.domain, &cfg.search), start.elapsed().as_secs_f64())
                    })
                });
                let e = want_bracket.then(|| {
                    let start = Instant::now();
                    (ess_norm_bracket(phi, &job.domain, &cfg.truncation), start.elapsed().as_secs_f64())
                });
                (b.join().expect("bounds worker"), e)
            });
            if let Some((b, t)) = bounds {
                report.bounds = Some(b?);
                clock.0.insert("bounds".into(), t);
            }
            if let Some((e, t)) = bracket {
                report.bracket = Some(e?);
                clock.0.insert("bracket".into(), t);
            }
            if let (Some(b), Some(e)) = (&report.bounds, &report.bracket) {
                report.sandwich = Some(sandwich_check(b, e, SANDWICH_TOL));
            }
        }
    }
    if matches!(cmd, Command::Verify | Command::Report) {
        report.verification = Some(clock.time("verify", || run_verification(&cfg.quadrature))?);
    }
    if timings {
        report.timings = Some(clock.0);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;

    fn job(symbol: &str) -> Job {
        RunConfig::from_json_str(&format!(r#"{{"symbol":{symbol}}}"#)).unwrap().resolve().unwrap()
    }

    #[test]
    fn rejected_symbol_exits_one() {
        let j = job(r#"{"terms":[{"z":1,"zbar":1,"re":1}]}"#);
        let r = run(Command::Bounds, &j, false).unwrap();
        assert_eq!(r.exit_code(), 1);
        assert!(r.bounds.is_none());
        assert!(!r.admissibility.unwrap().witnesses.is_empty());
    }

    #[test]
    fn sandwich_iff_admissible() {
        let good = run(Command::Report, &job(r#"{"terms":[{"w":2,"re":"1/3"}]}"#), false).unwrap();
        assert!(good.sandwich.is_some());
        assert_eq!(good.exit_code(), 0);
        let bad = run(Command::Report, &job(r#"{"terms":[{"w":1,"wbar":1,"re":1}]}"#), false).unwrap();
        assert!(bad.sandwich.is_none());
        assert!(bad.verification.is_some());
    }

    #[test]
    fn timings_only_on_request() {
        let j = job(r#"{"terms":[{"zbar":1,"re":1}]}"#);
        assert!(run(Command::CheckSymbol, &j, false).unwrap().timings.is_none());
        assert!(run(Command::CheckSymbol, &j, true).unwrap().timings.unwrap().contains_key("admissibility"));
    }

    #[test]
    fn verify_needs_no_symbol() {
        let j = RunConfig::default().resolve().unwrap();
        let r = run(Command::Verify, &j, false).unwrap();
        assert_eq!(r.exit_code(), 0);
        assert!(run(Command::Bounds, &j, false).is_err());
    }
}
