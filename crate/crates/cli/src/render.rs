use std::fmt::Write;

use serde_json::Value;

use crate::config::Format;
use crate::report::RunReport;

/// Decimal with 12 significant digits; scientific outside `1e-5 .. 1e12`.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        format!("{:.*}", (11 - e) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Rounds every float in `v` to 12 significant digits.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

pub fn to_json(report: &RunReport) -> String {
    let v = serde_json::to_value(report).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&round_floats(v)).expect("json");
    s.push('\n');
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::Number(n) => {
            let s = match n.as_f64() {
                Some(x) if n.is_f64() => sig12(x),
                _ => n.to_string(),
            };
            out.push((prefix.to_string(), s));
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Null => out.push((prefix.to_string(), String::new())),
    }
}

/// `verify` gives one row per identity; every other command a flat
/// `key,value` listing of the JSON report.
pub fn to_csv(report: &RunReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    match (&report.verification, report.command) {
        (Some(v), "verify") => {
            w.write_record(["identity", "closed_form", "computed", "abs_error", "exact", "pass"]).expect("csv");
            for r in &v.rows {
                let row = [
                    r.name.clone(),
                    sig12(r.closed_form),
                    sig12(r.computed),
                    sig12(r.abs_error),
                    r.exact.clone().unwrap_or_default(),
                    r.pass.to_string(),
                ];
                w.write_record(row).expect("csv");
            }
        }
        _ => {
            let v = serde_json::to_value(report).expect("report serializes");
            let mut rows = Vec::new();
            flatten("", &v, &mut rows);
            w.write_record(["key", "value"]).expect("csv");
            for (k, x) in rows {
                w.write_record([k, x]).expect("csv");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    let _ = writeln!(
        out,
        "{}",
        line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect())
    );
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

/// Convergence table pivoted to rows `N` (multiples of 5 and the last) by
/// columns `k`.
fn tail_matrix(out: &mut String, entries: &[(u32, u32, f64)]) {
    let mut ks: Vec<u32> = entries.iter().map(|e| e.0).collect();
    ks.sort_unstable();
    ks.dedup();
    let last = entries.iter().map(|e| e.1).max().unwrap_or(0);
    let mut ns: Vec<u32> = entries.iter().map(|e| e.1).filter(|n| n % 5 == 0 || *n == last).collect();
    ns.sort_unstable();
    ns.dedup();
    let header: Vec<String> = std::iter::once("N".to_string()).chain(ks.iter().map(|k| format!("k={k}"))).collect();
    let rows: Vec<Vec<String>> = ns
        .iter()
        .map(|n| {
            let mut row = vec![n.to_string()];
            for k in &ks {
                let cell = entries.iter().find(|e| e.0 == *k && e.1 == *n).map_or(String::new(), |e| sig12(e.2));
                row.push(cell);
            }
            row
        })
        .collect();
    table(out, &header.iter().map(String::as_str).collect::<Vec<_>>(), &rows);
}

fn verdict(pass: bool) -> String {
    if pass { "pass" } else { "FAIL" }.to_string()
}

fn complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        sig12(re)
    } else {
        format!("{}{}{}i", sig12(re), if im < 0.0 { "-" } else { "+" }, sig12(im.abs()))
    }
}

pub fn to_table(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain: |z| < {}, |w| < {}", r.domain.r1, r.domain.r2);
    if let Some(a) = &r.admissibility {
        let _ = writeln!(out, "\nadmissible: {}", if a.admissible { "yes" } else { "no" });
        for w in &a.witnesses {
            let _ = writeln!(out, "  witness {w}");
        }
        if r.exact_input == Some(false) {
            let _ = writeln!(out, "  note: decimal coefficients were read as binary fractions");
        }
    }
    if let Some(b) = &r.bounds {
        let _ = writeln!(out, "\nbounds");
        let mut rows = vec![vec!["thm1_lower".to_string(), sig12(b.thm1_lower)]];
        if let Some(t2) = b.thm2_lower {
            rows.push(vec!["thm2_lower".into(), sig12(t2)]);
        }
        rows.push(vec!["thm1_upper".into(), sig12(b.thm1_upper)]);
        rows.push(vec!["maximin".into(), sig12(b.maximin)]);
        table(&mut out, &["quantity", "value"], &rows);
        if let Some(s) = &b.lower_argmax {
            let _ = writeln!(
                out,
                "lower argmax: {}-family, theta = {}, center = {}, scale = {}",
                s.family,
                sig12(s.theta),
                complex(s.center.re, s.center.im),
                complex(s.scale.re, s.scale.im)
            );
        }
        if let Some(u) = &b.upper_argmax {
            let _ = writeln!(
                out,
                "upper argmax: {}-family, theta = {}, point = {}",
                u.family,
                sig12(u.theta),
                complex(u.point.re, u.point.im)
            );
        }
    }
    if let Some(e) = &r.bracket {
        let _ = writeln!(out, "\ntail suprema (rows N, columns k)");
        tail_matrix(&mut out, &e.table);
        let _ = writeln!(out, "\nkernel sequence");
        let mut header = vec!["|p|".to_string()];
        header.extend(e.kernels.iter().map(|k| format!("{}-kernel", k.family)));
        let rows: Vec<Vec<String>> = e
            .sequence
            .iter()
            .enumerate()
            .map(|(i, (p, _))| {
                let mut row = vec![sig12(*p)];
                row.extend(e.kernels.iter().map(|k| sig12(k.values[i].value)));
                row
            })
            .collect();
        table(&mut out, &header.iter().map(String::as_str).collect::<Vec<_>>(), &rows);
        let _ = writeln!(out, "\nbracket");
        let rows = vec![
            vec!["lower_est".to_string(), sig12(e.lower_est)],
            vec!["upper_est".into(), sig12(e.upper_est)],
            vec!["error_bar".into(), sig12(e.error_bar)],
            vec!["op_norm_lower".into(), sig12(e.op_norm_lower)],
        ];
        table(&mut out, &["quantity", "value"], &rows);
    }
    if let Some(s) = &r.sandwich {
        let _ = writeln!(out, "\nsandwich (tol {})", sig12(s.tol));
        let rows: Vec<Vec<String>> =
            s.rows.iter().map(|x| vec![x.relation.clone(), sig12(x.lhs), sig12(x.rhs), verdict(x.pass)]).collect();
        table(&mut out, &["relation", "lhs", "rhs", "verdict"], &rows);
    }
    if let Some(v) = &r.verification {
        let _ = writeln!(out, "\nverification");
        let rows: Vec<Vec<String>> = v
            .rows
            .iter()
            .map(|x| {
                let closed = x.exact.clone().unwrap_or_else(|| sig12(x.closed_form));
                vec![x.name.clone(), closed, sig12(x.computed), sig12(x.abs_error), verdict(x.pass)]
            })
            .collect();
        table(&mut out, &["identity", "closed form", "computed", "error", "verdict"], &rows);
    }
    if let Some(t) = &r.timings {
        let _ = writeln!(out, "\ntimings (s)");
        let rows: Vec<Vec<String>> = t.iter().map(|(k, v)| vec![k.clone(), format!("{v:.3}")]).collect();
        table(&mut out, &["stage", "seconds"], &rows);
    }
    out
}

pub fn render(r: &RunReport, format: Format) -> String {
    match format {
        Format::Table => to_table(r),
        Format::Json => to_json(r),
        Format::Csv => to_csv(r),
    }
}
