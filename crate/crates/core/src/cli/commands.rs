use std::fmt::Write as _;

use num_rational::BigRational;

use super::{load, CommandOutcome, ExitCode};
use crate::combinatorics::{andreev_check, validate, PolyhedronCombinatorics, CATALOG_NAMES};
use crate::glue::{auto_glue, glue_and_verify, parse_edge_map, FaceMatching};
use crate::growth::{closed_form_growth, g_polynomial, growth_series, steinberg_growth};
use crate::oracle::{bfs_growth, coxeter_matrix, OracleError};
use crate::poly::IntPolynomial;
use crate::report::{CheckStatus, Report};
use crate::roots::{certify_polynomial, growth_rate, RootCertificate, RootError};
use crate::volume::{catalog_volume, VolumeError, VOLUME_CATALOG};

fn status_word(s: &CheckStatus) -> (&'static str, &str) {
    match s {
        CheckStatus::Pass => ("pass", ""),
        CheckStatus::Fail(w) => ("FAIL", w),
        CheckStatus::Skipped(w) => ("skip", w),
    }
}

fn tsv_report(out: &mut String, name: &str, section: &str, r: &Report) {
    for c in &r.checks {
        let (word, why) = status_word(&c.status);
        let _ = writeln!(out, "{name}\t{section}\t{}\t{word}\t{why}", c.name);
    }
}

fn root_error_code(e: &RootError) -> ExitCode {
    match e {
        RootError::Inconclusive(_) => ExitCode::Inconclusive,
        RootError::BadTolerance => ExitCode::Usage,
        _ => ExitCode::Failure,
    }
}

pub fn cmd_validate(arg: &str, tsv: bool) -> CommandOutcome {
    let p = match load(arg) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let v = validate(&p);
    let a = andreev_check(&p);
    let ok = v.is_valid() && a.passed();
    let name = p.name();
    let mut out = String::new();
    if tsv {
        let iv = &v.invariants;
        for (k, x) in [
            ("f", iv.f),
            ("c", iv.c),
            ("e", iv.e),
            ("e2", iv.e2),
            ("e3", iv.e3),
            ("e4", iv.e4),
            ("e6", iv.e6),
            ("c8", iv.c8),
            ("c9", iv.c9),
            ("c10", iv.c10),
            ("c11", iv.c11),
        ] {
            let _ = writeln!(out, "{name}\tinvariant\t{k}\t{x}");
        }
        tsv_report(&mut out, name, "structure", &v.report);
        tsv_report(&mut out, name, "andreev", &a);
    } else {
        let verdict = if ok { "valid" } else { "INVALID" };
        let _ = writeln!(out, "{name}: {verdict}");
        let _ = writeln!(out, "invariants: {}", v.invariants);
        let _ = writeln!(out, "structure and identities:\n{}", v.report);
        let _ = writeln!(out, "realizability:\n{a}");
    }
    CommandOutcome::new(if ok { ExitCode::Ok } else { ExitCode::Failure }, out)
}

pub fn cmd_growth(arg: &str, series: Option<usize>, tsv: bool) -> CommandOutcome {
    let p = match load(arg) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let name = p.name().to_string();
    let fail = |e: &dyn std::fmt::Display| CommandOutcome::new(ExitCode::Failure, format!("{name}: error: {e}\n"));
    let st = match steinberg_growth(&p) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let cf = match closed_form_growth(&p) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let agree = st == cf;
    let iv = validate(&p).invariants;
    let g = g_polynomial(&iv);
    let coeffs = match series.map(|n| growth_series(&p, n)).transpose() {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let mut out = String::new();
    if tsv {
        let _ = writeln!(out, "{name}\tsteinberg\t{st}");
        let _ = writeln!(out, "{name}\tclosed_form\t{cf}");
        let _ = writeln!(out, "{name}\tforms_agree\t{agree}");
        let _ = writeln!(out, "{name}\tg\t{g}");
        for (j, a) in coeffs.iter().flatten().enumerate() {
            let _ = writeln!(out, "{name}\ta\t{j}\t{a}");
        }
    } else {
        let _ = writeln!(out, "{name}");
        let _ = writeln!(out, "steinberg:   {st}");
        let _ = writeln!(out, "closed form: {cf}");
        let _ = writeln!(out, "forms agree: {agree}");
        let _ = writeln!(out, "g(t) = {g}");
        if let Some(c) = &coeffs {
            let terms: Vec<String> = c.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "series: {}", terms.join(" "));
        }
    }
    CommandOutcome::new(if agree { ExitCode::Ok } else { ExitCode::Failure }, out)
}

fn render_certificate(name: &str, c: &RootCertificate, tsv: bool) -> String {
    if tsv {
        let gap = c.modulus_gap.as_ref().map_or("-".to_string(), ToString::to_string);
        format!(
            "{name}\t{}\t{}\t{}\t{}\t{}\t{gap}\n",
            c.tau_enclosure.lo,
            c.tau_enclosure.hi,
            if c.is_exact() { "exact" } else { "enclosure" },
            c.simple,
            c.perron
        )
    } else {
        format!("{name}\n{c}")
    }
}

fn rate_outcome(name: &str, r: Result<RootCertificate, RootError>, tsv: bool) -> CommandOutcome {
    match r {
        Ok(c) => CommandOutcome::new(ExitCode::Ok, render_certificate(name, &c, tsv)),
        Err(e) => CommandOutcome::new(root_error_code(&e), format!("{name}: {e}\n")),
    }
}

pub fn cmd_rate(arg: &str, tol: &BigRational, tsv: bool) -> CommandOutcome {
    match load(arg) {
        Ok(p) => rate_outcome(p.name(), growth_rate(&p, tol), tsv),
        Err(o) => o,
    }
}

pub fn cmd_rate_poly(text: &str, tol: &BigRational, tsv: bool) -> CommandOutcome {
    match text.parse::<IntPolynomial>() {
        Ok(g) => rate_outcome("polynomial", certify_polynomial(&g, tol), tsv),
        Err(e) => CommandOutcome::usage(e),
    }
}

pub fn cmd_volume(name: &str, tol: f64, tsv: bool) -> CommandOutcome {
    match catalog_volume(name, tol) {
        Ok(v) if tsv => CommandOutcome::new(ExitCode::Ok, format!("{name}\t{:.15}\t{:e}\n", v.value, v.error_bound)),
        Ok(v) => CommandOutcome::new(ExitCode::Ok, format!("vol({name}) = {v}\n")),
        Err(e @ VolumeError::NoConvergence(_)) => CommandOutcome::new(ExitCode::Failure, format!("{name}: {e}\n")),
        Err(e) => CommandOutcome::usage(e),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_glue(
    a: &str,
    b: &str,
    face_a: usize,
    face_b: usize,
    map: Option<&str>,
    auto: bool,
    tol: &BigRational,
    tsv: bool,
) -> CommandOutcome {
    let (p, q) = match (load(a), load(b)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    for (poly, face) in [(&p, face_a), (&q, face_b)] {
        if face >= poly.face_count() {
            return CommandOutcome::usage(format!("{} has no face {face}", poly.name()));
        }
    }
    let matchings = if auto {
        match auto_glue(&p, &q, face_a, face_b) {
            Ok(v) => v.into_iter().map(|(m, _)| m).collect(),
            Err(e) => return CommandOutcome::new(ExitCode::Failure, format!("error: {e}\n")),
        }
    } else {
        match parse_edge_map(map.unwrap_or_default()) {
            Ok(edge_map) => vec![FaceMatching {
                face_p: face_a,
                face_q: face_b,
                edge_map,
            }],
            Err(e) => return CommandOutcome::usage(e),
        }
    };
    let mut out = String::new();
    let mut successes = 0;
    let mut code = ExitCode::Ok;
    for m in &matchings {
        match glue_and_verify(&p, &q, m, tol) {
            Ok((g, report)) => {
                successes += 1;
                if !report.passed() {
                    code = code.worst(ExitCode::Failure);
                }
                if tsv {
                    tsv_report(&mut out, g.name(), &m.to_string(), &report);
                } else {
                    let _ = writeln!(out, "# glueable: {m}");
                    out.push_str(&g.to_icp());
                    let _ = writeln!(out, "# verification\n{report}");
                }
            }
            Err(e) if tsv => {
                let _ = writeln!(out, "{}*{}\t{m}\tnot glueable\t{}", p.name(), q.name(), one_line(&e));
            }
            Err(e) => {
                let _ = writeln!(out, "# not glueable: {m}\n{e}\n");
            }
        }
    }
    if successes == 0 {
        code = ExitCode::Failure;
    }
    CommandOutcome::new(code, out)
}

fn one_line(e: &impl std::fmt::Display) -> String {
    e.to_string().split_whitespace().collect::<Vec<_>>().join(" ")
}

pub fn cmd_oracle(arg: &str, depth: usize, tsv: bool) -> CommandOutcome {
    let p = match load(arg) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let name = p.name();
    let (counts, err) = match bfs_growth(&coxeter_matrix(&p), depth) {
        Ok(s) => (s.counts, None),
        Err(e @ (OracleError::ResourceLimit { .. } | OracleError::Overflow { .. })) => {
            let counts = match &e {
                OracleError::ResourceLimit { counts, .. } | OracleError::Overflow { counts, .. } => counts.clone(),
                _ => Vec::new(),
            };
            (counts, Some(e))
        }
        Err(e) => return CommandOutcome::new(ExitCode::Failure, format!("{name}: {e}\n")),
    };
    let mut out = String::new();
    if !tsv {
        let _ = writeln!(out, "# {name}");
    }
    for (j, a) in counts.iter().enumerate() {
        if tsv {
            let _ = writeln!(out, "{name}\t{j}\t{a}");
        } else {
            let _ = writeln!(out, "{j}\t{a}");
        }
    }
    match err {
        Some(e) => {
            let _ = writeln!(out, "# {e}");
            CommandOutcome::new(ExitCode::Failure, out)
        }
        None => CommandOutcome::new(ExitCode::Ok, out),
    }
}

fn catalog_row(p: &PolyhedronCombinatorics, tol: &BigRational) -> (ExitCode, [String; 5]) {
    let name = p.name().to_string();
    let iv = validate(p).invariants;
    let (code, tau) = match growth_rate(p, tol) {
        Ok(c) if c.is_exact() => (ExitCode::Ok, format!("{} exact", c.tau_enclosure.lo)),
        Ok(c) => (
            ExitCode::Ok,
            format!("{:.10} +/- {:.1e}", c.tau_estimate(), c.tau_error()),
        ),
        Err(e) => (root_error_code(&e), format!("error: {e}")),
    };
    let vol = if VOLUME_CATALOG.contains(&name.as_str()) {
        catalog_volume(&name, 1e-12).map_or_else(|e| format!("error: {e}"), |v| v.to_string())
    } else {
        "-".to_string()
    };
    (code, [name, iv.f.to_string(), iv.c.to_string(), tau, vol])
}

pub fn cmd_catalog(tol: &BigRational, tsv: bool) -> CommandOutcome {
    let mut code = ExitCode::Ok;
    let mut rows = vec![["name", "f", "c", "tau", "vol"].map(String::from)];
    for name in CATALOG_NAMES {
        let p = crate::combinatorics::catalog(name).expect("built-in model parses");
        let (c, row) = catalog_row(&p, tol);
        code = code.worst(c);
        rows.push(row);
    }
    let mut out = String::new();
    if tsv {
        for r in &rows {
            let _ = writeln!(out, "{}", r.join("\t"));
        }
    } else {
        let widths: Vec<usize> = (0..5)
            .map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0))
            .collect();
        for r in &rows {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
    }
    CommandOutcome::new(code, out)
}
