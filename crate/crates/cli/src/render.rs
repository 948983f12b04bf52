//! Table and JSON renderings of every command's result.

use std::fmt::Write;

use cis1_core::algebra::LaurentPoly;
use cis1_core::classifier::{NonexistenceHypotheses, SymmetryVerdict};
use cis1_core::invariants::InvariantReport;
use cis1_core::localization::{CheckResult, Configuration, FixedComponent, Residual, VerificationReport};

use crate::json::Json;
use crate::schema::{configuration_json, flags_json};

const CITE_T: &str = "[x^n] is the product of the degrees";
const CITE_C: &str = "c(M) = (1 + x)^(n+r+1) / prod (1 + d_j x)";
const CITE_P: &str = "p(M) = (1 + x^2)^(n+r+1) / prod (1 + d_j^2 x^2)";
const CITE_CHI: &str = "chi is the top Chern number [c_n(M)]";
const CITE_SIGN: &str = "signature is the L-genus";
const CITE_AHAT: &str = "A-hat genus of the tangent bundle";
const CITE_SPIN: &str = "spin exactly when c_1 is even";
const CITE_B3: &str = "b_3 = 4 - chi for threefolds, whose even Betti numbers are all 1";

fn multidegree(n: u32, degrees: &[u64]) -> String {
    let d: Vec<String> = degrees.iter().map(u64::to_string).collect();
    format!("X_{n}({})", d.join(","))
}

pub fn invariants_json(r: &InvariantReport) -> Json {
    Json::obj([
        ("n", Json::int(r.n)),
        ("degrees", Json::ints(&r.degrees)),
        ("t", Json::int(&r.t)),
        ("c1", Json::int(r.c1_coeff)),
        ("rho", Json::int(r.rho)),
        ("chi", Json::int(&r.euler)),
        ("signature", Json::opt(r.signature.as_ref().map(Json::int))),
        ("a_hat", Json::opt(r.a_hat.as_ref().map(Json::rational))),
        ("spin", Json::Bool(r.spin)),
        ("b3", Json::opt(r.b3.as_ref().map(Json::int))),
        (
            "citations",
            Json::obj([
                ("t", Json::str(CITE_T)),
                ("c1", Json::str(CITE_C)),
                ("rho", Json::str(CITE_P)),
                ("chi", Json::str(CITE_CHI)),
                ("signature", Json::str(CITE_SIGN)),
                ("a_hat", Json::str(CITE_AHAT)),
                ("spin", Json::str(CITE_SPIN)),
                ("b3", Json::str(CITE_B3)),
            ]),
        ),
    ])
}

pub fn invariants_text(r: &InvariantReport) -> String {
    let na = |reason: &str| format!("n/a ({reason})");
    let mut s = String::new();
    writeln!(s, "{}", multidegree(r.n, &r.degrees)).unwrap();
    let rows = [
        ("t", r.t.to_string(), CITE_T),
        ("c1", format!("{} x", r.c1_coeff), CITE_C),
        ("p1", format!("{} x^2", r.rho), CITE_P),
        ("chi", r.euler.to_string(), CITE_CHI),
        (
            "signature",
            r.signature.as_ref().map_or_else(|| na("odd complex dimension"), ToString::to_string),
            CITE_SIGN,
        ),
        (
            "a_hat",
            r.a_hat.as_ref().map_or_else(|| na("odd complex dimension"), ToString::to_string),
            CITE_AHAT,
        ),
        ("spin", if r.spin { "yes" } else { "no" }.to_string(), CITE_SPIN),
        ("b3", r.b3.as_ref().map_or_else(|| na("not a threefold"), ToString::to_string), CITE_B3),
    ];
    let width = rows.iter().map(|(_, v, _)| v.len()).max().unwrap_or(0);
    for (name, value, cite) in rows {
        writeln!(s, "  {name:<10} {value:<width$}  {cite}").unwrap();
    }
    s
}

fn admits_word(a: Option<bool>) -> &'static str {
    match a {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

fn hypotheses_json(h: &NonexistenceHypotheses) -> Json {
    Json::obj([
        ("all_hold", Json::Bool(h.all_hold)),
        (
            "items",
            Json::Arr(
                h.items
                    .iter()
                    .map(|i| {
                        Json::obj([
                            ("name", Json::str(i.name)),
                            ("holds", Json::Bool(i.holds)),
                            ("detail", Json::str(&i.detail)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

pub fn verdict_json(v: &SymmetryVerdict, degrees: &[u64], hyp: Option<&NonexistenceHypotheses>) -> Json {
    Json::obj([
        ("n", Json::int(v.n)),
        ("degrees", Json::ints(degrees)),
        ("normalized", Json::ints(v.normalized.degrees())),
        ("admits", Json::opt(v.admits.map(Json::Bool))),
        ("reason", Json::str(v.reason.as_str())),
        ("citation", Json::str(v.citation)),
        ("evidence", invariants_json(&v.evidence)),
        ("hypotheses", Json::opt(hyp.map(hypotheses_json))),
    ])
}

pub fn verdict_text(v: &SymmetryVerdict, degrees: &[u64], hyp: Option<&NonexistenceHypotheses>) -> String {
    let mut s = String::new();
    let statement = match v.admits {
        Some(true) => "admits a smooth non-trivial circle action",
        Some(false) => "does NOT admit a smooth non-trivial circle action",
        None => "out of scope: no classification is known",
    };
    let normalized = multidegree(v.n, v.normalized.degrees());
    let given = multidegree(v.n, degrees);
    if normalized == given {
        writeln!(s, "{given}: {statement}").unwrap();
    } else {
        writeln!(s, "{given} (normalized {normalized}): {statement}").unwrap();
    }
    writeln!(s, "  reason: {}", v.reason).unwrap();
    writeln!(s, "  citation: {}", v.citation).unwrap();
    if let Some(h) = hyp {
        let verdict = if h.all_hold { "all hold" } else { "not all hold" };
        writeln!(s, "  non-existence hypotheses: {verdict}").unwrap();
        for i in &h.items {
            let mark = if i.holds { "holds" } else { "fails" };
            writeln!(s, "    {:<18} {mark:<6} {}", i.name, i.detail).unwrap();
        }
    }
    s
}

pub fn table_json(n: u32, max_sum: u64, rows: &[SymmetryVerdict]) -> Json {
    Json::obj([
        ("n", Json::int(n)),
        ("max_degree_sum", Json::int(max_sum)),
        (
            "rows",
            Json::Arr(rows.iter().map(|v| verdict_json(v, v.normalized.degrees(), None)).collect()),
        ),
    ])
}

pub fn table_text(rows: &[SymmetryVerdict]) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:<20} {:>12} {:>5} {:>6} {:>14} {:>10} {:>8}",
        "multidegree", "t", "c1", "rho", "chi", "signature", "admits"
    )
    .unwrap();
    for v in rows {
        let e = &v.evidence;
        let sign = e.signature.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
        writeln!(
            s,
            "{:<20} {:>12} {:>5} {:>6} {:>14} {:>10} {:>8}",
            multidegree(v.n, v.normalized.degrees()),
            e.t.to_string(),
            e.c1_coeff,
            e.rho,
            e.euler.to_string(),
            sign,
            admits_word(v.admits)
        )
        .unwrap();
    }
    s
}

fn laurent_json(p: &LaurentPoly) -> Json {
    Json::obj([("low", Json::int(p.low())), ("coefficients", Json::ints(p.coeffs()))])
}

fn residual_json(r: &Residual) -> Json {
    match r {
        Residual::Value(v) => Json::obj([("kind", Json::str("value")), ("value", Json::rational(v))]),
        Residual::Lift(p) => Json::obj([
            ("kind", Json::str("lift_polynomial")),
            ("coefficients", Json::Arr(p.coeffs().iter().map(Json::rational).collect())),
        ]),
        Residual::Character(c) => Json::obj([
            ("kind", Json::str("character")),
            ("numerator", laurent_json(c.numerator())),
            ("denominator", laurent_json(c.denominator())),
        ]),
    }
}

fn check_json(c: &CheckResult) -> Json {
    Json::obj([
        ("name", Json::str(c.name)),
        ("passed", Json::Bool(c.passed)),
        ("residual", residual_json(&c.residual)),
        ("citation", Json::str(&c.citation)),
        ("detail", Json::str(&c.detail)),
    ])
}

pub fn report_json(cfg: &Configuration, report: &VerificationReport) -> Json {
    Json::obj([
        ("configuration", configuration_json(cfg)),
        ("inverted", Json::Bool(cfg.inverted())),
        ("consistent", Json::Bool(report.consistent)),
        ("checks", Json::Arr(report.checks.iter().map(check_json).collect())),
    ])
}

fn component_text(c: &FixedComponent) -> String {
    match c {
        FixedComponent::Point(p) => format!(
            "point eps={:+} n=({},{},{}) a={}",
            p.eps, p.weights[0], p.weights[1], p.weights[2], p.a
        ),
        FixedComponent::Surface(s) => format!(
            "surface n=({},{}) a={} x={} y=({},{}) chi={}",
            s.weights[0], s.weights[1], s.a, s.ev_x, s.ev_y1, s.ev_y2, s.chi
        ),
        FixedComponent::Four(f) => format!(
            "four n={} a={} x2={} xy={} y2={} p1={} b2={} sign={} chi={}",
            f.weight, f.a, f.ev_x2, f.ev_xy, f.ev_y2, f.ev_p1, f.b2, f.sign, f.chi
        ),
    }
}

fn configuration_line(cfg: &Configuration) -> String {
    let a = cfg.ambient();
    let comps: Vec<String> = cfg.components().iter().map(component_text).collect();
    format!("t={} rho={} chi={} | {}", a.t, a.rho, a.euler, comps.join(" | "))
}

pub fn report_text(cfg: &Configuration, report: &VerificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "template {}: {}", cfg.template(), configuration_line(cfg)).unwrap();
    if cfg.inverted() {
        writeln!(s, "note: replaced by the inverse action so that an isolated point is positively oriented").unwrap();
    }
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        writeln!(s, "[{mark}] {}: {}", c.name, c.citation).unwrap();
        if !c.passed {
            writeln!(s, "       residual: {}", c.residual).unwrap();
        }
        if !c.detail.is_empty() {
            writeln!(s, "       {}", c.detail).unwrap();
        }
    }
    match report.first_failure() {
        None => writeln!(s, "consistent: every check passes").unwrap(),
        Some(f) => writeln!(s, "contradiction: first failing check is {}", f.name).unwrap(),
    }
    s
}

pub struct SearchEcho {
    pub template: &'static str,
    pub semifree: bool,
    pub flags: cis1_core::localization::Flags,
    pub ranges: cis1_core::localization::SearchRanges,
    pub bounds: cis1_core::localization::SearchBounds,
}

pub fn search_json(echo: &SearchEcho, hits: &[Configuration], nodes: u64) -> Json {
    let r = echo.ranges;
    let b = echo.bounds;
    Json::obj([
        ("template", Json::str(echo.template)),
        ("semifree", Json::Bool(echo.semifree)),
        ("flags", flags_json(echo.flags)),
        (
            "ranges",
            Json::obj([
                ("t_min", Json::int(r.t_min)),
                ("t_max", Json::int(r.t_max)),
                ("rho_min", Json::int(r.rho_min)),
                ("rho_max", Json::int(r.rho_max)),
            ]),
        ),
        (
            "bounds",
            Json::obj([
                ("max_weight", Json::int(b.max_weight)),
                ("max_abs_a", Json::int(b.max_abs_a)),
                ("max_abs_eval", Json::int(b.max_abs_eval)),
            ]),
        ),
        ("nodes", Json::int(nodes)),
        ("count", Json::int(hits.len())),
        ("hits", Json::Arr(hits.iter().map(configuration_json).collect())),
    ])
}

pub fn search_text(echo: &SearchEcho, hits: &[Configuration], nodes: u64) -> String {
    let mut s = String::new();
    let r = echo.ranges;
    let b = echo.bounds;
    writeln!(
        s,
        "search {}: rho in [{}, {}], t in [{}, {}], weights <= {}, |a| <= {}, |evaluations| <= {}{}",
        echo.template,
        r.rho_min,
        r.rho_max,
        r.t_min,
        r.t_max,
        b.max_weight,
        b.max_abs_a,
        b.max_abs_eval,
        if echo.semifree { ", semifree" } else { "" }
    )
    .unwrap();
    writeln!(s, "{} consistent configurations ({nodes} nodes)", hits.len()).unwrap();
    for h in hits {
        writeln!(s, "{}", configuration_line(h)).unwrap();
    }
    s
}
