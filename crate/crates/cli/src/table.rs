//! Plain-text rendering with six significant digits.

use std::fmt::Write;

use loewner_lab::constants::RatioConstant;
use loewner_lab::explorer::HuntResult;
use loewner_lab::hypotheses::HypothesisReport;
use loewner_lab::report::ScalarReport;
use loewner_lab::{InequalityReport, LoewnerVerdict, SymMatrix};

use crate::fixtures::Fixture;
use crate::ConstantsOutput;

pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

fn matrix(m: &SymMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn verdict(out: &mut String, v: &LoewnerVerdict) {
    let _ = writeln!(
        out,
        "  relation      {:?}\n  min eig       {}\n  max eig       {}\n  tolerance     {}",
        v.relation,
        num(v.min_eig_of_difference),
        num(v.max_eig_of_difference),
        num(v.tolerance_used)
    );
}

fn hypothesis(out: &mut String, h: &HypothesisReport) {
    let _ = writeln!(
        out,
        "hypothesis      {} ({}, margin {})",
        h.condition_name,
        if h.holds { "holds" } else { "fails" },
        num(h.margin)
    );
    for (name, iv) in &h.intervals {
        let _ = writeln!(out, "  {name:<13} [{}, {}]", num(iv.lo), num(iv.hi));
    }
    for s in &h.sub_conditions {
        let _ = writeln!(
            out,
            "  {:<28} {} (margin {})",
            s.name,
            if s.holds { "holds" } else { "fails" },
            num(s.margin)
        );
    }
    if let Some(w) = &h.weight_window {
        let _ = writeln!(
            out,
            "  holds for {}/{} grid weights, v in [{}, {}]",
            w.holding,
            w.grid,
            num(w.first),
            num(w.last)
        );
    }
}

fn constant(out: &mut String, c: &RatioConstant) {
    let _ = writeln!(
        out,
        "{:<15} {} at t = {} on [{}, {}]",
        c.name,
        num(c.value),
        num(c.argument),
        num(c.m),
        num(c.big_m)
    );
}

pub fn inequality(r: &InequalityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theorem         {}", r.theorem_id);
    let _ = writeln!(out, "input digest    {}", r.input_digest);
    match &r.hypothesis {
        Some(h) => hypothesis(&mut out, h),
        None => out.push_str("hypothesis      not applicable\n"),
    }
    let _ = writeln!(out, "lhs             {}", matrix(&r.lhs));
    let _ = writeln!(out, "rhs             {}", matrix(&r.rhs));
    if let Ok(d) = r.rhs.sub(&r.lhs) {
        let _ = writeln!(out, "rhs - lhs       {}", matrix(&d));
    }
    out.push_str("verdict (rhs - lhs)\n");
    verdict(&mut out, &r.verdict);
    for link in &r.chain_links {
        let _ = writeln!(out, "link            {}", link.label);
        verdict(&mut out, &link.verdict);
    }
    for c in &r.constants {
        constant(&mut out, c);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note            {n}");
    }
    let status = match (r.holds(), r.hypothesis_holds()) {
        (false, _) => "VIOLATED",
        _ if crate::identity(r) => "HOLDS (identity)",
        (true, Some(false)) => "HOLDS (hypothesis failed)",
        (true, _) => "HOLDS",
    };
    let _ = writeln!(out, "result          {status}");
    out
}

pub fn scalar(r: &ScalarReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theorem         {}", r.theorem_id);
    let _ = writeln!(out, "input digest    {}", r.input_digest);
    for e in &r.entries {
        let _ = writeln!(
            out,
            "{:<28} {} vs {}  margin {}  {}{}",
            e.label,
            num(e.lhs),
            num(e.rhs),
            num(e.margin),
            if e.holds { "holds" } else { "fails" },
            if e.asserted { "" } else { " (reported only)" }
        );
    }
    for c in &r.constants {
        constant(&mut out, c);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note            {n}");
    }
    let _ = writeln!(
        out,
        "result          {}",
        if r.holds() { "HOLDS" } else { "VIOLATED" }
    );
    out
}

pub fn constants(c: &ConstantsOutput) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "function        {}", c.function);
    for (k, delta) in [
        (&c.big_k, c.big_k_grid_delta),
        (&c.small_k, c.small_k_grid_delta),
    ] {
        constant(&mut out, k);
        let _ = writeln!(out, "  vs {}-point grid: {}", c.oracle_points, num(delta));
    }
    out
}

pub fn hunt(r: &HuntResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "target          {}", r.target);
    if let Some(f) = &r.function {
        let _ = writeln!(out, "function        {f}");
    }
    let _ = writeln!(out, "seed            {}", r.seed);
    let _ = writeln!(out, "trials          {}", r.trials);
    let _ = writeln!(out, "satisfying      {}", r.satisfying_hypothesis_count);
    let _ = writeln!(out, "skipped         {}", r.skipped);
    let _ = writeln!(out, "errors          {}", r.errors);
    if let Some(e) = &r.first_error {
        let _ = writeln!(out, "first error     {e}");
    }
    let _ = writeln!(out, "violations      {}", r.violations.len());
    let _ = writeln!(out, "worst margin    {}", num(r.worst_margin));
    for v in r.violations.iter().take(5) {
        let _ = writeln!(
            out,
            "  trial {:<8} margin {}  {}",
            v.trial,
            num(v.margin),
            v.digest
        );
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(
            out,
            "witness         n = {}, N = {}, m = {}, M = {}{}",
            num(w.n),
            num(w.big_n),
            num(w.m),
            num(w.big_m),
            w.v.map(|v| format!(", v = {}", num(v))).unwrap_or_default()
        );
    }
    let _ = writeln!(out, "digest          {}", r.digest);
    out
}

pub fn fixtures(list: &[Fixture]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<36} {:>12} {:>10}  result",
        "fixture", "max error", "tolerance"
    );
    for f in list {
        let _ = writeln!(
            out,
            "{:<36} {:>12} {:>10}  {}",
            f.name,
            num(f.max_error),
            num(f.tolerance),
            if f.passed { "pass" } else { "FAIL" }
        );
        for d in &f.details {
            let _ = writeln!(out, "  {d}");
        }
    }
    let passed = list.iter().filter(|f| f.passed).count();
    let _ = writeln!(out, "{passed}/{} fixtures pass", list.len());
    out
}
