//! Text tables. Values are the same doubles as in the JSON document,
//! rounded to six decimals for display.

use std::fmt::Write;

use serde::Serialize;
use spinvec::analysis::{AxisSummary, CorrelationMatrix, NoiseBudget};
use spinvec::spin_ops::half_integer_string;
use spinvec::{SingleSpinReport, VectorModelReport};

use crate::report::{PaperTable, ReportDocument, SamplerComparison};

pub const HEADER: &str = "angular momentum in units of ħ";

/// Fixed six-decimal display; never prints `-0.000000`.
pub fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn vec3(v: &[f64; 3]) -> String {
    format!("({}, {}, {})", num(v[0]), num(v[1]), num(v[2]))
}

fn label<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn half(twice: i64) -> String {
    half_integer_string(twice)
}

pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "spinvec {} ({HEADER})", doc.command);
    if let Some(s) = &doc.single {
        single(&mut out, s);
    }
    if let Some(c) = &doc.coupled {
        coupled(&mut out, c);
    }
    if let Some(s) = &doc.sampler {
        sampler(&mut out, s);
    }
    if let Some(p) = &doc.paper_table {
        paper(&mut out, p);
    }
    out
}

fn axes_table(out: &mut String, axes: &[AxisSummary]) {
    let _ = writeln!(
        out,
        "{:<5} {:>12} {:>12} {:>12} {:>12}  kind",
        "axis", "<J_a>", "<J_a^2>", "var J_a", "choice B"
    );
    for a in axes {
        let _ = writeln!(
            out,
            "{:<5} {:>12} {:>12} {:>12} {:>12}  {}",
            a.axis,
            num(a.expectation),
            num(a.second_moment),
            num(a.variance),
            num(a.choice_b),
            label(&a.kind)
        );
    }
}

fn single(out: &mut String, r: &SingleSpinReport) {
    let _ = writeln!(out, "j = {}, m = {}", half(r.twice_j.into()), half(r.twice_m.into()));
    let _ = writeln!(out);
    axes_table(out, &r.axes);
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "choice A      {}  |A|^2 = {}",
        vec3(&r.choice_a),
        num(r.magnitude_a_sq)
    );
    let _ = writeln!(
        out,
        "choice B      {}  |B|^2 = {}",
        vec3(&r.choice_b),
        num(r.magnitude_b_sq)
    );
    let _ = writeln!(out, "j(j+1)        {}", num(r.casimir));
    if let Some(u) = r.effective_unit {
        let _ = writeln!(out, "sqrt(1+1/j)   {}", num(u));
    }
}

fn matrix(out: &mut String, m: &CorrelationMatrix) {
    let _ = writeln!(out, "<S_{0}i S_{0}k>", m.axis);
    for row in &m.matrix {
        let cells: Vec<String> = row.iter().map(|x| format!("{:>10}", num(*x))).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

fn budget(out: &mut String, b: &NoiseBudget) {
    let _ = writeln!(out, "noise budget {} ({})", b.axis, label(&b.class));
    let vars: Vec<String> = b.site_variances.iter().map(|v| num(*v)).collect();
    let _ = writeln!(out, "  site variances    {}", vars.join(" "));
    for p in &b.pair_terms {
        let _ = writeln!(
            out,
            "  pair ({}, {})       correlation {}  covariance {}",
            p.i,
            p.k,
            num(p.correlation),
            num(p.covariance)
        );
    }
    let _ = writeln!(out, "  quadrature sum    {}", num(b.uncorrelated_part));
    let _ = writeln!(out, "  correlation part  {}", num(b.correlation_part));
    let _ = writeln!(out, "  var J_{}           {}", b.axis, num(b.total));
}

fn coupled(out: &mut String, r: &VectorModelReport) {
    let _ = writeln!(
        out,
        "N = {}, j = {}, m = {}, provenance {}",
        r.n_sites,
        half(r.twice_j.into()),
        half(r.twice_m.into()),
        label(&r.provenance)
    );
    if !r.coupling_path.is_empty() {
        let path: Vec<String> = r.coupling_path.iter().map(|t| half((*t).into())).collect();
        let _ = writeln!(out, "coupling path (j after each site): {}", path.join(" -> "));
    }
    let _ = writeln!(out);
    axes_table(out, &r.axes);
    let _ = writeln!(out);
    let _ = writeln!(out, "particle vectors (dS_x, dS_y, ±<S_z^2>^1/2)");
    for s in &r.site_vectors {
        let _ = writeln!(
            out,
            "  site {:<3} {}  z sign {}",
            s.site,
            vec3(&s.components),
            label(&s.z_sign)
        );
    }
    for axis in spinvec::Axis::ALL {
        let _ = writeln!(out);
        matrix(out, r.correlation(axis));
        budget(out, r.budget(axis));
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "choice A      {}  |A|^2 = {}",
        vec3(&r.choice_a),
        num(r.magnitude_a_sq)
    );
    let _ = writeln!(
        out,
        "choice B      {}  |B|^2 = {}",
        vec3(&r.choice_b),
        num(r.magnitude_b_sq)
    );
    let _ = writeln!(
        out,
        "composed      {}  |J|^2 = {}",
        vec3(&r.composed),
        num(r.composed_magnitude_sq)
    );
    let _ = writeln!(
        out,
        "naive sum     {}  |S|^2 = {}",
        vec3(&r.naive_sum),
        num(r.naive_magnitude_sq)
    );
    let _ = writeln!(out, "j(j+1)        {}", num(r.casimir));
    if let Some(u) = r.effective_unit {
        let _ = writeln!(out, "sqrt(1+1/j)   {}", num(u));
    }
    let _ = writeln!(
        out,
        "composed vs choice B: max |delta| = {:.3e}  {}",
        r.composition_error,
        if r.composition_verified { "verified" } else { "MISMATCH" }
    );
}

fn sampler(out: &mut String, s: &SamplerComparison) {
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "sampler: {} shots, seed {}, pass within {} standard errors",
        s.n_samples, s.seed, s.sigma_threshold
    );
    for a in &s.axes {
        let _ = writeln!(out, "axis {}", a.axis);
        let _ = writeln!(
            out,
            "  {:<20} {:>12} {:>12} {:>12} {:>8}",
            "quantity", "exact", "empirical", "std error", "z"
        );
        for c in &a.checks {
            let z = c.z_score.map_or("inf".to_string(), |z| format!("{z:.2}"));
            let _ = writeln!(
                out,
                "  {:<20} {:>12} {:>12} {:>12} {:>8}  {}",
                c.quantity,
                num(c.exact),
                num(c.empirical),
                num(c.std_error),
                z,
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    let _ = writeln!(out, "sampler {}", if s.all_pass { "PASS" } else { "FAIL" });
}

fn paper(out: &mut String, p: &PaperTable) {
    let _ = writeln!(out, "tolerance {:e}", p.tolerance);
    for item in &p.items {
        let _ = writeln!(
            out,
            "{}  {:<28} expected {:>12}  computed {:>12}  delta {:.3e}  {}",
            if item.pass { "PASS" } else { "FAIL" },
            item.id,
            num(item.expected),
            num(item.computed),
            item.delta,
            item.description
        );
    }
    let passed = p.items.iter().filter(|i| i.pass).count();
    let _ = writeln!(out, "{passed}/{} items pass", p.items.len());
}
