//! Versioned report documents and their text rendering.
//!
//! JSON output follows `schema/report-v1.json`. Field order is fixed by the
//! struct definitions and all collections are emitted in a deterministic
//! order, so identical inputs give identical bytes.

use std::fmt::Write;

use canweight::{
    BlowupSituation, BlowupSummary, CandidateReport, CandidateStatus, Certificate, ClassLabel, Conclusion, LeadingCoefficient,
    SearchInfo, SimultaneousReport, SingularityClass, WeightVector,
};
use itertools::Itertools;
use serde::Serialize;

pub const SCHEMA: &str = "canweight.report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: Input,
    pub result: Payload,
    pub caveats: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Input {
    Polynomial {
        dim: usize,
        polynomial: String,
        f_hash: String,
    },
    Family {
        dim: usize,
        members: Vec<Member>,
        weight: WeightVector,
    },
    Directory {
        directory: String,
        files: usize,
    },
}

#[derive(Debug, Serialize)]
pub struct Member {
    pub label: String,
    pub polynomial: String,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Classify(ClassView),
    Weight(Box<WeightResult>),
    Cone(ConeResult),
    Deform(DeformResult),
    Batch(BatchResult),
}

#[derive(Debug, Serialize)]
pub struct ClassView {
    pub label: ClassLabel,
    pub kappa: String,
    pub nondegeneracy: String,
    pub position: String,
}

impl From<&SingularityClass> for ClassView {
    fn from(c: &SingularityClass) -> Self {
        Self {
            label: c.label,
            kappa: c.kappa.to_string(),
            nondegeneracy: c.nondegeneracy.to_string(),
            position: format!("{:?}", c.position),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EssentialCone {
    pub hrep: Vec<Vec<i64>>,
    pub rays: Vec<WeightVector>,
    /// `null` when the basis exceeded the work cap.
    pub hilbert_basis: Option<Vec<WeightVector>>,
    pub hilbert_min: Option<WeightVector>,
}

#[derive(Debug, Serialize)]
pub struct Leading {
    pub weight: WeightVector,
    pub value: String,
    pub minus_k_cubed: bool,
}

impl From<&LeadingCoefficient> for Leading {
    fn from(l: &LeadingCoefficient) -> Self {
        Self {
            weight: l.weight.clone(),
            value: l.value.to_string(),
            minus_k_cubed: l.minus_k_cubed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Record {
    pub q: WeightVector,
    pub chart: usize,
    pub chart_tie: bool,
    pub m_q: String,
    pub excluded: bool,
    pub ambient_coeff: i64,
    pub adjunction_coeff: i64,
}

#[derive(Debug, Serialize)]
pub struct Blowup {
    pub center: WeightVector,
    pub leading_coefficient: Leading,
    pub records: Vec<Record>,
    pub min_m: Option<String>,
    pub situation: BlowupSituation,
}

impl From<&BlowupSummary> for Blowup {
    fn from(b: &BlowupSummary) -> Self {
        Self {
            center: b.leading.weight.clone(),
            leading_coefficient: (&b.leading).into(),
            records: b
                .records
                .iter()
                .map(|r| Record {
                    q: r.q.clone(),
                    chart: r.chart,
                    chart_tie: r.chart_tie,
                    m_q: r.m_q.to_string(),
                    excluded: r.excluded,
                    ambient_coeff: r.ambient_coeff,
                    adjunction_coeff: r.adjunction_coeff,
                })
                .collect(),
            min_m: b.min_m.as_ref().map(|m| m.to_string()),
            situation: b.situation,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WeightResult {
    pub class: ClassView,
    pub essential_cone: EssentialCone,
    pub absolutely_minimal: Option<WeightVector>,
    pub candidates: Vec<CandidateReport>,
    pub search: Option<SearchInfo>,
    pub leading_coefficient: Option<Leading>,
    pub conclusion: Conclusion,
    pub summary: String,
    pub blowup: Option<Blowup>,
}

#[derive(Debug, Serialize)]
pub struct Probe {
    pub weight: WeightVector,
    pub member: bool,
}

#[derive(Debug, Serialize)]
pub struct ConeResult {
    pub hrep: Vec<Vec<i64>>,
    pub rays: Vec<WeightVector>,
    pub dimension: usize,
    pub hilbert_basis: Vec<WeightVector>,
    pub componentwise_min: Option<WeightVector>,
    pub absolutely_minimal: Option<WeightVector>,
    pub probes: Vec<Probe>,
}

#[derive(Debug, Serialize)]
pub struct FamilyChecks {
    pub members: Vec<String>,
    pub halfspace: bool,
    pub weight_constancy: bool,
}

#[derive(Debug, Serialize)]
pub struct Simultaneous {
    pub f: String,
    pub g: String,
    pub verdict: String,
    pub report: SimultaneousReport,
}

#[derive(Debug, Serialize)]
pub struct DeformResult {
    pub family: FamilyChecks,
    pub simultaneous: Option<Simultaneous>,
}

#[derive(Debug, Serialize)]
pub struct BatchRow {
    pub file: String,
    pub dim: Option<usize>,
    pub polynomial: Option<String>,
    pub class: Option<ClassLabel>,
    pub absolutely_minimal: Option<WeightVector>,
    pub conclusion: Option<Conclusion>,
    pub summary: String,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct BatchResult {
    pub rows: Vec<BatchRow>,
}

/// Append `new` to `into`, skipping entries already present.
pub fn merge_caveats(into: &mut Vec<String>, new: &[String]) {
    for c in new {
        if !into.contains(c) {
            into.push(c.clone());
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let o = &mut out;
        line(o, format!("canweight {} {}", self.version, self.command));
        match &self.input {
            Input::Polynomial { dim, polynomial, .. } => line(o, format!("polynomial: {polynomial} (dim {dim})")),
            Input::Family { dim, members, weight } => {
                line(o, format!("family (dim {dim}), weight {weight}:"));
                for m in members {
                    line(o, format!("  {}: {}", m.label, m.polynomial));
                }
            }
            Input::Directory { directory, files } => line(o, format!("directory: {directory} (input files: {files})")),
        }
        match &self.result {
            Payload::Classify(c) => class_text(o, c),
            Payload::Weight(w) => weight_text(o, w),
            Payload::Cone(c) => cone_text(o, c),
            Payload::Deform(d) => deform_text(o, d),
            Payload::Batch(b) => batch_text(o, b),
        }
        if !self.caveats.is_empty() {
            line(o, "caveats:");
            for c in &self.caveats {
                line(o, format!("  - {c}"));
            }
        }
        out
    }
}

fn line(o: &mut String, s: impl AsRef<str>) {
    o.push_str(s.as_ref());
    o.push('\n');
}

fn opt(w: &Option<WeightVector>) -> String {
    w.as_ref().map_or_else(|| "none".to_string(), |w| w.to_string())
}

fn list(ws: &[WeightVector]) -> String {
    if ws.is_empty() {
        "none".into()
    } else {
        ws.iter().join(" ")
    }
}

fn form(v: &[i64]) -> String {
    format!("[{}]", v.iter().join(","))
}

fn class_text(o: &mut String, c: &ClassView) {
    line(
        o,
        format!(
            "class: {} (kappa {}, position {}, non-degeneracy {})",
            c.label, c.kappa, c.position, c.nondegeneracy
        ),
    );
}

fn cone_lines(o: &mut String, hrep: &[Vec<i64>], rays: &[WeightVector]) {
    line(o, format!("  inequalities: {}", hrep.iter().map(|f| form(f)).join(" ")));
    line(o, format!("  rays: {}", list(rays)));
}

fn status_text(c: &CandidateReport) -> String {
    let mut s = c.status.to_string();
    match &c.certificate {
        Some(Certificate::Counterexample { q, coordinate, on_wall }) => {
            let _ = write!(s, "; fails against {q} in coordinate {coordinate}");
            if *on_wall {
                s.push_str(" (chart wall)");
            }
        }
        Some(Certificate::Verified { regions, violators, conic_checks }) => {
            let _ = write!(
                s,
                "; verified over {regions} regions, {} finite violators, {conic_checks} conic checks",
                violators.len()
            );
        }
        Some(Certificate::OutsideEssentialCone) | None => {}
    }
    if c.user_supplied {
        s.push_str(" [user]");
    }
    s
}

fn weight_text(o: &mut String, w: &WeightResult) {
    class_text(o, &w.class);
    line(o, "essential cone:");
    cone_lines(o, &w.essential_cone.hrep, &w.essential_cone.rays);
    match &w.essential_cone.hilbert_basis {
        Some(h) => line(o, format!("  hilbert basis: {}", list(h))),
        None => line(o, "  hilbert basis: skipped (work cap)"),
    }
    line(o, format!("  componentwise min: {}", opt(&w.essential_cone.hilbert_min)));
    line(o, format!("absolutely minimal: {}", opt(&w.absolutely_minimal)));
    if let Some(s) = &w.search {
        line(o, format!("search: {} candidates up to sum {}", s.pool_size, s.cap));
    }
    let shown: Vec<&CandidateReport> = w
        .candidates
        .iter()
        .filter(|c| c.user_supplied || !matches!(c.status, CandidateStatus::NotFMinimal))
        .collect();
    if !shown.is_empty() {
        line(o, "candidates:");
        for c in shown {
            line(o, format!("  {} {}", c.weight, status_text(c)));
        }
    }
    if let Some(l) = &w.leading_coefficient {
        line(o, format!("leading coefficient at {}: {}", l.weight, l.value));
    }
    if let Some(b) = &w.blowup {
        line(o, format!("blow-up at {}:", b.center));
        line(o, format!("  leading coefficient: {}", b.leading_coefficient.value));
        for r in &b.records {
            let mut s = format!("  {} chart {} m_q = {}", r.q, r.chart, r.m_q);
            if r.chart_tie {
                s.push_str(" (wall)");
            }
            if r.excluded {
                s.push_str(" (excluded)");
            }
            line(o, s);
        }
        line(o, format!("  least m_q: {}", b.min_m.as_deref().unwrap_or("none")));
        line(o, format!("  situation: {}", b.situation));
    }
    line(o, format!("conclusion: {}", w.summary));
}

fn cone_text(o: &mut String, c: &ConeResult) {
    line(o, format!("essential cone (dimension {}):", c.dimension));
    cone_lines(o, &c.hrep, &c.rays);
    line(o, format!("  hilbert basis: {}", list(&c.hilbert_basis)));
    line(o, format!("  componentwise min: {}", opt(&c.componentwise_min)));
    line(o, format!("  absolutely minimal: {}", opt(&c.absolutely_minimal)));
    for p in &c.probes {
        line(o, format!("  probe {}: {}", p.weight, if p.member { "member" } else { "not a member" }));
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn deform_text(o: &mut String, d: &DeformResult) {
    line(o, format!("halfspace condition: {}", yes(d.family.halfspace)));
    line(o, format!("weight constancy: {}", yes(d.family.weight_constancy)));
    if let Some(s) = &d.simultaneous {
        let r = &s.report;
        line(o, format!("segment from {} to {}:", s.f, s.g));
        line(o, format!("  weight status for {}: {}", s.f, r.f_status));
        line(o, format!("  {} weighted homogeneous: {}", s.g, yes(r.g_weighted_homogeneous)));
        line(o, format!("  halfspace condition: {}", yes(r.halfspace)));
        line(o, format!("  weight constancy: {}", yes(r.weight_constancy)));
        line(o, format!("  verdict: {}", s.verdict));
        for c in &r.cited_conclusions {
            line(o, format!("  cited: {c}"));
        }
    }
}

fn batch_text(o: &mut String, b: &BatchResult) {
    if b.rows.is_empty() {
        line(o, "no input files");
        return;
    }
    let rows: Vec<[String; 4]> = b
        .rows
        .iter()
        .map(|r| {
            [
                r.file.clone(),
                r.class.map_or_else(|| "-".into(), |c| c.to_string()),
                opt(&r.absolutely_minimal),
                r.summary.clone(),
            ]
        })
        .collect();
    let head = ["file", "class", "abs-min", "conclusion"];
    let width: Vec<usize> = (0..3)
        .map(|i| rows.iter().map(|r| r[i].len()).chain([head[i].len()]).max().unwrap_or(0))
        .collect();
    let fmt_row = |r: [&str; 4]| format!("{:<w0$}  {:<w1$}  {:<w2$}  {}", r[0], r[1], r[2], r[3], w0 = width[0], w1 = width[1], w2 = width[2]);
    line(o, fmt_row(head));
    for r in &rows {
        line(o, fmt_row([&r[0], &r[1], &r[2], &r[3]]).trim_end());
    }
}
