use std::fs;
use std::path::{Path, PathBuf};

use canweight::{
    absolutely_minimal, blowup_candidates, blowup_summary, canonical_weight_verdict, classify, componentwise_min,
    essential_cone, f_hash, halfspace_condition, serialize_polynomial, simultaneous_report, weight::CAVEAT_BLOWUP_CANDIDATES,
    weight_constancy, Error, PolynomialSupport, SupportFamily, VerdictOptions, WeightVector,
};
use rayon::prelude::*;

use crate::input::{load_family, load_polynomial_file};
use crate::report::*;

pub const VERDICT_POSITIVE: &str = "simultaneous canonical modification conditions satisfied";
pub const VERDICT_MIXED: &str = "simultaneous canonical modification conditions not all satisfied";

/// Options shared by the commands that compute a weight verdict.
#[derive(Clone, Debug, Default)]
pub struct WeightArgs {
    pub candidates: Vec<WeightVector>,
    pub blowup: Option<WeightVector>,
    pub assume_nondegenerate: bool,
    pub cap: Option<i64>,
}

fn report(command: &'static str, input: Input, result: Payload, caveats: Vec<String>) -> Report {
    Report {
        schema: SCHEMA,
        version: VERSION,
        command,
        input,
        result,
        caveats,
    }
}

fn poly_input(f: &PolynomialSupport) -> Input {
    Input::Polynomial {
        dim: f.dim(),
        polynomial: serialize_polynomial(f),
        f_hash: f_hash(f),
    }
}

pub fn cmd_classify(f: &PolynomialSupport, assume_nondegenerate: bool) -> Result<Report, Error> {
    let c = classify(f, assume_nondegenerate)?;
    Ok(report("classify", poly_input(f), Payload::Classify((&c).into()), c.caveats.clone()))
}

fn weight_result(f: &PolynomialSupport, args: &WeightArgs) -> Result<(WeightResult, Vec<String>), Error> {
    let mut opts = VerdictOptions {
        assume_nondegenerate: args.assume_nondegenerate,
        candidates: args.candidates.clone(),
        ..VerdictOptions::default()
    };
    if let Some(cap) = args.cap {
        opts.cap = cap;
    }
    let v = canonical_weight_verdict(f, &opts)?;
    let mut caveats = v.caveats.clone();
    let blowup = match &args.blowup {
        Some(p) => {
            let mut cands = blowup_candidates(p, f)?;
            cands.extend(args.candidates.iter().filter(|c| c.is_nonnegative() && !c.is_zero()).cloned());
            cands.sort();
            cands.dedup();
            merge_caveats(&mut caveats, &[CAVEAT_BLOWUP_CANDIDATES.to_string()]);
            Some((&blowup_summary(p, f, &cands)?).into())
        }
        None => None,
    };
    let result = WeightResult {
        class: (&v.class).into(),
        essential_cone: EssentialCone {
            hrep: v.essential_hrep,
            rays: v.essential_rays,
            hilbert_basis: v.hilbert,
            hilbert_min: v.hilbert_min,
        },
        absolutely_minimal: v.abs_min,
        candidates: v.candidates,
        search: v.search,
        leading_coefficient: v.leading_coeff.as_ref().map(Into::into),
        summary: v.conclusion.to_string(),
        conclusion: v.conclusion,
        blowup,
    };
    Ok((result, caveats))
}

pub fn cmd_weight(f: &PolynomialSupport, args: &WeightArgs) -> Result<Report, Error> {
    let (result, caveats) = weight_result(f, args)?;
    Ok(report("weight", poly_input(f), Payload::Weight(Box::new(result)), caveats))
}

pub fn cmd_cone(f: &PolynomialSupport, probes: &[WeightVector]) -> Result<Report, Error> {
    let c = essential_cone(f)?;
    let hilbert_basis = c.hilbert_basis()?;
    let componentwise_min = if hilbert_basis.is_empty() {
        None
    } else {
        Some(componentwise_min(&hilbert_basis)?)
    };
    let absolutely_minimal = if c.is_zero() { None } else { absolutely_minimal(&c)? };
    let probes = probes
        .iter()
        .map(|q| {
            Ok(Probe {
                weight: q.clone(),
                member: c.contains(q)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let result = ConeResult {
        hrep: c.hrep().to_vec(),
        rays: c.rays().to_vec(),
        dimension: c.cone_dimension(),
        hilbert_basis,
        componentwise_min,
        absolutely_minimal,
        probes,
    };
    Ok(report("cone", poly_input(f), Payload::Cone(result), Vec::new()))
}

/// Members labelled `f` and `g` form the segment; otherwise the first two.
fn segment_ends(members: &[(String, PolynomialSupport)]) -> Option<(usize, usize)> {
    let find = |l: &str| members.iter().position(|(m, _)| m == l);
    match (find("f"), find("g")) {
        (Some(i), Some(j)) => Some((i, j)),
        _ if members.len() >= 2 => Some((0, 1)),
        _ => None,
    }
}

pub fn cmd_deform(path: &Path, dim: Option<usize>, assume_nondegenerate: bool) -> Result<Report, Error> {
    let file = load_family(path, dim)?;
    let fam = SupportFamily::new(file.members)?;
    let p = &file.weight;
    let family = FamilyChecks {
        members: fam.members().iter().map(|(l, _)| l.clone()).collect(),
        halfspace: halfspace_condition(&fam, p)?,
        weight_constancy: weight_constancy(&fam, p)?,
    };
    let mut caveats = Vec::new();
    let simultaneous = match segment_ends(fam.members()) {
        Some((i, j)) => {
            let (lf, f) = &fam.members()[i];
            let (lg, g) = &fam.members()[j];
            let r = simultaneous_report(f, g, p, assume_nondegenerate)?;
            merge_caveats(&mut caveats, &r.caveats);
            Some(Simultaneous {
                f: lf.clone(),
                g: lg.clone(),
                verdict: if r.positive { VERDICT_POSITIVE } else { VERDICT_MIXED }.to_string(),
                report: r,
            })
        }
        None => None,
    };
    let input = Input::Family {
        dim: fam.dim(),
        members: fam
            .members()
            .iter()
            .map(|(l, m)| Member {
                label: l.clone(),
                polynomial: serialize_polynomial(m),
            })
            .collect(),
        weight: p.clone(),
    };
    Ok(report("deform", input, Payload::Deform(DeformResult { family, simultaneous }), caveats))
}

fn is_input_file(p: &Path) -> bool {
    p.is_file() && p.extension().is_some_and(|e| e == "poly" || e == "txt" || e == "json")
}

/// Files processed by `batch`, sorted by name.
pub fn batch_files(dir: &Path) -> Result<Vec<PathBuf>, Error> {
    let entries = fs::read_dir(dir).map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for e in entries {
        let path = e.map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?.path();
        if is_input_file(&path) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// One row per file. Rows that failed carry the error; the returned flag
/// holds the most severe failure.
pub fn cmd_batch(dir: &Path, dim: Option<usize>, args: &WeightArgs) -> Result<(Report, Option<Error>), Error> {
    let files = batch_files(dir)?;
    let outcomes: Vec<(BatchRow, Vec<String>, Option<Error>)> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let run = load_polynomial_file(path, dim).and_then(|f| weight_result(&f, args).map(|r| (f, r)));
            match run {
                Ok((f, (w, caveats))) => (
                    BatchRow {
                        file: name,
                        dim: Some(f.dim()),
                        polynomial: Some(serialize_polynomial(&f)),
                        class: Some(w.class.label),
                        absolutely_minimal: w.absolutely_minimal,
                        summary: w.summary,
                        conclusion: Some(w.conclusion),
                        error: None,
                    },
                    caveats,
                    None,
                ),
                Err(e) => (
                    BatchRow {
                        file: name,
                        dim: None,
                        polynomial: None,
                        class: None,
                        absolutely_minimal: None,
                        conclusion: None,
                        summary: format!("error: {e}"),
                        error: Some(e.to_string()),
                    },
                    Vec::new(),
                    Some(e),
                ),
            }
        })
        .collect();
    let mut caveats = Vec::new();
    let mut worst: Option<Error> = None;
    let mut rows = Vec::with_capacity(outcomes.len());
    for (row, c, err) in outcomes {
        merge_caveats(&mut caveats, &c);
        if let Some(e) = err {
            let replace = match &worst {
                None => true,
                Some(w) => w.is_input_error() && !e.is_input_error(),
            };
            if replace {
                worst = Some(e);
            }
        }
        rows.push(row);
    }
    let input = Input::Directory {
        directory: dir.display().to_string(),
        files: rows.len(),
    };
    Ok((report("batch", input, Payload::Batch(BatchResult { rows }), caveats), worst))
}
