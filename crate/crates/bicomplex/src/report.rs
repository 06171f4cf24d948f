//! Report assembly: the full analysis pipeline and its serializations.
//!
//! `analyze_*` runs parse/load → build → validate → tables → flags →
//! sequences → cone maps → named criteria, and returns a deterministic
//! report: identical input bytes, parameters and seeds produce byte-identical
//! JSON (all maps are ordered, scalars render canonically, no floats, no
//! timestamps).

use crate::cohomology::suites::{geometric_suite, Finding, GateError};
use crate::cohomology::{bidegree_key, Engine, GroupDims, InvariantTable};
use crate::complex::DoubleComplex;
use crate::dcx::{parse_dcx, DcxError};
use crate::lemma::cones::{cone_maps, ConeMapReport};
use crate::lemma::degrees::{all_degree_conditions_hold, degree_conditions, DegreeFlags};
use crate::lemma::named::{balanced_example, sgg, square_range_n, surface_criterion};
use crate::lemma::named::{BalancedExampleReport, SggReport, SurfaceReport};
use crate::lemma::{classify_bidegree, regularity, BidegreeFlags, RegularityReport};
use crate::lie::{parse, BuildError, LieModel, ParamAssignment, ParseError};
use crate::scalar::{format_rational_text, parse_rational};
use crate::{oracle, verify};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum AnalyzeError {
    #[error("cannot read `{0}`: {1}")]
    Io(String, String),
    #[error("unsupported input extension (expected .se or .dcx): {0}")]
    Extension(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("build error: {0}")]
    Build(#[from] BuildError),
    #[error("dcx error: {0}")]
    Dcx(#[from] DcxError),
    #[error("bad parameter value `{0}`: {1}")]
    BadParam(String, String),
    #[error("invalid double complex: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub file: String,
    pub format: String,
    pub params: BTreeMap<String, String>,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelInfo {
    pub lie_model: bool,
    pub unimodular: Option<bool>,
    pub connected_top: bool,
    pub n: Option<i32>,
    pub p_range: (i32, i32),
    pub q_range: (i32, i32),
    /// Dimensions are those of the invariant-form model; whether they equal
    /// the cohomology of a compact quotient is a theorem the tool never
    /// decides.
    pub invariant_model_disclaimer: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdicts {
    pub regularity: RegularityReport,
    pub degree_conditions_all: bool,
    /// First-page degeneration of the column-filtration spectral sequence,
    /// detected by dimension comparison: every Betti number equals the sum of
    /// the Dolbeault numbers on its antidiagonal.
    pub e1_degeneration: bool,
    pub sgg: Option<SggReport>,
    pub surface: Option<SurfaceReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FocusSection {
    pub bidegree: String,
    pub dims: GroupDims,
    pub flags: BidegreeFlags,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputInfo,
    pub model: ModelInfo,
    pub table: InvariantTable,
    pub flags: BTreeMap<String, BidegreeFlags>,
    pub degree_flags: BTreeMap<i32, DegreeFlags>,
    pub cone_maps: BTreeMap<i32, ConeMapReport>,
    pub verdicts: Verdicts,
    pub geometric_suite: Option<String>,
    pub focus: Option<FocusSection>,
    pub notes: Vec<String>,
    /// Failures of theorem-backed checks; nonempty means an engine bug.
    pub violations: Vec<Finding>,
}

/// A successful analysis: the report plus the built model when the input was
/// a structure-equation file.
pub struct Analysis {
    pub report: AnalysisReport,
    pub model: Option<LieModel>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parse `name=rational` command-line parameter bindings.
pub fn parse_param_args(args: &[String]) -> Result<ParamAssignment, AnalyzeError> {
    let mut out = ParamAssignment::new();
    for arg in args {
        let (name, value) = arg
            .split_once('=')
            .ok_or_else(|| AnalyzeError::BadParam(arg.clone(), "expected name=value".into()))?;
        let r = parse_rational(value)
            .map_err(|e| AnalyzeError::BadParam(name.to_string(), e.to_string()))?;
        out.insert(name.trim().to_string(), r);
    }
    Ok(out)
}

/// Analyze a `.se` or `.dcx` file.
pub fn analyze_file(
    path: &Path,
    params: &ParamAssignment,
    focus: Option<(i32, i32)>,
) -> Result<Analysis, AnalyzeError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AnalyzeError::Io(path.display().to_string(), e.to_string()))?;
    let display_name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    match path.extension().and_then(|e| e.to_str()) {
        Some("se") => analyze_se(&display_name, &text, params, focus),
        Some("dcx") => analyze_dcx(&display_name, &text, focus),
        _ => Err(AnalyzeError::Extension(path.display().to_string())),
    }
}

pub fn analyze_se(
    name: &str,
    text: &str,
    params: &ParamAssignment,
    focus: Option<(i32, i32)>,
) -> Result<Analysis, AnalyzeError> {
    let se = parse(text)?;
    let model = LieModel::build(&se, params)?;
    let input = InputInfo {
        file: name.to_string(),
        format: "se".into(),
        params: model
            .assignment
            .iter()
            .map(|(k, v)| (k.clone(), format_rational_text(v)))
            .collect(),
        sha256: sha256_hex(text.as_bytes()),
    };
    let report = build_report(input, &model.complex, Some(&model), focus)?;
    Ok(Analysis {
        report,
        model: Some(model),
    })
}

pub fn analyze_dcx(
    name: &str,
    text: &str,
    focus: Option<(i32, i32)>,
) -> Result<Analysis, AnalyzeError> {
    let dc = parse_dcx(text)?;
    let violations = dc.validate();
    if let Some(first) = violations.first() {
        return Err(AnalyzeError::Invalid(format!(
            "{} violation(s), first: {first}",
            violations.len()
        )));
    }
    let input = InputInfo {
        file: name.to_string(),
        format: "dcx".into(),
        params: BTreeMap::new(),
        sha256: sha256_hex(text.as_bytes()),
    };
    let report = build_report(input, &dc, None, focus)?;
    Ok(Analysis {
        report,
        model: None,
    })
}

fn build_report(
    input: InputInfo,
    dc: &DoubleComplex,
    model: Option<&LieModel>,
    focus: Option<(i32, i32)>,
) -> Result<AnalysisReport, AnalyzeError> {
    let engine = Engine::new(dc).map_err(|e| AnalyzeError::Invalid(e.to_string()))?;
    let real = model.map(|m| &m.real);

    // Theorem-backed verification first: any finding is an engine bug and
    // flips the exit code.
    let mut violations = verify::theorem_battery(dc, real);

    let table = engine.table();
    let mut flags = BTreeMap::new();
    for (p, q) in engine.bidegrees() {
        let (f, findings) = classify_bidegree(&engine, p, q);
        flags.insert(bidegree_key(p, q), f);
        violations.extend(findings);
    }

    let mut degree_flags = BTreeMap::new();
    let (k_min, k_max) = engine.total.k_range();
    for k in k_min..=k_max {
        let (f, findings) = degree_conditions(&engine, k);
        degree_flags.insert(k, f);
        violations.extend(findings);
    }

    let mut cone_reports = BTreeMap::new();
    if let Some(n) = square_range_n(&engine) {
        for p in 1..=n - 1 {
            let (r, findings) = cone_maps(&engine, p);
            cone_reports.insert(p, r);
            violations.extend(findings);
        }
    }

    let (sgg_report, surface_report) = if square_range_n(&engine).is_some() {
        let (s, findings) = sgg(&engine);
        violations.extend(findings);
        (Some(s), surface_criterion(&engine))
    } else {
        (None, None)
    };

    let geometric_suite_outcome = match model {
        Some(m) => match geometric_suite(m, &engine) {
            Ok(findings) => {
                let n = findings.len();
                violations.extend(findings);
                Some(if n == 0 {
                    "passed".to_string()
                } else {
                    format!("{n} failure(s)")
                })
            }
            Err(GateError::NotUnimodular) => Some("skipped: model is not unimodular".into()),
            Err(GateError::NotLieModel) => Some("skipped: not an invariant model".into()),
        },
        None => Some("skipped: abstract input".into()),
    };

    let focus = focus.map(|(p, q)| FocusSection {
        bidegree: bidegree_key(p, q),
        dims: table.get(p, q).copied().unwrap_or_else(zero_dims),
        flags: classify_bidegree(&engine, p, q).0,
    });

    let e1_degeneration = {
        let (k_min, k_max) = engine.total.k_range();
        let (p_min, p_max) = dc.p_range();
        let (q_min, q_max) = dc.q_range();
        (k_min..=k_max).all(|k| {
            let sum: usize = (p_min..=p_max)
                .filter(|p| (k - p) >= q_min && (k - p) <= q_max)
                .map(|p| engine.groups(p, k - p).h_dbar.dim())
                .sum();
            engine.betti(k) == sum
        })
    };

    let verdicts = Verdicts {
        regularity: regularity(&engine),
        degree_conditions_all: all_degree_conditions_hold(&engine),
        e1_degeneration,
        sgg: sgg_report,
        surface: surface_report,
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input,
        model: ModelInfo {
            lie_model: dc.flags.is_lie_model,
            unimodular: dc.flags.is_lie_model.then_some(dc.flags.unimodular),
            connected_top: dc.flags.connected_top,
            n: model.map(|m| m.n as i32),
            p_range: dc.p_range(),
            q_range: dc.q_range(),
            invariant_model_disclaimer: dc.flags.is_lie_model,
        },
        table,
        flags,
        degree_flags,
        cone_maps: cone_reports,
        verdicts,
        geometric_suite: geometric_suite_outcome,
        focus,
        notes: standing_notes(dc),
        violations,
    })
}

fn standing_notes(dc: &DoubleComplex) -> Vec<String> {
    let mut notes = Vec::new();
    if dc.flags.is_lie_model {
        notes.push(
            "real-coefficient groups at diagonal bidegrees (k,k) have real dimension equal to \
             the complex dimension reported here (they are the fixed sets of the conjugation \
             involution)"
                .to_string(),
        );
        notes.push(
            "dimensions are those of the invariant-form model; equality with the cohomology of \
             a compact quotient is a theorem about the quotient, not decided by this tool"
                .to_string(),
        );
    }
    notes
}

fn zero_dims() -> GroupDims {
    GroupDims {
        h_dbar: 0,
        h_del: 0,
        h_bc: 0,
        h_a: 0,
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        e: 0,
        f: 0,
        b_tilde: 0,
        c_tilde: 0,
        d_tilde: 0,
        e_tilde: 0,
    }
}

/// Canonical JSON rendering (byte-deterministic).
pub fn to_json(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

/// Human-readable markdown rendering: one grid per quantity, bidegrees as a
/// table with `p` across and `q` down.
pub fn to_markdown(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: &str| {
        out.push_str(s);
        out.push('\n');
    };
    push(&mut out, &format!("# Analysis of `{}`", report.input.file));
    push(&mut out, "");
    if !report.input.params.is_empty() {
        let ps: Vec<String> = report
            .input
            .params
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        push(&mut out, &format!("parameters: {}", ps.join(", ")));
    }
    push(
        &mut out,
        &format!(
            "model: {} | p range {:?}, q range {:?}",
            if report.model.lie_model {
                format!(
                    "invariant Lie model (unimodular: {})",
                    report.model.unimodular.unwrap_or(false)
                )
            } else {
                "abstract double complex".to_string()
            },
            report.model.p_range,
            report.model.q_range
        ),
    );
    for note in &report.notes {
        push(&mut out, &format!("note: {note}."));
    }
    push(&mut out, "");

    if let Some(f) = &report.focus {
        push(&mut out, &format!("## Focus ({})", f.bidegree));
        push(&mut out, "");
        push(
            &mut out,
            &format!(
                "flags: mild={} dual_mild={} tilde_mild={} tilde_dual_mild={} weak={} strong={} script_d={}",
                f.flags.mild,
                f.flags.dual_mild,
                f.flags.tilde_mild,
                f.flags.tilde_dual_mild,
                f.flags.weak,
                f.flags.strong,
                f.flags.script_d
            ),
        );
        push(
            &mut out,
            &format!(
                "dims: h_dbar={} h_del={} h_bc={} h_a={} a={} b={} c={} d={} e={} f={}",
                f.dims.h_dbar,
                f.dims.h_del,
                f.dims.h_bc,
                f.dims.h_a,
                f.dims.a,
                f.dims.b,
                f.dims.c,
                f.dims.d,
                f.dims.e,
                f.dims.f
            ),
        );
        push(&mut out, "");
    }

    push(&mut out, "## Invariant table");
    push(&mut out, "");
    type Getter = fn(&GroupDims) -> usize;
    let quantities: [(&str, Getter); 14] = [
        ("h_dbar", |g| g.h_dbar),
        ("h_del", |g| g.h_del),
        ("h_bc", |g| g.h_bc),
        ("h_a", |g| g.h_a),
        ("a", |g| g.a),
        ("b", |g| g.b),
        ("c", |g| g.c),
        ("d", |g| g.d),
        ("e", |g| g.e),
        ("f", |g| g.f),
        ("b_tilde", |g| g.b_tilde),
        ("c_tilde", |g| g.c_tilde),
        ("d_tilde", |g| g.d_tilde),
        ("e_tilde", |g| g.e_tilde),
    ];
    let (p_min, p_max) = report.model.p_range;
    let (q_min, q_max) = report.model.q_range;
    for (name, get) in quantities {
        push(&mut out, &format!("### {name}"));
        push(&mut out, "");
        let header: Vec<String> = (p_min..=p_max).map(|p| p.to_string()).collect();
        push(&mut out, &format!("| q\\p | {} |", header.join(" | ")));
        push(
            &mut out,
            &format!(
                "|---|{}|",
                (p_min..=p_max).map(|_| "---").collect::<Vec<_>>().join("|")
            ),
        );
        for q in (q_min..=q_max).rev() {
            let row: Vec<String> = (p_min..=p_max)
                .map(|p| {
                    report
                        .table
                        .get(p, q)
                        .map(get)
                        .map_or("·".to_string(), |v| v.to_string())
                })
                .collect();
            push(&mut out, &format!("| {q} | {} |", row.join(" | ")));
        }
        push(&mut out, "");
    }

    push(&mut out, "## Betti numbers");
    push(&mut out, "");
    let ks: Vec<String> = report.table.betti.keys().map(|k| k.to_string()).collect();
    let bs: Vec<String> = report.table.betti.values().map(|b| b.to_string()).collect();
    push(&mut out, &format!("| k | {} |", ks.join(" | ")));
    push(
        &mut out,
        &format!(
            "|---|{}|",
            ks.iter().map(|_| "---").collect::<Vec<_>>().join("|")
        ),
    );
    push(&mut out, &format!("| b_k | {} |", bs.join(" | ")));
    push(&mut out, "");

    push(&mut out, "## Bidegree flags");
    push(&mut out, "");
    push(
        &mut out,
        "| (p,q) | mild | dual_mild | tilde_mild | tilde_dual_mild | weak | strong | script_d |",
    );
    push(&mut out, "|---|---|---|---|---|---|---|---|");
    for (key, f) in &report.flags {
        push(
            &mut out,
            &format!(
                "| {key} | {} | {} | {} | {} | {} | {} | {} |",
                f.mild, f.dual_mild, f.tilde_mild, f.tilde_dual_mild, f.weak, f.strong, f.script_d
            ),
        );
    }
    push(&mut out, "");

    push(&mut out, "## Degree conditions");
    push(&mut out, "");
    push(
        &mut out,
        "| k | a_k | b_k | c_k | a*_{k-1} | b*_{k-1} | c*_{k-1} |",
    );
    push(&mut out, "|---|---|---|---|---|---|---|");
    for (k, f) in &report.degree_flags {
        push(
            &mut out,
            &format!(
                "| {k} | {} | {} | {} | {} | {} | {} |",
                f.a_k, f.b_k, f.c_k, f.a_star, f.b_star, f.c_star
            ),
        );
    }
    push(&mut out, "");

    if !report.cone_maps.is_empty() {
        push(&mut out, "## Cone maps");
        push(&mut out, "");
        push(
            &mut out,
            "| p | dim source | rank T | rank W | ker T | ker W | equivalences | factorization |",
        );
        push(&mut out, "|---|---|---|---|---|---|---|---|");
        for (p, r) in &report.cone_maps {
            push(
                &mut out,
                &format!(
                    "| {p} | {} | {} | {} | {} | {} | {:?} | {} |",
                    r.source_dim,
                    r.rank_t,
                    r.rank_w,
                    r.ker_t_dim,
                    r.ker_w_dim,
                    r.equivalences,
                    r.factorization_ok
                ),
            );
        }
        push(&mut out, "");
    }

    push(&mut out, "## Verdicts");
    push(&mut out, "");
    let reg = &report.verdicts.regularity;
    push(
        &mut out,
        &format!("- regular (full exactness property): **{}**", reg.regular),
    );
    push(
        &mut out,
        &format!(
            "  - families: e => {}, c => {}, b => {}, d => {}",
            reg.by_e, reg.by_c, reg.by_b, reg.by_d
        ),
    );
    push(
        &mut out,
        &format!(
            "- degree conditions hold in all degrees: **{}**",
            report.verdicts.degree_conditions_all
        ),
    );
    push(
        &mut out,
        &format!(
            "- first-page spectral degeneration (Betti = Dolbeault sums): **{}**",
            report.verdicts.e1_degeneration
        ),
    );
    if let Some(s) = &report.verdicts.sgg {
        push(
            &mut out,
            &format!(
                "- sGG: **{}** (b~ test {}, h01 test {}, rank-T test {})",
                s.verdict, s.by_tilde_b, s.by_h01, s.by_rank_t
            ),
        );
    }
    if let Some(s) = &report.verdicts.surface {
        push(
            &mut out,
            &format!(
                "- surface model-level indicator: h21 {}, b~ {}, all-vanishing {} (agree: {})",
                s.by_h21, s.by_tilde_b, s.by_all_vanishing, s.agree
            ),
        );
    }
    if let Some(g) = &report.geometric_suite {
        push(&mut out, &format!("- geometric suite: {g}"));
    }
    push(&mut out, "");

    if report.violations.is_empty() {
        push(&mut out, "No theorem-backed check failed.");
    } else {
        push(&mut out, "## VIOLATIONS (engine bugs)");
        push(&mut out, "");
        for v in &report.violations {
            push(&mut out, &format!("- {v}"));
        }
    }
    out
}

/// The committed corpus: every entry has an oracle-produced fixture.
pub const CORPUS_ENTRIES: [&str; 9] = [
    "torus1.se",
    "torus2.se",
    "torus3.se",
    "iwasawa.se",
    "iwasawa_family.se",
    "kodaira_thurston.se",
    "sl2c.se",
    "square.dcx",
    "zigzag.dcx",
];

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntryOutcome {
    pub name: String,
    pub sha256: String,
    pub engine_matches_fixture: bool,
    pub oracle_matches_fixture: bool,
    pub violations: usize,
    pub regular: bool,
    pub sgg: Option<bool>,
    pub balanced_example: Option<BalancedExampleReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub schema_version: u32,
    pub entries: Vec<CorpusEntryOutcome>,
    pub drift: usize,
    pub ok: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus entry {0}: {1}")]
    Entry(String, String),
    #[error("fixture for {0}: {1}")]
    Fixture(String, String),
}

/// Run the committed corpus against its oracle-produced fixtures.
///
/// With `update` set, fixtures are rewritten from the oracle (never from the
/// engine, so a drifting engine cannot overwrite ground truth with itself).
pub fn run_corpus(dir: &Path, update: bool) -> Result<CorpusSummary, CorpusError> {
    let mut entries = Vec::new();
    let mut drift = 0usize;
    for name in CORPUS_ENTRIES {
        let path = dir.join(name);
        let analysis = analyze_file(&path, &ParamAssignment::new(), None)
            .map_err(|e| CorpusError::Entry(name.into(), e.to_string()))?;
        let report = &analysis.report;

        // Recompute the oracle table fresh on every run.
        let oracle_table = match analysis.model.as_ref() {
            Some(m) => oracle::table(&m.complex),
            None => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CorpusError::Entry(name.into(), e.to_string()))?;
                let dc =
                    parse_dcx(&text).map_err(|e| CorpusError::Entry(name.into(), e.to_string()))?;
                oracle::table(&dc)
            }
        };

        let fixture_path = dir.join("fixtures").join(format!("{name}.json"));
        if update {
            let json = serde_json::to_string_pretty(&oracle_table)
                .map_err(|e| CorpusError::Fixture(name.into(), e.to_string()))?;
            std::fs::write(&fixture_path, json)
                .map_err(|e| CorpusError::Fixture(name.into(), e.to_string()))?;
        }
        let fixture: InvariantTable = {
            let text = std::fs::read_to_string(&fixture_path)
                .map_err(|e| CorpusError::Fixture(name.into(), e.to_string()))?;
            serde_json::from_str(&text)
                .map_err(|e| CorpusError::Fixture(name.into(), e.to_string()))?
        };

        let engine_matches_fixture = report.table == fixture;
        let oracle_matches_fixture = oracle_table == fixture;
        if !engine_matches_fixture || !oracle_matches_fixture {
            drift += 1;
        }

        let balanced = if name == "sl2c.se" {
            analysis
                .model
                .as_ref()
                .map(|m| balanced_example(m).expect("sl2c model has the expected generators"))
        } else {
            None
        };

        entries.push(CorpusEntryOutcome {
            name: name.to_string(),
            sha256: report.input.sha256.clone(),
            engine_matches_fixture,
            oracle_matches_fixture,
            violations: report.violations.len(),
            regular: report.verdicts.regularity.regular,
            sgg: report.verdicts.sgg.map(|s| s.verdict),
            balanced_example: balanced,
        });
    }
    let ok = drift == 0
        && entries.iter().all(|e| e.violations == 0)
        && entries.iter().all(|e| {
            e.balanced_example
                .is_none_or(|b| b.d_omega_sq_zero && b.primitive_matches && b.degrees_ok)
        });
    Ok(CorpusSummary {
        schema_version: SCHEMA_VERSION,
        entries,
        drift,
        ok,
    })
}

/// Canonical JSON for a corpus summary.
pub fn corpus_to_json(summary: &CorpusSummary) -> String {
    serde_json::to_string_pretty(summary).expect("summary serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn se_report_is_deterministic_and_clean() {
        let text = "dim 2\nd phi1 = 0\nd phi2 = 0\n";
        let a = analyze_se("torus2.se", text, &ParamAssignment::new(), None).unwrap();
        let b = analyze_se("torus2.se", text, &ParamAssignment::new(), None).unwrap();
        assert_eq!(to_json(&a.report), to_json(&b.report));
        assert!(a.report.violations.is_empty());
        assert!(a.report.verdicts.regularity.regular);
        assert!(a.report.verdicts.sgg.unwrap().verdict);
        let md = to_markdown(&a.report);
        assert!(md.contains("### h_dbar"));
        assert!(md.contains("No theorem-backed check failed."));
    }

    #[test]
    fn focus_section_reports_flags() {
        let text = "dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n";
        let a = analyze_se("iwasawa.se", text, &ParamAssignment::new(), Some((2, 3))).unwrap();
        let focus = a.report.focus.as_ref().unwrap();
        assert!(focus.flags.weak);
        assert!(focus.flags.dual_mild);
        assert!(!focus.flags.mild);
    }

    #[test]
    fn dcx_report_skips_geometric() {
        let text = r#"{"dims": {"0,0": 1, "1,0": 1}, "del": {"0,0": [["1"]]}}"#;
        let a = analyze_dcx("zigzag.dcx", text, None).unwrap();
        assert!(a.report.geometric_suite.unwrap().contains("abstract"));
        assert!(a.report.violations.is_empty());
        assert!(!a.report.verdicts.regularity.regular);
    }

    #[test]
    fn invalid_dcx_is_an_input_error() {
        // A commuting-convention square: anticommutator is 2, not 0.
        let text = r#"{"dims": {"0,0": 1, "1,0": 1, "0,1": 1, "1,1": 1},
            "del": {"0,0": [["1"]], "0,1": [["1"]]},
            "delbar": {"0,0": [["1"]], "1,0": [["1"]]}}"#;
        assert!(matches!(
            analyze_dcx("bad.dcx", text, None),
            Err(AnalyzeError::Invalid(_))
        ));
    }

    #[test]
    fn param_args_parse() {
        let pa = parse_param_args(&["t=1/2".into()]).unwrap();
        assert_eq!(pa["t"], crate::scalar::rational(1, 2));
        assert!(parse_param_args(&["nope".into()]).is_err());
        assert!(parse_param_args(&["t=x".into()]).is_err());
    }
}
