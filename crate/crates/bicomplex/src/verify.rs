//! The theorem battery: every unconditional check the crate knows, run
//! against one complex and collected as findings.
//!
//! All of these are theorems for valid double complexes, so a nonempty result
//! always signals an implementation bug (and the fuzz driver treats it that
//! way, dumping the offending complex for replay).

use crate::cohomology::sequences::{shift_isomorphisms, verify_sequence, SequenceId};
use crate::cohomology::suites::{identity_suite, Finding};
use crate::cohomology::Engine;
use crate::complex::{DoubleComplex, RealStructure};
use crate::lemma::cones::cone_maps;
use crate::lemma::degrees::{all_degree_conditions_hold, degree_conditions};
use crate::lemma::{classify_bidegree, regularity};
use crate::{oracle, random};

/// Run every unconditional suite. Returns all findings (empty = pass).
pub fn theorem_battery(dc: &DoubleComplex, real: Option<&RealStructure>) -> Vec<Finding> {
    let mut out = Vec::new();
    for v in dc.validate() {
        out.push(Finding::new("validate", v.bidegree, v.to_string()));
    }
    if !out.is_empty() {
        return out;
    }
    let engine = match Engine::new(dc) {
        Ok(e) => e,
        Err(e) => {
            out.push(Finding::new("engine", dc.p_range(), e.to_string()));
            return out;
        }
    };

    // Exactness of the eight sequences at every bidegree.
    for id in SequenceId::ALL {
        for (p, q) in engine.extended_bidegrees() {
            let r = verify_sequence(&engine, id, p, q);
            for f in r.failures {
                out.push(Finding::new(format!("sequence-{id}"), (p, q), f));
            }
        }
    }

    // The two shift isomorphisms.
    for (p, q) in engine.extended_bidegrees() {
        for f in shift_isomorphisms(&engine, p, q) {
            out.push(Finding::new("shift-iso", (p, q), f));
        }
    }

    // Dimension identities (and conjugation symmetries when σ is present).
    out.extend(identity_suite(&engine, real));

    // Flag cross-checks and implications.
    for (p, q) in engine.extended_bidegrees() {
        let (_, findings) = classify_bidegree(&engine, p, q);
        out.extend(findings);
    }

    // Regularity agreement: the shift-paired characterizations always, the
    // full four-way comparison when conjugation symmetry is available.
    let reg = regularity(&engine);
    if !reg.pairs_agree {
        out.push(Finding::new(
            "regularity-pairs",
            dc.p_range(),
            format!("{reg:?}"),
        ));
    }
    if real.is_some() && !reg.four_way_agree {
        out.push(Finding::new(
            "regularity-four-way",
            dc.p_range(),
            format!("{reg:?}"),
        ));
    }

    // Degree-wise six-way agreement, and its equivalence with regularity.
    let (k_min, k_max) = engine.total.k_range();
    for k in k_min..=k_max + 1 {
        let (_, findings) = degree_conditions(&engine, k);
        out.extend(findings);
    }
    let degree_verdict = all_degree_conditions_hold(&engine);
    if degree_verdict != reg.regular {
        out.push(Finding::new(
            "degrees-vs-regular",
            (k_min, k_max),
            format!(
                "degree conditions say {degree_verdict}, regularity says {}",
                reg.regular
            ),
        ));
    }

    // Cone maps along the whole diagonal: equivalences and factorization.
    let (p_min, p_max) = dc.p_range();
    let (q_min, q_max) = dc.q_range();
    let diag_min = p_min.min(q_min) - 1;
    let diag_max = p_max.max(q_max);
    let mut t_all_zero = true;
    let mut w_all_zero = true;
    for p in diag_min..=diag_max {
        let (r, findings) = cone_maps(&engine, p);
        out.extend(findings);
        t_all_zero &= r.rank_t == 0;
        w_all_zero &= r.rank_w == 0;
    }
    // Regularity kills both cone maps everywhere.
    if reg.regular && !(t_all_zero && w_all_zero) {
        out.push(Finding::new(
            "regular-kills-cones",
            (diag_min, diag_max),
            "regular complex with a nonzero cone map",
        ));
    }

    // Dual-route check: the rank-formula oracle must reproduce the table.
    if oracle::table(dc) != engine.table() {
        out.push(Finding::new(
            "oracle-table",
            dc.p_range(),
            "engine table differs from the independent rank oracle",
        ));
    }

    out
}

/// Every invariant-table entry is unchanged under a random bigraded base
/// change (seeded, reproducible).
pub fn check_base_change_invariance(dc: &DoubleComplex, seed: u64) -> Vec<Finding> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let iso = random::random_iso(&mut rng, dc);
    let changed = match dc.base_change(&iso) {
        Ok(c) => c,
        Err(e) => return vec![Finding::new("base-change", dc.p_range(), e.to_string())],
    };
    let mut out = Vec::new();
    let before = match Engine::new(dc) {
        Ok(e) => e.table(),
        Err(e) => return vec![Finding::new("base-change", dc.p_range(), e.to_string())],
    };
    let after = match Engine::new(&changed) {
        Ok(e) => e.table(),
        Err(e) => {
            return vec![Finding::new(
                "base-change",
                dc.p_range(),
                format!("conjugated complex invalid: {e}"),
            )]
        }
    };
    if before != after {
        out.push(Finding::new(
            "base-change-invariance",
            dc.p_range(),
            "invariant table changed under a bigraded isomorphism",
        ));
    }
    out
}

/// Every invariant-table entry is additive under direct sum.
pub fn check_direct_sum_additivity(a: &DoubleComplex, b: &DoubleComplex) -> Vec<Finding> {
    let sum = a.direct_sum(b);
    let (ta, tb, ts) = match (Engine::new(a), Engine::new(b), Engine::new(&sum)) {
        (Ok(x), Ok(y), Ok(z)) => (x.table(), y.table(), z.table()),
        _ => {
            return vec![Finding::new(
                "direct-sum",
                a.p_range(),
                "engine failed on a summand",
            )]
        }
    };
    let mut out = Vec::new();
    for (key, dims) in &ts.entries {
        let da = ta.entries.get(key);
        let db = tb.entries.get(key);
        let get =
            |t: Option<&crate::cohomology::GroupDims>,
             f: fn(&crate::cohomology::GroupDims) -> usize| { t.map_or(0, f) };
        type Getter = fn(&crate::cohomology::GroupDims) -> usize;
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
        for (name, getter) in quantities {
            let got = getter(dims);
            let want = get(da, getter) + get(db, getter);
            if got != want {
                out.push(Finding::new(
                    "direct-sum-additivity",
                    key,
                    format!("{name}: sum has {got}, summands give {want}"),
                ));
            }
        }
    }
    for (k, &b_k) in &ts.betti {
        let want = ta.betti.get(k).copied().unwrap_or(0) + tb.betti.get(k).copied().unwrap_or(0);
        if b_k != want {
            out.push(Finding::new(
                "direct-sum-additivity",
                k,
                format!("betti: sum has {b_k}, summands give {want}"),
            ));
        }
    }
    out
}

/// One fuzz instance: the complex, its findings, and the replay dump when it
/// failed.
pub struct FuzzFailure {
    pub index: usize,
    pub seed: u64,
    pub findings: Vec<Finding>,
    pub dcx: String,
}

pub struct FuzzSummary {
    pub count: usize,
    pub failures: Vec<FuzzFailure>,
}

/// Run the full battery (plus base-change invariance and pairwise direct-sum
/// additivity) over `count` seeded random complexes.
pub fn run_fuzz(seed: u64, count: usize, budget: usize) -> FuzzSummary {
    let mut failures = Vec::new();
    let mut prev: Option<DoubleComplex> = None;
    for index in 0..count {
        let instance_seed = seed.wrapping_add(index as u64);
        let dc = random::random_complex(instance_seed, budget);
        let mut findings = theorem_battery(&dc, None);
        findings.extend(check_base_change_invariance(&dc, instance_seed ^ 0x5eed));
        if let Some(ref other) = prev {
            findings.extend(check_direct_sum_additivity(&dc, other));
        }
        if !findings.is_empty() {
            failures.push(FuzzFailure {
                index,
                seed: instance_seed,
                findings,
                dcx: crate::dcx::to_dcx(&dc),
            });
        }
        prev = Some(dc);
    }
    FuzzSummary { count, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{parse, LieModel, ParamAssignment};

    #[test]
    fn battery_clean_on_iwasawa() {
        let m = LieModel::build(
            &parse("dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n").unwrap(),
            &ParamAssignment::new(),
        )
        .unwrap();
        let findings = theorem_battery(&m.complex, Some(&m.real));
        assert!(findings.is_empty(), "{findings:#?}");
    }

    #[test]
    fn small_fuzz_run_is_clean() {
        let summary = run_fuzz(100, 8, 10);
        assert_eq!(summary.count, 8);
        assert!(
            summary.failures.is_empty(),
            "first failure: {:#?}",
            summary.failures[0].findings
        );
    }

    #[test]
    fn battery_reports_invalid_complexes() {
        use crate::scalar::from_int;
        use crate::Mat;
        let bad = crate::complex::DoubleComplex::builder()
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .dim(0, 1, 1)
            .dim(1, 1, 1)
            .del(0, 0, Mat::from_rows(vec![vec![from_int(1)]]))
            .del(0, 1, Mat::from_rows(vec![vec![from_int(1)]]))
            .delbar(0, 0, Mat::from_rows(vec![vec![from_int(1)]]))
            .delbar(1, 0, Mat::from_rows(vec![vec![from_int(1)]]))
            .build()
            .unwrap();
        let findings = theorem_battery(&bad, None);
        assert!(!findings.is_empty());
        assert_eq!(findings[0].check, "validate");
    }
}
