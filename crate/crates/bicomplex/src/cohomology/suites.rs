//! Dimension-identity and geometric check suites.
//!
//! `identity_suite` collects the unconditional arithmetic consequences of the
//! connecting sequences; it must come back empty on every valid complex, so
//! it doubles as a fuzz oracle. `geometric_suite` asserts the statements that
//! are theorems for compact-quotient invariant models only, and refuses to
//! run when its gate (a unimodular Lie model) is not satisfied.

use super::{Engine, Subquotient};
use crate::complex::RealStructure;
use crate::lie::LieModel;
use crate::Mat;
use std::fmt;

/// A failed check: which check, where, and what was seen.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Finding {
    pub check: String,
    pub at: String,
    pub detail: String,
}

impl Finding {
    pub fn new(check: impl Into<String>, at: impl fmt::Debug, detail: impl Into<String>) -> Self {
        Finding {
            check: check.into(),
            at: format!("{at:?}"),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] at {}: {}", self.check, self.at, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GateError {
    #[error("geometric suite requires an invariant Lie model (abstract input)")]
    NotLieModel,
    #[error("geometric suite requires a unimodular model")]
    NotUnimodular,
}

macro_rules! expect_eq {
    ($out:expr, $check:expr, $at:expr, $lhs:expr, $rhs:expr) => {
        if $lhs != $rhs {
            $out.push(Finding::new(
                $check,
                $at,
                format!(
                    "{} = {} but {} = {}",
                    stringify!($lhs),
                    $lhs,
                    stringify!($rhs),
                    $rhs
                ),
            ));
        }
    };
}

macro_rules! expect_le {
    ($out:expr, $check:expr, $at:expr, $lhs:expr, $rhs:expr) => {
        if $lhs > $rhs {
            $out.push(Finding::new(
                $check,
                $at,
                format!(
                    "{} = {} > {} = {}",
                    stringify!($lhs),
                    $lhs,
                    stringify!($rhs),
                    $rhs
                ),
            ));
        }
    };
}

/// Unconditional dimension identities: the four equality families and the
/// inequality family of the linking lemma, the edge inequalities at the
/// range boundary, both spectral-sequence bounds on the Betti numbers, and,
/// when a real structure is present, the conjugation symmetries.
pub fn identity_suite(engine: &Engine, real: Option<&RealStructure>) -> Vec<Finding> {
    let mut out = Vec::new();
    for (p, q) in engine.extended_bidegrees() {
        let g = engine.groups(p, q);
        let at = (p, q);
        let (h_dbar, h_del, h_bc, h_a) = (g.h_dbar.dim(), g.h_del.dim(), g.h_bc.dim(), g.h_a.dim());
        let (a, b, c, d, e, f) = (
            g.a.dim(),
            g.b.dim(),
            g.c.dim(),
            g.d.dim(),
            g.e.dim(),
            g.f.dim(),
        );
        let (bt, ct, dt, et) = (
            g.b_tilde.dim(),
            g.c_tilde.dim(),
            g.d_tilde.dim(),
            g.e_tilde.dim(),
        );

        // Tilde decompositions.
        expect_eq!(out, "tilde-decomposition", at, b, bt + a);
        expect_eq!(out, "tilde-decomposition", at, d, dt + a);
        expect_eq!(out, "tilde-decomposition", at, c, ct + f);
        expect_eq!(out, "tilde-decomposition", at, e, et + f);
        // Bounds by the two mixed cohomologies.
        expect_le!(out, "mixed-cohomology-bound", at, b, h_bc);
        expect_le!(out, "mixed-cohomology-bound", at, d, h_bc);
        expect_le!(out, "mixed-cohomology-bound", at, c, h_a);
        expect_le!(out, "mixed-cohomology-bound", at, e, h_a);
        // Euler relations of the four-term sequences.
        expect_eq!(out, "sequence-euler", at, h_a + bt, h_dbar + c);
        expect_eq!(out, "sequence-euler", at, h_a + dt, h_del + e);
        expect_eq!(out, "sequence-euler", at, h_bc + et, h_dbar + d);
        expect_eq!(out, "sequence-euler", at, h_bc + ct, h_del + b);
        // The symmetric four-way identity.
        expect_eq!(
            out,
            "four-term-identity",
            at,
            h_a + h_bc,
            h_del + h_dbar + a + f
        );
    }

    // Edge inequalities, evaluated at the boundary of the actual range
    // (where the relevant obstruction groups vanish for any bounded complex).
    let (p_min, p_max) = engine.dc.p_range();
    let (q_min, q_max) = engine.dc.q_range();
    for q in q_min..=q_max {
        let lo = engine.groups(p_min, q);
        expect_le!(
            out,
            "edge-inequality-low",
            (p_min, q),
            lo.h_dbar.dim(),
            lo.h_a.dim()
        );
        expect_le!(
            out,
            "edge-inequality-low",
            (p_min, q),
            lo.h_bc.dim(),
            lo.h_del.dim()
        );
        let hi = engine.groups(p_max, q);
        expect_le!(
            out,
            "edge-inequality-high",
            (p_max, q),
            hi.h_dbar.dim(),
            hi.h_bc.dim()
        );
        expect_le!(
            out,
            "edge-inequality-high",
            (p_max, q),
            hi.h_a.dim(),
            hi.h_del.dim()
        );
    }
    for p in p_min..=p_max {
        let lo = engine.groups(p, q_min);
        expect_le!(
            out,
            "edge-inequality-low",
            (p, q_min),
            lo.h_bc.dim(),
            lo.h_dbar.dim()
        );
        expect_le!(
            out,
            "edge-inequality-low",
            (p, q_min),
            lo.h_del.dim(),
            lo.h_a.dim()
        );
        let hi = engine.groups(p, q_max);
        expect_le!(
            out,
            "edge-inequality-high",
            (p, q_max),
            hi.h_del.dim(),
            hi.h_bc.dim()
        );
        expect_le!(
            out,
            "edge-inequality-high",
            (p, q_max),
            hi.h_a.dim(),
            hi.h_dbar.dim()
        );
    }

    // Both filtrations bound the Betti numbers.
    let (k_min, k_max) = engine.total.k_range();
    for k in k_min..=k_max {
        let sum_dbar: usize = antidiagonal(engine, k).map(|g| g.h_dbar.dim()).sum();
        let sum_del: usize = antidiagonal(engine, k).map(|g| g.h_del.dim()).sum();
        let b_k = engine.betti(k);
        expect_le!(out, "froelicher-dbar", k, b_k, sum_dbar);
        expect_le!(out, "froelicher-del", k, b_k, sum_del);
    }

    if let Some(real) = real {
        for v in real.validate(engine.dc) {
            out.push(Finding::new("real-structure", v.bidegree, v.to_string()));
        }
        for (p, q) in engine.extended_bidegrees() {
            let g = engine.groups(p, q);
            let t = engine.groups(q, p);
            let at = (p, q);
            expect_eq!(out, "conj", at, g.h_dbar.dim(), t.h_del.dim());
            expect_eq!(out, "conj", at, g.h_bc.dim(), t.h_bc.dim());
            expect_eq!(out, "conj", at, g.h_a.dim(), t.h_a.dim());
            expect_eq!(out, "conj", at, g.a.dim(), t.a.dim());
            expect_eq!(out, "conj", at, g.f.dim(), t.f.dim());
            expect_eq!(out, "conj", at, g.b.dim(), t.d.dim());
            expect_eq!(out, "conj", at, g.c.dim(), t.e.dim());

            // Strong at (p,q) is mildness at both (p,q) and (q,p), and also
            // dual-mildness at both.
            let strong = g.b.dim() == 0 && g.d.dim() == 0;
            let mild_both = g.b.dim() == 0 && t.b.dim() == 0;
            let dual_mild_both = g.d.dim() == 0 && t.d.dim() == 0;
            expect_eq!(out, "conj-strong", at, strong, mild_both);
            expect_eq!(out, "conj-strong", at, strong, dual_mild_both);
        }
    }
    out
}

fn antidiagonal<'e>(
    engine: &'e Engine,
    k: i32,
) -> impl Iterator<Item = &'e super::BidegreeGroups> + 'e {
    let (p_min, p_max) = engine.dc.p_range();
    let (q_min, q_max) = engine.dc.q_range();
    (p_min..=p_max)
        .filter(move |p| (k - p) >= q_min && (k - p) <= q_max)
        .map(move |p| engine.groups(p, k - p))
}

/// Checks that hold for unimodular invariant models: the one-dimensionality
/// and vanishing lists at the corners, the twelve first/last-degree
/// inequalities, the dimension dualities, and nondegeneracy of the wedge
/// pairing between the two mixed cohomologies.
pub fn geometric_suite(model: &LieModel, engine: &Engine) -> Result<Vec<Finding>, GateError> {
    if !engine.dc.flags.is_lie_model {
        return Err(GateError::NotLieModel);
    }
    if !engine.dc.flags.unimodular {
        return Err(GateError::NotUnimodular);
    }
    let n = model.n as i32;
    let mut out = Vec::new();

    // One-dimensional corners.
    for (p, q) in [(0, 0), (n, n)] {
        let g = engine.groups(p, q);
        for (name, dim) in [
            ("h_dbar", g.h_dbar.dim()),
            ("h_del", g.h_del.dim()),
            ("h_bc", g.h_bc.dim()),
            ("h_a", g.h_a.dim()),
        ] {
            if dim != 1 {
                out.push(Finding::new(
                    "corner-dimension",
                    (p, q),
                    format!("{name} should be 1-dimensional, got {dim}"),
                ));
            }
        }
    }
    // Vanishing list.
    let expect_zero = |sq: &Subquotient, name: &str, out: &mut Vec<Finding>| {
        if sq.dim() != 0 {
            out.push(Finding::new(
                "corner-vanishing",
                sq.bidegree(),
                format!("{name} should vanish, got dimension {}", sq.dim()),
            ));
        }
    };
    let g00 = engine.groups(0, 0);
    expect_zero(&g00.c, "C", &mut out);
    expect_zero(&g00.e, "E", &mut out);
    expect_zero(&g00.f, "F", &mut out);
    expect_zero(&engine.groups(1, 0).b, "B", &mut out);
    expect_zero(&engine.groups(0, 1).d, "D", &mut out);
    let gnn = engine.groups(n, n);
    expect_zero(&gnn.a, "A", &mut out);
    expect_zero(&gnn.b, "B", &mut out);
    expect_zero(&gnn.d, "D", &mut out);
    expect_zero(&engine.groups(n, n - 1).c, "C", &mut out);
    expect_zero(&engine.groups(n - 1, n).e, "E", &mut out);
    for p in 0..=n {
        expect_zero(&engine.groups(p, 0).a, "A", &mut out);
        expect_zero(&engine.groups(p, 0).d, "D", &mut out);
        expect_zero(&engine.groups(0, p).a, "A", &mut out);
        expect_zero(&engine.groups(0, p).b, "B", &mut out);
        expect_zero(&engine.groups(p, n).f, "F", &mut out);
        expect_zero(&engine.groups(p, n).c, "C", &mut out);
        expect_zero(&engine.groups(n, p).e, "E", &mut out);
        expect_zero(&engine.groups(n, p).f, "F", &mut out);
    }

    // First/last-degree chains.
    for (p, q) in [(1, 0), (0, 1)] {
        let g = engine.groups(p, q);
        expect_le!(
            out,
            "extreme-degree-chain",
            (p, q),
            g.h_bc.dim(),
            g.h_dbar.dim()
        );
        expect_le!(
            out,
            "extreme-degree-chain",
            (p, q),
            g.h_dbar.dim(),
            g.h_a.dim()
        );
        expect_le!(
            out,
            "extreme-degree-chain",
            (p, q),
            g.h_bc.dim(),
            g.h_del.dim()
        );
        expect_le!(
            out,
            "extreme-degree-chain",
            (p, q),
            g.h_del.dim(),
            g.h_a.dim()
        );
    }
    for (p, q) in [(n, n - 1), (n - 1, n)] {
        let g = engine.groups(p, q);
        expect_le!(
            out,
            "extreme-degree-chain",
            (p, q),
            g.h_a.dim(),
            g.h_dbar.dim()
        );
        expect_le!(
            out,
            "extreme-degree-chain",
            (p, q),
            g.h_dbar.dim(),
            g.h_bc.dim()
        );
        expect_le!(
            out,
            "extreme-degree-chain",
            (p, q),
            g.h_a.dim(),
            g.h_del.dim()
        );
        expect_le!(
            out,
            "extreme-degree-chain",
            (p, q),
            g.h_del.dim(),
            g.h_bc.dim()
        );
    }

    // Dimension dualities against the opposite corner.
    for p in 0..=n {
        for q in 0..=n {
            let g = engine.groups(p, q);
            let dual = engine.groups(n - p, n - q);
            let at = (p, q);
            expect_eq!(
                out,
                "duality-dolbeault",
                at,
                g.h_dbar.dim(),
                dual.h_dbar.dim()
            );
            expect_eq!(
                out,
                "duality-dolbeault",
                at,
                g.h_del.dim(),
                dual.h_del.dim()
            );
            expect_eq!(out, "duality-mixed", at, g.h_bc.dim(), dual.h_a.dim());
            expect_eq!(out, "duality-groups", at, g.d.dim(), dual.c.dim());
            expect_eq!(out, "duality-groups", at, g.b.dim(), dual.e.dim());
            expect_eq!(out, "duality-groups", at, g.a.dim(), dual.f.dim());
            let shifted_b = engine.groups(p + 1, q).b.dim();
            let shifted_d = engine.groups(p, q + 1).d.dim();
            let shifted_e = engine.groups(p - 1, q).e.dim();
            let shifted_c = engine.groups(p, q - 1).c.dim();
            expect_eq!(out, "duality-shifted", at, shifted_b, dual.b.dim());
            expect_eq!(out, "duality-shifted", at, shifted_d, dual.d.dim());
            expect_eq!(out, "duality-shifted", at, shifted_e, dual.e.dim());
            expect_eq!(out, "duality-shifted", at, shifted_c, dual.c.dim());
        }
    }

    // Wedge pairing between H_BC^{p,q} and H_A^{n-p,n-q} on representatives.
    for p in 0..=n {
        for q in 0..=n {
            let g = engine.groups(p, q);
            let dual = engine.groups(n - p, n - q);
            if g.h_bc.dim() != dual.h_a.dim() {
                continue; // already reported as a duality failure
            }
            let dim = g.h_bc.dim();
            if dim == 0 {
                continue;
            }
            let mut pairing = Mat::zero(dim, dim);
            for i in 0..dim {
                let left = model.algebra.form_from_coords(p, q, &g.h_bc.reps().col(i));
                for j in 0..dim {
                    let right =
                        model
                            .algebra
                            .form_from_coords(n - p, n - q, &dual.h_a.reps().col(j));
                    pairing[(i, j)] = model.algebra.top_coefficient(&left.wedge(&right));
                }
            }
            if pairing.rank() != dim {
                out.push(Finding::new(
                    "pairing",
                    (p, q),
                    format!(
                        "H_BC x H_A pairing matrix has rank {} < {dim}",
                        pairing.rank()
                    ),
                ));
            }
        }
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Engine;
    use crate::lie::{parse, LieModel, ParamAssignment};
    use crate::random::random_complex;

    fn model(text: &str) -> LieModel {
        LieModel::build(&parse(text).unwrap(), &ParamAssignment::new()).unwrap()
    }

    #[test]
    fn identity_suite_clean_on_models_and_fuzz() {
        for text in [
            "dim 1\nd phi1 = 0\n",
            "dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n",
            "dim 2\nd phi1 = 0\nd phi2 = 1 * phi1^phibar1\n",
        ] {
            let m = model(text);
            let engine = Engine::new(&m.complex).unwrap();
            let findings = identity_suite(&engine, Some(&m.real));
            assert!(findings.is_empty(), "{text}: {findings:?}");
        }
        for seed in [1u64, 8, 21] {
            let dc = random_complex(seed, 12);
            let engine = Engine::new(&dc).unwrap();
            let findings = identity_suite(&engine, None);
            assert!(findings.is_empty(), "seed {seed}: {findings:?}");
        }
    }

    #[test]
    fn torus2_geometric_suite() {
        let m = model("dim 2\nd phi1 = 0\nd phi2 = 0\n");
        let engine = Engine::new(&m.complex).unwrap();
        let findings = geometric_suite(&m, &engine).unwrap();
        assert!(findings.is_empty(), "{findings:?}");
        // h_bc^{1,1} = 4 = h_a^{1,1} with an invertible pairing.
        assert_eq!(engine.groups(1, 1).h_bc.dim(), 4);
        assert_eq!(engine.groups(1, 1).h_a.dim(), 4);
    }

    #[test]
    fn iwasawa_geometric_suite() {
        let m = model("dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n");
        let engine = Engine::new(&m.complex).unwrap();
        let findings = geometric_suite(&m, &engine).unwrap();
        assert!(findings.is_empty(), "{findings:?}");
    }

    #[test]
    fn sl2c_geometric_suite() {
        let m = model(
            "dim 3\nd alpha = -2 * eta^alpha\nd beta = 2 * eta^beta\nd eta = 1 * alpha^beta\n",
        );
        let engine = Engine::new(&m.complex).unwrap();
        let findings = geometric_suite(&m, &engine).unwrap();
        assert!(findings.is_empty(), "{findings:?}");
    }

    #[test]
    fn gate_refuses_non_unimodular() {
        let m = model("dim 2\nd phi1 = 0\nd phi2 = 1 * phi1^phi2\n");
        let engine = Engine::new(&m.complex).unwrap();
        assert_eq!(
            geometric_suite(&m, &engine).unwrap_err(),
            GateError::NotUnimodular
        );
    }
}
