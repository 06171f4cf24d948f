//! Named special-case criteria: the sGG condition, the surface criterion,
//! and the symbolic balanced-form identity on the sl(2,C) model.

use crate::cohomology::maps::{Ambient, InducedMap};
use crate::cohomology::suites::Finding;
use crate::cohomology::Engine;
use crate::lie::{Form, LieModel};
use crate::scalar::{from_int, from_ratio, imaginary_unit};
use serde::Serialize;

/// The sGG condition computed three independent ways.
///
/// The first and third characterizations are equivalent by pure algebra (the
/// rank-level cone equivalence at `p = n−1`) and are asserted equal on every
/// input. The middle one, through the `(0,1)` groups, additionally uses the
/// corner vanishing and the dualities, which hold for unimodular invariant
/// models; its agreement is asserted only under that gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SggReport {
    pub by_tilde_b: bool,
    pub by_h01: bool,
    pub by_rank_t: bool,
    pub verdict: bool,
}

/// `n` for a complex living on the square `[0,n] × [0,n]`.
pub fn square_range_n(engine: &Engine) -> Option<i32> {
    let (p_min, p_max) = engine.dc.p_range();
    let (q_min, q_max) = engine.dc.q_range();
    (p_min == 0 && q_min == 0 && p_max == q_max && p_max >= 1).then_some(p_max)
}

pub fn sgg(engine: &Engine) -> (SggReport, Vec<Finding>) {
    let mut findings = Vec::new();
    let n = match square_range_n(engine) {
        Some(n) => n,
        None => {
            findings.push(Finding::new(
                "sgg",
                engine.dc.p_range(),
                "sGG needs a square range [0,n]^2",
            ));
            let r = SggReport {
                by_tilde_b: false,
                by_h01: false,
                by_rank_t: false,
                verdict: false,
            };
            return (r, findings);
        }
    };

    let top = engine.groups(n, n - 1);
    let by_tilde_b = top.b_tilde.dim() == 0;

    let low = engine.groups(0, 1);
    let by_h01 = low.h_bc.dim() == low.h_dbar.dim();

    let src = engine.groups(n - 1, n - 1);
    let del = engine.dc.del(n - 1, n - 1);
    let by_rank_t = match InducedMap::new(&src.h_a, &top.h_dbar, Ambient::Map(&del)) {
        Ok(t) => t.rank() == 0,
        Err(e) => {
            findings.push(Finding::new(
                "sgg",
                (n - 1, n - 1),
                format!("T certificate: {e}"),
            ));
            false
        }
    };

    if by_tilde_b != by_rank_t {
        findings.push(Finding::new(
            "sgg-agreement",
            (n, n - 1),
            format!("b~ test says {by_tilde_b}, rank T says {by_rank_t}"),
        ));
    }
    if engine.dc.flags.is_lie_model && engine.dc.flags.unimodular && by_h01 != by_tilde_b {
        findings.push(Finding::new(
            "sgg-agreement",
            (0, 1),
            format!("h^{{0,1}} test says {by_h01}, b~ test says {by_tilde_b}"),
        ));
    }

    (
        SggReport {
            by_tilde_b,
            by_h01,
            by_rank_t,
            verdict: by_tilde_b,
        },
        findings,
    )
}

/// The three computable surface conditions (`n = 2`).
///
/// Their mutual equivalence on unimodular surface models is what the corpus
/// asserts; actual Kähler-ness needs positivity and is never decided here, so
/// the verdict is reported as a model-level indicator only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    /// `h_A^{2,1} = h_dbar^{2,1}`.
    pub by_h21: bool,
    /// `b~^{2,1} = 0`.
    pub by_tilde_b: bool,
    /// All fourteen obstruction dimensions vanish everywhere.
    pub by_all_vanishing: bool,
    pub agree: bool,
}

pub fn surface_criterion(engine: &Engine) -> Option<SurfaceReport> {
    if square_range_n(engine) != Some(2) {
        return None;
    }
    let g21 = engine.groups(2, 1);
    let by_h21 = g21.h_a.dim() == g21.h_dbar.dim();
    let by_tilde_b = g21.b_tilde.dim() == 0;
    let by_all_vanishing = engine.bidegrees().all(|(p, q)| {
        let g = engine.groups(p, q);
        g.a.dim() == 0
            && g.b.dim() == 0
            && g.c.dim() == 0
            && g.d.dim() == 0
            && g.e.dim() == 0
            && g.f.dim() == 0
    });
    let agree = by_h21 == by_tilde_b && by_tilde_b == by_all_vanishing;
    Some(SurfaceReport {
        by_h21,
        by_tilde_b,
        by_all_vanishing,
        agree,
    })
}

/// The symbolic identities of the sl(2,C) balanced example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BalancedExampleReport {
    /// `d(ω∧ω) = 0`.
    pub d_omega_sq_zero: bool,
    /// `ω∧ω = 2 · d(primitive)`, i.e. the divided square `ω∧ω / 2!` equals
    /// `d` of the displayed primitive exactly.
    pub primitive_matches: bool,
    /// The primitive is a 3-form and `ω∧ω` a 4-form.
    pub degrees_ok: bool,
}

/// Check the balanced-form identities on a model with generators
/// `alpha, beta, eta` (in any order).
///
/// `ω = (i/2)(α∧ᾱ + β∧β̄ + η∧η̄)`; the primitive is
/// `(1/16) α∧dᾱ + (1/16) β∧dβ̄ + (1/4) η∧dη̄`.
pub fn balanced_example(model: &LieModel) -> Result<BalancedExampleReport, String> {
    let idx = |name: &str| -> Result<usize, String> {
        model
            .generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| format!("model has no generator `{name}`"))
    };
    let alpha = idx("alpha")?;
    let beta = idx("beta")?;
    let eta = idx("eta")?;

    let half_i = imaginary_unit() * from_ratio(1, 2);
    let mut omega = Form::zero();
    for k in [alpha, beta, eta] {
        omega = omega.add(&model.generator(k).wedge(&model.generator_bar(k)));
    }
    let omega = omega.scale(&half_i);
    let omega_sq = omega.wedge(&omega);

    let term = |k: usize, num: i64, den: i64| {
        model
            .generator(k)
            .wedge(&model.d(&model.generator_bar(k)))
            .scale(&from_ratio(num, den))
    };
    let primitive = term(alpha, 1, 16)
        .add(&term(beta, 1, 16))
        .add(&term(eta, 1, 4));
    let d_primitive = model.d(&primitive);

    Ok(BalancedExampleReport {
        d_omega_sq_zero: model.d(&omega_sq).is_zero(),
        primitive_matches: omega_sq == d_primitive.scale(&from_int(2)),
        degrees_ok: primitive.degree() == Some(3) && omega_sq.degree() == Some(4),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{parse, LieModel, ParamAssignment};

    fn model(text: &str) -> LieModel {
        LieModel::build(&parse(text).unwrap(), &ParamAssignment::new()).unwrap()
    }

    #[test]
    fn torus2_surface_conditions_all_true() {
        let m = model("dim 2\nd phi1 = 0\nd phi2 = 0\n");
        let e = Engine::new(&m.complex).unwrap();
        let s = surface_criterion(&e).unwrap();
        assert!(s.by_h21 && s.by_tilde_b && s.by_all_vanishing && s.agree);
        let (sgg_report, findings) = sgg(&e);
        assert!(findings.is_empty(), "{findings:?}");
        assert!(sgg_report.verdict);
    }

    #[test]
    fn kodaira_thurston_surface_conditions_all_false() {
        let m = model("dim 2\nd phi1 = 0\nd phi2 = 1 * phi1^phibar1\n");
        let e = Engine::new(&m.complex).unwrap();
        let s = surface_criterion(&e).unwrap();
        assert!(!s.by_h21 && !s.by_tilde_b && !s.by_all_vanishing);
        assert!(
            s.agree,
            "the three characterizations must stay consistent: {s:?}"
        );
    }

    #[test]
    fn iwasawa_sgg_three_ways_agree() {
        let m = model("dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n");
        let e = Engine::new(&m.complex).unwrap();
        let (r, findings) = sgg(&e);
        assert!(findings.is_empty(), "{findings:?}");
        assert_eq!(r.by_tilde_b, r.by_rank_t);
        assert_eq!(r.by_tilde_b, r.by_h01);
    }

    #[test]
    fn sl2c_balanced_identities() {
        let m = model(
            "dim 3\nd alpha = -2 * eta^alpha\nd beta = 2 * eta^beta\nd eta = 1 * alpha^beta\n",
        );
        let r = balanced_example(&m).unwrap();
        assert!(r.d_omega_sq_zero);
        assert!(r.primitive_matches);
        assert!(r.degrees_ok);
        // Wrong model: no such generators.
        let torus = model("dim 1\nd phi1 = 0\n");
        assert!(balanced_example(&torus).is_err());
    }

    #[test]
    fn surface_criterion_requires_n2() {
        let m = model("dim 1\nd phi1 = 0\n");
        let e = Engine::new(&m.complex).unwrap();
        assert!(surface_criterion(&e).is_none());
    }
}
