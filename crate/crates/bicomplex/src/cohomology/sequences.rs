//! The eight connecting exact sequences and the two shift isomorphisms.
//!
//! Exactness of each sequence at each node is an unconditional theorem for
//! valid double complexes, so any reported failure is an implementation bug.
//! That is exactly what makes these sequences a good oracle for the rest of
//! the engine.

use super::maps::{Ambient, InducedMap};
use super::{Engine, Subquotient};
use crate::complex::Bidegree;
use std::fmt;

/// Which of the eight sequences to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SequenceId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
}

impl SequenceId {
    pub const ALL: [SequenceId; 8] = [
        SequenceId::S1,
        SequenceId::S2,
        SequenceId::S3,
        SequenceId::S4,
        SequenceId::S5,
        SequenceId::S6,
        SequenceId::S7,
        SequenceId::S8,
    ];
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SequenceId::S1 => "1",
            SequenceId::S2 => "2",
            SequenceId::S3 => "3",
            SequenceId::S4 => "4",
            SequenceId::S5 => "5",
            SequenceId::S6 => "6",
            SequenceId::S7 => "7",
            SequenceId::S8 => "8",
        };
        f.write_str(s)
    }
}

/// Result of checking one sequence at one bidegree.
#[derive(Debug, Clone)]
pub struct SequenceReport {
    pub id: SequenceId,
    pub bidegree: Bidegree,
    pub failures: Vec<String>,
}

impl SequenceReport {
    pub fn is_exact(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify exactness of one sequence at one bidegree.
///
/// Every arrow is realized as an [`InducedMap`] (all these maps are induced by
/// the identity); injectivity at the head, image = kernel at every interior
/// node, surjectivity at the tail.
pub fn verify_sequence(engine: &Engine, id: SequenceId, p: i32, q: i32) -> SequenceReport {
    let g = engine.groups(p, q);
    let nodes: Vec<(&'static str, &Subquotient)> = match id {
        // 0 -> A -> B -> H_dbar -> H_A -> C -> 0
        SequenceId::S1 => {
            vec![
                ("A", &g.a),
                ("B", &g.b),
                ("H_dbar", &g.h_dbar),
                ("H_A", &g.h_a),
                ("C", &g.c),
            ]
        }
        // 0 -> D -> H_BC -> H_dbar -> E -> F -> 0
        SequenceId::S2 => {
            vec![
                ("D", &g.d),
                ("H_BC", &g.h_bc),
                ("H_dbar", &g.h_dbar),
                ("E", &g.e),
                ("F", &g.f),
            ]
        }
        // 0 -> A -> D -> H_del -> H_A -> E -> 0
        SequenceId::S3 => {
            vec![
                ("A", &g.a),
                ("D", &g.d),
                ("H_del", &g.h_del),
                ("H_A", &g.h_a),
                ("E", &g.e),
            ]
        }
        // 0 -> B -> H_BC -> H_del -> C -> F -> 0
        SequenceId::S4 => {
            vec![
                ("B", &g.b),
                ("H_BC", &g.h_bc),
                ("H_del", &g.h_del),
                ("C", &g.c),
                ("F", &g.f),
            ]
        }
        // 0 -> B~ -> H_dbar -> H_A -> C -> 0
        SequenceId::S5 => {
            vec![
                ("B~", &g.b_tilde),
                ("H_dbar", &g.h_dbar),
                ("H_A", &g.h_a),
                ("C", &g.c),
            ]
        }
        // 0 -> D -> H_BC -> H_dbar -> E~ -> 0
        SequenceId::S6 => {
            vec![
                ("D", &g.d),
                ("H_BC", &g.h_bc),
                ("H_dbar", &g.h_dbar),
                ("E~", &g.e_tilde),
            ]
        }
        // 0 -> D~ -> H_del -> H_A -> E -> 0
        SequenceId::S7 => {
            vec![
                ("D~", &g.d_tilde),
                ("H_del", &g.h_del),
                ("H_A", &g.h_a),
                ("E", &g.e),
            ]
        }
        // 0 -> B -> H_BC -> H_del -> C~ -> 0
        SequenceId::S8 => {
            vec![
                ("B", &g.b),
                ("H_BC", &g.h_bc),
                ("H_del", &g.h_del),
                ("C~", &g.c_tilde),
            ]
        }
    };

    let mut failures = Vec::new();
    let mut arrows = Vec::with_capacity(nodes.len() - 1);
    for w in nodes.windows(2) {
        let (src_name, src) = w[0];
        let (tgt_name, tgt) = w[1];
        match InducedMap::new(src, tgt, Ambient::Identity) {
            Ok(m) => arrows.push(m),
            Err(e) => {
                failures.push(format!("{src_name} -> {tgt_name}: certificate failed: {e}"));
            }
        }
    }
    if failures.is_empty() {
        if !arrows[0].is_injective() {
            failures.push(format!(
                "not exact at {}: head map has kernel of dimension {}",
                nodes[0].0,
                arrows[0].kernel().dim()
            ));
        }
        for i in 1..nodes.len() - 1 {
            let image = arrows[i - 1].image();
            let ker = arrows[i].kernel();
            if image != ker {
                failures.push(format!(
                    "not exact at {}: im has dim {}, ker has dim {}",
                    nodes[i].0,
                    image.dim(),
                    ker.dim()
                ));
            }
        }
        let last = arrows.last().unwrap();
        if !last.is_surjective() {
            failures.push(format!(
                "not exact at {}: tail map has rank {} < {}",
                nodes.last().unwrap().0,
                last.rank(),
                last.target_dim()
            ));
        }
    }
    SequenceReport {
        id,
        bidegree: (p, q),
        failures,
    }
}

/// The two shift isomorphisms: `delbar : C^{p,q} -> D^{p,q+1}` and
/// `del : E^{p,q} -> B^{p+1,q}`. Returns failure descriptions (empty = both
/// maps are bijections, as the theory demands).
pub fn shift_isomorphisms(engine: &Engine, p: i32, q: i32) -> Vec<String> {
    let mut failures = Vec::new();
    let src = engine.groups(p, q);

    let delbar = engine.dc.delbar(p, q);
    let tgt = engine.groups(p, q + 1);
    match InducedMap::new(&src.c, &tgt.d, Ambient::Map(&delbar)) {
        Ok(m) if m.is_bijective() => {}
        Ok(m) => failures.push(format!(
            "delbar: C^({p},{q}) -> D^({p},{}) has rank {} (dims {} -> {})",
            q + 1,
            m.rank(),
            m.source_dim(),
            m.target_dim()
        )),
        Err(e) => failures.push(format!(
            "delbar: C -> D certificate failed at ({p},{q}): {e}"
        )),
    }

    let del = engine.dc.del(p, q);
    let tgt = engine.groups(p + 1, q);
    match InducedMap::new(&src.e, &tgt.b, Ambient::Map(&del)) {
        Ok(m) if m.is_bijective() => {}
        Ok(m) => failures.push(format!(
            "del: E^({p},{q}) -> B^({},{q}) has rank {} (dims {} -> {})",
            p + 1,
            m.rank(),
            m.source_dim(),
            m.target_dim()
        )),
        Err(e) => failures.push(format!("del: E -> B certificate failed at ({p},{q}): {e}")),
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DoubleComplex;
    use crate::lie::{parse, LieModel, ParamAssignment};
    use crate::random::random_complex;

    fn model(text: &str) -> DoubleComplex {
        LieModel::build(&parse(text).unwrap(), &ParamAssignment::new())
            .unwrap()
            .complex
    }

    #[test]
    fn torus_sequences_are_exact() {
        let dc = model("dim 2\nd phi1 = 0\nd phi2 = 0\n");
        let e = Engine::new(&dc).unwrap();
        for id in SequenceId::ALL {
            for (p, q) in e.extended_bidegrees() {
                let r = verify_sequence(&e, id, p, q);
                assert!(r.is_exact(), "sequence {id} at ({p},{q}): {:?}", r.failures);
            }
        }
    }

    #[test]
    fn iwasawa_sequences_and_shift_isos() {
        let dc = model("dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n");
        let e = Engine::new(&dc).unwrap();
        for id in SequenceId::ALL {
            for (p, q) in e.extended_bidegrees() {
                let r = verify_sequence(&e, id, p, q);
                assert!(r.is_exact(), "sequence {id} at ({p},{q}): {:?}", r.failures);
            }
        }
        for (p, q) in e.bidegrees() {
            let fails = shift_isomorphisms(&e, p, q);
            assert!(fails.is_empty(), "shift isos at ({p},{q}): {fails:?}");
        }
    }

    #[test]
    fn random_complexes_stay_exact() {
        for seed in [2u64, 9, 13] {
            let dc = random_complex(seed, 12);
            let e = Engine::new(&dc).unwrap();
            for id in SequenceId::ALL {
                for (p, q) in e.extended_bidegrees() {
                    let r = verify_sequence(&e, id, p, q);
                    assert!(
                        r.is_exact(),
                        "seed {seed}, sequence {id} at ({p},{q}): {:?}",
                        r.failures
                    );
                }
            }
        }
    }
}
