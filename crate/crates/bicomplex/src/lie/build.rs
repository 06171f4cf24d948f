//! From structure equations to the invariant-form double complex.
//!
//! The differential is extended from the holomorphic generators by the graded
//! Leibniz rule, with the differentials of the conjugate generators obtained
//! by conjugation. Evaluating the structure constants and checking `d` on the
//! generators squares to zero is exactly the Jacobi identity check for the
//! chosen parameter values; a failure is reported with the witness generator.

use super::parse::{ParamDecl, StructureEquations};
use super::wedge::{bidegree, d_form, eval_two_form, Form, Letter, WedgeAlgebra};
use crate::complex::{DoubleComplex, GeometricFlags, RealStructure};
use crate::scalar::{from_int, from_rational, Rational, Scalar};
use crate::Mat;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("parameter `{0}` has no value and no default")]
    MissingParam(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("d² ≠ 0: witness generator `{0}` (not a Lie algebra for these parameter values)")]
    NotIntegrable(String),
}

/// Values for every declared parameter.
pub type ParamAssignment = BTreeMap<String, Rational>;

/// Merge CLI-style overrides with declared defaults, rejecting unknowns.
pub fn resolve_params(
    decls: &[ParamDecl],
    given: &ParamAssignment,
) -> Result<ParamAssignment, BuildError> {
    for name in given.keys() {
        if !decls.iter().any(|d| &d.name == name) {
            return Err(BuildError::UnknownParam(name.clone()));
        }
    }
    let mut out = ParamAssignment::new();
    for d in decls {
        match given.get(&d.name).cloned().or_else(|| d.default.clone()) {
            Some(v) => {
                out.insert(d.name.clone(), v);
            }
            None => return Err(BuildError::MissingParam(d.name.clone())),
        }
    }
    Ok(out)
}

/// A built invariant-form model: the double complex plus the wedge-algebra
/// structure the geometric checks need.
pub struct LieModel {
    pub n: usize,
    pub generators: Vec<String>,
    pub assignment: ParamAssignment,
    pub algebra: WedgeAlgebra,
    /// Differentials of the holomorphic generators, evaluated.
    pub d_phi: Vec<Form>,
    /// Differentials of the conjugate generators (conjugates of `d_phi`).
    pub d_phibar: Vec<Form>,
    pub complex: DoubleComplex,
    pub real: RealStructure,
    pub unimodular: bool,
}

impl LieModel {
    /// Evaluate the structure equations and assemble the model.
    pub fn build(se: &StructureEquations, given: &ParamAssignment) -> Result<LieModel, BuildError> {
        let assignment = resolve_params(&se.params, given)?;
        let n = se.n;

        let mut d_phi = vec![Form::zero(); n];
        for (k, terms) in se.differentials.iter().enumerate() {
            let mut f = Form::zero();
            for t in terms {
                let mut c = t.coeff.clone();
                if let Some(idx) = t.param {
                    let v = assignment[&se.params[idx].name].clone();
                    c *= from_rational(v);
                }
                f.add_term(t.monomial, c);
            }
            d_phi[k] = f;
        }
        let d_phibar: Vec<Form> = d_phi.iter().map(Form::conj).collect();

        // d² on the generators is the Jacobi identity for the evaluated
        // structure constants; by the Leibniz rule it then vanishes on the
        // whole algebra.
        for k in 0..n {
            if !d_form(&d_phi[k], &d_phi, &d_phibar).is_zero() {
                return Err(BuildError::NotIntegrable(se.generators[k].clone()));
            }
            if !d_form(&d_phibar[k], &d_phi, &d_phibar).is_zero() {
                return Err(BuildError::NotIntegrable(format!(
                    "{}bar",
                    se.generators[k]
                )));
            }
        }

        let algebra = WedgeAlgebra::new(n);
        let unimodular = compute_unimodular(n, &d_phi, &d_phibar);

        let mut builder = DoubleComplex::builder().flags(GeometricFlags {
            is_lie_model: true,
            unimodular,
            connected_top: true,
        });
        let ni = n as i32;
        for p in 0..=ni {
            for q in 0..=ni {
                builder.set_dim(p, q, algebra.dim(p, q));
            }
        }
        for p in 0..=ni {
            for q in 0..=ni {
                let src = algebra.basis(p, q);
                if src.is_empty() {
                    continue;
                }
                let rows_del = algebra.dim(p + 1, q);
                let rows_delbar = algebra.dim(p, q + 1);
                let mut del_cols = Vec::with_capacity(src.len());
                let mut delbar_cols = Vec::with_capacity(src.len());
                for &m in src {
                    let df = d_form(&Form::monomial(m, from_int(1)), &d_phi, &d_phibar);
                    let mut del_col = vec![Scalar::zero(); rows_del];
                    let mut delbar_col = vec![Scalar::zero(); rows_delbar];
                    for (&tm, c) in df.terms() {
                        let (tp, tq) = bidegree(tm);
                        if (tp as i32, tq as i32) == (p + 1, q) {
                            del_col = add_coord(del_col, &algebra, p + 1, q, tm, c);
                        } else if (tp as i32, tq as i32) == (p, q + 1) {
                            delbar_col = add_coord(delbar_col, &algebra, p, q + 1, tm, c);
                        } else {
                            unreachable!("d of a (p,q) monomial lands in (p+1,q) or (p,q+1)");
                        }
                    }
                    del_cols.push(del_col);
                    delbar_cols.push(delbar_col);
                }
                builder.set_del(p, q, Mat::from_cols(rows_del, &del_cols));
                builder.set_delbar(p, q, Mat::from_cols(rows_delbar, &delbar_cols));
            }
        }
        let complex = builder
            .build()
            .expect("structure-equation complex has consistent shapes");

        // Monomial conjugation as the real structure.
        let mut sigma = BTreeMap::new();
        for p in 0..=ni {
            for q in 0..=ni {
                let src = algebra.basis(p, q);
                if src.is_empty() {
                    continue;
                }
                let rows = algebra.dim(q, p);
                let mut m = Mat::zero(rows, src.len());
                for (j, &mono) in src.iter().enumerate() {
                    let f = Form::monomial(mono, from_int(1)).conj();
                    let coords = algebra.coords(q, p, &f);
                    for (r, c) in coords.into_iter().enumerate() {
                        m[(r, j)] = c;
                    }
                }
                sigma.insert((p, q), m);
            }
        }
        let real = RealStructure { sigma };

        Ok(LieModel {
            n,
            generators: se.generators.clone(),
            assignment,
            algebra,
            d_phi,
            d_phibar,
            complex,
            real,
            unimodular,
        })
    }

    /// `d` on arbitrary forms of the model.
    pub fn d(&self, form: &Form) -> Form {
        d_form(form, &self.d_phi, &self.d_phibar)
    }

    /// The holomorphic generator `phi_k` as a form.
    pub fn generator(&self, k: usize) -> Form {
        Form::monomial((1 << k, 0), from_int(1))
    }

    /// The conjugate generator as a form.
    pub fn generator_bar(&self, k: usize) -> Form {
        Form::monomial((0, 1 << k), from_int(1))
    }
}

fn add_coord(
    mut col: Vec<Scalar>,
    algebra: &WedgeAlgebra,
    p: i32,
    q: i32,
    mono: super::wedge::Monomial,
    c: &Scalar,
) -> Vec<Scalar> {
    let idx = algebra
        .basis(p, q)
        .iter()
        .position(|&m| m == mono)
        .expect("monomial in its bidegree basis");
    col[idx] = col[idx].clone() + c.clone();
    col
}

/// Trace of the adjoint action on the realified Lie algebra.
///
/// For every basis vector `X` dual to a 1-form letter, `tr ad_X` equals
/// `-Σ_ν dξ^ν(X, E_ν)` over the full dual basis; the model is unimodular iff
/// all these traces vanish.
fn compute_unimodular(n: usize, d_phi: &[Form], d_phibar: &[Form]) -> bool {
    let all_letters: Vec<Letter> = (0..n as u8)
        .map(Letter::phi)
        .chain((0..n as u8).map(Letter::phibar))
        .collect();
    for &x in &all_letters {
        let mut trace = Scalar::zero();
        for &e in &all_letters {
            let dxi = if e.barred {
                &d_phibar[e.index as usize]
            } else {
                &d_phi[e.index as usize]
            };
            trace -= eval_two_form(dxi, x, e);
        }
        if !trace.is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse;
    use super::*;
    use crate::scalar::rational;

    fn build(text: &str) -> LieModel {
        let se = parse(text).unwrap();
        LieModel::build(&se, &ParamAssignment::new()).unwrap()
    }

    #[test]
    fn torus_all_zero_differentials() {
        let m = build("dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = 0\n");
        assert!(m.complex.validate().is_empty());
        for p in 0..=3 {
            for q in 0..=3 {
                assert!(m.complex.del(p, q).is_zero());
                assert!(m.complex.delbar(p, q).is_zero());
            }
        }
        // dims follow the binomial pattern 1,3,3,1 in each direction.
        assert_eq!(m.complex.dim(0, 0), 1);
        assert_eq!(m.complex.dim(1, 0), 3);
        assert_eq!(m.complex.dim(2, 1), 9);
        assert_eq!(m.complex.dim(3, 3), 1);
        assert!(m.unimodular);
    }

    #[test]
    fn iwasawa_del_rank_at_1_0() {
        let m = build("dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n");
        assert!(m.complex.validate().is_empty());
        assert_eq!(m.complex.del(1, 0).rank(), 1);
        assert!(m.complex.delbar(1, 0).is_zero());
        assert!(m.unimodular);
        assert!(m.real.validate(&m.complex).is_empty());
    }

    #[test]
    fn family_validates_identically_in_t() {
        let se = parse(
            "dim 3\nparam t\nd phi1 = 0\nd phi2 = 0\nd phi3 = 1 * phi1^phi2 + t * phi1^phibar2\n",
        )
        .unwrap();
        for val in [rational(0, 1), rational(1, 2), rational(-7, 3)] {
            let mut pa = ParamAssignment::new();
            pa.insert("t".into(), val);
            let m = LieModel::build(&se, &pa).unwrap();
            assert!(m.complex.validate().is_empty());
            assert!(m.real.validate(&m.complex).is_empty());
        }
        // Missing assignment is an error (no default declared).
        assert!(matches!(
            LieModel::build(&se, &ParamAssignment::new()),
            Err(BuildError::MissingParam(_))
        ));
        let mut bad = ParamAssignment::new();
        bad.insert("s".into(), rational(1, 1));
        assert!(matches!(
            LieModel::build(&se, &bad),
            Err(BuildError::UnknownParam(_))
        ));
    }

    #[test]
    fn non_lie_input_reports_witness() {
        // d(d phi3) = phi1 ∧ phi2 ∧ phi3 ≠ 0: Jacobi fails.
        let se =
            parse("dim 3\nd phi1 = 0\nd phi2 = 1 * phi1^phi2\nd phi3 = 1 * phi2^phi3\n").unwrap();
        let Err(e) = LieModel::build(&se, &ParamAssignment::new()) else {
            panic!("expected an integrability failure");
        };
        assert!(matches!(e, BuildError::NotIntegrable(ref g) if g == "phi2" || g == "phi3"));
    }

    #[test]
    fn unimodularity_examples() {
        // Nilpotent: torus, iwasawa, kodaira-thurston are all unimodular.
        assert!(build("dim 1\nd phi1 = 0\n").unimodular);
        assert!(build("dim 2\nd phi1 = 0\nd phi2 = 1 * phi1^phibar1\n").unimodular);
        // Semisimple sl(2,C) is unimodular.
        let sl2 = build(
            "dim 3\nd alpha = -2 * eta^alpha\nd beta = 2 * eta^beta\nd eta = 1 * alpha^beta\n",
        );
        assert!(sl2.unimodular);
        // The 2-dimensional non-abelian complex Lie algebra is not.
        let aff = build("dim 2\nd phi1 = 0\nd phi2 = 1 * phi1^phi2\n");
        assert!(!aff.unimodular);
        assert!(aff.complex.validate().is_empty());
    }

    #[test]
    fn kodaira_thurston_validates() {
        let m = build("dim 2\nd phi1 = 0\nd phi2 = 1 * phi1^phibar1\n");
        assert!(m.complex.validate().is_empty());
        assert!(m.real.validate(&m.complex).is_empty());
        // delbar at (1,0) sends phi2 to phi1 ∧ phibar1's (1,1) component.
        assert_eq!(m.complex.delbar(1, 0).rank(), 1);
    }
}
