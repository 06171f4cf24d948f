//! Cohomology groups and the auxiliary subquotients of a double complex.
//!
//! Every group is a [`Subquotient`] `U/V` of some `E^{p,q}`, with explicit
//! representative vectors completing a basis of `V` to one of `U`. Working
//! with representatives (not just dimensions) is what lets the exactness of
//! the connecting sequences be verified at the level of maps, which catches
//! sign and orientation bugs that dimension arithmetic cannot see.

pub mod maps;
pub mod sequences;
pub mod suites;

use crate::complex::{Bidegree, DoubleComplex, TotalComplex};
use crate::linalg::{kernel, subspace_intersect, subspace_sum};
use crate::scalar::Scalar;
use crate::{Mat, Space};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("complex does not validate: {0}")]
    InvalidComplex(String),
    #[error("subquotient at {0:?}: denominator is not contained in the numerator")]
    BadSubquotient(Bidegree),
}

/// A pair `V ⊆ U` of subspaces of a coordinate space, with representatives.
#[derive(Debug, Clone)]
pub struct Subquotient {
    bidegree: Bidegree,
    u: Space,
    v: Space,
    /// Columns completing a basis of `V` to a basis of `U`; the classes of
    /// these vectors are the fixed basis of `U/V`.
    reps: Mat,
}

impl Subquotient {
    pub fn new(bidegree: Bidegree, u: Space, v: Space) -> Result<Self, EngineError> {
        if u.ambient_dim() != v.ambient_dim() || !u.contains(&v) {
            return Err(EngineError::BadSubquotient(bidegree));
        }
        let reps = complete_basis(&v, &u);
        Ok(Subquotient {
            bidegree,
            u,
            v,
            reps,
        })
    }

    pub fn zero(bidegree: Bidegree, ambient_dim: usize) -> Self {
        Subquotient {
            bidegree,
            u: Space::zero(ambient_dim),
            v: Space::zero(ambient_dim),
            reps: Mat::zero(ambient_dim, 0),
        }
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn ambient_dim(&self) -> usize {
        self.u.ambient_dim()
    }

    pub fn numerator(&self) -> &Space {
        &self.u
    }

    pub fn denominator(&self) -> &Space {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.u.dim() - self.v.dim()
    }

    /// Representative vectors, one ambient column per quotient basis class.
    pub fn reps(&self) -> &Mat {
        &self.reps
    }

    /// Quotient coordinates of an ambient vector, `None` when it lies
    /// outside the numerator.
    pub fn reduce(&self, w: &[Scalar]) -> Option<Vec<Scalar>> {
        let stacked = self.reps.hstack(self.v.basis());
        let sol = stacked.solve(w)?;
        Some(sol[..self.reps.cols()].to_vec())
    }

    /// The ambient vector representing a quotient coordinate vector.
    pub fn unreduce(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.reps.mul_vec(coords)
    }
}

/// Greedily extend a basis of `v` to one of `u`; the appended columns are the
/// canonical representatives of `u/v`. Deterministic given canonical bases.
fn complete_basis(v: &Space, u: &Space) -> Mat {
    let mut acc = v.basis().clone();
    let mut picked = Vec::new();
    let target = u.dim();
    for j in 0..u.dim() {
        if acc.cols() == target {
            break;
        }
        let col = u.basis().col(j);
        let trial = acc.hstack(&Mat::from_cols(u.ambient_dim(), std::slice::from_ref(&col)));
        if trial.rank() > acc.cols() {
            acc = trial;
            picked.push(col);
        }
    }
    Mat::from_cols(u.ambient_dim(), &picked)
}

/// All groups living at one bidegree.
#[derive(Debug, Clone)]
pub struct BidegreeGroups {
    pub bidegree: Bidegree,
    pub ker_del: Space,
    pub ker_delbar: Space,
    pub ker_deldbar: Space,
    pub im_del: Space,
    pub im_delbar: Space,
    pub im_deldbar: Space,
    pub h_dbar: Subquotient,
    pub h_del: Subquotient,
    pub h_bc: Subquotient,
    pub h_a: Subquotient,
    pub a: Subquotient,
    pub b: Subquotient,
    pub c: Subquotient,
    pub d: Subquotient,
    pub e: Subquotient,
    pub f: Subquotient,
    pub b_tilde: Subquotient,
    pub c_tilde: Subquotient,
    pub d_tilde: Subquotient,
    pub e_tilde: Subquotient,
}

/// Dimension table entry for one bidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GroupDims {
    pub h_dbar: usize,
    pub h_del: usize,
    pub h_bc: usize,
    pub h_a: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
    pub b_tilde: usize,
    pub c_tilde: usize,
    pub d_tilde: usize,
    pub e_tilde: usize,
}

/// Every dimension the engine computes, per bidegree plus Betti numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct InvariantTable {
    pub entries: BTreeMap<String, GroupDims>,
    pub betti: BTreeMap<i32, usize>,
}

impl InvariantTable {
    pub fn get(&self, p: i32, q: i32) -> Option<&GroupDims> {
        self.entries.get(&bidegree_key(p, q))
    }
}

pub fn bidegree_key(p: i32, q: i32) -> String {
    format!("{p},{q}")
}

/// How far beyond the declared range groups are materialized; sequences and
/// duality checks reach one step outside, their certificates one more.
const MARGIN: i32 = 2;

/// Precomputed cohomology of one double complex.
pub struct Engine<'a> {
    pub dc: &'a DoubleComplex,
    pub total: TotalComplex,
    groups: BTreeMap<Bidegree, BidegreeGroups>,
    /// Shared all-zero groups, returned for bidegrees far outside the range
    /// (where every space involved is the zero space).
    empty: BidegreeGroups,
    betti: BTreeMap<i32, usize>,
}

impl<'a> Engine<'a> {
    /// Validate the complex and compute every group over the (slightly
    /// extended) range.
    pub fn new(dc: &'a DoubleComplex) -> Result<Engine<'a>, EngineError> {
        let violations = dc.validate();
        if let Some(first) = violations.first() {
            return Err(EngineError::InvalidComplex(first.to_string()));
        }
        let total = dc
            .total_complex()
            .map_err(|e| EngineError::InvalidComplex(e.to_string()))?;

        let (p_min, p_max) = dc.p_range();
        let (q_min, q_max) = dc.q_range();
        let mut groups = BTreeMap::new();
        for p in p_min - MARGIN..=p_max + MARGIN {
            for q in q_min - MARGIN..=q_max + MARGIN {
                groups.insert((p, q), compute_groups(dc, p, q)?);
            }
        }

        let mut betti = BTreeMap::new();
        let (k_min, k_max) = total.k_range();
        for k in k_min..=k_max {
            let cycles = kernel(&total.d(k)).dim();
            let boundaries = total.d(k - 1).rank();
            betti.insert(k, cycles - boundaries);
        }

        let empty = zero_groups();
        Ok(Engine {
            dc,
            total,
            groups,
            empty,
            betti,
        })
    }

    /// Groups at a bidegree; all-zero groups outside the materialized window.
    pub fn groups(&self, p: i32, q: i32) -> &BidegreeGroups {
        self.groups.get(&(p, q)).unwrap_or(&self.empty)
    }

    pub fn has_groups(&self, p: i32, q: i32) -> bool {
        self.groups.contains_key(&(p, q))
    }

    /// Bidegrees of the declared range.
    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + 'a {
        self.dc.bidegrees()
    }

    /// Bidegrees of the declared range extended by one in every direction,
    /// where edge statements are still meaningful.
    pub fn extended_bidegrees(&self) -> Vec<Bidegree> {
        let (p_min, p_max) = self.dc.p_range();
        let (q_min, q_max) = self.dc.q_range();
        let mut out = Vec::new();
        for p in p_min - 1..=p_max + 1 {
            for q in q_min - 1..=q_max + 1 {
                out.push((p, q));
            }
        }
        out
    }

    pub fn betti(&self, k: i32) -> usize {
        self.betti.get(&k).copied().unwrap_or(0)
    }

    pub fn table(&self) -> InvariantTable {
        let mut entries = BTreeMap::new();
        for (p, q) in self.dc.bidegrees() {
            let g = self.groups(p, q);
            entries.insert(
                bidegree_key(p, q),
                GroupDims {
                    h_dbar: g.h_dbar.dim(),
                    h_del: g.h_del.dim(),
                    h_bc: g.h_bc.dim(),
                    h_a: g.h_a.dim(),
                    a: g.a.dim(),
                    b: g.b.dim(),
                    c: g.c.dim(),
                    d: g.d.dim(),
                    e: g.e.dim(),
                    f: g.f.dim(),
                    b_tilde: g.b_tilde.dim(),
                    c_tilde: g.c_tilde.dim(),
                    d_tilde: g.d_tilde.dim(),
                    e_tilde: g.e_tilde.dim(),
                },
            );
        }
        InvariantTable {
            entries,
            betti: self.betti.clone(),
        }
    }
}

fn zero_groups() -> BidegreeGroups {
    let far = (i32::MIN, i32::MIN);
    let sq = || Subquotient::zero(far, 0);
    BidegreeGroups {
        bidegree: far,
        ker_del: Space::zero(0),
        ker_delbar: Space::zero(0),
        ker_deldbar: Space::zero(0),
        im_del: Space::zero(0),
        im_delbar: Space::zero(0),
        im_deldbar: Space::zero(0),
        h_dbar: sq(),
        h_del: sq(),
        h_bc: sq(),
        h_a: sq(),
        a: sq(),
        b: sq(),
        c: sq(),
        d: sq(),
        e: sq(),
        f: sq(),
        b_tilde: sq(),
        c_tilde: sq(),
        d_tilde: sq(),
        e_tilde: sq(),
    }
}

fn compute_groups(dc: &DoubleComplex, p: i32, q: i32) -> Result<BidegreeGroups, EngineError> {
    let ker_del = kernel(&dc.del(p, q));
    let ker_delbar = kernel(&dc.delbar(p, q));
    let ker_deldbar = kernel(&dc.deldbar(p, q));
    let im_del = Space::from_span(&dc.del(p - 1, q));
    let im_delbar = Space::from_span(&dc.delbar(p, q - 1));
    let im_deldbar = Space::from_span(&dc.deldbar(p - 1, q - 1));

    let isect = |x: &Space, y: &Space| subspace_intersect(x, y).expect("equal ambient dims");
    let sum = |x: &Space, y: &Space| subspace_sum(x, y).expect("equal ambient dims");

    let kk = isect(&ker_del, &ker_delbar);
    let ii = sum(&im_del, &im_delbar);
    let im_i_im = isect(&im_del, &im_delbar);
    let b_num = isect(&im_del, &ker_delbar);
    let d_num = isect(&ker_del, &im_delbar);
    let k_plus_k = sum(&ker_del, &ker_delbar);
    let i_plus_k = sum(&im_del, &ker_delbar);
    let k_plus_i = sum(&ker_del, &im_delbar);

    let sq = |u: Space, v: Space| Subquotient::new((p, q), u, v);
    Ok(BidegreeGroups {
        bidegree: (p, q),
        h_dbar: sq(ker_delbar.clone(), im_delbar.clone())?,
        h_del: sq(ker_del.clone(), im_del.clone())?,
        h_bc: sq(kk, im_deldbar.clone())?,
        h_a: sq(ker_deldbar.clone(), ii.clone())?,
        a: sq(im_i_im.clone(), im_deldbar.clone())?,
        b: sq(b_num.clone(), im_deldbar.clone())?,
        c: sq(ker_deldbar.clone(), i_plus_k.clone())?,
        d: sq(d_num.clone(), im_deldbar.clone())?,
        e: sq(ker_deldbar.clone(), k_plus_i.clone())?,
        f: sq(ker_deldbar.clone(), k_plus_k.clone())?,
        b_tilde: sq(b_num, im_i_im.clone())?,
        c_tilde: sq(k_plus_k.clone(), i_plus_k)?,
        d_tilde: sq(d_num, im_i_im)?,
        e_tilde: sq(k_plus_k, k_plus_i)?,
        ker_del,
        ker_delbar,
        ker_deldbar,
        im_del,
        im_delbar,
        im_deldbar,
    })
}
