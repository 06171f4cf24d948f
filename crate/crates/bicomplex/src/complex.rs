//! Bounded double complexes and their associated simple complex.
//!
//! A [`DoubleComplex`] is a bounded bigraded family of finite-dimensional
//! spaces `E^{p,q}` with differentials `del` of bidegree (1,0) and `delbar` of
//! bidegree (0,1). The crate fixes the anticommuting convention
//! `del ∘ delbar + delbar ∘ del = 0`, so that `d = del + delbar` squares to
//! zero on the simple complex; [`DoubleComplex::validate`] enforces it, and
//! commuting-convention inputs are rejected loudly rather than silently
//! mis-analyzed.
//!
//! Bidegrees outside the declared range are zero-dimensional spaces, which
//! keeps edge formulas uniform (an image out of a missing bidegree is just the
//! zero subspace).

use crate::linalg::LinalgError;
use crate::scalar::{format_scalar, Scalar};
use crate::Mat;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub type Bidegree = (i32, i32);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("invalid double complex: {0} violation(s), first at {1}")]
    Invalid(usize, String),
    #[error("base change block at ({0},{1}) is not invertible")]
    SingularBlock(i32, i32),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Flags recording what kind of geometric object the complex models.
///
/// They gate the checks that are theorems about compact connected manifolds
/// (and their unimodular invariant models) but fail on abstract complexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct GeometricFlags {
    pub is_lie_model: bool,
    pub unimodular: bool,
    pub connected_top: bool,
}

/// A bounded double complex of finite-dimensional ℚ(i) vector spaces.
#[derive(Clone)]
pub struct DoubleComplex {
    p_range: (i32, i32),
    q_range: (i32, i32),
    dims: BTreeMap<Bidegree, usize>,
    del: BTreeMap<Bidegree, Mat>,
    delbar: BTreeMap<Bidegree, Mat>,
    pub flags: GeometricFlags,
}

impl fmt::Debug for DoubleComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DoubleComplex p {:?} q {:?} dims {:?}",
            self.p_range, self.q_range, self.dims
        )
    }
}

/// A failed differential identity, with the witness column where it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub bidegree: Bidegree,
    pub identity: String,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at {:?}: {} ({})",
            self.bidegree, self.identity, self.witness
        )
    }
}

pub struct DoubleComplexBuilder {
    dims: BTreeMap<Bidegree, usize>,
    del: BTreeMap<Bidegree, Mat>,
    delbar: BTreeMap<Bidegree, Mat>,
    flags: GeometricFlags,
}

impl DoubleComplexBuilder {
    pub fn new() -> Self {
        DoubleComplexBuilder {
            dims: BTreeMap::new(),
            del: BTreeMap::new(),
            delbar: BTreeMap::new(),
            flags: GeometricFlags::default(),
        }
    }

    pub fn dim(mut self, p: i32, q: i32, d: usize) -> Self {
        self.set_dim(p, q, d);
        self
    }

    pub fn set_dim(&mut self, p: i32, q: i32, d: usize) {
        if d > 0 {
            self.dims.insert((p, q), d);
        }
    }

    pub fn set_del(&mut self, p: i32, q: i32, m: Mat) {
        if !m.is_zero() {
            self.del.insert((p, q), m);
        }
    }

    pub fn set_delbar(&mut self, p: i32, q: i32, m: Mat) {
        if !m.is_zero() {
            self.delbar.insert((p, q), m);
        }
    }

    pub fn del(mut self, p: i32, q: i32, m: Mat) -> Self {
        self.set_del(p, q, m);
        self
    }

    pub fn delbar(mut self, p: i32, q: i32, m: Mat) -> Self {
        self.set_delbar(p, q, m);
        self
    }

    pub fn flags(mut self, flags: GeometricFlags) -> Self {
        self.flags = flags;
        self
    }

    /// Assemble the complex, checking matrix shapes (not the differential
    /// identities; see [`DoubleComplex::validate`] for those).
    pub fn build(self) -> Result<DoubleComplex, String> {
        let (mut p_min, mut p_max, mut q_min, mut q_max) = (0, 0, 0, 0);
        if let Some((&(p0, q0), _)) = self.dims.iter().next() {
            p_min = p0;
            p_max = p0;
            q_min = q0;
            q_max = q0;
            for &(p, q) in self.dims.keys() {
                p_min = p_min.min(p);
                p_max = p_max.max(p);
                q_min = q_min.min(q);
                q_max = q_max.max(q);
            }
        }
        let dc = DoubleComplex {
            p_range: (p_min, p_max),
            q_range: (q_min, q_max),
            dims: self.dims,
            del: self.del,
            delbar: self.delbar,
            flags: self.flags,
        };
        for (&(p, q), m) in &dc.del {
            let want = (dc.dim(p + 1, q), dc.dim(p, q));
            if (m.rows(), m.cols()) != want {
                return Err(format!(
                    "del at ({p},{q}) has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                ));
            }
        }
        for (&(p, q), m) in &dc.delbar {
            let want = (dc.dim(p, q + 1), dc.dim(p, q));
            if (m.rows(), m.cols()) != want {
                return Err(format!(
                    "delbar at ({p},{q}) has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                ));
            }
        }
        Ok(dc)
    }
}

impl Default for DoubleComplexBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl DoubleComplex {
    pub fn builder() -> DoubleComplexBuilder {
        DoubleComplexBuilder::new()
    }

    pub fn p_range(&self) -> (i32, i32) {
        self.p_range
    }

    pub fn q_range(&self) -> (i32, i32) {
        self.q_range
    }

    /// Dimension of `E^{p,q}`; zero outside the stored support.
    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// The differential of bidegree (1,0) out of `E^{p,q}`.
    pub fn del(&self, p: i32, q: i32) -> Mat {
        self.del
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.dim(p + 1, q), self.dim(p, q)))
    }

    /// The differential of bidegree (0,1) out of `E^{p,q}`.
    pub fn delbar(&self, p: i32, q: i32) -> Mat {
        self.delbar
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.dim(p, q + 1), self.dim(p, q)))
    }

    /// The composite `del ∘ delbar` out of `E^{p,q}` (lands at `(p+1,q+1)`).
    pub fn deldbar(&self, p: i32, q: i32) -> Mat {
        self.del(p, q + 1).mul(&self.delbar(p, q))
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        let (p_min, p_max) = self.p_range;
        let (q_min, q_max) = self.q_range;
        (p_min..=p_max).flat_map(move |p| (q_min..=q_max).map(move |q| (p, q)))
    }

    /// Check the three differential identities at every bidegree.
    ///
    /// An empty list means the complex is a genuine anticommuting double
    /// complex; violations are data, naming the bidegree, the failed identity
    /// and a witness column.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (p_min, p_max) = self.p_range;
        let (q_min, q_max) = self.q_range;
        for p in p_min - 1..=p_max {
            for q in q_min - 1..=q_max {
                check_zero(
                    &mut out,
                    (p, q),
                    "del ∘ del = 0",
                    self.del(p + 1, q).mul(&self.del(p, q)),
                );
                check_zero(
                    &mut out,
                    (p, q),
                    "delbar ∘ delbar = 0",
                    self.delbar(p, q + 1).mul(&self.delbar(p, q)),
                );
                let anti = self
                    .del(p, q + 1)
                    .mul(&self.delbar(p, q))
                    .add(&self.delbar(p + 1, q).mul(&self.del(p, q)));
                check_zero(&mut out, (p, q), "del ∘ delbar + delbar ∘ del = 0", anti);
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The associated simple complex `E^k = ⊕_{p+q=k} E^{p,q}` with
    /// `d = del + delbar` and its two bigraded pieces.
    pub fn total_complex(&self) -> Result<TotalComplex, ComplexError> {
        let violations = self.validate();
        if let Some(first) = violations.first() {
            return Err(ComplexError::Invalid(violations.len(), first.to_string()));
        }
        Ok(TotalComplex::assemble(self))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &DoubleComplex) -> DoubleComplex {
        let mut b = DoubleComplexBuilder::new();
        let keys: std::collections::BTreeSet<Bidegree> =
            self.dims.keys().chain(other.dims.keys()).copied().collect();
        for &(p, q) in &keys {
            b.set_dim(p, q, self.dim(p, q) + other.dim(p, q));
        }
        // Differentials touching any supported bidegree, assembled blockwise.
        for &(p, q) in &keys {
            for (kind, (tp, tq)) in [(0, (p + 1, q)), (1, (p, q + 1))] {
                let (a, c) = if kind == 0 {
                    (self.del(p, q), other.del(p, q))
                } else {
                    (self.delbar(p, q), other.delbar(p, q))
                };
                let rows = self.dim(tp, tq) + other.dim(tp, tq);
                let cols = self.dim(p, q) + other.dim(p, q);
                let block = Mat::from_fn(rows, cols, |r, cidx| {
                    let (ra, ca) = (a.rows(), a.cols());
                    if r < ra && cidx < ca {
                        a[(r, cidx)].clone()
                    } else if r >= ra && cidx >= ca {
                        c[(r - ra, cidx - ca)].clone()
                    } else {
                        Scalar::zero()
                    }
                });
                if kind == 0 {
                    b.set_del(p, q, block);
                } else {
                    b.set_delbar(p, q, block);
                }
            }
        }
        b.build().expect("direct sum of valid shapes")
    }

    /// Conjugate the differentials by a bigraded isomorphism.
    ///
    /// Dimensions and every downstream cohomological invariant are unchanged;
    /// this is how nontrivial test instances are manufactured from decomposed
    /// ones.
    pub fn base_change(&self, g: &BigradedIso) -> Result<DoubleComplex, ComplexError> {
        let mut inv = BTreeMap::new();
        for (&(p, q), m) in &g.maps {
            if m.rows() != m.cols() || m.rows() != self.dim(p, q) {
                return Err(ComplexError::SingularBlock(p, q));
            }
            let mi = m.inverse().map_err(|_| ComplexError::SingularBlock(p, q))?;
            inv.insert((p, q), mi);
        }
        let block = |p: i32, q: i32| -> Mat {
            g.maps
                .get(&(p, q))
                .cloned()
                .unwrap_or_else(|| Mat::identity(self.dim(p, q)))
        };
        let block_inv = |p: i32, q: i32| -> Mat {
            inv.get(&(p, q))
                .cloned()
                .unwrap_or_else(|| Mat::identity(self.dim(p, q)))
        };
        let mut b = DoubleComplexBuilder::new();
        for (&(p, q), &d) in &self.dims {
            b.set_dim(p, q, d);
        }
        for &(p, q) in self.dims.keys() {
            b.set_del(
                p,
                q,
                block(p + 1, q).mul(&self.del(p, q)).mul(&block_inv(p, q)),
            );
            b.set_delbar(
                p,
                q,
                block(p, q + 1)
                    .mul(&self.delbar(p, q))
                    .mul(&block_inv(p, q)),
            );
        }
        b.flags = self.flags;
        b.build().map_err(|e| ComplexError::Invalid(1, e))
    }
}

fn check_zero(out: &mut Vec<Violation>, at: Bidegree, identity: &str, m: Mat) {
    if m.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let col = m.col(c);
        if col.iter().any(|x| !x.is_zero()) {
            out.push(Violation {
                bidegree: at,
                identity: identity.to_string(),
                witness: format!(
                    "column {c} maps to [{}]",
                    col.iter().map(format_scalar).collect::<Vec<_>>().join(", ")
                ),
            });
            return;
        }
    }
}

/// An antilinear involution `E^{p,q} → E^{q,p}`.
///
/// Applied as: conjugate coordinates entrywise, then multiply by the stored
/// matrix. Present on complexes built from structure equations, where it is
/// monomial conjugation.
#[derive(Clone)]
pub struct RealStructure {
    pub sigma: BTreeMap<Bidegree, Mat>,
}

impl RealStructure {
    pub fn sigma(&self, dc: &DoubleComplex, p: i32, q: i32) -> Mat {
        self.sigma
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Mat::zero(dc.dim(q, p), dc.dim(p, q)))
    }

    /// Check `σ ∘ σ = id` and `σ ∘ del = delbar ∘ σ` as exact matrix
    /// identities at every bidegree.
    pub fn validate(&self, dc: &DoubleComplex) -> Vec<Violation> {
        let mut out = Vec::new();
        for (p, q) in dc.bidegrees() {
            let s_pq = self.sigma(dc, p, q);
            let s_qp = self.sigma(dc, q, p);
            // σ is antilinear: σ_{q,p} ∘ σ_{p,q} (v) = S_{q,p} conj(S_{p,q}) v.
            let round = s_qp.mul(&conj_mat(&s_pq));
            if round != Mat::identity(dc.dim(p, q)) {
                out.push(Violation {
                    bidegree: (p, q),
                    identity: "sigma ∘ sigma = id".into(),
                    witness: "composite differs from the identity".into(),
                });
            }
            // σ_{p+1,q} conj(del_{p,q}) = delbar_{q,p} S_{p,q}.
            let lhs = self.sigma(dc, p + 1, q).mul(&conj_mat(&dc.del(p, q)));
            let rhs = dc.delbar(q, p).mul(&s_pq);
            if lhs != rhs {
                out.push(Violation {
                    bidegree: (p, q),
                    identity: "sigma ∘ del = delbar ∘ sigma".into(),
                    witness: "intertwining identity fails".into(),
                });
            }
        }
        out
    }
}

pub fn conj_mat(m: &Mat) -> Mat {
    Mat::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)].conj())
}

/// A bidegree-wise invertible change of basis.
#[derive(Clone, Default)]
pub struct BigradedIso {
    pub maps: BTreeMap<Bidegree, Mat>,
}

/// The simple complex associated to a double complex.
///
/// `block_index` records where each `E^{p,q}` sits inside `E^{p+q}`, so grid
/// coordinates can be moved to total-degree coordinates and back.
pub struct TotalComplex {
    k_range: (i32, i32),
    dims: BTreeMap<i32, usize>,
    d: BTreeMap<i32, Mat>,
    dprime: BTreeMap<i32, Mat>,
    dsecond: BTreeMap<i32, Mat>,
    block_index: BTreeMap<Bidegree, (i32, usize)>,
}

impl TotalComplex {
    fn assemble(dc: &DoubleComplex) -> TotalComplex {
        let (p_min, p_max) = dc.p_range();
        let (q_min, q_max) = dc.q_range();
        let k_range = (p_min + q_min, p_max + q_max);
        let mut dims = BTreeMap::new();
        let mut block_index = BTreeMap::new();
        for k in k_range.0..=k_range.1 {
            let mut offset = 0;
            for p in p_min..=p_max {
                let q = k - p;
                if q < q_min || q > q_max {
                    continue;
                }
                block_index.insert((p, q), (k, offset));
                offset += dc.dim(p, q);
            }
            dims.insert(k, offset);
        }
        let dim_k = |k: i32| dims.get(&k).copied().unwrap_or(0);
        let mut d = BTreeMap::new();
        let mut dprime = BTreeMap::new();
        let mut dsecond = BTreeMap::new();
        for k in k_range.0..=k_range.1 {
            let rows = dim_k(k + 1);
            let cols = dim_k(k);
            let mut m = Mat::zero(rows, cols);
            let mut mp = Mat::zero(rows, cols);
            let mut ms = Mat::zero(rows, cols);
            for p in p_min..=p_max {
                let q = k - p;
                if q < q_min || q > q_max || dc.dim(p, q) == 0 {
                    continue;
                }
                let &(_, src_off) = block_index.get(&(p, q)).unwrap();
                if let Some(&(_, dst_off)) = block_index.get(&(p + 1, q)) {
                    let blk = dc.del(p, q);
                    copy_block(&mut m, &blk, dst_off, src_off);
                    copy_block(&mut mp, &blk, dst_off, src_off);
                }
                if let Some(&(_, dst_off)) = block_index.get(&(p, q + 1)) {
                    let blk = dc.delbar(p, q);
                    copy_block(&mut m, &blk, dst_off, src_off);
                    copy_block(&mut ms, &blk, dst_off, src_off);
                }
            }
            d.insert(k, m);
            dprime.insert(k, mp);
            dsecond.insert(k, ms);
        }
        TotalComplex {
            k_range,
            dims,
            d,
            dprime,
            dsecond,
            block_index,
        }
    }

    pub fn k_range(&self) -> (i32, i32) {
        self.k_range
    }

    pub fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn d(&self, k: i32) -> Mat {
        self.d
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.dim(k + 1), self.dim(k)))
    }

    pub fn dprime(&self, k: i32) -> Mat {
        self.dprime
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.dim(k + 1), self.dim(k)))
    }

    pub fn dsecond(&self, k: i32) -> Mat {
        self.dsecond
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.dim(k + 1), self.dim(k)))
    }

    /// Where `E^{p,q}` sits inside `E^{p+q}`: `(k, offset)`.
    pub fn block(&self, p: i32, q: i32) -> Option<(i32, usize)> {
        self.block_index.get(&(p, q)).copied()
    }
}

fn copy_block(dst: &mut Mat, blk: &Mat, row_off: usize, col_off: usize) {
    for r in 0..blk.rows() {
        for c in 0..blk.cols() {
            dst[(row_off + r, col_off + c)] = blk[(r, c)].clone();
        }
    }
}
