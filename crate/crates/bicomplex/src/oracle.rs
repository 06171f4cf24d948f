//! Independent brute-force dimension oracle.
//!
//! This module recomputes the full invariant table of a double complex by a
//! deliberately different route from the engine: ranks only (no canonical
//! subspaces, no representatives), computed by fraction-free Bareiss
//! elimination over the Gaussian integers after clearing denominators. The
//! committed corpus fixtures are produced by this oracle, and the engine must
//! reproduce them exactly; on fuzz inputs the two routes are compared
//! directly. A disagreement means one of the two implementations is wrong.

use crate::cohomology::{bidegree_key, GroupDims, InvariantTable};
use crate::complex::DoubleComplex;
use crate::Mat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Gaussian integer.
#[derive(Clone, PartialEq, Eq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn zero() -> Self {
        GInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        GInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, other: &GInt) -> GInt {
        GInt {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn sub(&self, other: &GInt) -> GInt {
        GInt {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    /// Exact division; panics when the quotient is not a Gaussian integer
    /// (which cannot happen inside Bareiss elimination).
    fn div_exact(&self, other: &GInt) -> GInt {
        let norm = &other.re * &other.re + &other.im * &other.im;
        assert!(!norm.is_zero(), "division by zero in oracle");
        // self * conj(other) / norm, both components exactly.
        let re_num = &self.re * &other.re + &self.im * &other.im;
        let im_num = &self.im * &other.re - &self.re * &other.im;
        let (re_q, re_r) = (&re_num / &norm, &re_num % &norm);
        let (im_q, im_r) = (&im_num / &norm, &im_num % &norm);
        assert!(
            re_r.is_zero() && im_r.is_zero(),
            "inexact division in oracle"
        );
        GInt { re: re_q, im: im_q }
    }
}

/// Clear denominators of an exact rational matrix into Gaussian integers.
/// Scaling a whole matrix by a nonzero integer does not change its rank.
fn integerize(m: &Mat) -> Vec<Vec<GInt>> {
    let mut scale = BigInt::one();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let s = &m[(r, c)];
            for den in [s.re.denom(), s.im.denom()] {
                if !(&scale % den).is_zero() {
                    scale = lcm(&scale, den);
                }
            }
        }
    }
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    let s = &m[(r, c)];
                    GInt {
                        re: s.re.numer() * (&scale / s.re.denom()),
                        im: s.im.numer() * (&scale / s.im.denom()),
                    }
                })
                .collect()
        })
        .collect()
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b / gcd(a, b)).abs()
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Rank by fraction-free Bareiss elimination.
fn rank(m: &Mat) -> usize {
    let mut a = integerize(m);
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev = GInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot_row);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = num.div_exact(&prev);
            }
            a[i][c] = GInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// All group dimensions at one bidegree, from rank identities only:
/// `dim(Im A ∩ Ker C) = rank A − rank(C·A)` and inclusion–exclusion for sums.
fn group_dims(dc: &DoubleComplex, p: i32, q: i32) -> GroupDims {
    let m = dc.dim(p, q);
    let del = dc.del(p, q);
    let delbar = dc.delbar(p, q);
    let del_prev = dc.del(p - 1, q);
    let delbar_prev = dc.delbar(p, q - 1);
    let deldbar = dc.deldbar(p, q);
    let deldbar_prev = dc.deldbar(p - 1, q - 1);

    let r_del = rank(&del);
    let r_delbar = rank(&delbar);
    let r_del_prev = rank(&del_prev);
    let r_delbar_prev = rank(&delbar_prev);
    let r_deldbar = rank(&deldbar);
    let r_deldbar_prev = rank(&deldbar_prev);

    let ker_del = m - r_del;
    let ker_delbar = m - r_delbar;
    let ker_both = m - rank(&del.vstack(&delbar));
    let ker_deldbar = m - r_deldbar;

    let sum_images = rank(&del_prev.hstack(&delbar_prev));
    let int_images = r_del_prev + r_delbar_prev - sum_images;

    let int_im_del_ker_delbar = r_del_prev - rank(&delbar.mul(&del_prev));
    let int_ker_del_im_delbar = r_delbar_prev - rank(&del.mul(&delbar_prev));

    let sum_im_del_ker_delbar = r_del_prev + ker_delbar - int_im_del_ker_delbar;
    let sum_ker_del_im_delbar = ker_del + r_delbar_prev - int_ker_del_im_delbar;
    let sum_kers = ker_del + ker_delbar - ker_both;

    GroupDims {
        h_dbar: ker_delbar - r_delbar_prev,
        h_del: ker_del - r_del_prev,
        h_bc: ker_both - r_deldbar_prev,
        h_a: ker_deldbar - sum_images,
        a: int_images - r_deldbar_prev,
        b: int_im_del_ker_delbar - r_deldbar_prev,
        c: ker_deldbar - sum_im_del_ker_delbar,
        d: int_ker_del_im_delbar - r_deldbar_prev,
        e: ker_deldbar - sum_ker_del_im_delbar,
        f: ker_deldbar - sum_kers,
        b_tilde: int_im_del_ker_delbar - int_images,
        c_tilde: sum_kers - sum_im_del_ker_delbar,
        d_tilde: int_ker_del_im_delbar - int_images,
        e_tilde: sum_kers - sum_ker_del_im_delbar,
    }
}

/// The full invariant table by the oracle route. The complex must validate
/// (the rank identities above use `d² = 0` implicitly).
pub fn table(dc: &DoubleComplex) -> InvariantTable {
    let mut entries = BTreeMap::new();
    for (p, q) in dc.bidegrees() {
        entries.insert(bidegree_key(p, q), group_dims(dc, p, q));
    }
    let total = dc.total_complex().expect("oracle requires a valid complex");
    let mut betti = BTreeMap::new();
    let (k_min, k_max) = total.k_range();
    for k in k_min..=k_max {
        let cycles = total.dim(k) - rank(&total.d(k));
        betti.insert(k, cycles - rank(&total.d(k - 1)));
    }
    InvariantTable { entries, betti }
}
