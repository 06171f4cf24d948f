//! Seeded random double complexes for fuzzing.
//!
//! Random differentials almost never satisfy all three identities, so the
//! generator works the other way around: it direct-sums indecomposable shapes
//! that satisfy them by construction (dots, squares, zigzags) and then hides
//! the decomposition behind a random bigraded base change.

use crate::complex::{BigradedIso, DoubleComplex, DoubleComplexBuilder};
use crate::scalar::{from_int, gaussian, Scalar};
use crate::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

const WINDOW: i32 = 3; // shape anchors stay in [0, WINDOW]^2

fn nonzero_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    // Small pool of nonzero values, mixing signs, fractions and i.
    let pool: [Scalar; 8] = [
        from_int(1),
        from_int(-1),
        from_int(2),
        from_int(-2),
        gaussian(1, 2, 0, 1),
        gaussian(0, 1, 1, 1),
        gaussian(0, 1, -1, 1),
        gaussian(1, 1, 1, 1),
    ];
    pool[rng.gen_range(0..pool.len())].clone()
}

fn one_by_one(s: Scalar) -> Mat {
    Mat::from_rows(vec![vec![s]])
}

fn dot(rng: &mut ChaCha8Rng) -> DoubleComplex {
    let p = rng.gen_range(0..=WINDOW);
    let q = rng.gen_range(0..=WINDOW);
    DoubleComplex::builder().dim(p, q, 1).build().unwrap()
}

/// A unit square with all four arrows isomorphisms and anticommuting signs.
fn square(rng: &mut ChaCha8Rng) -> DoubleComplex {
    let p = rng.gen_range(0..=WINDOW);
    let q = rng.gen_range(0..=WINDOW);
    let a = nonzero_scalar(rng); // del out of (p,q)
    let b = nonzero_scalar(rng); // delbar out of (p,q)
    let c = nonzero_scalar(rng); // del out of (p,q+1)
                                 // anticommutator at (p,q): delbar(p+1,q) * a + c * b = 0
    let d = -(c.clone() * b.clone()) / a.clone();
    DoubleComplex::builder()
        .dim(p, q, 1)
        .dim(p + 1, q, 1)
        .dim(p, q + 1, 1)
        .dim(p + 1, q + 1, 1)
        .del(p, q, one_by_one(a))
        .delbar(p, q, one_by_one(b))
        .del(p, q + 1, one_by_one(c))
        .delbar(p + 1, q, one_by_one(d))
        .build()
        .unwrap()
}

/// A staircase of 1-dimensional spaces with alternating-direction arrows.
///
/// Consecutive arrows never compose, so the differential identities hold for
/// any nonzero entries. `len` is the number of spaces (1 = dot, 2 = a single
/// arrow).
fn zigzag(rng: &mut ChaCha8Rng, len: usize) -> DoubleComplex {
    let horizontal_first: bool = rng.gen();
    let (mut p, mut q) = (
        rng.gen_range(0..=WINDOW),
        rng.gen_range(WINDOW..=2 * WINDOW),
    );
    let mut b = DoubleComplexBuilder::new();
    b.set_dim(p, q, 1);
    for step in 0..len.saturating_sub(1) {
        let outgoing = step % 2 == 0;
        if horizontal_first {
            if outgoing {
                // arrow del: (p,q) -> (p+1,q)
                b.set_dim(p + 1, q, 1);
                b.set_del(p, q, one_by_one(nonzero_scalar(rng)));
                p += 1;
            } else {
                // arrow delbar: (p,q-1) -> (p,q); walk to the source
                b.set_dim(p, q - 1, 1);
                b.set_delbar(p, q - 1, one_by_one(nonzero_scalar(rng)));
                q -= 1;
            }
        } else if outgoing {
            b.set_dim(p, q + 1, 1);
            b.set_delbar(p, q, one_by_one(nonzero_scalar(rng)));
            q += 1;
        } else {
            b.set_dim(p - 1, q, 1);
            b.set_del(p - 1, q, one_by_one(nonzero_scalar(rng)));
            p -= 1;
        }
    }
    b.build().unwrap()
}

/// Random invertible matrix: a product of unitriangular factors with a
/// permutation, so invertibility holds by construction.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let mut upper = Mat::identity(n);
    let mut lower = Mat::identity(n);
    for r in 0..n {
        for c in r + 1..n {
            if rng.gen_bool(0.4) {
                upper[(r, c)] = nonzero_scalar(rng);
            }
            if rng.gen_bool(0.4) {
                lower[(c, r)] = nonzero_scalar(rng);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let pmat = Mat::from_fn(n, n, |r, c| {
        if perm[r] == c {
            from_int(1)
        } else {
            from_int(0)
        }
    });
    lower.mul(&upper).mul(&pmat)
}

/// A random bigraded iso covering every supported bidegree of `dc`.
pub fn random_iso(rng: &mut ChaCha8Rng, dc: &DoubleComplex) -> BigradedIso {
    let mut maps = BTreeMap::new();
    for (p, q) in dc.bidegrees() {
        let n = dc.dim(p, q);
        if n > 0 {
            maps.insert((p, q), random_invertible(rng, n));
        }
    }
    BigradedIso { maps }
}

/// Deterministic random valid complex of total dimension at most
/// `size_budget`, assembled from dots, squares and zigzags and disguised by a
/// base change.
pub fn random_complex(seed: u64, size_budget: usize) -> DoubleComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = DoubleComplex::builder().build().unwrap();
    let mut remaining = size_budget.max(1);
    while remaining > 0 {
        let shape = match rng.gen_range(0..6) {
            0 => dot(&mut rng),
            1 | 2 if remaining >= 4 => square(&mut rng),
            _ => {
                let len = rng.gen_range(1..=remaining.min(6));
                zigzag(&mut rng, len)
            }
        };
        if shape.total_dim() > remaining {
            // Shrink to a dot when only a sliver of budget is left.
            let d = dot(&mut rng);
            remaining -= d.total_dim();
            acc = acc.direct_sum(&d);
            continue;
        }
        remaining -= shape.total_dim();
        acc = acc.direct_sum(&shape);
    }
    let iso = random_iso(&mut rng, &acc);
    acc.base_change(&iso)
        .expect("random iso blocks are invertible by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_one_is_a_dot() {
        let dc = random_complex(7, 1);
        assert_eq!(dc.total_dim(), 1);
        assert!(dc.validate().is_empty());
    }

    #[test]
    fn deterministic_in_seed() {
        let a = random_complex(42, 12);
        let b = random_complex(42, 12);
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
        assert_eq!(a.del(1, 1), b.del(1, 1));
    }

    #[test]
    fn generated_complexes_validate() {
        for seed in 0..40 {
            let dc = random_complex(seed, 14);
            assert!(
                dc.validate().is_empty(),
                "seed {seed} produced an invalid complex"
            );
            assert!(dc.total_dim() <= 14);
        }
    }

    #[test]
    fn euler_characteristic_identity() {
        let dc = random_complex(3, 9);
        let t = dc.total_complex().unwrap();
        let by_grid: i64 = dc
            .bidegrees()
            .map(|(p, q)| {
                if (p + q) % 2 == 0 {
                    dc.dim(p, q) as i64
                } else {
                    -(dc.dim(p, q) as i64)
                }
            })
            .sum();
        let by_total: i64 = (t.k_range().0..=t.k_range().1)
            .map(|k| {
                if k % 2 == 0 {
                    t.dim(k) as i64
                } else {
                    -(t.dim(k) as i64)
                }
            })
            .sum();
        assert_eq!(by_grid, by_total);
    }

    #[test]
    fn random_invertible_is_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..5 {
            let m = random_invertible(&mut rng, n);
            assert!(m.inverse().is_ok());
        }
    }
}
