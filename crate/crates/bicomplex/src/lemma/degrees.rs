//! The six degree-wise exactness conditions on the simple complex.
//!
//! All six are evaluated directly as subspace equalities inside `E^k` and
//! `E^{k-1}` using the bigraded pieces `d'`, `d''` of the total differential,
//! not reduced to bidegree formulas, so their pairwise equivalence is
//! genuinely exercised. The six booleans agree on every valid complex; a
//! disagreement is an engine bug and is reported with a witness.

use crate::cohomology::suites::Finding;
use crate::cohomology::Engine;
use crate::complex::TotalComplex;
use crate::linalg::{kernel, subspace_intersect, subspace_sum};
use crate::Space;
use serde::Serialize;

/// The six conditions for one total degree `k` (the starred ones live one
/// degree below).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeFlags {
    pub a_k: bool,
    pub b_k: bool,
    pub c_k: bool,
    pub a_star: bool,
    pub b_star: bool,
    pub c_star: bool,
    pub agree: bool,
}

impl DegreeFlags {
    pub fn holds(&self) -> bool {
        self.a_k
    }
}

fn eq(a: &Space, b: &Space) -> bool {
    a == b
}

/// Evaluate the six conditions at total degree `k`.
pub fn degree_conditions(engine: &Engine, k: i32) -> (DegreeFlags, Vec<Finding>) {
    let t: &TotalComplex = &engine.total;

    // Subspaces of E^k.
    let ker_dp = kernel(&t.dprime(k));
    let ker_ds = kernel(&t.dsecond(k));
    let im_d = Space::from_span(&t.d(k - 1));
    let im_dp = Space::from_span(&t.dprime(k - 1));
    let im_ds = Space::from_span(&t.dsecond(k - 1));
    let im_dpds = Space::from_span(&t.dprime(k - 1).mul(&t.dsecond(k - 2)));

    let isect = |a: &Space, b: &Space| subspace_intersect(a, b).expect("same ambient");
    let sum = |a: &Space, b: &Space| subspace_sum(a, b).expect("same ambient");

    let kk = isect(&ker_dp, &ker_ds);
    let a_k = eq(&isect(&kk, &im_d), &im_dpds);
    let b_k = eq(&isect(&ker_ds, &im_dp), &im_dpds) && eq(&isect(&ker_dp, &im_ds), &im_dpds);
    let c_k = eq(&isect(&kk, &sum(&im_dp, &im_ds)), &im_dpds);

    // Subspaces of E^{k-1}.
    let ker_dp1 = kernel(&t.dprime(k - 1));
    let ker_ds1 = kernel(&t.dsecond(k - 1));
    let ker_d1 = kernel(&t.d(k - 1));
    let im_dp1 = Space::from_span(&t.dprime(k - 2));
    let im_ds1 = Space::from_span(&t.dsecond(k - 2));
    let ker_dpds = kernel(&t.dprime(k).mul(&t.dsecond(k - 1)));

    let a_star = eq(&sum(&sum(&im_dp1, &im_ds1), &ker_d1), &ker_dpds);
    let b_star = eq(&sum(&ker_dp1, &im_ds1), &ker_dpds) && eq(&sum(&ker_ds1, &im_dp1), &ker_dpds);
    let c_star = eq(
        &sum(&sum(&im_dp1, &im_ds1), &isect(&ker_dp1, &ker_ds1)),
        &ker_dpds,
    );

    let all = [a_k, b_k, c_k, a_star, b_star, c_star];
    let agree = all.iter().all(|&x| x == a_k);
    let flags = DegreeFlags {
        a_k,
        b_k,
        c_k,
        a_star,
        b_star,
        c_star,
        agree,
    };

    let mut findings = Vec::new();
    if !agree {
        findings.push(Finding::new(
            "degree-agreement",
            k,
            format!(
                "six-way disagreement: a={a_k} b={b_k} c={c_k} a*={a_star} b*={b_star} c*={c_star}"
            ),
        ));
    }
    (flags, findings)
}

/// The conjunction over every total degree; equals regularity on valid
/// complexes (a cross-check the verification battery asserts).
pub fn all_degree_conditions_hold(engine: &Engine) -> bool {
    let (k_min, k_max) = engine.total.k_range();
    (k_min..=k_max).all(|k| degree_conditions(engine, k).0.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DoubleComplex;
    use crate::lemma::regularity;
    use crate::lie::{parse, LieModel, ParamAssignment};
    use crate::random::random_complex;
    use crate::scalar::from_int;
    use crate::Mat;

    #[test]
    fn torus_all_degrees_hold() {
        let se = parse("dim 2\nd phi1 = 0\nd phi2 = 0\n").unwrap();
        let dc = LieModel::build(&se, &ParamAssignment::new())
            .unwrap()
            .complex;
        let e = Engine::new(&dc).unwrap();
        for k in 0..=4 {
            let (flags, findings) = degree_conditions(&e, k);
            assert!(findings.is_empty());
            assert!(flags.holds() && flags.agree);
        }
        assert!(all_degree_conditions_hold(&e));
    }

    #[test]
    fn horizontal_zigzag_fails_in_degree_one() {
        let dc = DoubleComplex::builder()
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .del(0, 0, Mat::from_rows(vec![vec![from_int(1)]]))
            .build()
            .unwrap();
        let e = Engine::new(&dc).unwrap();
        let (flags, findings) = degree_conditions(&e, 1);
        assert!(findings.is_empty(), "{findings:?}");
        assert!(flags.agree);
        assert!(!flags.a_k && !flags.b_k && !flags.c_k);
        assert!(!flags.a_star && !flags.b_star && !flags.c_star);
        assert!(!all_degree_conditions_hold(&e));
    }

    #[test]
    fn agreement_and_regularity_match_on_fuzz() {
        for seed in [3u64, 11, 19] {
            let dc = random_complex(seed, 12);
            let e = Engine::new(&dc).unwrap();
            let (k_min, k_max) = e.total.k_range();
            for k in k_min..=k_max + 1 {
                let (flags, findings) = degree_conditions(&e, k);
                assert!(findings.is_empty(), "seed {seed} degree {k}");
                assert!(flags.agree);
            }
            assert_eq!(
                all_degree_conditions_hold(&e),
                regularity(&e).regular,
                "seed {seed}"
            );
        }
    }
}
