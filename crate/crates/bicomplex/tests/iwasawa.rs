//! Worked examples on the Iwasawa model, pinning the linear algebra layer to
//! hand-computed values.

use bicomplex::lie::{parse, LieModel, ParamAssignment};
use bicomplex::linalg::{image, kernel, lift, Subspace};
use bicomplex::scalar::from_int;
use bicomplex::{Mat, Scalar};

fn iwasawa() -> LieModel {
    let se = parse("dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n").unwrap();
    LieModel::build(&se, &ParamAssignment::new()).unwrap()
}

#[test]
fn total_complex_dims_are_binomial() {
    let m = iwasawa();
    let t = m.complex.total_complex().unwrap();
    let expected = [1, 6, 15, 20, 15, 6, 1];
    for (k, &want) in expected.iter().enumerate() {
        assert_eq!(t.dim(k as i32), want, "degree {k}");
    }
}

#[test]
fn del_at_1_0_kernel_image_and_lift() {
    let m = iwasawa();
    // One nonzero output row: phi3 maps onto the phi1 ∧ phi2 line.
    let del = m.complex.del(1, 0);
    assert_eq!((del.rows(), del.cols()), (3, 3));

    let ker = kernel(&del);
    assert_eq!(ker.dim(), 2);

    // The image is exactly the line through phi1 ∧ phi2, which is the first
    // basis monomial of the target space.
    let img = image(&del);
    let line = Subspace::from_span(&Mat::from_cols(
        3,
        &[vec![from_int(1), from_int(0), from_int(0)]],
    ));
    assert_eq!(img, line);

    // Lifting phi1 ∧ phi2 gives a preimage congruent to -phi3 modulo the
    // kernel.
    let target: Vec<Scalar> = vec![from_int(1), from_int(0), from_int(0)];
    let x = lift(&del, &target).expect("phi1 ∧ phi2 is in the image");
    assert_eq!(del.mul_vec(&x), target);
    let minus_phi3: Vec<Scalar> = vec![from_int(0), from_int(0), from_int(-1)];
    let diff: Vec<Scalar> = x
        .iter()
        .zip(&minus_phi3)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    assert!(
        ker.contains_vec(&diff),
        "preimage must differ from -phi3 by a kernel element"
    );

    // An unreachable target has no preimage.
    assert!(lift(&del, &[from_int(0), from_int(1), from_int(0)]).is_none());
}
