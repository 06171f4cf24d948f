//! Exact cohomology laboratory for bounded double complexes.
//!
//! The crate computes Dolbeault, Bott-Chern, Aeppli and de Rham cohomology of
//! bounded double complexes over the Gaussian rationals, together with the six
//! auxiliary subquotients that measure the failure of the various exactness
//! conditions at each bidegree. On top of the raw dimensions it classifies
//! every bidegree against the weak forms of those exactness conditions,
//! evaluates the degree-wise conditions on the associated simple complex, and
//! machine-checks the exact sequences, dualities and cone-map identities that
//! tie everything together.
//!
//! Inputs are either abstract complexes (`.dcx` JSON) or complex Lie-algebra
//! structure equations (`.se` text), from which the invariant-form complex is
//! built with its wedge algebra and real structure.
//!
//! All arithmetic is exact; there is no floating-point mode.
//!
//! ```
//! use bicomplex::cohomology::Engine;
//! use bicomplex::lie::{parse, LieModel, ParamAssignment};
//!
//! let se = parse("dim 3\nd phi1 = 0\nd phi2 = 0\nd phi3 = -1 * phi1^phi2\n").unwrap();
//! let model = LieModel::build(&se, &ParamAssignment::new()).unwrap();
//! let engine = Engine::new(&model.complex).unwrap();
//!
//! // Three independent holomorphic 1-forms, two surviving in Bott-Chern.
//! assert_eq!(engine.groups(1, 0).h_dbar.dim(), 3);
//! assert_eq!(engine.groups(1, 0).h_bc.dim(), 2);
//! ```

pub mod cohomology;
pub mod complex;
pub mod dcx;
pub mod lemma;
pub mod lie;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod report;
pub mod scalar;
pub mod verify;

pub use scalar::{Rational, Scalar};

/// Matrix over the concrete coefficient field ℚ(i).
pub type Mat = linalg::Matrix<Scalar>;

/// Subspace of a ℚ(i) coordinate space.
pub type Space = linalg::Subspace<Scalar>;
