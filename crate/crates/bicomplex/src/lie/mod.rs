//! Structure-equation frontend: parsing, the wedge algebra, and the
//! invariant-form double complex of a Lie algebra with complex structure.

pub mod build;
pub mod parse;
pub mod wedge;

pub use build::{BuildError, LieModel, ParamAssignment};
pub use parse::{parse, ErrorCategory, ParseError, StructureEquations};
pub use wedge::{Form, WedgeAlgebra};
