//! Maps between subquotients induced by an ambient linear map.
//!
//! Constructing an [`InducedMap`] first checks the well-definedness
//! certificate (the ambient map sends numerator into numerator and
//! denominator into denominator); a certificate failure signals a bug or a
//! wrong bidegree pairing and never proceeds silently.

use super::Subquotient;
use crate::linalg::kernel;
use crate::{Mat, Space};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("ambient map shape {0}x{1} does not match subquotients ({2} -> {3})")]
    Shape(usize, usize, usize, usize),
    #[error("numerator is not mapped into the target numerator")]
    Numerator,
    #[error("denominator is not mapped into the target denominator")]
    Denominator,
    #[error("certified vector failed to reduce in the target (internal bug)")]
    Reduce,
}

/// The ambient map inducing a map on subquotients.
#[derive(Clone, Copy)]
pub enum Ambient<'m> {
    /// Both subquotients live in the same coordinate space.
    Identity,
    /// An explicit matrix from the source ambient space to the target one.
    Map(&'m Mat),
}

/// A well-defined linear map between two subquotients, expressed on their
/// representative bases.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub matrix: Mat,
    source_dim: usize,
    target_dim: usize,
}

impl InducedMap {
    pub fn new(
        src: &Subquotient,
        tgt: &Subquotient,
        ambient: Ambient<'_>,
    ) -> Result<InducedMap, CertificateError> {
        let apply_space = |s: &Space| -> Space {
            match ambient {
                Ambient::Identity => s.clone(),
                Ambient::Map(m) => s.apply(m),
            }
        };
        match ambient {
            Ambient::Identity => {
                if src.ambient_dim() != tgt.ambient_dim() {
                    return Err(CertificateError::Shape(
                        tgt.ambient_dim(),
                        src.ambient_dim(),
                        src.ambient_dim(),
                        tgt.ambient_dim(),
                    ));
                }
            }
            Ambient::Map(m) => {
                if m.cols() != src.ambient_dim() || m.rows() != tgt.ambient_dim() {
                    return Err(CertificateError::Shape(
                        m.rows(),
                        m.cols(),
                        src.ambient_dim(),
                        tgt.ambient_dim(),
                    ));
                }
            }
        }
        if !tgt.numerator().contains(&apply_space(src.numerator())) {
            return Err(CertificateError::Numerator);
        }
        if !tgt.denominator().contains(&apply_space(src.denominator())) {
            return Err(CertificateError::Denominator);
        }

        let mut cols = Vec::with_capacity(src.dim());
        for j in 0..src.dim() {
            let rep = src.reps().col(j);
            let image = match ambient {
                Ambient::Identity => rep,
                Ambient::Map(m) => m.mul_vec(&rep),
            };
            let coords = tgt.reduce(&image).ok_or(CertificateError::Reduce)?;
            cols.push(coords);
        }
        Ok(InducedMap {
            matrix: Mat::from_cols(tgt.dim(), &cols),
            source_dim: src.dim(),
            target_dim: tgt.dim(),
        })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Kernel as a subspace of the source quotient coordinates.
    pub fn kernel(&self) -> Space {
        kernel(&self.matrix)
    }

    /// Image as a subspace of the target quotient coordinates.
    pub fn image(&self) -> Space {
        Space::from_span(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}
