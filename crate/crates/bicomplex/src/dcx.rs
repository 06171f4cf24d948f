//! The `.dcx` abstract-complex file format (JSON).
//!
//! Fields: `p_range`, `q_range`, `dims` keyed by `"p,q"`, `del` and `delbar`
//! keyed by `"p,q"` with row-major entry grids in scalar text syntax. Missing
//! keys mean zero spaces or zero maps. Abstract inputs never carry geometric
//! flags: they are not invariant models of anything.

use crate::complex::{DoubleComplex, DoubleComplexBuilder};
use crate::scalar::{format_scalar, parse_scalar};
use crate::Mat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DcxError {
    #[error("malformed .dcx JSON: {0}")]
    Json(String),
    #[error("bad bidegree key `{0}` (expected \"p,q\")")]
    BadKey(String),
    #[error("at {0}: {1}")]
    BadEntry(String, String),
    #[error("inconsistent shapes: {0}")]
    Shape(String),
}

#[derive(Serialize, Deserialize, Default)]
struct DcxFile {
    #[serde(default)]
    p_range: Option<(i32, i32)>,
    #[serde(default)]
    q_range: Option<(i32, i32)>,
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    del: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    delbar: BTreeMap<String, Vec<Vec<String>>>,
}

fn parse_key(key: &str) -> Result<(i32, i32), DcxError> {
    let (p, q) = key
        .split_once(',')
        .ok_or_else(|| DcxError::BadKey(key.to_string()))?;
    let p = p
        .trim()
        .parse()
        .map_err(|_| DcxError::BadKey(key.to_string()))?;
    let q = q
        .trim()
        .parse()
        .map_err(|_| DcxError::BadKey(key.to_string()))?;
    Ok((p, q))
}

fn parse_grid(key: &str, grid: &[Vec<String>]) -> Result<Mat, DcxError> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if grid.iter().any(|r| r.len() != cols) {
        return Err(DcxError::Shape(format!("ragged grid at {key}")));
    }
    let mut out = Vec::with_capacity(rows);
    for row in grid {
        let mut out_row = Vec::with_capacity(cols);
        for cell in row {
            out_row.push(
                parse_scalar(cell)
                    .map_err(|e| DcxError::BadEntry(key.to_string(), e.to_string()))?,
            );
        }
        out.push(out_row);
    }
    Ok(Mat::from_rows(out))
}

/// Parse a `.dcx` document into a double complex (shape-checked, not
/// validated; run [`DoubleComplex::validate`] afterwards).
pub fn parse_dcx(text: &str) -> Result<DoubleComplex, DcxError> {
    let file: DcxFile = serde_json::from_str(text).map_err(|e| DcxError::Json(e.to_string()))?;
    let mut b = DoubleComplexBuilder::new();
    for (key, &dim) in &file.dims {
        let (p, q) = parse_key(key)?;
        b.set_dim(p, q, dim);
    }
    for (key, grid) in &file.del {
        let (p, q) = parse_key(key)?;
        b.set_del(p, q, parse_grid(key, grid)?);
    }
    for (key, grid) in &file.delbar {
        let (p, q) = parse_key(key)?;
        b.set_delbar(p, q, parse_grid(key, grid)?);
    }
    b.build().map_err(DcxError::Shape)
}

fn grid_of(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| format_scalar(&m[(r, c)])).collect())
        .collect()
}

/// Serialize a complex to canonical `.dcx` JSON (stable key order, canonical
/// scalar text). Used to dump fuzz failures for replay.
pub fn to_dcx(dc: &DoubleComplex) -> String {
    let mut file = DcxFile {
        p_range: Some(dc.p_range()),
        q_range: Some(dc.q_range()),
        ..Default::default()
    };
    for (p, q) in dc.bidegrees() {
        let key = format!("{p},{q}");
        if dc.dim(p, q) > 0 {
            file.dims.insert(key.clone(), dc.dim(p, q));
        }
        let del = dc.del(p, q);
        if !del.is_zero() {
            file.del.insert(key.clone(), grid_of(&del));
        }
        let delbar = dc.delbar(p, q);
        if !delbar.is_zero() {
            file.delbar.insert(key, grid_of(&delbar));
        }
    }
    serde_json::to_string_pretty(&file).expect("dcx serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_complex;

    #[test]
    fn round_trip_preserves_the_complex() {
        let dc = random_complex(11, 10);
        let text = to_dcx(&dc);
        let back = parse_dcx(&text).unwrap();
        assert_eq!(to_dcx(&back), text);
        for (p, q) in dc.bidegrees() {
            assert_eq!(dc.dim(p, q), back.dim(p, q));
            assert_eq!(dc.del(p, q), back.del(p, q));
            assert_eq!(dc.delbar(p, q), back.delbar(p, q));
        }
    }

    #[test]
    fn minimal_document_parses() {
        let dc = parse_dcx(r#"{"dims": {"0,0": 1, "1,0": 1}, "del": {"0,0": [["1"]]}}"#).unwrap();
        assert_eq!(dc.dim(0, 0), 1);
        assert_eq!(dc.del(0, 0).rank(), 1);
        assert!(dc.validate().is_empty());
        assert!(!dc.flags.is_lie_model);
    }

    #[test]
    fn errors_name_the_problem() {
        assert!(matches!(parse_dcx("not json"), Err(DcxError::Json(_))));
        assert!(matches!(
            parse_dcx(r#"{"dims": {"zero": 1}}"#),
            Err(DcxError::BadKey(_))
        ));
        assert!(matches!(
            parse_dcx(r#"{"dims": {"0,0": 1}, "del": {"0,0": [["wat"]]}}"#),
            Err(DcxError::BadEntry(_, _))
        ));
        // Shape mismatch against declared dims.
        assert!(matches!(
            parse_dcx(r#"{"dims": {"0,0": 2, "1,0": 1}, "del": {"0,0": [["1"]]}}"#),
            Err(DcxError::Shape(_))
        ));
    }
}
