//! Shared text and JSON formats. Text: entries separated by ',', rows by
//! ';', Gaussian entries as "a+bi". JSON: nested arrays of {"re", "im"}
//! records with decimal strings; icube records add "ring" and "lambda".

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::icube::{verify, IcubeMatrix};
use crate::lattice::Mat;
use crate::ring::GaussInt;
use crate::Ring;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
    #[error("not a valid icube: {0}")]
    Invalid(String),
}

pub fn vector_to_text(v: &[GaussInt]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

pub fn matrix_to_text(m: &Mat) -> String {
    (0..m.rows)
        .map(|i| vector_to_text(&m.row(i)))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn parse_vector(s: &str) -> Result<Vec<GaussInt>, FormatError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<GaussInt>()
                .map_err(|e| FormatError::Parse(e.to_string()))
        })
        .collect()
}

/// Parse the row-major text grammar; a single row yields a 1-row matrix.
pub fn parse_matrix_text(s: &str) -> Result<Mat, FormatError> {
    let rows: Vec<Vec<GaussInt>> = s
        .split(';')
        .map(parse_vector)
        .collect::<Result<_, _>>()?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(FormatError::Parse("empty matrix".into()));
    }
    let w = rows[0].len();
    if rows.iter().any(|r| r.len() != w) {
        return Err(FormatError::Parse("ragged rows".into()));
    }
    Ok(Mat::from_rows(rows))
}

fn rows_of(m: &Mat) -> Vec<Vec<GaussInt>> {
    (0..m.rows).map(|i| m.row(i)).collect()
}

pub fn matrix_to_json(m: &Mat) -> Value {
    serde_json::to_value(rows_of(m)).expect("matrix rows serialize")
}

pub fn matrix_from_json(v: &Value) -> Result<Mat, FormatError> {
    let rows: Vec<Vec<GaussInt>> =
        serde_json::from_value(v.clone()).map_err(|e| FormatError::Json(e.to_string()))?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(FormatError::Json("empty matrix".into()));
    }
    let w = rows[0].len();
    if rows.iter().any(|r| r.len() != w) {
        return Err(FormatError::Json("ragged rows".into()));
    }
    Ok(Mat::from_rows(rows))
}

#[derive(Serialize, Deserialize)]
struct IcubeRecord {
    ring: Ring,
    lambda: String,
    matrix: Vec<Vec<GaussInt>>,
}

pub fn icube_to_json(ic: &IcubeMatrix) -> Value {
    serde_json::to_value(IcubeRecord {
        ring: ic.ring,
        lambda: ic.lambda.to_string(),
        matrix: rows_of(&ic.mat),
    })
    .expect("icube record serializes")
}

/// Deserialize and re-verify; the stored lambda must match the columns.
pub fn icube_from_json(v: &Value) -> Result<IcubeMatrix, FormatError> {
    let rec: IcubeRecord =
        serde_json::from_value(v.clone()).map_err(|e| FormatError::Json(e.to_string()))?;
    let lambda: BigInt = rec
        .lambda
        .parse()
        .map_err(|_| FormatError::Json(format!("bad lambda {:?}", rec.lambda)))?;
    let mat = Mat::from_rows(rec.matrix);
    let ic = verify(&mat, rec.ring).map_err(|e| FormatError::Invalid(e.to_string()))?;
    if ic.lambda != lambda {
        return Err(FormatError::Invalid(format!(
            "stored norm {} but the columns have norm {}",
            lambda, ic.lambda
        )));
    }
    Ok(ic)
}

/// Parsed matrix input plus the ring annotation if the source carried one.
pub struct MatrixInput {
    pub mat: Mat,
    pub ring: Option<Ring>,
}

/// Auto-detect text vs JSON by the first non-whitespace byte: '{' is an
/// icube record, '[' a nested-array matrix, anything else the text grammar.
pub fn parse_matrix_auto(input: &str) -> Result<MatrixInput, FormatError> {
    match input.trim_start().bytes().next() {
        Some(b'{') => {
            let v: Value =
                serde_json::from_str(input).map_err(|e| FormatError::Json(e.to_string()))?;
            let ic = icube_from_json(&v)?;
            Ok(MatrixInput { mat: ic.mat, ring: Some(ic.ring) })
        }
        Some(b'[') => {
            let v: Value =
                serde_json::from_str(input).map_err(|e| FormatError::Json(e.to_string()))?;
            Ok(MatrixInput { mat: matrix_from_json(&v)?, ring: None })
        }
        Some(_) => Ok(MatrixInput { mat: parse_matrix_text(input)?, ring: None }),
        None => Err(FormatError::Parse("empty input".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn text_round_trip() {
        let m = Mat::from_rows(vec![
            vec![g(1, 0), g(0, 1), g(-2, 3)],
            vec![g(0, -1), g(5, 0), g(0, 0)],
        ]);
        let s = matrix_to_text(&m);
        assert_eq!(s, "1,i,-2+3i; -i,5,0");
        assert_eq!(parse_matrix_text(&s).unwrap(), m);
        assert_eq!(parse_matrix_text(" 1 , i , -2+3i ;\n -i, 5, 0 ").unwrap(), m);
    }

    #[test]
    fn vector_round_trip() {
        let v = vec![g(3, -4), g(0, 0), g(-1, 1)];
        assert_eq!(parse_vector(&vector_to_text(&v)).unwrap(), v);
    }

    #[test]
    fn json_round_trip() {
        let m = Mat::from_rows(vec![vec![g(1, 2), g(3, 0)], vec![g(0, -7), g(4, 4)]]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn icube_json_round_trip_and_validation() {
        let m = parse_matrix_text("1,2,2; 2,-2,1; 2,1,-2").unwrap();
        let ic = verify(&m, Ring::Int).unwrap();
        let v = icube_to_json(&ic);
        assert_eq!(v["ring"], "Z");
        assert_eq!(v["lambda"], "9");
        let back = icube_from_json(&v).unwrap();
        assert_eq!(back.mat, ic.mat);
        assert_eq!(back.lambda, BigInt::from(9));

        let mut tampered = v.clone();
        tampered["lambda"] = "10".into();
        assert!(matches!(icube_from_json(&tampered), Err(FormatError::Invalid(_))));
    }

    #[test]
    fn auto_detection() {
        let text = parse_matrix_auto("1,2,2").unwrap();
        assert_eq!(text.mat.rows, 1);
        assert_eq!(text.ring, None);

        let arr = parse_matrix_auto("[[{\"re\":\"1\",\"im\":\"0\"}]]").unwrap();
        assert_eq!(arr.mat.at(0, 0), &g(1, 0));

        let m = parse_matrix_text("1,2,2; 2,-2,1; 2,1,-2").unwrap();
        let obj = icube_to_json(&verify(&m, Ring::Int).unwrap()).to_string();
        let parsed = parse_matrix_auto(&obj).unwrap();
        assert_eq!(parsed.ring, Some(Ring::Int));
        assert_eq!(parsed.mat, m);

        assert!(parse_matrix_auto("  ").is_err());
        assert!(parse_matrix_auto("1,2; 3").is_err());
    }
}
