//! Matrix text and JSON formats: semicolon-separated rows for humans,
//! self-describing JSON records for pipelines. Both round-trip exactly.
//!
//! ```bash
//! cargo run -p icubes --example format_roundtrip
//! ```

use icubes::format::{icube_from_json, icube_to_json, matrix_to_text, parse_matrix_text};
use icubes::icube::verify;
use icubes::Ring;

fn main() {
    let text = "1+i,0,-1+i; 1,-1-i,-i; 1,1+i,-i";
    let mat = parse_matrix_text(text).unwrap();
    assert_eq!(matrix_to_text(&mat), text.replace(' ', "").replace(";", "; "));
    println!("text: {}", matrix_to_text(&mat));

    let ic = verify(&mat, Ring::Gauss).unwrap();
    let json = icube_to_json(&ic);
    println!("json: {}", serde_json::to_string(&json).unwrap());

    // parsing re-verifies the icube identity and the stored norm
    let back = icube_from_json(&json).unwrap();
    assert_eq!(back.mat, ic.mat);
    assert_eq!(back.lambda, ic.lambda);
    println!("round-trip ok, norm {}", back.lambda);
}
