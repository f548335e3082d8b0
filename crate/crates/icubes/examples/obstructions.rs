//! Arithmetic obstructions: quick necessary conditions that rule out any
//! extension of a vector to a full icube.
//!
//! ```bash
//! cargo run -p icubes --example obstructions
//! ```

use icubes::format::parse_vector;
use icubes::icube::necessary_conditions;
use icubes::Ring;

fn main() {
    let cases = [
        ("1,9", Ring::Int),
        ("3,0,0", Ring::Int),
        ("1,1,1", Ring::Int),
        ("1,1,1,1,1,4", Ring::Int),
        ("1,1,1,1,1", Ring::Gauss),
        ("1+i,1,1", Ring::Gauss),
    ];
    for (text, ring) in cases {
        let v = parse_vector(text).unwrap();
        let report = necessary_conditions(&v, ring);
        match report.reason {
            Some(r) => println!("({}) over {}: obstructed, {} ({})", text, ring, r, report.detail),
            None => println!("({}) over {}: no obstruction, norm {}", text, ring, report.lambda),
        }
    }
}
