//! Exhaustive oracles: every vector of a given norm orthogonal to a
//! partial icube, and every representation of a norm by a binary form.
//!
//! ```bash
//! cargo run -p icubes --example orthogonal_enumeration
//! ```

use icubes::explore::{enumerate_orthogonal, enumerate_representations, Budget};
use icubes::format::parse_vector;
use icubes::hermitian::HermForm2;
use icubes::icube::verify;
use icubes::lattice::Mat;
use icubes::ring::GaussInt;
use icubes::Ring;
use num_bigint::BigInt;

fn main() {
    let budget = Budget::default();

    let v = parse_vector("1,2,2").unwrap();
    let a0 = verify(&Mat::from_cols(vec![v]), Ring::Int).unwrap();
    let e = enumerate_orthogonal(&a0, &BigInt::from(9), &budget).unwrap();
    println!("norm-9 vectors orthogonal to (1,2,2): {}", e.vectors.len());
    for w in e.vectors.iter().take(4) {
        println!("  {:?}", w);
    }

    // (1,1,1) has norm 3, not a square: nothing is orthogonal at norm 3
    let v = parse_vector("1,1,1").unwrap();
    let a0 = verify(&Mat::from_cols(vec![v]), Ring::Int).unwrap();
    let e = enumerate_orthogonal(&a0, &BigInt::from(3), &budget).unwrap();
    println!("norm-3 vectors orthogonal to (1,1,1): {}", e.vectors.len());

    let q = HermForm2::new(2, GaussInt::from_int(1), 3, Ring::Int).unwrap();
    let reps = enumerate_representations(&q, &BigInt::from(10));
    println!("representations of 10 by [[2,1],[1,3]]: {}", reps.len());
    for [x, y] in &reps {
        println!("  ({}, {})", x, y);
    }
}
