//! Extend single vectors to full icubes in dimensions 3, 4 and 6.
//!
//! ```bash
//! cargo run -p icubes --example extend_vector
//! ```

use icubes::format::{matrix_to_text, parse_vector};
use icubes::icube::{extend3, extend4, extend6_real, verify};
use icubes::lattice::Mat;
use icubes::Ring;

fn show(label: &str, result: Result<icubes::icube::IcubeMatrix, icubes::icube::IcubeError>) {
    match result {
        Ok(ic) => println!(
            "{}: norm {} over {}\n  {}",
            label,
            ic.lambda,
            ic.ring,
            matrix_to_text(&ic.mat)
        ),
        Err(e) => println!("{}: {}", label, e),
    }
}

fn main() {
    let v = parse_vector("1,2,2").unwrap();
    let a0 = verify(&Mat::from_cols(vec![v]), Ring::Int).unwrap();
    show("(1,2,2) in Z^3", extend3(&a0));

    let v = parse_vector("1+i,1,1").unwrap();
    let a0 = verify(&Mat::from_cols(vec![v]), Ring::Gauss).unwrap();
    show("(1+i,1,1) in Z[i]^3", extend3(&a0));

    // norm 3 is not a square, so no extension exists in Z^3
    let v = parse_vector("1,1,1").unwrap();
    let a0 = verify(&Mat::from_cols(vec![v]), Ring::Int).unwrap();
    show("(1,1,1) in Z^3", extend3(&a0));

    let v = parse_vector("1+2i,i,0,3").unwrap();
    let a0 = verify(&Mat::from_cols(vec![v]), Ring::Gauss).unwrap();
    show("(1+2i,i,0,3) in Z[i]^4", extend4(&a0));

    // dimension 6 over Z works whenever the norm is a sum of two squares
    let v = parse_vector("2,3,0,0,0,0").unwrap();
    show("(2,3,0,0,0,0) in Z^6", extend6_real(&v));
}
