//! Build icubes whose Smith normal form is chosen in advance. In dimension
//! 3 any alpha2 with |alpha2|^2 = lambda can appear as the middle invariant
//! factor; in dimension 4 any divisor of d2 of the starting pair can.
//!
//! ```bash
//! cargo run -p icubes --example prescribed_smith_form
//! ```

use icubes::icube::{extend3_with_snf, extend4_with_snf, verify};
use icubes::lattice::{det_divisors, snf, Mat};
use icubes::ring::GaussInt;
use icubes::Ring;

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

fn main() {
    // norm 5 = |2+i|^2: the two non-associate choices give distinct forms
    let a1 = [g(2, 0), g(1, 0), g(0, 0)];
    for alpha2 in [g(2, 1), g(2, -1)] {
        let ic = extend3_with_snf(&a1, &alpha2, Ring::Gauss).unwrap();
        println!(
            "dim 3, alpha2 = {}: diag {:?}",
            alpha2,
            snf(&ic.mat).diag
        );
    }

    // split-support pair in Z[i]^4 of norm 25 with d2 = 3+4i = (2+i)^2
    let cols = vec![
        vec![g(3, 0), g(4, 0), g(0, 0), g(0, 0)],
        vec![g(0, 0), g(0, 0), g(3, 4), g(0, 0)],
    ];
    let a0 = verify(&Mat::from_cols(cols), Ring::Gauss).unwrap();
    let d2 = det_divisors(&a0.mat).pop().unwrap();
    println!("dim 4 pair of norm {}: d2 = {}", a0.lambda, d2);
    for alpha2 in [GaussInt::one(), g(2, 1), d2] {
        let ic = extend4_with_snf(&a0, &alpha2).unwrap();
        println!("  alpha2 = {}: diag {:?}", alpha2, snf(&ic.mat).diag);
    }
}
