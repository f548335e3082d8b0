//! Orthoregular bases for binary self-adjoint forms: a pair a1, a2 with
//! Gram matrix lambda times diag(1, eps), orthoregular when eps = 1.
//!
//! ```bash
//! cargo run -p icubes --example orthoregular_basis
//! ```

use icubes::hermitian::{build_orthoregular, HermForm2};
use icubes::ring::GaussInt;
use icubes::Ring;
use num_bigint::BigInt;

fn show(form: &str, q: &HermForm2, lambda: i64, delta_nu: GaussInt) {
    let lambda = BigInt::from(lambda);
    match build_orthoregular(q, &lambda, &delta_nu) {
        Ok(Some(basis)) => println!(
            "{} at lambda {}: a1 = ({}, {}), a2 = ({}, {}), eps = {}",
            form, lambda, basis.a1[0], basis.a1[1], basis.a2[0], basis.a2[1], basis.eps
        ),
        Ok(None) => println!("{} at lambda {}: no basis exists", form, lambda),
        Err(e) => println!("{} at lambda {}: {}", form, lambda, e),
    }
}

fn main() {
    // identity form: orthoregular pairs are pairs of orthogonal vectors
    let q = HermForm2::new(1, GaussInt::from_int(0), 1, Ring::Int).unwrap();
    show("[[1,0],[0,1]]", &q, 5, GaussInt::from_int(5));

    // disc 5: delta_nu = nu * sqrt(disc) with nu dividing lambda
    let q = HermForm2::new(2, GaussInt::from_int(1), 3, Ring::Int).unwrap();
    show("[[2,1],[1,3]]", &q, 10, GaussInt::from_int(10));

    // no basis of either kind exists for this form at lambda 21
    let q = HermForm2::new(21, GaussInt::from_int(4), 21, Ring::Int).unwrap();
    show("[[21,4],[4,21]]", &q, 21, GaussInt::from_int(0));
}
