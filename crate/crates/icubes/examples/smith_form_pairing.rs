//! The Smith normal form of a square icube pairs its invariant factors:
//! conj(d_j) * d_(n+1-j) equals the norm for every j.
//!
//! ```bash
//! cargo run -p icubes --example smith_form_pairing
//! ```

use icubes::icube::{generate_random_icube, snf_pairing_check};
use icubes::lattice::snf;
use icubes::Ring;
use num_bigint::BigInt;

fn main() {
    for (ring, n, seed) in [
        (Ring::Int, 3, 7u64),
        (Ring::Gauss, 2, 1),
        (Ring::Gauss, 4, 5),
        (Ring::Int, 6, 2),
    ] {
        let ic = generate_random_icube(ring, n, seed, &BigInt::from(1000));
        let diag = snf(&ic.mat).diag;
        let (ok, _) = snf_pairing_check(&ic);
        println!(
            "{}^{} icube of norm {}: diag {:?}, pairing {}",
            ring,
            n,
            ic.lambda,
            diag,
            if ok { "holds" } else { "VIOLATED" }
        );
    }
}
