//! Count Hecke returns: unitary matrices over Z[i] with prescribed Smith
//! form built from two split primes. The n=2 count is exact by brute
//! force; n=3 and n=4 are constructive lower bounds, every counted matrix
//! certified.
//!
//! ```bash
//! cargo run -p icubes --example hecke_returns
//! ```

use icubes::explore::{hecke_count, Budget};
use num_bigint::BigInt;

fn main() {
    let budget = Budget { max_candidates: 10, ..Budget::default() };
    for (p1, p2) in [(5, 13), (5, 17), (13, 17)] {
        for n in [2usize, 3, 4] {
            let r = hecke_count(n, &BigInt::from(p1), &BigInt::from(p2), &budget).unwrap();
            println!(
                "n={} primes ({},{}) |l1 l2|^2={}: count {}{}",
                n,
                p1,
                p2,
                r.product,
                r.count,
                if r.exact {
                    format!(" exact, coprime fraction {:.3}", r.coprime_fraction)
                } else {
                    " (lower bound)".into()
                }
            );
        }
    }
}
