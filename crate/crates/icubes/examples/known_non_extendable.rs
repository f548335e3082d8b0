//! Re-verify the known non-extendable examples: an explicit 10x10 icube of
//! norm 9, two icubes in Z^18 and Z^36 that cannot grow by one column, and
//! a pair in Z^10 blocked by a parity contradiction.
//!
//! ```bash
//! cargo run -p icubes --example known_non_extendable
//! ```

use icubes::explore::{verify_paper_counterexamples, Budget};

fn main() {
    for fixture in verify_paper_counterexamples(&Budget::default()) {
        println!(
            "{} {}: {}",
            if fixture.passed { "PASS" } else { "FAIL" },
            fixture.name,
            fixture.detail
        );
    }
}
