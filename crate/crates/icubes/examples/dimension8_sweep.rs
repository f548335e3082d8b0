//! Sweep icubes in dimension 8 and try to extend each by one column via
//! the exhaustive oracle. Every instance extending supports the
//! conjecture that extension never gets stuck in dimension 8.
//!
//! ```bash
//! cargo run --release -p icubes --example dimension8_sweep
//! ```

use icubes::explore::{conjecture8_sweep, Budget};
use num_bigint::BigInt;

fn main() {
    let report = conjecture8_sweep(&BigInt::from(16), 10, 1729, &Budget::default());
    println!(
        "attempted {}, extended {}, budget exceeded {}",
        report.attempted, report.extended, report.budget_exceeded
    );
    for inst in report.instances.iter().take(6) {
        println!(
            "  rank {} norm {} ({}): {}",
            inst.rank, inst.lambda, inst.source, inst.note
        );
    }
    if report.counterexamples.is_empty() {
        println!("no counterexample found");
    } else {
        println!("COUNTEREXAMPLES: {:?}", report.counterexamples);
    }
}
