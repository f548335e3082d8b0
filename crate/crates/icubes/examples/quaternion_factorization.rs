//! Factor Lipschitz quaternions by norm: four-squares witnesses, left
//! divisors of prescribed norm, and full factor chains.
//!
//! ```bash
//! cargo run -p icubes --example quaternion_factorization
//! ```

use icubes::quat::{factor_chain, four_squares, lipschitz_left_divisor, quat_mul, Quat};
use num_bigint::BigInt;

fn main() {
    for n in [7i64, 30, 1999] {
        let q = four_squares(&BigInt::from(n));
        println!("{} = |{}|^2", n, q);
    }

    let t: Quat = "1+2i-3j+k".parse().unwrap();
    println!("t = {}, norm {}", t, t.norm());
    for m in [3i64, 5, 15] {
        let (u, v) = lipschitz_left_divisor(&t, &BigInt::from(m)).unwrap();
        assert_eq!(quat_mul(&u, &v), t);
        println!("  norm-{} left divisor: ({}) ({})", m, u, v);
    }

    let chain = factor_chain(&t, &[BigInt::from(3), BigInt::from(5)]).unwrap();
    let pretty: Vec<String> = chain.iter().map(|q| format!("({})", q)).collect();
    println!("chain with norms 3,5: {}", pretty.join(" "));
}
