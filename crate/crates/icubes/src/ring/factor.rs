//! Factorization in `Z` and `Z[i]`, sum-of-squares representations, and the
//! norm-quotient rebalancing used by the divisor constructions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gauss::GaussInt;
use super::RingError;
use crate::Ring;

/// Factorization of a rational integer `n > 0` by trial division,
/// as `(prime, exponent)` pairs in ascending prime order.
pub fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive(), "factor_int needs a positive integer");
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    let f = factor_int(n);
    f.len() == 1 && f[0].1 == 1
}

/// Residue of `n` modulo 4, for positive `n`.
fn mod4(p: &BigInt) -> u8 {
    (p % 4u8).to_u8().unwrap()
}

/// A square root of `-1` modulo a prime `p = 1 (mod 4)`.
fn sqrt_minus_one(p: &BigInt) -> BigInt {
    let exp = (p - 1) / 4;
    let mut c = BigInt::from(2);
    loop {
        // c is a nonresidue iff c^((p-1)/2) = -1
        let t = c.modpow(&((p - 1) / 2), p);
        if t == p - 1 {
            return c.modpow(&exp, p);
        }
        c += 1;
    }
}

/// The normalized Gaussian prime above a split rational prime `p = 1 (mod 4)`.
pub fn gaussian_prime_above(p: &BigInt) -> GaussInt {
    let x = sqrt_minus_one(p);
    let pi = super::gauss::gauss_gcd(&GaussInt::from_int(p.clone()), &GaussInt::new(x, BigInt::one()));
    debug_assert_eq!(pi.norm(), *p);
    pi
}

/// Unit times a product of normalized Gaussian prime powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussFactorization {
    pub unit: GaussInt,
    pub factors: Vec<(GaussInt, u32)>,
}

impl GaussFactorization {
    pub fn product(&self) -> GaussInt {
        let mut acc = self.unit.clone();
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }
}

/// Factor a nonzero Gaussian integer into normalized primes,
/// ordered by `(norm, re, im)`.
pub fn gauss_factor(z: &GaussInt) -> Result<GaussFactorization, RingError> {
    if z.is_zero() {
        return Err(RingError::ZeroInput);
    }
    let mut rest = z.clone();
    let mut factors: Vec<(GaussInt, u32)> = Vec::new();
    for (p, e) in factor_int(&z.norm()) {
        match mod4(&p) {
            2 => {
                let pi = GaussInt::new(1, 1);
                factors.push((pi.clone(), e));
                for _ in 0..e {
                    rest = rest.div_exact(&pi).expect("ramified exponent");
                }
            }
            3 => {
                debug_assert!(e % 2 == 0);
                let pi = GaussInt::from_int(p);
                factors.push((pi.clone(), e / 2));
                for _ in 0..e / 2 {
                    rest = rest.div_exact(&pi).expect("inert exponent");
                }
            }
            1 => {
                let pi = gaussian_prime_above(&p);
                let mut epi = 0u32;
                while let Some(next) = rest.div_exact(&pi) {
                    rest = next;
                    epi += 1;
                }
                if epi > 0 {
                    factors.push((pi.clone(), epi));
                }
                if epi < e {
                    let bar = pi.conj().normalized();
                    for _ in 0..e - epi {
                        rest = rest.div_exact(&bar).expect("conjugate exponent");
                    }
                    factors.push((bar, e - epi));
                }
            }
            _ => unreachable!(),
        }
    }
    assert!(rest.is_unit(), "non-unit residue after factoring");
    factors.sort_by(|(a, _), (b, _)| (a.norm(), &a.re, &a.im).cmp(&(b.norm(), &b.re, &b.im)));
    Ok(GaussFactorization { unit: rest, factors })
}

/// A canonical `y` with `|y|^2 = n`, when `n` is a sum of two squares.
/// The representative satisfies `re >= im >= 0`.
pub fn two_squares(n: &BigInt) -> Option<GaussInt> {
    assert!(!n.is_negative());
    if n.is_zero() {
        return Some(GaussInt::zero());
    }
    let mut y = GaussInt::one();
    for (p, e) in factor_int(n) {
        match mod4(&p) {
            2 => y = &y * &GaussInt::new(1, 1).pow(e),
            3 => {
                if e % 2 == 1 {
                    return None;
                }
                y = &y * &GaussInt::from_int(p).pow(e / 2);
            }
            1 => y = &y * &gaussian_prime_above(&p).pow(e),
            _ => unreachable!(),
        }
    }
    // canonical octant representative among associates and conjugates
    let mut best: Option<GaussInt> = None;
    for cand in [y.clone(), y.conj()] {
        for u in GaussInt::units() {
            let c = &u * &cand;
            if !c.re.is_negative() && !c.im.is_negative() && c.re >= c.im {
                best = Some(c);
            }
        }
    }
    let best = best.expect("octant representative");
    debug_assert_eq!(best.norm(), *n);
    Some(best)
}

/// Whether `n >= 0` is a sum of `k` squares, for `k` in `{1, 2, 4}`.
pub fn is_sum_k_squares(n: &BigInt, k: u32) -> Result<bool, RingError> {
    if n.is_negative() {
        return Ok(false);
    }
    match k {
        1 => {
            let r = n.sqrt();
            Ok(&r * &r == *n)
        }
        2 => {
            if n.is_zero() {
                return Ok(true);
            }
            Ok(factor_int(n)
                .iter()
                .all(|(p, e)| mod4(p) != 3 || e % 2 == 0))
        }
        4 => Ok(true),
        other => Err(RingError::InvalidK(other)),
    }
}

/// Rebalance `y` at split primes so that the result divides `t`,
/// keeping the norm. Requires `|y|^2` to divide `|t|^2`.
fn rebalance_into_divisor(y: &GaussInt, t: &GaussInt) -> GaussInt {
    let fac = gauss_factor(y).expect("nonzero y");
    let mut out = GaussInt::one();
    for (pi, e) in &fac.factors {
        let bar = pi.conj().normalized();
        if bar == *pi {
            // ramified or inert: divisibility is forced by the norms
            out = &out * &pi.pow(*e);
            continue;
        }
        // handle each split conjugate pair once, at its first occurrence
        let e_bar = fac
            .factors
            .iter()
            .find(|(q, _)| *q == bar)
            .map(|(_, e)| *e)
            .unwrap_or(0);
        if e_bar > 0 && bar < *pi {
            continue;
        }
        let total = e + e_bar;
        let f = t.valuation(pi);
        let take = total.min(f);
        out = &out * &pi.pow(take) * &bar.pow(total - take);
    }
    debug_assert_eq!(out.norm(), y.norm());
    debug_assert!(out.divides(t), "rebalanced element must divide t");
    out
}

/// Witness for the norm quotient: a `gamma` with
/// `|gamma|^2 = |beta|^2 / |alpha|^2` and `beta = alpha_1 * gamma` for some
/// divisor `alpha_1` of `beta` of the same norm as `alpha`.
pub fn quotient_norm_witness(alpha: &GaussInt, beta: &GaussInt) -> Result<GaussInt, RingError> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(RingError::ZeroInput);
    }
    let (na, nb) = (alpha.norm(), beta.norm());
    if !(&nb % &na).is_zero() {
        return Err(RingError::DivisibilityViolation { num: nb, den: na });
    }
    let alpha1 = rebalance_into_divisor(alpha, beta);
    Ok(beta.div_exact(&alpha1).expect("alpha_1 divides beta"))
}

/// A divisor `u` of `t` with `|u|^2 = m`, together with `t / u`,
/// when `m` is a sum of two squares. Requires `m` to divide `|t|^2`.
pub fn gauss_norm_divisor(m: &BigInt, t: &GaussInt) -> Option<(GaussInt, GaussInt)> {
    assert!(!t.is_zero());
    assert!((t.norm() % m).is_zero(), "m must divide |t|^2");
    let y = two_squares(m)?;
    if y.is_zero() {
        return None;
    }
    let u = rebalance_into_divisor(&y, t);
    let v = t.div_exact(&u).expect("u divides t");
    Some((u, v))
}

/// Split a positive rational `mu` as `Delta * eps` with `Delta` an absolute
/// square in the fraction field of the ring and `eps` a positive integer with
/// no absolute-square divisor except 1.
pub fn eps_delta_split(mu: &BigRational, ring: Ring) -> (BigRational, BigInt) {
    assert!(mu.is_positive(), "mu must be positive");
    let numer = mu.numer().clone();
    let denom = mu.denom().clone();
    let mut eps = BigInt::one();
    let squarefree_primes = factor_int(&(&numer * &denom));
    for (p, e) in squarefree_primes {
        let keep = match ring {
            Ring::Int => e % 2 == 1,
            Ring::Gauss => e % 2 == 1 && mod4(&p) == 3,
        };
        if keep {
            eps *= p;
        }
    }
    let delta = mu / BigRational::from(eps.clone());
    (delta, eps)
}

/// `eps_delta_split` for an integral `mu`.
pub fn eps_delta_split_int(mu: &BigInt, ring: Ring) -> (BigRational, BigInt) {
    eps_delta_split(&BigRational::from(mu.clone()), ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn factor_two_is_ramified() {
        let f = gauss_factor(&g(2, 0)).unwrap();
        assert_eq!(f.unit, g(0, -1));
        assert_eq!(f.factors, vec![(g(1, 1), 2)]);
        assert_eq!(f.product(), g(2, 0));
    }

    #[test]
    fn factor_five_splits() {
        let f = gauss_factor(&g(5, 0)).unwrap();
        assert_eq!(f.factors.len(), 2);
        let prod = &f.factors[0].0 * &f.factors[1].0;
        assert_eq!(prod.norm(), BigInt::from(25));
        assert_eq!(f.product(), g(5, 0));
    }

    #[test]
    fn factor_nine_is_inert_square() {
        let f = gauss_factor(&g(9, 0)).unwrap();
        assert_eq!(f.factors, vec![(g(3, 0), 2)]);
    }

    #[test]
    fn factor_rejects_zero() {
        assert_eq!(gauss_factor(&GaussInt::zero()), Err(RingError::ZeroInput));
    }

    #[test]
    fn factor_round_trip_small_disc() {
        for re in -20i64..=20 {
            for im in -20i64..=20 {
                let z = g(re, im);
                if z.is_zero() {
                    continue;
                }
                let f = gauss_factor(&z).unwrap();
                assert_eq!(f.product(), z, "recompose {}", z);
                for (p, _) in &f.factors {
                    assert!(p.is_normalized());
                }
            }
        }
    }

    #[test]
    fn two_squares_examples() {
        assert_eq!(two_squares(&BigInt::zero()), Some(GaussInt::zero()));
        assert_eq!(two_squares(&BigInt::one()), Some(g(1, 0)));
        let y = two_squares(&BigInt::from(425)).unwrap();
        assert_eq!(y.norm(), BigInt::from(425));
        assert!(y.re >= y.im && !y.im.is_negative());
        assert_eq!(two_squares(&BigInt::from(21)), None);
    }

    #[test]
    fn two_squares_agrees_with_scan() {
        for n in 0i64..=500 {
            let mut found = false;
            let mut a = 0i64;
            while a * a <= n {
                let rest = n - a * a;
                let b = (rest as f64).sqrt() as i64;
                for bb in [b - 1, b, b + 1] {
                    if bb >= 0 && bb * bb == rest {
                        found = true;
                    }
                }
                a += 1;
            }
            let got = two_squares(&BigInt::from(n));
            assert_eq!(got.is_some(), found, "n = {}", n);
            if let Some(y) = got {
                assert_eq!(y.norm(), BigInt::from(n));
            }
        }
    }

    #[test]
    fn sum_k_squares_classes() {
        assert!(is_sum_k_squares(&BigInt::from(9), 1).unwrap());
        assert!(!is_sum_k_squares(&BigInt::from(8), 1).unwrap());
        assert!(!is_sum_k_squares(&BigInt::from(21), 2).unwrap());
        assert!(is_sum_k_squares(&BigInt::from(7), 4).unwrap());
        assert!(matches!(is_sum_k_squares(&BigInt::from(7), 3), Err(RingError::InvalidK(3))));
    }

    #[test]
    fn witness_basic() {
        let gamma = quotient_norm_witness(&g(1, 0), &g(3, 4)).unwrap();
        assert_eq!(gamma.norm(), BigInt::from(25));

        // norm 5 into norm 25: witness norm 5 and exact division
        let alpha = g(2, 1);
        let beta = g(2, -1).pow(2); // norm 25, only conjugate primes
        let gamma = quotient_norm_witness(&alpha, &beta).unwrap();
        assert_eq!(gamma.norm(), BigInt::from(5));
        let alpha1 = beta.div_exact(&gamma).unwrap();
        assert_eq!(alpha1.norm(), alpha.norm());
    }

    #[test]
    fn witness_inert_prime() {
        let gamma = quotient_norm_witness(&g(3, 0), &g(3, 3)).unwrap();
        assert_eq!(gamma.norm(), BigInt::from(2));
    }

    #[test]
    fn witness_rejects_bad_norms() {
        assert!(matches!(
            quotient_norm_witness(&g(3, 0), &g(5, 0)),
            Err(RingError::DivisibilityViolation { .. })
        ));
    }

    #[test]
    fn split_examples() {
        let (d, e) = eps_delta_split_int(&BigInt::from(425), Ring::Int);
        assert_eq!(d, BigRational::from(BigInt::from(25)));
        assert_eq!(e, BigInt::from(17));

        let (d, e) = eps_delta_split_int(&BigInt::from(9), Ring::Int);
        assert_eq!(d, BigRational::from(BigInt::from(9)));
        assert_eq!(e, BigInt::one());

        let (d, e) = eps_delta_split_int(&BigInt::from(21), Ring::Gauss);
        assert_eq!(d, BigRational::from(BigInt::one()));
        assert_eq!(e, BigInt::from(21));

        // over Z[i] a split prime is absorbed into Delta
        let (d, e) = eps_delta_split_int(&BigInt::from(5), Ring::Gauss);
        assert_eq!(d, BigRational::from(BigInt::from(5)));
        assert_eq!(e, BigInt::one());
    }
}
