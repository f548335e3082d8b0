//! The real quadratic order `Z[sqrt(-eps) j]`, i.e. elements `r + s*sqrt(eps) j`
//! with `r, s` rational integers and `j^2 = -1`, so `|r + s*sqrt(eps) j|^2 =
//! r^2 + eps s^2`. Used for divisor searches when `eps > 1`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

/// `r + s*sqrt(eps) j` with multiplication induced by `j r = conj(r) j` for
/// rational `r` (here coefficients are rational integers, so conjugation is
/// trivial and the product rule reduces to the norm form `r^2 + eps s^2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRingElem {
    pub r: BigInt,
    pub s: BigInt,
    pub eps: BigInt,
}

impl QuadRingElem {
    pub fn new(r: impl Into<BigInt>, s: impl Into<BigInt>, eps: impl Into<BigInt>) -> Self {
        let eps = eps.into();
        assert!(eps.is_positive());
        QuadRingElem { r: r.into(), s: s.into(), eps }
    }

    pub fn zero(eps: impl Into<BigInt>) -> Self {
        QuadRingElem::new(0, 0, eps)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadRingElem::new(self.r.clone(), -&self.s, self.eps.clone())
    }

    /// `r^2 + eps s^2`.
    pub fn norm(&self) -> BigInt {
        &self.r * &self.r + &self.eps * &self.s * &self.s
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.eps, other.eps);
        QuadRingElem::new(
            &self.r * &other.r - &self.eps * &self.s * &other.s,
            &self.r * &other.s + &self.s * &other.r,
            self.eps.clone(),
        )
    }

    /// Exact quotient `self / other`, if it lies in the order.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.eps, other.eps);
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        // self * conj(other) has norm-n denominators
        let num = self.mul(&other.conj());
        if (&num.r % &n).is_zero() && (&num.s % &n).is_zero() {
            Some(QuadRingElem::new(&num.r / &n, &num.s / &n, self.eps.clone()))
        } else {
            None
        }
    }
}

impl fmt::Display for QuadRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}*sqrt({})j", self.r, self.s, self.eps)
    }
}

/// All left divisors `u` of `t` in the order with `|u|^2 = m`, up to sign,
/// in ascending `(|r|, s-sign)` order. Because the order is commutative,
/// left and right divisors coincide.
pub fn quadring_left_divisors(t: &QuadRingElem, m: &BigInt) -> Vec<QuadRingElem> {
    assert!(m.is_positive());
    let mut out = Vec::new();
    let mut r = BigInt::zero();
    while &r * &r <= *m {
        let rest = m - &r * &r;
        if (&rest % &t.eps).is_zero() {
            let s2 = &rest / &t.eps;
            let s = s2.sqrt();
            if &s * &s == s2 {
                for (rr, ss) in [
                    (r.clone(), s.clone()),
                    (r.clone(), -&s),
                    (-&r, s.clone()),
                    (-&r, -&s),
                ] {
                    let u = QuadRingElem::new(rr, ss, t.eps.clone());
                    if u.norm() == *m && t.div_exact(&u).is_some() && !out.contains(&u) {
                        out.push(u);
                    }
                }
            }
        }
        r += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_sqrt17_elem() {
        let x = QuadRingElem::new(2, 1, 17);
        assert_eq!(x.norm(), BigInt::from(21));
    }

    #[test]
    fn mul_and_div_round_trip() {
        let a = QuadRingElem::new(3, 2, 17);
        let b = QuadRingElem::new(-1, 4, 17);
        let p = a.mul(&b);
        assert_eq!(p.norm(), a.norm() * b.norm());
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
    }

    #[test]
    fn no_norm21_divisor_of_4_plus_5root17j() {
        // |4 + 5 sqrt(17) j|^2 = 441 = 21^2 but no divisor of norm 21 exists
        for t in [QuadRingElem::new(4, 5, 17), QuadRingElem::new(4, -5, 17)] {
            assert_eq!(t.norm(), BigInt::from(441));
            assert!(quadring_left_divisors(&t, &BigInt::from(21)).is_empty());
        }
    }

    #[test]
    fn divisors_found_when_present() {
        let u = QuadRingElem::new(2, 1, 17);
        let v = QuadRingElem::new(1, 1, 17);
        let t = u.mul(&v);
        let divs = quadring_left_divisors(&t, &u.norm());
        assert!(divs.contains(&u));
        for d in &divs {
            assert_eq!(d.norm(), u.norm());
            assert!(t.div_exact(d).is_some());
        }
    }
}
