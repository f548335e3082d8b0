//! Gaussian integers with arbitrary-precision coordinates.
//!
//! Rational integers are modelled as Gaussian integers with zero imaginary
//! part, so the same type serves both `Z` and `Z[i]` throughout the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Gaussian integer `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn from_int(re: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: BigInt::zero() }
    }

    pub fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn i() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    /// `re^2 + im^2`, always nonnegative.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// The four units 1, i, -1, -i.
    pub fn units() -> [GaussInt; 4] {
        [
            GaussInt::one(),
            GaussInt::i(),
            -GaussInt::one(),
            -GaussInt::i(),
        ]
    }

    /// The unit `u` such that `u * self` is in canonical position
    /// (`Re > 0`, `Im >= 0`; zero maps to zero with `u = 1`).
    pub fn normalizing_unit(&self) -> GaussInt {
        if self.is_zero() {
            return GaussInt::one();
        }
        for u in GaussInt::units() {
            let c = &u * self;
            if c.re.is_positive() && !c.im.is_negative() {
                return u;
            }
        }
        unreachable!("one of the four associates is canonical")
    }

    /// Canonical associate with `Re > 0`, `Im >= 0` (zero stays zero).
    pub fn normalized(&self) -> GaussInt {
        &self.normalizing_unit() * self
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.re.is_positive() && !self.im.is_negative())
    }

    /// Centered euclidean division: `self = q*d + r` with `|r|^2 <= |d|^2 / 2`.
    pub fn div_rem_centered(&self, d: &GaussInt) -> (GaussInt, GaussInt) {
        assert!(!d.is_zero(), "division by zero");
        let n = self * &d.conj();
        let dn = d.norm();
        let q = GaussInt {
            re: round_div(&n.re, &dn),
            im: round_div(&n.im, &dn),
        };
        let r = self - &(&q * d);
        (q, r)
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        assert!(!d.is_zero(), "division by zero");
        let n = self * &d.conj();
        let dn = d.norm();
        if (&n.re % &dn).is_zero() && (&n.im % &dn).is_zero() {
            Some(GaussInt { re: &n.re / &dn, im: &n.im / &dn })
        } else {
            None
        }
    }

    pub fn divides(&self, other: &GaussInt) -> bool {
        !self.is_zero() && other.div_exact(self).is_some()
    }

    /// `pi`-adic valuation of `self` (`self != 0`, `pi` a non-unit).
    pub fn valuation(&self, pi: &GaussInt) -> u32 {
        assert!(!self.is_zero());
        let mut v = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.div_exact(pi) {
            cur = next;
            v += 1;
        }
        v
    }

    pub fn pow(&self, e: u32) -> GaussInt {
        let mut acc = GaussInt::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Nearest-integer division with ties rounded down.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    let two_num = num * 2 + den;
    let two_den = den * 2;
    num_integer::Integer::div_floor(&two_num, &two_den)
}

/// Unit-normalized gcd generating the ideal `(a, b)`; `gcd(0, 0) = 0`.
pub fn gauss_gcd(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem_centered(&b);
        a = b;
        b = r;
    }
    a.normalized()
}

/// Extended gcd: `(g, s, t)` with `s*a + t*b = g` and `g = gauss_gcd(a, b)`.
pub fn gauss_ext_gcd(a: &GaussInt, b: &GaussInt) -> (GaussInt, GaussInt, GaussInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (GaussInt::one(), GaussInt::zero());
    let (mut t0, mut t1) = (GaussInt::zero(), GaussInt::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem_centered(&r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    // scale to the normalized generator
    let u = r0.normalizing_unit();
    (&u * &r0, &u * &s0, &u * &t0)
}

impl<'a, 'b> Add<&'b GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &'b GaussInt) -> GaussInt {
        GaussInt { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a, 'b> Sub<&'b GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: &'b GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a, 'b> Mul<&'b GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &'b GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -self.re, im: -self.im }
    }
}

impl<'a> Neg for &'a GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident, $assign:ident, $assign_method:ident) => {
        impl $trait for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: GaussInt) -> GaussInt {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: &'a GaussInt) -> GaussInt {
                (&self).$method(rhs)
            }
        }
        impl $assign for GaussInt {
            fn $assign_method(&mut self, rhs: GaussInt) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl From<i64> for GaussInt {
    fn from(v: i64) -> Self {
        GaussInt::from_int(v)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_abs = self.im.abs();
        let im_part = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}i", im_abs)
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", im_part)
            } else {
                write!(f, "{}", im_part)
            }
        } else if self.im.is_negative() {
            write!(f, "{}-{}", self.re, im_part)
        } else {
            write!(f, "{}+{}", self.re, im_part)
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse error for the `a+bi` text form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Gaussian integer literal: {0:?}")]
pub struct ParseGaussError(pub String);

impl FromStr for GaussInt {
    type Err = ParseGaussError;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i` standing alone for `1i`,
    /// and optional whitespace around the sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseGaussError(s.to_string()));
        }
        let err = || ParseGaussError(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, ParseGaussError> {
            t.parse::<BigInt>().map_err(|_| err())
        };
        let parse_im = |t: &str| -> Result<BigInt, ParseGaussError> {
            match t {
                "" | "+" => Ok(BigInt::one()),
                "-" => Ok(-BigInt::one()),
                _ => parse_int(t),
            }
        };
        if let Some(body) = compact.strip_suffix('i') {
            // Split off a trailing imaginary term if the body contains an
            // interior sign; otherwise the whole literal is imaginary.
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(idx, c)| {
                    (c == '+' || c == '-')
                        && !matches!(body.as_bytes().get(idx - 1), Some(b'+') | Some(b'-'))
                })
                .map(|(idx, _)| idx)
                .last();
            match split {
                Some(idx) => {
                    let re = parse_int(&body[..idx])?;
                    let im = parse_im(&body[idx..])?;
                    Ok(GaussInt { re, im })
                }
                None => Ok(GaussInt { re: BigInt::zero(), im: parse_im(body)? }),
            }
        } else {
            Ok(GaussInt { re: parse_int(&compact)?, im: BigInt::zero() })
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GaussRecord {
    re: String,
    im: String,
}

impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GaussRecord { re: self.re.to_string(), im: self.im.to_string() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = GaussRecord::deserialize(deserializer)?;
        let re = rec.re.parse::<BigInt>().map_err(D::Error::custom)?;
        let im = rec.im.parse::<BigInt>().map_err(D::Error::custom)?;
        Ok(GaussInt { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn norm_and_conj() {
        let z = g(3, -4);
        assert_eq!(z.norm(), BigInt::from(25));
        assert_eq!(&z * &z.conj(), GaussInt::from_int(25));
    }

    #[test]
    fn centered_division_remainder_small() {
        let a = g(7, 3);
        let d = g(2, -1);
        let (q, r) = a.div_rem_centered(&d);
        assert_eq!(&q * &d + &r, a);
        assert!(r.norm() * 2 <= d.norm() * 2 - 1 || r.norm() * 2 <= d.norm());
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        assert_eq!(gauss_gcd(&GaussInt::zero(), &g(3, 0)), g(3, 0));
        assert_eq!(gauss_gcd(&g(0, -3), &GaussInt::zero()), g(3, 0));
        assert!(gauss_gcd(&GaussInt::zero(), &GaussInt::zero()).is_zero());
    }

    #[test]
    fn gcd_spec_examples() {
        // 2 = -i (1+i)^2, so (1+i, 2) generate (1+i)
        assert_eq!(gauss_gcd(&g(1, 1), &g(2, 0)), g(1, 1));
        // 5 = (2+i)(2-i) and 3+4i = i(2-i)^2, wait: (2+i)^2 = 3+4i
        assert_eq!(gauss_gcd(&g(5, 0), &g(3, 4)), g(2, 1));
    }

    #[test]
    fn normalization_quadrant() {
        for z in [g(0, 5), g(-5, 0), g(0, -5), g(-3, 4), g(3, -4)] {
            let n = z.normalized();
            assert!(n.re.is_positive() && !n.im.is_negative());
            assert_eq!(n.norm(), z.norm());
        }
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "3", "-7", "i", "-i", "2i", "3+4i", "3-4i", "-3+i", "1 + 2i"] {
            let z: GaussInt = s.parse().unwrap();
            let back: GaussInt = z.to_string().parse().unwrap();
            assert_eq!(z, back, "round trip through {:?}", s);
        }
        assert_eq!("i".parse::<GaussInt>().unwrap(), g(0, 1));
        assert_eq!("1+i".parse::<GaussInt>().unwrap(), g(1, 1));
        assert!("".parse::<GaussInt>().is_err());
        assert!("3+".parse::<GaussInt>().is_err());
    }

    #[test]
    fn json_record_form() {
        let z = g(-2, 7);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"-2","im":"7"}"#);
        let back: GaussInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }
}
