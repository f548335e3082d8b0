//! Lipschitz and Hurwitz quaternion arithmetic, right-ideal gcds, and the
//! constructive left-divisor factorization: given `t` and `m | norm(t)`,
//! produce `u, v` with `t = u v` and `norm(u) = m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::ring::{factor_int, two_squares, GaussInt};

/// Errors from quaternion computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuatError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("gcd of two zero quaternions is undefined")]
    BothZero,
    #[error("{m} does not divide norm {norm}")]
    NonDivisor { m: BigInt, norm: BigInt },
    #[error("norm list product {got} does not match norm {norm}")]
    NormMismatch { got: BigInt, norm: BigInt },
}

/// A Lipschitz quaternion `a + bi + cj + dk` with integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quat {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Quat {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Quat { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn zero() -> Self {
        Quat::new(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Quat::new(1, 0, 0, 0)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Quat { a: n.into(), ..Quat::zero() }
    }

    /// `r + s j` for Gaussian `r, s`; note `s j = j conj(s)`.
    pub fn from_gauss_pair(r: &GaussInt, s: &GaussInt) -> Self {
        Quat { a: r.re.clone(), b: r.im.clone(), c: s.re.clone(), d: s.im.clone() }
    }

    /// The `(r, s)` with `self = r + s j`.
    pub fn gauss_pair(&self) -> (GaussInt, GaussInt) {
        (
            GaussInt { re: self.a.clone(), im: self.b.clone() },
            GaussInt { re: self.c.clone(), im: self.d.clone() },
        )
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quat { a: self.a.clone(), b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn coords(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Exact quotient by a rational integer, if all coordinates divide.
    pub fn div_int_exact(&self, n: &BigInt) -> Option<Self> {
        let d = |x: &BigInt| -> Option<BigInt> {
            let (q, r) = x.div_rem(n);
            r.is_zero().then_some(q)
        };
        Some(Quat { a: d(&self.a)?, b: d(&self.b)?, c: d(&self.c)?, d: d(&self.d)? })
    }
}

/// Hamilton product with `i^2 = j^2 = k^2 = -1`, `ij = k`.
pub fn quat_mul(x: &Quat, y: &Quat) -> Quat {
    Quat {
        a: &x.a * &y.a - &x.b * &y.b - &x.c * &y.c - &x.d * &y.d,
        b: &x.a * &y.b + &x.b * &y.a + &x.c * &y.d - &x.d * &y.c,
        c: &x.a * &y.c - &x.b * &y.d + &x.c * &y.a + &x.d * &y.b,
        d: &x.a * &y.d + &x.b * &y.c - &x.c * &y.b + &x.d * &y.a,
    }
}

pub fn quat_conj(x: &Quat) -> Quat {
    x.conj()
}

pub fn quat_norm(x: &Quat) -> BigInt {
    x.norm()
}

impl std::ops::Mul for &Quat {
    type Output = Quat;
    fn mul(self, rhs: &Quat) -> Quat {
        quat_mul(self, rhs)
    }
}

impl std::ops::Add for &Quat {
    type Output = Quat;
    fn add(self, rhs: &Quat) -> Quat {
        Quat {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            c: &self.c + &rhs.c,
            d: &self.d + &rhs.d,
        }
    }
}

impl std::ops::Sub for &Quat {
    type Output = Quat;
    fn sub(self, rhs: &Quat) -> Quat {
        Quat {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            d: &self.d - &rhs.d,
        }
    }
}

impl std::ops::Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.a, self.b, self.c, self.d)
    }
}

/// Parse error for quaternion literals.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid quaternion literal {0:?}")]
pub struct ParseQuatError(pub String);

impl FromStr for Quat {
    type Err = ParseQuatError;

    /// Accepts sums of terms `n`, `ni`, `nj`, `nk` with optional signs,
    /// e.g. `1+2i-3j+k` or `7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseQuatError(s.to_string()));
        }
        let mut q = Quat::zero();
        let mut seen = [false; 4];
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut idx = 1;
        let mut terms = Vec::new();
        while idx <= bytes.len() {
            if idx == bytes.len() || (bytes[idx] == b'+' || bytes[idx] == b'-') {
                terms.push(&compact[start..idx]);
                start = idx;
            }
            idx += 1;
        }
        for term in terms {
            let (slot, body) = match term.as_bytes().last() {
                Some(b'i') => (1, &term[..term.len() - 1]),
                Some(b'j') => (2, &term[..term.len() - 1]),
                Some(b'k') => (3, &term[..term.len() - 1]),
                Some(_) => (0, term),
                None => return Err(ParseQuatError(s.to_string())),
            };
            let val = match body {
                "" | "+" => BigInt::one(),
                "-" => -BigInt::one(),
                _ => body.parse::<BigInt>().map_err(|_| ParseQuatError(s.to_string()))?,
            };
            if seen[slot] {
                return Err(ParseQuatError(s.to_string()));
            }
            seen[slot] = true;
            match slot {
                0 => q.a = val,
                1 => q.b = val,
                2 => q.c = val,
                _ => q.d = val,
            }
        }
        Ok(q)
    }
}

#[derive(Serialize, Deserialize)]
struct QuatRecord {
    a: String,
    b: String,
    c: String,
    d: String,
}

impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuatRecord {
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
            d: self.d.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = QuatRecord::deserialize(deserializer)?;
        let p = |t: &str| t.parse::<BigInt>().map_err(D::Error::custom);
        Ok(Quat { a: p(&rec.a)?, b: p(&rec.b)?, c: p(&rec.c)?, d: p(&rec.d)? })
    }
}

/// A Hurwitz quaternion stored in doubled coordinates `(2a, 2b, 2c, 2d)`.
/// All four are even (Lipschitz) or all four odd (half-integer coset).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HurwitzQuat {
    pub t: [BigInt; 4],
}

impl HurwitzQuat {
    pub fn from_doubled(t: [BigInt; 4]) -> Self {
        let par = |x: &BigInt| x.is_odd();
        let odd = par(&t[0]);
        assert!(
            t.iter().all(|x| par(x) == odd),
            "doubled coordinates must share parity"
        );
        HurwitzQuat { t }
    }

    pub fn from_quat(q: &Quat) -> Self {
        HurwitzQuat {
            t: [
                &q.a * 2,
                &q.b * 2,
                &q.c * 2,
                &q.d * 2,
            ],
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        HurwitzQuat::from_quat(&Quat::from_int(n))
    }

    pub fn zero() -> Self {
        HurwitzQuat::from_int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(|x| x.is_zero())
    }

    pub fn is_lipschitz(&self) -> bool {
        self.t[0].is_even()
    }

    pub fn to_quat(&self) -> Option<Quat> {
        if !self.is_lipschitz() {
            return None;
        }
        Some(Quat {
            a: &self.t[0] / 2,
            b: &self.t[1] / 2,
            c: &self.t[2] / 2,
            d: &self.t[3] / 2,
        })
    }

    pub fn conj(&self) -> Self {
        HurwitzQuat {
            t: [self.t[0].clone(), -&self.t[1], -&self.t[2], -&self.t[3]],
        }
    }

    /// `a^2 + b^2 + c^2 + d^2`, always an integer on the Hurwitz order.
    pub fn norm(&self) -> BigInt {
        let q: BigInt = self.t.iter().map(|x| x * x).sum();
        debug_assert!((&q % BigInt::from(4)).is_zero());
        q / 4
    }

    /// Product; doubled coordinates of the product are half the integer
    /// quaternion product of the doubled coordinates.
    pub fn mul(&self, rhs: &Self) -> Self {
        let x = Quat::new(
            self.t[0].clone(),
            self.t[1].clone(),
            self.t[2].clone(),
            self.t[3].clone(),
        );
        let y = Quat::new(
            rhs.t[0].clone(),
            rhs.t[1].clone(),
            rhs.t[2].clone(),
            rhs.t[3].clone(),
        );
        let p = quat_mul(&x, &y);
        let halve = |v: BigInt| {
            debug_assert!(v.is_even());
            v / 2
        };
        HurwitzQuat::from_doubled([halve(p.a), halve(p.b), halve(p.c), halve(p.d)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        HurwitzQuat::from_doubled([
            &self.t[0] - &rhs.t[0],
            &self.t[1] - &rhs.t[1],
            &self.t[2] - &rhs.t[2],
            &self.t[3] - &rhs.t[3],
        ])
    }

    /// The 24 units: `±1, ±i, ±j, ±k` and `(±1±i±j±k)/2`.
    pub fn units() -> Vec<HurwitzQuat> {
        let mut out = Vec::with_capacity(24);
        for slot in 0..4 {
            for sign in [2i8, -2] {
                let mut t = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
                t[slot] = BigInt::from(sign);
                out.push(HurwitzQuat::from_doubled(t));
            }
        }
        for mask in 0u8..16 {
            let t = std::array::from_fn(|bit| {
                if mask >> bit & 1 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            });
            out.push(HurwitzQuat::from_doubled(t));
        }
        out
    }

    /// `self * rhs^{-1}` when it lies in the order.
    pub fn div_exact_right(&self, rhs: &Self) -> Option<HurwitzQuat> {
        let n = rhs.norm();
        if n.is_zero() {
            return None;
        }
        let num = self.mul(&rhs.conj());
        let mut t = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (slot, v) in num.t.iter().enumerate() {
            let (q, r) = v.div_rem(&n);
            if !r.is_zero() {
                return None;
            }
            t[slot] = q;
        }
        let odd = t[0].is_odd();
        if t.iter().any(|x| x.is_odd() != odd) {
            return None;
        }
        Some(HurwitzQuat::from_doubled(t))
    }

    /// `rhs^{-1} * self` when it lies in the order.
    pub fn div_exact_left(&self, rhs: &Self) -> Option<HurwitzQuat> {
        let n = rhs.norm();
        if n.is_zero() {
            return None;
        }
        let num = rhs.conj().mul(self);
        let mut t = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (slot, v) in num.t.iter().enumerate() {
            let (q, r) = v.div_rem(&n);
            if !r.is_zero() {
                return None;
            }
            t[slot] = q;
        }
        let odd = t[0].is_odd();
        if t.iter().any(|x| x.is_odd() != odd) {
            return None;
        }
        Some(HurwitzQuat::from_doubled(t))
    }
}

/// Nearest integer to `n / d` for `d > 0`, ties toward minus infinity.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let num: BigInt = n * 2 + d;
    num.div_floor(&(d * 2))
}

/// Nearest Hurwitz quaternion to the rational quaternion `num / den`
/// (`den > 0`), minimizing the exact squared distance; ties prefer the
/// lexicographically smaller doubled coordinates.
fn nearest_hurwitz(num: &Quat, den: &BigInt) -> HurwitzQuat {
    assert!(den.is_positive());
    // target in doubled coordinates is 2*num_i/den; compare the nearest
    // all-even and all-odd doubled points
    let coords = num.coords();
    let even: [BigInt; 4] = std::array::from_fn(|slot| round_div(coords[slot], den) * 2);
    let odd: [BigInt; 4] =
        std::array::from_fn(|slot| round_div(&(coords[slot] * 2 - den), &(den * 2)) * 2 + 1);
    // squared distance scaled by 4*den^2
    let dist = |cand: &[BigInt; 4]| -> BigInt {
        cand.iter()
            .zip(coords.iter())
            .map(|(g, n)| {
                let diff = *n * 2 - g * den;
                &diff * &diff
            })
            .sum()
    };
    let (de, do_) = (dist(&even), dist(&odd));
    if (de, &even) <= (do_, &odd) {
        HurwitzQuat::from_doubled(even)
    } else {
        HurwitzQuat::from_doubled(odd)
    }
}

/// Canonical associate: `g * unit` with lexicographically least doubled
/// coordinates.
fn canonical_associate(g: &HurwitzQuat) -> HurwitzQuat {
    HurwitzQuat::units()
        .iter()
        .map(|u| g.mul(u))
        .min_by(|x, y| x.t.cmp(&y.t))
        .expect("unit list nonempty")
}

/// Generator of the right ideal `a S + b S` over the Hurwitz order `S`,
/// i.e. a greatest common left divisor, canonicalized among its 24
/// right associates.
pub fn hurwitz_right_gcd(a: &HurwitzQuat, b: &HurwitzQuat) -> Result<HurwitzQuat, QuatError> {
    if a.is_zero() && b.is_zero() {
        return Err(QuatError::BothZero);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        // q nearest to b^{-1} a keeps the remainder norm below norm(b)
        let num4 = b.conj().mul(&a);
        let num = Quat::new(
            num4.t[0].clone(),
            num4.t[1].clone(),
            num4.t[2].clone(),
            num4.t[3].clone(),
        );
        let q = nearest_hurwitz(&num, &(b.norm() * 2));
        let r = a.sub(&b.mul(&q));
        debug_assert!(r.norm() < b.norm(), "euclidean step must shrink");
        a = b;
        b = r;
    }
    Ok(canonical_associate(&a))
}

/// A four-square representation of `n >= 0` with `a >= b >= c >= d >= 0`,
/// first in lexicographic descending order.
pub fn four_squares(n: &BigInt) -> Quat {
    assert!(!n.is_negative());
    let n64 = n.to_i64().expect("four_squares search bound");
    let mut a = (n64 as f64).sqrt() as i64 + 1;
    while a * a > n64 {
        a -= 1;
    }
    for a in (0..=a).rev() {
        let ra = n64 - a * a;
        let mut b = (ra as f64).sqrt() as i64 + 1;
        while b * b > ra {
            b -= 1;
        }
        for b in (0..=b.min(a)).rev() {
            let rb = ra - b * b;
            let mut c = (rb as f64).sqrt() as i64 + 1;
            while c * c > rb {
                c -= 1;
            }
            for c in (0..=c.min(b)).rev() {
                let rc = rb - c * c;
                let d = (rc as f64).sqrt() as i64;
                for d in [d - 1, d, d + 1] {
                    if d >= 0 && d <= c && d * d == rc {
                        return Quat::new(a, b, c, d);
                    }
                }
            }
        }
    }
    unreachable!("every nonnegative integer is a sum of four squares")
}

/// Centered residue of `x` modulo odd `p`, in `(-p/2, p/2)`.
fn centered_mod(x: &BigInt, p: &BigInt) -> BigInt {
    let r = x.mod_floor(p);
    if &r * 2 > *p {
        r - p
    } else {
        r
    }
}

/// One prime step: a left divisor `u` of `t` with `norm(u) = p`.
fn prime_left_divisor(t: &Quat, p: &BigInt) -> Quat {
    if p == &BigInt::from(2) {
        // parity trick: norm(t) even forces one of the three patterns
        let pats: [(usize, usize, usize, usize, Quat); 3] = [
            (0, 1, 2, 3, Quat::new(1, 1, 0, 0)),
            (0, 2, 1, 3, Quat::new(1, 0, 1, 0)),
            (0, 3, 1, 2, Quat::new(1, 0, 0, 1)),
        ];
        let co = t.coords();
        for (w, x, y, z, u) in pats {
            if (co[w] - co[x]).is_even() && (co[y] - co[z]).is_even() {
                return u;
            }
        }
        unreachable!("even norm admits a parity pattern");
    }
    let reduced = Quat {
        a: centered_mod(&t.a, p),
        b: centered_mod(&t.b, p),
        c: centered_mod(&t.c, p),
        d: centered_mod(&t.d, p),
    };
    if reduced.is_zero() {
        // t = p * s: any norm-p element divides
        let four = p % 4u8;
        if four == BigInt::one() {
            let y = two_squares(p).expect("split prime is a sum of two squares");
            return Quat::new(y.re, y.im, 0, 0);
        }
        return four_squares(p);
    }
    let g = hurwitz_right_gcd(&HurwitzQuat::from_int(p.clone()), &HurwitzQuat::from_quat(&reduced))
        .expect("nonzero inputs");
    assert_eq!(g.norm(), *p, "ideal gcd of (p, reduced) has norm p");
    if let Some(u) = g.to_quat() {
        return u;
    }
    // half coset: the unit with matching doubled-coordinate residues mod 4
    // moves g into the Lipschitz order
    let w = std::array::from_fn(|slot| {
        if g.t[slot].mod_floor(&BigInt::from(4)) == BigInt::one() {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    });
    let omega = HurwitzQuat::from_doubled(w);
    let u = g.mul(&omega.conj());
    u.to_quat().expect("unit correction lands in the Lipschitz order")
}

/// Left divisor of prescribed norm: `t = u v` with `norm(u) = m`,
/// both factors Lipschitz.
pub fn lipschitz_left_divisor(t: &Quat, m: &BigInt) -> Result<(Quat, Quat), QuatError> {
    if t.is_zero() {
        return Err(QuatError::ZeroInput);
    }
    let norm = t.norm();
    if !(&norm % m).is_zero() {
        return Err(QuatError::NonDivisor { m: m.clone(), norm });
    }
    let mut u_total = Quat::one();
    let mut cur = t.clone();
    for (p, e) in factor_int(m) {
        for _ in 0..e {
            let u = prime_left_divisor(&cur, &p);
            debug_assert_eq!(u.norm(), p);
            cur = quat_mul(&u.conj(), &cur)
                .div_int_exact(&p)
                .expect("prime divisor divides on the left");
            u_total = quat_mul(&u_total, &u);
        }
    }
    debug_assert_eq!(u_total.norm(), *m);
    debug_assert_eq!(quat_mul(&u_total, &cur), *t);
    Ok((u_total, cur))
}

/// Factor `t` as `q_1 ... q_n` with prescribed factor norms.
pub fn factor_chain(t: &Quat, norms: &[BigInt]) -> Result<Vec<Quat>, QuatError> {
    if t.is_zero() {
        return Err(QuatError::ZeroInput);
    }
    let got: BigInt = norms.iter().product();
    let norm = t.norm();
    if got != norm {
        return Err(QuatError::NormMismatch { got, norm });
    }
    let mut out = Vec::with_capacity(norms.len());
    let mut cur = t.clone();
    for m in &norms[..norms.len().saturating_sub(1)] {
        let (u, v) = lipschitz_left_divisor(&cur, m)?;
        out.push(u);
        cur = v;
    }
    out.push(cur);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quat {
        Quat::new(a, b, c, d)
    }

    #[test]
    fn hamilton_table() {
        let i = q(0, 1, 0, 0);
        let j = q(0, 0, 1, 0);
        let k = q(0, 0, 0, 1);
        assert_eq!(quat_mul(&i, &j), k);
        assert_eq!(quat_mul(&j, &i), -&k);
        assert_eq!(quat_mul(&i, &i), -&Quat::one());
        let h = q(1, 1, 1, 1);
        assert_eq!(quat_mul(&h, &h.conj()), Quat::from_int(4));
    }

    #[test]
    fn norm_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut r = || rng.gen_range(-30i64..=30);
            let x = q(r(), r(), r(), r());
            let y = q(r(), r(), r(), r());
            assert_eq!(quat_mul(&x, &y).norm(), x.norm() * y.norm());
        }
    }

    #[test]
    fn gauss_pair_view() {
        let r = GaussInt::new(2, 3);
        let s = GaussInt::new(-1, 4);
        let x = Quat::from_gauss_pair(&r, &s);
        assert_eq!(x, q(2, 3, -1, 4));
        assert_eq!(x.gauss_pair(), (r.clone(), s.clone()));
        // s j = j conj(s)
        let j = q(0, 0, 1, 0);
        let sj = quat_mul(&Quat::from_gauss_pair(&s, &GaussInt::zero()), &j);
        let jsbar = quat_mul(&j, &Quat::from_gauss_pair(&s.conj(), &GaussInt::zero()));
        assert_eq!(sj, jsbar);
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["1+2i-3j+4k", "7", "-i", "i+j", "0-1i+0j-7k"] {
            let x: Quat = s.parse().unwrap();
            let back: Quat = x.to_string().parse().unwrap();
            assert_eq!(x, back);
        }
        assert_eq!("1+2i-3j+4k".parse::<Quat>().unwrap(), q(1, 2, -3, 4));
        assert!("1+2i+3i".parse::<Quat>().is_err());
        assert!("".parse::<Quat>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = q(-3, 0, 12, 5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"-3","b":"0","c":"12","d":"5"}"#);
        assert_eq!(serde_json::from_str::<Quat>(&s).unwrap(), x);
    }

    #[test]
    fn hurwitz_units_count_and_norm() {
        let us = HurwitzQuat::units();
        assert_eq!(us.len(), 24);
        for u in &us {
            assert_eq!(u.norm(), BigInt::one());
        }
    }

    #[test]
    fn gcd_with_zero_is_input() {
        let g = hurwitz_right_gcd(&HurwitzQuat::from_int(7), &HurwitzQuat::zero()).unwrap();
        assert_eq!(g.norm(), BigInt::from(49));
        assert!(matches!(
            hurwitz_right_gcd(&HurwitzQuat::zero(), &HurwitzQuat::zero()),
            Err(QuatError::BothZero)
        ));
    }

    #[test]
    fn gcd_norm_five_case() {
        // norm(t) = 5 < 25 and 5 | norm(t): the gcd with 5 has norm 5
        let t = HurwitzQuat::from_quat(&q(2, 1, 0, 0));
        let g = hurwitz_right_gcd(&HurwitzQuat::from_int(5), &t).unwrap();
        assert_eq!(g.norm(), BigInt::from(5));
    }

    #[test]
    fn gcd_divides_both_and_is_combination() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mut r = || rng.gen_range(-8i64..=8);
            let a = HurwitzQuat::from_quat(&q(r(), r(), r(), r()));
            let b = HurwitzQuat::from_quat(&q(r(), r(), r(), r()));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let g = hurwitz_right_gcd(&a, &b).unwrap();
            // g left-divides both inputs
            assert!(a.is_zero() || a.div_exact_left(&g).is_some());
            assert!(b.is_zero() || b.div_exact_left(&g).is_some());
        }
    }

    #[test]
    fn gcd_small_brute_force() {
        // ideal membership check for a small pair: the gcd must generate
        // every a*x + b*y
        let a = HurwitzQuat::from_quat(&q(2, 1, 0, 0));
        let b = HurwitzQuat::from_quat(&q(1, 1, 0, 0));
        let g = hurwitz_right_gcd(&a, &b).unwrap();
        for x in HurwitzQuat::units() {
            let elem = a.mul(&x).sub(&b);
            assert!(elem.div_exact_left(&g).is_some() || elem.is_zero());
        }
    }

    #[test]
    fn four_squares_small() {
        for n in 0i64..=200 {
            let x = four_squares(&BigInt::from(n));
            assert_eq!(x.norm(), BigInt::from(n));
            assert!(x.a >= x.b && x.b >= x.c && x.c >= x.d && !x.d.is_negative());
        }
    }

    #[test]
    fn left_divisor_trivial_and_two() {
        let t = q(3, 1, -2, 5);
        let (u, v) = lipschitz_left_divisor(&t, &BigInt::one()).unwrap();
        assert_eq!(u, Quat::one());
        assert_eq!(v, t);

        let t = q(1, 1, 1, 1);
        let (u, v) = lipschitz_left_divisor(&t, &BigInt::from(2)).unwrap();
        assert_eq!(u.norm(), BigInt::from(2));
        assert_eq!(quat_mul(&u, &v), t);
    }

    #[test]
    fn left_divisor_65_with_brute_force_cross_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(65);
        // random t of norm 5*13*13
        let t = loop {
            let mut r = || rng.gen_range(-29i64..=29);
            let cand = q(r(), r(), r(), r());
            if cand.norm() == BigInt::from(845) {
                break cand;
            }
        };
        let m = BigInt::from(65);
        let (u, v) = lipschitz_left_divisor(&t, &m).unwrap();
        assert_eq!(u.norm(), m);
        assert_eq!(quat_mul(&u, &v), t);
        // brute force: a norm-65 left divisor exists
        let mut exists = false;
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                for c in -8i64..=8 {
                    for d in -8i64..=8 {
                        let cand = q(a, b, c, d);
                        if cand.norm() != m {
                            continue;
                        }
                        let w = quat_mul(&cand.conj(), &t);
                        if w.div_int_exact(&m).is_some() {
                            exists = true;
                        }
                    }
                }
            }
        }
        assert!(exists);
    }

    #[test]
    fn left_divisor_every_divisor_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let mut r = || rng.gen_range(-12i64..=12);
            let t = q(r(), r(), r(), r());
            if t.is_zero() {
                continue;
            }
            let n = t.norm();
            // walk all divisors of norm(t)
            let fac = factor_int(&n);
            let mut divisors = vec![BigInt::one()];
            for (p, e) in fac {
                let mut next = Vec::new();
                for d in &divisors {
                    let mut pk = BigInt::one();
                    for _ in 0..=e {
                        next.push(d * &pk);
                        pk *= &p;
                    }
                }
                divisors = next;
            }
            for m in divisors {
                let (u, v) = lipschitz_left_divisor(&t, &m).unwrap();
                assert_eq!(u.norm(), m);
                assert_eq!(quat_mul(&u, &v), t);
            }
        }
    }

    #[test]
    fn left_divisor_rejects() {
        assert!(matches!(
            lipschitz_left_divisor(&Quat::zero(), &BigInt::one()),
            Err(QuatError::ZeroInput)
        ));
        assert!(matches!(
            lipschitz_left_divisor(&q(1, 1, 0, 0), &BigInt::from(3)),
            Err(QuatError::NonDivisor { .. })
        ));
    }

    #[test]
    fn chain_shapes() {
        let t = q(3, 1, 1, 1); // norm 12
        let norms: Vec<BigInt> = [2, 2, 3].iter().map(|&n| BigInt::from(n)).collect();
        let chain = factor_chain(&t, &norms).unwrap();
        assert_eq!(chain.len(), 3);
        let mut prod = Quat::one();
        for (f, m) in chain.iter().zip(&norms) {
            assert_eq!(f.norm(), *m);
            prod = quat_mul(&prod, f);
        }
        assert_eq!(prod, t);

        let whole = factor_chain(&t, &[BigInt::from(12)]).unwrap();
        assert_eq!(whole, vec![t.clone()]);

        assert!(matches!(
            factor_chain(&t, &[BigInt::from(5)]),
            Err(QuatError::NormMismatch { .. })
        ));
    }
}
