//! Binary hermitian forms over `Z` and `Z[i]`: the perp map, orthobalanced
//! and orthoregular bases of a given type, the bijection onto quaternion
//! factorizations, and extension of a prescribed first vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::quat::{lipschitz_left_divisor, quat_mul, Quat};
use crate::ring::{
    eps_delta_split_int, factor_int, gauss_norm_divisor, gaussian_prime_above, is_sum_k_squares,
    quadring_left_divisors, GaussInt, QuadRingElem,
};
use crate::Ring;

/// Errors from hermitian form computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HermError {
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("beta must be a rational integer over Z")]
    BetaNotReal,
    #[error("pair is not an orthobalanced basis")]
    NotOrthobalanced,
    #[error("norm mismatch: expected {expected}, got {got}")]
    NormMismatch { expected: BigInt, got: BigInt },
    #[error("construction left the ring of integers")]
    NonIntegralResult,
    #[error("delta is not integral after scaling by nu")]
    NonIntegralDelta,
    #[error("determinant is not a perfect square")]
    NonSquareDet,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// The self-adjoint positive definite matrix `[[alpha, beta], [conj(beta),
/// gamma]]` over the chosen ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermForm2 {
    pub alpha: BigInt,
    pub beta: GaussInt,
    pub gamma: BigInt,
    pub ring: Ring,
}

impl HermForm2 {
    pub fn new(
        alpha: impl Into<BigInt>,
        beta: GaussInt,
        gamma: impl Into<BigInt>,
        ring: Ring,
    ) -> Result<Self, HermError> {
        let form = HermForm2 { alpha: alpha.into(), beta, gamma: gamma.into(), ring };
        if ring == Ring::Int && !form.beta.is_real() {
            return Err(HermError::BetaNotReal);
        }
        if !form.alpha.is_positive() || !form.mu().is_positive() {
            return Err(HermError::NotPositiveDefinite);
        }
        Ok(form)
    }

    pub fn identity(ring: Ring) -> Self {
        HermForm2::new(1, GaussInt::zero(), 1, ring).expect("identity form")
    }

    /// The determinant `alpha*gamma - |beta|^2`, positive by definiteness.
    pub fn mu(&self) -> BigInt {
        &self.alpha * &self.gamma - self.beta.norm()
    }

    /// `mu = Delta * eps` with `Delta` the largest absolute-square divisor.
    pub fn delta_eps(&self) -> (BigInt, BigInt) {
        let (d, e) = eps_delta_split_int(&self.mu(), self.ring);
        debug_assert!(d.is_integer());
        (d.to_integer(), e)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[GaussInt; 2]) -> [GaussInt; 2] {
        let alpha = GaussInt::from_int(self.alpha.clone());
        let gamma = GaussInt::from_int(self.gamma.clone());
        [
            &(&alpha * &v[0]) + &(&self.beta * &v[1]),
            &(&self.beta.conj() * &v[0]) + &(&gamma * &v[1]),
        ]
    }
}

/// `(x, y) -> (-conj(y), conj(x))`.
pub fn perp(v: &[GaussInt; 2]) -> [GaussInt; 2] {
    [-&v[1].conj(), v[0].conj()]
}

/// `v* M v`, a nonnegative rational integer.
pub fn q_eval(m: &HermForm2, v: &[GaussInt; 2]) -> BigInt {
    let mv = m.apply(v);
    let q = &(&v[0].conj() * &mv[0]) + &(&v[1].conj() * &mv[1]);
    debug_assert!(q.is_real());
    q.re
}

/// An element `r + s*sqrt(eps) j` of the quaternion order (`eps = 1`) or of
/// the real quadratic order (`eps > 1`, real coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraElem {
    Quat(Quat),
    QuadRing(QuadRingElem),
}

impl AlgebraElem {
    pub fn from_pair(r: &GaussInt, s: &GaussInt, eps: &BigInt) -> Self {
        if eps.is_one() {
            AlgebraElem::Quat(Quat::from_gauss_pair(r, s))
        } else {
            assert!(r.is_real() && s.is_real(), "eps > 1 requires real coefficients");
            AlgebraElem::QuadRing(QuadRingElem::new(r.re.clone(), s.re.clone(), eps.clone()))
        }
    }

    /// The `(r, s)` with `self = r + s*sqrt(eps) j`.
    pub fn pair(&self) -> (GaussInt, GaussInt) {
        match self {
            AlgebraElem::Quat(q) => q.gauss_pair(),
            AlgebraElem::QuadRing(q) => (
                GaussInt::from_int(q.r.clone()),
                GaussInt::from_int(q.s.clone()),
            ),
        }
    }

    pub fn norm(&self) -> BigInt {
        match self {
            AlgebraElem::Quat(q) => q.norm(),
            AlgebraElem::QuadRing(q) => q.norm(),
        }
    }

    pub fn mul(&self, rhs: &AlgebraElem) -> AlgebraElem {
        match (self, rhs) {
            (AlgebraElem::Quat(a), AlgebraElem::Quat(b)) => AlgebraElem::Quat(quat_mul(a, b)),
            (AlgebraElem::QuadRing(a), AlgebraElem::QuadRing(b)) => {
                AlgebraElem::QuadRing(a.mul(b))
            }
            _ => panic!("mixed algebra elements"),
        }
    }
}

/// An orthobalanced basis: `A* M A = lambda * diag(1, eps)`; orthoregular
/// when `eps = 1`. The type is `delta = delta_nu / nu` with
/// `|delta|^2 = Delta` and `nu = lambda / Delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoBasis2 {
    pub a1: [GaussInt; 2],
    pub a2: [GaussInt; 2],
    pub lambda: BigInt,
    pub delta_nu: GaussInt,
    pub nu: BigInt,
    pub eps: BigInt,
}

impl OrthoBasis2 {
    pub fn is_orthoregular(&self) -> bool {
        self.eps.is_one()
    }

    /// Full validation against the form: Gram shape and the type relation
    /// `nu * (M a1)_perp = a2 * delta_nu`.
    pub fn validate(&self, m: &HermForm2) -> Result<(), HermError> {
        let (delta, eps) = m.delta_eps();
        if eps != self.eps {
            return Err(HermError::NotOrthobalanced);
        }
        if &self.nu * &delta != self.lambda {
            return Err(HermError::NormMismatch {
                expected: self.lambda.clone(),
                got: &self.nu * &delta,
            });
        }
        if self.delta_nu.norm() != &self.nu * &self.nu * &delta {
            return Err(HermError::NonIntegralDelta);
        }
        check_gram(m, &self.a1, &self.a2, &self.lambda, &eps)?;
        let p = perp(&m.apply(&self.a1));
        let nu = GaussInt::from_int(self.nu.clone());
        for slot in 0..2 {
            if &nu * &p[slot] != &self.a2[slot] * &self.delta_nu {
                return Err(HermError::NotOrthobalanced);
            }
        }
        Ok(())
    }
}

fn check_gram(
    m: &HermForm2,
    a1: &[GaussInt; 2],
    a2: &[GaussInt; 2],
    lambda: &BigInt,
    eps: &BigInt,
) -> Result<(), HermError> {
    if &q_eval(m, a1) != lambda {
        return Err(HermError::NormMismatch { expected: lambda.clone(), got: q_eval(m, a1) });
    }
    if q_eval(m, a2) != lambda * eps {
        return Err(HermError::NotOrthobalanced);
    }
    let ma2 = m.apply(a2);
    let cross = &(&a1[0].conj() * &ma2[0]) + &(&a1[1].conj() * &ma2[1]);
    if !cross.is_zero() {
        return Err(HermError::NotOrthobalanced);
    }
    Ok(())
}

/// The map `F((x,y), (w,z)) = (conj(z) + conj(y) sqrt(eps) j,
/// -w + conj(x) sqrt(eps) j)` on an orthobalanced basis. The product of the
/// returned pair is `nu (beta + delta sqrt(eps) j)` and the first factor has
/// norm `alpha * nu`.
pub fn f_map(
    m: &HermForm2,
    a1: &[GaussInt; 2],
    a2: &[GaussInt; 2],
) -> Result<(AlgebraElem, AlgebraElem), HermError> {
    let lambda = q_eval(m, a1);
    let (_, eps) = m.delta_eps();
    if m.ring == Ring::Gauss && !eps.is_one() {
        return Err(HermError::Unsupported(
            "eps > 1 over Z[i] is outside the implemented orders".into(),
        ));
    }
    check_gram(m, a1, a2, &lambda, &eps)?;
    let u = AlgebraElem::from_pair(&a2[1].conj(), &a1[1].conj(), &eps);
    let v = AlgebraElem::from_pair(&-&a2[0], &a1[0].conj(), &eps);
    Ok((u, v))
}

/// Inverse of `f_map`: rebuilds the basis from a factorization
/// `u v = nu (beta + delta sqrt(eps) j)` with `|u|^2 = alpha nu`.
pub fn f_inv(
    m: &HermForm2,
    lambda: &BigInt,
    u: &AlgebraElem,
    v: &AlgebraElem,
) -> Result<([GaussInt; 2], [GaussInt; 2]), HermError> {
    let (delta, eps) = m.delta_eps();
    if !(lambda % &delta).is_zero() {
        return Err(HermError::PreconditionFailed(format!(
            "Delta = {} does not divide lambda = {}",
            delta, lambda
        )));
    }
    let nu = lambda / &delta;
    let alpha_nu = &m.alpha * &nu;
    if u.norm() != alpha_nu {
        return Err(HermError::NormMismatch { expected: alpha_nu, got: u.norm() });
    }
    let (r_uv, delta0) = u.mul(v).pair();
    let nu_g = GaussInt::from_int(nu.clone());
    if r_uv != &nu_g * &m.beta {
        return Err(HermError::NormMismatch { expected: lambda.clone(), got: u.mul(v).norm() });
    }
    if delta0.norm() != &nu * &nu * &delta {
        return Err(HermError::NonIntegralDelta);
    }
    let (r_u, s_u) = u.pair();
    let z = r_u.conj();
    let y = s_u.conj();
    // x = (conj(delta0) conj(z) - nu beta y) / (nu alpha)
    let x_num = &(&delta0.conj() * &z.conj()) - &(&(&nu_g * &m.beta) * &y);
    let x = x_num
        .div_exact(&GaussInt::from_int(&nu * &m.alpha))
        .ok_or(HermError::NonIntegralResult)?;
    // w = -(beta conj(x) + gamma conj(y)) conj(delta0) / (nu Delta)
    let gamma_g = GaussInt::from_int(m.gamma.clone());
    let w_num = -&(&(&(&m.beta * &x.conj()) + &(&gamma_g * &y.conj())) * &delta0.conj());
    let w = w_num
        .div_exact(&GaussInt::from_int(&nu * &delta))
        .ok_or(HermError::NonIntegralResult)?;
    let a1 = [x, y];
    let a2 = [w, z];
    check_gram(m, &a1, &a2, lambda, &eps)?;
    Ok((a1, a2))
}

/// An orthobalanced basis of norm `lambda` and type `delta = delta_nu / nu`,
/// if one exists. Returns `None` when `Delta` does not divide `lambda` or
/// when no divisor of the required norm exists in the order.
pub fn build_orthoregular(
    m: &HermForm2,
    lambda: &BigInt,
    delta_nu: &GaussInt,
) -> Result<Option<OrthoBasis2>, HermError> {
    assert!(lambda.is_positive());
    let (delta, eps) = m.delta_eps();
    if m.ring == Ring::Gauss && !eps.is_one() {
        return Err(HermError::Unsupported(
            "eps > 1 over Z[i] is outside the implemented orders".into(),
        ));
    }
    if !(lambda % &delta).is_zero() {
        // determinant obstruction: |det A|^2 = lambda^2 / Delta must be integral
        return Ok(None);
    }
    let nu = lambda / &delta;
    if delta_nu.norm() != &nu * &nu * &delta {
        return Err(HermError::NonIntegralDelta);
    }
    let nu_g = GaussInt::from_int(nu.clone());
    let t_r = &nu_g * &m.beta;
    let target = &m.alpha * &nu;
    let (u, v) = match (m.ring, eps.is_one()) {
        (Ring::Gauss, true) => {
            let t = Quat::from_gauss_pair(&t_r, delta_nu);
            let (u, v) = lipschitz_left_divisor(&t, &target)
                .expect("norm divides by construction");
            (AlgebraElem::Quat(u), AlgebraElem::Quat(v))
        }
        (Ring::Int, true) => {
            // Z[j] is a copy of the Gaussian integers
            let t = GaussInt::new(t_r.re.clone(), delta_nu.re.clone());
            match gauss_norm_divisor(&target, &t) {
                None => return Ok(None),
                Some((u, v)) => (
                    AlgebraElem::from_pair(
                        &GaussInt::from_int(u.re),
                        &GaussInt::from_int(u.im),
                        &eps,
                    ),
                    AlgebraElem::from_pair(
                        &GaussInt::from_int(v.re),
                        &GaussInt::from_int(v.im),
                        &eps,
                    ),
                ),
            }
        }
        (Ring::Int, false) => {
            let t = QuadRingElem::new(t_r.re.clone(), delta_nu.re.clone(), eps.clone());
            let divs = quadring_left_divisors(&t, &target);
            match divs.into_iter().next() {
                None => return Ok(None),
                Some(u) => {
                    let v = t.div_exact(&u).expect("listed divisor divides");
                    (AlgebraElem::QuadRing(u), AlgebraElem::QuadRing(v))
                }
            }
        }
        (Ring::Gauss, false) => unreachable!("guarded above"),
    };
    let (a1, a2) = f_inv(m, lambda, &u, &v)?;
    let basis = OrthoBasis2 {
        a1,
        a2,
        lambda: lambda.clone(),
        delta_nu: delta_nu.clone(),
        nu,
        eps,
    };
    basis.validate(m)?;
    Ok(Some(basis))
}

/// The integral `delta_0` with `|delta_0|^2 = target` dividing both `w0` and
/// `z0`, built prime by prime.
fn build_delta0(
    w0: &GaussInt,
    z0: &GaussInt,
    target: &BigInt,
    ring: Ring,
) -> Result<GaussInt, HermError> {
    let mut delta0 = GaussInt::one();
    for (p, r) in factor_int(target) {
        let delta_p = match ring {
            Ring::Int => {
                if r % 2 != 0 {
                    return Err(HermError::PreconditionFailed(format!(
                        "{} is not a square",
                        target
                    )));
                }
                GaussInt::from_int(p).pow(r / 2)
            }
            Ring::Gauss => {
                let four = (&p % BigInt::from(4)).to_u8().expect("residue fits");
                match four {
                    2 => GaussInt::new(1, 1).pow(r),
                    3 => {
                        if r % 2 != 0 {
                            return Err(HermError::PreconditionFailed(format!(
                                "inert prime {} with odd exponent in {}",
                                p, target
                            )));
                        }
                        GaussInt::from_int(p).pow(r / 2)
                    }
                    _ => {
                        let pi = gaussian_prime_above(&p);
                        let val = |x: &GaussInt, d: &GaussInt| -> u32 {
                            if x.is_zero() {
                                u32::MAX
                            } else {
                                x.valuation(d)
                            }
                        };
                        let rho = val(w0, &pi).min(val(z0, &pi)).min(r);
                        let sigma = r - rho;
                        &pi.pow(rho) * &pi.conj().pow(sigma)
                    }
                }
            }
        };
        delta0 = &delta0 * &delta_p;
    }
    debug_assert_eq!(delta0.norm(), *target);
    if !delta0.divides(w0) && !w0.is_zero() || !delta0.divides(z0) && !z0.is_zero() {
        return Err(HermError::NonIntegralResult);
    }
    Ok(delta0)
}

/// Extend a first vector of norm `lambda` to an orthoregular basis,
/// constructing the type from the prime-by-prime divisor of `nu (M a1)_perp`.
pub fn extend_to_orthoregular(
    m: &HermForm2,
    a1: &[GaussInt; 2],
) -> Result<OrthoBasis2, HermError> {
    let lambda = q_eval(m, a1);
    if !lambda.is_positive() {
        return Err(HermError::PreconditionFailed("a1 must be nonzero".into()));
    }
    let (delta, eps) = m.delta_eps();
    if !eps.is_one() {
        return Err(HermError::Unsupported(
            "extension requires eps = 1".into(),
        ));
    }
    if !(&lambda % &delta).is_zero() {
        return Err(HermError::PreconditionFailed(format!(
            "Delta = {} does not divide lambda = {}",
            delta, lambda
        )));
    }
    let nu = &lambda / &delta;
    let nu_g = GaussInt::from_int(nu.clone());
    let p = perp(&m.apply(a1));
    let (w0, z0) = (&nu_g * &p[0], &nu_g * &p[1]);
    let target = &nu * &nu * &delta;
    let delta0 = build_delta0(&w0, &z0, &target, m.ring)?;
    let a2 = [
        w0.div_exact(&delta0).ok_or(HermError::NonIntegralResult)?,
        z0.div_exact(&delta0).ok_or(HermError::NonIntegralResult)?,
    ];
    let basis = OrthoBasis2 {
        a1: a1.clone(),
        a2,
        lambda,
        delta_nu: delta0,
        nu,
        eps,
    };
    basis.validate(m)?;
    Ok(basis)
}

/// Over `Z` with square determinant: whether the form represents only sums
/// of two squares, equivalently whether `alpha` is one. On failure also
/// returns a witness prime `q = 3 (mod 4)` dividing `alpha` to odd exponent.
pub fn is_q_sum_two_squares(m: &HermForm2) -> Result<(bool, Option<BigInt>), HermError> {
    if m.ring != Ring::Int {
        return Err(HermError::Unsupported("defined over Z only".into()));
    }
    let mu = m.mu();
    let root = mu.sqrt();
    if &root * &root != mu {
        return Err(HermError::NonSquareDet);
    }
    if is_sum_k_squares(&m.alpha, 2).expect("k = 2 is supported") {
        return Ok((true, None));
    }
    let witness = factor_int(&m.alpha)
        .into_iter()
        .find(|(p, e)| (p % BigInt::from(4)) == BigInt::from(3) && e % 2 == 1)
        .map(|(p, _)| p)
        .expect("failure has a witness prime");
    Ok((false, Some(witness)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    fn gi(re: i64) -> GaussInt {
        GaussInt::from_int(re)
    }

    #[test]
    fn perp_examples() {
        assert_eq!(perp(&[gi(1), gi(0)]), [gi(0), gi(1)]);
        assert_eq!(perp(&[gi(3), gi(4)]), [gi(-4), gi(3)]);
        assert_eq!(perp(&[g(0, 1), g(1, 1)]), [g(-1, 1), g(0, -1)]);
    }

    #[test]
    fn q_eval_examples() {
        let m = HermForm2::new(9, gi(0), 1, Ring::Int).unwrap();
        assert_eq!(q_eval(&m, &[gi(0), gi(0)]), BigInt::zero());
        assert_eq!(q_eval(&m, &[gi(0), gi(1)]), BigInt::one());
        let m = HermForm2::new(21, gi(4), 21, Ring::Int).unwrap();
        assert_eq!(q_eval(&m, &[gi(1), gi(0)]), BigInt::from(21));
    }

    #[test]
    fn q_square_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let mut r = || rng.gen_range(-6i64..=6);
            let beta = g(r(), r());
            let alpha = r().abs() + 1;
            let gamma = (beta.norm().to_string().parse::<i64>().unwrap() / alpha.max(1)) + r().abs() + 1;
            let m = match HermForm2::new(alpha, beta.clone(), gamma, Ring::Gauss) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let v = [g(r(), r()), g(r(), r())];
            // alpha Q(v) = |alpha x + beta y|^2 + mu |y|^2
            let lhs = &m.alpha * q_eval(&m, &v);
            let inner = &(&GaussInt::from_int(m.alpha.clone()) * &v[0]) + &(&m.beta * &v[1]);
            let rhs = inner.norm() + m.mu() * v[1].norm();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn perp_norm_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let mut r = || rng.gen_range(-5i64..=5);
            let m = match HermForm2::new(r().abs() + 1, g(r(), r()), r().abs() + 9, Ring::Gauss) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let v = [g(r(), r()), g(r(), r())];
            // Q((M v)_perp) = mu Q(v)
            assert_eq!(q_eval(&m, &perp(&m.apply(&v))), m.mu() * q_eval(&m, &v));
        }
    }

    #[test]
    fn f_map_identity_form() {
        let m = HermForm2::identity(Ring::Int);
        let (u, v) = f_map(&m, &[gi(1), gi(0)], &[gi(0), gi(1)]).unwrap();
        // uv = beta + delta j = j
        let uv = u.mul(&v);
        let (r, s) = uv.pair();
        assert!(r.is_zero());
        assert_eq!(s.norm(), BigInt::one());
        assert_eq!(u.norm(), BigInt::one());
    }

    #[test]
    fn f_map_two_one_one_form() {
        // M = [[2,1],[1,1]]: mu = 1, Delta = 1, lambda = 2, nu = 2
        let m = HermForm2::new(2, gi(1), 1, Ring::Int).unwrap();
        let a1 = [gi(1), gi(0)];
        let a2 = perp(&m.apply(&a1));
        assert_eq!(a2, [gi(-1), gi(2)]);
        let (u, v) = f_map(&m, &a1, &a2).unwrap();
        let uv = u.mul(&v);
        let (r, s) = uv.pair();
        // uv = nu (beta + delta j) = 2 (1 + j)
        assert_eq!(r, gi(2));
        assert_eq!(s, gi(2));
        assert_eq!(u.norm(), BigInt::from(4)); // alpha nu
    }

    #[test]
    fn f_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 100 {
            let mut r = || rng.gen_range(-4i64..=4);
            let m = match HermForm2::new(r().abs() + 1, g(r(), r()), r().abs() + 8, Ring::Gauss) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let (delta, eps) = m.delta_eps();
            if !eps.is_one() {
                continue;
            }
            let a1 = [g(r(), r()), g(r(), r())];
            let lambda = q_eval(&m, &a1);
            if lambda.is_zero() || !(&lambda % &delta).is_zero() {
                continue;
            }
            let basis = match extend_to_orthoregular(&m, &a1) {
                Ok(b) => b,
                Err(HermError::NonIntegralResult) => panic!("extension must be integral"),
                Err(_) => continue,
            };
            let (u, v) = f_map(&m, &basis.a1, &basis.a2).unwrap();
            let (b1, b2) = f_inv(&m, &lambda, &u, &v).unwrap();
            assert_eq!(b1, basis.a1);
            assert_eq!(b2, basis.a2);
            done += 1;
        }
    }

    #[test]
    fn f_inv_norm_guard() {
        let m = HermForm2::identity(Ring::Int);
        let u = AlgebraElem::Quat(Quat::new(2, 0, 0, 0));
        let v = AlgebraElem::Quat(Quat::new(0, 0, 1, 0));
        assert!(matches!(
            f_inv(&m, &BigInt::one(), &u, &v),
            Err(HermError::NormMismatch { .. })
        ));
    }

    #[test]
    fn orthoregular_identity_gauss() {
        let m = HermForm2::identity(Ring::Gauss);
        // Delta = 1, nu = 5: the scaled type nu*delta is a norm-25 element,
        // here the square of 2+i
        let delta_nu = &g(2, 1) * &g(2, 1);
        let basis = build_orthoregular(&m, &BigInt::from(5), &delta_nu)
            .unwrap()
            .expect("exists");
        assert!(basis.is_orthoregular());
        basis.validate(&m).unwrap();
        assert!(matches!(
            build_orthoregular(&m, &BigInt::from(5), &g(2, 1)),
            Err(HermError::NonIntegralDelta)
        ));
    }

    #[test]
    fn orthoregular_nine_form() {
        let m = HermForm2::new(9, gi(0), 1, Ring::Int).unwrap();
        // mu = 9, Delta = 9, lambda = 9, nu = 1, delta = 3
        let basis = build_orthoregular(&m, &BigInt::from(9), &gi(3))
            .unwrap()
            .expect("exists");
        basis.validate(&m).unwrap();
        // lambda = 3 is blocked by the divisibility of Delta
        assert!(build_orthoregular(&m, &BigInt::from(3), &gi(3)).unwrap().is_none());
    }

    #[test]
    fn no_norm21_basis_for_the_17_form() {
        // mu = 425 = 25 * 17: Delta = 25, eps = 17
        let m = HermForm2::new(21, gi(4), 21, Ring::Int).unwrap();
        assert_eq!(m.delta_eps(), (BigInt::from(25), BigInt::from(17)));
        assert!(build_orthoregular(&m, &BigInt::from(21), &gi(5)).unwrap().is_none());
    }

    #[test]
    fn orthoregular_boundary_small() {
        // over Z with eps = 1 existence is exactly the two-squares condition
        for alpha in 1i64..=12 {
            for nu in 1i64..=12 {
                let m = HermForm2::new(alpha, gi(0), alpha, Ring::Int).unwrap();
                let (delta, eps) = m.delta_eps();
                if !eps.is_one() {
                    continue;
                }
                let lambda = &delta * BigInt::from(nu);
                let delta_nu = gi(nu) * GaussInt::from_int(delta.sqrt());
                let got = build_orthoregular(&m, &lambda, &delta_nu).unwrap();
                let expected = is_sum_k_squares(&BigInt::from(alpha * nu), 2).unwrap();
                assert_eq!(got.is_some(), expected, "alpha={} nu={}", alpha, nu);
            }
        }
    }

    #[test]
    fn extend_identity_forms() {
        let m = HermForm2::identity(Ring::Int);
        let b = extend_to_orthoregular(&m, &[gi(1), gi(0)]).unwrap();
        b.validate(&m).unwrap();

        let m = HermForm2::identity(Ring::Gauss);
        let b = extend_to_orthoregular(&m, &[g(2, 1), gi(0)]).unwrap();
        b.validate(&m).unwrap();
        assert!(b.a2[0].is_zero());
        assert_eq!(b.a2[1].norm(), BigInt::from(5));
    }

    #[test]
    fn extend_random_square_det_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut done = 0;
        while done < 100 {
            let mut r = || rng.gen_range(-5i64..=5);
            let m = match HermForm2::new(r().abs() + 1, g(r(), r()), r().abs() + 7, Ring::Gauss) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let (delta, eps) = m.delta_eps();
            if !eps.is_one() {
                continue;
            }
            let a1 = [g(r(), r()), g(r(), r())];
            let lambda = q_eval(&m, &a1);
            if lambda.is_zero() || !(&lambda % &delta).is_zero() {
                continue;
            }
            let b = extend_to_orthoregular(&m, &a1).unwrap();
            b.validate(&m).unwrap();
            done += 1;
        }
    }

    #[test]
    fn sum_two_squares_criterion() {
        let m = HermForm2::identity(Ring::Int);
        assert_eq!(is_q_sum_two_squares(&m).unwrap(), (true, None));

        let m = HermForm2::new(3, gi(0), 3, Ring::Int).unwrap();
        assert_eq!(is_q_sum_two_squares(&m).unwrap(), (false, Some(BigInt::from(3))));

        let m = HermForm2::new(2, gi(0), 1, Ring::Int).unwrap();
        assert!(matches!(is_q_sum_two_squares(&m), Err(HermError::NonSquareDet)));
    }

    #[test]
    fn alpha_criterion_matches_values() {
        // alpha a sum of two squares iff every value of Q is one
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut done = 0;
        while done < 60 {
            let mut r = || rng.gen_range(-6i64..=6);
            let alpha = r().abs() + 1;
            let d = r().abs() + 1;
            let beta = r();
            let m = match HermForm2::new(alpha, gi(beta), (d * d + beta * beta + alpha - 1) / alpha + 1, Ring::Int) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let mu = m.mu();
            let root = mu.sqrt();
            if &root * &root != mu {
                continue;
            }
            let (flag, _) = is_q_sum_two_squares(&m).unwrap();
            for _ in 0..50 {
                let v = [gi(r()), gi(r())];
                let q = q_eval(&m, &v);
                if flag {
                    assert!(is_sum_k_squares(&q, 2).unwrap(), "Q({:?}) = {}", v, q);
                }
            }
            done += 1;
        }
    }
}
