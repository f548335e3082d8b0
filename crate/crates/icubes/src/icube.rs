//! The icube data type with verification, arithmetic obstruction tests, and
//! all constructive extension algorithms: dimensions 3 and 4 over both
//! rings, dimension 6 over `Z` through the complex embedding, and the
//! prescribed Smith normal form variants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hermitian::{build_orthoregular, extend_to_orthoregular, HermError, HermForm2};
use crate::lattice::{
    cross_product, det_divisors, kernel_basis, kernel_basis_with_zero_coordinate, snf,
    solve_columns, vec_dot, vec_norm, LambdaBasis, LatticeError, Mat,
};
use crate::ring::{gauss_gcd, is_sum_k_squares, two_squares, GaussInt};
use crate::Ring;

/// Errors from icube verification and extension.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IcubeError {
    #[error("columns {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("columns {0} and {1} have different norms")]
    UnequalNorms(usize, usize),
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("entry ({0},{1}) is not in the ring")]
    NonRealEntry(usize, usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("norm is not an absolute square in the ring")]
    NormNotAbsoluteSquare,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Herm(#[from] HermError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An `n x k` matrix over the ring whose columns are pairwise orthogonal
/// with common norm `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcubeMatrix {
    pub ring: Ring,
    pub lambda: BigInt,
    pub mat: Mat,
}

impl IcubeMatrix {
    pub fn n(&self) -> usize {
        self.mat.rows
    }

    pub fn k(&self) -> usize {
        self.mat.cols
    }

    /// The sub-icube of the first `k` columns.
    pub fn take_columns(&self, k: usize) -> IcubeMatrix {
        assert!(k >= 1 && k <= self.k());
        let cols: Vec<Vec<GaussInt>> = (0..k).map(|j| self.mat.col(j)).collect();
        IcubeMatrix {
            ring: self.ring,
            lambda: self.lambda.clone(),
            mat: Mat::from_cols(cols),
        }
    }

    /// Icube product: `(AB)* (AB) = mu A* A = lambda mu I`.
    pub fn mul(&self, rhs: &IcubeMatrix) -> IcubeMatrix {
        assert_eq!(self.ring, rhs.ring);
        IcubeMatrix {
            ring: self.ring,
            lambda: &self.lambda * &rhs.lambda,
            mat: self.mat.mul(&rhs.mat),
        }
    }
}

/// Check the defining identities exactly and certify the matrix as an icube.
pub fn verify(mat: &Mat, ring: Ring) -> Result<IcubeMatrix, IcubeError> {
    if ring == Ring::Int {
        for i in 0..mat.rows {
            for j in 0..mat.cols {
                if !mat.at(i, j).is_real() {
                    return Err(IcubeError::NonRealEntry(i, j));
                }
            }
        }
    }
    if mat.cols == 0 || mat.cols > mat.rows {
        return Err(IcubeError::PreconditionFailed(format!(
            "need 1 <= k <= n, got {}x{}",
            mat.rows, mat.cols
        )));
    }
    let lambda = vec_norm(&mat.col(0));
    for j in 0..mat.cols {
        let col = mat.col(j);
        if col.iter().all(GaussInt::is_zero) {
            return Err(IcubeError::ZeroColumn(j));
        }
        if vec_norm(&col) != lambda {
            return Err(IcubeError::UnequalNorms(0, j));
        }
        for j2 in j + 1..mat.cols {
            if !vec_dot(&col, &mat.col(j2)).is_zero() {
                return Err(IcubeError::NotOrthogonal(j, j2));
            }
        }
    }
    Ok(IcubeMatrix { ring, lambda, mat: mat.clone() })
}

/// A proven arithmetic obstruction to extending a vector to a full icube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionReason {
    /// `n` odd: the norm must be an absolute square in the ring.
    OddDimNotAbsoluteSquare,
    /// Over `Z` with `n = 2 (mod 4)`: the norm must be a sum of two squares.
    TwoModFourNotTwoSquares,
    /// Over `Z` with all coordinates odd and odd norm: parity contradiction.
    AllOddCoordinates,
    /// Over `Z[i]` with no coordinate divisible by `1+i` and odd norm.
    OnePlusIIndivisible,
    /// Over `Z`: the norm is not a sum of `gcd(n, 4)` squares.
    SquaresClassFailure,
}

impl std::fmt::Display for ObstructionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ObstructionReason::OddDimNotAbsoluteSquare => "odd-n-nonsquare",
            ObstructionReason::TwoModFourNotTwoSquares => "4k+2-not-two-squares",
            ObstructionReason::AllOddCoordinates => "all-odd-coordinates",
            ObstructionReason::OnePlusIIndivisible => "one-plus-i-indivisible",
            ObstructionReason::SquaresClassFailure => "(4,n)-squares-failure",
        };
        f.write_str(s)
    }
}

/// Outcome of the necessary-condition battery. `Obstructed` is a proof that
/// no extension to an `n`-icube exists; the converse is open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub obstructed: bool,
    pub reason: Option<ObstructionReason>,
    pub lambda: BigInt,
    pub detail: String,
}

impl ObstructionReport {
    fn clear(lambda: BigInt) -> Self {
        ObstructionReport {
            obstructed: false,
            reason: None,
            detail: format!("no obstruction found for norm {}", lambda),
            lambda,
        }
    }

    fn hit(lambda: BigInt, reason: ObstructionReason, detail: String) -> Self {
        ObstructionReport { obstructed: true, reason: Some(reason), lambda, detail }
    }
}

/// Run every applicable necessary condition for extending `v` in `R^n` to a
/// full icube; returns the first failing obstruction.
pub fn necessary_conditions(v: &[GaussInt], ring: Ring) -> ObstructionReport {
    let n = v.len();
    let lambda = vec_norm(v);
    assert!(!lambda.is_zero(), "v must be nonzero");
    let two = BigInt::from(2);
    match ring {
        Ring::Int => {
            let class = (n as u32).gcd(&4);
            if !is_sum_k_squares(&lambda, class).expect("class is 1, 2 or 4") {
                let reason = match class {
                    1 => ObstructionReason::OddDimNotAbsoluteSquare,
                    2 => ObstructionReason::TwoModFourNotTwoSquares,
                    _ => ObstructionReason::SquaresClassFailure,
                };
                return ObstructionReport::hit(
                    lambda.clone(),
                    reason,
                    format!("norm {} is not a sum of {} squares", lambda, class),
                );
            }
            let all_odd = v.iter().all(|e| (&e.re % &two).abs().is_one());
            if all_odd && (&lambda % &two).is_one() {
                // any orthogonal w has |w|^2 = sum w_j = v.w = 0 (mod 2),
                // contradicting equal odd norm
                return ObstructionReport::hit(
                    lambda.clone(),
                    ObstructionReason::AllOddCoordinates,
                    format!("all coordinates odd, norm {} odd", lambda),
                );
            }
        }
        Ring::Gauss => {
            if n % 2 == 1 && !is_sum_k_squares(&lambda, 2).expect("two squares") {
                return ObstructionReport::hit(
                    lambda.clone(),
                    ObstructionReason::OddDimNotAbsoluteSquare,
                    format!("norm {} is not a sum of two squares", lambda),
                );
            }
            let one_plus_i = GaussInt::new(1, 1);
            let none_div = v.iter().all(|e| !one_plus_i.divides(e));
            if none_div && (&lambda % &two).is_one() {
                // mod 1+i every |z|^2 = z, so lambda = sum w_j = v* w = 0,
                // forcing lambda even for any orthogonal equal-norm w
                return ObstructionReport::hit(
                    lambda.clone(),
                    ObstructionReason::OnePlusIIndivisible,
                    format!("no coordinate divisible by 1+i, norm {} odd", lambda),
                );
            }
        }
    }
    ObstructionReport::clear(lambda)
}

/// An `s` in the ring with `|s|^2 = lambda`, if the norm class allows one.
fn abs_square_root(lambda: &BigInt, ring: Ring) -> Option<GaussInt> {
    match ring {
        Ring::Int => {
            let r = lambda.sqrt();
            (&r * &r == *lambda).then(|| GaussInt::from_int(r))
        }
        Ring::Gauss => two_squares(lambda),
    }
}

fn herm_from_gram(gram: &Mat, ring: Ring) -> Result<HermForm2, IcubeError> {
    assert_eq!((gram.rows, gram.cols), (2, 2));
    HermForm2::new(
        gram.at(0, 0).re.clone(),
        gram.at(0, 1).clone(),
        gram.at(1, 1).re.clone(),
        ring,
    )
    .map_err(IcubeError::Herm)
}

fn content(v: &[GaussInt]) -> GaussInt {
    v.iter().fold(GaussInt::zero(), |acc, e| gauss_gcd(&acc, e))
}

fn basis_image(basis: &LambdaBasis, coords: &[GaussInt; 2]) -> Vec<GaussInt> {
    basis
        .basis
        .mul(&Mat::from_cols(vec![coords.to_vec()]))
        .col(0)
}

/// Extend a 1- or 2-icube in `R^3` to a full 3-icube. Requires the norm to
/// be an absolute square in the ring (a perfect square over `Z`, a sum of
/// two squares over `Z[i]`).
pub fn extend3(a0: &IcubeMatrix) -> Result<IcubeMatrix, IcubeError> {
    if a0.n() != 3 || a0.k() > 2 {
        return Err(IcubeError::PreconditionFailed(format!(
            "extend3 needs a 3x1 or 3x2 icube, got {}x{}",
            a0.n(),
            a0.k()
        )));
    }
    if abs_square_root(&a0.lambda, a0.ring).is_none() {
        return Err(IcubeError::PreconditionFailed(format!(
            "norm {} is not an absolute square over {}",
            a0.lambda, a0.ring
        )));
    }
    let mat = if a0.k() == 1 {
        let a1: [GaussInt; 3] = a0.mat.col(0).try_into().expect("three rows");
        extend3_vector(&a1, a0.ring)?
    } else {
        extend3_pair(a0)?
    };
    verify(&mat, a0.ring)
}

fn extend3_vector(a1: &[GaussInt; 3], ring: Ring) -> Result<Mat, IcubeError> {
    let lambda = vec_norm(a1.as_slice());
    let g = content(a1.as_slice());
    if !g.is_unit() {
        // divide out the content, extend the primitive vector, rescale the
        // two new columns
        let prim: [GaussInt; 3] =
            std::array::from_fn(|i| a1[i].div_exact(&g).expect("content divides"));
        if abs_square_root(&vec_norm(prim.as_slice()), ring).is_none() {
            return Err(IcubeError::PreconditionFailed(format!(
                "primitive part norm {} is not an absolute square",
                vec_norm(prim.as_slice())
            )));
        }
        let sub = extend3_vector(&prim, ring)?;
        let cols = vec![
            a1.to_vec(),
            sub.col(1).iter().map(|e| &g * e).collect(),
            sub.col(2).iter().map(|e| &g * e).collect(),
        ];
        return Ok(Mat::from_cols(cols));
    }
    let lam = kernel_basis_with_zero_coordinate(a1)?;
    let q = herm_from_gram(&lam.gram, ring)?;
    let delta_nu = abs_square_root(&lambda, ring).expect("checked by caller");
    let basis = build_orthoregular(&q, &lambda, &delta_nu)?
        .ok_or_else(|| IcubeError::ConstructionFailed("no orthoregular basis found".into()))?;
    Ok(Mat::from_cols(vec![
        a1.to_vec(),
        basis_image(&lam, &basis.a1),
        basis_image(&lam, &basis.a2),
    ]))
}

fn extend3_pair(a0: &IcubeMatrix) -> Result<Mat, IcubeError> {
    let a1 = a0.mat.col(0);
    let a2 = a0.mat.col(1);
    let lam = kernel_basis(&Mat::from_cols(vec![a1.clone()]));
    let q = herm_from_gram(&lam.gram, a0.ring)?;
    let coords = solve_columns(&lam.basis, &a2)
        .ok_or_else(|| IcubeError::ConstructionFailed("a2 outside the kernel lattice".into()))?;
    let coords: [GaussInt; 2] = coords.try_into().expect("rank-2 kernel");
    match extend_to_orthoregular(&q, &coords) {
        Ok(ob) => Ok(Mat::from_cols(vec![a1, a2, basis_image(&lam, &ob.a2)])),
        Err(err) => {
            // cross product fallback: a1 x a2 has norm lambda^2 and is
            // orthogonal to both; an exact division by some |s|^2 = lambda
            // yields the third column
            let c = cross_product(&[a1.clone(), a2.clone()]);
            let s0 = abs_square_root(&a0.lambda, a0.ring).expect("checked by caller");
            for cand in [s0.clone(), s0.conj()] {
                for unit in GaussInt::units() {
                    let s = &cand * &unit;
                    let col: Option<Vec<GaussInt>> =
                        c.iter().map(|e| e.div_exact(&s)).collect();
                    if let Some(col) = col {
                        return Ok(Mat::from_cols(vec![a1, a2, col]));
                    }
                }
            }
            Err(IcubeError::Herm(err))
        }
    }
}

/// The paired second column `(-conj a2, conj a1, -conj a4, conj a3)` that
/// turns any vector in `R^4` into a 2-icube.
pub fn paired_column(a1: &[GaussInt]) -> Vec<GaussInt> {
    assert_eq!(a1.len(), 4);
    vec![
        -&a1[1].conj(),
        a1[0].conj(),
        -&a1[3].conj(),
        a1[2].conj(),
    ]
}

/// Extend a 1-, 2- or 3-icube in `R^4` to a full 4-icube. Unconditional:
/// every such icube extends.
pub fn extend4(a0: &IcubeMatrix) -> Result<IcubeMatrix, IcubeError> {
    if a0.n() != 4 || a0.k() > 3 {
        return Err(IcubeError::PreconditionFailed(format!(
            "extend4 needs a 4xk icube with k <= 3, got {}x{}",
            a0.n(),
            a0.k()
        )));
    }
    let mat = match a0.k() {
        1 => {
            let a1 = a0.mat.col(0);
            let pair = Mat::from_cols(vec![a1.clone(), paired_column(&a1)]);
            let two = verify(&pair, a0.ring)?;
            return extend4(&two).map(|full| {
                debug_assert_eq!(full.mat.col(0), a1);
                full
            });
        }
        2 => extend4_pair(a0)?,
        _ => extend4_triple(a0)?,
    };
    verify(&mat, a0.ring)
}

fn extend4_pair(a0: &IcubeMatrix) -> Result<Mat, IcubeError> {
    if a0.ring == Ring::Int {
        // over Z divide out the content first; the sum-of-two-squares
        // guarantee for the scaled form needs a primitive pair
        let g = content(&a0.mat.data);
        if !g.is_unit() {
            let prim = Mat {
                rows: 4,
                cols: 2,
                data: a0
                    .mat
                    .data
                    .iter()
                    .map(|e| e.div_exact(&g).expect("content divides"))
                    .collect(),
            };
            let sub = extend4_pair(&verify(&prim, a0.ring)?)?;
            let cols = vec![
                a0.mat.col(0),
                a0.mat.col(1),
                sub.col(2).iter().map(|e| &g * e).collect(),
                sub.col(3).iter().map(|e| &g * e).collect(),
            ];
            return Ok(Mat::from_cols(cols));
        }
    }
    let (q, lam) = crate::lattice::scaled_form_q_prime(&a0.mat, a0.ring)?;
    let d2 = det_divisors(&a0.mat).pop().expect("two divisors");
    let basis = build_orthoregular(&q, &d2.norm(), &d2)?
        .ok_or_else(|| IcubeError::ConstructionFailed("no orthoregular basis found".into()))?;
    Ok(Mat::from_cols(vec![
        a0.mat.col(0),
        a0.mat.col(1),
        basis_image(&lam, &basis.a1),
        basis_image(&lam, &basis.a2),
    ]))
}

fn extend4_triple(a0: &IcubeMatrix) -> Result<Mat, IcubeError> {
    let pair = Mat::from_cols(vec![a0.mat.col(0), a0.mat.col(1)]);
    let (q, lam) = crate::lattice::scaled_form_q_prime(&pair, a0.ring)?;
    let a3 = a0.mat.col(2);
    let coords = solve_columns(&lam.basis, &a3)
        .ok_or_else(|| IcubeError::ConstructionFailed("a3 outside the kernel lattice".into()))?;
    let coords: [GaussInt; 2] = coords.try_into().expect("rank-2 kernel");
    let ob = extend_to_orthoregular(&q, &coords)?;
    Ok(Mat::from_cols(vec![
        a0.mat.col(0),
        a0.mat.col(1),
        a3,
        basis_image(&lam, &ob.a2),
    ]))
}

/// Expand a Gaussian matrix to its real block form, `a+bi` becoming the
/// 2x2 rotation block `(a -b; b a)`.
pub fn complex_to_real_blocks(m: &Mat) -> Mat {
    let mut out = Mat::zeros(2 * m.rows, 2 * m.cols);
    for r in 0..m.rows {
        for c in 0..m.cols {
            let e = m.at(r, c);
            *out.at_mut(2 * r, 2 * c) = GaussInt::from_int(e.re.clone());
            *out.at_mut(2 * r, 2 * c + 1) = GaussInt::from_int(-&e.im);
            *out.at_mut(2 * r + 1, 2 * c) = GaussInt::from_int(e.im.clone());
            *out.at_mut(2 * r + 1, 2 * c + 1) = GaussInt::from_int(e.re.clone());
        }
    }
    out
}

/// Extend a vector in `Z^6` to a real 6-icube by pairing coordinates
/// (1,2), (3,4), (5,6) into `Z[i]^3`, extending there, and expanding each
/// Gaussian entry to its real 2x2 block. Requires the norm to be a sum of
/// two squares.
pub fn extend6_real(v: &[GaussInt]) -> Result<IcubeMatrix, IcubeError> {
    if v.len() != 6 || v.iter().any(|e| !e.is_real()) {
        return Err(IcubeError::PreconditionFailed(
            "extend6_real needs a real vector of length 6".into(),
        ));
    }
    let lambda = vec_norm(v);
    if !is_sum_k_squares(&lambda, 2).expect("two squares") {
        return Err(IcubeError::PreconditionFailed(format!(
            "norm {} is not a sum of two squares",
            lambda
        )));
    }
    let z: [GaussInt; 3] =
        std::array::from_fn(|j| GaussInt::new(v[2 * j].re.clone(), v[2 * j + 1].re.clone()));
    let gauss = extend3_vector(&z, Ring::Gauss)?;
    let real = complex_to_real_blocks(&gauss);
    let out = verify(&real, Ring::Int)?;
    debug_assert_eq!(out.mat.col(0), v.to_vec());
    Ok(out)
}

/// Extend a primitive `a1` in `R^3` of absolute-square norm to a 3-icube
/// whose Smith normal form is `diag(1, alpha2, lambda)`, for any `alpha2`
/// with `|alpha2|^2 = lambda`.
pub fn extend3_with_snf(
    a1: &[GaussInt; 3],
    alpha2: &GaussInt,
    ring: Ring,
) -> Result<IcubeMatrix, IcubeError> {
    let lambda = vec_norm(a1.as_slice());
    if !content(a1.as_slice()).is_unit() {
        return Err(IcubeError::NotPrimitive);
    }
    if abs_square_root(&lambda, ring).is_none() {
        return Err(IcubeError::NormNotAbsoluteSquare);
    }
    if alpha2.norm() != lambda {
        return Err(IcubeError::PreconditionFailed(format!(
            "|alpha2|^2 = {} but the norm is {}",
            alpha2.norm(),
            lambda
        )));
    }
    let mut lam = kernel_basis_with_zero_coordinate(a1)?;
    // normalize so b2 x b3 = a1: the cross is a unit multiple of a1, and
    // scaling b3 by u rescales the cross by conj(u)
    let c = cross_product(&[lam.basis.col(0), lam.basis.col(1)]);
    let slot = (0..3).find(|&i| !a1[i].is_zero()).expect("a1 nonzero");
    let u = c[slot].div_exact(&a1[slot]).expect("cross is an associate of a1");
    assert!(u.is_unit(), "primitive a1 spans the rank-1 complement");
    debug_assert!((0..3).all(|i| c[i] == &u * &a1[i]));
    for i in 0..3 {
        let e = lam.basis.at(i, 1) * &u;
        *lam.basis.at_mut(i, 1) = e;
    }
    let gram = lam.basis.adjoint().mul(&lam.basis);
    let q = herm_from_gram(&gram, ring)?;
    let basis = build_orthoregular(&q, &lambda, &alpha2.conj())?
        .ok_or_else(|| IcubeError::ConstructionFailed("no basis of the requested type".into()))?;
    let mat = Mat::from_cols(vec![
        a1.to_vec(),
        basis_image(&lam, &basis.a1),
        basis_image(&lam, &basis.a2),
    ]);
    let out = verify(&mat, ring)?;
    let got = snf(&out.mat).diag;
    let want = vec![
        GaussInt::one(),
        alpha2.normalized(),
        GaussInt::from_int(lambda.clone()),
    ];
    if got != want {
        return Err(IcubeError::ConstructionFailed(format!(
            "Smith form {:?} differs from {:?}",
            got, want
        )));
    }
    Ok(out)
}

/// Extend a 2-icube in `Z[i]^4` with primitive first column and
/// conjugate-coprime `d2` to a 4-icube with Smith normal form
/// `diag(1, alpha2, lambda/conj(alpha2), lambda)`, for any `alpha2 | d2`.
pub fn extend4_with_snf(
    a0: &IcubeMatrix,
    alpha2: &GaussInt,
) -> Result<IcubeMatrix, IcubeError> {
    if a0.ring != Ring::Gauss || a0.n() != 4 || a0.k() != 2 {
        return Err(IcubeError::PreconditionFailed(
            "needs a 2-icube over Z[i] in dimension 4".into(),
        ));
    }
    let dks = det_divisors(&a0.mat);
    if !dks[0].is_unit() {
        return Err(IcubeError::HypothesisViolated("the icube is not primitive".into()));
    }
    let d2 = dks[1].clone();
    if !gauss_gcd(&d2, &d2.conj()).is_unit() {
        return Err(IcubeError::HypothesisViolated(format!(
            "gcd(d2, conj d2) = {} is not a unit",
            gauss_gcd(&d2, &d2.conj())
        )));
    }
    let quot = d2.div_exact(alpha2).ok_or_else(|| {
        IcubeError::HypothesisViolated(format!("alpha2 = {} does not divide d2 = {}", alpha2, d2))
    })?;
    // type delta = d2 conj(alpha2) / alpha2, of norm |d2|^2
    let delta = &quot * &alpha2.conj();
    let (q, lam) = crate::lattice::scaled_form_q_prime(&a0.mat, a0.ring)?;
    let basis = build_orthoregular(&q, &d2.norm(), &delta)?
        .ok_or_else(|| IcubeError::ConstructionFailed("no basis of the requested type".into()))?;
    let mat = Mat::from_cols(vec![
        a0.mat.col(0),
        a0.mat.col(1),
        basis_image(&lam, &basis.a1),
        basis_image(&lam, &basis.a2),
    ]);
    let out = verify(&mat, a0.ring)?;
    let lambda_g = GaussInt::from_int(out.lambda.clone());
    let want = vec![
        GaussInt::one(),
        alpha2.normalized(),
        lambda_g
            .div_exact(&alpha2.conj())
            .expect("alpha2 divides d2 which divides lambda")
            .normalized(),
        lambda_g,
    ];
    let got = snf(&out.mat).diag;
    if got != want {
        return Err(IcubeError::ConstructionFailed(format!(
            "Smith form {:?} differs from {:?}",
            got, want
        )));
    }
    Ok(out)
}

/// Verify the conjugate pairing `conj(d_j) d_(n+1-j) = lambda` of the Smith
/// normal form diagonal of a square icube; returns the diagonal as the
/// certificate.
pub fn snf_pairing_check(a: &IcubeMatrix) -> (bool, Vec<GaussInt>) {
    assert_eq!(a.n(), a.k(), "needs a square icube");
    let diag = snf(&a.mat).diag;
    let lambda = GaussInt::from_int(a.lambda.clone());
    let n = diag.len();
    let ok = (0..n).all(|j| (&diag[j].conj() * &diag[n - 1 - j]).normalized() == lambda);
    (ok, diag)
}

fn random_unit_monomial(rng: &mut ChaCha8Rng, n: usize, ring: Ring) -> Mat {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut m = Mat::zeros(n, n);
    for (col, &row) in perm.iter().enumerate() {
        let unit = if ring == Ring::Gauss {
            GaussInt::units()[rng.gen_range(0..4)].clone()
        } else if rng.gen_bool(0.5) {
            GaussInt::one()
        } else {
            -GaussInt::one()
        };
        *m.at_mut(row, col) = unit;
    }
    m
}

fn random_entry(rng: &mut ChaCha8Rng, bound: i64, ring: Ring) -> GaussInt {
    GaussInt::new(
        rng.gen_range(-bound..=bound),
        if ring == Ring::Gauss { rng.gen_range(-bound..=bound) } else { 0 },
    )
}

/// A vector whose norm is an absolute square in the ring, by rejection.
fn random_extendable_vector(rng: &mut ChaCha8Rng, len: usize, bound: i64, ring: Ring) -> Vec<GaussInt> {
    loop {
        let v: Vec<GaussInt> = (0..len).map(|_| random_entry(rng, bound, ring)).collect();
        let norm = vec_norm(&v);
        if !norm.is_zero() && abs_square_root(&norm, ring).is_some() {
            return v;
        }
    }
}

fn random_factor(rng: &mut ChaCha8Rng, n: usize, ring: Ring) -> IcubeMatrix {
    match n {
        2 => {
            // (a -conj b; b conj a) is a 2-icube of norm |a|^2 + |b|^2
            let a = random_entry(rng, 3, ring);
            let b = random_entry(rng, 3, ring);
            if a.is_zero() && b.is_zero() {
                return verify(&Mat::identity(2), ring).expect("identity");
            }
            let mat = Mat::from_cols(vec![
                vec![a.clone(), b.clone()],
                vec![-&b.conj(), a.conj()],
            ]);
            verify(&mat, ring).expect("2x2 construction")
        }
        3 => {
            let v: [GaussInt; 3] = random_extendable_vector(rng, 3, 3, ring)
                .try_into()
                .expect("length 3");
            let mat = extend3_vector(&v, ring).expect("square-norm vector extends");
            verify(&mat, ring).expect("extension verifies")
        }
        4 => {
            let v = Mat::from_cols(vec![random_extendable_vector(rng, 4, 3, ring)]);
            let start = verify(&v, ring).expect("nonzero column");
            extend4(&start).expect("dimension 4 extension is unconditional")
        }
        6 | 8 => {
            // block-diagonal pair of equal-norm halves; the second half is
            // the first times a unit monomial, keeping the norm
            let half = random_factor(rng, n / 2, ring);
            let twist = random_unit_monomial(rng, n / 2, ring);
            let other = half.mat.mul(&twist);
            let mut m = Mat::zeros(n, n);
            for r in 0..n / 2 {
                for c in 0..n / 2 {
                    *m.at_mut(r, c) = half.mat.at(r, c).clone();
                    *m.at_mut(n / 2 + r, n / 2 + c) = other.at(r, c).clone();
                }
            }
            verify(&m, ring).expect("block diagonal")
        }
        _ => {
            // dimensions without a constructive extension path: scaled unit
            // monomial matrices
            let s = loop {
                let c = random_entry(rng, 2, ring);
                if !c.is_zero() {
                    break c;
                }
            };
            let mut m = random_unit_monomial(rng, n, ring);
            for e in &mut m.data {
                *e = &*e * &s;
            }
            verify(&m, ring).expect("scaled monomial")
        }
    }
}

/// Deterministic random full icube: a product of signed permutations,
/// small constructive extensions, and block matrices, with the norm capped
/// by `max_lambda`.
pub fn generate_random_icube(
    ring: Ring,
    n: usize,
    seed: u64,
    max_lambda: &BigInt,
) -> IcubeMatrix {
    assert!((1..=8).contains(&n), "n must be between 1 and 8");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mono = random_unit_monomial(&mut rng, n, ring);
    let mut acc = verify(&mono, ring).expect("monomial icube");
    for _ in 0..3 {
        let factor = random_factor(&mut rng, n, ring);
        if &acc.lambda * &factor.lambda <= *max_lambda {
            acc = acc.mul(&factor);
        }
    }
    verify(&acc.mat, ring).expect("product of icubes")
}
