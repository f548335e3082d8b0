//! Exact matrix machinery over `Z` and `Z[i]`: Smith normal form with
//! tracked unimodular transforms, determinantal divisors, orthogonal
//! complement bases, and generalized cross products.

use num_bigint::BigInt;

use crate::hermitian::HermForm2;
use crate::ring::{gauss_ext_gcd, gauss_gcd, GaussInt};
use crate::Ring;

/// Errors from lattice computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("matrix entries scaled by |d2|^2/lambda must stay integral")]
    IntegralityViolation,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("unexpected rank {got}, wanted {want}")]
    RankMismatch { got: usize, want: usize },
}

/// Dense row-major matrix over the Gaussian integers. Real matrices use
/// entries with zero imaginary part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<GaussInt>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![GaussInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<GaussInt>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = Mat::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, e) in col.into_iter().enumerate() {
                *m.at_mut(i, j) = e;
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut GaussInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn col(&self, j: usize) -> Vec<GaussInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<GaussInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = GaussInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * rhs.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussInt::is_zero)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> GaussInt {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return GaussInt::one();
        }
        let mut m = self.clone();
        let mut sign = GaussInt::one();
        let mut prev = GaussInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.at(i, k).is_zero());
                match swap {
                    None => return GaussInt::zero(),
                    Some(i) => {
                        for j in 0..n {
                            let a = m.at(k, j).clone();
                            let b = m.at(i, j).clone();
                            *m.at_mut(k, j) = b;
                            *m.at_mut(i, j) = a;
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.at(k, k) * m.at(i, j)) - &(m.at(i, k) * m.at(k, j));
                    *m.at_mut(i, j) = num.div_exact(&prev).expect("fraction-free step");
                }
            }
            for i in k + 1..n {
                *m.at_mut(i, k) = GaussInt::zero();
            }
            prev = m.at(k, k).clone();
        }
        &sign * m.at(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().is_unit()
    }
}

/// Smith normal form `input = left * D * right` with unimodular transforms
/// and their inverses, diagonal normalized and in a divisibility chain.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub diag: Vec<GaussInt>,
    pub left: Mat,
    pub left_inv: Mat,
    pub right: Mat,
    pub right_inv: Mat,
    /// Determinantal divisors `d_k = diag[0] * ... * diag[k-1]`, normalized.
    pub dk: Vec<GaussInt>,
}

impl SnfResult {
    pub fn diag_mat(&self, rows: usize, cols: usize) -> Mat {
        let mut d = Mat::zeros(rows, cols);
        for (i, e) in self.diag.iter().enumerate() {
            *d.at_mut(i, i) = e.clone();
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|e| !e.is_zero()).count()
    }
}

struct Work {
    d: Mat,
    u: Mat,
    uinv: Mat,
    v: Mat,
    vinv: Mat,
}

impl Work {
    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.d.cols {
            self.d.data.swap(i * self.d.cols + c, j * self.d.cols + c);
        }
        for r in 0..self.u.rows {
            self.u.data.swap(r * self.u.cols + i, r * self.u.cols + j);
        }
        for c in 0..self.uinv.cols {
            self.uinv.data.swap(i * self.uinv.cols + c, j * self.uinv.cols + c);
        }
    }

    /// Row `i` += `c` * row `j` of the working matrix.
    fn row_addmul(&mut self, i: usize, j: usize, c: &GaussInt) {
        for col in 0..self.d.cols {
            let add = c * self.d.at(j, col);
            *self.d.at_mut(i, col) += add;
        }
        for r in 0..self.u.rows {
            let sub = c * self.u.at(r, i);
            *self.u.at_mut(r, j) -= sub;
        }
        for col in 0..self.uinv.cols {
            let add = c * self.uinv.at(j, col);
            *self.uinv.at_mut(i, col) += add;
        }
    }

    fn row_scale(&mut self, i: usize, unit: &GaussInt) {
        debug_assert!(unit.is_unit());
        let inv = unit.conj();
        for col in 0..self.d.cols {
            let e = unit * self.d.at(i, col);
            *self.d.at_mut(i, col) = e;
        }
        for r in 0..self.u.rows {
            let e = &inv * self.u.at(r, i);
            *self.u.at_mut(r, i) = e;
        }
        for col in 0..self.uinv.cols {
            let e = unit * self.uinv.at(i, col);
            *self.uinv.at_mut(i, col) = e;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.d.rows {
            self.d.data.swap(r * self.d.cols + i, r * self.d.cols + j);
        }
        for c in 0..self.v.cols {
            self.v.data.swap(i * self.v.cols + c, j * self.v.cols + c);
        }
        for r in 0..self.vinv.rows {
            self.vinv.data.swap(r * self.vinv.cols + i, r * self.vinv.cols + j);
        }
    }

    /// Column `j` += `c` * column `i` of the working matrix.
    fn col_addmul(&mut self, j: usize, i: usize, c: &GaussInt) {
        for r in 0..self.d.rows {
            let add = c * self.d.at(r, i);
            *self.d.at_mut(r, j) += add;
        }
        for col in 0..self.v.cols {
            let sub = c * self.v.at(j, col);
            *self.v.at_mut(i, col) -= sub;
        }
        for r in 0..self.vinv.rows {
            let add = c * self.vinv.at(r, i);
            *self.vinv.at_mut(r, j) += add;
        }
    }
}

/// Smith normal form with deterministic smallest-norm pivoting.
pub fn snf(a: &Mat) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        d: a.clone(),
        u: Mat::identity(m),
        uinv: Mat::identity(m),
        v: Mat::identity(n),
        vinv: Mat::identity(n),
    };
    let steps = m.min(n);
    for t in 0..steps {
        'place: loop {
            // smallest-norm nonzero entry of the trailing block
            let mut pivot: Option<(BigInt, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let e = w.d.at(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let key = (e.norm(), i, j);
                    if pivot.as_ref().map_or(true, |p| key < *p) {
                        pivot = Some(key);
                    }
                }
            }
            let (_, pi, pj) = match pivot {
                None => break 'place,
                Some(p) => p,
            };
            w.row_swap(t, pi);
            w.col_swap(t, pj);
            // alternate clearing the pivot column and row; swaps that pull a
            // smaller element into the pivot re-pollute the other line, but
            // the pivot norm strictly drops, so this terminates
            loop {
                loop {
                    let min_row = (t..m)
                        .filter(|&i| !w.d.at(i, t).is_zero())
                        .min_by_key(|&i| (w.d.at(i, t).norm(), i))
                        .expect("pivot nonzero");
                    w.row_swap(t, min_row);
                    let mut dirty = false;
                    for i in t + 1..m {
                        if w.d.at(i, t).is_zero() {
                            continue;
                        }
                        let (q, _) = w.d.at(i, t).div_rem_centered(w.d.at(t, t));
                        w.row_addmul(i, t, &-&q);
                        dirty |= !w.d.at(i, t).is_zero();
                    }
                    if !dirty {
                        break;
                    }
                }
                if (t + 1..n).all(|j| w.d.at(t, j).is_zero()) {
                    break;
                }
                loop {
                    let min_col = (t..n)
                        .filter(|&j| !w.d.at(t, j).is_zero())
                        .min_by_key(|&j| (w.d.at(t, j).norm(), j))
                        .expect("pivot nonzero");
                    w.col_swap(t, min_col);
                    let mut dirty = false;
                    for j in t + 1..n {
                        if w.d.at(t, j).is_zero() {
                            continue;
                        }
                        let (q, _) = w.d.at(t, j).div_rem_centered(w.d.at(t, t));
                        w.col_addmul(j, t, &-&q);
                        dirty |= !w.d.at(t, j).is_zero();
                    }
                    if !dirty {
                        break;
                    }
                }
                if (t + 1..m).all(|i| w.d.at(i, t).is_zero()) {
                    break;
                }
            }
            // enforce the divisibility chain on the trailing block
            let piv = w.d.at(t, t).clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w.d.at(i, j).is_zero() && w.d.at(i, j).div_exact(&piv).is_none());
            match offender {
                Some((i, _)) => {
                    w.row_addmul(t, i, &GaussInt::one());
                    continue 'place;
                }
                None => break 'place,
            }
        }
    }
    for t in 0..steps {
        let unit = w.d.at(t, t).normalizing_unit();
        if !unit.is_one() {
            w.row_scale(t, &unit);
        }
    }
    let diag: Vec<GaussInt> = (0..steps).map(|t| w.d.at(t, t).clone()).collect();
    let mut dk = Vec::with_capacity(steps);
    let mut acc = GaussInt::one();
    for e in &diag {
        acc = (&acc * e).normalized();
        dk.push(acc.clone());
    }
    SnfResult { diag, left: w.u, left_inv: w.uinv, right: w.v, right_inv: w.vinv, dk }
}

/// Determinantal divisors `d_1, ..., d_min(m,n)`, normalized.
pub fn det_divisors(a: &Mat) -> Vec<GaussInt> {
    snf(a).dk
}

/// Solve `B x = t` exactly over the ring via the Smith normal form of `B`;
/// `None` when `t` is outside the column span lattice.
pub fn solve_columns(b: &Mat, t: &[GaussInt]) -> Option<Vec<GaussInt>> {
    assert_eq!(b.rows, t.len(), "dimension mismatch");
    let s = snf(b);
    // B = U D V, so y := V x satisfies D y = U^{-1} t
    let rhs = s.left_inv.mul(&Mat::from_cols(vec![t.to_vec()]));
    let mut y = vec![GaussInt::zero(); b.cols];
    for i in 0..b.rows {
        let r = rhs.at(i, 0);
        if i < s.diag.len() && !s.diag[i].is_zero() {
            y[i] = r.div_exact(&s.diag[i])?;
        } else if !r.is_zero() {
            return None;
        }
    }
    let x = s.right_inv.mul(&Mat::from_cols(vec![y]));
    Some(x.col(0))
}

/// A free basis of the orthogonal complement lattice of an icube's columns,
/// with the restricted Gram matrix of the norm form.
#[derive(Debug, Clone)]
pub struct LambdaBasis {
    /// `n x (n-k)` matrix of basis column vectors.
    pub basis: Mat,
    /// `(n-k) x (n-k)` Gram matrix `B* B`.
    pub gram: Mat,
    /// `det(gram)`, a positive rational integer.
    pub disc: BigInt,
}

fn gram_of(basis: &Mat) -> (Mat, BigInt) {
    let gram = basis.adjoint().mul(basis);
    let disc = gram.det();
    assert!(disc.is_real(), "Gram determinant is real");
    (gram, disc.re)
}

/// Basis of `{w : A0* w = 0}` over the ring, via the Smith normal form of
/// the adjoint constraint matrix.
pub fn kernel_basis(a0: &Mat) -> LambdaBasis {
    let adj = a0.adjoint();
    let s = snf(&adj);
    let rank = s.rank();
    let n = a0.rows;
    let cols: Vec<Vec<GaussInt>> = (rank..n).map(|j| s.right_inv.col(j)).collect();
    let basis = Mat::from_cols(cols);
    debug_assert!(adj.mul(&basis).is_zero());
    let (gram, disc) = gram_of(&basis);
    LambdaBasis { basis, gram, disc }
}

/// Kernel basis of a primitive vector in `R^3` whose first basis vector is
/// primitive and has a zero coordinate.
pub fn kernel_basis_with_zero_coordinate(a1: &[GaussInt; 3]) -> Result<LambdaBasis, LatticeError> {
    let g = a1.iter().fold(GaussInt::zero(), |acc, e| gauss_gcd(&acc, e));
    if !g.is_unit() {
        return Err(LatticeError::NotPrimitive);
    }
    let b2: [GaussInt; 3] = if a1[0].is_zero() && a1[1].is_zero() {
        [GaussInt::one(), GaussInt::zero(), GaussInt::zero()]
    } else {
        let d = gauss_gcd(&a1[0].conj(), &a1[1].conj());
        [
            (-&a1[1].conj()).div_exact(&d).expect("gcd divides"),
            a1[0].conj().div_exact(&d).expect("gcd divides"),
            GaussInt::zero(),
        ]
    };
    let lam = kernel_basis(&Mat::from_cols(vec![a1.to_vec()]));
    if lam.basis.cols != 2 {
        return Err(LatticeError::RankMismatch { got: lam.basis.cols, want: 2 });
    }
    // coordinates of b2 in the kernel basis, by Cramer on two independent rows
    let b = &lam.basis;
    let mut coords = None;
    for r1 in 0..3 {
        for r2 in r1 + 1..3 {
            let det = &(b.at(r1, 0) * b.at(r2, 1)) - &(b.at(r1, 1) * b.at(r2, 0));
            if det.is_zero() {
                continue;
            }
            let d1 = &(&b2[r1] * b.at(r2, 1)) - &(b.at(r1, 1) * &b2[r2]);
            let d2 = &(b.at(r1, 0) * &b2[r2]) - &(&b2[r1] * b.at(r2, 0));
            if let (Some(x1), Some(x2)) = (d1.div_exact(&det), d2.div_exact(&det)) {
                coords = Some((x1, x2));
            }
            break;
        }
        if coords.is_some() {
            break;
        }
    }
    let (x1, x2) = coords.expect("b2 lies in the kernel lattice");
    for i in 0..3 {
        debug_assert_eq!(&(b.at(i, 0) * &x1) + &(b.at(i, 1) * &x2), b2[i]);
    }
    // complete the primitive coordinate pair to a unimodular change of basis
    let (g, s, t) = gauss_ext_gcd(&x1, &x2);
    assert!(g.is_unit(), "primitive b2 has coprime coordinates");
    let b3: Vec<GaussInt> = (0..3)
        .map(|i| &(b.at(i, 0) * &-&t) + &(b.at(i, 1) * &s))
        .collect();
    let basis = Mat::from_cols(vec![b2.to_vec(), b3]);
    let (gram, disc) = gram_of(&basis);
    debug_assert_eq!(disc, lam.disc, "index-one change of basis");
    Ok(LambdaBasis { basis, gram, disc })
}

/// Conjugated-cofactor cross product of `n-1` vectors in `R^n`; orthogonal
/// to every input, with `e2 x e3 = e1` in dimension 3.
pub fn cross_product(vectors: &[Vec<GaussInt>]) -> Vec<GaussInt> {
    let n = vectors.len() + 1;
    assert!(vectors.iter().all(|v| v.len() == n), "need n-1 vectors of length n");
    let b = Mat::from_cols(vectors.to_vec());
    (0..n)
        .map(|skip| {
            let rows: Vec<Vec<GaussInt>> = (0..n).filter(|&i| i != skip).map(|i| b.row(i)).collect();
            let minor = Mat::from_rows(rows).det();
            let signed = if skip % 2 == 0 { minor } else { -minor };
            signed.conj()
        })
        .collect()
}

/// Norm of a column vector.
pub fn vec_norm(v: &[GaussInt]) -> BigInt {
    v.iter().map(GaussInt::norm).sum()
}

/// Inner product `w* v`.
pub fn vec_dot(w: &[GaussInt], v: &[GaussInt]) -> GaussInt {
    w.iter()
        .zip(v)
        .fold(GaussInt::zero(), |acc, (a, b)| &acc + &(&a.conj() * b))
}

/// The integral Gram matrix of `Q' = (|d2|^2 / lambda) Q` on a kernel basis
/// of a 2-icube's complement, together with that basis.
pub fn scaled_form_q_prime(
    a0: &Mat,
    ring: Ring,
) -> Result<(HermForm2, LambdaBasis), LatticeError> {
    assert_eq!((a0.rows, a0.cols), (4, 2), "needs a 2-icube in dimension 4");
    let lambda = vec_norm(&a0.col(0));
    let d2 = det_divisors(a0).pop().expect("two divisors");
    let d2n = d2.norm();
    let lam = kernel_basis(a0);
    let scale = GaussInt::from_int(d2n.clone());
    let lambda_g = GaussInt::from_int(lambda.clone());
    let mut entries = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let num = &scale * lam.gram.at(i, j);
            entries.push(num.div_exact(&lambda_g).ok_or(LatticeError::IntegralityViolation)?);
        }
    }
    let form = HermForm2::new(
        entries[0].re.clone(),
        entries[1].clone(),
        entries[3].re.clone(),
        ring,
    )
    .expect("positive definite scaled form");
    Ok((form, lam))
}

/// The four projected cross products of a 2-icube in `R^4`: `x_h` crosses
/// the two columns with coordinate `h` deleted, re-embedded with 0 at `h`.
pub fn xh_vectors(a0: &Mat) -> [Vec<GaussInt>; 4] {
    assert_eq!((a0.rows, a0.cols), (4, 2), "needs a 2-icube in dimension 4");
    std::array::from_fn(|h| {
        let idx: Vec<usize> = (0..4).filter(|&i| i != h).collect();
        let u: Vec<GaussInt> = idx.iter().map(|&i| a0.at(i, 0).clone()).collect();
        let v: Vec<GaussInt> = idx.iter().map(|&i| a0.at(i, 1).clone()).collect();
        let c = cross_product(&[u, v]);
        let mut out = vec![GaussInt::zero(); 4];
        for (slot, &i) in idx.iter().enumerate() {
            out[i] = c[slot].clone();
        }
        out
    })
}
