//! Dense square matrices over a [`Ring`].
//!
//! Row operations always act by left multiplication and column operations by
//! right multiplication, which is the only sound convention over a
//! noncommutative division ring. All elimination code in [`elim`] follows it.

mod certificate;
pub mod elim;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Orientation, Result};
use crate::scalar::Ring;

pub use certificate::{
    verify_certificate, CommutatorCertificate, CommutatorPair, Construction, PairFlags, SimilarityWitness,
    VerificationReport, VerifyFailure,
};
pub use elim::{invert, left_kernel_vector, rank, Echelon};
pub use poly::{local_degree, local_minimal_polynomial, minimal_polynomial, poly_eval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<R: Ring> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    /// Row-major construction; `entries.len()` must be `n * n` with `n >= 1`.
    pub fn new(ring: R, n: usize, entries: Vec<R::Elem>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("matrix size must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Shape(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        Ok(Matrix { ring, n, entries })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("rows must all have length equal to the row count".into()));
        }
        Matrix::new(ring, n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(ring: R, n: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        assert!(n >= 1, "matrix size must be at least 1");
        let entries = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Matrix { ring, n, entries }
    }

    pub fn zero(ring: R, n: usize) -> Self {
        let z = ring.zero();
        Matrix::from_fn(ring, n, |_, _| z.clone())
    }

    pub fn identity(ring: R, n: usize) -> Self {
        Matrix::scalar(ring.clone(), n, ring.one())
    }

    /// `λ·1_n`.
    pub fn scalar(ring: R, n: usize, lambda: R::Elem) -> Self {
        let z = ring.zero();
        Matrix::from_fn(ring, n, |i, j| if i == j { lambda.clone() } else { z.clone() })
    }

    pub fn diagonal(ring: R, diag: &[R::Elem]) -> Self {
        let z = ring.zero();
        Matrix::from_fn(
            ring,
            diag.len(),
            |i, j| {
                if i == j {
                    diag[i].clone()
                } else {
                    z.clone()
                }
            },
        )
    }

    /// Matrix unit `e_ij` (zero-based indices).
    pub fn unit(ring: R, n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zero(ring.clone(), n);
        m.set(i, j, ring.one());
        m
    }

    pub fn block_diagonal(blocks: &[Matrix<R>]) -> Self {
        assert!(!blocks.is_empty());
        let ring = blocks[0].ring.clone();
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = Matrix::zero(ring, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        out
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<R::Elem>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn diag(&self) -> Vec<R::Elem> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.ring.clone(), self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> R::Elem {
        (0..self.n).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.ring.clone(), self.n)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.ring.is_zero(self.get(i, i)))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.ring.is_zero(self.get(i, j))))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.transpose().is_upper_triangular()
    }

    pub fn is_triangular(&self, orientation: Orientation) -> bool {
        match orientation {
            Orientation::Upper => self.is_upper_triangular(),
            Orientation::Lower => self.is_lower_triangular(),
        }
    }

    /// Orientation in which the matrix is triangular, preferring upper.
    pub fn triangular_orientation(&self) -> Option<Orientation> {
        if self.is_upper_triangular() {
            Some(Orientation::Upper)
        } else if self.is_lower_triangular() {
            Some(Orientation::Lower)
        } else {
            None
        }
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.ring.is_one(self.get(i, i)))
    }

    /// `Some(λ)` when the matrix equals `λ·1_n`.
    pub fn as_scalar(&self) -> Option<R::Elem> {
        let lambda = self.get(0, 0).clone();
        (*self == Matrix::scalar(self.ring.clone(), self.n, lambda.clone())).then_some(lambda)
    }

    /// Central in `M_n(R)`: a scalar matrix with a central scalar.
    pub fn is_central(&self) -> bool {
        self.as_scalar().is_some_and(|l| self.ring.is_central(&l))
    }

    /// `λ·self` (every entry multiplied by `λ` on the left).
    pub fn scale_left(&self, lambda: &R::Elem) -> Self {
        self.map(|x| self.ring.mul(lambda, x))
    }

    /// `self·λ`.
    pub fn scale_right(&self, lambda: &R::Elem) -> Self {
        self.map(|x| self.ring.mul(x, lambda))
    }

    /// `self·diag(d)`: column `j` multiplied on the right by `d[j]`.
    pub fn scale_columns(&self, d: &[R::Elem]) -> Self {
        assert_eq!(d.len(), self.n);
        Matrix::from_fn(self.ring.clone(), self.n, |i, j| self.ring.mul(self.get(i, j), &d[j]))
    }

    pub fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Square submatrix on rows and columns `from..n`.
    pub fn trailing(&self, from: usize) -> Self {
        let m = self.n - from;
        Matrix::from_fn(self.ring.clone(), m, |i, j| self.get(from + i, from + j).clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Matrix::identity(self.ring.clone(), self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(v.len(), self.n);
        let r = &self.ring;
        (0..self.n).map(|i| r.dot(self.row(i).iter().zip(v))).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.n != other.n {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| self.ring.add(a, b)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| self.ring.sub(a, b)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n;
        let r = &self.ring;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let row = self.row(i);
            for j in 0..n {
                out.push(r.dot((0..n).map(|k| (&row[k], other.get(k, j)))));
            }
        }
        Ok(Matrix {
            ring: r.clone(),
            n,
            entries: out,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// First entry (row-major) where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|idx| (idx / self.n, idx % self.n))
    }

    /// `v · self · v_inv`.
    pub fn conjugate_by(&self, w: &SimilarityWitness<R>) -> Self {
        &(&w.v * self) * &w.v_inv
    }
}

/// `[x, y] = xy - yx`.
pub fn commutator<R: Ring>(x: &Matrix<R>, y: &Matrix<R>) -> Result<Matrix<R>> {
    x.try_mul(y)?.try_sub(&y.try_mul(x)?)
}

/// Product of a list of matrices, `None` if the list is empty.
pub fn product<'a, R: Ring + 'a>(ms: impl IntoIterator<Item = &'a Matrix<R>>) -> Option<Matrix<R>> {
    let mut it = ms.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, m| &acc * m))
}

impl<R: Ring> Add for &Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, rhs: Self) -> Matrix<R> {
        self.try_add(rhs).expect("matrix addition operands must match")
    }
}

impl<R: Ring> Sub for &Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, rhs: Self) -> Matrix<R> {
        self.try_sub(rhs).expect("matrix subtraction operands must match")
    }
}

impl<R: Ring> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: Self) -> Matrix<R> {
        self.try_mul(rhs).expect("matrix multiplication operands must match")
    }
}

impl<R: Ring> Neg for &Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        self.map(|x| self.ring.neg(x))
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| self.ring.format_elem(x)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
