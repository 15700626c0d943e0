//! Single-commutator constructions: zero-diagonal matrices and trace-zero
//! triangular matrices.

use crate::error::{Error, Orientation, Result};
use crate::matrix::{CommutatorCertificate, CommutatorPair, Construction, Matrix};
use crate::scalar::{distinct_central, Ring};

/// `(A, B)` with `[A, B] = c`, `A = diag(0, 1, ..., n-1)`.
///
/// `B_jk = (a_j - a_k)⁻¹ c_jk`; the differences are central and invertible.
pub fn zero_diag_commutator<R: Ring>(c: &Matrix<R>) -> Result<(Matrix<R>, Matrix<R>)> {
    if !c.has_zero_diagonal() {
        return Err(Error::NotZeroDiagonal);
    }
    let ring = c.ring().clone();
    let n = c.n();
    let a = distinct_central(&ring, n)?;
    let mut b = Matrix::zero(ring.clone(), n);
    for j in 0..n {
        for k in 0..n {
            if j == k || ring.is_zero(c.get(j, k)) {
                continue;
            }
            let d = ring.inv(&ring.sub(&a[j], &a[k]))?;
            b.set(j, k, ring.mul(&d, c.get(j, k)));
        }
    }
    Ok((Matrix::diagonal(ring, &a), b))
}

fn upper_tracezero<R: Ring>(t: &Matrix<R>) -> Result<(Matrix<R>, Matrix<R>)> {
    let ring = t.ring().clone();
    let n = t.n();
    let x = Matrix::from_fn(
        ring.clone(),
        n,
        |i, j| if j == i + 1 { ring.one() } else { ring.zero() },
    );
    let mut y = Matrix::zero(ring.clone(), n);
    // Subdiagonal chain: Y[i+1][i] = T[i][i] + Y[i][i-1], closed by the trace.
    let mut prev = ring.zero();
    for i in 0..n - 1 {
        prev = ring.add(t.get(i, i), &prev);
        y.set(i + 1, i, prev.clone());
    }
    if !ring.is_zero(&ring.add(t.get(n - 1, n - 1), &prev)) {
        return Err(Error::TraceNonzero);
    }
    // Diagonal d >= 1: Y[i+1][i+d] = T[i][i+d] + Y[i][i+d-1], first row zero.
    for d in 1..n {
        for i in 0..n - d {
            let v = ring.add(t.get(i, i + d), y.get(i, i + d - 1));
            y.set(i + 1, i + d, v);
        }
    }
    Ok((x, y))
}

/// `(X, Y)` with `[X, Y] = t` for triangular `t` of trace zero.
///
/// Upper: `X` is the superdiagonal shift and `Y` solves the diagonal
/// recurrences with its first row zero. Lower: transpose of the upper
/// construction for `tᵀ`, which is valid because `X` has entries in {0, 1}.
pub fn tracezero_triangular_commutator<R: Ring>(
    t: &Matrix<R>,
    orientation: Orientation,
) -> Result<(Matrix<R>, Matrix<R>)> {
    if !t.is_triangular(orientation) {
        return Err(Error::NotTriangular(orientation));
    }
    match orientation {
        Orientation::Upper => upper_tracezero(t),
        Orientation::Lower => {
            let (x, y) = upper_tracezero(&t.transpose())?;
            Ok((x.transpose(), -&y.transpose()))
        }
    }
}

/// One-pair certificate for a zero-diagonal matrix.
pub fn zero_diag_certificate<R: Ring>(c: &Matrix<R>) -> Result<CommutatorCertificate<R>> {
    let (a, b) = zero_diag_commutator(c)?;
    Ok(CommutatorCertificate::new(c.clone(), vec![CommutatorPair::new(a, b)])
        .with_construction(Construction::ZeroDiagonal))
}

/// One-pair certificate for a trace-zero triangular matrix.
pub fn tracezero_certificate<R: Ring>(t: &Matrix<R>, orientation: Orientation) -> Result<CommutatorCertificate<R>> {
    let (x, y) = tracezero_triangular_commutator(t, orientation)?;
    Ok(CommutatorCertificate::new(t.clone(), vec![CommutatorPair::new(x, y)])
        .with_construction(Construction::TraceZeroTriangular))
}
