//! Triangular matrices as products of two zero-diagonal matrices, and the
//! resulting two-commutator certificates.

use crate::error::{Error, Orientation, Result};
use crate::kernels::zero_diag_commutator;
use crate::matrix::{CommutatorCertificate, CommutatorPair, Construction, Matrix};
use crate::scalar::Ring;

fn upper_factor<R: Ring>(a: &Matrix<R>) -> (Matrix<R>, Matrix<R>) {
    let ring = a.ring().clone();
    let n = a.n();
    let mut b = Matrix::zero(ring.clone(), n);
    let mut c = Matrix::zero(ring.clone(), n);
    // Zero-based transcription of the one-based index formulas.
    for j in 1..n {
        b.set(j, 0, a.get(j, n - 1).clone());
    }
    b.set(0, 1, ring.one());
    for j in 0..n {
        for k in 2..n {
            b.set(j, k, a.get(j, k - 1).clone());
        }
    }
    c.set(1, 0, a.get(0, 0).clone());
    c.set(1, n - 1, a.get(0, n - 1).clone());
    c.set(0, n - 1, ring.one());
    for k in 1..n - 1 {
        c.set(k + 1, k, ring.one());
    }
    (b, c)
}

/// Zero-diagonal `(b, c)` with `b·c = a` for triangular `a`, `n >= 3`.
///
/// The lower case transposes the upper factors of `aᵀ`. Every term of `b·c`
/// has a factor in {0, 1}, so transposition reverses the product exactly.
pub fn triangular_zero_diag_factor<R: Ring>(a: &Matrix<R>, orientation: Orientation) -> Result<(Matrix<R>, Matrix<R>)> {
    if a.n() < 3 {
        return Err(Error::Size { n: a.n(), min: 3 });
    }
    if !a.is_triangular(orientation) {
        return Err(Error::NotTriangular(orientation));
    }
    Ok(match orientation {
        Orientation::Upper => upper_factor(a),
        Orientation::Lower => {
            let (b, c) = upper_factor(&a.transpose());
            (c.transpose(), b.transpose())
        }
    })
}

/// Two-pair certificate: one zero-diagonal commutator per factor.
pub fn triangular_two_commutators<R: Ring>(
    a: &Matrix<R>,
    orientation: Orientation,
) -> Result<CommutatorCertificate<R>> {
    let (b, c) = triangular_zero_diag_factor(a, orientation)?;
    let (x1, y1) = zero_diag_commutator(&b)?;
    let (x2, y2) = zero_diag_commutator(&c)?;
    Ok(CommutatorCertificate::new(
        a.clone(),
        vec![CommutatorPair::new(x1, y1), CommutatorPair::new(x2, y2)],
    )
    .with_construction(Construction::TriangularTwo))
}
