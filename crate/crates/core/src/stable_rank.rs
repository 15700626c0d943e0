//! Triangular decompositions over division rings and the commutator
//! pipelines built on them.
//!
//! `vw_decompose` writes an invertible `a` as `x·y·z` (lower, upper
//! unitriangular, lower unitriangular). `bc_similarity` turns any `a` into
//! `w·a·w⁻¹ = b·c` with `b` lower triangular and `c` upper unitriangular.

use crate::division::two_commutators_2x2;
use crate::error::{Error, Orientation, Result};
use crate::kernels::tracezero_triangular_commutator;
use crate::matrix::elim::require_division;
use crate::matrix::{
    invert, left_kernel_vector, rank, CommutatorCertificate, CommutatorPair, Construction, Matrix, SimilarityWitness,
};
use crate::scalar::{distinct_central, invertible_zero_sum, Ring};
use crate::triangular::triangular_two_commutators;

/// `a = x·y·z` with `x` lower triangular, `y` upper and `z` lower
/// triangular, both with unit diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularDecomposition<R: Ring> {
    pub x: Matrix<R>,
    pub y: Matrix<R>,
    pub z: Matrix<R>,
}

impl<R: Ring> TriangularDecomposition<R> {
    /// Shapes, unit diagonals and the product `x·y·z = a`.
    pub fn check(&self, a: &Matrix<R>) -> bool {
        self.x.is_lower_triangular()
            && self.y.is_upper_triangular()
            && self.y.has_unit_diagonal()
            && self.z.is_lower_triangular()
            && self.z.has_unit_diagonal()
            && &(&self.x * &self.y) * &self.z == *a
    }
}

/// Column reduction `a·q = x` with `x` lower triangular.
///
/// Uses column swaps and `col_j -= col_i·c` only, so `q` is invertible and
/// a zero row of `a` stays zero in `x`. Returns `(x, q, q⁻¹)`.
pub fn khermite_column_reduce<R: Ring>(a: &Matrix<R>) -> Result<(Matrix<R>, Matrix<R>, Matrix<R>)> {
    let ring = a.ring().clone();
    require_division(&ring)?;
    let n = a.n();
    let mut m = a.clone();
    let mut q = Matrix::identity(ring.clone(), n);
    let mut q_inv = Matrix::identity(ring.clone(), n);
    for i in 0..n {
        let Some(p) = (i..n).find(|&j| !ring.is_zero(m.get(i, j))) else {
            continue;
        };
        if p != i {
            swap_columns(&mut m, i, p);
            swap_columns(&mut q, i, p);
            swap_rows(&mut q_inv, i, p);
        }
        let pivot_inv = ring.inv(m.get(i, i))?;
        for j in i + 1..n {
            if ring.is_zero(m.get(i, j)) {
                continue;
            }
            let c = ring.mul(&pivot_inv, m.get(i, j));
            // col_j -= col_i·c on m and q; row_i += c·row_j on q⁻¹.
            for r in 0..n {
                let v = ring.sub(m.get(r, j), &ring.mul(m.get(r, i), &c));
                m.set(r, j, v);
                let v = ring.sub(q.get(r, j), &ring.mul(q.get(r, i), &c));
                q.set(r, j, v);
            }
            for col in 0..n {
                let v = ring.add(q_inv.get(i, col), &ring.mul(&c, q_inv.get(j, col)));
                q_inv.set(i, col, v);
            }
        }
    }
    debug_assert!(m.is_lower_triangular());
    Ok((m, q, q_inv))
}

fn swap_columns<R: Ring>(m: &mut Matrix<R>, i: usize, j: usize) {
    for r in 0..m.n() {
        let a = m.get(r, i).clone();
        let b = m.get(r, j).clone();
        m.set(r, i, b);
        m.set(r, j, a);
    }
}

fn swap_rows<R: Ring>(m: &mut Matrix<R>, i: usize, j: usize) {
    for c in 0..m.n() {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        m.set(i, c, b);
        m.set(j, c, a);
    }
}

/// `a = x·y·z` for invertible `a` by left-row LU with column repair.
///
/// A zero pivot `(k, k)` is repaired by `col_k += col_j` for the first
/// `j > k` with a nonzero entry in row `k`; the repairs collect into `z⁻¹`.
pub fn vw_decompose<R: Ring>(a: &Matrix<R>) -> Result<TriangularDecomposition<R>> {
    let ring = a.ring().clone();
    require_division(&ring)?;
    let n = a.n();
    let mut m = a.clone();
    let mut z = Matrix::identity(ring.clone(), n);
    let mut l = Matrix::identity(ring.clone(), n);
    for k in 0..n {
        if ring.is_zero(m.get(k, k)) {
            let Some(j) = (k + 1..n).find(|&j| !ring.is_zero(m.get(k, j))) else {
                return Err(Error::Singular { rank: rank(a)?, n });
            };
            for r in 0..n {
                let v = ring.add(m.get(r, k), m.get(r, j));
                m.set(r, k, v);
            }
            // z ← (I - e_jk)·z, i.e. row_j -= row_k.
            for c in 0..n {
                let v = ring.sub(z.get(j, c), z.get(k, c));
                z.set(j, c, v);
            }
        }
        let pivot_inv = ring.inv(m.get(k, k))?;
        for i in k + 1..n {
            if ring.is_zero(m.get(i, k)) {
                continue;
            }
            let f = ring.mul(m.get(i, k), &pivot_inv);
            for c in k..n {
                let v = ring.sub(m.get(i, c), &ring.mul(&f, m.get(k, c)));
                m.set(i, c, v);
            }
            l.set(i, k, f);
        }
    }
    // a·z⁻¹ = l·m with m upper triangular; split m = d·y.
    let d: Vec<R::Elem> = m.diag();
    let mut y = m;
    for (k, dk) in d.iter().enumerate() {
        let s = ring.inv(dk)?;
        for c in k..n {
            let v = ring.mul(&s, y.get(k, c));
            y.set(k, c, v);
        }
    }
    let x = l.scale_columns(&d);
    Ok(TriangularDecomposition { x, y, z })
}

/// `w·a·w⁻¹ = b·c`, `b` lower triangular, `c` upper unitriangular.
pub fn bc_similarity<R: Ring>(a: &Matrix<R>) -> Result<(SimilarityWitness<R>, Matrix<R>, Matrix<R>)> {
    require_division(a.ring())?;
    if invert(a).is_ok() {
        let TriangularDecomposition { x, y, z } = vw_decompose(a)?;
        let b = &z * &x;
        let w = SimilarityWitness::from_invertible(z)?;
        return Ok((w, b, y));
    }
    general_bc(a)
}

/// Always goes through the column reduction, which keeps a zero last row
/// visible as `b_nn = 0`.
fn general_bc<R: Ring>(a: &Matrix<R>) -> Result<(SimilarityWitness<R>, Matrix<R>, Matrix<R>)> {
    let (x, _q, q_inv) = khermite_column_reduce(a)?;
    let TriangularDecomposition { x: u, y: v, z: w } = vw_decompose(&q_inv)?;
    let b = &(&w * &x) * &u;
    let w = SimilarityWitness::from_invertible(w)?;
    Ok((w, b, v))
}

fn require_central_supply<R: Ring>(ring: &R, n: usize) -> Result<()> {
    distinct_central(ring, n).map(|_| ())
}

/// Invertible `a`, `n >= 3`: three commutators after a similarity.
///
/// With `e = diag(λ)` and `Σλ = 0`, `e·c` is upper triangular of trace zero
/// and `b·e⁻¹` is lower triangular, so `w·a·w⁻¹ = (b·e⁻¹)·(e·c)` costs two
/// commutators plus one.
pub fn invertible_three_commutators<R: Ring>(a: &Matrix<R>) -> Result<CommutatorCertificate<R>> {
    let ring = a.ring().clone();
    require_division(&ring)?;
    let n = a.n();
    if n < 3 {
        return Err(Error::Size { n, min: 3 });
    }
    invert(a)?;
    let lambdas = invertible_zero_sum(&ring, n)?;
    require_central_supply(&ring, n)?;
    let (w, b, c) = bc_similarity(a)?;
    let inv_lambdas: Vec<R::Elem> = lambdas.iter().map(|l| ring.inv(l)).collect::<Result<_>>()?;
    let ec = Matrix::diagonal(ring.clone(), &lambdas).try_mul(&c)?;
    let be = b.scale_columns(&inv_lambdas);
    let lower = triangular_two_commutators(&be, Orientation::Lower)?;
    let (x3, y3) = tracezero_triangular_commutator(&ec, Orientation::Upper)?;
    let mut pairs = lower.pairs;
    pairs.push(CommutatorPair::new(x3, y3));
    Ok(CommutatorCertificate::new(a.clone(), pairs)
        .with_similarity(w)
        .with_construction(Construction::InvertibleThree))
}

fn require_three_elements<R: Ring>(ring: &R) -> Result<()> {
    let d = ring.descriptor();
    if d.cardinality.at_least(3) {
        Ok(())
    } else {
        Err(Error::FieldTooSmall {
            p: d.prime().unwrap_or(0),
            needed: 3,
        })
    }
}

/// Singular `a`: two commutators after a similarity.
///
/// A left-kernel row moved to the bottom makes the last row zero, so
/// `b_nn = 0`. With nonzero `e_1 + ... + e_{n-1} = 0`, `e_n = 1`, the
/// matrices `b' = b·e⁻¹` (corner `-Σ b_jj e_j⁻¹`) and `c' = e·c`
/// (corner 0) are triangular of trace zero with `b'·c' = b·c`.
pub fn singular_two_commutators<R: Ring>(a: &Matrix<R>) -> Result<CommutatorCertificate<R>> {
    let ring = a.ring().clone();
    require_division(&ring)?;
    require_three_elements(&ring)?;
    let n = a.n();
    let Some(u) = left_kernel_vector(a)? else {
        return Err(Error::NotSingular);
    };
    if n < 2 {
        return Err(Error::Size { n, min: 2 });
    }
    if n == 2 {
        return two_commutators_2x2(a);
    }
    let m = u
        .iter()
        .position(|x| !ring.is_zero(x))
        .expect("kernel vector is nonzero");
    let mut rows: Vec<Vec<R::Elem>> = (0..n)
        .filter(|&i| i != m)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    rows.push(u);
    let p = SimilarityWitness::from_invertible(Matrix::from_rows(ring.clone(), rows)?)?;
    let a1 = a.conjugate_by(&p);
    debug_assert!(a1.row(n - 1).iter().all(|x| ring.is_zero(x)));

    let (w, b, c) = general_bc(&a1)?;
    if !ring.is_zero(b.get(n - 1, n - 1)) {
        return Err(Error::Internal("corner entry of b is nonzero".into()));
    }
    let mut e = invertible_zero_sum(&ring, n - 1)?;
    e.push(ring.one());
    let e_inv: Vec<R::Elem> = e.iter().map(|x| ring.inv(x)).collect::<Result<_>>()?;

    let mut b1 = b.scale_columns(&e_inv);
    let corner = (0..n - 1).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(b.get(j, j), &e_inv[j])));
    b1.set(n - 1, n - 1, ring.neg(&corner));
    let mut c1 = Matrix::diagonal(ring.clone(), &e).try_mul(&c)?;
    c1.set(n - 1, n - 1, ring.zero());
    let similar = a1.conjugate_by(&w);
    if b1.try_mul(&c1)? != similar {
        return Err(Error::Internal("b'·c' does not reproduce the conjugated matrix".into()));
    }

    let (x1, y1) = tracezero_triangular_commutator(&b1, Orientation::Lower)?;
    let (x2, y2) = tracezero_triangular_commutator(&c1, Orientation::Upper)?;
    Ok(CommutatorCertificate::new(
        a.clone(),
        vec![CommutatorPair::new(x1, y1), CommutatorPair::new(x2, y2)],
    )
    .with_similarity(p.then(&w))
    .with_construction(Construction::SingularTwo))
}
