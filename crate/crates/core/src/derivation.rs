//! Sums of products of commutators with a fixed matrix `a`.
//!
//! `D(x) = [a, x]` is the inner derivation of `a`. Over a field, every
//! matrix is a sum of products `D(p)·D(q)` exactly when the minimal
//! polynomial of `a` has degree at least 3.

use crate::error::{Error, Result};
use crate::matrix::elim::require_field;
use crate::matrix::{commutator, invert, local_degree, minimal_polynomial, rank, Echelon, Matrix};
use crate::scalar::Ring;

fn d<R: Ring>(a: &Matrix<R>, x: &Matrix<R>) -> Result<Matrix<R>> {
    commutator(a, x)
}

/// `x·D³(y)·z = D(x·D²(y)·z) - D(x)·D(D(y)·z) - D(x·D(y))·D(z) + 2·D(x)·D(y)·D(z)`.
pub fn herstein_identity_check<R: Ring>(a: &Matrix<R>, x: &Matrix<R>, y: &Matrix<R>, z: &Matrix<R>) -> Result<bool> {
    let dy = d(a, y)?;
    let d2y = d(a, &dy)?;
    let d3y = d(a, &d2y)?;
    let (dx, dz) = (d(a, x)?, d(a, z)?);
    let lhs = x.try_mul(&d3y)?.try_mul(z)?;
    let t1 = d(a, &x.try_mul(&d2y)?.try_mul(z)?)?;
    let t2 = dx.try_mul(&d(a, &dy.try_mul(z)?)?)?;
    let t3 = d(a, &x.try_mul(&dy)?)?.try_mul(&dz)?;
    let t4 = dx.try_mul(&dy)?.try_mul(&dz)?;
    let rhs = t1.try_sub(&t2)?.try_sub(&t3)?.try_add(&t4)?.try_add(&t4)?;
    Ok(lhs == rhs)
}

/// `x·D(b)·D(c)·z = D(x·b)·D(c·z) - D(x)·D(b·c·z)`, given `D(b)·c = 0`.
pub fn lder_identity_check<R: Ring>(
    a: &Matrix<R>,
    b: &Matrix<R>,
    c: &Matrix<R>,
    x: &Matrix<R>,
    z: &Matrix<R>,
) -> Result<bool> {
    let db = d(a, b)?;
    if !db.try_mul(c)?.is_zero() {
        return Err(Error::Precondition("[a, b]·c is nonzero".into()));
    }
    let lhs = x.try_mul(&db)?.try_mul(&d(a, c)?)?.try_mul(z)?;
    let rhs = d(a, &x.try_mul(b)?)?
        .try_mul(&d(a, &c.try_mul(z)?)?)?
        .try_sub(&d(a, x)?.try_mul(&d(a, &b.try_mul(c)?.try_mul(z)?)?)?)?;
    Ok(lhs == rhs)
}

/// Degree of the minimal polynomial.
pub fn minimal_polynomial_degree<R: Ring>(a: &Matrix<R>) -> Result<usize> {
    Ok(minimal_polynomial(a)?.len() - 1)
}

/// Candidate vectors: nonzero 0/1 vectors in mask order, then the grids
/// `{0..k}ⁿ` for `k = 2, 3, ...` restricted to vectors not seen before.
fn candidates<R: Ring>(ring: &R, n: usize, max_k: usize) -> impl Iterator<Item = Vec<R::Elem>> + '_ {
    let binary = (1u64..1 << n).map(move |mask| {
        (0..n)
            .map(|i| if mask >> i & 1 == 1 { ring.one() } else { ring.zero() })
            .collect::<Vec<_>>()
    });
    let grids = (2..=max_k).flat_map(move |k| {
        let total = (k + 1).pow(n as u32);
        (0..total).filter_map(move |mut code| {
            let mut digits = Vec::with_capacity(n);
            for _ in 0..n {
                digits.push(code % (k + 1));
                code /= k + 1;
            }
            digits
                .contains(&k)
                .then(|| digits.iter().map(|&t| ring.from_int(t as i64)).collect())
        })
    });
    binary.chain(grids)
}

/// A vector `v` with `v, a·v, a²·v` independent, if the minimal
/// polynomial of `a` has degree at least 3.
pub fn krylov_witness<R: Ring>(a: &Matrix<R>) -> Result<Option<Vec<R::Elem>>> {
    let ring = a.ring().clone();
    require_field(&ring)?;
    if minimal_polynomial_degree(a)? < 3 {
        return Ok(None);
    }
    let n = a.n();
    let max_k = match ring.descriptor().prime() {
        Some(p) => (p as usize - 1).max(1),
        None => 2 * n + 2,
    };
    for v in candidates(&ring, n, max_k) {
        if local_degree(a, &v)? >= 3 {
            return Ok(Some(v));
        }
    }
    Err(Error::Internal(
        "no Krylov witness found in the candidate family".into(),
    ))
}

/// Rank-one `b = v ⊗ f` and the data that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationWitness<R: Ring> {
    pub b: Matrix<R>,
    pub v: Vec<R::Elem>,
    /// Functional with `f(v) = f(a·v) = 0` and `f(a²·v) = 1`.
    pub f: Vec<R::Elem>,
}

/// `b` with `[a, b]·b = 0` and `[a, b]² = -b ≠ 0`.
pub fn lder2_witness<R: Ring>(a: &Matrix<R>) -> Result<DerivationWitness<R>> {
    let ring = a.ring().clone();
    require_field(&ring)?;
    let degree = minimal_polynomial_degree(a)?;
    let v = krylov_witness(a)?.ok_or(Error::DegreeTooLow { degree })?;
    let n = a.n();
    let av = a.apply(&v);
    let a2v = a.apply(&av);
    let mut cols = vec![v.clone(), av, a2v];
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        cols.push((0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect());
        let m = Matrix::from_fn(ring.clone(), n, |r, c| {
            cols.get(c).map_or_else(|| ring.zero(), |col| col[r].clone())
        });
        if rank(&m)? < cols.len() {
            cols.pop();
        }
    }
    let s = Matrix::from_fn(ring.clone(), n, |r, c| cols[c][r].clone());
    let f = invert(&s)?.row(2).to_vec();
    let b = Matrix::from_fn(ring.clone(), n, |i, j| ring.mul(&v[i], &f[j]));

    let db = commutator(a, &b)?;
    let ok = (&b * &b).is_zero()
        && (&(&b * a) * &b).is_zero()
        && &(&(&b * a) * a) * &b == b
        && (&db * &b).is_zero()
        && &db * &db == -&b;
    if !ok {
        return Err(Error::Internal("rank-one witness fails its identities".into()));
    }
    Ok(DerivationWitness { b, v, f })
}

/// `x = Σ [a, p_j]·[a, q_j]` with at most `n` summands.
///
/// With `b = v ⊗ f`, `r_j = -e_j ⊗ g` where `g(v) = 1`, and
/// `s_j = (a²v) ⊗ e_j*`, one has `Σ r_j [a, b]² s_j = 1`; then
/// `p_j = x·r_j·b` and `q_j = b·s_j`. Pairs with `p_j = 0` are dropped.
pub fn tder_decompose<R: Ring>(a: &Matrix<R>, x: &Matrix<R>) -> Result<Vec<(Matrix<R>, Matrix<R>)>> {
    let ring = a.ring().clone();
    if x.ring() != &ring {
        return Err(Error::RingMismatch);
    }
    if x.n() != a.n() {
        return Err(Error::Shape(format!("{}x{} vs {}x{}", a.n(), a.n(), x.n(), x.n())));
    }
    let DerivationWitness { b, v, .. } = lder2_witness(a)?;
    let n = a.n();
    let m = v.iter().position(|t| !ring.is_zero(t)).expect("witness is nonzero");
    let g = ring.inv(&v[m])?;
    let a2v = a.apply(&a.apply(&v));
    let mut pairs = Vec::new();
    for j in 0..n {
        let mut r = Matrix::zero(ring.clone(), n);
        r.set(j, m, ring.neg(&g));
        let s = Matrix::from_fn(
            ring.clone(),
            n,
            |i, k| if k == j { a2v[i].clone() } else { ring.zero() },
        );
        let p = &(x * &r) * &b;
        if p.is_zero() {
            continue;
        }
        pairs.push((p, &b * &s));
    }
    let sum = pairs.iter().try_fold(Matrix::zero(ring.clone(), n), |acc, (p, q)| {
        acc.try_add(&commutator(a, p)?.try_mul(&commutator(a, q)?)?)
    })?;
    if sum != *x {
        return Err(Error::Internal(
            "derivation decomposition does not reproduce the target".into(),
        ));
    }
    Ok(pairs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport<R: Ring> {
    pub a: Matrix<R>,
    pub dimension: usize,
    /// Independent products `[a, e_ij]·[a, e_kl]` spanning the set.
    pub basis: Vec<Matrix<R>>,
    pub full: bool,
    pub minimal_polynomial_degree: usize,
}

/// Span of all `[a, e_ij]·[a, e_kl]`, checked against the minimal polynomial.
pub fn product_span_dim<R: Ring>(a: &Matrix<R>) -> Result<SpanReport<R>> {
    let ring = a.ring().clone();
    require_field(&ring)?;
    let n = a.n();
    let ds: Vec<Matrix<R>> = (0..n * n)
        .map(|idx| commutator(a, &Matrix::unit(ring.clone(), n, idx / n, idx % n)))
        .collect::<Result<_>>()?;
    let mut ech = Echelon::new(ring.clone(), n * n);
    let mut basis = Vec::new();
    'outer: for x in &ds {
        if x.is_zero() {
            continue;
        }
        for y in &ds {
            let p = x * y;
            if ech.insert(p.entries().to_vec()) {
                basis.push(p);
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
    }
    let degree = minimal_polynomial_degree(a)?;
    let full = ech.is_full();
    if full != (degree > 2) {
        return Err(Error::Internal(format!(
            "span dimension {} disagrees with minimal-polynomial degree {degree}",
            ech.rank()
        )));
    }
    Ok(SpanReport {
        a: a.clone(),
        dimension: ech.rank(),
        basis,
        full,
        minimal_polynomial_degree: degree,
    })
}
