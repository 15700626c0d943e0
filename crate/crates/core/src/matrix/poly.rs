//! Minimal polynomials over commutative fields via Krylov chains.
//!
//! Polynomials are coefficient vectors, lowest degree first.

use super::elim::{require_field, Echelon};
use super::Matrix;
use crate::error::Result;
use crate::scalar::Ring;

fn trim<R: Ring>(ring: &R, p: &mut Vec<R::Elem>) {
    while p.last().is_some_and(|c| ring.is_zero(c)) {
        p.pop();
    }
}

fn monic<R: Ring>(ring: &R, p: &[R::Elem]) -> Vec<R::Elem> {
    let lead = ring.inv(p.last().expect("nonzero polynomial")).expect("field");
    p.iter().map(|c| ring.mul(&lead, c)).collect()
}

fn poly_mul<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
fn poly_divrem<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>) {
    let mut rem = a.to_vec();
    trim(ring, &mut rem);
    let db = b.len() - 1;
    let lead_inv = ring.inv(&b[db]).expect("field");
    if rem.len() < b.len() {
        return (vec![ring.zero()], rem);
    }
    let mut quot = vec![ring.zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = ring.mul(rem.last().unwrap(), &lead_inv);
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] = ring.sub(&rem[shift + k], &ring.mul(&c, bk));
        }
        quot[shift] = c;
        rem.pop();
        trim(ring, &mut rem);
    }
    (quot, rem)
}

fn poly_gcd<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(ring, &mut x);
    trim(ring, &mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(ring, &x, &y);
        x = y;
        y = r;
    }
    monic(ring, &x)
}

fn poly_lcm<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let g = poly_gcd(ring, a, b);
    let (q, _) = poly_divrem(ring, &poly_mul(ring, a, b), &g);
    let mut q = q;
    trim(ring, &mut q);
    monic(ring, &q)
}

/// `p(a)` by Horner's rule.
pub fn poly_eval<R: Ring>(a: &Matrix<R>, coeffs: &[R::Elem]) -> Matrix<R> {
    let ring = a.ring().clone();
    let n = a.n();
    coeffs.iter().rev().fold(Matrix::zero(ring.clone(), n), |acc, c| {
        &(&acc * a) + &Matrix::scalar(ring.clone(), n, c.clone())
    })
}

/// Monic `p_v` of least degree with `p_v(a) v = 0`.
pub fn local_minimal_polynomial<R: Ring>(a: &Matrix<R>, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let ring = a.ring().clone();
    require_field(&ring)?;
    let mut ech = Echelon::with_tracking(ring.clone(), a.n());
    let mut current = v.to_vec();
    loop {
        if !ech.insert(current.clone()) {
            return Ok(ech.last_dependence().expect("tracking is on").to_vec());
        }
        current = a.apply(&current);
    }
}

/// Smallest `d` with `{v, av, ..., a^d v}` linearly dependent.
pub fn local_degree<R: Ring>(a: &Matrix<R>, v: &[R::Elem]) -> Result<usize> {
    Ok(local_minimal_polynomial(a, v)?.len() - 1)
}

/// Minimal polynomial as the lcm of the local minimal polynomials of the
/// standard basis vectors.
pub fn minimal_polynomial<R: Ring>(a: &Matrix<R>) -> Result<Vec<R::Elem>> {
    let ring = a.ring().clone();
    require_field(&ring)?;
    let n = a.n();
    let mut acc = vec![ring.one()];
    for i in 0..n {
        let mut e = vec![ring.zero(); n];
        e[i] = ring.one();
        let local = local_minimal_polynomial(a, &e)?;
        acc = poly_lcm(&ring, &acc, &local);
    }
    Ok(acc)
}
