//! Seeded random matrix corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Orientation;
use crate::matrix::{invert, Matrix};
use crate::scalar::Ring;

/// Deterministic generator used by the CLI and the test suites.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<R: Ring, G: Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> Matrix<R> {
    Matrix::from_fn(ring.clone(), n, |_, _| ring.sample(rng))
}

pub fn random_triangular<R: Ring, G: Rng + ?Sized>(
    ring: &R,
    n: usize,
    orientation: Orientation,
    rng: &mut G,
) -> Matrix<R> {
    Matrix::from_fn(ring.clone(), n, |i, j| {
        let keep = match orientation {
            Orientation::Upper => i <= j,
            Orientation::Lower => i >= j,
        };
        if keep {
            ring.sample(rng)
        } else {
            ring.zero()
        }
    })
}

/// Triangular with the last diagonal entry fixing the trace at zero.
pub fn random_tracezero_triangular<R: Ring, G: Rng + ?Sized>(
    ring: &R,
    n: usize,
    orientation: Orientation,
    rng: &mut G,
) -> Matrix<R> {
    let mut t = random_triangular(ring, n, orientation, rng);
    let rest = (0..n - 1).fold(ring.zero(), |acc, i| ring.add(&acc, t.get(i, i)));
    t.set(n - 1, n - 1, ring.neg(&rest));
    t
}

pub fn random_zero_diagonal<R: Ring, G: Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> Matrix<R> {
    Matrix::from_fn(
        ring.clone(),
        n,
        |i, j| if i == j { ring.zero() } else { ring.sample(rng) },
    )
}

/// Rejection sampling; only meaningful over division rings.
pub fn random_invertible<R: Ring, G: Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> Matrix<R> {
    loop {
        let m = random_matrix(ring, n, rng);
        if invert(&m).is_ok() {
            return m;
        }
    }
}

/// Singular matrix of random rank below `n`: independent random rows, the
/// remaining rows left combinations of them, then a random row order.
pub fn random_singular<R: Ring, G: Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> Matrix<R> {
    let r = if n == 1 {
        0
    } else {
        rng.random_range(n.saturating_sub(2)..n)
    };
    let base: Vec<Vec<R::Elem>> = (0..r).map(|_| (0..n).map(|_| ring.sample(rng)).collect()).collect();
    let mut rows: Vec<Vec<R::Elem>> = base.clone();
    while rows.len() < n {
        let mut row = vec![ring.zero(); n];
        for b in &base {
            let c = ring.sample(rng);
            for (x, y) in row.iter_mut().zip(b) {
                *x = ring.add(x, &ring.mul(&c, y));
            }
        }
        rows.push(row);
    }
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        rows.swap(i, j);
    }
    Matrix::from_rows(ring.clone(), rows).expect("square by construction")
}
