//! Two-commutator constructions over division rings.
//!
//! Every construction here produces `a = [b, c]·[d, e]` with `[b, c]` and
//! `d` invertible, and records both facts as certificate flags.

use crate::error::{Error, Result};
use crate::matrix::elim::require_division;
use crate::matrix::{
    invert, rank, CommutatorCertificate, CommutatorPair, Construction, Matrix, PairFlags, SimilarityWitness,
};
use crate::scalar::{central_candidates, nonzero_commutator_pair, Ring};

const FIRST: PairFlags = PairFlags {
    commutator_invertible: true,
    first_invertible: false,
};
const SECOND: PairFlags = PairFlags {
    commutator_invertible: false,
    first_invertible: true,
};

fn m2<R: Ring>(ring: &R, rows: [[R::Elem; 2]; 2]) -> Matrix<R> {
    Matrix::from_rows(ring.clone(), rows.into_iter().map(Vec::from).collect()).expect("2x2")
}

/// `(b, c)` with `[b, c] = [[r, s], [t, -r]]` and `b` invertible.
pub fn sl2_commutator<R: Ring>(ring: &R, r: &R::Elem, s: &R::Elem, t: &R::Elem) -> Result<(Matrix<R>, Matrix<R>)> {
    require_division(ring)?;
    let (zero, one) = (ring.zero(), ring.one());
    let pair = if ring.is_zero(s) {
        (
            m2(ring, [[one.clone(), zero.clone()], [one.clone(), one]]),
            m2(ring, [[zero.clone(), ring.neg(r)], [zero, ring.neg(t)]]),
        )
    } else if ring.is_zero(t) {
        (
            m2(ring, [[one.clone(), one.clone()], [zero.clone(), one]]),
            m2(ring, [[zero.clone(), zero], [r.clone(), s.clone()]]),
        )
    } else if ring.is_zero(r) {
        (
            m2(ring, [[zero.clone(), ring.neg(s)], [t.clone(), zero.clone()]]),
            m2(ring, [[one, zero.clone()], [zero.clone(), zero]]),
        )
    } else {
        let t_inv = ring.inv(t)?;
        let r_inv = ring.inv(r)?;
        let srt = ring.mul(&ring.mul(s, r), &t_inv);
        (
            m2(ring, [[zero.clone(), ring.neg(&srt)], [r.clone(), zero.clone()]]),
            m2(
                ring,
                [[zero.clone(), ring.neg(&one)], [zero, ring.neg(&ring.mul(t, &r_inv))]],
            ),
        )
    };
    Ok(pair)
}

fn sl2_pair<R: Ring>(m: &Matrix<R>) -> Result<CommutatorPair<R>> {
    let (b, c) = sl2_commutator(m.ring(), m.get(0, 0), m.get(0, 1), m.get(1, 0))?;
    Ok(CommutatorPair::new(b, c))
}

/// Trace-zero factors `f·g = a` of a 2×2 matrix, `f` invertible.
fn two_by_two_factors<R: Ring>(a: &Matrix<R>) -> Result<(Matrix<R>, Matrix<R>)> {
    let ring = a.ring();
    let (r, s, t, u) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let (zero, one) = (ring.zero(), ring.one());
    let minus_one = ring.neg(&one);
    Ok(match (ring.is_zero(s), ring.is_zero(t)) {
        (false, false) => {
            let t_inv = ring.inv(t)?;
            let s_inv = ring.inv(s)?;
            let f = m2(ring, [[zero.clone(), ring.neg(&ring.mul(s, &t_inv))], [one, zero]]);
            let g = m2(
                ring,
                [
                    [t.clone(), u.clone()],
                    [ring.neg(&ring.mul(&ring.mul(t, &s_inv), r)), ring.neg(t)],
                ],
            );
            (f, g)
        }
        (true, false) => {
            let h = ring.mul(&ring.sub(u, r), &ring.inv(t)?);
            let f = m2(ring, [[one, h.clone()], [zero, minus_one]]);
            let g = m2(ring, [[u.clone(), ring.mul(&h, u)], [ring.neg(t), ring.neg(u)]]);
            (f, g)
        }
        (false, true) => {
            let h = ring.mul(&ring.sub(u, r), &ring.inv(s)?);
            let f = m2(ring, [[one, zero], [h.clone(), minus_one]]);
            let g = m2(ring, [[r.clone(), s.clone()], [ring.mul(&h, r), ring.neg(r)]]);
            (f, g)
        }
        (true, true) => {
            let f = m2(ring, [[zero.clone(), one.clone()], [one, zero.clone()]]);
            let g = m2(ring, [[zero.clone(), u.clone()], [r.clone(), zero]]);
            (f, g)
        }
    })
}

/// Any 2×2 matrix over a division ring as `[b, c]·[d, e]`.
pub fn two_commutators_2x2<R: Ring>(a: &Matrix<R>) -> Result<CommutatorCertificate<R>> {
    require_division(a.ring())?;
    if a.n() != 2 {
        return Err(Error::Shape(format!("expected a 2x2 matrix, got {}x{}", a.n(), a.n())));
    }
    let (f, g) = two_by_two_factors(a)?;
    let first = sl2_pair(&f)?.with_flags(FIRST);
    let second = sl2_pair(&g)?.with_flags(SECOND);
    Ok(CommutatorCertificate::new(a.clone(), vec![first, second]).with_construction(Construction::TwoByTwo))
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

/// `(b, c, d, e)` of size 3 with `[b, c]` a cyclic permutation matrix and
/// `[d, e]` its transpose.
fn identity_block3<R: Ring>(ring: &R) -> [Matrix<R>; 4] {
    let x = ring.from_int(2);
    let y = ring.sub(&x, &ring.one());
    let (z, o) = (ring.zero(), ring.one());
    let b = Matrix::from_rows(
        ring.clone(),
        vec![
            vec![z.clone(), z.clone(), ring.neg(&x)],
            vec![o.clone(), z.clone(), z.clone()],
            vec![z.clone(), y, z.clone()],
        ],
    )
    .expect("3x3");
    let c = Matrix::from_rows(
        ring.clone(),
        vec![
            vec![z.clone(), z.clone(), o.clone()],
            vec![z.clone(), z.clone(), z.clone()],
            vec![z.clone(), ring.neg(&o), z],
        ],
    )
    .expect("3x3");
    let d = b.transpose();
    let e = -&c.transpose();
    [b, c, d, e]
}

/// `1_n = [b, c]·[d, e]` for `n >= 2`, from 2×2 and 3×3 blocks.
pub fn identity_two_commutators<R: Ring>(ring: &R, n: usize) -> Result<CommutatorCertificate<R>> {
    require_division(ring)?;
    require_three_elements(ring)?;
    if n < 2 {
        return Err(Error::Size { n, min: 2 });
    }
    let l = n % 2;
    let k = (n - 3 * l) / 2;
    let two = two_commutators_2x2(&Matrix::identity(ring.clone(), 2))?;
    let block2 = [
        two.pairs[0].x.clone(),
        two.pairs[0].y.clone(),
        two.pairs[1].x.clone(),
        two.pairs[1].y.clone(),
    ];
    let block3 = identity_block3(ring);
    let parts: Vec<usize> = std::iter::repeat_n(2, k).chain(std::iter::repeat_n(3, l)).collect();
    let assemble = |slot: usize| {
        let blocks: Vec<Matrix<R>> = parts
            .iter()
            .map(|&s| {
                if s == 2 {
                    block2[slot].clone()
                } else {
                    block3[slot].clone()
                }
            })
            .collect();
        Matrix::block_diagonal(&blocks)
    };
    let first = CommutatorPair::new(assemble(0), assemble(1)).with_flags(FIRST);
    let second = CommutatorPair::new(assemble(2), assemble(3)).with_flags(SECOND);
    Ok(
        CommutatorCertificate::new(Matrix::identity(ring.clone(), n), vec![first, second])
            .with_construction(Construction::IdentityTwo),
    )
}

fn unit_vector<R: Ring>(ring: &R, n: usize, i: usize) -> Vec<R::Elem> {
    (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()
}

/// Rank of the matrix whose leading columns are `cols` (zero elsewhere).
fn column_rank<R: Ring>(ring: &R, n: usize, cols: &[Vec<R::Elem>]) -> Result<usize> {
    let m = Matrix::from_fn(ring.clone(), n, |i, j| {
        cols.get(j).map_or_else(|| ring.zero(), |c| c[i].clone())
    });
    rank(&m)
}

/// Columns `w, a·w` extended by standard vectors to a basis.
fn corner_basis<R: Ring>(a: &Matrix<R>, w: Vec<R::Elem>) -> Result<Option<Matrix<R>>> {
    let ring = a.ring();
    let n = a.n();
    let aw = a.apply(&w);
    let mut cols = vec![w, aw];
    if column_rank(ring, n, &cols)? < 2 {
        return Ok(None);
    }
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        cols.push(unit_vector(ring, n, i));
        if column_rank(ring, n, &cols)? < cols.len() {
            cols.pop();
        }
    }
    Ok(Some(Matrix::from_fn(ring.clone(), n, |i, j| cols[j][i].clone())))
}

fn search_corner<R: Ring>(a: &Matrix<R>) -> Result<Option<SimilarityWitness<R>>> {
    let ring = a.ring();
    let n = a.n();
    let singles = (0..n).map(|i| unit_vector(ring, n, i));
    let doubles = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| {
        let mut v = unit_vector(ring, n, i);
        v[j] = ring.one();
        v
    });
    for w in singles.chain(doubles) {
        if let Some(s) = corner_basis(a, w)? {
            // s⁻¹·a·s has first column e_2.
            let s_inv = invert(&s)?;
            return Ok(Some(SimilarityWitness { v: s_inv, v_inv: s }));
        }
    }
    Ok(None)
}

/// `v` with `(v·a·v⁻¹)_11 = 0` for noncentral `a`.
///
/// Looks for `w` among `e_i` and `e_i + e_j` with `a·w` outside `w·D`; the
/// basis `(w, a·w, ...)` then moves a zero into the corner. When every
/// candidate is an eigenvector, `a = λ·1` with `λ` noncentral, and
/// conjugating by `1 + e_12·d` with `dλ ≠ λd` creates an off-diagonal entry.
pub fn corner_zero_similarity<R: Ring>(a: &Matrix<R>) -> Result<SimilarityWitness<R>> {
    let ring = a.ring().clone();
    require_division(&ring)?;
    let n = a.n();
    if ring.is_zero(a.get(0, 0)) {
        return Ok(SimilarityWitness::identity(ring, n));
    }
    if a.is_central() {
        return Err(Error::Central);
    }
    if let Some(w) = search_corner(a)? {
        return Ok(w);
    }
    let lambda = a
        .as_scalar()
        .ok_or_else(|| Error::Internal("eigenvector search failed".into()))?;
    let (p, q) = ring.noncommuting_pair().ok_or(Error::CommutativeRing)?;
    let d = [p, q]
        .into_iter()
        .find(|d| !ring.is_zero(&ring.commutator(d, &lambda)))
        .ok_or_else(|| Error::Internal("no element fails to commute with the scalar".into()))?;
    let mut t = Matrix::identity(ring.clone(), n);
    t.set(0, 1, d.clone());
    let mut t_inv = Matrix::identity(ring.clone(), n);
    t_inv.set(0, 1, ring.neg(&d));
    let pre = SimilarityWitness { v: t, v_inv: t_inv };
    let inner = search_corner(&a.conjugate_by(&pre))?
        .ok_or_else(|| Error::Internal("eigenvector search failed after pre-conjugation".into()))?;
    Ok(pre.then(&inner))
}

/// Least central `λ ≠ 0` in the order 1, 2, 3, ... with `v - λ·1` invertible.
pub fn central_singular_avoid<R: Ring>(v: &Matrix<R>) -> Result<R::Elem> {
    let ring = v.ring().clone();
    require_division(&ring)?;
    let n = v.n();
    let bound = if ring.descriptor().is_commutative {
        n + 1
    } else {
        2 * n + 1
    };
    for lambda in central_candidates(&ring).take(bound) {
        let shifted = v.try_sub(&Matrix::scalar(ring.clone(), n, lambda.clone()))?;
        if invert(&shifted).is_ok() {
            return Ok(lambda);
        }
    }
    Err(Error::Internal(format!(
        "no admissible central element among the first {bound} candidates"
    )))
}

/// `v·a·v⁻¹ = [b, c]·[d, e]` with `[b, c]` and `d` invertible.
struct Strong<R: Ring> {
    similarity: SimilarityWitness<R>,
    first: CommutatorPair<R>,
    second: CommutatorPair<R>,
    construction: Construction,
}

fn strong<R: Ring>(a: &Matrix<R>) -> Result<Strong<R>> {
    let ring = a.ring().clone();
    let n = a.n();
    if let Some(lambda) = a.as_scalar().filter(|l| ring.is_central(l)) {
        let cert = identity_two_commutators(&ring, n)?;
        let [first, second]: [CommutatorPair<R>; 2] = cert.pairs.try_into().expect("two pairs");
        let second = CommutatorPair::new(second.x, second.y.scale_right(&lambda)).with_flags(SECOND);
        return Ok(Strong {
            similarity: SimilarityWitness::identity(ring, n),
            first,
            second,
            construction: Construction::IdentityTwo,
        });
    }
    if n == 2 {
        let cert = two_commutators_2x2(a)?;
        let [first, second]: [CommutatorPair<R>; 2] = cert.pairs.try_into().expect("two pairs");
        return Ok(Strong {
            similarity: SimilarityWitness::identity(ring, n),
            first,
            second,
            construction: Construction::TwoByTwo,
        });
    }

    let v0 = corner_zero_similarity(a)?;
    let a0 = a.conjugate_by(&v0);
    let inner = strong(&a0.trailing(1))?;
    // Absorb the inner similarity: conjugate by diag(1, w).
    let lift = SimilarityWitness {
        v: Matrix::block_diagonal(&[Matrix::identity(ring.clone(), 1), inner.similarity.v.clone()]),
        v_inv: Matrix::block_diagonal(&[Matrix::identity(ring.clone(), 1), inner.similarity.v_inv.clone()]),
    };
    let a1 = a0.conjugate_by(&lift);
    let m = n - 1;
    let beta: Vec<R::Elem> = (1..n).map(|j| a1.get(0, j).clone()).collect();
    let gamma: Vec<R::Elem> = (1..n).map(|i| a1.get(i, 0).clone()).collect();

    let (p, q) = nonzero_commutator_pair(&ring)?;
    let d = ring.commutator(&p, &q);
    let d_inv = ring.inv(&d)?;
    let y = inner.first.commutator()?;
    let y_inv = invert(&y)?;
    let (vv, ww) = (&inner.second.x, &inner.second.y);
    let lambda = central_singular_avoid(vv)?;
    let lam_minus_v = Matrix::scalar(ring.clone(), m, lambda.clone()).try_sub(vv)?;
    let lam_minus_v_inv = invert(&lam_minus_v)?;
    let v_minus_lam_inv = -&lam_minus_v_inv;

    // Top row d⁻¹·β·(λ - v)⁻¹, left column (v - λ)⁻¹·y⁻¹·γ.
    let d_beta: Vec<R::Elem> = beta.iter().map(|b| ring.mul(&d_inv, b)).collect();
    let top = row_times(&ring, &d_beta, &lam_minus_v_inv);
    let left = (&v_minus_lam_inv * &y_inv).apply(&gamma);

    let mut e = Matrix::zero(ring.clone(), n);
    for j in 0..m {
        e.set(0, j + 1, top[j].clone());
        e.set(j + 1, 0, left[j].clone());
        for k in 0..m {
            e.set(j + 1, k + 1, ww.get(j, k).clone());
        }
    }
    let scalar = |x: &R::Elem| Matrix::scalar(ring.clone(), 1, x.clone());
    let first = CommutatorPair::new(
        Matrix::block_diagonal(&[scalar(&p), inner.first.x.clone()]),
        Matrix::block_diagonal(&[scalar(&q), inner.first.y.clone()]),
    )
    .with_flags(FIRST);
    let second = CommutatorPair::new(Matrix::block_diagonal(&[scalar(&lambda), vv.clone()]), e).with_flags(SECOND);

    let out = Strong {
        similarity: v0.then(&lift),
        first,
        second,
        construction: Construction::DivisionTwo,
    };
    let product = out.first.commutator()?.try_mul(&out.second.commutator()?)?;
    if product != a1 {
        return Err(Error::Internal(format!("two-commutator assembly failed at size {n}")));
    }
    Ok(out)
}

fn row_times<R: Ring>(ring: &R, row: &[R::Elem], m: &Matrix<R>) -> Vec<R::Elem> {
    (0..m.n())
        .map(|j| {
            row.iter()
                .enumerate()
                .fold(ring.zero(), |acc, (k, x)| ring.add(&acc, &ring.mul(x, m.get(k, j))))
        })
        .collect()
}

/// Any square matrix of size at least 2 over a noncommutative division ring
/// with infinite center as `v⁻¹·[b, c]·[d, e]·v`.
pub fn two_commutators<R: Ring>(a: &Matrix<R>) -> Result<CommutatorCertificate<R>> {
    let ring = a.ring();
    require_division(ring)?;
    let desc = ring.descriptor();
    if desc.is_commutative {
        return Err(Error::UnsupportedRing(format!(
            "{} is commutative; the recursive construction needs a noncommutative division ring",
            desc.kind
        )));
    }
    if a.n() < 2 {
        return Err(Error::Size { n: a.n(), min: 2 });
    }
    let s = strong(a)?;
    Ok(CommutatorCertificate::new(a.clone(), vec![s.first, s.second])
        .with_similarity(s.similarity)
        .with_construction(s.construction))
}
