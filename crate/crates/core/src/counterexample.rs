//! A 2×2 matrix over the unitization ring that is not a product of
//! trace-zero matrices, checked computationally.
//!
//! Writing `t_k = t_0k + Σ c_i t_ik` and expanding `t_1⋯t_n` with
//! `c_i c_j = 0` leaves the unit part `Π t_0k` and four first-order
//! coefficients `r_i`. For `a = [[c1, c2], [c3, c4]]` the unit part must
//! vanish while `r_1..r_4` must be the four matrix units. Each `r_i` lies in
//! `W = Σ_k (s_1⋯s_{k-1})·sl2·(s_{k+1}⋯s_n)`, so `dim W ≤ 3` rules `a` out.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::elim::require_field;
use crate::matrix::{Echelon, Matrix};
use crate::scalar::{PrimeField, Ring, Unitization};

/// `[[c1, c2], [c3, c4]]`.
pub fn the_matrix_a<F: Ring>(ring: &Unitization<F>) -> Matrix<Unitization<F>> {
    Matrix::from_rows(
        ring.clone(),
        vec![vec![ring.c(0), ring.c(1)], vec![ring.c(2), ring.c(3)]],
    )
    .expect("2x2")
}

/// Unit parts `s_k` and the four coefficient lists `t_ik`, all 2×2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlTuple<F: Ring> {
    pub s: Vec<Matrix<F>>,
    pub t: [Vec<Matrix<F>>; 4],
}

impl<F: Ring> SlTuple<F> {
    /// Checks sizes and that every matrix has trace zero.
    pub fn new(s: Vec<Matrix<F>>, t: [Vec<Matrix<F>>; 4]) -> Result<Self> {
        let tuple = SlTuple::unchecked(s, t)?;
        let all = tuple.s.iter().chain(tuple.t.iter().flatten());
        if let Some(m) = all.into_iter().find(|m| !m.ring().is_zero(&m.trace())) {
            return Err(Error::Precondition(format!("matrix with nonzero trace:\n{m}")));
        }
        Ok(tuple)
    }

    fn unchecked(s: Vec<Matrix<F>>, t: [Vec<Matrix<F>>; 4]) -> Result<Self> {
        let n = s.len();
        if n == 0 {
            return Err(Error::Shape("tuple must have at least one entry".into()));
        }
        if t.iter().any(|ti| ti.len() != n) {
            return Err(Error::Shape("coefficient lists must match the tuple length".into()));
        }
        if s.iter().chain(t.iter().flatten()).any(|m| m.n() != 2) {
            return Err(Error::Shape("tuple entries must be 2x2".into()));
        }
        Ok(SlTuple { s, t })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    fn ring(&self) -> &F {
        self.s[0].ring()
    }

    pub fn unit_product(&self) -> Matrix<F> {
        crate::matrix::product(&self.s).expect("nonempty")
    }
}

/// `prefix[k] = s_1⋯s_k`, `suffix[k] = s_{k+1}⋯s_n` (identity when empty).
fn prefixes_suffixes<F: Ring>(s: &[Matrix<F>]) -> (Vec<Matrix<F>>, Vec<Matrix<F>>) {
    let ring = s[0].ring().clone();
    let n = s.len();
    let id = Matrix::identity(ring, 2);
    let mut prefix = vec![id.clone()];
    for m in s {
        let next = prefix.last().unwrap() * m;
        prefix.push(next);
    }
    let mut suffix = vec![id; n + 1];
    for k in (0..n).rev() {
        suffix[k] = &s[k] * &suffix[k + 1];
    }
    (prefix, suffix)
}

/// `r_i = Σ_k s_1⋯s_{k-1}·t_ik·s_{k+1}⋯s_n` for `i = 1..4`.
pub fn r_system<F: Ring>(t: &SlTuple<F>) -> Result<[Matrix<F>; 4]> {
    let n = t.len();
    let (prefix, suffix) = prefixes_suffixes(&t.s);
    let ring = t.ring().clone();
    let r = std::array::from_fn(|i| {
        (0..n).fold(Matrix::zero(ring.clone(), 2), |acc, k| {
            &acc + &(&(&prefix[k] * &t.t[i][k]) * &suffix[k + 1])
        })
    });
    Ok(r)
}

fn flatten<F: Ring>(m: &Matrix<F>) -> Vec<F::Elem> {
    m.entries().to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceReport<E> {
    /// Rank of `{r_1, r_2, r_3, r_4}` as vectors in `F⁴`.
    pub rank: usize,
    /// `λ` with `Σ λ_i r_i = 0`, `λ ≠ 0`; `None` only if the set is independent.
    pub dependence: Option<[E; 4]>,
}

/// Rank of `r_1..r_4` for a tuple with `Π s_k = 0`, plus a dependence.
pub fn zero_product_dependence<F: Ring>(t: &SlTuple<F>) -> Result<DependenceReport<F::Elem>> {
    let ring = t.ring().clone();
    require_field(&ring)?;
    if !t.unit_product().is_zero() {
        return Err(Error::Precondition("the product of the unit parts is nonzero".into()));
    }
    let r = r_system(t)?;
    let mut ech = Echelon::with_tracking(ring.clone(), 4);
    let mut dependence = None;
    for ri in &r {
        if !ech.insert(flatten(ri)) && dependence.is_none() {
            let mut c = ech.last_dependence().expect("tracking is on").to_vec();
            c.resize(4, ring.zero());
            dependence = Some(c.try_into().expect("four coefficients"));
        }
    }
    Ok(DependenceReport {
        rank: ech.rank(),
        dependence,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue<F: Ring> {
    pub unit_product: Matrix<F>,
    pub r: [Matrix<F>; 4],
}

/// Splits a 2×2 matrix over the unitization into unit and `c_i` parts.
pub fn split<F: Ring>(m: &Matrix<Unitization<F>>) -> (Matrix<F>, [Matrix<F>; 4]) {
    let base = m.ring().base().clone();
    let n = m.n();
    let unit = Matrix::from_fn(base.clone(), n, |i, j| m.get(i, j).unit.clone());
    let nil = std::array::from_fn(|c| Matrix::from_fn(base.clone(), n, |i, j| m.get(i, j).nil[c].clone()));
    (unit, nil)
}

/// Expands `Π t_k` into its unit part and first-order coefficients, and
/// checks the expansion against the direct product.
pub fn product_residue<F: Ring>(tuple: &[Matrix<Unitization<F>>]) -> Result<Residue<F>> {
    if tuple.is_empty() || tuple.iter().any(|m| m.n() != 2) {
        return Err(Error::Shape("expected a nonempty list of 2x2 matrices".into()));
    }
    let parts: Vec<_> = tuple.iter().map(split).collect();
    let s: Vec<Matrix<F>> = parts.iter().map(|(u, _)| u.clone()).collect();
    let t: [Vec<Matrix<F>>; 4] = std::array::from_fn(|i| parts.iter().map(|(_, nil)| nil[i].clone()).collect());
    let st = SlTuple::unchecked(s, t)?;
    let residue = Residue {
        unit_product: st.unit_product(),
        r: r_system(&st)?,
    };
    let direct = crate::matrix::product(tuple).expect("nonempty");
    let (du, dn) = split(&direct);
    if du != residue.unit_product || dn != residue.r {
        return Err(Error::Internal(
            "first-order expansion disagrees with the direct product".into(),
        ));
    }
    Ok(residue)
}

/// `dim W` for the unit parts `s_1..s_n`, over any field.
pub fn achievable_dimension<F: Ring>(s: &[Matrix<F>]) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::Shape("tuple must have at least one entry".into()));
    }
    let ring = s[0].ring().clone();
    require_field(&ring)?;
    let (prefix, suffix) = prefixes_suffixes(s);
    let basis = [
        Matrix::unit(ring.clone(), 2, 0, 1),
        Matrix::unit(ring.clone(), 2, 1, 0),
        &Matrix::unit(ring.clone(), 2, 0, 0) - &Matrix::unit(ring.clone(), 2, 1, 1),
    ];
    let mut ech = Echelon::new(ring, 4);
    for k in 0..s.len() {
        for b in &basis {
            ech.insert(flatten(&(&(&prefix[k] * b) * &suffix[k + 1])));
        }
    }
    Ok(ech.rank())
}

/// 2×2 matrices over GF(2) as 4-bit masks, bit `2i + j` for entry `(i, j)`.
mod gf2 {
    pub type M = u8;

    pub const IDENTITY: M = 0b1001;

    #[inline]
    pub fn get(m: M, i: u8, j: u8) -> u8 {
        (m >> (2 * i + j)) & 1
    }

    pub fn mul(a: M, b: M) -> M {
        let mut out = 0;
        for i in 0..2 {
            for j in 0..2 {
                let v = (get(a, i, 0) & get(b, 0, j)) ^ (get(a, i, 1) & get(b, 1, j));
                out |= v << (2 * i + j);
            }
        }
        out
    }

    /// The eight trace-zero matrices `x·1 + y·e12 + z·e21`.
    pub fn sl2() -> [M; 8] {
        std::array::from_fn(|k| {
            let k = k as u8;
            let mut m = 0;
            if k & 1 != 0 {
                m ^= IDENTITY;
            }
            if k & 2 != 0 {
                m ^= 0b0010;
            }
            if k & 4 != 0 {
                m ^= 0b0100;
            }
            m
        })
    }

    /// `e12, e21, 1` span `sl2` over GF(2).
    pub const SL2_BASIS: [M; 3] = [0b0010, 0b0100, IDENTITY];

    /// Rank of a set of vectors in GF(2)⁴.
    pub fn rank(vectors: impl IntoIterator<Item = M>) -> usize {
        let mut basis = [0u8; 4];
        let mut r = 0;
        for mut v in vectors {
            for bit in (0..4).rev() {
                if v & (1 << bit) == 0 {
                    continue;
                }
                if basis[bit] == 0 {
                    basis[bit] = v;
                    r += 1;
                    break;
                }
                v ^= basis[bit];
            }
        }
        r
    }
}

pub const ORACLE_MAX_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleLevel {
    pub n: usize,
    /// All tuples in `sl2(GF(2))ⁿ`, i.e. `8ⁿ`.
    pub tuples: u64,
    pub zero_product_tuples: u64,
    pub max_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n_max: usize,
    pub levels: Vec<OracleLevel>,
    pub max_dim: usize,
    /// `max_dim < 4`: `a` is not a product of at most `n_max` trace-zero
    /// matrices over the unitization of GF(2).
    pub unreachable: bool,
}

impl OracleReport {
    pub fn summary(&self) -> String {
        if self.unreachable {
            format!(
                "dim W <= {} for all tuples; a unreachable for n <= {}",
                self.max_dim, self.n_max
            )
        } else {
            format!("dim W = {} for some tuple; unreachability not certified", self.max_dim)
        }
    }
}

fn oracle_level(n: usize) -> OracleLevel {
    let sl2 = gf2::sl2();
    let mut idx = vec![0usize; n];
    let mut tuples = 0u64;
    let mut zero = 0u64;
    let mut max_dim = 0;
    let mut prefix = vec![gf2::IDENTITY; n + 1];
    let mut suffix = vec![gf2::IDENTITY; n + 1];
    loop {
        tuples += 1;
        let s: Vec<gf2::M> = idx.iter().map(|&k| sl2[k]).collect();
        for k in 0..n {
            prefix[k + 1] = gf2::mul(prefix[k], s[k]);
        }
        if prefix[n] == 0 {
            zero += 1;
            for k in (0..n).rev() {
                suffix[k] = gf2::mul(s[k], suffix[k + 1]);
            }
            let dim = gf2::rank((0..n).flat_map(|k| {
                let (p, q) = (prefix[k], suffix[k + 1]);
                gf2::SL2_BASIS.iter().map(move |&b| gf2::mul(gf2::mul(p, b), q))
            }));
            max_dim = max_dim.max(dim);
        }
        // Odometer over 8ⁿ tuples, last position fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                return OracleLevel {
                    n,
                    tuples,
                    zero_product_tuples: zero,
                    max_dim,
                };
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < 8 {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Exhaustive check over `sl2(GF(2))ⁿ` for `n = 1..=n_max`.
pub fn unreachability_oracle(n_max: usize) -> Result<OracleReport> {
    if n_max == 0 || n_max > ORACLE_MAX_N {
        return Err(Error::Scale(format!(
            "n_max must lie in 1..={ORACLE_MAX_N}, got {n_max}"
        )));
    }
    let levels: Vec<OracleLevel> = (1..=n_max).map(oracle_level).collect();
    let max_dim = levels.iter().map(|l| l.max_dim).max().unwrap_or(0);
    Ok(OracleReport {
        n_max,
        levels,
        max_dim,
        unreachable: max_dim < 4,
    })
}

/// Generic-path cross-check of one oracle level: the maximum `dim W` over
/// zero-product tuples, computed with [`achievable_dimension`].
pub fn oracle_level_generic(n: usize) -> Result<usize> {
    let f = PrimeField::new(2)?;
    let sl2: Vec<Matrix<PrimeField>> = gf2::sl2()
        .iter()
        .map(|&m| Matrix::from_fn(f, 2, |i, j| gf2::get(m, i as u8, j as u8) as u64))
        .collect();
    let mut max_dim = 0;
    let total = 8usize.pow(n as u32);
    for code in 0..total {
        let s: Vec<Matrix<PrimeField>> = (0..n).map(|k| sl2[(code >> (3 * (n - 1 - k))) & 7].clone()).collect();
        if crate::matrix::product(&s).expect("nonempty").is_zero() {
            max_dim = max_dim.max(achievable_dimension(&s)?);
        }
    }
    Ok(max_dim)
}
