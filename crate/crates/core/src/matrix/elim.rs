//! Gaussian elimination over division rings.
//!
//! Every row operation here is a left multiplication: rows are scaled by
//! `λ·row` and combined as `row_i - λ·row_k`. The resulting row space is the
//! left row space, whose dimension equals the (right) column rank.

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Ring;

pub(crate) fn require_division<R: Ring>(ring: &R) -> Result<()> {
    let d = ring.descriptor();
    if d.is_division_ring {
        Ok(())
    } else {
        Err(Error::UnsupportedRing(format!("{} is not a division ring", d.kind)))
    }
}

pub(crate) fn require_field<R: Ring>(ring: &R) -> Result<()> {
    let d = ring.descriptor();
    if d.is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedRing(format!("{} is not a commutative field", d.kind)))
    }
}

struct EchelonRow<E> {
    pivot: usize,
    values: Vec<E>,
    combo: Vec<E>,
}

/// Incremental row echelon form of a growing list of vectors.
///
/// Stored rows are normalized to 1 at their pivot and reduced against all
/// earlier rows. With tracking enabled each stored row remembers which left
/// combination of the inputs produced it, so a dependent input yields an
/// explicit dependence vector.
pub struct Echelon<R: Ring> {
    ring: R,
    width: usize,
    rows: Vec<EchelonRow<R::Elem>>,
    inputs: usize,
    tracking: bool,
    last_dependence: Option<Vec<R::Elem>>,
}

impl<R: Ring> Echelon<R> {
    pub fn new(ring: R, width: usize) -> Self {
        Echelon {
            ring,
            width,
            rows: Vec::new(),
            inputs: 0,
            tracking: false,
            last_dependence: None,
        }
    }

    pub fn with_tracking(ring: R, width: usize) -> Self {
        Echelon {
            tracking: true,
            ..Echelon::new(ring, width)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    fn reduce(&self, values: &mut [R::Elem], combo: &mut [R::Elem]) {
        let r = &self.ring;
        for row in &self.rows {
            let c = values[row.pivot].clone();
            if r.is_zero(&c) {
                continue;
            }
            for (v, b) in values.iter_mut().zip(&row.values).skip(row.pivot) {
                if !r.is_zero(b) {
                    *v = r.sub(v, &r.mul(&c, b));
                }
            }
            if self.tracking {
                for (k, b) in row.combo.iter().enumerate() {
                    if !r.is_zero(b) {
                        combo[k] = r.sub(&combo[k], &r.mul(&c, b));
                    }
                }
            }
        }
    }

    /// True when `v` lies in the left span of the rows inserted so far.
    pub fn contains(&self, v: &[R::Elem]) -> bool {
        assert_eq!(v.len(), self.width);
        let r = &self.ring;
        let mut values = v.to_vec();
        for row in &self.rows {
            let c = values[row.pivot].clone();
            if r.is_zero(&c) {
                continue;
            }
            for (x, b) in values.iter_mut().zip(&row.values).skip(row.pivot) {
                *x = r.sub(x, &r.mul(&c, b));
            }
        }
        values.iter().all(|x| r.is_zero(x))
    }

    /// Inserts `v`; returns true when it was independent of earlier inputs.
    ///
    /// On a dependent input with tracking enabled, [`Self::last_dependence`]
    /// holds coefficients `c` with `Σ c_k·input_k = 0` and `c_last = 1`.
    pub fn insert(&mut self, v: Vec<R::Elem>) -> bool {
        assert_eq!(v.len(), self.width, "echelon input has the wrong width");
        let r = self.ring.clone();
        let idx = self.inputs;
        self.inputs += 1;
        let mut values = v;
        let mut combo = Vec::new();
        if self.tracking {
            combo = vec![r.zero(); self.inputs];
            combo[idx] = r.one();
            for row in &mut self.rows {
                row.combo.resize(self.inputs, r.zero());
            }
        }
        self.reduce(&mut values, &mut combo);
        match values.iter().position(|x| !r.is_zero(x)) {
            None => {
                self.last_dependence = self.tracking.then_some(combo);
                false
            }
            Some(p) => {
                let s = r.inv(&values[p]).expect("nonzero pivot in a division ring");
                for x in values.iter_mut().skip(p) {
                    *x = r.mul(&s, x);
                }
                for x in combo.iter_mut() {
                    *x = r.mul(&s, x);
                }
                // Keep earlier rows reduced at the new pivot so later
                // reductions never reintroduce it.
                for row in &mut self.rows {
                    let c = row.values[p].clone();
                    if r.is_zero(&c) {
                        continue;
                    }
                    for (x, b) in row.values.iter_mut().zip(&values).skip(p) {
                        *x = r.sub(x, &r.mul(&c, b));
                    }
                    for (x, b) in row.combo.iter_mut().zip(&combo) {
                        *x = r.sub(x, &r.mul(&c, b));
                    }
                }
                self.rows.push(EchelonRow {
                    pivot: p,
                    values,
                    combo,
                });
                self.last_dependence = None;
                true
            }
        }
    }

    pub fn last_dependence(&self) -> Option<&[R::Elem]> {
        self.last_dependence.as_deref()
    }
}

/// Row rank by left-row elimination.
pub fn rank<R: Ring>(a: &Matrix<R>) -> Result<usize> {
    require_division(a.ring())?;
    let mut ech = Echelon::new(a.ring().clone(), a.n());
    for row in a.rows() {
        ech.insert(row);
        if ech.is_full() {
            break;
        }
    }
    Ok(ech.rank())
}

/// Nonzero row `u` with `u·a = 0`, if `a` is singular.
pub fn left_kernel_vector<R: Ring>(a: &Matrix<R>) -> Result<Option<Vec<R::Elem>>> {
    require_division(a.ring())?;
    let n = a.n();
    let mut ech = Echelon::with_tracking(a.ring().clone(), n);
    for row in a.rows() {
        if !ech.insert(row) {
            let mut u = ech.last_dependence().expect("tracking is on").to_vec();
            u.resize(n, a.ring().zero());
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Gauss–Jordan inverse using left row operations only.
pub fn invert<R: Ring>(a: &Matrix<R>) -> Result<Matrix<R>> {
    require_division(a.ring())?;
    let r = a.ring().clone();
    let n = a.n();
    let mut m = a.rows();
    let mut inv = Matrix::identity(r.clone(), n).rows();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !r.is_zero(&m[i][k])) else {
            return Err(Error::Singular { rank: rank(a)?, n });
        };
        m.swap(k, p);
        inv.swap(k, p);
        let s = r.inv(&m[k][k])?;
        for x in m[k].iter_mut().chain(inv[k].iter_mut()) {
            *x = r.mul(&s, x);
        }
        let (pivot_m, pivot_inv) = (m[k].clone(), inv[k].clone());
        for i in (0..n).filter(|&i| i != k) {
            let c = m[i][k].clone();
            if r.is_zero(&c) {
                continue;
            }
            for (x, b) in m[i].iter_mut().zip(&pivot_m) {
                *x = r.sub(x, &r.mul(&c, b));
            }
            for (x, b) in inv[i].iter_mut().zip(&pivot_inv) {
                *x = r.sub(x, &r.mul(&c, b));
            }
        }
    }
    Matrix::from_rows(r, inv)
}
