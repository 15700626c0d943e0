//! Coefficient rings.
//!
//! Every matrix construction in this crate is written against the [`Ring`]
//! trait. Four instances are provided: the rationals, prime fields, the
//! rational quaternions, and the unitization of a four-dimensional algebra
//! with zero multiplication (the "counterexample ring").
//!
//! Elements are kept in canonical form (reduced fractions, least residues),
//! so equality of elements is structural.

mod prime;
mod quaternion;
mod rational;
mod unitization;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use prime::PrimeField;
pub use quaternion::{Quaternion, Quaternions};
pub(crate) use rational::FracSum;
pub use rational::Rationals;
pub use unitization::{UnitElem, Unitization};

/// Base field of the counterexample ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseField {
    Rational,
    PrimeField { p: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingKind {
    Rational,
    PrimeField { p: u64 },
    QuaternionRational,
    Counterexample { base: BaseField },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(u128),
    Infinite,
}

impl Cardinality {
    pub fn at_least(self, k: u128) -> bool {
        match self {
            Cardinality::Finite(c) => c >= k,
            Cardinality::Infinite => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub kind: RingKind,
    pub is_commutative: bool,
    pub is_division_ring: bool,
    pub cardinality: Cardinality,
}

impl RingDescriptor {
    pub fn is_field(&self) -> bool {
        self.is_commutative && self.is_division_ring
    }

    /// The prime `p` for GF(p), if this is a prime field.
    pub fn prime(&self) -> Option<u64> {
        match self.kind {
            RingKind::PrimeField { p } => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Rational => f.write_str("Q"),
            RingKind::PrimeField { p } => write!(f, "GF({p})"),
            RingKind::QuaternionRational => f.write_str("H_Q"),
            RingKind::Counterexample {
                base: BaseField::Rational,
            } => f.write_str("C(Q)"),
            RingKind::Counterexample {
                base: BaseField::PrimeField { p },
            } => write!(f, "C(GF({p}))"),
        }
    }
}

/// A unital coefficient ring with exact arithmetic.
///
/// Multiplication need not be commutative. Ring values carry no reference to
/// their ring; the ring object supplies all operations.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn descriptor(&self) -> RingDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the unique unital map from Z.
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, k: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Two-sided inverse, or [`Error::NotInvertible`].
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn is_central(&self, a: &Self::Elem) -> bool;

    /// Some pair of elements that do not commute, when the ring has one.
    fn noncommuting_pair(&self) -> Option<(Self::Elem, Self::Elem)> {
        None
    }

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// A random element with small coefficients, for test corpora.
    fn sample<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    /// Random element that is nonzero (invertible in a division ring).
    fn sample_nonzero<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        loop {
            let x = self.sample(rng);
            if self.inv(&x).is_ok() {
                return x;
            }
        }
    }

    /// `[a, b] = ab - ba`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// `Σ a_k·b_k`. Rings with costly normalization override this to
    /// normalize once per sum.
    fn dot<'a, I>(&self, terms: I) -> Self::Elem
    where
        I: IntoIterator<Item = (&'a Self::Elem, &'a Self::Elem)>,
    {
        terms.into_iter().fold(self.zero(), |acc, (a, b)| {
            if self.is_zero(a) || self.is_zero(b) {
                acc
            } else {
                self.add(&acc, &self.mul(a, b))
            }
        })
    }
}

/// Parses a rational literal `p`, `p/q` or `-p/q`.
pub(crate) fn parse_rational(s: &str) -> Result<num_rational::BigRational> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(num_rational::BigRational::new(num, den))
}

pub(crate) fn format_rational(q: &num_rational::BigRational) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Splits a bracketed tuple literal `[a,b,...]` into its components.
pub(crate) fn parse_tuple(s: &str, len: usize) -> Result<Vec<&str>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed {len}-tuple, got {s:?}")))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != len {
        return Err(Error::Parse(format!(
            "expected {len} components, got {} in {s:?}",
            parts.len()
        )));
    }
    Ok(parts)
}

pub(crate) fn small_rational<G: rand::Rng + ?Sized>(rng: &mut G) -> num_rational::BigRational {
    // Mostly integers, occasionally halves and thirds.
    let num = rng.random_range(-5i64..=5);
    let den = if rng.random_bool(0.75) {
        1
    } else {
        rng.random_range(2i64..=3)
    };
    num_rational::BigRational::new(num.into(), den.into())
}

/// Central elements `a_1, ..., a_n` with invertible pairwise differences.
///
/// The choice is `0, 1, ..., n-1` embedded via the prime subring.
pub fn distinct_central<R: Ring>(ring: &R, n: usize) -> Result<Vec<R::Elem>> {
    let desc = ring.descriptor();
    match desc.kind {
        RingKind::Counterexample { .. } => {
            return Err(Error::UnsupportedRing(
                "the counterexample ring has no supply of central elements with invertible differences".into(),
            ))
        }
        RingKind::PrimeField { p } if (p as u128) < n as u128 => return Err(Error::FieldTooSmall { p, needed: n }),
        _ => {}
    }
    Ok((0..n as i64).map(|k| ring.from_int(k)).collect())
}

/// Invertible `λ_1, ..., λ_n` with `λ_1 + ... + λ_n = 0`.
///
/// Returns `(1, ..., 1, -(n-1))` when the characteristic does not divide
/// `n - 1`, otherwise `(1, ..., 1, 2, -n)`; over GF(2) with `n` even, all ones.
pub fn invertible_zero_sum<R: Ring>(ring: &R, n: usize) -> Result<Vec<R::Elem>> {
    if n < 2 {
        return Err(Error::Size { n, min: 2 });
    }
    let desc = ring.descriptor();
    if !desc.is_division_ring {
        return Err(Error::UnsupportedRing(format!("{} is not a division ring", desc.kind)));
    }
    let n_i = n as i64;
    let mut out = vec![ring.one(); n];
    match desc.prime() {
        Some(2) if n % 2 == 1 => return Err(Error::NoZeroSum { n }),
        Some(2) => {}
        Some(p) if (n as u64 - 1).is_multiple_of(p) => {
            out[n - 2] = ring.from_int(2);
            out[n - 1] = ring.from_int(-n_i);
        }
        _ => out[n - 1] = ring.from_int(-(n_i - 1)),
    }
    Ok(out)
}

/// Two elements `p, q` with `pq - qp != 0`.
pub fn nonzero_commutator_pair<R: Ring>(ring: &R) -> Result<(R::Elem, R::Elem)> {
    if ring.descriptor().is_commutative {
        return Err(Error::CommutativeRing);
    }
    ring.noncommuting_pair().ok_or(Error::CommutativeRing)
}

/// Canonical nonzero central sequence `1, 2, 3, ...` used for eigenvalue
/// avoidance.
pub fn central_candidates<R: Ring>(ring: &R) -> impl Iterator<Item = R::Elem> + '_ {
    (1i64..).map(move |k| ring.from_int(k))
}

/// Uniform random small element helper that the rings share.
pub(crate) fn random_residue<G: rand::Rng + ?Sized>(rng: &mut G, p: u64) -> u64 {
    rng.random_range(0..p)
}
