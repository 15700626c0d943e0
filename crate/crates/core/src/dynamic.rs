//! Ring-erased matrices and certificates, selected at run time from a
//! [`RingKind`]. Used by the CLI and the Python bindings.

use std::fmt;
use std::str::FromStr;

use crate::derivation::{product_span_dim, tder_decompose};
use crate::division::{two_commutators, two_commutators_2x2};
use crate::error::{Error, Orientation, Result};
use crate::matrix::{
    invert, minimal_polynomial, CommutatorCertificate, CommutatorPair, Construction, Matrix, PairFlags,
    SimilarityWitness, VerificationReport,
};
use crate::random::{random_invertible, random_matrix, random_singular, random_triangular, seeded};
use crate::scalar::{BaseField, PrimeField, Quaternions, Rationals, Ring, RingKind, Unitization};
use crate::stable_rank::{invertible_three_commutators, singular_two_commutators};
use crate::triangular::triangular_two_commutators;

/// Rows of scalar text encodings.
pub type TextRows = Vec<Vec<String>>;

/// Parses `Q`, `GF(p)`, `H_Q`, `C(Q)` or `C(GF(p))`.
pub fn parse_ring_kind(s: &str) -> Result<RingKind> {
    let s = s.trim();
    let prime = |t: &str| -> Option<u64> { t.strip_prefix("GF(")?.strip_suffix(')')?.trim().parse().ok() };
    let kind = match s {
        "Q" => RingKind::Rational,
        "H_Q" | "H" => RingKind::QuaternionRational,
        _ => {
            if let Some(p) = prime(s) {
                RingKind::PrimeField { p }
            } else if let Some(inner) = s.strip_prefix("C(").and_then(|t| t.strip_suffix(')')) {
                let base = match inner.trim() {
                    "Q" => BaseField::Rational,
                    t => BaseField::PrimeField {
                        p: prime(t).ok_or_else(|| Error::Parse(format!("unknown base field {t:?}")))?,
                    },
                };
                RingKind::Counterexample { base }
            } else {
                return Err(Error::Parse(format!(
                    "unknown ring {s:?}; expected Q, GF(p), H_Q, C(Q) or C(GF(p))"
                )));
            }
        }
    };
    check_kind(kind)?;
    Ok(kind)
}

fn check_kind(kind: RingKind) -> Result<()> {
    match kind {
        RingKind::PrimeField { p }
        | RingKind::Counterexample {
            base: BaseField::PrimeField { p },
        } => PrimeField::new(p).map(|_| ()),
        _ => Ok(()),
    }
}

/// Which construction to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Strategy {
    /// Pick from the ring and the matrix.
    Auto,
    /// Two commutators: noncommutative division rings, 2×2, or singular.
    Two,
    /// Three commutators for an invertible matrix.
    Three,
    /// Two commutators for a triangular matrix.
    Triangular,
    /// Two commutators for a singular matrix over a field.
    Singular,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Strategy as clap::ValueEnum>::from_str(s, true).map_err(|_| Error::Parse(format!("unknown strategy {s:?}")))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = clap::ValueEnum::to_possible_value(self).expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

/// Factors `a` with the given strategy.
pub fn factor<R: Ring>(a: &Matrix<R>, strategy: Strategy) -> Result<CommutatorCertificate<R>> {
    let desc = a.ring().descriptor();
    let n = a.n();
    match strategy {
        Strategy::Auto => {
            if !desc.is_division_ring {
                return Err(Error::UnsupportedRing(format!("{} is not a division ring", desc.kind)));
            }
            if !desc.is_commutative {
                return two_commutators(a);
            }
            if n == 2 {
                return two_commutators_2x2(a);
            }
            if n < 3 {
                return Err(Error::Size { n, min: 2 });
            }
            if let Some(o) = a.triangular_orientation() {
                if let Ok(cert) = triangular_two_commutators(a, o) {
                    return Ok(cert);
                }
            }
            if invert(a).is_ok() {
                invertible_three_commutators(a)
            } else {
                singular_two_commutators(a)
            }
        }
        Strategy::Two => {
            if !desc.is_commutative {
                two_commutators(a)
            } else if n == 2 && desc.is_division_ring {
                two_commutators_2x2(a)
            } else {
                singular_two_commutators(a)
            }
        }
        Strategy::Three => invertible_three_commutators(a),
        Strategy::Triangular => {
            let o = a
                .triangular_orientation()
                .ok_or(Error::NotTriangular(Orientation::Upper))?;
            triangular_two_commutators(a, o)
        }
        Strategy::Singular => singular_two_commutators(a),
    }
}

/// Shape of a random test matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum RandomShape {
    Any,
    Invertible,
    Singular,
    Upper,
    Lower,
}

impl FromStr for RandomShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <RandomShape as clap::ValueEnum>::from_str(s, true).map_err(|_| Error::Parse(format!("unknown shape {s:?}")))
    }
}

fn random_typed<R: Ring>(ring: &R, n: usize, shape: RandomShape, seed: u64) -> Result<Matrix<R>> {
    let mut rng = seeded(seed);
    let division = ring.descriptor().is_division_ring;
    Ok(match shape {
        RandomShape::Any => random_matrix(ring, n, &mut rng),
        RandomShape::Upper => random_triangular(ring, n, Orientation::Upper, &mut rng),
        RandomShape::Lower => random_triangular(ring, n, Orientation::Lower, &mut rng),
        RandomShape::Invertible | RandomShape::Singular if !division => {
            return Err(Error::UnsupportedRing(format!(
                "{} is not a division ring",
                ring.descriptor().kind
            )))
        }
        RandomShape::Invertible => random_invertible(ring, n, &mut rng),
        RandomShape::Singular => random_singular(ring, n, &mut rng),
    })
}

fn rows_text<R: Ring>(m: &Matrix<R>) -> TextRows {
    let ring = m.ring();
    (0..m.n())
        .map(|i| m.row(i).iter().map(|x| ring.format_elem(x)).collect())
        .collect()
}

fn parse_rows<R: Ring>(ring: R, rows: &[Vec<String>]) -> Result<Matrix<R>> {
    let n = rows.len();
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::Parse(format!(
            "row {} has {} entries; a {n}x{n} matrix was expected",
            i + 1,
            rows[i].len()
        )));
    }
    let entries = rows
        .iter()
        .flatten()
        .map(|s| ring.parse_elem(s))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(ring, n, entries)
}

/// A matrix over one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatrix {
    Rational(Matrix<Rationals>),
    Prime(Matrix<PrimeField>),
    Quaternion(Matrix<Quaternions>),
    CounterexampleRational(Matrix<Unitization<Rationals>>),
    CounterexamplePrime(Matrix<Unitization<PrimeField>>),
}

/// A certificate over one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyCertificate {
    Rational(CommutatorCertificate<Rationals>),
    Prime(CommutatorCertificate<PrimeField>),
    Quaternion(CommutatorCertificate<Quaternions>),
    CounterexampleRational(CommutatorCertificate<Unitization<Rationals>>),
    CounterexamplePrime(CommutatorCertificate<Unitization<PrimeField>>),
}

/// Runs `$body` with `$x` bound to the typed payload.
macro_rules! dispatch {
    ($value:expr, $enum:ident, |$x:ident| $body:expr) => {
        match $value {
            $enum::Rational($x) => $body,
            $enum::Prime($x) => $body,
            $enum::Quaternion($x) => $body,
            $enum::CounterexampleRational($x) => $body,
            $enum::CounterexamplePrime($x) => $body,
        }
    };
}

/// Like `dispatch!`, wrapping the result in the same variant of `$to`.
macro_rules! dispatch_map {
    ($value:expr, $from:ident => $to:ident, |$x:ident| $body:expr) => {
        match $value {
            $from::Rational($x) => $to::Rational($body),
            $from::Prime($x) => $to::Prime($body),
            $from::Quaternion($x) => $to::Quaternion($body),
            $from::CounterexampleRational($x) => $to::CounterexampleRational($body),
            $from::CounterexamplePrime($x) => $to::CounterexamplePrime($body),
        }
    };
}

/// Runs `$body` with `$ring` bound to the typed ring for `$kind`, wrapping
/// the result in the matching variant of `$to`.
macro_rules! with_ring {
    ($kind:expr, $to:ident, |$ring:ident| $body:expr) => {
        match $kind {
            RingKind::Rational => {
                let $ring = Rationals;
                $to::Rational($body)
            }
            RingKind::PrimeField { p } => {
                let $ring = PrimeField::new(p)?;
                $to::Prime($body)
            }
            RingKind::QuaternionRational => {
                let $ring = Quaternions;
                $to::Quaternion($body)
            }
            RingKind::Counterexample {
                base: BaseField::Rational,
            } => {
                let $ring = Unitization::new(Rationals)?;
                $to::CounterexampleRational($body)
            }
            RingKind::Counterexample {
                base: BaseField::PrimeField { p },
            } => {
                let $ring = Unitization::new(PrimeField::new(p)?)?;
                $to::CounterexamplePrime($body)
            }
        }
    };
}

/// Result of [`AnyMatrix::span_report`], with the basis as text.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SpanSummary {
    pub n: usize,
    pub dimension: usize,
    pub total: usize,
    pub full: bool,
    pub minimal_polynomial_degree: usize,
    pub basis: Vec<TextRows>,
}

impl SpanSummary {
    pub fn line(&self) -> String {
        format!(
            "dimension {}/{}, minimal-polynomial degree {}",
            self.dimension, self.total, self.minimal_polynomial_degree
        )
    }
}

impl AnyMatrix {
    pub fn parse(kind: RingKind, rows: &[Vec<String>]) -> Result<Self> {
        Ok(with_ring!(kind, AnyMatrix, |ring| parse_rows(ring, rows)?))
    }

    pub fn random(kind: RingKind, n: usize, shape: RandomShape, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Size { n, min: 1 });
        }
        Ok(with_ring!(kind, AnyMatrix, |ring| random_typed(&ring, n, shape, seed)?))
    }

    pub fn identity(kind: RingKind, n: usize) -> Result<Self> {
        Ok(with_ring!(kind, AnyMatrix, |ring| Matrix::identity(ring, n)))
    }

    pub fn kind(&self) -> RingKind {
        dispatch!(self, AnyMatrix, |m| m.ring().descriptor().kind)
    }

    pub fn n(&self) -> usize {
        dispatch!(self, AnyMatrix, |m| m.n())
    }

    pub fn rows(&self) -> TextRows {
        dispatch!(self, AnyMatrix, |m| rows_text(m))
    }

    pub fn factor(&self, strategy: Strategy) -> Result<AnyCertificate> {
        Ok(dispatch_map!(self, AnyMatrix => AnyCertificate, |m| factor(m, strategy)?))
    }

    pub fn minimal_polynomial(&self) -> Result<Vec<String>> {
        dispatch!(self, AnyMatrix, |m| {
            let ring = m.ring();
            Ok(minimal_polynomial(m)?.iter().map(|c| ring.format_elem(c)).collect())
        })
    }

    pub fn span_report(&self) -> Result<SpanSummary> {
        dispatch!(self, AnyMatrix, |m| {
            let r = product_span_dim(m)?;
            Ok(SpanSummary {
                n: m.n(),
                dimension: r.dimension,
                total: m.n() * m.n(),
                full: r.full,
                minimal_polynomial_degree: r.minimal_polynomial_degree,
                basis: r.basis.iter().map(rows_text).collect(),
            })
        })
    }

    /// Pairs `(p_j, q_j)` with `x = Σ [a, p_j]·[a, q_j]`, as text.
    pub fn decompose_fixed(&self, x: &AnyMatrix) -> Result<Vec<(TextRows, TextRows)>> {
        macro_rules! go {
            ($a:expr, $x:expr) => {
                Ok(tder_decompose($a, $x)?
                    .iter()
                    .map(|(p, q)| (rows_text(p), rows_text(q)))
                    .collect())
            };
        }
        match (self, x) {
            (AnyMatrix::Rational(a), AnyMatrix::Rational(x)) => go!(a, x),
            (AnyMatrix::Prime(a), AnyMatrix::Prime(x)) => go!(a, x),
            (AnyMatrix::Quaternion(a), AnyMatrix::Quaternion(x)) => go!(a, x),
            (AnyMatrix::CounterexampleRational(a), AnyMatrix::CounterexampleRational(x)) => go!(a, x),
            (AnyMatrix::CounterexamplePrime(a), AnyMatrix::CounterexamplePrime(x)) => go!(a, x),
            _ => Err(Error::RingMismatch),
        }
    }
}

impl fmt::Display for AnyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        dispatch!(self, AnyMatrix, |m| fmt::Display::fmt(m, f))
    }
}

/// Text form of one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairText {
    pub x: TextRows,
    pub y: TextRows,
    pub flags: PairFlags,
}

/// Text form of a certificate, independent of the ring type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateText {
    pub kind: RingKind,
    pub n: usize,
    pub construction: Option<Construction>,
    pub target: TextRows,
    pub similarity: Option<(TextRows, TextRows)>,
    pub pairs: Vec<PairText>,
}

fn cert_text<R: Ring>(c: &CommutatorCertificate<R>) -> CertificateText {
    CertificateText {
        kind: c.target.ring().descriptor().kind,
        n: c.target.n(),
        construction: c.construction,
        target: rows_text(&c.target),
        similarity: c.similarity.as_ref().map(|w| (rows_text(&w.v), rows_text(&w.v_inv))),
        pairs: c
            .pairs
            .iter()
            .map(|p| PairText {
                x: rows_text(&p.x),
                y: rows_text(&p.y),
                flags: p.flags,
            })
            .collect(),
    }
}

fn cert_from_text<R: Ring>(ring: R, t: &CertificateText) -> Result<CommutatorCertificate<R>> {
    let target = parse_rows(ring.clone(), &t.target)?;
    if target.n() != t.n {
        return Err(Error::Parse(format!(
            "declared size {} but the target is {}x{}",
            t.n,
            target.n(),
            target.n()
        )));
    }
    let similarity = match &t.similarity {
        None => None,
        Some((v, v_inv)) => Some(SimilarityWitness {
            v: parse_rows(ring.clone(), v)?,
            v_inv: parse_rows(ring.clone(), v_inv)?,
        }),
    };
    let pairs = t
        .pairs
        .iter()
        .map(|p| {
            Ok(
                CommutatorPair::new(parse_rows(ring.clone(), &p.x)?, parse_rows(ring.clone(), &p.y)?)
                    .with_flags(p.flags),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CommutatorCertificate {
        target,
        similarity,
        pairs,
        construction: t.construction,
    })
}

impl AnyCertificate {
    pub fn from_text(t: &CertificateText) -> Result<Self> {
        Ok(with_ring!(t.kind, AnyCertificate, |ring| cert_from_text(ring, t)?))
    }

    pub fn to_text(&self) -> CertificateText {
        dispatch!(self, AnyCertificate, |c| cert_text(c))
    }

    pub fn verify(&self) -> VerificationReport {
        dispatch!(self, AnyCertificate, |c| c.verify())
    }

    pub fn kind(&self) -> RingKind {
        dispatch!(self, AnyCertificate, |c| c.target.ring().descriptor().kind)
    }

    pub fn n(&self) -> usize {
        dispatch!(self, AnyCertificate, |c| c.target.n())
    }

    pub fn pair_count(&self) -> usize {
        dispatch!(self, AnyCertificate, |c| c.pairs.len())
    }

    pub fn construction(&self) -> Option<Construction> {
        dispatch!(self, AnyCertificate, |c| c.construction)
    }

    pub fn target(&self) -> AnyMatrix {
        dispatch_map!(self, AnyCertificate => AnyMatrix, |c| c.target.clone())
    }
}
