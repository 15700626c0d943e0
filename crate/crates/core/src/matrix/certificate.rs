//! Commutator-product certificates and their verifier.
//!
//! A certificate claims `target = v⁻¹ · [x₁,y₁]·…·[x_k,y_k] · v`, where `v`
//! defaults to the identity. The verifier only multiplies; `v⁻¹` is stored.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::elim::invert;
use super::{commutator, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// An invertible `v` together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityWitness<R: Ring> {
    pub v: Matrix<R>,
    pub v_inv: Matrix<R>,
}

impl<R: Ring> SimilarityWitness<R> {
    /// Checks `v·v_inv = v_inv·v = 1`.
    pub fn new(v: Matrix<R>, v_inv: Matrix<R>) -> Result<Self> {
        let w = SimilarityWitness { v, v_inv };
        if w.is_valid()? {
            Ok(w)
        } else {
            Err(Error::Precondition("v_inv is not the inverse of v".into()))
        }
    }

    pub fn from_invertible(v: Matrix<R>) -> Result<Self> {
        let v_inv = invert(&v)?;
        Ok(SimilarityWitness { v, v_inv })
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let id = Matrix::identity(ring, n);
        SimilarityWitness {
            v: id.clone(),
            v_inv: id,
        }
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    pub fn is_identity(&self) -> bool {
        self.v.is_identity() && self.v_inv.is_identity()
    }

    fn is_valid(&self) -> Result<bool> {
        Ok(self.v.try_mul(&self.v_inv)?.is_identity() && self.v_inv.try_mul(&self.v)?.is_identity())
    }

    /// Witness for `u·(v·a·v⁻¹)·u⁻¹`, i.e. `(u·v, v⁻¹·u⁻¹)`.
    pub fn then(&self, outer: &SimilarityWitness<R>) -> Self {
        SimilarityWitness {
            v: &outer.v * &self.v,
            v_inv: &self.v_inv * &outer.v_inv,
        }
    }

    pub fn inverse(&self) -> Self {
        SimilarityWitness {
            v: self.v_inv.clone(),
            v_inv: self.v.clone(),
        }
    }
}

/// Invertibility claims attached to one commutator pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairFlags {
    /// `[x, y]` is claimed invertible.
    pub commutator_invertible: bool,
    /// `x` is claimed invertible.
    pub first_invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorPair<R: Ring> {
    pub x: Matrix<R>,
    pub y: Matrix<R>,
    pub flags: PairFlags,
}

impl<R: Ring> CommutatorPair<R> {
    pub fn new(x: Matrix<R>, y: Matrix<R>) -> Self {
        CommutatorPair {
            x,
            y,
            flags: PairFlags::default(),
        }
    }

    pub fn with_flags(mut self, flags: PairFlags) -> Self {
        self.flags = flags;
        self
    }

    pub fn commutator(&self) -> Result<Matrix<R>> {
        commutator(&self.x, &self.y)
    }
}

/// Which construction produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// One commutator with a distinct central diagonal.
    ZeroDiagonal,
    /// One commutator with a superdiagonal shift.
    TraceZeroTriangular,
    /// Triangular matrix as two zero-diagonal factors.
    TriangularTwo,
    /// Invertible matrix as three commutators.
    InvertibleThree,
    /// Singular matrix as two commutators.
    SingularTwo,
    /// Explicit 2×2 case analysis.
    TwoByTwo,
    /// Identity as two commutators.
    IdentityTwo,
    /// Recursive two-commutator construction over a noncommutative division ring.
    DivisionTwo,
}

impl Construction {
    pub const ALL: [Construction; 8] = [
        Construction::ZeroDiagonal,
        Construction::TraceZeroTriangular,
        Construction::TriangularTwo,
        Construction::InvertibleThree,
        Construction::SingularTwo,
        Construction::TwoByTwo,
        Construction::IdentityTwo,
        Construction::DivisionTwo,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Construction::ZeroDiagonal => "zero-diagonal",
            Construction::TraceZeroTriangular => "trace-zero-triangular",
            Construction::TriangularTwo => "triangular-two",
            Construction::InvertibleThree => "invertible-three",
            Construction::SingularTwo => "singular-two",
            Construction::TwoByTwo => "two-by-two",
            Construction::IdentityTwo => "identity-two",
            Construction::DivisionTwo => "division-two",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Construction::ALL.into_iter().find(|c| c.tag() == tag)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorCertificate<R: Ring> {
    pub target: Matrix<R>,
    pub similarity: Option<SimilarityWitness<R>>,
    pub pairs: Vec<CommutatorPair<R>>,
    pub construction: Option<Construction>,
}

impl<R: Ring> CommutatorCertificate<R> {
    pub fn new(target: Matrix<R>, pairs: Vec<CommutatorPair<R>>) -> Self {
        CommutatorCertificate {
            target,
            similarity: None,
            pairs,
            construction: None,
        }
    }

    /// Stores `w` unless it is the identity.
    pub fn with_similarity(mut self, w: SimilarityWitness<R>) -> Self {
        self.similarity = (!w.is_identity()).then_some(w);
        self
    }

    pub fn with_construction(mut self, c: Construction) -> Self {
        self.construction = Some(c);
        self
    }

    pub fn verify(&self) -> VerificationReport {
        verify_certificate(self)
    }

    /// Product of the commutators, or the identity when there are no pairs.
    pub fn product(&self) -> Result<Matrix<R>> {
        let mut acc = Matrix::identity(self.target.ring().clone(), self.target.n());
        for p in &self.pairs {
            acc = acc.try_mul(&p.commutator()?)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum VerifyFailure {
    Shape { detail: String },
    BadWitness,
    Mismatch { row: usize, col: usize },
    FlagRefuted { pair: usize, claim: String },
}

impl VerifyFailure {
    pub fn code(&self) -> &'static str {
        match self {
            VerifyFailure::Shape { .. } => "E_SHAPE",
            VerifyFailure::BadWitness => "E_BAD_WITNESS",
            VerifyFailure::Mismatch { .. } => "E_MISMATCH",
            VerifyFailure::FlagRefuted { .. } => "E_FLAG_REFUTED",
        }
    }
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::Shape { detail } => write!(f, "{}: {detail}", self.code()),
            VerifyFailure::BadWitness => write!(f, "{}: v·v_inv is not the identity", self.code()),
            VerifyFailure::Mismatch { row, col } => {
                write!(
                    f,
                    "{}: product differs from target at entry ({}, {})",
                    self.code(),
                    row + 1,
                    col + 1
                )
            }
            VerifyFailure::FlagRefuted { pair, claim } => {
                write!(f, "{}: pair {} claims {claim}, which is false", self.code(), pair + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub failure: Option<VerifyFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => f.write_str("pass"),
            Some(e) => write!(f, "fail: {e}"),
        }
    }
}

fn fail(f: VerifyFailure) -> VerificationReport {
    VerificationReport { failure: Some(f) }
}

fn shape(e: Error) -> VerificationReport {
    fail(VerifyFailure::Shape { detail: e.to_string() })
}

fn is_invertible<R: Ring>(m: &Matrix<R>) -> bool {
    invert(m).is_ok()
}

/// Recomputes every commutator, the product, the conjugation and the flags.
pub fn verify_certificate<R: Ring>(cert: &CommutatorCertificate<R>) -> VerificationReport {
    let target = &cert.target;
    let mut product = Matrix::identity(target.ring().clone(), target.n());
    let mut commutators = Vec::with_capacity(cert.pairs.len());
    for p in &cert.pairs {
        let c = match p.commutator() {
            Ok(c) => c,
            Err(e) => return shape(e),
        };
        product = match product.try_mul(&c) {
            Ok(m) => m,
            Err(e) => return shape(e),
        };
        commutators.push(c);
    }
    let recovered = match &cert.similarity {
        None => product,
        Some(w) => {
            match w.is_valid() {
                Ok(true) => {}
                Ok(false) => return fail(VerifyFailure::BadWitness),
                Err(e) => return shape(e),
            }
            match w.v_inv.try_mul(&product).and_then(|m| m.try_mul(&w.v)) {
                Ok(m) => m,
                Err(e) => return shape(e),
            }
        }
    };
    if recovered.ring() != target.ring() {
        return shape(Error::RingMismatch);
    }
    if let Some((row, col)) = recovered.first_mismatch(target) {
        return fail(VerifyFailure::Mismatch { row, col });
    }
    for (k, (p, c)) in cert.pairs.iter().zip(&commutators).enumerate() {
        if p.flags.commutator_invertible && !is_invertible(c) {
            return fail(VerifyFailure::FlagRefuted {
                pair: k,
                claim: "an invertible commutator".into(),
            });
        }
        if p.flags.first_invertible && !is_invertible(&p.x) {
            return fail(VerifyFailure::FlagRefuted {
                pair: k,
                claim: "an invertible first factor".into(),
            });
        }
    }
    VerificationReport { failure: None }
}
