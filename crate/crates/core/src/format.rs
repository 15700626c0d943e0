//! JSON documents for matrices and certificates.
//!
//! Matrix: `{"ring": {"kind": ...}, "n": k, "entries": [["..", ..], ..]}`.
//! Certificate: the ring, `n`, `construction`, `target`, `similarity`
//! (`{"v", "v_inv"}` or `null`) and `pairs` (`x`, `y` and two flags).
//! Entries are scalar text encodings; integers are also accepted on input.

use serde::{Deserialize, Serialize};

use crate::dynamic::{AnyCertificate, AnyMatrix, CertificateText, PairText, TextRows};
use crate::error::{Error, Result};
use crate::matrix::{Construction, PairFlags};
use crate::scalar::RingKind;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn into_text(self) -> String {
        match self {
            Scalar::Text(s) => s,
            Scalar::Int(k) => k.to_string(),
        }
    }
}

fn to_text(rows: Vec<Vec<Scalar>>) -> TextRows {
    rows.into_iter()
        .map(|r| r.into_iter().map(Scalar::into_text).collect())
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ring: Option<RingKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    entries: Vec<Vec<Scalar>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimilarityDoc {
    v: Vec<Vec<Scalar>>,
    v_inv: Vec<Vec<Scalar>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    x: Vec<Vec<Scalar>>,
    y: Vec<Vec<Scalar>>,
    #[serde(default)]
    commutator_invertible: bool,
    #[serde(default)]
    first_invertible: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    ring: RingKind,
    n: usize,
    construction: Option<Construction>,
    target: Vec<Vec<Scalar>>,
    similarity: Option<SimilarityDoc>,
    pairs: Vec<PairDoc>,
}

fn scalars(rows: TextRows) -> Vec<Vec<Scalar>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(Scalar::Text).collect())
        .collect()
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses a matrix document. `ring` fills in a missing `"ring"` field and
/// must agree with it when both are present.
pub fn matrix_from_json(text: &str, ring: Option<RingKind>) -> Result<AnyMatrix> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(parse_err)?;
    let kind = match (doc.ring, ring) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Parse(format!("file declares ring {a} but {b} was requested")))
        }
        (Some(k), _) | (None, Some(k)) => k,
        (None, None) => return Err(Error::Parse("no ring given in the file or on the command line".into())),
    };
    let rows = to_text(doc.entries);
    if let Some(n) = doc.n {
        if n != rows.len() {
            return Err(Error::Parse(format!(
                "declared size {n} but {} rows were given",
                rows.len()
            )));
        }
    }
    AnyMatrix::parse(kind, &rows)
}

pub fn matrix_to_json(m: &AnyMatrix) -> String {
    pretty(&MatrixDoc {
        ring: Some(m.kind()),
        n: Some(m.n()),
        entries: scalars(m.rows()),
    })
}

pub fn certificate_to_json(c: &AnyCertificate) -> String {
    let t = c.to_text();
    pretty(&CertificateDoc {
        ring: t.kind,
        n: t.n,
        construction: t.construction,
        target: scalars(t.target),
        similarity: t.similarity.map(|(v, v_inv)| SimilarityDoc {
            v: scalars(v),
            v_inv: scalars(v_inv),
        }),
        pairs: t
            .pairs
            .into_iter()
            .map(|p| PairDoc {
                x: scalars(p.x),
                y: scalars(p.y),
                commutator_invertible: p.flags.commutator_invertible,
                first_invertible: p.flags.first_invertible,
            })
            .collect(),
    })
}

pub fn certificate_from_json(text: &str) -> Result<AnyCertificate> {
    let doc: CertificateDoc = serde_json::from_str(text).map_err(parse_err)?;
    let t = CertificateText {
        kind: doc.ring,
        n: doc.n,
        construction: doc.construction,
        target: to_text(doc.target),
        similarity: doc.similarity.map(|s| (to_text(s.v), to_text(s.v_inv))),
        pairs: doc
            .pairs
            .into_iter()
            .map(|p| PairText {
                x: to_text(p.x),
                y: to_text(p.y),
                flags: PairFlags {
                    commutator_invertible: p.commutator_invertible,
                    first_invertible: p.first_invertible,
                },
            })
            .collect(),
    };
    AnyCertificate::from_text(&t)
}

/// Pretty JSON for any serializable report.
pub fn report_to_json<T: Serialize>(report: &T) -> String {
    pretty(report)
}
