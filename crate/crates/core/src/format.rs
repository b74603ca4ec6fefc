//! TOML document formats for algebras and cochains.
//!
//! An algebra document:
//!
//! ```toml
//! dim = 2
//! arity = 3
//! field = "Q"        # or "Q(i)"
//!
//! [[constants]]
//! i = 1
//! j = 1
//! k = 1              # arity-3 documents only
//! s = 2
//! c = "1"            # exact scalar string: "p", "p/q", "p/q+r/s i"
//! ```
//!
//! A cochain document:
//!
//! ```toml
//! dim = 2
//! theory = "ternary-weak"
//! degree = 1
//! field = "Q"
//!
//! [[entries]]
//! inputs = [1, 1, 1]
//! output = 2
//! c = "1"
//! ```
//!
//! Unlisted coefficients are zero; duplicate index tuples are rejected with
//! the offending entry's position.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebras::{Algebra, BinaryAlgebra, TernaryAlgebra};
use crate::cochain::{Cochain, Theory};
use crate::exactmath::{FieldKind, Scalar};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("document syntax error: {0}")]
    Syntax(String),
    #[error("dim must be at least 1")]
    ZeroDimension,
    #[error("arity must be 2 or 3, got {0}")]
    BadArity(usize),
    #[error("unknown field `{0}` (expected \"Q\" or \"Q(i)\")")]
    BadField(String),
    #[error("unknown theory `{0}`")]
    BadTheory(String),
    #[error("{location}: bad scalar `{text}`: {reason}")]
    BadScalar {
        location: String,
        text: String,
        reason: String,
    },
    #[error("{location}: index {index} out of range 1..={dim}")]
    IndexOutOfRange {
        location: String,
        index: usize,
        dim: usize,
    },
    #[error("{location}: duplicate entry for the same index tuple")]
    Duplicate { location: String },
    #[error("{location}: field \"Q\" does not admit the imaginary value `{text}`")]
    NotInField { location: String, text: String },
    #[error("{location}: ternary documents need `k`, binary documents must omit it")]
    KIndex { location: String },
    #[error("{location}: entry has {got} inputs, expected {expected}")]
    InputCount {
        location: String,
        got: usize,
        expected: usize,
    },
}

#[derive(Serialize, Deserialize)]
struct ConstantRecord {
    i: usize,
    j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    s: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct AlgebraRecord {
    dim: usize,
    arity: usize,
    field: String,
    #[serde(default)]
    constants: Vec<ConstantRecord>,
}

/// A parsed algebra document: the algebra plus its declared scalar field.
#[derive(Clone, Debug)]
pub struct AlgebraDocument {
    pub algebra: Algebra,
    pub field: FieldKind,
}

fn parse_scalar(text: &str, field: FieldKind, location: &str) -> Result<Scalar, FormatError> {
    let value: Scalar = text.parse().map_err(|e| FormatError::BadScalar {
        location: location.to_string(),
        text: text.to_string(),
        reason: format!("{e}"),
    })?;
    if !value.lies_in(field) {
        return Err(FormatError::NotInField {
            location: location.to_string(),
            text: text.to_string(),
        });
    }
    Ok(value)
}

fn parse_field(name: &str) -> Result<FieldKind, FormatError> {
    name.parse()
        .map_err(|_| FormatError::BadField(name.to_string()))
}

fn check_index(ix: usize, dim: usize, location: &str) -> Result<(), FormatError> {
    if ix == 0 || ix > dim {
        return Err(FormatError::IndexOutOfRange {
            location: location.to_string(),
            index: ix,
            dim,
        });
    }
    Ok(())
}

/// Parses an algebra document from TOML text.
pub fn parse_algebra(text: &str) -> Result<AlgebraDocument, FormatError> {
    let record: AlgebraRecord =
        toml::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    if record.dim == 0 {
        return Err(FormatError::ZeroDimension);
    }
    let field = parse_field(&record.field)?;
    let dim = record.dim;
    match record.arity {
        3 => {
            let mut entries = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            for (pos, rec) in record.constants.iter().enumerate() {
                let location = format!("constants[{pos}]");
                let Some(k) = rec.k else {
                    return Err(FormatError::KIndex { location });
                };
                for ix in [rec.i, rec.j, k, rec.s] {
                    check_index(ix, dim, &location)?;
                }
                if !seen.insert((rec.i, rec.j, k, rec.s)) {
                    return Err(FormatError::Duplicate { location });
                }
                let c = parse_scalar(&rec.c, field, &location)?;
                entries.push((rec.i, rec.j, k, rec.s, c));
            }
            let algebra =
                TernaryAlgebra::from_entries(dim, &entries).expect("entries validated above");
            Ok(AlgebraDocument {
                algebra: Algebra::Ternary(algebra),
                field,
            })
        }
        2 => {
            let mut entries = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            for (pos, rec) in record.constants.iter().enumerate() {
                let location = format!("constants[{pos}]");
                if rec.k.is_some() {
                    return Err(FormatError::KIndex { location });
                }
                for ix in [rec.i, rec.j, rec.s] {
                    check_index(ix, dim, &location)?;
                }
                if !seen.insert((rec.i, rec.j, rec.s)) {
                    return Err(FormatError::Duplicate { location });
                }
                let c = parse_scalar(&rec.c, field, &location)?;
                entries.push((rec.i, rec.j, rec.s, c));
            }
            let algebra =
                BinaryAlgebra::from_entries(dim, &entries).expect("entries validated above");
            Ok(AlgebraDocument {
                algebra: Algebra::Binary(algebra),
                field,
            })
        }
        other => Err(FormatError::BadArity(other)),
    }
}

/// Serializes an algebra to the document format, listing only nonzero
/// constants in lexicographic order.
pub fn emit_algebra(algebra: &Algebra, field: FieldKind) -> String {
    let constants = algebra
        .nonzero_constants()
        .into_iter()
        .map(|(indices, s, c)| ConstantRecord {
            i: indices[0],
            j: indices[1],
            k: indices.get(2).copied(),
            s,
            c: c.to_string(),
        })
        .collect();
    let record = AlgebraRecord {
        dim: algebra.dim(),
        arity: algebra.arity(),
        field: field.to_string(),
        constants,
    };
    toml::to_string(&record).expect("algebra records serialize")
}

#[derive(Serialize, Deserialize)]
struct CochainEntryRecord {
    inputs: Vec<usize>,
    output: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct CochainRecord {
    dim: usize,
    theory: String,
    degree: usize,
    field: String,
    #[serde(default)]
    entries: Vec<CochainEntryRecord>,
}

#[derive(Clone, Debug)]
pub struct CochainDocument {
    pub cochain: Cochain,
    pub field: FieldKind,
}

/// Parses a cochain document from TOML text.
pub fn parse_cochain(text: &str) -> Result<CochainDocument, FormatError> {
    let record: CochainRecord =
        toml::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    if record.dim == 0 {
        return Err(FormatError::ZeroDimension);
    }
    let field = parse_field(&record.field)?;
    let theory: Theory = record
        .theory
        .parse()
        .map_err(|_| FormatError::BadTheory(record.theory.clone()))?;
    let slots = theory.slots(record.degree);
    let mut entries = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (pos, rec) in record.entries.iter().enumerate() {
        let location = format!("entries[{pos}]");
        if rec.inputs.len() != slots {
            return Err(FormatError::InputCount {
                location,
                got: rec.inputs.len(),
                expected: slots,
            });
        }
        for &ix in rec.inputs.iter().chain(std::iter::once(&rec.output)) {
            check_index(ix, record.dim, &location)?;
        }
        if !seen.insert((rec.inputs.clone(), rec.output)) {
            return Err(FormatError::Duplicate { location });
        }
        let c = parse_scalar(&rec.c, field, &location)?;
        entries.push((rec.inputs.clone(), rec.output, c));
    }
    let cochain = Cochain::from_entries(theory, record.degree, record.dim, &entries)
        .map_err(|e| FormatError::Syntax(e.to_string()))?;
    Ok(CochainDocument { cochain, field })
}

/// Serializes a cochain to the document format.
pub fn emit_cochain(cochain: &Cochain, field: FieldKind) -> String {
    let entries = cochain
        .nonzero_entries()
        .into_iter()
        .map(|(inputs, output, c)| CochainEntryRecord {
            inputs,
            output,
            c: c.to_string(),
        })
        .collect();
    let record = CochainRecord {
        dim: cochain.dim(),
        theory: cochain.theory().name().to_string(),
        degree: cochain.degree(),
        field: field.to_string(),
        entries,
    };
    toml::to_string(&record).expect("cochain records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{builtin_example, BinaryAlgebra};

    #[test]
    fn algebra_round_trip() {
        let alg = builtin_example("totally-assoc-2d").unwrap();
        let text = emit_algebra(&alg, FieldKind::Rational);
        let doc = parse_algebra(&text).unwrap();
        assert!(doc.algebra == alg);
        assert_eq!(doc.field, FieldKind::Rational);
        // byte-stable: emitting again gives the same text
        assert_eq!(emit_algebra(&doc.algebra, doc.field), text);
    }

    #[test]
    fn binary_round_trip() {
        let alg = Algebra::Binary(
            BinaryAlgebra::from_entries(2, &[(1, 1, 2, Scalar::ratio(-3, 2))]).unwrap(),
        );
        let text = emit_algebra(&alg, FieldKind::Gaussian);
        let doc = parse_algebra(&text).unwrap();
        assert!(doc.algebra == alg);
    }

    #[test]
    fn duplicate_constants_are_located() {
        let text = r#"
dim = 2
arity = 3
field = "Q"

[[constants]]
i = 1
j = 1
k = 1
s = 2
c = "1"

[[constants]]
i = 1
j = 1
k = 1
s = 2
c = "2"
"#;
        let err = parse_algebra(text).unwrap_err();
        assert!(err.to_string().contains("constants[1]"), "{err}");
    }

    #[test]
    fn rejects_bad_scalars_and_indices() {
        let bad_scalar = r#"
dim = 2
arity = 3
field = "Q"
[[constants]]
i = 1
j = 1
k = 1
s = 1
c = "1/0"
"#;
        assert!(parse_algebra(bad_scalar).is_err());
        let bad_index = r#"
dim = 2
arity = 3
field = "Q"
[[constants]]
i = 3
j = 1
k = 1
s = 1
c = "1"
"#;
        let err = parse_algebra(bad_index).unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
    }

    #[test]
    fn rejects_imaginary_scalars_over_q() {
        let text = r#"
dim = 1
arity = 2
field = "Q"
[[constants]]
i = 1
j = 1
s = 1
c = "0+1 i"
"#;
        let err = parse_algebra(text).unwrap_err();
        assert!(matches!(err, FormatError::NotInField { .. }), "{err}");
        let ok = text.replace("field = \"Q\"", "field = \"Q(i)\"");
        assert!(parse_algebra(&ok).is_ok());
    }

    #[test]
    fn rejects_dim_zero_and_bad_arity() {
        assert!(matches!(
            parse_algebra("dim = 0\narity = 3\nfield = \"Q\"\n"),
            Err(FormatError::ZeroDimension)
        ));
        assert!(matches!(
            parse_algebra("dim = 1\narity = 4\nfield = \"Q\"\n"),
            Err(FormatError::BadArity(4))
        ));
    }

    #[test]
    fn k_index_arity_rules() {
        let ternary_missing_k = r#"
dim = 1
arity = 3
field = "Q"
[[constants]]
i = 1
j = 1
s = 1
c = "1"
"#;
        assert!(matches!(
            parse_algebra(ternary_missing_k),
            Err(FormatError::KIndex { .. })
        ));
        let binary_with_k = r#"
dim = 1
arity = 2
field = "Q"
[[constants]]
i = 1
j = 1
k = 1
s = 1
c = "1"
"#;
        assert!(matches!(
            parse_algebra(binary_with_k),
            Err(FormatError::KIndex { .. })
        ));
    }

    #[test]
    fn cochain_round_trip() {
        let cochain = Cochain::from_entries(
            Theory::TernaryWeak,
            1,
            2,
            &[
                (vec![1, 2, 1], 2, Scalar::ratio(1, 3)),
                (vec![2, 2, 2], 1, Scalar::from_int(-2)),
            ],
        )
        .unwrap();
        let text = emit_cochain(&cochain, FieldKind::Rational);
        let doc = parse_cochain(&text).unwrap();
        assert!(doc.cochain == cochain);
    }

    #[test]
    fn cochain_input_count_is_checked() {
        let text = r#"
dim = 2
theory = "ternary-weak"
degree = 1
field = "Q"
[[entries]]
inputs = [1, 1]
output = 1
c = "1"
"#;
        let err = parse_cochain(text).unwrap_err();
        assert!(matches!(err, FormatError::InputCount { .. }), "{err}");
    }
}
