//! Exhaustive identity verification over basis tuples.

use std::fmt;
use std::str::FromStr;

use crate::exactmath::{for_each_tuple, Scalar};

use super::{signed_permutations, Algebra, AlgebraError, Arg, BinaryAlgebra, TernaryAlgebra};

/// The checkable identities. Each kind corresponds to one defining equation
/// set, evaluated on all basis tuples of the appropriate length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    /// `m(m(x₁x₂x₃)x₄x₅) = m(x₁m(x₂x₃x₄)x₅) = m(x₁x₂m(x₃x₄x₅))`
    TotallyAssociative,
    /// `m(m(x₁x₂x₃)x₄x₅) = m(x₁x₂m(x₃x₄x₅))`
    WeakTotallyAssociative,
    /// `m(m(x₁x₂x₃)x₄x₅) + m(x₁m(x₂x₃x₄)x₅) + m(x₁x₂m(x₃x₄x₅)) = 0`
    PartiallyAssociative,
    /// `m(m..) − m(.m.) + m(..m) = 0`
    AlternateFirstKind,
    /// `m(m..) − m(.m.) − m(..m) = 0`
    AlternateSecondKind,
    /// `m(x_{σ(1)} ⊗ x_{σ(2)} ⊗ x_{σ(3)}) = m(x₁ ⊗ x₂ ⊗ x₃)` for all σ ∈ S₃
    Symmetric,
    /// `m(x_σ) = sgn(σ)·m(x)` for all σ ∈ S₃
    SkewSymmetric,
    /// `Σ_{σ∈S₃} sgn(σ)·m(x_σ) = 0`
    Commutative,
    /// Generalized Jacobi: the signed sum over all of S₅ acting on the five
    /// arguments of `[[x,x,x],x,x]` vanishes.
    TernaryLieS5,
    /// Generalized Jacobi, literal S₃ form: σ permutes the first three
    /// arguments only.
    TernaryLieS3,
    /// `[x₁,x₂,[x₃,x₄,x₅]] = [[x₁,x₂,x₃],x₄,x₅] + [x₃,[x₁,x₂,x₄],x₅] + [x₃,x₄,[x₁,x₂,x₅]]`
    NambuFundamental,
    /// The fundamental identity plus the cyclic condition
    /// `[x₁,x₂,x₃] + [x₂,x₃,x₁] + [x₃,x₁,x₂] = 0`.
    LieTriple,
    /// `(x₁x₂)x₃ = x₁(x₂x₃)`
    BinaryAssociative,
    /// `(x₁x₂)x₃ = −x₁(x₂x₃)`
    BinarySkewAssociative,
}

impl IdentityKind {
    pub fn arity(self) -> usize {
        match self {
            IdentityKind::BinaryAssociative | IdentityKind::BinarySkewAssociative => 2,
            _ => 3,
        }
    }

    pub const ALL: [IdentityKind; 14] = [
        IdentityKind::TotallyAssociative,
        IdentityKind::WeakTotallyAssociative,
        IdentityKind::PartiallyAssociative,
        IdentityKind::AlternateFirstKind,
        IdentityKind::AlternateSecondKind,
        IdentityKind::Symmetric,
        IdentityKind::SkewSymmetric,
        IdentityKind::Commutative,
        IdentityKind::TernaryLieS5,
        IdentityKind::TernaryLieS3,
        IdentityKind::NambuFundamental,
        IdentityKind::LieTriple,
        IdentityKind::BinaryAssociative,
        IdentityKind::BinarySkewAssociative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::TotallyAssociative => "total",
            IdentityKind::WeakTotallyAssociative => "weak-total",
            IdentityKind::PartiallyAssociative => "partial",
            IdentityKind::AlternateFirstKind => "alternate-first",
            IdentityKind::AlternateSecondKind => "alternate-second",
            IdentityKind::Symmetric => "symmetric",
            IdentityKind::SkewSymmetric => "skew-symmetric",
            IdentityKind::Commutative => "commutative",
            IdentityKind::TernaryLieS5 => "ternary-lie-s5",
            IdentityKind::TernaryLieS3 => "ternary-lie-s3",
            IdentityKind::NambuFundamental => "nambu",
            IdentityKind::LieTriple => "lie-triple",
            IdentityKind::BinaryAssociative => "binary-associative",
            IdentityKind::BinarySkewAssociative => "binary-skew",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| AlgebraError::UnknownExample(s.to_string()))
    }
}

/// First failing basis tuple (1-based) and the nonzero defect vector of the
/// violated equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub tuple: Vec<usize>,
    pub defect: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    fn ok(kind: IdentityKind) -> Self {
        IdentityReport {
            kind,
            holds: true,
            counterexample: None,
        }
    }

    fn fail(kind: IdentityKind, tuple: &[usize], defect: Vec<Scalar>) -> Self {
        IdentityReport {
            kind,
            holds: false,
            counterexample: Some(Counterexample {
                tuple: tuple.iter().map(|&i| i + 1).collect(),
                defect,
            }),
        }
    }
}

/// Evaluates the defining equation of `kind` on every basis tuple and reports
/// the first failure in lexicographic order, if any.
pub fn check_identity(alg: &Algebra, kind: IdentityKind) -> Result<IdentityReport, AlgebraError> {
    if alg.arity() != kind.arity() {
        return Err(AlgebraError::ArityMismatch {
            kind,
            expected: kind.arity(),
            got: alg.arity(),
        });
    }
    Ok(match alg {
        Algebra::Ternary(t) => check_ternary(t, kind),
        Algebra::Binary(b) => check_binary(b, kind),
    })
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vec_add_assign(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn vec_scale(v: &[Scalar], sign: i32) -> Vec<Scalar> {
    if sign >= 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| -x).collect()
    }
}

/// The three nestings `m(m(x₁x₂x₃)x₄x₅)`, `m(x₁m(x₂x₃x₄)x₅)`,
/// `m(x₁x₂m(x₃x₄x₅))` on a basis 5-tuple.
fn nestings(alg: &TernaryAlgebra, t: &[usize]) -> [Vec<Scalar>; 3] {
    let inner = |a: usize, b: usize, c: usize| alg.product_row(t[a], t[b], t[c]);
    [
        alg.eval_args(&[
            Arg::Vector(inner(0, 1, 2)),
            Arg::Basis(t[3]),
            Arg::Basis(t[4]),
        ]),
        alg.eval_args(&[
            Arg::Basis(t[0]),
            Arg::Vector(inner(1, 2, 3)),
            Arg::Basis(t[4]),
        ]),
        alg.eval_args(&[
            Arg::Basis(t[0]),
            Arg::Basis(t[1]),
            Arg::Vector(inner(2, 3, 4)),
        ]),
    ]
}

/// Searches tuples of length `len` for a nonzero defect.
fn first_defect(
    n: usize,
    len: usize,
    mut defect: impl FnMut(&[usize]) -> Option<Vec<Scalar>>,
) -> Option<(Vec<usize>, Vec<Scalar>)> {
    let mut found = None;
    for_each_tuple(n, len, |t| {
        if found.is_some() {
            return;
        }
        if let Some(d) = defect(t) {
            found = Some((t.to_vec(), d));
        }
    });
    found
}

fn check_ternary(alg: &TernaryAlgebra, kind: IdentityKind) -> IdentityReport {
    let n = alg.dim();
    let fail = |t: &[usize], d: Vec<Scalar>| IdentityReport::fail(kind, t, d);

    // associativity-type identities: signed combinations of the nestings
    let signed_nesting = |signs: [i32; 3]| {
        first_defect(n, 5, |t| {
            let [n1, n2, n3] = nestings(alg, t);
            let mut acc = vec![Scalar::Zero; n];
            for (v, sign) in [(n1, signs[0]), (n2, signs[1]), (n3, signs[2])] {
                vec_add_assign(&mut acc, &vec_scale(&v, sign));
            }
            (!is_zero_vec(&acc)).then_some(acc)
        })
    };

    let failure = match kind {
        IdentityKind::TotallyAssociative => first_defect(n, 5, |t| {
            let [n1, n2, n3] = nestings(alg, t);
            let d12 = vec_sub(&n1, &n2);
            if !is_zero_vec(&d12) {
                return Some(d12);
            }
            let d23 = vec_sub(&n2, &n3);
            (!is_zero_vec(&d23)).then_some(d23)
        }),
        IdentityKind::WeakTotallyAssociative => first_defect(n, 5, |t| {
            let [n1, _, n3] = nestings(alg, t);
            let d = vec_sub(&n1, &n3);
            (!is_zero_vec(&d)).then_some(d)
        }),
        IdentityKind::PartiallyAssociative => signed_nesting([1, 1, 1]),
        IdentityKind::AlternateFirstKind => signed_nesting([1, -1, 1]),
        IdentityKind::AlternateSecondKind => signed_nesting([1, -1, -1]),
        IdentityKind::Symmetric => {
            let perms = signed_permutations(3);
            first_defect(n, 3, |t| {
                let base = alg.product_row(t[0], t[1], t[2]);
                for (p, _) in &perms[1..] {
                    let permuted = alg.product_row(t[p[0]], t[p[1]], t[p[2]]);
                    let d = vec_sub(permuted, base);
                    if !is_zero_vec(&d) {
                        return Some(d);
                    }
                }
                None
            })
        }
        IdentityKind::SkewSymmetric => {
            let perms = signed_permutations(3);
            first_defect(n, 3, |t| {
                let base = alg.product_row(t[0], t[1], t[2]);
                for (p, sign) in &perms[1..] {
                    let permuted = alg.product_row(t[p[0]], t[p[1]], t[p[2]]);
                    let d = vec_sub(permuted, &vec_scale(base, *sign));
                    if !is_zero_vec(&d) {
                        return Some(d);
                    }
                }
                None
            })
        }
        IdentityKind::Commutative => {
            let perms = signed_permutations(3);
            first_defect(n, 3, |t| {
                let mut acc = vec![Scalar::Zero; n];
                for (p, sign) in &perms {
                    let v = alg.product_row(t[p[0]], t[p[1]], t[p[2]]);
                    vec_add_assign(&mut acc, &vec_scale(v, *sign));
                }
                (!is_zero_vec(&acc)).then_some(acc)
            })
        }
        IdentityKind::TernaryLieS5 => {
            let perms = signed_permutations(5);
            first_defect(n, 5, |t| {
                let mut acc = vec![Scalar::Zero; n];
                for (p, sign) in &perms {
                    let inner = alg.product_row(t[p[0]], t[p[1]], t[p[2]]);
                    let v = alg.eval_args(&[
                        Arg::Vector(inner),
                        Arg::Basis(t[p[3]]),
                        Arg::Basis(t[p[4]]),
                    ]);
                    vec_add_assign(&mut acc, &vec_scale(&v, *sign));
                }
                (!is_zero_vec(&acc)).then_some(acc)
            })
        }
        IdentityKind::TernaryLieS3 => {
            let perms = signed_permutations(3);
            first_defect(n, 5, |t| {
                let mut acc = vec![Scalar::Zero; n];
                for (p, sign) in &perms {
                    let inner = alg.product_row(t[p[0]], t[p[1]], t[p[2]]);
                    let v =
                        alg.eval_args(&[Arg::Vector(inner), Arg::Basis(t[3]), Arg::Basis(t[4])]);
                    vec_add_assign(&mut acc, &vec_scale(&v, *sign));
                }
                (!is_zero_vec(&acc)).then_some(acc)
            })
        }
        IdentityKind::NambuFundamental => first_defect(n, 5, |t| {
            let d = fundamental_defect(alg, t);
            (!is_zero_vec(&d)).then_some(d)
        }),
        IdentityKind::LieTriple => {
            // fundamental identity on 5-tuples first, then the cyclic sum on
            // 3-tuples
            let fund = first_defect(n, 5, |t| {
                let d = fundamental_defect(alg, t);
                (!is_zero_vec(&d)).then_some(d)
            });
            fund.or_else(|| {
                first_defect(n, 3, |t| {
                    let mut acc = alg.product_row(t[0], t[1], t[2]).to_vec();
                    vec_add_assign(&mut acc, alg.product_row(t[1], t[2], t[0]));
                    vec_add_assign(&mut acc, alg.product_row(t[2], t[0], t[1]));
                    (!is_zero_vec(&acc)).then_some(acc)
                })
            })
        }
        _ => unreachable!("binary kinds handled separately"),
    };

    match failure {
        None => IdentityReport::ok(kind),
        Some((t, d)) => fail(&t, d),
    }
}

/// `[x₁,x₂,[x₃,x₄,x₅]] − [[x₁,x₂,x₃],x₄,x₅] − [x₃,[x₁,x₂,x₄],x₅] − [x₃,x₄,[x₁,x₂,x₅]]`
fn fundamental_defect(alg: &TernaryAlgebra, t: &[usize]) -> Vec<Scalar> {
    let inner = |a: usize, b: usize, c: usize| alg.product_row(t[a], t[b], t[c]);
    let lhs = alg.eval_args(&[
        Arg::Basis(t[0]),
        Arg::Basis(t[1]),
        Arg::Vector(inner(2, 3, 4)),
    ]);
    let r1 = alg.eval_args(&[
        Arg::Vector(inner(0, 1, 2)),
        Arg::Basis(t[3]),
        Arg::Basis(t[4]),
    ]);
    let r2 = alg.eval_args(&[
        Arg::Basis(t[2]),
        Arg::Vector(inner(0, 1, 3)),
        Arg::Basis(t[4]),
    ]);
    let r3 = alg.eval_args(&[
        Arg::Basis(t[2]),
        Arg::Basis(t[3]),
        Arg::Vector(inner(0, 1, 4)),
    ]);
    let mut acc = lhs;
    for r in [r1, r2, r3] {
        for (a, b) in acc.iter_mut().zip(&r) {
            *a = &*a - b;
        }
    }
    acc
}

fn check_binary(alg: &BinaryAlgebra, kind: IdentityKind) -> IdentityReport {
    let n = alg.dim();
    let sign = match kind {
        IdentityKind::BinaryAssociative => -1,
        IdentityKind::BinarySkewAssociative => 1,
        _ => unreachable!("ternary kinds handled separately"),
    };
    let failure = first_defect(n, 3, |t| {
        let left = alg.eval_mixed(Arg::Vector(alg.product_row(t[0], t[1])), Arg::Basis(t[2]));
        let right = alg.eval_mixed(Arg::Basis(t[0]), Arg::Vector(alg.product_row(t[1], t[2])));
        // (x₁x₂)x₃ ∓ x₁(x₂x₃)
        let d: Vec<Scalar> = left
            .iter()
            .zip(&right)
            .map(|(a, b)| if sign < 0 { a - b } else { a + b })
            .collect();
        (!is_zero_vec(&d)).then_some(d)
    });
    match failure {
        None => IdentityReport::ok(kind),
        Some((t, d)) => IdentityReport::fail(kind, &t, d),
    }
}
