//! Obstructions to extending the level-1/2 coboundary operators: for each
//! case, the most general degree-3 candidate operator is composed with the
//! theory's level-2 coboundary, normalized by the theory's oriented identity,
//! and the requirement that the composition vanish identically becomes an
//! exact linear system on the ansatz coefficients. A zero nullspace is the
//! certificate that no extension exists.
//!
//! The constraints are extracted from the free composition over 7 (ternary)
//! or 4 (binary) formal variables, not from any particular finite-dimensional
//! algebra, so accidental relations of small examples cannot leak in.

use std::collections::BTreeSet;
use std::fmt;

use crate::exactmath::{ExactMatrix, Scalar};
use crate::freeterm::{
    normalize, templates, LinearForm, RewriteRule, SymbolicOperator, Term, TermError,
};

/// The ansatz cases. The ternary cases share the same eight placement
/// patterns (the ansatz shape depends only on arity and degree); they differ
/// in the level-2 operator composed with and in the rewrite rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnsatzCase {
    TernaryPartial,
    TernaryAlternateFirst,
    TernaryAlternateSecond,
    BinarySkew,
}

impl AnsatzCase {
    pub fn name(self) -> &'static str {
        match self {
            AnsatzCase::TernaryPartial => "ternary-partial",
            AnsatzCase::TernaryAlternateFirst => "ternary-alt1",
            AnsatzCase::TernaryAlternateSecond => "ternary-alt2",
            AnsatzCase::BinarySkew => "binary-skew",
        }
    }

    fn rule(self) -> RewriteRule {
        match self {
            AnsatzCase::TernaryPartial => RewriteRule::PartialTernary,
            AnsatzCase::TernaryAlternateFirst => RewriteRule::AlternateFirstTernary,
            AnsatzCase::TernaryAlternateSecond => RewriteRule::AlternateSecondTernary,
            AnsatzCase::BinarySkew => RewriteRule::SkewBinary,
        }
    }

    fn delta2(self) -> SymbolicOperator {
        match self {
            AnsatzCase::TernaryPartial => templates::partial_family_delta2("g", [1, 1, 1]),
            AnsatzCase::TernaryAlternateFirst => templates::partial_family_delta2("g", [1, -1, 1]),
            AnsatzCase::TernaryAlternateSecond => {
                templates::partial_family_delta2("g", [1, -1, -1])
            }
            AnsatzCase::BinarySkew => templates::skew_delta2("g"),
        }
    }
}

impl std::str::FromStr for AnsatzCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ternary-partial" => Ok(AnsatzCase::TernaryPartial),
            "ternary-alt1" => Ok(AnsatzCase::TernaryAlternateFirst),
            "ternary-alt2" => Ok(AnsatzCase::TernaryAlternateSecond),
            "binary-skew" => Ok(AnsatzCase::BinarySkew),
            other => Err(format!("unknown ansatz case `{other}`")),
        }
    }
}

/// General degree-3 candidate: one placement pattern per coefficient
/// `a1..ak` (k = 8 ternary, k = 5 binary), each containing the degree-3
/// symbol `f` exactly once.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub case: AnsatzCase,
    pub patterns: Vec<Term>,
    pub variables: usize,
    pub symbol_arity: usize,
}

/// The eight ternary placement patterns over x1..x7:
/// three with the operation outside and five with the operation merged into
/// one argument block of `f`.
fn ternary_patterns() -> Vec<Term> {
    let v = Term::Var;
    let f = |args: Vec<Term>| Term::sym("f", args);
    let m = Term::Op;
    vec![
        m(vec![v(1), v(2), f((3..=7).map(v).collect())]),
        m(vec![v(1), f((2..=6).map(v).collect()), v(7)]),
        m(vec![f((1..=5).map(v).collect()), v(6), v(7)]),
        f(vec![m(vec![v(1), v(2), v(3)]), v(4), v(5), v(6), v(7)]),
        f(vec![v(1), m(vec![v(2), v(3), v(4)]), v(5), v(6), v(7)]),
        f(vec![v(1), v(2), m(vec![v(3), v(4), v(5)]), v(6), v(7)]),
        f(vec![v(1), v(2), v(3), m(vec![v(4), v(5), v(6)]), v(7)]),
        f(vec![v(1), v(2), v(3), v(4), m(vec![v(5), v(6), v(7)])]),
    ]
}

/// The five binary placement patterns over x1..x4.
fn binary_patterns() -> Vec<Term> {
    let v = Term::Var;
    let f = |args: Vec<Term>| Term::sym("f", args);
    let mu = Term::Op;
    vec![
        mu(vec![v(1), f(vec![v(2), v(3), v(4)])]),
        f(vec![mu(vec![v(1), v(2)]), v(3), v(4)]),
        f(vec![v(1), mu(vec![v(2), v(3)]), v(4)]),
        f(vec![v(1), v(2), mu(vec![v(3), v(4)])]),
        mu(vec![f(vec![v(1), v(2), v(3)]), v(4)]),
    ]
}

pub fn build_ansatz(case: AnsatzCase) -> Ansatz {
    let (patterns, variables, symbol_arity) = match case {
        AnsatzCase::BinarySkew => (binary_patterns(), 4, 3),
        _ => (ternary_patterns(), 7, 5),
    };
    debug_assert!(patterns.iter().all(|p| p.variable_span() == Ok(variables)));
    Ansatz {
        case,
        patterns,
        variables,
        symbol_arity,
    }
}

/// One row of the linear system: the collected coefficient of `basis_term`
/// in the normalized composition, as a combination of the ansatz
/// coefficients.
#[derive(Clone, Debug)]
pub struct ConstraintRow {
    pub basis_term: Term,
    pub combination: Vec<Scalar>,
}

impl ConstraintRow {
    /// Renders the combination like `a7 - a8`.
    pub fn combination_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.combination.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_real() && c.re() < num_traits::Zero::zero();
            let abs = if negative { -c } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}·"));
            }
            out.push_str(&format!("a{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub case: AnsatzCase,
    pub rows: Vec<ConstraintRow>,
    pub matrix: ExactMatrix,
    /// Normalized composition of each single pattern with the level-2
    /// operator; kept for round-trip substitution checks.
    normalized_patterns: Vec<LinearForm>,
}

impl ConstraintSystem {
    /// Substitutes concrete coefficients back into the symbolic composition.
    pub fn substitute(&self, coefficients: &[Scalar]) -> LinearForm {
        let mut acc = LinearForm::new();
        for (form, c) in self.normalized_patterns.iter().zip(coefficients) {
            acc = acc.add(&form.scaled(c));
        }
        acc
    }
}

fn derive_with(
    ansatz: &Ansatz,
    delta2: &SymbolicOperator,
    rule: RewriteRule,
) -> Result<ConstraintSystem, TermError> {
    let mut normalized_patterns = Vec::with_capacity(ansatz.patterns.len());
    for pattern in &ansatz.patterns {
        let single = SymbolicOperator::new(
            "f",
            ansatz.symbol_arity,
            ansatz.variables,
            vec![(Scalar::one(), pattern.clone())],
        )?;
        let composed = SymbolicOperator::compose(&single, delta2)?;
        normalized_patterns.push(normalize(&composed.as_linear_form(), rule)?);
    }
    let mut basis: BTreeSet<Term> = BTreeSet::new();
    for form in &normalized_patterns {
        for (t, _) in form.collect() {
            basis.insert(t);
        }
    }
    let rows: Vec<ConstraintRow> = basis
        .into_iter()
        .map(|t| {
            let combination: Vec<Scalar> = normalized_patterns
                .iter()
                .map(|form| form.coefficient(&t))
                .collect();
            ConstraintRow {
                basis_term: t,
                combination,
            }
        })
        .collect();
    let matrix = ExactMatrix::from_rows(rows.iter().map(|r| r.combination.clone()).collect())
        .expect("rows share the coefficient count");
    Ok(ConstraintSystem {
        case: ansatz.case,
        rows,
        matrix,
        normalized_patterns,
    })
}

/// Builds the constraint system of a case: compose the ansatz with the
/// case's level-2 operator, normalize with the case's oriented identity,
/// and read one row per surviving basis term.
pub fn derive_constraints(case: AnsatzCase) -> ConstraintSystem {
    let ansatz = build_ansatz(case);
    derive_with(&ansatz, &case.delta2(), case.rule()).expect("templates are well-formed")
}

#[derive(Clone, Debug)]
pub struct NoGoVerdict {
    pub system: ConstraintSystem,
    pub nullspace: Vec<Vec<Scalar>>,
    pub dimension: usize,
    /// True when a nontrivial degree-3 extension exists.
    pub extension_exists: bool,
}

/// Solves the case exactly over the rationals.
pub fn solve(case: AnsatzCase) -> NoGoVerdict {
    let system = derive_constraints(case);
    let nullspace = system.matrix.nullspace();
    let dimension = nullspace.len();
    NoGoVerdict {
        system,
        nullspace,
        dimension,
        extension_exists: dimension > 0,
    }
}

/// Control experiment guarding against a solver that returns "impossible"
/// for everything: the same eight-pattern ansatz composed with the *weak*
/// level-2 operator and normalized by the weak rule must admit a nonzero
/// solution space, and the general weak level-3 coefficient pattern
/// `(1, 0, 1, −1, 0, 1, 0, −1)` must solve it.
pub fn weak_inversion() -> NoGoVerdict {
    let ansatz = build_ansatz(AnsatzCase::TernaryPartial);
    let delta2 = templates::weak_delta("g", 2);
    let system =
        derive_with(&ansatz, &delta2, RewriteRule::WeakTernary).expect("templates are well-formed");
    let nullspace = system.matrix.nullspace();
    let dimension = nullspace.len();
    NoGoVerdict {
        system,
        nullspace,
        dimension,
        extension_exists: dimension > 0,
    }
}

/// The coefficient vector of the general weak level-3 operator in the
/// eight-pattern ansatz basis.
pub fn weak_delta3_coefficients() -> Vec<Scalar> {
    [1, 0, 1, -1, 0, 1, 0, -1]
        .into_iter()
        .map(Scalar::from_int)
        .collect()
}

impl fmt::Display for NoGoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "case {}: {} constraint rows on {} coefficients",
            self.system.case.name(),
            self.system.rows.len(),
            self.system.matrix.cols()
        )?;
        for row in &self.system.rows {
            writeln!(f, "  ({})  {}", row.combination_string(), row.basis_term)?;
        }
        writeln!(f, "nullspace dimension: {}", self.dimension)?;
        if self.extension_exists {
            write!(f, "verdict: a nontrivial degree-3 extension exists")
        } else {
            write!(f, "verdict: no nontrivial degree-3 coboundary exists")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 28 coefficient combinations of the ternary-partial system, as
    /// `(coefficient index, sign)` pairs `aᵢ + sign·aⱼ`. Multiset, order
    /// irrelevant.
    fn expected_ternary_combinations() -> Vec<[i64; 8]> {
        fn combo(i: usize, sign: i64, j: usize) -> [i64; 8] {
            let mut row = [0i64; 8];
            row[i - 1] += 1;
            row[j - 1] += sign;
            row
        }
        vec![
            combo(7, -1, 8),
            combo(6, -1, 8),
            combo(5, 1, 8),
            combo(6, -1, 7),
            combo(5, -1, 7),
            combo(4, 1, 8),
            combo(4, 1, 7),
            combo(5, -1, 6),
            combo(4, -1, 6),
            combo(1, 1, 8),
            combo(1, 1, 7),
            combo(1, 1, 6),
            combo(2, 1, 7),
            combo(2, 1, 6),
            combo(2, 1, 5),
            combo(5, -1, 1),
            combo(2, -1, 1),
            combo(2, -1, 1),
            combo(2, -1, 8),
            combo(7, -1, 8),
            combo(3, 1, 6),
            combo(3, 1, 5),
            combo(3, 1, 4),
            combo(4, -1, 1),
            combo(4, -1, 1),
            combo(3, -1, 1),
            combo(3, -1, 8),
            combo(3, -1, 8),
        ]
    }

    fn expected_binary_combinations() -> Vec<[i64; 5]> {
        fn combo(i: usize, sign: i64, j: usize) -> [i64; 5] {
            let mut row = [0i64; 5];
            row[i - 1] += 1;
            row[j - 1] += sign;
            row
        }
        vec![
            combo(3, -1, 4),
            combo(2, 1, 4),
            combo(2, -1, 3),
            combo(1, 1, 4),
            combo(1, 1, 3),
            combo(3, 1, 5),
            combo(2, 1, 5),
            combo(2, -1, 1),
            combo(5, -1, 1),
            combo(5, -1, 4),
        ]
    }

    fn row_as_ints(row: &[Scalar]) -> Vec<i64> {
        row.iter()
            .map(|c| {
                let r = c.re();
                assert!(c.is_real() && r.denom() == &num_bigint::BigInt::from(1));
                let n: i64 = r.numer().try_into().unwrap();
                n
            })
            .collect()
    }

    fn multiset(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        rows.sort();
        rows
    }

    #[test]
    fn ansatz_shapes() {
        let t = build_ansatz(AnsatzCase::TernaryPartial);
        assert_eq!(t.patterns.len(), 8);
        assert_eq!(t.variables, 7);
        assert_eq!(
            t.patterns[0].to_string(),
            "m(x1, x2, f(x3, x4, x5, x6, x7))"
        );
        assert_eq!(
            t.patterns[4].to_string(),
            "f(x1, m(x2, x3, x4), x5, x6, x7)"
        );
        let b = build_ansatz(AnsatzCase::BinarySkew);
        assert_eq!(b.patterns.len(), 5);
        assert_eq!(b.variables, 4);
        assert_eq!(b.patterns[0].to_string(), "mu(x1, f(x2, x3, x4))");
        // the alternate cases reuse the ternary patterns
        let a1 = build_ansatz(AnsatzCase::TernaryAlternateFirst);
        assert_eq!(a1.patterns, t.patterns);
    }

    #[test]
    fn ternary_partial_constraints_match_expected_multiset() {
        let system = derive_constraints(AnsatzCase::TernaryPartial);
        assert_eq!(system.rows.len(), 28);
        let got = multiset(
            system
                .rows
                .iter()
                .map(|r| row_as_ints(&r.combination))
                .collect(),
        );
        let expected = multiset(
            expected_ternary_combinations()
                .into_iter()
                .map(|r| r.to_vec())
                .collect(),
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn binary_skew_constraints_match_expected_multiset() {
        let system = derive_constraints(AnsatzCase::BinarySkew);
        assert_eq!(system.rows.len(), 10);
        let got = multiset(
            system
                .rows
                .iter()
                .map(|r| row_as_ints(&r.combination))
                .collect(),
        );
        let expected = multiset(
            expected_binary_combinations()
                .into_iter()
                .map(|r| r.to_vec())
                .collect(),
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn all_cases_force_zero() {
        for case in [
            AnsatzCase::TernaryPartial,
            AnsatzCase::TernaryAlternateFirst,
            AnsatzCase::TernaryAlternateSecond,
            AnsatzCase::BinarySkew,
        ] {
            let verdict = solve(case);
            assert_eq!(verdict.dimension, 0, "case {:?}", case);
            assert!(!verdict.extension_exists);
        }
    }

    #[test]
    fn zero_coefficients_give_empty_composition() {
        let system = derive_constraints(AnsatzCase::TernaryPartial);
        let zeros = vec![Scalar::Zero; 8];
        assert!(system.substitute(&zeros).is_zero());
    }

    #[test]
    fn weak_inversion_admits_the_general_operator() {
        let verdict = weak_inversion();
        assert!(verdict.dimension > 0, "weak solution space must be nonzero");
        let v = weak_delta3_coefficients();
        // the pattern solves every constraint...
        let image = verdict.system.matrix.apply(&v).unwrap();
        assert!(image.iter().all(Scalar::is_zero));
        // ...and substituting it back kills the whole symbolic composition
        assert!(verdict.system.substitute(&v).is_zero());
    }

    #[test]
    fn nullspace_solutions_round_trip() {
        let verdict = weak_inversion();
        for v in &verdict.nullspace {
            assert!(verdict.system.substitute(v).is_zero());
        }
    }

    #[test]
    fn combination_rendering() {
        let system = derive_constraints(AnsatzCase::BinarySkew);
        let rendered: Vec<String> = system.rows.iter().map(|r| r.combination_string()).collect();
        assert!(rendered.iter().any(|s| s == "a3 - a4" || s == "a2 + a4"));
    }
}
