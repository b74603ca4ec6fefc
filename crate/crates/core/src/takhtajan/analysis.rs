//! Symbolic analysis of when the tensor-square product is of associative
//! type: expand `A₁ + λ·A₂` over six free base variables, group the result
//! by tensor shape, and solve the induced polynomial conditions on `(α, λ)`
//! exactly over ℚ or ℚ(i).
//!
//! `A₁ = μ(μ(u ⊗ v) ⊗ w)` and `A₂ = μ(u ⊗ μ(v ⊗ w))` with
//! `u = x₁⊗x₂, v = x₃⊗x₄, w = x₅⊗x₆`. The expansion always collects into
//! three groups:
//!
//! - terms `(double product in x₁..x₅) ⊗ x₆`, one coefficient per nesting,
//! - terms `x₁ ⊗ (double product in x₂..x₆)`, one coefficient per nesting,
//! - the mixed term `m(x₁,x₂,x₃) ⊗ m(x₄,x₅,x₆)`.
//!
//! The mixed term involves no identity and must vanish outright. How the
//! two nesting-coefficient triples constrain `(α, λ)` depends on the ternary
//! identity class assumed for the base multiplication.

use std::collections::BTreeMap;

use crate::exactmath::{FieldKind, Scalar};
use crate::freeterm::Term;

use super::poly::{univariate_roots, Poly2, SolveError, Var};
use super::TakhtajanError;

/// Which identity the base ternary multiplication is assumed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TernaryIdentityClass {
    /// Totally associative: all three nestings are equal, so each group
    /// vanishes exactly when its coefficients sum to zero.
    Total,
    /// Partially associative type: each group must be a multiple of a single
    /// associativity-type identity `c₁N₁ + c₂N₂ + c₃N₃ = 0`, i.e. the two
    /// coefficient triples must be proportional (and nonzero).
    Partial,
}

impl TernaryIdentityClass {
    pub fn name(self) -> &'static str {
        match self {
            TernaryIdentityClass::Total => "total",
            TernaryIdentityClass::Partial => "partial",
        }
    }
}

/// A formal sum of `left ⊗ right` pairs of planar ternary terms, with
/// polynomial coefficients in `(α, λ)`.
type WForm = BTreeMap<(Term, Term), Poly2>;

fn add_to(form: &mut WForm, key: (Term, Term), coeff: Poly2) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match form.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().add(&coeff);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// `μ((a ⊗ b) ⊗ (c ⊗ d)) = m(a,b,c) ⊗ d + α · a ⊗ m(b,c,d)`, extended
/// bilinearly to formal sums.
fn mu(left: &WForm, right: &WForm) -> WForm {
    let alpha = Poly2::alpha();
    let mut out = WForm::new();
    for ((l1, l2), c1) in left {
        for ((r1, r2), c2) in right {
            let coeff = c1.mul(c2);
            let first = Term::Op(vec![l1.clone(), l2.clone(), r1.clone()]);
            add_to(&mut out, (first, r2.clone()), coeff.clone());
            let second = Term::Op(vec![l2.clone(), r1.clone(), r2.clone()]);
            add_to(&mut out, (l1.clone(), second), coeff.mul(&alpha));
        }
    }
    out
}

fn atom(a: usize, b: usize) -> WForm {
    let mut f = WForm::new();
    f.insert((Term::Var(a), Term::Var(b)), Poly2::one());
    f
}

/// Nesting shape of a ternary term with exactly two operation nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Nesting {
    Left,   // m(m(·,·,·),·,·)
    Middle, // m(·,m(·,·,·),·)
    Right,  // m(·,·,m(·,·,·))
}

fn classify(term: &Term) -> Option<Nesting> {
    let Term::Op(args) = term else { return None };
    if args.len() != 3 {
        return None;
    }
    match (&args[0], &args[1], &args[2]) {
        (Term::Op(_), Term::Var(_), Term::Var(_)) => Some(Nesting::Left),
        (Term::Var(_), Term::Op(_), Term::Var(_)) => Some(Nesting::Middle),
        (Term::Var(_), Term::Var(_), Term::Op(_)) => Some(Nesting::Right),
        _ => None,
    }
}

/// The grouped expansion of `A₁ + λ·A₂`.
struct GroupedExpansion {
    /// Coefficients of (Left, Middle, Right) nesting shapes in the
    /// `(…)⊗x₆` group.
    first_triple: [Poly2; 3],
    /// Same for the `x₁⊗(…)` group.
    second_triple: [Poly2; 3],
    /// Coefficient of `m(x₁,x₂,x₃) ⊗ m(x₄,x₅,x₆)`.
    mixed: Poly2,
}

fn expand_grouped() -> GroupedExpansion {
    let u = atom(1, 2);
    let v = atom(3, 4);
    let w = atom(5, 6);
    let a1 = mu(&mu(&u, &v), &w);
    let a2 = mu(&u, &mu(&v, &w));
    // A₁ + λ·A₂
    let mut total = WForm::new();
    for (key, c) in a1 {
        add_to(&mut total, key, c);
    }
    let lambda = Poly2::lambda();
    for (key, c) in a2 {
        add_to(&mut total, key, c.mul(&lambda));
    }

    let zero = || [Poly2::zero(), Poly2::zero(), Poly2::zero()];
    let mut first_triple = zero();
    let mut second_triple = zero();
    let mut mixed = Poly2::zero();
    for ((left, right), coeff) in total {
        match (&left, &right) {
            (_, Term::Var(6)) => {
                let nesting = classify(&left).expect("first group is a double product");
                first_triple[nesting as usize] = first_triple[nesting as usize].add(&coeff);
            }
            (Term::Var(1), _) => {
                let nesting = classify(&right).expect("second group is a double product");
                second_triple[nesting as usize] = second_triple[nesting as usize].add(&coeff);
            }
            (Term::Op(_), Term::Op(_)) => {
                mixed = mixed.add(&coeff);
            }
            other => panic!("unexpected tensor shape in expansion: {other:?}"),
        }
    }
    GroupedExpansion {
        first_triple,
        second_triple,
        mixed,
    }
}

/// Result of the associative-type analysis over one field.
#[derive(Clone, Debug)]
pub struct AssocTypeReport {
    pub identity: TernaryIdentityClass,
    pub field: FieldKind,
    /// The polynomial constraints on `(α, λ)`, in a deterministic order.
    pub constraints: Vec<Poly2>,
    /// Polynomials that must *not* vanish at a solution (nondegeneracy).
    pub nonvanishing: Vec<Poly2>,
    /// All exact solutions `(α, λ)` over the field.
    pub solutions: Vec<(Scalar, Scalar)>,
}

impl AssocTypeReport {
    pub fn possible(&self) -> bool {
        !self.solutions.is_empty()
    }
}

/// Expands `A₁ + λ·A₂`, derives the constraint polynomials for the chosen
/// identity class, and solves them exactly over the chosen field.
pub fn assoc_type_analysis(
    identity: TernaryIdentityClass,
    field: FieldKind,
) -> Result<AssocTypeReport, TakhtajanError> {
    let expansion = expand_grouped();
    let (constraints, nonvanishing) = match identity {
        TernaryIdentityClass::Total => {
            // every nesting is equal: each group vanishes iff its
            // coefficients sum to zero
            let sum = |t: &[Poly2; 3]| t[0].add(&t[1]).add(&t[2]);
            (
                vec![
                    sum(&expansion.first_triple),
                    sum(&expansion.second_triple),
                    expansion.mixed.clone(),
                ],
                vec![],
            )
        }
        TernaryIdentityClass::Partial => {
            // both groups must impose the same single identity: all 2×2
            // minors of the two coefficient triples vanish, the mixed term
            // vanishes, and neither triple degenerates to zero
            let p = &expansion.first_triple;
            let q = &expansion.second_triple;
            let minor = |i: usize, j: usize| {
                p[i].mul(&q[j])
                    .add(&p[j].mul(&q[i]).scaled(&Scalar::from_int(-1)))
            };
            let mut constraints = vec![expansion.mixed.clone()];
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let m = minor(i, j);
                if !m.is_zero() {
                    constraints.push(m);
                }
            }
            // the second triple is (α², λα, λα²); requiring α² ≠ 0 keeps it
            // nonzero, and the first triple contains the constant 1
            (constraints, vec![q[0].clone()])
        }
    };
    let solutions = solve_system(&constraints, &nonvanishing, field)?;
    Ok(AssocTypeReport {
        identity,
        field,
        constraints,
        nonvanishing,
        solutions,
    })
}

/// Factors one constraint as `alpha^a · lambda^l · r` with `r` univariate or
/// constant, and returns the complete branch set covering its zeros over the
/// field: `alpha = 0` when `a > 0`, `lambda = 0` when `l > 0`, and one branch
/// per root of `r`. Constraints whose cofactor is genuinely bivariate are
/// skipped; `None` means no constraint can anchor the branching.
fn branch_candidates(constraints: &[Poly2], field: FieldKind) -> Option<Vec<(Var, Scalar)>> {
    for p in constraints {
        if p.is_zero() {
            continue;
        }
        let (a, l) = p.content();
        let cofactor = p.strip_monomial(a, l);
        let Some(var) = cofactor.univariate_var() else {
            continue;
        };
        let coeffs = cofactor.univariate_coeffs(var);
        let Ok(roots) = univariate_roots(&coeffs, field) else {
            continue;
        };
        let mut candidates = Vec::new();
        if a > 0 {
            candidates.push((Var::Alpha, Scalar::Zero));
        }
        if l > 0 {
            candidates.push((Var::Lambda, Scalar::Zero));
        }
        for r in roots {
            if !candidates.iter().any(|(v, x)| *v == var && *x == r) {
                candidates.push((var, r));
            }
        }
        if !candidates.is_empty() {
            return Some(candidates);
        }
    }
    None
}

/// Solves a small system of polynomial constraints in `(α, λ)` by branching
/// on a factorable constraint and finishing with univariate root extraction.
/// Every candidate is verified against all constraints before being reported.
fn solve_system(
    constraints: &[Poly2],
    nonvanishing: &[Poly2],
    field: FieldKind,
) -> Result<Vec<(Scalar, Scalar)>, SolveError> {
    let live: Vec<&Poly2> = constraints.iter().filter(|p| !p.is_zero()).collect();
    if live.is_empty() {
        return Err(SolveError::Underdetermined);
    }
    let candidates = branch_candidates(constraints, field).ok_or(SolveError::Unsupported)?;
    let mut solutions: Vec<(Scalar, Scalar)> = Vec::new();
    for (var, value) in candidates {
        // substitute the branch variable; the rest is univariate in the other
        let mut reduced: Vec<Vec<Scalar>> = Vec::new();
        for p in &live {
            reduced.push(p.substitute(var, &value));
        }
        // the branch dies if nondegeneracy vanishes identically under it
        let mut degenerate_branch = false;
        for q in nonvanishing {
            if q.substitute(var, &value).iter().all(Scalar::is_zero) {
                degenerate_branch = true;
            }
        }
        if degenerate_branch {
            continue;
        }
        let mut roots: Option<Vec<Scalar>> = None;
        let mut inconsistent = false;
        let mut all_vanish = true;
        for coeffs in &reduced {
            let nonzero = coeffs.iter().any(|c| !c.is_zero());
            if !nonzero {
                continue;
            }
            all_vanish = false;
            if coeffs.len() == 1 {
                inconsistent = true; // nonzero constant
                break;
            }
            let these = univariate_roots(coeffs, field)?;
            roots = Some(match roots {
                None => these,
                Some(prev) => prev.into_iter().filter(|r| these.contains(r)).collect(),
            });
        }
        if inconsistent {
            continue;
        }
        if all_vanish {
            return Err(SolveError::Underdetermined);
        }
        for other_value in roots.unwrap_or_default() {
            let (alpha, lambda) = match var {
                Var::Alpha => (value.clone(), other_value),
                Var::Lambda => (other_value, value.clone()),
            };
            let satisfies_all = constraints
                .iter()
                .all(|p| p.eval(&alpha, &lambda).is_zero());
            let nondegenerate = nonvanishing
                .iter()
                .all(|q| !q.eval(&alpha, &lambda).is_zero());
            let known = solutions.iter().any(|(a, l)| *a == alpha && *l == lambda);
            if satisfies_all && nondegenerate && !known {
                solutions.push((alpha, lambda));
            }
        }
    }
    // canonical order for byte-stable reports
    solutions.sort_by_key(|(a, l)| (format!("{a}"), format!("{l}")));
    Ok(solutions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_set(report: &AssocTypeReport) -> Vec<String> {
        let mut v: Vec<String> = report.constraints.iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn total_constraints_are_the_three_displayed_polynomials() {
        let report = assoc_type_analysis(TernaryIdentityClass::Total, FieldKind::Rational).unwrap();
        let got = poly_set(&report);
        let expected = {
            let mut v = vec![
                "1 + alpha + lambda".to_string(),
                "alpha^2 + alpha*lambda + alpha^2*lambda".to_string(),
                "alpha + alpha*lambda".to_string(),
            ];
            v.sort();
            v
        };
        assert_eq!(got, expected);
    }

    #[test]
    fn total_has_unique_solution_alpha_zero_lambda_minus_one() {
        for field in [FieldKind::Rational, FieldKind::Gaussian] {
            let report = assoc_type_analysis(TernaryIdentityClass::Total, field).unwrap();
            assert_eq!(
                report.solutions,
                vec![(Scalar::Zero, Scalar::from_int(-1))],
                "over {field}"
            );
        }
    }

    #[test]
    fn partial_is_impossible_over_the_rationals() {
        let report =
            assoc_type_analysis(TernaryIdentityClass::Partial, FieldKind::Rational).unwrap();
        assert!(!report.possible());
    }

    #[test]
    fn partial_needs_alpha_plus_minus_i_over_gaussian_rationals() {
        let report =
            assoc_type_analysis(TernaryIdentityClass::Partial, FieldKind::Gaussian).unwrap();
        let minus_one = Scalar::from_int(-1);
        assert_eq!(report.solutions.len(), 2);
        assert!(report.solutions.contains(&(Scalar::i(), minus_one.clone())));
        assert!(report.solutions.contains(&(-Scalar::i(), minus_one)));
    }

    #[test]
    fn expansion_groups_have_the_expected_coefficients() {
        let e = expand_grouped();
        assert_eq!(e.first_triple[0].to_string(), "1");
        assert_eq!(e.first_triple[1].to_string(), "alpha");
        assert_eq!(e.first_triple[2].to_string(), "lambda");
        assert_eq!(e.second_triple[0].to_string(), "alpha^2");
        assert_eq!(e.second_triple[1].to_string(), "alpha*lambda");
        assert_eq!(e.second_triple[2].to_string(), "alpha^2*lambda");
        assert_eq!(e.mixed.to_string(), "alpha + alpha*lambda");
    }
}
