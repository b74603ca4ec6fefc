//! Symbolic engine over free multilinear expressions: planar trees of
//! operation and opaque cochain-symbol nodes over formal variables, rational
//! linear combinations of such trees, directed rewriting modulo a chosen
//! identity, and formal operator composition.
//!
//! Every term is *planar*: its leaves, read left to right, are exactly
//! `x1, …, xN` in order. Substitution of one multilinear operator into
//! another preserves planarity, so composed coboundary expressions stay
//! canonical and distinct normal-form terms are linearly independent.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactmath::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("term is not planar: expected variables x1..x{expected} in order")]
    NotPlanar { expected: usize },
    #[error("operator term must contain the symbol `{symbol}` exactly once, found {found}")]
    SymbolCount { symbol: String, found: usize },
    #[error("symbol `{symbol}` has {got} arguments, declared arity {expected}")]
    SymbolArity {
        symbol: String,
        got: usize,
        expected: usize,
    },
    #[error("cannot compose: outer symbol arity {outer} ≠ inner variable count {inner}")]
    ComposeArity { outer: usize, inner: usize },
    #[error("rewriting did not terminate within the step bound")]
    RewriteDiverged,
}

/// A planar tree over formal variables: operation nodes (`m(…)` ternary or
/// `mu(…)` binary) and named opaque cochain symbols.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(usize),
    Op(Vec<Term>),
    Sym(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn op(args: Vec<Term>) -> Term {
        Term::Op(args)
    }

    pub fn sym(name: &str, args: Vec<Term>) -> Term {
        Term::Sym(name.to_string(), args)
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::Op(args) | Term::Sym(_, args) => {
                for a in args {
                    a.collect_leaves(out);
                }
            }
        }
    }

    /// Checks the planarity invariant and returns the variable count.
    pub fn variable_span(&self) -> Result<usize, TermError> {
        let mut leaves = Vec::new();
        self.collect_leaves(&mut leaves);
        for (pos, &v) in leaves.iter().enumerate() {
            if v != pos + 1 {
                return Err(TermError::NotPlanar {
                    expected: leaves.len(),
                });
            }
        }
        Ok(leaves.len())
    }

    fn count_symbol(&self, name: &str) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(args) => args.iter().map(|a| a.count_symbol(name)).sum(),
            Term::Sym(s, args) => {
                let inner: usize = args.iter().map(|a| a.count_symbol(name)).sum();
                inner + usize::from(s == name)
            }
        }
    }

    /// Argument count of the first occurrence of the named symbol.
    fn symbol_argument_count(&self, name: &str) -> Option<usize> {
        match self {
            Term::Var(_) => None,
            Term::Op(args) => args.iter().find_map(|a| a.symbol_argument_count(name)),
            Term::Sym(s, args) => {
                if s == name {
                    Some(args.len())
                } else {
                    args.iter().find_map(|a| a.symbol_argument_count(name))
                }
            }
        }
    }

    /// Replaces `Var(j)` with `args[j-1]`, cloning subtrees as needed.
    fn instantiate(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(i) => args[i - 1].clone(),
            Term::Op(children) => Term::Op(children.iter().map(|c| c.instantiate(args)).collect()),
            Term::Sym(name, children) => Term::Sym(
                name.clone(),
                children.iter().map(|c| c.instantiate(args)).collect(),
            ),
        }
    }

    /// Replaces the unique `Sym(symbol, args)` node by `pattern` with the
    /// symbol's arguments substituted for the pattern's variables.
    fn substitute_symbol(&self, symbol: &str, pattern: &Term) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::Op(children) => Term::Op(
                children
                    .iter()
                    .map(|c| c.substitute_symbol(symbol, pattern))
                    .collect(),
            ),
            Term::Sym(name, children) => {
                if name == symbol {
                    pattern.instantiate(children)
                } else {
                    Term::Sym(
                        name.clone(),
                        children
                            .iter()
                            .map(|c| c.substitute_symbol(symbol, pattern))
                            .collect(),
                    )
                }
            }
        }
    }
}

// Canonical total order: pre-order traversal, comparing node labels
// (variables before operations before symbols) and then children.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Var(a), Term::Var(b)) => a.cmp(b),
            (Term::Var(_), _) => Ordering::Less,
            (_, Term::Var(_)) => Ordering::Greater,
            (Term::Op(a), Term::Op(b)) => a.cmp(b),
            (Term::Op(_), Term::Sym(..)) => Ordering::Less,
            (Term::Sym(..), Term::Op(_)) => Ordering::Greater,
            (Term::Sym(na, a), Term::Sym(nb, b)) => na.cmp(nb).then_with(|| a.cmp(b)),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Op(args) => {
                let head = if args.len() == 2 { "mu" } else { "m" };
                write!(f, "{head}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Term::Sym(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Finite rational linear combination of canonical terms. Zero coefficients
/// are never stored; iteration order is the canonical term order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinearForm {
    terms: BTreeMap<Term, Scalar>,
}

impl LinearForm {
    pub fn new() -> Self {
        LinearForm::default()
    }

    pub fn from_term(term: Term, coeff: Scalar) -> Self {
        let mut f = LinearForm::new();
        f.add_term(term, coeff);
        f
    }

    pub fn add_term(&mut self, term: Term, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(term) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> LinearForm {
        let mut out = LinearForm::new();
        for (t, x) in &self.terms {
            out.add_term(t.clone(), x * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Deterministically ordered `(term, coefficient)` pairs; no zeros.
    pub fn collect(&self) -> Vec<(Term, Scalar)> {
        self.terms
            .iter()
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect()
    }

    pub fn coefficient(&self, term: &Term) -> Scalar {
        self.terms.get(term).cloned().unwrap_or(Scalar::Zero)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let negative = c.is_real() && c.re() < num_traits::Zero::zero();
            let abs = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{abs}·{t}")?;
            }
        }
        Ok(())
    }
}

/// Oriented form of a defining identity, used to normalize compositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteRule {
    /// `m(y₁,y₂,m(y₃,y₄,y₅)) → −m(y₁,m(y₂,y₃,y₄),y₅) − m(m(y₁,y₂,y₃),y₄,y₅)`
    PartialTernary,
    /// `m(y₁,y₂,m(y₃,y₄,y₅)) → m(y₁,m(y₂,y₃,y₄),y₅) − m(m(y₁,y₂,y₃),y₄,y₅)`
    AlternateFirstTernary,
    /// `m(y₁,y₂,m(y₃,y₄,y₅)) → −m(y₁,m(y₂,y₃,y₄),y₅) + m(m(y₁,y₂,y₃),y₄,y₅)`
    AlternateSecondTernary,
    /// `m(m(y₁,y₂,y₃),y₄,y₅) → m(y₁,y₂,m(y₃,y₄,y₅))`
    WeakTernary,
    /// `mu(y₁,mu(y₂,y₃)) → −mu(mu(y₁,y₂),y₃)`
    SkewBinary,
    /// `mu(mu(y₁,y₂),y₃) → mu(y₁,mu(y₂,y₃))`
    AssocBinary,
}

impl RewriteRule {
    /// Tries to rewrite the node itself (not its subterms); returns the
    /// replacement sum on match.
    fn rewrite_at(self, node: &Term) -> Option<Vec<(i64, Term)>> {
        let Term::Op(args) = node else { return None };
        match self {
            RewriteRule::PartialTernary
            | RewriteRule::AlternateFirstTernary
            | RewriteRule::AlternateSecondTernary => {
                if args.len() != 3 {
                    return None;
                }
                let Term::Op(inner) = &args[2] else {
                    return None;
                };
                if inner.len() != 3 {
                    return None;
                }
                let y = [&args[0], &args[1], &inner[0], &inner[1], &inner[2]];
                let middle = Term::Op(vec![
                    y[0].clone(),
                    Term::Op(vec![y[1].clone(), y[2].clone(), y[3].clone()]),
                    y[4].clone(),
                ]);
                let left = Term::Op(vec![
                    Term::Op(vec![y[0].clone(), y[1].clone(), y[2].clone()]),
                    y[3].clone(),
                    y[4].clone(),
                ]);
                let (cm, cl) = match self {
                    RewriteRule::PartialTernary => (-1, -1),
                    RewriteRule::AlternateFirstTernary => (1, -1),
                    RewriteRule::AlternateSecondTernary => (-1, 1),
                    _ => unreachable!(),
                };
                Some(vec![(cm, middle), (cl, left)])
            }
            RewriteRule::WeakTernary => {
                if args.len() != 3 {
                    return None;
                }
                let Term::Op(inner) = &args[0] else {
                    return None;
                };
                if inner.len() != 3 {
                    return None;
                }
                Some(vec![(
                    1,
                    Term::Op(vec![
                        inner[0].clone(),
                        inner[1].clone(),
                        Term::Op(vec![inner[2].clone(), args[1].clone(), args[2].clone()]),
                    ]),
                )])
            }
            RewriteRule::SkewBinary => {
                if args.len() != 2 {
                    return None;
                }
                let Term::Op(inner) = &args[1] else {
                    return None;
                };
                if inner.len() != 2 {
                    return None;
                }
                Some(vec![(
                    -1,
                    Term::Op(vec![
                        Term::Op(vec![args[0].clone(), inner[0].clone()]),
                        inner[1].clone(),
                    ]),
                )])
            }
            RewriteRule::AssocBinary => {
                if args.len() != 2 {
                    return None;
                }
                let Term::Op(inner) = &args[0] else {
                    return None;
                };
                if inner.len() != 2 {
                    return None;
                }
                Some(vec![(
                    1,
                    Term::Op(vec![
                        inner[0].clone(),
                        Term::Op(vec![inner[1].clone(), args[1].clone()]),
                    ]),
                )])
            }
        }
    }
}

/// Rewrites the first redex in pre-order, searching under symbol nodes as
/// well (identities hold inside opaque arguments too).
fn rewrite_once(term: &Term, rule: RewriteRule) -> Option<Vec<(i64, Term)>> {
    if let Some(reps) = rule.rewrite_at(term) {
        return Some(reps);
    }
    let children = match term {
        Term::Var(_) => return None,
        Term::Op(args) | Term::Sym(_, args) => args,
    };
    for (i, child) in children.iter().enumerate() {
        if let Some(reps) = rewrite_once(child, rule) {
            let rebuilt = reps
                .into_iter()
                .map(|(c, replacement)| {
                    let mut new_children = children.clone();
                    new_children[i] = replacement;
                    let new_term = match term {
                        Term::Op(_) => Term::Op(new_children),
                        Term::Sym(name, _) => Term::Sym(name.clone(), new_children),
                        Term::Var(_) => unreachable!(),
                    };
                    (c, new_term)
                })
                .collect();
            return Some(rebuilt);
        }
    }
    None
}

const REWRITE_STEP_BOUND: usize = 100_000;

/// Exhaustively applies the oriented rule until no redex remains. Linear in
/// the input: each summand is normalized independently.
pub fn normalize(form: &LinearForm, rule: RewriteRule) -> Result<LinearForm, TermError> {
    let mut out = LinearForm::new();
    let mut steps = 0usize;
    let mut work: Vec<(Scalar, Term)> = form.collect().into_iter().map(|(t, c)| (c, t)).collect();
    while let Some((coeff, term)) = work.pop() {
        match rewrite_once(&term, rule) {
            None => out.add_term(term, coeff),
            Some(reps) => {
                steps += 1;
                if steps > REWRITE_STEP_BOUND {
                    return Err(TermError::RewriteDiverged);
                }
                for (c, t) in reps {
                    work.push((&coeff * &Scalar::from_int(c), t));
                }
            }
        }
    }
    Ok(out)
}

/// A linear operator template: a signed sum of planar terms over `variables`
/// formal variables, each containing the consumed `symbol` exactly once.
#[derive(Clone, Debug)]
pub struct SymbolicOperator {
    symbol: String,
    symbol_arity: usize,
    variables: usize,
    terms: Vec<(Scalar, Term)>,
}

impl SymbolicOperator {
    pub fn new(
        symbol: &str,
        symbol_arity: usize,
        variables: usize,
        terms: Vec<(Scalar, Term)>,
    ) -> Result<Self, TermError> {
        for (_, t) in &terms {
            let span = t.variable_span()?;
            if span != variables {
                return Err(TermError::NotPlanar {
                    expected: variables,
                });
            }
            let found = t.count_symbol(symbol);
            if found != 1 {
                return Err(TermError::SymbolCount {
                    symbol: symbol.to_string(),
                    found,
                });
            }
            let got = t
                .symbol_argument_count(symbol)
                .expect("symbol occurs exactly once");
            if got != symbol_arity {
                return Err(TermError::SymbolArity {
                    symbol: symbol.to_string(),
                    got,
                    expected: symbol_arity,
                });
            }
        }
        Ok(SymbolicOperator {
            symbol: symbol.to_string(),
            symbol_arity,
            variables,
            terms,
        })
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn symbol_arity(&self) -> usize {
        self.symbol_arity
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn terms(&self) -> &[(Scalar, Term)] {
        &self.terms
    }

    pub fn as_linear_form(&self) -> LinearForm {
        let mut f = LinearForm::new();
        for (c, t) in &self.terms {
            f.add_term(t.clone(), c.clone());
        }
        f
    }

    /// Formal substitution `outer ∘ inner`: every occurrence pattern of the
    /// outer symbol receives each summand of the inner operator, with
    /// coefficients multiplied. The outer symbol's arity must equal the
    /// inner operator's variable span.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, TermError> {
        if outer.symbol_arity != inner.variables {
            return Err(TermError::ComposeArity {
                outer: outer.symbol_arity,
                inner: inner.variables,
            });
        }
        let mut terms = Vec::with_capacity(outer.terms.len() * inner.terms.len());
        for (c_out, t_out) in &outer.terms {
            for (c_in, t_in) in &inner.terms {
                terms.push((c_out * c_in, t_out.substitute_symbol(&outer.symbol, t_in)));
            }
        }
        SymbolicOperator::new(&inner.symbol, inner.symbol_arity, outer.variables, terms)
    }
}

/// Symbolic coboundary-operator templates over opaque cochain symbols.
pub mod templates {
    use super::{SymbolicOperator, Term};
    use crate::exactmath::Scalar;

    fn vars(range: std::ops::RangeInclusive<usize>) -> Vec<Term> {
        range.map(Term::Var).collect()
    }

    fn m(args: Vec<Term>) -> Term {
        Term::Op(args)
    }

    fn sy(name: &str, args: Vec<Term>) -> Term {
        Term::sym(name, args)
    }

    /// The level-1 partial coboundary applied to a symbol `f` of arity 1.
    pub fn partial_delta1(f: &str) -> SymbolicOperator {
        let one = Scalar::one();
        let neg = Scalar::from_int(-1);
        let terms = vec![
            (one, sy(f, vec![m(vars(1..=3))])),
            (
                neg.clone(),
                m(vec![sy(f, vec![Term::Var(1)]), Term::Var(2), Term::Var(3)]),
            ),
            (
                neg.clone(),
                m(vec![Term::Var(1), sy(f, vec![Term::Var(2)]), Term::Var(3)]),
            ),
            (
                neg,
                m(vec![Term::Var(1), Term::Var(2), sy(f, vec![Term::Var(3)])]),
            ),
        ];
        SymbolicOperator::new(f, 1, 3, terms).expect("template is planar")
    }

    /// The level-2 coboundary of the partial family applied to a ternary
    /// symbol, with per-position signs (`+,+,+` for the partial theory,
    /// `+,−,+` and `+,−,−` for the alternate kinds). Each position
    /// contributes the operation-outside and the operation-inside summand
    /// with that position's sign — the linearization of the defining
    /// identity in the multiplication.
    pub fn partial_family_delta2(g: &str, signs: [i64; 3]) -> SymbolicOperator {
        let s = |i: usize| Scalar::from_int(signs[i]);
        let terms = vec![
            (
                s(0),
                m(vec![sy(g, vars(1..=3)), Term::Var(4), Term::Var(5)]),
            ),
            (
                s(1),
                m(vec![Term::Var(1), sy(g, vars(2..=4)), Term::Var(5)]),
            ),
            (
                s(2),
                m(vec![Term::Var(1), Term::Var(2), sy(g, vars(3..=5))]),
            ),
            (
                s(0),
                sy(g, vec![m(vars(1..=3)), Term::Var(4), Term::Var(5)]),
            ),
            (
                s(1),
                sy(g, vec![Term::Var(1), m(vars(2..=4)), Term::Var(5)]),
            ),
            (
                s(2),
                sy(g, vec![Term::Var(1), Term::Var(2), m(vars(3..=5))]),
            ),
        ];
        SymbolicOperator::new(g, 3, 5, terms).expect("template is planar")
    }

    /// The level-2 partial coboundary: all six terms with a plus sign.
    pub fn partial_delta2(g: &str) -> SymbolicOperator {
        partial_family_delta2(g, [1, 1, 1])
    }

    /// The explicit 4-term level-1 weak coboundary.
    pub fn weak_delta1_explicit(f: &str) -> SymbolicOperator {
        let one = Scalar::one;
        let terms = vec![
            (
                one(),
                m(vec![sy(f, vec![Term::Var(1)]), Term::Var(2), Term::Var(3)]),
            ),
            (
                one(),
                m(vec![Term::Var(1), sy(f, vec![Term::Var(2)]), Term::Var(3)]),
            ),
            (
                one(),
                m(vec![Term::Var(1), Term::Var(2), sy(f, vec![Term::Var(3)])]),
            ),
            (Scalar::from_int(-1), sy(f, vec![m(vars(1..=3))])),
        ];
        SymbolicOperator::new(f, 1, 3, terms).expect("template is planar")
    }

    /// The general weak coboundary at level `p ≥ 1` applied to a symbol of
    /// arity 2p−1 (three terms at p = 1).
    pub fn weak_delta(f: &str, p: usize) -> SymbolicOperator {
        assert!(p >= 1);
        let n = 2 * p + 1;
        let mut terms = Vec::new();
        terms.push((
            Scalar::one(),
            m(vec![Term::Var(1), Term::Var(2), sy(f, vars(3..=n))]),
        ));
        for i in 1..=p {
            let sign = Scalar::from_int(if i % 2 == 0 { 1 } else { -1 });
            let mut args = Vec::new();
            args.extend(vars(1..=(2 * i - 2)));
            args.push(m(vars((2 * i - 1)..=(2 * i + 1))));
            args.extend(vars((2 * i + 2)..=n));
            terms.push((sign, sy(f, args)));
        }
        let last = Scalar::from_int(if (p + 1).is_multiple_of(2) { 1 } else { -1 });
        terms.push((
            last,
            m(vec![
                sy(f, vars(1..=(2 * p - 1))),
                Term::Var(2 * p),
                Term::Var(2 * p + 1),
            ]),
        ));
        SymbolicOperator::new(f, 2 * p - 1, n, terms).expect("template is planar")
    }

    /// The level-1 skew-binary coboundary.
    pub fn skew_delta1(f: &str) -> SymbolicOperator {
        let neg = Scalar::from_int(-1);
        let terms = vec![
            (Scalar::one(), sy(f, vec![m(vars(1..=2))])),
            (
                neg.clone(),
                m(vec![sy(f, vec![Term::Var(1)]), Term::Var(2)]),
            ),
            (neg, m(vec![Term::Var(1), sy(f, vec![Term::Var(2)])])),
        ];
        SymbolicOperator::new(f, 1, 2, terms).expect("template is planar")
    }

    /// The level-2 skew-binary coboundary: all four terms with a plus sign.
    pub fn skew_delta2(g: &str) -> SymbolicOperator {
        let one = Scalar::one;
        let terms = vec![
            (one(), m(vec![sy(g, vars(1..=2)), Term::Var(3)])),
            (one(), m(vec![Term::Var(1), sy(g, vars(2..=3))])),
            (one(), sy(g, vec![m(vars(1..=2)), Term::Var(3)])),
            (one(), sy(g, vec![Term::Var(1), m(vars(2..=3))])),
        ];
        SymbolicOperator::new(g, 2, 3, terms).expect("template is planar")
    }
}
