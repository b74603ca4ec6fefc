//! Cochain spaces, the circle operation, the coboundary operators of the
//! four theories, their exact matrixization and cohomology dimensions.
//!
//! Grading convention, used uniformly: a ternary cochain of degree `p` is a
//! multilinear map `V^⊗(2p+1) → V`, a binary cochain of degree `p` is a map
//! `V^⊗(p+1) → V`, and the level-`p` coboundary raises degree `p−1` to
//! degree `p`. In particular degree-0 cochains are maps `V → V` in both
//! gradings, and the 1-cocycles of every theory are the derivations.

use thiserror::Error;

use crate::algebras::{Algebra, BinaryAlgebra, TernaryAlgebra};
use crate::exactmath::{flat_index, for_each_tuple, ExactMatrix, Scalar};

/// Hard ceiling on coefficient-table sizes; callers (the CLI) impose the
/// user-facing `n`/`p` bounds, this guards against runaway allocations.
const MAX_TABLE: usize = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("cochain theory mismatch: expected {expected:?}, got {got:?}")]
    TheoryMismatch { expected: Theory, got: Theory },
    #[error("dimension mismatch: cochain has dim {got}, algebra has dim {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("no level-{level} coboundary operator exists for the {theory:?} theory")]
    NoSuchCoboundary { theory: Theory, level: usize },
    #[error("coefficient table of size {size} exceeds the supported bound")]
    TableTooLarge { size: usize },
    #[error("cochain entry index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("cochain entry has {got} inputs, expected {expected}")]
    InputCount { got: usize, expected: usize },
    #[error("duplicate cochain entry for the same index tuple")]
    DuplicateEntry,
    #[error("algebra arity does not match the {0:?} theory")]
    ArityMismatch(Theory),
    #[error(
        "coboundaries do not compose to zero at level {level}; \
         the algebra does not satisfy the theory's identity"
    )]
    NotAComplex { level: usize },
}

/// The cochain-complex theories carried by this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Partially associative ternary: levels 1 and 2 only.
    TernaryPartial,
    /// Weak totally associative ternary: every level.
    TernaryWeak,
    /// Binary associative (Hochschild): every level.
    BinaryAssociative,
    /// Skew-associative binary: levels 1 and 2 only.
    BinarySkew,
}

impl Theory {
    pub fn arity(self) -> usize {
        match self {
            Theory::TernaryPartial | Theory::TernaryWeak => 3,
            Theory::BinaryAssociative | Theory::BinarySkew => 2,
        }
    }

    /// Number of input slots of a degree-`p` cochain.
    pub fn slots(self, degree: usize) -> usize {
        match self.arity() {
            3 => 2 * degree + 1,
            _ => degree + 1,
        }
    }

    /// Largest level with a defined coboundary operator, if bounded.
    pub fn max_level(self) -> Option<usize> {
        match self {
            Theory::TernaryPartial | Theory::BinarySkew => Some(2),
            Theory::TernaryWeak | Theory::BinaryAssociative => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theory::TernaryPartial => "ternary-partial",
            Theory::TernaryWeak => "ternary-weak",
            Theory::BinaryAssociative => "binary-associative",
            Theory::BinarySkew => "binary-skew",
        }
    }
}

impl std::str::FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ternary-partial" => Ok(Theory::TernaryPartial),
            "ternary-weak" => Ok(Theory::TernaryWeak),
            "binary-associative" => Ok(Theory::BinaryAssociative),
            "binary-skew" => Ok(Theory::BinarySkew),
            other => Err(format!("unknown theory `{other}`")),
        }
    }
}

fn table_len(dim: usize, slots: usize) -> Result<usize, CochainError> {
    let mut size: usize = dim;
    for _ in 0..slots {
        size = size
            .checked_mul(dim)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or(CochainError::TableTooLarge { size: usize::MAX })?;
    }
    Ok(size)
}

/// Multilinear map `V^⊗slots → V` as a dense coefficient table.
///
/// Layout: `coeffs[flat(inputs)·dim + output]` with 0-based indices, inputs
/// ordered lexicographically. This flat order is also the basis order used by
/// [`matrixize`].
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    theory: Theory,
    degree: usize,
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Cochain({:?}, degree {}, dim {})",
            self.theory, self.degree, self.dim
        )?;
        for (inputs, output, c) in self.nonzero_entries() {
            write!(f, " {inputs:?}->{output}: {c};")?;
        }
        Ok(())
    }
}

impl Cochain {
    pub fn zero(theory: Theory, degree: usize, dim: usize) -> Result<Self, CochainError> {
        let len = table_len(dim, theory.slots(degree))?;
        Ok(Cochain {
            theory,
            degree,
            dim,
            coeffs: vec![Scalar::Zero; len],
        })
    }

    /// The basis cochain with a single coefficient 1 at flat position `index`.
    pub fn basis(
        theory: Theory,
        degree: usize,
        dim: usize,
        index: usize,
    ) -> Result<Self, CochainError> {
        let mut c = Cochain::zero(theory, degree, dim)?;
        c.coeffs[index] = Scalar::one();
        Ok(c)
    }

    /// The identity map `V → V` as a degree-0 cochain.
    pub fn identity_map(theory: Theory, dim: usize) -> Self {
        let mut c = Cochain::zero(theory, 0, dim).expect("degree-0 table is small");
        for i in 0..dim {
            c.coeffs[i * dim + i] = Scalar::one();
        }
        c
    }

    /// The multiplication of a ternary algebra as a degree-1 cochain (the
    /// coefficient table is exactly the structure-constant table).
    pub fn of_ternary_multiplication(theory: Theory, alg: &TernaryAlgebra) -> Self {
        debug_assert_eq!(theory.arity(), 3);
        Cochain {
            theory,
            degree: 1,
            dim: alg.dim(),
            coeffs: alg.constants().to_vec(),
        }
    }

    /// The multiplication of a binary algebra as a degree-1 cochain.
    pub fn of_binary_multiplication(theory: Theory, alg: &BinaryAlgebra) -> Self {
        debug_assert_eq!(theory.arity(), 2);
        Cochain {
            theory,
            degree: 1,
            dim: alg.dim(),
            coeffs: alg.constants().to_vec(),
        }
    }

    /// Builds a cochain from sparse 1-based entries `(inputs, output, c)`.
    pub fn from_entries(
        theory: Theory,
        degree: usize,
        dim: usize,
        entries: &[(Vec<usize>, usize, Scalar)],
    ) -> Result<Self, CochainError> {
        let slots = theory.slots(degree);
        let mut c = Cochain::zero(theory, degree, dim)?;
        let mut seen = std::collections::BTreeSet::new();
        for (inputs, output, value) in entries {
            if inputs.len() != slots {
                return Err(CochainError::InputCount {
                    got: inputs.len(),
                    expected: slots,
                });
            }
            for &ix in inputs.iter().chain(std::iter::once(output)) {
                if ix == 0 || ix > dim {
                    return Err(CochainError::IndexOutOfRange { index: ix, dim });
                }
            }
            let zero_based: Vec<usize> = inputs.iter().map(|&i| i - 1).collect();
            let pos = flat_index(&zero_based, dim) * dim + (output - 1);
            if !seen.insert(pos) {
                return Err(CochainError::DuplicateEntry);
            }
            c.coeffs[pos] = value.clone();
        }
        Ok(c)
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> usize {
        self.theory.slots(self.degree)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Scalar] {
        &mut self.coeffs
    }

    /// Coefficient of `output` in the value on a 0-based basis input tuple.
    pub fn get(&self, inputs: &[usize], output: usize) -> &Scalar {
        &self.coeffs[flat_index(inputs, self.dim) * self.dim + output]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries as 1-based `(inputs, output, c)` records.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, usize, Scalar)> {
        let mut out = Vec::new();
        let slots = self.slots();
        for_each_tuple(self.dim, slots, |t| {
            let base = flat_index(t, self.dim) * self.dim;
            for s in 0..self.dim {
                if !self.coeffs[base + s].is_zero() {
                    out.push((
                        t.iter().map(|&i| i + 1).collect(),
                        s + 1,
                        self.coeffs[base + s].clone(),
                    ));
                }
            }
        });
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x = &*x * c;
        }
        out
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        if self.theory != other.theory {
            return Err(CochainError::TheoryMismatch {
                expected: self.theory,
                got: other.theory,
            });
        }
        if self.dim != other.dim || self.degree != other.degree {
            return Err(CochainError::DimensionMismatch {
                got: other.dim,
                expected: self.dim,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    /// Swaps the theory tag, keeping the table; only meaningful between
    /// theories of the same arity.
    pub fn retagged(&self, theory: Theory) -> Cochain {
        debug_assert_eq!(self.theory.arity(), theory.arity(), "retag across arity");
        Cochain {
            theory,
            ..self.clone()
        }
    }
}

/// One summand of a coboundary formula.
///
/// `OpOutside { slot }` is `op(x…, f(…), x…)` with `f` occupying the given
/// operation slot; `OpInside { arg }` is `f(x…, op(…), x…)` with the
/// operation merged into the given argument of `f`. Variables always fill
/// the remaining positions left to right, so a term list pins the operator
/// completely.
#[derive(Clone, Copy, Debug)]
struct DeltaTerm {
    coeff: i64,
    shape: Shape,
}

#[derive(Clone, Copy, Debug)]
enum Shape {
    OpOutside { slot: usize },
    OpInside { arg: usize },
}

fn term(coeff: i64, shape: Shape) -> DeltaTerm {
    DeltaTerm { coeff, shape }
}

/// δ¹f = f(m(x₁x₂x₃)) − m(f(x₁),x₂,x₃) − m(x₁,f(x₂),x₃) − m(x₁,x₂,f(x₃))
/// δ²φ = m(φ,·,·) + m(·,φ,·) + m(·,·,φ) + φ(m,·,·) + φ(·,m,·) + φ(·,·,m)
fn partial_terms(level: usize) -> Vec<DeltaTerm> {
    match level {
        1 => vec![
            term(1, Shape::OpInside { arg: 0 }),
            term(-1, Shape::OpOutside { slot: 0 }),
            term(-1, Shape::OpOutside { slot: 1 }),
            term(-1, Shape::OpOutside { slot: 2 }),
        ],
        2 => vec![
            term(1, Shape::OpOutside { slot: 0 }),
            term(1, Shape::OpOutside { slot: 1 }),
            term(1, Shape::OpOutside { slot: 2 }),
            term(1, Shape::OpInside { arg: 0 }),
            term(1, Shape::OpInside { arg: 1 }),
            term(1, Shape::OpInside { arg: 2 }),
        ],
        _ => unreachable!("validated by caller"),
    }
}

/// The level-1 operator of the weak theory, explicit 4-term form:
/// δ¹f = m(f(x₁),x₂,x₃) + m(x₁,f(x₂),x₃) + m(x₁,x₂,f(x₃)) − f(m(x₁x₂x₃)).
fn weak_level1_terms() -> Vec<DeltaTerm> {
    vec![
        term(1, Shape::OpOutside { slot: 0 }),
        term(1, Shape::OpOutside { slot: 1 }),
        term(1, Shape::OpOutside { slot: 2 }),
        term(-1, Shape::OpInside { arg: 0 }),
    ]
}

/// The general weak coboundary at level `p ≥ 1`:
///
/// δᵖf = m(x₁,x₂,f(…)) + Σ_{i=1}^{p} (−1)ⁱ f(x₁,…,m(x_{2i−1},x_{2i},x_{2i+1}),…)
///       + (−1)^{p+1} m(f(…),x_{2p},x_{2p+1})
///
/// At p = 1 this has three terms; see [`delta_weak`] for the relation to the
/// explicit 4-term level-1 operator.
fn weak_general_terms(level: usize) -> Vec<DeltaTerm> {
    let p = level;
    let mut terms = vec![term(1, Shape::OpOutside { slot: 2 })];
    for i in 1..=p {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        terms.push(term(sign, Shape::OpInside { arg: 2 * i - 2 }));
    }
    let last = if (p + 1).is_multiple_of(2) { 1 } else { -1 };
    terms.push(term(last, Shape::OpOutside { slot: 0 }));
    terms
}

/// δ¹f = f(μ(x₁x₂)) − μ(f(x₁),x₂) − μ(x₁,f(x₂))
/// δ²φ = μ(φ(x₁x₂),x₃) + μ(x₁,φ(x₂x₃)) + φ(μ(x₁x₂),x₃) + φ(x₁,μ(x₂x₃))
fn skew_terms(level: usize) -> Vec<DeltaTerm> {
    match level {
        1 => vec![
            term(1, Shape::OpInside { arg: 0 }),
            term(-1, Shape::OpOutside { slot: 0 }),
            term(-1, Shape::OpOutside { slot: 1 }),
        ],
        2 => vec![
            term(1, Shape::OpOutside { slot: 0 }),
            term(1, Shape::OpOutside { slot: 1 }),
            term(1, Shape::OpInside { arg: 0 }),
            term(1, Shape::OpInside { arg: 1 }),
        ],
        _ => unreachable!("validated by caller"),
    }
}

/// Standard Hochschild coboundary with alternating interior signs. At level
/// `p` (input degree p−1, i.e. p arguments):
///
/// df = μ(x₁, f(x₂,…)) + Σ_{i=1}^{p} (−1)ⁱ f(x₁,…,μ(xᵢ,x_{i+1}),…)
///      + (−1)^{p+1} μ(f(…,x_p), x_{p+1})
fn hochschild_terms(level: usize) -> Vec<DeltaTerm> {
    let p = level;
    let mut terms = vec![term(1, Shape::OpOutside { slot: 1 })];
    for i in 1..=p {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        terms.push(term(sign, Shape::OpInside { arg: i - 1 }));
    }
    let last = if (p + 1).is_multiple_of(2) { 1 } else { -1 };
    terms.push(term(last, Shape::OpOutside { slot: 0 }));
    terms
}

fn terms_for(theory: Theory, level: usize) -> Result<Vec<DeltaTerm>, CochainError> {
    if level == 0 {
        return Err(CochainError::NoSuchCoboundary { theory, level });
    }
    if let Some(max) = theory.max_level() {
        if level > max {
            // the partial and skew theories stop at level 2: a level-3
            // operator provably cannot extend them (see the `nogo` module)
            return Err(CochainError::NoSuchCoboundary { theory, level });
        }
    }
    Ok(match theory {
        Theory::TernaryPartial => partial_terms(level),
        Theory::TernaryWeak => {
            if level == 1 {
                weak_level1_terms()
            } else {
                weak_general_terms(level)
            }
        }
        Theory::BinaryAssociative => hochschild_terms(level),
        Theory::BinarySkew => skew_terms(level),
    })
}

/// Scatter-applies a term list to the nonzero entries of `f`, feeding
/// `(flat output position, contribution)` pairs to `sink`.
fn scatter_terms(
    constants: &[Scalar],
    arity: usize,
    dim: usize,
    terms: &[DeltaTerm],
    f_slots: usize,
    f_entries: &mut dyn Iterator<Item = (Vec<usize>, usize, Scalar)>,
    sink: &mut dyn FnMut(usize, Scalar),
) {
    let out_slots = f_slots + arity - 1;
    for (inputs, output, value) in f_entries {
        for t in terms {
            let sign = Scalar::from_int(t.coeff);
            let weight = &sign * &value;
            match t.shape {
                Shape::OpOutside { slot } => {
                    // op(v₁,…,v_slot, f(inputs), v_rest): enumerate the free
                    // operation arguments and the output component.
                    for_each_tuple(dim, arity - 1, |vars| {
                        let mut op_args = Vec::with_capacity(arity);
                        op_args.extend_from_slice(&vars[..slot]);
                        op_args.push(output);
                        op_args.extend_from_slice(&vars[slot..]);
                        let row_base = flat_index(&op_args, dim) * dim;
                        let mut out_tuple = Vec::with_capacity(out_slots);
                        out_tuple.extend_from_slice(&vars[..slot]);
                        out_tuple.extend_from_slice(&inputs);
                        out_tuple.extend_from_slice(&vars[slot..]);
                        let out_base = flat_index(&out_tuple, dim) * dim;
                        for s in 0..dim {
                            let c = &constants[row_base + s];
                            if !c.is_zero() {
                                sink(out_base + s, &weight * c);
                            }
                        }
                    });
                }
                Shape::OpInside { arg } => {
                    // f(…, op(a₁,…,a_arity), …): the merged argument `inputs[arg]`
                    // expands into every operation tuple producing it.
                    let merged = inputs[arg];
                    for_each_tuple(dim, arity, |op_args| {
                        let c = &constants[flat_index(op_args, dim) * dim + merged];
                        if c.is_zero() {
                            return;
                        }
                        let mut out_tuple = Vec::with_capacity(out_slots);
                        out_tuple.extend_from_slice(&inputs[..arg]);
                        out_tuple.extend_from_slice(op_args);
                        out_tuple.extend_from_slice(&inputs[arg + 1..]);
                        sink(flat_index(&out_tuple, dim) * dim + output, &weight * c);
                    });
                }
            }
        }
    }
}

fn nonzero_iter<'a>(
    coeffs: &'a [Scalar],
    dim: usize,
    slots: usize,
) -> impl Iterator<Item = (Vec<usize>, usize, Scalar)> + 'a {
    let mut tuples = Vec::new();
    for_each_tuple(dim, slots, |t| tuples.push(t.to_vec()));
    tuples.into_iter().flat_map(move |t| {
        let base = flat_index(&t, dim) * dim;
        (0..dim).filter_map(move |s| {
            let c = &coeffs[base + s];
            if c.is_zero() {
                None
            } else {
                Some((t.clone(), s, c.clone()))
            }
        })
    })
}

fn apply_delta(
    constants: &[Scalar],
    arity: usize,
    level: usize,
    f: &Cochain,
) -> Result<Cochain, CochainError> {
    let terms = terms_for(f.theory, level)?;
    let mut out = Cochain::zero(f.theory, level, f.dim)?;
    let mut entries = nonzero_iter(&f.coeffs, f.dim, f.slots());
    scatter_terms(
        constants,
        arity,
        f.dim,
        &terms,
        f.slots(),
        &mut entries,
        &mut |pos, c| out.coeffs[pos] += &c,
    );
    Ok(out)
}

fn check_ternary_input(
    alg: &TernaryAlgebra,
    f: &Cochain,
    theory: Theory,
) -> Result<(), CochainError> {
    if f.theory != theory {
        return Err(CochainError::TheoryMismatch {
            expected: theory,
            got: f.theory,
        });
    }
    if f.dim != alg.dim() {
        return Err(CochainError::DimensionMismatch {
            got: f.dim,
            expected: alg.dim(),
        });
    }
    Ok(())
}

fn check_binary_input(
    alg: &BinaryAlgebra,
    f: &Cochain,
    theory: Theory,
) -> Result<(), CochainError> {
    if f.theory != theory {
        return Err(CochainError::TheoryMismatch {
            expected: theory,
            got: f.theory,
        });
    }
    if f.dim != alg.dim() {
        return Err(CochainError::DimensionMismatch {
            got: f.dim,
            expected: alg.dim(),
        });
    }
    Ok(())
}

/// Coboundary of the partially associative theory. Defined for degree-0 and
/// degree-1 inputs only; higher degrees are rejected because no extending
/// operator exists.
pub fn delta_partial(alg: &TernaryAlgebra, f: &Cochain) -> Result<Cochain, CochainError> {
    check_ternary_input(alg, f, Theory::TernaryPartial)?;
    apply_delta(alg.constants(), 3, f.degree + 1, f)
}

/// Coboundary of the weak totally associative theory.
///
/// Level 1 is the explicit 4-term operator (which includes the middle
/// insertion `m(x₁,f(x₂),x₃)`); levels ≥ 2 follow the general formula.
pub fn delta_weak(alg: &TernaryAlgebra, f: &Cochain) -> Result<Cochain, CochainError> {
    check_ternary_input(alg, f, Theory::TernaryWeak)?;
    apply_delta(alg.constants(), 3, f.degree + 1, f)
}

/// The general-formula weak coboundary at every level, including level 1
/// where it has three terms instead of four. This is the variant recovered
/// by the Hochschild coboundary on the tensor square (see
/// `takhtajan::recovery_check`); it satisfies δ∘δ = 0 as well.
pub fn delta_weak_general(alg: &TernaryAlgebra, f: &Cochain) -> Result<Cochain, CochainError> {
    check_ternary_input(alg, f, Theory::TernaryWeak)?;
    let level = f.degree + 1;
    let terms = weak_general_terms(level);
    let mut out = Cochain::zero(f.theory, level, f.dim)?;
    let mut entries = nonzero_iter(&f.coeffs, f.dim, f.slots());
    scatter_terms(
        alg.constants(),
        3,
        f.dim,
        &terms,
        f.slots(),
        &mut entries,
        &mut |pos, c| out.coeffs[pos] += &c,
    );
    Ok(out)
}

/// Coboundary of the skew-associative binary theory; degree-0 and degree-1
/// inputs only, as for [`delta_partial`].
pub fn delta_skew(alg: &BinaryAlgebra, f: &Cochain) -> Result<Cochain, CochainError> {
    check_binary_input(alg, f, Theory::BinarySkew)?;
    apply_delta(alg.constants(), 2, f.degree + 1, f)
}

/// Standard Hochschild coboundary of a binary associative algebra with
/// coefficients in itself; satisfies d∘d = 0 at every degree.
pub fn hochschild(alg: &BinaryAlgebra, f: &Cochain) -> Result<Cochain, CochainError> {
    check_binary_input(alg, f, Theory::BinaryAssociative)?;
    apply_delta(alg.constants(), 2, f.degree + 1, f)
}

/// Sum over all insertion positions of `psi` into `phi`:
/// `(φ∘ψ)(x₁,…) = Σᵢ φ(x₁,…,ψ(x_{i+1},…),…)`. Degrees add.
pub fn circle(phi: &Cochain, psi: &Cochain) -> Result<Cochain, CochainError> {
    if phi.theory != psi.theory {
        return Err(CochainError::TheoryMismatch {
            expected: phi.theory,
            got: psi.theory,
        });
    }
    if phi.dim != psi.dim {
        return Err(CochainError::DimensionMismatch {
            got: psi.dim,
            expected: phi.dim,
        });
    }
    let dim = phi.dim;
    let mut out = Cochain::zero(phi.theory, phi.degree + psi.degree, dim)?;
    let positions = phi.slots();
    let psi_slots = psi.slots();
    let out_slots = out.slots();
    let mut psi_nonzeros = Vec::new();
    for_each_tuple(dim, psi_slots, |t| {
        let base = flat_index(t, dim) * dim;
        for s in 0..dim {
            if !psi.coeffs[base + s].is_zero() {
                psi_nonzeros.push((t.to_vec(), s, psi.coeffs[base + s].clone()));
            }
        }
    });
    // scatter: for each nonzero of psi, each insertion position, and each
    // choice of the surrounding variables, look up phi on the merged tuple
    for (inputs, output, value) in &psi_nonzeros {
        for pos in 0..positions {
            for_each_tuple(dim, positions - 1, |vars| {
                let mut phi_args = Vec::with_capacity(positions);
                phi_args.extend_from_slice(&vars[..pos]);
                phi_args.push(*output);
                phi_args.extend_from_slice(&vars[pos..]);
                let phi_base = flat_index(&phi_args, dim) * dim;
                let mut out_tuple = Vec::with_capacity(out_slots);
                out_tuple.extend_from_slice(&vars[..pos]);
                out_tuple.extend_from_slice(inputs);
                out_tuple.extend_from_slice(&vars[pos..]);
                let out_base = flat_index(&out_tuple, dim) * dim;
                for s in 0..dim {
                    let c = &phi.coeffs[phi_base + s];
                    if !c.is_zero() {
                        out.coeffs[out_base + s] += &(c * value);
                    }
                }
            });
        }
    }
    Ok(out)
}

fn algebra_for(alg: &Algebra, theory: Theory) -> Result<&[Scalar], CochainError> {
    match (alg, theory.arity()) {
        (Algebra::Ternary(a), 3) => Ok(a.constants()),
        (Algebra::Binary(a), 2) => Ok(a.constants()),
        _ => Err(CochainError::ArityMismatch(theory)),
    }
}

/// Matrix of the level-`p` coboundary with respect to the lexicographic
/// basis of coefficient tables: columns are indexed by degree-(p−1) basis
/// cochains, rows by degree-p table positions, and applying the matrix to a
/// flattened table equals applying the operator.
pub fn matrixize(alg: &Algebra, theory: Theory, level: usize) -> Result<ExactMatrix, CochainError> {
    let constants = algebra_for(alg, theory)?;
    let terms = terms_for(theory, level)?;
    let dim = alg.dim();
    let arity = theory.arity();
    let in_slots = theory.slots(level - 1);
    let in_len = table_len(dim, in_slots)?;
    let out_len = table_len(dim, theory.slots(level))?;
    let mut matrix = ExactMatrix::zero(out_len, in_len);
    let mut tuples = Vec::new();
    for_each_tuple(dim, in_slots, |t| tuples.push(t.to_vec()));
    for tuple in tuples {
        let col_base = flat_index(&tuple, dim) * dim;
        for s in 0..dim {
            let col = col_base + s;
            let mut entries = std::iter::once((tuple.clone(), s, Scalar::one()));
            scatter_terms(
                constants,
                arity,
                dim,
                &terms,
                in_slots,
                &mut entries,
                &mut |row, c| matrix.add_at(row, col, &c),
            );
        }
    }
    Ok(matrix)
}

/// Cohomology dimensions at level `p`: `dim Z` is the nullity of the
/// level-`p` operator, `dim B` the rank of the level-(p−1) operator (zero
/// when none exists), and `dim H` their difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub p: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h: usize,
}

pub fn cohomology(
    alg: &Algebra,
    theory: Theory,
    p: usize,
) -> Result<CohomologyReport, CochainError> {
    let d_p = matrixize(alg, theory, p)?;
    let dim_cocycles = d_p.cols() - d_p.rank();
    let dim_coboundaries = if p == 1 {
        0
    } else {
        matrixize(alg, theory, p - 1)?.rank()
    };
    if dim_coboundaries > dim_cocycles {
        return Err(CochainError::NotAComplex { level: p });
    }
    Ok(CohomologyReport {
        p,
        dim_cocycles,
        dim_coboundaries,
        dim_h: dim_cocycles - dim_coboundaries,
    })
}

/// Basis of the derivation space: the kernel of the level-1 coboundary,
/// reshaped to maps `V → V`. The partial and weak level-1 operators are
/// negatives of each other, and the binary skew and Hochschild level-1
/// operators have the same kernel, so the result does not depend on a
/// theory choice.
pub fn derivations(alg: &Algebra) -> Result<Vec<Cochain>, CochainError> {
    let theory = match alg {
        Algebra::Ternary(_) => Theory::TernaryPartial,
        Algebra::Binary(_) => Theory::BinaryAssociative,
    };
    let matrix = matrixize(alg, theory, 1)?;
    let dim = alg.dim();
    matrix
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut c = Cochain::zero(theory, 0, dim)?;
            c.coeffs = v;
            Ok(c)
        })
        .collect()
}
