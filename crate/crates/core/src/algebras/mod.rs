//! Ternary and binary algebras given by structure constants, with exhaustive
//! identity verification and the built-in example registry.
//!
//! An algebra is stored as its dense constant table `C^s_{ijk}` (ternary) or
//! `C^s_{ij}` (binary); multilinearity makes every identity checkable by
//! enumerating basis tuples, which is complete and fast for the dimensions
//! this library targets (n ≤ 4).

mod identity;
mod registry;

use thiserror::Error;

use crate::exactmath::{flat_index, for_each_tuple, Scalar};

pub use identity::{check_identity, Counterexample, IdentityKind, IdentityReport};
pub use registry::{builtin_example, builtin_names};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("vector length {got} does not match algebra dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("constant index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate constant entry for the same index tuple")]
    DuplicateConstant,
    #[error("identity `{kind}` expects arity {expected}, algebra has arity {got}")]
    ArityMismatch {
        kind: IdentityKind,
        expected: usize,
        got: usize,
    },
    #[error("unknown built-in example `{0}`")]
    UnknownExample(String),
}

/// Ternary algebra `(V, m)` with `m(e_i ⊗ e_j ⊗ e_k) = Σ_s C^s_{ijk} e_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryAlgebra {
    dim: usize,
    /// Layout: `constants[flat(i,j,k)·n + s]`, all indices 0-based.
    constants: Vec<Scalar>,
}

/// Binary algebra `(V, μ)` with `μ(e_i ⊗ e_j) = Σ_s C^s_{ij} e_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryAlgebra {
    dim: usize,
    constants: Vec<Scalar>,
}

/// Either arity, as read from an input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Ternary(TernaryAlgebra),
    Binary(BinaryAlgebra),
}

impl Algebra {
    pub fn dim(&self) -> usize {
        match self {
            Algebra::Ternary(a) => a.dim(),
            Algebra::Binary(a) => a.dim(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Algebra::Ternary(_) => 3,
            Algebra::Binary(_) => 2,
        }
    }

    pub fn as_ternary(&self) -> Option<&TernaryAlgebra> {
        match self {
            Algebra::Ternary(a) => Some(a),
            Algebra::Binary(_) => None,
        }
    }

    pub fn as_binary(&self) -> Option<&BinaryAlgebra> {
        match self {
            Algebra::Binary(a) => Some(a),
            Algebra::Ternary(_) => None,
        }
    }

    /// Nonzero constants as 1-based `(indices, output, coefficient)` records,
    /// in lexicographic index order.
    pub fn nonzero_constants(&self) -> Vec<(Vec<usize>, usize, Scalar)> {
        let (dim, arity, table) = match self {
            Algebra::Ternary(a) => (a.dim, 3, &a.constants),
            Algebra::Binary(a) => (a.dim, 2, &a.constants),
        };
        let mut out = Vec::new();
        for_each_tuple(dim, arity, |idx| {
            let base = flat_index(idx, dim) * dim;
            for s in 0..dim {
                if !table[base + s].is_zero() {
                    out.push((
                        idx.iter().map(|&i| i + 1).collect(),
                        s + 1,
                        table[base + s].clone(),
                    ));
                }
            }
        });
        out
    }
}

/// One argument of a partially-evaluated product: a basis element or a
/// general coordinate vector.
#[derive(Clone, Copy)]
pub(crate) enum Arg<'a> {
    Basis(usize),
    Vector(&'a [Scalar]),
}

fn check_entry_indices(dim: usize, indices: &[usize], output: usize) -> Result<(), AlgebraError> {
    for &ix in indices.iter().chain(std::iter::once(&output)) {
        if ix == 0 || ix > dim {
            return Err(AlgebraError::IndexOutOfRange { index: ix, dim });
        }
    }
    Ok(())
}

impl TernaryAlgebra {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        TernaryAlgebra {
            dim,
            constants: vec![Scalar::Zero; dim * dim * dim * dim],
        }
    }

    /// Builds an algebra from sparse 1-based entries `(i, j, k, s, c)`;
    /// unlisted constants are zero. Duplicate index tuples are rejected.
    pub fn from_entries(
        dim: usize,
        entries: &[(usize, usize, usize, usize, Scalar)],
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        let mut alg = TernaryAlgebra::zero(dim);
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j, k, s, ref c) in entries {
            check_entry_indices(dim, &[i, j, k], s)?;
            if !seen.insert((i, j, k, s)) {
                return Err(AlgebraError::DuplicateConstant);
            }
            let pos = flat_index(&[i - 1, j - 1, k - 1], dim) * dim + (s - 1);
            alg.constants[pos] = c.clone();
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    /// `C^s_{ijk}` with 0-based indices.
    pub fn constant(&self, i: usize, j: usize, k: usize, s: usize) -> &Scalar {
        &self.constants[flat_index(&[i, j, k], self.dim) * self.dim + s]
    }

    /// The coordinates of `m(e_i ⊗ e_j ⊗ e_k)` (0-based indices).
    pub fn product_row(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let base = flat_index(&[i, j, k], self.dim) * self.dim;
        &self.constants[base..base + self.dim]
    }

    /// Trilinear extension of the structure constants.
    pub fn eval(
        &self,
        u: &[Scalar],
        v: &[Scalar],
        w: &[Scalar],
    ) -> Result<Vec<Scalar>, AlgebraError> {
        for x in [u, v, w] {
            if x.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch {
                    got: x.len(),
                    expected: self.dim,
                });
            }
        }
        Ok(self.eval_args(&[Arg::Vector(u), Arg::Vector(v), Arg::Vector(w)]))
    }

    /// Product with each slot either a basis element or a vector; the
    /// identity checkers use this to keep nested evaluations cheap.
    pub(crate) fn eval_args(&self, args: &[Arg<'_>; 3]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::Zero; n];
        let mut idx = [0usize; 3];
        let mut weights: [Option<&Scalar>; 3] = [None, None, None];
        self.eval_rec(args, 0, &mut idx, &mut weights, &mut out);
        out
    }

    fn eval_rec<'a>(
        &'a self,
        args: &[Arg<'a>; 3],
        slot: usize,
        idx: &mut [usize; 3],
        weights: &mut [Option<&'a Scalar>; 3],
        out: &mut [Scalar],
    ) {
        if slot == 3 {
            let mut coeff = Scalar::one();
            for w in weights.iter().flatten() {
                coeff = &coeff * w;
            }
            if coeff.is_zero() {
                return;
            }
            let row = self.product_row(idx[0], idx[1], idx[2]);
            for (o, c) in out.iter_mut().zip(row) {
                if !c.is_zero() {
                    *o += &(&coeff * c);
                }
            }
            return;
        }
        match args[slot] {
            Arg::Basis(i) => {
                idx[slot] = i;
                weights[slot] = None;
                self.eval_rec(args, slot + 1, idx, weights, out);
            }
            Arg::Vector(v) => {
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    idx[slot] = i;
                    weights[slot] = Some(c);
                    self.eval_rec(args, slot + 1, idx, weights, out);
                }
            }
        }
    }

    /// The signed S₃ symmetrization
    /// `[x₁,x₂,x₃] = Σ_σ sgn(σ) m(x_{σ(1)} ⊗ x_{σ(2)} ⊗ x_{σ(3)})`.
    ///
    /// The result is skew-symmetric for every input algebra; it satisfies the
    /// generalized Jacobi identity when the input is partially associative.
    pub fn induced_lie_bracket(&self) -> TernaryAlgebra {
        let n = self.dim;
        let mut out = TernaryAlgebra::zero(n);
        let perms = signed_permutations(3);
        for_each_tuple(n, 3, |idx| {
            let base = flat_index(idx, n) * n;
            for (perm, sign) in &perms {
                let permuted = [idx[perm[0]], idx[perm[1]], idx[perm[2]]];
                let row_base = flat_index(&permuted, n) * n;
                for s in 0..n {
                    let c = &self.constants[row_base + s];
                    if c.is_zero() {
                        continue;
                    }
                    let signed = if *sign > 0 { c.clone() } else { -c };
                    out.constants[base + s] += &signed;
                }
            }
        });
        out
    }
}

impl BinaryAlgebra {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        BinaryAlgebra {
            dim,
            constants: vec![Scalar::Zero; dim * dim * dim],
        }
    }

    pub fn from_entries(
        dim: usize,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        let mut alg = BinaryAlgebra::zero(dim);
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j, s, ref c) in entries {
            check_entry_indices(dim, &[i, j], s)?;
            if !seen.insert((i, j, s)) {
                return Err(AlgebraError::DuplicateConstant);
            }
            let pos = flat_index(&[i - 1, j - 1], dim) * dim + (s - 1);
            alg.constants[pos] = c.clone();
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    pub(crate) fn add_constant(&mut self, i: usize, j: usize, s: usize, value: &Scalar) {
        let pos = flat_index(&[i, j], self.dim) * self.dim + s;
        self.constants[pos] += value;
    }

    /// `C^s_{ij}` with 0-based indices.
    pub fn constant(&self, i: usize, j: usize, s: usize) -> &Scalar {
        &self.constants[flat_index(&[i, j], self.dim) * self.dim + s]
    }

    /// The coordinates of `μ(e_i ⊗ e_j)` (0-based indices).
    pub fn product_row(&self, i: usize, j: usize) -> &[Scalar] {
        let base = flat_index(&[i, j], self.dim) * self.dim;
        &self.constants[base..base + self.dim]
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        for x in [u, v] {
            if x.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch {
                    got: x.len(),
                    expected: self.dim,
                });
            }
        }
        let n = self.dim;
        let mut out = vec![Scalar::Zero; n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let coeff = a * b;
                for (o, c) in out.iter_mut().zip(self.product_row(i, j)) {
                    if !c.is_zero() {
                        *o += &(&coeff * c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn eval_mixed(&self, left: Arg<'_>, right: Arg<'_>) -> Vec<Scalar> {
        let n = self.dim;
        let one = Scalar::one();
        let expand = |arg: Arg<'_>| -> Vec<(usize, Scalar)> {
            match arg {
                Arg::Basis(i) => vec![(i, one.clone())],
                Arg::Vector(v) => v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect(),
            }
        };
        let mut out = vec![Scalar::Zero; n];
        for (i, a) in expand(left) {
            for (j, b) in expand(right) {
                let coeff = &a * &b;
                for (o, c) in out.iter_mut().zip(self.product_row(i, j)) {
                    if !c.is_zero() {
                        *o += &(&coeff * c);
                    }
                }
            }
        }
        out
    }
}

/// All permutations of `0..k` in lexicographic order, with signs.
pub(crate) fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    fn build(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
        if rest.is_empty() {
            let perm = prefix.clone();
            let mut inversions = 0;
            for a in 0..perm.len() {
                for b in a + 1..perm.len() {
                    if perm[a] > perm[b] {
                        inversions += 1;
                    }
                }
            }
            out.push((perm, if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            build(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    build(&mut Vec::new(), &mut (0..k).collect(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::Zero; n];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn example_algebra_products() {
        let alg = builtin_example("totally-assoc-2d").unwrap();
        let alg = alg.as_ternary().unwrap();
        // m(e₂ ⊗ e₂ ⊗ e₂) = e₁ + 2e₂
        let got = alg.eval(&e(2, 1), &e(2, 1), &e(2, 1)).unwrap();
        assert_eq!(got, vec![Scalar::one(), Scalar::from_int(2)]);
        // m(e₁ ⊗ e₂ ⊗ e₂) = e₁ + e₂
        let got = alg.eval(&e(2, 0), &e(2, 1), &e(2, 1)).unwrap();
        assert_eq!(got, vec![Scalar::one(), Scalar::one()]);
    }

    #[test]
    fn zero_algebra_evaluates_to_zero() {
        let alg = TernaryAlgebra::zero(3);
        let u = vec![
            Scalar::from_int(2),
            Scalar::from_int(-1),
            Scalar::ratio(1, 3),
        ];
        let got = alg.eval(&u, &u, &u).unwrap();
        assert!(got.iter().all(Scalar::is_zero));
    }

    #[test]
    fn cross4_bracket_of_first_three_basis_vectors() {
        let alg = builtin_example("cross4").unwrap();
        let alg = alg.as_ternary().unwrap();
        let got = alg.eval(&e(4, 0), &e(4, 1), &e(4, 2)).unwrap();
        assert_eq!(got, e(4, 3), "[e1, e2, e3] = e4");
        // one transposition flips the sign: [e1, e2, e4] = -e3
        let got = alg.eval(&e(4, 0), &e(4, 1), &e(4, 3)).unwrap();
        let mut expected = vec![Scalar::Zero; 4];
        expected[2] = Scalar::from_int(-1);
        assert_eq!(got, expected);
    }

    #[test]
    fn trilinearity_spot_check() {
        let alg = builtin_example("totally-assoc-2d").unwrap();
        let alg = alg.as_ternary().unwrap();
        let u = vec![Scalar::from_int(2), Scalar::from_int(3)];
        let v = vec![Scalar::ratio(1, 2), Scalar::Zero];
        let w = vec![Scalar::from_int(-1), Scalar::one()];
        let lhs = alg.eval(&u, &v, &w).unwrap();
        // expand u by linearity in the first slot
        let a = alg.eval(&e(2, 0), &v, &w).unwrap();
        let b = alg.eval(&e(2, 1), &v, &w).unwrap();
        let rhs: Vec<Scalar> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| &(&Scalar::from_int(2) * x) + &(&Scalar::from_int(3) * y))
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_rejects_wrong_length() {
        let alg = TernaryAlgebra::zero(2);
        let short = vec![Scalar::one()];
        let ok = vec![Scalar::one(), Scalar::Zero];
        assert!(alg.eval(&short, &ok, &ok).is_err());
    }

    #[test]
    fn duplicate_entries_rejected() {
        let c = Scalar::one();
        let entries = vec![(1, 1, 1, 1, c.clone()), (1, 1, 1, 1, c)];
        assert_eq!(
            TernaryAlgebra::from_entries(2, &entries).unwrap_err(),
            AlgebraError::DuplicateConstant
        );
    }

    #[test]
    fn bracket_of_symmetric_input_is_zero() {
        // single symmetric rule m(e1,e1,e1) = e2
        let alg = builtin_example("partially-assoc-2d").unwrap();
        let bracket = alg.as_ternary().unwrap().induced_lie_bracket();
        assert!(bracket.constants.iter().all(Scalar::is_zero));
    }

    #[test]
    fn bracket_is_skew_symmetric() {
        let alg = builtin_example("cross4").unwrap();
        let bracket = alg.as_ternary().unwrap().induced_lie_bracket();
        let report =
            identity::check_identity(&Algebra::Ternary(bracket), IdentityKind::SkewSymmetric)
                .unwrap();
        assert!(report.holds);
    }

    #[test]
    fn permutation_signs() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms[1], (vec![0, 2, 1], -1));
        assert_eq!(perms[5], (vec![2, 1, 0], -1));
        assert_eq!(signed_permutations(5).len(), 120);
    }
}
