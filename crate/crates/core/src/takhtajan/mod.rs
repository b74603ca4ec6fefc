//! The tensor-square construction: from a ternary algebra `(V, m)` and a
//! parameter α, a binary algebra on `W = V ⊗ V`, a lift of ternary cochains
//! to `W`-cochains, the symbolic analysis of when the induced product is of
//! associative type, and the recovery of the weak ternary complex from the
//! Hochschild complex of `(W, μ)`.

mod analysis;
mod poly;

pub use analysis::{assoc_type_analysis, AssocTypeReport, TernaryIdentityClass};
pub use poly::{sqrt_in_field, univariate_roots, Poly2, SolveError, Var};

use thiserror::Error;

use crate::algebras::{check_identity, Algebra, BinaryAlgebra, IdentityKind, TernaryAlgebra};
use crate::cochain::{delta_weak_general, hochschild, Cochain, CochainError, Theory};
use crate::exactmath::{flat_index, for_each_tuple, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TakhtajanError {
    #[error("recovery check requires a totally associative base algebra")]
    NotTotallyAssociative,
    #[error("cochain lift expects a ternary cochain, got a binary one")]
    NotTernary,
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Which second summand the induced product on `W` carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorSquareVariant {
    /// `μ((x₁⊗x₂) ⊗ (y₁⊗y₂)) = m(x₁,x₂,y₁) ⊗ y₂ + α · x₁ ⊗ m(x₂,y₁,y₂)`
    AssociativeType,
    /// `[x₁⊗x₂, y₁⊗y₂] = m(x₁,x₂,y₁) ⊗ y₂ + α · y₁ ⊗ m(x₁,x₂,y₂)`,
    /// the bracket-style product used on the Lie side (α = 1 there).
    NambuBracket,
}

/// The induced binary algebra on `W = V ⊗ V`, with the pair `(i, j)`
/// flattened to `(i−1)·n + j` (1-based view).
#[derive(Clone)]
pub struct TensorSquareAlgebra {
    base_dim: usize,
    alpha: Scalar,
    variant: TensorSquareVariant,
    algebra: BinaryAlgebra,
}

impl TensorSquareAlgebra {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn variant(&self) -> TensorSquareVariant {
        self.variant
    }

    pub fn algebra(&self) -> &BinaryAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> BinaryAlgebra {
        self.algebra
    }
}

/// Builds the binary product on `W` from the ternary structure constants.
pub fn induced_binary(
    alg: &TernaryAlgebra,
    alpha: &Scalar,
    variant: TensorSquareVariant,
) -> TensorSquareAlgebra {
    let n = alg.dim();
    let w_dim = n * n;
    let mut out = BinaryAlgebra::zero(w_dim);
    let pair = |a: usize, b: usize| a * n + b;
    for_each_tuple(n, 4, |t| {
        let (x1, x2, y1, y2) = (t[0], t[1], t[2], t[3]);
        let left = pair(x1, x2);
        let right = pair(y1, y2);
        // first summand: m(x₁,x₂,y₁) ⊗ y₂
        for (s, c) in alg.product_row(x1, x2, y1).iter().enumerate() {
            if !c.is_zero() {
                out.add_constant(left, right, pair(s, y2), c);
            }
        }
        if alpha.is_zero() {
            return;
        }
        match variant {
            TensorSquareVariant::AssociativeType => {
                // α · x₁ ⊗ m(x₂,y₁,y₂)
                for (s, c) in alg.product_row(x2, y1, y2).iter().enumerate() {
                    if !c.is_zero() {
                        out.add_constant(left, right, pair(x1, s), &(alpha * c));
                    }
                }
            }
            TensorSquareVariant::NambuBracket => {
                // α · y₁ ⊗ m(x₁,x₂,y₂)
                for (s, c) in alg.product_row(x1, x2, y2).iter().enumerate() {
                    if !c.is_zero() {
                        out.add_constant(left, right, pair(y1, s), &(alpha * c));
                    }
                }
            }
        }
    });
    TensorSquareAlgebra {
        base_dim: n,
        alpha: alpha.clone(),
        variant,
        algebra: out,
    }
}

/// Lifts a ternary degree-d cochain to a `W`-cochain with d+1 tensor-square
/// arguments (2d+2 base indices):
///
/// `Δφ(y₁ ⊗ … ⊗ y_{2d+2}) = φ(y₁,…,y_{2d+1}) ⊗ y_{2d+2} + α · y₁ ⊗ φ(y₂,…,y_{2d+2})`
///
/// The result is tagged as a Hochschild cochain on `W`.
pub fn lift_cochain(phi: &Cochain, alpha: &Scalar) -> Result<Cochain, TakhtajanError> {
    if phi.theory().arity() != 3 {
        return Err(TakhtajanError::NotTernary);
    }
    let n = phi.dim();
    let w_dim = n * n;
    let d = phi.degree();
    let mut lifted = Cochain::zero(Theory::BinaryAssociative, d, w_dim)?;
    let pair = |a: usize, b: usize| a * n + b; // 0-based W index
                                               // a base-index sequence of even length 2d+2 packs into d+1 W-indices
    let pack = |base: &[usize]| -> usize {
        let w: Vec<usize> = base.chunks(2).map(|ch| pair(ch[0], ch[1])).collect();
        flat_index(&w, w_dim)
    };
    for (inputs, output, c) in phi.nonzero_entries() {
        let zero_in: Vec<usize> = inputs.iter().map(|&i| i - 1).collect();
        let s = output - 1;
        // φ(y₁,…,y_{2d+1}) ⊗ y_{2d+2}: free trailing index
        for y_last in 0..n {
            let mut base = zero_in.clone();
            base.push(y_last);
            let pos = pack(&base) * w_dim + pair(s, y_last);
            lifted.coeffs_mut()[pos] += &c;
        }
        if !alpha.is_zero() {
            // α · y₁ ⊗ φ(y₂,…,y_{2d+2}): free leading index
            for y_first in 0..n {
                let mut base = vec![y_first];
                base.extend(&zero_in);
                let pos = pack(&base) * w_dim + pair(y_first, s);
                lifted.coeffs_mut()[pos] += &(&c * alpha);
            }
        }
    }
    Ok(lifted)
}

/// Per-degree outcome of the recovery comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecoveryOutcome {
    /// `d(Δφ) = Δ(δφ)` exactly for every basis cochain φ.
    Exact,
    /// `d(Δφ) = −Δ(δφ)` for every basis cochain φ.
    SignFlipped,
    /// Neither relation holds uniformly.
    Failed,
}

#[derive(Clone, Debug)]
pub struct DegreeRecovery {
    /// Level p: compares on cochains with 2p−1 arguments (degree p−1).
    pub level: usize,
    pub outcome: RecoveryOutcome,
    pub basis_cochains: usize,
}

#[derive(Clone, Debug)]
pub struct RecoveryReport {
    pub degrees: Vec<DegreeRecovery>,
}

impl RecoveryReport {
    pub fn all_commute(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.outcome != RecoveryOutcome::Failed)
    }
}

/// Checks, degree by degree, that the Hochschild coboundary of the lifted
/// cochain equals the lift of the weak coboundary: `d^p ∘ Δ_p = Δ_{p+1} ∘ δ^p`
/// on every basis cochain, exactly or up to one global sign per degree.
///
/// Requires a totally associative base and uses α = 0 (the parameter value
/// singled out by the associative-type analysis). The weak coboundary here is
/// the general-formula family, whose level-1 operator has three terms; the
/// explicit 4-term level-1 operator contains the extra middle insertion
/// `m(x₁,f(x₂),x₃)`, which the Hochschild route does not produce.
pub fn recovery_check(
    alg: &TernaryAlgebra,
    max_level: usize,
) -> Result<RecoveryReport, TakhtajanError> {
    let report = check_identity(
        &Algebra::Ternary(alg.clone()),
        IdentityKind::TotallyAssociative,
    )
    .expect("arity is ternary");
    if !report.holds {
        return Err(TakhtajanError::NotTotallyAssociative);
    }
    let alpha = Scalar::Zero;
    let w = induced_binary(alg, &alpha, TensorSquareVariant::AssociativeType);
    let n = alg.dim();
    let mut degrees = Vec::new();
    for level in 1..=max_level {
        let d = level - 1; // degree of the input cochains
        let table = {
            let mut len: usize = n;
            for _ in 0..(2 * d + 1) {
                len *= n;
            }
            len
        };
        let mut outcome: Option<RecoveryOutcome> = None;
        for index in 0..table {
            let phi = Cochain::basis(Theory::TernaryWeak, d, n, index)?;
            let lhs = hochschild(&w.algebra, &lift_cochain(&phi, &alpha)?)?;
            let rhs = lift_cochain(&delta_weak_general(alg, &phi)?, &alpha)?;
            let this = if lhs == rhs {
                if lhs.is_zero() {
                    continue; // compatible with either sign
                }
                RecoveryOutcome::Exact
            } else if lhs == rhs.scaled(&Scalar::from_int(-1)) {
                RecoveryOutcome::SignFlipped
            } else {
                RecoveryOutcome::Failed
            };
            match &outcome {
                None => outcome = Some(this),
                Some(prev) if *prev == this => {}
                Some(_) => {
                    outcome = Some(RecoveryOutcome::Failed);
                    break;
                }
            }
        }
        degrees.push(DegreeRecovery {
            level,
            outcome: outcome.unwrap_or(RecoveryOutcome::Exact),
            basis_cochains: table,
        });
    }
    Ok(RecoveryReport { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::builtin_example;
    use crate::cochain::matrixize;

    fn ternary(name: &str) -> TernaryAlgebra {
        builtin_example(name).unwrap().as_ternary().unwrap().clone()
    }

    #[test]
    fn induced_binary_with_alpha_zero_on_unit_pair() {
        let alg = ternary("totally-assoc-2d");
        let w = induced_binary(&alg, &Scalar::Zero, TensorSquareVariant::AssociativeType);
        // μ((e1⊗e1) ⊗ (e1⊗e1)) = m(e1,e1,e1) ⊗ e1 = e1⊗e1, i.e. w1·w1 = w1
        assert_eq!(*w.algebra().constant(0, 0, 0), Scalar::one());
        for s in 1..4 {
            assert!(w.algebra().constant(0, 0, s).is_zero());
        }
    }

    #[test]
    fn induced_binary_of_zero_algebra_is_zero() {
        let alg = TernaryAlgebra::zero(2);
        let w = induced_binary(
            &alg,
            &Scalar::from_int(5),
            TensorSquareVariant::AssociativeType,
        );
        assert!(Algebra::Binary(w.into_algebra())
            .nonzero_constants()
            .is_empty());
    }

    #[test]
    fn induced_binary_with_alpha_one_on_partial_example() {
        let alg = ternary("partially-assoc-2d");
        let w = induced_binary(&alg, &Scalar::one(), TensorSquareVariant::AssociativeType);
        // μ((e1⊗e1) ⊗ (e1⊗e1)) = e2⊗e1 + e1⊗e2 = w3 + w2
        let row: Vec<&Scalar> = (0..4).map(|s| w.algebra().constant(0, 0, s)).collect();
        assert!(row[0].is_zero());
        assert_eq!(*row[1], Scalar::one());
        assert_eq!(*row[2], Scalar::one());
        assert!(row[3].is_zero());
    }

    #[test]
    fn induced_binary_alpha_zero_is_associative() {
        let alg = ternary("totally-assoc-2d");
        let w = induced_binary(&alg, &Scalar::Zero, TensorSquareVariant::AssociativeType);
        let report = check_identity(
            &Algebra::Binary(w.into_algebra()),
            IdentityKind::BinaryAssociative,
        )
        .unwrap();
        assert!(report.holds);
    }

    #[test]
    fn nambu_variant_on_cross4() {
        let alg = ternary("cross4");
        let w = induced_binary(&alg, &Scalar::one(), TensorSquareVariant::NambuBracket);
        // [e1⊗e2, e3⊗e4] = [e1,e2,e3]⊗e4 + e3⊗[e1,e2,e4] = e4⊗e4 − e3⊗e3
        let n = 4;
        let left = 1; // e1⊗e2
        let right = 2 * n + 3;
        let w44 = 3 * n + 3;
        let w33 = 2 * n + 2;
        assert_eq!(*w.algebra().constant(left, right, w44), Scalar::one());
        assert_eq!(
            *w.algebra().constant(left, right, w33),
            Scalar::from_int(-1)
        );
    }

    #[test]
    fn lift_of_identity_is_identity_on_w() {
        let id = Cochain::identity_map(Theory::TernaryWeak, 2);
        let lifted = lift_cochain(&id, &Scalar::Zero).unwrap();
        let expected = Cochain::identity_map(Theory::BinaryAssociative, 4);
        assert_eq!(lifted, expected);
    }

    #[test]
    fn lift_of_multiplication_on_basis_pair() {
        let alg = ternary("totally-assoc-2d");
        let m = Cochain::of_ternary_multiplication(Theory::TernaryWeak, &alg);
        let lifted = lift_cochain(&m, &Scalar::Zero).unwrap();
        // Δm((e2⊗e2) ⊗ (e2⊗e2)) = m(e2,e2,e2) ⊗ e2 = (e1 + 2e2) ⊗ e2
        let w4 = 3; // e2⊗e2
        let w_e1e2 = 1; // e1⊗e2
        let w_e2e2 = 3;
        assert_eq!(*lifted.get(&[w4, w4], w_e1e2), Scalar::one());
        assert_eq!(*lifted.get(&[w4, w4], w_e2e2), Scalar::from_int(2));
    }

    #[test]
    fn lift_is_linear() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(17);
        let alpha = Scalar::ratio(1, 2);
        for _ in 0..5 {
            let random = |rng: &mut StdRng| {
                let mut c = Cochain::zero(Theory::TernaryWeak, 1, 2).unwrap();
                for x in c.coeffs_mut() {
                    if rng.gen_bool(0.5) {
                        *x = Scalar::from_int(rng.gen_range(-3i64..=3));
                    }
                }
                c
            };
            let phi = random(&mut rng);
            let psi = random(&mut rng);
            let a = Scalar::from_int(rng.gen_range(-2i64..=2));
            let b = Scalar::from_int(rng.gen_range(-2i64..=2));
            let combined = phi.scaled(&a).add(&psi.scaled(&b)).unwrap();
            let lhs = lift_cochain(&combined, &alpha).unwrap();
            let rhs = lift_cochain(&phi, &alpha)
                .unwrap()
                .scaled(&a)
                .add(&lift_cochain(&psi, &alpha).unwrap().scaled(&b))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lift_of_zero_is_zero() {
        let z = Cochain::zero(Theory::TernaryWeak, 1, 2).unwrap();
        assert!(lift_cochain(&z, &Scalar::one()).unwrap().is_zero());
    }

    #[test]
    fn recovery_commutes_exactly_for_totally_associative_base() {
        let alg = ternary("totally-assoc-2d");
        let report = recovery_check(&alg, 2).unwrap();
        assert_eq!(report.degrees.len(), 2);
        for d in &report.degrees {
            assert_eq!(d.outcome, RecoveryOutcome::Exact, "level {}", d.level);
        }
    }

    #[test]
    fn recovery_on_zero_algebra_is_trivial() {
        let alg = TernaryAlgebra::zero(2);
        let report = recovery_check(&alg, 2).unwrap();
        assert!(report.all_commute());
    }

    #[test]
    fn recovery_rejects_non_totally_associative_base() {
        let not_assoc = TernaryAlgebra::from_entries(
            2,
            &[(1, 1, 1, 1, Scalar::one()), (1, 1, 2, 1, Scalar::one())],
        )
        .unwrap();
        assert_eq!(
            recovery_check(&not_assoc, 1).unwrap_err(),
            TakhtajanError::NotTotallyAssociative
        );
    }

    #[test]
    fn recovery_consistency_with_matrix_complex() {
        // whenever the recovery commutes at levels p and p+1, the matrixized
        // weak operators must compose to zero
        let alg = builtin_example("totally-assoc-2d").unwrap();
        let report = recovery_check(alg.as_ternary().unwrap(), 2).unwrap();
        assert!(report.all_commute());
        let d1 = matrixize(&alg, Theory::TernaryWeak, 1).unwrap();
        let d2 = matrixize(&alg, Theory::TernaryWeak, 2).unwrap();
        assert!(d2.mul(&d1).unwrap().is_zero());
    }
}
