//! Acceptance suite: every release criterion as one test, each printing a
//! final pass line (visible with `cargo test --test acceptance -- --nocapture`).
//! All comparisons are exact; there are no tolerances anywhere.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ternalg::algebras::{builtin_example, check_identity, IdentityKind, TernaryAlgebra};
use ternalg::cochain::{delta_partial, derivations, matrixize, Theory};
use ternalg::exactmath::{FieldKind, Scalar};
use ternalg::freeterm::{normalize, templates, RewriteRule, SymbolicOperator};
use ternalg::nogo::{solve, weak_delta3_coefficients, weak_inversion, AnsatzCase};
use ternalg::takhtajan::{
    assoc_type_analysis, induced_binary, recovery_check, RecoveryOutcome, TensorSquareVariant,
    TernaryIdentityClass,
};
use ternalg::Algebra;

fn pass(number: u32, name: &str, detail: &str) {
    println!("ACCEPTANCE {number:02} [{name}] PASS — {detail}");
}

fn ternary(name: &str) -> TernaryAlgebra {
    builtin_example(name).unwrap().as_ternary().unwrap().clone()
}

fn holds(name: &str, kind: IdentityKind) -> bool {
    check_identity(&builtin_example(name).unwrap(), kind)
        .unwrap()
        .holds
}

#[test]
fn criterion_01_identity_suite() {
    assert!(holds("totally-assoc-2d", IdentityKind::TotallyAssociative));
    assert!(holds(
        "totally-assoc-2d",
        IdentityKind::WeakTotallyAssociative
    ));
    assert!(!holds(
        "totally-assoc-2d",
        IdentityKind::PartiallyAssociative
    ));
    assert!(holds(
        "partially-assoc-2d",
        IdentityKind::PartiallyAssociative
    ));
    assert!(holds("cross4", IdentityKind::SkewSymmetric));
    assert!(holds("cross4", IdentityKind::NambuFundamental));
    pass(
        1,
        "identity-suite",
        "exhaustive basis enumeration, exact equality",
    );
}

#[test]
fn criterion_02_partial_complex_composes_to_zero() {
    let mut checked = Vec::new();
    for name in [
        "partially-assoc-2d",
        "zero-1-ternary",
        "zero-2-ternary",
        "zero-3-ternary",
    ] {
        let alg = builtin_example(name).unwrap();
        let d1 = matrixize(&alg, Theory::TernaryPartial, 1).unwrap();
        let d2 = matrixize(&alg, Theory::TernaryPartial, 2).unwrap();
        let product = d2.mul(&d1).unwrap();
        assert!(product.is_zero(), "δ²·δ¹ ≠ 0 on {name}");
        checked.push(format!("{name} ({}x{})", product.rows(), product.cols()));
    }
    pass(2, "partial-d2-d1-zero", &checked.join(", "));
}

#[test]
fn criterion_03_weak_complex_composes_to_zero_up_to_level_4() {
    let alg = builtin_example("totally-assoc-2d").unwrap();
    let mut sizes = Vec::new();
    for p in 1..=3usize {
        let d_lo = matrixize(&alg, Theory::TernaryWeak, p).unwrap();
        let d_hi = matrixize(&alg, Theory::TernaryWeak, p + 1).unwrap();
        assert!(
            d_hi.mul(&d_lo).unwrap().is_zero(),
            "δ^{}·δ^{} ≠ 0",
            p + 1,
            p
        );
        sizes.push(format!("{}x{}", d_hi.rows(), d_hi.cols()));
    }
    assert_eq!(sizes.last().unwrap(), "1024x256");
    pass(
        3,
        "weak-complex-zero",
        &format!("p = 1..3 with top operator {}", sizes.last().unwrap()),
    );
}

#[test]
fn criterion_04_symbolic_weak_composition_vanishes() {
    let d2 = templates::weak_delta("g", 2);
    let d1 = templates::weak_delta1_explicit("f");
    let composed = SymbolicOperator::compose(&d2, &d1).unwrap();
    let raw_terms = composed.as_linear_form().len();
    let normal = normalize(&composed.as_linear_form(), RewriteRule::WeakTernary).unwrap();
    assert!(normal.is_zero(), "leftover terms: {normal}");
    pass(
        4,
        "symbolic-weak-d2-d1",
        &format!("{raw_terms} collected terms rewrite to the empty form"),
    );
}

/// The 28 coefficient combinations of the ternary-partial obstruction
/// system, as rows over (a1..a8).
fn expected_ternary_rows() -> Vec<Vec<i64>> {
    fn row(i: usize, sign: i64, j: usize) -> Vec<i64> {
        let mut r = vec![0i64; 8];
        r[i - 1] += 1;
        r[j - 1] += sign;
        r
    }
    vec![
        row(7, -1, 8),
        row(6, -1, 8),
        row(5, 1, 8),
        row(6, -1, 7),
        row(5, -1, 7),
        row(4, 1, 8),
        row(4, 1, 7),
        row(5, -1, 6),
        row(4, -1, 6),
        row(1, 1, 8),
        row(1, 1, 7),
        row(1, 1, 6),
        row(2, 1, 7),
        row(2, 1, 6),
        row(2, 1, 5),
        row(5, -1, 1),
        row(2, -1, 1),
        row(2, -1, 1),
        row(2, -1, 8),
        row(7, -1, 8),
        row(3, 1, 6),
        row(3, 1, 5),
        row(3, 1, 4),
        row(4, -1, 1),
        row(4, -1, 1),
        row(3, -1, 1),
        row(3, -1, 8),
        row(3, -1, 8),
    ]
}

fn expected_binary_rows() -> Vec<Vec<i64>> {
    fn row(i: usize, sign: i64, j: usize) -> Vec<i64> {
        let mut r = vec![0i64; 5];
        r[i - 1] += 1;
        r[j - 1] += sign;
        r
    }
    vec![
        row(3, -1, 4),
        row(2, 1, 4),
        row(2, -1, 3),
        row(1, 1, 4),
        row(1, 1, 3),
        row(3, 1, 5),
        row(2, 1, 5),
        row(2, -1, 1),
        row(5, -1, 1),
        row(5, -1, 4),
    ]
}

fn integer_rows(system: &ternalg::nogo::ConstraintSystem) -> Vec<Vec<i64>> {
    system
        .rows
        .iter()
        .map(|r| {
            r.combination
                .iter()
                .map(|c| {
                    assert!(c.is_real());
                    let r = c.re();
                    assert_eq!(*r.denom(), num_bigint::BigInt::from(1));
                    let n: i64 = r.numer().try_into().unwrap();
                    n
                })
                .collect()
        })
        .collect()
}

fn assert_multiset_equal(mut got: Vec<Vec<i64>>, mut expected: Vec<Vec<i64>>) {
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
}

#[test]
fn criterion_05_ternary_nogo_matches_and_forces_zero() {
    let verdict = solve(AnsatzCase::TernaryPartial);
    assert_eq!(verdict.system.rows.len(), 28);
    assert_multiset_equal(integer_rows(&verdict.system), expected_ternary_rows());
    assert_eq!(verdict.dimension, 0);
    assert!(!verdict.extension_exists);
    pass(
        5,
        "nogo-ternary-partial",
        "28 constraint rows match; nullspace dimension 0",
    );
}

#[test]
fn criterion_06_binary_nogo_matches_and_forces_zero() {
    let verdict = solve(AnsatzCase::BinarySkew);
    assert_eq!(verdict.system.rows.len(), 10);
    assert_multiset_equal(integer_rows(&verdict.system), expected_binary_rows());
    assert_eq!(verdict.dimension, 0);
    pass(
        6,
        "nogo-binary-skew",
        "10 constraint rows match; nullspace dimension 0",
    );
}

#[test]
fn criterion_07_weak_inversion_control() {
    let verdict = weak_inversion();
    assert!(
        verdict.dimension > 0,
        "solver returned 0 for the weak control"
    );
    let v = weak_delta3_coefficients();
    let image = verdict.system.matrix.apply(&v).unwrap();
    assert!(image.iter().all(Scalar::is_zero));
    assert!(verdict.system.substitute(&v).is_zero());
    pass(
        7,
        "nogo-weak-inversion",
        &format!(
            "solution space has dimension {} and contains (1,0,1,-1,0,1,0,-1)",
            verdict.dimension
        ),
    );
}

#[test]
fn criterion_08_associative_type_analysis() {
    let total = assoc_type_analysis(TernaryIdentityClass::Total, FieldKind::Rational).unwrap();
    let mut got: Vec<String> = total.constraints.iter().map(|p| p.to_string()).collect();
    got.sort();
    let mut expected = vec![
        "1 + alpha + lambda".to_string(),
        "alpha^2 + alpha*lambda + alpha^2*lambda".to_string(),
        "alpha + alpha*lambda".to_string(),
    ];
    expected.sort();
    assert_eq!(got, expected);
    assert_eq!(total.solutions, vec![(Scalar::Zero, Scalar::from_int(-1))]);

    let partial_q =
        assoc_type_analysis(TernaryIdentityClass::Partial, FieldKind::Rational).unwrap();
    assert!(partial_q.solutions.is_empty());

    let partial_qi =
        assoc_type_analysis(TernaryIdentityClass::Partial, FieldKind::Gaussian).unwrap();
    let minus_one = Scalar::from_int(-1);
    assert_eq!(partial_qi.solutions.len(), 2);
    assert!(partial_qi
        .solutions
        .contains(&(Scalar::i(), minus_one.clone())));
    assert!(partial_qi.solutions.contains(&(-Scalar::i(), minus_one)));
    pass(
        8,
        "takhtajan-analysis",
        "total: unique (0,-1); partial: none over Q, (±i,-1) over Q(i)",
    );
}

#[test]
fn criterion_09_induced_associativity_and_hochschild_complex() {
    let base = ternary("totally-assoc-2d");
    let w = induced_binary(&base, &Scalar::Zero, TensorSquareVariant::AssociativeType);
    let w_alg = Algebra::Binary(w.algebra().clone());
    assert!(
        check_identity(&w_alg, IdentityKind::BinaryAssociative)
            .unwrap()
            .holds
    );
    let mut top = (0, 0);
    for level in 1..=3usize {
        let d_lo = matrixize(&w_alg, Theory::BinaryAssociative, level).unwrap();
        let d_hi = matrixize(&w_alg, Theory::BinaryAssociative, level + 1).unwrap();
        assert!(
            d_hi.mul(&d_lo).unwrap().is_zero(),
            "d·d ≠ 0 at level {level}"
        );
        top = (d_hi.rows(), d_hi.cols());
    }
    assert_eq!(top, (4096, 1024));
    pass(
        9,
        "induced-hochschild",
        "W-algebra associative; d·d = 0 for three consecutive degree pairs (top 4096x1024)",
    );
}

#[test]
fn criterion_10_recovery_of_the_weak_complex() {
    let base = ternary("totally-assoc-2d");
    let report = recovery_check(&base, 2).unwrap();
    assert_eq!(report.degrees.len(), 2);
    let mut outcomes = Vec::new();
    for d in &report.degrees {
        assert_ne!(d.outcome, RecoveryOutcome::Failed, "level {}", d.level);
        outcomes.push(format!(
            "level {}: {}",
            d.level,
            match d.outcome {
                RecoveryOutcome::Exact => "exact",
                RecoveryOutcome::SignFlipped => "up to a global sign",
                RecoveryOutcome::Failed => unreachable!(),
            }
        ));
    }
    pass(10, "hochschild-recovery", &outcomes.join("; "));
}

#[test]
fn criterion_11_derivations_oracle() {
    let alg = builtin_example("partially-assoc-2d").unwrap();
    let basis = derivations(&alg).unwrap();
    assert_eq!(basis.len(), 2, "dim Z¹ = 2");
    let talg = alg.as_ternary().unwrap();
    for f in &basis {
        assert!(delta_partial(talg, f).unwrap().is_zero());
        // hand computation: f(e1) = a·e1 + b·e2 and f(e2) = 3a·e2
        assert!(f.get(&[1], 0).is_zero());
        assert_eq!(*f.get(&[1], 1), &Scalar::from_int(3) * f.get(&[0], 0));
    }
    pass(
        11,
        "derivations",
        "dim Z¹ = 2 and every basis element re-evaluates to a cocycle",
    );
}

fn random_sparse_algebra(rng: &mut StdRng, dim: usize) -> TernaryAlgebra {
    let mut entries = Vec::new();
    for i in 1..=dim {
        for j in 1..=dim {
            for k in 1..=dim {
                for s in 1..=dim {
                    if rng.gen_bool(0.25) {
                        let num = rng.gen_range(-3i64..=3);
                        if num != 0 {
                            entries.push((i, j, k, s, Scalar::from_int(num)));
                        }
                    }
                }
            }
        }
    }
    TernaryAlgebra::from_entries(dim, &entries).unwrap()
}

#[test]
fn criterion_12_induced_bracket_functor() {
    let mut rng = StdRng::seed_from_u64(20260811);
    let mut candidates: Vec<TernaryAlgebra> = (0..100)
        .map(|_| random_sparse_algebra(&mut rng, 2))
        .collect();
    // deterministic extras: the registry examples and a single-rule algebra
    // with a nonzero bracket
    candidates.push(ternary("partially-assoc-2d"));
    candidates.push(TernaryAlgebra::zero(2));
    candidates.push(TernaryAlgebra::from_entries(4, &[(1, 2, 3, 4, Scalar::one())]).unwrap());

    let mut qualifying = 0usize;
    let mut s5_all = true;
    let mut s3_all = true;
    let mut nonzero_brackets = 0usize;
    for alg in &candidates {
        let bracket = alg.induced_lie_bracket();
        let bracket_alg = Algebra::Ternary(bracket.clone());
        assert!(
            check_identity(&bracket_alg, IdentityKind::SkewSymmetric)
                .unwrap()
                .holds,
            "bracket must be skew-symmetric for every input"
        );
        let partial = check_identity(
            &Algebra::Ternary(alg.clone()),
            IdentityKind::PartiallyAssociative,
        )
        .unwrap()
        .holds;
        if partial {
            qualifying += 1;
            if !Algebra::Ternary(bracket.clone())
                .nonzero_constants()
                .is_empty()
            {
                nonzero_brackets += 1;
            }
            let s5 = check_identity(&bracket_alg, IdentityKind::TernaryLieS5)
                .unwrap()
                .holds;
            let s3 = check_identity(&bracket_alg, IdentityKind::TernaryLieS3)
                .unwrap()
                .holds;
            s5_all &= s5;
            s3_all &= s3;
        }
    }
    assert!(qualifying >= 3, "the deterministic candidates qualify");
    assert!(
        s5_all || s3_all,
        "neither Jacobi variant holds on all partially associative candidates"
    );
    let outcome = match (s5_all, s3_all) {
        (true, true) => "both the S5 and the literal S3 variant hold",
        (true, false) => "the S5 variant holds, the literal S3 variant fails",
        (false, true) => "the literal S3 variant holds, the S5 variant fails",
        (false, false) => unreachable!(),
    };
    pass(
        12,
        "bracket-functor",
        &format!(
            "skew on {} inputs; {} partially associative candidates ({} with nonzero bracket): {}",
            candidates.len(),
            qualifying,
            nonzero_brackets,
            outcome
        ),
    );
}
