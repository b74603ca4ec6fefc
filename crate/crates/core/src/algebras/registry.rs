//! Built-in example algebras.

use crate::exactmath::Scalar;

use super::{signed_permutations, Algebra, AlgebraError, BinaryAlgebra, TernaryAlgebra};

/// The 2-dimensional totally associative ternary algebra with products
///
/// ```text
/// m(e1,e1,e1) = e1        m(e2,e2,e1) = e1 + e2
/// m(e1,e1,e2) = e2        m(e2,e2,e2) = e1 + 2e2
/// m(e1,e2,e2) = e1 + e2   m(e1,e2,e1) = e2
/// m(e2,e1,e1) = e2        m(e2,e1,e2) = e1 + e2
/// ```
fn totally_assoc_2d() -> TernaryAlgebra {
    let one = Scalar::one;
    let entries = vec![
        (1, 1, 1, 1, one()),
        (1, 1, 2, 2, one()),
        (1, 2, 2, 1, one()),
        (1, 2, 2, 2, one()),
        (2, 1, 1, 2, one()),
        (2, 2, 1, 1, one()),
        (2, 2, 1, 2, one()),
        (2, 2, 2, 1, one()),
        (2, 2, 2, 2, Scalar::from_int(2)),
        (1, 2, 1, 2, one()),
        (2, 1, 2, 1, one()),
        (2, 1, 2, 2, one()),
    ];
    TernaryAlgebra::from_entries(2, &entries).expect("static table is valid")
}

/// The 2-dimensional partially associative ternary algebra with the single
/// product `m(e1,e1,e1) = e2`.
fn partially_assoc_2d() -> TernaryAlgebra {
    TernaryAlgebra::from_entries(2, &[(1, 1, 1, 2, Scalar::one())]).expect("static table is valid")
}

/// The ternary cross product on oriented 4-space, realized through the
/// rank-4 Levi-Civita symbol: the `s` component of `[e_i, e_j, e_k]` is
/// `ε_{ijks}`, with the overall sign pinned by `[e1,e2,e3] = e4`.
fn cross4() -> TernaryAlgebra {
    let mut entries = Vec::new();
    for (perm, sign) in signed_permutations(4) {
        entries.push((
            perm[0] + 1,
            perm[1] + 1,
            perm[2] + 1,
            perm[3] + 1,
            Scalar::from_int(sign as i64),
        ));
    }
    TernaryAlgebra::from_entries(4, &entries).expect("static table is valid")
}

/// Looks up a built-in example: `totally-assoc-2d`, `partially-assoc-2d`,
/// `cross4`, or `zero-<n>-<ternary|binary>`.
pub fn builtin_example(name: &str) -> Result<Algebra, AlgebraError> {
    match name {
        "totally-assoc-2d" => return Ok(Algebra::Ternary(totally_assoc_2d())),
        "partially-assoc-2d" => return Ok(Algebra::Ternary(partially_assoc_2d())),
        "cross4" => return Ok(Algebra::Ternary(cross4())),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("zero-") {
        if let Some((n_str, arity)) = rest.split_once('-') {
            if let Ok(n) = n_str.parse::<usize>() {
                if n >= 1 {
                    match arity {
                        "ternary" => return Ok(Algebra::Ternary(TernaryAlgebra::zero(n))),
                        "binary" => return Ok(Algebra::Binary(BinaryAlgebra::zero(n))),
                        _ => {}
                    }
                }
            }
        }
    }
    Err(AlgebraError::UnknownExample(name.to_string()))
}

/// Names accepted by [`builtin_example`], with the zero family described by
/// its pattern.
pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "totally-assoc-2d",
        "partially-assoc-2d",
        "cross4",
        "zero-<n>-<ternary|binary>",
    ]
}
