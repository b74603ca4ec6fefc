//! Exact field arithmetic and exact dense linear algebra.
//!
//! Scalars are big rationals, optionally carrying an imaginary part (so the
//! field is ℚ or ℚ(i)); matrices are dense with exact entries. Rank uses
//! fraction-free (Bareiss) elimination, nullspaces are returned in a reduced
//! canonical form so that results are byte-stable across runs.

mod matrix;
mod scalar;

pub use matrix::{ExactMatrix, MatrixError};
pub use scalar::{ArithmeticError, FieldKind, Rational, Scalar, ScalarParseError};

/// Iterates over all `len`-tuples with entries in `0..n`, lexicographically.
///
/// The tuple is reused between iterations; the callback must not hold on to it.
pub(crate) fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; len];
    if n == 0 && len > 0 {
        return;
    }
    loop {
        f(&idx);
        // odometer increment
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Flat index of a tuple with entries in `0..n` (big-endian, first index most
/// significant).
pub(crate) fn flat_index(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i)
}
