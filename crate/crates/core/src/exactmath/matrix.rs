use std::fmt;

use thiserror::Error;

use super::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error(
        "dimension mismatch: {left_rows}x{left_cols} incompatible with {right_rows}x{right_cols}"
    )]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("vector length {got} does not match column count {expected}")]
    VectorLength { got: usize, expected: usize },
}

/// Dense matrix of exact scalars, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::Zero; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(MatrixError::RaggedRows {
                    row: i,
                    got: row.len(),
                    expected: ncols,
                });
            }
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn add_at(&mut self, r: usize, c: usize, value: &Scalar) {
        self.data[r * self.cols + c] += value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// `self · rhs`, skipping zero entries of `self` (the coboundary matrices
    /// are sparse, so this is the product that matters in practice).
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = ExactMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let rhs_row = rhs.row(k);
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::VectorLength {
                got: v.len(),
                expected: self.cols,
            });
        }
        let mut out = vec![Scalar::Zero; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(r).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    *o += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Exact rank by fraction-free (Bareiss) elimination: every update is
    /// `(a·pivot − b·c) / previous_pivot`, which keeps intermediate entries
    /// at minor-determinant size instead of blowing up exponentially.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |m: &Vec<Scalar>, r: usize, c: usize| m[r * cols + c].clone();
        let mut prev = Scalar::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot_row) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            if pivot_row != rank {
                for c in 0..cols {
                    m.swap(pivot_row * cols + c, rank * cols + c);
                }
            }
            let pivot = at(&m, rank, col);
            for r in rank + 1..rows {
                let lead = at(&m, r, col);
                for c in col + 1..cols {
                    let num = &(&at(&m, r, c) * &pivot) - &(&lead * &at(&m, rank, c));
                    m[r * cols + c] = num.checked_div(&prev).expect("previous pivot is nonzero");
                }
                m[r * cols + col] = Scalar::Zero;
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form over the field, together with the pivot
    /// columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != row {
                for c in 0..m.cols {
                    m.data.swap(pivot_row * m.cols + c, row * m.cols + c);
                }
            }
            let inv = Scalar::one()
                .checked_div(m.get(row, col))
                .expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = &(m.get(r, c) - &(&factor * m.get(row, c)));
                    m.set(r, c, v.clone());
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of `{v : M v = 0}`, canonicalized: written as rows, the basis is
    /// in reduced row echelon form with leading entry 1 and pivot positions
    /// ascending, so the output is deterministic.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        if free.is_empty() {
            return Vec::new();
        }
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Scalar::Zero; self.cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref.get(r, f);
            }
            basis.push(v);
        }
        // Canonical form: row-reduce the basis itself.
        let b = ExactMatrix::from_rows(basis).expect("rows have equal length");
        let (reduced, _) = b.rref();
        reduced.row_vectors()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(ExactMatrix::identity(2).rank(), 2);
        assert_eq!(ExactMatrix::zero(3, 5).rank(), 0);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(ExactMatrix::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_zero_matrix_is_standard_basis() {
        let ns = ExactMatrix::zero(2, 3).nullspace();
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let expected = if i == j { Scalar::one() } else { Scalar::Zero };
                assert_eq!(*x, expected);
            }
        }
    }

    #[test]
    fn rank_and_nullspace_consistency() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.apply(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn nullspace_basis_is_canonical() {
        // leading entry of each basis vector is 1 and pivots ascend
        let a = m(&[&[1, 1, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 3);
        let mut last_pivot = None;
        for v in &ns {
            let pivot = v.iter().position(|x| !x.is_zero()).unwrap();
            assert!(v[pivot].is_one());
            if let Some(prev) = last_pivot {
                assert!(pivot > prev);
            }
            last_pivot = Some(pivot);
        }
    }

    #[test]
    fn product_and_apply_agree() {
        let a = m(&[&[1, 2], &[3, 4], &[5, 6]]);
        let b = m(&[&[7, 8, 9], &[10, 11, 12]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.rows(), 3);
        assert_eq!(ab.cols(), 3);
        assert_eq!(*ab.get(0, 0), Scalar::from_int(27));
        assert_eq!(*ab.get(2, 2), Scalar::from_int(117));
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn bareiss_handles_rational_entries() {
        let a = ExactMatrix::from_rows(vec![
            vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3)],
            vec![Scalar::ratio(1, 4), Scalar::ratio(1, 6)],
        ])
        .unwrap();
        assert_eq!(a.rank(), 1);
    }
}
