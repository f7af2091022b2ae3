//! Exact dense linear algebra over the active coefficient field.
//!
//! Pivoting is positional (first nonzero entry), never magnitude-based:
//! with exact arithmetic there is no stability concern and positional
//! choices keep every reduction deterministic.

use super::scalar::FieldElement;

/// Dense matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<FieldElement>>,
}

/// Outcome of Gauss–Jordan reduction.
#[derive(Debug, Clone)]
pub struct Rref {
    /// The reduced matrix: pivots are 1, pivot columns are otherwise zero,
    /// pivot columns strictly increase row by row, zero rows trail.
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// Kernel basis vectors; each has entry 1 at the free column it is built
    /// from and 0 at every other free column.
    pub kernel: Vec<Vec<FieldElement>>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged matrix rows");
        }
        ExactMatrix { nrows, ncols, rows }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        ExactMatrix {
            nrows,
            ncols,
            rows: vec![vec![FieldElement::zero(); ncols]; nrows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.rows[i][j] = v;
    }

    /// Gauss–Jordan reduction to reduced row echelon form, with rank,
    /// pivot columns and a kernel basis.
    pub fn rref(&self) -> Rref {
        let mut m = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.ncols {
            if pivot_row >= self.nrows {
                break;
            }
            // First row at or below pivot_row with a nonzero entry here.
            let found = (pivot_row..self.nrows).find(|&r| !m[r][col].is_zero());
            let Some(r) = found else { continue };
            m.swap(pivot_row, r);
            // Normalise the pivot to 1.
            let inv = m[pivot_row][col]
                .inverse()
                .expect("pivot is nonzero by selection");
            for entry in m[pivot_row][col..].iter_mut() {
                *entry = entry.mul(&inv);
            }
            // Eliminate the column everywhere else.
            for r2 in 0..self.nrows {
                if r2 == pivot_row || m[r2][col].is_zero() {
                    continue;
                }
                let factor = m[r2][col].clone();
                let pivot_tail = m[pivot_row][col..].to_vec();
                for (entry, p) in m[r2][col..].iter_mut().zip(&pivot_tail) {
                    *entry = entry.sub(&factor.mul(p));
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_cols.len();

        // Kernel basis from the free columns.
        let free_cols: Vec<usize> =
            (0..self.ncols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut kernel = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut v = vec![FieldElement::zero(); self.ncols];
            v[fc] = FieldElement::one();
            for (prow, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m[prow][fc].neg();
            }
            kernel.push(v);
        }

        Rref {
            matrix: ExactMatrix {
                nrows: self.nrows,
                ncols: self.ncols,
                rows: m,
            },
            rank,
            pivot_cols,
            kernel,
        }
    }
}
