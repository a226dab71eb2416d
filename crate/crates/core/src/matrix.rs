//! Dense row-major matrices over GF(q^2) and the elimination routines the
//! dual and MDS checks need.

use serde::{Deserialize, Serialize};

use crate::field::{Elem, FieldTower};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    /// Builds a matrix from rows, which must all have length `cols`.
    ///
    /// # Panics
    ///
    /// Panics on ragged input.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.row_iter().map(<[Elem]>::to_vec).collect()
    }

    /// Entrywise Frobenius image.
    pub fn frobenius(&self, field: &FieldTower) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| field.frobenius(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, field: &FieldTower, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let v = field.sum((0..self.cols).map(|i| field.mul(self.get(r, i), other.get(i, c))));
                out.set(r, c, v);
            }
        }
        out
    }

    /// Columns `cols` of this matrix, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let rows = self
            .row_iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        Matrix::from_rows(cols.len(), rows)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form in place, first-nonzero pivoting. Returns the
    /// pivot columns.
    pub fn rref(&mut self, field: &FieldTower) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(found) = (pr..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, found);
            let inv = field.inv(self.get(pr, c));
            for j in c..self.cols {
                self.set(pr, j, field.mul(self.get(pr, j), inv));
            }
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(r, j), field.mul(factor, self.get(pr, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self, field: &FieldTower) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis (as rows) of the right nullspace {u : self * u^T = 0}.
    pub fn nullspace(&self, field: &FieldTower) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&fc| {
                let mut u = vec![Elem::ZERO; self.cols];
                u[fc] = Elem::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    u[pc] = field.neg(m.get(r, fc));
                }
                u
            })
            .collect();
        Matrix::from_rows(self.cols, rows)
    }

    /// Whether a square matrix is invertible.
    pub fn is_nonsingular(&self, field: &FieldTower) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }
}
