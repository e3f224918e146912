use std::fmt;

use super::{GaloisError, PrimeField};

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
    /// Determinant sign/scale bookkeeping: product of the pivots used, with
    /// one negation per row swap. Meaningful only for square inputs.
    pub det: u64,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from signed integer rows, reducing every entry modulo p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&x| field.from_i64(x)).collect();
        Self {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(field.reduce(f(i, j)));
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        assert_eq!(self.field, other.field, "same field");
        let f = self.field;
        let mut out = FpMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols, "vector length");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Gauss-Jordan elimination. Pivots are taken from the first nonzero
    /// entry of each column, scanning columns left to right and rows top to
    /// bottom, so the pivot set is the lexicographically first one.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut det = 1;
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(sel) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if sel != row {
                for j in 0..m.cols {
                    m.data.swap(sel * m.cols + j, row * m.cols + j);
                }
                det = f.neg(det);
            }
            let pv = m.get(row, col);
            det = f.mul(det, pv);
            let inv = f.inv(pv).expect("pivot is nonzero");
            for j in 0..m.cols {
                let idx = row * m.cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.mul(factor, m.data[row * m.cols + j]);
                    let idx = r * m.cols + j;
                    m.data[idx] = f.sub(m.data[idx], v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon {
            reduced: m,
            pivots,
            det,
        }
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn det(&self) -> Result<u64, GaloisError> {
        if self.rows != self.cols {
            return Err(GaloisError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let e = self.echelon();
        Ok(if e.pivots.len() == self.rows { e.det } else { 0 })
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = FpMatrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else {
                u64::from(j - n == i)
            }
        });
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(e.reduced.select(&rows, &cols))
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact rank over the matrix's prime field.
pub fn fp_rank(m: &FpMatrix) -> usize {
    m.rank()
}

/// Determinant of a square matrix over its prime field.
pub fn fp_det(m: &FpMatrix) -> Result<u64, GaloisError> {
    m.det()
}
