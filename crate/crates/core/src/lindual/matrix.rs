use crate::polycore::{Field, Scalar};

use super::LinError;

/// Dense matrix over a single field, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        Matrix { field, ncols, rows: vec![vec![field.zero(); ncols]; nrows] }
    }

    pub fn from_rows(field: Field, ncols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinError> {
        for r in &rows {
            if r.len() != ncols {
                return Err(LinError::Shape { expected: ncols, got: r.len() });
            }
            if let Some(bad) = r.iter().find(|s| s.field() != field) {
                return Err(LinError::Field(field, bad.field()));
            }
        }
        Ok(Matrix { field, ncols, rows })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix { field, ncols, rows }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        Matrix { field: self.field, ncols: self.rows.len(), rows }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols);
        self.rows.iter().map(|r| dot(self.field, r, v)).collect()
    }

    /// Reduced row echelon form in place; returns pivot columns. Zero rows
    /// are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let Some(k) = (r..self.rows.len()).find(|&k| !self.rows[k][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, k);
            let inv = self.rows[r][c].inv().expect("nonzero pivot");
            for x in self.rows[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..self.ncols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&f * &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, in RREF-derived
    /// canonical form (free coordinate 1, other free coordinates 0).
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.ncols];
                v[free] = self.field.one();
                for (row, &p) in m.rows.iter().zip(&pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }
}

pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { &acc + &(x * y) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rref_is_canonical_over_fp() {
        let f = Field::Prime(7);
        let mut a = Matrix::from_i64(f, &[&[2, 4, 1], &[1, 2, 3]]);
        let mut b = Matrix::from_i64(f, &[&[3, 6, 4], &[0, 0, 5]]);
        assert_eq!(a.rref(), vec![0, 2]);
        b.rref();
        assert_eq!(a, b);
    }
}
