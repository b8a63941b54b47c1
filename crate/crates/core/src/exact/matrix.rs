use std::fmt;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Kernel of a linear map in reduced form.
///
/// Each basis vector has a 1 at its own free coordinate and 0 at every other free coordinate,
/// so the coordinates of a kernel element are read off at `free`.
#[derive(Clone, Debug)]
pub struct Nullspace {
    pub basis: Vec<Vec<Scalar>>,
    pub free: Vec<usize>,
}

/// Result of [`solve_linear`].
#[derive(Clone, Debug)]
pub enum Solution {
    Inconsistent,
    Solved { particular: Matrix, kernel: Vec<Matrix> },
}

impl Solution {
    pub fn particular(&self) -> Option<&Matrix> {
        match self {
            Solution::Solved { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !field.contains(x)) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn diag(field: &Field, entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries, convenient for fixtures.
    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Matrix {
        let data = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, data).expect("well-formed integer matrix")
    }

    pub fn column(field: &Field, entries: Vec<Scalar>) -> Matrix {
        let n = entries.len();
        Matrix::new(field, n, 1, entries).expect("column")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|x| x * c).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(self.field.zero(), |acc, i| &acc + self.get(i, i)))
    }

    /// Kronecker product with lexicographic indexing.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * c + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_rows(&mut rows, self.cols);
        let data = rows.into_iter().flatten().collect();
        (Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel of x ↦ self·x.
    pub fn nullspace(&self) -> Nullspace {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(&self.field, self.rows);
        match solve_linear(self, &id).ok()? {
            Solution::Solved { particular, kernel } if kernel.is_empty() => Some(particular),
            _ => None,
        }
    }

    /// Row-major flattening.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }
}

/// In-place reduced row echelon form over the first `cols` columns.
pub(crate) fn rref_rows(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn nullspace_from_rref(r: &Matrix, pivots: &[usize]) -> Nullspace {
    let field = r.field();
    let n = r.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            v
        })
        .collect();
    Nullspace { basis, free }
}

/// Solve A·X = B: a particular solution plus a basis of {X : A·X = 0}, or inconsistency.
pub fn solve_linear(a: &Matrix, b: &Matrix) -> Result<Solution> {
    a.same_field(b)?;
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows but B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let (n, m) = (a.cols(), b.cols());
    let mut rows: Vec<Vec<Scalar>> =
        (0..a.rows()).map(|i| a.row(i).iter().chain(b.row(i)).cloned().collect()).collect();
    let pivots = rref_rows(&mut rows, n);
    // a nonzero right-hand side below the pivot rows is a contradiction
    if rows[pivots.len()..].iter().any(|row| row[n..].iter().any(|x| !x.is_zero())) {
        return Ok(Solution::Inconsistent);
    }
    let field = a.field();
    let mut particular = Matrix::zeros(field, n, m);
    for (i, &pc) in pivots.iter().enumerate() {
        for j in 0..m {
            particular.set(pc, j, rows[i][n + j].clone());
        }
    }
    let reduced = Matrix {
        field: field.clone(),
        rows: rows.len(),
        cols: n,
        data: rows.iter().flat_map(|r| r[..n].to_vec()).collect(),
    };
    let ns = nullspace_from_rref(&reduced, &pivots);
    let mut kernel = Vec::with_capacity(ns.basis.len() * m);
    for v in &ns.basis {
        for j in 0..m {
            let mut k = Matrix::zeros(field, n, m);
            for (i, x) in v.iter().enumerate() {
                k.set(i, j, x.clone());
            }
            kernel.push(k);
        }
    }
    if cfg!(debug_assertions) {
        assert_eq!(&a.mul(&particular)?, b, "back-substitution failed");
        for k in &kernel {
            assert!(a.mul(k)?.is_zero(), "kernel element not annihilated");
        }
    }
    Ok(Solution::Solved { particular, kernel })
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_signs() {
        let q = Field::Rationals;
        let d = Matrix::from_i64(&q, &[&[1, 0], &[0, -1]]);
        let expect = Matrix::diag(
            &q,
            &[q.from_i64(1), q.from_i64(-1), q.from_i64(-1), q.from_i64(1)],
        );
        assert_eq!(d.kron(&d).unwrap(), expect);
        assert_eq!(
            Matrix::identity(&q, 2).kron(&Matrix::identity(&q, 3)).unwrap(),
            Matrix::identity(&q, 6)
        );
        assert_eq!(d.kron(&Matrix::identity(&q, 1)).unwrap(), d);
    }

    #[test]
    fn solve_identity_and_zero() {
        let q = Field::Rationals;
        let i2 = Matrix::identity(&q, 2);
        match solve_linear(&i2, &i2).unwrap() {
            Solution::Solved { particular, kernel } => {
                assert_eq!(particular, i2);
                assert!(kernel.is_empty());
            }
            _ => panic!(),
        }
        let z = Matrix::zeros(&q, 2, 2);
        match solve_linear(&z, &z).unwrap() {
            Solution::Solved { particular, kernel } => {
                assert!(particular.is_zero());
                assert_eq!(kernel.len(), 4);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn solve_reports_inconsistency_and_mismatch() {
        let q = Field::Rationals;
        let a = Matrix::from_i64(&q, &[&[1, 1], &[1, 1]]);
        let b = Matrix::from_i64(&q, &[&[1], &[2]]);
        assert!(matches!(solve_linear(&a, &b).unwrap(), Solution::Inconsistent));
        let c = Matrix::from_i64(&q, &[&[1]]);
        assert!(matches!(solve_linear(&a, &c), Err(Error::DimensionMismatch(_))));
        let f2 = Matrix::identity(&Field::Prime(2), 2);
        assert!(matches!(solve_linear(&a, &f2), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn rank_examples() {
        let q = Field::Rationals;
        assert_eq!(Matrix::identity(&q, 3).rank(), 3);
        assert_eq!(Matrix::zeros(&q, 2, 2).rank(), 0);
        let m = Matrix::from_i64(&q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let f2 = Field::Prime(2);
        assert_eq!(Matrix::from_i64(&f2, &[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn inverse_and_nullspace_coordinates() {
        let q = Field::Rationals;
        let m = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]).inverse().is_none());
        let a = Matrix::from_i64(&q, &[&[1, 1, 0, 2]]);
        let ns = a.nullspace();
        assert_eq!(ns.free, vec![1, 2, 3]);
        for (k, v) in ns.basis.iter().enumerate() {
            for (j, &f) in ns.free.iter().enumerate() {
                assert_eq!(v[f].is_one(), j == k);
            }
        }
    }
}
