use thiserror::Error;

use super::scalar::{Field, Scalar};
use super::vector::Vector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinearError {
    #[error("the system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Outcome of a consistent linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Scalar>),
    /// A particular solution plus the dimension of the solution space.
    Underdetermined {
        particular: Vec<Scalar>,
        nullity: usize,
    },
}

impl Solution {
    pub fn particular(&self) -> &[Scalar] {
        match self {
            Solution::Unique(v) => v,
            Solution::Underdetermined { particular, .. } => particular,
        }
    }
}

/// Dense matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, s) in row.into_iter().enumerate() {
                m.set(i, j, field.convert(&s).expect("scalar outside field"));
            }
        }
        m
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, s) in c.iter() {
                m.set(i as usize, j, field.convert(s).expect("scalar outside field"));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_terms((0..self.rows).map(|i| (i as u32, self.get(i, j).clone())))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form of `[self | extra]`, returning pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().unwrap();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let b = self.get(r, j);
                    if !b.is_zero() {
                        let v = self.get(i, j) - &(&f * b);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves `self · x = rhs` exactly.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Solution, LinearError> {
        if rhs.len() != self.rows {
            return Err(LinearError::Shape(format!("rhs has length {}, matrix has {} rows", rhs.len(), self.rows)));
        }
        let n = self.cols;
        let mut aug = Matrix::zeros(self.field, self.rows, n + 1);
        for (i, r) in rhs.iter().enumerate() {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, self.field.convert(r).ok_or_else(|| LinearError::Shape("rhs scalar outside the field".into()))?);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&n) {
            return Err(LinearError::NoSolution);
        }
        let mut x = vec![self.field.zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, n).clone();
        }
        if pivots.len() == n {
            Ok(Solution::Unique(x))
        } else {
            Ok(Solution::Underdetermined { particular: x, nullity: n - pivots.len() })
        }
    }

    pub fn inverse(&self) -> Result<Matrix, LinearError> {
        if self.rows != self.cols {
            return Err(LinearError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinearError::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

/// A subspace kept as rows in reduced echelon form, for canonical
/// representatives modulo the subspace.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    rows: Vec<Vector>,
}

impl Subspace {
    pub fn new() -> Self {
        Subspace::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The echelon basis.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.leading().unwrap().0).collect()
    }

    /// Canonical representative of `v` modulo the subspace: the unique
    /// element of `v + U` with zero coordinates at every pivot.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        for r in &self.rows {
            let (p, _) = r.leading().unwrap();
            if let Some(c) = out.get(p).cloned() {
                out.add_scaled(r, &(-&c));
            }
        }
        out
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let w = self.reduce(v);
        let Some((p, lead)) = w.leading() else {
            return false;
        };
        let w = w.scale(&lead.inv().unwrap());
        for r in &mut self.rows {
            if let Some(c) = r.get(p).cloned() {
                r.add_scaled(&w, &(-&c));
            }
        }
        let pos = self.rows.partition_point(|r| r.leading().unwrap().0 < p);
        self.rows.insert(pos, w);
        true
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }
}
