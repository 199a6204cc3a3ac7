//! Finite-dimensional associative algebras given by a multiplication table,
//! tensor products of them, and formal θ-extensions.

use std::sync::Arc;

use crate::exact::{Field, Matrix, Scalar, Solution, SparseTensor, Subspace, Vector};

/// Associative unital algebra on basis `0..dim`, with every basis product stored.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub name: String,
    pub field: Field,
    dim: usize,
    table: Vec<Vector>,
    unit: Vector,
}

impl Algebra {
    pub fn from_fn<F: FnMut(u32, u32) -> Vector>(name: impl Into<String>, field: Field, dim: usize, unit: Vector, mut f: F) -> Self {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim as u32 {
            for j in 0..dim as u32 {
                table.push(f(i, j));
            }
        }
        Algebra { name: name.into(), field, dim, table, unit }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis(&self, i: u32) -> Vector {
        Vector::basis(i, self.field)
    }

    pub fn mul_basis(&self, i: u32, j: u32) -> &Vector {
        &self.table[i as usize * self.dim + j as usize]
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, s) in a.iter() {
            for (j, t) in b.iter() {
                out.add_scaled(self.mul_basis(i, j), &(s * t));
            }
        }
        out
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Vector>>(&self, xs: I) -> Vector {
        xs.into_iter().fold(self.unit.clone(), |acc, x| self.mul(&acc, x))
    }

    pub fn commutator(&self, a: &Vector, b: &Vector) -> Vector {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// The algebra with reversed multiplication.
    pub fn opposite(&self) -> Algebra {
        Algebra::from_fn(format!("{}^op", self.name), self.field, self.dim, self.unit.clone(), |i, j| self.mul_basis(j, i).clone())
    }

    /// First basis triple violating associativity.
    pub fn check_associative(&self) -> Result<(), [u32; 3]> {
        let n = self.dim as u32;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    let left = self.mul(ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), self.mul_basis(j, k));
                    if left != right {
                        return Err([i, j, k]);
                    }
                }
            }
        }
        Ok(())
    }

    /// First basis element on which the unit fails.
    pub fn check_unit(&self) -> Result<(), u32> {
        for i in 0..self.dim as u32 {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(i);
            }
        }
        Ok(())
    }

    pub fn is_central(&self, x: &Vector) -> bool {
        (0..self.dim as u32).all(|i| self.commutator(x, &self.basis(i)).is_zero())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim as u32).all(|i| (0..i).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult_matrix(&self, x: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim as u32).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Two-sided inverse, if it exists.
    pub fn inverse(&self, x: &Vector) -> Option<Vector> {
        let m = self.left_mult_matrix(x);
        let rhs = self.unit.to_dense(self.dim, self.field);
        let y = match m.solve(&rhs).ok()? {
            Solution::Unique(y) => Vector::from_dense(&y),
            Solution::Underdetermined { .. } => return None,
        };
        (self.mul(&y, x) == self.unit).then_some(y)
    }

    pub fn pow(&self, x: &Vector, k: u32) -> Vector {
        (0..k).fold(self.unit.clone(), |acc, _| self.mul(&acc, x))
    }

    /// Span of all basis commutators `e_i e_j - e_j e_i`.
    pub fn commutator_span(&self) -> Subspace {
        let mut s = Subspace::new();
        for i in 0..self.dim as u32 {
            for j in i + 1..self.dim as u32 {
                let c = self.mul_basis(i, j).sub(self.mul_basis(j, i));
                s.insert(&c);
            }
        }
        s
    }

    /// `A[θ]/(θ² - c)` with θ central and θ² reduced to left multiplication by `c`.
    /// Basis index `deg * dim + i` stands for `e_i θ^deg`.
    pub fn theta_extension(&self, c: &Vector) -> Algebra {
        let n = self.dim as u32;
        let mut unit = Vector::zero();
        for (i, s) in self.unit.iter() {
            unit.add_term(i, s);
        }
        Algebra::from_fn(format!("{}^θ", self.name), self.field, 2 * self.dim, unit, |a, b| {
            let (da, ia) = (a / n, a % n);
            let (db, ib) = (b / n, b % n);
            let p = self.mul_basis(ia, ib);
            if da + db == 2 {
                self.mul(c, p)
            } else {
                let shift = (da + db) * n;
                Vector::from_terms(p.iter().map(|(k, s)| (k + shift, s.clone())))
            }
        })
    }
}

/// Tensor product of algebras multiplying slot by slot.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub factors: Vec<Arc<Algebra>>,
}

impl TensorAlgebra {
    pub fn new(factors: Vec<Arc<Algebra>>) -> Self {
        TensorAlgebra { factors }
    }

    pub fn field(&self) -> Field {
        self.factors.first().map_or(Field::Rational, |a| a.field)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|a| a.dim()).collect()
    }

    pub fn unit(&self) -> SparseTensor {
        let units: Vec<&Vector> = self.factors.iter().map(|a| a.unit()).collect();
        SparseTensor::pure(self.dims(), &units)
    }

    pub fn units(&self) -> Vec<Option<Vector>> {
        self.factors.iter().map(|a| Some(a.unit().clone())).collect()
    }

    /// Places `x` on the given 0-based slots with units elsewhere.
    pub fn place(&self, x: &SparseTensor, slots: &[usize]) -> SparseTensor {
        x.place(slots, &self.dims(), &self.units()).expect("placement into tensor algebra")
    }

    pub fn mul(&self, x: &SparseTensor, y: &SparseTensor) -> SparseTensor {
        let dims = self.dims();
        let mut out = SparseTensor::zero(dims.clone());
        for (a, s) in x.iter() {
            for (b, t) in y.iter() {
                let coeff = s * t;
                let mut partial: Vec<(Vec<u32>, Scalar)> = vec![(Vec::with_capacity(dims.len()), coeff)];
                for (k, alg) in self.factors.iter().enumerate() {
                    let p = alg.mul_basis(a[k], b[k]);
                    let mut next = Vec::with_capacity(partial.len() * p.len());
                    for (idx, c) in &partial {
                        for (m, w) in p.iter() {
                            let mut i2 = idx.clone();
                            i2.push(m);
                            next.push((i2, c * w));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (idx, c) in partial {
                    out.add_term(idx, &c);
                }
            }
        }
        out
    }

    pub fn product<'a, I: IntoIterator<Item = &'a SparseTensor>>(&self, xs: I) -> SparseTensor {
        xs.into_iter().fold(self.unit(), |acc, x| self.mul(&acc, x))
    }

    /// Inverse by solving `x·y = 1` over the full tensor basis. Only for small totals.
    pub fn inverse(&self, x: &SparseTensor) -> Option<SparseTensor> {
        let dims = self.dims();
        let total: usize = dims.iter().product();
        let flat = |idx: &[u32]| idx.iter().zip(&dims).fold(0usize, |acc, (i, d)| acc * d + *i as usize);
        let unflat = |mut k: usize| {
            let mut idx = vec![0u32; dims.len()];
            for s in (0..dims.len()).rev() {
                idx[s] = (k % dims[s]) as u32;
                k /= dims[s];
            }
            idx
        };
        let mut cols = Vec::with_capacity(total);
        for j in 0..total {
            let e = SparseTensor::basis(dims.clone(), unflat(j), self.field());
            let p = self.mul(x, &e);
            cols.push(Vector::from_terms(p.iter().map(|(k, s)| (flat(k) as u32, s.clone()))));
        }
        let m = Matrix::from_columns(self.field(), total, &cols);
        let unit = self.unit();
        let rhs = Vector::from_terms(unit.iter().map(|(k, s)| (flat(k) as u32, s.clone())));
        let sol = match m.solve(&rhs.to_dense(total, self.field())).ok()? {
            Solution::Unique(y) => y,
            Solution::Underdetermined { .. } => return None,
        };
        let mut y = SparseTensor::zero(dims.clone());
        for (k, s) in sol.iter().enumerate() {
            y.add_term(unflat(k), s);
        }
        (self.mul(&y, x) == unit).then_some(y)
    }
}

/// Element `deg0 + deg1·θ` of a θ-extended tensor algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaElement {
    pub deg0: SparseTensor,
    pub deg1: SparseTensor,
}

/// A tensor algebra with a formal central θ, θ² = c.
#[derive(Clone, Debug)]
pub struct ThetaAlgebra {
    pub base: TensorAlgebra,
    pub c: SparseTensor,
    pub c_inv: SparseTensor,
}

impl ThetaAlgebra {
    pub fn new(base: TensorAlgebra, c: SparseTensor, c_inv: SparseTensor) -> Self {
        ThetaAlgebra { base, c, c_inv }
    }

    pub fn embed(&self, x: SparseTensor) -> ThetaElement {
        ThetaElement { deg1: SparseTensor::zero(x.dims().to_vec()), deg0: x }
    }

    pub fn mul(&self, x: &ThetaElement, y: &ThetaElement) -> ThetaElement {
        let b = &self.base;
        let d0 = b.mul(&x.deg0, &y.deg0);
        let d2 = b.mul(&x.deg1, &y.deg1);
        let deg0 = d0.add(&b.mul(&self.c, &d2));
        let deg1 = b.mul(&x.deg0, &y.deg1).add(&b.mul(&x.deg1, &y.deg0));
        ThetaElement { deg0, deg1 }
    }

    /// θ^k for any integer k, using θ⁻¹ = c⁻¹θ.
    pub fn theta_pow(&self, k: i64) -> ThetaElement {
        let half = k.div_euclid(2);
        let base = if half >= 0 { &self.c } else { &self.c_inv };
        let mut p = self.base.unit();
        for _ in 0..half.unsigned_abs() {
            p = self.base.mul(&p, base);
        }
        let zero = SparseTensor::zero(self.base.dims());
        if k.rem_euclid(2) == 0 {
            ThetaElement { deg0: p, deg1: zero }
        } else {
            ThetaElement { deg0: zero, deg1: p }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rational.int(n)
    }

    /// 2×2 matrices with basis E11, E12, E21, E22.
    pub(crate) fn matrix_algebra() -> Algebra {
        let f = Field::Rational;
        Algebra::from_fn("M2", f, 4, Vector::from_terms([(0, q(1)), (3, q(1))]), |a, b| {
            let (i, j) = (a / 2, a % 2);
            let (k, l) = (b / 2, b % 2);
            if j == k {
                Vector::basis(i * 2 + l, f)
            } else {
                Vector::zero()
            }
        })
    }

    #[test]
    fn matrix_algebra_is_associative_with_trace_quotient() {
        let m = matrix_algebra();
        assert_eq!(m.check_associative(), Ok(()));
        assert_eq!(m.check_unit(), Ok(()));
        assert_eq!(m.commutator_span().dim(), 3);
        assert!(!m.is_commutative());
    }

    #[test]
    fn inverse_of_invertible_matrix() {
        let m = matrix_algebra();
        let x = Vector::from_terms([(0, q(2)), (1, q(1)), (3, q(1))]);
        let y = m.inverse(&x).unwrap();
        assert_eq!(m.mul(&x, &y), *m.unit());
        assert!(m.inverse(&Vector::basis(1, Field::Rational)).is_none());
    }

    #[test]
    fn theta_extension_squares_to_c() {
        let m = matrix_algebra();
        let c = Vector::from_terms([(0, q(2)), (3, q(2))]);
        let t = m.theta_extension(&c);
        assert_eq!(t.check_associative(), Ok(()));
        let theta = Vector::from_terms([(4, q(1)), (7, q(1))]);
        assert_eq!(t.mul(&theta, &theta), c);
    }

    #[test]
    fn tensor_inverse_and_theta_powers() {
        let m = Arc::new(matrix_algebra());
        let t = TensorAlgebra::new(vec![m.clone(), m.clone()]);
        let f = Field::Rational;
        let x = t.place(&SparseTensor::from_vector(4, &Vector::from_terms([(0, q(1)), (1, q(1)), (3, q(1))])), &[1]);
        let y = t.inverse(&x).unwrap();
        assert_eq!(t.mul(&x, &y), t.unit());
        let c = t.unit().scale(&q(4));
        let ta = ThetaAlgebra::new(t.clone(), c.clone(), t.unit().scale(&f.ratio(1, 4).unwrap()));
        let th = ta.theta_pow(1);
        let thi = ta.theta_pow(-1);
        assert_eq!(ta.mul(&th, &thi), ta.embed(t.unit()));
        assert_eq!(ta.mul(&th, &th), ta.embed(c));
        assert_eq!(ta.theta_pow(-2), ta.mul(&thi, &thi));
    }
}
