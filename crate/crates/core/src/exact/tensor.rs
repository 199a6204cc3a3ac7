use std::collections::BTreeMap;

use thiserror::Error;

use super::scalar::{Field, Scalar};
use super::vector::Vector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("dimension mismatch at slot {slot}: expected {expected}, got {got}")]
    Dimension { slot: usize, expected: usize, got: usize },
    #[error("slot {0} used twice or out of range")]
    Slot(usize),
    #[error("no unit coordinates supplied for ambient slot {0}")]
    MissingUnit(usize),
}

/// Element of a tensor product of spaces with given dimensions.
/// Entries are keyed by multi-index and never zero, so `==` is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseTensor {
    dims: Vec<usize>,
    entries: BTreeMap<Vec<u32>, Scalar>,
}

impl SparseTensor {
    pub fn zero(dims: Vec<usize>) -> Self {
        SparseTensor { dims, entries: BTreeMap::new() }
    }

    /// The scalar `s` as an arity-0 tensor.
    pub fn scalar(s: Scalar) -> Self {
        let mut t = SparseTensor::zero(vec![]);
        t.add_term(vec![], &s);
        t
    }

    pub fn basis(dims: Vec<usize>, index: Vec<u32>, field: Field) -> Self {
        let mut t = SparseTensor::zero(dims);
        t.add_term(index, &field.one());
        t
    }

    pub fn from_vector(dim: usize, v: &Vector) -> Self {
        let mut t = SparseTensor::zero(vec![dim]);
        for (i, s) in v.iter() {
            t.add_term(vec![i], s);
        }
        t
    }

    /// Tensor product of vectors.
    pub fn pure(dims: Vec<usize>, factors: &[&Vector]) -> Self {
        assert_eq!(dims.len(), factors.len());
        let mut t = SparseTensor::scalar(Field::Rational.one());
        for (d, v) in dims.iter().zip(factors) {
            t = t.tensor(&SparseTensor::from_vector(*d, v));
        }
        t
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> + '_ {
        self.entries.iter()
    }

    pub fn get(&self, index: &[u32]) -> Option<&Scalar> {
        self.entries.get(index)
    }

    pub fn add_term(&mut self, index: Vec<u32>, s: &Scalar) {
        debug_assert_eq!(index.len(), self.dims.len());
        if s.is_zero() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(e) => {
                *e += s;
                if e.is_zero() {
                    self.entries.remove(&index);
                }
            }
            None => {
                self.entries.insert(index, s.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseTensor, s: &Scalar) {
        assert_eq!(self.dims, other.dims, "adding tensors of different shapes");
        for (k, v) in &other.entries {
            self.add_term(k.clone(), &(v * s));
        }
    }

    pub fn add(&self, other: &SparseTensor) -> SparseTensor {
        let mut out = self.clone();
        out.add_scaled(other, &Field::Rational.one());
        out
    }

    pub fn sub(&self, other: &SparseTensor) -> SparseTensor {
        let mut out = self.clone();
        out.add_scaled(other, &Field::Rational.int(-1));
        out
    }

    pub fn scale(&self, s: &Scalar) -> SparseTensor {
        let mut out = SparseTensor::zero(self.dims.clone());
        for (k, v) in &self.entries {
            out.add_term(k.clone(), &(v * s));
        }
        out
    }

    /// Outer product `self ⊗ other`.
    pub fn tensor(&self, other: &SparseTensor) -> SparseTensor {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut out = SparseTensor::zero(dims);
        for (a, s) in &self.entries {
            for (b, t) in &other.entries {
                let mut k = a.clone();
                k.extend_from_slice(b);
                out.add_term(k, &(s * t));
            }
        }
        out
    }

    /// Reorders slots: slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> SparseTensor {
        assert_eq!(perm.len(), self.arity());
        let dims = perm.iter().map(|&p| self.dims[p]).collect();
        let mut out = SparseTensor::zero(dims);
        for (k, v) in &self.entries {
            out.add_term(perm.iter().map(|&p| k[p]).collect(), v);
        }
        out
    }

    /// Places `self` (arity m) on the given 0-based `slots` of an arity-l
    /// tensor, putting `units[j]` on every other slot j. `units[j]` may be
    /// `None` for slots that receive a factor of `self`.
    pub fn place(&self, slots: &[usize], ambient: &[usize], units: &[Option<Vector>]) -> Result<SparseTensor, TensorError> {
        if slots.len() != self.arity() {
            return Err(TensorError::Arity { expected: self.arity(), got: slots.len() });
        }
        let l = ambient.len();
        let mut owner = vec![None; l];
        for (i, &s) in slots.iter().enumerate() {
            if s >= l || owner[s].is_some() {
                return Err(TensorError::Slot(s));
            }
            if ambient[s] != self.dims[i] {
                return Err(TensorError::Dimension { slot: s, expected: ambient[s], got: self.dims[i] });
            }
            owner[s] = Some(i);
        }
        let mut fill = SparseTensor::scalar(Field::Rational.one());
        for j in 0..l {
            if owner[j].is_none() {
                let u = units.get(j).and_then(|u| u.as_ref()).ok_or(TensorError::MissingUnit(j))?;
                fill = fill.tensor(&SparseTensor::from_vector(ambient[j], u));
            }
        }
        let mut out = SparseTensor::zero(ambient.to_vec());
        for (k, v) in &self.entries {
            for (u, w) in &fill.entries {
                let mut idx = vec![0u32; l];
                let mut rest = u.iter();
                for j in 0..l {
                    idx[j] = match owner[j] {
                        Some(i) => k[i],
                        None => *rest.next().unwrap(),
                    };
                }
                out.add_term(idx, &(v * w));
            }
        }
        Ok(out)
    }

    /// Extended pairing of a tensor over dual spaces with a tensor.
    pub fn contract(f: &SparseTensor, x: &SparseTensor, field: Field) -> Result<Scalar, TensorError> {
        if f.arity() != x.arity() {
            return Err(TensorError::Arity { expected: f.arity(), got: x.arity() });
        }
        for (i, (a, b)) in f.dims.iter().zip(&x.dims).enumerate() {
            if a != b {
                return Err(TensorError::Dimension { slot: i, expected: *a, got: *b });
            }
        }
        let (small, large) = if f.len() <= x.len() { (f, x) } else { (x, f) };
        let mut acc = field.zero();
        for (k, v) in &small.entries {
            if let Some(w) = large.entries.get(k) {
                acc += &(v * w);
            }
        }
        Ok(acc)
    }

    /// Replaces slot `slot` by the slots produced by a linear map on basis
    /// vectors. `f(i)` must have dimensions `new_dims`.
    pub fn map_slot<F: FnMut(u32) -> SparseTensor>(&self, slot: usize, new_dims: &[usize], mut f: F) -> SparseTensor {
        let mut dims = self.dims[..slot].to_vec();
        dims.extend_from_slice(new_dims);
        dims.extend_from_slice(&self.dims[slot + 1..]);
        let mut cache: BTreeMap<u32, SparseTensor> = BTreeMap::new();
        let mut out = SparseTensor::zero(dims);
        for (k, v) in &self.entries {
            let img = cache.entry(k[slot]).or_insert_with(|| f(k[slot]));
            for (m, w) in &img.entries {
                let mut idx = k[..slot].to_vec();
                idx.extend_from_slice(m);
                idx.extend_from_slice(&k[slot + 1..]);
                out.add_term(idx, &(v * w));
            }
        }
        out
    }

    /// Applies a linear map to one slot keeping the arity.
    pub fn map_vector_slot<F: FnMut(u32) -> Vector>(&self, slot: usize, dim: usize, mut f: F) -> SparseTensor {
        self.map_slot(slot, &[dim], |i| SparseTensor::from_vector(dim, &f(i)))
    }

    /// First multi-index where the two tensors differ, if any.
    pub fn first_difference(&self, other: &SparseTensor) -> Option<Vec<u32>> {
        let mut keys: Vec<&Vec<u32>> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find(|k| self.entries.get(*k) != other.entries.get(*k)).cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rational.int(n)
    }

    #[test]
    fn place_permutes_factors() {
        // x1⊗x2⊗x3 on slots (3,1,2) gives x2⊗x3⊗x1.
        let mut x = SparseTensor::zero(vec![2, 3, 4]);
        x.add_term(vec![1, 2, 3], &q(5));
        let y = x.place(&[2, 0, 1], &[3, 4, 2], &[None, None, None]).unwrap();
        assert_eq!(y.get(&[2, 3, 1]), Some(&q(5)));
        assert_eq!(y.len(), 1);
    }

    #[test]
    fn place_scalar_gives_units() {
        let one = SparseTensor::scalar(q(1));
        let u = Vector::basis(0, Field::Rational);
        let y = one.place(&[], &[2, 2], &[Some(u.clone()), Some(u)]).unwrap();
        assert_eq!(y, SparseTensor::basis(vec![2, 2], vec![0, 0], Field::Rational));
    }

    #[test]
    fn place_errors() {
        let x = SparseTensor::basis(vec![2], vec![1], Field::Rational);
        assert_eq!(x.place(&[1], &[2, 2], &[None, None]), Err(TensorError::MissingUnit(0)));
        assert_eq!(x.place(&[2], &[2, 2], &[None, None]), Err(TensorError::Slot(2)));
        assert!(matches!(x.place(&[0], &[3], &[None]), Err(TensorError::Dimension { .. })));
    }

    #[test]
    fn contract_pairs_dual_bases() {
        let f = Field::Rational;
        for a in 0..3 {
            for b in 0..3 {
                let x = SparseTensor::basis(vec![3], vec![a], f);
                let y = SparseTensor::basis(vec![3], vec![b], f);
                let c = SparseTensor::contract(&x, &y, f).unwrap();
                assert_eq!(c, f.int((a == b) as i64));
            }
        }
        let x = SparseTensor::basis(vec![2], vec![1], f).scale(&q(2));
        let y = SparseTensor::basis(vec![2], vec![1], f).scale(&q(3));
        assert_eq!(SparseTensor::contract(&x, &y, f).unwrap(), q(6));
        let z = SparseTensor::basis(vec![2, 2], vec![1, 1], f);
        assert!(SparseTensor::contract(&x, &z, f).is_err());
    }

    #[test]
    fn zero_entries_are_pruned() {
        let mut x = SparseTensor::zero(vec![2]);
        x.add_term(vec![1], &q(3));
        x.add_term(vec![1], &q(-3));
        assert!(x.is_zero());
        assert_eq!(x, SparseTensor::zero(vec![2]));
    }
}
