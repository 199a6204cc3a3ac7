use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

/// Sparse vector over a finite basis, zero-pruned and key-sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    terms: BTreeMap<u32, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(i: u32, field: Field) -> Self {
        let mut v = Vector::zero();
        v.add_term(i, &field.one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Scalar)>>(terms: I) -> Self {
        let mut v = Vector::zero();
        for (i, s) in terms {
            v.add_term(i, &s);
        }
        v
    }

    pub fn from_dense(coords: &[Scalar]) -> Self {
        Vector::from_terms(coords.iter().enumerate().map(|(i, s)| (i as u32, s.clone())))
    }

    pub fn to_dense(&self, dim: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (i, s) in &self.terms {
            out[*i as usize] = s.clone();
        }
        out
    }

    pub fn add_term(&mut self, i: u32, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(e) => {
                *e += s;
                if e.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, s.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (i, t) in &other.terms {
            self.add_term(*i, &(t * s));
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        for (i, t) in &other.terms {
            out.add_term(*i, t);
        }
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        for (i, t) in &other.terms {
            out.add_term(*i, &(-t));
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        if s.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(i, t)| (*i, t * s)).collect() }
    }

    pub fn get(&self, i: u32) -> Option<&Scalar> {
        self.terms.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Scalar)> + '_ {
        self.terms.iter().map(|(i, s)| (*i, s))
    }

    pub fn leading(&self) -> Option<(u32, &Scalar)> {
        self.terms.iter().next().map(|(i, s)| (*i, s))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Applies a linear map given on basis vectors.
    pub fn map<F: FnMut(u32) -> Vector>(&self, mut f: F) -> Vector {
        let mut out = Vector::zero();
        for (i, s) in &self.terms {
            out.add_scaled(&f(*i), s);
        }
        out
    }

    pub fn dot(&self, other: &Vector, field: Field) -> Scalar {
        let mut acc = field.zero();
        for (i, s) in &self.terms {
            if let Some(t) = other.terms.get(i) {
                acc += &(s * t);
            }
        }
        acc
    }
}
