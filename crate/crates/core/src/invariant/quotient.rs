use std::sync::Arc;

use crate::algebra::{Algebra, TensorAlgebra};
use crate::exact::{Field, SparseTensor, Subspace, Vector};

/// Projection `V → V/N` onto the coordinates that are not pivots of `N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    field: Field,
    dim: usize,
    span: Subspace,
    /// Quotient coordinate of each non-pivot index; `None` at pivots.
    coord: Vec<Option<u32>>,
}

impl QuotientMap {
    pub fn new(field: Field, dim: usize, span: Subspace) -> QuotientMap {
        let pivots = span.pivots();
        let mut coord = vec![None; dim];
        let mut next = 0;
        for (i, c) in coord.iter_mut().enumerate() {
            if !pivots.contains(&(i as u32)) {
                *c = Some(next);
                next += 1;
            }
        }
        QuotientMap { field, dim, span, coord }
    }

    /// `A/[A,A]`.
    pub fn of_algebra(alg: &Algebra) -> QuotientMap {
        QuotientMap::new(alg.field, alg.dim(), alg.commutator_span())
    }

    pub fn source_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim - self.span.dim()
    }

    pub fn kernel(&self) -> &Subspace {
        &self.span
    }

    pub fn project(&self, v: &Vector) -> Vector {
        let r = self.span.reduce(v);
        Vector::from_terms(r.iter().map(|(i, s)| (self.coord[i as usize].expect("reduced away from pivots"), s.clone())))
    }

    pub fn project_slot(&self, t: &SparseTensor, slot: usize) -> SparseTensor {
        t.map_vector_slot(slot, self.dim(), |i| self.project(&Vector::basis(i, self.field)))
    }
}

/// Flat index `deg·(n₁n₂) + i·n₂ + j` of `(e_i⊗e_j)θ̄^deg`.
pub fn flatten_pair(t: &SparseTensor, deg: usize) -> Vector {
    let (n1, n2) = (t.dims()[0], t.dims()[1]);
    let shift = deg * n1 * n2;
    Vector::from_terms(t.iter().map(|(k, s)| ((shift + k[0] as usize * n2 + k[1] as usize) as u32, s.clone())))
}

/// Commutator quotient of `(H₁⊗H₂)^θ̄` on the flat basis of [`flatten_pair`],
/// with θ̄² acting as left multiplication by `c`. Degree 0 is reduced
/// modulo `[B,B] + c[B,B]` and degree 1 modulo `[B,B]`.
pub fn theta_pair_quotient(h1: &Arc<Algebra>, h2: &Arc<Algebra>, c: &SparseTensor) -> QuotientMap {
    let (n1, n2) = (h1.dim(), h2.dim());
    let pair = TensorAlgebra::new(vec![h1.clone(), h2.clone()]);
    let basis = |alg: &Algebra| (0..alg.dim() as u32).map(|i| alg.basis(i)).collect::<Vec<_>>();
    let mut gens = Vec::new();
    for x in h1.commutator_span().basis() {
        for y in basis(h2) {
            gens.push(SparseTensor::pure(vec![n1, n2], &[x, &y]));
        }
    }
    for x in basis(h1) {
        for y in h2.commutator_span().basis() {
            gens.push(SparseTensor::pure(vec![n1, n2], &[&x, y]));
        }
    }
    let mut span = Subspace::new();
    for w in &gens {
        span.insert(&flatten_pair(w, 0));
        span.insert(&flatten_pair(&pair.mul(c, w), 0));
        span.insert(&flatten_pair(w, 1));
    }
    QuotientMap::new(h1.field, 2 * n1 * n2, span)
}
