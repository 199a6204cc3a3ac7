use crate::exact::{SparseTensor, Vector};
use crate::hopf::Hopf;

use super::{embed, gamma_bar_star, DoubleAlgebra};

/// The algebra map `φ: D(A) → H(A)⊗H(A)^op`,
/// `φ(f⊗x) = Σ ⟨f′, x‴⟩ f‴⊗x′ ⊗ γ̄*(f″)⊗γ(x″)`, stored on basis elements.
#[derive(Clone, Debug)]
pub struct Phi {
    hdim: usize,
    images: Vec<SparseTensor>,
}

impl Phi {
    pub fn new(d: &DoubleAlgebra) -> Phi {
        let a: &Hopf = &d.base;
        let n = a.dim() as u32;
        let hdim = (n * n) as usize;
        // Δ²(e^i) = Σ e^i(e_p e_q e_s) e^p⊗e^q⊗e^s
        let mut triple = vec![Vec::new(); n as usize];
        for p in 0..n {
            for q in 0..n {
                let pq = a.mul_basis(p, q);
                for s in 0..n {
                    for (i, c) in a.mul(pq, &a.basis(s)).iter() {
                        triple[i as usize].push((p, q, s, c.clone()));
                    }
                }
            }
        }
        let cop2: Vec<SparseTensor> = (0..n).map(|j| a.comul2_basis(j)).collect();
        let images = (0..n * n)
            .map(|idx| {
                let (i, j) = d.split(idx);
                let mut out = SparseTensor::zero(vec![hdim, hdim]);
                for (x, cx) in cop2[j as usize].iter() {
                    for (p, q, s, c) in &triple[i as usize] {
                        if *p != x[2] {
                            continue;
                        }
                        let left = embed(n as usize, &a.basis(*s), &a.basis(x[0]));
                        let right = embed(n as usize, &gamma_bar_star(a, &a.basis(*q)), a.antipode_basis(x[1]));
                        let t = SparseTensor::pure(vec![hdim, hdim], &[&left, &right]);
                        out.add_scaled(&t, &(cx * c));
                    }
                }
                out
            })
            .collect();
        Phi { hdim, images }
    }

    pub fn image_dims(&self) -> [usize; 2] {
        [self.hdim, self.hdim]
    }

    pub fn basis_image(&self, i: u32) -> &SparseTensor {
        &self.images[i as usize]
    }

    pub fn apply(&self, x: &Vector) -> SparseTensor {
        let mut out = SparseTensor::zero(vec![self.hdim, self.hdim]);
        for (i, s) in x.iter() {
            out.add_scaled(&self.images[i as usize], s);
        }
        out
    }

    /// Applies φ to every slot of a tensor over `D(A)`, doubling the arity.
    pub fn apply_all(&self, t: &SparseTensor) -> SparseTensor {
        let mut out = t.clone();
        for slot in (0..t.arity()).rev() {
            out = out.map_slot(slot, &[self.hdim, self.hdim], |i| self.images[i as usize].clone());
        }
        out
    }

    /// Whether distinct basis elements have linearly independent images.
    pub fn is_injective(&self) -> bool {
        let mut span = crate::exact::Subspace::new();
        let flat = |k: &Vec<u32>| k[0] * self.hdim as u32 + k[1];
        self.images.iter().all(|t| span.insert(&Vector::from_terms(t.iter().map(|(k, s)| (flat(k), s.clone())))))
    }
}
