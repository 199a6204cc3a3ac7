//! Drinfeld and Heisenberg doubles of a Hopf algebra, their canonical
//! elements, the embedding φ, ribbon data, and the identity checkers.

mod canonical;
mod context;
mod identities;
mod phi;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::exact::{SparseTensor, Vector};
use crate::hopf::Hopf;

pub use canonical::{canonical_r, canonical_s, CanonicalPair, SVariant, Side};
pub use context::{ribbon_data, DoubleContext, RibbonData};
pub use identities::{check_identity, pentagon_variant, pentagon_with, verify_comu_iso, Identity, IdentityReport, IDENTITY_NAMES};
pub use phi::Phi;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DoubleError {
    #[error("{algebra} is not associative at basis triple {triple:?}")]
    NotAssociative { algebra: String, triple: [u32; 3] },
    #[error("{algebra} unit fails at basis {index}")]
    BadUnit { algebra: String, index: u32 },
    #[error("{0} is not invertible")]
    NotInvertible(String),
}

/// Which double.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DoubleKind {
    Drinfeld,
    Heisenberg,
    HeisenbergOp,
}

/// Associativity is checked on all basis triples up to this dimension.
pub const ASSOCIATIVITY_CHECK_DIM: usize = 40;

/// `D(A)`, `H(A)` or `H(A)^op` on the basis `e^f⊗e_x`, index `f·n + x`.
#[derive(Clone, Debug)]
pub struct DoubleAlgebra {
    pub kind: DoubleKind,
    pub base: Arc<Hopf>,
    pub alg: Arc<Algebra>,
}

impl DoubleAlgebra {
    pub fn n(&self) -> usize {
        self.base.dim()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn index(&self, f: u32, x: u32) -> u32 {
        f * self.n() as u32 + x
    }

    pub fn split(&self, i: u32) -> (u32, u32) {
        let n = self.n() as u32;
        (i / n, i % n)
    }

    /// The element `f⊗x` for `f ∈ A*`, `x ∈ A`.
    pub fn embed(&self, f: &Vector, x: &Vector) -> Vector {
        embed(self.n(), f, x)
    }

    /// `1⊗x`: the copy of A.
    pub fn from_a(&self, x: &Vector) -> Vector {
        self.embed(self.base.counit(), x)
    }

    /// `f⊗1`: the copy of A*.
    pub fn from_dual(&self, f: &Vector) -> Vector {
        self.embed(f, self.base.unit())
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.alg.mul(a, b)
    }

    /// Applies `g` to the A-part and `h` to the A*-part of every basis element.
    pub fn map_parts<G: Fn(u32) -> Vector, H: Fn(u32) -> Vector>(&self, x: &Vector, h: H, g: G) -> Vector {
        x.map(|i| {
            let (f, y) = self.split(i);
            self.embed(&h(f), &g(y))
        })
    }
}

pub(crate) fn embed(n: usize, f: &Vector, x: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (a, s) in f.iter() {
        for (b, t) in x.iter() {
            out.add_term(a * n as u32 + b, &(s * t));
        }
    }
    out
}

/// Product in A* (transpose of Δ).
pub(crate) fn dual_mul(h: &Hopf, f: &Vector, g: &Vector) -> Vector {
    let mut out = Vector::zero();
    for c in 0..h.dim() as u32 {
        let mut acc = h.field.zero();
        for (k, s) in h.comul_basis(c).iter() {
            if let (Some(a), Some(b)) = (f.get(k[0]), g.get(k[1])) {
                acc += &(&(a * b) * s);
            }
        }
        out.add_term(c, &acc);
    }
    out
}

/// `γ̄*(f) = f∘γ̄`.
pub(crate) fn gamma_bar_star(h: &Hopf, f: &Vector) -> Vector {
    let mut out = Vector::zero();
    for b in 0..h.dim() as u32 {
        out.add_term(b, &h.antipode_inv_basis(b).dot(f, h.field));
    }
    out
}

fn check(alg: &Algebra) -> Result<(), DoubleError> {
    if let Err(index) = alg.check_unit() {
        return Err(DoubleError::BadUnit { algebra: alg.name.clone(), index });
    }
    if alg.dim() <= ASSOCIATIVITY_CHECK_DIM {
        if let Err(triple) = alg.check_associative() {
            return Err(DoubleError::NotAssociative { algebra: alg.name.clone(), triple });
        }
    }
    Ok(())
}

/// Functional `y ↦ e^k(p·e_y·q)` on A.
fn sandwich(h: &Hopf, k: u32, p: &Vector, q: &Vector) -> Vector {
    Vector::from_terms((0..h.dim() as u32).filter_map(|y| {
        let v = h.mul(&h.mul(p, &h.basis(y)), q);
        v.get(k).map(|s| (y, s.clone()))
    }))
}

/// The Drinfeld double `D(A) = (A^op)*⊗A` with
/// `(e^i⊗e_j)(e^k⊗e_l) = Σ e^i·e^k(γ̄(a‴)·?·a′) ⊗ a″e_l` over `Δ²(e_j) = a′⊗a″⊗a‴`.
pub fn drinfeld_double(a: &Arc<Hopf>) -> Result<DoubleAlgebra, DoubleError> {
    let n = a.dim();
    let cop2: Vec<SparseTensor> = (0..n as u32).map(|j| a.comul2_basis(j)).collect();
    let unit = embed(n, a.counit(), a.unit());
    let alg = Algebra::from_fn(format!("D({})", a.name), a.field, n * n, unit, |p, q| {
        let (i, j) = (p / n as u32, p % n as u32);
        let (k, l) = (q / n as u32, q % n as u32);
        let mut out = Vector::zero();
        for (t, s) in cop2[j as usize].iter() {
            let left = a.basis(t[0]);
            let right = a.antipode_inv_basis(t[2]);
            let h = sandwich(a, k, right, &left);
            let fh = dual_mul(a, &a.basis(i), &h);
            let xb = a.mul_basis(t[1], l);
            out.add_scaled(&embed(n, &fh, xb), s);
        }
        out
    });
    check(&alg)?;
    Ok(DoubleAlgebra { kind: DoubleKind::Drinfeld, base: a.clone(), alg: Arc::new(alg) })
}

/// The Heisenberg double `H(A) = A*⊗A` with
/// `(e^i⊗e_j)(e^k⊗e_l) = Σ e^i·e^k(?·a′) ⊗ a″e_l` over `Δ(e_j) = a′⊗a″`.
pub fn heisenberg_double(a: &Arc<Hopf>) -> Result<DoubleAlgebra, DoubleError> {
    let n = a.dim();
    let unit = embed(n, a.counit(), a.unit());
    let one = a.unit().clone();
    let alg = Algebra::from_fn(format!("H({})", a.name), a.field, n * n, unit, |p, q| {
        let (i, j) = (p / n as u32, p % n as u32);
        let (k, l) = (q / n as u32, q % n as u32);
        let mut out = Vector::zero();
        for (t, s) in a.comul_basis(j).iter() {
            let h = sandwich(a, k, &one, &a.basis(t[0]));
            let fh = dual_mul(a, &a.basis(i), &h);
            out.add_scaled(&embed(n, &fh, a.mul_basis(t[1], l)), s);
        }
        out
    });
    check(&alg)?;
    Ok(DoubleAlgebra { kind: DoubleKind::Heisenberg, base: a.clone(), alg: Arc::new(alg) })
}

/// `H(A)^op`.
pub fn heisenberg_op(a: &Arc<Hopf>) -> Result<DoubleAlgebra, DoubleError> {
    let h = heisenberg_double(a)?;
    Ok(heisenberg_op_of(&h))
}

pub(crate) fn heisenberg_op_of(h: &DoubleAlgebra) -> DoubleAlgebra {
    DoubleAlgebra { kind: DoubleKind::HeisenbergOp, base: h.base.clone(), alg: Arc::new(h.alg.opposite()) }
}

/// Antipode of `D(A)`: `γ_D(f⊗a) = (1⊗γ(a))·(γ̄*(f)⊗1)`.
pub fn drinfeld_antipode(d: &DoubleAlgebra, x: &Vector) -> Vector {
    let a = &d.base;
    x.map(|i| {
        let (f, y) = d.split(i);
        let left = d.from_a(a.antipode_basis(y));
        let right = d.from_dual(&gamma_bar_star(a, &a.basis(f)));
        d.mul(&left, &right)
    })
}

/// Comultiplication of `D(A)`: `Δ(f⊗a) = Σ f₍₁₎⊗a′ ⊗ f₍₂₎⊗a″` where
/// `f₍₁₎⊗f₍₂₎` is the transpose of the product of `A^op`.
pub fn drinfeld_comul(d: &DoubleAlgebra, i: u32) -> SparseTensor {
    let a = &d.base;
    let n = a.dim();
    let (f, x) = d.split(i);
    let mut out = SparseTensor::zero(vec![n * n, n * n]);
    for p in 0..n as u32 {
        for q in 0..n as u32 {
            let Some(s) = a.mul_basis(q, p).get(f) else { continue };
            for (k, t) in a.comul_basis(x).iter() {
                out.add_term(vec![d.index(p, k[0]), d.index(q, k[1])], &(s * t));
            }
        }
    }
    out
}

/// Counit of `D(A)`: `f(1)ε(a)`.
pub fn drinfeld_counit(d: &DoubleAlgebra) -> Vector {
    let a = &d.base;
    let f1 = a.unit();
    Vector::from_terms((0..d.dim() as u32).filter_map(|i| {
        let (f, x) = d.split(i);
        let s = &f1.get(f)?.clone() * a.counit().get(x)?;
        Some((i, s))
    }))
}

#[cfg(test)]
mod tests;
