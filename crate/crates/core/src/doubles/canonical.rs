use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, TensorAlgebra};
use crate::exact::{SparseTensor, Vector};

use super::{drinfeld_antipode, gamma_bar_star, DoubleAlgebra, DoubleError};

/// Tensors beyond this total dimension are inverted by formula and checked
/// by multiplication instead of by a dense solve.
const DENSE_INVERSE_LIMIT: usize = 400;

/// Which copy of the Heisenberg double a tensor leg lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `H(A)`, the algebra of thin strands.
    H,
    /// `H(A)^op`, the algebra of thick strands.
    Op,
}

/// The four canonical elements `S, S′, S″, S̃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SVariant {
    S,
    SPrime,
    SDouble,
    STilde,
}

impl SVariant {
    pub const ALL: [SVariant; 4] = [SVariant::S, SVariant::SPrime, SVariant::SDouble, SVariant::STilde];

    /// The variant whose legs live on the given sides.
    pub fn from_sides(first: Side, second: Side) -> SVariant {
        match (first, second) {
            (Side::H, Side::H) => SVariant::S,
            (Side::Op, Side::H) => SVariant::SPrime,
            (Side::H, Side::Op) => SVariant::SDouble,
            (Side::Op, Side::Op) => SVariant::STilde,
        }
    }

    pub fn sides(self) -> (Side, Side) {
        match self {
            SVariant::S => (Side::H, Side::H),
            SVariant::SPrime => (Side::Op, Side::H),
            SVariant::SDouble => (Side::H, Side::Op),
            SVariant::STilde => (Side::Op, Side::Op),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SVariant::S => "S",
            SVariant::SPrime => "S'",
            SVariant::SDouble => "S''",
            SVariant::STilde => "S~",
        })
    }
}

/// A canonical element with its inverse, both as tensors and as explicit
/// sums of pure tensors `Σ_a x_a⊗y_a`.
#[derive(Clone, Debug)]
pub struct CanonicalPair {
    pub elem: SparseTensor,
    pub inv: SparseTensor,
    pub legs: Vec<(Vector, Vector)>,
    pub inv_legs: Vec<(Vector, Vector)>,
}

fn sum_of_legs(dim: usize, legs: &[(Vector, Vector)]) -> SparseTensor {
    let mut out = SparseTensor::zero(vec![dim, dim]);
    for (x, y) in legs {
        out = out.add(&SparseTensor::pure(vec![dim, dim], &[x, y]));
    }
    out
}

/// Checks `x·y = 1 = y·x`; for small ambients also solves for the inverse
/// independently and compares.
fn confirm_inverse(amb: &TensorAlgebra, x: &SparseTensor, y: &SparseTensor, what: &str) -> Result<(), DoubleError> {
    let one = amb.unit();
    if amb.mul(x, y) != one || amb.mul(y, x) != one {
        return Err(DoubleError::NotInvertible(what.to_string()));
    }
    if amb.dims().iter().product::<usize>() <= DENSE_INVERSE_LIMIT {
        let solved = amb.inverse(x).ok_or_else(|| DoubleError::NotInvertible(what.to_string()))?;
        if &solved != y {
            return Err(DoubleError::NotInvertible(format!("{what} (solved inverse disagrees)")));
        }
    }
    Ok(())
}

/// `R = Σ_a (1⊗e_a)⊗(e^a⊗1)` in `D(A)⊗D(A)` with `R⁻¹ = (γ_D⊗1)(R)`.
pub fn canonical_r(d: &DoubleAlgebra) -> Result<CanonicalPair, DoubleError> {
    let a = &d.base;
    let legs: Vec<(Vector, Vector)> = (0..a.dim() as u32).map(|i| (d.from_a(&a.basis(i)), d.from_dual(&a.basis(i)))).collect();
    let inv_legs: Vec<(Vector, Vector)> = legs.iter().map(|(x, y)| (drinfeld_antipode(d, x), y.clone())).collect();
    let elem = sum_of_legs(d.dim(), &legs);
    let inv = sum_of_legs(d.dim(), &inv_legs);
    let amb = TensorAlgebra::new(vec![d.alg.clone(), d.alg.clone()]);
    confirm_inverse(&amb, &elem, &inv, "R")?;
    Ok(CanonicalPair { elem, inv, legs, inv_legs })
}

/// The canonical element of the given variant in its ambient algebra, with
/// `ẽ_a = γ(e_a)` on twisted first legs and `ẽ^a = γ̄*(e^a)` on twisted
/// second legs. The inverse is `(γ⊗1)` of the element.
pub fn canonical_s(h: &DoubleAlgebra, hop: &Arc<Algebra>, variant: SVariant) -> Result<CanonicalPair, DoubleError> {
    let a = &h.base;
    let (s1, s2) = variant.sides();
    let legs: Vec<(Vector, Vector)> = (0..a.dim() as u32)
        .map(|i| {
            let x = match s1 {
                Side::H => a.basis(i),
                Side::Op => a.antipode_basis(i).clone(),
            };
            let f = match s2 {
                Side::H => a.basis(i),
                Side::Op => gamma_bar_star(a, &a.basis(i)),
            };
            (h.from_a(&x), h.from_dual(&f))
        })
        .collect();
    let inv_legs: Vec<(Vector, Vector)> =
        legs.iter().map(|(x, y)| (h.map_parts(x, |f| a.basis(f), |z| a.antipode_basis(z).clone()), y.clone())).collect();
    let elem = sum_of_legs(h.dim(), &legs);
    let inv = sum_of_legs(h.dim(), &inv_legs);
    let side = |s: Side| match s {
        Side::H => h.alg.clone(),
        Side::Op => hop.clone(),
    };
    let amb = TensorAlgebra::new(vec![side(s1), side(s2)]);
    confirm_inverse(&amb, &elem, &inv, &variant.to_string())?;
    Ok(CanonicalPair { elem, inv, legs, inv_legs })
}
