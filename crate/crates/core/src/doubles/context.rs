use std::sync::Arc;

use crate::algebra::{Algebra, TensorAlgebra, ThetaAlgebra};
use crate::exact::{SparseTensor, Vector};
use crate::hopf::Hopf;

use super::canonical::{canonical_r, canonical_s, CanonicalPair, SVariant, Side};
use super::phi::Phi;
use super::{drinfeld_antipode, drinfeld_double, gamma_bar_star, heisenberg_double, heisenberg_op_of, DoubleAlgebra, DoubleError};

/// `u = Σ γ̄*(e^a)⊗e_a`, `c = uγ(u)` and their inverses in `D(A)`.
#[derive(Clone, Debug)]
pub struct RibbonData {
    pub u: Vector,
    pub u_inv: Vector,
    pub c: Vector,
    pub c_inv: Vector,
    pub c_central: bool,
}

pub fn ribbon_data(d: &DoubleAlgebra) -> Result<RibbonData, DoubleError> {
    let a = &d.base;
    let mut u = Vector::zero();
    for i in 0..a.dim() as u32 {
        u = u.add(&d.embed(&gamma_bar_star(a, &a.basis(i)), &a.basis(i)));
    }
    let u_inv = d.alg.inverse(&u).ok_or_else(|| DoubleError::NotInvertible("u".into()))?;
    let c = d.mul(&u, &drinfeld_antipode(d, &u));
    let c_inv = d.alg.inverse(&c).ok_or_else(|| DoubleError::NotInvertible("uγ(u)".into()))?;
    let c_central = d.alg.is_central(&c);
    Ok(RibbonData { u, u_inv, c, c_inv, c_central })
}

/// Everything derived from one Hopf algebra: the doubles, canonical
/// elements, ribbon data, φ, and the θ-extensions.
#[derive(Clone, Debug)]
pub struct DoubleContext {
    pub hopf: Arc<Hopf>,
    pub d: DoubleAlgebra,
    pub h: DoubleAlgebra,
    pub hop: DoubleAlgebra,
    pub r: CanonicalPair,
    pub s: [CanonicalPair; 4],
    pub ribbon: RibbonData,
    pub phi: Phi,
    /// `D(A)^θ` as an explicit algebra, index `deg·dim + i`.
    pub d_theta: Arc<Algebra>,
    /// `(H(A)⊗H(A)^op)^θ̄` with `θ̄² = φ(c)`.
    pub hh_theta: ThetaAlgebra,
}

impl DoubleContext {
    pub fn new(hopf: Hopf) -> Result<DoubleContext, DoubleError> {
        let hopf = Arc::new(hopf);
        let d = drinfeld_double(&hopf)?;
        let h = heisenberg_double(&hopf)?;
        let hop = heisenberg_op_of(&h);
        let r = canonical_r(&d)?;
        let s = SVariant::ALL.map(|v| canonical_s(&h, &hop.alg, v));
        let s = match s {
            [Ok(a), Ok(b), Ok(c), Ok(e)] => [a, b, c, e],
            [a, b, c, e] => {
                let err = [a, b, c, e].into_iter().find_map(|x| x.err()).unwrap();
                return Err(err);
            }
        };
        let ribbon = ribbon_data(&d)?;
        let phi = Phi::new(&d);
        let d_theta = Arc::new(d.alg.theta_extension(&ribbon.c));
        let hh = TensorAlgebra::new(vec![h.alg.clone(), hop.alg.clone()]);
        let c_bar = phi.apply(&ribbon.c);
        let c_bar_inv = phi.apply(&ribbon.c_inv);
        let hh_theta = ThetaAlgebra::new(hh, c_bar, c_bar_inv);
        Ok(DoubleContext { hopf, d, h, hop, r, s, ribbon, phi, d_theta, hh_theta })
    }

    pub fn n(&self) -> usize {
        self.hopf.dim()
    }

    pub fn variant(&self, v: SVariant) -> &CanonicalPair {
        &self.s[v.index()]
    }

    pub fn side_algebra(&self, s: Side) -> &Arc<Algebra> {
        match s {
            Side::H => &self.h.alg,
            Side::Op => &self.hop.alg,
        }
    }

    pub fn tensor_of_sides(&self, sides: &[Side]) -> TensorAlgebra {
        TensorAlgebra::new(sides.iter().map(|s| self.side_algebra(*s).clone()).collect())
    }

    /// `φ(uγ(u))`, the relation element of `θ̄`.
    pub fn c_bar(&self) -> &SparseTensor {
        &self.hh_theta.c
    }

    /// Whether `φ(c)` commutes with all of `H(A)⊗H(A)^op`.
    pub fn c_bar_central(&self) -> bool {
        let amb = &self.hh_theta.base;
        let dims = amb.dims();
        let f = self.hopf.field;
        (0..dims[0] as u32).all(|i| {
            (0..dims[1] as u32).all(|j| {
                let e = SparseTensor::basis(dims.clone(), vec![i, j], f);
                amb.mul(&self.hh_theta.c, &e) == amb.mul(&e, &self.hh_theta.c)
            })
        })
    }

    /// `γ` on the A-part and `γ̄*` on the A*-part of an element of H.
    pub fn gamma_a(&self, x: &Vector) -> Vector {
        let a = &self.hopf;
        self.h.map_parts(x, |f| a.basis(f), |y| a.antipode_basis(y).clone())
    }

    pub fn gamma_bar_star_dual(&self, x: &Vector) -> Vector {
        let a = &self.hopf;
        self.h.map_parts(x, |f| gamma_bar_star(a, &a.basis(f)), |y| a.basis(y))
    }
}
