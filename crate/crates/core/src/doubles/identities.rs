use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::TensorAlgebra;
use crate::exact::{Matrix, SparseTensor, Vector};
use crate::hopf::Hopf;

use super::canonical::{SVariant, Side};
use super::context::DoubleContext;
use super::{drinfeld_antipode, drinfeld_comul, drinfeld_counit, gamma_bar_star, heisenberg_double, DoubleError};

pub const IDENTITY_NAMES: &[&str] = &[
    "qybe_R",
    "qybe_Rhat",
    "pentagon",
    "pentagon_variant_1",
    "pentagon_variant_2",
    "pentagon_variant_3",
    "pentagon_variant_4",
    "pentagon_variant_5",
    "pentagon_variant_6",
    "pentagon_variant_7",
    "pentagon_variant_8",
    "r_factorization",
    "phi_homomorphism",
    "comu_iso",
    "gamma_identities",
    "gamma_exceptions",
    "ribbon_axioms",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    QybeR,
    QybeRhat,
    Pentagon,
    PentagonVariant(u8),
    RFactorization,
    PhiHomomorphism,
    ComuIso,
    GammaIdentities,
    /// The eight identities that need γ² = 1.
    GammaExceptions,
    RibbonAxioms,
}

impl Identity {
    pub fn all() -> Vec<Identity> {
        IDENTITY_NAMES.iter().map(|n| Identity::parse(n).unwrap()).collect()
    }

    pub fn parse(name: &str) -> Option<Identity> {
        Some(match name {
            "qybe_R" => Identity::QybeR,
            "qybe_Rhat" => Identity::QybeRhat,
            "pentagon" => Identity::Pentagon,
            "r_factorization" => Identity::RFactorization,
            "phi_homomorphism" => Identity::PhiHomomorphism,
            "comu_iso" => Identity::ComuIso,
            "gamma_identities" => Identity::GammaIdentities,
            "gamma_exceptions" => Identity::GammaExceptions,
            "ribbon_axioms" => Identity::RibbonAxioms,
            _ => {
                let k: u8 = name.strip_prefix("pentagon_variant_")?.parse().ok()?;
                if !(1..=8).contains(&k) {
                    return None;
                }
                Identity::PentagonVariant(k)
            }
        })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::PentagonVariant(k) => write!(f, "pentagon_variant_{k}"),
            other => {
                let i = Identity::all().iter().position(|x| x == other).unwrap();
                f.write_str(IDENTITY_NAMES[i])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub algebra: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl IdentityReport {
    fn new(id: Identity, ctx: &DoubleContext, witness: Option<String>) -> Self {
        IdentityReport { identity: id.to_string(), algebra: ctx.hopf.name.clone(), pass: witness.is_none(), witness }
    }
}

fn compare(lhs: &SparseTensor, rhs: &SparseTensor, label: &str) -> Option<String> {
    lhs.first_difference(rhs).map(|k| format!("{label}: sides differ at multi-index {k:?}"))
}

/// One factor `X_{ij}` of a pentagon-type product.
type Factor = (SVariant, usize, usize);

/// Pentagon variants as `(sides of the three slots, left side, right side)`.
/// Variants 4 and 7 are stated so that every factor lives in the algebras
/// of its slots.
pub fn pentagon_variant(k: u8) -> ([Side; 3], Vec<Factor>, Vec<Factor>) {
    use SVariant::*;
    use Side::{Op as O, H};
    match k {
        1 => ([H, H, H], vec![(S, 1, 2), (S, 0, 1)], vec![(S, 0, 1), (S, 0, 2), (S, 1, 2)]),
        2 => ([O, H, H], vec![(S, 1, 2), (SPrime, 0, 1)], vec![(SPrime, 0, 1), (SPrime, 0, 2), (S, 1, 2)]),
        3 => ([H, H, O], vec![(SDouble, 1, 2), (S, 0, 1)], vec![(S, 0, 1), (SDouble, 0, 2), (SDouble, 1, 2)]),
        4 => ([O, H, O], vec![(SDouble, 1, 2), (SPrime, 0, 1)], vec![(SPrime, 0, 1), (STilde, 0, 2), (SDouble, 1, 2)]),
        5 => ([H, O, H], vec![(SPrime, 1, 2), (S, 0, 2), (SDouble, 0, 1)], vec![(SDouble, 0, 1), (SPrime, 1, 2)]),
        6 => ([O, O, H], vec![(SPrime, 1, 2), (SPrime, 0, 2), (STilde, 0, 1)], vec![(STilde, 0, 1), (SPrime, 1, 2)]),
        7 => ([H, O, O], vec![(STilde, 1, 2), (SDouble, 0, 2), (SDouble, 0, 1)], vec![(SDouble, 0, 1), (STilde, 1, 2)]),
        8 => ([O, O, O], vec![(STilde, 1, 2), (STilde, 0, 2), (STilde, 0, 1)], vec![(STilde, 0, 1), (STilde, 1, 2)]),
        _ => panic!("pentagon variant {k} does not exist"),
    }
}

fn s_product(ctx: &DoubleContext, amb: &TensorAlgebra, sides: &[Side], factors: &[Factor]) -> SparseTensor {
    let mut acc = amb.unit();
    for &(v, i, j) in factors {
        let (a, b) = v.sides();
        assert!(sides[i] == a && sides[j] == b, "{v} placed on slots of the wrong algebras");
        acc = amb.mul(&acc, &amb.place(&ctx.variant(v).elem, &[i, j]));
    }
    acc
}

/// Checks `S₁₂S₁₃S₂₃ = S₂₃S₁₂` for an arbitrary tensor in place of S.
pub fn pentagon_with(ctx: &DoubleContext, s: &SparseTensor) -> Option<String> {
    let amb = ctx.tensor_of_sides(&[Side::H; 3]);
    let p = |i, j| amb.place(s, &[i, j]);
    let lhs = amb.product([&p(0, 1), &p(0, 2), &p(1, 2)]);
    let rhs = amb.product([&p(1, 2), &p(0, 1)]);
    compare(&lhs, &rhs, "pentagon")
}

fn qybe(amb: &TensorAlgebra, x: &SparseTensor, slots: [[usize; 2]; 3]) -> (SparseTensor, SparseTensor) {
    let place = |s: &[usize]| amb.place(x, s);
    let [a, b, c] = slots.map(|s| s.to_vec());
    let (r12, r13, r23) = (place(&a), place(&b), place(&c));
    let _ = c;
    (amb.product([&r12, &r13, &r23]), amb.product([&r23, &r13, &r12]))
}

pub fn check_identity(ctx: &DoubleContext, id: Identity) -> IdentityReport {
    let witness = match id {
        Identity::QybeR => {
            let d = ctx.d.alg.clone();
            let amb = TensorAlgebra::new(vec![d.clone(), d.clone(), d]);
            let (l, r) = qybe(&amb, &ctx.r.elem, [[0, 1], [0, 2], [1, 2]]);
            compare(&l, &r, "R12 R13 R23 vs R23 R13 R12")
        }
        Identity::QybeRhat => {
            let amb = ctx.tensor_of_sides(&[Side::H, Side::Op, Side::H, Side::Op, Side::H, Side::Op]);
            let rhat = ctx.phi.apply_all(&ctx.r.elem);
            let p = |s: &[usize]| amb.place(&rhat, s);
            let (r12, r13, r23) = (p(&[0, 1, 2, 3]), p(&[0, 1, 4, 5]), p(&[2, 3, 4, 5]));
            let l = amb.product([&r12, &r13, &r23]);
            let r = amb.product([&r23, &r13, &r12]);
            compare(&l, &r, "Rhat12 Rhat13 Rhat23 vs Rhat23 Rhat13 Rhat12")
        }
        Identity::Pentagon => pentagon_with(ctx, &ctx.variant(SVariant::S).elem),
        Identity::PentagonVariant(k) => {
            let (sides, l, r) = pentagon_variant(k);
            let amb = ctx.tensor_of_sides(&sides);
            compare(&s_product(ctx, &amb, &sides, &l), &s_product(ctx, &amb, &sides, &r), &format!("variant {k}"))
        }
        Identity::RFactorization => {
            let sides = [Side::H, Side::Op, Side::H, Side::Op];
            let amb = ctx.tensor_of_sides(&sides);
            let rhat = ctx.phi.apply_all(&ctx.r.elem);
            let f = |v: SVariant, s: [usize; 2]| amb.place(&ctx.variant(v).elem, &s);
            let prod =
                amb.product([&f(SVariant::SDouble, [0, 3]), &f(SVariant::S, [0, 2]), &f(SVariant::STilde, [1, 3]), &f(SVariant::SPrime, [1, 2])]);
            compare(&rhat, &prod, "phi(R) vs S''14 S13 S~24 S'23")
        }
        Identity::PhiHomomorphism => phi_hom(ctx),
        Identity::ComuIso => verify_comu_iso(&ctx.hopf).err(),
        Identity::GammaIdentities => gamma_identities(ctx, false),
        Identity::GammaExceptions => gamma_identities(ctx, true),
        Identity::RibbonAxioms => ribbon_axioms(ctx),
    };
    IdentityReport::new(id, ctx, witness)
}

fn phi_hom(ctx: &DoubleContext) -> Option<String> {
    let amb = &ctx.hh_theta.base;
    let d = &ctx.d.alg;
    for i in 0..d.dim() as u32 {
        for j in 0..d.dim() as u32 {
            let lhs = ctx.phi.apply(d.mul_basis(i, j));
            let rhs = amb.mul(ctx.phi.basis_image(i), ctx.phi.basis_image(j));
            if lhs != rhs {
                return Some(format!("phi(x y) != phi(x) phi(y) for basis pair ({i}, {j})"));
            }
        }
    }
    let one = ctx.d.alg.unit();
    if ctx.phi.apply(one) != amb.unit() {
        return Some("phi(1) != 1".into());
    }
    None
}

/// `(γ⊗1)`, `(1⊗γ̄*)` and `(γ⊗γ̄*)` on a two-leg tensor over H.
fn twist(ctx: &DoubleContext, x: &SparseTensor, first: bool, second: bool) -> SparseTensor {
    let dim = ctx.h.dim();
    let mut out = x.clone();
    if first {
        out = out.map_vector_slot(0, dim, |i| ctx.gamma_a(&Vector::basis(i, ctx.hopf.field)));
    }
    if second {
        out = out.map_vector_slot(1, dim, |i| ctx.gamma_bar_star_dual(&Vector::basis(i, ctx.hopf.field)));
    }
    out
}

fn gamma_identities(ctx: &DoubleContext, exceptions: bool) -> Option<String> {
    for v in SVariant::ALL {
        let (a, b) = v.sides();
        let amb = ctx.tensor_of_sides(&[a, b]);
        let x = &ctx.variant(v).elem;
        let one = amb.unit();
        let is_inverse = |y: &SparseTensor| amb.mul(x, y) == one && amb.mul(y, x) == one;
        // The true inverse, independent of the formula used to build it.
        let inv = &ctx.variant(v).inv;
        if !is_inverse(inv) {
            return Some(format!("{v}: stored inverse is not an inverse"));
        }
        let checks: Vec<(&str, bool)> = if exceptions {
            vec![("(1 x gbar*)(X) = X^-1", is_inverse(&twist(ctx, x, false, true))), ("(g x 1)(X^-1) = X", &twist(ctx, inv, true, false) == x)]
        } else {
            vec![
                ("(g x 1)(X) = X^-1", is_inverse(&twist(ctx, x, true, false))),
                ("(1 x gbar*)(X^-1) = X", &twist(ctx, inv, false, true) == x),
                ("(g x gbar*)(X) = X", &twist(ctx, x, true, true) == x),
            ]
        };
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Some(format!("{v}: {name} fails"));
        }
    }
    None
}

fn ribbon_axioms(ctx: &DoubleContext) -> Option<String> {
    let d = &ctx.d;
    let alg = &d.alg;
    let rb = &ctx.ribbon;
    if !rb.c_central {
        return Some("u gamma(u) is not central".into());
    }
    if alg.mul(&rb.u, &rb.u_inv) != *alg.unit() {
        return Some("u u^-1 != 1".into());
    }
    let gu = drinfeld_antipode(d, &rb.u);
    if alg.mul(&rb.u, &gu) != alg.mul(&gu, &rb.u) {
        return Some("u and gamma(u) do not commute".into());
    }
    let counit = drinfeld_counit(d);
    for i in 0..alg.dim() as u32 {
        let e = alg.basis(i);
        let g2 = drinfeld_antipode(d, &drinfeld_antipode(d, &e));
        if g2 != alg.product([&rb.u, &e, &rb.u_inv]) {
            return Some(format!("gamma^2(x) != u x u^-1 at basis {i}"));
        }
        let target = alg.unit().scale(&counit.get(i).cloned().unwrap_or(ctx.hopf.field.zero()));
        let mut l = Vector::zero();
        for (k, s) in drinfeld_comul(d, i).iter() {
            l.add_scaled(&alg.mul(&drinfeld_antipode(d, &alg.basis(k[0])), &alg.basis(k[1])), s);
        }
        if l != target {
            return Some(format!("antipode axiom of D(A) fails at basis {i}"));
        }
    }
    let dd = TensorAlgebra::new(vec![alg.clone(), alg.clone()]);
    for i in 0..alg.dim() as u32 {
        for j in 0..alg.dim() as u32 {
            let mut lhs = SparseTensor::zero(vec![d.dim(), d.dim()]);
            for (k, s) in alg.mul_basis(i, j).iter() {
                lhs.add_scaled(&drinfeld_comul(d, k), s);
            }
            if lhs != dd.mul(&drinfeld_comul(d, i), &drinfeld_comul(d, j)) {
                return Some(format!("comultiplication of D(A) is not multiplicative at ({i}, {j})"));
            }
        }
    }
    let gg = ctx
        .r
        .elem
        .map_vector_slot(0, d.dim(), |i| drinfeld_antipode(d, &alg.basis(i)))
        .map_vector_slot(1, d.dim(), |i| drinfeld_antipode(d, &alg.basis(i)));
    if gg != ctx.r.elem {
        return Some("(gamma x gamma)(R) != R".into());
    }
    None
}

/// Checks that `Γ∘τ: x⊗f ↦ γ̄*(f)⊗γ(x)` is an algebra isomorphism
/// `H(A*) → H(A)^op`.
pub fn verify_comu_iso(a: &Arc<Hopf>) -> Result<(), String> {
    let err = |e: DoubleError| e.to_string();
    let dual = Arc::new(a.dual());
    let hd = heisenberg_double(&dual).map_err(err)?;
    let h = heisenberg_double(a).map_err(err)?;
    let n = a.dim() as u32;
    let image = |i: u32| {
        let (x, f) = (i / n, i % n);
        h.embed(&gamma_bar_star(a, &a.basis(f)), a.antipode_basis(x))
    };
    let images: Vec<Vector> = (0..n * n).map(image).collect();
    for i in 0..n * n {
        for j in 0..n * n {
            let lhs = hd.alg.mul_basis(i, j).map(|k| images[k as usize].clone());
            // product in H(A)^op
            let rhs = h.mul(&images[j as usize], &images[i as usize]);
            if lhs != rhs {
                return Err(format!("Gamma tau is not multiplicative on basis pair ({i}, {j})"));
            }
        }
    }
    if Matrix::from_columns(a.field, (n * n) as usize, &images).rank() != (n * n) as usize {
        return Err("Gamma tau is not bijective".into());
    }
    Ok(())
}
