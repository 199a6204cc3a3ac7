//! Universal invariants: J on tangle diagrams over D(A)^θ, J′ on colored
//! diagrams over H(A) and H(A)^op, and the derived J″ and J⁰.

pub mod engine;
mod quotient;
mod value;

use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::diagram::{left_normalize_traced, zeta, Diagram, Token};
use crate::doubles::{DoubleContext, SVariant, Side};
use crate::exact::{SparseTensor, Vector};

use engine::{state_sum, Item, Word};
pub use quotient::{flatten_pair, theta_pair_quotient, QuotientMap};
pub use value::{InvariantValue, Mode, SlotInfo};

/// A [`DoubleContext`] with the commutator quotients computed on demand.
pub struct Evaluator {
    pub ctx: DoubleContext,
    q_dtheta: OnceLock<QuotientMap>,
    q_h: OnceLock<QuotientMap>,
    q_pair: OnceLock<QuotientMap>,
}

/// Outcome of comparing `φ^{⊗n}∘J` with `J″`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JjReport {
    pub pass: bool,
    pub lhs: InvariantValue,
    pub rhs: InvariantValue,
    /// First multi-index where the two sides differ.
    pub witness: Option<Vec<u32>>,
}

impl Evaluator {
    pub fn new(ctx: DoubleContext) -> Evaluator {
        Evaluator { ctx, q_dtheta: OnceLock::new(), q_h: OnceLock::new(), q_pair: OnceLock::new() }
    }

    fn n2(&self) -> usize {
        self.ctx.n() * self.ctx.n()
    }

    pub fn dtheta_quotient(&self) -> &QuotientMap {
        self.q_dtheta.get_or_init(|| QuotientMap::of_algebra(&self.ctx.d_theta))
    }

    /// `H/[H,H]`, which is also `H^op/[H^op,H^op]`.
    pub fn h_quotient(&self) -> &QuotientMap {
        self.q_h.get_or_init(|| QuotientMap::of_algebra(&self.ctx.h.alg))
    }

    pub fn pair_quotient(&self) -> &QuotientMap {
        self.q_pair.get_or_init(|| theta_pair_quotient(&self.ctx.h.alg, &self.ctx.hop.alg, self.ctx.c_bar()))
    }

    /// Words of J: crossings labelled by `R^{±1}` (first leg on the under
    /// strand), `γ` on legs of upward strands, `u⁻¹θ` on left-to-right caps
    /// and `uθ⁻¹` on left-to-right cups, read against the orientation.
    fn j_words(&self, d: &Diagram) -> Vec<Word> {
        let ctx = &self.ctx;
        let n = self.n2();
        let alg = &ctx.d_theta;
        let shift = |v: &Vector| Vector::from_terms(v.iter().map(|(i, s)| (i + n as u32, s.clone())));
        let cap = shift(&ctx.ribbon.u_inv);
        let cup = shift(&ctx.d.mul(&ctx.ribbon.u, &ctx.ribbon.c_inv));
        let crossings = d.crossings();
        let id = |r, t| crossings.iter().position(|&x| x == (r, t)).unwrap();
        d.components()
            .iter()
            .map(|comp| {
                let mut items = Vec::new();
                for v in comp.visits.iter().rev() {
                    match d.rows()[v.row][v.token] {
                        Token::Cross { positive, legs } => {
                            let pair = if positive { &ctx.r.legs } else { &ctx.r.inv_legs };
                            let over = v.piece == if positive { 0 } else { 1 };
                            let up = legs[v.piece].up;
                            let values = pair
                                .iter()
                                .map(|(x, y)| {
                                    let e = if over { y } else { x };
                                    if up {
                                        crate::doubles::drinfeld_antipode(&ctx.d, e)
                                    } else {
                                        e.clone()
                                    }
                                })
                                .collect();
                            items.push(Item::Leg { crossing: id(v.row, v.token), values });
                        }
                        Token::Cap { lr: true, .. } => items.push(Item::Const(cap.clone())),
                        Token::Cup { lr: true, .. } => items.push(Item::Const(cup.clone())),
                        _ => {}
                    }
                }
                Word { algebra: alg.clone(), items }
            })
            .collect()
    }

    /// Words of J′: a crossing with under strand of side `s₁` and over
    /// strand of side `s₂` is labelled by the S-variant on `(s₁, s₂)`, or its
    /// inverse for `x-`; `γ` on the first leg if the under strand points
    /// up, `γ̄*` on the second leg if the over strand points up.
    fn j_prime_words(&self, z: &Diagram) -> Vec<Word> {
        let ctx = &self.ctx;
        let side = |thick: bool| if thick { Side::Op } else { Side::H };
        let crossings = z.crossings();
        let id = |r, t| crossings.iter().position(|&x| x == (r, t)).unwrap();
        z.components()
            .iter()
            .map(|comp| {
                let mut items = Vec::new();
                for v in comp.visits.iter().rev() {
                    let tok = z.rows()[v.row][v.token];
                    if let Token::Cross { positive, legs } = tok {
                        let over_piece = if positive { 0 } else { 1 };
                        let under_piece = 1 - over_piece;
                        let variant = SVariant::from_sides(side(legs[under_piece].thick), side(legs[over_piece].thick));
                        let cp = ctx.variant(variant);
                        let pair = if positive { &cp.legs } else { &cp.inv_legs };
                        let over = v.piece == over_piece;
                        let up = legs[v.piece].up;
                        let values = pair
                            .iter()
                            .map(|(x, y)| match (over, up) {
                                (false, false) => x.clone(),
                                (false, true) => ctx.gamma_a(x),
                                (true, false) => y.clone(),
                                (true, true) => ctx.gamma_bar_star_dual(y),
                            })
                            .collect();
                        items.push(Item::Leg { crossing: id(v.row, v.token), values });
                    }
                }
                let algebra = if comp.thick { ctx.hop.alg.clone() } else { ctx.h.alg.clone() };
                Word { algebra, items }
            })
            .collect()
    }

    /// J(D) before closed components are projected: one slot of `D(A)^θ`
    /// per component, flat index `deg·dim D + i`.
    pub fn universal_j_raw(&self, d: &Diagram) -> SparseTensor {
        assert!(!d.colored(), "J is defined on uncolored diagrams");
        state_sum(&self.j_words(d), d.crossing_count(), self.ctx.hopf.field)
    }

    /// J′(Z) before projection: one slot of `H(A)` (thin) or `H(A)^op`
    /// (thick) per component.
    pub fn colored_j_raw(&self, z: &Diagram) -> SparseTensor {
        state_sum(&self.j_prime_words(z), z.crossing_count(), self.ctx.hopf.field)
    }

    pub fn universal_j(&self, d: &Diagram) -> InvariantValue {
        let raw = self.universal_j_raw(d);
        let comps = d.components();
        let q = self.dtheta_quotient();
        let slots = comps.iter().map(|c| SlotInfo::new(c.open, "D(A)^θ", 2 * self.n2(), q.dim())).collect();
        self.finish(Mode::J, raw, slots, |_| q)
    }

    pub fn colored_j(&self, z: &Diagram) -> InvariantValue {
        let raw = self.colored_j_raw(z);
        let q = self.h_quotient();
        let slots = z
            .components()
            .iter()
            .map(|c| {
                let target = if c.thick { "H(A)^op" } else { "H(A)" };
                SlotInfo::new(c.open, target, self.n2(), q.dim())
            })
            .collect();
        self.finish(Mode::JPrime, raw, slots, |_| q)
    }

    fn finish<'a>(&'a self, mode: Mode, raw: SparseTensor, slots: Vec<SlotInfo>, q: impl Fn(usize) -> &'a QuotientMap) -> InvariantValue {
        let mut t = raw;
        for (i, s) in slots.iter().enumerate() {
            if !s.open {
                t = q(i).project_slot(&t, i);
            }
        }
        InvariantValue { mode, algebra: self.ctx.hopf.name.clone(), slots, tensor: t }
    }

    /// Joins the thin and thick slots of each pair into one slot of
    /// `(H⊗H^op)^θ̄` and multiplies the i-th by `θ̄^{k_i}`.
    fn pairs_with_theta(&self, raw: &SparseTensor, pairs: &[(usize, usize)], powers: &[i64]) -> SparseTensor {
        let n = self.n2();
        let mut perm = Vec::new();
        for &(thin, thick) in pairs {
            perm.push(thin);
            perm.push(thick);
        }
        let t = raw.permute(&perm);
        let mut joined = SparseTensor::zero(vec![n * n; pairs.len()]);
        for (k, s) in t.iter() {
            let idx: Vec<u32> = k.chunks(2).map(|p| p[0] * n as u32 + p[1]).collect();
            joined.add_term(idx, s);
        }
        let th = &self.ctx.hh_theta;
        let field = self.ctx.hopf.field;
        let basis = |i: u32| Vector::basis(i, field);
        let mut out = joined;
        for (i, &k) in powers.iter().enumerate() {
            let p = th.theta_pow(k);
            let (deg, coeff) = if p.deg1.is_zero() { (0, p.deg0) } else { (1, p.deg1) };
            out = out.map_vector_slot(i, 2 * n * n, |j| {
                let e = SparseTensor::pure(vec![n, n], &[&basis(j / n as u32), &basis(j % n as u32)]);
                flatten_pair(&th.base.mul(&coeff, &e), deg)
            });
        }
        out
    }

    fn pair_slots(&self, d: &Diagram) -> Vec<SlotInfo> {
        let q = self.pair_quotient();
        let n = self.n2();
        d.components().iter().map(|c| SlotInfo::new(c.open, "(H(A)⊗H(A)^op)^θ̄", 2 * n * n, q.dim())).collect()
    }

    /// `J″(D) = ∏ θ̄_i^{d(D_i)} J′(ζ(D_(←)))`.
    pub fn j_double_prime(&self, d: &Diagram) -> InvariantValue {
        let (l, trace) = left_normalize_traced(d);
        let owner_d = d.component_map();
        let lcomps = l.components();
        // component of D for every component of D_(←)
        let l_to_d: Vec<usize> = lcomps
            .iter()
            .map(|c| match c.visits.first() {
                Some(v) => owner_d[&trace[&(v.row, v.token, v.piece)]],
                None => 0,
            })
            .collect();
        let zr = zeta(&l);
        let raw = self.colored_j_raw(&zr.diagram);
        let ncomp = d.components().len();
        let mut pairs = vec![(usize::MAX, usize::MAX); ncomp];
        for (zc, &(lc, thick)) in zr.pair_of.iter().enumerate() {
            let dc = if d.rows().is_empty() { lc } else { l_to_d[lc] };
            if thick {
                pairs[dc].1 = zc;
            } else {
                pairs[dc].0 = zc;
            }
        }
        let powers: Vec<i64> = d.stats().iter().map(|s| s.d).collect();
        let t = self.pairs_with_theta(&raw, &pairs, &powers);
        let q = self.pair_quotient();
        self.finish(Mode::JDoublePrime, t, self.pair_slots(d), |_| q)
    }

    /// `J⁰(D) = ∏ θ̄_i^{f(D_i)} J′(ζ(D))`.
    pub fn j_zero(&self, d: &Diagram) -> InvariantValue {
        let zr = zeta(d);
        let raw = self.colored_j_raw(&zr.diagram);
        let mut pairs = vec![(usize::MAX, usize::MAX); d.components().len()];
        for (zc, &(dc, thick)) in zr.pair_of.iter().enumerate() {
            if thick {
                pairs[dc].1 = zc;
            } else {
                pairs[dc].0 = zc;
            }
        }
        let powers: Vec<i64> = d.stats().iter().map(|s| s.f).collect();
        let t = self.pairs_with_theta(&raw, &pairs, &powers);
        let q = self.pair_quotient();
        self.finish(Mode::JZero, t, self.pair_slots(d), |_| q)
    }

    /// `φ^{⊗n}∘J(D)` with θ ↦ θ̄.
    pub fn phi_j(&self, d: &Diagram) -> InvariantValue {
        let raw = self.universal_j_raw(d);
        let n = self.n2();
        let mut t = raw;
        for slot in 0..t.arity() {
            t = t.map_vector_slot(slot, 2 * n * n, |i| {
                let (deg, j) = (i as usize / n, i % n as u32);
                flatten_pair(self.ctx.phi.basis_image(j), deg)
            });
        }
        let q = self.pair_quotient();
        self.finish(Mode::PhiJ, t, self.pair_slots(d), |_| q)
    }

    /// `φ^{⊗n}∘J(D) = J″(D)`, compared exactly after θ̄-reduction and
    /// projection of closed components.
    pub fn verify_jj(&self, d: &Diagram) -> JjReport {
        let lhs = self.phi_j(d);
        let rhs = self.j_double_prime(d);
        let witness = lhs.tensor.first_difference(&rhs.tensor);
        JjReport { pass: witness.is_none(), lhs, rhs, witness }
    }

    pub fn algebra_of(&self, thick: bool) -> &Arc<Algebra> {
        if thick {
            &self.ctx.hop.alg
        } else {
            &self.ctx.h.alg
        }
    }
}

#[cfg(test)]
mod tests;
