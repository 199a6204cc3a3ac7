use super::*;
use crate::diagram::{library, Leg, Shape};
use crate::exact::Field;
use crate::hopf::builtin;

fn eval(name: &str) -> Evaluator {
    Evaluator::new(DoubleContext::new(builtin(name, Field::Rational).unwrap()).unwrap())
}

fn kink(positive: bool, up: bool) -> Diagram {
    Diagram::build(
        false,
        vec![Leg::thin(up)],
        &[vec![Shape::Id, Shape::Cup { lr: !up, thick: false }], vec![Shape::X(positive), Shape::Id], vec![Shape::Id, Shape::Cap]],
    )
    .unwrap()
}

#[test]
fn strand_gives_unit() {
    let e = eval("zmod2");
    let d = Diagram::new(false, vec![Leg::DOWN], vec![vec![Token::Strand(Leg::DOWN)]]).unwrap();
    let j = e.universal_j(&d);
    let unit = SparseTensor::from_vector(8, e.ctx.d_theta.unit());
    assert_eq!(j.tensor, unit);
}

#[test]
fn kinks_give_theta_powers() {
    for name in ["zmod2", "sweedler4"] {
        let e = eval(name);
        let n = e.n2() as u32;
        let theta_inv = Vector::from_terms(e.ctx.ribbon.c_inv.iter().map(|(i, s)| (i + n, s.clone())));
        let theta = Vector::from_terms(e.ctx.d.alg.unit().iter().map(|(i, s)| (i + n, s.clone())));
        for up in [true, false] {
            let pos = kink(true, up);
            assert_eq!(pos.stats()[0].f, 1);
            assert_eq!(e.universal_j(&pos).tensor, SparseTensor::from_vector(2 * n as usize, &theta_inv), "{name} up={up}");
            let neg = kink(false, up);
            assert_eq!(neg.stats()[0].f, -1);
            assert_eq!(e.universal_j(&neg).tensor, SparseTensor::from_vector(2 * n as usize, &theta), "{name} up={up}");
        }
    }
}

#[test]
fn verify_jj_on_crossings_and_kinks() {
    let e = eval("zmod2");
    for positive in [true, false] {
        for a in [true, false] {
            for b in [true, false] {
                let d = Diagram::build(false, vec![Leg::thin(a), Leg::thin(b)], &[vec![Shape::X(positive)]]).unwrap();
                let rep = e.verify_jj(&d);
                assert!(rep.pass, "crossing {positive} {a} {b}: {:?}", rep.witness);
            }
        }
        for up in [true, false] {
            let rep = e.verify_jj(&kink(positive, up));
            assert!(rep.pass, "kink {positive} {up}: {:?}", rep.witness);
        }
    }
}

/// `Σ γ(α)γ(β′) ⊗ α′β` over `R = Σ α⊗β = Σ α′⊗β′`, summed directly.
#[test]
fn tangle_c_matches_display() {
    for name in ["zmod2", "sweedler4"] {
        let e = eval(name);
        let ctx = &e.ctx;
        let g = |x: &Vector| crate::doubles::drinfeld_antipode(&ctx.d, x);
        let n = 2 * e.n2();
        let mut expected = SparseTensor::zero(vec![n, n]);
        for (al, be) in &ctx.r.legs {
            for (al2, be2) in &ctx.r.legs {
                let first = ctx.d.mul(&g(al), &g(be2));
                let second = ctx.d.mul(al2, be);
                expected = expected.add(&SparseTensor::pure(vec![n, n], &[&first, &second]));
            }
        }
        assert_eq!(e.universal_j(&library::tangle_c()).tensor, expected, "{name}");
    }
}

/// The four-fold sums for J′(ζ(c±)) with both strands oriented down; slots
/// are (under thin, under thick, over thin, over thick).
fn expected_cluster(e: &Evaluator, positive: bool) -> SparseTensor {
    let ctx = &e.ctx;
    let (h, hop) = (&ctx.h.alg, &ctx.hop.alg);
    let n = e.n2();
    let pick = |v: SVariant| {
        let cp = ctx.variant(v);
        if positive {
            cp.legs.clone()
        } else {
            cp.inv_legs.clone()
        }
    };
    let (s, sp, sd, st) = (pick(SVariant::S), pick(SVariant::SPrime), pick(SVariant::SDouble), pick(SVariant::STilde));
    // the a and c sums run over S″ and S′ for c₊, swapped for c₋
    let (xa, xc) = if positive { (&sd, &sp) } else { (&sp, &sd) };
    let mut out = SparseTensor::zero(vec![n; 4]);
    for a in xa {
        for b in &s {
            for c in xc {
                for d in &st {
                    let t = if positive {
                        // e_a e_b ⊗ ẽ_d ẽ_c ⊗ e^b e^c ⊗ ẽ^a ẽ^d
                        [h.mul(&a.0, &b.0), hop.mul(&d.0, &c.0), h.mul(&b.1, &c.1), hop.mul(&a.1, &d.1)]
                    } else {
                        // u_b u_c ⊗ ũ_a ũ_d ⊗ u^a u^b ⊗ ũ^d ũ^c
                        [h.mul(&b.0, &c.0), hop.mul(&a.0, &d.0), h.mul(&a.1, &b.1), hop.mul(&d.1, &c.1)]
                    };
                    out = out.add(&SparseTensor::pure(vec![n; 4], &[&t[0], &t[1], &t[2], &t[3]]));
                }
            }
        }
    }
    out
}

#[test]
fn zeta_of_crossing_matches_display() {
    for name in ["zmod2", "sweedler4"] {
        let e = eval(name);
        for positive in [true, false] {
            // both strands down: x+ has writhe +1 and strand A passes over
            let d = library::crossing(positive, false, false);
            let zr = crate::diagram::zeta(&d);
            let raw = e.colored_j_raw(&zr.diagram);
            let (under, over) = if positive { (1, 0) } else { (0, 1) };
            let slot = |c: usize, thick: bool| zr.pair_of.iter().position(|&p| p == (c, thick)).unwrap();
            let perm = [slot(under, false), slot(under, true), slot(over, false), slot(over, true)];
            assert_eq!(raw.permute(&perm), expected_cluster(&e, positive), "{name} positive={positive}");
        }
    }
}

#[test]
fn verify_jj_suite_zmod2() {
    let e = eval("zmod2");
    for (name, d) in library::jj_suite() {
        let rep = e.verify_jj(&d);
        assert!(rep.pass, "{name}: {:?}", rep.witness);
    }
}

/// Kinds of the generated pairs on which J′ differs.
fn colored_failures(name: &str, exceptions: bool) -> (usize, Vec<String>) {
    use crate::diagram::moves::{enumerate_move_pairs, PairConfig};
    let e = eval(name);
    let cfg = PairConfig { depth: 25, seed: 11, exceptions, max_crossings: 10 };
    let pairs = enumerate_move_pairs(&library::colored_seeds(), cfg);
    let bad = pairs
        .iter()
        .filter(|p| e.colored_j(&p.before) != e.colored_j(&p.after))
        .map(|p| format!("{:?} exc={} {:?}", p.mv.kind, p.mv.exception, p.mv.lhs))
        .collect();
    (pairs.len(), bad)
}

#[test]
fn colored_moves_preserve_j_prime() {
    for name in ["zmod2", "sweedler4"] {
        let (n, bad) = colored_failures(name, false);
        assert!(n >= 100);
        assert!(bad.is_empty(), "{name}: {bad:#?}");
    }
}

#[test]
fn exception_moves_need_involutive_antipode() {
    let (_, bad) = colored_failures("zmod2", true);
    assert!(bad.is_empty(), "{bad:#?}");
    let (_, bad) = colored_failures("sweedler4", true);
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|b| b.contains("exc=true")));
}

#[test]
fn generated_pairs_cover_the_move_kinds() {
    use crate::diagram::moves::{enumerate_move_pairs, MoveKind, PairConfig};
    let cfg = PairConfig { depth: 25, seed: 11, exceptions: false, max_crossings: 10 };
    let pairs = enumerate_move_pairs(&library::colored_seeds(), cfg);
    for kind in [MoveKind::ZeroTwo, MoveKind::Pachner, MoveKind::Rotation, MoveKind::Snake, MoveKind::SymmetryPair, MoveKind::Interchange] {
        assert!(pairs.iter().any(|p| p.mv.kind == kind), "{kind:?}");
    }
}

fn reidemeister_pairs(depth: usize, max_crossings: usize) -> Vec<crate::diagram::moves::MovePair> {
    use crate::diagram::moves::{enumerate_move_pairs, PairConfig};
    enumerate_move_pairs(&library::isotopy_seeds(), PairConfig { depth, seed: 5, exceptions: false, max_crossings })
}

#[test]
fn universal_j_under_reidemeister_moves() {
    use crate::diagram::moves::MoveKind;
    let pairs = reidemeister_pairs(20, 10);
    assert!(pairs.len() >= 50);
    assert!(pairs.iter().filter(|p| p.mv.kind == MoveKind::ReidemeisterIII).count() >= 5);
    for name in ["zmod2", "sweedler4"] {
        let e = eval(name);
        for p in &pairs {
            assert_eq!(e.universal_j(&p.before), e.universal_j(&p.after), "{name} {:?} {:?}", p.mv.kind, p.mv.lhs);
        }
    }
}

#[test]
fn colored_j_of_zeta_under_reidemeister_moves() {
    use crate::diagram::zeta;
    let e = eval("zmod2");
    for p in reidemeister_pairs(8, 7) {
        let (a, b) = (zeta(&p.before), zeta(&p.after));
        assert_eq!(a.pair_of, b.pair_of);
        assert_eq!(e.colored_j(&a.diagram), e.colored_j(&b.diagram), "{:?} {:?}", p.mv.kind, p.mv.lhs);
    }
}
