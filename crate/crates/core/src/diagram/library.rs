//! Small diagrams used by tests, the CLI and the acceptance suite.

use super::{Diagram, Leg, Shape};

fn ids(k: usize) -> Vec<Shape> {
    vec![Shape::Id; k]
}

pub fn strand(up: bool) -> Diagram {
    Diagram::build(false, vec![Leg::thin(up)], &[vec![Shape::Id]]).unwrap()
}

/// One crossing; `positive` is the token sign (strand A over).
pub fn crossing(positive: bool, up_a: bool, up_b: bool) -> Diagram {
    Diagram::build(false, vec![Leg::thin(up_a), Leg::thin(up_b)], &[vec![Shape::X(positive)]]).unwrap()
}

/// A curl on one strand; its writhe is +1 for `positive`, -1 otherwise.
pub fn kink(positive: bool, up: bool) -> Diagram {
    Diagram::build(
        false,
        vec![Leg::thin(up)],
        &[vec![Shape::Id, Shape::Cup { lr: !up, thick: false }], vec![Shape::X(positive), Shape::Id], vec![Shape::Id, Shape::Cap]],
    )
    .unwrap()
}

/// Two strands, the first upward, crossing twice so that the first passes
/// over and then under the second.
pub fn tangle_c() -> Diagram {
    Diagram::build(false, vec![Leg::UP, Leg::DOWN], &[vec![Shape::X(true)], vec![Shape::X(true)]]).unwrap()
}

/// A braid on `k` strands: generator `i > 0` is a positive crossing of
/// strands `i-1, i`, `-i` a negative one.
pub fn braid(k: usize, word: &[i32], up: bool) -> Diagram {
    let rows: Vec<Vec<Shape>> = word.iter().map(|&g| generator(k, g)).collect();
    Diagram::build(false, vec![Leg::thin(up); k], &rows).unwrap()
}

fn generator(k: usize, g: i32) -> Vec<Shape> {
    let i = g.unsigned_abs() as usize;
    assert!(i >= 1 && i < k, "generator {g} out of range for {k} strands");
    let mut row = ids(i - 1);
    row.push(Shape::X(g > 0));
    row.extend(ids(k - i - 1));
    row
}

/// Closure of an upward braid, returning strands running down on the right.
pub fn braid_closure(k: usize, word: &[i32]) -> Diagram {
    let mut rows = Vec::new();
    for j in 0..k {
        let mut row = ids(j);
        row.push(Shape::Cup { lr: false, thick: false });
        row.extend(ids(j));
        rows.push(row);
    }
    for &g in word {
        let mut row = generator(k, g);
        row.extend(ids(k));
        rows.push(row);
    }
    for j in 0..k {
        let mut row = ids(k - 1 - j);
        row.push(Shape::Cap);
        row.extend(ids(k - 1 - j));
        rows.push(row);
    }
    Diagram::build(false, vec![], &rows).unwrap()
}

/// A circle made of a cup and a cap.
pub fn unknot(lr_cup: bool) -> Diagram {
    Diagram::build(false, vec![], &[vec![Shape::Cup { lr: lr_cup, thick: false }], vec![Shape::Cap]]).unwrap()
}

/// Closure of σ₁³: a trefoil.
pub fn trefoil() -> Diagram {
    braid_closure(2, &[1, 1, 1])
}

/// The fixed suite of diagrams on which `φ∘J = J″` is checked.
pub fn jj_suite() -> Vec<(String, Diagram)> {
    let mut out = vec![("strand_up".to_string(), strand(true)), ("strand_down".to_string(), strand(false))];
    for positive in [true, false] {
        for a in [true, false] {
            for b in [true, false] {
                let name = format!("crossing_{}_{}_{}", sign(positive), dir(a), dir(b));
                out.push((name, crossing(positive, a, b)));
            }
        }
        for up in [true, false] {
            out.push((format!("kink_{}_{}", sign(positive), dir(up)), kink(positive, up)));
        }
    }
    out.push(("tangle_c".into(), tangle_c()));
    out.push(("braid_s1_s2".into(), braid(3, &[1, 2], false)));
    out.push(("unknot".into(), unknot(false)));
    out.push(("trefoil".into(), trefoil()));
    out
}

/// Seeds from which colored move pairs are generated: ζ of crossings with
/// mixed orientations, of a kink, and of a strand.
pub fn colored_seeds() -> Vec<Diagram> {
    [crossing(true, false, true), crossing(false, true, true), kink(true, false), strand(true)].iter().map(|d| super::zeta(d).diagram).collect()
}

/// Seeds from which Reidemeister pairs are generated.
pub fn isotopy_seeds() -> Vec<Diagram> {
    vec![crossing(true, true, false), braid(3, &[1, -2], false), kink(true, true), braid(3, &[], true)]
}

fn sign(p: bool) -> &'static str {
    if p {
        "pos"
    } else {
        "neg"
    }
}

fn dir(up: bool) -> &'static str {
    if up {
        "up"
    } else {
        "down"
    }
}
