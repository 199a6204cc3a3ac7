use std::collections::HashMap;

use super::{Diagram, End, Leg, Token, TokenRef};

/// Where a token of ζ(D) came from: the token of D, and for crossings the
/// position of the sub-crossing in its 2×2 cluster (0 bottom, 1 left,
/// 2 right, 3 top).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZetaOrigin {
    pub source: TokenRef,
    pub sub: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub diagram: Diagram,
    /// For each component of ζ(D): the component of D and whether it is the
    /// thick copy.
    pub pair_of: Vec<(usize, bool)>,
    pub origin: HashMap<TokenRef, ZetaOrigin>,
}

impl ZetaResult {
    /// Component indices of ζ(D) ordered thin₁, thick₁, thin₂, thick₂, ...
    pub fn pair_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.pair_of.len()).collect();
        idx.sort_by_key(|&i| self.pair_of[i]);
        idx
    }
}

/// The doubled strand: the copy on the left of the direction of travel is thick.
fn pair(l: Leg) -> [Leg; 2] {
    if l.up {
        [Leg::thick(true), Leg::thin(true)]
    } else {
        [Leg::thin(false), Leg::thick(false)]
    }
}

/// A token of ζ(D), its position in a crossing cluster, and for each of
/// its pieces the piece of the D-token it doubles.
type Tagged = (Token, Option<usize>, [usize; 2]);

fn ids(legs: &[Leg], dpiece: usize) -> Vec<Tagged> {
    legs.iter().map(|l| (Token::Strand(*l), None, [dpiece; 2])).collect()
}

fn single(t: Token) -> Tagged {
    (t, None, [0, 0])
}

fn cup_for(left: Leg) -> Token {
    Token::Cup { lr: !left.up, thick: left.thick }
}

fn cap_for(left: Leg) -> Token {
    Token::Cap { lr: left.up, thick: left.thick }
}

fn block(t: &Token) -> Vec<Vec<Tagged>> {
    match *t {
        Token::Strand(l) => vec![ids(&pair(l), 0)],
        Token::Cap { .. } => {
            let b = t.bottom();
            let (p, q) = (pair(b[0]), pair(b[1]));
            vec![vec![single(Token::Strand(p[0])), single(cap_for(p[1])), single(Token::Strand(q[1]))], vec![single(cap_for(p[0]))]]
        }
        Token::Cup { .. } => {
            let top = t.top();
            let (p, q) = (pair(top[0]), pair(top[1]));
            vec![vec![single(cup_for(p[0]))], vec![single(Token::Strand(p[0])), single(cup_for(p[1])), single(Token::Strand(q[1]))]]
        }
        Token::Cross { positive, legs } => {
            let (a, b) = (pair(legs[0]), pair(legs[1]));
            let x = |l: Leg, r: Leg, sub| (Token::Cross { positive, legs: [l, r] }, Some(sub), [0, 1]);
            let s = |l: Leg, dp: usize| (Token::Strand(l), None, [dp; 2]);
            vec![
                vec![s(a[0], 0), x(a[1], b[0], 0), s(b[1], 1)],
                vec![x(a[0], b[0], 1), x(a[1], b[1], 2)],
                vec![s(b[0], 1), x(a[0], b[1], 3), s(a[1], 0)],
            ]
        }
        Token::Sym { .. } => panic!("ζ is defined on uncolored diagrams"),
    }
}

/// Straight strands continuing the top legs of a D-token.
fn padding(t: &Token) -> Vec<Tagged> {
    match t {
        Token::Cross { legs, .. } => {
            let mut v = ids(&pair(legs[1]), 1);
            v.extend(ids(&pair(legs[0]), 0));
            v
        }
        _ => ids(&t.top().iter().flat_map(|l| pair(*l)).collect::<Vec<_>>(), 0),
    }
}

/// ζ(D): every strand doubled with the left copy (along the orientation)
/// thick, every crossing replaced by its four-crossing cluster, and every
/// extremum by a nested pair.
pub fn zeta(d: &Diagram) -> ZetaResult {
    assert!(!d.colored(), "ζ is defined on uncolored diagrams");
    let bottom: Vec<Leg> = d.bottom().iter().flat_map(|l| pair(*l)).collect();
    if d.rows().is_empty() {
        let diagram = Diagram::new(true, bottom, vec![]).unwrap();
        let pair_of = (0..d.bottom().len()).flat_map(|i| {
            let p = pair(d.bottom()[i]);
            [(i, p[0].thick), (i, p[1].thick)]
        });
        return ZetaResult { diagram, pair_of: pair_of.collect(), origin: HashMap::new() };
    }
    let mut rows: Vec<Vec<Token>> = Vec::new();
    let mut origin = HashMap::new();
    let mut dpiece = HashMap::new();
    for (r, row) in d.rows().iter().enumerate() {
        let blocks: Vec<Vec<Vec<Tagged>>> = row.iter().map(block).collect();
        let height = blocks.iter().map(|b| b.len()).max().unwrap_or(1);
        for level in 0..height {
            let mut zrow = Vec::new();
            for (i, (b, t)) in blocks.iter().zip(row).enumerate() {
                let slice = b.get(level).cloned().unwrap_or_else(|| padding(t));
                for (tok, sub, dp) in slice {
                    let at = (rows.len(), zrow.len());
                    origin.insert(at, ZetaOrigin { source: (r, i), sub });
                    dpiece.insert(at, dp);
                    zrow.push(tok);
                }
            }
            rows.push(zrow);
        }
    }
    let z = Diagram::new(true, bottom, rows).expect("ζ(D) is a valid colored diagram");
    let dmap = d.component_map();
    let pair_of = z
        .components()
        .iter()
        .map(|c| {
            let v = c.visits[0];
            let tok = z.rows()[v.row][v.token];
            let thick = match tok.pieces()[v.piece].from {
                End::Bottom(k) => tok.bottom()[k].thick,
                End::Top(k) => tok.top()[k].thick,
            };
            let o = origin[&(v.row, v.token)];
            let p = dpiece[&(v.row, v.token)][v.piece];
            (dmap[&(o.source.0, o.source.1, p)], thick)
        })
        .collect();
    ZetaResult { diagram: z, pair_of, origin }
}

/// D_(←): every left-to-right cap becomes a crossing of writhe +1 below a
/// right-to-left cap, and every left-to-right cup a right-to-left cup below
/// a crossing of writhe -1. The result has no left-to-right extrema.
pub fn left_normalize(d: &Diagram) -> Diagram {
    left_normalize_traced(d).0
}

/// A piece as `(row, token, piece)`.
pub type PieceAt = (usize, usize, usize);

/// [`left_normalize`] together with the piece of D each piece of the result
/// runs along.
pub fn left_normalize_traced(d: &Diagram) -> (Diagram, HashMap<PieceAt, PieceAt>) {
    let mut rows = Vec::new();
    let mut trace = HashMap::new();
    for (r, row) in d.rows().iter().enumerate() {
        let needs = row.iter().any(|t| matches!(t, Token::Cap { lr: true, .. } | Token::Cup { lr: true, .. }));
        if !needs {
            for (i, t) in row.iter().enumerate() {
                for p in 0..t.pieces().len() {
                    trace.insert((rows.len(), i, p), (r, i, p));
                }
            }
            rows.push(row.clone());
            continue;
        }
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        let (lo, up) = (rows.len(), rows.len() + 1);
        let mut put = |row: &mut Vec<Token>, level: usize, t: Token, dp: [usize; 2], i: usize| {
            for (p, &q) in dp.iter().enumerate().take(t.pieces().len()) {
                trace.insert((level, row.len(), p), (r, i, q));
            }
            row.push(t);
        };
        for (i, t) in row.iter().enumerate() {
            match *t {
                Token::Cap { lr: true, thick } => {
                    let legs = [Leg { up: true, thick }, Leg { up: false, thick }];
                    // legs point opposite ways, so writhe +1 needs the B strand over
                    put(&mut lower, lo, Token::Cross { positive: false, legs }, [0, 0], i);
                    put(&mut upper, up, Token::Cap { lr: false, thick }, [0, 0], i);
                }
                Token::Cup { lr: true, thick } => {
                    put(&mut lower, lo, Token::Cup { lr: false, thick }, [0, 0], i);
                    let legs = [Leg { up: true, thick }, Leg { up: false, thick }];
                    put(&mut upper, up, Token::Cross { positive: true, legs }, [0, 0], i);
                }
                t => {
                    put(&mut lower, lo, t, [0, 1], i);
                    // top legs of a crossing are [B, A]
                    let owners: Vec<usize> = match t {
                        Token::Cross { .. } | Token::Sym { .. } => vec![1, 0],
                        _ => vec![0; t.top().len()],
                    };
                    for (l, o) in t.top().into_iter().zip(owners) {
                        put(&mut upper, up, Token::Strand(l), [o, o], i);
                    }
                }
            }
        }
        rows.push(lower);
        rows.push(upper);
    }
    let out = Diagram::new(d.colored(), d.bottom().to_vec(), rows).expect("D_(←) is valid");
    (out, trace)
}
