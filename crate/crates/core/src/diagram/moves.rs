//! Local rewrites of diagrams: colored moves for colored diagrams and
//! Reidemeister II/III moves for tangle diagrams.
//!
//! A move replaces a rectangular window: a run of rows in which everything
//! outside a fixed range of strands is a straight strand. Both sides of a
//! move have the same bottom and top legs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::{Diagram, DiagramError, Leg, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// A crossing followed by its inverse, inserted or removed.
    ZeroTwo,
    /// Two crossings and a symmetry against three crossings.
    Pachner,
    /// Two symmetries cancelling.
    SymmetryPair,
    /// The braid relation among symmetries.
    SymmetryBraid,
    /// A crossing conjugated by symmetries on either side.
    Detour,
    /// A crossing sliding across a symmetry strand.
    Slide,
    /// A cap and a cup straightened out.
    Snake,
    /// A crossing turned a quarter through a cap and a cup.
    Rotation,
    /// Two tokens in one row against the same tokens in two rows.
    Interchange,
    ReidemeisterII,
    ReidemeisterIII,
}

/// Where a window sits: the row it starts at and the index of its first
/// strand among the legs entering that row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Site {
    pub row: usize,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub kind: MoveKind,
    /// True for moves outside the generators of ∼′_c, which preserve J′
    /// only when the antipode squares to the identity.
    pub exception: bool,
    #[serde(skip)]
    pub bottom: Vec<Leg>,
    #[serde(skip)]
    pub lhs: Vec<Vec<Token>>,
    #[serde(skip)]
    pub rhs: Vec<Vec<Token>>,
}

#[derive(Debug, Error)]
pub enum MoveError {
    #[error("pattern does not match at row {row}, strand {pos}")]
    Mismatch { row: usize, pos: usize },
    #[error(transparent)]
    Invalid(#[from] DiagramError),
}

impl Move {
    pub fn inverse(&self) -> Move {
        Move { lhs: self.rhs.clone(), rhs: self.lhs.clone(), ..self.clone() }
    }

    /// Change in the number of crossings.
    pub fn crossing_delta(&self) -> i64 {
        let count = |rows: &[Vec<Token>]| rows.iter().flatten().filter(|t| t.is_crossing()).count() as i64;
        count(&self.rhs) - count(&self.lhs)
    }
}

fn strands(legs: &[Leg]) -> Vec<Token> {
    legs.iter().map(|l| Token::Strand(*l)).collect()
}

/// Rows of a window laid out by [`super::Shape`]s over the given bottom legs.
fn layout(bottom: &[Leg], rows: &[Vec<super::Shape>]) -> Vec<Vec<Token>> {
    Diagram::build(true, bottom.to_vec(), rows).expect("window template is consistent").rows().to_vec()
}

fn top_of(bottom: &[Leg], rows: &[Vec<Token>]) -> Vec<Leg> {
    rows.last().map(|r| r.iter().flat_map(|t| t.top()).collect()).unwrap_or_else(|| bottom.to_vec())
}

/// Replaces the window of `mv.lhs` at `site` by `mv.rhs`.
pub fn apply_move(z: &Diagram, mv: &Move, site: Site) -> Result<Diagram, MoveError> {
    let miss = MoveError::Mismatch { row: site.row, pos: site.pos };
    let w = mv.bottom.len();
    if site.row + mv.lhs.len() > z.rows().len() {
        return Err(miss);
    }
    let legs = z.legs_at(site.row);
    if site.pos + w > legs.len() || legs[site.pos..site.pos + w] != mv.bottom[..] {
        return Err(miss);
    }
    for (k, want) in mv.lhs.iter().enumerate() {
        let row = &z.rows()[site.row + k];
        let end = site.pos + want.len();
        if end > row.len() || row[site.pos..end] != want[..] || !row[..site.pos].iter().chain(&row[end..]).all(|t| matches!(t, Token::Strand(_))) {
            return Err(miss);
        }
    }
    let (left, right) = (&legs[..site.pos], &legs[site.pos + w..]);
    let mut rows: Vec<Vec<Token>> = z.rows()[..site.row].to_vec();
    for r in &mv.rhs {
        let mut row = strands(left);
        row.extend(r.iter().copied());
        row.extend(strands(right));
        rows.push(row);
    }
    rows.extend(z.rows()[site.row + mv.lhs.len()..].iter().cloned());
    Ok(Diagram::new(z.colored(), z.bottom().to_vec(), rows)?)
}

fn mv(kind: MoveKind, exception: bool, bottom: &[Leg], lhs: Vec<Vec<Token>>, rhs: Vec<Vec<Token>>) -> Move {
    debug_assert_eq!(top_of(bottom, &lhs), top_of(bottom, &rhs), "{kind:?}");
    Move { kind, exception, bottom: bottom.to_vec(), lhs, rhs }
}

use super::Shape::{Cap, Id, Sym, X};

/// Nothing against a crossing of sign `positive` followed by its inverse.
pub fn zero_two(positive: bool, bottom: [Leg; 2], colored: bool) -> Move {
    let kind = if colored { MoveKind::ZeroTwo } else { MoveKind::ReidemeisterII };
    mv(kind, false, &bottom, vec![], layout(&bottom, &[vec![X(positive)], vec![X(!positive)]]))
}

/// The colored Pachner move on three strands, from the two-crossing side to
/// the three-crossing side. All crossings have the sign `positive`; which
/// side carries the symmetry depends on the thickness of the middle strand,
/// flipped when it points up, since an upward move is a downward one
/// composed with isotopies. It is an exception when the middle strand points up.
pub fn pachner(positive: bool, bottom: [Leg; 3]) -> Move {
    let s = positive;
    let (two, three) = if bottom[1].thick != bottom[1].up {
        (vec![vec![Id, X(s)], vec![Sym, Id], vec![Id, X(s)]], vec![vec![X(s), Id], vec![Id, X(s)], vec![X(s), Id]])
    } else {
        (vec![vec![X(s), Id], vec![Id, Sym], vec![X(s), Id]], vec![vec![Id, X(s)], vec![X(s), Id], vec![Id, X(s)]])
    };
    mv(MoveKind::Pachner, bottom[1].up, &bottom, layout(&bottom, &two), layout(&bottom, &three))
}

pub fn symmetry_pair(bottom: [Leg; 2]) -> Move {
    mv(MoveKind::SymmetryPair, false, &bottom, vec![], layout(&bottom, &[vec![Sym], vec![Sym]]))
}

pub fn symmetry_braid(bottom: [Leg; 3]) -> Move {
    let lhs = layout(&bottom, &[vec![Sym, Id], vec![Id, Sym], vec![Sym, Id]]);
    let rhs = layout(&bottom, &[vec![Id, Sym], vec![Sym, Id], vec![Id, Sym]]);
    mv(MoveKind::SymmetryBraid, false, &bottom, lhs, rhs)
}

pub fn detour(positive: bool, bottom: [Leg; 3]) -> Move {
    let lhs = layout(&bottom, &[vec![Sym, Id], vec![Id, X(positive)], vec![Sym, Id]]);
    let rhs = layout(&bottom, &[vec![Id, Sym], vec![X(positive), Id], vec![Id, Sym]]);
    mv(MoveKind::Detour, false, &bottom, lhs, rhs)
}

pub fn slide(positive: bool, bottom: [Leg; 3]) -> Move {
    let lhs = layout(&bottom, &[vec![X(positive), Id], vec![Id, Sym], vec![Sym, Id]]);
    let rhs = layout(&bottom, &[vec![Id, Sym], vec![Sym, Id], vec![Id, X(positive)]]);
    mv(MoveKind::Slide, false, &bottom, lhs, rhs)
}

/// A straight strand against a zigzag, with the cup on the right of the
/// strand when `right`.
pub fn snake(l: Leg, right: bool) -> Move {
    let rows = if right {
        vec![vec![Id, super::Shape::Cup { lr: l.up, thick: l.thick }], vec![Cap, Id]]
    } else {
        vec![vec![super::Shape::Cup { lr: !l.up, thick: l.thick }, Id], vec![Id, Cap]]
    };
    mv(MoveKind::Snake, false, &[l], vec![], layout(&[l], &rows))
}

/// A crossing of sign `!inner` against the crossing of sign `inner` obtained
/// by running one strand through a cup and a cap. With `cup_right` the left
/// strand is turned, otherwise the right one.
///
/// Turning a strand reverses it inside the crossing, which moves an antipode
/// onto or off its leg of the label. The move is an exception when that
/// needs `γ⊗1` to send `S⁻¹` to `S`, or `1⊗γ̄*` to send `S` to `S⁻¹`.
pub fn rotation(inner: bool, bottom: [Leg; 2], cup_right: bool) -> Move {
    let (p, q) = (bottom[0], bottom[1]);
    let direct = layout(&bottom, &[vec![X(!inner)]]);
    let (rows, turned, turned_under) = if cup_right {
        let cup = super::Shape::Cup { lr: p.up, thick: p.thick };
        (vec![vec![Id, Id, cup], vec![Id, X(inner), Id], vec![Cap, Id, Id]], p, inner)
    } else {
        let cup = super::Shape::Cup { lr: !q.up, thick: q.thick };
        (vec![vec![cup, Id, Id], vec![Id, X(inner), Id], vec![Id, Id, Cap]], q, !inner)
    };
    let general = if turned_under { turned.up != inner } else { turned.up == inner };
    mv(MoveKind::Rotation, !general, &bottom, direct, layout(&bottom, &rows))
}

/// Tokens `left` and `right` side by side in one row, with `mid` strands
/// between, against the same tokens in two rows. `left_first` puts `left`
/// in the lower row.
pub fn interchange(bottom: &[Leg], left: Token, mid: usize, right: Token, left_first: bool) -> Move {
    let lb = left.bottom().len();
    let mid_legs = &bottom[lb..lb + mid];
    let right_legs = &bottom[lb + mid..];
    let mut merged = vec![left];
    merged.extend(strands(mid_legs));
    merged.push(right);
    let (lower, upper) = if left_first {
        let mut lower = vec![left];
        lower.extend(strands(&bottom[lb..]));
        let mut upper = strands(&left.top());
        upper.extend(strands(mid_legs));
        upper.push(right);
        (lower, upper)
    } else {
        let mut lower = strands(&bottom[..lb + mid]);
        lower.push(right);
        let mut upper = vec![left];
        upper.extend(strands(mid_legs));
        upper.extend(strands(&right.top()));
        (lower, upper)
    };
    debug_assert_eq!(right.bottom(), right_legs);
    mv(MoveKind::Interchange, false, bottom, vec![merged], vec![lower, upper])
}

/// The Reidemeister III move `σ₁^a σ₂^b σ₁^c = σ₂^c σ₁^b σ₂^a` read from the
/// bottom, for the sign patterns where it holds.
pub fn reidemeister_three(signs: [bool; 3], bottom: [Leg; 3]) -> Move {
    let [a, b, c] = signs;
    let lhs = layout(&bottom, &[vec![X(a), Id], vec![Id, X(b)], vec![X(c), Id]]);
    let rhs = layout(&bottom, &[vec![Id, X(c)], vec![X(b), Id], vec![Id, X(a)]]);
    mv(MoveKind::ReidemeisterIII, false, &bottom, lhs, rhs)
}

/// Sign patterns `(a, b, c)` for which [`reidemeister_three`] is a braid
/// relation: all but `b` differing from equal `a` and `c`.
pub const RIII_SIGNS: [[bool; 3]; 6] =
    [[true, true, true], [false, false, false], [true, true, false], [false, true, true], [true, false, false], [false, false, true]];

fn legs2(l: &[Leg]) -> [Leg; 2] {
    [l[0], l[1]]
}

fn legs3(l: &[Leg]) -> [Leg; 3] {
    [l[0], l[1], l[2]]
}

fn single_token(row: &[Token]) -> Option<usize> {
    let mut it = row.iter().enumerate().filter(|(_, t)| !matches!(t, Token::Strand(_)));
    let first = it.next()?.0;
    it.next().is_none().then_some(first)
}

/// Every non-inserting move that applies somewhere in `z`, both directions.
pub fn matching_moves(z: &Diagram) -> Vec<(Move, Site)> {
    let mut cands: Vec<(Move, Site)> = Vec::new();
    let colored = z.colored();
    for row in 0..z.rows().len() {
        let legs = z.legs_at(row);
        for pos in 0..legs.len() {
            let site = Site { row, pos };
            let rest = &legs[pos..];
            for s in [true, false] {
                if rest.len() >= 2 {
                    cands.push((zero_two(s, legs2(rest), colored).inverse(), site));
                    let r = rotation(s, legs2(rest), true);
                    let l = rotation(s, legs2(rest), false);
                    cands.extend([r.clone(), r.inverse(), l.clone(), l.inverse()].map(|m| (m, site)));
                }
                if rest.len() >= 3 {
                    let l3 = legs3(rest);
                    if colored {
                        let p = pachner(s, l3);
                        let (d, sl) = (detour(s, l3), slide(s, l3));
                        cands.extend([p.inverse(), p, d.inverse(), d, sl.inverse(), sl].map(|m| (m, site)));
                    } else if s {
                        for signs in RIII_SIGNS {
                            let m = reidemeister_three(signs, l3);
                            cands.extend([m.inverse(), m].map(|m| (m, site)));
                        }
                    }
                }
            }
            if colored {
                if rest.len() >= 2 {
                    cands.push((symmetry_pair(legs2(rest)).inverse(), site));
                }
                if rest.len() >= 3 {
                    let b = symmetry_braid(legs3(rest));
                    cands.extend([b.inverse(), b].map(|m| (m, site)));
                }
            }
            cands.extend([snake(rest[0], true).inverse(), snake(rest[0], false).inverse()].map(|m| (m, site)));
        }
        cands.extend(interchanges(z, row));
    }
    let mut out: Vec<(Move, Site)> = Vec::new();
    for (m, site) in cands {
        if out.iter().any(|(o, s)| *s == site && o.lhs == m.lhs && o.rhs == m.rhs) {
            continue;
        }
        if apply_move(z, &m, site).is_ok() {
            out.push((m, site));
        }
    }
    out
}

fn interchanges(z: &Diagram, row: usize) -> Vec<(Move, Site)> {
    let mut out = Vec::new();
    let legs = z.legs_at(row);
    let toks = &z.rows()[row];
    let busy: Vec<usize> = (0..toks.len()).filter(|&i| !matches!(toks[i], Token::Strand(_))).collect();
    if let [i, j] = busy[..] {
        let site = Site { row, pos: i };
        for first in [true, false] {
            out.push((
                interchange(&legs[i..i + (j - i - 1) + toks[i].bottom().len() + toks[j].bottom().len()], toks[i], j - i - 1, toks[j], first),
                site,
            ));
        }
    }
    if row + 1 < z.rows().len() {
        let upper = &z.rows()[row + 1];
        if let (Some(i), Some(j)) = (single_token(toks), single_token(upper)) {
            let (t, u) = (toks[i], upper[j]);
            if j >= i + t.top().len() {
                let mid = j - i - t.top().len();
                let w = t.bottom().len() + mid + u.bottom().len();
                if i + w <= legs.len() {
                    out.push((interchange(&legs[i..i + w], t, mid, u, true).inverse(), Site { row, pos: i }));
                }
            }
            if i >= j + u.bottom().len() {
                let mid = i - j - u.bottom().len();
                let w = u.bottom().len() + mid + t.bottom().len();
                if j + w <= legs.len() {
                    out.push((interchange(&legs[j..j + w], u, mid, t, false).inverse(), Site { row, pos: j }));
                }
            }
        }
    }
    out
}

/// Moves that insert new tokens at `site` without matching anything.
pub fn inserting_moves(z: &Diagram, site: Site) -> Vec<Move> {
    let legs = z.legs_at(site.row);
    let rest = &legs[site.pos.min(legs.len())..];
    let mut out = Vec::new();
    if rest.len() >= 2 {
        for s in [true, false] {
            out.push(zero_two(s, legs2(rest), z.colored()));
        }
        if z.colored() {
            out.push(symmetry_pair(legs2(rest)));
        }
    }
    if let Some(&l) = rest.first() {
        out.push(snake(l, true));
        out.push(snake(l, false));
    }
    out
}

/// Every diagram one move away from `z`: all matches, and every insertion
/// at every site.
pub fn neighbours(z: &Diagram) -> Vec<MovePair> {
    let mut out: Vec<MovePair> = matching_moves(z)
        .into_iter()
        .map(|(mv, site)| MovePair { before: z.clone(), after: apply_move(z, &mv, site).expect("matched"), mv, site })
        .collect();
    for row in 0..=z.rows().len() {
        for pos in 0..z.legs_at(row).len() {
            let site = Site { row, pos };
            for mv in inserting_moves(z, site) {
                let after = apply_move(z, &mv, site).expect("insertions always match");
                out.push(MovePair { before: z.clone(), after, mv, site });
            }
        }
    }
    out
}

/// Two diagrams related by exactly one move.
#[derive(Clone, Debug)]
pub struct MovePair {
    pub before: Diagram,
    pub after: Diagram,
    pub mv: Move,
    pub site: Site,
}

#[derive(Clone, Copy, Debug)]
pub struct PairConfig {
    /// Moves applied in sequence to each seed.
    pub depth: usize,
    pub seed: u64,
    /// Whether exception moves may be generated.
    pub exceptions: bool,
    /// Moves that would push the crossing count beyond this are skipped.
    pub max_crossings: usize,
}

/// Inserts `rows` (whose bottom legs are `legs[pos..]`) at level `row`.
fn insert_rows(z: &Diagram, site: Site, window: &[Vec<Token>], width: usize) -> Diagram {
    let legs = z.legs_at(site.row);
    let mut rows: Vec<Vec<Token>> = z.rows()[..site.row].to_vec();
    for r in window {
        let mut row = strands(&legs[..site.pos]);
        row.extend(r.iter().copied());
        row.extend(strands(&legs[site.pos + width..]));
        rows.push(row);
    }
    rows.extend(z.rows()[site.row..].iter().cloned());
    Diagram::new(z.colored(), z.bottom().to_vec(), rows).expect("inserted window returns its strands in place")
}

/// A diagram containing the lhs of a three-strand move at `site`: the lhs
/// followed by a window undoing its permutation of the strands.
fn scaffold(z: &Diagram, site: Site, mv: &Move) -> Diagram {
    let sym = z.colored();
    let top = top_of(&mv.bottom, &mv.lhs);
    let undo: Vec<Vec<Token>> = if sym {
        layout(&top, &[vec![Sym, Id], vec![Id, Sym], vec![Sym, Id]])
    } else {
        // the inverse braid of the lhs
        let mut rows: Vec<Vec<super::Shape>> = Vec::new();
        for r in mv.lhs.iter().rev() {
            rows.push(
                r.iter()
                    .map(|t| match t {
                        Token::Cross { positive, .. } => X(!positive),
                        _ => Id,
                    })
                    .collect(),
            );
        }
        Diagram::build(false, top, &rows).expect("inverse braid").rows().to_vec()
    };
    let mut window = mv.lhs.clone();
    window.extend(undo);
    insert_rows(z, site, &window, mv.bottom.len())
}

fn crossing_budget(z: &Diagram, m: &Move, cap: usize) -> bool {
    (z.crossing_count() as i64 + m.crossing_delta()) as usize <= cap
}

/// Walks `depth` random moves from each seed and returns every step as a
/// pair. Colored seeds get colored moves, tangle diagrams get Reidemeister
/// II and III moves. Three-strand moves are staged by first inserting their
/// left-hand side, so that they occur even where no match exists yet.
pub fn enumerate_move_pairs(seeds: &[Diagram], cfg: PairConfig) -> Vec<MovePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for seed in seeds {
        let mut cur = seed.clone();
        for _ in 0..cfg.depth {
            let Some(pair) = random_step(&cur, cfg, &mut rng) else { break };
            cur = pair.after.clone();
            out.push(pair);
        }
    }
    out
}

fn random_step(cur: &Diagram, cfg: PairConfig, rng: &mut ChaCha8Rng) -> Option<MovePair> {
    let allowed = |m: &Move| cfg.exceptions || !m.exception;
    let wide: Vec<usize> = (0..=cur.rows().len()).filter(|&r| cur.legs_at(r).len() >= 3).collect();
    for _ in 0..64 {
        let levels = cur.rows().len() + 1;
        let row = rng.gen_range(0..levels);
        let width = cur.legs_at(row).len();
        let choice = rng.gen_range(0..10);
        if choice < 4 {
            let found: Vec<(Move, Site)> =
                matching_moves(cur).into_iter().filter(|(m, _)| allowed(m) && crossing_budget(cur, m, cfg.max_crossings)).collect();
            if let Some((m, site)) = pick_by_kind(found, rng) {
                let after = apply_move(cur, &m, site).expect("matched");
                return Some(MovePair { before: cur.clone(), after, mv: m, site });
            }
        } else if choice < 7 && !wide.is_empty() {
            let row = *wide.choose(rng).unwrap();
            let width = cur.legs_at(row).len();
            let pos = rng.gen_range(0..=width - 3);
            let site = Site { row, pos };
            let l3 = legs3(&cur.legs_at(row)[pos..]);
            let m = if cur.colored() { pachner(rng.gen(), l3) } else { reidemeister_three(*RIII_SIGNS.choose(rng).unwrap(), l3) };
            let m = if rng.gen() { m } else { m.inverse() };
            if !allowed(&m) {
                continue;
            }
            let before = scaffold(cur, site, &m);
            let after = apply_move(&before, &m, site).expect("scaffold holds the lhs");
            if before.crossing_count().max(after.crossing_count()) > cfg.max_crossings {
                continue;
            }
            return Some(MovePair { before, after, mv: m, site });
        } else if width >= 1 {
            let site = Site { row, pos: rng.gen_range(0..width) };
            let ms: Vec<(Move, Site)> = inserting_moves(cur, site)
                .into_iter()
                .filter(|m| allowed(m) && crossing_budget(cur, m, cfg.max_crossings))
                .map(|m| (m, site))
                .collect();
            if let Some((m, site)) = pick_by_kind(ms, rng) {
                let after = apply_move(cur, &m, site).expect("insertions always match");
                return Some(MovePair { before: cur.clone(), after, mv: m, site });
            }
        }
    }
    None
}

/// A uniformly random kind among those present, then a random move of it.
fn pick_by_kind(mut found: Vec<(Move, Site)>, rng: &mut ChaCha8Rng) -> Option<(Move, Site)> {
    let mut kinds: Vec<MoveKind> = found.iter().map(|(m, _)| m.kind).collect();
    kinds.sort_by_key(|k| *k as u8);
    kinds.dedup();
    let kind = *kinds.choose(rng)?;
    found.retain(|(m, _)| m.kind == kind);
    let i = rng.gen_range(0..found.len());
    Some(found.swap_remove(i))
}
