//! Tangle diagrams and colored diagrams in slice-word form: rows of
//! fundamental tangles read from bottom to top.
pub mod library;
pub mod moves;
mod token;
mod zeta;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use token::{End, Leg, Piece, Token};
pub use zeta::{left_normalize, left_normalize_traced, zeta, ZetaOrigin, ZetaResult};

use token::RawToken;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed token {token} in row {row}: {reason}")]
    Malformed { row: usize, token: usize, reason: String },
    #[error("row {row} expects {expected} incoming strands but {found} arrive")]
    Dangling { row: usize, expected: usize, found: usize },
    #[error("orientation mismatch in row {row} at strand {pos}")]
    Orientation { row: usize, pos: usize },
    #[error("thickness mismatch in row {row} at strand {pos}")]
    Thickness { row: usize, pos: usize },
    #[error("thick strand or symmetry in an uncolored diagram (row {row})")]
    NotColored { row: usize },
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

/// A validated diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    colored: bool,
    bottom: Vec<Leg>,
    rows: Vec<Vec<Token>>,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    colored: bool,
    bottom: Vec<RawLeg>,
    rows: Vec<Vec<RawToken>>,
}

#[derive(Serialize, Deserialize)]
struct RawLeg {
    orient: String,
    #[serde(default)]
    thick: bool,
}

/// A token position `(row, index in row)`.
pub type TokenRef = (usize, usize);

/// One traversal of a piece while walking a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Visit {
    pub row: usize,
    pub token: usize,
    pub piece: usize,
}

/// A component as the sequence of pieces met along its orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub open: bool,
    /// Thickness of the strand; always false in uncolored diagrams.
    pub thick: bool,
    pub visits: Vec<Visit>,
}

/// Per-component counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub open: bool,
    /// Left-to-right maxima minus left-to-right minima.
    pub d: i64,
    /// Positive minus negative self crossings.
    pub f: i64,
    pub maxima: usize,
    pub minima: usize,
    pub crossings: usize,
}

/// Shapes for [`Diagram::build`]; orientations and thickness of existing
/// strands are inferred from the legs below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Id,
    Cap,
    Cup { lr: bool, thick: bool },
    X(bool),
    Sym,
}

fn check_legs(row: usize, offset: usize, have: &[Leg], want: &[Leg]) -> Result<(), DiagramError> {
    for (i, (h, w)) in have.iter().zip(want).enumerate() {
        if h.up != w.up {
            return Err(DiagramError::Orientation { row, pos: offset + i });
        }
        if h.thick != w.thick {
            return Err(DiagramError::Thickness { row, pos: offset + i });
        }
    }
    Ok(())
}

impl Diagram {
    pub fn new(colored: bool, bottom: Vec<Leg>, rows: Vec<Vec<Token>>) -> Result<Diagram, DiagramError> {
        let d = Diagram { colored, bottom, rows };
        d.validate()?;
        Ok(d)
    }

    /// Builds a diagram, taking every orientation not fixed by a cup from
    /// the strands arriving from below.
    pub fn build(colored: bool, bottom: Vec<Leg>, rows: &[Vec<Shape>]) -> Result<Diagram, DiagramError> {
        let mut legs = bottom.clone();
        let mut out = Vec::new();
        for (r, shapes) in rows.iter().enumerate() {
            let mut pos = 0;
            let mut row = Vec::new();
            let mut take = |k: usize| -> Result<Vec<Leg>, DiagramError> {
                if pos + k > legs.len() {
                    return Err(DiagramError::Dangling { row: r, expected: pos + k, found: legs.len() });
                }
                pos += k;
                Ok(legs[pos - k..pos].to_vec())
            };
            for s in shapes {
                row.push(match *s {
                    Shape::Id => Token::Strand(take(1)?[0]),
                    Shape::Cap => {
                        let l = take(2)?;
                        Token::Cap { lr: l[0].up, thick: l[0].thick }
                    }
                    Shape::Cup { lr, thick } => Token::Cup { lr, thick },
                    Shape::X(positive) => {
                        let l = take(2)?;
                        Token::Cross { positive, legs: [l[0], l[1]] }
                    }
                    Shape::Sym => {
                        let l = take(2)?;
                        Token::Sym { legs: [l[0], l[1]] }
                    }
                });
            }
            if pos != legs.len() {
                return Err(DiagramError::Dangling { row: r, expected: pos, found: legs.len() });
            }
            legs = row.iter().flat_map(|t| t.top()).collect();
            out.push(row);
        }
        Diagram::new(colored, bottom, out)
    }

    pub fn colored(&self) -> bool {
        self.colored
    }

    pub fn bottom(&self) -> &[Leg] {
        &self.bottom
    }

    pub fn rows(&self) -> &[Vec<Token>] {
        &self.rows
    }

    pub fn token(&self, t: TokenRef) -> &Token {
        &self.rows[t.0][t.1]
    }

    /// Legs entering row `r` from below; `r == rows.len()` gives the top boundary.
    pub fn legs_at(&self, r: usize) -> Vec<Leg> {
        if r == 0 {
            return self.bottom.clone();
        }
        self.rows[r - 1].iter().flat_map(|t| t.top()).collect()
    }

    pub fn top(&self) -> Vec<Leg> {
        self.legs_at(self.rows.len())
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut legs = self.bottom.clone();
        if !self.colored && legs.iter().any(|l| l.thick) {
            return Err(DiagramError::NotColored { row: 0 });
        }
        for (r, row) in self.rows.iter().enumerate() {
            let mut pos = 0;
            for t in row {
                if !self.colored && (t.is_thick_anywhere() || matches!(t, Token::Sym { .. })) {
                    return Err(DiagramError::NotColored { row: r });
                }
                let want = t.bottom();
                if pos + want.len() > legs.len() {
                    return Err(DiagramError::Dangling { row: r, expected: pos + want.len(), found: legs.len() });
                }
                check_legs(r, pos, &legs[pos..pos + want.len()], &want)?;
                pos += want.len();
            }
            if pos != legs.len() {
                return Err(DiagramError::Dangling { row: r, expected: pos, found: legs.len() });
            }
            legs = row.iter().flat_map(|t| t.top()).collect();
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Diagram, DiagramError> {
        let raw: RawDiagram = serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        let mut bottom = Vec::new();
        for (i, l) in raw.bottom.iter().enumerate() {
            let up = match l.orient.as_str() {
                "up" => true,
                "down" => false,
                o => {
                    return Err(DiagramError::Json(format!("bottom strand {i}: orientation {o:?}")));
                }
            };
            bottom.push(Leg { up, thick: l.thick });
        }
        let mut rows = Vec::new();
        for (r, row) in raw.rows.iter().enumerate() {
            rows.push(row.iter().enumerate().map(|(i, t)| t.decode((r, i))).collect::<Result<Vec<_>, _>>()?);
        }
        Diagram::new(raw.colored, bottom, rows)
    }

    pub fn to_json(&self) -> String {
        let raw = RawDiagram {
            colored: self.colored,
            bottom: self.bottom.iter().map(|l| RawLeg { orient: if l.up { "up" } else { "down" }.to_string(), thick: l.thick }).collect(),
            rows: self.rows.iter().map(|row| row.iter().map(|t| RawToken::encode(t, self.colored)).collect()).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("diagram serializes")
    }

    /// Crossings (not symmetries) in scan order, bottom row first.
    pub fn crossings(&self) -> Vec<TokenRef> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (i, t) in row.iter().enumerate() {
                if t.is_crossing() {
                    out.push((r, i));
                }
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().len()
    }

    /// Components: open ones by their first boundary end (bottom before
    /// top, then by position), then closed ones by their first piece in
    /// scan order, which is also where the walk starts.
    pub fn components(&self) -> Vec<Component> {
        let n = self.rows.len();
        if n == 0 {
            return self.bottom.iter().map(|l| Component { open: true, thick: l.thick, visits: vec![] }).collect();
        }
        // slot (level, position); row r spans levels r and r + 1
        // (visit, entry slot, exit slot)
        type Slot = (usize, usize);
        let mut pieces: Vec<(Visit, Slot, Slot)> = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let (mut b, mut t) = (0, 0);
            for (i, tok) in row.iter().enumerate() {
                let slot = |e: End| match e {
                    End::Bottom(k) => (r, b + k),
                    End::Top(k) => (r + 1, t + k),
                };
                for (p, pc) in tok.pieces().iter().enumerate() {
                    pieces.push((Visit { row: r, token: i, piece: p }, slot(pc.from), slot(pc.to)));
                }
                b += tok.bottom().len();
                t += tok.top().len();
            }
        }
        let by_start: HashMap<(usize, usize), usize> = pieces.iter().enumerate().map(|(i, p)| (p.1, i)).collect();
        let mut seen = vec![false; pieces.len()];
        let thick_at = |v: Visit| {
            let t = &self.rows[v.row][v.token];
            match t.pieces()[v.piece].from {
                End::Bottom(k) => t.bottom()[k].thick,
                End::Top(k) => t.top()[k].thick,
            }
        };
        let walk = |start: usize, seen: &mut Vec<bool>| {
            let mut visits = Vec::new();
            let mut cur = Some(start);
            while let Some(i) = cur {
                if seen[i] {
                    break;
                }
                seen[i] = true;
                visits.push(pieces[i].0);
                cur = by_start.get(&pieces[i].2).copied();
            }
            visits
        };
        let boundary = |slot: (usize, usize)| slot.0 == 0 || slot.0 == n;
        let key = |slot: (usize, usize)| (if slot.0 == 0 { 0 } else { 1 }, slot.1);
        let mut open: Vec<(usize, (u8, usize))> = Vec::new();
        for (i, p) in pieces.iter().enumerate() {
            if boundary(p.1) {
                open.push((i, key(p.1)));
            }
        }
        let mut comps: Vec<((u8, usize), Component)> = open
            .into_iter()
            .map(|(i, k)| {
                let visits = walk(i, &mut seen);
                (k, Component { open: true, thick: thick_at(visits[0]), visits })
            })
            .collect();
        // the other end of an open component may sort earlier
        for (k, c) in comps.iter_mut() {
            let last = c.visits.last().unwrap();
            let end = pieces.iter().find(|p| p.0 == *last).unwrap().2;
            *k = (*k).min(key(end));
        }
        comps.sort_by_key(|(k, _)| *k);
        let mut out: Vec<Component> = comps.into_iter().map(|(_, c)| c).collect();
        for i in 0..pieces.len() {
            if !seen[i] {
                let visits = walk(i, &mut seen);
                out.push(Component { open: false, thick: thick_at(visits[0]), visits });
            }
        }
        out
    }

    /// Which component each piece belongs to.
    pub fn component_map(&self) -> HashMap<(usize, usize, usize), usize> {
        let mut m = HashMap::new();
        for (c, comp) in self.components().iter().enumerate() {
            for v in &comp.visits {
                m.insert((v.row, v.token, v.piece), c);
            }
        }
        m
    }

    pub fn stats(&self) -> Vec<ComponentStats> {
        let comps = self.components();
        let owner = self.component_map();
        comps
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let mut s = ComponentStats { open: comp.open, d: 0, f: 0, maxima: 0, minima: 0, crossings: 0 };
                for v in &comp.visits {
                    match self.rows[v.row][v.token] {
                        Token::Cap { lr, .. } => {
                            s.maxima += 1;
                            s.d += lr as i64;
                        }
                        Token::Cup { lr, .. } => {
                            s.minima += 1;
                            s.d -= lr as i64;
                        }
                        t @ Token::Cross { .. } => {
                            s.crossings += 1;
                            let other = owner[&(v.row, v.token, 1 - v.piece)];
                            if other == c && v.piece == 0 {
                                s.f += t.writhe().unwrap() as i64;
                            }
                        }
                        _ => {}
                    }
                }
                s
            })
            .collect()
    }

    /// `other` pasted on top of `self`.
    pub fn stacked(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        let top = self.top();
        if top.len() != other.bottom.len() {
            return Err(DiagramError::Dangling { row: self.rows.len(), expected: other.bottom.len(), found: top.len() });
        }
        check_legs(self.rows.len(), 0, &top, &other.bottom)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Diagram::new(self.colored || other.colored, self.bottom.clone(), rows)
    }

    /// `other` placed to the right of `self`, below it in scan order.
    pub fn beside(&self, other: &Diagram) -> Diagram {
        let strands = |legs: &[Leg]| legs.iter().map(|&l| Token::Strand(l)).collect::<Vec<_>>();
        let mut rows: Vec<Vec<Token>> = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.extend(strands(&other.bottom));
                r
            })
            .collect();
        let left = strands(&self.top());
        rows.extend(other.rows.iter().map(|r| left.iter().chain(r).copied().collect()));
        let mut bottom = self.bottom.clone();
        bottom.extend(other.bottom.iter().copied());
        Diagram::new(self.colored || other.colored, bottom, rows).expect("juxtaposition of valid diagrams")
    }
}
