use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::DiagramError;

/// Orientation and thickness of one strand end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leg {
    pub up: bool,
    pub thick: bool,
}

impl Leg {
    pub const UP: Leg = Leg { up: true, thick: false };
    pub const DOWN: Leg = Leg { up: false, thick: false };

    pub fn thin(up: bool) -> Leg {
        Leg { up, thick: false }
    }

    pub fn thick(up: bool) -> Leg {
        Leg { up, thick: true }
    }

    pub fn flipped(self) -> Leg {
        Leg { up: !self.up, ..self }
    }
}

/// A fundamental tangle.
///
/// Crossings are geometric: `positive` means the strand running from
/// bottom-left to top-right (strand A) passes over. `legs` are the bottom
/// ends `[A, B]`; the top ends are `[B, A]`. For caps and cups `lr` means
/// the strand is traversed from left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Strand(Leg),
    Cap { lr: bool, thick: bool },
    Cup { lr: bool, thick: bool },
    Cross { positive: bool, legs: [Leg; 2] },
    Sym { legs: [Leg; 2] },
}

/// End of a piece: a bottom or top leg of its token, by local index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Bottom(usize),
    Top(usize),
}

/// One arc of a token, listed in the direction of travel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Piece {
    pub from: End,
    pub to: End,
}

impl Token {
    pub fn bottom(&self) -> Vec<Leg> {
        match *self {
            Token::Strand(l) => vec![l],
            Token::Cap { lr, thick } => vec![Leg { up: lr, thick }, Leg { up: !lr, thick }],
            Token::Cup { .. } => vec![],
            Token::Cross { legs, .. } | Token::Sym { legs } => legs.to_vec(),
        }
    }

    pub fn top(&self) -> Vec<Leg> {
        match *self {
            Token::Strand(l) => vec![l],
            Token::Cap { .. } => vec![],
            Token::Cup { lr, thick } => vec![Leg { up: !lr, thick }, Leg { up: lr, thick }],
            Token::Cross { legs, .. } | Token::Sym { legs } => vec![legs[1], legs[0]],
        }
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let arc = |a: End, b: End, forward: bool| if forward { Piece { from: a, to: b } } else { Piece { from: b, to: a } };
        match *self {
            Token::Strand(l) => vec![arc(End::Bottom(0), End::Top(0), l.up)],
            Token::Cap { lr, .. } => vec![arc(End::Bottom(0), End::Bottom(1), lr)],
            Token::Cup { lr, .. } => vec![arc(End::Top(0), End::Top(1), lr)],
            Token::Cross { legs, .. } | Token::Sym { legs } => {
                vec![arc(End::Bottom(0), End::Top(1), legs[0].up), arc(End::Bottom(1), End::Top(0), legs[1].up)]
            }
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Token::Cross { .. })
    }

    pub fn is_thick_anywhere(&self) -> bool {
        self.bottom().iter().chain(self.top().iter()).any(|l| l.thick)
    }

    /// Oriented sign of a crossing: +1 or -1.
    pub fn writhe(&self) -> Option<i32> {
        match *self {
            Token::Cross { positive, legs } => {
                let s = if positive { 1 } else { -1 };
                Some(if legs[0].up == legs[1].up { s } else { -s })
            }
            _ => None,
        }
    }

    /// Index of the piece passing over at a crossing.
    pub fn over_piece(&self) -> Option<usize> {
        match *self {
            Token::Cross { positive, .. } => Some(if positive { 0 } else { 1 }),
            _ => None,
        }
    }

    /// The same tangle with the other crossing sign.
    pub fn mirrored(&self) -> Token {
        match *self {
            Token::Cross { positive, legs } => Token::Cross { positive: !positive, legs },
            t => t,
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(super) struct RawToken {
    kind: String,
    orient: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    thick: Option<Value>,
}

fn orient_up(v: &Value) -> Option<bool> {
    match v.as_str()? {
        "up" => Some(true),
        "down" => Some(false),
        _ => None,
    }
}

fn up_name(up: bool) -> Value {
    Value::from(if up { "up" } else { "down" })
}

impl RawToken {
    pub(super) fn decode(&self, at: (usize, usize)) -> Result<Token, DiagramError> {
        let bad = |what: &str| DiagramError::Malformed { row: at.0, token: at.1, reason: what.to_string() };
        let thick1 = || match &self.thick {
            None => Ok(false),
            Some(v) => v.as_bool().ok_or_else(|| bad("thick must be a boolean")),
        };
        let pair = |v: Option<&Value>, f: &dyn Fn(&Value) -> Option<bool>| -> Result<[bool; 2], DiagramError> {
            match v {
                None => Ok([false, false]),
                Some(Value::Array(a)) if a.len() == 2 => {
                    let x = f(&a[0]).ok_or_else(|| bad("bad pair entry"))?;
                    let y = f(&a[1]).ok_or_else(|| bad("bad pair entry"))?;
                    Ok([x, y])
                }
                Some(_) => Err(bad("expected a pair")),
            }
        };
        let legs = || -> Result<[Leg; 2], DiagramError> {
            let up = pair(Some(&self.orient), &orient_up)?;
            let th = pair(self.thick.as_ref(), &|v| v.as_bool())?;
            Ok([Leg { up: up[0], thick: th[0] }, Leg { up: up[1], thick: th[1] }])
        };
        let lr = || match self.orient.as_str() {
            Some("lr") => Ok(true),
            Some("rl") => Ok(false),
            _ => Err(bad("cap/cup orientation must be lr or rl")),
        };
        Ok(match self.kind.as_str() {
            "strand" => {
                Token::Strand(Leg { up: orient_up(&self.orient).ok_or_else(|| bad("strand orientation must be up or down"))?, thick: thick1()? })
            }
            "cap" => Token::Cap { lr: lr()?, thick: thick1()? },
            "cup" => Token::Cup { lr: lr()?, thick: thick1()? },
            "x+" => Token::Cross { positive: true, legs: legs()? },
            "x-" => Token::Cross { positive: false, legs: legs()? },
            "sym" => Token::Sym { legs: legs()? },
            k => return Err(bad(&format!("unknown token kind {k:?}"))),
        })
    }

    pub(super) fn encode(t: &Token, colored: bool) -> RawToken {
        let th = |b: bool| colored.then(|| Value::from(b));
        let lr = |b: bool| Value::from(if b { "lr" } else { "rl" });
        let two = |legs: [Leg; 2]| {
            (Value::from(vec![up_name(legs[0].up), up_name(legs[1].up)]), colored.then(|| Value::from(vec![legs[0].thick, legs[1].thick])))
        };
        let (kind, orient, thick) = match *t {
            Token::Strand(l) => ("strand", up_name(l.up), th(l.thick)),
            Token::Cap { lr: o, thick } => ("cap", lr(o), th(thick)),
            Token::Cup { lr: o, thick } => ("cup", lr(o), th(thick)),
            Token::Cross { positive, legs } => {
                let (o, t) = two(legs);
                (if positive { "x+" } else { "x-" }, o, t)
            }
            Token::Sym { legs } => {
                let (o, t) = two(legs);
                ("sym", o, t)
            }
        };
        RawToken { kind: kind.to_string(), orient, thick }
    }
}
