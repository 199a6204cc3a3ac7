use serde::Serialize;

use crate::exact::SparseTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    J,
    JPrime,
    JDoublePrime,
    JZero,
    PhiJ,
}

/// What one tensor slot of an invariant holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotInfo {
    pub open: bool,
    pub target: String,
    /// Dimension of the slot: the algebra for open components, the
    /// commutator quotient for closed ones.
    pub dim: usize,
}

impl SlotInfo {
    pub fn new(open: bool, target: &str, dim: usize, quotient_dim: usize) -> SlotInfo {
        SlotInfo { open, target: if open { target.to_string() } else { format!("{target}/N") }, dim: if open { dim } else { quotient_dim } }
    }
}

/// An invariant: one tensor slot per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue {
    pub mode: Mode,
    pub algebra: String,
    pub slots: Vec<SlotInfo>,
    pub tensor: SparseTensor,
}

#[derive(Serialize)]
struct Term {
    index: Vec<u32>,
    coeff: String,
}

#[derive(Serialize)]
struct Report<'a> {
    mode: Mode,
    algebra: &'a str,
    components: &'a [SlotInfo],
    terms: Vec<Term>,
}

impl InvariantValue {
    fn terms(&self) -> Vec<Term> {
        self.tensor.iter().map(|(k, s)| Term { index: k.clone(), coeff: s.to_text() }).collect()
    }

    pub fn to_json(&self) -> String {
        let r = Report { mode: self.mode, algebra: &self.algebra, components: &self.slots, terms: self.terms() };
        serde_json::to_string_pretty(&r).expect("invariant serializes")
    }

    /// The same content as [`InvariantValue::to_json`], one line per item.
    pub fn to_text(&self) -> String {
        let mut out = format!("mode {:?}\nalgebra {}\n", self.mode, self.algebra);
        for (i, s) in self.slots.iter().enumerate() {
            let kind = if s.open { "open" } else { "closed" };
            out.push_str(&format!("component {i} {kind} {} dim {}\n", s.target, s.dim));
        }
        for t in self.terms() {
            let idx: Vec<String> = t.index.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("term [{}] {}\n", idx.join(","), t.coeff));
        }
        out
    }
}
