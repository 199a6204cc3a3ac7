//! State sums over the summation indices of crossing labels.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::exact::{Field, SparseTensor, Vector};

const UNSET: u16 = u16::MAX;

/// One factor in the word of a component.
#[derive(Clone, Debug)]
pub enum Item {
    Const(Vector),
    /// The leg of a crossing label; `values[a]` is its a-th term, already
    /// transformed for the strand orientation.
    Leg {
        crossing: usize,
        values: Vec<Vector>,
    },
}

/// The label word of one component, multiplied left to right.
#[derive(Clone, Debug)]
pub struct Word {
    pub algebra: Arc<Algebra>,
    pub items: Vec<Item>,
}

fn crossings_of(w: &Word) -> Vec<usize> {
    let mut v: Vec<usize> = w
        .items
        .iter()
        .filter_map(|i| match i {
            Item::Leg { crossing, .. } => Some(*crossing),
            Item::Const(_) => None,
        })
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Processing order: repeatedly take the component sharing the most
/// crossings with those already taken, so summation indices close early.
fn greedy_order(words: &[Word]) -> Vec<usize> {
    let sets: Vec<Vec<usize>> = words.iter().map(crossings_of).collect();
    let mut open: Vec<usize> = Vec::new();
    let mut order = Vec::new();
    let mut left: Vec<usize> = (0..words.len()).collect();
    while !left.is_empty() {
        let score = |w: usize| {
            let shared = sets[w].iter().filter(|c| open.contains(c)).count() as i64;
            let fresh = sets[w].len() as i64 - shared;
            (shared - fresh, -(w as i64))
        };
        let best = *left.iter().max_by_key(|&&w| score(w)).unwrap();
        left.retain(|&w| w != best);
        for &c in &sets[best] {
            if let Some(p) = open.iter().position(|&x| x == c) {
                open.remove(p);
            } else {
                open.push(c);
            }
        }
        order.push(best);
    }
    order
}

fn right_mul_last(t: &SparseTensor, v: &Vector, alg: &Algebra) -> SparseTensor {
    let last = t.arity() - 1;
    t.map_vector_slot(last, alg.dim(), |i| alg.mul(&alg.basis(i), v))
}

fn accumulate(states: Vec<(Vec<u16>, SparseTensor)>, dims: &[usize], field: Field) -> BTreeMap<Vec<u16>, SparseTensor> {
    let one = field.one();
    let mut out: BTreeMap<Vec<u16>, SparseTensor> = BTreeMap::new();
    for (k, t) in states {
        out.entry(k).or_insert_with(|| SparseTensor::zero(dims.to_vec())).add_scaled(&t, &one);
    }
    out.retain(|_, t| !t.is_zero());
    out
}

/// `Σ ⊗_w (product of the word w)` over all values of the crossing indices.
/// The result has one slot per word, in the given order.
pub fn state_sum(words: &[Word], ncross: usize, field: Field) -> SparseTensor {
    let order = greedy_order(words);
    let mut last: Vec<Option<(usize, usize)>> = vec![None; ncross];
    for (pos, &w) in order.iter().enumerate() {
        for (i, item) in words[w].items.iter().enumerate() {
            if let Item::Leg { crossing, .. } = item {
                last[*crossing] = Some((pos, i));
            }
        }
    }
    let mut dims: Vec<usize> = Vec::new();
    let mut states: BTreeMap<Vec<u16>, SparseTensor> = BTreeMap::new();
    states.insert(vec![UNSET; ncross], SparseTensor::scalar(field.one()));
    for (pos, &w) in order.iter().enumerate() {
        let alg = &words[w].algebra;
        dims.push(alg.dim());
        let unit = SparseTensor::from_vector(alg.dim(), alg.unit());
        states = states.into_iter().map(|(k, t)| (k, t.tensor(&unit))).collect();
        for (i, item) in words[w].items.iter().enumerate() {
            let closing: Vec<usize> = (0..ncross).filter(|&c| last[c] == Some((pos, i))).collect();
            let next: Vec<(Vec<u16>, SparseTensor)> = states
                .par_iter()
                .flat_map_iter(|(key, t)| -> Vec<(Vec<u16>, SparseTensor)> {
                    let mut out = match item {
                        Item::Const(v) => vec![(key.clone(), right_mul_last(t, v, alg))],
                        Item::Leg { crossing, values } => {
                            let c = *crossing;
                            if key[c] != UNSET {
                                vec![(key.clone(), right_mul_last(t, &values[key[c] as usize], alg))]
                            } else {
                                values
                                    .iter()
                                    .enumerate()
                                    .map(|(a, v)| {
                                        let mut k = key.clone();
                                        k[c] = a as u16;
                                        (k, right_mul_last(t, v, alg))
                                    })
                                    .collect()
                            }
                        }
                    };
                    for (k, _) in out.iter_mut() {
                        for &c in &closing {
                            k[c] = UNSET;
                        }
                    }
                    out
                })
                .collect();
            states = accumulate(next, &dims, field);
        }
    }
    let mut total = SparseTensor::zero(dims.clone());
    for t in states.values() {
        total = total.add(t);
    }
    // slot p holds word order[p]; put word w back in slot w
    let perm: Vec<usize> = (0..words.len()).map(|w| order.iter().position(|&x| x == w).unwrap()).collect();
    total.permute(&perm)
}
