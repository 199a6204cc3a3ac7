//! Finite-dimensional Hopf algebras by structure constants.

mod builtins;
mod io;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::exact::{Field, Matrix, Scalar, Solution, SparseTensor, Vector};

pub use builtins::{builtin, function_algebra, group_algebra, sweedler4, trivial, Group, BUILTIN_NAMES};
pub use io::{from_json, to_json, HopfFileError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HopfError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("antipode is not invertible")]
    SingularAntipode,
    #[error("no antipode solves the antipode axiom")]
    NoAntipode,
    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),
}

/// Names of the checked axioms, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    Bialgebra,
    Antipode,
    AntipodeInverse,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::Bialgebra => "bialgebra",
            Axiom::Antipode => "antipode",
            Axiom::AntipodeInverse => "antipode_inverse",
        };
        f.write_str(s)
    }
}

/// First failing axiom with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<u32>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at basis {:?}", self.axiom, self.witness)
    }
}

/// A Hopf algebra `(A, η, m, ε, Δ, γ)` on the basis `e_0..e_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hopf {
    pub name: String,
    pub field: Field,
    dim: usize,
    unit: Vector,
    counit: Vector,
    /// `mult[a*n+b] = e_a e_b`.
    mult: Vec<Vector>,
    /// `comult[a] = Δ(e_a)`.
    comult: Vec<SparseTensor>,
    /// `antipode[a] = γ(e_a)`.
    antipode: Vec<Vector>,
    antipode_inv: Vec<Vector>,
}

impl Hopf {
    /// Assembles a presentation; γ̄ is computed from γ.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        unit: Vector,
        counit: Vector,
        mult: Vec<Vector>,
        comult: Vec<SparseTensor>,
        antipode: Vec<Vector>,
    ) -> Result<Hopf, HopfError> {
        let dim = antipode.len();
        if mult.len() != dim * dim || comult.len() != dim {
            return Err(HopfError::Dimension(format!("dim {dim}: mult has {} products, comult {} entries", mult.len(), comult.len())));
        }
        let out_of_range = |v: &Vector| v.max_index().is_some_and(|i| i as usize >= dim);
        if out_of_range(&unit)
            || out_of_range(&counit)
            || mult.iter().any(out_of_range)
            || antipode.iter().any(out_of_range)
            || comult.iter().any(|t| t.dims() != [dim, dim])
        {
            return Err(HopfError::Dimension("basis index out of range".into()));
        }
        let antipode_inv = invert_map(field, dim, &antipode).ok_or(HopfError::SingularAntipode)?;
        Ok(Hopf { name: name.into(), field, dim, unit, counit, mult, comult, antipode, antipode_inv })
    }

    /// Like `new` but solves the antipode axiom for γ.
    pub fn with_solved_antipode(
        name: impl Into<String>,
        field: Field,
        unit: Vector,
        counit: Vector,
        mult: Vec<Vector>,
        comult: Vec<SparseTensor>,
    ) -> Result<Hopf, HopfError> {
        let dim = comult.len();
        let antipode = solve_antipode(field, dim, &unit, &counit, &mult, &comult)?;
        Hopf::new(name, field, unit, counit, mult, comult, antipode)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }

    pub fn mul_basis(&self, a: u32, b: u32) -> &Vector {
        &self.mult[a as usize * self.dim + b as usize]
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (a, s) in x.iter() {
            for (b, t) in y.iter() {
                out.add_scaled(self.mul_basis(a, b), &(s * t));
            }
        }
        out
    }

    pub fn comul_basis(&self, a: u32) -> &SparseTensor {
        &self.comult[a as usize]
    }

    pub fn comul(&self, x: &Vector) -> SparseTensor {
        let mut out = SparseTensor::zero(vec![self.dim, self.dim]);
        for (a, s) in x.iter() {
            out.add_scaled(&self.comult[a as usize], s);
        }
        out
    }

    /// `Δ²(e_a) = (Δ⊗1)Δ(e_a)` as an arity-3 tensor.
    pub fn comul2_basis(&self, a: u32) -> SparseTensor {
        let n = self.dim;
        self.comult[a as usize].map_slot(0, &[n, n], |i| self.comult[i as usize].clone())
    }

    pub fn counit_of(&self, x: &Vector) -> Scalar {
        x.dot(&self.counit, self.field)
    }

    pub fn antipode_basis(&self, a: u32) -> &Vector {
        &self.antipode[a as usize]
    }

    pub fn antipode_inv_basis(&self, a: u32) -> &Vector {
        &self.antipode_inv[a as usize]
    }

    pub fn antipode(&self, x: &Vector) -> Vector {
        x.map(|a| self.antipode[a as usize].clone())
    }

    pub fn antipode_inv(&self, x: &Vector) -> Vector {
        x.map(|a| self.antipode_inv[a as usize].clone())
    }

    pub fn basis(&self, a: u32) -> Vector {
        Vector::basis(a, self.field)
    }

    /// The underlying algebra.
    pub fn algebra(&self) -> Algebra {
        Algebra::from_fn(self.name.clone(), self.field, self.dim, self.unit.clone(), |a, b| self.mul_basis(a, b).clone())
    }

    pub fn algebra_arc(&self) -> Arc<Algebra> {
        Arc::new(self.algebra())
    }

    /// Matrix of γ (column a = γ(e_a)).
    pub fn antipode_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.dim, &self.antipode)
    }

    pub fn antipode_squared_is_identity(&self) -> bool {
        (0..self.dim as u32).all(|a| self.antipode(&self.antipode[a as usize]) == self.basis(a))
    }

    /// Checks all Hopf algebra axioms, reporting the first failure.
    pub fn validate(&self) -> Result<(), AxiomFailure> {
        let n = self.dim as u32;
        let fail = |axiom, witness: Vec<u32>| Err(AxiomFailure { axiom, witness });
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul_basis(a, b);
                for c in 0..n {
                    let l = self.mul(ab, &self.basis(c));
                    let r = self.mul(&self.basis(a), self.mul_basis(b, c));
                    if l != r {
                        return fail(Axiom::Associativity, vec![a, b, c]);
                    }
                }
            }
        }
        for a in 0..n {
            let e = self.basis(a);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return fail(Axiom::Unit, vec![a]);
            }
        }
        for a in 0..n {
            let left = self.comul2_basis(a);
            let right = self.comult[a as usize].map_slot(1, &[self.dim, self.dim], |i| self.comult[i as usize].clone());
            if left != right {
                return fail(Axiom::Coassociativity, vec![a]);
            }
        }
        for a in 0..n {
            let e = self.basis(a);
            let d = &self.comult[a as usize];
            let mut l = Vector::zero();
            let mut r = Vector::zero();
            for (k, s) in d.iter() {
                if let Some(c) = self.counit.get(k[0]) {
                    l.add_term(k[1], &(s * c));
                }
                if let Some(c) = self.counit.get(k[1]) {
                    r.add_term(k[0], &(s * c));
                }
            }
            if l != e || r != e {
                return fail(Axiom::Counit, vec![a]);
            }
        }
        let one = self.field.one();
        let unit2 = SparseTensor::pure(vec![self.dim, self.dim], &[&self.unit, &self.unit]);
        if self.comul(&self.unit) != unit2 || self.counit_of(&self.unit) != one {
            return fail(Axiom::Bialgebra, vec![]);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul_basis(a, b);
                let lhs = self.comul(ab);
                let rhs = self.tensor_mul(&self.comult[a as usize], &self.comult[b as usize]);
                let ea = self.counit.get(a).cloned().unwrap_or(self.field.zero());
                let eb = self.counit.get(b).cloned().unwrap_or(self.field.zero());
                if lhs != rhs || self.counit_of(ab) != &ea * &eb {
                    return fail(Axiom::Bialgebra, vec![a, b]);
                }
            }
        }
        for a in 0..n {
            let target = self.unit.scale(&self.counit.get(a).cloned().unwrap_or(self.field.zero()));
            let mut l = Vector::zero();
            let mut r = Vector::zero();
            for (k, s) in self.comult[a as usize].iter() {
                l.add_scaled(&self.mul(&self.antipode[k[0] as usize], &self.basis(k[1])), s);
                r.add_scaled(&self.mul(&self.basis(k[0]), &self.antipode[k[1] as usize]), s);
            }
            if l != target || r != target {
                return fail(Axiom::Antipode, vec![a]);
            }
        }
        for a in 0..n {
            if self.antipode_inv(&self.antipode[a as usize]) != self.basis(a) || self.antipode(&self.antipode_inv[a as usize]) != self.basis(a) {
                return fail(Axiom::AntipodeInverse, vec![a]);
            }
        }
        Ok(())
    }

    /// Product in `A⊗A`.
    fn tensor_mul(&self, x: &SparseTensor, y: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::zero(vec![self.dim, self.dim]);
        for (a, s) in x.iter() {
            for (b, t) in y.iter() {
                let st = s * t;
                for (i, u) in self.mul_basis(a[0], b[0]).iter() {
                    for (j, v) in self.mul_basis(a[1], b[1]).iter() {
                        out.add_term(vec![i, j], &(&st * &(u * v)));
                    }
                }
            }
        }
        out
    }

    /// The dual Hopf algebra `A*` on the dual basis, via transposes.
    pub fn dual(&self) -> Hopf {
        let n = self.dim;
        let mut mult = vec![Vector::zero(); n * n];
        for c in 0..n {
            for (k, s) in self.comult[c].iter() {
                mult[k[0] as usize * n + k[1] as usize].add_term(c as u32, s);
            }
        }
        let mut comult = vec![SparseTensor::zero(vec![n, n]); n];
        for a in 0..n {
            for b in 0..n {
                for (c, s) in self.mult[a * n + b].iter() {
                    comult[c as usize].add_term(vec![a as u32, b as u32], s);
                }
            }
        }
        Hopf {
            name: format!("{}*", self.name),
            field: self.field,
            dim: n,
            unit: self.counit.clone(),
            counit: self.unit.clone(),
            mult,
            comult,
            antipode: transpose(n, &self.antipode),
            antipode_inv: transpose(n, &self.antipode_inv),
        }
    }

    /// `A^op = (A, η, m^op, ε, Δ, γ̄, γ)`.
    pub fn opposite(&self) -> Hopf {
        Hopf {
            name: format!("{}^op", self.name),
            mult: self.flipped_mult(),
            antipode: self.antipode_inv.clone(),
            antipode_inv: self.antipode.clone(),
            ..self.clone()
        }
    }

    /// `A^cop = (A, η, m, ε, Δ^op, γ̄, γ)`.
    pub fn co_opposite(&self) -> Hopf {
        Hopf {
            name: format!("{}^cop", self.name),
            comult: self.flipped_comult(),
            antipode: self.antipode_inv.clone(),
            antipode_inv: self.antipode.clone(),
            ..self.clone()
        }
    }

    /// `A^opcop = (A, η, m^op, ε, Δ^op, γ, γ̄)`.
    pub fn op_cop(&self) -> Hopf {
        Hopf { name: format!("{}^opcop", self.name), mult: self.flipped_mult(), comult: self.flipped_comult(), ..self.clone() }
    }

    fn flipped_mult(&self) -> Vec<Vector> {
        let n = self.dim;
        (0..n * n).map(|k| self.mult[(k % n) * n + k / n].clone()).collect()
    }

    fn flipped_comult(&self) -> Vec<SparseTensor> {
        self.comult.iter().map(|t| t.permute(&[1, 0])).collect()
    }

    /// Structural equality ignoring the name.
    pub fn same_structure(&self, other: &Hopf) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.counit == other.counit
            && self.mult == other.mult
            && self.comult == other.comult
            && self.antipode == other.antipode
            && self.antipode_inv == other.antipode_inv
    }

    /// Copy with one structure constant shifted by `delta`; used to test
    /// that validation detects corrupted input.
    pub fn mutated(&self, site: MutationSite, delta: &Scalar) -> Hopf {
        let mut h = self.clone();
        match site {
            MutationSite::Unit(i) => h.unit.add_term(i, delta),
            MutationSite::Counit(i) => h.counit.add_term(i, delta),
            MutationSite::Mult(a, b, c) => h.mult[(a as usize) * h.dim + b as usize].add_term(c, delta),
            MutationSite::Comult(a, b, c) => h.comult[a as usize].add_term(vec![b, c], delta),
            MutationSite::Antipode(a, b) => h.antipode[a as usize].add_term(b, delta),
        }
        h
    }

    /// Every structure-constant position (dense), for mutation testing.
    pub fn mutation_sites(&self) -> Vec<MutationSite> {
        let n = self.dim as u32;
        let mut out = Vec::new();
        for i in 0..n {
            out.push(MutationSite::Unit(i));
            out.push(MutationSite::Counit(i));
        }
        for a in 0..n {
            for b in 0..n {
                out.push(MutationSite::Antipode(a, b));
                for c in 0..n {
                    out.push(MutationSite::Mult(a, b, c));
                    out.push(MutationSite::Comult(a, b, c));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationSite {
    Unit(u32),
    Counit(u32),
    Mult(u32, u32, u32),
    Comult(u32, u32, u32),
    Antipode(u32, u32),
}

/// `γ*(e^a) = e^a∘γ`, i.e. the transpose of the matrix of γ.
fn transpose(n: usize, map: &[Vector]) -> Vec<Vector> {
    let mut out = vec![Vector::zero(); n];
    for (b, v) in map.iter().enumerate() {
        for (a, s) in v.iter() {
            out[a as usize].add_term(b as u32, s);
        }
    }
    out
}

fn invert_map(field: Field, n: usize, map: &[Vector]) -> Option<Vec<Vector>> {
    let inv = Matrix::from_columns(field, n, map).inverse().ok()?;
    Some((0..n).map(|j| inv.column(j)).collect())
}

/// Solves `m(γ⊗1)Δ = ηε` for γ as a linear system in the matrix entries.
fn solve_antipode(
    field: Field,
    n: usize,
    unit: &Vector,
    counit: &Vector,
    mult: &[Vector],
    comult: &[SparseTensor],
) -> Result<Vec<Vector>, HopfError> {
    // Unknown x[a*n+k] is the coefficient of e_k in γ(e_a).
    let mut m = Matrix::zeros(field, n * n, n * n);
    let mut rhs = vec![field.zero(); n * n];
    for c in 0..n {
        for (key, s) in comult[c].iter() {
            let (a, b) = (key[0] as usize, key[1] as usize);
            for k in 0..n {
                for (out, t) in mult[k * n + b].iter() {
                    let row = c * n + out as usize;
                    let col = a * n + k;
                    let v = m.get(row, col) + &(s * t);
                    m.set(row, col, v);
                }
            }
        }
        if let Some(e) = counit.get(c as u32) {
            for (out, t) in unit.iter() {
                rhs[c * n + out as usize] = e * t;
            }
        }
    }
    let x = match m.solve(&rhs) {
        Ok(Solution::Unique(x)) => x,
        Ok(Solution::Underdetermined { particular, .. }) => particular,
        Err(_) => return Err(HopfError::NoAntipode),
    };
    Ok((0..n).map(|a| Vector::from_dense(&x[a * n..(a + 1) * n])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn builtins_validate() {
        for f in [Field::Rational, Field::prime(5).unwrap()] {
            for name in BUILTIN_NAMES {
                let h = builtin(name, f).unwrap();
                assert_eq!(h.validate(), Ok(()), "{name} over {f}");
            }
        }
    }

    #[test]
    fn corrupted_group_algebra_fails() {
        let h = builtin("zmod2", q()).unwrap();
        let bad = h.mutated(MutationSite::Mult(1, 1, 1), &q().one());
        assert!(bad.validate().is_err());
    }

    #[test]
    fn antipode_facts() {
        let z2 = builtin("zmod2", q()).unwrap();
        assert_eq!(z2.antipode_matrix(), Matrix::identity(q(), 2));
        let z3 = builtin("zmod3", q()).unwrap();
        assert_eq!(z3.antipode_basis(1), &Vector::basis(2, q()));
        let sw = builtin("sweedler4", q()).unwrap();
        assert!(!sw.antipode_squared_is_identity());
        assert_eq!(sw.antipode_basis(2), &Vector::from_terms([(3, q().int(-1))]));
        assert_eq!(sw.antipode_basis(3), &Vector::basis(2, q()));
        for name in ["zmod2", "zmod3", "zmod4", "s3"] {
            assert!(builtin(name, q()).unwrap().antipode_squared_is_identity());
        }
    }

    #[test]
    fn duals_and_opposites() {
        for name in BUILTIN_NAMES {
            let h = builtin(name, q()).unwrap();
            let d = h.dual();
            assert_eq!(d.validate(), Ok(()), "dual of {name}");
            assert!(d.dual().same_structure(&h));
            assert!(h.opposite().opposite().same_structure(&h));
            assert_eq!(h.opposite().validate(), Ok(()));
            assert_eq!(h.co_opposite().validate(), Ok(()));
            assert_eq!(h.op_cop().validate(), Ok(()));
        }
        let z2 = builtin("zmod2", q()).unwrap();
        assert!(z2.opposite().same_structure(&{
            let mut o = z2.clone();
            o.name = String::new();
            o
        }));
        // the dual of k[Z/2] is the function algebra with pointwise product
        assert!(z2.dual().same_structure(&builtin("fun_zmod2", q()).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        for name in ["sweedler4", "s3"] {
            for f in [q(), Field::prime(5).unwrap()] {
                let h = builtin(name, f).unwrap();
                let back = from_json(&to_json(&h)).unwrap();
                assert!(back.same_structure(&h));
            }
        }
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(from_json("{").is_err());
        let bad = r#"{"field":{"kind":"Fp","p":6},"dim":1,"unit":[1],"counit":[1],
            "mult":[[0,0,0,1]],"comult":[[0,0,0,1]],"antipode":[[0,0,1]]}"#;
        assert!(matches!(from_json(bad), Err(HopfFileError::Field(_))));
        let range = r#"{"field":{"kind":"Q"},"dim":1,"unit":[1],"counit":[1],
            "mult":[[0,0,3,1]],"comult":[[0,0,0,1]],"antipode":[[0,0,1]]}"#;
        assert!(matches!(from_json(range), Err(HopfFileError::Index { .. })));
        let ok = r#"{"field":{"kind":"Q"},"dim":1,"unit":[1],"counit":["1"],
            "mult":[[0,0,0,1]],"comult":[[0,0,0,1]],"antipode":[[0,0,1]]}"#;
        assert_eq!(from_json(ok).unwrap().validate(), Ok(()));
    }
}
