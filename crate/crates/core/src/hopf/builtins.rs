use crate::exact::{Field, SparseTensor, Vector};

use super::{Hopf, HopfError};

pub const BUILTIN_NAMES: &[&str] = &["trivial", "zmod2", "zmod3", "zmod4", "s3", "sweedler4", "fun_zmod2", "fun_zmod3", "fun_s3"];

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub name: String,
    pub order: usize,
    table: Vec<usize>,
}

impl Group {
    pub fn cyclic(n: usize) -> Group {
        Group { name: format!("Z/{n}"), order: n, table: (0..n * n).map(|k| (k / n + k % n) % n).collect() }
    }

    /// S₃ with elements listed as permutations of {0,1,2} in lexicographic
    /// order, so element 0 is the identity.
    pub fn s3() -> Group {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut table = Vec::with_capacity(36);
        for a in &perms {
            for b in &perms {
                // (ab)(i) = a(b(i))
                table.push(index([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        Group { name: "S3".into(), order: 6, table }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.mul(a, b) == 0).unwrap()
    }
}

/// Group algebra k[G]: Δ(g) = g⊗g, ε(g) = 1, γ(g) = g⁻¹.
pub fn group_algebra(g: &Group, field: Field) -> Hopf {
    let n = g.order;
    let mult = (0..n * n).map(|k| Vector::basis(g.mul(k / n, k % n) as u32, field)).collect();
    let comult = (0..n as u32).map(|a| SparseTensor::basis(vec![n, n], vec![a, a], field)).collect();
    let antipode = (0..n).map(|a| Vector::basis(g.inv(a) as u32, field)).collect();
    let counit = Vector::from_terms((0..n as u32).map(|a| (a, field.one())));
    Hopf::new(format!("k[{}]", g.name), field, Vector::basis(0, field), counit, mult, comult, antipode).expect("group algebra is well formed")
}

/// Function algebra k^G on the delta basis: pointwise product,
/// Δ(δ_g) = Σ_{hk=g} δ_h⊗δ_k, ε(δ_g) = [g = 1], γ(δ_g) = δ_{g⁻¹}.
pub fn function_algebra(g: &Group, field: Field) -> Hopf {
    let n = g.order;
    let mult = (0..n * n).map(|k| if k / n == k % n { Vector::basis((k / n) as u32, field) } else { Vector::zero() }).collect();
    let mut comult = vec![SparseTensor::zero(vec![n, n]); n];
    for h in 0..n {
        for k in 0..n {
            comult[g.mul(h, k)].add_term(vec![h as u32, k as u32], &field.one());
        }
    }
    let antipode = (0..n).map(|a| Vector::basis(g.inv(a) as u32, field)).collect();
    let unit = Vector::from_terms((0..n as u32).map(|a| (a, field.one())));
    Hopf::new(format!("k^{}", g.name), field, unit, Vector::basis(0, field), mult, comult, antipode).expect("function algebra is well formed")
}

/// Sweedler's 4-dimensional Hopf algebra. Basis index `a + 2b` stands for
/// `g^a x^b`: g² = 1, x² = 0, xg = -gx, Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x,
/// ε(g) = 1, ε(x) = 0. The antipode is obtained by solving the antipode
/// axiom and comes out as γ(g) = g, γ(x) = -gx, γ(gx) = x, so γ² ≠ 1.
pub fn sweedler4(field: Field) -> Hopf {
    let f = field;
    let mult = (0..16u32)
        .map(|k| {
            let (p, q) = (k / 4, k % 4);
            let (a1, b1) = (p % 2, p / 2);
            let (a2, b2) = (q % 2, q / 2);
            if b1 == 1 && b2 == 1 {
                return Vector::zero();
            }
            // g^a1 x^b1 g^a2 x^b2 = (-1)^{b1 a2} g^{a1+a2} x^{b1+b2}
            let sign = if b1 == 1 && a2 == 1 { -1 } else { 1 };
            Vector::from_terms([((a1 + a2) % 2 + 2 * (b1 + b2), f.int(sign))])
        })
        .collect();
    let mut comult = vec![SparseTensor::zero(vec![4, 4]); 4];
    comult[0].add_term(vec![0, 0], &f.one());
    comult[1].add_term(vec![1, 1], &f.one());
    // Δ(x) = x⊗1 + g⊗x
    comult[2].add_term(vec![2, 0], &f.one());
    comult[2].add_term(vec![1, 2], &f.one());
    // Δ(gx) = Δ(g)Δ(x) = gx⊗g + 1⊗gx
    comult[3].add_term(vec![3, 1], &f.one());
    comult[3].add_term(vec![0, 3], &f.one());
    let counit = Vector::from_terms([(0, f.one()), (1, f.one())]);
    Hopf::with_solved_antipode("sweedler4", f, Vector::basis(0, f), counit, mult, comult).expect("Sweedler algebra has an antipode")
}

/// The one-dimensional Hopf algebra k.
pub fn trivial(field: Field) -> Hopf {
    group_algebra(&Group::cyclic(1), field)
}

/// Looks up a builtin by name: `trivial`, `zmodN`, `s3`, `sweedler4`,
/// `fun_zmodN`, `fun_s3`.
pub fn builtin(name: &str, field: Field) -> Result<Hopf, HopfError> {
    let unknown = || HopfError::UnknownBuiltin(name.to_string());
    let group = |g: &str| -> Option<Group> {
        if g == "s3" {
            return Some(Group::s3());
        }
        let n: usize = g.strip_prefix("zmod")?.parse().ok()?;
        (1..=12).contains(&n).then(|| Group::cyclic(n))
    };
    let mut h = match name {
        "trivial" => trivial(field),
        "sweedler4" => {
            if field.characteristic() == 2 {
                return Err(unknown());
            }
            sweedler4(field)
        }
        _ => match name.strip_prefix("fun_") {
            Some(g) => function_algebra(&group(g).ok_or_else(unknown)?, field),
            None => group_algebra(&group(name).ok_or_else(unknown)?, field),
        },
    };
    h.name = name.to_string();
    Ok(h)
}
