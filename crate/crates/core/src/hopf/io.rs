use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exact::{Field, Scalar, SparseTensor, Vector};

use super::{Hopf, HopfError};

#[derive(Debug, Error)]
pub enum HopfFileError {
    #[error("malformed algebra JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad coefficient {0}")]
    Coefficient(String),
    #[error("field: {0}")]
    Field(String),
    #[error("index {index} out of range for dim {dim}")]
    Index { index: u32, dim: usize },
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("supplied antipode_inv disagrees with the inverse of antipode")]
    AntipodeInverse,
}

#[derive(Serialize, Deserialize)]
struct HopfFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    field: Field,
    dim: usize,
    unit: Vec<Value>,
    counit: Vec<Value>,
    mult: Vec<(u32, u32, u32, Value)>,
    comult: Vec<(u32, u32, u32, Value)>,
    antipode: Vec<(u32, u32, Value)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antipode_inv: Option<Vec<(u32, u32, Value)>>,
}

fn coefficient(field: Field, v: &Value) -> Result<Scalar, HopfFileError> {
    let bad = || HopfFileError::Coefficient(v.to_string());
    match v {
        Value::Number(n) => Ok(field.int(n.as_i64().ok_or_else(bad)?)),
        Value::String(s) => field.parse(s).ok_or_else(bad),
        _ => Err(bad()),
    }
}

fn encode(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) if r.is_integer() => match s.to_text().parse::<i64>() {
            Ok(n) => Value::from(n),
            Err(_) => Value::from(s.to_text()),
        },
        Scalar::Mod { v, .. } => Value::from(*v),
        _ => Value::from(s.to_text()),
    }
}

/// Parses the algebra file format. Indices are 0-based; `mult` entries
/// `[a,b,c,k]` mean `e_a e_b` has coefficient k on `e_c`, `comult`
/// entries `[a,b,c,k]` mean `Δ(e_a)` has coefficient k on `e_b⊗e_c`, and
/// `antipode` entries `[a,b,k]` mean `γ(e_a)` has coefficient k on `e_b`.
pub fn from_json(text: &str) -> Result<Hopf, HopfFileError> {
    let file: HopfFile = serde_json::from_str(text)?;
    let field = match file.field {
        Field::Prime { p } => Field::prime(p).ok_or_else(|| HopfFileError::Field(format!("{p} is not a usable prime")))?,
        f => f,
    };
    let n = file.dim;
    let check = |i: u32| {
        if (i as usize) < n {
            Ok(())
        } else {
            Err(HopfFileError::Index { index: i, dim: n })
        }
    };
    let dense = |vals: &[Value], what: &str| -> Result<Vector, HopfFileError> {
        if vals.len() != n {
            return Err(HopfError::Dimension(format!("{what} has {} coordinates, dim is {n}", vals.len())).into());
        }
        let coords = vals.iter().map(|v| coefficient(field, v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Vector::from_dense(&coords))
    };
    let unit = dense(&file.unit, "unit")?;
    let counit = dense(&file.counit, "counit")?;
    let mut mult = vec![Vector::zero(); n * n];
    for (a, b, c, k) in &file.mult {
        check(*a)?;
        check(*b)?;
        check(*c)?;
        mult[*a as usize * n + *b as usize].add_term(*c, &coefficient(field, k)?);
    }
    let mut comult = vec![SparseTensor::zero(vec![n, n]); n];
    for (a, b, c, k) in &file.comult {
        check(*a)?;
        check(*b)?;
        check(*c)?;
        comult[*a as usize].add_term(vec![*b, *c], &coefficient(field, k)?);
    }
    let map = |entries: &[(u32, u32, Value)]| -> Result<Vec<Vector>, HopfFileError> {
        let mut out = vec![Vector::zero(); n];
        for (a, b, k) in entries {
            check(*a)?;
            check(*b)?;
            out[*a as usize].add_term(*b, &coefficient(field, k)?);
        }
        Ok(out)
    };
    let antipode = map(&file.antipode)?;
    let name = file.name.unwrap_or_else(|| "custom".into());
    let h = Hopf::new(name, field, unit, counit, mult, comult, antipode)?;
    if let Some(inv) = &file.antipode_inv {
        let given = map(inv)?;
        if (0..n as u32).any(|a| &given[a as usize] != h.antipode_inv_basis(a)) {
            return Err(HopfFileError::AntipodeInverse);
        }
    }
    Ok(h)
}

/// Serializes to the algebra file format, including `antipode_inv`.
pub fn to_json(h: &Hopf) -> String {
    let n = h.dim() as u32;
    let dense = |v: &Vector| -> Vec<Value> { v.to_dense(n as usize, h.field).iter().map(encode).collect() };
    let mut mult = Vec::new();
    let mut comult = Vec::new();
    let mut antipode = Vec::new();
    let mut antipode_inv = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for (c, s) in h.mul_basis(a, b).iter() {
                mult.push((a, b, c, encode(s)));
            }
        }
        for (k, s) in h.comul_basis(a).iter() {
            comult.push((a, k[0], k[1], encode(s)));
        }
        for (b, s) in h.antipode_basis(a).iter() {
            antipode.push((a, b, encode(s)));
        }
        for (b, s) in h.antipode_inv_basis(a).iter() {
            antipode_inv.push((a, b, encode(s)));
        }
    }
    let file = HopfFile {
        name: Some(h.name.clone()),
        field: h.field,
        dim: n as usize,
        unit: dense(h.unit()),
        counit: dense(h.counit()),
        mult,
        comult,
        antipode,
        antipode_inv: Some(antipode_inv),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}
