use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl Field {
    /// Builds a prime field, rejecting composite or tiny moduli.
    pub fn prime(p: u64) -> Option<Field> {
        if is_prime(p) && p < (1 << 31) {
            Some(Field::Prime { p })
        } else {
            None
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime { p } => Scalar::Mod { v: n.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn ratio(&self, num: i64, den: i64) -> Option<Scalar> {
        if den == 0 {
            return None;
        }
        self.int(num).div(&self.int(den))
    }

    /// Converts any scalar into this field. Rationals map into F_p when the
    /// denominator is invertible.
    pub fn convert(&self, s: &Scalar) -> Option<Scalar> {
        match (self, s) {
            (Field::Rational, Scalar::Rat(_)) => Some(s.clone()),
            (Field::Rational, Scalar::Mod { .. }) => None,
            (Field::Prime { p }, Scalar::Mod { p: q, .. }) => (p == q).then(|| s.clone()),
            (Field::Prime { p }, Scalar::Rat(r)) => {
                let pb = BigInt::from(*p);
                let n = r.numer().mod_floor(&pb).to_u64()?;
                let d = r.denom().mod_floor(&pb).to_u64()?;
                if d == 0 {
                    return None;
                }
                Some(Scalar::Mod { v: mulmod(n, powmod(d, p - 2, *p), *p), p: *p })
            }
        }
    }

    pub fn parse(&self, text: &str) -> Option<Scalar> {
        let text = text.trim();
        let r = match text.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().ok()?;
                let b: BigInt = b.trim().parse().ok()?;
                if b.is_zero() {
                    return None;
                }
                BigRational::new(a, b)
            }
            None => BigRational::from_integer(text.parse().ok()?),
        };
        self.convert(&Scalar::Rat(r))
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational => 0,
            Field::Prime { p } => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// An exact scalar. Rational values that are integers act as constants in
/// every field, so `Field::int` values mix freely with `Mod` values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime { p: *p },
        }
    }

    fn lift(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Mod { p, .. }, Scalar::Rat(_)) => {
                let f = Field::Prime { p: *p };
                (a.clone(), f.convert(b).expect("rational not representable mod p"))
            }
            (Scalar::Rat(_), Scalar::Mod { p, .. }) => {
                let f = Field::Prime { p: *p };
                (f.convert(a).expect("rational not representable mod p"), b.clone())
            }
            _ => (a.clone(), b.clone()),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) if !r.is_zero() => Some(Scalar::Rat(r.recip())),
            Scalar::Mod { v, p } if *v != 0 => Some(Scalar::Mod { v: powmod(*v, p - 2, *p), p: *p }),
            _ => None,
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        Some(self * &other.inv()?)
    }

    /// Plain text form: `3`, `-1/2`, or a residue for prime fields.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, .. } => v.to_string(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod { v: (a + b) % p, p: *p }
            }
            _ => {
                let (a, b) = Scalar::lift(self, rhs);
                &a + &b
            }
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod { v: mulmod(*a, *b, *p), p: *p }
            }
            _ => {
                let (a, b) = Scalar::lift(self, rhs);
                &a * &b
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod { v: (p - v) % p, p: *p },
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let a = f.int(3);
        let b = f.int(4);
        assert_eq!(&a * &b, f.int(2));
        assert_eq!(&a + &b, f.int(2));
        assert_eq!(a.inv().unwrap(), f.int(2));
        assert_eq!(f.parse("1/2").unwrap(), f.int(3));
        assert!(Field::prime(6).is_none());
    }

    #[test]
    fn integers_mix_with_residues() {
        let f = Field::prime(7).unwrap();
        let q = Field::Rational;
        assert_eq!(&f.int(3) + &q.int(5), f.int(1));
        assert_eq!(&q.int(-1) * &f.int(2), f.int(5));
    }

    #[test]
    fn rational_text() {
        let q = Field::Rational;
        assert_eq!(q.parse("-2/4").unwrap().to_text(), "-1/2");
        assert_eq!(q.ratio(6, 3).unwrap().to_text(), "2");
        assert!(q.parse("1/0").is_none());
    }
}
