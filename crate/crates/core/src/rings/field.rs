//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A prime modulus. Can only be built through [`Field::prime`], which checks
/// primality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn get(self) -> u64 {
        self.0
    }
}

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    #[default]
    Rational,
    Prime(Modulus),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(Modulus(p)))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p.0,
        }
    }

    /// Fails unless `1, 2, ..., n` are all invertible.
    pub fn require_invertible_up_to(self, n: u64, why: &str) -> Result<()> {
        match self {
            Field::Prime(p) if n >= p.0 => Err(Error::CharacteristicTooSmall {
                characteristic: p.0,
                reason: why.to_string(),
            }),
            _ => Ok(()),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                residue: (n as i128).rem_euclid(p.0 as i128) as u64,
                modulus: p.0,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p.0));
                Scalar::Modular {
                    residue: r.to_u64().expect("residue fits in u64"),
                    modulus: p.0,
                }
            }
        }
    }

    /// `numerator / denominator` mapped into the field.
    pub fn from_ratio(self, numerator: &BigInt, denominator: &BigInt) -> Result<Scalar> {
        let den = self.from_bigint(denominator);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_bigint(numerator).checked_div(&den)
    }

    /// Parses `"-3/2"`, `"7"` and similar literals.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (body, "1"),
        };
        let parse = |s: &str| -> Result<BigInt> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::syntax(0, format!("malformed scalar literal {text:?}")));
            }
            Ok(BigInt::from_str(s).expect("digits"))
        };
        let mut n = parse(num)?;
        if neg {
            n = -n;
        }
        self.from_ratio(&n, &parse(den)?)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{}", p.0),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::syntax(3, format!("bad modulus in {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::syntax(0, format!("unknown field {s:?}; expected q or fp:<p>")))
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with a positive denominator.
    Rational(BigRational),
    /// `residue < modulus`, modulus prime.
    Modular { residue: u64, modulus: u64 },
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(Modulus(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch {
            left: self.field().to_string(),
            right: other.field().to_string(),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (
                Scalar::Modular { residue: a, modulus },
                Scalar::Modular {
                    residue: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Ok(Scalar::Modular {
                residue: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (
                Scalar::Modular { residue: a, modulus },
                Scalar::Modular {
                    residue: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Ok(Scalar::Modular {
                residue: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Sign and magnitude for display. Prime-field residues above `p/2`
    /// are shown as negatives so that `-1` prints as `-1` in every field.
    pub fn sign_and_magnitude(&self) -> (bool, String) {
        match self {
            Scalar::Rational(q) => (q.is_negative(), q.abs().to_string()),
            Scalar::Modular { residue, modulus } => {
                if *residue > modulus / 2 {
                    (true, (modulus - residue).to_string())
                } else {
                    (false, residue.to_string())
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, mag) = self.sign_and_magnitude();
        if neg {
            write!(f, "-{mag}")
        } else {
            write!(f, "{mag}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rational
            .from_ratio(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q(1, 2).checked_add(&q(1, 3)).unwrap(), q(5, 6));
    }

    #[test]
    fn prime_product() {
        let f5 = Field::prime(5).unwrap();
        let p = f5.from_i64(3).checked_mul(&f5.from_i64(4)).unwrap();
        assert_eq!(p, f5.from_i64(2));
    }

    #[test]
    fn divide_by_zero() {
        assert_eq!(
            q(2, 3).checked_div(&Field::Rational.zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(
            q(1, 2).checked_add(&f5.one()),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(1_000_000_007).is_ok());
        assert!(Field::prime(18_446_744_073_709_551_557).is_ok());
    }

    #[test]
    fn negative_residues() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.from_i64(-1), f7.from_i64(6));
        assert_eq!(f7.from_i64(-1).to_string(), "-1");
        assert_eq!(f7.parse_scalar("1/2").unwrap(), f7.from_i64(4));
    }

    #[test]
    fn field_descriptor_roundtrip() {
        for text in ["q", "fp:7", "fp:101"] {
            let f: Field = text.parse().unwrap();
            assert_eq!(f.to_string(), text);
        }
        assert!("fp:8".parse::<Field>().is_err());
    }

    #[test]
    fn scalar_literals() {
        assert_eq!(Field::Rational.parse_scalar("-3/6").unwrap(), q(-1, 2));
        assert!(Field::Rational.parse_scalar("1/0").is_err());
        assert!(Field::Rational.parse_scalar("x").is_err());
    }
}
