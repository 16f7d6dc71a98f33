use std::fmt;

use super::{poly_gcd, ring_ops, Coefficient, CommPoly, Field, FieldElement, Ring, Scalar, Variable};
use crate::error::{Error, Result};

/// Quotient of two commutative polynomials, kept in lowest terms with a
/// monic denominator (graded-lex leading coefficient 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: CommPoly,
    den: CommPoly,
}

impl RationalFunction {
    pub fn new(num: CommPoly, den: CommPoly) -> Result<RationalFunction> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch {
                left: num.field().to_string(),
                right: den.field().to_string(),
            });
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: CommPoly, den: CommPoly) -> RationalFunction {
        let field = num.field();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: CommPoly::one(field),
            };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).unwrap().expect("gcd divides numerator"),
                den.div_exact(&g).unwrap().expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: CommPoly) -> RationalFunction {
        let field = p.field();
        RationalFunction {
            num: p,
            den: CommPoly::one(field),
        }
    }

    pub fn var(v: Variable, field: Field) -> RationalFunction {
        Self::from_poly(CommPoly::var(v, field))
    }

    pub fn numerator(&self) -> &CommPoly {
        &self.num
    }

    pub fn denominator(&self) -> &CommPoly {
        &self.den
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn checked_add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if self.den == other.den {
            return RationalFunction::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        RationalFunction::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.checked_add(&Ring::neg(other))
    }

    pub fn checked_mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }
}

impl Ring for RationalFunction {
    fn zero_like(&self) -> Self {
        Self::from_poly(CommPoly::zero(self.field()))
    }

    fn one_like(&self) -> Self {
        Self::from_poly(CommPoly::one(self.field()))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("field mismatch")
    }

    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("field mismatch")
    }

    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("field mismatch")
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: Ring::neg(&self.num),
            den: self.den.clone(),
        }
    }
}

impl Coefficient for RationalFunction {
    fn field(&self) -> Field {
        self.num.field()
    }

    fn from_scalar(c: &Scalar) -> Self {
        Self::from_poly(CommPoly::constant(c.clone()))
    }

    fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl FieldElement for RationalFunction {
    fn inv(&self) -> Result<Self> {
        self.one_like().checked_div(self)
    }
}

ring_ops!(RationalFunction);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &CommPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(i: u32) -> RationalFunction {
        RationalFunction::var(Variable::aux("lam", i), Field::Rational)
    }

    #[test]
    fn inverse_cancels() {
        let d = &lam(1) - &lam(2);
        let prod = &d.inv().unwrap() * &d;
        assert_eq!(prod, d.one_like());
    }

    #[test]
    fn opposite_quotients_cancel() {
        let q = lam(1).checked_div(&lam(2)).unwrap();
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn zero_divisor_rejected() {
        let z = &lam(1) - &lam(1);
        assert_eq!(lam(1).one_like().checked_div(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_under_common_factor() {
        let a = &lam(1) + &lam(2);
        let b = &lam(1) * &lam(3);
        let c = &(&lam(2) - &lam(3)).scale(&Field::Rational.from_i64(5)) + &lam(1);
        let plain = a.checked_div(&b).unwrap();
        let scaled = (&c * &a).checked_div(&(&c * &b)).unwrap();
        assert_eq!(plain, scaled);
        assert!(plain.denominator().leading().unwrap().1.is_one());
    }
}
