use super::{CommPoly, Field, Ring, Scalar, Variable};
use crate::error::{Error, Result};
use crate::text::{parse_with, ExprBuilder};

struct CommBuilder(Field);

impl ExprBuilder for CommBuilder {
    type Value = CommPoly;

    fn field(&self) -> Field {
        self.0
    }

    fn ident(&self, name: &str, position: usize) -> Result<CommPoly> {
        let v = Variable::parse_name(name).map_err(|_| {
            Error::syntax(position, format!("malformed variable name {name:?}"))
        })?;
        Ok(CommPoly::var(v, self.0))
    }

    fn scalar(&self, c: Scalar) -> CommPoly {
        CommPoly::constant(c)
    }

    fn add(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a.add(b)
    }

    fn sub(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a.sub(b)
    }

    fn mul(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a.mul(b)
    }

    fn neg(&self, a: &CommPoly) -> CommPoly {
        a.neg()
    }
}

/// Parses a commutative polynomial in named variables (`x1*y2 - 1/2`,
/// `X1[1,2]^2`). Accepts everything `CommPoly`'s `Display` produces.
pub fn parse_comm(text: &str, field: Field) -> Result<CommPoly> {
    parse_with(&CommBuilder(field), text)
}
