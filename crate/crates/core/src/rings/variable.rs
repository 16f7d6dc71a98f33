use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A commuting indeterminate.
///
/// The derived order is the engine's fixed variable order: every matrix
/// entry precedes every auxiliary variable; entries compare by
/// (generator, row, column) and auxiliaries by (name, index).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    /// Entry `(row, col)` of the generic matrix standing for generator
    /// `generator`. All indices are 1-based.
    Entry { generator: u32, row: u32, col: u32 },
    /// Free-standing symbol such as an eigenvalue `lam1` or a test
    /// coordinate `x2`.
    Aux { name: Arc<str>, index: u32 },
}

impl Variable {
    pub fn entry(generator: u32, row: u32, col: u32) -> Variable {
        Variable::Entry {
            generator,
            row,
            col,
        }
    }

    pub fn aux(name: &str, index: u32) -> Variable {
        Variable::Aux {
            name: Arc::from(name),
            index,
        }
    }

    /// Inverse of `Display`: `X2[1,3]` is an entry, `lam4` or `y` an
    /// auxiliary.
    pub fn parse_name(text: &str) -> Result<Variable> {
        let bad = || Error::syntax(0, format!("malformed variable name {text:?}"));
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('X') {
            if let Some(open) = rest.find('[') {
                let generator: u32 = rest[..open].parse().map_err(|_| bad())?;
                let inner = rest[open + 1..].strip_suffix(']').ok_or_else(bad)?;
                let (r, c) = inner.split_once(',').ok_or_else(bad)?;
                let row: u32 = r.trim().parse().map_err(|_| bad())?;
                let col: u32 = c.trim().parse().map_err(|_| bad())?;
                if generator == 0 || row == 0 || col == 0 {
                    return Err(bad());
                }
                return Ok(Variable::entry(generator, row, col));
            }
        }
        let split = t
            .find(|c: char| c.is_ascii_digit())
            .unwrap_or(t.len());
        let (name, digits) = t.split_at(split);
        if name.is_empty() || !name.chars().all(|c| c.is_alphabetic() || c == '_') {
            return Err(bad());
        }
        let index = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        Ok(Variable::aux(name, index))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Entry {
                generator,
                row,
                col,
            } => write!(f, "X{generator}[{row},{col}]"),
            Variable::Aux { name, index: 0 } => write!(f, "{name}"),
            Variable::Aux { name, index } => write!(f, "{name}{index}"),
        }
    }
}
