//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept sorted in ascending graded-lexicographic order with no
//! zero coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::{ring_ops, Coefficient, Field, Ring, Scalar, Variable};
use crate::error::{Error, Result};

/// A power product of variables. Sorted by variable, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    /// Builds from arbitrary `(variable, exponent)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_powers(powers: impl IntoIterator<Item = (Variable, u32)>) -> Monomial {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn powers(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            let mut e = *e;
            if j < other.0.len() && other.0[j].0 == *v {
                if other.0[j].1 > e {
                    return None;
                }
                e -= other.0[j].1;
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if e > 0 {
                out.push((v.clone(), e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Lowers the exponent of `v` by one, returning the old exponent.
    fn differentiate(&self, v: &Variable) -> Option<(u32, Monomial)> {
        let pos = self.0.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let e = self.0[pos].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (x, y) in self.0.iter().zip(&other.0) {
            match x.0.cmp(&y.0) {
                // `self` carries a variable `other` lacks at this point.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match x.1.cmp(&y.1) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

/// Graded lexicographic order over the fixed variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse commutative polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommPoly {
    field: Field,
    terms: Vec<(Monomial, Scalar)>,
}

impl CommPoly {
    pub fn zero(field: Field) -> CommPoly {
        CommPoly {
            field,
            terms: Vec::new(),
        }
    }

    pub fn one(field: Field) -> CommPoly {
        CommPoly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> CommPoly {
        CommPoly::term(Monomial::one(), c)
    }

    pub fn var(v: Variable, field: Field) -> CommPoly {
        CommPoly::term(Monomial::var(v), field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> CommPoly {
        let field = c.field();
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        CommPoly { field, terms }
    }

    /// Canonicalizes an arbitrary list of terms. Panics on mixed fields.
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> CommPoly {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(c.field(), field, "field mismatch");
            match acc.get_mut(&m) {
                Some(slot) => *slot = Ring::add(slot, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        CommPoly::from_map(field, acc)
    }

    fn from_map(field: Field, acc: HashMap<Monomial, Scalar>) -> CommPoly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        CommPoly { field, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ascending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Scalar {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field.zero(),
        }
    }

    /// Graded-lex largest term.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.powers().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    fn check_field(&self, other: &CommPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CommPoly) -> Result<CommPoly> {
        self.check_field(other)?;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = Ring::add(&a[i].1, &b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(CommPoly {
            field: self.field,
            terms: out,
        })
    }

    pub fn checked_sub(&self, other: &CommPoly) -> Result<CommPoly> {
        self.checked_add(&Ring::neg(other))
    }

    pub fn checked_mul(&self, other: &CommPoly) -> Result<CommPoly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CommPoly::zero(self.field));
        }
        if other.terms.len() == 1 {
            return Ok(self.mul_term(&other.terms[0].0, &other.terms[0].1));
        }
        if self.terms.len() == 1 {
            return Ok(other.mul_term(&self.terms[0].0, &self.terms[0].1));
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = Ring::mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = Ring::add(slot, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(CommPoly::from_map(self.field, acc))
    }

    /// Multiplication by a single term keeps the term order, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero(self.field);
        }
        CommPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), Ring::mul(d, c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut acc = CommPoly::one(self.field);
        for _ in 0..k {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial_derivative(&self, v: &Variable) -> CommPoly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let (e, m) = m.differentiate(v)?;
            Some((m, Ring::mul(c, &self.field.from_i64(e as i64))))
        });
        CommPoly::from_terms(self.field, terms)
    }

    pub fn evaluate(&self, point: &BTreeMap<Variable, Scalar>) -> Result<Scalar> {
        let mut total = self.field.zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.powers() {
                let x = point
                    .get(v)
                    .ok_or_else(|| Error::UnassignedVariable(v.to_string()))?;
                for _ in 0..*e {
                    value = value.checked_mul(x)?;
                }
            }
            total = total.checked_add(&value)?;
        }
        Ok(total)
    }

    /// Replaces every variable through `image`, keeping those it maps to `None`.
    pub fn substitute(&self, image: &dyn Fn(&Variable) -> Option<CommPoly>) -> CommPoly {
        let mut total = CommPoly::zero(self.field);
        for (m, c) in &self.terms {
            let mut value = CommPoly::constant(c.clone());
            for (v, e) in m.powers() {
                let base = image(v).unwrap_or_else(|| CommPoly::var(v.clone(), self.field));
                value = Ring::mul(&value, &base.pow(*e));
            }
            total = Ring::add(&total, &value);
        }
        total
    }

    pub fn degree_in(&self, v: &Variable) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`;
    /// entry `k` multiplies `v^k`.
    pub fn coefficients_in(&self, v: &Variable) -> Vec<CommPoly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = Monomial(m.0.iter().filter(|(w, _)| w != v).cloned().collect());
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| CommPoly::from_terms(self.field, b))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(field: Field, v: &Variable, coeffs: &[CommPoly]) -> CommPoly {
        let mut total = CommPoly::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let shift = Monomial::from_powers([(v.clone(), k as u32)]);
            total = Ring::add(&total, &c.mul_term(&shift, &field.one()));
        }
        total
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: &CommPoly) -> Result<Option<CommPoly>> {
        self.check_field(divisor)?;
        let (lm, lc) = match divisor.leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading() {
            // A single divisor is its own Groebner basis, so a leading term
            // it cannot absorb means a nonzero remainder.
            let Some(qm) = m.div(&lm) else {
                return Ok(None);
            };
            let qc = Ring::mul(c, &lc_inv);
            rem = Ring::sub(&rem, &divisor.mul_term(&qm, &qc));
            quotient.push((qm, qc));
        }
        Ok(Some(CommPoly::from_terms(self.field, quotient)))
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> CommPoly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => {
                let inv = c.inv().expect("nonzero leading coefficient");
                Coefficient::scale(self, &inv)
            }
            _ => self.clone(),
        }
    }
}

impl Ring for CommPoly {
    fn zero_like(&self) -> Self {
        CommPoly::zero(self.field)
    }

    fn one_like(&self) -> Self {
        CommPoly::one(self.field)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        CommPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), Ring::neg(c))).collect(),
        }
    }
}

impl Coefficient for CommPoly {
    fn field(&self) -> Field {
        self.field
    }

    fn from_scalar(c: &Scalar) -> Self {
        CommPoly::constant(c.clone())
    }

    fn scale(&self, c: &Scalar) -> Self {
        self.mul_term(&Monomial::one(), c)
    }
}

ring_ops!(CommPoly);

/// Writes `terms` leading-first as `c*m + ...`, the shared textual format
/// for polynomials throughout the engine.
pub(crate) fn write_terms<'a, M: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a M, &'a Scalar, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (m, c, is_unit) in terms {
        let (neg, mag) = c.sign_and_magnitude();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if is_unit {
            write!(f, "{mag}")?;
        } else if mag == "1" {
            write!(f, "{m}")?;
        } else {
            write!(f, "{mag}*{m}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(m, c)| (m, c, m.is_one())))
    }
}
