//! The free associative algebra `k<x1, ..., xs>`.
//!
//! Elements are finite maps from words to scalars. Words compare by length,
//! then lexicographically by generator index (graded lex), and every
//! [`FreePoly`] keeps its terms sorted in that order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::{Coefficient, Field, Ring, Scalar};
use crate::text::{parse_with, ExprBuilder};

/// A noncommutative monomial: a sequence of 1-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u32>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All words over `s` letters of length at most `max_len`, in graded-lex
    /// order.
    pub fn all_up_to(s: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * s);
            for w in &layer {
                for g in 1..=s as u32 {
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x1^2*x2`; the empty word prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            if run == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{run}")?;
            }
            first = false;
            i += run;
        }
        Ok(())
    }
}

/// Degree of a free polynomial; the zero polynomial has degree
/// [`Degree::NegInfinity`], which sorts below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Element of `k<x1, ..., xs>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreePoly {
    field: Field,
    generators: usize,
    terms: Vec<(Word, Scalar)>,
}

impl FreePoly {
    pub fn zero(field: Field, generators: usize) -> FreePoly {
        FreePoly {
            field,
            generators,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Scalar, generators: usize) -> FreePoly {
        FreePoly::word(Word::empty(), c, generators)
    }

    pub fn one(field: Field, generators: usize) -> FreePoly {
        FreePoly::constant(field.one(), generators)
    }

    pub fn word(w: Word, c: Scalar, generators: usize) -> FreePoly {
        let field = c.field();
        let terms = if c.is_zero() { vec![] } else { vec![(w, c)] };
        FreePoly {
            field,
            generators,
            terms,
        }
    }

    /// The generator `x_index` of `k<x1, ..., x_generators>`.
    pub fn generator(index: usize, generators: usize, field: Field) -> Result<FreePoly> {
        if index == 0 || index > generators {
            return Err(Error::UnknownGenerator {
                index,
                count: generators,
            });
        }
        Ok(FreePoly::word(
            Word(vec![index as u32]),
            field.one(),
            generators,
        ))
    }

    pub fn from_terms(
        field: Field,
        generators: usize,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> FreePoly {
        let mut acc: HashMap<Word, Scalar> = HashMap::new();
        for (w, c) in terms {
            assert!(
                w.0.iter().all(|&g| g >= 1 && g as usize <= generators),
                "word {w} uses a generator outside 1..={generators}"
            );
            match acc.get_mut(&w) {
                Some(slot) => *slot = slot.add(&c),
                None => {
                    acc.insert(w, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        FreePoly {
            field,
            generators,
            terms,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The generator count `s`.
    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Ascending graded-lex order.
    pub fn terms(&self) -> &[(Word, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for elements of `k` (including 0).
    pub fn is_scalar(&self) -> bool {
        self.terms.iter().all(|(w, _)| w.is_empty())
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .last()
            .map_or(Degree::NegInfinity, |(w, _)| Degree::Finite(w.len()))
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(w))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Word::empty())
    }

    /// Graded-lex largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.last().map(|(w, c)| (w, c))
    }

    fn check(&self, other: &FreePoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        if self.generators != other.generators {
            return Err(Error::GeneratorMismatch {
                left: self.generators,
                right: other.generators,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check(other)?;
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
                    let c = a[i].1.add(&b[j].1);
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
        Ok(FreePoly {
            field: self.field,
            generators: self.generators,
            terms: out,
        })
    }

    pub fn checked_sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.checked_add(&other.neg())
    }

    /// Bilinear extension of concatenation.
    pub fn checked_mul(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check(other)?;
        let terms = self.terms.iter().flat_map(|(wa, ca)| {
            other
                .terms
                .iter()
                .map(move |(wb, cb)| (wa.concat(wb), ca.mul(cb)))
        });
        Ok(FreePoly::from_terms(self.field, self.generators, terms))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &FreePoly) -> Result<FreePoly> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly {
            field: self.field,
            generators: self.generators,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        if c.is_zero() {
            return FreePoly::zero(self.field, self.generators);
        }
        FreePoly {
            field: self.field,
            generators: self.generators,
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> FreePoly {
        let mut acc = FreePoly::one(self.field, self.generators);
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same algebra");
        }
        acc
    }

    /// Restriction to words of length exactly `m`.
    pub fn homogeneous_component(&self, m: usize) -> FreePoly {
        FreePoly {
            field: self.field,
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == m)
                .cloned()
                .collect(),
        }
    }

    /// Image under the algebra homomorphism `x_l -> images[l-1]`.
    pub fn evaluate_in_matrices<T: Coefficient>(&self, images: &[Matrix<T>]) -> Result<Matrix<T>> {
        if images.len() != self.generators {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} generators",
                images.len(),
                self.generators
            )));
        }
        let n = match images.first() {
            Some(m) => m.size(),
            None => {
                // s = 0: only scalars exist; evaluate as 1x1.
                return Ok(Matrix::scalar(1, &self.constant_term()));
            }
        };
        for m in images {
            if m.size() != n {
                return Err(Error::ShapeMismatch(format!(
                    "images of sizes {n} and {}",
                    m.size()
                )));
            }
            if m.field() != self.field {
                return Err(Error::FieldMismatch {
                    left: self.field.to_string(),
                    right: m.field().to_string(),
                });
            }
        }
        let mut prefixes: HashMap<Vec<u32>, Matrix<T>> = HashMap::new();
        let mut total = Matrix::zero(n, self.field);
        for (w, c) in &self.terms {
            let product = word_product(&w.0, images, &mut prefixes);
            total = total.add(&product.scale(c));
        }
        Ok(total)
    }

    pub fn to_pretty(&self) -> String {
        self.to_string()
    }
}

fn word_product<T: Coefficient>(
    letters: &[u32],
    images: &[Matrix<T>],
    cache: &mut HashMap<Vec<u32>, Matrix<T>>,
) -> Matrix<T> {
    if letters.is_empty() {
        return Matrix::identity(images[0].size(), images[0].field());
    }
    if let Some(m) = cache.get(letters) {
        return m.clone();
    }
    let (head, last) = letters.split_at(letters.len() - 1);
    let prefix = word_product(head, images, cache);
    let m = prefix.mul(&images[last[0] as usize - 1]);
    cache.insert(letters.to_vec(), m.clone());
    m
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::rings::write_terms(f, self.terms.iter().map(|(w, c)| (w, c, w.is_empty())))
    }
}

impl std::ops::Add for &FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        self.checked_add(rhs).expect("incompatible free polynomials")
    }
}

impl std::ops::Sub for &FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        self.checked_sub(rhs).expect("incompatible free polynomials")
    }
}

impl std::ops::Mul for &FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        self.checked_mul(rhs).expect("incompatible free polynomials")
    }
}

impl std::ops::Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        FreePoly::neg(self)
    }
}

struct FreeBuilder {
    field: Field,
    generators: usize,
}

impl ExprBuilder for FreeBuilder {
    type Value = FreePoly;

    fn field(&self) -> Field {
        self.field
    }

    fn ident(&self, name: &str, position: usize) -> Result<FreePoly> {
        let index = name
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| {
                Error::syntax(position, format!("expected a generator x<N>, found {name:?}"))
            })?;
        let index: usize = index
            .parse()
            .map_err(|_| Error::syntax(position, "generator index too large"))?;
        FreePoly::generator(index, self.generators, self.field)
    }

    fn scalar(&self, c: Scalar) -> FreePoly {
        FreePoly::constant(c, self.generators)
    }

    fn add(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a + b
    }

    fn sub(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a - b
    }

    fn mul(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a * b
    }

    fn neg(&self, a: &FreePoly) -> FreePoly {
        -a
    }
}

/// Parses an expression in the generators `x1..x{generators}`.
/// Juxtaposition and `*` are the noncommutative product in written order.
pub fn parse_free(text: &str, generators: usize, field: Field) -> Result<FreePoly> {
    parse_with(&FreeBuilder { field, generators }, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn p(text: &str) -> FreePoly {
        parse_free(text, 2, Q).unwrap()
    }

    fn w(letters: &[u32]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn commutator_word_map() {
        let f = p("x1*x2 - x2*x1");
        assert_eq!(
            f.terms(),
            &[(w(&[1, 2]), Q.one()), (w(&[2, 1]), Q.from_i64(-1))]
        );
    }

    #[test]
    fn noncommutative_square() {
        let f = p("(x1 + x2)^2");
        let expect = FreePoly::from_terms(
            Q,
            2,
            [[1, 1], [1, 2], [2, 1], [2, 2]].iter().map(|l| (w(l), Q.one())),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn unknown_generator() {
        assert_eq!(
            parse_free("x3", 2, Q),
            Err(Error::UnknownGenerator { index: 3, count: 2 })
        );
        assert!(matches!(parse_free("x0", 2, Q), Err(Error::UnknownGenerator { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_free("x1 + * x2", 2, Q) {
            Err(Error::SyntaxError { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_free("(x1", 2, Q), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse_free("y1", 2, Q), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse_free("", 2, Q), Err(Error::SyntaxError { .. })));
    }

    #[test]
    fn juxtaposition_and_signs() {
        assert_eq!(p("x1x2"), p("x1*x2"));
        assert_eq!(p("2x1"), p("2*x1"));
        assert_eq!(p("x1 -x2"), &p("x1") - &p("x2"));
        assert_eq!(p("x1*-x2"), -&p("x1*x2"));
        assert_eq!(p("-x1^2"), -&p("x1*x1"));
    }

    #[test]
    fn products() {
        assert_eq!(&p("x1") * &p("x2"), FreePoly::word(w(&[1, 2]), Q.one(), 2));
        assert_ne!(&p("x1") * &p("x2"), &p("x2") * &p("x1"));
        assert_eq!(&p("x1 + 1") * &p("x1 - 1"), p("x1^2 - 1"));
    }

    #[test]
    fn commutators() {
        assert!(p("x1").commutator(&p("x1^2")).unwrap().is_zero());
        assert_eq!(p("x1").commutator(&p("x2")).unwrap(), p("x1*x2 - x2*x1"));
        // [x1 + x2, x1] = x2 x1 - x1 x2
        let c = p("x1 + x2").commutator(&p("x1")).unwrap();
        let expect = FreePoly::from_terms(
            Q,
            2,
            [(w(&[2, 1]), Q.one()), (w(&[1, 2]), Q.from_i64(-1))],
        );
        assert_eq!(c, expect);
    }

    #[test]
    fn mixed_fields_rejected() {
        let f7 = Field::prime(7).unwrap();
        let a = parse_free("x1", 2, f7).unwrap();
        assert!(matches!(p("x1").checked_add(&a), Err(Error::FieldMismatch { .. })));
        assert!(matches!(p("x1").commutator(&a), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn components() {
        let f = p("x1 + x1*x2");
        assert_eq!(f.homogeneous_component(1), p("x1"));
        assert!(f.homogeneous_component(3).is_zero());
        assert_eq!(p("5").homogeneous_component(0), p("5"));
    }

    #[test]
    fn degrees() {
        assert_eq!(p("x1 + x1*x2").degree(), Degree::Finite(2));
        assert_eq!(p("7").degree(), Degree::Finite(0));
        assert_eq!(p("x1 - x1").degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(p("x1*x2 - x2*x1").to_string(), "x1*x2 - x2*x1");
        assert_eq!(FreePoly::zero(Q, 2).to_string(), "0");
        assert_eq!(p("3/2").to_string(), "3/2");
        assert_eq!(p("x2 x1 x1 - 2/3 x1 + 1").to_string(), "1 - 2/3*x1 + x2*x1^2");
        assert_eq!(p("-x1").to_string(), "-x1");
    }

    #[test]
    fn evaluation_in_matrices() {
        let e = |i, j| Matrix::<Scalar>::unit(2, i, j, Q);
        let a = Matrix::from_rows(
            vec![vec![Q.from_i64(1), Q.from_i64(2)], vec![Q.from_i64(3), Q.from_i64(4)]],
            Q,
        )
        .unwrap();
        let comm = p("x1*x2 - x2*x1");
        assert!(comm.evaluate_in_matrices(&[a.clone(), a.clone()]).unwrap().is_zero());
        assert_eq!(
            p("1").evaluate_in_matrices(&[a.clone(), e(0, 1)]).unwrap(),
            Matrix::identity(2, Q)
        );
        // [[0,1],[0,0]]^2 = 0
        assert!(p("x1^2").evaluate_in_matrices(&[e(0, 1), a.clone()]).unwrap().is_zero());
        assert!(matches!(
            p("x1").evaluate_in_matrices(std::slice::from_ref(&a)),
            Err(Error::ShapeMismatch(_))
        ));
        let b = Matrix::<Scalar>::identity(3, Q);
        assert!(matches!(
            p("x1").evaluate_in_matrices(&[a, b]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn all_words() {
        let words = Word::all_up_to(2, 3);
        assert_eq!(words.len(), 15);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }
}
