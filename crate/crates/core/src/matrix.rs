//! Dense square matrices over any coefficient ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{Coefficient, Field, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    field: Field,
    data: Vec<T>,
}

impl<T: Coefficient> Matrix<T> {
    pub fn zero(n: usize, field: Field) -> Self {
        let z = T::from_scalar(&field.zero());
        Matrix {
            n,
            field,
            data: vec![z; n * n],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        Self::scalar(n, &field.one())
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, c: &Scalar) -> Self {
        let field = c.field();
        Self::from_fn(n, field, |i, j| {
            if i == j {
                T::from_scalar(c)
            } else {
                T::from_scalar(&field.zero())
            }
        })
    }

    /// Matrix unit with a 1 at `(i, j)`, 0-based.
    pub fn unit(n: usize, i: usize, j: usize, field: Field) -> Self {
        let mut m = Self::zero(n, field);
        m.data[i * n + j] = T::from_scalar(&field.one());
        m
    }

    pub fn from_fn(n: usize, field: Field, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, field, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, field: Field) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidSize("matrix has no rows".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a {n}x{n} matrix",
                    row.len()
                )));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field.to_string(),
                        right: e.field().to_string(),
                    });
                }
                data.push(e);
            }
        }
        Ok(Matrix { n, field, data })
    }

    pub fn diagonal(entries: Vec<T>, field: Field) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, field);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn map<U: Coefficient>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            field: self.field,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a.add(b)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a.sub(b)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let zero = T::from_scalar(&self.field.zero());
        let mut data = vec![zero; n * n];
        for i in 0..n {
            for j in 0..n {
                let a = &self.data[i * n + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let b = &other.data[j * n + k];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut data[i * n + k];
                    *slot = slot.add(&a.mul(b));
                }
            }
        }
        Ok(Matrix {
            n,
            field: self.field,
            data,
        })
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Matrix {
            n: self.n,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n, self.field);
        for _ in 0..k {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn trace(&self) -> T {
        let mut t = T::from_scalar(&self.field.zero());
        for i in 0..self.n {
            t = t.add(self.get(i, i));
        }
        t
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn diagonal_part(&self) -> Self {
        Self::from_fn(self.n, self.field, |i, j| {
            if i == j {
                self.get(i, j).clone()
            } else {
                T::from_scalar(&self.field.zero())
            }
        })
    }

    pub fn off_diagonal_part(&self) -> Self {
        Self::from_fn(self.n, self.field, |i, j| {
            if i != j {
                self.get(i, j).clone()
            } else {
                T::from_scalar(&self.field.zero())
            }
        })
    }
}

impl<T: Coefficient> Ring for Matrix<T> {
    fn zero_like(&self) -> Self {
        Self::zero(self.n, self.field)
    }

    fn one_like(&self) -> Self {
        Self::identity(self.n, self.field)
    }

    fn is_zero(&self) -> bool {
        Matrix::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("matrix shape or field mismatch")
    }

    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("matrix shape or field mismatch")
    }

    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix shape or field mismatch")
    }

    fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }
}

impl<T: Coefficient> std::ops::Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        Ring::add(self, rhs)
    }
}

impl<T: Coefficient> std::ops::Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        Ring::sub(self, rhs)
    }
}

impl<T: Coefficient> std::ops::Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        Ring::mul(self, rhs)
    }
}

/// `[a, b; c, d]`, rows separated by `;`.
impl<T: Coefficient + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, e) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

/// Parses the `Display` format (`[a, b; c, d]`, brackets optional) with a
/// caller-supplied entry parser.
pub fn parse_matrix<T: Coefficient>(
    text: &str,
    field: Field,
    entry: impl Fn(&str) -> Result<T>,
) -> Result<Matrix<T>> {
    let t = text.trim();
    let t = match t.strip_prefix('[') {
        Some(inner) => inner.strip_suffix(']').unwrap_or(inner),
        None => t,
    };
    let rows = split_top_level(t, ';')
        .into_iter()
        .map(|row| {
            split_top_level(row, ',')
                .into_iter()
                .map(|e| entry(e.trim()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows, field)
}

/// Splits at `sep` outside brackets, so `X1[1,2]` stays whole.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}
