//! Generic matrices and the reduction of free-algebra elements to them.
//!
//! `X^l` is the `n x n` matrix whose `(i, j)` entry is the independent
//! variable `X{l}[i,j]`. Reduction sends the generator `x_l` to `X^l`. On
//! top of that this module provides characteristic polynomials, the
//! standard polynomial `S_k`, and the search for a minimal bivariate
//! polynomial annihilating a commuting pair of matrices.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::free_algebra::{Degree, FreePoly};
use crate::linalg::{kernel, SparseVec};
use crate::matrix::Matrix;
use crate::rings::{Coefficient, CommPoly, Field, Monomial, Ring, Scalar, Variable};

pub type PolyMatrix = Matrix<CommPoly>;

/// Where a generic matrix came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// The matrix `X^l` itself.
    Generator(u32),
    Composite,
}

/// A matrix over `k[X{l}[i,j]]` together with its origin tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenericMatrix {
    origin: Origin,
    matrix: PolyMatrix,
}

impl GenericMatrix {
    pub fn composite(matrix: PolyMatrix) -> GenericMatrix {
        GenericMatrix {
            origin: Origin::Composite,
            matrix,
        }
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.matrix
    }

    pub fn checked_add(&self, other: &GenericMatrix) -> Result<GenericMatrix> {
        Ok(Self::composite(self.matrix.checked_add(&other.matrix)?))
    }

    pub fn checked_sub(&self, other: &GenericMatrix) -> Result<GenericMatrix> {
        Ok(Self::composite(self.matrix.checked_sub(&other.matrix)?))
    }

    pub fn checked_mul(&self, other: &GenericMatrix) -> Result<GenericMatrix> {
        Ok(Self::composite(self.matrix.checked_mul(&other.matrix)?))
    }
}

impl Deref for GenericMatrix {
    type Target = PolyMatrix;

    fn deref(&self) -> &PolyMatrix {
        &self.matrix
    }
}

/// The generic matrices `X^1, ..., X^s` of size `n`.
pub fn make_generic(s: usize, n: usize, field: Field) -> Result<Vec<GenericMatrix>> {
    if s == 0 || n == 0 {
        return Err(Error::InvalidSize(format!(
            "need s >= 1 and n >= 1, got s = {s}, n = {n}"
        )));
    }
    Ok((1..=s as u32)
        .map(|l| GenericMatrix {
            origin: Origin::Generator(l),
            matrix: Matrix::from_fn(n, field, |i, j| {
                CommPoly::var(Variable::entry(l, i as u32 + 1, j as u32 + 1), field)
            }),
        })
        .collect())
}

/// Reduction `x_l -> X^l` of a free polynomial to `n x n` generic matrices.
pub fn pi_reduce(f: &FreePoly, n: usize) -> Result<GenericMatrix> {
    let generators = make_generic(f.generators(), n, f.field())?;
    let images: Vec<PolyMatrix> = generators.into_iter().map(|g| g.matrix).collect();
    let m = f.evaluate_in_matrices(&images)?;
    let origin = match f.terms() {
        [(w, c)] if w.len() == 1 && c.is_one() => Origin::Generator(w.letters()[0]),
        _ => Origin::Composite,
    };
    Ok(GenericMatrix { origin, matrix: m })
}

/// Trace and characteristic polynomial `det(tI - A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<T> {
    pub trace: T,
    /// `coefficients[k]` multiplies `t^k`; the last entry is 1.
    pub coefficients: Vec<T>,
}

/// Faddeev-LeVerrier recurrence. Divides by `1..n`, so in characteristic
/// `p` it needs `n < p`.
pub fn trace_and_charpoly<T: Coefficient>(a: &Matrix<T>) -> Result<CharPoly<T>> {
    let n = a.size();
    let field = a.field();
    field.require_invertible_up_to(n as u64, "the characteristic polynomial recurrence divides by 1..n")?;
    let mut coeffs = vec![T::from_scalar(&field.zero()); n + 1];
    coeffs[n] = T::from_scalar(&field.one());
    let mut m = Matrix::<T>::zero(n, field);
    for k in 1..=n {
        let shifted = Matrix::<T>::identity(n, field).map(|e| e.mul(&coeffs[n - k + 1]));
        m = a.mul(&m).add(&shifted);
        let t = a.mul(&m).trace();
        let inv_k = field.from_i64(k as i64).inv()?;
        coeffs[n - k] = t.scale(&inv_k).neg();
    }
    Ok(CharPoly {
        trace: a.trace(),
        coefficients: coeffs,
    })
}

/// `sum_k c_k A^k`; zero exactly when Cayley-Hamilton holds.
pub fn charpoly_residual<T: Coefficient>(a: &Matrix<T>, coefficients: &[T]) -> Matrix<T> {
    let mut power = Matrix::<T>::identity(a.size(), a.field());
    let mut total = Matrix::<T>::zero(a.size(), a.field());
    for c in coefficients {
        total = total.add(&power.map(|e| e.mul(c)));
        power = power.mul(a);
    }
    total
}

/// `S_k(M_1, ..., M_k) = sum over permutations of sgn(s) M_s(1) ... M_s(k)`.
///
/// Expanded along the first factor with memoization over index subsets,
/// which visits `k 2^k` products instead of `k!`.
pub fn standard_identity<T: Coefficient>(mats: &[Matrix<T>]) -> Result<Matrix<T>> {
    let k = mats.len();
    if k == 0 {
        return Err(Error::InvalidSize("standard polynomial needs k >= 1".into()));
    }
    if k > 20 {
        return Err(Error::InvalidSize(format!("k = {k} is too large")));
    }
    let n = mats[0].size();
    let field = mats[0].field();
    for m in mats {
        if m.size() != n {
            return Err(Error::ShapeMismatch(format!("{n}x{n} vs {0}x{0}", m.size())));
        }
        if m.field() != field {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: m.field().to_string(),
            });
        }
    }
    let mut memo: HashMap<u32, Matrix<T>> = HashMap::new();
    memo.insert(0, Matrix::identity(n, field));
    Ok(alternating(mats, (1u32 << k) - 1, &mut memo))
}

fn alternating<T: Coefficient>(
    mats: &[Matrix<T>],
    mask: u32,
    memo: &mut HashMap<u32, Matrix<T>>,
) -> Matrix<T> {
    if let Some(m) = memo.get(&mask) {
        return m.clone();
    }
    let n = mats[0].size();
    let mut total = Matrix::zero(n, mats[0].field());
    let mut position = 0;
    for i in 0..mats.len() {
        if mask & (1 << i) == 0 {
            continue;
        }
        let rest = alternating(mats, mask & !(1 << i), memo);
        let term = mats[i].mul(&rest);
        total = if position % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
        position += 1;
    }
    memo.insert(mask, total.clone());
    total
}

/// Exponent pair `(a, b)` of `u^a v^b`, ordered graded-lex with `u > v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BiExponent(pub u32, pub u32);

impl Ord for BiExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0 + self.1, self.0).cmp(&(other.0 + other.1, other.0))
    }
}

impl PartialOrd for BiExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BiExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |name: &str, e: u32| match e {
            0 => None,
            1 => Some(name.to_string()),
            e => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = [part("u", self.0), part("v", self.1)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Polynomial `P(u, v)` in two commuting variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    field: Field,
    terms: BTreeMap<BiExponent, Scalar>,
}

impl BivariatePoly {
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (BiExponent, Scalar)>) -> Self {
        let mut map: BTreeMap<BiExponent, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert_with(|| field.zero());
            *slot = slot.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        BivariatePoly { field, terms: map }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&BiExponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum `a + b` over the support; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0 + e.1).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&BiExponent, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Inverse of `Display`; accepts any polynomial in `u` and `v`.
    pub fn parse(text: &str, field: Field) -> Result<BivariatePoly> {
        let p = crate::rings::parse_comm(text, field)?;
        let (u, v) = (Variable::aux("u", 0), Variable::aux("v", 0));
        if let Some(w) = p.variables().into_iter().find(|w| *w != u && *w != v) {
            return Err(Error::UnknownVariable(w.to_string()));
        }
        Ok(BivariatePoly::from_terms(
            field,
            p.terms()
                .iter()
                .map(|(m, c)| (BiExponent(m.exponent(&u), m.exponent(&v)), c.clone())),
        ))
    }

    /// `P(F, G)`. Only meaningful when `F` and `G` commute.
    pub fn evaluate(&self, f: &PolyMatrix, g: &PolyMatrix) -> Result<PolyMatrix> {
        if f.size() != g.size() {
            return Err(Error::ShapeMismatch("annihilator arguments differ in size".into()));
        }
        let mut powers = MonomialPowers::new(f.clone(), g.clone());
        let mut total = PolyMatrix::zero(f.size(), f.field());
        for (e, c) in &self.terms {
            total = total.checked_add(&powers.get(*e).scale(c))?;
        }
        Ok(total)
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::rings::write_terms(
            f,
            self.terms.iter().rev().map(|(e, c)| (e, c, e.0 + e.1 == 0)),
        )
    }
}

/// Cache of `F^a G^b` for a commuting pair.
struct MonomialPowers {
    f: PolyMatrix,
    g: PolyMatrix,
    cache: HashMap<BiExponent, PolyMatrix>,
}

impl MonomialPowers {
    fn new(f: PolyMatrix, g: PolyMatrix) -> Self {
        let mut cache = HashMap::new();
        cache.insert(BiExponent(0, 0), PolyMatrix::identity(f.size(), f.field()));
        MonomialPowers { f, g, cache }
    }

    fn get(&mut self, e: BiExponent) -> PolyMatrix {
        if let Some(m) = self.cache.get(&e) {
            return m.clone();
        }
        let m = if e.0 > 0 {
            self.get(BiExponent(e.0 - 1, e.1)).mul(&self.f)
        } else {
            self.get(BiExponent(0, e.1 - 1)).mul(&self.g)
        };
        self.cache.insert(e, m.clone());
        m
    }
}

/// Outcome of [`find_annihilator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnihilatorResult {
    Found {
        poly: BivariatePoly,
        total_degree: u32,
        size: usize,
    },
    NoneUpTo { bound: u32, size: usize },
}

impl AnnihilatorResult {
    pub fn poly(&self) -> Option<&BivariatePoly> {
        match self {
            AnnihilatorResult::Found { poly, .. } => Some(poly),
            AnnihilatorResult::NoneUpTo { .. } => None,
        }
    }
}

type FlatKey = (usize, Monomial);

fn flatten(m: &PolyMatrix) -> SparseVec<FlatKey> {
    let mut v = SparseVec::new();
    for (idx, e) in m.entries().iter().enumerate() {
        for (mono, c) in e.terms() {
            v.insert((idx, mono.clone()), c.clone());
        }
    }
    v
}

/// Monomials `u^a v^b` with `a + b <= d`, graded-lex descending.
fn exponents_up_to(d: u32) -> Vec<BiExponent> {
    let mut out: Vec<BiExponent> = (0..=d)
        .flat_map(|t| (0..=t).map(move |a| BiExponent(a, t - a)))
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Minimal-total-degree `P` with `P(F, G) = 0`, searched by exact kernel
/// computation on the span of `F^a G^b` for increasing degree bounds.
///
/// The returned `P` is the last row of the reduced echelon kernel basis
/// (columns ordered graded-lex descending), so its leading coefficient is 1.
pub fn find_annihilator(f: &PolyMatrix, g: &PolyMatrix, max_degree: u32) -> Result<AnnihilatorResult> {
    if f.size() != g.size() {
        return Err(Error::ShapeMismatch(format!(
            "{0}x{0} vs {1}x{1}",
            f.size(),
            g.size()
        )));
    }
    if !f.commutator(g)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    let field = f.field();
    let n = f.size();
    let mut powers = MonomialPowers::new(f.clone(), g.clone());
    let mut flat: HashMap<BiExponent, SparseVec<FlatKey>> = HashMap::new();
    for d in 0..=max_degree {
        let exps = exponents_up_to(d);
        let columns: Vec<SparseVec<FlatKey>> = exps
            .iter()
            .map(|e| {
                flat.entry(*e)
                    .or_insert_with(|| flatten(&powers.get(*e)))
                    .clone()
            })
            .collect();
        let ker = kernel(field, &columns);
        if let Some(row) = ker.last() {
            let poly = BivariatePoly::from_terms(
                field,
                exps.iter().copied().zip(row.iter().cloned()),
            );
            if !poly.evaluate(f, g)?.is_zero() {
                return Err(Error::VerificationFailed(format!(
                    "annihilator {poly} does not vanish"
                )));
            }
            return Ok(AnnihilatorResult::Found {
                total_degree: poly.total_degree(),
                poly,
                size: n,
            });
        }
    }
    Ok(AnnihilatorResult::NoneUpTo {
        bound: max_degree,
        size: n,
    })
}

/// Annihilator search on the reductions of a commuting free pair at several
/// sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub results: Vec<AnnihilatorResult>,
    /// An annihilator was found at every size.
    pub all_found: bool,
    /// All annihilators that were found are literally equal.
    pub coincide: bool,
    pub f_degree: Degree,
    pub g_degree: Degree,
}

impl StabilityReport {
    pub fn stable(&self) -> bool {
        self.all_found && self.coincide
    }
}

pub fn annihilator_stability(
    f: &FreePoly,
    g: &FreePoly,
    sizes: &[usize],
    max_degree: u32,
) -> Result<StabilityReport> {
    if !f.commutator(g)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    let mut results = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let fm = pi_reduce(f, n)?;
        let gm = pi_reduce(g, n)?;
        results.push(find_annihilator(&fm, &gm, max_degree)?);
    }
    let found: Vec<&BivariatePoly> = results.iter().filter_map(|r| r.poly()).collect();
    Ok(StabilityReport {
        all_found: found.len() == results.len(),
        coincide: found.windows(2).all(|w| w[0] == w[1]),
        results,
        f_degree: f.degree(),
        g_degree: g.degree(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::parse_free;
    use crate::rings::parse_comm;

    const Q: Field = Field::Rational;

    fn free(text: &str) -> FreePoly {
        parse_free(text, 2, Q).unwrap()
    }

    fn var(l: u32, i: u32, j: u32) -> CommPoly {
        CommPoly::var(Variable::entry(l, i, j), Q)
    }

    #[test]
    fn generic_matrix_shapes() {
        let one = make_generic(1, 1, Q).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(*one[0].get(0, 0), var(1, 1, 1));
        let two = make_generic(2, 2, Q).unwrap();
        for (l, m) in two.iter().enumerate() {
            assert_eq!(m.origin(), Origin::Generator(l as u32 + 1));
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(*m.get(i, j), var(l as u32 + 1, i as u32 + 1, j as u32 + 1));
                }
            }
        }
        assert!(matches!(make_generic(0, 2, Q), Err(Error::InvalidSize(_))));
        assert!(matches!(make_generic(2, 0, Q), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn reduction_examples() {
        let c = free("x1*x2 - x2*x1");
        assert!(pi_reduce(&c, 1).unwrap().is_zero());
        let x = make_generic(2, 2, Q).unwrap();
        assert_eq!(pi_reduce(&free("x1"), 2).unwrap(), x[0]);
        assert_eq!(pi_reduce(&free("1"), 2).unwrap().matrix(), &PolyMatrix::identity(2, Q));
    }

    #[test]
    fn reduced_commutator_by_hand() {
        // Entry (1,1) of X1 X2 - X2 X1 is a12 b21 - b12 a21.
        let m = pi_reduce(&free("x1*x2 - x2*x1"), 2).unwrap();
        let expect11 = &(&var(1, 1, 2) * &var(2, 2, 1)) - &(&var(2, 1, 2) * &var(1, 2, 1));
        assert_eq!(*m.get(0, 0), expect11);
        // Entry (1,2): a11 b12 + a12 b22 - b11 a12 - b12 a22.
        let expect12 = parse_comm(
            "X1[1,1]*X2[1,2] + X1[1,2]*X2[2,2] - X2[1,1]*X1[1,2] - X2[1,2]*X1[2,2]",
            Q,
        )
        .unwrap();
        assert_eq!(*m.get(0, 1), expect12);
        assert!(m.entries().iter().all(|e| e.total_degree().unwrap_or(2) == 2));
    }

    #[test]
    fn matrix_arith() {
        let x = make_generic(2, 2, Q).unwrap();
        let id = GenericMatrix::composite(PolyMatrix::identity(2, Q));
        assert_eq!(x[0].checked_mul(&id).unwrap().matrix(), x[0].matrix());
        let s = x[0].checked_add(&x[1]).unwrap().checked_sub(&x[1]).unwrap();
        assert_eq!(s.matrix(), x[0].matrix());
        assert_eq!(s.origin(), Origin::Composite);
    }

    #[test]
    fn charpoly_examples() {
        let x1 = make_generic(1, 1, Q).unwrap();
        let cp = trace_and_charpoly(x1[0].matrix()).unwrap();
        assert_eq!(cp.trace, var(1, 1, 1));
        assert_eq!(cp.coefficients, vec![-&var(1, 1, 1), CommPoly::one(Q)]);

        let id = PolyMatrix::identity(2, Q);
        let cp = trace_and_charpoly(&id).unwrap();
        let c = |n| CommPoly::constant(Q.from_i64(n));
        assert_eq!(cp.trace, c(2));
        assert_eq!(cp.coefficients, vec![c(1), c(-2), c(1)]);

        // 2x2 determinant by cofactor expansion.
        let x = make_generic(1, 2, Q).unwrap();
        let cp = trace_and_charpoly(x[0].matrix()).unwrap();
        let det = &(&var(1, 1, 1) * &var(1, 2, 2)) - &(&var(1, 1, 2) * &var(1, 2, 1));
        let tr = &var(1, 1, 1) + &var(1, 2, 2);
        assert_eq!(cp.coefficients, vec![det, -&tr, CommPoly::one(Q)]);
        assert!(charpoly_residual(x[0].matrix(), &cp.coefficients).is_zero());
    }

    #[test]
    fn charpoly_needs_large_characteristic() {
        let f3 = Field::prime(3).unwrap();
        let x = make_generic(1, 3, f3).unwrap();
        assert!(matches!(
            trace_and_charpoly(x[0].matrix()),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn standard_polynomial_small_cases() {
        let x = make_generic(2, 2, Q).unwrap();
        let (a, b) = (x[0].matrix().clone(), x[1].matrix().clone());
        assert_eq!(
            standard_identity(&[a.clone(), b.clone()]).unwrap(),
            a.commutator(&b).unwrap()
        );
        assert_eq!(standard_identity(std::slice::from_ref(&a)).unwrap(), a);
        assert!(matches!(
            standard_identity::<CommPoly>(&[]),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn s3_on_matrix_units_by_brute_force() {
        let e = |i, j| Matrix::<Scalar>::unit(2, i, j, Q);
        let args = [e(0, 0), e(0, 1), e(1, 0)];
        // All six signed products, listed by hand.
        let perms: [([usize; 3], i64); 6] = [
            ([0, 1, 2], 1),
            ([0, 2, 1], -1),
            ([1, 0, 2], -1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([2, 1, 0], -1),
        ];
        let mut brute = Matrix::<Scalar>::zero(2, Q);
        for (p, sign) in perms {
            let prod = &(&args[p[0]] * &args[p[1]]) * &args[p[2]];
            brute = &brute + &prod.scale(&Q.from_i64(sign));
        }
        let s3 = standard_identity(&args).unwrap();
        assert_eq!(s3, brute);
        assert!(!s3.is_zero());
    }

    #[test]
    fn amitsur_levitzki_two_by_two() {
        let x = make_generic(4, 2, Q).unwrap();
        let mats: Vec<PolyMatrix> = x.iter().map(|m| m.matrix().clone()).collect();
        assert!(standard_identity(&mats).unwrap().is_zero());
        assert!(!standard_identity(&mats[..3]).unwrap().is_zero());
    }

    #[test]
    fn annihilator_of_square() {
        let f = pi_reduce(&free("x1"), 2).unwrap();
        let g = pi_reduce(&free("x1^2"), 2).unwrap();
        let r = find_annihilator(&f, &g, 3).unwrap();
        let poly = r.poly().unwrap();
        assert_eq!(poly.to_string(), "u^2 - v");
        assert_eq!(r, AnnihilatorResult::Found {
            poly: poly.clone(),
            total_degree: 2,
            size: 2
        });
    }

    #[test]
    fn annihilator_of_equal_pair() {
        let f = pi_reduce(&free("x1"), 2).unwrap();
        let r = find_annihilator(&f, &f, 2).unwrap();
        assert_eq!(r.poly().unwrap().to_string(), "u - v");
    }

    #[test]
    fn independent_diagonal_pair_has_no_annihilator() {
        let d = |a: &str, b: &str| {
            PolyMatrix::diagonal(vec![parse_comm(a, Q).unwrap(), parse_comm(b, Q).unwrap()], Q)
        };
        let r = find_annihilator(&d("x", "y"), &d("z", "w"), 3).unwrap();
        assert_eq!(r, AnnihilatorResult::NoneUpTo { bound: 3, size: 2 });
    }

    #[test]
    fn non_commuting_inputs_rejected() {
        let x = make_generic(2, 2, Q).unwrap();
        assert_eq!(
            find_annihilator(x[0].matrix(), x[1].matrix(), 2),
            Err(Error::NotCommuting)
        );
    }

    #[test]
    fn stability_examples() {
        let rep = annihilator_stability(&free("x1"), &free("x1^2 + 1"), &[1, 2, 3], 3).unwrap();
        assert!(rep.stable());
        for r in &rep.results {
            assert_eq!(r.poly().unwrap().to_string(), "u^2 - v + 1");
        }
        let poly = rep.results[0].poly().unwrap();
        assert_eq!(&BivariatePoly::parse(&poly.to_string(), Q).unwrap(), poly);
        assert!(BivariatePoly::parse("u*w", Q).is_err());
        let rep = annihilator_stability(&free("x1"), &free("x1"), &[1, 2], 3).unwrap();
        assert!(rep.stable());
        assert_eq!(rep.results[0].poly().unwrap().to_string(), "u - v");
        assert_eq!(
            annihilator_stability(&free("x1"), &free("x2"), &[1], 3),
            Err(Error::NotCommuting)
        );
    }
}
