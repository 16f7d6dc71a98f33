//! Order-by-order diagonalization of series matrices `A_0 + h A_1 + ...`
//! whose leading term is diagonal with distinct entries.
//!
//! At order `r` the off-diagonal defect `C_r` is removed by conjugating
//! with `E + h^r T`, where `[T, A_0] = -offdiag(C_r)`. Diagonal defects are
//! kept and become part of `D`. Conjugation uses the plain
//! coefficientwise product of series matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quantization::{poisson_bracket, FormalSeries, PolyMatrix, StarContext, StarOp};
use crate::rings::{Coefficient, CommPoly, FieldElement, Ring};

pub type SeriesMatrix<T> = FormalSeries<Matrix<T>>;

/// Solves `[T, diag(a0)] = -rhs` with `t_ii = 0`,
/// `t_ij = rhs_ij / (a0_i - a0_j)`.
pub fn solve_sylvester_diag<T: FieldElement>(a0: &[T], rhs: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a0.len();
    if rhs.size() != n {
        return Err(Error::ShapeMismatch(format!(
            "{n} eigenvalues for a {0}x{0} right-hand side",
            rhs.size()
        )));
    }
    if let Some(i) = (0..n).find(|&i| !rhs.get(i, i).is_zero()) {
        return Err(Error::NonzeroDiagonalRhs(i + 1));
    }
    check_distinct(a0)?;
    let field = rhs.field();
    let mut t = Matrix::<T>::zero(n, field);
    for i in 0..n {
        for j in 0..n {
            if i != j && !rhs.get(i, j).is_zero() {
                let gap = a0[i].sub(&a0[j]);
                t.set(i, j, rhs.get(i, j).mul(&gap.inv()?));
            }
        }
    }
    let a = Matrix::diagonal(a0.to_vec(), field);
    if t.commutator(&a)? != rhs.neg() {
        return Err(Error::VerificationFailed(
            "Sylvester solution does not satisfy [T, A0] = -RHS".into(),
        ));
    }
    Ok(t)
}

fn check_distinct<T: FieldElement>(a0: &[T]) -> Result<()> {
    for i in 0..a0.len() {
        for j in i + 1..a0.len() {
            if a0[i] == a0[j] {
                return Err(Error::RepeatedEigenvalue(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Output of [`successive_diagonalize`].
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalReport<T> {
    /// `U = E + h T_1 + ...`.
    pub conjugator: SeriesMatrix<T>,
    pub inverse: SeriesMatrix<T>,
    /// Diagonal series with `U A U^-1 = D` through `achieved_order`.
    pub diagonal: SeriesMatrix<T>,
    pub achieved_order: usize,
    /// Leading diagonal entries of the input.
    pub lambda: Vec<T>,
    /// Leading diagonal entries of the partner, when one was given.
    pub mu: Option<Vec<T>>,
    /// `U B U^-1` for the partner `B`.
    pub partner_conjugate: Option<SeriesMatrix<T>>,
}

fn series_identity<T: FieldElement>(n: usize, order: usize, like: &Matrix<T>) -> SeriesMatrix<T> {
    FormalSeries::lift(Matrix::identity(n, like.field()), order)
}

/// `c * h^shift` as a series of the given order.
fn monomial_series<T: FieldElement>(c: Matrix<T>, shift: usize, order: usize) -> SeriesMatrix<T> {
    let zero = c.zero_like();
    let mut coeffs = vec![zero; order + 1];
    if shift <= order {
        coeffs[shift] = c;
    }
    FormalSeries::new(coeffs).expect("nonempty")
}

fn conjugate<T: FieldElement>(
    u: &SeriesMatrix<T>,
    a: &SeriesMatrix<T>,
    u_inv: &SeriesMatrix<T>,
) -> Result<SeriesMatrix<T>> {
    u.plain_mul(a)?.plain_mul(u_inv)
}

fn leading_diagonal<T: Coefficient>(a: &SeriesMatrix<T>) -> Result<Vec<T>> {
    let a0 = a.coeff(0);
    if !a0.is_diagonal() {
        return Err(Error::NotDiagonalLeadingTerm);
    }
    Ok(a0.diagonal_entries())
}

/// Conjugates `a` into diagonal form through order `target`. A `partner`
/// (for example the second matrix of a commuting pair) is conjugated by the
/// same `U` and its leading diagonal is reported as `mu`.
pub fn successive_diagonalize<T: FieldElement>(
    a: &SeriesMatrix<T>,
    target: usize,
    partner: Option<&SeriesMatrix<T>>,
) -> Result<DiagonalReport<T>> {
    let order = a.order();
    if target > order {
        return Err(Error::InvalidOrder(format!(
            "target {target} exceeds the series order {order}"
        )));
    }
    let lambda = leading_diagonal(a)?;
    check_distinct(&lambda)?;
    let n = lambda.len();
    let a0 = a.coeff(0);
    let mut u = series_identity(n, order, a0);
    let mut u_inv = u.clone();
    let mut current = a.clone();
    for r in 1..=target {
        let defect = current.coeff(r).off_diagonal_part();
        if defect.is_zero() {
            continue;
        }
        let t = solve_sylvester_diag(&lambda, &defect)?;
        let step = series_identity(n, order, a0).checked_add(&monomial_series(t.clone(), r, order))?;
        // (E + h^r T)^-1 = sum_k (-h^r T)^k, truncated.
        let mut step_inv = series_identity(n, order, a0);
        let mut power = Matrix::identity(n, a0.field());
        let mut k = 1;
        while r * k <= order {
            power = power.mul(&t.neg());
            step_inv = step_inv.checked_add(&monomial_series(power.clone(), r * k, order))?;
            k += 1;
        }
        current = conjugate(&step, &current, &step_inv)?;
        u = step.plain_mul(&u)?;
        u_inv = u_inv.plain_mul(&step_inv)?;
    }
    let diagonal = FormalSeries::new(
        (0..=order)
            .map(|r| {
                if r <= target {
                    current.coeff(r).diagonal_part()
                } else {
                    a0.zero_like()
                }
            })
            .collect(),
    )?;

    // Independent back-substitution from the original input.
    let check = conjugate(&u, a, &u_inv)?;
    let identity = series_identity(n, order, a0);
    let ok = u.plain_mul(&u_inv)? == identity
        && (0..=target).all(|r| check.coeff(r) == diagonal.coeff(r))
        && u.coeff(0) == identity.coeff(0);
    if !ok {
        return Err(Error::VerificationFailed(
            "U A U^-1 is not diagonal through the target order".into(),
        ));
    }

    let (mu, partner_conjugate) = match partner {
        Some(b) => {
            if b.order() != order {
                return Err(Error::InvalidOrder("partner has a different order".into()));
            }
            let mu = leading_diagonal(b)?;
            (Some(mu), Some(conjugate(&u, b, &u_inv)?))
        }
        None => (None, None),
    };
    Ok(DiagonalReport {
        conjugator: u,
        inverse: u_inv,
        diagonal,
        achieved_order: target,
        lambda,
        mu,
        partner_conjugate,
    })
}

/// Outcome of [`diagonal_bracket_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalBracketReport {
    /// Diagonal of `(1/h)[f, g]_* mod h`.
    pub diagonal: Vec<CommPoly>,
    /// `{lambda_i, mu_i}` for the leading diagonal entries.
    pub expected: Vec<CommPoly>,
    pub entry_matches: Vec<bool>,
    /// The `h^1` commutator terms coming from off-diagonal parts of `f`
    /// and `g` have zero diagonal.
    pub off_diagonal_contributions_traceless: bool,
    /// `(1/h)[f, g]_*` is nonzero modulo `h`.
    pub nonvanishing: bool,
}

impl DiagonalBracketReport {
    pub fn holds(&self) -> bool {
        self.entry_matches.iter().all(|&b| b) && self.off_diagonal_contributions_traceless
    }
}

/// Compares the diagonal of `(1/h)[f, g]_* mod h` with the brackets of the
/// leading diagonal entries.
pub fn diagonal_bracket_check(
    f: &FormalSeries<PolyMatrix>,
    g: &FormalSeries<PolyMatrix>,
    ctx: &StarContext,
) -> Result<DiagonalBracketReport> {
    if ctx.order() < 1 {
        return Err(Error::InvalidOrder("the check reads the h^1 coefficient".into()));
    }
    let lambda = leading_diagonal(f)?;
    let mu = leading_diagonal(g)?;
    if lambda.len() != mu.len() {
        return Err(Error::ShapeMismatch("f and g differ in size".into()));
    }
    let full = ctx.matrix_star(f, g, StarOp::Commutator)?;
    let c1 = full.coeff(1);
    let diagonal = c1.diagonal_entries();
    let expected = lambda
        .iter()
        .zip(&mu)
        .map(|(l, m)| poisson_bracket(l, m, ctx.tensor()))
        .collect::<Result<Vec<_>>>()?;
    let entry_matches = diagonal.iter().zip(&expected).map(|(a, b)| a == b).collect();

    let diag_only = |s: &FormalSeries<PolyMatrix>| s.map(|m| m.diagonal_part());
    let diag_part = ctx.matrix_star(&diag_only(f), &diag_only(g), StarOp::Commutator)?;
    let from_off_diagonal = c1.checked_sub(diag_part.coeff(1))?;
    Ok(DiagonalBracketReport {
        diagonal,
        expected,
        entry_matches,
        off_diagonal_contributions_traceless: from_off_diagonal.diagonal_entries().iter().all(|e| e.is_zero()),
        nonvanishing: !c1.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantization::PoissonTensor;
    use crate::rings::{parse_comm, Field, RationalFunction, Scalar, Variable};

    const Q: Field = Field::Rational;

    fn lam(i: u32) -> RationalFunction {
        RationalFunction::var(Variable::aux("lam", i), Q)
    }

    fn rf(c: i64) -> RationalFunction {
        RationalFunction::from_poly(CommPoly::constant(Q.from_i64(c)))
    }

    fn rmat(rows: Vec<Vec<RationalFunction>>) -> Matrix<RationalFunction> {
        Matrix::from_rows(rows, Q).unwrap()
    }

    #[test]
    fn sylvester_two_by_two() {
        let a0 = [lam(1), lam(2)];
        let rhs = rmat(vec![vec![rf(0), rf(1)], vec![rf(1), rf(0)]]);
        let t = solve_sylvester_diag(&a0, &rhs).unwrap();
        let gap = lam(1).sub(&lam(2));
        assert_eq!(*t.get(0, 1), gap.inv().unwrap());
        assert_eq!(*t.get(1, 0), gap.neg().inv().unwrap());
        assert!(t.get(0, 0).is_zero() && t.get(1, 1).is_zero());
        // [T, A0] = -RHS expanded by hand: entry (0,1) is t01 (lam2 - lam1).
        assert_eq!(t.get(0, 1).mul(&lam(2).sub(&lam(1))), rf(-1));
    }

    #[test]
    fn sylvester_errors() {
        let a0 = [Q.from_i64(1), Q.from_i64(1)];
        let off = Matrix::<Scalar>::unit(2, 0, 1, Q);
        assert_eq!(solve_sylvester_diag(&a0, &off), Err(Error::RepeatedEigenvalue(1, 2)));
        let diag = Matrix::<Scalar>::unit(2, 1, 1, Q);
        let a0 = [Q.from_i64(1), Q.from_i64(2)];
        assert_eq!(solve_sylvester_diag(&a0, &diag), Err(Error::NonzeroDiagonalRhs(2)));
        assert!(solve_sylvester_diag(&a0, &Matrix::zero(2, Q)).unwrap().is_zero());
    }

    fn series(coeffs: Vec<Matrix<RationalFunction>>) -> SeriesMatrix<RationalFunction> {
        FormalSeries::new(coeffs).unwrap()
    }

    #[test]
    fn order_one_example() {
        let a0 = Matrix::diagonal(vec![lam(1), lam(2)], Q);
        let a1 = rmat(vec![vec![rf(0), rf(1)], vec![rf(1), rf(0)]]);
        let a = series(vec![a0.clone(), a1]);
        let rep = successive_diagonalize(&a, 1, None).unwrap();
        assert_eq!(*rep.diagonal.coeff(0), a0);
        assert!(rep.diagonal.coeff(1).is_zero());
        assert_eq!(rep.lambda, vec![lam(1), lam(2)]);
        let conj = rep.conjugator.plain_mul(&a).unwrap().plain_mul(&rep.inverse).unwrap();
        assert!(conj.coeffs().iter().all(|c| c.is_diagonal()));
    }

    #[test]
    fn diagonal_perturbation_is_kept() {
        let a0 = Matrix::diagonal(vec![lam(1), lam(2)], Q);
        let d = |i| RationalFunction::var(Variable::aux("delta", i), Q);
        let a1 = Matrix::diagonal(vec![d(1), d(2)], Q);
        let a = series(vec![a0.clone(), a1.clone()]);
        let rep = successive_diagonalize(&a, 1, None).unwrap();
        assert_eq!(rep.conjugator, FormalSeries::lift(Matrix::identity(2, Q), 1));
        assert_eq!(rep.diagonal, a);
    }

    #[test]
    fn order_two_three_by_three() {
        let a0 = Matrix::diagonal(vec![lam(1), lam(2), lam(3)], Q);
        let m = rmat(vec![
            vec![rf(0), rf(2), rf(-1)],
            vec![rf(3), rf(0), rf(5)],
            vec![rf(1), rf(-4), rf(0)],
        ]);
        let a = series(vec![a0, m, Matrix::zero(3, Q)]);
        let rep = successive_diagonalize(&a, 2, None).unwrap();
        let conj = rep.conjugator.plain_mul(&a).unwrap().plain_mul(&rep.inverse).unwrap();
        assert!(conj.coeffs().iter().all(|c| c.is_diagonal()));
        assert_eq!(conj, rep.diagonal);
    }

    #[test]
    fn rejects_bad_leading_term() {
        let a = FormalSeries::new(vec![Matrix::<Scalar>::unit(2, 0, 1, Q)]).unwrap();
        assert_eq!(successive_diagonalize(&a, 0, None), Err(Error::NotDiagonalLeadingTerm));
        let rep = FormalSeries::lift(Matrix::<Scalar>::identity(2, Q), 1);
        assert_eq!(successive_diagonalize(&rep, 1, None), Err(Error::RepeatedEigenvalue(1, 2)));
    }

    #[test]
    fn partner_is_conjugated() {
        let a = FormalSeries::new(vec![
            Matrix::diagonal(vec![Q.from_i64(1), Q.from_i64(3)], Q),
            Matrix::<Scalar>::unit(2, 0, 1, Q),
        ])
        .unwrap();
        let b = FormalSeries::lift(Matrix::diagonal(vec![Q.from_i64(5), Q.from_i64(7)], Q), 1);
        let rep = successive_diagonalize(&a, 1, Some(&b)).unwrap();
        assert_eq!(rep.mu, Some(vec![Q.from_i64(5), Q.from_i64(7)]));
        assert!(rep.partner_conjugate.is_some());
    }

    fn p(t: &str) -> CommPoly {
        parse_comm(t, Q).unwrap()
    }

    #[test]
    fn diagonal_bracket_examples() {
        let vars = (1..=3).map(|k| Variable::aux("x", k));
        let ctx = StarContext::new(PoissonTensor::pairing(vars, Q), 2).unwrap();
        let lift = |d: Vec<&str>| {
            ctx.quantize_lift(&PolyMatrix::diagonal(d.into_iter().map(p).collect(), Q))
                .unwrap()
        };
        let rep = diagonal_bracket_check(&lift(vec!["x1", "x2"]), &lift(vec!["y1", "y2"]), &ctx).unwrap();
        assert_eq!(rep.diagonal, vec![p("1"), p("1")]);
        assert!(rep.holds() && rep.nonvanishing);

        let rep = diagonal_bracket_check(&lift(vec!["x1", "x2"]), &lift(vec!["x1^2", "x2^2"]), &ctx).unwrap();
        assert_eq!(rep.diagonal, vec![p("0"), p("0")]);
        assert!(rep.holds() && !rep.nonvanishing);

        let rep = diagonal_bracket_check(&lift(vec!["x1"]), &lift(vec!["y1"]), &ctx).unwrap();
        assert_eq!(rep.diagonal, vec![p("1")]);
    }

    #[test]
    fn diagonal_bracket_with_off_diagonal_corrections() {
        let vars = (1..=2).map(|k| Variable::aux("x", k));
        let ctx = StarContext::new(PoissonTensor::pairing(vars, Q), 1).unwrap();
        let f0 = PolyMatrix::diagonal(vec![p("x1"), p("x2")], Q);
        let mut f1 = PolyMatrix::zero(2, Q);
        f1.set(0, 1, p("y1"));
        f1.set(1, 0, p("x1*y2"));
        let f = FormalSeries::new(vec![f0, f1]).unwrap();
        let g = ctx
            .quantize_lift(&PolyMatrix::diagonal(vec![p("y1"), p("y2")], Q))
            .unwrap();
        let rep = diagonal_bracket_check(&f, &g, &ctx).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.diagonal, vec![p("1"), p("1")]);
    }
}
