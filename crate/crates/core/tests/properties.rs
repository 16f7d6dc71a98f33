//! Algebraic laws checked on random inputs.

use proptest::prelude::*;

use qcentral_core::centralizer_lab::centralizer_basis;
use qcentral_core::diagonalization::{solve_sylvester_diag, successive_diagonalize};
use qcentral_core::free_algebra::{parse_free, FreePoly, Word};
use qcentral_core::generic_matrices::{charpoly_residual, pi_reduce, standard_identity, trace_and_charpoly};
use qcentral_core::matrix::Matrix;
use qcentral_core::quantization::{poisson_bracket, FormalSeries, PoissonTensor, StarContext};
use qcentral_core::rings::{
    parse_comm, poly_gcd, CommPoly, Field, Monomial, RationalFunction, Ring, Scalar, Variable,
};

const Q: Field = Field::Rational;

fn f7() -> Field {
    Field::prime(7).unwrap()
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Q), Just(f7()), Just(Field::prime(101).unwrap())]
}

fn scalar(field: Field) -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9).prop_map(move |(n, d)| {
        field
            .from_i64(n)
            .checked_div(&field.from_i64(d))
            .unwrap_or_else(|_| field.from_i64(n))
    })
}

fn small_int(field: Field) -> impl Strategy<Value = Scalar> {
    (-4i64..=4).prop_map(move |n| field.from_i64(n))
}

fn vars(k: usize) -> Vec<Variable> {
    let names = [("x", 1), ("y", 1), ("x", 2), ("y", 2)];
    names[..k].iter().map(|&(n, i)| Variable::aux(n, i)).collect()
}

/// Polynomial in the first `k` of `x1, y1, x2, y2`.
fn poly(field: Field, k: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = CommPoly> {
    let vs = vars(k);
    prop::collection::vec((prop::collection::vec(0..=max_deg, k), small_int(field)), 0..=max_terms)
        .prop_map(move |terms| {
            CommPoly::from_terms(
                field,
                terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg).map(|(e, c)| {
                    let m = Monomial::from_powers(
                        vs.iter().cloned().zip(e).filter(|(_, e)| *e > 0).collect::<Vec<_>>(),
                    );
                    (m, c)
                }),
            )
        })
}

fn free(field: Field, s: u32, max_len: usize, max_terms: usize) -> impl Strategy<Value = FreePoly> {
    prop::collection::vec(
        (prop::collection::vec(1..=s, 0..=max_len), small_int(field)),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        FreePoly::from_terms(field, s as usize, terms.into_iter().map(|(w, c)| (Word::new(w), c)))
    })
}

fn scalar_matrix(field: Field, n: usize) -> impl Strategy<Value = Matrix<Scalar>> {
    prop::collection::vec(small_int(field), n * n).prop_map(move |entries| {
        let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
        Matrix::from_rows(rows, field).unwrap()
    })
}

fn tensor(field: Field) -> impl Strategy<Value = PoissonTensor> {
    prop::collection::vec(small_int(field), 6).prop_map(move |cs| {
        let mut t = PoissonTensor::zero(vars(4), field).unwrap();
        let mut it = cs.into_iter();
        for i in 0..4 {
            for j in i + 1..4 {
                t.set(i, j, it.next().unwrap()).unwrap();
            }
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(
        (a, b, c) in fields().prop_flat_map(|f| (scalar(f), scalar(f), scalar(f)))
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        prop_assert_eq!(a.mul(&a.one_like()), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn free_algebra_ring_laws(
        (f, g, h) in fields().prop_flat_map(|fl| (free(fl, 2, 3, 4), free(fl, 2, 3, 4), free(fl, 2, 3, 4)))
    ) {
        prop_assert_eq!(f.checked_mul(&g).unwrap().checked_mul(&h).unwrap(),
                        f.checked_mul(&g.checked_mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.checked_mul(&g.checked_add(&h).unwrap()).unwrap(),
                        f.checked_mul(&g).unwrap().checked_add(&f.checked_mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.checked_add(&g).unwrap(), g.checked_add(&f).unwrap());
        let fg = f.checked_mul(&g).unwrap();
        if !f.is_zero() && !g.is_zero() {
            use qcentral_core::free_algebra::Degree::Finite;
            match (f.degree(), g.degree(), fg.degree()) {
                (Finite(a), Finite(b), Finite(c)) => prop_assert_eq!(a + b, c),
                other => prop_assert!(false, "unexpected degrees {:?}", other),
            }
        }
        prop_assert!(f.commutator(&f).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn free_pretty_round_trip(f in fields().prop_flat_map(|fl| free(fl, 3, 4, 5))) {
        let again = parse_free(&f.to_string(), 3, f.field()).unwrap();
        prop_assert_eq!(&again, &f);
        let pretty = parse_free(&f.to_pretty(), 3, f.field()).unwrap();
        prop_assert_eq!(pretty, f);
    }

    #[test]
    fn comm_poly_laws(
        (a, b, c) in fields().prop_flat_map(|f| (poly(f, 3, 3, 4), poly(f, 3, 3, 4), poly(f, 3, 3, 4)))
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(parse_comm(&a.to_string(), a.field()).unwrap(), a.clone());
        // Leibniz rule for each variable.
        for v in vars(3) {
            prop_assert_eq!(
                a.mul(&b).partial_derivative(&v),
                a.partial_derivative(&v).mul(&b).add(&a.mul(&b.partial_derivative(&v)))
            );
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        (a, b, point) in fields().prop_flat_map(|f| (poly(f, 3, 3, 4), poly(f, 3, 3, 4), prop::collection::vec(small_int(f), 3)))
    ) {
        let pt = vars(3).into_iter().zip(point).collect();
        let ea = a.evaluate(&pt).unwrap();
        let eb = b.evaluate(&pt).unwrap();
        prop_assert_eq!(a.mul(&b).evaluate(&pt).unwrap(), ea.mul(&eb));
        prop_assert_eq!(a.add(&b).evaluate(&pt).unwrap(), ea.add(&eb));
    }

    #[test]
    fn gcd_divides_and_is_maximal(
        (a, b, c) in fields().prop_flat_map(|f| (poly(f, 2, 2, 3), poly(f, 2, 2, 3), poly(f, 2, 2, 3)))
    ) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = poly_gcd(&a.mul(&c), &b.mul(&c));
        prop_assert!(a.mul(&c).div_exact(&g).unwrap().is_some());
        prop_assert!(b.mul(&c).div_exact(&g).unwrap().is_some());
        prop_assert!(g.div_exact(&c).unwrap().is_some());
        prop_assert!(g.leading().unwrap().1.is_one());
    }

    #[test]
    fn rational_functions_are_canonical(
        (a, b, c) in fields().prop_flat_map(|f| (poly(f, 2, 2, 3), poly(f, 2, 2, 3), poly(f, 2, 2, 3)))
    ) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let r = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let scaled = RationalFunction::new(a.mul(&c), b.mul(&c)).unwrap();
        prop_assert_eq!(&r, &scaled);
        prop_assert!(r.denominator().leading().unwrap().1.is_one());
        let g = poly_gcd(r.numerator(), r.denominator());
        prop_assert!(g.is_constant());
        prop_assert_eq!(r.mul(&RationalFunction::from_poly(b.clone())), RationalFunction::from_poly(a));
    }

    #[test]
    fn evaluation_in_matrices_is_a_homomorphism(
        (f, g, ms) in fields().prop_flat_map(|fl| (free(fl, 2, 3, 3), free(fl, 2, 3, 3), prop::collection::vec(scalar_matrix(fl, 2), 2)))
    ) {
        let ef = f.evaluate_in_matrices(&ms).unwrap();
        let eg = g.evaluate_in_matrices(&ms).unwrap();
        prop_assert_eq!(f.checked_mul(&g).unwrap().evaluate_in_matrices(&ms).unwrap(), ef.mul(&eg));
        prop_assert_eq!(f.checked_add(&g).unwrap().evaluate_in_matrices(&ms).unwrap(), ef.add(&eg));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_is_a_homomorphism(
        (f, g) in fields().prop_flat_map(|fl| (free(fl, 2, 2, 3), free(fl, 2, 2, 3)))
    ) {
        let pf = pi_reduce(&f, 2).unwrap();
        let pg = pi_reduce(&g, 2).unwrap();
        let prod = pi_reduce(&f.checked_mul(&g).unwrap(), 2).unwrap().into_matrix();
        let sum = pi_reduce(&f.checked_add(&g).unwrap(), 2).unwrap().into_matrix();
        prop_assert_eq!(prod, pf.matrix().mul(pg.matrix()));
        prop_assert_eq!(sum, pf.matrix().add(pg.matrix()));
    }

    #[test]
    fn standard_polynomial_is_alternating(
        ms in fields().prop_flat_map(|fl| prop::collection::vec(scalar_matrix(fl, 3), 3)),
        swap in 0usize..2,
    ) {
        let s = standard_identity(&ms).unwrap();
        let mut swapped = ms.clone();
        swapped.swap(swap, swap + 1);
        prop_assert_eq!(standard_identity(&swapped).unwrap(), s.neg());
        let mut repeated = ms.clone();
        repeated[2] = repeated[0].clone();
        prop_assert!(standard_identity(&repeated).unwrap().is_zero());
    }

    #[test]
    fn amitsur_levitzki_on_random_matrices(
        ms in fields().prop_flat_map(|fl| prop::collection::vec(scalar_matrix(fl, 2), 4))
    ) {
        prop_assert!(standard_identity(&ms).unwrap().is_zero());
    }

    #[test]
    fn cayley_hamilton(a in prop_oneof![scalar_matrix(Q, 3), scalar_matrix(Field::prime(101).unwrap(), 4)]) {
        let cp = trace_and_charpoly(&a).unwrap();
        prop_assert!(charpoly_residual(&a, &cp.coefficients).is_zero());
        let n = a.size();
        prop_assert_eq!(cp.coefficients[n - 1].clone(), cp.trace.neg());
    }

    #[test]
    fn poisson_laws(
        (t, a, b, c) in fields().prop_flat_map(|f| (tensor(f), poly(f, 4, 3, 3), poly(f, 4, 3, 3), poly(f, 4, 3, 3)))
    ) {
        let br = |u: &CommPoly, v: &CommPoly| poisson_bracket(u, v, &t).unwrap();
        prop_assert_eq!(br(&a, &b), br(&b, &a).neg());
        let jacobi = br(&a, &br(&b, &c)).add(&br(&b, &br(&c, &a))).add(&br(&c, &br(&a, &b)));
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(br(&a, &b.mul(&c)), br(&a, &b).mul(&c).add(&b.mul(&br(&a, &c))));
    }

    #[test]
    fn star_product_laws(
        (t, a, b, c) in prop_oneof![Just(Q), Just(Field::prime(101).unwrap())]
            .prop_flat_map(|f| (tensor(f), poly(f, 4, 3, 3), poly(f, 4, 3, 3), poly(f, 4, 3, 3))),
        order in 0usize..=3,
    ) {
        let ctx = StarContext::new(t, order).unwrap();
        let (sa, sb, sc) = (ctx.lift(&a), ctx.lift(&b), ctx.lift(&c));
        let ab = ctx.star_mul(&sa, &sb).unwrap();
        prop_assert_eq!(ab.coeff(0), &a.mul(&b));
        prop_assert_eq!(
            ctx.star_mul(&ab, &sc).unwrap(),
            ctx.star_mul(&sa, &ctx.star_mul(&sb, &sc).unwrap()).unwrap()
        );
        let anti = ctx.star_commutator(&sa, &sb).unwrap().checked_add(&ctx.star_commutator(&sb, &sa).unwrap()).unwrap();
        prop_assert!(anti.is_zero());
        if order >= 2 {
            prop_assert!(ctx.verify_correspondence(&a, &b).unwrap().holds);
        }
    }

    #[test]
    fn zero_tensor_gives_commutative_product(
        (a, b) in fields().prop_flat_map(|f| (poly(f, 4, 3, 3), poly(f, 4, 3, 3))),
    ) {
        let ctx = StarContext::new(PoissonTensor::zero(vars(4), a.field()).unwrap(), 3).unwrap();
        let ab = ctx.star_mul(&ctx.lift(&a), &ctx.lift(&b)).unwrap();
        prop_assert_eq!(ab, FormalSeries::lift(a.mul(&b), ctx.order()));
    }

    #[test]
    fn centralizer_elements_commute(f in free(Q, 2, 2, 3)) {
        prop_assume!(!f.is_scalar());
        let basis = centralizer_basis(&f, 3).unwrap();
        prop_assert!(basis.verify().unwrap());
        let dims = basis.dims();
        prop_assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sylvester_identity(
        lambda in prop::collection::btree_set(-9i64..=9, 3),
        rhs in scalar_matrix(Q, 3),
    ) {
        let a0: Vec<Scalar> = lambda.into_iter().map(|l| Q.from_i64(l)).collect();
        let rhs = rhs.off_diagonal_part();
        let t = solve_sylvester_diag(&a0, &rhs).unwrap();
        prop_assert_eq!(t.commutator(&Matrix::diagonal(a0, Q)).unwrap(), rhs.neg());
    }

    #[test]
    fn diagonalization_removes_off_diagonal(
        lambda in prop::collection::btree_set(-9i64..=9, 3),
        m1 in scalar_matrix(Q, 3),
        m2 in scalar_matrix(Q, 3),
    ) {
        let a0 = Matrix::diagonal(lambda.into_iter().map(|l| Q.from_i64(l)).collect(), Q);
        let a = FormalSeries::new(vec![a0, m1, m2]).unwrap();
        let rep = successive_diagonalize(&a, 2, None).unwrap();
        let conj = rep.conjugator.plain_mul(&a).unwrap().plain_mul(&rep.inverse).unwrap();
        prop_assert!(conj.coeffs().iter().all(|c| c.is_diagonal()));
        prop_assert!(rep.conjugator.coeff(0).is_diagonal());
    }
}
