//! Multivariate gcd by recursive content/primitive-part splitting and
//! primitive pseudo-remainder sequences.

use super::{CommPoly, Ring, Variable};

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &CommPoly, b: &CommPoly) -> CommPoly {
    assert_eq!(a.field(), b.field(), "field mismatch");
    gcd_rec(a, b).monic()
}

fn gcd_rec(a: &CommPoly, b: &CommPoly) -> CommPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return CommPoly::one(a.field());
    }
    let v = a
        .variables()
        .into_iter()
        .chain(b.variables())
        .max()
        .expect("non-constant input has a variable");
    if a.degree_in(&v) == 0 {
        return gcd_rec(a, &content(b, &v));
    }
    if b.degree_in(&v) == 0 {
        return gcd_rec(&content(a, &v), b);
    }
    let (ca, cb) = (content(a, &v), content(b, &v));
    let pa = exact(a, &ca);
    let pb = exact(b, &cb);
    let c = gcd_rec(&ca, &cb);
    let g = primitive_gcd(pa, pb, &v);
    c.mul(&g)
}

fn exact(a: &CommPoly, d: &CommPoly) -> CommPoly {
    a.div_exact(d)
        .expect("same field")
        .expect("content divides its polynomial")
}

/// Gcd of the coefficients of `p` as a polynomial in `v`, made monic.
fn content(p: &CommPoly, v: &Variable) -> CommPoly {
    let mut g = CommPoly::zero(p.field());
    for c in p.coefficients_in(v) {
        g = gcd_rec(&g, &c);
        if g.is_constant() && !g.is_zero() {
            return CommPoly::one(p.field());
        }
    }
    g.monic()
}

fn primitive_part(p: &CommPoly, v: &Variable) -> CommPoly {
    exact(p, &content(p, v))
}

fn primitive_gcd(a: CommPoly, b: CommPoly, v: &Variable) -> CommPoly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            return g;
        }
        if r.degree_in(v) == 0 {
            return CommPoly::one(f.field());
        }
        f = g;
        g = primitive_part(&r, v);
    }
}

/// `lc(g)^k * f mod g` in `v`, for whatever `k` the elimination needs.
fn pseudo_remainder(f: &CommPoly, g: &CommPoly, v: &Variable) -> CommPoly {
    let field = f.field();
    let gc = g.coefficients_in(v);
    let dg = gc.len() - 1;
    let lc = gc[dg].clone();
    let mut rem = f.coefficients_in(v);
    loop {
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        if rem.len() <= dg {
            break;
        }
        let d = rem.len() - 1;
        let lr = rem[d].clone();
        let shift = d - dg;
        for c in rem.iter_mut() {
            *c = c.mul(&lc);
        }
        for (k, gk) in gc.iter().enumerate() {
            rem[k + shift] = rem[k + shift].sub(&lr.mul(gk));
        }
    }
    CommPoly::from_coefficients_in(field, v, &rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Field;

    fn v(name: &str) -> CommPoly {
        CommPoly::var(Variable::aux(name, 0), Field::Rational)
    }

    #[test]
    fn shared_linear_factor() {
        let (x, y) = (v("x"), v("y"));
        let d = &x - &y;
        let a = &d * &(&x + &y);
        let b = &d * &(&(&x * &y) + &CommPoly::one(Field::Rational));
        assert_eq!(poly_gcd(&a, &b), d.monic());
    }

    #[test]
    fn coprime_inputs() {
        let (x, y) = (v("x"), v("y"));
        assert_eq!(poly_gcd(&x, &y), CommPoly::one(Field::Rational));
    }

    #[test]
    fn multivariate_content() {
        let (x, y, z) = (v("x"), v("y"), v("z"));
        let common = &(&x * &y) + &z;
        let a = &common.pow(2) * &(&x + &z);
        let b = &common * &(&y - &z).pow(2);
        assert_eq!(poly_gcd(&a, &b), common.monic());
        assert_eq!(poly_gcd(&a, &CommPoly::zero(Field::Rational)), a.monic());
    }

    #[test]
    fn over_prime_field() {
        let f7 = Field::prime(7).unwrap();
        let x = CommPoly::var(Variable::aux("x", 0), f7);
        let one = CommPoly::one(f7);
        // x^7 - x = x(x-1)...(x-6) over F_7
        let a = &x.pow(7) - &x;
        let b = &x.pow(2) - &one;
        assert_eq!(poly_gcd(&a, &b), b.monic());
    }
}
