//! Seeded random inputs and the randomized star-product suites.
//!
//! All randomness goes through ChaCha8 seeded from a `u64`, so a seed fully
//! determines every generated polynomial on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::rings::{CommPoly, Field, Monomial, Ring, Variable};
use crate::quantization::{PoissonTensor, StarContext};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The coordinates `x1, y1, ..., xk, yk` of the pairing tensor.
pub fn paired_variables(pairs: u32) -> Vec<Variable> {
    (1..=pairs)
        .flat_map(|k| [Variable::aux("x", k), Variable::aux("y", k)])
        .collect()
}

/// Polynomial with 1 to `max_terms` terms of total degree at most
/// `max_degree` in `vars`, coefficients in `-3..=3`.
pub fn random_comm_poly(
    rng: &mut ChaCha8Rng,
    vars: &[Variable],
    max_degree: u32,
    max_terms: usize,
    field: Field,
) -> CommPoly {
    let terms = rng.gen_range(1..=max_terms);
    let mut p = CommPoly::zero(field);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let powers = (0..degree).map(|_| (vars.choose(rng).expect("nonempty").clone(), 1));
        let m = Monomial::from_powers(powers.collect::<Vec<_>>());
        let c = field.from_i64(rng.gen_range(-3..=3));
        p = p.add(&CommPoly::term(m, c));
    }
    p
}

/// Tally of a randomized suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub cases: usize,
    pub failures: usize,
    /// Inputs of the first failing case.
    pub first_failure: Option<Vec<String>>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, inputs: &[&CommPoly]) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(inputs.iter().map(|p| p.to_string()).collect());
            }
        }
    }
}

fn pairing_context(field: Field, order: usize) -> Result<(Vec<Variable>, StarContext)> {
    let vars = paired_variables(2);
    let ctx = StarContext::new(PoissonTensor::pairing(vars.clone(), field), order)?;
    Ok((vars, ctx))
}

/// `h^1` coefficient of `[a, b]_*` against `{a, b}` on random pairs in
/// four paired variables, order 2.
pub fn correspondence_suite(seed: u64, cases: usize, max_degree: u32, field: Field) -> Result<SuiteOutcome> {
    let (vars, ctx) = pairing_context(field, 2)?;
    let mut rng = rng(seed);
    let mut out = SuiteOutcome {
        cases: 0,
        failures: 0,
        first_failure: None,
    };
    for _ in 0..cases {
        let a = random_comm_poly(&mut rng, &vars, max_degree, 4, field);
        let b = random_comm_poly(&mut rng, &vars, max_degree, 4, field);
        let ok = ctx.verify_correspondence(&a, &b)?.holds;
        out.record(ok, &[&a, &b]);
    }
    Ok(out)
}

/// `(a * b) * c = a * (b * c)` on random triples in four paired variables.
pub fn associativity_suite(
    seed: u64,
    cases: usize,
    max_degree: u32,
    order: usize,
    field: Field,
) -> Result<SuiteOutcome> {
    let (vars, ctx) = pairing_context(field, order)?;
    let mut rng = rng(seed);
    let mut out = SuiteOutcome {
        cases: 0,
        failures: 0,
        first_failure: None,
    };
    for _ in 0..cases {
        let a = random_comm_poly(&mut rng, &vars, max_degree, 4, field);
        let b = random_comm_poly(&mut rng, &vars, max_degree, 4, field);
        let c = random_comm_poly(&mut rng, &vars, max_degree, 4, field);
        let (sa, sb, sc) = (ctx.lift(&a), ctx.lift(&b), ctx.lift(&c));
        let left = ctx.star_mul(&ctx.star_mul(&sa, &sb)?, &sc)?;
        let right = ctx.star_mul(&sa, &ctx.star_mul(&sb, &sc)?)?;
        out.record(left == right, &[&a, &b, &c]);
    }
    Ok(out)
}
