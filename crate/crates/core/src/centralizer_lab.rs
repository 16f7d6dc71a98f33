//! Centralizers in the free algebra and the experiments built on them.
//!
//! [`centralizer_basis`] computes, for every length bound `m <= d`, the exact
//! kernel of `w -> [f, w]` on words of length at most `m`.
//! [`bergman_check`] tests whether that kernel is spanned by the powers of a
//! single element. [`bergman_pipeline`] follows a commuting pair through
//! generic-matrix reductions, annihilator searches and star commutators of
//! lifted images, and [`commuting_matrix_probe`] does the same for a commuting
//! pair of matrices given directly.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::free_algebra::{Degree, FreePoly, Word};
use crate::generic_matrices::{find_annihilator, pi_reduce, AnnihilatorResult, PolyMatrix};
use crate::linalg::{kernel, solve_in_span, SparseVec};
use crate::quantization::{PoissonSource, StarContext, StarOp};
use crate::rings::Variable;

fn coordinates(p: &FreePoly) -> SparseVec<Word> {
    p.terms().iter().cloned().collect()
}

fn degree_of(p: &FreePoly) -> usize {
    match p.degree() {
        Degree::Finite(d) => d,
        Degree::NegInfinity => 0,
    }
}

/// Kernels `K_0 ⊆ K_1 ⊆ ... ⊆ K_d` of `w -> [f, w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerBasis {
    pub f: FreePoly,
    pub bound: usize,
    /// `levels[m]` is a reduced echelon basis of `K_m`, sorted by leading
    /// word.
    pub levels: Vec<Vec<FreePoly>>,
}

impl CentralizerBasis {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn top(&self) -> &[FreePoly] {
        self.levels.last().map_or(&[], |l| l.as_slice())
    }

    /// Every basis element commutes with `f` and with every other element.
    pub fn verify(&self) -> Result<bool> {
        let top = self.top();
        for (i, a) in top.iter().enumerate() {
            if !self.f.commutator(a)?.is_zero() {
                return Ok(false);
            }
            for b in &top[i + 1..] {
                if !a.commutator(b)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(self.dims().windows(2).all(|w| w[0] <= w[1]))
    }
}

/// Exact centralizer of `f` among elements of degree at most `bound`.
pub fn centralizer_basis(f: &FreePoly, bound: usize) -> Result<CentralizerBasis> {
    if f.is_scalar() {
        return Err(Error::ScalarInput);
    }
    let field = f.field();
    let s = f.generators();
    let mut words = Word::all_up_to(s, bound);
    words.reverse();
    let images: Vec<(usize, SparseVec<Word>)> = words
        .iter()
        .map(|w| {
            let ww = FreePoly::word(w.clone(), field.one(), s);
            Ok((w.len(), coordinates(&f.commutator(&ww)?)))
        })
        .collect::<Result<_>>()?;
    let mut levels = Vec::with_capacity(bound + 1);
    for m in 0..=bound {
        let idx: Vec<usize> = (0..words.len()).filter(|&i| images[i].0 <= m).collect();
        let columns: Vec<SparseVec<Word>> = idx.iter().map(|&i| images[i].1.clone()).collect();
        let mut level: Vec<FreePoly> = kernel(field, &columns)
            .into_iter()
            .map(|row| {
                FreePoly::from_terms(
                    field,
                    s,
                    idx.iter().zip(row).map(|(&i, c)| (words[i].clone(), c)),
                )
            })
            .collect();
        level.sort_by(|a, b| a.leading().map(|l| l.0).cmp(&b.leading().map(|l| l.0)));
        levels.push(level);
    }
    let basis = CentralizerBasis {
        f: f.clone(),
        bound,
        levels,
    };
    if !basis.verify()? {
        return Err(Error::VerificationFailed("centralizer basis does not commute".into()));
    }
    Ok(basis)
}

/// Outcome of [`bergman_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergmanReport {
    pub basis: CentralizerBasis,
    /// The generator `h` that worked, or the last one tried.
    pub generator: Option<FreePoly>,
    /// `K_d` lies in the span of the powers of `generator`.
    pub passed: bool,
    pub dims: Vec<usize>,
    /// `|{j >= 0 : j deg h <= m}|` for each `m`.
    pub expected_dims: Vec<usize>,
    /// A basis element outside the span of the powers, on failure.
    pub witness: Option<FreePoly>,
}

impl BergmanReport {
    pub fn dims_match(&self) -> bool {
        self.generator.is_some() && self.dims == self.expected_dims
    }

    pub fn holds(&self) -> bool {
        self.passed && self.dims_match()
    }
}

/// Powers `1, h, ..., h^k` with `k deg h <= bound`.
pub fn generator_powers(h: &FreePoly, bound: usize) -> Vec<FreePoly> {
    let e = degree_of(h).max(1);
    (0..=bound / e).map(|k| h.pow(k as u32)).collect()
}

/// Checks that the degree-bounded centralizer of `f` is a polynomial ring in
/// one element.
pub fn bergman_check(f: &FreePoly, bound: usize) -> Result<BergmanReport> {
    if f.is_scalar() {
        return Err(Error::ScalarInput);
    }
    let deg_f = degree_of(f);
    if bound < deg_f {
        return Err(Error::DegreeBoundTooSmall {
            bound,
            degree: deg_f,
        });
    }
    let basis = centralizer_basis(f, bound)?;
    let top = basis.top().to_vec();
    let min_degree = top
        .iter()
        .filter(|p| !p.is_scalar())
        .map(degree_of)
        .min()
        .expect("f itself lies in the centralizer");
    let candidates: Vec<FreePoly> = top
        .iter()
        .filter(|p| !p.is_scalar() && degree_of(p) == min_degree)
        .map(|p| p.checked_sub(&FreePoly::constant(p.constant_term(), p.generators())))
        .collect::<Result<_>>()?;

    let field = f.field();
    let mut generator = None;
    let mut witness = None;
    let mut passed = false;
    for h in candidates {
        let powers: Vec<SparseVec<Word>> =
            generator_powers(&h, bound).iter().map(coordinates).collect();
        let outside = top
            .iter()
            .find(|p| solve_in_span(field, &coordinates(p), &powers).is_none());
        generator = Some(h);
        match outside {
            None => {
                passed = true;
                witness = None;
                break;
            }
            Some(p) => witness = Some(p.clone()),
        }
    }
    let expected_dims = (0..=bound).map(|m| m / min_degree + 1).collect();
    Ok(BergmanReport {
        dims: basis.dims(),
        basis,
        generator,
        passed,
        expected_dims,
        witness,
    })
}

/// Conclusion of a pipeline or probe run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PipelineVerdict {
    /// `[f, g] != 0` in the free algebra.
    NonCommuting,
    /// An annihilator exists at every tested size.
    Trdeg1,
    /// Some size has no annihilator up to the bound and a nonzero
    /// `h^1` star commutator.
    StarObstruction,
    Inconclusive,
}

impl PipelineVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PipelineVerdict::NonCommuting => "non-commuting",
            PipelineVerdict::Trdeg1 => "trdeg 1",
            PipelineVerdict::StarObstruction => "star obstruction",
            PipelineVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Everything computed at one matrix size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeResult {
    pub size: usize,
    pub f_image: PolyMatrix,
    pub g_image: PolyMatrix,
    pub images_commute: bool,
    pub annihilator: AnnihilatorResult,
    /// `h^1` coefficient of `[F^, G^]_*` for the lifts.
    pub star_hbar1: PolyMatrix,
    pub star_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineReport {
    /// `Some` for free-algebra inputs.
    pub free_pair: Option<(FreePoly, FreePoly)>,
    pub commute_in_free: bool,
    pub sizes: Vec<SizeResult>,
    /// All sizes found literally the same annihilator.
    pub stable: bool,
    pub source: PoissonSource,
    pub order: usize,
    pub max_degree: u32,
    pub verdict: PipelineVerdict,
}

fn matrix_variables(ms: &[&PolyMatrix]) -> BTreeSet<Variable> {
    ms.iter()
        .flat_map(|m| m.entries().iter().flat_map(|e| e.variables()))
        .collect()
}

fn analyze_size(
    size: usize,
    f: PolyMatrix,
    g: PolyMatrix,
    max_degree: u32,
    source: &PoissonSource,
    order: usize,
) -> Result<SizeResult> {
    let images_commute = f.commutator(&g)?.is_zero();
    let annihilator = if images_commute {
        find_annihilator(&f, &g, max_degree)?
    } else {
        AnnihilatorResult::NoneUpTo {
            bound: max_degree,
            size,
        }
    };
    let tensor = source.resolve(matrix_variables(&[&f, &g]), f.field());
    let ctx = StarContext::new(tensor, order)?;
    let c = ctx.matrix_star(&ctx.quantize_lift(&f)?, &ctx.quantize_lift(&g)?, StarOp::Commutator)?;
    let star_hbar1 = c.coeff(1).clone();
    Ok(SizeResult {
        size,
        star_vanishes: star_hbar1.is_zero() && c.coeff(0).is_zero(),
        star_hbar1,
        f_image: f,
        g_image: g,
        images_commute,
        annihilator,
    })
}

fn conclude(sizes: &[SizeResult]) -> (bool, PipelineVerdict) {
    let found: Vec<_> = sizes.iter().filter_map(|s| s.annihilator.poly()).collect();
    let stable = found.len() == sizes.len() && found.windows(2).all(|w| w[0] == w[1]);
    let verdict = if found.len() == sizes.len() {
        PipelineVerdict::Trdeg1
    } else if sizes
        .iter()
        .any(|s| s.annihilator.poly().is_none() && !s.star_vanishes)
    {
        PipelineVerdict::StarObstruction
    } else {
        PipelineVerdict::Inconclusive
    };
    (stable, verdict)
}

fn check_order(order: usize) -> Result<()> {
    if order < 1 {
        return Err(Error::InvalidOrder("star commutators need order >= 1".into()));
    }
    Ok(())
}

/// Follows `f, g` through reductions to sizes `1..=max_size`, annihilator
/// searches up to `max_degree`, and star commutators of the lifted images.
/// A non-commuting pair is reported, not rejected.
pub fn bergman_pipeline(
    f: &FreePoly,
    g: &FreePoly,
    max_size: usize,
    max_degree: u32,
    source: &PoissonSource,
    order: usize,
) -> Result<PipelineReport> {
    check_order(order)?;
    if max_size == 0 {
        return Err(Error::InvalidSize("need at least size 1".into()));
    }
    let commute_in_free = f.commutator(g)?.is_zero();
    let mut sizes = Vec::new();
    if commute_in_free {
        for n in 1..=max_size {
            let fm = pi_reduce(f, n)?.into_matrix();
            let gm = pi_reduce(g, n)?.into_matrix();
            sizes.push(analyze_size(n, fm, gm, max_degree, source, order)?);
        }
    }
    let (stable, verdict) = if commute_in_free {
        conclude(&sizes)
    } else {
        (false, PipelineVerdict::NonCommuting)
    };
    Ok(PipelineReport {
        free_pair: Some((f.clone(), g.clone())),
        commute_in_free,
        sizes,
        stable,
        source: source.clone(),
        order,
        max_degree,
        verdict,
    })
}

/// The pipeline's matrix stages on a commuting pair that is not required
/// to come from the free algebra.
pub fn commuting_matrix_probe(
    f: &PolyMatrix,
    g: &PolyMatrix,
    max_degree: u32,
    source: &PoissonSource,
    order: usize,
) -> Result<PipelineReport> {
    check_order(order)?;
    if !f.commutator(g)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    let sizes = vec![analyze_size(f.size(), f.clone(), g.clone(), max_degree, source, order)?];
    let (stable, verdict) = conclude(&sizes);
    Ok(PipelineReport {
        free_pair: None,
        commute_in_free: true,
        sizes,
        stable,
        source: source.clone(),
        order,
        max_degree,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::parse_free;
    use crate::rings::{parse_comm, Field};

    const Q: Field = Field::Rational;

    fn free(text: &str) -> FreePoly {
        parse_free(text, 2, Q).unwrap()
    }

    fn strings(ps: &[FreePoly]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    /// Brute-force oracle: the null space of the full commutator matrix
    /// over all words of length <= d, computed by dense elimination.
    fn brute_dim(f: &FreePoly, d: usize) -> usize {
        let words = Word::all_up_to(f.generators(), d);
        let images: Vec<FreePoly> = words
            .iter()
            .map(|w| f.commutator(&FreePoly::word(w.clone(), Q.one(), 2)).unwrap())
            .collect();
        let rows: BTreeSet<Word> = images
            .iter()
            .flat_map(|p| p.terms().iter().map(|t| t.0.clone()))
            .collect();
        let dense: Vec<Vec<crate::rings::Scalar>> = rows
            .iter()
            .map(|r| images.iter().map(|p| p.coefficient(r)).collect())
            .collect();
        let rank = if dense.is_empty() {
            0
        } else {
            crate::linalg::rref(Q, dense).len()
        };
        words.len() - rank
    }

    #[test]
    fn centralizer_of_x1() {
        let b = centralizer_basis(&free("x1"), 3).unwrap();
        assert_eq!(strings(b.top()), ["1", "x1", "x1^2", "x1^3"]);
        assert_eq!(b.dims(), [1, 2, 3, 4]);
        assert_eq!(brute_dim(&free("x1"), 3), 4);
    }

    #[test]
    fn centralizer_of_square() {
        let b = centralizer_basis(&free("x1^2"), 3).unwrap();
        assert_eq!(strings(b.top()), ["1", "x1", "x1^2", "x1^3"]);
    }

    #[test]
    fn centralizer_of_product() {
        let b = centralizer_basis(&free("x1*x2"), 2).unwrap();
        assert_eq!(strings(b.top()), ["1", "x1*x2"]);
        assert_eq!(brute_dim(&free("x1*x2"), 2), 2);
    }

    #[test]
    fn scalar_input_rejected() {
        assert_eq!(centralizer_basis(&free("3"), 2), Err(Error::ScalarInput));
        assert_eq!(bergman_check(&free("0"), 2).unwrap_err(), Error::ScalarInput);
        assert!(matches!(
            bergman_check(&free("x1*x2"), 1),
            Err(Error::DegreeBoundTooSmall { bound: 1, degree: 2 })
        ));
    }

    #[test]
    fn bergman_examples() {
        for (f, d, h) in [("x1^2", 4, "x1"), ("x1 + x2", 3, "x1 + x2"), ("x1^3 + x1", 4, "x1")] {
            let rep = bergman_check(&free(f), d).unwrap();
            assert!(rep.holds(), "{f}");
            assert_eq!(rep.generator.unwrap().to_string(), h);
            assert_eq!(rep.dims.len(), d + 1);
            assert_eq!(*rep.dims.last().unwrap(), brute_dim(&free(f), d));
        }
    }

    #[test]
    fn bergman_product_generator() {
        let rep = bergman_check(&free("x1*x2 + 2"), 4).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.generator.unwrap().to_string(), "x1*x2");
        assert_eq!(rep.dims, [1, 1, 2, 2, 3]);
    }

    #[test]
    fn pipeline_examples() {
        let rep = bergman_pipeline(&free("x1"), &free("x1^2 + x1"), 2, 3, &PoissonSource::Pairing, 2)
            .unwrap();
        assert!(rep.commute_in_free && rep.stable);
        assert_eq!(rep.verdict, PipelineVerdict::Trdeg1);
        for s in &rep.sizes {
            assert!(s.images_commute && s.star_vanishes);
            assert_eq!(s.annihilator.poly().unwrap().to_string(), "u^2 + u - v");
        }

        let rep = bergman_pipeline(&free("x1"), &free("x2"), 2, 3, &PoissonSource::Pairing, 2).unwrap();
        assert_eq!(rep.verdict, PipelineVerdict::NonCommuting);
        assert!(rep.sizes.is_empty());

        let rep = bergman_pipeline(&free("x1"), &free("x1"), 2, 3, &PoissonSource::Pairing, 2).unwrap();
        assert_eq!(rep.sizes[1].annihilator.poly().unwrap().to_string(), "u - v");
        assert_eq!(rep.verdict, PipelineVerdict::Trdeg1);
    }

    #[test]
    fn probe_examples() {
        let p = |t: &str| parse_comm(t, Q).unwrap();
        let d = |a: &str, b: &str| PolyMatrix::diagonal(vec![p(a), p(b)], Q);
        let rep = commuting_matrix_probe(&d("x1", "x2"), &d("y1", "y2"), 3, &PoissonSource::Pairing, 2)
            .unwrap();
        let s = &rep.sizes[0];
        assert_eq!(s.annihilator, AnnihilatorResult::NoneUpTo { bound: 3, size: 2 });
        assert_eq!(s.star_hbar1, d("1", "1"));
        assert_eq!(rep.verdict, PipelineVerdict::StarObstruction);

        let x = PolyMatrix::diagonal(vec![p("X1[1,1]")], Q);
        let x2 = PolyMatrix::diagonal(vec![p("X1[1,1]^2")], Q);
        let rep = commuting_matrix_probe(&x, &x2, 3, &PoissonSource::Pairing, 2).unwrap();
        assert_eq!(rep.sizes[0].annihilator.poly().unwrap().to_string(), "u^2 - v");
        assert!(rep.sizes[0].star_vanishes);

        let rep = commuting_matrix_probe(&x, &x, 3, &PoissonSource::Pairing, 2).unwrap();
        assert_eq!(rep.sizes[0].annihilator.poly().unwrap().to_string(), "u - v");

        let e = PolyMatrix::unit(2, 0, 1, Q);
        assert_eq!(
            commuting_matrix_probe(&e, &PolyMatrix::unit(2, 1, 0, Q), 3, &PoissonSource::Pairing, 2),
            Err(Error::NotCommuting)
        );
    }
}
