//! Deterministic JSON reports.
//!
//! Every report is a [`Report`] envelope carrying the engine version, field,
//! seed and bounds, plus a command-specific body. The bodies for
//! centralizer, Bergman and pipeline runs store their exact witnesses as
//! pretty-printed text and re-check them in `verify`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::centralizer_lab::{BergmanReport, CentralizerBasis, PipelineReport};
use crate::error::{Error, Result};
use crate::free_algebra::{parse_free, FreePoly};
use crate::generic_matrices::{pi_reduce, BivariatePoly, PolyMatrix};
use crate::linalg::{solve_in_span, SparseVec};
use crate::matrix::parse_matrix;
use crate::quantization::{PoissonSource, PoissonTensor, StarContext, StarOp};
use crate::rings::{parse_comm, Field};

pub const ENGINE: &str = "qcentral";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// Envelope shared by all commands. Objects serialize with sorted keys.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub engine: String,
    pub version: String,
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub bounds: BTreeMap<String, u64>,
    pub verdict: Verdict,
    /// One-line human summary, identical to the last line of text output.
    pub summary: String,
    pub body: Value,
}

impl Report {
    pub fn new(command: &str, field: Field, seed: u64) -> Report {
        Report {
            engine: ENGINE.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            field: field.to_string(),
            seed,
            bounds: BTreeMap::new(),
            verdict: Verdict::Pass,
            summary: String::new(),
            body: Value::Null,
        }
    }

    pub fn bound(mut self, name: &str, value: u64) -> Report {
        self.bounds.insert(name.into(), value);
        self
    }

    pub fn body<T: Serialize>(mut self, body: &T) -> Report {
        self.body = serde_json::to_value(body).expect("report bodies serialize");
        self
    }

    pub fn verdict(mut self, verdict: Verdict, summary: impl Into<String>) -> Report {
        self.verdict = verdict;
        self.summary = summary.into();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::VerificationFailed(format!("bad report: {e}")))
    }

    pub fn parsed_field(&self) -> Result<Field> {
        self.field.parse()
    }
}

fn fail(what: impl Into<String>) -> Error {
    Error::VerificationFailed(what.into())
}

fn coordinates(p: &FreePoly) -> SparseVec<crate::free_algebra::Word> {
    p.terms().iter().cloned().collect()
}

fn parse_poly_matrix(text: &str, field: Field) -> Result<PolyMatrix> {
    parse_matrix(text, field, |e| parse_comm(e, field))
}

/// Body of a `centralizer` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerBody {
    pub f: String,
    pub generators: usize,
    pub bound: usize,
    pub dims: Vec<usize>,
    /// Basis of `K_m` for each `m`.
    pub levels: Vec<Vec<String>>,
}

impl CentralizerBody {
    pub fn new(b: &CentralizerBasis) -> CentralizerBody {
        CentralizerBody {
            f: b.f.to_string(),
            generators: b.f.generators(),
            bound: b.bound,
            dims: b.dims(),
            levels: b
                .levels
                .iter()
                .map(|l| l.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }

    /// Re-parses every element and checks that it commutes with `f` and with
    /// the other top-level elements.
    pub fn verify(&self, field: Field) -> Result<()> {
        let f = parse_free(&self.f, self.generators, field)?;
        if self.dims != self.levels.iter().map(|l| l.len()).collect::<Vec<_>>() {
            return Err(fail("dimension table disagrees with the stored bases"));
        }
        let top = self
            .levels
            .last()
            .into_iter()
            .flatten()
            .map(|t| parse_free(t, self.generators, field))
            .collect::<Result<Vec<_>>>()?;
        for (i, a) in top.iter().enumerate() {
            if !f.commutator(a)?.is_zero() {
                return Err(fail(format!("{a} does not commute with f")));
            }
            for b in &top[i + 1..] {
                if !a.commutator(b)?.is_zero() {
                    return Err(fail(format!("{a} and {b} do not commute")));
                }
            }
        }
        Ok(())
    }
}

/// Body of a Bergman check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergmanBody {
    pub f: String,
    pub generators: usize,
    pub bound: usize,
    pub generator: Option<String>,
    pub passed: bool,
    pub dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub witness: Option<String>,
    pub basis: Vec<String>,
}

impl BergmanBody {
    pub fn new(r: &BergmanReport) -> BergmanBody {
        BergmanBody {
            f: r.basis.f.to_string(),
            generators: r.basis.f.generators(),
            bound: r.basis.bound,
            generator: r.generator.as_ref().map(|h| h.to_string()),
            passed: r.passed,
            dims: r.dims.clone(),
            expected_dims: r.expected_dims.clone(),
            witness: r.witness.as_ref().map(|w| w.to_string()),
            basis: r.basis.top().iter().map(|p| p.to_string()).collect(),
        }
    }

    /// Re-checks commutation of the stored basis and, on a pass, membership
    /// of every basis element in the span of the powers of the generator.
    pub fn verify(&self, field: Field) -> Result<()> {
        let parse = |t: &str| parse_free(t, self.generators, field);
        let f = parse(&self.f)?;
        let basis = self.basis.iter().map(|t| parse(t)).collect::<Result<Vec<_>>>()?;
        for p in &basis {
            if !f.commutator(p)?.is_zero() {
                return Err(fail(format!("{p} does not commute with f")));
            }
        }
        if self.passed {
            let h = parse(self.generator.as_deref().ok_or_else(|| fail("pass without generator"))?)?;
            let powers: Vec<_> = crate::centralizer_lab::generator_powers(&h, self.bound)
                .iter()
                .map(coordinates)
                .collect();
            for p in &basis {
                if solve_in_span(field, &coordinates(p), &powers).is_none() {
                    return Err(fail(format!("{p} is not a polynomial in {h}")));
                }
            }
        } else if let Some(w) = &self.witness {
            if !f.commutator(&parse(w)?)?.is_zero() {
                return Err(fail("failure witness does not commute with f"));
            }
        }
        Ok(())
    }
}

/// One size of a pipeline body.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBody {
    pub size: usize,
    pub f_image: String,
    pub g_image: String,
    pub images_commute: bool,
    pub annihilator: Option<String>,
    pub annihilator_degree: Option<u32>,
    pub star_hbar1: String,
    pub star_vanishes: bool,
}

/// Body of a `bergman-pipeline` or `probe` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineBody {
    pub f: Option<String>,
    pub g: Option<String>,
    pub generators: Option<usize>,
    pub commute_in_free: bool,
    /// `"pairing"` or a tensor in the tensor-file format.
    pub poisson: String,
    pub order: usize,
    pub max_degree: u32,
    pub stable: bool,
    pub verdict: String,
    pub sizes: Vec<SizeBody>,
}

impl PipelineBody {
    pub fn new(r: &PipelineReport) -> PipelineBody {
        PipelineBody {
            f: r.free_pair.as_ref().map(|p| p.0.to_string()),
            g: r.free_pair.as_ref().map(|p| p.1.to_string()),
            generators: r.free_pair.as_ref().map(|p| p.0.generators()),
            commute_in_free: r.commute_in_free,
            poisson: r.source.label(),
            order: r.order,
            max_degree: r.max_degree,
            stable: r.stable,
            verdict: r.verdict.as_str().into(),
            sizes: r
                .sizes
                .iter()
                .map(|s| SizeBody {
                    size: s.size,
                    f_image: s.f_image.to_string(),
                    g_image: s.g_image.to_string(),
                    images_commute: s.images_commute,
                    annihilator: s.annihilator.poly().map(|p| p.to_string()),
                    annihilator_degree: s.annihilator.poly().map(|p| p.total_degree()),
                    star_hbar1: s.star_hbar1.to_string(),
                    star_vanishes: s.star_vanishes,
                })
                .collect(),
        }
    }

    /// Re-checks every stored witness: reductions of the free pair, image
    /// commutation, annihilator vanishing and the star commutator.
    pub fn verify(&self, field: Field) -> Result<()> {
        let source = if self.poisson == "pairing" {
            PoissonSource::Pairing
        } else {
            PoissonSource::Fixed(PoissonTensor::from_json(&self.poisson, field)?)
        };
        let free_pair = match (&self.f, &self.g, self.generators) {
            (Some(f), Some(g), Some(s)) => Some((parse_free(f, s, field)?, parse_free(g, s, field)?)),
            (None, None, None) => None,
            _ => return Err(fail("incomplete free pair")),
        };
        if let Some((f, g)) = &free_pair {
            if f.commutator(g)?.is_zero() != self.commute_in_free {
                return Err(fail("free-algebra commutation flag is wrong"));
            }
        }
        for s in &self.sizes {
            let fm = parse_poly_matrix(&s.f_image, field)?;
            let gm = parse_poly_matrix(&s.g_image, field)?;
            if let Some((f, g)) = &free_pair {
                if *pi_reduce(f, s.size)?.matrix() != fm || *pi_reduce(g, s.size)?.matrix() != gm {
                    return Err(fail(format!("stored images at size {} are not reductions", s.size)));
                }
            }
            if fm.commutator(&gm)?.is_zero() != s.images_commute {
                return Err(fail(format!("image commutation flag wrong at size {}", s.size)));
            }
            if let Some(p) = &s.annihilator {
                let p = BivariatePoly::parse(p, field)?;
                if !p.evaluate(&fm, &gm)?.is_zero() || Some(p.total_degree()) != s.annihilator_degree {
                    return Err(fail(format!("annihilator {p} fails at size {}", s.size)));
                }
            }
            let vars: std::collections::BTreeSet<_> = fm
                .entries()
                .iter()
                .chain(gm.entries())
                .flat_map(|e| e.variables())
                .collect();
            let ctx = StarContext::new(source.resolve(vars, field), self.order)?;
            let c = ctx.matrix_star(&ctx.quantize_lift(&fm)?, &ctx.quantize_lift(&gm)?, StarOp::Commutator)?;
            if c.coeff(1).to_string() != s.star_hbar1
                || (c.coeff(1).is_zero() && c.coeff(0).is_zero()) != s.star_vanishes
            {
                return Err(fail(format!("star commutator differs at size {}", s.size)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer_lab::{bergman_check, bergman_pipeline, centralizer_basis, commuting_matrix_probe};

    const Q: Field = Field::Rational;

    fn free(t: &str) -> FreePoly {
        parse_free(t, 2, Q).unwrap()
    }

    #[test]
    fn envelope_round_trip() {
        let body = CentralizerBody::new(&centralizer_basis(&free("x1"), 0).unwrap());
        assert_eq!(body.dims, [1]);
        let r = Report::new("centralizer", Q, 5)
            .bound("d", 0)
            .body(&body)
            .verdict(Verdict::Pass, "done: PASS");
        let text = r.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
        let b: CentralizerBody = serde_json::from_value(back.body).unwrap();
        b.verify(Q).unwrap();
    }

    #[test]
    fn bergman_body_verifies() {
        let body = BergmanBody::new(&bergman_check(&free("x1*x2"), 4).unwrap());
        body.verify(Q).unwrap();
        let mut bad = body.clone();
        bad.generator = Some("x2".into());
        assert!(bad.verify(Q).is_err());
    }

    #[test]
    fn pipeline_body_verifies() {
        let rep = bergman_pipeline(&free("x1"), &free("x1^2 + 1"), 2, 3, &PoissonSource::Pairing, 2)
            .unwrap();
        let body = PipelineBody::new(&rep);
        body.verify(Q).unwrap();
        let mut bad = body.clone();
        bad.sizes[1].annihilator = Some("u^2 - v".into());
        assert!(bad.verify(Q).is_err());

        let p = |t: &str| parse_comm(t, Q).unwrap();
        let d = |a: &str, b: &str| PolyMatrix::diagonal(vec![p(a), p(b)], Q);
        let probe = commuting_matrix_probe(&d("x1", "x2"), &d("y1", "y2"), 2, &PoissonSource::Pairing, 2)
            .unwrap();
        let body = PipelineBody::new(&probe);
        body.verify(Q).unwrap();
        let mut bad = body;
        bad.sizes[0].star_hbar1 = "[1, 0; 0, 2]".into();
        assert!(bad.verify(Q).is_err());
    }
}
