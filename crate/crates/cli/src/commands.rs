//! One runner per subcommand. Each builds a [`Report`] and the text lines
//! shown without `--json`; the last line is always the verdict.

use serde_json::json;

use qcentral_core::centralizer_lab::{bergman_check, bergman_pipeline, centralizer_basis, commuting_matrix_probe, PipelineReport, PipelineVerdict};
use qcentral_core::diagonalization::{diagonal_bracket_check, successive_diagonalize};
use qcentral_core::free_algebra::parse_free;
use qcentral_core::generic_matrices::{
    annihilator_stability, charpoly_residual, make_generic, pi_reduce, standard_identity, trace_and_charpoly,
    AnnihilatorResult, PolyMatrix,
};
use qcentral_core::matrix::{parse_matrix, Matrix};
use qcentral_core::quantization::{poisson_bracket, FormalSeries, PoissonSource, PoissonTensor, StarContext};
use qcentral_core::report::{BergmanBody, CentralizerBody, PipelineBody, Report, Verdict};
use qcentral_core::rings::{parse_comm, CommPoly, Field, RationalFunction, Ring, Scalar, Variable};
use qcentral_core::sample::{associativity_suite, correspondence_suite, SuiteOutcome};
use qcentral_core::{Error, Result};

use crate::cli::*;

/// A finished run.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub lines: Vec<String>,
}

impl Outcome {
    fn finish(report: Report, mut lines: Vec<String>, ok: bool, claim: impl std::fmt::Display) -> Outcome {
        let verdict = Verdict::from_bool(ok);
        let summary = format!("{claim}: {}", verdict.as_str());
        lines.push(summary.clone());
        Outcome {
            report: report.verdict(verdict, summary),
            lines,
        }
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Eval(a) => eval(a),
        Command::Commute(a) => commute(a),
        Command::Pi(a) => pi(a),
        Command::Al(a) => al(a),
        Command::Annihilator(a) => annihilator(a),
        Command::Star(a) => star(a),
        Command::Poisson(a) => poisson(a),
        Command::Diag(a) => diag(a),
        Command::Centralizer(a) => centralizer(a),
        Command::BergmanPipeline(a) => pipeline(a),
        Command::Probe(a) => probe(a),
    }
}

fn usage(message: &str) -> Error {
    Error::SyntaxError {
        position: 0,
        message: message.into(),
    }
}

fn report(name: &str, common: &Common) -> Report {
    Report::new(name, common.field, common.seed)
}

fn poly_matrix(text: &str, field: Field) -> Result<PolyMatrix> {
    parse_matrix(text, field, |e| parse_comm(e, field))
}

fn load_source(text: &str, field: Field) -> Result<PoissonSource> {
    if text == "pairing" {
        return Ok(PoissonSource::Pairing);
    }
    let contents = std::fs::read_to_string(text)
        .map_err(|e| Error::InvalidTensor(format!("cannot read {text}: {e}")))?;
    Ok(PoissonSource::Fixed(PoissonTensor::from_json(&contents, field)?))
}

fn tensor_for(source: &PoissonSource, polys: &[&CommPoly], field: Field) -> PoissonTensor {
    source.resolve(polys.iter().flat_map(|p| p.variables()), field)
}

fn eval(a: &EvalArgs) -> Result<Outcome> {
    let field = a.common.field;
    let f = parse_free(&a.f, a.s, field)?;
    let printed = f.to_string();
    let round_trip = parse_free(&printed, a.s, field)? == f;
    let mut lines = vec![format!("f = {printed}"), format!("degree: {}", f.degree())];
    let mut value = None;
    if !a.x.is_empty() {
        if a.x.len() != a.s {
            return Err(Error::ShapeMismatch(format!("--x given {} times for s = {}", a.x.len(), a.s)));
        }
        let images = a.x.iter().map(|t| poly_matrix(t, field)).collect::<Result<Vec<_>>>()?;
        let v = f.evaluate_in_matrices(&images)?;
        lines.push(format!("f(X) = {v}"));
        value = Some(v.to_string());
    }
    let report = report("eval", &a.common).bound("s", a.s as u64).body(&json!({
        "f": printed,
        "degree": f.degree().to_string(),
        "value": value,
        "round_trip": round_trip,
    }));
    Ok(Outcome::finish(report, lines, round_trip, "normal form round-trips through the parser"))
}

fn commute(a: &CommuteArgs) -> Result<Outcome> {
    let field = a.common.field;
    let f = parse_free(&a.f, a.s, field)?;
    let g = parse_free(&a.g, a.s, field)?;
    let c = f.commutator(&g)?;
    let mut lines = vec![format!("f = {f}"), format!("g = {g}"), format!("[f, g] = {c}")];
    let mut report = report("commute", &a.common).bound("s", a.s as u64);
    let mut images = None;
    if let Some(n) = a.n {
        let cm = pi_reduce(&f, n)?.matrix().commutator(pi_reduce(&g, n)?.matrix())?;
        lines.push(format!("images commute at size {n}: {}", cm.is_zero()));
        images = Some(cm.is_zero());
        report = report.bound("n", n as u64);
    }
    let report = report.body(&json!({
        "f": f.to_string(),
        "g": g.to_string(),
        "commutator": c.to_string(),
        "images_commute": images,
    }));
    Ok(Outcome::finish(report, lines, c.is_zero(), "f and g commute in the free algebra"))
}

fn pi(a: &PiArgs) -> Result<Outcome> {
    let field = a.common.field;
    let f = parse_free(&a.f, a.s, field)?;
    let m = pi_reduce(&f, a.n)?.into_matrix();
    let cp = trace_and_charpoly(&m)?;
    let ok = charpoly_residual(&m, &cp.coefficients).is_zero();
    let coefficients: Vec<String> = cp.coefficients.iter().map(|c| c.to_string()).collect();
    let lines = vec![
        format!("pi_{}(f) = {m}", a.n),
        format!("trace: {}", cp.trace),
        format!("characteristic polynomial coefficients (t^0 first): [{}]", coefficients.join(", ")),
    ];
    let report = report("pi", &a.common)
        .bound("s", a.s as u64)
        .bound("n", a.n as u64)
        .body(&json!({
            "f": f.to_string(),
            "image": m.to_string(),
            "trace": cp.trace.to_string(),
            "charpoly": coefficients,
        }));
    Ok(Outcome::finish(report, lines, ok, format!("Cayley-Hamilton holds for pi_{}(f)", a.n)))
}

/// `E11, E12, E22, E23, ..., Enn`: every other ordering of a prefix
/// multiplies to zero, so `S_k` of a prefix is its ordered product.
fn staircase(n: usize, k: usize, field: Field) -> Vec<Matrix<Scalar>> {
    (0..n)
        .flat_map(|i| {
            let mut step = vec![(i, i)];
            if i + 1 < n {
                step.push((i, i + 1));
            }
            step
        })
        .take(k)
        .map(|(i, j)| Matrix::unit(n, i, j, field))
        .collect()
}

fn al(a: &AlArgs) -> Result<Outcome> {
    let field = a.common.field;
    let (n, k) = (a.n, a.k.unwrap_or(2 * a.n));
    if k > 20 {
        return Err(Error::InvalidSize(format!("S_{k} has more than 20! terms")));
    }
    let generic = make_generic(k, n, field)?;
    let mats: Vec<PolyMatrix> = generic.iter().map(|m| m.matrix().clone()).collect();
    let vanishes = standard_identity(&mats)?.is_zero();
    let expected = k >= 2 * n;
    let mut lines = vec![format!(
        "S_{k} on {k} generic {n}x{n} matrices ({} variables, {} terms): {}",
        k * n * n,
        (1..=k as u64).product::<u64>(),
        if vanishes { "zero" } else { "nonzero" }
    )];
    let witness_len = if expected { 2 * n - 1 } else { k };
    let stairs = staircase(n, witness_len, field);
    let witness = standard_identity(&stairs)?;
    let witness_ok = !witness.is_zero();
    lines.push(format!(
        "S_{witness_len} on the staircase units: {witness}{}",
        if witness_ok { "" } else { " (unexpectedly zero)" }
    ));
    let ok = vanishes == expected && witness_ok;
    let claim = if expected {
        format!("S_{k} vanishes on {n}x{n} generic matrices")
    } else {
        format!("S_{k} does not vanish on {n}x{n} generic matrices")
    };
    let report = report("al", &a.common)
        .bound("n", n as u64)
        .bound("k", k as u64)
        .body(&json!({
            "n": n,
            "k": k,
            "variables": k * n * n,
            "generic_vanishes": vanishes,
            "expected_vanishing": expected,
            "witness_degree": witness_len,
            "witness_inputs": stairs.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "witness_value": witness.to_string(),
        }));
    Ok(Outcome::finish(report, lines, ok, claim))
}

fn annihilator(a: &AnnihilatorArgs) -> Result<Outcome> {
    let field = a.common.field;
    let f = parse_free(&a.f, a.s, field)?;
    let g = parse_free(&a.g, a.s, field)?;
    let sizes: Vec<usize> = match a.n {
        Some(n) => vec![n],
        None => (1..=a.nmax).collect(),
    };
    let rep = annihilator_stability(&f, &g, &sizes, a.dmax)?;
    let mut lines = vec![format!("f = {f}"), format!("g = {g}")];
    let mut found = Vec::new();
    for (n, r) in sizes.iter().zip(&rep.results) {
        let text = match r {
            AnnihilatorResult::Found { poly, .. } => poly.to_string(),
            AnnihilatorResult::NoneUpTo { bound, .. } => format!("none up to degree {bound}"),
        };
        lines.push(format!("n = {n}: P(u, v) = {text}"));
        found.push(json!({
            "size": n,
            "annihilator": r.poly().map(|p| p.to_string()),
            "total_degree": r.poly().map(|p| p.total_degree()),
        }));
    }
    let mut report = report("annihilator", &a.common).bound("s", a.s as u64).bound("dmax", a.dmax as u64);
    report = match a.n {
        Some(n) => report.bound("n", n as u64),
        None => report.bound("nmax", a.nmax as u64),
    };
    let report = report.body(&json!({
        "f": f.to_string(),
        "g": g.to_string(),
        "f_degree": rep.f_degree.to_string(),
        "g_degree": rep.g_degree.to_string(),
        "results": found,
        "all_found": rep.all_found,
        "coincide": rep.coincide,
    }));
    let list: Vec<String> = sizes.iter().map(|n| n.to_string()).collect();
    let claim = format!("annihilator found and identical at sizes {}", list.join(", "));
    Ok(Outcome::finish(report, lines, rep.stable(), claim))
}

fn suite_body(s: &SuiteOutcome) -> serde_json::Value {
    json!({
        "cases": s.cases,
        "failures": s.failures,
        "first_failure": s.first_failure,
    })
}

fn random_pairing_only(source: &str) -> Result<()> {
    if source != "pairing" {
        return Err(Error::InvalidTensor("random suites use the pairing tensor".into()));
    }
    Ok(())
}

fn star(a: &StarArgs) -> Result<Outcome> {
    let field = a.common.field;
    let base = report("star", &a.common).bound("order", a.order as u64);
    if let Some(cases) = a.random {
        random_pairing_only(&a.poisson)?;
        let s = associativity_suite(a.common.seed, cases, a.d, a.order, field)?;
        let lines = vec![format!("{} triples, {} failures", s.cases, s.failures)];
        let report = base.bound("cases", cases as u64).bound("d", a.d as u64).body(&suite_body(&s));
        let claim = format!("star product associative on {cases} random triples through h^{}", a.order);
        return Ok(Outcome::finish(report, lines, s.passed(), claim));
    }
    let (pa, pb) = parse_pair(a.a.as_deref(), a.b.as_deref(), field)?;
    let source = load_source(&a.poisson, field)?;
    let ctx = StarContext::new(tensor_for(&source, &[&pa, &pb], field), a.order)?;
    let (sa, sb) = (ctx.lift(&pa), ctx.lift(&pb));
    let product = ctx.star_mul(&sa, &sb)?;
    let commutator = ctx.star_commutator(&sa, &sb)?;
    let bracket = poisson_bracket(&pa, &pb, ctx.tensor())?;
    let ok = commutator.coeff(0).is_zero() && *commutator.coeff(1) == bracket;
    let lines = vec![
        format!("a * b = {product}"),
        format!("[a, b]_* = {commutator}"),
        format!("{{a, b}} = {bracket}"),
    ];
    let report = base.body(&json!({
        "a": pa.to_string(),
        "b": pb.to_string(),
        "poisson": source.label(),
        "product": series_strings(&product),
        "commutator": series_strings(&commutator),
        "bracket": bracket.to_string(),
    }));
    Ok(Outcome::finish(report, lines, ok, "h^1 coefficient of [a, b]_* equals {a, b}"))
}

fn parse_pair(a: Option<&str>, b: Option<&str>, field: Field) -> Result<(CommPoly, CommPoly)> {
    let missing = || usage("both --a and --b are required");
    Ok((
        parse_comm(a.ok_or_else(missing)?, field)?,
        parse_comm(b.ok_or_else(missing)?, field)?,
    ))
}

fn series_strings<T: Ring + std::fmt::Display>(s: &FormalSeries<T>) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

fn poisson(a: &PoissonArgs) -> Result<Outcome> {
    let field = a.common.field;
    let base = report("poisson", &a.common).bound("order", 2);
    if let Some(cases) = a.random {
        random_pairing_only(&a.poisson)?;
        let s = correspondence_suite(a.common.seed, cases, a.d, field)?;
        let lines = vec![format!("{} pairs, {} failures", s.cases, s.failures)];
        let report = base.bound("cases", cases as u64).bound("d", a.d as u64).body(&suite_body(&s));
        let claim = format!("h^1 coefficient of [a, b]_* equals {{a, b}} on {cases} random pairs");
        return Ok(Outcome::finish(report, lines, s.passed(), claim));
    }
    let (pa, pb) = parse_pair(a.a.as_deref(), a.b.as_deref(), field)?;
    let source = load_source(&a.poisson, field)?;
    let ctx = StarContext::new(tensor_for(&source, &[&pa, &pb], field), 2)?;
    let check = ctx.verify_correspondence(&pa, &pb)?;
    let reverse = poisson_bracket(&pb, &pa, ctx.tensor())?;
    let antisymmetric = reverse == check.bracket.neg();
    let lines = vec![
        format!("{{a, b}} = {}", check.bracket),
        format!("h^1 coefficient of [a, b]_* = {}", check.hbar_coefficient),
        format!("{{b, a}} = -{{a, b}}: {antisymmetric}"),
    ];
    let report = base.body(&json!({
        "a": pa.to_string(),
        "b": pb.to_string(),
        "poisson": source.label(),
        "bracket": check.bracket.to_string(),
        "hbar_coefficient": check.hbar_coefficient.to_string(),
        "antisymmetric": antisymmetric,
    }));
    let claim = "{a, b} is antisymmetric and equals the h^1 coefficient of [a, b]_*";
    Ok(Outcome::finish(report, lines, check.holds && antisymmetric, claim))
}

fn diag(a: &DiagArgs) -> Result<Outcome> {
    match (&a.m, &a.f, &a.g) {
        (Some(m), _, _) => diag_perturbation(a, m),
        (None, Some(f), Some(g)) => diag_bracket(a, f, g),
        _ => Err(usage("give --m, or both --f and --g")),
    }
}

fn diag_perturbation(a: &DiagArgs, m: &str) -> Result<Outcome> {
    let field = a.common.field;
    let m = parse_matrix(m, field, |e| parse_comm(e, field).map(RationalFunction::from_poly))?;
    let n = m.size();
    let lam: Vec<RationalFunction> = (1..=n as u32).map(|i| RationalFunction::var(Variable::aux("lam", i), field)).collect();
    let mut coeffs = vec![Matrix::diagonal(lam, field), m];
    coeffs.resize(a.order + 1, Matrix::zero(n, field));
    let series = FormalSeries::new(coeffs)?;
    let rep = successive_diagonalize(&series, a.order, None)?;
    let conj = rep.conjugator.plain_mul(&series)?.plain_mul(&rep.inverse)?;
    let diagonal = rep.diagonal.coeffs().iter().all(|c| c.is_diagonal());
    let ok = diagonal && conj == rep.diagonal && rep.achieved_order == a.order;
    let mut lines = vec![format!("A = {series}")];
    for (r, c) in rep.diagonal.coeffs().iter().enumerate() {
        lines.push(format!("D_{r} = {c}"));
    }
    for (r, c) in rep.conjugator.coeffs().iter().enumerate().skip(1) {
        lines.push(format!("T_{r} = {c}"));
    }
    let report = report("diag", &a.common)
        .bound("n", n as u64)
        .bound("order", a.order as u64)
        .body(&json!({
            "mode": "perturbation",
            "input": series_strings(&series),
            "diagonal": series_strings(&rep.diagonal),
            "conjugator": series_strings(&rep.conjugator),
            "inverse": series_strings(&rep.inverse),
            "achieved_order": rep.achieved_order,
        }));
    let claim = format!("U A U^-1 is diagonal through h^{}", a.order);
    Ok(Outcome::finish(report, lines, ok, claim))
}

fn diag_bracket(a: &DiagArgs, f: &str, g: &str) -> Result<Outcome> {
    let field = a.common.field;
    let (fm, gm) = (poly_matrix(f, field)?, poly_matrix(g, field)?);
    let source = load_source(&a.poisson, field)?;
    let entries: Vec<&CommPoly> = fm.entries().iter().chain(gm.entries()).collect();
    let ctx = StarContext::new(tensor_for(&source, &entries, field), a.order)?;
    let rep = diagonal_bracket_check(&ctx.quantize_lift(&fm)?, &ctx.quantize_lift(&gm)?, &ctx)?;
    let show = |v: &[CommPoly]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let lines = vec![
        format!("diagonal of (1/h)[f, g]_* mod h: diag({})", show(&rep.diagonal).join(", ")),
        format!("brackets {{lambda_i, mu_i}}: diag({})", show(&rep.expected).join(", ")),
        format!("(1/h)[f, g]_* nonzero mod h: {}", rep.nonvanishing),
    ];
    let report = report("diag", &a.common)
        .bound("n", fm.size() as u64)
        .bound("order", a.order as u64)
        .body(&json!({
            "mode": "bracket",
            "f": fm.to_string(),
            "g": gm.to_string(),
            "poisson": source.label(),
            "diagonal": show(&rep.diagonal),
            "expected": show(&rep.expected),
            "entry_matches": rep.entry_matches,
            "off_diagonal_contributions_traceless": rep.off_diagonal_contributions_traceless,
            "nonvanishing": rep.nonvanishing,
        }));
    let claim = "diagonal of (1/h)[f, g]_* mod h equals {lambda_i, mu_i}";
    Ok(Outcome::finish(report, lines, rep.holds(), claim))
}

fn centralizer(a: &CentralizerArgs) -> Result<Outcome> {
    let field = a.common.field;
    let f = parse_free(&a.f, a.s, field)?;
    let basis = centralizer_basis(&f, a.d)?;
    let body = CentralizerBody::new(&basis);
    body.verify(field)?;
    let bergman = match bergman_check(&f, a.d) {
        Err(Error::DegreeBoundTooSmall { .. }) => None,
        other => Some(other?),
    };
    let mut lines = vec![format!("f = {f}")];
    let (ok, claim, bergman_body) = match &bergman {
        Some(r) => {
            let b = BergmanBody::new(r);
            b.verify(field)?;
            for (m, (got, want)) in r.dims.iter().zip(&r.expected_dims).enumerate() {
                lines.push(format!("m = {m}: dim {got} (one generator predicts {want})"));
            }
            if let Some(w) = &r.witness {
                lines.push(format!("outside the span of the powers: {w}"));
            }
            let claim = match (&r.generator, r.holds()) {
                (Some(h), true) => format!("centralizer through degree {} is k[{h}]", a.d),
                _ => format!("centralizer through degree {} is a polynomial ring in one element", a.d),
            };
            (r.holds(), claim, Some(b))
        }
        None => {
            for (m, d) in basis.dims().iter().enumerate() {
                lines.push(format!("m = {m}: dim {d}"));
            }
            lines.push(format!("degree bound {} is below deg f; one-generator check skipped", a.d));
            (true, format!("centralizer through degree {} computed", a.d), None)
        }
    };
    lines.insert(1, format!("basis through degree {}: {}", a.d, body.levels.last().map(|l| l.join(", ")).unwrap_or_default()));
    let report = report("centralizer", &a.common)
        .bound("s", a.s as u64)
        .bound("d", a.d as u64)
        .body(&json!({
            "centralizer": body,
            "bergman": bergman_body,
        }));
    Ok(Outcome::finish(report, lines, ok, claim))
}

fn pipeline_lines(rep: &PipelineReport) -> Vec<String> {
    let mut lines = Vec::new();
    if let Some((f, g)) = &rep.free_pair {
        lines.push(format!("f = {f}"));
        lines.push(format!("g = {g}"));
        lines.push(format!("commute in the free algebra: {}", rep.commute_in_free));
    }
    for s in &rep.sizes {
        let ann = match &s.annihilator {
            AnnihilatorResult::Found { poly, .. } => poly.to_string(),
            AnnihilatorResult::NoneUpTo { bound, .. } => format!("none up to degree {bound}"),
        };
        lines.push(format!(
            "n = {}: annihilator {ann}; star commutator vanishes mod h^2: {}",
            s.size, s.star_vanishes
        ));
        if !s.star_vanishes {
            lines.push(format!("  h^1 coefficient: {}", s.star_hbar1));
        }
    }
    lines
}

fn pipeline(a: &PipelineArgs) -> Result<Outcome> {
    let field = a.common.field;
    let f = parse_free(&a.f, a.s, field)?;
    let g = parse_free(&a.g, a.s, field)?;
    let source = load_source(&a.poisson, field)?;
    let rep = bergman_pipeline(&f, &g, a.nmax, a.dmax, &source, a.order)?;
    let body = PipelineBody::new(&rep);
    body.verify(field)?;
    let ok = match rep.verdict {
        PipelineVerdict::NonCommuting => true,
        PipelineVerdict::Trdeg1 => rep.stable && rep.sizes.iter().all(|s| s.star_vanishes),
        PipelineVerdict::StarObstruction | PipelineVerdict::Inconclusive => false,
    };
    let report = report("bergman-pipeline", &a.common)
        .bound("s", a.s as u64)
        .bound("nmax", a.nmax as u64)
        .bound("dmax", a.dmax as u64)
        .bound("order", a.order as u64)
        .body(&body);
    let claim = format!("pipeline verdict {}", rep.verdict.as_str());
    Ok(Outcome::finish(report, pipeline_lines(&rep), ok, claim))
}

fn probe(a: &ProbeArgs) -> Result<Outcome> {
    let field = a.common.field;
    let (fm, gm) = (poly_matrix(&a.f, field)?, poly_matrix(&a.g, field)?);
    let source = load_source(&a.poisson, field)?;
    let rep = commuting_matrix_probe(&fm, &gm, a.dmax, &source, a.order)?;
    let body = PipelineBody::new(&rep);
    body.verify(field)?;
    let ok = match rep.verdict {
        PipelineVerdict::Trdeg1 => rep.sizes.iter().all(|s| s.star_vanishes),
        PipelineVerdict::StarObstruction => true,
        PipelineVerdict::NonCommuting | PipelineVerdict::Inconclusive => false,
    };
    let report = report("probe", &a.common)
        .bound("n", fm.size() as u64)
        .bound("dmax", a.dmax as u64)
        .bound("order", a.order as u64)
        .body(&body);
    let claim = format!("probe verdict {}", rep.verdict.as_str());
    Ok(Outcome::finish(report, pipeline_lines(&rep), ok, claim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let mut full = vec!["qcentral"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap().command)
    }

    #[test]
    fn staircase_prefixes() {
        let q = Field::Rational;
        assert_eq!(staircase(3, 5, q).len(), 5);
        assert_eq!(staircase(2, 3, q)[2], Matrix::unit(2, 1, 1, q));
        let s = standard_identity(&staircase(3, 5, q)).unwrap();
        assert_eq!(s, Matrix::unit(3, 0, 2, q));
    }

    #[test]
    fn al_summary_line() {
        let out = run_args(&["al", "--n", "2"]).unwrap();
        assert_eq!(out.lines.last().unwrap(), "S_4 vanishes on 2x2 generic matrices: PASS");
        assert_eq!(out.report.summary, *out.lines.last().unwrap());
        let out = run_args(&["al", "--n", "2", "--k", "3"]).unwrap();
        assert_eq!(out.report.verdict, Verdict::Pass);
    }

    #[test]
    fn centralizer_example() {
        let out = run_args(&["centralizer", "--f", "x1^2", "--s", "2", "--d", "4"]).unwrap();
        assert_eq!(out.report.verdict, Verdict::Pass);
        assert_eq!(out.report.body["bergman"]["generator"], "x1");
        let out = run_args(&["centralizer", "--f", "x1", "--d", "0"]).unwrap();
        assert_eq!(out.report.body["centralizer"]["dims"], json!([1]));
    }

    #[test]
    fn star_example() {
        let out = run_args(&["star", "--a", "x1", "--b", "x1"]).unwrap();
        assert_eq!(out.report.verdict, Verdict::Pass);
        assert_eq!(out.report.body["commutator"], json!(["0", "0", "0"]));
    }

    #[test]
    fn failing_checks_report_fail() {
        let out = run_args(&["commute", "--f", "x1", "--g", "x2"]).unwrap();
        assert_eq!(out.report.verdict, Verdict::Fail);
        let out = run_args(&["centralizer", "--f", "x1*x2 - x2*x1", "--d", "2"]);
        assert!(out.is_ok());
    }

    #[test]
    fn errors_carry_codes() {
        let e = run_args(&["star", "--a", "x1", "--b", "y1", "--order", "7", "--field", "fp:7"]).unwrap_err();
        assert!(matches!(e, Error::CharacteristicTooSmall { .. }));
        let e = run_args(&["annihilator", "--f", "x1", "--g", "x2"]).unwrap_err();
        assert_eq!(e, Error::NotCommuting);
        let e = run_args(&["eval", "--f", "x1 +"]).unwrap_err();
        assert_eq!(e.code(), "E005_SYNTAX");
    }
}
