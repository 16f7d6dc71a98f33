//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qcentral_core::rings::Field;
use qcentral_core::sample::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(
    name = "qcentral",
    version,
    about = "Exact experiments on centralizers, generic matrices and star products",
    long_about = "Exact experiments on centralizers in free algebras, generic matrices, \
                  annihilating polynomials and Moyal star products.\n\n\
                  Exit status: 0 on PASS, 2 on a mathematical FAIL, 1 on usage or arithmetic errors."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalize a free-algebra expression and optionally evaluate it in matrices.
    Eval(EvalArgs),
    /// Test whether two free-algebra elements commute.
    Commute(CommuteArgs),
    /// Reduce an element to n x n generic matrices and check Cayley-Hamilton.
    Pi(PiArgs),
    /// Check the standard identity S_k on n x n generic matrices.
    Al(AlArgs),
    /// Find the minimal annihilating polynomial of a commuting pair.
    Annihilator(AnnihilatorArgs),
    /// Moyal star product and star commutator of two polynomials.
    Star(StarArgs),
    /// Poisson bracket of two polynomials against the star commutator.
    Poisson(PoissonArgs),
    /// Perturbative diagonalization or the diagonal bracket check.
    Diag(DiagArgs),
    /// Degree-bounded centralizer of an element and the one-generator check.
    Centralizer(CentralizerArgs),
    /// Follow a free pair through reductions, annihilators and star commutators.
    BergmanPipeline(PipelineArgs),
    /// Run the matrix stages of the pipeline on a commuting matrix pair.
    Probe(ProbeArgs),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Eval(a) => &a.common,
            Command::Commute(a) => &a.common,
            Command::Pi(a) => &a.common,
            Command::Al(a) => &a.common,
            Command::Annihilator(a) => &a.common,
            Command::Star(a) => &a.common,
            Command::Poisson(a) => &a.common,
            Command::Diag(a) => &a.common,
            Command::Centralizer(a) => &a.common,
            Command::BergmanPipeline(a) => &a.common,
            Command::Probe(a) => &a.common,
        }
    }
}

fn parse_field(text: &str) -> Result<Field, String> {
    text.parse().map_err(|e: qcentral_core::Error| e.to_string())
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Coefficient field: `q` for the rationals or `fp:<p>` for a prime field.
    #[arg(long, value_name = "FIELD", default_value = "q", value_parser = parse_field)]
    pub field: Field,
    /// Seed for randomized suites; recorded in every report.
    #[arg(long, value_name = "U64", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Emit a single JSON report instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn positive(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Free-algebra expression in x1..xs.
    #[arg(long, value_name = "EXPR")]
    pub f: String,
    /// Number of generators.
    #[arg(long, value_name = "COUNT", default_value_t = 2, value_parser = positive)]
    pub s: usize,
    /// Matrix substituted for the next generator, e.g. "[1, 2; 0, x1]". Give it s times.
    #[arg(long, value_name = "MATRIX")]
    pub x: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CommuteArgs {
    /// First free-algebra element.
    #[arg(long, value_name = "EXPR")]
    pub f: String,
    /// Second free-algebra element.
    #[arg(long, value_name = "EXPR")]
    pub g: String,
    /// Number of generators.
    #[arg(long, value_name = "COUNT", default_value_t = 2, value_parser = positive)]
    pub s: usize,
    /// Also compare the images in n x n generic matrices.
    #[arg(long, value_name = "SIZE", value_parser = positive)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PiArgs {
    /// Free-algebra element to reduce.
    #[arg(long, value_name = "EXPR")]
    pub f: String,
    /// Number of generators.
    #[arg(long, value_name = "COUNT", default_value_t = 2, value_parser = positive)]
    pub s: usize,
    /// Matrix size.
    #[arg(long, value_name = "SIZE", default_value_t = 2, value_parser = positive)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct AlArgs {
    /// Matrix size.
    #[arg(long, value_name = "SIZE", default_value_t = 2, value_parser = positive)]
    pub n: usize,
    /// Degree of the standard polynomial; defaults to 2n.
    #[arg(long, value_name = "DEGREE", value_parser = positive)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct AnnihilatorArgs {
    /// First element of a commuting free pair.
    #[arg(long, value_name = "EXPR")]
    pub f: String,
    /// Second element of a commuting free pair.
    #[arg(long, value_name = "EXPR")]
    pub g: String,
    /// Number of generators.
    #[arg(long, value_name = "COUNT", default_value_t = 2, value_parser = positive)]
    pub s: usize,
    /// Search at this single size.
    #[arg(long, value_name = "SIZE", value_parser = positive, conflicts_with = "nmax")]
    pub n: Option<usize>,
    /// Search at every size 1..=nmax.
    #[arg(long, value_name = "SIZE", default_value_t = 3, value_parser = positive)]
    pub nmax: usize,
    /// Largest total degree of the annihilator.
    #[arg(long, value_name = "BOUND", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub dmax: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct StarArgs {
    /// First commutative polynomial.
    #[arg(long, value_name = "EXPR", required_unless_present = "random")]
    pub a: Option<String>,
    /// Second commutative polynomial.
    #[arg(long, value_name = "EXPR", required_unless_present = "random")]
    pub b: Option<String>,
    /// Truncation order N of the series in h.
    #[arg(long, value_name = "N", default_value_t = 2, value_parser = positive)]
    pub order: usize,
    /// Poisson tensor: `pairing` or a tensor JSON file.
    #[arg(long, value_name = "SOURCE", default_value = "pairing")]
    pub poisson: String,
    /// Instead of --a/--b, check associativity on this many random triples.
    #[arg(long, value_name = "COUNT", conflicts_with_all = ["a", "b"], value_parser = positive)]
    pub random: Option<usize>,
    /// Degree bound of the random polynomials.
    #[arg(long, value_name = "BOUND", default_value_t = 2, requires = "random")]
    pub d: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PoissonArgs {
    /// First commutative polynomial.
    #[arg(long, value_name = "EXPR", required_unless_present = "random")]
    pub a: Option<String>,
    /// Second commutative polynomial.
    #[arg(long, value_name = "EXPR", required_unless_present = "random")]
    pub b: Option<String>,
    /// Poisson tensor: `pairing` or a tensor JSON file.
    #[arg(long, value_name = "SOURCE", default_value = "pairing")]
    pub poisson: String,
    /// Instead of --a/--b, compare bracket and star commutator on this many random pairs.
    #[arg(long, value_name = "COUNT", conflicts_with_all = ["a", "b"], value_parser = positive)]
    pub random: Option<usize>,
    /// Degree bound of the random polynomials.
    #[arg(long, value_name = "BOUND", default_value_t = 3, requires = "random")]
    pub d: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct DiagArgs {
    /// Perturbation M: diagonalize diag(lam1..lamn) + h M over the fraction field in the lam's.
    #[arg(long, value_name = "MATRIX", conflicts_with_all = ["f", "g"], required_unless_present_all = ["f", "g"])]
    pub m: Option<String>,
    /// Matrix with diagonal leading part; compares (1/h)[f, g]_* mod h with brackets.
    #[arg(long, value_name = "MATRIX", requires = "g")]
    pub f: Option<String>,
    /// Partner matrix for --f.
    #[arg(long, value_name = "MATRIX", requires = "f")]
    pub g: Option<String>,
    /// Truncation order N.
    #[arg(long, value_name = "N", default_value_t = 2, value_parser = positive)]
    pub order: usize,
    /// Poisson tensor for --f/--g: `pairing` or a tensor JSON file.
    #[arg(long, value_name = "SOURCE", default_value = "pairing")]
    pub poisson: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CentralizerArgs {
    /// Non-scalar free-algebra element.
    #[arg(long, value_name = "EXPR")]
    pub f: String,
    /// Number of generators.
    #[arg(long, value_name = "COUNT", default_value_t = 2, value_parser = positive)]
    pub s: usize,
    /// Degree bound of the centralizer.
    #[arg(long, value_name = "BOUND", default_value_t = 4)]
    pub d: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    /// First free-algebra element.
    #[arg(long, value_name = "EXPR")]
    pub f: String,
    /// Second free-algebra element.
    #[arg(long, value_name = "EXPR")]
    pub g: String,
    /// Number of generators.
    #[arg(long, value_name = "COUNT", default_value_t = 2, value_parser = positive)]
    pub s: usize,
    /// Largest matrix size.
    #[arg(long, value_name = "SIZE", default_value_t = 3, value_parser = positive)]
    pub nmax: usize,
    /// Largest total degree of the annihilator.
    #[arg(long, value_name = "BOUND", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub dmax: u32,
    /// Truncation order N.
    #[arg(long, value_name = "N", default_value_t = 2, value_parser = positive)]
    pub order: usize,
    /// Poisson tensor: `pairing` or a tensor JSON file.
    #[arg(long, value_name = "SOURCE", default_value = "pairing")]
    pub poisson: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    /// First matrix of a commuting pair, e.g. "[x1, 0; 0, x2]".
    #[arg(long, value_name = "MATRIX")]
    pub f: String,
    /// Second matrix of the pair.
    #[arg(long, value_name = "MATRIX")]
    pub g: String,
    /// Largest total degree of the annihilator.
    #[arg(long, value_name = "BOUND", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub dmax: u32,
    /// Truncation order N.
    #[arg(long, value_name = "N", default_value_t = 2, value_parser = positive)]
    pub order: usize,
    /// Poisson tensor: `pairing` or a tensor JSON file.
    #[arg(long, value_name = "SOURCE", default_value = "pairing")]
    pub poisson: String,
    #[command(flatten)]
    pub common: Common,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn defaults_and_fields() {
        let cli = Cli::try_parse_from(["qcentral", "al", "--field", "fp:7"]).unwrap();
        let Command::Al(a) = cli.command else { panic!("wrong subcommand") };
        assert_eq!(a.n, 2);
        assert_eq!(a.common.field, Field::prime(7).unwrap());
        assert_eq!(a.common.seed, DEFAULT_SEED);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Cli::try_parse_from(["qcentral", "al", "--bogus"]).is_err());
        assert!(Cli::try_parse_from(["qcentral", "al", "--n", "0"]).is_err());
        assert!(Cli::try_parse_from(["qcentral", "al", "--field", "fp:8"]).is_err());
        assert!(Cli::try_parse_from(["qcentral", "star", "--a", "x1"]).is_err());
        assert!(Cli::try_parse_from(["qcentral", "star", "--random", "3", "--a", "x1"]).is_err());
        assert!(Cli::try_parse_from(["qcentral", "diag"]).is_err());
        assert!(Cli::try_parse_from(["qcentral", "annihilator", "--f", "x1", "--g", "x1", "--n", "2", "--nmax", "3"]).is_err());
    }
}
