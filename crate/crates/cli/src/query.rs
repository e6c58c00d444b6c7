//! Parsed command lines.
//!
//! A [`Query`] is what clap produces. Its canonical string is a
//! whitespace-separated argument list that parses back to the same query.

use clap::{Parser, Subcommand, ValueEnum};
use linkage::{RootSystemSpec, Weight, Word};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
    Human,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Human => "human",
        }
    }
}

/// Hom-existence criteria for twisted Verma modules and principal series.
///
/// Weights are fundamental-weight coordinates such as "(1,-1/2)". Words are
/// "s1 s2 s1", "s1s2s1", "121", or "e". Modules use the rho-shifted
/// convention: M(mu) has highest weight mu - rho.
#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(name = "linkage", version)]
pub struct Query {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Include realizing subsequences for A-set elements and witnesses.
    #[arg(long, global = true)]
    pub certificates: bool,

    /// Bypass the persistent A-set cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Refuse root systems of larger rank (exit code 3). For `selfcheck`, the
    /// largest rank swept (default 2, at most 3).
    #[arg(long, global = true)]
    pub rank_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// The set A_w(mu) for a word in the integral simple reflections.
    Aset {
        system: RootSystemSpec,
        #[arg(allow_hyphen_values = true)]
        word: Word,
        #[arg(allow_hyphen_values = true)]
        mu: Weight,
        /// Letters refer to the integral simple roots of this weight
        /// (default: the full simple system).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<Weight>,
    },
    /// Hom(T_w1 M(mu1), T_w2 M(mu2)) != 0.
    HomVerma {
        system: RootSystemSpec,
        #[arg(allow_hyphen_values = true)]
        w1: Word,
        #[arg(allow_hyphen_values = true)]
        mu1: Weight,
        #[arg(allow_hyphen_values = true)]
        w2: Word,
        #[arg(allow_hyphen_values = true)]
        mu2: Weight,
    },
    /// Hom(L(M(w1 lambda), dM(mu1)), L(M(w2 lambda), dM(mu2))) != 0 for
    /// dominant lambda.
    HomPs {
        system: RootSystemSpec,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(allow_hyphen_values = true)]
        w1: Word,
        #[arg(allow_hyphen_values = true)]
        mu1: Weight,
        #[arg(allow_hyphen_values = true)]
        w2: Word,
        #[arg(allow_hyphen_values = true)]
        mu2: Weight,
    },
    /// Integral roots, integral simple system, longest element and stabilizer.
    Integral {
        system: RootSystemSpec,
        #[arg(allow_hyphen_values = true)]
        lambda: Weight,
    },
    /// Twisted Verma verdicts for all (w1, mu1, w2, mu2) over a weight set.
    Table {
        system: RootSystemSpec,
        /// Use the Weyl orbit of this weight.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "grid_radius")]
        mu_orbit: Option<Weight>,
        /// Use integral weights with coordinates in [-r, r].
        #[arg(long)]
        grid_radius: Option<i64>,
        /// Let w1 and w2 range over the whole Weyl group instead of {e}.
        #[arg(long)]
        w_all: bool,
    },
    /// Run the validation sweeps; exits 1 on any counterexample.
    Selfcheck {
        /// Integral box radius of the weight grid.
        #[arg(long, default_value_t = 2)]
        grid_radius: i64,
        /// Random rational pairs per type for the linkage comparison.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sweep a deliberately broken A-set evaluator (harness self-test).
        #[arg(long)]
        mutant: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Aset { .. } => "aset",
            Command::HomVerma { .. } => "hom-verma",
            Command::HomPs { .. } => "hom-ps",
            Command::Integral { .. } => "integral",
            Command::Table { .. } => "table",
            Command::Selfcheck { .. } => "selfcheck",
        }
    }

    pub fn system(&self) -> Option<&RootSystemSpec> {
        match self {
            Command::Aset { system, .. }
            | Command::HomVerma { system, .. }
            | Command::HomPs { system, .. }
            | Command::Integral { system, .. }
            | Command::Table { system, .. } => Some(system),
            Command::Selfcheck { .. } => None,
        }
    }
}

impl Query {
    /// Parses a whitespace-separated argument list (without the program name).
    pub fn parse_canonical(s: &str) -> Result<Query, clap::Error> {
        Query::try_parse_from(std::iter::once("linkage").chain(s.split_whitespace()))
    }

    /// Arguments that reproduce this query; no argument contains whitespace.
    pub fn canonical_args(&self) -> Vec<String> {
        let mut a = vec![self.command.name().to_string()];
        match &self.command {
            Command::Aset {
                system,
                word,
                mu,
                lambda,
            } => {
                a.extend([system.to_string(), word.token(), mu.to_string()]);
                if let Some(l) = lambda {
                    a.extend(["--lambda".into(), l.to_string()]);
                }
            }
            Command::HomVerma {
                system,
                w1,
                mu1,
                w2,
                mu2,
            } => a.extend([
                system.to_string(),
                w1.token(),
                mu1.to_string(),
                w2.token(),
                mu2.to_string(),
            ]),
            Command::HomPs {
                system,
                lambda,
                w1,
                mu1,
                w2,
                mu2,
            } => a.extend([
                system.to_string(),
                "--lambda".into(),
                lambda.to_string(),
                w1.token(),
                mu1.to_string(),
                w2.token(),
                mu2.to_string(),
            ]),
            Command::Integral { system, lambda } => {
                a.extend([system.to_string(), lambda.to_string()])
            }
            Command::Table {
                system,
                mu_orbit,
                grid_radius,
                w_all,
            } => {
                a.push(system.to_string());
                if let Some(m) = mu_orbit {
                    a.extend(["--mu-orbit".into(), m.to_string()]);
                }
                if let Some(r) = grid_radius {
                    a.extend(["--grid-radius".into(), r.to_string()]);
                }
                if *w_all {
                    a.push("--w-all".into());
                }
            }
            Command::Selfcheck {
                grid_radius,
                samples,
                seed,
                mutant,
            } => {
                a.extend([
                    "--grid-radius".into(),
                    grid_radius.to_string(),
                    "--samples".into(),
                    samples.to_string(),
                    "--seed".into(),
                    seed.to_string(),
                ]);
                if *mutant {
                    a.push("--mutant".into());
                }
            }
        }
        a.extend(["--format".into(), self.format.as_str().into()]);
        if self.certificates {
            a.push("--certificates".into());
        }
        if self.no_cache {
            a.push("--no-cache".into());
        }
        if let Some(b) = self.rank_bound {
            a.extend(["--rank-bound".into(), b.to_string()]);
        }
        a
    }

    pub fn canonical(&self) -> String {
        self.canonical_args().join(" ")
    }
}
