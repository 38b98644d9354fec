use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use supamp_core::Q;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

// documented ranges
pub const MAX_Q: u64 = 1_000_000;
pub const P_RANGE: (u64, u64) = (3, 10_000_000);
pub const HEIGHT_RANGE: (i64, i64) = (1, 8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    AnalyzePair,
    CosetCount,
    AmplifierPlan,
    VerifyArch,
    Catalog,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::AnalyzePair => "analyze-pair",
            CommandKind::CosetCount => "coset-count",
            CommandKind::AmplifierPlan => "amplifier-plan",
            CommandKind::VerifyArch => "verify-arch",
            CommandKind::Catalog => "catalog",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

/// A rational given as `7`, `-3/4` or (in TOML) a bare integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatArg(pub Q);

impl FromStr for RatArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("'{s}' is not a rational number"));
        match s.split_once('/') {
            None => Ok(RatArg(Q::from_integer(parse(s)?))),
            Some((n, d)) => {
                let d = parse(d)?;
                if d == 0 {
                    return Err(format!("'{s}' has a zero denominator"));
                }
                Ok(RatArg(Q::new(parse(n)?, d)))
            }
        }
    }
}

impl fmt::Display for RatArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for RatArg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatArg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(RatArg(Q::from_integer(n))),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Everything one invocation needs. Built from flags or read from a TOML file
/// carrying the same keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub command: CommandKind,
    #[serde(default)]
    pub pair: Option<String>,
    #[serde(default, rename = "type")]
    pub datum: Option<String>,
    #[serde(default)]
    pub lambda: Option<Vec<i64>>,
    #[serde(default)]
    pub q: Option<u64>,
    #[serde(default, rename = "P")]
    pub p: Option<u64>,
    #[serde(default, rename = "A")]
    pub a: Option<RatArg>,
    #[serde(default, rename = "B")]
    pub b: Option<RatArg>,
    #[serde(default)]
    pub delta0: Option<RatArg>,
    #[serde(default)]
    pub eta: Option<RatArg>,
    #[serde(default)]
    pub epsilon: Option<RatArg>,
    #[serde(default)]
    pub nu: Option<Vec<i64>>,
    #[serde(default)]
    pub cond: Option<String>,
    #[serde(default)]
    pub height: Option<i64>,
    #[serde(default)]
    pub brute_force_only: Option<bool>,
    #[serde(default)]
    pub model: Option<String>,
    #[serde(default)]
    pub suite: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<OutputFormat>,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            command,
            pair: None,
            datum: None,
            lambda: None,
            q: None,
            p: None,
            a: None,
            b: None,
            delta0: None,
            eta: None,
            epsilon: None,
            nu: None,
            cond: None,
            height: None,
            brute_force_only: None,
            model: None,
            suite: None,
            seed: None,
            output: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Range checks that do not need the core library.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Input(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", self.schema_version));
        }
        if let Some(q) = self.q {
            if !(2..=MAX_Q).contains(&q) {
                return bad(format!("q = {q} outside [2, {MAX_Q}]"));
            }
        }
        if let Some(p) = self.p {
            if !(P_RANGE.0..=P_RANGE.1).contains(&p) {
                return bad(format!("P = {p} outside [{}, {}]", P_RANGE.0, P_RANGE.1));
            }
        }
        if let Some(h) = self.height {
            if !(HEIGHT_RANGE.0..=HEIGHT_RANGE.1).contains(&h) {
                return bad(format!("height = {h} outside [{}, {}]", HEIGHT_RANGE.0, HEIGHT_RANGE.1));
            }
        }
        if let Some(l) = &self.lambda {
            if l.iter().any(|x| x.abs() > 64) {
                return bad("lambda coordinates must lie in [-64, 64]".into());
            }
        }
        if let Some(n) = &self.nu {
            if n.iter().any(|x| x.abs() > 64) {
                return bad("nu coordinates must lie in [-64, 64]".into());
            }
        }
        Ok(())
    }

    pub fn output(&self) -> OutputFormat {
        self.output.unwrap_or_default()
    }
}

#[derive(Debug, Parser)]
#[command(name = "supamp", version, about = "Norms, Hecke counts, H-largeness, amplifiers and hyperbolic checks")]
pub struct Cli {
    /// Read the whole run from a TOML file instead of a subcommand.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Shorthand for --output json.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// H-largeness and θ-split classification of a catalog pair.
    AnalyzePair(AnalyzeArgs),
    /// Exact count of K λ(ϖ) K / K as a polynomial in q.
    CosetCount(CosetArgs),
    /// Places, period bounds and exponent budget for an amplifier.
    AmplifierPlan(PlanArgs),
    /// Numerical checks on hyperbolic 2- or 3-space.
    VerifyArch(ArchArgs),
    /// The built-in symmetric pairs.
    Catalog,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub pair: String,
    /// Brute-force search height.
    #[arg(long)]
    pub height: Option<i64>,
    #[arg(long)]
    pub brute_force_only: bool,
}

#[derive(Debug, Args)]
pub struct CosetArgs {
    /// Root datum, e.g. A2, GL2, B2, A1xA1.
    #[arg(long = "type")]
    pub datum: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<i64>,
    #[arg(long)]
    pub q: u64,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub pair: String,
    #[arg(long = "P")]
    pub p: u64,
    /// Coweight of H driving the amplifier; defaults to the largeness witness.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub nu: Option<Vec<i64>>,
    #[arg(long = "A")]
    pub a: Option<RatArg>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<RatArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta0: Option<RatArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<RatArg>,
    #[arg(long)]
    pub epsilon: Option<RatArg>,
    /// Congruence on the places, e.g. "1 mod 4".
    #[arg(long)]
    pub cond: Option<String>,
}

#[derive(Debug, Args)]
pub struct ArchArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let output = if self.json { Some(OutputFormat::Json) } else { self.output };
        let mut cfg = match (self.config, self.command) {
            (Some(_), Some(_)) => return Err(CliError::Input("give either --config or a subcommand, not both".into())),
            (None, None) => return Err(CliError::Input("no subcommand given (try --help)".into())),
            (Some(path), None) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                RunConfig::from_toml(&text)?
            }
            (None, Some(sub)) => sub.into_config(),
        };
        if output.is_some() {
            cfg.output = output;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl Sub {
    fn into_config(self) -> RunConfig {
        match self {
            Sub::AnalyzePair(a) => RunConfig {
                pair: Some(a.pair),
                height: a.height,
                brute_force_only: Some(a.brute_force_only),
                ..RunConfig::new(CommandKind::AnalyzePair)
            },
            Sub::CosetCount(a) => RunConfig {
                datum: Some(a.datum),
                lambda: Some(a.lambda),
                q: Some(a.q),
                ..RunConfig::new(CommandKind::CosetCount)
            },
            Sub::AmplifierPlan(a) => RunConfig {
                pair: Some(a.pair),
                p: Some(a.p),
                nu: a.nu,
                a: a.a,
                b: a.b,
                delta0: a.delta0,
                eta: a.eta,
                epsilon: a.epsilon,
                cond: a.cond,
                ..RunConfig::new(CommandKind::AmplifierPlan)
            },
            Sub::VerifyArch(a) => RunConfig {
                model: Some(a.model),
                suite: Some(a.suite),
                seed: Some(a.seed),
                ..RunConfig::new(CommandKind::VerifyArch)
            },
            Sub::Catalog => RunConfig::new(CommandKind::Catalog),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!("3/4".parse::<RatArg>().unwrap().0, Q::new(3, 4));
        assert_eq!("-2".parse::<RatArg>().unwrap().0, Q::from_integer(-2));
        assert!("1/0".parse::<RatArg>().is_err());
        assert!("x".parse::<RatArg>().is_err());
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
schema_version = 1
command = "amplifier-plan"
pair = "su21"
P = 100
A = 10
delta0 = "1"
epsilon = "1/8"
output = "json"
"#;
        let cfg = RunConfig::from_toml(text).unwrap();
        assert_eq!(cfg.p, Some(100));
        assert_eq!(cfg.epsilon, Some(RatArg(Q::new(1, 8))));
        let back = RunConfig::from_toml(&toml::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn unknown_keys_and_ranges_are_rejected() {
        assert!(RunConfig::from_toml("schema_version = 1\ncommand = \"catalog\"\ncolour = 3\n").is_err());
        assert!(RunConfig::from_toml("schema_version = 2\ncommand = \"catalog\"\n").is_err());
        assert!(RunConfig::from_toml("schema_version = 1\ncommand = \"coset-count\"\nq = 1\n").is_err());
    }
}
