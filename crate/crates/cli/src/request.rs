use serde::{Deserialize, Serialize};

pub const DEFAULT_DEGREE_BOUND: u32 = 8;
pub const DEFAULT_ITER_BOUND: u32 = 32;
pub const DEFAULT_CHAIN_LENGTH: u32 = 5;
pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    AnalyzeDerivation,
    WitnessChain,
    Essentialize,
    Maximality,
    LieDatum,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::AnalyzeDerivation => "analyze-derivation",
            Command::WitnessChain => "witness-chain",
            Command::Essentialize => "essentialize",
            Command::Maximality => "maximality",
            Command::LieDatum => "lie-datum",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Everything a run depends on. Echoed verbatim in JSON reports, so a report's
/// `input` field can be fed back to [`crate::run::run`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub command: Command,
    pub q: String,
    pub b: String,
    pub dx: String,
    pub alpha: Option<String>,
    pub u: Option<String>,
    pub g: Option<String>,
    pub images: Option<String>,
    pub vars: Option<String>,
    pub k: u32,
    pub degree_bound: u32,
    pub iter_bound: u32,
    pub seed: u64,
}

impl Request {
    pub fn new(command: Command) -> Self {
        Request {
            command,
            q: "1".into(),
            b: "0".into(),
            dx: "0".into(),
            alpha: None,
            u: None,
            g: None,
            images: None,
            vars: None,
            k: DEFAULT_CHAIN_LENGTH,
            degree_bound: DEFAULT_DEGREE_BOUND,
            iter_bound: DEFAULT_ITER_BOUND,
            seed: DEFAULT_SEED,
        }
    }
}
