use clap::{Args, Parser, Subcommand};

use crate::parse::parse_derivation;
use crate::request::{
    Command, Format, Request, DEFAULT_CHAIN_LENGTH, DEFAULT_DEGREE_BOUND, DEFAULT_ITER_BOUND,
    DEFAULT_SEED,
};
use crate::run::CliError;

#[derive(Debug, Parser)]
#[command(name = "ore", version, about = "Exact computations in Ore extensions K[x][t; sigma, d]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// sigma(x) = q*x + b
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b: String,
    /// The value d(x) as a polynomial in x
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub dx: String,
    /// Whole ring in one string: "sigma: q=2, b=0; d(x)=x^2"
    #[arg(long, conflicts_with_all = ["q", "b", "dx"])]
    pub derivation: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Normal form and the local Artinian verdict for injective hulls of simples
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Point used for the chain witness when the verdict is negative
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CHAIN_LENGTH)]
        k: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Local nilpotency, d-simplicity and d-primitivity of a derivation
    AnalyzeDerivation {
        #[command(flatten)]
        spec: SpecArgs,
        /// Generator whose d-ideal closure is reported
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// Comma-separated images d(x_1), ..., d(x_n) for a derivation of K[x_1..x_n]
        #[arg(long, allow_hyphen_values = true)]
        images: Option<String>,
        /// Comma-separated variable names for --images
        #[arg(long)]
        vars: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ITER_BOUND)]
        iter_bound: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Strict descending chain of left ideals above S(x - alpha)t
    WitnessChain {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CHAIN_LENGTH)]
        k: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Multiplier s with s*u in St outside S(x - alpha)t
    Essentialize {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Skew polynomial, with t for the Ore variable
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cofactor u with u*g = 1 modulo S(x - alpha)
    Maximality {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Nilpotent Lie algebra attached to a locally nilpotent derivation of K[x_1..x_n]
    LieDatum {
        #[arg(long, allow_hyphen_values = true)]
        images: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ITER_BOUND)]
        iter_bound: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Seeded randomized invariant suite
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn apply_spec(req: &mut Request, spec: SpecArgs) -> Result<(), CliError> {
    if let Some(text) = spec.derivation {
        let d = parse_derivation(&text).map_err(|e| CliError::parse("derivation", &text, e))?;
        req.q = d.q().to_string();
        req.b = d.b().to_string();
        req.dx = d.dx().to_string();
    } else {
        req.q = spec.q;
        req.b = spec.b;
        req.dx = spec.dx;
    }
    Ok(())
}

impl Cli {
    pub fn into_request(self) -> Result<(Request, Format), CliError> {
        let (req, format) = match self.command {
            Sub::Classify { spec, alpha, k, out } => {
                let mut r = Request::new(Command::Classify);
                apply_spec(&mut r, spec)?;
                r.alpha = alpha;
                r.k = k;
                (r, out.format)
            }
            Sub::AnalyzeDerivation {
                spec,
                g,
                images,
                vars,
                iter_bound,
                out,
            } => {
                let mut r = Request::new(Command::AnalyzeDerivation);
                apply_spec(&mut r, spec)?;
                r.g = g;
                r.images = images;
                r.vars = vars;
                r.iter_bound = iter_bound;
                (r, out.format)
            }
            Sub::WitnessChain { spec, alpha, k, out } => {
                let mut r = Request::new(Command::WitnessChain);
                apply_spec(&mut r, spec)?;
                r.alpha = alpha;
                r.k = k;
                (r, out.format)
            }
            Sub::Essentialize { spec, alpha, u, out } => {
                let mut r = Request::new(Command::Essentialize);
                apply_spec(&mut r, spec)?;
                r.alpha = alpha;
                r.u = Some(u);
                (r, out.format)
            }
            Sub::Maximality {
                spec,
                alpha,
                g,
                degree_bound,
                out,
            } => {
                let mut r = Request::new(Command::Maximality);
                apply_spec(&mut r, spec)?;
                r.alpha = alpha;
                r.g = Some(g);
                r.degree_bound = degree_bound;
                (r, out.format)
            }
            Sub::LieDatum {
                images,
                vars,
                iter_bound,
                out,
            } => {
                let mut r = Request::new(Command::LieDatum);
                r.images = Some(images);
                r.vars = vars;
                r.iter_bound = iter_bound;
                (r, out.format)
            }
            Sub::Verify { seed, out } => {
                let mut r = Request::new(Command::Verify);
                r.seed = seed;
                (r, out.format)
            }
        };
        Ok((req, format))
    }
}
