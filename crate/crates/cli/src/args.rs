use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "adelic", version, about = "Tropical hypersurfaces, adelic amoebas and nonexpansive sets of Laurent polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PolyInput {
    /// Laurent polynomial, e.g. "3 + x + y" or "x^-1*y - 1/2".
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// Comma-separated variable names, in coordinate order.
    #[arg(long, value_delimiter = ',', required = true)]
    pub vars: Vec<String>,
}

#[derive(Debug, Args)]
pub struct JsonOutput {
    /// Write the JSON document here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Tropical,
    Amoeba,
}

impl From<SignArg> for adelic_core::Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Tropical => adelic_core::Sign::Tropical,
            SignArg::Amoeba => adelic_core::Sign::Amoeba,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tropical hypersurface (or non-archimedean amoeba) at one place.
    Trop {
        #[command(flatten)]
        input: PolyInput,
        /// A prime or `generic`.
        #[arg(long)]
        place: String,
        #[arg(long, value_enum, default_value = "tropical")]
        sign: SignArg,
        #[command(flatten)]
        json: JsonOutput,
    },
    /// Connected components of the complement of the tropical hypersurface.
    Components {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        place: String,
        #[command(flatten)]
        json: JsonOutput,
    },
    /// Valuations of the roots of a univariate polynomial.
    Roots {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        place: String,
        #[command(flatten)]
        json: JsonOutput,
    },
    /// Laurent expansion of 1/f on the component of a Newton polytope vertex.
    Laurent {
        #[command(flatten)]
        input: PolyInput,
        /// Comma-separated integer exponent vector.
        #[arg(long, allow_hyphen_values = true)]
        vertex: String,
        /// Keep exponents m with |m + vertex|_1 <= bound.
        #[arg(long)]
        bound: u64,
        #[command(flatten)]
        json: JsonOutput,
    },
    /// Amoebas at every relevant prime and the generic place.
    Adelic {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        json: JsonOutput,
    },
    /// Which places' amoebas meet the open ray through a direction.
    Ray {
        #[command(flatten)]
        input: PolyInput,
        /// Comma-separated rational direction, e.g. "1,-1/2".
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[command(flatten)]
        json: JsonOutput,
    },
    /// Nonexpansive set of an ideal, or with --sigma the complement of its Bieri-Strebel invariant.
    Nonexp {
        /// Generators separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long)]
        sigma: bool,
        /// Also render the set as SVG (2 or 3 variables).
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        json: JsonOutput,
    },
    /// Render amoebas of a bivariate polynomial as SVG.
    Plot {
        #[command(flatten)]
        input: PolyInput,
        /// Comma-separated places: primes, `generic`, `arch`.
        #[arg(long = "places", alias = "place", value_delimiter = ',', default_value = "generic")]
        places: Vec<String>,
        #[arg(long, value_enum, default_value = "amoeba")]
        sign: SignArg,
        #[arg(long, num_args = 4, value_names = ["X0", "X1", "Y0", "Y1"], allow_negative_numbers = true,
              default_values_t = [-5.0, 5.0, -5.0, 5.0])]
        window: Vec<f64>,
        /// Grid resolution for the archimedean amoeba.
        #[arg(long, default_value_t = 120)]
        samples: usize,
        /// Relative tolerance for archimedean membership.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
    },
}
