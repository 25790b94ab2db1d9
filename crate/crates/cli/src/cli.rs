use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "woundlab", version, about = "Inseparable forms of the additive group in characteristic p")]
pub struct Cli {
    /// Constant field, e.g. F3, F9 or F4:w^2+w+1.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Absolute t-adic precision for torsor computations.
    #[arg(long, global = true, env = "WOUNDLAB_PREC")]
    pub prec: Option<i64>,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Show the step-by-step trace of reductions.
    #[arg(long, global = true)]
    pub trace: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a Russell equation such as "u^3+v+t*v^3" or "p=3 n=1 a=[t]".
    Classify(EquationArgs),
    /// Genus of the regular compactification for (p, n, m).
    Genus {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Weighted-homogeneous closure of a Russell curve.
    Compactify(EquationArgs),
    /// Add parameters on the quasi-rational group u^2 + v + a v^2 = 0.
    GroupLaw {
        /// The coefficient a (not a square).
        #[arg(long)]
        a: String,
        /// Parameters to add; "inf" is the point at infinity.
        #[arg(required = true, allow_hyphen_values = true)]
        points: Vec<String>,
    },
    /// Local torsor classes modulo the image of the Russell map.
    Torsor {
        #[arg(value_enum)]
        action: TorsorAction,
        #[command(flatten)]
        args: TorsorArgs,
    },
    /// Hasse-Witt operator, stable rank and cohomology over the projective line.
    HasseWitt {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Binary form in t0, t1.
        #[arg(long)]
        a: String,
        /// Also compute an F_p-basis of the fixed points of the operator.
        #[arg(long)]
        kernel: bool,
    },
    /// Run the bundled example corpus and the seeded property checks.
    VerifyPaper {
        /// Corpus file to run instead of the bundled one.
        #[arg(long)]
        corpus: Option<std::path::PathBuf>,
        /// Seed for the property checks.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run only the corpus.
        #[arg(long)]
        no_properties: bool,
    },
}

#[derive(Args, Debug)]
pub struct EquationArgs {
    /// The equation.
    pub equation: String,
    /// Characteristic, when neither --field nor the equation gives it.
    #[arg(long)]
    pub p: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsorAction {
    Reduce,
    Trivial,
}

#[derive(Args, Debug)]
pub struct TorsorArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: Option<u32>,
    /// a_m = unit * t^k and a_i = 0 for i < m.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// Unit in front of t^k.
    #[arg(long)]
    pub unit: Option<String>,
    /// Explicit coefficients a_1,...,a_m as Laurent series, comma separated.
    #[arg(long, conflicts_with_all = ["k", "unit"])]
    pub a: Option<String>,
    /// The class representative f.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    /// Depth of the brute-force search for unsupported shapes.
    #[arg(long, default_value_t = 4)]
    pub depth: i64,
}
