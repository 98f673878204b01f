//! `schubert`: bumpless pipe dreams, Schubert and ASM ideals, Groebner
//! degenerations and the verification harness from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

mod cache;
mod commands;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schubert_core::monomial::Grading;

use commands::combinat::PolyKind;
use commands::{algebra, combinat, verify, Ctx};
use error::CliError;
use output::Output;

#[derive(Parser)]
#[command(name = "schubert", version, about = "Schubert determinantal ideals, ASM ideals and bumpless pipe dreams")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for cached Groebner bases.
    #[arg(long, env = "SCHUBERT_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Allow exhaustive runs beyond n = 5.
    #[arg(long, global = true)]
    extended: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Bumpless pipe dreams of a permutation.
    #[command(subcommand)]
    Bpd(BpdCmd),
    /// Schubert and Grothendieck polynomials.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Schubert determinantal and ASM ideals, Groebner bases, initial ideals.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Monomial ideal algebra.
    #[command(subcommand)]
    Mono(MonoCmd),
    /// The ASM lattice.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Verification harness.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum BpdCmd {
    /// List every bumpless pipe dream.
    Enum { w: String },
    /// Count bumpless pipe dreams.
    Count { w: String },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Single Schubert polynomial.
    Schubert { w: String },
    /// Double Schubert polynomial.
    Dschubert { w: String },
    /// Double Grothendieck polynomial (beta = -1 unless --beta).
    Groth {
        w: String,
        /// Keep beta as a variable.
        #[arg(long)]
        beta: bool,
    },
}

#[derive(Args)]
struct OrderedInputs {
    /// Permutations or ASMs (rows separated by `;`); several are intersected.
    #[arg(required = true)]
    inputs: Vec<String>,
    /// diag, antidiag, col-lex, degrevlex, tau:a,b or yref:a,b:<order>.
    #[arg(long, default_value = "diag")]
    order: String,
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Fulton generators of I_w.
    Fulton { w: String },
    /// Generators of I_A from its essential rank conditions.
    Asm {
        a: String,
    },
    /// Reduced Groebner basis.
    Gb(OrderedInputs),
    /// Initial ideal.
    Init(OrderedInputs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GradingArg {
    Standard,
    Zn,
    Z2n,
}

impl From<GradingArg> for Grading {
    fn from(g: GradingArg) -> Self {
        match g {
            GradingArg::Standard => Grading::Standard,
            GradingArg::Zn => Grading::Zn,
            GradingArg::Z2n => Grading::Z2n,
        }
    }
}

#[derive(Args)]
struct MonoInput {
    /// Monomials in z[i,j], comma separated, optionally in parentheses.
    ideal: String,
    /// Matrix size (default: largest index in the input).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct GradedMonoInput {
    #[command(flatten)]
    input: MonoInput,
    #[arg(long, value_enum, default_value_t = GradingArg::Z2n)]
    grading: GradingArg,
}

#[derive(Subcommand)]
enum MonoCmd {
    /// Minimal primes with multiplicity and irreducible components.
    Decompose(MonoInput),
    /// Associated primes.
    Ass(MonoInput),
    /// K-polynomial.
    Kpoly(GradedMonoInput),
    /// Multidegree.
    Multidegree(GradedMonoInput),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Join of ASMs or permutations.
    Join {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Meet of ASMs or permutations.
    Meet {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Perm(A): the Bruhat-minimal permutations above A.
    Perm {
        a: String,
    },
    /// Bigrassmannian join decomposition and essential rank conditions.
    Decompose {
        a: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Permutations (or ASMs for `verify asm`).
    inputs: Vec<String>,
    /// Run every case for S_n (ASM(n) for `verify asm`).
    #[arg(long)]
    all_sn: Option<usize>,
    /// Term order where one is used (default diag).
    #[arg(long)]
    order: Option<String>,
    /// Restrict to one corner `a,b`.
    #[arg(long)]
    corner: Option<String>,
}

impl From<VerifyArgs> for verify::Args {
    fn from(a: VerifyArgs) -> Self {
        verify::Args {
            inputs: a.inputs,
            all_sn: a.all_sn,
            order: a.order,
            corner: a.corner,
        }
    }
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Minimal primes of in(J) with multiplicity against BPD diagrams.
    Main(VerifyArgs),
    /// Schubert transition at lower outside corners.
    Transition(VerifyArgs),
    /// Beta-Grothendieck transition at lower outside corners.
    GrothTransition(VerifyArgs),
    /// Antidiagonal degeneration: Groebner, squarefree, facets, multidegree.
    #[command(name = "theoremB")]
    TheoremB(VerifyArgs),
    /// C and N of the geometric vertex decomposition at accessible corners.
    Linkdecomp(VerifyArgs),
    /// ASM initial ideals, three ways.
    Asm(VerifyArgs),
    /// Initial ideals unchanged by refining the order by y-degree.
    Ycompat(VerifyArgs),
    /// K-polynomial transition.
    Hilbert(VerifyArgs),
}

fn dispatch(ctx: &Ctx, command: Command) -> Result<Output, CliError> {
    Ok(match command {
        Command::Bpd(BpdCmd::Enum { w }) => combinat::bpd_enum(&input::permutation(&w)?),
        Command::Bpd(BpdCmd::Count { w }) => combinat::bpd_count(&input::permutation(&w)?),
        Command::Poly(cmd) => {
            let (kind, w) = match cmd {
                PolyCmd::Schubert { w } => (PolyKind::Schubert, w),
                PolyCmd::Dschubert { w } => (PolyKind::DoubleSchubert, w),
                PolyCmd::Groth { w, beta } => (PolyKind::Grothendieck { beta }, w),
            };
            combinat::poly(kind, &input::permutation(&w)?)?
        }
        Command::Ideal(IdealCmd::Fulton { w }) => algebra::fulton(&input::permutation(&w)?),
        Command::Ideal(IdealCmd::Asm { a }) => algebra::asm(&input::asm(&a)?),
        Command::Ideal(IdealCmd::Gb(args)) => {
            let (n, ideal) = input::ideal(&args.inputs)?;
            algebra::gb(ctx, &ideal, &args.order, &input::order(n, &args.order)?)
        }
        Command::Ideal(IdealCmd::Init(args)) => {
            let (n, ideal) = input::ideal(&args.inputs)?;
            algebra::init(ctx, &ideal, &args.order, &input::order(n, &args.order)?)
        }
        Command::Mono(cmd) => match cmd {
            MonoCmd::Decompose(m) => algebra::decompose(&input::monomial_ideal(&m.ideal, m.n)?),
            MonoCmd::Ass(m) => algebra::ass(&input::monomial_ideal(&m.ideal, m.n)?),
            MonoCmd::Kpoly(g) => {
                algebra::kpoly(&input::monomial_ideal(&g.input.ideal, g.input.n)?, g.grading.into())
            }
            MonoCmd::Multidegree(g) => {
                algebra::multidegree(&input::monomial_ideal(&g.input.ideal, g.input.n)?, g.grading.into())
            }
        },
        Command::Lattice(cmd) => match cmd {
            LatticeCmd::Join { inputs } => combinat::join(&input::asms(&inputs)?)?,
            LatticeCmd::Meet { inputs } => combinat::meet(&input::asms(&inputs)?)?,
            LatticeCmd::Perm { a } => combinat::perm(&input::asm(&a)?),
            LatticeCmd::Decompose { a } => combinat::decompose(&input::asm(&a)?),
        },
        Command::Verify(cmd) => match cmd {
            VerifyCmd::Main(a) => verify::main_theorem(ctx, &a.into())?,
            VerifyCmd::Transition(a) => verify::transition(ctx, &a.into(), false)?,
            VerifyCmd::GrothTransition(a) => verify::transition(ctx, &a.into(), true)?,
            VerifyCmd::TheoremB(a) => verify::theorem_b(ctx, &a.into())?,
            VerifyCmd::Linkdecomp(a) => verify::link_decomposition(ctx, &a.into())?,
            VerifyCmd::Asm(a) => verify::asm(ctx, &a.into())?,
            VerifyCmd::Ycompat(a) => verify::ycompat(ctx, &a.into())?,
            VerifyCmd::Hilbert(a) => verify::hilbert(ctx, &a.into())?,
        },
    })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    if let Some(k) = cli.workers {
        if k == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let cache = cli.cache_dir.map(cache::GbCache::open).transpose()?;
    let ctx = Ctx {
        cache,
        extended: cli.extended,
    };
    dispatch(&ctx, cli.command)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", out.render_json()),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
