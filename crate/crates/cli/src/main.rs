mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::{CliError, Outcome, Status};

#[derive(Parser, Debug)]
#[command(name = "tpairs", version, about = "Exact computations on semiring pairs")]
struct Cli {
    /// Sampling bound for windowed carriers.
    #[arg(long, global = true, env = "TPAIRS_WINDOW", default_value_t = 12)]
    window: i64,

    /// Print the JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GrowthSource {
    /// Free semialgebra on this many letters.
    #[arg(long)]
    pub free_letters: Option<usize>,
    /// Commutative polynomial semialgebra in this many variables.
    #[arg(long)]
    pub vars: Option<usize>,
    /// Matrix units of this size.
    #[arg(long)]
    pub matrix: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the laws of a structure file, reporting the first witness per law.
    Verify { file: PathBuf },
    /// Whether every element is tangible or quasi-zero.
    Shallow { file: PathBuf },
    /// Quasi-negatives and the property-N classification.
    PropertyN { file: PathBuf },
    /// Enumerate and classify all pair-congruences.
    Congruences { file: PathBuf },
    /// Prime congruences and Krull dimension.
    Spectrum { file: PathBuf },
    /// Radical of the congruence generated by the seeds (the diagonal by default).
    Radical {
        file: PathBuf,
        /// Seed pair `a:b`, by element label. Repeatable.
        #[arg(long = "seed")]
        seeds: Vec<String>,
    },
    /// Krull dimension with a longest chain of primes.
    Krull { file: PathBuf },
    /// Roots of a polynomial over a structure file, or over the supertropical integers.
    Polyroots {
        poly: String,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Comma-separated variable names.
        #[arg(long, default_value = "x")]
        var_names: String,
    },
    /// Sum, product and equivalence of two dyadic fractions `a/b` over the naturals.
    Localize { x: String, y: String },
    /// Membership, quasi-negatives, reversibility and regularity of one element.
    ClassifyElement {
        file: PathBuf,
        element: String,
        /// Highest power for power reversibility.
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Graded and cumulative ranks of a monoid semialgebra over the Boolean semiring.
    Growth {
        #[command(flatten)]
        source: GrowthSource,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Include the unit in the filtration.
        #[arg(long)]
        unital: bool,
    },
    /// Hilbert series coefficients, from degree one.
    Hilbert {
        #[command(flatten)]
        source: GrowthSource,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[arg(long)]
        unital: bool,
    },
    /// GK dimension estimate.
    Gk {
        #[command(flatten)]
        source: GrowthSource,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[arg(long)]
        unital: bool,
    },
    /// Coefficients b1, b2 outside A0 with b1 a1 + b2 a2 in A0, over supertropical naturals.
    OreWitness {
        a1: String,
        a2: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Largest tangible coefficient tried.
        #[arg(long, default_value_t = 4)]
        coeff_max: i64,
    },
    /// Coset quotient by a multiplicative subgroup. SOURCE is `Z<n>` or a structure file.
    Krasner {
        source: String,
        /// Comma-separated subgroup labels.
        #[arg(long)]
        subgroup: String,
    },
    /// Power-set pair of a hyperring file.
    Powerset {
        file: PathBuf,
        #[arg(long, default_value = "contains_zero")]
        a0_choice: String,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let w = cli.window;
    match &cli.command {
        Command::Verify { file } => commands::verify(file),
        Command::Shallow { file } => commands::shallow(file),
        Command::PropertyN { file } => commands::property_n(file),
        Command::Congruences { file } => commands::congruences(file),
        Command::Spectrum { file } => commands::spectrum(file),
        Command::Radical { file, seeds } => commands::radical(file, seeds),
        Command::Krull { file } => commands::krull(file),
        Command::Polyroots { poly, file, var_names } => commands::polyroots(poly, file.as_deref(), var_names, w),
        Command::Localize { x, y } => commands::localize(x, y, w),
        Command::ClassifyElement { file, element, degree } => commands::classify_element(file, element, *degree),
        Command::Growth { source, kmax, unital } => commands::growth(source, *kmax, *unital),
        Command::Hilbert { source, kmax, unital } => commands::hilbert(source, *kmax, *unital),
        Command::Gk { source, kmax, unital } => commands::gk(source, *kmax, *unital),
        Command::OreWitness { a1, a2, degree, coeff_max } => commands::ore_witness(a1, a2, *degree, *coeff_max, w),
        Command::Krasner { source, subgroup } => commands::krasner(source, subgroup),
        Command::Powerset { file, a0_choice } => commands::powerset(file, a0_choice),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Shallow { .. } => "shallow",
        Command::PropertyN { .. } => "property-n",
        Command::Congruences { .. } => "congruences",
        Command::Spectrum { .. } => "spectrum",
        Command::Radical { .. } => "radical",
        Command::Krull { .. } => "krull",
        Command::Polyroots { .. } => "polyroots",
        Command::Localize { .. } => "localize",
        Command::ClassifyElement { .. } => "classify-element",
        Command::Growth { .. } => "growth",
        Command::Hilbert { .. } => "hilbert",
        Command::Gk { .. } => "gk",
        Command::OreWitness { .. } => "ore-witness",
        Command::Krasner { .. } => "krasner",
        Command::Powerset { .. } => "powerset",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let name = command_name(&cli.command);
    let started = std::time::Instant::now();
    let (code, report, summary) = match run(&cli) {
        Ok(out) => {
            let mut report = json!({
                "command": name,
                "status": out.status.as_str(),
                "result": out.result,
            });
            if let Some(input) = out.input {
                report["input"] = input;
            }
            if let Some(w) = out.window {
                report["window"] = json!(w);
            }
            (out.status.exit_code(), report, out.summary)
        }
        Err(e) => {
            let report = json!({
                "command": name,
                "status": e.status().as_str(),
                "error": e.to_string(),
            });
            (e.status().exit_code(), report, vec![format!("error: {e}")])
        }
    };
    for line in &summary {
        eprintln!("{line}");
    }
    eprintln!("{name}: {} in {:.3}s", report_status(&report), started.elapsed().as_secs_f64());
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    }
    ExitCode::from(code)
}

fn report_status(report: &Value) -> &str {
    report["status"].as_str().unwrap_or("unknown")
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Computed | Status::Holds => 0,
            Status::Fails => 1,
            Status::InputError => 2,
            Status::Unknown => 3,
        }
    }
}
