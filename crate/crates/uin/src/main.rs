//! Command-line front end: compute measures on a state, sweep a channel
//! family, generate state files and run the verification suites.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use uin::channel::{sweep, uniform_grid, ChannelFamily, MeasureKind};
use uin::measure::{self, w_matrix};
use uin::state::{
    bell_state, bloch_vector_a, example_state, max_mixed_state, product_mixed_state,
    product_state, random_density, random_pure, BipartiteState,
};
use uin::statefile::StateFile;
use uin::verify::{format_report, run_suites};

#[derive(Parser)]
#[command(
    name = "uin",
    about = "Skew-information quantum correlation measures (UIN, MUIN, LQU, HS-MIN) for 2xd states",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all measures of a state and report them as key=value lines.
    Compute {
        #[command(flatten)]
        source: StateSource,
        /// Emit a JSON object instead of key=value lines.
        #[arg(long)]
        json: bool,
    },
    /// Tabulate measures of the state under a channel family over a rate grid.
    Sweep {
        #[command(flatten)]
        source: StateSource,
        /// Channel family: amplitude-damping, phase-damping or depolarizing.
        #[arg(long)]
        channel: String,
        /// Number of uniform grid points on [0, 1].
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a state file: random-mixed, random-pure or product.
    Gen {
        /// State kind: random-mixed, random-pure or product.
        kind: String,
        /// Dimension of subsystem A.
        da: usize,
        /// Dimension of subsystem B.
        db: usize,
        /// Rank of a random-mixed state (defaults to full rank).
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded verification suites; exit 0 only if every suite passes.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StateSource {
    /// Builtin state: example, bell, product-mixed or max-mixed.
    #[arg(long)]
    builtin: Option<String>,
    /// Path to a JSON state file.
    #[arg(long)]
    input: Option<PathBuf>,
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 1,
        }
    }
}

impl From<uin::Error> for Failure {
    fn from(e: uin::Error) -> Self {
        Failure::input(e.to_string())
    }
}

/// Twelve significant digits, the precision used for all tabular output.
fn sig12(v: f64) -> String {
    format!("{v:.11e}")
}

fn load_state(source: &StateSource) -> Result<(BipartiteState, String), Failure> {
    if let Some(name) = &source.builtin {
        let state = match name.as_str() {
            "example" => example_state(),
            "bell" => bell_state(),
            "product-mixed" => product_mixed_state(),
            "max-mixed" => max_mixed_state(2, 2),
            other => return Err(uin::Error::UnknownBuiltin(other.to_string()).into()),
        };
        return Ok((state, format!("builtin:{name}")));
    }
    let path = source.input.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let state = StateFile::from_json(&text)?.into_state()?;
    Ok((state, path.display().to_string()))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_compute(source: &StateSource, json: bool) -> Result<(), Failure> {
    let (state, label) = load_state(source)?;
    let r = bloch_vector_a(&state)?;
    let uin_value = measure::uin(&state)?;
    let muin_value = measure::muin(&state)?;
    let lqu_value = measure::lqu(&state)?;
    let min_value = measure::min_hs(&state)?;
    let w_eigs = w_matrix(&state)?.eigenvalues();

    if json {
        let obj = serde_json::json!({
            "source": label,
            "dims": [state.da(), state.db()],
            "bloch_norm": r.norm(),
            "branch": uin_value.branch.to_string(),
            "uin": uin_value.value,
            "muin": muin_value.value,
            "lqu": lqu_value.value,
            "min_hs": min_value.value,
            "w_eigenvalues": w_eigs,
        });
        println!("{}", serde_json::to_string_pretty(&obj).expect("plain object"));
    } else {
        println!("source={label}");
        println!("dims={}x{}", state.da(), state.db());
        println!("bloch_norm={}", sig12(r.norm()));
        println!("branch={}", uin_value.branch);
        println!("uin={}", sig12(uin_value.value));
        println!("muin={}", sig12(muin_value.value));
        println!("lqu={}", sig12(lqu_value.value));
        println!("min_hs={}", sig12(min_value.value));
        println!(
            "w_eigenvalues={},{},{}",
            sig12(w_eigs[0]),
            sig12(w_eigs[1]),
            sig12(w_eigs[2])
        );
    }
    Ok(())
}

fn cmd_sweep(
    source: &StateSource,
    channel: &str,
    points: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let (state, _) = load_state(source)?;
    let family: ChannelFamily = channel.parse()?;
    let grid = uniform_grid(points);
    let series = sweep(&state, family, &grid, &MeasureKind::ALL)?;

    let mut csv = String::from("gamma,uin,muin,lqu,min_hs\n");
    for (i, gamma) in series.grid().iter().enumerate() {
        write!(csv, "{}", sig12(*gamma)).unwrap();
        for kind in MeasureKind::ALL {
            write!(csv, ",{}", sig12(series.series(kind).unwrap()[i])).unwrap();
        }
        csv.push('\n');
    }
    write_output(out, &csv)
}

fn cmd_gen(
    kind: &str,
    da: usize,
    db: usize,
    rank: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    if da != 2 {
        eprintln!("warning: closed-form measures require dA = 2 (got dA = {da})");
    }
    let dim = da * db;
    let state = match kind {
        "random-mixed" => {
            let rho = random_density(dim, rank.unwrap_or(dim), seed)?;
            BipartiteState::new(rho, da, db)?
        }
        "random-pure" => random_pure(da, db, seed),
        "product" => {
            let rho_a = random_density(da, da, seed)?;
            let rho_b = random_density(db, db, seed.wrapping_add(1))?;
            product_state(&rho_a, &rho_b)
        }
        other => {
            return Err(Failure::input(format!(
                "unknown state kind `{other}` (expected random-mixed, random-pure or product)"
            )))
        }
    };
    write_output(out, &StateFile::from_state(&state).to_json())
}

fn cmd_verify(seed: u64, trials: usize) -> Result<u8, Failure> {
    if trials == 0 {
        return Err(Failure::input("--trials must be at least 1"));
    }
    let outcomes = run_suites(seed, trials)?;
    print!("{}", format_report(seed, trials, &outcomes));
    Ok(if outcomes.iter().all(|o| o.passed()) {
        0
    } else {
        2
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compute { source, json } => cmd_compute(&source, json).map(|_| 0),
        Command::Sweep {
            source,
            channel,
            points,
            out,
        } => cmd_sweep(&source, &channel, points, out.as_deref()).map(|_| 0),
        Command::Gen {
            kind,
            da,
            db,
            rank,
            seed,
            out,
        } => cmd_gen(&kind, da, db, rank, seed, out.as_deref()).map(|_| 0),
        Command::Verify { seed, trials } => cmd_verify(seed, trials),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
