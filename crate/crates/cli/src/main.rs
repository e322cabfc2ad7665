//! Command-line interface: direct and modular Gröbner basis computation,
//! basis verification, built-in self tests, and a direct-vs-modular bench.
//!
//! Exit codes: 0 success, 1 input error, 2 verification failure,
//! 3 modular round limit exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use freegb::engine::{verification_test, EngineOptions, QueuePolicy, VerifyMode};
use freegb::modular::{ModularConfig, PrimeSource, VerifyChoice};
use freegb::oracles;
use freegb::order::SigBound;
use freegb::problem::{parse_bound, Problem};
use freegb::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "freegb",
    version,
    about = "Signature Gröbner bases in free algebras over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BoundArgs {
    /// Compute up to the smallest signature of this degree
    #[arg(long, value_name = "D", conflicts_with = "sig_bound")]
    sig_deg: Option<u64>,
    /// Compute up to this explicit module monomial, e.g. 1*e1*yx
    #[arg(long, value_name = "MONOMIAL")]
    sig_bound: Option<String>,
}

#[derive(Args, Clone)]
struct ModularArgs {
    /// Worker threads for per-prime computations
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Seed for the prime sequence
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bit width of sampled primes
    #[arg(long, default_value_t = 31, value_name = "B")]
    prime_bits: u32,
    /// Initial prime count (defaults to the thread count)
    #[arg(long, value_name = "N")]
    initial_primes: Option<usize>,
    /// Round limit before giving up
    #[arg(long, default_value_t = 10, value_name = "R")]
    max_rounds: usize,
    /// Final verification mode
    #[arg(long, value_enum, default_value_t = VerifyFlag::Exact)]
    verify: VerifyFlag,
    /// Force these primes into the first batch (comma separated)
    #[arg(long, value_delimiter = ',', value_name = "P,..")]
    force_primes: Vec<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyFlag {
    Exact,
    Probabilistic,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the reduced signature Gröbner basis of a problem file
    Gb {
        problem: PathBuf,
        #[command(flatten)]
        bound: BoundArgs,
        /// Use the modular multi-prime algorithm
        #[arg(long)]
        modular: bool,
        /// Carry full module labels and run the strong verification test
        #[arg(long)]
        strong: bool,
        /// Output basis file (`-` for stdout; default: problem stem + .basis)
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Transcript file for modular runs (default: problem stem + .transcript)
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[command(flatten)]
        modular_args: ModularArgs,
    },
    /// Verify a basis file against a problem file
    Verify {
        basis: PathBuf,
        problem: PathBuf,
        #[command(flatten)]
        bound: BoundArgs,
        /// Verification mode
        #[arg(long, value_enum, default_value_t = VerifyFlag::Exact)]
        verify: VerifyFlag,
        /// Seed for the probabilistic verification prime
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the built-in exact oracles
    Selftest {
        /// Identity-check range
        #[arg(long, default_value_t = 50)]
        fib: usize,
        /// Recursion-check range
        #[arg(long, default_value_t = 20)]
        recursion: usize,
        /// S-polynomial-check range
        #[arg(long, default_value_t = 6)]
        spoly: usize,
    },
    /// Run both the direct and the modular path and compare byte-for-byte
    Bench {
        problem: PathBuf,
        #[command(flatten)]
        bound: BoundArgs,
        #[command(flatten)]
        modular_args: ModularArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::MaxRoundsExceeded { .. } => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn resolve_bound(problem: &Problem, args: &BoundArgs) -> Result<SigBound, Error> {
    let explicit = match (&args.sig_deg, &args.sig_bound) {
        (Some(d), _) => Some(SigBound::SigDegree(*d)),
        (None, Some(m)) => Some(parse_bound(m, &problem.alphabet, problem.rank())?),
        (None, None) => None,
    };
    problem.effective_bound(explicit)
}

fn modular_config(args: &ModularArgs, strong: bool) -> ModularConfig {
    ModularConfig {
        seed: args.seed,
        threads: args
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        initial_primes: args.initial_primes,
        max_rounds: args.max_rounds,
        prime_bits: args.prime_bits,
        verify: match args.verify {
            VerifyFlag::Exact => VerifyChoice::Exact,
            VerifyFlag::Probabilistic => VerifyChoice::Probabilistic,
        },
        strong,
        force_primes: args.force_primes.clone(),
        queue_policy: QueuePolicy::LmaFirst,
    }
}

fn with_extension(path: &Path, ext: &str) -> PathBuf {
    let mut out = path.to_path_buf();
    out.set_extension(ext);
    out
}

fn write_output(path: Option<&Path>, default: PathBuf, content: &str) -> Result<(), Error> {
    let target = path.map(Path::to_path_buf).unwrap_or(default);
    if target.as_os_str() == "-" {
        print!("{content}");
        return Ok(());
    }
    std::fs::write(&target, content).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot write {}: {e}", target.display()),
    })?;
    eprintln!("wrote {}", target.display());
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Gb {
            problem,
            bound,
            modular,
            strong,
            out,
            transcript,
            modular_args,
        } => {
            let prob = Problem::from_file(&problem)?;
            let b = resolve_bound(&prob, &bound)?;
            if modular {
                let config = modular_config(&modular_args, strong);
                let (basis, report, log) = prob.gb_modular(&b, &config)?;
                write_output(
                    transcript.as_deref(),
                    with_extension(&problem, "transcript"),
                    &log.render(),
                )?;
                write_output(
                    out.as_deref(),
                    with_extension(&problem, "basis"),
                    &prob.render_basis(&basis),
                )?;
                eprintln!(
                    "modular basis: {} elements, {} syzygies, verified {}",
                    basis.elements.len(),
                    basis.syzygies.len(),
                    if report.probabilistic {
                        "probabilistically"
                    } else {
                        "exactly"
                    }
                );
            } else {
                let options = EngineOptions {
                    strong,
                    queue_policy: QueuePolicy::LmaFirst,
                };
                let basis = prob.gb(&b, options)?;
                if strong {
                    let report = verification_test(&prob.mord, &basis, &prob.gens)?;
                    if !report.ok {
                        for line in report.render(&prob.alphabet) {
                            eprintln!("verification: {line}");
                        }
                        return Ok(ExitCode::from(2));
                    }
                    eprintln!("strong verification passed");
                }
                write_output(
                    out.as_deref(),
                    with_extension(&problem, "basis"),
                    &prob.render_basis(&basis),
                )?;
                eprintln!(
                    "basis: {} elements, {} syzygies",
                    basis.elements.len(),
                    basis.syzygies.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            basis,
            problem,
            bound,
            verify,
            seed,
        } => {
            let prob = Problem::from_file(&problem)?;
            let b = resolve_bound(&prob, &bound)?;
            let text = std::fs::read_to_string(&basis).map_err(|e| Error::Parse {
                line: 0,
                message: format!("cannot read {}: {e}", basis.display()),
            })?;
            let candidate = prob.parse_basis(&text, b)?;
            let mode = match verify {
                VerifyFlag::Exact => VerifyMode::Exact,
                VerifyFlag::Probabilistic => {
                    let mut source = PrimeSource::new(seed, 31);
                    VerifyMode::Probabilistic {
                        prime: source.draw(&prob.gens),
                    }
                }
            };
            let report = prob.verify(&candidate, mode, &[])?;
            if report.ok {
                eprintln!(
                    "verification passed{}",
                    if report.probabilistic {
                        " (probabilistic)"
                    } else {
                        ""
                    }
                );
                Ok(ExitCode::SUCCESS)
            } else {
                for line in report.render(&prob.alphabet) {
                    eprintln!("verification: {line}");
                }
                Ok(ExitCode::from(2))
            }
        }
        Command::Selftest {
            fib,
            recursion,
            spoly,
        } => {
            let mut ok = true;
            for (name, result) in [
                ("fibonacci identities", oracles::check_fib_identities(fib)),
                ("generator recursion", oracles::check_recursion(recursion)),
                (
                    "s-polynomial reduction",
                    oracles::check_spoly_reduction(spoly),
                ),
            ] {
                match result {
                    Ok(()) => println!("selftest {name}: ok"),
                    Err(msg) => {
                        println!("selftest {name}: FAILED ({msg})");
                        ok = false;
                    }
                }
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Bench {
            problem,
            bound,
            modular_args,
        } => {
            let prob = Problem::from_file(&problem)?;
            let b = resolve_bound(&prob, &bound)?;
            let t0 = Instant::now();
            let direct = prob.gb(&b, EngineOptions::default())?;
            let t_direct = t0.elapsed();
            let config = modular_config(&modular_args, false);
            let t1 = Instant::now();
            let (modular, _, _) = prob.gb_modular(&b, &config)?;
            let t_modular = t1.elapsed();
            let direct_text = prob.render_basis(&direct);
            let modular_text = prob.render_basis(&modular);
            let equal = direct_text == modular_text;
            println!(
                "direct: {} elements in {:.3}s",
                direct.elements.len(),
                t_direct.as_secs_f64()
            );
            println!(
                "modular: {} elements in {:.3}s ({} threads)",
                modular.elements.len(),
                t_modular.as_secs_f64(),
                config.threads
            );
            println!("outputs byte-identical: {equal}");
            Ok(if equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}
