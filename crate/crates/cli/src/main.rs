//! `sumcx`: homology, torsion and uncertainty numbers of sum complexes.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use sumcomplex::uncertainty::DEFAULT_BUDGET;
use sumcomplex::verify::VerifyParams;

use commands::{Failure, Family, IntList, ScanConfig};
use render::{render, Format};

#[derive(Parser, Debug)]
#[command(name = "sumcx", version, about = "Exact homology of sum complexes over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Wall-clock limit; exceeding it exits with status 4.
    #[arg(long, global = true)]
    budget_seconds: Option<u64>,
}

#[derive(Args, Debug, Clone)]
struct Instance {
    #[arg(short = 'p')]
    p: u64,
    #[arg(short = 'k')]
    k: usize,
    /// Residues, comma separated.
    #[arg(short = 'A', value_delimiter = ',', allow_hyphen_values = true, required = true)]
    a: Vec<i64>,
    /// Write the top faces to PATH.
    #[arg(long)]
    dump_faces: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Betti numbers with the matching closed form or rank sum.
    Betti {
        #[command(flatten)]
        instance: Instance,
        /// Coefficient characteristic: 0 or a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Elementary divisors and order of the torsion in dimension k−2.
    Torsion {
        #[command(flatten)]
        instance: Instance,
    },
    /// Uncertainty number of A over the splitting field of x^p − 1.
    Uncertainty {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'A', value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<i64>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Cap on p^|A| for the exhaustive search in characteristic p.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run cross-check suites; exits 3 with the first counterexample.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Primes, e.g. `5,7,11` or `11..31`.
        #[arg(short = 'p', value_parser = IntList::parse)]
        primes: Option<IntList>,
        #[arg(short = 'k', value_parser = IntList::parse)]
        ks: Option<IntList>,
        /// Coefficient characteristics for suites that take them.
        #[arg(long = "char", value_parser = IntList::parse)]
        chars: Option<IntList>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Torsion over a family of residue sets, e.g. `--family 0,1,a`.
    Scan {
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'p', value_parser = IntList::parse)]
        primes: IntList,
        #[arg(long, value_parser = Family::parse, default_value = "0,1,a")]
        family: Family,
        /// Append-only JSON-lines log; instances already present are skipped.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Allow primes above 31 and add p = 83, A = {0, 1, 19} (hours-scale).
        #[arg(long)]
        stretch: bool,
    },
}

fn run(command: Command, format: Format) -> Result<String, Failure> {
    let (text, ok) = match command {
        Command::Betti { instance: i, characteristic } => {
            let r = commands::betti(i.p, i.k, &i.a, characteristic, i.dump_faces.as_deref())?;
            (render(&r, format), r.agreement)
        }
        Command::Torsion { instance: i } => {
            let r = commands::torsion(i.p, i.k, &i.a, i.dump_faces.as_deref())?;
            (render(&r, format), true)
        }
        Command::Uncertainty { p, a, characteristic, budget } => {
            let r = commands::uncertainty_cmd(p, &a, characteristic, Some(budget))?;
            (render(&r, format), true)
        }
        Command::Verify { suite, primes, ks, chars, seed } => {
            let params = VerifyParams {
                primes: primes.map(|v| v.0),
                ks: ks.map(|v| v.0.into_iter().map(|k| k as usize).collect()),
                chars: chars.map(|v| v.0),
                seed,
            };
            let r = commands::verify(&suite, &params)?;
            (render(&r, format), r.passed)
        }
        Command::Scan { k, primes, family, log, stretch } => {
            let cfg = ScanConfig { k, primes: primes.0, family, log: log.as_deref(), stretch };
            let r = commands::scan(&cfg)?;
            (render(&r, format), true)
        }
    };
    if ok {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Disagreement("independent computations disagree".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("thread pool");
    }
    let format = cli.format;
    let (tx, rx) = mpsc::channel();
    let command = cli.command;
    std::thread::spawn(move || {
        let _ = tx.send(run(command, format));
    });
    let result = match cli.budget_seconds {
        Some(s) => match rx.recv_timeout(Duration::from_secs(s)) {
            Ok(r) => r,
            Err(mpsc::RecvTimeoutError::Timeout) => Err(Failure::Budget(format!("time budget of {s} s exceeded"))),
            Err(mpsc::RecvTimeoutError::Disconnected) => Err(Failure::Disagreement("worker panicked".into())),
        },
        None => rx.recv().unwrap_or_else(|_| Err(Failure::Disagreement("worker panicked".into()))),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code() as u8)
        }
    }
}
