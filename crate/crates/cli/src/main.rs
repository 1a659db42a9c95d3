//! `nrt`: stream bytes through the online suffix tree and print LRS, LPF,
//! factorizations or MUS deltas as they become final.

mod emit;
mod engine;
mod latency;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nrt_core::{Mode, StrategyKind, SuffixTree};

use emit::{Emitter, Format};
use engine::{Engine, Streams};
use latency::Latency;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Lrs,
    Lpf,
    Lz77,
    Revlz,
    Ovrevlz,
    Mus,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Eager,
    Deamortized,
}

#[derive(Debug, Parser)]
#[command(
    name = "nrt",
    version,
    about = "Online LRS, LPF, LZ77, reversed LZ and MUS over a byte stream"
)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Input file (stdin when absent).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `walker` or `euler-balanced`.
    #[arg(long, default_value = "walker")]
    strategy: StrategyKind,
    #[arg(long, value_enum, default_value_t = ModeArg::Eager)]
    mode: ModeArg,
    /// Deferred W-link writes applied per letter in deamortized mode.
    #[arg(long, default_value_t = 2)]
    budget: usize,
    /// Cross-check the output against the brute-force oracles.
    #[arg(long)]
    verify: bool,
    /// Write a per-letter latency histogram (CSV `bucket_ns,count`) here.
    #[arg(long)]
    latency: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

fn run(args: Args) -> Result<(), Failure> {
    let mode = match args.mode {
        ModeArg::Eager => Mode::Eager,
        ModeArg::Deamortized => Mode::Deamortized { budget: args.budget },
    };
    let tree = SuffixTree::new(mode, args.strategy).map_err(|e| Failure::Config(e.to_string()))?;
    let mut input: Box<dyn Read> = match &args.input {
        Some(p) => Box::new(File::open(p)?),
        None => Box::new(io::stdin().lock()),
    };
    let output: Box<dyn Write> = match &args.output {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut emitter = Emitter::new(
        BufWriter::with_capacity(1 << 16, output),
        args.format,
        args.command == Command::All,
    );
    let mut engine = Engine::new(tree, Streams::for_command(args.command), args.verify);
    let mut latency = args.latency.as_ref().map(|_| Latency::default());

    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = match input.read(&mut buf) {
            Ok(0) => break,
            Ok(n) => n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        };
        for &c in &buf[..n] {
            match latency.as_mut() {
                Some(l) => {
                    let start = std::time::Instant::now();
                    let work = engine.push(c, &mut emitter)?;
                    l.record(start.elapsed(), &work);
                }
                None => {
                    engine.push(c, &mut emitter)?;
                }
            }
        }
        emitter.flush()?;
    }
    engine.finish(&mut emitter)?;
    emitter.flush()?;

    if let (Some(path), Some(l)) = (&args.latency, &latency) {
        l.write_csv(&mut BufWriter::new(File::create(path)?))?;
        eprintln!("{}", l.summary());
    }
    if args.verify {
        verify::check(args.command, &engine).map_err(|e| match e {
            verify::Error::TooLong(msg) => Failure::Config(msg),
            verify::Error::Mismatch(msg) => Failure::Mismatch(msg),
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nrt: {e}");
            ExitCode::from(e.code())
        }
    }
}
