use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;
use ffdot_bench::report::{write_csv, write_plots};
use ffdot_bench::spec::parse_primes;
use ffdot_bench::{all_verified, run, BenchSpec, Experiment};

/// Benchmarks word-size finite field arithmetic and exact dot products.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    #[arg(long, value_enum, default_value = "dotprod")]
    experiment: Experiment,
    /// Starting repetitions per timed cell, scaled up to --min-cell-ms.
    #[arg(long, default_value_t = 1)]
    reps: u64,
    /// Comma-separated kernel names (dotprod); default: all.
    #[arg(long, value_delimiter = ',')]
    kernels: Option<Vec<String>>,
    /// Comma-separated representation names (atomic); default: all.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    representations: Option<Vec<String>>,
    /// Prime list `p1,p2,...` or log-spaced sweep `min:max:points`.
    #[arg(long, value_parser = parse_primes)]
    primes: Option<std::vec::Vec<u64>>,
    /// Vector length; 512 for dotprod, 256 for atomic by default.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 2003)]
    seed: u64,
    /// CSV output path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for space-separated plot series.
    #[arg(long)]
    plot_dir: Option<PathBuf>,
    /// Minimum duration of one timed cell.
    #[arg(long, default_value_t = 50)]
    min_cell_ms: u64,
    /// Timed cells per measurement; the median is reported.
    #[arg(long, default_value_t = 5)]
    cells: usize,
    /// List the known kernels and representations and exit.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        println!("kernels: {}", ffdot_bench::dotprod::KERNELS.join(","));
        println!("representations: {}", ffdot_bench::atomic::REPRESENTATIONS.join(","));
        return ExitCode::SUCCESS;
    }
    let mut spec = BenchSpec::new(cli.experiment);
    if let Some(k) = cli.kernels {
        spec.kernels = k;
    }
    if let Some(r) = cli.representations {
        spec.representations = r;
    }
    if let Some(p) = cli.primes {
        spec.primes = p;
    }
    if let Some(d) = cli.dim {
        spec.dim = d;
    }
    spec.reps = cli.reps;
    spec.seed = cli.seed;
    spec.min_cell = Duration::from_millis(cli.min_cell_ms);
    spec.cells = cli.cells;

    let records = run(&spec);
    let written = match &cli.out {
        Some(path) => std::fs::File::create(path)
            .map_err(csv::Error::from)
            .and_then(|f| write_csv(f, &records)),
        None => write_csv(std::io::stdout().lock(), &records),
    };
    if let Err(e) = written {
        eprintln!("error: writing CSV: {e}");
        return ExitCode::from(2);
    }
    if let Some(dir) = &cli.plot_dir {
        if let Err(e) = write_plots(dir, &records) {
            eprintln!("error: writing plot series: {e}");
            return ExitCode::from(2);
        }
    }
    let bad = records.iter().filter(|r| r.status == ffdot_bench::report::STATUS_MISMATCH).count();
    if all_verified(&records) {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: {bad} cell(s) disagreed with the oracle");
        ExitCode::FAILURE
    }
}
