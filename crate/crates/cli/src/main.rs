use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use koszul_cli::input::parse_document;
use koszul_cli::{run, CliError, Command, Options};
use koszul_core::criteria::Route;

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum RouteArg {
    Direct,
    Dual,
    Both,
}

/// Homology of graded modules over prime fields, Koszulity checks and the
/// random ideal search.
#[derive(Debug, Parser)]
#[command(name = "koszul", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Job document (JSON); `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
    /// Truncation degree D; overrides "truncation" in the document.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of search samples.
    #[arg(long, default_value_t = 100)]
    count: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "direct")]
    route: RouteArg,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main_inner(args: Args) -> Result<(), CliError> {
    let text = if args.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(&args.input)?
    };
    let doc = parse_document(&text)?;
    let opts = Options {
        max_degree: args.max_degree,
        seed: args.seed,
        count: args.count,
        jobs: args.jobs,
        route: match args.route {
            RouteArg::Direct => Route::Direct,
            RouteArg::Dual => Route::DualViaJ,
            RouteArg::Both => Route::Both,
        },
        cache_dir: args.cache_dir,
    };
    let report = run(args.command, &doc, &opts)?;
    match args.output {
        Some(path) => std::fs::write(path, report + "\n")?,
        None => println!("{report}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match main_inner(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("koszul: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
