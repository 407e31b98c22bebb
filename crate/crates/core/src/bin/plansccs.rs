use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use plansccs::gen::{gen_trace, TraceParams};
use plansccs::runner::{bench, run, RunOptions};
use plansccs::trace::{Mode, Trace};

#[derive(Parser)]
#[command(name = "plansccs", about = "Dynamic SCCs of planar digraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a trace; with --diff, check every step against the oracles.
    Run {
        #[arg(long)]
        trace: String,
        #[arg(long)]
        r: Option<usize>,
        /// Defaults to the mode in the trace header.
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long)]
        diff: bool,
        #[arg(long)]
        debug_closedness: bool,
        /// Deliberately miscount one swallowed SCC per refresh (harness check).
        #[arg(long, hide = true)]
        fault_injection: bool,
    },
    /// Print a random trace.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "scc")]
        mode: Mode,
        #[arg(long)]
        density: Option<f64>,
    },
    /// Per-step CSV for each r in the grid.
    Bench {
        #[arg(long)]
        trace: String,
        #[arg(long, value_delimiter = ',', default_value = "16,32,64")]
        r_grid: Vec<usize>,
        #[arg(long)]
        mode: Option<Mode>,
        /// Write 0 in the timing column.
        #[arg(long)]
        deterministic: bool,
    },
}

fn load(path: &str) -> Result<Trace, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    Trace::parse(&text).map_err(|e| format!("{path}: {e}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.cmd {
        Cmd::Run {
            trace,
            r,
            mode,
            diff,
            debug_closedness,
            fault_injection,
        } => {
            let t = match load(&trace) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let opts = RunOptions {
                r,
                diff,
                debug_closedness,
                fault_injection,
            };
            match run(&t, mode.unwrap_or(t.mode), &opts) {
                Ok(rep) => {
                    for a in &rep.answers {
                        println!("{a}");
                    }
                    match &rep.divergence {
                        Some(d) => {
                            println!("DIVERGENCE {d}");
                            ExitCode::from(1)
                        }
                        None => {
                            if diff {
                                println!("PASS");
                            }
                            ExitCode::SUCCESS
                        }
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Cmd::Gen {
            n,
            steps,
            seed,
            mode,
            density,
        } => {
            if n == 0 {
                eprintln!("error: n must be at least 1");
                return ExitCode::from(2);
            }
            let mut p = TraceParams::new(n, steps, seed, mode);
            if let Some(d) = density {
                p.density = d;
            }
            print!("{}", gen_trace(&p).to_text());
            ExitCode::SUCCESS
        }
        Cmd::Bench {
            trace,
            r_grid,
            mode,
            deterministic,
        } => {
            let t = match load(&trace) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match bench(&t, mode.unwrap_or(t.mode), &r_grid, deterministic) {
                Ok(csv) => {
                    print!("{csv}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
