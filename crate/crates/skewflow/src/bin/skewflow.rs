//! Thin CLI over the skewflow library.
//!
//! ```text
//! skewflow run <config>            run one experiment, write its artifacts
//! skewflow sweep <config>          run a horizon sweep, fit the gap slope
//! skewflow verify                  run the built-in verification matrix
//! skewflow plot <csv> [--out f]    render the two-panel SVG for a run CSV
//! ```
//!
//! `<config>` is a JSON file path or the name of a bundled preset
//! (`fig_quad1`, `sweep_backward`, ...). `SKEWFLOW_OUT_DIR` redirects
//! relative output paths.

use std::path::PathBuf;
use std::process::ExitCode;

use skewflow::harness::{
    self, exit_code, load_config, resolve_config_path, run_experiment, run_sweep,
    verify::{run_verification_matrix, VerifyOptions},
};

const USAGE: &str = "usage: skewflow <run|sweep|verify|plot> ...\n\
  skewflow run <config>\n\
  skewflow sweep <config>\n\
  skewflow verify\n\
  skewflow plot <csv> [--out <file.svg>]";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match args.first().map(String::as_str) {
        Some("run") => cmd_run(&args[1..]),
        Some("sweep") => cmd_sweep(&args[1..]),
        Some("verify") => cmd_verify(&args[1..]),
        Some("plot") => cmd_plot(&args[1..]),
        _ => {
            eprintln!("{USAGE}");
            2
        }
    };
    ExitCode::from(code as u8)
}

fn single_config_arg(args: &[String]) -> Result<PathBuf, i32> {
    match args {
        [arg] => resolve_config_path(arg).map_err(|e| {
            eprintln!("error: {e}");
            exit_code(&e)
        }),
        _ => {
            eprintln!("{USAGE}");
            Err(2)
        }
    }
}

fn cmd_run(args: &[String]) -> i32 {
    let path = match single_config_arg(args) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let config = match load_config(&path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match run_experiment(&config) {
        Ok(out) => {
            println!("{}", out.summary_line());
            if out.eta_note.contains("K^") {
                println!("{}", out.eta_note);
            }
            for path in &out.written {
                println!("wrote {}", path.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_sweep(args: &[String]) -> i32 {
    let path = match single_config_arg(args) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let config = match load_config(&path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match run_sweep(&config) {
        Ok(out) => {
            for p in &out.points {
                println!(
                    "K={:<6} eta={:<12.6e} dg={:<14.6e} R_K={:.6e}",
                    p.k, p.eta, p.dg, p.total_regret
                );
            }
            println!("{}", out.summary_line());
            for path in &out.written {
                println!("wrote {}", path.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_verify(args: &[String]) -> i32 {
    if !args.is_empty() {
        eprintln!("{USAGE}");
        return 2;
    }
    // negative-control hook for tests: corrupt one alternating step so the
    // drift identity must fail
    let options = VerifyOptions {
        corrupt_alternating_step: std::env::var_os("SKEWFLOW_VERIFY_CORRUPT").is_some(),
    };
    match run_verification_matrix(&options) {
        Ok(outcome) => {
            print!("{}", outcome.table());
            if outcome.all_passed {
                0
            } else {
                eprintln!("failing checks: {}", outcome.failing_names().join(", "));
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_plot(args: &[String]) -> i32 {
    let (csv, out) = match args {
        [csv] => (PathBuf::from(csv), PathBuf::from(csv).with_extension("svg")),
        [csv, flag, out] if flag == "--out" => (PathBuf::from(csv), PathBuf::from(out)),
        _ => {
            eprintln!("{USAGE}");
            return 2;
        }
    };
    match harness::svg::emit_svg(&csv, &out) {
        Ok(()) => {
            println!("wrote {}", out.display());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
