use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use depthlab::dsl::{self, EvalConfig, Report};
use depthlab::selftest;

#[derive(Parser)]
#[command(name = "depthlab", version, about = "Run depth and Tor/Ext scenarios over graded rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a `.dl` scenario file.
    Run {
        file: PathBuf,
        /// Also write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        res_bound: usize,
        /// Vanishing bound for checks [default: 2 dim + 2]
        #[arg(long)]
        tor_bound: Option<usize>,
        #[arg(long)]
        verify_exactness: bool,
        #[arg(long, default_value_t = 15)]
        max_vars: usize,
    },
    /// List the bundled scenarios, copy them out, or run them all.
    Examples {
        #[arg(long, value_name = "DIR")]
        copy: Option<PathBuf>,
        #[arg(long)]
        run: bool,
    },
    /// Run the randomized engine invariant suites.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            json,
            res_bound,
            tor_bound,
            verify_exactness,
            max_vars,
        } => {
            let config = EvalConfig {
                res_bound,
                tor_bound,
                verify_exactness,
                max_vars,
            };
            run(&file, json.as_ref(), &config)
        }
        Command::Examples { copy, run } => examples(copy, run),
        Command::Selftest { seed } => {
            let mut ok = true;
            for r in selftest::run_all(seed) {
                let status = if r.passed() { "pass" } else { "FAIL" };
                println!("{status}  {} ({} cases)", r.name, r.cases);
                for f in &r.failures {
                    println!("      {f}");
                }
                ok &= r.passed();
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(file: &PathBuf, json: Option<&PathBuf>, config: &EvalConfig) -> ExitCode {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("depthlab: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let report = match evaluate(&src, &file.display().to_string(), config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return ExitCode::from(2);
        }
    };
    match json {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            print!("{}", report.to_text());
            if let Err(e) = std::fs::write(p, report.to_json() + "\n") {
                eprintln!("depthlab: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn evaluate(src: &str, path: &str, config: &EvalConfig) -> Result<Report, dsl::ParseError> {
    let s = dsl::parse_scenario(src)?;
    Ok(dsl::eval_scenario(&s, path, config))
}

fn examples(copy: Option<PathBuf>, run: bool) -> ExitCode {
    if let Some(dir) = &copy {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("depthlab: cannot create {}: {e}", dir.display());
            return ExitCode::from(2);
        }
        for (name, src) in dsl::BUNDLE {
            if let Err(e) = std::fs::write(dir.join(name), src) {
                eprintln!("depthlab: cannot write {name}: {e}");
                return ExitCode::from(2);
            }
        }
        println!("copied {} scenarios to {}", dsl::BUNDLE.len(), dir.display());
    }
    if !run {
        if copy.is_none() {
            for (name, src) in dsl::BUNDLE {
                let blurb = src.lines().next().unwrap_or("").trim_start_matches('#').trim();
                println!("{name:<26} {blurb}");
            }
        }
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for (name, src) in dsl::BUNDLE {
        match evaluate(src, name, &EvalConfig::default()) {
            Ok(r) => {
                let passed = r.results.iter().filter(|x| x.status == dsl::Status::Pass).count();
                println!(
                    "{:<4}  {name:<26} {passed}/{} in {:.0} ms",
                    r.overall.as_str(),
                    r.results.len(),
                    r.timing_ms.total
                );
                if r.exit_code() != 0 {
                    failed += 1;
                    print!("{}", r.to_text());
                }
            }
            Err(e) => {
                println!("error {name}:{e}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
