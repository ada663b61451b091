//! The `pi` command line: compute, verify, catalog, bench.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

mod bench;
mod compute;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};

pub use bench::{bench, BenchRow};
pub use compute::{compute_pi, format_plain, pi_digits, Computed};
pub use verify::{run_checks, CheckResult, VERIFY_MIN_DIGITS};

/// Largest `--digits` accepted.
pub const DIGIT_CAP: u32 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandKind {
    Compute,
    Verify,
    Catalog,
    Bench,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub method: Option<String>,
    pub digits: u32,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    /// Replacement singular-value table for `verify`.
    pub table: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "pi", version, about = "Ramanujan-type series for 1/pi")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print pi to the requested number of decimal places.
    Compute {
        #[arg(long)]
        method: String,
        #[arg(long)]
        digits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Run the identity, table and series checks.
    Verify {
        #[arg(long, default_value_t = 100)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Singular-value table to check instead of the built-in one.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// List the built-in series.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Compare methods at a digit target.
    Bench {
        #[arg(long)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

impl From<Command> for RunConfig {
    fn from(c: Command) -> Self {
        let base = |command| RunConfig {
            command,
            method: None,
            digits: 100,
            output_path: None,
            format: Format::Plain,
            table: None,
        };
        match c {
            Command::Compute {
                method,
                digits,
                out,
                format,
            } => RunConfig {
                method: Some(method),
                digits,
                output_path: out,
                format,
                ..base(CommandKind::Compute)
            },
            Command::Verify {
                digits,
                format,
                table,
            } => RunConfig {
                digits,
                format,
                table,
                ..base(CommandKind::Verify)
            },
            Command::Catalog { format } => RunConfig {
                format,
                ..base(CommandKind::Catalog)
            },
            Command::Bench { digits, format } => RunConfig {
                digits,
                format,
                ..base(CommandKind::Bench)
            },
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) | Error::Consistency(_) | Error::Evaluation(_) => 1,
        Error::Domain(_) | Error::Parse(_) | Error::Unsupported(_) => 2,
    }
}

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 || digits > DIGIT_CAP {
        return Err(Error::Domain(format!(
            "digits must be in 1..={DIGIT_CAP}, got {digits}"
        )));
    }
    Ok(())
}

/// Runs one command, writing its report to `out`. Errors are left to the
/// caller so it can pick the exit code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Domain(format!("write failed: {e}"));
    match cfg.command {
        CommandKind::Compute => {
            check_digits(cfg.digits)?;
            let method = cfg
                .method
                .as_deref()
                .ok_or_else(|| Error::Domain("missing --method".into()))?;
            let c = compute_pi(method, cfg.digits)?;
            let text = match cfg.format {
                Format::Plain => format_plain(&c.fraction),
                Format::Json => {
                    let v = json!({
                        "method": c.method,
                        "digits": cfg.digits,
                        "terms": c.terms,
                        "seconds": c.seconds,
                        "value": format!("3.{}", c.fraction),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
            };
            match &cfg.output_path {
                Some(p) => {
                    std::fs::write(p, text).map_err(|e| Error::Domain(format!("{}: {e}", p.display())))?
                }
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(())
        }
        CommandKind::Verify => {
            if cfg.digits < VERIFY_MIN_DIGITS {
                return Err(Error::Domain(format!(
                    "precision too low for table suite (need at least {VERIFY_MIN_DIGITS} digits)"
                )));
            }
            check_digits(cfg.digits)?;
            let checks = run_checks(cfg.digits, cfg.table.as_deref())?;
            let failed: Vec<&str> = checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            match cfg.format {
                Format::Plain => {
                    for c in &checks {
                        writeln!(out, "{}", c.line()).map_err(io)?;
                    }
                    writeln!(out, "{} checks, {} failed", checks.len(), failed.len()).map_err(io)?;
                }
                Format::Json => {
                    let v = json!({
                        "digits": cfg.digits,
                        "passed": failed.is_empty(),
                        "checks": checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Error::Verification(format!("failed: {}", failed.join(", "))))
            }
        }
        CommandKind::Catalog => {
            let specs = crate::series::catalog();
            match cfg.format {
                Format::Plain => {
                    writeln!(out, "{:<12} {:<24} {:>6}  A / B", "key", "family", "d/term").map_err(io)?;
                    for s in &specs {
                        let dpt = crate::series::digits_per_term(s)
                            .map(|d| format!("{d:.3}"))
                            .unwrap_or_else(|_| "-".into());
                        writeln!(
                            out,
                            "{:<12} {:<24} {:>6}  {} / {}  [{}]",
                            s.key,
                            s.family.to_string(),
                            dpt,
                            s.a,
                            s.b,
                            s.provenance
                        )
                        .map_err(io)?;
                    }
                }
                Format::Json => {
                    let list: Vec<_> = specs
                        .iter()
                        .map(|s| {
                            let mut v = s.to_json();
                            v["digits_per_term"] = match crate::series::digits_per_term(s) {
                                Ok(d) => json!(d),
                                Err(_) => serde_json::Value::Null,
                            };
                            v
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&list).expect("json")).map_err(io)?;
                }
            }
            Ok(())
        }
        CommandKind::Bench => {
            check_digits(cfg.digits)?;
            let rows = bench(cfg.digits, bench::ELEMENTARY_BUDGET)?;
            match cfg.format {
                Format::Plain => {
                    writeln!(
                        out,
                        "{:<12} {:>10} {:>10} {:>10} {:>10}",
                        "method", "terms", "digits", "d/term", "seconds"
                    )
                    .map_err(io)?;
                    for r in &rows {
                        writeln!(out, "{}", r.line()).map_err(io)?;
                    }
                }
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(BenchRow::to_json).collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
                }
            }
            Ok(())
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = RunConfig::from(cli.command);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cfg, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("pi: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: CommandKind) -> RunConfig {
        RunConfig {
            command,
            method: None,
            digits: 50,
            output_path: None,
            format: Format::Plain,
            table: None,
        }
    }

    #[test]
    fn parse_compute() {
        let cli = Cli::try_parse_from(["pi", "compute", "--method", "agm", "--digits", "20"]).unwrap();
        let c = RunConfig::from(cli.command);
        assert_eq!(c.command, CommandKind::Compute);
        assert_eq!(c.method.as_deref(), Some("agm"));
        assert_eq!(c.digits, 20);
    }

    #[test]
    fn verify_defaults_to_100() {
        let cli = Cli::try_parse_from(["pi", "verify"]).unwrap();
        assert_eq!(RunConfig::from(cli.command).digits, 100);
    }

    #[test]
    fn over_cap() {
        let mut c = cfg(CommandKind::Compute);
        c.method = Some("agm".into());
        c.digits = DIGIT_CAP + 1;
        let e = run(&c, &mut Vec::new()).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn low_precision_verify() {
        let mut c = cfg(CommandKind::Verify);
        c.digits = 16;
        let e = run(&c, &mut Vec::new()).unwrap_err();
        assert!(e.to_string().contains("precision too low for table suite"));
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn catalog_json() {
        let mut c = cfg(CommandKind::Catalog);
        c.format = Format::Json;
        let mut buf = Vec::new();
        run(&c, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let list = v.as_array().unwrap();
        assert_eq!(list.len(), 10);
        let r58 = list.iter().find(|e| e["key"] == "ramanujan58").unwrap();
        assert_eq!(r58["A"], "1103");
        assert_eq!(r58["B"], "26390");
    }

    #[test]
    fn compute_plain() {
        let mut c = cfg(CommandKind::Compute);
        c.method = Some("ramanujan58".into());
        let mut buf = Vec::new();
        run(&c, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "3.14159265358979323846264338327950288419716939937510\n");
    }
}
