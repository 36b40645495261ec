//! Command-line front end for `superell-core`.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand};

use superell_core::cocycle::{self, DerivationBasisElement as B};
use superell_core::current;
use superell_core::expr::{parse_element, parse_param_poly};
use superell_core::output::{Format, OutputDocument};
use superell_core::palindromic::{self, ReportOptions};
use superell_core::verify::{self, Suite, VerifyOptions};
use superell_core::{Center, Curve};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "superell", version, about = "Exact normal forms and cocycles for u^2 = P(x)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce an algebra element to its class in A/∂A.
    #[command(allow_negative_numbers = true)]
    Reduce {
        #[command(flatten)]
        curve: CurveArg,
        /// e.g. "x^2*u - 3/2*x^-1"
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// One cocycle value ψ(X, Y).
    #[command(allow_negative_numbers = true)]
    Psi {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
        /// ef = ψ(e_r, f_s), ee = ψ(e_r, e_s), ff = ψ(f_r, f_s)
        #[arg(long, default_value = "ef", value_parser = ["ef", "ee", "ff"])]
        kind: String,
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// ψ(e_r, f_s) over a grid of (r, s).
    #[command(name = "psi-table", allow_negative_numbers = true)]
    PsiTable {
        #[arg(long)]
        rmax: i64,
        #[arg(long)]
        smax: i64,
        #[arg(long, default_value_t = 1)]
        rmin: i64,
        /// Defaults to -smax.
        #[arg(long)]
        smin: Option<i64>,
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run a named verification suite.
    Verify {
        /// legendre, antiderivative, genfun, quartic, cocycle-axioms, snf or all
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        /// Series order for genfun.
        #[arg(long, default_value_t = 64)]
        order: usize,
        /// Emit the reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate P^(l,j)_k(c; m, r), optionally with a recurrence residual.
    #[command(allow_negative_numbers = true)]
    Snf {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        r: i64,
        /// Also print the recurrence residual under this index hypothesis.
        #[arg(long)]
        hypothesis: Option<String>,
        /// List every hypothesis and its outcome on the standard sweep.
        #[arg(long)]
        sweep: bool,
    },
    /// Structured reports.
    Report {
        #[command(subcommand)]
        report: ReportCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ReportCommand {
    /// Symmetry diagnostics for x^n - 2a x^(n/2) + 1, as JSON.
    Palindromic {
        #[arg(long)]
        degree: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 40)]
        radius: i64,
        #[arg(long, default_value_t = 40)]
        chain: usize,
    },
}

#[derive(Args, Debug)]
struct CurveArg {
    /// quadratic, quartic, or `coeffs <p0,p1,...,pn>` (low to high, polynomials in a)
    #[arg(long, num_args = 1..=2, default_values = ["quadratic"])]
    curve: Vec<String>,
}

#[derive(Args, Debug)]
struct FormatArg {
    /// markdown, csv or json
    #[arg(long, default_value = "markdown")]
    format: String,
}

/// A usage or input error, reported with exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

impl CurveArg {
    fn center(&self) -> Result<Center, Usage> {
        let curve = match self.curve.as_slice() {
            [name] if name == "quadratic" => Curve::quadratic(),
            [name] if name == "quartic" => Curve::quartic(),
            [kw, list] if kw == "coeffs" => {
                let coeffs = list
                    .split(',')
                    .map(|c| parse_param_poly(c.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                Curve::new(coeffs)?
            }
            other => {
                return Err(Usage(format!(
                    "--curve expects quadratic, quartic or `coeffs <list>`, got {other:?}"
                )))
            }
        };
        Ok(Center::new(curve)?)
    }
}

impl FormatArg {
    fn get(&self) -> Result<Format, Usage> {
        Ok(self.format.parse()?)
    }
}

/// Run with process-style arguments (`argv[0]` is the program name).
pub fn run_command<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Usage> {
    match cmd {
        Command::Reduce { curve, expr, format } => {
            let center = curve.center()?;
            let fmt = format.get()?;
            let el = parse_element(&expr, center.curve())?;
            let mut doc = OutputDocument::new(format!("[{expr}] on {}", center.curve().describe()), center.dimension());
            doc.push(expr, center.reduce(&el));
            write!(out, "{}", doc.render(fmt))?;
        }
        Command::Psi { r, s, kind, curve, format } => {
            let center = curve.center()?;
            let fmt = format.get()?;
            let (x, y) = match kind.as_str() {
                "ee" => (B::e(r), B::e(s)),
                "ff" => (B::f(r), B::f(s)),
                _ => (B::e(r), B::f(s)),
            };
            let mut doc = OutputDocument::new(format!("psi on {}", center.curve().describe()), center.dimension());
            doc.push(format!("psi({x}, {y})"), cocycle::psi_basis(&center, x, y));
            write!(out, "{}", doc.render(fmt))?;
        }
        Command::PsiTable { rmax, smax, rmin, smin, curve, format } => {
            let center = curve.center()?;
            let fmt = format.get()?;
            let smin = smin.unwrap_or(-smax);
            if rmin > rmax || smin > smax {
                return Err(Usage(format!("empty grid r in {rmin}..={rmax}, s in {smin}..={smax}")));
            }
            let xs: Vec<B> = (rmin..=rmax).map(B::e).collect();
            let ys: Vec<B> = (smin..=smax).map(B::f).collect();
            let mut doc = OutputDocument::new(
                format!("psi(e_r, f_s) on {}", center.curve().describe()),
                center.dimension(),
            );
            for (x, y, class) in cocycle::psi_table(&center, &xs, &ys) {
                doc.push(format!("psi({x}, {y})"), class);
            }
            write!(out, "{}", doc.render(fmt))?;
        }
        Command::Verify { suite, max_n, order, json } => {
            let suite: Suite = suite.parse().map_err(Usage)?;
            let reports = verify::run(suite, VerifyOptions { max_n, order });
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
            } else {
                for rep in &reports {
                    writeln!(out, "{rep}")?;
                }
            }
            return Ok(if reports.iter().all(|r| r.passed()) {
                EXIT_OK
            } else {
                EXIT_FAILED
            });
        }
        Command::Snf { l, j, k, m, r, hypothesis, sweep } => {
            if r < 1 {
                return Err(Usage(format!("r must be positive, got {r}")));
            }
            let poly = if l == 0 {
                current::snf_sector0(j, k).poly
            } else {
                current::snf_general(l, j, k, m, r)?.poly
            };
            writeln!(out, "P^({l},{j})_{k}(c; {m}, {r}) = {}", poly.display_with("c"))?;
            if let Some(h) = hypothesis {
                let res = current::snf_recurrence_residual(l, j, k, m, r, &h)?;
                writeln!(out, "recurrence residual under {h}: {}", res.display_with("c"))?;
            }
            if sweep {
                for o in current::hypothesis_sweep(&current::documented_sweep()) {
                    writeln!(out, "{:<22} {}/{} tuples nonzero", o.hypothesis, o.nonzero, o.tuples)?;
                }
            }
        }
        Command::Report { report: ReportCommand::Palindromic { degree, output, radius, chain } } => {
            if degree == 0 || degree % 2 == 1 {
                return Err(Usage(format!("--degree must be a positive even integer, got {degree}")));
            }
            let curve = Curve::symmetric_trinomial(degree);
            let rep = palindromic::symmetry_report_with(
                &curve,
                ReportOptions {
                    exponent_radius: radius,
                    chain_length: chain,
                },
            )?;
            let json = rep.to_json();
            match output {
                Some(path) => {
                    std::fs::write(&path, json + "\n")?;
                    writeln!(out, "wrote {}", path.display())?;
                }
                None => writeln!(out, "{json}")?,
            }
        }
    }
    Ok(EXIT_OK)
}
