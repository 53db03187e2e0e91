//! `polyineq`: command-line front-end for the polyineq library.
//!
//! Reports go to stdout as JSON (or CSV for sweeps). Errors go to stderr with
//! exit code 2 for usage problems and 3 for numeric or class failures.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use polyineq::extremal::{bernstein_scan, markov_chain_check, SearchOptions};
use polyineq::json::{format_g17, parse_poly, root_form_to_value, to_json, to_json_string, PolyInput};
use polyineq::lorentz::lorentz_degree_with;
use polyineq::norm::{weighted_sup_norm_with_grid, DEFAULT_WEIGHTED_GRID};
use polyineq::roots::DEFAULT_DISK_TOL;
use polyineq::selftest::{run_all, SuiteOptions};
use polyineq::weight::parse_weight;
use polyineq::{
    extremal::extremal_search_with, find_roots, find_weight_maximizer, halasz_polynomial, halasz_report,
    markov_bound, reproduce_nonconvex, schur_constant, schur_constant_power, sup_norm,
    verify_schur_with_grid, zero_free_in_disk, Error, Polynomial,
};

const DEFAULT_SCAN_GRID: usize = 1 << 14;

#[derive(Parser, Debug)]
#[command(
    name = "polyineq",
    version,
    about = "Schur, Bernstein and Markov type inequalities for polynomials without zeros in the unit disk"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Grid size for weighted norms, the extremal objective and scans.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Tolerance: disk slack for `roots`, coefficient sign tolerance for `lorentz-degree`.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV output, for sweeps.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sup-norm on [-1, 1], optionally also the weighted norm.
    Norm {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Roots, in a form accepted back by --poly.
    Roots {
        #[arg(long)]
        poly: String,
    },
    /// Smallest degree of a nonnegative Lorentz representation.
    LorentzDegree {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 10_000)]
        max_degree: usize,
    },
    /// Checks ||p|| <= C ||p phi|| for a polynomial without zeros in the disk.
    Schur {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        weight: String,
    },
    /// The constant 2^n / ((1+a)^n phi(a)).
    SchurConstant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: String,
    },
    /// Multistart search for the largest ratio ||p|| / ||p phi||.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 64)]
        trials: usize,
    },
    /// The Halász polynomial at one or more n (comma separated).
    Halasz {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Markov bound from the logarithmic weight, for n values or a polynomial.
    Markov {
        #[arg(
            long,
            value_delimiter = ',',
            required_unless_present = "poly",
            conflicts_with = "poly"
        )]
        n: Vec<usize>,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Empirical constant in |p'(x)| <= C n log(e/(1-x^2)) ||p||.
    BernsteinScan {
        #[arg(long, required_unless_present = "halasz", conflicts_with = "halasz")]
        poly: Option<String>,
        /// Scan the Halász polynomial of this n instead.
        #[arg(long)]
        halasz: Option<usize>,
    },
    /// The midpoint of two admissible cubics that leaves the class.
    ReproduceNonconvex {
        #[arg(long)]
        a: f64,
    },
    /// Runs the acceptance checks.
    Selftest {
        /// Small degrees and sample sizes only.
        #[arg(long)]
        quick: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Inline JSON, `@path` for a file, or `-` for stdin.
fn read_poly(arg: &str) -> Result<PolyInput, Failure> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        buf
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?
    } else {
        arg.to_string()
    };
    Ok(parse_poly(&text)?)
}

fn poly_arg(arg: &str) -> Result<Polynomial, Failure> {
    Ok(read_poly(arg)?.polynomial())
}

fn json_out(value: &impl serde::Serialize) -> Result<String, Failure> {
    Ok(to_json(value)? + "\n")
}

fn csv_rows(header: &str, rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = format!("{header}\n");
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(format_g17).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// A single report as an object, several as an array.
fn one_or_many<T: serde::Serialize>(items: &[T]) -> Result<String, Failure> {
    match items {
        [one] => json_out(one),
        many => json_out(&many),
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let g = &cli.global;
    let csv_allowed = matches!(
        cli.command,
        Command::Halasz { .. } | Command::Markov { poly: None, .. }
    );
    if g.csv && !csv_allowed {
        return Err(usage("--csv is only available for halasz and markov --n sweeps"));
    }
    if g.grid == Some(0) {
        return Err(usage("--grid must be positive"));
    }
    if let Some(tol) = g.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(usage("--tol must be a nonnegative number"));
        }
    }
    let grid = g.grid.unwrap_or(DEFAULT_WEIGHTED_GRID);

    let out = match &cli.command {
        Command::Norm { poly, weight } => {
            let p = poly_arg(poly)?;
            let mut report = json!({ "degree": p.degree(), "norm": sup_norm(&p, -1.0, 1.0)? });
            if let Some(spec) = weight {
                let w = parse_weight(spec)?;
                report["weight"] = json!(w.to_string());
                report["weighted_norm"] = json!(weighted_sup_norm_with_grid(&p, &w, grid));
            }
            json_out(&report)?
        }
        Command::Roots { poly } => {
            let p = poly_arg(poly)?;
            let form = find_roots(&p)?;
            let (zero_free, min_modulus) = zero_free_in_disk(&p, g.tol.unwrap_or(DEFAULT_DISK_TOL))?;
            let mut report = root_form_to_value(&form);
            report["degree"] = json!(p.degree());
            report["zero_free"] = json!(zero_free);
            report["min_modulus"] = json!(min_modulus);
            to_json_string(&report) + "\n"
        }
        Command::LorentzDegree { poly, max_degree } => {
            let p = poly_arg(poly)?;
            let tol = g.tol.unwrap_or(polyineq::lorentz::DEFAULT_SIGN_TOL);
            json_out(&lorentz_degree_with(&p, tol, *max_degree)?)?
        }
        Command::Schur { poly, weight } => {
            let p = poly_arg(poly)?;
            json_out(&verify_schur_with_grid(&p, &parse_weight(weight)?, grid)?)?
        }
        Command::SchurConstant { n, weight } => {
            let w = parse_weight(weight)?;
            let mut report = json!({
                "n": n,
                "weight": w.to_string(),
                "a": find_weight_maximizer(&w, *n),
                "constant": schur_constant(&w, *n)?,
            });
            if let Some(alpha) = w.power_alpha() {
                report["closed_form"] = json!(schur_constant_power(*n, alpha));
            }
            json_out(&report)?
        }
        Command::Extremal { n, weight, trials } => {
            let opts = SearchOptions {
                grid,
                ..SearchOptions::default()
            };
            json_out(&extremal_search_with(
                *n,
                &parse_weight(weight)?,
                *trials,
                g.seed,
                &opts,
            )?)?
        }
        Command::Halasz { n } => {
            let reports = n
                .iter()
                .map(|&n| halasz_report(n))
                .collect::<Result<Vec<_>, _>>()?;
            if g.csv {
                csv_rows(
                    "n,circle_norm,P_at_minus1,dP_at_minus1,ratio_nlogn",
                    reports.iter().map(|r| {
                        vec![
                            r.n as f64,
                            r.circle_norm,
                            r.value_at_minus1,
                            r.deriv_at_minus1,
                            r.ratio_nlogn,
                        ]
                    }),
                )
            } else {
                one_or_many(&reports)?
            }
        }
        Command::Markov { n, poly } => match poly {
            Some(poly) => json_out(&markov_chain_check(&poly_arg(poly)?)?)?,
            None => {
                let bounds = n
                    .iter()
                    .map(|&n| markov_bound(n))
                    .collect::<Result<Vec<_>, _>>()?;
                if g.csv {
                    csv_rows(
                        "n,x0,x0_bound,sharp_bound,x0_bound_over_log_n",
                        bounds.iter().map(|b| {
                            vec![b.n as f64, b.x0, b.x0_bound, b.sharp_bound, b.x0_bound_over_log_n]
                        }),
                    )
                } else {
                    one_or_many(&bounds)?
                }
            }
        },
        Command::BernsteinScan { poly, halasz } => {
            let scan_grid = g.grid.unwrap_or(DEFAULT_SCAN_GRID);
            let scan = match (poly, halasz) {
                (Some(poly), _) => match read_poly(poly)? {
                    PolyInput::Coeffs(p) => bernstein_scan(&p, scan_grid)?,
                    PolyInput::Roots(form) => bernstein_scan(&form, scan_grid)?,
                },
                (None, Some(n)) => bernstein_scan(&halasz_polynomial(*n)?, scan_grid)?,
                (None, None) => return Err(usage("bernstein-scan needs --poly or --halasz")),
            };
            json_out(&scan)?
        }
        Command::ReproduceNonconvex { a } => json_out(&reproduce_nonconvex(*a)?)?,
        Command::Selftest { quick } => {
            let outcomes = run_all(&SuiteOptions {
                seed: g.seed,
                quick: *quick,
            });
            let mut out = String::new();
            for outcome in &outcomes {
                out.push_str(&format!("{outcome}\n"));
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            out.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
            let code = if passed == outcomes.len() { 0 } else { 3 };
            return Ok((out, code));
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(Failure::from(Error::InvalidArgument("x".into())).code, 2);
        assert_eq!(Failure::from(Error::NotInLorentzClass { x: 0.0 }).code, 3);
        assert_eq!(Failure::from(Error::DegenerateWeight("w".into())).code, 3);
    }

    #[test]
    fn csv_uses_full_precision() {
        let text = csv_rows("a,b", std::iter::once(vec![5.0, 0.1]));
        assert_eq!(text, "a,b\n5,0.10000000000000001\n");
    }
}
