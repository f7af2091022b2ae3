//! `formalflow` — exact truncated power-series solutions of polynomial
//! derivations through primes, with differential-simplicity certificates.
//!
//! One invocation processes one problem file and emits one JSON report on
//! standard output.  Reports are byte-deterministic for identical inputs:
//! keys are sorted, rationals are rendered as strings, and timing is
//! omitted unless requested.  Exit codes: 0 success, 1 malformed input,
//! 2 exhausted work cap, 3 internal cross-check mismatch.

mod expr;
mod problem;
mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use formalflow::algebra::rational_from_i64;
use formalflow::{
    is_trivial, kernel_approx, simplicity_report, solve_exponential, solve_ode, verify_solution,
    Derivation, Error, FieldElement, Ideal, MultiPoly, PrimeSpec, SimplicityVerdict,
};

use crate::expr::parse_poly;
use crate::problem::{parse_problem, parse_solution, ProblemFile};

#[derive(Parser)]
#[command(
    name = "formalflow",
    version,
    about = "Exact power-series solutions of polynomial derivations through primes,\nwith differential-simplicity certificates",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

/// Flags shared by every command.
#[derive(Args)]
struct Common {
    /// Problem file with vars/ideal/D/prime lines
    #[arg(long)]
    input: PathBuf,
    /// Emit the report as JSON (the default and only output mode)
    #[arg(long)]
    json: bool,
    /// Include wall-clock timing in the report (off by default so identical
    /// inputs produce identical bytes)
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Formal exponential e^{tD} evaluated in the residue field
    Exp,
    /// Coefficient recurrence from the defining differential equation
    Ode,
    /// Run both routes and require exact agreement
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve through the prime; reports one coefficient list per variable
    Solve {
        #[command(flatten)]
        common: Common,
        /// Truncation order r (coefficients c_0..c_r)
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Solution method
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Bounded search for polynomials of the prime that the solution kills
    Kernel {
        #[command(flatten)]
        common: Common,
        /// Total-degree bound for candidate polynomials
        #[arg(long, default_value_t = 3)]
        deg: u32,
        /// Series order for the constraints (default 2*(deg*maxdeg(D)+1))
        #[arg(long)]
        order: Option<usize>,
    },
    /// Simplicity verdict with a machine-checkable certificate
    Simplicity {
        #[command(flatten)]
        common: Common,
        /// Total-degree bound for the kernel search
        #[arg(long, default_value_t = 3)]
        deg: u32,
        /// Series order for the constraints (default 2*(deg*maxdeg(D)+1))
        #[arg(long)]
        order: Option<usize>,
        /// Also run the heuristic uniform-power diagnostics on the prime
        #[arg(long)]
        ln: bool,
        /// Search bound for the uniform-power exponent
        #[arg(long, default_value_t = 20)]
        bound: u32,
        /// Probe products of up to this many prime generators
        #[arg(long = "probe-deg", default_value_t = 2)]
        probe_deg: u32,
    },
    /// Check D-stability of the ideal and of the prime
    Stable {
        #[command(flatten)]
        common: Common,
    },
    /// Probe local nilpotency of D on the ring variables up to a bound
    Nilpotent {
        #[command(flatten)]
        common: Common,
        /// Largest power of D to try
        #[arg(long, default_value_t = 20)]
        bound: u32,
    },
    /// Expand e^{tD} applied to one polynomial
    Exp {
        #[command(flatten)]
        common: Common,
        /// Polynomial to expand, in the expression grammar
        #[arg(long)]
        elem: String,
        /// Truncation order
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Check a manually supplied solution file against the derivation
    Verify {
        #[command(flatten)]
        common: Common,
        /// Solution file with order plus one coefficient list per variable
        #[arg(long)]
        solution: PathBuf,
    },
}

/// Why a run failed: an engine error (exit 1 or 2) or a cross-check
/// mismatch that uniqueness says is unreachable (exit 3).
enum Failure {
    Engine(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn message(&self) -> String {
        match self {
            Failure::Engine(e) => e.to_string(),
            Failure::Mismatch(m) => m.clone(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Failure::Engine(e) => report::exit_code(e),
            Failure::Mismatch(_) => 3,
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read '{}': {e}", path.display())))
}

fn elapsed(timing: bool, start: Instant) -> Option<u128> {
    timing.then(|| start.elapsed().as_millis())
}

/// Default constraint order for the kernel search: enough t-coefficients to
/// see degree-`deg` combinations of coefficient polynomials twice over.  The
/// degree factor is clamped at 1 so constant-coefficient derivations still
/// get an order past the candidate degree.
fn default_order(deg: u32, d: &Derivation) -> usize {
    2 * (deg as usize * (d.max_coeff_degree() as usize).max(1) + 1)
}

/// Coefficient lists per variable, rendered as strings.
fn coordinates_json(problem: &ProblemFile, solution: &formalflow::Solution) -> Value {
    let mut map = Map::new();
    for (i, series) in solution.coords().iter().enumerate() {
        map.insert(
            problem.ring.var_name(i).to_string(),
            report::strings(series.coeffs()),
        );
    }
    Value::Object(map)
}

fn kernel_json(k: &formalflow::KernelApprox, ring: &std::sync::Arc<formalflow::PolyRing>) -> Value {
    let one = FieldElement::Rat(rational_from_i64(1, 1));
    let columns: Vec<String> = k
        .columns()
        .iter()
        .map(|m| MultiPoly::from_term(ring.clone(), m.clone(), one.clone()).to_string())
        .collect();
    json!({
        "basis": report::strings(k.basis()),
        "columns": columns,
        "degree": k.degree(),
        "order": k.order(),
        "space_dimension": k.space_dimension(),
    })
}

fn run(cmd: Cmd, start: Instant) -> Result<String, Failure> {
    match cmd {
        Cmd::Solve {
            common,
            order,
            method,
        } => {
            let Common {
                input,
                json: _,
                timing,
            } = common;
            let text = read_file(&input)?;
            let dig = report::digest(text.as_bytes());
            let problem = parse_problem(&text)?;
            let d = problem.derivation()?;
            let mut warnings = Vec::new();
            let (solution, method_name) = match method {
                MethodArg::Exp => (solve_exponential(&d, &problem.prime, order)?, "exponential"),
                MethodArg::Ode => (solve_ode(&d, &problem.prime, order)?, "ode"),
                MethodArg::Both => {
                    let exp = solve_exponential(&d, &problem.prime, order)?;
                    if matches!(problem.prime, PrimeSpec::Point(_)) {
                        let ode = solve_ode(&d, &problem.prime, order)?;
                        if exp.coords() != ode.coords() {
                            return Err(Failure::Mismatch(
                                "method mismatch: the exponential and recurrence routes disagree"
                                    .to_string(),
                            ));
                        }
                        (exp, "both")
                    } else {
                        warnings.push(
                            "the coefficient recurrence needs a rational point; cross-check skipped, exponential route only"
                                .to_string(),
                        );
                        (exp, "exponential")
                    }
                }
            };
            let payload = json!({
                "coordinates": coordinates_json(&problem, &solution),
                "method": method_name,
                "order": order,
                "prime": problem.prime.render(&problem.ring),
                "trivial": is_trivial(&d, &problem.prime)?,
            });
            Ok(report::envelope(
                "solve",
                &dig,
                payload,
                elapsed(timing, start),
                &warnings,
            ))
        }

        Cmd::Kernel { common, deg, order } => {
            let Common {
                input,
                json: _,
                timing,
            } = common;
            let text = read_file(&input)?;
            let dig = report::digest(text.as_bytes());
            let problem = parse_problem(&text)?;
            let d = problem.derivation()?;
            let order = order.unwrap_or_else(|| default_order(deg, &d));
            let k = kernel_approx(&d, &problem.prime, deg, order)?;
            let payload = kernel_json(&k, &problem.ring);
            Ok(report::envelope(
                "kernel",
                &dig,
                payload,
                elapsed(timing, start),
                &[],
            ))
        }

        Cmd::Simplicity {
            common,
            deg,
            order,
            ln,
            bound,
            probe_deg,
        } => {
            let Common {
                input,
                json: _,
                timing,
            } = common;
            let text = read_file(&input)?;
            let dig = report::digest(text.as_bytes());
            let problem = parse_problem(&text)?;
            let d = problem.derivation()?;
            let order = order.unwrap_or_else(|| default_order(deg, &d));
            let rep = simplicity_report(&d, &problem.prime, deg, order)?;
            let mut warnings = rep.warnings.clone();

            let verdict = match &rep.verdict {
                SimplicityVerdict::NotSimple { witness, checks } => json!({
                    "checks": {
                        "d_stable": checks.d_stable,
                        "inside_prime": checks.inside_prime,
                        "nonzero": checks.nonzero,
                        "proper_over_quotient": checks.proper_over_quotient,
                    },
                    "kind": "not_simple",
                    "witness": report::strings(witness.generators()),
                }),
                SimplicityVerdict::NoObstructionUpTo { degree, order } => json!({
                    "degree": degree,
                    "kind": "no_obstruction_up_to",
                    "order": order,
                }),
                SimplicityVerdict::TrivialSolution => json!({ "kind": "trivial_solution" }),
                SimplicityVerdict::QuotientDiagnostic {
                    annihilator_escapes_prime,
                } => json!({
                    "annihilator_escapes_prime": annihilator_escapes_prime,
                    "kind": "quotient_diagnostic",
                }),
            };

            let uniform_power = if ln {
                let m = problem.prime.ideal(&problem.ring);
                let ell = d.ell_search(&m, bound, probe_deg)?;
                let criterion = match ell.generator_ell {
                    Some(l) => Some(d.ln_criterion(&m, l)?),
                    None => None,
                };
                warnings.push(
                    "uniform-power diagnostics are heuristic: probe violations show the exponent need not be uniform across the prime, so they never change the verdict"
                        .to_string(),
                );
                json!({
                    "bound": ell.bound,
                    "criterion_unit_at_ell": criterion,
                    "generator_ell": ell.generator_ell,
                    "heuristic": true,
                    "probe_degree": ell.probe_degree,
                    "probe_violations": report::strings(&ell.probe_violations),
                })
            } else {
                Value::Null
            };

            let payload = json!({
                "ambient_dimension": rep.ambient_dimension,
                "codimension": rep.codimension(),
                "distinguished": rep.distinguished.as_ref().map(|g| g.to_string()),
                "kernel": rep.kernel.as_ref().map(|k| kernel_json(k, &problem.ring)),
                "prime": problem.prime.render(&problem.ring),
                "prime_dimension": rep.prime_dimension,
                "uniform_power": uniform_power,
                "verdict": verdict,
                "witness_dimension": rep.witness_dimension,
            });
            Ok(report::envelope(
                "simplicity",
                &dig,
                payload,
                elapsed(timing, start),
                &warnings,
            ))
        }

        Cmd::Stable { common } => {
            let Common {
                input,
                json: _,
                timing,
            } = common;
            let text = read_file(&input)?;
            let dig = report::digest(text.as_bytes());
            let problem = parse_problem(&text)?;
            // Deliberately skip the quotient construction: this command
            // reports instability instead of rejecting the input.
            let d = problem.plain_derivation();
            let ideal_stable = if problem.ideal_gens.is_empty() {
                Value::Null
            } else {
                let ideal = Ideal::new(problem.ring.clone(), problem.ideal_gens.clone());
                Value::Bool(d.stabilizes(&ideal)?)
            };
            let prime_stable = d.stabilizes(&problem.prime.ideal(&problem.ring))?;
            let payload = json!({
                "ideal_stable": ideal_stable,
                "prime_stable": prime_stable,
            });
            Ok(report::envelope(
                "stable",
                &dig,
                payload,
                elapsed(timing, start),
                &[],
            ))
        }

        Cmd::Nilpotent { common, bound } => {
            let Common {
                input,
                json: _,
                timing,
            } = common;
            let text = read_file(&input)?;
            let dig = report::digest(text.as_bytes());
            let problem = parse_problem(&text)?;
            let d = problem.plain_derivation();
            let mut warnings = Vec::new();
            if !problem.ideal_gens.is_empty() {
                warnings.push(
                    "nilpotency is probed on the ambient polynomial ring; the ideal is ignored"
                        .to_string(),
                );
            }
            let rep = d.nilpotency_up_to(bound);
            let mut first_zero = Map::new();
            for (i, fz) in rep.first_zero.iter().enumerate() {
                first_zero.insert(
                    problem.ring.var_name(i).to_string(),
                    match fz {
                        Some(n) => json!(n),
                        None => Value::Null,
                    },
                );
            }
            let payload = json!({
                "bound": rep.bound,
                "first_zero": first_zero,
                "nilpotent": rep.is_nilpotent(),
            });
            Ok(report::envelope(
                "nilpotent",
                &dig,
                payload,
                elapsed(timing, start),
                &warnings,
            ))
        }

        Cmd::Exp {
            common,
            elem,
            order,
        } => {
            let Common {
                input,
                json: _,
                timing,
            } = common;
            let text = read_file(&input)?;
            let dig = report::digest(text.as_bytes());
            let problem = parse_problem(&text)?;
            let d = problem.derivation()?;
            let g = parse_poly(&elem, &problem.ring, 1, 0).map_err(|e| match e {
                Error::Input(m) => Error::input(format!("--elem: {m}")),
                other => other,
            })?;
            let series = d.exp_map(&g, order);
            let payload = json!({
                "coefficients": report::strings(series.coeffs()),
                "element": g.to_string(),
                "order": order,
            });
            Ok(report::envelope(
                "exp",
                &dig,
                payload,
                elapsed(timing, start),
                &[],
            ))
        }

        Cmd::Verify { common, solution } => {
            let Common {
                input,
                json: _,
                timing,
            } = common;
            let ptext = read_file(&input)?;
            let stext = read_file(&solution)?;
            let mut bytes = ptext.clone().into_bytes();
            bytes.extend_from_slice(stext.as_bytes());
            let dig = report::digest(&bytes);
            let problem = parse_problem(&ptext)?;
            let d = problem.derivation()?;
            let sol = parse_solution(&stext, &problem)?;
            if sol.order() == 0 {
                return Err(Error::input(
                    "a solution of order 0 carries no differential constraint; supply order at least 1"
                        .to_string(),
                )
                .into());
            }
            let r = sol.order() - 1;
            let verified = verify_solution(&sol, &d, r)?;
            let payload = json!({
                "checked_order": r,
                "order": sol.order(),
                "verified": verified,
            });
            Ok(report::envelope(
                "verify",
                &dig,
                payload,
                elapsed(timing, start),
                &[],
            ))
        }
    }
}

fn main() {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(0);
                }
                _ => {
                    let rendered = e.to_string();
                    let first = rendered.lines().next().unwrap_or("invalid arguments");
                    println!("{}", report::error_line(first.trim()));
                    std::process::exit(1);
                }
            }
        }
    };
    match run(cli.command, start) {
        Ok(out) => print!("{out}"),
        Err(f) => {
            println!("{}", report::error_line(&f.message()));
            std::process::exit(f.exit_code());
        }
    }
}
