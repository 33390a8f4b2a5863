//! Command-line front end. Every subcommand prints one JSON document (or CSV with
//! `--format csv`) to standard output or to `--out`.
//!
//! Exit codes: 0 success, 2 bound violation or failed consistency check, 3 input error,
//! 4 budget exceeded.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bertini::{self, BertiniError, SweepOptions};
use crate::bounds::{self, BoundsError, Evaluator};
use crate::campaign::{self, CampaignConfig, CampaignError};
use crate::counting::{self, CountError, PolySystem};
use crate::factor::{self, FactorError, SolutionField};
use crate::gf::{prime_power, FieldCtx, GfError};
use crate::mpoly::{MPoly, PolyError};
use crate::project::{self, InverseSection, ProjectError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "weilbench",
    version,
    about = "Point counts, factorization and explicit bounds over finite fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Evaluation budget (points, tuples or visited nodes).
    #[arg(long, global = true, env = "WEILBENCH_BUDGET", default_value_t = counting::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file; campaigns write `<out>.json` and `<out>.csv`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count the common zeros of polynomials in F_q^n.
    Count {
        #[arg(long)]
        field: String,
        #[arg(long)]
        nvars: usize,
        /// Repeat for a system.
        #[arg(long, required = true)]
        poly: Vec<String>,
        /// Count over F_{q^t}.
        #[arg(long, default_value_t = 1)]
        extension: u32,
        /// Use the gcd-accelerated hypersurface count.
        #[arg(long)]
        fast: bool,
    },
    /// Factors of a bivariate polynomial up to a degree.
    Factor {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        /// Degree cap; defaults to the total degree.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Absolutely irreducible factors instead of F_q-irreducible ones.
        #[arg(long)]
        closure: bool,
    },
    /// Evaluate the bound formulas with directed rounding.
    Bounds {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        /// Dimension; defaults to n - 1.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        delta: Option<u32>,
        /// Characteristic; defaults to that of q.
        #[arg(long)]
        p: Option<u64>,
        /// Formula ids to keep; repeat for several. Defaults to all.
        #[arg(long)]
        formula: Vec<String>,
        /// Degree D of the small-factor bounds.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = bounds::DEFAULT_BITS)]
        bits: u32,
        /// List the formula catalog and exit.
        #[arg(long)]
        catalog: bool,
    },
    /// Classify plane sections of a hypersurface.
    Bertini {
        #[arg(long)]
        field: String,
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        poly: String,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Project a variety onto a hypersurface and check birationality.
    Project {
        #[arg(long)]
        field: String,
        #[arg(long)]
        nvars: usize,
        /// Repeat for each equation.
        #[arg(long, required = true)]
        poly: Vec<String>,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: u32,
        /// Run the birationality check and the inverse-section round trip.
        #[arg(long)]
        check: bool,
    },
    /// Seeded bound-verification campaign over random hypersurfaces.
    Campaign {
        /// Comma-separated field specs.
        #[arg(long, value_delimiter = ',', required = true)]
        fields: Vec<String>,
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        min_degree: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        instances: usize,
        /// Formula ids to assert; defaults to every applicable one.
        #[arg(long, value_delimiter = ',')]
        assert: Option<Vec<String>>,
    },
}

/// Exit code and rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    /// Report to print despite the failure.
    report: Option<Value>,
}

impl Failure {
    fn input(msg: impl ToString) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: msg.to_string(),
            report: None,
        }
    }
}

macro_rules! failure_from {
    ($t:ty, $f:expr) => {
        impl From<$t> for Failure {
            fn from(e: $t) -> Failure {
                Failure {
                    code: $f(&e),
                    message: e.to_string(),
                    report: None,
                }
            }
        }
    };
}

fn count_code(e: &CountError) -> i32 {
    match e {
        CountError::BudgetExceeded { .. } => EXIT_BUDGET,
        CountError::AuditMismatch { .. } | CountError::LemmaViolated { .. } => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

fn factor_code(e: &FactorError) -> i32 {
    match e {
        FactorError::InternalVerifyFailed(_) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

failure_from!(CountError, count_code);
failure_from!(FactorError, factor_code);
failure_from!(GfError, |_: &GfError| EXIT_INPUT);
failure_from!(PolyError, |_: &PolyError| EXIT_INPUT);
failure_from!(BoundsError, |_: &BoundsError| EXIT_INPUT);
failure_from!(BertiniError, |e: &BertiniError| match e {
    BertiniError::BudgetExceeded { .. } => EXIT_BUDGET,
    BertiniError::CeilingViolated { .. } | BertiniError::NotDivisible { .. } => EXIT_VIOLATION,
    BertiniError::Factor(f) => factor_code(f),
    _ => EXIT_INPUT,
});
failure_from!(ProjectError, |e: &ProjectError| match e {
    ProjectError::Count(c) => count_code(c),
    ProjectError::BirationalityFailed(_) | ProjectError::DiscriminantCeiling { .. } =>
        EXIT_VIOLATION,
    ProjectError::RetriesExhausted { .. }
    | ProjectError::NotStabilized { .. }
    | ProjectError::FitFailed(_) => EXIT_VIOLATION,
    _ => EXIT_INPUT,
});
failure_from!(CampaignError, |e: &CampaignError| match e {
    CampaignError::Count(c) => count_code(c),
    CampaignError::Factor(f) => factor_code(f),
    CampaignError::GenerationExhausted { .. } => EXIT_VIOLATION,
    _ => EXIT_INPUT,
});

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    if let Some(t) = cli.global.threads {
        // Fails only when the global pool already exists, which keeps the first setting.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global();
    }
    // Campaigns write their own files and print a summary.
    let out = if matches!(cli.command, Command::Campaign { .. }) {
        None
    } else {
        cli.global.out.as_deref()
    };
    match execute(cli) {
        Ok(rendered) => finish(out, EXIT_OK, rendered, String::new()),
        Err(f) => {
            let rendered = f.report.map(|v| render_json(&v)).unwrap_or_default();
            finish(out, f.code, rendered, format!("error: {}\n", f.message))
        }
    }
}

fn finish(out: Option<&Path>, code: i32, rendered: String, mut stderr: String) -> Outcome {
    match out {
        Some(path) if !rendered.is_empty() => {
            if let Err(e) = std::fs::write(path, &rendered) {
                stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
                return Outcome {
                    code: code.max(EXIT_INPUT),
                    stdout: String::new(),
                    stderr,
                };
            }
            Outcome {
                code,
                stdout: String::new(),
                stderr,
            }
        }
        _ => Outcome {
            code,
            stdout: rendered,
            stderr,
        },
    }
}

fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn csv_of(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Failure::input(e);
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Failure::input(e.to_string()))?)
        .map_err(Failure::input)
}

fn field(spec: &str) -> Result<FieldCtx, Failure> {
    Ok(FieldCtx::from_spec(spec)?)
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Count {
            field: spec,
            nvars,
            poly,
            extension,
            fast,
        } => {
            let k = field(spec)?;
            let texts: Vec<&str> = poly.iter().map(String::as_str).collect();
            let sys = PolySystem::parse(&k, *nvars, &texts)?;
            let res = if *fast {
                if sys.polys().len() != 1 || *extension != 1 {
                    return Err(Failure::input(
                        "--fast needs a single polynomial and --extension 1",
                    ));
                }
                counting::count_hypersurface_fast_with(
                    &sys.polys()[0],
                    g.budget,
                    counting::AUDIT_SEED,
                )?
            } else {
                counting::count_over_extension_with(&sys, *extension, g.budget)?
            };
            let row = vec![
                spec.clone(),
                nvars.to_string(),
                extension.to_string(),
                res.count.to_string(),
                format!("{:?}", res.method),
                poly.join(";"),
            ];
            match g.format {
                Format::Csv => csv_of(
                    &["field", "n", "extension", "count", "method", "polys"],
                    &[row],
                ),
                Format::Json => Ok(render_json(&json!({
                    "field": spec, "q": res.q, "n": nvars, "extension": extension,
                    "polys": poly, "count": res.count, "method": res.method,
                }))),
            }
        }
        Command::Factor {
            field: spec,
            poly,
            max_degree,
            closure,
        } => {
            let k = field(spec)?;
            let f = MPoly::parse(&k, 2, poly)?;
            let deg = f.total_degree().unwrap_or(0);
            let mode = if *closure {
                SolutionField::RootFieldKi
            } else {
                SolutionField::BaseK
            };
            let rep = factor::find_factors(
                &f,
                max_degree.unwrap_or(deg).max(1),
                mode,
                factor::NORMALIZE_SEED,
            )?;
            let abs = factor::is_absolutely_irreducible(&f)?;
            let nu = factor::count_abs_irr_fq_factors(&f)?;
            let factors: Vec<String> = rep.factors.iter().map(|h| h.to_string()).collect();
            let fields: Vec<String> = rep.factors.iter().map(|h| h.ctx().to_string()).collect();
            match g.format {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = factors
                        .iter()
                        .zip(&fields)
                        .map(|(h, fl)| vec![poly.clone(), h.clone(), fl.clone()])
                        .collect();
                    csv_of(&["poly", "factor", "field"], &rows)
                }
                Format::Json => Ok(render_json(&json!({
                    "field": spec, "poly": f.to_string(), "mode": mode, "max_degree": rep.d_cap,
                    "status": rep.status, "factors": factors, "factor_fields": fields,
                    "absolutely_irreducible": abs, "nu": nu,
                }))),
            }
        }
        Command::Bounds {
            q,
            n,
            r,
            delta,
            p,
            formula,
            d,
            bits,
            catalog,
        } => {
            if *catalog {
                return Ok(render_json(&to_value(&bounds::catalog())));
            }
            let (Some(q), Some(n), Some(delta)) = (*q, *n, *delta) else {
                return Err(Failure::input(
                    "--q, --n and --delta are required unless --catalog is given",
                ));
            };
            if n < 2 || delta < 1 || prime_power(q).is_none() {
                return Err(Failure::input(
                    "need n >= 2, delta >= 1 and q a prime power",
                ));
            }
            let r = r.unwrap_or(n - 1);
            let p = p.unwrap_or_else(|| prime_power(q).map(|(p, _)| p).unwrap_or(q));
            let ev = Evaluator::new(*bits);
            let mut all = ev.all_at(q, n, r, delta, p);
            all.retain(|b| formula.is_empty() || formula.iter().any(|f| f == b.formula));
            match g.format {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = all
                        .iter()
                        .map(|b| {
                            vec![
                                b.formula.to_string(),
                                format!("{:?}", b.direction),
                                b.format(),
                                b.trivial.to_string(),
                            ]
                        })
                        .collect();
                    csv_of(&["formula", "direction", "value", "trivial"], &rows)
                }
                Format::Json => {
                    let mut out = json!({ "q": q, "n": n, "r": r, "delta": delta, "p": p, "bounds": to_value(&all) });
                    if delta >= 2 {
                        out["bertini_degrees"] =
                            to_value(&bounds::bertini_degree_bounds(delta, *d)?);
                        out["pi_classes"] = to_value(&ev.pi_class_bounds(delta, q, n, 1)?);
                    }
                    out["plane_statistics"] = to_value(&bounds::plane_statistics(q, n)?);
                    out["thresholds"] = to_value(&ev.existence_thresholds(delta, Some(r)));
                    Ok(render_json(&out))
                }
            }
        }
        Command::Bertini {
            field: spec,
            nvars,
            poly,
            exhaustive,
            samples,
            max_degree,
        } => {
            let k = field(spec)?;
            let f = MPoly::parse(&k, *nvars, poly)?;
            if *exhaustive {
                let opts = SweepOptions {
                    budget: g.budget,
                    max_degree: *max_degree,
                };
                let sweep = bertini::exhaustive_sweep_with(&f, &opts)?;
                let acc = bertini::plane_accounting_with(
                    &sweep.histogram,
                    Some(sweep.not_abs_irreducible_planes),
                )
                .map_err(|e| Failure {
                    report: Some(to_value(&sweep)),
                    ..Failure::from(e)
                })?;
                Ok(render_json(
                    &json!({ "sweep": to_value(&sweep), "accounting": to_value(&acc) }),
                ))
            } else {
                let s =
                    samples.ok_or_else(|| Failure::input("give --exhaustive or --samples N"))?;
                Ok(render_json(&to_value(&bertini::sampled_sweep(
                    &f, s, g.seed,
                )?)))
            }
        }
        Command::Project {
            field: spec,
            nvars,
            poly,
            dim,
            degree,
            check,
        } => {
            let k = field(spec)?;
            let texts: Vec<&str> = poly.iter().map(String::as_str).collect();
            let sys = PolySystem::parse(&k, *nvars, &texts)?;
            let draw = project::draw_projection_with(&sys, *dim, *degree, g.seed, g.budget)?;
            let mut out = json!({ "draw": to_value(&draw) });
            if *check {
                let rep = project::birational_check_with(&sys, &draw.projection, g.budget)?;
                out["birational"] = to_value(&rep);
                let sec = InverseSection::fit_with(&sys, &draw.projection, g.budget)?;
                let (mut checked, mut ok) = (0u64, true);
                for x in counting::enumerate_points(&sys, g.budget)? {
                    let y = draw.projection.apply(&x);
                    if draw.projection.h0.eval_in(&k, &y) != 0 {
                        checked += 1;
                        ok &= sec.apply(&y)? == x;
                    }
                }
                out["inverse_section"] = json!({
                    "v": sec.v.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "round_trips": checked, "pass": ok,
                });
                if !ok {
                    return Err(Failure {
                        code: EXIT_VIOLATION,
                        message: "inverse section does not invert the projection".into(),
                        report: Some(out),
                    });
                }
            }
            Ok(render_json(&out))
        }
        Command::Campaign {
            fields,
            nvars,
            min_degree,
            max_degree,
            instances,
            assert,
        } => {
            let cfg = CampaignConfig {
                fields: fields.clone(),
                nvars: *nvars,
                min_degree: *min_degree,
                max_degree: *max_degree,
                instances: *instances,
                seed: g.seed,
                assert: assert.clone(),
                budget: g.budget,
            };
            let rep = campaign::run_campaign(&cfg)?;
            let rendered = match g.format {
                Format::Csv => campaign::to_csv(&rep)?,
                Format::Json => render_json(&to_value(&rep)),
            };
            if let Some(stem) = &g.out {
                campaign::write_report(&rep, Path::new(stem))?;
            }
            if rep.summary.violations > 0 {
                return Err(Failure {
                    code: EXIT_VIOLATION,
                    message: format!("{} bound violations", rep.summary.violations),
                    report: (g.out.is_none()).then(|| to_value(&rep)),
                });
            }
            // Campaign files are already written; print the summary only.
            if g.out.is_some() {
                return Ok(render_json(&to_value(&rep.summary)));
            }
            Ok(rendered)
        }
    }
}
