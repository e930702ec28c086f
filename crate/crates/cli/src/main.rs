use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;

use positroid_core::field::prime_power;
use positroid_core::grassmann::{enumerate_grassmannian, predicted_count};
use positroid_core::positroid::count_positroid;
use positroid_core::qseries::{predicted_positroid_count, rational_q_catalan, QCatalan};
use positroid_core::report::{self, Parameters, Value, VerificationReport};
use positroid_core::sweep::parse_int_set;
use positroid_core::table;
use positroid_core::twisted::{enumerate_twisted_positroid, TowerField};
use positroid_core::verify::{run_suite, Suite, SweepConfig};
use positroid_core::{Error, FieldSpec, Limits};

#[derive(Parser, Debug)]
#[command(name = "positroid", version, about = "Exact point counts of Grassmannians, open positroid varieties and their twisted forms over finite fields")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, env = "POSITROID_THREADS")]
    threads: Option<usize>,
    /// Largest Grassmannian to enumerate. For `verify`, larger cases are skipped.
    #[arg(long, global = true, env = "POSITROID_MAX_POINTS")]
    max_points: Option<u64>,
    /// Largest field order that may be constructed.
    #[arg(long, global = true, env = "POSITROID_MAX_FIELD_ORDER")]
    max_field_order: Option<u64>,
    /// Largest torus enumerated in a single stabilizer check.
    #[arg(long, global = true, env = "POSITROID_MAX_TORUS_LOOP")]
    max_torus_loop: Option<u64>,
    /// Output format (default: text, or csv for `table`).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Grassmannian,
    Positroid,
    Twisted,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count points of one variety and compare with the closed form.
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "positroid")]
        mode: Mode,
    },
    /// Run a verification suite over a sweep grid.
    Verify {
        /// formula, gaussian, twisted, quotient, freeness, fixed-points,
        /// orbits, moore, lang, catalan or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "POSITROID_N_MAX", default_value_t = 7)]
        n_max: usize,
        /// Field orders, e.g. `2,3,4,5,7,8,9,11`.
        #[arg(long, env = "POSITROID_Q_LIST", default_value = "2,3,4,5,7,8,9,11")]
        q: String,
        /// Seed for randomized trials.
        #[arg(long, env = "POSITROID_SEED", default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, env = "POSITROID_CATALAN_N_MAX", default_value_t = 12)]
        catalan_n_max: usize,
        /// Exhaustive stabilizer checks run where (q-1)^(n-1) * #cell is at most this.
        #[arg(long, env = "POSITROID_STABILIZER_BUDGET", default_value_t = 10_000_000)]
        stabilizer_budget: u64,
        /// Random trials per tower for three-element Moore products.
        #[arg(long, default_value_t = 1000)]
        moore_trials: usize,
        /// Record wall-clock time per report (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Emit a count table, one row per (k, n, q).
    Table {
        #[arg(long, default_value = "1-3")]
        k: String,
        #[arg(long, default_value = "2-5")]
        n: String,
        #[arg(long, default_value = "2,3,4,5")]
        q: String,
    },
    /// Print the rational q-Catalan polynomial, or the division remainder.
    Catalan {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    /// Bad input, guard violation or I/O error.
    Usage(String),
    /// A checked identity failed.
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let d = Limits::default();
    Limits {
        max_points: cli.max_points.unwrap_or(d.max_points),
        max_field_order: cli.max_field_order.unwrap_or(d.max_field_order),
        max_torus_loop: cli.max_torus_loop.unwrap_or(d.max_torus_loop),
        max_moore_factors: d.max_moore_factors,
    }
}

fn output(cli: &Cli) -> io::Result<Box<dyn Write>> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Count { k, n, q, mode } => {
            let r = count(*k, *n, *q, *mode, &limits(cli))?;
            let ok = r.ok();
            emit_reports(cli, &[r])?;
            ok.then_some(()).ok_or(Failure::Mismatch)
        }
        Command::Verify {
            suite,
            n_max,
            q,
            seed,
            catalan_n_max,
            stabilizer_budget,
            moore_trials,
            timings,
        } => {
            let suite: Suite = suite.parse()?;
            let d = SweepConfig::default();
            let cfg = SweepConfig {
                n_max: *n_max,
                q_list: parse_int_set(q)?,
                max_points: cli.max_points.unwrap_or(d.max_points),
                stabilizer_budget: *stabilizer_budget,
                catalan_n_max: *catalan_n_max,
                moore_trials: *moore_trials,
                seed: *seed,
                timings: *timings,
                limits: Limits {
                    max_points: d.limits.max_points,
                    ..limits(cli)
                },
                ..d
            };
            let reports = run_suite(suite, &cfg);
            emit_reports(cli, &reports)?;
            reports
                .iter()
                .all(VerificationReport::ok)
                .then_some(())
                .ok_or(Failure::Mismatch)
        }
        Command::Table { k, n, q } => {
            let rows = table::build_table(
                &parse_int_set(k)?,
                &parse_int_set(n)?,
                &parse_int_set(q)?,
                &limits(cli),
            )?;
            let mut out = output(cli)?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv | Format::Text => table::write_csv(&rows, &mut out)?,
                Format::Json => table::write_json(&rows, &mut out)?,
            }
            out.flush()?;
            Ok(())
        }
        Command::Catalan { k, n } => {
            let c = rational_q_catalan(*k, *n)?;
            let mut out = output(cli)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let v = match &c {
                        QCatalan::Polynomial(p) => serde_json::json!({
                            "k": k, "n": n, "divisible": true, "polynomial": p,
                        }),
                        QCatalan::NotDivisible {
                            quotient,
                            remainder,
                        } => serde_json::json!({
                            "k": k, "n": n, "divisible": false,
                            "quotient": quotient, "remainder": remainder,
                        }),
                    };
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
                }
                _ => writeln!(out, "{c}")?,
            }
            out.flush()?;
            Ok(())
        }
    }
}

fn field_for(q: u64, limits: &Limits) -> Result<FieldSpec, Error> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::BadFieldParameters(format!("{q} is not a prime power")))?;
    FieldSpec::build_with_guard(p, e, 1, limits.max_field_order)
}

fn count(k: usize, n: usize, q: u64, mode: Mode, limits: &Limits) -> Result<VerificationReport, Error> {
    let field = field_for(q, limits)?;
    let mut params = Parameters {
        k: Some(k),
        n: Some(n),
        q: Some(q),
        field: Some(field.descriptor()),
    };
    let coprime = k.gcd(&n) == 1;
    Ok(match mode {
        Mode::Grassmannian => {
            let observed = enumerate_grassmannian(k, n, &field, limits)?.count() as u64;
            VerificationReport::new(
                "count-grassmannian",
                params,
                "#Gr(k,n)(F_q) equals the Gaussian binomial (n choose k)_q at q",
            )
            .compare(predicted_count(k, n, q), observed)
        }
        Mode::Positroid => {
            let c = count_positroid(k, n, &field, limits)?;
            let r = VerificationReport::new(
                "count-positroid",
                params,
                "#Π°_{k,n}(F_q) = (q-1)^{n-1} · Cat_q(k,n)(q) for coprime k, n",
            );
            if coprime {
                r.compare(predicted_positroid_count(k, n, q)?, c.positroid_count)
            } else {
                r.observed_only(c.positroid_count)
            }
        }
        Mode::Twisted => {
            let tower = TowerField::new(q, n, limits)?;
            params.field = Some(tower.big().descriptor());
            let c = enumerate_twisted_positroid(k, &tower, limits)?;
            let r = VerificationReport::new(
                "count-twisted",
                params,
                "every k-dimensional F_q-subspace of F_{q^n} passes the Moore cyclic-minor test \
                 when gcd(k,n) = gcd(q,n) = 1",
            );
            let mut r = if coprime && (q as usize).gcd(&n) == 1 {
                r.compare(c.subspace_count, c.twisted_count)
            } else {
                r.observed_only(c.twisted_count)
            };
            if let (Some(false), Some(m)) = (r.passed, &c.first_failure) {
                r = r.with_counterexample(serde_json::json!(m.to_coeff_rows()));
            }
            r
        }
    })
}

fn value_text(v: &Option<Value>) -> String {
    match v {
        None => "-".into(),
        Some(Value::Integer(x)) => x.to_string(),
        Some(Value::Polynomial(p)) => p.to_string(),
    }
}

fn emit_reports(cli: &Cli, reports: &[VerificationReport]) -> Result<(), Failure> {
    let mut out = output(cli)?;
    match cli.format.unwrap_or(Format::Text) {
        Format::Json => writeln!(out, "{}", report::to_json(reports))?,
        Format::Csv => {
            return Err(Failure::Usage(
                "csv output is only available for `table`".into(),
            ))
        }
        Format::Text => {
            for r in reports {
                let p = &r.parameters;
                let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
                let verdict = match r.passed {
                    Some(true) => "PASS",
                    Some(false) => "FAIL",
                    None => "N/A",
                };
                write!(
                    out,
                    "{verdict:4} {:13} k={} n={} q={} predicted={} observed={}",
                    r.suite,
                    opt(p.k.map(|x| x.to_string())),
                    opt(p.n.map(|x| x.to_string())),
                    opt(p.q.map(|x| x.to_string())),
                    value_text(&r.predicted),
                    value_text(&r.observed),
                )?;
                if let Some(ms) = r.elapsed_ms {
                    write!(out, " ({ms} ms)")?;
                }
                if r.passed == Some(false) {
                    if let Some(c) = &r.counterexample {
                        write!(out, " counterexample={c}")?;
                    }
                }
                writeln!(out)?;
            }
            let failed = reports.iter().filter(|r| r.passed == Some(false)).count();
            let passed = reports.iter().filter(|r| r.passed == Some(true)).count();
            writeln!(
                out,
                "{} reports: {passed} passed, {failed} failed, {} without a closed form",
                reports.len(),
                reports.len() - passed - failed
            )?;
        }
    }
    out.flush()?;
    Ok(())
}
