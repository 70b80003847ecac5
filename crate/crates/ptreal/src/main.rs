use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ptreal::decimal::approx_decimal;
use ptreal::scan::{run_scan, verdicts, write_csv, ParamRange, Target};
use ptreal_core::eval::evaluate_with;
use ptreal_core::modulus::check_modulus_bounded;
use ptreal_core::oracle::{CanonicalOracle, JitteredOracle};
use ptreal_core::{Dyadic, Error, ExactValue, Modulus, ModulusForm, SpecId, TauString, WitnessId};

#[derive(Parser)]
#[command(name = "ptreal", version, about = "Exact dyadic evaluation, modulus checks and cost scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the two-bit encoding of a literal.
    Encode {
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
    /// Print the literal of a two-bit encoding.
    Decode { bits: String },
    /// Evaluate a witness exactly at a dyadic.
    Eval {
        #[arg(long)]
        witness: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Also print a rounded decimal, marked with ≈.
        #[arg(long)]
        decimal: bool,
    },
    /// Approximate a bundled real function at x to within 2^-n.
    EvalReal {
        #[arg(long)]
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        n: u64,
        /// `canonical` or `jitter:<seed>`.
        #[arg(long, default_value = "canonical")]
        oracle: String,
        /// Print the evaluation transcript after the result.
        #[arg(long)]
        transcript: bool,
        #[arg(long)]
        decimal: bool,
    },
    /// Check a modulus claim for a witness on [0, 2^k] at precision 2^-n.
    ModulusCheck {
        #[arg(long)]
        witness: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        /// `paper` for the closed form known for the witness (3*2^k + n for
        /// sawtooth, n + 2 for precision-gated),
        /// `poly:<b>` for (k+n)^b, or `expk:<c>` for c*2^k + n.
        #[arg(long, default_value = "paper")]
        claim: String,
        /// Grid exponent of the sampling sweep; defaults to m(k, n) + 2.
        #[arg(long)]
        grid: Option<u64>,
    },
    /// Measure cost over a parameter range and write the cost CSV.
    CostScan {
        #[arg(long)]
        target: String,
        /// `name=lo..hi`; repeat for two-parameter targets.
        #[arg(long = "param", required = true)]
        params: Vec<String>,
        #[arg(long)]
        csv: PathBuf,
    },
    /// List witnesses, real function specs and scan targets.
    ListWitnesses,
}

/// A failed command: exit code and message.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

/// Attributes a core error to the flag whose value caused it.
fn at(flag: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let code = match e {
            Error::MalformedLiteral(_) | Error::NotLowestForm(_) | Error::UnknownId(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: format!("{flag}: {e}"),
        }
    }
}

fn print_value(v: &Dyadic, decimal: bool) {
    println!("{v}");
    if decimal {
        println!("{}", approx_decimal(v));
    }
}

fn eval_real(spec: &str, x: &str, n: u64, oracle: &str, transcript: bool, decimal: bool) -> Result<(), Failure> {
    let spec = spec.parse::<SpecId>().map_err(at("--spec"))?.spec();
    let x_val: Dyadic = x.parse().map_err(at("--x"))?;
    let a = CanonicalOracle::new(spec.left_endpoint.clone());
    let (out, t) = match oracle {
        "canonical" => evaluate_with(&spec, &a, &CanonicalOracle::new(x_val), n, Some(x.to_string())),
        other => {
            let seed = other
                .strip_prefix("jitter:")
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| Failure {
                    code: 2,
                    message: format!("--oracle: expected canonical or jitter:<seed>, got {other}"),
                })?;
            evaluate_with(&spec, &a, &JitteredOracle::new(x_val, seed), n, Some(x.to_string()))
        }
    }
    .map_err(at("--x"))?;
    print_value(&out, decimal);
    if transcript {
        println!("spec = {}", t.spec_id);
        println!("x = {x}");
        println!("n = {}", t.n);
        println!("d1 = {}", t.d1);
        println!("d2 = {}", t.d2);
        println!("k = {}", t.k);
        println!("alpha = {}", t.alpha);
        println!("d = {}", t.d);
        println!("output = {}", t.output);
        println!("query_depth = {}", t.cost.oracle_depth);
        println!("query_count = {}", t.cost.oracle_count);
        println!("digit_ops = {}", t.cost.digit_ops);
    }
    Ok(())
}

fn closed_form_claim(id: WitnessId) -> Result<Modulus, Failure> {
    match id {
        WitnessId::Sawtooth => Ok(Modulus::affine_exp(3)),
        WitnessId::PrecisionGated => Ok(Modulus::linear(0, 1, 2)),
        other => Err(Failure::domain(format!(
            "--claim: no closed-form modulus for {other}; pass poly:<b> or expk:<c>"
        ))),
    }
}

fn modulus_check(witness: &str, k: u64, n: u64, claim: &str, grid: Option<u64>) -> Result<(), Failure> {
    let id: WitnessId = witness.parse().map_err(at("--witness"))?;
    let f = id
        .function()
        .ok_or_else(|| Failure::domain(format!("--witness: {id} has no exact form to check")))?;
    let modulus = match claim {
        "paper" => closed_form_claim(id)?,
        other => match other.parse::<ModulusForm>().map_err(at("--claim"))? {
            form @ (ModulusForm::Poly(_) | ModulusForm::AffineExp(_)) => Modulus::from(form),
            _ => {
                return Err(Failure {
                    code: 2,
                    message: format!("--claim: expected paper, poly:<b> or expk:<c>, got {other}"),
                })
            }
        },
    };
    let grid = grid.unwrap_or_else(|| modulus.eval(k, n).saturating_add(2));
    let r = check_modulus_bounded(f, &Dyadic::zero(), &modulus, k, n, grid).map_err(at("--k"))?;
    println!("verdict = {}", r.verdict);
    println!("claim = {}", modulus.form());
    println!("window = [{}, {}]", r.lo, r.hi);
    println!("m = {}", r.m);
    println!("pairs_checked = {}", r.pairs_checked);
    println!("exhaustive = {}", r.exhaustive);
    if let Some(v) = &r.violation {
        println!("x = {}", v.x);
        println!("y = {}", v.y);
        println!("gap = {}", v.gap);
        println!("bound = {}", v.bound);
    }
    Ok(())
}

fn cost_scan(target: &str, params: &[String], csv: &PathBuf) -> Result<(), Failure> {
    let target: Target = target.parse().map_err(at("--target"))?;
    let ranges = params
        .iter()
        .map(|p| p.parse::<ParamRange>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(at("--param"))?;
    let rows = run_scan(target, &ranges).map_err(at("--param"))?;
    let file = File::create(csv).map_err(|e| Failure::domain(format!("--csv: {}: {e}", csv.display())))?;
    write_csv(BufWriter::new(file), target, &rows)
        .map_err(|e| Failure::domain(format!("--csv: {}: {e}", csv.display())))?;
    println!("rows = {}", rows.len());
    for (label, verdict) in verdicts(target, &rows) {
        match verdict {
            Some(v) => println!("{label}: {v}"),
            None => println!("{label}: too few distinct sizes"),
        }
    }
    Ok(())
}

fn list() {
    println!("witnesses:");
    for id in WitnessId::ALL {
        println!("  {id:<16} {}", id.description());
    }
    println!("specs:");
    for id in SpecId::ALL {
        println!("  {id:<16} {}", id.spec().summary);
    }
    println!("scan targets:");
    for t in Target::all() {
        println!("  {:<21} params {}", t.to_string(), t.params().join(", "));
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode { literal } => {
            let d: Dyadic = literal.parse().map_err(at("literal"))?;
            println!("{}", d.tau_encode());
        }
        Command::Decode { bits } => {
            let t: TauString = bits.parse().map_err(at("bits"))?;
            println!("{}", Dyadic::tau_decode(&t).map_err(at("bits"))?);
        }
        Command::Eval { witness, at: lit, decimal } => {
            let id: WitnessId = witness.parse().map_err(at("--witness"))?;
            let d: Dyadic = lit.parse().map_err(at("--at"))?;
            let v = ExactValue::Witness(id, d).value().map_err(at("--at"))?;
            print_value(&v, decimal);
        }
        Command::EvalReal {
            spec,
            x,
            n,
            oracle,
            transcript,
            decimal,
        } => eval_real(&spec, &x, n, &oracle, transcript, decimal)?,
        Command::ModulusCheck {
            witness,
            k,
            n,
            claim,
            grid,
        } => modulus_check(&witness, k, n, &claim, grid)?,
        Command::CostScan { target, params, csv } => cost_scan(&target, &params, &csv)?,
        Command::ListWitnesses => list(),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
