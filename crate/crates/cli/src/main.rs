//! `wildcoll`: build, recognize, classify and count composition collisions
//! of polynomials over finite fields.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when the answer
//! is a mathematical "no" (no collision found, identification failed,
//! census disagreement).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wildcoll::census::{class_partition_check, run_census, verify, CensusReport};
use wildcoll::constructions::{frobenius_collision, MultiplyParams, SimplyParams};
use wildcoll::counting::{count_decomposable, nu, spectrum};
use wildcoll::decomp::{Collision, MonicOriginal};
use wildcoll::gf::parse_field;
use wildcoll::identify::{
    classify, enumerate_decompositions, identify_multiply, identify_simply, CollisionClass,
    MultiplyIdentification, SimplyIdentification,
};
use wildcoll::poly::parse_poly;
use wildcoll::{Field, FieldElem};

#[derive(Parser)]
#[command(
    name = "wildcoll",
    version,
    about = "Composition collisions of polynomials of degree r^2 over finite fields"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// x(x^(l(r+1)) - eps u s^r x^l + u s^(r+1))^m
    S,
    /// x^(m m*) (x-b)^(m m*) H^m H*^(m*)
    M,
    /// x^r ∘ h = phi(h) ∘ x^r
    Frobenius,
}

#[derive(Subcommand)]
enum Command {
    /// Build a polynomial from one of the collision families.
    Construct {
        family: Family,
        /// Field as p^d or p^d:c0,...,cd.
        #[arg(long)]
        field: String,
        /// Power of the characteristic; the polynomial has degree r^2 (default p).
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        u: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        eps: Option<u8>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        /// Right component h for the Frobenius family.
        #[arg(long)]
        poly: Option<String>,
        /// Apply the original shift by w.
        #[arg(long)]
        w: Option<u64>,
    },
    /// Recover S and M parameters of a polynomial of degree r^2.
    Identify {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        /// Defaults to the characteristic.
        #[arg(long)]
        r: Option<u64>,
    },
    /// Classify a polynomial of degree p^2 as F, S, M or no 2-collision.
    Classify {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
    },
    /// List all decompositions of a polynomial of degree p^2.
    Decompose {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
    },
    /// Closed-form collision spectrum and decomposable count at degree p^2.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Exhaustive census at degree p^2, checked against the closed forms.
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The fraction of decomposable polynomials at degree p^2.
    Nu {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Re-check a census report written by `census --out`.
    Verify {
        /// Path of the JSON report.
        report: PathBuf,
    },
}

/// Why a command did not succeed.
enum Failure {
    /// Bad flags or input; exit 1.
    Usage(String),
    /// A valid question whose answer is "no"; exit 2.
    Negative,
}

impl From<wildcoll::Error> for Failure {
    fn from(e: wildcoll::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing required flag --{flag}")))
}

fn element(field: &Field, value: Option<u64>, flag: &str) -> Result<FieldElem, Failure> {
    let v = need(value, flag)?;
    field
        .elem(v)
        .map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn read_poly(field: &Field, text: &str) -> Result<MonicOriginal, Failure> {
    let f = parse_poly(field, text).map_err(|e| Failure::Usage(format!("--poly: {e}")))?;
    MonicOriginal::new(f).map_err(|e| Failure::Usage(format!("--poly: {e}")))
}

fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("json values serialize")
        );
    } else {
        println!("{}", text());
    }
}

fn collision_json(c: &Collision) -> Value {
    let decomps: Vec<Value> = c
        .decompositions()
        .iter()
        .map(|d| json!({ "g": d.g.to_string(), "h": d.h.to_string() }))
        .collect();
    json!({ "f": c.f().to_string(), "k": c.len(), "decompositions": decomps })
}

fn collision_text(c: &Collision) -> String {
    let mut lines = vec![c.f().to_string()];
    lines.extend(c.decompositions().iter().map(|d| d.to_string()));
    lines.join("\n")
}

fn simply_json(id: &SimplyIdentification) -> Value {
    let p = &id.params;
    json!({
        "k": id.k,
        "u": p.u.encoding(),
        "s": p.s.encoding(),
        "eps": p.eps,
        "m": p.m,
        "w": id.w.encoding(),
    })
}

fn multiply_json(id: &MultiplyIdentification) -> Value {
    let p = &id.params;
    json!({ "a": p.a.encoding(), "b": p.b.encoding(), "m": p.m, "w": id.w.encoding() })
}

fn class_json(class: &CollisionClass) -> Value {
    let mut out = match class {
        CollisionClass::Simply(id) => simply_json(id),
        CollisionClass::Multiply(id) => multiply_json(id),
        _ => json!({}),
    };
    out["class"] = json!(class.tag());
    out
}

#[allow(clippy::too_many_arguments)]
fn construct(
    json: bool,
    family: Family,
    field: &str,
    r: Option<u64>,
    (u, s, eps, m): (Option<u64>, Option<u64>, Option<u8>, Option<u64>),
    (a, b): (Option<u64>, Option<u64>),
    poly: Option<String>,
    w: Option<u64>,
) -> Outcome {
    let field = parse_field(field)?;
    let r = r.unwrap_or(field.characteristic());
    let collision = match family {
        Family::S => {
            let params = SimplyParams::new(
                &field,
                element(&field, u, "u")?,
                element(&field, s, "s")?,
                need(eps, "eps")?,
                need(m, "m")?,
                r,
            )?;
            params.decompositions()?
        }
        Family::M => {
            let params = MultiplyParams::new(
                &field,
                element(&field, a, "a")?,
                element(&field, b, "b")?,
                need(m, "m")?,
                r,
            )?;
            params.build()?.1
        }
        Family::Frobenius => {
            let h = read_poly(&field, &need(poly, "poly")?)?;
            frobenius_collision(&h, r)?
        }
    };
    let collision = match w {
        Some(_) => collision.shifted(element(&field, w, "w")?),
        None => collision,
    };
    emit(json, collision_json(&collision), || {
        collision_text(&collision)
    });
    Ok(())
}

fn identify(json: bool, field: &str, poly: &str, r: Option<u64>) -> Outcome {
    let field = parse_field(field)?;
    let f = read_poly(&field, poly)?;
    let r = r.unwrap_or(field.characteristic());
    let simply = identify_simply(&f, r)?;
    let multiply = identify_multiply(&f, r)?;
    let value = json!({
        "simply": simply.as_ref().map(simply_json),
        "multiply": multiply.as_ref().map(multiply_json),
    });
    emit(json, value, || {
        let mut lines = Vec::new();
        if let Some(id) = &simply {
            lines.push(format!("S {id}"));
        }
        if let Some(id) = &multiply {
            lines.push(format!("M {id}"));
        }
        if lines.is_empty() {
            lines.push("failure".into());
        }
        lines.join("\n")
    });
    if simply.is_none() && multiply.is_none() {
        return Err(Failure::Negative);
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Construct {
            family,
            field,
            r,
            u,
            s,
            eps,
            m,
            a,
            b,
            poly,
            w,
        } => construct(json, family, &field, r, (u, s, eps, m), (a, b), poly, w),
        Command::Identify { field, poly, r } => identify(json, &field, &poly, r),
        Command::Classify { field, poly } => {
            let field = parse_field(&field)?;
            let class = classify(&read_poly(&field, &poly)?)?;
            emit(json, class_json(&class), || class.to_string());
            if class.is_none() {
                return Err(Failure::Negative);
            }
            Ok(())
        }
        Command::Decompose { field, poly } => {
            let field = parse_field(&field)?;
            let set = enumerate_decompositions(&read_poly(&field, &poly)?)?;
            let mut value = collision_json(&set.collision);
            value["class"] = json!(set.class.tag());
            value["complete"] = json!(set.complete);
            emit(json, value, || {
                let mut text = format!("{}\n{}", set.class, collision_text(&set.collision));
                if !set.complete {
                    text.push_str("\n(exhaustive search skipped for this field size)");
                }
                text
            });
            if set.collision.is_empty() {
                return Err(Failure::Negative);
            }
            Ok(())
        }
        Command::Count { p, q } => {
            let spec = spectrum(p, q)?;
            let d = count_decomposable(p, q)?;
            let top = format!("c{}", p + 1);
            let value = json!({
                "p": p,
                "q": q,
                "c1": spec.c1.to_string(),
                "c2": spec.c2.to_string(),
                top.clone(): spec.c_top.to_string(),
                "D": d.to_string(),
            });
            emit(json, value, || {
                format!(
                    "c1={}\nc2={}\n{top}={}\nD={d}",
                    spec.c1, spec.c2, spec.c_top
                )
            });
            Ok(())
        }
        Command::Nu { p, q } => {
            let ratio = nu(p, q)?;
            let text = format!("{}/{}", ratio.numer(), ratio.denom());
            emit(json, json!({ "p": p, "q": q, "nu": text }), || text.clone());
            Ok(())
        }
        Command::Census { p, q, out } => {
            let report = run_census(p, q)?;
            let ok = verify(&report) && class_partition_check(&report);
            if let Some(path) = &out {
                let body = serde_json::to_string_pretty(&report).expect("report serializes");
                std::fs::write(path, body + "\n")
                    .map_err(|e| Failure::Usage(format!("--out {}: {e}", path.display())))?;
            }
            let value = serde_json::to_value(&report).expect("report serializes");
            emit(json, value, || census_text(&report, ok));
            if ok {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::Verify { report } => {
            let body = std::fs::read_to_string(&report)
                .map_err(|e| Failure::Usage(format!("{}: {e}", report.display())))?;
            let parsed: CensusReport = serde_json::from_str(&body)
                .map_err(|e| Failure::Usage(format!("{}: {e}", report.display())))?;
            let counts = verify(&parsed);
            let classes = class_partition_check(&parsed);
            let value = json!({ "spectrum": counts, "classes": classes });
            emit(json, value, || {
                format!(
                    "spectrum {}\nclasses {}",
                    if counts { "ok" } else { "MISMATCH" },
                    if classes { "ok" } else { "MISMATCH" }
                )
            });
            if counts && classes {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
    }
}

fn census_text(report: &CensusReport, ok: bool) -> String {
    let mut lines = vec![format!(
        "census p={} q={} pairs={}",
        report.p, report.q, report.pairs
    )];
    for (k, c) in &report.spectrum_observed {
        lines.push(format!(
            "c{k}={c} (predicted {})",
            report.spectrum_predicted.c(*k)
        ));
    }
    lines.push(format!(
        "D={} (predicted {})",
        report.decomposable_observed, report.spectrum_predicted.d_total
    ));
    let classes: Vec<String> = report
        .class_counts
        .iter()
        .map(|(tag, n)| format!("{tag}={n}"))
        .collect();
    lines.push(format!("classes {}", classes.join(" ")));
    for m in &report.mismatches {
        lines.push(format!(
            "mismatch {}: observed {}, predicted {}",
            m.f, m.observed, m.predicted
        ));
    }
    lines.push(if ok {
        "verified".into()
    } else {
        "MISMATCH".into()
    });
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
