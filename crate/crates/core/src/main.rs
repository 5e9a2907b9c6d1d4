use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monocat::base::{BaseDescriptor, SerialBase};
use monocat::enumerate::kronecker::{kronecker_family, Family};
use monocat::enumerate::{enumerate_bounded, enumerate_gabriel, enumerate_mono_rad2, verify_length_vector_table};
use monocat::error::{Error, Result};
use monocat::io::{
    certificate_name, module_value, morphism_value, parse_length_table, parse_rep, rep_value, report_value, table_value,
    to_text,
};
use monocat::quiver::Quiver;
use monocat::rep::Representation;
use monocat::suite::{self, SuiteOptions, CRITERIA};

#[derive(Parser)]
#[command(name = "monocat", version, about = "Monomorphic quiver representations over serial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Representation file (JSON)
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Write the result here instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Base in short form: chain:poly:2:3, chain:int:2:3, rad2nak:2:2, stable:<base>
    #[arg(long, global = true)]
    base: Option<String>,
    /// Builtin quiver name or quiver JSON
    #[arg(long, global = true)]
    quiver: Option<String>,
    /// Length caps per vertex, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    caps: Option<Vec<u32>>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Bound on enumerated map tuples
    #[arg(long, global = true, env = "MONOCAT_BUDGET", default_value_t = 1 << 24)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    P,
    I,
    R,
}

#[derive(Subcommand)]
enum Command {
    /// Load a representation and report its basic invariants
    Validate,
    /// Check that every in-map is a monomorphism; exit 1 if not
    MonoCheck,
    /// Minimal monomorphic approximation and its map to the input
    Mimo,
    /// Apply f_! to the vertex modules of the input
    Fshriek,
    /// Kopf and L1Kopf at every vertex
    Kopf,
    /// Krull-Schmidt decomposition
    Decompose,
    /// Reduction to the stable base
    StableReduce,
    /// Move a representation to the partner chain ring given by --base
    Transfer,
    /// Enumerate indecomposables: bounded search with --caps, otherwise the
    /// classification for radical-square-zero bases or fields
    Enumerate {
        /// Keep only monomorphic representations (bounded search)
        #[arg(long)]
        mono: bool,
        /// Length-vector table to verify instead of listing classes
        #[arg(long)]
        table: Option<PathBuf>,
        /// Extra length allowed beyond the table's hull
        #[arg(long, default_value_t = 1)]
        margin: u32,
    },
    /// A member of the Kronecker family over F_p[x]/x^2
    Kronecker {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Point (a:b) of the projective line for the R family
        #[arg(long, value_delimiter = ',', default_value = "1,0")]
        param: Vec<u32>,
    },
    /// Run acceptance checks by name (A1..A7, P1..P4, rad2-count) or all
    VerifySuite {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Skip the length-vector table run at hull plus one in A4
        #[arg(long)]
        quick: bool,
    },
}

struct Output {
    value: Value,
    text: Option<String>,
    ok: bool,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, text: None, ok: true }
    }
}

fn read_rep(c: &Common) -> Result<Representation> {
    let path = c.input.as_ref().ok_or_else(|| Error::Invalid("--input is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parse_rep(&text)
}

fn base(c: &Common) -> Result<SerialBase> {
    let s = c.base.as_ref().ok_or_else(|| Error::Invalid("--base is required".into()))?;
    SerialBase::from_descriptor(&BaseDescriptor::parse_short(s)?)
}

fn quiver(c: &Common) -> Result<Quiver> {
    Quiver::parse(c.quiver.as_ref().ok_or_else(|| Error::Invalid("--quiver is required".into()))?)
}

fn per_vertex(r: &Representation, values: impl Iterator<Item = Value>) -> Value {
    let q = r.quiver();
    let m: BTreeMap<String, Value> = values.enumerate().map(|(v, x)| (q.vertex_name(v).to_string(), x)).collect();
    json!(m)
}

fn execute(cmd: &Command, c: &Common) -> Result<Output> {
    match cmd {
        Command::Validate => {
            let r = read_rep(c)?;
            Ok(Output::ok(json!({
                "valid": true,
                "base": r.base().descriptor().short(),
                "length_vector": r.length_vector(),
                "mono": r.is_mono()?,
            })))
        }
        Command::MonoCheck => {
            let r = read_rep(c)?;
            let mut failing = Vec::new();
            for (v, (k, _)) in r.l1_kopf()?.into_iter().enumerate() {
                if !k.is_zero() {
                    let (ker, _) = r.in_map(v).0.kernel()?;
                    failing.push(json!({ "vertex": r.quiver().vertex_name(v), "kernel": module_value(&ker) }));
                }
            }
            let ok = failing.is_empty();
            Ok(Output { value: json!({ "mono": ok, "failing": failing }), text: None, ok })
        }
        Command::Mimo => {
            let r = read_rep(c)?;
            let (m, p) = r.mimo()?;
            Ok(Output::ok(json!({ "mimo": rep_value(&m), "approximation": morphism_value(&p) })))
        }
        Command::Fshriek => {
            let r = read_rep(c)?;
            Ok(Output::ok(rep_value(&Representation::f_shriek(r.base(), r.quiver(), r.modules())?)))
        }
        Command::Kopf => {
            let r = read_rep(c)?;
            let kopf = r.kopf()?.into_iter().map(|(m, _)| module_value(&m));
            let l1 = r.l1_kopf()?.into_iter().map(|(m, _)| module_value(&m));
            Ok(Output::ok(json!({ "kopf": per_vertex(&r, kopf), "l1_kopf": per_vertex(&r, l1) })))
        }
        Command::Decompose => {
            let r = read_rep(c)?;
            let d = r.decompose()?;
            let pieces: Vec<Value> = d
                .pieces
                .iter()
                .zip(&d.certificates)
                .map(|((p, k), cert)| {
                    json!({ "representation": rep_value(p), "multiplicity": k, "certificate": certificate_name(*cert) })
                })
                .collect();
            Ok(Output::ok(json!({ "pieces": pieces, "count": d.count() })))
        }
        Command::StableReduce => Ok(Output::ok(rep_value(&read_rep(c)?.stable_reduce()?))),
        Command::Transfer => {
            let r = read_rep(c)?;
            let target = base(c)?.chain_ring().ok_or_else(|| Error::Unsupported("transfer needs a chain ring".into()))?;
            Ok(Output::ok(rep_value(&r.transfer(target)?)))
        }
        Command::Enumerate { mono, table, margin } => {
            let q = quiver(c)?;
            let b = base(c)?;
            if let Some(path) = table {
                let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                let t = verify_length_vector_table(&q, &b, &parse_length_table(&text)?, *margin)?;
                let ok = t.passed();
                return Ok(Output { value: table_value(&t), text: None, ok });
            }
            let report = match &c.caps {
                Some(caps) => enumerate_bounded(&q, &b, caps, *mono, c.budget)?,
                None if b.chain_ring().is_some_and(|r| r.n() == 1) => enumerate_gabriel(&q, b.coeff().p())?,
                None => enumerate_mono_rad2(&q, &b)?,
            };
            Ok(Output::ok(report_value(&report)))
        }
        Command::Kronecker { family, n, param } => {
            let b = base(c)?;
            let which = match family {
                FamilyArg::P => Family::P,
                FamilyArg::I => Family::I,
                FamilyArg::R => Family::R,
            };
            let pt = match param.as_slice() {
                [a, b] => (*a, *b),
                _ => return Err(Error::Invalid("--param takes two numbers a,b".into())),
            };
            Ok(Output::ok(rep_value(&kronecker_family(&b, which, *n, pt)?)))
        }
        Command::VerifySuite { suite: name, quick } => {
            let opts = SuiteOptions { seed: c.seed, budget: c.budget, full_table: !quick };
            let names: Vec<&str> = if name == "all" { CRITERIA.to_vec() } else { name.split(',').collect() };
            let mut outcomes = Vec::new();
            for n in names {
                outcomes.push(if n == "rad2-count" { suite::rad2_count(&quiver(c)?, &base(c)?)? } else { suite::run(n, &opts)? });
            }
            let ok = outcomes.iter().all(|o| o.passed);
            let text = outcomes
                .iter()
                .map(|o| format!("{} {} {} ({:.1}s)\n", o.name, if o.passed { "PASS" } else { "FAIL" }, o.summary, o.elapsed.as_secs_f64()))
                .collect();
            let value = json!({ "passed": ok, "results": outcomes.iter().map(|o| o.value()).collect::<Vec<_>>() });
            Ok(Output { value, text: Some(text), ok })
        }
    }
}

/// Flattened `path: value` lines for the text format.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push_str(&format!("{prefix}: {v}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match execute(&cli.command, &cli.common) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if matches!(e, Error::Budget(_)) { 3 } else { 2 });
        }
    };
    let rendered = match cli.common.format {
        Format::Json => to_text(&out.value),
        Format::Text => out.text.clone().unwrap_or_else(|| {
            let mut s = String::new();
            flatten("", &out.value, &mut s);
            s
        }),
    };
    match &cli.common.output {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(if out.ok { 0 } else { 1 })
}
