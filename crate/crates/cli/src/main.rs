use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genus2::census::full_census;
use genus2::invariants::{curve_from_j, geo_aut_class, j_of, JInvariant};
use genus2::models::{autk, canonicalize, is_isomorphic, normalize};
use genus2::polyrat::factor::set_split_seed;
use genus2::text::{format_model, parse_curve, parse_j};
use genus2::twists::{isotropy_h, twist_family, twist_witness};
use genus2::{CurveCtx, CurveModel, Error, FieldCtx};

#[derive(Parser)]
#[command(name = "genus2", version, about = "Genus-2 curves y^2 + y = u(x) over F_{2^m}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Extension degree of the base field over F_2.
    #[arg(long = "m")]
    m: u32,
    /// Irreducible modulus in hex, bit i = coefficient of t^i.
    #[arg(long = "mod")]
    modulus: Option<String>,
    /// Seed for randomized polynomial splitting.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Args, Clone)]
struct CensusArgs {
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Compare the records with a stored report.
    #[arg(long)]
    golden: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical normal form of a curve.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        curve: String,
    },
    /// Igusa j-invariant of a curve.
    Jinv {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        curve: String,
    },
    /// A curve with the given j-invariant.
    Fromj {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        j: String,
    },
    /// Whether two curves are isomorphic over the base field.
    Isom {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, num_args = 1, required = true)]
        curve: Vec<String>,
    },
    /// Automorphism group over the base field, with explicit lifts.
    Autk {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        curve: String,
    },
    /// Geometric automorphism group, from a curve or a j-invariant.
    Geoclass {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, conflicts_with = "j", required_unless_present = "j")]
        curve: Option<String>,
        #[arg(long)]
        j: Option<String>,
    },
    /// All twists of a curve up to isomorphism over the base field.
    Twists {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        curve: String,
        /// Also print an isomorphism from each twist to the curve.
        #[arg(long)]
        witness: bool,
    },
    /// Class counts, masses and tallies for the whole field.
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        run: CensusArgs,
    },
    /// The census checked against the closed-form counts.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        run: CensusArgs,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn curve_ctx(f: &FieldArgs) -> Result<CurveCtx, Failure> {
    set_split_seed(f.seed);
    let ctx = match &f.modulus {
        None => FieldCtx::new(f.m),
        Some(h) => {
            let v = u128::from_str_radix(h, 16)
                .map_err(|_| Failure::Usage(format!("bad modulus '{h}'")))?;
            FieldCtx::with_modulus(f.m, v)
        }
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(CurveCtx::new(ctx)?)
}

fn read_curve(cc: &CurveCtx, s: &str) -> Result<CurveModel, Failure> {
    Ok(parse_curve(cc, s)?)
}

fn read_j(cc: &CurveCtx, s: &str) -> Result<JInvariant, Failure> {
    Ok(parse_j(cc.field(), s)?)
}

fn census_lines(cc: &CurveCtx, run: &CensusArgs, verify: bool) -> Result<Vec<String>, Failure> {
    let report = full_census(cc, run.jobs);
    let mut out: Vec<String> = Vec::new();
    if !verify {
        out.extend(report.to_string().lines().map(String::from));
    }
    out.extend(report.records());
    let mut bad = report.discrepancies();
    if let Some(path) = &run.golden {
        let want = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let got = report.records();
        let want: Vec<&str> = want.lines().filter(|l| !l.trim().is_empty()).collect();
        if want != got.iter().map(String::as_str).collect::<Vec<_>>() {
            bad.push(format!("records differ from {}", path.display()));
        }
    }
    if verify || !bad.is_empty() {
        if bad.is_empty() {
            out.push("OK".into());
        } else {
            out.extend(bad.iter().map(|b| format!("FAIL {b}")));
            emit(&out);
            return Err(Failure::Domain("census does not match".into()));
        }
    }
    Ok(out)
}

fn run(cmd: Command) -> Result<Vec<String>, Failure> {
    Ok(match cmd {
        Command::Classify { field, curve } => {
            let cc = curve_ctx(&field)?;
            let m = normalize(&cc, &read_curve(&cc, &curve)?)?;
            vec![format_model(&cc, &canonicalize(&cc, &m))]
        }
        Command::Jinv { field, curve } => {
            let cc = curve_ctx(&field)?;
            vec![j_of(&cc, &read_curve(&cc, &curve)?)?.to_string()]
        }
        Command::Fromj { field, j } => {
            let cc = curve_ctx(&field)?;
            vec![format_model(&cc, &curve_from_j(&cc, &read_j(&cc, &j)?)?)]
        }
        Command::Isom { field, curve } => {
            let cc = curve_ctx(&field)?;
            if curve.len() != 2 {
                return Err(Failure::Usage("isom takes exactly two --curve arguments".into()));
            }
            let a = read_curve(&cc, &curve[0])?;
            let b = read_curve(&cc, &curve[1])?;
            vec![is_isomorphic(&cc, &a, &b)?.to_string()]
        }
        Command::Autk { field, curve } => {
            let cc = curve_ctx(&field)?;
            let m = canonicalize(&cc, &normalize(&cc, &read_curve(&cc, &curve)?)?);
            let d = autk(&cc, &m)?;
            let gens: Vec<String> = d.reduced.generators.iter().map(|g| g.to_string()).collect();
            let mut out = vec![
                format_model(&cc, &m),
                format!(
                    "order={} reduced={} reduced_order={} generators={} splits={}",
                    d.order,
                    d.reduced.name,
                    d.reduced.order,
                    if gens.is_empty() { "-".into() } else { gens.join(";") },
                    if d.splits { "yes" } else { "no" }
                ),
            ];
            for (g, v) in d.automorphisms(&cc) {
                out.push(format!("gamma={} v={v}", g.to_mobius(&cc)));
            }
            out
        }
        Command::Geoclass { field, curve, j } => {
            let cc = curve_ctx(&field)?;
            let j = match (curve, j) {
                (Some(c), _) => j_of(&cc, &read_curve(&cc, &c)?)?,
                (None, Some(j)) => read_j(&cc, &j)?,
                (None, None) => unreachable!("clap requires one of --curve and --j"),
            };
            let c = geo_aut_class(cc.field(), &j);
            vec![format!("{j} class={} order={}", c.name(), c.order())]
        }
        Command::Twists { field, curve, witness } => {
            let cc = curve_ctx(&field)?;
            let base = canonicalize(&cc, &normalize(&cc, &read_curve(&cc, &curve)?)?);
            let fam = twist_family(&cc, &base)?;
            let h = isotropy_h(&cc, &base)?;
            let mut out = vec![format!(
                "class={} count={} h_isotropy={}",
                fam.class.name(),
                fam.members.len(),
                if h.is_trivial() { "1" } else { "C2" }
            )];
            for t in &fam.members {
                out.push(format!("{} label={}", format_model(&cc, &t.model), t.label));
                if witness {
                    let w = twist_witness(&cc, &base, &t.model)?;
                    let params: Vec<String> =
                        w.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    out.push(format!(
                        "  witness degree={} field={} gamma={} v={}{}",
                        w.degree(),
                        w.ext.big().describe(),
                        w.gamma,
                        w.v,
                        if params.is_empty() { String::new() } else { format!(" {}", params.join(" ")) }
                    ));
                }
            }
            out
        }
        Command::Census { field, run } => census_lines(&curve_ctx(&field)?, &run, false)?,
        Command::Verify { field, run } => census_lines(&curve_ctx(&field)?, &run, true)?,
    })
}

/// Writes the lines to stdout, stopping quietly if the reader has gone.
fn emit(lines: &[String]) {
    let mut out = io::stdout().lock();
    for l in lines {
        if writeln!(out, "{l}").is_err() {
            return;
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(lines) => {
            emit(&lines);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `genus2 --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
