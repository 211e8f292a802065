//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a criterion failed, 2 bad input or unmet
//! precondition, 3 an invariant of the theory was violated.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::criteria::{is_partition_of, jordan_nilpotent};
use crate::error::{Error, Result};
use crate::inference::{close, FactBase};
use crate::linalg::{Matrix, Vector};
use crate::pair::{gsigma_element, Family, SymmetricPair};
use crate::report::{
    audit_custom, audit_family, build_pair, closure_json, descendant_json, to_canonical_string,
    triple_json, PairSpecDocument, DEFAULT_MAX_ORBIT_N, SCHEMA,
};
use crate::scalar::{parse_rational, Rational};
use crate::sl2::theta_adapt;
use crate::weil::{
    delta_b, homogeneity_table, weil_gamma, DiagonalQuadraticForm, EighthRoot, Place,
};

#[derive(Parser, Debug)]
#[command(name = "gelfand", version, about = "Exact checks for symmetric pairs and local quadratic constants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbit-by-orbit speciality audit, facts and their closure.
    Audit(AuditArgs),
    /// θ-adapted sl2-triple through a nilpotent element of g^σ.
    Triple(ElementArgs),
    /// Descendant pair at a semisimple element of g^σ.
    Descend(ElementArgs),
    /// Weil constant, δ_B(t) and the homogeneity factor at one place.
    Weil(WeilArgs),
    /// Closure of a set of property atoms.
    Infer(InferArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// diagonal, quadratic_ext or custom
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Discriminant for quadratic_ext.
    #[arg(long = "d", short = 'D', allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// JSON pair specification (overrides --family/--n/--d).
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long)]
    pub max_orbit_n: Option<usize>,
    /// Additional user-asserted atom (repeatable).
    #[arg(long = "assume")]
    pub assume: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Coordinates in the basis of g, comma separated.
    #[arg(long, conflicts_with_all = ["partition", "matrix"], allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Jordan type of a nilpotent, e.g. 2,1 (built-in families).
    #[arg(long, conflicts_with = "matrix")]
    pub partition: Option<String>,
    /// n×n matrix X, rows separated by ';', embedded as (X, −X) or √D·X.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
}

#[derive(Args, Debug)]
pub struct WeilArgs {
    /// real, complex or p:<prime>
    #[arg(long)]
    pub place: String,
    /// Diagonal coefficients a1,a2,...
    #[arg(long, allow_hyphen_values = true)]
    pub form: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub t: String,
}

#[derive(Args, Debug)]
pub struct InferArgs {
    /// Facts JSON `{"pair_id": ..., "atoms": [...]}`; `-` for stdin.
    #[arg(long, default_value = "-")]
    pub facts: PathBuf,
}

enum Loaded {
    Pair(SymmetricPair),
    Custom(SymmetricPair, Vec<Vector>),
}

fn read_text(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
    }
}

fn family_from_flags(args: &PairArgs) -> Result<Family> {
    let kind = args.family.as_deref().ok_or_else(|| Error::input("--family or --spec is required"))?;
    let n = || args.n.ok_or_else(|| Error::input("--n is required"));
    match kind {
        "diagonal" => Ok(Family::Diagonal { n: n()? }),
        "quadratic_ext" => Ok(Family::QuadraticExt {
            n: n()?,
            d: args.d.ok_or_else(|| Error::input("--d is required for quadratic_ext"))?,
        }),
        "custom" => Err(Error::input("custom pairs are read from --spec")),
        other => Err(Error::input(format!("unknown family '{other}'"))),
    }
}

fn load_pair(args: &PairArgs) -> Result<(Loaded, Option<usize>)> {
    match &args.spec {
        Some(path) => {
            let doc = PairSpecDocument::parse(&read_text(path)?)?;
            let family = doc.family()?;
            let loaded = match family {
                Family::Custom => {
                    let c = doc
                        .custom
                        .as_ref()
                        .ok_or_else(|| Error::input("pair spec: family 'custom' needs a 'custom' object"))?;
                    Loaded::Custom(c.build()?, c.representative_vectors())
                }
                f => Loaded::Pair(build_pair(f)?),
            };
            Ok((loaded, doc.max_orbit_n))
        }
        None => Ok((Loaded::Pair(build_pair(family_from_flags(args)?)?), None)),
    }
}

fn parse_vector(s: &str, dim: usize) -> Result<Vector> {
    let v = s
        .split(',')
        .map(|t| parse_rational(t).ok_or_else(|| Error::input(format!("bad coordinate '{t}'"))))
        .collect::<Result<Vec<Rational>>>()?;
    if v.len() != dim {
        return Err(Error::input(format!("--x has {} coordinates, the algebra has dimension {dim}", v.len())));
    }
    Ok(v)
}

fn parse_matrix(s: &str) -> Result<Matrix> {
    let rows = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|t| parse_rational(t).ok_or_else(|| Error::input(format!("bad matrix entry '{t}'"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|e| Error::input(format!("--matrix: {e}")))
}

fn element(pair: &SymmetricPair, args: &ElementArgs) -> Result<Vector> {
    let inner = || {
        pair.family()
            .inner_n()
            .ok_or_else(|| Error::input("--partition/--matrix need a built-in family; use --x"))
    };
    if let Some(x) = &args.x {
        return parse_vector(x, pair.dim());
    }
    if let Some(p) = &args.partition {
        let n = inner()?;
        let mu = p
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::input(format!("bad part '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        if !is_partition_of(&mu, n) {
            return Err(Error::input(format!("{mu:?} is not a partition of {n}")));
        }
        return gsigma_element(pair.family(), &jordan_nilpotent(&mu));
    }
    if let Some(m) = &args.matrix {
        let n = inner()?;
        let m = parse_matrix(m)?;
        if m.rows() != n || m.cols() != n {
            return Err(Error::input(format!("--matrix must be {n}×{n}")));
        }
        return gsigma_element(pair.family(), &m);
    }
    Err(Error::input("one of --x, --partition or --matrix is required"))
}

fn pair_of(loaded: Loaded) -> SymmetricPair {
    match loaded {
        Loaded::Pair(p) | Loaded::Custom(p, _) => p,
    }
}

fn root_json(r: EighthRoot) -> Value {
    let z = r.to_complex();
    json!({"exponent": r.exponent(), "re": format!("{:.6}", z.re), "im": format!("{:.6}", z.im)})
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactsDocument {
    #[serde(default)]
    pair_id: Option<String>,
    #[serde(default)]
    atoms: Vec<String>,
}

/// Runs a parsed command, returning the output text and exit code.
pub fn run(cli: Cli) -> Result<(String, i32)> {
    match cli.command {
        Command::Audit(a) => {
            let assumed = FactBase::from_names(&a.assume)?;
            let (loaded, spec_cap) = load_pair(&a.pair)?;
            let cap = a.max_orbit_n.or(spec_cap).unwrap_or(DEFAULT_MAX_ORBIT_N);
            let out = match loaded {
                Loaded::Pair(p) => audit_family(p.family(), cap, &assumed)?,
                Loaded::Custom(p, reps) => audit_custom(&p, &reps, &assumed)?,
            };
            let text = to_canonical_string(&out.report);
            let code = if out.all_pass { 0 } else { 1 };
            match a.output {
                Some(path) => {
                    fs::write(&path, &text).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
                    Ok((String::new(), code))
                }
                None => Ok((text, code)),
            }
        }
        Command::Triple(a) => {
            let pair = pair_of(load_pair(&a.pair)?.0);
            let x = element(&pair, &a)?;
            let t = theta_adapt(&pair, &x)?;
            Ok((to_canonical_string(&triple_json(&pair, &t)?), 0))
        }
        Command::Descend(a) => {
            let pair = pair_of(load_pair(&a.pair)?.0);
            let x = element(&pair, &a)?;
            let d = pair.descendant(&x)?;
            let v = descendant_json(&pair, &x, &d);
            let code = if d.dimension_identity_holds() { 0 } else { 1 };
            Ok((to_canonical_string(&v), code))
        }
        Command::Weil(a) => {
            let place: Place = a.place.parse()?;
            let form = DiagonalQuadraticForm::parse(&a.form)?;
            let t = parse_rational(&a.t).ok_or_else(|| Error::input(format!("bad --t '{}'", a.t)))?;
            let gamma = weil_gamma(&form, place)?;
            let delta = delta_b(&form, &t, place)?;
            let h = homogeneity_table(&form, std::slice::from_ref(&t), place)?.remove(0);
            let v = json!({
                "schema": SCHEMA,
                "command": "weil",
                "place": place.to_string(),
                "form": form.to_string(),
                "t": a.t.trim(),
                "gamma": root_json(gamma),
                "delta": root_json(delta),
                "homogeneity_factor": {
                    "module": h.module,
                    "exponent_of_t": format!("{}/2", form.dim()),
                    "re": format!("{:.6}", h.re),
                    "im": format!("{:.6}", h.im),
                },
            });
            Ok((to_canonical_string(&v), 0))
        }
        Command::Infer(a) => {
            let text = read_text(&a.facts)?;
            let doc: FactsDocument =
                serde_json::from_str(&text).map_err(|e| Error::input(format!("facts: {e}")))?;
            let facts = FactBase::from_names(&doc.atoms)?;
            let c = close(&facts);
            if !c.verify() {
                return Err(Error::invariant("derivation chain does not replay"));
            }
            let v = json!({
                "schema": SCHEMA,
                "command": "infer",
                "pair_id": doc.pair_id,
                "closure": closure_json(&c),
                "atoms": c.atoms().iter().map(|a| a.name()).collect::<Vec<_>>(),
            });
            Ok((to_canonical_string(&v), 0))
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => 3,
        _ => 2,
    }
}

/// Parses `std::env::args`, runs, prints, and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            if matches!(e, Error::Invariant(_)) {
                eprintln!("*** theory invariant violated ***");
            }
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
