//! Command-line front end. Exit codes: 0 success, 1 malformed input,
//! 2 violated mathematical hypothesis.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::applications::{
    fs_baselines, isogeny_bound, isogeny_degree_bound, semiabelian_bound, semiabelian_bound_proof_chain, f_const,
    torus_bound, torus_dim2_bounds, torus_lattice_bound, torus_via_semiabelian, Dim2Input, MobiusMap, SemiAbelianParams,
};
use crate::bounds::{
    bound_ci, bound_degree_simple, bound_general, bound_hp, bound_kushnirenko, bound_reduction_degree, compare,
    BoundConfig, BoundReport, EVariant, GammaVariant,
};
use crate::diffpoly::{eliminate_linear, parse_prolongated_system, parse_system, tau_system, SystemFile};
use crate::error::{Error, Result};
use crate::mixedvol::{mixed_volume_of, Algorithm, Body};
use crate::polytope::LatticePolytope;

#[derive(Parser, Debug)]
#[command(name = "diffbkk", version, about = "Exact BKK-type bounds for algebraic-differential systems")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Multiple of the all-variables simplex in Gamma.
    #[arg(long, global = true, value_enum)]
    gamma_variant: Option<GammaArg>,
    /// Reading of the constant E.
    #[arg(long, global = true, value_enum, default_value_t = EArg::Printed)]
    e_variant: EArg,
    /// Mixed volume algorithm.
    #[arg(long, global = true, value_enum, default_value_t = AlgArg::Auto)]
    algorithm: AlgArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GammaArg {
    Theorem12,
    Prop42,
    Refined,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EArg {
    Printed,
    #[value(alias = "per_j")]
    PerJ,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgArg {
    Polarization,
    Interpolation,
    Blocks,
    Auto,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polytope utilities.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Mixed volume of s polytopes in Z^s.
    Mixedvol(Inputs),
    /// BKK root count s! V of s polytopes in Z^s.
    Bkk(Inputs),
    /// Prolongation system of a differential system.
    Tau {
        #[arg(long)]
        system: PathBuf,
    },
    /// Eliminate the prolongation block from s+1 linear equations.
    Eliminate {
        /// Header gives the base layout; polynomials use its first prolongation.
        #[arg(long)]
        system: PathBuf,
    },
    /// Bound statements.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Diophantine applications.
    #[command(subcommand)]
    App(AppCmd),
    /// Compare the singly exponential degree bound with the classical one.
    Compare {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        d_min: u64,
        #[arg(long, default_value_t = 40)]
        d_max: u64,
    },
}

#[derive(Args, Debug)]
struct Inputs {
    /// Polytope JSON files.
    files: Vec<PathBuf>,
    /// Use the Newton polytopes of a system file instead.
    #[arg(long, conflicts_with = "files")]
    system: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum PolytopeCmd {
    /// Convex hull of the listed points.
    Hull { file: PathBuf },
    /// Minkowski sum.
    Sum { a: PathBuf, b: PathBuf },
    /// Integer dilation.
    Dilate {
        file: PathBuf,
        #[arg(long)]
        factor: u64,
    },
    /// Euclidean volume.
    Volume { file: PathBuf },
    /// Whether the polytope is a co-ideal of the positive orthant.
    Coideal { file: PathBuf },
    /// Newton polytopes of the polynomials in a system file.
    Newton {
        #[arg(long)]
        system: PathBuf,
    },
}

#[derive(Args, Debug)]
struct CiInputs {
    /// Polytopes of the complete-intersection part (repeatable).
    #[arg(long = "ci")]
    ci: Vec<PathBuf>,
    /// Use the Newton polytopes of a system file instead.
    #[arg(long, conflicts_with = "ci")]
    system: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum BoundCmd {
    /// C_{s,k} V(D1..Dk, Gamma..Gamma).
    Ci(CiInputs),
    /// Summed and simplified bounds for general systems.
    General {
        #[command(flatten)]
        inputs: CiInputs,
        #[arg(long)]
        delta: PathBuf,
    },
    /// E_{s,k} Vol(D).
    Kushnirenko {
        #[arg(long)]
        delta: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Degree of the reduced solution set.
    Degree {
        #[command(flatten)]
        inputs: CiInputs,
        #[arg(long)]
        delta: PathBuf,
    },
    /// E_{s,k} d_X^n d_S^(nl).
    Simple {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d_x: u64,
        #[arg(long)]
        d_s: u64,
        /// Also report the classical bound with this m.
        #[arg(long)]
        m: Option<u32>,
    },
    /// deg(X)^{l 2^{ml}} deg(S)^{2^{ml}-1}.
    Hp {
        #[arg(long)]
        deg_x: u64,
        #[arg(long)]
        deg_s: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
    },
}

#[derive(Args, Debug)]
struct VolumeArg {
    /// Volume of the Newton polytope, as `p/q`.
    #[arg(long, conflicts_with = "delta")]
    vol: Option<String>,
    /// Newton polytope file.
    #[arg(long)]
    delta: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum AppCmd {
    /// Points of a finite-rank group on a subvariety of a semi-abelian variety.
    Semiabelian {
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 1)]
        t: u64,
        #[arg(long)]
        d_a: u64,
        #[arg(long)]
        d_omega: u64,
        #[arg(long)]
        d_x: u64,
    },
    /// Torus version.
    Torus {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        volume: VolumeArg,
    },
    /// Torus version under a condition on the group.
    Torus2 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        volume: VolumeArg,
    },
    /// Plane curves in the 2-torus: classical and new bounds.
    TorusDim2 {
        #[arg(long)]
        r: u64,
        #[arg(long, conflicts_with = "delta")]
        d: Option<u64>,
        #[arg(long)]
        delta: Option<PathBuf>,
    },
    /// Elliptic curves isogenous to E_tau with alpha-images isogenous to E_{alpha tau}.
    Isogeny {
        /// Coefficients a,b,c,d of alpha z = (az+b)/(cz+d).
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Use the exact Minkowski sum for Gamma instead of the envelope.
        #[arg(long)]
        exact_gamma: bool,
    },
    /// Degree of the Zariski closure of V ∩ Iso(tau).
    IsogenyDegree {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Earlier isogeny bounds.
    FsBaseline {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        deg_v: u64,
    },
}

/// Runs the CLI on `argv` (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).expect("serializable")),
                Format::Text => report.text,
            };
            match &cli.out {
                Some(path) => match std::fs::write(path, text) {
                    Ok(()) => 0,
                    Err(e) => {
                        let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                        1
                    }
                },
                None => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_hypothesis_violation() {
                2
            } else {
                1
            }
        }
    }
}

struct Report {
    json: Value,
    text: String,
}

impl Report {
    fn from_json(json: Value) -> Self {
        let mut text = String::new();
        render_text(&json, 0, &mut text);
        Report { json, text }
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) if !is_flat(val) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_flat(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !matches!(i, Value::Object(_)) && is_flat(i)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_polytope(path: &Path) -> Result<LatticePolytope> {
    LatticePolytope::from_json_str(&read(path)?)
}

fn read_system(path: &Path) -> Result<SystemFile> {
    parse_system(&read(path)?)
}

fn newton_polytopes(path: &Path) -> Result<Vec<LatticePolytope>> {
    read_system(path)?.polys.iter().map(|p| p.newton_polytope()).collect()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse().map_err(|_| Error::Input(format!("`{s}` is not a rational number")))
}

fn config(cli: &Cli, default_gamma: GammaVariant) -> BoundConfig {
    BoundConfig {
        gamma: match cli.gamma_variant {
            None => default_gamma,
            Some(GammaArg::Theorem12) => GammaVariant::Theorem12,
            Some(GammaArg::Prop42) => GammaVariant::Prop42,
            Some(GammaArg::Refined) => GammaVariant::Refined,
        },
        e: match cli.e_variant {
            EArg::Printed => EVariant::Printed,
            EArg::PerJ => EVariant::PerJ,
        },
        algorithm: match cli.algorithm {
            AlgArg::Polarization => Algorithm::Polarization,
            AlgArg::Interpolation => Algorithm::Interpolation,
            AlgArg::Blocks => Algorithm::Blocks,
            AlgArg::Auto => Algorithm::Auto,
        },
    }
}

fn bound_report(r: BoundReport) -> Report {
    Report { text: r.to_text(), json: r.to_json() }
}

fn input_polytopes(inputs: &Inputs) -> Result<Vec<LatticePolytope>> {
    match &inputs.system {
        Some(path) => newton_polytopes(path),
        None => inputs.files.iter().map(|f| read_polytope(f)).collect(),
    }
}

fn ci_polytopes(inputs: &CiInputs) -> Result<Vec<LatticePolytope>> {
    match &inputs.system {
        Some(path) => newton_polytopes(path),
        None if inputs.ci.is_empty() => Err(Error::Input("give --ci polytopes or --system".into())),
        None => inputs.ci.iter().map(|f| read_polytope(f)).collect(),
    }
}

fn volume_of(v: &VolumeArg) -> Result<BigRational> {
    match (&v.vol, &v.delta) {
        (Some(s), _) => parse_rational(s),
        (None, Some(p)) => Ok(read_polytope(p)?.volume()),
        (None, None) => Err(Error::Input("give --vol or --delta".into())),
    }
}

fn layout_json(l: &crate::diffpoly::JetLayout) -> Value {
    json!({ "vars": l.vars(), "order": l.order(), "consts": l.constants() })
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let cfg = config(cli, GammaVariant::Theorem12);
    match &cli.command {
        Command::Polytope(cmd) => polytope_cmd(cmd),
        Command::Mixedvol(inputs) | Command::Bkk(inputs) => {
            let polys = input_polytopes(inputs)?;
            let bodies: Vec<Body> = polys.into_iter().map(Body::from).collect();
            let (v, alg) = mixed_volume_of(&bodies, cfg.algorithm)?;
            let json = if matches!(cli.command, Command::Mixedvol(_)) {
                json!({ "mixed_volume": v.value.to_string(), "bkk": v.bkk().to_string(), "algorithm": alg.as_str() })
            } else {
                json!({ "bkk": v.bkk().to_string(), "algorithm": alg.as_str() })
            };
            Ok(Report::from_json(json))
        }
        Command::Tau { system } => {
            let sys = read_system(system)?;
            let tau = tau_system(&sys.polys)?;
            Ok(Report::from_json(json!({
                "base_layout": layout_json(&tau.base_layout),
                "prolongation_layout": layout_json(&tau.ext_layout),
                "polynomials": tau.pairs.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            })))
        }
        Command::Eliminate { system } => {
            let (base, polys) = parse_prolongated_system(&read(system)?)?;
            let r = eliminate_linear(&polys, &base)?;
            let newton = if r.is_zero() { Value::Null } else { r.newton_polytope()?.to_json() };
            Ok(Report::from_json(json!({
                "base_layout": layout_json(&base),
                "resultant": r.to_string(),
                "newton_polytope": newton,
            })))
        }
        Command::Bound(cmd) => bound_cmd(cmd, &cfg),
        Command::App(cmd) => app_cmd(cmd, cli),
        Command::Compare { n, l, k, m, d_min, d_max } => {
            if d_min > d_max || *d_min == 0 {
                return Err(Error::InvalidParams("need 1 ≤ d-min ≤ d-max".into()));
            }
            let (rows, crossover) = compare(*n, *l, *k, *m, *d_min..=*d_max, &cfg)?;
            let json = json!({
                "statement": "new bound E_{s,k} d^n d^(nl) against deg^(l 2^(ml)) deg^(2^(ml)-1) with d = d_X = d_S",
                "params": { "n": n, "l": l, "k": k, "m": m },
                "config": cfg.to_json(),
                "rows": rows.iter().map(|r| json!({
                    "d": r.d, "new_bound": r.new_bound.to_string(), "hp_bound": r.hp_bound.to_string(),
                })).collect::<Vec<_>>(),
                "crossover": crossover,
            });
            let mut text = format!("{:>6}  {:>24}  {:>24}\n", "d", "new bound", "classical bound");
            for r in &rows {
                text.push_str(&format!("{:>6}  {:>24}  {:>24}\n", r.d, r.new_bound, r.hp_bound));
            }
            match crossover {
                Some(d) => text.push_str(&format!("crossover: classical bound exceeds the new bound from d = {d}\n")),
                None => text.push_str("crossover: none in range\n"),
            }
            Ok(Report { json, text })
        }
    }
}

fn polytope_cmd(cmd: &PolytopeCmd) -> Result<Report> {
    let json = match cmd {
        PolytopeCmd::Hull { file } => read_polytope(file)?.to_json(),
        PolytopeCmd::Sum { a, b } => read_polytope(a)?.minkowski_sum(&read_polytope(b)?)?.to_json(),
        PolytopeCmd::Dilate { file, factor } => read_polytope(file)?.dilate(*factor)?.to_json(),
        PolytopeCmd::Volume { file } => {
            let p = read_polytope(file)?;
            json!({ "dim": p.ambient_dim(), "affine_dim": p.affine_dim(), "volume": p.volume().to_string() })
        }
        PolytopeCmd::Coideal { file } => json!({ "coideal": read_polytope(file)?.is_coideal()? }),
        PolytopeCmd::Newton { system } => {
            let sys = read_system(system)?;
            let polys = sys
                .polys
                .iter()
                .map(|p| Ok(json!({ "polynomial": p.to_string(), "newton_polytope": p.newton_polytope()?.to_json() })))
                .collect::<Result<Vec<_>>>()?;
            json!({ "layout": layout_json(&sys.layout), "polynomials": polys })
        }
    };
    Ok(Report::from_json(json))
}

fn bound_cmd(cmd: &BoundCmd, cfg: &BoundConfig) -> Result<Report> {
    match cmd {
        BoundCmd::Ci(inputs) => Ok(bound_report(bound_ci(&ci_polytopes(inputs)?, cfg)?)),
        BoundCmd::General { inputs, delta } => {
            Ok(bound_report(bound_general(&ci_polytopes(inputs)?, read_polytope(delta)?, cfg)?))
        }
        BoundCmd::Kushnirenko { delta, k } => Ok(bound_report(bound_kushnirenko(read_polytope(delta)?, *k, cfg)?)),
        BoundCmd::Degree { inputs, delta } => {
            Ok(bound_report(bound_reduction_degree(&ci_polytopes(inputs)?, read_polytope(delta)?, cfg)?))
        }
        BoundCmd::Simple { n, l, k, d_x, d_s, m } => {
            let mut r = bound_degree_simple(*n, *l, *k, *d_x, *d_s, cfg)?;
            if let Some(m) = m {
                r = r.with_hp_comparison(bound_hp(*d_x, *d_s, *m, *l as u32)?);
            }
            Ok(bound_report(r))
        }
        BoundCmd::Hp { deg_x, deg_s, m, l } => Ok(Report::from_json(json!({
            "statement": "deg(X)^(l 2^(ml)) deg(S)^(2^(ml)-1)",
            "params": { "deg_X": deg_x, "deg_S": deg_s, "m": m, "l": l },
            "bound": bound_hp(*deg_x, *deg_s, *m, *l)?.to_string(),
        }))),
    }
}

fn str_of(x: &BigInt) -> String {
    x.to_string()
}

fn app_cmd(cmd: &AppCmd, cli: &Cli) -> Result<Report> {
    let cfg = config(cli, GammaVariant::Theorem12);
    let e = cfg.e;
    let json = match cmd {
        AppCmd::Semiabelian { big_n, n, r, t, d_a, d_omega, d_x } => {
            let p = SemiAbelianParams { big_n: *big_n, n: *n, r: *r, t: *t, d_a: *d_a, d_omega: *d_omega, d_x: *d_x };
            let bound = semiabelian_bound(&p, e)?;
            let chain = semiabelian_bound_proof_chain(&p, e)?;
            json!({
                "statement": "F_{N,n,r} t d_omega^(Nr) d_X^n",
                "params": p.to_json(),
                "config": { "e_variant": e.as_str() },
                "s": p.s(),
                "k": p.big_n - p.n,
                "F": f_const(&p, e)?.to_string(),
                "bound": bound.to_string(),
                "mixed_volume_check": chain.to_string(),
                "consistent": bound == chain,
                "note": "N(r+1)! is read as (N(r+1))!",
            })
        }
        AppCmd::Torus { n, r, volume } | AppCmd::Torus2 { n, r, volume } => {
            let vol = volume_of(volume)?;
            let lattice = matches!(cmd, AppCmd::Torus2 { .. });
            let base = torus_bound(*n, *r, &vol, e)?;
            let check = torus_via_semiabelian(*n, *r, &vol, e)?;
            let bound = if lattice { torus_lattice_bound(*n, *r, &vol, e)? } else { base.clone() };
            json!({
                "statement": if lattice { "n(2r+1) F_{2n,n,r} 2^(n(2r+1)) Vol(D)" } else { "F_{2n,n,r} 2^(n(2r+1)) Vol(D)" },
                "params": { "n": n, "r": r, "volume": vol.to_string() },
                "config": { "e_variant": e.as_str() },
                "bound": bound.to_string(),
                "semiabelian_specialization": check.to_string(),
                "consistent": check == base,
            })
        }
        AppCmd::TorusDim2 { r, d, delta } => {
            let input = match (d, delta) {
                (Some(d), _) => Dim2Input::Degree(*d),
                (None, Some(p)) => Dim2Input::Polygon(read_polytope(p)?),
                (None, None) => return Err(Error::Input("give --d or --delta".into())),
            };
            let b = torus_dim2_bounds(*r, &input, e)?;
            json!({
                "statement": "d^(r 2^r) (r+1)^(2(2^r+1)) against F_{4,2,r} 2^(4r+2) Vol(D)",
                "params": { "r": r, "d": b.degree, "volume": b.volume.to_string() },
                "config": { "e_variant": e.as_str() },
                "baseline": str_of(&b.baseline),
                "improved": b.improved.to_string(),
            })
        }
        AppCmd::Isogeny { alpha, exact_gamma } => {
            let alpha = MobiusMap::parse(alpha)?;
            let variant = config(cli, GammaVariant::Refined).gamma;
            let r = isogeny_bound(&alpha, variant, *exact_gamma)?;
            return Ok(Report { text: r.to_text(), json: r.to_json() });
        }
        AppCmd::IsogenyDegree { n, d, m } => {
            let r = isogeny_degree_bound(*n, *d, *m, &cfg)?;
            let json = r.to_json();
            let mut text = r.report.to_text();
            text.push_str(&format!("  G_{} = {}\n  baseline (m = {}) = {}\n", r.n, r.g_n, r.m, r.baseline));
            return Ok(Report { json, text });
        }
        AppCmd::FsBaseline { n, m, deg_v } => {
            let b = fs_baselines(*n, *m, *deg_v)?;
            json!({
                "statement": "2^24 36^7 and (2^n deg V)^(3 2^(3m)) 6^(2^(3m)-1)",
                "params": { "n": n, "m": m, "deg_V": deg_v },
                "point_count": str_of(&b.point_count),
                "corollary": str_of(&b.corollary),
            })
        }
    };
    Ok(Report::from_json(json))
}
