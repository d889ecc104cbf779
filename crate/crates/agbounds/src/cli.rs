//! Command line front end.  Every subcommand prints a human readable result
//! by default and a JSON envelope {command, inputs, result, witness,
//! timing_ms} with `--json`.  Exit status: 0 on success, 1 when a bound or
//! procedure reports itself inapplicable or failed, 2 on usage errors.

use crate::bounds::{self, StarStrategy, StepBound, Witness};
use crate::codes::{self, HermitianCodes, LinearCode};
use crate::curve::{DivClass, LatticeDivisor, NumericalSemigroup, Point, TwoPointCurve};
use crate::decoder::{MajorityDecoder, StepDecoder};
use crate::delta;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "agbounds",
    version,
    about = "Distance bounds, codes and decoders for curves with two distinguished points"
)]
struct Cli {
    /// Emit a JSON envelope instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct CurveArg {
    /// Curve: hermitian:q, suzuki:q0, or file:path with a profile
    #[arg(long)]
    curve: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Show or validate a curve profile
    Profile {
        #[command(subcommand)]
        action: ProfileCmd,
    },
    /// Dimension of L(kP + lQ)
    Dim {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "A", value_name = "k,l", allow_hyphen_values = true)]
        a: String,
    },
    /// Gamma ideal membership of kP + lQ at both points
    Gamma {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "A", value_name = "k,l", allow_hyphen_values = true)]
        a: String,
    },
    /// Delta set enumeration and counting
    Delta {
        #[command(subcommand)]
        action: DeltaCmd,
    },
    /// Discrepancy worksheet tables
    Table {
        #[command(subcommand)]
        action: TableCmd,
    },
    /// Lower bounds for minimum and coset distances
    Bound {
        #[command(subcommand)]
        method: BoundCmd,
    },
    /// Concrete codes on Hermitian curves over GF(q^2)
    Code {
        #[command(subcommand)]
        action: CodeCmd,
    },
    /// Secret sharing access structures from code extensions
    Ss {
        #[command(subcommand)]
        action: SsCmd,
    },
    /// Majority coset decoding
    Decode {
        #[command(subcommand)]
        action: DecodeCmd,
    },
    /// Exhaustive distances against every applicable bound, CSV rows
    Sweep {
        /// Field parameter; the oracle is exhaustive and needs q = 2
        #[arg(long)]
        q: i64,
        #[arg(long, value_name = "lo..hi", allow_hyphen_values = true)]
        deg: Option<String>,
        /// Write CSV here instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum ProfileCmd {
    /// Print genus, period and discrepancy degrees
    Show {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Re-check the profile invariants
    Validate {
        #[command(flatten)]
        curve: CurveArg,
    },
}

#[derive(Subcommand)]
enum DeltaCmd {
    /// Summary of Delta_pt(C): total size and per-line counts
    Set {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value = "P")]
        point: String,
    },
    /// Elements of Delta_pt(C) on the line through a base divisor
    Line {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "base", value_name = "k,l", allow_hyphen_values = true, default_value = "0,0")]
        base: String,
        #[arg(long, default_value = "P")]
        point: String,
    },
    /// Size of a line, or of its lower/upper part
    Count {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "base", value_name = "k,l", allow_hyphen_values = true, default_value = "0,0")]
        base: String,
        #[arg(long, default_value = "P")]
        point: String,
        /// Count indices i <= 0 only
        #[arg(long, conflicts_with = "ge")]
        le: bool,
        /// Count indices i >= 1 only
        #[arg(long)]
        ge: bool,
    },
}

#[derive(Subcommand)]
enum TableCmd {
    /// K and N rows for Delta(B0+lQ, C0+iP+jQ+Q) minus Delta(B0+lQ, C0+iP+jQ)
    Kn {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, value_name = "lo..hi", allow_hyphen_values = true)]
        j: String,
        #[arg(long = "B0", value_name = "k,l", allow_hyphen_values = true, default_value = "0,0")]
        b0: String,
        #[arg(long = "C0", value_name = "k,l", allow_hyphen_values = true, default_value = "0,0")]
        c0: String,
    },
    /// K+/N+ and K-/N- rows comparing delta sets as the base moves up
    Kpm {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long, value_name = "lo..hi", allow_hyphen_values = true)]
        l: String,
        #[arg(long = "B0", value_name = "k,l", allow_hyphen_values = true, default_value = "0,0")]
        b0: String,
        #[arg(long = "C0", value_name = "k,l", allow_hyphen_values = true, default_value = "0,0")]
        c0: String,
    },
    /// Partition of {-2g, ..., 4g-1} into six parts of size g
    #[command(name = "6g")]
    SixG {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "B0", value_name = "k,l", allow_hyphen_values = true, default_value = "0,0")]
        b0: String,
        #[arg(long = "C0", value_name = "k,l", allow_hyphen_values = true, default_value = "0,0")]
        c0: String,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Designed distance deg C
    Goppa {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
    },
    /// Floor bound from K + C = A + B + Z with L(A+Z) = L(A), L(B+Z) = L(B)
    Floor {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "A", value_name = "k,l", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", value_name = "k,l", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "Z", value_name = "k,l", allow_hyphen_values = true)]
        z: String,
    },
    /// Decomposition bound for codes from K + C = A + B + Z
    #[command(name = "abz-code")]
    AbzCode {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "A", value_name = "k,l", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", value_name = "k,l", allow_hyphen_values = true)]
        b: String,
    },
    /// Iterated coset bound with the largest-line step
    Order {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
    },
    /// Decomposition bound for cosets, A derived from B and Z
    #[command(name = "abz-coset")]
    AbzCoset {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "B", value_name = "k,l", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "Z", value_name = "k,l", allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "P")]
        point: String,
    },
    /// Longest chain in the delta set
    Chain {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value = "P")]
        point: String,
    },
    /// Set-size bound for one-point codes on the curve's semigroup
    #[command(name = "feng-rao")]
    FengRao {
        #[command(flatten)]
        curve: CurveArg,
        /// dual: evaluation code duals; canonical: divisor K + P + rho P
        #[arg(long)]
        kind: String,
        #[arg(long, allow_negative_numbers = true)]
        rho: i64,
    },
    /// Closed forms for C = dH - aP - bQ on the Hermitian curve
    #[command(name = "hermitian-closed")]
    HermitianClosed {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
    /// Iterated coset bound with the best of the line, decomposition and
    /// chain steps
    Best {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long = "C", value_name = "k,l", allow_hyphen_values = true)]
        c: String,
        /// Recursion depth that uses the rich step before falling back
        #[arg(long, default_value_t = 1)]
        depth: i64,
        /// Largest multiplicity tried for Z
        #[arg(long, default_value_t = 64)]
        z_cap: i64,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// Field parameter: the curve y^q + y = x^(q+1) over GF(q^2)
    #[arg(long)]
    q: i64,
    #[arg(long = "G", value_name = "a,b", allow_hyphen_values = true)]
    g: String,
    /// omega: C_Omega(D, G); eval: C_L(D, G)
    #[arg(long, default_value = "omega")]
    family: String,
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Dimensions and generator matrix
    Build {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Exhaustive minimum distance
    Distance {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Exhaustive coset distance of code(G) over its subcode at G +/- P
    #[command(name = "coset-distance")]
    CosetDistance {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Exhaustive distance of C_Omega(D, G) against every applicable bound
    #[command(name = "verify-bounds")]
    VerifyBounds {
        #[arg(long)]
        q: i64,
        #[arg(long = "G", value_name = "a,b", allow_hyphen_values = true)]
        g: String,
    },
}

#[derive(Subcommand)]
enum SsCmd {
    /// Qualified sets of the scheme on a codimension-one extension
    #[command(name = "access-structure")]
    AccessStructure {
        #[arg(long)]
        q: i64,
        #[arg(long = "G", value_name = "a,b", allow_hyphen_values = true)]
        g: String,
        /// omega: shares from C_Omega(D,G-P)/C_Omega(D,G); eval: from
        /// C_L(D,G)/C_L(D,G-P)
        #[arg(long, default_value = "omega")]
        side: String,
    },
}

#[derive(Subcommand)]
enum DecodeCmd {
    /// Chain and pairing vectors for one step C_Omega(D,G-P)/C_Omega(D,G)
    #[command(name = "witness-build")]
    WitnessBuild {
        #[arg(long)]
        q: i64,
        #[arg(long = "G", value_name = "a,b", allow_hyphen_values = true)]
        g: String,
    },
    /// One majority vote on a received word
    Step {
        #[arg(long)]
        q: i64,
        #[arg(long = "G", value_name = "a,b", allow_hyphen_values = true)]
        g: String,
        ///

        /// Received word, comma separated field elements
        #[arg(long)]
        y: String,
    },
    /// Full decoding of C_Omega(D, G) by coset peeling
    Full {
        #[arg(long)]
        q: i64,
        #[arg(long = "G", value_name = "a,b", allow_hyphen_values = true)]
        g: String,
        /// Decoding radius
        #[arg(long)]
        t: i64,
        #[arg(long)]
        y: String,
    },
}

enum Failure {
    Usage(String),
    /// The computation ran and reports a negative verdict.
    Outcome { result: Value, text: String },
}

struct Rendered {
    command: &'static str,
    inputs: Value,
    result: Value,
    witness: Option<Value>,
    text: String,
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Prints without panicking when stdout is a closed pipe.
fn emit(s: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{s}");
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(cli.command) {
        Ok(r) => {
            if cli.json {
                emit(json!({
                    "command": r.command,
                    "inputs": r.inputs,
                    "result": r.result,
                    "witness": r.witness,
                    "timing_ms": start.elapsed().as_secs_f64() * 1e3,
                }));
            } else {
                emit(&r.text);
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Outcome { result, text }) => {
            if cli.json {
                emit(json!({
                    "result": result,
                    "timing_ms": start.elapsed().as_secs_f64() * 1e3,
                }));
            } else {
                emit(&text);
            }
            1
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn parse_curve(spec: &str) -> Result<TwoPointCurve, Failure> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("curve {spec:?} is not kind:value")))?;
    let num = || {
        arg.parse::<i64>()
            .map_err(|_| Failure::Usage(format!("curve parameter {arg:?} is not an integer")))
    };
    match kind {
        "hermitian" => TwoPointCurve::hermitian(num()?)
            .map_err(|e| Failure::Usage(format!("hermitian:{arg}: {e}"))),
        "suzuki" => {
            TwoPointCurve::suzuki(num()?).map_err(|e| Failure::Usage(format!("suzuki:{arg}: {e}")))
        }
        "file" => {
            let text = std::fs::read_to_string(arg)
                .map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))?;
            TwoPointCurve::from_profile_text(&text)
                .map_err(|e| Failure::Usage(format!("{arg}: {e}")))
        }
        _ => usage(format!("unknown curve kind {kind:?}"))?,
    }
}

fn parse_semigroup(spec: &str) -> Result<NumericalSemigroup, Failure> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("curve {spec:?} is not kind:value")))?;
    let num: i64 = arg
        .parse()
        .map_err(|_| Failure::Usage(format!("curve parameter {arg:?} is not an integer")))?;
    match kind {
        "hermitian" => {
            NumericalSemigroup::hermitian(num).map_err(|e| Failure::Usage(e.to_string()))
        }
        "suzuki" => NumericalSemigroup::suzuki(num).map_err(|e| Failure::Usage(e.to_string())),
        _ => usage(format!(
            "the semigroup bound needs a named curve, not {kind:?}"
        ))?,
    }
}

fn parse_pair(s: &str) -> Result<LatticeDivisor, Failure> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::Usage(format!("divisor {s:?} is not k,l")))?;
    match (a.trim().parse(), b.trim().parse()) {
        (Ok(p), Ok(q)) => Ok(LatticeDivisor::new(p, q)),
        _ => usage(format!("divisor {s:?} is not a pair of integers")),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Failure::Usage(format!("range {s:?} is not lo..hi")))?;
    match (lo.trim().parse::<i64>(), hi.trim().parse::<i64>()) {
        (Ok(l), Ok(h)) if l <= h => Ok((l, h)),
        (Ok(_), Ok(_)) => usage(format!("range {s:?} is empty")),
        _ => usage(format!("range {s:?} is not a pair of integers")),
    }
}

fn parse_point(s: &str) -> Result<Point, Failure> {
    match s {
        "P" | "p" => Ok(Point::P),
        "Q" | "q" => Ok(Point::Q),
        _ => usage(format!("point {s:?} is not P or Q")),
    }
}

fn parse_word(field_size: usize, s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(v) if v < field_size => Ok(v),
            _ => usage(format!("symbol {t:?} is not in 0..{field_size}")),
        })
        .collect()
}

fn class_of(c: &TwoPointCurve, d: LatticeDivisor) -> DivClass {
    c.lattice_class(d)
}

fn hermitian_codes(q: i64) -> Result<HermitianCodes, Failure> {
    HermitianCodes::new(q).map_err(Failure::Usage)
}

fn show_class(c: DivClass) -> String {
    format!("[deg {} res {}]", c.deg, c.res)
}

fn show_lattice(d: LatticeDivisor) -> String {
    format!("{}P{:+}Q", d.at_p, d.at_q)
}

fn bound_json(r: &bounds::BoundResult) -> Value {
    json!({
        "method": r.method,
        "applicable": true,
        "value": r.value,
        "excluded": r.excluded,
    })
}

fn bound_text(r: &bounds::BoundResult) -> String {
    let excl = if r.excluded.is_empty() {
        String::new()
    } else {
        format!(
            "  (D avoids {})",
            r.excluded
                .iter()
                .map(|p| format!("{p:?}"))
                .collect::<Vec<_>>()
                .join(", ")
        )
    };
    format!("{}: {}{}", r.method, r.value, excl)
}

fn inapplicable(e: bounds::Inapplicable) -> Failure {
    Failure::Outcome {
        result: json!({"method": e.method, "applicable": false, "reason": e.reason}),
        text: format!("{} inapplicable: {}", e.method, e.reason),
    }
}

fn witness_json(w: &Option<Witness>) -> Option<Value> {
    w.as_ref().map(|w| serde_json::to_value(w).unwrap())
}

fn bound_rendered(
    command: &'static str,
    inputs: Value,
    outcome: Result<bounds::BoundResult, bounds::Inapplicable>,
) -> Result<Rendered, Failure> {
    let r = outcome.map_err(inapplicable)?;
    let mut text = bound_text(&r);
    if let Some(Witness::Chain(ch)) = &r.witness {
        if let (Some(first), Some(last)) = (ch.first(), ch.last()) {
            text.push_str(&format!(
                "\nchain: {} divisors, {} to {}",
                ch.len(),
                show_lattice(*first),
                show_lattice(*last)
            ));
        }
    }
    if let Some(Witness::Decomposition { a, b, z }) = &r.witness {
        text.push_str(&format!(
            "\nA = {}, B = {}, Z = {}",
            show_class(*a),
            show_class(*b),
            show_lattice(*z)
        ));
    }
    Ok(Rendered {
        command,
        inputs,
        result: bound_json(&r),
        witness: witness_json(&r.witness),
        text,
    })
}

fn dispatch(cmd: Cmd) -> Result<Rendered, Failure> {
    match cmd {
        Cmd::Profile { action } => profile(action),
        Cmd::Dim { curve, a } => {
            let c = parse_curve(&curve.curve)?;
            let d = parse_pair(&a)?;
            let dim = c.dim_l_lattice(d);
            Ok(Rendered {
                command: "dim",
                inputs: json!({"curve": curve.curve, "A": d}),
                result: json!(dim),
                witness: None,
                text: dim.to_string(),
            })
        }
        Cmd::Gamma { curve, a } => {
            let c = parse_curve(&curve.curve)?;
            let d = parse_pair(&a)?;
            let in_p = c.in_gamma_p(d);
            let in_q = c.in_gamma_q(d);
            Ok(Rendered {
                command: "gamma",
                inputs: json!({"curve": curve.curve, "A": d}),
                result: json!({"gamma_p": in_p, "gamma_q": in_q}),
                witness: None,
                text: format!("gamma_P: {in_p}\ngamma_Q: {in_q}"),
            })
        }
        Cmd::Delta { action } => delta_cmd(action),
        Cmd::Table { action } => table_cmd(action),
        Cmd::Bound { method } => bound_cmd(method),
        Cmd::Code { action } => code_cmd(action),
        Cmd::Ss { action } => ss_cmd(action),
        Cmd::Decode { action } => decode_cmd(action),
        Cmd::Sweep { q, deg, out } => sweep_cmd(q, deg, out),
    }
}

fn profile(action: ProfileCmd) -> Result<Rendered, Failure> {
    match action {
        ProfileCmd::Show { curve } => {
            let c = parse_curve(&curve.curve)?;
            let text = c.to_profile_text();
            Ok(Rendered {
                command: "profile show",
                inputs: json!({"curve": curve.curve}),
                result: json!({
                    "label": c.label(),
                    "genus": c.genus(),
                    "period": c.period(),
                    "disc_p": c.disc_p(),
                    "disc_q": c.disc_q(),
                }),
                witness: None,
                text,
            })
        }
        ProfileCmd::Validate { curve } => {
            let c = parse_curve(&curve.curve)?;
            let issues = crate::curve::validate_profile(c.genus(), c.period(), c.disc_p());
            if issues.is_empty() {
                Ok(Rendered {
                    command: "profile validate",
                    inputs: json!({"curve": curve.curve}),
                    result: json!({"valid": true}),
                    witness: None,
                    text: "profile is valid".into(),
                })
            } else {
                Err(Failure::Outcome {
                    result: json!({"valid": false, "issues": issues}),
                    text: issues.join("\n"),
                })
            }
        }
    }
}

fn delta_cmd(action: DeltaCmd) -> Result<Rendered, Failure> {
    match action {
        DeltaCmd::Set { curve, c, point } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            let pt = parse_point(&point)?;
            let counts = delta::line_counts(&cv, pt, thr);
            let total: i64 = counts.iter().map(|&(_, n)| n).sum();
            let lines: Vec<Value> = counts
                .iter()
                .map(|(base, n)| json!({"base": base, "count": n}))
                .collect();
            let mut text = format!("size: {total}\n");
            for (base, n) in &counts {
                text.push_str(&format!("line {}: {}\n", show_class(*base), n));
            }
            Ok(Rendered {
                command: "delta set",
                inputs: json!({"curve": curve.curve, "C": thr, "point": point}),
                result: json!({"size": total, "lines": lines}),
                witness: None,
                text: text.trim_end().into(),
            })
        }
        DeltaCmd::Line {
            curve,
            c,
            base,
            point,
        } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            let b = parse_pair(&base)?;
            let pt = parse_point(&point)?;
            let indices = delta::line_indices(&cv, pt, thr, cv.lattice_class(b));
            let elements: Vec<LatticeDivisor> = indices
                .iter()
                .map(|&i| match pt {
                    Point::P => LatticeDivisor::new(b.at_p + i, b.at_q),
                    Point::Q => LatticeDivisor::new(b.at_p, b.at_q + i),
                })
                .collect();
            let text = format!(
                "count: {}\nindices: {:?}\nelements: {}",
                indices.len(),
                indices,
                elements
                    .iter()
                    .map(|d| show_lattice(*d))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            Ok(Rendered {
                command: "delta line",
                inputs: json!({"curve": curve.curve, "C": thr, "base": b, "point": point}),
                result: json!({"indices": indices, "elements": elements}),
                witness: None,
                text,
            })
        }
        DeltaCmd::Count {
            curve,
            c,
            base,
            point,
            le,
            ge,
        } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            let b = cv.lattice_class(parse_pair(&base)?);
            let pt = parse_point(&point)?;
            let n = if le {
                delta::count_le(&cv, pt, thr, b)
            } else if ge {
                delta::count_ge(&cv, pt, thr, b)
            } else {
                delta::line_count(&cv, pt, thr, b)
            };
            Ok(Rendered {
                command: "delta count",
                inputs: json!({
                    "curve": curve.curve, "C": thr, "base": b, "point": point,
                    "le": le, "ge": ge,
                }),
                result: json!(n),
                witness: None,
                text: n.to_string(),
            })
        }
    }
}

fn table_cmd(action: TableCmd) -> Result<Rendered, Failure> {
    match action {
        TableCmd::Kn {
            curve,
            l,
            i,
            j,
            b0,
            c0,
        } => {
            let cv = parse_curve(&curve.curve)?;
            let b0c = class_of(&cv, parse_pair(&b0)?);
            let c0c = class_of(&cv, parse_pair(&c0)?);
            let (lo, hi) = parse_range(&j)?;
            let t = delta::step_table(&cv, b0c, c0c, l, i, lo..=hi);
            Ok(Rendered {
                command: "table kn",
                inputs: json!({
                    "curve": curve.curve, "l": l, "i": i, "j": [lo, hi],
                    "B0": b0c, "C0": c0c,
                }),
                result: serde_json::to_value(&t).unwrap(),
                witness: None,
                text: t.render(),
            })
        }
        TableCmd::Kpm {
            curve,
            i,
            j,
            l,
            b0,
            c0,
        } => {
            let cv = parse_curve(&curve.curve)?;
            let b0c = class_of(&cv, parse_pair(&b0)?);
            let c0c = class_of(&cv, parse_pair(&c0)?);
            let (lo, hi) = parse_range(&l)?;
            let up = delta::up_table(&cv, b0c, c0c, i, j, lo..=hi);
            let down = delta::down_table(&cv, b0c, c0c, i, j, lo..=hi);
            Ok(Rendered {
                command: "table kpm",
                inputs: json!({
                    "curve": curve.curve, "i": i, "j": j, "l": [lo, hi],
                    "B0": b0c, "C0": c0c,
                }),
                result: json!({
                    "up": serde_json::to_value(&up).unwrap(),
                    "down": serde_json::to_value(&down).unwrap(),
                }),
                witness: None,
                text: format!("(K+/N+)\n{}\n\n(K-/N-)\n{}", up.render(), down.render()),
            })
        }
        TableCmd::SixG { curve, b0, c0 } => {
            let cv = parse_curve(&curve.curve)?;
            let b0c = class_of(&cv, parse_pair(&b0)?);
            let c0c = class_of(&cv, parse_pair(&c0)?);
            if b0c.deg != 0 || c0c.deg != 0 {
                return usage("the 6g partition needs degree-zero classes B0 and C0");
            }
            let p = delta::partition_6g(&cv, b0c, c0c);
            let text = format!(
                "N1 = {:?}\nG1 = {:?}\nN2 = {:?}\nG2 = {:?}\nN3 = {:?}\nG3 = {:?}",
                p.n1, p.g1, p.n2, p.g2, p.n3, p.g3
            );
            Ok(Rendered {
                command: "table 6g",
                inputs: json!({"curve": curve.curve, "B0": b0c, "C0": c0c}),
                result: serde_json::to_value(&p).unwrap(),
                witness: None,
                text,
            })
        }
    }
}

fn bound_cmd(method: BoundCmd) -> Result<Rendered, Failure> {
    match method {
        BoundCmd::Goppa { curve, c } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            bound_rendered(
                "bound goppa",
                json!({"curve": curve.curve, "C": thr}),
                Ok(bounds::goppa(&cv, thr)),
            )
        }
        BoundCmd::Floor { curve, c, a, b, z } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            let ac = class_of(&cv, parse_pair(&a)?);
            let bc = class_of(&cv, parse_pair(&b)?);
            let zd = parse_pair(&z)?;
            bound_rendered(
                "bound floor",
                json!({"curve": curve.curve, "C": thr, "A": ac, "B": bc, "Z": zd}),
                bounds::floor(&cv, thr, ac, bc, zd),
            )
        }
        BoundCmd::AbzCode { curve, c, a, b } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            let ac = class_of(&cv, parse_pair(&a)?);
            let bc = class_of(&cv, parse_pair(&b)?);
            bound_rendered(
                "bound abz-code",
                json!({"curve": curve.curve, "C": thr, "A": ac, "B": bc}),
                bounds::abz_code(&cv, thr, ac, bc),
            )
        }
        BoundCmd::Order { curve, c } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            bound_rendered(
                "bound order",
                json!({"curve": curve.curve, "C": thr}),
                Ok(bounds::order_bound(&cv, thr)),
            )
        }
        BoundCmd::AbzCoset {
            curve,
            c,
            b,
            z,
            point,
        } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            let bc = class_of(&cv, parse_pair(&b)?);
            let zd = parse_pair(&z)?;
            let pt = parse_point(&point)?;
            bound_rendered(
                "bound abz-coset",
                json!({"curve": curve.curve, "C": thr, "B": bc, "Z": zd, "point": point}),
                bounds::abz_coset(&cv, pt, thr, bc, zd),
            )
        }
        BoundCmd::Chain { curve, c, point } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            let pt = parse_point(&point)?;
            bound_rendered(
                "bound chain",
                json!({"curve": curve.curve, "C": thr, "point": point}),
                Ok(bounds::chain_bound(&cv, pt, thr)),
            )
        }
        BoundCmd::FengRao { curve, kind, rho } => {
            let sg = parse_semigroup(&curve.curve)?;
            let k = match kind.as_str() {
                "dual" => bounds::FengRaoKind::Dual,
                "canonical" => bounds::FengRaoKind::Canonical,
                _ => usage(format!("kind {kind:?} is not dual or canonical"))?,
            };
            let value = bounds::feng_rao(&sg, k, rho);
            Ok(Rendered {
                command: "bound feng-rao",
                inputs: json!({"curve": curve.curve, "kind": kind, "rho": rho}),
                result: json!({"method": "feng-rao", "applicable": true, "value": value}),
                witness: None,
                text: format!("feng-rao: {value}"),
            })
        }
        BoundCmd::HermitianClosed { curve, d, a, b } => {
            let q = match curve.curve.split_once(':') {
                Some(("hermitian", arg)) => arg
                    .parse::<i64>()
                    .map_err(|_| Failure::Usage(format!("bad parameter {arg:?}")))?,
                _ => usage("closed forms need --curve hermitian:q")?,
            };
            let report = bounds::hermitian_report(q, d, a, b).map_err(inapplicable)?;
            let mut text = format!(
                "C = {}H - {}P - {}Q: deg {}, line counts {} / {}\n",
                d, a, b, report.deg, report.count, report.count_neg
            );
            for case in &report.cases {
                text.push_str(&format!(
                    "case {}: {} {}\n",
                    case.label,
                    case.value,
                    if case.exact { "(exact)" } else { "" }
                ));
            }
            Ok(Rendered {
                command: "bound hermitian-closed",
                inputs: json!({"curve": curve.curve, "d": d, "a": a, "b": b}),
                result: serde_json::to_value(&report).unwrap(),
                witness: None,
                text: text.trim_end().into(),
            })
        }
        BoundCmd::Best {
            curve,
            c,
            depth,
            z_cap,
        } => {
            let cv = parse_curve(&curve.curve)?;
            let thr = class_of(&cv, parse_pair(&c)?);
            let strategy = StarStrategy {
                step: StepBound::Best { z_cap },
                depth,
            };
            bound_rendered(
                "bound best",
                json!({"curve": curve.curve, "C": thr, "depth": depth, "z_cap": z_cap}),
                Ok(bounds::gamma_star_lower(&cv, thr, strategy)),
            )
        }
    }
}

fn build_code(codes: &HermitianCodes, family: &str, g: LatticeDivisor) -> Result<LinearCode, Failure> {
    match family {
        "omega" => Ok(codes.omega_code(g.at_p, g.at_q)),
        "eval" => Ok(codes.eval_code(g.at_p, g.at_q)),
        _ => usage(format!("family {family:?} is not omega or eval")),
    }
}

fn code_cmd(action: CodeCmd) -> Result<Rendered, Failure> {
    match action {
        CodeCmd::Build { code } => {
            let h = hermitian_codes(code.q)?;
            let g = parse_pair(&code.g)?;
            let lc = build_code(&h, &code.family, g)?;
            let rows: Vec<Vec<usize>> = (0..lc.k).map(|r| lc.gen.row(r).to_vec()).collect();
            Ok(Rendered {
                command: "code build",
                inputs: json!({"q": code.q, "G": g, "family": code.family}),
                result: json!({"label": lc.label, "n": lc.n, "k": lc.k, "generators": rows}),
                witness: None,
                text: format!("{}\nn = {}, k = {}", lc.label, lc.n, lc.k),
            })
        }
        CodeCmd::Distance { code } => {
            let h = hermitian_codes(code.q)?;
            let g = parse_pair(&code.g)?;
            let lc = build_code(&h, &code.family, g)?;
            match lc.min_distance() {
                Some(d) => Ok(Rendered {
                    command: "code distance",
                    inputs: json!({"q": code.q, "G": g, "family": code.family}),
                    result: json!({"n": lc.n, "k": lc.k, "distance": d}),
                    witness: None,
                    text: format!("[{}, {}] code, distance {}", lc.n, lc.k, d),
                }),
                None => Err(Failure::Outcome {
                    result: json!({"n": lc.n, "k": 0, "distance": Value::Null}),
                    text: "the code is zero; distance is undefined".into(),
                }),
            }
        }
        CodeCmd::CosetDistance { code } => {
            let h = hermitian_codes(code.q)?;
            let g = parse_pair(&code.g)?;
            let (big, small, pair) = match code.family.as_str() {
                "omega" => (
                    h.omega_code(g.at_p, g.at_q),
                    h.omega_code(g.at_p + 1, g.at_q),
                    "C_O(G) / C_O(G+P)",
                ),
                "eval" => (
                    h.eval_code(g.at_p, g.at_q),
                    h.eval_code(g.at_p - 1, g.at_q),
                    "C_L(G) / C_L(G-P)",
                ),
                other => usage(format!("family {other:?} is not omega or eval"))?,
            };
            match big.coset_distance(&small) {
                Some(d) => Ok(Rendered {
                    command: "code coset-distance",
                    inputs: json!({"q": code.q, "G": g, "family": code.family}),
                    result: json!({"pair": pair, "k_big": big.k, "k_small": small.k, "distance": d}),
                    witness: None,
                    text: format!("{pair}: {d}"),
                }),
                None => Err(Failure::Outcome {
                    result: json!({"pair": pair, "distance": Value::Null}),
                    text: "the codes coincide; no coset is nontrivial".into(),
                }),
            }
        }
        CodeCmd::VerifyBounds { q, g } => {
            let h = hermitian_codes(q)?;
            let gd = parse_pair(&g)?;
            let lc = h.omega_code(gd.at_p, gd.at_q);
            let Some(d) = lc.min_distance() else {
                return Err(Failure::Outcome {
                    result: json!({"n": lc.n, "k": 0}),
                    text: "the code is zero; nothing to verify".into(),
                });
            };
            let thr = h
                .curve
                .class_sub(h.curve.lattice_class(gd), h.curve.canonical_class());
            let checks = [
                bounds::goppa(&h.curve, thr),
                bounds::order_bound(&h.curve, thr),
                bounds::chain_bound(&h.curve, Point::P, thr),
                bounds::chain_bound(&h.curve, Point::Q, thr),
            ];
            let mut rows = Vec::new();
            let mut text = format!("[{}, {}] code, distance {}\n", lc.n, lc.k, d);
            let mut all_ok = true;
            for r in &checks {
                let ok = d >= r.value;
                all_ok &= ok;
                rows.push(json!({"method": r.method, "value": r.value, "ok": ok}));
                text.push_str(&format!(
                    "{}: {} {}\n",
                    r.method,
                    r.value,
                    if ok { "ok" } else { "VIOLATED" }
                ));
            }
            let result = json!({"n": lc.n, "k": lc.k, "distance": d, "bounds": rows});
            if all_ok {
                Ok(Rendered {
                    command: "code verify-bounds",
                    inputs: json!({"q": q, "G": gd}),
                    result,
                    witness: None,
                    text: text.trim_end().into(),
                })
            } else {
                Err(Failure::Outcome {
                    result,
                    text: text.trim_end().into(),
                })
            }
        }
    }
}

fn ss_cmd(action: SsCmd) -> Result<Rendered, Failure> {
    let SsCmd::AccessStructure { q, g, side } = action;
    let h = hermitian_codes(q)?;
    let gd = parse_pair(&g)?;
    if h.n() > 16 {
        return usage("access structures enumerate subsets; use q = 2");
    }
    let (big, small) = match side.as_str() {
        "omega" => (
            h.omega_code(gd.at_p - 1, gd.at_q),
            h.omega_code(gd.at_p, gd.at_q),
        ),
        "eval" => (
            h.eval_code(gd.at_p, gd.at_q),
            h.eval_code(gd.at_p - 1, gd.at_q),
        ),
        other => usage(format!("side {other:?} is not omega or eval"))?,
    };
    if big.k != small.k + 1 {
        return Err(Failure::Outcome {
            result: json!({"applicable": false,
                "reason": format!("extension has codimension {}", big.k - small.k)}),
            text: "the extension is not of codimension one".into(),
        });
    }
    let qual = codes::qualified_sets(&big, &small);
    let n = h.n();
    let mut by_size_q = vec![0u64; n + 1];
    let mut by_size_u = vec![0u64; n + 1];
    for (mask, &ok) in qual.iter().enumerate() {
        let sz = (mask as u32).count_ones() as usize;
        if ok {
            by_size_q[sz] += 1;
        } else {
            by_size_u[sz] += 1;
        }
    }
    let smallest = codes::smallest_qualified(&qual);
    let largest = codes::largest_unqualified(&qual);
    let opt = |v: Option<u32>| v.map_or("none".to_string(), |s| s.to_string());
    let text = format!(
        "{} participants, shares from {}\nsmallest qualified size: {}\nlargest unqualified size: {}\nqualified by size: {:?}\nunqualified by size: {:?}",
        n,
        big.label,
        opt(smallest),
        opt(largest),
        by_size_q,
        by_size_u
    );
    Ok(Rendered {
        command: "ss access-structure",
        inputs: json!({"q": q, "G": gd, "side": side}),
        result: json!({
            "n": n,
            "smallest_qualified": smallest,
            "largest_unqualified": largest,
            "qualified_by_size": by_size_q,
            "unqualified_by_size": by_size_u,
        }),
        witness: None,
        text,
    })
}

fn decode_cmd(action: DecodeCmd) -> Result<Rendered, Failure> {
    match action {
        DecodeCmd::WitnessBuild { q, g } => {
            let h = hermitian_codes(q)?;
            let gd = parse_pair(&g)?;
            let step = StepDecoder::new(&h, gd).map_err(|e| Failure::Outcome {
                result: json!({"applicable": false, "reason": e}),
                text: e.to_string(),
            })?;
            Ok(Rendered {
                command: "decode witness-build",
                inputs: json!({"q": q, "G": gd}),
                result: json!({"w": step.w, "extension":
                    format!("C_O({}) / C_O({})", show_lattice(LatticeDivisor::new(gd.at_p - 1, gd.at_q)), show_lattice(gd))}),
                witness: None,
                text: format!(
                    "extension C_O(G-P)/C_O(G) at G = {}: chain length {}",
                    show_lattice(gd),
                    step.w
                ),
            })
        }
        DecodeCmd::Step { q, g, y } => {
            let h = hermitian_codes(q)?;
            let gd = parse_pair(&g)?;
            let word = parse_word(h.field.size(), &y)?;
            if word.len() != h.n() {
                return usage(format!("y has {} symbols, the code has {}", word.len(), h.n()));
            }
            let step = StepDecoder::new(&h, gd).map_err(|e| Failure::Outcome {
                result: json!({"applicable": false, "reason": e}),
                text: e,
            })?;
            let out = step.decode(&word).map_err(|e| Failure::Outcome {
                result: json!({"decoded": false, "reason": e}),
                text: e,
            })?;
            Ok(Rendered {
                command: "decode step",
                inputs: json!({"q": q, "G": gd, "y": word}),
                result: json!({
                    "tag": out.tag,
                    "margin": out.margin,
                    "votes": out.votes.iter().map(|(v, n)| json!([v, n])).collect::<Vec<_>>(),
                    "coset_rep": out.coset_rep,
                }),
                witness: None,
                text: format!(
                    "tag {} with margin {}; coset representative {:?}",
                    out.tag, out.margin, out.coset_rep
                ),
            })
        }
        DecodeCmd::Full { q, g, t, y } => {
            let h = hermitian_codes(q)?;
            let gd = parse_pair(&g)?;
            let word = parse_word(h.field.size(), &y)?;
            if word.len() != h.n() {
                return usage(format!("y has {} symbols, the code has {}", word.len(), h.n()));
            }
            let dec = MajorityDecoder::new(&h, gd, t).map_err(|e| Failure::Outcome {
                result: json!({"applicable": false, "reason": e}),
                text: e,
            })?;
            let out = dec.decode(&word).map_err(|e| Failure::Outcome {
                result: json!({"decoded": false, "reason": e}),
                text: e,
            })?;
            Ok(Rendered {
                command: "decode full",
                inputs: json!({"q": q, "G": gd, "t": t, "y": word}),
                result: json!({
                    "codeword": out.codeword,
                    "error": out.error,
                    "margins": out.margins,
                }),
                witness: None,
                text: format!(
                    "codeword {:?}\nerror    {:?}\nmargins  {:?}",
                    out.codeword, out.error, out.margins
                ),
            })
        }
    }
}

fn sweep_cmd(q: i64, deg: Option<String>, out: Option<String>) -> Result<Rendered, Failure> {
    if q != 2 {
        return usage("the exhaustive oracle is only feasible for q = 2");
    }
    let h = hermitian_codes(q)?;
    let curve = &h.curve;
    let gmax = 2 * curve.genus();
    let (lo, hi) = match deg {
        Some(s) => parse_range(&s)?,
        None => (-gmax, h.n() as i64 + gmax),
    };
    let m = curve.period();
    let mut csv = String::from("a,b,deg,n,k,distance,goppa,order,chain_p,chain_q,ok\n");
    let mut rows = Vec::new();
    let mut all_ok = true;
    for d in lo..=hi {
        for b in 0..m {
            let g = LatticeDivisor::new(d - b, b);
            let lc = h.omega_code(g.at_p, g.at_q);
            let Some(dist) = lc.min_distance() else {
                continue;
            };
            let thr = curve.class_sub(curve.lattice_class(g), curve.canonical_class());
            let values = [
                bounds::goppa(curve, thr).value,
                bounds::order_bound(curve, thr).value,
                bounds::chain_bound(curve, Point::P, thr).value,
                bounds::chain_bound(curve, Point::Q, thr).value,
            ];
            let ok = values.iter().all(|&v| dist >= v);
            all_ok &= ok;
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                g.at_p, g.at_q, d, lc.n, lc.k, dist, values[0], values[1], values[2], values[3], ok
            ));
            rows.push(json!({
                "G": g, "n": lc.n, "k": lc.k, "distance": dist,
                "goppa": values[0], "order": values[1],
                "chain_p": values[2], "chain_q": values[3], "ok": ok,
            }));
        }
    }
    if let Some(path) = &out {
        std::fs::write(path, &csv).map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))?;
    }
    let rendered = Rendered {
        command: "sweep",
        inputs: json!({"q": q, "deg": [lo, hi], "out": out}),
        result: json!({"rows": rows, "all_ok": all_ok}),
        witness: None,
        text: if out.is_some() {
            format!("wrote {} rows", rows.len())
        } else {
            csv.trim_end().into()
        },
    };
    if all_ok {
        Ok(rendered)
    } else {
        Err(Failure::Outcome {
            result: rendered.result,
            text: "a bound exceeded an exhaustive distance".into(),
        })
    }
}
