// Copyright 2026 the qupauli authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line frontend.
//!
//! Every library operation is exposed as a subcommand reading matrices or
//! Pauli lists from a positional file (or stdin) and emitting a JSON report
//! on stdout. JSON is the machine contract — identical invocations produce
//! byte-identical output — and `--pretty` switches to an indented human
//! rendering of the same report. Reports that carry a witness (transform
//! matrices, solutions, generated sets) are re-verified before printing.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on parse/usage errors.

use std::fs;
use std::io::{Read as _, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::groups::{
    decompose_in_pair_basis, gram_schmidt_generating_set, identity_subgroup_generator,
    is_full_group, minimal_generating_set, near_minimal_generating_set, subgroup_order,
    center_of_pairs, MinGenStatus, DEFAULT_MIN_GEN_BUDGET,
};
use crate::normal_forms::{asnf, hnf, snf, solve_in_span};
use crate::oracle::{brute_max_clique, brute_max_pairs, enumerate_group, DEFAULT_ENUM_CAP};
use crate::pauli::{
    comm_phase, format_pauli, parse_pauli_list, pmul, ppow, PauliElement, PauliList,
};
use crate::relations::{
    achieve_relation, example_max_pairs, jordan_wigner_compose, lambda_matrix,
    max_noncomm_set_single_qudit, max_pairs_count, realize_commutation_matrix, rows_as_paulis,
    verify_noncomm_set, verify_pairs, PairCollection, RelationTuple,
};
use crate::zmatrix::{is_invertible, mat_mul, ExactMatrix, MatrixJson, Ring};
use crate::zring::Dimension;
use crate::{Error, Result};

/// Exit code for domain errors.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit code for parse and usage errors.
pub const EXIT_PARSE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "qupauli",
    version,
    about = "Exact computational algebra for the qudit Pauli group",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Globals {
    /// Qudit dimension d (required by Pauli subcommands).
    #[arg(long, global = true)]
    d: Option<u64>,
    /// Number of qudits; inferred from input when omitted.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Human-readable output instead of single-line JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallelizable searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Search budget / enumeration cap override.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of a matrix over Z or Z_d.
    Snf { input: Option<PathBuf> },
    /// Alternating Smith normal form of an alternating matrix over Z_d.
    Asnf { input: Option<PathBuf> },
    /// Howell normal form of a matrix over Z_d, with kernel.
    Hnf { input: Option<PathBuf> },
    /// Solve A·x = b over Z_d (input: matrix A, blank line, column b).
    Solve { input: Option<PathBuf> },
    /// Maximum collection of non-commuting pairs for the given d, n.
    MaxPairs,
    /// CSS pairs achieving prescribed commutator phases on minimal qudits.
    Achieve {
        /// Comma-separated commutator phases, e.g. `-f 3,5`.
        #[arg(short, long, value_delimiter = ',', required = true)]
        f: Vec<u64>,
    },
    /// Paulis realizing a prescribed alternating commutation matrix.
    Realize {
        /// File holding the commutation matrix (text or JSON).
        #[arg(long)]
        matrix: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Maximum pairwise non-commuting set on a single qudit.
    MaxSet,
    /// Check the non-commuting-pairs conditions (input: S block, T block).
    VerifyPairs { input: Option<PathBuf> },
    /// Check pairwise non-commutation of a set (input: one Pauli per line).
    VerifySet { input: Option<PathBuf> },
    /// Compose non-commuting sets on n and n' qudits (input: two blocks).
    JwCompose { input: Option<PathBuf> },
    /// Generator of the phase subgroup I_S of ⟨S⟩.
    IdentityGen { input: Option<PathBuf> },
    /// Near-minimal generating set (size r or r+1) of ⟨S⟩.
    NearMinGen { input: Option<PathBuf> },
    /// Minimal generating set search (honors --budget).
    MinGen { input: Option<PathBuf> },
    /// Gram-Schmidt generating set: non-commuting pairs plus central part.
    GramSchmidt {
        /// Drop redundant central generators.
        #[arg(long)]
        prune: bool,
        input: Option<PathBuf>,
    },
    /// Order of ⟨S⟩ by the exact formula.
    GroupOrder { input: Option<PathBuf> },
    /// Generators of the center of a pair-generated group (input: S, T).
    Center { input: Option<PathBuf> },
    /// Exponents of an element over a pair basis (input: S, T, element).
    Decompose { input: Option<PathBuf> },
    /// Whether pairs generate the full n-qudit Pauli group (input: S, T).
    IsFullGroup { input: Option<PathBuf> },
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact maximum-clique size of the single-qudit non-commutation graph.
    Clique,
    /// Enumerate ⟨S⟩ exhaustively (honors --budget as the element cap).
    Enumerate { input: Option<PathBuf> },
    /// Exhaustive maximum-pair-collection search for the given d, n.
    MaxPairs,
}

/// Run the CLI against `argv` (not including the program name is fine —
/// clap treats the first element as the binary name, so callers should pass
/// `["qupauli", ...]`), writing to the given streams. Returns the exit code.
pub fn run_to(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_PARSE
                }
            }
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            emit(&report, cli.globals.pretty, out);
            0
        }
        Err(e) => {
            let report = json!({ "error": error_name(&e), "message": e.to_string() });
            emit(&report, cli.globals.pretty, out);
            match e {
                Error::Parse { .. } => EXIT_PARSE,
                _ => EXIT_DOMAIN,
            }
        }
    }
}

/// Run against the given arguments with real stdout/stderr.
pub fn run(argv: &[String]) -> i32 {
    run_to(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Test helper: run and capture stdout/stderr as strings.
pub fn run_captured(argv: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_to(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

/// The error-report name of each library error.
fn error_name(e: &Error) -> &'static str {
    match e {
        Error::InvalidDimension(_) => "InvalidDimension",
        Error::ShapeMismatch(_) => "ShapeMismatch",
        Error::RingMismatch(_) => "RingMismatch",
        Error::NotSquare { .. } => "NotSquare",
        Error::OutOfRange { .. } => "OutOfRange",
        Error::NotAUnit { .. } => "NotAUnit",
        Error::NotAlternating(_) => "NotAlternating",
        Error::DimensionMismatch(_) => "DimensionMismatch",
        Error::Parse { .. } => "ParseError",
        Error::InvalidRelation(_) => "InvalidRelation",
        Error::InvalidScaling(_) => "InvalidScaling",
        Error::NotInvertible { .. } => "NotInvertible",
        Error::NotInSpan(_) => "NotInSpan",
        Error::NotPairs(_) => "NotPairs",
        Error::NotNonCommuting(_) => "NotNonCommuting",
        Error::CapExceeded { .. } => "CapExceeded",
        Error::TooLarge(_) => "TooLarge",
    }
}

// ---------------------------------------------------------------------------
// Input plumbing.
// ---------------------------------------------------------------------------

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("cannot read {}: {e}", p.display()),
        }),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse {
                    pos: 0,
                    msg: format!("cannot read stdin: {e}"),
                })?;
            Ok(buf)
        }
    }
}

fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let j: MatrixJson = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            pos: e.column().saturating_sub(1),
            msg: format!("invalid matrix JSON: {e}"),
        })?;
        ExactMatrix::from_json(&j)
    } else {
        ExactMatrix::parse_text(text)
    }
}

fn require_d(globals: &Globals) -> Result<Dimension> {
    let d = globals.d.ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "this subcommand requires --d".to_string(),
    })?;
    Dimension::new(d)
}

/// Split an input into blank-line-separated blocks of non-empty lines.
fn blocks(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push_str(line);
            cur.push('\n');
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Number of qudits implied by the first line of a Pauli-list block
/// (`w<j>` followed by one `X<a>Z<b>` factor per qudit).
fn infer_n(block: &str) -> Result<usize> {
    let first = block.lines().next().unwrap_or("");
    let factors = first.split_whitespace().count();
    if factors < 2 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected `w<j> X<a>Z<b> ...`, got {first:?}"),
        });
    }
    Ok(factors - 1)
}

fn parse_list(block: &str, dim: &Dimension, n_flag: Option<usize>) -> Result<PauliList> {
    let n = match n_flag {
        Some(n) => n,
        None => infer_n(block)?,
    };
    parse_pauli_list(block, dim, n)
}

fn parse_pair_blocks(text: &str, globals: &Globals) -> Result<PairCollection> {
    let dim = require_d(globals)?;
    let blocks = blocks(text);
    if blocks.len() != 2 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!(
                "expected two blank-line-separated blocks (S then T), got {}",
                blocks.len()
            ),
        });
    }
    let s = parse_list(&blocks[0], &dim, globals.n)?;
    let t = parse_list(&blocks[1], &dim, globals.n)?;
    PairCollection::new(s, t)
}

// ---------------------------------------------------------------------------
// Report helpers.
// ---------------------------------------------------------------------------

fn pauli_json(p: &PauliElement) -> Value {
    json!(format_pauli(p))
}

fn list_json(s: &PauliList) -> Value {
    Value::Array(s.iter().map(pauli_json).collect())
}

fn matrix_json(m: &ExactMatrix) -> Value {
    json!(m.format_text())
}

fn verified(ok: bool) -> Result<Value> {
    if ok {
        Ok(json!("ok"))
    } else {
        Err(Error::ShapeMismatch(
            "internal witness failed verification".to_string(),
        ))
    }
}

fn emit(report: &Value, pretty: bool, out: &mut dyn Write) {
    if pretty {
        render_human(report, 0, out);
    } else {
        let _ = writeln!(out, "{report}");
    }
}

fn render_human(v: &Value, indent: usize, out: &mut dyn Write) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_human(val, indent + 1, out);
                    }
                    Value::String(s) if s.contains('\n') => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for line in s.lines() {
                            let _ = writeln!(out, "{pad}  {line}");
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(val));
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => render_human(item, indent, out),
                    Value::String(s) if s.contains('\n') => {
                        for line in s.lines() {
                            let _ = writeln!(out, "{pad}{line}");
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{}", scalar(item));
                    }
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", scalar(v));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn pairs_report(command: &str, pairs: &PairCollection) -> Result<Value> {
    let check = verify_pairs(pairs.s(), pairs.t())?;
    let ok = verified(check.is_none())?;
    let pair_objs: Vec<Value> = pairs
        .s()
        .iter()
        .zip(pairs.t().iter())
        .map(|(s, t)| json!({ "s": format_pauli(s), "t": format_pauli(t) }))
        .collect();
    Ok(json!({
        "command": command,
        "d": pairs.d(),
        "n": pairs.n(),
        "pairs": pair_objs,
        "commutators": pairs.commutators(),
        "verification": ok,
    }))
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

fn dispatch(cli: &Cli) -> Result<Value> {
    let g = &cli.globals;
    match &cli.cmd {
        Command::Snf { input } => {
            let a = parse_matrix(&read_input(input.as_ref())?)?;
            let nf = snf(&a);
            let lar = mat_mul(&mat_mul(&nf.left, &a)?, &nf.right)?;
            let ok = verified(
                lar == nf.d && is_invertible(&nf.left)? && is_invertible(&nf.right)?,
            )?;
            Ok(json!({
                "command": "snf",
                "ring": a.ring().tag(),
                "input": matrix_json(&a),
                "d": matrix_json(&nf.d),
                "invariant_factors":
                    nf.invariant_factors.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "left": matrix_json(&nf.left),
                "right": matrix_json(&nf.right),
                "verification": ok,
            }))
        }
        Command::Asnf { input } => {
            let a = parse_matrix(&read_input(input.as_ref())?)?;
            let nf = asnf(&a)?;
            let lbl = mat_mul(&mat_mul(&nf.l, &nf.b)?, &nf.l.transpose())?;
            let ok = verified(lbl == a && is_invertible(&nf.l)?)?;
            Ok(json!({
                "command": "asnf",
                "ring": a.ring().tag(),
                "input": matrix_json(&a),
                "b": matrix_json(&nf.b),
                "betas": nf.betas.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "l": matrix_json(&nf.l),
                "verification": ok,
            }))
        }
        Command::Hnf { input } => {
            let a = parse_matrix(&read_input(input.as_ref())?)?;
            if a.ring() == Ring::Z {
                return Err(Error::RingMismatch(
                    "hnf requires a matrix over Z_d".to_string(),
                ));
            }
            let nf = hnf(&a);
            let padded = a.hconcat(&ExactMatrix::zero(a.rows(), a.rows(), a.ring()))?;
            let ok = verified(
                mat_mul(&padded, &nf.l)? == nf.h
                    && mat_mul(&nf.h, &nf.kernel)?.is_zero()
                    && is_invertible(&nf.l)?,
            )?;
            Ok(json!({
                "command": "hnf",
                "ring": a.ring().tag(),
                "input": matrix_json(&a),
                "h": matrix_json(&nf.h),
                "l": matrix_json(&nf.l),
                "kernel": matrix_json(&nf.kernel_of_input(a.cols())),
                "pivots": nf.pivots.iter()
                    .map(|&(r, c, v)| json!([r, c, v])).collect::<Vec<_>>(),
                "verification": ok,
            }))
        }
        Command::Solve { input } => {
            let text = read_input(input.as_ref())?;
            let blocks = blocks(&text);
            if blocks.len() != 2 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!(
                        "expected matrix A and column b as two blocks, got {}",
                        blocks.len()
                    ),
                });
            }
            let a = parse_matrix(&blocks[0])?;
            let b = parse_matrix(&blocks[1])?;
            let solution = solve_in_span(&a, &b)?;
            let (status, x) = match solution {
                Some(x) => {
                    verified(mat_mul(&a, &x)? == b)?;
                    (json!("solved"), matrix_json(&x))
                }
                None => (json!("no-solution"), Value::Null),
            };
            Ok(json!({
                "command": "solve",
                "ring": a.ring().tag(),
                "status": status,
                "x": x,
            }))
        }
        Command::MaxPairs => {
            let dim = require_d(g)?;
            let n = g.n.unwrap_or(1);
            let pairs = example_max_pairs(n, &dim);
            let mut report = pairs_report("max-pairs", &pairs)?;
            report["count"] = json!(pairs.len());
            report["max_count"] = json!(max_pairs_count(n, &dim));
            Ok(report)
        }
        Command::Achieve { f } => {
            let dim = require_d(g)?;
            let tuple = RelationTuple::new(f.clone(), dim)?;
            let pairs = achieve_relation(&tuple)?;
            verified(pairs.commutators() == tuple.f())?;
            let mut report = pairs_report("achieve", &pairs)?;
            report["f"] = json!(tuple.f());
            Ok(report)
        }
        Command::Realize { matrix, input } => {
            let path = matrix.as_ref().or(input.as_ref());
            let c = parse_matrix(&read_input(path)?)?;
            let real = realize_commutation_matrix(&c)?;
            let lam = lambda_matrix(real.n, c.ring());
            let plpt = mat_mul(&mat_mul(&real.p, &lam)?, &real.p.transpose())?;
            let ok = verified(plpt == c)?;
            let Ring::Mod(d) = c.ring() else { unreachable!() };
            let paulis = rows_as_paulis(&real.p, &Dimension::new(d)?)?;
            Ok(json!({
                "command": "realize",
                "d": d,
                "n": real.n,
                "p": matrix_json(&real.p),
                "paulis": list_json(&paulis),
                "verification": ok,
            }))
        }
        Command::MaxSet => {
            let dim = require_d(g)?;
            let set = max_noncomm_set_single_qudit(&dim);
            let ok = verified(verify_noncomm_set(&set).is_none())?;
            Ok(json!({
                "command": "max-set",
                "d": dim.d(),
                "size": set.len(),
                "set": list_json(&set),
                "verification": ok,
            }))
        }
        Command::VerifyPairs { input } => {
            let text = read_input(input.as_ref())?;
            let dim = require_d(g)?;
            let blks = blocks(&text);
            if blks.len() != 2 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("expected blocks S and T, got {}", blks.len()),
                });
            }
            let s = parse_list(&blks[0], &dim, g.n)?;
            let t = parse_list(&blks[1], &dim, g.n)?;
            match verify_pairs(&s, &t)? {
                None => Ok(json!({
                    "command": "verify-pairs",
                    "ok": true,
                    "commutators": s.iter().zip(t.iter())
                        .map(|(a, b)| comm_phase(a, b).unwrap()).collect::<Vec<_>>(),
                })),
                Some(v) => Ok(json!({
                    "command": "verify-pairs",
                    "ok": false,
                    "violation": v.describe(),
                })),
            }
        }
        Command::VerifySet { input } => {
            let dim = require_d(g)?;
            let s = parse_list(&read_input(input.as_ref())?, &dim, g.n)?;
            match verify_noncomm_set(&s) {
                None => Ok(json!({ "command": "verify-set", "ok": true, "size": s.len() })),
                Some((i, j)) => Ok(json!({
                    "command": "verify-set",
                    "ok": false,
                    "commuting_pair": [i, j],
                })),
            }
        }
        Command::JwCompose { input } => {
            let text = read_input(input.as_ref())?;
            let dim = require_d(g)?;
            let blks = blocks(&text);
            if blks.len() != 2 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("expected two set blocks, got {}", blks.len()),
                });
            }
            // The two sets may live on different qudit counts; infer each.
            let s = parse_list(&blks[0], &dim, None)?;
            let sp = parse_list(&blks[1], &dim, None)?;
            let composed = jordan_wigner_compose(&s, &sp)?;
            let ok = verified(verify_noncomm_set(&composed).is_none())?;
            Ok(json!({
                "command": "jw-compose",
                "d": dim.d(),
                "n": composed.n(),
                "size": composed.len(),
                "set": list_json(&composed),
                "verification": ok,
            }))
        }
        Command::IdentityGen { input } => {
            let dim = require_d(g)?;
            let s = parse_list(&read_input(input.as_ref())?, &dim, g.n)?;
            let gen = identity_subgroup_generator(&s);
            Ok(json!({
                "command": "identity-gen",
                "mu": gen.mu(),
                "order": gen.order(),
                "element": pauli_json(&gen.element()),
            }))
        }
        Command::NearMinGen { input } => {
            let dim = require_d(g)?;
            let s = parse_list(&read_input(input.as_ref())?, &dim, g.n)?;
            let nm = near_minimal_generating_set(&s);
            let mut set = nm.t_prime.clone();
            if !nm.p.is_trivial() {
                set.push(nm.p.element())?;
            }
            let ok = verified(subgroup_order(&set) == subgroup_order(&s))?;
            Ok(json!({
                "command": "near-min-gen",
                "r": nm.r,
                "size": set.len(),
                "set": list_json(&set),
                "verification": ok,
            }))
        }
        Command::MinGen { input } => {
            let dim = require_d(g)?;
            let s = parse_list(&read_input(input.as_ref())?, &dim, g.n)?;
            let budget = g.budget.unwrap_or(DEFAULT_MIN_GEN_BUDGET);
            let res = minimal_generating_set(&s, budget);
            let ok = verified(subgroup_order(&res.set) == subgroup_order(&s))?;
            let status = match res.status {
                MinGenStatus::Minimal => "minimal",
                MinGenStatus::ExhaustedNearMinimal => "exhausted-near-minimal",
                MinGenStatus::BudgetCappedNearMinimal => "budget-capped-near-minimal",
            };
            Ok(json!({
                "command": "min-gen",
                "r": res.r,
                "size": res.set.len(),
                "status": status,
                "set": list_json(&res.set),
                "verification": ok,
            }))
        }
        Command::GramSchmidt { prune, input } => {
            let dim = require_d(g)?;
            let s = parse_list(&read_input(input.as_ref())?, &dim, g.n)?;
            let dec = gram_schmidt_generating_set(&s, *prune)?;
            let regenerated = dec
                .s1
                .concat(&dec.s2)?
                .concat(&dec.u)?;
            let mut with_phase = regenerated.clone();
            if !dec.identity_gen.is_trivial() {
                with_phase.push(dec.identity_gen.element())?;
            }
            let ok = verified(subgroup_order(&with_phase) == subgroup_order(&s))?;
            Ok(json!({
                "command": "gram-schmidt",
                "pairs": dec.s1.iter().zip(dec.s2.iter())
                    .map(|(a, b)| json!({ "s": format_pauli(a), "t": format_pauli(b) }))
                    .collect::<Vec<_>>(),
                "betas": dec.betas,
                "central": list_json(&dec.u),
                "mu": dec.identity_gen.mu(),
                "verification": ok,
            }))
        }
        Command::GroupOrder { input } => {
            let dim = require_d(g)?;
            let s = parse_list(&read_input(input.as_ref())?, &dim, g.n)?;
            Ok(json!({
                "command": "group-order",
                "order": subgroup_order(&s).to_string(),
            }))
        }
        Command::Center { input } => {
            let pairs = parse_pair_blocks(&read_input(input.as_ref())?, g)?;
            let center = center_of_pairs(&pairs);
            Ok(json!({
                "command": "center",
                "generators": list_json(&center),
            }))
        }
        Command::Decompose { input } => {
            let dim = require_d(g)?;
            let text = read_input(input.as_ref())?;
            let blks = blocks(&text);
            if blks.len() != 3 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("expected blocks S, T, element; got {}", blks.len()),
                });
            }
            let s = parse_list(&blks[0], &dim, g.n)?;
            let t = parse_list(&blks[1], &dim, g.n)?;
            let p = parse_list(&blks[2], &dim, g.n)?;
            if p.len() != 1 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "the element block must hold exactly one Pauli".to_string(),
                });
            }
            let p = p.get(0).clone();
            let pairs = PairCollection::new(s, t)?;
            let dec = decompose_in_pair_basis(&p, &pairs)?;
            // Reconstruct ω^c · Π s_i^{a_i} t_i^{b_i} and compare.
            let mut acc = PauliElement::identity(dim.clone(), p.n()).with_phase(dec.c);
            for i in 0..pairs.len() {
                acc = pmul(&acc, &ppow(pairs.s().get(i), dec.a[i]))?;
                acc = pmul(&acc, &ppow(pairs.t().get(i), dec.b[i]))?;
            }
            let ok = verified(acc == p)?;
            Ok(json!({
                "command": "decompose",
                "a": dec.a,
                "b": dec.b,
                "c": dec.c,
                "verification": ok,
            }))
        }
        Command::IsFullGroup { input } => {
            let pairs = parse_pair_blocks(&read_input(input.as_ref())?, g)?;
            let all = pairs.s().concat(pairs.t())?;
            Ok(json!({
                "command": "is-full-group",
                "full": is_full_group(&pairs),
                "order": subgroup_order(&all).to_string(),
            }))
        }
        Command::Oracle(oracle) => match oracle {
            OracleCommand::Clique => {
                let dim = require_d(g)?;
                Ok(json!({
                    "command": "oracle clique",
                    "d": dim.d(),
                    "max_clique": brute_max_clique(&dim)?,
                }))
            }
            OracleCommand::Enumerate { input } => {
                let dim = require_d(g)?;
                let s = parse_list(&read_input(input.as_ref())?, &dim, g.n)?;
                let cap = g.budget.map(|b| b as usize).unwrap_or(DEFAULT_ENUM_CAP);
                let group = enumerate_group(&s, cap)?;
                Ok(json!({
                    "command": "oracle enumerate",
                    "size": group.len(),
                    "elements": group.sorted_elements().iter()
                        .map(|p| json!(format_pauli(p))).collect::<Vec<_>>(),
                }))
            }
            OracleCommand::MaxPairs => {
                let dim = require_d(g)?;
                let n = g.n.unwrap_or(1);
                let bound = max_pairs_count(n, &dim) as usize + 1;
                let cap = g.budget.map(|b| b as usize).unwrap_or(bound);
                Ok(json!({
                    "command": "oracle max-pairs",
                    "d": dim.d(),
                    "n": n,
                    "max_pairs": brute_max_pairs(&dim, n, cap)?,
                }))
            }
        },
    }
}
