//! Command dispatch for the `decotree` binary.
//!
//! Every command loads the bundled presets plus any `--file` sources into one
//! workspace, resolves names (`-` and `_` are interchangeable, case is
//! ignored when there is no exact match; systems may also be written
//! `tri(lie)`, `pre(as)` and so on) and prints either human text or a
//! JSON document `{command, inputs, result, certificates, version}`.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 usage or parse error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use decotree::algebra::construct::{box_product, canonical_embedding, hat, tensor_replicated, tilde};
use decotree::algebra::operator::{check_operator, derived_from_operator, DerivedMode, OperatorKind};
use decotree::consequence::{consequence_space, is_consequence, systems_equivalent, verify_certificate};
use decotree::dsl::printer::{format_lincomb, print_algebra, print_morphism, print_system};
use decotree::dsl::{parse_into, Style, Workspace};
use decotree::morphism::Morphism;
use decotree::replication::{replicate_identities, replicate_morphism};
use decotree::samples::randomized_suite;
use decotree::splitting::{split_identities, split_morphism, SplitMode};
use decotree::{Error, FiniteAlgebra, IdentitySystem, LinearOperator, Mode, Q};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "decotree", version, about = "Replication, splitting and identity checking for decorated operads")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Extra DSL source files, loaded after the presets.
    #[arg(long = "file", short = 'f', global = true)]
    files: Vec<PathBuf>,
    /// Do not load the bundled presets.
    #[arg(long, global = true)]
    no_presets: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoArg {
    Di,
    Tri,
}

impl From<DecoArg> for Mode {
    fn from(m: DecoArg) -> Mode {
        match m {
            DecoArg::Di => Mode::Di,
            DecoArg::Tri => Mode::Tri,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SplitArg {
    Pre,
    Post,
}

impl From<SplitArg> for SplitMode {
    fn from(m: SplitArg) -> SplitMode {
        match m {
            SplitArg::Pre => SplitMode::Pre,
            SplitArg::Post => SplitMode::Post,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DerivedArg {
    Di,
    Tri,
    Pre,
    Post,
}

impl From<DerivedArg> for DerivedMode {
    fn from(m: DerivedArg) -> DerivedMode {
        match m {
            DerivedArg::Di => DerivedMode::Di,
            DerivedArg::Tri => DerivedMode::Tri,
            DerivedArg::Pre => DerivedMode::Pre,
            DerivedArg::Post => DerivedMode::Post,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Averaging,
    HomAveraging,
    Rb,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Di- or tri-replicate an identity system.
    Replicate {
        #[arg(long)]
        mode: DecoArg,
        system: String,
    },
    /// Pre- or post-split an identity system.
    Split {
        #[arg(long)]
        mode: SplitArg,
        system: String,
    },
    /// Split a morphism of signatures.
    SplitMorphism {
        #[arg(long)]
        mode: SplitArg,
        morphism: String,
    },
    /// Replicate a morphism of signatures.
    ReplicateMorphism {
        #[arg(long)]
        mode: DecoArg,
        morphism: String,
    },
    /// Check an algebra against an identity system (or a single identity).
    Check { algebra: String, system: String },
    /// Check an operator identity on an algebra.
    CheckOperator {
        algebra: String,
        operator: String,
        #[arg(long)]
        kind: KindArg,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// The algebra induced by an operator.
    Derive {
        algebra: String,
        operator: String,
        #[arg(long)]
        mode: DerivedArg,
        #[arg(long)]
        kind: Option<KindArg>,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Build a new algebra from existing ones.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Consequence space of a system in one degree, or membership of a target identity.
    Consequence {
        system: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        target: Option<String>,
    },
    /// Codimension of a system in one degree.
    Codim {
        system: String,
        #[arg(long)]
        degree: usize,
    },
    /// Mutual consequence of two systems up to a degree.
    Equiv {
        first: String,
        second: String,
        #[arg(long = "max-degree")]
        max_degree: usize,
    },
    /// Derived-algebra property suite over sample algebras and operators.
    Suite {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Names of everything in the workspace.
    List,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// `T̃` for a tri-decorated algebra.
    Tilde { algebra: String },
    /// `T̂` for a decorated algebra.
    Hat { algebra: String },
    /// Canonical embedding of a tri-decorated algebra into `C₂⊗T̃`.
    Embed { algebra: String },
    /// `C⊗A` over the replicated signature.
    Tensor {
        model: String,
        algebra: String,
        #[arg(long)]
        mode: DecoArg,
    },
    /// `C⊠T` over the plain signature.
    Box { model: String, algebra: String },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    pass: bool,
    text: String,
    result: Value,
    certificates: Value,
}

impl Report {
    fn ok(text: String, result: Value) -> Self {
        Report { pass: true, text, result, certificates: json!([]) }
    }
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAModel(_) | Error::OperatorCheck(_) => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (name, inputs) = describe(&cli.cmd);
    match load(&cli).and_then(|ws| dispatch(&cli, &ws)) {
        Ok(r) => {
            let stdout = if cli.json {
                let doc = json!({
                    "command": name,
                    "inputs": inputs,
                    "result": r.result,
                    "certificates": r.certificates,
                    "version": VERSION,
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
            } else {
                r.text
            };
            Outcome { code: if r.pass { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::Math(m) => (1, m),
            };
            let stdout = if cli.json {
                let doc = json!({
                    "command": name,
                    "inputs": inputs,
                    "result": {"error": msg},
                    "certificates": [],
                    "version": VERSION,
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("error: {msg}\n") }
        }
    }
}

fn describe(cmd: &Cmd) -> (&'static str, Value) {
    match cmd {
        Cmd::Replicate { mode, system } => ("replicate", json!({"mode": format!("{mode:?}").to_lowercase(), "system": system})),
        Cmd::Split { mode, system } => ("split", json!({"mode": format!("{mode:?}").to_lowercase(), "system": system})),
        Cmd::SplitMorphism { mode, morphism } => {
            ("split-morphism", json!({"mode": format!("{mode:?}").to_lowercase(), "morphism": morphism}))
        }
        Cmd::ReplicateMorphism { mode, morphism } => {
            ("replicate-morphism", json!({"mode": format!("{mode:?}").to_lowercase(), "morphism": morphism}))
        }
        Cmd::Check { algebra, system } => ("check", json!({"algebra": algebra, "system": system})),
        Cmd::CheckOperator { algebra, operator, kind, weight } => (
            "check-operator",
            json!({"algebra": algebra, "operator": operator, "kind": format!("{kind:?}"), "weight": weight}),
        ),
        Cmd::Derive { algebra, operator, mode, kind, weight } => (
            "derive",
            json!({"algebra": algebra, "operator": operator, "mode": format!("{mode:?}").to_lowercase(),
                   "kind": kind.map(|k| format!("{k:?}")), "weight": weight}),
        ),
        Cmd::Construct { what } => match what {
            Construct::Tilde { algebra } => ("construct", json!({"what": "tilde", "algebra": algebra})),
            Construct::Hat { algebra } => ("construct", json!({"what": "hat", "algebra": algebra})),
            Construct::Embed { algebra } => ("construct", json!({"what": "embed", "algebra": algebra})),
            Construct::Tensor { model, algebra, mode } => (
                "construct",
                json!({"what": "tensor", "model": model, "algebra": algebra, "mode": format!("{mode:?}").to_lowercase()}),
            ),
            Construct::Box { model, algebra } => {
                ("construct", json!({"what": "box", "model": model, "algebra": algebra}))
            }
        },
        Cmd::Consequence { system, degree, target } => {
            ("consequence", json!({"system": system, "degree": degree, "target": target}))
        }
        Cmd::Codim { system, degree } => ("codim", json!({"system": system, "degree": degree})),
        Cmd::Equiv { first, second, max_degree } => {
            ("equiv", json!({"first": first, "second": second, "max_degree": max_degree}))
        }
        Cmd::Suite { count } => ("suite", json!({"count": count})),
        Cmd::List => ("list", json!({})),
    }
}

fn load(cli: &Cli) -> Res<Workspace> {
    let mut ws = if cli.no_presets { Workspace::new() } else { decotree::presets::workspace()? };
    for f in &cli.files {
        let src = std::fs::read_to_string(f).map_err(|e| Failure::Usage(format!("{}: {e}", f.display())))?;
        parse_into(&mut ws, &src).map_err(|e| Failure::Usage(format!("{}: {e}", f.display())))?;
    }
    Ok(ws)
}

fn normalize(s: &str) -> String {
    s.replace('-', "_").to_lowercase()
}

/// Exact name first, then `-`/`_`- and case-insensitive.
fn resolve<'a, T>(items: &'a [T], name: impl Fn(&T) -> &str, query: &str, kind: &'static str) -> Res<&'a T> {
    if let Some(x) = items.iter().find(|x| name(x) == query) {
        return Ok(x);
    }
    let q = normalize(query);
    let hits: Vec<&T> = items.iter().filter(|x| normalize(name(x)) == q).collect();
    match hits.as_slice() {
        [one] => Ok(one),
        [] => Err(Error::UnknownReference { kind, name: query.to_string() }.into()),
        _ => Err(Failure::Usage(format!("{kind} `{query}` is ambiguous"))),
    }
}

/// A named system or identity, or `di(S)`, `tri(S)`, `pre(S)`, `post(S)` of one.
fn system(ws: &Workspace, name: &str) -> Res<IdentitySystem> {
    let name = name.trim();
    if let Some((op, rest)) = name.split_once('(') {
        if let Some(inner) = rest.strip_suffix(')') {
            let s = system(ws, inner)?;
            return Ok(match op.trim() {
                "di" => replicate_identities(&s, Mode::Di)?,
                "tri" => replicate_identities(&s, Mode::Tri)?,
                "pre" => split_identities(&s, SplitMode::Pre)?,
                "post" => split_identities(&s, SplitMode::Post)?,
                other => return Err(Failure::Usage(format!("unknown system operation `{other}`"))),
            });
        }
    }
    if let Ok(s) = resolve(&ws.systems, |s| &s.name, name, "system") {
        return Ok(s.clone());
    }
    let d = resolve(&ws.identities, |d| &d.identity.name, name, "system or identity")?;
    Ok(ws.system_or_identity(&d.identity.name)?)
}

fn algebra<'a>(ws: &'a Workspace, name: &str) -> Res<&'a FiniteAlgebra> {
    resolve(&ws.algebras, |a| &a.name, name, "algebra")
}

fn operator<'a>(ws: &'a Workspace, name: &str) -> Res<&'a LinearOperator> {
    Ok(&resolve(&ws.operators, |o| &o.operator.name, name, "operator")?.operator)
}

fn morphism<'a>(ws: &'a Workspace, name: &str) -> Res<&'a Morphism> {
    resolve(&ws.morphisms, |m| &m.name, name, "morphism")
}

fn parse_weight(w: &Option<String>) -> Res<Q> {
    let w = w.as_deref().ok_or_else(|| Failure::Usage("--kind rb needs --weight".into()))?;
    w.parse::<Q>().map_err(|_| Failure::Usage(format!("bad weight `{w}`")))
}

fn kind_of(kind: KindArg, weight: &Option<String>) -> Res<OperatorKind> {
    Ok(match kind {
        KindArg::Averaging => OperatorKind::Averaging,
        KindArg::HomAveraging => OperatorKind::HomAveraging,
        KindArg::Rb => OperatorKind::RotaBaxter(parse_weight(weight)?),
    })
}

/// Identities sorted by degree, then by leading term.
fn sorted(sys: &IdentitySystem) -> IdentitySystem {
    let mut s = sys.clone();
    s.identities.sort_by(|a, b| (a.degree, a.lhs.terms().next()).cmp(&(b.degree, b.lhs.terms().next())));
    s
}

fn system_json(sys: &IdentitySystem) -> Value {
    let ids: Vec<Value> = sys
        .identities
        .iter()
        .map(|id| {
            json!({
                "name": id.name,
                "degree": id.degree,
                "lhs": format_lincomb(&id.lhs, sys.signature.mode, Style::Machine),
            })
        })
        .collect();
    json!({"name": sys.name, "signature": sys.signature.name, "identities": ids})
}

fn system_report(sys: IdentitySystem) -> Report {
    let sys = sorted(&sys);
    Report::ok(print_system(&sys, Style::Human), system_json(&sys))
}

fn algebra_report(a: &FiniteAlgebra) -> Report {
    let text = print_algebra(a);
    Report::ok(text.clone(), json!({"algebra": a.name, "signature": a.signature.name, "dim": a.dim(), "text": text}))
}

fn dispatch(cli: &Cli, ws: &Workspace) -> Res<Report> {
    match &cli.cmd {
        Cmd::Replicate { mode, system: s } => Ok(system_report(replicate_identities(&system(ws, s)?, (*mode).into())?)),
        Cmd::Split { mode, system: s } => Ok(system_report(split_identities(&system(ws, s)?, (*mode).into())?)),
        Cmd::SplitMorphism { mode, morphism: m } => {
            let w = split_morphism(morphism(ws, m)?, (*mode).into())?;
            let text = print_morphism(&w, Style::Human);
            Ok(Report::ok(text.clone(), json!({"morphism": w.name, "text": print_morphism(&w, Style::Machine)})))
        }
        Cmd::ReplicateMorphism { mode, morphism: m } => {
            let w = replicate_morphism(morphism(ws, m)?, (*mode).into())?;
            let text = print_morphism(&w, Style::Human);
            Ok(Report::ok(text.clone(), json!({"morphism": w.name, "text": print_morphism(&w, Style::Machine)})))
        }
        Cmd::Check { algebra: a, system: s } => {
            let a = algebra(ws, a)?;
            let s = system(ws, s)?;
            let r = a.check_identities(&s)?;
            let text = match &r.witness {
                None => format!("pass: {} satisfies {} ({} checks)\n", a.name, s.name, r.checked),
                Some(w) => format!(
                    "fail: {} violates {} at ({}): {}\n",
                    a.name,
                    w.identity,
                    w.tuple.join(", "),
                    w.value
                ),
            };
            Ok(Report { pass: r.passed, text, result: json!(r), certificates: json!([]) })
        }
        Cmd::CheckOperator { algebra: a, operator: o, kind, weight } => {
            let a = algebra(ws, a)?;
            let l = operator(ws, o)?;
            let k = kind_of(*kind, weight)?;
            let r = check_operator(a, l, &k)?;
            let text = match &r.failure {
                None => format!("pass: {} is {} on {} ({} checks)\n", l.name, k, a.name, r.checked),
                Some(f) => format!("fail: {} is not {} on {}: {f}\n", l.name, k, a.name),
            };
            Ok(Report { pass: r.passed, text, result: json!(r), certificates: json!([]) })
        }
        Cmd::Derive { algebra: a, operator: o, mode, kind, weight } => {
            let a = algebra(ws, a)?;
            let l = operator(ws, o)?;
            let mode: DerivedMode = (*mode).into();
            if let Some(k) = kind {
                let k = kind_of(*k, weight)?;
                if k != mode.required_kind() {
                    return Err(Failure::Usage(format!("mode {mode} needs a {} operator, not {k}", mode.required_kind())));
                }
            }
            Ok(algebra_report(&derived_from_operator(a, l, mode)?))
        }
        Cmd::Construct { what } => construct(ws, what),
        Cmd::Consequence { system: s, degree, target } => {
            let s = system(ws, s)?;
            match target {
                None => {
                    let sp = consequence_space(&s, *degree)?;
                    let text = format!(
                        "{} in degree {}: {} monomials, rank {}, codimension {}\n",
                        s.name,
                        degree,
                        sp.columns.terms.len(),
                        sp.rank(),
                        sp.codimension()
                    );
                    Ok(Report::ok(
                        text,
                        json!({"degree": degree, "monomials": sp.columns.terms.len(), "rank": sp.rank(),
                               "codimension": sp.codimension()}),
                    ))
                }
                Some(t) => {
                    let d = resolve(&ws.identities, |d| &d.identity.name, t, "identity")?;
                    let id = &d.identity;
                    if id.degree != *degree {
                        return Err(Failure::Usage(format!("`{}` has degree {}, not {degree}", id.name, id.degree)));
                    }
                    s.signature.ensure_same(ws.signature(&d.signature)?)?;
                    let m = is_consequence(&id.lhs, &s)?;
                    let verified = verify_certificate(&id.lhs, &s, &m)?;
                    let cert = m.to_json();
                    let mut text = if m.member {
                        format!("{} follows from {} (certificate: {} terms)\n", id.name, s.name, cert.entries.len())
                    } else {
                        format!("{} does not follow from {} in degree {degree}\n", id.name, s.name)
                    };
                    if !m.member {
                        text.push_str("separating functional:\n");
                        for (t, c) in &cert.entries {
                            text.push_str(&format!("  {c} * {t}\n"));
                        }
                    }
                    text.push_str(&format!("certificate verified: {verified}\n"));
                    Ok(Report {
                        pass: m.member,
                        text,
                        result: json!({"member": m.member, "degree": m.degree, "verified": verified}),
                        certificates: json!([cert]),
                    })
                }
            }
        }
        Cmd::Codim { system: s, degree } => {
            let s = system(ws, s)?;
            let c = consequence_space(&s, *degree)?.codimension();
            Ok(Report::ok(format!("{c}\n"), json!({"degree": degree, "codimension": c})))
        }
        Cmd::Equiv { first, second, max_degree } => {
            let (a, b) = (system(ws, first)?, system(ws, second)?);
            let e = systems_equivalent(&a, &b, *max_degree)?;
            let mut text = if e.equivalent {
                format!("{} and {} are equivalent up to degree {max_degree}\n", a.name, b.name)
            } else {
                format!("{} and {} are not equivalent up to degree {max_degree}\n", a.name, b.name)
            };
            for (sys, id) in &e.missing {
                text.push_str(&format!("  {sys}: {id} does not follow from the other system\n"));
            }
            Ok(Report { pass: e.equivalent, text, result: json!(e), certificates: json!([]) })
        }
        Cmd::Suite { count } => {
            let cases = randomized_suite(cli.seed, *count)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut all = true;
            for case in &cases {
                let d = derived_from_operator(&case.algebra, &case.operator, case.mode)?;
                let r = d.check_identities(&case.target_system()?)?;
                all &= r.passed;
                text.push_str(&format!("{} {}\n", if r.passed { "pass" } else { "FAIL" }, case.label));
                rows.push(json!({"case": case.label, "passed": r.passed, "witness": r.witness}));
            }
            Ok(Report { pass: all, text, result: json!({"seed": cli.seed, "cases": rows}), certificates: json!([]) })
        }
        Cmd::List => {
            let mut text = String::new();
            let mut add = |kind: &str, names: Vec<&str>| {
                text.push_str(&format!("{kind}: {}\n", names.join(", ")));
            };
            add("signatures", ws.signatures.iter().map(|s| s.name.as_str()).collect());
            add("identities", ws.identities.iter().map(|d| d.identity.name.as_str()).collect());
            add("systems", ws.systems.iter().map(|s| s.name.as_str()).collect());
            add("morphisms", ws.morphisms.iter().map(|m| m.name.as_str()).collect());
            add("algebras", ws.algebras.iter().map(|a| a.name.as_str()).collect());
            add("operators", ws.operators.iter().map(|o| o.operator.name.as_str()).collect());
            let result = json!({
                "signatures": ws.signatures.iter().map(|s| &s.name).collect::<Vec<_>>(),
                "systems": ws.systems.iter().map(|s| &s.name).collect::<Vec<_>>(),
                "morphisms": ws.morphisms.iter().map(|m| &m.name).collect::<Vec<_>>(),
                "algebras": ws.algebras.iter().map(|a| &a.name).collect::<Vec<_>>(),
                "operators": ws.operators.iter().map(|o| &o.operator.name).collect::<Vec<_>>(),
            });
            Ok(Report::ok(text, result))
        }
    }
}

fn construct(ws: &Workspace, what: &Construct) -> Res<Report> {
    match what {
        Construct::Tilde { algebra: a } => Ok(algebra_report(&tilde(algebra(ws, a)?)?.algebra)),
        Construct::Hat { algebra: a } => Ok(algebra_report(&hat(algebra(ws, a)?)?)),
        Construct::Tensor { model, algebra: a, mode } => {
            Ok(algebra_report(&tensor_replicated(algebra(ws, model)?, algebra(ws, a)?, (*mode).into())?))
        }
        Construct::Box { model, algebra: a } => Ok(algebra_report(&box_product(algebra(ws, model)?, algebra(ws, a)?)?)),
        Construct::Embed { algebra: a } => {
            let t = algebra(ws, a)?;
            let (e, r) = canonical_embedding(t)?;
            let mut text = format!(
                "{}: dim {}, dim T0 {}, dim tilde {}, injective {}, homomorphism {}\n",
                t.name, r.dim, r.dim_t0, r.dim_tilde, r.injective, r.homomorphism
            );
            if let Some(f) = &r.failure {
                text.push_str(&format!("failure: {f}\n"));
            }
            for (k, img) in e.images.iter().enumerate() {
                text.push_str(&format!("  {} |-> {}\n", t.basis[k], e.target.format_vector(img)));
            }
            Ok(Report { pass: r.passed(), text, result: json!(r), certificates: json!([]) })
        }
    }
}
