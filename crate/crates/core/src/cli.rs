//! Command-line interface, JSON reports and the corpus runner.

use crate::closures::{
    closure_axiom_audit, closure_by_name, colon_profile, tc_evidence, EffectiveClosure, IntegralClosure, TestElement,
    DEFAULT_CONFIRM, DEFAULT_E_MAX, DEFAULT_N_MAX,
};
use crate::error::{Error, Result};
use crate::frobenius::{bracket_power, frobenius_closure, frobenius_root};
use crate::groebner::DEFAULT_STEP_LIMIT;
use crate::nakayama::{
    enumerate_minimal_reductions, independence, is_reduction, minimize_reduction, nakayama_audit,
    spread_consistency_audit, strong_independence, Mode, DEFAULT_MAX_DIM,
};
use crate::newton::newton_closure_monomial;
use crate::parse::{parse_polynomial_list, parse_ring_file_with_limit, RingFile};
use crate::poly::Poly;
use crate::ring::Ideal;
use crate::special_part::{decomposition_check, sp_lemma_audit, sptc_approx_ideal, sptc_member};
use crate::verdict::Verdict;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "tclose", version, about = "Closure operations on ideals in characteristic p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis of an ideal
    Gb(Opts),
    /// Membership of an element in an ideal or its closure
    Member(Opts),
    /// Frobenius power I^[p^e]
    Bracket(Opts),
    /// Frobenius root J^(1/p^e)
    Froot(Opts),
    /// Frobenius closure chain
    Fclosure(Opts),
    /// Integral-closure membership
    Intmember(Opts),
    /// Integral closure of a monomial ideal
    Newton(Opts),
    /// Tight-closure evidence through a test element
    Tcevidence(Opts),
    /// Colon ideals (I^[q] : f^q) over a range of e
    Colonprofile(Opts),
    /// Whether J is a closure reduction of I
    Reduce(Opts),
    /// Shrink a reduction to a minimal one
    Minreduce(Opts),
    /// Minimal reductions and the spread
    Spread(Opts),
    /// Closure independence of a set of elements
    Independent(Opts),
    /// Strong closure independence of an ideal
    Strongindependent(Opts),
    /// Special-part membership
    Sptc(Opts),
    /// Special-part approximation ideal
    Sptcideal(Opts),
    /// Power decomposition of the Frobenius closure
    Decompose(Opts),
    /// Axiom, Nakayama and special-part audits
    Audit(Opts),
    /// Run corpus cases
    Corpus(CorpusOpts),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Greedy,
    Exhaustive,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Ring file
    #[arg(long)]
    pub ring: PathBuf,
    /// Ideal name from the ring file, or an inline list `[f, g, ..]`
    #[arg(long)]
    pub ideal: Option<String>,
    /// Second ideal (candidate reduction, subideal)
    #[arg(long)]
    pub j: Option<String>,
    /// Element(s)
    #[arg(long)]
    pub elem: Vec<String>,
    /// identity, frobenius, integral, newton
    #[arg(long)]
    pub closure: Option<String>,
    /// Frobenius exponent e for bracket and froot
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[arg(long, default_value_t = 0)]
    pub e_min: u32,
    #[arg(long, default_value_t = DEFAULT_E_MAX)]
    pub e_max: u32,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: u32,
    #[arg(long, default_value_t = DEFAULT_CONFIRM)]
    pub confirm: u32,
    /// Reduction-step budget for Gröbner computations
    #[arg(long, default_value_t = DEFAULT_STEP_LIMIT)]
    pub budget: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Test element for tcevidence
    #[arg(long, default_value = "1")]
    pub c: String,
    /// Exponent from which the test element applies
    #[arg(long, default_value_t = 0)]
    pub q0_exponent: u32,
    /// Polynomial f for colonprofile
    #[arg(long)]
    pub f: Option<String>,
    /// Extra generating sets `[..]` for strongindependent
    #[arg(long)]
    pub genset: Vec<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Greedy)]
    pub mode: ModeArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CorpusOpts {
    /// `run`
    pub action: String,
    /// `all` or a comma-separated list of case ids
    #[arg(default_value = "all")]
    pub selection: String,
    #[arg(long, default_value = "corpus")]
    pub dir: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub json: bool,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("tclose".to_string())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let json_mode = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: error_text("usage", &text, json_mode) }
            };
        }
    };
    let (name, json_out) = match &cli.command {
        Command::Corpus(o) => ("corpus", o.json),
        other => (command_name(other), opts_of(other).map(|o| o.json).unwrap_or(false)),
    };
    match dispatch(&cli.command) {
        Ok((result, code)) => {
            let doc = json!({ "schema": SCHEMA, "command": name, "result": result });
            let stdout = if json_out {
                let mut s = serde_json::to_string_pretty(&doc).expect("json");
                s.push('\n');
                s
            } else if name == "corpus" {
                render_corpus(&doc["result"])
            } else {
                render_text(&doc)
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(err) => Outcome {
            code: err.exit_code(),
            stdout: String::new(),
            stderr: error_text(err.kind(), &err.to_string(), json_out),
        },
    }
}

fn error_text(kind: &str, message: &str, json_mode: bool) -> String {
    if json_mode {
        let doc = json!({ "schema": SCHEMA, "error": { "kind": kind, "message": message.trim_end() } });
        format!("{doc}\n")
    } else {
        format!("error: {}\n", message.trim_end())
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gb(_) => "gb",
        Command::Member(_) => "member",
        Command::Bracket(_) => "bracket",
        Command::Froot(_) => "froot",
        Command::Fclosure(_) => "fclosure",
        Command::Intmember(_) => "intmember",
        Command::Newton(_) => "newton",
        Command::Tcevidence(_) => "tcevidence",
        Command::Colonprofile(_) => "colonprofile",
        Command::Reduce(_) => "reduce",
        Command::Minreduce(_) => "minreduce",
        Command::Spread(_) => "spread",
        Command::Independent(_) => "independent",
        Command::Strongindependent(_) => "strongindependent",
        Command::Sptc(_) => "sptc",
        Command::Sptcideal(_) => "sptcideal",
        Command::Decompose(_) => "decompose",
        Command::Audit(_) => "audit",
        Command::Corpus(_) => "corpus",
    }
}

fn opts_of(c: &Command) -> Option<&Opts> {
    match c {
        Command::Gb(o)
        | Command::Member(o)
        | Command::Bracket(o)
        | Command::Froot(o)
        | Command::Fclosure(o)
        | Command::Intmember(o)
        | Command::Newton(o)
        | Command::Tcevidence(o)
        | Command::Colonprofile(o)
        | Command::Reduce(o)
        | Command::Minreduce(o)
        | Command::Spread(o)
        | Command::Independent(o)
        | Command::Strongindependent(o)
        | Command::Sptc(o)
        | Command::Sptcideal(o)
        | Command::Decompose(o)
        | Command::Audit(o) => Some(o),
        Command::Corpus(_) => None,
    }
}

struct Ctx {
    file: RingFile,
    opts: Opts,
}

impl Ctx {
    fn load(opts: &Opts) -> Result<Self> {
        if opts.budget == 0 || opts.confirm == 0 || opts.n_max == 0 || opts.max_dim == 0 {
            return Err(Error::InvalidArgument("budget, confirm, n-max and max-dim must be positive".into()));
        }
        let src = std::fs::read_to_string(&opts.ring)
            .map_err(|e| Error::Io(format!("{}: {e}", opts.ring.display())))?;
        let file = parse_ring_file_with_limit(&src, opts.budget)?;
        Ok(Ctx { file, opts: opts.clone() })
    }

    fn resolve(&self, spec: &str) -> Result<Ideal> {
        let s = spec.trim();
        if s.starts_with('[') {
            let ring = self.file.ring.clone();
            let gens = parse_polynomial_list(ring.base(), s)?;
            Ok(Ideal::new(ring, gens))
        } else {
            self.file.ideal(s).cloned()
        }
    }

    fn ideal(&self) -> Result<Ideal> {
        let s = self.opts.ideal.as_deref().ok_or_else(|| Error::InvalidArgument("--ideal is required".into()))?;
        self.resolve(s)
    }

    fn second(&self) -> Result<Ideal> {
        let s = self.opts.j.as_deref().ok_or_else(|| Error::InvalidArgument("--j is required".into()))?;
        self.resolve(s)
    }

    fn elems(&self) -> Result<Vec<Poly>> {
        self.opts.elem.iter().map(|s| self.file.ring.parse_poly(s)).collect()
    }

    fn elem(&self) -> Result<Poly> {
        match self.opts.elem.as_slice() {
            [one] => self.file.ring.parse_poly(one),
            _ => Err(Error::InvalidArgument("exactly one --elem is required".into())),
        }
    }

    fn closure(&self, default: &str) -> Result<Box<dyn EffectiveClosure>> {
        let name = self.opts.closure.as_deref().unwrap_or(default);
        closure_by_name(name, self.opts.e_max, self.opts.confirm, self.opts.n_max)
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable report")
}

fn verdict_value(v: &Verdict, ctx: &Ctx) -> Result<Value> {
    let checked = v.reverify(&ctx.file.ring)?;
    if checked == Some(false) {
        return Err(Error::AuditFailure("certificate failed re-verification".into()));
    }
    let mut out = to_value(v);
    out["reverified"] = checked.map(Value::Bool).unwrap_or(Value::Null);
    Ok(out)
}

fn dispatch(cmd: &Command) -> Result<(Value, i32)> {
    if let Command::Corpus(o) = cmd {
        return corpus_command(o);
    }
    let ctx = Ctx::load(opts_of(cmd).expect("non-corpus command"))?;
    let o = &ctx.opts;
    let r = match cmd {
        Command::Gb(_) => {
            let i = ctx.ideal()?;
            json!({ "ideal": i.gens_strings(), "groebner_basis": i.gb_strings()? })
        }
        Command::Member(_) => {
            let (x, i) = (ctx.elem()?, ctx.ideal()?);
            let cl = ctx.closure("identity")?;
            verdict_value(&cl.member(&x, &i)?, &ctx)?
        }
        Command::Bracket(_) => {
            let b = bracket_power(&ctx.ideal()?, o.e)?;
            json!({ "e": o.e, "generators": b.gens_strings(), "groebner_basis": b.gb_strings()? })
        }
        Command::Froot(_) => {
            let r = frobenius_root(&ctx.ideal()?, o.e)?;
            json!({ "e": o.e, "root": r.gb_strings()? })
        }
        Command::Fclosure(_) => {
            let ch = frobenius_closure(&ctx.ideal()?, o.e_max, o.confirm)?;
            let stages = ch.stages.iter().map(|s| s.gb_strings()).collect::<Result<Vec<_>>>()?;
            json!({ "stages": stages, "status": to_value(&ch.status), "candidate": ch.candidate().gb_strings()? })
        }
        Command::Intmember(_) => {
            let cl = IntegralClosure::bounded(o.n_max);
            verdict_value(&cl.member(&ctx.elem()?, &ctx.ideal()?)?, &ctx)?
        }
        Command::Newton(_) => {
            let i = ctx.ideal()?;
            json!({ "ideal": i.gens_strings(), "closure": newton_closure_monomial(&i)?.gb_strings()? })
        }
        Command::Tcevidence(_) => {
            let c = ctx.file.ring.parse_poly(&o.c)?;
            let test = TestElement { c, q0_exponent: o.q0_exponent };
            verdict_value(&tc_evidence(&ctx.elem()?, &ctx.ideal()?, &test, (o.e_min, o.e_max))?, &ctx)?
        }
        Command::Colonprofile(_) => {
            let f = o.f.as_deref().ok_or_else(|| Error::InvalidArgument("--f is required".into()))?;
            let f = ctx.file.ring.parse_poly(f)?;
            to_value(&colon_profile(&f, &ctx.ideal()?, (o.e_min, o.e_max))?)
        }
        Command::Reduce(_) => {
            let cl = ctx.closure("integral")?;
            to_value(&is_reduction(&ctx.second()?, &ctx.ideal()?, cl.as_ref())?)
        }
        Command::Minreduce(_) => {
            let cl = ctx.closure("integral")?;
            let mode = match o.mode {
                ModeArg::Greedy => Mode::Greedy,
                ModeArg::Exhaustive => Mode::Exhaustive,
            };
            to_value(&minimize_reduction(&ctx.second()?, &ctx.ideal()?, cl.as_ref(), mode)?)
        }
        Command::Spread(_) => {
            let cl = ctx.closure("integral")?;
            let rep = enumerate_minimal_reductions(&ctx.ideal()?, cl.as_ref(), o.max_dim)?;
            let audit = spread_consistency_audit(&rep);
            let mut v = to_value(&rep);
            v["audit"] = to_value(&audit);
            v
        }
        Command::Independent(_) => {
            let i = ctx.ideal()?;
            let elems = if o.elem.is_empty() { i.gens().to_vec() } else { ctx.elems()? };
            let cl = ctx.closure("integral")?;
            to_value(&independence(&elems, &i, cl.as_ref())?)
        }
        Command::Strongindependent(_) => {
            let cl = ctx.closure("integral")?;
            let gensets = o
                .genset
                .iter()
                .map(|s| parse_polynomial_list(ctx.file.ring.base(), s))
                .collect::<Result<Vec<_>>>()?;
            to_value(&strong_independence(&ctx.ideal()?, cl.as_ref(), &gensets)?)
        }
        Command::Sptc(_) => verdict_value(&sptc_member(&ctx.elem()?, &ctx.ideal()?, o.e_max)?, &ctx)?,
        Command::Sptcideal(_) => {
            let a = sptc_approx_ideal(&ctx.ideal()?, o.e_max, o.confirm)?;
            let stages = a.stages.iter().map(|s| s.gb_strings()).collect::<Result<Vec<_>>>()?;
            json!({ "stages": stages, "status": to_value(&a.status), "approx": a.ideal().gb_strings()? })
        }
        Command::Decompose(_) => to_value(&decomposition_check(&ctx.ideal()?, o.e_max, 1)?),
        Command::Audit(_) => return audit_command(&ctx),
        Command::Corpus(_) => unreachable!(),
    };
    Ok((r, 0))
}

fn audit_command(ctx: &Ctx) -> Result<(Value, i32)> {
    let o = &ctx.opts;
    let i = ctx.ideal()?;
    let j = match &o.j {
        Some(_) => Some(ctx.second()?),
        None => None,
    };
    let cl = ctx.closure("integral")?;
    let pair = (j.clone().unwrap_or_else(|| i.clone()), i.clone());
    let axioms = closure_axiom_audit(cl.as_ref(), &[pair])?;
    let nakayama = match &j {
        Some(j) => Some(nakayama_audit(&i, j, cl.as_ref())?),
        None => None,
    };
    let sp = sp_lemma_audit(&i, j.as_ref(), o.e_max)?;
    let pass = nakayama.as_ref().map(|n| n.pass).unwrap_or(true) && sp.passed();
    let v = json!({
        "axioms": to_value(&axioms),
        "nakayama": to_value(&nakayama),
        "special_part": to_value(&sp),
        "pass": pass,
    });
    Ok((v, if pass { 0 } else { 1 }))
}

/// Text rendering of a JSON report.
pub fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, doc.get("result").unwrap_or(doc), 0);
    out
}

/// One line per step and assertion, then a summary.
pub fn render_corpus(result: &Value) -> String {
    let mark = |b: &Value| if b == &Value::Bool(true) { "PASS" } else { "FAIL" };
    let mut out = String::new();
    for c in result["cases"].as_array().into_iter().flatten() {
        let id = c["case"].as_str().unwrap_or("?");
        out.push_str(&format!("{} {id}\n", mark(&c["pass"])));
        if let Some(e) = c.get("error") {
            out.push_str(&format!("  error: {}\n", scalar(e).unwrap_or_default()));
        }
        for s in c["steps"].as_array().into_iter().flatten() {
            if s["pass"] != Value::Bool(true) {
                out.push_str(&format!("  FAIL step {}: exit {} (expected {})\n", s["step"], s["exit"], s["expected_exit"]));
            }
        }
        for a in c["assertions"].as_array().into_iter().flatten() {
            out.push_str(&format!(
                "  {} step {} {} {} {} [{}]\n",
                mark(&a["pass"]),
                a["step"],
                a["pointer"].as_str().unwrap_or(""),
                a["check"].as_str().unwrap_or(""),
                scalar(&a["expected"]).unwrap_or_else(|| a["expected"].to_string()),
                a["provenance"].as_str().unwrap_or(""),
            ));
        }
    }
    out.push_str(&format!("{} passed, {} failed\n", result["passed"], result["failed"]));
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(out, x, indent + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
    }
}

/// One expected value in a corpus case.
#[derive(Clone, Debug, Deserialize)]
pub struct Expectation {
    /// Script line, counted from 0 over non-comment lines.
    pub step: usize,
    /// JSON pointer into the step's report.
    pub pointer: String,
    #[serde(default)]
    pub equals: Option<Value>,
    /// Array at `pointer` must contain this value.
    #[serde(default)]
    pub contains: Option<Value>,
    /// `published-example`, `trivial` or `derived`.
    pub provenance: String,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    #[serde(default)]
    pub description: String,
    /// Expected exit code of every step (default 0).
    #[serde(default)]
    pub exit: Vec<i32>,
    pub expectations: Vec<Expectation>,
}

/// Case ids under `dir`, sorted.
pub fn corpus_ids(dir: &Path) -> Result<Vec<String>> {
    let rd = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut ids: Vec<String> = rd
        .filter_map(|e| e.ok())
        .filter(|e| e.path().join("expected.json").is_file())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    ids.sort();
    Ok(ids)
}

fn ring_file_of(case_dir: &Path) -> Result<PathBuf> {
    let rd = std::fs::read_dir(case_dir).map_err(|e| Error::Io(format!("{}: {e}", case_dir.display())))?;
    let mut rings: Vec<PathBuf> = rd
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "ring").unwrap_or(false))
        .collect();
    rings.sort();
    match rings.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(Error::Io(format!("{}: expected exactly one .ring file", case_dir.display()))),
    }
}

/// Runs one case; the report carries no timing so repeated runs agree.
pub fn run_case(dir: &Path, id: &str) -> Result<Value> {
    let case_dir = dir.join(id);
    let ring = ring_file_of(&case_dir)?;
    let meta: CorpusCase = serde_json::from_str(
        &std::fs::read_to_string(case_dir.join("expected.json")).map_err(|e| Error::Io(e.to_string()))?,
    )
    .map_err(|e| Error::Io(format!("{id}/expected.json: {e}")))?;
    let script = std::fs::read_to_string(case_dir.join("script")).map_err(|e| Error::Io(e.to_string()))?;
    let lines: Vec<&str> = script
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut steps = Vec::new();
    let mut outputs = Vec::new();
    let mut ok = true;
    for (k, line) in lines.iter().enumerate() {
        let mut args = shlex::split(line).ok_or_else(|| Error::Io(format!("{id}: bad script line `{line}`")))?;
        args.push("--ring".into());
        args.push(ring.to_string_lossy().into_owned());
        args.push("--json".into());
        let out = run(args);
        let want = meta.exit.get(k).copied().unwrap_or(0);
        let parsed: Value = if out.code == 0 || !out.stdout.is_empty() {
            serde_json::from_str(&out.stdout).unwrap_or(Value::Null)
        } else {
            serde_json::from_str(&out.stderr).unwrap_or(Value::Null)
        };
        let pass = out.code == want;
        ok &= pass;
        steps.push(json!({ "step": k, "command": line, "exit": out.code, "expected_exit": want, "pass": pass }));
        outputs.push(parsed);
    }
    let mut assertions = Vec::new();
    for ex in &meta.expectations {
        let actual = outputs.get(ex.step).and_then(|v| v.pointer(&ex.pointer)).cloned().unwrap_or(Value::Null);
        let (kind, expected, pass) = match (&ex.equals, &ex.contains) {
            (Some(e), _) => ("equals", e.clone(), &actual == e),
            (None, Some(c)) => ("contains", c.clone(), actual.as_array().map(|a| a.contains(c)).unwrap_or(false)),
            (None, None) => ("present", Value::Null, !actual.is_null()),
        };
        ok &= pass;
        assertions.push(json!({
            "step": ex.step,
            "pointer": ex.pointer,
            "check": kind,
            "expected": expected,
            "actual": actual,
            "provenance": ex.provenance,
            "note": ex.note,
            "pass": pass,
        }));
    }
    Ok(json!({ "case": id, "description": meta.description, "pass": ok, "steps": steps, "assertions": assertions }))
}

/// Runs the selected cases with up to `jobs` workers; reports come back in
/// case-id order.
pub fn corpus_run(dir: &Path, selection: &str, jobs: usize) -> Result<Value> {
    let all = corpus_ids(dir)?;
    let ids: Vec<String> = if selection == "all" {
        all
    } else {
        let want: Vec<&str> = selection.split(',').map(str::trim).collect();
        for w in &want {
            if !all.iter().any(|a| a == w) {
                return Err(Error::InvalidArgument(format!("unknown corpus case `{w}`")));
            }
        }
        let mut v: Vec<String> = want.into_iter().map(String::from).collect();
        v.sort();
        v.dedup();
        v
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let cases: Vec<Value> = pool.install(|| {
        ids.par_iter()
            .map(|id| run_case(dir, id).unwrap_or_else(|e| json!({ "case": id, "pass": false, "error": e.to_string() })))
            .collect()
    });
    let passed = cases.iter().filter(|c| c["pass"] == Value::Bool(true)).count();
    Ok(json!({ "cases": cases, "passed": passed, "failed": cases.len() - passed }))
}

fn corpus_command(o: &CorpusOpts) -> Result<(Value, i32)> {
    if o.action != "run" {
        return Err(Error::InvalidArgument(format!("unknown corpus action `{}`", o.action)));
    }
    let v = corpus_run(&o.dir, &o.selection, o.jobs)?;
    let code = if v["failed"] == json!(0) { 0 } else { 1 };
    Ok((v, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        let out = run(["member", "--json"]);
        assert_eq!(out.code, 2);
        let v: Value = serde_json::from_str(&out.stderr).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
    }

    #[test]
    fn missing_file_is_reported() {
        let out = run(["gb", "--ring", "/nonexistent.ring", "--ideal", "M", "--json"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("\"io\""));
    }

    #[test]
    fn text_rendering() {
        let doc = json!({ "schema": 1, "result": { "status": "IN", "list": ["a", "b"], "nested": { "k": 1 } } });
        assert_eq!(render_text(&doc), "list: [a, b]\nnested:\n  k: 1\nstatus: IN\n");
    }
}
