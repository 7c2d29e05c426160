//! `relcomm`: verify the identity catalogue, rewrite targets into reduced
//! generators with certificates, re-check certificates, and compute with
//! ideals.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or
//! parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use relcomm::generate::{
    partial_relative_generators, theorem1_rewrite, theorem4_rewrite, theorem5_generators, theorem_c_decompose,
    Certificate, Extra, ExtraKind, MixedAtom, Mode, NumericPlan, PositionSet,
};
use relcomm::identities::{instantiate, CATALOGUE};
use relcomm::matgroup::{Factor, Generator};
use relcomm::ring::{
    ideal_member, sym_product, tree_level, BracketTree, Ideal, IdealSpec, NamedSet, RingAdapter, RingElement, Tag,
};
use relcomm::syntax::{parse_factors, parse_poly};
use relcomm::verify::{append_run_log, standard_bindings, verify_numeric, VerificationReport};

#[derive(Parser)]
#[command(name = "relcomm", version, about = "Commutators of relative elementary subgroups, checked")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the catalogued identities and append the reports to a run log.
    Verify(VerifyArgs),
    /// Rewrite a target into reduced generators and emit a certificate.
    Rewrite(RewriteArgs),
    /// Re-verify a certificate file.
    Check(CheckArgs),
    /// Symmetrised products and nested levels of ideals.
    Ideal(IdealArgs),
    /// Membership in a nested symmetrised product.
    Member(MemberArgs),
    /// Generator descriptor of a multiple commutator of elementary subgroups.
    Generators(GeneratorArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// `all` or an identity id prefix such as `lemma7`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Degree, or a range such as `3..5`.
    #[arg(long, default_value = "3")]
    n: String,
    /// Also run numeric checks in this ring (`z`, `zmod:<m>`, `triang:<m>`).
    #[arg(long, default_value = "free")]
    ring: RingAdapter,
    /// Ideal bound to the letters `a`; defaults to 4 (ℤ, ℤ/m) or `upper`.
    #[arg(long)]
    ideal_a: Option<String>,
    /// Ideal bound to the letters `b`; defaults to 6 (ℤ, ℤ/m) or `upper`.
    #[arg(long)]
    ideal_b: Option<String>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Run log, one JSON report per line.
    #[arg(long, default_value = "relcomm-runs.jsonl")]
    log: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    /// Relative elementary subgroup from conjugates at interlaced positions.
    #[value(name = "C")]
    C,
    /// Mixed words into elementary commutators.
    #[value(name = "1")]
    One,
    /// Generators of the partially relative subgroup.
    #[value(name = "2")]
    Two,
    /// Reduced generators of the mixed commutator subgroup.
    #[value(name = "4")]
    Four,
}

#[derive(Args)]
struct RewriteArgs {
    #[arg(long)]
    theorem: Theorem,
    /// Target word in the word syntax.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    target: Option<String>,
    /// File holding the target word (`-` for stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Block split; defaults to n-1.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value = "rows")]
    mode: Mode,
    /// Fixed column of the row positions; defaults to r+1.
    #[arg(long)]
    h: Option<usize>,
    /// Fixed row of the column positions; defaults to 1 (rows) or r (cols).
    #[arg(long)]
    k: Option<usize>,
    /// Extra position `s,t` for the reduced commutator basis. Its kind
    /// follows from r: straddling positions carry z, the others y.
    #[arg(long, value_parser = parse_pair)]
    extra: Option<(usize, usize)>,
    /// Numeric trials per ring (ℤ/12 and triangular ℤ/5); 0 skips them.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Certificate file (a single certificate or a JSON array).
    path: PathBuf,
}

#[derive(Args)]
struct IdealArgs {
    #[arg(long, default_value = "z")]
    ring: RingAdapter,
    /// Symmetrised product of two ideals.
    #[arg(long, num_args = 2, value_names = ["I", "J"], conflicts_with = "tree")]
    circ: Option<Vec<String>>,
    /// Nested product following a bracket tree such as `((1 2) 3)`.
    #[arg(long, requires = "ideals", required_unless_present = "circ")]
    tree: Option<String>,
    #[arg(long, num_args = 1..)]
    ideals: Option<Vec<String>>,
}

#[derive(Args)]
struct MemberArgs {
    #[arg(long)]
    tree: String,
    /// Free-ring element in the letters `i1`, `i2`, ... (leaf k is the
    /// ideal generated by the `i<k>` letters).
    #[arg(long)]
    monomial: String,
}

#[derive(Args)]
struct GeneratorArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    tree: String,
    #[arg(long, default_value = "z")]
    ring: RingAdapter,
    /// Leaf ideals; omitted over the free ring, where leaf k is `I<k>`.
    #[arg(long, num_args = 1..)]
    ideals: Option<Vec<String>>,
    /// Assert that the ring is quasi-finite (required for n = 3).
    #[arg(long)]
    assume_quasi_finite: bool,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `s,t`, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Outcome of a command: `Ok(true)` passes, `Ok(false)` is a verification
/// failure, `Err` a usage or input error.
type Outcome = Result<bool, String>;

fn usage<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(a) => verify(a, cli.pretty),
        Command::Rewrite(a) => rewrite(a, cli.pretty),
        Command::Check(a) => check(a, cli.pretty),
        Command::Ideal(a) => ideal(a, cli.pretty),
        Command::Member(a) => member(a, cli.pretty),
        Command::Generators(a) => generators(a, cli.pretty),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Print a line; a closed pipe (e.g. `| head`) is not an error.
fn say(line: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn emit(value: &Value, pretty: bool) {
    if pretty {
        say(serde_json::to_string_pretty(value).expect("json"));
    } else {
        say(value);
    }
}

fn degrees(spec: &str) -> Result<Vec<usize>, String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad degree `{spec}`"));
    let (lo, hi) = match spec.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => (parse(spec)?, parse(spec)?),
    };
    if lo < 3 || hi < lo {
        return Err(format!("degrees must satisfy 3 <= lo <= hi, got `{spec}`"));
    }
    Ok((lo..=hi).collect())
}

fn default_ideal(ring: RingAdapter, given: Option<&String>, fallback: i64) -> Result<IdealSpec, String> {
    match (given, ring) {
        (Some(s), _) => IdealSpec::parse(ring, s).map_err(usage),
        (None, RingAdapter::Triang(m)) => Ok(IdealSpec::named(m, NamedSet::StrictUpper)),
        (None, _) => IdealSpec::principal(ring, fallback).map_err(usage),
    }
}

fn report_line(r: &VerificationReport) -> String {
    let status = if r.pass() { "PASS" } else { "FAIL" };
    let mut line =
        format!("{status} {:<12} {:<8} n={} ring={} trials={}", r.id, format!("{:?}", r.mode), r.n, r.ring, r.trials);
    if let Some(d) = &r.detail {
        line.push_str(&format!("  {d}"));
    }
    line
}

fn verify(a: &VerifyArgs, pretty: bool) -> Outcome {
    let ids: Vec<&str> = CATALOGUE.iter().copied().filter(|id| a.suite == "all" || id.starts_with(&a.suite)).collect();
    if ids.is_empty() {
        return Err(format!("no identity matches `{}`; known: {}", a.suite, CATALOGUE.join(", ")));
    }
    let numeric = match a.ring {
        RingAdapter::Free => None,
        ring => {
            let ia = default_ideal(ring, a.ideal_a.as_ref(), 4)?;
            let ib = default_ideal(ring, a.ideal_b.as_ref(), 6)?;
            Some((ring, standard_bindings(ring, ia, ib).map_err(usage)?))
        }
    };
    let mut entries = Vec::new();
    let mut all = Vec::new();
    let mut pass = true;
    for n in degrees(&a.n)? {
        for id in &ids {
            let r = instantiate(id, n).map_err(usage)?;
            let mut reports = vec![r.verify(id).map_err(usage)?, r.audit(id).map_err(usage)?];
            if let Some((ring, bindings)) = &numeric {
                let rhs = r.expansion().map_err(usage)?;
                reports.push(verify_numeric(id, &r.target, &rhs, *ring, bindings, a.trials, a.seed).map_err(usage)?);
            }
            let ok = reports.iter().all(VerificationReport::pass);
            pass &= ok;
            entries.push(json!({
                "id": id,
                "n": n,
                "pass": ok,
                "symbolic": reports[0],
                "audit": reports[1],
                "numeric": reports.get(2),
            }));
            all.extend(reports);
        }
    }
    append_run_log(&a.log, &all).map_err(usage)?;
    if pretty {
        for r in &all {
            say(report_line(r));
        }
        say(format_args!("{} reports appended to {}", all.len(), a.log.display()));
    } else {
        emit(&Value::Array(entries), false);
    }
    Ok(pass)
}

fn read_target(a: &RewriteArgs) -> Result<String, String> {
    match (&a.target, &a.input) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(p)) if p.as_os_str() == "-" => std::io::read_to_string(std::io::stdin()).map_err(usage),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        (None, None) => Err("give --target or --input".into()),
    }
}

fn position_set(a: &RewriteArgs) -> Result<PositionSet, String> {
    let n = a.n;
    let r = a.r.unwrap_or(n.saturating_sub(1));
    let h = a.h.unwrap_or(r + 1);
    let k = a.k.unwrap_or(match a.mode {
        Mode::Rows => 1,
        Mode::Cols => r,
    });
    let ps = PositionSet::new(n, r, h, k, a.mode).map_err(usage)?;
    match a.extra {
        Some((s, t)) => {
            let kind = if (s <= r) == (t <= r) { ExtraKind::Y } else { ExtraKind::Z };
            ps.with_extra(Extra { kind, s, t }).map_err(usage)
        }
        None => Ok(ps),
    }
}

fn single(factors: &[Factor], kind: &str) -> Result<(), String> {
    for f in factors {
        if f.gen.kind() != kind || f.inverse {
            return Err(format!("expected {} atoms, got {f}", kind.to_lowercase()));
        }
    }
    Ok(())
}

fn rewrite(a: &RewriteArgs, pretty: bool) -> Outcome {
    let text = read_target(a)?;
    let factors = parse_factors(&text).map_err(|e| format!("target: {e}"))?;
    if factors.is_empty() {
        return Err("the target is the identity word".into());
    }
    if let Some(big) = factors.iter().map(|f| f.gen.max_index()).max().filter(|&m| m > a.n) {
        return Err(format!("index {big} exceeds n = {}", a.n));
    }
    let mut certs = match a.theorem {
        Theorem::C => {
            single(&factors, "Z")?;
            let ps = position_set(a)?;
            factors
                .iter()
                .map(|f| match &f.gen {
                    Generator::Z { i, j, x, c } => theorem_c_decompose(&ps, (*i, *j), x, c),
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<_>, _>>()
        }
        Theorem::Four => {
            single(&factors, "Y")?;
            let ps = position_set(a)?;
            if ps.extra.is_none() {
                return Err("the reduced commutator basis needs --extra s,t".into());
            }
            factors
                .iter()
                .map(|f| match &f.gen {
                    Generator::Y { i, j, x, y } => theorem4_rewrite(&ps, (*i, *j), x, y),
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<_>, _>>()
        }
        Theorem::One => {
            let atoms = factors.iter().map(MixedAtom::from_factor).collect::<Result<Vec<_>, _>>().map_err(usage)?;
            theorem1_rewrite(a.n, &atoms).map(|c| vec![c])
        }
        Theorem::Two => partial_relative_generators(a.n, &factors),
    }
    .map_err(usage)?;
    if a.trials > 0 {
        for c in &mut certs {
            c.add_numeric(&NumericPlan::defaults(a.seed), a.trials).map_err(usage)?;
        }
    }
    let pass = certs.iter().all(certificate_passes);
    let value = if certs.len() == 1 {
        serde_json::to_value(&certs[0]).expect("json")
    } else {
        serde_json::to_value(&certs).expect("json")
    };
    match &a.emit {
        Some(path) => {
            let body = serde_json::to_string_pretty(&value).expect("json");
            std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?;
            let summary: Vec<Value> = certs.iter().map(summary).collect();
            emit(&json!({ "emitted": path, "pass": pass, "certificates": summary }), pretty);
        }
        None => emit(&value, pretty),
    }
    Ok(pass)
}

fn certificate_passes(c: &Certificate) -> bool {
    c.checks.symbolic.pass
        && c.checks.symbolic.level_audit_failures == 0
        && c.checks.numeric.iter().all(|n| n.failures == 0)
}

fn summary(c: &Certificate) -> Value {
    json!({
        "target": c.claim.target,
        "theorem": c.basis.theorem,
        "factors": c.factors.len(),
        "atoms": c.checks.symbolic.atoms,
        "pass": certificate_passes(c),
    })
}

fn check(a: &CheckArgs, pretty: bool) -> Outcome {
    let text = std::fs::read_to_string(&a.path).map_err(|e| format!("{}: {e}", a.path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", a.path.display()))?;
    let items = match value {
        Value::Array(v) => v,
        v => vec![v],
    };
    let mut out = Vec::new();
    let mut pass = true;
    for item in items {
        let cert: Certificate =
            serde_json::from_value(item).map_err(|e| format!("{}: not a certificate: {e}", a.path.display()))?;
        let reports = cert.recheck().map_err(usage)?;
        let ok = reports.iter().all(VerificationReport::pass);
        pass &= ok;
        if pretty {
            for r in &reports {
                say(report_line(r));
            }
        }
        out.push(json!({ "target": cert.claim.target, "pass": ok, "reports": reports }));
    }
    if !pretty {
        emit(&Value::Array(out), false);
    }
    Ok(pass)
}

/// Principal ideals print as their generator, the others by name.
fn ideal_value(spec: &IdealSpec) -> Value {
    match &spec.ideal {
        Ideal::Principal(d) => {
            d.to_string().parse::<serde_json::Number>().map(Value::Number).unwrap_or(json!(d.to_string()))
        }
        other => json!(other.to_string()),
    }
}

fn ideal(a: &IdealArgs, pretty: bool) -> Outcome {
    let parse = |s: &String| IdealSpec::parse(a.ring, s).map_err(usage);
    let result = match (&a.circ, &a.tree, &a.ideals) {
        (Some(pair), _, _) => sym_product(&parse(&pair[0])?, &parse(&pair[1])?).map_err(usage)?,
        (None, Some(tree), Some(ideals)) => {
            let t = BracketTree::parse(tree).map_err(usage)?;
            let specs = ideals.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
            tree_level(&t, &specs).map_err(usage)?
        }
        _ => return Err("give --circ I J or --tree T --ideals ...".into()),
    };
    if pretty {
        say(&result);
    } else {
        emit(&ideal_value(&result), false);
    }
    Ok(true)
}

fn member(a: &MemberArgs, pretty: bool) -> Outcome {
    let tree = BracketTree::parse(&a.tree).map_err(usage)?;
    let leaves: Vec<IdealSpec> = (1..=tree.num_leaves()).map(|k| IdealSpec::free_tag(Tag::I(k as u32))).collect();
    let level = tree_level(&tree, &leaves).map_err(usage)?;
    let x = parse_poly(&a.monomial).map_err(|e| format!("monomial: {e}"))?;
    let inside = ideal_member(&RingElement::Free(x), &level).map_err(usage)?;
    if pretty {
        say(format_args!("{} {} {level}", a.monomial, if inside { "is in" } else { "is not in" }));
    } else {
        emit(&json!(inside), false);
    }
    Ok(true)
}

fn generators(a: &GeneratorArgs, pretty: bool) -> Outcome {
    let tree = BracketTree::parse(&a.tree).map_err(usage)?;
    let ideals: Vec<IdealSpec> = match (&a.ideals, a.ring) {
        (Some(list), ring) => {
            list.iter().map(|s| IdealSpec::parse(ring, s)).collect::<Result<_, _>>().map_err(usage)?
        }
        (None, RingAdapter::Free) => (1..=tree.num_leaves()).map(|k| IdealSpec::free_tag(Tag::I(k as u32))).collect(),
        (None, _) => return Err("give --ideals for a concrete ring".into()),
    };
    let d = theorem5_generators(a.n, &tree, &ideals, a.assume_quasi_finite).map_err(usage)?;
    emit(&serde_json::to_value(&d).expect("json"), pretty);
    Ok(true)
}
