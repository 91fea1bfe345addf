//! Command-line front end: catalog browsing, closure, classification,
//! semi-invariants, verdicts and the literature report.
//!
//! Exit codes: 0 success, 1 other failure or failed report row, 2 parse or
//! usage error, 3 closure cap exceeded, 4 internal invariant violated.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wexc::catalog::{self, write_group_file, CatalogEntry, FactChecker, Params};
use wexc::classify::{check_weakly_exceptional, classify_action, ActionClass, Verdict, Witness};
use wexc::matgroup::MatGroup;
use wexc::repthy::{min_semi_invariant, semi_invariants, sparsest_witness, SemiInvariantSpace};
use wexc::{CycSubspace, Error};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "wexc", version, about = "Exact checks of weak exceptionality for finite subgroups of SL3 and SL4")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Browse the built-in groups.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Close a group and print its order.
    Closure(InputArgs),
    /// Classify the action as intransitive, imprimitive or primitive.
    Classify(InputArgs),
    /// Semi-invariant polynomials of one degree, or the least degree up to a bound.
    SemiInvariants {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, conflicts_with = "max_degree", required_unless_present = "max_degree")]
        degree: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Decide weak exceptionality of `C^N / G`.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
        dim: u32,
        /// Also classify the action.
        #[arg(long)]
        classify: bool,
        #[arg(long, value_name = "INPUT")]
        also: Vec<String>,
    },
    /// Re-verify every recorded fact of the catalog.
    Report {
        #[arg(long, required = true)]
        paper: bool,
        /// Restrict to entries whose name contains one of these strings.
        #[arg(long = "only")]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List {
        #[arg(long)]
        json: bool,
    },
    Show {
        name: String,
        #[arg(long = "param", short = 'p', value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Print the generators in the group-file format.
        #[arg(long)]
        export: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// `catalog:NAME` or the path of a JSON group file.
    pub input: String,
    #[arg(long = "param", short = 'p', value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub class_cap: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
    /// Output already written; only the exit status remains.
    Failed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => exit_code(e),
            CliError::Usage(_) => EXIT_PARSE,
            CliError::Io(_) | CliError::Failed => EXIT_FAILURE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::Failed => f.write_str("failed"),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::GroupFile(_) | Error::Shape(_) => EXIT_PARSE,
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_FAILURE,
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A closed input group.
pub struct Loaded {
    pub name: String,
    pub group: MatGroup,
    pub class_cap: usize,
}

pub fn parse_params(items: &[String]) -> CliResult<Params> {
    let mut p = Params::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("parameter `{item}` is not KEY=VALUE")))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("parameter `{k}` needs an integer value, got `{v}`")))?;
        p.insert(k.trim().to_string(), v);
    }
    Ok(p)
}

pub fn load(input: &InputArgs) -> CliResult<Loaded> {
    load_spec(&input.input, &parse_params(&input.params)?, input.cap, input.class_cap)
}

fn load_spec(spec: &str, params: &Params, cap: Option<usize>, class_cap: Option<usize>) -> CliResult<Loaded> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let e = catalog::entry(name)?;
        let p = e.resolve_params(params)?;
        let group = e.build_with_cap(&p, cap.unwrap_or_else(|| e.closure_cap(&p)))?;
        return Ok(Loaded {
            name: name.to_string(),
            group,
            class_cap: class_cap.unwrap_or(e.class_cap()),
        });
    }
    if !params.is_empty() {
        return Err(CliError::Usage("--param applies only to catalog inputs".into()));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| CliError::Io(format!("{spec}: {e}")))?;
    let mut file: catalog::GroupFile =
        serde_json::from_str(&text).map_err(|e| Error::GroupFile(format!("{spec}: line {}, column {}: {e}", e.line(), e.column())))?;
    if let Some(c) = cap {
        file.cap = Some(c);
    }
    let group = file.close()?;
    Ok(Loaded {
        name: file.name.clone(),
        class_cap: class_cap.unwrap_or(file.class_cap()),
        group,
    })
}

fn subspace_json(s: &CycSubspace) -> Value {
    json!(s
        .basis()
        .iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::None => json!({ "kind": "none" }),
        Witness::InvariantSubspace(s) => json!({ "kind": "invariant-subspace", "basis": subspace_json(s), "text": s.to_string() }),
        Witness::SemiInvariant(p) => json!({ "kind": "semi-invariant", "degree": p.degree(), "polynomial": p.to_string() }),
        Witness::A5Family => json!({ "kind": "a5-family" }),
    }
}

pub fn class_json(c: &ActionClass) -> Value {
    json!({
        "class": c.tag().name(),
        "blocks": c.blocks().iter().map(subspace_json).collect::<Vec<_>>(),
    })
}

/// The machine-readable verdict document.
pub fn verdict_json(name: &str, v: &Verdict, class: Option<&ActionClass>) -> Value {
    json!({
        "name": name,
        "order": v.order,
        "transitive": v.transitive,
        "min_semi_invariant_degree": v.min_semi_invariant_degree,
        "a5_flag": v.a5_flag,
        "action_class": class.map(|c| c.tag().name()),
        "weakly_exceptional": v.weakly_exceptional,
        "witness": witness_json(&v.witness),
    })
}

fn print_json(out: &mut dyn Write, v: &Value) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))?;
    Ok(())
}

fn bool_word(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn cmd_catalog_list(out: &mut dyn Write, as_json: bool) -> CliResult<()> {
    let entries = catalog::list();
    if as_json {
        let v: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "dimension": e.dim,
                    "params": e.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                    "summary": e.summary,
                    "builtin": !e.is_slot(),
                })
            })
            .collect();
        return print_json(out, &json!(v));
    }
    for e in &entries {
        let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let params = if params.is_empty() { String::new() } else { format!(" [{}]", params.join(", ")) };
        writeln!(out, "{:<32} dim {}  {}{}", e.name, e.dim, e.summary, params)?;
    }
    Ok(())
}

fn cmd_catalog_show(out: &mut dyn Write, name: &str, params: &[String], export: bool, as_json: bool) -> CliResult<()> {
    let e = catalog::entry(name)?;
    let p = e.resolve_params(&parse_params(params)?)?;
    let facts = e.expected_facts(&p)?;
    if export {
        let g = e.build(&p)?;
        writeln!(out, "{}", write_group_file(name, &g))?;
        return Ok(());
    }
    let gens = if e.is_slot() { Vec::new() } else { e.generators(&p)? };
    if as_json {
        let v = json!({
            "name": e.name,
            "dimension": e.dim,
            "params": p,
            "summary": e.summary,
            "generators": gens.iter().map(|m| m.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "facts": facts.iter().map(|f| json!({"fact": f.fact.to_string(), "source": f.source.to_string()})).collect::<Vec<_>>(),
        });
        return print_json(out, &v);
    }
    writeln!(out, "{}  (dimension {})", e.name, e.dim)?;
    writeln!(out, "  {}", e.summary)?;
    for (k, v) in &p {
        writeln!(out, "  {k} = {v}")?;
    }
    if e.is_slot() {
        writeln!(out, "  no built-in generators; supply them in a group file")?;
    }
    for (i, m) in gens.iter().enumerate() {
        writeln!(out, "  generator {i}:")?;
        for r in m.row_vecs() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(out, "    [{}]", cells.join(", "))?;
        }
    }
    for f in &facts {
        writeln!(out, "  expect {} [{}]", f.fact, f.source)?;
    }
    Ok(())
}

fn cmd_closure(out: &mut dyn Write, input: &InputArgs) -> CliResult<()> {
    let l = load(input)?;
    let g = &l.group;
    let proj = g.projective().order();
    let scalars = g.scalar_subgroup().len();
    let relations = g.relations().len();
    if input.json {
        return print_json(
            out,
            &json!({
                "name": l.name,
                "dimension": g.dim(),
                "order": g.order(),
                "projective_order": proj,
                "scalars": scalars,
                "relations": relations,
                "determinant_one": g.has_determinant_one()?,
            }),
        );
    }
    writeln!(out, "{}: order {} (projective {proj}, scalars {scalars}), {relations} relations", l.name, g.order())?;
    Ok(())
}

fn cmd_classify(out: &mut dyn Write, input: &InputArgs) -> CliResult<()> {
    let l = load(input)?;
    let c = classify_action(&l.group, l.class_cap)?;
    if input.json {
        let mut v = class_json(&c);
        v["name"] = json!(l.name);
        return print_json(out, &v);
    }
    writeln!(out, "{}: {}", l.name, c.tag())?;
    for b in c.blocks() {
        writeln!(out, "  {b}")?;
    }
    Ok(())
}

fn spaces_json(spaces: &[SemiInvariantSpace]) -> Value {
    json!(spaces
        .iter()
        .map(|s| json!({
            "character": s.character.to_string(),
            "dimension": s.dim(),
            "basis": s.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>())
}

fn write_spaces(out: &mut dyn Write, spaces: &[SemiInvariantSpace]) -> CliResult<()> {
    for s in spaces {
        writeln!(out, "  character {} (dimension {}):", s.character, s.dim())?;
        for p in &s.basis {
            writeln!(out, "    {p}")?;
        }
    }
    Ok(())
}

fn cmd_semi(out: &mut dyn Write, input: &InputArgs, degree: Option<u32>, max_degree: Option<u32>) -> CliResult<()> {
    let l = load(input)?;
    if let Some(d) = degree {
        let spaces = semi_invariants(&l.group, d)?;
        if input.json {
            return print_json(out, &json!({ "name": l.name, "degree": d, "spaces": spaces_json(&spaces) }));
        }
        if spaces.is_empty() {
            writeln!(out, "{}: no semi-invariants of degree {d}", l.name)?;
        } else {
            writeln!(out, "{}: semi-invariants of degree {d}", l.name)?;
            write_spaces(out, &spaces)?;
        }
        return Ok(());
    }
    let dmax = max_degree.expect("clap enforces one of the two");
    let found = min_semi_invariant(&l.group, dmax)?;
    if input.json {
        let v = match &found {
            Some((d, spaces)) => json!({
                "name": l.name, "max_degree": dmax, "min_degree": d,
                "witness": sparsest_witness(spaces).map(|p| p.to_string()),
                "spaces": spaces_json(spaces),
            }),
            None => json!({ "name": l.name, "max_degree": dmax, "min_degree": null }),
        };
        return print_json(out, &v);
    }
    match found {
        Some((d, spaces)) => {
            writeln!(out, "{}: least semi-invariant degree {d}", l.name)?;
            write_spaces(out, &spaces)?;
        }
        None => writeln!(out, "{}: no semi-invariant of degree <= {dmax}", l.name)?,
    }
    Ok(())
}

fn verdict_text(out: &mut dyn Write, name: &str, v: &Verdict, class: Option<&ActionClass>) -> CliResult<()> {
    writeln!(out, "{name}:")?;
    writeln!(out, "  order: {}", v.order)?;
    writeln!(out, "  transitive: {}", bool_word(v.transitive))?;
    match v.min_semi_invariant_degree {
        Some(d) => writeln!(out, "  min_semi_invariant_degree: {d}")?,
        None => writeln!(out, "  min_semi_invariant_degree: none (<= {})", v.dim - 1)?,
    }
    if let Some(a) = v.a5_flag {
        writeln!(out, "  a5_flag: {}", bool_word(a))?;
    }
    if let Some(c) = class {
        writeln!(out, "  action_class: {}", c.tag())?;
    }
    writeln!(out, "  weakly_exceptional: {}", bool_word(v.weakly_exceptional))?;
    writeln!(out, "  witness: {}", v.witness)?;
    Ok(())
}

/// Runs `job` over `0..n` on up to `jobs` threads; results keep index order.
fn parallel_map<T: Send>(n: usize, jobs: usize, job: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..n).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, n.max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let r = job(i);
                slots.lock().expect("no poisoned worker")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("no poisoned worker").into_iter().map(|r| r.expect("filled")).collect()
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cmd_check(out: &mut dyn Write, err: &mut dyn Write, input: &InputArgs, dim: u32, classify: bool, also: &[String]) -> CliResult<()> {
    let params = parse_params(&input.params)?;
    let mut specs = vec![input.input.clone()];
    specs.extend(also.iter().cloned());
    if specs.len() > 1 && !params.is_empty() {
        return Err(CliError::Usage("--param cannot be combined with several inputs".into()));
    }
    let run = |i: usize| -> CliResult<(String, Verdict, Option<ActionClass>)> {
        let l = load_spec(&specs[i], &params, input.cap, input.class_cap)?;
        let v = check_weakly_exceptional(&l.group, dim as usize)?;
        let c = if classify { Some(classify_action(&l.group, l.class_cap)?) } else { None };
        Ok((l.name, v, c))
    };
    let results = parallel_map(specs.len(), default_jobs(), run);
    if specs.len() == 1 {
        let (name, v, c) = results.into_iter().next().expect("one input")?;
        return if input.json {
            print_json(out, &verdict_json(&name, &v, c.as_ref()))
        } else {
            verdict_text(out, &name, &v, c.as_ref())
        };
    }
    let mut worst = 0;
    let mut docs = Vec::new();
    for (spec, r) in specs.iter().zip(results) {
        match r {
            Ok((name, v, c)) => {
                if input.json {
                    docs.push(verdict_json(&name, &v, c.as_ref()));
                } else {
                    verdict_text(out, &name, &v, c.as_ref())?;
                }
            }
            Err(e) => {
                writeln!(err, "error: {spec}: {e}")?;
                if input.json {
                    docs.push(json!({ "name": spec, "error": e.to_string() }));
                }
                worst = worst.max(e.exit_code());
            }
        }
    }
    if input.json {
        print_json(out, &json!(docs))?;
    }
    if worst != 0 {
        return Err(CliError::Failed);
    }
    Ok(())
}

/// One checked fact of the report.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub fact: String,
    pub source: String,
    pub passed: bool,
    pub observed: String,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub name: String,
    pub order: Option<usize>,
    pub rows: Vec<ReportRow>,
    pub skipped: Option<String>,
    pub error: Option<String>,
    pub seconds: f64,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.rows.iter().all(|r| r.passed)
    }
}

pub fn report_entry(e: &CatalogEntry) -> EntryReport {
    let start = Instant::now();
    let mut rep = EntryReport {
        name: e.name.clone(),
        order: None,
        rows: Vec::new(),
        skipped: None,
        error: None,
        seconds: 0.0,
    };
    if e.is_slot() {
        rep.skipped = Some("no built-in generators".into());
        return rep;
    }
    let p = Params::new();
    let result = (|| -> wexc::Result<()> {
        let facts = e.expected_facts(&p)?;
        let g = e.build(&p)?;
        rep.order = Some(g.order());
        let mut checker = FactChecker::new(&g, e.class_cap());
        for f in facts {
            let t = Instant::now();
            let c = checker.check(&f.fact)?;
            rep.rows.push(ReportRow {
                fact: f.fact.to_string(),
                source: f.source.to_string(),
                passed: c.passed,
                observed: c.observed,
                seconds: t.elapsed().as_secs_f64(),
            });
        }
        Ok(())
    })();
    if let Err(err) = result {
        rep.error = Some(err.to_string());
    }
    rep.seconds = start.elapsed().as_secs_f64();
    rep
}

pub fn run_report(only: &[String], jobs: usize) -> Vec<EntryReport> {
    let entries: Vec<CatalogEntry> = catalog::list()
        .into_iter()
        .filter(|e| only.is_empty() || only.iter().any(|o| e.name.contains(o.as_str())))
        .collect();
    parallel_map(entries.len(), jobs, |i| report_entry(&entries[i]))
}

fn cmd_report(out: &mut dyn Write, only: &[String], as_json: bool, jobs: Option<usize>) -> CliResult<()> {
    let start = Instant::now();
    let reports = run_report(only, jobs.unwrap_or_else(default_jobs));
    let total: usize = reports.iter().map(|r| r.rows.len()).sum();
    let failed: usize = reports.iter().map(|r| r.rows.iter().filter(|x| !x.passed).count()).sum();
    let errors = reports.iter().filter(|r| r.error.is_some()).count();
    let skipped = reports.iter().filter(|r| r.skipped.is_some()).count();
    if reports.is_empty() {
        return Err(CliError::Usage("no catalog entry matches --only".into()));
    }
    if as_json {
        let v = json!({
            "entries": reports.iter().map(|r| json!({
                "name": r.name,
                "order": r.order,
                "skipped": r.skipped,
                "error": r.error,
                "seconds": r.seconds,
                "facts": r.rows.iter().map(|x| json!({
                    "fact": x.fact, "source": x.source, "passed": x.passed, "observed": x.observed,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "facts": total,
            "failed": failed,
            "errors": errors,
            "skipped": skipped,
            "seconds": start.elapsed().as_secs_f64(),
        });
        print_json(out, &v)?;
    } else {
        for r in &reports {
            if let Some(why) = &r.skipped {
                writeln!(out, "SKIP {}: {why}", r.name)?;
                continue;
            }
            for x in &r.rows {
                let mark = if x.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} {}: {} [{}] observed {}", r.name, x.fact, x.source, x.observed)?;
            }
            if let Some(e) = &r.error {
                writeln!(out, "FAIL {}: error: {e}", r.name)?;
            }
        }
        writeln!(
            out,
            "{} facts, {} passed, {failed} failed, {errors} entries with errors, {skipped} skipped, {:.1}s",
            total,
            total - failed,
            start.elapsed().as_secs_f64()
        )?;
    }
    if failed > 0 || errors > 0 {
        return Err(CliError::Failed);
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Catalog(CatalogCommand::List { json }) => cmd_catalog_list(out, *json),
        Command::Catalog(CatalogCommand::Show { name, params, export, json }) => {
            cmd_catalog_show(out, name, params, *export, *json)
        }
        Command::Closure(input) => cmd_closure(out, input),
        Command::Classify(input) => cmd_classify(out, input),
        Command::SemiInvariants { input, degree, max_degree } => cmd_semi(out, input, *degree, *max_degree),
        Command::Check { input, dim, classify, also } => cmd_check(out, err, input, *dim, *classify, also),
        Command::Report { only, json, jobs, .. } => cmd_report(out, only, *json, *jobs),
    }
}

/// Runs the command line and returns the exit code.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(CliError::Failed) => EXIT_FAILURE,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
