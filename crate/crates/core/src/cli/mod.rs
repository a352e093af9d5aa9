//! Command-line driver.
//!
//! Exit codes: 0 on success, 2 when a checked property fails, 1 on usage,
//! parse or evaluation errors.

mod report;
mod suites;

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fixedbitset::FixedBitSet;
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::comb::{covering_number, finitely_representable, homothety_witness, packing_index, partition_analyze};
use crate::dens::{
    dstar_window, eval_extremal, is12, iss213, kelley_bruteforce, kelley_lp, si21, sis123, subadditivize,
    translate_family, us12, uss213_search, DensityResult, ExtremalBudget, ExtremalPattern, Method, Value,
};
use crate::error::{Error, Result};
use crate::grp::{Group, Subset, Window};
use crate::lang::{canonical_print, parse_group, parse_set, print_group};
use crate::rational::Rational;

pub use suites::{partitions, subsets_by_size, Suite};

#[derive(Debug, Parser)]
#[command(name = "extremal", version, about = "Exact extremal densities and combinatorial indices on groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock runtimes to every result (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Worker threads for enumeration suites.
    #[arg(long, global = true, env = "EXTREMAL_THREADS")]
    pub threads: Option<usize>,
    /// Seed for sampled approximations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `exact` turns any non-exact result into an error.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Bounds)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Bounds,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity on one set.
    Eval(EvalArgs),
    /// Run a named property suite.
    Check(CheckArgs),
    /// Analyze a partition given by its cells.
    Partition(PartitionArgs),
    /// Search for a combinatorial witness.
    Witness(WitnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Is12,
    Si21,
    Us12,
    Iss213,
    Uss213,
    Sis123,
    HatIs12,
    Dstar,
    KelleyLp,
    KelleyBruteforce,
    Extremal,
    Pack,
    Cov,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    /// Finite support window for the outer measure, as a set expression.
    #[arg(long)]
    pub support: Option<String>,
    /// Radius of the search ball on infinite groups.
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, default_value_t = 12)]
    pub kmax: usize,
    #[arg(long = "grid", default_value_t = 4)]
    pub grid_denominator: usize,
    #[arg(long, default_value_t = 6)]
    pub cap: usize,
    /// Cube sides for `dstar`.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 4, 8])]
    pub ladder: Vec<usize>,
    /// Quantifier word for `extremal`, e.g. `is`.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Permutation for `extremal`, e.g. `12`.
    #[arg(long)]
    pub perm: Option<String>,
    /// Largest group order enumerated exactly by `hat-is12`.
    #[arg(long, default_value_t = 12)]
    pub exact_limit: usize,
    /// Random sets drawn by `hat-is12` beyond the exact limit.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, default_value_t = 12)]
    pub kmax: usize,
    #[arg(long = "grid", default_value_t = 4)]
    pub grid_denominator: usize,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub group: String,
    /// One cell per occurrence.
    #[arg(long = "cell", required = true)]
    pub cells: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Packing,
    Homothety,
    Representable,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(value_enum)]
    pub kind: WitnessKind,
    #[arg(long)]
    pub group: String,
    /// The set `A` (packing, homothety) or the target `B` (representable).
    #[arg(long)]
    pub set: String,
    /// Finite set `F` (homothety) or `A` (representable).
    #[arg(long)]
    pub points: Option<String>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, default_value_t = 6)]
    pub cap: usize,
    #[arg(long, default_value_t = 3)]
    pub degree_cap: usize,
}

/// Everything that determines a report, echoed into its metadata.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub group: Option<String>,
    pub sets: Vec<String>,
    pub quantity: Option<String>,
    pub radius: Option<usize>,
    pub kmax: Option<usize>,
    pub grid_denominator: Option<usize>,
    pub degree_cap: Option<usize>,
    pub cap: Option<usize>,
    pub seed: u64,
    pub threads: Option<usize>,
    pub format: Format,
    pub mode: Mode,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let pool = match cli.common.threads {
        Some(0) => return Outcome::usage("--threads must be at least 1"),
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e),
    };
    match pool.install(|| execute(&cli)) {
        Ok((report, ok)) => Outcome { code: if ok { 0 } else { 2 }, stdout: report, stderr: String::new() },
        Err(e) => Outcome::usage(e),
    }
}

struct Ctx<'a> {
    common: &'a Common,
    config: RunConfig,
}

fn load_group(text: &str) -> Result<(Group, String)> {
    let spec = parse_group(text)?;
    let canonical = print_group(&spec);
    Ok((Group::new(spec)?, canonical))
}

fn finite_window(g: &Group, text: &str) -> Result<Window> {
    let set = parse_set(text, g)?;
    let elems = g
        .enumerate(&set)?
        .ok_or_else(|| Error::InvalidArgument(format!("{text} is not a finite set")))?;
    Window::new(elems)
}

fn execute(cli: &Cli) -> Result<(String, bool)> {
    let c = &cli.common;
    let base = |command: &str| RunConfig {
        command: command.to_string(),
        group: None,
        sets: Vec::new(),
        quantity: None,
        radius: None,
        kmax: None,
        grid_denominator: None,
        degree_cap: None,
        cap: None,
        seed: c.seed,
        threads: c.threads,
        format: c.format,
        mode: c.mode,
    };
    let (config, results) = match &cli.command {
        Command::Eval(a) => {
            let mut cfg = base("eval");
            cfg.group = Some(a.group.clone());
            cfg.sets = vec![a.set.clone()];
            cfg.quantity = Some(format!("{:?}", a.quantity).to_lowercase());
            cfg.radius = a.radius;
            cfg.kmax = Some(a.kmax);
            cfg.grid_denominator = Some(a.grid_denominator);
            cfg.cap = Some(a.cap);
            let ctx = Ctx { common: c, config: cfg };
            let rec = eval(&ctx, a)?;
            (ctx.config, vec![rec])
        }
        Command::Check(a) => {
            let mut cfg = base("check");
            cfg.group = a.group.clone();
            cfg.quantity = Some(a.suite.name().to_string());
            cfg.kmax = Some(a.kmax);
            cfg.grid_denominator = Some(a.grid_denominator);
            let budget = ExtremalBudget { kmax: a.kmax, grid_denominator: a.grid_denominator };
            let loaded = a.group.as_deref().map(load_group).transpose()?;
            let gtext = loaded.as_ref().map(|(_, t)| t.clone()).unwrap_or_default();
            let start = Instant::now();
            let cases = suites::run_suite(a.suite, loaded.as_ref().map(|(g, _)| g), &gtext, &budget)?;
            let elapsed = start.elapsed().as_millis() as u64;
            let mut results = cases;
            if c.timings {
                let each = elapsed / results.len().max(1) as u64;
                for r in &mut results {
                    r.insert("runtime_ms".into(), json!(each));
                }
            }
            (cfg, results)
        }
        Command::Partition(a) => {
            let mut cfg = base("partition");
            cfg.group = Some(a.group.clone());
            cfg.sets = a.cells.clone();
            let (g, gtext) = load_group(&a.group)?;
            let cells = a.cells.iter().map(|s| parse_set(s, &g)).collect::<Result<Vec<_>>>()?;
            let start = Instant::now();
            let r = partition_analyze(&g, &cells)?;
            let names: Vec<String> = cells.iter().map(|s| canonical_print(&g, s)).collect();
            let mut rec = report::record("partition", &gtext, json!(names));
            rec.insert("kind".into(), json!("check"));
            rec.insert("value".into(), json!(if r.passed() { "pass" } else { "fail" }));
            rec.insert("method".into(), json!("subset-enum"));
            rec.insert("witness".into(), report::partition_json(&g, &r));
            if c.timings {
                rec.insert("runtime_ms".into(), json!(start.elapsed().as_millis() as u64));
            }
            (cfg, vec![rec])
        }
        Command::Witness(a) => {
            let mut cfg = base("witness");
            cfg.group = Some(a.group.clone());
            cfg.sets = std::iter::once(a.set.clone()).chain(a.points.clone()).collect();
            cfg.quantity = Some(format!("{:?}", a.kind).to_lowercase());
            cfg.radius = a.radius;
            cfg.cap = Some(a.cap);
            cfg.degree_cap = Some(a.degree_cap);
            let ctx = Ctx { common: c, config: cfg };
            let rec = witness(&ctx, a)?;
            (ctx.config, vec![rec])
        }
    };
    Ok(envelope(&config, &results, c.format))
}

/// Wraps result records in the report document; the flag is false when some
/// record is a failed check.
fn envelope(config: &RunConfig, results: &[Map<String, Json>], format: Format) -> (String, bool) {
    let failed = |r: &&Map<String, Json>| r.get("value") == Some(&json!("fail"));
    let violations = results.iter().filter(failed).count();
    let mut meta = Map::new();
    meta.insert("tool".into(), json!("extremal"));
    meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta.insert("config".into(), serde_json::to_value(config).expect("serializable config"));
    meta.insert("cases".into(), json!(results.len()));
    meta.insert("violations".into(), json!(violations));
    meta.insert("status".into(), json!(if violations == 0 { "pass" } else { "violation" }));
    if let Some(first) = results.iter().find(failed) {
        meta.insert("counterexample".into(), Json::Object(first.clone()));
    }
    let text = match format {
        Format::Json => {
            let doc = json!({"meta": meta, "results": results});
            serde_json::to_string_pretty(&doc).expect("serializable report") + "\n"
        }
        Format::Tsv => tsv(&meta, results),
    };
    (text, violations == 0)
}

fn tsv(meta: &Map<String, Json>, results: &[Map<String, Json>]) -> String {
    const COLUMNS: [&str; 9] = ["quantity", "group", "set", "kind", "value", "lo", "hi", "method", "witness"];
    let cell = |v: Option<&Json>| match v {
        None | Some(Json::Null) => String::new(),
        Some(Json::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    };
    let mut out = format!("# {}\n", Json::Object(meta.clone()));
    let mut header: Vec<&str> = COLUMNS.to_vec();
    let timed = results.iter().any(|r| r.contains_key("runtime_ms"));
    if timed {
        header.push("runtime_ms");
    }
    out.push_str(&header.join("\t"));
    out.push('\n');
    for r in results {
        let row: Vec<String> = header.iter().map(|k| cell(r.get(*k))).collect();
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn require_exact(ctx: &Ctx<'_>, v: &Value) -> Result<()> {
    if ctx.common.mode == Mode::Exact && v.exact().is_none() {
        return Err(Error::Unsupported(format!("result is {} but --mode exact was requested", v.kind())));
    }
    Ok(())
}

fn eval(ctx: &Ctx<'_>, a: &EvalArgs) -> Result<Map<String, Json>> {
    let (g, gtext) = load_group(&a.group)?;
    let set = parse_set(&a.set, &g)?;
    let stext = canonical_print(&g, &set);
    let support = a.support.as_deref().map(|s| finite_window(&g, s)).transpose()?;
    let sup = support.as_ref();
    let start = Instant::now();
    let qname = ctx.config.quantity.clone().expect("set for eval");
    let density = |r: DensityResult| -> Result<Map<String, Json>> {
        require_exact(ctx, &r.value)?;
        Ok(report::density(&qname, &gtext, json!(stext), &g, &r))
    };
    let mut rec = match a.quantity {
        Quantity::Is12 => density(is12(&g, &set, sup)?)?,
        Quantity::Si21 => density(si21(&g, &set)?)?,
        Quantity::Us12 => density(us12(&g, &set, a.kmax, sup)?)?,
        Quantity::Iss213 => density(iss213(&g, &set, sup)?)?,
        Quantity::Uss213 => density(uss213_search(&g, &set, a.kmax, sup)?)?,
        Quantity::Sis123 => density(sis123(&g, &set, a.kmax, a.grid_denominator)?)?,
        Quantity::Dstar => density(dstar_window(&g, &set, &a.ladder)?)?,
        Quantity::KelleyLp => density(kelley_lp(&translate_family(&g, &set)?)?)?,
        Quantity::KelleyBruteforce => {
            let v = kelley_bruteforce(&translate_family(&g, &set)?, a.kmax)?;
            density(DensityResult::exact(v, Method::SubsetEnum))?
        }
        Quantity::HatIs12 => {
            let bits = g.finite_bits(&set)?;
            let base = |b: &FixedBitSet| -> Result<Rational> {
                Ok(is12(&g, &Subset::from_bits(b), None)?.value.exact().cloned().expect("exact on finite groups"))
            };
            density(subadditivize(&g, base, &bits, a.exact_limit, a.samples, ctx.common.seed)?)?
        }
        Quantity::Extremal => {
            let (q, p) = match (&a.pattern, &a.perm) {
                (Some(q), Some(p)) => (q, p),
                _ => return Err(Error::InvalidArgument("extremal needs --pattern and --perm".into())),
            };
            let pattern = ExtremalPattern::parse(q, p)?;
            let budget = ExtremalBudget { kmax: a.kmax, grid_denominator: a.grid_denominator };
            let mut rec = density(eval_extremal(&pattern, &g, &set, budget)?)?;
            rec.insert("quantity".into(), json!(format!("extremal:{pattern}")));
            rec
        }
        Quantity::Pack => {
            let window = a.radius.map(|r| g.ball(r));
            let p = packing_index(&g, &set, a.cap, window.as_ref())?;
            if ctx.common.mode == Mode::Exact && p.value.exact().is_none() {
                return Err(Error::Unsupported("packing index is only bounded; --mode exact was requested".into()));
            }
            let method = if g.is_finite() { "subset-enum" } else if set.period(&g).is_some() { "quotient" } else { "grid" };
            report::index_record(&qname, &gtext, json!(stext), method, report::pack_json(&g, &p))
        }
        Quantity::Cov => {
            let c = covering_number(&g, &set, a.cap)?;
            if ctx.common.mode == Mode::Exact && c.value.exact().is_none() {
                return Err(Error::Unsupported("covering number is only bounded; --mode exact was requested".into()));
            }
            let method = if g.is_finite() { "subset-enum" } else if set.period(&g).is_some() { "quotient" } else { "closed-form" };
            report::index_record(&qname, &gtext, json!(stext), method, report::cov_json(&g, &c))
        }
    };
    if ctx.common.timings {
        rec.insert("runtime_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    Ok(rec)
}

fn witness(ctx: &Ctx<'_>, a: &WitnessArgs) -> Result<Map<String, Json>> {
    let (g, gtext) = load_group(&a.group)?;
    let set = parse_set(&a.set, &g)?;
    let stext = canonical_print(&g, &set);
    let qname = ctx.config.quantity.clone().expect("set for witness");
    let start = Instant::now();
    let points = || -> Result<Vec<crate::grp::Element>> {
        let text = a.points.as_deref().ok_or_else(|| Error::InvalidArgument("--points is required".into()))?;
        Ok(finite_window(&g, text)?.elements().to_vec())
    };
    let mut rec = match a.kind {
        WitnessKind::Packing => {
            let window = a.radius.map(|r| g.ball(r));
            let p = packing_index(&g, &set, a.cap, window.as_ref())?;
            report::index_record(&qname, &gtext, json!(stext), "grid", report::pack_json(&g, &p))
        }
        WitnessKind::Homothety => {
            let f = points()?;
            let h = homothety_witness(&g, &set, &f, a.degree_cap)?;
            let mut rec = report::record(&qname, &gtext, json!(stext));
            rec.insert("kind".into(), json!(if h.is_some() { "found" } else { "none" }));
            rec.insert("method".into(), json!("subset-enum"));
            rec.insert("points".into(), report::elems(&g, &f));
            rec.insert("witness".into(), report::homothety_json(&g, &h));
            rec
        }
        WitnessKind::Representable => {
            let f = points()?;
            let window = g.ball(a.radius.unwrap_or(0));
            let y = finitely_representable(&g, &f, &set, &window)?;
            let mut rec = report::record(&qname, &gtext, json!(stext));
            rec.insert("kind".into(), json!(if y.is_some() { "found" } else { "none" }));
            rec.insert("method".into(), json!("grid"));
            rec.insert("points".into(), report::elems(&g, &f));
            rec.insert("witness".into(), y.map_or(Json::Null, |y| report::elem(&g, &y)));
            rec
        }
    };
    if ctx.common.timings {
        rec.insert("runtime_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    Ok(rec)
}
