//! Command-line front end. [`run`] returns the exit code and the buffered
//! output so the binary and the tests share one code path.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::additive::{affine_relation, minimal_additive_multiple, AdditiveOptions};
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, FqElem};
use crate::identify::{identify, BlockSpec, Catalog, IdentifyOptions, RootLabeling};
use crate::paperprops::{fano_verify, m11_verify, VerifyReport};
use crate::permgrp::{closure, is_steiner, orbit_of_set, BlockSet, Permutation};
use crate::polyring::XTPoly;
use crate::resolvent::{descend, product_of, rational_subfactor_search, reconstruct_poly, subset_products, DEFAULT_GUARD};
use crate::series::{
    all_taylor_roots, fano_epsilon, fano_series, m11_epsilon, m11_series, mathieu_field, mathieu_series,
    newton_lift, puiseux_expand, ExpansionPoint, TruncSeries,
};

/// Version of the JSON output layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "fqgalois", version, about = "Galois groups of polynomials f(x, t) over F_q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Identify the Galois group of f from a catalog of transitive groups.
    Identify(IdentifyArgs),
    /// Print series roots from the closed-form constructions or by lifting.
    Series(SeriesArgs),
    /// Least additive (or affine) polynomial divisible by f.
    Additive(AdditiveArgs),
    /// Reconstruct a k-set resolvent or one of its factors from series roots.
    Resolvent(ResolventArgs),
    /// Orbit of a k-set under permutations and a Steiner-system check.
    Steiner(SteinerArgs),
    /// Verify the Fano/Serre series identities for x^7 + t x + 1.
    Fano(VerifyArgs),
    /// Verify the M11 series, the Steiner blocks and f_66 for x^11 + t x^2 - 1.
    M11(VerifyArgs),
    /// Run the full reproduction suite.
    Paper(PaperArgs),
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Field: a prime p, p^k, or a tag such as GF(2^3;z^3+z+1).
    #[arg(long, default_value = "2")]
    field: String,
    /// Polynomial in x and t, e.g. "x^24+x+t".
    #[arg(long)]
    poly: String,
}

#[derive(Args, Debug)]
struct IdentifyArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Specialize at points of F_{q^m} for every m up to this degree.
    #[arg(long, default_value_t = 3)]
    sweep_degree: usize,
    /// Maximum number of specialization points.
    #[arg(long, default_value_t = 4096)]
    point_budget: usize,
    /// Catalog file; defaults to the shipped catalog.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Also test factors of the k-set resolvent.
    #[arg(long)]
    resolvent_k: Option<usize>,
    /// `steiner11` or a JSON block file.
    #[arg(long)]
    blocks: Option<String>,
    /// Skip the additive-polynomial computation.
    #[arg(long)]
    no_additive: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesKind {
    Fano,
    Mathieu,
    M11,
    /// Newton lift of a simple root x0 of f(x, 0).
    Lift,
    /// Every Taylor root at t = 0.
    Taylor,
    /// Puiseux expansion at t = 0 or t = infinity.
    Puiseux,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Point {
    Origin,
    Infinity,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    kind: SeriesKind,
    #[arg(long, default_value_t = 32)]
    precision: usize,
    /// Root index i: the root with constant term ε^i (fano, m11) or α^i (mathieu).
    #[arg(long, default_value_t = 0)]
    index: u64,
    #[arg(long, default_value = "2")]
    field: String,
    #[arg(long)]
    poly: Option<String>,
    /// Starting root for `lift`, in the field's element syntax.
    #[arg(long)]
    x0: Option<String>,
    #[arg(long, value_enum, default_value = "origin")]
    at: Point,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct AdditiveArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Allow an affine relation L(x) ≡ c(t) (mod f).
    #[arg(long)]
    affine: bool,
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ResolventArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Subset size.
    #[arg(long)]
    k: usize,
    /// Series precision; defaults to tdeg-max + 1 + guard.
    #[arg(long)]
    precision: Option<usize>,
    /// t-degree bound; defaults to the proven bound from the pole orders of the roots.
    #[arg(long)]
    tdeg_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: usize,
    /// `steiner11` or a JSON block file.
    #[arg(long)]
    blocks: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SteinerArgs {
    /// Generators in cycle notation, separated by commas; defaults to M11.
    #[arg(long)]
    generators: Option<String>,
    #[arg(long, default_value_t = 11)]
    n: usize,
    /// Seed set as digits with X for 10, or comma-separated integers.
    #[arg(long, default_value = "X8267")]
    seed: String,
    #[arg(long, default_value_t = 4)]
    t: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run the checks (the only action).
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 128)]
    precision: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PaperArgs {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    #[arg(long)]
    json: bool,
}

/// Exit code and buffered streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Outcome {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text, 0)
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (input, result) = dispatch(cli.command);
    match result {
        Ok(o) => o,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: error_text(&e, input.as_deref()),
        },
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::NotPrime(_)
        | Error::UnsupportedCharacteristic(_)
        | Error::FieldTooLarge { .. }
        | Error::ModulusDegree { .. }
        | Error::ModulusNotMonic { .. }
        | Error::ReducibleModulus { .. }
        | Error::InvalidArgument(_)
        | Error::Permutation(_)
        | Error::Catalog(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn error_text(e: &Error, input: Option<&str>) -> String {
    match (e, input) {
        (Error::Parse { pos, .. }, Some(src)) if *pos <= src.len() => {
            let col = src[..*pos].chars().count();
            format!("error: {e}\n  {src}\n  {}^\n", " ".repeat(col))
        }
        _ => format!("error: {e}\n"),
    }
}

fn dispatch(cmd: Command) -> (Option<String>, Result<Outcome>) {
    match cmd {
        Command::Identify(a) => (Some(a.poly.poly.clone()), cmd_identify(a)),
        Command::Series(a) => (a.poly.clone(), cmd_series(a)),
        Command::Additive(a) => (Some(a.poly.poly.clone()), cmd_additive(a)),
        Command::Resolvent(a) => (Some(a.poly.poly.clone()), cmd_resolvent(a)),
        Command::Steiner(a) => (None, cmd_steiner(a)),
        Command::Fano(a) => (None, cmd_verify(a, fano_verify)),
        Command::M11(a) => (None, cmd_verify(a, m11_verify)),
        Command::Paper(a) => (None, cmd_paper(a)),
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn json_out(v: Value, code: i32) -> Outcome {
    let mut s = serde_json::to_string_pretty(&with_schema(v)).expect("JSON values serialize");
    s.push('\n');
    Outcome::ok(s, code)
}

/// A prime `p`, `p^k`, or a field tag.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    let r = if s.starts_with("GF(") {
        FieldSpec::parse_tag(s)
    } else {
        FieldSpec::parse_tag(&format!("GF({s})"))
    };
    r.map_err(|e| match e {
        Error::Parse { msg, .. } => Error::InvalidArgument(format!("--field {s}: {msg}")),
        e => e,
    })
}

fn parse_poly(a: &PolyArgs) -> Result<XTPoly> {
    XTPoly::parse(&parse_field(&a.field)?, &a.poly)
}

fn load_blocks(spec: &str, n: usize) -> Result<BlockSpec> {
    if spec == "steiner11" {
        return Ok(BlockSpec::steiner11());
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("{spec}: {e}")))?;
    let (list, labeling) = match &v {
        Value::Array(_) => (&v, RootLabeling::Canonical),
        Value::Object(m) => {
            let list = m
                .get("blocks")
                .ok_or_else(|| Error::InvalidArgument(format!("{spec}: missing \"blocks\"")))?;
            let labeling = match (m.get("field"), m.get("base")) {
                (Some(Value::String(f)), Some(Value::String(b))) => {
                    let field = parse_field(f)?;
                    let base = field.parse_elem(b)?;
                    RootLabeling::PowersOf { field, base }
                }
                (None, None) => RootLabeling::Canonical,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "{spec}: \"field\" and \"base\" must be given together as strings"
                    )))
                }
            };
            (list, labeling)
        }
        _ => return Err(Error::InvalidArgument(format!("{spec}: expected a list or an object"))),
    };
    Ok(BlockSpec {
        blocks: BlockSet::from_json(n, list)?,
        labeling,
    })
}

fn cmd_identify(a: IdentifyArgs) -> Result<Outcome> {
    let f = parse_poly(&a.poly)?;
    let catalog = match &a.catalog {
        Some(p) => Catalog::load(p)?,
        None => Catalog::shipped(),
    };
    let n = f.degree_x().unwrap_or(0);
    let blocks = a.blocks.as_deref().map(|b| load_blocks(b, n)).transpose()?;
    let opts = IdentifyOptions {
        sweep_degree: a.sweep_degree,
        point_budget: a.point_budget,
        additive: !a.no_additive,
        resolvent_k: a.resolvent_k,
        blocks,
        ..Default::default()
    };
    let report = identify(&f, &catalog, &opts)?;
    if a.json {
        return Ok(json_out(serde_json::to_value(&report).expect("report serializes"), 0));
    }
    let mut out = String::new();
    out += &format!("polynomial: {} over {}\n", report.input, report.field);
    out += &format!("shapes: {}\n", report.shapes.join(" "));
    out += &format!("transitive: {}\n", report.transitive);
    if let Some(add) = &report.additive {
        out += &format!(
            "additive: homogeneous p-degree {:?}, affine p-degree {:?}\n",
            add.homogeneous_pdeg, add.affine_pdeg
        );
    }
    if let Some(d) = &report.discriminant {
        out += &format!("discriminant: {:?}\n", d.verdict);
    }
    for r in &report.resolvents {
        out += &format!("{}-set resolvent: factor degrees {:?}\n", r.k, r.factor_degrees);
    }
    for x in &report.excluded {
        out += &format!("excluded {} by {}: {}\n", x.name, x.rule, x.reason);
    }
    for s in &report.survivors {
        out += &format!("survivor {} (order {})", s.name, s.order);
        if let Some(n) = &s.note {
            out += &format!(": {n}");
        }
        out.push('\n');
    }
    match &report.identified {
        Some(g) => out += &format!("identified: {g}\n"),
        None => out += "identified: none (several candidates remain)\n",
    }
    for n in &report.notes {
        out += &format!("note: {n}\n");
    }
    Ok(Outcome::ok(out, 0))
}

fn series_json(s: &TruncSeries) -> Value {
    json!({"text": s.to_string(), "field": s.field().tag(), "series": s.to_json()})
}

/// Adds the text with coefficients written as powers of `base`, named e.
fn with_powers(mut v: Value, s: &TruncSeries, base: &FqElem) -> Value {
    v["text_powers"] = json!(s.to_text_powers("t", base.value(), "e"));
    v
}

fn cmd_series(a: SeriesArgs) -> Result<Outcome> {
    let need_poly = || -> Result<XTPoly> {
        let src = a
            .poly
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("--poly is required for this kind".into()))?;
        XTPoly::parse(&parse_field(&a.field)?, src)
    };
    let value = match a.kind {
        SeriesKind::Fano => {
            let eps = fano_epsilon();
            let s = fano_series(&eps.pow(a.index), a.precision)?;
            with_powers(series_json(&s), &s, &eps)
        }
        SeriesKind::Mathieu => {
            let k = mathieu_field();
            let alpha = FqElem::new(&k, k.pow(k.primitive_element(), 89));
            series_json(&mathieu_series(&alpha.pow(a.index), a.precision)?)
        }
        SeriesKind::M11 => {
            let i = u32::try_from(a.index % 11).expect("index reduced mod 11");
            let eps = m11_epsilon();
            let s = m11_series(&eps, i, a.precision)?;
            with_powers(series_json(&s), &s, &eps)
        }
        SeriesKind::Lift => {
            let f = need_poly()?;
            let src = a
                .x0
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("--x0 is required for lift".into()))?;
            let x0 = FqElem::new(f.field(), f.field().parse_elem(src)?);
            series_json(&newton_lift(&f, &x0, a.precision)?)
        }
        SeriesKind::Taylor => all_taylor_roots(&need_poly()?, a.precision, None)?.to_json(),
        SeriesKind::Puiseux => {
            let at = match a.at {
                Point::Origin => ExpansionPoint::Origin,
                Point::Infinity => ExpansionPoint::Infinity,
            };
            puiseux_expand(&need_poly()?, at, a.precision, None)?.to_json()
        }
    };
    if a.json {
        return Ok(json_out(value, 0));
    }
    Ok(Outcome::ok(series_text(&value), 0))
}

fn series_text(v: &Value) -> String {
    let mut out = String::new();
    if let Some(t) = v.get("text_powers").and_then(Value::as_str) {
        out += &format!("{t}  (e = z in {})\n", v["field"].as_str().unwrap_or(""));
    } else if let Some(t) = v.get("text").and_then(Value::as_str) {
        out += &format!("{t}  [{}]\n", v["field"].as_str().unwrap_or(""));
    }
    for key in ["series", "branches"] {
        if let Some(list) = v.get(key).and_then(Value::as_array) {
            for s in list {
                if let Some(t) = s.get("text").and_then(Value::as_str) {
                    out += &format!("{t}  [{}]\n", v["field"].as_str().unwrap_or(""));
                }
            }
        }
    }
    for key in ["non_liftable", "wild"] {
        if let Some(list) = v.get(key).and_then(Value::as_array) {
            for s in list {
                out += &format!("{key}: {s}\n");
            }
        }
    }
    out
}

fn cmd_additive(a: AdditiveArgs) -> Result<Outcome> {
    let f = parse_poly(&a.poly)?;
    let opts = AdditiveOptions {
        degree_budget: a.budget,
        ..Default::default()
    };
    let rel = if a.affine {
        affine_relation(&f, &opts)?
    } else {
        minimal_additive_multiple(&f, &opts)?
    };
    if a.json {
        return Ok(json_out(rel.to_json(), 0));
    }
    let mut out = format!("L = {}\n", rel.l_text());
    if rel.is_affine() {
        out += &format!("c = {}\n", rel.c_text());
    }
    out += &format!("p-degree {}, {} terms\n", rel.pdeg, rel.term_count());
    Ok(Outcome::ok(out, 0))
}

fn cmd_resolvent(a: ResolventArgs) -> Result<Outcome> {
    let f = parse_poly(&a.poly)?;
    let n = f.degree_x().unwrap_or(0);
    if !f.is_monic_x() {
        return Err(Error::InvalidArgument("f must be monic in x".into()));
    }
    if a.k == 0 || a.k >= n {
        return Err(Error::InvalidArgument(format!("--k must lie in 1..{n}")));
    }
    let blocks = a.blocks.as_deref().map(|b| load_blocks(b, n)).transpose()?;
    let count = match &blocks {
        Some(b) => b.blocks.len(),
        None => crate::resolvent::binomial(n as u64, a.k as u64) as usize,
    };
    let tdeg_max = a
        .tdeg_max
        .unwrap_or_else(|| crate::identify::symmetric_tdeg_bound(&f, count, a.k));
    let precision = a.precision.unwrap_or(tdeg_max + 1 + a.guard);
    let hint = match blocks.as_ref().map(|b| &b.labeling) {
        Some(RootLabeling::PowersOf { field, .. }) => Some(field.clone()),
        _ => None,
    };
    let census = all_taylor_roots(&f, precision, hint.as_ref())?;
    if census.count() != n {
        return Err(Error::InvalidArgument(format!(
            "only {} of {n} roots are Taylor series at t = 0; shift t so f(x, 0) is squarefree",
            census.count()
        )));
    }
    let roots = match blocks.as_ref().map(|b| &b.labeling) {
        Some(RootLabeling::PowersOf { field, base }) => {
            let mut out = Vec::with_capacity(n);
            let mut c = field.one();
            for _ in 0..n {
                let s = census
                    .series
                    .iter()
                    .find(|s| s.coeff(0) == Some(c))
                    .ok_or_else(|| Error::InvalidArgument(format!("no root with constant term {}", field.format(c))))?;
                out.push(s.clone());
                c = field.mul(c, *base);
            }
            out
        }
        _ => census.series.clone(),
    };
    let (labels, values): (Vec<Vec<usize>>, Vec<TruncSeries>) = match &blocks {
        Some(b) => b.blocks.blocks().iter().map(|s| (s.clone(), product_of(&roots, s))).unzip(),
        None => subset_products(&roots, a.k, crate::resolvent::DEFAULT_PRODUCT_BUDGET)?
            .into_iter()
            .map(|p| (p.subset, p.value))
            .unzip(),
    };
    let rec = reconstruct_poly(&values, tdeg_max, a.guard)?;
    let down = descend(&rec.poly, f.field())?;
    let verdicts: Vec<Value> = match &down {
        Some(g) => labels
            .iter()
            .zip(&values)
            .map(|(s, v)| -> Result<Value> {
                let r = v.compose_poly(g)?;
                Ok(json!({"block": s, "vanishes": r.is_zero(), "valuation": r.valuation()}))
            })
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let mut factors = Vec::new();
    if blocks.is_none() && down.is_some() && values.len() <= 16 {
        let found = rational_subfactor_search(&values, f.field(), tdeg_max, a.guard, 1 << 16, None)?;
        for (subset, g) in found.into_iter().filter(|(s, _)| s.len() < values.len()) {
            let members: Vec<&Vec<usize>> = subset.iter().map(|&i| &labels[i]).collect();
            factors.push(json!({"degree": subset.len(), "subsets": members, "factor": g.to_string()}));
        }
    }
    let all_vanish = verdicts.iter().all(|v| v["vanishes"] == json!(true));
    let ok = rec.guard_ok && down.is_some() && all_vanish;
    let code = if ok { 0 } else { 1 };
    let poly_text = down.as_ref().map(|g| g.to_string());
    let value = json!({
        "k": a.k,
        "products": values.len(),
        "tdeg_max": tdeg_max,
        "precision": precision,
        "guard": a.guard,
        "guard_ok": rec.guard_ok,
        "rational": down.is_some(),
        "polynomial": poly_text,
        "blocks": verdicts,
        "proper_factors": factors,
    });
    if a.json {
        return Ok(json_out(value, code));
    }
    let mut out = match &poly_text {
        Some(p) => format!("{p}\n"),
        None => format!("not defined over {}\n", f.field().tag()),
    };
    out += &format!(
        "{} products, t-degree bound {tdeg_max}, precision {precision}, guard {}\n",
        values.len(),
        if rec.guard_ok { "clear" } else { "NOT clear" }
    );
    for fct in &factors {
        out += &format!("proper factor of degree {}: {}\n", fct["degree"], fct["factor"].as_str().unwrap_or(""));
    }
    if !verdicts.is_empty() {
        let vanished = verdicts.iter().filter(|v| v["vanishes"] == json!(true)).count();
        out += &format!("{vanished} of {} products are roots of the reconstruction\n", verdicts.len());
    }
    Ok(Outcome::ok(out, code))
}

fn parse_seed(s: &str) -> Result<Vec<usize>> {
    if s.contains(',') {
        return s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad seed entry '{t}'")))
            })
            .collect();
    }
    s.chars()
        .map(|c| match c {
            'X' | 'x' => Ok(10),
            d => d
                .to_digit(10)
                .map(|v| v as usize)
                .ok_or_else(|| Error::InvalidArgument(format!("bad seed digit '{d}'"))),
        })
        .collect()
}

fn cmd_steiner(a: SteinerArgs) -> Result<Outcome> {
    let gens: Vec<Permutation> = match &a.generators {
        Some(g) => g
            .split(',')
            .map(|c| Permutation::parse(c.trim(), a.n))
            .collect::<Result<_>>()?,
        None => crate::permgrp::m11_generators().to_vec(),
    };
    let seed = parse_seed(&a.seed)?;
    let order = match closure(&gens, 10_000_000) {
        Ok(all) => Some(all.len()),
        Err(Error::GroupOverflow(_)) => None,
        Err(e) => return Err(e),
    };
    let blocks = orbit_of_set(&gens, &seed)?;
    let verdict = is_steiner(&blocks, a.t, seed.len(), a.n);
    let code = if verdict.ok { 0 } else { 1 };
    if a.json {
        return Ok(json_out(
            json!({
                "group_order": order,
                "orbit_size": blocks.len(),
                "blocks": blocks.to_json(),
                "steiner": verdict.to_json(),
            }),
            code,
        ));
    }
    let mut out = match order {
        Some(o) => format!("group order {o}\n"),
        None => "group order exceeds 10000000\n".into(),
    };
    out += &format!("orbit of the seed: {} blocks\n", blocks.len());
    out += &format!(
        "S({},{},{}): {} ({} {}-subsets checked, {} uncovered, {} covered more than once)\n",
        a.t,
        seed.len(),
        a.n,
        if verdict.ok { "yes" } else { "no" },
        verdict.subsets_checked,
        a.t,
        verdict.uncovered.len(),
        verdict.multiply_covered.len()
    );
    Ok(Outcome::ok(out, code))
}

fn cmd_verify(a: VerifyArgs, verify: fn(usize) -> Result<VerifyReport>) -> Result<Outcome> {
    if !a.verify {
        return Err(Error::InvalidArgument("pass --verify to run the checks".into()));
    }
    let report = verify(a.precision)?;
    let code = if report.ok() { 0 } else { 1 };
    if a.json {
        return Ok(json_out(report.to_json(), code));
    }
    let mut out = format!("{} checks modulo t^{}\n", report.kind, report.precision);
    for c in &report.checks {
        let status = serde_json::to_value(c.status).expect("status serializes");
        out += &format!("{:<24} {}", c.check_id, status.as_str().unwrap_or(""));
        if let Some(e) = c.first_divergence_exponent {
            out += &format!(" (first divergence at t^{e})");
        }
        out.push('\n');
        for n in &c.notes {
            out += &format!("    {n}\n");
        }
    }
    Ok(Outcome::ok(out, code))
}

fn cmd_paper(a: PaperArgs) -> Result<Outcome> {
    let ids: Vec<u8> = if a.only.is_empty() {
        crate::reproduce::CRITERIA.iter().map(|c| c.0).collect()
    } else {
        a.only.clone()
    };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=11).contains(&i)) {
        return Err(Error::InvalidArgument(format!("criterion {bad} does not exist (1..=11)")));
    }
    let reports: Vec<_> = ids.iter().map(|&i| crate::reproduce::run_criterion(i)).collect();
    let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
    if a.json {
        return Ok(json_out(json!({"criteria": reports}), code));
    }
    let mut out = String::new();
    for r in &reports {
        out += &r.line();
        out.push('\n');
        for d in &r.details {
            out += &format!("    {d}\n");
        }
    }
    Ok(Outcome::ok(out, code))
}
