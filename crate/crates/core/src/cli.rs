//! The `qs` command line. Exit codes: 0 success, 1 check failed, 2 input error, 3 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{catalog, parse_catalog_spec, CatalogEntry, CATALOG_NAMES};
use crate::error::{Error, Result};
use crate::hypothesis::{check_hypothesis_h, HReading, HVerdict};
use crate::io;
use crate::oracle::{
    affine_report_from, budget_from_env, count, count_cell, counting_polynomial, euler_from_report, poincare_from_report,
    AFFINE_PRIMES, DEFAULT_PRIMES,
};
use crate::quiver::{is_strictly_ordered, is_tree_extension, is_winding, quotient_by, QuiverSpec, VertexOrder};
use crate::representation::{is_ordered_above, push_forward, restrict, DimVector, PathMode, Representation};
use crate::schubert::{
    enumerate_cells, generate_equations, tree_cell_dimension, tree_cell_emptiness, CellEmptiness, CellIndex, Fibred,
};

#[derive(Parser, Debug)]
#[command(name = "qs", version, about = "Schubert cells of quiver Grassmannians, checked by point counting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the quiver, representation and (if given) the ordered-above condition.
    Validate(Common),
    /// Is the morphism a winding, and is it strictly ordered?
    Winding(Common),
    /// Is the quiver a tree extension of the subquiver? With --beta, the cell's emptiness and n_β.
    TreeExt(Common),
    /// Print the push-forward F_*M.
    Pushforward(Common),
    /// List the cell indices for a dimension vector.
    Cells(Common),
    /// Defining equations of one cell.
    Equations(Common),
    /// Decide Hypothesis (H).
    HypothesisH(Common),
    /// Per-cell point counts over prime fields.
    Count(Common),
    /// Counting polynomial by exact interpolation.
    Poly(Common),
    /// Euler characteristic from certified affine cells.
    Euler(Common),
    /// Poincaré polynomial from certified affine cells.
    Poincare(Common),
    /// Certify every cell as an affine space by counting.
    VerifyAffine(Common),
    /// List the catalog, or print one entry.
    Catalog {
        /// Entry such as `two_lines` or `flag(3;1,2)`.
        spec: Option<String>,
        #[command(flatten)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone, Copy)]
#[group(multiple = false)]
struct Format {
    /// JSON output, one object per invocation.
    #[arg(long)]
    json: bool,
    /// Text output (default).
    #[arg(long)]
    text: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Domain,
    Target,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Reading {
    Symmetric,
    Literal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Paths {
    Undirected,
    Directed,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Catalog entry such as `ex_4_5_1` or `flag(3;1,2)`.
    #[arg(long, conflicts_with = "input")]
    catalog: Option<String>,
    /// JSON file holding a representation or a bundle.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Dimension vector, `1,1` or `x=1,y=1`.
    #[arg(long)]
    dim_vector: Option<String>,
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Comma-separated vertices of S (induced subquiver).
    #[arg(long)]
    subquiver: Option<String>,
    /// Comma-separated vertex order overriding the one induced by the basis.
    #[arg(long)]
    order: Option<String>,
    /// Cell index such as `{3,4}`.
    #[arg(long)]
    beta: Option<String>,
    /// Work on M or on F_*M; defaults to F_*M when a morphism is present.
    #[arg(long, value_enum)]
    on: Option<Side>,
    /// Reading of the third bullet of (H).
    #[arg(long, value_enum, default_value = "symmetric")]
    reading: Reading,
    /// Paths in the ordered-above condition.
    #[arg(long, value_enum, default_value = "undirected")]
    paths: Paths,
    /// Enumeration budget in points; defaults to QS_BUDGET or 1e8.
    #[arg(long)]
    budget: Option<u128>,
    /// Record that the Grassmannian is known to be smooth.
    #[arg(long)]
    assert_smooth: bool,
    #[command(flatten)]
    format: Format,
}

/// Exit code with captured output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    code: i32,
    text: String,
    json: Value,
}

impl Output {
    fn new(code: i32, text: String, json: Value) -> Output {
        Output { code, text, json }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
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
    let json = match &cli.command {
        Command::Catalog { format, .. } => format.json,
        Command::Validate(c)
        | Command::Winding(c)
        | Command::TreeExt(c)
        | Command::Pushforward(c)
        | Command::Cells(c)
        | Command::Equations(c)
        | Command::HypothesisH(c)
        | Command::Count(c)
        | Command::Poly(c)
        | Command::Euler(c)
        | Command::Poincare(c)
        | Command::VerifyAffine(c) => c.format.json,
    };
    match dispatch(cli.command) {
        Ok(out) => {
            let stdout = if json { io::to_json_string(&out.json) } else { out.text };
            Outcome { code: out.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stdout = if json { io::to_json_string(&json!({"error": e.to_string()})) } else { String::new() };
            Outcome { code: exit_code(&e), stdout, stderr: format!("error: {e}\n") }
        }
    }
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Catalog { spec, .. } => cmd_catalog(spec.as_deref()),
        Command::Validate(c) => cmd_validate(&c),
        Command::Winding(c) => cmd_winding(&c),
        Command::TreeExt(c) => cmd_tree_ext(&c),
        Command::Pushforward(c) => cmd_pushforward(&c),
        Command::Cells(c) => cmd_cells(&c),
        Command::Equations(c) => cmd_equations(&c),
        Command::HypothesisH(c) => cmd_hypothesis(&c),
        Command::Count(c) => cmd_count(&c),
        Command::Poly(c) => cmd_poly(&c),
        Command::Euler(c) => cmd_euler(&c),
        Command::Poincare(c) => cmd_poincare(&c),
        Command::VerifyAffine(c) => cmd_verify_affine(&c),
    }
}

fn load(c: &Common) -> Result<CatalogEntry> {
    let mut entry = match (&c.catalog, &c.input) {
        (Some(spec), None) => {
            let (name, params) = parse_catalog_spec(spec)?;
            catalog(&name, &params)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            let value = io::parse_json(&text)?;
            let quiver = value.get("representation").unwrap_or(&value).get("quiver");
            if let Some(spec) = quiver.and_then(|q| serde_json::from_value::<QuiverSpec>(q.clone()).ok()) {
                let issues = spec.validate();
                if !issues.is_empty() {
                    return Err(Error::InvalidQuiver(issues));
                }
            }
            io::bundle_from_json(&value)?
        }
        _ => return Err(Error::Input("give exactly one of --catalog or --input".into())),
    };
    if let Some(list) = &c.subquiver {
        let q = entry.representation.quiver();
        entry.subquiver = Some(crate::quiver::Subquiver::induced(q, &split_list(list))?);
    }
    Ok(entry)
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
}

fn budget(c: &Common) -> u128 {
    c.budget.unwrap_or_else(budget_from_env)
}

fn vertex_order(c: &Common, entry: &CatalogEntry) -> Result<Option<VertexOrder>> {
    c.order.as_ref().map(|o| VertexOrder::from_ids(entry.representation.quiver(), &split_list(o))).transpose()
}

/// The representation a cell-level command acts on, with its dimension vector.
fn working(c: &Common, entry: &CatalogEntry) -> Result<(Representation, DimVector)> {
    let side = c.on.unwrap_or(if entry.morphism.is_some() { Side::Target } else { Side::Domain });
    let rep = match side {
        Side::Domain => entry.representation.clone(),
        Side::Target => entry.target()?,
    };
    let e = match &c.dim_vector {
        Some(text) => DimVector::parse(rep.quiver(), text)?,
        None => match (&entry.dim_vector, side, entry.morphism.is_some()) {
            (Some(e), Side::Target, _) | (Some(e), Side::Domain, false) => e.clone(),
            _ => return Err(Error::Input("no dimension vector: pass --dim-vector".into())),
        },
    };
    Ok((rep, e))
}

fn require_beta(c: &Common, rep: &Representation) -> Result<CellIndex> {
    let text = c.beta.as_deref().ok_or_else(|| Error::Input("pass --beta, e.g. --beta {3,4}".into()))?;
    CellIndex::parse(rep.basis(), text)
}

fn cmd_catalog(spec: Option<&str>) -> Result<Output> {
    let Some(spec) = spec else {
        let text: String = CATALOG_NAMES.iter().map(|n| format!("{n}\n")).collect();
        return Ok(Output::new(0, text, json!({ "entries": CATALOG_NAMES })));
    };
    let (name, params) = parse_catalog_spec(spec)?;
    let entry = catalog(&name, &params)?;
    let v = io::bundle_to_json(&entry);
    let mut text = format!("{}\n", entry.label());
    let q = entry.representation.quiver();
    let _ = writeln!(text, "vertices: {}", q.vertices().join(" "));
    for a in q.arrows() {
        let _ = writeln!(text, "arrow {}: {} -> {}", a.id, q.vertex_id(a.src), q.vertex_id(a.tgt));
    }
    let _ = writeln!(text, "basis: {}", entry.representation.basis().ids().join(" "));
    if let Some(s) = &entry.subquiver {
        let _ = writeln!(text, "subquiver: {}", s.vertex_ids(q).join(" "));
    }
    if let Some(f) = &entry.morphism {
        let target = f.codomain();
        let _ = writeln!(text, "target: {}", target.vertices().join(" "));
        if let Some(e) = &entry.dim_vector {
            let _ = writeln!(text, "dim vector: {}", fmt_dims(e, target));
        }
    } else if let Some(e) = &entry.dim_vector {
        let _ = writeln!(text, "dim vector: {}", fmt_dims(e, q));
    }
    Ok(Output::new(0, text, v))
}

fn fmt_dims(e: &DimVector, q: &crate::quiver::Quiver) -> String {
    q.vertices().iter().zip(&e.0).map(|(v, n)| format!("{v}={n}")).collect::<Vec<_>>().join(",")
}

fn path_mode(c: &Common) -> PathMode {
    match c.paths {
        Paths::Undirected => PathMode::Undirected,
        Paths::Directed => PathMode::Directed,
    }
}

fn cmd_validate(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let m = &entry.representation;
    let q = m.quiver();
    let mut text = format!(
        "ok: {} vertices, {} arrows, rank vector {}\n",
        q.vertex_count(),
        q.arrow_count(),
        fmt_dims(&m.rank_vector(), q)
    );
    let mut v = json!({
        "valid": true,
        "vertices": q.vertex_count(),
        "arrows": q.arrow_count(),
        "rank_vector": m.rank_vector().to_map(q),
    });
    let mut code = 0;
    if let Some(s) = &entry.subquiver {
        let report = is_ordered_above(m, s, path_mode(c))?;
        let holds = report.holds();
        if !holds {
            code = 1;
        }
        let _ = writeln!(text, "ordered above S: {}", yes_no(holds));
        for d in &report.diagnostics {
            let _ = writeln!(text, "  {d}");
        }
        v["ordered_above"] = json!({
            "holds": holds,
            "subquiver_basis_first": report.subquiver_basis_first,
            "induces_vertex_order": report.induces_vertex_order,
            "monotone_paths": report.monotone_paths,
            "identity_on_difference": report.identity_on_difference,
            "diagnostics": report.diagnostics,
        });
    }
    Ok(Output::new(code, text, v))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_winding(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let f = entry.morphism.as_ref().ok_or_else(|| Error::Input("this input has no morphism".into()))?;
    let winding = is_winding(f);
    let order = vertex_order(c, &entry)?.unwrap_or_else(|| entry.representation.basis().vertex_order());
    let strict = is_strictly_ordered(f, &order)?;
    let text = format!("winding: {}\nstrictly ordered: {}\n", yes_no(winding), yes_no(strict));
    let code = if winding && strict { 0 } else { 1 };
    Ok(Output::new(code, text, json!({"winding": winding, "strictly_ordered": strict})))
}

fn cmd_tree_ext(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let m = &entry.representation;
    let s = entry.subquiver.as_ref().ok_or_else(|| Error::Input("pass --subquiver".into()))?;
    let q = m.quiver();
    let holds = is_tree_extension(q, s)?;
    let quotient = quotient_by(q, s)?;
    let mut text = format!("tree extension: {}\n", yes_no(holds));
    let mut v = json!({"tree_extension": holds, "quotient": io::quiver_to_json(&quotient)});
    if holds && c.beta.is_some() {
        let beta = require_beta(c, m)?;
        let restriction = restrict(m, s)?;
        let beta_s = beta.restrict_to(&restriction.parent_position);
        let mut base_nonempty = false;
        for &p in &DEFAULT_PRIMES[..3] {
            base_nonempty |= count_cell(&restriction.representation, &beta_s, p, budget(c))? > 0;
        }
        let verdict = tree_cell_emptiness(m, s, &beta, base_nonempty)?;
        let label = match verdict {
            CellEmptiness::Nonempty => "nonempty".to_string(),
            CellEmptiness::EmptyBase => "empty (base cell empty over F_2, F_3, F_5)".to_string(),
            CellEmptiness::EmptyArrow { arrow, element } => {
                format!("empty ({} maps {} outside the cell)", q.arrow(arrow).id, m.basis().id(element))
            }
        };
        let _ = writeln!(text, "cell {}: {label}", beta.display(m.basis()));
        v["cell"] = io::cell_json(&beta, m.basis());
        v["empty"] = json!(verdict.is_empty());
        if !verdict.is_empty() {
            let n = tree_cell_dimension(m, s, &beta)?;
            let _ = writeln!(text, "n_beta = {n}");
            v["n_beta"] = json!(n);
        }
    }
    Ok(Output::new(if holds { 0 } else { 1 }, text, v))
}

fn cmd_pushforward(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let f = entry.morphism.as_ref().ok_or_else(|| Error::Input("this input has no morphism".into()))?;
    let n = push_forward(f, &entry.representation)?;
    let v = io::representation_to_json(&n);
    let q = n.quiver();
    let mut text = String::new();
    for (k, id) in n.basis().ids().iter().enumerate() {
        let _ = writeln!(text, "{id} @ {}", q.vertex_id(n.basis().vertex_of(k)));
    }
    for (a, arrow) in q.arrows().iter().enumerate() {
        let _ = writeln!(text, "{}: {:?}", arrow.id, n.matrix(a).to_rows());
    }
    Ok(Output::new(0, text, v))
}

fn cmd_cells(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let (rep, e) = working(c, &entry)?;
    let cells = enumerate_cells(rep.basis(), &e)?;
    let text: String = cells.iter().map(|b| format!("{}\n", b.display(rep.basis()))).collect();
    Ok(Output::new(0, text, io::cells_to_json(&cells, rep.basis(), &e, rep.quiver())))
}

fn cmd_equations(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let side = c.on.unwrap_or(if entry.morphism.is_some() { Side::Target } else { Side::Domain });
    let m = &entry.representation;
    let sys = match (side, &entry.morphism) {
        (Side::Target, Some(f)) => {
            let n = push_forward(f, m)?;
            let beta = require_beta(c, &n)?;
            generate_equations(&n, &beta, Some(Fibred { morphism: f, source: m }))?
        }
        _ => {
            let beta = require_beta(c, m)?;
            generate_equations(m, &beta, None)?
        }
    };
    Ok(Output::new(0, sys.to_text(), io::equations_to_json(&sys)))
}

fn cmd_hypothesis(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let m = &entry.representation;
    let s = entry.subquiver.as_ref().ok_or_else(|| Error::Input("pass --subquiver".into()))?;
    let f = entry.morphism.as_ref().ok_or_else(|| Error::Input("this input has no morphism".into()))?;
    let order = vertex_order(c, &entry)?;
    let reading = match c.reading {
        Reading::Symmetric => HReading::Symmetric,
        Reading::Literal => HReading::Literal,
    };
    let verdict = check_hypothesis_h(m, s, f, order.as_ref(), reading)?;
    let t = m.quiver();
    let q = f.codomain();
    let triple = |tt: &crate::hypothesis::TypedTriple| {
        format!(
            "({},{},{}) {}",
            q.arrow(tt.triple.arrow).id,
            t.vertex_id(tt.triple.t),
            t.vertex_id(tt.triple.s),
            tt.ty
        )
    };
    let mut text = String::new();
    match &verdict {
        HVerdict::Pass { pairs, exceptions, notes } => {
            let plural = if exceptions.len() == 1 { "" } else { "s" };
            let _ = writeln!(text, "PASS ({} relevant pairs, {} exception{plural})", pairs.len(), exceptions.len());
            for e in exceptions {
                let _ = writeln!(
                    text,
                    "exception ({}) at ({},{}): {}",
                    e.kind,
                    t.vertex_id(e.pair.0),
                    t.vertex_id(e.pair.1),
                    triple(&e.triple)
                );
            }
            for n in notes {
                let _ = writeln!(text, "note: {n}");
            }
        }
        HVerdict::NotStrictlyOrdered { arrows } => {
            let _ = writeln!(
                text,
                "FAIL: not strictly ordered ({} vs {})",
                t.arrow(arrows.0).id,
                t.arrow(arrows.1).id
            );
        }
        HVerdict::Fail(w) => {
            let _ = writeln!(text, "FAIL at pair ({},{}): {}", t.vertex_id(w.pair.0), t.vertex_id(w.pair.1), w.reason);
            for tt in &w.triples {
                let _ = writeln!(text, "  {}", triple(tt));
            }
        }
    }
    let code = if verdict.passed() { 0 } else { 1 };
    Ok(Output::new(code, text, io::verdict_to_json(&verdict, f)))
}

fn cmd_count(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let (rep, e) = working(c, &entry)?;
    let primes = c.primes.clone().unwrap_or_else(|| DEFAULT_PRIMES[..3].to_vec());
    let reports = count(&rep, &e, &primes, budget(c))?;
    let basis = rep.basis();
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "q={} total={}", r.prime, r.total);
        for (b, n) in &r.per_cell {
            let _ = writeln!(text, "  {} {}", b.display(basis), n);
        }
    }
    let v = json!({"reports": reports.iter().map(|r| io::count_report_json(r, basis)).collect::<Vec<_>>()});
    Ok(Output::new(0, text, v))
}

fn cmd_poly(c: &Common) -> Result<Output> {
    let entry = load(c)?;
    let (rep, e) = working(c, &entry)?;
    let p = counting_polynomial(&rep, &e, c.primes.as_deref(), budget(c))?;
    let mut text = format!("{p}\n");
    for w in &p.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    Ok(Output::new(0, text, io::polynomial_json(&p)))
}

fn affine(c: &Common) -> Result<(Representation, DimVector, crate::oracle::AffineReport)> {
    let entry = load(c)?;
    let (rep, e) = working(c, &entry)?;
    let primes = c.primes.clone().unwrap_or_else(|| AFFINE_PRIMES.to_vec());
    if primes.len() < 2 {
        return Err(Error::Input("affine certification needs at least two primes".into()));
    }
    let reports = count(&rep, &e, &primes, budget(c))?;
    Ok((rep, e, affine_report_from(reports)))
}

fn cmd_verify_affine(c: &Common) -> Result<Output> {
    let (rep, _, report) = affine(c)?;
    let basis = rep.basis();
    let mut text = String::new();
    for cell in &report.cells {
        let _ = writeln!(text, "{} {}", cell.cell.display(basis), cell.verdict.label());
    }
    let _ = writeln!(text, "{}", report.certificate_label());
    let code = if report.all_certified() { 0 } else { 1 };
    Ok(Output::new(code, text, io::affine_report_json(&report, basis)))
}

fn cmd_euler(c: &Common) -> Result<Output> {
    let (rep, e, report) = affine(c)?;
    match euler_from_report(&report) {
        Ok(chi) => Ok(Output::new(
            0,
            format!("{chi}\n"),
            json!({"euler_characteristic": chi, "certificate": report.certificate_label()}),
        )),
        Err(Error::Precondition(reason)) => {
            let p = counting_polynomial(&rep, &e, None, budget(c))?;
            let at_one = p.value_at_one().to_string();
            let mut text = format!("P(1) = {at_one} (no affine certificate: {reason})\n");
            for f in report.failures() {
                let _ = writeln!(text, "  {} {}", f.cell.display(rep.basis()), f.verdict.label());
            }
            Ok(Output::new(
                1,
                text,
                json!({"euler_characteristic": null, "p_at_one": at_one, "caveat": "no affine certificate", "reason": reason}),
            ))
        }
        Err(e) => Err(e),
    }
}

fn cmd_poincare(c: &Common) -> Result<Output> {
    let (rep, _, report) = affine(c)?;
    match poincare_from_report(&report, c.assert_smooth) {
        Ok(p) => {
            let mut text = format!("{p}\n");
            if !p.smoothness_asserted {
                text.push_str("note: smoothness not asserted; this is the cell-count polynomial in t^2\n");
            }
            Ok(Output::new(0, text, io::poincare_json(&p)))
        }
        Err(Error::Precondition(reason)) => Ok(Output::new(
            1,
            report
                .failures()
                .iter()
                .fold(format!("no affine certificate: {reason}\n"), |mut t, f| {
                    let _ = writeln!(t, "  {} {}", f.cell.display(rep.basis()), f.verdict.label());
                    t
                }),
            json!({"poincare": null, "caveat": "no affine certificate", "reason": reason}),
        )),
        Err(e) => Err(e),
    }
}
