use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use cyclic_blocks::acceptance;
use cyclic_blocks::algebra::{block_decomposition, block_decomposition_split, AlgebraError, Decomposition, GroupAlgebra};
use cyclic_blocks::brauer::{cross_validate, cycle_quiver_form, extract_tree, BrauerError, BrauerTree, Multiplicity, ValidationReport};
use cyclic_blocks::ff::{is_prime, FField};
use cyclic_blocks::groups::{FiniteGroup, GroupError, GroupSpec, TowerSpec};
use cyclic_blocks::tower::{lift_block, star_theorem_check, stabilize, verify_radical_socle_tower, DefectKind, TowerError};

use crate::Format;

pub struct Options {
    pub p: Option<u64>,
    pub field_degree: Option<u32>,
    pub cap: usize,
    pub seed: u64,
    pub block: usize,
}

/// A failed command, carrying its exit code: 1 usage or parse, 2 precondition, 3 falsification.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Precondition(anyhow::Error),
    /// The report is still printed on the data stream.
    Falsified { summary: String, output: String },
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Falsified { .. } => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Precondition(e) => format!("{e:#}"),
            Failure::Falsified { summary, .. } => summary.clone(),
        }
    }

    pub fn output(&self) -> Option<&str> {
        match self {
            Failure::Falsified { output, .. } => Some(output),
            _ => None,
        }
    }
}

fn is_parse_error(e: &GroupError) -> bool {
    !matches!(e, GroupError::OrderCapExceeded(_))
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        if is_parse_error(&e) {
            Failure::Usage(e.to_string())
        } else {
            Failure::Precondition(e.into())
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Group(g) => g.into(),
            AlgebraError::NotPrime(_) => Failure::Usage(e.to_string()),
            e => Failure::Precondition(e.into()),
        }
    }
}

impl From<BrauerError> for Failure {
    fn from(e: BrauerError) -> Self {
        match e {
            BrauerError::Algebra(a) => a.into(),
            e => Failure::Precondition(e.into()),
        }
    }
}

impl From<TowerError> for Failure {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Group(g) => g.into(),
            TowerError::Algebra(a) => a.into(),
            TowerError::Brauer(b) => b.into(),
            e => Failure::Precondition(e.into()),
        }
    }
}

/// A spec argument is inline JSON when it starts with `{`, a file path otherwise.
fn read_spec(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::usage(format!("cannot read {arg}: {e}")))
}

fn load_group(arg: &str) -> Result<Arc<FiniteGroup>, Failure> {
    let spec = GroupSpec::parse(&read_spec(arg)?)?;
    Ok(Arc::new(spec.build()?))
}

fn checked_prime(p: u64) -> Result<u64, Failure> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Failure::usage(format!("{p} is not prime")))
    }
}

fn prime(opts: &Options) -> Result<u64, Failure> {
    checked_prime(opts.p.ok_or_else(|| Failure::usage("--p is required"))?)
}

fn decompose(g: Arc<FiniteGroup>, p: u64, opts: &Options) -> Result<Decomposition, Failure> {
    log::info!("decomposing k[{}] (order {}) at p = {p}", g.name(), g.order());
    let d = match opts.field_degree {
        None => block_decomposition_split(g, p, opts.seed)?,
        Some(m) => {
            let f = FField::new(p, m).map_err(|e| Failure::usage(e.to_string()))?;
            block_decomposition(&GroupAlgebra::new(g, f), opts.seed)?
        }
    };
    log::info!("{} blocks over F_{}", d.blocks.len(), d.field().order());
    Ok(d)
}

fn check_block(d: &Decomposition, b: usize) -> Result<(), Failure> {
    if b < d.blocks.len() {
        Ok(())
    } else {
        Err(Failure::Precondition(anyhow::anyhow!("no block {b}; there are {}", d.blocks.len())))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn tree_status(d: &Decomposition, b: usize) -> String {
    let blk = &d.blocks[b];
    if blk.defect_order() == 1 {
        BrauerError::TrivialDefect.to_string()
    } else if !blk.has_cyclic_defect() {
        BrauerError::DefectNotCyclic.to_string()
    } else {
        "tree available".into()
    }
}

pub fn blocks(spec: &str, opts: &Options, format: Format) -> Result<String, Failure> {
    let g = load_group(spec)?;
    let p = prime(opts)?;
    let d = decompose(g.clone(), p, opts)?;
    let rows: Vec<Value> = d
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "index": i,
                "dim": b.algebra_dim,
                "principal": b.is_principal(),
                "simple_dims": b.simples.iter().map(|s| s.dim()).collect::<Vec<_>>(),
                "defect": { "order": b.defect_order(), "cyclic": b.has_cyclic_defect() },
                "tree_status": tree_status(&d, i),
            })
        })
        .collect();
    if format == Format::Text {
        let mut s = format!("{} (order {}) over F_{}: {} blocks\n", g.name(), g.order(), d.field().order(), rows.len());
        for (i, b) in d.blocks.iter().enumerate() {
            let dims: Vec<usize> = b.simples.iter().map(|s| s.dim()).collect();
            let shape = if b.has_cyclic_defect() { "cyclic" } else { "non-cyclic" };
            let _ = writeln!(
                s,
                "block {i}: dim {}, simples {dims:?}, defect order {} {shape}{}; {}",
                b.algebra_dim,
                b.defect_order(),
                if b.is_principal() { ", principal" } else { "" },
                tree_status(&d, i)
            );
        }
        return Ok(s);
    }
    Ok(pretty(&json!({
        "group": g.name(),
        "order": g.order(),
        "p": p,
        "field_order": d.field().order(),
        "blocks": rows,
    })))
}

fn tree_text(t: &BrauerTree) -> String {
    let mut s = format!("{} edges, multiplicity {}\n", t.num_edges(), t.multiplicity);
    for v in &t.vertices {
        let around: Vec<&str> = v.cyclic_order.iter().map(|&e| t.edges[e].as_str()).collect();
        let mark = if Some(v.id) == t.exceptional { " (exceptional)" } else { "" };
        let _ = writeln!(s, "vertex {}{mark}: {}", v.id, around.join(" -> "));
    }
    s
}

fn render_tree(t: &BrauerTree, format: Format) -> String {
    match format {
        Format::Dot => t.to_dot(),
        Format::Json => pretty(&t.to_json()),
        Format::Text => tree_text(t),
    }
}

pub fn tree(spec: &str, opts: &Options, format: Format) -> Result<String, Failure> {
    let g = load_group(spec)?;
    let d = decompose(g, prime(opts)?, opts)?;
    check_block(&d, opts.block)?;
    let (t, _) = extract_tree(&d, opts.block)?;
    Ok(render_tree(&t, format))
}

/// The extracted tree with its multiplicity changed, or an exceptional vertex
/// added where there was none.
fn corrupt(t: &BrauerTree) -> BrauerTree {
    match (t.exceptional, t.multiplicity) {
        (Some(_), Multiplicity::Finite(m)) => t.with_multiplicity(Multiplicity::Finite(m + 1)),
        _ => BrauerTree { exceptional: Some(t.adjacency[0].0), multiplicity: Multiplicity::Finite(2), ..t.clone() },
    }
}

fn report_text(r: &ValidationReport) -> String {
    let width = r.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for c in &r.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let pad = width - c.name.chars().count();
        let _ = writeln!(s, "{tag}  {}{}  {}", c.name, " ".repeat(pad), c.detail);
    }
    s
}

fn render_report(r: &ValidationReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(r).expect("report serializes")),
        _ => report_text(r),
    }
}

pub fn verify(spec: &str, opts: &Options, format: Format, corrupt_tree: bool) -> Result<String, Failure> {
    let g = load_group(spec)?;
    let d = decompose(g, prime(opts)?, opts)?;
    check_block(&d, opts.block)?;
    let (mut t, _) = extract_tree(&d, opts.block)?;
    if corrupt_tree {
        log::warn!("corrupting the extracted tree before validation");
        t = corrupt(&t);
    }
    let report = cross_validate(&d, opts.block, &t)?;
    let output = render_report(&report, format);
    let failed = report.failures().len();
    if failed == 0 {
        Ok(output)
    } else {
        Err(Failure::Falsified { summary: format!("{failed} of {} checks failed", report.checks.len()), output })
    }
}

pub fn tower(spec: &str, opts: &Options, format: Format) -> Result<String, Failure> {
    let ts = TowerSpec::parse(&read_spec(spec)?)?;
    let p = match (opts.p, ts.prime()) {
        (Some(a), Some(b)) if a != b as u64 => return Err(Failure::usage(format!("--p {a} contradicts the spec prime {b}"))),
        (Some(a), _) => a,
        (None, Some(b)) => b as u64,
        (None, None) => return Err(Failure::usage("the tower spec names no prime; pass --p")),
    };
    let p = checked_prime(p)?;
    if opts.field_degree.is_some() {
        return Err(Failure::usage("--field-degree applies to single groups, not towers"));
    }
    let t = ts.build()?;
    log::info!("tower {} of depth {} at p = {p}", t.name(), t.depth());
    let bt = lift_block(&t, p, opts.block, opts.seed)?;
    let verdict = stabilize(&bt)?;
    let mut problems = verdict.falsifications.clone();
    let mut out = verdict.to_json();
    if verdict.defect.kind == DefectKind::ProPCyclic {
        let star = star_theorem_check(&bt)?;
        out["star"] = json!(star.holds);
        if !star.holds {
            problems.push("limit tree is not an infinite star".into());
        } else {
            let q = cycle_quiver_form(&verdict.tree, opts.cap)?;
            out["cycle_quiver"] = serde_json::to_value(&q).expect("quiver serializes");
        }
    }
    let report = verify_radical_socle_tower(&bt)?;
    let failed: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
    problems.extend(failed.iter().map(|n| format!("radical/socle check failed: {n}")));
    out["radical_socle"] = json!({ "checks": report.checks.len(), "failed": failed });
    let output = match format {
        Format::Text => {
            let mut s = format!(
                "{}: defect {} {:?}, dims {:?} ({}), stable from level {} of {}\n",
                t.name(),
                out["defect"]["kind"].as_str().unwrap_or_default(),
                verdict.defect.order_sequence,
                verdict.dims,
                out["dim_verdict"]["kind"].as_str().unwrap_or_default(),
                verdict.stabilization_index,
                verdict.levels_used
            );
            s.push_str(&tree_text(&verdict.tree));
            for f in &problems {
                let _ = writeln!(s, "falsification: {f}");
            }
            s
        }
        _ => pretty(&out),
    };
    if problems.is_empty() {
        Ok(output)
    } else {
        Err(Failure::Falsified { summary: format!("{} falsification events", problems.len()), output })
    }
}

pub fn selftest(format: Format) -> Result<String, Failure> {
    let results = acceptance::run(&|line| log::info!("{line}"));
    let output = match format {
        Format::Json => pretty(&serde_json::to_value(&results).expect("results serialize")),
        _ => results.iter().map(|r| format!("{r}\n")).collect(),
    };
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        Ok(output)
    } else {
        Err(Failure::Falsified { summary: format!("{failed} acceptance criteria failed"), output })
    }
}
