//! The acceptance suite: nine exact criteria over a fixed catalog of groups
//! and towers. Shared by the `acceptance` test target and `brauer selftest`.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{
    block_decomposition_split, minimal_trace_subgroups, trace_realizes, Decomposition, GroupAlgebra,
};
use crate::brauer::{cross_validate, cycle_quiver_form, extract_tree, BrauerError, BrauerTree, Multiplicity};
use crate::groups::{all_p_subgroups, FiniteGroup, GroupTower};
use crate::tower::{lift_block, stabilize, star_theorem_check, verify_radical_socle_tower, DefectKind, DimKind};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
const STAR_TIME_LIMIT: Duration = Duration::from_secs(60);

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {} [{tag}] {}: {}", self.id, self.title, self.detail)
    }
}

/// A group of the catalog at a prime dividing its order.
#[derive(Clone, Debug)]
pub struct CatalogCase {
    pub group: Arc<FiniteGroup>,
    pub p: u64,
}

impl CatalogCase {
    pub fn label(&self) -> String {
        format!("{} p={}", self.group.name(), self.p)
    }
}

/// Cyclic groups of order ≤ 81, dihedral, symmetric and alternating groups of
/// order ≤ 24, C7:C3 and C13:C3, each at every prime ≤ 13 dividing the order.
pub fn catalog() -> Vec<CatalogCase> {
    let mut groups: Vec<FiniteGroup> = (2..=81).map(FiniteGroup::cyclic).collect();
    groups.extend((2..=12).map(|n| FiniteGroup::dihedral(n).expect("dihedral group")));
    groups.extend((2..=4).map(|n| FiniteGroup::symmetric(n).expect("symmetric group")));
    groups.extend((3..=4).map(|n| FiniteGroup::alternating(n).expect("alternating group")));
    groups.push(FiniteGroup::semidirect_cyclic(7, 3, 2).expect("C7:C3"));
    groups.push(FiniteGroup::semidirect_cyclic(13, 3, 3).expect("C13:C3"));
    let mut out = Vec::new();
    for g in groups {
        let g = Arc::new(g);
        for p in PRIMES {
            if g.order() % p as usize == 0 {
                out.push(CatalogCase { group: g.clone(), p });
            }
        }
    }
    out
}

/// The towers criterion 7 ranges over, with their primes.
pub fn acceptance_towers() -> Vec<(GroupTower, u64)> {
    let t = |r: Result<GroupTower, _>| r.expect("acceptance tower");
    let mut v: Vec<(GroupTower, u64)> = [2, 3, 5].iter().map(|&p| (t(GroupTower::cyclic_tower(p, 4)), p as u64)).collect();
    v.push((t(GroupTower::constant(FiniteGroup::symmetric(3).expect("S3"), 3)), 3));
    v.push((t(GroupTower::constant(FiniteGroup::semidirect_cyclic(7, 3, 2).expect("C7:C3"), 2)), 7));
    v.push((t(GroupTower::constant(FiniteGroup::dihedral(5).expect("D10"), 3)), 5));
    v.push((t(GroupTower::cyclic_chain(&[3, 9, 9])), 3));
    v.push((t(GroupTower::cyclic_chain(&[2, 4, 4])), 2));
    v.push((t(GroupTower::cyclic_chain(&[3, 6, 12])), 3));
    v.push((t(GroupTower::semidirect_tower(3, 2, 3)), 3));
    v.push((t(GroupTower::semidirect_tower(7, 3, 2)), 7));
    v
}

struct Computed {
    case: CatalogCase,
    decomposition: Result<Decomposition, String>,
}

impl Computed {
    /// Blocks with nontrivial cyclic defect.
    fn cyclic_blocks(&self) -> Vec<usize> {
        match &self.decomposition {
            Ok(d) => (0..d.blocks.len())
                .filter(|&b| d.blocks[b].defect_order() > 1 && d.blocks[b].has_cyclic_defect())
                .collect(),
            Err(_) => vec![],
        }
    }
}

fn result(id: u8, title: &'static str, failures: Vec<String>, summary: String) -> CriterionResult {
    let passed = failures.is_empty();
    let detail = if passed {
        summary
    } else {
        let shown: Vec<&String> = failures.iter().take(5).collect();
        format!("{} failures, e.g. {shown:?}", failures.len())
    };
    CriterionResult { id, title, passed, detail }
}

fn block_axioms(cases: &[Computed]) -> CriterionResult {
    let mut failures = Vec::new();
    let mut blocks = 0;
    for c in cases {
        let d = match &c.decomposition {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("{}: {e}", c.case.label()));
                continue;
            }
        };
        let a = &d.algebra;
        let mut sum = a.zero();
        let mut dims = 0;
        for (i, b) in d.blocks.iter().enumerate() {
            blocks += 1;
            let e = &b.idempotent;
            sum = a.add(&sum, e);
            dims += b.algebra_dim;
            if !a.is_central(e) {
                failures.push(format!("{}: block {i} not central", c.case.label()));
            }
            for (j, o) in d.blocks.iter().enumerate() {
                let prod = a.mul(e, &o.idempotent);
                let want = if i == j { e.clone() } else { a.zero() };
                if prod != want {
                    failures.push(format!("{}: blocks {i},{j} not orthogonal idempotents", c.case.label()));
                }
            }
            if let Some(msg) = primitivity_failure(a, b) {
                failures.push(format!("{}: block {i} {msg}", c.case.label()));
            }
        }
        if sum != a.one() {
            failures.push(format!("{}: idempotents do not sum to 1", c.case.label()));
        }
        if dims != a.dim() {
            failures.push(format!("{}: block dims sum to {dims}, not {}", c.case.label(), a.dim()));
        }
    }
    let summary = format!("{} group/prime pairs, {blocks} blocks", cases.len());
    result(1, "block axioms", failures, summary)
}

/// A central idempotent e is primitive iff kG e is indecomposable, iff the
/// simples of kG e are linked through nonzero ε_i kG ε_j. The simples must
/// account for the whole block: dim kG e = Σ dim S · dim P_S.
fn primitivity_failure(a: &GroupAlgebra, b: &crate::algebra::BlockData) -> Option<String> {
    let k = b.simples.len();
    if k == 0 {
        return Some("has no simple module".into());
    }
    let count: usize = b.simples.iter().zip(&b.pims).map(|(s, p)| s.dim() * p.dim()).sum();
    if count != b.algebra_dim {
        return Some(format!("simples account for {count} of {}", b.algebra_dim));
    }
    let eps = &b.pim_idempotents;
    let linked = |i: usize, j: usize| (0..a.dim()).any(|g| !GroupAlgebra::is_zero(&a.mul(&a.mul_right_elem(&eps[i], g), &eps[j])));
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if !seen[j] && (linked(i, j) || linked(j, i)) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        None
    } else {
        Some("has unlinked simples".into())
    }
}

fn defect_oracle(cases: &[Computed]) -> CriterionResult {
    let mut failures = Vec::new();
    let mut checked = 0;
    for c in cases.iter().filter(|c| c.case.group.order() <= 30) {
        let Ok(d) = &c.decomposition else { continue };
        let a = &d.algebra;
        let all = all_p_subgroups(a.group(), c.case.p as usize);
        for (i, b) in d.blocks.iter().enumerate() {
            checked += 1;
            let e = &b.idempotent;
            let dg = &b.defect;
            if !trace_realizes(a, e, dg) {
                failures.push(format!("{}: block {i} defect group does not realize e", c.case.label()));
            }
            if all.iter().any(|h| h.order() < dg.order() && h.is_subgroup_of(dg) && trace_realizes(a, e, h)) {
                failures.push(format!("{}: block {i} a proper subgroup of the defect group realizes e", c.case.label()));
            }
            let minimal = minimal_trace_subgroups(a, e);
            if minimal.is_empty() || !minimal.iter().all(|m| m.is_conjugate_to(dg)) {
                failures.push(format!("{}: block {i} minimal realizing subgroups are not conjugate to the defect group", c.case.label()));
            }
        }
    }
    result(2, "defect oracle", failures, format!("{checked} blocks of groups of order ≤ 30"))
}

fn simple_count(cases: &[Computed]) -> CriterionResult {
    let mut failures = Vec::new();
    let mut n = 0;
    for c in cases {
        let Ok(d) = &c.decomposition else { continue };
        for b in c.cyclic_blocks() {
            n += 1;
            let k = d.blocks[b].simples.len() as u64;
            if (c.case.p - 1) % k != 0 {
                failures.push(format!("{}: block {b} has {k} simples", c.case.label()));
            }
        }
    }
    result(3, "cyclic-defect simple count divides p-1", failures, format!("{n} cyclic-defect blocks"))
}

type Trees = Vec<(usize, usize, Result<BrauerTree, BrauerError>)>;

fn trees(cases: &[Computed]) -> Trees {
    let mut out = Vec::new();
    for (ci, c) in cases.iter().enumerate() {
        let Ok(d) = &c.decomposition else { continue };
        for b in c.cyclic_blocks() {
            out.push((ci, b, extract_tree(d, b).map(|(t, _)| t)));
        }
    }
    out
}

fn tree_arithmetic(cases: &[Computed], trees: &Trees) -> CriterionResult {
    let mut failures = Vec::new();
    let mut without = 0;
    for (ci, b, t) in trees {
        let c = &cases[*ci];
        let label = format!("{} block {b}", c.case.label());
        let t = match t {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let d = c.decomposition.as_ref().unwrap();
        let order = d.blocks[*b].defect_order() as u64;
        let k = d.blocks[*b].simples.len() as u64;
        match (t.exceptional, t.multiplicity) {
            (Some(_), Multiplicity::Finite(m)) if m * k == order - 1 => {}
            (None, Multiplicity::Finite(1)) if order - 1 == k => without += 1,
            (e, m) => failures.push(format!("{label}: exceptional {e:?}, m = {m}, |D| = {order}, |S| = {k}")),
        }
    }
    let summary = format!("{} trees, {without} without exceptional vertex", trees.len());
    result(4, "tree arithmetic", failures, summary)
}

fn round_trip(cases: &[Computed], trees: &Trees) -> CriterionResult {
    let mut failures = Vec::new();
    for (ci, b, t) in trees {
        let c = &cases[*ci];
        let label = format!("{} block {b}", c.case.label());
        let Ok(t) = t else {
            failures.push(format!("{label}: no tree"));
            continue;
        };
        match cross_validate(c.decomposition.as_ref().unwrap(), *b, t) {
            Ok(r) if r.all_passed() => {}
            Ok(r) => failures.push(format!("{label}: {:?}", r.failures().iter().map(|c| &c.name).collect::<Vec<_>>())),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    // named instances
    let find = |name: &str, p: u64| {
        trees.iter().find(|(ci, _, _)| cases[*ci].case.group.name() == name && cases[*ci].case.p == p)
    };
    match find("C9", 3) {
        Some((ci, b, Ok(t))) if t.num_edges() == 1 && t.multiplicity == Multiplicity::Finite(8) => {
            let d = cases[*ci].decomposition.as_ref().unwrap();
            if d.pim_loewy(*b).map(|l| l[0].loewy_length()).ok() != Some(9) {
                failures.push("C9 p=3: PIM is not of length 9".into());
            }
        }
        _ => failures.push("C9 p=3: expected a single edge with m = 8".into()),
    }
    match find("C7:C3[2]", 7) {
        Some((ci, b, Ok(t))) if t.num_edges() == 3 && t.multiplicity == Multiplicity::Finite(2) && t.is_star() == Ok(true) => {
            let d = cases[*ci].decomposition.as_ref().unwrap();
            let lengths: Option<Vec<usize>> = d.pim_loewy(*b).ok().map(|l| l.iter().map(|x| x.loewy_length()).collect());
            if lengths != Some(vec![7, 7, 7]) {
                failures.push(format!("C7:C3 p=7: PIM lengths {lengths:?}"));
            }
        }
        _ => failures.push("C7:C3 p=7: expected a 3-edge star with m = 2".into()),
    }
    let summary = format!("{} blocks match their synthesized Loewy layers and Cartan matrix", trees.len());
    result(5, "round trip", failures, summary)
}

fn star_theorem() -> CriterionResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [2usize, 3, 5] {
        let label = format!("cyclic_tower({p}, 4)");
        let run = || -> Result<Vec<String>, String> {
            let t = GroupTower::cyclic_tower(p, 4).map_err(|e| e.to_string())?;
            let bt = lift_block(&t, p as u64, 0, 0).map_err(|e| e.to_string())?;
            let star = star_theorem_check(&bt).map_err(|e| e.to_string())?;
            let v = &star.verdict;
            let mut f = Vec::new();
            let want: Vec<usize> = (1..=4).map(|i| p.pow(i)).collect();
            if !star.holds || v.multiplicity != Multiplicity::Infinite {
                f.push(format!("{label}: limit tree is not an infinite star"));
            }
            if v.defect.kind != DefectKind::ProPCyclic || v.dim_verdict.kind != DimKind::Growing || v.dims != want {
                f.push(format!("{label}: verdict {:?}, dims {:?}", v.defect.kind, v.dims));
            }
            let report = verify_radical_socle_tower(&bt).map_err(|e| e.to_string())?;
            let socle: Vec<_> = report.checks.iter().filter(|c| c.name.contains("kills Soc")).collect();
            if socle.len() != 3 || socle.iter().any(|c| !c.passed) {
                f.push(format!("{label}: socle maps not all zero"));
            }
            Ok(f)
        };
        match run() {
            Ok(f) => failures.extend(f),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > STAR_TIME_LIMIT {
        failures.push(format!("took {elapsed:.1?}"));
    }
    result(6, "star theorem on cyclic towers", failures, format!("p = 2, 3, 5 in {elapsed:.1?}"))
}

fn dimension_theorem() -> CriterionResult {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for (t, p) in acceptance_towers() {
        let label = t.name().to_string();
        let v = match lift_block(&t, p, 0, 0).and_then(|bt| stabilize(&bt)) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let d = &v.defect.order_sequence;
        let n = d.len();
        let defect_stable = d[n - 1] == d[n - 2];
        let dim_stable = v.dims[n - 1] == v.dims[n - 2];
        let growing = |x: &[usize]| x.windows(2).all(|w| w[1] > w[0]);
        if defect_stable != dim_stable || growing(d) != growing(&v.dims) {
            failures.push(format!("{label}: defects {d:?} but dims {:?}", v.dims));
        }
        failures.extend(v.falsifications.iter().map(|f| format!("{label}: {f}")));
        seen.push(format!("{label}:{}", if defect_stable { "finite" } else { "growing" }));
    }
    result(7, "dimension theorem on acceptance towers", failures, seen.join(", "))
}

fn cycle_quiver() -> CriterionResult {
    let mut failures = Vec::new();
    match cycle_quiver_form(&BrauerTree::star(1, Multiplicity::Infinite), 12) {
        Ok(q) if q.uniserial && q.pim_sequences[0].iter().all(|&s| s == 0) => {}
        Ok(q) => failures.push(format!("1-edge star: {:?}", q.pim_sequences)),
        Err(e) => failures.push(format!("1-edge star: {e}")),
    }
    match cycle_quiver_form(&BrauerTree::star(3, Multiplicity::Infinite), 12) {
        Ok(q) if q.uniserial && q.kernel_matches.iter().all(|&m| m) && q.paths_match_factors => {}
        Ok(q) => failures.push(format!("3-edge star: kernels {:?}", q.kernel_matches)),
        Err(e) => failures.push(format!("3-edge star: {e}")),
    }
    result(8, "cycle quiver of infinite stars", failures, "1- and 3-edge stars truncated at 12".into())
}

fn negative_control() -> CriterionResult {
    let mut failures = Vec::new();
    let g = Arc::new(FiniteGroup::alternating(4).expect("A4"));
    match block_decomposition_split(g, 2, 0) {
        Ok(d) => match extract_tree(&d, 0) {
            Err(e @ BrauerError::DefectNotCyclic) if e.to_string().contains("defect not cyclic") => {}
            Err(e) => failures.push(format!("wrong diagnostic: {e}")),
            Ok(_) => failures.push("A4 p=2 produced a tree".into()),
        },
        Err(e) => failures.push(e.to_string()),
    }
    result(9, "negative control", failures, "A4 p=2 rejected: defect not cyclic".into())
}

/// Runs every criterion; `progress` receives one line per stage.
pub fn run(progress: &dyn Fn(&str)) -> Vec<CriterionResult> {
    let cases = catalog();
    progress(&format!("decomposing {} catalog cases", cases.len()));
    let computed: Vec<Computed> = cases
        .into_iter()
        .map(|case| {
            let decomposition = block_decomposition_split(case.group.clone(), case.p, 0).map_err(|e| e.to_string());
            Computed { case, decomposition }
        })
        .collect();
    let mut out = Vec::new();
    let mut step = |r: CriterionResult| {
        progress(&format!("criterion {} done", r.id));
        out.push(r);
    };
    step(block_axioms(&computed));
    step(defect_oracle(&computed));
    step(simple_count(&computed));
    let trees = trees(&computed);
    step(tree_arithmetic(&computed, &trees));
    step(round_trip(&computed, &trees));
    step(star_theorem());
    step(dimension_theorem());
    step(cycle_quiver());
    step(negative_control());
    out
}
