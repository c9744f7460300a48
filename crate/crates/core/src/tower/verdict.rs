use serde::Serialize;

use crate::algebra::{loewy, GroupAlgebra, LoewyData, ModuleRep};
use crate::brauer::{extract_tree, BrauerError, BrauerTree, Multiplicity, ValidationReport};
use crate::ff::{Elem, Subspace};

use super::chain::BlockTower;
use super::TowerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DefectKind {
    #[serde(rename = "finite")]
    Finite,
    #[serde(rename = "pro-p-cyclic")]
    ProPCyclic,
    #[serde(rename = "unstabilized")]
    Unstabilized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectVerdict {
    pub kind: DefectKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub order_sequence: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DimKind {
    Finite,
    Growing,
    Unstabilized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimVerdict {
    pub kind: DimKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
}

/// What a finite prefix of a tower says about the limit block.
///
/// "Infinite" always means strictly growing over the inspected levels.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizationVerdict {
    pub tree: BrauerTree,
    pub multiplicity: Multiplicity,
    pub defect: DefectVerdict,
    pub dims: Vec<usize>,
    pub dim_verdict: DimVerdict,
    pub levels_used: usize,
    /// First level from which the tracked conditions hold on every later level.
    pub stabilization_index: usize,
    /// Per level, the tree with simples named as at the finest level (None when
    /// the simples of that level do not inflate bijectively all the way up).
    #[serde(skip)]
    pub level_trees: Vec<Option<BrauerTree>>,
    /// Observations contradicting the theory; empty on every tower we know of.
    pub falsifications: Vec<String>,
}

impl StabilizationVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict serializes")
    }
}

fn strictly_growing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

/// Extracts Γ(B_i) at every level and reads off the verdicts.
pub fn stabilize(bt: &BlockTower) -> Result<StabilizationVerdict, TowerError> {
    let n = bt.depth();
    if n < 2 {
        return Err(TowerError::TooFewLevels);
    }
    let p = bt.field().p() as usize;
    let mut trees = Vec::with_capacity(n);
    for i in 0..n {
        let (t, _) = extract_tree(&bt.levels[i], bt.chain[i]).map_err(|e| match e {
            BrauerError::DefectNotCyclic | BrauerError::TrivialDefect => TowerError::Level(i, e),
            other => TowerError::Brauer(other),
        })?;
        trees.push(t);
    }
    let last = n - 1;
    let defects = bt.defect_orders();
    let dims = bt.dims();
    let mut falsifications = Vec::new();

    // simples named as at the finest level, where inflation is bijective all the way up
    let mut names: Vec<Option<Vec<usize>>> = vec![None; n];
    names[last] = Some((0..bt.block(last).simples.len()).collect());
    for i in (0..last).rev() {
        let link = &bt.links[i];
        if !link.simples_inflate(bt.block(i + 1).simples.len()) {
            break;
        }
        let up = names[i + 1].as_ref().unwrap();
        names[i] = Some(link.simple_map.iter().map(|m| up[m.unwrap()]).collect());
    }
    let level_trees: Vec<Option<BrauerTree>> = trees
        .iter()
        .zip(&names)
        .map(|(t, nm)| nm.as_ref().map(|perm| t.relabel(perm)).transpose())
        .collect::<Result<_, _>>()?;

    let exceptional_last = trees[last].exceptional.is_some();
    let ok_at = |i: usize| {
        let linked = i == last || (bt.links[i].exact && names[i].is_some());
        linked && trees[i].exceptional.is_some() == exceptional_last
    };
    let mut s = last;
    while s > 0 && ok_at(s - 1) {
        s -= 1;
    }
    let reference = level_trees[last].as_ref().unwrap();
    for i in s..last {
        if !level_trees[i].as_ref().unwrap().same_shape(reference) {
            falsifications.push(format!("tree at level {i} differs from level {last} past the stabilization index {s}"));
        }
    }
    for i in 0..n {
        let k = bt.block(i).simples.len();
        if (p - 1) % k != 0 {
            falsifications.push(format!("level {i}: {k} simples does not divide p - 1 = {}", p - 1));
        }
    }

    let defect = if strictly_growing(&defects) && bt.tower.unbounded_defect() {
        DefectVerdict { kind: DefectKind::ProPCyclic, order: None, order_sequence: defects.clone() }
    } else if defects[last] == defects[last - 1] {
        DefectVerdict { kind: DefectKind::Finite, order: Some(defects[last]), order_sequence: defects.clone() }
    } else {
        DefectVerdict { kind: DefectKind::Unstabilized, order: None, order_sequence: defects.clone() }
    };
    let dim_verdict = if strictly_growing(&dims) {
        DimVerdict { kind: DimKind::Growing, value: None }
    } else if dims[last] == dims[last - 1] {
        DimVerdict { kind: DimKind::Finite, value: Some(dims[last]) }
    } else {
        DimVerdict { kind: DimKind::Unstabilized, value: None }
    };
    match (defect.kind, dim_verdict.kind) {
        (DefectKind::Finite, DimKind::Finite) | (DefectKind::ProPCyclic, DimKind::Growing) => {}
        (DefectKind::Unstabilized, _) => {}
        (d, m) => falsifications.push(format!("defect verdict {d:?} but dimension verdict {m:?}")),
    }
    let multiplicity = match defect.kind {
        DefectKind::ProPCyclic => Multiplicity::Infinite,
        _ => trees[last].multiplicity,
    };
    for f in &falsifications {
        log::error!("falsification on {}: {f}", bt.tower.name());
    }
    Ok(StabilizationVerdict {
        tree: reference.with_multiplicity(multiplicity),
        multiplicity,
        defect,
        dims,
        dim_verdict,
        levels_used: n,
        stabilization_index: s,
        level_trees,
        falsifications,
    })
}

/// Result of testing that the limit tree is a star with exceptional multiplicity ∞.
#[derive(Clone, Debug, Serialize)]
pub struct StarCheck {
    pub holds: bool,
    pub witness: BrauerTree,
    pub verdict: StabilizationVerdict,
}

pub fn star_theorem_check(bt: &BlockTower) -> Result<StarCheck, TowerError> {
    let verdict = stabilize(bt)?;
    if verdict.defect.kind != DefectKind::ProPCyclic {
        return Err(TowerError::Precondition(format!(
            "star check needs a pro-p-cyclic defect verdict, got {:?}",
            verdict.defect.kind
        )));
    }
    let tree = verdict.tree.clone();
    let holds = tree.multiplicity.is_infinite() && tree.is_star().unwrap_or(false);
    if !holds {
        log::error!("falsification on {}: limit tree is not an infinite star: {tree:?}; dims {:?}", bt.tower.name(), verdict.dims);
    }
    Ok(StarCheck { holds, witness: tree, verdict })
}

/// Filtration vectors of a left-ideal module as elements of kG.
fn ambient(ideal: &Subspace, vs: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    vs.iter().map(|c| ideal.combine(c)).collect()
}

/// Levels j at which φ(Rad^j P_fine) ≠ Rad^j P_coarse. Both filtrations are
/// swept from the bottom, so each subspace is built once.
fn radical_mismatches(fine: &LoewyData, coarse: &LoewyData, images: &[Vec<Elem>], dim: usize) -> Vec<usize> {
    let size = |l: &LoewyData, j: usize| if j < l.radical.len() { l.radical.term_vectors(j).len() } else { 0 };
    let coarse_vecs = coarse.radical.basis();
    let (nf, nc) = (images.len(), coarse_vecs.len());
    let field = coarse.radical.field();
    let mut img = Subspace::new(field, dim);
    let mut cor = Subspace::new(field, dim);
    let mut contained = true;
    let mut bad = Vec::new();
    for j in (0..fine.radical.len().max(coarse.radical.len())).rev() {
        for v in &images[nf - size(fine, j)..nf - size(fine, j + 1)] {
            img.insert(v.clone());
        }
        for v in &coarse_vecs[nc - size(coarse, j)..nc - size(coarse, j + 1)] {
            contained &= img.contains(v);
            cor.insert(v.clone());
        }
        if !(contained && img.dim() == cor.dim()) {
            bad.push(j);
        }
    }
    bad.reverse();
    bad
}

/// Checks along every adjacent pair of levels, for each simple of the coarse
/// block: φ maps P_fine onto a PIM of the same simple, φ(Rad^j P_fine) =
/// Rad^j P_coarse, φ kills Soc(P_fine) when the defect grows strictly, and is
/// injective on Soc(P_fine) when the map is an isomorphism.
pub fn verify_radical_socle_tower(bt: &BlockTower) -> Result<ValidationReport, TowerError> {
    let mut report = ValidationReport::default();
    let defects = bt.defect_orders();
    for i in 0..bt.depth().saturating_sub(1) {
        let phi = &bt.maps[i];
        let fine_d = &bt.levels[i + 1];
        let coarse_d = &bt.levels[i];
        let fb = bt.chain[i + 1];
        let cb = bt.chain[i];
        let fine_loewy = fine_d.pim_loewy(fb)?;
        let ca: &GroupAlgebra = &coarse_d.algebra;
        let iso = bt.tower.level(i + 1).order() == bt.tower.level(i).order();
        for (s, m) in bt.links[i].simple_map.iter().enumerate() {
            let tag = format!("level {}->{i}, S{s}", i + 1);
            let Some(t) = *m else {
                report.push(format!("{tag}: simple inflates"), false, "no matching simple upstairs");
                continue;
            };
            let pf = &fine_d.blocks[fb].pims[t];
            let wf = pf.ideal().expect("PIMs are left ideals");
            let eps = phi.apply(&fine_d.blocks[fb].pim_idempotents[t]);
            let wc = Subspace::from_vectors(ca.field(), ca.dim(), (0..ca.dim()).map(|g| ca.mul_left_elem(g, &eps)));
            let pc = ModuleRep::left_ideal(ca, &wc);
            let lc = loewy(&pc, &coarse_d.radical, &coarse_d.blocks[cb].simples)?;
            let same_pim = pc.dim() == coarse_d.blocks[cb].pims[s].dim() && lc.head() == [s];
            report.push(format!("{tag}: image is the PIM of S{s}"), same_pim, format!("dim {}, head {:?}", pc.dim(), lc.head()));
            let lf = &fine_loewy[t];
            let images: Vec<Vec<Elem>> = ambient(wf, lf.radical.basis()).iter().map(|x| phi.apply(x)).collect();
            let inside = images.iter().all(|x| wc.contains(x));
            report.push(format!("{tag}: φ(P) lies in the coarse PIM"), inside, "");
            if !inside {
                continue;
            }
            let images: Vec<Vec<Elem>> = images.iter().map(|x| wc.coords(x)).collect();
            let bad = radical_mismatches(lf, &lc, &images, pc.dim());
            report.push(
                format!("{tag}: φ(Rad^j P) = Rad^j P for all j"),
                bad.is_empty(),
                if bad.is_empty() { String::new() } else { format!("fails at j = {bad:?}") },
            );
            let soc: Vec<Vec<Elem>> = ambient(wf, lf.socle.term_vectors(1)).iter().map(|x| phi.apply(x)).collect();
            if defects[i + 1] > defects[i] {
                let killed = soc.iter().all(|x| GroupAlgebra::is_zero(x));
                report.push(format!("{tag}: φ kills Soc(P)"), killed, format!("defect {} -> {}", defects[i + 1], defects[i]));
            }
            if iso {
                let rank = Subspace::from_vectors(ca.field(), ca.dim(), soc.iter().cloned()).dim();
                report.push(format!("{tag}: φ is injective on Soc(P)"), rank == soc.len(), format!("rank {rank} of {}", soc.len()));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, GroupTower};
    use crate::tower::lift_block;

    fn verdict(t: &GroupTower, p: u64) -> StabilizationVerdict {
        stabilize(&lift_block(t, p, 0, 0).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_tower_is_infinite_star() {
        let t = GroupTower::cyclic_tower(3, 4).unwrap();
        let bt = lift_block(&t, 3, 0, 0).unwrap();
        let v = stabilize(&bt).unwrap();
        assert_eq!(v.defect.kind, DefectKind::ProPCyclic);
        assert_eq!(v.defect.order_sequence, vec![3, 9, 27, 81]);
        assert_eq!(v.dims, vec![3, 9, 27, 81]);
        assert_eq!(v.dim_verdict.kind, DimKind::Growing);
        assert_eq!(v.multiplicity, Multiplicity::Infinite);
        assert_eq!(v.tree.num_edges(), 1);
        assert!(v.falsifications.is_empty());
        let star = star_theorem_check(&bt).unwrap();
        assert!(star.holds);
        let json = v.to_json();
        assert_eq!(json["defect"]["kind"], "pro-p-cyclic");
        assert_eq!(json["multiplicity"], "inf");
        assert_eq!(json["levels_used"], 4);
    }

    #[test]
    fn constant_tower_is_finite() {
        let t = GroupTower::constant(FiniteGroup::symmetric(3).unwrap(), 2).unwrap();
        let bt = lift_block(&t, 3, 0, 0).unwrap();
        let v = stabilize(&bt).unwrap();
        assert_eq!(v.defect.kind, DefectKind::Finite);
        assert_eq!(v.defect.order, Some(3));
        assert_eq!(v.multiplicity, Multiplicity::Finite(1));
        assert_eq!(v.dim_verdict, DimVerdict { kind: DimKind::Finite, value: Some(6) });
        assert_eq!(v.stabilization_index, 0);
        assert!(matches!(star_theorem_check(&bt), Err(TowerError::Precondition(_))));
        let r = verify_radical_socle_tower(&bt).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn stabilized_chain() {
        let t = GroupTower::cyclic_chain(&[3, 9, 9]).unwrap();
        let v = verdict(&t, 3);
        assert_eq!(v.defect.kind, DefectKind::Finite);
        assert_eq!(v.defect.order, Some(9));
        assert_eq!(v.multiplicity, Multiplicity::Finite(8));
        assert_eq!(v.dim_verdict.value, Some(9));
        assert!(v.falsifications.is_empty());
    }

    #[test]
    fn growing_but_undeclared_defect_is_unstabilized() {
        let t = GroupTower::cyclic_chain(&[2, 4, 8]).unwrap();
        let v = verdict(&t, 2);
        assert_eq!(v.defect.kind, DefectKind::Unstabilized);
        assert_eq!(v.dim_verdict.kind, DimKind::Growing);
    }

    #[test]
    fn socle_is_killed_along_cyclic_towers() {
        for (p, depth) in [(3, 2), (2, 3)] {
            let t = GroupTower::cyclic_tower(p, depth).unwrap();
            let bt = lift_block(&t, p as u64, 0, 0).unwrap();
            let r = verify_radical_socle_tower(&bt).unwrap();
            assert!(r.all_passed(), "{:?}", r.failures());
            assert_eq!(r.checks.iter().filter(|c| c.name.contains("kills Soc")).count(), depth - 1);
        }
    }

    #[test]
    fn semidirect_tower_is_star_with_three_edges() {
        let t = GroupTower::semidirect_tower(7, 3, 2).unwrap();
        let bt = lift_block(&t, 7, 0, 0).unwrap();
        let star = star_theorem_check(&bt).unwrap();
        assert!(star.holds);
        assert_eq!(star.witness.num_edges(), 3);
        assert!(star.verdict.falsifications.is_empty());
        let r = verify_radical_socle_tower(&bt).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn non_cyclic_defect_is_rejected() {
        let t = GroupTower::constant(FiniteGroup::alternating(4).unwrap(), 2).unwrap();
        let bt = lift_block(&t, 2, 0, 0).unwrap();
        assert!(matches!(stabilize(&bt), Err(TowerError::Level(0, BrauerError::DefectNotCyclic))));
    }
}
