use serde::Serialize;

use crate::algebra::Decomposition;

use super::tree::{BrauerTree, Multiplicity};
use super::BrauerError;

/// Projective structure of P_S read off the tree: Rad(P)/Soc(P) = U^v ⊕ U^w.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SynthesizedPim {
    pub edge: usize,
    pub v: usize,
    pub w: usize,
    /// Factors of U^v(S) from the top: γ_v(S), γ_v²(S), ...
    pub u_v: Vec<usize>,
    pub u_w: Vec<usize>,
    /// None when S touches a vertex of infinite multiplicity.
    pub socle: Option<usize>,
    /// A side was cut at the truncation cap.
    pub truncated: bool,
}

impl SynthesizedPim {
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        let mut layers = vec![vec![self.edge]];
        for j in 0..self.u_v.len().max(self.u_w.len()) {
            let mut l: Vec<usize> = [self.u_v.get(j), self.u_w.get(j)].into_iter().flatten().copied().collect();
            l.sort_unstable();
            layers.push(l);
        }
        if let Some(s) = self.socle {
            layers.push(vec![s]);
        }
        layers
    }

    /// Socle layers from the bottom; only defined for finite projectives.
    pub fn socle_layers(&self) -> Option<Vec<Vec<usize>>> {
        let s = self.socle?;
        let (a, b) = (&self.u_v, &self.u_w);
        let mut layers = vec![vec![s]];
        for j in 0..a.len().max(b.len()) {
            let mut l: Vec<usize> = Vec::new();
            if j < a.len() {
                l.push(a[a.len() - 1 - j]);
            }
            if j < b.len() {
                l.push(b[b.len() - 1 - j]);
            }
            l.sort_unstable();
            layers.push(l);
        }
        layers.push(vec![self.edge]);
        Some(layers)
    }

    pub fn composition_length(&self) -> usize {
        1 + self.u_v.len() + self.u_w.len() + usize::from(self.socle.is_some())
    }

    pub fn factor_counts(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for l in self.radical_layers() {
            for s in l {
                c[s] += 1;
            }
        }
        c
    }
}

fn side(tree: &BrauerTree, x: usize, e: usize, cap: Option<usize>) -> Result<(Vec<usize>, bool), BrauerError> {
    let s = tree.valency(x);
    let (len, truncated) = if Some(x) == tree.exceptional {
        match tree.multiplicity {
            Multiplicity::Finite(m) => (m as usize * s - 1, false),
            Multiplicity::Infinite => (cap.ok_or(BrauerError::NeedsTruncation)?, true),
        }
    } else {
        (s - 1, false)
    };
    let mut out = Vec::with_capacity(len);
    let mut cur = e;
    for _ in 0..len {
        cur = tree.gamma(x, cur);
        out.push(cur);
    }
    Ok((out, truncated))
}

/// One synthesized projective per edge, in edge order.
pub fn synthesize_projectives(tree: &BrauerTree, cap: Option<usize>) -> Result<Vec<SynthesizedPim>, BrauerError> {
    if tree.multiplicity.is_infinite() && tree.exceptional.is_some() && cap.is_none() {
        return Err(BrauerError::NeedsTruncation);
    }
    (0..tree.num_edges())
        .map(|e| {
            let (v, w) = tree.adjacency[e];
            let (u_v, tv) = side(tree, v, e, cap)?;
            let (u_w, tw) = side(tree, w, e, cap)?;
            let touches_inf =
                tree.multiplicity.is_infinite() && tree.exceptional.map_or(false, |x| x == v || x == w);
            Ok(SynthesizedPim { edge: e, v, w, u_v, u_w, socle: (!touches_inf).then_some(e), truncated: tv || tw })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Compares the PIMs of block `b` against the projectives synthesized from `tree`:
/// radical and socle layers, socle rule, composition length and Cartan matrix.
pub fn cross_validate(d: &Decomposition, b: usize, tree: &BrauerTree) -> Result<ValidationReport, BrauerError> {
    let blk = &d.blocks[b];
    let n = blk.simples.len();
    let mut rep = ValidationReport::default();
    if tree.num_edges() != n {
        rep.push("edge count", false, format!("tree has {} edges, block has {n} simples", tree.num_edges()));
        return Ok(rep);
    }
    let synth = synthesize_projectives(tree, None)?;
    let actual = d.pim_loewy(b)?;
    for (s, (sp, l)) in synth.iter().zip(actual).enumerate() {
        let want = sp.radical_layers();
        rep.push(format!("S{s} radical layers"), want == l.radical_layers, format!("tree {want:?}, block {:?}", l.radical_layers));
        let want_soc = sp.socle_layers();
        rep.push(
            format!("S{s} socle layers"),
            want_soc.as_ref() == Some(&l.socle_layers),
            format!("tree {want_soc:?}, block {:?}", l.socle_layers),
        );
        rep.push(
            format!("S{s} socle"),
            sp.socle.map(|x| vec![x]).as_ref() == Some(&l.socle_layers[0]),
            format!("tree {:?}, block {:?}", sp.socle, l.socle_layers[0]),
        );
        let len = l.factors().len();
        rep.push(
            format!("S{s} composition length"),
            sp.composition_length() == len,
            format!("tree {}, block {len}", sp.composition_length()),
        );
    }
    let tree_cartan: Vec<Vec<usize>> = synth.iter().map(|sp| sp.factor_counts(n)).collect();
    let block_cartan: Vec<Vec<usize>> = actual
        .iter()
        .map(|l| {
            let mut row = vec![0; n];
            for s in l.factors() {
                row[s] += 1;
            }
            row
        })
        .collect();
    rep.push("Cartan matrix", tree_cartan == block_cartan, format!("tree {tree_cartan:?}, block {block_cartan:?}"));
    let symmetric = (0..n).all(|i| (0..n).all(|j| block_cartan[i][j] == block_cartan[j][i]));
    rep.push("Cartan symmetric", symmetric, String::new());
    Ok(rep)
}

/// The oriented cycle attached to an infinite star, with the checks on its truncated projectives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleQuiver {
    pub n: usize,
    /// Edges in their cyclic order around the exceptional vertex.
    pub cycle: Vec<usize>,
    /// Arrows S -> γ(S).
    pub arrows: Vec<(usize, usize)>,
    pub cap: usize,
    /// Factor sequence of each truncated projective from the top.
    pub pim_sequences: Vec<Vec<usize>>,
    pub uniserial: bool,
    /// For each S, the kernel of P_S -> S has the factor sequence of P_{γ(S)} (up to the cap).
    pub kernel_matches: Vec<bool>,
    /// paths[i][j]: number of paths i -> j of length at most `cap`.
    pub paths: Vec<Vec<usize>>,
    pub paths_match_factors: bool,
}

pub fn cycle_quiver_form(tree: &BrauerTree, cap: usize) -> Result<CycleQuiver, BrauerError> {
    if !tree.multiplicity.is_infinite() || !tree.is_star().map_err(|_| BrauerError::NotInfiniteStar)? {
        return Err(BrauerError::NotInfiniteStar);
    }
    let c = tree.exceptional.unwrap();
    let n = tree.num_edges();
    let gamma = |e: usize| tree.gamma(c, e);
    let synth = synthesize_projectives(tree, Some(cap))?;
    let layers: Vec<Vec<Vec<usize>>> = synth.iter().map(|s| s.radical_layers()).collect();
    let uniserial = layers.iter().all(|ls| ls.iter().all(|l| l.len() == 1));
    let pim_sequences: Vec<Vec<usize>> = layers.iter().map(|ls| ls.iter().flatten().copied().collect()).collect();
    let kernel_matches = (0..n)
        .map(|e| {
            let k = &pim_sequences[e][1..];
            let next = &pim_sequences[gamma(e)];
            let l = k.len().min(next.len());
            l > 0 && k[..l] == next[..l]
        })
        .collect();
    let mut paths = vec![vec![0; n]; n];
    for (i, row) in paths.iter_mut().enumerate() {
        let mut j = i;
        for _ in 0..=cap {
            row[j] += 1;
            j = gamma(j);
        }
    }
    let paths_match_factors = (0..n).all(|i| synth[i].factor_counts(n) == paths[i]);
    Ok(CycleQuiver {
        n,
        cycle: tree.vertices[c].cyclic_order.clone(),
        arrows: (0..n).map(|e| (e, gamma(e))).collect(),
        cap,
        pim_sequences,
        uniserial,
        kernel_matches,
        paths,
        paths_match_factors,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::block_decomposition_split;
    use crate::brauer::extract_tree;
    use crate::groups::FiniteGroup;

    #[test]
    fn synthesis_examples() {
        let t = BrauerTree::star(1, Multiplicity::Finite(8));
        let p = &synthesize_projectives(&t, None).unwrap()[0];
        assert_eq!(p.u_v.len() + p.u_w.len(), 7);
        assert_eq!(p.socle, Some(0));
        assert_eq!(p.composition_length(), 9);

        let t = BrauerTree::star(1, Multiplicity::Infinite);
        assert_eq!(synthesize_projectives(&t, None).unwrap_err(), BrauerError::NeedsTruncation);
        let p = &synthesize_projectives(&t, Some(5)).unwrap()[0];
        assert_eq!(p.u_v.len().max(p.u_w.len()), 5);
        assert!(p.truncated);
        assert_eq!(p.socle, None);

        let t = BrauerTree::star(3, Multiplicity::Finite(2));
        for p in synthesize_projectives(&t, None).unwrap() {
            let (long, short) = if p.v == t.exceptional.unwrap() { (&p.u_v, &p.u_w) } else { (&p.u_w, &p.u_v) };
            assert_eq!(long.len(), 5);
            assert!(short.is_empty());
            assert_eq!(long[0], (p.edge + 1) % 3);
            assert_eq!(p.composition_length(), 7);
        }
    }

    #[test]
    fn round_trips() {
        for (g, p) in [
            (FiniteGroup::cyclic(9), 3),
            (FiniteGroup::symmetric(3).unwrap(), 3),
            (FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap(), 7),
            (FiniteGroup::dihedral(5).unwrap(), 5),
        ] {
            let d = block_decomposition_split(Arc::new(g), p, 0).unwrap();
            for b in 0..d.blocks.len() {
                if d.blocks[b].defect.order() == 1 {
                    continue;
                }
                let (t, _) = extract_tree(&d, b).unwrap();
                let rep = cross_validate(&d, b, &t).unwrap();
                assert!(rep.all_passed(), "{:?}", rep.failures());
            }
        }
    }

    #[test]
    fn corrupted_trees_fail() {
        let d = block_decomposition_split(Arc::new(FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap()), 7, 0).unwrap();
        let (t, _) = extract_tree(&d, 0).unwrap();
        // reverse the cyclic order at the exceptional vertex
        let mut bad = t.clone();
        let c = bad.exceptional.unwrap();
        bad.vertices[c].cyclic_order.reverse();
        let rep = cross_validate(&d, 0, &bad).unwrap();
        assert!(!rep.all_passed());
        assert!(rep.failures().iter().any(|c| c.name.contains("radical layers")));
        let rep = cross_validate(&d, 0, &t.with_multiplicity(Multiplicity::Finite(3))).unwrap();
        assert!(rep.failures().iter().any(|c| c.name == "Cartan matrix"));
    }

    #[test]
    fn cycle_quivers() {
        let q = cycle_quiver_form(&BrauerTree::star(1, Multiplicity::Infinite), 12).unwrap();
        assert_eq!(q.arrows, vec![(0, 0)]);
        assert!(q.uniserial);
        assert!(q.pim_sequences[0].iter().all(|&s| s == 0));
        let q = cycle_quiver_form(&BrauerTree::star(3, Multiplicity::Infinite), 12).unwrap();
        assert_eq!(q.arrows, vec![(0, 1), (1, 2), (2, 0)]);
        assert!(q.uniserial && q.paths_match_factors);
        assert!(q.kernel_matches.iter().all(|&k| k));
        assert_eq!(q.pim_sequences[0][..4], [0, 1, 2, 0]);
        assert_eq!(
            cycle_quiver_form(&BrauerTree::star(3, Multiplicity::Finite(2)), 12).unwrap_err(),
            BrauerError::NotInfiniteStar
        );
    }
}
