use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::group::{p_part, FiniteGroup};
use super::GroupError;

/// A subgroup of `parent`, stored as its sorted element indices.
#[derive(Clone, Debug)]
pub struct SubgroupRef {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl PartialEq for SubgroupRef {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && *self.parent == *other.parent
    }
}

impl Eq for SubgroupRef {}

impl SubgroupRef {
    /// Subgroup generated by `gens`.
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Self {
        SubgroupRef { parent: parent.clone(), elements: parent.generated_by(gens) }
    }

    /// Wraps a sorted element set, checking closure.
    pub fn from_elements(parent: &Arc<FiniteGroup>, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let s = SubgroupRef { parent: parent.clone(), elements };
        if s.elements.first() != Some(&0)
            || s.elements.iter().any(|&a| !s.contains(parent.inv(a)))
            || s.elements.iter().any(|&a| s.elements.iter().any(|&b| !s.contains(parent.mul(a, b))))
        {
            return Err(GroupError::BadTable("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        SubgroupRef { parent: parent.clone(), elements: vec![0] }
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        SubgroupRef { parent: parent.clone(), elements: (0..parent.order()).collect() }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupRef) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// g H g^-1
    pub fn conjugate(&self, g: usize) -> SubgroupRef {
        let mut e: Vec<usize> = self.elements.iter().map(|&x| self.parent.conj(g, x)).collect();
        e.sort_unstable();
        SubgroupRef { parent: self.parent.clone(), elements: e }
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.gens().iter().all(|&s| self.elements.iter().all(|&x| self.contains(g.conj(s, x))))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|&x| self.parent.element_order(x) == self.order())
    }

    /// Lexicographically least element set among the conjugates; equal keys
    /// mean conjugate subgroups.
    pub fn conjugacy_key(&self) -> Vec<usize> {
        (0..self.parent.order())
            .map(|g| self.conjugate(g).elements)
            .min()
            .unwrap()
    }

    pub fn is_conjugate_to(&self, other: &SubgroupRef) -> bool {
        self.order() == other.order()
            && (0..self.parent.order()).any(|g| self.conjugate(g).elements == other.elements)
    }

    /// Left coset representatives of self in the parent: least element of each coset.
    pub fn left_transversal(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &h in &self.elements {
                seen[g.mul(x, h)] = true;
            }
        }
        reps
    }

    /// The subgroup as a standalone group (indices relabelled in sorted order).
    pub fn as_group(&self) -> FiniteGroup {
        let g = &self.parent;
        let n = self.order();
        let pos: HashMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut mul = vec![0u32; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                mul[i * n + j] = pos[&g.mul(a, b)] as u32;
            }
        }
        let gens = (1..n).collect();
        let labels = self.elements.iter().map(|&x| g.label(x).to_string()).collect();
        FiniteGroup::from_table(n, mul, gens, labels, format!("sub({})", g.name())).expect("subgroup table")
    }
}

/// Every p-subgroup of G (including the trivial one), ordered by size then elements.
///
/// Each nontrivial p-subgroup P is ⟨H, g⟩ for a maximal subgroup H of P and
/// any g ∈ P \ H, so closing upward from {1} one element at a time reaches all of them.
pub fn all_p_subgroups(g: &Arc<FiniteGroup>, p: usize) -> Vec<SubgroupRef> {
    let sylow = p_part(g.order(), p);
    let p_elems: Vec<usize> = (1..g.order()).filter(|&x| p_part(g.element_order(x), p) == g.element_order(x)).collect();
    let mut found: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
    let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], vec![])];
    while let Some((elems, gens)) = frontier.pop() {
        if elems.len() == sylow {
            continue;
        }
        for &x in &p_elems {
            if elems.binary_search(&x).is_ok() {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(x);
            if let Some(k) = closure_bounded(g, &ng, sylow) {
                if found.insert(k.clone()) {
                    frontier.push((k, ng));
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter().map(|elements| SubgroupRef { parent: g.clone(), elements }).collect()
}

/// Closure of gens, or None if it grows past `bound` or has order not a power of p-part.
fn closure_bounded(g: &FiniteGroup, gens: &[usize], bound: usize) -> Option<Vec<usize>> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut elems = vec![0];
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                elems.push(y);
                if elems.len() > bound {
                    return None;
                }
            }
        }
        i += 1;
    }
    if bound % elems.len() != 0 {
        return None;
    }
    elems.sort_unstable();
    Some(elems)
}

/// One representative per conjugacy class of p-subgroups, ordered by size.
/// The representative is the lexicographically least conjugate.
pub fn p_subgroups_up_to_conjugacy(g: &Arc<FiniteGroup>, p: usize) -> Vec<SubgroupRef> {
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for h in all_p_subgroups(g, p) {
        let key = h.conjugacy_key();
        if seen.insert(key.clone()) {
            reps.push(SubgroupRef { parent: g.clone(), elements: key });
        }
    }
    reps.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    reps
}

/// O_p(G), the largest normal p-subgroup: the intersection of the Sylow p-subgroups.
pub fn p_core(g: &Arc<FiniteGroup>, p: usize) -> SubgroupRef {
    let sylow = sylow_subgroup(g, p);
    let mut keep = vec![true; g.order()];
    for x in 0..g.order() {
        let c = sylow.conjugate(x);
        for (y, k) in keep.iter_mut().enumerate() {
            *k = *k && c.contains(y);
        }
    }
    let elements = (0..g.order()).filter(|&y| keep[y]).collect();
    SubgroupRef { parent: g.clone(), elements }
}

/// A Sylow p-subgroup, grown one p-element at a time inside the normaliser chain.
pub fn sylow_subgroup(g: &Arc<FiniteGroup>, p: usize) -> SubgroupRef {
    let target = p_part(g.order(), p);
    let p_elems: Vec<usize> = (1..g.order()).filter(|&x| p_part(g.element_order(x), p) == g.element_order(x)).collect();
    let mut gens: Vec<usize> = Vec::new();
    let mut cur = vec![0];
    while cur.len() < target {
        // some p-element normalising the current p-subgroup extends it
        let next = p_elems.iter().find_map(|&x| {
            if cur.binary_search(&x).is_ok() {
                return None;
            }
            let mut ng = gens.clone();
            ng.push(x);
            closure_bounded(g, &ng, target).map(|k| (x, k))
        });
        let (x, k) = next.expect("a p-subgroup below Sylow order extends");
        gens.push(x);
        cur = k;
    }
    SubgroupRef { parent: g.clone(), elements: cur }
}

/// G/N with its projection table. Cosets are numbered by least representative.
pub fn quotient(n: &SubgroupRef) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let g = n.parent();
    let reps = n.left_transversal();
    let mut proj = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &h in n.elements() {
            proj[g.mul(r, h)] = i;
        }
    }
    let k = reps.len();
    let mut mul = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            mul[i * k + j] = proj[g.mul(reps[i], reps[j])] as u32;
        }
    }
    let mut gens: Vec<usize> = g.gens().iter().map(|&s| proj[s]).filter(|&x| x != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    let labels = reps.iter().map(|&r| format!("{}N", g.label(r))).collect();
    let q = FiniteGroup::from_table(k, mul, gens, labels, format!("{}/N{}", g.name(), n.order()))?;
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(v: &[SubgroupRef]) -> Vec<usize> {
        v.iter().map(|h| h.order()).collect()
    }

    #[test]
    fn p_subgroup_examples() {
        let z9 = Arc::new(FiniteGroup::cyclic(9));
        assert_eq!(orders(&p_subgroups_up_to_conjugacy(&z9, 3)), vec![1, 3, 9]);
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        assert_eq!(orders(&p_subgroups_up_to_conjugacy(&s3, 3)), vec![1, 3]);
        assert_eq!(orders(&p_subgroups_up_to_conjugacy(&s3, 2)), vec![1, 2]);
        assert_eq!(all_p_subgroups(&s3, 2).len(), 4);
        let a4 = Arc::new(FiniteGroup::alternating(4).unwrap());
        let reps = p_subgroups_up_to_conjugacy(&a4, 2);
        assert_eq!(orders(&reps), vec![1, 2, 4]);
        assert!(!reps[2].is_cyclic());
        assert!(reps[2].is_normal());
    }

    #[test]
    fn sylow_orders() {
        for g in [
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
            FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap(),
            FiniteGroup::cyclic(24),
        ] {
            let g = Arc::new(g);
            for p in [2, 3, 5, 7] {
                let reps = p_subgroups_up_to_conjugacy(&g, p);
                assert_eq!(reps.last().unwrap().order(), p_part(g.order(), p));
                // Sylow subgroups are all conjugate
                assert_eq!(reps.iter().filter(|h| h.order() == p_part(g.order(), p)).count(), 1);
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let z9 = Arc::new(FiniteGroup::cyclic(9));
        let n = SubgroupRef::generated(&z9, &[3]);
        let (q, proj) = quotient(&n).unwrap();
        assert_eq!(q.order(), 3);
        assert!(z9.is_surjective_hom(&q, &proj));
        let (t, _) = quotient(&SubgroupRef::whole(&z9)).unwrap();
        assert_eq!(t.order(), 1);
        let s4 = Arc::new(FiniteGroup::symmetric(4).unwrap());
        let (q, proj) = quotient(&SubgroupRef::trivial(&s4)).unwrap();
        assert_eq!(q.order(), 24);
        assert!(s4.is_surjective_hom(&q, &proj));
        let v4 = p_subgroups_up_to_conjugacy(&s4, 2).into_iter().find(|h| h.order() == 4 && h.is_normal()).unwrap();
        let (s3, proj) = quotient(&v4).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(s4.is_surjective_hom(&s3, &proj));
        let s3g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let c2 = SubgroupRef::generated(&s3g, &[s3g.gens()[0]]);
        assert_eq!(quotient(&c2).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn subgroup_views() {
        let d8 = Arc::new(FiniteGroup::dihedral(4).unwrap());
        let c4 = SubgroupRef::generated(&d8, &[1]);
        assert!(c4.is_cyclic() && c4.is_normal());
        assert_eq!(c4.left_transversal().len(), 2);
        assert_eq!(c4.as_group().order(), 4);
        assert!(SubgroupRef::from_elements(&d8, vec![0, 1]).is_err());
    }
}
