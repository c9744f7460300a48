use std::sync::Arc;

use crate::ff::{Elem, Subspace};
use crate::groups::{all_p_subgroups, p_subgroups_up_to_conjugacy, SubgroupRef};

use super::GroupAlgebra;

/// Image of the relative trace Tr_D^G on (kG)^D, spanned by traces of D-orbit sums.
pub fn trace_image(a: &GroupAlgebra, d: &SubgroupRef) -> Subspace {
    let g = a.group();
    let n = g.order();
    let reps = d.left_transversal();
    let mut seen = vec![false; n];
    let mut image = Subspace::new(a.field(), n);
    let f = a.field();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut orbit = vec![x];
        seen[x] = true;
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &h in d.elements() {
                let z = g.conj(h, y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        let mut v: Vec<Elem> = vec![0; n];
        for &t in &reps {
            for &y in &orbit {
                let z = g.conj(t, y);
                v[z] = f.add(v[z], 1);
            }
        }
        image.insert(v);
        if image.is_full() {
            break;
        }
    }
    image
}

/// e ∈ Tr_D^G((kG)^D).
pub fn trace_realizes(a: &GroupAlgebra, e: &[Elem], d: &SubgroupRef) -> bool {
    trace_image(a, d).contains(e)
}

/// The first p-subgroup class (by increasing order) whose trace image contains e.
pub fn defect_group(a: &GroupAlgebra, e: &[Elem]) -> SubgroupRef {
    let p = a.field().p() as usize;
    p_subgroups_up_to_conjugacy(a.group(), p)
        .into_iter()
        .find(|d| trace_realizes(a, e, d))
        .expect("the Sylow subgroup always realizes a central idempotent")
}

/// Every p-subgroup realizing e none of whose proper subgroups realizes it,
/// by exhaustive search over all p-subgroups.
pub fn minimal_trace_subgroups(a: &GroupAlgebra, e: &[Elem]) -> Vec<SubgroupRef> {
    let p = a.field().p() as usize;
    let g: &Arc<_> = a.group();
    let all = all_p_subgroups(g, p);
    let hits: Vec<&SubgroupRef> = all.iter().filter(|d| trace_realizes(a, e, d)).collect();
    hits.iter()
        .filter(|d| !hits.iter().any(|h| h.order() < d.order() && h.is_subgroup_of(d)))
        .map(|d| (*d).clone())
        .collect()
}
