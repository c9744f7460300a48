use crate::ff::{Elem, FFMatrix, Subspace};

use super::{GroupAlgebra, ModuleRep};

/// J(kG) with generators as a right ideal (for Rad(U) = J U) and as a left ideal
/// (for Soc(U) = {u : J u = 0}).
#[derive(Clone, Debug)]
pub struct Radical {
    pub basis: Subspace,
    pub right_gens: Vec<Vec<Elem>>,
    pub left_gens: Vec<Vec<Elem>>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Rad(W) = J W for a submodule W of U.
    /// `mats` are the right generators acting on the ambient module.
    pub fn radical_of(&self, w: &Subspace, mats: &[FFMatrix]) -> Subspace {
        debug_assert_eq!(mats.len(), self.right_gens.len());
        Subspace::from_vectors(
            w.field(),
            w.ambient(),
            mats.iter().flat_map(|m| w.basis().iter().map(move |b| m.mul_vec(b))),
        )
    }

    pub fn right_matrices(&self, u: &ModuleRep) -> Vec<FFMatrix> {
        self.right_gens.iter().map(|j| u.act_algebra(j)).collect()
    }

    pub fn left_matrices(&self, u: &ModuleRep) -> Vec<FFMatrix> {
        self.left_gens.iter().map(|j| u.act_algebra(j)).collect()
    }
}

/// Kernel of kG -> ⊕_S End(S) over a complete list of simples.
pub fn jacobson_radical(a: &GroupAlgebra, simples: &[ModuleRep]) -> Radical {
    let f = a.field();
    let n = a.dim();
    let rows: usize = simples.iter().map(|s| s.dim() * s.dim()).sum();
    let mut m = FFMatrix::zeros(f, rows.max(1), n);
    let mut r0 = 0;
    for s in simples {
        let mats = s.element_matrices();
        for (g, mg) in mats.iter().enumerate() {
            for (k, &x) in mg.data().iter().enumerate() {
                m.set(r0 + k, g, x);
            }
        }
        r0 += s.dim() * s.dim();
    }
    let basis = Subspace::from_vectors(f, n, m.nullspace());
    let right_gens = ideal_generators(a, &basis, true);
    let left_gens = ideal_generators(a, &basis, false);
    Radical { basis, right_gens, left_gens }
}

/// Greedy generators of an ideal as a right (jA) or left (Aj) ideal.
fn ideal_generators(a: &GroupAlgebra, ideal: &Subspace, right: bool) -> Vec<Vec<Elem>> {
    let mut got = Subspace::new(a.field(), a.dim());
    let mut gens = Vec::new();
    for b in ideal.basis() {
        if got.dim() == ideal.dim() {
            break;
        }
        if got.contains(b) {
            continue;
        }
        for g in 0..a.dim() {
            let v = if right { a.mul_right_elem(b, g) } else { a.mul_left_elem(g, b) };
            got.insert(v);
        }
        gens.push(b.clone());
    }
    gens
}

/// J(kG) by brute force: x ∈ J iff yx is nilpotent for every y.
/// Only attempted when |kG| ≤ 1024 elements.
pub fn radical_bruteforce(a: &GroupAlgebra) -> Option<Subspace> {
    let f = a.field();
    let n = a.dim();
    let q = f.order();
    let total = (q as f64).powi(n as i32);
    if total > 1024.0 {
        return None;
    }
    let all: Vec<Vec<Elem>> = (0..total as u64)
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let d = i % q;
                    i /= q;
                    d
                })
                .collect()
        })
        .collect();
    let nilpotent = |z: &[Elem]| {
        let mut w = z.to_vec();
        let mut k = 1;
        while k < n {
            w = a.mul(&w, &w);
            k *= 2;
        }
        GroupAlgebra::is_zero(&w)
    };
    let nil: Vec<&Vec<Elem>> = all.iter().filter(|x| nilpotent(x)).collect();
    let members: Vec<Vec<Elem>> = nil
        .iter()
        .filter(|x| all.iter().all(|y| nilpotent(&a.mul(y, x))))
        .map(|x| (*x).clone())
        .collect();
    let span = Subspace::from_vectors(f, n, members.iter().cloned());
    // the member set must itself be a subspace
    assert_eq!((q as f64).powi(span.dim() as i32) as usize, members.len());
    Some(span)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::meataxe::distinct_irreducibles;
    use crate::ff::FField;
    use crate::groups::FiniteGroup;

    fn radical(g: FiniteGroup, f: FField) -> (GroupAlgebra, Radical) {
        let a = GroupAlgebra::new(Arc::new(g), f);
        let s = distinct_irreducibles(&ModuleRep::regular(&a), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let j = jacobson_radical(&a, &s);
        (a, j)
    }

    #[test]
    fn radical_examples() {
        let (a, j) = radical(FiniteGroup::cyclic(3), FField::prime(3).unwrap());
        assert_eq!(j.dim(), 2);
        assert!(j.basis.contains(&a.sub(&a.basis_element(1), &a.one())));
        assert!(j.basis.contains(&a.sub(&a.basis_element(2), &a.one())));
        let (_, j) = radical(FiniteGroup::cyclic(9), FField::prime(3).unwrap());
        assert_eq!(j.dim(), 8);
        assert_eq!(j.right_gens.len(), 1);
        let (_, j) = radical(FiniteGroup::symmetric(3).unwrap(), FField::prime(5).unwrap());
        assert_eq!(j.dim(), 0);
    }

    #[test]
    fn radical_matches_bruteforce() {
        for (g, p) in [
            (FiniteGroup::cyclic(3), 3),
            (FiniteGroup::cyclic(4), 2),
            (FiniteGroup::cyclic(6), 2),
            (FiniteGroup::cyclic(6), 3),
            (FiniteGroup::symmetric(3).unwrap(), 3),
            (FiniteGroup::symmetric(3).unwrap(), 2),
            (FiniteGroup::dihedral(4).unwrap(), 2),
            (FiniteGroup::cyclic(2), 2),
        ] {
            let f = FField::prime(p).unwrap();
            let (a, j) = radical(g, f);
            let oracle = radical_bruteforce(&a).unwrap();
            assert_eq!(oracle, j.basis, "{:?} p={p}", a.group());
        }
    }

    #[test]
    fn radical_is_nilpotent_ideal() {
        let (a, j) = radical(FiniteGroup::alternating(4).unwrap(), FField::new(2, 2).unwrap());
        assert_eq!(j.dim(), 12 - 3);
        for b in j.basis.basis() {
            for g in 0..a.dim() {
                assert!(j.basis.contains(&a.mul_left_elem(g, b)));
                assert!(j.basis.contains(&a.mul_right_elem(b, g)));
            }
        }
        // J^k = 0 for some k
        let mut pw = j.basis.clone();
        for _ in 0..12 {
            let next = Subspace::from_vectors(
                a.field(),
                a.dim(),
                pw.basis().iter().flat_map(|x| j.basis.basis().iter().map(|y| a.mul(x, y)).collect::<Vec<_>>()),
            );
            pw = next;
        }
        assert!(pw.is_zero());
    }
}
