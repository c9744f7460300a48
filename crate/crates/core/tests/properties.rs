//! Invariants checked on randomly chosen groups, fields and trees.

use std::sync::Arc;

use proptest::prelude::*;

use cyclic_blocks::algebra::{block_decomposition_split, GroupAlgebra};
use cyclic_blocks::brauer::{extract_tree, synthesize_projectives, BrauerTree, Multiplicity};
use cyclic_blocks::ff::{FField, FFMatrix};
use cyclic_blocks::groups::{p_part, sylow_subgroup, FiniteGroup, GroupTower};
use cyclic_blocks::tower::coinvariants;

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..40).prop_map(FiniteGroup::cyclic),
        (2usize..10).prop_map(|n| FiniteGroup::dihedral(n).unwrap()),
        (2usize..5).prop_map(|n| FiniteGroup::symmetric(n).unwrap()),
        Just(FiniteGroup::alternating(4).unwrap()),
    ]
}

fn random_element(a: &GroupAlgebra, coeffs: &[u64]) -> Vec<u64> {
    let q = a.field().order();
    (0..a.dim()).map(|g| coeffs[g % coeffs.len()] % q).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7]), m in 1u32..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = FField::new(p, m).unwrap();
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        // Frobenius is additive
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn rank_nullity(rows in 1usize..7, cols in 1usize..7, data in prop::collection::vec(0u64..5, 49)) {
        let f = FField::prime(5).unwrap();
        let m = FFMatrix::from_data(&f, rows, cols, data[..rows * cols].to_vec());
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), cols);
        for v in null {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn sylow_order_is_the_p_part(g in small_group(), p in prop::sample::select(vec![2usize, 3, 5, 7])) {
        let g = Arc::new(g);
        let s = sylow_subgroup(&g, p);
        prop_assert_eq!(s.order(), p_part(g.order(), p));
    }

    #[test]
    fn quotient_maps_are_algebra_homs(d in 1usize..12, k in 1usize..5, coeffs in prop::collection::vec(0u64..3, 1..20)) {
        let t = GroupTower::cyclic_chain(&[d, d * k]).unwrap();
        let a = GroupAlgebra::new(t.level(1).clone(), FField::prime(3).unwrap());
        let phi = coinvariants(&a, t.level(0).clone(), t.map(0)).unwrap();
        prop_assert!(phi.is_algebra_hom());
        prop_assert_eq!(phi.kernel().dim(), d * k - d);
        let x = random_element(&a, &coeffs);
        let y = random_element(&a, &coeffs[1..].iter().chain(&coeffs[..1]).copied().collect::<Vec<_>>());
        prop_assert_eq!(phi.apply(&a.mul(&x, &y)), phi.coarse().mul(&phi.apply(&x), &phi.apply(&y)));
    }

    #[test]
    fn coinvariants_compose(a in 1usize..5, b in 1usize..4, c in 1usize..3, coeffs in prop::collection::vec(0u64..2, 1..10)) {
        let t = GroupTower::cyclic_chain(&[a, a * b, a * b * c]).unwrap();
        let f = FField::prime(2).unwrap();
        let top = GroupAlgebra::new(t.level(2).clone(), f.clone());
        let mid = GroupAlgebra::new(t.level(1).clone(), f);
        let outer = coinvariants(&mid, t.level(0).clone(), t.map(0)).unwrap();
        let inner = coinvariants(&top, t.level(1).clone(), t.map(1)).unwrap();
        let both = outer.compose(&inner).unwrap();
        let x = random_element(&top, &coeffs);
        prop_assert_eq!(both.apply(&x), outer.apply(&inner.apply(&x)));
    }

    #[test]
    fn star_cartan_matrix(n in 1usize..6, m in 1u64..5) {
        let t = BrauerTree::star(n, Multiplicity::Finite(m));
        let pims = synthesize_projectives(&t, None).unwrap();
        for (i, p) in pims.iter().enumerate() {
            let counts = p.factor_counts(n);
            for (j, &c) in counts.iter().enumerate() {
                prop_assert_eq!(c as u64, if i == j { m + 1 } else { m });
            }
        }
        let back: BrauerTree = serde_json::from_value(t.to_json()).unwrap();
        prop_assert_eq!(back, t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// kC_n splits into n_{p'} blocks, each of dimension and defect order n_p
    /// with one simple module, and its tree is a single edge of multiplicity n_p - 1.
    #[test]
    fn blocks_of_cyclic_groups(n in 2usize..40, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let g = Arc::new(FiniteGroup::cyclic(n));
        let d = block_decomposition_split(g, p, 0).unwrap();
        let np = p_part(n, p as usize);
        prop_assert_eq!(d.blocks.len(), n / np);
        for (i, b) in d.blocks.iter().enumerate() {
            prop_assert_eq!(b.algebra_dim, np);
            prop_assert_eq!(b.defect_order(), np);
            prop_assert_eq!(b.simples.len(), 1);
            if np > 1 {
                let (t, _) = extract_tree(&d, i).unwrap();
                prop_assert_eq!(t.num_edges(), 1);
                prop_assert_eq!(t.multiplicity, Multiplicity::Finite(np as u64 - 1));
            }
        }
    }

    #[test]
    fn block_idempotents_partition_unity(g in small_group(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let d = block_decomposition_split(Arc::new(g), p, 0).unwrap();
        let a = &d.algebra;
        let mut sum = a.zero();
        for b in &d.blocks {
            prop_assert!(a.is_central(&b.idempotent));
            prop_assert_eq!(a.mul(&b.idempotent, &b.idempotent), b.idempotent.clone());
            sum = a.add(&sum, &b.idempotent);
        }
        prop_assert_eq!(sum, a.one());
        prop_assert_eq!(d.blocks.iter().map(|b| b.algebra_dim).sum::<usize>(), a.dim());
        prop_assert!(d.blocks[0].is_principal());
    }
}
