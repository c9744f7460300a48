use crate::algebra::{block_decomposition, block_decomposition_split, iso_test, Decomposition, GroupAlgebra};
use crate::ff::{Elem, FField};
use crate::groups::GroupTower;

use super::coinvariants::{coinvariants, Coinvariants};
use super::TowerError;

/// How the chosen block at level i+1 sits over the chosen block at level i.
#[derive(Clone, Debug)]
pub struct Link {
    /// Blocks e' of level i+1 with φ(e')·e_i ≠ 0.
    pub candidates: Vec<usize>,
    /// The chosen one.
    pub fine_block: usize,
    /// Blocks of level i occurring in φ(e').
    pub constituents: Vec<usize>,
    /// φ(e') = e_i.
    pub exact: bool,
    /// φ(e') is a central idempotent.
    pub central_idempotent: bool,
    /// simple_map[s] = index of the level i+1 simple isomorphic to the inflation of simple s.
    pub simple_map: Vec<Option<usize>>,
}

impl Link {
    /// Inflation is a bijection between the simples of the two blocks.
    pub fn simples_inflate(&self, fine_simples: usize) -> bool {
        let mut seen = vec![false; fine_simples];
        self.simple_map.len() == fine_simples
            && self.simple_map.iter().all(|m| match m {
                Some(t) if !seen[*t] => {
                    seen[*t] = true;
                    true
                }
                _ => false,
            })
    }
}

/// A chain of blocks B_i of k[G_i] along a group tower, over one common field.
#[derive(Clone, Debug)]
pub struct BlockTower {
    pub tower: GroupTower,
    pub levels: Vec<Decomposition>,
    /// chain[i] = index of B_i among the blocks of level i.
    pub chain: Vec<usize>,
    /// maps[i]: level i+1 -> level i.
    pub maps: Vec<Coinvariants>,
    /// links[i] describes B_{i+1} over B_i.
    pub links: Vec<Link>,
}

impl BlockTower {
    pub fn field(&self) -> &FField {
        self.levels[0].field()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn block(&self, i: usize) -> &crate::algebra::BlockData {
        &self.levels[i].blocks[self.chain[i]]
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.depth()).map(|i| self.block(i).algebra_dim).collect()
    }

    pub fn defect_orders(&self) -> Vec<usize> {
        (0..self.depth()).map(|i| self.block(i).defect_order()).collect()
    }

    /// The least level from which every link is exact with a unique candidate,
    /// or None when the last link is not.
    pub fn unique_from(&self) -> Option<usize> {
        let good = |l: &Link| l.exact && l.candidates.len() == 1;
        let mut s = self.links.len();
        while s > 0 && good(&self.links[s - 1]) {
            s -= 1;
        }
        if s == self.links.len() && s > 0 {
            None
        } else {
            Some(s)
        }
    }

    /// Fails unless lifting becomes unique within the tower.
    pub fn ensure_unique(&self) -> Result<usize, TowerError> {
        self.unique_from().ok_or(TowerError::Ambiguous)
    }
}

/// Decomposes every level over the splitting field of the finest one and
/// follows `seed_block` of level 0 upward through the coinvariant maps.
pub fn lift_block(tower: &GroupTower, p: u64, seed_block: usize, seed: u64) -> Result<BlockTower, TowerError> {
    let depth = tower.depth();
    let top = block_decomposition_split(tower.level(depth - 1).clone(), p, seed)?;
    let field = top.field().clone();
    let mut levels = Vec::with_capacity(depth);
    for i in 0..depth - 1 {
        log::info!("level {i}: {} (order {})", tower.level(i).name(), tower.level(i).order());
        levels.push(block_decomposition(&GroupAlgebra::new(tower.level(i).clone(), field.clone()), seed)?);
    }
    log::info!("level {}: {} (order {})", depth - 1, tower.level(depth - 1).name(), tower.level(depth - 1).order());
    levels.push(top);
    if seed_block >= levels[0].blocks.len() {
        return Err(TowerError::NoSuchBlock(0, seed_block));
    }
    let mut chain = vec![seed_block];
    let mut maps = Vec::new();
    let mut links = Vec::new();
    for i in 0..depth - 1 {
        let phi = coinvariants(&levels[i + 1].algebra, tower.level(i).clone(), tower.map(i))?;
        let coarse = &levels[i];
        let ca = &coarse.algebra;
        let e = &coarse.blocks[chain[i]].idempotent;
        let images: Vec<Vec<Elem>> = levels[i + 1].blocks.iter().map(|b| phi.apply(&b.idempotent)).collect();
        let candidates: Vec<usize> =
            (0..images.len()).filter(|&b| !GroupAlgebra::is_zero(&ca.mul(&images[b], e))).collect();
        let Some(&fine_block) = candidates.first() else {
            return Err(TowerError::NoLift(i + 1));
        };
        if candidates.len() > 1 {
            log::warn!("level {}: {} blocks lie over the chosen block", i + 1, candidates.len());
        }
        let img = &images[fine_block];
        let constituents: Vec<usize> = (0..coarse.blocks.len())
            .filter(|&c| !GroupAlgebra::is_zero(&ca.mul(img, &coarse.blocks[c].idempotent)))
            .collect();
        let central_idempotent = ca.is_central(img) && ca.mul(img, img) == *img;
        let exact = img == e;
        let fine_simples = &levels[i + 1].blocks[fine_block].simples;
        let simple_map = coarse.blocks[chain[i]]
            .simples
            .iter()
            .map(|s| {
                let inf = s.inflate(tower.level(i + 1), tower.map(i));
                fine_simples.iter().position(|t| t.dim() == inf.dim() && iso_test(&inf, t))
            })
            .collect();
        links.push(Link { candidates, fine_block, constituents, exact, central_idempotent, simple_map });
        chain.push(fine_block);
        maps.push(phi);
    }
    Ok(BlockTower { tower: tower.clone(), levels, chain, maps, links })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    #[test]
    fn cyclic_tower_is_one_block_per_level() {
        let t = GroupTower::cyclic_tower(3, 3).unwrap();
        let bt = lift_block(&t, 3, 0, 0).unwrap();
        assert_eq!(bt.chain, vec![0, 0, 0]);
        assert_eq!(bt.dims(), vec![3, 9, 27]);
        assert!(bt.links.iter().all(|l| l.exact && l.candidates == vec![0] && l.central_idempotent));
        assert_eq!(bt.unique_from(), Some(0));
        assert!(bt.links.iter().all(|l| l.simples_inflate(1)));
    }

    #[test]
    fn constant_tower_repeats_the_seed() {
        let g = FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap();
        let t = GroupTower::constant(g, 3).unwrap();
        let bt = lift_block(&t, 7, 0, 0).unwrap();
        assert_eq!(bt.chain, vec![0, 0, 0]);
        assert_eq!(bt.dims(), vec![21, 21, 21]);
        assert!(bt.links.iter().all(|l| l.exact && l.simple_map == vec![Some(0), Some(1), Some(2)]));
    }

    #[test]
    fn one_block_lies_over_a_local_algebra() {
        // Z/6 -> Z/3 at p = 3: two blocks upstairs, only the principal lies over k[Z/3]
        let t = GroupTower::cyclic_chain(&[3, 6]).unwrap();
        let bt = lift_block(&t, 3, 0, 0).unwrap();
        assert_eq!(bt.levels[1].blocks.len(), 2);
        assert_eq!(bt.links[0].candidates.len(), 1);
        assert!(bt.links[0].exact);
        assert!(bt.block(1).is_principal());
        assert!(lift_block(&t, 3, 5, 0).is_err());
    }
}
