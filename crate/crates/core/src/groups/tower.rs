use std::sync::Arc;

use super::group::{gcd, FiniteGroup};
use super::GroupError;

/// A chain of finite groups with surjections level(i+1) -> level(i); level 0 is coarsest.
///
/// `unbounded_defect` records that the tower is a prefix of a system whose
/// p-part keeps growing (the defect group of the limit is infinite).
#[derive(Clone, Debug)]
pub struct GroupTower {
    name: String,
    levels: Vec<Arc<FiniteGroup>>,
    maps: Vec<Vec<usize>>,
    unbounded_defect: bool,
}

impl GroupTower {
    /// Validates every map exhaustively as a surjective homomorphism.
    pub fn new(
        name: impl Into<String>,
        levels: Vec<FiniteGroup>,
        maps: Vec<Vec<usize>>,
        unbounded_defect: bool,
    ) -> Result<Self, GroupError> {
        if levels.is_empty() {
            return Err(GroupError::BadTower("no levels".into()));
        }
        if maps.len() + 1 != levels.len() {
            return Err(GroupError::BadTower(format!("{} levels need {} maps", levels.len(), levels.len() - 1)));
        }
        for (i, m) in maps.iter().enumerate() {
            if levels[i + 1].order() < levels[i].order() {
                return Err(GroupError::BadTower(format!("level {} is smaller than level {i}", i + 1)));
            }
            if !levels[i + 1].is_surjective_hom(&levels[i], m) {
                return Err(GroupError::BadTower(format!("map {} -> {i} is not a surjective homomorphism", i + 1)));
            }
        }
        Ok(GroupTower {
            name: name.into(),
            levels: levels.into_iter().map(Arc::new).collect(),
            maps,
            unbounded_defect,
        })
    }

    /// Z/p, Z/p^2, ..., Z/p^depth with reduction maps.
    pub fn cyclic_tower(p: usize, depth: usize) -> Result<Self, GroupError> {
        if depth == 0 {
            return Err(GroupError::BadTower("depth must be at least 1".into()));
        }
        let orders: Vec<usize> = (1..=depth).map(|i| p.pow(i as u32)).collect();
        let t = Self::cyclic_chain(&orders)?;
        Ok(GroupTower { name: format!("Z_{p}[{depth}]"), unbounded_defect: true, ..t })
    }

    /// Cyclic groups of the given orders, each dividing the next, with reduction maps.
    pub fn cyclic_chain(orders: &[usize]) -> Result<Self, GroupError> {
        if orders.iter().any(|&n| n == 0) || orders.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(GroupError::BadTower("each order must divide the next".into()));
        }
        let levels: Vec<FiniteGroup> = orders.iter().map(|&n| FiniteGroup::cyclic(n)).collect();
        let maps = orders.windows(2).map(|w| (0..w[1]).map(|x| x % w[0]).collect()).collect();
        Self::new(format!("cyclic{orders:?}"), levels, maps, false)
    }

    /// `depth` copies of G with identity maps.
    pub fn constant(g: FiniteGroup, depth: usize) -> Result<Self, GroupError> {
        if depth == 0 {
            return Err(GroupError::BadTower("depth must be at least 1".into()));
        }
        let n = g.order();
        let name = format!("const({})", g.name());
        Self::new(name, vec![g; depth], vec![(0..n).collect(); depth - 1], false)
    }

    /// C_{p^i} ⋊ C_k for i = 1..depth, with C_k acting faithfully through a
    /// fixed element of order k modulo p^depth. Requires k | p - 1.
    pub fn semidirect_tower(p: usize, k: usize, depth: usize) -> Result<Self, GroupError> {
        if depth == 0 || k == 0 || (p - 1) % k != 0 {
            return Err(GroupError::BadTower(format!("need k | p-1 and depth >= 1 (p={p}, k={k})")));
        }
        let top = p.pow(depth as u32);
        let a = (2..top.max(2))
            .find(|&a| gcd(a, top) == 1 && mult_order(a, top) == k)
            .unwrap_or(1);
        let mut levels = Vec::new();
        let mut maps = Vec::new();
        for i in 1..=depth {
            let n = p.pow(i as u32);
            levels.push(FiniteGroup::semidirect_cyclic(n, k, a % n)?);
            if i > 1 {
                let m = n / p;
                maps.push((0..n * k).map(|e| (e % n) % m + m * (e / n)).collect());
            }
        }
        let mut t = Self::new(format!("Z_{p}:C{k}[{depth}]"), levels, maps, true)?;
        t.unbounded_defect = true;
        Ok(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[Arc<FiniteGroup>] {
        &self.levels
    }

    /// Surjection level(i+1) -> level(i).
    pub fn map(&self, i: usize) -> &[usize] {
        &self.maps[i]
    }

    pub fn unbounded_defect(&self) -> bool {
        self.unbounded_defect
    }

    pub fn with_unbounded_defect(mut self, flag: bool) -> Self {
        self.unbounded_defect = flag;
        self
    }

    /// Composite surjection level(from) -> level(to), from >= to.
    pub fn composed_map(&self, from: usize, to: usize) -> Vec<usize> {
        assert!(from >= to && from < self.depth());
        let mut m: Vec<usize> = (0..self.levels[from].order()).collect();
        for i in (to..from).rev() {
            for x in m.iter_mut() {
                *x = self.maps[i][*x];
            }
        }
        m
    }

    /// Orders of the kernels of the consecutive maps.
    pub fn kernel_orders(&self) -> Vec<usize> {
        self.maps.iter().map(|m| m.iter().filter(|&&x| x == 0).count()).collect()
    }
}

fn mult_order(a: usize, n: usize) -> usize {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 % n {
        x = x * a % n;
        k += 1;
        if k > n {
            return 0;
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tower_examples() {
        let t = GroupTower::cyclic_tower(3, 2).unwrap();
        assert_eq!(t.levels().iter().map(|g| g.order()).collect::<Vec<_>>(), vec![3, 9]);
        let t = GroupTower::cyclic_tower(2, 1).unwrap();
        assert_eq!(t.depth(), 1);
        assert_eq!(t.level(0).order(), 2);
        let t = GroupTower::cyclic_tower(3, 4).unwrap();
        assert_eq!(t.levels().iter().map(|g| g.order()).collect::<Vec<_>>(), vec![3, 9, 27, 81]);
        assert_eq!(t.kernel_orders(), vec![3, 3, 3]);
        // oracle: composed tables against direct reduction
        let m = t.composed_map(3, 0);
        assert!(m.iter().enumerate().all(|(x, &y)| y == x % 3));
        assert!(t.level(3).is_surjective_hom(t.level(0), &m));
        assert!(GroupTower::cyclic_tower(3, 0).is_err());
    }

    #[test]
    fn semidirect_and_constant() {
        let t = GroupTower::semidirect_tower(7, 3, 2).unwrap();
        assert_eq!(t.level(1).order(), 147);
        assert!(!t.level(0).is_abelian());
        assert!(t.unbounded_defect());
        let c = GroupTower::constant(FiniteGroup::symmetric(3).unwrap(), 3).unwrap();
        assert_eq!(c.composed_map(2, 0), (0..6).collect::<Vec<_>>());
        assert!(GroupTower::semidirect_tower(7, 4, 2).is_err());
    }

    #[test]
    fn bad_towers() {
        assert!(GroupTower::cyclic_chain(&[3, 4]).is_err());
        let r = GroupTower::new("x", vec![FiniteGroup::cyclic(3), FiniteGroup::cyclic(9)], vec![(0..9).map(|_| 0).collect()], false);
        assert!(r.is_err());
    }
}
