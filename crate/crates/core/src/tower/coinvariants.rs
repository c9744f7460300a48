use std::sync::Arc;

use crate::algebra::GroupAlgebra;
use crate::ff::{Elem, Subspace};
use crate::groups::FiniteGroup;

use super::TowerError;

/// The coinvariant map φ: kG -> k[G/N], the linear extension of a group surjection.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    fine: GroupAlgebra,
    coarse: GroupAlgebra,
    projection: Vec<usize>,
}

/// φ for a surjection `projection` from the group of `fine` onto `coarse_group`,
/// with the coarse algebra over the same field.
pub fn coinvariants(
    fine: &GroupAlgebra,
    coarse_group: Arc<FiniteGroup>,
    projection: &[usize],
) -> Result<Coinvariants, TowerError> {
    if !fine.group().is_surjective_hom(&coarse_group, projection) {
        return Err(TowerError::BadProjection);
    }
    let coarse = GroupAlgebra::new(coarse_group, fine.field().clone());
    Ok(Coinvariants { fine: fine.clone(), coarse, projection: projection.to_vec() })
}

impl Coinvariants {
    pub fn fine(&self) -> &GroupAlgebra {
        &self.fine
    }

    pub fn coarse(&self) -> &GroupAlgebra {
        &self.coarse
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        let f = self.fine.field();
        let mut out = self.coarse.zero();
        for (g, &c) in x.iter().enumerate() {
            if c != 0 {
                let t = self.projection[g];
                out[t] = f.add(out[t], c);
            }
        }
        out
    }

    /// The kernel I_N kG, spanned by g − s(π(g)) for a section s of π.
    pub fn kernel(&self) -> Subspace {
        let n = self.fine.dim();
        let mut section = vec![usize::MAX; self.coarse.dim()];
        for (g, &t) in self.projection.iter().enumerate() {
            if section[t] == usize::MAX {
                section[t] = g;
            }
        }
        let f = self.fine.field();
        Subspace::from_vectors(
            f,
            n,
            (0..n).filter(|&g| section[self.projection[g]] != g).map(|g| {
                let mut v = vec![0; n];
                v[g] = 1;
                v[section[self.projection[g]]] = f.neg(1);
                v
            }),
        )
    }

    /// Checks φ(1) = 1 and φ(xy) = φ(x)φ(y) on all pairs of basis elements.
    pub fn is_algebra_hom(&self) -> bool {
        if self.apply(&self.fine.one()) != self.coarse.one() {
            return false;
        }
        let g = self.fine.group();
        let q = self.coarse.group();
        let n = g.order();
        // basis products are basis elements, so φ(xy) = φ(x)φ(y) reads off the tables
        (0..n).all(|x| (0..n).all(|y| self.projection[g.mul(x, y)] == q.mul(self.projection[x], self.projection[y])))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.coarse.dim()];
        for &t in &self.projection {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// self ∘ inner, where inner maps onto the fine algebra of self.
    pub fn compose(&self, inner: &Coinvariants) -> Result<Coinvariants, TowerError> {
        if inner.coarse.dim() != self.fine.dim() {
            return Err(TowerError::BadProjection);
        }
        let projection: Vec<usize> = inner.projection.iter().map(|&x| self.projection[x]).collect();
        coinvariants(&inner.fine, self.coarse.group().clone(), &projection)
    }
}
