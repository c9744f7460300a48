//! MeatAxe: proper submodules of a module, or a proof of irreducibility via
//! Norton's test, driven by a seeded pseudo-random stream of algebra elements.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::ff::{factor_squarefree, FFMatrix, Subspace};

use super::module::{end_dim, iso_test, ModuleRep};
use super::AlgebraError;

const ATTEMPTS: usize = 400;

#[derive(Clone, Debug)]
pub enum Split {
    Irreducible,
    /// A proper nonzero submodule.
    Proper(Subspace),
}

fn random_element(m: &ModuleRep, rng: &mut ChaCha8Rng) -> FFMatrix {
    let f = m.field();
    let mats = m.element_matrices();
    let n = mats.len();
    let mut a = FFMatrix::zeros(f, m.dim(), m.dim());
    let terms = n.min(6);
    for _ in 0..terms {
        let g = rng.gen_range(0..n);
        a.add_scaled(f.random_nonzero(rng), &mats[g]);
    }
    a
}

pub fn split(m: &ModuleRep, rng: &mut ChaCha8Rng) -> Result<Split, AlgebraError> {
    let n = m.dim();
    if n <= 1 {
        return Ok(Split::Irreducible);
    }
    let f = m.field().clone();
    for _ in 0..ATTEMPTS {
        let a = random_element(m, rng);
        let mp = a.minpoly()?;
        let mut factors: Vec<_> = factor_squarefree(&mp, &f)?.into_iter().map(|(p, _)| p).collect();
        factors.sort_by_key(|p| p.deg());
        for fac in factors.iter().take(3) {
            let fa = a.eval_poly(fac);
            let null = fa.nullspace();
            let v = null[0].clone();
            let s = m.spin(&[v]);
            if !s.is_full() {
                return Ok(Split::Proper(s));
            }
            if null.len() == fac.deg() {
                let nt = fa.transpose().nullspace();
                let w = m.spin_dual(&[nt[0].clone()]);
                if w.is_full() {
                    return Ok(Split::Irreducible);
                }
                // annihilator of an invariant subspace of the dual is invariant
                let ann = FFMatrix::from_rows(&f, w.basis()).nullspace();
                return Ok(Split::Proper(Subspace::from_vectors(&f, n, ann)));
            }
        }
    }
    Err(AlgebraError::MeatAxeFailed(n))
}

/// Composition factors with multiplicity, in the order met while peeling.
pub fn composition_factors(m: &ModuleRep, rng: &mut ChaCha8Rng) -> Result<Vec<ModuleRep>, AlgebraError> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(u) = stack.pop() {
        if u.dim() == 0 {
            continue;
        }
        match split(&u, rng)? {
            Split::Irreducible => out.push(u),
            Split::Proper(w) => {
                stack.push(u.quotient(&w));
                stack.push(u.submodule(&w));
            }
        }
    }
    Ok(out)
}

/// Isomorphism types among the composition factors of m.
pub fn distinct_irreducibles(m: &ModuleRep, rng: &mut ChaCha8Rng) -> Result<Vec<ModuleRep>, AlgebraError> {
    let mut reps: Vec<ModuleRep> = Vec::new();
    for s in composition_factors(m, rng)? {
        if !reps.iter().any(|r| iso_test(r, &s)) {
            reps.push(s);
        }
    }
    Ok(reps)
}

/// As `distinct_irreducibles`, each checked to be absolutely irreducible
/// (End = k); otherwise the field does not split m.
pub fn distinct_simples(m: &ModuleRep, rng: &mut ChaCha8Rng) -> Result<Vec<ModuleRep>, AlgebraError> {
    let reps = distinct_irreducibles(m, rng)?;
    for s in &reps {
        let e = end_dim(s);
        if e != 1 {
            return Err(AlgebraError::NonSplit(format!(
                "simple module of dimension {} has endomorphism algebra of dimension {e}",
                s.dim()
            )));
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;

    use super::*;
    use crate::algebra::GroupAlgebra;
    use crate::ff::FField;
    use crate::groups::FiniteGroup;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn regular_module_of_s3() {
        let a = GroupAlgebra::new(Arc::new(FiniteGroup::symmetric(3).unwrap()), FField::prime(3).unwrap());
        let r = ModuleRep::regular(&a);
        let cf = composition_factors(&r, &mut rng()).unwrap();
        assert_eq!(cf.len(), 6);
        assert_eq!(distinct_simples(&r, &mut rng()).unwrap().len(), 2);
        // p = 5: semisimple, simples of dims 1, 1, 2
        let a = GroupAlgebra::new(a.group().clone(), FField::prime(5).unwrap());
        let mut dims: Vec<usize> = distinct_simples(&ModuleRep::regular(&a), &mut rng()).unwrap().iter().map(|s| s.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2]);
    }

    #[test]
    fn non_split_detected() {
        // C3 over F_2: the nontrivial simple has dimension 2 with End = F_4
        let a = GroupAlgebra::new(Arc::new(FiniteGroup::cyclic(3)), FField::prime(2).unwrap());
        let r = ModuleRep::regular(&a);
        assert!(matches!(distinct_simples(&r, &mut rng()), Err(AlgebraError::NonSplit(_))));
        let a = GroupAlgebra::new(a.group().clone(), FField::new(2, 2).unwrap());
        assert_eq!(distinct_simples(&ModuleRep::regular(&a), &mut rng()).unwrap().len(), 3);
    }

    #[test]
    fn s4_simples_over_f2() {
        let a = GroupAlgebra::new(Arc::new(FiniteGroup::symmetric(4).unwrap()), FField::new(2, 2).unwrap());
        let mut dims: Vec<usize> = distinct_simples(&ModuleRep::regular(&a), &mut rng()).unwrap().iter().map(|s| s.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
    }
}
