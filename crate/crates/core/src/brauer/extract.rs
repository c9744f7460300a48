use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{hom, radical_layers_of, Decomposition, ModuleRep};
use crate::ff::{crt_idempotents, factor_squarefree, Elem, FFMatrix, Poly, Subspace};

use super::tree::{BrauerTree, Multiplicity, TreePermutations, VertexKind};
use super::BrauerError;

/// The two uniserial submodules X, Y of a PIM P with X + Y = Rad(P) and X ∩ Y = Soc(P).
/// Factor lists run from the top down and end with the socle.
#[derive(Clone, Debug)]
pub struct UniserialPair {
    pub x: Subspace,
    pub y: Subspace,
    pub x_factors: Vec<usize>,
    pub y_factors: Vec<usize>,
}

impl UniserialPair {
    /// Factors of X / Soc(P) and Y / Soc(P): the sides U^v(S), U^w(S).
    pub fn sides(&self) -> [Vec<usize>; 2] {
        let cut = |v: &[usize]| v[..v.len() - 1].to_vec();
        [cut(&self.x_factors), cut(&self.y_factors)]
    }
}

fn check_block(d: &Decomposition, b: usize) -> Result<(), BrauerError> {
    let blk = &d.blocks[b];
    if blk.defect.order() == 1 {
        return Err(BrauerError::TrivialDefect);
    }
    if !blk.defect.is_cyclic() {
        return Err(BrauerError::DefectNotCyclic);
    }
    Ok(())
}

fn uniserial_factors(layers: &[Vec<usize>]) -> Result<Vec<usize>, BrauerError> {
    if layers.iter().any(|x| x.len() != 1) {
        return Err(BrauerError::NotIndecomposable("summand of Rad/Soc is not uniserial".into()));
    }
    Ok(layers.iter().map(|x| x[0]).collect())
}

/// Lifts a vector of upper/lower (coordinates as produced by `ModuleRep::subquotient`) into the ambient space.
fn lift(upper: &Subspace, lower: &Subspace, v: &[Elem]) -> Vec<Elem> {
    let inner = Subspace::from_vectors(upper.field(), upper.dim(), lower.basis().iter().map(|x| upper.coords(x)));
    let np = inner.non_pivots();
    let mut w = vec![0; upper.dim()];
    for (&c, &x) in np.iter().zip(v) {
        w[c] = x;
    }
    upper.combine(&w)
}

/// Splits M into two summands using a random endomorphism whose minimal
/// polynomial has two coprime factors.
fn split_two(m: &ModuleRep, rng: &mut ChaCha8Rng) -> Result<(Subspace, Subspace), BrauerError> {
    let f = m.field().clone();
    let end = hom(m, m);
    for _ in 0..200 {
        let mut x = FFMatrix::zeros(&f, m.dim(), m.dim());
        for b in &end {
            x.add_scaled(f.random(rng), b);
        }
        let mp = x.minpoly().map_err(crate::algebra::AlgebraError::from)?;
        let fac = factor_squarefree(&mp, &f).map_err(crate::algebra::AlgebraError::from)?;
        if fac.len() < 2 {
            continue;
        }
        let moduli: Vec<Poly> = fac.iter().map(|(p, k)| p.pow(*k, &f)).collect();
        let ids = crt_idempotents(&moduli, &f);
        let pieces: Vec<Subspace> = ids.iter().map(|u| x.eval_poly(u).column_space()).collect();
        if pieces.len() != 2 {
            return Err(BrauerError::NotIndecomposable(format!("Rad/Soc has {} summands", pieces.len())));
        }
        let mut it = pieces.into_iter();
        return Ok((it.next().unwrap(), it.next().unwrap()));
    }
    Err(BrauerError::NotIndecomposable("Rad/Soc did not split into two summands".into()))
}

/// X and Y for the PIM of simple `s` in block `b`. X is the longer one
/// (ties: smaller top factor); when Rad/Rad² is simple, X = Rad(P) and Y = Soc(P).
pub fn uniserial_pair(d: &Decomposition, b: usize, s: usize) -> Result<UniserialPair, BrauerError> {
    check_block(d, b)?;
    let p = &d.blocks[b].pims[s];
    let l = d.loewy_in_block(b, p)?;
    if l.loewy_length() < 2 || l.head() != [s] || l.socle() != [s] {
        return Err(BrauerError::NotIndecomposable("head and socle must both be the simple".into()));
    }
    let second = &l.radical_layers[1];
    let (x, y, xf, yf) = match second.len() {
        // Rad(P) is the long uniserial and Soc(P) the short one
        1 => {
            let xf = uniserial_factors(&l.radical_layers[1..])?;
            (l.radical_term(1), l.socle_term(1), xf, vec![s])
        }
        2 if second[0] != second[1] => {
            let rad = l.radical_term(1);
            let soc = l.socle_term(1);
            let m = p.subquotient(&rad, &soc);
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ s as u64);
            let (a, c) = split_two(&m, &mut rng)?;
            let up = |w: &Subspace| Subspace::from_vectors(p.field(), p.dim(), soc.basis().iter().cloned().chain(w.basis().iter().map(|v| lift(&rad, &soc, v))));
            let (x, y) = (up(&a), up(&c));
            if x.intersection(&y) != soc || x.sum(&y) != rad {
                return Err(BrauerError::NotIndecomposable("X ∩ Y ≠ Soc or X + Y ≠ Rad".into()));
            }
            let simples = &d.blocks[b].simples;
            let xf = uniserial_factors(&radical_layers_of(p, &x, &d.radical, simples)?)?;
            let yf = uniserial_factors(&radical_layers_of(p, &y, &d.radical, simples)?)?;
            (x, y, xf, yf)
        }
        _ => return Err(BrauerError::NotIndecomposable(format!("Rad/Rad^2 has factors {second:?}"))),
    };
    let swap = (yf.len(), std::cmp::Reverse(yf[0])) > (xf.len(), std::cmp::Reverse(xf[0]));
    Ok(if swap {
        UniserialPair { x: y, y: x, x_factors: yf, y_factors: xf }
    } else {
        UniserialPair { x, y, x_factors: xf, y_factors: yf }
    })
}

/// Brauer tree of a block with nontrivial cyclic defect, from its uniserial sides.
pub fn extract_tree(d: &Decomposition, b: usize) -> Result<(BrauerTree, TreePermutations), BrauerError> {
    check_block(d, b)?;
    let blk = &d.blocks[b];
    let n = blk.simples.len();
    let sides: Vec<[Vec<usize>; 2]> = (0..n).map(|s| uniserial_pair(d, b, s).map(|u| u.sides())).collect::<Result<_, _>>()?;
    let tree = tree_from_sides(&sides, blk.defect.order() as u64, d.field().p())?;
    tree.validate()?;
    let perms = tree.permutations();
    Ok((tree, perms))
}

/// Assembles the tree from the two side lists of every edge.
///
/// The side (S, a) continues at (t, b) where t = γ_v(S) is the first factor of
/// the side and (t, b) is the side of P_t whose factors contain S; orbits of
/// this map are the vertices. A 2-colouring with X_{S_0} on the ρ side fixes
/// which vertices are ρ-orbits.
pub(crate) fn tree_from_sides(sides: &[[Vec<usize>; 2]], defect_order: u64, p: u64) -> Result<BrauerTree, BrauerError> {
    let n = sides.len();
    let next = |s: usize, a: usize| -> Result<(usize, usize), BrauerError> {
        let l = &sides[s][a];
        match l.first() {
            None => Ok((s, a)),
            Some(&t) if t == s => Ok((s, a)),
            Some(&t) => {
                let hits: Vec<usize> = (0..2).filter(|&c| sides[t][c].contains(&s)).collect();
                match hits[..] {
                    [c] => Ok((t, c)),
                    _ => Err(BrauerError::TreeInvariant(format!("edge {t} meets edge {s} on {} sides", hits.len()))),
                }
            }
        }
    };
    let mut vertex_of = vec![[usize::MAX; 2]; n];
    let mut cycles: Vec<Vec<(usize, usize)>> = Vec::new();
    for s in 0..n {
        for a in 0..2 {
            if vertex_of[s][a] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut cur = (s, a);
            loop {
                if vertex_of[cur.0][cur.1] != usize::MAX {
                    if cur == (s, a) {
                        break;
                    }
                    return Err(BrauerError::TreeInvariant("side map is not a permutation".into()));
                }
                vertex_of[cur.0][cur.1] = id;
                cyc.push(cur);
                cur = next(cur.0, cur.1)?;
                if cyc.len() > 2 * n {
                    return Err(BrauerError::TreeInvariant("side orbit does not close".into()));
                }
            }
            cycles.push(cyc);
        }
    }
    if cycles.len() != n + 1 {
        return Err(BrauerError::TreeInvariant(format!("{} vertices for {n} edges", cycles.len())));
    }
    // 2-colour: colour[v] = true for ρ-vertices
    let mut colour: Vec<Option<bool>> = vec![None; cycles.len()];
    colour[vertex_of[0][0]] = Some(true);
    let mut changed = true;
    while changed {
        changed = false;
        for s in 0..n {
            let [a, c] = vertex_of[s];
            if a == c {
                return Err(BrauerError::TreeInvariant(format!("edge {s} is a loop")));
            }
            for (x, y) in [(a, c), (c, a)] {
                if let Some(cx) = colour[x] {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            changed = true;
                        }
                        Some(cy) if cy == cx => return Err(BrauerError::TreeInvariant("graph is not bipartite".into())),
                        _ => {}
                    }
                }
            }
        }
    }
    if colour.iter().any(|c| c.is_none()) {
        return Err(BrauerError::TreeInvariant("not connected".into()));
    }
    // exceptional: sides longer than valency − 1
    let mut exceptional = None;
    for (id, cyc) in cycles.iter().enumerate() {
        let val = cyc.len();
        if cyc.iter().any(|&(s, a)| sides[s][a].len() > val - 1) {
            if exceptional.is_some() {
                return Err(BrauerError::TreeInvariant("two exceptional vertices".into()));
            }
            exceptional = Some(id);
        }
    }
    let e = n as u64;
    let no_exception_case = defect_order == p && e == p - 1;
    let (exceptional, multiplicity) = if no_exception_case {
        if exceptional.is_some() {
            return Err(BrauerError::TreeInvariant("exceptional vertex with |D| = p and |S| = p − 1".into()));
        }
        (None, Multiplicity::Finite(1))
    } else {
        if (defect_order - 1) % e != 0 {
            return Err(BrauerError::TreeInvariant(format!("|S| = {e} does not divide |D| − 1 = {}", defect_order - 1)));
        }
        let m = (defect_order - 1) / e;
        let v = exceptional.ok_or_else(|| BrauerError::TreeInvariant(format!("m = {m} but no long sides")))?;
        (Some(v), Multiplicity::Finite(m))
    };
    let kind = |id: usize| if colour[id] == Some(true) { VertexKind::Rho } else { VertexKind::Sigma };
    let edge_cycles = |k: VertexKind| -> Vec<Vec<usize>> {
        cycles
            .iter()
            .enumerate()
            .filter(|(id, _)| kind(*id) == k)
            .map(|(_, c)| c.iter().map(|&(s, _)| s).collect())
            .collect()
    };
    let exc = exceptional.map(|id| (kind(id), cycles[id][0].0));
    BrauerTree::from_cycles(
        (0..n).map(|i| format!("S{i}")).collect(),
        edge_cycles(VertexKind::Rho),
        edge_cycles(VertexKind::Sigma),
        exc,
        multiplicity,
    )
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::block_decomposition_split;
    use crate::brauer::BrauerError;
    use crate::groups::FiniteGroup;

    fn decomp(g: FiniteGroup, p: u64) -> Decomposition {
        block_decomposition_split(Arc::new(g), p, 0).unwrap()
    }

    #[test]
    fn cyclic_9() {
        let d = decomp(FiniteGroup::cyclic(9), 3);
        let u = uniserial_pair(&d, 0, 0).unwrap();
        assert_eq!(u.x, d.pim_loewy(0).unwrap()[0].radical_term(1));
        assert_eq!(u.y_factors, vec![0]);
        assert_eq!(u.x_factors.len(), 8);
        let (t, _) = extract_tree(&d, 0).unwrap();
        assert_eq!(t.num_edges(), 1);
        assert_eq!(t.multiplicity, Multiplicity::Finite(8));
        assert!(t.exceptional.is_some());
        assert!(t.check_multiplicity(9));
    }

    #[test]
    fn s3_at_3_is_a_path() {
        let d = decomp(FiniteGroup::symmetric(3).unwrap(), 3);
        let u = uniserial_pair(&d, 0, 0).unwrap();
        assert_eq!(u.x_factors, vec![1, 0]);
        assert_eq!(u.y_factors, vec![0]);
        let (t, perms) = extract_tree(&d, 0).unwrap();
        assert_eq!(t.num_edges(), 2);
        assert_eq!(t.exceptional, None);
        assert_eq!(t.multiplicity, Multiplicity::Finite(1));
        // the middle vertex carries both edges
        assert!(t.vertices.iter().any(|v| v.cyclic_order.len() == 2));
        assert_eq!(perms.rho, vec![1, 0]);
        assert_eq!(perms.sigma, vec![0, 1]);
    }

    #[test]
    fn frobenius_21_is_a_star() {
        let d = decomp(FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap(), 7);
        let (t, _) = extract_tree(&d, 0).unwrap();
        assert_eq!(t.num_edges(), 3);
        assert_eq!(t.multiplicity, Multiplicity::Finite(2));
        assert!(t.is_star().unwrap());
        for s in 0..3 {
            let u = uniserial_pair(&d, 0, s).unwrap();
            assert_eq!(u.x_factors.len(), 6);
        }
    }

    #[test]
    fn rejections() {
        let d = decomp(FiniteGroup::alternating(4).unwrap(), 2);
        assert_eq!(extract_tree(&d, 0).unwrap_err(), BrauerError::DefectNotCyclic);
        let d = decomp(FiniteGroup::symmetric(3).unwrap(), 5);
        assert_eq!(uniserial_pair(&d, 0, 0).unwrap_err(), BrauerError::TrivialDefect);
    }
}
