use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ff::{crt_idempotents, factor_squarefree, Elem, FField, Poly, Subspace};
use crate::groups::{p_core, quotient, FiniteGroup, SubgroupRef};

use super::loewy::{loewy, LoewyData};
use super::meataxe::distinct_simples;
use super::radical::{jacobson_radical, Radical};
use super::{defect_group, split_field, AlgebraError, GroupAlgebra, ModuleRep};

const MAX_ENLARGED_DEGREE: u32 = 12;

/// One block B = kG e.
#[derive(Clone, Debug)]
pub struct BlockData {
    pub index: usize,
    pub idempotent: Vec<Elem>,
    pub algebra_dim: usize,
    /// Simple B-modules; the trivial module (if here) comes first, then by dimension.
    pub simples: Vec<ModuleRep>,
    /// pims[i] is the projective cover of simples[i], realised as kG ε_i.
    pub pims: Vec<ModuleRep>,
    pub pim_idempotents: Vec<Vec<Elem>>,
    pub defect: SubgroupRef,
    pim_loewy: OnceLock<Vec<LoewyData>>,
}

impl BlockData {
    pub fn is_principal(&self) -> bool {
        self.simples.iter().any(|s| s.is_trivial())
    }

    pub fn defect_order(&self) -> usize {
        self.defect.order()
    }

    pub fn has_cyclic_defect(&self) -> bool {
        self.defect.is_cyclic()
    }
}

/// The blocks of kG together with the radical of kG.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub algebra: GroupAlgebra,
    pub blocks: Vec<BlockData>,
    pub radical: Radical,
    /// The field had to be enlarged beyond `split_field`.
    pub enlarged: bool,
}

impl Decomposition {
    pub fn field(&self) -> &FField {
        self.algebra.field()
    }

    pub fn all_simples(&self) -> Vec<ModuleRep> {
        self.blocks.iter().flat_map(|b| b.simples.iter().cloned()).collect()
    }

    /// Loewy data of a module whose factors lie in block `b`.
    pub fn loewy_in_block(&self, b: usize, u: &ModuleRep) -> Result<LoewyData, AlgebraError> {
        loewy(u, &self.radical, &self.blocks[b].simples)
    }

    /// Loewy data of every PIM of block `b`, computed once.
    pub fn pim_loewy(&self, b: usize) -> Result<&[LoewyData], AlgebraError> {
        let cell = &self.blocks[b].pim_loewy;
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let v = self.blocks[b].pims.iter().map(|p| self.loewy_in_block(b, p)).collect::<Result<Vec<_>, _>>()?;
        Ok(cell.get_or_init(|| v))
    }

    /// C[i][j] = multiplicity of simple j in P_i.
    pub fn cartan(&self, b: usize) -> Result<Vec<Vec<usize>>, AlgebraError> {
        let k = self.blocks[b].simples.len();
        Ok(self
            .pim_loewy(b)?
            .iter()
            .map(|l| {
                let mut row = vec![0; k];
                for s in l.factors() {
                    row[s] += 1;
                }
                row
            })
            .collect())
    }
}

/// Splits the identity of Z(kG) into centrally primitive idempotents.
///
/// For q = p^k ≥ |G| the map z ↦ z^q kills J(Z(kG)) and is bijective on the
/// span of the block idempotents, so the q-th powers of the class sums span
/// exactly that semisimple part E ≅ k^b. Pieces are split along the coprime
/// factors of minimal polynomials of random elements of E until there are b.
/// An irreducible factor of degree > 1 means E is not split over k.
pub fn central_primitive_idempotents(a: &GroupAlgebra) -> Result<Vec<Vec<Elem>>, AlgebraError> {
    let f = a.field().clone();
    let g = a.group();
    let n = g.order();
    let mut q = 1usize;
    while q < n {
        q *= f.p() as usize;
    }
    let mut span = Subspace::new(&f, n);
    let mut gens = Vec::new();
    for class in g.conjugacy_classes() {
        let d = if class.len() == 1 {
            a.basis_element(g.pow(class[0], q))
        } else {
            let mut c = a.zero();
            for &x in &class {
                c[x] = 1;
            }
            power(a, &c, q)
        };
        if span.insert(d.clone()) {
            gens.push(d);
        }
    }
    // E ≅ k^b with b = dim E, so splitting stops at b pieces
    let b = gens.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0xce47);
    let mut pieces = vec![a.one()];
    let mut tries = 0;
    while pieces.len() < b {
        tries += 1;
        if tries > 256 {
            return Err(AlgebraError::Lifting(format!("{} of {b} central idempotents found", pieces.len())));
        }
        let mut x = a.zero();
        for d in &gens {
            let c = f.random(&mut rng);
            for (xi, &di) in x.iter_mut().zip(d) {
                *xi = f.mul_add(*xi, c, di);
            }
        }
        let mut next = Vec::new();
        for e in pieces {
            let y = a.mul(&e, &x);
            if is_multiple(&f, &y, &e) {
                next.push(e);
                continue;
            }
            let times_y = |z: &[Elem]| a.mul(z, &y);
            let mp = a.minpoly_with(&e, times_y);
            let factors = factor_squarefree(&mp, &f)?;
            if let Some((p, _)) = factors.iter().find(|(p, _)| p.deg() > 1) {
                return Err(AlgebraError::NonSplit(format!("central element with irreducible factor of degree {}", p.deg())));
            }
            if factors.len() < 2 {
                next.push(e);
                continue;
            }
            let moduli: Vec<Poly> = factors.iter().map(|(p, k)| p.pow(*k, &f)).collect();
            for u in crt_idempotents(&moduli, &f) {
                next.push(eval_with(a, &u, &e, times_y));
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

fn power(a: &GroupAlgebra, x: &[Elem], mut e: usize) -> Vec<Elem> {
    let mut acc = a.one();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = a.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = a.mul(&base, &base);
        }
    }
    acc
}

/// x = λ e for some scalar λ.
fn is_multiple(f: &FField, x: &[Elem], e: &[Elem]) -> bool {
    let Some(i) = e.iter().position(|&c| c != 0) else {
        return GroupAlgebra::is_zero(x);
    };
    let l = f.div(x[i], e[i]).unwrap();
    x.iter().zip(e).all(|(&xi, &ei)| xi == f.mul(l, ei))
}

/// p(x) where multiplication by x is given and `unit` is x^0.
fn eval_with<F: Fn(&[Elem]) -> Vec<Elem>>(a: &GroupAlgebra, p: &Poly, unit: &[Elem], times_x: F) -> Vec<Elem> {
    let f = a.field();
    let mut acc = a.zero();
    for &c in p.coeffs().iter().rev() {
        acc = times_x(&acc);
        for (x, &u) in acc.iter_mut().zip(unit) {
            *x = f.mul_add(*x, c, u);
        }
    }
    acc
}

fn left_ideal(a: &GroupAlgebra, x: &[Elem]) -> Subspace {
    if x == a.one() {
        return Subspace::full(a.field(), a.dim());
    }
    Subspace::from_vectors(a.field(), a.dim(), (0..a.dim()).map(|g| a.mul_left_elem(g, x)))
}

/// G/O_p(G) with its projection; O_p(G) acts trivially on every simple module.
struct CoreQuotient {
    algebra: GroupAlgebra,
    proj: Vec<usize>,
}

impl CoreQuotient {
    fn new(a: &GroupAlgebra) -> Result<Self, AlgebraError> {
        let core = p_core(a.group(), a.field().p() as usize);
        let (q, proj) = quotient(&core)?;
        Ok(CoreQuotient { algebra: GroupAlgebra::new(Arc::new(q), a.field().clone()), proj })
    }

    /// Simple modules of the block kG e: the simples of kQ π(e), inflated.
    /// Trivial first, then by dimension.
    fn simples(&self, a: &GroupAlgebra, e: &[Elem], rng: &mut ChaCha8Rng) -> Result<Vec<ModuleRep>, AlgebraError> {
        let f = a.field();
        let mut pe = self.algebra.zero();
        for (g, &c) in e.iter().enumerate() {
            let t = self.proj[g];
            pe[t] = f.add(pe[t], c);
        }
        let m = ModuleRep::left_ideal(&self.algebra, &left_ideal(&self.algebra, &pe));
        let mut simples: Vec<ModuleRep> = distinct_simples(&m, rng)?.iter().map(|s| s.inflate(a.group(), &self.proj)).collect();
        simples.sort_by_key(|s| (!s.is_trivial(), s.dim()));
        Ok(simples)
    }
}

/// Block decomposition over the field of `a`. Blocks are ordered principal first,
/// then by dimension, then by idempotent coefficients.
pub fn block_decomposition(a: &GroupAlgebra, seed: u64) -> Result<Decomposition, AlgebraError> {
    let ids = central_primitive_idempotents(a)?;
    let mut keyed: Vec<(bool, usize, Vec<Elem>)> = ids
        .into_iter()
        .map(|e| {
            let d = left_ideal(a, &e).dim();
            (a.augmentation(&e) == 0, d, e)
        })
        .collect();
    keyed.sort();
    let cq = CoreQuotient::new(a)?;
    let mut blocks = Vec::new();
    for (index, (_, algebra_dim, e)) in keyed.into_iter().enumerate() {
        log::debug!("block {index}: dim {algebra_dim}");
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let simples = cq.simples(a, &e, &mut rng)?;
        let pim_idempotents = primitive_idempotents(a, &e, &simples, &mut rng)?;
        let pims = pim_idempotents.iter().map(|eps| ModuleRep::left_ideal(a, &left_ideal(a, eps))).collect();
        let defect = defect_group(a, &e);
        let pim_loewy = OnceLock::new();
        blocks.push(BlockData { index, idempotent: e, algebra_dim, simples, pims, pim_idempotents, defect, pim_loewy });
    }
    let all: Vec<ModuleRep> = blocks.iter().flat_map(|b| b.simples.iter().cloned()).collect();
    let radical = jacobson_radical(a, &all);
    Ok(Decomposition { algebra: a.clone(), blocks, radical, enlarged: false })
}

/// Block decomposition over `split_field(G, p)`, doubling the degree on a
/// detected non-split case while the degree stays at most 12.
pub fn block_decomposition_split(group: Arc<FiniteGroup>, p: u64, seed: u64) -> Result<Decomposition, AlgebraError> {
    let mut field = split_field(&group, p)?;
    let mut enlarged = false;
    loop {
        let a = GroupAlgebra::new(group.clone(), field.clone());
        match block_decomposition(&a, seed) {
            Err(AlgebraError::NonSplit(msg)) if field.degree() * 2 <= MAX_ENLARGED_DEGREE => {
                log::warn!("{msg}; enlarging F_{} to degree {}", field.order(), field.degree() * 2);
                field = FField::new(p, field.degree() * 2)?;
                enlarged = true;
            }
            Ok(mut d) => {
                d.enlarged = enlarged;
                return Ok(d);
            }
            Err(e) => return Err(e),
        }
    }
}

/// One primitive idempotent ε_S of kG e per simple S, with kG ε_S the
/// projective cover of S. An idempotent ε is primitive iff Σ_S rank ρ_S(ε) = 1.
fn primitive_idempotents(
    a: &GroupAlgebra,
    e: &[Elem],
    simples: &[ModuleRep],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<Elem>>, AlgebraError> {
    let f = a.field().clone();
    let ranks = |x: &[Elem]| -> Vec<usize> { simples.iter().map(|s| s.act_algebra(x).rank()).collect() };
    let mut found: Vec<Option<Vec<Elem>>> = vec![None; simples.len()];
    let mut todo = vec![e.to_vec()];
    while let Some(eps) = todo.pop() {
        let r = ranks(&eps);
        let total: usize = r.iter().sum();
        if total == 0 {
            return Err(AlgebraError::Lifting("idempotent acts as zero on every simple".into()));
        }
        if r.iter().enumerate().all(|(i, &k)| k == 0 || found[i].is_some()) {
            continue;
        }
        if total == 1 {
            let i = r.iter().position(|&k| k == 1).unwrap();
            found[i] = Some(eps);
            continue;
        }
        let mut split = false;
        for _ in 0..500 {
            let rnd: Vec<Elem> = (0..a.dim()).map(|_| f.random(rng)).collect();
            let x = a.mul(&a.mul(&eps, &rnd), &eps);
            let times_x = |y: &[Elem]| a.mul(y, &x);
            let mp = a.minpoly_with(&eps, times_x);
            let factors = factor_squarefree(&mp, &f)?;
            if factors.len() < 2 {
                continue;
            }
            let moduli: Vec<Poly> = factors.iter().map(|(p, k)| p.pow(*k, &f)).collect();
            for u in crt_idempotents(&moduli, &f) {
                todo.push(eval_with(a, &u, &eps, times_x));
            }
            split = true;
            break;
        }
        if !split {
            return Err(AlgebraError::Lifting(format!("could not split an idempotent of rank {total}")));
        }
    }
    found
        .into_iter()
        .map(|x| x.ok_or_else(|| AlgebraError::Lifting("simple without a primitive idempotent".into())))
        .collect()
}
