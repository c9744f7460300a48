use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ff::{Elem, FFMatrix, FField, Subspace};

use super::module::hom_dim;
use super::{AlgebraError, ModuleRep, Radical};

/// A chain of subspaces stored as one adapted basis.
///
/// A descending chain has term k spanned by `basis[offsets[k]..]`, an
/// ascending one by `basis[..offsets[k]]`.
#[derive(Clone, Debug)]
pub struct Filtration {
    field: FField,
    ambient: usize,
    basis: Vec<Vec<Elem>>,
    offsets: Vec<usize>,
    descending: bool,
}

impl Filtration {
    /// Number of terms, counting both ends.
    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn field(&self) -> &FField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Basis vectors spanning term k.
    pub fn term_vectors(&self, k: usize) -> &[Vec<Elem>] {
        if self.descending {
            &self.basis[self.offsets[k]..]
        } else {
            &self.basis[..self.offsets[k]]
        }
    }

    pub fn term(&self, k: usize) -> Subspace {
        Subspace::from_vectors(&self.field, self.ambient, self.term_vectors(k).iter().cloned())
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.len()).map(|k| self.term_vectors(k).len()).collect()
    }

    /// Builds a descending filtration from nested terms W_0 ⊇ W_1 ⊇ ... ⊇ 0.
    fn from_descending(field: &FField, ambient: usize, terms: &[Subspace]) -> Self {
        let l = terms.len();
        let mut acc = Subspace::new(field, ambient);
        let mut groups = vec![Vec::new(); l];
        for k in (0..l).rev() {
            for v in terms[k].basis() {
                if acc.insert(v.clone()) {
                    groups[k].push(v.clone());
                }
            }
        }
        let mut offsets = Vec::with_capacity(l);
        let mut basis = Vec::new();
        for g in groups {
            offsets.push(basis.len());
            basis.extend(g);
        }
        Filtration { field: field.clone(), ambient, basis, offsets, descending: true }
    }

    /// Builds an ascending filtration from nested terms 0 = W_0 ⊆ W_1 ⊆ ....
    fn from_ascending(field: &FField, ambient: usize, terms: &[Subspace]) -> Self {
        let mut acc = Subspace::new(field, ambient);
        let mut basis = Vec::new();
        let mut offsets = Vec::with_capacity(terms.len());
        for t in terms {
            for v in t.basis() {
                if acc.insert(v.clone()) {
                    basis.push(v.clone());
                }
            }
            offsets.push(basis.len());
        }
        Filtration { field: field.clone(), ambient, basis, offsets, descending: false }
    }
}

/// Radical and socle series of a module with composition factors per layer.
///
/// Layer factors are indices into the list of simples passed to `loewy`,
/// repeated by multiplicity and sorted.
#[derive(Clone, Debug)]
pub struct LoewyData {
    /// Rad^0 = U ⊋ Rad^1 ⊋ ... ⊋ 0.
    pub radical: Filtration,
    /// 0 = Soc^0 ⊊ Soc^1 ⊊ ... ⊊ U.
    pub socle: Filtration,
    pub radical_layers: Vec<Vec<usize>>,
    pub socle_layers: Vec<Vec<usize>>,
}

impl LoewyData {
    pub fn loewy_length(&self) -> usize {
        self.radical_layers.len()
    }

    pub fn radical_term(&self, k: usize) -> Subspace {
        self.radical.term(k)
    }

    pub fn socle_term(&self, k: usize) -> Subspace {
        self.socle.term(k)
    }

    pub fn is_uniserial(&self) -> bool {
        self.radical_layers.iter().all(|l| l.len() == 1)
    }

    /// All composition factors with multiplicity.
    pub fn factors(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.radical_layers.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn head(&self) -> &[usize] {
        &self.radical_layers[0]
    }

    pub fn socle(&self) -> &[usize] {
        &self.socle_layers[0]
    }
}

/// Factors of a semisimple module: multiplicity of S is dim Hom(L, S) (End S = k).
pub fn semisimple_factors(layer: &ModuleRep, simples: &[ModuleRep]) -> Result<Vec<usize>, AlgebraError> {
    let mut out = Vec::new();
    let mut total = 0;
    for (i, s) in simples.iter().enumerate() {
        if s.dim() > layer.dim() {
            continue;
        }
        let k = hom_dim(layer, s);
        total += k * s.dim();
        out.extend(std::iter::repeat(i).take(k));
    }
    if total != layer.dim() {
        return Err(AlgebraError::UnmatchedFactor);
    }
    Ok(out)
}

/// w, Nw, N²w, ... until zero.
fn chain(n: &FFMatrix, w: Vec<Elem>, cap: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut cur = w;
    while !cur.iter().all(|&x| x == 0) && out.len() <= cap {
        let next = n.mul_vec(&cur);
        out.push(cur);
        cur = next;
    }
    out
}

/// A vector of W whose N-orbit spans W, if a few random tries find one.
/// N is nilpotent, so a chain of length dim W is automatically a basis.
fn cyclic_chain(n: &FFMatrix, w: &Subspace) -> Option<Vec<Vec<Elem>>> {
    let f = w.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x10e3);
    for _ in 0..4 {
        let c: Vec<Elem> = (0..w.dim()).map(|_| f.random(&mut rng)).collect();
        let ch = chain(n, w.combine(&c), w.dim());
        if ch.len() == w.dim() {
            return Some(ch);
        }
    }
    None
}

/// Radical series of a submodule W of U: W ⊇ JW ⊇ J²W ⊇ ... ⊇ 0.
/// `mats` are the right generators of J acting on U.
fn radical_filtration(w: &Subspace, rad: &Radical, mats: &[FFMatrix]) -> Filtration {
    let f = w.field();
    if let [n] = mats {
        if let Some(ch) = cyclic_chain(n, w) {
            let offsets = (0..=ch.len()).collect();
            return Filtration { field: f.clone(), ambient: w.ambient(), basis: ch, offsets, descending: true };
        }
    }
    let mut terms = vec![w.clone()];
    while !terms.last().unwrap().is_zero() {
        let next = rad.radical_of(terms.last().unwrap(), mats);
        terms.push(next);
    }
    Filtration::from_descending(f, w.ambient(), &terms)
}

/// Socle series of U; `mats` are the left generators of J acting on U.
fn socle_filtration(u: &ModuleRep, mats: &[FFMatrix]) -> Filtration {
    let f = u.field();
    let n = u.dim();
    if let [m] = mats {
        // J = A j and Soc^k = ker ρ(j)^k, spanned by the tail of a cyclic chain
        if let Some(mut ch) = cyclic_chain(m, &Subspace::full(f, n)) {
            ch.reverse();
            let offsets = (0..=n).collect();
            return Filtration { field: f.clone(), ambient: n, basis: ch, offsets, descending: false };
        }
    }
    let mut terms = vec![Subspace::new(f, n)];
    while !terms.last().unwrap().is_full() {
        let prev = terms.last().unwrap();
        // u with J u ⊆ prev
        let np = prev.non_pivots();
        let mut rows = Vec::new();
        for m in mats {
            let cols: Vec<Vec<_>> = (0..n).map(|c| prev.quotient_coords(&m.column(c), &np)).collect();
            for r in 0..np.len() {
                rows.push(cols.iter().map(|col| col[r]).collect::<Vec<_>>());
            }
        }
        let next = if rows.is_empty() {
            Subspace::full(f, n)
        } else {
            Subspace::from_vectors(f, n, FFMatrix::from_rows(f, &rows).nullspace())
        };
        assert!(next.dim() > prev.dim(), "socle series stalled");
        terms.push(next);
    }
    Filtration::from_ascending(f, n, &terms)
}

/// Composition factors of the layer upper / lower of U.
fn layer_factors(
    u: &ModuleRep,
    upper: impl FnOnce() -> Subspace,
    lower: impl FnOnce() -> Subspace,
    dim: usize,
    simples: &[ModuleRep],
) -> Result<Vec<usize>, AlgebraError> {
    // in a block with a single simple every factor is that simple
    if let [s] = simples {
        if dim % s.dim() != 0 {
            return Err(AlgebraError::UnmatchedFactor);
        }
        return Ok(vec![0; dim / s.dim()]);
    }
    semisimple_factors(&u.subquotient(&upper(), &lower()), simples)
}

fn layers(u: &ModuleRep, fl: &Filtration, simples: &[ModuleRep]) -> Result<Vec<Vec<usize>>, AlgebraError> {
    let dims = fl.dims();
    (0..fl.len() - 1)
        .map(|k| {
            let (hi, lo) = if fl.descending { (k, k + 1) } else { (k + 1, k) };
            layer_factors(u, || fl.term(hi), || fl.term(lo), dims[hi] - dims[lo], simples)
        })
        .collect()
}

pub fn loewy(u: &ModuleRep, rad: &Radical, simples: &[ModuleRep]) -> Result<LoewyData, AlgebraError> {
    let radical = radical_filtration(&Subspace::full(u.field(), u.dim()), rad, &rad.right_matrices(u));
    let socle = socle_filtration(u, &rad.left_matrices(u));
    let radical_layers = layers(u, &radical, simples)?;
    let socle_layers = layers(u, &socle, simples)?;
    Ok(LoewyData { radical, socle, radical_layers, socle_layers })
}

/// Radical layers of a submodule W of U, computed inside U.
pub fn radical_layers_of(
    u: &ModuleRep,
    w: &Subspace,
    rad: &Radical,
    simples: &[ModuleRep],
) -> Result<Vec<Vec<usize>>, AlgebraError> {
    let fl = radical_filtration(w, rad, &rad.right_matrices(u));
    layers(u, &fl, simples)
}
