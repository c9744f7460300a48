use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::ff::{Elem, FFMatrix, FField, Subspace};
use crate::groups::FiniteGroup;

use super::{AlgebraError, GroupAlgebra};

/// A kG-module: one action matrix per group generator, acting on column vectors.
///
/// Modules that are left ideals of kG remember the ideal, so algebra elements
/// act through multiplication in kG instead of through element matrices.
#[derive(Clone)]
pub struct ModuleRep {
    group: Arc<FiniteGroup>,
    field: FField,
    dim: usize,
    gens: Vec<FFMatrix>,
    elems: OnceLock<Arc<Vec<FFMatrix>>>,
    ideal: Option<Arc<(GroupAlgebra, Subspace)>>,
}

impl std::fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModuleRep(dim {} over {} for {})", self.dim, self.field, self.group.name())
    }
}

impl ModuleRep {
    /// Checks that the generator matrices define a representation of the group.
    pub fn new(group: Arc<FiniteGroup>, field: FField, gens: Vec<FFMatrix>) -> Result<Self, AlgebraError> {
        let dim = gens.first().map(|m| m.rows()).unwrap_or(0);
        let m = Self::unchecked(group, field, dim, gens);
        if m.gens.len() != m.group.gens().len() || m.gens.iter().any(|g| !g.is_square() || g.rows() != m.dim) {
            return Err(AlgebraError::BadModule("one square matrix per generator required".into()));
        }
        if !m.is_representation() {
            return Err(AlgebraError::BadModule("matrices do not satisfy the group relations".into()));
        }
        Ok(m)
    }

    pub(crate) fn unchecked(group: Arc<FiniteGroup>, field: FField, dim: usize, gens: Vec<FFMatrix>) -> Self {
        ModuleRep { group, field, dim, gens, elems: OnceLock::new(), ideal: None }
    }

    pub fn trivial(group: &Arc<FiniteGroup>, field: &FField) -> Self {
        let gens = group.gens().iter().map(|_| FFMatrix::identity(field, 1)).collect();
        Self::unchecked(group.clone(), field.clone(), 1, gens)
    }

    /// Left regular module: g e_h = e_{gh}.
    pub fn regular(a: &GroupAlgebra) -> Self {
        Self::left_ideal(a, &Subspace::full(a.field(), a.dim()))
    }

    /// A left ideal of kG (given as a subspace closed under left multiplication) as a module.
    pub fn left_ideal(a: &GroupAlgebra, ideal: &Subspace) -> Self {
        let g = a.group();
        let gens = g
            .gens()
            .iter()
            .map(|&s| {
                let cols: Vec<Vec<Elem>> = ideal.basis().iter().map(|b| ideal.coords(&a.mul_left_elem(s, b))).collect();
                FFMatrix::from_columns(a.field(), ideal.dim(), &cols)
            })
            .collect();
        let mut m = Self::unchecked(g.clone(), a.field().clone(), ideal.dim(), gens);
        m.ideal = Some(Arc::new((a.clone(), ideal.clone())));
        m
    }

    /// The left ideal this module was built from, if any.
    pub fn ideal(&self) -> Option<&Subspace> {
        self.ideal.as_deref().map(|(_, w)| w)
    }

    /// Pulls back along a surjection π: self.group -> coarse group: g acts as ρ(π(g)).
    pub fn inflate(&self, fine: &Arc<FiniteGroup>, projection: &[usize]) -> ModuleRep {
        let gens = fine.gens().iter().map(|&s| self.action(projection[s]).clone()).collect();
        Self::unchecked(fine.clone(), self.field.clone(), self.dim, gens)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &FField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[FFMatrix] {
        &self.gens
    }

    /// Matrices of all group elements, built along the Cayley tree.
    pub fn element_matrices(&self) -> &Arc<Vec<FFMatrix>> {
        self.elems.get_or_init(|| {
            let g = &self.group;
            let mut out: Vec<Option<FFMatrix>> = vec![None; g.order()];
            out[0] = Some(FFMatrix::identity(&self.field, self.dim));
            let tree = g.cayley_tree();
            for x in g.bfs_order().into_iter().skip(1) {
                let (parent, k) = tree[x].unwrap();
                let m = out[parent].as_ref().unwrap().mul(&self.gens[k]);
                out[x] = Some(m);
            }
            Arc::new(out.into_iter().map(|m| m.unwrap()).collect())
        })
    }

    pub fn action(&self, g: usize) -> &FFMatrix {
        &self.element_matrices()[g]
    }

    /// The matrix of an algebra element Σ x_g g.
    pub fn act_algebra(&self, x: &[Elem]) -> FFMatrix {
        if let Some(id) = &self.ideal {
            let (a, w) = &**id;
            let cols: Vec<Vec<Elem>> = w.basis().iter().map(|b| w.coords(&a.mul(x, b))).collect();
            return FFMatrix::from_columns(&self.field, self.dim, &cols);
        }
        let mut out = FFMatrix::zeros(&self.field, self.dim, self.dim);
        let mats = self.element_matrices();
        for (g, &c) in x.iter().enumerate() {
            if c != 0 {
                out.add_scaled(c, &mats[g]);
            }
        }
        out
    }

    /// ρ(x) ρ(s) = ρ(xs) for every element x and generator s.
    pub fn is_representation(&self) -> bool {
        let g = &self.group;
        let mats = self.element_matrices();
        if !mats.iter().all(|m| m.is_invertible()) {
            return false;
        }
        (0..g.order()).all(|x| {
            g.gens().iter().zip(&self.gens).all(|(&s, ms)| mats[x].mul(ms) == mats[g.mul(x, s)])
        })
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, vs: &[Vec<Elem>]) -> Subspace {
        spin_with(&self.field, self.dim, &self.gens, vs)
    }

    /// Smallest subspace containing vs invariant under the transposed generators.
    pub fn spin_dual(&self, vs: &[Vec<Elem>]) -> Subspace {
        let t: Vec<FFMatrix> = self.gens.iter().map(|m| m.transpose()).collect();
        spin_with(&self.field, self.dim, &t, vs)
    }

    pub fn is_submodule(&self, w: &Subspace) -> bool {
        w.basis().iter().all(|b| self.gens.iter().all(|m| w.contains(&m.mul_vec(b))))
    }

    /// Action on an invariant subspace, in the echelon basis of w.
    pub fn submodule(&self, w: &Subspace) -> ModuleRep {
        debug_assert!(self.is_submodule(w));
        let gens = self
            .gens
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Elem>> = w.basis().iter().map(|b| w.coords(&m.mul_vec(b))).collect();
                FFMatrix::from_columns(&self.field, w.dim(), &cols)
            })
            .collect();
        Self::unchecked(self.group.clone(), self.field.clone(), w.dim(), gens)
    }

    /// Action on V/w, in the basis of non-pivot standard vectors.
    pub fn quotient(&self, w: &Subspace) -> ModuleRep {
        debug_assert!(self.is_submodule(w));
        let np = w.non_pivots();
        let gens = self
            .gens
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Elem>> = np.iter().map(|&c| w.quotient_coords(&m.column(c), &np)).collect();
                FFMatrix::from_columns(&self.field, np.len(), &cols)
            })
            .collect();
        Self::unchecked(self.group.clone(), self.field.clone(), np.len(), gens)
    }

    /// The subquotient upper / lower for submodules lower ⊆ upper.
    pub fn subquotient(&self, upper: &Subspace, lower: &Subspace) -> ModuleRep {
        let sub = self.submodule(upper);
        let inner = Subspace::from_vectors(&self.field, upper.dim(), lower.basis().iter().map(|v| upper.coords(v)));
        sub.quotient(&inner)
    }

    /// Dual module ρ*(g) = ρ(g^-1)^T.
    pub fn dual(&self) -> ModuleRep {
        let gens = self.group.gens().iter().map(|&s| self.action(self.group.inv(s)).transpose()).collect();
        Self::unchecked(self.group.clone(), self.field.clone(), self.dim, gens)
    }

    /// Direct sum.
    pub fn direct_sum(&self, o: &ModuleRep) -> ModuleRep {
        let n = self.dim + o.dim;
        let gens = self
            .gens
            .iter()
            .zip(&o.gens)
            .map(|(a, b)| {
                let mut m = FFMatrix::zeros(&self.field, n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..o.dim {
                    for j in 0..o.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Self::unchecked(self.group.clone(), self.field.clone(), n, gens)
    }

    /// Conjugates the action by an invertible change of basis t: ρ'(g) = t ρ(g) t^-1.
    pub fn conjugated(&self, t: &FFMatrix) -> Option<ModuleRep> {
        let ti = t.inverse()?;
        let gens = self.gens.iter().map(|m| t.mul(m).mul(&ti)).collect();
        Some(Self::unchecked(self.group.clone(), self.field.clone(), self.dim, gens))
    }

    /// True when every element acts trivially.
    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(|m| m.is_identity())
    }
}

pub(crate) fn spin_with(field: &FField, dim: usize, gens: &[FFMatrix], vs: &[Vec<Elem>]) -> Subspace {
    let mut s = Subspace::new(field, dim);
    let mut queue: Vec<Vec<Elem>> = Vec::new();
    for v in vs {
        if s.insert(v.clone()) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if s.is_full() {
            break;
        }
        for m in gens {
            let w = m.mul_vec(&v);
            if s.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    s
}

/// Basis of Hom_kG(U, V) as dim V × dim U matrices.
///
/// U is written as the span of words in the generators applied to a few seed
/// vectors; a homomorphism is then fixed by the images of the seeds, and the
/// linear conditions X ρ_U(s) b = ρ_V(s) X b on every spin vector b cut out Hom.
pub fn hom(u: &ModuleRep, v: &ModuleRep) -> Vec<FFMatrix> {
    let f = u.field().clone();
    let (nu, nv) = (u.dim(), v.dim());
    if nu == 0 || nv == 0 {
        return vec![];
    }
    // spin basis: (vector, provenance) with provenance Seed(i) or Word(j, gen)
    let mut span = Subspace::new(&f, nu);
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    let mut src: Vec<Src> = Vec::new();
    let mut seeds = 0;
    for e in 0..nu {
        if span.is_full() {
            break;
        }
        let mut ev = vec![0; nu];
        ev[e] = 1;
        if span.contains(&ev) {
            continue;
        }
        span.insert(ev.clone());
        basis.push(ev);
        src.push(Src::Seed(seeds));
        seeds += 1;
        let mut i = basis.len() - 1;
        while i < basis.len() {
            for (k, m) in u.gens().iter().enumerate() {
                let w = m.mul_vec(&basis[i]);
                if span.insert(w.clone()) {
                    basis.push(w);
                    src.push(Src::Word(i, k));
                }
            }
            i += 1;
        }
    }
    let unknowns = seeds * nv;
    // images[k] = L_k : nv × unknowns
    let mut images: Vec<FFMatrix> = Vec::with_capacity(nu);
    for s in &src {
        let l = match *s {
            Src::Seed(i) => {
                let mut l = FFMatrix::zeros(&f, nv, unknowns);
                for r in 0..nv {
                    l.set(r, i * nv + r, 1);
                }
                l
            }
            Src::Word(j, k) => v.gens()[k].mul(&images[j]),
        };
        images.push(l);
    }
    let bmat = FFMatrix::from_columns(&f, nu, &basis);
    let binv = bmat.inverse().expect("spin basis is a basis");
    let mut constraints = Subspace::new(&f, unknowns);
    'outer: for (j, b) in basis.iter().enumerate() {
        for (k, m) in u.gens().iter().enumerate() {
            if constraints.is_full() {
                break 'outer;
            }
            let c = binv.mul_vec(&m.mul_vec(b));
            let mut lhs = v.gens()[k].mul(&images[j]);
            for (idx, &ck) in c.iter().enumerate() {
                if ck != 0 {
                    lhs.add_scaled(f.neg(ck), &images[idx]);
                }
            }
            for r in 0..nv {
                let row = lhs.row(r);
                if row.iter().any(|&x| x != 0) {
                    constraints.insert(row.to_vec());
                }
            }
        }
    }
    let sols = if constraints.is_zero() {
        (0..unknowns)
            .map(|i| {
                let mut e = vec![0; unknowns];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        FFMatrix::from_rows(&f, constraints.basis()).nullspace()
    };
    sols.into_iter()
        .map(|z| {
            let cols: Vec<Vec<Elem>> = images.iter().map(|l| l.mul_vec(&z)).collect();
            FFMatrix::from_columns(&f, nv, &cols).mul(&binv)
        })
        .collect()
}

#[derive(Clone, Copy)]
enum Src {
    Seed(usize),
    Word(usize, usize),
}

pub fn hom_dim(u: &ModuleRep, v: &ModuleRep) -> usize {
    hom(u, v).len()
}

pub fn end_dim(u: &ModuleRep) -> usize {
    hom(u, u).len()
}

/// Decides U ≅ V: dimension check, then search for an invertible element of Hom(U, V).
/// Exhaustive when the Hom space has at most 4096 elements, otherwise a
/// seeded random search over combinations (a generic combination is invertible
/// whenever an invertible one exists and the field is not tiny).
pub fn iso_test(u: &ModuleRep, v: &ModuleRep) -> bool {
    if u.dim() != v.dim() {
        return false;
    }
    if u.dim() == 0 {
        return true;
    }
    let h = hom(u, v);
    if h.is_empty() {
        return false;
    }
    if h.iter().any(|m| m.is_invertible()) {
        return true;
    }
    let f = u.field();
    let q = f.order();
    let total = (q as f64).powi(h.len() as i32);
    if total <= 4096.0 {
        let mut coeffs = vec![0u64; h.len()];
        loop {
            let mut i = 0;
            while i < coeffs.len() {
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == coeffs.len() {
                return false;
            }
            if combine(f, &h, &coeffs).is_invertible() {
                return true;
            }
        }
    }
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0x150);
    for _ in 0..64 {
        let coeffs: Vec<u64> = (0..h.len()).map(|_| rng.gen_range(0..q)).collect();
        if combine(f, &h, &coeffs).is_invertible() {
            return true;
        }
    }
    false
}

fn combine(f: &FField, ms: &[FFMatrix], c: &[u64]) -> FFMatrix {
    let mut out = FFMatrix::zeros(f, ms[0].rows(), ms[0].cols());
    for (m, &x) in ms.iter().zip(c) {
        if x != 0 {
            out.add_scaled(x, m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign(g: &Arc<FiniteGroup>, f: &FField) -> ModuleRep {
        // generators of S3 from `symmetric`: a transposition then a 3-cycle
        let gens = vec![FFMatrix::from_ints(f, &[&[-1]]), FFMatrix::identity(f, 1)];
        ModuleRep::new(g.clone(), f.clone(), gens).unwrap()
    }

    #[test]
    fn regular_and_trivial_are_representations() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let f = FField::prime(3).unwrap();
        let a = GroupAlgebra::new(g.clone(), f.clone());
        assert!(ModuleRep::regular(&a).is_representation());
        assert!(ModuleRep::trivial(&g, &f).is_representation());
        assert!(sign(&g, &f).is_representation());
        let bad = vec![FFMatrix::identity(&f, 1), FFMatrix::from_ints(&f, &[&[-1]])];
        assert!(ModuleRep::new(g, f, bad).is_err());
    }

    #[test]
    fn iso_examples() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let f = FField::prime(3).unwrap();
        let a = GroupAlgebra::new(g.clone(), f.clone());
        let t = ModuleRep::trivial(&g, &f);
        let s = sign(&g, &f);
        let r = ModuleRep::regular(&a);
        assert!(iso_test(&t, &t));
        assert!(iso_test(&r, &r));
        assert!(!iso_test(&t, &s));
        assert!(!iso_test(&t, &r));
        assert_eq!(hom_dim(&r, &t), 1);
        assert_eq!(hom_dim(&r, &r), 6);
        assert_eq!(end_dim(&s), 1);
        // a change of basis gives an isomorphic module
        let m = FFMatrix::from_ints(&f, &[&[1, 2, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 1, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[1, 0, 0, 0, 0, 1]]);
        let r2 = r.conjugated(&m).unwrap();
        assert!(iso_test(&r, &r2));
    }

    #[test]
    fn hom_matrices_intertwine() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let f = FField::prime(2).unwrap();
        let a = GroupAlgebra::new(g.clone(), f.clone());
        let r = ModuleRep::regular(&a);
        let t = ModuleRep::trivial(&g, &f);
        let sum = r.direct_sum(&t);
        for x in hom(&sum, &r) {
            for (mu, mv) in sum.gens().iter().zip(r.gens()) {
                assert_eq!(x.mul(mu), mv.mul(&x));
            }
        }
        assert_eq!(hom_dim(&sum, &r), 5);
    }
}
