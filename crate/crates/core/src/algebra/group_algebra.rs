use std::sync::Arc;

use crate::ff::{multiplicative_order, Elem, FField, FfError, Poly};
use crate::groups::{p_part, FiniteGroup};

use super::AlgebraError;

/// The group algebra kG; elements are coefficient vectors indexed by group elements.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: Arc<FiniteGroup>,
    field: FField,
}

impl GroupAlgebra {
    pub fn new(group: Arc<FiniteGroup>, field: FField) -> Self {
        if group.order() as u64 % field.p() != 0 {
            log::debug!("characteristic {} does not divide |G| = {}", field.p(), group.order());
        }
        GroupAlgebra { group, field }
    }

    /// kG over `split_field(G, p)`.
    pub fn over_split_field(group: Arc<FiniteGroup>, p: u64) -> Result<Self, AlgebraError> {
        let f = split_field(&group, p)?;
        Ok(Self::new(group, f))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &FField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![0; self.dim()]
    }

    pub fn one(&self) -> Vec<Elem> {
        self.basis_element(0)
    }

    pub fn basis_element(&self, g: usize) -> Vec<Elem> {
        let mut v = self.zero();
        v[g] = 1;
        v
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let g = &self.group;
        let mut out = self.zero();
        for (x, &ax) in a.iter().enumerate() {
            if ax == 0 {
                continue;
            }
            for (y, &by) in b.iter().enumerate() {
                if by != 0 {
                    let z = g.mul(x, y);
                    out[z] = f.mul_add(out[z], ax, by);
                }
            }
        }
        out
    }

    /// a * g for a group element g.
    pub fn mul_right_elem(&self, a: &[Elem], g: usize) -> Vec<Elem> {
        let mut out = self.zero();
        for (x, &c) in a.iter().enumerate() {
            out[self.group.mul(x, g)] = c;
        }
        out
    }

    /// g * a for a group element g.
    pub fn mul_left_elem(&self, g: usize, a: &[Elem]) -> Vec<Elem> {
        let mut out = self.zero();
        for (x, &c) in a.iter().enumerate() {
            out[self.group.mul(g, x)] = c;
        }
        out
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: Elem, a: &[Elem]) -> Vec<Elem> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn is_zero(a: &[Elem]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Sum of coefficients.
    pub fn augmentation(&self, a: &[Elem]) -> Elem {
        a.iter().fold(0, |s, &x| self.field.add(s, x))
    }

    /// Class sums of the conjugacy classes, ordered as `conjugacy_classes`.
    pub fn class_sums(&self) -> Vec<Vec<Elem>> {
        self.group
            .conjugacy_classes()
            .iter()
            .map(|c| {
                let mut v = self.zero();
                for &g in c {
                    v[g] = 1;
                }
                v
            })
            .collect()
    }

    /// Central iff fixed under conjugation by every generator.
    pub fn is_central(&self, a: &[Elem]) -> bool {
        let g = &self.group;
        g.gens().iter().all(|&s| (0..g.order()).all(|x| a[g.conj(s, x)] == a[x]))
    }

    /// Evaluates p(x) in the unital subalgebra with identity `unit` (p(x) uses unit for x^0).
    pub fn eval_poly(&self, p: &Poly, x: &[Elem], unit: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut acc = self.zero();
        for &c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            for (a, &u) in acc.iter_mut().zip(unit) {
                *a = f.mul_add(*a, c, u);
            }
        }
        acc
    }

    /// Minimal polynomial of x in the unital subalgebra with identity `unit`,
    /// from the first linear dependency among unit, x, x^2, ...
    pub fn minpoly_in(&self, x: &[Elem], unit: &[Elem]) -> Poly {
        self.minpoly_with(unit, |y| self.mul(y, x))
    }

    /// Same as `minpoly_in` with a caller-supplied multiplication by x.
    pub fn minpoly_with<F: Fn(&[Elem]) -> Vec<Elem>>(&self, unit: &[Elem], times_x: F) -> Poly {
        let f = &self.field;
        let n = self.dim();
        let mut basis: Vec<(usize, Vec<Elem>, Poly)> = Vec::new();
        let mut w = unit.to_vec();
        let mut k = 0;
        loop {
            let mut r = w.clone();
            let mut mono = vec![0; k + 1];
            mono[k] = 1;
            let mut poly = Poly::new(mono);
            for (pc, row, rp) in &basis {
                let c = r[*pc];
                if c == 0 {
                    continue;
                }
                let nc = f.neg(c);
                for (a, &b) in r.iter_mut().zip(row) {
                    *a = f.mul_add(*a, nc, b);
                }
                poly = poly.sub(&rp.scale(c, f), f);
            }
            match r.iter().position(|&a| a != 0) {
                None => return poly.monic(f),
                Some(pc) => {
                    let inv = f.inv(r[pc]).unwrap();
                    for a in r.iter_mut() {
                        *a = f.mul(*a, inv);
                    }
                    basis.push((pc, r, poly.scale(inv, f)));
                }
            }
            debug_assert!(k <= n);
            w = times_x(&w);
            k += 1;
        }
    }
}

/// F_{p^m} with m the order of p modulo the p'-part of the exponent of G.
/// Such a field contains all exp(G)_{p'}-th roots of unity and is a splitting field.
pub fn split_field(g: &FiniteGroup, p: u64) -> Result<FField, AlgebraError> {
    let e = g.exponent();
    let e_pp = (e / p_part(e, p as usize)) as u64;
    let m = if e_pp <= 2 { 1 } else { multiplicative_order(p % e_pp, e_pp) };
    FField::new(p, m.max(1)).map_err(|e| match e {
        FfError::NotPrime(p) => AlgebraError::NotPrime(p),
        other => AlgebraError::Field(other),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_field_examples() {
        assert_eq!(split_field(&FiniteGroup::cyclic(9), 3).unwrap().order(), 3);
        assert_eq!(split_field(&FiniteGroup::symmetric(3).unwrap(), 3).unwrap().order(), 3);
        // 7 = 1 mod 3, so cube roots of unity already live in F_7
        let g = FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(split_field(&g, 7).unwrap().order(), 7);
        assert_eq!(split_field(&FiniteGroup::cyclic(74), 2).unwrap().degree(), 36);
        assert_eq!(split_field(&FiniteGroup::alternating(4).unwrap(), 2).unwrap().order(), 4);
        assert!(split_field(&FiniteGroup::cyclic(4), 4).is_err());
    }

    #[test]
    fn multiplication_and_minpoly() {
        let a = GroupAlgebra::new(Arc::new(FiniteGroup::cyclic(3)), FField::prime(3).unwrap());
        let g = a.basis_element(1);
        let x = a.sub(&g, &a.one());
        let x2 = a.mul(&x, &x);
        assert!(!GroupAlgebra::is_zero(&x2));
        assert!(GroupAlgebra::is_zero(&a.mul(&x2, &x)));
        let mp = a.minpoly_in(&x, &a.one());
        assert_eq!(mp, Poly::new(vec![0, 0, 0, 1]));
        assert!(a.class_sums().iter().all(|c| a.is_central(c)));
    }
}
