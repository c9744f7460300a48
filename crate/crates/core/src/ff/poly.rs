use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{prime_factors, Elem, FField};
use super::FfError;

/// Univariate polynomial over a finite field, coefficients low degree first.
/// Always trimmed: the leading coefficient is nonzero, the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Elem>,
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by degree, then by coefficients from the top.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn one() -> Self {
        Poly { c: vec![1] }
    }

    pub fn x() -> Self {
        Poly { c: vec![0, 1] }
    }

    pub fn constant(a: Elem) -> Self {
        Poly::new(vec![a])
    }

    /// x - a
    pub fn linear(a: Elem, f: &FField) -> Self {
        Poly::new(vec![f.neg(a), 1])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree, with -infinity mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly, f: &FField) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly, f: &FField) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, a: Elem, f: &FField) -> Poly {
        Poly::new(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn mul(&self, o: &Poly, f: &FField) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = f.mul_add(r[i + j], a, b);
            }
        }
        Poly::new(r)
    }

    pub fn divrem(&self, d: &Poly, f: &FField) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(d.leading()).unwrap();
        let mut r = self.c.clone();
        let dl = d.c.len() - 1;
        let mut q = vec![0; r.len() - dl];
        for k in (dl..r.len()).rev() {
            let c = f.mul(r[k], inv);
            if c == 0 {
                continue;
            }
            q[k - dl] = c;
            let nc = f.neg(c);
            for (i, &di) in d.c.iter().enumerate() {
                r[k - dl + i] = f.mul_add(r[k - dl + i], nc, di);
            }
        }
        r.truncate(dl);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: &FField) -> Poly {
        self.divrem(d, f).1
    }

    pub fn monic(&self, f: &FField) -> Poly {
        match f.inv(self.leading()) {
            Some(inv) => self.scale(inv, f),
            None => Poly::zero(),
        }
    }

    pub fn gcd(a: &Poly, b: &Poly, f: &FField) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
    pub fn xgcd(a: &Poly, b: &Poly, f: &FField) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.leading()) {
            Some(inv) => (r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Poly, f: &FField) -> Option<Poly> {
        let (g, s, _) = Poly::xgcd(self, m, f);
        g.is_one().then(|| s.rem(m, f))
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly, f: &FField) -> Poly {
        self.mul(o, f).rem(m, f)
    }

    pub fn powmod(&self, mut e: u64, m: &Poly, f: &FField) -> Poly {
        let mut base = self.rem(m, f);
        let mut acc = Poly::one().rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m, f);
            }
            base = base.mulmod(&base, m, f);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, f: &FField) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| f.mul(a, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: Elem, f: &FField) -> Elem {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn pow(&self, e: usize, f: &FField) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, f))
    }

    /// Rabin's test over the field `f`.
    pub fn is_irreducible(&self, f: &FField) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let g = self.monic(f);
        let x = Poly::x();
        let q = f.q();
        let frob = |k: usize| -> Poly {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.powmod(q, &g, f);
            }
            h
        };
        if frob(n).sub(&x, f).rem(&g, f) != Poly::zero() {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let h = frob(n / r as usize).sub(&x, f);
            Poly::gcd(&g, &h, f).is_one()
        })
    }

    pub fn display(&self, f: &FField) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let coef = f.format_elem(a);
            let coef = if coef.contains('+') { format!("({coef})") } else { coef };
            terms.push(match (i, a) {
                (0, _) => coef,
                (1, 1) => "x".into(),
                (1, _) => format!("{coef}x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{coef}x^{i}"),
            });
        }
        terms.join(" + ")
    }
}

/// Squarefree decomposition followed by splitting of each squarefree part into
/// irreducibles (distinct-degree, then Cantor–Zassenhaus equal-degree).
///
/// Returns monic irreducible factors with multiplicities, sorted; a nonzero
/// constant has no factors.
pub fn factor_squarefree(g: &Poly, f: &FField) -> Result<Vec<(Poly, usize)>, FfError> {
    if g.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let g = g.monic(f);
    let mut out = Vec::new();
    for (part, mult) in squarefree_parts(&g, f) {
        for (h, d) in distinct_degree(&part, f) {
            for irr in equal_degree(&h, d, f) {
                out.push((irr, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Pairs (squarefree coprime part, multiplicity) whose product of powers is `g`.
pub fn squarefree_parts(g: &Poly, f: &FField) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if g.deg() == 0 {
        return out;
    }
    let p = f.p() as usize;
    let dg = g.derivative(f);
    let mut c = Poly::gcd(g, &dg, f);
    let mut w = g.divrem(&c, f).0;
    let mut i = 1;
    while !w.is_one() {
        let y = Poly::gcd(&w, &c, f);
        let fac = w.divrem(&y, f).0;
        if fac.deg() > 0 {
            out.push((fac.monic(f), i));
        }
        w = y;
        c = c.divrem(&w, f).0;
        i += 1;
    }
    if c.deg() > 0 {
        // c is a polynomial in x^p
        let root = Poly::new(
            c.coeffs()
                .iter()
                .step_by(p)
                .map(|&a| f.pth_root(a))
                .collect(),
        );
        for (h, k) in squarefree_parts(&root, f) {
            out.push((h, k * p));
        }
    }
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (h, k) in out {
        match merged.iter_mut().find(|(_, m)| *m == k) {
            Some(slot) => slot.0 = slot.0.mul(&h, f),
            None => merged.push((h, k)),
        }
    }
    merged
}

fn distinct_degree(g: &Poly, f: &FField) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let x = Poly::x();
    let mut h = x.rem(&rest, f);
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.powmod(f.q(), &rest, f);
        let d = Poly::gcd(&rest, &h.sub(&x, f), f);
        if !d.is_one() {
            rest = rest.divrem(&d, f).0;
            h = h.rem(&rest, f);
            out.push((d, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest.monic(f), d));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, f: &FField) -> Vec<Poly> {
    let n = g.deg();
    if n == d {
        return vec![g.monic(f)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (n as u64) << 8 ^ d as u64);
    let q = f.q();
    loop {
        let a = Poly::new((0..n).map(|_| f.random(&mut rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            // a^((q^d - 1)/2) = (prod_i a^(q^i))^((q-1)/2)
            let mut t = Poly::one();
            let mut fr = a.clone();
            for _ in 0..d {
                t = t.mulmod(&fr, g, f);
                fr = fr.powmod(q, g, f);
            }
            t.powmod((q - 1) / 2, g, f).sub(&Poly::one(), f)
        } else {
            let steps = f.degree() as usize * d;
            let mut t = Poly::zero();
            let mut sq = a.rem(g, f);
            for _ in 0..steps {
                t = t.add(&sq, f);
                sq = sq.mulmod(&sq, g, f);
            }
            t
        };
        let h = Poly::gcd(g, &b, f);
        if h.deg() > 0 && h.deg() < n {
            let other = g.divrem(&h, f).0;
            let mut out = equal_degree(&h, d, f);
            out.extend(equal_degree(&other, d, f));
            return out;
        }
    }
}

/// CRT idempotents for pairwise coprime moduli: u_i = 1 mod m_i, 0 mod m_j (j != i).
pub fn crt_idempotents(moduli: &[Poly], f: &FField) -> Vec<Poly> {
    let total = moduli.iter().fold(Poly::one(), |acc, m| acc.mul(m, f));
    moduli
        .iter()
        .map(|m| {
            let others = total.divrem(m, f).0;
            let inv = others.inv_mod(m, f).expect("moduli must be coprime");
            others.mul(&inv, f).rem(&total, f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64], f: &FField) -> Poly {
        Poly::new(c.iter().map(|&a| f.from_int(a)).collect())
    }

    fn reassemble(fs: &[(Poly, usize)], f: &FField) -> Poly {
        fs.iter().fold(Poly::one(), |acc, (h, k)| acc.mul(&h.pow(*k, f), f))
    }

    #[test]
    fn factor_x2_minus_1_over_f5() {
        let f = FField::prime(5).unwrap();
        let fs = factor_squarefree(&p(&[-1, 0, 1], &f), &f).unwrap();
        let mut expect = vec![(p(&[-1, 1], &f), 1), (p(&[1, 1], &f), 1)];
        expect.sort();
        assert_eq!(fs, expect);
    }

    #[test]
    fn factor_x2_over_f3() {
        let f = FField::prime(3).unwrap();
        let fs = factor_squarefree(&p(&[0, 0, 1], &f), &f).unwrap();
        assert_eq!(fs, vec![(Poly::x(), 2)]);
    }

    #[test]
    fn factor_x3_minus_x_over_f3() {
        let f = FField::prime(3).unwrap();
        let fs = factor_squarefree(&p(&[0, -1, 0, 1], &f), &f).unwrap();
        let expect = vec![(Poly::x(), 1), (p(&[-1, 1], &f), 1), (p(&[1, 1], &f), 1)];
        assert_eq!(fs, {
            let mut e = expect;
            e.sort();
            e
        });
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let f = FField::prime(3).unwrap();
        assert!(factor_squarefree(&Poly::zero(), &f).is_err());
    }

    #[test]
    fn inseparable_powers() {
        // (x^3 - x - 1)^3 * (x+1)^4 over F_3: derivative-free part exercised.
        let f = FField::prime(3).unwrap();
        let a = p(&[-1, -1, 0, 1], &f);
        let b = p(&[1, 1], &f);
        let g = a.pow(3, &f).mul(&b.pow(4, &f), &f);
        let fs = factor_squarefree(&g, &f).unwrap();
        assert_eq!(reassemble(&fs, &f), g);
        assert!(fs.contains(&(a.clone(), 3)));
        assert!(fs.contains(&(b.clone(), 4)));
    }

    #[test]
    fn cyclotomic_splits_over_splitting_field() {
        // x^37 - 1 splits into linear factors over GF(2^36)
        let f = FField::new(2, 36).unwrap();
        let mut c = vec![0; 38];
        c[0] = 1;
        c[37] = 1;
        let fs = factor_squarefree(&Poly::new(c), &f).unwrap();
        assert_eq!(fs.len(), 37);
        assert!(fs.iter().all(|(h, k)| h.deg() == 1 && *k == 1));
    }

    #[test]
    fn extension_field_factoring() {
        let f = FField::new(3, 2).unwrap();
        // x^8 - 1 splits completely over F_9
        let mut c = vec![0; 9];
        c[0] = f.neg(1);
        c[8] = 1;
        let g = Poly::new(c);
        let fs = factor_squarefree(&g, &f).unwrap();
        assert_eq!(fs.len(), 8);
        assert_eq!(reassemble(&fs, &f), g);
    }

    #[test]
    fn crt() {
        let f = FField::prime(7).unwrap();
        let ms = vec![p(&[-1, 1], &f).pow(2, &f), p(&[1, 1], &f), p(&[3, 0, 1], &f)];
        let us = crt_idempotents(&ms, &f);
        for (i, u) in us.iter().enumerate() {
            for (j, m) in ms.iter().enumerate() {
                let r = u.rem(m, &f);
                assert_eq!(r, if i == j { Poly::one() } else { Poly::zero() });
            }
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn factors_reassemble(coeffs in proptest::collection::vec(0u64..9, 2..14), which in 0usize..3) {
            let f = [FField::prime(3).unwrap(), FField::new(3, 2).unwrap(), FField::new(2, 3).unwrap()][which].clone();
            let g = Poly::new(coeffs.iter().map(|&c| c % f.q()).collect());
            proptest::prop_assume!(g.deg() >= 1);
            let fs = factor_squarefree(&g, &f).unwrap();
            proptest::prop_assert_eq!(reassemble(&fs, &f), g.monic(&f));
            for (h, _) in &fs {
                proptest::prop_assert!(h.is_irreducible(&f));
            }
        }
    }

    #[test]
    fn irreducibility() {
        let f = FField::prime(2).unwrap();
        assert!(p(&[1, 1, 1], &f).is_irreducible(&f));
        assert!(!p(&[1, 0, 1], &f).is_irreducible(&f));
        assert!(p(&[1, 1, 0, 0, 1], &f).is_irreducible(&f));
    }
}
