use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::poly::Poly;
use super::FfError;

/// A field element, packed as the integer `sum c_i p^i` of its coefficients
/// in the polynomial basis `1, z, z^2, ...` modulo the defining polynomial.
pub type Elem = u64;

const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 512;

enum Arith {
    Prime,
    Tables {
        log: Vec<u32>,
        exp: Vec<u32>,
        add: Option<Vec<u32>>,
        neg: Vec<u32>,
    },
    Generic,
}

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    /// Monic defining polynomial over F_p, low degree first, length m + 1.
    modulus: Vec<u64>,
    arith: Arith,
}

/// The finite field F_{p^m}.
///
/// Cheap to clone; all clones share the same arithmetic tables.
#[derive(Clone)]
pub struct FField {
    inner: Arc<Inner>,
}

impl PartialEq for FField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FField {}

impl fmt::Debug for FField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.m)
    }
}

impl fmt::Display for FField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.m)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n` without multiplicity, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FField {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self, FfError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FfError::NotPrime(p));
        }
        Ok(FField {
            inner: Arc::new(Inner {
                p,
                m: 1,
                q: p,
                modulus: vec![0, 1],
                arith: Arith::Prime,
            }),
        })
    }

    /// F_{p^m} defined by the lexicographically least monic irreducible
    /// polynomial of degree m over F_p (coefficients compared from the
    /// highest non-leading one down).
    pub fn new(p: u64, m: u32) -> Result<Self, FfError> {
        let base = Self::prime(p)?;
        if m == 0 {
            return Err(FfError::BadDegree(m));
        }
        if m == 1 {
            return Ok(base);
        }
        let q = checked_pow(p, m).ok_or(FfError::TooLarge { p, m })?;
        if q >= 1 << 62 {
            return Err(FfError::TooLarge { p, m });
        }
        let modulus = least_irreducible(&base, m);
        Self::with_modulus(p, modulus)
    }

    /// F_{p^m} with an explicit monic modulus (low degree first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FfError> {
        let base = Self::prime(p)?;
        let m = modulus.len().saturating_sub(1) as u32;
        if m == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FfError::BadModulus);
        }
        if m == 1 {
            return Ok(base);
        }
        if !Poly::new(modulus.clone()).is_irreducible(&base) {
            return Err(FfError::BadModulus);
        }
        let q = checked_pow(p, m).ok_or(FfError::TooLarge { p, m })?;
        let mut field = FField {
            inner: Arc::new(Inner {
                p,
                m,
                q,
                modulus,
                arith: Arith::Generic,
            }),
        };
        if q <= TABLE_LIMIT {
            let arith = field.build_tables();
            let inner = Arc::get_mut(&mut field.inner).expect("fresh field");
            inner.arith = arith;
        }
        Ok(field)
    }

    fn build_tables(&self) -> Arith {
        let q = self.q();
        let order = q - 1;
        let factors = prime_factors(order);
        let gen = (2..q)
            .find(|&g| factors.iter().all(|&r| self.generic_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x: Elem = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u32;
            log[x as usize] = i as u32;
            x = self.generic_mul(x, gen);
        }
        let neg = (0..q).map(|a| self.generic_neg(a) as u32).collect();
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    t.push(self.generic_add(a, b) as u32);
                }
            }
            t
        });
        Arith::Tables { log, exp, add, neg }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.inner.p as i64) as Elem
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.inner.q)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(1..self.inner.q)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.arith {
            Arith::Prime => {
                let s = a + b;
                if s >= self.inner.p {
                    s - self.inner.p
                } else {
                    s
                }
            }
            Arith::Tables { add: Some(t), .. } => t[(a * self.inner.q + b) as usize] as Elem,
            _ => self.generic_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.inner.arith {
            Arith::Prime => {
                if a == 0 {
                    0
                } else {
                    self.inner.p - a
                }
            }
            Arith::Tables { neg, .. } => neg[a as usize] as Elem,
            Arith::Generic => self.generic_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.arith {
            Arith::Prime => a * b % self.inner.p,
            Arith::Tables { log, exp, .. } => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let n = exp.len();
                let s = log[a as usize] as usize + log[b as usize] as usize;
                exp[if s >= n { s - n } else { s }] as Elem
            }
            Arith::Generic => self.generic_mul(a, b),
        }
    }

    /// a + b * c
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        if b == 0 || c == 0 {
            return a;
        }
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        Some(match &self.inner.arith {
            Arith::Prime => mod_pow(a, self.inner.p - 2, self.inner.p),
            Arith::Tables { log, exp, .. } => {
                let n = exp.len();
                let l = log[a as usize] as usize;
                exp[(n - l) % n] as Elem
            }
            Arith::Generic => self.generic_pow(a, self.inner.q - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The unique b with b^p = a.
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.pow(a, self.inner.q / self.inner.p)
    }

    /// Coefficients of `a` over F_p, low degree first.
    pub fn digits(&self, mut a: Elem) -> Vec<u64> {
        let p = self.inner.p;
        (0..self.inner.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Elem {
        let p = self.inner.p;
        digits.iter().rev().fold(0, |acc, &d| acc * p + d % p)
    }

    pub fn format_elem(&self, a: Elem) -> String {
        if self.inner.m == 1 {
            return a.to_string();
        }
        let terms: Vec<String> = self
            .digits(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| match (i, d) {
                (0, d) => d.to_string(),
                (1, 1) => "z".into(),
                (1, d) => format!("{d}z"),
                (i, 1) => format!("z^{i}"),
                (i, d) => format!("{d}z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn generic_add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    fn generic_neg(&self, a: Elem) -> Elem {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    fn generic_mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.inner.m as usize;
        let p = self.inner.p;
        let md = &self.inner.modulus;
        if p == 2 {
            let mut prod: u128 = 0;
            let mut bb = b as u128;
            let mut aa = a as u128;
            while bb != 0 {
                if bb & 1 == 1 {
                    prod ^= aa;
                }
                aa <<= 1;
                bb >>= 1;
            }
            let modbits: u128 = md
                .iter()
                .enumerate()
                .fold(0u128, |acc, (i, &c)| acc | ((c as u128) << i));
            for k in (m..2 * m).rev() {
                if prod >> k & 1 == 1 {
                    prod ^= modbits << (k - m);
                }
            }
            return prod as Elem;
        }
        let mut da = [0u64; 64];
        let mut db = [0u64; 64];
        let (mut x, mut y) = (a, b);
        for i in 0..m {
            da[i] = x % p;
            x /= p;
            db[i] = y % p;
            y /= p;
        }
        let mut r = [0u64; 128];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                r[i + j] = (r[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                r[k - m + i] = (r[k - m + i] + (p - c) * md[i]) % p;
            }
            r[k] = 0;
        }
        r[..m].iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn generic_pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.generic_mul(acc, base);
            }
            base = self.generic_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.checked_mul(p)?;
    }
    Some(q)
}

fn mod_pow(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    acc
}

fn least_irreducible(base: &FField, m: u32) -> Vec<u64> {
    let p = base.p();
    let mut t: u64 = 0;
    loop {
        let mut c = Vec::with_capacity(m as usize + 1);
        let mut x = t;
        for _ in 0..m {
            c.push(x % p);
            x /= p;
        }
        c.push(1);
        let f = Poly::new(c.clone());
        if c[0] != 0 && f.is_irreducible(base) {
            return c;
        }
        t += 1;
    }
}

/// Multiplicative order of `a` modulo `n` (gcd(a, n) = 1, n >= 1).
pub fn multiplicative_order(a: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FField) {
        let q = f.q();
        let sample: Vec<Elem> = if q <= 64 { (0..q).collect() } else { (0..q).step_by((q / 37) as usize).collect() };
        for &a in &sample {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for &b in &sample {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in sample.iter().take(5) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn prime_and_extension_axioms() {
        for (p, m) in [(2, 1), (3, 1), (7, 1), (2, 2), (3, 2), (7, 2), (2, 5), (3, 3), (5, 4)] {
            check_axioms(&FField::new(p, m).unwrap());
        }
    }

    #[test]
    fn table_and_generic_paths_agree() {
        let f = FField::new(3, 4).unwrap();
        for a in (0..81).step_by(7) {
            for b in 0..81 {
                assert_eq!(f.mul(a, b), f.generic_mul(a, b));
                assert_eq!(f.add(a, b), f.generic_add(a, b));
            }
        }
    }

    #[test]
    fn large_fields_use_generic_arithmetic() {
        for (p, m) in [(2, 20), (3, 11), (7, 10), (2, 36)] {
            let f = FField::new(p, m).unwrap();
            let a = f.q() / 3 + 5;
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.pow(a, f.q() - 1), 1);
            assert_eq!(f.pow(f.pth_root(a), p), a);
        }
    }

    #[test]
    fn modulus_is_lexicographically_least() {
        // x^2 + 1 is irreducible over F_7 and F_3, x^2 + x + 1 over F_2.
        assert_eq!(FField::new(7, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        // x^3 + x + 1 over F_2
        assert_eq!(FField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FField::prime(9).is_err());
        assert!(FField::new(5, 0).is_err());
        assert!(FField::with_modulus(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(7, 3), 1);
        assert_eq!(multiplicative_order(2, 37), 36);
        assert_eq!(multiplicative_order(3, 13), 3);
    }
}
