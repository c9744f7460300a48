use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::GroupError;

/// Default bound on the order of groups built from generators.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// A finite group given by its multiplication table.
///
/// Element 0 is the identity. `gens` generate the group and drive every
/// module construction (action matrices are stored per generator).
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    labels: Vec<String>,
    name: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking the group axioms.
    /// Associativity is checked exhaustively up to order 64 and on a
    /// deterministic sample of triples above that.
    pub fn from_table(
        order: usize,
        mul: Vec<u32>,
        gens: Vec<usize>,
        labels: Vec<String>,
        name: impl Into<String>,
    ) -> Result<Self, GroupError> {
        if order == 0 || mul.len() != order * order || mul.iter().any(|&x| x as usize >= order) {
            return Err(GroupError::BadTable("table shape".into()));
        }
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(GroupError::BadTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            let mut seen = vec![false; order];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(GroupError::BadTable("row is not a permutation".into()));
                }
            }
            inv[a] = row.iter().position(|&x| x == 0).unwrap() as u32;
        }
        let g = FiniteGroup {
            order,
            mul,
            inv,
            gens,
            labels: if labels.len() == order { labels } else { (0..order).map(|i| i.to_string()).collect() },
            name: name.into(),
        };
        let check = |a: usize, b: usize, c: usize| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
        if order <= 64 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !check(a, b, c) {
                            return Err(GroupError::BadTable("not associative".into()));
                        }
                    }
                }
            }
        } else {
            let mut s: u64 = 0x9e3779b97f4a7c15;
            for _ in 0..20_000 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                let (a, b, c) = ((s % order as u64) as usize, ((s >> 20) % order as u64) as usize, ((s >> 40) % order as u64) as usize);
                if !check(a, b, c) {
                    return Err(GroupError::BadTable("not associative".into()));
                }
            }
        }
        if g.generated_by(&g.gens).len() != order {
            return Err(GroupError::BadTable("generators do not generate the group".into()));
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            inv: vec![0],
            gens: vec![],
            labels: vec!["e".into()],
            name: "1".into(),
        }
    }

    /// The group generated by permutations of {0, .., degree-1} (image vectors),
    /// with elements enumerated breadth-first from the identity.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_permutations_capped(degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(GroupError::BadPermutation(format!("{g:?}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..degree).map(|i| a[b[i]]).collect() };
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let x = compose(&elems[i], g);
                if !index.contains_key(&x) {
                    if elems.len() >= cap {
                        return Err(GroupError::OrderCapExceeded(cap));
                    }
                    index.insert(x.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(x);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
            }
        }
        let mut gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).filter(|&i| i != 0).collect();
        gen_idx.dedup();
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(n, mul, gen_idx, labels, format!("perm({degree})"))
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        FiniteGroup::from_table(
            n,
            mul,
            if n > 1 { vec![1] } else { vec![] },
            (0..n).map(|i| i.to_string()).collect(),
            format!("C{n}"),
        )
        .expect("cyclic table")
    }

    /// C_n ⋊ C_k where the generator of C_k acts on C_n by multiplication by `action`.
    /// Element (x, y) has index x + n*y.
    pub fn semidirect_cyclic(n: usize, k: usize, action: usize) -> Result<Self, GroupError> {
        if n == 0 || k == 0 {
            return Err(GroupError::BadSemidirect("orders must be positive".into()));
        }
        let a = action % n.max(1);
        let mut powers = vec![1 % n];
        for _ in 1..=k {
            let last = *powers.last().unwrap();
            powers.push(last * a % n);
        }
        if powers[k] != 1 % n || gcd(a, n) != 1 {
            return Err(GroupError::BadSemidirect(format!("{action} does not have order dividing {k} modulo {n}")));
        }
        let order = n * k;
        let mut mul = vec![0u32; order * order];
        for i in 0..order {
            let (x1, y1) = (i % n, i / n);
            for j in 0..order {
                let (x2, y2) = (j % n, j / n);
                let x = (x1 + powers[y1] * x2) % n;
                let y = (y1 + y2) % k;
                mul[i * order + j] = (x + n * y) as u32;
            }
        }
        let mut gens = Vec::new();
        if n > 1 {
            gens.push(1);
        }
        if k > 1 {
            gens.push(n);
        }
        let labels = (0..order).map(|i| format!("({},{})", i % n, i / n)).collect();
        Self::from_table(order, mul, gens, labels, format!("C{n}:C{k}[{a}]"))
    }

    /// Dihedral group of order 2n.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        let g = Self::semidirect_cyclic(n, 2, n.saturating_sub(1).max(1))?;
        Ok(g.renamed(format!("D{}", 2 * n)))
    }

    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        if n >= 3 {
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Ok(Self::from_permutations(n, &gens)?.renamed(format!("S{n}")))
    }

    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|j| {
                let mut c: Vec<usize> = (0..n).collect();
                c[0] = 1;
                c[1] = j;
                c[j] = 0;
                c
            })
            .collect();
        Ok(Self::from_permutations(n, &gens)?.renamed(format!("A{n}")))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// g x g^-1
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut cls = vec![x];
            class_of[x] = id;
            let mut i = 0;
            while i < cls.len() {
                let y = cls[i];
                for &g in &self.gens {
                    let z = self.conj(g, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        cls.push(z);
                    }
                }
                i += 1;
            }
            cls.sort_unstable();
            classes.push(cls);
        }
        classes
    }

    /// Write each element as a word in the generators: returns for every
    /// element its BFS parent and the generator index used (right multiplication).
    pub fn cayley_tree(&self) -> Vec<Option<(usize, usize)>> {
        let mut parent = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    /// BFS order of the Cayley tree (identity first).
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for &g in &self.gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
            i += 1;
        }
        order
    }

    /// Checks that `map` (indexed by elements of `self`) is a homomorphism onto `target`.
    pub fn is_surjective_hom(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        if map.len() != self.order || map.iter().any(|&x| x >= target.order) || map[0] != 0 {
            return false;
        }
        let mut hit = vec![false; target.order];
        for &x in map {
            hit[x] = true;
        }
        if hit.iter().any(|&h| !h) {
            return false;
        }
        (0..self.order).all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Largest power of p dividing n.
pub fn p_part(n: usize, p: usize) -> usize {
    let mut k = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        k *= p;
    }
    k
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Converts 1-based cycle lists into a 0-based image vector on `degree` points.
pub fn perm_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>, GroupError> {
    let mut img: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    for c in cycles {
        for &x in c {
            if x == 0 || x > degree || std::mem::replace(&mut used[x - 1], true) {
                return Err(GroupError::BadPermutation(format!("{cycles:?}")));
            }
        }
        for (i, &x) in c.iter().enumerate() {
            img[x - 1] = c[(i + 1) % c.len()] - 1;
        }
    }
    Ok(img)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_examples() {
        let c3 = FiniteGroup::from_permutations(3, &[perm_from_cycles(3, &[vec![1, 2, 3]]).unwrap()]).unwrap();
        assert_eq!(c3.order(), 3);
        let s3 = FiniteGroup::from_permutations(
            3,
            &[perm_from_cycles(3, &[vec![1, 2]]).unwrap(), perm_from_cycles(3, &[vec![1, 2, 3]]).unwrap()],
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::from_permutations(4, &[]).unwrap().order(), 1);
    }

    #[test]
    fn order_cap() {
        let s6 = FiniteGroup::symmetric(6);
        assert!(matches!(s6, Err(GroupError::OrderCapExceeded(512))));
        assert!(FiniteGroup::from_permutations_capped(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], 10).is_err());
    }

    #[test]
    fn conjugacy_class_examples() {
        let z = FiniteGroup::cyclic(9);
        assert_eq!(z.conjugacy_classes().len(), 9);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(FiniteGroup::trivial().conjugacy_classes(), vec![vec![0]]);
    }

    #[test]
    fn standard_families() {
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroup::dihedral(2).unwrap().exponent(), 2);
        assert_eq!(FiniteGroup::alternating(4).unwrap().order(), 12);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        let g = FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert!(FiniteGroup::semidirect_cyclic(7, 3, 3).is_err());
    }

    #[test]
    fn bad_tables_rejected() {
        // not associative: a "group" on 3 elements with a broken row
        let mul = vec![0, 1, 2, 1, 0, 2, 2, 2, 0];
        assert!(FiniteGroup::from_table(3, mul, vec![1, 2], vec![], "bad").is_err());
    }
}
