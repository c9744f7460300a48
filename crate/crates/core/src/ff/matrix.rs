use std::fmt;

use super::field::{Elem, FField};
use super::poly::Poly;
use super::subspace::Subspace;
use super::FfError;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FFMatrix {
    field: FField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FFMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FFMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&a| self.field.format_elem(a)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl FFMatrix {
    pub fn zeros(field: &FField, rows: usize, cols: usize) -> Self {
        FFMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_data(field: &FField, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        debug_assert!(data.iter().all(|&a| a < field.q()));
        FFMatrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &FField, rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        FFMatrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &FField, n: usize, cols: &[Vec<Elem>]) -> Self {
        let mut m = Self::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    /// Integer entries reduced into the prime subfield.
    pub fn from_ints(field: &FField, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Elem>> =
            rows.iter().map(|r| r.iter().map(|&a| field.from_int(a)).collect()).collect();
        Self::from_rows(field, &rows)
    }

    pub fn field(&self) -> &FField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == (r == c) as Elem))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, o: &FFMatrix) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * o.cols..(i + 1) * o.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &o.data[k * o.cols..(k + 1) * o.cols];
                for (x, &b) in orow.iter_mut().zip(brow) {
                    *x = f.mul_add(*x, a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn add(&self, o: &FFMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        FFMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &FFMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FFMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        FFMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// self += s * o
    pub fn add_scaled(&mut self, s: Elem, o: &FFMatrix) {
        if s == 0 {
            return;
        }
        let f = self.field.clone();
        for (x, &b) in self.data.iter_mut().zip(&o.data) {
            *x = f.mul_add(*x, s, b);
        }
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    m.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.data[r * cols + c]).unwrap();
            for j in c..cols {
                m.data[r * cols + j] = f.mul(m.data[r * cols + j], inv);
            }
            let prow: Vec<Elem> = m.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let a = m.data[i * cols + c];
                if a == 0 {
                    continue;
                }
                let na = f.neg(a);
                for j in c..cols {
                    m.data[i * cols + j] = f.mul_add(m.data[i * cols + j], na, prow[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(matrix.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Subspace spanned by the columns.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_vectors(&self.field, self.rows, (0..self.cols).map(|c| self.column(c)))
    }

    pub fn inverse(&self) -> Option<FFMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let r = aug.rref();
        if r.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || r.rank < n {
            return None;
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.matrix.get(i, n + j);
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> FFMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// p(M) by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> FFMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(&self.field, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = self.field.add(acc.data[idx], c);
            }
        }
        acc
    }

    /// Monic least-degree polynomial annihilating M.
    ///
    /// Computed as the lcm of the local minimal polynomials of standard basis
    /// vectors not already inside the sum of earlier Krylov spaces; that sum is
    /// annihilated by the running lcm, so the result annihilates everything.
    pub fn minpoly(&self) -> Result<Poly, FfError> {
        if !self.is_square() {
            return Err(FfError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut seen = Subspace::new(f, n);
        let mut acc = Poly::one();
        for i in 0..n {
            if seen.dim() == n {
                break;
            }
            let mut e = vec![0; n];
            e[i] = 1;
            if seen.contains(&e) {
                continue;
            }
            let (local, krylov) = self.local_minpoly(&e);
            for v in krylov {
                seen.insert(v);
            }
            let g = Poly::gcd(&acc, &local, f);
            acc = acc.mul(&local, f).divrem(&g, f).0.monic(f);
        }
        Ok(acc)
    }

    /// Minimal polynomial of M relative to v, with the Krylov vectors used.
    pub fn local_minpoly(&self, v: &[Elem]) -> (Poly, Vec<Vec<Elem>>) {
        let f = &self.field;
        let n = self.rows;
        // reduced rows with their pivot and the polynomial expressing them
        let mut basis: Vec<(usize, Vec<Elem>, Poly)> = Vec::new();
        let mut krylov = Vec::new();
        let mut w = v.to_vec();
        let mut k = 0;
        loop {
            krylov.push(w.clone());
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
                for (x, &y) in r.iter_mut().zip(row) {
                    *x = f.mul_add(*x, nc, y);
                }
                poly = poly.sub(&rp.scale(c, f), f);
            }
            match r.iter().position(|&a| a != 0) {
                None => return (poly.monic(f), krylov),
                Some(pc) => {
                    let inv = f.inv(r[pc]).unwrap();
                    let r: Vec<Elem> = r.iter().map(|&a| f.mul(a, inv)).collect();
                    basis.push((pc, r, poly.scale(inv, f)));
                }
            }
            w = self.mul_vec(&w);
            k += 1;
            debug_assert!(k <= n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_identity_and_zero() {
        let f = FField::prime(3).unwrap();
        let id = FFMatrix::identity(&f, 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
        let z = FFMatrix::zeros(&f, 3, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let f = FField::prime(5).unwrap();
        let m = FFMatrix::from_ints(&f, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, FFMatrix::from_ints(&f, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn nullspace_examples() {
        let f = FField::prime(5).unwrap();
        assert!(FFMatrix::identity(&f, 3).nullspace().is_empty());
        assert_eq!(FFMatrix::zeros(&f, 2, 2).nullspace().len(), 2);
        let m = FFMatrix::from_ints(&f, &[&[1, 2], &[2, 4]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        // spans (2, -1): proportional check
        let v = &ns[0];
        assert_eq!(f.mul(v[0], f.from_int(-1)), f.mul(v[1], 2));
        assert!(m.mul_vec(v).iter().all(|&a| a == 0));
    }

    #[test]
    fn minpoly_examples() {
        let f = FField::prime(3).unwrap();
        assert_eq!(FFMatrix::identity(&f, 4).minpoly().unwrap(), Poly::linear(1, &f));
        let f2 = FField::prime(2).unwrap();
        let j2 = FFMatrix::from_ints(&f2, &[&[0, 1], &[0, 0]]);
        assert_eq!(j2.minpoly().unwrap(), Poly::new(vec![0, 0, 1]));
        // companion matrix of x^2 + 1
        let c = FFMatrix::from_ints(&f, &[&[0, -1], &[1, 0]]);
        assert_eq!(c.minpoly().unwrap(), Poly::new(vec![1, 0, 1]));
        assert!(FFMatrix::zeros(&f, 2, 3).minpoly().is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FField::new(2, 3).unwrap();
        let m = FFMatrix::from_rows(&f, &[vec![1, 3], vec![5, 7]]);
        if let Some(inv) = m.inverse() {
            assert!(m.mul(&inv).is_identity());
        } else {
            assert!(!m.is_invertible());
        }
    }

    fn arb_matrix() -> impl Strategy<Value = FFMatrix> {
        (prop_oneof![Just((2u64, 1u32)), Just((3, 1)), Just((5, 1)), Just((7, 1)), Just((2, 2)), Just((2, 3)), Just((3, 2))],
         1usize..30, 1usize..30, any::<u64>())
            .prop_map(|((p, m), r, c, seed)| {
                use rand::SeedableRng;
                let f = FField::new(p, m).unwrap();
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                // low-rank bias: sometimes zero entire rows
                let data = (0..r * c)
                    .map(|i| if (i / c) % 3 == 2 && seed % 2 == 0 { 0 } else { f.random(&mut rng) })
                    .collect();
                FFMatrix::from_data(&f, r, c, data)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let r = m.rref();
            prop_assert!(r.rank <= m.rows().min(m.cols()));
            prop_assert_eq!(r.rank + m.nullspace().len(), m.cols());
            for v in m.nullspace() {
                prop_assert!(m.mul_vec(&v).iter().all(|&a| a == 0));
            }
        }

        #[test]
        fn rref_idempotent(m in arb_matrix()) {
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
        }

        #[test]
        fn minpoly_annihilates(m in arb_matrix()) {
            let n = m.rows().min(m.cols()).min(12);
            let sq = FFMatrix::from_data(m.field(), n, n, (0..n*n).map(|i| m.data()[i % m.data().len()]).collect());
            let mp = sq.minpoly().unwrap();
            prop_assert!(sq.eval_poly(&mp).is_zero());
            prop_assert_eq!(mp.leading(), 1);
            prop_assert!(mp.deg() <= n);
        }
    }
}
