use super::field::{Elem, FField};

/// A subspace of F^n held as a reduced row echelon basis.
///
/// Pivot entries of every basis row are 1 and every other row is zero in
/// that column, so coordinates of a member vector are read directly off
/// its pivot entries and the non-pivot entries of a reduced vector are its
/// coordinates in the quotient F^n / W.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: FField,
    ambient: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn new(field: &FField, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: vec![], pivots: vec![] }
    }

    pub fn full(field: &FField, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field: field.clone(), ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn from_vectors<I>(field: &FField, ambient: usize, vs: I) -> Self
    where
        I: IntoIterator<Item = Vec<Elem>>,
    {
        let mut s = Self::new(field, ambient);
        for v in vs {
            s.insert(v);
            if s.dim() == ambient {
                break;
            }
        }
        s
    }

    pub fn field(&self) -> &FField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut mark = vec![false; self.ambient];
        for &p in &self.pivots {
            mark[p] = true;
        }
        (0..self.ambient).filter(|&c| !mark[c]).collect()
    }

    /// v minus its projection along the basis; zero iff v lies in the span.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in r[pc..].iter_mut().zip(&row[pc..]) {
                *x = f.mul_add(*x, nc, y);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|&a| a == 0)
    }

    /// Adds v to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Elem>) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(&v);
        let Some(pc) = r.iter().position(|&a| a != 0) else {
            return false;
        };
        let inv = f.inv(r[pc]).unwrap();
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in row.iter_mut().zip(&r) {
                *x = f.mul_add(*x, nc, y);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, r);
        true
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, v: &[Elem]) -> Vec<Elem> {
        debug_assert!(self.contains(v));
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    /// Coordinates of the image of v in F^n / W, indexed by the non-pivot columns.
    pub fn quotient_coords(&self, v: &[Elem], non_pivots: &[usize]) -> Vec<Elem> {
        let r = self.reduce(v);
        non_pivots.iter().map(|&c| r[c]).collect()
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.ambient];
        for (row, &c) in self.rows.iter().zip(coords) {
            if c == 0 {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(row) {
                *x = f.mul_add(*x, c, y);
            }
        }
        out
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &o.rows {
            s.insert(v.clone());
        }
        s
    }

    /// Zassenhaus intersection.
    pub fn intersection(&self, o: &Subspace) -> Subspace {
        let n = self.ambient;
        let f = &self.field;
        let mut z = Subspace::new(f, 2 * n);
        for v in &self.rows {
            let mut w = v.clone();
            w.extend_from_slice(v);
            z.insert(w);
        }
        for v in &o.rows {
            let mut w = v.clone();
            w.extend(std::iter::repeat(0).take(n));
            z.insert(w);
        }
        Subspace::from_vectors(
            f,
            n,
            z.rows
                .iter()
                .zip(&z.pivots)
                .filter(|(_, &p)| p >= n)
                .map(|(r, _)| r[n..].to_vec()),
        )
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.rows.iter().all(|v| o.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_coordinates() {
        let f = FField::prime(5).unwrap();
        let mut s = Subspace::new(&f, 3);
        assert!(s.insert(vec![1, 2, 3]));
        assert!(s.insert(vec![0, 1, 1]));
        assert!(!s.insert(vec![1, 3, 4]));
        assert_eq!(s.dim(), 2);
        let v = s.combine(&[2, 3]);
        assert!(s.contains(&v));
        assert_eq!(s.combine(&s.coords(&v)), v);
    }

    #[test]
    fn intersection_and_sum() {
        let f = FField::prime(3).unwrap();
        let a = Subspace::from_vectors(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(&f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 2, 0]));
        assert!(a.sum(&b).is_full());
    }
}
