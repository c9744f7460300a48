use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BrauerError;

/// Multiplicity of the exceptional vertex: a positive integer or ∞ (serialized "inf").
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Multiplicity::Finite(m) => Some(*m),
            Multiplicity::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(m) => s.serialize_u64(*m),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(0) => Err(serde::de::Error::custom("multiplicity must be positive")),
            Raw::N(m) => Ok(Multiplicity::Finite(m)),
            Raw::S(s) if s == "inf" => Ok(Multiplicity::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad multiplicity {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    /// A ρ-orbit.
    Rho,
    /// A σ-orbit.
    Sigma,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub kind: VertexKind,
    /// γ_v as edge indices, rotated to its lexicographically least rotation.
    pub cyclic_order: Vec<usize>,
}

/// ρ and σ as permutations of edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePermutations {
    pub rho: Vec<usize>,
    pub sigma: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerTree {
    pub edges: Vec<String>,
    pub vertices: Vec<Vertex>,
    /// Edge index -> (ρ-vertex, σ-vertex).
    pub adjacency: Vec<(usize, usize)>,
    pub exceptional: Option<usize>,
    pub multiplicity: Multiplicity,
}

fn least_rotation(v: &[usize]) -> Vec<usize> {
    (0..v.len().max(1))
        .map(|r| v[r..].iter().chain(&v[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

impl BrauerTree {
    /// Builds a tree from ρ- and σ-cycles. `exceptional` names a vertex by
    /// (kind, any edge in its cycle). Vertices are canonically ordered.
    pub fn from_cycles(
        edges: Vec<String>,
        rho_cycles: Vec<Vec<usize>>,
        sigma_cycles: Vec<Vec<usize>>,
        exceptional: Option<(VertexKind, usize)>,
        multiplicity: Multiplicity,
    ) -> Result<Self, BrauerError> {
        let mut vs: Vec<(Vec<usize>, VertexKind)> = rho_cycles
            .into_iter()
            .map(|c| (least_rotation(&c), VertexKind::Rho))
            .chain(sigma_cycles.into_iter().map(|c| (least_rotation(&c), VertexKind::Sigma)))
            .collect();
        vs.sort();
        let n = edges.len();
        let mut adjacency = vec![(usize::MAX, usize::MAX); n];
        for (id, (cyc, kind)) in vs.iter().enumerate() {
            for &e in cyc {
                if e >= n {
                    return Err(BrauerError::TreeInvariant(format!("edge {e} out of range")));
                }
                let slot = match kind {
                    VertexKind::Rho => &mut adjacency[e].0,
                    VertexKind::Sigma => &mut adjacency[e].1,
                };
                if *slot != usize::MAX {
                    return Err(BrauerError::TreeInvariant(format!("edge {e} appears twice in {kind:?} cycles")));
                }
                *slot = id;
            }
        }
        let exceptional = match exceptional {
            None => None,
            Some((kind, e)) => Some(
                vs.iter()
                    .position(|(c, k)| *k == kind && c.contains(&e))
                    .ok_or_else(|| BrauerError::TreeInvariant("exceptional vertex not found".into()))?,
            ),
        };
        let vertices = vs.into_iter().enumerate().map(|(id, (cyclic_order, kind))| Vertex { id, kind, cyclic_order }).collect();
        let t = BrauerTree { edges, vertices, adjacency, exceptional, multiplicity };
        t.validate()?;
        Ok(t)
    }

    /// Star with n edges S1..Sn cyclically ordered around the exceptional centre.
    pub fn star(n: usize, multiplicity: Multiplicity) -> Self {
        let edges = (1..=n).map(|i| format!("S{i}")).collect();
        BrauerTree::from_cycles(
            edges,
            vec![(0..n).collect()],
            (0..n).map(|i| vec![i]).collect(),
            Some((VertexKind::Rho, 0)),
            multiplicity,
        )
        .expect("star is a tree")
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn valency(&self, v: usize) -> usize {
        self.vertices[v].cyclic_order.len()
    }

    /// γ_v(e).
    pub fn gamma(&self, v: usize, e: usize) -> usize {
        let c = &self.vertices[v].cyclic_order;
        let i = c.iter().position(|&x| x == e).expect("edge at vertex");
        c[(i + 1) % c.len()]
    }

    pub fn permutations(&self) -> TreePermutations {
        TreePermutations {
            rho: (0..self.num_edges()).map(|e| self.gamma(self.adjacency[e].0, e)).collect(),
            sigma: (0..self.num_edges()).map(|e| self.gamma(self.adjacency[e].1, e)).collect(),
        }
    }

    /// Tree shape checks: vertex count, connectivity, each edge on one ρ- and one σ-vertex.
    pub fn validate(&self) -> Result<(), BrauerError> {
        let n = self.num_edges();
        if n == 0 {
            return Err(BrauerError::TreeInvariant("no edges".into()));
        }
        if self.vertices.len() != n + 1 {
            return Err(BrauerError::TreeInvariant(format!("{} vertices for {n} edges", self.vertices.len())));
        }
        for (e, &(a, b)) in self.adjacency.iter().enumerate() {
            if a >= self.vertices.len() || b >= self.vertices.len() {
                return Err(BrauerError::TreeInvariant(format!("edge {e} is not on two vertices")));
            }
            if self.vertices[a].kind != VertexKind::Rho || self.vertices[b].kind != VertexKind::Sigma {
                return Err(BrauerError::TreeInvariant(format!("edge {e} joins vertices of the same kind")));
            }
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(a, b) in &self.adjacency {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(BrauerError::TreeInvariant("not connected".into()));
        }
        if let (Some(_), Multiplicity::Finite(0)) = (self.exceptional, self.multiplicity) {
            return Err(BrauerError::TreeInvariant("zero multiplicity".into()));
        }
        Ok(())
    }

    /// m · |edges| = |D| − 1 when an exceptional vertex is flagged.
    pub fn check_multiplicity(&self, defect_order: u64) -> bool {
        match (self.exceptional, self.multiplicity) {
            (Some(_), Multiplicity::Finite(m)) => m * self.num_edges() as u64 == defect_order - 1,
            (Some(_), Multiplicity::Infinite) => false,
            (None, Multiplicity::Finite(1)) => defect_order - 1 == self.num_edges() as u64,
            (None, _) => false,
        }
    }

    pub fn is_star(&self) -> Result<bool, BrauerError> {
        let c = self.exceptional.ok_or(BrauerError::NoExceptional)?;
        Ok(self.adjacency.iter().all(|&(a, b)| a == c || b == c))
    }

    /// Equality ignoring multiplicity and which side is called ρ.
    pub fn same_shape(&self, o: &BrauerTree) -> bool {
        let key = |t: &BrauerTree| {
            let mut v: Vec<&Vec<usize>> = t.vertices.iter().map(|x| &x.cyclic_order).collect();
            v.sort();
            (t.num_edges(), v.into_iter().cloned().collect::<Vec<_>>(), t.exceptional.map(|e| t.vertices[e].cyclic_order.clone()))
        };
        key(self) == key(o)
    }

    /// The same tree with edge e renamed to perm[e].
    pub fn relabel(&self, perm: &[usize]) -> Result<BrauerTree, BrauerError> {
        let mut edges = vec![String::new(); self.num_edges()];
        for (e, &t) in perm.iter().enumerate() {
            edges[t] = self.edges[e].clone();
        }
        let cycles = |kind| -> Vec<Vec<usize>> {
            self.vertices
                .iter()
                .filter(|v| v.kind == kind)
                .map(|v| v.cyclic_order.iter().map(|&e| perm[e]).collect())
                .collect()
        };
        let exc = self.exceptional.map(|v| (self.vertices[v].kind, perm[self.vertices[v].cyclic_order[0]]));
        BrauerTree::from_cycles(edges, cycles(VertexKind::Rho), cycles(VertexKind::Sigma), exc, self.multiplicity)
    }

    pub fn with_multiplicity(&self, m: Multiplicity) -> BrauerTree {
        BrauerTree { multiplicity: m, ..self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("tree serializes")
    }

    /// DOT rendering; the exceptional vertex is filled black.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph brauer_tree {\n  node [shape=circle, label=\"\", width=0.25];\n");
        for v in &self.vertices {
            if Some(v.id) == self.exceptional {
                let _ = writeln!(s, "  v{} [style=filled, fillcolor=black, xlabel=\"m={}\"];", v.id, self.multiplicity);
            } else {
                let _ = writeln!(s, "  v{};", v.id);
            }
        }
        for (e, &(a, b)) in self.adjacency.iter().enumerate() {
            let _ = writeln!(s, "  v{a} -- v{b} [label=\"{}\"];", self.edges[e]);
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(exc: Option<(VertexKind, usize)>) -> BrauerTree {
        // v0 -S0- v1 -S1- v2 with middle vertex the σ-orbit {S0, S1}
        BrauerTree::from_cycles(
            vec!["S0".into(), "S1".into()],
            vec![vec![0], vec![1]],
            vec![vec![1, 0]],
            exc,
            Multiplicity::Finite(2),
        )
        .unwrap()
    }

    #[test]
    fn star_examples() {
        let t = BrauerTree::star(1, Multiplicity::Finite(8));
        assert!(t.is_star().unwrap());
        assert!(t.check_multiplicity(9));
        assert!(path(Some((VertexKind::Sigma, 0))).is_star().unwrap());
        assert!(!path(Some((VertexKind::Rho, 0))).is_star().unwrap());
        assert_eq!(path(None).is_star(), Err(BrauerError::NoExceptional));
    }

    #[test]
    fn canonical_rotation_and_permutations() {
        let t = path(None);
        let mid = t.vertices.iter().find(|v| v.kind == VertexKind::Sigma).unwrap();
        assert_eq!(mid.cyclic_order, vec![0, 1]);
        let p = t.permutations();
        assert_eq!(p.rho, vec![0, 1]);
        assert_eq!(p.sigma, vec![1, 0]);
        let s = BrauerTree::star(3, Multiplicity::Infinite);
        assert_eq!(s.permutations().rho, vec![1, 2, 0]);
        let r = s.relabel(&[1, 2, 0]).unwrap();
        assert!(r.same_shape(&s));
    }

    #[test]
    fn invalid_trees() {
        // two ρ-cycles sharing an edge
        assert!(BrauerTree::from_cycles(vec!["a".into()], vec![vec![0], vec![0]], vec![vec![0]], None, Multiplicity::Finite(1)).is_err());
        // a cycle: 2 edges, 2 vertices
        assert!(BrauerTree::from_cycles(vec!["a".into(), "b".into()], vec![vec![0, 1]], vec![vec![0, 1]], None, Multiplicity::Finite(1)).is_err());
    }

    #[test]
    fn json_round_trip_and_dot() {
        let t = BrauerTree::star(3, Multiplicity::Infinite);
        let j = t.to_json();
        assert_eq!(j["multiplicity"], "inf");
        let back: BrauerTree = serde_json::from_value(j).unwrap();
        assert_eq!(back, t);
        let dot = t.to_dot();
        assert_eq!(dot.matches("fillcolor=black").count(), 1);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
