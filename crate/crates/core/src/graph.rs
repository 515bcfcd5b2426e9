//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is held as one bit row per vertex so that neighbourhood
//! intersections against a candidate label-2 set cost a handful of word
//! operations. Graphs are immutable once built; use [`GraphBuilder`] or
//! [`Graph::from_edges`] to construct one.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
}

/// Simple undirected graph. Invariants: rows are symmetric and irreflexive.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<BitSet>,
    names: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Counts of connected components by order: exactly 1, exactly 2, at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ComponentProfile {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
}

impl ComponentProfile {
    pub fn single_component(n: usize) -> Self {
        match n {
            0 => Self::default(),
            1 => Self { k1: 1, k2: 0, k3: 0 },
            2 => Self { k1: 0, k2: 1, k3: 0 },
            _ => Self { k1: 0, k2: 0, k3: 1 },
        }
    }

    pub fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> Self {
        sizes.into_iter().fold(Self::default(), |mut p, s| {
            match s {
                0 => {}
                1 => p.k1 += 1,
                2 => p.k2 += 1,
                _ => p.k3 += 1,
            }
            p
        })
    }

    pub fn count(&self) -> usize {
        self.k1 + self.k2 + self.k3
    }
}

impl std::ops::Add for ComponentProfile {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            k1: self.k1 + rhs.k1,
            k2: self.k2 + rhs.k2,
            k3: self.k3 + rhs.k3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Each part sorted ascending; parts ordered by least member.
    pub parts: Vec<Vec<usize>>,
    pub profile: ComponentProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    /// `Some(k)` iff every vertex has degree `k`.
    pub regular: Option<usize>,
}

/// A proper 2-colouring; `side[u]` is 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side: Vec<u8>,
}

impl Bipartition {
    pub fn part(&self, s: u8) -> Vec<usize> {
        (0..self.side.len()).filter(|&u| self.side[u] == s).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialVertices {
    pub universal: Vec<usize>,
    /// Classes of vertices with identical open neighbourhoods (singletons included),
    /// ordered by least member.
    pub false_twin_classes: Vec<Vec<usize>>,
}

/// Accumulates edges for a graph of fixed order.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    rows: Vec<BitSet>,
    names: Option<Vec<String>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            rows: (0..n).map(|_| BitSet::new(n)).collect(),
            names: None,
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Adds `u-v`. Re-adding an existing edge is a no-op; use
    /// [`GraphBuilder::try_add_edge`] to reject duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.rows[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn names(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != self.n() {
            return Err(GraphError::NameCount {
                expected: self.n(),
                got: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn build(self) -> Graph {
        Graph {
            rows: self.rows,
            names: self.names,
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.try_add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 1..n {
            b.add_edge(u - 1, u);
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            b.add_edge(u, (u + 1) % n);
        }
        b.build()
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = GraphBuilder::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g.build()
    }

    pub fn star(leaves: usize) -> Self {
        Self::complete_bipartite(1, leaves)
    }

    pub fn petersen() -> Self {
        let mut b = GraphBuilder::new(10);
        for i in 0..5 {
            b.add_edge(i, (i + 1) % 5);
            b.add_edge(i, i + 5);
            b.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        b.build()
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n1 = self.n();
        let mut b = GraphBuilder::new(n1 + other.n());
        for (u, v) in self.edges() {
            b.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            b.add_edge(n1 + u, n1 + v);
        }
        b.build()
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let n1 = self.n();
        let mut b = GraphBuilder::new(n1 + other.n());
        for (u, v) in self.edges().chain(other.edges().map(|(u, v)| (u + n1, v + n1))) {
            b.add_edge(u, v);
        }
        for u in 0..n1 {
            for v in 0..other.n() {
                b.add_edge(u, n1 + v);
            }
        }
        b.build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, u: usize) -> String {
        match &self.names {
            Some(names) => names[u].clone(),
            None => u.to_string(),
        }
    }

    /// Open neighbourhood of `u` as a bit row.
    #[inline]
    pub fn row(&self, u: usize) -> &BitSet {
        &self.rows[u]
    }

    pub fn closed_row(&self, u: usize) -> BitSet {
        let mut r = self.rows[u].clone();
        r.insert(u);
        r
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[u].iter()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let rows = (0..n)
            .map(|u| {
                let mut r = BitSet::full(n);
                r.remove(u);
                for v in self.rows[u].iter() {
                    r.remove(v);
                }
                r
            })
            .collect();
        Graph {
            rows,
            names: self.names.clone(),
        }
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j);
                }
            }
        }
        b.build()
    }

    pub fn components(&self) -> Components {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut part = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        part.push(v);
                        queue.push_back(v);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        let profile = ComponentProfile::from_sizes(parts.iter().map(Vec::len));
        Components { parts, profile }
    }

    pub fn is_connected(&self) -> bool {
        self.components().parts.len() <= 1
    }

    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        let degs = (0..self.n()).map(|u| self.degree(u));
        let (min_degree, max_degree) = degs
            .fold(None, |acc: Option<(usize, usize)>, d| match acc {
                None => Some((d, d)),
                Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
            })
            .ok_or(GraphError::EmptyGraph)?;
        Ok(DegreeStats {
            min_degree,
            max_degree,
            regular: (min_degree == max_degree).then_some(min_degree),
        })
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn is_bipartite(&self) -> Option<Bipartition> {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(Bipartition { side })
    }

    /// Split recognition from the degree sequence, followed by an explicit
    /// check of the candidate partition.
    pub fn is_split(&self) -> Option<SplitPartition> {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.degree(b).cmp(&self.degree(a)).then(a.cmp(&b)));
        let degs: Vec<usize> = order.iter().map(|&u| self.degree(u)).collect();
        // m = max { i : d_i >= i - 1 } with 1-based i
        let m = (1..=n).filter(|&i| degs[i - 1] + 1 >= i).max().unwrap_or(0);
        let head: usize = degs[..m].iter().sum();
        let tail: usize = degs[m..].iter().sum();
        if head != m * m.saturating_sub(1) + tail {
            return None;
        }
        let mut clique = order[..m].to_vec();
        let mut independent = order[m..].to_vec();
        clique.sort_unstable();
        independent.sort_unstable();
        let part = SplitPartition { clique, independent };
        self.verify_split(&part).then_some(part)
    }

    pub fn verify_split(&self, part: &SplitPartition) -> bool {
        let mut seen = vec![false; self.n()];
        for &u in part.clique.iter().chain(&part.independent) {
            if u >= self.n() || std::mem::replace(&mut seen[u], true) {
                return false;
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        let pairwise = |vs: &[usize], want: bool| {
            vs.iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v) == want))
        };
        pairwise(&part.clique, true) && pairwise(&part.independent, false)
    }

    pub fn special_vertices(&self) -> SpecialVertices {
        let n = self.n();
        let universal = (0..n).filter(|&u| self.degree(u) + 1 == n).collect();
        let mut classes: BTreeMap<&[u64], Vec<usize>> = BTreeMap::new();
        for u in 0..n {
            classes.entry(self.rows[u].words()).or_default().push(u);
        }
        let mut false_twin_classes: Vec<Vec<usize>> = classes.into_values().collect();
        false_twin_classes.sort_by_key(|c| c[0]);
        SpecialVertices {
            universal,
            false_twin_classes,
        }
    }

    pub fn are_false_twins(&self, u: usize, v: usize) -> bool {
        u != v && !self.has_edge(u, v) && self.rows[u] == self.rows[v]
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            names: self.names.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let mut b = GraphBuilder::new(raw.n);
        for [u, v] in raw.edges {
            b.try_add_edge(u, v).map_err(serde::de::Error::custom)?;
        }
        if let Some(names) = raw.names {
            b = b.names(names).map_err(serde::de::Error::custom)?;
        }
        Ok(b.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn p3_plus_k1() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        // a-b-c-d complements to b-d-a-c
        let p4 = Graph::path(4);
        let expected = Graph::from_edges(4, &[(1, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(p4.complement(), expected);
        // C5 complement is the pentagram, again a 5-cycle
        let c5c = Graph::cycle(5).complement();
        assert_eq!(c5c.degree_stats().unwrap().regular, Some(2));
        assert!(c5c.is_connected());
        assert_eq!(c5c.m(), 5);
    }

    #[test]
    fn component_examples() {
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let c = two_k2.components();
        assert_eq!(c.parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(c.profile, ComponentProfile { k1: 0, k2: 2, k3: 0 });

        let c = p3_plus_k1().components();
        assert_eq!(c.parts.len(), 2);
        assert_eq!(c.profile, ComponentProfile { k1: 1, k2: 0, k3: 1 });

        let c = Graph::complete(4).components();
        assert_eq!(c.parts.len(), 1);
        assert_eq!(c.profile, ComponentProfile { k1: 0, k2: 0, k3: 1 });
    }

    #[test]
    fn degree_stat_examples() {
        let s = Graph::complete(4).degree_stats().unwrap();
        assert_eq!((s.min_degree, s.max_degree, s.regular), (3, 3, Some(3)));
        let s = Graph::star(4).degree_stats().unwrap();
        assert_eq!((s.min_degree, s.max_degree, s.regular), (1, 4, None));
        let s = Graph::petersen().degree_stats().unwrap();
        assert_eq!((s.min_degree, s.max_degree, s.regular), (3, 3, Some(3)));
        assert_eq!(Graph::empty(0).degree_stats(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn bipartite_examples() {
        let b = Graph::cycle(4).is_bipartite().unwrap();
        assert_eq!(b.part(0), vec![0, 2]);
        assert_eq!(b.part(1), vec![1, 3]);
        assert!(Graph::complete(3).is_bipartite().is_none());
    }

    #[test]
    fn split_examples() {
        assert!(Graph::cycle(4).is_split().is_none());
        let p = Graph::empty(1).is_split().unwrap();
        assert_eq!(p.clique, vec![0]);
        assert!(p.independent.is_empty());
        assert!(Graph::empty(0).is_split().is_some());
    }

    #[test]
    fn special_vertex_examples() {
        let sv = Graph::star(3).special_vertices();
        assert_eq!(sv.universal, vec![0]);
        assert_eq!(sv.false_twin_classes, vec![vec![0], vec![1, 2, 3]]);

        let sv = Graph::cycle(4).special_vertices();
        assert!(sv.universal.is_empty());
        assert_eq!(sv.false_twin_classes, vec![vec![0, 2], vec![1, 3]]);
        assert!(Graph::cycle(4).are_false_twins(0, 2));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn json_round_trip_keeps_names() {
        let g = GraphBuilder::new(3)
            .names(vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let mut g = g;
        g.add_edge(0, 2);
        let g = g.build();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"n":3,"edges":[[0,2]],"names":["a","b","c"]}"#);
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    fn exhaustive_split(g: &Graph) -> bool {
        let n = g.n();
        (0u32..1 << n).any(|mask| {
            let clique: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 1).collect();
            let independent: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 0).collect();
            g.verify_split(&SplitPartition { clique, independent })
        })
    }

    proptest! {
        #[test]
        fn complement_is_involution(g in arb_graph(14)) {
            let c = g.complement();
            prop_assert_eq!(c.complement(), g.clone());
            for u in 0..g.n() {
                prop_assert_eq!(g.degree(u) + c.degree(u), g.n() - 1);
            }
        }

        #[test]
        fn split_matches_exhaustive(g in arb_graph(10)) {
            let found = g.is_split();
            prop_assert_eq!(found.is_some(), exhaustive_split(&g));
            if let Some(p) = found {
                prop_assert!(g.verify_split(&p));
            }
        }

        #[test]
        fn bipartition_is_proper(g in arb_graph(14)) {
            if let Some(b) = g.is_bipartite() {
                for (u, v) in g.edges() {
                    prop_assert_ne!(b.side[u], b.side[v]);
                }
            }
        }

        #[test]
        fn profile_accounts_for_every_vertex(g in arb_graph(14)) {
            let c = g.components();
            let big: usize = c.parts.iter().map(Vec::len).filter(|&s| s >= 3).sum();
            prop_assert_eq!(c.profile.k1 + 2 * c.profile.k2 + big, g.n());
            prop_assert_eq!(c.profile.count(), c.parts.len());
        }
    }
}
