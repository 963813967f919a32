//! Labeled simple graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Adjacency is stored as one bitmask row per vertex. Vertex subsets
//! throughout the crate are `u32` masks over the same index space.

use std::fmt;
use std::str::FromStr;

use crate::error::GraphError;

/// Largest supported vertex count. Catalog graphs stay well below this
/// (a perfect matching on 12 edges has 24 vertices).
pub const MAX_VERTICES: usize = 32;

/// Vertex subset of a graph, bit `i` set when vertex `i` is a member.
pub type VertexSet = u32;

#[inline]
pub(crate) fn full_set(n: usize) -> VertexSet {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the members of a vertex set in increasing order.
pub(crate) fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph on {n} vertices exceeds the cap");
        Graph { n, adj: vec![0; n] }
    }

    /// The null graph (no vertices).
    pub fn null() -> Self {
        Graph::empty(0)
    }

    pub fn try_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut g = Graph { n, adj: vec![0; n] };
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Panics on loops, repeated edges or out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::try_from_edges(n, edges).expect("invalid edge list")
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in members(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Sorted (descending) degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|a| **a == 0).count()
    }

    pub fn has_isolated(&self) -> bool {
        self.adj.contains(&0)
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen: VertexSet = 0;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let comp = self.reach(v, full_set(self.n));
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Number of components, k(G). The null graph has none.
    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Vertices reachable from `start` inside `within`.
    pub(crate) fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut comp: VertexSet = 1 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for u in members(frontier) {
                next |= self.adj[u];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Whether `set` induces a connected subgraph. The empty set does not.
    pub fn induces_connected(&self, set: VertexSet) -> bool {
        if set == 0 {
            return false;
        }
        self.reach(set.trailing_zeros() as usize, set) == set
    }

    /// G[X], vertices renumbered in increasing order of their original index.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let verts: Vec<usize> = members(set).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            let mut row = 0u32;
            for w in members(self.adj[v] & set) {
                row |= 1 << pos[w];
            }
            g.adj[i] = row;
        }
        g
    }

    /// Disjoint union of the induced subgraphs on each block.
    pub fn partition_image(&self, blocks: &[VertexSet]) -> Graph {
        let mut out = Graph::null();
        for &b in blocks {
            out = out.disjoint_union(&self.induced(b));
        }
        out
    }

    /// Edge-subgraph G[E]: its vertex set is the set of endpoints of `edges`.
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> Graph {
        let mut used: VertexSet = 0;
        for &(u, v) in edges {
            used |= 1 << u | 1 << v;
        }
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, v) in members(used).enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(used.count_ones() as usize);
        for &(u, v) in edges {
            g.add_edge(pos[u], pos[v]);
        }
        g
    }

    /// The core: this graph with its isolated vertices removed.
    pub fn strip_isolated(&self) -> Graph {
        let keep = self
            .adj
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0)
            .fold(0u32, |acc, (v, _)| acc | 1 << v);
        if keep == full_set(self.n) {
            return self.clone();
        }
        self.induced(keep)
    }

    /// Adds `count` isolated vertices.
    pub fn with_isolated(&self, count: usize) -> Graph {
        self.disjoint_union(&Graph::empty(count))
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        assert!(n <= MAX_VERTICES, "disjoint union exceeds the vertex cap");
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|a| a << self.n));
        Graph { n, adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            let mut row = 0u32;
            for w in members(self.adj[u]) {
                row |= 1 << perm[w];
            }
            g.adj[perm[u]] = row;
        }
        g
    }

    /// Path P_n on `n` vertices.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle C_n, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut g = Graph::path(n);
        g.add_edge(0, n - 1);
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Star K_{1,m}; vertex 0 is the centre.
    pub fn star(m: usize) -> Graph {
        let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
        Graph::from_edges(m + 1, &edges)
    }

    /// Perfect matching mK_2.
    pub fn matching(m: usize) -> Graph {
        let edges: Vec<_> = (0..m).map(|i| (2 * i, 2 * i + 1)).collect();
        Graph::from_edges(2 * m, &edges)
    }

    /// `count` disjoint copies of this graph.
    pub fn times(&self, count: usize) -> Graph {
        (0..count).fold(Graph::null(), |acc, _| acc.disjoint_union(self))
    }

    /// Human-readable edge list, `n=<int>; <u>-<v>,...`.
    pub fn to_edge_list(&self) -> String {
        let body: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("n={}; {}", self.n, body.join(","))
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let text = text.trim();
        let bad = || GraphError::EdgeListSyntax(text.to_string());
        let rest = text.strip_prefix("n=").ok_or_else(bad)?;
        let (n_part, edge_part) = match rest.split_once(';') {
            Some((a, b)) => (a, b),
            None => (rest, ""),
        };
        let n: usize = n_part.trim().parse().map_err(|_| bad())?;
        let mut edges = Vec::new();
        for item in edge_part.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (u, v) = item.split_once('-').ok_or_else(bad)?;
            let u: usize = u.trim().parse().map_err(|_| bad())?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            edges.push((u, v));
        }
        Graph::try_from_edges(n, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_edge_list())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    /// Accepts either the edge-list form or graph6.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with("n=") {
            Graph::parse_edge_list(s)
        } else {
            crate::graph6::parse_graph6(s).map_err(GraphError::from)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_invariants() {
        let g = Graph::path(4).disjoint_union(&Graph::complete(3)).with_isolated(2);
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.component_count(), 4);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.min_degree(), 0);
        assert_eq!(g.isolated_count(), 2);
    }

    #[test]
    fn strip_isolated_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(k2.with_isolated(2).strip_isolated(), k2);
        let k3 = Graph::complete(3);
        assert_eq!(k3.strip_isolated(), k3);
        assert_eq!(Graph::empty(5).strip_isolated(), Graph::null());
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert_eq!(Graph::try_from_edges(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::try_from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(0, 1))
        );
        assert!(matches!(
            Graph::try_from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(5);
        let text = g.to_edge_list();
        assert_eq!(text, "n=5; 0-1,0-4,1-2,2-3,3-4");
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        assert_eq!(Graph::parse_edge_list("n=3;").unwrap(), Graph::empty(3));
        assert!(Graph::parse_edge_list("n=3; 0-x").is_err());
        assert_eq!("n=2; 0-1".parse::<Graph>().unwrap(), "A_".parse::<Graph>().unwrap());
    }

    #[test]
    fn induced_and_edge_subgraphs() {
        let p4 = Graph::path(4);
        assert_eq!(p4.induced(0b1011).edge_count(), 1);
        let sub = p4.edge_subgraph(&[(0, 1), (2, 3)]);
        assert_eq!(sub, Graph::matching(2));
        assert!(p4.induces_connected(0b0111));
        assert!(!p4.induces_connected(0b0101));
    }
}
