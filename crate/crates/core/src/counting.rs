//! Exact subgraph counters: `q` (edge-subgraphs), `p` (induced subgraphs),
//! `ω` (connected-partition images) and `k` (isomorphic components).

use std::collections::BTreeMap;

use crate::error::CountError;
use crate::graph::{Graph, VertexSet};
use crate::iso::{canonical_form, CanonicalCert};

/// Multiset of isomorphism classes, keyed by certificate.
pub type Census = BTreeMap<CanonicalCert, u64>;

fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
}

fn subset_edges(edges: &[(usize, usize)], mask: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(edges[m.trailing_zeros() as usize]);
        m &= m - 1;
    }
    out
}

/// Classes of edge-subgraphs of `g` over every non-empty edge subset.
/// Edge-subgraphs never carry isolated vertices.
pub fn edge_subgraph_census(g: &Graph) -> Census {
    let edges = edge_list(g);
    assert!(edges.len() < 64);
    let mut census = Census::new();
    for mask in 1u64..(1u64 << edges.len()) {
        let sub = g.edge_subgraph(&subset_edges(&edges, mask));
        *census.entry(canonical_form(&sub).cert).or_default() += 1;
    }
    census
}

/// Gosper's hack over `k`-subsets of `0..n`.
fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if k == 0 { Some(0) } else if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(cur)
    })
}

/// `q(h, g)`: number of edge subsets `E` of `g` with `g[E] ≅ h`.
pub fn count_edge_subgraphs(h: &Graph, g: &Graph) -> Result<u64, CountError> {
    if h.has_isolated() {
        return Err(CountError::IsolatedVertex);
    }
    let k = h.edge_count();
    let edges = edge_list(g);
    if k > edges.len() {
        return Ok(0);
    }
    let target_cert = canonical_form(h).cert;
    let target_degrees = h.degree_sequence();
    let mut count = 0;
    let mut deg = vec![0usize; g.n()];
    for mask in k_subsets(edges.len(), k) {
        let chosen = subset_edges(&edges, mask);
        deg.iter_mut().for_each(|d| *d = 0);
        for &(u, v) in &chosen {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut seq: Vec<usize> = deg.iter().copied().filter(|&d| d > 0).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        if seq != target_degrees {
            continue;
        }
        if canonical_form(&g.edge_subgraph(&chosen)).cert == target_cert {
            count += 1;
        }
    }
    Ok(count)
}

/// Reference variant of [`count_edge_subgraphs`] without the degree
/// pruning: every subset is canonicalized.
pub fn count_edge_subgraphs_unpruned(h: &Graph, g: &Graph) -> Result<u64, CountError> {
    if h.has_isolated() {
        return Err(CountError::IsolatedVertex);
    }
    let target = canonical_form(h).cert;
    let edges = edge_list(g);
    if h.edge_count() == 0 {
        return Ok(1);
    }
    Ok((1u64..(1u64 << edges.len()))
        .filter(|&m| canonical_form(&g.edge_subgraph(&subset_edges(&edges, m))).cert == target)
        .count() as u64)
}

/// Classes of induced subgraphs over every non-empty vertex subset.
pub fn induced_census(g: &Graph) -> Census {
    let mut census = Census::new();
    for set in 1..=crate::graph::full_set(g.n()) {
        *census.entry(canonical_form(&g.induced(set)).cert).or_default() += 1;
    }
    census
}

/// `p(h, g)`: number of vertex subsets `X` with `g[X] ≅ h`.
pub fn count_induced_subgraphs(h: &Graph, g: &Graph) -> u64 {
    let k = h.n();
    if k > g.n() {
        return 0;
    }
    let target = canonical_form(h).cert;
    let target_edges = h.edge_count();
    k_subsets(g.n(), k)
        .map(|m| m as VertexSet)
        .filter(|&set| {
            let sub = g.induced(set);
            sub.edge_count() == target_edges && canonical_form(&sub).cert == target
        })
        .count() as u64
}

/// A connected partition `π ⊢_c U` of a vertex subset `U` of a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialConnectedPartition {
    /// Blocks, ordered by smallest member.
    pub blocks: Vec<VertexSet>,
}

impl PartialConnectedPartition {
    /// The covered vertex set `U`.
    pub fn domain(&self) -> VertexSet {
        self.blocks.iter().fold(0, |a, b| a | b)
    }

    pub fn image(&self, host: &Graph) -> PartitionImage {
        PartitionImage { image: host.partition_image(&self.blocks), partition: self.clone() }
    }
}

/// `host[π]`: disjoint union of the blocks' induced subgraphs.
#[derive(Clone, Debug)]
pub struct PartitionImage {
    pub partition: PartialConnectedPartition,
    pub image: Graph,
}

/// Which pairs `(π, U)` to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionScope {
    /// `U = V(g)`.
    Spanning,
    /// Every `U ⊆ V(g)`, including the empty set.
    All,
    /// Every `U`, blocks of size at least two only (images without
    /// isolated vertices).
    Cores,
}

/// Connected vertex sets containing `v` inside `allowed`, each once.
fn connected_sets_containing(g: &Graph, v: usize, allowed: VertexSet) -> Vec<VertexSet> {
    fn grow(
        g: &Graph,
        allowed: VertexSet,
        set: VertexSet,
        mut frontier: VertexSet,
        mut excluded: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        out.push(set);
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= !(1 << w);
            let grown = set | 1 << w;
            let next = (frontier | g.neighbors(w)) & allowed & !grown & !excluded;
            grow(g, allowed, grown, next, excluded, out);
            excluded |= 1 << w;
        }
    }
    let mut out = Vec::new();
    let start: VertexSet = 1 << v;
    grow(g, allowed, start, g.neighbors(v) & allowed & !start, start, &mut out);
    out
}

/// Calls `visit` with the blocks of every connected partition in `scope`.
/// Each pair `(π, U)` is produced exactly once.
pub fn visit_connected_partitions(g: &Graph, scope: PartitionScope, mut visit: impl FnMut(&[VertexSet])) {
    fn rec(
        g: &Graph,
        scope: PartitionScope,
        undecided: VertexSet,
        blocks: &mut Vec<VertexSet>,
        visit: &mut dyn FnMut(&[VertexSet]),
    ) {
        if undecided == 0 {
            visit(blocks);
            return;
        }
        let v = undecided.trailing_zeros() as usize;
        if scope != PartitionScope::Spanning {
            rec(g, scope, undecided & !(1 << v), blocks, visit);
        }
        let min_size = if scope == PartitionScope::Cores { 2 } else { 1 };
        for block in connected_sets_containing(g, v, undecided) {
            if (block.count_ones() as usize) < min_size {
                continue;
            }
            blocks.push(block);
            rec(g, scope, undecided & !block, blocks, visit);
            blocks.pop();
        }
    }
    let mut blocks = Vec::new();
    rec(g, scope, crate::graph::full_set(g.n()), &mut blocks, &mut visit);
}

pub fn connected_partitions(g: &Graph, scope: PartitionScope) -> Vec<PartialConnectedPartition> {
    let mut out = Vec::new();
    visit_connected_partitions(g, scope, |b| out.push(PartialConnectedPartition { blocks: b.to_vec() }));
    out
}

/// Classes of the cores of partition images: for every collection of
/// disjoint connected blocks of size at least two (including the empty
/// collection, whose image is the null graph).
pub fn partition_core_census(g: &Graph) -> Census {
    let mut census = Census::new();
    visit_connected_partitions(g, PartitionScope::Cores, |blocks| {
        let image = g.partition_image(blocks);
        *census.entry(canonical_form(&image).cert).or_default() += 1;
    });
    census
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `ω(h, g)`: number of pairs `(π, U)`, `U ⊆ V(g)`, `π ⊢_c U`, with
/// `g[π] ≅ h`. Singleton blocks are the isolated vertices of the image, so
/// the count factors as (core images matching the core of `h`) times the
/// ways to pick the isolated vertices among the remaining vertices.
pub fn count_omega(h: &Graph, g: &Graph) -> u64 {
    let core = h.strip_isolated();
    if core.n() > g.n() {
        return 0;
    }
    let cores = count_core_images(&core, g);
    cores * binomial(g.n() - core.n(), h.isolated_count())
}

/// Core-based `ω`: collections of disjoint connected blocks of size at
/// least two whose image is isomorphic to `core` (which must have no
/// isolated vertices). Equals `ω(core, g)`.
pub fn count_core_images(core: &Graph, g: &Graph) -> u64 {
    debug_assert!(!core.has_isolated());
    let target = canonical_form(core).cert;
    let (vt, kt) = (core.n() as u32, core.component_count());
    let mut count = 0;
    visit_connected_partitions(g, PartitionScope::Cores, |blocks| {
        if blocks.len() != kt || blocks.iter().map(|b| b.count_ones()).sum::<u32>() != vt {
            return;
        }
        if canonical_form(&g.partition_image(blocks)).cert == target {
            count += 1;
        }
    });
    count
}

/// `k(h, g)`: number of components of `g` isomorphic to the connected graph `h`.
pub fn count_components_isomorphic(h: &Graph, g: &Graph) -> Result<u64, CountError> {
    if !h.is_connected() {
        return Err(CountError::Disconnected);
    }
    let target = canonical_form(h).cert;
    Ok(g.components()
        .into_iter()
        .filter(|&c| c.count_ones() as usize == h.n())
        .filter(|&c| canonical_form(&g.induced(c)).cert == target)
        .count() as u64)
}

/// Vertex count and component count of a graph, `(v, k)`.
pub fn vk(g: &Graph) -> (usize, usize) {
    (g.n(), g.component_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn q_of_k2_is_edge_count() {
        for g in [Graph::complete(4), Graph::path(5), Graph::matching(3), named::paw()] {
            assert_eq!(count_edge_subgraphs(&Graph::complete(2), &g).unwrap(), g.edge_count() as u64);
        }
    }

    #[test]
    fn q_quoted_values() {
        let q = |h: &Graph, g: &Graph| count_edge_subgraphs(h, g).unwrap();
        assert_eq!(q(&Graph::path(4), &named::paw()), 2);
        assert_eq!(q(&named::p3_plus_k2(), &named::chair()), 1);
        assert_eq!(q(&Graph::path(4), &named::chair()), 2);
        assert_eq!(q(&Graph::complete(3), &Graph::complete(4)), 4);
        assert_eq!(q(&Graph::complete(3), &named::diamond()), 2);
    }

    #[test]
    fn q_rejects_isolated_pattern_and_handles_large_pattern() {
        assert_eq!(
            count_edge_subgraphs(&Graph::complete(2).with_isolated(1), &Graph::complete(3)),
            Err(CountError::IsolatedVertex)
        );
        assert_eq!(count_edge_subgraphs(&Graph::complete(4), &Graph::complete(3)).unwrap(), 0);
        assert_eq!(count_edge_subgraphs(&Graph::null(), &Graph::complete(3)).unwrap(), 1);
    }

    #[test]
    fn p_examples() {
        let g = Graph::cycle(5);
        assert_eq!(count_induced_subgraphs(&Graph::empty(1), &g), 5);
        assert_eq!(count_induced_subgraphs(&Graph::path(3), &Graph::complete(3)), 0);
        assert_eq!(count_induced_subgraphs(&Graph::path(3), &Graph::path(4)), 2);
    }

    #[test]
    fn partition_counts() {
        let k2 = Graph::complete(2);
        let spanning = connected_partitions(&k2, PartitionScope::Spanning);
        assert_eq!(spanning.len(), 2);
        assert!(spanning.contains(&PartialConnectedPartition { blocks: vec![0b11] }));
        assert!(spanning.contains(&PartialConnectedPartition { blocks: vec![0b01, 0b10] }));
        assert_eq!(connected_partitions(&Graph::path(3), PartitionScope::Spanning).len(), 4);
        assert_eq!(connected_partitions(&Graph::complete(3), PartitionScope::All).len(), 15);
        assert_eq!(connected_partitions(&Graph::null(), PartitionScope::All).len(), 1);
    }

    #[test]
    fn omega_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(count_omega(&Graph::null(), &k3), 1);
        assert_eq!(count_omega(&Graph::complete(2), &k3), 3);
        assert_eq!(count_omega(&Graph::path(3), &k3), 0);
        assert_eq!(count_omega(&Graph::path(3), &named::paw()), 2);
        assert_eq!(count_omega(&Graph::empty(3), &k3), 1);
        assert_eq!(count_omega(&Graph::complete(2).with_isolated(1), &k3), 3);
    }

    #[test]
    fn component_counts() {
        let g = Graph::complete(3).times(2).disjoint_union(&Graph::path(4));
        assert_eq!(count_components_isomorphic(&Graph::complete(3), &g).unwrap(), 2);
        assert_eq!(count_components_isomorphic(&Graph::complete(2), &Graph::matching(5)).unwrap(), 5);
        assert_eq!(
            count_components_isomorphic(&Graph::matching(2), &g),
            Err(CountError::Disconnected)
        );
    }

    #[test]
    fn star_and_triangle_counts_agree_on_four_vertex_graphs() {
        for h in [named::paw(), named::diamond(), Graph::complete(4)] {
            assert_eq!(
                count_edge_subgraphs(&Graph::star(3), &h).unwrap(),
                count_edge_subgraphs(&Graph::complete(3), &h).unwrap()
            );
        }
    }

    #[test]
    fn connected_sets_are_distinct_and_connected() {
        let g = Graph::complete(4);
        let sets = connected_sets_containing(&g, 0, 0b1111);
        assert_eq!(sets.len(), 8);
        let mut dedup = sets.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
        assert!(sets.iter().all(|&s| g.induces_connected(s) && s & 1 == 1));
    }
}
