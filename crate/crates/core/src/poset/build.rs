use std::collections::BTreeMap;

use super::{PosetKind, WeightedPoset};
use crate::counting::{edge_subgraph_census, induced_census, partition_core_census, Census};
use crate::error::PosetError;
use crate::graph::Graph;
use crate::iso::{canonical_form, CanonicalCert};

/// Assembles a poset whose elements are `certs` and whose weight from `x`
/// to `y` is `census(y)[x]`.
fn assemble(
    kind: PosetKind,
    mut certs: Vec<(i64, CanonicalCert)>,
    census: impl Fn(&Graph) -> Census,
) -> Result<WeightedPoset, PosetError> {
    certs.sort();
    certs.dedup();
    let index: BTreeMap<&CanonicalCert, usize> = certs.iter().enumerate().map(|(i, (_, c))| (c, i)).collect();
    let labels: Vec<Graph> = certs.iter().map(|(_, c)| c.to_graph()).collect();
    let mut strict = BTreeMap::new();
    for (j, y) in labels.iter().enumerate() {
        for (c, w) in census(y) {
            if let Some(&i) = index.get(&c) {
                if i != j {
                    strict.insert((i, j), w);
                }
            }
        }
    }
    let ranks = certs.iter().map(|(r, _)| *r).collect();
    WeightedPoset::new(kind, ranks, &strict, Some(labels))
}

/// `Q(G)`: edge-subgraphs of `G` up to isomorphism, ranked by edge count.
/// Isolated vertices of `g` are ignored.
pub fn build_q(g: &Graph) -> Result<WeightedPoset, PosetError> {
    let core = g.strip_isolated();
    if core.edge_count() == 0 {
        return Err(PosetError::EmptyGraph);
    }
    let certs = edge_subgraph_census(&core)
        .into_keys()
        .map(|c| (c.to_graph().edge_count() as i64, c))
        .collect();
    assemble(PosetKind::Q, certs, edge_subgraph_census)
}

/// `P(G)`: `K1` together with the induced subgraphs having at least one
/// edge, ranked by vertex count.
pub fn build_p(g: &Graph) -> Result<WeightedPoset, PosetError> {
    if g.n() == 0 {
        return Err(PosetError::NullGraph);
    }
    let k1 = canonical_form(&Graph::empty(1)).cert;
    let certs = induced_census(g)
        .into_keys()
        .filter(|c| *c == k1 || c.to_graph().edge_count() > 0)
        .map(|c| (c.to_graph().n() as i64, c))
        .collect();
    assemble(PosetKind::P, certs, induced_census)
}

/// `Ω(G)`: images `G[π]` of connected partitions of `V(G)`, ranked by
/// `v(G) - k(G[π])`. Elements keep their isolated vertices, so every label
/// has `v(G)` vertices.
pub fn build_omega(g: &Graph) -> Result<WeightedPoset, PosetError> {
    let n = g.n();
    if n == 0 {
        return Err(PosetError::NullGraph);
    }
    let spanning = |core: &Graph| canonical_form(&core.with_isolated(n - core.n())).cert;
    let certs = partition_core_census(g)
        .into_keys()
        .map(|c| {
            let image = c.to_graph().with_isolated(n - c.to_graph().n());
            ((n - image.component_count()) as i64, canonical_form(&image).cert)
        })
        .collect();
    // Weights between spanning images only see the cores.
    assemble(PosetKind::Omega, certs, |y| {
        partition_core_census(&y.strip_isolated()).into_iter().map(|(c, w)| (spanning(&c.to_graph()), w)).collect()
    })
}

pub fn build_poset(kind: PosetKind, g: &Graph) -> Result<WeightedPoset, PosetError> {
    match kind {
        PosetKind::Q => build_q(g),
        PosetKind::P => build_p(g),
        PosetKind::Omega => build_omega(g),
    }
}
