//! The catalog: one canonical representative for every graph without
//! isolated vertices and with `1..=max_edges` edges.
//!
//! Level `m` is generated from level `m - 1` by adding one edge in each
//! possible way (between two existing vertices, from an existing vertex to
//! a new one, or as a new disjoint `K2`) and deduplicating by certificate.
//! Removing any edge of a graph and stripping isolated vertices lands on
//! level `m - 1`, so every class is reached.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::CatalogError;
use crate::graph::Graph;
use crate::graph6::parse_graph6;
use crate::iso::{canonical_form, CanonicalCert};

/// Default hard cap on the edge bound.
pub const DEFAULT_EDGE_CAP: usize = 12;

/// Published numbers of graphs with `m` edges and no isolated vertices,
/// `m = 1..=12`.
pub const CLASS_COUNTS: [usize; 12] = [1, 2, 5, 11, 26, 68, 177, 497, 1476, 4613, 15216, 52944];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub cert: CanonicalCert,
    /// Canonical representative (the graph encoded by `cert`).
    pub graph: Graph,
}

impl CatalogEntry {
    fn new(cert: CanonicalCert) -> Self {
        let graph = cert.to_graph();
        CatalogEntry { cert, graph }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    max_edges: usize,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn max_edges(&self) -> usize {
        self.max_edges
    }

    /// Entries sorted by `(e(G), cert)`.
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn level(&self, edges: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.graph.edge_count() == edges)
    }

    /// Entry counts for edge levels `1..=max_edges`.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_edges];
        for e in &self.entries {
            counts[e.graph.edge_count() - 1] += 1;
        }
        counts
    }

    pub fn position(&self, cert: &CanonicalCert) -> Option<usize> {
        self.entries.iter().position(|e| &e.cert == cert)
    }

    pub fn contains(&self, g: &Graph) -> bool {
        let core = g.strip_isolated();
        core.edge_count() >= 1
            && core.edge_count() <= self.max_edges
            && self.position(&canonical_form(&core).cert).is_some()
    }

    /// Restriction to graphs with at most `max_edges` edges.
    pub fn truncate(&self, max_edges: usize) -> Catalog {
        let max_edges = max_edges.min(self.max_edges);
        Catalog {
            max_edges,
            entries: self
                .entries
                .iter()
                .filter(|e| e.graph.edge_count() <= max_edges)
                .cloned()
                .collect(),
        }
    }

    /// One graph6 line per entry, in catalog order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(e.cert.as_graph6());
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Lines are re-canonicalized and must be
    /// distinct, isolated-vertex free, and cover every class up to the
    /// largest edge count present.
    pub fn from_text(text: &str) -> Result<Catalog, CatalogError> {
        let mut certs = BTreeSet::new();
        let mut max_edges = 0;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let g = parse_graph6(line).map_err(|source| CatalogError::Parse { line: line_no, source })?;
            if g.edge_count() == 0 || g.has_isolated() {
                return Err(CatalogError::Invalid {
                    line: line_no,
                    reason: "graph has an isolated vertex or no edges".into(),
                });
            }
            max_edges = max_edges.max(g.edge_count());
            if !certs.insert((g.edge_count(), canonical_form(&g).cert)) {
                return Err(CatalogError::Invalid { line: line_no, reason: "duplicate class".into() });
            }
        }
        if max_edges == 0 {
            return Err(CatalogError::Invalid { line: 0, reason: "empty catalog".into() });
        }
        let catalog = Catalog {
            max_edges,
            entries: certs.into_iter().map(|(_, c)| CatalogEntry::new(c)).collect(),
        };
        let expected = &CLASS_COUNTS[..max_edges.min(CLASS_COUNTS.len())];
        if catalog.level_counts()[..expected.len()] != *expected {
            return Err(CatalogError::Invalid {
                line: 0,
                reason: format!("level counts {:?}, expected {:?}", catalog.level_counts(), expected),
            });
        }
        Ok(catalog)
    }
}

pub fn enumerate_catalog(max_edges: usize) -> Result<Catalog, CatalogError> {
    enumerate_catalog_with_cap(max_edges, DEFAULT_EDGE_CAP)
}

/// Like [`enumerate_catalog`] with an explicit cap. Caps above 15 are
/// rejected since `2 * cap` vertices must fit the graph representation.
pub fn enumerate_catalog_with_cap(max_edges: usize, cap: usize) -> Result<Catalog, CatalogError> {
    let cap = cap.min(crate::graph::MAX_VERTICES / 2 - 1);
    if max_edges == 0 || max_edges > cap {
        return Err(CatalogError::BoundExceeded { requested: max_edges, cap });
    }
    let mut level: Vec<CanonicalCert> = vec![canonical_form(&Graph::complete(2)).cert];
    let mut entries: Vec<CatalogEntry> = level.iter().cloned().map(CatalogEntry::new).collect();
    for _ in 2..=max_edges {
        let next: BTreeSet<CanonicalCert> = level
            .par_iter()
            .map(|c| extensions(&c.to_graph()))
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        level = next.into_iter().collect();
        entries.extend(level.iter().cloned().map(CatalogEntry::new));
    }
    Ok(Catalog { max_edges, entries })
}

/// Certificates of all one-edge extensions of `g` without isolated vertices.
fn extensions(g: &Graph) -> BTreeSet<CanonicalCert> {
    let n = g.n();
    let mut out = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                let mut h = g.clone();
                h.add_edge(u, v);
                out.insert(canonical_form(&h).cert);
            }
        }
        let mut h = g.with_isolated(1);
        h.add_edge(u, n);
        out.insert(canonical_form(&h).cert);
    }
    let mut h = g.with_isolated(2);
    h.add_edge(n, n + 1);
    out.insert(canonical_form(&h).cert);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_bound() {
        let c = enumerate_catalog(1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.entries()[0].graph, Graph::complete(2));
    }

    #[test]
    fn bound_checks() {
        assert!(matches!(enumerate_catalog(0), Err(CatalogError::BoundExceeded { .. })));
        assert!(matches!(enumerate_catalog(13), Err(CatalogError::BoundExceeded { .. })));
        assert!(enumerate_catalog_with_cap(4, 3).is_err());
    }

    #[test]
    fn entries_sorted_and_isolated_free() {
        let c = enumerate_catalog(5).unwrap();
        let keys: Vec<_> = c.entries().iter().map(|e| (e.graph.edge_count(), e.cert.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(c.entries().iter().all(|e| !e.graph.has_isolated()));
    }

    #[test]
    fn text_round_trip() {
        let c = enumerate_catalog(4).unwrap();
        let text = c.to_text();
        assert_eq!(Catalog::from_text(&text).unwrap(), c);
        let missing: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(Catalog::from_text(&missing).is_err());
        assert!(Catalog::from_text("A_\nA_\n").is_err());
        assert!(Catalog::from_text("B?\n").is_err());
    }

    #[test]
    fn truncation_matches_smaller_enumeration() {
        let c = enumerate_catalog(5).unwrap();
        assert_eq!(c.truncate(3), enumerate_catalog(3).unwrap());
    }
}
