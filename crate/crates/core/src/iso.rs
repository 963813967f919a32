//! Canonical certificates for graphs.

use std::fmt;

use crate::canon::{self, Structure};
use crate::graph::Graph;
use crate::graph6;

/// Certificate of an isomorphism class: the graph6 bytes of the canonical
/// relabeling. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCert(Vec<u8>);

impl CanonicalCert {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The cert is itself valid graph6 for the canonical representative.
    pub fn as_graph6(&self) -> &str {
        std::str::from_utf8(&self.0).expect("certificates are ASCII")
    }

    pub fn to_graph(&self) -> Graph {
        graph6::parse_graph6(self.as_graph6()).expect("certificate is valid graph6")
    }
}

impl fmt::Debug for CanonicalCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cert({})", self.as_graph6())
    }
}

impl fmt::Display for CanonicalCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_graph6())
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub cert: CanonicalCert,
    /// `relabeling[v]` is the canonical index of vertex `v`.
    pub relabeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn graph(&self) -> Graph {
        self.cert.to_graph()
    }
}

fn structure(g: &Graph) -> Structure {
    let n = g.n();
    let mut arcs = vec![0u64; n * n];
    for (u, v) in g.edges() {
        arcs[u * n + v] = 1;
        arcs[v * n + u] = 1;
    }
    Structure::new(vec![0; n], arcs)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let canon = canon::canonize(&structure(g));
    let relabeling = canon.position;
    let cert = CanonicalCert(graph6::encode(&g.relabel(&relabeling)));
    CanonicalForm { cert, relabeling }
}

pub fn cert(g: &Graph) -> CanonicalCert {
    canonical_form(g).cert
}

/// The canonical representative of the class of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let form = canonical_form(g);
    g.relabel(&form.relabeling)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && cert(g) == cert(h)
}

/// Order of the automorphism group, by exhaustive isomorphism search.
pub fn automorphism_count(g: &Graph) -> usize {
    let s = structure(g);
    canon::isomorphisms(&s, &s).len()
}
