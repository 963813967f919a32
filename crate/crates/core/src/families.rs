//! The exceptional families `F0..F4`, their unions `M` and `N`, and the
//! table of small graphs that are only known through their roles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::catalog::Catalog;
use crate::counting::count_edge_subgraphs;
use crate::error::FamilyError;
use crate::graph::Graph;
use crate::graph6::parse_graph6;
use crate::iso::{canonical_form, CanonicalCert};
use crate::named;
use crate::poset::{build_omega, build_q, AbstractPosetCert};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    F0,
    F1,
    F2,
    F3,
    F4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyTag {
    pub flags: BTreeSet<Family>,
}

impl FamilyTag {
    pub fn has(&self, f: Family) -> bool {
        self.flags.contains(&f)
    }

    /// `M = F0 ∪ F2 ∪ F4`.
    pub fn in_m(&self) -> bool {
        self.has(Family::F0) || self.has(Family::F2) || self.has(Family::F4)
    }

    /// `N = F0 ∪ ... ∪ F4`.
    pub fn in_n(&self) -> bool {
        !self.flags.is_empty()
    }
}

/// Names of the table graphs, in file order.
pub const TABLE_NAMES: [&str; 9] = ["T4", "S4", "K4-e", "B1", "B2", "B3", "B4", "S5", "T5"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionPair {
    pub a: CanonicalCert,
    pub b: CanonicalCert,
    pub omega_differs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalTable {
    names: BTreeMap<String, CanonicalCert>,
    pub pairs: Vec<CollisionPair>,
}

impl ExceptionalTable {
    pub fn get(&self, name: &str) -> Result<&CanonicalCert, FamilyError> {
        self.names.get(name).ok_or_else(|| FamilyError::Unresolved(name.to_string()))
    }

    pub fn graph(&self, name: &str) -> Result<Graph, FamilyError> {
        Ok(self.get(name)?.to_graph())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in TABLE_NAMES {
            if let Some(c) = self.names.get(name) {
                out.push_str(&format!("name {name} {c}\n"));
            }
        }
        for p in &self.pairs {
            out.push_str(&format!("pair {} {} omegaDiffers={}\n", p.a, p.b, u8::from(p.omega_differs)));
        }
        out
    }

    /// Parses the text form and checks every pair really shares its
    /// abstract edge-subgraph poset, and that every name is present.
    pub fn from_text(text: &str) -> Result<ExceptionalTable, FamilyError> {
        let mut names = BTreeMap::new();
        let mut pairs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |reason: String| FamilyError::Format { line: line_no, reason };
            let cert = |s: &str| {
                parse_graph6(s).map(|g| canonical_form(&g).cert).map_err(|e| err(e.to_string()))
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[..] {
                [] => {}
                ["name", name, g6] => {
                    if !TABLE_NAMES.contains(&name) {
                        return Err(err(format!("unknown name {name}")));
                    }
                    if names.insert(name.to_string(), cert(g6)?).is_some() {
                        return Err(err(format!("{name} given twice")));
                    }
                }
                ["pair", a, b, flag] => {
                    let omega_differs = match flag {
                        "omegaDiffers=0" => false,
                        "omegaDiffers=1" => true,
                        _ => return Err(err("expected omegaDiffers=<0|1>".into())),
                    };
                    let (a, b) = (cert(a)?, cert(b)?);
                    let q = |c: &CanonicalCert| build_q(&c.to_graph()).map(|p| p.abstract_cert());
                    let w = |c: &CanonicalCert| build_omega(&c.to_graph()).map(|p| p.abstract_cert());
                    if q(&a).ok() != q(&b).ok() {
                        return Err(err("pair does not share its edge-subgraph poset".into()));
                    }
                    if (w(&a).ok() != w(&b).ok()) != omega_differs {
                        return Err(err("omegaDiffers flag is wrong".into()));
                    }
                    pairs.push(CollisionPair { a, b, omega_differs });
                }
                _ => return Err(err(format!("cannot parse {line:?}"))),
            }
        }
        for name in TABLE_NAMES {
            if !names.contains_key(name) {
                return Err(FamilyError::Unresolved(name.to_string()));
            }
        }
        Ok(ExceptionalTable { names, pairs })
    }
}

fn is_path(g: &Graph) -> bool {
    g.n() >= 2 && g.is_connected() && g.edge_count() == g.n() - 1 && g.max_degree() <= 2
}

fn is_cycle(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && g.min_degree() == 2 && g.max_degree() == 2
}

fn is_star(g: &Graph) -> bool {
    g.n() >= 2 && g.is_connected() && g.edge_count() == g.n() - 1 && g.max_degree() == g.n() - 1
}

fn is_matching(g: &Graph) -> bool {
    g.n() >= 2 && g.min_degree() == 1 && g.max_degree() == 1
}

/// Membership in `X`: paths on at least two vertices, cycles on at least
/// four, and `S4`, `K4∖e`, `K4`.
pub fn in_x(g: &Graph, table: &ExceptionalTable) -> Result<bool, FamilyError> {
    if !g.is_connected() {
        return Err(FamilyError::Disconnected);
    }
    if is_path(g) || (is_cycle(g) && g.n() >= 4) {
        return Ok(true);
    }
    if g.n() != 4 {
        return Ok(false);
    }
    let c = canonical_form(g).cert;
    Ok(c == *table.get("S4")? || c == *table.get("K4-e")? || c == canonical_form(&Graph::complete(4)).cert)
}

fn certs_of(graphs: impl IntoIterator<Item = Graph>) -> Vec<CanonicalCert> {
    graphs.into_iter().map(|g| canonical_form(&g).cert).collect()
}

/// `F4 = {rK3 + sK_{1,3} + F : r ≠ s, F ∈ N^X} ∖ {K3, K_{1,3}}`.
fn in_f4(g: &Graph, table: &ExceptionalTable) -> Result<bool, FamilyError> {
    let k3 = canonical_form(&Graph::complete(3)).cert;
    let k13 = canonical_form(&Graph::star(3)).cert;
    let (mut r, mut s) = (0, 0);
    for comp in g.components() {
        let h = g.induced(comp);
        let c = canonical_form(&h).cert;
        if c == k3 {
            r += 1;
        } else if c == k13 {
            s += 1;
        } else if !in_x(&h, table)? {
            return Ok(false);
        }
    }
    let single = g.component_count() == 1 && r + s == 1;
    Ok(r != s && !single)
}

/// Family flags of `g`. Isolated vertices are ignored.
pub fn classify(g: &Graph, table: &ExceptionalTable) -> Result<FamilyTag, FamilyError> {
    let g = g.strip_isolated();
    let c = canonical_form(&g).cert;
    let t = |name: &str| table.graph(name);
    let mut tag = FamilyTag::default();

    let f0 = certs_of([Graph::matching(3), Graph::complete(3), Graph::star(3)]);
    let f1 = certs_of([Graph::path(4), named::p3_plus_k2(), Graph::path(4).disjoint_union(&Graph::complete(2)), t("T4")?]);
    let f2 = certs_of([
        Graph::cycle(4),
        Graph::path(3).times(2),
        Graph::cycle(4).disjoint_union(&Graph::complete(2)),
        t("B1")?,
        Graph::path(6),
        t("B2")?,
        t("B3")?,
        t("B4")?,
    ]);
    if f0.contains(&c) {
        tag.flags.insert(Family::F0);
    }
    if f1.contains(&c) {
        tag.flags.insert(Family::F1);
    }
    if f2.contains(&c) {
        tag.flags.insert(Family::F2);
    }
    let m = g.edge_count();
    if m > 1 && m != 3 && (is_star(&g) || is_matching(&g)) {
        tag.flags.insert(Family::F3);
    }
    if g.edge_count() > 0 && in_f4(&g, table)? {
        tag.flags.insert(Family::F4);
    }
    Ok(tag)
}

fn unique(name: &str, mut found: Vec<CanonicalCert>) -> Result<CanonicalCert, FamilyError> {
    found.sort();
    found.dedup();
    if found.len() == 1 {
        Ok(found.pop().unwrap())
    } else {
        Err(FamilyError::NotUnique { name: name.to_string(), candidates: found.iter().map(|c| c.to_string()).collect() })
    }
}

/// Resolves the table graphs from their roles:
///
/// * `T4`: the other graph sharing `Q̄` with `P4 + K2`;
/// * `S4`: the connected 4-edge graph with `q(P4)=2`, `q(K_{1,2}+K2)=0`, `q(K3)=1`;
/// * `B1`: the other graph sharing `Q̄` with `C4 + K2`;
/// * `B4`: the other graph sharing `Q̄` with `P6`;
/// * `B2`, `B3`: the remaining pair of graphs with equal vertex counts,
///   equal `Q̄` and different `Ω̄`, in certificate order;
/// * `S5`, `T5`: the connected one-edge extensions of `K_{1,4}` other
///   than `K_{1,5}`, with and without a triangle.
///
/// Every role must be filled by exactly one graph.
pub fn resolve_exceptional_table(catalog: &Catalog) -> Result<ExceptionalTable, FamilyError> {
    const BOUND: usize = 6;
    if catalog.max_edges() < BOUND {
        return Err(FamilyError::CatalogTooSmall(catalog.max_edges()));
    }
    let graphs: Vec<&Graph> =
        catalog.entries().iter().map(|e| &e.graph).filter(|g| g.edge_count() <= BOUND).collect();
    let q_cert = |g: &Graph| build_q(g).expect("catalog graphs have edges").abstract_cert();
    let mut by_q: BTreeMap<AbstractPosetCert, Vec<CanonicalCert>> = BTreeMap::new();
    for g in &graphs {
        by_q.entry(q_cert(g)).or_default().push(canonical_form(g).cert);
    }
    let partners = |g: &Graph| -> Vec<CanonicalCert> {
        let own = canonical_form(g).cert;
        by_q[&q_cert(g)].iter().filter(|c| **c != own).cloned().collect()
    };
    let omega = |c: &CanonicalCert| build_omega(&c.to_graph()).expect("non-null").abstract_cert();

    let mut names = BTreeMap::new();
    let p4k2 = Graph::path(4).disjoint_union(&Graph::complete(2));
    let c4k2 = Graph::cycle(4).disjoint_union(&Graph::complete(2));
    names.insert("T4".to_string(), unique("T4", partners(&p4k2))?);
    names.insert("B1".to_string(), unique("B1", partners(&c4k2))?);
    names.insert("B4".to_string(), unique("B4", partners(&Graph::path(6)))?);

    let count = |h: &Graph, g: &Graph| count_edge_subgraphs(h, g).expect("pattern has no isolated vertices");
    let s4: Vec<CanonicalCert> = graphs
        .iter()
        .filter(|g| g.edge_count() == 4 && g.is_connected())
        .filter(|g| count(&Graph::path(4), g) == 2)
        .filter(|g| count(&named::p3_plus_k2(), g) == 0)
        .filter(|g| count(&Graph::complete(3), g) == 1)
        .map(|g| canonical_form(g).cert)
        .collect();
    names.insert("S4".to_string(), unique("S4", s4)?);
    names.insert("K4-e".to_string(), canonical_form(&named::diamond()).cert);

    let c1 = canonical_form(&c4k2).cert;
    let mut equal_v = Vec::new();
    for class in by_q.values() {
        for (i, a) in class.iter().enumerate() {
            for b in &class[i + 1..] {
                let same_v = a.to_graph().n() == b.to_graph().n();
                if same_v && *a != c1 && *b != c1 && omega(a) != omega(b) {
                    equal_v.push((a.clone(), b.clone()));
                }
            }
        }
    }
    match &equal_v[..] {
        [(a, b)] => {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            names.insert("B2".to_string(), lo.clone());
            names.insert("B3".to_string(), hi.clone());
        }
        _ => {
            return Err(FamilyError::NotUnique {
                name: "B2/B3".into(),
                candidates: equal_v.iter().map(|(a, b)| format!("{a}+{b}")).collect(),
            })
        }
    }

    let star4 = Graph::star(4);
    let k15 = canonical_form(&Graph::star(5)).cert;
    let mut ext = Vec::new();
    for u in 0..=4 {
        for v in u + 1..=5 {
            let mut h = star4.with_isolated(1);
            if !h.has_edge(u, v) {
                h.add_edge(u, v);
                let h = h.strip_isolated();
                let c = canonical_form(&h).cert;
                if h.is_connected() && c != k15 {
                    ext.push((h, c));
                }
            }
        }
    }
    let with_triangle = |h: &Graph| count(&Graph::complete(3), h) > 0;
    names.insert("S5".to_string(), unique("S5", ext.iter().filter(|(h, _)| with_triangle(h)).map(|(_, c)| c.clone()).collect())?);
    names.insert("T5".to_string(), unique("T5", ext.iter().filter(|(h, _)| !with_triangle(h)).map(|(_, c)| c.clone()).collect())?);

    let mut pairs = Vec::new();
    let mut add_pair = |a: CanonicalCert, b: CanonicalCert| {
        let omega_differs = omega(&a) != omega(&b);
        pairs.push(CollisionPair { a, b, omega_differs });
    };
    let cert = |g: &Graph| canonical_form(g).cert;
    add_pair(cert(&Graph::path(4)), cert(&named::p3_plus_k2()));
    add_pair(cert(&p4k2), names["T4"].clone());
    add_pair(cert(&Graph::cycle(4)), cert(&Graph::path(3).times(2)));
    add_pair(c1.clone(), names["B1"].clone());
    add_pair(cert(&Graph::path(6)), names["B4"].clone());
    add_pair(names["B2"].clone(), names["B3"].clone());
    Ok(ExceptionalTable { names, pairs })
}
