//! Verification sweeps over the catalog.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::catalog::{enumerate_catalog, Catalog};
use crate::counting::{count_edge_subgraphs, count_omega};
use crate::error::CatalogError;
use crate::families::{classify, resolve_exceptional_table, ExceptionalTable};
use crate::graph::Graph;
use crate::graph6::format_graph6;
use crate::named;
use crate::poset::{build_omega, build_p, build_poset, build_q, AbstractPosetCert, PosetKind};
use crate::reconstruct::{annotate_vk, reconstruct_omega, reconstruct_p, CatalogIndex, Inverter, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Inversion,
    MainTheorem,
    Families,
    Identities,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Inversion => "inversion",
            Suite::MainTheorem => "main-theorem",
            Suite::Families => "families",
            Suite::Identities => "identities",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        [Suite::Inversion, Suite::MainTheorem, Suite::Families, Suite::Identities]
            .into_iter()
            .find(|s| s.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub claim: String,
    pub pass: bool,
    /// Graph6 strings or other concrete evidence; always set on failure.
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: String,
    pub bound: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(suite: Suite, bound: usize) -> Self {
        VerifyReport { suite: suite.name().to_string(), bound, checks: Vec::new() }
    }

    fn check(&mut self, claim: impl Into<String>, pass: bool, witness: impl Into<String>) {
        let mut witness = witness.into();
        if !pass && witness.is_empty() {
            witness = "(none recorded)".into();
        }
        self.checks.push(Check { claim: claim.into(), pass, witness });
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} bound={}\n", self.suite, self.bound);
        for c in &self.checks {
            if c.pass {
                let _ = writeln!(out, "PASS {}", c.claim);
            } else {
                let _ = writeln!(out, "FAIL {} witness={}", c.claim, c.witness);
            }
        }
        let _ = writeln!(out, "summary pass={} fail={}", self.passed(), self.failed());
        out
    }
}

fn g6_list<'a>(gs: impl IntoIterator<Item = &'a Graph>) -> String {
    gs.into_iter().map(format_graph6).collect::<Vec<_>>().join(",")
}

/// Resolves the table from a catalog of at least six edges, enumerating
/// one if `catalog` is smaller.
pub fn table_for(catalog: &Catalog) -> ExceptionalTable {
    let owned;
    let source = if catalog.max_edges() >= 6 {
        catalog
    } else {
        owned = enumerate_catalog(6).expect("bound 6 is within the cap");
        &owned
    };
    resolve_exceptional_table(source).expect("exceptional table resolves")
}

pub fn run_suite(suite: Suite, max_edges: usize) -> Result<VerifyReport, CatalogError> {
    let catalog = enumerate_catalog(max_edges)?;
    Ok(match suite {
        Suite::Inversion => inversion(&catalog),
        Suite::MainTheorem => main_theorem(&catalog),
        Suite::Families => families(&catalog),
        Suite::Identities => identities(&table_for(&catalog), max_edges),
    })
}

/// Per-graph result of the inversion sweep.
struct InversionStats {
    identity_failures: Vec<String>,
    inversion_failures: Vec<String>,
    inverted: usize,
    skipped: usize,
}

fn inversion_for(g: &Graph, index: &CatalogIndex) -> InversionStats {
    let q = build_q(g).expect("catalog graphs have edges");
    let labels = q.labels().expect("concrete").to_vec();
    let n = q.len();
    let omega: Vec<Vec<u64>> =
        (0..n).map(|i| (0..n).map(|k| if q.leq(i, k) { count_omega(&labels[i], &labels[k]) } else { 0 }).collect()).collect();
    let vk: Vec<(usize, usize)> = labels.iter().map(|h| (h.n(), h.component_count())).collect();
    let mut stats = InversionStats { identity_failures: Vec::new(), inversion_failures: Vec::new(), inverted: 0, skipped: 0 };

    // q(i, k) = Σ_j q(i, j) ω(j, k) over j ≥ i with the same (v, k) as i.
    for i in 0..n {
        for k in 0..n {
            if !q.leq(i, k) {
                continue;
            }
            let sum: u64 = (0..n).filter(|&j| q.leq(i, j) && vk[j] == vk[i]).map(|j| q.weight(i, j) * omega[j][k]).sum();
            if sum != q.weight(i, k) {
                stats.identity_failures.push(format!("{}<={}", format_graph6(&labels[i]), format_graph6(&labels[k])));
            }
        }
    }

    let ann = annotate_vk(&q.to_abstract(), index).expect("graph is its own candidate");
    let mut inv = Inverter::new(&q, ann.determined());
    for i in 0..n {
        for k in 0..n {
            match inv.omega(i, k) {
                Ok(w) if w == omega[i][k] => stats.inverted += 1,
                Ok(w) => stats.inversion_failures.push(format!(
                    "{}<={}:{}!={}",
                    format_graph6(&labels[i]),
                    format_graph6(&labels[k]),
                    w,
                    omega[i][k]
                )),
                Err(_) => stats.skipped += 1,
            }
        }
    }
    stats
}

/// The identity `q = Σ q·ω` on every concrete poset, and the inversion
/// against brute-force `ω` wherever the annotation is determined.
pub fn inversion(catalog: &Catalog) -> VerifyReport {
    let mut report = VerifyReport::new(Suite::Inversion, catalog.max_edges());
    let index = CatalogIndex::new(catalog.clone());
    let stats: Vec<InversionStats> = catalog.entries().par_iter().map(|e| inversion_for(&e.graph, &index)).collect();
    let identity: Vec<&String> = stats.iter().flat_map(|s| &s.identity_failures).collect();
    let inverted: Vec<&String> = stats.iter().flat_map(|s| &s.inversion_failures).collect();
    let join = |v: &[&String]| v.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(",");
    report.check(format!("identity q=sum(q*omega) on {} graphs", catalog.len()), identity.is_empty(), join(&identity));
    let done: usize = stats.iter().map(|s| s.inverted).sum();
    let skipped: usize = stats.iter().map(|s| s.skipped).sum();
    report.check(
        format!("inversion matches brute force on {done} determined pairs ({skipped} undetermined)"),
        inverted.is_empty(),
        join(&inverted),
    );
    report
}

/// Outcome of both reconstructions for one graph.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub graph: Graph,
    pub in_m: bool,
    pub in_n: bool,
    pub omega_ok: bool,
    pub omega_correct: bool,
    pub p_ok: bool,
    pub p_correct: bool,
}

pub fn round_trip(g: &Graph, index: &CatalogIndex, table: &ExceptionalTable) -> RoundTrip {
    let tag = classify(g, table).expect("table resolved");
    let q = build_q(g).expect("catalog graphs have edges").to_abstract();
    let omega = reconstruct_omega(&q, index).expect("reconstruction runs on catalog graphs");
    let p = reconstruct_p(&q, index).expect("reconstruction runs on catalog graphs");
    let matches = |o: &Outcome, expected: AbstractPosetCert| o.poset().map(|x| x.abstract_cert() == expected);
    let omega_correct = matches(&omega, build_omega(g).unwrap().abstract_cert());
    let p_correct = matches(&p, build_p(g).unwrap().abstract_cert());
    RoundTrip {
        graph: g.clone(),
        in_m: tag.in_m(),
        in_n: tag.in_n(),
        omega_ok: omega.is_success(),
        omega_correct: omega_correct.unwrap_or(true),
        p_ok: p.is_success(),
        p_correct: p_correct.unwrap_or(true),
    }
}

pub fn round_trips(catalog: &Catalog, table: &ExceptionalTable) -> Vec<RoundTrip> {
    let index = CatalogIndex::new(catalog.clone());
    catalog.entries().par_iter().map(|e| round_trip(&e.graph, &index, table)).collect()
}

/// Both round trips and the exact exception sets `M` and `N` at the bound.
pub fn main_theorem(catalog: &Catalog) -> VerifyReport {
    let table = table_for(catalog);
    let trips = round_trips(catalog, &table);
    main_theorem_report(catalog.max_edges(), &trips)
}

pub fn main_theorem_report(bound: usize, trips: &[RoundTrip]) -> VerifyReport {
    let mut report = VerifyReport::new(Suite::MainTheorem, bound);
    let wrong_omega: Vec<&Graph> = trips.iter().filter(|t| !t.omega_correct).map(|t| &t.graph).collect();
    report.check("successful bond lattice reconstructions are correct", wrong_omega.is_empty(), g6_list(wrong_omega));
    let wrong_p: Vec<&Graph> = trips.iter().filter(|t| !t.p_correct).map(|t| &t.graph).collect();
    report.check("successful induced poset reconstructions are correct", wrong_p.is_empty(), g6_list(wrong_p));

    let omega_extra: Vec<&Graph> = trips.iter().filter(|t| !t.omega_ok && !t.in_m).map(|t| &t.graph).collect();
    let omega_missing: Vec<&Graph> = trips.iter().filter(|t| t.omega_ok && t.in_m).map(|t| &t.graph).collect();
    let in_m = trips.iter().filter(|t| t.in_m).count();
    report.check(
        format!("bond lattice ambiguous exactly on M ({in_m} members)"),
        omega_extra.is_empty() && omega_missing.is_empty(),
        format!("ambiguous_outside_M=[{}] unique_in_M=[{}]", g6_list(omega_extra), g6_list(omega_missing)),
    );

    let p_extra: Vec<&Graph> = trips.iter().filter(|t| !t.p_ok && !t.in_n).map(|t| &t.graph).collect();
    let p_missing: Vec<&Graph> = trips.iter().filter(|t| t.p_ok && t.in_n).map(|t| &t.graph).collect();
    let in_n = trips.iter().filter(|t| t.in_n).count();
    report.check(
        format!("induced poset ambiguous exactly on N ({in_n} members)"),
        p_extra.is_empty() && p_missing.is_empty(),
        format!("ambiguous_outside_N=[{}] unique_in_N=[{}]", g6_list(p_extra), g6_list(p_missing)),
    );
    report
}

/// Classes of catalog graphs sharing the certificate of `kind`, restricted
/// to classes of size at least two. With `differ`, only classes whose
/// members do not all share the `differ` certificate are kept.
pub fn collisions(catalog: &Catalog, kind: PosetKind, differ: Option<PosetKind>) -> Vec<Vec<Graph>> {
    let build =
        |k: PosetKind, g: &Graph| build_poset(k, g).expect("catalog graphs are non-empty").abstract_cert();
    let certs: Vec<AbstractPosetCert> = catalog.entries().par_iter().map(|e| build(kind, &e.graph)).collect();
    let mut classes: BTreeMap<&AbstractPosetCert, Vec<Graph>> = BTreeMap::new();
    for (c, e) in certs.iter().zip(catalog.entries()) {
        classes.entry(c).or_default().push(e.graph.clone());
    }
    let mut out: Vec<Vec<Graph>> = classes
        .into_values()
        .filter(|c| c.len() > 1)
        .filter(|c| match differ {
            None => true,
            Some(k) => c.iter().map(|g| build(k, g)).collect::<BTreeSet<_>>().len() > 1,
        })
        .collect();
    out.sort_by_key(|c| c.iter().map(format_graph6).collect::<Vec<_>>());
    out
}

pub fn collisions_text(classes: &[Vec<Graph>]) -> String {
    classes.iter().map(|c| format!("{}\n", c.iter().map(format_graph6).collect::<Vec<_>>().join(" "))).collect()
}

fn q_cert(g: &Graph) -> AbstractPosetCert {
    build_q(g).unwrap().abstract_cert()
}

fn omega_cert(g: &Graph) -> AbstractPosetCert {
    build_omega(g).unwrap().abstract_cert()
}

fn p_cert(g: &Graph) -> AbstractPosetCert {
    build_p(g).unwrap().abstract_cert()
}

/// Table resolution, the shared-lattice and collision pairs, and
/// collision completeness at the bound.
pub fn families(catalog: &Catalog) -> VerifyReport {
    let mut report = VerifyReport::new(Suite::Families, catalog.max_edges());
    let table = match resolve_exceptional_table(catalog) {
        Ok(t) => t,
        Err(e) => {
            report.check("exceptional table resolves uniquely", false, e.to_string());
            return report;
        }
    };
    report.check("exceptional table resolves uniquely", true, "");
    for p in &table.pairs {
        let (a, b) = (p.a.to_graph(), p.b.to_graph());
        let witness = format!("{},{}", p.a, p.b);
        report.check(format!("pair {} {} shares Q", p.a, p.b), q_cert(&a) == q_cert(&b), witness.clone());
        let omega_differs = omega_cert(&a) != omega_cert(&b);
        report.check(
            format!("pair {} {} bond lattices {}", p.a, p.b, if p.omega_differs { "differ" } else { "agree" }),
            omega_differs == p.omega_differs,
            witness.clone(),
        );
        if p.omega_differs && a.n() == b.n() {
            report.check(format!("pair {} {} induced posets differ", p.a, p.b), p_cert(&a) != p_cert(&b), witness);
        }
    }

    let classes = collisions(catalog, PosetKind::Q, None);
    let colliding: BTreeSet<String> = classes.iter().flatten().map(format_graph6).collect();
    let in_n: BTreeSet<String> = catalog
        .entries()
        .iter()
        .filter(|e| classify(&e.graph, &table).expect("table resolved").in_n())
        .map(|e| format_graph6(&e.graph))
        .collect();
    let extra: Vec<&String> = colliding.difference(&in_n).collect();
    let missing: Vec<&String> = in_n.difference(&colliding).collect();
    report.check(
        format!("Q-collisions are exactly N ({} members)", in_n.len()),
        extra.is_empty() && missing.is_empty(),
        format!("colliding_outside_N={extra:?} unique_in_N={missing:?}"),
    );
    report
}

/// The quoted subgraph-count identities.
pub fn identities(table: &ExceptionalTable, bound: usize) -> VerifyReport {
    let mut report = VerifyReport::new(Suite::Identities, bound);
    let s4 = table.graph("S4").expect("resolved");
    let t4 = table.graph("T4").expect("resolved");
    let q = |h: &Graph, g: &Graph| count_edge_subgraphs(h, g).expect("pattern has no isolated vertices");
    let mut exact = |claim: &str, h: &Graph, g: &Graph, expected: u64| {
        let got = q(h, g);
        report.check(claim, got == expected, format!("{}in{}={got}", format_graph6(h), format_graph6(g)));
    };
    exact("q(P4,S4)=2", &Graph::path(4), &s4, 2);
    exact("q(K12+K2,T4)=1", &named::p3_plus_k2(), &t4, 1);
    exact("q(P4,T4)=2", &Graph::path(4), &t4, 2);
    exact("q(K3,K4)=4", &Graph::complete(3), &Graph::complete(4), 4);
    exact("q(K3,K4-e)=2", &Graph::complete(3), &named::diamond(), 2);
    for (name, h) in [("S4", s4.clone()), ("K4-e", named::diamond()), ("K4", Graph::complete(4))] {
        let (a, b) = (q(&Graph::star(3), &h), q(&Graph::complete(3), &h));
        report.check(format!("q(K13,{name})=q(K3,{name})"), a == b, format!("{a}!={b}"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        let report = run_suite(Suite::Identities, 6).unwrap();
        assert!(report.ok(), "{}", report.to_text());
    }

    #[test]
    fn inversion_small_bound() {
        let report = run_suite(Suite::Inversion, 4).unwrap();
        assert!(report.ok(), "{}", report.to_text());
    }

    #[test]
    fn report_text_is_deterministic() {
        let a = run_suite(Suite::Inversion, 3).unwrap().to_text();
        let b = run_suite(Suite::Inversion, 3).unwrap().to_text();
        assert_eq!(a, b);
        assert!(a.starts_with("suite inversion bound=3\n"));
        assert!(a.ends_with("summary pass=2 fail=0\n"));
    }

    #[test]
    fn collision_examples() {
        let c = enumerate_catalog(4).unwrap();
        let q = collisions(&c, PosetKind::Q, None);
        // F0, F1 (two pairs), F2, F3 (two pairs) and K3+K2 / K13+K2.
        assert_eq!(q.len(), 7);
        let differ = collisions(&c, PosetKind::Q, Some(PosetKind::Omega));
        let sizes: Vec<usize> = differ.iter().map(Vec::len).collect();
        assert_eq!(sizes.len(), 3);
        assert!(differ.iter().any(|c| c.len() == 3 && c.contains(&crate::iso::canonical_graph(&Graph::complete(3)))));
        assert!(differ.iter().any(|c| c.contains(&crate::iso::canonical_graph(&Graph::cycle(4)))));
        assert!(collisions(&enumerate_catalog(1).unwrap(), PosetKind::Q, None).is_empty());
    }

    #[test]
    fn suite_names() {
        for s in ["inversion", "main-theorem", "families", "identities"] {
            assert_eq!(Suite::from_name(s).unwrap().name(), s);
        }
        assert!(Suite::from_name("everything").is_none());
    }
}
