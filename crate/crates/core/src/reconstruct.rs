//! From an abstract edge-subgraph poset to the abstract bond lattice and
//! the abstract induced-subgraph poset.
//!
//! Candidates are the catalog graphs with the same abstract `Q`. Each
//! legitimate labeling onto a candidate assigns `(v, k)` to every element;
//! the inversion then rebuilds `ω` from `q` and that assignment. The result
//! is unique exactly when every assignment yields the same lattice.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::catalog::Catalog;
use crate::error::ReconstructError;
use crate::graph::Graph;
use crate::graph6::format_graph6;
use crate::poset::{build_omega, build_p, build_q, legitimate_labelings, AbstractPosetCert, Labelings, PosetKind, WeightedPoset};

/// Catalog graphs grouped by abstract `Q` certificate, one edge level at a
/// time and only when asked for.
pub struct CatalogIndex {
    catalog: Catalog,
    levels: Vec<OnceLock<BTreeMap<AbstractPosetCert, Vec<usize>>>>,
}

impl CatalogIndex {
    pub fn new(catalog: Catalog) -> Self {
        let levels = (0..=catalog.max_edges()).map(|_| OnceLock::new()).collect();
        CatalogIndex { catalog, levels }
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    fn level(&self, edges: usize) -> &BTreeMap<AbstractPosetCert, Vec<usize>> {
        self.levels[edges].get_or_init(|| {
            let entries = self.catalog.entries();
            let members: Vec<usize> = (0..entries.len()).filter(|&i| entries[i].graph.edge_count() == edges).collect();
            let certs: Vec<(AbstractPosetCert, usize)> = members
                .par_iter()
                .map(|&i| (build_q(&entries[i].graph).expect("catalog graphs have edges").abstract_cert(), i))
                .collect();
            let mut map: BTreeMap<_, Vec<usize>> = BTreeMap::new();
            for (c, i) in certs {
                map.entry(c).or_default().push(i);
            }
            map
        })
    }

    /// Catalog graphs `H` with `Q̄(H) ≅ abstract_q`, in catalog order.
    pub fn q_reconstructions(&self, abstract_q: &WeightedPoset) -> Result<Vec<Graph>, ReconstructError> {
        if abstract_q.kind() != PosetKind::Q {
            return Err(ReconstructError::WrongKind);
        }
        let top = abstract_q.top().ok_or(ReconstructError::WrongKind)?;
        let rank = abstract_q.rank(top);
        if rank < 1 || rank as usize > self.catalog.max_edges() {
            return Err(ReconstructError::RankExceedsCatalog { rank, bound: self.catalog.max_edges() });
        }
        let found = self.level(rank as usize).get(&abstract_q.abstract_cert()).cloned().unwrap_or_default();
        Ok(found.into_iter().map(|i| self.catalog.entries()[i].graph.clone()).collect())
    }
}

pub fn q_reconstructions(abstract_q: &WeightedPoset, index: &CatalogIndex) -> Result<Vec<Graph>, ReconstructError> {
    index.q_reconstructions(abstract_q)
}

/// `(v, k)` of every element, across all legitimate labelings onto all
/// candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    /// Values seen for each element.
    pub values: Vec<BTreeSet<(usize, usize)>>,
    /// Distinct complete assignments, one per class of labelings, each with
    /// the candidate it came from.
    pub variants: Vec<(Vec<(usize, usize)>, Graph)>,
}

impl Annotation {
    pub fn is_determined(&self, x: usize) -> bool {
        self.values[x].len() == 1
    }

    /// The value of `x` when determined.
    pub fn vk(&self, x: usize) -> Option<(usize, usize)> {
        if self.is_determined(x) {
            self.values[x].first().copied()
        } else {
            None
        }
    }

    pub fn determined(&self) -> Vec<Option<(usize, usize)>> {
        (0..self.values.len()).map(|x| self.vk(x)).collect()
    }

    pub fn ambiguous_elements(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| !self.is_determined(x)).collect()
    }
}

fn labelings(abstract_q: &WeightedPoset, index: &CatalogIndex) -> Result<Vec<(Graph, Labelings)>, ReconstructError> {
    let candidates = index.q_reconstructions(abstract_q)?;
    if candidates.is_empty() {
        return Err(ReconstructError::NoCandidates);
    }
    let abstract_q = abstract_q.to_abstract();
    candidates
        .into_iter()
        .map(|h| Ok((h.clone(), legitimate_labelings(&abstract_q, &h)?)))
        .collect()
}

pub fn annotate_vk(abstract_q: &WeightedPoset, index: &CatalogIndex) -> Result<Annotation, ReconstructError> {
    let mut values = vec![BTreeSet::new(); abstract_q.len()];
    let mut variants: Vec<(Vec<(usize, usize)>, Graph)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (h, labs) in labelings(abstract_q, index)? {
        for which in 0..labs.maps.len() {
            let assignment: Vec<(usize, usize)> = (0..abstract_q.len())
                .map(|x| {
                    let g = labs.image(which, x);
                    (g.n(), g.component_count())
                })
                .collect();
            for (x, &vk) in assignment.iter().enumerate() {
                values[x].insert(vk);
            }
            if seen.insert(assignment.clone()) {
                variants.push((assignment, h.clone()));
            }
        }
    }
    Ok(Annotation { values, variants })
}

/// Rebuilds `ω` between elements of an edge-subgraph poset from `q` and a
/// `(v, k)` assignment, memoizing every `ω(j, k)` it expands.
pub struct Inverter<'a> {
    q: &'a WeightedPoset,
    vk: Vec<Option<(usize, usize)>>,
    memo: HashMap<(usize, usize), u64>,
}

impl<'a> Inverter<'a> {
    pub fn new(q: &'a WeightedPoset, vk: Vec<Option<(usize, usize)>>) -> Self {
        Inverter { q, vk, memo: HashMap::new() }
    }

    fn vk(&self, x: usize) -> Result<(usize, usize), ReconstructError> {
        self.vk[x].ok_or_else(|| ReconstructError::Ambiguous(vec![x]))
    }

    /// `ω(i, k)`: 1 if `i = k`; 0 if `i ≰ k` or `(v, k)` agree; otherwise
    /// `q(i, k) - Σ q(i, j) ω(j, k)` over `j > i` with the same `(v, k)` as `i`.
    pub fn omega(&mut self, i: usize, k: usize) -> Result<u64, ReconstructError> {
        if i == k {
            return Ok(1);
        }
        if !self.q.leq(i, k) {
            return Ok(0);
        }
        if let Some(&w) = self.memo.get(&(i, k)) {
            return Ok(w);
        }
        let vk_i = self.vk(i)?;
        if vk_i == self.vk(k)? {
            self.memo.insert((i, k), 0);
            return Ok(0);
        }
        let mut total = self.q.weight(i, k) as i128;
        for j in 0..self.q.len() {
            if j == i || !self.q.less(i, j) || !self.q.leq(j, k) {
                continue;
            }
            if self.vk(j)? == vk_i {
                total -= self.q.weight(i, j) as i128 * self.omega(j, k)? as i128;
            }
        }
        let w = u64::try_from(total)
            .map_err(|_| ReconstructError::CrossCheck(format!("negative ω({i}, {k}) = {total}")))?;
        self.memo.insert((i, k), w);
        Ok(w)
    }
}

/// `ω(i, k)` using only determined annotations.
pub fn invert_omega(abstract_q: &WeightedPoset, ann: &Annotation, i: usize, k: usize) -> Result<u64, ReconstructError> {
    Inverter::new(abstract_q, ann.determined()).omega(i, k)
}

/// Abstract bond lattice from `q` and one complete `(v, k)` assignment.
pub fn omega_from_assignment(q: &WeightedPoset, vk: &[(usize, usize)]) -> Result<WeightedPoset, ReconstructError> {
    let top = q.top().ok_or(ReconstructError::WrongKind)?;
    let (v_g, _) = vk[top];
    let mut inv = Inverter::new(q, vk.iter().copied().map(Some).collect());
    let mut members = Vec::new();
    for x in 0..q.len() {
        if inv.omega(x, top)? > 0 {
            members.push(x);
        }
    }
    // Element 0 is the edgeless spanning graph; element a + 1 is the image
    // whose core is `members[a]`.
    let mut ranks = vec![0i64];
    for &x in &members {
        let (v, k) = vk[x];
        let components = k + (v_g - v);
        ranks.push((v_g - components) as i64);
    }
    let mut strict = BTreeMap::new();
    for (a, &x) in members.iter().enumerate() {
        strict.insert((0, a + 1), 1);
        for (b, &y) in members.iter().enumerate() {
            if a != b {
                let w = inv.omega(x, y)?;
                if w > 0 {
                    strict.insert((a + 1, b + 1), w);
                }
            }
        }
    }
    Ok(WeightedPoset::new(PosetKind::Omega, ranks, &strict, None)?)
}

/// One class of an ambiguous reconstruction, with a witness graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguousClass {
    pub witness: Graph,
    pub cert: AbstractPosetCert,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub target: PosetKind,
    /// Sorted by certificate.
    pub classes: Vec<AmbiguousClass>,
}

impl AmbiguityReport {
    pub fn to_text(&self) -> String {
        let target = if self.target == PosetKind::Omega { "omega" } else { "p" };
        let mut out = format!("AMBIGUOUS target={target}\n");
        for c in &self.classes {
            let _ = writeln!(out, "candidate {} cert={}", format_graph6(&c.witness), c.cert.to_hex());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success(WeightedPoset),
    Ambiguous(AmbiguityReport),
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success(_))
    }

    pub fn poset(&self) -> Option<&WeightedPoset> {
        match self {
            Outcome::Success(p) => Some(p),
            Outcome::Ambiguous(_) => None,
        }
    }
}

fn report(target: PosetKind, classes: BTreeMap<AbstractPosetCert, Graph>) -> AmbiguityReport {
    AmbiguityReport {
        target,
        classes: classes.into_iter().map(|(cert, witness)| AmbiguousClass { witness, cert }).collect(),
    }
}

/// Keeps the first witness seen per certificate, preferring smaller graph6.
fn record(classes: &mut BTreeMap<AbstractPosetCert, Graph>, cert: AbstractPosetCert, g: &Graph) {
    let entry = classes.entry(cert).or_insert_with(|| g.clone());
    if format_graph6(g) < format_graph6(entry) {
        *entry = g.clone();
    }
}

pub fn reconstruct_omega(abstract_q: &WeightedPoset, index: &CatalogIndex) -> Result<Outcome, ReconstructError> {
    let ann = annotate_vk(abstract_q, index)?;
    let q = abstract_q.to_abstract();
    let mut inverted: BTreeMap<AbstractPosetCert, (WeightedPoset, Graph)> = BTreeMap::new();
    for (assignment, h) in &ann.variants {
        let omega = omega_from_assignment(&q, assignment)?;
        let cert = omega.abstract_cert();
        let expected = build_omega(h)?.abstract_cert();
        if cert != expected {
            return Err(ReconstructError::CrossCheck(format_graph6(h)));
        }
        inverted.entry(cert).or_insert((omega, h.clone()));
    }
    if inverted.len() == 1 {
        let (_, (omega, _)) = inverted.into_iter().next().unwrap();
        return Ok(Outcome::Success(omega));
    }
    let mut classes = BTreeMap::new();
    for (cert, (_, h)) in inverted {
        record(&mut classes, cert, &h);
    }
    Ok(Outcome::Ambiguous(report(PosetKind::Omega, classes)))
}

/// `P̄` shared by every candidate whose `Ω̄` matches the reconstructed one
/// (all candidates when the bond lattice itself is ambiguous).
pub fn reconstruct_p(abstract_q: &WeightedPoset, index: &CatalogIndex) -> Result<Outcome, ReconstructError> {
    let omega = reconstruct_omega(abstract_q, index)?;
    let omega_cert = omega.poset().map(|p| p.abstract_cert());
    let mut classes: BTreeMap<AbstractPosetCert, Graph> = BTreeMap::new();
    let mut posets = BTreeMap::new();
    for h in index.q_reconstructions(abstract_q)? {
        if let Some(c) = &omega_cert {
            if build_omega(&h)?.abstract_cert() != *c {
                continue;
            }
        }
        let p = build_p(&h)?.to_abstract();
        let cert = p.abstract_cert();
        record(&mut classes, cert.clone(), &h);
        posets.entry(cert).or_insert(p);
    }
    if posets.len() == 1 {
        return Ok(Outcome::Success(posets.into_values().next().unwrap()));
    }
    Ok(Outcome::Ambiguous(report(PosetKind::P, classes)))
}
