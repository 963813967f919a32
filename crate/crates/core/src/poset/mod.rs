//! Weighted posets: the concrete and abstract `Q(G)`, `P(G)` and `Ω(G)`.
//!
//! Weights live on every comparable pair, not just covers, and the order is
//! read off the weights: `x <= y` iff `weight(x, y) > 0`. The diagonal
//! weight is always 1.

mod build;
mod format;

use std::collections::BTreeMap;
use std::fmt;

use crate::canon::{self, Structure};
use crate::error::PosetError;
use crate::graph::Graph;
use crate::iso::{canonical_form, CanonicalCert};

pub use build::{build_omega, build_p, build_poset, build_q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosetKind {
    /// Edge-subgraph poset, ranked by edge count.
    Q,
    /// Induced-subgraph poset, ranked by vertex count.
    P,
    /// Bond lattice, ranked by `v(G) - k(h)`.
    Omega,
}

impl PosetKind {
    pub fn token(self) -> &'static str {
        match self {
            PosetKind::Q => "Q",
            PosetKind::P => "P",
            PosetKind::Omega => "OMEGA",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "Q" => Some(PosetKind::Q),
            "P" => Some(PosetKind::P),
            "OMEGA" => Some(PosetKind::Omega),
            _ => None,
        }
    }

    fn code(self) -> u8 {
        match self {
            PosetKind::Q => 0,
            PosetKind::P => 1,
            PosetKind::Omega => 2,
        }
    }
}

impl fmt::Display for PosetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoset {
    kind: PosetKind,
    ranks: Vec<i64>,
    /// Row-major `n x n`; entry `(i, j)` is the weight of `i <= j`, 0 when
    /// incomparable or `j < i`.
    weights: Vec<u64>,
    /// Canonical representatives of the element graphs (concrete posets).
    labels: Option<Vec<Graph>>,
}

/// Certificate of a weighted poset up to isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractPosetCert(Vec<u8>);

impl AbstractPosetCert {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Debug for AbstractPosetCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.to_hex();
        if h.len() > 24 {
            write!(f, "PosetCert({}..{}B)", &h[..24], self.0.len())
        } else {
            write!(f, "PosetCert({h})")
        }
    }
}

impl WeightedPoset {
    /// Validates and builds a poset from strict comparable pairs
    /// `(low, high) -> weight`.
    pub fn new(
        kind: PosetKind,
        ranks: Vec<i64>,
        strict: &BTreeMap<(usize, usize), u64>,
        labels: Option<Vec<Graph>>,
    ) -> Result<Self, PosetError> {
        let n = ranks.len();
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(PosetError::LabelCount(n, l.len()));
            }
        }
        let mut weights = vec![0u64; n * n];
        for i in 0..n {
            weights[i * n + i] = 1;
        }
        for (&(i, j), &w) in strict {
            if i >= n || j >= n || i == j {
                return Err(PosetError::NotAPartialOrder(format!("bad pair ({i}, {j})")));
            }
            if w == 0 {
                return Err(PosetError::NotAPartialOrder(format!("zero weight on ({i}, {j})")));
            }
            weights[i * n + j] = w;
        }
        let poset = WeightedPoset { kind, ranks, weights, labels };
        poset.validate()?;
        Ok(poset)
    }

    fn validate(&self) -> Result<(), PosetError> {
        let n = self.len();
        let bad = |m: String| Err(PosetError::NotAPartialOrder(m));
        for i in 0..n {
            for j in i + 1..n {
                if self.leq(i, j) && self.leq(j, i) {
                    return bad(format!("{i} and {j} are mutually comparable"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                if self.ranks[i] >= self.ranks[j] {
                    return bad(format!("{i} < {j} but rank does not increase"));
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return bad(format!("{i} <= {j} <= {k} but not {i} <= {k}"));
                    }
                }
            }
        }
        let minimal = self.minimal_elements();
        let maximal = self.maximal_elements();
        match self.kind {
            PosetKind::Q | PosetKind::P => {
                if minimal.len() != 1 || self.ranks[minimal[0]] != 1 {
                    return bad(format!("{} poset needs a unique minimum of rank 1", self.kind));
                }
            }
            PosetKind::Omega => {
                if minimal.len() != 1 || maximal.len() != 1 || self.ranks[minimal[0]] != 0 {
                    return bad("bond lattice needs a bottom of rank 0 and a unique top".into());
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, i: usize) -> i64 {
        self.ranks[i]
    }

    pub fn ranks(&self) -> &[i64] {
        &self.ranks
    }

    /// Weight of `i <= j`; 0 when not comparable that way.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.weights[i * self.len() + j]
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.weight(i, j) > 0
    }

    #[inline]
    pub fn less(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Strict comparable pairs with weights, sorted.
    pub fn strict_pairs(&self) -> BTreeMap<(usize, usize), u64> {
        let n = self.len();
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) {
                    out.insert((i, j), self.weight(i, j));
                }
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| !(0..self.len()).any(|i| self.less(i, j))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !(0..self.len()).any(|j| self.less(i, j))).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements()[..] {
            [b] => Some(b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements()[..] {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn labels(&self) -> Option<&[Graph]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> Option<&Graph> {
        self.labels.as_ref().map(|l| &l[i])
    }

    pub fn is_concrete(&self) -> bool {
        self.labels.is_some()
    }

    /// Index of the element labeled by a graph isomorphic to `g`.
    pub fn find_label(&self, g: &Graph) -> Option<usize> {
        let target = canonical_form(g).cert;
        self.labels.as_ref()?.iter().position(|l| canonical_form(l).cert == target)
    }

    pub fn label_certs(&self) -> Option<Vec<CanonicalCert>> {
        self.labels.as_ref().map(|l| l.iter().map(|g| canonical_form(g).cert).collect())
    }

    /// The same poset with labels forgotten.
    pub fn to_abstract(&self) -> WeightedPoset {
        WeightedPoset { labels: None, ..self.clone() }
    }

    /// Renumbers element `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> WeightedPoset {
        let n = self.len();
        let mut ranks = vec![0; n];
        let mut weights = vec![0; n * n];
        for i in 0..n {
            ranks[perm[i]] = self.ranks[i];
            for j in 0..n {
                weights[perm[i] * n + perm[j]] = self.weight(i, j);
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = l.clone();
            for (i, g) in l.iter().enumerate() {
                out[perm[i]] = g.clone();
            }
            out
        });
        WeightedPoset { kind: self.kind, ranks, weights, labels }
    }

    /// Sub-poset on `elements` (kept in the given order), with labels.
    pub fn restrict(&self, elements: &[usize]) -> WeightedPoset {
        let m = elements.len();
        let mut weights = vec![0; m * m];
        for (a, &i) in elements.iter().enumerate() {
            for (b, &j) in elements.iter().enumerate() {
                weights[a * m + b] = self.weight(i, j);
            }
        }
        WeightedPoset {
            kind: self.kind,
            ranks: elements.iter().map(|&i| self.ranks[i]).collect(),
            weights,
            labels: self.labels.as_ref().map(|l| elements.iter().map(|&i| l[i].clone()).collect()),
        }
    }

    /// Elements `j <= i`, ascending.
    pub fn downset(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    fn structure(&self) -> Structure {
        let n = self.len();
        let mut arcs = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) {
                    arcs[i * n + j] = 2 * self.weight(i, j);
                    arcs[j * n + i] = 2 * self.weight(i, j) + 1;
                }
            }
        }
        // Ranks are shifted so negative values still order correctly.
        let colors = self.ranks.iter().map(|&r| (r as u64) ^ (1 << 63)).collect();
        Structure::new(colors, arcs)
    }

    fn canonical(&self) -> (AbstractPosetCert, Vec<usize>) {
        let canon = canon::canonize(&self.structure());
        let n = self.len();
        let mut bytes = vec![self.kind.code()];
        push_varint(&mut bytes, n as u64);
        for &c in &canon.words[..n] {
            push_varint(&mut bytes, c ^ (1 << 63));
        }
        // Upper triangle only: the lower one mirrors it.
        for i in 0..n {
            for j in i + 1..n {
                let a = canon.words[n + i * n + j];
                if a != 0 {
                    push_varint(&mut bytes, j as u64);
                    push_varint(&mut bytes, a);
                }
            }
            bytes.push(0xff);
        }
        (AbstractPosetCert(bytes), canon.position)
    }

    /// Label-independent certificate: equal iff the posets are isomorphic
    /// as weighted posets (and of the same kind).
    pub fn abstract_cert(&self) -> AbstractPosetCert {
        self.canonical().0
    }

    /// Canonical index of every element.
    pub fn canonical_positions(&self) -> Vec<usize> {
        self.canonical().1
    }

    /// Every weight- and order-preserving bijection onto `other`, as maps
    /// from this poset's elements to `other`'s.
    pub fn isomorphisms(&self, other: &WeightedPoset) -> Vec<Vec<usize>> {
        if self.kind != other.kind {
            return Vec::new();
        }
        canon::isomorphisms(&self.structure(), &other.structure())
    }
}

fn push_varint(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

pub fn abstract_cert(p: &WeightedPoset) -> AbstractPosetCert {
    p.abstract_cert()
}

pub fn poset_isomorphic(a: &WeightedPoset, b: &WeightedPoset) -> bool {
    a.len() == b.len() && a.abstract_cert() == b.abstract_cert()
}

/// Legitimate labelings of an abstract edge-subgraph poset onto `Q(candidate)`.
#[derive(Clone, Debug)]
pub struct Labelings {
    /// The concrete `Q(candidate)`.
    pub target: WeightedPoset,
    /// One map per labeling: abstract element -> element of `target`.
    pub maps: Vec<Vec<usize>>,
}

impl Labelings {
    /// Graph assigned to abstract element `x` by labeling `which`.
    pub fn image(&self, which: usize, x: usize) -> &Graph {
        self.target.label(self.maps[which][x]).expect("target is concrete")
    }
}

/// Every weight-preserving order isomorphism from `abstract_q` onto
/// `Q(candidate)`. Empty iff `candidate` is not a Q-reconstruction.
pub fn legitimate_labelings(abstract_q: &WeightedPoset, candidate: &Graph) -> Result<Labelings, PosetError> {
    let target = build_q(candidate)?;
    let maps = if abstract_q.len() == target.len() { abstract_q.isomorphisms(&target) } else { Vec::new() };
    Ok(Labelings { target, maps })
}
