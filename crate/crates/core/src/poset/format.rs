//! Text form of a weighted poset.
//!
//! ```text
//! poset Q 3
//! elem 0 rank=1 graph=A_ v=2 k=1
//! elem 1 rank=2 graph=Bg v=3 k=1
//! elem 2 rank=3 graph=Bw v=3 k=1
//! w 0 1 2
//! w 0 2 3
//! w 1 2 3
//! ```
//!
//! Elements are sorted by rank, then by the certificate of their downset,
//! so isomorphic posets serialize identically. Abstract files carry only
//! `rank=`.

use std::collections::BTreeMap;

use super::{PosetKind, WeightedPoset};
use crate::error::PosetError;
use crate::graph6::{format_graph6, parse_graph6};

impl WeightedPoset {
    /// Element order used by the text form: `order[k]` is the element
    /// written with id `k`.
    pub fn file_order(&self) -> Vec<usize> {
        let downsets: Vec<_> = (0..self.len()).map(|i| self.restrict(&self.downset(i)).abstract_cert()).collect();
        let label_certs = self.label_certs();
        let positions = self.canonical_positions();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            let key = |i: usize| (self.rank(i), &downsets[i], label_certs.as_ref().map(|l| &l[i]), positions[i]);
            key(a).cmp(&key(b))
        });
        order
    }

    /// The poset renumbered into file order.
    pub fn normalized(&self) -> WeightedPoset {
        let order = self.file_order();
        let mut perm = vec![0; self.len()];
        for (k, &i) in order.iter().enumerate() {
            perm[i] = k;
        }
        self.permuted(&perm)
    }

    pub fn to_file_text(&self) -> String {
        let p = self.normalized();
        let mut out = format!("poset {} {}\n", p.kind().token(), p.len());
        for i in 0..p.len() {
            out.push_str(&format!("elem {i} rank={}", p.rank(i)));
            if let Some(g) = p.label(i) {
                out.push_str(&format!(" graph={} v={} k={}", format_graph6(g), g.n(), g.component_count()));
            }
            out.push('\n');
        }
        for ((i, j), w) in p.strict_pairs() {
            out.push_str(&format!("w {i} {j} {w}\n"));
        }
        out
    }

    /// Parses the text form. Either every element or none carries `graph=`;
    /// `v=` and `k=` must agree with the graph when both are present.
    pub fn from_file_text(text: &str) -> Result<WeightedPoset, PosetError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let err = |line: usize, reason: &str| PosetError::Format { line, reason: reason.to_string() };

        let (line, header) = lines.next().ok_or_else(|| err(0, "empty input"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let (kind, count) = match tokens[..] {
            ["poset", kind, count] => (
                PosetKind::from_token(kind).ok_or_else(|| err(line, "unknown poset kind"))?,
                count.parse::<usize>().map_err(|_| err(line, "bad element count"))?,
            ),
            _ => return Err(err(line, "expected `poset <Q|P|OMEGA> <count>`")),
        };

        let mut ranks = Vec::with_capacity(count);
        let mut labels = Vec::with_capacity(count);
        let mut strict = BTreeMap::new();
        for (line, text) in lines {
            let mut tokens = text.split_whitespace();
            match tokens.next() {
                Some("elem") => {
                    if !strict.is_empty() {
                        return Err(err(line, "element after weights"));
                    }
                    let id: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(line, "bad id"))?;
                    if id != ranks.len() {
                        return Err(err(line, "element ids must be consecutive from 0"));
                    }
                    let (mut rank, mut graph, mut v, mut k) = (None, None, None, None);
                    for field in tokens {
                        let (key, value) = field.split_once('=').ok_or_else(|| err(line, "expected key=value"))?;
                        let int = || value.parse::<i64>().map_err(|_| err(line, "bad integer"));
                        match key {
                            "rank" if rank.is_none() => rank = Some(int()?),
                            "v" if v.is_none() => v = Some(int()?),
                            "k" if k.is_none() => k = Some(int()?),
                            "graph" if graph.is_none() => {
                                graph = Some(parse_graph6(value).map_err(|e| err(line, &e.to_string()))?)
                            }
                            _ => return Err(err(line, "unknown or repeated field")),
                        }
                    }
                    ranks.push(rank.ok_or_else(|| err(line, "missing rank"))?);
                    if let Some(g) = &graph {
                        if v.is_some_and(|v| v != g.n() as i64) || k.is_some_and(|k| k != g.component_count() as i64) {
                            return Err(err(line, "v= or k= disagrees with graph"));
                        }
                    }
                    labels.push(graph);
                }
                Some("w") => {
                    let nums: Vec<u64> = tokens.map(|t| t.parse().map_err(|_| err(line, "bad integer"))).collect::<Result<_, _>>()?;
                    let [i, j, w] = nums[..] else {
                        return Err(err(line, "expected `w <low> <high> <weight>`"));
                    };
                    let (i, j) = (i as usize, j as usize);
                    if i >= count || j >= count {
                        return Err(err(line, "weight refers to an unknown element"));
                    }
                    if strict.insert((i, j), w).is_some() {
                        return Err(err(line, "repeated pair"));
                    }
                }
                _ => return Err(err(line, "expected `elem` or `w`")),
            }
        }
        if ranks.len() != count {
            return Err(err(0, "element count does not match header"));
        }
        let labels = if labels.iter().all(Option::is_some) && count > 0 {
            Some(labels.into_iter().map(|g| crate::iso::canonical_graph(&g.unwrap())).collect())
        } else if labels.iter().all(Option::is_none) {
            None
        } else {
            return Err(err(0, "graph= must be on every element or none"));
        };
        let poset = WeightedPoset::new(kind, ranks, &strict, labels)?;
        if let Some(certs) = poset.label_certs() {
            let mut sorted = certs.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != certs.len() {
                return Err(err(0, "two elements carry isomorphic graphs"));
            }
        }
        Ok(poset)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_omega, build_p, build_q};
    use super::*;
    use crate::graph::Graph;
    use crate::named;

    #[test]
    fn triangle_q_file() {
        let text = build_q(&Graph::complete(3)).unwrap().to_file_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "poset Q 3");
        assert_eq!(lines[1], "elem 0 rank=1 graph=A_ v=2 k=1");
        assert!(lines[2].starts_with("elem 1 rank=2 graph="));
        assert_eq!(lines[3], "elem 2 rank=3 graph=Bw v=3 k=1");
        assert_eq!(&lines[4..], &["w 0 1 2", "w 0 2 3", "w 1 2 3"]);
    }

    #[test]
    fn abstract_file_omits_labels() {
        let text = build_q(&Graph::complete(3)).unwrap().to_abstract().to_file_text();
        assert!(!text.contains("graph="));
        assert!(text.contains("elem 1 rank=2\n"));
    }

    #[test]
    fn round_trips() {
        for g in [named::paw(), Graph::cycle(5), named::p3_plus_2k2(), Graph::star(4)] {
            for p in [build_q(&g).unwrap(), build_p(&g).unwrap(), build_omega(&g).unwrap()] {
                let text = p.to_file_text();
                let back = WeightedPoset::from_file_text(&text).unwrap();
                assert_eq!(back.to_file_text(), text);
                assert_eq!(back.abstract_cert(), p.abstract_cert());
                let abs = p.to_abstract().to_file_text();
                assert_eq!(WeightedPoset::from_file_text(&abs).unwrap().to_file_text(), abs);
            }
        }
    }

    #[test]
    fn isomorphic_posets_serialize_identically() {
        let q = build_q(&named::chair()).unwrap();
        let n = q.len();
        let perm: Vec<usize> = (0..n).rev().collect();
        assert_eq!(q.permuted(&perm).to_file_text(), q.to_file_text());
        let a = build_q(&Graph::cycle(4)).unwrap().to_abstract().to_file_text();
        let b = build_q(&Graph::path(3).times(2)).unwrap().to_abstract().to_file_text();
        assert_eq!(a, b);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let bad = [
            "",
            "poset X 1\nelem 0 rank=1\n",
            "poset Q 2\nelem 0 rank=1\n",
            "poset Q 1\nelem 1 rank=1\n",
            "poset Q 1\nelem 0\n",
            "poset Q 2\nelem 0 rank=1\nelem 1 rank=2\nw 1 0 1\n",
            "poset Q 2\nelem 0 rank=1\nelem 1 rank=2\nw 0 1\n",
            "poset Q 1\nelem 0 rank=1 graph=A_ v=3\n",
            "poset Q 1\nelem 0 rank=1 color=red\n",
        ];
        for text in bad {
            assert!(WeightedPoset::from_file_text(text).is_err(), "{text:?}");
        }
    }
}
