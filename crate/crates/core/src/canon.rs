//! Canonical labeling and isomorphism search for vertex-colored digraphs
//! with labeled arcs.
//!
//! Both graphs and weighted posets are reduced to a [`Structure`]: a dense
//! `n x n` matrix of arc labels (0 = no arc) plus a color per vertex. The
//! search is individualization-refinement. Leaves are compared by their
//! relabeled matrices and the lexicographically largest one is the
//! canonical form. Automorphisms discovered at equal leaves prune the tree
//! in two ways: orbit pruning among the children of a node, and an
//! immediate return to the common ancestor when a leaf matches the first
//! leaf.

use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct Structure {
    n: usize,
    colors: Vec<u64>,
    arcs: Vec<u64>,
}

impl Structure {
    pub fn new(colors: Vec<u64>, arcs: Vec<u64>) -> Self {
        let n = colors.len();
        assert_eq!(arcs.len(), n * n, "arc matrix must be n x n");
        Structure { n, colors, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn arc(&self, i: usize, j: usize) -> u64 {
        self.arcs[i * self.n + j]
    }

    fn disjoint_union(&self, other: &Structure) -> Structure {
        let n = self.n + other.n;
        let mut arcs = vec![0; n * n];
        for i in 0..self.n {
            arcs[i * n..i * n + self.n].copy_from_slice(&self.arcs[i * self.n..(i + 1) * self.n]);
        }
        for i in 0..other.n {
            let row = (self.n + i) * n + self.n;
            arcs[row..row + other.n].copy_from_slice(&other.arcs[i * other.n..(i + 1) * other.n]);
        }
        let mut colors = self.colors.clone();
        colors.extend_from_slice(&other.colors);
        Structure { n, colors, arcs }
    }

    /// Words of the structure relabeled so vertex `v` lands at `pos[v]`.
    fn relabeled_words(&self, pos: &[usize]) -> Vec<u64> {
        let n = self.n;
        let mut inv = vec![0; n];
        for (v, &p) in pos.iter().enumerate() {
            inv[p] = v;
        }
        let mut words = Vec::with_capacity(n + n * n);
        words.extend(inv.iter().map(|&v| self.colors[v]));
        for &a in &inv {
            words.extend(inv.iter().map(|&b| self.arc(a, b)));
        }
        words
    }

    fn is_isomorphism(&self, other: &Structure, map: &[usize]) -> bool {
        (0..self.n).all(|i| {
            self.colors[i] == other.colors[map[i]]
                && (0..self.n).all(|j| self.arc(i, j) == other.arc(map[i], map[j]))
        })
    }
}

/// Result of canonical labeling.
#[derive(Clone, Debug)]
pub struct Canonical {
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<usize>,
    /// Vertex colors then arc labels, both in canonical order.
    pub words: Vec<u64>,
    /// Automorphisms found during the search (as vertex maps).
    pub generators: Vec<Vec<usize>>,
}

/// Ordered partition as a dense color per vertex: colors `0..cells`, cell
/// order given by color value.
type Coloring = Vec<u32>;

fn initial_coloring(colors: &[u64]) -> Coloring {
    let mut distinct: Vec<u64> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors
        .iter()
        .map(|c| distinct.binary_search(c).unwrap() as u32)
        .collect()
}

fn cell_count(coloring: &[u32]) -> usize {
    coloring.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Refines to the coarsest equitable partition below `coloring`. New colors
/// are ordered by (old color, neighborhood signature), so the result does
/// not depend on vertex numbering.
fn refine(s: &Structure, coloring: &mut Coloring) {
    let n = s.n;
    let mut cells = cell_count(coloring);
    loop {
        let mut sigs: Vec<(u32, u64, Vec<(u32, u64, u64)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u64, u64)> = (0..n)
                    .filter(|&w| w != v)
                    .filter_map(|w| {
                        let (out, inc) = (s.arc(v, w), s.arc(w, v));
                        (out != 0 || inc != 0).then_some((coloring[w], out, inc))
                    })
                    .collect();
                nb.sort_unstable();
                (coloring[v], s.arc(v, v), nb)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut next = vec![0u32; n];
        let mut color = 0u32;
        for (idx, &v) in order.iter().enumerate() {
            if idx > 0 && sigs[order[idx - 1]] != sigs[v] {
                color += 1;
            }
            next[v] = color;
        }
        let new_cells = if n == 0 { 0 } else { color as usize + 1 };
        sigs.clear();
        *coloring = next;
        if new_cells == cells {
            return;
        }
        cells = new_cells;
    }
}

/// Splits `v` off the front of its cell.
fn individualize(coloring: &[u32], v: usize) -> Coloring {
    let c = coloring[v];
    coloring
        .iter()
        .enumerate()
        .map(|(w, &cw)| {
            if w == v || cw < c {
                cw
            } else {
                cw + 1
            }
        })
        .collect()
}

/// First smallest non-singleton cell, members ascending.
fn target_cell(coloring: &[u32]) -> Option<Vec<usize>> {
    let cells = cell_count(coloring);
    let mut sizes = vec![0usize; cells];
    for &c in coloring {
        sizes[c as usize] += 1;
    }
    let (best, _) = sizes
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|&(c, &s)| (s, c))?;
    Some(
        coloring
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == best)
            .map(|(v, _)| v)
            .collect(),
    )
}

#[derive(Clone)]
struct Leaf {
    position: Vec<usize>,
    words: Vec<u64>,
    path: Vec<usize>,
}

struct Searcher<'a> {
    s: &'a Structure,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Searcher<'_> {
    /// Returns `Some(level)` to unwind the search to the node at `level`.
    fn search(&mut self, coloring: Coloring, path: &mut Vec<usize>) -> Option<usize> {
        let Some(cell) = target_cell(&coloring) else {
            return self.leaf(&coloring, path);
        };
        let level = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() && self.same_orbit(w, &explored, path) {
                continue;
            }
            explored.push(w);
            let mut child = individualize(&coloring, w);
            refine(self.s, &mut child);
            path.push(w);
            let jump = self.search(child, path);
            path.pop();
            if let Some(target) = jump {
                if target < level {
                    return Some(target);
                }
            }
        }
        None
    }

    fn leaf(&mut self, coloring: &[u32], path: &[usize]) -> Option<usize> {
        let position: Vec<usize> = coloring.iter().map(|&c| c as usize).collect();
        let words = self.s.relabeled_words(&position);
        let leaf = Leaf { position, words, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        if leaf.words == first.words {
            self.autos.push(automorphism(&first.position, &leaf.position));
            let common = first.path.iter().zip(&leaf.path).take_while(|(a, b)| a == b).count();
            return Some(common);
        }
        let best = self.best.as_ref().expect("best leaf set with first");
        match leaf.words.cmp(&best.words) {
            Ordering::Equal => self.autos.push(automorphism(&best.position, &leaf.position)),
            Ordering::Greater => self.best = Some(leaf),
            Ordering::Less => {}
        }
        None
    }

    /// Whether `w` shares an orbit with an explored vertex under the
    /// automorphisms found so far that fix `path` pointwise.
    fn same_orbit(&self, w: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.s.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for g in self.autos.iter().filter(|g| path.iter().all(|&p| g[p] == p)) {
            any = true;
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

/// The automorphism sending the vertex at each position of leaf `a` to the
/// vertex at the same position of leaf `b`.
fn automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut inv_b = vec![0; b.len()];
    for (v, &p) in b.iter().enumerate() {
        inv_b[p] = v;
    }
    a.iter().map(|&p| inv_b[p]).collect()
}

pub fn canonize(s: &Structure) -> Canonical {
    let mut coloring = initial_coloring(&s.colors);
    refine(s, &mut coloring);
    let mut searcher = Searcher { s, first: None, best: None, autos: Vec::new() };
    let mut path = Vec::new();
    searcher.search(coloring, &mut path);
    match searcher.best {
        Some(best) => Canonical {
            position: best.position,
            words: best.words,
            generators: searcher.autos,
        },
        None => Canonical { position: Vec::new(), words: Vec::new(), generators: Vec::new() },
    }
}

/// Every isomorphism from `a` onto `b`, as maps `a`-vertex -> `b`-vertex,
/// in a deterministic order. Refinement runs on the disjoint union so that
/// colors are comparable across the two sides.
pub fn isomorphisms(a: &Structure, b: &Structure) -> Vec<Vec<usize>> {
    if a.n != b.n {
        return Vec::new();
    }
    let n = a.n;
    if n == 0 {
        return vec![Vec::new()];
    }
    let joint = a.disjoint_union(b);
    let mut coloring = initial_coloring(&joint.colors);
    refine(&joint, &mut coloring);
    let mut out = Vec::new();
    joint_search(&joint, a, b, coloring, &mut out);
    out
}

fn joint_search(
    joint: &Structure,
    a: &Structure,
    b: &Structure,
    coloring: Coloring,
    out: &mut Vec<Vec<usize>>,
) {
    let n = a.n;
    let cells = cell_count(&coloring);
    let mut left = vec![Vec::new(); cells];
    let mut right = vec![Vec::new(); cells];
    for (v, &c) in coloring.iter().enumerate() {
        if v < n {
            left[c as usize].push(v);
        } else {
            right[c as usize].push(v - n);
        }
    }
    if left.iter().zip(&right).any(|(l, r)| l.len() != r.len()) {
        return;
    }
    let target = (0..cells)
        .filter(|&c| left[c].len() > 1)
        .min_by_key(|&c| (left[c].len(), c));
    match target {
        None => {
            let mut map = vec![0; n];
            for c in 0..cells {
                map[left[c][0]] = right[c][0];
            }
            if a.is_isomorphism(b, &map) {
                out.push(map);
            }
        }
        Some(c) => {
            let x = left[c][0];
            for &y in &right[c] {
                let mut child = individualize(&coloring, x);
                // `y` joins `x` in the new front cell.
                child[n + y] = child[x];
                refine(joint, &mut child);
                joint_search(joint, a, b, child, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Structure {
        let mut arcs = vec![0; n * n];
        for i in 0..n {
            let j = (i + 1) % n;
            arcs[i * n + j] = 1;
            arcs[j * n + i] = 1;
        }
        Structure::new(vec![0; n], arcs)
    }

    fn relabel(s: &Structure, perm: &[usize]) -> Structure {
        let n = s.n;
        let mut arcs = vec![0; n * n];
        let mut colors = vec![0; n];
        for i in 0..n {
            colors[perm[i]] = s.colors[i];
            for j in 0..n {
                arcs[perm[i] * n + perm[j]] = s.arc(i, j);
            }
        }
        Structure::new(colors, arcs)
    }

    #[test]
    fn cycle_automorphism_group_has_order_2n() {
        for n in 3..8 {
            let c = cycle(n);
            assert_eq!(isomorphisms(&c, &c).len(), 2 * n);
        }
    }

    #[test]
    fn canonical_words_are_relabeling_invariant() {
        let c = cycle(6);
        let base = canonize(&c).words;
        let perm = [3, 0, 5, 1, 4, 2];
        assert_eq!(canonize(&relabel(&c, &perm)).words, base);
    }

    #[test]
    fn generators_are_automorphisms() {
        let c = cycle(7);
        let canon = canonize(&c);
        assert!(!canon.generators.is_empty());
        for g in &canon.generators {
            assert!(c.is_isomorphism(&c, g));
        }
    }

    #[test]
    fn directed_arcs_are_respected() {
        // A directed 3-cycle and its reverse are isomorphic; a transitive
        // tournament is not.
        let mk = |pairs: &[(usize, usize)]| {
            let mut arcs = vec![0; 9];
            for &(i, j) in pairs {
                arcs[i * 3 + j] = 1;
            }
            Structure::new(vec![0; 3], arcs)
        };
        let cyc = mk(&[(0, 1), (1, 2), (2, 0)]);
        let rev = mk(&[(1, 0), (2, 1), (0, 2)]);
        let trans = mk(&[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(canonize(&cyc).words, canonize(&rev).words);
        assert_ne!(canonize(&cyc).words, canonize(&trans).words);
        assert_eq!(isomorphisms(&cyc, &rev).len(), 3);
        assert!(isomorphisms(&cyc, &trans).is_empty());
    }
}
