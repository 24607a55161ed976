//! Exact isomorphism testing and canonical forms for small vertex-colored
//! graphs, by color refinement plus individualization.
//!
//! Canonical forms take the least leaf encoding over the search tree, pruned
//! by automorphisms discovered along the way. Isomorphism search refines the
//! disjoint union of the two graphs so both sides share one color numbering.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-vertex color classes, numbered contiguously from 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<u32>);

impl Coloring {
    pub fn uniform(n: usize) -> Self {
        Coloring(vec![0; n])
    }

    pub fn new(colors: Vec<u32>) -> Result<Self> {
        let mut seen: Vec<u32> = colors.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.iter().enumerate().any(|(i, &c)| c != i as u32) {
            return Err(Error::InvalidParams(
                "coloring classes must be numbered 0..c without gaps".into(),
            ));
        }
        Ok(Coloring(colors))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[u32] {
        &self.0
    }

    pub fn class_count(&self) -> usize {
        self.0.iter().max().map_or(0, |&c| c as usize + 1)
    }

    fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count()];
        for &c in &self.0 {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

/// Refine `colors` to the coarsest equitable partition finer than it. The
/// new numbering orders cells by (old color, sorted neighbor colors), so the
/// result depends only on the colored graph, not on vertex labels.
fn refine(g: &Graph, colors: &mut [u32]) {
    let n = g.order();
    let mut cells = distinct(colors);
    let mut keys: Vec<(u32, Vec<u32>, usize)> = Vec::with_capacity(n);
    loop {
        keys.clear();
        for v in 0..n {
            let mut sig: Vec<u32> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
            sig.sort_unstable();
            keys.push((colors[v], sig, v));
        }
        keys.sort_unstable();
        let mut next = 0u32;
        for i in 0..n {
            if i > 0 && (keys[i].0 != keys[i - 1].0 || keys[i].1 != keys[i - 1].1) {
                next += 1;
            }
            colors[keys[i].2] = next;
        }
        let now = if n == 0 { 0 } else { next as usize + 1 };
        if now == cells {
            return;
        }
        cells = now;
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Give each vertex in `chosen` a fresh color placed just before the rest of
/// its cell, then renumber contiguously.
fn individualize(colors: &[u32], chosen: &[usize]) -> Vec<u32> {
    let mut keyed: Vec<(u32, bool, usize)> = colors
        .iter()
        .enumerate()
        .map(|(v, &c)| (c, !chosen.contains(&v), v))
        .collect();
    keyed.sort_unstable();
    let mut out = vec![0; colors.len()];
    let mut next = 0u32;
    for i in 0..keyed.len() {
        if i > 0 && (keyed[i].0, keyed[i].1) != (keyed[i - 1].0, keyed[i - 1].1) {
            next += 1;
        }
        out[keyed[i].2] = next;
    }
    out
}

/// Cells as vertex lists, indexed by color.
fn cells_of(colors: &[u32]) -> Vec<Vec<usize>> {
    let count = colors.iter().max().map_or(0, |&c| c as usize + 1);
    let mut cells = vec![Vec::new(); count];
    for (v, &c) in colors.iter().enumerate() {
        cells[c as usize].push(v);
    }
    cells
}

/// First largest cell among those with more than `min` members.
fn target_cell(cells: &[Vec<usize>], min: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in cells.iter().enumerate() {
        if c.len() > min && best.is_none_or(|b| c.len() > cells[b].len()) {
            best = Some(i);
        }
    }
    best
}

/// Canonical labeling of a colored graph together with the relabeled graph
/// it produces. Equal forms mean isomorphic colored graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical position of vertex `v`.
    labeling: Vec<usize>,
    /// Vertex count, initial colors in canonical order, then adjacency rows.
    encoding: Vec<u64>,
}

impl CanonicalForm {
    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    /// Hex SHA-256 of the canonical encoding.
    pub fn digest(&self) -> String {
        sha256_hex_words(&self.encoding)
    }

    /// Whether the canonical encodings agree (exact, not digest based).
    pub fn same_graph(&self, other: &CanonicalForm) -> bool {
        self.encoding == other.encoding
    }
}

fn leaf_encoding(g: &Graph, initial: &[u32], position: &[usize]) -> Vec<u64> {
    let n = g.order();
    let words = n.div_ceil(64);
    let mut inverse = vec![0; n];
    for (v, &p) in position.iter().enumerate() {
        inverse[p] = v;
    }
    let mut enc = Vec::with_capacity(1 + n + n * words);
    enc.push(n as u64);
    enc.extend(inverse.iter().map(|&v| u64::from(initial[v])));
    for &v in &inverse {
        let mut row = vec![0u64; words];
        for &u in g.neighbors(v) {
            let p = position[u];
            row[p / 64] |= 1 << (p % 64);
        }
        enc.extend(row);
    }
    enc
}

struct Leaf {
    encoding: Vec<u64>,
    position: Vec<usize>,
    path: Vec<usize>,
}

struct CanonSearch<'a> {
    g: &'a Graph,
    initial: &'a [u32],
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn visit(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) -> Option<usize> {
        let cells = cells_of(&colors);
        let Some(target) = target_cell(&cells, 1) else {
            return self.leaf(&colors, path);
        };
        let depth = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for &w in &cells[target] {
            if !tried.is_empty() && self.equivalent_to_tried(path, &tried, w) {
                continue;
            }
            let mut child = individualize(&colors, &[w]);
            refine(self.g, &mut child);
            path.push(w);
            let jump = self.visit(child, path);
            path.pop();
            tried.push(w);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, colors: &[u32], path: &[usize]) -> Option<usize> {
        let position: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let encoding = leaf_encoding(self.g, self.initial, &position);
        let leaf = Leaf {
            encoding,
            position,
            path: path.to_vec(),
        };
        let (Some(first), Some(best)) = (&self.first, &self.best) else {
            self.best = Some(Leaf {
                encoding: leaf.encoding.clone(),
                position: leaf.position.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        let hit = [first, best]
            .into_iter()
            .find(|r| r.encoding == leaf.encoding)
            .map(|r| {
                (
                    automorphism_between(&leaf.position, &r.position),
                    common_prefix(&leaf.path, &r.path),
                )
            });
        if let Some((gamma, level)) = hit {
            self.generators.push(gamma);
            return Some(level);
        }
        if leaf.encoding < best.encoding {
            self.best = Some(leaf);
        }
        None
    }

    /// Whether `w` shares an orbit with a tried sibling under the known
    /// automorphisms that fix the current path pointwise.
    fn equivalent_to_tried(&self, path: &[usize], tried: &[usize], w: usize) -> bool {
        let fixing: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|gen| path.iter().all(|&p| gen[p] == p))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.g.order());
        for gen in fixing {
            for (v, &img) in gen.iter().enumerate() {
                uf.union(v, img);
            }
        }
        let root = uf.find(w);
        tried.iter().any(|&t| uf.find(t) == root)
    }
}

/// The vertex map taking the labeling `from` onto the labeling `to`.
fn automorphism_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inverse_to = vec![0; to.len()];
    for (v, &p) in to.iter().enumerate() {
        inverse_to[p] = v;
    }
    from.iter().map(|&p| inverse_to[p]).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Canonical form of `g` under relabelings that preserve `initial`.
pub fn canonical_form(g: &Graph, initial: &Coloring) -> CanonicalForm {
    assert_eq!(g.order(), initial.len(), "coloring must cover every vertex");
    let mut colors = initial.colors().to_vec();
    refine(g, &mut colors);
    let mut search = CanonSearch {
        g,
        initial: initial.colors(),
        first: None,
        best: None,
        generators: Vec::new(),
    };
    search.visit(colors, &mut Vec::new());
    let best = search.best.expect("search tree always has a leaf");
    CanonicalForm {
        labeling: best.position,
        encoding: best.encoding,
    }
}

/// Canonical form with every vertex in one color class.
pub fn canonical_form_uncolored(g: &Graph) -> CanonicalForm {
    canonical_form(g, &Coloring::uniform(g.order()))
}

/// Whether `map` is a color-respecting isomorphism from `g` onto `h`, checked
/// on every vertex pair.
pub fn is_isomorphism(g: &Graph, h: &Graph, gc: &Coloring, hc: &Coloring, map: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &w in map {
        if w >= n || hit[w] {
            return false;
        }
        hit[w] = true;
    }
    if (0..n).any(|v| gc.colors()[v] != hc.colors()[map[v]]) {
        return false;
    }
    (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == h.has_edge(map[u], map[v])))
}

/// Isomorphism from `g` onto `h` derived from their canonical forms, if
/// the forms agree. The map is verified before it is returned.
pub fn isomorphism_from_forms(
    g: &Graph,
    h: &Graph,
    gc: &Coloring,
    hc: &Coloring,
    gf: &CanonicalForm,
    hf: &CanonicalForm,
) -> Option<Vec<usize>> {
    if !gf.same_graph(hf) {
        return None;
    }
    let map = automorphism_between(&gf.labeling, &hf.labeling);
    is_isomorphism(g, h, gc, hc, &map).then_some(map)
}

/// A color-respecting isomorphism `g -> h` if one exists.
pub fn are_isomorphic(g: &Graph, h: &Graph, gc: &Coloring, hc: &Coloring) -> Option<Vec<usize>> {
    let n = g.order();
    assert_eq!(gc.len(), n, "coloring must cover every vertex of g");
    assert_eq!(hc.len(), h.order(), "coloring must cover every vertex of h");
    if h.order() != n || g.edge_count() != h.edge_count() || gc.class_sizes() != hc.class_sizes() {
        return None;
    }
    let union = g.disjoint_union(h);
    let mut colors: Vec<u32> = gc.colors().iter().chain(hc.colors()).copied().collect();
    refine(&union, &mut colors);
    let map = pair_search(&union, n, colors)?;
    assert!(
        is_isomorphism(g, h, gc, hc, &map),
        "isomorphism search returned an invalid map"
    );
    Some(map)
}

/// Each cell of the union must hold as many `g` vertices as `h` vertices.
fn balanced(cells: &[Vec<usize>], n: usize) -> bool {
    cells
        .iter()
        .all(|c| c.iter().filter(|&&v| v < n).count() * 2 == c.len())
}

fn pair_search(union: &Graph, n: usize, colors: Vec<u32>) -> Option<Vec<usize>> {
    let cells = cells_of(&colors);
    if !balanced(&cells, n) {
        return None;
    }
    let Some(target) = target_cell(&cells, 2) else {
        let mut map = vec![0; n];
        for c in &cells {
            map[c[0]] = c[1] - n;
        }
        return Some(map);
    };
    let cell = &cells[target];
    let v = cell[0];
    for &w in cell.iter().filter(|&&w| w >= n) {
        let mut child = individualize(&colors, &[v, w]);
        refine(union, &mut child);
        if let Some(map) = pair_search(union, n, child) {
            return Some(map);
        }
    }
    None
}

/// Hex SHA-256 of little-endian words.
pub(crate) fn sha256_hex_words(words: &[u64]) -> String {
    let mut hasher = Sha256::new();
    for w in words {
        hasher.update(w.to_le_bytes());
    }
    let mut out = String::with_capacity(64);
    for b in hasher.finalize().iter() {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::{kneser_graph, KneserParams};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn uniform(g: &Graph) -> Coloring {
        Coloring::uniform(g.order())
    }

    fn iso(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
        are_isomorphic(g, h, &uniform(g), &uniform(h))
    }

    fn petersen() -> Graph {
        kneser_graph(KneserParams::new(5, 2).unwrap())
    }

    /// Dodecahedron as the generalized Petersen graph GP(10, 2).
    fn dodecahedron() -> Graph {
        let mut edges = Vec::new();
        for i in 0..10 {
            edges.push((i, (i + 1) % 10));
            edges.push((i, 10 + i));
            edges.push((10 + i, 10 + (i + 2) % 10));
        }
        Graph::from_edges(20, edges).unwrap()
    }

    fn random_perm(n: usize, rng: &mut rand::rngs::StdRng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn coloring_validation() {
        assert!(Coloring::new(vec![0, 2]).is_err());
        assert!(Coloring::new(vec![1, 0, 1]).is_ok());
        assert_eq!(Coloring::new(vec![1, 0, 1]).unwrap().class_count(), 2);
    }

    #[test]
    fn canonical_relabel_invariance() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let c5 = Graph::cycle(5);
        let base = canonical_form_uncolored(&c5);
        for _ in 0..20 {
            let p = random_perm(5, &mut rng);
            let other = canonical_form_uncolored(&c5.permuted(&p));
            assert!(base.same_graph(&other));
            assert_eq!(base.digest(), other.digest());
        }
    }

    #[test]
    fn canonical_separates() {
        let c6 = Graph::cycle(6);
        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_ne!(
            canonical_form_uncolored(&c6).digest(),
            canonical_form_uncolored(&two_triangles).digest()
        );
        let desargues = petersen().bipartite_double_cover();
        let dodeca = dodecahedron();
        assert_eq!(dodeca.girth(), crate::graph::Length::Finite(5));
        assert_ne!(
            canonical_form_uncolored(&desargues).digest(),
            canonical_form_uncolored(&dodeca).digest()
        );
        assert!(iso(&desargues, &dodeca).is_none());
    }

    #[test]
    fn colors_matter() {
        let p = Graph::path(3);
        let ends = Coloring::new(vec![1, 0, 1]).unwrap();
        let mid = Coloring::new(vec![0, 1, 0]).unwrap();
        let left = Coloring::new(vec![1, 0, 0]).unwrap();
        assert!(are_isomorphic(&p, &p, &ends, &ends).is_some());
        assert!(are_isomorphic(&p, &p, &ends, &mid).is_none());
        let m = are_isomorphic(&p, &p, &left, &Coloring::new(vec![0, 0, 1]).unwrap()).unwrap();
        assert_eq!(m, vec![2, 1, 0]);
        assert_ne!(canonical_form(&p, &ends), canonical_form(&p, &mid));
    }

    #[test]
    fn isomorphism_examples() {
        let p = petersen();
        let m = iso(&p, &p).unwrap();
        assert!(is_isomorphism(&p, &p, &uniform(&p), &uniform(&p), &m));
        let k5k5 = Graph::complete(5).disjoint_union(&Graph::complete(5));
        assert!(iso(&p, &k5k5).is_none());
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let q = p.permuted(&random_perm(10, &mut rng));
        assert!(iso(&p, &q).is_some());
        let gf = canonical_form_uncolored(&p);
        let hf = canonical_form_uncolored(&q);
        assert!(isomorphism_from_forms(&p, &q, &uniform(&p), &uniform(&q), &gf, &hf).is_some());
    }

    #[test]
    fn symmetric_graphs_are_fast_and_consistent() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let kg72 = kneser_graph(KneserParams::new(7, 2).unwrap());
        let d = kneser_graph(KneserParams::new(6, 2).unwrap()).bipartite_double_cover();
        for g in [kg72, d] {
            let f = canonical_form_uncolored(&g);
            for _ in 0..5 {
                let h = g.permuted(&random_perm(g.order(), &mut rng));
                assert!(f.same_graph(&canonical_form_uncolored(&h)));
                assert!(iso(&g, &h).is_some());
            }
        }
    }

    #[test]
    fn empty_and_tiny() {
        let e = Graph::empty(0);
        assert_eq!(iso(&e, &e), Some(vec![]));
        let f = canonical_form_uncolored(&e);
        assert!(f.labeling().is_empty());
        let one = Graph::empty(1);
        assert_eq!(iso(&one, &one), Some(vec![0]));
        assert!(iso(&Graph::empty(3), &Graph::path(3)).is_none());
    }
}
