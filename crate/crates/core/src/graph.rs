//! Finite simple undirected graphs with exact metric algorithms.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Graphs up to this order also carry a bit adjacency matrix.
const MATRIX_LIMIT: usize = 4096;

/// A length that may be infinite (girth of a forest, diameter of a
/// disconnected graph). Serialized as a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u32),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u32> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Length::Infinite
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(v) => s.serialize_u32(*v),
            Length::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A set of vertex indices backed by a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_indices(universe: usize, vs: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(universe);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} out of range");
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    matrix: Option<Vec<VertexSet>>,
    edges: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edge_list())
            .finish()
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    /// Build from an edge list. Duplicate edges are merged; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParams(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    /// Build from neighbor lists that are already symmetric, sorted and loop-free.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(u, l)| { l.windows(2).all(|w| w[0] < w[1]) && l.iter().all(|&v| v != u) }));
        let n = adj.len();
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let matrix = (n <= MATRIX_LIMIT).then(|| {
            adj.iter()
                .map(|l| VertexSet::from_indices(n, l.iter().copied()))
                .collect()
        });
        Graph { adj, matrix, edges }
    }

    /// Symmetric graph from an adjacency predicate evaluated on every pair.
    pub fn from_predicate(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        Self::from_sorted_adjacency(adj)
    }

    pub fn complete(n: usize) -> Self {
        Self::from_predicate(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Disjoint union, vertices of `other` shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&v| v + shift).collect()),
        );
        Self::from_sorted_adjacency(adj)
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut adj = vec![Vec::new(); self.order()];
        for (u, list) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&v| perm[v]).collect();
            mapped.sort_unstable();
            adj[perm[u]] = mapped;
        }
        Self::from_sorted_adjacency(adj)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Common degree if regular; `None` otherwise (and for the null graph).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.matrix {
            Some(rows) => rows[u].contains(v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Neighborhood of `v` as a bitset, when the graph keeps a matrix.
    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        match &self.matrix {
            Some(rows) => rows[v].clone(),
            None => VertexSet::from_indices(self.order(), self.adj[v].iter().copied()),
        }
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// Shortest-path distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, v: usize) -> Length {
        let mut ecc = 0;
        for d in self.bfs_distances(v) {
            match d {
                Some(d) => ecc = ecc.max(d),
                None => return Length::Infinite,
            }
        }
        Length::Finite(ecc)
    }

    /// Length of the shortest cycle.
    pub fn girth(&self) -> Length {
        let n = self.order();
        let mut best = u32::MAX;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist.fill(u32::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break 'bfs;
                }
                for &w in &self.adj[u] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == u32::MAX {
            Length::Infinite
        } else {
            Length::Finite(best)
        }
    }

    /// Length of the shortest odd cycle; infinite exactly for bipartite graphs.
    pub fn odd_girth(&self) -> Length {
        match self.shortest_odd_cycle() {
            Some(c) => Length::Finite(c.len() as u32),
            None => Length::Infinite,
        }
    }

    /// A shortest odd cycle as a vertex sequence (closing edge implied).
    pub fn shortest_odd_cycle(&self) -> Option<Vec<usize>> {
        let n = self.order();
        let mut best: Option<(u32, usize, usize, usize)> = None;
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist.fill(u32::MAX);
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                if let Some((len, ..)) = best {
                    if 2 * dist[u] + 1 >= len {
                        break 'bfs;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    } else if dist[w] == dist[u] {
                        let len = 2 * dist[u] + 1;
                        if best.is_none_or(|(b, ..)| len < b) {
                            best = Some((len, s, u, w));
                        }
                    }
                }
            }
        }
        let (_, s, u, w) = best?;
        // From the minimizing source the two geodesics meet only at `s`.
        let parents = self.bfs_parents(s);
        let walk_back = |mut x: usize| {
            let mut p = vec![x];
            while x != s {
                x = parents[x];
                p.push(x);
            }
            p
        };
        let mut cycle = walk_back(u);
        cycle.reverse();
        let mut tail = walk_back(w);
        tail.pop();
        cycle.extend(tail);
        debug_assert!(self.is_closed_walk(&cycle));
        Some(cycle)
    }

    fn bfs_parents(&self, s: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.order()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Whether consecutive vertices (cyclically) are adjacent.
    pub fn is_closed_walk(&self, walk: &[usize]) -> bool {
        !walk.is_empty()
            && walk
                .iter()
                .zip(walk.iter().cycle().skip(1))
                .all(|(&a, &b)| self.has_edge(a, b))
    }

    /// Whether consecutive vertices are adjacent.
    pub fn is_walk(&self, walk: &[usize]) -> bool {
        !walk.is_empty() && walk.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// A proper 2-coloring, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.order();
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Largest eccentricity; 0 for graphs with at most one vertex.
    pub fn diameter(&self) -> Length {
        (0..self.order())
            .map(|v| self.eccentricity(v))
            .max()
            .unwrap_or(Length::Finite(0))
    }

    /// Subgraph induced on `vs`, relabeled `0..|vs|` in ascending original
    /// order. The returned mapping sends new indices to original ones.
    pub fn induced_subgraph(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        let mut mapping = vs.to_vec();
        mapping.sort_unstable();
        mapping.dedup();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in mapping.iter().enumerate() {
            index[v] = i;
        }
        let adj = mapping
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        (Self::from_sorted_adjacency(adj), mapping)
    }

    /// Tensor product with `K2`: `(v,0)` is vertex `v`, `(v,1)` is vertex
    /// `n+v`, and `{(u,0),(v,1)}` is an edge for each edge `{u,v}`.
    pub fn bipartite_double_cover(&self) -> Graph {
        let n = self.order();
        let mut adj = vec![Vec::new(); 2 * n];
        for u in 0..n {
            adj[u] = self.adj[u].iter().map(|&v| n + v).collect();
            adj[n + u] = self.adj[u].clone();
        }
        Self::from_sorted_adjacency(adj)
    }

    /// graph6 encoding without header or trailing newline.
    pub fn to_graph6(&self) -> String {
        let n = self.order();
        let mut out: Vec<u8> = Vec::new();
        encode_graph6_order(n as u64, &mut out);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | u8::from(self.has_edge(i, j));
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 is printable ascii")
    }

    /// Decode one graph6 record. A `>>graph6<<` header and a trailing
    /// newline are accepted.
    pub fn from_graph6(input: &[u8]) -> Result<Graph> {
        const HEADER: &[u8] = b">>graph6<<";
        let start = if input.starts_with(HEADER) {
            HEADER.len()
        } else {
            0
        };
        let mut end = input.len();
        while end > start && matches!(input[end - 1], b'\n' | b'\r') {
            end -= 1;
        }
        let body = &input[start..end];
        let err = |at: usize, message: &str| Error::Graph6 {
            offset: start + at,
            message: message.to_string(),
        };
        if let Some(bad) = body.iter().position(|b| !(63..=126).contains(b)) {
            return Err(err(bad, "byte outside the graph6 range 63..=126"));
        }
        let (n, mut pos) = match body {
            [] => return Err(err(0, "empty input")),
            [126, 126, rest @ ..] => {
                if rest.len() < 6 {
                    return Err(err(body.len(), "truncated 36-bit vertex count"));
                }
                (read_sextets(&rest[..6]), 8)
            }
            [126, rest @ ..] => {
                if rest.len() < 3 {
                    return Err(err(body.len(), "truncated 18-bit vertex count"));
                }
                (read_sextets(&rest[..3]), 4)
            }
            [b, ..] => (u64::from(b - 63), 1),
        };
        let n = usize::try_from(n).map_err(|_| err(0, "vertex count too large"))?;
        let bits = n * n.saturating_sub(1) / 2;
        let need = bits.div_ceil(6);
        let data = &body[pos..];
        if data.len() < need {
            return Err(err(body.len(), "truncated adjacency data"));
        }
        if data.len() > need {
            return Err(err(pos + need, "trailing bytes after adjacency data"));
        }
        let mut adj = vec![Vec::new(); n];
        let mut bit = 0usize;
        for j in 1..n {
            for i in 0..j {
                let byte = data[bit / 6] - 63;
                if byte >> (5 - bit % 6) & 1 == 1 {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                bit += 1;
            }
        }
        pos += need;
        debug_assert_eq!(pos, body.len());
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Self::from_sorted_adjacency(adj))
    }
}

fn read_sextets(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(0u64, |acc, &b| acc << 6 | u64::from(b - 63))
}

fn encode_graph6_order(n: u64, out: &mut Vec<u8>) {
    assert!(n <= 68_719_476_735, "graph6 cannot encode {n} vertices");
    let push_sextets = |out: &mut Vec<u8>, count: u32| {
        for i in (0..count).rev() {
            out.push(((n >> (6 * i)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_sextets(out, 3);
    } else {
        out.extend([126, 126]);
        push_sextets(out, 6);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::{kneser_graph, KneserParams};
    use proptest::prelude::*;

    fn petersen() -> Graph {
        kneser_graph(KneserParams::new(5, 2).unwrap())
    }

    fn two_edges() -> Graph {
        Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(
            Graph::path(3).bfs_distances(0),
            vec![Some(0), Some(1), Some(2)]
        );
        assert_eq!(Graph::empty(2).bfs_distances(0), vec![Some(0), None]);
        let p = petersen();
        for v in 0..10 {
            assert_eq!(p.eccentricity(v), Length::Finite(2));
        }
    }

    #[test]
    fn girth_examples() {
        assert_eq!(Graph::complete(3).girth(), Length::Finite(3));
        assert_eq!(Graph::path(6).girth(), Length::Infinite);
        assert_eq!(petersen().girth(), Length::Finite(5));
        assert_eq!(Graph::cycle(8).girth(), Length::Finite(8));
        assert_eq!(Graph::complete(4).girth(), Length::Finite(3));
    }

    #[test]
    fn odd_girth_examples() {
        assert_eq!(Graph::complete(3).odd_girth(), Length::Finite(3));
        assert_eq!(Graph::cycle(4).odd_girth(), Length::Infinite);
        let kg83 = kneser_graph(KneserParams::new(8, 3).unwrap());
        assert_eq!(kg83.odd_girth(), Length::Finite(5));
        let c = kg83.shortest_odd_cycle().unwrap();
        assert_eq!(c.len(), 5);
        assert!(kg83.is_closed_walk(&c));
        let mut sorted = c.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 5, "witness must be a simple cycle");
    }

    #[test]
    fn connectivity_and_diameter() {
        let c4 = Graph::cycle(4);
        assert!(c4.is_connected());
        assert!(c4.is_bipartite());
        assert_eq!(c4.diameter(), Length::Finite(2));
        assert!(!two_edges().is_connected());
        assert_eq!(two_edges().diameter(), Length::Infinite);
        assert_eq!(Graph::empty(0).diameter(), Length::Finite(0));
        assert_eq!(Graph::empty(1).diameter(), Length::Finite(0));
        let desargues = petersen().bipartite_double_cover();
        assert!(desargues.is_connected());
        assert!(desargues.is_bipartite());
        assert_eq!(desargues.diameter(), Length::Finite(5));
    }

    #[test]
    fn induced_subgraphs() {
        let (g, map) = Graph::complete(3).induced_subgraph(&[1, 0]);
        assert_eq!(g, Graph::path(2));
        assert_eq!(map, vec![0, 1]);
        let (g, map) = petersen().induced_subgraph(&[]);
        assert_eq!(g.order(), 0);
        assert!(map.is_empty());
        let p = petersen();
        let (nb, map) = p.induced_subgraph(p.neighbors(0));
        assert_eq!(nb.order(), 3);
        assert_eq!(nb.edge_count(), 0);
        assert_eq!(map, p.neighbors(0));
    }

    #[test]
    fn double_covers() {
        assert_eq!(
            Graph::path(2).bipartite_double_cover(),
            Graph::from_edges(4, [(0, 3), (1, 2)]).unwrap()
        );
        let c6 = Graph::complete(3).bipartite_double_cover();
        assert_eq!(c6.regular_degree(), Some(2));
        assert!(c6.is_connected());
        assert_eq!(c6.girth(), Length::Finite(6));
        let d = petersen().bipartite_double_cover();
        assert_eq!(d.order(), 20);
        assert_eq!(d.regular_degree(), Some(3));
        assert_eq!(d.girth(), Length::Finite(6));
    }

    #[test]
    fn graph6_fixtures() {
        assert_eq!(Graph::empty(1).to_graph6(), "@");
        assert_eq!(Graph::path(2).to_graph6(), "A_");
        assert_eq!(Graph::from_graph6(b"A_").unwrap(), Graph::path(2));
        assert_eq!(
            Graph::from_graph6(b">>graph6<<A_\n").unwrap(),
            Graph::path(2)
        );
        assert_eq!(Graph::empty(0).to_graph6(), "?");
        // Petersen graph in its usual labeling, as printed by nauty's geng/showg
        let p = Graph::from_graph6(b"IheA@GUAo").unwrap();
        assert_eq!(p.order(), 10);
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.girth(), Length::Finite(5));
        let kg = petersen();
        assert_eq!(Graph::from_graph6(kg.to_graph6().as_bytes()).unwrap(), kg);
    }

    #[test]
    fn graph6_large_orders() {
        let g = Graph::path(100);
        let s = g.to_graph6();
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 99]);
        assert_eq!(Graph::from_graph6(s.as_bytes()).unwrap(), g);
        let mut out = Vec::new();
        encode_graph6_order(258_048, &mut out);
        assert_eq!(out.len(), 8);
        assert_eq!(&out[..2], &[126, 126]);
        assert_eq!(read_sextets(&out[2..]), 258_048);
    }

    #[test]
    fn graph6_errors() {
        match Graph::from_graph6(b"A") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::from_graph6(b"A_x!") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::from_graph6(b">>graph6<<A__") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 12),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Graph::from_graph6(b"").is_err());
        assert!(Graph::from_graph6(b"~?").is_err());
    }

    #[test]
    fn from_edges_validation() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut it = bits.into_iter();
                Graph::from_predicate(n, |_, _| it.next().unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph(40)) {
            let s = g.to_graph6();
            prop_assert_eq!(Graph::from_graph6(s.as_bytes()).unwrap(), g);
        }

        #[test]
        fn odd_girth_infinite_iff_bipartite(g in arb_graph(14)) {
            prop_assert_eq!(g.odd_girth().is_infinite(), g.is_bipartite());
            prop_assert!(g.girth() <= g.odd_girth());
            if let Some(c) = g.shortest_odd_cycle() {
                prop_assert!(g.is_closed_walk(&c));
            }
        }

        #[test]
        fn double_cover_connectivity(g in arb_graph(12)) {
            prop_assume!(g.order() > 0);
            let cover = g.bipartite_double_cover();
            prop_assert_eq!(cover.is_connected(), g.is_connected() && !g.is_bipartite());
        }
    }
}
