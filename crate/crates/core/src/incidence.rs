//! Incidence systems and geometries: flags, chambers, residues, truncations,
//! residual connectedness, firmness, rank-two classification and Buekenhout
//! diagrams.
//!
//! An [`IncidenceSystem`] stores its incidence relation as the incidence
//! graph (distinct incident elements are adjacent; reflexivity is implicit).
//! Types are indexed `0..rank`; each index also carries a type id so that
//! residues and truncations remember which original types they kept.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Length, VertexSet};
use crate::iso::Coloring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceSystem {
    type_ids: Vec<u32>,
    types: Vec<usize>,
    labels: Vec<Option<String>>,
    graph: Graph,
}

/// A set of pairwise incident elements, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flag(Vec<usize>);

impl Flag {
    pub fn empty() -> Self {
        Flag(Vec::new())
    }

    /// Validate `elements` as a flag of `sys`.
    pub fn new(sys: &IncidenceSystem, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&e| e >= sys.len()) {
            return Err(Error::NotAFlag);
        }
        for (i, &a) in elements.iter().enumerate() {
            for &b in &elements[i + 1..] {
                if !sys.incident(a, b) {
                    return Err(Error::NotAFlag);
                }
            }
        }
        Ok(Flag(elements))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Type indices present in the flag, ascending.
    pub fn types(&self, sys: &IncidenceSystem) -> Vec<usize> {
        let mut t: Vec<usize> = self.0.iter().map(|&e| sys.type_of(e)).collect();
        t.sort_unstable();
        t
    }

    pub fn union(&self, other: &Flag) -> Flag {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        e.sort_unstable();
        e.dedup();
        Flag(e)
    }
}

/// Classification of a rank-two geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rank2Class {
    /// Every element of one type is incident with every element of the other.
    GeneralisedDigon,
    /// No two elements of one type share two elements of the other.
    PartialLinearSpace,
    Neither,
}

/// Gonality and the two diameters of a rank-two geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RankTwoSummary {
    pub gonality: Length,
    /// Largest distance from an element of the first type.
    pub d_ij: Length,
    /// Largest distance from an element of the second type.
    pub d_ji: Length,
    pub class: Rank2Class,
}

impl RankTwoSummary {
    /// `d_ij-g-d_ji`, the usual edge label.
    pub fn label(&self) -> String {
        format!("{}-{}-{}", self.d_ij, self.gonality, self.d_ji)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramEdge {
    pub i: usize,
    pub j: usize,
    pub summary: RankTwoSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuekenhoutDiagram {
    pub type_ids: Vec<u32>,
    /// `s_i`: size of a rank-one residue of type `i`, minus one.
    pub orders: Vec<u64>,
    /// `n_i`: number of elements of type `i`.
    pub counts: Vec<u64>,
    /// Non-digon type pairs, `i < j`, in lexicographic order.
    pub edges: Vec<DiagramEdge>,
}

impl BuekenhoutDiagram {
    pub fn rank(&self) -> usize {
        self.type_ids.len()
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<&RankTwoSummary> {
        let (i, j) = (i.min(j), i.max(j));
        self.edges
            .iter()
            .find(|e| e.i == i && e.j == j)
            .map(|e| &e.summary)
    }

    /// Whether every pair of types is joined by an edge.
    pub fn is_complete(&self) -> bool {
        let r = self.rank();
        self.edges.len() == r * r.saturating_sub(1) / 2
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph buekenhout {\n");
        for (i, id) in self.type_ids.iter().enumerate() {
            writeln!(
                out,
                "  t{id} [label=\"{id}\\ns={}, n={}\"];",
                self.orders[i], self.counts[i]
            )
            .unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  t{} -- t{} [label=\"{}\"];",
                self.type_ids[e.i],
                self.type_ids[e.j],
                e.summary.label()
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// The incidence graph with its type coloring. `elements[v]` is the element
/// behind vertex `v`.
#[derive(Debug, Clone)]
pub struct TypedIncidenceGraph {
    pub graph: Graph,
    pub coloring: Coloring,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryCheck {
    pub is_geometry: bool,
    /// A maximal flag that is not a chamber.
    pub witness: Option<Flag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityCheck {
    pub connected: bool,
    /// A flag whose residue (rank at least two) is disconnected.
    pub failing: Option<Flag>,
    pub flags_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ip2Check {
    pub satisfied: bool,
    /// Type pair and flag of a residue that is neither kind.
    pub failing: Option<((usize, usize), Flag)>,
    pub residues_checked: usize,
}

#[derive(Serialize, Deserialize)]
struct JsonElement {
    id: usize,
    #[serde(rename = "type")]
    ty: u32,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonSystem {
    rank: usize,
    types: Vec<u32>,
    elements: Vec<JsonElement>,
    incidences: Vec<[usize; 2]>,
}

impl IncidenceSystem {
    /// Build from element types and an incidence list over distinct elements.
    pub fn new(
        rank: usize,
        types: Vec<usize>,
        incidences: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let graph = Graph::from_edges(types.len(), incidences)?;
        Self::from_graph(rank, types, graph)
    }

    /// Build from an incidence graph; rejects edges inside a type.
    pub fn from_graph(rank: usize, types: Vec<usize>, graph: Graph) -> Result<Self> {
        if types.len() != graph.order() {
            return Err(Error::InvalidParams(
                "one type per incidence graph vertex required".into(),
            ));
        }
        if let Some(&t) = types.iter().find(|&&t| t >= rank) {
            return Err(Error::InvalidParams(format!(
                "type {t} outside rank {rank}"
            )));
        }
        if let Some((u, v)) = graph
            .edge_list()
            .into_iter()
            .find(|&(u, v)| types[u] == types[v])
        {
            return Err(Error::InvalidParams(format!(
                "elements {u} and {v} are incident but share type {}",
                types[u]
            )));
        }
        let n = types.len();
        Ok(IncidenceSystem {
            type_ids: (0..rank as u32).collect(),
            types,
            labels: vec![None; n],
            graph,
        })
    }

    pub fn with_type_ids(mut self, ids: Vec<u32>) -> Result<Self> {
        if ids.len() != self.rank() {
            return Err(Error::InvalidParams("one id per type required".into()));
        }
        self.type_ids = ids;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidParams(
                "one label per element required".into(),
            ));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Rank-two geometry of vertices (type 0) and edges (type 1) of `g`,
    /// incident when the vertex lies on the edge. Edges follow
    /// [`Graph::edge_list`] order after the vertices.
    pub fn vertex_edge_geometry(g: &Graph) -> Self {
        let n = g.order();
        let edges = g.edge_list();
        let mut types = vec![0; n];
        types.extend(std::iter::repeat_n(1, edges.len()));
        let inc = edges
            .iter()
            .enumerate()
            .flat_map(|(e, &(u, v))| [(u, n + e), (v, n + e)]);
        Self::new(2, types, inc).expect("vertex-edge incidence is well typed")
    }

    /// Disjoint union of two systems of the same rank.
    pub fn disjoint_union(&self, other: &IncidenceSystem) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::InvalidParams("ranks differ".into()));
        }
        let mut types = self.types.clone();
        types.extend_from_slice(&other.types);
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Ok(IncidenceSystem {
            type_ids: self.type_ids.clone(),
            types,
            labels,
            graph: self.graph.disjoint_union(&other.graph),
        })
    }

    pub fn rank(&self) -> usize {
        self.type_ids.len()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn type_of(&self, e: usize) -> usize {
        self.types[e]
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn type_ids(&self) -> &[u32] {
        &self.type_ids
    }

    pub fn label(&self, e: usize) -> Option<&str> {
        self.labels[e].as_deref()
    }

    /// Incidence between distinct elements.
    pub fn incident(&self, a: usize, b: usize) -> bool {
        self.graph.has_edge(a, b)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn elements_of_type(&self, t: usize) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.types[e] == t).collect()
    }

    pub fn type_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.rank()];
        for &t in &self.types {
            sizes[t] += 1;
        }
        sizes
    }

    pub fn incidence_graph(&self) -> TypedIncidenceGraph {
        TypedIncidenceGraph {
            graph: self.graph.clone(),
            coloring: self.type_coloring(),
            elements: (0..self.len()).collect(),
        }
    }

    pub fn type_coloring(&self) -> Coloring {
        // type indices are contiguous only when every type is present
        let mut present: Vec<usize> = self.types.clone();
        present.sort_unstable();
        present.dedup();
        let colors = self
            .types
            .iter()
            .map(|t| present.binary_search(t).unwrap() as u32)
            .collect();
        Coloring::new(colors).expect("dense recoloring")
    }

    /// All flags whose type set is exactly `types` (type indices), found by
    /// depth-first extension in ascending type order.
    pub fn flags_of_type(&self, types: &[usize]) -> Vec<Flag> {
        let mut types = types.to_vec();
        types.sort_unstable();
        types.dedup();
        let by_type: Vec<Vec<usize>> = types.iter().map(|&t| self.elements_of_type(t)).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(types.len());
        self.extend_flags(&by_type, &mut chosen, &mut out);
        out
    }

    fn extend_flags(&self, by_type: &[Vec<usize>], chosen: &mut Vec<usize>, out: &mut Vec<Flag>) {
        let depth = chosen.len();
        if depth == by_type.len() {
            let mut f = chosen.clone();
            f.sort_unstable();
            out.push(Flag(f));
            return;
        }
        for &e in &by_type[depth] {
            if chosen.iter().all(|&c| self.incident(c, e)) {
                chosen.push(e);
                self.extend_flags(by_type, chosen, out);
                chosen.pop();
            }
        }
    }

    /// Every flag with at most `max_len` elements, grouped by type set in
    /// order of increasing size.
    pub fn flags_up_to(&self, max_len: usize) -> Vec<Flag> {
        let mut out = Vec::new();
        for size in 0..=max_len.min(self.rank()) {
            for types in type_subsets(self.rank(), size) {
                out.extend(self.flags_of_type(&types));
            }
        }
        out
    }

    pub fn chambers(&self) -> Vec<Flag> {
        self.flags_of_type(&(0..self.rank()).collect::<Vec<_>>())
    }

    /// True iff every maximal flag is a chamber. Maximal cliques of the
    /// incidence graph come from pivoting Bron–Kerbosch.
    pub fn is_geometry(&self) -> GeometryCheck {
        let n = self.len();
        let rank = self.rank();
        let mut witness = None;
        let nbrs: Vec<VertexSet> = (0..n).map(|v| self.graph.neighbor_set(v)).collect();
        bron_kerbosch(
            &nbrs,
            &mut Vec::new(),
            VertexSet::full(n),
            VertexSet::new(n),
            &mut |clique| {
                if clique.len() < rank {
                    let mut f = clique.to_vec();
                    f.sort_unstable();
                    witness = Some(Flag(f));
                    false
                } else {
                    true
                }
            },
        );
        GeometryCheck {
            is_geometry: witness.is_none(),
            witness,
        }
    }

    /// The residue of `flag` and, for each residue element, its index here.
    pub fn residue(&self, flag: &Flag) -> Result<(IncidenceSystem, Vec<usize>)> {
        let flag = Flag::new(self, flag.0.clone())?;
        let mut candidates = VertexSet::full(self.len());
        for &f in flag.elements() {
            candidates.intersect_with(&self.graph.neighbor_set(f));
        }
        let back: Vec<usize> = candidates.to_vec();
        let flag_types = flag.types(self);
        let kept: Vec<usize> = (0..self.rank())
            .filter(|t| !flag_types.contains(t))
            .collect();
        Ok((self.restrict(&back, &kept), back))
    }

    /// Sub-system on elements whose types lie in `types` (type indices).
    pub fn truncation(&self, types: &[usize]) -> IncidenceSystem {
        let mut kept: Vec<usize> = types.iter().copied().filter(|&t| t < self.rank()).collect();
        kept.sort_unstable();
        kept.dedup();
        let elements: Vec<usize> = (0..self.len())
            .filter(|&e| kept.contains(&self.types[e]))
            .collect();
        self.restrict(&elements, &kept)
    }

    /// Restriction to sorted `elements`, all of whose types are in `kept`.
    fn restrict(&self, elements: &[usize], kept: &[usize]) -> IncidenceSystem {
        let (graph, _) = self.graph.induced_subgraph(elements);
        let types = elements
            .iter()
            .map(|&e| kept.binary_search(&self.types[e]).expect("type kept"))
            .collect();
        IncidenceSystem {
            type_ids: kept.iter().map(|&t| self.type_ids[t]).collect(),
            types,
            labels: elements.iter().map(|&e| self.labels[e].clone()).collect(),
            graph,
        }
    }

    /// Every residue of rank at least two (including that of the empty flag)
    /// has a connected incidence graph.
    pub fn is_residually_connected(&self) -> ConnectivityCheck {
        let rank = self.rank();
        if rank < 2 {
            return ConnectivityCheck {
                connected: true,
                failing: None,
                flags_checked: 0,
            };
        }
        let flags = self.flags_up_to(rank - 2);
        let failing = flags
            .par_iter()
            .find_first(|f| {
                let (res, _) = self.residue(f).expect("enumerated flags are valid");
                !res.graph.is_connected()
            })
            .cloned();
        ConnectivityCheck {
            connected: failing.is_none(),
            failing,
            flags_checked: flags.len(),
        }
    }

    /// Sizes of all rank-one residues; `(type, flag, size)` triples.
    fn rank_one_residues(&self) -> Vec<(usize, Flag, usize)> {
        let rank = self.rank();
        let mut out = Vec::new();
        for t in 0..rank {
            let cotype: Vec<usize> = (0..rank).filter(|&u| u != t).collect();
            for f in self.flags_of_type(&cotype) {
                let size = self.incident_to_all(&f).len();
                out.push((t, f, size));
            }
        }
        out
    }

    /// Elements incident to every member of `flag` and not in it.
    fn incident_to_all(&self, flag: &Flag) -> VertexSet {
        let mut s = VertexSet::full(self.len());
        for &f in flag.elements() {
            s.intersect_with(&self.graph.neighbor_set(f));
        }
        s
    }

    /// Smallest rank-one residue, `None` without any.
    pub fn min_rank_one_residue(&self) -> Option<usize> {
        self.rank_one_residues()
            .into_iter()
            .map(|(_, _, s)| s)
            .min()
    }

    pub fn is_firm(&self) -> bool {
        self.min_rank_one_residue().is_none_or(|s| s >= 2)
    }

    pub fn is_thick(&self) -> bool {
        self.min_rank_one_residue().is_none_or(|s| s >= 3)
    }

    /// Generalised digon, partial linear space, or neither. Rank two only.
    pub fn classify_rank2(&self) -> Result<Rank2Class> {
        self.require_rank2()?;
        let sizes = self.type_sizes();
        if self.graph.edge_count() == sizes[0] * sizes[1] {
            return Ok(Rank2Class::GeneralisedDigon);
        }
        // two points on two common lines form a 4-cycle
        let points = self.elements_of_type(0);
        let sets: Vec<VertexSet> = points.iter().map(|&p| self.graph.neighbor_set(p)).collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].intersection_len(&sets[j]) >= 2 {
                    return Ok(Rank2Class::Neither);
                }
            }
        }
        Ok(Rank2Class::PartialLinearSpace)
    }

    fn require_rank2(&self) -> Result<()> {
        if self.rank() != 2 {
            return Err(Error::Rank {
                rank: self.rank(),
                reason: "rank-two geometry required".into(),
            });
        }
        Ok(())
    }

    /// Gonality (half the girth), the two diameters and the classification
    /// of a connected rank-two system.
    pub fn rank2_summary(&self) -> Result<RankTwoSummary> {
        self.require_rank2()?;
        let components = self.graph.components();
        if components.len() > 1 {
            return Err(Error::Disconnected { components });
        }
        let gonality = match self.graph.girth() {
            Length::Finite(g) => Length::Finite(g / 2),
            Length::Infinite => Length::Infinite,
        };
        let diam = |t: usize| {
            self.elements_of_type(t)
                .into_iter()
                .map(|e| self.graph.eccentricity(e))
                .max()
                .unwrap_or(Length::Finite(0))
        };
        Ok(RankTwoSummary {
            gonality,
            d_ij: diam(0),
            d_ji: diam(1),
            class: self.classify_rank2()?,
        })
    }

    /// Every rank-two residue is a partial linear space or a generalised digon.
    pub fn satisfies_ip2(&self) -> Ip2Check {
        let rank = self.rank();
        let mut checked = 0;
        if rank >= 2 {
            for i in 0..rank {
                for j in i + 1..rank {
                    let cotype: Vec<usize> = (0..rank).filter(|&t| t != i && t != j).collect();
                    for f in self.flags_of_type(&cotype) {
                        checked += 1;
                        let (res, _) = self.residue(&f).expect("enumerated flags are valid");
                        if res.classify_rank2().expect("rank two") == Rank2Class::Neither {
                            return Ip2Check {
                                satisfied: false,
                                failing: Some(((i, j), f)),
                                residues_checked: checked,
                            };
                        }
                    }
                }
            }
        }
        Ip2Check {
            satisfied: true,
            failing: None,
            residues_checked: checked,
        }
    }

    /// Buekenhout diagram read off representative residues. With
    /// `verify_uniformity`, every residue of each kind must agree.
    pub fn buekenhout_diagram(&self, verify_uniformity: bool) -> Result<BuekenhoutDiagram> {
        let check = self.is_geometry();
        if let Some(w) = check.witness {
            return Err(Error::NotAGeometry { witness: w.0 });
        }
        let rank = self.rank();
        let counts = self.type_sizes().into_iter().map(|c| c as u64).collect();
        let mut orders = Vec::with_capacity(rank);
        for t in 0..rank {
            let cotype: Vec<usize> = (0..rank).filter(|&u| u != t).collect();
            let flags = self.flags_of_type(&cotype);
            let take = if verify_uniformity { flags.len() } else { 1 };
            let mut seen: Option<(usize, &Flag)> = None;
            for f in flags.iter().take(take) {
                let size = self.incident_to_all(f).len();
                match seen {
                    None => seen = Some((size, f)),
                    Some((s, first)) if s != size => {
                        return Err(Error::NonUniform {
                            first: first.0.clone(),
                            second: f.0.clone(),
                        })
                    }
                    _ => {}
                }
            }
            let (size, _) = seen.expect("geometries have flags of every type");
            orders.push(size as u64 - 1);
        }
        let mut edges = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                let cotype: Vec<usize> = (0..rank).filter(|&t| t != i && t != j).collect();
                let flags = self.flags_of_type(&cotype);
                let take = if verify_uniformity { flags.len() } else { 1 };
                let summaries: Vec<Result<RankTwoSummary>> = flags[..take]
                    .par_iter()
                    .map(|f| self.residue(f)?.0.rank2_summary())
                    .collect();
                let first = summaries[0].clone()?;
                for (idx, s) in summaries.into_iter().enumerate().skip(1) {
                    if s? != first {
                        return Err(Error::NonUniform {
                            first: flags[0].0.clone(),
                            second: flags[idx].0.clone(),
                        });
                    }
                }
                if first.class != Rank2Class::GeneralisedDigon {
                    edges.push(DiagramEdge {
                        i,
                        j,
                        summary: first,
                    });
                }
            }
        }
        Ok(BuekenhoutDiagram {
            type_ids: self.type_ids.clone(),
            orders,
            counts,
            edges,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = JsonSystem {
            rank: self.rank(),
            types: self.type_ids.clone(),
            elements: (0..self.len())
                .map(|e| JsonElement {
                    id: e,
                    ty: self.type_ids[self.types[e]],
                    label: self.labels[e].clone(),
                })
                .collect(),
            incidences: self
                .graph
                .edge_list()
                .into_iter()
                .map(|(u, v)| [u, v])
                .collect(),
        };
        serde_json::to_value(doc).expect("system serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: JsonSystem = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidParams(format!("bad geometry json: {e}")))?;
        if doc.types.len() != doc.rank {
            return Err(Error::InvalidParams(
                "types list must have rank entries".into(),
            ));
        }
        let mut elements = doc.elements;
        elements.sort_by_key(|e| e.id);
        if elements.iter().enumerate().any(|(i, e)| e.id != i) {
            return Err(Error::InvalidParams("element ids must be 0..len".into()));
        }
        let types = elements
            .iter()
            .map(|e| {
                doc.types
                    .iter()
                    .position(|&t| t == e.ty)
                    .ok_or_else(|| Error::InvalidParams(format!("unknown type {}", e.ty)))
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = elements.into_iter().map(|e| e.label).collect();
        Self::new(
            doc.rank,
            types,
            doc.incidences.into_iter().map(|[u, v]| (u, v)),
        )?
        .with_type_ids(doc.types)?
        .with_labels(labels)
    }
}

/// All `size`-subsets of `0..rank`, in colex order.
pub fn type_subsets(rank: usize, size: usize) -> Vec<Vec<usize>> {
    let ground = crate::subsets::GroundSet::new(rank.max(1) as u32).expect("small rank");
    if rank == 0 {
        return if size == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    ground
        .iter_k_subsets(size as u32)
        .map(|s| s.points().map(|p| p as usize).collect())
        .collect()
}

/// Pivoting Bron–Kerbosch. `report` returns `false` to stop the search.
fn bron_kerbosch(
    nbrs: &[VertexSet],
    clique: &mut Vec<usize>,
    mut p: VertexSet,
    mut x: VertexSet,
    report: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if p.is_empty() {
        if x.is_empty() {
            return report(clique);
        }
        return true;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection_len(&nbrs[u]), std::cmp::Reverse(u)))
        .unwrap();
    let mut candidates = p.clone();
    candidates.difference_with(&nbrs[pivot]);
    for v in candidates.iter().collect::<Vec<_>>() {
        let mut np = p.clone();
        np.intersect_with(&nbrs[v]);
        let mut nx = x.clone();
        nx.intersect_with(&nbrs[v]);
        clique.push(v);
        let go_on = bron_kerbosch(nbrs, clique, np, nx, report);
        clique.pop();
        if !go_on {
            return false;
        }
        p.remove(v);
        x.insert(v);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::{kneser_graph, neighborhood_geometry, KneserParams};

    fn digon(a: usize, b: usize) -> IncidenceSystem {
        let mut types = vec![0; a];
        types.extend(std::iter::repeat_n(1, b));
        let inc = (0..a).flat_map(|p| (0..b).map(move |l| (p, a + l)));
        IncidenceSystem::new(2, types, inc).unwrap()
    }

    fn petersen() -> Graph {
        kneser_graph(KneserParams::new(5, 2).unwrap())
    }

    fn desargues_config() -> IncidenceSystem {
        neighborhood_geometry(&petersen())
    }

    #[test]
    fn construction_rejects_same_type_incidence() {
        assert!(IncidenceSystem::new(2, vec![0, 0], [(0, 1)]).is_err());
        assert!(IncidenceSystem::new(1, vec![0, 1], []).is_err());
    }

    #[test]
    fn incidence_graph_of_pair() {
        let sys = IncidenceSystem::new(2, vec![0, 1], [(0, 1)]).unwrap();
        let ig = sys.incidence_graph();
        assert_eq!(ig.graph, Graph::path(2));
        assert_eq!(ig.coloring.colors(), &[0, 1]);
    }

    #[test]
    fn geometry_predicate() {
        assert!(digon(2, 3).is_geometry().is_geometry);
        let sys = IncidenceSystem::new(2, vec![0, 1, 0], [(0, 1)]).unwrap();
        let check = sys.is_geometry();
        assert!(!check.is_geometry);
        assert_eq!(check.witness, Some(Flag(vec![2])));
        assert!(desargues_config().is_geometry().is_geometry);
    }

    #[test]
    fn flags_and_validation() {
        let d = desargues_config();
        assert_eq!(d.chambers().len(), 30);
        assert_eq!(d.flags_up_to(0), vec![Flag::empty()]);
        assert_eq!(d.flags_up_to(1).len(), 21);
        assert!(Flag::new(&d, vec![0, 1]).is_err());
        assert!(Flag::new(&d, vec![0, 99]).is_err());
        let f = Flag::new(&d, vec![0, d.graph().neighbors(0)[0]]).unwrap();
        assert_eq!(f.types(&d), vec![0, 1]);
        assert_eq!(d.residue(&Flag(vec![0, 1])), Err(Error::NotAFlag));
    }

    #[test]
    fn residue_edge_cases() {
        let d = desargues_config();
        let (whole, back) = d.residue(&Flag::empty()).unwrap();
        assert_eq!(whole, d);
        assert_eq!(back, (0..20).collect::<Vec<_>>());
        let chamber = d.chambers().remove(0);
        let (res, back) = d.residue(&chamber).unwrap();
        assert_eq!(res.rank(), 0);
        assert!(res.is_empty());
        assert!(back.is_empty());
        let (point_res, back) = d.residue(&Flag(vec![0])).unwrap();
        assert_eq!(point_res.rank(), 1);
        assert_eq!(point_res.type_ids(), &[1]);
        assert_eq!(back, d.graph().neighbors(0));
    }

    #[test]
    fn truncations() {
        let d = desargues_config();
        assert_eq!(d.truncation(&[0, 1]), d);
        let t = d.truncation(&[1]);
        assert_eq!(t.len(), 10);
        assert_eq!(t.graph().edge_count(), 0);
        assert_eq!(t.type_ids(), &[1]);
    }

    #[test]
    fn residual_connectedness() {
        assert!(desargues_config().is_residually_connected().connected);
        let two = digon(2, 2).disjoint_union(&digon(2, 2)).unwrap();
        let check = two.is_residually_connected();
        assert!(!check.connected);
        assert_eq!(check.failing, Some(Flag::empty()));
    }

    #[test]
    fn firm_and_thick() {
        let single = IncidenceSystem::new(2, vec![0, 1], [(0, 1)]).unwrap();
        assert!(!single.is_firm());
        assert!(digon(2, 2).is_firm());
        assert!(!digon(2, 2).is_thick());
        let d = desargues_config();
        assert!(d.is_thick());
        assert_eq!(d.min_rank_one_residue(), Some(3));
    }

    #[test]
    fn rank2_summaries() {
        let ve = IncidenceSystem::vertex_edge_geometry(&petersen());
        let s = ve.rank2_summary().unwrap();
        assert_eq!(s.label(), "5-5-6");
        assert_eq!(s.class, Rank2Class::PartialLinearSpace);
        let d = desargues_config().rank2_summary().unwrap();
        assert_eq!(d.label(), "5-3-5");
        let kg62 = neighborhood_geometry(&kneser_graph(KneserParams::new(6, 2).unwrap()));
        let s = kg62.rank2_summary().unwrap();
        assert_eq!(s.label(), "3-2-3");
        assert_eq!(s.class, Rank2Class::Neither);
        let dg = digon(3, 2).rank2_summary().unwrap();
        assert_eq!(dg.label(), "2-2-2");
        assert_eq!(dg.class, Rank2Class::GeneralisedDigon);
    }

    #[test]
    fn rank2_summary_errors() {
        let two = digon(2, 2).disjoint_union(&digon(2, 2)).unwrap();
        match two.rank2_summary() {
            Err(Error::Disconnected { components }) => {
                assert_eq!(components, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]])
            }
            other => panic!("unexpected {other:?}"),
        }
        let rank1 = IncidenceSystem::new(1, vec![0], []).unwrap();
        assert!(matches!(rank1.rank2_summary(), Err(Error::Rank { .. })));
    }

    #[test]
    fn ip2_on_rank_two() {
        assert!(digon(3, 3).satisfies_ip2().satisfied);
        assert!(desargues_config().satisfies_ip2().satisfied);
        let kg62 = neighborhood_geometry(&kneser_graph(KneserParams::new(6, 2).unwrap()));
        let c = kg62.satisfies_ip2();
        assert!(!c.satisfied);
        assert_eq!(c.failing, Some(((0, 1), Flag::empty())));
    }

    #[test]
    fn diagrams_of_fixtures() {
        let ve = IncidenceSystem::vertex_edge_geometry(&petersen());
        let dia = ve.buekenhout_diagram(true).unwrap();
        assert_eq!(dia.orders, vec![1, 2]);
        assert_eq!(dia.counts, vec![10, 15]);
        assert_eq!(dia.edge(0, 1).unwrap().label(), "5-5-6");
        let dia = desargues_config().buekenhout_diagram(true).unwrap();
        assert_eq!(dia.orders, vec![2, 2]);
        assert_eq!(dia.counts, vec![10, 10]);
        assert_eq!(dia.edge(1, 0).unwrap().label(), "5-3-5");
        let dot = dia.to_dot();
        assert!(dot.contains("s=2, n=10"));
        assert!(dot.contains("t0 -- t1 [label=\"5-3-5\"]"));
        let dg = digon(2, 3).buekenhout_diagram(true).unwrap();
        assert!(dg.edges.is_empty());
    }

    #[test]
    fn diagram_detects_non_uniform_orders() {
        // a point on two lines next to a point on three lines
        let sys = IncidenceSystem::new(
            2,
            vec![0, 0, 1, 1, 1],
            [(0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (0, 4)],
        )
        .unwrap();
        assert!(sys.buekenhout_diagram(true).is_ok());
        let lop = IncidenceSystem::new(
            2,
            vec![0, 0, 1, 1, 1],
            [(0, 2), (0, 3), (1, 2), (1, 3), (1, 4)],
        )
        .unwrap();
        assert!(matches!(
            lop.buekenhout_diagram(true),
            Err(Error::NonUniform { .. })
        ));
        assert!(lop.buekenhout_diagram(false).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let d = desargues_config();
        let json = d.to_json();
        assert_eq!(json["rank"], 2);
        assert_eq!(json["elements"].as_array().unwrap().len(), 20);
        assert_eq!(json["incidences"].as_array().unwrap().len(), 30);
        assert_eq!(IncidenceSystem::from_json(&json).unwrap(), d);
    }
}
