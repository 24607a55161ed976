//! The rank-`r` geometry `Γ(KG(n,k), r)`: `r` typed copies of the `k`-subsets
//! of `Ω = {0, …, n+k(r-2)-1}`, two elements incident iff their types differ
//! and their subsets are disjoint.
//!
//! Element `type * C(m,k) + rank` is the subset of colex rank `rank` in copy
//! `type`. Small instances keep the incidence graph; larger ones answer
//! incidence queries from the subsets and materialize on request.

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::graph::{Graph, Length};
use crate::incidence::{
    BuekenhoutDiagram, DiagramEdge, IncidenceSystem, Rank2Class, RankTwoSummary,
};
use crate::kneser::{self, KneserParams};
use crate::subsets::{binomial, GroundSet, KSubset};

/// Geometries with at most this many elements store their incidence graph.
pub const MATERIALIZE_LIMIT: u64 = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaParams {
    kneser: KneserParams,
    r: u32,
}

impl GammaParams {
    pub fn new(n: u32, k: u32, r: u32) -> Result<Self> {
        let kneser = KneserParams::new(n, k)?;
        if r < 2 {
            return Err(Error::InvalidParams(format!(
                "rank r must be at least 2, got {r}"
            )));
        }
        let m = u64::from(n) + u64::from(k) * u64::from(r - 2);
        if m > 64 {
            return Err(Error::InvalidParams(format!(
                "ground set n+k(r-2) = {m} exceeds 64"
            )));
        }
        Ok(GammaParams { kneser, r })
    }

    pub fn n(&self) -> u32 {
        self.kneser.n()
    }

    pub fn k(&self) -> u32 {
        self.kneser.k()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn kneser(&self) -> KneserParams {
        self.kneser
    }

    /// `|Ω| = n + k(r-2)`.
    pub fn ground_size(&self) -> u32 {
        self.n() + self.k() * (self.r - 2)
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.ground_size()).expect("validated")
    }

    /// `C(n+k(r-2), k)`.
    pub fn elements_per_type(&self) -> u64 {
        binomial(u64::from(self.ground_size()), u64::from(self.k()))
    }

    pub fn element_count(&self) -> u64 {
        u64::from(self.r) * self.elements_per_type()
    }
}

#[derive(Debug, Clone)]
pub struct GammaGeometry {
    params: GammaParams,
    subsets: Vec<KSubset>,
    system: Option<IncidenceSystem>,
}

/// Build `Γ(KG(n,k), r)`, materializing the incidence graph when small.
pub fn build_gamma(p: GammaParams) -> Result<GammaGeometry> {
    let mut g = GammaGeometry::implicit(p);
    if p.element_count() <= MATERIALIZE_LIMIT {
        g.system = Some(g.materialize());
    }
    Ok(g)
}

impl GammaGeometry {
    /// A geometry that never stores its incidence graph.
    pub fn implicit(p: GammaParams) -> Self {
        GammaGeometry {
            params: p,
            subsets: p.ground().enumerate_k_subsets(p.k()),
            system: None,
        }
    }

    pub fn params(&self) -> GammaParams {
        self.params
    }

    pub fn ground(&self) -> GroundSet {
        self.params.ground()
    }

    pub fn len(&self) -> usize {
        self.subsets.len() * self.params.r as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_materialized(&self) -> bool {
        self.system.is_some()
    }

    pub fn per_type(&self) -> usize {
        self.subsets.len()
    }

    /// `(type, subset)` of element `e`.
    pub fn element(&self, e: usize) -> (usize, KSubset) {
        (e / self.per_type(), self.subsets[e % self.per_type()])
    }

    pub fn index_of(&self, ty: usize, s: KSubset) -> Result<usize> {
        if ty >= self.params.r as usize || s.k() != self.params.k() {
            return Err(Error::SubsetOutOfRange);
        }
        Ok(ty * self.per_type() + self.ground().rank(s)?)
    }

    /// Incidence computed from the subsets.
    pub fn incident(&self, a: usize, b: usize) -> bool {
        let (ta, sa) = self.element(a);
        let (tb, sb) = self.element(b);
        ta != tb && sa.disjoint(sb)
    }

    /// Neighbors of `e` in the incidence graph, ascending, computed from the subsets.
    pub fn neighbors(&self, e: usize) -> Vec<usize> {
        let (te, se) = self.element(e);
        let per = self.per_type();
        let mut out = Vec::new();
        for t in (0..self.params.r as usize).filter(|&t| t != te) {
            out.extend(
                self.subsets
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.disjoint(se))
                    .map(|(i, _)| t * per + i),
            );
        }
        out
    }

    /// The incidence system, borrowed when materialized and built otherwise.
    pub fn system(&self) -> Cow<'_, IncidenceSystem> {
        match &self.system {
            Some(s) => Cow::Borrowed(s),
            None => Cow::Owned(self.materialize()),
        }
    }

    /// Build the incidence system from scratch.
    pub fn materialize(&self) -> IncidenceSystem {
        let per = self.per_type();
        let r = self.params.r as usize;
        let disjoint: Vec<Vec<usize>> = self
            .subsets
            .iter()
            .map(|s| (0..per).filter(|&j| self.subsets[j].disjoint(*s)).collect())
            .collect();
        let mut adj = Vec::with_capacity(per * r);
        for t in 0..r {
            for list in &disjoint {
                let mut row = Vec::with_capacity(list.len() * (r - 1));
                for u in (0..r).filter(|&u| u != t) {
                    row.extend(list.iter().map(|&j| u * per + j));
                }
                adj.push(row);
            }
        }
        let types = (0..r).flat_map(|t| std::iter::repeat_n(t, per)).collect();
        let labels = (0..r)
            .flat_map(|_| {
                self.subsets
                    .iter()
                    .map(|s| Some(format!("{:#x}", s.bits())))
            })
            .collect();
        IncidenceSystem::from_graph(
            self.params.r as usize,
            types,
            Graph::from_sorted_adjacency(adj),
        )
        .and_then(|s| s.with_labels(labels))
        .expect("disjointness across types is a valid incidence")
    }
}

/// The diagram the construction is predicted to have: complete on `r`
/// types, orders `C(n-k,k)-1`, counts `C(n+k(r-2),k)`, every edge
/// `d-g-d` with `g = 3` if `n = 2k+1` else 2 and `d = 2⌈k/(n-2k)⌉+1`.
pub fn predicted_diagram(p: GammaParams) -> BuekenhoutDiagram {
    let r = p.r() as usize;
    let kp = p.kneser();
    let g = kneser::predicted_gonality(kp);
    let d = Length::Finite(kneser::predicted_diameter(kp));
    let summary = RankTwoSummary {
        gonality: Length::Finite(g),
        d_ij: d,
        d_ji: d,
        class: if g >= 3 {
            Rank2Class::PartialLinearSpace
        } else {
            Rank2Class::Neither
        },
    };
    let edges = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| DiagramEdge { i, j, summary }))
        .collect();
    BuekenhoutDiagram {
        type_ids: (0..r as u32).collect(),
        orders: vec![kneser::predicted_order(kp); r],
        counts: vec![p.elements_per_type(); r],
        edges,
    }
}

/// Number of chambers: ordered choices of pairwise disjoint `k`-subsets, one
/// per type, `∏_{t<r} C(m - tk, k)`.
pub fn chamber_count(p: GammaParams) -> u128 {
    let m = u64::from(p.ground_size());
    let k = u64::from(p.k());
    (0..u64::from(p.r()))
        .map(|t| u128::from(binomial(m - t * k, k)))
        .product()
}
