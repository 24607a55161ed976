//! Locally-X verification: every vertex neighborhood must induce a graph
//! isomorphic to a reference graph `X`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{build_gamma, GammaParams};
use crate::graph::Graph;
use crate::incidence::Flag;
use crate::iso::{self, canonical_form_uncolored, Coloring};

/// Subgraph induced on the neighbors of `v`, with the map back to `g`.
pub fn neighborhood_graph(g: &Graph, v: usize) -> (Graph, Vec<usize>) {
    g.induced_subgraph(g.neighbors(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexResult {
    pub vertex: usize,
    pub isomorphic: bool,
    /// Hash of the verified neighborhood-to-`X` bijection.
    pub bijection_digest: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocallyXReport {
    /// Hash of the graph's graph6 encoding.
    pub graph_digest: String,
    /// Canonical digest of the reference graph.
    pub reference_digest: String,
    pub graph_order: usize,
    /// Only orbit representatives were checked.
    pub assumed_transitive: bool,
    pub total: usize,
    pub verified: usize,
    pub results: Vec<VertexResult>,
    pub failures: Vec<usize>,
}

impl LocallyXReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "graph": self.graph_digest,
            "reference": self.reference_digest,
            "total": self.total,
            "passed": self.verified,
            "failed": self.failures,
            "assumed_transitive": self.assumed_transitive,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct LocallyXOptions {
    /// Check only these vertices (one per orbit of a known transitive group).
    pub orbit_representatives: Option<Vec<usize>>,
}

/// Check every vertex of `g`.
pub fn is_locally_x(g: &Graph, x: &Graph) -> LocallyXReport {
    is_locally_x_with(g, x, &LocallyXOptions::default())
}

pub fn is_locally_x_with(g: &Graph, x: &Graph, opts: &LocallyXOptions) -> LocallyXReport {
    let x_colors = Coloring::uniform(x.order());
    let x_form = canonical_form_uncolored(x);
    let vertices: Vec<usize> = match &opts.orbit_representatives {
        Some(reps) => {
            let mut r = reps.clone();
            r.sort_unstable();
            r.dedup();
            r
        }
        None => (0..g.order()).collect(),
    };
    let results: Vec<VertexResult> = vertices
        .par_iter()
        .map(|&v| {
            let fail = VertexResult {
                vertex: v,
                isomorphic: false,
                bijection_digest: None,
            };
            // cheap filters before any search
            if g.degree(v) != x.order() {
                return fail;
            }
            let (nb, mapping) = neighborhood_graph(g, v);
            if nb.edge_count() != x.edge_count() {
                return fail;
            }
            let nb_colors = Coloring::uniform(nb.order());
            let nb_form = canonical_form_uncolored(&nb);
            if !nb_form.same_graph(&x_form) {
                return fail;
            }
            let map = iso::isomorphism_from_forms(&nb, x, &nb_colors, &x_colors, &nb_form, &x_form)
                .or_else(|| iso::are_isomorphic(&nb, x, &nb_colors, &x_colors));
            match map {
                Some(map) => {
                    let pairs: Vec<u64> = mapping
                        .iter()
                        .zip(&map)
                        .flat_map(|(&orig, &img)| [orig as u64, img as u64])
                        .collect();
                    VertexResult {
                        vertex: v,
                        isomorphic: true,
                        bijection_digest: Some(iso::sha256_hex_words(&pairs)),
                    }
                }
                None => fail,
            }
        })
        .collect();
    let failures: Vec<usize> = results
        .iter()
        .filter(|r| !r.isomorphic)
        .map(|r| r.vertex)
        .collect();
    LocallyXReport {
        graph_digest: iso::sha256_hex_words(
            &g.to_graph6().bytes().map(u64::from).collect::<Vec<_>>(),
        ),
        reference_digest: x_form.digest(),
        graph_order: g.order(),
        assumed_transitive: opts.orbit_representatives.is_some(),
        total: results.len(),
        verified: results.len() - failures.len(),
        results,
        failures,
    }
}

/// Incidence graph of the residue of the first type-0 element of `Γ`: the
/// reference `X` for the locally-X check of `Γ`'s incidence graph.
pub fn residue_reference_graph(p: GammaParams) -> Result<Graph> {
    if p.r() < 3 {
        return Err(Error::Rank {
            rank: p.r() as usize,
            reason: "rank-one residues are edgeless; locally-X needs r >= 3".into(),
        });
    }
    let gamma = build_gamma(p)?;
    let sys = gamma.system();
    let (res, _) = sys.residue(&Flag::new(&sys, vec![0])?)?;
    Ok(res.graph().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::{kneser_graph, KneserParams};

    fn kg(n: u32, k: u32) -> Graph {
        kneser_graph(KneserParams::new(n, k).unwrap())
    }

    #[test]
    fn neighborhoods() {
        let (t, map) = neighborhood_graph(&Graph::complete(4), 2);
        assert_eq!(t, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 3]);
        let p = kg(5, 2);
        for v in 0..10 {
            let (nb, _) = neighborhood_graph(&p, v);
            assert_eq!((nb.order(), nb.edge_count()), (3, 0));
        }
    }

    #[test]
    fn locally_petersen() {
        let report = is_locally_x(&kg(7, 2), &kg(5, 2));
        assert!(report.passed());
        assert_eq!(report.verified, 21);
        assert!(report.results.iter().all(|r| r.bijection_digest.is_some()));
    }

    #[test]
    fn cycle_is_not_locally_edge() {
        let report = is_locally_x(&Graph::cycle(4), &Graph::path(2));
        assert!(!report.passed());
        assert_eq!(report.failures, vec![0, 1, 2, 3]);
        assert_eq!(report.verified + report.failures.len(), report.total);
        let json = report.to_json();
        assert_eq!(json["failed"], serde_json::json!([0, 1, 2, 3]));
    }

    #[test]
    fn same_size_wrong_structure_fails() {
        // K4 minus an edge has neighborhoods P3 and K2+K1; X = P3 fails on two vertices
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        let report = is_locally_x(&g, &Graph::path(3));
        assert_eq!(report.failures, vec![1, 3]);
    }

    #[test]
    fn kneser_is_locally_kneser() {
        for k in 1..=3u32 {
            for n in 2 * k + 1..=10 {
                if n - k < 2 * k + 1 {
                    continue;
                }
                let report = is_locally_x(&kg(n, k), &kg(n - k, k));
                assert!(report.passed(), "KG({n},{k})");
            }
        }
    }

    #[test]
    fn transitive_shortcut() {
        let opts = LocallyXOptions {
            orbit_representatives: Some(vec![0]),
        };
        let report = is_locally_x_with(&kg(7, 2), &kg(5, 2), &opts);
        assert!(report.passed());
        assert_eq!(report.total, 1);
        assert!(report.assumed_transitive);
    }

    #[test]
    fn reference_graphs() {
        let d = residue_reference_graph(GammaParams::new(5, 2, 3).unwrap()).unwrap();
        assert_eq!(d.order(), 20);
        assert_eq!(d.regular_degree(), Some(3));
        assert!(d.is_bipartite());
        assert_eq!(d.girth(), crate::graph::Length::Finite(6));
        let x = residue_reference_graph(GammaParams::new(6, 2, 3).unwrap()).unwrap();
        assert_eq!(x.order(), 30);
        assert_eq!(x.regular_degree(), Some(6));
        assert!(matches!(
            residue_reference_graph(GammaParams::new(5, 2, 2).unwrap()),
            Err(Error::Rank { .. })
        ));
    }
}
