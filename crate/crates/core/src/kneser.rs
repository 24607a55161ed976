//! Kneser graphs `KG(n,k)`, closed-form predictions for their odd girth and
//! for the gonality and diameters of their neighborhood geometries, and the
//! explicit even/odd path constructions between two vertices.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::incidence::IncidenceSystem;
use crate::subsets::{binomial, GroundSet, KSubset};

/// Parameters of `KG(n,k)` with `k >= 1` and `n >= 2k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KneserParams {
    n: u32,
    k: u32,
}

impl KneserParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if n <= 2 * k {
            return Err(Error::InvalidParams(format!(
                "n must exceed 2k (got n={n}, k={k})"
            )));
        }
        GroundSet::new(n)?;
        Ok(KneserParams { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.n).expect("validated")
    }

    /// `n - 2k`, the slack every formula divides by.
    fn slack(&self) -> u32 {
        self.n - 2 * self.k
    }

    pub fn vertex_count(&self) -> u64 {
        binomial(u64::from(self.n), u64::from(self.k))
    }

    /// Every vertex has `C(n-k, k)` neighbors.
    pub fn degree(&self) -> u64 {
        binomial(u64::from(self.n - self.k), u64::from(self.k))
    }
}

/// `KG(n,k)`: vertices are the `k`-subsets in colex order, adjacent when disjoint.
pub fn kneser_graph(p: KneserParams) -> Graph {
    let verts = p.ground().enumerate_k_subsets(p.k);
    Graph::from_predicate(verts.len(), |u, v| verts[u].disjoint(verts[v]))
}

/// `2⌈k/(n-2k)⌉ + 1`.
pub fn predicted_odd_girth(p: KneserParams) -> u32 {
    2 * p.k.div_ceil(p.slack()) + 1
}

/// Gonality of the neighborhood geometry: 3 when `n = 2k+1`, else 2.
pub fn predicted_gonality(p: KneserParams) -> u32 {
    if p.n == 2 * p.k + 1 {
        3
    } else {
        2
    }
}

/// Both diameters of the neighborhood geometry: `2⌈k/(n-2k)⌉ + 1`.
pub fn predicted_diameter(p: KneserParams) -> u32 {
    2 * p.k.div_ceil(p.slack()) + 1
}

/// `C(n-k, k) - 1`: a point of the neighborhood geometry lies on `C(n-k,k)` lines.
pub fn predicted_order(p: KneserParams) -> u64 {
    p.degree() - 1
}

fn check_vertex(p: KneserParams, s: KSubset) -> Result<()> {
    if !p.ground().contains(s) || s.k() != p.k {
        return Err(Error::SubsetOutOfRange);
    }
    Ok(())
}

/// Consecutive chunks of `s` (ascending points) of size `size`, the last
/// one possibly shorter.
fn chunks(s: KSubset, size: u32) -> Vec<KSubset> {
    let points: Vec<u32> = s.points().collect();
    points
        .chunks(size as usize)
        .map(|c| KSubset::from_bits(c.iter().fold(0, |m, &p| m | 1 << p)))
        .collect()
}

fn union_all<'a>(parts: impl IntoIterator<Item = &'a KSubset>) -> KSubset {
    parts
        .into_iter()
        .fold(KSubset::EMPTY, |acc, s| acc.union(*s))
}

/// A walk `A = A_0, A_1, …, A_2l = B` of length `2l = 2⌈(k-c)/(n-2k)⌉` with
/// `c = |A ∩ B|`.
///
/// `A∖B` and `B∖A` are cut into ascending chunks `X_1..X_l`, `Y_1..Y_l` of
/// size `n-2k`. Even steps are `Y_1..Y_i ∪ X_(i+1)..X_l ∪ (A∩B)`; the odd step
/// between them is `X_1..X_(i-1) ∪ Y_(i+1)..Y_l` padded with the lowest
/// points outside `A ∪ B`.
pub fn construct_even_path(a: KSubset, b: KSubset, p: KneserParams) -> Result<Vec<KSubset>> {
    check_vertex(p, a)?;
    check_vertex(p, b)?;
    let ground = p.ground();
    let common = a.intersection(b);
    let outside = ground.complement(a.union(b));
    let xs = chunks(a.difference(b), p.slack());
    let ys = chunks(b.difference(a), p.slack());
    let l = xs.len();
    debug_assert_eq!(l, ys.len());
    let mut path = vec![a];
    for i in 1..=l {
        let base = union_all(&xs[..i - 1]).union(union_all(&ys[i..]));
        let pad = outside.lowest(p.k - base.k());
        path.push(base.union(pad));
        path.push(union_all(&ys[..i]).union(union_all(&xs[i..])).union(common));
    }
    verify_walk(&path, p, a, b)?;
    debug_assert_eq!(
        path.len() - 1,
        2 * (p.k - common.k()).div_ceil(p.slack()) as usize
    );
    Ok(path)
}

/// A walk from `A` to `B` of odd length `2⌈c/(n-2k)⌉ + 1`, `c = |A ∩ B|`:
/// step to `A' = (B∖A) ∪ D'` with `D'` the lowest `c` points outside `A ∪ B`,
/// then follow the even construction from `A'` to `B`.
pub fn construct_odd_path(a: KSubset, b: KSubset, p: KneserParams) -> Result<Vec<KSubset>> {
    check_vertex(p, a)?;
    check_vertex(p, b)?;
    let c = a.intersection_size(b);
    let outside = p.ground().complement(a.union(b));
    let pivot = b.difference(a).union(outside.lowest(c));
    let mut path = vec![a];
    path.extend(construct_even_path(pivot, b, p)?);
    verify_walk(&path, p, a, b)?;
    debug_assert_eq!(path.len() - 1, 2 * c.div_ceil(p.slack()) as usize + 1);
    Ok(path)
}

fn verify_walk(path: &[KSubset], p: KneserParams, a: KSubset, b: KSubset) -> Result<()> {
    let ok = path.first() == Some(&a)
        && path.last() == Some(&b)
        && path.iter().all(|s| check_vertex(p, *s).is_ok())
        && path.windows(2).all(|w| w[0].disjoint(w[1]));
    assert!(ok, "path construction produced an invalid walk");
    Ok(())
}

/// Neighborhood geometry of `g`: points `(v,0)` at index `v`, lines `(v,1)`
/// at index `n+v`, with `(p,0)` incident to `(q,1)` iff `p ~ q`. The
/// incidence graph is exactly the bipartite double cover of `g`.
pub fn neighborhood_geometry(g: &Graph) -> IncidenceSystem {
    let n = g.order();
    let mut types = vec![0; n];
    types.extend(std::iter::repeat_n(1, n));
    IncidenceSystem::from_graph(2, types, g.bipartite_double_cover())
        .expect("double cover is bipartite by type")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Length;

    fn params(n: u32, k: u32) -> KneserParams {
        KneserParams::new(n, k).unwrap()
    }

    fn subset(p: KneserParams, pts: &[u32]) -> KSubset {
        p.ground().subset(pts).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(KneserParams::new(4, 2).is_err());
        assert!(KneserParams::new(5, 0).is_err());
        assert!(KneserParams::new(65, 2).is_err());
        let e = KneserParams::new(4, 2).unwrap_err();
        assert!(e.to_string().contains("n must exceed 2k"));
    }

    #[test]
    fn constructions() {
        let pet = kneser_graph(params(5, 2));
        assert_eq!(pet.order(), 10);
        assert_eq!(pet.edge_count(), 15);
        assert_eq!(pet.regular_degree(), Some(3));
        for n in 3..9 {
            assert_eq!(kneser_graph(params(n, 1)), Graph::complete(n as usize));
        }
        let kg73 = kneser_graph(params(7, 3));
        assert_eq!(kg73.order(), 35);
        assert_eq!(kg73.regular_degree(), Some(4));
    }

    #[test]
    fn predictors() {
        assert_eq!(predicted_odd_girth(params(5, 2)), 5);
        assert_eq!(predicted_odd_girth(params(7, 3)), 7);
        assert_eq!(predicted_odd_girth(params(9, 3)), 3);
        assert_eq!(predicted_gonality(params(5, 2)), 3);
        assert_eq!(predicted_diameter(params(5, 2)), 5);
        assert_eq!(predicted_gonality(params(6, 2)), 2);
        assert_eq!(predicted_diameter(params(6, 2)), 3);
        assert_eq!(predicted_gonality(params(7, 3)), 3);
        assert_eq!(predicted_diameter(params(7, 3)), 7);
        assert_eq!(predicted_order(params(6, 2)), 5);
        assert_eq!(kneser_graph(params(7, 3)).odd_girth(), Length::Finite(7));
        assert_eq!(kneser_graph(params(9, 3)).odd_girth(), Length::Finite(3));
    }

    #[test]
    fn even_paths() {
        let p = params(7, 3);
        let a = subset(p, &[0, 1, 2]);
        assert_eq!(construct_even_path(a, a, p).unwrap(), vec![a]);
        let path = construct_even_path(a, subset(p, &[0, 1, 3]), p).unwrap();
        assert_eq!(path.len(), 3);
        assert!(path[1].disjoint(a) && path[1].disjoint(path[2]));
        let path = construct_even_path(a, subset(p, &[3, 4, 5]), p).unwrap();
        assert_eq!(path.len() - 1, 6);
        // the walk exists in the graph: check against the graph's adjacency
        let g = kneser_graph(p);
        let idx: Vec<usize> = path.iter().map(|s| p.ground().rank(*s).unwrap()).collect();
        assert!(g.is_walk(&idx));
    }

    #[test]
    fn odd_paths() {
        let p = params(7, 3);
        let a = subset(p, &[0, 1, 2]);
        let b = subset(p, &[3, 4, 5]);
        assert_eq!(construct_odd_path(a, b, p).unwrap(), vec![a, b]);
        let pet = params(5, 2);
        let a2 = subset(pet, &[0, 1]);
        let closed = construct_odd_path(a2, a2, pet).unwrap();
        assert_eq!(closed.len() - 1, 5);
        assert_eq!(closed[0], a2);
        assert_eq!(closed[5], a2);
        let path = construct_odd_path(a, subset(p, &[2, 3, 4]), p).unwrap();
        assert_eq!(path.len() - 1, 3);
    }

    #[test]
    fn path_input_validation() {
        let p = params(7, 3);
        let bad = subset(p, &[0, 1]);
        let a = subset(p, &[0, 1, 2]);
        assert_eq!(construct_even_path(bad, a, p), Err(Error::SubsetOutOfRange));
        assert_eq!(
            construct_odd_path(a, KSubset::from_bits(0b111 << 6), p),
            Err(Error::SubsetOutOfRange)
        );
    }

    #[test]
    fn all_pairs_small_instances() {
        for (n, k) in [(5, 2), (7, 3), (8, 3), (7, 2), (9, 4)] {
            let p = params(n, k);
            let verts = p.ground().enumerate_k_subsets(k);
            for &a in &verts {
                for &b in &verts {
                    let c = a.intersection_size(b);
                    let even = construct_even_path(a, b, p).unwrap();
                    assert_eq!(even.len() - 1, 2 * (k - c).div_ceil(n - 2 * k) as usize);
                    let odd = construct_odd_path(a, b, p).unwrap();
                    assert_eq!(odd.len() - 1, 2 * c.div_ceil(n - 2 * k) as usize + 1);
                }
            }
        }
    }

    #[test]
    fn neighborhood_geometries() {
        let k2 = neighborhood_geometry(&Graph::path(2));
        assert_eq!(k2.graph().edge_count(), 2);
        assert!(!k2.is_residually_connected().connected);
        let pet = kneser_graph(params(5, 2));
        let des = neighborhood_geometry(&pet);
        assert_eq!(des.type_sizes(), vec![10, 10]);
        assert_eq!(des.graph(), &pet.bipartite_double_cover());
        assert_eq!(des.graph().regular_degree(), Some(3));
        let kg62 = neighborhood_geometry(&kneser_graph(params(6, 2)));
        assert_eq!(kg62.type_sizes(), vec![15, 15]);
        assert_eq!(kg62.min_rank_one_residue(), Some(6));
    }
}
