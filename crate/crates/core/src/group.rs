//! Permutations of the ground set acting on `Γ`, automorphism checks, and
//! orbit computations on flags.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::GammaGeometry;
use crate::incidence::{Flag, IncidenceSystem};
use crate::iso::UnionFind;
use crate::subsets::KSubset;

/// A bijection of `{0, …, m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let m = image.len();
        let mut hit = vec![false; m];
        for &p in &image {
            let p = p as usize;
            if p >= m || hit[p] {
                return Err(Error::NotAPermutation(format!("{image:?}")));
            }
            hit[p] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(m: u32) -> Self {
        Permutation {
            image: (0..m).collect(),
        }
    }

    pub fn transposition(m: u32, a: u32, b: u32) -> Result<Self> {
        let mut image: Vec<u32> = (0..m).collect();
        if a >= m || b >= m {
            return Err(Error::NotAPermutation(format!("({a} {b}) on {m} points")));
        }
        image.swap(a as usize, b as usize);
        Ok(Permutation { image })
    }

    /// `(i i+1)` for `i = 0..m-2`; generates the full symmetric group.
    pub fn adjacent_transpositions(m: u32) -> Vec<Permutation> {
        (0..m.saturating_sub(1))
            .map(|i| Self::transposition(m, i, i + 1).unwrap())
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.image.len() as u32
    }

    pub fn apply(&self, p: u32) -> u32 {
        self.image[p as usize]
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    /// Pointwise image of a subset.
    pub fn apply_set(&self, s: KSubset) -> KSubset {
        KSubset::from_bits(s.points().fold(0u64, |m, p| m | 1 << self.apply(p)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&p| self.apply(p)).collect(),
        }
    }
}

/// Nonempty list of generating permutations.
#[derive(Debug, Clone)]
pub struct GeneratorSet(Vec<Permutation>);

impl GeneratorSet {
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidParams(
                "generator set must be nonempty".into(),
            ));
        }
        let m = gens[0].degree();
        if gens.iter().any(|g| g.degree() != m) {
            return Err(Error::InvalidParams("generators of mixed degree".into()));
        }
        Ok(GeneratorSet(gens))
    }

    /// Adjacent transpositions of the geometry's ground set (the identity
    /// when the ground set has a single point).
    pub fn symmetric(m: u32) -> Self {
        let mut gens = Permutation::adjacent_transpositions(m);
        if gens.is_empty() {
            gens.push(Permutation::identity(m));
        }
        GeneratorSet(gens)
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.0
    }

    /// The maps each generator induces on the elements of `gamma`.
    pub fn element_maps(&self, gamma: &GammaGeometry) -> Result<Vec<Vec<usize>>> {
        self.0
            .iter()
            .map(|p| induced_element_map(gamma, p))
            .collect()
    }
}

/// `(t, S) ↦ (t, pi(S))`.
pub fn act_on_element(gamma: &GammaGeometry, pi: &Permutation, e: usize) -> Result<usize> {
    if pi.degree() != gamma.ground().size() {
        return Err(Error::NotAPermutation(format!(
            "degree {} does not match ground set of size {}",
            pi.degree(),
            gamma.ground().size()
        )));
    }
    let (t, s) = gamma.element(e);
    gamma.index_of(t, pi.apply_set(s))
}

pub fn induced_element_map(gamma: &GammaGeometry, pi: &Permutation) -> Result<Vec<usize>> {
    (0..gamma.len())
        .map(|e| act_on_element(gamma, pi, e))
        .collect()
}

/// Whether `map` is a bijection preserving incidence in both directions and
/// inducing a bijection on types.
pub fn is_automorphism(sys: &IncidenceSystem, map: &[usize]) -> bool {
    let n = sys.len();
    if map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    let mut type_map = vec![usize::MAX; sys.rank()];
    let mut type_hit = vec![false; sys.rank()];
    for (e, &img) in map.iter().enumerate() {
        let (from, to) = (sys.type_of(e), sys.type_of(img));
        if type_map[from] == usize::MAX {
            if type_hit[to] {
                return false;
            }
            type_map[from] = to;
            type_hit[to] = true;
        } else if type_map[from] != to {
            return false;
        }
    }
    // a bijection sending edges to edges is onto the edge set
    let g = sys.graph();
    g.edge_list()
        .iter()
        .all(|&(a, b)| g.has_edge(map[a], map[b]))
}

/// Whether `map` is an automorphism fixing every type.
pub fn is_type_preserving(sys: &IncidenceSystem, map: &[usize]) -> bool {
    is_automorphism(sys, map) && (0..sys.len()).all(|e| sys.type_of(map[e]) == sys.type_of(e))
}

/// Whether `pi` induces a type-preserving automorphism of `gamma`.
pub fn is_type_preserving_automorphism(gamma: &GammaGeometry, pi: &Permutation) -> bool {
    match induced_element_map(gamma, pi) {
        Ok(map) => is_type_preserving(&gamma.system(), &map),
        Err(_) => false,
    }
}

/// `(type i, k-th element of that type) ↦ (type sigma(i), k-th element)`,
/// with whether the result is an automorphism.
pub fn type_swap_map(sys: &IncidenceSystem, sigma: &[usize]) -> (Vec<usize>, bool) {
    let rank = sys.rank();
    let identity: Vec<usize> = (0..sys.len()).collect();
    let mut hit = vec![false; rank];
    if sigma.len() != rank
        || sigma
            .iter()
            .any(|&t| t >= rank || std::mem::replace(&mut hit[t], true))
    {
        return (identity, false);
    }
    let by_type: Vec<Vec<usize>> = (0..rank).map(|t| sys.elements_of_type(t)).collect();
    if by_type.iter().any(|v| v.len() != by_type[0].len()) {
        return (identity, false);
    }
    let mut map = vec![0; sys.len()];
    for (t, elems) in by_type.iter().enumerate() {
        for (pos, &e) in elems.iter().enumerate() {
            map[e] = by_type[sigma[t]][pos];
        }
    }
    let valid = is_automorphism(sys, &map);
    (map, valid)
}

fn image_of(flag: &[usize], map: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = flag.iter().map(|&e| map[e]).collect();
    img.sort_unstable();
    img
}

/// Size of the orbit of `start` under the group generated by `maps`.
pub fn chamber_orbit_size(maps: &[Vec<usize>], start: &Flag) -> usize {
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.elements().to_vec()]);
    let mut queue = VecDeque::from([start.elements().to_vec()]);
    while let Some(f) = queue.pop_front() {
        for m in maps {
            let img = image_of(&f, m);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    seen.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagOrbits {
    pub types: Vec<usize>,
    pub total_flags: usize,
    pub representatives: Vec<Flag>,
}

impl FlagOrbits {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Partition the flags of type `types` into orbits of the group generated by
/// `maps`. Representatives are the least flag of each orbit.
pub fn flag_orbits(sys: &IncidenceSystem, maps: &[Vec<usize>], types: &[usize]) -> FlagOrbits {
    let flags = sys.flags_of_type(types);
    let index: std::collections::HashMap<&[usize], usize> = flags
        .iter()
        .enumerate()
        .map(|(i, f)| (f.elements(), i))
        .collect();
    let mut uf = UnionFind::new(flags.len());
    for (i, f) in flags.iter().enumerate() {
        for m in maps {
            let img = image_of(f.elements(), m);
            let j = *index
                .get(img.as_slice())
                .expect("maps must send flags to flags of the same type");
            uf.union(i, j);
        }
    }
    let mut representatives = Vec::new();
    for (i, f) in flags.iter().enumerate() {
        if uf.find(i) == i {
            representatives.push(f.clone());
        }
    }
    let mut types = types.to_vec();
    types.sort_unstable();
    FlagOrbits {
        types,
        total_flags: flags.len(),
        representatives,
    }
}

pub fn flag_orbit_count(sys: &IncidenceSystem, maps: &[Vec<usize>], types: &[usize]) -> usize {
    flag_orbits(sys, maps, types).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCertificate {
    pub orbit_size: usize,
    pub total: u128,
    pub transitive: bool,
    pub generators_checked: usize,
}

/// Orbit of the first chamber under the adjacent transpositions of `Ω`,
/// compared against the chamber count. Generators are verified as
/// type-preserving automorphisms first; only verified ones are used.
pub fn chamber_orbit_certificate(gamma: &GammaGeometry) -> Result<OrbitCertificate> {
    let sys = gamma.system();
    let gens = GeneratorSet::symmetric(gamma.ground().size());
    let maps: Vec<Vec<usize>> = gens
        .element_maps(gamma)?
        .into_iter()
        .filter(|m| is_type_preserving(&sys, m))
        .collect();
    let start = sys
        .flags_of_type(&(0..sys.rank()).collect::<Vec<_>>())
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidParams("geometry has no chambers".into()))?;
    let orbit_size = chamber_orbit_size(&maps, &start);
    let total = crate::gamma::chamber_count(gamma.params());
    Ok(OrbitCertificate {
        orbit_size,
        total,
        transitive: orbit_size as u128 == total,
        generators_checked: maps.len(),
    })
}

/// Verified automorphisms of `Γ` coming from `S_Ω × S_r`. This is a lower
/// bound on the automorphism group only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismWitness {
    pub omega_generators: usize,
    pub omega_generators_verified: usize,
    pub type_permutations: usize,
    pub type_permutations_verified: usize,
    /// `|Ω|! · r!`.
    pub subgroup_order: u128,
    /// Order of `⟨transpositions of Ω⟩` by tuple orbit, when `|Ω| <= 8`.
    pub omega_order: Option<usize>,
    /// Order of the group generated by all verified element maps, when it
    /// fits under the search limit.
    pub generated_order: Option<usize>,
}

impl AutomorphismWitness {
    pub fn all_verified(&self) -> bool {
        self.omega_generators == self.omega_generators_verified
            && self.type_permutations == self.type_permutations_verified
    }
}

fn all_permutations(r: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for t in 0..used.len() {
            if !used[t] {
                used[t] = true;
                cur.push(t);
                go(cur, used, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// Check every adjacent transposition of `Ω` and every type permutation
/// (adjacent type transpositions once `r > 6`). Group orders are computed
/// by closure when the expected order is at most `order_limit`.
pub fn automorphism_witness(
    gamma: &GammaGeometry,
    order_limit: usize,
) -> Result<AutomorphismWitness> {
    let sys = gamma.system();
    let m = gamma.ground().size();
    let r = sys.rank();
    let omega_maps = GeneratorSet::symmetric(m).element_maps(gamma)?;
    let omega_ok: Vec<&Vec<usize>> = omega_maps
        .iter()
        .filter(|g| is_type_preserving(&sys, g))
        .collect();
    let sigmas: Vec<Vec<usize>> = if r <= 6 {
        all_permutations(r)
    } else {
        (0..r - 1)
            .map(|i| {
                let mut s: Vec<usize> = (0..r).collect();
                s.swap(i, i + 1);
                s
            })
            .collect()
    };
    let swaps: Vec<Vec<usize>> = sigmas
        .iter()
        .map(|s| type_swap_map(&sys, s))
        .filter(|(_, ok)| *ok)
        .map(|(map, _)| map)
        .collect();
    let fact = |x: u128| (1..=x).product::<u128>();
    let subgroup_order = fact(u128::from(m)) * fact(r as u128);
    let omega_order = (m <= 8).then(|| {
        let gens: Vec<Vec<usize>> = GeneratorSet::symmetric(m)
            .perms()
            .iter()
            .map(|p| p.image().iter().map(|&x| x as usize).collect())
            .collect();
        group_order(&gens, usize::MAX).expect("no limit")
    });
    let generated_order = if subgroup_order <= order_limit as u128 {
        let gens: Vec<Vec<usize>> = omega_ok
            .iter()
            .map(|g| (*g).clone())
            .chain(swaps.iter().cloned())
            .collect();
        group_order(&gens, order_limit)
    } else {
        None
    };
    Ok(AutomorphismWitness {
        omega_generators: omega_maps.len(),
        omega_generators_verified: omega_ok.len(),
        type_permutations: sigmas.len(),
        type_permutations_verified: swaps.len(),
        subgroup_order,
        omega_order,
        generated_order,
    })
}

/// Order of the group generated by permutations of `0..degree`, computed as
/// the orbit of the base tuple `(0, 1, …, degree-1)` (its stabilizer is
/// trivial). Returns `None` once the orbit passes `limit`.
pub fn group_order(gens: &[Vec<usize>], limit: usize) -> Option<usize> {
    let degree = gens.first().map_or(0, Vec::len);
    let base: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([base.clone()]);
    let mut queue = VecDeque::from([base]);
    while let Some(t) = queue.pop_front() {
        for g in gens {
            let img: Vec<u32> = t.iter().map(|&p| g[p as usize] as u32).collect();
            if seen.insert(img.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(img);
            }
        }
    }
    Some(seen.len())
}
