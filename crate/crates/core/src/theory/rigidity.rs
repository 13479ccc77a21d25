//! Layer-by-layer rigidity: the unique-intersection test and extension of a
//! local map to a full automorphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{distance_partition, DistancePartition, Graph, VertexSet};
use crate::perm::Permutation;
use crate::search::check_automorphism;

/// Result of the unique-intersection test for one vertex `v ∈ Γ_i(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionWitness {
    pub vertex: usize,
    pub layer: usize,
    /// `N(v) ∩ Γ_{i-1}(x)`.
    pub back_neighbors: Vec<usize>,
    /// `Γ_i(x) ∩ ⋂_{w ∈ back_neighbors} N(w)`.
    pub common: Vec<usize>,
    pub passed: bool,
}

impl IntersectionWitness {
    /// Members of the intersection other than `v` itself.
    pub fn extras(&self) -> Vec<usize> {
        self.common
            .iter()
            .copied()
            .filter(|&w| w != self.vertex)
            .collect()
    }
}

/// Test whether `v` is the only vertex of its layer adjacent to all of its
/// back-neighbors.
pub fn unique_intersection_witness(g: &Graph, x: usize, v: usize) -> Result<IntersectionWitness> {
    let part = distance_partition(g, x)?;
    unique_intersection_in(g, &part, v)
}

/// Same as [`unique_intersection_witness`], reusing a distance partition.
pub fn unique_intersection_in(
    g: &Graph,
    part: &DistancePartition,
    v: usize,
) -> Result<IntersectionWitness> {
    if v >= g.vertex_count() || part.dist.len() != g.vertex_count() {
        return Err(Error::IndexOutOfRange {
            index: v,
            size: g.vertex_count(),
        });
    }
    let layer = match part.dist[v] {
        Some(0) => {
            return Err(Error::Parameter("v must differ from the source".into()));
        }
        Some(i) => i,
        None => {
            return Err(Error::Parameter(format!(
                "vertex {v} is unreachable from {}",
                part.source
            )));
        }
    };
    let mut back = g.neighbors(v).clone();
    back.intersect_with(&part.layer_set(layer - 1));
    let mut common = part.layer_set(layer);
    for w in back.ones() {
        common.intersect_with(g.neighbors(w));
    }
    let common: Vec<usize> = common.ones().collect();
    Ok(IntersectionWitness {
        vertex: v,
        layer,
        back_neighbors: back.ones().collect(),
        passed: common == [v],
        common,
    })
}

/// A map defined on part of the vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialVertexMap {
    map: BTreeMap<usize, usize>,
}

impl PartialVertexMap {
    pub fn new() -> PartialVertexMap {
        PartialVertexMap::default()
    }

    /// The restriction of `p` to `domain`.
    pub fn restrict(p: &Permutation, domain: impl IntoIterator<Item = usize>) -> PartialVertexMap {
        PartialVertexMap {
            map: domain.into_iter().map(|v| (v, p.apply(v))).collect(),
        }
    }

    pub fn insert(&mut self, from: usize, to: usize) -> Option<usize> {
        self.map.insert(from, to)
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.map.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }
}

impl FromIterator<(usize, usize)> for PartialVertexMap {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        PartialVertexMap {
            map: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReconstructionError {
    #[error("seed is not defined exactly on the closed neighborhood: {0}")]
    Domain(String),
    #[error("seed is not injective: {0} and {1} share an image")]
    NotInjective(usize, usize),
    #[error("seed does not preserve adjacency between {0} and {1}")]
    Adjacency(usize, usize),
    #[error("vertex {vertex} in layer {layer} has {} candidate images", candidates.len())]
    Ambiguous {
        vertex: usize,
        layer: usize,
        candidates: Vec<usize>,
    },
    #[error("vertex {0} is not reachable from the source")]
    Unreachable(usize),
    #[error("the extended map is not an automorphism")]
    NotAutomorphism,
    #[error(transparent)]
    Graph(#[from] Error),
}

/// Extend a map given on `{x} ∪ N(x)` to the whole graph, layer by layer.
///
/// A vertex `u ∈ Γ_i(x)` is sent to the unique vertex of `Γ_i(f(x))`
/// adjacent to `f(w)` for every back-neighbor `w` of `u`.
pub fn local_reconstruction(
    g: &Graph,
    x: usize,
    seed: &PartialVertexMap,
) -> std::result::Result<Permutation, ReconstructionError> {
    let n = g.vertex_count();
    let from = distance_partition(g, x)?;
    let mut closed: Vec<usize> = from.layers[0].clone();
    closed.extend(from.layers.get(1).into_iter().flatten());
    closed.sort_unstable();
    let domain: Vec<usize> = seed.iter().map(|(a, _)| a).collect();
    if domain != closed {
        return Err(ReconstructionError::Domain(format!(
            "expected {} vertices, got {}",
            closed.len(),
            domain.len()
        )));
    }
    let mut image = vec![usize::MAX; n];
    let mut owner = vec![usize::MAX; n];
    for (a, b) in seed.iter() {
        if b >= n {
            return Err(Error::IndexOutOfRange { index: b, size: n }.into());
        }
        if owner[b] != usize::MAX {
            return Err(ReconstructionError::NotInjective(owner[b], a));
        }
        owner[b] = a;
        image[a] = b;
    }
    for (i, &a) in closed.iter().enumerate() {
        for &b in &closed[i + 1..] {
            if g.has_edge(a, b) != g.has_edge(image[a], image[b]) {
                return Err(ReconstructionError::Adjacency(a, b));
            }
        }
    }
    let fx = image[x];
    let to = distance_partition(g, fx)?;
    if closed
        .iter()
        .any(|&a| a != x && to.dist[image[a]] != Some(1))
        || to.layers.get(1).map_or(0, Vec::len) != closed.len() - 1
    {
        return Err(ReconstructionError::Adjacency(x, x));
    }
    let empty = VertexSet::with_capacity(n);
    for i in 2..from.layers.len() {
        let back_layer = from.layer_set(i - 1);
        let target = if i < to.layers.len() {
            to.layer_set(i)
        } else {
            empty.clone()
        };
        for &u in &from.layers[i] {
            let mut cand = target.clone();
            let mut back = g.neighbors(u).clone();
            back.intersect_with(&back_layer);
            for w in back.ones() {
                cand.intersect_with(g.neighbors(image[w]));
            }
            let cand: Vec<usize> = cand.ones().collect();
            match cand[..] {
                [c] if owner[c] == usize::MAX => {
                    owner[c] = u;
                    image[u] = c;
                }
                [c] => return Err(ReconstructionError::NotInjective(owner[c], u)),
                _ => {
                    return Err(ReconstructionError::Ambiguous {
                        vertex: u,
                        layer: i,
                        candidates: cand,
                    })
                }
            }
        }
    }
    if let Some(u) = from.unreachable().first() {
        return Err(ReconstructionError::Unreachable(*u));
    }
    let p = Permutation::from_images(image)?;
    if !check_automorphism(g, &p)? {
        return Err(ReconstructionError::NotAutomorphism);
    }
    Ok(p)
}
