//! Vertex, edge and distance transitivity from a generating set.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{distance_partition, Graph};
use crate::group::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityProfile {
    pub vertex: bool,
    pub edge: bool,
    pub distance: bool,
    /// Number of orbits on ordered pairs at each distance, `0..=diameter`.
    pub pair_orbits_by_distance: Vec<usize>,
    /// Orbits on ordered pairs in different components.
    pub disconnected_pair_orbits: usize,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.0[a as usize] != a {
            let up = self.0[self.0[a as usize] as usize];
            self.0[a as usize] = up;
            a = up;
        }
        a
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Orbits are closures under `aut`'s generators: on vertices, on unordered
/// edges, and on ordered vertex pairs grouped by distance.
pub fn transitivity_profile(g: &Graph, aut: &PermGroup) -> Result<TransitivityProfile> {
    let n = g.vertex_count();
    if aut.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: aut.degree(),
        });
    }
    if n * n > u32::MAX as usize {
        return Err(Error::Parameter(format!(
            "{n} vertices is too many for pair orbits"
        )));
    }
    let gens = aut.generators();
    let vertex = aut.orbits().len() <= 1;

    let edges = g.edges();
    let mut uf = UnionFind::new(edges.len());
    for p in gens {
        for (k, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (p.apply(u), p.apply(v));
            let image = edges
                .binary_search(&(a.min(b), a.max(b)))
                .map_err(|_| Error::NotAnAutomorphism)?;
            uf.union(k as u32, image as u32);
        }
    }
    let edge = (0..edges.len() as u32).all(|k| uf.find(k) == 0);

    let mut pairs = UnionFind::new(n * n);
    for p in gens {
        for u in 0..n {
            let pu = p.apply(u);
            for v in 0..n {
                pairs.union((u * n + v) as u32, (pu * n + p.apply(v)) as u32);
            }
        }
    }
    let mut roots: Vec<HashSet<u32>> = Vec::new();
    let mut apart: HashSet<u32> = HashSet::new();
    for u in 0..n {
        let part = distance_partition(g, u)?;
        for v in 0..n {
            let r = pairs.find((u * n + v) as u32);
            let bucket = match part.dist[v] {
                Some(d) => {
                    if roots.len() <= d {
                        roots.resize(d + 1, HashSet::new());
                    }
                    &mut roots[d]
                }
                None => &mut apart,
            };
            bucket.insert(r);
        }
    }
    let by_distance: Vec<usize> = roots.iter().map(HashSet::len).collect();
    Ok(TransitivityProfile {
        vertex,
        edge,
        distance: by_distance.iter().all(|&c| c <= 1) && apart.len() <= 1,
        pair_orbits_by_distance: by_distance,
        disconnected_pair_orbits: apart.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complement, cycle_graph, johnson_graph, path_graph};
    use crate::search::automorphism_group;

    fn profile(g: &Graph) -> TransitivityProfile {
        transitivity_profile(g, &automorphism_group(g).unwrap()).unwrap()
    }

    #[test]
    fn johnson_graphs_are_distance_transitive() {
        for (n, m) in [(4, 2), (5, 2), (6, 3), (7, 3)] {
            let p = profile(&johnson_graph(n, m).unwrap());
            assert!(p.vertex && p.edge && p.distance, "J({n},{m})");
            assert_eq!(p.pair_orbits_by_distance, vec![1; m + 1]);
        }
    }

    #[test]
    fn paths_and_cycles() {
        let p = profile(&path_graph(4).unwrap());
        assert!(!p.vertex && !p.edge && !p.distance);
        assert_eq!(p.pair_orbits_by_distance, vec![2, 3, 2, 1]);
        let c = profile(&cycle_graph(7).unwrap());
        assert!(c.vertex && c.edge && c.distance);
    }

    #[test]
    fn petersen_and_disconnected() {
        let petersen = complement(&johnson_graph(5, 2).unwrap());
        assert!(profile(&petersen).distance);
        let two = crate::graph::disjoint_union(&cycle_graph(3).unwrap(), &cycle_graph(3).unwrap());
        let p = profile(&two);
        assert!(p.vertex && p.edge && p.distance);
        assert_eq!(p.disconnected_pair_orbits, 1);
        let mixed =
            crate::graph::disjoint_union(&cycle_graph(3).unwrap(), &cycle_graph(4).unwrap());
        let p = profile(&mixed);
        assert!(!p.vertex && !p.edge);
    }

    #[test]
    fn degree_mismatch() {
        let g = path_graph(3).unwrap();
        assert!(transitivity_profile(&g, &PermGroup::trivial(4)).is_err());
    }
}
