//! Exact automorphism groups, canonical forms and isomorphism testing by
//! individualization-refinement.
//!
//! The search tree is explored depth first. Each node is an equitable
//! ordered partition; its children individualize the members of the first
//! smallest non-singleton cell in ascending order. A discrete leaf is turned
//! into a certificate (the adjacency matrix read in leaf order). Leaves with
//! a certificate equal to the first leaf or to the current best leaf give an
//! automorphism. Automorphisms fixing the current path prune children lying
//! in one orbit, and after an automorphism is found the search jumps back to
//! the deepest node shared with the equivalent leaf.
//!
//! The canonical labeling is the leaf with the lexicographically least
//! certificate.

use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_VERTEX_CAP};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::refine::OrderedPartition;

/// `p` maps edges onto edges (and hence non-edges onto non-edges).
pub fn check_automorphism(g: &Graph, p: &Permutation) -> Result<bool> {
    if p.degree() != g.vertex_count() {
        return Err(Error::DegreeMismatch {
            expected: g.vertex_count(),
            found: p.degree(),
        });
    }
    Ok(maps_edges(g, g, p))
}

fn maps_edges(g: &Graph, h: &Graph, p: &Permutation) -> bool {
    g.edge_count() == h.edge_count()
        && (0..g.vertex_count()).all(|u| {
            g.neighbors(u)
                .ones()
                .all(|v| h.has_edge(p.apply(u), p.apply(v)))
        })
}

/// `p` is an isomorphism from `g` onto `h`.
pub fn check_isomorphism(g: &Graph, h: &Graph, p: &Permutation) -> bool {
    g.vertex_count() == h.vertex_count() && p.degree() == g.vertex_count() && maps_edges(g, h, p)
}

/// Canonical labeling of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `order[k]` is the vertex placed at canonical position `k`.
    pub order: Vec<usize>,
    /// Edges of the relabeled graph as sorted position pairs.
    pub edges: Vec<(usize, usize)>,
}

impl CanonicalForm {
    /// Vertex-to-position map as a permutation.
    pub fn relabeling(&self) -> Permutation {
        let mut images = vec![0; self.order.len()];
        for (pos, &v) in self.order.iter().enumerate() {
            images[v] = pos;
        }
        Permutation::from_images(images).expect("canonical order is a bijection")
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.order.len(), &self.edges).expect("positions in range")
    }
}

/// Everything one search produces.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Automorphisms found; they generate the full group.
    pub generators: Vec<Permutation>,
    pub canonical: CanonicalForm,
    /// Leaves reached, for diagnostics.
    pub leaves: usize,
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.vertex_count() > cap {
        Err(Error::CapExceeded {
            vertices: g.vertex_count() as u128,
            cap,
        })
    } else {
        Ok(())
    }
}

/// Run the search with the default vertex cap.
pub fn search(g: &Graph) -> Result<SearchOutcome> {
    search_capped(g, DEFAULT_VERTEX_CAP)
}

pub fn search_capped(g: &Graph, cap: usize) -> Result<SearchOutcome> {
    check_cap(g, cap)?;
    let mut s = Searcher {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
        leaves: 0,
    };
    let mut root = OrderedPartition::unit(g.vertex_count());
    let starts: Vec<usize> = root.cell_starts().collect();
    root.refine(g, starts);
    s.visit(&root, &mut Vec::new());
    let best = s.best.expect("every search reaches a leaf");
    let canonical = CanonicalForm {
        edges: certificate_edges(g, &best.lab),
        order: best.lab,
    };
    for gen in &s.generators {
        if !check_automorphism(g, gen)? {
            unreachable!("search produced a non-automorphism {gen}");
        }
    }
    Ok(SearchOutcome {
        generators: s.generators,
        canonical,
        leaves: s.leaves,
    })
}

pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    automorphism_group_capped(g, DEFAULT_VERTEX_CAP)
}

pub fn automorphism_group_capped(g: &Graph, cap: usize) -> Result<PermGroup> {
    let out = search_capped(g, cap)?;
    PermGroup::from_generators(&out.generators, g.vertex_count())
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(search(g)?.canonical)
}

/// An isomorphism `g -> h`, if one exists. Any returned map is verified.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<Permutation>> {
    find_isomorphism_capped(g, h, DEFAULT_VERTEX_CAP)
}

pub fn find_isomorphism_capped(g: &Graph, h: &Graph, cap: usize) -> Result<Option<Permutation>> {
    check_cap(g, cap)?;
    check_cap(h, cap)?;
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let cg = search_capped(g, cap)?.canonical;
    let ch = search_capped(h, cap)?.canonical;
    if cg.edges != ch.edges {
        return Ok(None);
    }
    let mut images = vec![0; g.vertex_count()];
    for (pos, &v) in cg.order.iter().enumerate() {
        images[v] = ch.order[pos];
    }
    let iso = Permutation::from_images(images)?;
    assert!(
        check_isomorphism(g, h, &iso),
        "canonical forms agree but map fails"
    );
    Ok(Some(iso))
}

#[derive(Clone)]
struct Leaf {
    path: Vec<usize>,
    lab: Vec<usize>,
    cert: Vec<u64>,
}

struct Searcher<'g> {
    g: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Permutation>,
    leaves: usize,
}

/// Orbits of the group generated by the known automorphisms that fix a
/// path pointwise. Rebuilt whenever new automorphisms arrive.
struct PathOrbits {
    parent: Vec<usize>,
    seen_gens: usize,
}

impl PathOrbits {
    fn new(n: usize) -> PathOrbits {
        PathOrbits {
            parent: (0..n).collect(),
            seen_gens: 0,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn update(&mut self, gens: &[Permutation], path: &[usize]) {
        if self.seen_gens == gens.len() {
            return;
        }
        for g in &gens[self.seen_gens..] {
            if path.iter().all(|&v| g.apply(v) == v) {
                for x in 0..g.degree() {
                    let (a, b) = (self.find(x), self.find(g.apply(x)));
                    if a != b {
                        self.parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        self.seen_gens = gens.len();
    }
}

impl Searcher<'_> {
    /// Returns the depth to resume at when an automorphism allows skipping
    /// the rest of this subtree.
    fn visit(&mut self, part: &OrderedPartition, path: &mut Vec<usize>) -> Option<usize> {
        if part.is_discrete() {
            return self.leaf(part.lab(), path);
        }
        let depth = path.len();
        let target = part.target_cell().expect("non-discrete partition");
        let children = part.cell(target).to_vec();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits = PathOrbits::new(self.g.vertex_count());
        for w in children {
            if !explored.is_empty() {
                orbits.update(&self.generators, path);
                let rw = orbits.find(w);
                if explored.iter().any(|&e| orbits.find(e) == rw) {
                    continue;
                }
            }
            explored.push(w);
            let mut child = part.clone();
            let single = child.individualize(w);
            child.refine(self.g, [single]);
            path.push(w);
            let jump = self.visit(&child, path);
            path.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, lab: &[usize], path: &[usize]) -> Option<usize> {
        self.leaves += 1;
        let cert = certificate(self.g, lab);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                path: path.to_vec(),
                lab: lab.to_vec(),
                cert,
            };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        if cert == first.cert {
            let jump = common_prefix(path, &first.path);
            let gamma = map_between(&first.lab, lab);
            self.record(gamma);
            return Some(jump);
        }
        let best = self.best.as_ref().expect("best set with first");
        if cert == best.cert {
            let jump = common_prefix(path, &best.path);
            let gamma = map_between(&best.lab, lab);
            self.record(gamma);
            return Some(jump);
        }
        if cert < best.cert {
            self.best = Some(Leaf {
                path: path.to_vec(),
                lab: lab.to_vec(),
                cert,
            });
        }
        None
    }

    fn record(&mut self, gamma: Permutation) {
        if !gamma.is_identity() {
            self.generators.push(gamma);
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// The map sending `from[k]` to `to[k]` for every position `k`.
fn map_between(from: &[usize], to: &[usize]) -> Permutation {
    let mut images = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        images[a] = b;
    }
    Permutation::from_images_unchecked(images)
}

/// Adjacency matrix of `g` with rows and columns in `lab` order, packed
/// row-major into words.
fn certificate(g: &Graph, lab: &[usize]) -> Vec<u64> {
    let n = lab.len();
    let words = n.div_ceil(64);
    let mut pos = vec![0; n];
    for (p, &v) in lab.iter().enumerate() {
        pos[v] = p;
    }
    let mut cert = vec![0u64; n * words];
    for (p, &v) in lab.iter().enumerate() {
        for w in g.neighbors(v).ones() {
            let q = pos[w];
            // Most significant bit first so word order matches column order.
            cert[p * words + q / 64] |= 1u64 << (63 - q % 64);
        }
    }
    cert
}

fn certificate_edges(g: &Graph, lab: &[usize]) -> Vec<(usize, usize)> {
    let mut pos = vec![0; lab.len()];
    for (p, &v) in lab.iter().enumerate() {
        pos[v] = p;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .collect();
    edges.sort_unstable();
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::oracle::brute_force_automorphisms;
    use num_bigint::BigUint;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn order(g: &Graph) -> BigUint {
        automorphism_group(g).unwrap().order().clone()
    }

    fn shuffled(g: &Graph, seed: u64) -> (Graph, Permutation) {
        let mut images: Vec<usize> = (0..g.vertex_count()).collect();
        images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let p = Permutation::from_images(images).unwrap();
        (g.permuted(&p).unwrap(), p)
    }

    #[test]
    fn check_automorphism_basics() {
        let k4 = complete_graph(4).unwrap();
        assert!(check_automorphism(&k4, &Permutation::identity(4)).unwrap());
        assert!(
            check_automorphism(&k4, &Permutation::from_cycles(4, &[&[1, 3]]).unwrap()).unwrap()
        );
        let p3 = path_graph(3).unwrap();
        assert!(
            !check_automorphism(&p3, &Permutation::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap()
        );
        assert!(check_automorphism(&p3, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn known_orders() {
        assert_eq!(order(&complete_graph(5).unwrap()), BigUint::from(120u32));
        assert_eq!(order(&complete_graph(1).unwrap()), BigUint::from(1u32));
        assert_eq!(order(&Graph::empty(0)), BigUint::from(1u32));
        assert_eq!(order(&cycle_graph(9).unwrap()), BigUint::from(18u32));
        assert_eq!(order(&johnson_graph(6, 3).unwrap()), BigUint::from(1440u32));
        assert_eq!(
            order(&complement(&johnson_graph(5, 2).unwrap())),
            BigUint::from(120u32)
        );
        assert_eq!(order(&Graph::empty(7)), BigUint::from(5040u32));
        let three_k2 = kneser_graph(4, 2).unwrap();
        assert_eq!(order(&three_k2), BigUint::from(48u32));
    }

    #[test]
    fn matches_oracle_on_small_graphs() {
        let graphs = vec![
            complete_graph(4).unwrap(),
            path_graph(5).unwrap(),
            cycle_graph(6).unwrap(),
            complete_bipartite(2, 3).unwrap(),
            complete_bipartite(3, 3).unwrap(),
            disjoint_union(&cycle_graph(3).unwrap(), &cycle_graph(3).unwrap()),
            disjoint_union(&path_graph(2).unwrap(), &cycle_graph(4).unwrap()),
            johnson_graph(5, 2).unwrap(),
            Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6)])
                .unwrap(),
        ];
        for g in graphs {
            let brute = brute_force_automorphisms(&g).unwrap();
            let group = automorphism_group(&g).unwrap();
            assert_eq!(*group.order(), BigUint::from(brute.len()));
            for p in &brute {
                assert!(group.contains(p).unwrap());
            }
        }
    }

    #[test]
    fn planted_isomorphisms_found() {
        for (i, g) in [
            johnson_graph(6, 3).unwrap(),
            kneser_graph(6, 2).unwrap(),
            cycle_graph(11).unwrap(),
            complete_bipartite(3, 5).unwrap(),
        ]
        .iter()
        .enumerate()
        {
            let (h, _) = shuffled(g, 17 + i as u64);
            let iso = find_isomorphism(g, &h).unwrap().expect("isomorphic");
            assert!(check_isomorphism(g, &h, &iso));
        }
    }

    #[test]
    fn triangle_pair_and_hexagon() {
        let c6 = cycle_graph(6).unwrap();
        let two_c3 = disjoint_union(&cycle_graph(3).unwrap(), &cycle_graph(3).unwrap());
        assert!(find_isomorphism(&c6, &two_c3).unwrap().is_none());
        assert_ne!(
            canonical_form(&c6).unwrap().edges,
            canonical_form(&two_c3).unwrap().edges
        );
        let k3 = complete_graph(3).unwrap();
        assert!(find_isomorphism(&k3, &cycle_graph(3).unwrap())
            .unwrap()
            .is_some());
    }

    #[test]
    fn canonical_forms_are_invariant_and_idempotent() {
        let j = johnson_graph(6, 3).unwrap();
        let (a, _) = shuffled(&j, 1);
        let (b, _) = shuffled(&j, 2);
        let ca = canonical_form(&a).unwrap();
        let cb = canonical_form(&b).unwrap();
        assert_eq!(ca.edges, cb.edges);
        let again = canonical_form(&ca.graph()).unwrap();
        assert_eq!(again.edges, ca.edges);
        assert!(a
            .permuted(&ca.relabeling())
            .unwrap()
            .same_edges(&ca.graph()));
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::empty(12);
        assert!(matches!(
            search_capped(&g, 10),
            Err(Error::CapExceeded { .. })
        ));
        assert!(find_isomorphism_capped(&g, &g, 10).is_err());
    }

    #[test]
    fn mismatched_sizes_are_not_isomorphic() {
        assert!(find_isomorphism(&Graph::empty(3), &Graph::empty(4))
            .unwrap()
            .is_none());
    }

    #[test]
    fn complement_has_same_group() {
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (0, 4)])
            .unwrap();
        let a = automorphism_group(&g).unwrap();
        let b = automorphism_group(&complement(&g)).unwrap();
        assert_eq!(a.order(), b.order());
        for gen in a.generators() {
            assert!(b.contains(gen).unwrap());
        }
        for gen in b.generators() {
            assert!(a.contains(gen).unwrap());
        }
    }
}
