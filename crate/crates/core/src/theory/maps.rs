//! The explicit maps between ground-set permutations, Johnson graph
//! automorphisms and line-graph automorphisms.

use num_bigint::BigUint;

use crate::combinatorics::{
    binomial, intersection_size, rank_subset, unrank_subset, SubsetLabel, MAX_GROUND,
};
use crate::error::{Error, Result};
use crate::graph::{complete_bipartite, line_graph, Graph, LineGraph};
use crate::perm::Permutation;
use crate::search::check_automorphism;

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// `|Aut(K_{s,t})|`: `s! t!`, doubled when the sides have equal size.
pub fn bipartite_aut_order(s: usize, t: usize) -> BigUint {
    let base = factorial(s) * factorial(t);
    if s == t {
        base * 2u32
    } else {
        base
    }
}

/// The transposition `(0 1)` and the cycle `(0 1 ... n-1)`, which generate
/// `Sym(n)`.
pub fn symmetric_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return vec![Permutation::identity(n)];
    }
    let cycle: Vec<usize> = (0..n).collect();
    vec![
        Permutation::from_cycles(n, &[&[0, 1]]).expect("valid cycle"),
        Permutation::from_cycles(n, &[&cycle]).expect("valid cycle"),
    ]
}

fn johnson_labels(n: usize, m: usize) -> Result<Vec<SubsetLabel>> {
    if n > MAX_GROUND || m > n {
        return Err(Error::Parameter(format!("no J({n},{m})")));
    }
    (0..binomial(n, m)?)
        .map(|r| unrank_subset(r, n, m))
        .collect()
}

/// `f_θ`: the vertex permutation of `J(n, m)` applying `theta` (on 0-based
/// ground points) to every `m`-subset.
pub fn induced_action(theta: &Permutation, n: usize, m: usize) -> Result<Permutation> {
    if theta.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: theta.degree(),
        });
    }
    let images = johnson_labels(n, m)?
        .iter()
        .map(|l| rank_subset(&l.map_points(theta.images())) as usize)
        .collect();
    Permutation::from_images(images)
}

/// `α`: sends every vertex of `J(2m, m)` to its complement.
pub fn complementation_map(n: usize, m: usize) -> Result<Permutation> {
    if m == 0 || n != 2 * m {
        return Err(Error::Parameter(format!(
            "complementation is an automorphism of J(2m, m) only, got J({n},{m})"
        )));
    }
    let images = johnson_labels(n, m)?
        .iter()
        .map(|l| rank_subset(&l.complement()) as usize)
        .collect();
    Permutation::from_images(images)
}

/// The Whitney lift `θ(g)`: `{u, v} ↦ {g(u), g(v)}` on line-graph vertices.
pub fn whitney_lift(g_aut: &Permutation, gamma: &Graph, line: &LineGraph) -> Result<Permutation> {
    if !check_automorphism(gamma, g_aut)? {
        return Err(Error::NotAnAutomorphism);
    }
    if line.edges != gamma.edges() {
        return Err(Error::Parameter(
            "edge map does not belong to this graph".into(),
        ));
    }
    let images = line
        .edges
        .iter()
        .map(|&(u, v)| {
            line.vertex_of(g_aut.apply(u), g_aut.apply(v))
                .expect("automorphisms map edges to edges")
        })
        .collect();
    Permutation::from_images(images)
}

/// The explicit isomorphism `φ: L(K_{m, n-m}) → ⟨N(v)⟩`.
#[derive(Clone, Debug)]
pub struct NeighborhoodIso {
    pub center: SubsetLabel,
    /// `L(K_{m, n-m})`; bipartite vertex `i < m` is the `i`-th element of
    /// `v`, vertex `m + j` is the `j`-th element of its complement.
    pub line: LineGraph,
    /// Johnson-graph vertex index of `φ(e)` for each line vertex `e`.
    pub images: Vec<usize>,
    pub image_labels: Vec<SubsetLabel>,
}

/// Build `φ` for the vertex `v` of `J(n, m)`: the bipartite edge
/// `(x_i, y_j)` goes to `v - {x_i} ∪ {y_j}`.
pub fn neighborhood_iso(n: usize, m: usize, v: &SubsetLabel) -> Result<NeighborhoodIso> {
    if v.ground() != n || v.size() != m || m == 0 || m >= n {
        return Err(Error::MalformedSubset(format!(
            "{v} is not an {m}-subset of {{1,...,{n}}} with 0 < m < n"
        )));
    }
    let xs: Vec<usize> = v.elements().collect();
    let ys: Vec<usize> = v.complement().elements().collect();
    let line = line_graph(&complete_bipartite(m, n - m)?)?;
    let mut images = Vec::with_capacity(line.edges.len());
    let mut image_labels = Vec::with_capacity(line.edges.len());
    for &(a, b) in &line.edges {
        let (xi, yj) = (xs[a], ys[b - m]);
        let mask = v.mask() & !(1u64 << (xi - 1)) | 1u64 << (yj - 1);
        let label = SubsetLabel::new(mask, n)?;
        images.push(rank_subset(&label) as usize);
        image_labels.push(label);
    }
    Ok(NeighborhoodIso {
        center: *v,
        line,
        images,
        image_labels,
    })
}

impl NeighborhoodIso {
    /// Edge-for-edge check against `johnson`: `φ` is a bijection onto the
    /// neighborhood of the center and preserves adjacency and non-adjacency.
    pub fn verify(&self, johnson: &Graph) -> Result<bool> {
        let center = rank_subset(&self.center) as usize;
        if center >= johnson.vertex_count() {
            return Err(Error::IndexOutOfRange {
                index: center,
                size: johnson.vertex_count(),
            });
        }
        let nbhd = johnson.neighbors(center);
        let mut hit = vec![false; johnson.vertex_count()];
        for &w in &self.images {
            if !nbhd.contains(w) || std::mem::replace(&mut hit[w], true) {
                return Ok(false);
            }
        }
        if self.images.len() != nbhd.count_ones(..) {
            return Ok(false);
        }
        let k = self.images.len();
        for a in 0..k {
            for b in a + 1..k {
                if self.line.graph.has_edge(a, b)
                    != johnson.has_edge(self.images[a], self.images[b])
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `m - |u ∩ v|`, the distance between `u` and `v` in `J(n, m)`.
pub fn distance_by_intersection(u: &SubsetLabel, v: &SubsetLabel) -> Result<usize> {
    if u.size() != v.size() {
        return Err(Error::Parameter(format!(
            "{u} and {v} have different sizes"
        )));
    }
    Ok(u.size() - intersection_size(u, v)?)
}
