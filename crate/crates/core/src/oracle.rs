//! Exhaustive automorphism enumeration for very small graphs.
//!
//! This is the reference the refinement search is tested against; it shares
//! no code with it.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

/// Largest graph the oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Every automorphism of `g`, in lexicographic order of image arrays.
///
/// Vertices are assigned in index order; a partial assignment survives only
/// if degrees match and adjacency agrees with every earlier assignment.
pub fn brute_force_automorphisms(g: &Graph) -> Result<Vec<Permutation>> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Parameter(format!(
            "brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {n}"
        )));
    }
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    extend(g, &degree, 0, &mut image, &mut used, &mut out);
    Ok(out)
}

fn extend(
    g: &Graph,
    degree: &[usize],
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    let n = image.len();
    if v == n {
        out.push(Permutation::from_images(image.to_vec()).expect("bijection"));
        return;
    }
    for w in 0..n {
        if used[w] || degree[w] != degree[v] {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(image[u], w)) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        extend(g, degree, v + 1, image, used, out);
        used[w] = false;
    }
    image[v] = usize::MAX;
}
