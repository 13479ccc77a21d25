//! Equitable partitions by color refinement (1-dimensional Weisfeiler-Leman).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex coloring together with its color classes.
///
/// Cells are ordered by size, then by smallest member, and color `i` is the
/// `i`-th cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPartition {
    color: Vec<usize>,
    cells: Vec<Vec<usize>>,
}

impl ColoredPartition {
    /// One cell holding every vertex.
    pub fn unit(n: usize) -> ColoredPartition {
        ColoredPartition::normalized((n > 0).then(|| (0..n).collect()).into_iter().collect(), n)
    }

    /// From an arbitrary color assignment; only equality of colors matters.
    pub fn from_colors(colors: &[usize]) -> ColoredPartition {
        let mut ids: Vec<usize> = colors.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut cells = vec![Vec::new(); ids.len()];
        for (v, c) in colors.iter().enumerate() {
            cells[ids.binary_search(c).unwrap()].push(v);
        }
        ColoredPartition::normalized(cells, colors.len())
    }

    /// From explicit cells, which must be nonempty, disjoint and cover `0..n`.
    pub fn from_cells(cells: Vec<Vec<usize>>, n: usize) -> Result<ColoredPartition> {
        let mut seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::Parameter("empty cell in partition".into()));
            }
            for &v in cell {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, size: n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Parameter(format!("vertex {v} in two cells")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Parameter(format!("vertex {v} in no cell")));
        }
        Ok(ColoredPartition::normalized(cells, n))
    }

    /// Individualize `v`: give it a color of its own.
    pub fn individualized(&self, v: usize) -> Result<ColoredPartition> {
        if v >= self.color.len() {
            return Err(Error::IndexOutOfRange {
                index: v,
                size: self.color.len(),
            });
        }
        let mut cells: Vec<Vec<usize>> = self
            .cells
            .iter()
            .map(|c| c.iter().copied().filter(|&u| u != v).collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect();
        cells.push(vec![v]);
        Ok(ColoredPartition::normalized(cells, self.color.len()))
    }

    fn normalized(mut cells: Vec<Vec<usize>>, n: usize) -> ColoredPartition {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort_by_key(|c| (c.len(), c[0]));
        let mut color = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                color[v] = i;
            }
        }
        ColoredPartition { color, cells }
    }

    pub fn vertex_count(&self) -> usize {
        self.color.len()
    }

    pub fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.len() == self.color.len()
    }

    /// Same-colored vertices have equal neighbor counts into every color.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let k = self.cells.len();
        let profile = |v: usize| {
            let mut counts = vec![0usize; k];
            for w in g.neighbors(v).ones() {
                counts[self.color[w]] += 1;
            }
            counts
        };
        self.cells.iter().all(|cell| {
            let first = profile(cell[0]);
            cell[1..].iter().all(|&v| profile(v) == first)
        })
    }
}

/// Coarsest equitable partition refining `initial`.
pub fn color_refinement(g: &Graph, initial: &ColoredPartition) -> Result<ColoredPartition> {
    if initial.vertex_count() != g.vertex_count() {
        return Err(Error::Parameter(format!(
            "partition covers {} vertices, graph has {}",
            initial.vertex_count(),
            g.vertex_count()
        )));
    }
    let mut p = OrderedPartition::from_cells(initial.cells());
    let all: Vec<usize> = p.cell_starts().collect();
    p.refine(g, all);
    Ok(p.to_colored())
}

/// Ordered partition stored as a permuted vertex array split into cells.
///
/// Cell order depends only on the graph structure and the order of the
/// initial cells, so isomorphic inputs refine to isomorphic outputs. Members
/// within a cell are kept in ascending vertex order.
#[derive(Clone, Debug)]
pub(crate) struct OrderedPartition {
    lab: Vec<usize>,
    /// Start position of the cell containing each vertex.
    cell_of: Vec<usize>,
    /// Cell length, meaningful only at cell start positions.
    len: Vec<usize>,
    cells: usize,
}

impl OrderedPartition {
    pub(crate) fn unit(n: usize) -> OrderedPartition {
        let mut len = vec![0; n];
        if n > 0 {
            len[0] = n;
        }
        OrderedPartition {
            lab: (0..n).collect(),
            cell_of: vec![0; n],
            len,
            cells: usize::from(n > 0),
        }
    }

    pub(crate) fn from_cells(cells: &[Vec<usize>]) -> OrderedPartition {
        let n: usize = cells.iter().map(Vec::len).sum();
        let mut p = OrderedPartition {
            lab: Vec::with_capacity(n),
            cell_of: vec![0; n],
            len: vec![0; n],
            cells: cells.len(),
        };
        for cell in cells {
            let start = p.lab.len();
            let mut sorted = cell.clone();
            sorted.sort_unstable();
            for &v in &sorted {
                p.cell_of[v] = start;
            }
            p.len[start] = sorted.len();
            p.lab.extend(sorted);
        }
        p
    }

    pub(crate) fn lab(&self) -> &[usize] {
        &self.lab
    }

    pub(crate) fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    pub(crate) fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= self.lab.len() {
                return None;
            }
            let cur = s;
            s += self.len[s];
            Some(cur)
        })
    }

    pub(crate) fn cell(&self, start: usize) -> &[usize] {
        &self.lab[start..start + self.len[start]]
    }

    /// First smallest non-singleton cell.
    pub(crate) fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in self.cell_starts() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|b| l < self.len[b]) {
                best = Some(s);
            }
        }
        best
    }

    /// Split `v` off the front of its cell. Returns the new singleton cell.
    pub(crate) fn individualize(&mut self, v: usize) -> usize {
        let c = self.cell_of[v];
        let l = self.len[c];
        debug_assert!(l > 1);
        let pos = c + self.cell(c).iter().position(|&u| u == v).unwrap();
        self.lab[c..=pos].rotate_right(1);
        self.len[c] = 1;
        self.len[c + 1] = l - 1;
        for &u in &self.lab[c + 1..c + l] {
            self.cell_of[u] = c + 1;
        }
        self.cells += 1;
        c
    }

    /// Refine to the coarsest equitable partition, starting from the
    /// given splitter cells.
    pub(crate) fn refine(&mut self, g: &Graph, splitters: impl IntoIterator<Item = usize>) {
        let n = self.lab.len();
        let mut in_queue = vec![false; n];
        let mut queue = VecDeque::new();
        for s in splitters {
            if !in_queue[s] {
                in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut count = vec![0usize; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut touched_cells: Vec<usize> = Vec::new();
        while let Some(s) = queue.pop_front() {
            in_queue[s] = false;
            if self.is_discrete() {
                break;
            }
            for &u in &self.lab[s..s + self.len[s]] {
                for w in g.neighbors(u).ones() {
                    if count[w] == 0 {
                        touched.push(w);
                    }
                    count[w] += 1;
                }
            }
            touched_cells.clear();
            touched_cells.extend(touched.iter().map(|&w| self.cell_of[w]));
            touched_cells.sort_unstable();
            touched_cells.dedup();
            for &c in &touched_cells {
                let l = self.len[c];
                if l == 1 {
                    continue;
                }
                let first = count[self.lab[c]];
                if self.lab[c + 1..c + l].iter().all(|&v| count[v] == first) {
                    continue;
                }
                self.lab[c..c + l].sort_unstable_by_key(|&v| (count[v], v));
                let mut frags = vec![c];
                for pos in c + 1..c + l {
                    if count[self.lab[pos]] != count[self.lab[pos - 1]] {
                        frags.push(pos);
                    }
                }
                let frag_len = |k: usize| frags.get(k + 1).copied().unwrap_or(c + l) - frags[k];
                for (k, &f) in frags.iter().enumerate() {
                    self.len[f] = frag_len(k);
                    for pos in f..f + self.len[f] {
                        self.cell_of[self.lab[pos]] = f;
                    }
                }
                self.cells += frags.len() - 1;
                let skip = if in_queue[c] {
                    Some(0)
                } else {
                    // Every fragment but the first largest one.
                    let mut big = 0;
                    for k in 1..frags.len() {
                        if frag_len(k) > frag_len(big) {
                            big = k;
                        }
                    }
                    Some(big)
                };
                for (k, &f) in frags.iter().enumerate() {
                    if Some(k) != skip && !in_queue[f] {
                        in_queue[f] = true;
                        queue.push_back(f);
                    }
                }
            }
            for &w in &touched {
                count[w] = 0;
            }
            touched.clear();
        }
    }

    pub(crate) fn to_colored(&self) -> ColoredPartition {
        let cells: Vec<Vec<usize>> = self.cell_starts().map(|s| self.cell(s).to_vec()).collect();
        ColoredPartition::normalized(cells, self.lab.len())
    }

    /// Cell sizes in order; an isomorphism-invariant fingerprint.
    #[allow(dead_code)]
    pub(crate) fn shape(&self) -> Vec<usize> {
        self.cell_starts().map(|s| self.len[s]).collect()
    }
}
