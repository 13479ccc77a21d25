//! Finite permutation groups given by generators.
//!
//! A [`PermGroup`] carries a base and strong generating set built by a
//! deterministic Schreier-Sims construction. New base points are the least
//! point moved by the residue that needed them, so identical generator lists
//! always produce identical chains.

use std::collections::VecDeque;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// `reps[b]` maps `base` to `b`, for every `b` in the basic orbit.
    reps: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut reps = vec![None; degree];
        reps[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            reps,
            orbit: vec![base],
        }
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: BigUint::from(1u32),
        }
    }

    pub fn from_generators(gens: &[Permutation], degree: usize) -> Result<PermGroup> {
        PermGroup::with_base_prefix(gens, degree, &[])
    }

    /// Build with a base that starts with `prefix`. Remaining base points are
    /// chosen automatically.
    pub fn with_base_prefix(
        gens: &[Permutation],
        degree: usize,
        prefix: &[usize],
    ) -> Result<PermGroup> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut seen = vec![false; degree];
        for &b in prefix {
            if b >= degree {
                return Err(Error::IndexOutOfRange {
                    index: b,
                    size: degree,
                });
            }
            if std::mem::replace(&mut seen[b], true) {
                return Err(Error::Parameter(format!("base point {b} repeated")));
            }
        }
        let mut group = PermGroup::trivial(degree);
        group.generators = gens.to_vec();
        group.levels = prefix.iter().map(|&b| Level::new(b, degree)).collect();
        for g in gens {
            group.insert(g.clone(), 0);
        }
        group.order = group.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        });
        Ok(group)
    }

    /// Strip `g` through the chain starting at `from`. Returns the level at
    /// which sifting stopped and the residue.
    fn sift(&self, mut g: Permutation, from: usize) -> (usize, Permutation) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            match &level.reps[g.apply(level.base)] {
                Some(rep) => g = rep.inverse().then_after(&g),
                None => return (i, g),
            }
        }
        (self.levels.len(), g)
    }

    /// Make `g` (which fixes the first `from` base points) a member.
    fn insert(&mut self, g: Permutation, from: usize) {
        let (drop, h) = self.sift(g, from);
        if h.is_identity() {
            return;
        }
        if drop == self.levels.len() {
            let b = h.first_moved().expect("non-identity residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        for level in (from..=drop).rev() {
            self.add_strong_generator(level, h.clone());
        }
    }

    fn add_strong_generator(&mut self, level: usize, h: Permutation) {
        let old_len = self.levels[level].orbit.len();
        self.levels[level].gens.push(h.clone());
        // Schreier generators with fixed coset representatives: the new
        // generator against every orbit point, then every generator against
        // every point the orbit gains.
        for idx in 0..old_len {
            let beta = self.levels[level].orbit[idx];
            self.schreier_pair(level, beta, &h);
        }
        let mut idx = old_len;
        while idx < self.levels[level].orbit.len() {
            let beta = self.levels[level].orbit[idx];
            let mut k = 0;
            while k < self.levels[level].gens.len() {
                let s = self.levels[level].gens[k].clone();
                self.schreier_pair(level, beta, &s);
                k += 1;
            }
            idx += 1;
        }
    }

    fn schreier_pair(&mut self, level: usize, beta: usize, s: &Permutation) {
        let lv = &mut self.levels[level];
        let gamma = s.apply(beta);
        let rep_beta = lv.reps[beta].as_ref().expect("beta in orbit");
        let moved = s.then_after(rep_beta);
        let schreier = match &lv.reps[gamma] {
            None => {
                lv.reps[gamma] = Some(moved);
                lv.orbit.push(gamma);
                return;
            }
            Some(rep_gamma) => rep_gamma.inverse().then_after(&moved),
        };
        if !schreier.is_identity() {
            self.insert(schreier, level + 1);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exact group order.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The generators this group was built from.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Sizes of the basic orbits; their product is the order.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// All strong generators, without repeats, in first-seen order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        let (_, residue) = self.sift(p.clone(), 0);
        Ok(residue.is_identity())
    }

    /// Orbit of `point`, sorted ascending.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::IndexOutOfRange {
                index: point,
                size: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    out.push(q);
                    queue.push_back(q);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All orbits, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut covered = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !covered[p] {
                let o = self.orbit(p).expect("point in range");
                for &q in &o {
                    covered[q] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// Stabilizer of a single point.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// Subgroup fixing every point of `points`, computed from a chain whose
    /// base begins with those points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let rebased = PermGroup::with_base_prefix(&self.generators, self.degree, points)?;
        let gens = rebased
            .levels
            .get(points.len())
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        PermGroup::from_generators(&gens, self.degree)
    }
}
