//! Permutations of `{0, ..., N-1}` stored as image arrays.
//!
//! Composition applies the right operand first: `compose(p, q)` is the map
//! `i ↦ p(q(i))`. Every product in this crate, including the commutation
//! checks between induced maps and complementation, uses this convention.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Permutation {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Product of the given cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::IndexOutOfRange {
                        index: a,
                        size: degree,
                    });
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(Error::NotAPermutation(format!(
                        "point {a} appears in two cycles"
                    )));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parse disjoint-cycle notation such as `(0 1 2)(3 4)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest
                .find(')')
                .filter(|_| rest.starts_with('('))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation: {text:?}")))?;
            let body = &rest[1..body_end];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad point {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = rest[body_end + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &j)| i != j)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Multiplicative order.
    pub fn order(&self) -> u128 {
        fn gcd(a: u128, b: u128) -> u128 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1u128, |acc, c| {
            acc / gcd(acc, c.len() as u128) * c.len() as u128
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn then_after(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }
}

/// `p ∘ q`, the map `i ↦ p(q(i))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: q.degree(),
        });
    }
    Ok(p.then_after(q))
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
