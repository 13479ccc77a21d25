//! Subsets of a small ground set and their colexicographic ranks.
//!
//! The ground set is `I = {1, ..., n}` with `n <= 64`. Element `i` is stored
//! in bit `i - 1` of a single `u64`, and the vertex index of an `m`-subset in
//! every Johnson or Kneser graph built by this crate is its colex rank
//! (the combinatorial number system).

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// Exact binomial coefficient `C(n, m)` for `n <= 64`.
///
/// Returns 0 when `m > n`.
pub fn binomial(n: usize, m: usize) -> Result<u64> {
    if n > MAX_GROUND {
        return Err(Error::Parameter(format!(
            "binomial: n = {n} exceeds {MAX_GROUND}"
        )));
    }
    Ok(binomial_unchecked(n, m))
}

pub(crate) fn binomial_unchecked(n: usize, m: usize) -> u64 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut acc: u128 = 1;
    for i in 0..m {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An `m`-subset of `{1, ..., n}` packed into one word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubsetLabel {
    mask: u64,
    n: u8,
}

impl SubsetLabel {
    /// Build from a bitmask (bit `i - 1` set means `i` is a member).
    pub fn new(mask: u64, n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::Parameter(format!(
                "ground set of size {n} exceeds {MAX_GROUND}"
            )));
        }
        if mask & !full_mask(n) != 0 {
            return Err(Error::MalformedSubset(format!(
                "mask {mask:#x} has bits outside a ground set of size {n}"
            )));
        }
        Ok(SubsetLabel { mask, n: n as u8 })
    }

    /// Build from 1-based elements. Duplicates are rejected.
    pub fn from_elements(elements: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::MalformedSubset(format!(
                    "element {e} not in {{1,...,{n}}}"
                )));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::MalformedSubset(format!("element {e} repeated")));
            }
            mask |= bit;
        }
        SubsetLabel::new(mask, n)
    }

    /// Parse the `{1,2,5}` text form.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{...}}, got {text:?}")))?;
        let mut elements = Vec::new();
        if !inner.trim().is_empty() {
            for part in inner.split(',') {
                let e = part
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad element {part:?}: {e}")))?;
                elements.push(e);
            }
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!(
                "subset elements must be strictly ascending: {text:?}"
            )));
        }
        SubsetLabel::from_elements(&elements, n)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn ground(&self) -> usize {
        self.n as usize
    }

    /// Cardinality of the subset.
    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.ground() && self.mask >> (element - 1) & 1 == 1
    }

    /// Members in ascending order, 1-based.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ground())
            .filter(|&b| self.mask >> b & 1 == 1)
            .map(|b| b + 1)
    }

    pub fn complement(&self) -> SubsetLabel {
        SubsetLabel {
            mask: full_mask(self.ground()) ^ self.mask,
            n: self.n,
        }
    }

    /// Apply a map on 0-based ground points elementwise.
    pub(crate) fn map_points(&self, image: &[usize]) -> SubsetLabel {
        let mut mask = 0u64;
        let mut rest = self.mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            mask |= 1u64 << image[b];
        }
        SubsetLabel { mask, n: self.n }
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// `|a ∩ b|`. Both labels must live over the same ground set.
pub fn intersection_size(a: &SubsetLabel, b: &SubsetLabel) -> Result<usize> {
    if a.n != b.n {
        return Err(Error::Parameter(format!(
            "ground sets differ: {} vs {}",
            a.n, b.n
        )));
    }
    Ok((a.mask & b.mask).count_ones() as usize)
}

/// Colex rank of `s` among all subsets of its size.
pub fn rank_subset(s: &SubsetLabel) -> u64 {
    let mut rank = 0u64;
    let mut rest = s.mask;
    let mut k = 1;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        rank += binomial_unchecked(c, k);
        k += 1;
    }
    rank
}

/// Colex rank with the expected size checked.
pub fn rank_subset_checked(s: &SubsetLabel, m: usize) -> Result<u64> {
    if s.size() != m {
        return Err(Error::MalformedSubset(format!(
            "{s} has {} elements, expected {m}",
            s.size()
        )));
    }
    Ok(rank_subset(s))
}

/// The `m`-subset of `{1, ..., n}` with colex rank `r`.
pub fn unrank_subset(r: u64, n: usize, m: usize) -> Result<SubsetLabel> {
    let total = binomial(n, m)?;
    if m > n || r >= total {
        return Err(Error::IndexOutOfRange {
            index: r as usize,
            size: total as usize,
        });
    }
    let mut mask = 0u64;
    let mut rest = r;
    let mut top = n;
    for k in (1..=m).rev() {
        // Largest c < top with C(c, k) <= rest.
        let mut c = top - 1;
        while binomial_unchecked(c, k) > rest {
            c -= 1;
        }
        rest -= binomial_unchecked(c, k);
        mask |= 1u64 << c;
        top = c;
    }
    SubsetLabel::new(mask, n)
}
