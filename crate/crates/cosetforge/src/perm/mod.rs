//! Permutations and permutation groups.

mod aut;
mod fingerprint;
mod group;
mod ops;
mod subgroups;

pub use aut::{automorphism_group, AutMode};
pub use fingerprint::{fingerprint, GroupFingerprint};
pub use group::{InducedAction, PermGroup};
pub use ops::{
    closure, core_in, is_maximal_in, is_normal_in, max_element_order, normalizer_in, transporter,
    transitivity_degree,
};
pub(crate) use ops::coset_action as ops_coset_action;
pub use subgroups::subgroup_classes;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of `0..n-1`, stored as the array of point images.
///
/// Composition follows function notation: `(p * q)(x) = p(q(x))`, i.e. the
/// right factor acts first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::Parse(format!(
                    "image array {:?} is not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Conjugate `self * other * self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.compose(other).compose(&self.inverse())
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, lcm)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &v)| *i != v).map(|(i, _)| i)
    }

    /// Cycle decomposition; only cycles of length ≥ 2, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.images[cur];
            }
            out.push(cyc);
        }
        out
    }

    /// Parses 1-based cycle notation, e.g. `"(2,3)(4,5)"`. `"()"` and the
    /// empty string denote the identity. Points may be separated by commas
    /// or whitespace.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "()" {
            return Ok(Permutation { images });
        }
        let bytes = trimmed.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(Error::Parse(format!(
                    "expected '(' at byte {pos} of permutation `{trimmed}`"
                )));
            }
            let close = trimmed[pos..]
                .find(')')
                .map(|o| pos + o)
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{trimmed}`")))?;
            let inner = &trimmed[pos + 1..close];
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{tok}` in `{trimmed}`")))?;
                if p == 0 || p > degree {
                    return Err(Error::Parse(format!(
                        "point {p} out of range 1..={degree} in `{trimmed}`"
                    )));
                }
                cycle.push(p - 1);
            }
            for &p in &cycle {
                if moved[p] {
                    return Err(Error::Parse(format!(
                        "point {} repeated in `{trimmed}`",
                        p + 1
                    )));
                }
                moved[p] = true;
            }
            if cycle.len() >= 2 {
                for w in 0..cycle.len() {
                    images[cycle[w]] = cycle[(w + 1) % cycle.len()];
                }
            }
            pos = close + 1;
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
