//! Permutations and permutation groups.
//!
//! Points are `0..degree` and stored as `u32`. Products act left to right:
//! `p.compose(&q)` maps `x` to `q(p(x))`, so `p` is applied first. Every
//! other module in the crate uses this convention.

mod chain;
mod classes;
mod random;

pub use chain::{PermGroup, StabChain};
pub use classes::{ClassData, ClassInfo, DEFAULT_ELEMENT_BUDGET};
pub use random::ProductReplacement;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 65_535;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, omitting fixed points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let x = x as usize;
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::InvalidPermutation(format!("point {x} appears in two cycles")));
                }
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Permutation::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `x ↦ other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Same as [`compose`](Self::compose) for operands already known to share a degree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// Writes `self` followed by `other` into `out`, reusing its allocation.
    #[inline]
    pub fn then_into(&self, other: &Permutation, out: &mut Permutation) {
        out.images.clear();
        out.images.extend(self.images.iter().map(|&x| other.images[x as usize]));
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other⁻¹ · self · other`, i.e. the point `other(x)` goes to `other(self(x))`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[other.images[x] as usize] = other.images[y as usize];
        }
        Permutation { images: out }
    }

    /// Disjoint cycles including fixed points, each starting at its least point,
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, fixed points included, in decreasing order.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Element order, or `None` if it does not fit in a `u64`.
    pub fn order_checked(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for len in self.cycle_lengths() {
            let len = len as u64;
            let g = acc.gcd(&len);
            acc = acc.checked_mul(len / g)?;
        }
        Some(acc)
    }

    /// Element order; saturates at `u64::MAX` (only reachable for degrees in the thousands).
    pub fn order(&self) -> u64 {
        self.order_checked().unwrap_or(u64::MAX)
    }

    pub fn cycle_profile(&self) -> CycleProfile {
        CycleProfile::new(self.cycle_lengths())
    }

    /// True for even permutations.
    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let cycles = self.cycle_lengths().len();
        (n - cycles).is_multiple_of(2)
    }

    /// `self^k` computed cycle by cycle.
    pub fn pow(&self, k: u64) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for c in self.cycles() {
            let len = c.len() as u64;
            let shift = (k % len) as usize;
            for (i, &x) in c.iter().enumerate() {
                out[x as usize] = c[(i + shift) % c.len()];
            }
        }
        Permutation { images: out }
    }

    /// The smallest point not fixed, if any.
    pub fn first_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }
}

/// Cycle type of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleProfile {
    /// Cycle lengths in decreasing order; fixed points appear as 1.
    pub cycle_lengths: Vec<usize>,
    pub cycle_count: usize,
    pub element_order: BigUint,
}

impl CycleProfile {
    pub fn new(mut cycle_lengths: Vec<usize>) -> Self {
        cycle_lengths.sort_unstable_by(|a, b| b.cmp(a));
        let element_order = cycle_lengths
            .iter()
            .fold(BigUint::from(1u32), |acc, &l| acc.lcm(&BigUint::from(l)));
        CycleProfile {
            cycle_count: cycle_lengths.len(),
            cycle_lengths,
            element_order,
        }
    }

    pub fn degree(&self) -> usize {
        self.cycle_lengths.iter().sum()
    }
}
