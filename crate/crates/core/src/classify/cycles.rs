//! Cycle-count bounds for generating pairs of transitive permutation groups.
//!
//! If `g₁g₂g₃ = 1` generate a transitive group of degree `n` and `gᵢ` has
//! `cᵢ` cycles, then `c₁ + c₂ + c₃ ≤ n + 2` with `c₁ + c₂ + c₃ ≡ n (mod 2)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::catalog::NaturalKind;

/// Degrees outside `MIN..=MAX` are not examined.
pub const MIN_CYCLE_BOUND_DEGREE: usize = 5;
pub const MAX_CYCLE_BOUND_DEGREE: usize = 4096;

/// Least cycle counts of an even and of an odd permutation of order exactly `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCycles {
    pub even: Option<usize>,
    pub odd: Option<usize>,
}

impl MinCycles {
    pub fn overall(&self) -> Option<usize> {
        match (self.even, self.odd) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn get(&self, odd: bool) -> Option<usize> {
        if odd {
            self.odd
        } else {
            self.even
        }
    }
}

/// Minimum cycle counts over permutations of `n` points with order exactly
/// `k`, split by parity. Dynamic programming over multisets of divisors of `k`.
pub fn min_cycles_by_parity(n: usize, k: u64) -> MinCycles {
    if k == 0 || n == 0 {
        return MinCycles::default();
    }
    let divisors: Vec<u64> = (1..=k.min(n as u64)).filter(|d| k.is_multiple_of(*d)).collect();
    let all_divisors: Vec<u64> = (1..=k).filter(|d| k.is_multiple_of(*d)).collect();
    let lcm_index = |l: u64| all_divisors.binary_search(&l).expect("lcm divides k");
    let nl = all_divisors.len();
    // best[s][l][parity] = least number of cycles summing to s with lcm all_divisors[l]
    let mut best = vec![vec![[usize::MAX; 2]; nl]; n + 1];
    best[0][0] = [0, usize::MAX];
    for s in 0..n {
        for l in 0..nl {
            for parity in 0..2 {
                let c = best[s][l][parity];
                if c == usize::MAX {
                    continue;
                }
                for &d in &divisors {
                    let s2 = s + d as usize;
                    if s2 > n {
                        break;
                    }
                    let l2 = lcm_index(all_divisors[l].lcm(&d));
                    let p2 = parity ^ ((d as usize - 1) & 1);
                    if c + 1 < best[s2][l2][p2] {
                        best[s2][l2][p2] = c + 1;
                    }
                }
            }
        }
    }
    let top = lcm_index(k);
    let pick = |p: usize| Some(best[n][top][p]).filter(|&c| c != usize::MAX);
    MinCycles {
        even: pick(0),
        odd: pick(1),
    }
}

/// Minimum cycle count over permutations of `n` points of order exactly `k`.
pub fn min_cycles(n: usize, k: u64) -> Option<usize> {
    min_cycles_by_parity(n, k).overall()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBoundReport {
    pub degree: usize,
    pub involution: MinCycles,
    pub m: MinCycles,
    pub n: MinCycles,
    /// Least admissible value of `c₁ + c₂ + c₃`, or `None` when no parity
    /// assignment is admissible.
    pub least_total: Option<usize>,
    pub limit: usize,
    pub refuted: bool,
}

/// Applies the bound to the natural action of `S_d` or `A_d`.
///
/// Generating `S_d` needs an odd generator, and a product equal to one has
/// an even number of odd factors; `A_d` only has even elements.
pub fn cycle_bound(kind: NaturalKind, degree: usize, m: u64, n: u64) -> Option<CycleBoundReport> {
    if !(MIN_CYCLE_BOUND_DEGREE..=MAX_CYCLE_BOUND_DEGREE).contains(&degree) {
        return None;
    }
    let involution = min_cycles_by_parity(degree, 2);
    let cm = min_cycles_by_parity(degree, m);
    let cn = min_cycles_by_parity(degree, n);
    let mut least: Option<usize> = None;
    for bits in 0u8..8 {
        let (p0, p1, p2) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
        let odd = p0 as u8 + p1 as u8 + p2 as u8;
        if odd % 2 == 1 {
            continue;
        }
        let admissible = match kind {
            NaturalKind::Symmetric => odd > 0,
            NaturalKind::Alternating => odd == 0,
        };
        if !admissible {
            continue;
        }
        if let (Some(a), Some(b), Some(c)) = (involution.get(p0), cm.get(p1), cn.get(p2)) {
            let total = a + b + c;
            least = Some(least.map_or(total, |l| l.min(total)));
        }
    }
    let limit = degree + 2;
    Some(CycleBoundReport {
        degree,
        involution,
        m: cm,
        n: cn,
        least_total: least,
        limit,
        refuted: least.is_none_or(|t| t > limit),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_nine_minima() {
        assert_eq!(min_cycles(9, 2), Some(5));
        assert_eq!(min_cycles(9, 10), Some(3));
        assert_eq!(min_cycles(9, 7), Some(3));
        assert_eq!(min_cycles(9, 5), Some(5));
        assert_eq!(min_cycles(9, 14), Some(2));
        assert_eq!(min_cycles(9, 11), None);
        assert_eq!(min_cycles(3, 1), Some(3));
    }

    #[test]
    fn s9_refutations() {
        let r = cycle_bound(NaturalKind::Symmetric, 9, 10, 7).unwrap();
        assert!(r.refuted);
        let r = cycle_bound(NaturalKind::Symmetric, 9, 5, 14).unwrap();
        assert!(r.refuted);
    }

    #[test]
    fn genuine_generating_pairs_survive() {
        assert!(!cycle_bound(NaturalKind::Symmetric, 6, 5, 6).unwrap().refuted);
        assert!(!cycle_bound(NaturalKind::Symmetric, 7, 10, 7).unwrap().refuted);
        assert!(!cycle_bound(NaturalKind::Alternating, 5, 3, 5).unwrap().refuted);
        assert!(!cycle_bound(NaturalKind::Alternating, 9, 10, 7).unwrap().refuted);
        assert!(!cycle_bound(NaturalKind::Symmetric, 8, 10, 7).unwrap().refuted);
    }
}
