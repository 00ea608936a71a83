//! Element-order spectra, the prime graph and the prime-divisibility filters.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime_u64, p_part, OrderPair};
use crate::error::{Error, Result};
use crate::perm::{ClassData, PermGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMode {
    /// Walks every element of the group through the chain.
    Exhaustive,
    /// Reads element orders off the conjugacy classes.
    ClassBased,
}

fn check_budget(group: &PermGroup, budget: u64) -> Result<u64> {
    match group.order_u64() {
        Some(n) if n <= budget => Ok(n),
        _ => Err(Error::BudgetExceeded {
            order: group.order().to_string(),
            budget,
        }),
    }
}

/// The set `{o(g) : g ∈ G}`.
pub fn order_spectrum(group: &PermGroup, mode: SpectrumMode, budget: u64) -> Result<BTreeSet<u64>> {
    match mode {
        SpectrumMode::Exhaustive => {
            let n = check_budget(group, budget)?;
            let chain = group.chain();
            Ok((0..n).map(|r| chain.unrank(r).order()).collect())
        }
        SpectrumMode::ClassBased => Ok(spectrum_of_classes(&ClassData::compute(group, budget)?)),
    }
}

pub fn spectrum_of_classes(classes: &ClassData) -> BTreeSet<u64> {
    classes.classes().iter().map(|c| c.element_order).collect()
}

fn prime_divisors(n: &BigUint) -> Result<Vec<u64>> {
    let f = factorize(n);
    if !f.is_complete() {
        return Err(Error::FactorizationBudget(n.to_string()));
    }
    Ok(f.primes.iter().map(|&(p, _)| p).collect())
}

fn p_part_u64(n: &BigUint, p: u64) -> Result<Option<u64>> {
    let (pp, _) = p_part(n, p)?;
    Ok(u64::try_from(&pp).ok())
}

/// Whether a Sylow `p`-subgroup is cyclic, decided by `|G|_p ∈ spectrum`.
pub fn sylow_cyclic(group_order: &BigUint, spectrum: &BTreeSet<u64>, p: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if !(group_order % p).is_zero() {
        return Err(Error::Precondition(format!("{p} does not divide {group_order}")));
    }
    Ok(match p_part_u64(group_order, p)? {
        Some(pp) => spectrum.contains(&pp),
        None => false,
    })
}

/// Size of a largest independent set, by exact branching over a bitmask graph.
pub fn independence_number(adjacency: &[u64]) -> usize {
    fn go(candidates: u64, adjacency: &[u64]) -> usize {
        if candidates == 0 {
            return 0;
        }
        let v = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1 << v);
        let with = 1 + go(rest & !adjacency[v], adjacency);
        if adjacency[v] & rest == 0 {
            // v has no neighbours left, so taking it is optimal
            return with;
        }
        with.max(go(rest, adjacency))
    }
    assert!(adjacency.len() <= 64, "at most 64 vertices");
    let all = if adjacency.len() == 64 {
        u64::MAX
    } else {
        (1u64 << adjacency.len()) - 1
    };
    go(all, adjacency)
}

/// Prime graph data for one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumProfile {
    #[serde(with = "crate::catalog::decimal")]
    pub group_order: BigUint,
    pub spectrum: Vec<u64>,
    pub pi: Vec<u64>,
    pub pi_c: Vec<u64>,
    pub pi_nc: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
    pub t: usize,
    pub t_c: usize,
}

impl SpectrumProfile {
    pub fn from_spectrum(group_order: &BigUint, spectrum: &BTreeSet<u64>) -> Result<Self> {
        let pi = prime_divisors(group_order)?;
        let mut pi_c = Vec::new();
        let mut pi_nc = Vec::new();
        for &p in &pi {
            if sylow_cyclic(group_order, spectrum, p)? {
                pi_c.push(p);
            } else {
                pi_nc.push(p);
            }
        }
        let mut edges = Vec::new();
        for (i, &p) in pi.iter().enumerate() {
            for &q in &pi[i + 1..] {
                if spectrum.contains(&(p * q)) {
                    edges.push((p, q));
                }
            }
        }
        let graph = |vertices: &[u64]| -> Vec<u64> {
            vertices
                .iter()
                .map(|&p| {
                    vertices.iter().enumerate().fold(0u64, |acc, (j, &q)| {
                        if p != q && spectrum.contains(&(p * q)) {
                            acc | (1 << j)
                        } else {
                            acc
                        }
                    })
                })
                .collect()
        };
        let t = independence_number(&graph(&pi));
        let t_c = independence_number(&graph(&pi_c));
        Ok(SpectrumProfile {
            group_order: group_order.clone(),
            spectrum: spectrum.iter().copied().collect(),
            pi,
            pi_c,
            pi_nc,
            edges,
            t,
            t_c,
        })
    }

    pub fn has_order(&self, k: u64) -> bool {
        self.spectrum.binary_search(&k).is_ok()
    }

    pub fn adjacent(&self, p: u64, q: u64) -> bool {
        self.edges.contains(&(p.min(q), p.max(q)))
    }

    pub fn sylow_cyclic(&self, p: u64) -> Result<bool> {
        if !self.pi.contains(&p) {
            return Err(Error::Precondition(format!("{p} does not divide {}", self.group_order)));
        }
        Ok(self.pi_c.contains(&p))
    }
}

/// Profile of `group`, from its conjugacy classes.
pub fn prime_graph(group: &PermGroup, budget: u64) -> Result<SpectrumProfile> {
    let spectrum = order_spectrum(group, SpectrumMode::ClassBased, budget)?;
    SpectrumProfile::from_spectrum(group.order(), &spectrum)
}

fn check_odd_prime(t: u64) -> Result<()> {
    if t == 2 || !is_prime_u64(t) {
        return Err(Error::Precondition(format!("{t} is not an odd prime")));
    }
    Ok(())
}

/// True when `|G|_t > [m, n]_t`, which forces `t | χ` for any `(2, m, n)` structure.
pub fn lemma31_filter(group_order: &BigUint, pair: OrderPair, t: u64) -> Result<bool> {
    check_odd_prime(t)?;
    if !(group_order % t).is_zero() {
        return Err(Error::Precondition(format!("{t} does not divide {group_order}")));
    }
    let (g_t, _) = p_part(group_order, t)?;
    let (l_t, _) = p_part(&BigUint::from(pair.lcm()), t)?;
    Ok(g_t > l_t)
}

/// The same test applied to a quotient `G/N` with images of orders `m_n`, `n_n`.
///
/// For an almost simple group over its socle the quotient order is the
/// catalog's socle index.
pub fn quotient_filter(quotient_order: &BigUint, m_n: u64, n_n: u64, t: u64) -> Result<bool> {
    check_odd_prime(t)?;
    if m_n == 0 || n_n == 0 {
        return Err(Error::Precondition("quotient orders must be positive".into()));
    }
    let (q_t, _) = p_part(quotient_order, t)?;
    let (l_t, _) = p_part(&BigUint::from(m_n.lcm(&n_n)), t)?;
    Ok(q_t > l_t)
}

/// Outcome of the prime-count bound for one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop36Report {
    /// Primes dividing `|G| / [m, n]`.
    pub primes: Vec<u64>,
    /// `max(0, t_c − 2) + |π_nc|`.
    pub bound_nc: usize,
    /// `t − 2`, floored at zero.
    pub bound_t: usize,
    pub satisfiable: bool,
}

/// Compares the number of primes dividing `|G| / [m, n]` with the lower
/// bounds from the profile of a normal subgroup `N`. The caller asserts that
/// `N` has non-cyclic Sylow 2-subgroups.
pub fn prop36_bound(profile: &SpectrumProfile, pair: OrderPair, group_order: &BigUint) -> Result<Prop36Report> {
    let l = BigUint::from(pair.lcm());
    if !(group_order % &l).is_zero() {
        return Err(Error::Precondition(format!(
            "[m, n] = {l} does not divide {group_order}"
        )));
    }
    let primes = prime_divisors(&(group_order / &l))?;
    let bound_nc = profile.t_c.saturating_sub(2) + profile.pi_nc.len();
    let bound_t = profile.t.saturating_sub(2);
    let satisfiable = primes.len() >= bound_nc && primes.len() >= bound_t;
    Ok(Prop36Report {
        primes,
        bound_nc,
        bound_t,
        satisfiable,
    })
}
