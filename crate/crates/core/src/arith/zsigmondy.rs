use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::factor::{factor_u64, factorize};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpdQuery {
    pub q: u64,
    pub a: u32,
}

fn mobius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Φ_a(q)`, the `a`-th cyclotomic polynomial evaluated at `q`.
pub fn cyclotomic_value(q: u64, a: u32) -> BigUint {
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in 1..=a {
        if !a.is_multiple_of(d) {
            continue;
        }
        let term = q.pow(d) - 1;
        match mobius((a / d) as u64) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    (num / den).to_biguint().expect("Φ_a(q) > 0 for q ≥ 2")
}

/// Multiplicative order of `q` modulo the prime `t`; `None` if `t | q`.
pub fn multiplicative_order(q: u64, t: u64) -> Option<u64> {
    let r = q % t;
    if r == 0 {
        return None;
    }
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64 % t;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * b as u128 % t as u128) as u64;
            }
            b = (b as u128 * b as u128 % t as u128) as u64;
            e >>= 1;
        }
        acc
    };
    let mut ord = t - 1;
    for (p, _) in factor_u64(t - 1) {
        while ord.is_multiple_of(p) && pow(r, ord / p) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

/// The least primitive prime divisor of `q^a − 1`: a prime dividing it but no
/// `q^i − 1` with `i < a`. `None` exactly when no such prime exists.
///
/// Every primitive prime divisor divides `Φ_a(q)`, so only that factor is
/// split; the call fails if it leaves a cofactor wider than 64 bits.
pub fn zsigmondy_ppd(query: PpdQuery) -> Result<Option<u64>> {
    let PpdQuery { q, a } = query;
    if q < 2 || a < 2 {
        return Err(Error::Precondition(format!(
            "need q ≥ 2 and a ≥ 2, got q = {q}, a = {a}"
        )));
    }
    let phi = cyclotomic_value(q, a);
    let f = factorize(&phi);
    if let Some(rest) = f.unfactored {
        return Err(Error::FactorizationBudget(format!(
            "Φ_{a}({q}) leaves the cofactor {rest}"
        )));
    }
    Ok(f.primes
        .into_iter()
        .map(|(t, _)| t)
        .find(|&t| multiplicative_order(q, t) == Some(a as u64)))
}

/// Convenience for callers holding plain integers.
pub fn ppd(q: u64, a: u32) -> Result<Option<u64>> {
    zsigmondy_ppd(PpdQuery { q, a })
}
