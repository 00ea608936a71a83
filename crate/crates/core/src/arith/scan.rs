use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::{factorize, Factorization};
use super::{euler_characteristic, OrderPair};
use crate::error::{Error, Result};

/// One value `q = 2^x` of the scan over PSL_2(q) with `{m, n} = {q + 1, q − 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub x: u32,
    pub q: BigUint,
    pub chi: BigInt,
    /// `P(q) = −2χ/q`, recovered by exact division; equals `q² − 4q − 1`.
    pub derived_poly: BigInt,
    /// `q² − 4q + 1`, shown next to the derived value for comparison.
    pub printed_poly: BigInt,
    pub odd_part: BigUint,
    pub odd_part_factorization: Factorization,
    /// `(s, b)` when the odd part is `s^b` with `b ≥ 1`.
    pub prime_power: Option<(u64, u32)>,
    /// `None` when the odd part could not be fully factored.
    pub flagged: Option<bool>,
    pub printed_poly_prime_power: Option<(u64, u32)>,
}

fn as_prime_power(f: &Factorization) -> Option<(u64, u32)> {
    (f.is_complete() && f.primes.len() == 1).then(|| f.primes[0])
}

/// Scans `x = 2..=x_max` (at most 63).
pub fn scan_psl2_even(x_max: u32) -> Result<Vec<ScanRow>> {
    if !(2..=63).contains(&x_max) {
        return Err(Error::Precondition(format!("x_max must lie in 2..=63, got {x_max}")));
    }
    (2..=x_max).map(scan_row).collect()
}

fn scan_row(x: u32) -> Result<ScanRow> {
    let q = BigUint::from(1u32) << x;
    let q_u64 = 1u64 << x;
    let order = &q * (&q * &q - 1u32);
    let pair = OrderPair::new(q_u64 + 1, q_u64 - 1)?;
    let result = euler_characteristic(&order, pair);
    let chi = result
        .chi_integer()
        .expect("χ is integral for PSL_2(2^x) with {q+1, q−1}");

    let qi = BigInt::from_biguint(Sign::Plus, q.clone());
    let (derived_poly, rem) = (BigInt::from(-2) * &chi).div_rem(&qi);
    debug_assert!(rem.is_zero());
    let printed_poly: BigInt = &qi * &qi - BigInt::from(4) * &qi + 1;

    let mut odd_part = chi.abs().to_biguint().expect("absolute value");
    while !odd_part.is_zero() && odd_part.is_even() {
        odd_part >>= 1;
    }
    let odd_part_factorization = factorize(&odd_part);
    let prime_power = as_prime_power(&odd_part_factorization);
    let flagged = odd_part_factorization.is_complete().then_some(prime_power.is_some());
    let printed_poly_prime_power =
        as_prime_power(&factorize(&printed_poly.abs().to_biguint().expect("absolute value")));

    Ok(ScanRow {
        x,
        q,
        chi,
        derived_poly,
        printed_poly,
        odd_part,
        odd_part_factorization,
        prime_power,
        flagged,
        printed_poly_prime_power,
    })
}
