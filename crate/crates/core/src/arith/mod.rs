//! Exact number theory around the Euler characteristic
//! `χ = |G|(1/m − 1/2 + 1/n)` of a (2,m,n)-group.

mod factor;
mod scan;
mod zsigmondy;

pub use factor::{factor_u64, factorize, is_prime_u64, Factorization, TRIAL_DIVISION_BOUND};
pub use scan::{scan_psl2_even, ScanRow};
pub use zsigmondy::{cyclotomic_value, multiplicative_order, ppd, zsigmondy_ppd, PpdQuery};

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The unordered pair `{m, n}`, stored as given.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderPair {
    pub m: u64,
    pub n: u64,
}

impl OrderPair {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::Precondition(format!(
                "element orders must be at least 2, got {{{m},{n}}}"
            )));
        }
        Ok(OrderPair { m, n })
    }

    pub fn lcm(&self) -> u64 {
        self.m.lcm(&self.n)
    }

    pub fn swapped(&self) -> Self {
        OrderPair { m: self.n, n: self.m }
    }
}

impl fmt::Display for OrderPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPrimeForm {
    pub a: u32,
    pub s: u64,
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerResult {
    pub group_order: BigUint,
    pub pair: OrderPair,
    /// Exact value; an integer whenever `integral` is set.
    pub chi: BigRational,
    pub integral: bool,
    /// Factorization of `|χ|` for integral nonzero χ.
    pub factorization: Option<Factorization>,
    pub two_prime_form: Option<TwoPrimeForm>,
}

impl EulerResult {
    /// χ as an integer, if it is one.
    pub fn chi_integer(&self) -> Option<BigInt> {
        self.integral.then(|| self.chi.to_integer())
    }

    /// Signed prime-power form such as `-2^5·3`; `0` for zero and `p/q` otherwise.
    pub fn expr(&self) -> String {
        if !self.integral {
            return self.chi.to_string();
        }
        match &self.factorization {
            None => "0".into(),
            Some(f) => {
                let sign = if self.chi.is_negative() { "-" } else { "" };
                format!("{sign}{}", f.to_expr())
            }
        }
    }
}

/// `|G|(1/m − 1/2 + 1/n)` exactly; non-integral values are flagged, not rejected.
pub fn euler_characteristic(group_order: &BigUint, pair: OrderPair) -> EulerResult {
    let order = BigInt::from_biguint(Sign::Plus, group_order.clone());
    let (m, n) = (BigInt::from(pair.m), BigInt::from(pair.n));
    // 2mn·χ = |G|(2n − mn + 2m)
    let numerator = &order * (BigInt::from(2) * &n - &m * &n + BigInt::from(2) * &m);
    let chi = BigRational::new(numerator, BigInt::from(2) * &m * &n);
    let integral = chi.is_integer();
    let (factorization, two_prime_form) = if integral && !chi.is_zero() {
        let abs = chi.to_integer().abs().to_biguint().expect("absolute value");
        let f = factorize(&abs);
        let t = two_prime_form_of(&f);
        (Some(f), t)
    } else {
        (None, None)
    };
    EulerResult {
        group_order: group_order.clone(),
        pair,
        chi,
        integral,
        factorization,
        two_prime_form,
    }
}

fn two_prime_form_of(f: &Factorization) -> Option<TwoPrimeForm> {
    if !f.is_complete() || f.primes.len() != 2 || f.primes[0].0 != 2 {
        return None;
    }
    let (a, (s, b)) = (f.primes[0].1, f.primes[1]);
    Some(TwoPrimeForm { a, s, b })
}

/// `Some((a, s, b))` iff `|chi| = 2^a·s^b` with `a, b ≥ 1` and `s` an odd prime.
/// `None` as well when `|chi|` cannot be fully factored.
pub fn two_prime_form(chi: &BigInt) -> Result<Option<TwoPrimeForm>> {
    if chi.is_zero() {
        return Err(Error::Precondition("χ must be nonzero".into()));
    }
    let abs = chi.abs().to_biguint().expect("absolute value");
    Ok(two_prime_form_of(&factorize(&abs)))
}

/// `(x_p, x_p')` with `x = x_p·x_p'` and `p ∤ x_p'`.
pub fn p_part(x: &BigUint, p: u64) -> Result<(BigUint, BigUint)> {
    if x.is_zero() {
        return Err(Error::Precondition("p-part of zero".into()));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let bp = BigUint::from(p);
    let mut rest = x.clone();
    let mut part = BigUint::one();
    while (&rest % &bp).is_zero() {
        rest /= &bp;
        part *= &bp;
    }
    Ok((part, rest))
}

pub fn p_part_u64(x: u64, p: u64) -> Result<(u64, u64)> {
    let (a, b) = p_part(&BigUint::from(x), p)?;
    Ok((a.to_u64().expect("fits"), b.to_u64().expect("fits")))
}

/// Whether `q` is `p^k` for a prime `p`; returns `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor_u64(q);
    (f.len() == 1).then(|| f[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalanCase {
    /// `q = 9 = 2^3 + 1`, the only proper prime power next to a power of two.
    NineException,
    /// `q = 2^a ± 1` and `q` is prime.
    PrimeForced,
    /// `q` is not of the form `2^a ± 1`.
    Unconstrained,
}

/// Classifies a prime power `q` by whether it neighbours a power of two.
pub fn catalan_constraint(q: u64) -> Result<CatalanCase> {
    let Some((_, k)) = prime_power(q) else {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    };
    let near_power_of_two = (1..64).any(|a| {
        let t = 1u128 << a;
        t + 1 == q as u128 || t - 1 == q as u128
    });
    Ok(match (near_power_of_two, k) {
        (false, _) => CatalanCase::Unconstrained,
        (true, 1) => CatalanCase::PrimeForced,
        (true, _) => {
            // Mihăilescu: 3^2 − 2^3 = 1 is the only consecutive pair of perfect powers
            debug_assert_eq!(q, 9);
            CatalanCase::NineException
        }
    })
}

/// Parses `-2^5·3`, `−2^5*3^1`, `0` or a plain integer into its value.
pub fn parse_signed_expr(s: &str) -> Result<BigInt> {
    let s = s.trim();
    let (negative, body) = match s.chars().next() {
        Some('-') => (true, &s[1..]),
        Some('−') => (true, &s['−'.len_utf8()..]),
        Some('+') => (false, &s[1..]),
        _ => (false, s),
    };
    let body = body.trim();
    if body.is_empty() {
        return Err(Error::Precondition(format!("empty expression {s:?}")));
    }
    let mut value = BigInt::one();
    for factor in body.split(['·', '*', '.']) {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim()),
            None => (factor, "1"),
        };
        let base: BigInt = base
            .parse()
            .map_err(|_| Error::Precondition(format!("bad factor {factor:?} in {s:?}")))?;
        let exp: u32 = exp
            .parse()
            .map_err(|_| Error::Precondition(format!("bad exponent in {factor:?}")))?;
        value *= base.pow(exp);
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(order: u64, m: u64, n: u64) -> EulerResult {
        euler_characteristic(&BigUint::from(order), OrderPair::new(m, n).unwrap())
    }

    #[test]
    fn table_values() {
        let r = chi(720, 5, 6);
        assert_eq!(r.chi_integer(), Some(BigInt::from(-96)));
        assert_eq!(r.expr(), "-2^5·3");
        assert_eq!(r.two_prime_form, Some(TwoPrimeForm { a: 5, s: 3, b: 1 }));
        assert_eq!(chi(5616, 4, 13).expr(), "-2^2·3^5");
        assert_eq!(chi(15600, 6, 13).expr(), "-2^5·5^3");
        assert_eq!(chi(5040, 10, 7).expr(), "-2^4·3^4");
    }

    #[test]
    fn zero_and_positive() {
        let r = chi(60, 3, 6);
        assert!(r.integral);
        assert!(r.chi.is_zero());
        assert_eq!(r.expr(), "0");
        assert_eq!(chi(60, 3, 5).chi_integer(), Some(BigInt::from(2)));
    }

    #[test]
    fn non_integral_is_flagged() {
        let r = chi(10, 3, 7);
        assert!(!r.integral);
        assert_eq!(r.chi, BigRational::new(BigInt::from(-10), BigInt::from(42)));
        assert_eq!(r.chi_integer(), None);
    }

    #[test]
    fn two_prime_forms() {
        assert_eq!(
            two_prime_form(&BigInt::from(-96)).unwrap(),
            Some(TwoPrimeForm { a: 5, s: 3, b: 1 })
        );
        assert_eq!(two_prime_form(&BigInt::from(-60)).unwrap(), None);
        assert_eq!(two_prime_form(&BigInt::from(-8)).unwrap(), None);
        assert_eq!(two_prime_form(&BigInt::from(-27)).unwrap(), None);
        assert!(two_prime_form(&BigInt::zero()).is_err());
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part_u64(48, 2).unwrap(), (16, 3));
        assert_eq!(p_part_u64(7, 3).unwrap(), (1, 7));
        assert!(p_part_u64(12, 4).is_err());
    }

    #[test]
    fn catalan_cases() {
        assert_eq!(catalan_constraint(9).unwrap(), CatalanCase::NineException);
        assert_eq!(catalan_constraint(7).unwrap(), CatalanCase::PrimeForced);
        assert_eq!(catalan_constraint(25).unwrap(), CatalanCase::Unconstrained);
        assert_eq!(catalan_constraint(17).unwrap(), CatalanCase::PrimeForced);
        assert_eq!(catalan_constraint(8).unwrap(), CatalanCase::Unconstrained);
        assert!(catalan_constraint(12).is_err());
    }

    #[test]
    fn expression_parsing() {
        assert_eq!(parse_signed_expr("-2^5·3").unwrap(), BigInt::from(-96));
        assert_eq!(parse_signed_expr("−2^4*3^4").unwrap(), BigInt::from(-1296));
        assert_eq!(parse_signed_expr("0").unwrap(), BigInt::zero());
        assert_eq!(parse_signed_expr("2").unwrap(), BigInt::from(2));
        assert!(parse_signed_expr("-2^x").is_err());
        assert!(parse_signed_expr("").is_err());
    }
}
