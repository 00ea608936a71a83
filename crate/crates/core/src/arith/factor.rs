use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin; the first twelve prime bases suffice below 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho with Floyd cycle detection and a deterministic sequence of constants.
fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of a 64-bit integer, as sorted `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for p in [2u64, 3, 5] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    let mut d = 7u64;
    while d * d <= n && d < 1 << 16 {
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
        d += 2;
    }
    factor_u64_into(n, &mut primes);
    collect(primes)
}

fn collect(mut primes: Vec<u64>) -> Vec<(u64, u32)> {
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// A factorization of a positive integer. Anything left after trial division
/// that does not fit in 64 bits is kept whole in `unfactored`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub primes: Vec<(u64, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unfactored: Option<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_none()
    }

    pub fn value(&self) -> BigUint {
        let mut v = self.unfactored.clone().unwrap_or_else(BigUint::one);
        for &(p, e) in &self.primes {
            v *= BigUint::from(p).pow(e);
        }
        v
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.primes.iter().find(|(q, _)| *q == p).map_or(0, |&(_, e)| e)
    }

    /// `2^5·3`, or `1` for the empty product.
    pub fn to_expr(&self) -> String {
        let mut parts: Vec<String> = self
            .primes
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if let Some(u) = &self.unfactored {
            parts.push(format!("[{u}]"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

/// Trial division to [`TRIAL_DIVISION_BOUND`], then Miller–Rabin and Pollard
/// rho on a cofactor that fits in 64 bits. `n` must be positive.
pub fn factorize(n: &BigUint) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    if let Some(small) = n.to_u64() {
        return Factorization {
            primes: factor_u64(small),
            unfactored: None,
        };
    }
    let mut n = n.clone();
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND {
        let bd = BigUint::from(d);
        if &bd * &bd > n {
            break;
        }
        while (&n % &bd).is_zero() {
            primes.push(d);
            n /= &bd;
        }
        if let Some(small) = n.to_u64() {
            primes.extend(
                factor_u64(small)
                    .into_iter()
                    .flat_map(|(p, e)| std::iter::repeat_n(p, e as usize)),
            );
            return Factorization {
                primes: collect(primes),
                unfactored: None,
            };
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // anything that still exceeds 64 bits is out of reach
    let unfactored = Some(n);
    Factorization {
        primes: collect(primes),
        unfactored,
    }
}
