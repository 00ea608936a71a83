//! Finite fields GF(p^k) with p^k ≤ 2^20.
//!
//! An element is encoded as the integer `Σ c_i p^i` of its coefficient
//! vector over the fixed modulus, so `0` and `1` are the field's zero and one
//! and the prime subfield is `0..p`. Multiplication goes through log tables
//! built from the primitive element of least encoding.

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, constant term first; length `k + 1`.
    modulus: Vec<u32>,
    primitive: u32,
    /// `exp[i] = primitive^i` for `0 <= i < 2(q - 1)`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Precondition("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge { p, k });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = least_irreducible(p, k);
        let mul = |a: u32, b: u32| encode(p, &poly_mulmod(p, &decode(p, k, a), &decode(p, k, b), &modulus));

        let group_order = q - 1;
        let prime_divisors = prime_divisors(group_order);
        let primitive = (1..q)
            .find(|&g| {
                prime_divisors
                    .iter()
                    .all(|&r| pow_by(g, (group_order / r) as u64, &mul) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * group_order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..group_order {
            exp[i as usize] = x;
            exp[(i + group_order) as usize] = x;
            log[x as usize] = i;
            x = mul(x, primitive);
        }
        Ok(Field {
            p,
            k,
            q,
            modulus,
            primitive,
            exp,
            log,
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element of least encoding.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::Precondition("zero has no inverse".into()));
        }
        Ok(self.exp[((self.q - 1 - self.log[a as usize]) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `x ↦ x^(p^e)`.
    pub fn frobenius(&self, a: u32, e: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(e % self.k))
    }

    /// Discrete logarithm to the base of [`primitive_element`](Self::primitive_element).
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `primitive^i`.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.q - 1) as u64) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.q - 1) as u64;
        Some(n / num_integer::gcd(l, n))
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

fn decode(p: u32, k: u32, mut a: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(k as usize);
    for _ in 0..k {
        c.push(a % p);
        a /= p;
    }
    c
}

fn encode(p: u32, c: &[u32]) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn pow_by(g: u32, mut e: u64, mul: &impl Fn(u32, u32) -> u32) -> u32 {
    let mut base = g;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo `m` over GF(p); `m` nonzero with trimmed leading term.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p as u64;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = c * mi as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(p: u32, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    poly_rem(p, &prod, m)
}

fn poly_gcd(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: `f` of degree `k` is irreducible iff `gcd(x^(p^i) - x, f) = 1` for `1 <= i <= k/2`.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let k = f.len() - 1;
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 0..k / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1];
        for _ in 0..p {
            acc = poly_mulmod(p, &acc, &xp, f);
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        if poly_gcd(p, &diff, f).len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree `k` whose coefficient vector, read from the
/// top coefficient down, is least.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = p.pow(k);
    (0..count)
        .map(|low| {
            let mut f = decode(p, k, low);
            f.push(1);
            f
        })
        .find(|f| k == 1 || is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree")
}
