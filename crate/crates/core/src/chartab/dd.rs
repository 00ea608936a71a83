//! Double-double floating point (about 106 significant bits) and complex
//! numbers over it.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i64(x: i64) -> Dd {
        let hi = x as f64;
        let lo = (x as i128 - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn from_biguint(x: &BigUint) -> Dd {
        let hi = x.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return Dd::from_f64(hi);
        }
        let hi_int = BigUint::from(hi as u128);
        let lo = if hi_int <= *x {
            (x - &hi_int).to_f64().unwrap_or(0.0)
        } else {
            -(&hi_int - x).to_f64().unwrap_or(0.0)
        };
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + Dd::from_f64(q3)
    }

    /// Nearest integer.
    pub fn round(self) -> Dd {
        let r = self.hi.round();
        if r == self.hi {
            let (hi, lo) = quick_two_sum(r, self.lo.round());
            return Dd { hi, lo };
        }
        if (r - self.hi).abs() == 0.5 {
            let up = self.hi + 0.5;
            let down = self.hi - 0.5;
            return Dd::from_f64(if self.lo > 0.0 {
                up
            } else if self.lo < 0.0 {
                down
            } else {
                r
            });
        }
        Dd::from_f64(r)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex {
    pub re: Dd,
    pub im: Dd,
}

impl Complex {
    pub const ZERO: Complex = Complex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: Complex = Complex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn real(x: Dd) -> Complex {
        Complex { re: x, im: Dd::ZERO }
    }

    pub fn conj(self) -> Complex {
        Complex {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn scale(self, x: Dd) -> Complex {
        Complex {
            re: self.re * x,
            im: self.im * x,
        }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn div(self, b: Complex) -> Complex {
        let d = b.norm_sqr();
        let n = self * b.conj();
        Complex {
            re: n.re.div(d),
            im: n.im.div(d),
        }
    }

    pub fn pow(self, mut e: u64) -> Complex {
        let mut base = self;
        let mut acc = Complex::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `exp(2πi·e/n)`, refined by Newton's method on `z^n = 1` from the
    /// double-precision value.
    pub fn root_of_unity(n: u64, e: i64) -> Complex {
        assert!(n > 0);
        let e = e.rem_euclid(n as i64) as u64;
        if e == 0 {
            return Complex::ONE;
        }
        if 2 * e == n {
            return Complex::real(-Dd::ONE);
        }
        if 4 * e == n {
            return Complex {
                re: Dd::ZERO,
                im: Dd::ONE,
            };
        }
        if 4 * e == 3 * n {
            return Complex {
                re: Dd::ZERO,
                im: -Dd::ONE,
            };
        }
        let theta = std::f64::consts::TAU * (e as f64) / (n as f64);
        let mut z = Complex {
            re: Dd::from_f64(theta.cos()),
            im: Dd::from_f64(theta.sin()),
        };
        let inv_n = Dd::ONE.div(Dd::from_i64(n as i64));
        for _ in 0..2 {
            let w = z.pow(n);
            // z ← z − z·(1 − w⁻¹)/n
            let step = Complex::ONE - Complex::ONE.div(w);
            z = z - (z * step).scale(inv_n);
        }
        z
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, b: Complex) -> Complex {
        Complex {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, b: Complex) -> Complex {
        Complex {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, b: Complex) -> Complex {
        Complex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}
