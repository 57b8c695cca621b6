//! Large prime fields F_p used by the dimension oracle.
//!
//! Jet-scheme dimensions are computed modulo random primes p > 2^30 with
//! p = 1 (mod L) so F_p contains the needed roots of unity; agreement across
//! primes is the Monte-Carlo stand-in for characteristic zero.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Cyclo;
use crate::scalar::{FieldScalar, Rat};

/// An element of F_p. The modulus rides along with the value; `p == 0`
/// marks the context-free constants produced by `zero()`/`one()`, which
/// bind to the other operand's modulus on first use.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    Some(powmod(a, p - 2, p))
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    fn bind(self, other: Self) -> (u64, u64, u64) {
        let p = if self.p != 0 { self.p } else { other.p };
        debug_assert!(other.p == 0 || other.p == p, "mixed moduli");
        let a = if self.p == 0 { self.v % p.max(1) } else { self.v };
        let b = if other.p == 0 { other.v % p.max(1) } else { other.v };
        (a, b, p)
    }

    pub fn inv(self) -> Option<Self> {
        if self.p == 0 {
            return if self.v == 1 { Some(self) } else { None };
        }
        invmod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.bind(*other);
        a == b
    }
}
impl Eq for Fp {}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = self.bind(rhs);
        if p == 0 {
            return Fp { v: a + b, p: 0 };
        }
        let s = a + b;
        Fp { v: if s >= p { s - p } else { s }, p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, p) = self.bind(rhs);
        if p == 0 {
            return Fp { v: a.wrapping_sub(b), p: 0 };
        }
        Fp { v: if a >= b { a - b } else { a + p - b }, p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = self.bind(rhs);
        if p == 0 {
            return Fp { v: a * b, p: 0 };
        }
        Fp { v: mulmod(a, b, p), p }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.p == 0 {
            debug_assert_eq!(self.v, 0);
            return self;
        }
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
}

impl FieldScalar for Fp {
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` smallest primes p >= floor with p = 1 (mod l). Deterministic,
/// so runs are reproducible for a given cyclotomic order.
pub fn default_primes(l: u32, count: usize, floor: u64) -> Vec<u64> {
    let l = l.max(1) as u64;
    let mut k = floor / l + 1;
    let mut out = Vec::new();
    while out.len() < count {
        let p = k * l + 1;
        if p > floor && is_prime_u64(p) {
            out.push(p);
        }
        k += 1;
    }
    out
}

fn factorize(mut n: u64) -> Vec<u64> {
    let mut fs = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            fs.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1 + (d & 1);
    }
    if n > 1 {
        fs.push(n);
    }
    fs
}

/// An element of exact multiplicative order l in F_p (requires l | p-1).
pub fn root_of_unity_mod(l: u32, p: u64) -> Result<u64> {
    let l = l as u64;
    if (p - 1) % l != 0 {
        return Err(Error::BadPrime { p, reason: format!("p != 1 mod {l}") });
    }
    if l == 1 {
        return Ok(1);
    }
    let fs = factorize(l);
    // scan small bases for a generator of the l-part
    for g in 2..10_000u64 {
        let w = powmod(g, (p - 1) / l, p);
        if w != 1 && fs.iter().all(|&q| powmod(w, l / q, p) != 1) {
            return Ok(w);
        }
    }
    Err(Error::BadPrime { p, reason: "no primitive root found".into() })
}

/// Ring map Q(zeta_l) -> F_p through zeta_l -> omega.
pub struct CycloToFp {
    pub p: u64,
    pub l: u32,
    omega_pows: Vec<u64>,
}

impl CycloToFp {
    pub fn new(l: u32, p: u64) -> Result<Self> {
        if p < (1 << 30) || !is_prime_u64(p) {
            return Err(Error::BadPrime { p, reason: "need a prime > 2^30".into() });
        }
        let omega = root_of_unity_mod(l, p)?;
        let mut omega_pows = Vec::with_capacity(l as usize);
        let mut acc = 1u64;
        for _ in 0..l {
            omega_pows.push(acc);
            acc = mulmod(acc, omega, p);
        }
        Ok(CycloToFp { p, l, omega_pows })
    }

    pub fn reduce_rat(&self, r: &Rat) -> Result<Fp> {
        let p_big = num_bigint::BigInt::from(self.p);
        let num = r.numer().mod_floor(&p_big);
        let den = r.denom().mod_floor(&p_big);
        let num = u64::try_from(&num).map_err(|_| Error::Internal("mod_floor out of range".into()))?;
        let den = u64::try_from(&den).map_err(|_| Error::Internal("mod_floor out of range".into()))?;
        let dinv = invmod(den, self.p).ok_or(Error::BadPrime {
            p: self.p,
            reason: "denominator divisible by p".into(),
        })?;
        Ok(Fp::new(mulmod(num, dinv, self.p), self.p))
    }

    pub fn reduce_cyclo(&self, c: &Cyclo) -> Result<Fp> {
        let c = c.embed(self.l)?;
        let mut acc = Fp::new(0, self.p);
        for (j, coef) in c.coeffs().iter().enumerate() {
            if !coef.is_zero() {
                acc = acc + self.reduce_rat(coef)? * Fp::new(self.omega_pows[j], self.p);
            }
        }
        Ok(acc)
    }
}

/// Exact rational sign bookkeeping for reduce_rat.
pub fn rat_is_negative(r: &Rat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_default_primes() {
        assert!(is_prime_u64(1_073_741_827));
        assert!(!is_prime_u64(1_073_741_825));
        let ps = default_primes(6, 2, 1 << 31);
        assert_eq!(ps.len(), 2);
        for p in ps {
            assert!(is_prime_u64(p));
            assert_eq!((p - 1) % 6, 0);
            assert!(p > 1 << 31);
        }
    }

    #[test]
    fn roots_of_unity_mod_p() {
        let p = default_primes(12, 1, 1 << 31)[0];
        let w = root_of_unity_mod(12, p).unwrap();
        assert_eq!(powmod(w, 12, p), 1);
        for k in 1..12 {
            if 12 % k == 0 {
                assert_ne!(powmod(w, k, p), 1);
            }
        }
    }

    #[test]
    fn cyclo_reduction_is_ring_hom() {
        let p = default_primes(6, 1, 1 << 31)[0];
        let map = CycloToFp::new(6, p).unwrap();
        let a = Cyclo::root(6, 1);
        let b = Cyclo::root(6, 5);
        let ab = map.reduce_cyclo(&(&a * &b)).unwrap();
        assert_eq!(ab, map.reduce_cyclo(&a).unwrap() * map.reduce_cyclo(&b).unwrap());
        // 1 + zeta_6^2 + zeta_6^4 = 0 maps to 0
        let s = &(&Cyclo::one_of(6) + &Cyclo::root(6, 2)) + &Cyclo::root(6, 4);
        assert!(map.reduce_cyclo(&s).unwrap().is_zero());
    }
}
