//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! Elements are stored as length-m coefficient vectors modulo x^m - 1 and
//! kept in canonical form: reduced modulo the m-th cyclotomic polynomial
//! Phi_m and embedded back into the length-m vector (all coefficients at
//! indices >= deg Phi_m are zero). Equality on canonical forms is exact.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Rat};

/// Monic coefficients of Phi_m, cached per order.
struct CycloCtx {
    phi: Vec<Rat>,
}

fn ctx(m: u32) -> Arc<CycloCtx> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard
        .entry(m)
        .or_insert_with(|| Arc::new(CycloCtx { phi: cyclotomic_poly(m) }))
        .clone()
}

fn divisors(m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 1..=m {
        if m % d == 0 {
            out.push(d);
        }
    }
    out
}

fn moebius(mut n: u32) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Phi_m via the Moebius product: prod_{d | m} (x^{m/d} - 1)^{mu(d)}.
fn cyclotomic_poly(m: u32) -> Vec<Rat> {
    assert!(m >= 1);
    let mut num = vec![Rat::one()];
    let mut den = vec![Rat::one()];
    for d in divisors(m) {
        let mut factor = vec![Rat::zero(); (m / d + 1) as usize];
        factor[0] = -Rat::one();
        factor[(m / d) as usize] = Rat::one();
        match moebius(d) {
            1 => num = poly_mul(&num, &factor),
            -1 => den = poly_mul(&den, &factor),
            _ => {}
        }
    }
    let (q, r) = poly_divrem(&num, &den);
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

fn poly_deg(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quot = vec![Rat::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].clone() / b[db].clone();
        quot[dr - db] = c.clone();
        for k in 0..=db {
            if !b[k].is_zero() {
                let delta = &c * &b[k];
                rem[dr - db + k] -= delta;
            }
        }
    }
    (quot, rem)
}

/// Extended gcd in Q[x]: returns (g, u) with u*a = g mod b, g the gcd.
fn poly_half_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut u0 = vec![Rat::one()];
    let mut u1 = vec![Rat::zero()];
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_divrem(&r0, &r1);
        let qu = poly_mul(&q, &u1);
        let mut u = u0.clone();
        if u.len() < qu.len() {
            u.resize(qu.len(), Rat::zero());
        }
        for (k, c) in qu.iter().enumerate() {
            u[k] -= c;
        }
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    (r0, u0)
}

/// An element of Q(zeta_m) in canonical form.
#[derive(Clone)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    /// Builds an element from raw coefficients of sum c_j zeta_m^j and
    /// canonicalizes. Indices are folded modulo m first.
    pub fn from_coeffs(m: u32, raw: &[Rat]) -> Self {
        assert!(m >= 1, "cyclotomic order must be positive");
        let mut coeffs = vec![Rat::zero(); m as usize];
        for (j, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                coeffs[j % m as usize] += c;
            }
        }
        let mut out = Cyclo { order: m, coeffs };
        out.normalize();
        out
    }

    pub fn zero_of(m: u32) -> Self {
        Cyclo { order: m, coeffs: vec![Rat::zero(); m as usize] }
    }

    pub fn one_of(m: u32) -> Self {
        Self::from_rat_of(m, Rat::one())
    }

    pub fn from_rat_of(m: u32, r: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); m as usize];
        coeffs[0] = r;
        Cyclo { order: m, coeffs }
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_rat_of(1, r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    /// zeta_m^k.
    pub fn root(m: u32, k: u32) -> Self {
        let mut coeffs = vec![Rat::zero(); m as usize];
        coeffs[(k % m) as usize] = Rat::one();
        let mut out = Cyclo { order: m, coeffs };
        out.normalize();
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reduction modulo Phi_m, in place.
    fn normalize(&mut self) {
        let c = ctx(self.order);
        let dphi = poly_deg(&c.phi).expect("Phi_m nonzero");
        for j in (dphi..self.coeffs.len()).rev() {
            if self.coeffs[j].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut self.coeffs[j], Rat::zero());
            for k in 0..dphi {
                if !c.phi[k].is_zero() {
                    let delta = &lead * &c.phi[k];
                    self.coeffs[j - dphi + k] -= delta;
                }
            }
        }
    }

    /// Canonicalization entry point; idempotent on canonical input.
    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Embeds into Q(zeta_m2) via zeta_m = zeta_m2^{m2/m}.
    pub fn embed(&self, m2: u32) -> Result<Self> {
        if m2 == self.order {
            return Ok(self.clone());
        }
        if m2 % self.order != 0 {
            return Err(Error::OrderIncompatible { a: self.order, b: m2 });
        }
        let step = (m2 / self.order) as usize;
        let mut coeffs = vec![Rat::zero(); m2 as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[j * step] = c.clone();
            }
        }
        let mut out = Cyclo { order: m2, coeffs };
        out.normalize();
        Ok(out)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = (self.order as u64).lcm(&(other.order as u64)) as u32;
        (
            self.embed(l).expect("lcm embedding"),
            other.embed(l).expect("lcm embedding"),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = ctx(self.order);
        let dphi = poly_deg(&c.phi).expect("Phi_m nonzero");
        let trunc: Vec<Rat> = self.coeffs[..dphi.min(self.coeffs.len())].to_vec();
        let (g, u) = poly_half_ext_gcd(&trunc, &c.phi);
        let gd = poly_deg(&g).expect("gcd of nonzero inputs");
        debug_assert_eq!(gd, 0, "Phi_m is irreducible over Q");
        let ginv = Rat::one() / g[0].clone();
        let mut coeffs = vec![Rat::zero(); self.order as usize];
        for (j, cj) in u.iter().enumerate() {
            if !cj.is_zero() {
                coeffs[j % self.order as usize] += cj * &ginv;
            }
        }
        let mut out = Cyclo { order: self.order, coeffs };
        out.normalize();
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo::one_of(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Recovers a in [0, d) with self = zeta_d^a. Requires self^d = 1.
    pub fn root_of_unity_log(&self, d: u32) -> Result<u32> {
        assert!(d >= 1);
        if !self.pow(d as u64).is_one() {
            return Err(Error::NotARootOfUnity { d });
        }
        let l = (self.order as u64).lcm(&(d as u64)) as u32;
        let s = self.embed(l)?;
        let step = l / d;
        for a in 0..d {
            if s == Cyclo::root(l, step * a) {
                return Ok(a);
            }
        }
        Err(Error::Internal(format!(
            "d-th root of unity with no discrete log, d = {d}"
        )))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

// Hashing is only coherent among elements stored at one common order; the
// group layer re-embeds everything at a single order before keying maps.
impl Hash for Cyclo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Cyclo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A deterministic total order used for canonical tie-breaking; it has no
/// arithmetic meaning.
impl Ord for Cyclo {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(m={}, {})", self.order, self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if j == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if j == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{j}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        &self + &rhs
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        &self - &rhs
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(mut self) -> Cyclo {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        &self * &rhs
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = self.aligned(rhs);
        let m = a.order as usize;
        let mut coeffs = vec![Rat::zero(); m];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    let k = (i + j) % m;
                    coeffs[k] += ai * bj;
                }
            }
        }
        let mut out = Cyclo { order: a.order, coeffs };
        out.normalize();
        out
    }
}

impl Div for Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: Cyclo) -> Cyclo {
        let inv = rhs.inverse().expect("division by zero cyclotomic scalar");
        &self * &inv
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::zero_of(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::one_of(1)
    }
    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

impl FieldScalar for Cyclo {
    fn try_inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    #[test]
    fn cyclotomic_polys_match_known_values() {
        // Phi_1 = x - 1, Phi_2 = x + 1, Phi_3 = x^2 + x + 1, Phi_6 = x^2 - x + 1
        assert_eq!(cyclotomic_poly(1), vec![rat_i(-1), rat_i(1)]);
        assert_eq!(cyclotomic_poly(2), vec![rat_i(1), rat_i(1)]);
        assert_eq!(cyclotomic_poly(3), vec![rat_i(1), rat_i(1), rat_i(1)]);
        assert_eq!(cyclotomic_poly(6), vec![rat_i(1), rat_i(-1), rat_i(1)]);
        // deg Phi_12 = phi(12) = 4
        assert_eq!(poly_deg(&cyclotomic_poly(12)), Some(4));
    }

    #[test]
    fn normalize_examples() {
        // zeta_2^2 = 1
        assert_eq!(Cyclo::root(2, 2), Cyclo::one_of(2));
        // 1 + zeta_3 + zeta_3^2 = 0
        let s = &(&Cyclo::one_of(3) + &Cyclo::root(3, 1)) + &Cyclo::root(3, 2);
        assert!(s.is_zero());
        // zeta_6^3 = -1: derived by reducing x^3 mod Phi_6 = x^2 - x + 1.
        let z63 = Cyclo::root(6, 3);
        assert_eq!(z63, Cyclo::from_rat_of(6, rat_i(-1)));
        assert_eq!(z63.as_rat(), Some(rat_i(-1)));
    }

    #[test]
    fn normalize_is_idempotent() {
        let raw = Cyclo::from_coeffs(6, &[rat_i(3), rat_i(0), rat_i(0), rat_i(5), rat_i(1), rat_i(2)]);
        assert_eq!(raw.clone().normalized(), raw);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Cyclo::one_of(4).inverse().unwrap(), Cyclo::one_of(4));
        // zeta_4^{-1} = zeta_4^3
        assert_eq!(Cyclo::root(4, 1).inverse().unwrap(), Cyclo::root(4, 3));
        // (1 + zeta_3)^{-1} = -zeta_3: extended Euclid of 1+x against
        // Phi_3 = x^2+x+1 gives 1 = (x^2+x+1) - x*(x+1), so the inverse is -x.
        let s = &Cyclo::one_of(3) + &Cyclo::root(3, 1);
        let inv = s.inverse().unwrap();
        assert_eq!(inv, -Cyclo::root(3, 1));
        assert!((&s * &inv).is_one());
        assert_eq!(Cyclo::zero_of(5).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn root_of_unity_log_examples() {
        assert_eq!(Cyclo::one_of(5).root_of_unity_log(5).unwrap(), 0);
        assert_eq!(Cyclo::from_rat_of(2, rat_i(-1)).root_of_unity_log(2).unwrap(), 1);
        assert_eq!(Cyclo::root(3, 2).root_of_unity_log(3).unwrap(), 2);
        // s = zeta_3 is not a square root of unity
        assert_eq!(
            Cyclo::root(3, 1).root_of_unity_log(2),
            Err(Error::NotARootOfUnity { d: 2 })
        );
        // roundtrip on [0, d)
        for d in [2u32, 3, 4, 6, 12] {
            for a in 0..d {
                assert_eq!(Cyclo::root(d, a).root_of_unity_log(d).unwrap(), a);
            }
        }
    }

    #[test]
    fn cross_order_equality_and_embedding() {
        // zeta_6^2 = zeta_3
        assert_eq!(Cyclo::root(6, 2), Cyclo::root(3, 1));
        assert_eq!(Cyclo::from_int(1), Cyclo::one_of(12));
        let z = Cyclo::root(3, 1).embed(6).unwrap();
        assert_eq!(z, Cyclo::root(6, 2));
        assert!(Cyclo::root(3, 1).embed(4).is_err());
    }

    #[test]
    fn field_arithmetic_spot_checks() {
        let a = &Cyclo::root(12, 7) + &Cyclo::from_rat_of(12, rat(1, 2));
        let b = &Cyclo::root(12, 5) - &Cyclo::from_rat_of(12, rat_i(3));
        let c = &Cyclo::root(12, 11) + &Cyclo::one_of(12);
        // distributivity
        let lhs = &(&a + &b) * &c;
        let rhs = &(&a * &c) + &(&b * &c);
        assert_eq!(lhs, rhs);
        // inverse roundtrip
        let ainv = a.inverse().unwrap();
        assert!((&a * &ainv).is_one());
    }
}
