//! Exact arithmetic in GF(q^2) for q = p^e.
//!
//! GF(q^2) is built as a single degree-2e extension of GF(p), using the
//! smallest monic irreducible modulus (coefficients read as base-p digits,
//! constant term least significant). GF(q) is not modelled separately: it is
//! the fixed field of the Frobenius map x -> x^q.
//!
//! Elements carry a log encoding relative to a fixed primitive element w:
//! code 0 is zero and code 1 + j is w^j. Multiplication is exponent addition
//! and addition goes through a Zech logarithm table, so every field operation
//! is a couple of table lookups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on q^2.
pub const DEFAULT_MAX_FIELD_SIZE: u64 = 1 << 14;

const NO_LOG: u32 = u32::MAX;

/// An element of GF(q^2) in canonical log encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a raw code without range checking. Use [`FieldTower::elem`] for
    /// untrusted input.
    pub const fn from_code(code: u32) -> Self {
        Elem(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            1 => write!(f, "1"),
            c => write!(f, "w^{}", c - 1),
        }
    }
}

/// Serialized description of a field: characteristic, half extension degree
/// and the modulus of GF(q^2) over GF(p), ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

/// GF(q^2) together with its subfield GF(q).
///
/// Immutable once built; share it behind an `Arc`.
pub struct FieldTower {
    p: u32,
    e: u32,
    q: u32,
    size: u32,
    modulus: Vec<u32>,
    // log -> base-p vector encoding
    exp: Vec<u32>,
    // base-p vector encoding -> log
    log: Vec<u32>,
    // zech[j] = log(1 + w^j), NO_LOG when 1 + w^j = 0
    zech: Vec<u32>,
    neg_one_log: u32,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldTower {}

/// Factors `q` as `p^e`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = u32::try_from(p).map_err(|_| Error::NotPrimePower(q))?;
    Ok((p, e))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn check_size(p: u32, e: u32, bound: u64) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if e == 0 {
        return Err(Error::OutOfRange("extension degree must be at least 1".into()));
    }
    let size = (p as u128).checked_pow(2 * e).unwrap_or(u128::MAX);
    let bound = bound.min(u32::MAX as u64);
    if size > bound as u128 {
        return Err(Error::FieldTooLarge { size, bound });
    }
    Ok(size as u32)
}

impl FieldTower {
    /// Builds GF(q^2) for q = p^e under the default element bound.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        Self::with_bound(p, e, DEFAULT_MAX_FIELD_SIZE)
    }

    pub fn with_bound(p: u32, e: u32, bound: u64) -> Result<Self> {
        check_size(p, e, bound)?;
        let modulus = prime_poly::smallest_irreducible(p, 2 * e as usize);
        Self::build(p, e, modulus)
    }

    /// Builds the field with an explicit modulus, which must be monic of
    /// degree 2e and irreducible over GF(p).
    pub fn with_modulus(p: u32, e: u32, modulus: Vec<u32>, bound: u64) -> Result<Self> {
        check_size(p, e, bound)?;
        let deg = 2 * e as usize;
        if modulus.len() != deg + 1 || modulus[deg] != 1 {
            return Err(Error::InvalidModulus(format!(
                "expected a monic polynomial of degree {deg}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficient not reduced mod {p}")));
        }
        if !prime_poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over GF({p})")));
        }
        Self::build(p, e, modulus)
    }

    /// Builds GF(q^2) from the order q of the base field.
    pub fn for_order(q: u64) -> Result<Self> {
        Self::for_order_with_bound(q, DEFAULT_MAX_FIELD_SIZE)
    }

    pub fn for_order_with_bound(q: u64, bound: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        Self::with_bound(p, e, bound)
    }

    pub fn from_spec(spec: &FieldSpec, bound: u64) -> Result<Self> {
        Self::with_modulus(spec.p, spec.e, spec.modulus.clone(), bound)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p, e: self.e, modulus: self.modulus.clone() }
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        let deg = 2 * e as usize;
        let size = p.pow(deg as u32);
        let order = size - 1;
        let arith = prime_poly::Quotient { p, modulus: &modulus };
        let factors = prime_factors(order);
        let generator = (2..size)
            .find(|&g| factors.iter().all(|&r| arith.pow(g, (order / r) as u64) != 1))
            .ok_or_else(|| Error::InvalidModulus("no primitive element found".into()))?;

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = 1u32;
        for j in 0..order {
            exp[j as usize] = cur;
            log[cur as usize] = j;
            cur = arith.mul(cur, generator);
        }
        if cur != 1 || log.iter().skip(1).any(|&l| l == NO_LOG) {
            return Err(Error::InvalidModulus("generator does not have full order".into()));
        }

        let zech = exp
            .iter()
            .map(|&v| {
                let low = v % p;
                let s = v - low + (low + 1) % p;
                if s == 0 { NO_LOG } else { log[s as usize] }
            })
            .collect();

        let q = p.pow(e);
        let neg_one_log = if p == 2 { 0 } else { order / 2 };
        Ok(FieldTower { p, e, q, size, modulus, exp, log, zech, neg_one_log })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Order of the subfield GF(q).
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of elements of GF(q^2).
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn order(&self) -> u32 {
        self.size - 1
    }

    /// Validates a canonical code.
    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.size {
            Ok(Elem(code))
        } else {
            Err(Error::ElementOutOfRange { code, size: self.size })
        }
    }

    /// The fixed primitive element w.
    pub fn generator(&self) -> Elem {
        Elem(2)
    }

    /// w^j for any integer exponent j.
    pub fn gen_pow(&self, j: i64) -> Elem {
        Elem(1 + j.rem_euclid(self.order() as i64) as u32)
    }

    /// Discrete log to base w; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        a.0.checked_sub(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        let r = n.rem_euclid(self.p as i64) as usize;
        if r == 0 { Elem::ZERO } else { Elem(1 + self.log[r]) }
    }

    /// Base-p vector encoding of `a` (coefficients of its polynomial
    /// representative, constant term least significant).
    pub fn to_vector(&self, a: Elem) -> u32 {
        match a.0 {
            0 => 0,
            c => self.exp[(c - 1) as usize],
        }
    }

    pub fn from_vector(&self, v: u32) -> Result<Elem> {
        match v {
            0 => Ok(Elem::ZERO),
            v if v < self.size => Ok(Elem(1 + self.log[v as usize])),
            v => Err(Error::ElementOutOfRange { code: v, size: self.size }),
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.size).map(Elem)
    }

    /// GF(q) in canonical order: zero, then ascending powers of norm(w).
    pub fn subfield_elements(&self) -> Vec<Elem> {
        let step = self.q + 1;
        std::iter::once(Elem::ZERO)
            .chain((0..self.q - 1).map(|j| Elem(1 + j * step)))
            .collect()
    }

    pub fn is_in_subfield(&self, a: Elem) -> bool {
        a.is_zero() || (a.0 - 1) % (self.q + 1) == 0
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let order = self.order();
        let (la, lb) = (a.0 - 1, b.0 - 1);
        let d = if lb >= la { lb - la } else { lb + order - la };
        match self.zech[d as usize] {
            NO_LOG => Elem::ZERO,
            z => Elem(1 + (la + z) % order),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() {
            return a;
        }
        Elem(1 + (a.0 - 1 + self.neg_one_log) % self.order())
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem(1 + (a.0 - 1 + b.0 - 1) % self.order())
    }

    pub fn checked_inv(&self, a: Elem) -> Option<Elem> {
        let la = self.log(a)?;
        Some(Elem(1 + (self.order() - la) % self.order()))
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    ///
    /// Panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        self.checked_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        match self.log(a) {
            None => Elem::ZERO,
            Some(la) => {
                let order = self.order() as u64;
                Elem(1 + ((la as u64 * (n % order)) % order) as u32)
            }
        }
    }

    /// x -> x^q.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.q as u64)
    }

    /// x -> x^(q+1), which lands in GF(q).
    pub fn norm(&self, a: Elem) -> Elem {
        self.pow(a, self.q as u64 + 1)
    }

    /// Returns v with v^(q+1) = w for nonzero w in GF(q).
    ///
    /// norm(w) generates GF(q)^*, so w = norm(w)^j for a unique j < q - 1 and
    /// the answer is w^j, the solution of smallest discrete log.
    pub fn solve_norm(&self, w: Elem) -> Result<Elem> {
        if w.is_zero() || !self.is_in_subfield(w) {
            return Err(Error::NotInSubfield(w.0));
        }
        Ok(Elem(1 + (w.0 - 1) / (self.q + 1)))
    }

    /// w^((q^2-1)/order), a primitive root of unity of the given order.
    pub fn primitive_root_of_unity(&self, order: u32) -> Result<Elem> {
        if order == 0 || self.order() % order != 0 {
            return Err(Error::OutOfRange(format!(
                "{order} does not divide {}",
                self.order()
            )));
        }
        Ok(self.gen_pow((self.order() / order) as i64))
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// Product of a sequence of elements.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(Elem::ONE, |acc, x| self.mul(acc, x))
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Dense polynomials over a prime field, only as much as the modulus search
/// and table construction need.
mod prime_poly {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut r, mut b, mut e) = (1u64, a as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        trim(&mut out);
        out
    }

    fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let p64 = p as u64;
            let c = r[top] as u64 * lead_inv as u64 % p64;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let idx = top - dm + j;
                    r[idx] = ((r[idx] as u64 + p64 - c * mj as u64 % p64) % p64) as u32;
                }
            }
            trim(&mut r);
        }
        r
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }

    /// Ben-Or test: f of degree n is irreducible iff gcd(x^(p^i) - x, f) = 1
    /// for every i <= n / 2.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = pow_mod(&h, p as u64, f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if gcd(&diff, f, p).len() > 1 {
                return false;
            }
        }
        true
    }

    pub(super) fn smallest_irreducible(p: u32, deg: usize) -> Vec<u32> {
        let count = (p as u64).pow(deg as u32);
        (0..count)
            .map(|idx| {
                let mut coeffs = Vec::with_capacity(deg + 1);
                let mut rest = idx;
                for _ in 0..deg {
                    coeffs.push((rest % p as u64) as u32);
                    rest /= p as u64;
                }
                coeffs.push(1);
                coeffs
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists")
    }

    /// GF(p)[x] / (modulus) on base-p vector encodings.
    pub(super) struct Quotient<'a> {
        pub p: u32,
        pub modulus: &'a [u32],
    }

    impl Quotient<'_> {
        fn digits(&self, mut v: u32) -> Vec<u32> {
            let mut out = Vec::with_capacity(self.modulus.len());
            while v > 0 {
                out.push(v % self.p);
                v /= self.p;
            }
            out
        }

        fn number(&self, d: &[u32]) -> u32 {
            d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
        }

        pub fn mul(&self, a: u32, b: u32) -> u32 {
            let prod = mul(&self.digits(a), &self.digits(b), self.p);
            self.number(&rem(&prod, self.modulus, self.p))
        }

        pub fn pow(&self, a: u32, mut e: u64) -> u32 {
            let mut result = 1;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    result = self.mul(result, b);
                }
                b = self.mul(b, b);
                e >>= 1;
            }
            result
        }
    }

}
