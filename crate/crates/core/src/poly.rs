//! Dense univariate polynomials over GF(q^2).
//!
//! Coefficients are stored ascending and always normalized: no trailing
//! zeros, so the zero polynomial has an empty coefficient vector and
//! `degree()` returns `None` for it.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Elem::ONE)
    }

    pub fn constant(c: Elem) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// c * x^degree
    pub fn monomial(c: Elem, degree: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(Elem::ONE, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(field: &FieldTower, roots: &[Elem]) -> Self {
        roots.iter().fold(Poly::one(), |acc, &r| {
            acc.mul(field, &Poly::from_coeffs(vec![field.neg(r), Elem::ONE]))
        })
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn eval(&self, field: &FieldTower, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &FieldTower, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, field: &FieldTower, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, field: &FieldTower) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn scale(&self, field: &FieldTower, c: Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &FieldTower, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, field: &FieldTower, mut e: u64) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        result
    }

    /// Quotient and remainder.
    ///
    /// # Panics
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, field: &FieldTower, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = field.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[top - dd] = c;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = field.sub(rem[idx], field.mul(c, dj));
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, field: &FieldTower, divisor: &Poly) -> Poly {
        self.div_rem(field, divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, field: &FieldTower, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = field.inv(a.leading());
            a.scale(field, inv)
        }
    }

    /// self^e mod modulus.
    pub fn pow_mod(&self, field: &FieldTower, mut e: u64, modulus: &Poly) -> Poly {
        let mut result = Poly::one().rem(field, modulus);
        let mut base = self.rem(field, modulus);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(field, &base).rem(field, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base).rem(field, modulus);
            }
        }
        result
    }

    /// The polynomial f(x)^q = sum f_i^q x^(iq), so that evaluating it at a
    /// point gives the Frobenius image of f at that point.
    pub fn frobenius(&self, field: &FieldTower) -> Poly {
        let q = field.q() as usize;
        let Some(deg) = self.degree() else {
            return Poly::zero();
        };
        let mut coeffs = vec![Elem::ZERO; deg * q + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * q] = field.frobenius(c);
        }
        Poly::from_coeffs(coeffs)
    }

    /// Ben-Or irreducibility test over GF(q^2).
    pub fn is_irreducible(&self, field: &FieldTower) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        let size = field.size() as u64;
        let x = Poly::x();
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod(field, size, self);
            if h.sub(field, &x).gcd(field, self).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

/// The first monic irreducible polynomial of the given degree, enumerating
/// coefficient tuples in ascending order of their canonical codes with the
/// constant term varying fastest. Being irreducible of degree at least two,
/// it has no root in GF(q^2).
pub fn root_free_monic(field: &FieldTower, degree: usize) -> Result<Poly> {
    if degree < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: degree });
    }
    let size = field.size();
    let mut digits = vec![0u32; degree];
    loop {
        let mut coeffs: Vec<Elem> = digits.iter().map(|&c| Elem::from_code(c)).collect();
        coeffs.push(Elem::ONE);
        let candidate = Poly::from_coeffs(coeffs);
        if candidate.is_irreducible(field) {
            return Ok(candidate);
        }
        // odometer increment, constant term first
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < size {
                break;
            }
            digits[i] = 0;
            i += 1;
            if i == degree {
                unreachable!("irreducible polynomials exist in every degree");
            }
        }
    }
}
