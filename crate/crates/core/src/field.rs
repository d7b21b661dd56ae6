//! Arithmetic in `Z/pZ` for word-sized primes `p < 2^32`.
//!
//! Elements are plain canonical residues; every operation goes through the
//! [`PrimeField`] context, which is a small `Copy` value carried by the
//! matrix types.

use std::fmt;

use crate::error::{Error, Result};

/// `15 * 2^27 + 1`, supports NTT lengths up to `2^27`.
pub const DEFAULT_PRIME: u64 = 2_013_265_921;

/// A residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field `K = Z/pZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u64,
    two_adicity: u32,
    generator: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::new(DEFAULT_PRIME).expect("default prime is valid")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut q = 3;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus >= 1 << 32 {
            return Err(Error::ModulusTooLarge(modulus));
        }
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        let order = modulus - 1;
        let two_adicity = order.trailing_zeros();
        let factors = prime_factors(order);
        let generator = (1..modulus)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, order / q, modulus) != 1))
            .expect("a primitive root exists modulo a prime");
        Ok(PrimeField {
            modulus,
            two_adicity: if modulus == 2 { 0 } else { two_adicity },
            generator,
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Largest `k` with `2^k | p - 1`.
    #[inline]
    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement(self.generator)
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement(1 % self.modulus)
    }

    /// Reduces an arbitrary integer to its canonical residue.
    #[inline]
    pub fn elem(&self, v: u64) -> FieldElement {
        FieldElement(v % self.modulus)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        let r = v.rem_euclid(self.modulus as i64);
        FieldElement(r as u64)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 + b.0;
        FieldElement(if s >= self.modulus { s - self.modulus } else { s })
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.modulus - b.0
        })
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(if a.0 == 0 { 0 } else { self.modulus - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 * b.0 % self.modulus)
    }

    /// `acc + a * b`.
    #[inline]
    pub fn mul_add(&self, acc: FieldElement, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement((acc.0 + a.0 * b.0) % self.modulus)
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> FieldElement {
        FieldElement(pow_mod(a.0, exp, self.modulus))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let p = self.modulus as i64;
        let (mut r0, mut r1) = (p, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(FieldElement(t0.rem_euclid(p) as u64))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// A primitive root of unity of the given power-of-two order.
    pub fn root_of_unity(&self, order: usize) -> Result<FieldElement> {
        if order == 0 || !order.is_power_of_two() {
            return Err(Error::UnsupportedOrder(order));
        }
        let log = order.trailing_zeros();
        if log > self.two_adicity {
            return Err(Error::UnsupportedOrder(order));
        }
        Ok(self.pow(FieldElement(self.generator), (self.modulus - 1) >> log))
    }

    /// Whether evaluation/interpolation at `len` roots of unity is available.
    pub fn supports_ntt(&self, len: usize) -> bool {
        len.is_power_of_two() && len.trailing_zeros() <= self.two_adicity
    }
}
