//! Dense univariate polynomials over a prime field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::ntt::NttPlan;

/// Below this length (of the shorter operand) products are computed by the
/// quadratic formula.
pub const SCHOOLBOOK_THRESHOLD: usize = 32;

/// Coefficient list, low degree first. The last stored coefficient is
/// nonzero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one(field: &PrimeField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The polynomial `x`.
    pub fn x(field: &PrimeField) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Convenience constructor from signed integers, reduced mod p.
    pub fn from_i64s(field: &PrimeField, coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, other: &Self, field: &PrimeField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| field.add(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self, field: &PrimeField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| field.sub(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn neg(&self, field: &PrimeField) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| field.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement, field: &PrimeField) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// `self mod x^k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs[..k.min(self.coeffs.len())].to_vec())
    }

    /// Quotient by `x^k`, dropping the low part.
    pub fn shift_down(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn mul(&self, other: &Self, field: &PrimeField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(mul_slices(&self.coeffs, &other.coeffs, field))
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: FieldElement, field: &PrimeField) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, &c| field.mul_add(c, acc, x0))
    }

    /// `a(x + x0)`.
    pub fn shift_var(&self, x0: FieldElement, field: &PrimeField) -> Self {
        // Horner over the linear polynomial x + x0
        let mut out: Vec<FieldElement> = Vec::with_capacity(self.coeffs.len());
        for &c in self.coeffs.iter().rev() {
            out.push(FieldElement::ZERO);
            for k in (1..out.len()).rev() {
                out[k] = field.mul_add(out[k - 1], out[k], x0);
            }
            out[0] = field.mul_add(c, out[0], x0);
        }
        Self::from_coeffs(out)
    }

    /// The unique polynomial of degree `< points.len()` through the points.
    pub fn interpolate(points: &[(FieldElement, FieldElement)], field: &PrimeField) -> Result<Self> {
        let n = points.len();
        for i in 0..n {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::DuplicateAbscissa(points[i].0.value()));
                }
            }
        }
        // divided differences, then expand the Newton form
        let mut dd: Vec<FieldElement> = points.iter().map(|p| p.1).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = field.sub(dd[i], dd[i - 1]);
                let den = field.sub(points[i].0, points[i - level].0);
                dd[i] = field.div(num, den)?;
            }
        }
        let mut acc: Vec<FieldElement> = Vec::with_capacity(n);
        for i in (0..n).rev() {
            // acc = acc * (x - x_i) + dd[i]
            let xi = points[i].0;
            acc.push(FieldElement::ZERO);
            for k in (1..acc.len()).rev() {
                acc[k] = field.sub(acc[k - 1], field.mul(acc[k], xi));
            }
            acc[0] = field.sub(dd[i], field.mul(acc[0], xi));
        }
        Ok(Self::from_coeffs(acc))
    }
}

/// Product of two nonempty coefficient slices; result has length
/// `a.len() + b.len() - 1` (possibly with a zero top coefficient when p is tiny).
pub(crate) fn mul_slices(a: &[FieldElement], b: &[FieldElement], field: &PrimeField) -> Vec<FieldElement> {
    let short = a.len().min(b.len());
    if short < SCHOOLBOOK_THRESHOLD {
        return schoolbook(a, b, field);
    }
    let out_len = a.len() + b.len() - 1;
    let ntt_len = out_len.next_power_of_two();
    if field.supports_ntt(ntt_len) {
        ntt_mul(a, b, field, ntt_len)
    } else {
        karatsuba(a, b, field)
    }
}

pub(crate) fn schoolbook(a: &[FieldElement], b: &[FieldElement], field: &PrimeField) -> Vec<FieldElement> {
    let p = field.modulus();
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x.0 * y.0) % p;
        }
    }
    acc.into_iter().map(FieldElement).collect()
}

fn ntt_mul(a: &[FieldElement], b: &[FieldElement], field: &PrimeField, len: usize) -> Vec<FieldElement> {
    let plan = NttPlan::new(field, len);
    let mut fa = a.to_vec();
    fa.resize(len, FieldElement::ZERO);
    let mut fb = b.to_vec();
    fb.resize(len, FieldElement::ZERO);
    plan.forward(&mut fa);
    plan.forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = field.mul(*x, *y);
    }
    plan.inverse(&mut fa);
    fa.truncate(a.len() + b.len() - 1);
    fa
}

fn karatsuba(a: &[FieldElement], b: &[FieldElement], field: &PrimeField) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    if a.len().min(b.len()) < SCHOOLBOOK_THRESHOLD {
        return schoolbook(a, b, field);
    }
    let half = n / 2;
    let split = |s: &[FieldElement]| -> (Vec<FieldElement>, Vec<FieldElement>) {
        if s.len() <= half {
            (s.to_vec(), vec![FieldElement::ZERO])
        } else {
            (s[..half].to_vec(), s[half..].to_vec())
        }
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let z0 = karatsuba(&a0, &b0, field);
    let z2 = karatsuba(&a1, &b1, field);
    let sum = |x: &[FieldElement], y: &[FieldElement]| -> Vec<FieldElement> {
        (0..x.len().max(y.len()))
            .map(|k| {
                field.add(
                    x.get(k).copied().unwrap_or_default(),
                    y.get(k).copied().unwrap_or_default(),
                )
            })
            .collect()
    };
    let mut z1 = karatsuba(&sum(&a0, &a1), &sum(&b0, &b1), field);
    for (k, v) in z0.iter().enumerate() {
        z1[k] = field.sub(z1[k], *v);
    }
    for (k, v) in z2.iter().enumerate() {
        z1[k] = field.sub(z1[k], *v);
    }
    let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    for (k, v) in z0.iter().enumerate() {
        out[k] = field.add(out[k], *v);
    }
    for (k, v) in z1.iter().enumerate() {
        if k + half < out.len() {
            out[k + half] = field.add(out[k + half], *v);
        }
    }
    for (k, v) in z2.iter().enumerate() {
        if k + 2 * half < out.len() {
            out[k + 2 * half] = field.add(out[k + 2 * half], *v);
        }
    }
    out
}

/// Formats as e.g. `3 + x + 5x^2`, residues printed as stored.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.value()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, v) => write!(f, "{v}x^{k}")?,
            }
        }
        Ok(())
    }
}
