//! Radix-2 number theoretic transform over raw residues.

use crate::field::{FieldElement, PrimeField};

fn bit_reverse(a: &mut [FieldElement]) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
}

/// Precomputed twiddles for one transform length.
#[derive(Debug, Clone)]
pub struct NttPlan {
    len: usize,
    modulus: u64,
    // roots[s] holds the powers of the primitive 2^(s+1)-th root, half length each
    forward: Vec<Vec<u64>>,
    inverse: Vec<Vec<u64>>,
    len_inv: u64,
}

impl NttPlan {
    /// Panics if the field has no root of unity of order `len`.
    pub fn new(field: &PrimeField, len: usize) -> Self {
        assert!(field.supports_ntt(len), "unsupported NTT length {len}");
        let p = field.modulus();
        let mut forward = Vec::new();
        let mut inverse = Vec::new();
        let mut m = 2;
        while m <= len {
            let w = field.root_of_unity(m).unwrap();
            let wi = field.inv(w).unwrap();
            let half = m / 2;
            let mut fw = Vec::with_capacity(half);
            let mut iw = Vec::with_capacity(half);
            let (mut a, mut b) = (1u64, 1u64);
            for _ in 0..half {
                fw.push(a);
                iw.push(b);
                a = a * w.value() % p;
                b = b * wi.value() % p;
            }
            forward.push(fw);
            inverse.push(iw);
            m <<= 1;
        }
        let len_inv = field.inv(field.elem(len as u64)).unwrap().value();
        NttPlan {
            len,
            modulus: p,
            forward,
            inverse,
            len_inv,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn butterflies(&self, a: &mut [FieldElement], twiddles: &[Vec<u64>]) {
        let p = self.modulus;
        bit_reverse(a);
        let mut m = 2;
        for tw in twiddles {
            let half = m / 2;
            for chunk in a.chunks_mut(m) {
                let (lo, hi) = chunk.split_at_mut(half);
                for k in 0..half {
                    let u = lo[k].0;
                    let v = hi[k].0 * tw[k] % p;
                    let s = u + v;
                    lo[k].0 = if s >= p { s - p } else { s };
                    hi[k].0 = if u >= v { u - v } else { u + p - v };
                }
            }
            m <<= 1;
        }
    }

    /// Evaluates at the powers of the primitive `len`-th root, in natural order.
    pub fn forward(&self, a: &mut [FieldElement]) {
        debug_assert_eq!(a.len(), self.len);
        self.butterflies(a, &self.forward);
    }

    pub fn inverse(&self, a: &mut [FieldElement]) {
        debug_assert_eq!(a.len(), self.len);
        self.butterflies(a, &self.inverse);
        for x in a.iter_mut() {
            x.0 = x.0 * self.len_inv % self.modulus;
        }
    }
}
