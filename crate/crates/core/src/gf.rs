//! Alphabet arithmetic.
//!
//! [`FieldTable`] holds lookup tables for GF(q), q ∈ {2,3,4,5,7,8,9}. Elements
//! are encoded in the polynomial basis: the symbol `v` stands for the
//! polynomial Σ c_i x^i where `v = Σ c_i p^i` (base-p digits, least
//! significant first). The reduction polynomials are fixed:
//!
//! | q | p | e | modulus        |
//! |---|---|---|----------------|
//! | 4 | 2 | 2 | x² + x + 1     |
//! | 8 | 2 | 3 | x³ + x + 1     |
//! | 9 | 3 | 2 | x² + 1         |
//!
//! so that in GF(4) the symbol 2 is `x` and 3 is `x + 1`.
//!
//! [`ModRing`] is integer arithmetic mod q. It is a separate type on purpose:
//! for q = 4, 8, 9 the field sum and the mod-q sum of a word differ.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::Word;

pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Finite field of order q ≤ 9 given by full lookup tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: u8,
    prime: u8,
    degree: u8,
    /// Low-to-high coefficients of the monic reduction polynomial (length degree+1).
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl std::fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn reduction_polynomial(q: u32) -> Vec<u8> {
    match q {
        4 => vec![1, 1, 1],
        8 => vec![1, 1, 0, 1],
        9 => vec![1, 0, 1],
        // prime fields: x (degree 1), never used for reduction
        _ => vec![0, 1],
    }
}

fn digits(v: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    let mut v = v;
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Builds GF(q) for a supported prime power q.
pub fn build_field(q: u32) -> Result<FieldTable> {
    let (p, e) = factor_prime_power(q)
        .ok_or_else(|| Error::Parameter(format!("q = {q} is not a prime power")))?;
    if q > 9 {
        return Err(Error::Parameter(format!(
            "q = {q} exceeds the supported field orders (≤ 9)"
        )));
    }
    let modulus = reduction_polynomial(q);
    let qs = q as usize;
    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    for a in 0..q {
        let da = digits(a, p, e);
        for b in 0..q {
            let db = digits(b, p, e);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = undigits(&sum, p) as u8;

            // schoolbook product, then reduce by the monic modulus
            let mut prod = vec![0u32; (2 * e - 1) as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for deg in (e as usize..prod.len()).rev() {
                let c = prod[deg];
                if c == 0 {
                    continue;
                }
                let shift = deg - e as usize;
                for (k, &m) in modulus.iter().enumerate() {
                    let idx = shift + k;
                    prod[idx] = (prod[idx] + p * p - (c * m as u32) % p) % p;
                }
            }
            mul[(a * q + b) as usize] = undigits(&prod[..e as usize], p) as u8;
        }
    }
    let mut neg = vec![0u8; qs];
    let mut inv = vec![0u8; qs];
    for a in 0..qs {
        neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
        if a != 0 {
            inv[a] = (1..qs)
                .find(|&b| mul[a * qs + b] == 1)
                .expect("nonzero element without inverse") as u8;
        }
    }
    Ok(FieldTable {
        q: q as u8,
        prime: p as u8,
        degree: e as u8,
        modulus,
        add,
        mul,
        neg,
        inv,
    })
}

/// Shared handle, convenient for codes that carry their field.
pub fn shared_field(q: u32) -> Result<Arc<FieldTable>> {
    build_field(q).map(Arc::new)
}

impl FieldTable {
    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn prime(&self) -> u32 {
        self.prime as u32
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn sum(&self, symbols: &[u8]) -> u8 {
        symbols.iter().fold(0, |acc, &s| self.add(acc, s))
    }

    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Integer arithmetic modulo q (any q ≥ 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModRing {
    q: u32,
}

impl ModRing {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::Parameter(format!("modulus {q} < 2")));
        }
        Ok(ModRing { q })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.q) as u8
    }

    pub fn sum(&self, symbols: &[u8]) -> u8 {
        (symbols.iter().map(|&s| s as u64).sum::<u64>() % self.q as u64) as u8
    }
}

/// Integer sum of the word's symbols reduced mod q.
pub fn mod_sum(word: &Word, ring: &ModRing) -> Result<u8> {
    if word.q() != ring.modulus() {
        return Err(Error::Mismatch(format!(
            "word over q = {} summed mod {}",
            word.q(),
            ring.modulus()
        )));
    }
    Ok(ring.sum(&word.symbols()))
}
