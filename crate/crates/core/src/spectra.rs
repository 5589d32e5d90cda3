//! Distance distributions, Krawtchouk polynomials and the dual transform.
//!
//! Everything here is exact: integers are `BigInt`, distributions are
//! `BigRational`. Equality cases of the A₀/A₁/A₂ inequality have to be
//! decided exactly, so no floating point is used anywhere in this module.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::space::Code;

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// K_k(i) = Σ_j (−1)^j (q−1)^{k−j} C(i, j) C(n−i, k−j).
pub fn krawtchouk(q: u32, n: u32, k: u32, i: u32) -> BigInt {
    let qm1 = BigInt::from(q - 1);
    (0..=k)
        .map(|j| {
            let term = num_traits::pow(qm1.clone(), (k - j) as usize)
                * binomial(i as u64, j as u64)
                * binomial((n - i.min(n)) as u64, (k - j) as u64);
            if j % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// α(i) = (n(q−1) − qi)(n(q−1) − qi + q).
pub fn alpha(q: u32, n: u32, i: u32) -> BigInt {
    let base = BigInt::from(n as i64 * (q as i64 - 1) - q as i64 * i as i64);
    &base * (&base + BigInt::from(q))
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn fmt_row(values: &[BigRational], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            write!(f, "\t")?;
        }
        write!(f, "{}/{}", v.numer(), v.denom())?;
    }
    Ok(())
}

/// The averaged distance distribution (A_0, …, A_n) of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDistribution {
    pub q: u32,
    pub n: u32,
    pub a: Vec<BigRational>,
    /// `A_i(x)` for every distinct codeword `x`, in code order. Empty when the
    /// distribution was given directly rather than computed from a code.
    pub profiles: Vec<Vec<u64>>,
}

impl DistanceDistribution {
    /// A distribution given by its values, for evaluating the bounds on
    /// hypothetical spectra.
    pub fn from_values(q: u32, n: u32, a: Vec<BigRational>) -> Result<Self> {
        if a.len() != n as usize + 1 {
            return Err(Error::Parameter(format!(
                "distribution of length {} for n = {n}",
                a.len()
            )));
        }
        Ok(DistanceDistribution {
            q,
            n,
            a,
            profiles: Vec::new(),
        })
    }

    pub fn from_integers(q: u32, n: u32, a: &[i64]) -> Result<Self> {
        Self::from_values(q, n, a.iter().map(|&v| rat(v)).collect())
    }

    pub fn total(&self) -> BigRational {
        self.a.iter().sum()
    }
}

impl fmt::Display for DistanceDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_row(&self.a, f)
    }
}

/// The dual sequence (B_0, …, B_n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDistribution {
    pub q: u32,
    pub n: u32,
    pub b: Vec<BigRational>,
}

impl DualDistribution {
    pub fn total(&self) -> BigRational {
        self.b.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.b.iter().all(|v| !v.is_negative())
    }
}

impl fmt::Display for DualDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_row(&self.b, f)
    }
}

/// Distance distribution of an explicit (multi)set code, with per-word profiles.
pub fn distance_distribution(code: &Code) -> Result<DistanceDistribution> {
    if code.is_empty() {
        return Err(Error::EmptyCode("distance distribution of an empty code".into()));
    }
    let sp = code.space();
    let n = sp.n() as usize;
    let entries = code.entries();
    let profiles: Vec<Vec<u64>> = entries
        .par_iter()
        .map(|&(x, _)| {
            let mut prof = vec![0u64; n + 1];
            for &(y, my) in entries {
                prof[sp.dist(x, y) as usize] += my as u64;
            }
            prof
        })
        .collect();
    let mut sums = vec![BigInt::zero(); n + 1];
    for (prof, &(_, mx)) in profiles.iter().zip(entries) {
        for (s, &c) in sums.iter_mut().zip(prof) {
            *s += BigInt::from(c) * BigInt::from(mx);
        }
    }
    let size = BigInt::from(code.len());
    let a = sums
        .into_iter()
        .map(|s| BigRational::new(s, size.clone()))
        .collect();
    Ok(DistanceDistribution {
        q: sp.q(),
        n: sp.n(),
        a,
        profiles,
    })
}

/// Number of codewords of each Hamming weight (as exact integers).
pub fn weight_distribution(code: &Code) -> Vec<u64> {
    let sp = code.space();
    let mut w = vec![0u64; sp.n() as usize + 1];
    for &(x, m) in code.entries() {
        w[sp.weight(x) as usize] += m as u64;
    }
    w
}

/// B_k = (1/|C|) Σ_i A_i K_k(i), k = 0..n.
pub fn dual_distribution(dist: &DistanceDistribution, size: u64) -> Result<DualDistribution> {
    if size == 0 {
        return Err(Error::EmptyCode("dual distribution with |C| = 0".into()));
    }
    let (q, n) = (dist.q, dist.n);
    let size_r = rat(size);
    let b: Vec<BigRational> = (0..=n)
        .map(|k| {
            let s: BigRational = dist
                .a
                .iter()
                .enumerate()
                .map(|(i, ai)| ai * rat(krawtchouk(q, n, k, i as u32)))
                .sum();
            s / &size_r
        })
        .collect();
    let dual = DualDistribution { q, n, b };
    // Σ_k K_k(i) = q^n [i = 0]
    debug_assert_eq!(
        dual.total(),
        &dist.a[0] * rat(num_traits::pow(BigInt::from(q), n as usize)) / &size_r
    );
    Ok(dual)
}

/// n(q−1)A₀ + 2(q−1)A₁ + 2A₂.
pub fn lemma_lhs(dist: &DistanceDistribution, q: u32, n: u32) -> BigRational {
    let get = |i: usize| dist.a.get(i).cloned().unwrap_or_else(BigRational::zero);
    rat(n as i64 * (q as i64 - 1)) * get(0)
        + rat(2 * (q as i64 - 1)) * get(1)
        + rat(2) * get(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaStatus {
    /// LHS ≤ (n+1)(q−1)λ − q + 1.
    SatisfiedOdd,
    /// q, n, λ all even and LHS ≤ (n+1)(q−1)λ − q.
    SatisfiedEven,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lhs: BigRational,
    pub rhs_odd: BigInt,
    /// Present only when q, n and λ are all even.
    pub rhs_even: Option<BigInt>,
    pub status: LemmaStatus,
    pub equality: bool,
    /// On equality: whether A₀ = 1 and whether A₁ = λ − 1 actually hold.
    pub forced: Option<(bool, bool)>,
}

/// Evaluates the A₀/A₁/A₂ inequality for a λ-fold 1-packing (q > 2).
pub fn lemma_check(dist: &DistanceDistribution, q: u32, n: u32, lambda: u64) -> Result<LemmaReport> {
    if q <= 2 {
        return Err(Error::OutOfScope(format!(
            "the A0/A1/A2 inequality needs q > 2 (got q = {q})"
        )));
    }
    let lhs = lemma_lhs(dist, q, n);
    let base = BigInt::from(n as i64 + 1) * BigInt::from(q - 1) * BigInt::from(lambda);
    let rhs_odd = &base - BigInt::from(q) + BigInt::one();
    let all_even = q.is_multiple_of(2) && n.is_multiple_of(2) && lambda.is_multiple_of(2);
    let rhs_even = all_even.then(|| &base - BigInt::from(q));
    let bound = rhs_even.clone().unwrap_or_else(|| rhs_odd.clone());
    let bound_r = rat(bound);
    let status = if lhs > bound_r {
        LemmaStatus::Violated
    } else if all_even {
        LemmaStatus::SatisfiedEven
    } else {
        LemmaStatus::SatisfiedOdd
    };
    let equality = lhs == bound_r;
    let forced = equality.then(|| {
        let a0 = dist.a.first().is_some_and(|v| v.is_one());
        let a1 = dist
            .a
            .get(1)
            .is_some_and(|v| *v == rat(lambda as i64 - 1));
        (a0, a1)
    });
    Ok(LemmaReport {
        lhs,
        rhs_odd,
        rhs_even,
        status,
        equality,
        forced,
    })
}
