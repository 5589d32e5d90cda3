//! Exhaustive decision procedures over H(n, q).
//!
//! Ball counts are accumulated in one pass over the codewords into an array
//! with one counter per vertex, so everything here is bounded by the vertex
//! budget (see [`crate::budget`]).

use crate::bounds::{singleton_check, Singleton};
use crate::error::{Error, Result};
use crate::space::{distance_layers, Code, Space, Word};

/// A vertex together with the number of codewords within distance 1 of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertex: Word,
    pub count: u64,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} covered {} times", self.vertex, self.count)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingVerdict {
    pub holds: bool,
    /// The lowest-ranked vertex covered more than λ times.
    pub witness: Option<Witness>,
    /// The largest ball-cover count over all vertices (the tight λ).
    pub max_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringVerdict {
    pub holds: bool,
    /// The lowest-ranked vertex covered fewer than μ times.
    pub witness: Option<Witness>,
    pub min_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectVerdict {
    pub holds: bool,
    /// |C|·(1 + n(q−1)) = q^n.
    pub size_matches: bool,
    pub packing: PackingVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteRegularity {
    pub holds: bool,
    pub covering_radius: u32,
    /// Row i gives, for a word of C^{(i)}, its neighbour counts in C^{(0..=ρ)}.
    /// Present only when the distance partition is equitable.
    pub quotient: Option<Vec<Vec<u64>>>,
    /// Two words of the same shell with different neighbour profiles.
    pub witness: Option<(Word, Word)>,
}

/// Number of codewords (with multiplicity) within distance 1 of every vertex,
/// indexed by rank.
pub fn ball_counts(code: &Code) -> Result<Vec<u64>> {
    let sp = code.space();
    let total = sp.checked_size()?;
    let mut counts = vec![0u64; total as usize];
    let pv = sp.place_values();
    let q = sp.q() as u64;
    for &(w, m) in code.entries() {
        let r = sp.rank(w);
        counts[r as usize] += m as u64;
        for (j, &p) in pv.iter().enumerate() {
            let s = sp.symbol(w, j as u32) as u64;
            let base = r - s * p;
            for t in 0..q {
                if t != s {
                    counts[(base + t * p) as usize] += m as u64;
                }
            }
        }
    }
    Ok(counts)
}

fn witness_at(sp: Space, rank: usize, count: u64) -> Witness {
    Witness {
        vertex: sp.word(sp.unrank(rank as u64)),
        count,
    }
}

/// Whether every vertex lies within distance 1 of at most λ codewords.
pub fn is_multifold_packing(code: &Code, lambda: u64) -> Result<PackingVerdict> {
    let sp = code.space();
    let counts = ball_counts(code)?;
    let max_count = counts.iter().copied().max().unwrap_or(0);
    let witness = counts
        .iter()
        .position(|&c| c > lambda)
        .map(|r| witness_at(sp, r, counts[r]));
    Ok(PackingVerdict {
        holds: witness.is_none(),
        witness,
        max_count,
    })
}

/// Whether every vertex lies within distance 1 of at least μ codewords.
/// Multiple coverings are sets, so multisets are rejected.
pub fn is_multiple_covering(code: &Code, mu: u64) -> Result<CoveringVerdict> {
    if let Some(&(w, _)) = code.entries().iter().find(|&&(_, m)| m > 1) {
        return Err(Error::NotASet(code.space().word(w).to_string()));
    }
    let sp = code.space();
    let counts = ball_counts(code)?;
    let min_count = counts.iter().copied().min().unwrap_or(0);
    let witness = counts
        .iter()
        .position(|&c| c < mu)
        .map(|r| witness_at(sp, r, counts[r]));
    Ok(CoveringVerdict {
        holds: witness.is_none(),
        witness,
        min_count,
    })
}

/// 1-packing plus the sphere-packing size condition.
pub fn is_one_perfect(code: &Code) -> Result<PerfectVerdict> {
    let sp = code.space();
    let packing = is_multifold_packing(code, 1)?;
    let ball = 1 + sp.n() as u128 * (sp.q() as u128 - 1);
    let size_matches = code.len() as u128 * ball == sp.size();
    Ok(PerfectVerdict {
        holds: packing.holds && size_matches,
        size_matches,
        packing,
    })
}

/// Checks that the distance partition {C^{(0)}, …, C^{(ρ)}} is equitable.
pub fn is_completely_regular(code: &Code) -> Result<CompleteRegularity> {
    if let Some(&(w, _)) = code.entries().iter().find(|&&(_, m)| m > 1) {
        return Err(Error::NotASet(code.space().word(w).to_string()));
    }
    let sp = code.space();
    let layers = distance_layers(code, None)?;
    let rho = layers.len() - 1;
    let mut shell_of = vec![0u8; sp.checked_size()? as usize];
    for (i, layer) in layers.iter().enumerate() {
        for &r in layer {
            shell_of[r as usize] = i as u8;
        }
    }
    let pv = sp.place_values();
    let q = sp.q() as u64;
    let mut quotient = Vec::with_capacity(rho + 1);
    for layer in &layers {
        let mut reference: Option<(u64, Vec<u64>)> = None;
        for &r in layer {
            let mut row = vec![0u64; rho + 1];
            let mut rest = r;
            for j in (0..pv.len()).rev() {
                let s = rest % q;
                rest /= q;
                let base = r - s * pv[j];
                for t in 0..q {
                    if t != s {
                        row[shell_of[(base + t * pv[j]) as usize] as usize] += 1;
                    }
                }
            }
            match &reference {
                None => reference = Some((r, row)),
                Some((r0, row0)) if *row0 != row => {
                    return Ok(CompleteRegularity {
                        holds: false,
                        covering_radius: rho as u32,
                        quotient: None,
                        witness: Some((sp.word(sp.unrank(*r0)), sp.word(sp.unrank(r)))),
                    });
                }
                _ => {}
            }
        }
        quotient.push(reference.map(|(_, row)| row).unwrap_or_default());
    }
    Ok(CompleteRegularity {
        holds: true,
        covering_radius: rho as u32,
        quotient: Some(quotient),
        witness: None,
    })
}

/// M = q^{n−d+1}.
pub fn is_mds(code: &Code) -> Result<bool> {
    let d = code.min_distance()?;
    Ok(singleton_check(code.q() as u64, code.n() as u64, code.len(), d as u64) == Singleton::Mds)
}
