//! Words, codes and partitions of the Hamming space H(n, q).
//!
//! # Word layout
//!
//! A word of length n over {0..q−1} is packed into a `u64` with
//! `w = ⌈log₂ q⌉` bits per symbol. Symbol `j` (0-based) occupies bits
//! `w·(n−1−j) .. w·(n−j)`, so the first symbol is the most significant and
//! numeric order of packed words is lexicographic order. Unused high bits are
//! always zero, which makes the packing canonical.
//!
//! Vertex arrays (one slot per vertex of H(n, q)) are indexed by *rank*, the
//! base-q value of the word with the first symbol most significant. For
//! q ∈ {2, 4, 8} rank and packed value coincide.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use rayon::prelude::*;

use crate::budget;
use crate::error::{Error, Result};
use crate::gf::FieldTable;

/// The Hamming space H(n, q) together with its packing layout.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Space {
    q: u8,
    n: u8,
    width: u8,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.n, self.q)
    }
}

fn symbol_width(q: u32) -> u8 {
    (32 - (q - 1).leading_zeros()) as u8
}

impl Space {
    pub fn new(q: u32, n: u32) -> Result<Self> {
        if !(2..=16).contains(&q) {
            return Err(Error::Parameter(format!("alphabet size {q} outside 2..=16")));
        }
        let width = symbol_width(q);
        if n * width as u32 > 64 {
            return Err(Error::Parameter(format!(
                "length {n} does not fit a packed word over q = {q} (max {})",
                64 / width as u32
            )));
        }
        Ok(Space {
            q: q as u8,
            n: n as u8,
            width,
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q as u32
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n as u32
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width as u32
    }

    /// Number of vertices q^n (exact, may exceed `u64` only in theory).
    pub fn size(&self) -> u128 {
        (self.q as u128).pow(self.n as u32)
    }

    /// `q^n` as a `u64`, after checking the vertex budget.
    pub fn checked_size(&self) -> Result<u64> {
        budget::check(self.q(), self.n())
    }

    #[inline]
    fn shift(&self, j: u32) -> u32 {
        self.width as u32 * (self.n as u32 - 1 - j)
    }

    #[inline]
    fn symbol_mask(&self) -> u64 {
        (1u64 << self.width) - 1
    }

    /// Bits at the lowest position of every symbol slot.
    #[inline]
    fn low_mask(&self) -> u64 {
        let mut m = 0u64;
        for j in 0..self.n as u32 {
            m |= 1u64 << (self.width as u32 * j);
        }
        m
    }

    #[inline]
    pub fn symbol(&self, packed: u64, j: u32) -> u8 {
        ((packed >> self.shift(j)) & self.symbol_mask()) as u8
    }

    #[inline]
    pub fn with_symbol(&self, packed: u64, j: u32, s: u8) -> u64 {
        let sh = self.shift(j);
        (packed & !(self.symbol_mask() << sh)) | ((s as u64) << sh)
    }

    pub fn pack(&self, symbols: &[u8]) -> Result<u64> {
        if symbols.len() != self.n as usize {
            return Err(Error::Mismatch(format!(
                "word of length {} in H({},{})",
                symbols.len(),
                self.n,
                self.q
            )));
        }
        let mut v = 0u64;
        for &s in symbols {
            if s >= self.q {
                return Err(Error::Parameter(format!("symbol {s} ≥ q = {}", self.q)));
            }
            v = (v << self.width) | s as u64;
        }
        Ok(v)
    }

    pub fn unpack(&self, packed: u64) -> Vec<u8> {
        (0..self.n as u32).map(|j| self.symbol(packed, j)).collect()
    }

    /// Hamming distance between two packed words of this space.
    #[inline]
    pub fn dist(&self, a: u64, b: u64) -> u32 {
        let d = a ^ b;
        let mut t = d;
        for k in 1..self.width as u32 {
            t |= d >> k;
        }
        (t & self.low_mask()).count_ones()
    }

    #[inline]
    pub fn weight(&self, a: u64) -> u32 {
        self.dist(a, 0)
    }

    pub fn rank(&self, packed: u64) -> u64 {
        if self.q.is_power_of_two() {
            return packed;
        }
        let q = self.q as u64;
        (0..self.n as u32).fold(0u64, |acc, j| acc * q + self.symbol(packed, j) as u64)
    }

    pub fn unrank(&self, rank: u64) -> u64 {
        if self.q.is_power_of_two() {
            return rank;
        }
        let q = self.q as u64;
        let mut r = rank;
        let mut packed = 0u64;
        for j in (0..self.n as u32).rev() {
            packed |= (r % q) << self.shift(j);
            r /= q;
        }
        packed
    }

    /// Place values q^{n−1−j} of the rank, indexed by position j.
    pub fn place_values(&self) -> Vec<u64> {
        let q = self.q as u64;
        let mut pv = vec![1u64; self.n as usize];
        for j in (0..self.n as usize).rev().skip(1) {
            pv[j] = pv[j + 1] * q;
        }
        pv
    }

    /// Calls `f` on every packed word at distance exactly `r` from `center`,
    /// stopping early when `f` returns `false`. Returns `false` iff stopped.
    pub fn for_each_at_distance(
        &self,
        center: u64,
        r: u32,
        f: &mut impl FnMut(u64) -> bool,
    ) -> bool {
        fn rec(
            sp: &Space,
            word: u64,
            center: u64,
            start: u32,
            left: u32,
            f: &mut impl FnMut(u64) -> bool,
        ) -> bool {
            if left == 0 {
                return f(word);
            }
            let n = sp.n as u32;
            for j in start..=n - left {
                let orig = sp.symbol(center, j);
                for s in 0..sp.q {
                    if s == orig {
                        continue;
                    }
                    if !rec(sp, sp.with_symbol(word, j, s), center, j + 1, left - 1, f) {
                        return false;
                    }
                }
            }
            true
        }
        if r > self.n as u32 {
            return true;
        }
        rec(self, center, center, 0, r, f)
    }

    /// The n(q−1) neighbours of a packed word.
    pub fn neighbors(&self, packed: u64) -> impl Iterator<Item = u64> + '_ {
        (0..self.n as u32).flat_map(move |j| {
            let orig = self.symbol(packed, j);
            (0..self.q)
                .filter(move |&s| s != orig)
                .map(move |s| self.with_symbol(packed, j, s))
        })
    }

    /// All words in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        let total = self.size() as u64;
        (0..total).map(move |r| Word {
            space: *self,
            packed: self.unrank(r),
        })
    }

    pub fn word(&self, packed: u64) -> Word {
        Word {
            space: *self,
            packed,
        }
    }

    pub fn zero(&self) -> Word {
        self.word(0)
    }
}

/// A vertex of H(n, q).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    space: Space,
    packed: u64,
}

impl PartialOrd for Space {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Space {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.q, self.n).cmp(&(other.q, other.n))
    }
}

impl Word {
    pub fn from_symbols(q: u32, symbols: &[u8]) -> Result<Self> {
        let space = Space::new(q, symbols.len() as u32)?;
        Ok(Word {
            space,
            packed: space.pack(symbols)?,
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    pub fn n(&self) -> u32 {
        self.space.n()
    }

    pub fn packed(&self) -> u64 {
        self.packed
    }

    pub fn rank(&self) -> u64 {
        self.space.rank(self.packed)
    }

    pub fn symbol(&self, j: u32) -> u8 {
        self.space.symbol(self.packed, j)
    }

    pub fn symbols(&self) -> Vec<u8> {
        self.space.unpack(self.packed)
    }

    pub fn weight(&self) -> u32 {
        self.space.weight(self.packed)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            write!(f, "{}", char::from_digit(s as u32, 16).unwrap().to_ascii_uppercase())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Number of differing coordinates.
pub fn distance(x: &Word, y: &Word) -> Result<u32> {
    if x.space != y.space {
        return Err(Error::Mismatch(format!(
            "distance between words of {:?} and {:?}",
            x.space, y.space
        )));
    }
    Ok(x.space.dist(x.packed, y.packed))
}

/// An explicit code: a sorted multiset of words with multiplicities.
#[derive(Clone)]
pub struct Code {
    space: Space,
    entries: Vec<(u64, u32)>,
    size: u64,
    min_distance: OnceLock<u32>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.entries == other.entries
    }
}

impl Eq for Code {}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code{:?}[{} words", self.space, self.size)?;
        if self.size <= 16 {
            write!(f, ":")?;
            for (w, m) in &self.entries {
                write!(f, " {}", self.space.word(*w))?;
                if *m > 1 {
                    write!(f, "×{m}")?;
                }
            }
        }
        write!(f, "]")
    }
}

impl Code {
    /// Builds a multiset code from packed words (repeats add multiplicity).
    pub fn from_packed(space: Space, mut words: Vec<u64>) -> Self {
        words.par_sort_unstable();
        let mut entries: Vec<(u64, u32)> = Vec::with_capacity(words.len());
        for w in words {
            match entries.last_mut() {
                Some((last, m)) if *last == w => *m += 1,
                _ => entries.push((w, 1)),
            }
        }
        Self::from_entries_sorted(space, entries)
    }

    fn from_entries_sorted(space: Space, entries: Vec<(u64, u32)>) -> Self {
        let size = entries.iter().map(|&(_, m)| m as u64).sum();
        Code {
            space,
            entries,
            size,
            min_distance: OnceLock::new(),
        }
    }

    pub fn from_words(space: Space, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut packed = Vec::new();
        for w in words {
            if w.space != space {
                return Err(Error::Mismatch(format!(
                    "word {w} of {:?} in a code over {:?}",
                    w.space, space
                )));
            }
            packed.push(w.packed);
        }
        Ok(Self::from_packed(space, packed))
    }

    /// Convenience constructor from symbol rows.
    pub fn from_rows<R: AsRef<[u8]>>(q: u32, n: u32, rows: &[R]) -> Result<Self> {
        let space = Space::new(q, n)?;
        let packed = rows
            .iter()
            .map(|r| space.pack(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_packed(space, packed))
    }

    pub fn full_space(space: Space) -> Result<Self> {
        let total = space.checked_size()?;
        let entries = (0..total).map(|r| (space.unrank(r), 1)).collect();
        Ok(Self::from_entries_sorted(space, entries))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    pub fn n(&self) -> u32 {
        self.space.n()
    }

    /// Size M, counting multiplicities.
    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Number of distinct words.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_set(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m == 1)
    }

    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    /// Distinct packed words in increasing order.
    pub fn packed(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|&(w, _)| w)
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.entries.iter().map(move |&(w, _)| self.space.word(w))
    }

    /// Every word repeated according to its multiplicity.
    pub fn words_with_repeats(&self) -> impl Iterator<Item = Word> + '_ {
        self.entries
            .iter()
            .flat_map(move |&(w, m)| std::iter::repeat_n(self.space.word(w), m as usize))
    }

    pub fn multiplicity_packed(&self, w: u64) -> u32 {
        self.entries
            .binary_search_by_key(&w, |&(x, _)| x)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn contains_packed(&self, w: u64) -> bool {
        self.multiplicity_packed(w) > 0
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.space == self.space && self.contains_packed(w.packed)
    }

    /// Bit set over vertex ranks marking the support of the code.
    pub fn indicator(&self) -> Result<Vec<u64>> {
        let total = self.space.checked_size()?;
        let mut bits = vec![0u64; total.div_ceil(64) as usize];
        for w in self.packed() {
            let r = self.space.rank(w);
            bits[(r / 64) as usize] |= 1 << (r % 64);
        }
        Ok(bits)
    }

    /// The minimum distance, cached after the first computation.
    ///
    /// Returns 0 when some word has multiplicity > 1.
    pub fn min_distance(&self) -> Result<u32> {
        if self.size < 2 {
            return Err(Error::UndefinedDistance(self.size));
        }
        if let Some(&d) = self.min_distance.get() {
            return Ok(d);
        }
        let d = if !self.is_set() {
            0
        } else {
            compute_min_distance(self)
        };
        let _ = self.min_distance.set(d);
        Ok(d)
    }

    /// Minimum distance if already computed.
    pub fn cached_min_distance(&self) -> Option<u32> {
        self.min_distance.get().copied()
    }

    /// `(n, M, d)`; `d` is `None` for codes with fewer than two words.
    pub fn parameters(&self) -> (u32, u64, Option<u32>) {
        (self.n(), self.size, self.min_distance().ok())
    }

    /// Whether the (set) code has minimum distance at least `d`.
    pub fn has_min_distance_at_least(&self, d: u32) -> bool {
        if self.size < 2 || d == 0 {
            return true;
        }
        if !self.is_set() {
            return false;
        }
        if let Some(&md) = self.min_distance.get() {
            return md >= d;
        }
        let lookup = Membership::new(self);
        !(1..d).any(|r| {
            self.entries.par_iter().any(|&(w, _)| {
                let mut hit = false;
                self.space.for_each_at_distance(w, r, &mut |x| {
                    hit = lookup.contains(x);
                    !hit
                });
                hit
            })
        })
    }

    /// Complement in the full space (sets only).
    pub fn complement(&self) -> Result<Code> {
        let total = self.space.checked_size()?;
        let ind = self.indicator()?;
        let words = (0..total)
            .filter(|r| ind[(r / 64) as usize] >> (r % 64) & 1 == 0)
            .map(|r| self.space.unrank(r))
            .collect();
        Ok(Code::from_packed(self.space, words))
    }

    /// Multiset union.
    pub fn union(&self, other: &Code) -> Result<Code> {
        if self.space != other.space {
            return Err(Error::Mismatch(format!(
                "union of codes over {:?} and {:?}",
                self.space, other.space
            )));
        }
        let words = self
            .words_with_repeats()
            .chain(other.words_with_repeats())
            .map(|w| w.packed)
            .collect();
        Ok(Code::from_packed(self.space, words))
    }
}

/// Fast support lookup: a bit set over ranks when the space is small,
/// binary search otherwise.
pub(crate) struct Membership<'a> {
    code: &'a Code,
    bits: Option<Vec<u64>>,
}

impl<'a> Membership<'a> {
    pub(crate) fn new(code: &'a Code) -> Self {
        let small = code.space.size() <= (1u128 << 30) && code.space.size() <= budget::vertex_budget() as u128;
        let bits = if small { code.indicator().ok() } else { None };
        Membership { code, bits }
    }

    #[inline]
    pub(crate) fn contains(&self, w: u64) -> bool {
        match &self.bits {
            Some(b) => {
                let r = self.code.space.rank(w);
                b[(r / 64) as usize] >> (r % 64) & 1 == 1
            }
            None => self.code.contains_packed(w),
        }
    }
}

fn sphere_size(n: u32, q: u32, r: u32) -> f64 {
    let mut binom = 1f64;
    for k in 0..r {
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    binom * ((q - 1) as f64).powi(r as i32)
}

fn compute_min_distance(code: &Code) -> u32 {
    let sp = code.space;
    let m = code.entries.len() as f64;
    let pairwise_cost = m * (m - 1.0) / 2.0;
    let lookup = Membership::new(code);
    let mut sphere_cost = 0f64;
    for r in 1..=sp.n() {
        sphere_cost += m * sphere_size(sp.n(), sp.q(), r);
        if sphere_cost > pairwise_cost {
            break;
        }
        let found = code.entries.par_iter().any(|&(w, _)| {
            let mut hit = false;
            sp.for_each_at_distance(w, r, &mut |x| {
                hit = lookup.contains(x);
                !hit
            });
            hit
        });
        if found {
            return r;
        }
    }
    let e = &code.entries;
    (0..e.len())
        .into_par_iter()
        .map(|i| {
            e[i + 1..]
                .iter()
                .map(|&(y, _)| sp.dist(e[i].0, y))
                .min()
                .unwrap_or(u32::MAX)
        })
        .min()
        .unwrap()
}

/// Minimum distance of an explicit code (see [`Code::min_distance`]).
pub fn min_distance(code: &Code) -> Result<u32> {
    code.min_distance()
}

fn check_position(code: &Code, j: u32) -> Result<()> {
    if j == 0 || j > code.n() {
        return Err(Error::Parameter(format!(
            "position {j} outside 1..={}",
            code.n()
        )));
    }
    Ok(())
}

fn delete_coordinate(sp: &Space, target: &Space, w: u64, j0: u32) -> u64 {
    let mut out = 0u64;
    for j in 0..sp.n() {
        if j != j0 {
            out = (out << target.width()) | sp.symbol(w, j) as u64;
        }
    }
    out
}

/// Words with `alpha` at position `j` (1-based), coordinate `j` deleted.
pub fn shorten(code: &Code, j: u32, alpha: u8) -> Result<Code> {
    check_position(code, j)?;
    let sp = code.space;
    let target = Space::new(sp.q(), sp.n() - 1)?;
    let j0 = j - 1;
    let words: Vec<u64> = code
        .words_with_repeats()
        .filter(|w| w.symbol(j0) == alpha)
        .map(|w| delete_coordinate(&sp, &target, w.packed, j0))
        .collect();
    if words.is_empty() {
        return Err(Error::EmptyCode(format!(
            "no codeword has symbol {alpha} at position {j}"
        )));
    }
    let out = Code::from_packed(target, words);
    if let (Some(before), Ok(after)) = (code.cached_min_distance(), out.min_distance()) {
        debug_assert!(after >= before, "shortening decreased the minimum distance");
    }
    Ok(out)
}

/// Deletes coordinate `j` (1-based) from every word, keeping multiplicities.
pub fn puncture(code: &Code, j: u32) -> Result<Code> {
    check_position(code, j)?;
    let sp = code.space;
    let target = Space::new(sp.q(), sp.n() - 1)?;
    let words = code
        .words_with_repeats()
        .map(|w| delete_coordinate(&sp, &target, w.packed, j - 1))
        .collect();
    Ok(Code::from_packed(target, words))
}

/// The code `C D = { x y : x ∈ C, y ∈ D }` (multiset product).
pub fn concatenate(c: &Code, d: &Code) -> Result<Code> {
    concatenate_blocks(std::slice::from_ref(c), std::slice::from_ref(d))
}

/// `⋃_i D_i B_i` as a multiset, of size Σ |D_i|·|B_i|.
pub fn concatenate_blocks(d: &[Code], b: &[Code]) -> Result<Code> {
    if d.len() != b.len() || d.is_empty() {
        return Err(Error::Parameter(format!(
            "block lists of lengths {} and {}",
            d.len(),
            b.len()
        )));
    }
    let (sd, sb) = (d[0].space, b[0].space);
    if d.iter().any(|c| c.space != sd) || b.iter().any(|c| c.space != sb) {
        return Err(Error::Parameter("blocks of mixed lengths or alphabets".into()));
    }
    if sd.q() != sb.q() {
        return Err(Error::Parameter(format!(
            "blocks over q = {} and q = {}",
            sd.q(),
            sb.q()
        )));
    }
    let target = Space::new(sd.q(), sd.n() + sb.n())?;
    let shift = sb.n() * sb.width();
    let mut words = Vec::new();
    for (di, bi) in d.iter().zip(b) {
        for x in di.words_with_repeats() {
            for y in bi.words_with_repeats() {
                words.push((x.packed << shift) | y.packed);
            }
        }
    }
    Ok(Code::from_packed(target, words))
}

/// Breadth-first distance layers from the support of `code`, as vertex ranks.
///
/// Layer `i` holds the ranks of all words at distance exactly `i` from the
/// code; expansion stops after `max_depth` layers or when the space is
/// exhausted.
pub fn distance_layers(code: &Code, max_depth: Option<u32>) -> Result<Vec<Vec<u64>>> {
    let sp = code.space;
    let total = sp.checked_size()?;
    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let mut layer: Vec<u64> = code.packed().map(|w| sp.rank(w)).collect();
    layer.sort_unstable();
    for &r in &layer {
        seen[(r / 64) as usize] |= 1 << (r % 64);
    }
    let pv = sp.place_values();
    let q = sp.q() as u64;
    let mut layers = vec![layer];
    let limit = max_depth.unwrap_or(u32::MAX);
    while (layers.len() as u32) <= limit {
        let mut next = Vec::new();
        for &r in layers.last().unwrap() {
            let mut rest = r;
            for j in (0..sp.n() as usize).rev() {
                let s = rest % q;
                rest /= q;
                let base = r - s * pv[j];
                for t in 0..q {
                    if t == s {
                        continue;
                    }
                    let nb = base + t * pv[j];
                    let (wi, bi) = ((nb / 64) as usize, nb % 64);
                    if seen[wi] >> bi & 1 == 0 {
                        seen[wi] |= 1 << bi;
                        next.push(nb);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        layers.push(next);
    }
    Ok(layers)
}

/// The set C^{(i)} of vertices at distance exactly `i` from the code.
pub fn shell(code: &Code, i: u32) -> Result<Code> {
    if i > code.n() {
        return Err(Error::Parameter(format!("shell index {i} > n = {}", code.n())));
    }
    let sp = code.space;
    let layers = distance_layers(code, Some(i))?;
    let words = layers
        .get(i as usize)
        .map(|l| l.iter().map(|&r| sp.unrank(r)).collect())
        .unwrap_or_default();
    Ok(Code::from_packed(sp, words))
}

/// Covering radius: the index of the last nonempty shell.
pub fn covering_radius(code: &Code) -> Result<u32> {
    Ok(distance_layers(code, None)?.len() as u32 - 1)
}

/// Symbolwise field addition of `t` to every codeword.
pub fn translate(code: &Code, t: &Word, field: &FieldTable) -> Result<Code> {
    let sp = code.space;
    if t.space != sp {
        return Err(Error::Mismatch(format!(
            "translation by a word of {:?} in {:?}",
            t.space, sp
        )));
    }
    if field.order() != sp.q() {
        return Err(Error::Mismatch(format!(
            "GF({}) translation in {:?}",
            field.order(),
            sp
        )));
    }
    let ts = t.symbols();
    let words = code
        .words_with_repeats()
        .map(|w| {
            let s: Vec<u8> = w
                .symbols()
                .iter()
                .zip(&ts)
                .map(|(&a, &b)| field.add(a, b))
                .collect();
            sp.pack(&s).expect("field sum stays in range")
        })
        .collect();
    Ok(Code::from_packed(sp, words))
}

/// A code known only through a membership predicate plus declared facts.
///
/// Used where materialization is out of reach (e.g. 4^17 words). Operations
/// that need enumeration go through [`AnyCode::explicit`] and fail with
/// [`Error::EnumerationRequired`] instead of sampling.
pub type MembershipFn = Arc<dyn Fn(&[u8]) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct OracleCode {
    q: u32,
    n: u32,
    size: BigUint,
    min_distance: Option<u32>,
    membership: MembershipFn,
    construction: Vec<(String, String)>,
}

impl fmt::Debug for OracleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OracleCode(n={}, M={}, d={:?})_{}",
            self.n, self.size, self.min_distance, self.q
        )
    }
}

impl OracleCode {
    pub fn new(
        q: u32,
        n: u32,
        size: BigUint,
        min_distance: Option<u32>,
        membership: MembershipFn,
        construction: Vec<(String, String)>,
    ) -> Self {
        OracleCode {
            q,
            n,
            size,
            min_distance,
            membership,
            construction,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    /// Declared, not computed.
    pub fn declared_min_distance(&self) -> Option<u32> {
        self.min_distance
    }

    pub fn construction(&self) -> &[(String, String)] {
        &self.construction
    }

    /// Membership test; words of the wrong length or alphabet are rejected.
    pub fn contains(&self, symbols: &[u8]) -> bool {
        symbols.len() == self.n as usize
            && symbols.iter().all(|&s| (s as u32) < self.q)
            && (self.membership)(symbols)
    }
}

/// Either view of a code.
#[derive(Clone, Debug)]
pub enum AnyCode {
    Explicit(Code),
    Oracle(OracleCode),
}

impl AnyCode {
    pub fn explicit(&self) -> Result<&Code> {
        match self {
            AnyCode::Explicit(c) => Ok(c),
            AnyCode::Oracle(o) => Err(Error::EnumerationRequired(format!(
                "oracle code of length {} and size {}",
                o.n, o.size
            ))),
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            AnyCode::Explicit(c) => c.q(),
            AnyCode::Oracle(o) => o.q,
        }
    }

    pub fn n(&self) -> u32 {
        match self {
            AnyCode::Explicit(c) => c.n(),
            AnyCode::Oracle(o) => o.n,
        }
    }

    pub fn size(&self) -> BigUint {
        match self {
            AnyCode::Explicit(c) => BigUint::from(c.len()),
            AnyCode::Oracle(o) => o.size.clone(),
        }
    }

    pub fn contains(&self, symbols: &[u8]) -> bool {
        match self {
            AnyCode::Explicit(c) => c
                .space()
                .pack(symbols)
                .map(|w| c.contains_packed(w))
                .unwrap_or(false),
            AnyCode::Oracle(o) => o.contains(symbols),
        }
    }
}

/// What a partition covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    FullSpace(Space),
    /// The union of the classes is a proper subset of the space.
    Code(Code),
}

/// An ordered list of pairwise-disjoint set codes covering an ambient set.
#[derive(Clone, Debug)]
pub struct Partition {
    space: Space,
    ambient: Ambient,
    classes: Vec<Code>,
    labels: Vec<String>,
    index: HashMap<u64, u32>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.ambient == other.ambient
            && self.classes == other.classes
            && self.labels == other.labels
    }
}

impl Partition {
    /// Validates disjointness and coverage. `labels` defaults to decimal indices.
    pub fn new(ambient: Ambient, classes: Vec<Code>, labels: Option<Vec<String>>) -> Result<Self> {
        let space = match &ambient {
            Ambient::FullSpace(s) => *s,
            Ambient::Code(c) => c.space,
        };
        let labels = labels.unwrap_or_else(|| (0..classes.len()).map(|i| i.to_string()).collect());
        if labels.len() != classes.len() {
            return Err(Error::Parameter(format!(
                "{} labels for {} classes",
                labels.len(),
                classes.len()
            )));
        }
        let mut index = HashMap::new();
        for (ci, c) in classes.iter().enumerate() {
            if c.space != space {
                return Err(Error::Mismatch(format!(
                    "class {} over {:?} in a partition of {:?}",
                    labels[ci], c.space, space
                )));
            }
            if !c.is_set() {
                return Err(Error::NotASet(format!("class {}", labels[ci])));
            }
            for w in c.packed() {
                if let Some(prev) = index.insert(w, ci as u32) {
                    return Err(Error::Parameter(format!(
                        "word {} lies in classes {} and {}",
                        space.word(w),
                        labels[prev as usize],
                        labels[ci]
                    )));
                }
            }
        }
        match &ambient {
            Ambient::FullSpace(s) => {
                if index.len() as u128 != s.size() {
                    return Err(Error::Parameter(format!(
                        "classes cover {} of the {} vertices",
                        index.len(),
                        s.size()
                    )));
                }
            }
            Ambient::Code(c) => {
                if !c.is_set() || index.len() as u64 != c.len() {
                    return Err(Error::Parameter(format!(
                        "classes cover {} words of an ambient code of size {}",
                        index.len(),
                        c.len()
                    )));
                }
                if let Some(w) = index.keys().find(|&&w| !c.contains_packed(w)) {
                    return Err(Error::Parameter(format!(
                        "class word {} outside the ambient code",
                        space.word(*w)
                    )));
                }
            }
        }
        Ok(Partition {
            space,
            ambient,
            classes,
            labels,
            index,
        })
    }

    pub fn of_full_space(classes: Vec<Code>) -> Result<Self> {
        let space = classes
            .first()
            .map(|c| c.space)
            .ok_or_else(|| Error::Parameter("partition without classes".into()))?;
        Self::new(Ambient::FullSpace(space), classes, None)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn covers_full_space(&self) -> bool {
        matches!(self.ambient, Ambient::FullSpace(_))
    }

    pub fn classes(&self) -> &[Code] {
        &self.classes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of_packed(&self, w: u64) -> Option<usize> {
        self.index.get(&w).map(|&i| i as usize)
    }

    pub fn class_of(&self, w: &Word) -> Option<usize> {
        if w.space != self.space {
            return None;
        }
        self.class_of_packed(w.packed)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.classes.len() {
            return Err(Error::Parameter("label count mismatch".into()));
        }
        self.labels = labels;
        Ok(self)
    }
}

/// Maps words (given as symbol slices) to class indices of some partition,
/// explicit or implicit.
pub trait Classifier: Send + Sync {
    fn q(&self) -> u32;
    fn n(&self) -> u32;
    fn class_count(&self) -> usize;
    /// `None` when the word lies outside the partitioned set.
    fn class_of_symbols(&self, symbols: &[u8]) -> Option<usize>;
}

impl Classifier for Partition {
    fn q(&self) -> u32 {
        self.space.q()
    }

    fn n(&self) -> u32 {
        self.space.n()
    }

    fn class_count(&self) -> usize {
        self.classes.len()
    }

    fn class_of_symbols(&self, symbols: &[u8]) -> Option<usize> {
        let w = self.space.pack(symbols).ok()?;
        self.class_of_packed(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use proptest::prelude::*;

    fn code(q: u32, rows: &[&[u8]]) -> Code {
        Code::from_rows(q, rows[0].len() as u32, rows).unwrap()
    }

    fn hamming_4_9_3() -> Code {
        // kernel of rows (0,1,1,1), (1,0,1,2) over GF(3)
        let sp = Space::new(3, 4).unwrap();
        let words = sp
            .iter()
            .filter(|w| {
                let s = w.symbols();
                (s[1] + s[2] + s[3]) % 3 == 0 && (s[0] + s[2] + 2 * s[3]) % 3 == 0
            })
            .map(|w| w.packed())
            .collect();
        Code::from_packed(sp, words)
    }

    #[test]
    fn distance_examples() {
        let w = |q, s: &[u8]| Word::from_symbols(q, s).unwrap();
        assert_eq!(distance(&w(3, &[0, 0, 0]), &w(3, &[0, 0, 0])).unwrap(), 0);
        assert_eq!(distance(&w(3, &[0, 1, 2]), &w(3, &[2, 1, 0])).unwrap(), 2);
        assert_eq!(distance(&w(2, &[0, 0, 0, 0]), &w(2, &[1, 1, 1, 0])).unwrap(), 3);
        assert!(matches!(
            distance(&w(3, &[0, 0]), &w(3, &[0, 0, 0])),
            Err(Error::Mismatch(_))
        ));
        assert!(distance(&w(3, &[0, 0]), &w(4, &[0, 0])).is_err());
    }

    #[test]
    fn packing_layout_is_lexicographic() {
        let sp = Space::new(3, 3).unwrap();
        let mut prev = None;
        for (r, w) in sp.iter().enumerate() {
            assert_eq!(w.rank(), r as u64);
            assert_eq!(sp.unrank(w.rank()), w.packed());
            if let Some(p) = prev {
                assert!(w.packed() > p);
            }
            prev = Some(w.packed());
        }
        assert!(Space::new(4, 33).is_err());
        assert!(Space::new(4, 32).is_ok());
    }

    #[test]
    fn min_distance_examples() {
        assert_eq!(code(3, &[&[0, 0, 0], &[2, 2, 1], &[1, 1, 2]]).min_distance().unwrap(), 3);
        assert_eq!(code(2, &[&[0, 0], &[0, 1]]).min_distance().unwrap(), 1);
        assert_eq!(code(2, &[&[0, 0], &[0, 0]]).min_distance().unwrap(), 0);
        assert!(matches!(
            code(2, &[&[0, 0]]).min_distance(),
            Err(Error::UndefinedDistance(1))
        ));
        assert_eq!(hamming_4_9_3().min_distance().unwrap(), 3);
    }

    #[test]
    fn min_distance_strategies_agree_with_pairwise() {
        // forces the pairwise fallback by using a large spread-out code
        let sp = Space::new(3, 8).unwrap();
        let words: Vec<u64> = sp
            .iter()
            .filter(|w| w.symbols().iter().map(|&s| s as u32).sum::<u32>() % 7 == 0)
            .map(|w| w.packed())
            .collect();
        let c = Code::from_packed(sp, words.clone());
        let brute = words
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| words[i + 1..].iter().map(move |&b| sp.dist(a, b)))
            .min()
            .unwrap();
        assert_eq!(c.min_distance().unwrap(), brute);
        assert!(c.has_min_distance_at_least(brute));
        assert!(!c.has_min_distance_at_least(brute + 1));
    }

    #[test]
    fn shorten_examples() {
        let h = hamming_4_9_3();
        let s = shorten(&h, 4, 0).unwrap();
        assert_eq!(s, code(3, &[&[0, 0, 0], &[2, 2, 1], &[1, 1, 2]]));
        let c = code(2, &[&[0, 0], &[1, 1]]);
        assert_eq!(shorten(&c, 2, 0).unwrap(), code(2, &[&[0]]));
        assert!(matches!(shorten(&c, 1, 2), Err(Error::EmptyCode(_))));
        assert!(matches!(shorten(&c, 3, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn puncture_examples() {
        let p = puncture(&hamming_4_9_3(), 4).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(p.min_distance().unwrap(), 2);
        assert_eq!(puncture(&code(2, &[&[0, 1]]), 1).unwrap(), code(2, &[&[1]]));
        let m = puncture(&code(2, &[&[0, 0], &[0, 1]]), 2).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.support_len(), 1);
        assert_eq!(m.entries(), &[(0, 2)]);
    }

    #[test]
    fn concatenate_examples() {
        let d = vec![code(2, &[&[0, 0]]), code(2, &[&[1, 1]])];
        let b = vec![code(2, &[&[0]]), code(2, &[&[1]])];
        assert_eq!(
            concatenate_blocks(&d, &b).unwrap(),
            code(2, &[&[0, 0, 0], &[1, 1, 1]])
        );
        let d = vec![code(2, &[&[0]]), code(2, &[&[0]])];
        assert_eq!(
            concatenate_blocks(&d, &b).unwrap(),
            code(2, &[&[0, 0], &[0, 1]])
        );
        // even-weight complement pairs × singletons of H(2,2)
        let d: Vec<Code> = [[0u8, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]]
            .iter()
            .map(|w| {
                let c: Vec<u8> = w.iter().map(|x| 1 - x).collect();
                Code::from_rows(2, 4, &[w.to_vec(), c]).unwrap()
            })
            .collect();
        let b: Vec<Code> = [[0u8, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|w| Code::from_rows(2, 2, &[w]).unwrap())
            .collect();
        let s = concatenate_blocks(&d, &b).unwrap();
        assert_eq!(s.len(), 8);
        let words: Vec<u64> = s.packed().collect();
        let brute = (0..8)
            .flat_map(|i| (i + 1..8).map(move |j| (i, j)))
            .map(|(i, j)| s.space().dist(words[i], words[j]))
            .min()
            .unwrap();
        assert_eq!(brute, 3);
        assert_eq!(s.min_distance().unwrap(), 3);

        let mixed = vec![code(2, &[&[0]]), code(3, &[&[0]])];
        assert!(concatenate_blocks(&mixed, &b).is_err());
        assert!(concatenate_blocks(&d[..1], &b).is_err());
    }

    #[test]
    fn shell_examples() {
        let z = code(3, &[&[0, 0, 0]]);
        let s1 = shell(&z, 1).unwrap();
        assert_eq!(s1.len(), 6);
        assert!(s1.words().all(|w| w.weight() == 1));

        let c = code(3, &[&[0, 0, 0], &[2, 2, 1], &[1, 1, 2]]);
        // brute force over all 27 vertices
        let sp = c.space();
        let brute: Vec<u64> = sp
            .iter()
            .filter(|x| c.words().map(|y| distance(x, &y).unwrap()).min() == Some(2))
            .map(|w| w.packed())
            .collect();
        let s2 = shell(&c, 2).unwrap();
        assert_eq!(s2.packed().collect::<Vec<_>>(), brute);
        assert_eq!(
            s2,
            code(
                3,
                &[&[0, 1, 1], &[0, 2, 2], &[1, 0, 1], &[1, 2, 0], &[2, 0, 2], &[2, 1, 0]]
            )
        );
        assert!(shell(&c, 3).unwrap().is_empty());
        assert!(shell(&c, 4).is_err());
        assert_eq!(covering_radius(&c).unwrap(), 2);
    }

    #[test]
    fn shells_partition_the_space() {
        let h = hamming_4_9_3();
        let layers = distance_layers(&h, None).unwrap();
        let total: usize = layers.iter().map(|l| l.len()).sum();
        assert_eq!(total, 81);
        let mut all: Vec<u64> = layers.concat();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 81);
        // |C^(1)| = (q−1) n |C| for distance-3 codes
        assert_eq!(layers[1].len(), 2 * 4 * 9);
        let s = shorten(&h, 4, 0).unwrap();
        assert_eq!(shell(&s, 1).unwrap().len(), 2 * 3 * 3);
    }

    #[test]
    fn shell_respects_budget() {
        let sp = Space::new(4, 20).unwrap();
        let c = Code::from_packed(sp, vec![0]);
        assert!(matches!(shell(&c, 1), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn translate_examples() {
        let f3 = build_field(3).unwrap();
        let t = Word::from_symbols(3, &[1, 1, 1]).unwrap();
        assert_eq!(
            translate(&code(3, &[&[0, 0, 0]]), &t, &f3).unwrap(),
            code(3, &[&[1, 1, 1]])
        );
        let c = code(3, &[&[0, 0, 0], &[2, 2, 1], &[1, 1, 2]]);
        let t = Word::from_symbols(3, &[1, 0, 0]).unwrap();
        assert_eq!(translate(&c, &t, &f3).unwrap().min_distance().unwrap(), 3);
        let f4 = build_field(4).unwrap();
        let t = Word::from_symbols(4, &[2, 3]).unwrap();
        assert_eq!(
            translate(&code(4, &[&[0, 0]]), &t, &f4).unwrap(),
            code(4, &[&[2, 3]])
        );
    }

    #[test]
    fn distance_is_a_metric_exhaustively() {
        for q in 2..=4u32 {
            for n in 1..=4u32 {
                if q.pow(n) > 64 && n == 4 && q == 4 {
                    // 256³ triples is still fine but keep the run short
                    continue;
                }
                let sp = Space::new(q, n).unwrap();
                let words: Vec<u64> = sp.iter().map(|w| w.packed()).collect();
                for &a in &words {
                    for &b in &words {
                        let dab = sp.dist(a, b);
                        assert_eq!(dab == 0, a == b);
                        assert_eq!(dab, sp.dist(b, a));
                        for &c in &words {
                            assert!(sp.dist(a, c) <= dab + sp.dist(b, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_validation() {
        let a = code(2, &[&[0]]);
        let b = code(2, &[&[1]]);
        assert!(Partition::of_full_space(vec![a.clone(), b.clone()]).is_ok());
        assert!(Partition::of_full_space(vec![a.clone()]).is_err());
        assert!(Partition::of_full_space(vec![a.clone(), a.clone(), b.clone()]).is_err());
        let p = Partition::new(Ambient::Code(a.clone()), vec![a.clone()], None).unwrap();
        assert_eq!(p.class_of(&Word::from_symbols(2, &[0]).unwrap()), Some(0));
        assert!(Partition::new(Ambient::Code(a), vec![b], None).is_err());
    }

    fn arb_code() -> impl Strategy<Value = Code> {
        (2u32..=5, 1u32..=5).prop_flat_map(|(q, n)| {
            let sp = Space::new(q, n).unwrap();
            let total = sp.size() as u64;
            proptest::collection::vec(0..total, 1..30)
                .prop_map(move |ranks| Code::from_packed(sp, ranks.into_iter().map(|r| sp.unrank(r)).collect()))
        })
    }

    proptest! {
        #[test]
        fn shortening_splits_the_code(c in arb_code(), j in 1u32..=5) {
            let j = (j - 1) % c.n() + 1;
            let total: u64 = (0..c.q() as u8)
                .map(|a| shorten(&c, j, a).map(|s| s.len()).unwrap_or(0))
                .sum();
            prop_assert_eq!(total, c.len());
        }

        #[test]
        fn shells_cover_disjointly(c in arb_code()) {
            let layers = distance_layers(&c, None).unwrap();
            let mut all: Vec<u64> = layers.concat();
            let count = all.len();
            all.sort_unstable();
            all.dedup();
            prop_assert_eq!(all.len(), count);
            prop_assert_eq!(count as u128, c.space().size());
            for (i, layer) in layers.iter().enumerate() {
                for &r in layer.iter().take(5) {
                    let x = c.space().unrank(r);
                    let d = c.packed().map(|y| c.space().dist(x, y)).min().unwrap();
                    prop_assert_eq!(d as usize, i);
                }
            }
        }

        #[test]
        fn ball_count_of_distance_three_codes(c in arb_code()) {
            if c.len() >= 2 && c.has_min_distance_at_least(3) {
                let s1 = shell(&c, 1).unwrap();
                prop_assert_eq!(s1.len(), (c.q() as u64 - 1) * c.n() as u64 * c.len());
            }
        }

        #[test]
        fn translation_is_an_isometry(c in arb_code(), seed in 0u64..1000) {
            if let Ok(f) = build_field(c.q()) {
                let sp = c.space();
                let t = sp.word(sp.unrank(seed % sp.size() as u64));
                let tc = translate(&c, &t, &f).unwrap();
                prop_assert_eq!(tc.len(), c.len());
                if c.len() >= 2 {
                    prop_assert_eq!(tc.min_distance().unwrap(), c.min_distance().unwrap());
                }
            }
        }
    }
}
