//! Constructions over GF(q).
//!
//! - [`LinearCode`] and [`hamming_code`]: parity-check matrices, syndromes,
//!   materialization, cosets.
//! - [`coset_multifold_packing`]: unions of shortened Hamming pieces.
//! - [`MdsSumCode`]: the distance-2 codes M_a of words with symbol sum a.
//! - [`DPartition`]: M_0 split into q^{m−1} distance-3 cosets of a linear code.
//! - [`romanov_perfect`], [`concat_s`], [`partition_of_s`]: block
//!   concatenations ⋃ D_i C_i.
//! - [`theorem4_code`]: the recursive 4-ary family, as a membership oracle.
//!
//! Column order of every parity-check matrix is lexicographic with the first
//! coordinate most significant, and class indices are syndromes read in base q
//! with the first check most significant.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::budget;
use crate::catalog;
use crate::error::{Error, Result};
use crate::gf::{shared_field, FieldTable, ModRing};
use crate::space::{
    concatenate_blocks, shorten, translate, Ambient, AnyCode, Classifier, Code, OracleCode,
    Partition, Space, Word,
};
use crate::verify;

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot columns.
fn row_reduce(field: &FieldTable, rows: &mut Vec<Vec<u8>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Digits of `v` in base q, most significant first, padded to `len`.
fn base_q_digits(mut v: u64, q: u32, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (v % q as u64) as u8;
        v /= q as u64;
    }
    out
}

fn add_packed(space: &Space, field: &FieldTable, a: u64, b: u64) -> u64 {
    if field.prime() == 2 {
        return a ^ b;
    }
    let mut out = 0u64;
    for j in 0..space.n() {
        out = space.with_symbol(out, j, field.add(space.symbol(a, j), space.symbol(b, j)));
    }
    out
}

/// Packed words of `offset + span(basis)`.
fn span_packed(field: &FieldTable, space: &Space, offset: &[u8], basis: &[Vec<u8>]) -> Result<Vec<u64>> {
    let q = field.order();
    let mut words = vec![space.pack(offset)?];
    words.reserve((q as usize).pow(basis.len() as u32));
    for g in basis {
        let multiples: Vec<u64> = (1..q as u8)
            .map(|c| {
                let s: Vec<u8> = g.iter().map(|&x| field.mul(c, x)).collect();
                space.pack(&s)
            })
            .collect::<Result<_>>()?;
        let current = words.len();
        for &m in &multiples {
            for i in 0..current {
                let w = add_packed(space, field, words[i], m);
                words.push(w);
            }
        }
    }
    Ok(words)
}

/// A linear code over GF(q) given by a parity-check matrix.
#[derive(Clone)]
pub struct LinearCode {
    field: Arc<FieldTable>,
    n: u32,
    h: Vec<Vec<u8>>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode(n={}, r={}, k={}) over GF({})",
            self.n,
            self.h.len(),
            self.dimension(),
            self.field.order()
        )
    }
}

impl LinearCode {
    pub fn new(field: Arc<FieldTable>, h: Vec<Vec<u8>>) -> Result<Self> {
        let n = h
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::Parameter("parity-check matrix without rows".into()))?;
        if h.iter().any(|r| r.len() != n) {
            return Err(Error::Parameter("ragged parity-check matrix".into()));
        }
        let q = field.order();
        if h.iter().flatten().any(|&x| x as u32 >= q) {
            return Err(Error::Parameter(format!("matrix entry outside GF({q})")));
        }
        Ok(LinearCode {
            field,
            n: n as u32,
            h,
        })
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of rows of H.
    pub fn redundancy(&self) -> usize {
        self.h.len()
    }

    pub fn parity_check(&self) -> &[Vec<u8>] {
        &self.h
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        self.h.iter().map(|r| r[j]).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.h.clone();
        row_reduce(&self.field, &mut rows).len()
    }

    pub fn dimension(&self) -> u32 {
        self.n - self.rank() as u32
    }

    pub fn syndrome(&self, x: &[u8]) -> Vec<u8> {
        self.h.iter().map(|r| self.field.dot(r, x)).collect()
    }

    /// The syndrome read as a base-q number, first check most significant.
    pub fn syndrome_index(&self, x: &[u8]) -> u64 {
        let q = self.q() as u64;
        self.syndrome(x).iter().fold(0, |acc, &s| acc * q + s as u64)
    }

    pub fn contains(&self, x: &[u8]) -> bool {
        x.len() == self.n as usize && self.syndrome(x).iter().all(|&s| s == 0)
    }

    /// Some x with H·x = s, or `None` when s is not in the column space.
    pub fn solve(&self, s: &[u8]) -> Option<Vec<u8>> {
        if s.len() != self.h.len() {
            return None;
        }
        let n = self.n as usize;
        let mut rows: Vec<Vec<u8>> = self
            .h
            .iter()
            .zip(s)
            .map(|(r, &v)| {
                let mut r = r.clone();
                r.push(v);
                r
            })
            .collect();
        let pivots = row_reduce(&self.field, &mut rows);
        if pivots.contains(&n) {
            return None;
        }
        let mut x = vec![0u8; n];
        for (row, &c) in rows.iter().zip(&pivots) {
            x[c] = row[n];
        }
        Some(x)
    }

    /// A basis of the code (kernel of H), one vector per free column.
    pub fn generator(&self) -> Vec<Vec<u8>> {
        let mut rows = self.h.clone();
        let pivots = row_reduce(&self.field, &mut rows);
        let n = self.n as usize;
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut x = vec![0u8; n];
                x[f] = 1;
                for (row, &c) in rows.iter().zip(&pivots) {
                    x[c] = self.field.neg(row[f]);
                }
                x
            })
            .collect()
    }

    pub fn space(&self) -> Result<Space> {
        Space::new(self.q(), self.n)
    }

    /// All q^k codewords.
    pub fn materialize(&self) -> Result<Code> {
        let space = self.space()?;
        let basis = self.generator();
        budget::check(self.q(), basis.len() as u32)?;
        let zero = vec![0u8; self.n as usize];
        Ok(Code::from_packed(space, span_packed(&self.field, &space, &zero, &basis)?))
    }

    /// The coset with the given syndrome, or `None` if no word has it.
    pub fn coset(&self, syndrome: &[u8]) -> Result<Option<Code>> {
        let Some(leader) = self.solve(syndrome) else {
            return Ok(None);
        };
        let space = self.space()?;
        let basis = self.generator();
        budget::check(self.q(), basis.len() as u32)?;
        Ok(Some(Code::from_packed(
            space,
            span_packed(&self.field, &space, &leader, &basis)?,
        )))
    }

    /// The q^r cosets of a full-rank code, ordered by syndrome index.
    pub fn cosets(&self) -> Result<Partition> {
        if self.rank() != self.h.len() {
            return Err(Error::Parameter(
                "parity-check matrix is not of full rank".into(),
            ));
        }
        let space = self.space()?;
        space.checked_size()?;
        let count = (self.q() as usize).pow(self.h.len() as u32);
        let mut buckets = vec![Vec::new(); count];
        for w in space.iter() {
            buckets[self.syndrome_index(&w.symbols()) as usize].push(w.packed());
        }
        let classes = buckets
            .into_iter()
            .map(|b| Code::from_packed(space, b))
            .collect();
        Partition::new(Ambient::FullSpace(space), classes, None)
    }

    /// The row space of H.
    pub fn dual_code(&self) -> Result<Code> {
        let mut rows = self.h.clone();
        row_reduce(&self.field, &mut rows);
        let space = self.space()?;
        budget::check(self.q(), rows.len() as u32)?;
        let zero = vec![0u8; self.n as usize];
        Ok(Code::from_packed(space, span_packed(&self.field, &space, &zero, &rows)?))
    }

    /// True iff no column of H is zero and no two columns are proportional,
    /// which is equivalent to minimum distance ≥ 3.
    pub fn has_distance_three_certificate(&self) -> bool {
        let mut normalized = Vec::with_capacity(self.n as usize);
        for j in 0..self.n as usize {
            let col = self.column(j);
            let Some(&lead) = col.iter().find(|&&x| x != 0) else {
                return false;
            };
            let inv = self.field.inv(lead).expect("nonzero");
            normalized.push(col.iter().map(|&x| self.field.mul(inv, x)).collect::<Vec<u8>>());
        }
        normalized.sort();
        normalized.windows(2).all(|w| w[0] != w[1])
    }

    /// Shortening at position `j` (1-based) with symbol 0: delete column j.
    pub fn shortened_at(&self, j: u32) -> Result<LinearCode> {
        if j == 0 || j > self.n || self.n == 1 {
            return Err(Error::Parameter(format!(
                "cannot shorten a length-{} code at position {j}",
                self.n
            )));
        }
        let h = self
            .h
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != (j - 1) as usize)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        LinearCode::new(self.field.clone(), h)
    }
}

/// Length (q^m − 1)/(q − 1) of a q-ary Hamming code with redundancy m.
pub fn hamming_length(q: u32, m: u32) -> u64 {
    ((q as u64).pow(m) - 1) / (q as u64 - 1)
}

/// The q-ary Hamming code with m checks. Columns are the projective points of
/// PG(m−1, q) with first nonzero coordinate 1, in lexicographic order.
pub fn hamming_code(q: u32, m: u32) -> Result<LinearCode> {
    if m < 2 {
        return Err(Error::Parameter(format!("Hamming code needs m ≥ 2, got {m}")));
    }
    let field = shared_field(q)?;
    let total = (q as u64)
        .checked_pow(m)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::Parameter(format!("q^m = {q}^{m} too large")))?;
    let columns: Vec<Vec<u8>> = (1..total)
        .map(|v| base_q_digits(v, q, m as usize))
        .filter(|c| c.iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    let h = (0..m as usize)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    LinearCode::new(field, h)
}

/// The Hamming code shortened at its last position.
pub fn shortened_hamming(q: u32, m: u32) -> Result<LinearCode> {
    let h = hamming_code(q, m)?;
    h.shortened_at(h.n())
}

/// Partition of H(n, q), n = (q^m−1)/(q−1), into the q^m Hamming cosets.
pub fn hamming_coset_partition(q: u32, m: u32) -> Result<Partition> {
    hamming_code(q, m)?.cosets()
}

/// Partition of H(n−1, q) into the q^m cosets of the shortened Hamming code.
pub fn shortened_coset_partition(q: u32, m: u32) -> Result<Partition> {
    shortened_hamming(q, m)?.cosets()
}

/// Union of the λ pieces of the Hamming code with symbol α = 0..λ−1 at the
/// last position, that position deleted.
pub fn coset_multifold_packing(q: u32, m: u32, lambda: u32) -> Result<Code> {
    if lambda == 0 || lambda > q {
        return Err(Error::Parameter(format!("λ = {lambda} outside 1..={q}")));
    }
    let hamming = hamming_code(q, m)?.materialize()?;
    let n = hamming.n();
    let mut out = shorten(&hamming, n, 0)?;
    for alpha in 1..lambda {
        out = out.union(&shorten(&hamming, n, alpha as u8)?)?;
    }
    Ok(out)
}

/// How the symbols of a word are summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMode {
    ModQ,
    Field,
}

/// The code M_a of words of length n whose symbol sum equals a.
#[derive(Clone, Debug)]
pub struct MdsSumCode {
    q: u32,
    n: u32,
    a: u8,
    mode: SumMode,
    field: Option<Arc<FieldTable>>,
}

impl MdsSumCode {
    pub fn new(q: u32, n: u32, a: u8, mode: SumMode) -> Result<Self> {
        if a as u32 >= q {
            return Err(Error::Parameter(format!("symbol {a} ≥ q = {q}")));
        }
        if n == 0 {
            return Err(Error::Parameter("length 0".into()));
        }
        let field = match mode {
            SumMode::Field => Some(shared_field(q)?),
            SumMode::ModQ => {
                ModRing::new(q)?;
                None
            }
        };
        Ok(MdsSumCode {
            q,
            n,
            a,
            mode,
            field,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    pub fn mode(&self) -> SumMode {
        self.mode
    }

    pub fn sum(&self, symbols: &[u8]) -> u8 {
        match &self.field {
            Some(f) => f.sum(symbols),
            None => ModRing::new(self.q).expect("validated").sum(symbols),
        }
    }

    pub fn contains(&self, symbols: &[u8]) -> bool {
        symbols.len() == self.n as usize
            && symbols.iter().all(|&s| (s as u32) < self.q)
            && self.sum(symbols) == self.a
    }

    /// q^{n−1}.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.q).pow(self.n - 1)
    }

    pub fn materialize(&self) -> Result<Code> {
        let space = Space::new(self.q, self.n)?;
        space.checked_size()?;
        let words = space
            .iter()
            .filter(|w| self.sum(&w.symbols()) == self.a)
            .map(|w| w.packed())
            .collect();
        Ok(Code::from_packed(space, words))
    }
}

/// The partition of M_0 (field-sum-zero words of length n'' = q^{m−1}) into
/// q^{m−1} cosets of the code with check columns (1, h), h ∈ GF(q)^{m−1}.
///
/// Class i holds the words of M_0 whose last m−1 checks read i in base q.
#[derive(Clone)]
pub struct DPartition {
    m: u32,
    check: LinearCode,
    generator: Vec<Vec<u8>>,
    leaders: Vec<Vec<u8>>,
}

impl fmt::Debug for DPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DPartition(q={}, m={})", self.q(), self.m)
    }
}

pub fn mds_partition_d(q: u32, m: u32) -> Result<DPartition> {
    if m < 2 {
        return Err(Error::Parameter(format!("D-partition needs m ≥ 2, got {m}")));
    }
    let field = shared_field(q)?;
    let n = (q as u64)
        .checked_pow(m - 1)
        .filter(|&n| n <= 1 << 16)
        .ok_or_else(|| Error::Parameter(format!("q^(m−1) = {q}^{} too large", m - 1)))?;
    let columns: Vec<Vec<u8>> = (0..n)
        .map(|v| {
            let mut c = vec![1u8];
            c.extend(base_q_digits(v, q, (m - 1) as usize));
            c
        })
        .collect();
    let h = (0..m as usize)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    let check = LinearCode::new(field, h)?;
    let generator = check.generator();
    let leaders = (0..n)
        .map(|i| {
            let mut s = vec![0u8];
            s.extend(base_q_digits(i, q, (m - 1) as usize));
            check.solve(&s).expect("H has full rank")
        })
        .collect();
    Ok(DPartition {
        m,
        check,
        generator,
        leaders,
    })
}

impl DPartition {
    pub fn q(&self) -> u32 {
        self.check.q()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        self.check.field()
    }

    /// Word length n'' = q^{m−1}, also the number of classes.
    pub fn n(&self) -> u32 {
        self.check.n()
    }

    pub fn class_count(&self) -> usize {
        self.leaders.len()
    }

    /// q^{n''−m}.
    pub fn class_size(&self) -> BigUint {
        BigUint::from(self.q()).pow(self.generator.len() as u32)
    }

    /// The m × n'' check matrix.
    pub fn check(&self) -> &LinearCode {
        &self.check
    }

    /// Basis of D_0.
    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    pub fn leader(&self, i: usize) -> &[u8] {
        &self.leaders[i]
    }

    pub fn class_of(&self, u: &[u8]) -> Option<usize> {
        if u.len() != self.n() as usize || u.iter().any(|&s| s as u32 >= self.q()) {
            return None;
        }
        let s = self.check.syndrome(u);
        if s[0] != 0 {
            return None;
        }
        let q = self.q() as usize;
        Some(s[1..].iter().fold(0, |acc, &x| acc * q + x as usize))
    }

    /// Exact check of the column-independence criterion for D_0.
    pub fn distance_three_certificate(&self) -> bool {
        self.check.has_distance_three_certificate()
    }

    /// A uniformly random word of class i.
    pub fn sample<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> Vec<u8> {
        let f = self.field();
        let q = self.q() as u8;
        let mut u = self.leaders[i].clone();
        for g in &self.generator {
            let c = rng.gen_range(0..q);
            if c != 0 {
                for (x, &y) in u.iter_mut().zip(g) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        u
    }

    pub fn class(&self, i: usize) -> Result<Code> {
        if i >= self.class_count() {
            return Err(Error::Parameter(format!("class index {i} out of range")));
        }
        let space = Space::new(self.q(), self.n())?;
        budget::check(self.q(), self.generator.len() as u32)?;
        Ok(Code::from_packed(
            space,
            span_packed(self.field(), &space, &self.leaders[i], &self.generator)?,
        ))
    }

    pub fn classes(&self) -> Result<Vec<Code>> {
        (0..self.class_count()).map(|i| self.class(i)).collect()
    }

    /// The explicit partition, with M_0 as ambient.
    pub fn to_partition(&self) -> Result<Partition> {
        let m0 = MdsSumCode::new(self.q(), self.n(), 0, SumMode::Field)?.materialize()?;
        Partition::new(Ambient::Code(m0), self.classes()?, None)
    }
}

impl Classifier for DPartition {
    fn q(&self) -> u32 {
        DPartition::q(self)
    }

    fn n(&self) -> u32 {
        DPartition::n(self)
    }

    fn class_count(&self) -> usize {
        DPartition::class_count(self)
    }

    fn class_of_symbols(&self, symbols: &[u8]) -> Option<usize> {
        self.class_of(symbols)
    }
}

/// The partition fed into a block concatenation as its suffix part.
#[derive(Clone, Debug)]
pub enum BlockPartition {
    Explicit(Arc<Partition>),
    Implicit(Arc<SPartition>),
}

impl BlockPartition {
    pub fn explicit(&self) -> Option<&Partition> {
        match self {
            BlockPartition::Explicit(p) => Some(p),
            BlockPartition::Implicit(_) => None,
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            BlockPartition::Explicit(p) => p.space().q(),
            BlockPartition::Implicit(s) => s.q(),
        }
    }

    pub fn n(&self) -> u32 {
        match self {
            BlockPartition::Explicit(p) => p.space().n(),
            BlockPartition::Implicit(s) => s.n(),
        }
    }

    pub fn class_count(&self) -> usize {
        match self {
            BlockPartition::Explicit(p) => p.len(),
            BlockPartition::Implicit(s) => s.class_count(),
        }
    }

    pub fn class_of(&self, v: &[u8]) -> Option<usize> {
        match self {
            BlockPartition::Explicit(p) => p.class_of_symbols(v),
            BlockPartition::Implicit(s) => s.class_of(v),
        }
    }

    /// Size of each class (all classes have equal size).
    pub fn class_size(&self) -> BigUint {
        match self {
            BlockPartition::Explicit(p) => BigUint::from(p.classes()[0].len()),
            BlockPartition::Implicit(s) => s.class_size(),
        }
    }

    /// A uniformly random word of class j.
    pub fn sample<R: Rng + ?Sized>(&self, j: usize, rng: &mut R) -> Vec<u8> {
        match self {
            BlockPartition::Explicit(p) => {
                let c = &p.classes()[j];
                let k = rng.gen_range(0..c.support_len());
                c.space().unpack(c.entries()[k].0)
            }
            BlockPartition::Implicit(s) => s.class(j).sample(rng),
        }
    }
}

/// Length (q^{m−1} − 1)/(q − 1) − 1 expected of the suffix partition.
fn suffix_length(q: u32, m: u32) -> u64 {
    hamming_length(q, m - 1) - 1
}

fn check_blocks(b: &BlockPartition, d: &DPartition, suffix_len: u64) -> Result<()> {
    if b.q() != d.q() {
        return Err(Error::Parameter(format!(
            "suffix partition over q = {} with a D-partition over q = {}",
            b.q(),
            d.q()
        )));
    }
    if b.class_count() != d.class_count() {
        return Err(Error::Parameter(format!(
            "{} suffix classes for {} D-classes",
            b.class_count(),
            d.class_count()
        )));
    }
    if b.n() as u64 != suffix_len {
        return Err(Error::Parameter(format!(
            "suffix partition of length {}, expected {suffix_len}",
            b.n()
        )));
    }
    if let Some(p) = b.explicit() {
        if !p.covers_full_space() {
            return Err(Error::Parameter(
                "suffix partition does not cover the full space".into(),
            ));
        }
        let size = (p.space().size() / p.len() as u128) as u64;
        if let Some(c) = p.classes().iter().find(|c| c.len() != size) {
            return Err(Error::Parameter(format!(
                "suffix class of size {}, expected {size}",
                c.len()
            )));
        }
    }
    Ok(())
}

/// ⋃ D_i C_i for a partition of H(n', q) into 1-perfect codes.
pub fn romanov_perfect(c: &Partition, d: &DPartition) -> Result<Code> {
    let q = d.q();
    let n_prime = hamming_length(q, d.m() - 1);
    check_blocks(
        &BlockPartition::Explicit(Arc::new(c.clone())),
        d,
        n_prime,
    )?;
    let expected = (q as u64).pow(n_prime as u32 - (d.m() - 1));
    if c.classes().iter().any(|x| x.len() != expected) {
        return Err(Error::Parameter(format!(
            "perfect classes must have {expected} words"
        )));
    }
    budget::check(q, d.n() + n_prime as u32)?;
    concatenate_blocks(&d.classes()?, c.classes())
}

/// Class (shift, add) of the concatenation family:
/// { (u + a·e₁) v : u ∈ D_{(j+s) mod n''}, v ∈ B_j }. Class (0, 0) is S.
#[derive(Clone, Debug)]
pub struct ConcatCode {
    d: Arc<DPartition>,
    b: BlockPartition,
    shift: usize,
    add: u8,
}

impl ConcatCode {
    pub fn q(&self) -> u32 {
        self.d.q()
    }

    pub fn n(&self) -> u32 {
        self.d.n() + self.b.n()
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn add(&self) -> u8 {
        self.add
    }

    pub fn d_partition(&self) -> &Arc<DPartition> {
        &self.d
    }

    pub fn b_partition(&self) -> &BlockPartition {
        &self.b
    }

    /// |D_i| · Σ_j |B_j| = q^{n−m}.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.q()).pow(self.n() - self.d.m())
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        let nd = self.d.n() as usize;
        if w.len() != self.n() as usize {
            return false;
        }
        let (u, v) = w.split_at(nd);
        let mut u = u.to_vec();
        u[0] = self.d.field().sub(u[0], self.add);
        match (self.d.class_of(&u), self.b.class_of(v)) {
            (Some(i), Some(j)) => i == (j + self.shift) % nd,
            _ => false,
        }
    }

    /// A uniformly random codeword.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u8> {
        let nd = self.d.n() as usize;
        let j = rng.gen_range(0..nd);
        let mut u = self.d.sample((j + self.shift) % nd, rng);
        u[0] = self.d.field().add(u[0], self.add);
        u.extend(self.b.sample(j, rng));
        u
    }

    pub fn materialize(&self) -> Result<Code> {
        let b = self.b.explicit().ok_or_else(|| {
            Error::EnumerationRequired(format!("suffix partition of length {} is implicit", self.b.n()))
        })?;
        budget::check(self.q(), self.n())?;
        let nd = self.d.n() as usize;
        let dspace = Space::new(self.q(), self.d.n())?;
        let mut e1 = vec![0u8; nd];
        e1[0] = self.add;
        let t = Word::from_symbols(self.q(), &e1)?;
        let blocks = (0..nd)
            .map(|j| translate(&self.d.class((j + self.shift) % nd)?, &t, self.d.field()))
            .collect::<Result<Vec<_>>>()?;
        debug_assert!(blocks.iter().all(|c| c.space() == dspace));
        concatenate_blocks(&blocks, b.classes())
    }

    pub fn oracle(&self, construction: Vec<(String, String)>) -> OracleCode {
        let me = self.clone();
        OracleCode::new(
            self.q(),
            self.n(),
            self.size(),
            Some(3),
            Arc::new(move |w: &[u8]| me.contains(w)),
            construction,
        )
    }

    fn description(&self) -> Vec<(String, String)> {
        vec![
            ("construction".into(), "concatenation".into()),
            ("q".into(), self.q().to_string()),
            ("m".into(), self.d.m().to_string()),
            ("n".into(), self.n().to_string()),
            ("shift".into(), self.shift.to_string()),
            ("add".into(), self.add.to_string()),
            ("sum_mode".into(), "field".into()),
        ]
    }

    /// Explicit when q^n fits the budget and the suffix partition is explicit.
    pub fn to_code(&self) -> Result<AnyCode> {
        let fits = budget::check(self.q(), self.n()).is_ok() && self.b.explicit().is_some();
        if fits {
            Ok(AnyCode::Explicit(self.materialize()?))
        } else {
            Ok(AnyCode::Oracle(self.oracle(self.description())))
        }
    }
}

/// S = ⋃ D_i B_i.
pub fn concat_s(b: BlockPartition, d: Arc<DPartition>) -> Result<ConcatCode> {
    check_blocks(&b, &d, suffix_length(d.q(), d.m()))?;
    Ok(ConcatCode {
        d,
        b,
        shift: 0,
        add: 0,
    })
}

/// The q^m codes obtained from S by cyclic index shifts and first-symbol
/// additions. Class index is `add · n'' + shift`.
#[derive(Clone, Debug)]
pub struct SPartition {
    d: Arc<DPartition>,
    b: BlockPartition,
}

pub fn partition_of_s(b: BlockPartition, d: Arc<DPartition>) -> Result<SPartition> {
    check_blocks(&b, &d, suffix_length(d.q(), d.m()))?;
    Ok(SPartition { d, b })
}

impl SPartition {
    pub fn q(&self) -> u32 {
        self.d.q()
    }

    pub fn n(&self) -> u32 {
        self.d.n() + self.b.n()
    }

    pub fn class_count(&self) -> usize {
        self.d.class_count() * self.q() as usize
    }

    pub fn class_size(&self) -> BigUint {
        BigUint::from(self.q()).pow(self.n() - self.d.m())
    }

    pub fn index(&self, shift: usize, add: u8) -> usize {
        add as usize * self.d.class_count() + shift
    }

    pub fn class(&self, index: usize) -> ConcatCode {
        let nd = self.d.class_count();
        ConcatCode {
            d: self.d.clone(),
            b: self.b.clone(),
            shift: index % nd,
            add: (index / nd) as u8,
        }
    }

    pub fn class_of(&self, w: &[u8]) -> Option<usize> {
        let nd = self.d.n() as usize;
        if w.len() != self.n() as usize {
            return None;
        }
        let (u, v) = w.split_at(nd);
        let f = self.d.field();
        let a = f.sum(u);
        let mut u = u.to_vec();
        u[0] = f.sub(u[0], a);
        let i = self.d.class_of(&u)?;
        let j = self.b.class_of(v)?;
        Some(self.index((i + nd - j) % nd, a))
    }

    pub fn to_partition(&self) -> Result<Partition> {
        let classes = (0..self.class_count())
            .map(|k| self.class(k).materialize())
            .collect::<Result<Vec<_>>>()?;
        Partition::of_full_space(classes)
    }
}

impl Classifier for SPartition {
    fn q(&self) -> u32 {
        SPartition::q(self)
    }

    fn n(&self) -> u32 {
        SPartition::n(self)
    }

    fn class_count(&self) -> usize {
        SPartition::class_count(self)
    }

    fn class_of_symbols(&self, symbols: &[u8]) -> Option<usize> {
        self.class_of(symbols)
    }
}

/// Structural facts behind a recursive 4-ary code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem4Certificate {
    /// (m, column independence of the level-m check matrix), per level.
    pub d_certificates: Vec<(u32, bool)>,
    /// Every class of the base H(4,4) partition is a (4,16,3)₄ MDS code.
    pub base_classes_mds: bool,
}

impl Theorem4Certificate {
    pub fn holds(&self) -> bool {
        self.base_classes_mds && self.d_certificates.iter().all(|&(_, ok)| ok)
    }
}

/// The 4-ary code of length (4^m − 4)/3 built on the embedded H(4,4)
/// partition, recursively for m > 3.
#[derive(Clone, Debug)]
pub struct Theorem4 {
    m: u32,
    base: Arc<Partition>,
    levels: Vec<Arc<DPartition>>,
    code: ConcatCode,
}

pub fn theorem4_code(m: u32) -> Result<Theorem4> {
    if m < 3 {
        return Err(Error::Parameter(format!("recursive family needs m ≥ 3, got {m}")));
    }
    let base = Arc::new(catalog::load_embedded_partition());
    let mut b = BlockPartition::Explicit(base.clone());
    let mut levels = Vec::new();
    for level in 3..m {
        let d = Arc::new(mds_partition_d(4, level)?);
        levels.push(d.clone());
        b = BlockPartition::Implicit(Arc::new(partition_of_s(b, d)?));
    }
    let d = Arc::new(mds_partition_d(4, m)?);
    levels.push(d.clone());
    let code = concat_s(b, d)?;
    Ok(Theorem4 {
        m,
        base,
        levels,
        code,
    })
}

impl Theorem4 {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.code.n()
    }

    pub fn size(&self) -> BigUint {
        self.code.size()
    }

    pub fn code(&self) -> &ConcatCode {
        &self.code
    }

    pub fn base_partition(&self) -> &Arc<Partition> {
        &self.base
    }

    pub fn d_partitions(&self) -> &[Arc<DPartition>] {
        &self.levels
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.code.contains(w)
    }

    pub fn certificate(&self) -> Result<Theorem4Certificate> {
        let mut base_classes_mds = self.base.len() == 16;
        for c in self.base.classes() {
            base_classes_mds &= verify::is_mds(c)? && c.len() == 16 && c.min_distance()? == 3;
        }
        Ok(Theorem4Certificate {
            d_certificates: self
                .levels
                .iter()
                .map(|d| (d.m(), d.distance_three_certificate()))
                .collect(),
            base_classes_mds,
        })
    }

    pub fn oracle(&self) -> OracleCode {
        let mut desc = vec![
            ("construction".to_string(), "recursive 4-ary concatenation".to_string()),
            ("q".into(), "4".into()),
            ("m".into(), self.m.to_string()),
            ("n".into(), self.n().to_string()),
            ("base_partition".into(), "h44-partition".into()),
            ("sum_mode".into(), "field".into()),
        ];
        desc.push(("size".into(), format!("4^{}", self.n() - self.m)));
        self.code.oracle(desc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::packing_upper_bound;
    use crate::space::min_distance;
    use crate::verify::{is_multifold_packing, is_one_perfect};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rows(c: &Code) -> Vec<Vec<u8>> {
        c.words().map(|w| w.symbols()).collect()
    }

    #[test]
    fn hamming_columns_are_lexicographic() {
        let h = hamming_code(3, 2).unwrap();
        let cols: Vec<Vec<u8>> = (0..4).map(|j| h.column(j)).collect();
        assert_eq!(cols, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(h.parity_check(), &[vec![0, 1, 1, 1], vec![1, 0, 1, 2]]);
        assert!(matches!(hamming_code(6, 2), Err(Error::Parameter(_))));
    }

    #[test]
    fn hamming_codes_are_perfect() {
        for (q, m, n, size) in [(3, 2, 4, 9u64), (2, 3, 7, 16), (3, 3, 13, 59049)] {
            let c = hamming_code(q, m).unwrap().materialize().unwrap();
            assert_eq!((c.n(), c.len()), (n, size));
            assert_eq!(c.min_distance().unwrap(), 3);
            assert!(is_one_perfect(&c).unwrap().holds);
        }
    }

    #[test]
    fn distance_three_certificate_matches_enumeration() {
        // every 2 × 4 matrix over GF(3) with full rank, and all 3 × 5 over GF(2)
        for (q, r, n) in [(3u32, 2usize, 4usize), (2, 3, 5)] {
            let field = shared_field(q).unwrap();
            let entries = r * n;
            for v in 0..(q as u64).pow(entries as u32) {
                let d = base_q_digits(v, q, entries);
                let h: Vec<Vec<u8>> = d.chunks(n).map(|c| c.to_vec()).collect();
                let lc = LinearCode::new(field.clone(), h).unwrap();
                let code = lc.materialize().unwrap();
                let d3 = code.len() < 2 || code.min_distance().unwrap() >= 3;
                assert_eq!(lc.has_distance_three_certificate(), d3, "{:?}", lc.parity_check());
            }
        }
    }

    #[test]
    fn cosets_and_solve() {
        let h = hamming_code(3, 2).unwrap();
        let p = h.cosets().unwrap();
        assert_eq!(p.len(), 9);
        for (i, c) in p.classes().iter().enumerate() {
            assert_eq!(c.len(), 9);
            let s = base_q_digits(i as u64, 3, 2);
            assert_eq!(h.coset(&s).unwrap().unwrap(), *c);
            for w in c.words() {
                assert_eq!(h.syndrome_index(&w.symbols()), i as u64);
            }
        }
    }

    #[test]
    fn dual_of_shortened_ternary_hamming() {
        let s = shortened_hamming(3, 2).unwrap();
        let dual = s.dual_code().unwrap();
        assert_eq!(dual.len(), 9);
        assert_eq!(crate::spectra::weight_distribution(&dual), vec![1, 0, 6, 2]);
    }

    #[test]
    fn coset_packing_examples() {
        let c2 = coset_multifold_packing(3, 2, 2).unwrap();
        let expected = Code::from_rows(
            3,
            3,
            &[[0, 0, 0], [2, 2, 1], [1, 1, 2], [1, 2, 0], [0, 1, 1], [2, 0, 2]],
        )
        .unwrap();
        assert_eq!(c2, expected);
        assert_eq!(c2.min_distance().unwrap(), 2);
        assert!(is_multifold_packing(&c2, 2).unwrap().holds);

        let c3 = coset_multifold_packing(3, 2, 3).unwrap();
        let h = hamming_code(3, 2).unwrap().materialize().unwrap();
        assert_eq!(c3, crate::space::puncture(&h, 4).unwrap());
        assert_eq!(c3.len(), 9);

        let c1 = coset_multifold_packing(3, 3, 1).unwrap();
        assert_eq!(c1.parameters(), (12, 19683, Some(3)));
        let b = packing_upper_bound(3, 12, 1);
        assert_eq!(b.integer_bound().unwrap(), 19683u32.into());
        assert!(matches!(coset_multifold_packing(3, 2, 4), Err(Error::Parameter(_))));
        assert!(matches!(coset_multifold_packing(3, 2, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn dist2_equality_for_coset_packings() {
        use crate::bounds::packing_upper_bound_dist2;
        for lambda in 1..=3u32 {
            let c = coset_multifold_packing(3, 2, lambda).unwrap();
            let b = packing_upper_bound_dist2(3, 3, lambda as u64);
            assert_eq!(b.integer_bound().unwrap(), BigUint::from(c.len()).into());
            assert!(is_multifold_packing(&c, lambda as u64).unwrap().holds);
        }
    }

    #[test]
    fn sum_codes() {
        let m = MdsSumCode::new(4, 3, 0, SumMode::Field).unwrap();
        let c = m.materialize().unwrap();
        assert_eq!(c.len(), 16);
        assert_eq!(c.min_distance().unwrap(), 2);
        assert!(m.contains(&[1, 1, 0]));
        let r = MdsSumCode::new(4, 3, 0, SumMode::ModQ).unwrap();
        assert!(!r.contains(&[1, 1, 0]));
        assert_eq!(r.materialize().unwrap().len(), 16);
        for q in [3u32, 5] {
            for a in 0..q as u8 {
                let f = MdsSumCode::new(q, 3, a, SumMode::Field).unwrap().materialize().unwrap();
                let r = MdsSumCode::new(q, 3, a, SumMode::ModQ).unwrap().materialize().unwrap();
                assert_eq!(f, r);
                assert_eq!(f.len() as u32, q * q);
            }
        }
    }

    #[test]
    fn binary_d_partition() {
        let d = mds_partition_d(2, 3).unwrap();
        let p = d.to_partition().unwrap();
        let got: Vec<Vec<Vec<u8>>> = p.classes().iter().map(rows).collect();
        assert_eq!(
            got,
            vec![
                vec![vec![0, 0, 0, 0], vec![1, 1, 1, 1]],
                vec![vec![0, 0, 1, 1], vec![1, 1, 0, 0]],
                vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]],
                vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]],
            ]
        );
    }

    #[test]
    fn ternary_d_partition() {
        let d = mds_partition_d(3, 3).unwrap();
        assert!(d.distance_three_certificate());
        let p = d.to_partition().unwrap();
        assert_eq!(p.len(), 9);
        for c in p.classes() {
            assert_eq!(c.len(), 729);
            assert_eq!(c.min_distance().unwrap(), 3);
        }
    }

    fn min_cross_distance(a: &Code, b: &Code) -> u32 {
        let sp = a.space();
        a.packed()
            .flat_map(|x| b.packed().map(move |y| sp.dist(x, y)))
            .min()
            .unwrap()
    }

    #[test]
    fn d_blocks_are_at_distance_two() {
        for (q, m) in [(2u32, 3u32), (3, 2), (3, 3)] {
            let d = mds_partition_d(q, m).unwrap();
            let classes = d.classes().unwrap();
            for i in 0..classes.len() {
                for k in i + 1..classes.len() {
                    assert_eq!(min_cross_distance(&classes[i], &classes[k]), 2);
                }
            }
        }
    }

    #[test]
    fn transversal_property() {
        for (q, m) in [(2u32, 3u32), (3, 2), (3, 3)] {
            let d = mds_partition_d(q, m).unwrap();
            let space = Space::new(q, d.n()).unwrap();
            for w in space.iter() {
                if d.class_of(&w.symbols()).is_some() {
                    continue;
                }
                let mut hits = vec![0u32; d.class_count()];
                for nb in space.neighbors(w.packed()) {
                    if let Some(i) = d.class_of(&space.unpack(nb)) {
                        hits[i] += 1;
                    }
                }
                assert!(hits.iter().all(|&h| h == 1), "{w}: {hits:?}");
            }
        }
    }

    #[test]
    fn quaternary_d_partition_sampled() {
        let d = mds_partition_d(4, 3).unwrap();
        assert!(d.distance_three_certificate());
        assert_eq!(d.class_size(), BigUint::from(4u32).pow(13));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let i = rng.gen_range(0..16);
            let x = d.sample(i, &mut rng);
            let y = d.sample(i, &mut rng);
            assert_eq!(d.class_of(&x), Some(i));
            let dist = x.iter().zip(&y).filter(|(a, b)| a != b).count();
            assert!(x == y || dist >= 3);
        }
    }

    #[test]
    fn romanov_examples() {
        let singletons = Partition::of_full_space(
            (0..3u8)
                .map(|s| Code::from_rows(3, 1, &[[s]]).unwrap())
                .collect(),
        )
        .unwrap();
        let d = mds_partition_d(3, 2).unwrap();
        let p = romanov_perfect(&singletons, &d).unwrap();
        assert_eq!(p.parameters(), (4, 9, Some(3)));
        assert!(is_one_perfect(&p).unwrap().holds);

        let c = hamming_coset_partition(3, 2).unwrap();
        let d = mds_partition_d(3, 3).unwrap();
        let p = romanov_perfect(&c, &d).unwrap();
        assert_eq!((p.n(), p.len()), (13, 59049));
        assert!(is_one_perfect(&p).unwrap().holds);

        let short = Partition::of_full_space(c.classes()[..3].to_vec());
        assert!(short.is_err());
        let wrong = mds_partition_d(3, 2).unwrap();
        assert!(matches!(romanov_perfect(&c, &wrong), Err(Error::Parameter(_))));
    }

    #[test]
    fn binary_concatenation() {
        let b = BlockPartition::Explicit(Arc::new(shortened_coset_partition(2, 2).unwrap()));
        let d = Arc::new(mds_partition_d(2, 3).unwrap());
        let s = concat_s(b.clone(), d.clone()).unwrap();
        let code = s.materialize().unwrap();
        assert_eq!(code.parameters(), (6, 8, Some(3)));
        let parts = partition_of_s(b, d).unwrap();
        let p = parts.to_partition().unwrap();
        assert_eq!(p.len(), 8);
        assert!(p.classes().iter().all(|c| c.len() == 8));
        assert_eq!(p.classes()[0], code);
        for w in p.space().iter() {
            assert_eq!(parts.class_of(&w.symbols()), p.class_of(&w));
        }
    }

    #[test]
    fn ternary_concatenation() {
        let b = BlockPartition::Explicit(Arc::new(shortened_coset_partition(3, 2).unwrap()));
        let d = Arc::new(mds_partition_d(3, 3).unwrap());
        let s = concat_s(b.clone(), d.clone()).unwrap();
        let AnyCode::Explicit(code) = s.to_code().unwrap() else {
            panic!("expected an explicit code");
        };
        assert_eq!(code.parameters(), (12, 19683, Some(3)));
        assert_eq!(min_distance(&code).unwrap(), 3);
        let parts = partition_of_s(b, d).unwrap();
        let p = parts.to_partition().unwrap();
        assert_eq!(p.len(), 27);
        assert_eq!(p.classes()[0], code);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let w = s.sample(&mut rng);
            assert!(code.contains(&Word::from_symbols(3, &w).unwrap()));
        }
    }

    #[test]
    fn concatenation_rejects_mismatch() {
        let b = BlockPartition::Explicit(Arc::new(shortened_coset_partition(3, 2).unwrap()));
        let d = Arc::new(mds_partition_d(3, 2).unwrap());
        assert!(matches!(concat_s(b, d), Err(Error::Parameter(_))));
    }

    #[test]
    fn recursive_family() {
        let t = theorem4_code(3).unwrap();
        assert_eq!(t.n(), 20);
        assert_eq!(t.size(), BigUint::from(4u32).pow(17));
        assert!(t.contains(&[0u8; 20]));
        assert!(t.certificate().unwrap().holds());
        let o = t.oracle();
        assert_eq!((o.n(), o.declared_min_distance()), (20, Some(3)));
        assert!(matches!(
            AnyCode::Oracle(o).explicit(),
            Err(Error::EnumerationRequired(_))
        ));
        assert!(matches!(t.code().to_code().unwrap(), AnyCode::Oracle(_)));
        assert!(matches!(theorem4_code(2), Err(Error::Parameter(_))));

        let t4 = theorem4_code(4).unwrap();
        assert_eq!(t4.n(), 84);
        assert!(t4.contains(&[0u8; 84]));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let words: Vec<Vec<u8>> = (0..200).map(|_| t4.code().sample(&mut rng)).collect();
        for (i, x) in words.iter().enumerate() {
            assert!(t4.contains(x));
            for y in &words[..i] {
                let dist = x.iter().zip(y).filter(|(a, b)| a != b).count();
                assert!(x == y || dist >= 3);
            }
        }
    }
}
