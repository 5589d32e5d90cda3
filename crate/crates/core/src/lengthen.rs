//! Lengthenability deciders.
//!
//! A code B of length n with the parameters of a shortened 1-perfect code
//! lengthens to a 1-perfect code of length n+1 exactly when its second shell
//! B^{(2)} splits into q−1 distance-3 codes B^1, …, B^{q−1}; the lengthened
//! code is then B·0 ∪ B^1·1 ∪ … ∪ B^{q−1}·(q−1). The split is a proper
//! (q−1)-coloring of the distance-2 graph on B^{(2)}, and any distance-1 pair
//! inside B^{(2)} rules it out. Every positive answer is re-verified with
//! [`verify::is_one_perfect`] before it is returned.
//!
//! A partition of H(n, q) lengthens to a partition of H(n+1, q) into 1-perfect
//! codes when the classes can be lengthened jointly, i.e. for every color a
//! the sets B_i^a are pairwise disjoint. [`lengthen_partition`] decides this by
//! backtracking over per-class colorings and returns either the lengthened
//! partition or a minimal infeasible set of classes.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::budget;
use crate::construct::{hamming_length, LinearCode};
use crate::error::{Error, Result};
use crate::gf::shared_field;
use crate::space::{distance_layers, Ambient, Code, Partition, Space, Word};
use crate::verify;

const UNCOLORED: u8 = u8::MAX;

/// Search-node cap for coloring enumeration on a single component.
pub const COLORING_NODE_LIMIT: u64 = 5_000_000;

/// Cap on the number of inequivalent shell splits considered per class.
pub const MAX_SPLITS: usize = 64;

/// The second shell of a code with its distance-1 and distance-2 edges.
#[derive(Clone, Debug)]
pub struct ShellGraph {
    space: Space,
    vertices: Vec<u64>,
    edges1: Vec<(u32, u32)>,
    adj2: Vec<Vec<u32>>,
}

impl ShellGraph {
    pub fn build(code: &Code) -> Result<Self> {
        let layers = distance_layers(code, Some(2))?;
        let space = code.space();
        let ranks = layers.get(2).cloned().unwrap_or_default();
        Ok(Self::from_ranks(space, &ranks))
    }

    fn from_ranks(space: Space, ranks: &[u64]) -> Self {
        let index: HashMap<u64, u32> = ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| (space.unrank(r), i as u32))
            .collect();
        let vertices: Vec<u64> = ranks.iter().map(|&r| space.unrank(r)).collect();
        let lists: Vec<(Vec<u32>, Vec<u32>)> = vertices
            .par_iter()
            .map(|&v| {
                let mut near = [Vec::new(), Vec::new()];
                for (d, list) in near.iter_mut().enumerate() {
                    space.for_each_at_distance(v, d as u32 + 1, &mut |w| {
                        if let Some(&j) = index.get(&w) {
                            list.push(j);
                        }
                        true
                    });
                    list.sort_unstable();
                }
                let [a, b] = near;
                (a, b)
            })
            .collect();
        let mut edges1 = Vec::new();
        let mut adj2 = Vec::with_capacity(lists.len());
        for (i, (d1, d2)) in lists.into_iter().enumerate() {
            edges1.extend(d1.into_iter().filter(|&j| j > i as u32).map(|j| (i as u32, j)));
            adj2.push(d2);
        }
        ShellGraph {
            space,
            vertices,
            edges1,
            adj2,
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Word {
        self.space.word(self.vertices[i])
    }

    pub fn distance_one_edges(&self) -> &[(u32, u32)] {
        &self.edges1
    }

    pub fn distance_two_neighbors(&self, i: usize) -> &[u32] {
        &self.adj2[i]
    }

    /// All edges (i < j) with their distance label.
    pub fn labeled_edges(&self) -> Vec<(u32, u32, u32)> {
        let mut out: Vec<(u32, u32, u32)> = self.edges1.iter().map(|&(a, b)| (a, b, 1)).collect();
        for (i, nb) in self.adj2.iter().enumerate() {
            out.extend(nb.iter().filter(|&&j| j > i as u32).map(|&j| (i as u32, j, 2)));
        }
        out.sort_unstable();
        out
    }

    /// Connected components of the distance-2 graph, each in degree-ordered
    /// breadth-first order starting from its highest-degree vertex.
    fn components(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut by_degree: Vec<u32> = (0..n as u32).collect();
        by_degree.sort_by_key(|&v| (std::cmp::Reverse(self.adj2[v as usize].len()), v));
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for &start in &by_degree {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut order = vec![start];
            let mut head = 0;
            while head < order.len() {
                let v = order[head] as usize;
                head += 1;
                let mut next: Vec<u32> = self.adj2[v]
                    .iter()
                    .copied()
                    .filter(|&u| !seen[u as usize])
                    .collect();
                next.sort_by_key(|&u| (std::cmp::Reverse(self.adj2[u as usize].len()), u));
                for u in next {
                    seen[u as usize] = true;
                    order.push(u);
                }
            }
            comps.push(order);
        }
        comps.sort_by_key(|c| *c.iter().min().expect("nonempty"));
        comps
    }
}

/// Why a code cannot be lengthened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// B^{(3)} is nonempty.
    ThirdShell { word: Word },
    /// Two words of B^{(2)} at distance 1.
    DistanceOnePair { a: Word, b: Word },
    /// An odd cycle of the distance-2 graph (q = 3), or a connected set of
    /// shell words admitting no proper (q−1)-coloring.
    Uncolorable { vertices: Vec<Word> },
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::ThirdShell { word } => write!(f, "word {word} at distance 3 from the code"),
            Obstruction::DistanceOnePair { a, b } => {
                write!(f, "second-shell words {a} and {b} at distance 1")
            }
            Obstruction::Uncolorable { vertices } => write!(
                f,
                "{} second-shell words with no proper coloring",
                vertices.len()
            ),
        }
    }
}

/// A lengthening B·0 ∪ ⋃_a B^a·a, already verified 1-perfect.
#[derive(Clone, Debug)]
pub struct Lengthening {
    /// B^1, …, B^{q−1}.
    pub parts: Vec<Code>,
    pub code: Code,
}

#[derive(Clone, Debug)]
pub enum LengthenCertificate {
    Lengthenable(Lengthening),
    Not(Obstruction),
}

impl LengthenCertificate {
    pub fn is_lengthenable(&self) -> bool {
        matches!(self, LengthenCertificate::Lengthenable(_))
    }
}

#[derive(Clone, Debug)]
pub enum ShellSplit {
    /// The only split up to renaming, as q−1 parts.
    Unique(Vec<Code>),
    NotUnique,
    Not(Obstruction),
}

/// Checks the parameters (n, q^{n−k}, 3) with n + 1 = (q^k − 1)/(q − 1).
fn check_parameters(code: &Code) -> Result<u32> {
    let (q, n) = (code.q(), code.n());
    if !code.is_set() {
        return Err(Error::NotASet("code to lengthen".into()));
    }
    let k = (1..=n + 1)
        .find(|&k| hamming_length(q, k) == n as u64 + 1)
        .ok_or_else(|| {
            Error::Parameter(format!(
                "length {} is not (q^k − q)/(q − 1) for q = {q}",
                n
            ))
        })?;
    let expected = (q as u64).pow(n - k);
    if code.len() != expected {
        return Err(Error::Parameter(format!(
            "code has {} words, expected {expected}",
            code.len()
        )));
    }
    if code.len() > 1 && code.min_distance()? != 3 {
        return Err(Error::Parameter(format!(
            "minimum distance {} ≠ 3",
            code.min_distance()?
        )));
    }
    Ok(k)
}

/// The shell graph, or an obstruction found before coloring.
fn analyze(code: &Code) -> Result<std::result::Result<ShellGraph, Obstruction>> {
    check_parameters(code)?;
    budget::check(code.q(), code.n() + 1)?;
    let layers = distance_layers(code, Some(3))?;
    let sp = code.space();
    if let Some(&r) = layers.get(3).and_then(|l| l.first()) {
        return Ok(Err(Obstruction::ThirdShell { word: sp.word(sp.unrank(r)) }));
    }
    let ranks = layers.get(2).cloned().unwrap_or_default();
    let g = ShellGraph::from_ranks(sp, &ranks);
    if let Some(&(a, b)) = g.edges1.first() {
        return Ok(Err(Obstruction::DistanceOnePair {
            a: g.vertex(a as usize),
            b: g.vertex(b as usize),
        }));
    }
    Ok(Ok(g))
}

/// Proper colorings of the subgraph induced by `order` with `k` colors, in
/// search order. With `canonical`, colorings are enumerated up to renaming
/// (a new color is only opened after all lower ones are in use). Stops after
/// `max` colorings; `None` when the node limit is hit first.
fn enumerate_colorings(
    adj: &[Vec<u32>],
    order: &[u32],
    k: usize,
    canonical: bool,
    max: usize,
    node_limit: u64,
) -> Option<Vec<Vec<u8>>> {
    let n = order.len();
    let mut color = vec![UNCOLORED; adj.len()];
    let mut choice = vec![0u8; n + 1];
    let mut used_max = vec![-1i32; n + 1];
    let mut sols = Vec::new();
    let mut pos = 0usize;
    let mut nodes = 0u64;
    if n == 0 {
        return Some(vec![Vec::new()]);
    }
    loop {
        if pos == n {
            sols.push(order.iter().map(|&v| color[v as usize]).collect());
            if sols.len() >= max {
                break;
            }
            pos -= 1;
            color[order[pos] as usize] = UNCOLORED;
            continue;
        }
        nodes += 1;
        if nodes > node_limit {
            return None;
        }
        let v = order[pos] as usize;
        let limit = if canonical {
            k.min((used_max[pos] + 2) as usize)
        } else {
            k
        };
        let mut placed = false;
        while (choice[pos] as usize) < limit {
            let c = choice[pos];
            choice[pos] += 1;
            if adj[v].iter().all(|&u| color[u as usize] != c) {
                color[v] = c;
                used_max[pos + 1] = used_max[pos].max(c as i32);
                pos += 1;
                choice[pos] = 0;
                placed = true;
                break;
            }
        }
        if !placed {
            if pos == 0 {
                break;
            }
            pos -= 1;
            color[order[pos] as usize] = UNCOLORED;
        }
    }
    Some(sols)
}

/// Breadth-first 2-coloring; on failure returns an odd cycle.
fn two_color(g: &ShellGraph) -> std::result::Result<Vec<u8>, Vec<u32>> {
    let n = g.len();
    let mut color = vec![UNCOLORED; n];
    let mut parent = vec![u32::MAX; n];
    for start in 0..n {
        if color[start] != UNCOLORED {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start as u32]);
        while let Some(v) = queue.pop_front() {
            for &u in &g.adj2[v as usize] {
                if color[u as usize] == UNCOLORED {
                    color[u as usize] = 1 - color[v as usize];
                    parent[u as usize] = v;
                    queue.push_back(u);
                } else if color[u as usize] == color[v as usize] {
                    return Err(odd_cycle(&parent, v, u));
                }
            }
        }
    }
    Ok(color)
}

/// The cycle through the BFS-tree paths of two adjacent same-colored vertices.
fn odd_cycle(parent: &[u32], a: u32, b: u32) -> Vec<u32> {
    let path = |mut v: u32| {
        let mut p = vec![v];
        while parent[v as usize] != u32::MAX {
            v = parent[v as usize];
            p.push(v);
        }
        p
    };
    let (pa, pb) = (path(a), path(b));
    let common: HashSet<u32> = pa.iter().copied().collect();
    let meet = *pb.iter().find(|v| common.contains(v)).expect("same BFS tree");
    let mut cycle: Vec<u32> = pa.iter().copied().take_while(|&v| v != meet).collect();
    cycle.push(meet);
    let back: Vec<u32> = pb.iter().copied().take_while(|&v| v != meet).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// One proper (q−1)-coloring of the whole graph, or an uncolorable component.
fn color_graph(g: &ShellGraph, k: usize) -> Result<std::result::Result<Vec<u8>, Vec<u32>>> {
    if k == 2 {
        return Ok(two_color(g));
    }
    let mut color = vec![0u8; g.len()];
    for comp in g.components() {
        let sols = enumerate_colorings(&g.adj2, &comp, k, true, 1, COLORING_NODE_LIMIT)
            .ok_or_else(|| Error::OutOfScope("coloring search exceeded its node limit".into()))?;
        match sols.first() {
            Some(s) => {
                for (&v, &c) in comp.iter().zip(s) {
                    color[v as usize] = c;
                }
            }
            None => return Ok(Err(comp)),
        }
    }
    Ok(Ok(color))
}

fn parts_from_coloring(g: &ShellGraph, color: &[u8], k: usize) -> Vec<Code> {
    let mut parts = vec![Vec::new(); k];
    for (i, &c) in color.iter().enumerate() {
        parts[c as usize].push(g.vertices[i]);
    }
    parts
        .into_iter()
        .map(|ws| Code::from_packed(g.space, ws))
        .collect()
}

/// B·0 ∪ ⋃_a B^a·a, where `parts[a−1]` = B^a.
fn append_symbols(code: &Code, parts: &[Code]) -> Result<Code> {
    let sp = code.space();
    let target = Space::new(sp.q(), sp.n() + 1)?;
    let w = sp.width();
    let mut words: Vec<u64> = code.packed().map(|x| x << w).collect();
    for (a, part) in parts.iter().enumerate() {
        words.extend(part.packed().map(|x| (x << w) | (a as u64 + 1)));
    }
    Ok(Code::from_packed(target, words))
}

fn verified_lengthening(code: &Code, parts: Vec<Code>) -> Result<Lengthening> {
    let lengthened = append_symbols(code, &parts)?;
    let verdict = verify::is_one_perfect(&lengthened)?;
    if !verdict.holds {
        return Err(Error::Mismatch(
            "reconstructed code failed 1-perfect verification".into(),
        ));
    }
    Ok(Lengthening {
        parts,
        code: lengthened,
    })
}

/// Decides whether `code` lengthens to a 1-perfect code of length n + 1.
pub fn lengthen_code(code: &Code) -> Result<LengthenCertificate> {
    let g = match analyze(code)? {
        Ok(g) => g,
        Err(obs) => return Ok(LengthenCertificate::Not(obs)),
    };
    let k = code.q() as usize - 1;
    match color_graph(&g, k)? {
        Ok(color) => {
            let parts = parts_from_coloring(&g, &color, k);
            Ok(LengthenCertificate::Lengthenable(verified_lengthening(code, parts)?))
        }
        Err(witness) => Ok(LengthenCertificate::Not(Obstruction::Uncolorable {
            vertices: witness.iter().map(|&v| g.vertex(v as usize)).collect(),
        })),
    }
}

/// All splits of the shell up to renaming of the parts, at most `max`.
/// `None` when there are more than `max`.
fn shell_splits(
    g: &ShellGraph,
    k: usize,
    max: usize,
) -> Result<std::result::Result<Option<Vec<Vec<Code>>>, Obstruction>> {
    let comps = g.components();
    if k == 1 {
        return Ok(match color_graph(g, 1)? {
            Ok(c) => Ok(Some(vec![parts_from_coloring(g, &c, 1)])),
            Err(w) => Err(Obstruction::Uncolorable {
                vertices: w.iter().map(|&v| g.vertex(v as usize)).collect(),
            }),
        });
    }
    // up to renaming, independent components multiply the count
    let mut per_comp = Vec::with_capacity(comps.len());
    for comp in &comps {
        let sols = enumerate_colorings(&g.adj2, comp, k, true, max + 1, COLORING_NODE_LIMIT)
            .ok_or_else(|| Error::OutOfScope("coloring search exceeded its node limit".into()))?;
        if sols.is_empty() {
            return Ok(Err(Obstruction::Uncolorable {
                vertices: comp.iter().map(|&v| g.vertex(v as usize)).collect(),
            }));
        }
        per_comp.push(sols);
    }
    if comps.len() > 1 {
        if comps.len() > 2 || max < 2 {
            return Ok(Ok(None));
        }
        let mut splits = Vec::new();
        for a in &per_comp[0] {
            for b in &per_comp[1] {
                for perm in permutations(k) {
                    let mut color = vec![0u8; g.len()];
                    for (&v, &c) in comps[0].iter().zip(a) {
                        color[v as usize] = c;
                    }
                    for (&v, &c) in comps[1].iter().zip(b) {
                        color[v as usize] = perm[c as usize];
                    }
                    splits.push(canonical_parts(parts_from_coloring(g, &color, k)));
                }
            }
        }
        splits.sort_by_key(|x| key(x));
        splits.dedup_by(|x, y| key(x) == key(y));
        return Ok(Ok((splits.len() <= max).then_some(splits)));
    }
    let sols = per_comp.pop().unwrap_or_else(|| vec![Vec::new()]);
    if sols.len() > max {
        return Ok(Ok(None));
    }
    let comp = comps.first().cloned().unwrap_or_default();
    let splits = sols
        .iter()
        .map(|s| {
            let mut color = vec![0u8; g.len()];
            for (&v, &c) in comp.iter().zip(s) {
                color[v as usize] = c;
            }
            parts_from_coloring(g, &color, k)
        })
        .collect();
    Ok(Ok(Some(splits)))
}

fn key(parts: &[Code]) -> Vec<Vec<u64>> {
    parts.iter().map(|c| c.packed().collect()).collect()
}

/// Parts sorted by their smallest word, empty parts last.
fn canonical_parts(mut parts: Vec<Code>) -> Vec<Code> {
    parts.sort_by_key(|c| c.packed().next().unwrap_or(u64::MAX));
    parts
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    fn rec(i: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            rec(i + 1, cur, out);
            cur.swap(i, j);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

/// The split of B^{(2)} into q−1 distance-3 codes when it is unique up to
/// renaming.
pub fn unique_shell_partition(code: &Code) -> Result<ShellSplit> {
    let g = match analyze(code)? {
        Ok(g) => g,
        Err(obs) => return Ok(ShellSplit::Not(obs)),
    };
    let k = code.q() as usize - 1;
    Ok(match shell_splits(&g, k, 1)? {
        Err(obs) => ShellSplit::Not(obs),
        Ok(Some(mut s)) if s.len() == 1 => ShellSplit::Unique(s.pop().expect("one split")),
        Ok(_) => ShellSplit::NotUnique,
    })
}

/// Two parts of different classes sharing a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub class_a: usize,
    pub part_a: usize,
    pub class_b: usize,
    pub part_b: usize,
    pub word: Word,
}

#[derive(Clone, Debug)]
pub enum CoreReason {
    ClassNotLengthenable(Obstruction),
    JointInfeasible,
}

#[derive(Clone, Debug)]
pub struct ConflictCore {
    pub classes: Vec<usize>,
    pub labels: Vec<String>,
    pub reason: CoreReason,
    /// Intersections between the (first) shell splits of core classes.
    pub witnesses: Vec<Intersection>,
}

#[derive(Clone, Debug)]
pub struct PartitionLengthening {
    /// The lengthened partition of H(n+1, q), classes in the input order.
    pub partition: Partition,
    /// Per class, its parts B_i^1, …, B_i^{q−1}.
    pub parts: Vec<Vec<Code>>,
}

#[derive(Clone, Debug)]
pub enum PartitionVerdict {
    Sat(PartitionLengthening),
    Unsat(ConflictCore),
}

impl PartitionVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, PartitionVerdict::Sat(_))
    }
}

struct ClassOptions {
    splits: Vec<Vec<Vec<u64>>>,
    /// (split index, part → color) pairs.
    options: Vec<(usize, Vec<u8>)>,
}

fn first_common(a: &[u64], b: &[u64]) -> Option<u64> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

struct Csp {
    options: Vec<ClassOptions>,
    /// compat[i][j][oi * |O_j| + oj]
    compat: Vec<Vec<Vec<bool>>>,
}

impl Csp {
    fn new(options: Vec<ClassOptions>) -> Self {
        let m = options.len();
        let mut compat = vec![vec![Vec::new(); m]; m];
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        let tables: Vec<Vec<bool>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (a, b) = (&options[i], &options[j]);
                // meets[si][sj][pi][pj]
                let meets: Vec<Vec<Vec<Vec<bool>>>> = a
                    .splits
                    .iter()
                    .map(|sa| {
                        b.splits
                            .iter()
                            .map(|sb| {
                                sa.iter()
                                    .map(|pa| sb.iter().map(|pb| first_common(pa, pb).is_some()).collect())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                let mut t = Vec::with_capacity(a.options.len() * b.options.len());
                for (sa, ca) in &a.options {
                    for (sb, cb) in &b.options {
                        let mm = &meets[*sa][*sb];
                        let ok = (0..ca.len()).all(|pa| {
                            (0..cb.len()).all(|pb| !(mm[pa][pb] && ca[pa] == cb[pb]))
                        });
                        t.push(ok);
                    }
                }
                t
            })
            .collect();
        for (&(i, j), t) in pairs.iter().zip(tables) {
            compat[i][j] = t;
        }
        Csp { options, compat }
    }

    fn ok(&self, i: usize, oi: usize, j: usize, oj: usize) -> bool {
        self.compat[i][j][oi * self.options[j].options.len() + oj]
    }

    /// A compatible choice for the listed classes, in list order.
    fn solve(&self, classes: &[usize]) -> Option<Vec<usize>> {
        let n = classes.len();
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        let mut next = vec![0usize; n + 1];
        let mut pos = 0;
        loop {
            if pos == n {
                return Some(chosen);
            }
            let i = classes[pos];
            let mut placed = false;
            while next[pos] < self.options[i].options.len() {
                let oi = next[pos];
                next[pos] += 1;
                if (0..pos).all(|p| self.ok(classes[p], chosen[p], i, oi)) {
                    chosen.push(oi);
                    pos += 1;
                    next[pos] = 0;
                    placed = true;
                    break;
                }
            }
            if !placed {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                chosen.pop();
            }
        }
    }
}

fn witnesses(p: &Partition, options: &[ClassOptions], core: &[usize]) -> Vec<Intersection> {
    let sp = p.space();
    let mut out = Vec::new();
    for (x, &i) in core.iter().enumerate() {
        for &j in &core[x + 1..] {
            let (a, b) = (&options[i].splits[0], &options[j].splits[0]);
            for (pa, wa) in a.iter().enumerate() {
                for (pb, wb) in b.iter().enumerate() {
                    if let Some(w) = first_common(wa, wb) {
                        out.push(Intersection {
                            class_a: i,
                            part_a: pa,
                            class_b: j,
                            part_b: pb,
                            word: sp.word(w),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Decides whether a partition of H(n, q) lengthens to a partition of
/// H(n+1, q) into 1-perfect codes.
pub fn lengthen_partition(p: &Partition) -> Result<PartitionVerdict> {
    if !p.covers_full_space() {
        return Err(Error::Parameter("partition does not cover the full space".into()));
    }
    let k = p.space().q() as usize - 1;
    let analyses: Vec<Result<std::result::Result<Vec<Vec<Code>>, Obstruction>>> = p
        .classes()
        .par_iter()
        .map(|c| {
            let g = match analyze(c)? {
                Ok(g) => g,
                Err(obs) => return Ok(Err(obs)),
            };
            match shell_splits(&g, k, MAX_SPLITS)? {
                Err(obs) => Ok(Err(obs)),
                Ok(Some(s)) => Ok(Ok(s)),
                Ok(None) => Err(Error::OutOfScope(format!(
                    "more than {MAX_SPLITS} inequivalent shell splits"
                ))),
            }
        })
        .collect();
    let mut options = Vec::with_capacity(analyses.len());
    for (i, a) in analyses.into_iter().enumerate() {
        match a? {
            Err(obs) => {
                return Ok(PartitionVerdict::Unsat(ConflictCore {
                    classes: vec![i],
                    labels: vec![p.labels()[i].clone()],
                    reason: CoreReason::ClassNotLengthenable(obs),
                    witnesses: Vec::new(),
                }))
            }
            Ok(splits) => {
                let perms = permutations(k);
                let options_i = (0..splits.len())
                    .flat_map(|s| perms.iter().map(move |pm| (s, pm.clone())))
                    .collect();
                options.push(ClassOptions {
                    splits: splits.iter().map(|s| key(s)).collect(),
                    options: options_i,
                });
            }
        }
    }
    let csp = Csp::new(options);
    let all: Vec<usize> = (0..p.len()).collect();
    if let Some(choice) = csp.solve(&all) {
        return Ok(PartitionVerdict::Sat(build_lengthened(p, &csp, &choice)?));
    }
    // deletion-based minimization, highest index first
    let mut core = all;
    for i in (0..p.len()).rev() {
        let trial: Vec<usize> = core.iter().copied().filter(|&c| c != i).collect();
        if csp.solve(&trial).is_none() {
            core = trial;
        }
    }
    Ok(PartitionVerdict::Unsat(ConflictCore {
        labels: core.iter().map(|&i| p.labels()[i].clone()).collect(),
        witnesses: witnesses(p, &csp.options, &core),
        classes: core,
        reason: CoreReason::JointInfeasible,
    }))
}

fn build_lengthened(p: &Partition, csp: &Csp, choice: &[usize]) -> Result<PartitionLengthening> {
    let sp = p.space();
    let k = sp.q() as usize - 1;
    let per_class: Vec<(Code, Vec<Code>)> = p
        .classes()
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let opts = &csp.options[i];
            let (s, colors) = &opts.options[choice[i]];
            let mut parts = vec![Vec::new(); k];
            for (pi, words) in opts.splits[*s].iter().enumerate() {
                parts[colors[pi] as usize] = words.clone();
            }
            let parts: Vec<Code> = parts.into_iter().map(|w| Code::from_packed(sp, w)).collect();
            let l = verified_lengthening(b, parts)?;
            Ok((l.code, l.parts))
        })
        .collect::<Result<_>>()?;
    let (classes, parts): (Vec<Code>, Vec<Vec<Code>>) = per_class.into_iter().unzip();
    let target = classes[0].space();
    let partition = Partition::new(
        Ambient::FullSpace(target),
        classes,
        Some(p.labels().to_vec()),
    )?;
    Ok(PartitionLengthening { partition, parts })
}

/// One equivalence class of partitions of H(3,3) into (3,3,3)₃ codes.
#[derive(Clone, Debug)]
pub struct H33Class {
    /// The first partition of the class met during enumeration.
    pub representative: Partition,
    /// Number of enumerated partitions in the class.
    pub members: usize,
    pub verdict: PartitionVerdict,
}

#[derive(Clone, Debug)]
pub struct H33Classification {
    /// Number of (3,3,3)₃ codes in H(3,3).
    pub code_count: usize,
    /// Number of partitions of H(3,3) into nine such codes.
    pub raw_count: usize,
    pub classes: Vec<H33Class>,
}

/// All sets of `size` words of H(n, q) with pairwise distance ≥ d, as sorted
/// rank lists, in lexicographic order.
fn all_codes(space: Space, size: usize, d: u32) -> Vec<Vec<u64>> {
    let total = space.size() as u64;
    let mut out = Vec::new();
    let mut cur: Vec<u64> = Vec::new();
    fn rec(space: Space, total: u64, size: usize, d: u32, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for r in start..total {
            let w = space.unrank(r);
            if cur.iter().all(|&x| space.dist(space.unrank(x), w) >= d) {
                cur.push(r);
                rec(space, total, size, d, r + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(space, total, size, d, 0, &mut cur, &mut out);
    out
}

/// Every exact cover of `0..vertices` by the given blocks, each cover listed
/// as block indices in the order chosen (lowest uncovered vertex first).
fn exact_covers(vertices: usize, blocks: &[Vec<u64>]) -> Vec<Vec<usize>> {
    let mut containing = vec![Vec::new(); vertices];
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            containing[v as usize].push(b);
        }
    }
    let mut covered = vec![false; vertices];
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        blocks: &[Vec<u64>],
        containing: &[Vec<usize>],
        covered: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            out.push(cur.clone());
            return;
        };
        for &b in &containing[v] {
            if blocks[b].iter().all(|&x| !covered[x as usize]) {
                for &x in &blocks[b] {
                    covered[x as usize] = true;
                }
                cur.push(b);
                rec(blocks, containing, covered, cur, out);
                cur.pop();
                for &x in &blocks[b] {
                    covered[x as usize] = false;
                }
            }
        }
    }
    rec(blocks, &containing, &mut covered, &mut cur, &mut out);
    out
}

/// The isometries of H(n, q) fixing nothing in particular: coordinate
/// permutations combined with a symbol permutation per coordinate, as rank
/// maps.
fn isometry_rank_maps(space: Space) -> Vec<Vec<u64>> {
    let (q, n) = (space.q() as usize, space.n() as usize);
    let coord_perms = permutations(n);
    let sym_perms = permutations(q);
    let total = space.size() as u64;
    let words: Vec<Vec<u8>> = (0..total).map(|r| space.unpack(space.unrank(r))).collect();
    let mut maps = Vec::new();
    let combos = sym_perms.len().pow(n as u32);
    for cp in &coord_perms {
        for mut c in 0..combos {
            let mut sp: Vec<&Vec<u8>> = Vec::with_capacity(n);
            for _ in 0..n {
                sp.push(&sym_perms[c % sym_perms.len()]);
                c /= sym_perms.len();
            }
            let map = words
                .iter()
                .map(|w| {
                    let img: Vec<u8> = (0..n).map(|j| sp[j][w[cp[j] as usize] as usize]).collect();
                    space.rank(space.pack(&img).expect("in range"))
                })
                .collect();
            maps.push(map);
        }
    }
    maps
}

/// Smallest image of a partition (classes as rank lists) over all maps.
fn canonical_form(classes: &[Vec<u64>], maps: &[Vec<u64>]) -> Vec<Vec<u64>> {
    maps.iter()
        .map(|m| {
            let mut img: Vec<Vec<u64>> = classes
                .iter()
                .map(|c| {
                    let mut x: Vec<u64> = c.iter().map(|&r| m[r as usize]).collect();
                    x.sort_unstable();
                    x
                })
                .collect();
            img.sort();
            img
        })
        .min()
        .expect("nonempty group")
}

/// Enumerates and classifies all partitions of H(3,3) into (3,3,3)₃ codes up
/// to isometry, and decides lengthenability of each class representative.
pub fn classify_h33_partitions() -> Result<H33Classification> {
    let space = Space::new(3, 3)?;
    let codes = all_codes(space, 3, 3);
    let covers = exact_covers(27, &codes);
    let maps = isometry_rank_maps(space);
    debug_assert_eq!(maps.len(), 1296);
    let forms: Vec<Vec<Vec<u64>>> = covers
        .par_iter()
        .map(|cover| {
            let classes: Vec<Vec<u64>> = cover.iter().map(|&b| codes[b].clone()).collect();
            canonical_form(&classes, &maps)
        })
        .collect();
    let mut order: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut reps: HashMap<Vec<Vec<u64>>, (usize, usize)> = HashMap::new();
    for (i, f) in forms.into_iter().enumerate() {
        let e = reps.entry(f.clone()).or_insert_with(|| {
            order.push(f);
            (i, 0)
        });
        e.1 += 1;
    }
    let mut classes = Vec::new();
    for f in order {
        let (first, members) = reps[&f];
        let mut cover = covers[first].clone();
        cover.sort_unstable();
        let codes_i = cover
            .iter()
            .map(|&b| Code::from_packed(space, codes[b].iter().map(|&r| space.unrank(r)).collect()))
            .collect();
        let representative = Partition::of_full_space(codes_i)?;
        let verdict = lengthen_partition(&representative)?;
        classes.push(H33Class {
            representative,
            members,
            verdict,
        });
    }
    Ok(H33Classification {
        code_count: codes.len(),
        raw_count: covers.len(),
        classes,
    })
}

/// Limits for [`search_partitions`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Stop after this many distinct partitions.
    pub partitions: usize,
    /// Total exact-cover search nodes over all restarts.
    pub nodes: u64,
    /// Nodes per restart.
    pub nodes_per_restart: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            partitions: 8,
            nodes: 200_000,
            nodes_per_restart: 5_000,
        }
    }
}

/// One partition met by the search, in discovery order.
#[derive(Clone, Debug)]
pub struct SearchFind {
    pub index: usize,
    pub partition: Partition,
    /// `None` when the decision ran out of resources.
    pub verdict: Option<PartitionVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSummary {
    pub q: u32,
    pub seed: u64,
    pub pool_size: usize,
    pub partitions: usize,
    pub lengthenable: usize,
    pub non_lengthenable: usize,
    pub undecided: usize,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

/// All (4,16,3)₄ codes: words (i, j, L(i,j), M(i,j)) for orthogonal Latin
/// squares L, M of order 4, as sorted rank lists.
fn quaternary_mds_pool(space: Space) -> Vec<Vec<u64>> {
    let rows = permutations(4);
    let mut squares: Vec<[[u8; 4]; 4]> = Vec::new();
    fn rec(rows: &[Vec<u8>], cur: &mut Vec<usize>, out: &mut Vec<[[u8; 4]; 4]>) {
        if cur.len() == 4 {
            let mut s = [[0u8; 4]; 4];
            for (i, &r) in cur.iter().enumerate() {
                s[i].copy_from_slice(&rows[r]);
            }
            out.push(s);
            return;
        }
        for r in 0..rows.len() {
            if cur.iter().all(|&o| (0..4).all(|c| rows[o][c] != rows[r][c])) {
                cur.push(r);
                rec(rows, cur, out);
                cur.pop();
            }
        }
    }
    rec(&rows, &mut Vec::new(), &mut squares);
    let mut pool = Vec::new();
    for a in &squares {
        for b in &squares {
            let mut pairs = HashSet::new();
            for i in 0..4 {
                for j in 0..4 {
                    pairs.insert((a[i][j], b[i][j]));
                }
            }
            if pairs.len() == 16 {
                let mut c: Vec<u64> = (0..4)
                    .flat_map(|i| (0..4).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        let w = [i as u8, j as u8, a[i][j], b[i][j]];
                        space.rank(space.pack(&w).expect("in range"))
                    })
                    .collect();
                c.sort_unstable();
                pool.push(c);
            }
        }
    }
    pool.sort();
    pool.dedup();
    pool
}

/// Cosets of a linear (q, q^{q−2}, 3)_q code under random isometries.
fn linear_mds_pool(space: Space, rng: &mut ChaCha8Rng, images: usize) -> Result<Vec<Vec<u64>>> {
    let q = space.q();
    let field = shared_field(q)?;
    let h = vec![
        vec![1u8; q as usize],
        (0..q as u8).collect::<Vec<u8>>(),
    ];
    let cosets = LinearCode::new(field, h)?.cosets()?;
    let base: Vec<Vec<u64>> = cosets
        .classes()
        .iter()
        .map(|c| c.packed().map(|w| space.rank(w)).collect())
        .collect();
    let n = space.n() as usize;
    let total = space.size() as u64;
    let mut pool: HashSet<Vec<u64>> = HashSet::new();
    for img in 0..images {
        let mut coords: Vec<usize> = (0..n).collect();
        let mut syms: Vec<Vec<u8>> = (0..n).map(|_| (0..q as u8).collect()).collect();
        if img > 0 {
            coords.shuffle(rng);
            for s in syms.iter_mut() {
                s.shuffle(rng);
            }
        }
        let map: Vec<u64> = (0..total)
            .map(|r| {
                let w = space.unpack(space.unrank(r));
                let out: Vec<u8> = (0..n).map(|j| syms[j][w[coords[j]] as usize]).collect();
                space.rank(space.pack(&out).expect("in range"))
            })
            .collect();
        for c in &base {
            let mut x: Vec<u64> = c.iter().map(|&r| map[r as usize]).collect();
            x.sort_unstable();
            pool.insert(x);
        }
    }
    let mut pool: Vec<Vec<u64>> = pool.into_iter().collect();
    pool.sort();
    Ok(pool)
}

/// The pool of MDS codes the search draws from.
pub fn mds_pool(q: u32, seed: u64) -> Result<Vec<Code>> {
    let space = Space::new(q, q)?;
    let ranks = pool_ranks(space, seed)?;
    Ok(ranks
        .into_iter()
        .map(|c| Code::from_packed(space, c.into_iter().map(|r| space.unrank(r)).collect()))
        .collect())
}

fn pool_ranks(space: Space, seed: u64) -> Result<Vec<Vec<u64>>> {
    match space.q() {
        4 => Ok(quaternary_mds_pool(space)),
        5 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x706f6f6c);
            linear_mds_pool(space, &mut rng, 12)
        }
        q => Err(Error::Parameter(format!("search supports q ∈ {{4, 5}}, got {q}"))),
    }
}

struct RandomCover<'a> {
    blocks: &'a [Vec<u64>],
    masks: Vec<Vec<u64>>,
    containing: Vec<Vec<u32>>,
    words: usize,
}

impl<'a> RandomCover<'a> {
    fn new(vertices: usize, blocks: &'a [Vec<u64>]) -> Self {
        let words = vertices.div_ceil(64);
        let mut containing = vec![Vec::new(); vertices];
        let masks = blocks
            .iter()
            .enumerate()
            .map(|(b, block)| {
                let mut m = vec![0u64; words];
                for &v in block {
                    m[(v / 64) as usize] |= 1 << (v % 64);
                    containing[v as usize].push(b as u32);
                }
                m
            })
            .collect();
        RandomCover {
            blocks,
            masks,
            containing,
            words,
        }
    }

    fn fits(&self, covered: &[u64], b: u32) -> bool {
        self.masks[b as usize]
            .iter()
            .zip(covered)
            .all(|(m, c)| m & c == 0)
    }

    /// One randomized depth-first attempt with the fewest-candidates rule.
    fn attempt(&self, rng: &mut ChaCha8Rng, limit: u64, nodes: &mut u64) -> Option<Vec<u32>> {
        let mut covered = vec![0u64; self.words];
        let mut chosen = Vec::new();
        self.rec(rng, limit, nodes, &mut covered, &mut chosen)
            .then_some(chosen)
    }

    fn rec(
        &self,
        rng: &mut ChaCha8Rng,
        limit: u64,
        nodes: &mut u64,
        covered: &mut Vec<u64>,
        chosen: &mut Vec<u32>,
    ) -> bool {
        if *nodes >= limit {
            return false;
        }
        *nodes += 1;
        let mut best: Option<(usize, Vec<u32>)> = None;
        for v in 0..self.containing.len() {
            if covered[v / 64] >> (v % 64) & 1 == 1 {
                continue;
            }
            let cands: Vec<u32> = self.containing[v]
                .iter()
                .copied()
                .filter(|&b| self.fits(covered, b))
                .collect();
            if best.as_ref().is_none_or(|(_, c)| cands.len() < c.len()) {
                let empty = cands.is_empty();
                best = Some((v, cands));
                if empty {
                    break;
                }
            }
        }
        let Some((_, mut cands)) = best else {
            return true;
        };
        cands.shuffle(rng);
        for b in cands {
            for (c, m) in covered.iter_mut().zip(&self.masks[b as usize]) {
                *c |= m;
            }
            chosen.push(b);
            if self.rec(rng, limit, nodes, covered, chosen) {
                return true;
            }
            chosen.pop();
            for (c, m) in covered.iter_mut().zip(&self.masks[b as usize]) {
                *c &= !m;
            }
            if *nodes >= limit {
                return false;
            }
        }
        false
    }
}

/// Randomized search for partitions of H(q, q) into MDS (q, q^{q−2}, 3)_q
/// codes, each checked with [`lengthen_partition`]. Fully determined by
/// `seed` and `budget`; `on_find` sees every distinct partition found.
pub fn search_partitions(
    q: u32,
    seed: u64,
    budget: SearchBudget,
    mut on_find: impl FnMut(&SearchFind),
) -> Result<SearchSummary> {
    let space = Space::new(q, q)?;
    let pool = pool_ranks(space, seed)?;
    let cover = RandomCover::new(space.size() as usize, &pool);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut summary = SearchSummary {
        q,
        seed,
        pool_size: pool.len(),
        partitions: 0,
        lengthenable: 0,
        non_lengthenable: 0,
        undecided: 0,
        nodes: 0,
        budget_exhausted: false,
    };
    while summary.partitions < budget.partitions {
        if summary.nodes >= budget.nodes {
            summary.budget_exhausted = true;
            break;
        }
        let limit = (summary.nodes + budget.nodes_per_restart).min(budget.nodes);
        let mut restart_rng = ChaCha8Rng::seed_from_u64(rng.gen());
        let Some(mut blocks) = cover.attempt(&mut restart_rng, limit, &mut summary.nodes) else {
            continue;
        };
        blocks.sort_unstable();
        if !seen.insert(blocks.clone()) {
            continue;
        }
        let classes = blocks
            .iter()
            .map(|&b| {
                Code::from_packed(space, cover.blocks[b as usize].iter().map(|&r| space.unrank(r)).collect())
            })
            .collect();
        let partition = Partition::of_full_space(classes)?;
        let verdict = match lengthen_partition(&partition) {
            Ok(v) => Some(v),
            Err(Error::OutOfScope(_)) => None,
            Err(e) => return Err(e),
        };
        match &verdict {
            Some(PartitionVerdict::Sat(_)) => summary.lengthenable += 1,
            Some(PartitionVerdict::Unsat(_)) => summary.non_lengthenable += 1,
            None => summary.undecided += 1,
        }
        let find = SearchFind {
            index: summary.partitions,
            partition,
            verdict,
        };
        summary.partitions += 1;
        on_find(&find);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_embedded_partition;

    fn code(q: u32, rows: &[&[u8]]) -> Code {
        Code::from_rows(q, rows[0].len() as u32, rows).unwrap()
    }

    fn words(c: &Code) -> Vec<Vec<u8>> {
        c.words().map(|w| w.symbols()).collect()
    }

    #[test]
    fn ternary_example() {
        let b = code(3, &[&[0, 0, 0], &[2, 2, 1], &[1, 1, 2]]);
        let g = ShellGraph::build(&b).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.distance_one_edges().is_empty());
        for (i, j, d) in g.labeled_edges() {
            assert_eq!(b.space().dist(g.vertices[i as usize], g.vertices[j as usize]), d);
        }
        let LengthenCertificate::Lengthenable(l) = lengthen_code(&b).unwrap() else {
            panic!("expected lengthenable");
        };
        let mut parts: Vec<Vec<Vec<u8>>> = l.parts.iter().map(words).collect();
        parts.sort();
        assert_eq!(
            parts,
            vec![
                vec![vec![0, 1, 1], vec![1, 2, 0], vec![2, 0, 2]],
                vec![vec![0, 2, 2], vec![1, 0, 1], vec![2, 1, 0]],
            ]
        );
        assert_eq!(l.code.parameters(), (4, 9, Some(3)));
        assert!(matches!(unique_shell_partition(&b).unwrap(), ShellSplit::Unique(_)));
    }

    /// Brute force: try every assignment of an appended symbol to the shell.
    fn lengthenable_by_brute_force(b: &Code) -> bool {
        let shell = crate::space::shell(b, 2).unwrap();
        let ws: Vec<u64> = shell.packed().collect();
        let q = b.q() as u64;
        (0..(q - 1).pow(ws.len() as u32)).any(|mut code_idx| {
            let mut parts = vec![Vec::new(); q as usize - 1];
            for &w in &ws {
                let a = code_idx % (q - 1);
                code_idx /= q - 1;
                parts[a as usize].push(w);
            }
            let parts: Vec<Code> = parts.into_iter().map(|p| Code::from_packed(b.space(), p)).collect();
            let c = append_symbols(b, &parts).unwrap();
            verify::is_one_perfect(&c).unwrap().holds
        })
    }

    #[test]
    fn ternary_checker_matches_brute_force() {
        let space = Space::new(3, 3).unwrap();
        let codes = all_codes(space, 3, 3);
        assert_eq!(codes.len(), 36);
        for c in codes {
            let b = Code::from_packed(space, c.iter().map(|&r| space.unrank(r)).collect());
            let fast = lengthen_code(&b).unwrap().is_lengthenable();
            assert_eq!(fast, lengthenable_by_brute_force(&b));
        }
    }

    #[test]
    fn parameter_errors() {
        let not_a_code = code(3, &[&[0, 0, 0], &[0, 1, 1], &[1, 1, 2]]);
        assert!(matches!(lengthen_code(&not_a_code), Err(Error::Parameter(_))));
        let wrong_length = code(3, &[&[0, 0], &[1, 1]]);
        assert!(matches!(lengthen_code(&wrong_length), Err(Error::Parameter(_))));
    }

    #[test]
    fn quaternary_classes_have_unique_splits() {
        let p = load_embedded_partition();
        for c in p.classes() {
            let ShellSplit::Unique(parts) = unique_shell_partition(c).unwrap() else {
                panic!("expected a unique split");
            };
            assert_eq!(parts.len(), 3);
            for part in &parts {
                assert_eq!(part.len(), 16);
                assert_eq!(part.min_distance().unwrap(), 3);
            }
            assert!(lengthen_code(c).unwrap().is_lengthenable());
        }
    }

    #[test]
    fn embedded_partition_is_not_lengthenable() {
        let p = load_embedded_partition();
        let PartitionVerdict::Unsat(core) = lengthen_partition(&p).unwrap() else {
            panic!("expected UNSAT");
        };
        assert_eq!(core.labels, vec!["2", "3", "C"]);
        assert!(matches!(core.reason, CoreReason::JointInfeasible));
        assert!(!core.witnesses.is_empty());
        for w in &core.witnesses {
            assert!(core.classes.contains(&w.class_a) && core.classes.contains(&w.class_b));
        }
    }

    #[test]
    fn colorings_of_disconnected_graphs_are_not_unique() {
        // two disjoint edges, two colors: up to renaming there are two colorings
        let adj = vec![vec![1], vec![0], vec![3], vec![2]];
        let all = enumerate_colorings(&adj, &[0, 1, 2, 3], 2, true, 10, 1000).unwrap();
        assert_eq!(all.len(), 2);
        let one = enumerate_colorings(&adj, &[0, 1], 2, true, 10, 1000).unwrap();
        assert_eq!(one.len(), 1);
        let triangle = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert!(enumerate_colorings(&triangle, &[0, 1, 2], 2, false, 10, 1000)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn odd_cycles_are_reported() {
        let space = Space::new(3, 1).unwrap();
        let g = ShellGraph {
            space,
            vertices: vec![0, 1, 2],
            edges1: Vec::new(),
            adj2: vec![vec![1, 2], vec![0, 2], vec![0, 1]],
        };
        let cycle = two_color(&g).unwrap_err();
        assert_eq!(cycle.len() % 2, 1);
        for w in cycle.windows(2) {
            assert!(g.adj2[w[0] as usize].contains(&w[1]));
        }
    }

    #[test]
    fn h33_classification() {
        let c = classify_h33_partitions().unwrap();
        assert_eq!(c.code_count, 36);
        assert_eq!(c.classes.len(), 2);
        assert_eq!(c.classes.iter().map(|k| k.members).sum::<usize>(), c.raw_count);
        for k in &c.classes {
            let PartitionVerdict::Sat(l) = &k.verdict else {
                panic!("expected SAT");
            };
            assert_eq!(l.partition.len(), 9);
            assert!(l.partition.classes().iter().all(|x| x.len() == 9));
        }
    }

    #[test]
    fn non_code_class_is_a_parameter_error() {
        let space = Space::new(3, 3).unwrap();
        let mut classes: Vec<Code> = crate::construct::shortened_coset_partition(3, 2)
            .unwrap()
            .classes()
            .to_vec();
        // swap one word between two classes
        let a: Vec<u64> = classes[0].packed().collect();
        let b: Vec<u64> = classes[1].packed().collect();
        classes[0] = Code::from_packed(space, vec![a[0], a[1], b[0]]);
        classes[1] = Code::from_packed(space, vec![b[1], b[2], a[2]]);
        let p = Partition::of_full_space(classes).unwrap();
        assert!(matches!(lengthen_partition(&p), Err(Error::Parameter(_))));
    }

    #[test]
    fn quaternary_pool() {
        let space = Space::new(4, 4).unwrap();
        let pool = quaternary_mds_pool(space);
        assert_eq!(pool.len(), 6912);
        let embedded = load_embedded_partition();
        for c in embedded.classes() {
            let ranks: Vec<u64> = c.packed().map(|w| space.rank(w)).collect();
            assert!(pool.binary_search(&ranks).is_ok());
        }
    }

    #[test]
    fn search_is_deterministic() {
        let budget = SearchBudget {
            partitions: 2,
            nodes: 50_000,
            nodes_per_restart: 2_000,
        };
        let run = || {
            let mut log = Vec::new();
            let s = search_partitions(4, 11, budget, |f| {
                log.push((crate::catalog::format_partition(&f.partition), f.verdict.as_ref().map(|v| v.is_sat())))
            })
            .unwrap();
            (s, log)
        };
        let (a, la) = run();
        let (b, lb) = run();
        assert_eq!(a, b);
        assert_eq!(la, lb);
        assert!(a.partitions > 0);
    }
}
