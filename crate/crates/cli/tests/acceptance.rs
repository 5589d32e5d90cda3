//! Acceptance suite: every criterion from the in-process reproduction, each
//! cross-checked against an oracle written here from first principles.
//!
//! Runs without the libtest harness so that the per-criterion lines always
//! reach the output.

use std::process::{Command, ExitCode};
use std::thread;

use perfectlike::construct::{coset_multifold_packing, shortened_hamming};
use perfectlike::space::Code;
use perfectlike_cli::repro::{run_criterion, CRITERIA, DEFAULT_SEED};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn words_of(code: &Code) -> Vec<Vec<u8>> {
    code.words_with_repeats().map(|w| w.symbols()).collect()
}

fn all_words(q: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..q).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

fn dist(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn rank(q: u8, w: &[u8]) -> usize {
    w.iter().fold(0, |r, &s| r * q as usize + s as usize)
}

/// Ball-cover counts by walking each radius-1 ball.
fn cover_counts(q: u8, n: usize, words: &[Vec<u8>]) -> Vec<u64> {
    let mut counts = vec![0u64; (q as usize).pow(n as u32)];
    for w in words {
        counts[rank(q, w)] += 1;
        for i in 0..n {
            for s in 0..q {
                if s != w[i] {
                    let mut v = w.clone();
                    v[i] = s;
                    counts[rank(q, &v)] += 1;
                }
            }
        }
    }
    counts
}

fn oracle_bounds() -> bool {
    let pack = |q: u128, n: u128, l: u128| q.pow(n as u32) * ((n + 1) * l - 1) / (n * n * (q - 1) + n * q);
    let dist2 = |q: u128, n: u128, l: u128| l * q.pow(n as u32) / (n * (q - 1) + q);
    let cover = |q: u128, n: u128, mu: u128| (q.pow(n as u32) * (n + 1) * mu).div_ceil(n * n * (q - 1) + n * q);
    let exact = (3u128.pow(39) * 39).is_multiple_of(39 * 39 * 2 + 39 * 3);
    pack(3, 3, 1) == 3
        && pack(3, 12, 1) == 19683
        && exact
        && pack(3, 39, 1) == 3u128.pow(35)
        && dist2(3, 3, 3) == 9
        && dist2(4, 4, 4) == 64
        && cover(3, 3, 6) == 24
}

fn oracle_optimality() -> bool {
    [(3u32, 2u32), (3, 3), (4, 2)].iter().all(|&(q, m)| {
        let code = shortened_hamming(q, m).unwrap().materialize().unwrap();
        let words = words_of(&code);
        let n = code.n() as usize;
        let counts = cover_counts(q as u8, n, &words);
        let size_ok = words.len() == (q as usize).pow(n as u32 - m);
        size_ok && counts.iter().all(|&c| c <= 1)
    })
}

fn max_two_fold_packing() -> usize {
    let words = all_words(3, 3);
    fn rec(start: usize, chosen: &mut Vec<usize>, words: &[Vec<u8>], best: &mut usize) {
        *best = (*best).max(chosen.len());
        for v in start..words.len() {
            if chosen.len() + words.len() - v <= *best {
                return;
            }
            if chosen.iter().any(|&u| dist(&words[u], &words[v]) < 2) {
                continue;
            }
            chosen.push(v);
            let picked: Vec<Vec<u8>> = chosen.iter().map(|&i| words[i].clone()).collect();
            if cover_counts(3, 3, &picked).iter().all(|&c| c <= 2) {
                rec(v + 1, chosen, words, best);
            }
            chosen.pop();
        }
    }
    let mut best = 0;
    rec(0, &mut Vec::new(), &words, &mut best);
    best
}

fn oracle_coset_packings() -> bool {
    (1..=3u32).all(|l| {
        let words = words_of(&coset_multifold_packing(3, 2, l).unwrap());
        words.len() == 3 * l as usize && cover_counts(3, 3, &words).iter().all(|&c| c <= l as u64)
    }) && max_two_fold_packing() == 6
}

fn oracle_complete_regularity() -> bool {
    let code = shortened_hamming(3, 2).unwrap().materialize().unwrap();
    let words = words_of(&code);
    let space = all_words(3, 3);
    let d: Vec<usize> = space
        .iter()
        .map(|v| words.iter().map(|c| dist(c, v)).min().unwrap())
        .collect();
    let mut rows: Vec<Option<[u64; 3]>> = vec![None; 3];
    for (i, v) in space.iter().enumerate() {
        let mut row = [0u64; 3];
        for (j, u) in space.iter().enumerate() {
            if dist(u, v) == 1 {
                row[d[j]] += 1;
            }
        }
        match rows[d[i]] {
            None => rows[d[i]] = Some(row),
            Some(r) if r == row => {}
            Some(_) => return false,
        }
    }
    rows == [Some([0, 6, 0]), Some([1, 3, 2]), Some([0, 6, 0])]
}

fn oracle_dual() -> bool {
    let code = shortened_hamming(3, 2).unwrap().materialize().unwrap();
    let words = words_of(&code);
    let mut weights = [0u64; 4];
    for y in all_words(3, 3) {
        let orthogonal = words
            .iter()
            .all(|c| c.iter().zip(&y).map(|(a, b)| (a * b) as u32).sum::<u32>() % 3 == 0);
        if orthogonal {
            weights[y.iter().filter(|&&s| s != 0).count()] += 1;
        }
    }
    weights == [1, 0, 6, 2]
}

fn oracle_complement_law() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    [(3u8, 3usize), (4, 2)].iter().all(|&(q, n)| {
        (0..5).all(|_| {
            let mut all = all_words(q, n);
            all.shuffle(&mut rng);
            let size = rng.gen_range(1..all.len());
            let (code, rest) = all.split_at(size);
            let lambda = *cover_counts(q, n, code).iter().max().unwrap();
            let mu = *cover_counts(q, n, rest).iter().min().unwrap();
            mu == (n as u64) * (q as u64 - 1) + 1 - lambda
        })
    })
}

fn run_binary_twice() -> bool {
    let bin = env!("CARGO_BIN_EXE_perfectlike");
    let run = move || {
        Command::new(bin)
            .args(["repro", "all", "--seed", "7"])
            .output()
            .expect("binary runs")
    };
    let a = thread::spawn(run);
    let b = thread::spawn(run);
    let (a, b) = (a.join().unwrap(), b.join().unwrap());
    a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout
}

fn main() -> ExitCode {
    let mut failed = 0;
    for &(id, title) in CRITERIA.iter() {
        let outcome = run_criterion(id, DEFAULT_SEED);
        let oracle = match id {
            1 => oracle_bounds(),
            2 => oracle_optimality(),
            3 => oracle_coset_packings(),
            4 => oracle_complete_regularity(),
            5 => oracle_dual(),
            11 => oracle_complement_law(),
            12 => run_binary_twice(),
            _ => true,
        };
        let pass = outcome.pass && oracle;
        if !pass {
            failed += 1;
            for line in &outcome.lines {
                println!("    {line}");
            }
        }
        println!(
            "criterion {id:>2} {} {title}{}",
            if pass { "PASS" } else { "FAIL" },
            if oracle { "" } else { " (oracle disagrees)" }
        );
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
