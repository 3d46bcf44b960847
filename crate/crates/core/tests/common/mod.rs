#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use assoc_coherence::complex::TwoComplex;
use assoc_coherence::Assoc;
use proptest::test_runner::{Config, RngSeed};

pub const SEED: u64 = 0x5eed_2024;

pub fn proptest_config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Deterministic tree with `n` leaves shaped by `choices`.
pub fn tree_from_choices(n: usize, choices: &mut impl Iterator<Item = u8>) -> Assoc {
    if n <= 1 {
        return Assoc::Leaf;
    }
    let c = choices.next().unwrap_or(0) as usize;
    let k = 1 + c % (n - 1);
    let l = tree_from_choices(k, choices);
    let r = tree_from_choices(n - k, choices);
    Assoc::node(l, r)
}

/// Catalan numbers from the convolution recurrence.
pub fn catalan_recurrence(n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[1] = 1;
    for m in 2..=n {
        c[m] = (1..m).map(|k| c[k] * c[m - k]).sum();
    }
    c
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Squares counted from the Hasse graph alone: pairs of distinct directed
/// two-step paths with common ends.
pub fn squares_from_graph(cx: &TwoComplex) -> usize {
    let mut total = 0;
    for v in 0..cx.vertices.len() {
        let mut two_paths: HashMap<usize, usize> = HashMap::new();
        for &e1 in cx.out_edges(v) {
            let mid = cx.edges[e1].target;
            for &e2 in cx.out_edges(mid) {
                *two_paths.entry(cx.edges[e2].target).or_default() += 1;
            }
        }
        total += two_paths.values().map(|&k| k * (k - 1) / 2).sum::<usize>();
    }
    total
}

/// Number of `a(b(cd))` patterns over all bracketings, by direct recursion.
pub fn pentagon_patterns(t: &Assoc) -> usize {
    match t {
        Assoc::Leaf => 0,
        Assoc::Node(l, r) => {
            let here = match r.as_ref() {
                Assoc::Node(_, rr) => usize::from(!rr.is_leaf()),
                Assoc::Leaf => 0,
            };
            here + pentagon_patterns(l) + pentagon_patterns(r)
        }
    }
}

/// Rank over `GF(p)` for a large prime; equals the rational rank for
/// these small integer matrices with overwhelming likelihood and serves as
/// an independent check of the exact elimination.
pub fn rank_mod_p(ncols: usize, rows: &[Vec<(usize, i64)>]) -> usize {
    const P: i64 = 1_000_000_007;
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![0i64; ncols];
            for &(c, v) in r {
                d[c] = (d[c] + v).rem_euclid(P);
            }
            d
        })
        .collect();
    let pow = |mut b: i64, mut e: i64| {
        let mut r = 1i64;
        b %= P;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], P - 2);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % P;
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                    *x = (*x - f * p).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Amalgamation groups (`<i,1,k>:` headers) are compared as a set; all
/// other lines keep their order.
pub fn normalize_table(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut groups: Vec<Vec<String>> = Vec::new();
    let flush = |groups: &mut Vec<Vec<String>>, out: &mut Vec<String>| {
        groups.sort();
        for g in groups.drain(..) {
            out.extend(g);
        }
    };
    for line in text.lines().map(str::trim_end).filter(|l| !l.is_empty()) {
        let is_amalgam_header = line.starts_with('<') && line.ends_with(':');
        if is_amalgam_header {
            groups.push(vec![line.to_string()]);
        } else if line.starts_with("  ") && !groups.is_empty() {
            groups
                .last_mut()
                .expect("open group")
                .push(line.to_string());
        } else {
            flush(&mut groups, &mut out);
            out.push(line.to_string());
        }
    }
    flush(&mut groups, &mut out);
    out
}

/// `None` when equal, otherwise a unified-style listing of differences.
pub fn table_diff(expected: &str, actual: &str) -> Option<String> {
    let e = normalize_table(expected);
    let a = normalize_table(actual);
    if e == a {
        return None;
    }
    let mut d = String::new();
    for i in 0..e.len().max(a.len()) {
        match (e.get(i), a.get(i)) {
            (Some(x), Some(y)) if x == y => {}
            (x, y) => {
                if let Some(x) = x {
                    d.push_str(&format!("-{x}\n"));
                }
                if let Some(y) = y {
                    d.push_str(&format!("+{y}\n"));
                }
            }
        }
    }
    Some(d)
}

pub mod props;
