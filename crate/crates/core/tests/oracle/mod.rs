//! Reference implementations written directly from the definitions, used to
//! check the library. Columns are bitmasks with bit `x - 1` for letter `x`,
//! words are plain byte vectors.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

pub type W = Vec<u8>;

pub fn bit(x: u8) -> u32 {
    1 << (x - 1)
}

pub fn letters_of(mask: u32) -> Vec<u8> {
    (1..=32u8).filter(|&x| mask >> (x - 1) & 1 == 1).collect()
}

/// `x·γ`: replace the least letter `≥ x` by `x`, or add `x`.
pub fn act(x: u8, g: u32) -> u32 {
    let at_least = g & !(bit(x) - 1);
    let g = if at_least == 0 { g } else { g & !(at_least & at_least.wrapping_neg()) };
    g | bit(x)
}

pub fn act_word(w: &[u8], g: u32) -> u32 {
    w.iter().rev().fold(g, |g, &x| act(x, g))
}

pub fn transform(w: &[u8], n: usize) -> Vec<u32> {
    (0..1u32 << n).map(|g| act_word(w, g)).collect()
}

/// Breadth-first closure of the transformations of all words, each with a
/// shortest representative.
pub fn monoid(n: usize) -> Vec<(Vec<u32>, W)> {
    let id: Vec<u32> = (0..1u32 << n).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut out = vec![(id.clone(), Vec::new())];
    let mut queue = VecDeque::from([(id, Vec::new())]);
    while let Some((t, w)) = queue.pop_front() {
        for x in 1..=n as u8 {
            let next: Vec<u32> = (0..1u32 << n).map(|g| t[act(x, g) as usize]).collect();
            if seen.insert(next.clone()) {
                let mut v = w.clone();
                v.push(x);
                out.push((next.clone(), v.clone()));
                queue.push_back((next, v));
            }
        }
    }
    out
}

pub fn compose(s: &[u32], t: &[u32]) -> Vec<u32> {
    t.iter().map(|&g| s[g as usize]).collect()
}

/// Bell numbers through Stirling numbers of the second kind.
pub fn bell(n: usize) -> u128 {
    let mut s = vec![vec![0u128; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            s[i][k] = k as u128 * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    s[n].iter().sum()
}

pub fn words(n: usize, maxlen: usize) -> Vec<W> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..maxlen {
        let end = out.len();
        for i in start..end {
            for x in 1..=n as u8 {
                let mut v = out[i].clone();
                v.push(x);
                out.push(v);
            }
        }
        start = end;
    }
    out
}

pub fn support(w: &[u8]) -> u32 {
    w.iter().fold(0, |s, &x| s | bit(x))
}

pub fn delta(w: &[u8]) -> W {
    let mut supp = 0u32;
    let mut out = Vec::new();
    for &x in w {
        let above = supp & !(bit(x) | (bit(x) - 1));
        if above != 0 {
            out.push(above.trailing_zeros() as u8 + 1);
        }
        supp |= bit(x);
    }
    out
}

/// Rows of `N(w)` as sets, longest first: `Supp(w)` then the rows of `N(δ(w))`.
pub fn n_rows(w: &[u8]) -> Vec<u32> {
    let mut rows = Vec::new();
    let mut w = w.to_vec();
    while !w.is_empty() {
        rows.push(support(&w));
        w = delta(&w);
    }
    rows
}

/// Blocks `R_k, R_{k-1} ∖ R_k, ..., R_1 ∖ R_2`, sorted by minima.
pub fn partition_of_rows(rows: &[u32]) -> Vec<W> {
    let mut blocks: Vec<W> = (0..rows.len())
        .map(|i| letters_of(rows[i] & !rows.get(i + 1).copied().unwrap_or(0)))
        .collect();
    blocks.sort();
    blocks
}

pub fn pi(w: &[u8]) -> Vec<W> {
    partition_of_rows(&n_rows(w))
}

/// Row word of the N-tableau of a partition.
pub fn partition_row_word(blocks: &[W]) -> W {
    let mut sorted = blocks.to_vec();
    sorted.sort();
    let mut rows = Vec::new();
    let mut acc = 0u32;
    for b in sorted.iter().rev() {
        acc |= support(b);
        rows.push(acc);
    }
    rows.iter().flat_map(|&r| letters_of(r)).collect()
}

pub fn theta(w: &[u8], n: usize) -> W {
    w.iter().rev().map(|&x| n as u8 + 1 - x).collect()
}

/// Schensted row insertion; rows bottom first.
pub fn p_rows(w: &[u8]) -> Vec<W> {
    let mut rows: Vec<W> = Vec::new();
    for &x in w {
        let mut x = x;
        let mut i = 0;
        loop {
            if i == rows.len() {
                rows.push(vec![x]);
                break;
            }
            match rows[i].iter().position(|&y| y > x) {
                Some(j) => {
                    std::mem::swap(&mut rows[i][j], &mut x);
                    i += 1;
                }
                None => {
                    rows[i].push(x);
                    break;
                }
            }
        }
    }
    rows
}

pub fn p_columns(w: &[u8]) -> Vec<u32> {
    let rows = p_rows(w);
    let width = rows.first().map_or(0, |r| r.len());
    (0..width)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).fold(0, |s, &x| s | bit(x)))
        .collect()
}

pub fn shape(w: &[u8]) -> Vec<usize> {
    p_rows(w).iter().map(|r| r.len()).collect()
}

/// Longest strictly decreasing subsequence by dynamic programming.
pub fn longest_decreasing(w: &[u8]) -> usize {
    let mut best = vec![1usize; w.len()];
    for i in 0..w.len() {
        for j in 0..i {
            if w[j] > w[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Compositions `c` covered by `d`: one part grows by one, or a part 1 is appended.
pub fn composition_covers(c: &[usize], d: &[usize]) -> bool {
    if d.len() == c.len() + 1 {
        return d[..c.len()] == *c && d[c.len()] == 1;
    }
    d.len() == c.len() && c.iter().zip(d).map(|(a, b)| b.wrapping_sub(*a)).filter(|&x| x != 0).eq([1])
}

/// Groups items by key, returning the number of groups.
pub fn class_count<K: std::hash::Hash + Eq, I>(items: impl IntoIterator<Item = I>, key: impl Fn(&I) -> K) -> usize {
    let mut m: HashMap<K, ()> = HashMap::new();
    for i in items {
        m.insert(key(&i), ());
    }
    m.len()
}
