//! Oracles shared by the integration tests. Everything here works on small
//! integer normals with its own arithmetic and never calls into the library
//! beyond building an `Arrangement`.

#![allow(dead_code)]

use std::collections::HashSet;

use arrcheck::Arrangement;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Normals = Vec<Vec<i64>>;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x as i128)) as i64;
    let first = v.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    let s = if first < 0 { -g } else { g };
    v.iter().map(|&x| x / s).collect()
}

/// A random list of `n` pairwise non-proportional nonzero integer normals in
/// dimension `d` with entries in `[-range, range]`.
pub fn random_normals(rng: &mut ChaCha8Rng, n: usize, d: usize, range: i64) -> Normals {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < n && attempts < 10_000 {
        attempts += 1;
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-range..=range)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        if seen.insert(primitive(&v)) {
            out.push(v);
        }
    }
    out
}

/// The seeded random corpus: `count` arrangements with `n <= max_n`, `d <= max_d`.
pub fn corpus(seed: u64, count: usize, max_n: usize, max_d: usize) -> Vec<Normals> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(2..=max_d);
            let n = rng.gen_range(2..=max_n);
            random_normals(&mut rng, n, d, 2)
        })
        .collect()
}

pub fn arrangement(normals: &Normals) -> Arrangement {
    Arrangement::from_integer_normals(normals).expect("valid corpus arrangement")
}

/// Whether `{x : <v, x> > 0 for all v in rows}` is nonempty, by Fourier-Motzkin
/// elimination over the integers.
pub fn strictly_feasible(rows: &[Vec<i128>]) -> bool {
    let mut system: Vec<Vec<i128>> = rows.to_vec();
    let d = system.first().map_or(0, Vec::len);
    for var in 0..d {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in system {
            match r[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => rest.push(r),
            }
        }
        for p in &pos {
            for q in &neg {
                let (a, b) = (p[var], -q[var]);
                let mut c: Vec<i128> = p.iter().zip(q).map(|(x, y)| b * x + a * y).collect();
                let g = c.iter().fold(0, |g, &x| gcd(g, x));
                if g > 1 {
                    c.iter_mut().for_each(|x| *x /= g);
                }
                rest.push(c);
            }
        }
        rest.sort();
        rest.dedup();
        system = rest;
    }
    // Only the constant inequalities 0 > 0 remain.
    system.is_empty()
}

/// Feasibility of the sign pattern `plus` (bit `i` for `subset[i]`) on `subset`.
pub fn pattern_feasible(normals: &Normals, subset: &[usize], plus: u64) -> bool {
    let rows: Vec<Vec<i128>> = subset
        .iter()
        .enumerate()
        .map(|(i, &h)| {
            let s = if plus >> i & 1 == 1 { 1 } else { -1 };
            normals[h].iter().map(|&x| s * x as i128).collect()
        })
        .collect();
    strictly_feasible(&rows)
}

pub fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// The sign vectors (as `+` masks) with a nonempty cone on every subset of
/// size `min(k + 1, n)`, by brute force over all `2^n` vectors.
pub fn brute_sigma_set(normals: &Normals, k: usize) -> Vec<u64> {
    let n = normals.len();
    let size = (k + 1).min(n);
    let tables: Vec<(Vec<usize>, Vec<bool>)> = subsets_of_size(n, size)
        .into_iter()
        .map(|s| {
            let ok = (0..1u64 << size)
                .map(|p| pattern_feasible(normals, &s, p))
                .collect();
            (s, ok)
        })
        .collect();
    (0..1u64 << n)
        .filter(|&eps| {
            tables.iter().all(|(s, ok)| {
                let local = s
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (i, &h)| acc | ((eps >> h & 1) as usize) << i);
                ok[local]
            })
        })
        .collect()
}

pub fn brute_sigma(normals: &Normals, k: usize) -> u128 {
    brute_sigma_set(normals, k).len() as u128
}

/// Rank of a set of integer vectors by fraction-free elimination.
pub fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = a * *x - b * y;
                }
                let g = m[i].iter().fold(0, |g, &x| gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_of_mask(normals: &Normals, mask: u64) -> usize {
    let rows: Vec<Vec<i64>> = (0..normals.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| normals[i].clone())
        .collect();
    rank_of(&rows)
}

/// Whitney's subset expansion: `w[i] = sum over S with rank i of (-1)^|S|`.
/// These are the signed coefficients of `chi(t) = sum_i w[i] t^(r - i)`.
pub fn whitney_numbers(normals: &Normals) -> Vec<i128> {
    let n = normals.len();
    let r = rank_of(normals);
    let mut w = vec![0i128; r + 1];
    for mask in 0..1u64 << n {
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        w[rank_of_mask(normals, mask)] += sign;
    }
    w
}

/// `(-1)^r chi(-1)`, the number of chambers by Zaslavsky's theorem.
pub fn zaslavsky(normals: &Normals) -> u128 {
    whitney_numbers(normals)
        .iter()
        .map(|w| w.unsigned_abs())
        .sum()
}

/// Graph chordality by repeatedly deleting a simplicial vertex.
pub fn graph_is_chordal(vertices: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![HashSet::new(); vertices];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut alive: HashSet<usize> = (0..vertices).collect();
    while !alive.is_empty() {
        let simplicial = alive.iter().copied().find(|&v| {
            let nb: Vec<usize> = adj[v]
                .iter()
                .copied()
                .filter(|u| alive.contains(u))
                .collect();
            nb.iter()
                .enumerate()
                .all(|(i, &a)| nb[i + 1..].iter().all(|b| adj[a].contains(b)))
        });
        match simplicial {
            Some(v) => {
                alive.remove(&v);
            }
            None => return false,
        }
    }
    true
}

/// A random simple graph on `vertices` vertices with at most `max_edges` edges.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    vertices: usize,
    max_edges: usize,
) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|a| (a + 1..vertices).map(move |b| (a, b)))
        .collect();
    all.shuffle(rng);
    let m = rng.gen_range(1..=all.len().min(max_edges));
    let mut edges = all[..m].to_vec();
    edges.sort();
    edges
}

/// Multilinear expansion of `prod_{i in S} e_i^{eps_i}` with `e^- = 1 - e`:
/// monomial mask to coefficient.
pub fn expand_indicator(support: &[usize], plus: u64) -> Vec<(u64, i64)> {
    let mut poly: Vec<(u64, i64)> = vec![(0, 1)];
    for (i, &h) in support.iter().enumerate() {
        let mut next = Vec::new();
        for &(m, c) in &poly {
            if plus >> i & 1 == 1 {
                next.push((m | 1 << h, c));
            } else {
                next.push((m, c));
                next.push((m | 1 << h, -c));
            }
        }
        poly = next;
    }
    poly
}

/// Degree `|S| - 1` part of `f^eps - (-1)^|S| f^{-eps}`.
pub fn cordovil_symbol(support: &[usize], plus: u64) -> Vec<(u64, i64)> {
    let size = support.len();
    let full = (1u64 << size) - 1;
    let c: i64 = if size.is_multiple_of(2) { -1 } else { 1 };
    let mut acc = std::collections::BTreeMap::new();
    for (m, v) in expand_indicator(support, plus) {
        *acc.entry(m).or_insert(0) += v;
    }
    for (m, v) in expand_indicator(support, full & !plus) {
        *acc.entry(m).or_insert(0) += c * v;
    }
    acc.into_iter()
        .filter(|&(m, v)| v != 0 && m.count_ones() as usize + 1 == size)
        .collect()
}

fn rank_rational(rows: Vec<Vec<BigRational>>) -> usize {
    let mut m = rows;
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / &m[rank][c];
        let pivot: Vec<BigRational> = m[rank].iter().map(|x| x * &inv).collect();
        for i in rank + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

fn rank_mod(rows: Vec<Vec<i64>>, p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let inv = |a: i64| (1..p).find(|&b| a * b % p == 1).expect("unit");
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let s = inv(m[rank][c]);
        let pivot: Vec<i64> = m[rank].iter().map(|x| x * s % p).collect();
        for i in rank + 1..m.len() {
            let f = m[i][c];
            if f != 0 {
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dense degree-by-degree dimensions of `J_k` in `F[e]/(e^2)`, generated by
/// the symbols of every empty cone `(S, eps)` with `|S| <= k + 1`. `prime = 0`
/// means the rationals. Returns `dim (J_k)_d` for `d = 0..=max_degree`.
pub fn dense_cordovil_dims(
    normals: &Normals,
    k: usize,
    prime: i64,
    max_degree: usize,
) -> Vec<usize> {
    let n = normals.len();
    let mut symbols: Vec<Vec<(u64, i64)>> = Vec::new();
    for size in 1..=(k + 1).min(n) {
        for s in subsets_of_size(n, size) {
            for plus in 0..1u64 << size {
                if !pattern_feasible(normals, &s, plus) {
                    symbols.push(cordovil_symbol(&s, plus));
                }
            }
        }
    }
    (0..=max_degree)
        .map(|d| {
            let monomials: Vec<u64> = (0..1u64 << n)
                .filter(|m| m.count_ones() as usize == d)
                .collect();
            let index = |m: u64| monomials.binary_search(&m).ok();
            let mut rows: Vec<Vec<i64>> = Vec::new();
            for sym in &symbols {
                let Some(&(first, _)) = sym.first() else {
                    continue;
                };
                let sdeg = first.count_ones() as usize;
                if sdeg > d {
                    continue;
                }
                for t in (0..1u64 << n).filter(|t| t.count_ones() as usize == d - sdeg) {
                    let mut row = vec![0i64; monomials.len()];
                    let mut any = false;
                    for &(m, c) in sym {
                        if m & t == 0 {
                            row[index(m | t).unwrap()] += c;
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
            if rows.is_empty() {
                0
            } else if prime == 0 {
                rank_rational(
                    rows.into_iter()
                        .map(|r| {
                            r.into_iter()
                                .map(|x| BigRational::from_integer(x.into()))
                                .collect()
                        })
                        .collect(),
                )
            } else {
                rank_mod(rows, prime)
            }
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
