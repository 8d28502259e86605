//! The oriented matroid of a realized arrangement: signed circuits, flats,
//! the characteristic polynomial and matroid chordality.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::arrangement::{bits, mask_from, Arrangement};
use crate::error::{Error, Result};
use crate::exact::{dot, kernel_basis, QMatrix, Rational};

/// A minimal dependent set of normals with the signs of its (unique up to
/// scaling) linear dependence. The smallest support element is always `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCircuit {
    /// Support as a bitmask over hyperplane indices.
    pub support: u64,
    /// Bits of support elements carrying a positive coefficient.
    pub positive: u64,
}

impl SignedCircuit {
    pub fn len(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.support == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        bits(self.support).collect()
    }

    /// Bits of support elements carrying a negative coefficient.
    pub fn negative(&self) -> u64 {
        self.support & !self.positive
    }

    pub fn max_element(&self) -> usize {
        63 - self.support.leading_zeros() as usize
    }
}

/// A closed set of hyperplanes together with its rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flat {
    pub mask: u64,
    pub rank: usize,
}

impl Flat {
    pub fn elements(&self) -> Vec<usize> {
        bits(self.mask).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }
}

/// Echelon basis of a growing span, remembering how each basis row is
/// written in terms of the original vectors.
struct SpanTracker {
    rows: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
}

impl SpanTracker {
    fn new() -> Self {
        SpanTracker { rows: Vec::new() }
    }

    /// Reduces `v` against the basis. Returns the residue and the
    /// coefficients `c` (one per inserted vector) with `v = residue + sum c_k v_k`.
    fn reduce(&self, v: &[Rational], slots: usize) -> (Vec<Rational>, Vec<Rational>) {
        let mut residue = v.to_vec();
        let mut combo = vec![Rational::zero(); slots];
        for (pivot, row, row_combo) in &self.rows {
            let f = residue[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in residue.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (c, y) in combo.iter_mut().zip(row_combo) {
                if !y.is_zero() {
                    *c += &f * y;
                }
            }
        }
        (residue, combo)
    }

    /// Adds a vector already reduced to `residue` with coefficient trail `combo`.
    fn push(&mut self, residue: Vec<Rational>, mut combo: Vec<Rational>, slot: usize) {
        let pivot = residue
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero residue");
        let inv = residue[pivot].recip();
        let row: Vec<Rational> = residue.iter().map(|x| x * &inv).collect();
        // row = (v - sum combo_k v_k) / residue[pivot]
        for c in combo.iter_mut() {
            *c = -(&*c * &inv);
        }
        combo[slot] = inv;
        self.rows.push((pivot, row, combo));
    }

    fn pop(&mut self) {
        self.rows.pop();
    }
}

/// All signed circuits, ordered by support (as sorted index lists, shortest first).
pub fn circuits(arr: &Arrangement) -> Vec<SignedCircuit> {
    let r = arr.rank();
    let n = arr.len();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(r + 1);
    let mut tracker = SpanTracker::new();

    fn walk(
        arr: &Arrangement,
        start: usize,
        chosen: &mut Vec<usize>,
        tracker: &mut SpanTracker,
        out: &mut Vec<SignedCircuit>,
    ) {
        let slots = arr.rank();
        for j in start..arr.len() {
            let (residue, combo) = tracker.reduce(arr.coords(j), slots);
            if residue.iter().any(|x| !x.is_zero()) {
                if chosen.len() < slots {
                    let slot = chosen.len();
                    chosen.push(j);
                    tracker.push(residue, combo, slot);
                    walk(arr, j + 1, chosen, tracker, out);
                    tracker.pop();
                    chosen.pop();
                }
                continue;
            }
            // a_j = sum combo_k a_{chosen[k]}; a circuit iff every coefficient is nonzero.
            let coeffs = &combo[..chosen.len()];
            if coeffs.iter().any(Rational::is_zero) {
                continue;
            }
            // Dependence: sum combo_k a_k - a_j = 0, normalized so chosen[0] is positive.
            let flip = coeffs[0].is_negative();
            let mut support = 1u64 << j;
            let mut positive = if flip { 1u64 << j } else { 0 };
            for (k, &idx) in chosen.iter().enumerate() {
                support |= 1 << idx;
                if coeffs[k].is_positive() != flip {
                    positive |= 1 << idx;
                }
            }
            out.push(SignedCircuit { support, positive });
        }
    }

    if n > 0 {
        walk(arr, 0, &mut chosen, &mut tracker, &mut out);
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.elements().cmp(&b.elements()))
    });
    out
}

/// Histogram of circuit sizes.
pub fn circuit_census(circuits: &[SignedCircuit]) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for c in circuits {
        *census.entry(c.len()).or_insert(0) += 1;
    }
    census
}

/// Vectors spanning the annihilator of `span{coords(i) : i in members}`.
fn annihilator(arr: &Arrangement, members: &[usize]) -> Vec<Vec<Rational>> {
    let r = arr.rank();
    if members.is_empty() {
        return (0..r)
            .map(|i| {
                let mut e = vec![Rational::zero(); r];
                e[i] = Rational::one();
                e
            })
            .collect();
    }
    let rows: Vec<Vec<Rational>> = members.iter().map(|&i| arr.coords(i).to_vec()).collect();
    kernel_basis(&QMatrix::from_rows(rows)).columns()
}

/// Closure of `span{coords(i) : i in members}`: every hyperplane whose normal lies in it.
fn closure_from_annihilator(arr: &Arrangement, ann: &[Vec<Rational>]) -> u64 {
    (0..arr.len())
        .filter(|&j| ann.iter().all(|w| dot(w, arr.coords(j)).is_zero()))
        .fold(0u64, |m, j| m | (1 << j))
}

/// Closure of an arbitrary set of hyperplanes.
pub fn closure(arr: &Arrangement, mask: u64) -> u64 {
    let members: Vec<usize> = bits(mask).collect();
    closure_from_annihilator(arr, &annihilator(arr, &members))
}

/// Rank of an arbitrary set of hyperplanes.
pub fn rank_of(arr: &Arrangement, mask: u64) -> usize {
    let members: Vec<usize> = bits(mask).collect();
    if members.is_empty() {
        return 0;
    }
    arr.rank() - annihilator(arr, &members).len()
}

/// Flats of every rank `0..=max_rank`, each list sorted by element lists.
///
/// Rank `k+1` flats are generated as closures of `F + j` over rank-`k` flats
/// `F`; each closure computation also marks all of its new elements so every
/// cover of `F` is produced once per `F`.
pub fn flats_up_to_rank(arr: &Arrangement, max_rank: usize) -> Vec<Vec<Flat>> {
    let max_rank = max_rank.min(arr.rank());
    // (mask, independent spanning subset)
    let mut levels: Vec<Vec<(u64, Vec<usize>)>> = vec![vec![(0, Vec::new())]];
    for k in 0..max_rank {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next = Vec::new();
        for (mask, basis) in &levels[k] {
            let mut covered = *mask;
            for j in 0..arr.len() {
                if covered >> j & 1 == 1 {
                    continue;
                }
                let mut b = basis.clone();
                b.push(j);
                let g = closure_from_annihilator(arr, &annihilator(arr, &b));
                covered |= g;
                if seen.insert(g) {
                    next.push((g, b));
                }
            }
        }
        next.sort_by_key(|(m, _)| bits(*m).collect::<Vec<_>>());
        levels.push(next);
    }
    levels
        .into_iter()
        .enumerate()
        .map(|(rank, lvl)| {
            lvl.into_iter()
                .map(|(mask, _)| Flat { mask, rank })
                .collect()
        })
        .collect()
}

/// All closed flats of rank `k`.
pub fn flats_of_rank(arr: &Arrangement, k: usize) -> Result<Vec<Flat>> {
    if k == 0 || k > arr.rank() {
        return Err(Error::ContractViolation(format!(
            "flat rank {k} outside 1..={}",
            arr.rank()
        )));
    }
    Ok(flats_up_to_rank(arr, k).swap_remove(k))
}

/// Coefficients of the characteristic polynomial, highest degree first
/// (`[1, c_1, ..., c_r]` for `t^r + c_1 t^{r-1} + ... + c_r`), computed by
/// Möbius recursion over the full lattice of flats.
pub fn characteristic_polynomial(arr: &Arrangement) -> Vec<i128> {
    let r = arr.rank();
    let levels = flats_up_to_rank(arr, r);
    let mut coeffs = vec![0i128; r + 1];
    let mut lower: Vec<(u64, i128)> = Vec::new();
    for (rank, level) in levels.iter().enumerate() {
        let mut current = Vec::with_capacity(level.len());
        for flat in level {
            let mu = if rank == 0 {
                1
            } else {
                -lower
                    .iter()
                    .filter(|(m, _)| m & !flat.mask == 0)
                    .map(|(_, mu)| *mu)
                    .sum::<i128>()
            };
            coeffs[rank] += mu;
            current.push((flat.mask, mu));
        }
        lower.extend(current);
    }
    coeffs
}

/// `|chi(-1)|`, the number of chambers by Zaslavsky's theorem.
pub fn zaslavsky_chamber_count(chi: &[i128]) -> i128 {
    // chi(-1) = sum c_i (-1)^{r-i}; (-1)^r chi(-1) = sum c_i (-1)^i
    chi.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { *c } else { -*c })
        .sum()
}

/// Outcome of the chordality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chordality {
    pub verdict: bool,
    /// A circuit of size at least 4 admitting no splitting pair.
    pub witness: Option<Vec<usize>>,
}

/// Whether every circuit `C` with `|C| >= 4` splits as `(D1 ∪ D2) \ (D1 ∩ D2)`
/// for circuits with `|D1 ∩ D2| = 1`.
pub fn is_chordal(arr: &Arrangement) -> Chordality {
    is_chordal_with(arr, &circuits(arr))
}

pub fn is_chordal_with(arr: &Arrangement, circuits: &[SignedCircuit]) -> Chordality {
    let supports: HashSet<u64> = circuits.iter().map(|c| c.support).collect();
    for c in circuits.iter().filter(|c| c.len() >= 4) {
        if !splits(arr, c.support, &supports) {
            return Chordality {
                verdict: false,
                witness: Some(c.elements()),
            };
        }
    }
    Chordality {
        verdict: true,
        witness: None,
    }
}

fn splits(arr: &Arrangement, c: u64, supports: &HashSet<u64>) -> bool {
    // The shared element must lie in the closure of C (otherwise C + h has a
    // single circuit, namely C).
    let extra = closure(arr, c) & !c;
    let elems: Vec<usize> = bits(c).collect();
    let rest: Vec<usize> = elems[1..].to_vec();
    let first = 1u64 << elems[0];
    for h in bits(extra) {
        let hb = 1u64 << h;
        // Part containing the smallest element of C; both parts need >= 2 elements.
        for sub in 0u64..(1u64 << rest.len()) {
            let part = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| sub >> i & 1 == 1)
                .fold(first, |m, (_, &e)| m | (1 << e));
            let other = c & !part;
            if part.count_ones() < 2 || other.count_ones() < 2 {
                continue;
            }
            if supports.contains(&(part | hb)) && supports.contains(&(other | hb)) {
                return true;
            }
        }
    }
    false
}

/// Signed circuit supported on exactly `members`, if those normals form one.
pub fn circuit_on(arr: &Arrangement, members: &[usize]) -> Option<SignedCircuit> {
    let k = kernel_basis(&arr.coordinate_matrix().select_columns(members));
    if k.cols() != 1 {
        return None;
    }
    let v = k.column(0);
    if v.iter().any(Rational::is_zero) {
        return None;
    }
    let flip = v[0].is_negative();
    let positive = members
        .iter()
        .zip(&v)
        .filter(|(_, x)| x.is_positive() != flip)
        .fold(0u64, |m, (&i, _)| m | (1 << i));
    Some(SignedCircuit {
        support: mask_from(members),
        positive,
    })
}
