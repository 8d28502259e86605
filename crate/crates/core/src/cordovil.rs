//! The graded ring `F[e_H] / (e_H^2)`, the symbols generating the ideals
//! `J_k`, their graded dimensions and the Cordovil quadraticity verdict.
//!
//! The symbol of an empty cone `(S, eps)` is the degree-`|S|-1` part of the
//! multilinear expansion of `f_S^eps - (-1)^|S| f_S^{-eps}`, which equals
//! `+-sum_{H in S} eps_H e_{S - H}`. If `S` contains a signed circuit `C` then
//! the symbol of `S` is `e_{S-C}` times the symbol of `C` plus monomials
//! containing `e_C`, and `e_C = eps_H e_H * symbol(C)` for any `H` in `C`.
//! So `J_k` is generated by the symbols of circuits with at most `k+1`
//! elements, and its degree-`d` piece is spanned by the monomials containing
//! such a circuit together with the products `e_T * symbol(C)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::arrangement::{bits, Arrangement};
use crate::cone::{self, FeasibilityAnswer};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, PrimeField, RationalField};
use crate::matroid::{circuits, SignedCircuit};
use crate::vg::{expand_pair, Generator};

/// A homogeneous element on the squarefree monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeForm<E> {
    pub degree: usize,
    /// Monomial (as a bitmask) to nonzero coefficient.
    pub terms: BTreeMap<u64, E>,
}

impl<E> SquarefreeForm<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The symbol attached to an empty cone `(S, eps)`.
pub fn symbol<F: Field>(
    arr: &Arrangement,
    gen: &Generator,
    field: &F,
) -> Result<SquarefreeForm<F::Elem>> {
    let signed: Vec<Vec<_>> = bits(gen.support)
        .map(|h| {
            let a = arr.normal(h);
            if gen.plus >> h & 1 == 1 {
                a.to_vec()
            } else {
                a.iter().map(|x| -x).collect()
            }
        })
        .collect();
    if signed.is_empty() {
        return Err(Error::ContractViolation(
            "symbol of an empty support".into(),
        ));
    }
    if let FeasibilityAnswer::Nonempty { .. } = cone::decide(&signed) {
        return Err(Error::ContractViolation(format!(
            "cone on {:?} with these signs is not empty",
            gen.elements()
        )));
    }
    Ok(symbol_unchecked(gen, field))
}

fn symbol_unchecked<F: Field>(gen: &Generator, field: &F) -> SquarefreeForm<F::Elem> {
    let size = gen.len();
    let c = if size.is_multiple_of(2) { -1 } else { 1 };
    let terms = expand_pair(gen.support, gen.plus, c)
        .into_iter()
        .filter(|(m, _)| m.count_ones() as usize + 1 == size)
        .map(|(m, v)| (m, field.from_i64(v)))
        .filter(|(_, v)| !field.is_zero(v))
        .collect();
    SquarefreeForm {
        degree: size - 1,
        terms,
    }
}

/// Incremental row echelon form over sparse rows; each stored row has
/// leading coefficient one.
struct Echelon<'a, F: Field> {
    field: &'a F,
    pivots: HashMap<u32, Vec<(u32, F::Elem)>>,
}

impl<'a, F: Field> Echelon<'a, F> {
    fn new(field: &'a F) -> Self {
        Echelon {
            field,
            pivots: HashMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` (sorted by column) and stores it if independent.
    fn insert(&mut self, mut row: Vec<(u32, F::Elem)>) -> bool {
        let f = self.field;
        while let Some((lead, coeff)) = row.first().cloned() {
            let Some(pivot) = self.pivots.get(&lead) else {
                let inv = f.inv(&coeff);
                for (_, v) in row.iter_mut() {
                    *v = f.mul(v, &inv);
                }
                self.pivots.insert(lead, row);
                return true;
            };
            // row -= coeff * pivot
            let mut out = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < pivot.len() {
                let ci = row.get(i).map_or(u32::MAX, |t| t.0);
                let cj = pivot.get(j).map_or(u32::MAX, |t| t.0);
                if ci < cj {
                    out.push(row[i].clone());
                    i += 1;
                } else if cj < ci {
                    out.push((cj, f.neg(&f.mul(&coeff, &pivot[j].1))));
                    j += 1;
                } else {
                    let v = f.sub(&row[i].1, &f.mul(&coeff, &pivot[j].1));
                    if !f.is_zero(&v) {
                        out.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            row = out;
        }
        false
    }
}

fn for_each_subset_of(pool: &[usize], size: usize, mut visit: impl FnMut(u64)) {
    fn rec(pool: &[usize], start: usize, left: usize, acc: u64, visit: &mut dyn FnMut(u64)) {
        if left == 0 {
            visit(acc);
            return;
        }
        for i in start..=pool.len() - left {
            rec(pool, i + 1, left - 1, acc | 1 << pool[i], visit);
        }
    }
    if size <= pool.len() {
        rec(pool, 0, size, 0, &mut visit);
    }
}

/// Shared data for the graded computations of one arrangement.
struct Graded<'a> {
    n: usize,
    rank: usize,
    /// Sorted by size.
    circuits: &'a [SignedCircuit],
}

impl Graded<'_> {
    /// Size of the smallest circuit inside each degree-`d` monomial that
    /// contains one.
    fn smallest_circuits(&self, d: usize) -> HashMap<u64, usize> {
        let mut out: HashMap<u64, usize> = HashMap::new();
        for c in self.circuits.iter().filter(|c| c.len() <= d) {
            let pool: Vec<usize> = (0..self.n).filter(|&i| c.support >> i & 1 == 0).collect();
            for_each_subset_of(&pool, d - c.len(), |t| {
                let e = out.entry(c.support | t).or_insert(usize::MAX);
                *e = (*e).min(c.len());
            });
        }
        out
    }

    /// `dim (J_k)_d` for each `k` in the increasing list `ks`.
    ///
    /// Monomials containing a circuit of size at most `ks[0] + 1` lie in every
    /// requested ideal and are counted directly; the remaining ones index the
    /// columns of a single elimination that receives the generators of
    /// `J_{ks[0]}, J_{ks[1]}, ...` in turn.
    fn dims_in_degree<F: Field>(&self, d: usize, ks: &[usize], field: &F) -> Vec<usize> {
        let smallest = self.smallest_circuits(d);
        let base = ks[0] + 1;
        let all: Vec<usize> = (0..self.n).collect();
        let mut free = Vec::new();
        for_each_subset_of(&all, d, |m| {
            if smallest.get(&m).is_none_or(|&c| c > base) {
                free.push(m);
            }
        });
        free.sort_by_key(|m| bits(*m).collect::<Vec<_>>());
        let killed = binomial(self.n, d) - free.len();
        let columns: HashMap<u64, u32> = free
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, (free.len() - 1 - i) as u32))
            .collect();
        let mut ech = Echelon::new(field);
        let mut out = Vec::with_capacity(ks.len());
        let mut done = base;
        for &k in ks {
            let bound = k + 1;
            if bound > done {
                for &m in &free {
                    if smallest.get(&m).is_some_and(|&c| c > done && c <= bound) {
                        ech.insert(vec![(columns[&m], field.one())]);
                    }
                }
            }
            let lo = if out.is_empty() { 0 } else { done };
            for c in self
                .circuits
                .iter()
                .filter(|c| c.len() > lo && c.len() <= bound && c.len() <= d + 1)
            {
                let sym = symbol_unchecked(
                    &Generator {
                        support: c.support,
                        plus: c.positive,
                    },
                    field,
                );
                let pool: Vec<usize> = (0..self.n).filter(|&i| c.support >> i & 1 == 0).collect();
                for_each_subset_of(&pool, d + 1 - c.len(), |t| {
                    let mut row: Vec<(u32, F::Elem)> = sym
                        .terms
                        .iter()
                        .filter_map(|(m, v)| columns.get(&(m | t)).map(|&col| (col, v.clone())))
                        .collect();
                    if !row.is_empty() {
                        row.sort_by_key(|e| e.0);
                        ech.insert(row);
                    }
                });
            }
            done = done.max(bound);
            out.push(killed + ech.rank());
        }
        out
    }
}

/// `dim (J_k)_d` for `d = 0..=r`.
pub fn graded_ideal_dims<F: Field>(arr: &Arrangement, k: usize, field: &F) -> Result<Vec<usize>> {
    if k == 0 || k > arr.rank() {
        return Err(Error::ContractViolation(format!(
            "k = {k} outside 1..={}",
            arr.rank()
        )));
    }
    let circ = circuits(arr);
    let g = Graded {
        n: arr.len(),
        rank: arr.rank(),
        circuits: &circ,
    };
    Ok((0..=g.rank)
        .map(|d| g.dims_in_degree(d, &[k], field)[0])
        .collect())
}

/// Everything the report needs about the Cordovil algebra over one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CordovilSummary {
    pub field: FieldKind,
    pub quadratic: bool,
    pub min_generator_degrees: BTreeSet<usize>,
    /// `dim (J_2)_d`, `d = 0..=r`.
    pub j2_dims: Vec<usize>,
    /// `dim (J_r)_d`, `d = 0..=r`.
    pub jr_dims: Vec<usize>,
    /// `dim (R/J_r)_d`, `d = 0..=r`.
    pub hilbert: Vec<usize>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn cordovil_summary<F: Field>(
    arr: &Arrangement,
    field: &F,
    kind: FieldKind,
) -> Result<CordovilSummary> {
    let circ = circuits(arr);
    let r = arr.rank();
    let g = Graded {
        n: arr.len(),
        rank: r,
        circuits: &circ,
    };
    let mut j2_dims = Vec::with_capacity(r + 1);
    let mut jr_dims = Vec::with_capacity(r + 1);
    let mut min_generator_degrees = BTreeSet::new();
    for d in 0..=r {
        // J_2, then J_{d-1} (everything generated below degree d), then J_r
        let mut ks = vec![2.min(r)];
        if d >= 3 && d - 1 > ks[0] && d - 1 < r {
            ks.push(d - 1);
        }
        if r > ks[ks.len() - 1] {
            ks.push(r);
        }
        let dims = g.dims_in_degree(d, &ks, field);
        let two = dims[0];
        let full = dims[dims.len() - 1];
        let below = match d {
            0..=2 => 0,
            _ if d > r => full,
            _ => dims[ks.iter().position(|&k| k == d - 1).unwrap()],
        };
        if full > below {
            min_generator_degrees.insert(d);
        }
        jr_dims.push(full);
        j2_dims.push(two);
    }
    let hilbert = jr_dims
        .iter()
        .enumerate()
        .map(|(d, &dim)| binomial(arr.len(), d) - dim)
        .collect();
    Ok(CordovilSummary {
        field: kind,
        quadratic: j2_dims == jr_dims,
        min_generator_degrees,
        j2_dims,
        jr_dims,
        hilbert,
    })
}

pub fn cordovil_summary_in(arr: &Arrangement, kind: FieldKind) -> Result<CordovilSummary> {
    match kind {
        FieldKind::Rationals => cordovil_summary(arr, &RationalField, kind),
        FieldKind::Prime(p) => cordovil_summary(arr, &PrimeField::new(p), kind),
    }
}

/// `(J_2 = J_r, degrees of minimal generators of J_r)`.
pub fn is_cordovil_quadratic(
    arr: &Arrangement,
    kind: FieldKind,
) -> Result<(bool, BTreeSet<usize>)> {
    let s = cordovil_summary_in(arr, kind)?;
    Ok((s.quadratic, s.min_generator_degrees))
}

/// `dim (R/J_r)_d` for `d = 0..=r`.
pub fn hilbert_series(arr: &Arrangement, kind: FieldKind) -> Result<Vec<usize>> {
    let r = arr.rank();
    let dims = match kind {
        FieldKind::Rationals => graded_ideal_dims(arr, r, &RationalField)?,
        FieldKind::Prime(p) => graded_ideal_dims(arr, r, &PrimeField::new(p))?,
    };
    Ok(dims
        .iter()
        .enumerate()
        .map(|(d, &dim)| binomial(arr.len(), d) - dim)
        .collect())
}
