use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::chambers::{enumerate_chambers, DEFAULT_CHAMBER_CAP};
use super::local::local_chamber_patterns;
use super::SignVector;
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::matroid::flats_of_rank;

pub const DEFAULT_NODE_CAP: u64 = 2_000_000_000;

/// Resource limits for the sign-vector engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub node_cap: u64,
    pub chamber_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_cap: DEFAULT_NODE_CAP,
            chamber_cap: DEFAULT_CHAMBER_CAP,
        }
    }
}

/// `[sigma_1, ..., sigma_r]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaChain {
    pub sigma: Vec<u128>,
}

/// Allowed codes on the first `j+1` elements of a flat.
enum PrefixTable {
    Bits(Vec<u64>),
    Set(HashSet<u64>),
}

impl PrefixTable {
    fn build(codes: impl Iterator<Item = u64>, width: usize) -> Self {
        if width <= 20 {
            let mut v = vec![0u64; (1usize << width).div_ceil(64)];
            for c in codes {
                v[(c >> 6) as usize] |= 1 << (c & 63);
            }
            PrefixTable::Bits(v)
        } else {
            PrefixTable::Set(codes.collect())
        }
    }

    #[inline]
    fn contains(&self, code: u64) -> bool {
        match self {
            PrefixTable::Bits(v) => v[(code >> 6) as usize] >> (code & 63) & 1 == 1,
            PrefixTable::Set(s) => s.contains(&code),
        }
    }
}

/// Depth-first sign assignment in hyperplane order, pruning as soon as the
/// assigned prefix of some constrained rank-`k` flat extends to no local chamber.
struct Search {
    n: usize,
    /// For each hyperplane: (flat slot, position inside the flat).
    touches: Vec<Vec<(usize, usize)>>,
    tables: Vec<Vec<PrefixTable>>,
    /// Past this depth no constrained flat has unassigned elements.
    last_constrained: usize,
    codes: Vec<u64>,
    nodes: u64,
    node_cap: u64,
}

impl Search {
    fn new(arr: &Arrangement, k: usize, node_cap: u64) -> Result<Self> {
        let n = arr.len();
        let mut touches = vec![Vec::new(); n];
        let mut tables = Vec::new();
        let mut last_constrained = 0;
        for flat in flats_of_rank(arr, k)? {
            let local = local_chamber_patterns(arr, &flat)?;
            if local.is_unconstrained() {
                continue;
            }
            let slot = tables.len();
            let m = local.elements.len();
            let per_prefix = (1..=m)
                .map(|w| {
                    let mask = if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
                    PrefixTable::build(local.patterns.iter().map(|p| p & mask), w)
                })
                .collect();
            tables.push(per_prefix);
            for (pos, &h) in local.elements.iter().enumerate() {
                touches[h].push((slot, pos));
            }
            last_constrained = last_constrained.max(local.elements[m - 1] + 1);
        }
        Ok(Search {
            n,
            touches,
            codes: vec![0; tables.len()],
            tables,
            last_constrained,
            nodes: 0,
            node_cap,
        })
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::CapExceeded(format!(
                "sign-vector search exceeded {} nodes",
                self.node_cap
            )));
        }
        Ok(())
    }

    /// Assigns `plus` to hyperplane `depth`; false if some flat rejects it.
    fn assign(&mut self, depth: usize, plus: bool) -> bool {
        for &(slot, pos) in &self.touches[depth] {
            let low = self.codes[slot] & ((1u64 << pos) - 1);
            let code = low | (u64::from(plus) << pos);
            if !self.tables[slot][pos].contains(code) {
                return false;
            }
            self.codes[slot] = code;
        }
        true
    }

    fn count(&mut self, depth: usize) -> Result<u128> {
        self.tick()?;
        if depth >= self.last_constrained {
            return Ok(1u128 << (self.n - depth));
        }
        let mut total = 0;
        for plus in [true, false] {
            if self.assign(depth, plus) {
                total += self.count(depth + 1)?;
            }
        }
        Ok(total)
    }

    fn collect(&mut self, depth: usize, prefix: u64, out: &mut Vec<SignVector>) -> Result<()> {
        self.tick()?;
        if depth >= self.last_constrained {
            if self.n - depth >= 63 {
                return Err(Error::CapExceeded(
                    "sign-vector set too large to list".into(),
                ));
            }
            for tail in 0..(1u64 << (self.n - depth)) {
                self.tick()?;
                out.push(SignVector::new(self.n, prefix | tail << depth));
            }
            return Ok(());
        }
        for plus in [true, false] {
            if self.assign(depth, plus) {
                let bit = if plus { 1u64 << depth } else { 0 };
                self.collect(depth + 1, prefix | bit, out)?;
            }
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ContractViolation("sigma_k needs k >= 1".into()));
    }
    Ok(())
}

/// `sigma_k`: the number of sign vectors whose restriction to every rank-`k`
/// flat is a chamber of the localization.
pub fn count_sigma(arr: &Arrangement, k: usize, limits: &SearchLimits) -> Result<u128> {
    check_k(k)?;
    if k == 1 {
        return Ok(1u128 << arr.len());
    }
    if k >= arr.rank() {
        return Ok(enumerate_chambers(arr, limits.chamber_cap)?.len() as u128);
    }
    Search::new(arr, k, limits.node_cap)?.count(0)
}

/// The set `Sigma_k`, ordered by sign vector bits (hyperplane 0 least significant).
pub fn sigma_set(arr: &Arrangement, k: usize, limits: &SearchLimits) -> Result<Vec<SignVector>> {
    check_k(k)?;
    let k = k.min(arr.rank());
    let mut out = Vec::new();
    Search::new(arr, k, limits.node_cap)?.collect(0, 0, &mut out)?;
    out.sort_by_key(SignVector::plus_mask);
    Ok(out)
}

pub fn sigma_chain(arr: &Arrangement, limits: &SearchLimits) -> Result<SigmaChain> {
    let sigma = (1..=arr.rank())
        .map(|k| count_sigma(arr, k, limits))
        .collect::<Result<_>>()?;
    Ok(SigmaChain { sigma })
}

/// Yoshinaga's test `sigma_2 = sigma_r`.
pub fn yoshinaga(arr: &Arrangement, limits: &SearchLimits) -> Result<bool> {
    if arr.rank() <= 2 {
        return Ok(true);
    }
    let chambers = count_sigma(arr, arr.rank(), limits)?;
    Ok(count_sigma(arr, 2, limits)? == chambers)
}
