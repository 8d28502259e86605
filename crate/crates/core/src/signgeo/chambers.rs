use serde::{Deserialize, Serialize};

use super::SignVector;
use crate::arrangement::Arrangement;
use crate::cone::{self, FeasibilityAnswer};
use crate::error::{Error, Result};
use crate::exact::{dot, Rational};

pub const DEFAULT_CHAMBER_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub signs: SignVector,
    /// A point (in the input's ambient coordinates) strictly inside the chamber.
    pub witness: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberSet {
    pub chambers: Vec<Chamber>,
}

impl ChamberSet {
    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn sign_vectors(&self) -> Vec<SignVector> {
        self.chambers.iter().map(|c| c.signs).collect()
    }
}

/// Chambers by incremental insertion of hyperplanes in index order.
///
/// Each chamber of the partial arrangement keeps an interior witness; the new
/// hyperplane's sign at the witness settles one side, and one cone
/// feasibility query settles the other. Only chambers on the positive side of
/// hyperplane 0 are tracked; the rest are their negatives.
pub fn enumerate_chambers(arr: &Arrangement, cap: usize) -> Result<ChamberSet> {
    let n = arr.len();
    // (plus mask over hyperplanes inserted so far, witness)
    let mut current: Vec<(u64, Vec<Rational>)> = vec![(1, arr.normal(0).to_vec())];
    let mut signed: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 1..n {
        let a = arr.normal(i);
        let neg_a: Vec<Rational> = a.iter().map(|x| -x).collect();
        let mut next = Vec::with_capacity(current.len() * 2);
        for (mask, w) in current {
            signed.clear();
            for j in 0..i {
                if mask >> j & 1 == 1 {
                    signed.push(arr.normal(j).to_vec());
                } else {
                    signed.push(arr.normal(j).iter().map(|x| -x).collect());
                }
            }
            let s = dot(a, &w).signum();
            for plus in [true, false] {
                let side = if plus { 1 } else { -1 };
                let bit = if plus { 1u64 << i } else { 0 };
                if s == side {
                    next.push((mask | bit, w.clone()));
                    continue;
                }
                signed.push(if plus { a.to_vec() } else { neg_a.clone() });
                if let FeasibilityAnswer::Nonempty { witness } = cone::decide(&signed) {
                    next.push((mask | bit, witness));
                }
                signed.pop();
            }
            if 2 * next.len() > cap {
                return Err(Error::CapExceeded(format!(
                    "more than {cap} chambers after inserting {} hyperplanes",
                    i + 1
                )));
            }
        }
        current = next;
    }
    let mut chambers: Vec<Chamber> = Vec::with_capacity(2 * current.len());
    for (mask, w) in current {
        let sv = SignVector::new(n, mask);
        chambers.push(Chamber {
            signs: sv.negate(),
            witness: w.iter().map(|x| -x).collect(),
        });
        chambers.push(Chamber {
            signs: sv,
            witness: w,
        });
    }
    if chambers.len() > cap {
        return Err(Error::CapExceeded(format!("more than {cap} chambers")));
    }
    chambers.sort_by_key(|c| c.signs.plus_mask());
    Ok(ChamberSet { chambers })
}
