//! Central real hyperplane arrangements given by rational normal vectors.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{primitive_direction, row_reduce, QMatrix, Rational};

/// Hard limit on the number of hyperplanes; sign vectors are packed in a `u64`.
pub const MAX_HYPERPLANES: usize = 64;

/// A central arrangement of distinct hyperplanes `H_i = {x : <a_i, x> = 0}`.
///
/// The stored direction of each normal fixes the positive side `H_i^+`.
/// Alongside the input normals the arrangement keeps *essential coordinates*:
/// each normal written in the basis formed by the first `rank` linearly
/// independent normals. All matroid data is computed from those, so
/// non-essential input behaves like its essentialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArrangementRepr", into = "ArrangementRepr")]
pub struct Arrangement {
    normals: Vec<Vec<Rational>>,
    coords: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementRepr {
    normals: Vec<Vec<Rational>>,
}

impl TryFrom<ArrangementRepr> for Arrangement {
    type Error = Error;
    fn try_from(r: ArrangementRepr) -> Result<Self> {
        Arrangement::new(r.normals)
    }
}

impl From<Arrangement> for ArrangementRepr {
    fn from(a: Arrangement) -> Self {
        ArrangementRepr { normals: a.normals }
    }
}

impl Arrangement {
    /// Validates and builds an arrangement from its normal vectors.
    pub fn new(normals: Vec<Vec<Rational>>) -> Result<Self> {
        let n = normals.len();
        if n == 0 {
            return Err(Error::InvalidInput(
                "arrangement needs at least one hyperplane".into(),
            ));
        }
        if n > MAX_HYPERPLANES {
            return Err(Error::InvalidInput(format!(
                "{n} hyperplanes exceeds the supported maximum of {MAX_HYPERPLANES}"
            )));
        }
        let d = normals[0].len();
        if d == 0 {
            return Err(Error::InvalidInput(
                "normals must have positive dimension".into(),
            ));
        }
        let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
        for (i, a) in normals.iter().enumerate() {
            if a.len() != d {
                return Err(Error::InvalidInput(format!(
                    "normal {i} has dimension {} but normal 0 has dimension {d}",
                    a.len()
                )));
            }
            if a.iter().all(Rational::is_zero) {
                return Err(Error::InvalidInput(format!("normal {i} is zero")));
            }
            let mut key = primitive_direction(a);
            if key
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(Rational::is_negative)
            {
                key.iter_mut().for_each(|x| *x = -&*x);
            }
            if let Some(j) = seen.insert(key, i) {
                return Err(Error::InvalidInput(format!(
                    "normals {j} and {i} are proportional (same hyperplane)"
                )));
            }
        }
        let m = QMatrix::from_columns(d, &normals);
        let red = row_reduce(&m);
        let coords = (0..n)
            .map(|j| (0..red.rank).map(|i| red.rref[(i, j)].clone()).collect())
            .collect();
        Ok(Arrangement {
            normals,
            coords,
            basis: red.pivot_columns,
        })
    }

    /// Builds from integer normals.
    pub fn from_integer_normals(normals: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            normals
                .iter()
                .map(|v| v.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    /// Builds from a `d x n` matrix whose columns are the normals.
    pub fn from_column_matrix(m: &QMatrix) -> Result<Self> {
        Self::new(m.columns())
    }

    /// Number of hyperplanes.
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.normals[0].len()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.ambient_dim()
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.normals[i]
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    /// Normal `i` in essential coordinates (length `rank`).
    pub fn coords(&self, i: usize) -> &[Rational] {
        &self.coords[i]
    }

    pub fn all_coords(&self) -> &[Vec<Rational>] {
        &self.coords
    }

    /// Indices of the normals used as the essential basis.
    pub fn basis_indices(&self) -> &[usize] {
        &self.basis
    }

    /// Bitmask with one bit per hyperplane.
    pub fn full_mask(&self) -> u64 {
        mask_of_len(self.len())
    }

    /// The `rank x n` matrix of essential coordinates (columns are normals).
    pub fn coordinate_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.rank(), &self.coords)
    }

    /// The `d x n` matrix of input normals (columns are normals).
    pub fn normal_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.ambient_dim(), &self.normals)
    }

    /// The arrangement formed by the listed hyperplanes, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Arrangement> {
        Arrangement::new(indices.iter().map(|&i| self.normals[i].clone()).collect())
    }
}

pub(crate) fn mask_of_len(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub(crate) fn mask_from(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}
