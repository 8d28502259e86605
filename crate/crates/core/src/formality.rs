//! Falk–Randell formality.
//!
//! `pi: Q^A -> V*` sends `e_H` to the normal of `H`. Its kernel `V^perp` is
//! the space of linear relations among the normals, and `V_2^perp` is the
//! part spanned by relations supported on rank-2 flats. The arrangement is
//! formal when the two agree.

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, row_reduce, QMatrix, Rational};
use crate::matroid::flats_of_rank;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpaces {
    /// Basis of `V^perp` as the columns of an `n x (n - r)` matrix.
    pub full: QMatrix,
    /// Basis of `V_2^perp` as columns, in reduced echelon form.
    pub rank2: QMatrix,
}

impl RelationSpaces {
    pub fn full_dim(&self) -> usize {
        self.full.cols()
    }

    pub fn rank2_dim(&self) -> usize {
        self.rank2.cols()
    }
}

pub fn relation_spaces(arr: &Arrangement) -> RelationSpaces {
    let n = arr.len();
    let full = kernel_basis(&arr.coordinate_matrix());
    let mut relations: Vec<Vec<Rational>> = Vec::new();
    if arr.rank() >= 2 {
        for flat in flats_of_rank(arr, 2).expect("rank 2 is in range") {
            let elements = flat.elements();
            if elements.len() < 3 {
                continue;
            }
            let local = arr.coordinate_matrix().select_columns(&elements);
            for rel in kernel_basis(&local).columns() {
                let mut padded = vec![Rational::zero(); n];
                for (v, &h) in rel.into_iter().zip(&elements) {
                    padded[h] = v;
                }
                relations.push(padded);
            }
        }
    }
    let rank2 = if relations.is_empty() {
        QMatrix::zeros(n, 0)
    } else {
        let red = row_reduce(&QMatrix::from_rows(relations));
        let rows: Vec<Vec<Rational>> = (0..red.rank).map(|i| red.rref.row(i).to_vec()).collect();
        QMatrix::from_columns(n, &rows)
    };
    RelationSpaces { full, rank2 }
}

/// `(V_2^perp = V^perp, dim V^perp - dim V_2^perp)`.
pub fn is_formal(arr: &Arrangement) -> (bool, usize) {
    let s = relation_spaces(arr);
    let defect = s.full_dim() - s.rank2_dim();
    (defect == 0, defect)
}

/// The arrangement cut out by the rank-2 relations alone: hyperplane `H`
/// gets the normal `(<e_H, v_j>)_j` for a basis `v_j` of `V_2`, the
/// orthogonal complement of `V_2^perp` in `Q^A`.
pub fn formal_closure(arr: &Arrangement) -> Result<Arrangement> {
    let s = relation_spaces(arr);
    let n = arr.len();
    let v2 = if s.rank2_dim() == 0 {
        QMatrix::identity(n)
    } else {
        kernel_basis(&s.rank2.transpose())
    };
    let normals: Vec<Vec<Rational>> = (0..n).map(|h| v2.row(h).to_vec()).collect();
    if let Some(h) = normals.iter().position(|a| a.iter().all(Rational::is_zero)) {
        return Err(Error::Structural(format!(
            "hyperplane {h} has a zero normal in the formal closure"
        )));
    }
    Arrangement::new(normals).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::Structural(format!("formal closure collapses: {msg}")),
        other => other,
    })
}
