use std::cmp::Ordering;

use super::chambers::enumerate_chambers;
use crate::arrangement::{bits, Arrangement};
use crate::error::Result;
use crate::exact::{row_reduce, QMatrix, Rational};
use crate::matroid::Flat;

/// Chamber patterns of a localization, as codes over the flat's elements:
/// bit `j` of a code is the sign of `elements[j]` (set meaning `+`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPatterns {
    pub elements: Vec<usize>,
    /// Sorted, duplicate-free.
    pub patterns: Vec<u64>,
}

impl LocalPatterns {
    pub fn contains(&self, code: u64) -> bool {
        self.patterns.binary_search(&code).is_ok()
    }

    /// True when every sign pattern on the flat is a chamber.
    pub fn is_unconstrained(&self) -> bool {
        self.patterns.len() as u128 == 1u128 << self.elements.len()
    }
}

/// Normals of the flat written in a basis of their span (`rank` coordinates each).
fn local_coordinates(arr: &Arrangement, flat: &Flat) -> (Vec<usize>, Vec<Vec<Rational>>) {
    let elements: Vec<usize> = bits(flat.mask).collect();
    let cols: Vec<Vec<Rational>> = elements.iter().map(|&i| arr.coords(i).to_vec()).collect();
    let red = row_reduce(&QMatrix::from_columns(arr.rank(), &cols));
    let local = (0..elements.len())
        .map(|j| (0..red.rank).map(|i| red.rref[(i, j)].clone()).collect())
        .collect();
    (elements, local)
}

/// Chambers of the localization `A_F`, by exact angular sorting for rank-2
/// flats and by chamber enumeration of the localized arrangement otherwise.
pub fn local_chamber_patterns(arr: &Arrangement, flat: &Flat) -> Result<LocalPatterns> {
    if flat.rank == 2 {
        let (elements, local) = local_coordinates(arr, flat);
        let mut patterns = planar_patterns(&local);
        patterns.sort_unstable();
        patterns.dedup();
        return Ok(LocalPatterns { elements, patterns });
    }
    local_patterns_by_chambers(arr, flat)
}

/// Chambers of the localization via [`enumerate_chambers`], any rank.
pub fn local_patterns_by_chambers(arr: &Arrangement, flat: &Flat) -> Result<LocalPatterns> {
    let (elements, local) = local_coordinates(arr, flat);
    let sub = Arrangement::new(local)?;
    let cap = usize::MAX;
    let mut patterns: Vec<u64> = enumerate_chambers(&sub, cap)?
        .chambers
        .iter()
        .map(|c| c.signs.plus_mask())
        .collect();
    patterns.sort_unstable();
    Ok(LocalPatterns { elements, patterns })
}

/// Upper half plane (including the positive x-axis) comes first.
fn half(v: &[Rational; 2]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn cross(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn angle_cmp(a: &[Rational; 2], b: &[Rational; 2]) -> Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| match cross(a, b).signum() {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        })
}

/// Sign patterns of the chambers of a line arrangement in the plane.
///
/// The `2m` rays along the lines are sorted by angle; the sum of two
/// consecutive rays lies strictly inside the sector between them.
fn planar_patterns(normals: &[Vec<Rational>]) -> Vec<u64> {
    let mut rays: Vec<[Rational; 2]> = Vec::with_capacity(2 * normals.len());
    for a in normals {
        let dir = [-&a[1], a[0].clone()];
        rays.push([-&dir[0], -&dir[1]]);
        rays.push(dir);
    }
    rays.sort_by(angle_cmp);
    let m = rays.len();
    (0..m)
        .map(|i| {
            let (p, q) = (&rays[i], &rays[(i + 1) % m]);
            let x = [&p[0] + &q[0], &p[1] + &q[1]];
            normals.iter().enumerate().fold(0u64, |code, (j, a)| {
                if (&a[0] * &x[0] + &a[1] * &x[1]).is_positive() {
                    code | (1 << j)
                } else {
                    code
                }
            })
        })
        .collect()
}
