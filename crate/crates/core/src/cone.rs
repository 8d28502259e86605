//! Exact nonemptiness test for open polyhedral cones `{x : s_i <a_i, x> > 0}`.
//!
//! The primary route solves the Farkas alternative
//! `lambda >= 0, sum(lambda) = 1, sum(lambda_i s_i a_i) = 0` with a phase-one
//! simplex under Bland's least-index rule. This is the LP dual of
//! `max t  s.t.  s_i <a_i, x> >= t, t <= 1`: when the phase-one optimum is
//! positive, the optimal dual vector is an interior point of the cone, and
//! when it is zero the primal solution is a positive dependence. Either way
//! the answer carries an exactly checkable certificate.
//!
//! [`fourier_motzkin_feasible`] is an independent elimination-based decision
//! procedure used to cross-check the simplex route.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dot, primitive_direction, Rational};
use crate::signgeo::Sign;

/// Outcome of a strict cone feasibility query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityAnswer {
    /// A point strictly inside every selected half-space.
    Nonempty { witness: Vec<Rational> },
    /// Nonnegative multipliers, not all zero, with `sum(lambda_i s_i a_i) = 0`.
    Empty { multipliers: Vec<Rational> },
}

impl FeasibilityAnswer {
    pub fn is_nonempty(&self) -> bool {
        matches!(self, FeasibilityAnswer::Nonempty { .. })
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityAnswer::Nonempty { witness } => Some(witness),
            FeasibilityAnswer::Empty { .. } => None,
        }
    }
}

fn signed_vectors(normals: &[Vec<Rational>], signs: &[Sign]) -> Result<Vec<Vec<Rational>>> {
    if normals.is_empty() {
        return Err(Error::InvalidInput("empty normal list".into()));
    }
    if normals.len() != signs.len() {
        return Err(Error::InvalidInput(format!(
            "{} normals but {} signs",
            normals.len(),
            signs.len()
        )));
    }
    let d = normals[0].len();
    let mut out = Vec::with_capacity(normals.len());
    for (i, (a, s)) in normals.iter().zip(signs).enumerate() {
        if a.len() != d {
            return Err(Error::InvalidInput(format!(
                "normal {i} has dimension {} (expected {d})",
                a.len()
            )));
        }
        if a.iter().all(Rational::is_zero) {
            return Err(Error::InvalidInput(format!("normal {i} is zero")));
        }
        out.push(match s {
            Sign::Plus => a.clone(),
            Sign::Minus => a.iter().map(|x| -x).collect(),
        });
    }
    Ok(out)
}

/// If `u = -c v` for some `c > 0`, returns `c`.
fn negative_multiple(u: &[Rational], v: &[Rational]) -> Option<Rational> {
    let k = v.iter().position(|x| !x.is_zero())?;
    if u[k].is_zero() {
        return None;
    }
    let c = -(&u[k] / &v[k]);
    if !c.is_positive() {
        return None;
    }
    u.iter().zip(v).all(|(a, b)| *a == -(&c * b)).then_some(c)
}

/// Decides whether the open cone cut out by `signs[i] * <normals[i], x> > 0`
/// is nonempty, returning a witness point or a Farkas certificate.
pub fn strict_cone_feasible(
    normals: &[Vec<Rational>],
    signs: &[Sign],
) -> Result<FeasibilityAnswer> {
    let vecs = signed_vectors(normals, signs)?;
    Ok(decide(&vecs))
}

/// Same as [`strict_cone_feasible`] for already-signed vectors `s_i a_i`
/// (validated by the caller).
pub(crate) fn decide(vecs: &[Vec<Rational>]) -> FeasibilityAnswer {
    let m = vecs.len();
    if m == 1 {
        return FeasibilityAnswer::Nonempty {
            witness: primitive_direction(&vecs[0]),
        };
    }
    // Opposite pair: certificate on exactly those two.
    for i in 0..m {
        for j in i + 1..m {
            if let Some(c) = negative_multiple(&vecs[i], &vecs[j]) {
                let mut lambda = vec![Rational::zero(); m];
                lambda[i] = Rational::one();
                lambda[j] = c;
                return FeasibilityAnswer::Empty {
                    multipliers: lambda,
                };
            }
        }
    }
    phase_one(vecs)
}

fn phase_one(vecs: &[Vec<Rational>]) -> FeasibilityAnswer {
    let m = vecs.len();
    let d = vecs[0].len();
    let rows = d + 1;
    let ncols = m + rows;
    let width = ncols + 1;
    let rhs = ncols;

    let mut tab = vec![Rational::zero(); rows * width];
    let at = |i: usize, j: usize| i * width + j;
    for (j, v) in vecs.iter().enumerate() {
        for i in 0..d {
            tab[at(i, j)] = v[i].clone();
        }
        tab[at(d, j)] = Rational::one();
    }
    for i in 0..rows {
        tab[at(i, m + i)] = Rational::one();
    }
    tab[at(d, rhs)] = Rational::one();
    let mut basis: Vec<usize> = (m..ncols).collect();

    // Reduced costs for cost 1 on artificials: r_j = c_j - sum_i tab[i][j].
    let mut obj = vec![Rational::zero(); width];
    for j in 0..width {
        let mut s = Rational::zero();
        for i in 0..rows {
            s += &tab[at(i, j)];
        }
        let c = if j >= m && j < ncols {
            Rational::one()
        } else {
            Rational::zero()
        };
        obj[j] = if j == rhs { -s } else { c - s };
    }

    loop {
        let Some(enter) = (0..ncols).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            let a = &tab[at(i, enter)];
            if !a.is_positive() {
                continue;
            }
            let ratio = &tab[at(i, rhs)] / a;
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (r, _) = leave.expect("phase-one simplex cannot be unbounded");
        let inv = tab[at(r, enter)].recip();
        for j in 0..width {
            if !tab[at(r, j)].is_zero() {
                tab[at(r, j)] = &tab[at(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<Rational> = tab[at(r, 0)..at(r, 0) + width].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = tab[at(i, enter)].clone();
            if f.is_zero() {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    tab[at(i, j)] = &tab[at(i, j)] - &(&f * pv);
                }
            }
        }
        let f = obj[enter].clone();
        for (j, pv) in pivot_row.iter().enumerate() {
            if !pv.is_zero() {
                obj[j] = &obj[j] - &(&f * pv);
            }
        }
        basis[r] = enter;
    }

    let cost = |j: usize| j >= m;
    let value: Rational = (0..rows)
        .filter(|&i| cost(basis[i]))
        .map(|i| tab[at(i, rhs)].clone())
        .sum();

    if value.is_zero() {
        let mut lambda = vec![Rational::zero(); m];
        for i in 0..rows {
            if basis[i] < m {
                lambda[basis[i]] = tab[at(i, rhs)].clone();
            }
        }
        return FeasibilityAnswer::Empty {
            multipliers: lambda,
        };
    }

    // Dual y = c_B B^{-1}; B^{-1} sits in the artificial columns.
    let y: Vec<Rational> = (0..rows)
        .map(|k| {
            (0..rows)
                .filter(|&i| cost(basis[i]))
                .map(|i| tab[at(i, m + k)].clone())
                .sum()
        })
        .collect();
    let witness: Vec<Rational> = y[..d].iter().map(|x| -x).collect();
    FeasibilityAnswer::Nonempty {
        witness: primitive_direction(&witness),
    }
}

/// Exact audit of an answer against the query it claims to settle.
pub fn verify_answer(
    normals: &[Vec<Rational>],
    signs: &[Sign],
    answer: &FeasibilityAnswer,
) -> bool {
    let Ok(vecs) = signed_vectors(normals, signs) else {
        return false;
    };
    let d = vecs[0].len();
    match answer {
        FeasibilityAnswer::Nonempty { witness } => {
            witness.len() == d && vecs.iter().all(|v| dot(v, witness).is_positive())
        }
        FeasibilityAnswer::Empty { multipliers } => {
            if multipliers.len() != vecs.len()
                || multipliers.iter().any(Rational::is_negative)
                || multipliers.iter().all(Rational::is_zero)
            {
                return false;
            }
            (0..d).all(|k| {
                vecs.iter()
                    .zip(multipliers)
                    .map(|(v, l)| &v[k] * l)
                    .sum::<Rational>()
                    .is_zero()
            })
        }
    }
}

/// Decides the same question by Fourier-Motzkin elimination of the strict
/// homogeneous system `s_i <a_i, x> > 0`. Exponential; meant for small
/// instances and as an oracle.
pub fn fourier_motzkin_feasible(normals: &[Vec<Rational>], signs: &[Sign]) -> Result<bool> {
    let mut system = signed_vectors(normals, signs)?;
    let d = system[0].len();
    for var in 0..d {
        let mut next: Vec<Vec<Rational>> = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for ineq in system {
            match ineq[var].signum() {
                0 => next.push(ineq),
                1 => pos.push(ineq),
                _ => neg.push(ineq),
            }
        }
        for p in &pos {
            for q in &neg {
                // q[var] < 0 < p[var]: |q_var| p + p_var q has zero in `var`.
                let a = -&q[var];
                let b = p[var].clone();
                let combo: Vec<Rational> = p
                    .iter()
                    .zip(q)
                    .map(|(x, y)| &(&a * x) + &(&b * y))
                    .collect();
                next.push(combo);
            }
        }
        let mut normalized: Vec<Vec<Rational>> = next
            .into_iter()
            .map(|v| {
                if v.iter().all(Rational::is_zero) {
                    v
                } else {
                    primitive_direction(&v)
                }
            })
            .collect();
        normalized.sort();
        normalized.dedup();
        if normalized.iter().any(|v| v.iter().all(Rational::is_zero)) {
            // 0 > 0
            return Ok(false);
        }
        system = normalized;
    }
    Ok(true)
}
