//! The Varchenko–Gelfand ring `R = F[e_H : H in A] / (e_H^2 - e_H)` and its
//! intermediate ideals `I_k`.
//!
//! `R` is the ring of functions on `{+,-}^A`, so an ideal is determined by the
//! points where all of its members vanish and `dim R/I` is the number of such
//! points. Elements are kept as combinations of the indicators
//! `f_S^eps = prod_{H in S} e_H^{eps_H}`, which evaluate pointwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arrangement::{bits, Arrangement};
use crate::cone::{self, FeasibilityAnswer};
use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};
use crate::field::{Field, FieldKind};
use crate::matroid::circuits;
use crate::signgeo::{SearchLimits, SignVector};

/// A pair `(S, eps)` with `H_S^eps` empty, standing for `g_S^eps`.
/// Stored with the smallest element of `S` carrying `+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub support: u64,
    /// Elements of `support` with sign `+`.
    pub plus: u64,
}

impl Generator {
    pub fn len(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.support == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        bits(self.support).collect()
    }

    pub fn minus(&self) -> u64 {
        self.support & !self.plus
    }

    /// `g_S^eps(p)`: `1` if `p` agrees with `eps` on `S`, `-1` if with `-eps`, else `0`.
    pub fn value_at(&self, point: u64) -> i64 {
        let local = point & self.support;
        if local == self.plus {
            1
        } else if local == self.minus() {
            -1
        } else {
            0
        }
    }

    fn sort_key(&self) -> (usize, Vec<usize>, u64) {
        (self.len(), self.elements(), !self.plus & self.support)
    }
}

/// A generating set for `I_k` together with its zero set semantics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDescription {
    pub n: usize,
    pub k: usize,
    pub generators: Vec<Generator>,
}

impl IdealDescription {
    /// Whether every generator vanishes at `point`.
    pub fn vanishes_at(&self, point: SignVector) -> bool {
        self.generators
            .iter()
            .all(|g| g.value_at(point.plus_mask()) == 0)
    }

    /// The zero set by a sweep over all `2^n` points.
    pub fn zero_set(&self, cap: u64) -> Result<Vec<SignVector>> {
        if self.n >= 63 || (1u64 << self.n) > cap {
            return Err(Error::CapExceeded(format!(
                "zero set sweep over 2^{} points exceeds cap {cap}",
                self.n
            )));
        }
        Ok((0..1u64 << self.n)
            .map(|p| SignVector::new(self.n, p))
            .filter(|p| self.vanishes_at(*p))
            .collect())
    }
}

/// A linear combination of indicators `f_S^eps`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VGElement {
    pub n: usize,
    /// `(support, plus, coefficient)`.
    pub terms: Vec<(u64, u64, Rational)>,
}

impl VGElement {
    pub fn zero(n: usize) -> Self {
        VGElement {
            n,
            terms: Vec::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::indicator(n, 0, 0)
    }

    /// `f_S^eps`.
    pub fn indicator(n: usize, support: u64, plus: u64) -> Self {
        VGElement {
            n,
            terms: vec![(support, plus & support, Rational::one())],
        }
    }

    /// The Heaviside generator `e_i^+` or `e_i^-`.
    pub fn heaviside(n: usize, i: usize, plus: bool) -> Self {
        Self::indicator(n, 1 << i, if plus { 1 << i } else { 0 })
    }

    /// `g_S^eps = f_S^eps - f_S^{-eps}`.
    pub fn g(n: usize, gen: &Generator) -> Self {
        Self::indicator(n, gen.support, gen.plus).sub(&Self::indicator(n, gen.support, gen.minus()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        VGElement { n: self.n, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_integer(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VGElement {
            n: self.n,
            terms: self.terms.iter().map(|(s, p, x)| (*s, *p, x * c)).collect(),
        }
    }

    /// Product of indicators is the indicator of the union, or zero on a clash.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (s1, p1, c1) in &self.terms {
            for (s2, p2, c2) in &other.terms {
                let common = s1 & s2;
                if p1 & common == p2 & common {
                    terms.push((s1 | s2, p1 | p2, c1 * c2));
                }
            }
        }
        VGElement { n: self.n, terms }
    }

    pub fn evaluate(&self, point: SignVector) -> Rational {
        let p = point.plus_mask();
        self.terms
            .iter()
            .filter(|(s, plus, _)| p & s == *plus)
            .map(|(_, _, c)| c.clone())
            .sum()
    }
}

fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(u64)) {
    fn rec(start: usize, n: usize, left: usize, acc: u64, visit: &mut dyn FnMut(u64)) {
        if left == 0 {
            visit(acc);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, acc | 1 << i, visit);
        }
    }
    if size <= n {
        rec(0, n, size, 0, &mut visit);
    }
}

fn check_k(arr: &Arrangement, k: usize) -> Result<()> {
    if k == 0 || k > arr.rank() {
        return Err(Error::ContractViolation(format!(
            "k = {k} outside 1..={}",
            arr.rank()
        )));
    }
    Ok(())
}

/// All `(S, eps)` with `|S| <= k+1` and `H_S^eps` empty, one per `+-eps`
/// orbit, each decided by a cone feasibility query.
pub fn ideal_generators(arr: &Arrangement, k: usize) -> Result<Vec<Generator>> {
    check_k(arr, k)?;
    let mut out = Vec::new();
    for size in 3..=(k + 1).min(arr.len()) {
        for_each_subset(arr.len(), size, |support| {
            let members: Vec<usize> = bits(support).collect();
            let cols: Vec<Vec<Rational>> =
                members.iter().map(|&i| arr.coords(i).to_vec()).collect();
            if QMatrix::from_columns(arr.rank(), &cols).rank() == size {
                return;
            }
            let first = 1u64 << members[0];
            for rest in 0..1u64 << (size - 1) {
                let plus = members[1..]
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| rest >> b & 1 == 1)
                    .fold(first, |m, (_, &h)| m | 1 << h);
                let signed: Vec<Vec<Rational>> = members
                    .iter()
                    .map(|&h| {
                        let a = arr.normal(h);
                        if plus >> h & 1 == 1 {
                            a.to_vec()
                        } else {
                            a.iter().map(|x| -x).collect()
                        }
                    })
                    .collect();
                if let FeasibilityAnswer::Empty { .. } = cone::decide(&signed) {
                    out.push(Generator { support, plus });
                }
            }
        });
    }
    out.sort_by_key(Generator::sort_key);
    Ok(out)
}

pub fn ideal(arr: &Arrangement, k: usize) -> Result<IdealDescription> {
    Ok(IdealDescription {
        n: arr.len(),
        k,
        generators: ideal_generators(arr, k)?,
    })
}

/// The signed circuits with at most `k+1` elements, as generators.
///
/// Every empty cone on `S` contains one of these on a subset of `S` with
/// matching signs, so they cut out the same zero set as the full list.
pub fn circuit_generators(arr: &Arrangement, k: usize) -> Vec<Generator> {
    circuits(arr)
        .into_iter()
        .filter(|c| c.len() <= k + 1)
        .map(|c| Generator {
            support: c.support,
            plus: c.positive,
        })
        .collect()
}

/// `dim_F R/I_k`: the number of points where every generator of `I_k`
/// evaluates to zero in `F`, by depth-first assignment in hyperplane order.
pub fn dim_vg_k<F: Field>(
    arr: &Arrangement,
    k: usize,
    field: &F,
    limits: &SearchLimits,
) -> Result<u128> {
    check_k(arr, k)?;
    let n = arr.len();
    // For each hyperplane, the generators completed by it, with the local
    // codes where the generator is nonzero in F.
    let mut closing: Vec<Vec<(u64, Vec<u64>)>> = vec![Vec::new(); n];
    let mut last = 0;
    for g in circuit_generators(arr, k) {
        let top = 63 - g.support.leading_zeros() as usize;
        let nonzero: Vec<u64> = [g.plus, g.minus()]
            .into_iter()
            .filter(|&code| !field.is_zero(&field.from_i64(g.value_at(code))))
            .collect();
        closing[top].push((g.support, nonzero));
        last = last.max(top + 1);
    }
    let mut nodes = 0u64;
    fn dfs(
        depth: usize,
        point: u64,
        n: usize,
        last: usize,
        closing: &[Vec<(u64, Vec<u64>)>],
        nodes: &mut u64,
        cap: u64,
    ) -> Result<u128> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::CapExceeded(format!(
                "VG zero-set search exceeded {cap} nodes"
            )));
        }
        if depth >= last {
            return Ok(1u128 << (n - depth));
        }
        let mut total = 0;
        for bit in [1u64 << depth, 0] {
            let p = point | bit;
            let alive = closing[depth]
                .iter()
                .all(|(support, nonzero)| !nonzero.contains(&(p & support)));
            if alive {
                total += dfs(depth + 1, p, n, last, closing, nodes, cap)?;
            }
        }
        Ok(total)
    }
    dfs(0, 0, n, last, &closing, &mut nodes, limits.node_cap)
}

/// `dim VG_k` over the field named by `kind`.
pub fn dim_vg_k_in(
    arr: &Arrangement,
    k: usize,
    kind: FieldKind,
    limits: &SearchLimits,
) -> Result<u128> {
    match kind {
        FieldKind::Rationals => dim_vg_k(arr, k, &crate::field::RationalField, limits),
        FieldKind::Prime(p) => dim_vg_k(arr, k, &crate::field::PrimeField::new(p), limits),
    }
}

/// `I_2 = I_r`, decided by comparing quotient dimensions.
pub fn is_vg_quadratic(arr: &Arrangement, kind: FieldKind, limits: &SearchLimits) -> Result<bool> {
    let r = arr.rank();
    if r <= 2 {
        return Ok(true);
    }
    Ok(dim_vg_k_in(arr, 2, kind, limits)? == dim_vg_k_in(arr, r, kind, limits)?)
}

/// `f_S^eps + c * f_S^{-eps}` written as a multilinear polynomial in the
/// variables `e_H = e_H^+` (`e_H^- = 1 - e_H`): monomial mask to coefficient.
pub(crate) fn expand_pair(support: u64, plus: u64, c: i64) -> BTreeMap<u64, i64> {
    let mut out: BTreeMap<u64, i64> = BTreeMap::new();
    for (pos, weight) in [(plus, 1i64), (support & !plus, c)] {
        let neg = support & !pos;
        // monomial T must contain every positive element; the rest of T is a
        // subset of the negative elements, each contributing -1
        let mut sub = neg;
        loop {
            let t = pos | sub;
            let sign = if sub.count_ones().is_multiple_of(2) {
                1
            } else {
                -1
            };
            *out.entry(t).or_insert(0) += weight * sign;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & neg;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn monomial_text(mask: u64) -> String {
    if mask == 0 {
        return "1".into();
    }
    bits(mask)
        .map(|i| format!("e{}", i + 1))
        .collect::<Vec<_>>()
        .join("*")
}

/// Renders a multilinear polynomial, highest degree first, then by index list.
pub(crate) fn polynomial_text(poly: &BTreeMap<u64, i64>) -> String {
    let mut terms: Vec<(&u64, &i64)> = poly.iter().collect();
    terms.sort_by_key(|(m, _)| {
        (
            std::cmp::Reverse(m.count_ones()),
            bits(**m).collect::<Vec<_>>(),
        )
    });
    let mut s = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
        if i == 0 {
            if sign == "-" {
                s.push('-');
            }
        } else {
            let _ = write!(s, " {sign} ");
        }
        if *m == 0 {
            let _ = write!(s, "{abs}");
        } else if abs == 1 {
            s.push_str(&monomial_text(*m));
        } else {
            let _ = write!(s, "{abs}*{}", monomial_text(*m));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// A plain-text presentation of `R/I_k` for a computer-algebra system.
///
/// Grammar: one statement per line, each ending in `;`. Lines starting with
/// `--` are comments. Variables are `e1..en`, products use `*` and powers `^`.
///
/// ```text
/// R = QQ[e1,...,en];
/// idem = ideal(e1^2 - e1, ..., en^2 - en);
/// g1 = <expanded g_S^eps>;
/// Ik = idem + ideal(g1, ..., gm);
/// ```
///
/// The coefficient ring is `QQ` or `ZZ/p`; with no generators the last line
/// reads `Ik = idem;`.
pub fn export_presentation(arr: &Arrangement, k: usize, kind: FieldKind) -> Result<String> {
    let gens = ideal_generators(arr, k)?;
    let n = arr.len();
    let vars: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let ring = match kind {
        FieldKind::Rationals => "QQ".to_string(),
        FieldKind::Prime(p) => format!("ZZ/{p}"),
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "-- I_{k} of an arrangement of {n} hyperplanes, {} generators",
        gens.len()
    );
    let _ = writeln!(s, "R = {ring}[{}];", vars.join(","));
    let idem: Vec<String> = vars.iter().map(|v| format!("{v}^2 - {v}")).collect();
    let _ = writeln!(s, "idem = ideal({});", idem.join(", "));
    for (i, g) in gens.iter().enumerate() {
        let _ = writeln!(
            s,
            "g{} = {};",
            i + 1,
            polynomial_text(&expand_pair(g.support, g.plus, -1))
        );
    }
    if gens.is_empty() {
        let _ = writeln!(s, "I{k} = idem;");
    } else {
        let names: Vec<String> = (1..=gens.len()).map(|i| format!("g{i}")).collect();
        let _ = writeln!(s, "I{k} = idem + ideal({});", names.join(", "));
    }
    Ok(s)
}
