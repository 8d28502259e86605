//! Named arrangements and parametric families.
//!
//! Catalog specs are stable identifiers such as `d4`, `er(-1)`, `braid(5)`
//! or `graphic(1-2,2-3,3-1)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, primitive_direction, QMatrix, Rational};
use crate::matroid::circuits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Option<String>,
    pub arrangement: Arrangement,
    pub provenance: String,
}

/// Fixed names and family templates accepted by [`get`].
pub const NAMES: &[&str] = &[
    "remark13",
    "x2",
    "bracelet",
    "d4",
    "primegap6",
    "er(t)",
    "boolean(n)",
    "braid(n)",
    "typeD(n)",
    "graphic(i-j,...)",
    "ziegler(special|general)",
];

/// Named arrangements with fixed coordinates, used by the implication suites.
pub const FIXED: &[&str] = &[
    "remark13",
    "x2",
    "bracelet",
    "d4",
    "primegap6",
    "er(-1)",
    "er(0)",
    "er(1)",
    "ziegler(special)",
    "ziegler(general)",
];

const REMARK13: [[i64; 20]; 4] = [
    [3, 3, 3, 3, 3, 9, 7, 5, 7, 2, 0, 0, 6, 3, 4, 8, 6, 2, 9, 5],
    [8, 1, 7, 1, 2, 8, 2, 6, 1, 8, 5, 9, 2, 8, 3, 0, 1, 0, 8, 9],
    [1, 9, 1, 9, 5, 2, 5, 9, 3, 7, 7, 3, 6, 6, 4, 0, 9, 1, 5, 9],
    [1, 0, 1, 4, 1, 1, 7, 2, 4, 1, 3, 9, 2, 8, 0, 8, 7, 1, 2, 3],
];

pub fn get(spec: &str) -> Result<Arrangement> {
    Ok(entry(spec)?.arrangement)
}

pub fn entry(spec: &str) -> Result<CatalogEntry> {
    let spec = spec.trim();
    let (name, params) = match spec.find('(') {
        Some(open) => {
            let inner = spec[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| bad(spec, "missing closing parenthesis"))?;
            (spec[..open].trim(), Some(inner.trim()))
        }
        None => (spec, None),
    };
    let (arrangement, provenance) = match (name, params) {
        ("remark13", None) => (remark13()?, "4x20 matrix, columns are normals"),
        ("x2", None) => (x2()?, "seven planes in R^3"),
        ("bracelet", None) => (bracelet()?, "nine hyperplanes in R^4"),
        ("d4", None) => (type_d(4)?, "x_i +- x_j in R^4"),
        ("primegap6", None) => (
            primegap(6)?,
            "x_i - x_j, plus x_i + x_j when j - i is prime, in R^6",
        ),
        ("er", Some(p)) => {
            let t: Rational = p
                .parse()
                .map_err(|_| bad(spec, "parameter must be a rational"))?;
            (
                er(&t)?,
                "nine listed planes in R^3; coinciding planes are kept once",
            )
        }
        ("boolean", Some(p)) => (boolean(parse_n(spec, p)?)?, "coordinate hyperplanes"),
        ("braid", Some(p)) => (braid(parse_n(spec, p)?)?, "x_i - x_j, i < j"),
        ("typeD" | "typed", Some(p)) => (type_d(parse_n(spec, p)?)?, "x_i +- x_j, i < j"),
        ("graphic", Some(p)) => (graphic_spec(spec, p)?, "x_i - x_j for each edge ij"),
        ("ziegler", Some("special")) => {
            (ziegler(true)?, "constructed: six triple points on a conic")
        }
        ("ziegler", Some("general")) => (
            ziegler(false)?,
            "constructed: six triple points off any conic",
        ),
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown catalog entry {spec:?}"
            )))
        }
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        params: params.map(str::to_string),
        arrangement,
        provenance: provenance.to_string(),
    })
}

fn bad(spec: &str, why: &str) -> Error {
    Error::InvalidInput(format!("malformed catalog spec {spec:?}: {why}"))
}

fn parse_n(spec: &str, p: &str) -> Result<usize> {
    match p.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(bad(spec, "parameter must be a positive integer")),
    }
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

fn diff(d: usize, i: usize, j: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v[j] = sign;
    v
}

pub fn remark13() -> Result<Arrangement> {
    let m = QMatrix::from_i64_rows(&REMARK13.iter().map(|r| &r[..]).collect::<Vec<_>>());
    Arrangement::from_column_matrix(&m)
}

pub fn x2() -> Result<Arrangement> {
    Arrangement::from_integer_normals(&[
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![0, 1, -1],
        vec![1, 0, -1],
        vec![1, 1, 0],
        vec![1, 1, -2],
    ])
}

pub fn bracelet() -> Result<Arrangement> {
    Arrangement::from_integer_normals(&[
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![1, 0, 0, 1],
        vec![0, 1, 0, 1],
        vec![0, 0, 1, 1],
        vec![1, 1, 0, 1],
        vec![1, 0, 1, 1],
        vec![0, 1, 1, 1],
    ])
}

/// The nine planes `x_1 - x_2, x_1 - x_3, x_2 - x_3, x_1, x_2, x_3,
/// x_1 - t x_2, x_1 - t x_3, x_2 - t x_3`. For `t` in `{0, 1}` some of these
/// coincide; each hyperplane is kept once, at its first position.
pub fn er(t: &Rational) -> Result<Arrangement> {
    let q = Rational::from_integer;
    let nt = -t;
    let listed = vec![
        vec![q(1), q(-1), q(0)],
        vec![q(1), q(0), q(-1)],
        vec![q(0), q(1), q(-1)],
        vec![q(1), q(0), q(0)],
        vec![q(0), q(1), q(0)],
        vec![q(0), q(0), q(1)],
        vec![q(1), nt.clone(), q(0)],
        vec![q(1), q(0), nt.clone()],
        vec![q(0), q(1), nt],
    ];
    Arrangement::new(distinct_hyperplanes(listed))
}

/// Drops normals proportional to an earlier one.
pub fn distinct_hyperplanes(normals: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut seen = HashSet::new();
    normals
        .into_iter()
        .filter(|a| {
            let mut key = primitive_direction(a);
            if key
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(Rational::is_negative)
            {
                key.iter_mut().for_each(|x| *x = -&*x);
            }
            seen.insert(key)
        })
        .collect()
}

pub fn boolean(n: usize) -> Result<Arrangement> {
    Arrangement::from_integer_normals(&(0..n).map(|i| unit(n, i)).collect::<Vec<_>>())
}

pub fn braid(n: usize) -> Result<Arrangement> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push(diff(n, i, j, -1));
        }
    }
    Arrangement::from_integer_normals(&v)
}

pub fn type_d(n: usize) -> Result<Arrangement> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push(diff(n, i, j, -1));
            v.push(diff(n, i, j, 1));
        }
    }
    Arrangement::from_integer_normals(&v)
}

/// All `x_i - x_j`, then `x_i + x_j` whenever `j - i` is prime.
pub fn primegap(n: usize) -> Result<Arrangement> {
    let is_prime = |m: usize| m >= 2 && (2..m).all(|p| !m.is_multiple_of(p));
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push(diff(n, i, j, -1));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if is_prime(j - i) {
                v.push(diff(n, i, j, 1));
            }
        }
    }
    Arrangement::from_integer_normals(&v)
}

/// Graphic arrangement on vertices `0..vertices`: one hyperplane `x_i - x_j`
/// per edge, oriented from the smaller vertex.
pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Arrangement> {
    let mut v = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        if a == b || a >= vertices || b >= vertices {
            return Err(Error::InvalidInput(format!("bad edge {a}-{b}")));
        }
        v.push(diff(vertices, a.min(b), a.max(b), -1));
    }
    Arrangement::from_integer_normals(&v)
}

/// `graphic(1-2,2-3,...)` with 1-based vertex labels.
fn graphic_spec(spec: &str, p: &str) -> Result<Arrangement> {
    let mut edges = Vec::new();
    for e in p.split(',') {
        let (a, b) = e
            .trim()
            .split_once('-')
            .ok_or_else(|| bad(spec, "edges look like i-j"))?;
        let parse = |s: &str| match s.trim().parse::<usize>() {
            Ok(x) if x >= 1 => Ok(x - 1),
            _ => Err(bad(spec, "vertex labels are positive integers")),
        };
        edges.push((parse(a)?, parse(b)?));
    }
    let vertices = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    graphic(vertices, &edges)
}

fn cross(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    vec![
        &p[1] * &q[2] - &p[2] * &q[1],
        &p[2] * &q[0] - &p[0] * &q[2],
        &p[0] * &q[1] - &p[1] * &q[0],
    ]
}

const ZIEGLER_PARAMS: [i64; 6] = [0, 1, 3, 7, -2, -5];

/// Nine lines through six points: the hexagon `P1..P6` and its three long
/// diagonals. The points sit on the parabola `y = x^2` (special); for the
/// general realization `P1` is moved off it.
pub fn ziegler(special: bool) -> Result<Arrangement> {
    let q = Rational::from_integer;
    let mut pts: Vec<Vec<Rational>> = ZIEGLER_PARAMS
        .iter()
        .map(|&t| vec![q(t), q(t * t), q(1)])
        .collect();
    if !special {
        pts[0][1] = q(1);
    }
    let pairs = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 0),
        (0, 3),
        (1, 4),
        (2, 5),
    ];
    let normals = pairs
        .iter()
        .map(|&(i, j)| cross(&pts[i], &pts[j]))
        .collect();
    let arr = Arrangement::new(normals)?;
    let triples = circuits(&arr).iter().filter(|c| c.len() == 3).count();
    if triples != 6 {
        return Err(Error::InvariantViolated(format!(
            "ziegler realization has {triples} triple points, expected 6"
        )));
    }
    if on_common_conic(&triple_points(&arr)) != special {
        return Err(Error::InvariantViolated(
            "ziegler conic condition not met".into(),
        ));
    }
    Ok(arr)
}

/// Projective points where three or more lines of a rank-3 arrangement meet,
/// one representative per size-3 circuit.
pub fn triple_points(arr: &Arrangement) -> Vec<Vec<Rational>> {
    circuits(arr)
        .iter()
        .filter(|c| c.len() == 3)
        .map(|c| {
            let rows = c
                .elements()
                .iter()
                .map(|&i| arr.normal(i).to_vec())
                .collect();
            kernel_basis(&QMatrix::from_rows(rows)).column(0)
        })
        .collect()
}

/// Whether six projective points lie on one conic: the 6x6 matrix of
/// degree-2 monomials is singular.
pub fn on_common_conic(points: &[Vec<Rational>]) -> bool {
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            vec![x * x, x * y, y * y, x * z, y * z, z * z]
        })
        .collect();
    QMatrix::from_rows(rows).rank() < 6
}
