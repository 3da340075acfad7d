//! Sublattices of the hexagonal lattice in coefficient coordinates.
//!
//! A sublattice is stored as an integer matrix `C = [[a, c], [b, d]]`
//! whose columns `(a, b)` and `(c, d)` are coordinates with respect to the
//! hexagonal basis `(1, 0)`, `(-1/2, sqrt(3)/2)`. The squared length of
//! `(a, b)` is the Eisenstein norm `a^2 - ab + b^2` and twice the inner
//! product of `(a, b)` and `(c, d)` is `2ac + 2bd - ad - bc`, so minima,
//! indices and cosines are all exact integers or rationals.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::conic::ProjectiveTriple;
use crate::error::{invalid, Error, Result};
use crate::triples::{pair_of_angle_point, params_from_triple};

/// Coefficient vector in the hexagonal basis.
pub type Coeffs = [i64; 2];

/// `a^2 - ab + b^2`.
pub fn norm_form(a: i64, b: i64) -> i64 {
    a * a - a * b + b * b
}

fn norm(v: Coeffs) -> i64 {
    norm_form(v[0], v[1])
}

/// Twice the Euclidean inner product of two coefficient vectors.
pub fn dot2(x: Coeffs, y: Coeffs) -> i64 {
    2 * x[0] * y[0] + 2 * x[1] * y[1] - x[0] * y[1] - x[1] * y[0]
}

/// Product of Eisenstein integers `a + b w` and `c + d w`, `w^2 = -1 - w`.
pub fn eisenstein_mul(x: Coeffs, y: Coeffs) -> Coeffs {
    [x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0] - x[1] * y[1]]
}

/// A full-rank sublattice of the hexagonal lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HexSublattice {
    cols: [Coeffs; 2],
}

impl HexSublattice {
    pub fn from_columns(x: Coeffs, y: Coeffs) -> Result<Self> {
        let l = HexSublattice { cols: [x, y] };
        if l.det() == 0 {
            return Err(Error::Singular);
        }
        Ok(l)
    }

    /// From the matrix literal `[[a, c], [b, d]]` (rows of `C`).
    pub fn from_matrix(m: [[i64; 2]; 2]) -> Result<Self> {
        Self::from_columns([m[0][0], m[1][0]], [m[0][1], m[1][1]])
    }

    pub fn hexagonal() -> Self {
        HexSublattice { cols: [[1, 0], [0, 1]] }
    }

    pub fn columns(&self) -> [Coeffs; 2] {
        self.cols
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        let [x, y] = self.cols;
        [[x[0], y[0]], [x[1], y[1]]]
    }

    pub fn det(&self) -> i64 {
        let [x, y] = self.cols;
        x[0] * y[1] - x[1] * y[0]
    }

    /// `|det C|`, the index in the hexagonal lattice.
    pub fn index(&self) -> i64 {
        self.det().abs()
    }

    /// Euclidean covolume `index * sqrt(3) / 2`.
    pub fn covolume(&self) -> f64 {
        self.index() as f64 * 3f64.sqrt() / 2.0
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        let [x, y] = self.cols;
        Self::from_columns([k * x[0], k * x[1]], [k * y[0], k * y[1]])
    }

    /// Image under multiplication by the Eisenstein integer `alpha`: a
    /// rotation composed with scaling by `sqrt(N(alpha))`.
    pub fn times_eisenstein(&self, alpha: Coeffs) -> Result<Self> {
        let [x, y] = self.cols;
        Self::from_columns(eisenstein_mul(alpha, x), eisenstein_mul(alpha, y))
    }

    /// Canonical basis `[[A, B], [0, D]]` with `A, D > 0` and `0 <= B < A`.
    pub fn hermite_form(&self) -> Self {
        let [x, y] = self.cols;
        let e = x[1].extended_gcd(&y[1]);
        let (g, s, t) = (e.gcd, e.x, e.y);
        // w2 = s x + t y has second coordinate g; w1 kills it.
        let w1 = (y[1] / g) * x[0] - (x[1] / g) * y[0];
        let w2 = s * x[0] + t * y[0];
        let a = w1.abs();
        let b = w2.rem_euclid(a);
        HexSublattice { cols: [[a, 0], [b, g]] }
    }

    /// Same lattice as `other` (not merely similar).
    pub fn same_lattice(&self, other: &Self) -> bool {
        self.hermite_form() == other.hermite_form()
    }
}

impl fmt::Display for HexSublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.matrix();
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl FromStr for HexSublattice {
    type Err = Error;

    /// Parses `[[a,c],[b,d]]`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = cleaned
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(|| invalid(format!("expected [[a,c],[b,d]], got {s:?}")))?;
        let rows: Vec<&str> = body.split("],[").collect();
        let parse_row = |r: &str| -> Result<[i64; 2]> {
            let v: Vec<i64> = r
                .split(',')
                .map(|t| t.parse::<i64>().map_err(|e| invalid(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?;
            <[i64; 2]>::try_from(v).map_err(|_| invalid(format!("row {r:?} needs two entries")))
        };
        match rows.as_slice() {
            [r0, r1] => Self::from_matrix([parse_row(r0)?, parse_row(r1)?]),
            _ => Err(invalid(format!("expected two rows in {s:?}"))),
        }
    }
}

impl Serialize for HexSublattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HexSublattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = <[[i64; 2]; 2]>::deserialize(d)?;
        HexSublattice::from_matrix(m).map_err(serde::de::Error::custom)
    }
}

/// `round(a / b)` for `b > 0`, halves rounded up.
fn round_div(a: i64, b: i64) -> i64 {
    (2 * a + b).div_euclid(2 * b)
}

/// Lagrange (Gauss) reduction. The returned basis spans the same lattice,
/// realizes both successive minima (`N(x) <= N(y)`) and satisfies
/// `0 <= 2 x.y <= N(x)`.
pub fn lagrange_reduce(l: &HexSublattice) -> HexSublattice {
    let [mut x, mut y] = l.cols;
    if norm(x) > norm(y) {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let q = round_div(dot2(x, y), 2 * norm(x));
        y = [y[0] - q * x[0], y[1] - q * x[1]];
        if norm(y) >= norm(x) {
            break;
        }
        std::mem::swap(&mut x, &mut y);
    }
    if dot2(x, y) < 0 {
        y = [-y[0], -y[1]];
    }
    HexSublattice { cols: [x, y] }
}

/// Squared length of a shortest nonzero vector.
pub fn minimum(l: &HexSublattice) -> i64 {
    norm(lagrange_reduce(l).cols[0])
}

/// Both successive minima (first `<=` second).
pub fn successive_minima(l: &HexSublattice) -> (i64, i64) {
    let r = lagrange_reduce(l);
    (norm(r.cols[0]), norm(r.cols[1]))
}

pub fn is_well_rounded(l: &HexSublattice) -> bool {
    let (a, b) = successive_minima(l);
    a == b
}

/// Cosine of the angle between minimal basis vectors, with the matching
/// zero `(p, r, q)` of `p^2 + 3r^2 = q^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AngleData {
    pub cos_num: i64,
    pub cos_den: i64,
    pub triple: ProjectiveTriple,
}

impl AngleData {
    pub fn cos(&self) -> f64 {
        self.cos_num as f64 / self.cos_den as f64
    }
}

pub fn angle_data(l: &HexSublattice) -> Result<AngleData> {
    let r = lagrange_reduce(l);
    let [x, y] = r.cols;
    let m = norm(x);
    if norm(y) != m {
        return Err(Error::NotWellRounded);
    }
    let p = dot2(x, y);
    let q = 2 * m;
    let g = p.gcd(&q);
    let triple = ProjectiveTriple::new(p, r.index(), q)?;
    Ok(AngleData { cos_num: p / g, cos_den: q / g, triple })
}

/// Parameters `(m, n)` of a similarity class: coprime, `n <= m <= 2n`,
/// `3` does not divide `m + n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ClassParams {
    m: i64,
    n: i64,
}

#[derive(Deserialize)]
struct RawParams {
    m: i64,
    n: i64,
}

impl TryFrom<RawParams> for ClassParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ClassParams::new(raw.m, raw.n)
    }
}

impl ClassParams {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m <= 0 || n <= 0 || m.gcd(&n) != 1 || !(n <= m && m <= 2 * n) || (m + n) % 3 == 0 {
            return Err(invalid(format!("({m}, {n}) is not an admissible class parameter")));
        }
        Ok(ClassParams { m, n })
    }

    pub fn hexagonal() -> Self {
        ClassParams { m: 1, n: 1 }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Index `n(2m - n)` of the minimal lattice of the class.
    pub fn base_index(&self) -> i64 {
        self.n * (2 * self.m - self.n)
    }

    /// Minimum `m^2 - mn + n^2` of the minimal lattice of the class.
    pub fn base_minimum(&self) -> i64 {
        norm_form(self.m, self.n)
    }

    /// `cos = |n^2 + 2mn - 2m^2| / (2 (n^2 - mn + m^2))`, reduced.
    pub fn cos(&self) -> (i64, i64) {
        let (m, n) = (self.m, self.n);
        let num = (n * n + 2 * m * n - 2 * m * m).abs();
        let den = 2 * norm_form(m, n);
        let g = num.gcd(&den);
        (num / g, den / g)
    }
}

impl fmt::Display for ClassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Minimal well-rounded sublattice of the class: `C = [[m, m-n], [m-n, m]]`.
pub fn gamma_theta(params: ClassParams) -> HexSublattice {
    let (m, n) = (params.m, params.n);
    HexSublattice::from_matrix([[m, m - n], [m - n, m]]).expect("det = n(2m-n) > 0")
}

/// Well-rounded sublattice `C = [[m+n, m-n], [2n, -2n]]` built from the angle
/// form; defined for coprime `m, n` with `sqrt(3) < m/n <= 3`.
pub fn omega_theta(m: i64, n: i64) -> Result<HexSublattice> {
    // Validates coprimality and the ratio.
    crate::conic::solve_angle_form(m, n)?;
    HexSublattice::from_matrix([[m + n, m - n], [2 * n, -2 * n]])
}

/// Similarity class of a well-rounded sublattice.
pub fn class_of(l: &HexSublattice) -> Result<ClassParams> {
    let angle = angle_data(l)?;
    let pair = pair_of_angle_point(&angle.triple)
        .map_err(|e| Error::Invariant(format!("angle of {l} has no Eisenstein pair: {e}")))?;
    let (m, n) = params_from_triple(&pair.upper())?;
    ClassParams::new(m, n)
}
