//! Rational parameterization of integral zeros of ternary quadratic
//! equations `alpha x^2 + beta xy + gamma y^2 = delta z^2`.
//!
//! Given one integral point `(a, b, c)` with `c != 0`, every other rational
//! point on the conic is the second intersection with a line of rational
//! slope `m/n` through the seed. All arithmetic here is arbitrary precision.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::triples::EisensteinTriple;

/// A ternary quadratic equation together with a known integral zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicSpec {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    pub delta: BigInt,
    pub seed: [BigInt; 3],
}

impl ConicSpec {
    pub fn new(alpha: i64, beta: i64, gamma: i64, delta: i64, seed: [i64; 3]) -> Result<Self> {
        let spec = ConicSpec {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
            delta: delta.into(),
            seed: seed.map(BigInt::from),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `p^2 + 3 r^2 = q^2` seeded at `(-1, 0, 1)`.
    pub fn angle_form() -> Self {
        ConicSpec::new(1, 0, 3, 1, [-1, 0, 1]).expect("angle form is valid")
    }

    /// `a^2 - ab + b^2 = c^2` seeded at `(-1, -1, 1)`.
    pub fn norm_form() -> Self {
        ConicSpec::new(1, -1, 1, 1, [-1, -1, 1]).expect("norm form is valid")
    }

    pub fn validate(&self) -> Result<()> {
        if &self.beta * &self.beta == BigInt::from(4) * &self.alpha * &self.gamma {
            return Err(invalid("degenerate form: beta^2 = 4 alpha gamma"));
        }
        if self.delta.is_zero() {
            return Err(invalid("delta must be nonzero"));
        }
        let [a, b, c] = &self.seed;
        if c.is_zero() {
            return Err(invalid("seed must have c != 0"));
        }
        if !self.satisfied_by(a, b, c) {
            return Err(invalid("seed does not satisfy the equation"));
        }
        Ok(())
    }

    pub fn satisfied_by(&self, x: &BigInt, y: &BigInt, z: &BigInt) -> bool {
        &self.alpha * x * x + &self.beta * x * y + &self.gamma * y * y == &self.delta * z * z
    }

    fn binary_value(&self, m: &BigInt, n: &BigInt) -> BigInt {
        &self.alpha * m * m + &self.beta * m * n + &self.gamma * n * n
    }
}

/// A projective point with an integral representative, stored primitive
/// (`gcd(x, y, z) = 1`) and with sign fixed so that `z > 0`, or `y > 0`
/// when `z = 0`, or `x > 0` when `y = z = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveTriple {
    x: BigInt,
    y: BigInt,
    z: BigInt,
}

impl ProjectiveTriple {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Result<Self> {
        Self::from_big(x.into(), y.into(), z.into())
    }

    pub fn from_big(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        let g = x.gcd(&y).gcd(&z);
        if g.is_zero() {
            return Err(invalid("projective triple cannot be (0, 0, 0)"));
        }
        let (mut x, mut y, mut z) = (x / &g, y / &g, z / &g);
        let negate = match z.sign() {
            num_bigint::Sign::Minus => true,
            num_bigint::Sign::Plus => false,
            num_bigint::Sign::NoSign => y.is_negative() || (y.is_zero() && x.is_negative()),
        };
        if negate {
            x = -x;
            y = -y;
            z = -z;
        }
        Ok(ProjectiveTriple { x, y, z })
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    pub fn to_i64(&self) -> Option<[i64; 3]> {
        Some([self.x.to_i64()?, self.y.to_i64()?, self.z.to_i64()?])
    }

    /// Representative with every coordinate replaced by its absolute value.
    pub fn abs(&self) -> Self {
        Self::from_big(self.x.abs(), self.y.abs(), self.z.abs()).expect("nonzero")
    }

    fn sort_key(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.z, &self.x, &self.y)
    }
}

impl PartialOrd for ProjectiveTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `z`, then `x`, then `y`.
impl Ord for ProjectiveTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// `[x, y, z]` as JSON numbers when they fit in `i64`, else as decimal strings.
impl Serialize for ProjectiveTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(v) => v.serialize(s),
            None => [self.x.to_string(), self.y.to_string(), self.z.to_string()].serialize(s),
        }
    }
}

impl fmt::Display for ProjectiveTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// The point of `spec`'s conic cut out by the line of slope `m/n` through
/// the seed, as a primitive projective triple.
pub fn parameterize(spec: &ConicSpec, m: &BigInt, n: &BigInt) -> Result<ProjectiveTriple> {
    spec.validate()?;
    if !m.gcd(n).is_one() {
        return Err(invalid(format!("({m}, {n}) are not coprime")));
    }
    let denom = spec.binary_value(m, n);
    if denom.is_zero() {
        return Err(invalid(format!("slope {m}/{n} meets the conic at infinity")));
    }
    let ConicSpec { alpha, beta, gamma, .. } = spec;
    let [a, b, c] = &spec.seed;
    let two = BigInt::from(2);
    let x = gamma * n * (a * n - &two * b * m) - (alpha * a + beta * b) * m * m;
    let y = alpha * m * (b * m - &two * a * n) - (gamma * b + beta * a) * n * n;
    let z = c * denom;
    if !spec.satisfied_by(&x, &y, &z) {
        return Err(Error::Invariant(format!(
            "parameterization ({x}, {y}, {z}) does not solve the conic"
        )));
    }
    ProjectiveTriple::from_big(x, y, z)
}

fn parameterize_i64(spec: &ConicSpec, m: i64, n: i64) -> Result<ProjectiveTriple> {
    parameterize(spec, &BigInt::from(m), &BigInt::from(n))
}

/// Zeros of `p^2 + 3 r^2 = q^2` for `sqrt(3) < m/n <= 3`: the cosine of a
/// well-rounded angle is `p/q`, its sine `(r/q) sqrt(3)`.
pub fn solve_angle_form(m: i64, n: i64) -> Result<ProjectiveTriple> {
    if n <= 0 || m <= 0 {
        return Err(invalid("angle form needs m, n > 0"));
    }
    if m.gcd(&n) != 1 {
        return Err(invalid(format!("({m}, {n}) are not coprime")));
    }
    let (m2, n2) = (m as i128 * m as i128, n as i128 * n as i128);
    if !(3 * n2 < m2 && m <= 3 * n) {
        return Err(invalid(format!("ratio {m}/{n} outside (sqrt 3, 3]")));
    }
    let t = ProjectiveTriple::new(m2 - 3 * n2, 2 * m as i128 * n as i128, m2 + 3 * n2)?;
    debug_assert_eq!(t, parameterize_i64(&ConicSpec::angle_form(), m, n)?);
    Ok(t)
}

/// Eisenstein triple `(m(2n-m), n(2m-n), m^2-mn+n^2)` for coprime `m, n > 0`
/// with `1/2 <= m/n <= 2`. Not necessarily primitive.
pub fn solve_norm_form(m: i64, n: i64) -> Result<EisensteinTriple> {
    if m <= 0 || n <= 0 {
        return Err(invalid("norm form needs m, n > 0"));
    }
    if m.gcd(&n) != 1 {
        return Err(invalid(format!("({m}, {n}) are not coprime")));
    }
    if 2 * m < n || 2 * n < m {
        return Err(invalid(format!("ratio {m}/{n} outside [1/2, 2]")));
    }
    let a = m * (2 * n - m);
    let b = n * (2 * m - n);
    let c = m * m - m * n + n * n;
    EisensteinTriple::new(a, b, c)
}

/// Nonnegative seed `(x, y, 1)` of `x^2 + 3y^2 = d` found by exhaustive search.
pub fn find_seed(d: i64) -> Option<[i64; 3]> {
    (0..=(d / 3).sqrt()).find_map(|y| {
        let rest = d as i128 - 3 * (y as i128) * (y as i128);
        arith::exact_sqrt(rest).map(|x| [x as i64, y, 1])
    })
}

fn check_admissible(d: i64) -> Result<()> {
    if d < 1 {
        return Err(invalid(format!("d = {d} must be positive")));
    }
    if !arith::is_admissible_d(d as u64) {
        return Err(Error::NotRepresentable {
            value: d,
            reason: "not 1 or a product of distinct primes = 1 (mod 3)".into(),
        });
    }
    Ok(())
}

/// All projectively distinct, nonnegative, primitive solutions of
/// `p^2 + 3 r^2 = d q^2` with `q <= q_max`, sorted by `q`.
///
/// Slopes are drawn from a box that provably contains the slope of every
/// such solution: the line through the seed `(a, b, 1)` and `(x, y, z)` has
/// direction `(x - a z, y - b z)`, and the tangent at the seed has direction
/// `(-(beta a + 2 gamma b), 2 alpha a + beta b)`.
pub fn enumerate_s_d(d: i64, q_max: i64) -> Result<Vec<ProjectiveTriple>> {
    if q_max < 1 {
        return Err(invalid("q_max must be at least 1"));
    }
    check_admissible(d)?;
    let [sa, sb, _] = find_seed(d).ok_or_else(|| Error::Invariant(format!("no seed for d = {d}")))?;
    let spec = ConicSpec::new(1, 0, 3, d, [sa, sb, 1])?;

    let root_d = d.sqrt() + 1;
    let m_bound = root_d * q_max + sa * q_max + 6 * sb;
    let n_bound = root_d * q_max + sb * q_max + 2 * sa;

    let rows = crate::parallel::map_range(0, m_bound, |m| {
        let mut found = Vec::new();
        for n in -n_bound..=n_bound {
            if m.gcd(&n) != 1 || (m == 0 && n < 0) {
                continue;
            }
            let t = parameterize_i64(&spec, m, n).expect("coprime slope on a definite form");
            let t = t.abs();
            if t.z() <= &BigInt::from(q_max) {
                found.push(t);
            }
        }
        found
    });
    let set: BTreeSet<_> = rows.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

/// Number of integer pairs `(x, y)`, signs included, with `x^2 + 3y^2 = d`.
pub fn count_representations(d: i64) -> Result<u64> {
    check_admissible(d)?;
    let mut count = 0;
    for x in -(d.sqrt())..=d.sqrt() {
        let rest = d - x * x;
        if rest % 3 != 0 {
            continue;
        }
        match arith::exact_sqrt((rest / 3) as i128) {
            Some(0) => count += 1,
            Some(_) => count += 2,
            None => {}
        }
    }
    Ok(count)
}
