//! Eisenstein triples `(a, b, c)` with `a^2 - ab + b^2 = c^2`, their
//! associated pairs, the correspondence with zeros of the angle form, and
//! the matrix monoid acting on primitive triples.

use std::fmt;
use std::sync::LazyLock;

use num_integer::Integer;
use serde::Serialize;

use crate::arith;
use crate::conic::{self, ProjectiveTriple};
use crate::error::{invalid, Error, Result};
use crate::lattice::ClassParams;

mod tree;

pub use tree::{generate_tree, Edge, Tree, TreeExport};

/// Nonnegative solution of `a^2 - ab + b^2 = c^2`, not all zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EisensteinTriple {
    a: i64,
    b: i64,
    c: i64,
}

impl EisensteinTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 0 || b < 0 || c < 0 {
            return Err(invalid(format!("({a},{b},{c}) has a negative entry")));
        }
        if (a, b, c) == (0, 0, 0) {
            return Err(invalid("(0,0,0) is not an Eisenstein triple"));
        }
        let (a2, b2, c2) = (a as i128, b as i128, c as i128);
        if a2 * a2 - a2 * b2 + b2 * b2 != c2 * c2 {
            return Err(invalid(format!("({a},{b},{c}) does not satisfy a^2-ab+b^2=c^2")));
        }
        Ok(EisensteinTriple { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn abc(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn gcd(&self) -> i64 {
        arith::gcd3(self.a, self.b, self.c)
    }

    /// Divides out the common factor of the entries.
    pub fn reduced(&self) -> Self {
        let g = self.gcd();
        EisensteinTriple { a: self.a / g, b: self.b / g, c: self.c / g }
    }

    pub fn is_primitive(&self) -> bool {
        self.a <= self.b && self.gcd() == 1
    }

    pub fn is_upper(&self) -> bool {
        self.b > 2 * self.a
    }

    pub fn is_lower(&self) -> bool {
        self.b < 2 * self.a
    }

    /// `(b - a, b, c)`.
    ///
    /// # Panics
    /// If `a > b`; the map is only defined for triples with `a <= b`.
    pub fn associate(&self) -> Self {
        assert!(self.a <= self.b, "associate needs a <= b, got {self}");
        EisensteinTriple { a: self.b - self.a, b: self.b, c: self.c }
    }
}

impl fmt::Display for EisensteinTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn require_primitive(t: &EisensteinTriple) -> Result<()> {
    if t.is_primitive() {
        Ok(())
    } else {
        Err(invalid(format!("{t} is not a primitive Eisenstein triple")))
    }
}

/// The two primitive triples `(a, b, c)` and `(b - a, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AssociatedPair {
    upper: EisensteinTriple,
    lower: EisensteinTriple,
}

impl AssociatedPair {
    /// Builds the pair containing the primitive triple `t`.
    pub fn containing(t: EisensteinTriple) -> Result<Self> {
        require_primitive(&t)?;
        let other = t.associate();
        let (upper, lower) = if t.is_upper() { (t, other) } else { (other, t) };
        if !upper.is_upper() || !lower.is_lower() {
            return Err(Error::Invariant(format!("{t} has b = 2a")));
        }
        Ok(AssociatedPair { upper, lower })
    }

    pub fn root() -> Self {
        Self::containing(EisensteinTriple { a: 0, b: 1, c: 1 }).expect("root pair")
    }

    pub fn upper(&self) -> EisensteinTriple {
        self.upper
    }

    pub fn lower(&self) -> EisensteinTriple {
        self.lower
    }

    pub fn c(&self) -> i64 {
        self.upper.c
    }

    pub fn contains(&self, t: &EisensteinTriple) -> bool {
        self.upper == *t || self.lower == *t
    }

    /// `"a,b,c"` of the upper triple.
    pub fn label(&self) -> String {
        format!("{},{},{}", self.upper.a, self.upper.b, self.upper.c)
    }
}

impl fmt::Display for AssociatedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.label())
    }
}

/// gcd of `solve_norm_form(m, n)`: 3 when `3 | m + n`, else 1.
pub fn classify_gcd(m: i64, n: i64) -> Result<i64> {
    if m.gcd(&n) != 1 {
        return Err(invalid(format!("({m}, {n}) are not coprime")));
    }
    Ok(if (m + n) % 3 == 0 { 3 } else { 1 })
}

fn check_class_params(m: i64, n: i64) -> Result<()> {
    if m <= 0 || n <= 0 {
        return Err(invalid(format!("({m}, {n}): m and n must be positive")));
    }
    if m.gcd(&n) != 1 {
        return Err(invalid(format!("({m}, {n}) are not coprime")));
    }
    if !(n <= m && m <= 2 * n) {
        return Err(invalid(format!("({m}, {n}): ratio m/n outside [1, 2]")));
    }
    if (m + n) % 3 == 0 {
        return Err(invalid(format!("({m}, {n}): 3 divides m + n")));
    }
    Ok(())
}

/// The associated pair containing `solve_norm_form(m, n)`.
pub fn primitive_pair_from_params(m: i64, n: i64) -> Result<AssociatedPair> {
    check_class_params(m, n)?;
    let t = conic::solve_norm_form(m, n)?;
    if !t.is_primitive() {
        return Err(Error::Invariant(format!("{t} from ({m},{n}) is not primitive")));
    }
    AssociatedPair::containing(t)
}

/// Recovers the admissible `(m, n)` parameterizing `t` or its associate,
/// using `a + c = n(m+n)`, `b + c = m(m+n)` and `a + b + 2c = (m+n)^2`.
pub fn params_from_triple(t: &EisensteinTriple) -> Result<(i64, i64)> {
    require_primitive(t)?;
    for cand in [*t, t.associate()] {
        let Some(s) = arith::exact_sqrt(cand.a as i128 + cand.b as i128 + 2 * cand.c as i128) else {
            continue;
        };
        let s = s as i64;
        if s == 0 || (cand.b + cand.c) % s != 0 || (cand.a + cand.c) % s != 0 {
            continue;
        }
        let (m, n) = ((cand.b + cand.c) / s, (cand.a + cand.c) / s);
        if check_class_params(m, n).is_ok() && conic::solve_norm_form(m, n)? == cand {
            return Ok((m, n));
        }
    }
    Err(Error::Invariant(format!("no admissible (m, n) parameterizes {t} or its associate")))
}

/// Point of the angle form `(|b - 2a|, b, 2c)` attached to a pair.
pub fn angle_point_of_pair(p: &AssociatedPair) -> ProjectiveTriple {
    let t = p.upper;
    ProjectiveTriple::new((t.b - 2 * t.a).abs(), t.b, 2 * t.c).expect("nonzero")
}

/// Inverse of [`angle_point_of_pair`] on points `(p, r, q)` with
/// `p^2 + 3r^2 = q^2` and `0 < p/q <= 1/2`.
pub fn pair_of_angle_point(pt: &ProjectiveTriple) -> Result<AssociatedPair> {
    let [p, r, q] = pt
        .to_i64()
        .ok_or_else(|| invalid("angle point does not fit in 64 bits"))?;
    let sq = |v: i64| v as i128 * v as i128;
    if sq(p) + 3 * sq(r) != sq(q) || !(0 < p && 2 * p <= q) || r < 0 {
        return Err(invalid(format!("{pt} is not an angle point with 0 < p/q <= 1/2")));
    }
    let scale = if (r - p) % 2 != 0 || q % 2 != 0 { 2 } else { 1 };
    let (a, b, c) = (scale * (r - p) / 2, scale * r, scale * q / 2);
    let t = EisensteinTriple::new(a, b, c)?.reduced();
    AssociatedPair::containing(t)
}

/// Generators of the monoid acting on primitive triples. `M4 = M1 U` and
/// `M5 = M2 U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    U,
    M1,
    M2,
    M3,
    M4,
    M5,
}

impl Generator {
    pub const ALL: [Generator; 6] =
        [Generator::U, Generator::M1, Generator::M2, Generator::M3, Generator::M4, Generator::M5];

    /// The five generators acting on associated pairs.
    pub const PAIR_ACTION: [Generator; 5] =
        [Generator::M1, Generator::M2, Generator::M3, Generator::M4, Generator::M5];

    fn index(self) -> usize {
        self as usize
    }

    pub fn matrix(self) -> Matrix3 {
        GENERATORS.forward[self.index()]
    }

    pub fn inverse_matrix(self) -> Matrix3 {
        GENERATORS.inverse[self.index()]
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite word over the generators, applied right to left like a
/// matrix product: `[g1, g2]` means `g1 * g2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct MonoidWord(pub Vec<Generator>);

impl MonoidWord {
    pub fn apply(&self, t: &EisensteinTriple) -> Result<EisensteinTriple> {
        self.0.iter().rev().try_fold(*t, |acc, &g| apply_generator(g, &acc))
    }

    pub fn matrix(&self) -> Matrix3 {
        self.0.iter().fold(IDENTITY, |acc, g| mat_mul(&acc, &g.matrix()))
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("·"))
    }
}

pub type Matrix3 = [[i64; 3]; 3];

const IDENTITY: Matrix3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
const U: Matrix3 = [[-1, 1, 0], [0, 1, 0], [0, 0, 1]];
const M1: Matrix3 = [[3, -4, 4], [7, -7, 8], [6, -6, 7]];
const M2: Matrix3 = [[-4, 3, 4], [-7, 7, 8], [-6, 6, 7]];
const M3: Matrix3 = [[1, 3, 4], [0, 7, 8], [0, 6, 7]];

pub fn mat_mul(x: &Matrix3, y: &Matrix3) -> Matrix3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

fn mat_vec(x: &Matrix3, v: [i64; 3]) -> [i64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| x[i][k] * v[k]).sum())
}

fn det3(x: &Matrix3) -> i64 {
    x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0])
        + x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0])
}

/// Inverse of a unimodular matrix via the adjugate.
fn unimodular_inverse(x: &Matrix3) -> Matrix3 {
    let det = det3(x);
    assert!(det == 1 || det == -1, "generator has determinant {det}");
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = x[r0][c0] * x[r1][c1] - x[r0][c1] * x[r1][c0];
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            out[i][j] = sign * minor * det;
        }
    }
    out
}

struct GeneratorTable {
    forward: [Matrix3; 6],
    inverse: [Matrix3; 6],
}

static GENERATORS: LazyLock<GeneratorTable> = LazyLock::new(|| {
    let m4 = mat_mul(&M1, &U);
    let m5 = mat_mul(&M2, &U);
    let forward = [U, M1, M2, M3, m4, m5];
    let inverse = forward.map(|m| unimodular_inverse(&m));
    for (m, inv) in forward.iter().zip(&inverse) {
        assert_eq!(mat_mul(m, inv), IDENTITY);
    }
    GeneratorTable { forward, inverse }
});

/// Left multiplication of a primitive triple by a generator. The result is
/// checked to be a primitive triple again.
pub fn apply_generator(g: Generator, t: &EisensteinTriple) -> Result<EisensteinTriple> {
    require_primitive(t)?;
    let [a, b, c] = mat_vec(&g.matrix(), t.abc());
    let image = EisensteinTriple::new(a, b, c)
        .map_err(|e| Error::Invariant(format!("{g}{t} left the triple set: {e}")))?;
    if !image.is_primitive() {
        return Err(Error::Invariant(format!("{g}{t} = {image} is not primitive")));
    }
    Ok(image)
}

/// Action on pairs: the pair of `g` applied to the upper triple.
pub fn apply_to_pair(g: Generator, p: &AssociatedPair) -> Result<AssociatedPair> {
    AssociatedPair::containing(apply_generator(g, &p.upper)?)
}

/// Picks the generator whose inverse should step an upper triple with
/// `a > 0` towards the root, by locating `c/b` relative to
/// `gamma1 > 7/8 > gamma2 > 13/15`, the `gamma`s being the roots of
/// `143 t^2 - 252 t + 111`.
pub fn descent_generator(t: &EisensteinTriple) -> Generator {
    let (b, c) = (t.b as i128, t.c as i128);
    // 143 (143 c^2 - 252 cb + 111 b^2) = (143c - 126b)^2 - 3b^2, so a
    // positive value means c/b lies outside [gamma2, gamma1].
    let quad = 143 * c * c - 252 * c * b + 111 * b * b;
    let above_vertex = 143 * c > 126 * b;
    let above_gamma1 = quad > 0 && above_vertex;
    let above_gamma2 = above_vertex || quad < 0;
    if above_gamma1 {
        Generator::M1
    } else if 8 * c >= 7 * b {
        Generator::M4
    } else if above_gamma2 {
        Generator::M5
    } else if 15 * c >= 13 * b {
        Generator::M2
    } else {
        Generator::M3
    }
}

/// One step towards the root: returns the chosen generator `g` and the
/// triple `s` with `g s = t`. `s` must be a primitive upper triple with
/// smaller `c`; anything else is reported as a conjecture failure.
pub fn descend(t: &EisensteinTriple) -> Result<(Generator, EisensteinTriple)> {
    require_primitive(t)?;
    if !t.is_upper() || t.a == 0 {
        return Err(invalid(format!("descent needs an upper triple with a > 0, got {t}")));
    }
    let g = descent_generator(t);
    let [x, y, z] = mat_vec(&g.inverse_matrix(), t.abc());
    let fail = |why: &str| Error::Conjecture(format!("{g}^-1 {t} = ({x},{y},{z}) {why}"));
    let s = EisensteinTriple::new(x, y, z).map_err(|_| fail("is not an Eisenstein triple"))?;
    if !s.is_primitive() {
        return Err(fail("is not primitive"));
    }
    if !s.is_upper() {
        return Err(fail("is not an upper triple"));
    }
    if s.c >= t.c {
        return Err(fail("does not decrease c"));
    }
    Ok((g, s))
}

/// Iterates [`descend`] down to `(0,1,1)`; the word `w` returned satisfies
/// `w (0,1,1) = t`.
pub fn descent_word(t: &EisensteinTriple) -> Result<MonoidWord> {
    require_primitive(t)?;
    let mut cur = if t.is_upper() { *t } else { t.associate() };
    let mut word = Vec::new();
    if !t.is_upper() {
        word.push(Generator::U);
    }
    let mut steps = Vec::new();
    while cur.a > 0 {
        let (g, prev) = descend(&cur)?;
        steps.push(g);
        cur = prev;
    }
    if cur.abc() != [0, 1, 1] {
        return Err(Error::Conjecture(format!("descent of {t} stopped at {cur}")));
    }
    // Steps were collected outermost first, which is already word order.
    word.extend(steps);
    Ok(MonoidWord(word))
}

/// Every associated pair with `c <= c_max`, from the parameterization,
/// sorted by `(c, upper a)`.
pub fn pairs_up_to(c_max: i64) -> Vec<AssociatedPair> {
    let mut out = Vec::new();
    let mut n = 1;
    while n * n <= c_max {
        for m in n..=2 * n {
            if ClassParams::new(m, n).is_ok() && m * m - m * n + n * n <= c_max {
                out.push(primitive_pair_from_params(m, n).expect("admissible"));
            }
        }
        n += 1;
    }
    out.sort_by_key(|p| (p.c(), p.upper.a));
    out
}
