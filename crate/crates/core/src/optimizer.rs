//! Fixed-index optimization: largest minimum, elimination of impossible
//! indices, and Epstein zeta / SNR evaluation with explicit error bounds.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_integer::Roots;
use num_rational::Rational64;
use serde::Serialize;

use crate::arith::{divisors, exact_sqrt, factorize, is_prime, primes_2_mod_3_even};
use crate::enumeration::{decompose_k, list_representations, oracle_scan, IndexRepresentation};
use crate::error::{invalid, Error, Result};
use crate::lattice::{dot2, lagrange_reduce, norm_form, ClassParams, HexSublattice};
use crate::parallel;

/// `M = x^2 - xy + y^2` has an integer solution.
pub fn is_loeschian(m: u64) -> bool {
    m == 0 || primes_2_mod_3_even(m)
}

/// Which elimination case applies to an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Elimination {
    /// `J` is prime.
    Prime,
    /// `J = pq` with odd primes `q > 3p`.
    WidePrimePair,
    /// `J = 2p` with `p` an odd prime.
    TwicePrime,
}

impl std::fmt::Display for Elimination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Elimination::Prime => "J is prime",
            Elimination::WidePrimePair => "J = pq with odd primes q > 3p",
            Elimination::TwicePrime => "J = 2p with p an odd prime",
        })
    }
}

/// Sufficient condition for the absence of well-rounded sublattices of
/// index `J`. Only applies when `J` is not a norm.
pub fn elimination_case(big_j: u64) -> Option<Elimination> {
    if big_j < 2 || is_loeschian(big_j) {
        return None;
    }
    if is_prime(big_j) {
        return Some(Elimination::Prime);
    }
    match factorize(big_j).as_slice() {
        [(2, 1), (p, 1)] if *p > 2 => Some(Elimination::TwicePrime),
        [(p, 1), (q, 1)] if *p > 2 && *q > 3 * *p => Some(Elimination::WidePrimePair),
        _ => None,
    }
}

/// `true` when [`elimination_case`] applies; `false` means "inapplicable",
/// not "a sublattice exists".
pub fn eliminate_test(big_j: u64) -> bool {
    elimination_case(big_j).is_some()
}

/// A class attaining the largest minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(flatten)]
    pub rep: IndexRepresentation,
    pub k: u64,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxMinResult {
    #[serde(rename = "J")]
    pub index: u64,
    pub best_minimum: Option<u64>,
    pub witnesses: Vec<Witness>,
    pub exists: bool,
}

/// Largest minimum of an index-`J` well-rounded sublattice, with every
/// class attaining it. Scans `(m, n)` with `(2m - n) n | J` and keeps those
/// for which `J c / ((2m - n) n)` is a norm.
pub fn max_min(big_j: u64) -> Result<MaxMinResult> {
    if big_j == 0 {
        return Err(invalid("index must be positive"));
    }
    let candidates = parallel::flat_map(&divisors(big_j), |&b| {
        divisors(b)
            .into_iter()
            .filter_map(|n| {
                let twice_m = b / n + n;
                if twice_m % 2 != 0 {
                    return None;
                }
                let params = ClassParams::new((twice_m / 2) as i64, n as i64).ok()?;
                let k = big_j / b;
                is_loeschian(k * params.base_minimum() as u64).then_some((params, k))
            })
            .collect()
    });
    let best = candidates.iter().map(|(p, k)| k * p.base_minimum() as u64).max();
    let mut witnesses = Vec::new();
    for (params, k) in candidates {
        if Some(k * params.base_minimum() as u64) != best {
            continue;
        }
        let parts = decompose_k(k)?
            .ok_or_else(|| Error::Invariant(format!("k = {k} passes the norm test but has no 3^u j^2 d form")))?;
        let rep = IndexRepresentation::new(parts.u, parts.j, parts.d, params)?;
        witnesses.push(Witness { name: lattice_name(&rep), rep, k });
    }
    witnesses.sort_by_key(|w| w.rep.params);
    Ok(MaxMinResult { index: big_j, best_minimum: best, exists: best.is_some(), witnesses })
}

/// `cos = sqrt(4M^2 - 3J^2) / (2M)` when rational and at most `1/2`.
/// This is necessary, not sufficient, for a well-rounded sublattice of
/// index `J` and minimum `M`.
pub fn cos_from_index_min(big_j: u64, m: u64) -> Result<Option<Rational64>> {
    if big_j == 0 || m == 0 {
        return Err(invalid("index and minimum must be positive"));
    }
    let disc = 4 * (m as i128).pow(2) - 3 * (big_j as i128).pow(2);
    if disc < 0 {
        return Err(invalid(format!("4M^2 < 3J^2 for J = {big_j}, M = {m}: no such angle")));
    }
    let Some(root) = exact_sqrt(disc) else { return Ok(None) };
    let cos = Rational64::new(root as i64, 2 * m as i64);
    Ok((cos <= Rational64::new(1, 2)).then_some(cos))
}

/// Some `(p, r)` with `p, r > 0` and `p^2 + 3r^2 = d`, smallest `r` first.
fn angle_form_point(d: u64) -> Option<(u64, u64)> {
    (1..).take_while(|r| 3 * r * r < d).find_map(|r| {
        let p2 = d - 3 * r * r;
        let p = p2.sqrt();
        (p * p == p2).then_some((p, r))
    })
}

/// Name of the realized lattice in the `j sqrt(3^u d) A Gamma_theta(m, n)`
/// notation, e.g. `2 Γ_θ(3,2)` or `√3 B_1(1,1,2,1) Γ_θ(4,3)`.
pub fn lattice_name(rep: &IndexRepresentation) -> String {
    let mut parts = Vec::new();
    let rad = 3u64.pow(rep.u) * rep.d;
    match (rep.j, rad) {
        (1, 1) => {}
        (j, 1) => parts.push(j.to_string()),
        (1, r) => parts.push(format!("√{r}")),
        (j, r) => parts.push(format!("{j}√{r}")),
    }
    let (p, r) = angle_form_point(rep.d).unwrap_or((1, 0));
    match (rep.u, rep.d) {
        (0, 1) => {}
        (0, d) => parts.push(format!("A_1({p},{r},1,{d})")),
        (_, 1) => parts.push("B_1(1,1,2,1)".to_string()),
        (_, d) => parts.push(format!("B_1({p},{r},1,{d})")),
    }
    let (m, n) = (rep.params.m(), rep.params.n());
    if (m, n) == (1, 1) {
        parts.push("Λ_h".to_string());
    } else {
        parts.push(format!("Γ_θ({m},{n})"));
    }
    parts.join(" ")
}

/// Value of an Epstein zeta sum and a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaValue {
    pub value: f64,
    pub abs_error_bound: f64,
    pub s: f64,
    pub truncation_radius: u64,
}

impl ZetaValue {
    pub fn lower(&self) -> f64 {
        self.value - self.abs_error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.abs_error_bound
    }
}

/// Neumaier's compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.c
    }
}

/// `Q(x, y) = a x^2 + b xy + c y^2`, the Gram form of a reduced basis.
#[derive(Debug, Clone, Copy)]
struct Gram {
    a: i128,
    b: i128,
    c: i128,
    covolume: f64,
}

impl Gram {
    fn of(l: &HexSublattice) -> Gram {
        let [x, y] = lagrange_reduce(l).columns();
        Gram {
            a: norm_form(x[0], x[1]) as i128,
            b: dot2(x, y) as i128,
            c: norm_form(y[0], y[1]) as i128,
            covolume: l.covolume(),
        }
    }

    /// Every lattice point lies within this distance of each point of its
    /// centred fundamental parallelogram: half the long diagonal.
    fn cell_radius(&self) -> f64 {
        (((self.a + self.c + self.b.abs()) as f64).sqrt()) / 2.0
    }

    /// Sum of `Q^-s` over nonzero `v` with `Q(v) <= r`, and the term count.
    fn partial_sum(&self, s: f64, r: i128) -> (f64, u64) {
        let Gram { a, b, c, .. } = *self;
        let disc = 4 * a * c - b * b;
        let ymax = (4 * a * r / disc).sqrt() + 1;
        let term = |q: i128| {
            let q = q as f64;
            if s == 2.0 {
                1.0 / (q * q)
            } else {
                q.powf(-s)
            }
        };
        let rows = parallel::map_range(-(ymax as i64), ymax as i64, |y| {
            let y = y as i128;
            let mut acc = Compensated::default();
            let mut n = 0u64;
            let d = 4 * a * r - disc * y * y;
            if d < 0 {
                return (acc, n);
            }
            let root = d.sqrt();
            let lo = (-b * y - root).div_euclid(2 * a) - 1;
            let hi = (-b * y + root).div_euclid(2 * a) + 1;
            for x in lo..=hi {
                let q = a * x * x + b * x * y + c * y * y;
                if q > 0 && q <= r {
                    acc.add(term(q));
                    n += 1;
                }
            }
            (acc, n)
        });
        let mut total = Compensated::default();
        let mut count = 0;
        for (acc, n) in rows {
            total.add(acc.sum);
            total.add(acc.c);
            count += n;
        }
        (total.total(), count)
    }

    /// Bound on `|sum_{Q > R} Q^-s - (pi/A) R^(1-s)/(s-1)|` from the
    /// lattice point count `|N(t) - pi t / A| <= pi (2 delta sqrt t + delta^2) / A`.
    fn tail_error(&self, s: f64, r: f64) -> f64 {
        let delta = self.cell_radius();
        PI / self.covolume
            * (2.0 * delta * r.powf(0.5 - s) * (s / (s - 0.5) + 1.0) + 2.0 * delta * delta * r.powf(-s))
    }

    fn continuum_tail(&self, s: f64, r: f64) -> f64 {
        PI / self.covolume * r.powf(1.0 - s) / (s - 1.0)
    }
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(invalid(format!("the Epstein zeta sum diverges for s = {s}")));
    }
    Ok(())
}

/// `E_L(s)` from all vectors with squared length at most `radius`, plus
/// the continuum tail. The error bound covers truncation and rounding.
pub fn epstein_zeta_at_radius(l: &HexSublattice, s: f64, radius: u64) -> Result<ZetaValue> {
    check_s(s)?;
    if radius == 0 {
        return Err(invalid("truncation radius must be positive"));
    }
    let g = Gram::of(l);
    let (partial, n) = g.partial_sum(s, radius as i128);
    let r = radius as f64;
    let tail = g.continuum_tail(s, r);
    let eps = f64::EPSILON;
    let rounding = partial * (8.0 * eps + n as f64 * eps * eps) + 4.0 * eps * tail;
    Ok(ZetaValue {
        value: partial + tail,
        abs_error_bound: g.tail_error(s, r) + rounding,
        s,
        truncation_radius: radius,
    })
}

/// Largest radius `epstein_zeta` will sum to; about `pi R / A` terms.
const MAX_TERMS: f64 = 4e9;

/// `E_L(s) = sum over nonzero v in L of |v|^(-2s)` to relative accuracy
/// `rel_tol`. The radius is doubled until the rigorous bound is met.
pub fn epstein_zeta(l: &HexSublattice, s: f64, rel_tol: f64) -> Result<ZetaValue> {
    check_s(s)?;
    if !(rel_tol > 0.0) {
        return Err(invalid("rel_tol must be positive"));
    }
    let g = Gram::of(l);
    let mut radius = (16 * g.c).max(64) as u64;
    // Every partial sum is a lower bound for the value.
    let (floor_value, _) = g.partial_sum(s, radius as i128);
    while g.tail_error(s, radius as f64) > 0.5 * rel_tol * floor_value {
        radius *= 2;
    }
    loop {
        if PI * radius as f64 / g.covolume > MAX_TERMS {
            return Err(invalid(format!("rel_tol {rel_tol} needs more than {MAX_TERMS:e} terms")));
        }
        let z = epstein_zeta_at_radius(l, s, radius)?;
        if z.abs_error_bound <= rel_tol * z.value {
            return Ok(z);
        }
        radius *= 2;
    }
}

/// Signal-to-noise ratio in decibels with its propagated error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnrValue {
    pub db: f64,
    pub abs_error_bound: f64,
    pub zeta: ZetaValue,
}

pub const SNR_REL_TOL: f64 = 1e-9;

/// `10 log10(1 / (9 E_L(2)))`.
pub fn snr(l: &HexSublattice) -> Result<SnrValue> {
    snr_with_tol(l, SNR_REL_TOL)
}

pub fn snr_with_tol(l: &HexSublattice, rel_tol: f64) -> Result<SnrValue> {
    let zeta = epstein_zeta(l, 2.0, rel_tol)?;
    let db = -10.0 * (9.0 * zeta.value).log10();
    // |d db| <= 10 / ln 10 * dE / (E - dE), plus rounding of the log.
    let err = 10.0 / std::f64::consts::LN_10 * zeta.abs_error_bound / zeta.lower() + 4.0 * f64::EPSILON * db.abs();
    Ok(SnrValue { db, abs_error_bound: err, zeta })
}

/// One well-rounded sublattice per similarity class of index `J`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedLattice {
    #[serde(flatten)]
    pub rep: IndexRepresentation,
    pub minimum: u64,
    pub name: String,
    pub lattice: HexSublattice,
    pub snr: SnrValue,
}

/// Realizes each class of index `J`, checks the lattice against the
/// oracle, and sorts by SNR, best first.
pub fn rank_by_snr(big_j: u64) -> Result<Vec<RankedLattice>> {
    rank_by_snr_with_tol(big_j, SNR_REL_TOL)
}

pub fn rank_by_snr_with_tol(big_j: u64, rel_tol: f64) -> Result<Vec<RankedLattice>> {
    let reps = list_representations(big_j)?;
    let mut ranked = parallel::map(&reps, |rep| {
        let lattice = crate::enumeration::verify_representation(rep)?;
        Ok(RankedLattice {
            rep: *rep,
            minimum: rep.minimum(),
            name: lattice_name(rep),
            lattice,
            snr: snr_with_tol(&lattice, rel_tol)?,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|x, y| y.snr.db.partial_cmp(&x.snr.db).unwrap_or(Ordering::Equal));
    Ok(ranked)
}

/// Whether an SNR ranking is strictly decreasing in minimum with every
/// adjacent SNR gap larger than the two error bounds combined.
pub fn ranking_is_separated(ranked: &[RankedLattice]) -> bool {
    ranked.windows(2).all(|w| {
        w[0].minimum > w[1].minimum
            && w[0].snr.db - w[1].snr.db > w[0].snr.abs_error_bound + w[1].snr.abs_error_bound
    })
}

/// Parameterized answers for index `J` next to the brute-force scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    #[serde(rename = "J")]
    pub index: u64,
    pub count_n: usize,
    pub count_bruteforce: usize,
    pub max_min: Option<u64>,
    pub max_min_bruteforce: Option<u64>,
    pub classes_match: bool,
    pub eliminated: bool,
}

impl OracleRow {
    pub fn agrees(&self) -> bool {
        self.count_n == self.count_bruteforce
            && self.max_min == self.max_min_bruteforce
            && self.classes_match
            && !(self.eliminated && self.count_bruteforce > 0)
    }
}

pub fn oracle_row(big_j: u64) -> Result<OracleRow> {
    let reps = list_representations(big_j)?;
    let scan = oracle_scan(big_j)?;
    let predicted: std::collections::BTreeSet<(i64, i64)> = reps.iter().map(|r| r.params.cos()).collect();
    Ok(OracleRow {
        index: big_j,
        count_n: reps.len(),
        count_bruteforce: scan.classes.len(),
        max_min: max_min(big_j)?.best_minimum,
        max_min_bruteforce: scan.max_minimum.map(|m| m as u64),
        classes_match: predicted == scan.classes,
        eliminated: eliminate_test(big_j),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{gamma_theta, omega_theta};

    fn cp(m: i64, n: i64) -> ClassParams {
        ClassParams::new(m, n).unwrap()
    }

    fn loeschian_search(m: u64) -> bool {
        let m = m as i64;
        (0..=m).any(|x| (0..=x).any(|y| norm_form(x, y) == m))
    }

    #[test]
    fn loeschian() {
        assert!(is_loeschian(7));
        assert!(!is_loeschian(5));
        assert!(is_loeschian(1));
        for m in 1..=2000 {
            assert_eq!(is_loeschian(m), loeschian_search(m), "{m}");
        }
    }

    #[test]
    fn elimination() {
        assert!(eliminate_test(5));
        assert!(eliminate_test(10));
        assert!(!eliminate_test(55));
        assert!(!eliminate_test(7));
        assert!(!eliminate_test(3));
        assert!(!eliminate_test(15));
        assert!(eliminate_test(33));
        assert_eq!(elimination_case(6), Some(Elimination::TwicePrime));
        assert_eq!(elimination_case(33), Some(Elimination::WidePrimePair));
        assert_eq!(elimination_case(47), Some(Elimination::Prime));
        for j in [2, 5, 6, 10, 11, 14, 17, 22, 23, 26, 29, 33, 34, 38, 41, 46, 47, 53, 59] {
            assert!(eliminate_test(j), "{j}");
        }
    }

    #[test]
    fn max_min_examples() {
        let r = max_min(8).unwrap();
        assert_eq!(r.best_minimum, Some(7));
        assert_eq!(r.witnesses[0].rep.params, cp(3, 2));
        assert_eq!(r.witnesses[0].name, "Γ_θ(3,2)");
        assert_eq!(max_min(45).unwrap().best_minimum, Some(39));
        let r = max_min(65).unwrap();
        assert_eq!((r.best_minimum, r.witnesses[0].rep.params), (Some(61), cp(9, 5)));
        let r = max_min(2).unwrap();
        assert!(!r.exists && r.witnesses.is_empty() && r.best_minimum.is_none());
    }

    #[test]
    fn max_min_agrees_with_representations() {
        for j in 1..=2000u64 {
            let r = max_min(j).unwrap();
            let reps = list_representations(j).unwrap();
            assert_eq!(r.best_minimum, reps.first().map(|x| x.minimum()), "{j}");
            if is_loeschian(j) {
                assert!(r.witnesses.iter().any(|w| w.rep.params == ClassParams::hexagonal()), "{j}");
            }
        }
    }

    #[test]
    fn names() {
        let rep = |u, j, d, m, n| IndexRepresentation::new(u, j, d, cp(m, n)).unwrap();
        assert_eq!(lattice_name(&rep(1, 1, 1, 3, 2)), "√3 B_1(1,1,2,1) Γ_θ(3,2)");
        assert_eq!(lattice_name(&rep(0, 2, 1, 3, 2)), "2 Γ_θ(3,2)");
        assert_eq!(lattice_name(&rep(1, 2, 7, 1, 1)), "2√21 B_1(2,1,1,7) Λ_h");
        assert_eq!(lattice_name(&rep(0, 1, 7, 18, 11)), "√7 A_1(2,1,1,7) Γ_θ(18,11)");
        assert_eq!(lattice_name(&rep(0, 5, 1, 9, 7)), "5 Γ_θ(9,7)");
        assert_eq!(lattice_name(&rep(0, 1, 1, 1, 1)), "Λ_h");
    }

    #[test]
    fn cos_test() {
        assert_eq!(cos_from_index_min(8, 7).unwrap(), Some(Rational64::new(1, 7)));
        assert_eq!(cos_from_index_min(1, 1).unwrap(), Some(Rational64::new(1, 2)));
        assert_eq!(cos_from_index_min(8, 8).unwrap(), Some(Rational64::new(1, 2)));
        assert_eq!(cos_from_index_min(8, 9).unwrap(), None);
        assert!(cos_from_index_min(8, 6).is_err());
        for j in 1..=200u64 {
            if let Some(m) = max_min(j).unwrap().best_minimum {
                assert!(cos_from_index_min(j, m).unwrap().is_some(), "{j}");
            }
        }
    }

    /// `6 zeta(2) L(2, chi_-3)` with `L` summed in pairs of residues.
    fn hexagonal_zeta_2() -> f64 {
        let mut l = 0.0;
        for k in (0..2_000_000u64).rev() {
            let a = (3 * k + 1) as f64;
            let b = (3 * k + 2) as f64;
            l += 1.0 / (a * a) - 1.0 / (b * b);
        }
        PI * PI * l
    }

    #[test]
    fn hexagonal_value() {
        let z = epstein_zeta(&HexSublattice::hexagonal(), 2.0, 1e-9).unwrap();
        let exact = hexagonal_zeta_2();
        assert!((z.value - exact).abs() <= z.abs_error_bound, "{z:?} vs {exact}");
        assert!(z.abs_error_bound <= 1e-9 * z.value);
        assert!((exact - 7.7110).abs() < 1e-3);
    }

    #[test]
    fn bound_is_honest_at_small_radius() {
        let exact = hexagonal_zeta_2();
        for r in [1u64, 3, 10, 100, 1000] {
            let z = epstein_zeta_at_radius(&HexSublattice::hexagonal(), 2.0, r).unwrap();
            assert!((z.value - exact).abs() <= z.abs_error_bound, "R = {r}: {z:?}");
        }
    }

    #[test]
    fn scaling() {
        let e1 = epstein_zeta(&HexSublattice::hexagonal(), 2.0, 1e-9).unwrap();
        for k in [2i64, 3] {
            let ek = epstein_zeta(&HexSublattice::hexagonal().scaled(k).unwrap(), 2.0, 1e-9).unwrap();
            let k4 = (k as f64).powi(4);
            assert!((ek.value * k4 - e1.value).abs() <= ek.abs_error_bound * k4 + e1.abs_error_bound);
            let s = snr(&HexSublattice::hexagonal().scaled(k).unwrap()).unwrap();
            let s1 = snr(&HexSublattice::hexagonal()).unwrap();
            let diff = s.db - s1.db - 40.0 * (k as f64).log10();
            assert!(diff.abs() <= s.abs_error_bound + s1.abs_error_bound);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let h = HexSublattice::hexagonal();
        assert!(epstein_zeta(&h, 1.0, 1e-6).is_err());
        assert!(epstein_zeta(&h, 2.0, 0.0).is_err());
        assert!(epstein_zeta_at_radius(&h, 0.5, 10).is_err());
    }

    /// `g(theta) = sum (x^2 + y^2 + 2xy cos)^-2`, summed over a disc with
    /// its own continuum tail; independent of the reduced-basis code.
    fn g_naive(cos: f64, radius: f64) -> f64 {
        let lim = (radius / (1.0 - cos)).sqrt() as i64 + 1;
        let mut sum = 0.0;
        for x in -lim..=lim {
            for y in -lim..=lim {
                let q = (x * x + y * y) as f64 + 2.0 * (x * y) as f64 * cos;
                if (x, y) != (0, 0) && q <= radius {
                    sum += 1.0 / (q * q);
                }
            }
        }
        let area = (1.0 - cos * cos).sqrt();
        sum + PI / (area * radius)
    }

    #[test]
    fn minimum_factorization() {
        let g = gamma_theta(cp(3, 2));
        let z = epstein_zeta(&g, 2.0, 1e-9).unwrap();
        let naive = g_naive(1.0 / 7.0, 4e5) / 49.0;
        assert!((z.value - naive).abs() < 1e-7 * naive, "{} vs {naive}", z.value);
    }

    #[test]
    fn g_increases_with_cosine() {
        // E M^2 = g(theta) depends only on the angle; at a fixed minimum the
        // wider angle is sparser and sums to less.
        let norm_g = |m, n| {
            let p = cp(m, n);
            epstein_zeta(&gamma_theta(p), 2.0, 1e-9).unwrap().value * (p.base_minimum() as f64).powi(2)
        };
        let (g43, g53) = (norm_g(4, 3), norm_g(5, 3));
        assert_eq!(cp(4, 3).cos(), (1, 26));
        assert_eq!(cp(5, 3).cos(), (11, 38));
        assert!(g43 < g53);
        assert!((g43 - g_naive(1.0 / 26.0, 4e5)).abs() < 1e-6 * g43);
        assert!(g_naive(1.0 / 26.0, 1e5) < g_naive(11.0 / 38.0, 1e5));
    }

    #[test]
    fn snr_ranking_84() {
        let ranked = rank_by_snr(84).unwrap();
        assert_eq!(ranked.iter().map(|r| r.minimum).collect::<Vec<_>>(), [84, 76]);
        assert_eq!(ranked[0].rep.params, ClassParams::hexagonal());
        assert!(ranking_is_separated(&ranked));
        let one = rank_by_snr(1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].lattice.same_lattice(&HexSublattice::hexagonal()));
        let eight = rank_by_snr(8).unwrap();
        assert_eq!((eight.len(), eight[0].minimum), (1, 7));
        assert!(rank_by_snr(2).unwrap().is_empty());
    }

    #[test]
    fn omega_has_finite_zeta() {
        let z = epstein_zeta(&omega_theta(3, 1).unwrap(), 2.0, 1e-6).unwrap();
        assert!(z.value > 0.0 && z.abs_error_bound <= 1e-6 * z.value);
    }

    #[test]
    fn oracle_rows_agree() {
        for j in 1..=120 {
            let row = oracle_row(j).unwrap();
            assert!(row.agrees(), "{row:?}");
        }
    }
}
