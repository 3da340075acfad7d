//! Possible indices of well-rounded sublattices, their representations
//! `J = 3^u j^2 d (2m - n) n`, and a brute-force oracle over all sublattices
//! of a given index.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, is_admissible_d};
use crate::error::{invalid, Error, Result};
use crate::lattice::{
    angle_data, class_of, gamma_theta, is_well_rounded, minimum, ClassParams, Coeffs,
    HexSublattice,
};
use crate::parallel;

/// The scale part `k = 3^u j^2 d` of an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KParts {
    pub u: u32,
    pub j: u64,
    pub d: u64,
}

impl KParts {
    pub fn k(&self) -> u64 {
        3u64.pow(self.u) * self.j * self.j * self.d
    }
}

/// Splits `k` as `3^u j^2 d` with `u` in `{0, 1}` and `d` a squarefree
/// product of primes `= 1 (mod 3)`. `None` when a prime `= 2 (mod 3)`
/// divides `k` to an odd power.
pub fn decompose_k(k: u64) -> Result<Option<KParts>> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let (mut u, mut j, mut d) = (0u32, 1u64, 1u64);
    for (p, e) in factorize(k) {
        j *= p.pow(e / 2);
        if e % 2 == 1 {
            match p % 3 {
                0 => u = 1,
                1 => d *= p,
                _ => return Ok(None),
            }
        }
    }
    Ok(Some(KParts { u, j, d }))
}

/// One way of writing an index as `3^u j^2 d (2m - n) n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexRepresentation {
    pub u: u32,
    pub j: u64,
    pub d: u64,
    #[serde(flatten)]
    pub params: ClassParams,
}

impl IndexRepresentation {
    pub fn new(u: u32, j: u64, d: u64, params: ClassParams) -> Result<Self> {
        if u > 1 || j == 0 || !is_admissible_d(d) {
            return Err(invalid(format!("(u, j, d) = ({u}, {j}, {d}) is not admissible")));
        }
        Ok(IndexRepresentation { u, j, d, params })
    }

    pub fn k(&self) -> u64 {
        KParts { u: self.u, j: self.j, d: self.d }.k()
    }

    pub fn value(&self) -> u64 {
        self.k() * self.params.base_index() as u64
    }

    /// Minimum of every index-`value()` lattice in this class: `k c`.
    pub fn minimum(&self) -> u64 {
        self.k() * self.params.base_minimum() as u64
    }

    /// A concrete sublattice: `Gamma_theta` rotated and scaled by an
    /// Eisenstein integer of norm `k`.
    pub fn realize(&self) -> Result<HexSublattice> {
        let k = self.k() as i64;
        let alpha = eisenstein_of_norm(k)
            .ok_or_else(|| Error::Invariant(format!("{k} = 3^u j^2 d is not an Eisenstein norm")))?;
        gamma_theta(self.params).times_eisenstein(alpha)
    }
}

/// Some `a + b w` with `a^2 - ab + b^2 = k` and `a >= b >= 0`.
pub fn eisenstein_of_norm(k: i64) -> Option<Coeffs> {
    if k < 0 {
        return None;
    }
    // 3b^2 <= 4k; for each b solve a^2 - ab + (b^2 - k) = 0.
    let mut b = 0i64;
    while 3 * b * b <= 4 * k {
        let disc = 4 * k - 3 * b * b;
        if let Some(r) = crate::arith::exact_sqrt(disc as i128) {
            let r = r as i64;
            if (b + r) % 2 == 0 {
                return Some([(b + r) / 2, b]);
            }
        }
        b += 1;
    }
    None
}

/// All representations of `J`, best minimum first.
pub fn list_representations(big_j: u64) -> Result<Vec<IndexRepresentation>> {
    if big_j == 0 {
        return Err(invalid("index must be positive"));
    }
    let divs = divisors(big_j);
    let mut reps = parallel::flat_map(&divs, |&b| {
        let Some(parts) = decompose_k(big_j / b).ok().flatten() else { return Vec::new() };
        divisors(b)
            .into_iter()
            .filter_map(|n| {
                let twice_m = b / n + n;
                if twice_m % 2 != 0 {
                    return None;
                }
                let params = ClassParams::new((twice_m / 2) as i64, n as i64).ok()?;
                Some(IndexRepresentation { u: parts.u, j: parts.j, d: parts.d, params })
            })
            .collect()
    });
    reps.sort_by(|x, y| y.minimum().cmp(&x.minimum()).then(x.params.cmp(&y.params)));
    Ok(reps)
}

pub fn count_n(big_j: u64) -> Result<usize> {
    Ok(list_representations(big_j)?.len())
}

pub fn index_set_member(big_j: u64) -> Result<bool> {
    Ok(!list_representations(big_j)?.is_empty())
}

fn hnf_block(a: u64, big_j: u64) -> impl Iterator<Item = HexSublattice> {
    let (a, d) = (a as i64, (big_j / a) as i64);
    (0..a).map(move |b| HexSublattice::from_columns([a, 0], [b, d]).expect("A D = J > 0"))
}

/// Every index-`J` sublattice once, as `[[A, B], [0, D]]` with `A D = J` and
/// `0 <= B < A`. There are `sigma(J)` of them.
pub fn hnf_sublattices(big_j: u64) -> impl Iterator<Item = HexSublattice> {
    let divs = if big_j == 0 { Vec::new() } else { divisors(big_j) };
    divs.into_iter().flat_map(move |a| hnf_block(a, big_j))
}

/// Well-rounded members of [`hnf_sublattices`], in the same order.
pub fn wr_sublattices(big_j: u64) -> Vec<HexSublattice> {
    if big_j == 0 {
        return Vec::new();
    }
    parallel::flat_map(&divisors(big_j), |&a| hnf_block(a, big_j).filter(is_well_rounded).collect())
}

/// What the brute-force scan of index `J` finds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleScan {
    pub index: u64,
    pub wr_count: usize,
    /// Distinct reduced cosines `(num, den)`.
    pub classes: BTreeSet<(i64, i64)>,
    pub max_minimum: Option<i64>,
}

pub fn oracle_scan(big_j: u64) -> Result<OracleScan> {
    let wr = wr_sublattices(big_j);
    let classes = wr
        .iter()
        .map(|l| angle_data(l).map(|a| (a.cos_num, a.cos_den)))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(OracleScan {
        index: big_j,
        wr_count: wr.len(),
        classes,
        max_minimum: wr.iter().map(minimum).max(),
    })
}

/// Number of similarity classes (distinct angles) among index-`J`
/// well-rounded sublattices.
pub fn count_classes_bruteforce(big_j: u64) -> Result<usize> {
    Ok(oracle_scan(big_j)?.classes.len())
}

/// Largest minimum over index-`J` well-rounded sublattices, by exhaustion.
pub fn bruteforce_max_minimum(big_j: u64) -> Option<i64> {
    wr_sublattices(big_j).iter().map(minimum).max()
}

/// Checks that `rep` is realized by a well-rounded sublattice of the right
/// index, class and minimum, and that the oracle lists it.
pub fn verify_representation(rep: &IndexRepresentation) -> Result<HexSublattice> {
    let l = rep.realize()?;
    let fail = |what: &str| Err(Error::Invariant(format!("representation {rep:?} realized as {l}: {what}")));
    if l.index() as u64 != rep.value() {
        return fail("wrong index");
    }
    if !is_well_rounded(&l) {
        return fail("not well-rounded");
    }
    if minimum(&l) as u64 != rep.minimum() {
        return fail("wrong minimum");
    }
    if class_of(&l)? != rep.params {
        return fail("wrong class");
    }
    let h = l.hermite_form();
    if !hnf_sublattices(rep.value()).any(|c| c == h) {
        return fail("missing from the sublattice enumeration");
    }
    Ok(l)
}
