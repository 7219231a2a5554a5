//! Cyclotomic classes `C_0, ..., C_{2d-1}`, semi-primitivity parameters,
//! index-set algebra (shifts, minimal representation) and the theta-sum bound.
//!
//! The class of a nonzero `x` is `log_g(x) mod 2d`; `C_j = g^j <g^{2d}>`.

use crate::field::{Element, Field};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclotomyError {
    ZeroHasNoClass,
    DivisibilityViolation { two_d: u64, q: u64 },
    BadIndexSet(String),
    DTooSmall,
}

impl fmt::Display for CyclotomyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclotomyError::ZeroHasNoClass => write!(f, "zero belongs to no cyclotomic class"),
            CyclotomyError::DivisibilityViolation { two_d, q } => {
                write!(f, "2d = {two_d} does not divide q - 1 = {}", q - 1)
            }
            CyclotomyError::BadIndexSet(msg) => write!(f, "bad index set: {msg}"),
            CyclotomyError::DTooSmall => write!(f, "theta-sum bound requires d >= 2"),
        }
    }
}

impl std::error::Error for CyclotomyError {}

/// Semi-primitivity data: `t` is the least positive integer with
/// `p^t = -1 (mod 2d)`, and `q = p^{2rt}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiPrimitiveParams {
    pub p: u64,
    pub two_d: u64,
    pub t: u32,
    pub r: u32,
}

impl SemiPrimitiveParams {
    /// `p^t` as an integer.
    pub fn p_to_t(&self) -> u64 {
        self.p.pow(self.t)
    }
}

/// The least `t >= 1` with `p^t = -1 (mod two_d)`, if any power of `p` is
/// `-1`. The search stops after one full period of `p` mod `two_d`.
pub fn semiprimitive_t(p: u64, two_d: u64) -> Option<u32> {
    assert!(two_d >= 2 && two_d % 2 == 0, "two_d must be even and >= 2");
    let base = p % two_d;
    if gcd(base, two_d) != 1 {
        return None;
    }
    let target = two_d - 1;
    let mut acc = 1u64;
    for t in 1..=two_d {
        acc = acc * base % two_d;
        if acc == target {
            return Some(t as u32);
        }
        if acc == 1 {
            return None; // completed the multiplicative order without hitting -1
        }
    }
    None
}

/// Derives `(t, r)` for GF(p^n) and modulus `two_d`; `None` when no power of
/// `p` is `-1 (mod 2d)` or when `n` is not of the form `2rt`.
pub fn derive_params(p: u64, n: u32, two_d: u64) -> Option<SemiPrimitiveParams> {
    let t = semiprimitive_t(p, two_d)?;
    if n % (2 * t) != 0 {
        return None;
    }
    Some(SemiPrimitiveParams {
        p,
        two_d,
        t,
        r: n / (2 * t),
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An index set `I` of exactly `d` residues mod `2d`, selecting which
/// cyclotomic classes enter the connection set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    pub two_d: u64,
    pub members: Vec<u64>,
}

impl IndexSet {
    pub fn new(two_d: u64, members: &[u64]) -> Result<IndexSet, CyclotomyError> {
        if two_d < 2 || two_d % 2 != 0 {
            return Err(CyclotomyError::BadIndexSet(format!(
                "2d = {two_d} must be even and >= 2"
            )));
        }
        let mut sorted: Vec<u64> = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != members.len() {
            return Err(CyclotomyError::BadIndexSet("duplicate members".into()));
        }
        if sorted.iter().any(|&m| m >= two_d) {
            return Err(CyclotomyError::BadIndexSet(format!(
                "members must lie in [0, {two_d})"
            )));
        }
        if sorted.len() as u64 != two_d / 2 {
            return Err(CyclotomyError::BadIndexSet(format!(
                "|I| = {} but d = {}",
                sorted.len(),
                two_d / 2
            )));
        }
        Ok(IndexSet {
            two_d,
            members: sorted,
        })
    }

    #[inline]
    pub fn d(&self) -> u64 {
        self.two_d / 2
    }

    pub fn contains(&self, j: u64) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    /// Membership mask of length `2d`.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.two_d as usize];
        for &j in &self.members {
            m[j as usize] = true;
        }
        m
    }

    /// `I + k = { j + k mod 2d : j in I }`.
    pub fn shift(&self, k: u64) -> IndexSet {
        let members: Vec<u64> = self.members.iter().map(|&j| (j + k) % self.two_d).collect();
        IndexSet::new(self.two_d, &members).expect("shift preserves index-set invariants")
    }

    /// `{0, 2, ..., 2d-2}`: the Paley representation.
    pub fn is_even_paley(&self) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(i, &m)| m == 2 * i as u64)
    }

    /// `{1, 3, ..., 2d-1}`: the Paley-complement representation.
    pub fn is_odd_paley(&self) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(i, &m)| m == 2 * i as u64 + 1)
    }

    /// `{0, 1, ..., d-1}`: the generalized Peisert connection set.
    pub fn is_generalized_peisert(&self) -> bool {
        self.members.iter().enumerate().all(|(i, &m)| m == i as u64)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}} mod {}", self.two_d)
    }
}

/// The cyclotomic class index of `x`: `log_g(x) mod 2d`.
pub fn class_index(field: &Field, two_d: u64, x: Element) -> Result<u64, CyclotomyError> {
    if (field.q() - 1) % two_d != 0 {
        return Err(CyclotomyError::DivisibilityViolation {
            two_d,
            q: field.q(),
        });
    }
    let log = field
        .discrete_log(x)
        .map_err(|_| CyclotomyError::ZeroHasNoClass)?;
    Ok(log % two_d)
}

/// The smallest `(2d', I')` presenting the same graph: `2d' | 2d` and `I` is
/// the full lift of `I'` along residues mod `2d'`. Returns `(two_d, I)` when
/// the input is already minimal.
pub fn minimal_representation(index_set: &IndexSet) -> (u64, IndexSet) {
    let d = index_set.d();
    for d_prime in 1..=d {
        if d % d_prime != 0 {
            continue;
        }
        let two_dp = 2 * d_prime;
        let mut reduced: Vec<u64> = index_set.members.iter().map(|&m| m % two_dp).collect();
        reduced.sort_unstable();
        reduced.dedup();
        if reduced.len() as u64 != d_prime {
            continue;
        }
        let mut lift: Vec<u64> = Vec::with_capacity(d as usize);
        for &j in &reduced {
            for k in 0..d / d_prime {
                lift.push(j + two_dp * k);
            }
        }
        lift.sort_unstable();
        if lift == index_set.members {
            let reduced_set =
                IndexSet::new(two_dp, &reduced).expect("reduced set has d' members in [0, 2d')");
            return (two_dp, reduced_set);
        }
    }
    unreachable!("d' = d always lifts to I itself")
}

/// Result of maximizing `|sum_j theta^{k m_j}|` over `k in [1, 2d)`.
#[derive(Debug, Clone, Copy)]
pub struct ThetaSumMax {
    pub k: u64,
    pub value: f64,
    /// `sqrt(d/2)`, the bound the maximum must strictly exceed.
    pub bound: f64,
    pub exceeds_bound: bool,
}

/// Maximizes `|sum_{j in I} theta^{k m_j}|` over `k in [1, 2d)` with `theta`
/// a primitive 2d-th root of unity. Ties go to the smallest `k`. The result
/// must exceed `sqrt(d/2)`; a 1e-9 slack absorbs double rounding, which is
/// safe because the true gap is at least `d^2/(2d-1) - d/2` at the squared
/// level.
pub fn theta_sum_max(index_set: &IndexSet) -> Result<ThetaSumMax, CyclotomyError> {
    let d = index_set.d();
    if d < 2 {
        return Err(CyclotomyError::DTooSmall);
    }
    let two_d = index_set.two_d;
    let mut best_k = 0u64;
    let mut best_sq = -1.0f64;
    for k in 1..two_d {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &m in &index_set.members {
            let angle = std::f64::consts::PI * ((k * m) % (2 * two_d)) as f64 / d as f64;
            re += angle.cos();
            im += angle.sin();
        }
        let sq = re * re + im * im;
        if sq > best_sq {
            best_sq = sq;
            best_k = k;
        }
    }
    let value = best_sq.sqrt();
    let bound = (d as f64 / 2.0).sqrt();
    Ok(ThetaSumMax {
        k: best_k,
        value,
        bound,
        exceeds_bound: best_sq > d as f64 / 2.0 - 1e-9,
    })
}
