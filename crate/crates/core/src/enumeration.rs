//! Counting functions: cells born per generation, cumulative totals, the
//! sharp quadratic upper bound, the dyadic quadratic family and the density
//! ratio `U(n)/n^2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::weight_sums::{hamming_weight, series_a130665, weight_sum_fast};
use crate::{CellCount, Error, Index, Result};

/// Cells born at generation `n`: `u(0) = 0`, `u(1) = 1`, and
/// `u(n) = 4 * 3^(wt(n-1) - 1)` afterwards.
pub fn cells_born(n: &Index) -> CellCount {
    if n.is_zero() {
        return BigUint::zero();
    }
    if n.is_one() {
        return BigUint::one();
    }
    let weight = hamming_weight(&(n - 1u32));
    BigUint::from(4u8) * BigUint::from(3u8).pow(exponent(weight - 1))
}

/// Cumulative ON cells through generation `n`. `U(0) = 0`.
pub fn total_cells(n: &Index) -> Result<CellCount> {
    if n.is_zero() {
        return Ok(BigUint::zero());
    }
    from_weight_sum(weight_sum_fast(n))
}

/// `U = (4 S - 1) / 3`, refusing a remainder.
fn from_weight_sum(sum: BigUint) -> Result<CellCount> {
    if sum.is_zero() {
        return Err(Error::Inconsistent("weight sum is zero for n >= 1".into()));
    }
    let (quotient, remainder) = (sum * 4u8 - 1u8).div_rem(&BigUint::from(3u8));
    if !remainder.is_zero() {
        return Err(Error::Inconsistent(
            "4 S(n) - 1 is not divisible by 3".into(),
        ));
    }
    Ok(quotient)
}

/// `(4n^2 - 1) / 3` when it is an integer, i.e. when `3` does not divide `n`.
/// Use [`sharp_upper_bound_exact`] for the rational value otherwise.
pub fn sharp_upper_bound(n: &Index) -> Result<CellCount> {
    let numerator = bound_numerator(n)?;
    let (quotient, remainder) = numerator.div_rem(&BigUint::from(3u8));
    if !remainder.is_zero() {
        return Err(Error::Domain(format!(
            "(4n^2 - 1)/3 is not an integer for n = {n}"
        )));
    }
    Ok(quotient)
}

/// `(4n^2 - 1) / 3` as an exact rational for any `n >= 1`.
pub fn sharp_upper_bound_exact(n: &Index) -> Result<BigRational> {
    let numerator = bound_numerator(n)?;
    Ok(BigRational::new(numerator.into(), 3.into()))
}

/// `4n^2 - 1`, the bound scaled by three.
pub fn bound_numerator(n: &Index) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::Domain(
            "the upper bound is defined for n >= 1".into(),
        ));
    }
    Ok(n * n * 4u8 - 1u8)
}

/// `n = m * 2^k` with `m` odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicForm {
    m: Index,
    k: u64,
}

impl DyadicForm {
    pub fn new(m: Index, k: u64) -> Result<Self> {
        if m.is_even() {
            return Err(Error::Domain(format!("dyadic multiplier {m} must be odd")));
        }
        Ok(DyadicForm { m, k })
    }

    pub fn m(&self) -> &Index {
        &self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> Index {
        &self.m << self.k
    }
}

impl fmt::Display for DyadicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.m, self.k)
    }
}

pub fn decompose_dyadic(n: &Index) -> Result<DyadicForm> {
    let k = n
        .trailing_zeros()
        .ok_or_else(|| Error::Domain("0 has no dyadic decomposition".into()))?;
    Ok(DyadicForm { m: n >> k, k })
}

/// `U_m(k) = (4 a_m 4^k - 1) / 3` for a canonical form.
pub fn total_cells_quadratic(form: &DyadicForm) -> Result<CellCount> {
    quadratic_total(&form.m, form.k)
}

/// Quadratic-family total for any multiplier `m >= 1`, odd or not.
pub fn quadratic_total(m: &Index, k: u64) -> Result<CellCount> {
    let a_m = series_a130665(m)?;
    from_weight_sum(a_m << (2 * k))
}

/// An exact non-negative rational, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatioValue(BigRational);

impl RatioValue {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(RatioValue(BigRational::new(
            numerator.into(),
            denominator.into(),
        )))
    }

    pub fn numerator(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denominator(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for RatioValue {
    fn from(value: BigRational) -> Self {
        RatioValue(value)
    }
}

/// Always `numerator/denominator`, including `1/1`.
impl fmt::Display for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// `U(n) / n^2`.
pub fn ratio(n: &Index) -> Result<RatioValue> {
    if n.is_zero() {
        return Err(Error::Domain("ratio is defined for n >= 1".into()));
    }
    RatioValue::new(total_cells(n)?, n * n)
}

/// Reference decimal for the lower limit of `U(n)/n^2`.
pub const LIMINF_REF: &str = "0.9026116569";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockExtremes {
    pub k: u32,
    pub min: RatioValue,
    pub argmin: u64,
    pub max: RatioValue,
    pub argmax: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioScanReport {
    /// One entry per block `[2^k, 2^(k+1))`, `k = 0..=k_max`.
    pub blocks: Vec<BlockExtremes>,
    pub liminf_ref: RatioValue,
    pub limsup_ref: RatioValue,
}

/// Exact minimum and maximum of `U(n)/n^2` over each dyadic block up to
/// `k_max`. Ties go to the smallest `n`.
pub fn ratio_scan(k_max: u32, budget: u32) -> Result<RatioScanReport> {
    if k_max > budget {
        return Err(Error::BudgetExceeded {
            what: "ratio scan block exponent",
            requested: k_max.to_string(),
            budget: budget.into(),
        });
    }
    if k_max >= 63 {
        return Err(Error::Domain("ratio scan blocks must fit in u64".into()));
    }
    let blocks = (0..=k_max)
        .map(|k| block_extremes(k, true))
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioScanReport {
        blocks,
        liminf_ref: RatioValue::new(9_026_116_569u64.into(), 10_000_000_000u64.into())?,
        limsup_ref: RatioValue::new(4u8.into(), 3u8.into())?,
    })
}

/// `U(n)` paired with `n`, compared by `U(n)/n^2` without dividing.
#[derive(Clone)]
struct Candidate {
    total: BigUint,
    n: u64,
}

impl Candidate {
    fn at(n: u64) -> Result<Self> {
        Ok(Candidate {
            total: total_cells(&BigUint::from(n))?,
            n,
        })
    }

    fn cmp_ratio(&self, other: &Candidate) -> Ordering {
        let n2 = BigUint::from(self.n) * self.n;
        let m2 = BigUint::from(other.n) * other.n;
        (&self.total * m2).cmp(&(&other.total * n2))
    }

    fn ratio(&self) -> Result<RatioValue> {
        RatioValue::new(self.total.clone(), BigUint::from(self.n) * self.n)
    }
}

struct Extremes {
    min: Candidate,
    max: Candidate,
}

impl Extremes {
    fn single(c: Candidate) -> Self {
        Extremes {
            min: c.clone(),
            max: c,
        }
    }

    fn merge(self, other: Extremes) -> Extremes {
        let min = match self.min.cmp_ratio(&other.min) {
            Ordering::Less => self.min,
            Ordering::Greater => other.min,
            Ordering::Equal => pick_smaller_n(self.min, other.min),
        };
        let max = match self.max.cmp_ratio(&other.max) {
            Ordering::Greater => self.max,
            Ordering::Less => other.max,
            Ordering::Equal => pick_smaller_n(self.max, other.max),
        };
        Extremes { min, max }
    }
}

fn pick_smaller_n(a: Candidate, b: Candidate) -> Candidate {
    if a.n <= b.n {
        a
    } else {
        b
    }
}

const SCAN_CHUNK: u64 = 4096;

fn block_extremes(k: u32, parallel: bool) -> Result<BlockExtremes> {
    let start = 1u64 << k;
    let end = start << 1;
    let chunk = |lo: u64| -> Result<Extremes> {
        let hi = (lo + SCAN_CHUNK).min(end);
        let mut acc = Extremes::single(Candidate::at(lo)?);
        for n in lo + 1..hi {
            acc = acc.merge(Extremes::single(Candidate::at(n)?));
        }
        Ok(acc)
    };
    let starts = (start..end).step_by(SCAN_CHUNK as usize);
    let merged = if parallel {
        starts
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(chunk)
            .try_reduce_with(|a, b| Ok(a.merge(b)))
    } else {
        starts.map(chunk).reduce(|a, b| Ok(a?.merge(b?)))
    };
    let extremes = merged.expect("blocks are never empty")?;
    Ok(BlockExtremes {
        k,
        min: extremes.min.ratio()?,
        argmin: extremes.min.n,
        max: extremes.max.ratio()?,
        argmax: extremes.max.n,
    })
}

fn exponent(e: u64) -> u32 {
    u32::try_from(e).expect("Hamming weight exceeds u32")
}
