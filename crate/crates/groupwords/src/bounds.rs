//! Exact-arithmetic inequality checks: the directed complete-bipartite arc
//! bound, the gap-constant order bound, and the implication chain linking
//! them.
//!
//! The arc bound involves the irrational term `(s-1)^(1/r)`. It is never
//! evaluated numerically; the comparison is rearranged into a pure
//! big-integer inequality so every verdict is exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// Where a gap constant came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaSource {
    /// The classical 5/8 commuting-probability bound for non-abelian groups.
    Gustafson,
    /// Supremum of observed probabilities over a group catalog.
    EmpiricalCatalogSupremum,
    UserSupplied,
}

impl GammaSource {
    pub fn as_str(self) -> &'static str {
        match self {
            GammaSource::Gustafson => "gustafson-5/8",
            GammaSource::EmpiricalCatalogSupremum => "empirical-catalog-supremum",
            GammaSource::UserSupplied => "user-supplied",
        }
    }
}

impl fmt::Display for GammaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A rational gap constant in [0, 1): a uniform bound on the satisfaction
/// probability of a word over the groups in which it is not an identity.
/// The derived bound base is 2/(1-gamma).
#[derive(Clone, Debug, PartialEq)]
pub struct GapConstant {
    value: BigRational,
    source: GammaSource,
}

impl GapConstant {
    pub fn new(value: BigRational, source: GammaSource) -> Result<GapConstant, BoundsError> {
        if value < BigRational::zero() || value >= BigRational::one() {
            return Err(BoundsError::Domain(format!(
                "gamma must satisfy 0 <= gamma < 1, got {value}"
            )));
        }
        Ok(GapConstant { value, source })
    }

    /// The 5/8 commuting-probability gap for the commutator word.
    pub fn gustafson() -> GapConstant {
        GapConstant {
            value: BigRational::new(5.into(), 8.into()),
            source: GammaSource::Gustafson,
        }
    }

    pub fn user(value: BigRational) -> Result<GapConstant, BoundsError> {
        GapConstant::new(value, GammaSource::UserSupplied)
    }

    pub fn empirical(value: BigRational) -> Result<GapConstant, BoundsError> {
        GapConstant::new(value, GammaSource::EmpiricalCatalogSupremum)
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn source(&self) -> GammaSource {
        self.source
    }

    /// 2/(1-gamma); finite and >= 2 for gamma in [0, 1).
    pub fn bound_base(&self) -> BigRational {
        BigRational::from_integer(2.into()) / (BigRational::one() - &self.value)
    }
}

impl fmt::Display for GapConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.source)
    }
}

/// Outcome of one exact comparison: `holds` is true exactly when
/// `lhs <= rhs` under the comparison actually performed.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub holds: bool,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub context: String,
}

impl BoundReport {
    fn compare(lhs: BigRational, rhs: BigRational, context: String) -> BoundReport {
        BoundReport {
            holds: lhs <= rhs,
            lhs,
            rhs,
            context,
        }
    }
}

fn exponent_u32(value: usize, what: &str) -> Result<u32, BoundsError> {
    u32::try_from(value).map_err(|_| BoundsError::Domain(format!("{what} is too large")))
}

/// Decide `edges <= (s-1)^(1/r) * t^(2-1/r) + (r-1)*t` exactly.
///
/// With `d = edges - (r-1)*t`, the inequality holds trivially when `d <= 0`
/// and is otherwise equivalent to `d^r <= (s-1) * t^(2r-1)` over the
/// integers, which is what gets checked.
pub fn kst_bound_holds(t: u64, r: u64, s: u64, edges: u64) -> Result<BoundReport, BoundsError> {
    if t < 1 || r < 1 || s < 1 {
        return Err(BoundsError::Domain(format!(
            "need t >= 1, r >= 1, s >= 1; got t={t}, r={r}, s={s}"
        )));
    }
    if u128::from(edges) > u128::from(t) * u128::from(t) {
        return Err(BoundsError::Domain(format!(
            "edges={edges} exceeds t^2={}",
            u128::from(t) * u128::from(t)
        )));
    }
    let slack = u128::from(r - 1) * u128::from(t);
    if u128::from(edges) <= slack {
        return Ok(BoundReport::compare(
            BigRational::from_integer(edges.into()),
            BigRational::from_integer(slack.into()),
            format!("arc bound, degenerate branch: edges <= (r-1)t for t={t}, r={r}, s={s}"),
        ));
    }
    let r_exp = exponent_u32(r as usize, "r")?;
    let d = BigInt::from(u128::from(edges) - slack);
    let lhs = Pow::pow(&d, r_exp);
    let rhs = BigInt::from(s - 1) * Pow::pow(&BigInt::from(t), 2 * r_exp - 1);
    Ok(BoundReport::compare(
        BigRational::from_integer(lhs),
        BigRational::from_integer(rhs),
        format!("arc bound, rearranged branch: (edges-(r-1)t)^r <= (s-1)t^(2r-1) for t={t}, r={r}, s={s}, edges={edges}"),
    ))
}

fn pow_ratio(base: &BigRational, exponent: u32) -> BigRational {
    BigRational::new(
        Pow::pow(base.numer(), exponent),
        Pow::pow(base.denom(), exponent),
    )
}

fn order_bound_value(gamma: &BigRational, m: u32, n: usize) -> BigRational {
    let base = BigRational::from_integer(2.into()) / (BigRational::one() - gamma);
    pow_ratio(&base, m) * BigRational::from_integer(BigInt::from(n - 1))
}

/// The order bound `(2/(1-gamma))^m * (n-1)` as an exact rational.
/// Requires `1 <= m <= n`.
pub fn order_bound(gamma: &GapConstant, m: usize, n: usize) -> Result<BigRational, BoundsError> {
    if m < 1 || m > n {
        return Err(BoundsError::Domain(format!(
            "need 1 <= m <= n; got m={m}, n={n}"
        )));
    }
    Ok(order_bound_value(&gamma.value, exponent_u32(m, "m")?, n))
}

/// Exact comparison `order <= (2/(1-gamma))^m * (n-1)`.
pub fn order_bound_holds(
    order: u64,
    gamma: &GapConstant,
    m: usize,
    n: usize,
) -> Result<BoundReport, BoundsError> {
    if order < 1 {
        return Err(BoundsError::Domain("order must be >= 1".into()));
    }
    let rhs = order_bound(gamma, m, n)?;
    Ok(BoundReport::compare(
        BigRational::from_integer(order.into()),
        rhs,
        format!("order bound for gamma={}, m={m}, n={n}", gamma.value),
    ))
}

/// Check the implication behind the order bound: if
///
/// 1. `eta >= (1-gamma) * t^2`,
/// 2. the arc bound holds for `(t, m, n, eta)`, and
/// 3. `t >= n-1`,
///
/// then `t <= (2/(1-gamma))^m * (n-1)`. When the hypotheses fail the
/// implication is vacuously true and the report says so.
pub fn derivation_chain_holds(
    t: u64,
    eta: u64,
    gamma: &BigRational,
    m: usize,
    n: usize,
) -> Result<BoundReport, BoundsError> {
    if t < 1 {
        return Err(BoundsError::Domain("t must be >= 1".into()));
    }
    if m < 1 || m > n {
        return Err(BoundsError::Domain(format!(
            "need 1 <= m <= n; got m={m}, n={n}"
        )));
    }
    if u128::from(eta) > u128::from(t) * u128::from(t) {
        return Err(BoundsError::Domain(format!("eta={eta} exceeds t^2")));
    }
    if gamma < &BigRational::zero() || gamma >= &BigRational::one() {
        return Err(BoundsError::Domain(format!(
            "gamma must satisfy 0 <= gamma < 1, got {gamma}"
        )));
    }

    let t_big = BigInt::from(t);
    let density = BigRational::from_integer(eta.into())
        >= (BigRational::one() - gamma) * BigRational::from_integer(&t_big * &t_big);
    let arc_bound = kst_bound_holds(t, m as u64, n as u64, eta)?.holds;
    let size = t as u128 >= (n as u128).saturating_sub(1);

    if !(density && arc_bound && size) {
        return Ok(BoundReport {
            holds: true,
            lhs: BigRational::zero(),
            rhs: BigRational::zero(),
            context: format!(
                "hypotheses not all satisfied (density={density}, arc_bound={arc_bound}, size={size}); implication vacuously true"
            ),
        });
    }

    let rhs = order_bound_value(gamma, exponent_u32(m, "m")?, n);
    Ok(BoundReport::compare(
        BigRational::from_integer(t.into()),
        rhs,
        format!("derivation chain conclusion for t={t}, eta={eta}, gamma={gamma}, m={m}, n={n}"),
    ))
}
