//! Numeric backends for the max-times semiring `(ℝ₊, max, ×)`.
//!
//! Two backends implement [`Scalar`]:
//!
//! * [`Exact`]: rationals extended by real radicals; all comparisons decidable.
//! * [`LogReal`]: `f64` logarithms, for large inputs. Comparisons that decide
//!   structure (criticality, visualization) use a tolerance on log values.

mod exact;
mod logreal;

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use exact::{Exact, RadicalField};
pub use logreal::LogReal;

use crate::error::{Error, Result};

/// Default tolerance on log values for the float backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericMode {
    ExactRational,
    FloatLog,
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NumericMode::ExactRational => "exact",
            NumericMode::FloatLog => "float",
        })
    }
}

/// An element of the max-times semiring, plus the ordinary field operations
/// the scaling constructions need (sums of columns, roots for cycle means).
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Signed companion type, used for vectors of the linear hull.
    type Signed: Clone + fmt::Debug + Send + Sync;

    const MODE: NumericMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `true` if the value is not a legal semiring element.
    fn is_invalid(&self) -> bool;

    fn mul(&self, rhs: &Self) -> Self;
    /// Panics if `rhs` is zero.
    fn div(&self, rhs: &Self) -> Self;
    /// Ordinary (plus-times) addition.
    fn sum(&self, rhs: &Self) -> Self;
    fn pow(&self, exp: u32) -> Self;
    fn nth_root(&self, degree: u32) -> Result<Self>;
    /// `∏ values_j^{weights_j}` for positive weights.
    fn weighted_geometric_mean(values: &[Self], weights: &[BigRational]) -> Result<Self>;

    /// Total order without tolerance.
    fn cmp_exact(&self, rhs: &Self) -> Ordering;
    /// Order with values within `eps` (on logs) reported `Equal`. Exact
    /// backends ignore `eps`.
    fn cmp_tol(&self, rhs: &Self, eps: f64) -> Ordering;
    /// Compares `a^{1/da}` with `b^{1/db}`.
    fn cmp_roots(a: &Self, da: u32, b: &Self, db: u32) -> Ordering;

    fn from_rational(value: &BigRational) -> Self;
    /// From a nonnegative finite float (linear value).
    fn from_f64(value: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn ln(&self) -> f64;
    /// `ln` together with a bound on its absolute error. Exact backends
    /// use it to skip exact comparisons that floats already decide.
    fn ln_with_error(&self) -> (f64, f64) {
        (self.ln(), 0.0)
    }
    fn as_exact(&self) -> Option<&Exact>;

    fn to_signed(&self) -> Self::Signed;
    fn scale_signed(&self, v: &Self::Signed) -> Self::Signed;
    fn signed_eq(a: &Self::Signed, b: &Self::Signed, eps: f64) -> bool;

    fn max_of(&self, rhs: &Self) -> Self {
        if self.cmp_exact(rhs) == Ordering::Less {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    fn inv(&self) -> Self {
        Self::one().div(self)
    }

    /// `acc_j ← acc_j ⊕ scale ⊗ row_j` for every `j`; the inner loop of
    /// both Karp's recurrence and the closure.
    fn accumulate_row(acc: &mut [Self], scale: &Self, row: &[Self]) {
        if scale.is_zero() {
            return;
        }
        for (slot, r) in acc.iter_mut().zip(row) {
            if r.is_zero() {
                continue;
            }
            let cand = scale.mul(r);
            if cand.cmp_exact(slot).is_gt() {
                *slot = cand;
            }
        }
    }
}

impl Scalar for Exact {
    type Signed = Exact;
    const MODE: NumericMode = NumericMode::ExactRational;

    fn zero() -> Self {
        Exact::zero()
    }
    fn one() -> Self {
        Exact::one()
    }
    fn is_zero(&self) -> bool {
        Exact::is_zero(self)
    }
    fn is_invalid(&self) -> bool {
        self.signum() == Ordering::Less
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn sum(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn pow(&self, exp: u32) -> Self {
        Exact::pow(self, exp)
    }
    fn nth_root(&self, degree: u32) -> Result<Self> {
        Exact::nth_root(self, degree)
    }

    fn weighted_geometric_mean(values: &[Self], weights: &[BigRational]) -> Result<Self> {
        let common = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let root = common
            .to_u32()
            .ok_or_else(|| Error::Unrepresentable(format!("root of degree {common}")))?;
        let mut product = Exact::one();
        for (v, w) in values.iter().zip(weights) {
            let e = (w * BigRational::from_integer(common.clone()))
                .to_integer()
                .to_u32()
                .ok_or_else(|| Error::Unrepresentable(format!("power {w}·{common}")))?;
            product = &product * &v.pow(e);
        }
        product.nth_root(root)
    }

    fn cmp_exact(&self, rhs: &Self) -> Ordering {
        self.cmp(rhs)
    }
    fn cmp_tol(&self, rhs: &Self, _eps: f64) -> Ordering {
        self.cmp(rhs)
    }
    fn cmp_roots(a: &Self, da: u32, b: &Self, db: u32) -> Ordering {
        if da == db {
            return a.cmp(b);
        }
        let ((la, ea), (lb, eb)) = (a.ln_with_error(), b.ln_with_error());
        let (x, y) = (la / da as f64, lb / db as f64);
        if (x - y).abs() > ea / da as f64 + eb / db as f64 {
            return x.partial_cmp(&y).unwrap();
        }
        a.pow(db).cmp(&b.pow(da))
    }

    fn from_rational(value: &BigRational) -> Self {
        Exact::from_ratio(value.clone())
    }
    fn from_f64(value: f64) -> Self {
        Exact::from_f64(value).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        Exact::to_f64(self)
    }
    fn ln(&self) -> f64 {
        Exact::ln(self)
    }
    fn ln_with_error(&self) -> (f64, f64) {
        Exact::ln_with_error(self)
    }
    fn as_exact(&self) -> Option<&Exact> {
        Some(self)
    }

    fn to_signed(&self) -> Exact {
        self.clone()
    }
    fn scale_signed(&self, v: &Exact) -> Exact {
        self * v
    }
    fn signed_eq(a: &Exact, b: &Exact, _eps: f64) -> bool {
        a == b
    }
}

impl Scalar for LogReal {
    type Signed = f64;
    const MODE: NumericMode = NumericMode::FloatLog;

    fn zero() -> Self {
        LogReal::ZERO
    }
    fn one() -> Self {
        LogReal::ONE
    }
    fn is_zero(&self) -> bool {
        LogReal::is_zero(*self)
    }
    fn is_invalid(&self) -> bool {
        self.log().is_nan() || self.log() == f64::INFINITY
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        LogReal::from_log(self.log() + rhs.log()).unwrap_or(LogReal::ZERO)
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        LogReal::from_log(self.log() - rhs.log()).unwrap_or(LogReal::ZERO)
    }
    fn sum(&self, rhs: &Self) -> Self {
        let (hi, lo) = if self.log() >= rhs.log() {
            (self.log(), rhs.log())
        } else {
            (rhs.log(), self.log())
        };
        if lo == f64::NEG_INFINITY {
            return LogReal::from_log(hi).unwrap();
        }
        LogReal::from_log(hi + (lo - hi).exp().ln_1p()).unwrap()
    }
    fn pow(&self, exp: u32) -> Self {
        if exp == 0 {
            return LogReal::ONE;
        }
        LogReal::from_log(self.log() * exp as f64).unwrap()
    }
    fn nth_root(&self, degree: u32) -> Result<Self> {
        Ok(LogReal::from_log(self.log() / degree as f64).unwrap())
    }
    fn weighted_geometric_mean(values: &[Self], weights: &[BigRational]) -> Result<Self> {
        let mut log = 0.0;
        for (v, w) in values.iter().zip(weights) {
            if v.is_zero() {
                return Ok(LogReal::ZERO);
            }
            log += v.log() * w.to_f64().unwrap_or(f64::NAN);
        }
        LogReal::from_log(log).ok_or_else(|| Error::InvalidWeights("non-finite weight".into()))
    }

    #[inline]
    fn cmp_exact(&self, rhs: &Self) -> Ordering {
        self.log().total_cmp(&rhs.log())
    }
    fn cmp_tol(&self, rhs: &Self, eps: f64) -> Ordering {
        let (a, b) = (self.log(), rhs.log());
        if a == b {
            return Ordering::Equal;
        }
        if a == f64::NEG_INFINITY {
            return Ordering::Less;
        }
        if b == f64::NEG_INFINITY {
            return Ordering::Greater;
        }
        let diff = a - b;
        if diff.abs() <= eps {
            Ordering::Equal
        } else if diff < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
    fn accumulate_row(acc: &mut [Self], scale: &Self, row: &[Self]) {
        LogReal::accumulate_row(acc, *scale, row);
    }

    fn cmp_roots(a: &Self, da: u32, b: &Self, db: u32) -> Ordering {
        (a.log() / da as f64).total_cmp(&(b.log() / db as f64))
    }

    fn from_rational(value: &BigRational) -> Self {
        if value.is_zero() {
            return LogReal::ZERO;
        }
        LogReal::from_log(Exact::from_ratio(value.abs()).ln()).unwrap()
    }
    fn from_f64(value: f64) -> Self {
        LogReal::from_linear(value).expect("nonnegative finite float")
    }
    fn to_f64(&self) -> f64 {
        self.linear()
    }
    fn ln(&self) -> f64 {
        self.log()
    }
    fn as_exact(&self) -> Option<&Exact> {
        None
    }

    fn to_signed(&self) -> f64 {
        self.linear()
    }
    fn scale_signed(&self, v: &f64) -> f64 {
        self.linear() * v
    }
    fn signed_eq(a: &f64, b: &f64, eps: f64) -> bool {
        (a - b).abs() <= eps * a.abs().max(b.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_backend_matches_linear_arithmetic() {
        let a = LogReal::from_linear(3.0).unwrap();
        let b = LogReal::from_linear(0.5).unwrap();
        assert!((a.mul(&b).linear() - 1.5).abs() < 1e-12);
        assert!((a.sum(&b).linear() - 3.5).abs() < 1e-12);
        assert!((a.div(&b).linear() - 6.0).abs() < 1e-12);
        assert_eq!(LogReal::ZERO.mul(&a), LogReal::ZERO);
        assert_eq!(LogReal::ZERO.sum(&a), a);
    }

    #[test]
    fn tolerant_comparison() {
        let a = LogReal::from_log(1.0).unwrap();
        let b = LogReal::from_log(1.0 + 1e-11).unwrap();
        assert_eq!(a.cmp_tol(&b, DEFAULT_TOLERANCE), Ordering::Equal);
        assert_eq!(a.cmp_exact(&b), Ordering::Less);
        assert_eq!(LogReal::ZERO.cmp_tol(&a, 1.0), Ordering::Less);
    }

    #[test]
    fn root_comparison_avoids_roots() {
        // 16^(1/2) = 4 > 3 = 27^(1/3)
        let four = Exact::from_integer(16);
        let three = Exact::from_integer(27);
        assert_eq!(Exact::cmp_roots(&four, 2, &three, 3), Ordering::Greater);
        assert_eq!(Exact::cmp_roots(&four, 2, &Exact::from_integer(64), 3), Ordering::Equal);
    }

    #[test]
    fn geometric_mean_of_rationals() {
        let half = BigRational::new(1.into(), 2.into());
        let g = Exact::weighted_geometric_mean(
            &[Exact::from_integer(2), Exact::one()],
            &[half.clone(), half],
        )
        .unwrap();
        assert_eq!(g.pow(2), Exact::from_integer(2));
    }
}
