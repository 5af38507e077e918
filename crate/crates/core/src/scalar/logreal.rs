use std::fmt;

/// A nonnegative real stored by its natural logarithm.
///
/// This is the max-plus picture of the max-times semiring: ⊗ becomes `+`,
/// ⊕ stays `max`, and the semiring zero is `-∞`. Long path products neither
/// overflow nor underflow.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct LogReal(f64);

impl LogReal {
    pub const ZERO: LogReal = LogReal(f64::NEG_INFINITY);
    pub const ONE: LogReal = LogReal(0.0);

    /// From a logarithm (a max-plus value). `NaN` and `+∞` are rejected.
    pub fn from_log(log: f64) -> Option<Self> {
        (!log.is_nan() && log != f64::INFINITY).then_some(LogReal(log))
    }

    /// From a nonnegative linear value.
    pub fn from_linear(value: f64) -> Option<Self> {
        (value >= 0.0 && value.is_finite()).then(|| LogReal(value.ln()))
    }

    pub fn log(self) -> f64 {
        self.0
    }

    pub fn linear(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// Max-plus row update on raw logs; branch-free so it vectorizes.
    #[inline]
    pub(crate) fn accumulate_row(acc: &mut [LogReal], scale: LogReal, row: &[LogReal]) {
        for (slot, r) in acc.iter_mut().zip(row) {
            slot.0 = slot.0.max(scale.0 + r.0);
        }
    }
}

impl fmt::Debug for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.0)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}", self.linear())
    }
}
