//! Dense square matrices and vectors over the max-times semiring.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Exact, LogReal, Scalar, DEFAULT_TOLERANCE};

/// A square nonnegative matrix with `⊕ = max` and `⊗ = ×`.
///
/// The tolerance only affects the float backend: it is the slack on log
/// values used when deciding equality of path weights. Derived matrices
/// inherit it.
#[derive(Clone)]
pub struct MaxMatrix<S> {
    n: usize,
    entries: Vec<S>,
    tolerance: f64,
}

impl<S: Scalar> MaxMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: i, len: row.len(), expected: n });
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.is_invalid() {
                    return Err(Error::NegativeEntry { row: i, col: j });
                }
                entries.push(v);
            }
        }
        Ok(MaxMatrix { n, entries, tolerance: DEFAULT_TOLERANCE })
    }

    /// Builds the matrix entry by entry. Panics on a negative entry.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        assert!(n > 0, "empty matrix");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert!(!v.is_invalid(), "negative entry at ({i}, {j})");
                entries.push(v);
            }
        }
        MaxMatrix { n, entries, tolerance: DEFAULT_TOLERANCE }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| S::zero())
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        assert!(!value.is_invalid(), "negative entry at ({i}, {j})");
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> MaxVector<S> {
        MaxVector((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.rows().map(<[S]>::to_vec).collect()
    }

    /// Same shape and tolerance, entries mapped by `f`.
    pub(crate) fn map_entries(&self, mut f: impl FnMut(usize, usize, &S) -> S) -> Self {
        let n = self.n;
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, v)| f(k / n, k % n, v))
            .collect();
        MaxMatrix { n, entries, tolerance: self.tolerance }
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [S] {
        &mut self.entries
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.n != other {
            return Err(Error::DimensionMismatch { left: self.n, right: other });
        }
        Ok(())
    }

    /// `A ⊗ B`: `c_ij = max_k a_ik b_kj`.
    pub fn otimes(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs.n)?;
        let n = self.n;
        let mut out = Self::zeros(n).with_tolerance(self.tolerance);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let cand = a.mul(rhs.get(k, j));
                    let slot = &mut out.entries[i * n + j];
                    if cand.cmp_exact(slot).is_gt() {
                        *slot = cand;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `A ⊕ B`: entrywise maximum.
    pub fn oplus(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs.n)?;
        Ok(self.map_entries(|i, j, a| a.max_of(rhs.get(i, j))))
    }

    /// `A ⊗ x`.
    pub fn apply(&self, x: &MaxVector<S>) -> Result<MaxVector<S>> {
        self.check_dim(x.len())?;
        Ok(MaxVector(
            self.rows()
                .map(|row| {
                    row.iter()
                        .zip(x.iter())
                        .map(|(a, b)| a.mul(b))
                        .fold(S::zero(), |acc, v| acc.max_of(&v))
                })
                .collect(),
        ))
    }

    /// `αA` for a scalar α.
    pub fn scale(&self, alpha: &S) -> Self {
        self.map_entries(|_, _, a| a.mul(alpha))
    }

    pub fn transpose(&self) -> Self {
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                t.entries[j * self.n + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// `X⁻¹AX` with `X = diag(x)`: `b_ij = x_i⁻¹ a_ij x_j`.
    pub fn diag_similarity(&self, x: &ScalingVector<S>) -> Result<Self> {
        self.check_dim(x.len())?;
        let inv: Vec<S> = x.iter().map(S::inv).collect();
        Ok(self.map_entries(|i, j, a| {
            if a.is_zero() {
                S::zero()
            } else {
                inv[i].mul(a).mul(x.get(j))
            }
        }))
    }

    /// Entrywise equality up to the matrix tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.cmp_tol(b, self.tolerance).is_eq())
    }

    /// Edge `(i, j)` of the associated digraph exists iff `a_ij > 0`.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        !self.get(i, j).is_zero()
    }
}

impl MaxMatrix<Exact> {
    /// The same matrix on the float backend.
    pub fn to_float(&self) -> MaxMatrix<LogReal> {
        MaxMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|v| LogReal::from_log(v.ln()).unwrap_or(LogReal::ZERO))
                .collect(),
            tolerance: self.tolerance,
        }
    }
}

impl<S: Scalar> PartialEq for MaxMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<S: Scalar> fmt::Debug for MaxMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl<S: Scalar> fmt::Display for MaxMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A nonnegative vector.
#[derive(Clone, PartialEq)]
pub struct MaxVector<S>(Vec<S>);

impl<S: Scalar> MaxVector<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if let Some(i) = values.iter().position(S::is_invalid) {
            return Err(Error::NegativeEntry { row: i, col: 0 });
        }
        Ok(MaxVector(values))
    }

    pub fn filled(n: usize, value: S) -> Self {
        MaxVector(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &S {
        &self.0[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<S> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(S::is_zero)
    }

    /// `‖x‖ = max_i x_i`.
    pub fn max_norm(&self) -> S {
        self.0.iter().fold(S::zero(), |acc, v| acc.max_of(v))
    }

    /// Scaled to max-norm 1. The zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let norm = self.max_norm();
        if norm.is_zero() {
            return self.clone();
        }
        MaxVector(self.0.iter().map(|v| v.div(&norm)).collect())
    }

    pub fn scale(&self, alpha: &S) -> Self {
        MaxVector(self.0.iter().map(|v| v.mul(alpha)).collect())
    }

    pub fn oplus(&self, other: &Self) -> Self {
        MaxVector(self.0.iter().zip(&other.0).map(|(a, b)| a.max_of(b)).collect())
    }

    pub fn is_positive(&self) -> bool {
        !self.0.iter().any(S::is_zero)
    }
}

impl<S: Scalar> fmt::Debug for MaxVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Where a scaling vector came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ColumnSum,
    LogConvex,
    Perron,
    User,
}

/// A positive vector `x` defining the invertible scaling `X = diag(x)`.
#[derive(Clone, PartialEq)]
pub struct ScalingVector<S> {
    values: MaxVector<S>,
    provenance: Provenance,
}

impl<S: Scalar> ScalingVector<S> {
    pub fn new(values: Vec<S>, provenance: Provenance) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| v.is_zero() || v.is_invalid()) {
            return Err(Error::NonPositiveScaling { index });
        }
        Ok(ScalingVector { values: MaxVector(values), provenance })
    }

    pub fn user(values: Vec<S>) -> Result<Self> {
        Self::new(values, Provenance::User)
    }

    pub fn ones(n: usize) -> Self {
        ScalingVector { values: MaxVector::filled(n, S::one()), provenance: Provenance::User }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> &S {
        self.values.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.values.iter()
    }

    pub fn as_vector(&self) -> &MaxVector<S> {
        &self.values
    }

    /// Componentwise inverse `x⁻¹`, which undoes the similarity.
    pub fn inverse(&self) -> Self {
        ScalingVector {
            values: MaxVector(self.values.iter().map(S::inv).collect()),
            provenance: self.provenance,
        }
    }
}

impl<S: Scalar> fmt::Debug for ScalingVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})", self.provenance, self.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Exact {
        Exact::new(n, d)
    }

    fn m(rows: &[&[(i64, i64)]]) -> MaxMatrix<Exact> {
        MaxMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn otimes_examples() {
        let a = m(&[&[(1, 1), (2, 1)], &[(1, 8), (1, 1)]]);
        assert_eq!(MaxMatrix::identity(2).otimes(&a).unwrap(), a);
        assert_eq!(a.otimes(&a).unwrap(), a);
        let b = m(&[&[(1, 4), (2, 1)], &[(1, 2), (1, 4)]]);
        assert_eq!(b.otimes(&b).unwrap(), m(&[&[(1, 1), (1, 2)], &[(1, 8), (1, 1)]]));
    }

    #[test]
    fn oplus_examples() {
        let a = m(&[&[(1, 1), (2, 1)], &[(1, 8), (1, 1)]]);
        assert_eq!(a.oplus(&a).unwrap(), a);
        let c = m(&[&[(0, 1), (3, 1)], &[(1, 1), (0, 1)]]);
        assert_eq!(
            c.oplus(&MaxMatrix::identity(2)).unwrap(),
            m(&[&[(1, 1), (3, 1)], &[(1, 1), (1, 1)]])
        );
        let d = m(&[&[(2, 1), (1, 1)], &[(1, 1), (2, 1)]]);
        assert_eq!(a.oplus(&d).unwrap(), m(&[&[(2, 1), (2, 1)], &[(1, 1), (2, 1)]]));
    }

    #[test]
    fn diag_similarity_examples() {
        let a = m(&[&[(1, 1), (2, 1)], &[(1, 8), (1, 1)]]);
        assert_eq!(a.diag_similarity(&ScalingVector::ones(2)).unwrap(), a);
        let x = ScalingVector::user(vec![q(3, 1), q(9, 8)]).unwrap();
        assert_eq!(
            a.diag_similarity(&x).unwrap(),
            m(&[&[(1, 1), (3, 4)], &[(1, 3), (1, 1)]])
        );
        let b = m(&[&[(1, 4), (2, 1)], &[(1, 2), (1, 4)]]);
        let y = ScalingVector::user(vec![q(2, 1), q(1, 1)]).unwrap();
        assert_eq!(
            b.diag_similarity(&y).unwrap(),
            m(&[&[(1, 4), (1, 1)], &[(1, 1), (1, 4)]])
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            MaxMatrix::from_rows(vec![vec![q(-3, 1)]]),
            Err(Error::NegativeEntry { row: 0, col: 0 })
        ));
        assert!(matches!(
            MaxMatrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1)]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            ScalingVector::user(vec![q(1, 1), q(0, 1)]),
            Err(Error::NonPositiveScaling { index: 1 })
        ));
        let a = MaxMatrix::<Exact>::identity(2);
        let b = MaxMatrix::<Exact>::identity(3);
        assert!(matches!(a.otimes(&b), Err(Error::DimensionMismatch { .. })));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = MaxMatrix<Exact>> {
        proptest::collection::vec((0i64..5, 1i64..4), n * n).prop_map(move |cells| {
            MaxMatrix::from_fn(n, |i, j| {
                let (a, b) = cells[i * n + j];
                q(a, b)
            })
        })
    }

    fn scaling(n: usize) -> impl Strategy<Value = ScalingVector<Exact>> {
        proptest::collection::vec((1i64..7, 1i64..7), n).prop_map(|v| {
            ScalingVector::user(v.into_iter().map(|(a, b)| q(a, b)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn semiring_laws((a, b, c) in (1usize..5).prop_flat_map(|n| (small_matrix(n), small_matrix(n), small_matrix(n)))) {
            prop_assert_eq!(a.otimes(&b).unwrap().otimes(&c).unwrap(), a.otimes(&b.otimes(&c).unwrap()).unwrap());
            prop_assert_eq!(a.oplus(&b).unwrap(), b.oplus(&a).unwrap());
            prop_assert_eq!(a.oplus(&b).unwrap().oplus(&c).unwrap(), a.oplus(&b.oplus(&c).unwrap()).unwrap());
            prop_assert_eq!(a.oplus(&a).unwrap(), a.clone());
            prop_assert_eq!(
                a.otimes(&b.oplus(&c).unwrap()).unwrap(),
                a.otimes(&b).unwrap().oplus(&a.otimes(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn similarity_is_involutive((a, x) in (1usize..6).prop_flat_map(|n| (small_matrix(n), scaling(n)))) {
            let back = a.diag_similarity(&x).unwrap().diag_similarity(&x.inverse()).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn float_backend_agrees_with_exact((a, b) in (1usize..5).prop_flat_map(|n| (small_matrix(n), small_matrix(n)))) {
            let exact = a.otimes(&b).unwrap().oplus(&a).unwrap().to_float();
            let float = a.to_float().otimes(&b.to_float()).unwrap().oplus(&a.to_float()).unwrap();
            prop_assert!(exact.approx_eq(&float));
        }
    }
}
