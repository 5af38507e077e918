//! Conventional (plus-times) linear algebra over exact values.

use crate::error::{Error, Result};
use crate::matrix::MaxMatrix;
use crate::scalar::{Exact, Scalar};

/// Rank of a rectangular matrix over the field of its entries, by
/// fraction-free (Bareiss) elimination.
pub fn rank_of_rows(rows: &[Vec<Exact>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else { return 0 };
    let mut a = rows.to_vec();
    let height = a.len();
    let mut rank = 0;
    let mut previous = Exact::one();
    for col in 0..width {
        if rank == height {
            break;
        }
        let Some(pivot) = (rank..height).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                for c in col + 1..width {
                    row[c] = &(&pivot_row[col] * &row[c]) / &previous;
                }
            } else {
                for c in col + 1..width {
                    let t = &(&pivot_row[col] * &row[c]) - &(&row[col] * &pivot_row[c]);
                    row[c] = &t / &previous;
                }
                row[col] = Exact::zero();
            }
        }
        previous = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Conventional rank of a max-times matrix read as an ordinary matrix.
/// Only defined for the exact backend.
pub fn linear_rank<S: Scalar>(m: &MaxMatrix<S>) -> Result<usize> {
    Ok(rank_of_rows(&exact_rows(m)?))
}

pub(crate) fn exact_rows<S: Scalar>(m: &MaxMatrix<S>) -> Result<Vec<Vec<Exact>>> {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|v| v.as_exact().cloned().ok_or(Error::ExactModeRequired("linear rank")))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(linear_rank(&MaxMatrix::<Exact>::identity(4)).unwrap(), 4);
        let ones = MaxMatrix::from_fn(3, |_, _| Exact::one());
        assert_eq!(linear_rank(&ones).unwrap(), 1);
        assert!(matches!(
            linear_rank(&ones.to_float()),
            Err(Error::ExactModeRequired(_))
        ));
    }

    #[test]
    fn rank_deficient_columns_are_skipped() {
        let q = |n| Exact::from_integer(n);
        let rows = vec![
            vec![q(0), q(1), q(2)],
            vec![q(0), q(2), q(4)],
            vec![q(0), q(1), q(3)],
        ];
        assert_eq!(rank_of_rows(&rows), 2);
        assert_eq!(rank_of_rows(&[vec![q(1), q(2), q(3)]]), 1);
    }

    #[test]
    fn rank_over_a_radical_extension() {
        let s2 = Exact::from_integer(2).nth_root(2).unwrap();
        let rows = vec![vec![Exact::one(), s2.clone()], vec![s2.clone(), Exact::from_integer(2)]];
        assert_eq!(rank_of_rows(&rows), 1);
        let rows = vec![vec![Exact::one(), s2.clone()], vec![s2, Exact::from_integer(3)]];
        assert_eq!(rank_of_rows(&rows), 2);
    }
}
