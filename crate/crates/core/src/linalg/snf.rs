use super::{IntScalar, Matrix};
use crate::error::Result;

/// Smith normal form `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct Snf<T> {
    /// `min(rows, cols)` diagonal entries, nonnegative.
    pub diagonal: Vec<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: IntScalar> Snf<T> {
    /// Checks the certificate `U * M * V = D`.
    pub fn verify(&self, m: &Matrix<T>) -> Result<bool> {
        let d = self.u.mul(m)?.mul(&self.v)?;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j { self.diagonal[i].clone() } else { T::zero() };
                if d[(i, j)] != expect {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work<T> {
    d: Matrix<T>,
    u: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
}

impl<T: IntScalar> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        self.d.row_sub(dst, src, q)?;
        if let Some(u) = &mut self.u {
            u.row_sub(dst, src, q)?;
        }
        Ok(())
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        self.d.col_sub(dst, src, q)?;
        if let Some(v) = &mut self.v {
            v.col_sub(dst, src, q)?;
        }
        Ok(())
    }

    /// Smallest nonzero `|d(i, j)|` with `i, j >= t`.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let a = self.d[(i, j)].abs();
                if !a.is_zero() && best.as_ref().is_none_or(|b| a < b.2) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Result<Vec<T>> {
        let (rows, cols) = (self.d.rows(), self.d.cols());
        let n = rows.min(cols);
        for t in 0..n {
            let Some((pi, pj)) = self.smallest(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if !self.d[(i, t)].is_zero() {
                        let q = self.d[(i, t)].div_floor(&self.d[(t, t)]);
                        self.row_sub(i, t, &q)?;
                        clean &= self.d[(i, t)].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.d[(t, j)].is_zero() {
                        let q = self.d[(t, j)].div_floor(&self.d[(t, t)]);
                        self.col_sub(j, t, &q)?;
                        clean &= self.d[(t, j)].is_zero();
                    }
                }
                if !clean {
                    // A remainder smaller than the pivot is left in row or
                    // column t; move the smallest one to the pivot.
                    let mut best = (t, t, self.d[(t, t)].abs());
                    for i in t + 1..rows {
                        let a = self.d[(i, t)].abs();
                        if !a.is_zero() && a < best.2 {
                            best = (i, t, a);
                        }
                    }
                    for j in t + 1..cols {
                        let a = self.d[(t, j)].abs();
                        if !a.is_zero() && a < best.2 {
                            best = (t, j, a);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Divisibility: fold a row with a non-multiple into row t.
                let pivot = self.d[(t, t)].clone();
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.d[(i, j)].is_multiple_of(&pivot)));
                match bad {
                    Some(i) => self.row_sub(t, i, &(-T::one()))?,
                    None => break,
                }
            }
            if self.d[(t, t)].is_negative() {
                self.d.negate_row(t);
                if let Some(u) = &mut self.u {
                    u.negate_row(t);
                }
            }
        }
        Ok((0..n).map(|i| self.d[(i, i)].clone()).collect())
    }
}

/// Smith normal form with unimodular certificates.
pub fn smith_normal_form<T: IntScalar>(m: &Matrix<T>) -> Result<Snf<T>> {
    let mut w = Work {
        d: m.clone(),
        u: Some(Matrix::identity(m.rows())),
        v: Some(Matrix::identity(m.cols())),
    };
    let diagonal = w.run()?;
    Ok(Snf { diagonal, u: w.u.unwrap(), v: w.v.unwrap() })
}

/// Diagonal of the Smith normal form, without certificates.
pub fn elementary_divisors<T: IntScalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    Work { d: m.clone(), u: None, v: None }.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    fn snf_diag(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = Matrix::<i64>::from_i64(rows).unwrap();
        let s = smith_normal_form(&m).unwrap();
        assert!(s.verify(&m).unwrap());
        s.diagonal
    }

    #[test]
    fn small_examples() {
        assert_eq!(snf_diag(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf_diag(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
        assert_eq!(snf_diag(&[vec![3, 0, 0], vec![0, 3, 0]]), vec![3, 3]);
        assert_eq!(snf_diag(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX / 2;
        let m = Matrix::<i64>::from_i64(&[vec![big, big - 1], vec![big - 1, big - 3]]).unwrap();
        // Either succeeds exactly or reports overflow; never a wrong answer.
        match smith_normal_form(&m) {
            Ok(s) => assert!(s.verify(&m).unwrap_or(true)),
            Err(e) => assert!(matches!(e, crate::Error::Overflow(_))),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn certificate_holds(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-9i64..10, 36)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let m = Matrix::<BigInt>::from_i64(&data).unwrap();
            let s = smith_normal_form(&m).unwrap();
            prop_assert!(s.verify(&m).unwrap());
            for w in s.diagonal.windows(2) {
                if !w[1].is_zero() {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                } else {
                    // zeros trail
                    prop_assert!(w[1].is_zero());
                }
            }
            prop_assert!(s.diagonal.iter().all(|d| !d.is_negative()));
            // zero entries only trail
            let first_zero = s.diagonal.iter().position(|d| d.is_zero()).unwrap_or(s.diagonal.len());
            prop_assert!(s.diagonal[first_zero..].iter().all(|d| d.is_zero()));
        }
    }
}
