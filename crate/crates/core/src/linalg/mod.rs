//! Exact integer linear algebra, generic over the integer scalar.
//!
//! `i64`/`i128` run with checked arithmetic and report [`Error::Overflow`];
//! `BigInt` never overflows.

mod echelon;
mod snf;
mod sparse;

use std::fmt;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub use echelon::Echelon;
pub use snf::{elementary_divisors, smith_normal_form, Snf};
pub use sparse::{sparse_elementary_divisors, SparseRow, SparseSnf};

/// Integer scalars usable by the matrix routines.
pub trait IntScalar:
    Integer
    + Signed
    + Clone
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
{
}

impl<T> IntScalar for T where
    T: Integer
        + Signed
        + Clone
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
{
}

#[inline]
pub(crate) fn add<T: IntScalar>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow("integer matrix arithmetic"))
}

#[inline]
pub(crate) fn sub<T: IntScalar>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or(Error::Overflow("integer matrix arithmetic"))
}

#[inline]
pub(crate) fn mul<T: IntScalar>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow("integer matrix arithmetic"))
}

/// `a - q * b`
#[inline]
pub(crate) fn sub_mul<T: IntScalar>(a: &T, q: &T, b: &T) -> Result<T> {
    sub(a, &mul(q, b)?)
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_i64(x).expect("i64 fits")).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Input("matrix shapes do not match".into()));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = mul(a, &other[(k, j)])?;
                    out[(i, j)] = add(&out[(i, j)], &prod)?;
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`
    pub(crate) fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        for j in 0..self.cols {
            let s = self[(src, j)].clone();
            if !s.is_zero() {
                self[(dst, j)] = sub_mul(&self[(dst, j)], q, &s)?;
            }
        }
        Ok(())
    }

    /// `col[dst] -= q * col[src]`
    pub(crate) fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        for i in 0..self.rows {
            let s = self[(i, src)].clone();
            if !s.is_zero() {
                self[(i, dst)] = sub_mul(&self[(i, dst)], q, &s)?;
            }
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
