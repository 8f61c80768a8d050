use std::collections::BTreeMap;

use super::{add, mul, sub, sub_mul, IntScalar};
use crate::error::Result;

/// Incrementally maintained row echelon basis of a sublattice of `T^n`.
///
/// Pivots are positive. After [`Echelon::hermite`] the basis is in Hermite
/// normal form and [`Echelon::reduce`] returns canonical coset
/// representatives.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    width: usize,
    rows: BTreeMap<usize, Vec<T>>,
}

fn ext_gcd<T: IntScalar>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

impl<T: IntScalar> Echelon<T> {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows keyed by pivot column.
    pub fn rows(&self) -> &BTreeMap<usize, Vec<T>> {
        &self.rows
    }

    pub fn pivot(&self, col: usize) -> Option<&T> {
        self.rows.get(&col).map(|r| &r[col])
    }

    /// Adds `v` to the lattice. Returns whether the lattice grew.
    pub fn insert(&mut self, mut v: Vec<T>) -> Result<bool> {
        assert_eq!(v.len(), self.width);
        let mut changed = false;
        let mut col = 0;
        loop {
            while col < self.width && v[col].is_zero() {
                col += 1;
            }
            if col == self.width {
                return Ok(changed);
            }
            let Some(row) = self.rows.get_mut(&col) else {
                if v[col].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.rows.insert(col, v);
                return Ok(true);
            };
            let p = row[col].clone();
            if v[col].is_multiple_of(&p) {
                let q = v[col].div_floor(&p);
                for j in col..self.width {
                    if !row[j].is_zero() {
                        v[j] = sub_mul(&v[j], &q, &row[j])?;
                    }
                }
                continue;
            }
            // gcd step: replace (row, v) by a unimodular combination whose
            // first vector has pivot gcd and second vanishes at `col`.
            let (g, a, b) = ext_gcd(&p, &v[col]);
            let vp = v[col].div_floor(&g);
            let pp = p.div_floor(&g);
            let mut new_row = Vec::with_capacity(self.width);
            let mut other = Vec::with_capacity(self.width);
            for j in 0..self.width {
                new_row.push(add(&mul(&a, &row[j])?, &mul(&b, &v[j])?)?);
                other.push(sub(&mul(&vp, &row[j])?, &mul(&pp, &v[j])?)?);
            }
            if new_row[col].is_negative() {
                new_row.iter_mut().for_each(|x| *x = -x.clone());
            }
            *row = new_row;
            changed = true;
            v = other;
        }
    }

    /// Reduces entries above each pivot into `[0, pivot)`.
    pub fn hermite(&mut self) -> Result<()> {
        let cols: Vec<usize> = self.rows.keys().copied().collect();
        for (idx, &c) in cols.iter().enumerate() {
            let prow = self.rows[&c].clone();
            for &r in &cols[..idx] {
                let row = self.rows.get_mut(&r).unwrap();
                let q = row[c].div_floor(&prow[c]);
                if !q.is_zero() {
                    for j in c..self.width {
                        if !prow[j].is_zero() {
                            row[j] = sub_mul(&row[j], &q, &prow[j])?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Reduces `v` modulo the lattice, leaving each pivot coordinate in
    /// `[0, pivot)`. Canonical once the basis is in Hermite form.
    pub fn reduce(&self, v: &mut [T]) -> Result<()> {
        for (&c, row) in &self.rows {
            let q = v[c].div_floor(&row[c]);
            if !q.is_zero() {
                for j in c..self.width {
                    if !row[j].is_zero() {
                        v[j] = sub_mul(&v[j], &q, &row[j])?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Converts the basis entrywise into another scalar type.
    pub fn try_map<U: IntScalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<Echelon<U>> {
        let mut rows = BTreeMap::new();
        for (&c, r) in &self.rows {
            rows.insert(c, r.iter().map(&f).collect::<Option<Vec<U>>>()?);
        }
        Some(Echelon { width: self.width, rows })
    }

    pub fn contains(&self, v: &[T]) -> Result<bool> {
        let mut w = v.to_vec();
        self.reduce(&mut w)?;
        Ok(w.iter().all(|x| x.is_zero()))
    }
}
