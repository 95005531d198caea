use std::fmt;

use super::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Dense matrix of polynomials, row-major. Zero rows or columns are allowed.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<C: Field> {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<C>>,
}

impl<C: Field> PolyMatrix<C> {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        Self::scalar(ring, n, &Polynomial::one(ring))
    }

    pub fn scalar(ring: &Ring, n: usize, p: &Polynomial<C>) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| p.ring() != ring) {
            return Err(Error::ArityMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial<C>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<C>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<C>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial<C>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(ring: &Ring, rows: usize, cols: &[Vec<Polynomial<C>>]) -> Self {
        Self::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Polynomial<C>) -> Polynomial<C>) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::ArityMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            let mut acc = Polynomial::zero(&self.ring);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        }))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ArityMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Result<Polynomial<C>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("trace of a non-square matrix".into()));
        }
        let mut acc = Polynomial::zero(&self.ring);
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, p: &Polynomial<C>) -> Self {
        self.map(|q| q * p)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    /// Block matrix [[a, b], [c, d]].
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("block shapes".into()));
        }
        let (r0, c0) = (a.rows, a.cols);
        Ok(Self::from_fn(&a.ring, a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < r0, j < c0) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - c0).clone(),
                (false, true) => c.get(i - r0, j).clone(),
                (false, false) => d.get(i - r0, j - c0).clone(),
            }
        }))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let z1 = Self::zeros(&self.ring, self.rows, other.cols);
        let z2 = Self::zeros(&self.ring, other.rows, self.cols);
        Self::block(self, &z1, &z2, other).expect("shapes agree by construction")
    }

    /// Submatrix with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.ring, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn embed(&self, target: &Ring, offset: usize) -> Self {
        PolyMatrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.embed(target, offset)).collect(),
        }
    }
}

impl<C: Field> fmt::Display for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<C: Field> fmt::Debug for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}({})", self.rows, self.cols, self)
    }
}
