use super::DiffForm;
use crate::error::{Error, Result};
use crate::poly::{PolyMatrix, Ring};
use crate::scalar::Field;

/// Matrix of forms: an element of Hom(P, P') ⊗ Ω with graded bases on
/// both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct FormMatrix<C: Field> {
    ring: Ring,
    row_par: Vec<bool>,
    col_par: Vec<bool>,
    entries: Vec<DiffForm<C>>,
}

impl<C: Field> FormMatrix<C> {
    pub fn zeros(ring: &Ring, row_par: &[bool], col_par: &[bool]) -> Self {
        FormMatrix {
            ring: ring.clone(),
            row_par: row_par.to_vec(),
            col_par: col_par.to_vec(),
            entries: vec![DiffForm::zero(ring); row_par.len() * col_par.len()],
        }
    }

    pub fn identity(ring: &Ring, par: &[bool]) -> Self {
        let mut m = Self::zeros(ring, par, par);
        for i in 0..par.len() {
            m.set(i, i, DiffForm::function(crate::poly::Polynomial::one(ring)));
        }
        m
    }

    pub fn from_poly_matrix(m: &PolyMatrix<C>, row_par: &[bool], col_par: &[bool]) -> Self {
        let mut out = Self::zeros(m.ring(), row_par, col_par);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, DiffForm::function(m.get(i, j).clone()));
            }
        }
        out
    }

    /// Entrywise de Rham differential of a polynomial matrix.
    pub fn d_entrywise(m: &PolyMatrix<C>, row_par: &[bool], col_par: &[bool]) -> Self {
        let mut out = Self::zeros(m.ring(), row_par, col_par);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, DiffForm::d(m.get(i, j)));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.row_par.len()
    }

    pub fn cols(&self) -> usize {
        self.col_par.len()
    }

    pub fn row_parities(&self) -> &[bool] {
        &self.row_par
    }

    pub fn col_parities(&self) -> &[bool] {
        &self.col_par
    }

    pub fn get(&self, i: usize, j: usize) -> &DiffForm<C> {
        &self.entries[i * self.cols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: DiffForm<C>) {
        let c = self.cols();
        self.entries[i * c + j] = w;
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scale(c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.row_par != other.row_par || self.col_par != other.col_par {
            return Err(Error::DimensionMismatch("form matrix shapes".into()));
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.add(o);
        }
        Ok(out)
    }

    fn check_mul(&self, other: &Self) -> Result<()> {
        if self.col_par != other.row_par {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(())
    }

    /// Product in End ⊗ Ω with the Koszul rule
    /// (E_ik ⊗ ω)(E_kj ⊗ η) = (−1)^{|ω|(|k|+|j|)} E_ij ⊗ ω∧η.
    pub fn mul_graded(&self, other: &Self) -> Result<Self> {
        self.check_mul(other)?;
        let mut out = Self::zeros(&self.ring, &self.row_par, &other.col_par);
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                let w = self.get(i, k);
                if w.is_zero() {
                    continue;
                }
                for j in 0..other.cols() {
                    let eta = other.get(k, j);
                    if eta.is_zero() {
                        continue;
                    }
                    let shift = self.col_par[k] ^ other.col_par[j];
                    let mut signed = DiffForm::zero(&self.ring);
                    for (mask, p) in w.components() {
                        let neg = shift && mask.count_ones() % 2 == 1;
                        signed.add_component(mask, if neg { -p } else { p.clone() });
                    }
                    let acc = out.get(i, j).add(&signed.wedge(eta));
                    out.set(i, j, acc);
                }
            }
        }
        Ok(out)
    }

    /// Row-by-column product with entries multiplied by the wedge alone.
    pub fn mul_plain(&self, other: &Self) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::DimensionMismatch("form matrix product".into()));
        }
        let mut out = Self::zeros(&self.ring, &self.row_par, &other.col_par);
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                let w = self.get(i, k);
                if w.is_zero() {
                    continue;
                }
                for j in 0..other.cols() {
                    let acc = out.get(i, j).add(&w.wedge(other.get(k, j)));
                    out.set(i, j, acc);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<DiffForm<C>> {
        if self.rows() != self.cols() {
            return Err(Error::DimensionMismatch("trace of a non-square form matrix".into()));
        }
        let mut acc = DiffForm::zero(&self.ring);
        for i in 0..self.rows() {
            acc = acc.add(self.get(i, i));
        }
        Ok(acc)
    }

    /// Trace over the even block minus trace over the odd block.
    pub fn supertrace(&self) -> Result<DiffForm<C>> {
        if self.row_par != self.col_par {
            return Err(Error::DimensionMismatch("supertrace needs an endomorphism".into()));
        }
        let mut acc = DiffForm::zero(&self.ring);
        for i in 0..self.rows() {
            acc = if self.row_par[i] {
                acc.sub(self.get(i, i))
            } else {
                acc.add(self.get(i, i))
            };
        }
        Ok(acc)
    }
}
