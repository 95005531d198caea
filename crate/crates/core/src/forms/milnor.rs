use std::fmt;

use super::{DiffForm, FormMatrix};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::mf::MatrixFactorization;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{factorial, Field};

/// The Milnor algebra Q/(∂₁f,…,∂ₙf), identified with Ωⁿ/(df ∧ Ωⁿ⁻¹).
#[derive(Clone, Debug)]
pub struct MilnorAlgebra<C: Field> {
    f: Polynomial<C>,
    jacobian: GroebnerBasis<C>,
    basis: Vec<Monomial>,
}

impl<C: Field> MilnorAlgebra<C> {
    pub fn new(f: &Polynomial<C>) -> Result<Self> {
        let ring = f.ring();
        let partials: Vec<_> = (0..ring.nvars()).map(|i| f.partial_derivative(i)).collect();
        let jacobian = GroebnerBasis::ideal(ring, &partials);
        let basis = jacobian
            .standard_monomials()
            .map_err(|_| Error::NotIsolated)?
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        Ok(MilnorAlgebra {
            f: f.clone(),
            jacobian,
            basis,
        })
    }

    pub fn potential(&self) -> &Polynomial<C> {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials, a k-basis.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn class(&self, g: &Polynomial<C>) -> MilnorClass<C> {
        MilnorClass {
            f: self.f.clone(),
            rep: self.jacobian.reduce_poly(g),
        }
    }

    pub fn reduce_form(&self, w: &DiffForm<C>) -> MilnorClass<C> {
        self.class(&w.top_coefficient())
    }
}

/// Class of g·dx₁⋯dxₙ; `rep` is the normal form modulo the Jacobian ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct MilnorClass<C: Field> {
    pub f: Polynomial<C>,
    pub rep: Polynomial<C>,
}

impl<C: Field> MilnorClass<C> {
    pub fn to_form(&self) -> DiffForm<C> {
        DiffForm::top(self.rep.clone())
    }
}

impl<C: Field> fmt::Display for MilnorClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_form())
    }
}

/// Reduce the top-degree coefficient of ω into the Milnor algebra of f.
pub fn milnor_reduce<C: Field>(w: &DiffForm<C>, f: &Polynomial<C>) -> Result<MilnorClass<C>> {
    Ok(MilnorAlgebra::new(f)?.reduce_form(w))
}

/// (2/n!)·tr(dA dB ⋯ dA dB) with n factors, as a top form.
pub fn chern_form<C: Field>(x: &MatrixFactorization<C>) -> Result<DiffForm<C>> {
    let ring = x.ring();
    let n = ring.nvars();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let e0 = vec![false; x.p0()];
    let e1 = vec![true; x.p1()];
    let da = FormMatrix::d_entrywise(x.a(), &e0, &e1);
    let db = FormMatrix::d_entrywise(x.b(), &e1, &e0);
    let mut acc = FormMatrix::identity(ring, &e0);
    for _ in 0..n / 2 {
        acc = acc.mul_plain(&da)?.mul_plain(&db)?;
    }
    let scale = C::from_i64(2) / factorial::<C>(n);
    Ok(acc.trace()?.homogeneous(n as u32).scale(&scale))
}

pub fn chern<C: Field>(x: &MatrixFactorization<C>) -> Result<MilnorClass<C>> {
    let w = chern_form(x)?;
    milnor_reduce(&w, x.potential())
}
