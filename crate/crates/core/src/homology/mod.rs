//! Homology of ℤ/2-graded complexes of free modules with finite-length
//! homology, and the pairings χ and θ built from it.

mod oracle;

pub use oracle::{stabilized_oracle, truncated_oracle};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Lifter, VectorPoly};
use crate::mf::{MatrixFactorization, Z2FreeComplex};
use crate::poly::{Monomial, PolyMatrix, Polynomial};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDims {
    pub h0: usize,
    pub h1: usize,
}

impl HomologyDims {
    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64
    }
}

/// ker(d_out) / im(d_in) presented as Q^s / relations, where s is the
/// number of kernel generators.
pub(crate) struct HomologyModel<C: Field> {
    kernel: Vec<VectorPoly<C>>,
    lifter: Lifter<C>,
    gb: GroebnerBasis<C>,
    basis: Vec<(usize, Monomial)>,
}

impl<C: Field> HomologyModel<C> {
    pub fn new(d_out: &PolyMatrix<C>, d_in: &PolyMatrix<C>) -> Result<Self> {
        let ring = d_out.ring();
        let p = d_out.cols();
        let kernel = Lifter::new(ring, &d_out.columns(), d_out.rows()).syzygies();
        let lifter = Lifter::new(ring, &kernel, p);
        let mut relations = lifter.syzygies();
        for col in d_in.columns() {
            let c = lifter.lift(&col).map_err(|_| {
                Error::NotAComplex("image is not contained in the kernel".into())
            })?;
            relations.push(c);
        }
        let gb = GroebnerBasis::new(ring, &relations, kernel.len());
        let basis = gb.standard_monomials()?;
        Ok(HomologyModel {
            kernel,
            lifter,
            gb,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Trace of the map induced by `phi` (which must preserve cycles).
    pub fn trace(&self, phi: &PolyMatrix<C>) -> Result<C> {
        let ring = phi.ring();
        let mut images = Vec::with_capacity(self.kernel.len());
        for k in &self.kernel {
            let col = PolyMatrix::from_columns(ring, k.len(), std::slice::from_ref(k));
            let v = phi.checked_mul(&col)?.column(0);
            images.push(self.lifter.lift(&v).map_err(|_| {
                Error::NotAComplex("endomorphism does not preserve cycles".into())
            })?);
        }
        let mut acc = C::zero();
        for (pos, m) in &self.basis {
            let shifted: Vec<Polynomial<C>> = images[*pos]
                .iter()
                .map(|q| q.mul_term(m, &C::one()))
                .collect();
            let nf = self.gb.normal_form(&shifted);
            acc = acc + nf[*pos].coeff(m);
        }
        Ok(acc)
    }
}

fn check_complex<C: Field>(c: &Z2FreeComplex<C>) -> Result<()> {
    if !c.potential().is_zero() {
        return Err(Error::NotAComplex("potential is not zero".into()));
    }
    Ok(())
}

pub fn z2_homology_dims<C: Field>(c: &Z2FreeComplex<C>) -> Result<HomologyDims> {
    check_complex(c)?;
    let h0 = HomologyModel::new(c.b(), c.a())?.dim();
    let h1 = HomologyModel::new(c.a(), c.b())?.dim();
    Ok(HomologyDims { h0, h1 })
}

/// Supertrace of the endomorphism of H(C) induced by an even closed
/// endomorphism, given as a full matrix on the basis (P₀ | P₁).
pub fn induced_supertrace<C: Field>(c: &Z2FreeComplex<C>, phi: &PolyMatrix<C>) -> Result<C> {
    check_complex(c)?;
    let (p0, p1) = (c.p0(), c.p1());
    if phi.rows() != p0 + p1 || phi.cols() != p0 + p1 {
        return Err(Error::DimensionMismatch("endomorphism size".into()));
    }
    let even: Vec<usize> = (0..p0).collect();
    let odd: Vec<usize> = (p0..p0 + p1).collect();
    if !phi.select(&even, &odd).is_zero() || !phi.select(&odd, &even).is_zero() {
        return Err(Error::UnsupportedChainShape("endomorphism is not even".into()));
    }
    let t0 = HomologyModel::new(c.b(), c.a())?.trace(&phi.select(&even, &even))?;
    let t1 = HomologyModel::new(c.a(), c.b())?.trace(&phi.select(&odd, &odd))?;
    Ok(t0 - t1)
}

/// χ(X, Y) = dim H₀Hom(X, Y) − dim H₁Hom(X, Y).
pub fn euler_chi<C: Field>(x: &MatrixFactorization<C>, y: &MatrixFactorization<C>) -> Result<i64> {
    Ok(z2_homology_dims(&x.hom_complex(y)?)?.euler())
}

/// θ(X, Y) = dim H₀(X ⊗ Y) − dim H₁(X ⊗ Y) for X ∈ mf(f), Y ∈ mf(−f).
pub fn theta<C: Field>(x: &MatrixFactorization<C>, y: &MatrixFactorization<C>) -> Result<i64> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch);
    }
    if !(x.potential() + y.potential()).is_zero() {
        return Err(Error::PotentialMismatch);
    }
    Ok(z2_homology_dims(&x.tensor(y)?)?.euler())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Ring};
    use crate::{Matrix, Poly};

    fn ring() -> Ring {
        Ring::new(&["x", "y"])
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ring()).unwrap()
    }

    fn mf(a: &str, b: &str, f: &str) -> MatrixFactorization<crate::Rational> {
        let m = |s: &str| Matrix::from_rows(&ring(), vec![vec![p(s)]]).unwrap();
        MatrixFactorization::new(m(a), m(b), p(f)).unwrap()
    }

    #[test]
    fn koszul_resolution_of_residue_field() {
        let k = MatrixFactorization::koszul(&[p("x"), p("y")], &[p("0"), p("0")]).unwrap();
        assert_eq!(z2_homology_dims(&k).unwrap(), HomologyDims { h0: 1, h1: 0 });
        let z = MatrixFactorization::zero(&ring(), p("0"));
        assert_eq!(z2_homology_dims(&z).unwrap(), HomologyDims { h0: 0, h1: 0 });
    }

    #[test]
    fn pairings_for_xy() {
        let x = mf("x", "y", "x*y");
        let h = x.hom_complex(&x).unwrap();
        assert_eq!(z2_homology_dims(&h).unwrap(), HomologyDims { h0: 1, h1: 0 });
        assert_eq!(euler_chi(&x, &x).unwrap(), 1);
        assert_eq!(euler_chi(&x, &x.shift()).unwrap(), -1);
        assert_eq!(euler_chi(&x, &MatrixFactorization::zero(&ring(), p("x*y"))).unwrap(), 0);
        assert_eq!(theta(&MatrixFactorization::zero(&ring(), p("x*y")), &x.dual()).unwrap(), 0);
        assert_eq!(theta(&x, &x.dual()).unwrap(), 1);
    }

    #[test]
    fn theta_against_the_twist_carries_the_sign() {
        // θ(X, N(Y)) = (−1)^{n(n−1)/2} χ(X, Y), here n = 2
        let x = mf("x", "y", "x*y");
        assert_eq!(theta(&x, &x.n_twist()).unwrap(), -1);
        let t = x.tensor(&x.n_twist()).unwrap();
        let dims = z2_homology_dims(&t).unwrap();
        assert_eq!(dims, HomologyDims { h0: 0, h1: 1 });
        assert_eq!(stabilized_oracle(&t, 32).map(|r| r.0), Some(dims));
        let r = mf("x + y", "x^2 - x*y + y^2", "x^3 + y^3");
        assert_eq!(euler_chi(&r, &r).unwrap(), 2);
        assert_eq!(theta(&r, &r.n_twist()).unwrap(), -2);
        assert_eq!(theta(&x, &MatrixFactorization::zero(&ring(), p("-x*y"))).unwrap(), 0);
    }

    #[test]
    fn infinite_length_detected() {
        // x·y = 0 on k[x,y]: homology is not finite length
        let c = mf("x", "0", "0");
        assert_eq!(z2_homology_dims(&c), Err(Error::InfiniteLength));
    }

    #[test]
    fn identity_trace_is_euler_characteristic() {
        let k = MatrixFactorization::koszul(&[p("x"), p("y")], &[p("0"), p("0")]).unwrap();
        let id = Matrix::identity(&ring(), 4);
        assert_eq!(induced_supertrace(&k, &id).unwrap(), crate::Rational::from_integer(1.into()));
    }
}
