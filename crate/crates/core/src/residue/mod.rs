//! Grothendieck residues of generalized fractions, the residue pairing on
//! Milnor algebras and the one-variable Čech model.

mod cech;

pub use cech::{cech_1var_reduce, Cech1Var, LaurentDx};

use crate::error::{Error, Result};
use crate::forms::{MilnorAlgebra, MilnorClass};
use crate::groebner::{power_membership, DEFAULT_POWER_CAP};
use crate::poly::{Monomial, PolyMatrix, Polynomial, Ring};
use crate::scalar::{sign, Field};

/// [g·dx₁⋯dxₙ / (g₁^{a₁}, …, gₙ^{aₙ})]
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedFraction<C: Field> {
    pub numerator: Polynomial<C>,
    pub denominators: Vec<(Polynomial<C>, u32)>,
}

impl<C: Field> GeneralizedFraction<C> {
    pub fn new(numerator: Polynomial<C>, denominators: Vec<(Polynomial<C>, u32)>) -> Result<Self> {
        let n = numerator.ring().nvars();
        if denominators.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} denominators for {} variables",
                denominators.len(),
                n
            )));
        }
        if denominators.iter().any(|(_, a)| *a == 0) {
            return Err(Error::DimensionMismatch("denominator powers must be positive".into()));
        }
        Ok(GeneralizedFraction {
            numerator,
            denominators,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.numerator.ring()
    }

    pub fn residue(&self) -> Result<C> {
        let dens: Vec<_> = self.denominators.iter().map(|(g, a)| g.pow(*a)).collect();
        res_general(&self.numerator, &dens)
    }
}

/// Residue of g·dx/(x₁^{a₁},…,xₙ^{aₙ}): the coefficient of x^{a−1} in g.
pub fn res_monomial<C: Field>(g: &Polynomial<C>, a: &[u32]) -> C {
    assert!(a.iter().all(|&e| e >= 1), "exponents must be positive");
    g.coeff(&Monomial::from_exponents(a.iter().map(|e| e - 1).collect()))
}

/// Residue by the transformation law, lifting xᵢ^N = Σⱼ aᵢⱼ gⱼ.
pub fn res_general<C: Field>(g: &Polynomial<C>, dens: &[Polynomial<C>]) -> Result<C> {
    res_general_padded(g, dens, 0)
}

/// As [`res_general`] but with the common exponent raised by `extra`;
/// the result does not depend on it.
pub fn res_general_padded<C: Field>(g: &Polynomial<C>, dens: &[Polynomial<C>], extra: u32) -> Result<C> {
    let ring = g.ring();
    let n = ring.nvars();
    if dens.len() != n {
        return Err(Error::DimensionMismatch(format!("{} denominators for {} variables", dens.len(), n)));
    }
    let lifts: Vec<(u32, Vec<Polynomial<C>>)> = (0..n)
        .map(|i| power_membership(ring, dens, i, DEFAULT_POWER_CAP))
        .collect::<Result<_>>()?;
    let big_n = lifts.iter().map(|(k, _)| *k).max().unwrap_or(1) + extra;
    let mut a = PolyMatrix::zeros(ring, n, n);
    for (i, (k, row)) in lifts.iter().enumerate() {
        let pad = Polynomial::var(ring, i).pow(big_n - k);
        for (j, c) in row.iter().enumerate() {
            a.set(i, j, c * &pad);
        }
    }
    let det = determinant(&a);
    Ok(res_monomial(&(g * &det), &vec![big_n; n]))
}

/// Laplace expansion along the first row.
pub fn determinant<C: Field>(m: &PolyMatrix<C>) -> Polynomial<C> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "determinant of a non-square matrix");
    if n == 0 {
        return Polynomial::one(m.ring());
    }
    let mut acc = Polynomial::zero(m.ring());
    let rest: Vec<usize> = (1..n).collect();
    for j in 0..n {
        let e = m.get(0, j);
        if e.is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        let minor = determinant(&m.select(&rest, &cols));
        let term = e * &minor;
        acc = if j % 2 == 1 { &acc - &term } else { &acc + &term };
    }
    acc
}

/// ⟨g dx, h dx⟩ = res[g·h dx / (∂₁f, …, ∂ₙf)].
pub fn residue_pairing<C: Field>(f: &Polynomial<C>, w1: &MilnorClass<C>, w2: &MilnorClass<C>) -> Result<C> {
    MilnorAlgebra::new(f)?;
    let partials: Vec<_> = (0..f.ring().nvars()).map(|i| f.partial_derivative(i)).collect();
    res_general(&(&w1.rep * &w2.rep), &partials).map_err(|e| match e {
        Error::NotZeroDimensional => Error::NotIsolated,
        other => other,
    })
}

/// Gram matrix of the residue pairing on the standard monomial basis.
pub fn pairing_gram<C: Field>(f: &Polynomial<C>) -> Result<Vec<Vec<C>>> {
    let alg = MilnorAlgebra::new(f)?;
    let classes: Vec<MilnorClass<C>> = alg
        .basis()
        .iter()
        .map(|m| alg.class(&Polynomial::term(f.ring(), m.clone(), C::one())))
        .collect();
    classes
        .iter()
        .map(|a| classes.iter().map(|b| residue_pairing(f, a, b)).collect())
        .collect()
}

/// Sign of reordering graded blocks, given as (degree, target position).
fn block_sign(degrees: &[usize], order: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] {
                odd ^= degrees[order[i]] * degrees[order[j]] % 2 == 1;
            }
        }
    }
    odd
}

/// Compare the residue of the product class with the product of residues.
///
/// The product of α′⊗dx′ and α″⊗dx″ is rearranged to α′α″⊗dx′dx″ with the
/// Koszul sign, and its residue over the joint ring is the left side; the
/// right side is (−1)^{mn}·res′·res″.
pub fn kunneth_residue_check<C: Field>(
    w1: &GeneralizedFraction<C>,
    w2: &GeneralizedFraction<C>,
) -> Result<(C, C)> {
    let (r1, r2) = (w1.ring(), w2.ring());
    let (m, n) = (r1.nvars(), r2.nvars());
    let joint = r1.concat(r2);
    let num = &w1.numerator.embed(&joint, 0) * &w2.numerator.embed(&joint, m);
    let mut dens: Vec<(Polynomial<C>, u32)> = w1.denominators.iter().map(|(g, a)| (g.embed(&joint, 0), *a)).collect();
    dens.extend(w2.denominators.iter().map(|(g, a)| (g.embed(&joint, m), *a)));
    // blocks: α′, dx′, α″, dx″ → α′, α″, dx′, dx″
    let s = block_sign(&[m, m, n, n], &[0, 2, 1, 3]);
    let joint_frac = GeneralizedFraction::new(num, dens)?;
    let lhs = sign::<C>(s) * joint_frac.residue()?;
    let rhs = sign::<C>(m * n % 2 == 1) * w1.residue()? * w2.residue()?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests;
