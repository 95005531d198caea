use super::chain::HochschildChain;
use super::{Arrow, MatCategory};
use crate::error::{Error, Result};
use crate::homology::induced_supertrace;
use crate::linalg::{rank, SparseRow};
use crate::mf::MatrixFactorization;
use crate::poly::PolyMatrix;
use crate::scalar::Field;

/// k-span of the constant matrices generated by a set of endomorphisms
/// (including the identity) under composition.
struct ConstantSpan<C: Field> {
    rows: Vec<SparseRow<C>>,
    dim: usize,
}

fn flatten<C: Field>(m: &PolyMatrix<C>) -> Option<SparseRow<C>> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let p = m.get(i, j);
            if p.is_zero() {
                continue;
            }
            if !p.is_constant() {
                return None;
            }
            out.push((i * m.cols() + j, p.constant_coeff()));
        }
    }
    Some(out)
}

impl<C: Field> ConstantSpan<C> {
    fn generate(cat: &MatCategory<C>, obj: usize, gens: &[Arrow<C>]) -> Result<Self> {
        let mut span = ConstantSpan { rows: Vec::new(), dim: 0 };
        let mut frontier = vec![cat.identity(obj)];
        while let Some(a) = frontier.pop() {
            let Some(row) = flatten(&a.matrix) else {
                return Err(Error::UnsupportedChainShape("Λ generators must be constant".into()));
            };
            if !span.insert(row) {
                continue;
            }
            for g in gens.iter().filter(|g| g.src == obj && g.tgt == obj) {
                frontier.push(cat.compose(g, &a)?);
            }
        }
        Ok(span)
    }

    /// Add a vector; false if it was already in the span.
    fn insert(&mut self, row: SparseRow<C>) -> bool {
        let mut rows = self.rows.clone();
        rows.push(row);
        let r = rank(rows.clone());
        if r == self.dim {
            return false;
        }
        self.rows = rows;
        self.dim = r;
        true
    }

    fn contains(&self, m: &PolyMatrix<C>) -> bool {
        match flatten(m) {
            None => false,
            Some(row) => {
                let mut rows = self.rows.clone();
                rows.push(row);
                rank(rows) == self.dim
            }
        }
    }
}

/// The trace on degree-zero chains over End-algebras of uncurved objects:
/// a length-0 word α[] goes to the supertrace of H(α) on homology; a longer
/// word whose letters all lie in the algebra Λ generated by `lambda` goes
/// to 0. Other shapes are rejected.
pub fn trace_hh0<C: Field>(cat: &MatCategory<C>, c: &HochschildChain<C>, lambda: &[Arrow<C>]) -> Result<C> {
    c.validate()?;
    if !cat.potential().is_zero() {
        return Err(Error::UnsupportedChainShape("trace needs an uncurved category".into()));
    }
    let mut acc = C::zero();
    for (k, w) in &c.terms {
        if w.len() == 1 {
            let a = &w[0];
            if a.odd {
                continue;
            }
            let o = cat.object(a.src);
            let p0 = o.parities.iter().take_while(|p| !**p).count();
            if o.parities[p0..].iter().any(|p| !*p) {
                return Err(Error::UnsupportedChainShape("basis is not sorted by parity".into()));
            }
            let complex = MatrixFactorization::from_delta(cat.potential().clone(), p0, o.dim() - p0, &o.delta)?;
            acc = acc + k.clone() * induced_supertrace(&complex, &a.matrix)?;
            continue;
        }
        let obj = w[0].src;
        if w.iter().any(|a| !a.is_endo() || a.src != obj) {
            return Err(Error::UnsupportedChainShape("Λ-words are endomorphism words".into()));
        }
        let span = ConstantSpan::generate(cat, obj, lambda)?;
        if !w.iter().all(|a| span.contains(&a.matrix)) {
            return Err(Error::UnsupportedChainShape("letter outside Λ".into()));
        }
    }
    Ok(acc)
}
