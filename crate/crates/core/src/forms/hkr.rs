use super::{DiffForm, FormMatrix};
use crate::error::{Error, Result};
use crate::hochschild::{Arrow, HochschildChain, MatCategory};
use crate::scalar::{factorial, sign, Field};

fn check_category<C: Field>(cat: &MatCategory<C>) -> Result<()> {
    if cat.is_opposite() {
        return Err(Error::ConnectionMismatch(
            "the trivial connection is defined on the category itself, not its opposite".into(),
        ));
    }
    Ok(())
}

/// α′ = (−1)^{|α|}·dα, the derivative of an arrow for the trivial connection.
pub fn connection_derivative<C: Field>(cat: &MatCategory<C>, a: &Arrow<C>) -> FormMatrix<C> {
    let rp = &cat.object(a.tgt).parities;
    let cp = &cat.object(a.src).parities;
    let d = FormMatrix::d_entrywise(&a.matrix, rp, cp);
    if a.odd {
        d.scale(&-C::one())
    } else {
        d
    }
}

/// δ′ = −dδ for one object.
pub fn delta_prime<C: Field>(cat: &MatCategory<C>, obj: usize) -> FormMatrix<C> {
    let o = cat.object(obj);
    FormMatrix::d_entrywise(&o.delta, &o.parities, &o.parities).scale(&-C::one())
}

/// How entries of form-valued matrices multiply.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FormProduct {
    /// Row by column with the wedge product alone.
    #[default]
    Plain,
    /// With the Koszul sign for moving forms past odd basis vectors; see
    /// [`FormMatrix::mul_graded`].
    Koszul,
}

impl FormProduct {
    fn mul<C: Field>(self, a: &FormMatrix<C>, b: &FormMatrix<C>) -> Result<FormMatrix<C>> {
        match self {
            FormProduct::Plain => a.mul_plain(b),
            FormProduct::Koszul => a.mul_graded(b),
        }
    }
}

/// Image of a single word a₀[a₁|…|aₘ] under the HKR-type map: the sum over
/// i₀,…,iₘ of (−1)^{Σi}/(m+Σi)!·str(a₀ δ′^{i₀} a₁′ δ′^{i₁} ⋯ aₘ′ δ′^{iₘ}).
pub fn hkr_word<C: Field>(cat: &MatCategory<C>, word: &[Arrow<C>]) -> Result<DiffForm<C>> {
    hkr_word_with(cat, word, FormProduct::Plain)
}

pub fn hkr_word_with<C: Field>(cat: &MatCategory<C>, word: &[Arrow<C>], rule: FormProduct) -> Result<DiffForm<C>> {
    check_category(cat)?;
    crate::hochschild::check_word(word)?;
    let ring = cat.ring();
    let n = ring.nvars();
    let m = word.len() - 1;
    if m > n {
        return Ok(DiffForm::zero(ring));
    }
    let budget = n - m;
    let head = {
        let a = &word[0];
        FormMatrix::from_poly_matrix(&a.matrix, &cat.object(a.tgt).parities, &cat.object(a.src).parities)
    };
    let letters: Vec<FormMatrix<C>> = word[1..].iter().map(|a| connection_derivative(cat, a)).collect();
    let deltas: Vec<FormMatrix<C>> = word.iter().map(|a| delta_prime(cat, a.src)).collect();

    // acc[s]: partial products so far with s factors of δ′
    let mut acc: Vec<Option<FormMatrix<C>>> = vec![None; budget + 1];
    acc[0] = Some(head);
    for k in 0..=m {
        if k > 0 {
            for slot in acc.iter_mut() {
                if let Some(p) = slot.take() {
                    *slot = Some(rule.mul(&p, &letters[k - 1])?);
                }
            }
        }
        // insert δ′^{i_k}
        let mut next: Vec<Option<FormMatrix<C>>> = vec![None; budget + 1];
        for s in 0..=budget {
            let Some(p) = &acc[s] else { continue };
            let mut cur = p.clone();
            for i in 0..=(budget - s) {
                if i > 0 {
                    cur = rule.mul(&cur, &deltas[k])?;
                }
                next[s + i] = Some(match next[s + i].take() {
                    Some(q) => q.add(&cur)?,
                    None => cur.clone(),
                });
            }
        }
        acc = next;
    }
    let mut out = DiffForm::zero(ring);
    for (s, p) in acc.into_iter().enumerate() {
        let Some(p) = p else { continue };
        let coeff = sign::<C>(s % 2 == 1) / factorial::<C>(m + s);
        out = out.add(&p.supertrace()?.scale(&coeff));
    }
    Ok(out)
}

/// The chain-level map from Hochschild chains to differential forms.
pub fn hkr_epsilon<C: Field>(cat: &MatCategory<C>, chain: &HochschildChain<C>) -> Result<DiffForm<C>> {
    hkr_epsilon_with(cat, chain, FormProduct::Plain)
}

/// [`hkr_epsilon`] with a chosen product rule. With [`FormProduct::Koszul`]
/// the map intertwines b with −df∧ on every matrix category, and on id_X[]
/// it differs from the plain rule by (−1)^{n(n−1)/2} in top degree.
pub fn hkr_epsilon_with<C: Field>(cat: &MatCategory<C>, chain: &HochschildChain<C>, rule: FormProduct) -> Result<DiffForm<C>> {
    check_category(cat)?;
    let mut out = DiffForm::zero(cat.ring());
    for (c, w) in &chain.terms {
        out = out.add(&hkr_word_with(cat, w, rule)?.scale(c));
    }
    Ok(out)
}
