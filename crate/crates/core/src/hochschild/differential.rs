use super::chain::{HochschildChain, Word};
use super::MatCategory;
use crate::error::Result;
use crate::scalar::{sign, Field};

/// ε_i = |a₀| + Σ_{j=1}^{i} (|a_j| + 1) mod 2.
fn eps<C: Field>(w: &Word<C>, i: usize) -> bool {
    w[1..=i].iter().fold(w[0].odd, |acc, a| acc ^ a.odd ^ true)
}

/// The curved Hochschild differential b = b₂ + b₁ + b₀ on the bar chains.
pub fn hochschild_b<C: Field>(cat: &MatCategory<C>, chain: &HochschildChain<C>) -> Result<HochschildChain<C>> {
    b_parts(cat, chain, [true; 3])
}

/// Only the curvature part b₀ = 1[h] ⋆ −.
pub fn hochschild_b0<C: Field>(cat: &MatCategory<C>, chain: &HochschildChain<C>) -> Result<HochschildChain<C>> {
    b_parts(cat, chain, [false, false, true])
}

fn b_parts<C: Field>(cat: &MatCategory<C>, chain: &HochschildChain<C>, [two, one, zero]: [bool; 3]) -> Result<HochschildChain<C>> {
    chain.validate()?;
    let mut out = HochschildChain::zero();
    for (c, w) in &chain.terms {
        let n = w.len() - 1;
        if two && n >= 1 {
            let mut v = vec![cat.compose(&w[0], &w[1])?];
            v.extend_from_slice(&w[2..]);
            out.push(c.clone() * sign::<C>(w[0].odd), v);
            for i in 1..n {
                let mut v = w[..i].to_vec();
                v.push(cat.compose(&w[i], &w[i + 1])?);
                v.extend_from_slice(&w[i + 2..]);
                out.push(c.clone() * sign::<C>(eps(w, i)), v);
            }
            let last = &w[n];
            let mut v = vec![cat.compose(last, &w[0])?];
            v.extend_from_slice(&w[1..n]);
            let odd = !((last.odd ^ true) && eps(w, n - 1));
            out.push(c.clone() * sign::<C>(odd), v);
        }
        if one {
            let mut v = w.clone();
            v[0] = cat.diff(&w[0]);
            out.push(c.clone(), v);
            for i in 1..=n {
                let mut v = w.clone();
                v[i] = cat.diff(&w[i]);
                out.push(c.clone() * sign::<C>(!eps(w, i - 1)), v);
            }
        }
        if !zero {
            continue;
        }
        for i in 0..=n {
            let mut v = w[..=i].to_vec();
            v.push(cat.curvature(w[i].src));
            v.extend_from_slice(&w[i + 1..]);
            out.push(c.clone() * sign::<C>(eps(w, i)), v);
        }
    }
    Ok(out)
}
