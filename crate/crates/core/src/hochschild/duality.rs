use super::chain::HochschildChain;
use super::{Arrow, MatCategory};
use crate::error::Result;
use crate::poly::PolyMatrix;
use crate::scalar::{sign, Field};

/// The same arrow read in the opposite category.
pub fn op_arrow<C: Field>(a: &Arrow<C>) -> Arrow<C> {
    Arrow {
        src: a.tgt,
        tgt: a.src,
        ..a.clone()
    }
}

/// Φ: a₀[a₁|…|aₙ] ↦ (−1)^{n + Σ_{i<j}(|aᵢ|+1)(|aⱼ|+1)} a₀[aₙ|…|a₁] over the
/// opposite category.
pub fn phi_op<C: Field>(cat: &MatCategory<C>, c: &HochschildChain<C>) -> Result<(MatCategory<C>, HochschildChain<C>)> {
    c.validate()?;
    let mut out = HochschildChain::zero();
    for (k, w) in &c.terms {
        let n = w.len() - 1;
        let shifted: Vec<bool> = w[1..].iter().map(|a| !a.odd).collect();
        let odd_count = shifted.iter().filter(|&&x| x).count();
        // pairs of odd shifted letters
        let pairs = odd_count * odd_count.saturating_sub(1) / 2;
        let s = (n + pairs) % 2 == 1;
        let mut word = vec![op_arrow(&w[0])];
        word.extend(w[1..].iter().rev().map(op_arrow));
        out.push(k.clone() * sign::<C>(s), word);
    }
    Ok((cat.opposite(), out))
}

/// The graded transpose (α*)_{ij} = (−1)^{|α||j|} α_{ji}, where j runs
/// over the target basis of α.
pub fn graded_transpose<C: Field>(m: &PolyMatrix<C>, target_par: &[bool], odd: bool) -> PolyMatrix<C> {
    PolyMatrix::from_fn(m.ring(), m.cols(), m.rows(), |i, j| {
        let p = m.get(j, i).clone();
        if odd && target_par[j] {
            -p
        } else {
            p
        }
    })
}

/// D: the category of duals D(X) = (X*, −δ*) over the potential −f.
/// Object indices are preserved.
pub fn dual_category<C: Field>(cat: &MatCategory<C>) -> MatCategory<C> {
    let mut out = MatCategory::new(cat.ring(), -cat.potential());
    for o in cat.objects() {
        let d = graded_transpose(&o.delta, &o.parities, true).neg();
        out.add_object(&format!("D({})", o.label), o.parities.clone(), d)
            .expect("dual of an odd map is odd");
    }
    out
}

/// a: X → Y in `cat` becomes a*: D(Y) → D(X).
pub fn dual_arrow<C: Field>(cat: &MatCategory<C>, a: &Arrow<C>) -> Arrow<C> {
    Arrow {
        src: a.tgt,
        tgt: a.src,
        odd: a.odd,
        matrix: graded_transpose(&a.matrix, &cat.object(a.tgt).parities, a.odd),
    }
}

/// Ψ = D ∘ Φ: chains of mf(Q, f) to chains of mf(Q, −f),
/// a₀[a₁|…|aₙ] ↦ ±a₀*[aₙ*|…|a₁*].
pub fn psi_mf<C: Field>(cat: &MatCategory<C>, c: &HochschildChain<C>) -> Result<(MatCategory<C>, HochschildChain<C>)> {
    let (_, phi) = phi_op(cat, c)?;
    let dual = dual_category(cat);
    let mut out = HochschildChain::zero();
    for (k, w) in phi.terms {
        // letters of Φ(c) are op arrows; undo the relabeling to read their matrices
        let word = w.iter().map(|a| dual_arrow(cat, &op_arrow(a))).collect();
        out.push(k, word);
    }
    Ok((dual, out))
}
