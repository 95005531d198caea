use super::chain::{word_parity, HochschildChain, Truncated, TruncationPolicy, Word};
use super::{Arrow, MatCategory};
use crate::error::{Error, Result};
use crate::scalar::{sign, Field};

/// Every (p,q)-shuffle of two index sequences, as the list of which side
/// each slot is taken from (false = left), with its Koszul sign.
fn shuffles(left: &[bool], right: &[bool]) -> Vec<(Vec<bool>, bool)> {
    // left/right hold the shifted parities |sa| = |a| + 1
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(left.len() + right.len());
    fn go(l: &[bool], r: &[bool], i: usize, j: usize, s: bool, pick: &mut Vec<bool>, out: &mut Vec<(Vec<bool>, bool)>) {
        if i == l.len() && j == r.len() {
            out.push((pick.clone(), s));
            return;
        }
        if i < l.len() {
            pick.push(false);
            go(l, r, i + 1, j, s, pick, out);
            pick.pop();
        }
        if j < r.len() {
            // b_j jumps over the remaining a_i, …, a_p
            let cross = r[j] && l[i..].iter().filter(|&&x| x).count() % 2 == 1;
            pick.push(true);
            go(l, r, i, j + 1, s ^ cross, pick, out);
            pick.pop();
        }
    }
    go(left, right, 0, 0, false, &mut pick, &mut out);
    out
}

fn shifted<C: Field>(w: &[Arrow<C>]) -> Vec<bool> {
    w.iter().map(|a| !a.odd).collect()
}

/// Sign of moving the head y past the shifted letters of the left word.
fn head_sign<C: Field>(left: &Word<C>, y: &Arrow<C>) -> bool {
    y.odd && left[1..].iter().filter(|a| !a.odd).count() % 2 == 1
}

/// The shuffle product x[a⃗] ⋆ y[b⃗] over a commutative ambient algebra.
///
/// Commutativity is checked on the arrows that actually occur: they must be
/// endomorphisms of one object and pairwise supercommute.
pub fn shuffle_star<C: Field>(cat: &MatCategory<C>, c1: &HochschildChain<C>, c2: &HochschildChain<C>) -> Result<HochschildChain<C>> {
    c1.validate()?;
    c2.validate()?;
    let mut letters: Vec<&Arrow<C>> = Vec::new();
    for a in c1.terms.iter().chain(&c2.terms).flat_map(|(_, w)| w.iter()) {
        if !letters.contains(&a) {
            letters.push(a);
        }
    }
    if let Some(first) = letters.first() {
        let obj = first.src;
        if letters.iter().any(|a| a.src != obj || a.tgt != obj) {
            return Err(Error::NonCommutativeAmbient);
        }
        for (i, a) in letters.iter().enumerate() {
            for b in &letters[i..] {
                if !cat.supercommute(a, b)? {
                    return Err(Error::NonCommutativeAmbient);
                }
            }
        }
    }
    let mut out = HochschildChain::zero();
    for (k1, w1) in &c1.terms {
        for (k2, w2) in &c2.terms {
            let head = cat.compose(&w1[0], &w2[0])?;
            let base = head_sign(w1, &w2[0]);
            let (l, r) = (&w1[1..], &w2[1..]);
            for (pick, s) in shuffles(&shifted(l), &shifted(r)) {
                let mut word = vec![head.clone()];
                let (mut i, mut j) = (0, 0);
                for from_right in pick {
                    if from_right {
                        word.push(r[j].clone());
                        j += 1;
                    } else {
                        word.push(l[i].clone());
                        i += 1;
                    }
                }
                out.push(k1.clone() * k2.clone() * sign::<C>(base ^ s), word);
            }
        }
    }
    Ok(out)
}

/// The Künneth map x[a⃗] ⋆̃ y[b⃗] into chains of 𝒜 ⊗ ℬ: letters become
/// aᵢ ⊗ id and id ⊗ bⱼ, shuffled with the same signs as ⋆.
pub fn kunneth_star<C: Field>(
    left: &MatCategory<C>,
    right: &MatCategory<C>,
    c1: &HochschildChain<C>,
    c2: &HochschildChain<C>,
) -> Result<(MatCategory<C>, HochschildChain<C>)> {
    c1.validate()?;
    c2.validate()?;
    let prod = left.tensor(right)?;
    let mut out = HochschildChain::zero();
    for (k1, w1) in &c1.terms {
        for (k2, w2) in &c2.terms {
            let head = MatCategory::tensor_arrow(left, right, &w1[0], &w2[0]);
            let base = head_sign(w1, &w2[0]);
            let (l, r) = (&w1[1..], &w2[1..]);
            for (pick, s) in shuffles(&shifted(l), &shifted(r)) {
                let mut word = vec![head.clone()];
                let (mut i, mut j) = (0, 0);
                // current objects: source of the last letter placed on each side
                let (mut u, mut v) = (w1[0].src, w2[0].src);
                for from_right in pick {
                    if from_right {
                        let b = &r[j];
                        word.push(MatCategory::tensor_arrow(left, right, &left.identity(u), b));
                        v = b.src;
                        j += 1;
                    } else {
                        let a = &l[i];
                        word.push(MatCategory::tensor_arrow(left, right, a, &right.identity(v)));
                        u = a.src;
                        i += 1;
                    }
                }
                out.push(k1.clone() * k2.clone() * sign::<C>(base ^ s), word);
            }
        }
    }
    Ok((prod, out))
}

/// 1 + 1[b] + 1[b|b] + ⋯ up to `policy.max_len` bars, for an odd
/// endomorphism b.
pub fn exp_class<C: Field>(cat: &MatCategory<C>, b: &Arrow<C>, policy: TruncationPolicy) -> Result<HochschildChain<C>> {
    if !b.odd || !b.is_endo() {
        return Err(Error::ConnectionMismatch("exp needs an odd endomorphism".into()));
    }
    let id = cat.identity(b.src);
    let mut out = HochschildChain::zero();
    for j in 0..=policy.max_len {
        let mut w = vec![id.clone()];
        w.extend(std::iter::repeat(b.clone()).take(j));
        out.push(C::one(), w);
    }
    Ok(out)
}

/// A curved functor (ρ, β) whose ρ keeps matrices and relabels objects;
/// β assigns an odd endomorphism of ρ(X) to every source object X.
#[derive(Clone, Debug)]
pub struct CdgFunctor<C: Field> {
    pub target: MatCategory<C>,
    pub obj_map: Vec<usize>,
    pub beta: Vec<Arrow<C>>,
}

impl<C: Field> CdgFunctor<C> {
    /// The strict functor with β = 0 into a category with the same objects.
    pub fn strict(target: MatCategory<C>, obj_map: Vec<usize>) -> Self {
        let beta = obj_map
            .iter()
            .map(|&o| {
                let n = target.object(o).dim();
                Arrow {
                    src: o,
                    tgt: o,
                    odd: true,
                    matrix: crate::poly::PolyMatrix::zeros(target.ring(), n, n),
                }
            })
            .collect();
        CdgFunctor { target, obj_map, beta }
    }

    pub fn rho(&self, a: &Arrow<C>) -> Arrow<C> {
        Arrow {
            src: self.obj_map[a.src],
            tgt: self.obj_map[a.tgt],
            odd: a.odd,
            matrix: a.matrix.clone(),
        }
    }

    /// ρ(da) − d′ρ(a) = [β, ρ(a)] for one arrow.
    pub fn check_arrow(&self, source: &MatCategory<C>, a: &Arrow<C>) -> Result<()> {
        let t = &self.target;
        let ra = self.rho(a);
        let lhs = self.rho(&source.diff(a)).matrix.checked_sub(&t.diff(&ra).matrix)?;
        let bt = &self.beta[a.tgt];
        let bs = &self.beta[a.src];
        let left = t.compose(bt, &ra)?.matrix;
        let right = t.compose(&ra, bs)?.matrix;
        let rhs = if a.odd { left.checked_add(&right)? } else { left.checked_sub(&right)? };
        if lhs != rhs {
            return Err(Error::NotAMorphism(format!("ρ(da) − d′ρ(a) ≠ [β, ρa] on {} → {}", a.src, a.tgt)));
        }
        Ok(())
    }

    /// ρ(h) = h′ + d′β + β² on one object.
    pub fn check_object(&self, source: &MatCategory<C>, obj: usize) -> Result<()> {
        let t = &self.target;
        let b = &self.beta[obj];
        let lhs = self.rho(&source.curvature(obj)).matrix;
        let rhs = t
            .curvature(self.obj_map[obj])
            .matrix
            .checked_add(&t.diff(b).matrix)?
            .checked_add(&t.compose(b, b)?.matrix)?;
        if lhs != rhs {
            return Err(Error::NotAMorphism(format!("curvature not preserved on object {}", obj)));
        }
        Ok(())
    }
}

/// φ_* = exp(1[−β]) ⋆ ρ_*: Σ (−1)^{Σi} ρa₀[β^{i₀}|ρa₁|β^{i₁}|⋯], with β
/// taken at the source of the preceding letter, cut at `policy.max_len`.
pub fn pushforward<C: Field>(
    source: &MatCategory<C>,
    phi: &CdgFunctor<C>,
    c: &HochschildChain<C>,
    policy: TruncationPolicy,
) -> Result<Truncated<C>> {
    c.validate()?;
    for (_, w) in &c.terms {
        for a in w {
            phi.check_arrow(source, a)?;
            phi.check_object(source, a.src)?;
        }
    }
    let mut out = HochschildChain::zero();
    let mut truncated = false;
    for (k, w) in &c.terms {
        let n = w.len() - 1;
        if n > policy.max_len {
            truncated = true;
            continue;
        }
        let letters: Vec<Arrow<C>> = w.iter().map(|a| phi.rho(a)).collect();
        let betas: Vec<&Arrow<C>> = w.iter().map(|a| &phi.beta[a.src]).collect();
        let zero_beta = betas.iter().all(|b| b.is_zero());
        let budget = policy.max_len - n;
        // with β ≠ 0 the series never terminates
        truncated |= !zero_beta;
        let mut counts = vec![0usize; n + 1];
        loop {
            let total: usize = counts.iter().sum();
            let mut word = Vec::with_capacity(n + 1 + total);
            for (i, a) in letters.iter().enumerate() {
                word.push(a.clone());
                word.extend(std::iter::repeat(betas[i].clone()).take(counts[i]));
            }
            out.push(k.clone() * sign::<C>(total % 2 == 1), word);
            if zero_beta || !advance(&mut counts, budget) {
                break;
            }
        }
    }
    Ok(Truncated { chain: out, truncated })
}

/// Next composition with Σ ≤ budget in lexicographic order.
fn advance(counts: &mut [usize], budget: usize) -> bool {
    for i in (0..counts.len()).rev() {
        let rest: usize = counts[..i].iter().sum();
        if rest + counts[i] < budget {
            counts[i] += 1;
            for c in counts[i + 1..].iter_mut() {
                *c = 0;
            }
            return true;
        }
    }
    false
}

/// Parity of a chain all of whose words share one parity.
pub fn chain_parity<C: Field>(c: &HochschildChain<C>) -> Option<bool> {
    let mut it = c.terms.iter().map(|(_, w)| word_parity(w));
    let first = it.next()?;
    it.all(|p| p == first).then_some(first)
}
