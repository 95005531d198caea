use std::collections::{BTreeMap, HashMap};
use std::fmt;


use super::{Arrow, MatCategory};
use crate::error::{Error, Result};
use crate::linalg::{reduce_against, SparseRow};
use crate::poly::{render_monomial, Monomial};
use crate::scalar::Field;

/// A word a₀[a₁|…|aₙ]; the first letter is a₀.
pub type Word<C> = Vec<Arrow<C>>;

/// Finite formal sum of words with coefficients in the base field.
#[derive(Clone, Debug)]
pub struct HochschildChain<C: Field> {
    pub terms: Vec<(C, Word<C>)>,
}

/// Maximal word length kept by operations that produce infinite sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub max_len: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { max_len: 8 }
    }
}

/// A chain together with whether anything was cut off.
#[derive(Clone, Debug)]
pub struct Truncated<C: Field> {
    pub chain: HochschildChain<C>,
    pub truncated: bool,
}

/// Elementary matrix entry E_ij·x^m between two objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemKey {
    pub src: usize,
    pub tgt: usize,
    pub row: usize,
    pub col: usize,
    pub mono: Monomial,
}

/// Parity |a₀| + Σ(|aᵢ| + 1).
pub fn word_parity<C: Field>(w: &[Arrow<C>]) -> bool {
    w.iter().enumerate().fold(false, |acc, (i, a)| acc ^ a.odd ^ (i > 0))
}

pub fn check_word<C: Field>(w: &[Arrow<C>]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::NonComposable("empty word".into()));
    }
    for i in 0..w.len() {
        let next = &w[(i + 1) % w.len()];
        if w[i].src != next.tgt {
            return Err(Error::NonComposable(format!(
                "letter {} has source {} but letter {} has target {}",
                i,
                w[i].src,
                (i + 1) % w.len(),
                next.tgt
            )));
        }
    }
    Ok(())
}

impl<C: Field> HochschildChain<C> {
    pub fn zero() -> Self {
        HochschildChain { terms: Vec::new() }
    }

    pub fn word(coeff: C, letters: Vec<Arrow<C>>) -> Result<Self> {
        check_word(&letters)?;
        let mut c = Self::zero();
        c.push(coeff, letters);
        Ok(c)
    }

    /// Add a term, dropping it if the coefficient or any letter vanishes.
    pub fn push(&mut self, coeff: C, w: Word<C>) {
        if coeff.is_zero() || w.iter().any(Arrow::is_zero) {
            return;
        }
        self.terms.push((coeff, w));
    }

    /// Merge terms whose words are literally equal.
    pub fn collect(&self) -> Self {
        let mut merged: Vec<(C, Word<C>)> = Vec::new();
        for (k, w) in &self.terms {
            match merged.iter_mut().find(|(_, v)| v == w) {
                Some(slot) => slot.0 = slot.0.clone() + k.clone(),
                None => merged.push((k.clone(), w.clone())),
            }
        }
        HochschildChain {
            terms: merged.into_iter().filter(|(k, _)| !k.is_zero()).collect(),
        }
    }

    pub fn extend(&mut self, other: HochschildChain<C>) {
        self.terms.extend(other.terms);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, w) in &self.terms {
            out.push(k.clone() * c.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn validate(&self) -> Result<()> {
        self.terms.iter().try_for_each(|(_, w)| check_word(w))
    }

    /// Longest bar length n among words a₀[a₁|…|aₙ].
    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len() - 1).max().unwrap_or(0)
    }

    /// Keep words of bar length at most `max_len`.
    pub fn truncate(&self, max_len: usize) -> Self {
        HochschildChain {
            terms: self
                .terms
                .iter()
                .filter(|(_, w)| w.len() - 1 <= max_len)
                .cloned()
                .collect(),
        }
    }

    /// Expand every letter into elementary matrices; the canonical form in
    /// the tensor algebra.
    pub fn normalize(&self) -> BTreeMap<Vec<ElemKey>, C> {
        let mut out: BTreeMap<Vec<ElemKey>, C> = BTreeMap::new();
        for (coeff, w) in &self.terms {
            let letters: Vec<Vec<(ElemKey, C)>> = w.iter().map(expand_arrow).collect();
            let mut key = Vec::with_capacity(w.len());
            expand_into(&letters, 0, &mut key, coeff.clone(), &mut out);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Exact zero test in the tensor algebra, without expanding words.
    pub fn is_zero(&self) -> bool {
        let mut interner = Interner::new();
        let mut by_len: BTreeMap<usize, Vec<(C, Vec<usize>)>> = BTreeMap::new();
        for (c, w) in &self.terms {
            let mut coeff = c.clone();
            let mut ids = Vec::with_capacity(w.len());
            for a in w {
                let (scale, id) = interner.intern(a);
                coeff = coeff * scale;
                ids.push(id);
            }
            by_len.entry(w.len()).or_default().push((coeff, ids));
        }
        by_len.into_values().all(|terms| {
            let refs = terms.iter().map(|(c, w)| (c.clone(), w.as_slice())).collect();
            tensor_is_zero(refs, &interner.letters)
        })
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Only words of even parity.
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(_, w)| !word_parity(w))
    }

    pub fn display(&self, cat: &MatCategory<C>) -> String {
        let names = cat.ring().names();
        let norm = self.normalize();
        if norm.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (key, c) in &norm {
            let letter = |k: &ElemKey| {
                let m = render_monomial(&k.mono, names);
                let m = if m.is_empty() { "1".to_string() } else { m };
                format!("{}·E{}{}", m, k.row, k.col)
            };
            let head = letter(&key[0]);
            let rest: Vec<String> = key[1..].iter().map(letter).collect();
            parts.push(format!("({}) {}[{}]", c, head, rest.join("|")));
        }
        parts.join(" + ")
    }
}

/// Distinct letters up to scale, as sparse vectors in a common coordinate
/// system of elementary matrices.
struct Interner<C: Field> {
    coords: HashMap<ElemKey, usize>,
    ids: HashMap<SparseRow<C>, usize>,
    letters: Vec<SparseRow<C>>,
}

impl<C: Field> Interner<C> {
    fn new() -> Self {
        Interner {
            coords: HashMap::new(),
            ids: HashMap::new(),
            letters: Vec::new(),
        }
    }

    /// a = scale · letters[id], with the letter's leading entry 1.
    fn intern(&mut self, a: &Arrow<C>) -> (C, usize) {
        let mut row: SparseRow<C> = expand_arrow(a)
            .into_iter()
            .map(|(k, c)| {
                let n = self.coords.len();
                (*self.coords.entry(k).or_insert(n), c)
            })
            .collect();
        row.sort_by_key(|e| e.0);
        let scale = row.first().map(|e| e.1.clone()).unwrap_or_else(C::one);
        let inv = scale.inv();
        for e in row.iter_mut() {
            e.1 = e.1.clone() * inv.clone();
        }
        let n = self.letters.len();
        let id = *self.ids.entry(row.clone()).or_insert(n);
        if id == n {
            self.letters.push(row);
        }
        (scale, id)
    }
}

/// Σ cₖ·v_{k,0} ⊗ v_{k,1} ⊗ ⋯ = 0? Pick a basis among the first letters,
/// rewrite the others in it and recurse on each coefficient tensor.
fn tensor_is_zero<C: Field>(terms: Vec<(C, &[usize])>, letters: &[SparseRow<C>]) -> bool {
    if terms.is_empty() {
        return true;
    }
    if terms[0].1.is_empty() {
        return terms.into_iter().fold(C::zero(), |acc, (c, _)| acc + c).is_zero();
    }
    let mut groups: BTreeMap<usize, Vec<(C, &[usize])>> = BTreeMap::new();
    for (c, w) in terms {
        groups.entry(w[0]).or_default().push((c, &w[1..]));
    }
    if groups.len() == 1 {
        return tensor_is_zero(groups.into_values().next().unwrap(), letters);
    }
    // echelon rows with their expression in the chosen basis
    let mut echelon: Vec<(SparseRow<C>, Vec<(usize, C)>)> = Vec::new();
    let mut basis: Vec<Vec<(C, &[usize])>> = Vec::new();
    let mut dependent: Vec<(Vec<(usize, C)>, Vec<(C, &[usize])>)> = Vec::new();
    for (id, rest) in groups {
        let (rem, combo) = reduce_against(&letters[id], &echelon);
        if rem.is_empty() {
            dependent.push((combo, rest));
        } else {
            let b = basis.len();
            let inv = rem[0].1.inv();
            let row: SparseRow<C> = rem.into_iter().map(|(k, v)| (k, v * inv.clone())).collect();
            // row = (letter − Σ combo)·inv
            let mut expr: Vec<(usize, C)> = combo.into_iter().map(|(j, v)| (j, -v * inv.clone())).collect();
            expr.push((b, inv));
            echelon.push((row, expr));
            basis.push(rest);
        }
    }
    for (combo, rest) in dependent {
        for (b, lambda) in combo {
            if lambda.is_zero() {
                continue;
            }
            for (c, w) in &rest {
                basis[b].push((c.clone() * lambda.clone(), w));
            }
        }
    }
    basis.into_iter().all(|t| tensor_is_zero(t, letters))
}

fn expand_arrow<C: Field>(a: &Arrow<C>) -> Vec<(ElemKey, C)> {
    let mut out = Vec::new();
    for i in 0..a.matrix.rows() {
        for j in 0..a.matrix.cols() {
            for (m, c) in a.matrix.get(i, j).terms() {
                out.push((
                    ElemKey {
                        src: a.src,
                        tgt: a.tgt,
                        row: i,
                        col: j,
                        mono: m.clone(),
                    },
                    c.clone(),
                ));
            }
        }
    }
    out
}

fn expand_into<C: Field>(
    letters: &[Vec<(ElemKey, C)>],
    k: usize,
    key: &mut Vec<ElemKey>,
    coeff: C,
    out: &mut BTreeMap<Vec<ElemKey>, C>,
) {
    if k == letters.len() {
        let e = out.entry(key.clone()).or_insert_with(C::zero);
        *e = e.clone() + coeff;
        return;
    }
    for (e, c) in &letters[k] {
        key.push(e.clone());
        expand_into(letters, k + 1, key, coeff.clone() * c.clone(), out);
        key.pop();
    }
}

impl fmt::Display for ElemKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}{:?}", self.row, self.col, self.mono.exponents())
    }
}
