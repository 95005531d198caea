//! Matrix factorizations (A, B) with AB = BA = f·I, as explicit polynomial
//! matrices. The basis of an object lists P₀ first, then P₁; the full odd
//! differential is δ = [[0, A], [B, 0]].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, PolyMatrix, Polynomial, Ring};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFactorization<C: Field> {
    ring: Ring,
    f: Polynomial<C>,
    a: PolyMatrix<C>,
    b: PolyMatrix<C>,
}

/// A ℤ/2-graded complex of free modules: a factorization of zero.
pub type Z2FreeComplex<C> = MatrixFactorization<C>;

impl<C: Field> MatrixFactorization<C> {
    /// Validate AB = f·I and BA = f·I.
    pub fn new(a: PolyMatrix<C>, b: PolyMatrix<C>, f: Polynomial<C>) -> Result<Self> {
        let ring = f.ring().clone();
        if a.ring() != &ring || b.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        let (p0, p1) = (a.rows(), a.cols());
        if b.rows() != p1 || b.cols() != p0 {
            return Err(Error::NotAFactorization(format!(
                "A is {}x{} but B is {}x{}",
                p0,
                p1,
                b.rows(),
                b.cols()
            )));
        }
        let ab = a.checked_mul(&b)?;
        if ab != PolyMatrix::scalar(&ring, p0, &f) {
            return Err(Error::NotAFactorization(format!("A*B = {}", ab)));
        }
        let ba = b.checked_mul(&a)?;
        if ba != PolyMatrix::scalar(&ring, p1, &f) {
            return Err(Error::NotAFactorization(format!("B*A = {}", ba)));
        }
        if !f.is_zero() && p0 != p1 {
            return Err(Error::NotAFactorization("ranks differ".into()));
        }
        Ok(MatrixFactorization { ring, f, a, b })
    }

    pub fn zero(ring: &Ring, f: Polynomial<C>) -> Self {
        MatrixFactorization {
            ring: ring.clone(),
            f,
            a: PolyMatrix::zeros(ring, 0, 0),
            b: PolyMatrix::zeros(ring, 0, 0),
        }
    }

    /// Build from a full odd differential on the basis (P₀ | P₁).
    pub fn from_delta(f: Polynomial<C>, p0: usize, p1: usize, delta: &PolyMatrix<C>) -> Result<Self> {
        let even: Vec<usize> = (0..p0).collect();
        let odd: Vec<usize> = (p0..p0 + p1).collect();
        if !delta.select(&even, &even).is_zero() || !delta.select(&odd, &odd).is_zero() {
            return Err(Error::NotAFactorization("differential is not odd".into()));
        }
        Self::new(delta.select(&even, &odd), delta.select(&odd, &even), f)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn potential(&self) -> &Polynomial<C> {
        &self.f
    }

    pub fn a(&self) -> &PolyMatrix<C> {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix<C> {
        &self.b
    }

    pub fn p0(&self) -> usize {
        self.a.rows()
    }

    pub fn p1(&self) -> usize {
        self.a.cols()
    }

    pub fn rank(&self) -> usize {
        self.p0() + self.p1()
    }

    /// Parity of each basis vector: false for P₀, true for P₁.
    pub fn parities(&self) -> Vec<bool> {
        let mut p = vec![false; self.p0()];
        p.extend(std::iter::repeat(true).take(self.p1()));
        p
    }

    pub fn delta(&self) -> PolyMatrix<C> {
        let z0 = PolyMatrix::zeros(&self.ring, self.p0(), self.p0());
        let z1 = PolyMatrix::zeros(&self.ring, self.p1(), self.p1());
        PolyMatrix::block(&z0, &self.a, &self.b, &z1).expect("block shapes")
    }

    /// (P*, −δ*), which on matrices is (Bᵀ, −Aᵀ).
    pub fn dual(&self) -> Self {
        MatrixFactorization {
            ring: self.ring.clone(),
            f: -&self.f,
            a: self.b.transpose(),
            b: self.a.transpose().neg(),
        }
    }

    /// (A, −B) in mf(Q, −f).
    pub fn n_twist(&self) -> Self {
        MatrixFactorization {
            ring: self.ring.clone(),
            f: -&self.f,
            a: self.a.clone(),
            b: self.b.neg(),
        }
    }

    /// Parity shift: P₀ and P₁ swap and δ changes sign.
    pub fn shift(&self) -> Self {
        MatrixFactorization {
            ring: self.ring.clone(),
            f: self.f.clone(),
            a: self.b.neg(),
            b: self.a.neg(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.f != other.f {
            return Err(Error::PotentialMismatch);
        }
        Ok(MatrixFactorization {
            ring: self.ring.clone(),
            f: self.f.clone(),
            a: self.a.direct_sum(&other.a),
            b: self.b.direct_sum(&other.b),
        })
    }

    /// X ⊗ Y in mf(Q, f + g), basis layout of [`TensorLayout`].
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let px = self.parities();
        let py = other.parities();
        let rows = TensorLayout::new(&px, &py);
        let dx = self.delta();
        let dy = other.delta();
        let ix = PolyMatrix::identity(&self.ring, px.len());
        let iy = PolyMatrix::identity(&self.ring, py.len());
        let left = kron_graded(&dx, &px, &px, &iy, &py, &py, false);
        let right = kron_graded(&ix, &px, &px, &dy, &py, &py, true);
        let delta = left.checked_add(&right)?;
        let f = &self.f + &other.f;
        let p0 = rows.parities.iter().filter(|p| !**p).count();
        Self::from_delta(f, p0, rows.parities.len() - p0, &delta)
    }

    /// Hom(X, Y) ≅ D(X) ⊗ Y, a ℤ/2-graded complex.
    pub fn hom_complex(&self, other: &Self) -> Result<Z2FreeComplex<C>> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.f != other.f {
            return Err(Error::PotentialMismatch);
        }
        self.dual().tensor(other)
    }

    pub fn embed(&self, target: &Ring, offset: usize) -> Self {
        MatrixFactorization {
            ring: target.clone(),
            f: self.f.embed(target, offset),
            a: self.a.embed(target, offset),
            b: self.b.embed(target, offset),
        }
    }

    /// Koszul factorization δ = Σ xᵢeᵢ* + yᵢeᵢ of Σ xᵢyᵢ on the exterior algebra.
    pub fn koszul(xs: &[Polynomial<C>], ys: &[Polynomial<C>]) -> Result<Self> {
        if xs.len() != ys.len() || xs.is_empty() {
            return Err(Error::DimensionMismatch("koszul needs matching nonempty lists".into()));
        }
        let ring = xs[0].ring().clone();
        let basis = KoszulBasis::new(xs.len());
        let mut delta = PolyMatrix::zeros(&ring, basis.len(), basis.len());
        let mut f = Polynomial::zero(&ring);
        for i in 0..xs.len() {
            let term = basis
                .contraction(&ring, i)
                .scale_poly(&xs[i])
                .checked_add(&basis.wedge(&ring, i).scale_poly(&ys[i]))?;
            delta = delta.checked_add(&term)?;
            f = &f + &(&xs[i] * &ys[i]);
        }
        Self::from_delta(f, basis.len() / 2, basis.len() / 2, &delta)
    }

    pub fn to_json(&self) -> MfFile {
        let rows = |m: &PolyMatrix<C>| -> Vec<Vec<String>> {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                .collect()
        };
        MfFile {
            ring: self.ring.names().to_vec(),
            f: self.f.to_string(),
            a: rows(&self.a),
            b: rows(&self.b),
        }
    }

    pub fn from_json(file: &MfFile) -> Result<Self> {
        let ring = Ring::new(&file.ring);
        let f = parse_poly(&file.f, &ring)?;
        let parse_rows = |rows: &[Vec<String>]| -> Result<Vec<Vec<Polynomial<C>>>> {
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s, &ring)).collect())
                .collect()
        };
        let a = PolyMatrix::from_rows(&ring, parse_rows(&file.a)?)?;
        let b = PolyMatrix::from_rows(&ring, parse_rows(&file.b)?)?;
        Self::new(a, b, f)
    }
}

/// On-disk form of a factorization.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MfFile {
    pub ring: Vec<String>,
    pub f: String,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
}

/// Basis of the exterior algebra on e₁,…,eₙ: even subsets then odd
/// subsets, each group in lexicographic order of sorted index tuples.
#[derive(Clone, Debug)]
pub struct KoszulBasis {
    subsets: Vec<Vec<usize>>,
}

impl KoszulBasis {
    pub fn new(n: usize) -> Self {
        let mut all: Vec<Vec<usize>> = (0u32..(1 << n))
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
        all.sort();
        let (mut even, odd): (Vec<_>, Vec<_>) = all.into_iter().partition(|s| s.len() % 2 == 0);
        even.extend(odd);
        KoszulBasis { subsets: even }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    fn index(&self, s: &[usize]) -> usize {
        self.subsets.iter().position(|t| t == s).unwrap()
    }

    /// Left multiplication by eᵢ.
    pub fn wedge<C: Field>(&self, ring: &Ring, i: usize) -> PolyMatrix<C> {
        let mut m = PolyMatrix::zeros(ring, self.len(), self.len());
        for (col, s) in self.subsets.iter().enumerate() {
            if s.contains(&i) {
                continue;
            }
            let before = s.iter().filter(|&&t| t < i).count();
            let mut t = s.clone();
            t.push(i);
            t.sort();
            let c = if before % 2 == 0 { 1 } else { -1 };
            m.set(self.index(&t), col, Polynomial::from_int(ring, c));
        }
        m
    }

    /// Contraction eᵢ*, the graded derivation with eᵢ*(eⱼ) = δᵢⱼ.
    pub fn contraction<C: Field>(&self, ring: &Ring, i: usize) -> PolyMatrix<C> {
        let mut m = PolyMatrix::zeros(ring, self.len(), self.len());
        for (col, s) in self.subsets.iter().enumerate() {
            if !s.contains(&i) {
                continue;
            }
            let before = s.iter().filter(|&&t| t < i).count();
            let t: Vec<usize> = s.iter().copied().filter(|&t| t != i).collect();
            let c = if before % 2 == 0 { 1 } else { -1 };
            m.set(self.index(&t), col, Polynomial::from_int(ring, c));
        }
        m
    }
}

/// Basis of X ⊗ Y for graded bases X and Y: the pairs of parity
/// (even, even), (odd, odd), (odd, even), (even, odd), each block ordered
/// with the X index varying slowest.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    pub index: Vec<Vec<usize>>,
    pub parities: Vec<bool>,
}

impl TensorLayout {
    pub fn new(px: &[bool], py: &[bool]) -> Self {
        let mut index = vec![vec![0; py.len()]; px.len()];
        let mut parities = Vec::with_capacity(px.len() * py.len());
        for (a, b) in [(false, false), (true, true), (true, false), (false, true)] {
            for (u, &pu) in px.iter().enumerate() {
                for (v, &pv) in py.iter().enumerate() {
                    if pu == a && pv == b {
                        index[u][v] = parities.len();
                        parities.push(a ^ b);
                    }
                }
            }
        }
        TensorLayout { index, parities }
    }
}

/// Matrix of a ⊗ b on tensor layouts, with the Koszul sign
/// (a⊗b)(u⊗v) = (−1)^{|b||u|} a(u) ⊗ b(v).
pub fn kron_graded<C: Field>(
    a: &PolyMatrix<C>,
    a_rows: &[bool],
    a_cols: &[bool],
    b: &PolyMatrix<C>,
    b_rows: &[bool],
    b_cols: &[bool],
    b_odd: bool,
) -> PolyMatrix<C> {
    let rl = TensorLayout::new(a_rows, b_rows);
    let cl = TensorLayout::new(a_cols, b_cols);
    let mut m = PolyMatrix::zeros(a.ring(), rl.parities.len(), cl.parities.len());
    for u2 in 0..a_rows.len() {
        for u in 0..a_cols.len() {
            let x = a.get(u2, u);
            if x.is_zero() {
                continue;
            }
            let neg = b_odd && a_cols[u];
            for v2 in 0..b_rows.len() {
                for v in 0..b_cols.len() {
                    let y = b.get(v2, v);
                    if y.is_zero() {
                        continue;
                    }
                    let mut e = x * y;
                    if neg {
                        e = -e;
                    }
                    m.set(rl.index[u2][v2], cl.index[u][v], e);
                }
            }
        }
    }
    m
}
