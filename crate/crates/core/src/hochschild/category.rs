use crate::error::{Error, Result};
use crate::mf::{kron_graded, MatrixFactorization, TensorLayout};
use crate::poly::{PolyMatrix, Polynomial, Ring};
use crate::scalar::Field;

/// A free graded module with an odd endomorphism δ; an object of the
/// curved category of quasi-factorizations.
#[derive(Clone, Debug, PartialEq)]
pub struct Object<C: Field> {
    pub label: String,
    pub parities: Vec<bool>,
    pub delta: PolyMatrix<C>,
}

impl<C: Field> Object<C> {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }
}

/// Homogeneous morphism between two objects of a [`MatCategory`].
#[derive(Clone, Debug, PartialEq)]
pub struct Arrow<C: Field> {
    pub src: usize,
    pub tgt: usize,
    pub odd: bool,
    pub matrix: PolyMatrix<C>,
}

impl<C: Field> Arrow<C> {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, c: &C) -> Self {
        Arrow {
            matrix: self.matrix.scale(c),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn is_endo(&self) -> bool {
        self.src == self.tgt
    }
}

/// Curved ℤ/2-graded category whose objects are graded free modules with an
/// odd δ, morphisms are homogeneous polynomial matrices, the differential is
/// ∂α = δα − (−1)^{|α|}αδ and the curvature of X is δ_X² − f.
///
/// In the opposite category an arrow keeps its matrix but swaps source and
/// target; composition picks up the Koszul sign and the curvature flips.
#[derive(Clone, Debug)]
pub struct MatCategory<C: Field> {
    ring: Ring,
    potential: Polynomial<C>,
    objects: Vec<Object<C>>,
    opposite: bool,
}

impl<C: Field> MatCategory<C> {
    pub fn new(ring: &Ring, potential: Polynomial<C>) -> Self {
        MatCategory {
            ring: ring.clone(),
            potential,
            objects: Vec::new(),
            opposite: false,
        }
    }

    /// The curved algebra (Q, 0, −f) as a one-object category.
    pub fn commutative(potential: &Polynomial<C>) -> Self {
        let ring = potential.ring().clone();
        let mut cat = Self::new(&ring, potential.clone());
        cat.objects.push(Object {
            label: "Q".into(),
            parities: vec![false],
            delta: PolyMatrix::zeros(&ring, 1, 1),
        });
        cat
    }

    /// End(X) for a single factorization.
    pub fn endomorphisms(x: &MatrixFactorization<C>) -> Self {
        let mut cat = Self::new(x.ring(), x.potential().clone());
        cat.add_mf("X", x);
        cat
    }

    pub fn add_object(&mut self, label: &str, parities: Vec<bool>, delta: PolyMatrix<C>) -> Result<usize> {
        let n = parities.len();
        if delta.rows() != n || delta.cols() != n {
            return Err(Error::DimensionMismatch("δ must be square".into()));
        }
        if !is_homogeneous(&delta, &parities, &parities, true) {
            return Err(Error::ConnectionMismatch(format!("δ of {} is not odd", label)));
        }
        self.objects.push(Object {
            label: label.to_string(),
            parities,
            delta,
        });
        Ok(self.objects.len() - 1)
    }

    pub fn add_mf(&mut self, label: &str, x: &MatrixFactorization<C>) -> usize {
        self.add_object(label, x.parities(), x.delta())
            .expect("factorizations have odd differentials")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn potential(&self) -> &Polynomial<C> {
        &self.potential
    }

    pub fn objects(&self) -> &[Object<C>] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Object<C> {
        &self.objects[i]
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn opposite(&self) -> Self {
        MatCategory {
            opposite: !self.opposite,
            ..self.clone()
        }
    }

    /// Objects indexing the rows and the columns of an arrow's matrix.
    fn matrix_objects(&self, src: usize, tgt: usize) -> (usize, usize) {
        if self.opposite {
            (src, tgt)
        } else {
            (tgt, src)
        }
    }

    /// Split a matrix into its even and odd homogeneous arrows.
    pub fn arrows(&self, src: usize, tgt: usize, m: &PolyMatrix<C>) -> Result<Vec<Arrow<C>>> {
        let (ro, co) = self.matrix_objects(src, tgt);
        let (rp, cp) = (&self.objects[ro].parities, &self.objects[co].parities);
        if m.rows() != rp.len() || m.cols() != cp.len() {
            return Err(Error::DimensionMismatch("arrow matrix shape".into()));
        }
        let mut out = Vec::new();
        for odd in [false, true] {
            let part = PolyMatrix::from_fn(&self.ring, m.rows(), m.cols(), |i, j| {
                if rp[i] ^ cp[j] == odd {
                    m.get(i, j).clone()
                } else {
                    Polynomial::zero(&self.ring)
                }
            });
            if !part.is_zero() {
                out.push(Arrow {
                    src,
                    tgt,
                    odd,
                    matrix: part,
                });
            }
        }
        Ok(out)
    }

    /// A homogeneous arrow; fails if the matrix mixes parities.
    pub fn arrow(&self, src: usize, tgt: usize, m: &PolyMatrix<C>) -> Result<Arrow<C>> {
        let mut parts = self.arrows(src, tgt, m)?;
        match parts.len() {
            0 => Ok(Arrow {
                    src,
                    tgt,
                    odd: false,
                matrix: m.clone(),
            }),
            1 => Ok(parts.pop().unwrap()),
            _ => Err(Error::ConnectionMismatch("arrow is not homogeneous".into())),
        }
    }

    pub fn identity(&self, obj: usize) -> Arrow<C> {
        Arrow {
            src: obj,
            tgt: obj,
            odd: false,
            matrix: PolyMatrix::identity(&self.ring, self.objects[obj].dim()),
        }
    }

    /// A polynomial as an element of the one-object commutative category.
    pub fn scalar(&self, p: &Polynomial<C>) -> Arrow<C> {
        Arrow {
            src: 0,
            tgt: 0,
            odd: false,
            matrix: PolyMatrix::scalar(&self.ring, self.objects[0].dim(), p),
        }
    }

    /// a ∘ b
    pub fn compose(&self, a: &Arrow<C>, b: &Arrow<C>) -> Result<Arrow<C>> {
        if b.tgt != a.src {
            return Err(Error::NonComposable(format!(
                "{} -> {} after {} -> {}",
                a.src, a.tgt, b.src, b.tgt
            )));
        }
        let matrix = if self.opposite {
            let m = b.matrix.checked_mul(&a.matrix)?;
            if a.odd && b.odd {
                m.neg()
            } else {
                m
            }
        } else {
            a.matrix.checked_mul(&b.matrix)?
        };
        Ok(Arrow {
            src: b.src,
            tgt: a.tgt,
            odd: a.odd ^ b.odd,
            matrix,
        })
    }

    pub fn diff(&self, a: &Arrow<C>) -> Arrow<C> {
        let (ro, co) = self.matrix_objects(a.src, a.tgt);
        let left = self.objects[ro].delta.checked_mul(&a.matrix).expect("shape");
        let right = a.matrix.checked_mul(&self.objects[co].delta).expect("shape");
        let matrix = if a.odd {
            left.checked_add(&right)
        } else {
            left.checked_sub(&right)
        }
        .expect("shape");
        Arrow {
            src: a.src,
            tgt: a.tgt,
            odd: !a.odd,
            matrix,
        }
    }

    pub fn curvature(&self, obj: usize) -> Arrow<C> {
        let o = &self.objects[obj];
        let sq = o.delta.checked_mul(&o.delta).expect("square");
        let h = sq
            .checked_sub(&PolyMatrix::scalar(&self.ring, o.dim(), &self.potential))
            .expect("square");
        Arrow {
            src: obj,
            tgt: obj,
            odd: false,
            matrix: if self.opposite { h.neg() } else { h },
        }
    }

    /// a∘b = (−1)^{|a||b|} b∘a for two endomorphisms of one object.
    pub fn supercommute(&self, a: &Arrow<C>, b: &Arrow<C>) -> Result<bool> {
        let ab = self.compose(a, b)?;
        let ba = self.compose(b, a)?;
        Ok(if a.odd && b.odd {
            ab.matrix == ba.matrix.neg()
        } else {
            ab.matrix == ba.matrix
        })
    }

    /// 𝒜 ⊗ ℬ over the common ring; object (i, j) has index i·|ℬ| + j.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.opposite || other.opposite {
            return Err(Error::ConnectionMismatch("tensor of opposite categories".into()));
        }
        let mut cat = Self::new(&self.ring, &self.potential + &other.potential);
        for x in &self.objects {
            for y in &other.objects {
                let layout = TensorLayout::new(&x.parities, &y.parities);
                let ix = PolyMatrix::identity(&self.ring, x.dim());
                let iy = PolyMatrix::identity(&self.ring, y.dim());
                let left = kron_graded(&x.delta, &x.parities, &x.parities, &iy, &y.parities, &y.parities, false);
                let right = kron_graded(&ix, &x.parities, &x.parities, &y.delta, &y.parities, &y.parities, true);
                cat.add_object(
                    &format!("{}⊗{}", x.label, y.label),
                    layout.parities,
                    left.checked_add(&right)?,
                )?;
            }
        }
        Ok(cat)
    }

    /// a ⊗ b as an arrow of the tensor category, given the factor categories.
    pub fn tensor_arrow(left: &Self, right: &Self, a: &Arrow<C>, b: &Arrow<C>) -> Arrow<C> {
        let nb = right.objects.len();
        let (xa, xb) = (&left.objects[a.src].parities, &left.objects[a.tgt].parities);
        let (ya, yb) = (&right.objects[b.src].parities, &right.objects[b.tgt].parities);
        Arrow {
            src: a.src * nb + b.src,
            tgt: a.tgt * nb + b.tgt,
            odd: a.odd ^ b.odd,
            matrix: kron_graded(&a.matrix, xb, xa, &b.matrix, yb, ya, b.odd),
        }
    }
}

pub(crate) fn is_homogeneous<C: Field>(m: &PolyMatrix<C>, rp: &[bool], cp: &[bool], odd: bool) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j).is_zero() || (rp[i] ^ cp[j]) == odd))
}
