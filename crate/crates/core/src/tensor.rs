//! Total tensor complexes `M ⊗_E U` of a complex of right `E`-modules with a
//! complex of `E`-`A`-bimodules, for ordinary algebras `E` and `A`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complex::{CohomologySpace, Complex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Vector};
use crate::module::Module;

/// A complex of right `A`-modules with a compatible left `E`-action on each term.
///
/// `left[k][b]` is the matrix of `u ↦ b·u` on the `k`-th term, so that
/// `left[bc] = left[b] left[c]`.
#[derive(Clone, Debug)]
pub struct BimoduleComplex {
    left_algebra: Arc<Algebra>,
    complex: Complex,
    left: Vec<Vec<Matrix>>,
}

impl BimoduleComplex {
    pub fn new(left_algebra: Arc<Algebra>, complex: Complex, left: Vec<Vec<Matrix>>) -> Result<Self> {
        let e = &left_algebra;
        let a = complex.algebra().clone();
        if left.len() != complex.terms().len() {
            return Err(Error::InvalidModule("one left action per term is required".into()));
        }
        for (k, (m, l)) in complex.terms().iter().zip(&left).enumerate() {
            let deg = complex.lo() + k as i32;
            if l.len() != e.dim() || l.iter().any(|x| x.rows() != m.dim() || x.cols() != m.dim()) {
                return Err(Error::InvalidModule(format!("left action in degree {deg} has the wrong shape")));
            }
            let unit = act(e, l, e.unit());
            if unit != Matrix::identity(e.field(), m.dim()) {
                return Err(Error::InvalidModule(format!("unit does not act as the identity in degree {deg}")));
            }
            for &b in e.generators() {
                for c in 0..e.dim() {
                    if act(e, l, &e.mul(&e.basis_vector(b), &e.basis_vector(c))) != l[b].mul(&l[c]) {
                        return Err(Error::InvalidModule(format!("left action in degree {deg} is not associative")));
                    }
                }
                for &g in a.generators() {
                    if l[b].mul(&m.action()[g]) != m.action()[g].mul(&l[b]) {
                        return Err(Error::InvalidModule(format!("left and right actions do not commute in degree {deg}")));
                    }
                }
                if deg < complex.hi() {
                    let next = &left[k + 1][b];
                    if complex.diff(deg).mul(&l[b]) != next.mul(&complex.diff(deg)) {
                        return Err(Error::InvalidModule(format!("differential in degree {deg} is not left linear")));
                    }
                }
            }
        }
        Ok(BimoduleComplex { left_algebra, complex, left })
    }

    /// `E` as an `E`-`E`-bimodule in degree 0.
    pub fn regular(e: Arc<Algebra>) -> Self {
        let m = Module::regular(&e);
        let left = (0..e.dim()).map(|b| e.left_mul_matrix(&e.basis_vector(b))).collect();
        let c = Complex::concentrated(e.clone(), m, 0);
        BimoduleComplex::new(e, c, vec![left]).expect("regular bimodule")
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left_algebra
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    /// Left action matrices on the term in degree `n` (empty outside the stored range).
    pub fn left(&self, n: i32) -> Option<&[Matrix]> {
        let k = n - self.complex.lo();
        (k >= 0 && (k as usize) < self.left.len()).then(|| self.left[k as usize].as_slice())
    }
}

fn act(alg: &Algebra, mats: &[Matrix], x: &[crate::Scalar]) -> Matrix {
    let mut out = Matrix::zeros(alg.field(), mats[0].rows(), mats[0].cols());
    for (c, m) in x.iter().zip(mats) {
        if !c.is_zero() {
            out.add_scaled(c, m);
        }
    }
    out
}

/// One summand `M^i ⊗_E U^{n-i}` of a graded piece of the tensor complex.
#[derive(Clone, Debug)]
pub struct TensorBlock {
    pub left_degree: i32,
    pub offset: usize,
    left_dim: usize,
    right_dim: usize,
    quotient: CohomologySpace,
}

impl TensorBlock {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Basis element `k` is the class of the pure tensor `m_s ⊗ u_t`; returns `(s, t)`.
    pub fn pure_tensor(&self, k: usize) -> (usize, usize) {
        let rep = self.quotient.rep(k);
        let idx = rep.iter().position(|x| !x.is_zero()).expect("nonzero representative");
        (idx / self.right_dim, idx % self.right_dim)
    }

    /// Coordinates of the class of a vector of `M^i ⊗_k U^j`.
    pub fn class_of(&self, v: &[crate::Scalar]) -> Vector {
        self.quotient.class_of(v)
    }

    pub fn tensor_dims(&self) -> (usize, usize) {
        (self.left_dim, self.right_dim)
    }
}

/// The tensor complex together with its block bookkeeping.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: Complex,
    pub blocks: Vec<(i32, Vec<TensorBlock>)>,
}

impl TensorComplex {
    pub fn blocks(&self, n: i32) -> &[TensorBlock] {
        self.blocks.iter().find(|(d, _)| *d == n).map(|(_, b)| b.as_slice()).unwrap_or(&[])
    }

    /// Matrix of the map out of the tensor complex in degree `n` that sends
    /// the pure tensor `m_s ⊗ u_t` from block `i` to `phi(i, s, t)`.
    pub fn map_from_pure(&self, n: i32, rows: usize, mut phi: impl FnMut(i32, usize, usize) -> Vector) -> Matrix {
        let f = self.complex.field();
        let mut cols = Vec::new();
        for b in self.blocks(n) {
            for k in 0..b.dim() {
                let (s, t) = b.pure_tensor(k);
                cols.push(phi(b.left_degree, s, t));
            }
        }
        Matrix::from_columns(f, rows, &cols)
    }
}

/// `(M ⊗_E U)^n = ⊕_i M^i ⊗_E U^{n-i}` with `d(m⊗u) = dm⊗u + (-1)^i m⊗du`.
pub fn tensor_complex(m: &Complex, u: &BimoduleComplex) -> Result<TensorComplex> {
    let e = u.left_algebra();
    if !m.algebra().same_table(e) {
        return Err(Error::AlgebraMismatch("the right module and the bimodule disagree on the middle algebra".into()));
    }
    let a = u.complex().algebra().clone();
    let f = a.field();
    let uc = u.complex();
    let (Some((ma, mb)), Some((ua, ub))) = (m.support(), uc.support()) else {
        return Ok(TensorComplex { complex: Complex::zero(a), blocks: Vec::new() });
    };
    let (lo, hi) = (ma + ua, mb + ub);
    let mut blocks = Vec::new();
    for n in lo..=hi {
        let mut bs = Vec::new();
        let mut offset = 0;
        for i in ma..=mb {
            let j = n - i;
            let (dm, du) = (m.dim(i), uc.dim(j));
            if dm == 0 || du == 0 {
                continue;
            }
            let q = balanced_quotient(f, e, m.term(i), u.left(j).unwrap());
            if q.dim() == 0 {
                continue;
            }
            let block = TensorBlock { left_degree: i, offset, left_dim: dm, right_dim: du, quotient: q };
            offset += block.dim();
            bs.push(block);
        }
        blocks.push((n, bs));
    }
    let tc = TensorComplex { complex: Complex::zero(a.clone()), blocks };
    let dims: Vec<usize> = (lo..=hi).map(|n| tc.blocks(n).iter().map(TensorBlock::dim).sum()).collect();

    let terms: Vec<Module> = (lo..=hi)
        .map(|n| {
            let dim = dims[(n - lo) as usize];
            let action = (0..a.dim())
                .map(|x| {
                    tc.map_from_pure(n, dim, |i, s, t| {
                        let b = tc.blocks(n).iter().find(|b| b.left_degree == i).unwrap();
                        let ux = uc.term(n - i).action()[x].column(t);
                        embed(&tc, b, &crate::matrix::unit_vector(f, b.left_dim, s), &ux, dim)
                    })
                })
                .collect();
            Module::new(&a, dim, action).expect("tensor product inherits the right action")
        })
        .collect();
    let diffs: Vec<Matrix> = (lo..hi)
        .map(|n| {
            let dim = dims[(n + 1 - lo) as usize];
            tc.map_from_pure(n, dim, |i, s, t| {
                let j = n - i;
                let mut out = vec![f.zero(); dim];
                let ms = crate::matrix::unit_vector(f, m.dim(i), s);
                let ut = crate::matrix::unit_vector(f, uc.dim(j), t);
                if let Some(b) = tc.blocks(n + 1).iter().find(|b| b.left_degree == i + 1) {
                    let v = embed(&tc, b, &m.diff(i).mul_vec(&ms), &ut, dim);
                    crate::matrix::axpy(f, &mut out, &f.one(), &v);
                }
                if let Some(b) = tc.blocks(n + 1).iter().find(|b| b.left_degree == i) {
                    let v = embed(&tc, b, &ms, &uc.diff(j).mul_vec(&ut), dim);
                    crate::matrix::axpy(f, &mut out, &f.sign(i as i64), &v);
                }
                out
            })
        })
        .collect();
    let complex = Complex::new(a, lo, terms, diffs)?;
    Ok(TensorComplex { complex, blocks: tc.blocks })
}

/// The class of `x ⊗ y` placed in a graded piece of total dimension `dim`.
fn embed(tc: &TensorComplex, b: &TensorBlock, x: &[crate::Scalar], y: &[crate::Scalar], dim: usize) -> Vector {
    let f = tc.complex.field();
    let mut v = Vec::with_capacity(x.len() * y.len());
    for p in x {
        for q in y {
            v.push(f.mul(p, q));
        }
    }
    let mut out = vec![f.zero(); dim];
    for (k, c) in b.class_of(&v).into_iter().enumerate() {
        out[b.offset + k] = c;
    }
    out
}

/// `M ⊗_k U` modulo the span of `m·b ⊗ u - m ⊗ b·u` over generators `b`.
fn balanced_quotient(f: Field, e: &Algebra, m: &Module, left: &[Matrix]) -> CohomologySpace {
    let (dm, du) = (m.dim(), left[0].rows());
    let amb = dm * du;
    let mut rels = Vec::new();
    for &b in e.generators() {
        let r = m.action()[b].kron(&Matrix::identity(f, du)).sub(&Matrix::identity(f, dm).kron(&left[b]));
        rels.push(r);
    }
    let refs: Vec<&Matrix> = rels.iter().collect();
    let span = Matrix::hstack(f, amb, &refs);
    CohomologySpace::new(f, amb, &span, &Matrix::zeros(f, 0, amb))
}
