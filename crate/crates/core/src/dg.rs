//! Finite-dimensional dg-algebras and dg-modules, the dg-endomorphism algebra
//! of a complex of projectives, its cohomology and smart truncation.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complex::{CohomologySpace, Complex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hom::{hom_complex, GradedHom};
use crate::matrix::{axpy, unit_vector, ColumnBasis, Matrix, Vector};
use crate::module::Module;

/// A dg-algebra with a global basis ordered by degree.
///
/// `products[x * total + y]` holds the coordinates of `x y` in the piece of
/// degree `|x| + |y|` (empty when that piece is outside the support).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebra {
    field: Field,
    lo: i32,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    degrees: Vec<i32>,
    products: Vec<Vector>,
    diffs: Vec<Matrix>,
    unit: Vector,
}

impl DgAlgebra {
    /// `diffs[k]` maps the piece of degree `lo + k` to the next one.
    pub fn new(field: Field, lo: i32, dims: Vec<usize>, products: Vec<Vector>, diffs: Vec<Matrix>, unit: Vector) -> Result<Self> {
        let hi = lo + dims.len() as i32 - 1;
        if lo > 0 || hi < 0 {
            return Err(Error::Dimension("the support of a dg-algebra must contain degree 0".into()));
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut degrees = Vec::new();
        let mut total = 0;
        for (k, &d) in dims.iter().enumerate() {
            offsets.push(total);
            total += d;
            degrees.extend(std::iter::repeat(lo + k as i32).take(d));
        }
        if products.len() != total * total {
            return Err(Error::Dimension(format!("expected {} products, got {}", total * total, products.len())));
        }
        if diffs.len() != dims.len() - 1 {
            return Err(Error::Dimension("one differential per adjacent pair of degrees".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(Error::Dimension(format!("differential in degree {} has the wrong shape", lo + k as i32)));
            }
        }
        let b = DgAlgebra { field, lo, dims, offsets, degrees, products, diffs, unit };
        if b.unit.len() != b.dim(0) {
            return Err(Error::Dimension("unit must lie in degree 0".into()));
        }
        for x in 0..total {
            for y in 0..total {
                let n = b.degrees[x] + b.degrees[y];
                if b.products[x * total + y].len() != b.dim(n) {
                    return Err(Error::Dimension(format!("product of basis elements {x} and {y} has the wrong length")));
                }
            }
        }
        Ok(b)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            return 0;
        }
        self.dims[(n - self.lo) as usize]
    }

    /// `(degree, dim)` over the stored range.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi()).map(|n| (n, self.dim(n))).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.len()
    }

    /// Global index of the `k`-th basis element of degree `n`.
    pub fn global(&self, n: i32, k: usize) -> usize {
        debug_assert!(k < self.dim(n));
        self.offsets[(n - self.lo) as usize] + k
    }

    pub fn degree_of(&self, x: usize) -> i32 {
        self.degrees[x]
    }

    /// Position of a global basis element within its degree.
    pub fn local(&self, x: usize) -> usize {
        x - self.offsets[(self.degrees[x] - self.lo) as usize]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_product(&self, x: usize, y: usize) -> &[Scalar] {
        &self.products[x * self.total_dim() + y]
    }

    /// `a b` for `a ∈ B^n`, `b ∈ B^m`.
    pub fn mul(&self, n: i32, a: &[Scalar], m: i32, b: &[Scalar]) -> Vector {
        let f = self.field;
        let mut out = vec![f.zero(); self.dim(n + m)];
        if out.is_empty() {
            return out;
        }
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let p = self.basis_product(self.global(n, i), self.global(m, j));
                axpy(f, &mut out, &f.mul(ai, bj), p);
            }
        }
        out
    }

    /// `d^n: B^n -> B^{n+1}`.
    pub fn diff(&self, n: i32) -> Matrix {
        if n >= self.lo && n < self.hi() {
            return self.diffs[(n - self.lo) as usize].clone();
        }
        Matrix::zeros(self.field, self.dim(n + 1), self.dim(n))
    }

    pub fn basis_vector(&self, x: usize) -> Vector {
        let n = self.degrees[x];
        unit_vector(self.field, self.dim(n), self.local(x))
    }

    pub fn cohomology_space(&self, n: i32) -> CohomologySpace {
        CohomologySpace::new(self.field, self.dim(n), &self.diff(n - 1), &self.diff(n))
    }

    pub fn is_non_positive(&self) -> bool {
        (1..=self.hi()).all(|n| self.dim(n) == 0)
    }

    /// Checks `d² = 0`, the unit, associativity and the graded Leibniz rule on basis elements.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let f = self.field;
        for n in self.lo..self.hi() {
            if !self.diff(n + 1).mul(&self.diff(n)).is_zero() {
                return Err(format!("d^2 is not zero in degree {n}"));
            }
        }
        if self.diff(0).mul_vec(&self.unit).iter().any(|x| !x.is_zero()) {
            return Err("the unit is not a cocycle".into());
        }
        let total = self.total_dim();
        for x in 0..total {
            let (n, ex) = (self.degrees[x], self.basis_vector(x));
            if self.mul(0, &self.unit, n, &ex) != ex || self.mul(n, &ex, 0, &self.unit) != ex {
                return Err(format!("the unit does not act as the identity on basis element {x}"));
            }
        }
        for x in 0..total {
            let (n, ex) = (self.degrees[x], self.basis_vector(x));
            let dx = self.diff(n).mul_vec(&ex);
            for y in 0..total {
                let (m, ey) = (self.degrees[y], self.basis_vector(y));
                let xy = self.basis_product(x, y).to_vec();
                let lhs = self.diff(n + m).mul_vec(&xy);
                let dy = self.diff(m).mul_vec(&ey);
                let mut rhs = self.mul(n + 1, &dx, m, &ey);
                let s = f.sign(n as i64);
                axpy(f, &mut rhs, &s, &self.mul(n, &ex, m + 1, &dy));
                if lhs != rhs {
                    return Err(format!("Leibniz rule fails on basis elements {x}, {y}"));
                }
                for z in 0..total {
                    let (p, ez) = (self.degrees[z], self.basis_vector(z));
                    let left = self.mul(n + m, &xy, p, &ez);
                    let yz = self.basis_product(y, z).to_vec();
                    let right = self.mul(n, &ex, m + p, &yz);
                    if left != right {
                        return Err(format!("associativity fails on basis elements {x}, {y}, {z}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `dim H^n(B)`.
pub fn dg_cohomology(b: &DgAlgebra, n: i32) -> usize {
    b.cohomology_space(n).dim()
}

/// `H^0(B)` as an ordinary algebra, with the cocycles representing its basis.
#[derive(Clone, Debug)]
pub struct H0 {
    pub algebra: Arc<Algebra>,
    pub space: CohomologySpace,
}

impl H0 {
    /// Representative in `B^0` of the `k`-th basis element.
    pub fn rep(&self, k: usize) -> Vector {
        self.space.rep(k)
    }
}

/// `Z^0(B) / B^0(B)` with the induced multiplication.
pub fn h0_algebra(b: &DgAlgebra) -> Result<H0> {
    let f = b.field();
    let space = b.cohomology_space(0);
    let d = space.dim();
    if d == 0 || space.is_boundary(b.unit()) {
        return Err(Error::Degenerate("H^0 of the dg-algebra is zero".into()));
    }
    let mut products = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            products.push(space.class_of(&b.mul(0, &space.rep(i), 0, &space.rep(j))));
        }
    }
    let unit = space.class_of(b.unit());
    let labels = (0..d).map(|k| format!("h{k}")).collect();
    let algebra = Algebra::new(f, labels, products, unit.clone(), vec![unit], None)?;
    Ok(H0 { algebra: Arc::new(algebra), space })
}

/// Opposite dg-algebra with `a * b = (-1)^{|a||b|} b a`.
pub fn opposite_dg(b: &DgAlgebra) -> DgAlgebra {
    let f = b.field;
    let total = b.total_dim();
    let mut products = Vec::with_capacity(total * total);
    for x in 0..total {
        for y in 0..total {
            let s = f.sign((b.degrees[x] as i64) * (b.degrees[y] as i64));
            let p: Vector = b.basis_product(y, x).iter().map(|c| f.mul(&s, c)).collect();
            products.push(p);
        }
    }
    DgAlgebra::new(f, b.lo, b.dims.clone(), products, b.diffs.clone(), b.unit.clone()).expect("opposite of a dg-algebra")
}

/// The smart truncation `τ≤0 B` and its inclusion into `B`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub algebra: Arc<DgAlgebra>,
    /// `inclusion[k]` maps `τB^{lo+k}` into `B^{lo+k}`.
    pub inclusion: Vec<Matrix>,
}

impl Truncation {
    pub fn inclusion(&self, n: i32) -> Matrix {
        let a = &self.algebra;
        if n < a.lo() || n > 0 {
            return Matrix::zeros(a.field(), 0, 0);
        }
        self.inclusion[(n - a.lo()) as usize].clone()
    }
}

/// Keeps negative degrees, replaces degree 0 by the cocycles, drops positive degrees.
pub fn smart_truncate(b: &DgAlgebra) -> Truncation {
    let f = b.field;
    let lo = b.lo;
    let z0 = b.diff(0).kernel_basis();
    let z0_solver = ColumnBasis::new(z0.clone());
    let inclusion: Vec<Matrix> = (lo..=0).map(|n| if n == 0 { z0.clone() } else { Matrix::identity(f, b.dim(n)) }).collect();
    let dims: Vec<usize> = inclusion.iter().map(Matrix::cols).collect();
    let to_local = |n: i32, v: &[Scalar]| -> Vector {
        if n == 0 {
            z0_solver.coords(v).expect("degree-0 products of cocycles are cocycles")
        } else {
            v.to_vec()
        }
    };
    let mut basis: Vec<(i32, Vector)> = Vec::new();
    for (k, inc) in inclusion.iter().enumerate() {
        for c in inc.columns() {
            basis.push((lo + k as i32, c));
        }
    }
    let mut products = Vec::with_capacity(basis.len() * basis.len());
    for (n, x) in &basis {
        for (m, y) in &basis {
            let p = b.mul(*n, x, *m, y);
            products.push(if n + m < lo { Vec::new() } else { to_local(n + m, &p) });
        }
    }
    let diffs: Vec<Matrix> = (lo..0)
        .map(|n| {
            let d = b.diff(n);
            if n == -1 {
                let cols: Vec<Vector> = d.columns().iter().map(|c| to_local(0, c)).collect();
                Matrix::from_columns(f, dims[(-lo) as usize], &cols)
            } else {
                d
            }
        })
        .collect();
    let unit = to_local(0, b.unit());
    let algebra = DgAlgebra::new(f, lo, dims, products, diffs, unit).expect("smart truncation");
    Truncation { algebra: Arc::new(algebra), inclusion }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Per-degree right `A`-modules commuting with the `B`-action and the differential.
#[derive(Clone, Debug)]
pub struct Outer {
    pub algebra: Arc<Algebra>,
    pub terms: Vec<Module>,
}

/// A dg-module over a [`DgAlgebra`].
///
/// `action[b][m - lo]` is the matrix of `x ↦ x·b` (right) or `x ↦ b·x`
/// (left) from degree `m` to degree `m + |b|`.
#[derive(Clone, Debug)]
pub struct DgModule {
    algebra: Arc<DgAlgebra>,
    side: Side,
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
    action: Vec<Vec<Matrix>>,
    outer: Option<Outer>,
}

impl DgModule {
    pub fn new(
        algebra: Arc<DgAlgebra>,
        side: Side,
        lo: i32,
        dims: Vec<usize>,
        diffs: Vec<Matrix>,
        action: Vec<Vec<Matrix>>,
        outer: Option<Outer>,
    ) -> Result<Self> {
        if diffs.len() != dims.len().saturating_sub(1) || action.len() != algebra.total_dim() {
            return Err(Error::Dimension("dg-module data has the wrong length".into()));
        }
        if let Some(o) = &outer {
            if o.terms.len() != dims.len() || o.terms.iter().zip(&dims).any(|(t, &d)| t.dim() != d) {
                return Err(Error::Dimension("outer modules must match the graded dimensions".into()));
            }
        }
        let m = DgModule { algebra, side, lo, dims, diffs, action, outer };
        for (b, per) in m.action.iter().enumerate() {
            if per.len() != m.dims.len() {
                return Err(Error::Dimension(format!("action of basis element {b} has the wrong length")));
            }
            let p = m.algebra.degree_of(b);
            for (k, a) in per.iter().enumerate() {
                let d = m.lo + k as i32;
                if a.cols() != m.dim(d) || a.rows() != m.dim(d + p) {
                    return Err(Error::Dimension(format!("action of basis element {b} in degree {d} has the wrong shape")));
                }
            }
        }
        Ok(m)
    }

    /// The zero module.
    pub fn zero(algebra: Arc<DgAlgebra>, side: Side) -> Self {
        let action = vec![Vec::new(); algebra.total_dim()];
        DgModule { algebra, side, lo: 0, dims: Vec::new(), diffs: Vec::new(), action, outer: None }
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn support(&self) -> Option<(i32, i32)> {
        let a = self.dims.iter().position(|&d| d > 0)?;
        let b = self.dims.iter().rposition(|&d| d > 0)?;
        Some((self.lo + a as i32, self.lo + b as i32))
    }

    pub fn dim(&self, m: i32) -> usize {
        if m < self.lo || m > self.hi() {
            return 0;
        }
        self.dims[(m - self.lo) as usize]
    }

    pub fn dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi()).map(|n| (n, self.dim(n))).collect()
    }

    pub fn outer(&self) -> Option<&Outer> {
        self.outer.as_ref()
    }

    /// The outer module in degree `m`.
    pub fn outer_term(&self, m: i32) -> Option<Module> {
        let o = self.outer.as_ref()?;
        if m < self.lo || m > self.hi() {
            return Some(Module::zero(&o.algebra));
        }
        Some(o.terms[(m - self.lo) as usize].clone())
    }

    pub fn diff(&self, m: i32) -> Matrix {
        if m >= self.lo && m < self.hi() {
            return self.diffs[(m - self.lo) as usize].clone();
        }
        Matrix::zeros(self.field(), self.dim(m + 1), self.dim(m))
    }

    /// Action of a basis element on degree `m`.
    pub fn act_basis(&self, b: usize, m: i32) -> Matrix {
        let p = self.algebra.degree_of(b);
        if m < self.lo || m > self.hi() {
            return Matrix::zeros(self.field(), self.dim(m + p), self.dim(m));
        }
        self.action[b][(m - self.lo) as usize].clone()
    }

    /// Action of `c ∈ B^p` on degree `m`.
    pub fn act(&self, p: i32, c: &[Scalar], m: i32) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim(m + p), self.dim(m));
        if m < self.lo || m > self.hi() {
            return out;
        }
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                out.add_scaled(ck, &self.action[self.algebra.global(p, k)][(m - self.lo) as usize]);
            }
        }
        out
    }

    pub fn cohomology_space(&self, m: i32) -> CohomologySpace {
        CohomologySpace::new(self.field(), self.dim(m), &self.diff(m - 1), &self.diff(m))
    }

    pub fn cohomology_dim(&self, m: i32) -> usize {
        self.cohomology_space(m).dim()
    }

    /// `H^m` as a right module over `H^0(B)`; the module must be a right module.
    pub fn h0_right_module(&self, m: i32, h0: &H0) -> Result<Module> {
        if self.side != Side::Right {
            return Err(Error::Precondition("expected a right dg-module".into()));
        }
        let (cols, dim) = self.h0_action(m, h0);
        Module::new(&h0.algebra, dim, cols)
    }

    /// Left action matrices of `H^0(B)` on `H^m`; the module must be a left module.
    pub fn h0_left_action(&self, m: i32, h0: &H0) -> Result<Vec<Matrix>> {
        if self.side != Side::Left {
            return Err(Error::Precondition("expected a left dg-module".into()));
        }
        Ok(self.h0_action(m, h0).0)
    }

    fn h0_action(&self, m: i32, h0: &H0) -> (Vec<Matrix>, usize) {
        let f = self.field();
        let h = self.cohomology_space(m);
        let mats = (0..h0.algebra.dim())
            .map(|k| {
                let a = self.act(0, &h0.rep(k), m);
                let cols: Vec<Vector> = (0..h.dim()).map(|l| h.class_of(&a.mul_vec(&h.rep(l)))).collect();
                Matrix::from_columns(f, h.dim(), &cols)
            })
            .collect();
        (mats, h.dim())
    }

    /// `H^m` as a right module over the outer algebra.
    pub fn outer_cohomology(&self, m: i32) -> Option<Module> {
        let o = self.outer.as_ref()?;
        let t = self.outer_term(m)?;
        let f = self.field();
        let h = self.cohomology_space(m);
        let action = (0..o.algebra.dim())
            .map(|x| {
                let cols: Vec<Vector> = (0..h.dim()).map(|l| h.class_of(&t.action()[x].mul_vec(&h.rep(l)))).collect();
                Matrix::from_columns(f, h.dim(), &cols)
            })
            .collect();
        Some(Module::new(&o.algebra, h.dim(), action).expect("cohomology inherits the outer action"))
    }

    /// Restriction of scalars along a truncation `τB -> B`.
    pub fn restrict(&self, t: &Truncation) -> Result<DgModule> {
        let tb = &t.algebra;
        if tb.total_dim() > 0 && t.inclusion.len() as i32 != 1 - tb.lo() {
            return Err(Error::Dimension("truncation data is inconsistent".into()));
        }
        let action = (0..tb.total_dim())
            .map(|x| {
                let p = tb.degree_of(x);
                let img = t.inclusion(p).column(tb.local(x));
                (self.lo..=self.hi()).map(|m| self.act(p, &img, m)).collect()
            })
            .collect();
        DgModule::new(tb.clone(), self.side, self.lo, self.dims.clone(), self.diffs.clone(), action, self.outer.clone())
    }

    /// Checks `d² = 0`, the unit, associativity, the graded Leibniz rule
    /// and compatibility with the outer action.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let f = self.field();
        let b = &self.algebra;
        for m in self.lo..self.hi() {
            if !self.diff(m + 1).mul(&self.diff(m)).is_zero() {
                return Err(format!("d^2 is not zero in degree {m}"));
            }
        }
        for m in self.lo..=self.hi() {
            if self.act(0, b.unit(), m) != Matrix::identity(f, self.dim(m)) {
                return Err(format!("the unit does not act as the identity in degree {m}"));
            }
        }
        let total = b.total_dim();
        for x in 0..total {
            let p = b.degree_of(x);
            let dx = b.diff(p).mul_vec(&b.basis_vector(x));
            for m in self.lo..=self.hi() {
                let ax = self.act_basis(x, m);
                let lhs = self.diff(m + p).mul(&ax);
                let rhs = match self.side {
                    Side::Right => self.act_basis(x, m + 1).mul(&self.diff(m)).add(&self.act(p + 1, &dx, m).scale(&f.sign(m as i64))),
                    Side::Left => self.act(p + 1, &dx, m).add(&self.act_basis(x, m + 1).mul(&self.diff(m)).scale(&f.sign(p as i64))),
                };
                if lhs != rhs {
                    return Err(format!("Leibniz rule fails for basis element {x} in degree {m}"));
                }
                for y in 0..total {
                    let q = b.degree_of(y);
                    let ay = self.act_basis(y, m);
                    let (first, then, prod) = match self.side {
                        Side::Right => (ax.clone(), self.act_basis(y, m + p), b.basis_product(x, y).to_vec()),
                        Side::Left => (ay.clone(), self.act_basis(x, m + q), b.basis_product(x, y).to_vec()),
                    };
                    if then.mul(&first) != self.act(p + q, &prod, m) {
                        return Err(format!("associativity fails for basis elements {x}, {y} in degree {m}"));
                    }
                }
            }
        }
        if let Some(o) = &self.outer {
            let a = &o.algebra;
            for m in self.lo..=self.hi() {
                let src = self.outer_term(m).unwrap();
                if m < self.hi() && !src.is_module_map(a, &self.outer_term(m + 1).unwrap(), &self.diff(m)) {
                    return Err(format!("differential in degree {m} is not linear for the outer action"));
                }
                for x in 0..total {
                    let tgt = self.outer_term(m + b.degree_of(x)).unwrap();
                    if !src.is_module_map(a, &tgt, &self.act_basis(x, m)) {
                        return Err(format!("basis element {x} does not commute with the outer action in degree {m}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Converts a left `B`-module into a right `B^op`-module via `x * b = (-1)^{|x||b|} b x`.
pub fn side_swap(m: &DgModule) -> Result<DgModule> {
    if m.side != Side::Left {
        return Err(Error::Precondition("side_swap expects a left dg-module".into()));
    }
    let f = m.field();
    let op = Arc::new(opposite_dg(&m.algebra));
    let action = (0..op.total_dim())
        .map(|x| {
            let p = op.degree_of(x) as i64;
            (m.lo..=m.hi()).map(|d| m.act_basis(x, d).scale(&f.sign(p * d as i64))).collect()
        })
        .collect();
    DgModule::new(op, Side::Right, m.lo, m.dims.clone(), m.diffs.clone(), action, m.outer.clone())
}

/// `B = DgEnd_A(U)` together with the graded Hom complex it is built from.
#[derive(Clone, Debug)]
pub struct DgEnd {
    pub algebra: Arc<DgAlgebra>,
    pub graded: GradedHom,
}

impl DgEnd {
    pub fn complex(&self) -> &Complex {
        self.graded.source()
    }
}

/// `DgEnd_A(U)` with multiplication `(fg)_j = f_{n+j} g_j`.
pub fn dg_end(u: &Complex) -> Result<DgEnd> {
    if let Some(d) = u.first_non_projective() {
        return Err(Error::NotProjective(d));
    }
    if u.is_zero() {
        return Err(Error::Degenerate("the endomorphism algebra of the zero complex is zero".into()));
    }
    let f = u.field();
    let g = hom_complex(u, u);
    let (lo, hi) = (g.lo(), g.hi());
    let dims: Vec<usize> = (lo..=hi).map(|n| g.dim(n)).collect();
    let basis: Vec<(i32, Vector)> = (lo..=hi)
        .flat_map(|n| {
            let d = g.dim(n);
            (0..d).map(move |k| (n, unit_vector(f, d, k)))
        })
        .collect();
    let mut products = Vec::with_capacity(basis.len() * basis.len());
    for (n, x) in &basis {
        for (m, y) in &basis {
            products.push(if n + m < lo || n + m > hi { Vec::new() } else { g.compose(&g, *n, x, &g, *m, y) });
        }
    }
    let diffs = (lo..hi).map(|n| g.diff(n)).collect();
    let unit = g.coords_of(0, |i| Matrix::identity(f, u.dim(i)));
    let algebra = DgAlgebra::new(f, lo, dims, products, diffs, unit)?;
    Ok(DgEnd { algebra: Arc::new(algebra), graded: g })
}

/// `Hom•_A(U, X)` as a right dg-module over `DgEnd(U)` with `f·b = f ∘ b`.
pub fn dg_hom_module(end: &DgEnd, x: &Complex) -> Result<DgModule> {
    let u = end.complex();
    if !u.algebra().same_table(x.algebra()) {
        return Err(Error::AlgebraMismatch("U and X live over different algebras".into()));
    }
    let f = u.field();
    let b = &end.algebra;
    let h = hom_complex(u, x);
    if h.hi() < h.lo() {
        return Ok(DgModule::zero(b.clone(), Side::Right));
    }
    let (lo, hi) = (h.lo(), h.hi());
    let dims: Vec<usize> = (lo..=hi).map(|n| h.dim(n)).collect();
    let action = (0..b.total_dim())
        .map(|y| {
            let p = b.degree_of(y);
            let ey = b.basis_vector(y);
            (lo..=hi)
                .map(|m| {
                    let rows = h.dim(m + p);
                    let cols: Vec<Vector> = (0..h.dim(m))
                        .map(|k| {
                            if rows == 0 {
                                Vec::new()
                            } else {
                                h.compose(&h, m, &unit_vector(f, h.dim(m), k), &end.graded, p, &ey)
                            }
                        })
                        .collect();
                    Matrix::from_columns(f, rows, &cols)
                })
                .collect()
        })
        .collect();
    let diffs = (lo..hi).map(|n| h.diff(n)).collect();
    DgModule::new(b.clone(), Side::Right, lo, dims, diffs, action, None)
}

/// `U` as a left dg-module over `DgEnd(U)` via evaluation, keeping its `A`-action.
pub fn dg_left_module(end: &DgEnd) -> DgModule {
    let u = end.complex();
    let b = &end.algebra;
    let (lo, hi) = (u.lo(), u.hi());
    let dims: Vec<usize> = (lo..=hi).map(|n| u.dim(n)).collect();
    let action = (0..b.total_dim())
        .map(|y| {
            let p = b.degree_of(y);
            let ey = b.basis_vector(y);
            (lo..=hi).map(|m| end.graded.component(p, &ey, m)).collect()
        })
        .collect();
    let diffs = (lo..hi).map(|n| u.diff(n)).collect();
    let outer = Outer { algebra: u.algebra().clone(), terms: u.terms().to_vec() };
    DgModule::new(b.clone(), Side::Left, lo, dims, diffs, action, Some(outer)).expect("evaluation module")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::derived_hom_dim;
    use crate::testutil::*;

    /// `P2 ⊕ P1[1]` over `1 -> 2`.
    fn silt2(a: &Arc<Algebra>) -> Complex {
        let p1 = Complex::concentrated(a.clone(), Module::projective(a, 0).unwrap(), 0);
        let p2 = Complex::concentrated(a.clone(), Module::projective(a, 1).unwrap(), 0);
        Complex::direct_sum(a.clone(), &[&p2, &p1.shift(1)])
    }

    /// `P2 -> P1 ⊕ P1`, the inclusion into the second summand.
    fn tilt(a: &Arc<Algebra>) -> Complex {
        let p1 = Module::projective(a, 0).unwrap();
        let p2 = Module::projective(a, 1).unwrap();
        let inc = crate::module::hom_space(a, &p2, &p1).maps()[0].clone();
        let d = Matrix::vstack(a.field(), 1, &[&Matrix::zeros(a.field(), 2, 1), &inc]);
        let sum = Module::direct_sum(a, &[&p1, &p1]);
        Complex::new(a.clone(), -1, vec![p2, sum], vec![d]).unwrap()
    }

    fn componentwise(u: &Complex, n: i32) -> usize {
        let a = u.algebra();
        (u.lo()..=u.hi()).map(|i| crate::module::hom_space(a, u.term(i), u.term(n + i)).dim()).sum()
    }

    #[test]
    fn free_module_endomorphisms() {
        let a = a2();
        let end = dg_end(&Complex::free(a.clone())).unwrap();
        assert_eq!(end.algebra.dims(), vec![(0, 3)]);
        end.algebra.check_invariants().unwrap();
        let h0 = h0_algebra(&end.algebra).unwrap();
        assert_eq!(h0.algebra.dim(), 3);
        // End(A_A) acts by left multiplication, so it is A itself
        assert!(!h0.algebra.is_commutative());
    }

    #[test]
    fn silt2_dimensions() {
        let a = a2();
        let u = silt2(&a);
        let end = dg_end(&u).unwrap();
        let b = &end.algebra;
        b.check_invariants().unwrap();
        for n in -1..=1 {
            assert_eq!(b.dim(n), componentwise(&u, n));
        }
        assert_eq!((b.dim(-1), b.dim(0), b.dim(1)), (1, 2, 0));
        let h: Vec<usize> = (-1..=1).map(|n| dg_cohomology(b, n)).collect();
        assert_eq!(h, vec![1, 2, 0]);
        for n in -2..=2 {
            assert_eq!(dg_cohomology(b, n), derived_hom_dim(&u, &u, n).unwrap());
        }
        let t = smart_truncate(b);
        assert_eq!((t.algebra.lo(), t.algebra.hi()), (-1, 0));
        t.algebra.check_invariants().unwrap();
        for n in -1..=0 {
            assert_eq!(dg_cohomology(&t.algebra, n), dg_cohomology(b, n));
        }
        let op = opposite_dg(b);
        op.check_invariants().unwrap();
        assert_eq!(opposite_dg(&op), **b);
    }

    #[test]
    fn tilt_dimensions() {
        let a = a2();
        let u = tilt(&a);
        let end = dg_end(&u).unwrap();
        let b = &end.algebra;
        b.check_invariants().unwrap();
        assert_eq!((b.dim(-1), b.dim(0), b.dim(1)), (0, 5, 2));
        assert_eq!((dg_cohomology(b, 0), dg_cohomology(b, 1)), (3, 0));
        let t = smart_truncate(b);
        let nonzero: Vec<(i32, usize)> = t.algebra.dims().into_iter().filter(|d| d.1 > 0).collect();
        assert_eq!(nonzero, vec![(0, 3)]);
        let h0 = h0_algebra(b).unwrap();
        assert_eq!(h0.algebra.dim(), 3);
    }

    #[test]
    fn degree_zero_opposite_is_plain_opposite() {
        let a = a2();
        let end = dg_end(&Complex::free(a.clone())).unwrap();
        let op = opposite_dg(&end.algebra);
        let h = h0_algebra(&op).unwrap();
        let plain = h0_algebra(&end.algebra).unwrap().algebra.opposite();
        assert!(h.algebra.same_table(&plain));
    }

    #[test]
    fn hom_module_of_u_is_regular() {
        let a = a2();
        let u = silt2(&a);
        let end = dg_end(&u).unwrap();
        let m = dg_hom_module(&end, &u).unwrap();
        m.check_invariants().unwrap();
        let b = &end.algebra;
        for x in 0..b.total_dim() {
            for y in 0..b.total_dim() {
                let (p, q) = (b.degree_of(x), b.degree_of(y));
                if b.dim(p + q) == 0 {
                    continue;
                }
                let col = m.act_basis(y, p).mul_vec(&b.basis_vector(x));
                assert_eq!(col, b.basis_product(x, y));
            }
        }
    }

    #[test]
    fn hom_module_dims_and_invariants() {
        let a = a2();
        let u = tilt(&a);
        let end = dg_end(&u).unwrap();
        for v in 0..2 {
            let x = Complex::concentrated(a.clone(), Module::simple(&a, v).unwrap(), 0);
            let m = dg_hom_module(&end, &x).unwrap();
            m.check_invariants().unwrap();
            let h = hom_complex(&u, &x);
            for n in -2..=2 {
                assert_eq!(m.dim(n), h.dim(n));
            }
        }
        let zero = dg_hom_module(&end, &Complex::zero(a.clone())).unwrap();
        assert_eq!(zero.support(), None);
    }

    #[test]
    fn left_module_and_swap() {
        let a = a2();
        let u = silt2(&a);
        let end = dg_end(&u).unwrap();
        let l = dg_left_module(&end);
        l.check_invariants().unwrap();
        let t = smart_truncate(&end.algebra);
        let lt = l.restrict(&t).unwrap();
        lt.check_invariants().unwrap();
        let r = side_swap(&lt).unwrap();
        r.check_invariants().unwrap();
        assert_eq!(r.algebra().as_ref(), &opposite_dg(&t.algebra));
    }

    #[test]
    fn zero_complex_is_degenerate() {
        let a = a2();
        assert!(matches!(dg_end(&Complex::zero(a)), Err(Error::Degenerate(_))));
    }
}
