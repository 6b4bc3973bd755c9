//! Finite-dimensional algebras, in particular quotients of path algebras.
//!
//! Paths are composed left to right: for arrows `a: i -> j` and `b: j -> l`
//! the product `a * b` is the path "first `a`, then `b`". With this
//! convention `e_i A` is spanned by the paths starting at `i`, and in a right
//! module an arrow `a: i -> j` carries `M e_i` into `M e_j`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{axpy, is_zero_vector, unit_vector, zero_vector, ColumnBasis, Matrix, Vector};

/// Default cap on the dimension of a path algebra quotient.
pub const DEFAULT_DIMENSION_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of paths, each path a sequence of arrow indices.
pub type Relation = Vec<(Scalar, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

/// A path in the quiver: a trivial path has no arrows and `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Bookkeeping kept for algebras presented by a quiver.
#[derive(Clone, Debug)]
pub struct QuiverData {
    pub presentation: QuiverPresentation,
    /// Basis index of each trivial path `e_v`.
    pub vertex_basis: Vec<usize>,
    /// Basis index of each arrow.
    pub arrow_basis: Vec<usize>,
    /// The surviving path behind each basis element.
    pub paths: Vec<Path>,
}

/// A finite-dimensional associative unital algebra in a fixed basis.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    /// `products[i * dim + j]` holds the coordinates of `b_i b_j`.
    products: Vec<Vector>,
    unit: Vector,
    idempotents: Vec<Vector>,
    /// Basis indices generating the algebra; commuting with their action is
    /// enough for a linear map to be a module map.
    generators: Vec<usize>,
    /// Basis of `e A` for each idempotent `e`, as algebra elements.
    projective_bases: Vec<Vec<Vector>>,
    quiver: Option<QuiverData>,
}

impl Algebra {
    /// Validates associativity, the unit, and the idempotent set.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        products: Vec<Vector>,
        unit: Vector,
        idempotents: Vec<Vector>,
        generators: Option<Vec<usize>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if products.len() != dim * dim || products.iter().any(|p| p.len() != dim) || unit.len() != dim {
            return Err(Error::Dimension("structure constants do not match basis size".into()));
        }
        let mut alg = Algebra {
            field,
            labels,
            products,
            unit,
            idempotents,
            generators: generators.unwrap_or_else(|| (0..dim).collect()),
            projective_bases: Vec::new(),
            quiver: None,
        };
        alg.validate()?;
        alg.projective_bases = alg.idempotents.iter().map(|e| alg.right_ideal_basis(e)).collect();
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let f = self.field;
        let d = self.dim();
        for i in 0..d {
            let bi = unit_vector(f, d, i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::Degenerate("unit is not a two-sided identity".into()));
            }
        }
        if !self.is_associative() {
            return Err(Error::Degenerate("multiplication is not associative".into()));
        }
        let mut sum = zero_vector(f, d);
        for (a, e) in self.idempotents.iter().enumerate() {
            if e.len() != d {
                return Err(Error::Dimension("idempotent has wrong length".into()));
            }
            for (b, e2) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, e2);
                let expected = if a == b { e.clone() } else { zero_vector(f, d) };
                if p != expected {
                    return Err(Error::Degenerate("idempotents are not orthogonal idempotents".into()));
                }
            }
            axpy(f, &mut sum, &f.one(), e);
        }
        if sum != self.unit {
            return Err(Error::Degenerate("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let f = self.field;
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j);
                for k in 0..d {
                    let left = self.mul(ij, &unit_vector(f, d, k));
                    let right = self.mul(&unit_vector(f, d, i), self.product(j, k));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.products[i * self.dim() + j]
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn quiver(&self) -> Option<&QuiverData> {
        self.quiver.as_ref()
    }

    /// Basis of `e_i A` (as algebra elements) for the `i`-th idempotent.
    pub fn projective_basis(&self, i: usize) -> &[Vector] {
        &self.projective_bases[i]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    /// Product of arbitrary elements.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = self.field;
        let d = self.dim();
        let mut out = zero_vector(f, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(f, &mut out, &f.mul(xi, yj), self.product(i, j));
            }
        }
        out
    }

    /// Matrix of `y -> x y`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, d, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, d, &cols)
    }

    fn right_ideal_basis(&self, e: &[Scalar]) -> Vec<Vector> {
        let l = self.left_mul_matrix(e);
        l.independent_columns().into_iter().map(|j| l.column(j)).collect()
    }

    /// Same basis, multiplication `b_i * b_j := b_j b_i`.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let mut products = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                products.push(self.product(j, i).clone());
            }
        }
        let mut op = self.clone();
        op.products = products;
        op.projective_bases = op.idempotents.iter().map(|e| op.right_ideal_basis(e)).collect();
        if let Some(q) = op.quiver.as_mut() {
            q.presentation = q.presentation.reversed();
            for p in &mut q.paths {
                std::mem::swap(&mut p.source, &mut p.target);
                p.arrows.reverse();
            }
        }
        op
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Equality of structure constants in the shared basis.
    pub fn same_table(&self, other: &Algebra) -> bool {
        self.field == other.field && self.products == other.products && self.unit == other.unit
    }

    /// Checks whether the linear bijection `phi` (columns: images of this
    /// algebra's basis in `other`'s basis) is an algebra isomorphism.
    pub fn is_isomorphism(&self, other: &Algebra, phi: &Matrix) -> bool {
        if phi.rows() != other.dim() || phi.cols() != self.dim() || phi.inverse().is_none() {
            return false;
        }
        if phi.mul_vec(&self.unit) != other.unit {
            return false;
        }
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = phi.mul_vec(self.product(i, j));
                let rhs = other.mul(&phi.column(i), &phi.column(j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Decides whether this algebra is isomorphic to a product of copies of
    /// the ground field, returning a basis of orthogonal idempotents if so.
    ///
    /// Uses a commutative element with pairwise distinct eigenvalues; only
    /// available over prime fields, where eigenvalues can be found by
    /// exhaustion. `None` means undecided (rational field).
    pub fn split_idempotent_basis(&self) -> Option<Result<Vec<Vector>, String>> {
        let f = self.field;
        let d = self.dim();
        if !self.is_commutative() {
            return Some(Err("not commutative".into()));
        }
        if f.elements().is_none() {
            return None;
        }
        // deterministic sequence of candidate elements
        for seed in 1..=8i64 {
            let x: Vector = (0..d).map(|i| f.from_i64(seed * (i as i64 + 1) * (i as i64 + 2) + i as i64)).collect();
            let lx = self.left_mul_matrix(&x);
            let mut eigvecs = Vec::new();
            for lambda in f.elements()? {
                let shifted = lx.sub(&Matrix::identity(f, d).scale(&lambda));
                let k = shifted.kernel_basis();
                if k.cols() > 1 {
                    eigvecs.clear();
                    break;
                }
                if k.cols() == 1 {
                    eigvecs.push(k.column(0));
                }
                if eigvecs.len() == d {
                    break;
                }
            }
            if eigvecs.len() != d {
                continue;
            }
            let mut idems = Vec::new();
            for v in eigvecs {
                // v^2 = c v for an eigenvector of a generic element
                let sq = self.mul(&v, &v);
                let Some(pos) = v.iter().position(|s| !s.is_zero()) else {
                    return Some(Err("zero eigenvector".into()));
                };
                let c = f.mul(&sq[pos], &f.inv(&v[pos]));
                if c.is_zero() {
                    return Some(Err("nilpotent element found".into()));
                }
                let cinv = f.inv(&c);
                idems.push(v.iter().map(|s| f.mul(s, &cinv)).collect::<Vector>());
            }
            return Some(Ok(idems));
        }
        Some(Err("no element with distinct eigenvalues in the ground field".into()))
    }

    /// The same multiplication with another complete set of orthogonal idempotents.
    pub fn with_idempotents(&self, idempotents: Vec<Vector>) -> Result<Algebra> {
        let mut alg = Algebra::new(self.field, self.labels.clone(), self.products.clone(), self.unit.clone(), idempotents, Some(self.generators.clone()))?;
        alg.quiver = None;
        Ok(alg)
    }

    /// Basis of the radical of the trace form `(x, y) ↦ tr(L_{xy})`, which is
    /// the Jacobson radical when the characteristic is 0 or exceeds the dimension.
    pub fn trace_radical(&self) -> Option<Matrix> {
        let f = self.field;
        let d = self.dim();
        let p = f.characteristic();
        if p != 0 && p as usize <= d {
            return None;
        }
        let traces: Vec<Scalar> = (0..d)
            .map(|k| {
                let l = self.left_mul_matrix(&self.basis_vector(k));
                (0..d).fold(f.zero(), |acc, i| f.add(&acc, l.get(i, i)))
            })
            .collect();
        let rows: Vec<Vec<Scalar>> = (0..d)
            .map(|i| (0..d).map(|j| self.product(i, j).iter().zip(&traces).fold(f.zero(), |acc, (c, t)| f.add(&acc, &f.mul(c, t)))).collect())
            .collect();
        Some(Matrix::from_rows(f, d, d, rows).expect("square").kernel_basis())
    }

    /// A complete set of primitive orthogonal idempotents, found by splitting
    /// along generalized eigenspaces of seeded random corner elements.
    ///
    /// Requires a prime field larger than the dimension, and every `eAe/eJe`
    /// to split over it; `None` otherwise.
    pub fn primitive_idempotents(&self) -> Option<Vec<Vector>> {
        use rand::{Rng, SeedableRng};
        let f = self.field;
        let d = self.dim();
        let p = f.characteristic();
        let j = self.trace_radical()?;
        if f.elements().is_none() {
            return None;
        }
        let corner = |e: &Vector, basis: &[Vector]| -> usize {
            let cols: Vec<Vector> = basis.iter().map(|y| self.mul(&self.mul(e, y), e)).collect();
            Matrix::from_columns(f, d, &cols).rank()
        };
        let all: Vec<Vector> = (0..d).map(|k| self.basis_vector(k)).collect();
        let rad = j.columns();
        let local = |e: &Vector| corner(e, &all) - corner(e, &rad) == 1;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1de);
        let mut done = Vec::new();
        let mut todo = vec![self.unit.clone()];
        let mut trials = 0;
        while let Some(e) = todo.pop() {
            if local(&e) {
                done.push(e);
                continue;
            }
            trials += 1;
            if trials > 64 {
                return None;
            }
            let x: Vector = (0..d).map(|_| f.from_i64(rng.gen_range(0..p.min(1 << 20)) as i64)).collect();
            let y = self.mul(&self.mul(&e, &x), &e);
            let Some(mut parts) = self.split_by(&y) else {
                todo.push(e);
                continue;
            };
            let rest = parts.iter().fold(e.clone(), |acc, q| acc.iter().zip(q).map(|(a, b)| f.sub(a, b)).collect());
            if !is_zero_vector(&rest) {
                parts.push(rest);
            }
            if parts.len() > 1 {
                todo.extend(parts);
            } else {
                todo.push(e);
            }
        }
        Some(done)
    }

    /// The idempotents `P_λ(1)` projecting onto the generalized eigenspaces of
    /// `L_y` for the nonzero eigenvalues `λ`; `None` unless all eigenvalues lie in the field.
    fn split_by(&self, y: &[Scalar]) -> Option<Vec<Vector>> {
        let f = self.field;
        let d = self.dim();
        let l = self.left_mul_matrix(y);
        let mut spaces = Vec::new();
        let mut total = 0;
        for lambda in f.elements()? {
            let shifted = l.sub(&Matrix::identity(f, d).scale(&lambda));
            let mut pow = shifted.clone();
            let mut k = 1;
            while k < d {
                pow = pow.mul(&pow);
                k *= 2;
            }
            let v = pow.kernel_basis();
            if v.cols() > 0 {
                total += v.cols();
                spaces.push((lambda, v));
            }
            if total == d {
                break;
            }
        }
        if total != d {
            return None;
        }
        let refs: Vec<&Matrix> = spaces.iter().map(|(_, v)| v).collect();
        let inv = Matrix::hstack(f, d, &refs).inverse()?;
        let mut out = Vec::new();
        let mut offset = 0;
        for (lambda, v) in &spaces {
            let coords = inv.mul_vec(&self.unit);
            if !lambda.is_zero() {
                let part: Vec<Scalar> = (0..v.cols()).map(|c| coords[offset + c].clone()).collect();
                let e = v.mul_vec(&part);
                if !is_zero_vector(&e) {
                    out.push(e);
                }
            }
            offset += v.cols();
        }
        Some(out)
    }

    pub(crate) fn with_quiver(mut self, q: QuiverData) -> Self {
        self.quiver = Some(q);
        self
    }
}

impl QuiverPresentation {
    pub fn reversed(&self) -> QuiverPresentation {
        QuiverPresentation {
            field: self.field,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, p)| (c.clone(), p.iter().rev().copied().collect()))
                        .collect()
                })
                .collect(),
        }
    }

    fn path_endpoints(&self, arrows: &[usize]) -> Result<(usize, usize)> {
        let first = arrows.first().ok_or_else(|| Error::NotAdmissible("empty path".into()))?;
        let mut cur = self.arrow(*first)?.source;
        for &a in arrows {
            let arrow = self.arrow(a)?;
            if arrow.source != cur {
                return Err(Error::NotAdmissible(format!(
                    "path is not composable at arrow {}",
                    arrow.label
                )));
            }
            cur = arrow.target;
        }
        Ok((self.arrow(*first)?.source, cur))
    }

    fn arrow(&self, a: usize) -> Result<&Arrow> {
        self.arrows.get(a).ok_or(Error::OutOfRange { index: a, len: self.arrows.len() })
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::Input("quiver has no vertices".into()));
        }
        for a in &self.arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::Input(format!("arrow {} has an unknown endpoint", a.label)));
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            let mut ends = None;
            for (_, p) in r {
                if p.len() < 2 {
                    return Err(Error::NotAdmissible(format!(
                        "relation {k} has a term of length {} (< 2)",
                        p.len()
                    )));
                }
                let e = self.path_endpoints(p)?;
                if *ends.get_or_insert(e) != e {
                    return Err(Error::NotAdmissible(format!("relation {k} mixes paths with different endpoints")));
                }
            }
        }
        Ok(())
    }
}

/// All paths of length `< bound`, grouped by length, in deterministic order.
fn enumerate_paths(q: &QuiverPresentation, bound: usize, limit: usize) -> Result<Vec<Path>> {
    let mut all: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut frontier = all.clone();
    for _ in 1..bound {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > limit {
            return Err(Error::DimensionCap { cap: limit, reached: all.len() });
        }
        frontier = next;
    }
    Ok(all)
}

/// The quotient `kQ/(I + J^L)` for a fixed truncation length `L`.
struct Truncated {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// RREF rows of the ideal with pivot columns, columns in `paths` order.
    ideal: Vec<(usize, Vector)>,
    basis: Vec<usize>,
}

impl Truncated {
    fn build(q: &QuiverPresentation, bound: usize, limit: usize) -> Result<Self> {
        let f = q.field;
        let paths = enumerate_paths(q, bound, limit)?;
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = paths.len();
        // longer paths come first so that pivots (eliminated paths) are long
        // ones and short paths survive as basis elements
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(paths[i].len()));
        let mut rows: Vec<Vector> = Vec::new();
        for r in &q.relations {
            let (s, t) = q.path_endpoints(&r[0].1)?;
            let min_len = r.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
            for pre in paths.iter().filter(|p| p.target == s) {
                for post in paths.iter().filter(|p| p.source == t) {
                    if pre.len() + post.len() + min_len >= bound {
                        continue;
                    }
                    let mut row = zero_vector(f, n);
                    for (c, mid) in r {
                        let mut arrows = pre.arrows.clone();
                        arrows.extend_from_slice(mid);
                        arrows.extend_from_slice(&post.arrows);
                        if arrows.len() >= bound {
                            continue;
                        }
                        let key = Path { source: pre.source, target: post.target, arrows };
                        let idx = index[&key];
                        row[idx] = f.add(&row[idx], c);
                    }
                    rows.push(order.iter().map(|&i| row[i].clone()).collect());
                }
            }
        }
        let mut ideal = Vec::new();
        let mut pivot_cols = vec![false; n];
        if !rows.is_empty() {
            let m = Matrix::from_rows(f, rows.len(), n, rows)?;
            let rref = m.rref();
            for (r, &pc) in rref.pivots.iter().enumerate() {
                let permuted = rref.reduced.row(r);
                let mut row = zero_vector(f, n);
                for (k, &i) in order.iter().enumerate() {
                    row[i] = permuted[k].clone();
                }
                pivot_cols[order[pc]] = true;
                ideal.push((order[pc], row));
            }
        }
        let mut basis: Vec<usize> = (0..n).filter(|&i| !pivot_cols[i]).collect();
        basis.sort_by_key(|&i| (paths[i].len(), i));
        Ok(Truncated { paths, index, ideal, basis })
    }

    /// Reduces a vector over all paths to the coordinates of its normal form.
    fn normal_form(&self, f: Field, mut v: Vector) -> Vector {
        for (pc, row) in &self.ideal {
            if !v[*pc].is_zero() {
                let c = f.neg(&v[*pc]);
                axpy(f, &mut v, &c, row);
            }
        }
        self.basis.iter().map(|&i| v[i].clone()).collect()
    }
}

fn path_label(q: &QuiverPresentation, p: &Path) -> String {
    if p.is_empty() {
        format!("e_{}", q.vertices[p.source])
    } else {
        p.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// Quotient of the path algebra by the ideal generated by the relations.
///
/// The truncation length is raised until `kQ/(I + J^L)` stops growing, which
/// happens exactly when the quotient is finite-dimensional.
pub fn path_algebra(q: &QuiverPresentation, cap: usize) -> Result<Algebra> {
    q.validate()?;
    let f = q.field;
    let limit = cap.saturating_mul(16).max(64);
    let mut prev = Truncated::build(q, 1, limit)?;
    let mut bound = 2;
    let trunc = loop {
        let cur = Truncated::build(q, bound, limit)?;
        if cur.basis.len() > cap {
            return Err(Error::DimensionCap { cap, reached: cur.basis.len() });
        }
        if cur.basis.len() == prev.basis.len() {
            break prev;
        }
        prev = cur;
        bound += 1;
    };
    let bound = bound - 1;
    let d = trunc.basis.len();
    let n = trunc.paths.len();
    let basis_paths: Vec<Path> = trunc.basis.iter().map(|&i| trunc.paths[i].clone()).collect();
    let mut products = Vec::with_capacity(d * d);
    for p in &basis_paths {
        for r in &basis_paths {
            if p.target != r.source || p.len() + r.len() >= bound {
                products.push(zero_vector(f, d));
                continue;
            }
            let mut arrows = p.arrows.clone();
            arrows.extend_from_slice(&r.arrows);
            let key = Path { source: p.source, target: r.target, arrows };
            let v = unit_vector(f, n, trunc.index[&key]);
            products.push(trunc.normal_form(f, v));
        }
    }
    let position = |path: &Path| basis_paths.iter().position(|p| p == path);
    let vertex_basis: Vec<usize> = (0..q.vertices.len())
        .map(|v| position(&Path::trivial(v)).expect("trivial paths survive"))
        .collect();
    let arrow_basis: Vec<usize> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            position(&Path { source: a.source, target: a.target, arrows: vec![i] })
                .expect("arrows survive admissible relations")
        })
        .collect();
    let mut unit = zero_vector(f, d);
    for &v in &vertex_basis {
        unit[v] = f.one();
    }
    let idempotents = vertex_basis.iter().map(|&v| unit_vector(f, d, v)).collect();
    let mut generators = vertex_basis.clone();
    generators.extend(&arrow_basis);
    let labels = basis_paths.iter().map(|p| path_label(q, p)).collect();
    let alg = Algebra::new(f, labels, products, unit, idempotents, Some(generators))?;
    Ok(alg.with_quiver(QuiverData { presentation: q.clone(), vertex_basis, arrow_basis, paths: basis_paths }))
}

/// A subalgebra spanned by given elements with the induced multiplication.
pub fn subalgebra(parent: &Algebra, basis: &Matrix, labels: Vec<String>) -> Result<Algebra> {
    let f = parent.field();
    let cb = ColumnBasis::new(basis.clone());
    let d = basis.cols();
    let mut products = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let p = parent.mul(&basis.column(i), &basis.column(j));
            products.push(cb.coords(&p).ok_or_else(|| Error::Degenerate("span is not closed under products".into()))?);
        }
    }
    let unit = cb.coords(parent.unit()).ok_or_else(|| Error::Degenerate("unit not in span".into()))?;
    Algebra::new(f, labels, products, unit.clone(), vec![unit], None)
}
