//! Right modules over an [`Algebra`] and their homomorphism spaces.
//!
//! A module of dimension `n` stores, for each basis element `b` of the
//! algebra, the `n x n` matrix `R_b` with `coords(m b) = R_b coords(m)`.
//! Right actions compose as `R_{ab} = R_b R_a`.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{zero_vector, ColumnBasis, Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    field: Field,
    dim: usize,
    action: Vec<Matrix>,
    /// When present, the module is literally `⊕ e_i A` over these idempotent
    /// indices, with the concatenated standard bases.
    projective: Option<Vec<usize>>,
}

impl Module {
    pub fn new(alg: &Algebra, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let m = Module { field: alg.field(), dim, action, projective: None };
        m.validate(alg)?;
        Ok(m)
    }

    fn validate(&self, alg: &Algebra) -> Result<()> {
        if self.action.len() != alg.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                self.action.len(),
                alg.dim()
            )));
        }
        if self.action.iter().any(|a| a.rows() != self.dim || a.cols() != self.dim) {
            return Err(Error::InvalidModule("action matrix has the wrong shape".into()));
        }
        if self.act(alg.unit()) != Matrix::identity(self.field, self.dim) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if self.act(alg.product(i, j)) != self.action[j].mul(&self.action[i]) {
                    return Err(Error::InvalidModule(format!(
                        "action does not respect the product {} * {}",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Module given by the action of the quiver's vertices and arrows.
    pub fn from_generators(alg: &Algebra, dim: usize, vertices: &[Matrix], arrows: &[Matrix]) -> Result<Self> {
        let q = alg
            .quiver()
            .ok_or_else(|| Error::InvalidModule("algebra has no quiver presentation".into()))?;
        if vertices.len() != q.vertex_basis.len() || arrows.len() != q.arrow_basis.len() {
            return Err(Error::InvalidModule("one matrix per vertex and arrow is required".into()));
        }
        let f = alg.field();
        let action = q
            .paths
            .iter()
            .map(|p| {
                if p.is_empty() {
                    vertices[p.source].clone()
                } else {
                    p.arrows.iter().fold(Matrix::identity(f, dim), |acc, &a| arrows[a].mul(&acc))
                }
            })
            .collect();
        Module::new(alg, dim, action)
    }

    /// Representation with `dims[v]`-dimensional vertex spaces and one
    /// `dims[target] x dims[source]` matrix per arrow.
    pub fn from_representation(alg: &Algebra, dims: &[usize], arrow_maps: &[Matrix]) -> Result<Self> {
        let q = alg
            .quiver()
            .ok_or_else(|| Error::InvalidModule("algebra has no quiver presentation".into()))?;
        let f = alg.field();
        let pres = &q.presentation;
        if dims.len() != pres.vertices.len() || arrow_maps.len() != pres.arrows.len() {
            return Err(Error::InvalidModule("representation shape does not match the quiver".into()));
        }
        let offsets: Vec<usize> = dims.iter().scan(0, |acc, d| { let o = *acc; *acc += d; Some(o) }).collect();
        let n: usize = dims.iter().sum();
        let vertices = (0..dims.len())
            .map(|v| {
                let mut m = Matrix::zeros(f, n, n);
                m.set_block(offsets[v], offsets[v], &Matrix::identity(f, dims[v]));
                m
            })
            .collect::<Vec<_>>();
        let mut arrows = Vec::new();
        for (a, map) in pres.arrows.iter().zip(arrow_maps) {
            if map.rows() != dims[a.target] || map.cols() != dims[a.source] {
                return Err(Error::InvalidModule(format!("arrow {} has a matrix of the wrong shape", a.label)));
            }
            let mut m = Matrix::zeros(f, n, n);
            m.set_block(offsets[a.target], offsets[a.source], map);
            arrows.push(m);
        }
        Module::from_generators(alg, n, &vertices, &arrows)
    }

    pub fn zero(alg: &Algebra) -> Self {
        Module {
            field: alg.field(),
            dim: 0,
            action: vec![Matrix::zeros(alg.field(), 0, 0); alg.dim()],
            projective: Some(Vec::new()),
        }
    }

    /// `A_A` in the algebra's own basis.
    pub fn regular(alg: &Algebra) -> Self {
        let action = (0..alg.dim()).map(|b| alg.right_mul_matrix(&alg.basis_vector(b))).collect();
        Module { field: alg.field(), dim: alg.dim(), action, projective: None }
    }

    /// `e_i A` with right multiplication.
    pub fn projective(alg: &Algebra, i: usize) -> Result<Self> {
        let n = alg.idempotents().len();
        if i >= n {
            return Err(Error::OutOfRange { index: i, len: n });
        }
        let f = alg.field();
        let basis = alg.projective_basis(i);
        let cb = ColumnBasis::new(Matrix::from_columns(f, alg.dim(), basis));
        let action = (0..alg.dim())
            .map(|b| {
                let bv = alg.basis_vector(b);
                let cols: Vec<Vector> = basis
                    .iter()
                    .map(|w| cb.coords(&alg.mul(w, &bv)).expect("e A is a right ideal"))
                    .collect();
                Matrix::from_columns(f, basis.len(), &cols)
            })
            .collect();
        Ok(Module { field: f, dim: basis.len(), action, projective: Some(vec![i]) })
    }

    /// `⊕_i e_i A`, isomorphic to `A_A` and tagged as projective.
    pub fn free(alg: &Algebra) -> Self {
        let summands: Vec<usize> = (0..alg.idempotents().len()).collect();
        Module::projective_sum(alg, &summands).expect("idempotent indices are in range")
    }

    pub fn projective_sum(alg: &Algebra, summands: &[usize]) -> Result<Self> {
        let parts = summands.iter().map(|&i| Module::projective(alg, i)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Module> = parts.iter().collect();
        Ok(Module::direct_sum(alg, &refs))
    }

    /// The one-dimensional simple module at a vertex of a quiver algebra.
    pub fn simple(alg: &Algebra, vertex: usize) -> Result<Self> {
        let q = alg
            .quiver()
            .ok_or_else(|| Error::InvalidModule("simple modules need a quiver presentation".into()))?;
        let n = q.vertex_basis.len();
        if vertex >= n {
            return Err(Error::OutOfRange { index: vertex, len: n });
        }
        let f = alg.field();
        let action = (0..alg.dim())
            .map(|b| {
                let v = if b == q.vertex_basis[vertex] { f.one() } else { f.zero() };
                Matrix::from_rows(f, 1, 1, vec![vec![v]]).expect("1x1")
            })
            .collect();
        Module::new(alg, 1, action)
    }

    pub fn direct_sum(alg: &Algebra, parts: &[&Module]) -> Self {
        let f = alg.field();
        let dim = parts.iter().map(|m| m.dim).sum();
        let action = (0..alg.dim())
            .map(|b| {
                let blocks: Vec<&Matrix> = parts.iter().map(|m| &m.action[b]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        let projective = parts
            .iter()
            .map(|m| m.projective.clone())
            .collect::<Option<Vec<_>>>()
            .map(|v| v.concat());
        Module { field: f, dim, action, projective }
    }

    /// Same action, forgetting any projective tag.
    pub fn untagged(&self) -> Self {
        Module { projective: None, ..self.clone() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn projective_summands(&self) -> Option<&[usize]> {
        self.projective.as_deref()
    }

    pub fn is_projective(&self) -> bool {
        self.projective.is_some()
    }

    /// Matrix of `m -> m x` for an algebra element `x`.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (c, a) in x.iter().zip(&self.action) {
            out.add_scaled(c, a);
        }
        out
    }

    /// Columns form a basis of `M e` for the `i`-th idempotent.
    pub fn weight_basis(&self, alg: &Algebra, i: usize) -> Matrix {
        self.act(&alg.idempotents()[i]).image_basis()
    }

    pub fn dimension_vector(&self, alg: &Algebra) -> Vec<usize> {
        (0..alg.idempotents().len()).map(|i| self.act(&alg.idempotents()[i]).rank()).collect()
    }

    /// Checks that `map: self -> target` commutes with the algebra action.
    pub fn is_module_map(&self, alg: &Algebra, target: &Module, map: &Matrix) -> bool {
        map.rows() == target.dim
            && map.cols() == self.dim
            && alg
                .generators()
                .iter()
                .all(|&g| map.mul(&self.action[g]) == target.action[g].mul(map))
    }
}

/// A basis of `Hom_A(M, N)` with coordinate extraction.
#[derive(Clone, Debug)]
pub struct HomBasis {
    rows: usize,
    cols: usize,
    maps: Vec<Matrix>,
    solver: Solver,
}

#[derive(Clone, Debug)]
enum Solver {
    Empty,
    Flat(ColumnBasis),
    /// Maps out of `⊕ e_i A` are determined by the images of the `e_i`.
    Generators(Vec<GeneratorSolver>),
}

#[derive(Clone, Debug)]
struct GeneratorSolver {
    offset: usize,
    /// `e_i` in the basis of `e_i A`.
    unit: Vector,
    weights: Option<ColumnBasis>,
}

impl HomBasis {
    fn new(field: Field, rows: usize, cols: usize, maps: Vec<Matrix>) -> Self {
        let solver = if maps.is_empty() {
            Solver::Empty
        } else {
            let flat: Vec<Vector> = maps.iter().map(Matrix::flatten).collect();
            Solver::Flat(ColumnBasis::new(Matrix::from_columns(field, rows * cols, &flat)))
        };
        HomBasis { rows, cols, maps, solver }
    }

    fn generator_coords(&self, map: &Matrix, exact: bool) -> Option<Vector> {
        let f = map.field();
        match &self.solver {
            Solver::Empty => (!exact || map.is_zero()).then(Vec::new),
            Solver::Flat(s) => {
                let flat = map.flatten();
                if exact {
                    s.coords(&flat)
                } else {
                    Some(s.coords_unchecked(&flat))
                }
            }
            Solver::Generators(parts) => {
                let mut out = Vec::with_capacity(self.maps.len());
                for g in parts {
                    let mut v = zero_vector(f, self.rows);
                    for (k, c) in g.unit.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (r, x) in v.iter_mut().enumerate() {
                            let y = map.get(r, g.offset + k);
                            if !y.is_zero() {
                                *x = f.add(x, &f.mul(c, y));
                            }
                        }
                    }
                    match &g.weights {
                        None => {
                            if exact && v.iter().any(|x| !x.is_zero()) {
                                return None;
                            }
                        }
                        Some(w) => out.extend(if exact { w.coords(&v)? } else { w.coords_unchecked(&v) }),
                    }
                }
                if exact && self.element(f, &out) != *map {
                    return None;
                }
                Some(out)
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Coordinates of a module map known to lie in this Hom-space.
    pub fn coords(&self, map: &Matrix) -> Vector {
        self.generator_coords(map, false).expect("unchecked coordinates always exist")
    }

    pub fn coords_checked(&self, map: &Matrix) -> Option<Vector> {
        if map.rows() != self.rows || map.cols() != self.cols {
            return None;
        }
        self.generator_coords(map, true)
    }

    /// The map with the given coordinates.
    pub fn element(&self, field: Field, coords: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(field, self.rows, self.cols);
        for (c, m) in coords.iter().zip(&self.maps) {
            out.add_scaled(c, m);
        }
        out
    }
}

/// A k-basis of `Hom_A(M, N)`.
///
/// Maps out of a tagged projective `⊕ e_i A` are read off from `N e_i`;
/// otherwise the commutation equations are solved on the weight-space
/// decomposition given by the idempotents.
pub fn hom_space(alg: &Algebra, m: &Module, n: &Module) -> HomBasis {
    let f = alg.field();
    if m.dim == 0 || n.dim == 0 {
        return HomBasis::new(f, n.dim, m.dim, Vec::new());
    }
    if let Some(summands) = &m.projective {
        let mut maps = Vec::new();
        let mut parts = Vec::new();
        let mut offset = 0;
        for &i in summands {
            let basis = alg.projective_basis(i);
            let weights = n.weight_basis(alg, i);
            let unit = ColumnBasis::new(Matrix::from_columns(f, alg.dim(), basis))
                .coords(&alg.idempotents()[i])
                .expect("e_i lies in e_i A");
            parts.push(GeneratorSolver {
                offset,
                unit,
                weights: (weights.cols() > 0).then(|| ColumnBasis::new(weights.clone())),
            });
            for v in weights.columns() {
                let mut map = Matrix::zeros(f, n.dim, m.dim);
                for (k, w) in basis.iter().enumerate() {
                    let col = n.act(w).mul_vec(&v);
                    for (r, x) in col.into_iter().enumerate() {
                        map.set(r, offset + k, x);
                    }
                }
                maps.push(map);
            }
            offset += basis.len();
        }
        let solver = if maps.is_empty() { Solver::Empty } else { Solver::Generators(parts) };
        return HomBasis { rows: n.dim, cols: m.dim, maps, solver };
    }

    let k = alg.idempotents().len();
    let src_weights: Vec<Matrix> = (0..k).map(|i| m.weight_basis(alg, i)).collect();
    let tgt_weights: Vec<Matrix> = (0..k).map(|i| n.weight_basis(alg, i)).collect();
    let refs: Vec<&Matrix> = src_weights.iter().collect();
    let change = Matrix::hstack(f, m.dim, &refs);
    let inv = change.inverse().expect("idempotents decompose the module");
    let mut candidates = Vec::new();
    let mut row0 = 0;
    for i in 0..k {
        let mi = src_weights[i].cols();
        for p in 0..tgt_weights[i].cols() {
            let col = tgt_weights[i].column(p);
            for q in 0..mi {
                let proj = inv.row(row0 + q);
                let mut map = Matrix::zeros(f, n.dim, m.dim);
                for (r, a) in col.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (c, b) in proj.iter().enumerate() {
                        if !b.is_zero() {
                            map.set(r, c, f.mul(a, b));
                        }
                    }
                }
                candidates.push(map);
            }
        }
        row0 += mi;
    }
    if candidates.is_empty() {
        return HomBasis::new(f, n.dim, m.dim, Vec::new());
    }
    let equations: Vec<Vector> = candidates
        .iter()
        .map(|c| {
            alg.generators()
                .iter()
                .flat_map(|&g| c.mul(&m.action[g]).sub(&n.action[g].mul(c)).flatten())
                .collect()
        })
        .collect();
    let rows = equations[0].len();
    let system = Matrix::from_columns(f, rows, &equations);
    let kernel = system.kernel_basis();
    let maps = kernel
        .columns()
        .into_iter()
        .map(|coeffs| {
            let mut map = Matrix::zeros(f, n.dim, m.dim);
            for (c, cand) in coeffs.iter().zip(&candidates) {
                map.add_scaled(c, cand);
            }
            map
        })
        .collect();
    HomBasis::new(f, n.dim, m.dim, maps)
}

/// An explicit isomorphism `m -> n`, searched among combinations of a basis
/// of `Hom_A(m, n)` with coefficients from a fixed-seed generator.
///
/// The determinant is a nonzero polynomial in the coefficients when an
/// isomorphism exists, so `None` after all trials means the modules are not
/// isomorphic unless every trial hit its zero set.
pub fn find_isomorphism(alg: &Algebra, m: &Module, n: &Module) -> Option<Matrix> {
    use rand::{Rng, SeedableRng};
    if m.dim != n.dim || m.dimension_vector(alg) != n.dimension_vector(alg) {
        return None;
    }
    let f = alg.field();
    if m.dim == 0 {
        return Some(Matrix::zeros(f, 0, 0));
    }
    let h = hom_space(alg, m, n);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5117);
    let bound = match f {
        Field::Prime(p) => p.min(1 << 20) as i64,
        Field::Rational => 1000,
    };
    (0..32).find_map(|_| {
        let coeffs: Vec<Scalar> = (0..h.dim()).map(|_| f.from_i64(rng.gen_range(0..bound))).collect();
        let map = h.element(f, &coeffs);
        (map.rank() == m.dim).then_some(map)
    })
}

/// `End_A(m)` with `b_i b_j = b_i ∘ b_j` on a basis of module maps.
pub fn endomorphism_algebra(alg: &Algebra, m: &Module) -> Result<Algebra> {
    let f = alg.field();
    let h = hom_space(alg, m, m);
    if h.dim() == 0 {
        return Err(Error::Degenerate("the endomorphism algebra of the zero module is zero".into()));
    }
    let products = h.maps().iter().flat_map(|x| h.maps().iter().map(|y| h.coords(&x.mul(y))).collect::<Vec<_>>()).collect();
    let unit = h.coords(&Matrix::identity(f, m.dim));
    let labels = (0..h.dim()).map(|k| format!("f{k}")).collect();
    Algebra::new(f, labels, products, unit.clone(), vec![unit], None)
}

/// Whether `End_A(m)` is local with split top, decided through its primitive
/// idempotents; `None` when those cannot be computed over the field.
pub fn is_indecomposable(alg: &Algebra, m: &Module) -> Option<bool> {
    if m.dim == 0 {
        return Some(false);
    }
    let e = endomorphism_algebra(alg, m).ok()?;
    Some(e.primitive_idempotents()?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Arrow, QuiverPresentation};

    fn a2() -> Algebra {
        let f = Field::prime(101).unwrap();
        let q = QuiverPresentation {
            field: f,
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow { label: "a".into(), source: 0, target: 1 }],
            relations: vec![],
        };
        path_algebra(&q, 512).unwrap()
    }

    fn dual() -> Algebra {
        let f = Field::prime(101).unwrap();
        let q = QuiverPresentation {
            field: f,
            vertices: vec!["1".into()],
            arrows: vec![Arrow { label: "x".into(), source: 0, target: 0 }],
            relations: vec![vec![(f.one(), vec![0, 0])]],
        };
        path_algebra(&q, 512).unwrap()
    }

    #[test]
    fn isomorphism_search() {
        let a = a2();
        let f = a.field();
        let p1 = Module::projective(&a, 0).unwrap();
        let rep = Module::from_representation(&a, &[1, 1], &[Matrix::from_i64(f, &[&[5]])]).unwrap();
        let iso = find_isomorphism(&a, &p1, &rep).unwrap();
        assert!(p1.is_module_map(&a, &rep, &iso));
        let split = Module::from_representation(&a, &[1, 1], &[Matrix::from_i64(f, &[&[0]])]).unwrap();
        assert!(find_isomorphism(&a, &p1, &split).is_none());
        assert!(find_isomorphism(&a, &Module::simple(&a, 0).unwrap(), &Module::simple(&a, 1).unwrap()).is_none());
        let s = Module::simple(&a, 1).unwrap();
        let sum = Module::direct_sum(&a, &[&s, &s]);
        assert_eq!(find_isomorphism(&a, &sum, &sum).unwrap().rank(), 2);
    }

    #[test]
    fn indecomposables_over_a2() {
        let a = a2();
        let f = a.field();
        // representations (1, 1) with arrow rank 1 and 0: P1 and S1 ⊕ S2
        let p1 = Module::from_representation(&a, &[1, 1], &[Matrix::from_i64(f, &[&[3]])]).unwrap();
        let split = Module::from_representation(&a, &[1, 1], &[Matrix::from_i64(f, &[&[0]])]).unwrap();
        let s2 = Module::simple(&a, 1).unwrap();
        assert_eq!(is_indecomposable(&a, &p1), Some(true));
        assert_eq!(is_indecomposable(&a, &s2), Some(true));
        assert_eq!(is_indecomposable(&a, &split), Some(false));
        assert_eq!(is_indecomposable(&a, &Module::direct_sum(&a, &[&s2, &s2])), Some(false));
        assert_eq!(is_indecomposable(&a, &Module::free(&a)), Some(false));
        assert_eq!(endomorphism_algebra(&a, &Module::free(&a)).unwrap().dim(), a.dim());
    }

    #[test]
    fn projectives_split_the_regular_module() {
        let a = a2();
        let p1 = Module::projective(&a, 0).unwrap();
        let p2 = Module::projective(&a, 1).unwrap();
        assert_eq!(p1.dim() + p2.dim(), a.dim());
        assert_eq!((p1.dim(), p2.dim()), (2, 1));
        assert!(Module::projective(&a, 2).is_err());
        let d = dual();
        assert_eq!(Module::projective(&d, 0).unwrap().dim(), 2);
    }

    #[test]
    fn hom_between_projectives_of_a2() {
        let a = a2();
        let p1 = Module::projective(&a, 0).unwrap();
        let p2 = Module::projective(&a, 1).unwrap();
        // computed on untagged copies so the general solver is exercised too
        for (m, n) in [(&p1, &p2), (&p2, &p1)] {
            let fast = hom_space(&a, m, n).dim();
            let slow = hom_space(&a, &m.untagged(), n).dim();
            assert_eq!(fast, slow);
        }
        let dims = (hom_space(&a, &p1, &p2).dim(), hom_space(&a, &p2, &p1).dim());
        assert_eq!(dims, (0, 1));
    }

    #[test]
    fn schur_and_zero() {
        let a = a2();
        let s = Module::simple(&a, 0).unwrap();
        assert_eq!(hom_space(&a, &s, &s).dim(), 1);
        assert_eq!(hom_space(&a, &s, &Module::zero(&a)).dim(), 0);
    }

    #[test]
    fn yoneda_dimension() {
        let a = a2();
        let f = a.field();
        let m = Module::from_representation(&a, &[2, 1], &[Matrix::from_i64(f, &[&[1, 3]])]).unwrap();
        for i in 0..2 {
            let p = Module::projective(&a, i).unwrap();
            assert_eq!(hom_space(&a, &p, &m).dim(), m.dimension_vector(&a)[i]);
            assert_eq!(hom_space(&a, &p.untagged(), &m).dim(), m.dimension_vector(&a)[i]);
        }
        for map in hom_space(&a, &m, &m).maps() {
            assert!(m.is_module_map(&a, &m, map));
        }
    }

    #[test]
    fn invalid_action_rejected() {
        let d = dual();
        let f = d.field();
        // x acting invertibly violates x^2 = 0
        let bad = Module::from_generators(&d, 1, &[Matrix::identity(f, 1)], &[Matrix::identity(f, 1)]);
        assert!(bad.is_err());
    }
}
