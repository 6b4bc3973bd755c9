//! The graded Hom complex `Hom^n(X, Y) = ∏_i Hom_A(X^i, Y^{n+i})` with
//! differential `d(f) = d_Y f - (-1)^n f d_X`.

use crate::complex::{ChainMap, CohomologySpace, Complex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, Vector};
use crate::module::{hom_space, HomBasis};

/// The summand `Hom_A(X^i, Y^{n+i})` of a graded piece.
#[derive(Clone, Debug)]
pub struct HomBlock {
    pub source_degree: i32,
    pub offset: usize,
    pub basis: HomBasis,
}

/// One graded piece; coordinates are ordered by source degree, then by the
/// Hom-basis index.
#[derive(Clone, Debug, Default)]
pub struct HomPiece {
    pub blocks: Vec<HomBlock>,
    pub dim: usize,
}

impl HomPiece {
    fn block(&self, source_degree: i32) -> Option<&HomBlock> {
        self.blocks.iter().find(|b| b.source_degree == source_degree)
    }
}

#[derive(Clone, Debug)]
pub struct GradedHom {
    source: Complex,
    target: Complex,
    lo: i32,
    pieces: Vec<HomPiece>,
    diffs: Vec<Matrix>,
    empty: HomPiece,
}

/// Builds `Hom•_A(X, Y)`. Only nonzero component Hom-spaces get a block.
pub fn hom_complex(x: &Complex, y: &Complex) -> GradedHom {
    let alg = x.algebra();
    let field = alg.field();
    let (Some((xa, xb)), Some((ya, yb))) = (x.support(), y.support()) else {
        return GradedHom { source: x.clone(), target: y.clone(), lo: 0, pieces: Vec::new(), diffs: Vec::new(), empty: HomPiece::default() };
    };
    let lo = ya - xb;
    let hi = yb - xa;
    let pieces: Vec<HomPiece> = (lo..=hi)
        .map(|n| {
            let mut piece = HomPiece::default();
            for i in xa..=xb {
                if x.dim(i) == 0 || y.dim(n + i) == 0 {
                    continue;
                }
                let basis = hom_space(alg, x.term(i), y.term(n + i));
                if basis.dim() == 0 {
                    continue;
                }
                let d = basis.dim();
                piece.blocks.push(HomBlock { source_degree: i, offset: piece.dim, basis });
                piece.dim += d;
            }
            piece
        })
        .collect();
    let mut g = GradedHom { source: x.clone(), target: y.clone(), lo, pieces, diffs: Vec::new(), empty: HomPiece::default() };
    g.diffs = (lo..hi).map(|n| g.build_diff(n, field)).collect();
    g
}

impl GradedHom {
    fn build_diff(&self, n: i32, field: Field) -> Matrix {
        let src = self.piece(n);
        let tgt = self.piece(n + 1);
        let sign = field.neg(&field.sign(n as i64));
        let mut cols = Vec::with_capacity(src.dim);
        for block in &src.blocks {
            let i = block.source_degree;
            for f in block.basis.maps() {
                let mut col = vec![field.zero(); tgt.dim];
                // d_Y f lands in the block with source degree i
                if let Some(b) = tgt.block(i) {
                    let m = self.target.diff(n + i).mul(f);
                    place(&mut col, b, &m);
                }
                // -(-1)^n f d_X lands in the block with source degree i-1
                if let Some(b) = tgt.block(i - 1) {
                    let m = f.mul(&self.source.diff(i - 1)).scale(&sign);
                    place(&mut col, b, &m);
                }
                cols.push(col);
            }
        }
        Matrix::from_columns(field, tgt.dim, &cols)
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.pieces.len() as i32 - 1
    }

    pub fn piece(&self, n: i32) -> &HomPiece {
        if n < self.lo || n > self.hi() {
            return &self.empty;
        }
        &self.pieces[(n - self.lo) as usize]
    }

    pub fn dim(&self, n: i32) -> usize {
        self.piece(n).dim
    }

    /// `d^n: Hom^n -> Hom^{n+1}`.
    pub fn diff(&self, n: i32) -> Matrix {
        if n >= self.lo && n < self.hi() {
            return self.diffs[(n - self.lo) as usize].clone();
        }
        Matrix::zeros(self.field(), self.dim(n + 1), self.dim(n))
    }

    pub fn cohomology_space(&self, n: i32) -> CohomologySpace {
        CohomologySpace::new(self.field(), self.dim(n), &self.diff(n - 1), &self.diff(n))
    }

    pub fn cohomology_dim(&self, n: i32) -> usize {
        self.cohomology_space(n).dim()
    }

    /// The component `X^i -> Y^{n+i}` of the degree-`n` element with the given coordinates.
    pub fn component(&self, n: i32, coords: &[Scalar], i: i32) -> Matrix {
        let f = self.field();
        match self.piece(n).block(i) {
            Some(b) => b.basis.element(f, &coords[b.offset..b.offset + b.basis.dim()]),
            None => Matrix::zeros(f, self.target.dim(n + i), self.source.dim(i)),
        }
    }

    /// Coordinates of the degree-`n` element with components `comp(i)`.
    /// Each component must be A-linear.
    pub fn coords_of(&self, n: i32, mut comp: impl FnMut(i32) -> Matrix) -> Vector {
        let piece = self.piece(n);
        let mut v = vec![self.field().zero(); piece.dim];
        for b in &piece.blocks {
            place(&mut v, b, &comp(b.source_degree));
        }
        v
    }

    /// Coordinates of `a ∘ b` in `self`, where `a ∈ outer^p` and `b ∈ inner^q`.
    pub fn compose(&self, outer: &GradedHom, p: i32, a: &[Scalar], inner: &GradedHom, q: i32, b: &[Scalar]) -> Vector {
        self.coords_of(p + q, |i| outer.component(p, a, q + i).mul(&inner.component(q, b, i)))
    }

    /// The chain map given by a degree-0 cocycle.
    pub fn chain_map(&self, coords: &[Scalar]) -> ChainMap {
        let (s, t) = (&self.source, &self.target);
        ChainMap::from_fn(s.clone(), t.clone(), |i| self.component(0, coords, i))
            .expect("degree-0 cocycles are chain maps")
    }

    /// Coordinates of a chain map as a degree-0 element.
    pub fn coords_of_map(&self, f: &ChainMap) -> Vector {
        self.coords_of(0, |i| f.get(i))
    }
}

fn place(col: &mut [Scalar], block: &HomBlock, m: &Matrix) {
    let c = block.basis.coords(m);
    for (k, x) in c.into_iter().enumerate() {
        col[block.offset + k] = x;
    }
}

/// `dim Hom_{D(A)}(X, Y[n])` for a bounded complex of projectives `X`.
pub fn derived_hom_dim(x: &Complex, y: &Complex, n: i32) -> Result<usize> {
    if let Some(d) = x.first_non_projective() {
        return Err(Error::NotProjective(d));
    }
    Ok(hom_complex(x, y).cohomology_dim(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cone, minimize, proj_replacement};
    use crate::module::Module;
    use crate::testutil::*;
    use proptest::prelude::*;

    #[test]
    fn differential_squares_to_zero() {
        let a = a2();
        let x = p2_to_p1(&a);
        let u = Complex::direct_sum(a.clone(), &[&x, &Complex::free(a.clone()).shift(1)]);
        let h = hom_complex(&u, &x);
        for n in h.lo() - 1..=h.hi() {
            assert!(h.diff(n + 1).mul(&h.diff(n)).is_zero(), "d^2 in degree {n}");
        }
    }

    #[test]
    fn free_module_is_yoneda() {
        let a = a2();
        let y = Complex::concentrated(a.clone(), Module::simple(&a, 0).unwrap(), 0);
        let y = Complex::direct_sum(a.clone(), &[&y, &p2_to_p1(&a).shift(-1)]);
        let h = hom_complex(&Complex::free(a.clone()), &y);
        for n in -3..3 {
            assert_eq!(h.cohomology_dim(n), y.cohomology_dim(n));
        }
    }

    #[test]
    fn single_projective_endomorphisms() {
        let a = a2();
        let p = Complex::concentrated(a.clone(), Module::projective(&a, 0).unwrap(), 0);
        let h = hom_complex(&p, &p);
        assert_eq!((h.lo(), h.hi()), (0, 0));
        assert_eq!(h.dim(0), 1);
    }

    #[test]
    fn graded_dimensions_are_componentwise_sums() {
        let a = a2();
        let x = p2_to_p1(&a);
        let h = hom_complex(&x, &x);
        let hd = |i: i32, j: i32| hom_space(&a, x.term(i), x.term(j)).dim();
        assert_eq!(h.dim(0), hd(-1, -1) + hd(0, 0));
        assert_eq!(h.dim(1), hd(-1, 0));
        assert_eq!(h.dim(-1), hd(0, -1));
        assert_eq!((h.lo(), h.hi()), (-1, 1));
    }

    /// `dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>` for `1 -> 2`.
    fn ext1_by_euler_form(a: &Algebra, m: &Module, n: &Module) -> usize {
        let (x, y) = (m.dimension_vector(a), n.dimension_vector(a));
        let euler = (x[0] * y[0] + x[1] * y[1]) as i64 - (x[0] * y[1]) as i64;
        (hom_space(a, m, n).dim() as i64 - euler) as usize
    }

    use crate::algebra::Algebra;

    #[test]
    fn ext_between_indecomposables() {
        let a = a2();
        let p1 = Module::projective(&a, 0).unwrap().untagged();
        let s1 = Module::simple(&a, 0).unwrap();
        let s2 = Module::simple(&a, 1).unwrap();
        let inds = [p1, s1, s2];
        for m in &inds {
            let (pm, _) = proj_replacement(&Complex::concentrated(a.clone(), m.clone(), 0), 16).unwrap();
            for n in &inds {
                let y = Complex::concentrated(a.clone(), n.clone(), 0);
                assert_eq!(derived_hom_dim(&pm, &y, 1).unwrap(), ext1_by_euler_form(&a, m, n));
                assert_eq!(derived_hom_dim(&pm, &y, 0).unwrap(), hom_space(&a, m, n).dim());
                assert_eq!(derived_hom_dim(&pm, &y, 2).unwrap(), 0);
            }
        }
    }

    #[test]
    fn rejects_non_projective_source() {
        let a = a2();
        let s = Complex::concentrated(a.clone(), Module::simple(&a, 0).unwrap(), 3);
        assert!(matches!(derived_hom_dim(&s, &s, 0), Err(Error::NotProjective(3))));
    }

    #[test]
    fn composition_matches_matrix_product() {
        let a = a2();
        let x = p2_to_p1(&a);
        let f = chain_map(&x, &x, &[2, -1, 3]);
        let g = chain_map(&x, &x, &[1, 1, -2]);
        let h = hom_complex(&x, &x);
        let fc = h.coords_of_map(&f);
        let gc = h.coords_of_map(&g);
        let prod = h.compose(&h, 0, &gc, &h, 0, &fc);
        assert_eq!(prod, h.coords_of_map(&g.compose(&f)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn euler_characteristic(x in arb_complex()) {
            prop_assert_eq!(x.euler_characteristic(), x.cohomology_euler_characteristic());
        }

        #[test]
        fn cone_long_exact_sequence(x in arb_complex(), y in arb_complex(), seed in prop::collection::vec(-3i64..4, 1..6)) {
            let f = chain_map(&x, &y, &seed);
            let (c, _) = cone(&f);
            for n in -5..5 {
                let hn = f.induced_map(n);
                let hn1 = f.induced_map(n + 1);
                let coker = hn.rows() - hn.rank();
                let ker = hn1.cols() - hn1.rank();
                prop_assert_eq!(c.cohomology_dim(n), coker + ker);
            }
        }

        #[test]
        fn minimize_preserves_homotopy_type(x in arb_complex(), y in arb_complex()) {
            let m = minimize(&x);
            prop_assert!(m.total_dim() <= x.total_dim());
            prop_assert_eq!(minimize(&m).total_dim(), m.total_dim());
            for n in -4..5 {
                prop_assert_eq!(m.cohomology_dim(n), x.cohomology_dim(n));
                prop_assert_eq!(derived_hom_dim(&m, &y, n).unwrap(), derived_hom_dim(&x, &y, n).unwrap());
                prop_assert_eq!(derived_hom_dim(&y, &m, n).unwrap(), derived_hom_dim(&y, &x, n).unwrap());
            }
        }

        #[test]
        fn shift_reindexes_cohomology(x in arb_complex(), k in -3i32..4) {
            for n in -5..5 {
                prop_assert_eq!(x.shift(k).cohomology_dim(n), x.cohomology_dim(n + k));
            }
        }

        #[test]
        fn derived_hom_shift_invariance(x in arb_complex(), y in arb_complex(), k in -2i32..3) {
            for n in -3..4 {
                prop_assert_eq!(
                    derived_hom_dim(&x, &y, n).unwrap(),
                    derived_hom_dim(&x.shift(k), &y.shift(k), n).unwrap()
                );
            }
        }

        #[test]
        fn derived_hom_ignores_contractible_summands(x in arb_complex(), y in arb_complex(), z in arb_complex()) {
            let (c, _) = cone(&crate::complex::ChainMap::identity(&z));
            let y2 = Complex::direct_sum(y.algebra().clone(), &[&y, &c]);
            for n in -3..4 {
                prop_assert_eq!(derived_hom_dim(&x, &y, n).unwrap(), derived_hom_dim(&x, &y2, n).unwrap());
            }
        }

        #[test]
        fn self_extensions_vanish_beyond_the_width(x in arb_complex()) {
            if let Some((a, b)) = x.support() {
                let w = b - a;
                for i in [w + 1, w + 2, -w - 1, -w - 2] {
                    prop_assert_eq!(derived_hom_dim(&x, &x, i).unwrap(), 0);
                }
            }
        }

        #[test]
        fn replacement_is_a_quasi_iso(x in arb_complex()) {
            let s = Complex::concentrated(x.algebra().clone(), Module::simple(x.algebra(), 0).unwrap(), 0);
            let y = Complex::direct_sum(x.algebra().clone(), &[&x, &s]);
            let (p, map) = proj_replacement(&y, 16).unwrap();
            prop_assert!(p.is_projective());
            prop_assert!(map.is_quasi_iso());
        }
    }
}
