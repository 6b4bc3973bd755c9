//! Semifree resolutions of right dg-modules over non-positive dg-algebras,
//! truncated at a generator-degree cutoff, and the derived tensor product and
//! derived Hom computed from them inside a degree window.
//!
//! Cutoffs: `P_c ⊂ P` is the dg-submodule on generators of degree `>= c`, and
//! `P / P_c` vanishes in degrees `>= c`. For `P ⊗_B U` with `U` in degrees
//! `<= u_hi` the quotient lives in degrees `<= c - 1 + u_hi`, so the cohomology
//! of `P_c ⊗ U` is exact in degrees `> c + u_hi`. For `Hom_B(P, N)` with `N`
//! in degrees `>= n_lo` the quotient part lives in degrees `> n_lo - c`, so the
//! cohomology is exact in degrees `< n_lo - c`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap, CohomologySpace, Complex};
use crate::dg::{DgAlgebra, DgModule, Side};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hom::GradedHom;
use crate::matrix::{axpy, unit_vector, Matrix, Vector};
use crate::module::Module;

pub const DEFAULT_GENERATOR_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub lo: i32,
    pub hi: i32,
}

impl DegreeWindow {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Window { lo, hi, reason: "lower end exceeds upper end".into() });
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn contains(&self, n: i32) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi
    }
}

impl Default for DegreeWindow {
    fn default() -> Self {
        DegreeWindow { lo: -4, hi: 4 }
    }
}

/// A free generator `x` with `d x` stored in `P^{g+1}` and its augmentation in `M^g`.
#[derive(Clone, Debug)]
pub struct Generator {
    pub degree: i32,
    pub boundary: Vector,
    pub image: Vector,
}

/// `(generator, offset, dim)` blocks of a graded piece.
type Layout = Vec<(usize, usize, usize)>;

/// A semifree right dg-module `P = ⊕_j x_j B` with augmentation `P -> M`.
#[derive(Clone, Debug)]
pub struct SemifreeModule {
    algebra: Arc<DgAlgebra>,
    target: DgModule,
    gens: Vec<Generator>,
    cutoff: i32,
}

impl SemifreeModule {
    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    pub fn target(&self) -> &DgModule {
        &self.target
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn cutoff(&self) -> i32 {
        self.cutoff
    }

    fn field(&self) -> Field {
        self.algebra.field()
    }

    /// Generator counts per degree, highest degree first.
    pub fn generator_counts(&self) -> Vec<(i32, usize)> {
        let mut out: Vec<(i32, usize)> = Vec::new();
        for g in &self.gens {
            match out.last_mut() {
                Some((d, c)) if *d == g.degree => *c += 1,
                _ => out.push((g.degree, 1)),
            }
        }
        out
    }

    /// Range of module degrees where `P` can be nonzero.
    pub fn range(&self) -> Option<(i32, i32)> {
        let top = self.gens.iter().map(|g| g.degree).max()?;
        let bottom = self.gens.iter().map(|g| g.degree).min()? + self.algebra.lo();
        Some((bottom, top))
    }

    fn layout(&self, n: i32) -> Layout {
        layout(&self.algebra, &self.gens, n)
    }

    pub fn dim(&self, n: i32) -> usize {
        self.layout(n).iter().map(|b| b.2).sum()
    }

    /// `d_P^n`.
    pub fn diff(&self, n: i32) -> Matrix {
        diff(&self.algebra, &self.gens, n)
    }

    /// `ε^n: P^n -> M^n`.
    pub fn augmentation(&self, n: i32) -> Matrix {
        augmentation(&self.algebra, &self.gens, &self.target, n)
    }

    /// The blocks of `d x_j` as `(j', c)` with `c ∈ B^{g_j + 1 - g_j'}`.
    pub fn boundary_parts(&self, j: usize) -> Vec<(usize, Vector)> {
        let g = self.gens[j].degree;
        self.layout(g + 1)
            .into_iter()
            .map(|(jj, off, d)| (jj, self.gens[j].boundary[off..off + d].to_vec()))
            .collect()
    }

    /// Cohomology dimensions of the augmentation cone over `[lo, hi]`.
    pub fn cone_cohomology(&self, lo: i32, hi: i32) -> Vec<(i32, usize)> {
        (lo..=hi)
            .map(|k| {
                let (d_in, d_out, amb) = cone_maps(&self.algebra, &self.gens, &self.target, k);
                (k, CohomologySpace::new(self.field(), amb, &d_in, &d_out).dim())
            })
            .collect()
    }

    /// Checks `d² = 0`, triangularity, and that the augmentation is a chain map.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (j, g) in self.gens.iter().enumerate() {
            for (jj, c) in self.boundary_parts(j) {
                if self.gens[jj].degree <= g.degree && c.iter().any(|x| !x.is_zero()) {
                    return Err(format!("generator {j} has a boundary term on generator {jj} of lower degree"));
                }
            }
        }
        let Some((lo, hi)) = self.range() else { return Ok(()) };
        for n in lo - 1..=hi {
            if !self.diff(n + 1).mul(&self.diff(n)).is_zero() {
                return Err(format!("d^2 is not zero in degree {n}"));
            }
            if self.augmentation(n + 1).mul(&self.diff(n)) != self.target.diff(n).mul(&self.augmentation(n)) {
                return Err(format!("augmentation does not commute with d in degree {n}"));
            }
        }
        Ok(())
    }
}

fn layout(b: &DgAlgebra, gens: &[Generator], n: i32) -> Layout {
    let mut out = Vec::new();
    let mut off = 0;
    for (j, g) in gens.iter().enumerate() {
        let d = b.dim(n - g.degree);
        if d > 0 {
            out.push((j, off, d));
            off += d;
        }
    }
    out
}

fn piece_dim(l: &Layout) -> usize {
    l.iter().map(|b| b.2).sum()
}

fn find(l: &Layout, j: usize) -> Option<(usize, usize)> {
    l.iter().find(|b| b.0 == j).map(|b| (b.1, b.2))
}

fn diff(b: &DgAlgebra, gens: &[Generator], n: i32) -> Matrix {
    let f = b.field();
    let src = layout(b, gens, n);
    let tgt = layout(b, gens, n + 1);
    let rows = piece_dim(&tgt);
    let mut cols = Vec::with_capacity(piece_dim(&src));
    for &(j, _, d) in &src {
        let g = gens[j].degree;
        let p = n - g;
        let bparts = layout(b, gens, g + 1);
        for k in 0..d {
            let e = unit_vector(f, d, k);
            let mut col = vec![f.zero(); rows];
            // d(x_j) · b
            for &(jj, off, dd) in &bparts {
                let c = &gens[j].boundary[off..off + dd];
                let q = g + 1 - gens[jj].degree;
                let prod = b.mul(q, c, p, &e);
                if let Some((toff, tdim)) = find(&tgt, jj) {
                    debug_assert_eq!(tdim, prod.len());
                    axpy(f, &mut col[toff..toff + tdim], &f.one(), &prod);
                }
            }
            // (-1)^g x_j d(b)
            if let Some((toff, tdim)) = find(&tgt, j) {
                let db = b.diff(p).mul_vec(&e);
                axpy(f, &mut col[toff..toff + tdim], &f.sign(g as i64), &db);
            }
            cols.push(col);
        }
    }
    Matrix::from_columns(f, rows, &cols)
}

fn augmentation(b: &DgAlgebra, gens: &[Generator], m: &DgModule, n: i32) -> Matrix {
    let f = b.field();
    let src = layout(b, gens, n);
    let mut cols = Vec::with_capacity(piece_dim(&src));
    for &(j, _, d) in &src {
        let g = gens[j].degree;
        for k in 0..d {
            let act = m.act(n - g, &unit_vector(f, d, k), g);
            cols.push(act.mul_vec(&gens[j].image));
        }
    }
    Matrix::from_columns(f, m.dim(n), &cols)
}

/// `(d_in, d_out, dim C^k)` for the augmentation cone at degree `k`, with
/// `C^k = P^{k+1} ⊕ M^k` and differential `[[-d_P, 0], [ε, d_M]]`.
fn cone_maps(b: &DgAlgebra, gens: &[Generator], m: &DgModule, k: i32) -> (Matrix, Matrix, usize) {
    let f = b.field();
    let block = |n: i32| -> Matrix {
        let p_src = piece_dim(&layout(b, gens, n + 1));
        let p_tgt = piece_dim(&layout(b, gens, n + 2));
        let mut d = Matrix::zeros(f, p_tgt + m.dim(n + 1), p_src + m.dim(n));
        d.set_block(0, 0, &diff(b, gens, n + 1).neg());
        d.set_block(p_tgt, 0, &augmentation(b, gens, m, n + 1));
        d.set_block(p_tgt, p_src, &m.diff(n));
        d
    };
    let amb = piece_dim(&layout(b, gens, k + 1)) + m.dim(k);
    (block(k - 1), block(k), amb)
}

/// Semifree resolution of `m` with generators in degrees `>= cutoff`.
pub fn semifree_resolve(m: &DgModule, cutoff: i32, cap: usize) -> Result<SemifreeModule> {
    let b = m.algebra().clone();
    if let Some(n) = (1..=b.hi()).find(|&n| b.dim(n) > 0) {
        return Err(Error::PositiveDegree(n));
    }
    if m.side() != Side::Right {
        return Err(Error::Precondition("semifree resolutions are built for right dg-modules".into()));
    }
    let f = b.field();
    let mut gens: Vec<Generator> = Vec::new();
    if let Some((_, top)) = m.support() {
        for k in (cutoff..=top).rev() {
            // one generic class at a time, so each generator kills the
            // H^0(B)-submodule it generates
            loop {
                let (d_in, d_out, amb) = cone_maps(&b, &gens, m, k);
                let h = CohomologySpace::new(f, amb, &d_in, &d_out);
                if h.dim() == 0 {
                    break;
                }
                if gens.len() >= cap {
                    return Err(Error::GeneratorCap { cap, degree: k });
                }
                let mut z = vec![f.zero(); amb];
                for r in 0..h.dim() {
                    axpy(f, &mut z, &f.from_i64(r as i64 + 1), &h.rep(r));
                }
                let p1 = piece_dim(&layout(&b, &gens, k + 1));
                let (zp, zm) = z.split_at(p1);
                gens.push(Generator { degree: k, boundary: zp.iter().map(|x| f.neg(x)).collect(), image: zm.to_vec() });
            }
        }
    }
    Ok(SemifreeModule { algebra: b, target: m.clone(), gens, cutoff })
}

fn same_algebra(x: &DgAlgebra, y: &DgAlgebra) -> Result<()> {
    if x != y {
        return Err(Error::AlgebraMismatch("dg-modules live over different dg-algebras".into()));
    }
    Ok(())
}

/// `P ⊗_B U` together with the resolution it was built from.
#[derive(Clone, Debug)]
pub struct DerivedTensor {
    pub complex: Complex,
    pub resolution: SemifreeModule,
    pub window: DegreeWindow,
    left: DgModule,
}

impl DerivedTensor {
    fn layout(&self, n: i32) -> Layout {
        tensor_layout(&self.resolution.gens, &self.left, n)
    }

    /// The evaluation `x_j ⊗ u ↦ ε(x_j)(u)` into `X`, where the resolved module
    /// has the coordinates of `hom = Hom•(U, X)`.
    pub fn evaluation(&self, hom: &GradedHom) -> Result<ChainMap> {
        let images: Vec<Vector> = self.resolution.gens.iter().map(|g| g.image.clone()).collect();
        self.evaluation_along(hom, &images)
    }

    /// The map `x_j ⊗ u ↦ φ(x_j)(u)` for a `B`-linear `φ: P -> Hom•(U, X)`
    /// given by the images of the generators.
    pub fn evaluation_along(&self, hom: &GradedHom, images: &[Vector]) -> Result<ChainMap> {
        let x = hom.target();
        let f = x.field();
        let t = &self.complex;
        let gens = &self.resolution.gens;
        ChainMap::from_fn(t.clone(), x.clone(), |n| {
            let blocks: Vec<Matrix> = self
                .layout(n)
                .iter()
                .map(|&(j, _, _)| hom.component(gens[j].degree, &images[j], n - gens[j].degree))
                .collect();
            if blocks.is_empty() {
                return Matrix::zeros(f, x.dim(n), t.dim(n));
            }
            let refs: Vec<&Matrix> = blocks.iter().collect();
            Matrix::hstack(f, x.dim(n), &refs)
        })
    }
}

fn tensor_layout(gens: &[Generator], u: &DgModule, n: i32) -> Layout {
    let mut out = Vec::new();
    let mut off = 0;
    for (j, g) in gens.iter().enumerate() {
        let d = u.dim(n - g.degree);
        if d > 0 {
            out.push((j, off, d));
            off += d;
        }
    }
    out
}

/// `M ⊗^L_B U`, exact on cohomology in the window.
pub fn derived_tensor(m: &DgModule, u: &DgModule, w: DegreeWindow) -> Result<DerivedTensor> {
    let Some((_, u_hi)) = u.support() else {
        return derived_tensor_with_cutoff(m, u, w, w.lo);
    };
    derived_tensor_with_cutoff(m, u, w, w.lo - u_hi - 1)
}

/// [`derived_tensor`] with an explicit generator cutoff.
pub fn derived_tensor_with_cutoff(m: &DgModule, u: &DgModule, w: DegreeWindow, cutoff: i32) -> Result<DerivedTensor> {
    same_algebra(m.algebra(), u.algebra())?;
    if u.side() != Side::Left {
        return Err(Error::Precondition("the second tensor factor must be a left dg-module".into()));
    }
    let outer = u.outer().ok_or_else(|| Error::Precondition("the left factor needs an outer module structure".into()))?;
    if let Some((_, u_hi)) = u.support() {
        if cutoff + u_hi >= w.lo {
            return Err(Error::Window { lo: w.lo, hi: w.hi, reason: format!("cutoff {cutoff} is too high for exactness") });
        }
    }
    let a = outer.algebra.clone();
    let f = a.field();
    let p = semifree_resolve(m, cutoff, DEFAULT_GENERATOR_CAP)?;
    let b = p.algebra.clone();
    let gens = &p.gens;
    let (Some(_), Some((ulo, uhi))) = (p.range(), u.support()) else {
        let complex = Complex::zero(a);
        return Ok(DerivedTensor { complex, resolution: p, window: w, left: u.clone() });
    };
    let top = gens.iter().map(|g| g.degree).max().unwrap();
    let bottom = gens.iter().map(|g| g.degree).min().unwrap();
    let (lo, hi) = (bottom + ulo, top + uhi);
    let terms: Vec<Module> = (lo..=hi)
        .map(|n| {
            let parts: Vec<Module> =
                tensor_layout(gens, u, n).iter().map(|&(j, _, _)| u.outer_term(n - gens[j].degree).unwrap()).collect();
            let refs: Vec<&Module> = parts.iter().collect();
            Module::direct_sum(&a, &refs)
        })
        .collect();
    let diffs: Vec<Matrix> = (lo..hi)
        .map(|n| {
            let src = tensor_layout(gens, u, n);
            let tgt = tensor_layout(gens, u, n + 1);
            let rows = piece_dim(&tgt);
            let mut d = Matrix::zeros(f, rows, piece_dim(&src));
            for &(j, off, _) in &src {
                let g = gens[j].degree;
                let j_parts = layout(&b, gens, g + 1);
                // Σ x_j' ⊗ c_j' · u
                for &(jj, boff, bd) in &j_parts {
                    if let Some((toff, _)) = find(&tgt, jj) {
                        let c = &gens[j].boundary[boff..boff + bd];
                        let q = g + 1 - gens[jj].degree;
                        d.set_block(toff, off, &u.act(q, c, n - g));
                    }
                }
                // (-1)^g x_j ⊗ d u
                if let Some((toff, _)) = find(&tgt, j) {
                    let du = u.diff(n - g).scale(&f.sign(g as i64));
                    let cur = d.block(toff, off, du.rows(), du.cols());
                    d.set_block(toff, off, &cur.add(&du));
                }
            }
            d
        })
        .collect();
    let complex = Complex::new(a, lo, terms, diffs)?;
    Ok(DerivedTensor { complex, resolution: p, window: w, left: u.clone() })
}

/// `Hom•_B(P, N)` for a semifree `P`: degree `k` is `⊕_j N^{g_j + k}`.
#[derive(Clone, Debug)]
pub struct SemifreeHom {
    pub resolution: SemifreeModule,
    pub target: DgModule,
}

impl SemifreeHom {
    fn layout(&self, k: i32) -> Layout {
        let mut out = Vec::new();
        let mut off = 0;
        for (j, g) in self.resolution.gens.iter().enumerate() {
            let d = self.target.dim(g.degree + k);
            if d > 0 {
                out.push((j, off, d));
                off += d;
            }
        }
        out
    }

    pub fn dim(&self, k: i32) -> usize {
        piece_dim(&self.layout(k))
    }

    /// `(dφ)(x_j) = d_N φ(x_j) - (-1)^k Σ φ(x_j') c_j'`.
    pub fn diff(&self, k: i32) -> Matrix {
        let f = self.target.field();
        let src = self.layout(k);
        let tgt = self.layout(k + 1);
        let mut d = Matrix::zeros(f, piece_dim(&tgt), piece_dim(&src));
        let sign = f.neg(&f.sign(k as i64));
        for &(j, toff, _) in &tgt {
            let g = self.resolution.gens[j].degree;
            if let Some((soff, _)) = find(&src, j) {
                d.set_block(toff, soff, &self.target.diff(g + k));
            }
            for (jj, c) in self.resolution.boundary_parts(j) {
                if let Some((soff, _)) = find(&src, jj) {
                    let q = g + 1 - self.resolution.gens[jj].degree;
                    let gj = self.resolution.gens[jj].degree;
                    let m = self.target.act(q, &c, gj + k).scale(&sign);
                    let cur = d.block(toff, soff, m.rows(), m.cols());
                    d.set_block(toff, soff, &cur.add(&m));
                }
            }
        }
        d
    }

    pub fn cohomology_space(&self, k: i32) -> CohomologySpace {
        CohomologySpace::new(self.target.field(), self.dim(k), &self.diff(k - 1), &self.diff(k))
    }

    /// Coordinates of the degree-`k` map with `φ(x_j) = value(j)`.
    pub fn coords_of(&self, k: i32, mut value: impl FnMut(usize) -> Vector) -> Vector {
        let f = self.target.field();
        let l = self.layout(k);
        let mut v = vec![f.zero(); piece_dim(&l)];
        for (j, off, d) in l {
            let x = value(j);
            debug_assert_eq!(x.len(), d);
            v[off..off + d].clone_from_slice(&x);
        }
        v
    }
}

/// `Hom•_B(P, N)` with the cutoff chosen so that degrees `<= w.hi` are exact.
pub fn semifree_hom(m: &DgModule, n: &DgModule, w: DegreeWindow) -> Result<SemifreeHom> {
    let n_lo = n.support().map(|s| s.0).unwrap_or(0);
    semifree_hom_with_cutoff(m, n, w, n_lo - w.hi - 1)
}

pub fn semifree_hom_with_cutoff(m: &DgModule, n: &DgModule, w: DegreeWindow, cutoff: i32) -> Result<SemifreeHom> {
    same_algebra(m.algebra(), n.algebra())?;
    if n.side() != Side::Right {
        return Err(Error::Precondition("Hom over B is taken between right dg-modules".into()));
    }
    if let Some((n_lo, _)) = n.support() {
        if w.hi >= n_lo - cutoff {
            return Err(Error::Window { lo: w.lo, hi: w.hi, reason: format!("cutoff {cutoff} is too high for exactness") });
        }
    }
    let p = semifree_resolve(m, cutoff, DEFAULT_GENERATOR_CAP)?;
    Ok(SemifreeHom { resolution: p, target: n.clone() })
}

/// `dim Hom_{D(B)}(M, N[k])` for `k` in the window.
pub fn derived_hom_over_b(m: &DgModule, n: &DgModule, k: i32, w: DegreeWindow) -> Result<usize> {
    if !w.contains(k) {
        return Err(Error::Window { lo: w.lo, hi: w.hi, reason: format!("degree {k} lies outside the window") });
    }
    Ok(semifree_hom(m, n, w)?.cohomology_space(k).dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::dg::{dg_end, dg_hom_module, dg_left_module, smart_truncate};
    use crate::hom::{derived_hom_dim, hom_complex};
    use crate::testutil::*;
    use proptest::prelude::*;

    fn silt2(a: &Arc<Algebra>) -> Complex {
        let p1 = Complex::concentrated(a.clone(), Module::projective(a, 0).unwrap(), 0);
        let p2 = Complex::concentrated(a.clone(), Module::projective(a, 1).unwrap(), 0);
        Complex::direct_sum(a.clone(), &[&p2, &p1.shift(1)])
    }

    fn regular(b: &Arc<DgAlgebra>) -> DgModule {
        let f = b.field();
        let (lo, hi) = (b.lo(), b.hi());
        let dims = (lo..=hi).map(|n| b.dim(n)).collect();
        let diffs = (lo..hi).map(|n| b.diff(n)).collect();
        let action = (0..b.total_dim())
            .map(|y| {
                let p = b.degree_of(y);
                let ey = b.basis_vector(y);
                (lo..=hi)
                    .map(|m| {
                        let cols: Vec<Vector> = (0..b.dim(m)).map(|k| b.mul(m, &unit_vector(f, b.dim(m), k), p, &ey)).collect();
                        Matrix::from_columns(f, b.dim(m + p), &cols)
                    })
                    .collect()
            })
            .collect();
        DgModule::new(b.clone(), Side::Right, lo, dims, diffs, action, None).unwrap()
    }

    struct Setup {
        a: Arc<Algebra>,
        u: Complex,
        t: crate::dg::Truncation,
        left: DgModule,
        end: crate::dg::DgEnd,
    }

    fn setup(u: Complex) -> Setup {
        let a = u.algebra().clone();
        let end = dg_end(&u).unwrap();
        let t = smart_truncate(&end.algebra);
        let left = dg_left_module(&end).restrict(&t).unwrap();
        Setup { a, u, t, left, end }
    }

    #[test]
    fn regular_module_has_one_generator() {
        let s = setup(silt2(&a2()));
        let r = regular(&s.t.algebra);
        r.check_invariants().unwrap();
        for c in [-3, -1, 0] {
            let p = semifree_resolve(&r, c, 100).unwrap();
            assert_eq!(p.generator_counts(), vec![(0, 1)]);
            p.check_invariants().unwrap();
            for n in -1..=0 {
                let aug = p.augmentation(n);
                assert!(aug.rows() == aug.cols() && aug.rank() == aug.rows());
            }
        }
    }

    #[test]
    fn zero_module_has_no_generators() {
        let s = setup(silt2(&a2()));
        let z = DgModule::zero(s.t.algebra.clone(), Side::Right);
        assert!(semifree_resolve(&z, -4, 100).unwrap().generators().is_empty());
    }

    #[test]
    fn positive_part_is_rejected() {
        let a = a2();
        let p1 = Module::projective(&a, 0).unwrap();
        let p2 = Module::projective(&a, 1).unwrap();
        let inc = crate::module::hom_space(&a, &p2, &p1).maps()[0].clone();
        let u = Complex::new(a.clone(), 0, vec![p2, p1], vec![inc]).unwrap();
        let end = dg_end(&u).unwrap();
        let m = dg_hom_module(&end, &u).unwrap();
        assert!(matches!(semifree_resolve(&m, 0, 10), Err(Error::PositiveDegree(1))));
    }

    #[test]
    fn cone_is_acyclic_above_the_cutoff() {
        let s = setup(silt2(&a2()));
        for v in 0..2 {
            let x = Complex::concentrated(s.a.clone(), Module::simple(&s.a, v).unwrap(), 0);
            let m = dg_hom_module(&s.end, &x).unwrap().restrict(&s.t).unwrap();
            let p = semifree_resolve(&m, -6, DEFAULT_GENERATOR_CAP).unwrap();
            p.check_invariants().unwrap();
            for (k, d) in p.cone_cohomology(-5, 3) {
                assert_eq!(d, 0, "cone cohomology in degree {k}");
            }
        }
    }

    #[test]
    fn generator_cap_is_reported() {
        let s = setup(silt2(&a2()));
        let x = Complex::concentrated(s.a.clone(), Module::simple(&s.a, 0).unwrap(), 0);
        let m = dg_hom_module(&s.end, &x).unwrap().restrict(&s.t).unwrap();
        assert!(matches!(semifree_resolve(&m, -20, 0), Err(Error::GeneratorCap { cap: 0, .. })));
    }

    #[test]
    fn unit_law() {
        let s = setup(silt2(&a2()));
        let r = regular(&s.t.algebra);
        let w = DegreeWindow::new(-3, 3).unwrap();
        let t = derived_tensor(&r, &s.left, w).unwrap();
        for n in w.degrees() {
            assert_eq!(t.complex.cohomology_dim(n), s.u.cohomology_dim(n));
        }
        let h = hom_complex(&s.u, &s.u);
        let m = dg_hom_module(&s.end, &s.u).unwrap().restrict(&s.t).unwrap();
        let t = derived_tensor(&m, &s.left, w).unwrap();
        let ev = t.evaluation(&h).unwrap();
        assert!(ev.is_quasi_iso_on(w.lo, w.hi));
    }

    #[test]
    fn hom_over_b_matches_hom_over_a() {
        for u in [silt2(&a2()), tilt_complex()] {
            let s = setup(u);
            let m = dg_hom_module(&s.end, &s.u).unwrap().restrict(&s.t).unwrap();
            let w = DegreeWindow::new(-2, 2).unwrap();
            for k in w.degrees() {
                assert_eq!(derived_hom_over_b(&m, &m, k, w).unwrap(), derived_hom_dim(&s.u, &s.u, k).unwrap());
            }
            let r = regular(&s.t.algebra);
            assert_eq!(derived_hom_over_b(&r, &r, 0, w).unwrap(), crate::dg::dg_cohomology(&s.t.algebra, 0));
            assert_eq!(derived_hom_over_b(&r, &m, 0, w).unwrap(), m.cohomology_dim(0));
        }
    }

    fn tilt_complex() -> Complex {
        let a = a2();
        let p1 = Module::projective(&a, 0).unwrap();
        let p2 = Module::projective(&a, 1).unwrap();
        let inc = crate::module::hom_space(&a, &p2, &p1).maps()[0].clone();
        let d = Matrix::vstack(a.field(), 1, &[&Matrix::zeros(a.field(), 2, 1), &inc]);
        let sum = Module::direct_sum(&a, &[&p1, &p1]);
        Complex::new(a.clone(), -1, vec![p2, sum], vec![d]).unwrap()
    }

    #[test]
    fn window_errors() {
        assert!(DegreeWindow::new(2, 1).is_err());
        let s = setup(silt2(&a2()));
        let r = regular(&s.t.algebra);
        let w = DegreeWindow::new(-1, 1).unwrap();
        assert!(matches!(derived_hom_over_b(&r, &r, 5, w), Err(Error::Window { .. })));
        assert!(matches!(derived_tensor_with_cutoff(&r, &s.left, w, 0), Err(Error::Window { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn margin_enlargement_is_stable(v in 0usize..2, shift in -1i32..2, extra in 1i32..4) {
            let s = setup(silt2(&a2()));
            let x = Complex::concentrated(s.a.clone(), Module::simple(&s.a, v).unwrap(), shift);
            let m = dg_hom_module(&s.end, &x).unwrap().restrict(&s.t).unwrap();
            let w = DegreeWindow::new(-2, 2).unwrap();
            let u_hi = s.left.support().unwrap().1;
            let base = derived_tensor(&m, &s.left, w).unwrap();
            let wider = derived_tensor_with_cutoff(&m, &s.left, w, w.lo - u_hi - 1 - extra).unwrap();
            for n in w.degrees() {
                prop_assert_eq!(base.complex.cohomology_dim(n), wider.complex.cohomology_dim(n));
            }
            let n_lo = m.support().map(|p| p.0).unwrap_or(0);
            let h = semifree_hom(&m, &m, w).unwrap();
            let hw = semifree_hom_with_cutoff(&m, &m, w, n_lo - w.hi - 1 - extra).unwrap();
            for k in w.degrees() {
                prop_assert_eq!(h.cohomology_space(k).dim(), hw.cohomology_space(k).dim());
            }
        }
    }
}
