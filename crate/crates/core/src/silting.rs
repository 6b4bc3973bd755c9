//! Presilting, silting and tilting checks, the `add U`-coresolution of `A`,
//! goodification and silting equivalence.

use serde::Serialize;

use crate::complex::{cone, minimize, ChainMap, Complex, Triangle};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hom::{derived_hom_dim, hom_complex, GradedHom};
use crate::matrix::{Matrix, Vector};

pub const DEFAULT_MAX_STEPS: usize = 8;

/// Outcome of [`is_presilting`]; `witness` is the first `(i, dim Hom(U, U[i]))` with `i > 0` and `dim > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presilting {
    pub holds: bool,
    pub witness: Option<(i32, usize)>,
    pub checked_up_to: i32,
}

/// `Hom(U, U[i]) = 0` for `1 ≤ i ≤ b - a`; larger `i` vanish by the support bound.
pub fn is_presilting(u: &Complex) -> Result<Presilting> {
    if let Some(d) = u.first_non_projective() {
        return Err(Error::NotProjective(d));
    }
    let width = u.support().map(|(a, b)| b - a).unwrap_or(0);
    let h = hom_complex(u, u);
    for i in 1..=width {
        let d = h.cohomology_dim(i);
        if d > 0 {
            return Ok(Presilting { holds: false, witness: Some((i, d)), checked_up_to: width });
        }
    }
    Ok(Presilting { holds: true, witness: None, checked_up_to: width })
}

/// One triangle `A_i -> U_i -> A_{i+1} -> A_i[1]` of the coresolution.
#[derive(Clone, Debug)]
pub struct CoresolutionStep {
    pub triangle: Triangle,
    /// `Some(r)` when `U_i = U^r`; `None` when `A_i` already lies in `add U` and `U_i = A_i`.
    pub multiplicity: Option<usize>,
}

impl CoresolutionStep {
    pub fn source(&self) -> &Complex {
        self.triangle.map.source()
    }

    pub fn summand(&self) -> &Complex {
        self.triangle.map.target()
    }

    pub fn cone(&self) -> &Complex {
        self.triangle.cone()
    }
}

#[derive(Clone, Debug)]
pub struct Coresolution {
    pub steps: Vec<CoresolutionStep>,
}

impl Coresolution {
    /// The silting degree: index of the last triangle.
    pub fn n(&self) -> usize {
        self.steps.len() - 1
    }
}

/// Basis of `H^0 Hom(X, Y)` as degree-0 cocycle coordinates.
fn h0_basis(h: &GradedHom) -> Vec<Vector> {
    let s = h.cohomology_space(0);
    (0..s.dim()).map(|k| s.rep(k)).collect()
}

/// Whether `X` is a summand of `U^m` in `K(A)`: the approximation
/// `X -> U^r` given by a basis of `H^0 Hom(X, U)` is a split monomorphism.
pub fn in_add(x: &Complex, u: &Complex) -> bool {
    let to_u = hom_complex(x, u);
    let from_u = hom_complex(u, x);
    let end = hom_complex(x, x);
    let space = end.cohomology_space(0);
    let id = end.coords_of(0, |i| Matrix::identity(x.field(), x.dim(i)));
    let target = space.class_of(&id);
    if target.iter().all(Scalar::is_zero) {
        return true;
    }
    let mut classes = Vec::new();
    for r in h0_basis(&from_u) {
        for g in h0_basis(&to_u) {
            classes.push(space.class_of(&end.compose(&from_u, 0, &r, &to_u, 0, &g)));
        }
    }
    if classes.is_empty() {
        return false;
    }
    Matrix::from_columns(x.field(), target.len(), &classes).solve(&target).ok().flatten().is_some()
}

/// A left `add U`-approximation `X -> U^r`.
///
/// The components are a minimal generating set of `H^0 Hom(X, U)` as a left
/// `H^0 End(U)`-module, chosen greedily from a k-basis, so every map `X -> U`
/// factors up to homotopy.
pub fn approximation(x: &Complex, u: &Complex) -> (ChainMap, usize) {
    let f = x.field();
    let h = hom_complex(x, u);
    let end = hom_complex(u, u);
    let space = h.cohomology_space(0);
    let ends = h0_basis(&end);
    let mut chosen: Vec<Vector> = Vec::new();
    let mut reached: Vec<Vector> = Vec::new();
    for g in h0_basis(&h) {
        let class = space.class_of(&g);
        let spanned = !reached.is_empty()
            && Matrix::from_columns(f, class.len(), &reached).solve(&class).ok().flatten().is_some();
        if spanned {
            continue;
        }
        reached.push(class);
        for e in &ends {
            reached.push(space.class_of(&h.compose(&end, 0, e, &h, 0, &g)));
        }
        chosen.push(g);
    }
    let r = chosen.len();
    let ur = u.power(r);
    let map = ChainMap::from_fn(x.clone(), ur.clone(), |i| {
        let blocks: Vec<Matrix> = chosen.iter().map(|g| h.component(0, g, i)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::vstack(f, x.dim(i), &refs)
    })
    .expect("components of cocycles form a chain map");
    (map, r)
}

/// Builds triangles `A_i -> U_i -> A_{i+1}` starting from `A_0 = A` until the
/// next term vanishes in `K(A)`; `Ok(None)` when `max_steps` triangles do not suffice.
///
/// A step whose `A_i` already lies in `add U` uses `U_i = A_i` and the identity,
/// since a split approximation would otherwise leave a nonzero cone forever.
pub fn coresolve_a(u: &Complex, max_steps: usize) -> Result<Option<Coresolution>> {
    if let Some(d) = u.first_non_projective() {
        return Err(Error::NotProjective(d));
    }
    if u.is_zero() {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut a = Complex::free(u.algebra().clone());
    for _ in 0..max_steps {
        let (map, multiplicity) = if in_add(&a, u) {
            (ChainMap::identity(&a), None)
        } else {
            let (m, r) = approximation(&a, u);
            (m, Some(r))
        };
        let (c, triangle) = cone(&map);
        steps.push(CoresolutionStep { triangle, multiplicity });
        if c.is_acyclic() {
            return Ok(Some(Coresolution { steps }));
        }
        a = minimize(&c);
    }
    Ok(None)
}

/// `U' = ⊕ U_i` over a terminating coresolution.
pub fn goodify(u: &Complex, max_steps: usize) -> Result<Complex> {
    let c = coresolve_a(u, max_steps)?
        .ok_or_else(|| Error::Inconclusive(format!("coresolution of A did not finish within {max_steps} steps")))?;
    let parts: Vec<Complex> = c.steps.iter().map(|s| s.summand().trimmed()).collect();
    let refs: Vec<&Complex> = parts.iter().collect();
    Ok(minimize(&Complex::direct_sum(u.algebra().clone(), &refs)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tilting {
    pub holds: bool,
    /// First nonzero `(i, dim Hom(U, U[i]))` with `i ≠ 0`.
    pub witness: Option<(i32, usize)>,
    pub coresolution_found: bool,
    /// Cohomology concentrated in degree 0.
    pub module_form: bool,
}

pub fn is_tilting(u: &Complex, max_steps: usize) -> Result<Tilting> {
    if let Some(d) = u.first_non_projective() {
        return Err(Error::NotProjective(d));
    }
    let width = u.support().map(|(a, b)| b - a).unwrap_or(0);
    let h = hom_complex(u, u);
    let witness = (-width..=width).filter(|&i| i != 0).map(|i| (i, h.cohomology_dim(i))).find(|&(_, d)| d > 0);
    let coresolution_found = coresolve_a(u, max_steps)?.is_some();
    let module_form = u.cohomology_table().iter().all(|&(n, d)| n == 0 || d == 0);
    Ok(Tilting { holds: witness.is_none() && coresolution_found, witness, coresolution_found, module_form })
}

/// Whether `add U = add V` in `K(A)`.
///
/// The smaller complex `S` is shown to be silting by a terminating coresolution.
/// If `Hom(U, V[i]) = 0 = Hom(V, U[i])` for all `i > 0` then `S ⊕ T` is
/// presilting, so the other complex `T` lies in `add S`; it remains to check
/// `S ∈ add T`.
pub fn silting_equivalent(u: &Complex, v: &Complex, max_steps: usize) -> Result<bool> {
    for w in [u, v] {
        if !is_presilting(w)?.holds {
            return Err(Error::Precondition("both complexes must be presilting".into()));
        }
    }
    let (s, t) = if u.total_dim() <= v.total_dim() { (u, v) } else { (v, u) };
    if coresolve_a(s, max_steps)?.is_none() {
        return Err(Error::Inconclusive(format!("coresolution of A did not finish within {max_steps} steps")));
    }
    for (x, y) in [(u, v), (v, u)] {
        let h = hom_complex(x, y);
        for i in 1..=h.hi().max(0) {
            if derived_hom_dim(x, y, i)? > 0 {
                return Ok(false);
            }
        }
    }
    Ok(in_add(s, t))
}

/// Cohomology dimensions of `Hom(A_i, U)`, `Hom(U_i, U)` and `Hom(A_{i+1}, U)` for one triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimCodimRow {
    pub degree: i32,
    pub source: usize,
    pub summand: usize,
    pub cone: usize,
}

/// Applies `Hom(-, U)` to each triangle and checks the long exact sequence
/// `dim H^n Hom(A_{i+1}, U) = dim ker H^n(f^*) + dim coker H^{n-1}(f^*)`,
/// where `f^*: Hom(U_i, U) -> Hom(A_i, U)`. Returns the tables, or the first
/// violated `(step, degree)`.
pub fn dim_codim_tables(u: &Complex, c: &Coresolution) -> std::result::Result<Vec<Vec<DimCodimRow>>, (usize, i32)> {
    let f = u.field();
    let mut out = Vec::new();
    for (k, step) in c.steps.iter().enumerate() {
        let (a, s, cn) = (step.source(), step.summand(), step.cone());
        let ha = hom_complex(a, u);
        let hs = hom_complex(s, u);
        let hc = hom_complex(cn, u);
        let fmap = &step.triangle.map;
        let induced = |n: i32| -> Matrix {
            let src = hs.cohomology_space(n);
            let tgt = ha.cohomology_space(n);
            let cols: Vec<Vector> = (0..src.dim())
                .map(|l| {
                    let rep = src.rep(l);
                    let pulled = ha.coords_of(n, |i| hs.component(n, &rep, i).mul(&fmap.get(i)));
                    tgt.class_of(&pulled)
                })
                .collect();
            Matrix::from_columns(f, tgt.dim(), &cols)
        };
        let lo = ha.lo().min(hs.lo()).min(hc.lo()) - 1;
        let hi = ha.hi().max(hs.hi()).max(hc.hi()) + 1;
        let mut rows = Vec::new();
        for n in lo..=hi {
            let m = induced(n);
            let prev = induced(n - 1);
            let ker = m.cols() - m.rank();
            let coker = prev.rows() - prev.rank();
            let row = DimCodimRow {
                degree: n,
                source: ha.cohomology_dim(n),
                summand: hs.cohomology_dim(n),
                cone: hc.cohomology_dim(n),
            };
            if row.cone != ker + coker {
                return Err((k, n));
            }
            rows.push(row);
        }
        out.push(rows);
    }
    Ok(out)
}

/// Summary of all silting-level checks on one complex.
#[derive(Clone, Debug, Serialize)]
pub struct SiltingReport {
    pub presilting: Presilting,
    /// `U_i` multiplicities; `null` entries mark steps with `U_i = A_i ∈ add U`.
    pub coresolution: Option<Vec<Option<usize>>>,
    pub n: Option<usize>,
    pub good: bool,
    pub tilting: Tilting,
    pub equivalent_to_goodified: Option<bool>,
    pub inconclusive: bool,
}

pub fn silting_report(u: &Complex, max_steps: usize) -> Result<SiltingReport> {
    let presilting = is_presilting(u)?;
    let cores = coresolve_a(u, max_steps)?;
    let tilting = is_tilting(u, max_steps)?;
    let coresolution = cores.as_ref().map(|c| c.steps.iter().map(|s| s.multiplicity).collect());
    let n = cores.as_ref().map(Coresolution::n);
    let good = presilting.holds && cores.is_some();
    let equivalent_to_goodified = if good {
        let g = goodify(u, max_steps)?;
        Some(silting_equivalent(u, &g, max_steps)?)
    } else {
        None
    };
    Ok(SiltingReport { inconclusive: presilting.holds && cores.is_none(), presilting, coresolution, n, good, tilting, equivalent_to_goodified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{hom_space, Module};
    use crate::testutil::*;
    use std::sync::Arc;

    use crate::algebra::Algebra;

    fn proj(a: &Arc<Algebra>, i: usize, deg: i32) -> Complex {
        Complex::concentrated(a.clone(), Module::projective(a, i).unwrap(), 0).shift(-deg)
    }

    fn tilt(a: &Arc<Algebra>) -> Complex {
        let p1 = Module::projective(a, 0).unwrap();
        let p2 = Module::projective(a, 1).unwrap();
        let inc = hom_space(a, &p2, &p1).maps()[0].clone();
        let d = Matrix::vstack(a.field(), 1, &[&Matrix::zeros(a.field(), 2, 1), &inc]);
        let sum = Module::direct_sum(a, &[&p1, &p1]);
        Complex::new(a.clone(), -1, vec![p2, sum], vec![d]).unwrap()
    }

    #[test]
    fn free_module() {
        let a = a2();
        let u = Complex::free(a.clone());
        assert!(is_presilting(&u).unwrap().holds);
        let c = coresolve_a(&u, 4).unwrap().unwrap();
        assert_eq!(c.n(), 0);
        let g = goodify(&u, 4).unwrap();
        assert_eq!(g.support(), Some((0, 0)));
        assert_eq!(g.dim(0), a.dim());
        let t = is_tilting(&u, 4).unwrap();
        assert!(t.holds && t.module_form);
    }

    #[test]
    fn two_term_orderings() {
        let a = a2();
        let x = Complex::direct_sum(a.clone(), &[&proj(&a, 0, 0), &proj(&a, 1, -1)]);
        let y = Complex::direct_sum(a.clone(), &[&proj(&a, 1, 0), &proj(&a, 0, -1)]);
        let px = is_presilting(&x).unwrap();
        let py = is_presilting(&y).unwrap();
        assert!(px.holds != py.holds);
        // the brute-force oracle: componentwise Hom(U^i, U^{i+1}) for the two orderings
        let brute = |u: &Complex| hom_space(&a, u.term(-1), u.term(0)).dim();
        assert_eq!(px.holds, brute(&x) == 0);
        assert_eq!(py.holds, brute(&y) == 0);
    }

    #[test]
    fn tilt_coresolution() {
        let a = a2();
        let u = tilt(&a);
        assert!(is_presilting(&u).unwrap().holds);
        let c = coresolve_a(&u, 8).unwrap().unwrap();
        assert_eq!(c.n(), 1);
        for step in &c.steps {
            let f = &step.triangle.map;
            for n in -4..4 {
                let hn = f.induced_map(n);
                let hn1 = f.induced_map(n + 1);
                assert_eq!(step.cone().cohomology_dim(n), (hn.rows() - hn.rank()) + (hn1.cols() - hn1.rank()));
            }
        }
        assert!(c.steps.last().unwrap().cone().is_acyclic());
        dim_codim_tables(&u, &c).unwrap();
        let t = is_tilting(&u, 8).unwrap();
        assert!(t.holds && t.module_form);

        let g = goodify(&u, 8).unwrap();
        assert!(is_presilting(&g).unwrap().holds);
        assert!(silting_equivalent(&u, &g, 8).unwrap());
        let gg = goodify(&g, 8).unwrap();
        assert!(silting_equivalent(&g, &gg, 8).unwrap());
    }

    #[test]
    fn silt2_checks() {
        let a = a2();
        let u = Complex::direct_sum(a.clone(), &[&proj(&a, 1, 0), &proj(&a, 0, -1)]);
        let c = coresolve_a(&u, 8).unwrap().unwrap();
        assert!(c.n() <= 1);
        dim_codim_tables(&u, &c).unwrap();
        let t = is_tilting(&u, 8).unwrap();
        assert!(!t.holds);
        assert_eq!(t.witness, Some((-1, 1)));
        assert!(!silting_equivalent(&u, &tilt(&a), 8).unwrap());
        assert!(silting_equivalent(&u, &u, 8).unwrap());
        assert!(silting_equivalent(&u, &u.power(2), 8).unwrap());
        let r = silting_report(&u, 8).unwrap();
        assert!(r.good && r.n.is_some() && r.equivalent_to_goodified == Some(true));
    }

    #[test]
    fn non_presilting_has_a_witness() {
        let a = a2();
        let u = Complex::direct_sum(a.clone(), &[&proj(&a, 0, 0), &proj(&a, 1, -1)]);
        let p = is_presilting(&u).unwrap();
        assert_eq!(p.witness, Some((1, 1)));
        assert!(matches!(silting_equivalent(&u, &u, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn step_cap_is_inconclusive() {
        let a = a2();
        let u = tilt(&a);
        assert!(coresolve_a(&u, 1).unwrap().is_none());
        assert!(matches!(goodify(&u, 1), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn non_projective_is_rejected() {
        let a = a2();
        let s = Complex::concentrated(a.clone(), Module::simple(&a, 0).unwrap(), 0);
        assert!(matches!(is_presilting(&s), Err(Error::NotProjective(0))));
    }
}
