//! Bounded cochain complexes of right modules, chain maps, shifts and cones.
//!
//! Sign conventions: `X[n]^i = X^{n+i}` with differential `(-1)^n d_X`, and
//! `cone(f)^n = X^{n+1} ⊕ Y^n` with differential `[[-d_X, 0], [f, d_Y]]`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{ColumnBasis, Matrix, Vector};
use crate::module::Module;

/// Cohomology `ker d_out / im d_in` of a vector-space complex at one spot,
/// with chosen cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    reps: Matrix,
    boundaries: usize,
    solver: Option<ColumnBasis>,
}

impl CohomologySpace {
    /// `d_in: C^{n-1} -> C^n`, `d_out: C^n -> C^{n+1}`.
    pub fn new(field: Field, ambient: usize, d_in: &Matrix, d_out: &Matrix) -> Self {
        debug_assert_eq!(d_in.rows(), ambient);
        debug_assert_eq!(d_out.cols(), ambient);
        let cycles = d_out.kernel_basis();
        let bounds = d_in.image_basis();
        let nb = bounds.cols();
        let both = Matrix::hstack(field, ambient, &[&bounds, &cycles]);
        let pivots = both.independent_columns();
        let rep_idx: Vec<usize> = pivots.into_iter().filter(|&c| c >= nb).collect();
        let reps = both.select_columns(&rep_idx);
        let all = Matrix::hstack(field, ambient, &[&bounds, &reps]);
        let solver = (all.cols() > 0).then(|| ColumnBasis::new(all));
        CohomologySpace { reps, boundaries: nb, solver }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Columns are cocycles representing a basis of the cohomology.
    pub fn reps(&self) -> &Matrix {
        &self.reps
    }

    pub fn rep(&self, k: usize) -> Vector {
        self.reps.column(k)
    }

    /// Class coordinates of a cocycle. Panics if `z` is not a cocycle.
    pub fn class_of(&self, z: &[crate::Scalar]) -> Vector {
        match &self.solver {
            None => {
                assert!(z.iter().all(|x| x.is_zero()), "nonzero vector in a zero space");
                Vec::new()
            }
            Some(s) => {
                let c = s.coords(z).expect("class_of called on a non-cocycle");
                c[self.boundaries..].to_vec()
            }
        }
    }

    pub fn is_boundary(&self, z: &[crate::Scalar]) -> bool {
        self.class_of(z).iter().all(|x| x.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct Complex {
    algebra: Arc<Algebra>,
    lo: i32,
    terms: Vec<Module>,
    diffs: Vec<Matrix>,
    zero: Module,
}

impl Complex {
    /// Terms start in degree `lo`; `diffs[k]` maps `terms[k]` to `terms[k+1]`.
    pub fn new(algebra: Arc<Algebra>, lo: i32, terms: Vec<Module>, diffs: Vec<Matrix>) -> Result<Self> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            let (s, t) = (&terms[k], &terms[k + 1]);
            let deg = lo + k as i32;
            if d.rows() != t.dim() || d.cols() != s.dim() {
                return Err(Error::InvalidComplex(format!("differential in degree {deg} has the wrong shape")));
            }
            if !s.is_module_map(&algebra, t, d) {
                return Err(Error::InvalidComplex(format!("differential in degree {deg} is not A-linear")));
            }
            if k + 1 < diffs.len() && !diffs[k + 1].mul(d).is_zero() {
                return Err(Error::InvalidComplex(format!("d^{} d^{deg} is not zero", deg + 1)));
            }
        }
        let zero = Module::zero(&algebra);
        Ok(Complex { algebra, lo, terms, diffs, zero })
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        Complex::new(algebra, 0, Vec::new(), Vec::new()).expect("empty complex")
    }

    /// A single module placed in one degree.
    pub fn concentrated(algebra: Arc<Algebra>, module: Module, degree: i32) -> Self {
        Complex::new(algebra, degree, vec![module], Vec::new()).expect("one-term complex")
    }

    /// The regular module `⊕ e_i A` in degree 0.
    pub fn free(algebra: Arc<Algebra>) -> Self {
        let m = Module::free(&algebra);
        Complex::concentrated(algebra, m, 0)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// Lowest stored degree.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest stored degree (`lo - 1` for the empty complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// Smallest interval containing every nonzero term.
    pub fn support(&self) -> Option<(i32, i32)> {
        let first = self.terms.iter().position(|m| m.dim() > 0)?;
        let last = self.terms.iter().rposition(|m| m.dim() > 0)?;
        Some((self.lo + first as i32, self.lo + last as i32))
    }

    pub fn term(&self, n: i32) -> &Module {
        if n < self.lo || n > self.hi() {
            return &self.zero;
        }
        &self.terms[(n - self.lo) as usize]
    }

    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    pub fn dim(&self, n: i32) -> usize {
        self.term(n).dim()
    }

    /// `d^n: X^n -> X^{n+1}`, a zero matrix of the right shape outside the stored range.
    pub fn diff(&self, n: i32) -> Matrix {
        if n >= self.lo && n < self.hi() {
            return self.diffs[(n - self.lo) as usize].clone();
        }
        Matrix::zeros(self.field(), self.dim(n + 1), self.dim(n))
    }

    pub fn is_projective(&self) -> bool {
        self.terms.iter().all(Module::is_projective)
    }

    /// First degree whose term lacks a projective witness.
    pub fn first_non_projective(&self) -> Option<i32> {
        self.terms.iter().position(|m| !m.is_projective()).map(|k| self.lo + k as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_none()
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> Complex {
        match self.support() {
            None => Complex::zero(self.algebra.clone()),
            Some((a, b)) => {
                let terms = (a..=b).map(|n| self.term(n).clone()).collect();
                let diffs = (a..b).map(|n| self.diff(n)).collect();
                Complex { algebra: self.algebra.clone(), lo: a, terms, diffs, zero: self.zero.clone() }
            }
        }
    }

    /// Same data viewed on the interval `[lo, hi]` (must contain the support).
    pub fn padded(&self, lo: i32, hi: i32) -> Complex {
        if let Some((a, b)) = self.support() {
            assert!(lo <= a && b <= hi, "padding must contain the support");
        }
        let terms = (lo..=hi).map(|n| self.term(n).clone()).collect();
        let diffs = (lo..hi).map(|n| self.diff(n)).collect();
        Complex { algebra: self.algebra.clone(), lo, terms, diffs, zero: self.zero.clone() }
    }

    /// `X[n]`: `X[n]^i = X^{n+i}` with differential `(-1)^n d`.
    pub fn shift(&self, n: i32) -> Complex {
        let sign = self.field().sign(n as i64);
        Complex {
            algebra: self.algebra.clone(),
            lo: self.lo - n,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn direct_sum(algebra: Arc<Algebra>, parts: &[&Complex]) -> Complex {
        let f = algebra.field();
        let supports: Vec<(i32, i32)> = parts.iter().filter_map(|c| c.support()).collect();
        if supports.is_empty() {
            return Complex::zero(algebra);
        }
        let lo = supports.iter().map(|s| s.0).min().unwrap();
        let hi = supports.iter().map(|s| s.1).max().unwrap();
        let terms = (lo..=hi)
            .map(|n| {
                let ms: Vec<&Module> = parts.iter().map(|c| c.term(n)).collect();
                Module::direct_sum(&algebra, &ms)
            })
            .collect();
        let diffs = (lo..hi)
            .map(|n| {
                let ds: Vec<Matrix> = parts.iter().map(|c| c.diff(n)).collect();
                let refs: Vec<&Matrix> = ds.iter().collect();
                Matrix::block_diag(f, &refs)
            })
            .collect();
        let zero = Module::zero(&algebra);
        Complex { algebra, lo, terms, diffs, zero }
    }

    /// `n` copies of this complex.
    pub fn power(&self, n: usize) -> Complex {
        let parts: Vec<&Complex> = std::iter::repeat(self).take(n).collect();
        Complex::direct_sum(self.algebra.clone(), &parts)
    }

    pub fn cohomology_space(&self, n: i32) -> CohomologySpace {
        CohomologySpace::new(self.field(), self.dim(n), &self.diff(n - 1), &self.diff(n))
    }

    pub fn cohomology_dim(&self, n: i32) -> usize {
        self.cohomology_space(n).dim()
    }

    /// `H^n(X) = Z^n / B^n` with the induced action.
    pub fn cohomology(&self, n: i32) -> Module {
        let alg = &self.algebra;
        let f = self.field();
        let h = self.cohomology_space(n);
        let x = self.term(n);
        let action = (0..alg.dim())
            .map(|b| {
                let cols: Vec<Vector> =
                    (0..h.dim()).map(|k| h.class_of(&x.action()[b].mul_vec(&h.rep(k)))).collect();
                Matrix::from_columns(f, h.dim(), &cols)
            })
            .collect();
        Module::new(alg, h.dim(), action).expect("cohomology inherits a module structure")
    }

    /// Cohomology dimensions over the support, as `(degree, dim)` pairs.
    pub fn cohomology_table(&self) -> Vec<(i32, usize)> {
        match self.support() {
            None => Vec::new(),
            Some((a, b)) => (a..=b).map(|n| (n, self.cohomology_dim(n))).collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_table().iter().all(|&(_, d)| d == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi()).map(|n| sign_i64(n) * self.dim(n) as i64).sum()
    }

    pub fn cohomology_euler_characteristic(&self) -> i64 {
        self.cohomology_table().iter().map(|&(n, d)| sign_i64(n) * d as i64).sum()
    }

    /// Total dimension of all terms.
    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(Module::dim).sum()
    }
}

fn sign_i64(n: i32) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A degree-0 chain map.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i32,
    maps: Vec<Matrix>,
}

impl ChainMap {
    /// `maps` gives `f^n` for `n` in `lo..lo+maps.len()`; other degrees are zero.
    pub fn new(source: Complex, target: Complex, lo: i32, maps: Vec<Matrix>) -> Result<Self> {
        let f = ChainMap { source, target, lo, maps };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let alg = self.source.algebra.clone();
        let (lo, hi) = self.range();
        for (k, m) in self.maps.iter().enumerate() {
            let n = self.lo + k as i32;
            if m.rows() != self.target.dim(n) || m.cols() != self.source.dim(n) {
                return Err(Error::InvalidComplex(format!("chain map component {n} has the wrong shape")));
            }
            if !self.source.term(n).is_module_map(&alg, self.target.term(n), m) {
                return Err(Error::InvalidComplex(format!("chain map component {n} is not A-linear")));
            }
        }
        for n in lo - 1..=hi {
            if self.get(n + 1).mul(&self.source.diff(n)) != self.target.diff(n).mul(&self.get(n)) {
                return Err(Error::InvalidComplex(format!("chain map does not commute with d in degree {n}")));
            }
        }
        Ok(())
    }

    fn range(&self) -> (i32, i32) {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        (lo, hi)
    }

    /// Builds a chain map from a closure giving each component.
    pub fn from_fn(source: Complex, target: Complex, mut f: impl FnMut(i32) -> Matrix) -> Result<Self> {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let maps = (lo..=hi).map(&mut f).collect();
        ChainMap::new(source, target, lo, maps)
    }

    pub fn identity(x: &Complex) -> Self {
        let f = x.field();
        ChainMap { source: x.clone(), target: x.clone(), lo: x.lo(), maps: (x.lo()..=x.hi()).map(|n| Matrix::identity(f, x.dim(n))).collect() }
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), lo: 0, maps: Vec::new() }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn get(&self, n: i32) -> Matrix {
        if n >= self.lo && ((n - self.lo) as usize) < self.maps.len() {
            return self.maps[(n - self.lo) as usize].clone();
        }
        Matrix::zeros(self.source.field(), self.target.dim(n), self.source.dim(n))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let (lo, hi) = (other.source.lo().min(self.target.lo()), other.source.hi().max(self.target.hi()));
        let maps = (lo..=hi).map(|n| self.get(n).mul(&other.get(n))).collect();
        ChainMap { source: other.source.clone(), target: self.target.clone(), lo, maps }
    }

    /// Matrix of `H^n(f)` in the chosen cohomology bases.
    pub fn induced_map(&self, n: i32) -> Matrix {
        let hs = self.source.cohomology_space(n);
        let ht = self.target.cohomology_space(n);
        let fmat = self.get(n);
        let cols: Vec<Vector> = (0..hs.dim()).map(|k| ht.class_of(&fmat.mul_vec(&hs.rep(k)))).collect();
        Matrix::from_columns(self.source.field(), ht.dim(), &cols)
    }

    /// Quasi-isomorphism test through the acyclicity of the cone.
    pub fn is_quasi_iso(&self) -> bool {
        cone(self).0.is_acyclic()
    }

    /// Whether `H^n(f)` is an isomorphism for every `n` in `[lo, hi]`.
    pub fn is_quasi_iso_on(&self, lo: i32, hi: i32) -> bool {
        (lo..=hi).all(|n| {
            let m = self.induced_map(n);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }
}

/// The canonical triangle `X -> Y -> cone(f) -> X[1]`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub map: ChainMap,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

impl Triangle {
    pub fn cone(&self) -> &Complex {
        self.inclusion.target()
    }
}

/// Mapping cone with differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap) -> (Complex, Triangle) {
    let x = f.source();
    let y = f.target();
    let alg = x.algebra().clone();
    let field = alg.field();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let terms: Vec<Module> = (lo..=hi).map(|n| Module::direct_sum(&alg, &[x.term(n + 1), y.term(n)])).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let (xa, ya) = (x.dim(n + 1), y.dim(n));
            let (xb, yb) = (x.dim(n + 2), y.dim(n + 1));
            let mut d = Matrix::zeros(field, xb + yb, xa + ya);
            d.set_block(0, 0, &x.diff(n + 1).neg());
            d.set_block(xb, 0, &f.get(n + 1));
            d.set_block(xb, xa, &y.diff(n));
            d
        })
        .collect();
    let c = Complex::new(alg, lo, terms, diffs).expect("cone of a chain map is a complex");
    let inclusion = ChainMap::from_fn(y.clone(), c.clone(), |n| {
        let mut m = Matrix::zeros(field, c.dim(n), y.dim(n));
        m.set_block(x.dim(n + 1), 0, &Matrix::identity(field, y.dim(n)));
        m
    })
    .expect("inclusion into the cone");
    let x1 = x.shift(1);
    let projection = ChainMap::from_fn(c.clone(), x1.clone(), |n| {
        let mut m = Matrix::zeros(field, x1.dim(n), c.dim(n));
        m.set_block(0, 0, &Matrix::identity(field, x.dim(n + 1)));
        m
    })
    .expect("projection from the cone");
    (c.clone(), Triangle { map: f.clone(), inclusion, projection })
}

/// Default cap on the length of a projective replacement.
pub const DEFAULT_LENGTH_CAP: usize = 16;

/// Result of [`proj_resolution`]: a complex of projectives with a map to
/// the input, exact on cohomology in degrees `>= exact_from`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    pub complex: Complex,
    pub map: ChainMap,
    pub complete: bool,
    pub exact_from: i32,
}

struct Generator {
    idempotent: usize,
    boundary: Vector,
    image: Vector,
}

/// A homotopy-equivalent complex with the contractible pieces
/// `e_i A --≅--> e_i A` removed by Gaussian elimination.
///
/// Complexes with a non-projective term are returned trimmed but otherwise unchanged.
pub fn minimize(x: &Complex) -> Complex {
    let x = x.trimmed();
    let (lo, hi) = match x.support() {
        Some(s) if x.is_projective() => s,
        _ => return x,
    };
    let alg = x.algebra().clone();
    let sizes: Vec<usize> = (0..alg.idempotents().len()).map(|i| alg.projective_basis(i).len()).collect();
    let mut tags: Vec<Vec<usize>> =
        (lo..=hi).map(|n| x.term(n).projective_summands().expect("projective").to_vec()).collect();
    let mut diffs: Vec<Matrix> = (lo..hi).map(|n| x.diff(n)).collect();
    let offsets = |t: &[usize]| -> Vec<usize> {
        t.iter()
            .scan(0, |acc, &i| {
                let o = *acc;
                *acc += sizes[i];
                Some(o)
            })
            .collect()
    };
    'search: loop {
        for k in 0..diffs.len() {
            let (src, tgt) = (offsets(&tags[k]), offsets(&tags[k + 1]));
            for (s, &i) in tags[k].iter().enumerate() {
                for (t, &j) in tags[k + 1].iter().enumerate() {
                    if i != j {
                        continue;
                    }
                    let n = sizes[i];
                    let Some(inv) = diffs[k].block(tgt[t], src[s], n, n).inverse() else {
                        continue;
                    };
                    let d = &diffs[k];
                    let xs: Vec<usize> = (src[s]..src[s] + n).collect();
                    let ys: Vec<usize> = (tgt[t]..tgt[t] + n).collect();
                    let xr: Vec<usize> = (0..d.cols()).filter(|c| !xs.contains(c)).collect();
                    let yr: Vec<usize> = (0..d.rows()).filter(|r| !ys.contains(r)).collect();
                    let top = d.select_rows(&ys);
                    let rest = d.select_rows(&yr);
                    let beta = top.select_columns(&xr);
                    let gamma = rest.select_columns(&xs);
                    let delta = rest.select_columns(&xr);
                    diffs[k] = delta.sub(&gamma.mul(&inv).mul(&beta));
                    if k > 0 {
                        diffs[k - 1] = diffs[k - 1].select_rows(&xr);
                    }
                    if k + 1 < diffs.len() {
                        diffs[k + 1] = diffs[k + 1].select_columns(&yr);
                    }
                    tags[k].remove(s);
                    tags[k + 1].remove(t);
                    continue 'search;
                }
            }
        }
        break;
    }
    let terms = tags
        .iter()
        .map(|t| Module::projective_sum(&alg, t).expect("indices come from the input"))
        .collect();
    Complex::new(alg, lo, terms, diffs).expect("Gaussian elimination preserves d^2 = 0").trimmed()
}

/// Projective replacement `P -> X` built by killing the cohomology of the
/// cone degree by degree with plain projective pre-covers.
///
/// Fails with [`Error::LengthCap`] once the replacement would need more than
/// `cap` steps below the top of `X`.
pub fn proj_replacement(x: &Complex, cap: usize) -> Result<(Complex, ChainMap)> {
    if x.is_projective() {
        return Ok((x.clone(), ChainMap::identity(x)));
    }
    let r = resolve(x, cap, true)?;
    Ok((r.complex, r.map))
}

/// Like [`proj_replacement`] but stops quietly at the length cap and reports
/// whether the resolution is complete.
pub fn proj_resolution(x: &Complex, length: usize) -> Result<ProjectiveResolution> {
    resolve(x, length, false)
}

fn resolve(x: &Complex, cap: usize, strict: bool) -> Result<ProjectiveResolution> {
    let alg = x.algebra().clone();
    let f = alg.field();
    let Some((xlo, xhi)) = x.support() else {
        let z = Complex::zero(alg);
        return Ok(ProjectiveResolution { map: ChainMap::zero(&z, x), complex: z, complete: true, exact_from: i32::MIN });
    };
    // generators per degree, index 0 is degree xhi, index k is degree xhi - k
    let mut gens: Vec<Vec<Generator>> = Vec::new();
    let p_module = |gens: &Vec<Vec<Generator>>, deg: i32| -> Module {
        let k = xhi - deg;
        if k < 0 || k as usize >= gens.len() {
            return Module::zero(&alg);
        }
        let idx: Vec<usize> = gens[k as usize].iter().map(|g| g.idempotent).collect();
        Module::projective_sum(&alg, &idx).expect("valid idempotents")
    };
    // d_P: P^deg -> P^{deg+1} and pi: P^deg -> X^deg
    let p_maps = |gens: &Vec<Vec<Generator>>, deg: i32| -> (Matrix, Matrix) {
        let src = p_module(gens, deg);
        let tgt = p_module(gens, deg + 1);
        let mut d = Matrix::zeros(f, tgt.dim(), src.dim());
        let mut pi = Matrix::zeros(f, x.dim(deg), src.dim());
        let k = xhi - deg;
        if k >= 0 && (k as usize) < gens.len() {
            let mut col = 0;
            for g in &gens[k as usize] {
                for w in alg.projective_basis(g.idempotent) {
                    let dv = tgt.act(w).mul_vec(&g.boundary);
                    let pv = x.term(deg).act(w).mul_vec(&g.image);
                    for (r, v) in dv.into_iter().enumerate() {
                        d.set(r, col, v);
                    }
                    for (r, v) in pv.into_iter().enumerate() {
                        pi.set(r, col, v);
                    }
                    col += 1;
                }
            }
        }
        (d, pi)
    };

    let mut deg = xhi;
    let mut complete = true;
    loop {
        // cone C^deg = P^{deg+1} ⊕ X^deg, with P^deg still empty
        let p1 = p_module(&gens, deg + 1);
        let c = Module::direct_sum(&alg, &[&p1, x.term(deg)]);
        let (dp1, pi1) = p_maps(&gens, deg + 1);
        let p2dim = p_module(&gens, deg + 2).dim();
        let mut d_out = Matrix::zeros(f, p2dim + x.dim(deg + 1), c.dim());
        d_out.set_block(0, 0, &dp1.neg());
        d_out.set_block(p2dim, 0, &pi1);
        d_out.set_block(p2dim, p1.dim(), &x.diff(deg));
        let mut d_in = Matrix::zeros(f, c.dim(), x.dim(deg - 1));
        d_in.set_block(p1.dim(), 0, &x.diff(deg - 1));

        let cycles = d_out.kernel_basis();
        let mut span = d_in.image_basis();
        let mut new_gens = Vec::new();
        for i in 0..alg.idempotents().len() {
            let e = c.act(&alg.idempotents()[i]);
            let weighted = e.mul(&cycles).image_basis();
            for v in weighted.columns() {
                let trial = Matrix::hstack(f, c.dim(), &[&span, &Matrix::column_vector(f, &v)]);
                if trial.rank() > span.cols() {
                    let orbit: Vec<Matrix> = (0..alg.dim()).map(|b| Matrix::column_vector(f, &c.act(&alg.basis_vector(b)).mul_vec(&v))).collect();
                    let refs: Vec<&Matrix> = std::iter::once(&span).chain(&orbit).collect();
                    span = Matrix::hstack(f, c.dim(), &refs).image_basis();
                    let (zp, zx) = v.split_at(p1.dim());
                    new_gens.push(Generator {
                        idempotent: i,
                        boundary: zp.iter().map(|s| f.neg(s)).collect(),
                        image: zx.to_vec(),
                    });
                }
            }
        }
        let reached = (xhi - deg) as usize;
        if new_gens.is_empty() && deg < xlo {
            break;
        }
        if reached > cap && !new_gens.is_empty() {
            if strict {
                return Err(Error::LengthCap { cap, degree: deg });
            }
            complete = false;
            break;
        }
        gens.push(new_gens);
        deg -= 1;
    }
    let lo = xhi - gens.len() as i32 + 1;
    let terms: Vec<Module> = (lo..=xhi).map(|n| p_module(&gens, n)).collect();
    let diffs: Vec<Matrix> = (lo..xhi).map(|n| p_maps(&gens, n).0).collect();
    let p = Complex::new(alg.clone(), lo, terms, diffs)?;
    let maps: Vec<Matrix> = (lo..=xhi).map(|n| p_maps(&gens, n).1).collect();
    let map = ChainMap::new(p.clone(), x.clone(), lo, maps)?;
    Ok(ProjectiveResolution { complex: p, map, complete, exact_from: if complete { i32::MIN } else { lo + 1 } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;

    #[test]
    fn single_module_cohomology() {
        let a = a2();
        let s = Module::simple(&a, 0).unwrap();
        let x = Complex::concentrated(a.clone(), s.clone(), 0);
        assert_eq!(x.cohomology(0), s);
        assert_eq!(x.cohomology_dim(1), 0);
        assert_eq!(x.cohomology_dim(-1), 0);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let a = a2();
        let x = p2_to_p1(&a);
        let (c, t) = cone(&ChainMap::identity(&x));
        assert!(c.is_acyclic());
        assert_eq!(t.cone().total_dim(), 2 * x.total_dim());
    }

    #[test]
    fn cone_of_zero_is_a_sum() {
        let a = a2();
        let x = p2_to_p1(&a);
        let y = Complex::free(a.clone());
        let (c, _) = cone(&ChainMap::zero(&x, &y));
        for n in -3..3 {
            assert_eq!(c.dim(n), x.shift(1).dim(n) + y.dim(n));
        }
    }

    #[test]
    fn resolution_of_simple_over_a2() {
        let a = a2();
        let x = p2_to_p1(&a);
        // cohomology computed directly: only H^0, one-dimensional, at vertex 1
        assert_eq!(x.cohomology_table(), vec![(-1, 0), (0, 1)]);
        assert_eq!(x.cohomology(0).dimension_vector(&a), vec![1, 0]);

        let s1 = Complex::concentrated(a.clone(), Module::simple(&a, 0).unwrap(), 0);
        let (p, map) = proj_replacement(&s1, DEFAULT_LENGTH_CAP).unwrap();
        assert!(p.is_projective());
        assert!(map.is_quasi_iso());
        assert_eq!(p.support(), Some((-1, 0)));
        assert_eq!(p.hi(), 0);
    }

    #[test]
    fn projective_input_is_returned_unchanged() {
        let a = a2();
        let x = p2_to_p1(&a);
        let (p, map) = proj_replacement(&x, 3).unwrap();
        assert_eq!(p.total_dim(), x.total_dim());
        assert!(map.is_quasi_iso());
    }

    #[test]
    fn infinite_projective_dimension_hits_the_cap() {
        let a = dual();
        let k = Complex::concentrated(a.clone(), Module::simple(&a, 0).unwrap(), 0);
        match proj_replacement(&k, 5) {
            Err(Error::LengthCap { cap: 5, degree }) => assert!(degree < -4),
            other => panic!("expected a cap error, got {other:?}"),
        }
        let partial = proj_resolution(&k, 5).unwrap();
        assert!(!partial.complete);
        assert!(partial.map.is_quasi_iso_on(partial.exact_from, 0));
    }

    #[test]
    fn minimize_removes_contractible_pieces() {
        let a = a3_rad2();
        let x = two_term(&a, &[0, 1, 2], &[1, 2], 0, &[1, 2, 3, 1, 1]);
        assert!(minimize(&cone(&ChainMap::identity(&x)).0).is_zero());
        let m = minimize(&x);
        assert!(m.total_dim() < x.total_dim());
        for n in -2..3 {
            assert_eq!(m.cohomology_dim(n), x.cohomology_dim(n));
        }
        let s = Complex::concentrated(a.clone(), Module::simple(&a, 0).unwrap(), 0);
        assert_eq!(minimize(&s).term(0), s.term(0));
    }

    #[test]
    fn shift_bookkeeping() {
        let a = a2();
        let x = p2_to_p1(&a);
        assert_eq!(x.shift(0).cohomology_table(), x.cohomology_table());
        let back = x.shift(1).shift(-1);
        assert_eq!(back.lo(), x.lo());
        assert_eq!(back.diff(-1), x.diff(-1));
        for n in -3..3 {
            assert_eq!(x.shift(2).cohomology_dim(n), x.cohomology_dim(n + 2));
        }
    }
}
