//! Mechanical checks of the derived-equivalence statements attached to a
//! silting complex `U`, run on finite probe sets with dimension evidence.
//!
//! Every check returns a [`CheckRecord`] naming its window, the dimension
//! tables it compared and, on failure, the first mismatch found.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::complex::{minimize, proj_replacement, proj_resolution, CohomologySpace, Complex, DEFAULT_LENGTH_CAP};
use crate::dg::{dg_cohomology, dg_end, dg_hom_module, dg_left_module, h0_algebra, side_swap, smart_truncate, DgEnd, DgModule, Truncation};
use crate::error::{Error, Result};
use crate::hom::{hom_complex, GradedHom};
use crate::matrix::{Matrix, Vector};
use crate::module::{find_isomorphism, hom_space, is_indecomposable, Module};
use crate::semifree::{derived_tensor, derived_tensor_with_cutoff, semifree_hom, semifree_hom_with_cutoff, DegreeWindow, DerivedTensor, SemifreeHom};
use crate::silting::{is_presilting, is_tilting, silting_report, SiltingReport, DEFAULT_MAX_STEPS};
use crate::tensor::{tensor_complex, BimoduleComplex};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_TOR_BOUND: usize = 8;
pub const DEFAULT_MARGIN: i32 = 3;

/// Dimensions indexed by degree.
pub type Table = BTreeMap<i32, usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// The first dimension mismatch of a failing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub quantity: String,
    pub degree: i32,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub subject: String,
    pub window: Option<DegreeWindow>,
    pub tables: BTreeMap<String, Table>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn new(name: &str, subject: &str, window: Option<DegreeWindow>) -> Self {
        CheckRecord {
            name: name.into(),
            subject: subject.into(),
            window,
            tables: BTreeMap::new(),
            verdict: Verdict::Pass,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn set(&mut self, key: &str, degree: i32, dim: usize) {
        self.tables.entry(key.into()).or_default().insert(degree, dim);
    }

    /// Fails the check with a witness unless `expected == found`.
    fn expect(&mut self, quantity: &str, degree: i32, expected: usize, found: usize) {
        if expected != found {
            self.fail(Witness { quantity: quantity.into(), degree, expected, found });
        }
    }

    fn fail(&mut self, w: Witness) {
        self.verdict = Verdict::Fail;
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    fn inconclusive(&mut self, note: String) {
        self.verdict = self.verdict.max(Verdict::Inconclusive);
        self.notes.push(note);
    }
}

/// Effective caps and windows; echoed in every report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub window: DegreeWindow,
    pub hom_range: DegreeWindow,
    pub max_steps: usize,
    pub cap: usize,
    pub tor_bound: usize,
    pub margin: i32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            window: DegreeWindow::default(),
            hom_range: DegreeWindow { lo: -2, hi: 2 },
            max_steps: DEFAULT_MAX_STEPS,
            cap: DEFAULT_LENGTH_CAP,
            tor_bound: DEFAULT_TOR_BOUND,
            margin: DEFAULT_MARGIN,
        }
    }
}

/// `B = DgEnd(U)`, its truncation and `U` as a left dg-module over `τ≤0 B`.
pub struct Context {
    u: Complex,
    end: DgEnd,
    truncation: Truncation,
    left: DgModule,
}

impl Context {
    pub fn new(u: &Complex) -> Result<Self> {
        let p = is_presilting(u)?;
        if let Some((i, d)) = p.witness {
            return Err(Error::Precondition(format!("U is not presilting: dim Hom(U, U[{i}]) = {d}")));
        }
        let end = dg_end(u)?;
        let truncation = smart_truncate(&end.algebra);
        let left = dg_left_module(&end).restrict(&truncation)?;
        Ok(Context { u: u.clone(), end, truncation, left })
    }

    pub fn u(&self) -> &Complex {
        &self.u
    }

    pub fn end(&self) -> &DgEnd {
        &self.end
    }

    pub fn left(&self) -> &DgModule {
        &self.left
    }

    /// `RHom_A(U, X)` as a right dg-module over `τ≤0 B`.
    pub fn hom_module(&self, x: &Complex) -> Result<DgModule> {
        dg_hom_module(&self.end, x)?.restrict(&self.truncation)
    }
}

/// `H^0 Hom(U, U)` with composition, on the basis of cocycle classes.
pub struct HomotopyEnd {
    pub algebra: Arc<Algebra>,
    pub hom: GradedHom,
    pub space: CohomologySpace,
}

pub fn homotopy_endomorphisms(u: &Complex) -> Result<HomotopyEnd> {
    let f = u.field();
    let hom = hom_complex(u, u);
    let space = hom.cohomology_space(0);
    let d = space.dim();
    if d == 0 {
        return Err(Error::Degenerate("U is zero in the homotopy category".into()));
    }
    let maps: Vec<_> = (0..d).map(|k| hom.chain_map(&space.rep(k))).collect();
    let mut products = Vec::with_capacity(d * d);
    for x in &maps {
        for y in &maps {
            products.push(space.class_of(&hom.coords_of_map(&x.compose(y))));
        }
    }
    let unit = space.class_of(&hom.coords_of(0, |i| Matrix::identity(f, u.dim(i))));
    let labels = (0..d).map(|k| format!("e{k}")).collect();
    let algebra = Algebra::new(f, labels, products, unit.clone(), vec![unit], None)?;
    Ok(HomotopyEnd { algebra: Arc::new(algebra), hom, space })
}

/// `H^i(B) = 0` for `i > 0`.
pub fn verify_weak_nonpositive(ctx: &Context) -> CheckRecord {
    let b = &ctx.end.algebra;
    let mut rec = CheckRecord::new("weak_nonpositive", "B", None);
    for n in b.lo()..=b.hi() {
        let d = dg_cohomology(b, n);
        rec.set("H(B)", n, d);
        if n > 0 {
            rec.expect("dim H(B)", n, 0, d);
        }
    }
    rec
}

/// `H^0(B)` and the homotopy endomorphism algebra have the same table.
pub fn verify_e_iso(ctx: &Context) -> Result<CheckRecord> {
    let mut rec = CheckRecord::new("e_iso", "H0(B) = End_K(U)", None);
    let h0 = h0_algebra(&ctx.end.algebra)?;
    let e = homotopy_endomorphisms(&ctx.u)?;
    let (dh, de) = (h0.algebra.dim(), e.algebra.dim());
    rec.set("H0(B)", 0, dh);
    rec.set("End_K(U)", 0, de);
    rec.expect("dim", 0, dh, de);
    if dh == de {
        let differing = (0..dh).flat_map(|i| (0..dh).map(move |j| (i, j))).filter(|&(i, j)| h0.algebra.product(i, j) != e.algebra.product(i, j)).count();
        rec.expect("differing products", 0, 0, differing);
        rec.expect("differing unit coordinates", 0, 0, (h0.algebra.unit() != e.algebra.unit()) as usize);
    }
    rec.notes.push("the heart of the standard t-structure is identified with Mod E through this algebra isomorphism only".into());
    Ok(rec)
}

fn tensor_margin(rec: &mut CheckRecord, m: &DgModule, left: &DgModule, base: &DerivedTensor, margin: i32) -> Result<()> {
    let w = base.window;
    let c = base.resolution.cutoff();
    for extra in 1..=margin {
        let t = derived_tensor_with_cutoff(m, left, w, c - extra)?;
        for n in w.degrees() {
            rec.expect(&format!("margin: dim H with cutoff {}", c - extra), n, base.complex.cohomology_dim(n), t.complex.cohomology_dim(n));
        }
    }
    rec.notes.push(format!("tensor cutoff {c}; in-window dimensions unchanged for cutoffs {}..={}", c - margin, c - 1));
    Ok(())
}

fn hom_margin(rec: &mut CheckRecord, m: &DgModule, n: &DgModule, w: DegreeWindow, base: &SemifreeHom, margin: i32) -> Result<()> {
    let c = base.resolution.cutoff();
    for extra in 1..=margin {
        let h = semifree_hom_with_cutoff(m, n, w, c - extra)?;
        for k in w.degrees() {
            rec.expect(&format!("margin: dim H with cutoff {}", c - extra), k, base.cohomology_space(k).dim(), h.cohomology_space(k).dim());
        }
    }
    rec.notes.push(format!("hom cutoff {c}; in-window dimensions unchanged for cutoffs {}..={}", c - margin, c - 1));
    Ok(())
}

/// The evaluation `RHom_A(U, X) ⊗^L_B U -> X` is a quasi-isomorphism in `w`.
pub fn verify_counit(ctx: &Context, name: &str, x: &Complex, w: DegreeWindow, margin: i32) -> Result<CheckRecord> {
    let mut rec = CheckRecord::new("counit", name, Some(w));
    let m = ctx.hom_module(x)?;
    let t = derived_tensor(&m, &ctx.left, w)?;
    let ev = t.evaluation(&hom_complex(&ctx.u, x))?;
    for n in w.degrees() {
        let (lhs, rhs) = (t.complex.cohomology_dim(n), x.cohomology_dim(n));
        let rank = ev.induced_map(n).rank();
        rec.set("H(RHom(U,X) ⊗ U)", n, lhs);
        rec.set("H(X)", n, rhs);
        rec.set("rank H(counit)", n, rank);
        rec.expect("dim H(RHom(U,X) ⊗ U)", n, rhs, lhs);
        rec.expect("rank H(counit)", n, rhs, rank);
    }
    tensor_margin(&mut rec, &m, &ctx.left, &t, margin)?;
    Ok(rec)
}

/// Classes in `target` of `φ(x_j) = value(j)`, or `None` if some `φ` is not a cocycle.
fn classes(h: &SemifreeHom, k: i32, space: &CohomologySpace, maps: impl Iterator<Item = Vec<Vector>>) -> Option<Matrix> {
    let f = h.target.field();
    let d = h.diff(k);
    let mut cols = Vec::new();
    for values in maps {
        let coords = h.coords_of(k, |j| values[j].clone());
        if d.mul_vec(&coords).iter().any(|c| !c.is_zero()) {
            return None;
        }
        cols.push(space.class_of(&coords));
    }
    Some(Matrix::from_columns(f, space.dim(), &cols))
}

/// `Hom_{D(A)}(X, X'[n]) -> Hom_{D(B)}(FX, FX'[n])` with `F = RHom_A(U, -)` is bijective.
pub fn verify_fully_faithful(ctx: &Context, (name, x): (&str, &Complex), (name2, x2): (&str, &Complex), range: DegreeWindow, cap: usize, margin: i32) -> Result<CheckRecord> {
    let mut rec = CheckRecord::new("fully_faithful", &format!("{name} -> {name2}"), Some(range));
    let (px, _) = proj_replacement(x, cap)?;
    let hx = hom_complex(&px, x2);
    let (fx, fx2) = (ctx.hom_module(&px)?, ctx.hom_module(x2)?);
    let sh = semifree_hom(&fx, &fx2, range)?;
    let (hu_px, hu_x2) = (hom_complex(&ctx.u, &px), hom_complex(&ctx.u, x2));
    let gens = sh.resolution.generators();
    for n in range.degrees() {
        let src = hx.cohomology_space(n);
        let tgt = sh.cohomology_space(n);
        rec.set("Hom_D(A)", n, src.dim());
        rec.set("Hom_D(B)", n, tgt.dim());
        rec.expect("dim Hom_D(B)(FX, FX'[n])", n, src.dim(), tgt.dim());
        let images = (0..src.dim()).map(|k| {
            let g = src.rep(k);
            gens.iter().map(|x| if fx2.dim(x.degree + n) == 0 { Vec::new() } else { hu_x2.compose(&hx, n, &g, &hu_px, x.degree, &x.image) }).collect()
        });
        match classes(&sh, n, &tgt, images) {
            Some(m) => {
                let r = m.rank();
                rec.set("rank F", n, r);
                rec.expect("rank F", n, src.dim(), r);
            }
            None => rec.fail(Witness { quantity: "F(g) ∘ ε is not a cocycle".into(), degree: n, expected: 0, found: 1 }),
        }
    }
    hom_margin(&mut rec, &fx, &fx2, range, &sh, margin)?;
    Ok(rec)
}

/// `δ: A -> RHom_{B^op}(U, U)`, `a ↦ (u ↦ u·a)`, is a quasi-isomorphism in `w`.
pub fn verify_delta(ctx: &Context, w: DegreeWindow, margin: i32) -> Result<CheckRecord> {
    let mut rec = CheckRecord::new("delta", "A -> RHom_B^op(U, U)", Some(w));
    let a = ctx.u.algebra();
    let uop = side_swap(&ctx.left)?;
    let sh = semifree_hom(&uop, &uop, w)?;
    let gens = sh.resolution.generators();
    for n in w.degrees() {
        let space = sh.cohomology_space(n);
        let expected = if n == 0 { a.dim() } else { 0 };
        rec.set("H(A)", n, expected);
        rec.set("H(RHom_B^op(U,U))", n, space.dim());
        rec.expect("dim H(RHom_B^op(U,U))", n, expected, space.dim());
        if n == 0 {
            let images = (0..a.dim()).map(|b| {
                let basis = a.basis_vector(b);
                gens.iter()
                    .map(|x| match uop.outer_term(x.degree) {
                        Some(t) => t.act(&basis).mul_vec(&x.image),
                        None => Vec::new(),
                    })
                    .collect()
            });
            match classes(&sh, 0, &space, images) {
                Some(m) => {
                    let r = m.rank();
                    rec.set("rank H0(δ)", 0, r);
                    rec.expect("rank H0(δ)", 0, a.dim(), r);
                }
                None => rec.fail(Witness { quantity: "δ(a) is not a cocycle".into(), degree: 0, expected: 0, found: 1 }),
            }
        }
    }
    rec.notes.push("δ factors through the strict endomorphisms u ↦ u·a, so H0(δ) is an anti-homomorphism onto End(U)".into());
    hom_margin(&mut rec, &uop, &uop, w, &sh, margin)?;
    Ok(rec)
}

/// Membership of a module in some `X_i = {X | H^j RHom_A(U, X) = 0 for j ≠ i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiYiClassification {
    pub object: String,
    /// `None` for mixed cohomology or a degree outside `[0, n]`.
    pub class: Option<usize>,
    /// All groups vanish; placed in `X_0` by convention.
    pub degenerate: bool,
    pub dims: Table,
}

pub fn classify_xi(u: &Complex, n: usize, name: &str, x: &Module) -> XiYiClassification {
    let xc = Complex::concentrated(u.algebra().clone(), x.clone(), 0);
    let h = hom_complex(u, &xc);
    let dims: Table = (h.lo()..=h.hi()).map(|j| (j, h.cohomology_dim(j))).filter(|&(_, d)| d > 0).collect();
    let (class, degenerate) = match dims.keys().copied().collect::<Vec<_>>()[..] {
        [] => (Some(0), true),
        [j] if 0 <= j && j as usize <= n => (Some(j as usize), false),
        _ => (None, false),
    };
    XiYiClassification { object: name.into(), class, degenerate, dims }
}

/// For `X ∈ X_i`: `Y = RHom_A(U, X[i])` has cohomology in degree 0 only,
/// `Y ⊗^L_B U` has cohomology in degree `-i` only, and the evaluation
/// `Y ⊗^L_B U -> X[i]` is a quasi-isomorphism.
pub fn verify_corollary_roundtrip(ctx: &Context, n: usize, name: &str, x: &Module, i: usize, w: DegreeWindow, margin: i32) -> Result<CheckRecord> {
    let c = classify_xi(&ctx.u, n, name, x);
    if c.class != Some(i) {
        return Err(Error::Precondition(format!("{name} is not in X_{i}")));
    }
    let i = i as i32;
    if !w.contains(-i) {
        return Err(Error::Window { lo: w.lo, hi: w.hi, reason: format!("degree {} must lie in the window", -i) });
    }
    let mut rec = CheckRecord::new("roundtrip", &format!("{name} in X_{i}"), Some(w));
    let xi = Complex::concentrated(ctx.u.algebra().clone(), x.clone(), 0).shift(i);
    let y = ctx.hom_module(&xi)?;
    if let Some((lo, hi)) = y.support() {
        for j in lo..=hi {
            let d = y.cohomology_dim(j);
            rec.set("H(Y)", j, d);
            if j != 0 {
                rec.expect("dim H(Y)", j, 0, d);
            }
        }
    }
    let t = derived_tensor(&y, &ctx.left, w)?;
    let ev = t.evaluation(&hom_complex(&ctx.u, &xi))?;
    for j in w.degrees() {
        let d = t.complex.cohomology_dim(j);
        let expected = xi.cohomology_dim(j);
        let rank = ev.induced_map(j).rank();
        rec.set("H(Y ⊗ U)", j, d);
        rec.set("rank H(comparison)", j, rank);
        rec.expect("dim H(Y ⊗ U)", j, expected, d);
        rec.expect("rank H(comparison)", j, expected, rank);
    }
    if i == 0 {
        rec.notes.push("i = 0 lies beyond the stated range 1 ≤ i ≤ n of the module-level equivalences".into());
    }
    tensor_margin(&mut rec, &y, &ctx.left, &t, margin)?;
    Ok(rec)
}

/// Aggregated checks for one complex of an instance.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub instance: String,
    pub object: String,
    pub settings: Settings,
    pub probes: Vec<String>,
    pub silting: Option<SiltingReport>,
    pub classification: Vec<XiYiClassification>,
    pub checks: Vec<CheckRecord>,
    pub scope: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    fn new(instance: &str, object: &str, settings: Settings) -> Self {
        VerificationReport {
            schema: SCHEMA,
            instance: instance.into(),
            object: object.into(),
            settings,
            probes: Vec::new(),
            silting: None,
            classification: Vec::new(),
            checks: Vec::new(),
            scope: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    fn push(&mut self, rec: CheckRecord) {
        self.verdict = self.verdict.max(rec.verdict);
        self.checks.push(rec);
    }

    pub fn check(&self, name: &str) -> impl Iterator<Item = &CheckRecord> {
        let name = name.to_string();
        self.checks.iter().filter(move |c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// A named probe object.
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub complex: Complex,
    /// The module, when the probe is a module in degree 0.
    pub module: Option<Module>,
}

impl Probe {
    pub fn module(a: &Arc<Algebra>, name: &str, m: Module) -> Self {
        Probe { name: name.into(), complex: Complex::concentrated(a.clone(), m.clone(), 0), module: Some(m) }
    }

    pub fn complex(name: &str, c: Complex) -> Self {
        Probe { name: name.into(), complex: c, module: None }
    }
}

fn vertex_names(a: &Algebra) -> Vec<String> {
    match a.quiver() {
        Some(q) => q.presentation.vertices.clone(),
        None => (1..=a.idempotents().len()).map(|v| v.to_string()).collect(),
    }
}

/// All simples, all indecomposable projectives, `A` and `U`.
pub fn default_probes(u: &Complex) -> Result<Vec<Probe>> {
    let a = u.algebra();
    let names = vertex_names(a);
    let mut out = Vec::new();
    for (v, label) in names.iter().enumerate() {
        out.push(Probe::module(a, &format!("S{label}"), Module::simple(a, v)?));
    }
    for (v, label) in names.iter().enumerate() {
        out.push(Probe::module(a, &format!("P{label}"), Module::projective(a, v)?));
    }
    out.push(Probe::module(a, "A", Module::free(a)));
    out.push(Probe::complex("U", u.clone()));
    Ok(out)
}

/// The classical pipeline for a tilting module `T` with `B = End_A(T)`.
///
/// `probes` are the modules whose `Ext`/`Tor` roundtrip is checked.
pub fn verify_tilting_theorem(instance: &str, name: &str, t: &Module, a: &Arc<Algebra>, probes: &[(String, Module)], settings: Settings) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(instance, name, settings);
    report.probes = probes.iter().map(|(n, _)| n.clone()).collect();
    let cap = settings.cap;
    let mut rec = CheckRecord::new("tilting", name, None);
    let tc = Complex::concentrated(a.clone(), t.clone(), 0);
    let u = match proj_replacement(&tc, cap) {
        Ok((p, _)) => minimize(&p),
        Err(Error::LengthCap { cap, degree }) => {
            rec.inconclusive(format!("not tilting within the cap: the projective resolution reached degree {degree} with length cap {cap}"));
            report.push(rec);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let til = is_tilting(&u, settings.max_steps)?;
    for (n, d) in u.cohomology_table() {
        rec.set("H(U)", n, d);
    }
    rec.set("projective dimension", 0, (-u.lo()).max(0) as usize);
    if let Some((i, d)) = til.witness {
        rec.fail(Witness { quantity: "dim Hom(U, U[i])".into(), degree: i, expected: 0, found: d });
    } else if !til.coresolution_found {
        rec.inconclusive(format!("the coresolution of A did not finish within {} steps", settings.max_steps));
    }
    let proceed = rec.passed();
    report.push(rec);
    if !proceed {
        return Ok(report);
    }
    let pd = (-u.lo()).max(0) as usize;

    let end = dg_end(&u)?;
    let mut rec = CheckRecord::new("end_concentrated", "B = End_A(T)", None);
    for n in end.algebra.lo()..=end.algebra.hi() {
        let d = dg_cohomology(&end.algebra, n);
        rec.set("H(B)", n, d);
        if n != 0 {
            rec.expect("dim H(B)", n, 0, d);
        }
    }
    let dt = hom_space(a, t, t).dim();
    rec.set("End_A(T)", 0, dt);
    rec.expect("dim H0(B)", 0, dt, dg_cohomology(&end.algebra, 0));
    report.push(rec);

    let mut e = homotopy_endomorphisms(&u)?;
    match e.algebra.primitive_idempotents() {
        Some(idems) => e.algebra = Arc::new(e.algebra.with_idempotents(idems)?),
        None => report.scope.push("no primitive idempotents of End(T) found; Tor uses free resolutions".into()),
    }
    let left: Vec<Matrix> = (0..e.algebra.dim()).map(|k| e.hom.chain_map(&e.space.rep(k)).induced_map(0)).collect();
    let tb = BimoduleComplex::new(e.algebra.clone(), Complex::concentrated(a.clone(), u.cohomology(0), 0), vec![left])?;

    for (pname, x) in probes {
        let class = classify_xi(&u, pd, pname, x);
        report.classification.push(class.clone());
        let mut rec = CheckRecord::new("ext_tor_roundtrip", pname, None);
        let xc = Complex::concentrated(a.clone(), x.clone(), 0);
        let hx = hom_complex(&u, &xc);
        for j in 0..=pd as i32 {
            rec.set("Ext(T,X)", j, hx.cohomology_dim(j));
        }
        let Some(i) = class.class else {
            match is_indecomposable(a, x) {
                Some(false) => rec.notes.push("decomposable and in no single X_i; roundtrip not applicable".into()),
                found => {
                    let (&j, &d) = class.dims.iter().nth(1).or(class.dims.iter().next()).expect("mixed classes are nonempty");
                    let w = Witness { quantity: "dim Ext^j(T, X) outside a single degree in [0, n]".into(), degree: j, expected: 0, found: d };
                    if found.is_some() {
                        rec.fail(w);
                    } else {
                        rec.witness = Some(w);
                        rec.inconclusive("in no single X_i and indecomposability undecided over the field".into());
                    }
                }
            }
            report.push(rec);
            continue;
        };
        let i32_ = i as i32;
        let space = hx.cohomology_space(i32_);
        let action = (0..e.algebra.dim())
            .map(|k| {
                let cols: Vec<Vector> = (0..space.dim()).map(|y| space.class_of(&hx.compose(&hx, i32_, &space.rep(y), &e.hom, 0, &e.space.rep(k)))).collect();
                Matrix::from_columns(a.field(), space.dim(), &cols)
            })
            .collect();
        let y = Module::new(&e.algebra, space.dim(), action)?;
        let res = proj_resolution(&Complex::concentrated(e.algebra.clone(), y, 0), settings.tor_bound)?;
        let tor = tensor_complex(&res.complex, &tb)?.complex;
        let reliable = |j: usize| res.complete || -(j as i32) > res.complex.lo();
        for j in 0..=settings.tor_bound {
            if !reliable(j) {
                rec.inconclusive(format!("Tor_{j} and beyond not determined within the homological bound {}", settings.tor_bound));
                break;
            }
            let d = tor.cohomology_dim(-(j as i32));
            rec.set("Tor(Y,T)", j as i32, d);
            rec.expect("dim Tor_j(Y, T)", j as i32, if j == i { x.dim() } else { 0 }, d);
        }
        let back = tor.cohomology(-i32_);
        match find_isomorphism(a, &back, x) {
            Some(_) => rec.notes.push(format!("Tor_{i}(Ext^{i}(T, X), T) ≅ X via an explicit full-rank module map")),
            None => rec.fail(Witness { quantity: format!("Tor_{i}(Ext^{i}(T, X), T) not isomorphic to X (total dimension)"), degree: i32_, expected: x.dim(), found: back.dim() }),
        }
        report.push(rec);
    }

    let ctx = Context::new(&u)?;
    let mut delta = verify_delta(&ctx, settings.window, settings.margin)?;
    delta.notes.push("H0(δ) realizes A ≅ End_{B^op}(T)".into());
    report.push(delta);
    report.scope.push(format!("Y_i membership checked up to the homological bound {}", settings.tor_bound));
    report.scope.push(format!("memberships and roundtrips checked on the probes {}", report.probes.join(", ")));
    Ok(report)
}

/// The full suite for a complex `u`.
pub fn verify(instance: &str, object: &str, u: &Complex, probes: &[Probe], settings: Settings) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(instance, object, settings);
    report.probes = probes.iter().map(|p| p.name.clone()).collect();
    report.scope.push(format!("universally quantified statements are checked on the probes {}", report.probes.join(", ")));
    report.scope.push("K^⊥ membership is not tested; every verified U is compact, so K^⊥ is all of D(B)".into());

    let s = silting_report(u, settings.max_steps)?;
    let mut rec = CheckRecord::new("silting", object, None);
    if let Some((i, d)) = s.presilting.witness {
        rec.fail(Witness { quantity: "dim Hom(U, U[i])".into(), degree: i, expected: 0, found: d });
    } else if !s.good {
        rec.inconclusive(format!("the coresolution of A did not finish within {} steps", settings.max_steps));
    }
    if let Some(n) = s.n {
        rec.set("n", 0, n);
    }
    let n = s.n;
    let tilting = s.tilting.holds && s.tilting.module_form;
    report.silting = Some(s);
    let proceed = rec.passed();
    report.push(rec);
    let Some(n) = n.filter(|_| proceed) else {
        return Ok(report);
    };

    let ctx = Context::new(u)?;
    let w = settings.window;
    report.push(verify_weak_nonpositive(&ctx));
    report.push(verify_e_iso(&ctx)?);
    for p in probes {
        report.push(verify_counit(&ctx, &p.name, &p.complex, w, settings.margin)?);
    }
    for p in probes {
        for q in probes {
            report.push(verify_fully_faithful(&ctx, (&p.name, &p.complex), (&q.name, &q.complex), settings.hom_range, settings.cap, settings.margin)?);
        }
    }
    report.push(verify_delta(&ctx, w, settings.margin)?);

    let modules: Vec<(String, Module)> = probes.iter().filter_map(|p| p.module.clone().map(|m| (p.name.clone(), m))).collect();
    for (name, x) in &modules {
        let c = classify_xi(u, n, name, x);
        if let Some(i) = c.class {
            if w.contains(-(i as i32)) {
                report.push(verify_corollary_roundtrip(&ctx, n, name, x, i, w, settings.margin)?);
            }
        }
        report.classification.push(c);
    }

    if tilting {
        let t = u.cohomology(0);
        let sub = verify_tilting_theorem(instance, "H0(U)", &t, u.algebra(), &modules, settings)?;
        for mut rec in sub.checks {
            rec.name = format!("tilting/{}", rec.name);
            report.push(rec);
        }
        report.scope.extend(sub.scope.into_iter().map(|s| format!("tilting: {s}")));
    }
    Ok(report)
}
