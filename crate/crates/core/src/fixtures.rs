//! The reference instances over `F_101`, each chosen by exhaustive search.
//!
//! Over `1 -> 2` every representation with dimension vector `(d1, d2)` and
//! arrow rank `r` is `P1^r ⊕ S1^(d1-r) ⊕ S2^(d2-r)`, so isomorphism classes of
//! modules are enumerated by `(d1, d2, r)`.

use std::collections::BTreeMap;

use crate::complex::{minimize, proj_replacement, Complex, DEFAULT_LENGTH_CAP};
use crate::error::Result;
use crate::field::Field;
use crate::hom::derived_hom_dim;
use crate::instance::{build_module, complex_spec, ArrowSpec, Entry, Instance, InstanceFile, ModuleSpec, Options, QuiverSpec, SCHEMA};
use crate::module::{hom_space, Module};

pub const PRIME: u64 = 101;

fn field() -> Field {
    Field::Prime(PRIME)
}

fn a2_quiver() -> QuiverSpec {
    QuiverSpec {
        vertices: vec!["1".into(), "2".into()],
        arrows: vec![ArrowSpec { label: "a".into(), source: 0, target: 1 }],
        relations: Vec::new(),
    }
}

fn file(name: &str, quiver: QuiverSpec) -> InstanceFile {
    InstanceFile {
        schema: SCHEMA,
        name: name.into(),
        field: field(),
        quiver,
        modules: BTreeMap::new(),
        complexes: BTreeMap::new(),
        options: Options::default(),
    }
}

/// The representation `(d1, d2)` whose arrow has rank `r` in normal form.
pub fn a2_module(d1: usize, d2: usize, r: usize) -> ModuleSpec {
    let m = (0..d2).map(|i| (0..d1).map(|j| Entry::Int((i == j && i < r) as i64)).collect()).collect();
    ModuleSpec { dims: vec![d1, d2], arrows: vec![m] }
}

/// Multiplicities of `P1`, `S1`, `S2` in the class `(d1, d2, r)`.
fn a2_summands(d1: usize, d2: usize, r: usize) -> [usize; 3] {
    [r, d1 - r, d2 - r]
}

/// A basic module over `1 -> 2` of total dimension at most 3, given as `(d1, d2, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct A2Class {
    pub d1: usize,
    pub d2: usize,
    pub r: usize,
}

/// All isomorphism classes of nonzero modules of total dimension `<= max_dim`.
pub fn a2_classes(max_dim: usize) -> Vec<A2Class> {
    let mut out = Vec::new();
    for d1 in 0..=max_dim {
        for d2 in 0..=max_dim - d1 {
            for r in 0..=d1.min(d2) {
                if d1 + d2 > 0 {
                    out.push(A2Class { d1, d2, r });
                }
            }
        }
    }
    out
}

/// Classical tilting over `1 -> 2`: basic, projective dimension at most one,
/// no self-extensions, and two nonisomorphic indecomposable summands.
pub fn is_basic_tilting(inst: &Instance, c: A2Class) -> Result<bool> {
    let mult = a2_summands(c.d1, c.d2, c.r);
    if mult.iter().any(|&m| m > 1) || mult.iter().filter(|&&m| m == 1).count() != 2 {
        return Ok(false);
    }
    let a = &inst.algebra;
    let t = build_module(a, &a2_module(c.d1, c.d2, c.r))?;
    let x = Complex::concentrated(a.clone(), t, 0);
    let (p, _) = proj_replacement(&x, DEFAULT_LENGTH_CAP)?;
    if p.lo() < -1 {
        return Ok(false);
    }
    Ok(derived_hom_dim(&p, &x, 1)? == 0)
}

pub fn fix_k() -> InstanceFile {
    let mut f = file("FIX-K", QuiverSpec { vertices: vec!["1".into()], arrows: Vec::new(), relations: Vec::new() });
    f.modules.insert("S1".into(), ModuleSpec { dims: vec![1], arrows: Vec::new() });
    f
}

/// `1 -> 2` with its simples, projectives and both orderings of the two-term pair.
pub fn fix_a2() -> InstanceFile {
    let mut f = file("FIX-A2", a2_quiver());
    f.modules.insert("S1".into(), a2_module(1, 0, 0));
    f.modules.insert("S2".into(), a2_module(0, 1, 0));
    f.modules.insert("P1".into(), a2_module(1, 1, 1));
    let inst = Instance::build(f.clone()).expect("FIX-A2 builds");
    let (good, bad) = silt2_pair(&inst);
    f.complexes.insert("silt2".into(), complex_spec(&good).expect("projective"));
    f.complexes.insert("silt2-wrong-orientation".into(), complex_spec(&bad).expect("projective"));
    f
}

fn proj(inst: &Instance, i: usize, degree: i32) -> Complex {
    let a = &inst.algebra;
    Complex::concentrated(a.clone(), Module::projective(a, i).expect("vertex"), 0).shift(-degree)
}

/// Dimension of `Hom_K(U, U[1])` for a complex with zero differential:
/// the sum of `Hom_A(U^i, U^{i+1})`.
fn shifted_self_homs(u: &Complex) -> usize {
    let a = u.algebra();
    (u.lo()..=u.hi()).map(|i| hom_space(a, u.term(i), u.term(i + 1)).dim()).sum()
}

/// `(P2 ⊕ P1[1], P1 ⊕ P2[1])` ordered so that the first has no positive self-extensions.
fn silt2_pair(inst: &Instance) -> (Complex, Complex) {
    let a = inst.algebra.clone();
    let x = Complex::direct_sum(a.clone(), &[&proj(inst, 0, 0), &proj(inst, 1, -1)]);
    let y = Complex::direct_sum(a, &[&proj(inst, 1, 0), &proj(inst, 0, -1)]);
    let (dx, dy) = (shifted_self_homs(&x), shifted_self_homs(&y));
    assert!((dx == 0) != (dy == 0), "exactly one ordering is presilting");
    if dx == 0 {
        (x, y)
    } else {
        (y, x)
    }
}

/// The basic tilting modules over `1 -> 2` of total dimension at most 3.
pub fn a2_tilting_classes() -> Vec<A2Class> {
    let inst = Instance::build(file("A2", a2_quiver())).expect("A2 builds");
    a2_classes(3).into_iter().filter(|&c| is_basic_tilting(&inst, c).expect("search")).collect()
}

/// The projective resolution of the basic tilting module not isomorphic to `A`.
pub fn fix_tilt() -> InstanceFile {
    let mut f = file("FIX-TILT", a2_quiver());
    let free = A2Class { d1: 1, d2: 2, r: 1 };
    let found: Vec<A2Class> = a2_tilting_classes().into_iter().filter(|&c| c != free).collect();
    assert_eq!(found.len(), 1, "one basic tilting module besides A");
    let c = found[0];
    f.modules.insert("T".into(), a2_module(c.d1, c.d2, c.r));
    let inst = Instance::build(f.clone()).expect("FIX-TILT builds");
    let t = inst.object("T").expect("T");
    let (u, _) = proj_replacement(&t, DEFAULT_LENGTH_CAP).expect("finite projective dimension");
    f.complexes.insert("U".into(), complex_spec(&minimize(&u)).expect("projective"));
    f.modules.insert("S1".into(), a2_module(1, 0, 0));
    f.modules.insert("S2".into(), a2_module(0, 1, 0));
    f.modules.insert("P1".into(), a2_module(1, 1, 1));
    f
}

/// The presilting member of the two-term pair.
pub fn fix_silt2() -> InstanceFile {
    let a2 = fix_a2();
    let mut f = file("FIX-SILT2", a2_quiver());
    f.complexes.insert("U".into(), a2.complexes["silt2"].clone());
    f.modules = a2.modules;
    f
}

/// All reference instances by file stem.
pub fn all() -> Vec<(&'static str, InstanceFile)> {
    vec![("fix-k", fix_k()), ("fix-a2", fix_a2()), ("fix-tilt", fix_tilt()), ("fix-silt2", fix_silt2())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::find_isomorphism;
    use crate::silting::is_presilting;
    use std::path::PathBuf;

    fn dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
    }

    #[test]
    fn exactly_two_basic_tilting_modules() {
        let found = a2_tilting_classes();
        assert_eq!(found.len(), 2);
        assert!(found.contains(&A2Class { d1: 1, d2: 2, r: 1 }));
    }

    #[test]
    fn tilt_resolves_its_module() {
        let inst = Instance::build(fix_tilt()).unwrap();
        let u = inst.object("U").unwrap();
        let t = inst.module("T").unwrap();
        assert!(u.is_projective());
        assert_eq!(u.total_dim(), 5);
        for (n, d) in u.cohomology_table() {
            assert_eq!(d, if n == 0 { t.dim() } else { 0 });
        }
        assert!(find_isomorphism(&inst.algebra, &u.cohomology(0), t).is_some());
    }

    #[test]
    fn silt2_orientations() {
        let inst = Instance::build(fix_a2()).unwrap();
        assert!(is_presilting(&inst.object("silt2").unwrap()).unwrap().holds);
        assert!(!is_presilting(&inst.object("silt2-wrong-orientation").unwrap()).unwrap().holds);
    }

    /// Set `UPDATE_FIXTURES=1` to rewrite the files.
    #[test]
    fn committed_files_match() {
        for (stem, f) in all() {
            let path = dir().join(format!("{stem}.json"));
            let text = f.to_json();
            if std::env::var_os("UPDATE_FIXTURES").is_some() {
                std::fs::create_dir_all(dir()).unwrap();
                std::fs::write(&path, format!("{text}\n")).unwrap();
            }
            let on_disk = std::fs::read_to_string(&path).unwrap();
            assert_eq!(on_disk.trim_end(), text, "{stem}");
            let parsed = InstanceFile::from_json(&on_disk).unwrap();
            assert_eq!(parsed, f);
            assert_eq!(parsed.to_json(), text);
            Instance::build(parsed).unwrap();
        }
    }
}
