use std::sync::Arc;

use proptest::prelude::*;

use crate::algebra::{path_algebra, Algebra, Arrow, QuiverPresentation};
use crate::complex::{ChainMap, Complex};
use crate::field::{Field, Scalar};
use crate::hom::hom_complex;
use crate::module::{hom_space, Module};

pub fn field() -> Field {
    Field::prime(101).unwrap()
}

pub fn quiver(vertices: usize, arrows: &[(usize, usize)], relations: Vec<Vec<(i64, Vec<usize>)>>) -> Arc<Algebra> {
    let f = field();
    let q = QuiverPresentation {
        field: f,
        vertices: (1..=vertices).map(|v| v.to_string()).collect(),
        arrows: arrows
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| Arrow { label: format!("a{k}"), source: s, target: t })
            .collect(),
        relations: relations
            .into_iter()
            .map(|r| r.into_iter().map(|(c, p)| (f.from_i64(c), p)).collect())
            .collect(),
    };
    Arc::new(path_algebra(&q, 512).unwrap())
}

/// `1 -> 2`.
pub fn a2() -> Arc<Algebra> {
    quiver(2, &[(0, 1)], vec![])
}

/// `1 -> 2 -> 3` with the composite zero.
pub fn a3_rad2() -> Arc<Algebra> {
    quiver(3, &[(0, 1), (1, 2)], vec![vec![(1, vec![0, 1])]])
}

/// `k[x]/x^2`.
pub fn dual() -> Arc<Algebra> {
    quiver(1, &[(0, 0)], vec![vec![(1, vec![0, 0])]])
}

/// `P2 -> P1` over `a2()`, a projective resolution of `S1`.
pub fn p2_to_p1(a: &Arc<Algebra>) -> Complex {
    let p1 = Module::projective(a, 0).unwrap();
    let p2 = Module::projective(a, 1).unwrap();
    let h = hom_space(a, &p2, &p1);
    Complex::new(a.clone(), -1, vec![p2, p1], vec![h.maps()[0].clone()]).unwrap()
}

fn scalars(seed: &[i64]) -> impl Iterator<Item = Scalar> + '_ {
    let f = field();
    seed.iter().cycle().map(move |&c| f.from_i64(c))
}

/// A two-term complex of projectives `P -> Q` in degrees `lo, lo+1`, with a
/// differential drawn from the seed.
pub fn two_term(a: &Arc<Algebra>, src: &[usize], tgt: &[usize], lo: i32, seed: &[i64]) -> Complex {
    let f = field();
    let p = Module::projective_sum(a, src).unwrap();
    let q = Module::projective_sum(a, tgt).unwrap();
    let h = hom_space(a, &p, &q);
    let coeffs: Vec<Scalar> = scalars(seed).take(h.dim()).collect();
    let d = h.element(f, &coeffs);
    Complex::new(a.clone(), lo, vec![p, q], vec![d]).unwrap()
}

/// A chain map drawn from the seed as a combination of a basis of cocycles.
pub fn chain_map(x: &Complex, y: &Complex, seed: &[i64]) -> ChainMap {
    let f = field();
    let h = hom_complex(x, y);
    let z = h.diff(0).kernel_basis();
    let mut v = vec![f.zero(); h.dim(0)];
    for (c, col) in scalars(seed).zip(z.columns()) {
        crate::matrix::axpy(f, &mut v, &c, &col);
    }
    h.chain_map(&v)
}

/// Small random complexes over `a2()`: cones of random maps between random
/// two-term complexes, so that three-term complexes occur too.
pub fn arb_complex() -> impl Strategy<Value = Complex> {
    (
        prop::collection::vec(0usize..2, 0..3),
        prop::collection::vec(0usize..2, 0..3),
        prop::collection::vec(0usize..2, 0..3),
        prop::collection::vec(0usize..2, 0..3),
        prop::collection::vec(-3i64..4, 1..8),
        -2i32..2,
        any::<bool>(),
    )
        .prop_map(|(s1, t1, s2, t2, seed, lo, coned)| {
            let a = a2();
            let x = two_term(&a, &s1, &t1, lo, &seed);
            if !coned {
                return x;
            }
            let y = two_term(&a, &s2, &t2, lo + 1, &seed[1..]);
            let f = chain_map(&x, &y, &seed);
            crate::complex::cone(&f).0
        })
}
