//! Shared generators for the integration suites: seeded random two-term
//! complexes and valid modules over the fixture algebras.
#![allow(dead_code)] // each test binary uses a different subset

use std::sync::Arc;
use tilt::algebra::{AlgElem, AlgebraPresentation};
use tilt::complex::{cohomology, TwoTermComplex};
use tilt::field::FieldTag;
use tilt::module::Representation;
use tilt::rng::Rng;

/// Random element of `e_target A e_source` with small coefficients.
pub fn random_bracketed(
    a: &AlgebraPresentation,
    target: usize,
    source: usize,
    rng: &mut Rng,
) -> AlgElem {
    let mut acc = AlgElem::zero();
    for (i, p) in a.basis.iter().enumerate() {
        if p.source() == source && p.target(&a.quiver) == target {
            let c = match a.field {
                FieldTag::Prime(q) => a.field.from_i64(rng.below(q.min(4)) as i64),
                FieldTag::Rational => a.field.from_i64(rng.small_i64(2)),
            };
            if !c.is_zero() {
                let term = AlgElem {
                    coeffs: vec![(i, c)],
                };
                acc = a.add(&acc, &term);
            }
        }
    }
    acc
}

/// Random two-term complex with up to `max_summands` summands per degree.
pub fn random_complex(
    a: &Arc<AlgebraPresentation>,
    max_summands: usize,
    rng: &mut Rng,
) -> TwoTermComplex {
    let n = a.vertex_count();
    let pick = |rng: &mut Rng| -> Vec<usize> {
        let count = rng.below(max_summands as u64 + 1) as usize;
        (0..count).map(|_| rng.below(n as u64) as usize).collect()
    };
    let neg = pick(rng);
    let zero = pick(rng);
    let mut diff = Vec::new();
    for &zr in &zero {
        let mut row = Vec::new();
        for &nc in &neg {
            row.push(random_bracketed(a, nc, zr, rng));
        }
        diff.push(row);
    }
    TwoTermComplex::new(a, neg, zero, diff).expect("random differential is bracketed")
}

/// A pool of valid modules: sums of simples, projectives and injectives
/// plus cohomologies of random complexes (valid over any field).
pub fn module_pool(
    a: &Arc<AlgebraPresentation>,
    rng: &mut Rng,
    count: usize,
) -> Vec<Representation> {
    let op = a.opposite().unwrap();
    let n = a.vertex_count();
    let mut pool = Vec::new();
    pool.push(Representation::zero(a));
    for v in 0..n {
        pool.push(a.simple(v));
        pool.push(a.projective(v));
        pool.push(a.injective(v, &op));
    }
    while pool.len() < count {
        match rng.below(3) {
            0 => {
                let i = rng.below(pool.len() as u64) as usize;
                let j = rng.below(pool.len() as u64) as usize;
                let (x, y) = (pool[i].clone(), pool[j].clone());
                pool.push(Representation::direct_sum(&[&x, &y]));
            }
            _ => {
                let c = random_complex(a, 2, rng);
                let b = cohomology(&c, &op);
                pool.push(if rng.below(2) == 0 { b.h0 } else { b.hminus1 });
            }
        }
    }
    pool.truncate(count);
    pool
}
