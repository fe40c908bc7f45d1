//! Brute-force enumeration of all modules up to isomorphism with bounded
//! dimension vector over a finite field: the oracle behind every
//! "certified up to bound" verdict.

use crate::algebra::AlgebraPresentation;
use crate::decompose::is_isomorphic;
use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::matrix::Matrix;
use crate::module::Representation;
use std::collections::BTreeMap;
use std::sync::Arc;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// All modules with dimension vector below the bound, one representative
/// per isomorphism class, in a deterministic order.
pub struct ModuleInventory {
    pub algebra: Arc<AlgebraPresentation>,
    pub bound: Vec<usize>,
    pub representatives: Vec<Representation>,
}

fn dim_vectors(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &b in bound {
        let mut next = Vec::new();
        for prefix in &out {
            for d in 0..=b {
                let mut v = prefix.clone();
                v.push(d);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn candidate_count(a: &AlgebraPresentation, dv: &[usize], p: u64) -> Option<u128> {
    let entries: usize = a
        .quiver
        .arrows
        .iter()
        .map(|ar| dv[ar.target] * dv[ar.source])
        .sum();
    if entries > 96 {
        return None; // certainly past any sane budget
    }
    (p as u128).checked_pow(entries as u32)
}

type Key = (
    Vec<usize>,
    Vec<usize>,
    Vec<usize>,
    Vec<usize>,
    Vec<usize>,
    usize,
);

/// Invariant fingerprint for isomorphism pre-bucketing: dimension vector,
/// sorted arrow ranks, sorted ranks of composable arrow pairs, radical
/// and socle dimension vectors, and the endomorphism dimension. Cheap to
/// compute and fine enough that buckets almost always hold one class.
fn invariant_key(m: &Representation) -> Key {
    let mut arrow_ranks: Vec<usize> = m.maps.iter().map(Matrix::rank).collect();
    arrow_ranks.sort();
    let q = &m.algebra.quiver;
    let mut pair_ranks = Vec::new();
    for (i, a) in q.arrows.iter().enumerate() {
        for (j, b) in q.arrows.iter().enumerate() {
            if b.source == a.target {
                pair_ranks.push(m.maps[j].mul(&m.maps[i]).rank());
            }
        }
    }
    pair_ranks.sort();
    let rad_dims = crate::module::radical(m).0.dims.clone();
    let soc_dims = crate::module::socle(m).0.dims.clone();
    let end_dim = crate::module::hom_dim(m, m);
    (
        m.dims.clone(),
        arrow_ranks,
        pair_ranks,
        rad_dims,
        soc_dims,
        end_dim,
    )
}

/// Exhaustive enumeration up to isomorphism. Requires a finite field; the
/// candidate budget is checked before any tuples are generated.
pub fn enumerate(
    a: &Arc<AlgebraPresentation>,
    bound: &[usize],
    budget: u128,
    seed: u64,
) -> Result<ModuleInventory> {
    let FieldTag::Prime(p) = a.field else {
        return Err(Error::OracleNeedsFiniteField(a.field.to_string()));
    };
    if bound.len() != a.vertex_count() {
        return Err(Error::Precondition(
            "bound length must match vertex count".into(),
        ));
    }
    let dvs = dim_vectors(bound);
    let mut total: u128 = 0;
    for dv in &dvs {
        match candidate_count(a, dv, p) {
            Some(c) => {
                total = total.saturating_add(c);
                if total > budget {
                    return Err(Error::BudgetExceeded {
                        dim_vector: dv.clone(),
                        candidates: total,
                        budget,
                    });
                }
            }
            None => {
                return Err(Error::BudgetExceeded {
                    dim_vector: dv.clone(),
                    candidates: u128::MAX,
                    budget,
                })
            }
        }
    }

    let mut reps: Vec<Representation> = Vec::new();
    let mut buckets: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    for dv in &dvs {
        let shapes: Vec<(usize, usize)> = a
            .quiver
            .arrows
            .iter()
            .map(|ar| (dv[ar.target], dv[ar.source]))
            .collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let mut digits = vec![0u64; entries];
        let mut exhausted = false;
        while !exhausted {
            let mut maps = Vec::with_capacity(shapes.len());
            let mut off = 0;
            for &(r, c) in &shapes {
                let data: Vec<Scalar> = digits[off..off + r * c]
                    .iter()
                    .map(|&d| Scalar::Mod(d))
                    .collect();
                maps.push(Matrix::new(r, c, a.field, data));
                off += r * c;
            }
            let cand = Representation::new_unchecked(Arc::clone(a), dv.clone(), maps);
            if cand.validate().is_ok() {
                let key = invariant_key(&cand);
                let bucket = buckets.entry(key).or_default();
                let mut known = false;
                for &i in bucket.iter() {
                    if is_isomorphic(&cand, &reps[i], seed) {
                        known = true;
                        break;
                    }
                }
                if !known {
                    bucket.push(reps.len());
                    reps.push(cand);
                }
            }
            // odometer step
            let mut carry = 0;
            loop {
                if carry == entries {
                    exhausted = true;
                    break;
                }
                digits[carry] += 1;
                if digits[carry] == p {
                    digits[carry] = 0;
                    carry += 1;
                } else {
                    break;
                }
            }
        }
    }
    Ok(ModuleInventory {
        algebra: Arc::clone(a),
        bound: bound.to_vec(),
        representatives: reps,
    })
}

impl ModuleInventory {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn point_algebra_bound_one() {
        let a = fixtures::point(FieldTag::Prime(2));
        let inv = enumerate(&a, &[1], DEFAULT_BUDGET, 0).unwrap();
        // 0 and k
        assert_eq!(inv.len(), 2);
    }

    #[test]
    fn a2_bound_one_one_has_five_classes() {
        let a = fixtures::a2(FieldTag::Prime(2));
        let inv = enumerate(&a, &[1, 1], DEFAULT_BUDGET, 0).unwrap();
        // 0, S(1), S(2), S(1)+S(2), P(1)
        assert_eq!(inv.len(), 5);
        let p1 = a.projective(0);
        assert!(inv.representatives.iter().any(|m| is_isomorphic(m, &p1, 0)));
    }

    #[test]
    fn ex310_bound_one_contains_all_simples() {
        let a = fixtures::ex310(FieldTag::Prime(2));
        let inv = enumerate(&a, &[1, 1, 1, 1], DEFAULT_BUDGET, 0).unwrap();
        for v in 0..4 {
            let s = a.simple(v);
            assert!(inv.representatives.iter().any(|m| is_isomorphic(m, &s, 0)));
        }
    }

    #[test]
    fn rationals_refused() {
        let a = fixtures::a2(FieldTag::Rational);
        assert!(matches!(
            enumerate(&a, &[1, 1], DEFAULT_BUDGET, 0),
            Err(Error::OracleNeedsFiniteField(_))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let a = fixtures::ex310(FieldTag::Prime(2));
        let err = enumerate(&a, &[2, 2, 2, 2], 100, 0);
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }
}
