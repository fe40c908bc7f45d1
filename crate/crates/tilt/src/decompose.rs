//! Isomorphism testing and Krull–Schmidt decomposition of modules via
//! idempotent splitting in endomorphism algebras.

use crate::basisalg::BasisAlgebra;
use crate::error::Result;
use crate::field::{FieldTag, Scalar};
use crate::matrix::Matrix;
use crate::module::{hom_space, image, kernel, ModuleMap, Representation};
use crate::rng::Rng;

/// `End(M)` as a basis algebra (multiplication = composition), together
/// with the hom basis realizing each coordinate vector.
pub fn endo_algebra(m: &Representation) -> (BasisAlgebra, Vec<ModuleMap>) {
    let f = m.algebra.field;
    let basis = hom_space(m, m);
    let dim = basis.len();
    let flat: Vec<Vec<Scalar>> = basis.iter().map(ModuleMap::flatten).collect();
    let amb = flat.first().map(Vec::len).unwrap_or(0);
    let hmat = Matrix::from_columns(amb, f, &flat);
    let coords = |mm: &ModuleMap| -> Vec<Scalar> {
        hmat.solve_matrix(&Matrix::from_columns(amb, f, &[mm.flatten()]))
            .expect("endomorphism lies in the hom space")
            .column(0)
    };
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            mult[i][j] = coords(&basis[i].compose(&basis[j]));
        }
    }
    let unit = coords(&ModuleMap::identity(m));
    (
        BasisAlgebra {
            field: f,
            dim,
            mult,
            unit,
        },
        basis,
    )
}

/// Realize a coordinate vector over the hom basis as a ModuleMap.
pub fn combine_maps(basis: &[ModuleMap], coords: &[Scalar]) -> ModuleMap {
    let mut acc = ModuleMap::zero(&basis[0].source, &basis[0].target);
    for (b, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

fn is_invertible_map(f: &ModuleMap) -> bool {
    f.mats.iter().all(Matrix::is_invertible)
}

/// Decide `M ≅ N` by searching for an invertible homomorphism.
///
/// Over a finite field the search is exhaustive when the hom space is
/// small (≤ 2^20 elements); over the rationals it combines the hom basis,
/// a deterministic evaluation grid for hom dimension ≤ 4, and seeded
/// random combinations. Exactness with bounded cost: a `false` from the
/// randomized path is not a proof, but dimensions this crate meets keep
/// the search exhaustive or grid-complete.
pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64) -> bool {
    if m.dims != n.dims {
        return false;
    }
    if m.total_dim() == 0 {
        return true;
    }
    let f = m.algebra.field;
    let basis = hom_space(m, n);
    if basis.is_empty() {
        return false;
    }
    let d = basis.len();
    // an isomorphism identifies all four hom spaces
    if crate::module::hom_dim(n, m) != d
        || crate::module::hom_dim(m, m) != d
        || crate::module::hom_dim(n, n) != d
    {
        return false;
    }
    for b in &basis {
        if is_invertible_map(b) {
            return true;
        }
    }
    match f {
        FieldTag::Prime(p) => {
            // random combinations find existing isomorphisms quickly (the
            // invertible locus is a positive fraction of the hom space)
            let mut rng = Rng::new(seed);
            for _ in 0..256 {
                let v: Vec<Scalar> = (0..d).map(|_| Scalar::Mod(rng.below(p))).collect();
                if is_invertible_map(&combine_maps(&basis, &v)) {
                    return true;
                }
            }
            let total = (p as u128).checked_pow(d as u32);
            if total.map(|t| t <= 1 << 20).unwrap_or(false) {
                // exhaustive odometer certifies the negative
                let mut coeffs = vec![0u64; d];
                loop {
                    let mut carry = 0;
                    loop {
                        if carry == d {
                            return false;
                        }
                        coeffs[carry] += 1;
                        if coeffs[carry] == p {
                            coeffs[carry] = 0;
                            carry += 1;
                        } else {
                            break;
                        }
                    }
                    let v: Vec<Scalar> = coeffs.iter().map(|&c| Scalar::Mod(c)).collect();
                    if is_invertible_map(&combine_maps(&basis, &v)) {
                        return true;
                    }
                }
            } else {
                let mut rng = Rng::new(seed.wrapping_add(1));
                for _ in 0..4096 {
                    let v: Vec<Scalar> = (0..d).map(|_| Scalar::Mod(rng.below(p))).collect();
                    if is_invertible_map(&combine_maps(&basis, &v)) {
                        return true;
                    }
                }
                false
            }
        }
        FieldTag::Rational => {
            let deg: usize = m.total_dim();
            if d <= 4 {
                // the determinant polynomial has degree <= deg in each
                // variable, so a (deg+1)-point grid per variable decides it
                let pts = deg + 1;
                let mut idx = vec![0usize; d];
                loop {
                    let v: Vec<Scalar> = idx.iter().map(|&i| f.from_i64(i as i64)).collect();
                    if is_invertible_map(&combine_maps(&basis, &v)) {
                        return true;
                    }
                    let mut carry = 0;
                    loop {
                        if carry == d {
                            return false;
                        }
                        idx[carry] += 1;
                        if idx[carry] == pts {
                            idx[carry] = 0;
                            carry += 1;
                        } else {
                            break;
                        }
                    }
                }
            } else {
                let mut rng = Rng::new(seed);
                for _ in 0..4096 {
                    let v: Vec<Scalar> = (0..d).map(|_| f.from_i64(rng.small_i64(4))).collect();
                    if is_invertible_map(&combine_maps(&basis, &v)) {
                        return true;
                    }
                }
                false
            }
        }
    }
}

/// Indecomposable direct summands of `M`, certified through idempotent
/// splitting of `End(M)`: a piece is returned only once its endomorphism
/// algebra is local.
pub fn indecomposable_summands(m: &Representation, seed: u64) -> Result<Vec<Representation>> {
    if m.total_dim() == 0 {
        return Ok(Vec::new());
    }
    let (endo, basis) = endo_algebra(m);
    match endo.find_nontrivial_idempotent(seed)? {
        None => Ok(vec![m.clone()]),
        Some(coords) => {
            let e = combine_maps(&basis, &coords);
            let (part1, _) = image(&e);
            let (part2, _) = kernel(&e);
            debug_assert_eq!(part1.total_dim() + part2.total_dim(), m.total_dim());
            let mut out = indecomposable_summands(&part1, seed.wrapping_add(1))?;
            out.extend(indecomposable_summands(&part2, seed.wrapping_add(2))?);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::Representation;

    const Q: FieldTag = FieldTag::Rational;

    #[test]
    fn iso_reflexive_and_basic_negatives() {
        let a = fixtures::a2(Q);
        let p1 = a.projective(0);
        assert!(is_isomorphic(&p1, &p1, 0));
        assert!(!is_isomorphic(&a.simple(0), &a.simple(1), 0));
        // same dimension vector, different modules: P(1) vs S(1)+S(2)
        let ss = Representation::direct_sum(&[&a.simple(0), &a.simple(1)]);
        assert!(!is_isomorphic(&p1, &ss, 0));
    }

    #[test]
    fn iso_after_base_change() {
        // P(1) with a scaled arrow matrix is isomorphic to P(1) over Q
        let a = fixtures::a2(Q);
        let p1 = a.projective(0);
        let mut twisted = p1.clone();
        twisted.maps[0] = twisted.maps[0].scale(&Q.from_i64(7));
        assert!(is_isomorphic(&p1, &twisted, 0));
    }

    #[test]
    fn summands_of_a_direct_sum() {
        let a = fixtures::a2(Q);
        let m = Representation::direct_sum(&[&a.projective(0), &a.simple(1)]);
        let parts = indecomposable_summands(&m, 0).unwrap();
        assert_eq!(parts.len(), 2);
        let dims: Vec<usize> = {
            let mut d: Vec<usize> = parts.iter().map(Representation::total_dim).collect();
            d.sort();
            d
        };
        assert_eq!(dims, vec![1, 2]);
        let p1 = a.projective(0);
        assert!(parts.iter().any(|p| is_isomorphic(p, &p1, 0)));
    }

    #[test]
    fn summands_over_f2() {
        let a = fixtures::ex310(FieldTag::Prime(2));
        let reg = a.regular();
        let parts = indecomposable_summands(&reg, 0).unwrap();
        assert_eq!(parts.len(), 4);
        for p in &parts {
            assert_eq!(p.total_dim(), 2);
        }
        // every part is one of the projectives
        for p in &parts {
            assert!((0..4).any(|v| is_isomorphic(p, &a.projective(v), 0)));
        }
    }

    #[test]
    fn indecomposable_is_certified() {
        let a = fixtures::ex310(FieldTag::Prime(2));
        for v in 0..4 {
            let parts = indecomposable_summands(&a.projective(v), 0).unwrap();
            assert_eq!(parts.len(), 1);
        }
    }

    #[test]
    fn semisimple_square_splits() {
        // S(1)^2 has End = Mat_2(k); splitting must find both copies
        for f in [Q, FieldTag::Prime(2)] {
            let a = fixtures::a2(f);
            let m = Representation::direct_sum(&[&a.simple(0), &a.simple(0)]);
            let parts = indecomposable_summands(&m, 0).unwrap();
            assert_eq!(parts.len(), 2);
        }
    }
}
