//! Small algebras and complexes used across tests, the guide, and the
//! shipped `.alg` fixture files.

use crate::algebra::{build_algebra, AlgebraPresentation, Arrow, Path, Quiver, DEFAULT_PATH_BOUND};
use crate::complex::TwoTermComplex;
use crate::field::FieldTag;
use std::sync::Arc;

/// One vertex, no arrows.
pub fn point(field: FieldTag) -> Arc<AlgebraPresentation> {
    let q = Quiver::new(1, vec![]).unwrap();
    build_algebra(q, vec![], field, DEFAULT_PATH_BOUND).unwrap()
}

/// The A2 quiver `1 -a-> 2`, no relations.
pub fn a2(field: FieldTag) -> Arc<AlgebraPresentation> {
    let q = Quiver::new(
        2,
        vec![Arrow {
            name: "a".into(),
            source: 0,
            target: 1,
        }],
    )
    .unwrap();
    build_algebra(q, vec![], field, DEFAULT_PATH_BOUND).unwrap()
}

/// The 4-cycle quiver `1 -a-> 2 -b-> 3 -c-> 4 -d-> 1` with all length-two
/// compositions `b*a = c*b = d*c = a*d = 0`.
pub fn ex310(field: FieldTag) -> Arc<AlgebraPresentation> {
    let q = Quiver::new(
        4,
        vec![
            Arrow {
                name: "a".into(),
                source: 0,
                target: 1,
            },
            Arrow {
                name: "b".into(),
                source: 1,
                target: 2,
            },
            Arrow {
                name: "c".into(),
                source: 2,
                target: 3,
            },
            Arrow {
                name: "d".into(),
                source: 3,
                target: 0,
            },
        ],
    )
    .unwrap();
    let one = field.one();
    let rel = |arrows: Vec<usize>| {
        vec![(
            one.clone(),
            Path {
                vertex: q.arrows[arrows[0]].source,
                arrows,
            },
        )]
    };
    let rels = vec![
        rel(vec![0, 1]),
        rel(vec![1, 2]),
        rel(vec![2, 3]),
        rel(vec![3, 0]),
    ];
    build_algebra(q, rels, field, DEFAULT_PATH_BOUND).unwrap()
}

/// The complex of the worked four-cycle example: the cone of
/// `[[·a, 0, 0, 0], [0, 0, ·c, 0]] : P(2)^2 ⊕ P(4)^2 -> P(1) ⊕ P(3)`.
pub fn ex310_complex(a: &Arc<AlgebraPresentation>) -> TwoTermComplex {
    let alpha = a.arrow_elem(0);
    let gamma = a.arrow_elem(2);
    let z = crate::algebra::AlgElem::zero();
    TwoTermComplex::new(
        a,
        vec![1, 1, 3, 3],
        vec![0, 2],
        vec![
            vec![alpha, z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), gamma, z],
        ],
    )
    .unwrap()
}

/// The stalk complex `0 -> A`.
pub fn free_complex(a: &Arc<AlgebraPresentation>) -> TwoTermComplex {
    let n = a.vertex_count();
    TwoTermComplex::new(a, vec![], (0..n).collect(), vec![Vec::new(); n]).unwrap()
}

/// `A[1]`: the regular module in degree -1.
pub fn shifted_free_complex(a: &Arc<AlgebraPresentation>) -> TwoTermComplex {
    let n = a.vertex_count();
    TwoTermComplex::new(a, (0..n).collect(), vec![], vec![]).unwrap()
}

/// The APR-style tilting complex `(P(2) -a-> P(1)) ⊕ (0 -> P(1))` over the
/// A2 quiver.
pub fn a2_tilt(a: &Arc<AlgebraPresentation>) -> TwoTermComplex {
    let alpha = a.arrow_elem(0);
    let z = crate::algebra::AlgElem::zero();
    TwoTermComplex::new(a, vec![1], vec![0, 0], vec![vec![alpha], vec![z]]).unwrap()
}
