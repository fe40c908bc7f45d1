//! Finite-dimensional path algebras with relations.
//!
//! Composition is function-style throughout: the written product `b*a`
//! means "`a` then `b`", so for arrows `a: 1 -> 2` and `b: 2 -> 3` the
//! path `b*a` runs from 1 to 3. Every fixture in this crate depends on
//! that convention; the opposite one silently breaks all of them.
//!
//! A path `p` satisfies `p = e_target(p) * p * e_source(p)`. Vertices are
//! 0-based internally and 1-based in the text format and display output.

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::matrix::Matrix;
use crate::module::Representation;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for a in &arrows {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::IndexOutOfRange(format!(
                    "arrow {} endpoints out of range",
                    a.name
                )));
            }
            if !seen.insert(a.name.clone()) {
                return Err(Error::Precondition(format!(
                    "duplicate arrow name {}",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Same arrows with endpoints swapped, in the same order.
    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertices: self.vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

/// A path in a quiver: either a lone vertex idempotent, or a nonempty
/// composable sequence of arrows stored in application order
/// (`arrows[0]` acts first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub vertex: usize,      // source vertex
    pub arrows: Vec<usize>, // arrow indices, first applied first
}

impl Path {
    pub fn idempotent(vertex: usize) -> Path {
        Path {
            vertex,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        assert!(!arrows.is_empty());
        for w in arrows.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::Precondition("non-composable arrow sequence".into()));
            }
        }
        Ok(Path {
            vertex: q.arrows[arrows[0]].source,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.vertex
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&a) => q.arrows[a].target,
            None => self.vertex,
        }
    }

    /// The same walk in the reversed quiver.
    pub fn reversed(&self, q: &Quiver) -> Path {
        if self.arrows.is_empty() {
            self.clone()
        } else {
            Path {
                vertex: self.target(q),
                arrows: self.arrows.iter().rev().copied().collect(),
            }
        }
    }

    /// Length-lexicographic order: by length, then arrow sequence, with
    /// idempotents ordered by vertex.
    fn length_lex_key(&self) -> (usize, usize, &[usize]) {
        (self.arrows.len(), self.vertex, &self.arrows)
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.length_lex_key().cmp(&other.length_lex_key())
    }
}

/// A relation: a k-linear combination of parallel paths that is declared
/// zero in the quotient.
pub type Relation = Vec<(Scalar, Path)>;

/// A linear combination of basis paths, sparse over basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgElem {
    pub coeffs: Vec<(usize, Scalar)>, // sorted by index, scalars nonzero
}

impl AlgElem {
    pub fn zero() -> AlgElem {
        AlgElem { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Matrix of a map `⊕_c P(src[c]) -> ⊕_r P(tgt[r])` between direct sums of
/// indecomposable projectives: entry `(r, c)` is an algebra element `g`
/// with path-target `src[c]` and path-source `tgt[r]`, acting by right
/// multiplication `x -> x·g`.
pub type AlgMatrix = Vec<Vec<AlgElem>>;

/// A path algebra modulo relations: surviving path basis in
/// length-lexicographic order plus an exact multiplication table.
#[derive(Clone)]
pub struct AlgebraPresentation {
    pub quiver: Quiver,
    pub field: FieldTag,
    pub relations: Vec<Relation>,
    pub basis: Vec<Path>,
    index: BTreeMap<Path, usize>,
    /// Normal forms of reducible paths (up to the working length).
    reduction: BTreeMap<Path, Vec<(usize, Scalar)>>,
    /// mult[i][j] = coordinates of basis[i] * basis[j] (basis[j] applied
    /// first); empty when not composable.
    mult: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl PartialEq for AlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.field == other.field && self.basis == other.basis
    }
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraPresentation(n={}, dim={}, field={})",
            self.quiver.vertices,
            self.basis.len(),
            self.field
        )
    }
}

pub const DEFAULT_PATH_BOUND: usize = 32;

/// Enumerate all paths of length <= max_len, grouped by length.
fn paths_by_length(q: &Quiver, max_len: usize) -> Vec<Vec<Path>> {
    let mut levels: Vec<Vec<Path>> = Vec::new();
    levels.push((0..q.vertices).map(Path::idempotent).collect());
    for len in 1..=max_len {
        let mut next = Vec::new();
        for p in &levels[len - 1] {
            let tgt = p.target(q);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == tgt {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        vertex: p.source(),
                        arrows,
                    });
                }
            }
        }
        next.sort();
        levels.push(next);
    }
    levels
}

/// Build the quotient algebra. The path basis is enumerated breadth-first
/// and reduced modulo the relation ideal with a length-lexicographic
/// order; growth past `max_len` with surviving long paths is an error.
pub fn build_algebra(
    quiver: Quiver,
    relations: Vec<Relation>,
    field: FieldTag,
    max_len: usize,
) -> Result<Arc<AlgebraPresentation>> {
    for rel in &relations {
        if rel.is_empty() {
            return Err(Error::Precondition("empty relation".into()));
        }
        let (s, t) = (rel[0].1.source(), rel[0].1.target(&quiver));
        for (c, p) in rel {
            if !field.owns(c) {
                return Err(Error::Precondition("relation scalar in wrong field".into()));
            }
            if p.source() != s || p.target(&quiver) != t {
                return Err(Error::Precondition(
                    "relation mixes non-parallel paths".into(),
                ));
            }
        }
    }
    let max_rel_len = relations
        .iter()
        .flat_map(|r| r.iter().map(|(_, p)| p.len()))
        .max()
        .unwrap_or(0);

    let mut work_len = max_rel_len.max(2);
    loop {
        if work_len > max_len {
            return Err(Error::BasisOverflow { bound: max_len });
        }
        let levels = paths_by_length(&quiver, work_len);
        // columns sorted biggest-first so that rewriting sends big paths
        // to combinations of smaller ones
        let mut all_paths: Vec<Path> = levels.iter().flatten().cloned().collect();
        all_paths.sort();
        all_paths.reverse();
        let col_of: BTreeMap<&Path, usize> =
            all_paths.iter().enumerate().map(|(i, p)| (p, i)).collect();

        // rows: p * r * q for each relation r, sandwich paths p (left) and
        // q (right), total length within work_len
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for rel in &relations {
            let rel_src = rel[0].1.source();
            let rel_tgt = rel[0].1.target(&quiver);
            let rel_max = rel.iter().map(|(_, p)| p.len()).max().unwrap();
            for q_level in &levels {
                for qp in q_level {
                    if qp.target(&quiver) != rel_src {
                        continue;
                    }
                    if qp.len() + rel_max > work_len {
                        continue;
                    }
                    for p_level in &levels {
                        for pp in p_level {
                            if pp.source() != rel_tgt {
                                continue;
                            }
                            if qp.len() + rel_max + pp.len() > work_len {
                                continue;
                            }
                            let mut row = vec![field.zero(); all_paths.len()];
                            for (c, t) in rel {
                                let mut arrows = qp.arrows.clone();
                                arrows.extend_from_slice(&t.arrows);
                                arrows.extend_from_slice(&pp.arrows);
                                let sandwich = if arrows.is_empty() {
                                    Path::idempotent(qp.source())
                                } else {
                                    Path {
                                        vertex: qp.source(),
                                        arrows,
                                    }
                                };
                                let col = col_of[&sandwich];
                                row[col] = field.add(&row[col], c);
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }

        let m = if rows.is_empty() {
            Matrix::zeros(0, all_paths.len(), field)
        } else {
            let flat: Vec<Scalar> = rows.into_iter().flatten().collect();
            let rlen = flat.len() / all_paths.len();
            Matrix::new(rlen, all_paths.len(), field, flat)
        };
        let (_, r, pivots) = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();

        let mut basis: Vec<Path> = Vec::new();
        for (col, p) in all_paths.iter().enumerate() {
            if !pivot_set.contains(&col) {
                basis.push(p.clone());
            }
        }
        basis.sort();
        let index: BTreeMap<Path, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();

        let mut reduction: BTreeMap<Path, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (row_i, &pcol) in pivots.iter().enumerate() {
            let path = all_paths[pcol].clone();
            let mut combo = Vec::new();
            for (col, other) in all_paths.iter().enumerate() {
                if col == pcol {
                    continue;
                }
                let v = r.get(row_i, col);
                if !v.is_zero() {
                    // pivot path = -sum of the other entries
                    combo.push((index[other], field.neg(v)));
                }
            }
            combo.sort_by_key(|(i, _)| *i);
            reduction.insert(path, combo);
        }

        let max_basis_len = basis.iter().map(Path::len).max().unwrap_or(0);
        let top_reducible = levels[work_len]
            .iter()
            .all(|p| pivot_set.contains(&col_of[p]));
        if !(top_reducible && work_len >= 2 * max_basis_len.max(1) && work_len >= max_rel_len) {
            work_len += 1;
            continue;
        }

        // multiplication table: normal form of concatenations
        let nf = |p: &Path| -> Vec<(usize, Scalar)> {
            if let Some(&i) = index.get(p) {
                vec![(i, field.one())]
            } else {
                reduction.get(p).cloned().unwrap_or_default()
            }
        };
        let dim = basis.len();
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                // basis[i] * basis[j], basis[j] applied first
                if basis[i].source() != basis[j].target(&quiver) {
                    continue;
                }
                let concat = if basis[i].is_empty() && basis[j].is_empty() {
                    basis[j].clone()
                } else {
                    let mut arrows = basis[j].arrows.clone();
                    arrows.extend_from_slice(&basis[i].arrows);
                    Path {
                        vertex: basis[j].source(),
                        arrows,
                    }
                };
                mult[i][j] = nf(&concat);
            }
        }

        let alg = AlgebraPresentation {
            quiver,
            field,
            relations,
            basis,
            index,
            reduction,
            mult,
        };
        alg.check_relations()?;
        return Ok(Arc::new(alg));
    }
}

impl AlgebraPresentation {
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn idempotent(&self, v: usize) -> AlgElem {
        let i = self.index[&Path::idempotent(v)];
        AlgElem {
            coeffs: vec![(i, self.field.one())],
        }
    }

    /// Normal form of an arbitrary path of the quiver as an element.
    pub fn path_elem(&self, p: &Path) -> AlgElem {
        if let Some(&i) = self.index.get(p) {
            return AlgElem {
                coeffs: vec![(i, self.field.one())],
            };
        }
        if let Some(combo) = self.reduction.get(p) {
            return AlgElem {
                coeffs: combo.clone(),
            };
        }
        // longer than the working table: reduce recursively, peeling the
        // last-applied arrow
        assert!(
            !p.arrows.is_empty(),
            "idempotents are always basis elements"
        );
        let last = *p.arrows.last().unwrap();
        let head = if p.arrows.len() == 1 {
            Path::idempotent(p.vertex)
        } else {
            Path {
                vertex: p.vertex,
                arrows: p.arrows[..p.arrows.len() - 1].to_vec(),
            }
        };
        let head_nf = self.path_elem(&head);
        let arrow_p = Path {
            vertex: self.quiver.arrows[last].source,
            arrows: vec![last],
        };
        self.mul(&self.path_elem(&arrow_p), &head_nf)
    }

    pub fn arrow_elem(&self, arrow: usize) -> AlgElem {
        let p = Path {
            vertex: self.quiver.arrows[arrow].source,
            arrows: vec![arrow],
        };
        self.path_elem(&p)
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut map: BTreeMap<usize, Scalar> = a.coeffs.iter().cloned().collect();
        for (i, c) in &b.coeffs {
            let cur = map.remove(i).unwrap_or_else(|| self.field.zero());
            let v = self.field.add(&cur, c);
            if !v.is_zero() {
                map.insert(*i, v);
            }
        }
        AlgElem {
            coeffs: map.into_iter().collect(),
        }
    }

    pub fn scale(&self, s: &Scalar, a: &AlgElem) -> AlgElem {
        if s.is_zero() {
            return AlgElem::zero();
        }
        AlgElem {
            coeffs: a
                .coeffs
                .iter()
                .map(|(i, c)| (*i, self.field.mul(s, c)))
                .collect(),
        }
    }

    /// `a * b` with `b` applied first.
    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, ca) in &a.coeffs {
            for (j, cb) in &b.coeffs {
                let c = self.field.mul(ca, cb);
                if c.is_zero() {
                    continue;
                }
                for (k, ck) in &self.mult[*i][*j] {
                    let cur = map.remove(k).unwrap_or_else(|| self.field.zero());
                    let v = self.field.add(&cur, &self.field.mul(&c, ck));
                    if !v.is_zero() {
                        map.insert(*k, v);
                    }
                }
            }
        }
        AlgElem {
            coeffs: map.into_iter().collect(),
        }
    }

    /// Source/target vertices when every support path shares them.
    pub fn elem_bracket(&self, a: &AlgElem) -> Option<(usize, usize)> {
        let mut st = None;
        for (i, _) in &a.coeffs {
            let p = &self.basis[*i];
            let cur = (p.source(), p.target(&self.quiver));
            match st {
                None => st = Some(cur),
                Some(prev) if prev != cur => return None,
                _ => {}
            }
        }
        st
    }

    fn check_relations(&self) -> Result<()> {
        for rel in &self.relations {
            let mut acc = AlgElem::zero();
            for (c, p) in rel {
                acc = self.add(&acc, &self.scale(c, &self.path_elem(p)));
            }
            if !acc.is_zero() {
                return Err(Error::Precondition(
                    "relation does not vanish in the constructed quotient".into(),
                ));
            }
        }
        Ok(())
    }

    /// Associativity of the multiplication table on all basis triples.
    pub fn check_associativity(&self) -> bool {
        let dim = self.dim();
        let one = self.field.one();
        for i in 0..dim {
            let bi = AlgElem {
                coeffs: vec![(i, one.clone())],
            };
            for j in 0..dim {
                let bj = AlgElem {
                    coeffs: vec![(j, one.clone())],
                };
                for k in 0..dim {
                    let bk = AlgElem {
                        coeffs: vec![(k, one.clone())],
                    };
                    let left = self.mul(&self.mul(&bi, &bj), &bk);
                    let right = self.mul(&bi, &self.mul(&bj, &bk));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The opposite algebra: arrows reversed, relations reversed.
    pub fn opposite(&self) -> Result<Arc<AlgebraPresentation>> {
        let rq = self.quiver.reversed();
        let rels = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|(c, p)| (c.clone(), p.reversed(&self.quiver)))
                    .collect()
            })
            .collect();
        build_algebra(rq, rels, self.field, DEFAULT_PATH_BOUND)
    }

    /// Normal form in the opposite algebra of the reversal of an element
    /// of this algebra.
    pub fn reverse_elem_to(&self, op: &AlgebraPresentation, a: &AlgElem) -> AlgElem {
        let mut acc = AlgElem::zero();
        for (i, c) in &a.coeffs {
            let rp = self.basis[*i].reversed(&self.quiver);
            acc = op.add(&acc, &op.scale(c, &op.path_elem(&rp)));
        }
        acc
    }

    /// Indecomposable projective `A·e_v` as a representation: basis paths
    /// with source `v`, grouped by target vertex.
    pub fn projective(self: &Arc<Self>, v: usize) -> Representation {
        assert!(v < self.vertex_count(), "vertex out of range");
        // per-vertex bases: indices into self.basis, in basis order
        let mut vertex_basis: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count()];
        for (i, p) in self.basis.iter().enumerate() {
            if p.source() == v {
                vertex_basis[p.target(&self.quiver)].push(i);
            }
        }
        let dims: Vec<usize> = vertex_basis.iter().map(Vec::len).collect();
        let mut maps = Vec::new();
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source], self.field);
            for (col, &pi) in vertex_basis[a.source].iter().enumerate() {
                // left multiply by the arrow: a . p
                let mut arrows = self.basis[pi].arrows.clone();
                arrows.push(ai);
                let ext = Path { vertex: v, arrows };
                for (k, c) in self.path_elem(&ext).coeffs {
                    let row = vertex_basis[a.target]
                        .iter()
                        .position(|&b| b == k)
                        .expect("normal form stays in P(v)");
                    m.set(row, col, c);
                }
            }
            maps.push(m);
        }
        Representation::new_unchecked(Arc::clone(self), dims, maps)
    }

    pub fn simple(self: &Arc<Self>, v: usize) -> Representation {
        assert!(v < self.vertex_count(), "vertex out of range");
        let mut dims = vec![0; self.vertex_count()];
        dims[v] = 1;
        let maps = self
            .quiver
            .arrows
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source], self.field))
            .collect();
        Representation::new_unchecked(Arc::clone(self), dims, maps)
    }

    /// `I(v) = D(e_v·A)`, realized as the dual of the opposite projective.
    pub fn injective(self: &Arc<Self>, v: usize, op: &Arc<AlgebraPresentation>) -> Representation {
        op.projective(v).dualize(self)
    }

    /// The Nakayama functor on the projective at `v`: `ν(P(v)) ≅ I(v)`.
    pub fn nakayama_projective(
        self: &Arc<Self>,
        v: usize,
        op: &Arc<AlgebraPresentation>,
    ) -> Representation {
        self.injective(v, op)
    }

    /// The regular module `A` as a left module: `⊕_v P(v)`.
    pub fn regular(self: &Arc<Self>) -> Representation {
        let parts: Vec<Representation> = (0..self.vertex_count())
            .map(|v| self.projective(v))
            .collect();
        Representation::direct_sum(&parts.iter().collect::<Vec<_>>())
    }

    pub fn display_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", p.vertex + 1)
        } else {
            p.arrows
                .iter()
                .rev()
                .map(|&a| self.quiver.arrows[a].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    pub fn display_elem(&self, a: &AlgElem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        a.coeffs
            .iter()
            .map(|(i, c)| {
                let p = self.display_path(&self.basis[*i]);
                if c == &self.field.one() {
                    p
                } else {
                    format!("{c}*{p}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn point_algebra() {
        let a = fixtures::point(FieldTag::Rational);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.vertex_count(), 1);
        assert!(a.check_associativity());
    }

    #[test]
    fn a2_basis() {
        let a = fixtures::a2(FieldTag::Rational);
        assert_eq!(a.dim(), 3);
        let names: Vec<String> = a.basis.iter().map(|p| a.display_path(p)).collect();
        assert_eq!(names, vec!["e1", "e2", "a"]);
        assert!(a.check_associativity());
    }

    #[test]
    fn ex310_basis() {
        let a = fixtures::ex310(FieldTag::Prime(2));
        // all length-2 paths die by the four relations
        assert_eq!(a.dim(), 8);
        assert!(a.check_associativity());
        // sanity: b*a = 0 in the quotient
        let ab = a.mul(&a.arrow_elem(1), &a.arrow_elem(0));
        assert!(ab.is_zero());
    }

    #[test]
    fn cyclic_without_relations_overflows() {
        let q = Quiver::new(
            1,
            vec![Arrow {
                name: "x".into(),
                source: 0,
                target: 0,
            }],
        )
        .unwrap();
        let err = build_algebra(q, vec![], FieldTag::Rational, 8);
        assert!(matches!(err, Err(Error::BasisOverflow { .. })));
    }

    #[test]
    fn inhomogeneous_relation() {
        // k[x]/(x^2 - x^3) has dimension 3
        let q = Quiver::new(
            1,
            vec![Arrow {
                name: "x".into(),
                source: 0,
                target: 0,
            }],
        )
        .unwrap();
        let x2 = Path {
            vertex: 0,
            arrows: vec![0, 0],
        };
        let x3 = Path {
            vertex: 0,
            arrows: vec![0, 0, 0],
        };
        let f = FieldTag::Rational;
        let rel = vec![(f.one(), x2), (f.from_i64(-1), x3)];
        let a = build_algebra(q, vec![rel], f, 16).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.check_associativity());
        // x^2 * x^2 = x^4 = x^2
        let x = a.arrow_elem(0);
        let xx = a.mul(&x, &x);
        assert_eq!(a.mul(&xx, &xx), xx);
    }

    #[test]
    fn opposite_involution() {
        let a = fixtures::ex310(FieldTag::Prime(2));
        let op = a.opposite().unwrap();
        assert_eq!(op.dim(), 8);
        let opop = op.opposite().unwrap();
        assert_eq!(*opop, *a);
        let a2 = fixtures::a2(FieldTag::Rational);
        let a2op = a2.opposite().unwrap();
        assert_eq!(a2op.dim(), 3);
        assert_eq!(a2op.quiver.arrows[0].source, 1);
        assert_eq!(a2op.quiver.arrows[0].target, 0);
    }

    #[test]
    fn projective_dimensions() {
        let a = fixtures::a2(FieldTag::Rational);
        assert_eq!(a.projective(0).dims, vec![1, 1]);
        assert_eq!(a.projective(1).dims, vec![0, 1]);
        let e = fixtures::ex310(FieldTag::Prime(2));
        for v in 0..4 {
            assert_eq!(e.projective(v).total_dim(), 2);
        }
        // sum over vertices of dim P(v) = dim A
        let total: usize = (0..4).map(|v| e.projective(v).total_dim()).sum();
        assert_eq!(total, e.dim());
    }

    #[test]
    fn injective_dimensions() {
        let a = fixtures::a2(FieldTag::Rational);
        let op = a.opposite().unwrap();
        assert_eq!(a.injective(0, &op).dims, vec![1, 0]);
        assert_eq!(a.injective(1, &op).dims, vec![1, 1]);
        let e = fixtures::ex310(FieldTag::Prime(2));
        let eop = e.opposite().unwrap();
        // e1*A = span{e1, d}, so I(1) has dimension 2
        assert_eq!(e.injective(0, &eop).total_dim(), 2);
    }
}
