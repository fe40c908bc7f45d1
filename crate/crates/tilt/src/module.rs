//! Finite-dimensional left modules as quiver representations, and the
//! homological primitives built on them: Hom spaces, kernels and
//! cokernels, radicals and socles, covers and envelopes, minimal
//! presentations, trace, tensor products, Ext and Tor.

use crate::algebra::{AlgElem, AlgMatrix, AlgebraPresentation, Path};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, QuotientSpace};
use std::sync::Arc;

/// A representation: one vector space per vertex, one matrix per arrow
/// (from the source-vertex space to the target-vertex space). Every
/// relation of the algebra evaluates to zero on a valid representation.
#[derive(Clone, Debug)]
pub struct Representation {
    pub algebra: Arc<AlgebraPresentation>,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Representation> {
        let r = Representation::new_unchecked(algebra, dims, maps);
        r.validate()?;
        Ok(r)
    }

    pub fn new_unchecked(
        algebra: Arc<AlgebraPresentation>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Representation {
        Representation {
            algebra,
            dims,
            maps,
        }
    }

    pub fn zero(algebra: &Arc<AlgebraPresentation>) -> Representation {
        let dims = vec![0; algebra.vertex_count()];
        let maps = algebra
            .quiver
            .arrows
            .iter()
            .map(|_| Matrix::zeros(0, 0, algebra.field))
            .collect();
        Representation::new_unchecked(Arc::clone(algebra), dims, maps)
    }

    pub fn validate(&self) -> Result<()> {
        let q = &self.algebra.quiver;
        if self.dims.len() != q.vertices || self.maps.len() != q.arrows.len() {
            return Err(Error::Precondition("representation shape mismatch".into()));
        }
        for (k, a) in q.arrows.iter().enumerate() {
            if self.maps[k].rows != self.dims[a.target] || self.maps[k].cols != self.dims[a.source]
            {
                return Err(Error::Precondition(format!(
                    "matrix shape for arrow {} does not match dimension vector",
                    a.name
                )));
            }
            if self.maps[k].field != self.algebra.field {
                return Err(Error::Precondition("field tag mismatch".into()));
            }
        }
        for rel in &self.algebra.relations {
            let (src, tgt) = (rel[0].1.source(), rel[0].1.target(q));
            let mut acc = Matrix::zeros(self.dims[tgt], self.dims[src], self.algebra.field);
            for (c, p) in rel {
                acc = acc.add(&self.path_action(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::Precondition(
                    "relation does not vanish on module".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_module(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of the action of a path, from the source-vertex space to the
    /// target-vertex space.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let q = &self.algebra.quiver;
        let mut m = Matrix::identity(self.dims[p.source()], self.algebra.field);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        debug_assert_eq!(m.rows, self.dims[p.target(q)]);
        m
    }

    /// Action of a bracketed element (all support paths parallel).
    pub fn elem_action(&self, e: &AlgElem) -> Matrix {
        let (src, tgt) = self
            .algebra
            .elem_bracket(e)
            .expect("elem_action needs a bracketed element");
        let mut acc = Matrix::zeros(self.dims[tgt], self.dims[src], self.algebra.field);
        for (i, c) in &e.coeffs {
            acc = acc.add(&self.path_action(&self.algebra.basis[*i]).scale(c));
        }
        acc
    }

    /// Offsets of the vertex blocks in the flattened space.
    pub fn flat_offsets(&self) -> Vec<usize> {
        let mut off = vec![0; self.dims.len() + 1];
        for (v, d) in self.dims.iter().enumerate() {
            off[v + 1] = off[v] + d;
        }
        off
    }

    pub fn direct_sum(parts: &[&Representation]) -> Representation {
        assert!(!parts.is_empty(), "direct_sum of nothing needs an algebra");
        let algebra = Arc::clone(&parts[0].algebra);
        let f = algebra.field;
        for p in parts {
            assert_eq!(*p.algebra, *algebra, "direct_sum across different algebras");
        }
        let n = algebra.vertex_count();
        let dims: Vec<usize> = (0..n)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let mut maps = Vec::new();
        for (k, a) in algebra.quiver.arrows.iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source], f);
            let mut ro = 0;
            let mut co = 0;
            for p in parts {
                for r in 0..p.dims[a.target] {
                    for c in 0..p.dims[a.source] {
                        m.set(ro + r, co + c, p.maps[k].get(r, c).clone());
                    }
                }
                ro += p.dims[a.target];
                co += p.dims[a.source];
            }
            maps.push(m);
        }
        Representation::new_unchecked(algebra, dims, maps)
    }

    /// Transport to the opposite algebra: same dimension vector, arrow
    /// matrices transposed onto the reversed arrows. `D(D(M)) = M` on the
    /// nose.
    pub fn dualize(&self, op: &Arc<AlgebraPresentation>) -> Representation {
        assert_eq!(
            op.quiver,
            self.algebra.quiver.reversed(),
            "dualize target is not the opposite"
        );
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation::new_unchecked(Arc::clone(op), self.dims.clone(), maps)
    }

    /// Rebuild a representation from a flat module: a total space with
    /// commuting actions of the vertex idempotents and arrows.
    pub fn from_flat(
        algebra: &Arc<AlgebraPresentation>,
        idem_actions: &[Matrix],
        arrow_actions: &[Matrix],
    ) -> Representation {
        let f = algebra.field;
        let n = algebra.vertex_count();
        // choose a basis adapted to the idempotent decomposition
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        let mut dims = vec![0usize; n];
        for (v, e) in idem_actions.iter().enumerate() {
            let b = e.column_space_basis();
            dims[v] = b.cols;
            for c in 0..b.cols {
                cols.push(b.column(c));
            }
        }
        let total: usize = dims.iter().sum();
        let ambient = idem_actions.first().map(|m| m.rows).unwrap_or(0);
        assert_eq!(
            total, ambient,
            "idempotent images do not decompose the space"
        );
        let change = Matrix::from_columns(ambient, f, &cols);
        let inv = change.inverse().expect("idempotent images must span");
        let offsets: Vec<usize> = {
            let mut off = vec![0; n + 1];
            for v in 0..n {
                off[v + 1] = off[v] + dims[v];
            }
            off
        };
        let mut maps = Vec::new();
        for (k, a) in algebra.quiver.arrows.iter().enumerate() {
            let big = inv.mul(&arrow_actions[k].mul(&change));
            let mut m = Matrix::zeros(dims[a.target], dims[a.source], f);
            for r in 0..dims[a.target] {
                for c in 0..dims[a.source] {
                    m.set(
                        r,
                        c,
                        big.get(offsets[a.target] + r, offsets[a.source] + c)
                            .clone(),
                    );
                }
            }
            maps.push(m);
        }
        Representation::new_unchecked(Arc::clone(algebra), dims, maps)
    }
}

/// A homomorphism of representations: one matrix per vertex, commuting
/// with every arrow action.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Representation,
    pub target: Representation,
    pub mats: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new_unchecked(
        source: Representation,
        target: Representation,
        mats: Vec<Matrix>,
    ) -> ModuleMap {
        ModuleMap {
            source,
            target,
            mats,
        }
    }

    pub fn identity(m: &Representation) -> ModuleMap {
        let mats = m
            .dims
            .iter()
            .map(|&d| Matrix::identity(d, m.algebra.field))
            .collect();
        ModuleMap::new_unchecked(m.clone(), m.clone(), mats)
    }

    pub fn zero(source: &Representation, target: &Representation) -> ModuleMap {
        let f = source.algebra.field;
        let mats = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(t, s, f))
            .collect();
        ModuleMap::new_unchecked(source.clone(), target.clone(), mats)
    }

    pub fn is_natural(&self) -> bool {
        let q = &self.source.algebra.quiver;
        q.arrows.iter().enumerate().all(|(k, a)| {
            self.target.maps[k].mul(&self.mats[a.source])
                == self.mats[a.target].mul(&self.source.maps[k])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Matrix::is_zero)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.mul(b))
            .collect();
        ModuleMap::new_unchecked(other.source.clone(), self.target.clone(), mats)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.add(b))
            .collect();
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), mats)
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        let mats = self.mats.iter().map(|m| m.scale(s)).collect();
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), mats)
    }

    pub fn is_injective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.cols)
    }

    pub fn is_surjective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.rows)
    }

    /// Vectorize all vertex matrices (used by linear solvers).
    pub fn flatten(&self) -> Vec<Scalar> {
        self.mats.iter().flat_map(Matrix::flatten).collect()
    }
}

/// The naturality constraint system whose nullspace is `Hom_A(M, N)`.
fn hom_system(m: &Representation, n: &Representation) -> (Matrix, Vec<usize>) {
    assert_eq!(
        *m.algebra, *n.algebra,
        "hom_space across different algebras"
    );
    let alg = &m.algebra;
    let f = alg.field;
    let nv = alg.vertex_count();
    // unknowns: entries of f_v (n.dims[v] x m.dims[v]), vertex blocks in order
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offsets[nv];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (k, a) in alg.quiver.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                // (N_a f_s)_{ij} = sum_k N_a[i,k] f_s[k,j]
                for k2 in 0..n.dims[s] {
                    let c = n.maps[k].get(i, k2);
                    if !c.is_zero() {
                        row[offsets[s] + k2 * m.dims[s] + j] =
                            f.add(&row[offsets[s] + k2 * m.dims[s] + j], c);
                    }
                }
                // -(f_t M_a)_{ij} = -sum_l f_t[i,l] M_a[l,j]
                for l in 0..m.dims[t] {
                    let c = m.maps[k].get(l, j);
                    if !c.is_zero() {
                        let idx = offsets[t] + i * m.dims[t] + l;
                        row[idx] = f.sub(&row[idx], c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        Matrix::zeros(0, unknowns, f)
    } else {
        let flat: Vec<Scalar> = rows.into_iter().flatten().collect();
        let r = flat.len() / unknowns.max(1);
        Matrix::new(r, unknowns, f, flat)
    };
    (sys, offsets)
}

/// Basis of `Hom_A(M, N)`, solved from the naturality constraints.
pub fn hom_space(m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let f = m.algebra.field;
    let nv = m.algebra.vertex_count();
    let (sys, offsets) = hom_system(m, n);
    sys.nullspace_basis()
        .into_iter()
        .map(|vec| {
            let mut mats = Vec::new();
            for v in 0..nv {
                let mut mat = Matrix::zeros(n.dims[v], m.dims[v], f);
                for i in 0..n.dims[v] {
                    for j in 0..m.dims[v] {
                        mat.set(i, j, vec[offsets[v] + i * m.dims[v] + j].clone());
                    }
                }
                mats.push(mat);
            }
            ModuleMap::new_unchecked(m.clone(), n.clone(), mats)
        })
        .collect()
}

/// `dim Hom_A(M, N)` without materializing the basis.
pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    let (sys, _) = hom_system(m, n);
    sys.cols - sys.rank()
}

/// Kernel subrepresentation with its inclusion.
pub fn kernel(fm: &ModuleMap) -> (Representation, ModuleMap) {
    let alg = &fm.source.algebra;
    let f = alg.field;
    let incs: Vec<Matrix> = fm
        .mats
        .iter()
        .enumerate()
        .map(|(v, m)| Matrix::from_columns(fm.source.dims[v], f, &m.nullspace_basis()))
        .collect();
    sub_representation(&fm.source, incs)
}

/// Image subrepresentation with its inclusion into the target.
pub fn image(fm: &ModuleMap) -> (Representation, ModuleMap) {
    let incs: Vec<Matrix> = fm.mats.iter().map(Matrix::column_space_basis).collect();
    sub_representation(&fm.target, incs)
}

/// Builds the subrepresentation spanned by the given per-vertex column
/// bases (which must be arrow-stable).
fn sub_representation(ambient: &Representation, incs: Vec<Matrix>) -> (Representation, ModuleMap) {
    let alg = &ambient.algebra;
    let dims: Vec<usize> = incs.iter().map(|m| m.cols).collect();
    let mut maps = Vec::new();
    for (k, a) in alg.quiver.arrows.iter().enumerate() {
        let pushed = ambient.maps[k].mul(&incs[a.source]);
        let restricted = incs[a.target]
            .solve_matrix(&pushed)
            .expect("subspace not arrow-stable");
        maps.push(restricted);
    }
    let sub = Representation::new_unchecked(Arc::clone(alg), dims, maps);
    let inc = ModuleMap::new_unchecked(sub.clone(), ambient.clone(), incs);
    (sub, inc)
}

/// Quotient by the image of a map: the cokernel with its projection and
/// the per-vertex sections splitting it.
pub fn cokernel(fm: &ModuleMap) -> (Representation, ModuleMap, Vec<Matrix>) {
    let tgt = &fm.target;
    let alg = &tgt.algebra;
    let f = alg.field;
    let quots: Vec<QuotientSpace> = fm
        .mats
        .iter()
        .enumerate()
        .map(|(v, m)| {
            let span: Vec<Vec<Scalar>> = (0..m.cols).map(|c| m.column(c)).collect();
            QuotientSpace::from_span(tgt.dims[v], f, &span)
        })
        .collect();
    let dims: Vec<usize> = quots.iter().map(|q| q.dim).collect();
    let mut maps = Vec::new();
    for (k, a) in alg.quiver.arrows.iter().enumerate() {
        maps.push(quots[a.source].induced(&tgt.maps[k], &quots[a.target]));
    }
    let coker = Representation::new_unchecked(Arc::clone(alg), dims, maps);
    let proj = ModuleMap::new_unchecked(
        tgt.clone(),
        coker.clone(),
        quots.iter().map(|q| q.proj.clone()).collect(),
    );
    let sections = quots.into_iter().map(|q| q.section).collect();
    (coker, proj, sections)
}

/// `rad M = sum of the images of all arrow actions`, with inclusion.
pub fn radical(m: &Representation) -> (Representation, ModuleMap) {
    let alg = &m.algebra;
    let f = alg.field;
    let mut incs = Vec::new();
    for v in 0..alg.vertex_count() {
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for (k, a) in alg.quiver.arrows.iter().enumerate() {
            if a.target == v {
                for c in 0..m.maps[k].cols {
                    cols.push(m.maps[k].column(c));
                }
            }
        }
        let stacked = Matrix::from_columns(m.dims[v], f, &cols);
        incs.push(stacked.column_space_basis());
    }
    sub_representation(m, incs)
}

/// `top M = M / rad M`, with projection and sections.
pub fn top(m: &Representation) -> (Representation, ModuleMap, Vec<Matrix>) {
    let (_, inc) = radical(m);
    cokernel(&inc)
}

/// Largest semisimple submodule: joint kernel of all arrow actions.
pub fn socle(m: &Representation) -> (Representation, ModuleMap) {
    let alg = &m.algebra;
    let f = alg.field;
    let mut incs = Vec::new();
    for v in 0..alg.vertex_count() {
        let outgoing: Vec<&Matrix> = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.source == v)
            .map(|(k, _)| &m.maps[k])
            .collect();
        let inc = if outgoing.is_empty() {
            Matrix::identity(m.dims[v], f)
        } else {
            let mut stacked = outgoing[0].clone();
            for o in &outgoing[1..] {
                stacked = stacked.vstack(o);
            }
            Matrix::from_columns(m.dims[v], f, &stacked.nullspace_basis())
        };
        incs.push(inc);
    }
    sub_representation(m, incs)
}

/// Direct sums of indecomposable projectives, with bookkeeping for
/// reading maps between them off as algebra-element matrices.
#[derive(Clone, Debug)]
pub struct ProjSum {
    pub algebra: Arc<AlgebraPresentation>,
    pub vertices: Vec<usize>,
    pub rep: Representation,
    /// basis paths (indices into algebra.basis) per summand per vertex
    paths: Vec<Vec<Vec<usize>>>,
}

impl ProjSum {
    pub fn new(algebra: &Arc<AlgebraPresentation>, vertices: Vec<usize>) -> ProjSum {
        let parts: Vec<Representation> = vertices.iter().map(|&v| algebra.projective(v)).collect();
        let rep = if parts.is_empty() {
            Representation::zero(algebra)
        } else {
            Representation::direct_sum(&parts.iter().collect::<Vec<_>>())
        };
        let mut paths = Vec::new();
        for &v in &vertices {
            let mut per_vertex: Vec<Vec<usize>> = vec![Vec::new(); algebra.vertex_count()];
            for (i, p) in algebra.basis.iter().enumerate() {
                if p.source() == v {
                    per_vertex[p.target(&algebra.quiver)].push(i);
                }
            }
            paths.push(per_vertex);
        }
        ProjSum {
            algebra: Arc::clone(algebra),
            vertices,
            rep,
            paths,
        }
    }

    pub fn summands(&self) -> usize {
        self.vertices.len()
    }

    /// Flat coordinate of a basis path of summand `c` inside the ambient
    /// vertex space of the direct sum.
    fn offset(&self, c: usize, vertex: usize) -> usize {
        (0..c).map(|i| self.paths[i][vertex].len()).sum()
    }

    /// Realize an algebra-element matrix `⊕_c P(src[c]) -> ⊕_r P(tgt[r])`
    /// (entry `(r, c)` acting by right multiplication) as a ModuleMap
    /// between the two realized sums.
    pub fn realize_map(&self, target: &ProjSum, entries: &AlgMatrix) -> ModuleMap {
        let alg = &self.algebra;
        let f = alg.field;
        assert_eq!(entries.len(), target.summands());
        let mut mats = Vec::new();
        for v in 0..alg.vertex_count() {
            let mut m = Matrix::zeros(target.rep.dims[v], self.rep.dims[v], f);
            for (r, row) in entries.iter().enumerate() {
                assert_eq!(row.len(), self.summands());
                for (c, g) in row.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    // column: basis path p of P(src[c]) at vertex v maps to
                    // p * g inside P(tgt[r])
                    for (pj, &pidx) in self.paths[c][v].iter().enumerate() {
                        let p_elem = AlgElem {
                            coeffs: vec![(pidx, f.one())],
                        };
                        let prod = alg.mul(&p_elem, g);
                        for (bi, coeff) in prod.coeffs {
                            let pos = target.paths[r][v]
                                .iter()
                                .position(|&b| b == bi)
                                .expect("product lands in the target projective");
                            m.set(target.offset(r, v) + pos, self.offset(c, v) + pj, coeff);
                        }
                    }
                }
            }
            mats.push(m);
        }
        ModuleMap::new_unchecked(self.rep.clone(), target.rep.clone(), mats)
    }

    /// Read a ModuleMap between realized sums back as an algebra-element
    /// matrix (inverse of `realize_map`).
    pub fn extract_map(&self, target: &ProjSum, map: &ModuleMap) -> AlgMatrix {
        let alg = &self.algebra;
        let mut out: AlgMatrix = vec![vec![AlgElem::zero(); self.summands()]; target.summands()];
        for (c, &vc) in self.vertices.iter().enumerate() {
            // image of the generator e_{vc} of summand c
            let gen_idx = alg
                .basis_index(&Path::idempotent(vc))
                .expect("idempotents are basis elements");
            let gen_pos = self.paths[c][vc]
                .iter()
                .position(|&b| b == gen_idx)
                .unwrap();
            let col = self.offset(c, vc) + gen_pos;
            let img = map.mats[vc].column(col);
            for (r, _) in target.vertices.iter().enumerate() {
                let mut coeffs = Vec::new();
                for (pj, &pidx) in target.paths[r][vc].iter().enumerate() {
                    let val = img[target.offset(r, vc) + pj].clone();
                    if !val.is_zero() {
                        coeffs.push((pidx, val));
                    }
                }
                coeffs.sort_by_key(|(i, _)| *i);
                out[r][c] = AlgElem { coeffs };
            }
        }
        out
    }

    /// Flat coordinates (vertex, index) of the generator of summand `c`.
    pub fn generator(&self, c: usize) -> (usize, usize) {
        let vc = self.vertices[c];
        let gen_idx = self.algebra.basis_index(&Path::idempotent(vc)).unwrap();
        let pos = self.paths[c][vc]
            .iter()
            .position(|&b| b == gen_idx)
            .unwrap();
        (vc, self.offset(c, vc) + pos)
    }
}

/// Projective cover `P -> M`: `P = ⊕ P(v)^{m_v}` with `m_v` the simple
/// multiplicities in `top M`; minimality holds by construction.
pub fn projective_cover(m: &Representation) -> (ProjSum, ModuleMap) {
    let alg = &m.algebra;
    let f = alg.field;
    let (tp, tproj, tsections) = top(m);
    let mut vertices = Vec::new();
    let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new(); // (vertex, generator image in M_v)
    for v in 0..alg.vertex_count() {
        for k in 0..tp.dims[v] {
            vertices.push(v);
            // lift the k-th top basis vector through the section
            let lift = tsections[v].column(k);
            gens.push((v, lift));
        }
        let _ = &tproj;
    }
    let sum = ProjSum::new(alg, vertices);
    // component from summand c: path p (src v_c, tgt w) acts on the chosen
    // generator image
    let mut mats = Vec::new();
    for w in 0..alg.vertex_count() {
        let mut mat = Matrix::zeros(m.dims[w], sum.rep.dims[w], f);
        for c in 0..sum.summands() {
            let (_v, gen_img) = &gens[c];
            for (pj, &pidx) in sum.paths[c][w].iter().enumerate() {
                let act = m.path_action(&alg.basis[pidx]);
                let img = act.apply(gen_img);
                for (i, val) in img.iter().enumerate() {
                    mat.set(i, sum.offset(c, w) + pj, val.clone());
                }
            }
        }
        mats.push(mat);
    }
    let cover = ModuleMap::new_unchecked(sum.rep.clone(), m.clone(), mats);
    debug_assert!(cover.is_surjective(), "projective cover must surject");
    (sum, cover)
}

/// Injective envelope `M -> I` with `I = ⊕ I(v)^{s_v}`, `s_v` the simple
/// multiplicities in the socle: the dual of a projective cover over the
/// opposite algebra.
pub fn injective_envelope(
    m: &Representation,
    op: &Arc<AlgebraPresentation>,
) -> (Vec<usize>, ModuleMap) {
    let dm = m.dualize(op);
    let (sum, cover) = projective_cover(&dm);
    // D is contravariant and D(D(M)) = M on the nose
    let envelope_target = sum.rep.dualize(&m.algebra);
    let mats = cover.mats.iter().map(Matrix::transpose).collect();
    let env = ModuleMap::new_unchecked(m.clone(), envelope_target, mats);
    debug_assert!(env.is_injective(), "envelope must embed");
    (sum.vertices.clone(), env)
}

/// Minimal injective presentation `0 -> M -> I^0 -> I^1`, realized: the
/// dual of a minimal projective presentation of `D(M)` over the opposite
/// algebra. Returns the summand vertices of both terms and the map
/// `I^0 -> I^1`.
pub fn min_inj_presentation(
    m: &Representation,
    op: &Arc<AlgebraPresentation>,
) -> (Vec<usize>, Vec<usize>, ModuleMap) {
    let dm = m.dualize(op);
    let res = resolve(&dm, 1);
    let d = res.sums[1].realize_map(&res.sums[0], &res.diffs[0]);
    let i0 = res.sums[0].rep.dualize(&m.algebra);
    let i1 = res.sums[1].rep.dualize(&m.algebra);
    let mats = d.mats.iter().map(Matrix::transpose).collect();
    let map = ModuleMap::new_unchecked(i0, i1, mats);
    (
        res.sums[0].vertices.clone(),
        res.sums[1].vertices.clone(),
        map,
    )
}

/// A finite initial segment of a minimal projective resolution:
/// `terms[k]` lists the summand vertices of `P_k`, `diffs[k]` is the
/// algebra matrix of `P_{k+1} -> P_k`.
pub struct ProjResolution {
    pub sums: Vec<ProjSum>,
    pub diffs: Vec<AlgMatrix>,
}

/// Resolve `M` minimally to `steps` differentials (so `steps + 1` terms).
pub fn resolve(m: &Representation, steps: usize) -> ProjResolution {
    let (sum0, cover0) = projective_cover(m);
    let mut sums = vec![sum0];
    let mut diffs = Vec::new();
    let mut current_cover = cover0;
    for _ in 0..steps {
        let (syz, inc) = kernel(&current_cover);
        let (next_sum, next_cover) = projective_cover(&syz);
        let composite = inc.compose(&next_cover);
        let alg_mat = next_sum.extract_map(sums.last().unwrap(), &composite);
        diffs.push(alg_mat);
        sums.push(next_sum);
        current_cover = next_cover;
    }
    ProjResolution { sums, diffs }
}

/// Matrix of `Hom(d, N) : Hom(P_k, N) -> Hom(P_{k+1}, N)` in the canonical
/// coordinates `Hom(⊕P(v_r), N) = ⊕_r N_{v_r}`.
pub fn hom_functor_matrix(
    diff: &AlgMatrix,
    src: &ProjSum,
    tgt: &ProjSum,
    n: &Representation,
) -> Matrix {
    hom_into_matrix(diff, src, tgt, n)
}

fn hom_into_matrix(
    diff: &AlgMatrix,
    src: &ProjSum, // P_{k+1}
    tgt: &ProjSum, // P_k
    n: &Representation,
) -> Matrix {
    let f = n.algebra.field;
    let row_dims: Vec<usize> = src.vertices.iter().map(|&v| n.dims[v]).collect();
    let col_dims: Vec<usize> = tgt.vertices.iter().map(|&v| n.dims[v]).collect();
    let rows: usize = row_dims.iter().sum();
    let cols: usize = col_dims.iter().sum();
    let mut m = Matrix::zeros(rows, cols, f);
    let row_off: Vec<usize> = {
        let mut o = vec![0];
        for d in &row_dims {
            o.push(o.last().unwrap() + d);
        }
        o
    };
    let col_off: Vec<usize> = {
        let mut o = vec![0];
        for d in &col_dims {
            o.push(o.last().unwrap() + d);
        }
        o
    };
    for (r, row) in diff.iter().enumerate() {
        for (c, g) in row.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            // block: N.elem_action(g) : N_{tgt_vertex(r)} -> N_{src_vertex(c)}
            let block = n.elem_action(g);
            for i in 0..block.rows {
                for j in 0..block.cols {
                    let v = block.get(i, j);
                    if !v.is_zero() {
                        m.set(row_off[c] + i, col_off[r] + j, v.clone());
                    }
                }
            }
        }
    }
    m
}

/// `dim Ext^1_A(M, N)` from a minimal projective resolution of `M`.
pub fn ext1(m: &Representation, n: &Representation) -> usize {
    if m.is_zero_module() || n.is_zero_module() {
        return 0;
    }
    let res = resolve(m, 2);
    let phi1 = hom_into_matrix(&res.diffs[0], &res.sums[1], &res.sums[0], n);
    let phi2 = hom_into_matrix(&res.diffs[1], &res.sums[2], &res.sums[1], n);
    debug_assert!(phi2.mul(&phi1).is_zero());
    (phi2.cols - phi2.rank()) - phi1.rank()
}

/// `dim Ext^2_A(M, N)`, needing one more resolution term.
pub fn ext2(m: &Representation, n: &Representation) -> usize {
    if m.is_zero_module() || n.is_zero_module() {
        return 0;
    }
    let res = resolve(m, 3);
    let phi2 = hom_into_matrix(&res.diffs[1], &res.sums[2], &res.sums[1], n);
    let phi3 = hom_into_matrix(&res.diffs[2], &res.sums[3], &res.sums[2], n);
    debug_assert!(phi3.mul(&phi2).is_zero());
    (phi3.cols - phi3.rank()) - phi2.rank()
}

/// Right action of a bracketed element on a right module (stored as a
/// representation of the opposite algebra): the matrix
/// `M_{target(g)} -> M_{source(g)}`, `x -> x·g`.
pub fn right_action(m_op: &Representation, a: &AlgebraPresentation, g: &AlgElem) -> Matrix {
    let (src, tgt) = a
        .elem_bracket(g)
        .expect("right_action needs a bracketed element");
    let f = m_op.algebra.field;
    let mut acc = Matrix::zeros(m_op.dims[src], m_op.dims[tgt], f);
    for (i, c) in &g.coeffs {
        let rev = a.basis[*i].reversed(&a.quiver);
        acc = acc.add(&m_op.path_action(&rev).scale(c));
    }
    acc
}

/// `dim Tor_1^A(M, N)` for `M` a right module (representation of the
/// opposite algebra) and `N` a left module, via a minimal projective
/// resolution of `N` tensored with `M`.
pub fn tor1(m_op: &Representation, n: &Representation) -> usize {
    if m_op.is_zero_module() || n.is_zero_module() {
        return 0;
    }
    let a = &n.algebra;
    let res = resolve(n, 2);
    // M ⊗ P(v) = M_v; M ⊗ d has blocks given by right action of entries
    let tensor_matrix = |diff: &AlgMatrix, src: &ProjSum, tgt: &ProjSum| -> Matrix {
        let f = m_op.algebra.field;
        let col_dims: Vec<usize> = src.vertices.iter().map(|&v| m_op.dims[v]).collect();
        let row_dims: Vec<usize> = tgt.vertices.iter().map(|&v| m_op.dims[v]).collect();
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let mut out = Matrix::zeros(rows, cols, f);
        let mut row_off = vec![0];
        for d in &row_dims {
            row_off.push(row_off.last().unwrap() + d);
        }
        let mut col_off = vec![0];
        for d in &col_dims {
            col_off.push(col_off.last().unwrap() + d);
        }
        for (r, row) in diff.iter().enumerate() {
            for (c, g) in row.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let block = right_action(m_op, a, g); // M_{src_v(c)} -> M_{tgt_v(r)}
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        let v = block.get(i, j);
                        if !v.is_zero() {
                            out.set(row_off[r] + i, col_off[c] + j, v.clone());
                        }
                    }
                }
            }
        }
        out
    };
    let d1 = tensor_matrix(&res.diffs[0], &res.sums[1], &res.sums[0]);
    let d2 = tensor_matrix(&res.diffs[1], &res.sums[2], &res.sums[1]);
    debug_assert!(d1.mul(&d2).is_zero());
    (d1.cols - d1.rank()) - d2.rank()
}

/// The canonical sequence `0 -> τ(X) -> X -> π(X) -> 0` attached to the
/// trace of `T` in `X`.
#[derive(Clone, Debug)]
pub struct CanonicalSequence {
    pub tau: Representation,
    pub inclusion: ModuleMap,
    pub pi: Representation,
    pub projection: ModuleMap,
}

/// Trace of `T` in `X`: the sum of the images of all homomorphisms
/// `T -> X`; independent of the hom-basis choice.
pub fn trace(t: &Representation, x: &Representation) -> CanonicalSequence {
    let f = x.algebra.field;
    let homs = hom_space(t, x);
    let mut incs = Vec::new();
    for v in 0..x.algebra.vertex_count() {
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for h in &homs {
            for c in 0..h.mats[v].cols {
                cols.push(h.mats[v].column(c));
            }
        }
        let stacked = Matrix::from_columns(x.dims[v], f, &cols);
        incs.push(stacked.column_space_basis());
    }
    let (tau, inclusion) = sub_representation(x, incs);
    let (pi, projection, _) = cokernel(&inclusion);
    CanonicalSequence {
        tau,
        inclusion,
        pi,
        projection,
    }
}

/// `M ⊗_A N` for `M` a right module (opposite representation) and `N` a
/// left module: the graded space `⊕_v M_v ⊗ N_v` modulo
/// `m·a ⊗ n - m ⊗ a·n` over all arrows.
pub struct TensorSpace {
    pub dim: usize,
    pub quotient: QuotientSpace,
    /// flat offsets of the `M_v ⊗ N_v` blocks in the ambient space
    pub block_offsets: Vec<usize>,
    pub m_dims: Vec<usize>,
    pub n_dims: Vec<usize>,
}

pub fn tensor_over_a(
    m_op: &Representation,
    n: &Representation,
    a: &AlgebraPresentation,
) -> TensorSpace {
    assert_eq!(
        m_op.algebra.quiver,
        a.quiver.reversed(),
        "M must be a module over the opposite"
    );
    assert_eq!(*n.algebra, *a, "N must be a module over A");
    let f = n.algebra.field;
    let nv = a.vertex_count();
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + m_op.dims[v] * n.dims[v];
    }
    let ambient = offsets[nv];
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    for (k, arrow) in a.quiver.arrows.iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        // right action of the arrow: M_t -> M_s is the opposite-arrow map
        let ra = &m_op.maps[k];
        debug_assert_eq!((ra.rows, ra.cols), (m_op.dims[s], m_op.dims[t]));
        let la = &n.maps[k]; // N_s -> N_t
        for mu in 0..m_op.dims[t] {
            for nu in 0..n.dims[s] {
                let mut vec = vec![f.zero(); ambient];
                // (m·a) ⊗ n in block s
                for i in 0..m_op.dims[s] {
                    let c = ra.get(i, mu);
                    if !c.is_zero() {
                        vec[offsets[s] + i * n.dims[s] + nu] = c.clone();
                    }
                }
                // - m ⊗ (a·n) in block t
                for j in 0..n.dims[t] {
                    let c = la.get(j, nu);
                    if !c.is_zero() {
                        let idx = offsets[t] + mu * n.dims[t] + j;
                        vec[idx] = f.sub(&vec[idx], c);
                    }
                }
                span.push(vec);
            }
        }
    }
    let quotient = QuotientSpace::from_span(ambient, f, &span);
    TensorSpace {
        dim: quotient.dim,
        quotient,
        block_offsets: offsets,
        m_dims: m_op.dims.clone(),
        n_dims: n.dims.clone(),
    }
}

impl TensorSpace {
    /// Induce a map on the tensor from a grading-preserving ambient map
    /// acting on the `M` factor (per-vertex matrices `L_v : M_v -> M_v`).
    pub fn induce_from_m_action(&self, l: &[Matrix], f: crate::field::FieldTag) -> Matrix {
        let ambient = self.quotient.ambient;
        let mut big = Matrix::zeros(ambient, ambient, f);
        for v in 0..self.m_dims.len() {
            for i in 0..self.m_dims[v] {
                for i2 in 0..self.m_dims[v] {
                    let c = l[v].get(i, i2);
                    if c.is_zero() {
                        continue;
                    }
                    for j in 0..self.n_dims[v] {
                        big.set(
                            self.block_offsets[v] + i * self.n_dims[v] + j,
                            self.block_offsets[v] + i2 * self.n_dims[v] + j,
                            c.clone(),
                        );
                    }
                }
            }
        }
        self.quotient.induced(&big, &self.quotient)
    }
}

/// The Nakayama functor on modules: `ν(M) = DA ⊗_A M`, returned as a
/// representation over `A` again.
pub fn nakayama_module(
    m: &Representation,
    a: &Arc<AlgebraPresentation>,
    aop: &Arc<AlgebraPresentation>,
) -> Representation {
    let f = a.field;
    let reg = a.regular();
    let da = reg.dualize(aop); // D(A) as a right module
    let t = tensor_over_a(&da, m, a);
    // left action of A on DA: dual of right multiplication on the regular
    // module, blockwise within each target-graded piece
    let reg_paths: Vec<Vec<usize>> = {
        // basis of the regular module's vertex-v space: paths with target v,
        // ordered summand by summand (source vertex ascending, basis order)
        let mut per_vertex: Vec<Vec<usize>> = vec![Vec::new(); a.vertex_count()];
        for src in 0..a.vertex_count() {
            for (i, p) in a.basis.iter().enumerate() {
                if p.source() == src {
                    per_vertex[p.target(&a.quiver)].push(i);
                }
            }
        }
        per_vertex
    };
    let right_mult_on_reg = |g: &AlgElem| -> Vec<Matrix> {
        // per target-vertex block: matrix of x -> x·g on span{paths target v}
        (0..a.vertex_count())
            .map(|v| {
                let paths = &reg_paths[v];
                let mut m2 = Matrix::zeros(paths.len(), paths.len(), f);
                for (col, &pi) in paths.iter().enumerate() {
                    let x = AlgElem {
                        coeffs: vec![(pi, f.one())],
                    };
                    let prod = a.mul(&x, g);
                    for (bi, c) in prod.coeffs {
                        if let Some(row) = paths.iter().position(|&b| b == bi) {
                            m2.set(row, col, c);
                        }
                    }
                }
                m2
            })
            .collect()
    };
    let idem_actions: Vec<Matrix> = (0..a.vertex_count())
        .map(|w| {
            let blocks = right_mult_on_reg(&a.idempotent(w));
            let l: Vec<Matrix> = blocks.iter().map(Matrix::transpose).collect();
            t.induce_from_m_action(&l, f)
        })
        .collect();
    let arrow_actions: Vec<Matrix> = (0..a.quiver.arrows.len())
        .map(|k| {
            let blocks = right_mult_on_reg(&a.arrow_elem(k));
            let l: Vec<Matrix> = blocks.iter().map(Matrix::transpose).collect();
            t.induce_from_m_action(&l, f)
        })
        .collect();
    Representation::from_flat(a, &idem_actions, &arrow_actions)
}
