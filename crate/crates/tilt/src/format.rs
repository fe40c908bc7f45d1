//! The `.alg` text format: a line-oriented description of one algebra
//! with named modules and two-term complexes.
//!
//! ```text
//! # comments run to end of line
//! field F 2            # or: field Q
//! vertices 4
//! arrow a 1 2          # name, source, target (1-based)
//! relation b*a         # terms are [scalar*]arrow*...*arrow, rightmost first
//! module M
//! dim 1 1
//! map a 1              # row-major entries, target-dim x source-dim
//! complex P
//! row 2 2 4 4          # degree -1 summand vertices
//! col 1 3              # degree 0 summand vertices
//! entry 0 0 a          # row index, col index, algebra element
//! ```
//!
//! Files parse deterministically and unknown keys are errors. The emitter
//! produces a canonical form that reparses to the same data.

use crate::algebra::{
    build_algebra, AlgElem, AlgebraPresentation, Arrow, Path, Quiver, Relation, DEFAULT_PATH_BOUND,
};
use crate::complex::TwoTermComplex;
use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::matrix::Matrix;
use crate::module::Representation;
use std::sync::Arc;

pub struct AlgFile {
    pub algebra: Arc<AlgebraPresentation>,
    pub modules: Vec<(String, Representation)>,
    pub complexes: Vec<(String, TwoTermComplex)>,
}

impl AlgFile {
    pub fn module(&self, name: &str) -> Option<&Representation> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn complex(&self, name: &str) -> Option<&TwoTermComplex> {
        self.complexes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: line + 1,
        msg: msg.into(),
    }
}

fn parse_scalar(tok: &str, field: FieldTag, lineno: usize) -> Result<Scalar> {
    if let Some((num, den)) = tok.split_once('/') {
        let n: i64 = num
            .parse()
            .map_err(|_| perr(lineno, format!("bad scalar {tok}")))?;
        let d: i64 = den
            .parse()
            .map_err(|_| perr(lineno, format!("bad scalar {tok}")))?;
        if d == 0 {
            return Err(perr(lineno, "zero denominator"));
        }
        Ok(field.from_fraction(n, d))
    } else {
        let n: i64 = tok
            .parse()
            .map_err(|_| perr(lineno, format!("bad scalar {tok}")))?;
        Ok(field.from_i64(n))
    }
}

/// A term `[scalar*]name*...*name` where the rightmost factor applies
/// first; a lone `e<k>` denotes a vertex idempotent.
fn parse_term(tok: &str, q: &Quiver, field: FieldTag, lineno: usize) -> Result<(Scalar, Path)> {
    let factors: Vec<&str> = tok.split('*').collect();
    let mut idx = 0;
    let scalar = if factors[0]
        .chars()
        .next()
        .map(|c| c.is_ascii_digit() || c == '-')
        .unwrap_or(false)
    {
        idx = 1;
        parse_scalar(factors[0], field, lineno)?
    } else {
        field.one()
    };
    let names = &factors[idx..];
    if names.is_empty() {
        return Err(perr(lineno, "term without arrows"));
    }
    if names.len() == 1 {
        if let Some(v) = names[0].strip_prefix('e') {
            if let Ok(v) = v.parse::<usize>() {
                if v == 0 || v > q.vertices {
                    return Err(perr(lineno, format!("vertex e{v} out of range")));
                }
                return Ok((scalar, Path::idempotent(v - 1)));
            }
        }
    }
    // written product: leftmost applies last
    let mut arrows = Vec::with_capacity(names.len());
    for name in names.iter().rev() {
        let Some(a) = q.arrow_by_name(name) else {
            return Err(perr(lineno, format!("unknown arrow {name}")));
        };
        arrows.push(a);
    }
    let path = Path::from_arrows(q, arrows)
        .map_err(|_| perr(lineno, format!("non-composable term {tok}")))?;
    Ok((scalar, path))
}

fn parse_element(
    toks: &[&str],
    q: &Quiver,
    field: FieldTag,
    lineno: usize,
) -> Result<Vec<(Scalar, Path)>> {
    // terms separated by standalone `+`
    let joined = toks.join(" ");
    let mut out = Vec::new();
    for term in joined.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(perr(lineno, "empty term"));
        }
        if term == "0" {
            continue;
        }
        out.push(parse_term(term, q, field, lineno)?);
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<AlgFile> {
    parse_with_field(text, None)
}

/// Parse, optionally overriding the declared coefficient field.
pub fn parse_with_field(text: &str, field_override: Option<FieldTag>) -> Result<AlgFile> {
    struct RawModule {
        name: String,
        dims: Option<Vec<usize>>,
        maps: Vec<(usize, Vec<Scalar>, usize)>, // arrow, entries, lineno
        lineno: usize,
    }
    struct RawComplex {
        name: String,
        row: Option<Vec<usize>>,
        col: Option<Vec<usize>>,
        entries: Vec<(usize, usize, Vec<(Scalar, Path)>, usize)>,
        lineno: usize,
    }

    // resolve the effective coefficient field first, so that every scalar
    // in the file parses into the right field
    let mut declared: Option<FieldTag> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.first() == Some(&"field") {
            let tag = match toks.get(1) {
                Some(&"Q") => FieldTag::Rational,
                Some(&"F") => {
                    let p: u64 = toks
                        .get(2)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| perr(lineno, "field F needs a prime"))?;
                    if p < 2 || !is_prime(p) {
                        return Err(perr(lineno, format!("{p} is not prime")));
                    }
                    FieldTag::Prime(p)
                }
                _ => return Err(perr(lineno, "field must be Q or F <p>")),
            };
            if declared.replace(tag).is_some() {
                return Err(perr(lineno, "duplicate field line"));
            }
        }
    }
    let effective = match (declared, field_override) {
        (_, Some(tag)) => tag,
        (Some(tag), None) => tag,
        (None, None) => return Err(perr(0, "missing field line")),
    };

    let mut field: Option<FieldTag> = None;
    let mut vertices: Option<usize> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    let mut raw_modules: Vec<RawModule> = Vec::new();
    let mut raw_complexes: Vec<RawComplex> = Vec::new();
    enum Section {
        Top,
        Module(usize),
        Complex(usize),
    }
    let mut section = Section::Top;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "field" => {
                field = Some(effective);
            }
            "vertices" => {
                let n: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| perr(lineno, "vertices needs a count"))?;
                if vertices.replace(n).is_some() {
                    return Err(perr(lineno, "duplicate vertices line"));
                }
            }
            "arrow" => {
                let n = vertices.ok_or_else(|| perr(lineno, "arrow before vertices"))?;
                if toks.len() != 4 {
                    return Err(perr(lineno, "arrow <name> <src> <tgt>"));
                }
                let src: usize = toks[2]
                    .parse()
                    .map_err(|_| perr(lineno, "bad source vertex"))?;
                let tgt: usize = toks[3]
                    .parse()
                    .map_err(|_| perr(lineno, "bad target vertex"))?;
                if src == 0 || src > n || tgt == 0 || tgt > n {
                    return Err(perr(lineno, "arrow endpoint out of range"));
                }
                arrows.push(Arrow {
                    name: toks[1].to_string(),
                    source: src - 1,
                    target: tgt - 1,
                });
            }
            "relation" => {
                relation_lines.push((lineno, toks[1..].join(" ")));
            }
            "module" => {
                let name = toks
                    .get(1)
                    .ok_or_else(|| perr(lineno, "module needs a name"))?
                    .to_string();
                raw_modules.push(RawModule {
                    name,
                    dims: None,
                    maps: Vec::new(),
                    lineno,
                });
                section = Section::Module(raw_modules.len() - 1);
            }
            "complex" => {
                let name = toks
                    .get(1)
                    .ok_or_else(|| perr(lineno, "complex needs a name"))?
                    .to_string();
                raw_complexes.push(RawComplex {
                    name,
                    row: None,
                    col: None,
                    entries: Vec::new(),
                    lineno,
                });
                section = Section::Complex(raw_complexes.len() - 1);
            }
            "dim" => {
                let Section::Module(i) = section else {
                    return Err(perr(lineno, "dim outside a module block"));
                };
                let dims: Vec<usize> = toks[1..]
                    .iter()
                    .map(|t| t.parse().map_err(|_| perr(lineno, "bad dimension")))
                    .collect::<Result<_>>()?;
                raw_modules[i].dims = Some(dims);
            }
            "map" => {
                let Section::Module(i) = section else {
                    return Err(perr(lineno, "map outside a module block"));
                };
                let f = field.ok_or_else(|| perr(lineno, "map before field"))?;
                let name = toks
                    .get(1)
                    .ok_or_else(|| perr(lineno, "map needs an arrow"))?;
                let Some(ai) = arrows.iter().position(|a| &a.name == name) else {
                    return Err(perr(lineno, format!("unknown arrow {name}")));
                };
                let entries: Vec<Scalar> = toks[2..]
                    .iter()
                    .map(|t| parse_scalar(t, f, lineno))
                    .collect::<Result<_>>()?;
                raw_modules[i].maps.push((ai, entries, lineno));
            }
            "row" | "col" => {
                let Section::Complex(i) = section else {
                    return Err(perr(lineno, format!("{} outside a complex block", toks[0])));
                };
                let n = vertices.ok_or_else(|| perr(lineno, "complex before vertices"))?;
                let vs: Vec<usize> = toks[1..]
                    .iter()
                    .map(|t| {
                        let v: usize = t.parse().map_err(|_| perr(lineno, "bad vertex index"))?;
                        if v == 0 || v > n {
                            return Err(perr(lineno, format!("vertex {v} out of range")));
                        }
                        Ok(v - 1)
                    })
                    .collect::<Result<_>>()?;
                if toks[0] == "row" {
                    raw_complexes[i].row = Some(vs);
                } else {
                    raw_complexes[i].col = Some(vs);
                }
            }
            "entry" => {
                let Section::Complex(i) = section else {
                    return Err(perr(lineno, "entry outside a complex block"));
                };
                let f = field.ok_or_else(|| perr(lineno, "entry before field"))?;
                let q = Quiver {
                    vertices: vertices.unwrap_or(0),
                    arrows: arrows.clone(),
                };
                if toks.len() < 4 {
                    return Err(perr(lineno, "entry <row> <col> <element>"));
                }
                let r: usize = toks[1].parse().map_err(|_| perr(lineno, "bad row index"))?;
                let c: usize = toks[2].parse().map_err(|_| perr(lineno, "bad col index"))?;
                let elem = parse_element(&toks[3..], &q, f, lineno)?;
                raw_complexes[i].entries.push((r, c, elem, lineno));
            }
            other => return Err(perr(lineno, format!("unknown key {other}"))),
        }
    }

    let field = field.ok_or_else(|| perr(0, "missing field line"))?;
    let n = vertices.ok_or_else(|| perr(0, "missing vertices line"))?;
    let quiver = Quiver::new(n, arrows)?;
    let mut relations: Vec<Relation> = Vec::new();
    for (lineno, text) in &relation_lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let rel = parse_element(&toks, &quiver, field, *lineno)?;
        if rel.is_empty() {
            return Err(perr(*lineno, "empty relation"));
        }
        relations.push(rel);
    }
    let algebra = build_algebra(quiver, relations, field, DEFAULT_PATH_BOUND)?;

    let mut modules = Vec::new();
    for rm in raw_modules {
        let dims = rm
            .dims
            .ok_or_else(|| perr(rm.lineno, format!("module {} has no dim line", rm.name)))?;
        if dims.len() != n {
            return Err(perr(rm.lineno, "dim length must match vertex count"));
        }
        let mut maps: Vec<Matrix> = algebra
            .quiver
            .arrows
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source], field))
            .collect();
        for (ai, entries, lineno) in rm.maps {
            let a = &algebra.quiver.arrows[ai];
            let (rows, cols) = (dims[a.target], dims[a.source]);
            if entries.len() != rows * cols {
                return Err(perr(
                    lineno,
                    format!("map {} needs {} entries", a.name, rows * cols),
                ));
            }
            maps[ai] = Matrix::new(rows, cols, field, entries);
        }
        let rep = Representation::new(Arc::clone(&algebra), dims, maps)
            .map_err(|e| perr(rm.lineno, format!("module {}: {e}", rm.name)))?;
        modules.push((rm.name, rep));
    }

    let mut complexes = Vec::new();
    for rc in raw_complexes {
        let neg = rc.row.unwrap_or_default();
        let zero = rc.col.unwrap_or_default();
        let mut diff = vec![vec![AlgElem::zero(); neg.len()]; zero.len()];
        for (r, c, elem, lineno) in rc.entries {
            if r >= neg.len() || c >= zero.len() {
                return Err(perr(lineno, "entry index out of range"));
            }
            let mut acc = AlgElem::zero();
            for (s, p) in elem {
                acc = algebra.add(&acc, &algebra.scale(&s, &algebra.path_elem(&p)));
            }
            diff[c][r] = acc;
        }
        let complex = TwoTermComplex::new(&algebra, neg, zero, diff)
            .map_err(|e| perr(rc.lineno, format!("complex {}: {e}", rc.name)))?;
        complexes.push((rc.name, complex));
    }
    Ok(AlgFile {
        algebra,
        modules,
        complexes,
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn emit_term(alg: &AlgebraPresentation, s: &Scalar, p: &Path) -> String {
    let path = alg.display_path(p);
    if s == &alg.field.one() {
        path
    } else {
        format!("{s}*{path}")
    }
}

fn emit_elem(alg: &AlgebraPresentation, e: &AlgElem) -> String {
    e.coeffs
        .iter()
        .map(|(i, c)| emit_term(alg, c, &alg.basis[*i]))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Canonical text form; `parse(emit(parse(f)))` equals `parse(f)`.
pub fn emit(file: &AlgFile) -> String {
    let alg = &file.algebra;
    let mut out = String::new();
    match alg.field {
        FieldTag::Rational => out.push_str("field Q\n"),
        FieldTag::Prime(p) => out.push_str(&format!("field F {p}\n")),
    }
    out.push_str(&format!("vertices {}\n", alg.vertex_count()));
    for a in &alg.quiver.arrows {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.name,
            a.source + 1,
            a.target + 1
        ));
    }
    for rel in &alg.relations {
        let terms: Vec<String> = rel.iter().map(|(s, p)| emit_term(alg, s, p)).collect();
        out.push_str(&format!("relation {}\n", terms.join(" + ")));
    }
    for (name, m) in &file.modules {
        out.push_str(&format!("module {name}\n"));
        let dims: Vec<String> = m.dims.iter().map(usize::to_string).collect();
        out.push_str(&format!("dim {}\n", dims.join(" ")));
        for (k, a) in alg.quiver.arrows.iter().enumerate() {
            if m.dims[a.target] * m.dims[a.source] == 0 {
                continue;
            }
            let entries: Vec<String> = m.maps[k].flatten().iter().map(Scalar::to_string).collect();
            out.push_str(&format!("map {} {}\n", a.name, entries.join(" ")));
        }
    }
    for (name, c) in &file.complexes {
        out.push_str(&format!("complex {name}\n"));
        let row: Vec<String> = c.neg.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&format!(
            "row{}{}\n",
            if row.is_empty() { "" } else { " " },
            row.join(" ")
        ));
        let col: Vec<String> = c.zero.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&format!(
            "col{}{}\n",
            if col.is_empty() { "" } else { " " },
            col.join(" ")
        ));
        for (cc, rowvec) in c.diff.iter().enumerate() {
            for (rr, e) in rowvec.iter().enumerate() {
                if !e.is_zero() {
                    out.push_str(&format!("entry {rr} {cc} {}\n", emit_elem(alg, e)));
                }
            }
        }
    }
    out
}

/// Emit only a complex block (used by the construct command).
pub fn emit_complex_block(name: &str, c: &TwoTermComplex) -> String {
    let f = AlgFile {
        algebra: Arc::clone(&c.algebra),
        modules: Vec::new(),
        complexes: vec![(name.to_string(), c.clone())],
    };
    let full = emit(&f);
    let idx = full.find("complex ").unwrap_or(0);
    full[idx..].to_string()
}

/// Structural equality of parsed files, for round-trip checks.
pub fn same_file(a: &AlgFile, b: &AlgFile) -> bool {
    if *a.algebra != *b.algebra {
        return false;
    }
    if a.modules.len() != b.modules.len() || a.complexes.len() != b.complexes.len() {
        return false;
    }
    for ((n1, m1), (n2, m2)) in a.modules.iter().zip(&b.modules) {
        if n1 != n2 || m1.dims != m2.dims || m1.maps != m2.maps {
            return false;
        }
    }
    for ((n1, c1), (n2, c2)) in a.complexes.iter().zip(&b.complexes) {
        if n1 != n2 || c1.neg != c2.neg || c1.zero != c2.zero || c1.diff != c2.diff {
            return false;
        }
    }
    true
}
