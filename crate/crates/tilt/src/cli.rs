//! Implementations behind the `tilt` command-line verbs. Each command
//! parses one `.alg` file and produces a [`Report`]; the binary prints the
//! report and exits with its code.

use crate::complex::{add_equal, endomorphism_algebra, strip_contractibles, TwoTermComplex};
use crate::decompose::indecomposable_summands;
use crate::enumerate::{enumerate, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::field::FieldTag;
use crate::format::{emit_complex_block, parse_with_field, AlgFile};
use crate::module::Representation;
use crate::report::Report;
use crate::tilting::{
    construct_from_torsion, is_tilting_with_ctx, round_trip_x, round_trip_y, TorsionInput,
};
use crate::torsion::{is_splitting, verify_torsion_pair, TorsionContext, Verdict};

#[derive(Clone)]
pub struct Options {
    pub bound: Option<Vec<usize>>,
    pub field_override: Option<FieldTag>,
    pub seed: u64,
    pub budget: u128,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bound: None,
            field_override: None,
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// The default enumeration bound: the dimension vector of the regular
/// module, componentwise (covers all simples, projectives and injectives).
pub fn default_bound(file: &AlgFile) -> Vec<usize> {
    file.algebra.regular().dims
}

fn load(text: &str, opts: &Options) -> Result<AlgFile> {
    parse_with_field(text, opts.field_override)
}

fn get_complex<'f>(file: &'f AlgFile, name: &str) -> Result<&'f TwoTermComplex> {
    file.complex(name)
        .ok_or_else(|| Error::Precondition(format!("no complex named {name} in the file")))
}

/// Resolve a module expression: `+`-separated summands, each a file
/// module name or a builtin `S<k>` / `P<k>` / `I<k>` / `0`.
pub fn module_expr(file: &AlgFile, expr: &str) -> Result<Representation> {
    let a = &file.algebra;
    let mut parts: Vec<Representation> = Vec::new();
    for tok in expr.split('+') {
        let tok = tok.trim();
        if tok.is_empty() || tok == "0" {
            continue;
        }
        if let Some(m) = file.module(tok) {
            parts.push(m.clone());
            continue;
        }
        let built = |prefix: char| -> Option<usize> {
            tok.strip_prefix(prefix)
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&v| v >= 1 && v <= a.vertex_count())
                .map(|v| v - 1)
        };
        if let Some(v) = built('S') {
            parts.push(a.simple(v));
        } else if let Some(v) = built('P') {
            parts.push(a.projective(v));
        } else if let Some(v) = built('I') {
            let op = a.opposite()?;
            parts.push(a.injective(v, &op));
        } else {
            return Err(Error::Precondition(format!(
                "unknown module expression {tok}"
            )));
        }
    }
    if parts.is_empty() {
        return Ok(Representation::zero(a));
    }
    Ok(Representation::direct_sum(
        &parts.iter().collect::<Vec<_>>(),
    ))
}

fn fill_tilting(report: &mut Report, v: &crate::tilting::TiltingVerdict) {
    report.put("tilting.presilting_up", v.presilting_up);
    report.put("tilting.presilting_down", v.presilting_down);
    report.put("tilting.h0_in_x", v.h0_in_x);
    report.put("tilting.hminus1_in_y", v.hminus1_in_y);
    report.put("tilting.k0_unimodular", v.k0_unimodular);
    report.put("tilting.summand_count_ok", v.summand_count_ok);
    report.put("tilting.generation", &v.generation);
    report.put("tilting.overall", v.overall);
    if let Some(w) = &v.witness {
        report.put("tilting.witness_dims", format_dims(&w.dims));
    }
}

fn fill_torsion(report: &mut Report, t: &crate::torsion::TorsionPairReport) {
    report.put("torsion.h0_in_x", t.h0_in_x);
    report.put("torsion.intersection_zero", &t.intersection);
    report.put("torsion.verdict", t.verdict);
    report.put("torsion.canonical_checked", t.canonical_checked);
    report.put("torsion.cross_checked", t.cross_checked);
    if let Some(w) = &t.witness {
        report.put("torsion.witness_dims", format_dims(&w.dims));
    }
}

fn format_dims(dims: &[usize]) -> String {
    let s: Vec<String> = dims.iter().map(usize::to_string).collect();
    s.join(",")
}

fn describe(report: &mut Report, file: &AlgFile, name: &str) {
    report.put("field", file.algebra.field);
    report.put("complex", name);
}

/// `tilt check`: tilting verdict plus torsion-pair verification; the exit
/// code follows the tilting verdict.
pub fn cmd_check(text: &str, complex_name: &str, opts: &Options) -> Report {
    let mut report = Report::new();
    match (|| -> Result<()> {
        let file = load(text, opts)?;
        let p = get_complex(&file, complex_name)?;
        let bound = opts.bound.clone().unwrap_or_else(|| default_bound(&file));
        describe(&mut report, &file, complex_name);
        report.put("bound", format_dims(&bound));
        let ctx = TorsionContext::new(p)?;
        let tilt = is_tilting_with_ctx(&ctx, &bound, opts.budget, opts.seed)?;
        fill_tilting(&mut report, &tilt);
        let tors = verify_torsion_pair(&ctx, &bound, opts.budget, opts.seed)?;
        fill_torsion(&mut report, &tors);
        // splitting is defined once the complex is tilting; decidable when
        // an inventory is available to sample from
        if tilt.overall == Verdict::Verified {
            if let Ok(inventory) = enumerate(&file.algebra, &bound, opts.budget, opts.seed) {
                let (splits, _) = is_splitting(&ctx, &inventory.representatives);
                report.put("torsion.splitting", splits);
            }
        }
        report.put("overall", tilt.overall);
        report.say(format!("tilting: {}", tilt.overall));
        report.say(format!(
            "torsion pair: {} (intersection: {})",
            tors.verdict, tors.intersection
        ));
        if let Some(w) = &tors.witness {
            report.say(format!(
                "witness in both classes with dimension vector {}",
                format_dims(&w.dims)
            ));
        }
        Ok(())
    })() {
        Ok(()) => {}
        Err(e) => report.set_error(e),
    }
    report
}

/// `tilt torsion`: the torsion-pair report alone; exit code follows its
/// verdict.
pub fn cmd_torsion(text: &str, complex_name: &str, opts: &Options) -> Report {
    let mut report = Report::new();
    match (|| -> Result<()> {
        let file = load(text, opts)?;
        let p = get_complex(&file, complex_name)?;
        let bound = opts.bound.clone().unwrap_or_else(|| default_bound(&file));
        describe(&mut report, &file, complex_name);
        report.put("bound", format_dims(&bound));
        let ctx = TorsionContext::new(p)?;
        let tors = verify_torsion_pair(&ctx, &bound, opts.budget, opts.seed)?;
        fill_torsion(&mut report, &tors);
        report.put("overall", tors.verdict);
        report.say(format!("torsion pair: {}", tors.verdict));
        Ok(())
    })() {
        Ok(()) => {}
        Err(e) => report.set_error(e),
    }
    report
}

/// `tilt endo`: the endomorphism algebra `B = End(P•)^op` presented as a
/// quiver with relations.
pub fn cmd_endo(text: &str, complex_name: &str, opts: &Options) -> Report {
    let mut report = Report::new();
    match (|| -> Result<()> {
        let file = load(text, opts)?;
        let p = get_complex(&file, complex_name)?;
        describe(&mut report, &file, complex_name);
        let stripped = strip_contractibles(p);
        if stripped.is_empty() {
            report.put("endo.dim", 0);
            report.put("endo.vertices", 0);
            report.put("endo.arrows", "");
            report.put("overall", Verdict::Verified);
            report.say("contractible complex: the endomorphism algebra is zero");
            return Ok(());
        }
        let op = p.algebra.opposite()?;
        let endo = endomorphism_algebra(p, &op)?;
        report.put("endo.dim", endo.alg.dim);
        let pres = crate::basisalg::present_as_quiver(&endo.alg, opts.seed)?;
        report.put("endo.vertices", pres.algebra.vertex_count());
        let mut arrows: Vec<String> = pres
            .algebra
            .quiver
            .arrows
            .iter()
            .map(|a| format!("{}->{}", a.source + 1, a.target + 1))
            .collect();
        arrows.sort();
        report.put("endo.arrows", arrows.join(","));
        report.put("endo.relations", pres.algebra.relations.len());
        let max_rel_len = pres
            .algebra
            .relations
            .iter()
            .flat_map(|r| r.iter().map(|(_, p)| p.len()))
            .max()
            .unwrap_or(0);
        report.put("endo.relation_degree_bound", max_rel_len);
        report.put("endo.basic_dim", pres.algebra.dim());
        report.put("overall", Verdict::Verified);
        report.say(format!(
            "B has dimension {} with quiver on {} vertices, arrows [{}]",
            endo.alg.dim,
            pres.algebra.vertex_count(),
            arrows.join(", ")
        ));
        Ok(())
    })() {
        Ok(()) => {}
        Err(e) => report.set_error(e),
    }
    report
}

/// `tilt construct`: build the tilting complex attached to torsion data
/// and verify it; emits the result as a complex block.
pub fn cmd_construct(
    text: &str,
    x_gen: &str,
    y_cogen: &str,
    compare: Option<&str>,
    opts: &Options,
) -> Report {
    let mut report = Report::new();
    match (|| -> Result<()> {
        let file = load(text, opts)?;
        let bound = opts.bound.clone().unwrap_or_else(|| default_bound(&file));
        report.put("field", file.algebra.field);
        report.put("bound", format_dims(&bound));
        let x = module_expr(&file, x_gen)?;
        let y = module_expr(&file, y_cogen)?;
        report.put("construct.x_gen_dims", format_dims(&x.dims));
        report.put("construct.y_cogen_dims", format_dims(&y.dims));
        let input = TorsionInput {
            x_generator: x,
            y_cogenerator: y,
        };
        let built = construct_from_torsion(&file.algebra, &input, &bound, opts.budget, opts.seed)?;
        fill_tilting(&mut report, &built.verdict);
        report.put(
            "construct.class_agreement_checked",
            built.class_agreement_checked,
        );
        for w in &built.precondition_warnings {
            report.say(format!("warning: {w}"));
        }
        if let Some(other) = compare {
            let target = get_complex(&file, other)?;
            let same = add_equal(&built.complex, target, opts.seed)?;
            report.put(&format!("construct.add_equal.{other}"), same);
        }
        report.put("overall", built.verdict.overall);
        report.say(emit_complex_block("constructed", &built.complex));
        Ok(())
    })() {
        Ok(()) => {}
        Err(e) => report.set_error(e),
    }
    report
}

/// `tilt bb-verify`: run the equivalence round trips over the classified
/// inventory. Requires a verified torsion pair first (exit 2 otherwise).
pub fn cmd_bb_verify(text: &str, complex_name: &str, opts: &Options) -> Report {
    let mut report = Report::new();
    match (|| -> Result<()> {
        let file = load(text, opts)?;
        let p = get_complex(&file, complex_name)?;
        let bound = opts.bound.clone().unwrap_or_else(|| default_bound(&file));
        describe(&mut report, &file, complex_name);
        report.put("bound", format_dims(&bound));
        let ctx = TorsionContext::new(p)?;
        let tors = verify_torsion_pair(&ctx, &bound, opts.budget, opts.seed)?;
        fill_torsion(&mut report, &tors);
        if tors.verdict != Verdict::Verified {
            report.put("overall", Verdict::Inconclusive);
            report.say("torsion pair not verified; round trips skipped".to_string());
            return Ok(());
        }
        let endo = endomorphism_algebra(p, &ctx.op)?;
        report.put("endo.dim", endo.alg.dim);
        let inventory = enumerate(&file.algebra, &bound, opts.budget, opts.seed)?;
        let (mut x_members, mut y_members, mut x_fail, mut y_fail) = (0, 0, 0, 0);
        for m in &inventory.representatives {
            if ctx.in_x(m) {
                x_members += 1;
                if !round_trip_x(&endo, &ctx, m, opts.seed)? {
                    x_fail += 1;
                }
            }
            if ctx.in_y(m) {
                y_members += 1;
                if !round_trip_y(&endo, &ctx, m, opts.seed)? {
                    y_fail += 1;
                }
            }
        }
        report.put("bb.x_members", x_members);
        report.put("bb.y_members", y_members);
        report.put("bb.x_failures", x_fail);
        report.put("bb.y_failures", y_fail);
        let overall = if x_fail + y_fail == 0 {
            Verdict::Verified
        } else {
            Verdict::Refuted
        };
        report.put("overall", overall);
        report.say(format!(
            "round trips: {x_members} through the torsion class, {y_members} through the torsionfree class, {} failures",
            x_fail + y_fail
        ));
        Ok(())
    })() {
        Ok(()) => {}
        Err(e) => report.set_error(e),
    }
    report
}

/// `tilt enumerate`: dump the inventory up to the bound, optionally
/// classified against a complex.
pub fn cmd_enumerate(text: &str, complex_name: Option<&str>, opts: &Options) -> Report {
    let mut report = Report::new();
    match (|| -> Result<()> {
        let file = load(text, opts)?;
        let bound = opts.bound.clone().unwrap_or_else(|| default_bound(&file));
        report.put("field", file.algebra.field);
        report.put("bound", format_dims(&bound));
        let inventory = enumerate(&file.algebra, &bound, opts.budget, opts.seed)?;
        report.put("count", inventory.len());
        let ctx = match complex_name {
            Some(name) => {
                report.put("complex", name);
                Some(TorsionContext::new(get_complex(&file, name)?)?)
            }
            None => None,
        };
        for (i, m) in inventory.representatives.iter().enumerate() {
            let mut line = format!("rep {i}: dim {}", format_dims(&m.dims));
            for (k, a) in file.algebra.quiver.arrows.iter().enumerate() {
                if m.dims[a.target] * m.dims[a.source] == 0 {
                    continue;
                }
                let entries: Vec<String> =
                    m.maps[k].flatten().iter().map(|s| s.to_string()).collect();
                line.push_str(&format!(" {}=[{}]", a.name, entries.join(" ")));
            }
            let indec = indecomposable_summands(m, opts.seed)?.len() == 1;
            line.push_str(&format!(" indecomposable={indec}"));
            if let Some(ctx) = &ctx {
                line.push_str(&format!(" in_x={} in_y={}", ctx.in_x(m), ctx.in_y(m)));
            }
            report.say(line);
        }
        report.put("overall", Verdict::Verified);
        Ok(())
    })() {
        Ok(()) => {}
        Err(e) => report.set_error(e),
    }
    report
}

/// `tilt splitting`: the Ext^2 splitting test over the classified
/// inventory of a verified tilting complex.
pub fn cmd_splitting(text: &str, complex_name: &str, opts: &Options) -> Report {
    let mut report = Report::new();
    match (|| -> Result<()> {
        let file = load(text, opts)?;
        let p = get_complex(&file, complex_name)?;
        let bound = opts.bound.clone().unwrap_or_else(|| default_bound(&file));
        describe(&mut report, &file, complex_name);
        let ctx = TorsionContext::new(p)?;
        let tilt = is_tilting_with_ctx(&ctx, &bound, opts.budget, opts.seed)?;
        fill_tilting(&mut report, &tilt);
        if tilt.overall == Verdict::Refuted {
            report.put("overall", "error");
            report.put("error", "splitting is only defined for tilting complexes");
            return Ok(());
        }
        let inventory = enumerate(&file.algebra, &bound, opts.budget, opts.seed)?;
        let (ok, witness) = is_splitting(&ctx, &inventory.representatives);
        report.put("splitting", ok);
        if let Some((i, j)) = witness {
            report.put("splitting.witness", format!("{i},{j}"));
        }
        report.put(
            "overall",
            if ok {
                Verdict::Verified
            } else {
                Verdict::Refuted
            },
        );
        Ok(())
    })() {
        Ok(()) => {}
        Err(e) => report.set_error(e),
    }
    report
}
