//! Command dispatch: build the root-system objects, run the library
//! operations, and assemble text and JSON views of the same value.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};

use lietwist::classify::{gray_wolf_inner, wolf_twistor};
use lietwist::fibration::{
    check_3symmetric, check_symmetric, degree2, degree3, flip_fibration, SymmetryReport,
};
use lietwist::json as lj;
use lietwist::parabolic::{canonical_series, check_series_equals_grading, grade, ParabolicDatum};
use lietwist::rootsys::{validate_base, RootId};
use lietwist::twistor::{
    enumerate_candidates, fibre_info, integrability, is_degree3_compatible, isotropy_orbit_count,
    nplus_from_base, recover_parabolic, EqualRankSpace, TwistorCandidate,
};
use lietwist::vector::parse_vector_list;
use lietwist::{Base, Coords, Error, RootSystem, SimpleType, WeightSpaceSet};

use crate::render::*;
use crate::{Cli, Command};

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub finding: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            finding: false,
        }
    }

    fn with_finding(text: String, json: Value, finding: bool) -> Self {
        Outcome {
            text,
            json,
            finding,
        }
    }
}

const SWEEP_TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2",
];

fn parse_system(s: &str) -> Result<SimpleType, Error> {
    s.parse()
}

/// Subset syntax: "2", "1,3" or "13"; 1-based on the command line.
fn parse_subset(s: &str, rank: usize) -> Result<BTreeSet<usize>, Error> {
    let s = s.trim();
    if s.is_empty() || s == "{}" || s == "none" {
        return Ok(BTreeSet::new());
    }
    let indices: Vec<usize> = if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid subset index `{t}`")))
            })
            .collect::<Result<_, _>>()?
    } else if s.len() > 1 && s.bytes().all(|b| b.is_ascii_digit()) {
        s.bytes().map(|b| (b - b'0') as usize).collect()
    } else {
        vec![s
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("invalid subset `{s}`")))?]
    };
    let mut subset = BTreeSet::new();
    for i in indices {
        if i == 0 || i > rank {
            return Err(Error::SubsetIndex { index: i, rank });
        }
        subset.insert(i - 1);
    }
    Ok(subset)
}

fn resolve_base<'a>(rs: &'a RootSystem, spec: &Option<String>) -> Result<Base<'a>, Error> {
    match spec {
        Some(text) => validate_base(rs, &parse_vector_list(text)?),
        None => Ok(rs.catalog_base()),
    }
}

fn parse_root_ids(rs: &RootSystem, text: &str) -> Result<BTreeSet<RootId>, Error> {
    let vectors: Vec<Coords> = parse_vector_list(text)?;
    vectors
        .iter()
        .map(|v| rs.id_of(v).ok_or_else(|| Error::NotARoot(v.to_string())))
        .collect()
}

/// h from a root list: Cartan included, closed under negation. An empty
/// list (or "none") gives the torus, h = t.
fn space_from_h<'a>(rs: &'a RootSystem, text: &str) -> Result<EqualRankSpace<'a, lietwist::Rat>, Error> {
    let mut roots = BTreeSet::new();
    if !text.trim().is_empty() && text.trim() != "none" {
        roots = parse_root_ids(rs, text)?;
        roots.extend(roots.clone().iter().map(|&id| rs.neg_id(id)));
    }
    EqualRankSpace::new(rs, WeightSpaceSet::new(rs, true, roots))
}

fn symmetry_lines(out: &mut String, report: &SymmetryReport, rs: &RootSystem) {
    for cond in &report.conditions {
        if cond.ok() {
            let _ = writeln!(out, "{}: ok", cond.name);
        } else {
            use lietwist::fibration::Violation;
            let witness = match &cond.violations[0] {
                Violation::RootSum { left, right, sum } => format!(
                    "{} + {} = {}",
                    rs.root(*left),
                    rs.root(*right),
                    rs.root(*sum)
                ),
                Violation::CartanPair { root } => {
                    format!("[g_{0}, g_-{0}] lands in the Cartan", rs.root(*root))
                }
                Violation::CartanAction { root } => format!("[t, {}] escapes", rs.root(*root)),
            };
            let _ = writeln!(
                out,
                "{}: FAIL ({} violations, first: {witness})",
                cond.name,
                cond.violations.len()
            );
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Roots { system } => {
            let stype = parse_system(system)?;
            let rs = RootSystem::new(stype);
            let mut text = format!(
                "{}: {} roots in {} coordinates\n",
                stype,
                rs.num_roots(),
                rs.ambient_dim()
            );
            for id in rs.ids() {
                let _ = writeln!(text, "{:3}  {}", id.0, rs.root(id));
            }
            let json = json!({
                "system": stype.to_string(),
                "count": rs.num_roots(),
                "ambient_dim": rs.ambient_dim(),
                "roots": lj::root_texts(&rs, rs.ids()),
            });
            Ok(Outcome::ok(text, json))
        }

        Command::Base { system, base } => {
            let rs = RootSystem::new(parse_system(system)?);
            let b = resolve_base(&rs, base)?;
            let mut text = format!(
                "{} base: {}\n",
                rs.stype(),
                b.simple_ids()
                    .iter()
                    .map(|&id| rs.root(id).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let _ = writeln!(text, "positive roots ({}):", b.positive_ids().len());
            let mut coeff_map = serde_json::Map::new();
            for &id in b.positive_ids() {
                let coeffs = b.coeffs_of(id);
                let _ = writeln!(text, "  {} = {}", rs.root(id), coeffs);
                coeff_map.insert(
                    rs.root(id).to_string(),
                    Value::Array(coeffs.coeffs().iter().map(|&c| json!(c)).collect()),
                );
            }
            let _ = writeln!(
                text,
                "highest root: {} = {}",
                b.highest_root(),
                b.coeffs_of(b.highest_id())
            );
            let mut json = lj::base_json(&b);
            json.as_object_mut()
                .unwrap()
                .insert("coefficients".into(), Value::Object(coeff_map));
            Ok(Outcome::ok(text, json))
        }

        Command::Grade {
            system,
            base,
            subset,
        } => {
            let rs = RootSystem::new(parse_system(system)?);
            let b = resolve_base(&rs, base)?;
            let subset = parse_subset(subset, rs.rank())?;
            let datum = ParabolicDatum::new(&b, subset.clone())?;
            let grading = grade(&datum);
            let mut text = format!("{}, A = {}\n", rs.stype(), subset_text(&subset));
            for r in 1..=grading.max_level().max(0) {
                let _ = writeln!(
                    text,
                    "g^{r} = {}",
                    oplus(&rs, grading.level_set(r).into_iter())
                );
            }
            let _ = writeln!(text, "max level {}", grading.max_level());
            Ok(Outcome::ok(text, lj::grading_json(&grading)))
        }

        Command::Series {
            system,
            base,
            subset,
        } => {
            let rs = RootSystem::new(parse_system(system)?);
            let b = resolve_base(&rs, base)?;
            let subset = parse_subset(subset, rs.rank())?;
            let datum = ParabolicDatum::new(&b, subset.clone())?;
            let series = canonical_series(&datum);
            let report = check_series_equals_grading(&datum);
            let mut text = format!("{}, A = {}\n", rs.stype(), subset_text(&subset));
            for i in 1..=series.len() {
                let _ = writeln!(text, "l^{i} = {}", oplus(&rs, series.term(i).into_iter()));
            }
            let _ = writeln!(text, "l^{} = {{0}}", series.len() + 1);
            let _ = writeln!(
                text,
                "series equals grading filtration: {}",
                yes_no(report.matches())
            );
            let json = json!({
                "terms": series
                    .terms()
                    .iter()
                    .map(|t| lj::root_texts(&rs, t.iter().copied()))
                    .collect::<Vec<_>>(),
                "matches_grading": report.matches(),
            });
            Ok(Outcome::with_finding(text, json, !report.matches()))
        }

        Command::Fib3 {
            system,
            base,
            subset,
        } => {
            let rs = RootSystem::new(parse_system(system)?);
            let b = resolve_base(&rs, base)?;
            let subset = parse_subset(subset, rs.rank())?;
            let datum = ParabolicDatum::new(&b, subset.clone())?;
            let grading = grade(&datum);
            let fib = degree3(&grading);
            let mut text = format!("{}, A = {}\n", rs.stype(), subset_text(&subset));
            let _ = writeln!(
                text,
                "h  = {}",
                real_oplus(
                    &rs,
                    Some(rs.rank()),
                    level_ordered_reps(&grading, &fib.h.roots)
                )
            );
            let _ = writeln!(
                text,
                "m+ = {}",
                oplus(&rs, level_ordered(&grading, &fib.m_plus.roots))
            );
            let _ = writeln!(
                text,
                "m- = {}",
                oplus(&rs, level_ordered(&grading, &fib.m_minus.roots))
            );
            let _ = writeln!(text, "trivial: {}", yes_no(fib.is_trivial()));
            Ok(Outcome::ok(text, lj::fibration3_json(&fib)))
        }

        Command::Fib2 {
            system,
            base,
            subset,
        } => {
            let rs = RootSystem::new(parse_system(system)?);
            let b = resolve_base(&rs, base)?;
            let subset = parse_subset(subset, rs.rank())?;
            let datum = ParabolicDatum::new(&b, subset.clone())?;
            let grading = grade(&datum);
            let pair = degree2(&grading);
            let report = check_symmetric(&pair);
            let mut text = format!("{}, A = {}\n", rs.stype(), subset_text(&subset));
            let _ = writeln!(
                text,
                "f = {}",
                real_oplus(
                    &rs,
                    Some(rs.rank()),
                    level_ordered_reps(&grading, &pair.f.roots)
                )
            );
            let _ = writeln!(
                text,
                "q = {}",
                real_oplus(&rs, None, level_ordered_reps(&grading, &pair.q.roots))
            );
            let _ = writeln!(text, "symmetric: {}", yes_no(report.passes()));
            Ok(Outcome::with_finding(
                text,
                lj::symmetric_pair_json(&pair),
                !report.passes(),
            ))
        }

        Command::Check3sym {
            system,
            base,
            subset,
        } => {
            let rs = RootSystem::new(parse_system(system)?);
            let b = resolve_base(&rs, base)?;
            let subset = parse_subset(subset, rs.rank())?;
            let datum = ParabolicDatum::new(&b, subset.clone())?;
            let grading = grade(&datum);
            let fib = degree3(&grading);
            let report = check_3symmetric(&fib);
            let mut text = format!("{}, A = {}\n", rs.stype(), subset_text(&subset));
            let _ = writeln!(
                text,
                "h  = {}",
                real_oplus(
                    &rs,
                    Some(rs.rank()),
                    level_ordered_reps(&grading, &fib.h.roots)
                )
            );
            let _ = writeln!(
                text,
                "m+ = {}",
                oplus(&rs, level_ordered(&grading, &fib.m_plus.roots))
            );
            symmetry_lines(&mut text, &report, &rs);
            let _ = writeln!(text, "3-symmetric: {}", yes_no(report.passes()));
            let mut json = lj::fibration3_json(&fib);
            json.as_object_mut()
                .unwrap()
                .insert("passes".into(), json!(report.passes()));
            Ok(Outcome::with_finding(text, json, !report.passes()))
        }

        Command::Nplus { system, h, base } => {
            let rs = RootSystem::new(parse_system(system)?);
            let space = space_from_h(&rs, h)?;
            let b = resolve_base(&rs, base)?;
            let candidate = nplus_from_base(&space, &b);
            let mut text = format!("{}, h = {}\n", rs.stype(), h_text(&rs, space.h()));
            let _ = writeln!(
                text,
                "base: {}",
                b.simple_ids()
                    .iter()
                    .map(|&id| rs.root(id).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let _ = writeln!(
                text,
                "n+ = {}",
                oplus(&rs, candidate.n_plus().roots.iter().copied())
            );
            let json = json!({
                "n_plus": lj::root_texts(&rs, candidate.n_plus().roots.iter().copied()),
            });
            Ok(Outcome::ok(text, json))
        }

        Command::TwistorCheck { system, h, nplus } => {
            let rs = RootSystem::new(parse_system(system)?);
            let space = space_from_h(&rs, h)?;
            let n_plus = parse_root_ids(&rs, nplus)?;
            let candidate = TwistorCandidate::new(&space, n_plus)?;
            let report = integrability(&candidate);
            let mut text = format!("{}, h = {}\n", rs.stype(), h_text(&rs, space.h()));
            let _ = writeln!(
                text,
                "n+ = {}",
                oplus(&rs, candidate.n_plus().roots.iter().copied())
            );
            let witness_text = |w: &[RootId]| {
                w.iter()
                    .map(|&id| rs.root(id).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            if report.torsion_ok() {
                let _ = writeln!(text, "[n+,n+]^m ⊂ n+: ok");
            } else {
                let _ = writeln!(
                    text,
                    "[n+,n+]^m ⊂ n+: FAIL (escapes at {})",
                    witness_text(&report.torsion_witnesses)
                );
            }
            if report.curvature_ok() {
                let _ = writeln!(text, "[[n+,n+]^h,n+] ⊂ n+: ok");
            } else {
                let _ = writeln!(
                    text,
                    "[[n+,n+]^h,n+] ⊂ n+: FAIL (escapes at {})",
                    witness_text(&report.curvature_witnesses)
                );
            }
            let _ = writeln!(text, "integrable: {}", yes_no(report.passes()));
            let json = json!({
                "n_plus": lj::root_texts(&rs, candidate.n_plus().roots.iter().copied()),
                "integrable": report.passes(),
                "torsion_witnesses": lj::root_texts(&rs, report.torsion_witnesses.iter().copied()),
                "curvature_witnesses": lj::root_texts(&rs, report.curvature_witnesses.iter().copied()),
            });
            Ok(Outcome::with_finding(text, json, !report.passes()))
        }

        Command::Recover { system, h, nplus } => {
            let rs = RootSystem::new(parse_system(system)?);
            let space = space_from_h(&rs, h)?;
            let n_plus = parse_root_ids(&rs, nplus)?;
            let candidate = TwistorCandidate::new(&space, n_plus)?;
            let mut text = format!("{}, h = {}\n", rs.stype(), h_text(&rs, space.h()));
            let _ = writeln!(
                text,
                "n+ = {}",
                oplus(&rs, candidate.n_plus().roots.iter().copied())
            );
            match recover_parabolic(&candidate) {
                Ok(recovered) => {
                    let info = fibre_info(&space, &recovered.h_part, &recovered.base);
                    let _ = writeln!(
                        text,
                        "l+ = {}",
                        oplus(&rs, recovered.l_plus.roots.iter().copied())
                    );
                    let _ = writeln!(
                        text,
                        "base: {}",
                        recovered
                            .base
                            .simple_ids()
                            .iter()
                            .map(|&id| rs.root(id).to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    let _ = writeln!(text, "A = {}", subset_text(&recovered.subset));
                    let _ = writeln!(
                        text,
                        "[n+,n+]^h = {}",
                        oplus(&rs, recovered.h_part.roots.iter().copied())
                    );
                    let pattern = match info.cp_pattern {
                        Some(k) => format!("CP({k})"),
                        None => "none".to_string(),
                    };
                    let _ = writeln!(text, "fibre dim {}, pattern {pattern}", info.dim);
                    let comp = |cs: &[SimpleType]| {
                        if cs.is_empty() {
                            "trivial".to_string()
                        } else {
                            cs.iter()
                                .map(SimpleType::to_string)
                                .collect::<Vec<_>>()
                                .join("+")
                        }
                    };
                    let _ = writeln!(
                        text,
                        "h components: {}; k components: {}",
                        comp(&info.h_components),
                        comp(&info.k_components)
                    );
                    Ok(Outcome::ok(text, lj::recovery_json(&recovered, &info)))
                }
                Err(failure) => {
                    let _ = writeln!(text, "recovery failed: {failure}");
                    let json = json!({
                        "n_plus": lj::root_texts(&rs, candidate.n_plus().roots.iter().copied()),
                        "recovered": false,
                        "failure": failure.to_string(),
                    });
                    Ok(Outcome::with_finding(text, json, true))
                }
            }
        }

        Command::Compat3 {
            system,
            h,
            nplus,
            base,
            subset,
        } => {
            let rs = RootSystem::new(parse_system(system)?);
            let space = space_from_h(&rs, h)?;
            let n_plus = parse_root_ids(&rs, nplus)?;
            let candidate = TwistorCandidate::new(&space, n_plus)?;
            let b = resolve_base(&rs, base)?;
            let subset = parse_subset(subset, rs.rank())?;
            let datum = ParabolicDatum::new(&b, subset.clone())?;
            let grading = grade(&datum);
            // Reference 3-symmetric structure of (B, A): the degree-3 m⁺, or
            // the flipped structure when the fibration is trivial.
            let m_plus = if grading.max_level() <= 2 {
                flip_fibration(&grading)?.m_plus
            } else {
                degree3(&grading).m_plus
            };
            let mut text = format!("{}, h = {}\n", rs.stype(), h_text(&rs, space.h()));
            let _ = writeln!(
                text,
                "reference m+ (A = {}) = {}",
                subset_text(&subset),
                oplus(&rs, m_plus.roots.iter().copied())
            );
            let recovered = match recover_parabolic(&candidate) {
                Ok(r) => r,
                Err(failure) => {
                    let _ = writeln!(text, "recovery failed: {failure}");
                    let json = json!({"recovered": false, "failure": failure.to_string()});
                    return Ok(Outcome::with_finding(text, json, true));
                }
            };
            let g1 = recovered.grading().level_set(1);
            let _ = writeln!(text, "g^1 = {}", oplus(&rs, g1.into_iter()));
            let report = is_degree3_compatible(&space, &recovered, &m_plus);
            let conj = m_plus.conjugate();
            let report_minus = is_degree3_compatible(&space, &recovered, &conj);
            if report.compatible() {
                let _ = writeln!(text, "g^1 ⊂ m+: yes");
            } else {
                let _ = writeln!(
                    text,
                    "g^1 ⊂ m+: no (witness {})",
                    report
                        .witnesses
                        .iter()
                        .map(|&id| rs.root(id).to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            let _ = writeln!(text, "g^1 ⊂ m-: {}", yes_no(report_minus.compatible()));
            if let Some(agrees) = report.refibration_agrees {
                let _ = writeln!(text, "regrouped fibration reproduces (h, m+): {}", yes_no(agrees));
            }
            let compatible = report.compatible() || report_minus.compatible();
            let _ = writeln!(text, "degree-3 compatible: {}", yes_no(compatible));
            let json = json!({
                "m_plus": lj::root_texts(&rs, m_plus.roots.iter().copied()),
                "g1": lj::root_texts(&rs, recovered.grading().level_set(1).into_iter()),
                "compatible_plus": report.compatible(),
                "compatible_minus": report_minus.compatible(),
                "compatible": compatible,
            });
            Ok(Outcome::with_finding(text, json, !compatible))
        }

        Command::Wolf { system, base } => {
            let rs = RootSystem::new(parse_system(system)?);
            let b = resolve_base(&rs, base)?;
            let wolf = wolf_twistor(&b)?;
            let grading = &wolf.grading;
            let gamma = b.highest_id();
            let mut text = format!(
                "{} wolf twistor: gamma = {}\n",
                rs.stype(),
                rs.root(gamma)
            );
            let _ = writeln!(text, "A = {}", subset_text(&wolf.subset));
            let _ = writeln!(
                text,
                "k = {}",
                real_oplus(
                    &rs,
                    Some(rs.rank()),
                    pair_reps(&rs, &grading.level_set(0), Some(&b))
                )
            );
            let _ = writeln!(text, "g^1 = {}", oplus(&rs, grading.level_set(1).into_iter()));
            let _ = writeln!(text, "g^2 = {}", oplus(&rs, grading.level_set(2).into_iter()));
            let pair = degree2(grading);
            let _ = writeln!(
                text,
                "f = {}",
                real_oplus(&rs, Some(rs.rank()), level_ordered_reps(grading, &pair.f.roots))
            );
            let _ = writeln!(text, "j1 = {}", oplus(&rs, wolf.j1.roots.iter().copied()));
            let _ = writeln!(
                text,
                "j2 = {}",
                oplus(&rs, level_ordered(grading, &wolf.j2.roots))
            );
            let fib = flip_fibration(grading)?;
            let passes = check_3symmetric(&fib).passes();
            let _ = writeln!(text, "j2 3-symmetric: {}", yes_no(passes));
            let json = json!({
                "gamma": rs.root(gamma).to_string(),
                "A": lj::subset_json(&wolf.subset),
                "grading": lj::grading_json(grading),
                "j1": lj::root_texts(&rs, wolf.j1.roots.iter().copied()),
                "j2": lj::root_texts(&rs, wolf.j2.roots.iter().copied()),
                "j2_3symmetric": passes,
            });
            Ok(Outcome::with_finding(text, json, !passes))
        }

        Command::Classify { system } => {
            let rs = RootSystem::new(parse_system(system)?);
            let b = rs.catalog_base();
            let cases = gray_wolf_inner(&b);
            let gamma = b.highest_id();
            let mut text = format!(
                "{}: rank {}, {} roots, gamma = {} = {}\n",
                rs.stype(),
                rs.rank(),
                rs.num_roots(),
                rs.root(gamma),
                b.coeffs_of(gamma)
            );
            for case in &cases {
                let pattern = match case.fibre_pattern {
                    Some(k) => format!("CP({k})"),
                    None => "none".to_string(),
                };
                let h_type = if case.h_components.is_empty() {
                    "trivial".to_string()
                } else {
                    case.h_components
                        .iter()
                        .map(SimpleType::to_string)
                        .collect::<Vec<_>>()
                        .join("+")
                };
                let _ = writeln!(
                    text,
                    "{}: A = {}, h = {h_type}, fibre dim {}, {pattern}",
                    case.kind.as_str(),
                    subset_text(&case.subset),
                    case.fibre_dim,
                );
            }
            let json = json!({
                "system": rs.stype().to_string(),
                "gamma": rs.root(gamma).to_string(),
                "marks": b.coeffs_of(gamma).coeffs(),
                "cases": cases.iter().map(|c| lj::inner_case_json(&rs, c)).collect::<Vec<_>>(),
            });
            Ok(Outcome::ok(text, json))
        }

        Command::Sweep {
            system,
            all_subsets,
            check,
            h,
            max_rank,
            force,
        } => sweep(
            system,
            *all_subsets,
            check.as_deref(),
            h.as_deref(),
            max_rank.unwrap_or(4),
            *force,
        ),
    }
}

fn subsets_of(rank: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0u32..(1 << rank)).map(move |mask| (0..rank).filter(|i| mask & (1 << i) != 0).collect())
}

fn sweep(
    system: &str,
    _all_subsets: bool,
    check: Option<&str>,
    h: Option<&str>,
    max_rank: usize,
    force: bool,
) -> Result<Outcome, Error> {
    let check = check.unwrap_or("default");
    let systems: Vec<SimpleType> = if system == "all" {
        SWEEP_TYPES
            .iter()
            .map(|s| s.parse().unwrap())
            .filter(|t: &SimpleType| t.rank <= max_rank)
            .collect()
    } else {
        vec![parse_system(system)?]
    };
    for t in &systems {
        if t.rank > max_rank && !force {
            return Err(Error::Parse(format!(
                "rank {} exceeds the sweep guard {max_rank}; pass --force to override",
                t.rank
            )));
        }
    }

    let mut text = String::new();
    let mut items = Vec::new();
    let mut pass = true;

    for stype in &systems {
        let rs = RootSystem::new(*stype);
        let base = rs.catalog_base();
        match check {
            "equivalence" => {
                let Some(h_text_arg) = h else {
                    return Err(Error::Parse(
                        "--check equivalence needs --h to fix the space".into(),
                    ));
                };
                let space = space_from_h(&rs, h_text_arg)?;
                let candidates = enumerate_candidates(&space)?;
                let mut integrable_sets = Vec::new();
                let mut recovered = 0usize;
                let mut agree = true;
                for candidate in &candidates {
                    let ok = integrability(candidate).passes();
                    let rec = recover_parabolic(candidate).is_ok();
                    if ok {
                        integrable_sets.push(candidate.n_plus().roots.clone());
                    }
                    if rec {
                        recovered += 1;
                    }
                    agree &= ok == rec;
                }
                pass &= agree;
                let orbits = isotropy_orbit_count(&space, &integrable_sets);
                let _ = writeln!(
                    text,
                    "{stype}: {} candidates, {} integrable ({orbits} isotropy orbits), {recovered} recovered, equivalence {}",
                    candidates.len(),
                    integrable_sets.len(),
                    if agree { "holds" } else { "BROKEN" }
                );
                items.push(json!({
                    "system": stype.to_string(),
                    "candidates": candidates.len(),
                    "integrable": integrable_sets.len(),
                    "isotropy_orbits": orbits,
                    "recovered": recovered,
                    "equivalence": agree,
                }));
            }
            "wolf" => {
                if rs.rank() < 2 {
                    let _ = writeln!(text, "{stype}: wolf construction not applicable (rank 1)");
                    items.push(json!({
                        "system": stype.to_string(),
                        "applicable": false,
                    }));
                    continue;
                }
                let wolf = wolf_twistor(&base)?;
                let fib = flip_fibration(&wolf.grading)?;
                let ok = check_3symmetric(&fib).passes();
                pass &= ok;
                let _ = writeln!(
                    text,
                    "{stype}: A = {}, l^2 = {{gamma}}, j2 3-symmetric: {}",
                    subset_text(&wolf.subset),
                    ok_fail(ok)
                );
                items.push(json!({
                    "system": stype.to_string(),
                    "applicable": true,
                    "A": lj::subset_json(&wolf.subset),
                    "j2_3symmetric": ok,
                }));
            }
            "series" | "fib3" | "fib2" | "default" => {
                let mut matched = 0usize;
                let mut nontrivial: Vec<String> = Vec::new();
                let mut sym_ok = 0usize;
                let total = 1usize << rs.rank();
                for subset in subsets_of(rs.rank()) {
                    let datum = ParabolicDatum::new(&base, subset.clone())?;
                    let mut ok = true;
                    if check == "series" || check == "default" {
                        ok &= check_series_equals_grading(&datum).matches();
                        if ok {
                            matched += 1;
                        }
                    }
                    let grading = grade(&datum);
                    if check == "fib3" || check == "default" {
                        let fib = degree3(&grading);
                        let sym = check_3symmetric(&fib).passes();
                        ok &= sym;
                        if sym {
                            sym_ok += 1;
                        }
                        if !fib.is_trivial() {
                            nontrivial.push(subset_text(&subset));
                        }
                    }
                    if check == "fib2" {
                        let sym = check_symmetric(&degree2(&grading)).passes();
                        ok &= sym;
                        if sym {
                            sym_ok += 1;
                        }
                    }
                    pass &= ok;
                }
                match check {
                    "series" => {
                        let _ = writeln!(
                            text,
                            "{stype}: series vs grading {matched}/{total} match"
                        );
                        items.push(json!({
                            "system": stype.to_string(),
                            "subsets": total,
                            "series_matches": matched,
                        }));
                    }
                    "fib3" => {
                        let _ = writeln!(
                            text,
                            "{stype}: {total} subsets, {} trivial, nontrivial at A ∈ [{}]; check3sym {sym_ok}/{total}",
                            total - nontrivial.len(),
                            nontrivial.join(", ")
                        );
                        items.push(json!({
                            "system": stype.to_string(),
                            "subsets": total,
                            "trivial": total - nontrivial.len(),
                            "nontrivial": nontrivial,
                            "check3sym_pass": sym_ok,
                        }));
                    }
                    "fib2" => {
                        let _ = writeln!(text, "{stype}: check-symmetric {sym_ok}/{total}");
                        items.push(json!({
                            "system": stype.to_string(),
                            "subsets": total,
                            "symmetric_pass": sym_ok,
                        }));
                    }
                    _ => {
                        let _ = writeln!(
                            text,
                            "{stype}: {total} subsets, series {matched}/{total}, check3sym {sym_ok}/{total}"
                        );
                        items.push(json!({
                            "system": stype.to_string(),
                            "subsets": total,
                            "series_matches": matched,
                            "check3sym_pass": sym_ok,
                        }));
                    }
                }
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown check `{other}` (series, fib3, fib2, wolf, equivalence)"
                )));
            }
        }
    }
    let _ = writeln!(text, "sweep: {}", if pass { "all checks pass" } else { "FAILURES" });
    let json = json!({
        "check": check,
        "items": items,
        "pass": pass,
    });
    Ok(Outcome::with_finding(text, json, !pass))
}
