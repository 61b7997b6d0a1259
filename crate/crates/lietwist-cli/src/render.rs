//! Paper-style text rendering: ⊕-lists in bracket notation, real root
//! spaces as [[...]], Cartan summands as `kR`.

use std::collections::BTreeSet;

use lietwist::parabolic::GradedDecomposition;
use lietwist::rootsys::RootId;
use lietwist::{Base, Rat, RootSystem, WeightSpaceSet};

/// `[a] ⊕ [b] ⊕ ...` in the given order, or `{0}` when empty.
pub fn oplus(rs: &RootSystem, ids: impl IntoIterator<Item = RootId>) -> String {
    let parts: Vec<String> = ids.into_iter().map(|id| rs.root(id).to_string()).collect();
    if parts.is_empty() {
        "{0}".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

/// Real form: `kR ⊕ [[a]] ⊕ [[b]]` over pair representatives.
pub fn real_oplus(
    rs: &RootSystem,
    cartan_rank: Option<usize>,
    reps: impl IntoIterator<Item = RootId>,
) -> String {
    let mut parts: Vec<String> = Vec::new();
    if let Some(rank) = cartan_rank {
        parts.push(format!("{rank}R"));
    }
    parts.extend(
        reps.into_iter()
            .map(|id| format!("[[{}]]", trim_brackets(&rs.root(id).to_string()))),
    );
    if parts.is_empty() {
        "{0}".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

fn trim_brackets(s: &str) -> &str {
    s.trim_start_matches('[').trim_end_matches(']')
}

/// Representatives of the `±` pairs of a negation-closed set: the
/// base-positive member when a base is given, else the smaller id.
pub fn pair_reps(
    rs: &RootSystem,
    roots: &BTreeSet<RootId>,
    base: Option<&Base<'_>>,
) -> Vec<RootId> {
    roots
        .iter()
        .copied()
        .filter(|&id| match base {
            Some(b) => b.is_positive(id),
            // Lex-larger member: its leading coordinate is positive.
            None => id.0 > rs.neg_id(id).0,
        })
        .collect()
}

/// Roots of one mod-class of a grading in the level order used by the
/// worked examples: by |level|, positive level first, id order inside.
pub fn level_ordered(
    grading: &GradedDecomposition<'_, Rat>,
    roots: &BTreeSet<RootId>,
) -> Vec<RootId> {
    let mut ids: Vec<RootId> = roots.iter().copied().collect();
    ids.sort_by_key(|&id| {
        let l = grading.level(id);
        (l.abs(), l < 0, id)
    });
    ids
}

/// Pair representatives of a negation-closed set ordered by |level|.
pub fn level_ordered_reps(
    grading: &GradedDecomposition<'_, Rat>,
    roots: &BTreeSet<RootId>,
) -> Vec<RootId> {
    let ids: BTreeSet<RootId> = roots
        .iter()
        .copied()
        .filter(|&id| grading.level(id) > 0 || (grading.level(id) == 0 && grading.datum().base().is_positive(id)))
        .collect();
    let mut ids: Vec<RootId> = ids.into_iter().collect();
    ids.sort_by_key(|&id| (grading.level(id).abs(), id));
    ids
}

/// `{1,3}` with 1-based indices.
pub fn subset_text(subset: &BTreeSet<usize>) -> String {
    let inner: Vec<String> = subset.iter().map(|&i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A weight-space set for a space without a distinguished base.
pub fn h_text(rs: &RootSystem, h: &WeightSpaceSet<'_>) -> String {
    let reps = pair_reps(rs, &h.roots, None);
    real_oplus(
        rs,
        h.includes_cartan.then_some(rs.rank()),
        reps,
    )
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn ok_fail(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}
