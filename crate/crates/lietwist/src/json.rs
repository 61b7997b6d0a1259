//! JSON views of the computed values. Keys are sorted and root lists are in
//! id order, so output is canonical.

use serde_json::{json, Map, Value};

use crate::classify::InnerCase;
use crate::fibration::{Fibration3, SymmetricPair, WeightSpaceSet};
use crate::parabolic::GradedDecomposition;
use crate::rootsys::{Base, RootId, RootSystem, SimpleType};
use crate::scalar::Rational;
use crate::twistor::{FibreInfo, RecoveredParabolic};

pub fn root_texts<R: Rational>(
    rs: &RootSystem<R>,
    ids: impl IntoIterator<Item = RootId>,
) -> Vec<Value> {
    ids.into_iter()
        .map(|id| Value::String(rs.root(id).to_string()))
        .collect()
}

pub fn grading_json<R: Rational>(grading: &GradedDecomposition<'_, R>) -> Value {
    let rs = grading.rs();
    let mut levels = Map::new();
    for id in rs.ids() {
        levels.insert(rs.root(id).to_string(), json!(grading.level(id)));
    }
    json!({
        "levels": levels,
        "max_level": grading.max_level(),
    })
}

pub fn weight_set_json<R: Rational>(set: &WeightSpaceSet<'_, R>) -> Value {
    json!({
        "cartan": set.includes_cartan,
        "roots": root_texts(set.rs(), set.roots.iter().copied()),
    })
}

pub fn fibration3_json<R: Rational>(fib: &Fibration3<'_, R>) -> Value {
    json!({
        "h": weight_set_json(&fib.h),
        "m_plus": root_texts(fib.rs(), fib.m_plus.roots.iter().copied()),
        "m_minus": root_texts(fib.rs(), fib.m_minus.roots.iter().copied()),
        "trivial": fib.is_trivial(),
    })
}

pub fn symmetric_pair_json<R: Rational>(pair: &SymmetricPair<'_, R>) -> Value {
    json!({
        "f": weight_set_json(&pair.f),
        "q": root_texts(pair.q.rs(), pair.q.roots.iter().copied()),
    })
}

pub fn base_json<R: Rational>(base: &Base<'_, R>) -> Value {
    let rs = base.rs();
    json!({
        "simple": root_texts(rs, base.simple_ids().iter().copied()),
        "positive": root_texts(rs, base.positive_ids().iter().copied()),
        "highest": base.highest_root().to_string(),
    })
}

fn components_text(components: &[SimpleType]) -> String {
    if components.is_empty() {
        "trivial".to_string()
    } else {
        components
            .iter()
            .map(SimpleType::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }
}

pub fn pattern_text(pattern: Option<usize>) -> Value {
    match pattern {
        Some(k) => Value::String(format!("CP({k})")),
        None => Value::Null,
    }
}

/// 1-based subset positions, matching the p_134 convention.
pub fn subset_json(subset: &std::collections::BTreeSet<usize>) -> Value {
    Value::Array(subset.iter().map(|&i| json!(i + 1)).collect())
}

pub fn recovery_json<R: Rational>(
    recovered: &RecoveredParabolic<'_, R>,
    fibre: &FibreInfo,
) -> Value {
    let rs = recovered.base.rs();
    json!({
        "l_plus": root_texts(rs, recovered.l_plus.roots.iter().copied()),
        "base": root_texts(rs, recovered.base.simple_ids().iter().copied()),
        "A": subset_json(&recovered.subset),
        "fibre_dim": fibre.dim,
        "fibre_type": pattern_text(fibre.cp_pattern),
        "fibre_roots": root_texts(rs, fibre.positive.iter().copied()),
        "h_components": components_text(&fibre.h_components),
        "k_components": components_text(&fibre.k_components),
    })
}

pub fn inner_case_json<R: Rational>(rs: &RootSystem<R>, case: &InnerCase) -> Value {
    json!({
        "kind": case.kind.as_str(),
        "A": subset_json(&case.subset),
        "h_type": components_text(&case.h_components),
        "h_simple_system": root_texts(rs, case.h_simple.iter().copied()),
        "fibre_dim": case.fibre_dim,
        "fibre_pattern": pattern_text(case.fibre_pattern),
    })
}
