//! Parabolic data `(B, A)`, the integer level grading `n_A`, the canonical
//! series of the nilradical, and the canonical element.
//!
//! A subset `A` of the simple roots grades the whole root set by
//! `level(α) = Σ_{β∈A} n_β(α)`. Level 0 together with the Cartan subalgebra
//! indexes the reductive part `k_A`, the positive levels index the nilradical
//! `l⁺_A`, and level sets `g^r` refine it. Brackets at the weight-space level
//! use the exactness rule `[g_α, g_β] = g_{α+β}` iff `α+β` is a root, which
//! keeps every inclusion test exact without structure constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rootsys::{Base, RootId, RootSystem};
use crate::scalar::{Rational, Sqrt3};
use crate::vector::Vector;
use crate::Error;

/// A base together with a subset of its simple roots, written `p_A` with
/// 1-based indices in examples (`p_12` = first two simple roots).
#[derive(Clone)]
pub struct ParabolicDatum<'a, R: Rational> {
    base: &'a Base<'a, R>,
    subset: BTreeSet<usize>,
}

impl<'a, R: Rational> ParabolicDatum<'a, R> {
    /// `subset` holds 0-based positions into the base's simple roots.
    pub fn new(base: &'a Base<'a, R>, subset: BTreeSet<usize>) -> Result<Self, Error> {
        if let Some(&bad) = subset.iter().find(|&&i| i >= base.simple_ids().len()) {
            return Err(Error::SubsetIndex {
                index: bad + 1,
                rank: base.simple_ids().len(),
            });
        }
        Ok(ParabolicDatum { base, subset })
    }

    pub fn base(&self) -> &'a Base<'a, R> {
        self.base
    }

    pub fn rs(&self) -> &'a RootSystem<R> {
        self.base.rs()
    }

    pub fn subset(&self) -> &BTreeSet<usize> {
        &self.subset
    }

    /// Ids of the simple roots selected by `A`.
    pub fn subset_ids(&self) -> BTreeSet<RootId> {
        self.subset
            .iter()
            .map(|&i| self.base.simple_ids()[i])
            .collect()
    }
}

impl<R: Rational> fmt::Debug for ParabolicDatum<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p_{{")?;
        for (k, i) in self.subset.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// The level map `α ↦ n_A(α)` and its level sets `g^r`.
pub struct GradedDecomposition<'a, R: Rational> {
    datum: ParabolicDatum<'a, R>,
    level: Vec<i64>,
    level_sets: BTreeMap<i64, BTreeSet<RootId>>,
    max_level: i64,
}

impl<'a, R: Rational> GradedDecomposition<'a, R> {
    pub fn datum(&self) -> &ParabolicDatum<'a, R> {
        &self.datum
    }

    pub fn rs(&self) -> &'a RootSystem<R> {
        self.datum.rs()
    }

    pub fn level(&self, id: RootId) -> i64 {
        self.level[id.0]
    }

    pub fn level_sets(&self) -> &BTreeMap<i64, BTreeSet<RootId>> {
        &self.level_sets
    }

    /// Index set of `g^r` (empty set if the level does not occur).
    pub fn level_set(&self, r: i64) -> BTreeSet<RootId> {
        self.level_sets.get(&r).cloned().unwrap_or_default()
    }

    /// All roots with level `≥ r`.
    pub fn at_least(&self, r: i64) -> BTreeSet<RootId> {
        self.level_sets
            .range(r..)
            .flat_map(|(_, s)| s.iter().copied())
            .collect()
    }

    pub fn max_level(&self) -> i64 {
        self.max_level
    }

    /// Index set of the nilradical `l⁺`: all positive levels.
    pub fn nilradical(&self) -> BTreeSet<RootId> {
        self.at_least(1)
    }
}

impl<R: Rational> fmt::Debug for GradedDecomposition<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedDecomposition({:?}, max level {})",
            self.datum, self.max_level
        )
    }
}

/// Grade the root set by `n_A`. Additivity of levels over root addition is
/// re-verified on every call.
pub fn grade<'a, R: Rational>(datum: &ParabolicDatum<'a, R>) -> GradedDecomposition<'a, R> {
    let rs = datum.rs();
    let base = datum.base();
    let mut level = Vec::with_capacity(rs.num_roots());
    let mut level_sets: BTreeMap<i64, BTreeSet<RootId>> = BTreeMap::new();
    for id in rs.ids() {
        let l = base.coeffs_of(id).sum_over(&datum.subset);
        level.push(l);
        level_sets.entry(l).or_default().insert(id);
    }
    for a in rs.ids() {
        debug_assert_eq!(level[a.0], -level[rs.neg_id(a).0]);
        for b in rs.ids() {
            if let Some(c) = rs.sum_id(a, b) {
                assert_eq!(
                    level[c.0],
                    level[a.0] + level[b.0],
                    "level additivity violated at {} + {}",
                    rs.root(a),
                    rs.root(b)
                );
            }
        }
    }
    let max_level = level_sets.keys().next_back().copied().unwrap_or(0);
    GradedDecomposition {
        datum: datum.clone(),
        level,
        level_sets,
        max_level,
    }
}

/// The descending bracket-closure series of the nilradical:
/// `l_1 = l⁺`, `l_{i+1} = [l_1, l_i]` at the root level.
pub struct CanonicalSeries {
    sets: Vec<BTreeSet<RootId>>,
}

impl CanonicalSeries {
    /// `l_i` for `i ≥ 1`; empty once the series has terminated.
    pub fn term(&self, i: usize) -> BTreeSet<RootId> {
        assert!(i >= 1);
        self.sets.get(i - 1).cloned().unwrap_or_default()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn terms(&self) -> &[BTreeSet<RootId>] {
        &self.sets
    }
}

/// Compute the first canonical series by iterated root addition. This is
/// independent of the level map and serves as its oracle.
pub fn canonical_series<R: Rational>(datum: &ParabolicDatum<'_, R>) -> CanonicalSeries {
    let rs = datum.rs();
    let base = datum.base();
    let l1: BTreeSet<RootId> = rs
        .ids()
        .filter(|&id| base.coeffs_of(id).sum_over(datum.subset()) > 0)
        .collect();
    let mut sets = Vec::new();
    let mut current = l1.clone();
    while !current.is_empty() {
        sets.push(current.clone());
        let mut next = BTreeSet::new();
        for &a in &l1 {
            for &b in &current {
                if let Some(c) = rs.sum_id(a, b) {
                    next.insert(c);
                }
            }
        }
        if next == current {
            // Cannot happen for a nilpotent algebra; avoid looping if it does.
            panic!("canonical series failed to terminate");
        }
        current = next;
    }
    CanonicalSeries { sets }
}

/// Result of comparing the bracket-closure series against the level sets.
#[derive(Debug)]
pub struct SeriesGradingReport {
    pub mismatches: Vec<SeriesMismatch>,
    pub steps: usize,
}

#[derive(Debug)]
pub struct SeriesMismatch {
    pub step: usize,
    pub only_in_series: Vec<RootId>,
    pub only_in_grading: Vec<RootId>,
}

impl SeriesGradingReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check `l_i = {α : level(α) ≥ i}` for all `i`. A mismatch is a finding,
/// not an error.
pub fn check_series_equals_grading<R: Rational>(
    datum: &ParabolicDatum<'_, R>,
) -> SeriesGradingReport {
    let grading = grade(datum);
    let series = canonical_series(datum);
    let steps = series.len().max(grading.max_level().max(0) as usize);
    let mut mismatches = Vec::new();
    for i in 1..=steps + 1 {
        let from_series = series.term(i);
        let from_grading = grading.at_least(i as i64);
        if from_series != from_grading {
            mismatches.push(SeriesMismatch {
                step: i,
                only_in_series: from_series.difference(&from_grading).copied().collect(),
                only_in_grading: from_grading.difference(&from_series).copied().collect(),
            });
        }
    }
    SeriesGradingReport { mismatches, steps }
}

/// The canonical element of the parabolic: the unique vector `v` in the span
/// of the base with `⟨v, β⟩ = 1` for `β ∈ A` and `0` for the other simple
/// roots, so that `⟨v, α⟩` recovers `level(α)` for every root.
pub fn canonical_element<R: Rational>(datum: &ParabolicDatum<'_, R>) -> Vector<R> {
    let base = datum.base();
    let rs = datum.rs();
    let k = base.simple_ids().len();
    let rhs: Vec<Sqrt3<R>> = (0..k)
        .map(|i| {
            if datum.subset().contains(&i) {
                Sqrt3::one()
            } else {
                Sqrt3::zero()
            }
        })
        .collect();
    // v = Σ c_j β_j with G c = rhs; c = G⁻¹ rhs.
    let mut v = Vector::zeros(rs.ambient_dim());
    for (j, gram_row) in base.gram_inv().iter().enumerate() {
        let c = gram_row
            .iter()
            .zip(&rhs)
            .fold(Sqrt3::zero(), |acc, (g, r)| acc + g.clone() * r.clone());
        v = v.add(&base.simple_root(j).scale(&c));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::validate_base;
    use crate::vector::parse_vector_list;
    use num_rational::BigRational;

    type Rs = RootSystem<BigRational>;

    fn g2() -> Rs {
        Rs::new("G2".parse().unwrap())
    }

    fn base<'a>(
        rs: &'a Rs,
        spec: &str,
    ) -> Base<'a, BigRational> {
        validate_base(rs, &parse_vector_list(spec).unwrap()).unwrap()
    }

    fn ids(rs: &Rs, roots: &[&str]) -> BTreeSet<RootId> {
        roots
            .iter()
            .map(|r| rs.id_of(&r.parse().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn g2_grading_for_second_simple_root() {
        let rs = g2();
        let base = base(&rs, "[-3,1*r3],[2,0]");
        let datum = ParabolicDatum::new(&base, BTreeSet::from([1])).unwrap();
        let grading = grade(&datum);
        assert_eq!(grading.level_set(1), ids(&rs, &["[-1,1*r3]", "[2,0]"]));
        assert_eq!(grading.level_set(2), ids(&rs, &["[1,1*r3]"]));
        assert_eq!(grading.level_set(3), ids(&rs, &["[0,2*r3]", "[3,1*r3]"]));
        assert_eq!(grading.max_level(), 3);
        // Levels are stored for the negatives as well.
        let neg = rs.id_of(&"[-2,0]".parse().unwrap()).unwrap();
        assert_eq!(grading.level(neg), -1);
    }

    #[test]
    fn a3_grading_for_first_two_simple_roots() {
        let rs = Rs::new("A3".parse().unwrap());
        let base = validate_base(
            &rs,
            &parse_vector_list("[1,-1,0,0],[0,1,-1,0],[0,0,1,-1]").unwrap(),
        )
        .unwrap();
        let datum = ParabolicDatum::new(&base, BTreeSet::from([0, 1])).unwrap();
        let grading = grade(&datum);
        let level1: BTreeSet<RootId> = ["[1,-1,0,0]", "[0,1,-1,0]", "[0,1,0,-1]"]
            .iter()
            .map(|r| rs.id_of(&r.parse().unwrap()).unwrap())
            .collect();
        assert_eq!(grading.level_set(1), level1);
        let level2: BTreeSet<RootId> = ["[1,0,0,-1]", "[1,0,-1,0]"]
            .iter()
            .map(|r| rs.id_of(&r.parse().unwrap()).unwrap())
            .collect();
        assert_eq!(grading.level_set(2), level2);
        assert!(grading.level_set(3).is_empty());
    }

    #[test]
    fn empty_subset_grades_to_zero() {
        let rs = g2();
        let base = base(&rs, "[-3,1*r3],[2,0]");
        let datum = ParabolicDatum::new(&base, BTreeSet::new()).unwrap();
        let grading = grade(&datum);
        assert_eq!(grading.max_level(), 0);
        assert!(grading.nilradical().is_empty());
        let series = canonical_series(&datum);
        assert!(series.is_empty());
    }

    #[test]
    fn series_by_bracket_closure() {
        let rs = g2();
        let base = base(&rs, "[-3,1*r3],[2,0]");
        let datum = ParabolicDatum::new(&base, BTreeSet::from([0, 1])).unwrap();
        let series = canonical_series(&datum);
        assert_eq!(series.term(1).len(), 6);
        assert_eq!(
            series.term(2),
            ids(&rs, &["[-1,1*r3]", "[1,1*r3]", "[3,1*r3]", "[0,2*r3]"])
        );
        assert_eq!(series.len(), 5);
        assert_eq!(series.term(5), ids(&rs, &["[0,2*r3]"]));
        assert!(series.term(6).is_empty());
    }

    #[test]
    fn series_equals_grading_exhaustively() {
        for name in ["A3", "G2"] {
            let rs = Rs::new(name.parse().unwrap());
            let base = rs.catalog_base();
            let rank = rs.rank();
            for mask in 0u32..(1 << rank) {
                let subset: BTreeSet<usize> =
                    (0..rank).filter(|i| mask & (1 << i) != 0).collect();
                let datum = ParabolicDatum::new(&base, subset).unwrap();
                let report = check_series_equals_grading(&datum);
                assert!(report.matches(), "{name} subset mask {mask}: {report:?}");
            }
        }
    }

    #[test]
    fn canonical_element_recovers_levels() {
        let rs = g2();
        let base = base(&rs, "[-3,1*r3],[2,0]");
        for mask in 0u32..4 {
            let subset: BTreeSet<usize> = (0..2).filter(|i| mask & (1 << i) != 0).collect();
            let datum = ParabolicDatum::new(&base, subset).unwrap();
            let grading = grade(&datum);
            let v = canonical_element(&datum);
            for id in rs.ids() {
                assert_eq!(
                    v.dot(rs.root(id)),
                    Sqrt3::from_int(grading.level(id)),
                    "level of {} via canonical element",
                    rs.root(id)
                );
            }
        }

        let rs = Rs::new("A3".parse().unwrap());
        let base = rs.catalog_base();
        let datum = ParabolicDatum::new(&base, BTreeSet::from([0, 2])).unwrap();
        let v = canonical_element(&datum);
        assert_eq!(v.dot(base.highest_root()), Sqrt3::from_int(2));
    }

    #[test]
    fn subset_index_validation() {
        let rs = g2();
        let base = base(&rs, "[-3,1*r3],[2,0]");
        assert!(ParabolicDatum::new(&base, BTreeSet::from([2])).is_err());
    }
}
