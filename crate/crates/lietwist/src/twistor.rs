//! Twistor machinery for equal-rank homogeneous spaces: candidate invariant
//! almost complex structures `n⁺` on `m`, the integrability conditions
//!
//! ```text
//! [n⁺,n⁺]^m ⊂ n⁺        [[n⁺,n⁺]^h, n⁺] ⊂ n⁺
//! ```
//!
//! and the recovery of a parabolic from an integrable candidate:
//! `l⁺ = [n⁺,n⁺]^h ⊕ n⁺` must be the nilradical of a parabolic, which is
//! decided by exact positivity. Recovery failures are attributed to the
//! clause that breaks: isotropy, closedness, positivity, or the final
//! level-set comparison.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::fibration::{bracket_set, degree3, project, WeightSpaceSet};
use crate::parabolic::{grade, GradedDecomposition, ParabolicDatum};
use crate::rootsys::{
    dynkin_type, find_positive_system, indecomposables, Base, PositivityFailure, RootId,
    RootSystem, SimpleType,
};
use crate::scalar::Rational;
use crate::Error;

/// A reductive homogeneous space `G/H` with `rank H = rank G`, described by
/// the root data of `h`; `m` is the complementary root set.
pub struct EqualRankSpace<'a, R: Rational> {
    rs: &'a RootSystem<R>,
    h: WeightSpaceSet<'a, R>,
    m_roots: BTreeSet<RootId>,
}

impl<'a, R: Rational> EqualRankSpace<'a, R> {
    /// Requires the Cartan inside `h` (the equal-rank hypothesis), negation
    /// closure, and `[h,h] ⊆ h`.
    pub fn new(rs: &'a RootSystem<R>, h: WeightSpaceSet<'a, R>) -> Result<Self, Error> {
        if !h.rs().same_system(rs) {
            return Err(Error::MismatchedSystems);
        }
        if !h.includes_cartan {
            return Err(Error::NotEqualRank);
        }
        if !h.is_negation_closed() {
            return Err(Error::NotSubalgebra(
                "h is not stable under conjugation".into(),
            ));
        }
        let closure = bracket_set(&h, &h)?;
        if !closure.contained_in(&h) {
            let witness = closure
                .roots
                .difference(&h.roots)
                .next()
                .map(|&id| rs.root(id).to_string())
                .unwrap_or_default();
            return Err(Error::NotSubalgebra(format!(
                "[h,h] escapes h at {witness}"
            )));
        }
        let m_roots = rs.ids().filter(|id| !h.roots.contains(id)).collect();
        Ok(EqualRankSpace { rs, h, m_roots })
    }

    pub fn rs(&self) -> &'a RootSystem<R> {
        self.rs
    }

    pub fn h(&self) -> &WeightSpaceSet<'a, R> {
        &self.h
    }

    pub fn m_roots(&self) -> &BTreeSet<RootId> {
        &self.m_roots
    }

    pub fn m_set(&self) -> WeightSpaceSet<'a, R> {
        WeightSpaceSet::new(self.rs, false, self.m_roots.clone())
    }

    /// The partition `{h, m}` used by all projections.
    pub fn partition(&self) -> [WeightSpaceSet<'a, R>; 2] {
        [self.h.clone(), self.m_set()]
    }
}

impl<R: Rational> std::fmt::Debug for EqualRankSpace<'_, R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "EqualRankSpace({}, |h|={}, |m|={})",
            self.rs.stype(),
            self.h.roots.len(),
            self.m_roots.len()
        )
    }
}

/// A torus-stable maximal isotropic subset of `m`, encoding an invariant
/// almost complex structure on the tangent space.
pub struct TwistorCandidate<'a, R: Rational> {
    space: &'a EqualRankSpace<'a, R>,
    n_plus: WeightSpaceSet<'a, R>,
}

impl<'a, R: Rational> TwistorCandidate<'a, R> {
    pub fn new(
        space: &'a EqualRankSpace<'a, R>,
        n_plus_roots: BTreeSet<RootId>,
    ) -> Result<Self, Error> {
        let rs = space.rs;
        if !n_plus_roots.is_subset(&space.m_roots) {
            return Err(Error::InvalidCandidate("n⁺ must lie inside m".into()));
        }
        let n_plus = WeightSpaceSet::new(rs, false, n_plus_roots);
        if !n_plus.is_isotropic() {
            return Err(Error::InvalidCandidate(
                "n⁺ meets its own conjugate".into(),
            ));
        }
        if 2 * n_plus.roots.len() != space.m_roots.len() {
            return Err(Error::InvalidCandidate(format!(
                "n⁺ has {} roots, expected {}",
                n_plus.roots.len(),
                space.m_roots.len() / 2
            )));
        }
        Ok(TwistorCandidate { space, n_plus })
    }

    pub fn space(&self) -> &'a EqualRankSpace<'a, R> {
        self.space
    }

    pub fn n_plus(&self) -> &WeightSpaceSet<'a, R> {
        &self.n_plus
    }
}

impl<R: Rational> std::fmt::Debug for TwistorCandidate<'_, R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TwistorCandidate({:?})", self.n_plus)
    }
}

/// The candidate cut out by a base: `n⁺ = m ∩ R⁺(B')`.
pub fn nplus_from_base<'a, R: Rational>(
    space: &'a EqualRankSpace<'a, R>,
    base: &Base<'_, R>,
) -> TwistorCandidate<'a, R> {
    let roots = space
        .m_roots
        .iter()
        .copied()
        .filter(|id| base.is_positive(*id))
        .collect();
    TwistorCandidate::new(space, roots).expect("positives of a base are maximal isotropic on m")
}

/// The two integrability inclusions with witnesses.
#[derive(Debug)]
pub struct IntegrabilityReport {
    /// Roots of `[n⁺,n⁺]^m` outside `n⁺`.
    pub torsion_witnesses: Vec<RootId>,
    /// Roots of `[[n⁺,n⁺]^h, n⁺]` outside `n⁺`.
    pub curvature_witnesses: Vec<RootId>,
}

impl IntegrabilityReport {
    pub fn torsion_ok(&self) -> bool {
        self.torsion_witnesses.is_empty()
    }

    pub fn curvature_ok(&self) -> bool {
        self.curvature_witnesses.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.torsion_ok() && self.curvature_ok()
    }
}

/// Evaluate both integrability inclusions over the partition `{h, m}`.
pub fn integrability<R: Rational>(candidate: &TwistorCandidate<'_, R>) -> IntegrabilityReport {
    let space = candidate.space;
    let partition = space.partition();
    let bracket = bracket_set(&candidate.n_plus, &candidate.n_plus).expect("same system");
    let on_m = project(&bracket, 1, &partition).expect("partition is valid");
    let torsion_witnesses = on_m
        .roots
        .difference(&candidate.n_plus.roots)
        .copied()
        .collect();
    let on_h = project(&bracket, 0, &partition).expect("partition is valid");
    let second = bracket_set(&on_h, &candidate.n_plus).expect("same system");
    let curvature_witnesses = second
        .roots
        .difference(&candidate.n_plus.roots)
        .copied()
        .collect();
    IntegrabilityReport {
        torsion_witnesses,
        curvature_witnesses,
    }
}

/// Why parabolic recovery failed; the clauses mirror the order in which the
/// nilradical construction breaks down.
#[derive(Debug, Error)]
pub enum RecoveryFailure {
    #[error("l⁺ = [n⁺,n⁺]^h ⊕ n⁺ is not isotropic: contains ±{0}")]
    NotIsotropic(String),
    #[error("l⁺ is not closed: {a} + {b} = {sum} escapes")]
    NotClosed { a: String, b: String, sum: String },
    #[error("no positive system contains l⁺")]
    NoPositiveSystem,
    #[error("l⁺ is not the full positive-level set of the recovered parabolic")]
    LevelSetMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },
}

/// A parabolic recovered from an integrable candidate.
pub struct RecoveredParabolic<'a, R: Rational> {
    pub l_plus: WeightSpaceSet<'a, R>,
    pub h_part: WeightSpaceSet<'a, R>,
    pub base: Base<'a, R>,
    /// 0-based positions into the recovered base.
    pub subset: BTreeSet<usize>,
}

impl<'a, R: Rational> RecoveredParabolic<'a, R> {
    pub fn datum(&self) -> ParabolicDatum<'_, R> {
        ParabolicDatum::new(&self.base, self.subset.clone()).expect("subset validated")
    }

    pub fn grading(&self) -> GradedDecomposition<'_, R> {
        grade(&self.datum())
    }
}

/// Build `l⁺ = [n⁺,n⁺]^h ∪ n⁺`, check it is the nilradical of a parabolic,
/// and read off the base and subset. Success coincides with integrability.
pub fn recover_parabolic<'a, R: Rational>(
    candidate: &TwistorCandidate<'a, R>,
) -> Result<RecoveredParabolic<'a, R>, RecoveryFailure> {
    let space = candidate.space;
    let rs = space.rs;
    let partition = space.partition();
    let bracket = bracket_set(&candidate.n_plus, &candidate.n_plus).expect("same system");
    let h_part = project(&bracket, 0, &partition).expect("partition is valid");
    let mut s: BTreeSet<RootId> = candidate.n_plus.roots.clone();
    s.extend(&h_part.roots);

    let base = match find_positive_system(rs, &s) {
        Ok(base) => base,
        Err(PositivityFailure::NotIsotropic(w)) => {
            return Err(RecoveryFailure::NotIsotropic(w));
        }
        Err(PositivityFailure::NotClosed { a, b, sum }) => {
            return Err(RecoveryFailure::NotClosed { a, b, sum });
        }
        Err(PositivityFailure::Infeasible) => return Err(RecoveryFailure::NoPositiveSystem),
    };

    let subset: BTreeSet<usize> = base
        .simple_ids()
        .iter()
        .enumerate()
        .filter(|(_, id)| s.contains(id))
        .map(|(i, _)| i)
        .collect();
    let datum = ParabolicDatum::new(&base, subset.clone()).expect("indices in range");
    let grading = grade(&datum);
    let level_positive = grading.nilradical();
    if level_positive != s {
        return Err(RecoveryFailure::LevelSetMismatch {
            missing: level_positive
                .difference(&s)
                .map(|&id| rs.root(id).to_string())
                .collect(),
            extra: s
                .difference(&level_positive)
                .map(|&id| rs.root(id).to_string())
                .collect(),
        });
    }
    drop(grading);
    drop(datum);
    Ok(RecoveredParabolic {
        l_plus: WeightSpaceSet::new(rs, false, s),
        h_part,
        base,
        subset,
    })
}

/// Root-level evidence for the fibre `H/K` of a recovered twistor fibration.
#[derive(Debug)]
pub struct FibreInfo {
    /// Positive half of the fibre root set, `[n⁺,n⁺]^h`.
    pub positive: BTreeSet<RootId>,
    /// Full fibre root set, closed under negation.
    pub roots: BTreeSet<RootId>,
    /// Real dimension `2·|positive|`.
    pub dim: usize,
    /// `Some(k)` when the fibre matches the complex projective pattern CP(k).
    pub cp_pattern: Option<usize>,
    /// Dynkin components of the semisimple part of `h`.
    pub h_components: Vec<SimpleType>,
    /// Dynkin components of the semisimple part of `k = h ⊖ fibre`.
    pub k_components: Vec<SimpleType>,
}

/// Match a positive fibre root set against the nilradical shape of a complex
/// projective space. Two shapes occur: the `SU(k+1)/U(k)` pattern where all
/// pairings `(α/β)` equal 1, and the symplectic realization of an odd
/// projective space with a distinguished long root pairing to 2 against the
/// rest. Both have `k = |set|`.
pub fn cp_pattern<R: Rational>(
    rs: &RootSystem<R>,
    positive: &BTreeSet<RootId>,
) -> Option<usize> {
    let p = positive.len();
    if p == 0 {
        return None;
    }
    if p == 1 {
        return Some(1);
    }
    let ids: Vec<RootId> = positive.iter().copied().collect();
    let su_like = ids.iter().all(|&a| {
        ids.iter()
            .all(|&b| a == b || rs.pairing_ids(a, b) == 1)
    });
    if su_like {
        return Some(p);
    }
    // Symplectic shape: 2e₁ together with e₁±e_i.
    'tops: for &top in &ids {
        let rest: Vec<RootId> = ids.iter().copied().filter(|&x| x != top).collect();
        for &a in &rest {
            if rs.pairing_ids(a, top) != 1 || rs.pairing_ids(top, a) != 2 {
                continue 'tops;
            }
        }
        if rest.len() % 2 != 0 {
            continue;
        }
        for &a in &rest {
            let zeros = rest
                .iter()
                .filter(|&&b| b != a && rs.pairing_ids(a, b) == 0)
                .count();
            let ones = rest
                .iter()
                .filter(|&&b| b != a && rs.pairing_ids(a, b) == 1)
                .count();
            if zeros != 1 || ones != rest.len() - 2 {
                continue 'tops;
            }
        }
        return Some(p);
    }
    None
}

fn semisimple_components<R: Rational>(
    rs: &RootSystem<R>,
    roots: &BTreeSet<RootId>,
    base: &Base<'_, R>,
) -> Vec<SimpleType> {
    let positives: BTreeSet<RootId> = roots
        .iter()
        .copied()
        .filter(|&id| base.is_positive(id))
        .collect();
    if positives.is_empty() {
        return Vec::new();
    }
    let simple = indecomposables(rs, &positives);
    let vectors: Vec<_> = simple.iter().map(|&id| rs.root(id).clone()).collect();
    dynkin_type(rs, &vectors).expect("closed subsystem has an admissible simple system")
}

/// Describe the fibre of the recovered fibration: `h = k ⊕ [[fibre]]` with
/// fibre dimension `2·|[n⁺,n⁺]^h|`, matched against the projective pattern.
pub fn fibre_info<R: Rational>(
    space: &EqualRankSpace<'_, R>,
    h_part: &WeightSpaceSet<'_, R>,
    base: &Base<'_, R>,
) -> FibreInfo {
    let rs = space.rs;
    let positive = h_part.roots.clone();
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|&id| rs.neg_id(id)));
    let k_roots: BTreeSet<RootId> = space
        .h
        .roots
        .difference(&roots)
        .copied()
        .collect();
    FibreInfo {
        dim: 2 * positive.len(),
        cp_pattern: cp_pattern(rs, &positive),
        h_components: semisimple_components(rs, &space.h.roots, base),
        k_components: semisimple_components(rs, &k_roots, base),
        positive,
        roots,
    }
}

/// Comparison of a recovered parabolic against a 3-symmetric structure `m⁺`.
#[derive(Debug)]
pub struct CompatibilityReport {
    /// `g¹ ⊆ m⁺` for the recovered grading.
    pub g1_contained: bool,
    /// The equivalent criterion: every `β ∈ A` lies in `m⁺`.
    pub simple_contained: bool,
    /// Roots of `g¹` escaping `m⁺`.
    pub witnesses: Vec<RootId>,
    /// When compatible: does regrouping the recovered grading mod 3
    /// reproduce `(h, m⁺, m⁻)`?
    pub refibration_agrees: Option<bool>,
}

impl CompatibilityReport {
    pub fn compatible(&self) -> bool {
        self.g1_contained
    }
}

/// Test whether the recovered fibration is the degree-3 fibration for the
/// 3-symmetric structure `m⁺`: `g¹ ⊆ m⁺`, together with the equivalent
/// criterion on the simple roots of `A`. The two answers must agree.
pub fn is_degree3_compatible<R: Rational>(
    space: &EqualRankSpace<'_, R>,
    recovered: &RecoveredParabolic<'_, R>,
    m_plus: &WeightSpaceSet<'_, R>,
) -> CompatibilityReport {
    let grading = recovered.grading();
    let g1 = grading.level_set(1);
    let witnesses: Vec<RootId> = g1
        .iter()
        .copied()
        .filter(|id| !m_plus.roots.contains(id))
        .collect();
    let g1_contained = witnesses.is_empty();
    let simple_contained = recovered
        .subset
        .iter()
        .all(|&i| m_plus.roots.contains(&recovered.base.simple_ids()[i]));
    assert_eq!(
        g1_contained, simple_contained,
        "the two degree-3 criteria must agree"
    );
    let refibration_agrees = g1_contained.then(|| {
        let fib = degree3(&grading);
        fib.h.roots == space.h.roots && fib.m_plus.roots == m_plus.roots
    });
    CompatibilityReport {
        g1_contained,
        simple_contained,
        witnesses,
        refibration_agrees,
    }
}

/// Number of orbits of the given candidate root sets under the reflections
/// in the roots of `h` (the isotropy Weyl group acting on torus-stable
/// structures). Distinct twistor spaces correspond to orbits, not to single
/// candidates.
pub fn isotropy_orbit_count<R: Rational>(
    space: &EqualRankSpace<'_, R>,
    sets: &[BTreeSet<RootId>],
) -> usize {
    let rs = space.rs;
    let mirrors: Vec<RootId> = space.h.roots.iter().copied().collect();
    let index: std::collections::HashMap<BTreeSet<RootId>, usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let mut seen = vec![false; sets.len()];
    let mut orbits = 0;
    for start in 0..sets.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for &mirror in &mirrors {
                let image: BTreeSet<RootId> =
                    sets[i].iter().map(|&id| rs.reflect(id, mirror)).collect();
                if let Some(&j) = index.get(&image) {
                    if !seen[j] {
                        seen[j] = true;
                        queue.push(j);
                    }
                }
            }
        }
    }
    orbits
}

/// All torus-stable candidates: one sign choice per opposite pair of roots
/// in `m`, ordered by pair representative id. Guarded to 16 pairs.
pub fn enumerate_candidates<'a, R: Rational>(
    space: &'a EqualRankSpace<'a, R>,
) -> Result<Vec<TwistorCandidate<'a, R>>, Error> {
    let rs = space.rs;
    let pairs: Vec<RootId> = rs
        .pair_representatives()
        .into_iter()
        .filter(|id| space.m_roots.contains(id))
        .collect();
    if pairs.len() > 16 {
        return Err(Error::TooManyCandidates {
            count: 1usize << pairs.len().min(63),
        });
    }
    let mut out = Vec::with_capacity(1 << pairs.len());
    for mask in 0u32..(1 << pairs.len()) {
        let roots: BTreeSet<RootId> = pairs
            .iter()
            .enumerate()
            .map(|(k, &rep)| {
                if mask & (1 << k) == 0 {
                    rep
                } else {
                    rs.neg_id(rep)
                }
            })
            .collect();
        out.push(TwistorCandidate::new(space, roots).expect("by construction"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::validate_base;
    use crate::vector::parse_vector_list;
    use num_rational::BigRational;

    type Rs = RootSystem<BigRational>;

    fn system(name: &str) -> Rs {
        Rs::new(name.parse().unwrap())
    }

    fn ids(rs: &Rs, roots: &[&str]) -> BTreeSet<RootId> {
        roots
            .iter()
            .map(|r| rs.id_of(&r.parse().unwrap()).unwrap())
            .collect()
    }

    /// h = Cartan ∪ ±(listed roots), negation-closed.
    fn space<'a>(rs: &'a Rs, h_reps: &[&str]) -> EqualRankSpace<'a, BigRational> {
        let mut roots = ids(rs, h_reps);
        roots.extend(roots.clone().iter().map(|&id| rs.neg_id(id)));
        EqualRankSpace::new(rs, WeightSpaceSet::new(rs, true, roots)).unwrap()
    }

    #[test]
    fn space_validation() {
        let rs = system("A3");
        // Missing Cartan: rejected.
        let no_cartan = WeightSpaceSet::new(&rs, false, BTreeSet::new());
        assert!(matches!(
            EqualRankSpace::new(&rs, no_cartan),
            Err(Error::NotEqualRank)
        ));
        // Not negation-closed: rejected.
        let half = WeightSpaceSet::new(&rs, true, ids(&rs, &["[0,1,-1,0]"]));
        assert!(EqualRankSpace::new(&rs, half).is_err());
        // Not a subalgebra: rejected.
        let open = WeightSpaceSet::new(
            &rs,
            true,
            ids(&rs, &["[1,-1,0,0]", "[-1,1,0,0]", "[0,1,-1,0]", "[0,-1,1,0]"]),
        );
        assert!(matches!(
            EqualRankSpace::new(&rs, open),
            Err(Error::NotSubalgebra(_))
        ));
    }

    #[test]
    fn nplus_from_base_examples() {
        let rs = system("A3");
        let sp = space(&rs, &["[0,1,-1,0]"]);
        let b2 = validate_base(
            &rs,
            &parse_vector_list("[-1,0,1,0],[0,0,-1,1],[0,1,0,-1]").unwrap(),
        )
        .unwrap();
        let candidate = nplus_from_base(&sp, &b2);
        assert_eq!(
            candidate.n_plus().roots,
            ids(
                &rs,
                &["[-1,0,0,1]", "[-1,0,1,0]", "[-1,1,0,0]", "[0,1,0,-1]", "[0,0,-1,1]"]
            )
        );

        // h = Cartan only: n⁺ is the full positive system.
        let torus = space(&rs, &[]);
        let candidate = nplus_from_base(&torus, &b2);
        assert_eq!(candidate.n_plus().roots, *b2.positive_ids());

        // Idempotence: a base whose positives contain n⁺ returns it.
        let again = nplus_from_base(&sp, &b2);
        assert_eq!(again.n_plus().roots, candidate.n_plus().roots.clone()
            .difference(&ids(&rs, &["[0,1,-1,0]"])).copied().collect::<BTreeSet<_>>());
    }

    #[test]
    fn sp3_candidate_is_integrable() {
        let rs = system("C3");
        let sp = space(&rs, &["[0,1,-1]", "[0,1,1]", "[0,2,0]", "[0,0,2]"]);
        let n_plus = ids(&rs, &["[2,0,0]", "[-1,1,0]", "[1,0,-1]", "[1,1,0]", "[1,0,1]"]);
        let candidate = TwistorCandidate::new(&sp, n_plus).unwrap();
        let report = integrability(&candidate);
        assert!(report.passes(), "{report:?}");

        let recovered = recover_parabolic(&candidate).unwrap();
        assert_eq!(
            recovered.h_part.roots,
            ids(&rs, &["[0,2,0]", "[0,1,-1]", "[0,1,1]"])
        );
        let info = fibre_info(&sp, &recovered.h_part, &recovered.base);
        assert_eq!(info.dim, 6);
        assert_eq!(info.cp_pattern, Some(3));
    }

    #[test]
    fn su4_counterexample_recovery_and_compatibility() {
        let rs = system("A3");
        let sp = space(&rs, &["[0,1,-1,0]"]);
        let b2 = validate_base(
            &rs,
            &parse_vector_list("[-1,0,1,0],[0,0,-1,1],[0,1,0,-1]").unwrap(),
        )
        .unwrap();
        let candidate = nplus_from_base(&sp, &b2);
        assert!(integrability(&candidate).passes());
        let recovered = recover_parabolic(&candidate).unwrap();
        // l⁺ is the whole positive system of B'' and A is everything.
        assert_eq!(recovered.l_plus.roots, *b2.positive_ids());
        assert_eq!(recovered.subset, BTreeSet::from([0, 1, 2]));
        // Fibre: one pair of roots, a CP(1).
        let info = fibre_info(&sp, &recovered.h_part, &recovered.base);
        assert_eq!(info.dim, 2);
        assert_eq!(info.cp_pattern, Some(1));

        // The 3-symmetric structure of the space (from the wolf-type flip).
        let m_plus = WeightSpaceSet::new(
            &rs,
            false,
            ids(
                &rs,
                &["[1,-1,0,0]", "[0,1,-1,0]", "[0,1,0,-1]", "[-1,0,0,1]", "[-1,0,1,0]"],
            ),
        );
        let report = is_degree3_compatible(&sp, &recovered, &m_plus);
        assert!(!report.compatible());
        let m_minus = m_plus.conjugate();
        let report = is_degree3_compatible(&sp, &recovered, &m_minus);
        assert!(!report.compatible());
    }

    #[test]
    fn candidate_enumeration_counts() {
        let g2 = system("G2");
        let sp = space(&g2, &["[-3,1*r3]", "[0,2*r3]", "[3,1*r3]"]);
        assert_eq!(enumerate_candidates(&sp).unwrap().len(), 8);

        let a2 = system("A2");
        let torus = space(&a2, &[]);
        assert_eq!(enumerate_candidates(&torus).unwrap().len(), 8);

        let c3 = system("C3");
        let sp = space(&c3, &["[0,1,-1]", "[0,1,1]", "[0,2,0]", "[0,0,2]"]);
        assert_eq!(enumerate_candidates(&sp).unwrap().len(), 32);
    }

    #[test]
    fn equivalence_on_small_spaces() {
        // Integrability passes iff parabolic recovery succeeds.
        let a2 = system("A2");
        let torus = space(&a2, &[]);
        let mut integrable = 0;
        for candidate in enumerate_candidates(&torus).unwrap() {
            let ok = integrability(&candidate).passes();
            let rec = recover_parabolic(&candidate);
            assert_eq!(ok, rec.is_ok(), "equivalence failed for {candidate:?}");
            if ok {
                integrable += 1;
            }
        }
        // The integrable candidates are exactly the Weyl chambers.
        assert_eq!(integrable, 6);
    }

    #[test]
    fn cp_pattern_shapes() {
        let g2 = system("G2");
        assert_eq!(cp_pattern(&g2, &ids(&g2, &["[3,1*r3]", "[0,2*r3]"])), Some(2));
        assert_eq!(cp_pattern(&g2, &ids(&g2, &["[2,0]"])), Some(1));
        assert_eq!(cp_pattern(&g2, &BTreeSet::new()), None);
        // Two orthogonal roots are not a projective pattern.
        let a3 = system("A3");
        assert_eq!(
            cp_pattern(&a3, &ids(&a3, &["[1,-1,0,0]", "[0,0,1,-1]"])),
            None
        );
    }

    #[test]
    fn canonical_nplus_of_degree3_recovers_parabolic() {
        use crate::fibration::degree3;
        use crate::parabolic::{grade, ParabolicDatum};
        // n⁺ = p ∩ m: positive levels ≡ 1,2 mod 3.
        let g2 = system("G2");
        let base = validate_base(&g2, &parse_vector_list("[-3,1*r3],[2,0]").unwrap()).unwrap();
        let datum = ParabolicDatum::new(&base, BTreeSet::from([1])).unwrap();
        let grading = grade(&datum);
        let fib = degree3(&grading);
        let sp = EqualRankSpace::new(&g2, fib.h.clone()).unwrap();
        let n_plus: BTreeSet<RootId> = grading
            .nilradical()
            .into_iter()
            .filter(|&id| grading.level(id) % 3 != 0)
            .collect();
        let candidate = TwistorCandidate::new(&sp, n_plus).unwrap();
        assert!(integrability(&candidate).passes());
        let recovered = recover_parabolic(&candidate).unwrap();
        assert_eq!(recovered.l_plus.roots, grading.nilradical());
        // [n⁺,n⁺]^h is the positive multiple-of-3 levels.
        let expected: BTreeSet<RootId> = grading
            .nilradical()
            .into_iter()
            .filter(|&id| grading.level(id) % 3 == 0)
            .collect();
        assert_eq!(recovered.h_part.roots, expected);
        // g¹ ⊆ n⁺ always holds for a recovered parabolic.
        let g1 = recovered.grading().level_set(1);
        assert!(g1.is_subset(&candidate.n_plus().roots));
    }
}
