//! Weight-space-set calculus (brackets, projections, conjugation) and the
//! degree-3 / degree-2 fibration constructions with their defining checks.
//!
//! A `WeightSpaceSet` encodes a torus-stable subspace of the complexified
//! algebra as a set of root ids plus a flag for the Cartan subalgebra. The
//! Cartan flag is all-or-nothing: a bracket `[g_α, g_{-α}]` contributes a
//! line of the Cartan, and every containing space tested here carries the
//! full Cartan in the equal-rank setting, so inclusion tests where the right
//! side lacks the Cartan fail conservatively with the opposite-pair witness.

use std::collections::BTreeSet;
use std::fmt;

use crate::parabolic::GradedDecomposition;
use crate::rootsys::{RootId, RootSystem};
use crate::scalar::Rational;
use crate::Error;

/// A torus-stable subspace: a set of root spaces, optionally with the Cartan.
#[derive(Clone)]
pub struct WeightSpaceSet<'a, R: Rational> {
    rs: &'a RootSystem<R>,
    pub includes_cartan: bool,
    pub roots: BTreeSet<RootId>,
}

impl<'a, R: Rational> WeightSpaceSet<'a, R> {
    pub fn new(rs: &'a RootSystem<R>, includes_cartan: bool, roots: BTreeSet<RootId>) -> Self {
        WeightSpaceSet {
            rs,
            includes_cartan,
            roots,
        }
    }

    pub fn empty(rs: &'a RootSystem<R>) -> Self {
        Self::new(rs, false, BTreeSet::new())
    }

    pub fn rs(&self) -> &'a RootSystem<R> {
        self.rs
    }

    /// The conjugate subspace: negated roots, same Cartan flag.
    pub fn conjugate(&self) -> Self {
        WeightSpaceSet {
            rs: self.rs,
            includes_cartan: self.includes_cartan,
            roots: self.roots.iter().map(|&id| self.rs.neg_id(id)).collect(),
        }
    }

    pub fn is_negation_closed(&self) -> bool {
        self.roots.iter().all(|&id| self.roots.contains(&self.rs.neg_id(id)))
    }

    /// No root together with its negative.
    pub fn is_isotropic(&self) -> bool {
        self.roots.iter().all(|&id| !self.roots.contains(&self.rs.neg_id(id)))
    }

    /// Containment with Cartan semantics: the Cartan flag of `self` must be
    /// covered by `other`'s.
    pub fn contained_in(&self, other: &Self) -> bool {
        (!self.includes_cartan || other.includes_cartan)
            && self.roots.is_subset(&other.roots)
    }

    pub fn union(&self, other: &Self) -> Self {
        WeightSpaceSet {
            rs: self.rs,
            includes_cartan: self.includes_cartan || other.includes_cartan,
            roots: self.roots.union(&other.roots).copied().collect(),
        }
    }
}

impl<R: Rational> fmt::Debug for WeightSpaceSet<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.includes_cartan {
            write!(f, "t ⊕ ")?;
        }
        write!(f, "{{")?;
        for (k, &id) in self.roots.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.rs.root(id))?;
        }
        write!(f, "}}")
    }
}

/// Root-level bracket `[U, V]`: sums of roots that are again roots, the
/// other set whenever one side carries the Cartan, plus the Cartan whenever
/// an opposite pair meets.
pub fn bracket_set<'a, R: Rational>(
    u: &WeightSpaceSet<'a, R>,
    v: &WeightSpaceSet<'a, R>,
) -> Result<WeightSpaceSet<'a, R>, Error> {
    if !u.rs.same_system(v.rs) {
        return Err(Error::MismatchedSystems);
    }
    let rs = u.rs;
    let mut roots = BTreeSet::new();
    let mut cartan = false;
    for &a in &u.roots {
        for &b in &v.roots {
            if let Some(c) = rs.sum_id(a, b) {
                roots.insert(c);
            }
            if rs.neg_id(a) == b {
                cartan = true;
            }
        }
    }
    if u.includes_cartan {
        roots.extend(v.roots.iter().copied());
    }
    if v.includes_cartan {
        roots.extend(u.roots.iter().copied());
    }
    Ok(WeightSpaceSet::new(rs, cartan, roots))
}

/// Project onto one member of a disjoint partition of the root set. The
/// partition must cover all roots exactly once and assign the Cartan to
/// exactly one member.
pub fn project<'a, R: Rational>(
    u: &WeightSpaceSet<'a, R>,
    onto: usize,
    partition: &[WeightSpaceSet<'a, R>],
) -> Result<WeightSpaceSet<'a, R>, Error> {
    let rs = u.rs;
    for member in partition {
        if !member.rs.same_system(rs) {
            return Err(Error::MismatchedSystems);
        }
    }
    if onto >= partition.len() {
        return Err(Error::NotAPartition("projection target out of range".into()));
    }
    let mut seen = BTreeSet::new();
    for member in partition {
        for &id in &member.roots {
            if !seen.insert(id) {
                return Err(Error::NotAPartition(format!(
                    "root {} appears twice",
                    rs.root(id)
                )));
            }
        }
    }
    if seen.len() != rs.num_roots() {
        return Err(Error::NotAPartition("roots not covered".into()));
    }
    if partition.iter().filter(|m| m.includes_cartan).count() != 1 {
        return Err(Error::NotAPartition(
            "cartan must belong to exactly one member".into(),
        ));
    }
    let target = &partition[onto];
    Ok(WeightSpaceSet::new(
        rs,
        u.includes_cartan && target.includes_cartan,
        u.roots.intersection(&target.roots).copied().collect(),
    ))
}

/// The triple `(h, m⁺, m⁻)` grouping levels mod 3; `h` carries the Cartan.
pub struct Fibration3<'a, R: Rational> {
    pub h: WeightSpaceSet<'a, R>,
    pub m_plus: WeightSpaceSet<'a, R>,
    pub m_minus: WeightSpaceSet<'a, R>,
    trivial: bool,
}

impl<'a, R: Rational> Fibration3<'a, R> {
    pub fn new(
        h: WeightSpaceSet<'a, R>,
        m_plus: WeightSpaceSet<'a, R>,
        m_minus: WeightSpaceSet<'a, R>,
        trivial: bool,
    ) -> Self {
        let rs = h.rs();
        assert!(h.includes_cartan, "h must contain the Cartan");
        assert_eq!(
            m_minus.roots,
            m_plus.conjugate().roots,
            "m⁻ must be the conjugate of m⁺"
        );
        let total = h.roots.len() + m_plus.roots.len() + m_minus.roots.len();
        assert_eq!(total, rs.num_roots(), "fibration must partition the roots");
        let mut all = h.roots.clone();
        all.extend(&m_plus.roots);
        all.extend(&m_minus.roots);
        assert_eq!(all.len(), rs.num_roots(), "fibration parts overlap");
        Fibration3 {
            h,
            m_plus,
            m_minus,
            trivial,
        }
    }

    pub fn rs(&self) -> &'a RootSystem<R> {
        self.h.rs()
    }

    /// Trivial iff no root has level `≡ 0 (mod 3)` other than level 0, so
    /// that `H = K`.
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn partition(&self) -> [WeightSpaceSet<'a, R>; 3] {
        [self.h.clone(), self.m_plus.clone(), self.m_minus.clone()]
    }
}

/// Group the levels of a grading mod 3.
pub fn degree3<'a, R: Rational>(grading: &GradedDecomposition<'a, R>) -> Fibration3<'a, R> {
    let rs = grading.rs();
    let mut classes = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    let mut trivial = true;
    for id in rs.ids() {
        let level = grading.level(id);
        classes[level.rem_euclid(3) as usize].insert(id);
        if level != 0 && level % 3 == 0 {
            trivial = false;
        }
    }
    let [h_roots, plus, minus] = classes;
    Fibration3::new(
        WeightSpaceSet::new(rs, true, h_roots),
        WeightSpaceSet::new(rs, false, plus),
        WeightSpaceSet::new(rs, false, minus),
        trivial,
    )
}

/// The pair `(f, q)` grouping levels by parity; `f` carries the Cartan.
pub struct SymmetricPair<'a, R: Rational> {
    pub f: WeightSpaceSet<'a, R>,
    pub q: WeightSpaceSet<'a, R>,
}

/// Group the levels of a grading mod 2.
pub fn degree2<'a, R: Rational>(grading: &GradedDecomposition<'a, R>) -> SymmetricPair<'a, R> {
    let rs = grading.rs();
    let mut even = BTreeSet::new();
    let mut odd = BTreeSet::new();
    for id in rs.ids() {
        if grading.level(id).rem_euclid(2) == 0 {
            even.insert(id);
        } else {
            odd.insert(id);
        }
    }
    SymmetricPair {
        f: WeightSpaceSet::new(rs, true, even),
        q: WeightSpaceSet::new(rs, false, odd),
    }
}

/// A bracket landing outside the expected subspace.
#[derive(Debug, Clone)]
pub enum Violation {
    /// `left + right = sum` is a root outside the target.
    RootSum {
        left: RootId,
        right: RootId,
        sum: RootId,
    },
    /// `[g_α, g_{-α}]` produces a Cartan line the target lacks.
    CartanPair { root: RootId },
    /// `[t, g_β] = g_β` escapes the target.
    CartanAction { root: RootId },
}

/// One bracket-inclusion condition and its violations.
#[derive(Debug)]
pub struct ConditionReport {
    pub name: &'static str,
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug)]
pub struct SymmetryReport {
    pub conditions: Vec<ConditionReport>,
}

impl SymmetryReport {
    pub fn passes(&self) -> bool {
        self.conditions.iter().all(ConditionReport::ok)
    }
}

/// Collect the violations of `[U, V] ⊆ target` with pair provenance.
fn bracket_inclusion<'a, R: Rational>(
    name: &'static str,
    u: &WeightSpaceSet<'a, R>,
    v: &WeightSpaceSet<'a, R>,
    target: &WeightSpaceSet<'a, R>,
) -> ConditionReport {
    let rs = u.rs();
    let mut violations = Vec::new();
    for &a in &u.roots {
        for &b in &v.roots {
            if let Some(c) = rs.sum_id(a, b) {
                if !target.roots.contains(&c) {
                    violations.push(Violation::RootSum {
                        left: a,
                        right: b,
                        sum: c,
                    });
                }
            }
            if rs.neg_id(a) == b && !target.includes_cartan {
                violations.push(Violation::CartanPair { root: a });
            }
        }
    }
    if u.includes_cartan {
        for &b in &v.roots {
            if !target.roots.contains(&b) {
                violations.push(Violation::CartanAction { root: b });
            }
        }
    }
    if v.includes_cartan {
        for &a in &u.roots {
            if !target.roots.contains(&a) {
                violations.push(Violation::CartanAction { root: a });
            }
        }
    }
    ConditionReport { name, violations }
}

/// Verify the 3-symmetric bracket relations together with invariance of the
/// parts under `h`.
pub fn check_3symmetric<R: Rational>(fib: &Fibration3<'_, R>) -> SymmetryReport {
    check_3symmetric_sets(&fib.h, &fib.m_plus, &fib.m_minus)
}

/// Same checks on a raw triple, so that broken structures can be probed for
/// their witnesses.
pub fn check_3symmetric_sets<R: Rational>(
    h: &WeightSpaceSet<'_, R>,
    m_plus: &WeightSpaceSet<'_, R>,
    m_minus: &WeightSpaceSet<'_, R>,
) -> SymmetryReport {
    let conditions = vec![
        bracket_inclusion("[m+,m+] ⊂ m-", m_plus, m_plus, m_minus),
        bracket_inclusion("[m-,m-] ⊂ m+", m_minus, m_minus, m_plus),
        bracket_inclusion("[m+,m-] ⊂ h", m_plus, m_minus, h),
        bracket_inclusion("[h,m+] ⊂ m+", h, m_plus, m_plus),
        bracket_inclusion("[h,m-] ⊂ m-", h, m_minus, m_minus),
        bracket_inclusion("[h,h] ⊂ h", h, h, h),
    ];
    SymmetryReport { conditions }
}

/// Verify the symmetric-pair relations `[q,q] ⊂ f`, `[f,q] ⊂ q`, `[f,f] ⊂ f`.
pub fn check_symmetric<R: Rational>(pair: &SymmetricPair<'_, R>) -> SymmetryReport {
    let conditions = vec![
        bracket_inclusion("[q,q] ⊂ f", &pair.q, &pair.q, &pair.f),
        bracket_inclusion("[f,q] ⊂ q", &pair.f, &pair.q, &pair.q),
        bracket_inclusion("[f,f] ⊂ f", &pair.f, &pair.f, &pair.f),
    ];
    SymmetryReport { conditions }
}

/// For a grading of max level ≤ 2 the degree-3 fibration is trivial and the
/// flag manifold carries its own 3-symmetric structure, obtained from the
/// nilradical by flipping the sign along level 2: `m⁺ = g^1 ∪ -g^2`.
pub fn j2_flip<'a, R: Rational>(
    grading: &GradedDecomposition<'a, R>,
) -> Result<WeightSpaceSet<'a, R>, Error> {
    if grading.max_level() > 2 {
        return Err(Error::MaxLevelTooHigh {
            max: grading.max_level(),
        });
    }
    let rs = grading.rs();
    let mut roots = grading.level_set(1);
    roots.extend(grading.level_set(2).iter().map(|&id| rs.neg_id(id)));
    Ok(WeightSpaceSet::new(rs, false, roots))
}

/// Assemble the 3-symmetric triple of a trivial fibration from a flipped
/// `m⁺`: `h` is level 0 plus the Cartan.
pub fn flip_fibration<'a, R: Rational>(
    grading: &GradedDecomposition<'a, R>,
) -> Result<Fibration3<'a, R>, Error> {
    let rs = grading.rs();
    let m_plus = j2_flip(grading)?;
    let m_minus = m_plus.conjugate();
    let mut h_roots = grading.level_set(0);
    debug_assert!(
        h_roots.len() + m_plus.roots.len() + m_minus.roots.len() == rs.num_roots()
    );
    h_roots = h_roots.into_iter().collect();
    Ok(Fibration3::new(
        WeightSpaceSet::new(rs, true, h_roots),
        m_plus,
        m_minus,
        true,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::ParabolicDatum;
    use crate::parabolic::grade;
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

    fn ws<'a>(rs: &'a Rs, cartan: bool, roots: &[&str]) -> WeightSpaceSet<'a, BigRational> {
        WeightSpaceSet::new(rs, cartan, ids(rs, roots))
    }

    #[test]
    fn bracket_of_nilradical() {
        let rs = system("G2");
        let l_plus = ws(
            &rs,
            false,
            &["[-1,1*r3]", "[2,0]", "[1,1*r3]", "[0,2*r3]", "[3,1*r3]"],
        );
        let b = bracket_set(&l_plus, &l_plus).unwrap();
        assert!(!b.includes_cartan);
        assert_eq!(b.roots, ids(&rs, &["[1,1*r3]", "[3,1*r3]", "[0,2*r3]"]));
    }

    #[test]
    fn bracket_cartan_semantics() {
        let rs = system("G2");
        let u = ws(&rs, false, &["[2,0]"]);
        let v = ws(&rs, false, &["[-2,0]"]);
        let b = bracket_set(&u, &v).unwrap();
        assert!(b.includes_cartan);
        assert!(b.roots.is_empty());

        // [t, g_β] = g_β.
        let t = ws(&rs, true, &[]);
        let beta = ws(&rs, false, &["[-3,1*r3]"]);
        let b = bracket_set(&t, &beta).unwrap();
        assert!(!b.includes_cartan);
        assert_eq!(b.roots, beta.roots);

        let other = system("A3");
        let w = WeightSpaceSet::new(&other, false, BTreeSet::new());
        assert!(bracket_set(&u, &w).is_err());
    }

    #[test]
    fn projection_on_partition() {
        let rs = system("C3");
        // h of the CP(5)-type space: Cartan plus the Sp(2) block.
        let h = ws(
            &rs,
            true,
            &["[0,1,-1]", "[0,-1,1]", "[0,1,1]", "[0,-1,-1]", "[0,2,0]", "[0,-2,0]", "[0,0,2]", "[0,0,-2]"],
        );
        let m_roots: BTreeSet<RootId> =
            rs.ids().filter(|id| !h.roots.contains(id)).collect();
        let m = WeightSpaceSet::new(&rs, false, m_roots);
        let n_plus = ws(&rs, false, &["[2,0,0]", "[-1,1,0]", "[1,0,-1]", "[1,1,0]", "[1,0,1]"]);
        let b = bracket_set(&n_plus, &n_plus).unwrap();
        let partition = [h.clone(), m.clone()];
        let on_m = project(&b, 1, &partition).unwrap();
        assert_eq!(on_m.roots, ids(&rs, &["[2,0,0]", "[1,1,0]"]));
        let on_h = project(&b, 0, &partition).unwrap();
        assert_eq!(on_h.roots, ids(&rs, &["[0,2,0]", "[0,1,-1]", "[0,1,1]"]));

        let empty = WeightSpaceSet::empty(&rs);
        assert!(project(&empty, 0, &partition).unwrap().roots.is_empty());

        // A non-partition is rejected.
        let bad = [h.clone(), h.clone()];
        assert!(project(&b, 0, &bad).is_err());
    }

    #[test]
    fn degree3_of_g2_gradings() {
        let rs = system("G2");
        let base = validate_base(&rs, &parse_vector_list("[-3,1*r3],[2,0]").unwrap()).unwrap();

        let datum = ParabolicDatum::new(&base, BTreeSet::from([1])).unwrap();
        let fib = degree3(&grade(&datum));
        assert_eq!(
            fib.h.roots,
            ids(&rs, &["[-3,1*r3]", "[3,-1*r3]", "[0,2*r3]", "[0,-2*r3]", "[3,1*r3]", "[-3,-1*r3]"])
        );
        assert_eq!(fib.m_plus.roots, ids(&rs, &["[-1,1*r3]", "[2,0]", "[-1,-1*r3]"]));
        assert!(!fib.is_trivial());
        assert!(check_3symmetric(&fib).passes());

        let datum = ParabolicDatum::new(&base, BTreeSet::from([0, 1])).unwrap();
        let fib = degree3(&grade(&datum));
        assert_eq!(fib.h.roots, ids(&rs, &["[1,1*r3]", "[-1,-1*r3]"]));
        assert_eq!(
            fib.m_plus.roots,
            ids(&rs, &["[2,0]", "[-3,1*r3]", "[1,-1*r3]", "[3,1*r3]", "[0,-2*r3]"])
        );
        assert!(check_3symmetric(&fib).passes());

        // A = {β1} has max level 2: trivial fibration.
        let datum = ParabolicDatum::new(&base, BTreeSet::from([0])).unwrap();
        let fib = degree3(&grade(&datum));
        assert!(fib.is_trivial());
        assert!(check_3symmetric(&fib).passes());
    }

    #[test]
    fn broken_triple_reports_witnesses() {
        let rs = system("G2");
        let base = validate_base(&rs, &parse_vector_list("[-3,1*r3],[2,0]").unwrap()).unwrap();
        let datum = ParabolicDatum::new(&base, BTreeSet::from([0, 1])).unwrap();
        let fib = degree3(&grade(&datum));
        // Drop (3,√3) from m⁺.
        let dropped = rs.id_of(&"[3,1*r3]".parse().unwrap()).unwrap();
        let mut roots = fib.m_plus.roots.clone();
        roots.remove(&dropped);
        let m_plus = WeightSpaceSet::new(&rs, false, roots);
        let report = check_3symmetric_sets(&fib.h, &m_plus, &fib.m_minus);
        assert!(!report.passes());
        // The escape shows up under the h-action on m⁺, at (1,√3) + (2,0).
        let h_action = report
            .conditions
            .iter()
            .find(|c| c.name == "[h,m+] ⊂ m+")
            .unwrap();
        assert!(h_action.violations.iter().any(|v| matches!(
            v,
            Violation::RootSum { sum, .. } if *sum == dropped
        )));
    }

    #[test]
    fn trivial_singleton_triple_is_3symmetric() {
        let rs = system("A1");
        let alpha = rs.ids().next().unwrap();
        let m_plus = WeightSpaceSet::new(&rs, false, BTreeSet::from([alpha]));
        let m_minus = m_plus.conjugate();
        let h = WeightSpaceSet::new(&rs, true, BTreeSet::new());
        let fib = Fibration3::new(h, m_plus, m_minus, true);
        assert!(check_3symmetric(&fib).passes());
    }

    #[test]
    fn degree2_symmetric_pairs() {
        let rs = system("A3");
        let base = rs.catalog_base();
        let datum = ParabolicDatum::new(&base, BTreeSet::from([0, 1])).unwrap();
        let grading = grade(&datum);
        let pair = degree2(&grading);
        // f = k_12 ∪ ±{(1,0,0,-1),(1,0,-1,0)}.
        assert_eq!(
            pair.f.roots,
            ids(
                &rs,
                &["[0,0,1,-1]", "[0,0,-1,1]", "[1,0,0,-1]", "[-1,0,0,1]", "[1,0,-1,0]", "[-1,0,1,0]"]
            )
        );
        assert!(check_symmetric(&pair).passes());

        let datum = ParabolicDatum::new(&base, BTreeSet::new()).unwrap();
        let pair = degree2(&grade(&datum));
        assert!(pair.q.roots.is_empty());
        assert!(check_symmetric(&pair).passes());
    }

    #[test]
    fn j2_flip_swaps_level_two() {
        let rs = system("A3");
        let base = rs.catalog_base();
        let datum = ParabolicDatum::new(&base, BTreeSet::from([0, 1])).unwrap();
        let grading = grade(&datum);
        let m_plus = j2_flip(&grading).unwrap();
        assert_eq!(
            m_plus.roots,
            ids(
                &rs,
                &["[1,-1,0,0]", "[0,1,-1,0]", "[0,1,0,-1]", "[-1,0,0,1]", "[-1,0,1,0]"]
            )
        );
        // The flipped triple is 3-symmetric.
        let fib = flip_fibration(&grading).unwrap();
        assert!(check_3symmetric(&fib).passes());
        // Differs from l⁺ exactly on the level-2 roots.
        let l_plus = grading.nilradical();
        let diff: BTreeSet<RootId> = l_plus.symmetric_difference(&m_plus.roots).copied().collect();
        let mut level2_pm = grading.level_set(2);
        level2_pm.extend(grading.level_set(-2));
        assert_eq!(diff, level2_pm);

        // max level 1: nothing changes.
        let a2 = system("A2");
        let base = a2.catalog_base();
        let datum = ParabolicDatum::new(&base, BTreeSet::from([0])).unwrap();
        let grading = grade(&datum);
        let m_plus = j2_flip(&grading).unwrap();
        assert_eq!(m_plus.roots, grading.nilradical());

        // max level ≥ 3 is rejected.
        let g2 = system("G2");
        let base = g2.catalog_base();
        let datum = ParabolicDatum::new(&base, BTreeSet::from([1])).unwrap();
        assert!(j2_flip(&grade(&datum)).is_err());
    }

    #[test]
    fn bracket_monotone_and_symmetric() {
        let rs = system("B3");
        let base = rs.catalog_base();
        let pos = base.positive_ids();
        let small: BTreeSet<RootId> = pos.iter().take(4).copied().collect();
        let u = WeightSpaceSet::new(&rs, false, small.clone());
        let u_big = WeightSpaceSet::new(&rs, false, pos.clone());
        let v = WeightSpaceSet::new(&rs, false, pos.iter().rev().take(5).copied().collect());
        let uv = bracket_set(&u, &v).unwrap();
        let vu = bracket_set(&v, &u).unwrap();
        assert_eq!(uv.roots, vu.roots);
        assert_eq!(uv.includes_cartan, vu.includes_cartan);
        let big = bracket_set(&u_big, &v).unwrap();
        assert!(uv.roots.is_subset(&big.roots));
    }
}
