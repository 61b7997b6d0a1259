//! The Wolf-twistor construction on a flag manifold and the enumeration of
//! inner (equal-rank) compact 3-symmetric spaces, including the
//! Borel–de Siebenthal-style identification of the isotropy-irreducible
//! family generated by mark-3 simple roots.

use std::collections::BTreeSet;

use crate::fibration::{bracket_set, degree3, j2_flip, WeightSpaceSet};
use crate::parabolic::{canonical_series, grade, GradedDecomposition, ParabolicDatum};
use crate::rootsys::{dynkin_type, Base, RootId, SimpleType};
use crate::scalar::Rational;
use crate::twistor::cp_pattern;
use crate::Error;

/// Output of the Wolf-twistor construction: the centralizer data of the
/// highest root and the two almost complex structures on the flag manifold.
pub struct WolfTwistor<'a, R: Rational> {
    /// `A = {β ∈ B : (β/γ) = 1}`, 0-based positions.
    pub subset: BTreeSet<usize>,
    pub grading: GradedDecomposition<'a, R>,
    /// The integrable structure: the nilradical `l⁺`.
    pub j1: WeightSpaceSet<'a, R>,
    /// The 3-symmetric structure: sign flipped along level 2.
    pub j2: WeightSpaceSet<'a, R>,
}

/// Run the highest-root twistor construction over a base.
///
/// Requires rank ≥ 2: in rank 1 the highest root is itself simple and the
/// centralizer construction degenerates.
pub fn wolf_twistor<'a, R: Rational>(base: &'a Base<'a, R>) -> Result<WolfTwistor<'a, R>, Error> {
    let rs = base.rs();
    if rs.rank() < 2 {
        return Err(Error::RankTooSmall {
            context: "wolf twistor construction",
            rank: rs.rank(),
        });
    }
    let gamma = base.highest_id();
    // (α/γ) ∈ {-1,0,1} away from ±γ.
    for id in rs.ids() {
        if id == gamma || id == rs.neg_id(gamma) {
            continue;
        }
        let p = rs.pairing_ids(id, gamma);
        if !(-1..=1).contains(&p) {
            return Err(Error::Internal(format!(
                "pairing ({}/{}) = {p} out of range for a highest root",
                rs.root(id),
                rs.root(gamma)
            )));
        }
    }
    let subset: BTreeSet<usize> = base
        .simple_ids()
        .iter()
        .enumerate()
        .filter(|(_, &id)| rs.pairing_ids(id, gamma) == 1)
        .map(|(i, _)| i)
        .collect();
    let datum = ParabolicDatum::new(base, subset.clone())?;
    let grading = grade(&datum);
    if grading.max_level() != 2 || grading.level_set(2) != BTreeSet::from([gamma]) {
        return Err(Error::Internal(
            "highest-root grading must stop at level 2 with g² = g_γ".into(),
        ));
    }
    let series = canonical_series(&datum);
    debug_assert_eq!(series.term(2), BTreeSet::from([gamma]));
    debug_assert!(series.term(3).is_empty());
    let j1 = WeightSpaceSet::new(rs, false, grading.nilradical());
    let j2 = j2_flip(&grading)?;
    Ok(WolfTwistor {
        subset,
        grading,
        j1,
        j2,
    })
}

/// The three inner kinds of the classification: flag manifolds with a
/// singleton of mark 1 or 2, with a mark-1 pair, and the isotropy-irreducible
/// mark-3 family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerKind {
    Singleton1,
    Singleton2,
    Pair11,
    Mark3,
}

impl InnerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InnerKind::Singleton1 => "singleton-1",
            InnerKind::Singleton2 => "singleton-2",
            InnerKind::Pair11 => "pair-1-1",
            InnerKind::Mark3 => "mark-3",
        }
    }
}

/// One case of the inner classification, with root-level evidence for the
/// isotropy algebra and the fibre.
#[derive(Debug)]
pub struct InnerCase {
    pub kind: InnerKind,
    /// 0-based positions into the simple roots.
    pub subset: BTreeSet<usize>,
    /// Simple system of the semisimple part of `h`.
    pub h_simple: Vec<RootId>,
    pub h_components: Vec<SimpleType>,
    pub cartan_rank: usize,
    pub fibre_dim: usize,
    pub fibre_pattern: Option<usize>,
}

/// `h_δ` for a mark-3 simple root: levels `{0, ±3}` plus the Cartan, with
/// simple system `(B − {δ}) ∪ {−γ}`.
pub struct BorelDeSiebenthal<'a, R: Rational> {
    pub h: WeightSpaceSet<'a, R>,
    pub simple_system: Vec<RootId>,
    pub components: Vec<SimpleType>,
    pub fibre_positive: BTreeSet<RootId>,
}

/// Build `h_δ` for a simple root of mark 3 and verify it is a subalgebra
/// reproduced by the degree-3 fibration at `A = {δ}`.
pub fn borel_de_siebenthal<'a, R: Rational>(
    base: &'a Base<'a, R>,
    delta: usize,
) -> Result<BorelDeSiebenthal<'a, R>, Error> {
    let rs = base.rs();
    if delta >= base.simple_ids().len() {
        return Err(Error::SubsetIndex {
            index: delta + 1,
            rank: base.simple_ids().len(),
        });
    }
    let gamma = base.highest_id();
    let mark = base.coeff(gamma, delta);
    if mark != 3 {
        return Err(Error::NotMark3 {
            index: delta + 1,
            mark,
        });
    }
    let datum = ParabolicDatum::new(base, BTreeSet::from([delta]))?;
    let grading = grade(&datum);
    let h_roots: BTreeSet<RootId> = rs
        .ids()
        .filter(|&id| matches!(grading.level(id), 0 | 3 | -3))
        .collect();
    let h = WeightSpaceSet::new(rs, true, h_roots);
    let closure = bracket_set(&h, &h)?;
    if !closure.contained_in(&h) {
        return Err(Error::Internal("h_δ is not closed under brackets".into()));
    }
    let fib = degree3(&grading);
    if fib.h.roots != h.roots {
        return Err(Error::Internal(
            "degree-3 fibration at {δ} does not reproduce h_δ".into(),
        ));
    }

    let mut simple_system: Vec<RootId> = base
        .simple_ids()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != delta)
        .map(|(_, &id)| id)
        .collect();
    simple_system.push(rs.neg_id(gamma));
    let vectors: Vec<_> = simple_system.iter().map(|&id| rs.root(id).clone()).collect();
    let components = dynkin_type(rs, &vectors)?;
    let fibre_positive = grading.level_set(3);
    Ok(BorelDeSiebenthal {
        h,
        simple_system,
        components,
        fibre_positive,
    })
}

/// Enumerate the inner cases over a base: singletons of mark 1 and 2,
/// mark-1 pairs, and mark-3 singletons.
pub fn gray_wolf_inner<R: Rational>(base: &Base<'_, R>) -> Vec<InnerCase> {
    let rs = base.rs();
    let gamma = base.highest_id();
    let rank = rs.rank();
    let marks: Vec<i64> = (0..rank).map(|i| base.coeff(gamma, i)).collect();

    let h_data = |complement: &[usize]| -> (Vec<RootId>, Vec<SimpleType>) {
        let simple: Vec<RootId> = complement
            .iter()
            .map(|&i| base.simple_ids()[i])
            .collect();
        let vectors: Vec<_> = simple.iter().map(|&id| rs.root(id).clone()).collect();
        let components = dynkin_type(rs, &vectors).expect("sub-base is admissible");
        (simple, components)
    };

    // For the flag cases the fibre of the canonical fibration is the level-2
    // part of the grading at A.
    let flag_fibre = |subset: &BTreeSet<usize>| -> (usize, Option<usize>) {
        let datum = ParabolicDatum::new(base, subset.clone()).expect("indices valid");
        let grading = grade(&datum);
        let g2 = grading.level_set(2);
        (2 * g2.len(), cp_pattern(rs, &g2))
    };

    let mut cases = Vec::new();
    for i in 0..rank {
        let subset = BTreeSet::from([i]);
        let complement: Vec<usize> = (0..rank).filter(|&j| j != i).collect();
        match marks[i] {
            1 | 2 => {
                let (h_simple, h_components) = h_data(&complement);
                let (fibre_dim, fibre_pattern) = flag_fibre(&subset);
                cases.push(InnerCase {
                    kind: if marks[i] == 1 {
                        InnerKind::Singleton1
                    } else {
                        InnerKind::Singleton2
                    },
                    subset,
                    h_simple,
                    h_components,
                    cartan_rank: rank,
                    fibre_dim,
                    fibre_pattern,
                });
            }
            3 => {
                let bds = borel_de_siebenthal(base, i).expect("mark checked");
                cases.push(InnerCase {
                    kind: InnerKind::Mark3,
                    subset,
                    fibre_dim: 2 * bds.fibre_positive.len(),
                    fibre_pattern: cp_pattern(rs, &bds.fibre_positive),
                    h_simple: bds.simple_system,
                    h_components: bds.components,
                    cartan_rank: rank,
                });
            }
            _ => {}
        }
    }
    for i in 0..rank {
        for j in (i + 1)..rank {
            if marks[i] == 1 && marks[j] == 1 {
                let subset = BTreeSet::from([i, j]);
                let complement: Vec<usize> =
                    (0..rank).filter(|&k| k != i && k != j).collect();
                let (h_simple, h_components) = h_data(&complement);
                let (fibre_dim, fibre_pattern) = flag_fibre(&subset);
                cases.push(InnerCase {
                    kind: InnerKind::Pair11,
                    subset,
                    h_simple,
                    h_components,
                    cartan_rank: rank,
                    fibre_dim,
                    fibre_pattern,
                });
            }
        }
    }
    cases
}
