//! Root systems of the simple types in exact coordinates: catalog
//! realizations, bases (simple-root systems), root decomposition, positivity
//! from regular vectors, positive systems containing a prescribed closed set,
//! and Dynkin-type identification of derived simple systems.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::feasible::strictly_feasible;
use crate::scalar::{Rational, Sqrt3};
use crate::vector::{gram_inverse, linearly_independent, Vector};
use crate::Error;

/// The seven families of simple root systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A simple type together with its rank, e.g. `G2` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub label: TypeLabel,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(label: TypeLabel, rank: usize) -> Result<Self, Error> {
        let ok = match label {
            TypeLabel::A => (1..=8).contains(&rank),
            TypeLabel::B | TypeLabel::C => (2..=8).contains(&rank),
            TypeLabel::D => (4..=8).contains(&rank),
            TypeLabel::E => (6..=8).contains(&rank),
            TypeLabel::F => rank == 4,
            TypeLabel::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { label, rank })
        } else {
            Err(Error::InvalidType(format!("{label}{rank}")))
        }
    }

    /// Number of roots of the catalog realization.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.label {
            TypeLabel::A => n * (n + 1),
            TypeLabel::B | TypeLabel::C => 2 * n * n,
            TypeLabel::D => 2 * n * (n - 1),
            TypeLabel::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            TypeLabel::F => 48,
            TypeLabel::G => 12,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let err = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let label = match chars.next().ok_or_else(err)? {
            'A' | 'a' => TypeLabel::A,
            'B' | 'b' => TypeLabel::B,
            'C' | 'c' => TypeLabel::C,
            'D' | 'd' => TypeLabel::D,
            'E' | 'e' => TypeLabel::E,
            'F' | 'f' => TypeLabel::F,
            'G' | 'g' => TypeLabel::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        SimpleType::new(label, rank)
    }
}

/// Index of a root inside its `RootSystem`; ids are assigned by sorting the
/// coordinate vectors lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootId(pub usize);

/// A simple root system realized by exact coordinate vectors.
pub struct RootSystem<R: Rational> {
    stype: SimpleType,
    ambient_dim: usize,
    roots: Vec<Vector<R>>,
    index: HashMap<Vector<R>, RootId>,
    neg: Vec<RootId>,
    /// `sums[a][b] = Some(c)` iff `roots[a] + roots[b] = roots[c]`.
    sums: Vec<Vec<Option<RootId>>>,
    catalog_base: Vec<RootId>,
}

impl<R: Rational> fmt::Debug for RootSystem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}, {} roots)", self.stype, self.roots.len())
    }
}

fn half<R: Rational>(n: i64) -> Sqrt3<R> {
    Sqrt3::half(n)
}

fn signed_unit_sums<R: Rational>(dim: usize, i: usize, j: usize) -> Vec<Vector<R>> {
    let mut out = Vec::with_capacity(4);
    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let mut v = Vector::zeros(dim);
        v.set(i, Sqrt3::from_int(si));
        v.set(j, Sqrt3::from_int(sj));
        out.push(v);
    }
    out
}

fn e8_roots<R: Rational>() -> Vec<Vector<R>> {
    let mut roots = Vec::with_capacity(240);
    for i in 0..8 {
        for j in (i + 1)..8 {
            roots.extend(signed_unit_sums(8, i, j));
        }
    }
    for signs in 0u16..256 {
        if (signs.count_ones() % 2) == 0 {
            let coords = (0..8)
                .map(|k| half::<R>(if signs & (1 << k) != 0 { -1 } else { 1 }))
                .collect();
            roots.push(Vector::new(coords));
        }
    }
    roots
}

fn e8_base<R: Rational>() -> Vec<Vector<R>> {
    let mut beta1 = Vector::zeros(8);
    for k in 0..8 {
        beta1.set(k, half(if k == 0 || k == 7 { 1 } else { -1 }));
    }
    let mut base = vec![beta1, {
        let mut v = Vector::zeros(8);
        v.set(0, Sqrt3::from_int(1));
        v.set(1, Sqrt3::from_int(1));
        v
    }];
    for k in 0..6 {
        let mut v = Vector::zeros(8);
        v.set(k, Sqrt3::from_int(-1));
        v.set(k + 1, Sqrt3::from_int(1));
        base.push(v);
    }
    base
}

/// Catalog realization: coordinates, roots and the reference base.
fn generate<R: Rational>(stype: SimpleType) -> (usize, Vec<Vector<R>>, Vec<Vector<R>>) {
    let n = stype.rank;
    match stype.label {
        TypeLabel::A => {
            let dim = n + 1;
            let mut roots = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        let mut v = Vector::zeros(dim);
                        v.set(i, Sqrt3::from_int(1));
                        v.set(j, Sqrt3::from_int(-1));
                        roots.push(v);
                    }
                }
            }
            let base = (0..n)
                .map(|i| {
                    let mut v = Vector::zeros(dim);
                    v.set(i, Sqrt3::from_int(1));
                    v.set(i + 1, Sqrt3::from_int(-1));
                    v
                })
                .collect();
            (dim, roots, base)
        }
        TypeLabel::B | TypeLabel::C => {
            let long = stype.label == TypeLabel::C;
            let mut roots = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    roots.extend(signed_unit_sums(n, i, j));
                }
            }
            for i in 0..n {
                for s in [1, -1] {
                    let mut v = Vector::zeros(n);
                    v.set(i, Sqrt3::from_int(if long { 2 * s } else { s }));
                    roots.push(v);
                }
            }
            let mut base: Vec<Vector<R>> = (0..n - 1)
                .map(|i| {
                    let mut v = Vector::zeros(n);
                    v.set(i, Sqrt3::from_int(1));
                    v.set(i + 1, Sqrt3::from_int(-1));
                    v
                })
                .collect();
            let mut last = Vector::zeros(n);
            last.set(n - 1, Sqrt3::from_int(if long { 2 } else { 1 }));
            base.push(last);
            (n, roots, base)
        }
        TypeLabel::D => {
            let mut roots = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    roots.extend(signed_unit_sums(n, i, j));
                }
            }
            let mut base: Vec<Vector<R>> = (0..n - 1)
                .map(|i| {
                    let mut v = Vector::zeros(n);
                    v.set(i, Sqrt3::from_int(1));
                    v.set(i + 1, Sqrt3::from_int(-1));
                    v
                })
                .collect();
            let mut last = Vector::zeros(n);
            last.set(n - 2, Sqrt3::from_int(1));
            last.set(n - 1, Sqrt3::from_int(1));
            base.push(last);
            (n, roots, base)
        }
        TypeLabel::G => {
            let mk = |a: i64, b: i64| {
                Vector::new(vec![Sqrt3::from_int(a), Sqrt3::sqrt3_times(b)])
            };
            let roots = vec![
                mk(0, 2),
                mk(0, -2),
                mk(3, 1),
                mk(-3, -1),
                mk(-3, 1),
                mk(3, -1),
                mk(1, 1),
                mk(-1, -1),
                mk(-1, 1),
                mk(1, -1),
                mk(2, 0),
                mk(-2, 0),
            ];
            let base = vec![mk(-3, 1), mk(2, 0)];
            (2, roots, base)
        }
        TypeLabel::F => {
            let mut roots = Vec::new();
            for i in 0..4 {
                for j in (i + 1)..4 {
                    roots.extend(signed_unit_sums(4, i, j));
                }
            }
            for i in 0..4 {
                for s in [1, -1] {
                    let mut v = Vector::zeros(4);
                    v.set(i, Sqrt3::from_int(s));
                    roots.push(v);
                }
            }
            for signs in 0u16..16 {
                let coords = (0..4)
                    .map(|k| half::<R>(if signs & (1 << k) != 0 { -1 } else { 1 }))
                    .collect();
                roots.push(Vector::new(coords));
            }
            let base = vec![
                {
                    let mut v = Vector::zeros(4);
                    v.set(1, Sqrt3::from_int(1));
                    v.set(2, Sqrt3::from_int(-1));
                    v
                },
                {
                    let mut v = Vector::zeros(4);
                    v.set(2, Sqrt3::from_int(1));
                    v.set(3, Sqrt3::from_int(-1));
                    v
                },
                {
                    let mut v = Vector::zeros(4);
                    v.set(3, Sqrt3::from_int(1));
                    v
                },
                Vector::new(vec![half(1), half(-1), half(-1), half(-1)]),
            ];
            (4, roots, base)
        }
        TypeLabel::E => {
            let all = e8_roots::<R>();
            let base = e8_base::<R>();
            match n {
                8 => (8, all, base),
                7 => {
                    // Orthogonal to e7 + e8.
                    let keep = |v: &Vector<R>| (v[6].clone() + v[7].clone()).is_zero();
                    (8, all.into_iter().filter(keep).collect(), base[..7].to_vec())
                }
                _ => {
                    // Orthogonal to e7 + e8 and to e6 - e7.
                    let keep = |v: &Vector<R>| {
                        (v[6].clone() + v[7].clone()).is_zero()
                            && (v[5].clone() - v[6].clone()).is_zero()
                    };
                    (8, all.into_iter().filter(keep).collect(), base[..6].to_vec())
                }
            }
        }
    }
}

impl<R: Rational> RootSystem<R> {
    /// Build the catalog realization of a simple type; all root-system
    /// invariants are verified on the way.
    pub fn new(stype: SimpleType) -> Self {
        let (ambient_dim, mut roots, base_vectors) = generate::<R>(stype);
        roots.sort();
        assert_eq!(
            roots.len(),
            stype.root_count(),
            "catalog count mismatch for {stype}"
        );
        let index: HashMap<Vector<R>, RootId> = roots
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), RootId(i)))
            .collect();
        assert_eq!(index.len(), roots.len(), "duplicate roots in {stype}");

        let neg: Vec<RootId> = roots
            .iter()
            .map(|v| *index.get(&v.neg()).expect("root system not negation-closed"))
            .collect();

        let norms: Vec<Sqrt3<R>> = roots.iter().map(Vector::norm_sq).collect();
        for norm in &norms {
            assert!(norm.is_positive(), "root of nonpositive length");
        }

        // Reduced: the only multiples of a root are ±1 times it. Any other
        // ratio admissible over Q(√3) is covered by the candidates below.
        let two = Sqrt3::from_int(2);
        let three = Sqrt3::from_int(3);
        let rt3 = Sqrt3::sqrt3_times(1);
        let candidates = [
            two.clone(),
            two.inverse().unwrap(),
            three.clone(),
            three.inverse().unwrap(),
            rt3.clone(),
            rt3.inverse().unwrap(),
        ];
        for v in &roots {
            for lambda in &candidates {
                let scaled = v.scale(lambda);
                assert!(
                    !index.contains_key(&scaled) && !index.contains_key(&scaled.neg()),
                    "non-reduced system: {v} has multiple {lambda}"
                );
            }
        }

        // One quadratic pass: the sum table and integrality of all pairings.
        let m = roots.len();
        let mut sums: Vec<Vec<Option<RootId>>> = vec![vec![None; m]; m];
        for i in 0..m {
            for j in i..m {
                let sum_id = index.get(&roots[i].add(&roots[j])).copied();
                sums[i][j] = sum_id;
                sums[j][i] = sum_id;
                let dot = roots[i].dot(&roots[j]);
                for (a, b) in [(i, j), (j, i)] {
                    let pairing = (Sqrt3::from_int(2) * dot.clone()) / norms[b].clone();
                    let k = pairing
                        .to_int()
                        .unwrap_or_else(|| panic!("pairing of {} with {} not integral", roots[a], roots[b]));
                    assert!((-3..=3).contains(&k), "pairing out of range");
                }
            }
        }

        let catalog_base = base_vectors
            .iter()
            .map(|v| *index.get(v).expect("catalog base root missing"))
            .collect();

        RootSystem {
            stype,
            ambient_dim,
            roots,
            index,
            neg,
            sums,
            catalog_base,
        }
    }

    pub fn stype(&self) -> SimpleType {
        self.stype
    }

    pub fn rank(&self) -> usize {
        self.stype.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = RootId> {
        (0..self.roots.len()).map(RootId)
    }

    pub fn root(&self, id: RootId) -> &Vector<R> {
        &self.roots[id.0]
    }

    pub fn id_of(&self, v: &Vector<R>) -> Option<RootId> {
        self.index.get(v).copied()
    }

    pub fn neg_id(&self, id: RootId) -> RootId {
        self.neg[id.0]
    }

    /// `Some(c)` iff the sum of the two roots is again a root.
    pub fn sum_id(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a.0][b.0]
    }

    /// Representatives of the `{α, -α}` pairs, in id order.
    pub fn pair_representatives(&self) -> Vec<RootId> {
        self.ids()
            .filter(|&id| id.0 < self.neg_id(id).0)
            .collect()
    }

    pub fn same_system(&self, other: &Self) -> bool {
        self.stype == other.stype
    }

    /// Image of a root under the reflection in the hyperplane of `mirror`:
    /// `s_β(α) = α - (α/β) β`.
    pub fn reflect(&self, root: RootId, mirror: RootId) -> RootId {
        let pairing = self.pairing_ids(root, mirror);
        let image = self.roots[root.0].sub(
            &self.roots[mirror.0].scale(&Sqrt3::from_int(pairing)),
        );
        *self
            .index
            .get(&image)
            .expect("root systems are closed under reflections")
    }

    /// `(α/β) = 2⟨α,β⟩/⟨β,β⟩` for roots given by id.
    pub fn pairing_ids(&self, a: RootId, b: RootId) -> i64 {
        let dot = self.roots[a.0].dot(&self.roots[b.0]);
        let norm = self.roots[b.0].norm_sq();
        ((Sqrt3::from_int(2) * dot) / norm)
            .to_int()
            .expect("pairing validated integral at construction")
    }

    pub fn catalog_base_ids(&self) -> &[RootId] {
        &self.catalog_base
    }

    pub fn catalog_base(&self) -> Base<'_, R> {
        Base::new(self, self.catalog_base.clone()).expect("catalog base is a base")
    }
}

/// `(α/β) = 2⟨α,β⟩/⟨β,β⟩`, an integer between -3 and 3 for roots.
pub fn cartan_pairing<R: Rational>(
    rs: &RootSystem<R>,
    alpha: &Vector<R>,
    beta: &Vector<R>,
) -> Result<i64, Error> {
    let a = rs
        .id_of(alpha)
        .ok_or_else(|| Error::NotARoot(alpha.to_string()))?;
    let b = rs
        .id_of(beta)
        .ok_or_else(|| Error::NotARoot(beta.to_string()))?;
    Ok(rs.pairing_ids(a, b))
}

/// Integer coefficients of a root over an ordered base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientVector {
    coeffs: Vec<i64>,
}

impl CoefficientVector {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn sum_over(&self, subset: &BTreeSet<usize>) -> i64 {
        subset.iter().map(|&i| self.coeffs[i]).sum()
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An ordered system of simple roots, with the induced positive roots,
/// highest root and cached integer decomposition of every root.
pub struct Base<'a, R: Rational> {
    rs: &'a RootSystem<R>,
    simple: Vec<RootId>,
    positive: BTreeSet<RootId>,
    highest: RootId,
    coeffs: Vec<Vec<i64>>,
    gram_inv: Vec<Vec<Sqrt3<R>>>,
}

impl<R: Rational> fmt::Debug for Base<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Base[")?;
        for (i, &id) in self.simple.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.rs.root(id))?;
        }
        write!(f, "]")
    }
}

impl<'a, R: Rational> Base<'a, R> {
    pub fn new(rs: &'a RootSystem<R>, simple: Vec<RootId>) -> Result<Self, Error> {
        if simple.len() != rs.rank() {
            return Err(Error::WrongBaseSize {
                expected: rs.rank(),
                got: simple.len(),
            });
        }
        let vectors: Vec<Vector<R>> = simple.iter().map(|&id| rs.root(id).clone()).collect();
        if !linearly_independent(&vectors) {
            return Err(Error::DependentBase);
        }
        let gram_inv = gram_inverse(&vectors).ok_or(Error::DependentBase)?;

        // Decompose every root: x = G⁻¹ (⟨β_i, α⟩)_i, then demand exact
        // integers of a single sign.
        let mut coeffs = Vec::with_capacity(rs.num_roots());
        let mut positive = BTreeSet::new();
        for id in rs.ids() {
            let alpha = rs.root(id);
            let rhs: Vec<Sqrt3<R>> = vectors.iter().map(|b| b.dot(alpha)).collect();
            let mut row = Vec::with_capacity(simple.len());
            for gram_row in &gram_inv {
                let val = gram_row
                    .iter()
                    .zip(&rhs)
                    .fold(Sqrt3::zero(), |acc, (g, r)| acc + g.clone() * r.clone());
                row.push(val);
            }
            // Reconstruction identity: Σ n_i β_i = α exactly.
            let mut rebuilt = Vector::zeros(rs.ambient_dim());
            for (x, b) in row.iter().zip(&vectors) {
                rebuilt = rebuilt.add(&b.scale(x));
            }
            if rebuilt != *alpha {
                return Err(Error::NotABase {
                    witness: alpha.to_string(),
                });
            }
            let ints: Option<Vec<i64>> = row.iter().map(Sqrt3::to_int).collect();
            let Some(ints) = ints else {
                return Err(Error::NotABase {
                    witness: alpha.to_string(),
                });
            };
            let pos = ints.iter().all(|&c| c >= 0);
            let neg = ints.iter().all(|&c| c <= 0);
            if !pos && !neg {
                return Err(Error::NotABase {
                    witness: alpha.to_string(),
                });
            }
            if pos {
                positive.insert(id);
            }
            coeffs.push(ints);
        }

        // The highest root dominates every positive root coefficientwise.
        let highest = *positive
            .iter()
            .max_by_key(|&&id| coeffs[id.0].iter().sum::<i64>())
            .expect("positive set nonempty");
        for &id in &positive {
            for (hi, ci) in coeffs[highest.0].iter().zip(&coeffs[id.0]) {
                if hi < ci {
                    return Err(Error::Internal(format!(
                        "no dominating highest root: {} vs {}",
                        rs.root(highest),
                        rs.root(id)
                    )));
                }
            }
        }

        Ok(Base {
            rs,
            simple,
            positive,
            highest,
            coeffs,
            gram_inv,
        })
    }

    pub fn rs(&self) -> &'a RootSystem<R> {
        self.rs
    }

    pub fn simple_ids(&self) -> &[RootId] {
        &self.simple
    }

    pub fn simple_root(&self, i: usize) -> &Vector<R> {
        self.rs.root(self.simple[i])
    }

    pub fn positive_ids(&self) -> &BTreeSet<RootId> {
        &self.positive
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        self.positive.contains(&id)
    }

    pub fn highest_id(&self) -> RootId {
        self.highest
    }

    pub fn highest_root(&self) -> &Vector<R> {
        self.rs.root(self.highest)
    }

    pub fn coeffs_of(&self, id: RootId) -> CoefficientVector {
        CoefficientVector {
            coeffs: self.coeffs[id.0].clone(),
        }
    }

    /// Coefficient of `β_i` in the given root.
    pub fn coeff(&self, id: RootId, i: usize) -> i64 {
        self.coeffs[id.0][i]
    }

    pub(crate) fn gram_inv(&self) -> &[Vec<Sqrt3<R>>] {
        &self.gram_inv
    }
}

/// Decompose a root over the base: exact integer coefficients.
pub fn decompose<'a, R: Rational>(
    base: &Base<'a, R>,
    alpha: &Vector<R>,
) -> Result<CoefficientVector, Error> {
    let id = base
        .rs
        .id_of(alpha)
        .ok_or_else(|| Error::NotARoot(alpha.to_string()))?;
    Ok(base.coeffs_of(id))
}

/// Validate an ordered candidate list of roots as a base.
pub fn validate_base<'a, R: Rational>(
    rs: &'a RootSystem<R>,
    candidate: &[Vector<R>],
) -> Result<Base<'a, R>, Error> {
    let ids = candidate
        .iter()
        .map(|v| rs.id_of(v).ok_or_else(|| Error::NotARoot(v.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Base::new(rs, ids)
}

/// The indecomposable elements of a positive set: those not expressible as a
/// sum of two members.
pub fn indecomposables<R: Rational>(
    rs: &RootSystem<R>,
    positives: &BTreeSet<RootId>,
) -> Vec<RootId> {
    positives
        .iter()
        .copied()
        .filter(|&alpha| {
            !positives.iter().any(|&beta| {
                beta != alpha
                    && rs
                        .sum_id(alpha, rs.neg_id(beta))
                        .is_some_and(|diff| positives.contains(&diff))
            })
        })
        .collect()
}

/// Base determined by a regular vector: positive roots are those with
/// positive pairing against `v`, simple roots the indecomposable positives.
pub fn base_from_regular_vector<'a, R: Rational>(
    rs: &'a RootSystem<R>,
    v: &Vector<R>,
) -> Result<Base<'a, R>, Error> {
    if v.dim() != rs.ambient_dim() {
        return Err(Error::Dimension {
            expected: rs.ambient_dim(),
            got: v.dim(),
        });
    }
    let mut positives = BTreeSet::new();
    for id in rs.ids() {
        match v.dot(rs.root(id)).sign() {
            std::cmp::Ordering::Greater => {
                positives.insert(id);
            }
            std::cmp::Ordering::Equal => {
                return Err(Error::NotRegular(rs.root(id).to_string()));
            }
            std::cmp::Ordering::Less => {}
        }
    }
    let simple = indecomposables(rs, &positives);
    let base = Base::new(rs, simple)?;
    debug_assert_eq!(base.positive, positives);
    Ok(base)
}

/// Why a root set admits no positive system containing it.
#[derive(Debug, Clone, Error)]
pub enum PositivityFailure {
    #[error("S ∩ -S ≠ ∅: contains both {0} and its negative")]
    NotIsotropic(String),
    #[error("S is not closed: {a} + {b} = {sum} is a root outside S")]
    NotClosed { a: String, b: String, sum: String },
    #[error("internal inconsistency: strict system infeasible despite isotropy and closure")]
    Infeasible,
}

/// Find a base whose positive roots contain `S`, provided `S ∩ -S = ∅` and
/// `S` is closed under root addition.
///
/// The chamber is selected deterministically: after the constraints
/// `⟨v,α⟩ > 0` for `α ∈ S`, the remaining `{α,-α}` pairs are oriented in id
/// order, trying the smaller id first and keeping it whenever the strict
/// system stays feasible.
pub fn find_positive_system<'a, R: Rational>(
    rs: &'a RootSystem<R>,
    s: &BTreeSet<RootId>,
) -> Result<Base<'a, R>, PositivityFailure> {
    for &id in s {
        if s.contains(&rs.neg_id(id)) {
            return Err(PositivityFailure::NotIsotropic(rs.root(id).to_string()));
        }
    }
    for &a in s {
        for &b in s {
            if let Some(sum) = rs.sum_id(a, b) {
                if !s.contains(&sum) {
                    return Err(PositivityFailure::NotClosed {
                        a: rs.root(a).to_string(),
                        b: rs.root(b).to_string(),
                        sum: rs.root(sum).to_string(),
                    });
                }
            }
        }
    }

    let mut oriented: BTreeSet<RootId> = s.clone();
    let mut rows: Vec<Vector<R>> = s.iter().map(|&id| rs.root(id).clone()).collect();
    if !strictly_feasible(&rows) {
        return Err(PositivityFailure::Infeasible);
    }
    for rep in rs.pair_representatives() {
        if oriented.contains(&rep) || oriented.contains(&rs.neg_id(rep)) {
            continue;
        }
        rows.push(rs.root(rep).clone());
        if strictly_feasible(&rows) {
            oriented.insert(rep);
        } else {
            // The open feasible cone lies strictly on the other side.
            rows.pop();
            rows.push(rs.root(rs.neg_id(rep)).clone());
            oriented.insert(rs.neg_id(rep));
            debug_assert!(strictly_feasible(&rows));
        }
    }
    let simple = indecomposables(rs, &oriented);
    let base = Base::new(rs, simple).map_err(|_| PositivityFailure::Infeasible)?;
    debug_assert_eq!(*base.positive_ids(), oriented);
    Ok(base)
}

/// Identify the Dynkin type of a linearly independent simple system: compute
/// its Cartan matrix, split into connected components and match each against
/// the simple-type catalog. The returned list is sorted.
///
/// B2 and C2 have isomorphic diagrams; the rank-2 double-edge component is
/// reported as B2 when its short root has squared length 1 (the B-family
/// normalization) and as C2 otherwise.
pub fn dynkin_type<R: Rational>(
    rs: &RootSystem<R>,
    system: &[Vector<R>],
) -> Result<Vec<SimpleType>, Error> {
    let n = system.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    for v in system {
        if v.dim() != rs.ambient_dim() {
            return Err(Error::Dimension {
                expected: rs.ambient_dim(),
                got: v.dim(),
            });
        }
        if v.is_zero() {
            return Err(Error::NotSimpleSystem("zero vector".into()));
        }
    }
    if !linearly_independent(system) {
        return Err(Error::NotSimpleSystem("linearly dependent".into()));
    }

    let norms: Vec<Sqrt3<R>> = system.iter().map(Vector::norm_sq).collect();
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let val = (Sqrt3::from_int(2) * system[i].dot(&system[j])) / norms[j].clone();
            let Some(k) = val.to_int() else {
                return Err(Error::NotSimpleSystem(format!(
                    "pairing of {} with {} is not an integer",
                    system[i], system[j]
                )));
            };
            cartan[i][j] = k;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (cartan[i][j], cartan[j][i]);
            let admissible =
                (a == 0 && b == 0) || (a < 0 && b < 0 && (1..=3).contains(&(a * b)));
            if !admissible {
                return Err(Error::NotSimpleSystem(format!(
                    "inadmissible Cartan entries ({a},{b}) between {} and {}",
                    system[i], system[j]
                )));
            }
        }
    }

    // Connected components of the diagram.
    let mut seen = vec![false; n];
    let mut types = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut component = vec![start];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    component.push(j);
                    queue.push(j);
                }
            }
        }
        component.sort();
        types.push(classify_component(&component, &cartan, &norms)?);
    }
    types.sort();
    Ok(types)
}

fn classify_component<R: Rational>(
    nodes: &[usize],
    cartan: &[Vec<i64>],
    norms: &[Sqrt3<R>],
) -> Result<SimpleType, Error> {
    let n = nodes.len();
    let fail = |msg: &str| Err(Error::NotSimpleSystem(msg.to_string()));
    if n == 1 {
        return SimpleType::new(TypeLabel::A, 1);
    }
    let mult = |i: usize, j: usize| cartan[nodes[i]][nodes[j]] * cartan[nodes[j]][nodes[i]];
    let degree = |i: usize| (0..n).filter(|&j| j != i && mult(i, j) != 0).count();
    let degrees: Vec<usize> = (0..n).map(degree).collect();

    let mut triple = 0;
    let mut double = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            match mult(i, j) {
                3 => triple += 1,
                2 => double += 1,
                _ => {}
            }
        }
    }

    if triple > 0 {
        return if n == 2 && triple == 1 {
            SimpleType::new(TypeLabel::G, 2)
        } else {
            fail("triple edge outside G2")
        };
    }

    let is_chain = degrees.iter().all(|&d| d <= 2) && degrees.iter().filter(|&&d| d == 1).count() == 2;

    if double > 0 {
        if double > 1 || !is_chain {
            return fail("several double edges or branching with a double edge");
        }
        if n == 2 {
            let short = norms[nodes[0]].clone().min(norms[nodes[1]].clone());
            return if short <= Sqrt3::from_int(1) {
                SimpleType::new(TypeLabel::B, 2)
            } else {
                SimpleType::new(TypeLabel::C, 2)
            };
        }
        let max_norm = (0..n).map(|i| norms[nodes[i]].clone()).max().unwrap();
        let long_count = (0..n).filter(|&i| norms[nodes[i]] == max_norm).count();
        let short_count = n - long_count;
        return if long_count == 2 && short_count == 2 && n == 4 {
            SimpleType::new(TypeLabel::F, 4)
        } else if long_count == 1 {
            SimpleType::new(TypeLabel::C, n)
        } else if short_count == 1 {
            SimpleType::new(TypeLabel::B, n)
        } else {
            fail("double-edge chain matches no B/C/F diagram")
        };
    }

    // Simply laced.
    match degrees.iter().max().unwrap() {
        0 | 1 | 2 if is_chain || n == 1 => SimpleType::new(TypeLabel::A, n),
        3 => {
            let centers: Vec<usize> = (0..n).filter(|&i| degrees[i] == 3).collect();
            if centers.len() != 1 {
                return fail("several branch nodes");
            }
            let center = centers[0];
            // Arm lengths measured in nodes, walking away from the center.
            let mut arms = Vec::new();
            for first in (0..n).filter(|&j| j != center && mult(center, j) != 0) {
                let mut len = 1;
                let mut prev = center;
                let mut cur = first;
                while let Some(next) = (0..n)
                    .find(|&j| j != prev && j != cur && mult(cur, j) != 0)
                {
                    len += 1;
                    prev = cur;
                    cur = next;
                }
                arms.push(len);
            }
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] => SimpleType::new(TypeLabel::D, k + 3),
                [1, 2, 2] => SimpleType::new(TypeLabel::E, 6),
                [1, 2, 3] => SimpleType::new(TypeLabel::E, 7),
                [1, 2, 4] => SimpleType::new(TypeLabel::E, 8),
                _ => fail("branching diagram matches no D/E type"),
            }
        }
        _ => fail("diagram matches no simple type"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::parse_vector_list;
    use num_rational::BigRational;

    type Rs = RootSystem<BigRational>;
    type V = Vector<BigRational>;

    fn system(s: &str) -> Rs {
        Rs::new(s.parse().unwrap())
    }

    fn v(s: &str) -> V {
        s.parse().unwrap()
    }

    fn vlist(s: &str) -> Vec<V> {
        parse_vector_list(s).unwrap()
    }

    #[test]
    fn catalog_counts_and_membership() {
        let g2 = system("G2");
        assert_eq!(g2.num_roots(), 12);
        for r in ["[0,2*r3]", "[3,1*r3]", "[2,0]", "[0,-2*r3]", "[-3,-1*r3]", "[-2,0]"] {
            assert!(g2.id_of(&v(r)).is_some(), "missing {r}");
        }
        let a3 = system("A3");
        assert_eq!(a3.num_roots(), 12);
        assert!(a3.id_of(&v("[1,0,0,-1]")).is_some());
        let c3 = system("C3");
        assert_eq!(c3.num_roots(), 18);
        for r in ["[2,0,0]", "[1,-1,0]", "[0,1,1]"] {
            assert!(c3.id_of(&v(r)).is_some(), "missing {r}");
        }
        assert_eq!(system("B2").num_roots(), 8);
        assert_eq!(system("F4").num_roots(), 48);
        assert_eq!(system("D4").num_roots(), 24);
    }

    #[test]
    fn invalid_types_rejected() {
        for bad in ["X9", "G3", "F5", "E9", "E5", "A0", "D3", "B1", "A99"] {
            assert!(bad.parse::<SimpleType>().is_err(), "{bad} should be invalid");
        }
        for good in ["A1", "a4", "B2", "C2", "D8", "e6", "F4", "G2"] {
            assert!(good.parse::<SimpleType>().is_ok(), "{good} should parse");
        }
    }

    #[test]
    fn cartan_pairing_examples() {
        let g2 = system("G2");
        let gamma = v("[0,2*r3]");
        assert_eq!(cartan_pairing(&g2, &gamma, &gamma).unwrap(), 2);
        assert_eq!(cartan_pairing(&g2, &v("[2,0]"), &gamma).unwrap(), 0);
        let a3 = system("A3");
        assert_eq!(
            cartan_pairing(&a3, &v("[1,-1,0,0]"), &v("[0,1,-1,0]")).unwrap(),
            -1
        );
        assert!(matches!(
            cartan_pairing(&a3, &v("[1,1,0,0]"), &v("[0,1,-1,0]")),
            Err(Error::NotARoot(_))
        ));
    }

    #[test]
    fn g2_base_positives_and_highest() {
        let g2 = system("G2");
        let base = validate_base(&g2, &vlist("[-3,1*r3],[2,0]")).unwrap();
        let positives: Vec<String> = base
            .positive_ids()
            .iter()
            .map(|&id| g2.root(id).to_string())
            .collect();
        // Emitted in root-id order (lexicographic on coordinates).
        let expected = vec![
            "[-3,1*r3]",
            "[-1,1*r3]",
            "[0,2*r3]",
            "[1,1*r3]",
            "[2,0]",
            "[3,1*r3]",
        ];
        assert_eq!(positives, expected);
        assert_eq!(base.highest_root().to_string(), "[0,2*r3]");
        assert_eq!(
            decompose(&base, &v("[0,2*r3]")).unwrap().coeffs(),
            &[2, 3]
        );
    }

    #[test]
    fn a3_base_and_failure_witness() {
        let a3 = system("A3");
        let base = validate_base(&a3, &vlist("[1,-1,0,0],[0,1,-1,0],[0,0,1,-1]")).unwrap();
        assert_eq!(base.highest_root().to_string(), "[1,0,0,-1]");
        assert_eq!(
            decompose(&base, &v("[1,0,0,-1]")).unwrap().coeffs(),
            &[1, 1, 1]
        );

        let err = validate_base(&a3, &vlist("[1,-1,0,0],[0,1,-1,0],[1,0,0,-1]")).unwrap_err();
        match err {
            Error::NotABase { witness } => assert_eq!(witness, "[0,-1,0,1]"),
            other => panic!("expected NotABase, got {other:?}"),
        }
    }

    #[test]
    fn decompose_examples() {
        let g2 = system("G2");
        let base = validate_base(&g2, &vlist("[-3,1*r3],[2,0]")).unwrap();
        assert_eq!(decompose(&base, &v("[1,1*r3]")).unwrap().coeffs(), &[1, 2]);
        // Simple roots decompose to unit vectors.
        assert_eq!(decompose(&base, &v("[-3,1*r3]")).unwrap().coeffs(), &[1, 0]);
        assert_eq!(decompose(&base, &v("[2,0]")).unwrap().coeffs(), &[0, 1]);

        let c3 = system("C3");
        let base = c3.catalog_base();
        assert_eq!(
            base.simple_ids()
                .iter()
                .map(|&id| c3.root(id).to_string())
                .collect::<Vec<_>>(),
            vec!["[1,-1,0]", "[0,1,-1]", "[0,0,2]"]
        );
        assert_eq!(decompose(&base, &v("[2,0,0]")).unwrap().coeffs(), &[2, 2, 1]);
        assert!(decompose(&base, &v("[1,1,1]")).is_err());
    }

    #[test]
    fn regular_vector_bases() {
        let a3 = system("A3");
        let base = base_from_regular_vector(&a3, &V::from_ints(&[3, 1, -1, -3])).unwrap();
        // Simple roots come out in id order.
        assert_eq!(
            base.simple_ids()
                .iter()
                .map(|&id| a3.root(id).to_string())
                .collect::<Vec<_>>(),
            vec!["[0,0,1,-1]", "[0,1,-1,0]", "[1,-1,0,0]"]
        );
        // Positive scaling leaves the base unchanged.
        let scaled = base_from_regular_vector(&a3, &V::from_ints(&[21, 7, -7, -21])).unwrap();
        assert_eq!(base.simple_ids(), scaled.simple_ids());

        let err = base_from_regular_vector(&a3, &V::from_ints(&[1, 1, 0, 0])).unwrap_err();
        match err {
            Error::NotRegular(root) => assert_eq!(root, "[-1,1,0,0]"),
            other => panic!("expected NotRegular, got {other:?}"),
        }

        // A regular vector recovering the G2 base above.
        let g2 = system("G2");
        let reg = v("[1,2*r3]");
        let base = base_from_regular_vector(&g2, &reg).unwrap();
        assert_eq!(
            base.simple_ids()
                .iter()
                .map(|&id| g2.root(id).to_string())
                .collect::<Vec<_>>(),
            vec!["[-3,1*r3]", "[2,0]"]
        );

        // Sum of fundamental coweights of the catalog base returns it (as a set).
        let c3 = system("C3");
        let cat = c3.catalog_base();
        let reg = V::from_ints(&[3, 2, 1]); // pairs positively exactly with the catalog positives
        let again = base_from_regular_vector(&c3, &reg).unwrap();
        assert_eq!(
            cat.simple_ids().iter().collect::<BTreeSet<_>>(),
            again.simple_ids().iter().collect::<BTreeSet<_>>()
        );
        assert_eq!(cat.positive_ids(), again.positive_ids());
    }

    #[test]
    fn positive_system_from_closed_set() {
        let g2 = system("G2");
        let base = validate_base(&g2, &vlist("[-3,1*r3],[2,0]")).unwrap();

        // The full positive set returns the same base.
        let s = base.positive_ids().clone();
        let found = find_positive_system(&g2, &s).unwrap();
        assert_eq!(found.simple_ids(), base.simple_ids());

        // The nilradical of p_2: all positives except the first simple root.
        let s: BTreeSet<RootId> = ["[-1,1*r3]", "[2,0]", "[1,1*r3]", "[0,2*r3]", "[3,1*r3]"]
            .iter()
            .map(|r| g2.id_of(&v(r)).unwrap())
            .collect();
        let found = find_positive_system(&g2, &s).unwrap();
        assert_eq!(
            found
                .simple_ids()
                .iter()
                .map(|&id| g2.root(id).to_string())
                .collect::<Vec<_>>(),
            vec!["[-3,1*r3]", "[2,0]"]
        );
        assert!(s.is_subset(found.positive_ids()));

        // {α, -α} violates isotropy.
        let alpha = g2.id_of(&v("[2,0]")).unwrap();
        let s = BTreeSet::from([alpha, g2.neg_id(alpha)]);
        assert!(matches!(
            find_positive_system(&g2, &s),
            Err(PositivityFailure::NotIsotropic(_))
        ));

        // An open set that is not closed under addition.
        let a3 = system("A3");
        let s: BTreeSet<RootId> = [v("[1,-1,0,0]"), v("[0,1,-1,0]")]
            .iter()
            .map(|r| a3.id_of(r).unwrap())
            .collect();
        assert!(matches!(
            find_positive_system(&a3, &s),
            Err(PositivityFailure::NotClosed { .. })
        ));
    }

    #[test]
    fn dynkin_identification() {
        let g2 = system("G2");
        assert_eq!(
            dynkin_type(&g2, &vlist("[2,0],[-3,1*r3]")).unwrap(),
            vec![SimpleType::new(TypeLabel::G, 2).unwrap()]
        );
        // (B - {δ}) ∪ {-γ} for the mark-3 root of G2 is an A2 system.
        assert_eq!(
            dynkin_type(&g2, &vlist("[-3,1*r3],[0,-2*r3]")).unwrap(),
            vec![SimpleType::new(TypeLabel::A, 2).unwrap()]
        );
        // Orthogonal roots split into two components.
        let a3 = system("A3");
        assert_eq!(
            dynkin_type(&a3, &vlist("[1,-1,0,0],[0,0,1,-1]")).unwrap(),
            vec![
                SimpleType::new(TypeLabel::A, 1).unwrap(),
                SimpleType::new(TypeLabel::A, 1).unwrap()
            ]
        );
        assert!(dynkin_type(&a3, &vlist("[1,-1,0,0],[1,-1,0,0]")).is_err());

        // The B2/C2 realizations are distinguished by their normalization.
        let b2 = system("B2");
        let ids = b2.catalog_base_ids().to_vec();
        let vecs: Vec<_> = ids.iter().map(|&id| b2.root(id).clone()).collect();
        assert_eq!(
            dynkin_type(&b2, &vecs).unwrap(),
            vec![SimpleType::new(TypeLabel::B, 2).unwrap()]
        );
        let c2 = system("C2");
        let vecs: Vec<_> = c2
            .catalog_base_ids()
            .iter()
            .map(|&id| c2.root(id).clone())
            .collect();
        assert_eq!(
            dynkin_type(&c2, &vecs).unwrap(),
            vec![SimpleType::new(TypeLabel::C, 2).unwrap()]
        );
    }

    #[test]
    fn catalog_base_identifies_as_own_type() {
        for name in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"] {
            let rs = system(name);
            let vecs: Vec<_> = rs
                .catalog_base_ids()
                .iter()
                .map(|&id| rs.root(id).clone())
                .collect();
            assert_eq!(
                dynkin_type(&rs, &vecs).unwrap(),
                vec![rs.stype()],
                "catalog base of {name}"
            );
        }
    }
}
