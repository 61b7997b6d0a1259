//! Coordinate vectors over ℚ(√3) and the exact linear algebra behind base
//! validation: Gaussian elimination, linear solves and Gram matrix inversion.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use crate::scalar::{Rational, Sqrt3};
use crate::Error;

/// A coordinate vector. Ordering is lexicographic, which fixes the canonical
/// numbering of roots everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<R: Rational>(Vec<Sqrt3<R>>);

impl<R: Rational> Vector<R> {
    pub fn new(coords: Vec<Sqrt3<R>>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Sqrt3::zero(); dim])
    }

    /// Standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Sqrt3::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| Sqrt3::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Sqrt3<R>] {
        &self.0
    }

    pub fn set(&mut self, i: usize, value: Sqrt3<R>) {
        self.0[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Sqrt3::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Sqrt3<R> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot product");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Sqrt3::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm_sq(&self) -> Sqrt3<R> {
        self.dot(self)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, factor: &Sqrt3<R>) -> Self {
        Vector(self.0.iter().map(|a| a.clone() * factor.clone()).collect())
    }
}

impl<R: Rational> Index<usize> for Vector<R> {
    type Output = Sqrt3<R>;
    fn index(&self, i: usize) -> &Sqrt3<R> {
        &self.0[i]
    }
}

/// Textual form: `[c1,...,ck]` with each coordinate in scalar syntax, e.g.
/// the G₂ root `(3, √3)` prints as `[3,1*r3]`.
impl<R: Rational> fmt::Display for Vector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<R: Rational> fmt::Debug for Vector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Rational> FromStr for Vector<R> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("vector `{s}` must be bracketed")))?;
        if inner.trim().is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        let coords = inner
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Vector(coords))
    }
}

/// Parse a comma-separated list of bracketed vectors, e.g. `[-3,1*r3],[2,0]`.
pub fn parse_vector_list<R: Rational>(s: &str) -> Result<Vec<Vector<R>>, Error> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced brackets".into()))?
            }
            ',' if depth == 0 => {
                out.push(s[start..i].parse()?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    out.push(s[start..].parse()?);
    Ok(out)
}

/// Row echelon reduction in place; returns the rank.
fn row_reduce<R: Rational>(rows: &mut [Vector<R>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].dim();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].inverse().unwrap();
        let scaled = rows[pivot_row].scale(&inv);
        rows[pivot_row] = scaled;
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                rows[r] = rows[r].sub(&rows[pivot_row].scale(&factor));
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    pivot_row
}

pub fn rank<R: Rational>(vectors: &[Vector<R>]) -> usize {
    let mut rows: Vec<Vector<R>> = vectors.to_vec();
    row_reduce(&mut rows)
}

pub fn linearly_independent<R: Rational>(vectors: &[Vector<R>]) -> bool {
    rank(vectors) == vectors.len()
}

/// Solve `Σ x_j columns[j] = target` exactly. `None` if inconsistent or if
/// the solution is not unique.
pub fn solve_in_span<R: Rational>(
    columns: &[Vector<R>],
    target: &Vector<R>,
) -> Option<Vec<Sqrt3<R>>> {
    let k = columns.len();
    if k == 0 {
        return target.is_zero().then(Vec::new);
    }
    let dim = columns[0].dim();
    // Augmented rows: one equation per ambient coordinate.
    let mut rows: Vec<Vector<R>> = (0..dim)
        .map(|i| {
            let mut coords: Vec<Sqrt3<R>> = columns.iter().map(|c| c[i].clone()).collect();
            coords.push(target[i].clone());
            Vector::new(coords)
        })
        .collect();
    let _ = row_reduce(&mut rows);
    let mut solution = vec![Sqrt3::zero(); k];
    let mut pivots_seen = 0;
    for row in &rows {
        let Some(lead) = (0..=k).find(|&c| !row[c].is_zero()) else {
            continue;
        };
        if lead == k {
            return None; // 0 = nonzero: inconsistent
        }
        // After full reduction each pivot row reads x_lead = row[k].
        solution[lead] = row[k].clone();
        pivots_seen += 1;
    }
    if pivots_seen < k {
        return None; // underdetermined
    }
    Some(solution)
}

/// Invert the Gram matrix `⟨v_i, v_j⟩` of a linearly independent family.
pub fn gram_inverse<R: Rational>(vectors: &[Vector<R>]) -> Option<Vec<Vec<Sqrt3<R>>>> {
    let n = vectors.len();
    // [G | I] Gauss-Jordan.
    let mut rows: Vec<Vector<R>> = (0..n)
        .map(|i| {
            let mut coords: Vec<Sqrt3<R>> =
                (0..n).map(|j| vectors[i].dot(&vectors[j])).collect();
            coords.extend((0..n).map(|j| {
                if i == j {
                    Sqrt3::one()
                } else {
                    Sqrt3::zero()
                }
            }));
            Vector::new(coords)
        })
        .collect();
    if row_reduce(&mut rows) < n {
        return None;
    }
    Some(
        rows.iter()
            .map(|row| (n..2 * n).map(|j| row[j].clone()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type V = Vector<BigRational>;

    #[test]
    fn parse_and_print() {
        let v: V = "[-3,1*r3]".parse().unwrap();
        assert_eq!(v.to_string(), "[-3,1*r3]");
        let list = parse_vector_list::<BigRational>("[-3,1*r3],[2,0]").unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[1].to_string(), "[2,0]");
        assert!(parse_vector_list::<BigRational>("[1,2],[3").is_err());
    }

    #[test]
    fn solve_exactly() {
        let cols = vec![V::from_ints(&[1, -1, 0]), V::from_ints(&[0, 1, -1])];
        let target = V::from_ints(&[1, 0, -1]);
        let x = solve_in_span(&cols, &target).unwrap();
        assert_eq!(x, vec![Sqrt3::from_int(1), Sqrt3::from_int(1)]);
        assert!(solve_in_span(&cols, &V::from_ints(&[0, 0, 1])).is_none());
    }

    #[test]
    fn rank_and_independence() {
        let vs = vec![
            V::from_ints(&[1, -1, 0, 0]),
            V::from_ints(&[0, 1, -1, 0]),
            V::from_ints(&[1, 0, -1, 0]),
        ];
        assert_eq!(rank(&vs), 2);
        assert!(!linearly_independent(&vs));
        assert!(linearly_independent(&vs[..2]));
    }

    #[test]
    fn gram_inverse_reconstructs() {
        let vs = vec![V::from_ints(&[1, -1, 0]), V::from_ints(&[0, 1, -1])];
        let inv = gram_inverse(&vs).unwrap();
        // G = [[2,-1],[-1,2]], G⁻¹ = 1/3 [[2,1],[1,2]]
        let third: Sqrt3<BigRational> = "1/3".parse().unwrap();
        assert_eq!(inv[0][0], third.clone() * Sqrt3::from_int(2));
        assert_eq!(inv[0][1], third);
    }
}
