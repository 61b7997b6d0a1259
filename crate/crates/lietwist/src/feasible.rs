//! Exact Fourier–Motzkin elimination for homogeneous systems of strict
//! inequalities `a·v > 0`.
//!
//! Everything here is scale-invariant, so rows are normalized by their first
//! nonzero entry and deduplicated between elimination steps to keep the
//! quadratic blowup in check. A system is infeasible exactly when elimination
//! derives the empty constraint `0 > 0`.

use std::collections::BTreeSet;

use crate::scalar::Rational;
use crate::vector::Vector;

fn normalize<R: Rational>(row: &Vector<R>) -> Vector<R> {
    let lead = row.coords().iter().find(|c| !c.is_zero());
    match lead {
        Some(c) => row.scale(&c.abs().inverse().unwrap()),
        None => row.clone(),
    }
}

/// Is there a `v` with `row · v > 0` for every row?
pub fn strictly_feasible<R: Rational>(rows: &[Vector<R>]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let dim = rows[0].dim();
    let mut current: BTreeSet<Vector<R>> = BTreeSet::new();
    for row in rows {
        if row.is_zero() {
            return false;
        }
        current.insert(normalize(row));
    }
    for var in (0..dim).rev() {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut next: BTreeSet<Vector<R>> = BTreeSet::new();
        for row in current {
            match row[var].sign() {
                std::cmp::Ordering::Greater => positive.push(row),
                std::cmp::Ordering::Less => negative.push(row),
                std::cmp::Ordering::Equal => {
                    next.insert(row);
                }
            }
        }
        // Rows with only one sign of the pivot are always satisfiable by
        // pushing the variable; only opposing pairs leave a residue.
        for p in &positive {
            for n in &negative {
                let combined = p.scale(&n[var].abs()).add(&n.scale(&p[var]));
                debug_assert!(combined[var].is_zero());
                if combined.is_zero() {
                    return false;
                }
                next.insert(normalize(&combined));
            }
        }
        current = next;
    }
    debug_assert!(current.is_empty());
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type V = Vector<BigRational>;

    #[test]
    fn opposite_pair_is_infeasible() {
        let rows = vec![V::from_ints(&[1, 2]), V::from_ints(&[-1, -2])];
        assert!(!strictly_feasible(&rows));
    }

    #[test]
    fn chamber_is_feasible() {
        // x > y > z > 0 style system.
        let rows = vec![
            V::from_ints(&[1, -1, 0]),
            V::from_ints(&[0, 1, -1]),
            V::from_ints(&[0, 0, 1]),
        ];
        assert!(strictly_feasible(&rows));
    }

    #[test]
    fn cyclic_dominance_is_infeasible() {
        // x > y, y > z, z > x
        let rows = vec![
            V::from_ints(&[1, -1, 0]),
            V::from_ints(&[0, 1, -1]),
            V::from_ints(&[-1, 0, 1]),
        ];
        assert!(!strictly_feasible(&rows));
    }

    #[test]
    fn open_halfplane_boundary_excluded() {
        // x > 0 and -x > 0 share the boundary point only.
        let rows = vec![V::from_ints(&[1, 0]), V::from_ints(&[-1, 0])];
        assert!(!strictly_feasible(&rows));
        // but x > 0, y > 0, x + y > 0 is fine
        let rows = vec![
            V::from_ints(&[1, 0]),
            V::from_ints(&[0, 1]),
            V::from_ints(&[1, 1]),
        ];
        assert!(strictly_feasible(&rows));
    }
}
