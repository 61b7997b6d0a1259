//! Exact scalar arithmetic for root coordinates.
//!
//! Every coordinate lives in the real quadratic field ℚ(√3), stored as a pair
//! of rationals `a + b√3`. The irrational part is only ever nonzero for the
//! planar realization of G₂; all other catalog systems are purely rational.
//! Comparison, equality and sign are decided exactly: `a + b√3 = 0` iff
//! `a = b = 0`, and the sign of a mixed value is settled by comparing `a²`
//! with `3b²`.
//!
//! The rational component type is generic so the same code runs over
//! machine-word rationals (`Ratio<i64>`) or arbitrary precision
//! (`BigRational`). Concrete aliases live at the crate root.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Num, Signed};

use crate::Error;

/// Exact rational coefficient field.
///
/// `Num + Signed + Ord` gives field arithmetic with decidable comparison;
/// the two extra methods convert to and from machine integers, which is how
/// Cartan integers and grading levels are extracted.
pub trait Rational:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + FromStr + Num + Signed + 'static
{
    fn from_int(n: i64) -> Self;

    /// `Some(n)` iff the value is an integer that fits in `i64`.
    fn to_int(&self) -> Option<i64>;
}

impl Rational for num_rational::Ratio<i64> {
    fn from_int(n: i64) -> Self {
        num_rational::Ratio::from_integer(n)
    }

    fn to_int(&self) -> Option<i64> {
        self.is_integer().then(|| *self.numer())
    }
}

impl Rational for num_rational::BigRational {
    fn from_int(n: i64) -> Self {
        num_rational::BigRational::from_integer(n.into())
    }

    fn to_int(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.is_integer().then(|| self.numer().to_i64()).flatten()
    }
}

/// An element `a + b√3` of ℚ(√3).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sqrt3<R> {
    rat: R,
    irr: R,
}

impl<R: Rational> Sqrt3<R> {
    pub fn new(rat: R, irr: R) -> Self {
        Sqrt3 { rat, irr }
    }

    pub fn from_int(n: i64) -> Self {
        Sqrt3::new(R::from_int(n), R::zero())
    }

    pub fn rational(r: R) -> Self {
        Sqrt3::new(r, R::zero())
    }

    /// `n√3`.
    pub fn sqrt3_times(n: i64) -> Self {
        Sqrt3::new(R::zero(), R::from_int(n))
    }

    pub fn half(n: i64) -> Self {
        Sqrt3::new(R::from_int(n) / R::from_int(2), R::zero())
    }

    pub fn zero() -> Self {
        Sqrt3::new(R::zero(), R::zero())
    }

    pub fn one() -> Self {
        Sqrt3::new(R::one(), R::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn rat_part(&self) -> &R {
        &self.rat
    }

    pub fn irr_part(&self) -> &R {
        &self.irr
    }

    /// `Some(n)` iff the value is a machine integer.
    pub fn to_int(&self) -> Option<i64> {
        self.irr.is_zero().then(|| self.rat.to_int()).flatten()
    }

    /// Exact sign relative to zero.
    ///
    /// For mixed signs of the two components, `a + b√3 > 0` reduces to
    /// comparing `a²` with `3b²`; equality there would force `√3` rational,
    /// so it cannot occur for nonzero components.
    pub fn sign(&self) -> Ordering {
        let zero = R::zero();
        let sr = self.rat.cmp(&zero);
        let si = self.irr.cmp(&zero);
        match (sr, si) {
            (Ordering::Equal, s) => s,
            (s, Ordering::Equal) => s,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            _ => {
                let a2 = self.rat.clone() * self.rat.clone();
                let b23 = R::from_int(3) * self.irr.clone() * self.irr.clone();
                match a2.cmp(&b23) {
                    Ordering::Equal => unreachable!("a^2 = 3 b^2 has no nonzero rational solution"),
                    Ordering::Greater => sr,
                    Ordering::Less => si,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/(a + b√3) = (a - b√3)/(a² - 3b²)
        let norm = self.rat.clone() * self.rat.clone()
            - R::from_int(3) * self.irr.clone() * self.irr.clone();
        debug_assert!(!norm.is_zero());
        Some(Sqrt3::new(
            self.rat.clone() / norm.clone(),
            -self.irr.clone() / norm,
        ))
    }
}

impl<R: Rational> Add for Sqrt3<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Sqrt3::new(self.rat + rhs.rat, self.irr + rhs.irr)
    }
}

impl<R: Rational> Sub for Sqrt3<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Sqrt3::new(self.rat - rhs.rat, self.irr - rhs.irr)
    }
}

impl<R: Rational> Mul for Sqrt3<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + b√3)(c + d√3) = ac + 3bd + (ad + bc)√3
        let rat = self.rat.clone() * rhs.rat.clone()
            + R::from_int(3) * self.irr.clone() * rhs.irr.clone();
        let irr = self.rat * rhs.irr + self.irr * rhs.rat;
        Sqrt3::new(rat, irr)
    }
}

impl<R: Rational> Div for Sqrt3<R> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inverse().expect("division by zero in Sqrt3");
        self * inv
    }
}

impl<R: Rational> Neg for Sqrt3<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Sqrt3::new(-self.rat, -self.irr)
    }
}

impl<R: Rational> PartialOrd for Sqrt3<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: Rational> Ord for Sqrt3<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

/// Textual form: `p`, `p/q`, `q*r3`, `p+q*r3` or `p-q*r3`.
impl<R: Rational> fmt::Display for Sqrt3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}*r3", self.irr)
        } else if self.irr.is_negative() {
            write!(f, "{}-{}*r3", self.rat, self.irr.abs())
        } else {
            write!(f, "{}+{}*r3", self.rat, self.irr)
        }
    }
}

impl<R: Rational> fmt::Debug for Sqrt3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_frac<R: Rational>(s: &str) -> Result<R, Error> {
    s.parse::<R>()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))
}

impl<R: Rational> FromStr for Sqrt3<R> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(head) = s.strip_suffix("*r3") else {
            return Ok(Sqrt3::rational(parse_frac(s)?));
        };
        // Split `p+q` / `p-q` at the rightmost sign that follows a digit, so
        // leading signs and `p/q` denominators stay intact.
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit());
        match split {
            Some(i) => {
                let rat = parse_frac(&head[..i])?;
                let mut irr: R = parse_frac(&head[i + 1..])?;
                if bytes[i] == b'-' {
                    irr = -irr;
                }
                Ok(Sqrt3::new(rat, irr))
            }
            None => Ok(Sqrt3::new(R::zero(), parse_frac(head)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    type S = Sqrt3<BigRational>;

    fn s(rat: i64, irr: i64) -> S {
        Sqrt3::new(Rational::from_int(rat), Rational::from_int(irr))
    }

    #[test]
    fn field_arithmetic() {
        let x = s(1, 2); // 1 + 2√3
        let y = s(3, -1); // 3 - √3
        assert_eq!(x.clone() + y.clone(), s(4, 1));
        assert_eq!(x.clone() * y.clone(), s(-3, 5)); // 3 - √3 + 6√3 - 6 = -3 + 5√3
        let q = x.clone() / y.clone();
        assert_eq!(q * y, x);
    }

    #[test]
    fn sign_is_exact() {
        assert_eq!(s(0, 0).sign(), Ordering::Equal);
        assert!(s(2, -1).is_positive()); // 2 - √3 > 0
        assert!(s(-2, 1).is_negative());
        assert!(s(1, -1).is_negative()); // 1 - √3 < 0
        assert!(s(-1, 1).is_positive());
        assert!(s(-5, 3).is_positive()); // 3√3 ≈ 5.196
        assert!(s(5, -3).is_negative());
    }

    #[test]
    fn ordering_matches_real_values() {
        let mut vals = vec![s(2, 0), s(0, 1), s(-1, 1), s(3, -1), s(0, 0)];
        vals.sort();
        // -1+√3 ≈ 0.73, √3 ≈ 1.73, 3-√3 ≈ 1.27, 2
        assert_eq!(vals, vec![s(0, 0), s(-1, 1), s(3, -1), s(0, 1), s(2, 0)]);
    }

    #[test]
    fn display_round_trip() {
        for v in [s(3, 0), s(0, 1), s(-3, 0), s(0, -2), s(3, 1), s(-1, -1), s(2, -3)] {
            let text = v.to_string();
            assert_eq!(text.parse::<S>().unwrap(), v, "round-trip of {text}");
        }
        assert_eq!(s(3, 1).to_string(), "3+1*r3");
        assert_eq!(s(1, -1).to_string(), "1-1*r3");
        assert_eq!(s(0, -2).to_string(), "-2*r3");
        let half: S = "1/2".parse().unwrap();
        assert_eq!(half + "1/2".parse::<S>().unwrap(), s(1, 0));
    }

    #[test]
    fn to_int_detects_integers() {
        assert_eq!(s(-3, 0).to_int(), Some(-3));
        assert_eq!(s(1, 1).to_int(), None);
        let half: S = "1/2".parse().unwrap();
        assert_eq!(half.to_int(), None);
    }

    #[test]
    fn works_over_machine_rationals() {
        let x: Sqrt3<Ratio<i64>> = "3-1*r3".parse().unwrap();
        let y: Sqrt3<Ratio<i64>> = "1*r3".parse().unwrap();
        assert_eq!((x * y).to_string(), "-3+3*r3");
    }
}
