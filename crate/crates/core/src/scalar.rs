//! Exact scalars: arbitrary-precision rationals and the real quadratic field
//! `Q(sqrt 5)`, which is all the coefficient arithmetic the crate needs.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ScalarError;

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, ScalarError> {
        if denom == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
    };
}
rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// An element of `Q(sqrt 5)`.
///
/// The `QuadExt` variant always carries a nonzero irrational part, so the
/// derived equality and hashing agree with equality of real numbers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(Rational),
    /// `a + b * sqrt(5)` with `b != 0`.
    QuadExt(Rational, Rational),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn quad(a: Rational, b: Rational) -> Self {
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::QuadExt(a, b)
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::Rational(Rational::from_integer(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self, ScalarError> {
        Rational::new(n, d).map(Scalar::Rational)
    }

    pub fn sqrt5() -> Self {
        Scalar::QuadExt(Rational::default(), Rational::from_integer(1))
    }

    /// The golden ratio `(1 + sqrt 5) / 2 = 2 cos(pi/5)`.
    pub fn golden_ratio() -> Self {
        let half = Rational::new(1, 2).unwrap();
        Scalar::QuadExt(half.clone(), half)
    }

    pub fn rational_part(&self) -> Rational {
        match self {
            Scalar::Rational(a) | Scalar::QuadExt(a, _) => a.clone(),
        }
    }

    pub fn sqrt5_part(&self) -> Rational {
        match self {
            Scalar::Rational(_) => Rational::default(),
            Scalar::QuadExt(_, b) => b.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(a) => Some(a),
            Scalar::QuadExt(..) => None,
        }
    }

    /// Exact sign of the real number, in `{-1, 0, 1}`.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(a) => a.signum(),
            Scalar::QuadExt(a, b) => {
                let (sa, sb) = (a.signum(), b.signum());
                if sa == 0 || sa == sb {
                    return sb;
                }
                // opposite signs: compare a^2 with 5 b^2 (never equal for b != 0)
                let a2 = a * a;
                let b2 = &(b * b) * &Rational::from_integer(5);
                if a2 > b2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    /// Field norm `a^2 - 5 b^2` down to `Q`.
    pub fn norm(&self) -> Rational {
        match self {
            Scalar::Rational(a) => a * a,
            Scalar::QuadExt(a, b) => &(a * a) - &(&(b * b) * &Rational::from_integer(5)),
        }
    }

    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::QuadExt(a, b) => Scalar::QuadExt(a.clone(), -b),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(a) => a.inv().map(Scalar::Rational),
            Scalar::QuadExt(a, b) => {
                let n = self.norm().inv()?;
                Ok(Scalar::quad(a * &n, -(b * &n)))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rational(Rational::default())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(a) if a.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_integer(1)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(c)) => Scalar::Rational(a + c),
            _ => Scalar::quad(
                &self.rational_part() + &rhs.rational_part(),
                &self.sqrt5_part() + &rhs.sqrt5_part(),
            ),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(c)) => Scalar::Rational(a - c),
            _ => Scalar::quad(
                &self.rational_part() - &rhs.rational_part(),
                &self.sqrt5_part() - &rhs.sqrt5_part(),
            ),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(c)) => Scalar::Rational(a * c),
            (Scalar::Rational(a), Scalar::QuadExt(c, d))
            | (Scalar::QuadExt(c, d), Scalar::Rational(a)) => Scalar::quad(a * c, a * d),
            (Scalar::QuadExt(a, b), Scalar::QuadExt(c, d)) => {
                // (a + b r)(c + d r) = (ac + 5bd) + (ad + bc) r
                let five = Rational::from_integer(5);
                Scalar::quad(&(a * c) + &(&five * &(b * d)), &(a * d) + &(b * c))
            }
        }
    }
}

/// Panics on division by zero, like integer division; use
/// [`Scalar::checked_div`] when the divisor may vanish.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::QuadExt(a, b) => Scalar::QuadExt(-a, -b),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(c)) => a.0 += &c.0,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(c)) => a.0 -= &c.0,
            _ => *self = &*self - rhs,
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

/// Canonical text: `p/q` (or `p` for integers) and `a+b*sqrt5` / `a-b*sqrt5`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(a) => write!(f, "{a}"),
            Scalar::QuadExt(a, b) => {
                if b.signum() < 0 {
                    write!(f, "{a}-{}*sqrt5", b.abs())
                } else {
                    write!(f, "{a}+{b}*sqrt5")
                }
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(head) = t.strip_suffix("sqrt5") else {
            return t.parse().map(Scalar::Rational);
        };
        let head = head.strip_suffix('*').unwrap_or(head);
        // split "a+b" / "a-b" at the last sign that is not a leading sign
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .rfind(|&i| !head[..i].ends_with('/'));
        let (a, b) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let b = match b {
            "" | "+" => "1",
            "-" => "-1",
            b => b.strip_prefix('+').unwrap_or(b),
        };
        let a: Rational = a.parse()?;
        let b: Rational = b.parse()?;
        Ok(Scalar::quad(a, b))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
