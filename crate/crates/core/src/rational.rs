//! Arbitrary-precision rationals with an inline fast path.
//!
//! Almost every coefficient that shows up in the cocycle computations is a
//! small integer, so values are kept as a reduced `i64` pair until an
//! operation overflows, at which point they move to `BigInt`. Canonical form
//! is maintained eagerly: a value that fits in `i64` is never stored big,
//! which keeps derived equality sound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    /// numerator, denominator (> 0), coprime
    Small(i64, i64),
    /// numerator, denominator (> 0), coprime, not representable as `Small`
    Big(BigInt, BigInt),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    /// Builds `num/den`, reducing and normalizing the sign.
    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Rational::ZERO;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational::Small(a, b),
            _ => Rational::Big(BigInt::from(n), BigInt::from(d)),
        }
    }

    pub fn from_bigints(n: BigInt, d: BigInt) -> Result<Self, Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canon_big(n, d))
    }

    fn canon_big(mut n: BigInt, mut d: BigInt) -> Self {
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_one() && !g.is_zero() {
            n /= &g;
            d /= &g;
        }
        if n.is_zero() {
            return Rational::ZERO;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(a), Some(b)) => Rational::Small(a, b),
            _ => Rational::Big(n, d),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().0
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().1
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(n, _) => {
                if n.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        match self {
            Rational::Small(0, _) => Err(Error::DivisionByZero),
            Rational::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Rational::Big(n, d) => Ok(Self::canon_big(d.clone(), n.clone())),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small(0, _), _) => other.clone(),
            (_, Rational::Small(0, _)) => self.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    return Self::from_i128(a + c, b);
                }
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => {
                let (a, b) = self.to_big();
                let (c, d) = other.to_big();
                Self::canon_big(a * &d + c * &b, b * d)
            }
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::ZERO,
            (Rational::Small(1, 1), _) => other.clone(),
            (_, Rational::Small(1, 1)) => self.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == 1 && d == 1 {
                    let p = a * c;
                    return match i64::try_from(p) {
                        Ok(v) => Rational::Small(v, 1),
                        Err(_) => Rational::Big(BigInt::from(p), BigInt::one()),
                    };
                }
                Self::from_i128(a * c, b * d)
            }
            _ => {
                let (a, b) = self.to_big();
                let (c, d) = other.to_big();
                Self::canon_big(a * c, b * d)
            }
        }
    }

    pub fn neg_ref(&self) -> Self {
        match self {
            Rational::Small(n, d) => {
                if *n == i64::MIN {
                    Self::canon_big(-BigInt::from(*n), BigInt::from(*d))
                } else {
                    Rational::Small(-n, *d)
                }
            }
            Rational::Big(n, d) => Self::canon_big(-n.clone(), d.clone()),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        self.add_ref(rhs)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self.sub_ref(rhs)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        self.mul_ref(rhs)
    }
}

impl Div for &Rational {
    type Output = Result<Rational, Error>;
    fn div(self, rhs: &Rational) -> Result<Rational, Error> {
        Ok(self.mul_ref(&rhs.inv()?))
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        (a * d).cmp(&(c * b))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(n, d) if d.is_one() => write!(f, "{n}"),
            Rational::Big(n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::from_bigints(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational::canon_big(n, BigInt::one()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(Rational::new(4, -6).unwrap(), Rational::Small(-2, 3));
        assert_eq!(Rational::new(0, -5).unwrap(), Rational::ZERO);
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = big.mul_ref(&big);
        assert!(matches!(sq, Rational::Big(..)));
        let back = (&sq / &big).unwrap();
        assert_eq!(back, big);
        let min = Rational::from_int(i64::MIN);
        assert_eq!(min.neg_ref().neg_ref(), min);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3", "-7/12", "123456789012345678901234567891/2"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("6/4".parse::<Rational>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering() {
        let a = Rational::new(1, 3).unwrap();
        let b = Rational::new(1, 2).unwrap();
        assert!(a < b);
        assert!(a.neg_ref() > b.neg_ref());
    }
}
