//! Exact coefficient fields.
//!
//! Everything in this crate is generic over [`Scalar`]. The rationals are the
//! field of record; the prime fields exist so that ranks can be cross-checked
//! cheaply.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field usable as a coefficient ring.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// Short label used in reports and cache keys.
    fn field_name() -> String;

    fn from_i64(v: i64) -> Self;

    /// Rescale a row by a nonzero constant so that its entries stay small.
    ///
    /// Over the rationals this clears denominators and divides out the
    /// content, so fraction-free elimination keeps integer rows. Over a prime
    /// field it makes the leading entry one.
    fn normalize_row(row: &mut [Self]);

    /// Integer value of the scalar, if it is one (used by serialization).
    fn to_i64(&self) -> Option<i64>;

    /// `(-1)^e` as a scalar.
    fn sign(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl Scalar for BigRational {
    fn field_name() -> String {
        "Q".to_string()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn normalize_row(row: &mut [Self]) {
        let mut lcm = BigInt::one();
        for v in row.iter().filter(|v| !v.is_zero()) {
            lcm = lcm.lcm(v.denom());
        }
        let mut gcd = BigInt::zero();
        for v in row.iter().filter(|v| !v.is_zero()) {
            let num = v.numer() * (&lcm / v.denom());
            gcd = gcd.gcd(&num);
        }
        if gcd.is_zero() {
            return;
        }
        let lead_negative = row
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.is_negative())
            .unwrap_or(false);
        if lead_negative {
            gcd = -gcd;
        }
        let factor = BigRational::new(lcm, gcd);
        if factor.is_one() {
            return;
        }
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = &*v * &factor;
            }
        }
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(self.numer()).ok()
        } else {
            None
        }
    }
}

/// Exact rationals that stay on machine integers while they fit and fall
/// back to [`BigRational`] when they do not.
///
/// The representation is canonical (reduced, positive denominator, small
/// whenever possible), so the derived equality and hash are value based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_i128(numer as i128, denom as i128)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new(n.into(), d.into()))),
        }
    }

    pub fn from_big(v: BigRational) -> Self {
        match (i64::try_from(v.numer()), i64::try_from(v.denom())) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(v)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(v) => v.clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(v) => v.is_integer(),
        }
    }

    fn big_op(&self, rhs: &Self, f: impl FnOnce(BigRational, BigRational) -> BigRational) -> Self {
        Self::from_big(f(self.to_big(), rhs.to_big()))
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{}", n),
            Repr::Small(n, d) => write!(f, "{}/{}", n, d),
            Repr::Big(v) => write!(f, "{}", v),
        }
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Self::from_big(v)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Rational(Repr::Small(s, 1)),
                None => Self::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => self.big_op(&rhs, |x, y| x + y),
        }
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        match self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, d)),
                None => Self::from_i128(-(n as i128), d as i128),
            },
            Repr::Big(v) => Self::from_big(-v),
        }
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Rational(Repr::Small(p, 1)),
                None => Self::from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => self.big_op(&rhs, |x, y| x * y),
        }
    }
}

impl Div for Rational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Self::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => self.big_op(&rhs, |x, y| x / y),
        }
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Self) {
        *self = std::mem::take(self) + rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Self) {
        *self = std::mem::take(self) - rhs;
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, rhs: Self) {
        *self = std::mem::take(self) * rhs;
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar for Rational {
    fn field_name() -> String {
        "Q".to_string()
    }

    fn from_i64(v: i64) -> Self {
        Rational(Repr::Small(v, 1))
    }

    fn normalize_row(row: &mut [Self]) {
        // integer rows on machine words are the common case
        let mut g: i128 = 0;
        let mut small = true;
        for v in row.iter() {
            match v.0 {
                Repr::Small(n, 1) => g = (n as i128).gcd(&g),
                Repr::Small(0, _) => {}
                _ => {
                    small = false;
                    break;
                }
            }
        }
        if small {
            if g == 0 {
                return;
            }
            let lead_negative = row
                .iter()
                .find(|v| !v.is_zero())
                .is_some_and(|v| matches!(v.0, Repr::Small(n, _) if n < 0));
            let g = if lead_negative { -g } else { g };
            if g != 1 {
                for v in row.iter_mut() {
                    if let Repr::Small(n, 1) = v.0 {
                        *v = Self::from_i128(n as i128 / g, 1);
                    }
                }
            }
            return;
        }
        let mut big: Vec<BigRational> = row.iter().map(Rational::to_big).collect();
        BigRational::normalize_row(&mut big);
        for (v, b) in row.iter_mut().zip(big) {
            *v = Self::from_big(b);
        }
    }

    fn to_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(n, 1) => Some(n),
            _ => None,
        }
    }
}

/// The prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let m = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp(acc as u64)
    }

    pub fn inverse(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{}", P);
        self.pow(P - 2)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse()
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field_name() -> String {
        format!("F{}", P)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn normalize_row(row: &mut [Self]) {
        if let Some(lead) = row.iter().find(|v| !v.is_zero()).copied() {
            if lead.0 != 1 {
                let inv = lead.inverse();
                for v in row.iter_mut() {
                    *v *= inv;
                }
            }
        }
    }

    fn to_i64(&self) -> Option<i64> {
        // symmetric representative
        let v = self.0 as i64;
        if v > (P / 2) as i64 {
            Some(v - P as i64)
        } else {
            Some(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        assert_eq!(F7::new(-1), F7::new(6));
        assert_eq!(F7::new(3) * F7::new(5), F7::new(1));
        assert_eq!(F7::new(1) / F7::new(3), F7::new(5));
        assert_eq!(-F7::new(0), F7::new(0));
    }

    #[test]
    fn rational_rows_become_primitive_integers() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let mut row = vec![r(-1, 2), r(0, 1), r(3, 4)];
        BigRational::normalize_row(&mut row);
        assert_eq!(row, vec![r(2, 1), r(0, 1), r(-3, 1)]);
    }

    fn edge_heavy() -> impl Strategy<Value = i64> {
        prop_oneof![
            -5i64..=5,
            -1_000_000i64..=1_000_000,
            (i64::MAX - 2)..=i64::MAX,
            i64::MIN..=(i64::MIN + 2),
            any::<i64>(),
        ]
    }

    proptest! {
        #[test]
        fn hybrid_rationals_agree_with_big_ones(
            a in edge_heavy(), b in edge_heavy(), c in edge_heavy(), d in edge_heavy()
        ) {
            prop_assume!(b != 0 && d != 0);
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let (bx, by) = (x.to_big(), y.to_big());
            prop_assert_eq!((x.clone() + y.clone()).to_big(), &bx + &by);
            prop_assert_eq!((x.clone() - y.clone()).to_big(), &bx - &by);
            prop_assert_eq!((x.clone() * y.clone()).to_big(), &bx * &by);
            if !y.is_zero() {
                prop_assert_eq!((x.clone() / y.clone()).to_big(), &bx / &by);
            }
            prop_assert_eq!((-x.clone()).to_big(), -bx.clone());
            // canonical form survives a round trip through the big type
            prop_assert_eq!(Rational::from_big(bx), x);
        }
    }

    #[test]
    fn hybrid_rows_normalize_like_big_rows() {
        let r = Rational::new;
        let mut row = vec![r(-1, 2), r(0, 1), r(3, 4)];
        Rational::normalize_row(&mut row);
        assert_eq!(row, vec![r(2, 1), r(0, 1), r(-3, 1)]);
        let mut row = vec![r(-6, 1), r(0, 1), r(9, 1)];
        Rational::normalize_row(&mut row);
        assert_eq!(row, vec![r(2, 1), r(0, 1), r(-3, 1)]);
        let mut row = vec![r(i64::MIN, 1), r(2, 1)];
        Rational::normalize_row(&mut row);
        assert_eq!(
            row,
            vec![
                Rational::from_big(BigRational::from_integer(BigInt::from(i64::MIN / -2))),
                r(-1, 1)
            ]
        );
    }

    #[test]
    fn sign_helper() {
        assert_eq!(BigRational::sign(-3), -BigRational::one());
        assert_eq!(F7::sign(4), F7::one());
    }
}
