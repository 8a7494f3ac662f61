//! Gaussian rationals: exact elements `re + im·i` of ℚ(i).
//!
//! Every identity checked by this crate is a polynomial identity with rational
//! coefficients, so evaluating it exactly at Gaussian-rational points is enough
//! to exercise the complex structure without symbolic arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact element of ℚ(i).
///
/// Values whose common-denominator form `(re + im·i)/den` fits in `i64` are
/// stored inline and combined with checked `i128` arithmetic; anything larger
/// is promoted to a pair of `BigRational`s. The representation is canonical:
/// a value is `Big` only when it has no `Small` form, so derived equality and
/// hashing agree with equality of field elements.
#[derive(Clone)]
pub struct ExactScalar(Repr);

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    /// `gcd(re, im, den) = 1`, `den > 0`, no component equal to `i64::MIN`.
    Small { re: i64, im: i64, den: i64 },
    Big { re: BigRational, im: BigRational },
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return (a as u64).gcd(&(b as u64)) as i128;
    }
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

fn fits(v: i128) -> Option<i64> {
    if v > i64::MIN as i128 && v <= i64::MAX as i128 {
        Some(v as i64)
    } else {
        None
    }
}

impl ExactScalar {
    /// Builds from a reduced-or-not `i128` triple; `den` must be nonzero.
    fn from_i128(mut re: i128, mut im: i128, mut den: i128) -> Self {
        if den < 0 {
            (re, im, den) = (-re, -im, -den);
        }
        let g = gcd128(gcd128(re, im), den);
        if g > 1 {
            re /= g;
            im /= g;
            den /= g;
        }
        match (fits(re), fits(im), fits(den)) {
            (Some(re), Some(im), Some(den)) => ExactScalar(Repr::Small { re, im, den }),
            _ => ExactScalar(Repr::Big {
                re: BigRational::new(re.into(), den.into()),
                im: BigRational::new(im.into(), den.into()),
            }),
        }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let rn = re.numer() * (&den / re.denom());
        let inum = im.numer() * (&den / im.denom());
        match (rn.to_i128(), inum.to_i128(), den.to_i128()) {
            (Some(a), Some(b), Some(d)) => {
                let s = Self::from_i128(a, b, d);
                if matches!(s.0, Repr::Small { .. }) {
                    return s;
                }
                ExactScalar(Repr::Big { re, im })
            }
            _ => ExactScalar(Repr::Big { re, im }),
        }
    }

    pub fn zero() -> Self {
        ExactScalar(Repr::Small { re: 0, im: 0, den: 1 })
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit of the base field (not an algebra basis element).
    pub fn i() -> Self {
        ExactScalar(Repr::Small { re: 0, im: 1, den: 1 })
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_i128(n as i128, 0, 1)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::new(BigRational::from_integer(n), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::gaussian(num, den, 0, 1)
    }

    /// `a/b + (c/d)·i`. Panics on a zero denominator.
    pub fn gaussian(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(b != 0 && d != 0, "zero denominator");
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        Self::from_i128(a * d, c * b, b * d)
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn re(&self) -> BigRational {
        match &self.0 {
            Repr::Small { re, den, .. } => BigRational::new((*re).into(), (*den).into()),
            Repr::Big { re, .. } => re.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match &self.0 {
            Repr::Small { im, den, .. } => BigRational::new((*im).into(), (*den).into()),
            Repr::Big { im, .. } => im.clone(),
        }
    }

    fn big_parts(&self) -> (BigRational, BigRational) {
        (self.re(), self.im())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { re: 0, im: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { re: 1, im: 0, den: 1 })
    }

    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small { im, .. } => *im == 0,
            Repr::Big { im, .. } => im.is_zero(),
        }
    }

    /// The integer value, if this is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small { re, im: 0, den: 1 } => Some(re),
            _ => None,
        }
    }

    /// Complex conjugate in the base field. Not to be confused with the
    /// ℂ-linear conjugation of a composition algebra.
    pub fn complex_conj(&self) -> Self {
        match &self.0 {
            Repr::Small { re, im, den } => ExactScalar(Repr::Small { re: *re, im: -im, den: *den }),
            Repr::Big { re, im } => ExactScalar(Repr::Big { re: re.clone(), im: -im }),
        }
    }

    /// `re² + im²`, the field norm ℚ(i) → ℚ.
    pub fn field_norm(&self) -> BigRational {
        let (re, im) = self.big_parts();
        &re * &re + &im * &im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Repr::Small { re, im, den } = self.0 {
            // den / (re + im·i) = den·(re − im·i) / (re² + im²)
            let (re, im, den) = (re as i128, im as i128, den as i128);
            if let Some(n) = re.checked_mul(re).and_then(|a| im.checked_mul(im).and_then(|b| a.checked_add(b))) {
                if let (Some(a), Some(b)) = (den.checked_mul(re), den.checked_mul(-im)) {
                    return Some(Self::from_i128(a, b, n));
                }
            }
        }
        let (re, im) = self.big_parts();
        let n = &re * &re + &im * &im;
        Some(Self::new(&re / &n, -&im / &n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big { re, im } => re.denom().lcm(im.denom()),
        }
    }

    /// Sign of a real scalar; `None` if the imaginary part is nonzero.
    pub fn real_sign(&self) -> Option<Ordering> {
        match &self.0 {
            Repr::Small { re, im: 0, .. } => Some(re.cmp(&0)),
            Repr::Small { .. } => None,
            Repr::Big { re, im } => im.is_zero().then(|| re.cmp(&BigRational::zero())),
        }
    }

    fn combine(
        &self,
        rhs: &Self,
        small: impl FnOnce(i128, i128, i128, i128, i128, i128) -> Option<(i128, i128, i128)>,
        big: impl FnOnce((BigRational, BigRational), (BigRational, BigRational)) -> (BigRational, BigRational),
    ) -> Self {
        if let (Repr::Small { re: a, im: b, den: d }, Repr::Small { re: c, im: e, den: f }) = (&self.0, &rhs.0) {
            if let Some((x, y, z)) = small(*a as i128, *b as i128, *d as i128, *c as i128, *e as i128, *f as i128) {
                return Self::from_i128(x, y, z);
            }
        }
        let (re, im) = big(self.big_parts(), rhs.big_parts());
        Self::new(re, im)
    }
}

fn small_add(a: i128, b: i128, d: i128, c: i128, e: i128, f: i128) -> Option<(i128, i128, i128)> {
    if d == f {
        return Some((a.checked_add(c)?, b.checked_add(e)?, d));
    }
    let re = a.checked_mul(f)?.checked_add(c.checked_mul(d)?)?;
    let im = b.checked_mul(f)?.checked_add(e.checked_mul(d)?)?;
    Some((re, im, d.checked_mul(f)?))
}

fn small_mul(a: i128, b: i128, d: i128, c: i128, e: i128, f: i128) -> Option<(i128, i128, i128)> {
    let den = d.checked_mul(f)?;
    if b == 0 && e == 0 {
        return Some((a.checked_mul(c)?, 0, den));
    }
    let re = a.checked_mul(c)?.checked_sub(b.checked_mul(e)?)?;
    let im = a.checked_mul(e)?.checked_add(b.checked_mul(c)?)?;
    Some((re, im, den))
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for ExactScalar {}

impl Hash for ExactScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { re, im, den } => (0u8, re, im, den).hash(state),
            Repr::Big { re, im } => (1u8, re, im).hash(state),
        }
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serialized form `p/q+r/s*i` (or `p/q-r/s*i`); both parts always carry a
/// denominator so the string is canonical.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.big_parts();
        let sign = if im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", fmt_ratio(&re), sign, fmt_ratio(&im.abs()))
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.big_parts();
        if im.is_zero() {
            write!(f, "{re}")
        } else {
            write!(f, "({}{}{}i)", re, if im.is_negative() { "-" } else { "+" }, im.abs())
        }
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let (p, q) = s.split_once('/')?;
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(s.to_string());
        let body = s.strip_suffix("*i").ok_or_else(bad)?;
        // The separator is the first sign after the real part's denominator.
        let slash = body.find('/').ok_or_else(bad)?;
        let split = body[slash..]
            .find(['+', '-'])
            .map(|k| k + slash)
            .ok_or_else(bad)?;
        let re = parse_ratio(&body[..split]).ok_or_else(bad)?;
        let mut im = parse_ratio(&body[split + 1..]).ok_or_else(bad)?;
        if body.as_bytes()[split] == b'-' {
            im = -im;
        }
        Ok(ExactScalar::new(re, im))
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        self.combine(rhs, small_add, |(a, b), (c, d)| (a + c, b + d))
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        self.combine(rhs, small_mul, |(a, b), (c, d)| (&a * &c - &b * &d, &a * &d + &b * &c))
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero, like the integer types.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        let inv = rhs.inv().expect("division by zero ExactScalar");
        self * &inv
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match &self.0 {
            Repr::Small { re, im, den } => ExactScalar(Repr::Small { re: -re, im: -im, den: *den }),
            Repr::Big { re, im } => ExactScalar(Repr::Big { re: -re, im: -im }),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}
