//! Exact arithmetic in a quadratic extension `Q(√d)` of the rationals.
//!
//! An element is stored as `a + b·√d`. The radicand travels with the
//! element: purely rational elements carry no radicand (`d = 0`) and mix
//! freely with any extension, while two irrational elements must agree on
//! `d`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Radicand used when nothing else is configured: `√-3` admits the
/// primitive cube root of unity.
pub const DEFAULT_RADICAND: i64 = -3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("radicand {0} is not a square-free integer other than 0 and 1")]
    BadRadicand(i64),
    #[error("malformed coefficient `{0}`")]
    Malformed(String),
}

/// A validated radicand `d`: square-free, `d ∉ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadExt(i64);

impl QuadExt {
    pub fn new(d: i64) -> Result<Self, FieldError> {
        if d == 0 || d == 1 || !is_square_free(d) {
            return Err(FieldError::BadRadicand(d));
        }
        Ok(QuadExt(d))
    }

    #[must_use]
    pub const fn radicand(self) -> i64 {
        self.0
    }

    /// The primitive cube root of unity `(-1 + √-3)/2`; requires `d = -3`.
    #[must_use]
    pub fn omega(self) -> Option<FieldElem> {
        (self.0 == -3).then(|| {
            FieldElem::new(
                BigRational::new((-1).into(), 2.into()),
                BigRational::new(1.into(), 2.into()),
                self,
            )
        })
    }
}

impl Default for QuadExt {
    fn default() -> Self {
        QuadExt(DEFAULT_RADICAND)
    }
}

fn is_square_free(d: i64) -> bool {
    let mut m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        if m.is_multiple_of(p) {
            m /= p;
        }
        p += 1;
    }
    true
}

/// An element `a + b·√d` of `Q(√d)`.
///
/// Both rational parts are kept in lowest terms by `BigRational`. When
/// `b = 0` the stored radicand is 0, so derived equality and hashing are
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    a: BigRational,
    b: BigRational,
    d: i64,
}

impl FieldElem {
    pub fn new(a: BigRational, b: BigRational, ext: QuadExt) -> Self {
        let d = if b.is_zero() { 0 } else { ext.0 };
        FieldElem { a, b, d }
    }

    pub fn zero() -> Self {
        FieldElem::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElem::rational(BigRational::one())
    }

    pub fn rational(a: BigRational) -> Self {
        FieldElem { a, b: BigRational::zero(), d: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        FieldElem::rational(BigRational::from_integer(v.into()))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        FieldElem::rational(BigRational::new(num.into(), den.into()))
    }

    /// `√d` itself.
    pub fn sqrt_d(ext: QuadExt) -> Self {
        FieldElem::new(BigRational::zero(), BigRational::one(), ext)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand this element lives over, if it is irrational.
    pub fn ext(&self) -> Option<QuadExt> {
        (self.d != 0).then_some(QuadExt(self.d))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Whether both parts have denominator 1.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Galois conjugate `a - b√d`.
    pub fn conjugate(&self) -> Self {
        FieldElem { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² - d·b²`, a rational.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(self.d.into());
        &self.a * &self.a - d * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(FieldElem {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d,
        })
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.a.denom(), self.b.denom())
    }

    fn join(x: i64, y: i64) -> i64 {
        match (x, y) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixing elements of Q(√{d}) and Q(√{e})"),
        }
    }

    fn build(a: BigRational, b: BigRational, d: i64) -> Self {
        let d = if b.is_zero() { 0 } else { d };
        FieldElem { a, b, d }
    }

    /// Parses `<rat>` or `<rat>+<rat>w`, where `w` stands for `√d`.
    pub fn parse(s: &str, ext: QuadExt) -> Result<Self, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Malformed(s.to_string());
        if let Some(body) = s.strip_suffix('w') {
            // split at the `+` that separates the parts; skip a leading sign
            let split = body
                .char_indices()
                .skip(1)
                .find(|&(_, c)| c == '+')
                .map(|(i, _)| i)
                .ok_or_else(bad)?;
            let a = parse_rational(&body[..split]).ok_or_else(bad)?;
            let b = parse_rational(&body[split + 1..]).ok_or_else(bad)?;
            Ok(FieldElem::new(a, b, ext))
        } else {
            parse_rational(s).map(FieldElem::rational).ok_or_else(bad)
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let valid_int = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            if !valid_int(p) || q.is_empty() || !q.bytes().all(|c| c.is_ascii_digit()) {
                return None;
            }
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => {
            if !valid_int(s) {
                return None;
            }
            Some(BigRational::from_integer(s.parse().ok()?))
        }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.a, f)?;
        if !self.b.is_zero() {
            f.write_str("+")?;
            fmt_rational(&self.b, f)?;
            f.write_str("w")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{self}")
        } else {
            write!(f, "{self}[w=√{}]", self.d)
        }
    }
}

impl From<i64> for FieldElem {
    fn from(v: i64) -> Self {
        FieldElem::from_int(v)
    }
}

impl From<BigRational> for FieldElem {
    fn from(v: BigRational) -> Self {
        FieldElem::rational(v)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        let d = FieldElem::join(self.d, rhs.d);
        FieldElem::build(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        let d = FieldElem::join(self.d, rhs.d);
        FieldElem::build(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        if self.b.is_zero() && rhs.b.is_zero() {
            return FieldElem::rational(&self.a * &rhs.a);
        }
        let d = FieldElem::join(self.d, rhs.d);
        let dr = BigRational::from_integer(d.into());
        let a = &self.a * &rhs.a + dr * (&self.b * &rhs.b);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        FieldElem::build(a, b, d)
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        let inv = rhs.inv().expect("division by zero in Q(√d)");
        self * &inv
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { a: -self.a, b: -self.b, d: self.d }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        self.d = FieldElem::join(self.d, rhs.d);
        self.a += &rhs.a;
        self.b += &rhs.b;
        if self.b.is_zero() {
            self.d = 0;
        }
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        self.d = FieldElem::join(self.d, rhs.d);
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        if self.b.is_zero() {
            self.d = 0;
        }
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, rhs: &FieldElem) {
        *self = &*self * rhs;
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
}

impl One for FieldElem {
    fn one() -> Self {
        FieldElem::one()
    }
}

/// Sign of the leading nonzero rational part, used to pick canonical
/// representatives up to negation.
pub(crate) fn leading_sign(x: &FieldElem) -> i32 {
    if x.a.is_positive() || (x.a.is_zero() && x.b.is_positive()) {
        1
    } else if x.is_zero() {
        0
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ext() -> QuadExt {
        QuadExt::default()
    }

    fn elem(a: (i64, i64), b: (i64, i64)) -> FieldElem {
        FieldElem::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            ext(),
        )
    }

    #[test]
    fn radicand_validation() {
        assert!(QuadExt::new(-3).is_ok());
        assert!(QuadExt::new(-1).is_ok());
        assert!(QuadExt::new(2).is_ok());
        assert!(QuadExt::new(0).is_err());
        assert!(QuadExt::new(1).is_err());
        assert!(QuadExt::new(8).is_err());
        assert!(QuadExt::new(-12).is_err());
    }

    #[test]
    fn sqrt_squares_to_radicand() {
        let w = FieldElem::sqrt_d(ext());
        assert_eq!(&w * &w, FieldElem::from_int(-3));
        assert!((&w * &w).is_rational());
    }

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let om = ext().omega().unwrap();
        let cube = &(&om * &om) * &om;
        assert!(cube.is_one());
        assert!(!om.is_one());
        // 1 + ω + ω² = 0
        let s = &(&FieldElem::one() + &om) + &(&om * &om);
        assert!(s.is_zero());
    }

    #[test]
    fn display_and_parse() {
        let x = elem((3, 2), (-1, 1));
        assert_eq!(x.to_string(), "3/2+-1w");
        assert_eq!(FieldElem::parse("3/2+-1w", ext()).unwrap(), x);
        assert_eq!(FieldElem::parse("-7", ext()).unwrap(), FieldElem::from_int(-7));
        assert_eq!(FieldElem::parse("-1/2+1/2w", ext()).unwrap(), ext().omega().unwrap());
        assert_eq!(FieldElem::parse("0+1w", ext()).unwrap(), FieldElem::sqrt_d(ext()));
        for bad in ["", "1/0", "x", "1+w", "1/2/3", "--1", "+"] {
            assert!(FieldElem::parse(bad, ext()).is_err(), "{bad}");
        }
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixed_extensions_panic() {
        let a = FieldElem::sqrt_d(QuadExt::new(-1).unwrap());
        let b = FieldElem::sqrt_d(QuadExt::new(-3).unwrap());
        let _ = &a + &b;
    }

    fn arb_elem() -> impl Strategy<Value = FieldElem> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, p, b, q)| elem((a, p), (b, q)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&x - &x).is_zero());
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn parse_display_round_trip(x in arb_elem()) {
            prop_assert_eq!(FieldElem::parse(&x.to_string(), ext()).unwrap(), x);
        }
    }
}
