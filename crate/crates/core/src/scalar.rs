//! Exact scalar fields: ℚ and quadratic extensions ℚ(√D).
//!
//! Every algebraic routine in the crate is generic over [`Scalar`]. The two
//! exact implementations are [`Rational`] (arbitrary precision) and
//! [`QuadExt`], elements `a + b√D` with rational `a, b`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A field in which every comparison with zero is exact.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_integer(n: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// The value as a rational, when it lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    fn to_integer(&self) -> Option<i64> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_i64())
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Scalar for Rational {
    fn from_integer(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical `"p/q"` rendering (integers render without a denominator).
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(q: &Rational, p: u64) -> i64 {
    assert!(!q.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    fn v(mut n: BigInt, p: &BigInt) -> i64 {
        let mut k = 0;
        loop {
            let (quo, rem) = n.div_rem(p);
            if !rem.is_zero() {
                return k;
            }
            n = quo;
            k += 1;
        }
    }
    v(q.numer().abs(), &p) - v(q.denom().clone(), &p)
}

/// The unit part `q / p^{v_p(q)}` reduced to a residue modulo `modulus`
/// (which must be a power of `p`). Denominators are inverted mod `modulus`.
pub fn unit_residue(q: &Rational, p: u64, modulus: u64) -> u64 {
    let v = valuation(q, p);
    let pb = BigInt::from(p);
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    if v > 0 {
        num /= pb.pow(v as u32);
    } else if v < 0 {
        den /= pb.pow((-v) as u32);
    }
    let m = BigInt::from(modulus);
    let n = num.mod_floor(&m);
    let d = den.mod_floor(&m);
    let d_inv = mod_inverse(&d, &m).expect("unit denominator");
    (n * d_inv).mod_floor(&m).to_u64().unwrap()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// True when `d` is a square-free integer different from 0 and 1 (so that
/// `√d` is irrational).
pub fn is_valid_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let mut m = d.unsigned_abs();
    let mut f = 2u64;
    while f * f <= m {
        if m % (f * f) == 0 {
            return false;
        }
        if m % f == 0 {
            m /= f;
        }
        f += 1;
    }
    true
}

/// An element `a + b√D` of the quadratic field ℚ(√D).
///
/// The discriminant travels with each element. Elements built from
/// [`Zero`], [`One`] or [`Scalar::from_rational`] carry no discriminant and
/// combine with any; mixing two different discriminants panics.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    disc: Option<i64>,
}

impl QuadExt {
    /// Panics unless `d` is a valid discriminant.
    pub fn new(a: Rational, b: Rational, d: i64) -> Self {
        assert!(is_valid_discriminant(d), "invalid discriminant {d}");
        QuadExt { a, b, disc: Some(d) }
    }

    /// `√D` itself.
    pub fn sqrt(d: i64) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn discriminant(&self) -> Option<i64> {
        self.disc
    }

    /// The Galois conjugate `a − b√D`.
    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            disc: self.disc,
        }
    }

    /// `a² − D b²`.
    pub fn norm(&self) -> Rational {
        let d = rat(self.disc.unwrap_or(0));
        &self.a * &self.a - d * &self.b * &self.b
    }

    fn join(&self, other: &Self) -> Option<i64> {
        match (self.disc, other.disc) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixed quadratic discriminants");
                Some(x)
            }
            (x, None) => x,
            (None, y) => y,
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.disc == other.disc)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.b.is_zero(), self.disc) {
            (true, _) | (_, None) => write!(f, "{}", self.a),
            (false, Some(d)) if self.a.is_zero() => write!(f, "{}*sqrt({})", self.b, d),
            (false, Some(d)) => write!(f, "{} + {}*sqrt({})", self.a, self.b, d),
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let disc = self.join(&rhs);
        QuadExt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            disc,
        }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let disc = self.join(&rhs);
        QuadExt {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            disc,
        }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let disc = self.join(&rhs);
        let d = rat(disc.unwrap_or(0));
        QuadExt {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            disc,
        }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in quadratic field");
        let num = self * rhs.conjugate();
        QuadExt {
            a: num.a / &n,
            b: num.b / &n,
            disc: num.disc,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            disc: self.disc,
        }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt {
            a: Rational::zero(),
            b: Rational::zero(),
            disc: None,
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt {
            a: Rational::one(),
            b: Rational::zero(),
            disc: None,
        }
    }
}

impl Scalar for QuadExt {
    fn from_integer(n: i64) -> Self {
        Self::from_rational(&rat(n))
    }

    fn from_rational(q: &Rational) -> Self {
        QuadExt {
            a: q.clone(),
            b: Rational::zero(),
            disc: None,
        }
    }

    fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}
