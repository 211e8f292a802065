//! Local constants of quadratic forms over the completions of ℚ: Hilbert
//! symbols, Weil constants `γ(B)` as exact eighth roots of unity, the ratio
//! `δ_B(t) = γ(B)/γ(tB)`, the module `|λ|`, and a floating-point Gauss sum
//! used to cross-check the closed forms.
//!
//! The additive character of `ℚ_p` is `x ↦ e^{2πi{x}_p}` (conductor `ℤ_p`);
//! at the real place it is `x ↦ e^{2πix}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, rat, unit_residue, valuation, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Complex,
    PAdic(u64),
}

impl Place {
    pub fn p_adic(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::PAdic(p))
        } else {
            Err(Error::input(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Complex => write!(f, "complex"),
            Place::PAdic(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "real" => Ok(Place::Real),
            "complex" => Ok(Place::Complex),
            other => {
                let p = other
                    .strip_prefix("p:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::input(format!("unknown place '{other}' (real, complex or p:<prime>)")))?;
                Place::p_adic(p)
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// `e^{iπ·exponent/4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EighthRoot {
    exponent: u8,
}

impl EighthRoot {
    pub fn new(exponent: i64) -> Self {
        EighthRoot {
            exponent: exponent.rem_euclid(8) as u8,
        }
    }

    pub fn one() -> Self {
        EighthRoot { exponent: 0 }
    }

    pub fn exponent(&self) -> u8 {
        self.exponent
    }

    pub fn mul(self, other: Self) -> Self {
        EighthRoot::new(self.exponent as i64 + other.exponent as i64)
    }

    pub fn div(self, other: Self) -> Self {
        EighthRoot::new(self.exponent as i64 - other.exponent as i64)
    }

    pub fn pow(self, k: i64) -> Self {
        EighthRoot::new(self.exponent as i64 * k)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::PI * self.exponent as f64 / 4.0)
    }
}

impl fmt::Display for EighthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_complex();
        write!(f, "exp(i*pi*{}/4) = {:.6}{:+.6}i", self.exponent, z.re, z.im)
    }
}

/// `Σ aᵢ xᵢ²` with every `aᵢ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalQuadraticForm {
    coefficients: Vec<Rational>,
}

impl DiagonalQuadraticForm {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::input("quadratic form needs at least one coefficient"));
        }
        if coefficients.iter().any(|a| a.is_zero()) {
            return Err(Error::input("degenerate quadratic form (zero coefficient)"));
        }
        Ok(DiagonalQuadraticForm { coefficients })
    }

    pub fn from_integers(a: &[i64]) -> Result<Self> {
        Self::new(a.iter().map(|&x| rat(x)).collect())
    }

    /// Parses `"a1,a2,..."`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| parse_rational(t).ok_or_else(|| Error::input(format!("bad coefficient '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn scaled(&self, t: &Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::pre("scaling by zero"));
        }
        Ok(DiagonalQuadraticForm {
            coefficients: self.coefficients.iter().map(|a| a * t).collect(),
        })
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.dim() {
            return Err(Error::dim("vector length does not match the form"));
        }
        Ok(self
            .coefficients
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, xi)| acc + a * xi * xi))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut c = self.coefficients.clone();
        c.extend(other.coefficients.iter().cloned());
        DiagonalQuadraticForm { coefficients: c }
    }
}

impl fmt::Display for DiagonalQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(format_rational).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `u^{(p-1)/2} mod p` as ±1 for `u` prime to odd `p`.
fn legendre(u: u64, p: u64) -> i64 {
    let r = BigInt::from(u).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    if r == BigInt::from(1) {
        1
    } else {
        -1
    }
}

fn require_nonzero(q: &Rational) -> Result<()> {
    if q.is_zero() {
        Err(Error::pre("Hilbert symbol of zero"))
    } else {
        Ok(())
    }
}

/// The local Hilbert symbol `(a, b)_v ∈ {±1}`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8> {
    require_nonzero(a)?;
    require_nonzero(b)?;
    Ok(match v {
        Place::Complex => 1,
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::PAdic(2) => {
            let (al, be) = (valuation(a, 2), valuation(b, 2));
            let (u, w) = (unit_residue(a, 2, 8), unit_residue(b, 2, 8));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(w) + (al.rem_euclid(2) as u64) * omega(w) + (be.rem_euclid(2) as u64) * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::PAdic(p) => {
            let (al, be) = (valuation(a, p), valuation(b, p));
            let (u, w) = (unit_residue(a, p, p), unit_residue(b, p, p));
            let mut s: i64 = if (al * be).rem_euclid(2) == 1 && (p % 4 == 3) { -1 } else { 1 };
            if be.rem_euclid(2) == 1 {
                s *= legendre(u, p);
            }
            if al.rem_euclid(2) == 1 {
                s *= legendre(w, p);
            }
            s as i8
        }
    })
}

/// Places where `(a, b)_v` can be `−1`: real, 2, and primes dividing `ab`.
pub fn relevant_places(a: &Rational, b: &Rational) -> Vec<Place> {
    let mut primes = vec![2u64];
    for q in [a, b] {
        for n in [q.numer().abs(), q.denom().clone()] {
            primes.extend(prime_factors(&n));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    std::iter::once(Place::Real)
        .chain(primes.into_iter().map(Place::PAdic))
        .collect()
}

fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.to_u64().expect("trial division limited to 64-bit integers");
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Π_v (a, b)_v` over all places.
pub fn hilbert_product(a: &Rational, b: &Rational) -> Result<i8> {
    relevant_places(a, b)
        .into_iter()
        .try_fold(1i8, |acc, v| Ok(acc * hilbert_symbol(a, b, v)?))
}

/// `γ` of the rank-one form `a x²`.
pub fn weil_gamma_rank_one(a: &Rational, v: Place) -> Result<EighthRoot> {
    if a.is_zero() {
        return Err(Error::pre("degenerate rank-one form"));
    }
    Ok(match v {
        Place::Complex => EighthRoot::one(),
        Place::Real => EighthRoot::new(if a.is_positive() { 1 } else { -1 }),
        Place::PAdic(2) => {
            let val = valuation(a, 2);
            let u = unit_residue(a, 2, 8);
            if val.rem_euclid(2) == 0 {
                EighthRoot::new(if u % 4 == 1 { 1 } else { 7 })
            } else {
                EighthRoot::new(u as i64)
            }
        }
        Place::PAdic(p) => {
            if valuation(a, p).rem_euclid(2) == 0 {
                EighthRoot::one()
            } else {
                let eps = if p % 4 == 1 { 0 } else { 2 };
                let leg = if legendre(unit_residue(a, p, p), p) == 1 { 0 } else { 4 };
                EighthRoot::new(eps + leg)
            }
        }
    })
}

/// `γ(B) = Π γ(aᵢ)`.
pub fn weil_gamma(form: &DiagonalQuadraticForm, v: Place) -> Result<EighthRoot> {
    form.coefficients()
        .iter()
        .try_fold(EighthRoot::one(), |acc, a| Ok(acc.mul(weil_gamma_rank_one(a, v)?)))
}

/// `δ_B(t) = γ(B)/γ(tB)`.
pub fn delta_b(form: &DiagonalQuadraticForm, t: &Rational, v: Place) -> Result<EighthRoot> {
    Ok(weil_gamma(form, v)?.div(weil_gamma(&form.scaled(t)?, v)?))
}

/// `|λ|_v`: usual absolute value at the real place, its square at the
/// complex place, `p^{-v_p(λ)}` at `p`.
pub fn module_value(lambda: &Rational, v: Place) -> Rational {
    if lambda.is_zero() {
        return Rational::zero();
    }
    match v {
        Place::Real => lambda.abs(),
        Place::Complex => lambda * lambda,
        Place::PAdic(p) => {
            let k = valuation(lambda, p);
            let pp = Rational::from_integer(BigInt::from(p)).pow(k.unsigned_abs() as i32);
            if k >= 0 {
                pp.recip()
            } else {
                pp
            }
        }
    }
}

/// `|a + bi|` at the complex place: `a² + b²`.
pub fn module_value_complex(re: &Rational, im: &Rational) -> Rational {
    re * re + im * im
}

/// `B(x, x) = 0`.
pub fn null_cone_member(form: &DiagonalQuadraticForm, x: &[Rational]) -> Result<bool> {
    Ok(form.eval(x)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomogeneityFactor {
    pub t: String,
    pub delta_exponent: u8,
    /// `|t|_v` exactly.
    pub module: String,
    /// `δ_B(t)·|t|^{dim/2}` as a complex number.
    pub re: f64,
    pub im: f64,
}

/// `δ_B(t)·|t|_v^{dim V/2}` for each `t`.
pub fn homogeneity_table(
    form: &DiagonalQuadraticForm,
    ts: &[Rational],
    v: Place,
) -> Result<Vec<HomogeneityFactor>> {
    ts.iter()
        .map(|t| {
            let delta = delta_b(form, t, v)?;
            let m = module_value(t, v);
            let scale = m.to_f64().unwrap_or(f64::NAN).powf(form.dim() as f64 / 2.0);
            let z = delta.to_complex() * scale;
            Ok(HomogeneityFactor {
                t: format_rational(t),
                delta_exponent: delta.exponent(),
                module: format_rational(&m),
                re: z.re,
                im: z.im,
            })
        })
        .collect()
}

/// Some `(s, t)` with `δ_B(st) ≠ δ_B(s)·δ_B(t)`, found by scanning signs,
/// small primes and the residue characteristic.
pub fn non_multiplicative_witness(
    form: &DiagonalQuadraticForm,
    v: Place,
) -> Result<(Rational, Rational)> {
    if form.dim() % 2 == 0 {
        return Err(Error::pre("witness scan needs an odd-dimensional form"));
    }
    if v == Place::Complex {
        return Err(Error::pre("δ_B is trivial at the complex place"));
    }
    let mut base: Vec<i64> = vec![2, 3, 5, 6, 7, 10];
    if let Place::PAdic(p) = v {
        base.insert(0, p as i64);
    }
    let mut cands = vec![rat(-1)];
    for b in base {
        cands.push(rat(b));
        cands.push(rat(-b));
    }
    for s in &cands {
        for t in &cands {
            let lhs = delta_b(form, &(s * t), v)?;
            let rhs = delta_b(form, s, v)?.mul(delta_b(form, t, v)?);
            if lhs != rhs {
                return Ok((s.clone(), t.clone()));
            }
        }
    }
    Err(Error::invariant(format!(
        "no non-multiplicativity witness for {form} at {v}"
    )))
}

/// `c·Σ_{x mod p^k} e^{2πi a x²/p^k}` with `c = p^{-k/2}` for odd `p` and
/// `2^{-(k+1)/2}` for `p = 2`. This equals `γ(a p^{-k})`; for `p = 2` it
/// needs `k ≥ 2`.
pub fn gauss_sum_oracle(a: i64, p: u64, k: u32) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::pre("k must be at least 1"));
    }
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::pre("a must be prime to p"));
    }
    let m = p.checked_pow(k).ok_or_else(|| Error::input("modulus overflow"))?;
    let a = a.rem_euclid(m as i64) as u128;
    let mut sum = Complex64::new(0.0, 0.0);
    for x in 0..m as u128 {
        let r = (a * ((x * x) % m as u128)) % m as u128;
        sum += Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / m as f64);
    }
    let norm = if p == 2 {
        (2f64).powf(-((k + 1) as f64) / 2.0)
    } else {
        (p as f64).powf(-(k as f64) / 2.0)
    };
    Ok(sum * norm)
}

/// The exponent `e` with `z ≈ e^{iπe/4}`, if `z` is within `tol` of one.
pub fn nearest_eighth_root(z: Complex64, tol: f64) -> Option<EighthRoot> {
    (0..8)
        .map(EighthRoot::new)
        .find(|r| (r.to_complex() - z).norm() < tol)
}

pub fn parse_scalar(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::input(format!("bad rational '{s}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn q(x: i64) -> Rational {
        rat(x)
    }

    /// Solvability of `a x² + b y² = z²` with a primitive solution mod `p^k`,
    /// `x` or `y` a unit. Adequate for `a, b` with valuation ≤ 1 at odd `p`.
    fn hilbert_by_search(a: i64, b: i64, p: i64, k: u32) -> i8 {
        let m = p.pow(k);
        for x in 0..m {
            for y in 0..m {
                if x % p == 0 && y % p == 0 {
                    continue;
                }
                let lhs = (a * x * x + b * y * y).rem_euclid(m);
                if (0..m).any(|z| (z * z).rem_euclid(m) == lhs) {
                    return 1;
                }
            }
        }
        -1
    }

    #[test]
    fn hilbert_examples() {
        for v in [Place::Real, Place::Complex, Place::PAdic(2), Place::PAdic(3), Place::PAdic(5)] {
            for b in [-10, -3, -1, 2, 5, 7] {
                assert_eq!(hilbert_symbol(&q(1), &q(b), v).unwrap(), 1);
            }
        }
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(5), Place::PAdic(5)).unwrap(), -1);
        assert_eq!(hilbert_by_search(2, 5, 5, 3), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::PAdic(2)).unwrap(), -1);
    }

    #[test]
    fn hilbert_matches_search_at_odd_primes() {
        for p in [3i64, 5, 7] {
            for a in [1i64, 2, 3, 5, 6, 7, -1, -3] {
                for b in [1i64, 2, 3, 5, 7, -1, -5] {
                    let expect = hilbert_by_search(a, b, p, 3);
                    let got = hilbert_symbol(&q(a), &q(b), Place::PAdic(p as u64)).unwrap();
                    assert_eq!(got, expect, "({a},{b})_{p}");
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let f = DiagonalQuadraticForm::from_integers(&[1, 1]).unwrap();
        assert_eq!(weil_gamma(&f, Place::Real).unwrap().exponent(), 2);
        assert_eq!(weil_gamma(&f, Place::Complex).unwrap().exponent(), 0);
        let h = DiagonalQuadraticForm::from_integers(&[1, -1]).unwrap();
        assert_eq!(weil_gamma(&h, Place::Real).unwrap().exponent(), 0);
        for p in [2, 3, 5, 7] {
            assert_eq!(weil_gamma(&h, Place::PAdic(p)).unwrap().exponent(), 0, "p={p}");
        }
    }

    #[test]
    fn delta_examples() {
        let f = DiagonalQuadraticForm::from_integers(&[1]).unwrap();
        assert_eq!(delta_b(&f, &q(1), Place::Real).unwrap().exponent(), 0);
        assert_eq!(delta_b(&f, &q(4), Place::PAdic(3)).unwrap().exponent(), 0);
        assert_eq!(delta_b(&f, &q(-1), Place::Real).unwrap().exponent(), 2);
        let g = DiagonalQuadraticForm::from_integers(&[1]).unwrap();
        assert_eq!(delta_b(&g, &q(2), Place::PAdic(5)).unwrap().exponent(), 0);
    }

    #[test]
    fn witnesses() {
        let f = DiagonalQuadraticForm::from_integers(&[1]).unwrap();
        let (s, t) = non_multiplicative_witness(&f, Place::Real).unwrap();
        assert_eq!((s, t), (q(-1), q(-1)));
        let (s, t) = non_multiplicative_witness(&f, Place::PAdic(3)).unwrap();
        let allowed = [q(-1), q(3), q(-3)];
        assert!(allowed.contains(&s) && allowed.contains(&t));
        assert!(non_multiplicative_witness(&f, Place::Complex).is_err());
    }

    #[test]
    fn classical_gauss_sums() {
        let z = gauss_sum_oracle(1, 5, 1).unwrap();
        assert_eq!(nearest_eighth_root(z, 1e-9).unwrap().exponent(), 0);
        let z = gauss_sum_oracle(1, 3, 1).unwrap();
        assert_eq!(nearest_eighth_root(z, 1e-9).unwrap().exponent(), 2);
        let a = gauss_sum_oracle(2, 7, 2).unwrap();
        let b = gauss_sum_oracle(2 * 9, 7, 2).unwrap();
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn two_adic_against_oracle() {
        for k in 2..=5u32 {
            for a in [1i64, 3, 5, 7] {
                let z = gauss_sum_oracle(a, 2, k).unwrap();
                let g = weil_gamma_rank_one(&ratio(a, 1 << k), Place::PAdic(2)).unwrap();
                assert!((g.to_complex() - z).norm() < 1e-6, "a={a} k={k}");
            }
        }
    }

    #[test]
    fn modules_and_null_cone() {
        assert_eq!(module_value(&q(2), Place::Complex), q(4));
        assert_eq!(module_value(&ratio(1, 3), Place::PAdic(3)), q(3));
        assert_eq!(module_value(&q(-5), Place::Real), q(5));
        assert_eq!(module_value_complex(&q(1), &q(1)), q(2));
        let h = DiagonalQuadraticForm::from_integers(&[1, -1]).unwrap();
        assert!(null_cone_member(&h, &[q(1), q(1)]).unwrap());
        assert!(!null_cone_member(&h, &[q(1), q(0)]).unwrap());
    }

    #[test]
    fn places_parse() {
        assert_eq!("p:5".parse::<Place>().unwrap(), Place::PAdic(5));
        assert_eq!("real".parse::<Place>().unwrap(), Place::Real);
        assert!("p:6".parse::<Place>().is_err());
        assert!(DiagonalQuadraticForm::parse("1,0").is_err());
    }
}
