use std::fmt;

use super::Matrix;
use crate::scalar::Scalar;

/// Univariate polynomial, coefficients from the constant term upward.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Scalar> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coefficients(&self) -> &[F] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero leading coefficient");
                Poly::new(self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect())
            }
        }
    }

    /// True for `c·x^k`.
    pub fn is_monomial(&self) -> bool {
        match self.degree() {
            None => false,
            Some(d) => self.coeffs[..d].iter().all(|c| c.is_zero()),
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_integer(i as i64))
                .collect(),
        )
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().unwrap().inverse().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let f = r[top].clone() * lead_inv.clone();
            if !f.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    let idx = top - dd + i;
                    let v = std::mem::replace(&mut r[idx], F::zero());
                    r[idx] = v - f.clone() * d.clone();
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_matrix(&self, a: &Matrix<F>) -> Matrix<F> {
        let n = a.rows();
        self.coeffs.iter().rev().fold(Matrix::zeros(n, n), |acc, c| {
            &(&acc * a) + &Matrix::identity(n).scale(c)
        })
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn p(xs: &[i64]) -> Poly<Rational> {
        Poly::new(xs.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn gcd_of_repeated_root() {
        // (x-1)²(x+2) and its derivative share (x-1)
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
    }

    #[test]
    fn square_free_gcd_is_constant() {
        let f = p(&[2, -3, 1]);
        assert_eq!(f.gcd(&f.derivative()).degree(), Some(0));
    }

    #[test]
    fn trims_and_evaluates() {
        let f = p(&[1, 0, 0, 0]);
        assert_eq!(f.degree(), Some(0));
        assert_eq!(p(&[1, 2, 3]).eval(&rat(2)), rat(17));
        assert!(p(&[0, 0, 5]).is_monomial());
        assert!(!p(&[1, 1]).is_monomial());
    }
}
