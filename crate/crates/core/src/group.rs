//! Group elements of the built-in pairs: `GL_n × GL_n` with `θ(a, b) = (b, a)`
//! and `GL_n(ℚ(√D))` with Galois conjugation. `σ(g) = θ(g⁻¹)`.

use crate::error::{Error, Result};
use crate::lie::{block_diag, quadratic_block};
use crate::linalg::Matrix;
use crate::pair::{jordan_flags_of, Descendant, Family, JordanFlags, SymmetricPair};
use crate::scalar::{QuadExt, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    Product { left: Matrix<Rational>, right: Matrix<Rational> },
    Extension { matrix: Matrix<QuadExt>, d: i64 },
}

impl GroupElement {
    pub fn product(left: Matrix<Rational>, right: Matrix<Rational>) -> Result<Self> {
        if !left.is_square() || left.rows() != right.rows() || !right.is_square() {
            return Err(Error::dim("factors must be square of equal size"));
        }
        if !left.is_invertible() || !right.is_invertible() {
            return Err(Error::pre("group element must be invertible"));
        }
        Ok(GroupElement::Product { left, right })
    }

    pub fn extension(matrix: Matrix<QuadExt>, d: i64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::dim("matrix must be square"));
        }
        if matrix.entries().iter().any(|z| z.discriminant().is_some_and(|e| e != d)) {
            return Err(Error::input(format!("entries must lie in Q(sqrt({d}))")));
        }
        if !matrix.is_invertible() {
            return Err(Error::pre("group element must be invertible"));
        }
        Ok(GroupElement::Extension { matrix, d })
    }

    pub fn identity(family: Family) -> Result<Self> {
        match family {
            Family::Diagonal { n } => Ok(GroupElement::Product {
                left: Matrix::identity(n),
                right: Matrix::identity(n),
            }),
            Family::QuadraticExt { n, d } => Ok(GroupElement::Extension {
                matrix: Matrix::identity(n),
                d,
            }),
            Family::Custom => Err(Error::pre("no realized group for a custom pair")),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            GroupElement::Product { left, .. } => left.rows(),
            GroupElement::Extension { matrix, .. } => matrix.rows(),
        }
    }

    fn check_family(&self, family: Family) -> Result<()> {
        let ok = match (self, family) {
            (GroupElement::Product { left, .. }, Family::Diagonal { n }) => left.rows() == n,
            (GroupElement::Extension { matrix, d }, Family::QuadraticExt { n, d: e }) => {
                matrix.rows() == n && *d == e
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::pre("group element does not belong to this pair"))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (
                GroupElement::Product { left: a, right: b },
                GroupElement::Product { left: c, right: e },
            ) => Ok(GroupElement::Product {
                left: a.try_mul(c)?,
                right: b.try_mul(e)?,
            }),
            (GroupElement::Extension { matrix: a, d }, GroupElement::Extension { matrix: b, d: e })
                if d == e =>
            {
                Ok(GroupElement::Extension {
                    matrix: a.try_mul(b)?,
                    d: *d,
                })
            }
            _ => Err(Error::pre("group elements from different groups")),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let singular = || Error::pre("singular group element");
        match self {
            GroupElement::Product { left, right } => Ok(GroupElement::Product {
                left: left.inverse().ok_or_else(singular)?,
                right: right.inverse().ok_or_else(singular)?,
            }),
            GroupElement::Extension { matrix, d } => Ok(GroupElement::Extension {
                matrix: matrix.inverse().ok_or_else(singular)?,
                d: *d,
            }),
        }
    }

    pub fn theta(&self) -> Self {
        match self {
            GroupElement::Product { left, right } => GroupElement::Product {
                left: right.clone(),
                right: left.clone(),
            },
            GroupElement::Extension { matrix, d } => GroupElement::Extension {
                matrix: matrix.map(|z| z.conjugate()),
                d: *d,
            },
        }
    }

    /// `σ(g) = θ(g⁻¹)`.
    pub fn sigma(&self) -> Result<Self> {
        Ok(self.inverse()?.theta())
    }

    /// The image in the rational realization of the pair's algebra
    /// (block diagonal, resp. `[[A, D·B], [B, A]]`).
    pub fn realize(&self) -> Matrix<Rational> {
        match self {
            GroupElement::Product { left, right } => block_diag(left, right),
            GroupElement::Extension { matrix, d } => {
                let re = matrix.map(|z| z.rational_part().clone());
                let im = matrix.map(|z| z.irrational_part().clone());
                quadratic_block(&re, &im, *d)
            }
        }
    }

    pub fn jordan_flags(&self) -> Result<JordanFlags> {
        jordan_flags_of(&self.realize())
    }
}

/// `s(g) = g·σ(g)`.
pub fn symmetrize(pair: &SymmetricPair, g: &GroupElement) -> Result<GroupElement> {
    g.check_family(pair.family())?;
    g.mul(&g.sigma()?)
}

/// `σ(g)·g = g·σ(g)`.
pub fn is_normal(pair: &SymmetricPair, g: &GroupElement) -> Result<bool> {
    g.check_family(pair.family())?;
    let s = g.sigma()?;
    Ok(s.mul(g)? == g.mul(&s)?)
}

#[derive(Clone, Debug)]
pub struct GroupDescendant {
    pub normal: bool,
    pub symmetrized: GroupElement,
    pub descendant: Descendant,
}

/// Descendant at `s(g)`: the fixed algebra of `Ad(s(g))` with θ restricted.
/// Requires `s(g)` semisimple.
pub fn group_descendant(pair: &SymmetricPair, g: &GroupElement) -> Result<GroupDescendant> {
    let normal = is_normal(pair, g)?;
    let x = symmetrize(pair, g)?;
    let xm = x.realize();
    if !xm.is_semisimple()? {
        return Err(Error::pre("descendant requires s(g) to be semisimple"));
    }
    let realization = pair
        .algebra()
        .realization()
        .ok_or_else(|| Error::pre("group descendant requires a matrix realization"))?;
    // y ↦ X·ρ(y) − ρ(y)·X, flattened
    let size = xm.rows();
    let cols: Vec<Vec<Rational>> = realization
        .iter()
        .map(|r| (&(&xm * r) - &(r * &xm)).entries().to_vec())
        .collect();
    let op = Matrix::from_columns(size * size, &cols)?;
    let descendant = pair.descendant_from_operators(&[op])?;
    Ok(GroupDescendant {
        normal,
        symmetrized: x,
        descendant,
    })
}
