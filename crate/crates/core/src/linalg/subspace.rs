use super::{rref_rows, vec_ops, Vector};
use crate::scalar::Scalar;

/// A linear subspace of `F^n`, stored by its reduced echelon basis.
///
/// Each basis vector has a leading 1 at its pivot coordinate and every other
/// basis vector vanishes there, so coordinates of a member are read off at
/// the pivots.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Scalar> {
    ambient: usize,
    basis: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn from_spanning(ambient: usize, vectors: &[Vector<F>]) -> Self {
        let mut rows: Vec<Vector<F>> = vectors.to_vec();
        assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref_rows(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace {
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| vec_ops::basis(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vector<F>> {
        self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates with respect to [`Subspace::basis`], or `None` if `v` is
    /// not in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vector<F>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vector<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.vector(&coords);
        (back.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `Σ coords[i]·basis[i]`.
    pub fn vector(&self, coords: &[F]) -> Vector<F> {
        vec_ops::combination(self.ambient, coords, &self.basis)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::from_spanning(self.ambient, &all)
    }

    /// Vectors of `within`'s basis, taken greedily in order, that extend
    /// `self` to a basis of `within`. Assumes `self ⊆ within`.
    pub fn complement_basis_in(&self, within: &Self) -> Vec<Vector<F>> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in &within.basis {
            if !acc.contains(v) {
                out.push(v.clone());
                acc = acc.sum(&Subspace::from_spanning(self.ambient, std::slice::from_ref(v)));
            }
        }
        out
    }
}
