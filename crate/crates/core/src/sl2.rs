//! sl2-triples through a nilpotent element, their θ-adapted form, and the
//! decomposition of a module into irreducibles from the weights of `ad h`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{vec_ops, Matrix, Spectrum, Subspace, Vector};
use crate::pair::SymmetricPair;
use crate::scalar::{Rational, Scalar};

/// `(e, h, f)` with `[h, e] = 2e`, `[h, f] = −2f`, `[e, f] = h`.
#[derive(Clone, Debug, PartialEq)]
pub struct SL2Triple<F: Scalar = Rational> {
    pub e: Vector<F>,
    pub h: Vector<F>,
    pub f: Vector<F>,
    pub theta_adapted: bool,
    /// Set for the zero triple at `e = 0`.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDecomposition {
    /// Highest weights, in decreasing order, with repetition.
    pub highest_weights: Vec<i64>,
    /// Eigenvalue multiplicities of `ad h`.
    pub weight_multiplicities: Vec<(i64, usize)>,
}

impl WeightDecomposition {
    pub fn module_dim(&self) -> usize {
        self.highest_weights.iter().map(|&l| (l + 1) as usize).sum()
    }

    pub fn weight_sum(&self) -> i64 {
        self.highest_weights.iter().sum()
    }
}

impl<F: Scalar> SL2Triple<F> {
    fn zero(dim: usize, theta_adapted: bool) -> Self {
        SL2Triple {
            e: vec_ops::zero(dim),
            h: vec_ops::zero(dim),
            f: vec_ops::zero(dim),
            theta_adapted,
            degenerate: true,
        }
    }

    pub fn check_relations(&self, g: &LieAlgebra<F>) -> Result<bool> {
        let two = F::from_integer(2);
        Ok(g.bracket(&self.h, &self.e)? == vec_ops::scale(&self.e, &two)
            && g.bracket(&self.h, &self.f)? == vec_ops::scale(&self.f, &-two)
            && g.bracket(&self.e, &self.f)? == self.h)
    }

    /// `h ∈ 𝔥`, `e, f ∈ g^σ`.
    pub fn check_adapted(&self, pair: &SymmetricPair<F>) -> bool {
        pair.h().contains(&self.h) && pair.gsigma().contains(&self.e) && pair.gsigma().contains(&self.f)
    }
}

fn require_nilpotent<F: Scalar>(g: &LieAlgebra<F>, x: &[F]) -> Result<Matrix<F>> {
    let ad = g.ad(x)?;
    if !ad.is_nilpotent() {
        return Err(Error::pre("element is not nilpotent"));
    }
    Ok(ad)
}

/// All `s ∈ [x, g]` with `[s, x] = 2x`, as `s0 + span(directions)`.
///
/// Writing `s = [x, z]`, the condition is `ad(x)² z = −2x`; the directions
/// are `ad(x)` applied to `ker ad(x)²`.
pub fn neutral_candidates<F: Scalar>(
    g: &LieAlgebra<F>,
    x: &[F],
) -> Result<(Vector<F>, Vec<Vector<F>>)> {
    let ad = require_nilpotent(g, x)?;
    let ad2 = &ad * &ad;
    let rhs = vec_ops::scale(x, &F::from_integer(-2));
    let sol = ad2
        .solve_affine(&rhs)?
        .ok_or_else(|| Error::invariant("no neutral element for a nilpotent element"))?;
    let s0 = ad.mul_vec(&sol.particular);
    let dirs: Vec<Vector<F>> = sol.directions.iter().map(|k| ad.mul_vec(k)).collect();
    let dirs = Subspace::from_spanning(g.dim(), &dirs).into_basis();
    Ok((s0, dirs))
}

/// Given `s` with `[s, x] = 2x`, `s ∈ [x, g]`, the unique `y` with
/// `[x, y] = s`, `[s, y] = −2y`.
pub fn complete_with_neutral<F: Scalar>(g: &LieAlgebra<F>, x: &[F], s: &[F]) -> Result<SL2Triple<F>> {
    let n = g.dim();
    let ad_x = g.ad(x)?;
    let shifted = &g.ad(s)? + &Matrix::identity(n).scale(&F::from_integer(2));
    let stacked = ad_x.vstack(&shifted)?;
    let mut rhs = s.to_vec();
    rhs.extend(vec_ops::zero::<F>(n));
    let y = stacked
        .solve(&rhs)?
        .ok_or_else(|| Error::invariant("Morozov completion has no solution"))?;
    let t = SL2Triple {
        e: x.to_vec(),
        h: s.to_vec(),
        f: y,
        theta_adapted: false,
        degenerate: false,
    };
    if !t.check_relations(g)? {
        return Err(Error::invariant("completed triple fails the sl2 relations"));
    }
    Ok(t)
}

/// Jacobson–Morozov completion of a nilpotent `x` using the echelon
/// representative of every affine solve. `x = 0` gives the zero triple.
pub fn jacobson_morozov<F: Scalar>(g: &LieAlgebra<F>, x: &[F]) -> Result<SL2Triple<F>> {
    if vec_ops::is_zero(x) {
        return Ok(SL2Triple::zero(g.dim(), false));
    }
    let (s, _) = neutral_candidates(g, x)?;
    complete_with_neutral(g, x, &s)
}

/// θ-adapted triple through a nilpotent `x ∈ g^σ`.
pub fn theta_adapt<F: Scalar>(pair: &SymmetricPair<F>, x: &[F]) -> Result<SL2Triple<F>> {
    if !pair.gsigma().contains(x) {
        return Err(Error::pre("element is not in g^σ"));
    }
    if vec_ops::is_zero(x) {
        return Ok(SL2Triple::zero(pair.dim(), true));
    }
    let (s, _) = neutral_candidates(pair.algebra(), x)?;
    theta_adapt_from_neutral(pair, x, &s)
}

/// θ-adaptation starting from any neutral candidate `s`: symmetrize `s`
/// into `h`, complete, and keep the `g^σ` part of the completion.
pub fn theta_adapt_from_neutral<F: Scalar>(
    pair: &SymmetricPair<F>,
    x: &[F],
    s: &[F],
) -> Result<SL2Triple<F>> {
    let g = pair.algebra();
    let half = F::from_integer(2).inverse().unwrap();
    let s1 = vec_ops::scale(&vec_ops::add(s, &pair.apply_theta(s)), &half);
    let ad_x = g.ad(x)?;
    if ad_x.mul_vec(&s1) != vec_ops::scale(x, &F::from_integer(-2)) {
        return Err(Error::invariant("symmetrized neutral element lost [s, x] = 2x"));
    }
    if ad_x.solve(&s1)?.is_none() {
        return Err(Error::invariant("symmetrized neutral element left [x, g]"));
    }
    let t = complete_with_neutral(g, x, &s1)?;
    let f = vec_ops::scale(&vec_ops::sub(&t.f, &pair.apply_theta(&t.f)), &half);
    let t = SL2Triple {
        f,
        theta_adapted: true,
        ..t
    };
    if !t.check_relations(g)? || !t.check_adapted(pair) {
        return Err(Error::invariant("θ-adapted triple fails its invariants"));
    }
    Ok(t)
}

/// Highest weights from weight multiplicities: `mult(λ) = m_λ − m_{λ+2}`.
pub fn weights_from_spectrum(spec: &Spectrum) -> Result<Vec<i64>> {
    let not_sl2 = |m: &str| Err(Error::invariant(format!("not an sl2 module: {m}")));
    for (k, m) in &spec.0 {
        if spec.multiplicity(-k) != *m {
            return not_sl2("weights are not symmetric");
        }
    }
    let top = spec.0.first().map_or(0, |p| p.0);
    let mut out = Vec::new();
    for l in (0..=top).rev() {
        let a = spec.multiplicity(l) as i64;
        let b = spec.multiplicity(l + 2) as i64;
        if a < b {
            return not_sl2("negative highest-weight multiplicity");
        }
        out.extend(std::iter::repeat(l).take((a - b) as usize));
    }
    if out.iter().map(|&l| (l + 1) as usize).sum::<usize>() != spec.total() {
        return not_sl2("weights do not account for the module");
    }
    Ok(out)
}

/// Decomposes a module on which the neutral element acts by `h_op`.
pub fn decompose_operator<F: Scalar>(h_op: &Matrix<F>) -> Result<WeightDecomposition> {
    let bound = 2 * h_op.rows().max(1) as i64;
    let spec = h_op.integer_spectrum(bound)?;
    let highest_weights = weights_from_spectrum(&spec)?;
    Ok(WeightDecomposition {
        highest_weights,
        weight_multiplicities: spec.0,
    })
}

/// The adjoint module of `g` under the triple.
pub fn sl2_decompose<F: Scalar>(g: &LieAlgebra<F>, t: &SL2Triple<F>) -> Result<WeightDecomposition> {
    if !t.check_relations(g)? {
        return Err(Error::pre("not an sl2 triple"));
    }
    decompose_operator(&g.ad(&t.h)?)
}
