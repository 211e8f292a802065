//! Symmetric pairs `(g, θ)`: the decomposition `g = h ⊕ g^σ`, the invariant
//! form, the cones `Q ⊇ Γ, R` in `g^σ`, and descendants at semisimple
//! elements.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{build_gl, build_product, build_quadratic_extension, kernel_within, BilinearForm, LieAlgebra};
use crate::linalg::{vec_ops, Matrix, Subspace, Vector};
use crate::scalar::{Rational, Scalar};

/// Which built-in family a pair belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `(gl_n ⊕ gl_n, Δ gl_n)` with the swap involution.
    Diagonal { n: usize },
    /// `(gl_n(ℚ(√D)), gl_n(ℚ))` with Galois conjugation.
    QuadraticExt { n: usize, d: i64 },
    Custom,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Diagonal { .. } => "diagonal",
            Family::QuadraticExt { .. } => "quadratic_ext",
            Family::Custom => "custom",
        }
    }

    /// Inner matrix size for the built-in families.
    pub fn inner_n(&self) -> Option<usize> {
        match self {
            Family::Diagonal { n } | Family::QuadraticExt { n, .. } => Some(*n),
            Family::Custom => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SymmetricPair<F: Scalar = Rational> {
    g: LieAlgebra<F>,
    theta: Matrix<F>,
    h: Subspace<F>,
    gsigma: Subspace<F>,
    form: BilinearForm<F>,
    family: Family,
}

/// Result of a cone membership test for `v ∈ g^σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeMembership<F: Scalar = Rational> {
    pub in_q: bool,
    pub in_gamma: bool,
    pub in_r: bool,
    pub q_projection: Vector<F>,
}

/// `g^σ = (g^σ)^h ⊕ Q` with `Q` the `B`-orthogonal complement of the
/// invariants.
#[derive(Clone, Debug)]
pub struct ConeSpaces<F: Scalar = Rational> {
    pub invariants: Subspace<F>,
    pub q: Subspace<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct JordanFlags {
    pub semisimple: bool,
    pub nilpotent: bool,
    pub unipotent: bool,
}

/// A descendant pair together with how it sits inside the parent.
#[derive(Clone, Debug)]
pub struct Descendant<F: Scalar = Rational> {
    pub pair: SymmetricPair<F>,
    /// Parent coordinates of the descendant's basis (`h_x` basis first,
    /// then `(g_x)^σ`).
    pub embedding: Vec<Vector<F>>,
    pub dim_hx: usize,
    pub dim_gsigma_x: usize,
    /// `dim g − 2·dim h + dim h_x` for the parent.
    pub predicted_dim_gsigma_x: i64,
}

impl<F: Scalar> Descendant<F> {
    pub fn dimension_identity_holds(&self) -> bool {
        self.dim_gsigma_x as i64 == self.predicted_dim_gsigma_x
    }
}

impl<F: Scalar> SymmetricPair<F> {
    /// Builds the pair and checks every structural invariant.
    pub fn new(
        g: LieAlgebra<F>,
        theta: Matrix<F>,
        form: BilinearForm<F>,
        family: Family,
    ) -> Result<Self> {
        let n = g.dim();
        if theta.rows() != n || theta.cols() != n || form.dim() != n {
            return Err(Error::dim("involution and form must match the algebra dimension"));
        }
        let id = Matrix::identity(n);
        let h = Subspace::from_spanning(n, &(&theta - &id).kernel_basis());
        let gsigma = Subspace::from_spanning(n, &(&theta + &id).kernel_basis());
        let pair = SymmetricPair {
            g,
            theta,
            h,
            gsigma,
            form,
            family,
        };
        pair.validate()?;
        Ok(pair)
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.g
    }

    pub fn theta(&self) -> &Matrix<F> {
        &self.theta
    }

    pub fn h(&self) -> &Subspace<F> {
        &self.h
    }

    pub fn gsigma(&self) -> &Subspace<F> {
        &self.gsigma
    }

    pub fn form(&self) -> &BilinearForm<F> {
        &self.form
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn apply_theta(&self, x: &[F]) -> Vector<F> {
        self.theta.mul_vec(x)
    }

    /// Checks: θ² = id, θ is an automorphism, `h ⊕ g^σ = g`, the bracket
    /// grading, `B` symmetric, non-degenerate, θ-invariant and ad-invariant,
    /// and `B(h, g^σ) = 0`.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let bad = |m: &str| Err(Error::input(format!("symmetric pair: {m}")));
        if &self.theta * &self.theta != Matrix::identity(n) {
            return bad("θ is not an involution");
        }
        let images: Vec<Vector<F>> = (0..n).map(|i| self.theta.column(i)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self
                    .theta
                    .mul_vec(&self.g.bracket_unchecked(&self.g.basis_vector(i), &self.g.basis_vector(j)));
                let rhs = self.g.bracket_unchecked(&images[i], &images[j]);
                if lhs != rhs {
                    return bad("θ is not a Lie algebra automorphism");
                }
            }
        }
        if self.h.dim() + self.gsigma.dim() != n {
            return bad("dim h + dim g^σ ≠ dim g");
        }
        let closed = |a: &Subspace<F>, b: &Subspace<F>, target: &Subspace<F>| {
            a.basis().iter().all(|x| {
                b.basis()
                    .iter()
                    .all(|y| target.contains(&self.g.bracket_unchecked(x, y)))
            })
        };
        if !closed(&self.h, &self.h, &self.h) {
            return bad("[h, h] ⊄ h");
        }
        if !closed(&self.h, &self.gsigma, &self.gsigma) {
            return bad("[h, g^σ] ⊄ g^σ");
        }
        if !closed(&self.gsigma, &self.gsigma, &self.h) {
            return bad("[g^σ, g^σ] ⊄ h");
        }
        if !self.form.is_symmetric() {
            return bad("form is not symmetric");
        }
        if !self.form.is_nondegenerate() {
            return bad("form is degenerate");
        }
        let pulled = &(&self.theta.transpose() * &self.form.gram) * &self.theta;
        if pulled != self.form.gram {
            return bad("form is not θ-invariant");
        }
        for x in self.h.basis() {
            for y in self.gsigma.basis() {
                if !self.form.eval(x, y).is_zero() {
                    return bad("h is not orthogonal to g^σ");
                }
            }
        }
        if !self.form.is_invariant(&self.g) {
            return bad("form is not ad-invariant");
        }
        Ok(())
    }

    fn require_gsigma(&self, v: &[F]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::dim("vector length does not match the algebra"));
        }
        if !self.gsigma.contains(v) {
            return Err(Error::pre("element is not in g^σ"));
        }
        Ok(())
    }

    /// The invariants `(g^σ)^h` and their `B`-orthogonal complement `Q`.
    pub fn cone_spaces(&self) -> Result<ConeSpaces<F>> {
        let ads: Vec<Matrix<F>> = self
            .h
            .basis()
            .iter()
            .map(|y| self.g.ad(y))
            .collect::<Result<_>>()?;
        let invariants = kernel_within(&ads, &self.gsigma);
        let q = if invariants.dim() == 0 {
            self.gsigma.clone()
        } else {
            let functionals: Vec<Vector<F>> = invariants
                .basis()
                .iter()
                .map(|w| self.form.gram.mul_vec(w))
                .collect();
            let rows = Matrix::from_rows(functionals)?;
            kernel_within(&[rows], &self.gsigma)
        };
        if invariants.dim() + q.dim() != self.gsigma.dim() || invariants.sum(&q).dim() != self.gsigma.dim() {
            return Err(Error::invariant(
                "invariants and their orthogonal complement do not span g^σ",
            ));
        }
        Ok(ConeSpaces { invariants, q })
    }

    /// Membership of `v ∈ g^σ` in `Q`, the nilpotent cone `Γ ⊆ Q` and
    /// `R = Q ∖ Γ`.
    pub fn cone_membership(&self, v: &[F]) -> Result<ConeMembership<F>> {
        let spaces = self.cone_spaces()?;
        self.cone_membership_with(&spaces, v)
    }

    pub fn cone_membership_with(&self, spaces: &ConeSpaces<F>, v: &[F]) -> Result<ConeMembership<F>> {
        self.require_gsigma(v)?;
        if !self.g.has_realization() {
            return Err(Error::pre("cone membership requires a matrix realization"));
        }
        let n = self.dim();
        let mut cols = spaces.invariants.basis().to_vec();
        cols.extend(spaces.q.basis().iter().cloned());
        let coords = Matrix::from_columns(n, &cols)?
            .solve(v)?
            .ok_or_else(|| Error::invariant("element of g^σ outside invariants ⊕ Q"))?;
        let k = spaces.invariants.dim();
        let q_projection = vec_ops::combination(n, &coords[k..], spaces.q.basis());
        let in_q = coords[..k].iter().all(|c| c.is_zero());
        let nilpotent = self.g.realize(&q_projection).unwrap().is_nilpotent();
        let in_gamma = in_q && nilpotent;
        Ok(ConeMembership {
            in_q,
            in_gamma,
            in_r: in_q && !in_gamma,
            q_projection,
        })
    }

    /// Semisimple / nilpotent / unipotent flags of the realized element.
    pub fn jordan_flags(&self, x: &[F]) -> Result<JordanFlags> {
        let m = self
            .g
            .realize(x)
            .ok_or_else(|| Error::pre("Jordan flags require a matrix realization"))?;
        jordan_flags_of(&m)
    }

    fn is_semisimple_element(&self, x: &[F]) -> Result<bool> {
        match self.g.realize(x) {
            Some(m) => m.is_semisimple(),
            None => self.g.ad(x)?.is_semisimple(),
        }
    }

    /// The descendant `(g_x, θ|_{g_x})` at a semisimple `x ∈ g^σ`.
    pub fn descendant(&self, x: &[F]) -> Result<Descendant<F>> {
        self.require_gsigma(x)?;
        if !self.is_semisimple_element(x)? {
            return Err(Error::pre("descendant requires a semisimple element"));
        }
        let ad = self.g.ad(x)?;
        self.descendant_from_operators(&[ad])
    }

    /// Descendant along the joint kernel of `ops` (θ-stable by assumption:
    /// `ad x` for `x ∈ g^σ`, or `Ad(s(g)) − 1` at group level).
    pub(crate) fn descendant_from_operators(&self, ops: &[Matrix<F>]) -> Result<Descendant<F>> {
        let n = self.dim();
        let g_x = kernel_within(ops, &Subspace::full(n));
        let h_x = kernel_within(ops, &self.h);
        let gs_x = kernel_within(ops, &self.gsigma);
        if h_x.dim() + gs_x.dim() != g_x.dim() {
            return Err(Error::invariant("centralizer is not θ-stable"));
        }
        let mut basis = h_x.basis().to_vec();
        basis.extend(gs_x.basis().iter().cloned());
        let sub = self.g.subalgebra(&basis)?;
        let k = h_x.dim();
        let m = gs_x.dim();
        let mut theta = Matrix::identity(k + m);
        for i in k..k + m {
            theta[(i, i)] = -F::one();
        }
        let form = self.form.restrict(&basis);
        if !form.is_nondegenerate() {
            return Err(Error::invariant(
                "degenerate restriction of the invariant form to the centralizer",
            ));
        }
        let pair = SymmetricPair::new(sub, theta, form, Family::Custom)?;
        Ok(Descendant {
            pair,
            embedding: basis,
            dim_hx: k,
            dim_gsigma_x: m,
            predicted_dim_gsigma_x: n as i64 - 2 * self.h.dim() as i64 + k as i64,
        })
    }

    /// For built-in families, whether a descendant has the same shape as
    /// its parent: `g_x = L ⊕ θ(L)` with `L` inside the first factor
    /// (diagonal), or `g_x = h_x ⊕ √D·h_x` (quadratic extension). `None`
    /// for custom pairs.
    pub fn descendant_has_family_shape(&self, desc: &Descendant<F>) -> Option<bool> {
        let n = self.dim();
        let g_x = Subspace::from_spanning(n, &desc.embedding);
        match self.family {
            Family::Diagonal { n: inner } => {
                let half = inner * inner;
                let left: Vec<Vector<F>> = (0..half).map(|i| vec_ops::basis(n, i)).collect();
                let left = Subspace::from_spanning(n, &left);
                let in_left = intersect(&g_x, &left);
                let mirrored: Vec<Vector<F>> =
                    in_left.basis().iter().map(|v| self.apply_theta(v)).collect();
                let mirror = Subspace::from_spanning(n, &mirrored);
                Some(
                    2 * in_left.dim() == g_x.dim()
                        && g_x.contains_subspace(&mirror)
                        && in_left.sum(&mirror).dim() == g_x.dim(),
                )
            }
            Family::QuadraticExt { n: inner, d } => {
                let ext = build_quadratic_extension(&build_gl::<F>(inner).ok()?, d).ok()?;
                let h_x = Subspace::from_spanning(n, &desc.embedding[..desc.dim_hx]);
                let gs_x = Subspace::from_spanning(n, &desc.embedding[desc.dim_hx..]);
                let scaled: Vec<Vector<F>> = h_x.basis().iter().map(|v| ext.sqrt_d.mul_vec(v)).collect();
                let scaled = Subspace::from_spanning(n, &scaled);
                Some(scaled == gs_x)
            }
            Family::Custom => None,
        }
    }
}

fn intersect<F: Scalar>(a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
    // v = Σ α_i a_i ∈ b  ⇔  the component of v off b vanishes.
    let n = a.ambient_dim();
    let mut cols = a.basis().to_vec();
    cols.extend(b.basis().iter().map(|v| vec_ops::scale(v, &-F::one())));
    let m = Matrix::from_columns(n, &cols).expect("uniform columns");
    let kernel = m.kernel_basis();
    let vecs: Vec<Vector<F>> = kernel
        .iter()
        .map(|c| a.vector(&c[..a.dim()]))
        .collect();
    Subspace::from_spanning(n, &vecs)
}

pub fn jordan_flags_of<F: Scalar>(m: &Matrix<F>) -> Result<JordanFlags> {
    let id = Matrix::identity(m.rows());
    Ok(JordanFlags {
        semisimple: m.is_semisimple()?,
        nilpotent: m.is_nilpotent_exact()?,
        unipotent: (m - &id).is_nilpotent_exact()?,
    })
}

/// The pair `(gl_n ⊕ gl_n, Δ gl_n)` with `θ(X, Y) = (Y, X)` and the trace
/// form of the block diagonal realization.
pub fn make_diagonal_pair<F: Scalar>(n: usize) -> Result<SymmetricPair<F>> {
    let gl = build_gl::<F>(n)?;
    let g = build_product(&gl, &gl)?;
    let half = n * n;
    let mut theta = Matrix::zeros(2 * half, 2 * half);
    for i in 0..half {
        theta[(half + i, i)] = F::one();
        theta[(i, half + i)] = F::one();
    }
    let form = g.trace_form()?;
    SymmetricPair::new(g, theta, form, Family::Diagonal { n })
}

/// The pair `(gl_n(ℚ(√D)), gl_n(ℚ))` with Galois conjugation, realized over
/// ℚ by `2n × 2n` blocks; the form is the trace form of that realization.
pub fn make_quadratic_ext_pair<F: Scalar>(n: usize, d: i64) -> Result<SymmetricPair<F>> {
    let ext = build_quadratic_extension(&build_gl::<F>(n)?, d)?;
    let form = ext.algebra.trace_form()?;
    SymmetricPair::new(ext.algebra, ext.conjugation, form, Family::QuadraticExt { n, d })
}

/// Coordinates of `(X, Y)` in the diagonal pair's algebra.
pub fn diagonal_coords<F: Scalar>(x: &Matrix<F>, y: &Matrix<F>) -> Vector<F> {
    let mut v = x.entries().to_vec();
    v.extend(y.entries().iter().cloned());
    v
}

/// Coordinates of `A + √D·B` in the quadratic-extension pair's algebra.
pub fn quadratic_coords<F: Scalar>(re: &Matrix<F>, im: &Matrix<F>) -> Vector<F> {
    diagonal_coords(re, im)
}

/// The element `(X, −X)`, resp. `√D·X`, of `g^σ` for a built-in family.
pub fn gsigma_element<F: Scalar>(family: Family, x: &Matrix<F>) -> Result<Vector<F>> {
    let z = Matrix::zeros(x.rows(), x.cols());
    match family {
        Family::Diagonal { .. } => Ok(diagonal_coords(x, &-x)),
        Family::QuadraticExt { .. } => Ok(quadratic_coords(&z, x)),
        Family::Custom => Err(Error::pre("no canonical g^σ embedding for a custom pair")),
    }
}

/// The element `(X, X)`, resp. `X`, of `h` for a built-in family.
pub fn h_element<F: Scalar>(family: Family, x: &Matrix<F>) -> Result<Vector<F>> {
    let z = Matrix::zeros(x.rows(), x.cols());
    match family {
        Family::Diagonal { .. } => Ok(diagonal_coords(x, x)),
        Family::QuadraticExt { .. } => Ok(quadratic_coords(x, &z)),
        Family::Custom => Err(Error::pre("no canonical h embedding for a custom pair")),
    }
}

impl SymmetricPair<Rational> {
    /// Zero vector of the algebra.
    pub fn zero_vector(&self) -> Vector<Rational> {
        vec![Rational::zero(); self.dim()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn d(xs: &[i64]) -> Matrix {
        Matrix::diagonal(&xs.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    #[test]
    fn diagonal_pair_dimensions() {
        let p = make_diagonal_pair::<Rational>(2).unwrap();
        assert_eq!((p.dim(), p.h().dim(), p.gsigma().dim()), (8, 4, 4));
        let e12 = Matrix::unit(2, 0, 1);
        let z = Matrix::zeros(2, 2);
        assert_eq!(p.apply_theta(&diagonal_coords(&e12, &z)), diagonal_coords(&z, &e12));
        let a = gsigma_element(p.family(), &e12).unwrap();
        let b = gsigma_element(p.family(), &Matrix::unit(2, 1, 0)).unwrap();
        assert!(p.h().contains(&p.algebra().bracket(&a, &b).unwrap()));
    }

    #[test]
    fn quadratic_pair_dimensions() {
        let p = make_quadratic_ext_pair::<Rational>(2, -1).unwrap();
        assert_eq!(p.gsigma().dim(), 4);
        let x = gsigma_element(p.family(), &Matrix::unit(2, 0, 0)).unwrap();
        assert_eq!(p.apply_theta(&x), vec_ops::scale(&x, &rat(-1)));
        // [√D X, √D Y] = D [X, Y]
        for dd in [-1i64, 2, 5] {
            let p = make_quadratic_ext_pair::<Rational>(2, dd).unwrap();
            let (xm, ym) = (Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0));
            let lhs = p
                .algebra()
                .bracket(&gsigma_element(p.family(), &xm).unwrap(), &gsigma_element(p.family(), &ym).unwrap())
                .unwrap();
            let rhs = h_element(p.family(), &xm.commutator(&ym).scale(&rat(dd))).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(make_quadratic_ext_pair::<Rational>(2, 9).is_err());
    }

    #[test]
    fn rejects_non_involution() {
        let p = make_diagonal_pair::<Rational>(1).unwrap();
        let bad = Matrix::identity(2).scale(&rat(2));
        let r = SymmetricPair::new(p.algebra().clone(), bad, p.form().clone(), Family::Custom);
        assert!(matches!(r, Err(Error::Input(_))));
    }

    #[test]
    fn invariants_are_central_elements() {
        let p = make_diagonal_pair::<Rational>(3).unwrap();
        let s = p.cone_spaces().unwrap();
        assert_eq!(s.invariants.dim(), 1);
        let id = Matrix::<Rational>::identity(3);
        assert!(s.invariants.contains(&gsigma_element(p.family(), &id).unwrap()));
        let q = make_quadratic_ext_pair::<Rational>(2, 5).unwrap();
        let s = q.cone_spaces().unwrap();
        assert_eq!(s.invariants.dim(), 1);
        assert!(s.invariants.contains(&gsigma_element(q.family(), &Matrix::identity(2)).unwrap()));
    }

    #[test]
    fn cone_examples() {
        let p = make_diagonal_pair::<Rational>(2).unwrap();
        let fam = p.family();
        let c = p.cone_membership(&gsigma_element(fam, &Matrix::identity(2)).unwrap()).unwrap();
        assert!(!c.in_q);
        let c = p.cone_membership(&gsigma_element(fam, &Matrix::unit(2, 0, 1)).unwrap()).unwrap();
        assert!(c.in_q && c.in_gamma && !c.in_r);
        let c = p.cone_membership(&gsigma_element(fam, &d(&[1, -1])).unwrap()).unwrap();
        assert!(c.in_q && c.in_r && !c.in_gamma);
        // off g^σ
        let h = h_element(fam, &Matrix::unit(2, 0, 1)).unwrap();
        assert!(matches!(p.cone_membership(&h), Err(Error::Precondition(_))));
    }

    #[test]
    fn cone_projection_strips_invariants() {
        let p = make_diagonal_pair::<Rational>(2).unwrap();
        let fam = p.family();
        // diag(2, 0) = I + diag(1, -1)
        let c = p.cone_membership(&gsigma_element(fam, &d(&[2, 0])).unwrap()).unwrap();
        assert!(!c.in_q);
        assert_eq!(c.q_projection, gsigma_element(fam, &d(&[1, -1])).unwrap());
    }

    #[test]
    fn jordan_flag_examples() {
        let p = make_diagonal_pair::<Rational>(2).unwrap();
        let e = gsigma_element(p.family(), &Matrix::unit(2, 0, 1)).unwrap();
        let f = p.jordan_flags(&e).unwrap();
        assert!(f.nilpotent && !f.semisimple);
        let id = Matrix::<Rational>::identity(2);
        let f = jordan_flags_of(&id).unwrap();
        assert!(f.semisimple && f.unipotent && !f.nilpotent);
        let u = &id + &Matrix::unit(2, 0, 1);
        let f = jordan_flags_of(&u).unwrap();
        assert!(f.unipotent && !f.semisimple);
        assert!(jordan_flags_of(&d(&[2, 3])).unwrap().semisimple);
    }

    #[test]
    fn descendant_at_zero_is_whole_pair() {
        let p = make_diagonal_pair::<Rational>(2).unwrap();
        let desc = p.descendant(&p.zero_vector()).unwrap();
        assert_eq!(desc.pair.dim(), p.dim());
        assert_eq!(desc.dim_hx, p.h().dim());
        assert_eq!(desc.dim_gsigma_x, p.gsigma().dim());
        assert!(desc.dimension_identity_holds());
    }

    #[test]
    fn descendant_at_regular_semisimple() {
        let p = make_diagonal_pair::<Rational>(2).unwrap();
        let x = gsigma_element(p.family(), &d(&[1, -1])).unwrap();
        let desc = p.descendant(&x).unwrap();
        assert_eq!(desc.pair.dim(), 4);
        assert_eq!(desc.dim_hx, 2);
        assert!(desc.dimension_identity_holds());
        assert_eq!(p.descendant_has_family_shape(&desc), Some(true));
        desc.pair.validate().unwrap();
    }

    #[test]
    fn descendant_rejects_nilpotent() {
        let p = make_diagonal_pair::<Rational>(2).unwrap();
        let x = gsigma_element(p.family(), &Matrix::unit(2, 0, 1)).unwrap();
        assert!(matches!(p.descendant(&x), Err(Error::Precondition(_))));
    }

    #[test]
    fn quadratic_descendant_shape() {
        let p = make_quadratic_ext_pair::<Rational>(2, 2).unwrap();
        let x = gsigma_element(p.family(), &d(&[1, 0])).unwrap();
        let desc = p.descendant(&x).unwrap();
        assert!(desc.dimension_identity_holds());
        assert_eq!(p.descendant_has_family_shape(&desc), Some(true));
    }
}
