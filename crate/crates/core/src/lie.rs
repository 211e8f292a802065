//! Finite-dimensional Lie algebras given by structure constants, with an
//! optional faithful matrix realization.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{vec_ops, Matrix, Subspace, Vector};
use crate::scalar::{is_valid_discriminant, Rational, Scalar};

#[derive(Debug)]
pub struct LieAlgebra<F: Scalar = Rational> {
    labels: Vec<String>,
    /// `brackets[i * dim + j]` lists the nonzero `(k, c_ijk)` of `[e_i, e_j]`.
    brackets: Vec<Vec<(usize, F)>>,
    realization: Option<Vec<Matrix<F>>>,
    coordinate_solver: OnceLock<Option<RealizationSolver<F>>>,
}

impl<F: Scalar> Clone for LieAlgebra<F> {
    fn clone(&self) -> Self {
        LieAlgebra {
            labels: self.labels.clone(),
            brackets: self.brackets.clone(),
            realization: self.realization.clone(),
            coordinate_solver: OnceLock::new(),
        }
    }
}

/// Recovers algebra coordinates from a realized matrix: a square invertible
/// block of the flattened realization, selected by pivot rows.
#[derive(Debug, Clone)]
struct RealizationSolver<F: Scalar> {
    rows: Vec<usize>,
    inverse: Matrix<F>,
}

/// Symmetric bilinear form given by its Gram matrix in the algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<F: Scalar = Rational> {
    pub gram: Matrix<F>,
}

impl<F: Scalar> BilinearForm<F> {
    pub fn new(gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::dim("Gram matrix must be square"));
        }
        Ok(BilinearForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(&gy)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_invertible()
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    /// Radical `{x : B(x, ·) = 0}`.
    pub fn radical(&self) -> Subspace<F> {
        Subspace::from_spanning(self.dim(), &self.gram.kernel_basis())
    }

    /// Gram matrix of `B` on the given vectors.
    pub fn restrict(&self, basis: &[Vector<F>]) -> BilinearForm<F> {
        let k = basis.len();
        let mut gram = Matrix::zeros(k, k);
        let images: Vec<Vector<F>> = basis.iter().map(|b| self.gram.mul_vec(b)).collect();
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = dot(&basis[i], &images[j]);
            }
        }
        BilinearForm { gram }
    }

    /// `B([z,x],y) + B(x,[z,y]) = 0` on all basis triples.
    pub fn is_invariant(&self, g: &LieAlgebra<F>) -> bool {
        let n = g.dim();
        let ads: Vec<Matrix<F>> = (0..n).map(|z| g.ad_basis(z)).collect();
        // B(ad_z x, y) + B(x, ad_z y) = 0  ⇔  ad_zᵀ G + G ad_z = 0
        ads.iter().all(|a| {
            let lhs = &(&a.transpose() * &self.gram) + &(&self.gram * a);
            lhs.is_zero()
        })
    }
}

pub(crate) fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `g ⊗ ℚ(√D)` viewed over the base field, basis `e_i` then `√D·e_i`.
#[derive(Clone, Debug)]
pub struct QuadraticExtension<F: Scalar = Rational> {
    pub algebra: LieAlgebra<F>,
    /// Galois conjugation `e_i ↦ e_i`, `√D·e_i ↦ −√D·e_i`.
    pub conjugation: Matrix<F>,
    /// Multiplication by `√D`.
    pub sqrt_d: Matrix<F>,
    pub discriminant: i64,
}

impl<F: Scalar> LieAlgebra<F> {
    /// Validates antisymmetry, the Jacobi identity and, if present, that the
    /// realization reproduces the structure constants.
    pub fn from_structure_constants(
        labels: Vec<String>,
        constants: &[Vec<Vec<F>>],
        realization: Option<Vec<Matrix<F>>>,
    ) -> Result<Self> {
        let n = constants.len();
        if labels.len() != n {
            return Err(Error::dim(format!("{} labels for dimension {n}", labels.len())));
        }
        let mut brackets = Vec::with_capacity(n * n);
        for (i, row) in constants.iter().enumerate() {
            if row.len() != n {
                return Err(Error::dim(format!("structure constants row {i} has wrong length")));
            }
            for (j, cij) in row.iter().enumerate() {
                if cij.len() != n {
                    return Err(Error::dim(format!("c[{i}][{j}] has wrong length")));
                }
                brackets.push(
                    cij.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k, c.clone()))
                        .collect(),
                );
            }
        }
        let g = Self::from_parts(labels, brackets, realization)?;
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        g.check_realization()?;
        Ok(g)
    }

    /// Structure constants computed from matrix commutators. The matrices
    /// must be linearly independent and span a subspace closed under the
    /// commutator.
    pub fn from_realization(labels: Vec<String>, matrices: Vec<Matrix<F>>) -> Result<Self> {
        let n = matrices.len();
        if labels.len() != n {
            return Err(Error::dim("label count does not match realization"));
        }
        let mut g = Self::from_parts(labels, vec![Vec::new(); n * n], Some(matrices))?;
        let mats = g.realization.clone().unwrap();
        for i in 0..n {
            for j in 0..n {
                let c = mats[i].commutator(&mats[j]);
                let coords = g.realization_coordinates(&c).ok_or_else(|| {
                    Error::input(format!("realization not closed under [{i}, {j}]"))
                })?;
                g.brackets[i * n + j] = sparse(&coords);
            }
        }
        Ok(g)
    }

    fn from_parts(
        labels: Vec<String>,
        brackets: Vec<Vec<(usize, F)>>,
        realization: Option<Vec<Matrix<F>>>,
    ) -> Result<Self> {
        let n = labels.len();
        if let Some(r) = &realization {
            if r.len() != n {
                return Err(Error::dim("realization size does not match dimension"));
            }
            let size = r.first().map_or(0, |m| m.rows());
            if r.iter().any(|m| !m.is_square() || m.rows() != size) {
                return Err(Error::dim("realization matrices must be square of equal size"));
            }
        }
        let g = LieAlgebra {
            labels,
            brackets,
            realization,
            coordinate_solver: OnceLock::new(),
        };
        if g.realization.is_some() && g.solver().is_none() {
            return Err(Error::input("realization matrices are linearly dependent"));
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn realization(&self) -> Option<&[Matrix<F>]> {
        self.realization.as_deref()
    }

    pub fn has_realization(&self) -> bool {
        self.realization.is_some()
    }

    /// Size of the realizing matrices.
    pub fn realization_size(&self) -> Option<usize> {
        self.realization
            .as_ref()
            .map(|r| r.first().map_or(0, |m| m.rows()))
    }

    /// `c_ijk` with `[e_i, e_j] = Σ_k c_ijk e_k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F {
        self.brackets[i * self.dim() + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    /// Dense table `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<F>>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec_ops::zero(n);
                        for (k, c) in &self.brackets[i * n + j] {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        vec_ops::basis(self.dim(), i)
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Result<Vector<F>> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::dim(format!(
                "bracket of vectors of length {} and {} in dimension {n}",
                x.len(),
                y.len()
            )));
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[F], y: &[F]) -> Vector<F> {
        let n = self.dim();
        let mut out = vec_ops::zero(n);
        let ys: Vec<(usize, &F)> = y
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &(j, yj) in &ys {
                let s = xi.clone() * yj.clone();
                for (k, c) in &self.brackets[i * n + j] {
                    let acc = std::mem::replace(&mut out[*k], F::zero());
                    out[*k] = acc + s.clone() * c.clone();
                }
            }
        }
        out
    }

    fn ad_basis(&self, i: usize) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in &self.brackets[i * n + j] {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad(&self, x: &[F]) -> Result<Matrix<F>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::dim("ad of a vector of wrong length"));
        }
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in &self.brackets[i * n + j] {
                    let acc = std::mem::replace(&mut m[(*k, j)], F::zero());
                    m[(*k, j)] = acc + xi.clone() * c.clone();
                }
            }
        }
        Ok(m)
    }

    /// `κ(x, y) = tr(ad x · ad y)`.
    pub fn killing_form(&self) -> BilinearForm<F> {
        let n = self.dim();
        let ads: Vec<Matrix<F>> = (0..n).map(|i| self.ad_basis(i)).collect();
        let entries: Vec<Vec<(usize, usize, F)>> = ads
            .iter()
            .map(|a| {
                let mut e = Vec::new();
                for r in 0..n {
                    for c in 0..n {
                        if !a[(r, c)].is_zero() {
                            e.push((r, c, a[(r, c)].clone()));
                        }
                    }
                }
                e
            })
            .collect();
        let mut gram = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = entries[i]
                    .iter()
                    .filter(|(r, c, _)| !ads[j][(*c, *r)].is_zero())
                    .fold(F::zero(), |acc, (r, c, x)| acc + x.clone() * ads[j][(*c, *r)].clone());
                gram[(i, j)] = v.clone();
                gram[(j, i)] = v;
            }
        }
        BilinearForm { gram }
    }

    /// `B(x, y) = tr(ρ(x) ρ(y))` in the realization.
    pub fn trace_form(&self) -> Result<BilinearForm<F>> {
        let mats = self
            .realization
            .as_ref()
            .ok_or_else(|| Error::pre("trace form requires a matrix realization"))?;
        let n = self.dim();
        let mut gram = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = trace_of_product(&mats[i], &mats[j]);
                gram[(i, j)] = v.clone();
                gram[(j, i)] = v;
            }
        }
        Ok(BilinearForm { gram })
    }

    /// `{y : [s, y] = 0 for all s ∈ S}`.
    pub fn centralizer(&self, set: &[Vector<F>]) -> Result<Subspace<F>> {
        self.centralizer_in(set, &Subspace::full(self.dim()))
    }

    /// `{y ∈ W : [s, y] = 0 for all s ∈ S}`.
    pub fn centralizer_in(&self, set: &[Vector<F>], within: &Subspace<F>) -> Result<Subspace<F>> {
        let n = self.dim();
        if within.ambient_dim() != n {
            return Err(Error::dim("subspace ambient dimension"));
        }
        let ops: Vec<Matrix<F>> = set.iter().map(|s| self.ad(s)).collect::<Result<_>>()?;
        Ok(kernel_within(&ops, within))
    }

    /// `ρ(x) = Σ x_i ρ(e_i)`.
    pub fn realize(&self, x: &[F]) -> Option<Matrix<F>> {
        let mats = self.realization.as_ref()?;
        let size = self.realization_size().unwrap();
        let mut out = Matrix::zeros(size, size);
        for (xi, m) in x.iter().zip(mats) {
            if !xi.is_zero() {
                out = &out + &m.scale(xi);
            }
        }
        Some(out)
    }

    fn solver(&self) -> Option<&RealizationSolver<F>> {
        self.coordinate_solver
            .get_or_init(|| {
                let mats = self.realization.as_ref()?;
                let flat: Vec<Vector<F>> = mats.iter().map(|m| m.entries().to_vec()).collect();
                // Pivot columns of the transposed system pick independent rows.
                let rows_t = Matrix::from_rows(flat).ok()?;
                let (_, pivots) = rows_t.rref();
                if pivots.len() != self.dim() {
                    return None;
                }
                let n = self.dim();
                let mut block = Matrix::zeros(n, n);
                for (r, &p) in pivots.iter().enumerate() {
                    for (c, m) in mats.iter().enumerate() {
                        block[(r, c)] = m.entries()[p].clone();
                    }
                }
                Some(RealizationSolver {
                    rows: pivots,
                    inverse: block.inverse()?,
                })
            })
            .as_ref()
    }

    /// Algebra coordinates of a matrix lying in the span of the realization.
    pub fn realization_coordinates(&self, m: &Matrix<F>) -> Option<Vector<F>> {
        let solver = self.solver()?;
        if Some(m.rows()) != self.realization_size() || !m.is_square() {
            return None;
        }
        let picked: Vector<F> = solver.rows.iter().map(|&p| m.entries()[p].clone()).collect();
        let coords = solver.inverse.mul_vec(&picked);
        (self.realize(&coords).as_ref() == Some(m)).then_some(coords)
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let a = self.bracket_unchecked(&self.basis_vector(i), &self.basis_vector(j));
                let b = self.bracket_unchecked(&self.basis_vector(j), &self.basis_vector(i));
                if vec_ops::add(&a, &b).iter().any(|c| !c.is_zero()) {
                    return Err(Error::input(format!(
                        "structure constants not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Jacobi identity on all basis triples `i < j < k`.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let e: Vec<Vector<F>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let br = |x: &[F], y: &[F]| self.bracket_unchecked(x, y);
        for i in 0..n {
            for j in (i + 1)..n {
                let ij = br(&e[i], &e[j]);
                for k in (j + 1)..n {
                    let t1 = br(&ij, &e[k]);
                    let t2 = br(&br(&e[j], &e[k]), &e[i]);
                    let t3 = br(&br(&e[k], &e[i]), &e[j]);
                    let s = vec_ops::add(&vec_ops::add(&t1, &t2), &t3);
                    if !vec_ops::is_zero(&s) {
                        return Err(Error::input(format!(
                            "Jacobi identity fails on ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_realization(&self) -> Result<()> {
        let Some(mats) = &self.realization else {
            return Ok(());
        };
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let c = mats[i].commutator(&mats[j]);
                let expected = self
                    .realize(&self.bracket_unchecked(&self.basis_vector(i), &self.basis_vector(j)))
                    .unwrap();
                if c != expected {
                    return Err(Error::input(format!(
                        "realization commutator disagrees with [e{i}, e{j}]"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_subalgebra(&self, w: &Subspace<F>) -> bool {
        let b = w.basis();
        (0..b.len()).all(|i| ((i + 1)..b.len()).all(|j| w.contains(&self.bracket_unchecked(&b[i], &b[j]))))
    }

    /// The subalgebra spanned by `basis`, expressed in that basis, with the
    /// realization restricted accordingly.
    pub fn subalgebra(&self, basis: &[Vector<F>]) -> Result<LieAlgebra<F>> {
        let n = self.dim();
        let k = basis.len();
        let coords_solver = Matrix::from_columns(n, basis)?;
        if coords_solver.rank() != k {
            return Err(Error::input("subalgebra basis is linearly dependent"));
        }
        let mut rhs = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                rhs.push(self.bracket_unchecked(&basis[i], &basis[j]));
            }
        }
        let rhs_m = Matrix::from_columns(n, &rhs)?;
        let sol = coords_solver
            .solve_many(&rhs_m)?
            .ok_or_else(|| Error::input("subspace is not closed under the bracket"))?;
        let brackets = (0..k * k).map(|c| sparse(&sol.column(c))).collect();
        let labels = (0..k).map(|i| format!("b{}", i + 1)).collect();
        let realization = match &self.realization {
            Some(_) => Some(basis.iter().map(|b| self.realize(b).unwrap()).collect()),
            None => None,
        };
        Self::from_parts(labels, brackets, realization)
    }
}

fn sparse<F: Scalar>(v: &[F]) -> Vec<(usize, F)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

fn trace_of_product<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> F {
    let n = a.rows();
    let mut acc = F::zero();
    for i in 0..n {
        for k in 0..n {
            if a[(i, k)].is_zero() || b[(k, i)].is_zero() {
                continue;
            }
            acc = acc + a[(i, k)].clone() * b[(k, i)].clone();
        }
    }
    acc
}

/// Joint kernel of `ops` restricted to `within`.
pub(crate) fn kernel_within<F: Scalar>(ops: &[Matrix<F>], within: &Subspace<F>) -> Subspace<F> {
    let n = within.ambient_dim();
    let k = within.dim();
    if ops.is_empty() {
        return within.clone();
    }
    if k == 0 {
        return Subspace::zero(n);
    }
    let mut stacked: Option<Matrix<F>> = None;
    for op in ops {
        let cols: Vec<Vector<F>> = within.basis().iter().map(|w| op.mul_vec(w)).collect();
        let block = Matrix::from_columns(op.rows(), &cols).expect("uniform columns");
        stacked = Some(match stacked {
            None => block,
            Some(s) => s.vstack(&block).expect("same column count"),
        });
    }
    let kernel = stacked.unwrap().kernel_basis();
    let vecs: Vec<Vector<F>> = kernel.iter().map(|c| within.vector(c)).collect();
    Subspace::from_spanning(n, &vecs)
}

/// Matrix of `op` restricted to an `op`-stable subspace, in the subspace's
/// basis. `None` if the subspace is not stable.
pub fn restrict_operator<F: Scalar>(op: &Matrix<F>, w: &Subspace<F>) -> Option<Matrix<F>> {
    let k = w.dim();
    let mut m = Matrix::zeros(k, k);
    for (j, b) in w.basis().iter().enumerate() {
        let c = w.coordinates(&op.mul_vec(b))?;
        for (i, x) in c.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    Some(m)
}

fn unit_label(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{}_{}", i + 1, j + 1)
    }
}

/// `gl_n` in the basis `E_11, E_12, …, E_nn` (row-major), with its defining
/// realization.
pub fn build_gl<F: Scalar>(n: usize) -> Result<LieAlgebra<F>> {
    if n == 0 {
        return Err(Error::pre("gl_n requires n ≥ 1"));
    }
    let dim = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut brackets = vec![Vec::new(); dim * dim];
    // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut v = vec_ops::zero::<F>(dim);
                    if j == k {
                        v[idx(i, l)] = v[idx(i, l)].clone() + F::one();
                    }
                    if l == i {
                        v[idx(k, j)] = v[idx(k, j)].clone() - F::one();
                    }
                    brackets[idx(i, j) * dim + idx(k, l)] = sparse(&v);
                }
            }
        }
    }
    let labels = (0..dim).map(|a| unit_label(a / n, a % n, n)).collect();
    let realization = (0..dim).map(|a| Matrix::unit(n, a / n, a % n)).collect();
    LieAlgebra::from_parts(labels, brackets, Some(realization))
}

/// Coordinates in `gl_n` of an `n × n` matrix.
pub fn gl_coordinates<F: Scalar>(m: &Matrix<F>) -> Vector<F> {
    m.entries().to_vec()
}

/// `g₁ ⊕ g₂` with componentwise bracket; realization is block diagonal when
/// both factors are realized.
pub fn build_product<F: Scalar>(a: &LieAlgebra<F>, b: &LieAlgebra<F>) -> Result<LieAlgebra<F>> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut brackets = vec![Vec::new(); n * n];
    for i in 0..na {
        for j in 0..na {
            brackets[i * n + j] = a.brackets[i * na + j].clone();
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            brackets[(na + i) * n + na + j] = b.brackets[i * nb + j]
                .iter()
                .map(|(k, c)| (na + k, c.clone()))
                .collect();
        }
    }
    let labels = a
        .labels
        .iter()
        .map(|l| format!("1:{l}"))
        .chain(b.labels.iter().map(|l| format!("2:{l}")))
        .collect();
    let realization = match (&a.realization, &b.realization) {
        (Some(ra), Some(rb)) => {
            let (sa, sb) = (a.realization_size().unwrap(), b.realization_size().unwrap());
            let mut out = Vec::with_capacity(n);
            for m in ra {
                out.push(block_diag(m, &Matrix::zeros(sb, sb)));
            }
            for m in rb {
                out.push(block_diag(&Matrix::zeros(sa, sa), m));
            }
            Some(out)
        }
        _ => None,
    };
    LieAlgebra::from_parts(labels, brackets, realization)
}

pub fn block_diag<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let (ra, rb) = (a.rows(), b.rows());
    let mut m = Matrix::zeros(ra + rb, a.cols() + b.cols());
    for r in 0..ra {
        for c in 0..a.cols() {
            m[(r, c)] = a[(r, c)].clone();
        }
    }
    for r in 0..rb {
        for c in 0..b.cols() {
            m[(ra + r, a.cols() + c)] = b[(r, c)].clone();
        }
    }
    m
}

/// Block realization `a + b√D ↦ [[a, D·b], [b, a]]`.
pub fn quadratic_block<F: Scalar>(re: &Matrix<F>, im: &Matrix<F>, d: i64) -> Matrix<F> {
    let s = re.rows();
    let df = F::from_integer(d);
    let mut m = Matrix::zeros(2 * s, 2 * s);
    for r in 0..s {
        for c in 0..s {
            m[(r, c)] = re[(r, c)].clone();
            m[(s + r, s + c)] = re[(r, c)].clone();
            m[(r, s + c)] = df.clone() * im[(r, c)].clone();
            m[(s + r, c)] = im[(r, c)].clone();
        }
    }
    m
}

/// Restriction of scalars of `g ⊗ ℚ(√D)` to the base field.
pub fn build_quadratic_extension<F: Scalar>(
    g: &LieAlgebra<F>,
    d: i64,
) -> Result<QuadraticExtension<F>> {
    if !is_valid_discriminant(d) {
        return Err(Error::input(format!(
            "discriminant {d} must be a square-free integer other than 0 and 1"
        )));
    }
    let m = g.dim();
    let n = 2 * m;
    let df = F::from_integer(d);
    let mut brackets = vec![Vec::new(); n * n];
    for i in 0..m {
        for j in 0..m {
            let base = &g.brackets[i * m + j];
            // [e_i, e_j] = c, [e_i, √D e_j] = [√D e_i, e_j] = √D c, [√D e_i, √D e_j] = D c
            brackets[i * n + j] = base.clone();
            brackets[i * n + m + j] = base.iter().map(|(k, c)| (m + k, c.clone())).collect();
            brackets[(m + i) * n + j] = base.iter().map(|(k, c)| (m + k, c.clone())).collect();
            brackets[(m + i) * n + m + j] = base
                .iter()
                .map(|(k, c)| (*k, df.clone() * c.clone()))
                .collect();
        }
    }
    let labels = g
        .labels
        .iter()
        .cloned()
        .chain(g.labels.iter().map(|l| format!("sqrt({d})*{l}")))
        .collect();
    let realization = g.realization.as_ref().map(|ms| {
        let s = g.realization_size().unwrap();
        let z = Matrix::zeros(s, s);
        ms.iter()
            .map(|x| quadratic_block(x, &z, d))
            .chain(ms.iter().map(|x| quadratic_block(&z, x, d)))
            .collect()
    });
    let algebra = LieAlgebra::from_parts(labels, brackets, realization)?;
    let mut conjugation = Matrix::identity(n);
    let mut sqrt_d = Matrix::zeros(n, n);
    for i in 0..m {
        conjugation[(m + i, m + i)] = -F::one();
        sqrt_d[(m + i, i)] = F::one();
        sqrt_d[(i, m + i)] = df.clone();
    }
    Ok(QuadraticExtension {
        algebra,
        conjugation,
        sqrt_d,
        discriminant: d,
    })
}

/// `sl_2` in the basis `(e, h, f)`, realized by 2×2 matrices.
pub fn build_sl2<F: Scalar>() -> Result<LieAlgebra<F>> {
    let mut e = Matrix::zeros(2, 2);
    e[(0, 1)] = F::one();
    let h = Matrix::diagonal(&[F::one(), -F::one()]);
    let mut f = Matrix::zeros(2, 2);
    f[(1, 0)] = F::one();
    LieAlgebra::from_realization(vec!["e".into(), "h".into(), "f".into()], vec![e, h, f])
}

/// Abelian algebra of the given dimension (no realization).
pub fn build_abelian<F: Scalar>(dim: usize) -> LieAlgebra<F> {
    LieAlgebra::from_parts(
        (0..dim).map(|i| format!("z{}", i + 1)).collect(),
        vec![Vec::new(); dim * dim],
        None,
    )
    .expect("no realization to validate")
}

impl<F: Scalar> LieAlgebra<F> {
    /// Drops the realization (used to exercise realization-free paths).
    pub fn without_realization(&self) -> Self {
        LieAlgebra {
            labels: self.labels.clone(),
            brackets: self.brackets.clone(),
            realization: None,
            coordinate_solver: OnceLock::new(),
        }
    }
}
