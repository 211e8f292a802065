//! Nilpotent orbit representatives for the built-in families, the trace
//! criterion `Tr(ad d(x) | h_x) < dim g^σ`, the non-positivity of the
//! weights of `d(x)` on `g^σ/[x, h]`, and the Clebsch–Gordan count for
//! `gl_n`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{build_gl, gl_coordinates, restrict_operator, LieAlgebra};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::pair::{gsigma_element, Family, SymmetricPair};
use crate::scalar::{Rational, Scalar};
use crate::sl2::{jacobson_morozov, sl2_decompose, theta_adapt, SL2Triple};

pub type Partition = Vec<usize>;

/// Partitions of `n` in reverse-lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn is_partition_of(mu: &[usize], n: usize) -> bool {
    mu.iter().all(|&p| p > 0) && mu.windows(2).all(|w| w[0] >= w[1]) && mu.iter().sum::<usize>() == n
}

/// Jordan nilpotent with blocks of sizes `μ` along the diagonal.
pub fn jordan_nilpotent<F: Scalar>(mu: &[usize]) -> Matrix<F> {
    let n: usize = mu.iter().sum();
    let mut m = Matrix::zeros(n, n);
    let mut start = 0;
    for &b in mu {
        for i in start..start + b - 1 {
            m[(i, i + 1)] = F::one();
        }
        start += b;
    }
    m
}

/// One representative per partition: `(J_μ, −J_μ)`, resp. `√D·J_μ`.
pub fn nilpotent_orbit_reps<F: Scalar>(pair: &SymmetricPair<F>) -> Result<Vec<(Partition, Vector<F>)>> {
    let n = pair
        .family()
        .inner_n()
        .ok_or_else(|| Error::pre("orbit enumeration unavailable for custom pairs"))?;
    partitions(n)
        .into_iter()
        .map(|mu| {
            let v = gsigma_element(pair.family(), &jordan_nilpotent::<F>(&mu))?;
            Ok((mu, v))
        })
        .collect()
}

/// Highest weights of `gl_n = V ⊗ V*` under the triple through `J_μ`:
/// blocks of sizes `a, b` contribute `a+b−2, a+b−4, …, |a−b|`.
pub fn clebsch_gordan_weights(mu: &[usize]) -> Vec<i64> {
    let mut w = Vec::new();
    for &a in mu {
        for &b in mu {
            let (a, b) = (a as i64, b as i64);
            let mut l = a + b - 2;
            while l >= (a - b).abs() {
                w.push(l);
                l -= 2;
            }
        }
    }
    w.sort_unstable_by(|x, y| y.cmp(x));
    w
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceIdentity {
    pub weights: Vec<i64>,
    pub sum_lambda: i64,
    /// `Σ(λ+1) = n²`.
    pub dim_check: bool,
}

pub fn diagonal_trace_identity(n: usize, mu: &[usize]) -> Result<TraceIdentity> {
    if !is_partition_of(mu, n) {
        return Err(Error::pre(format!("{mu:?} is not a partition of {n}")));
    }
    let weights = clebsch_gordan_weights(mu);
    let sum_lambda = weights.iter().sum();
    let dim_check = weights.iter().map(|&l| (l + 1) as usize).sum::<usize>() == n * n;
    Ok(TraceIdentity {
        weights,
        sum_lambda,
        dim_check,
    })
}

/// Highest weights of `gl_n` under the Jacobson–Morozov triple of `J_μ`,
/// read off the spectrum of `ad h`.
pub fn gl_weights_from_spectrum<F: Scalar>(gl: &LieAlgebra<F>, mu: &[usize]) -> Result<Vec<i64>> {
    let x = gl_coordinates(&jordan_nilpotent::<F>(mu));
    let t = jacobson_morozov(gl, &x)?;
    Ok(sl2_decompose(gl, &t)?.highest_weights)
}

/// Eigenvalues of `ad d(x)` on `g^σ/[x, h]`, computed on a complement of
/// `[x, h]` in `g^σ`. Every eigenvalue must be a non-positive integer.
pub fn eigen_check<F: Scalar>(pair: &SymmetricPair<F>, x: &[F], triple: &SL2Triple<F>) -> Result<Vec<i64>> {
    let g = pair.algebra();
    let n = pair.dim();
    let ad_x = g.ad(x)?;
    let image: Vec<Vector<F>> = pair.h().basis().iter().map(|y| ad_x.mul_vec(y)).collect();
    let w = Subspace::from_spanning(n, &image);
    if !pair.gsigma().contains_subspace(&w) {
        return Err(Error::invariant("[x, h] is not contained in g^σ"));
    }
    let c = w.complement_basis_in(pair.gsigma());
    if c.is_empty() {
        return Ok(Vec::new());
    }
    let mut cols = w.basis().to_vec();
    cols.extend(c.iter().cloned());
    let basis = Matrix::from_columns(n, &cols)?;
    let ad_d = g.ad(&triple.h)?;
    let images: Vec<Vector<F>> = c.iter().map(|v| ad_d.mul_vec(v)).collect();
    let coords = basis
        .solve_many(&Matrix::from_columns(n, &images)?)?
        .ok_or_else(|| Error::invariant("ad d(x) does not preserve g^σ"))?;
    let k = w.dim();
    let m = c.len();
    let mut q = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            q[(i, j)] = coords[(k + i, j)].clone();
        }
    }
    let spec = q
        .integer_spectrum(2 * n as i64)
        .map_err(|_| Error::invariant("EigenInt violated: non-integral eigenvalue on g^σ/[x, h]"))?;
    let ev = spec.to_multiset();
    if ev.iter().any(|&e| e > 0) {
        return Err(Error::invariant(format!(
            "EigenInt violated: positive eigenvalue on g^σ/[x, h]: {ev:?}"
        )));
    }
    Ok(ev)
}

/// `Tr(ad d | h_x)` for `h_x` the centralizer of `x` in `h`.
pub fn trace_on_hx<F: Scalar>(pair: &SymmetricPair<F>, x: &[F], d: &[F]) -> Result<F> {
    let g = pair.algebra();
    let h_x = g.centralizer_in(&[x.to_vec()], pair.h())?;
    let op = restrict_operator(&g.ad(d)?, &h_x)
        .ok_or_else(|| Error::invariant("ad d(x) does not preserve h_x"))?;
    Ok(op.trace())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitAuditRecord<F: Scalar = Rational> {
    pub partition: Option<Partition>,
    #[serde(skip)]
    pub representative: Vector<F>,
    #[serde(skip)]
    pub neutral: Vector<F>,
    #[serde(skip)]
    pub trace_on_hx: F,
    pub dim_gsigma: usize,
    pub dim_hx: usize,
    /// `trace < dim g^σ`.
    pub archimedean_pass: bool,
    /// `trace ≠ dim g^σ`.
    pub nonarch_pass: bool,
    pub eigen_lemma_pass: bool,
    pub quotient_eigenvalues: Vec<i64>,
    pub weights_from_spectrum: Option<Vec<i64>>,
    pub weights_from_partition: Option<Vec<i64>>,
}

impl<F: Scalar> OrbitAuditRecord<F> {
    pub fn weights_agree(&self) -> Option<bool> {
        match (&self.weights_from_spectrum, &self.weights_from_partition) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        }
    }
}

/// Audits one nilpotent `x ∈ g^σ`. With a partition label for a built-in
/// family the two weight computations for `gl_n` are filled in.
pub fn speciality_audit<F: Scalar>(
    pair: &SymmetricPair<F>,
    x: &[F],
    partition: Option<&[usize]>,
) -> Result<OrbitAuditRecord<F>> {
    let gl = match (partition, pair.family().inner_n()) {
        (Some(_), Some(n)) => Some(build_gl::<F>(n)?),
        _ => None,
    };
    speciality_audit_with(pair, x, partition, gl.as_ref())
}

fn speciality_audit_with<F: Scalar>(
    pair: &SymmetricPair<F>,
    x: &[F],
    partition: Option<&[usize]>,
    gl: Option<&LieAlgebra<F>>,
) -> Result<OrbitAuditRecord<F>> {
    if !pair.gsigma().contains(x) {
        return Err(Error::pre("element is not in g^σ"));
    }
    let t = theta_adapt(pair, x)?;
    let g = pair.algebra();
    let h_x = g.centralizer_in(&[x.to_vec()], pair.h())?;
    let trace = trace_on_hx(pair, x, &t.h)?;
    let dim_gsigma = pair.gsigma().dim();
    let dim_f = F::from_integer(dim_gsigma as i64);
    let trace_q = trace.to_rational().ok_or_else(|| Error::invariant("irrational trace"))?;
    let archimedean_pass = trace_q < dim_f.to_rational().unwrap();
    let nonarch_pass = trace != dim_f;
    let (eigen_lemma_pass, quotient_eigenvalues) = match eigen_check(pair, x, &t) {
        Ok(ev) => (true, ev),
        Err(Error::Invariant(_)) => (false, Vec::new()),
        Err(e) => return Err(e),
    };
    let (weights_from_spectrum, weights_from_partition) = match (partition, gl) {
        (Some(mu), Some(gl)) => (
            Some(gl_weights_from_spectrum(gl, mu)?),
            Some(clebsch_gordan_weights(mu)),
        ),
        _ => (None, None),
    };
    Ok(OrbitAuditRecord {
        partition: partition.map(|p| p.to_vec()),
        representative: x.to_vec(),
        neutral: t.h,
        trace_on_hx: trace,
        dim_gsigma,
        dim_hx: h_x.dim(),
        archimedean_pass,
        nonarch_pass,
        eigen_lemma_pass,
        quotient_eigenvalues,
        weights_from_spectrum,
        weights_from_partition,
    })
}

/// Audits every partition representative of a built-in pair. Orbits run in
/// parallel; records come back in partition order.
pub fn audit_pair<F: Scalar>(pair: &SymmetricPair<F>) -> Result<Vec<OrbitAuditRecord<F>>> {
    let reps = nilpotent_orbit_reps(pair)?;
    let gl = build_gl::<F>(pair.family().inner_n().unwrap())?;
    reps.par_iter()
        .map(|(mu, x)| speciality_audit_with(pair, x, Some(mu), Some(&gl)))
        .collect()
}

/// Audits user-supplied representatives of a pair.
pub fn audit_representatives<F: Scalar>(
    pair: &SymmetricPair<F>,
    reps: &[Vector<F>],
) -> Result<Vec<OrbitAuditRecord<F>>> {
    reps.par_iter()
        .map(|x| {
            if !pair.algebra().ad(x)?.is_nilpotent() {
                return Err(Error::pre("supplied representative is not nilpotent"));
            }
            speciality_audit_with(pair, x, None, None)
        })
        .collect()
}

pub fn family_for(kind: &str, n: usize, d: Option<i64>) -> Result<Family> {
    match (kind, d) {
        ("diagonal", _) => Ok(Family::Diagonal { n }),
        ("quadratic_ext", Some(d)) => Ok(Family::QuadraticExt { n, d }),
        ("quadratic_ext", None) => Err(Error::input("quadratic_ext family requires a discriminant")),
        _ => Err(Error::input(format!("unknown family '{kind}'"))),
    }
}
