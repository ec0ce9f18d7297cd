//! LU factorisation, unitary-to-diagonal reduction, Hermitian
//! eigendecomposition and the characteristic polynomial.

use serde::{Serialize, Serializer};

use crate::determinant::{moore_det, DEFAULT_DET_CAP};
use crate::error::{Error, Result};
use crate::matrix::{DQMatrix, Elementary};
use crate::permutation::Permutation;
use crate::scalar::{dual_compare, DualNumber, DualQuaternion, Quaternion, ZERO_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct LuFactors {
    /// Row order: row `i` of `PA` is row `perm.image(i+1)` of `A` (1-based).
    pub perm: Permutation,
    pub p: DQMatrix,
    pub l: DQMatrix,
    pub u: DQMatrix,
    /// Row interchanges `(step, pivot_row)` performed, 1-based, in order.
    pub swaps: Vec<(usize, usize)>,
}

/// Result of running elimination until it completes or stalls.
#[derive(Clone, Debug)]
pub(crate) enum LuOutcome {
    Complete(LuFactors),
    Breakdown {
        step: usize,
        /// Some remaining entry of the pivot column has a nonzero dual part.
        infinitesimal_pivot: bool,
    },
}

pub(crate) fn lu_outcome(a: &DQMatrix) -> LuOutcome {
    let n = a.n_rows();
    let mut w = a.clone();
    let mut l = DQMatrix::zeros(n, n);
    let mut order: Vec<usize> = (0..n).collect();
    let mut swaps = Vec::new();

    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&r, &s| {
                // ties go to the upper row
                dual_compare(w[(r, k)].magnitude(), w[(s, k)].magnitude()).then(s.cmp(&r))
            })
            .expect("non-empty range");
        if !w[(pivot_row, k)].is_appreciable() {
            let infinitesimal_pivot = (k..n).any(|r| !w[(r, k)].dual.is_zero(ZERO_TOL));
            return LuOutcome::Breakdown {
                step: k + 1,
                infinitesimal_pivot,
            };
        }
        if pivot_row != k {
            for j in 0..n {
                let t = w[(k, j)];
                w[(k, j)] = w[(pivot_row, j)];
                w[(pivot_row, j)] = t;
            }
            for j in 0..k {
                let t = l[(k, j)];
                l[(k, j)] = l[(pivot_row, j)];
                l[(pivot_row, j)] = t;
            }
            order.swap(k, pivot_row);
            swaps.push((k + 1, pivot_row + 1));
        }
        let inv = w[(k, k)].inverse().expect("appreciable pivot");
        for r in k + 1..n {
            let m = w[(r, k)] * inv;
            l[(r, k)] = m;
            w[(r, k)] = DualQuaternion::ZERO;
            for j in k + 1..n {
                let t = m * w[(k, j)];
                w[(r, j)] -= t;
            }
        }
    }
    for i in 0..n {
        l[(i, i)] = DualQuaternion::ONE;
    }
    let p = DQMatrix::from_fn(n, n, |i, j| {
        if order[i] == j {
            DualQuaternion::ONE
        } else {
            DualQuaternion::ZERO
        }
    });
    LuOutcome::Complete(LuFactors {
        perm: Permutation::from_zero_based(order),
        p,
        l,
        u: w,
        swaps,
    })
}

/// `PA = LU` with the pivot in each column chosen to maximise the dual
/// magnitude under the lexicographic order. Multipliers are
/// `ℓ = a · pivot⁻¹`.
pub fn lu_partial_pivot(a: &DQMatrix) -> Result<LuFactors> {
    a.size()?;
    match lu_outcome(a) {
        LuOutcome::Complete(f) => Ok(f),
        LuOutcome::Breakdown { step, .. } => Err(Error::SingularLu { step }),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalReduction {
    /// Elementary row operations, applied first to last on the left of `A`.
    pub ops: Vec<Elementary>,
    pub diagonal: Vec<DualQuaternion>,
}

impl DiagonalReduction {
    /// `|d₁ d₂ ⋯ d_n|`.
    pub fn product_magnitude(&self) -> DualNumber {
        self.diagonal
            .iter()
            .fold(DualQuaternion::ONE, |acc, d| acc * *d)
            .magnitude()
    }

    /// `P_t ⋯ P_1 A`.
    pub fn apply(&self, a: &DQMatrix) -> Result<DQMatrix> {
        let n = a.size()?;
        self.ops
            .iter()
            .try_fold(a.clone(), |m, op| op.matrix(n)?.matmul(&m))
    }
}

/// Reduces a unitary matrix to diagonal form with switching and addition
/// operations taken from its pivoted LU factorisation.
pub fn unitary_to_diagonal(a: &DQMatrix) -> Result<DiagonalReduction> {
    let n = a.size()?;
    if !a.is_unitary(1e-8) {
        return Err(Error::Domain("matrix is not unitary".into()));
    }
    let f = lu_partial_pivot(a)?;
    let mut ops: Vec<Elementary> = f
        .swaps
        .iter()
        .map(|&(i, j)| Elementary::Switch(i, j))
        .collect();
    // L⁻¹: clear below the diagonal column by column
    for c in 0..n {
        for r in c + 1..n {
            let m = f.l[(r, c)];
            if !m.is_zero(0.0) {
                ops.push(Elementary::Add(c + 1, r + 1, -m));
            }
        }
    }
    // U₀⁻¹ with U = U₀ D: clear above the diagonal, last column first
    let inv_diag: Vec<DualQuaternion> = (0..n)
        .map(|i| f.u[(i, i)].inverse().expect("LU pivots are appreciable"))
        .collect();
    for c in (1..n).rev() {
        for r in 0..c {
            let m = f.u[(r, c)] * inv_diag[c];
            if !m.is_zero(0.0) {
                ops.push(Elementary::Add(c + 1, r + 1, -m));
            }
        }
    }
    Ok(DiagonalReduction {
        ops,
        diagonal: f.u.diagonal(),
    })
}

/// Dense quaternion matrix used by the Jacobi iteration.
#[derive(Clone, Debug)]
struct QMat {
    n: usize,
    data: Vec<Quaternion>,
}

impl QMat {
    fn identity(n: usize) -> Self {
        let mut data = vec![Quaternion::ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = Quaternion::ONE;
        }
        QMat { n, data }
    }

    fn at(&self, i: usize, j: usize) -> Quaternion {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self.data[i * self.n + j] = q;
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.at(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi for a quaternion Hermitian matrix. Each rotation first
/// makes `a_pq` real with a unit quaternion phase on column `q`, then
/// applies a real Givens rotation. Returns the diagonal and the
/// accumulated unitary `V` with `V* A V` diagonal.
fn quaternion_jacobi(mut a: QMat) -> Result<(Vec<f64>, QMat)> {
    let n = a.n;
    let mut v = QMat::identity(n);
    let target = 1e-15 * a.frobenius();
    for _ in 0..MAX_SWEEPS {
        if a.off_diagonal_norm() <= target {
            let vals = (0..n).map(|i| a.at(i, i).w).collect();
            return Ok((vals, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = a.at(p, q);
                let r = b.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let u = b * (1.0 / r);
                let (alpha, beta) = (a.at(p, p).w, a.at(q, q).w);
                let tau = (beta - alpha) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // W restricted to (p, q): [[c, s], [−s u*, c u*]]
                let w_pp = Quaternion::real(c);
                let w_pq = Quaternion::real(s);
                let w_qp = u.conj() * (-s);
                let w_qq = u.conj() * c;
                for k in 0..n {
                    let (akp, akq) = (a.at(k, p), a.at(k, q));
                    a.set(k, p, akp * w_pp + akq * w_qp);
                    a.set(k, q, akp * w_pq + akq * w_qq);
                    let (vkp, vkq) = (v.at(k, p), v.at(k, q));
                    v.set(k, p, vkp * w_pp + vkq * w_qp);
                    v.set(k, q, vkp * w_pq + vkq * w_qq);
                }
                for l in 0..n {
                    let (apl, aql) = (a.at(p, l), a.at(q, l));
                    a.set(p, l, w_pp.conj() * apl + w_qp.conj() * aql);
                    a.set(q, l, w_pq.conj() * apl + w_qq.conj() * aql);
                }
                a.set(p, q, Quaternion::ZERO);
                a.set(q, p, Quaternion::ZERO);
                let (dp, dq) = (a.at(p, p).w, a.at(q, q).w);
                a.set(p, p, Quaternion::real(dp));
                a.set(q, q, Quaternion::real(dq));
            }
        }
    }
    Err(Error::Convergence(format!(
        "quaternion Jacobi did not converge in {MAX_SWEEPS} sweeps"
    )))
}

fn std_qmat(a: &DQMatrix) -> QMat {
    QMat {
        n: a.n_rows(),
        data: a.entries().iter().map(|q| q.std).collect(),
    }
}

fn dual_qmat(a: &DQMatrix) -> QMat {
    QMat {
        n: a.n_rows(),
        data: a.entries().iter().map(|q| q.dual).collect(),
    }
}

/// `X* M X` restricted to the columns `cols` of `X`.
fn project(m: &QMat, x: &QMat, cols: &[usize]) -> QMat {
    let n = m.n;
    let k = cols.len();
    let mut mx = vec![Quaternion::ZERO; n * k];
    for i in 0..n {
        for (b, &cb) in cols.iter().enumerate() {
            let mut acc = Quaternion::ZERO;
            for t in 0..n {
                acc += m.at(i, t) * x.at(t, cb);
            }
            mx[i * k + b] = acc;
        }
    }
    let mut out = QMat {
        n: k,
        data: vec![Quaternion::ZERO; k * k],
    };
    for (a_, &ca) in cols.iter().enumerate() {
        for b in 0..k {
            let mut acc = Quaternion::ZERO;
            for t in 0..n {
                acc += x.at(t, ca).conj() * mx[t * k + b];
            }
            out.set(a_, b, acc);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Eigenvalues sorted in decreasing lexicographic order.
    pub eigenvalues: Vec<DualNumber>,
    /// Unitary `U` with `U* A U = diag(eigenvalues)`, when requested and
    /// available.
    pub eigenvectors: Option<DQMatrix>,
    /// Groups of 0-based eigenvalue positions sharing a standard part.
    pub clusters: Vec<Vec<usize>>,
}

impl Spectrum {
    pub fn product(&self) -> DualNumber {
        self.eigenvalues
            .iter()
            .fold(DualNumber::ONE, |acc, &l| acc * l)
    }

    pub fn has_repeated_standard_part(&self) -> bool {
        self.clusters.iter().any(|c| c.len() > 1)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Spectrum", 3)?;
        st.serialize_field("eigenvalues", &self.eigenvalues)?;
        let vectors = self
            .eigenvectors
            .as_ref()
            .map(|u| (0..u.n_rows()).map(|i| u.row(i)).collect::<Vec<_>>());
        st.serialize_field("eigenvectors", &vectors)?;
        st.serialize_field("clusters", &self.clusters)?;
        st.end()
    }
}

fn hermitian_tol(a: &DQMatrix) -> f64 {
    1e-9 * a.max_abs().max(1.0)
}

/// Eigenvalues (and optionally eigenvectors) of a dual quaternion
/// Hermitian matrix.
///
/// Standard parts come from a quaternion Jacobi iteration on `A_s`. Dual
/// parts are the eigenvalues of the diagonal blocks of `U_s* A_d U_s`,
/// one block per cluster of equal standard eigenvalues. Eigenvectors are
/// only built when every cluster is a singleton.
pub fn hermitian_eig(a: &DQMatrix, want_vectors: bool) -> Result<Spectrum> {
    let n = a.size()?;
    if !a.is_hermitian(hermitian_tol(a)) {
        return Err(Error::Domain("matrix is not Hermitian".into()));
    }
    let (vals, v0) = quaternion_jacobi(std_qmat(a))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        vals[j]
            .partial_cmp(&vals[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let std_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut v = QMat {
        n,
        data: vec![Quaternion::ZERO; n * n],
    };
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            v.set(r, new, v0.at(r, old));
        }
    }

    let tau = 1e-7 * a.std_frobenius();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match clusters.last_mut() {
            Some(c) if std_vals[*c.last().unwrap()] - std_vals[i] <= tau => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }

    let ad = dual_qmat(a);
    let mut eigenvalues = vec![DualNumber::ZERO; n];
    for cluster in &clusters {
        let mean = cluster.iter().map(|&i| std_vals[i]).sum::<f64>() / cluster.len() as f64;
        let block = project(&ad, &v, cluster);
        if cluster.len() == 1 {
            eigenvalues[cluster[0]] = DualNumber::new(std_vals[cluster[0]], block.at(0, 0).w);
            continue;
        }
        let (dvals, w) = quaternion_jacobi(block)?;
        let mut sub: Vec<usize> = (0..cluster.len()).collect();
        sub.sort_by(|&i, &j| {
            dvals[j]
                .partial_cmp(&dvals[i])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        // rotate the cluster's columns of V by W (sorted)
        let old_cols: Vec<Vec<Quaternion>> = cluster
            .iter()
            .map(|&c| (0..n).map(|r| v.at(r, c)).collect())
            .collect();
        for (b, &sb) in sub.iter().enumerate() {
            for r in 0..n {
                let mut acc = Quaternion::ZERO;
                for (t, col) in old_cols.iter().enumerate() {
                    acc += col[r] * w.at(t, sb);
                }
                v.set(r, cluster[b], acc);
            }
            eigenvalues[cluster[b]] = DualNumber::new(mean, dvals[sb]);
        }
    }

    let mut spectrum = Spectrum {
        eigenvalues,
        eigenvectors: None,
        clusters,
    };
    if !want_vectors {
        return Ok(spectrum);
    }
    if spectrum.has_repeated_standard_part() {
        return Err(Error::MultiplicityUnsupported {
            spectrum: Box::new(spectrum),
        });
    }

    let all: Vec<usize> = (0..n).collect();
    let b = project(&ad, &v, &all);
    let lam = &spectrum.eigenvalues;
    let mut c = QMat {
        n,
        data: vec![Quaternion::ZERO; n * n],
    };
    for i in 0..n {
        for j in 0..n {
            if i != j {
                c.set(i, j, b.at(i, j) * (1.0 / (lam[j].s - lam[i].s)));
            }
        }
    }
    let u = DQMatrix::from_fn(n, n, |i, j| {
        let mut d = Quaternion::ZERO;
        for t in 0..n {
            d += v.at(i, t) * c.at(t, j);
        }
        DualQuaternion::new(v.at(i, j), d)
    });
    let c_max = c.data.iter().fold(1.0_f64, |m, q| m.max(q.max_abs()));
    let tol = 1e-8 * a.max_abs().max(1.0) * c_max;
    let unitary_err = (&u.adjoint() * &u).max_abs_diff(&DQMatrix::identity(n));
    let lambda = DQMatrix::diag(&lam.iter().map(|l| l.to_dq()).collect::<Vec<_>>());
    let diag_err = (&(&u.adjoint() * a) * &u).max_abs_diff(&lambda);
    if unitary_err > tol || diag_err > tol {
        return Err(Error::Convergence(format!(
            "eigenvector check failed (unitarity {unitary_err:e}, diagonalisation {diag_err:e})"
        )));
    }
    spectrum.eigenvectors = Some(u);
    Ok(spectrum)
}

/// Polynomial with dual-number coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualPolynomial {
    pub coefficients: Vec<DualNumber>,
}

/// A root of a characteristic polynomial recovered from its coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DualRoot {
    /// A simple standard root `s`; the only root above it is `s + d ε`.
    Simple { root: DualNumber },
    /// A multiple standard root. When `any_dual_part` holds, `s + d ε` is a
    /// root for every real `d`.
    Repeated {
        standard: f64,
        multiplicity: usize,
        any_dual_part: bool,
    },
}

impl DualPolynomial {
    /// Monic `∏ (λ − rᵢ)`.
    pub fn from_roots(roots: &[DualNumber]) -> Self {
        let mut c = vec![DualNumber::ONE];
        for &r in roots {
            let mut next = vec![DualNumber::ZERO; c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] += -(r * ck);
            }
            c = next;
        }
        DualPolynomial { coefficients: c }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Horner evaluation in `ε`-truncated arithmetic.
    pub fn eval(&self, x: DualNumber) -> DualNumber {
        self.coefficients
            .iter()
            .rev()
            .fold(DualNumber::ZERO, |acc, &c| acc * x + c)
    }

    fn std_coeffs(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.s).collect()
    }

    fn dual_coeffs(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.d).collect()
    }

    /// Roots of the polynomial, grouped over the real roots of the
    /// standard-part polynomial (which must all be real, as they are for a
    /// characteristic polynomial of a Hermitian matrix).
    pub fn roots(&self) -> Result<Vec<DualRoot>> {
        let ps = self.std_coeffs();
        let pd = self.dual_coeffs();
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = ps[n];
        if lead == 0.0 {
            return Err(Error::Domain("leading standard coefficient is zero".into()));
        }
        let mut real_roots: Vec<f64> = aberth(&ps)?.into_iter().map(|z| z.re).collect();
        real_roots.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));

        let bound = 1.0
            + ps.iter()
                .take(n)
                .fold(0.0_f64, |m, c| m.max((c / lead).abs()));
        let gap = 1e-5 * bound;
        let mut groups: Vec<Vec<f64>> = Vec::new();
        for r in real_roots {
            match groups.last_mut() {
                Some(g) if g.last().unwrap() - r <= gap => g.push(r),
                _ => groups.push(vec![r]),
            }
        }
        let dps = derivative(&ps);
        Ok(groups
            .into_iter()
            .map(|g| {
                let mean = g.iter().sum::<f64>() / g.len() as f64;
                if g.len() == 1 {
                    let mut r = mean;
                    for _ in 0..3 {
                        let d = horner(&dps, r);
                        if d != 0.0 {
                            r -= horner(&ps, r) / d;
                        }
                    }
                    let d = -horner(&pd, r) / horner(&dps, r);
                    DualRoot::Simple {
                        root: DualNumber::new(r, d),
                    }
                } else {
                    let scale = pd.iter().fold(1.0_f64, |m, c| m.max(c.abs()));
                    DualRoot::Repeated {
                        standard: mean,
                        multiplicity: g.len(),
                        any_dual_part: horner(&pd, mean).abs() <= 1e-6 * scale,
                    }
                }
            })
            .collect())
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &v)| k as f64 * v)
        .collect()
}

/// Aberth-Ehrlich simultaneous iteration for all complex roots.
fn aberth(c: &[f64]) -> Result<Vec<num_complex::Complex64>> {
    use num_complex::Complex64;
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v / lead, 0.0)).collect();
    let dmonic: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &v)| v * k as f64)
        .collect();
    let eval = |p: &[Complex64], z: Complex64| {
        p.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |a, &k| a * z + k)
    };
    let radius = 1.0 + monic.iter().take(n).fold(0.0_f64, |m, v| m.max(v.norm()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0_f64;
        for i in 0..n {
            let p = eval(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / eval(&dmonic, z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved <= 1e-15 * radius {
            return Ok(z);
        }
    }
    // multiple roots converge slowly; the iterate is still usable
    Ok(z)
}

/// `p(λ) = ∏ (λ − λᵢ)` over the dual-number eigenvalues of a Hermitian `A`.
pub fn char_poly(a: &DQMatrix) -> Result<DualPolynomial> {
    let n = a.size()?;
    if n > DEFAULT_DET_CAP {
        return Err(Error::SizeCap {
            n,
            cap: DEFAULT_DET_CAP,
        });
    }
    let spectrum = hermitian_eig(a, false)?;
    Ok(DualPolynomial::from_roots(&spectrum.eigenvalues))
}

/// `|p(λ)|²` as a dual number.
pub fn quasi_char_poly_eval(p: &DualPolynomial, x: DualNumber) -> DualNumber {
    let m = p.eval(x).abs();
    m * m
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityReport {
    pub mdet: DualNumber,
    pub eigenvalues: Vec<DualNumber>,
    /// Some eigenvalue is zero in both parts.
    pub zero_eigenvalue: bool,
    /// Number of eigenvalues with a zero standard part.
    pub infinitesimal_eigenvalues: usize,
    pub mdet_is_zero: bool,
    /// What the eigenvalues predict: a zero eigenvalue or at least two
    /// infinitesimal ones.
    pub predicted_zero: bool,
    pub consistent: bool,
}

/// Checks the vanishing of the Moore determinant against the eigenvalue
/// criterion. Zero tests use `1e−9` scaled by the entry magnitude.
pub fn singularity_classify(a: &DQMatrix) -> Result<SingularityReport> {
    let n = a.size()?;
    if !a.is_hermitian(hermitian_tol(a)) {
        return Err(Error::Domain("matrix is not Hermitian".into()));
    }
    let scale = a.max_abs().max(1.0);
    let mdet = moore_det(a)?
        .as_dual_number
        .ok_or_else(|| Error::Convergence("Moore determinant is not a dual number".into()))?;
    let spectrum = hermitian_eig(a, false)?;
    let eig_tol = 1e-9 * scale;
    let det_tol = 1e-9 * scale.powi(n as i32);
    let zero_eigenvalue = spectrum.eigenvalues.iter().any(|l| l.is_zero(eig_tol));
    let infinitesimal_eigenvalues = spectrum
        .eigenvalues
        .iter()
        .filter(|l| l.s.abs() <= eig_tol)
        .count();
    let mdet_is_zero = mdet.is_zero(det_tol);
    let predicted_zero = zero_eigenvalue || infinitesimal_eigenvalues >= 2;
    Ok(SingularityReport {
        mdet,
        eigenvalues: spectrum.eigenvalues,
        zero_eigenvalue,
        infinitesimal_eigenvalues,
        mdet_is_zero,
        predicted_zero,
        consistent: mdet_is_zero == predicted_zero,
    })
}
