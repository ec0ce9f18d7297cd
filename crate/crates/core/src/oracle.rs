//! Brute-force cross-checks written without reference to the rest of the
//! crate: raw `[f64; 8]` arithmetic, a separate permutation walk, the
//! complex adjoint of a quaternion matrix and a complex Jacobi solver.
//!
//! Only `DQMatrix` (as an entry container) and the error type are shared.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DQMatrix;
use crate::scalar::DualQuaternion;

pub const BRUTE_CAP: usize = 7;

type Q4 = [f64; 4];
type Q8 = [f64; 8];

fn q4_mul(a: Q4, b: Q4) -> Q4 {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn q8_mul(a: Q8, b: Q8) -> Q8 {
    let (as_, ad) = ([a[0], a[1], a[2], a[3]], [a[4], a[5], a[6], a[7]]);
    let (bs, bd) = ([b[0], b[1], b[2], b[3]], [b[4], b[5], b[6], b[7]]);
    let s = q4_mul(as_, bs);
    let x = q4_mul(as_, bd);
    let y = q4_mul(ad, bs);
    [
        s[0],
        s[1],
        s[2],
        s[3],
        x[0] + y[0],
        x[1] + y[1],
        x[2] + y[2],
        x[3] + y[3],
    ]
}

/// Which defining sum `brute_det` evaluates. Anchors are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteDef {
    Moore,
    Chen,
    KyrcheiRow(usize),
    KyrcheiColumn(usize),
}

/// Calls `visit` once for each permutation of `0..n` as an image list.
fn each_permutation(n: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], visit: &mut impl FnMut(&[usize])) {
        if prefix.len() == used.len() {
            visit(prefix);
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, visit);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    go(&mut Vec::with_capacity(n), &mut vec![false; n], visit);
}

/// Cycles of `images` starting at `start` and following `i ↦ images[i]`.
fn cycle_through(images: &[usize], start: usize) -> Vec<usize> {
    let mut c = vec![start];
    let mut x = images[start];
    while x != start {
        c.push(x);
        x = images[x];
    }
    c
}

/// Orders the cycles of `images` as the given definition writes them.
fn arrange(images: &[usize], def: BruteDef) -> Vec<Vec<usize>> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut plain = Vec::new();
    for s in 0..n {
        if !seen[s] {
            let c = cycle_through(images, s);
            for &x in &c {
                seen[x] = true;
            }
            plain.push(c);
        }
    }
    // every cycle in `plain` starts at its minimum
    match def {
        BruteDef::Moore => {
            plain.reverse();
            plain
        }
        BruteDef::Chen => {
            let mut out: Vec<Vec<usize>> = plain
                .iter()
                .map(|c| cycle_through(images, *c.iter().max().unwrap()))
                .collect();
            out.sort_by_key(|c| std::cmp::Reverse(c[0]));
            out
        }
        BruteDef::KyrcheiRow(i) => {
            let anchor = i - 1;
            let mut out = vec![cycle_through(images, anchor)];
            out.extend(plain.into_iter().filter(|c| !c.contains(&anchor)));
            out
        }
        BruteDef::KyrcheiColumn(j) => {
            let anchor = j - 1;
            let mut out: Vec<Vec<usize>> = plain
                .into_iter()
                .rev()
                .filter(|c| !c.contains(&anchor))
                .collect();
            out.push(cycle_through(images, anchor));
            out
        }
    }
}

/// Evaluates a noncommutative determinant by walking all `n!`
/// permutations. Slow by design.
pub fn brute_det(a: &DQMatrix, def: BruteDef) -> Result<DualQuaternion> {
    let n = a.size()?;
    if n > BRUTE_CAP {
        return Err(Error::SizeCap { n, cap: BRUTE_CAP });
    }
    if let BruteDef::KyrcheiRow(k) | BruteDef::KyrcheiColumn(k) = def {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
    }
    let entries: Vec<Q8> = a.entries().iter().map(|q| q.to_array()).collect();
    let mut total = [0.0; 8];
    each_permutation(n, &mut |images| {
        let cycles = arrange(images, def);
        let mut term = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        for c in &cycles {
            for t in 0..c.len() {
                term = q8_mul(term, entries[c[t] * n + c[(t + 1) % c.len()]]);
            }
        }
        let negative = (n - cycles.len()) % 2 == 1;
        for (acc, v) in total.iter_mut().zip(term) {
            if negative {
                *acc -= v;
            } else {
                *acc += v;
            }
        }
    });
    Ok(DualQuaternion::from_array(total))
}

/// Laplace expansion along the first row of a real matrix.
pub fn cofactor_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    match n {
        0 => 1.0,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let sub: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][j] * cofactor_det(&sub)
            })
            .sum(),
    }
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] = z;
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..n {
                    acc += self.at(i, t) * other.at(t, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.n)
            .all(|i| (0..self.n).all(|j| (self.at(i, j) - self.at(j, i).conj()).norm() <= tol))
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn off_diagonal(&self) -> f64 {
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
}

/// `χ(A_s)`: each standard-part entry `q = z + w j` with `z = q₀ + q₁i`
/// and `w = q₂ + q₃i` becomes the block `[[z, −w], [w̄, z̄]]`, laid out as
/// `[[Z, −W], [W̄, Z̄]]`. The map is multiplicative.
pub fn complex_adjoint(a: &DQMatrix) -> Result<ComplexMatrix> {
    let n = a.size()?;
    let mut out = ComplexMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            let q = a[(i, j)].to_array();
            let z = Complex64::new(q[0], q[1]);
            let w = Complex64::new(q[2], q[3]);
            out.set(i, j, z);
            out.set(i, j + n, -w);
            out.set(i + n, j, w.conj());
            out.set(i + n, j + n, z.conj());
        }
    }
    Ok(out)
}

pub const ORACLE_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi for a complex Hermitian matrix. Returns eigenvalues in
/// decreasing order and the matching orthonormal eigenvectors as columns.
pub fn hermitian_complex_eig(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = h.n;
    if !h.is_hermitian(1e-10) {
        return Err(Error::Domain("complex matrix is not Hermitian".into()));
    }
    let mut a = h.clone();
    let mut v = ComplexMatrix::zeros(n);
    for i in 0..n {
        v.set(i, i, Complex64::new(1.0, 0.0));
    }
    let stop = 1e-12 * a.frobenius();
    let mut converged = false;
    for _ in 0..ORACLE_MAX_SWEEPS {
        if a.off_diagonal() <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.at(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let theta = 0.5 * (2.0 * r).atan2(a.at(q, q).re - a.at(p, p).re);
                let (c, s) = (theta.cos(), theta.sin());
                // columns (p, q) ← columns (p, q) · [[c, s], [−s φ̄, c φ̄]]
                let g = [
                    [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
                    [-phase.conj() * s, phase.conj() * c],
                ];
                for k in 0..n {
                    let (x, y) = (a.at(k, p), a.at(k, q));
                    a.set(k, p, x * g[0][0] + y * g[1][0]);
                    a.set(k, q, x * g[0][1] + y * g[1][1]);
                    let (x, y) = (v.at(k, p), v.at(k, q));
                    v.set(k, p, x * g[0][0] + y * g[1][0]);
                    v.set(k, q, x * g[0][1] + y * g[1][1]);
                }
                for k in 0..n {
                    let (x, y) = (a.at(p, k), a.at(q, k));
                    a.set(p, k, g[0][0].conj() * x + g[1][0].conj() * y);
                    a.set(q, k, g[0][1].conj() * x + g[1][1].conj() * y);
                }
            }
        }
    }
    if !converged && a.off_diagonal() > stop {
        return Err(Error::Convergence(format!(
            "complex Jacobi did not converge in {ORACLE_MAX_SWEEPS} sweeps"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.at(j, j).re.total_cmp(&a.at(i, i).re));
    let values = order.iter().map(|&i| a.at(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new, v.at(r, old));
        }
    }
    Ok((values, vectors))
}

/// Standard-part spectrum of a quaternion Hermitian matrix via its complex
/// adjoint: the `2n` adjoint eigenvalues, sorted, paired, and the paired
/// values. The pairing error is the largest gap within a pair.
pub fn standard_spectrum(a: &DQMatrix) -> Result<(Vec<f64>, f64)> {
    let (values, _) = hermitian_complex_eig(&complex_adjoint(a)?)?;
    let mut deduped = Vec::with_capacity(values.len() / 2);
    let mut pairing = 0.0_f64;
    for pair in values.chunks(2) {
        pairing = pairing.max((pair[0] - pair[1]).abs());
        deduped.push(0.5 * (pair[0] + pair[1]));
    }
    Ok((deduped, pairing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_hermitian;
    use crate::scalar::{DualNumber, Quaternion};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn adjoint_of_units() {
        let one = complex_adjoint(&DQMatrix::identity(1)).unwrap();
        assert_eq!(
            one.data,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
        let j =
            complex_adjoint(&DQMatrix::diag(&[DualQuaternion::from_std(Quaternion::J)])).unwrap();
        assert_eq!(
            j.data,
            vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn adjoint_is_multiplicative() {
        for seed in 0..20 {
            let a = random_hermitian(2, 2 * seed, 1.0);
            let b = random_hermitian(2, 2 * seed + 1, 1.0);
            let ab = (&a * &b).std_part();
            let lhs = complex_adjoint(&ab).unwrap();
            let rhs = complex_adjoint(&a.std_part())
                .unwrap()
                .matmul(&complex_adjoint(&b.std_part()).unwrap());
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn jacobi_examples() {
        let mut d = ComplexMatrix::zeros(2);
        d.set(0, 0, c(1.0, 0.0));
        d.set(1, 1, c(3.0, 0.0));
        assert_eq!(hermitian_complex_eig(&d).unwrap().0, vec![3.0, 1.0]);

        let mut x = ComplexMatrix::zeros(2);
        x.set(0, 1, c(1.0, 0.0));
        x.set(1, 0, c(1.0, 0.0));
        let (vals, _) = hermitian_complex_eig(&x).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] + 1.0).abs() < 1e-14);

        let herm2 = DQMatrix::from_rows(vec![
            vec![DualQuaternion::ONE, DualQuaternion::from_std(Quaternion::I)],
            vec![
                DualQuaternion::from_std(-Quaternion::I),
                DualQuaternion::ONE,
            ],
        ])
        .unwrap();
        let (vals, _) = hermitian_complex_eig(&complex_adjoint(&herm2).unwrap()).unwrap();
        for (v, e) in vals.iter().zip([2.0, 2.0, 0.0, 0.0]) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_vectors_are_orthonormal_eigenvectors() {
        let h = complex_adjoint(&random_hermitian(4, 9, 1.0)).unwrap();
        let (vals, v) = hermitian_complex_eig(&h).unwrap();
        let hv = h.matmul(&v);
        for j in 0..8 {
            for i in 0..8 {
                assert!((hv.at(i, j) - v.at(i, j) * vals[j]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn brute_examples() {
        let id = DQMatrix::identity(3);
        for def in [
            BruteDef::Moore,
            BruteDef::Chen,
            BruteDef::KyrcheiRow(2),
            BruteDef::KyrcheiColumn(3),
        ] {
            assert_eq!(brute_det(&id, def).unwrap(), DualQuaternion::ONE);
        }
        let d = DQMatrix::diag(&[
            DualNumber::new(1.0, 1.0).to_dq(),
            DualNumber::real(2.0).to_dq(),
            DualNumber::new(3.0, 1.0).to_dq(),
        ]);
        assert_eq!(
            brute_det(&d, BruteDef::Moore).unwrap(),
            DualNumber::new(6.0, 8.0).to_dq()
        );
        assert!(matches!(
            brute_det(&DQMatrix::identity(8), BruteDef::Moore),
            Err(Error::SizeCap { n: 8, cap: 7 })
        ));
    }

    #[test]
    fn arrangement_orders_cycles() {
        // σ = (1 3)(2)(4) in 0-based images
        let images = [2, 1, 0, 3];
        assert_eq!(
            arrange(&images, BruteDef::Moore),
            vec![vec![3], vec![1], vec![0, 2]]
        );
        assert_eq!(
            arrange(&images, BruteDef::Chen),
            vec![vec![3], vec![2, 0], vec![1]]
        );
        assert_eq!(
            arrange(&images, BruteDef::KyrcheiRow(3)),
            vec![vec![2, 0], vec![1], vec![3]]
        );
        assert_eq!(
            arrange(&images, BruteDef::KyrcheiColumn(3)),
            vec![vec![3], vec![1], vec![2, 0]]
        );
    }

    #[test]
    fn cofactor_examples() {
        assert_eq!(cofactor_det(&[vec![2.0, 1.0], vec![1.0, 3.0]]), 5.0);
        let m = vec![
            vec![1.0, 2.0, 3.0],
            vec![0.0, 1.0, 4.0],
            vec![5.0, 6.0, 0.0],
        ];
        assert_eq!(cofactor_det(&m), 1.0);
    }
}
