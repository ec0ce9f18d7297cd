//! Dense dual quaternion matrices.
//!
//! Element access through `Index` is 0-based. Operations that mirror the
//! row/column vocabulary of elementary operations (switch, scale, add,
//! minors, line replacement, the almost-Hermitian index) take 1-based
//! indices.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{DualNumber, DualQuaternion, Quaternion};

#[derive(Clone, Debug, PartialEq)]
pub struct DQMatrix {
    rows: usize,
    cols: usize,
    data: Vec<DualQuaternion>,
}

impl DQMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DQMatrix {
            rows,
            cols,
            data: vec![DualQuaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                DualQuaternion::ONE
            } else {
                DualQuaternion::ZERO
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> DualQuaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DQMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<DualQuaternion>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        Ok(DQMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diag(d: &[DualQuaternion]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i]
            } else {
                DualQuaternion::ZERO
            }
        })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn size(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Shape(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn row(&self, i: usize) -> Vec<DualQuaternion> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<DualQuaternion> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<DualQuaternion> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn entries(&self) -> &[DualQuaternion] {
        &self.data
    }

    pub fn std_part(&self) -> DQMatrix {
        self.map(|q| DualQuaternion::from_std(q.std))
    }

    pub fn dual_part(&self) -> DQMatrix {
        self.map(|q| DualQuaternion::from_std(q.dual))
    }

    pub fn map(&self, f: impl Fn(DualQuaternion) -> DualQuaternion) -> DQMatrix {
        DQMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    /// `A*`, the conjugate transpose.
    pub fn adjoint(&self) -> DQMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &DQMatrix) -> Result<DQMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DQMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `P* A P`.
    pub fn congruence(&self, p: &DQMatrix) -> Result<DQMatrix> {
        p.adjoint().matmul(self)?.matmul(p)
    }

    /// Every entry multiplied by a dual number (which commutes).
    pub fn scale(&self, k: DualNumber) -> DQMatrix {
        self.map(|q| q * k)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, q| m.max(q.max_abs()))
    }

    /// Max-abs component of `self − other`.
    pub fn max_abs_diff(&self, other: &DQMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((*a - *b).max_abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    /// Frobenius norm of the standard part.
    pub fn std_frobenius(&self) -> f64 {
        self.data
            .iter()
            .map(|q| q.std.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        match self.adjoint().matmul(self) {
            Ok(p) if self.is_square() => p.max_abs_diff(&DQMatrix::identity(self.rows)) <= tol,
            _ => false,
        }
    }
}

impl Index<(usize, usize)> for DQMatrix {
    type Output = DualQuaternion;
    fn index(&self, (i, j): (usize, usize)) -> &DualQuaternion {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DQMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut DualQuaternion {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &DQMatrix {
    type Output = DQMatrix;
    fn add(self, o: &DQMatrix) -> DQMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DQMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub for &DQMatrix {
    type Output = DQMatrix;
    fn sub(self, o: &DQMatrix) -> DQMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DQMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

/// Panics on a shape mismatch; use [`DQMatrix::matmul`] for a checked product.
impl Mul for &DQMatrix {
    type Output = DQMatrix;
    fn mul(self, o: &DQMatrix) -> DQMatrix {
        self.matmul(o).expect("conformable matrices")
    }
}

pub fn conjugate_transpose(a: &DQMatrix) -> DQMatrix {
    a.adjoint()
}

pub fn matmul(a: &DQMatrix, b: &DQMatrix) -> Result<DQMatrix> {
    a.matmul(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermitianKind {
    Hermitian,
    /// Self-adjoint after deleting row and column `k` (1-based).
    AlmostHermitian(usize),
    General,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianTag {
    pub kind: HermitianKind,
    pub tol: f64,
    pub is_unitary: bool,
}

fn self_adjoint_except(a: &DQMatrix, skip: Option<usize>, tol: f64) -> bool {
    let n = a.n_rows();
    (0..n).filter(|&i| Some(i) != skip).all(|i| {
        (i..n)
            .filter(|&j| Some(j) != skip)
            .all(|j| (a[(i, j)] - a[(j, i)].conj()).max_abs() <= tol)
    })
}

/// Whether `a` is self-adjoint after deleting row and column `k` (1-based).
pub fn is_almost_hermitian_at(a: &DQMatrix, k: usize, tol: f64) -> Result<bool> {
    let n = a.size()?;
    let k = check_index(k, n)?;
    Ok(self_adjoint_except(a, Some(k), tol))
}

/// Classifies a square matrix as Hermitian, k-almost-Hermitian (smallest
/// valid `k`) or general, and reports unitarity at the same tolerance.
pub fn classify(a: &DQMatrix, tol: f64) -> Result<HermitianTag> {
    let n = a.size()?;
    let kind = if self_adjoint_except(a, None, tol) {
        HermitianKind::Hermitian
    } else {
        (0..n)
            .find(|&k| self_adjoint_except(a, Some(k), tol))
            .map_or(HermitianKind::General, |k| {
                HermitianKind::AlmostHermitian(k + 1)
            })
    };
    Ok(HermitianTag {
        kind,
        tol,
        is_unitary: a.is_unitary(tol),
    })
}

/// Elementary row/column operation matrices, with 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Elementary {
    /// `P_ij`: swaps rows `i` and `j` when applied on the left.
    Switch(usize, usize),
    /// `P_{i;c}`: left-multiplies row `i` by `c`.
    Scale(usize, DualQuaternion),
    /// `P_{ij;c}`: adds `c ·` row `i` to row `j`; the entry `c` sits at
    /// row `j`, column `i`.
    Add(usize, usize, DualQuaternion),
}

impl Elementary {
    pub fn matrix(&self, n: usize) -> Result<DQMatrix> {
        elementary(*self, n)
    }

    /// The inverse operation: switching is an involution and
    /// `P_{ij;c}⁻¹ = P_{ij;−c}`. Scaling needs an appreciable `c`.
    pub fn inverse(&self) -> Option<Elementary> {
        Some(match *self {
            Elementary::Switch(i, j) => Elementary::Switch(i, j),
            Elementary::Scale(i, c) => Elementary::Scale(i, c.inverse()?),
            Elementary::Add(i, j, c) => Elementary::Add(i, j, -c),
        })
    }
}

fn check_index(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(i - 1)
    }
}

pub fn elementary(kind: Elementary, n: usize) -> Result<DQMatrix> {
    let mut m = DQMatrix::identity(n);
    match kind {
        Elementary::Switch(i, j) => {
            let (i, j) = (check_index(i, n)?, check_index(j, n)?);
            if i == j {
                return Err(Error::Domain("switch needs two distinct rows".into()));
            }
            m[(i, i)] = DualQuaternion::ZERO;
            m[(j, j)] = DualQuaternion::ZERO;
            m[(i, j)] = DualQuaternion::ONE;
            m[(j, i)] = DualQuaternion::ONE;
        }
        Elementary::Scale(i, c) => {
            let i = check_index(i, n)?;
            m[(i, i)] = c;
        }
        Elementary::Add(i, j, c) => {
            let (i, j) = (check_index(i, n)?, check_index(j, n)?);
            if i == j {
                return Err(Error::Domain("addition needs two distinct rows".into()));
            }
            m[(j, i)] = c;
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

/// `A_{i·}(v)` or `A_{·j}(v)`: a copy of `A` with one row or column replaced.
pub fn replace_line(a: &DQMatrix, which: Line, v: &[DualQuaternion]) -> Result<DQMatrix> {
    let mut out = a.clone();
    match which {
        Line::Row(i) => {
            let i = check_index(i, a.n_rows())?;
            if v.len() != a.n_cols() {
                return Err(Error::Shape(format!(
                    "row has {} entries, expected {}",
                    v.len(),
                    a.n_cols()
                )));
            }
            for (j, &x) in v.iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        Line::Column(j) => {
            let j = check_index(j, a.n_cols())?;
            if v.len() != a.n_rows() {
                return Err(Error::Shape(format!(
                    "column has {} entries, expected {}",
                    v.len(),
                    a.n_rows()
                )));
            }
            for (i, &x) in v.iter().enumerate() {
                out[(i, j)] = x;
            }
        }
    }
    Ok(out)
}

/// `A^{ij}`: delete row `i` and column `j`.
pub fn minor(a: &DQMatrix, i: usize, j: usize) -> Result<DQMatrix> {
    let n = a.size()?;
    if n < 2 {
        return Err(Error::Shape("a 1x1 matrix has no minors".into()));
    }
    let (i, j) = (check_index(i, n)?, check_index(j, n)?);
    let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    Ok(DQMatrix::from_fn(n - 1, n - 1, |r, c| {
        a[(rows[r], cols[c])]
    }))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Quaternion {
    let mut u = || {
        if scale > 0.0 {
            rng.gen_range(-scale..=scale)
        } else {
            0.0
        }
    };
    Quaternion::new(u(), u(), u(), u())
}

pub fn random_dual_quaternion<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> DualQuaternion {
    let s = random_quaternion(rng, scale);
    DualQuaternion::new(s, random_quaternion(rng, scale))
}

/// `(B + B*)/2` for `B` with uniform components in `[−scale, scale]`.
pub fn random_hermitian_with<R: Rng + ?Sized>(n: usize, rng: &mut R, scale: f64) -> DQMatrix {
    let mut b = DQMatrix::zeros(n, n);
    for q in b.data.iter_mut() {
        *q = random_dual_quaternion(rng, scale);
    }
    (&b + &b.adjoint()).scale(DualNumber::real(0.5))
}

/// Seeded random Hermitian matrix; identical output for identical inputs.
pub fn random_hermitian(n: usize, seed: u64, scale: f64) -> DQMatrix {
    random_hermitian_with(n, &mut rng(seed), scale)
}

const GRAM_SCHMIDT_RETRIES: usize = 16;

/// Quaternion unitary from Gram-Schmidt on a random quaternion matrix,
/// using the left inner product `Σ uᵢ* vᵢ`.
pub fn random_quaternion_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DQMatrix> {
    'retry: for _ in 0..GRAM_SCHMIDT_RETRIES {
        let mut cols: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut v: Vec<Quaternion> = (0..n).map(|_| random_quaternion(rng, 1.0)).collect();
            // two passes keep the basis orthonormal to rounding
            for _ in 0..2 {
                for u in &cols {
                    let proj = u
                        .iter()
                        .zip(&v)
                        .fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b);
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= *ui * proj;
                    }
                }
            }
            let norm = v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue 'retry;
            }
            v.iter_mut().for_each(|q| *q = *q * (1.0 / norm));
            cols.push(v);
        }
        return Ok(DQMatrix::from_fn(n, n, |i, j| {
            DualQuaternion::from_std(cols[j][i])
        }));
    }
    Err(Error::Convergence(format!(
        "Gram-Schmidt broke down {GRAM_SCHMIDT_RETRIES} times"
    )))
}

/// `U = U_s (I + ε S)` with `U_s` a quaternion unitary and `S` a
/// quaternion skew-Hermitian matrix, so `U*U = I`.
pub fn random_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DQMatrix> {
    let us = random_quaternion_unitary(n, rng)?;
    let mut m = DQMatrix::zeros(n, n);
    for q in m.data.iter_mut() {
        *q = DualQuaternion::from_std(random_quaternion(rng, 1.0));
    }
    let s = (&m - &m.adjoint()).scale(DualNumber::real(0.5));
    let us_s = &us * &s;
    Ok(DQMatrix::from_fn(n, n, |i, j| {
        DualQuaternion::new(us[(i, j)].std, us_s[(i, j)].std)
    }))
}

pub fn random_unitary(n: usize, seed: u64) -> Result<DQMatrix> {
    random_unitary_with(n, &mut rng(seed))
}

/// On-disk matrix layout: `{"n": int, "entries": [[[8 numbers]; n]; n]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<DualQuaternion>>,
}

impl DQMatrix {
    pub fn from_json_str(s: &str) -> Result<DQMatrix> {
        let file: MatrixFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        DQMatrix::try_from(file)
    }

    pub fn to_json_string(&self) -> Result<String> {
        let file = MatrixFile::try_from(self)?;
        serde_json::to_string(&file).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl TryFrom<MatrixFile> for DQMatrix {
    type Error = Error;

    fn try_from(file: MatrixFile) -> Result<DQMatrix> {
        let n = file.n;
        if n == 0 {
            return Err(Error::Parse("n must be at least 1".into()));
        }
        if file.entries.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} rows, found {}",
                file.entries.len()
            )));
        }
        if let Some((i, row)) = file.entries.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        let m = DQMatrix::from_rows(file.entries)?;
        if !m.is_finite() {
            return Err(Error::Parse("matrix has non-finite entries".into()));
        }
        Ok(m)
    }
}

impl TryFrom<&DQMatrix> for MatrixFile {
    type Error = Error;

    fn try_from(m: &DQMatrix) -> Result<MatrixFile> {
        let n = m.size()?;
        Ok(MatrixFile {
            n,
            entries: (0..n).map(|i| m.row(i)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dq(q: Quaternion) -> DualQuaternion {
        DualQuaternion::from_std(q)
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(DQMatrix::identity(3).adjoint(), DQMatrix::identity(3));
        let a = DQMatrix::from_rows(vec![
            vec![DualQuaternion::ZERO, dq(Quaternion::I)],
            vec![DualQuaternion::ZERO, DualQuaternion::ZERO],
        ])
        .unwrap();
        let expected = DQMatrix::from_rows(vec![
            vec![DualQuaternion::ZERO, DualQuaternion::ZERO],
            vec![dq(-Quaternion::I), DualQuaternion::ZERO],
        ])
        .unwrap();
        assert_eq!(conjugate_transpose(&a), expected);
    }

    #[test]
    fn product_of_adjoints_reverses() {
        let mut r = rng(11);
        let a = random_general(3, &mut r);
        let b = random_general(3, &mut r);
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    fn random_general(n: usize, r: &mut ChaCha8Rng) -> DQMatrix {
        let vals: Vec<_> = (0..n * n).map(|_| random_dual_quaternion(r, 1.0)).collect();
        DQMatrix::from_fn(n, n, |i, j| vals[i * n + j])
    }

    #[test]
    fn matmul_examples() {
        let mut r = rng(3);
        let a = random_general(3, &mut r);
        assert_eq!(&a * &DQMatrix::identity(3), a);
        let p = elementary(Elementary::Switch(1, 2), 2).unwrap();
        assert_eq!(&p * &p, DQMatrix::identity(2));
        let b = random_general(3, &mut r).map(|q| DualQuaternion::infinitesimal(q.std));
        let c = random_general(3, &mut r).map(|q| DualQuaternion::infinitesimal(q.std));
        assert_eq!((&b * &c).max_abs(), 0.0);
        assert!(matches!(
            DQMatrix::zeros(2, 3).matmul(&DQMatrix::zeros(2, 3)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let tag = classify(&DQMatrix::identity(3), 1e-12).unwrap();
        assert_eq!(tag.kind, HermitianKind::Hermitian);
        assert!(tag.is_unitary);

        let h = DQMatrix::from_rows(vec![
            vec![DualQuaternion::ONE, dq(Quaternion::I)],
            vec![dq(-Quaternion::I), DualQuaternion::ONE],
        ])
        .unwrap();
        assert_eq!(classify(&h, 1e-12).unwrap().kind, HermitianKind::Hermitian);

        let g = DQMatrix::from_rows(vec![
            vec![DualQuaternion::ONE, dq(Quaternion::J)],
            vec![DualQuaternion::ZERO, DualQuaternion::ONE],
        ])
        .unwrap();
        assert_eq!(
            classify(&g, 1e-12).unwrap().kind,
            HermitianKind::AlmostHermitian(1)
        );

        let mut r = rng(5);
        let general = random_general(3, &mut r);
        assert_eq!(
            classify(&general, 1e-12).unwrap().kind,
            HermitianKind::General
        );
        assert!(classify(&DQMatrix::zeros(2, 3), 1e-12).is_err());
    }

    #[test]
    fn elementary_examples() {
        let c = DualQuaternion::new(Quaternion::new(0.5, 1.0, -2.0, 0.0), Quaternion::K);
        let o = DualQuaternion::ONE;
        let z = DualQuaternion::ZERO;
        assert_eq!(
            elementary(Elementary::Switch(1, 2), 2).unwrap(),
            DQMatrix::from_rows(vec![vec![z, o], vec![o, z]]).unwrap()
        );
        assert_eq!(
            elementary(Elementary::Scale(2, c), 2).unwrap(),
            DQMatrix::from_rows(vec![vec![o, z], vec![z, c]]).unwrap()
        );
        assert_eq!(
            elementary(Elementary::Add(1, 2, c), 2).unwrap(),
            DQMatrix::from_rows(vec![vec![o, z], vec![c, o]]).unwrap()
        );
        assert!(matches!(
            elementary(Elementary::Switch(1, 3), 2),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
        assert!(elementary(Elementary::Add(2, 2, c), 3).is_err());
    }

    #[test]
    fn elementary_inverses() {
        let c = DualQuaternion::new(Quaternion::new(0.5, 1.0, -2.0, 0.0), Quaternion::K);
        for op in [
            Elementary::Switch(1, 3),
            Elementary::Add(3, 1, c),
            Elementary::Scale(2, c),
        ] {
            let m = op.matrix(3).unwrap();
            let inv = op.inverse().unwrap().matrix(3).unwrap();
            assert!((&m * &inv).max_abs_diff(&DQMatrix::identity(3)) < 1e-14);
        }
    }

    #[test]
    fn line_replacement_and_minors() {
        let i2 = DQMatrix::identity(2);
        assert_eq!(replace_line(&i2, Line::Row(1), &i2.row(0)).unwrap(), i2);
        let v = [dq(Quaternion::I), dq(Quaternion::J)];
        let out = replace_line(&i2, Line::Column(2), &v).unwrap();
        let expected = DQMatrix::from_rows(vec![
            vec![DualQuaternion::ONE, dq(Quaternion::I)],
            vec![DualQuaternion::ZERO, dq(Quaternion::J)],
        ])
        .unwrap();
        assert_eq!(out, expected);
        assert!(replace_line(&i2, Line::Row(1), &v[..1]).is_err());

        assert_eq!(
            minor(&DQMatrix::identity(3), 1, 1).unwrap(),
            DQMatrix::identity(2)
        );
        let a = DQMatrix::from_fn(2, 2, |i, j| DualQuaternion::real((2 * i + j) as f64));
        assert_eq!(minor(&a, 1, 2).unwrap()[(0, 0)], DualQuaternion::real(2.0));
        assert!(minor(&DQMatrix::identity(1), 1, 1).is_err());

        let h = random_hermitian(4, 9, 1.0);
        for k in 1..=4 {
            let m = minor(&h, k, k).unwrap();
            assert_eq!(classify(&m, 1e-12).unwrap().kind, HermitianKind::Hermitian);
        }
    }

    #[test]
    fn replaced_row_is_almost_hermitian() {
        let h = random_hermitian(4, 2, 1.0);
        let v = h.row(1);
        let a = replace_line(&h, Line::Row(4), &v).unwrap();
        assert_eq!(
            classify(&a, 1e-12).unwrap().kind,
            HermitianKind::AlmostHermitian(4)
        );
    }

    #[test]
    fn random_generators() {
        let one = random_hermitian(1, 42, 1.0);
        assert!(one[(0, 0)].as_dual_number(1e-15).is_some());
        assert_eq!(random_hermitian(3, 8, 1.0), random_hermitian(3, 8, 1.0));
        assert_ne!(random_hermitian(3, 8, 1.0), random_hermitian(3, 9, 1.0));
        let h = random_hermitian(4, 7, 1.0);
        assert_eq!(classify(&h, 1e-12).unwrap().kind, HermitianKind::Hermitian);

        let u1 = random_unitary(1, 4).unwrap();
        assert!((u1[(0, 0)].std.norm() - 1.0).abs() < 1e-12);
        for seed in 0..20 {
            let u = random_unitary(4, seed).unwrap();
            assert!(u.is_unitary(1e-10));
            for j in 0..4 {
                let nrm = crate::scalar::vector_norm2(&u.col(j));
                assert!((nrm.s - 1.0).abs() < 1e-12 && nrm.d.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn congruence_preserves_hermitian() {
        let h = random_hermitian(3, 1, 1.0);
        let c = DualQuaternion::new(Quaternion::new(0.5, 1.0, -2.0, 0.0), Quaternion::K);
        for op in [
            Elementary::Switch(1, 3),
            Elementary::Add(2, 3, c),
            Elementary::Scale(1, c),
        ] {
            let p = op.matrix(3).unwrap();
            assert!(h.congruence(&p).unwrap().is_hermitian(1e-12));
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let h = random_hermitian(3, 1, 1.0);
        let s = h.to_json_string().unwrap();
        assert_eq!(DQMatrix::from_json_str(&s).unwrap(), h);
        let bad =
            r#"{"n": 2, "entries": [[[1,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0]],[[1,0,0,0,0,0,0,0]]]}"#;
        assert!(matches!(DQMatrix::from_json_str(bad), Err(Error::Parse(_))));
        let short = r#"{"n": 1, "entries": [[[1,0,0]]]}"#;
        assert!(matches!(
            DQMatrix::from_json_str(short),
            Err(Error::Parse(_))
        ));
        let huge = r#"{"n": 1, "entries": [[[1e400,0,0,0,0,0,0,0]]]}"#;
        assert!(DQMatrix::from_json_str(huge).is_err());
    }
}
