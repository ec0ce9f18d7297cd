//! Permutations, canonical cycle decompositions and the constrained
//! permutation sets that index the cycle-sum determinants.
//!
//! The public surface uses 1-based indices (`σ(j) = i_j` with
//! `j ∈ {1..n}`); storage is 0-based.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Default upper bound on `n` for enumerations (9! = 362 880 elements).
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds `σ` from its 1-based image list `[σ(1), …, σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty image list".into()));
        }
        let mut seen = vec![false; n];
        let mut zero = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {i} repeated")));
            }
            zero.push(i - 1);
        }
        Ok(Permutation { images: zero })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `σ(j)` for 1-based `j`.
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn inversions(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .map(|a| (a + 1..p.len()).filter(|&b| p[a] > p[b]).count())
            .sum()
    }

    /// Sign from the inversion count.
    pub fn parity_sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Disjoint cycles in order of first appearance, each starting at its
    /// smallest element.
    fn raw_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

/// How the cycles of a decomposition are led and ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Each cycle led by its minimum, leaders strictly decreasing.
    MinFirstDesc,
    /// Each cycle led by its maximum, leaders strictly decreasing (so the
    /// first cycle is led by `n`).
    MaxFirstDesc,
    /// The cycle through the 1-based anchor comes first and starts at the
    /// anchor; the rest are min-led with increasing leaders.
    AnchoredRow(usize),
    /// Min-led cycles with decreasing leaders, followed by the cycle
    /// through the 1-based anchor, started at the anchor.
    AnchoredColumn(usize),
}

impl Convention {
    fn check(self, n: usize) -> Result<()> {
        match self {
            Convention::AnchoredRow(a) | Convention::AnchoredColumn(a) if a == 0 || a > n => {
                Err(Error::IndexOutOfRange { index: a, n })
            }
            _ => Ok(()),
        }
    }
}

/// A permutation written as an ordered product of disjoint cycles.
///
/// Fixed points are kept as 1-cycles, so the cycles always cover `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    /// Builds a decomposition from 1-based cycles, kept in the given order.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut zero = Vec::with_capacity(cycles.len());
        for c in cycles {
            if c.is_empty() {
                return Err(Error::InvalidPermutation("empty cycle".into()));
            }
            let mut zc = Vec::with_capacity(c.len());
            for &i in c {
                if i == 0 || i > n {
                    return Err(Error::InvalidPermutation(format!("{i} outside 1..={n}")));
                }
                if std::mem::replace(&mut seen[i - 1], true) {
                    return Err(Error::InvalidPermutation(format!("{i} appears twice")));
                }
                zc.push(i - 1);
            }
            zero.push(zc);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPermutation(
                "cycles do not cover every index".into(),
            ));
        }
        Ok(CycleDecomposition { n, cycles: zero })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    /// 0-based cycles in listed order.
    pub(crate) fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycles_one_based(&self) -> Vec<Vec<usize>> {
        self.cycles
            .iter()
            .map(|c| c.iter().map(|i| i + 1).collect())
            .collect()
    }

    /// `(−1)^(n−r)` for `r` cycles.
    pub fn sign(&self) -> i32 {
        if (self.n - self.cycles.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut images = vec![0; self.n];
        for c in &self.cycles {
            for (a, &x) in c.iter().enumerate() {
                images[x] = c[(a + 1) % c.len()];
            }
        }
        Permutation::from_zero_based(images)
    }

    /// Reverses the direction of cycle `idx` while keeping its leader:
    /// `(c₁ c₂ … c_k)` becomes `(c₁ c_k … c₂)`.
    pub fn reverse_cycle(&self, idx: usize) -> CycleDecomposition {
        let mut out = self.clone();
        let c = &mut out.cycles[idx];
        if c.len() > 2 {
            c[1..].reverse();
        }
        out
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            write!(f, "({})", c.iter().map(|i| i + 1).join(" "))?;
        }
        Ok(())
    }
}

fn rotate_to(cycle: &mut [usize], leader: usize) {
    let pos = cycle.iter().position(|&x| x == leader).unwrap_or(0);
    cycle.rotate_left(pos);
}

fn lead_by_min(mut c: Vec<usize>) -> Vec<usize> {
    let m = *c.iter().min().expect("non-empty cycle");
    rotate_to(&mut c, m);
    c
}

fn lead_by_max(mut c: Vec<usize>) -> Vec<usize> {
    let m = *c.iter().max().expect("non-empty cycle");
    rotate_to(&mut c, m);
    c
}

/// Canonical cycle decomposition of `perm` under `convention`.
pub fn decompose(perm: &Permutation, convention: Convention) -> Result<CycleDecomposition> {
    let n = perm.len();
    convention.check(n)?;
    let raw = perm.raw_cycles();
    let cycles = match convention {
        Convention::MinFirstDesc => {
            let mut cs: Vec<_> = raw.into_iter().map(lead_by_min).collect();
            cs.sort_by(|a, b| b[0].cmp(&a[0]));
            cs
        }
        Convention::MaxFirstDesc => {
            let mut cs: Vec<_> = raw.into_iter().map(lead_by_max).collect();
            cs.sort_by(|a, b| b[0].cmp(&a[0]));
            cs
        }
        Convention::AnchoredRow(a) | Convention::AnchoredColumn(a) => {
            let anchor = a - 1;
            let (mut with, rest): (Vec<_>, Vec<_>) =
                raw.into_iter().partition(|c| c.contains(&anchor));
            let mut anchored = with.pop().expect("anchor lies on some cycle");
            rotate_to(&mut anchored, anchor);
            let mut rest: Vec<_> = rest.into_iter().map(lead_by_min).collect();
            if let Convention::AnchoredRow(_) = convention {
                rest.sort_by(|a, b| a[0].cmp(&b[0]));
                std::iter::once(anchored).chain(rest).collect()
            } else {
                rest.sort_by(|a, b| b[0].cmp(&a[0]));
                rest.into_iter().chain(std::iter::once(anchored)).collect()
            }
        }
    };
    Ok(CycleDecomposition { n, cycles })
}

pub fn sign(dec: &CycleDecomposition) -> i32 {
    dec.sign()
}

fn check_size(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Shape("permutation size must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    Ok(())
}

/// Lazily yields the canonical decomposition of every permutation of
/// `{1..n}`, in lexicographic order of the image lists.
pub fn decompositions(
    n: usize,
    convention: Convention,
    cap: usize,
) -> Result<impl Iterator<Item = CycleDecomposition>> {
    check_size(n, cap)?;
    convention.check(n)?;
    Ok((0..n).permutations(n).map(move |images| {
        decompose(&Permutation::from_zero_based(images), convention)
            .expect("convention validated above")
    }))
}

pub fn enumerate(n: usize, convention: Convention, cap: usize) -> Result<Vec<CycleDecomposition>> {
    Ok(decompositions(n, convention, cap)?.collect())
}

/// The index set of the Moore determinant.
pub fn enumerate_moore(n: usize) -> Result<Vec<CycleDecomposition>> {
    enumerate(n, Convention::MinFirstDesc, DEFAULT_ENUMERATION_CAP)
}

/// The index set of the Chen determinant.
pub fn enumerate_chen(n: usize) -> Result<Vec<CycleDecomposition>> {
    enumerate(n, Convention::MaxFirstDesc, DEFAULT_ENUMERATION_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KyrcheiMode {
    Row,
    Column,
}

/// The index set of the Kyrchei row or column determinant anchored at a
/// 1-based index.
pub fn enumerate_kyrchei(
    n: usize,
    mode: KyrcheiMode,
    anchor: usize,
) -> Result<Vec<CycleDecomposition>> {
    let conv = match mode {
        KyrcheiMode::Row => Convention::AnchoredRow(anchor),
        KyrcheiMode::Column => Convention::AnchoredColumn(anchor),
    };
    enumerate(n, conv, DEFAULT_ENUMERATION_CAP)
}
