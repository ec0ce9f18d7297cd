//! Cycle-sum determinants over dual quaternion matrices.
//!
//! Every term is an ordered product of entries along the cycles of a
//! canonical decomposition. Products are evaluated left to right in the
//! listed cycle order and never reordered: with noncommutative entries
//! the order is part of the definition.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::decomposition::{lu_outcome, LuOutcome};
use crate::error::{Error, Result};
use crate::matrix::{classify, is_almost_hermitian_at, DQMatrix, HermitianKind};
use crate::permutation::{decompositions, Convention, CycleDecomposition, KyrcheiMode};
use crate::scalar::{DualNumber, DualQuaternion};

/// Default size cap for the permutation-sum determinants (8! = 40 320 terms).
pub const DEFAULT_DET_CAP: usize = 8;

/// Relative tolerance for reading a determinant value as a dual number.
const DUAL_NUMBER_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetDefinition {
    Moore,
    /// Dyson's recursive expansion about the 1-based index `k`.
    Dyson(usize),
    Chen,
    KyrcheiRow(usize),
    KyrcheiColumn(usize),
    Quasi,
}

impl fmt::Display for DetDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetDefinition::Moore => write!(f, "moore"),
            DetDefinition::Dyson(k) => write!(f, "dyson:{k}"),
            DetDefinition::Chen => write!(f, "chen"),
            DetDefinition::KyrcheiRow(i) => write!(f, "krow:{i}"),
            DetDefinition::KyrcheiColumn(j) => write!(f, "kcol:{j}"),
            DetDefinition::Quasi => write!(f, "quasi"),
        }
    }
}

impl std::str::FromStr for DetDefinition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let index = |arg: Option<&str>| -> Result<usize> {
            arg.ok_or_else(|| Error::Parse(format!("method '{name}' needs an index")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in method '{s}'")))
        };
        match name {
            "moore" if arg.is_none() => Ok(DetDefinition::Moore),
            "chen" if arg.is_none() => Ok(DetDefinition::Chen),
            "quasi" if arg.is_none() => Ok(DetDefinition::Quasi),
            "dyson" => Ok(DetDefinition::Dyson(index(arg)?)),
            "krow" => Ok(DetDefinition::KyrcheiRow(index(arg)?)),
            "kcol" => Ok(DetDefinition::KyrcheiColumn(index(arg)?)),
            _ => Err(Error::Parse(format!("unknown method '{s}'"))),
        }
    }
}

impl Serialize for DetDefinition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetResult {
    pub definition: DetDefinition,
    pub value: DualQuaternion,
    #[serde(rename = "dual_number")]
    pub as_dual_number: Option<DualNumber>,
    pub term_count: usize,
}

impl DetResult {
    fn new(
        definition: DetDefinition,
        value: DualQuaternion,
        scale: f64,
        term_count: usize,
    ) -> Self {
        DetResult {
            definition,
            value,
            as_dual_number: value.as_dual_number(DUAL_NUMBER_TOL * scale.max(1.0)),
            term_count,
        }
    }
}

/// `⟨σ⟩`: the product over cycles, in listed order, of
/// `a_{c₁c₂} a_{c₂c₃} ⋯ a_{c_k c₁}`.
pub fn cycle_value(a: &DQMatrix, dec: &CycleDecomposition) -> Result<DualQuaternion> {
    let n = a.size()?;
    if n != dec.n() {
        return Err(Error::Shape(format!(
            "decomposition of size {} for a {n}x{n} matrix",
            dec.n()
        )));
    }
    Ok(ordered_product(a, dec))
}

fn ordered_product(a: &DQMatrix, dec: &CycleDecomposition) -> DualQuaternion {
    let mut acc = DualQuaternion::ONE;
    for c in dec.cycles() {
        for (pos, &from) in c.iter().enumerate() {
            let to = c[(pos + 1) % c.len()];
            acc = acc * a[(from, to)];
        }
    }
    acc
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeCap { n, cap })
    } else {
        Ok(())
    }
}

fn cycle_sum(
    a: &DQMatrix,
    convention: Convention,
    definition: DetDefinition,
    cap: usize,
) -> Result<DetResult> {
    let n = a.size()?;
    check_cap(n, cap)?;
    let mut total = DualQuaternion::ZERO;
    let mut scale = 0.0_f64;
    let mut count = 0;
    for dec in decompositions(n, convention, cap)? {
        let term = ordered_product(a, &dec);
        scale = scale.max(term.max_abs());
        if dec.sign() > 0 {
            total += term;
        } else {
            total -= term;
        }
        count += 1;
    }
    Ok(DetResult::new(definition, total, scale, count))
}

pub fn moore_det(a: &DQMatrix) -> Result<DetResult> {
    determinant(a, DetDefinition::Moore, DEFAULT_DET_CAP)
}

pub fn chen_det(a: &DQMatrix) -> Result<DetResult> {
    determinant(a, DetDefinition::Chen, DEFAULT_DET_CAP)
}

pub fn kyrchei_det(a: &DQMatrix, mode: KyrcheiMode, anchor: usize) -> Result<DetResult> {
    let def = match mode {
        KyrcheiMode::Row => DetDefinition::KyrcheiRow(anchor),
        KyrcheiMode::Column => DetDefinition::KyrcheiColumn(anchor),
    };
    determinant(a, def, DEFAULT_DET_CAP)
}

pub fn moore_det_dyson(a: &DQMatrix, k: usize) -> Result<DetResult> {
    determinant(a, DetDefinition::Dyson(k), DEFAULT_DET_CAP)
}

/// Evaluates any of the supported determinant definitions, refusing
/// matrices larger than `cap`.
pub fn determinant(a: &DQMatrix, definition: DetDefinition, cap: usize) -> Result<DetResult> {
    let n = a.size()?;
    match definition {
        DetDefinition::Moore => cycle_sum(a, Convention::MinFirstDesc, definition, cap),
        DetDefinition::Chen => cycle_sum(a, Convention::MaxFirstDesc, definition, cap),
        DetDefinition::KyrcheiRow(i) => cycle_sum(a, Convention::AnchoredRow(i), definition, cap),
        DetDefinition::KyrcheiColumn(j) => {
            cycle_sum(a, Convention::AnchoredColumn(j), definition, cap)
        }
        DetDefinition::Dyson(k) => {
            check_cap(n, cap)?;
            dyson(a, k)
        }
        DetDefinition::Quasi => {
            let v = quasi_det(a)?;
            Ok(DetResult::new(definition, v.to_dq(), 1.0, n))
        }
    }
}

/// State of one sub-problem in Dyson's recursion: the principal
/// submatrix on `mask`, optionally with the column at `replaced` swapped
/// for the original column `source` (restricted to the rows in `mask`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct DysonKey {
    mask: u32,
    replaced: Option<(u8, u8)>,
}

struct Dyson<'a> {
    a: &'a DQMatrix,
    memo: HashMap<DysonKey, DualQuaternion>,
}

impl Dyson<'_> {
    fn entry(&self, key: DysonKey, row: usize, col: usize) -> DualQuaternion {
        match key.replaced {
            Some((c, src)) if c as usize == col => self.a[(row, src as usize)],
            _ => self.a[(row, col)],
        }
    }

    fn eval(&mut self, key: DysonKey, anchor: Option<usize>) -> DualQuaternion {
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        // An almost-Hermitian sub-problem must be expanded about its
        // replaced column; Hermitian ones about their smallest index,
        // unless the caller chose an anchor.
        let t = match key.replaced {
            Some((c, _)) => c as usize,
            None => anchor.unwrap_or_else(|| key.mask.trailing_zeros() as usize),
        };
        let value = if key.mask.count_ones() == 1 {
            self.entry(key, t, t)
        } else {
            let rest = key.mask & !(1 << t);
            let source = key.replaced.map_or(t as u8, |(_, src)| src);
            let mut v = self.entry(key, t, t)
                * self.eval(
                    DysonKey {
                        mask: rest,
                        replaced: None,
                    },
                    None,
                );
            for i in (0..32).filter(|i| rest & (1 << i) != 0) {
                let sub = self.eval(
                    DysonKey {
                        mask: rest,
                        replaced: Some((i as u8, source)),
                    },
                    None,
                );
                v -= self.entry(key, t, i) * sub;
            }
            v
        };
        self.memo.insert(key, value);
        value
    }
}

fn dyson(a: &DQMatrix, k: usize) -> Result<DetResult> {
    let n = a.size()?;
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let tol = 1e-9 * a.max_abs().max(1.0);
    let tag = classify(a, tol)?;
    let admissible = match tag.kind {
        HermitianKind::Hermitian => true,
        HermitianKind::AlmostHermitian(_) => is_almost_hermitian_at(a, k, tol)?,
        HermitianKind::General => false,
    };
    if !admissible {
        return Err(Error::Domain(format!(
            "Dyson expansion about index {k} needs a Hermitian or {k}-almost-Hermitian matrix"
        )));
    }
    let mut d = Dyson {
        a,
        memo: HashMap::new(),
    };
    let full = DysonKey {
        mask: (1u32 << n) - 1,
        replaced: None,
    };
    let value = d.eval(full, Some(k - 1));
    let scale = a.max_abs().max(1.0).powi(n as i32);
    Ok(DetResult::new(
        DetDefinition::Dyson(k),
        value,
        scale,
        d.memo.len(),
    ))
}

/// Quasi-determinant from the LU diagonal: `∏ |uᵢᵢ|²`.
///
/// A step with no appreciable pivot but a nonzero infinitesimal column
/// contributes a zero factor; a column that vanishes entirely is an error.
pub fn quasi_det(a: &DQMatrix) -> Result<DualNumber> {
    a.size()?;
    match lu_outcome(a) {
        LuOutcome::Complete(f) => Ok(f
            .u
            .diagonal()
            .into_iter()
            .fold(DualNumber::ONE, |acc, d| acc * d.magnitude_sqr())),
        LuOutcome::Breakdown {
            infinitesimal_pivot: true,
            ..
        } => Ok(DualNumber::ZERO),
        LuOutcome::Breakdown { step, .. } => Err(Error::SingularLu { step }),
    }
}
