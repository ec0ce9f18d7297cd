//! Seeded property suite. Each property runs independent trials and
//! records the largest discrepancy against its tolerance.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::{
    char_poly, hermitian_eig, lu_partial_pivot, quasi_char_poly_eval, singularity_classify,
    unitary_to_diagonal, DualRoot,
};
use crate::determinant::{
    chen_det, determinant, kyrchei_det, moore_det, moore_det_dyson, quasi_det, DetDefinition,
};
use crate::error::{Error, Result};
use crate::matrix::{
    elementary, random_dual_quaternion, random_hermitian_with, random_quaternion,
    random_unitary_with, replace_line, rng, DQMatrix, Elementary, Line,
};
use crate::oracle::{brute_det, cofactor_det, standard_spectrum, BruteDef, BRUTE_CAP};
use crate::permutation::{decompose, enumerate, Convention, KyrcheiMode, Permutation};
use crate::scalar::{dq_rel_err, dual_compare, dual_rel_err, DualNumber, DualQuaternion};

pub const DEFAULT_VERIFY_CAP: usize = 8;

type Trial = fn(usize, &mut ChaCha8Rng) -> Result<f64>;

pub struct Property {
    pub id: &'static str,
    pub description: &'static str,
    pub tolerance: f64,
    trial: Trial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyRecord {
    pub id: String,
    pub description: String,
    pub trials: usize,
    pub failures: usize,
    pub max_discrepancy: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub first_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub pass: bool,
    pub properties: Vec<PropertyRecord>,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn property_seed(seed: u64, idx: usize) -> u64 {
    splitmix(splitmix(seed) ^ idx as u64)
}

fn trial_seed(property_seed: u64, trial: usize) -> u64 {
    splitmix(property_seed ^ splitmix(trial as u64))
}

pub fn properties() -> Vec<Property> {
    macro_rules! p {
        ($id:expr, $tol:expr, $f:expr, $d:expr) => {
            Property {
                id: $id,
                description: $d,
                tolerance: $tol,
                trial: $f,
            }
        };
    }
    vec![
        p!("real-part-below-magnitude", 1e-12, real_part_below_magnitude, "Re(q) <= |q| lexicographically, with equality for nonnegative dual numbers"),
        p!("real-part-symmetry", 1e-12, real_part_symmetry, "Re(pq) = Re(qp) and Re(q) = Re(q*)"),
        p!("magnitude-multiplicative", 1e-9, magnitude_multiplicative, "|pq| = |p||q|"),
        p!("magnitude-triangle", 1e-12, magnitude_triangle, "|p + q| <= |p| + |q| lexicographically"),
        p!("conjugate-sum-real", 1e-12, conjugate_sum_real, "q + q* has no imaginary components"),
        p!("product-ring-laws", 1e-12, product_ring_laws, "the product is associative and distributive"),
        p!("enumeration-canonical", 0.0, enumeration_canonical, "every convention indexes each permutation once, canonically, with sign equal to parity"),
        p!("cycle-reversal-sign", 0.0, cycle_reversal_sign, "reversing one cycle keeps the sign"),
        p!("elementary-inverses", 1e-12, elementary_inverses, "switching is an involution and P_ij;c P_ij;-c = I"),
        p!("congruence-keeps-hermitian", 1e-12, congruence_keeps_hermitian, "elementary congruences preserve Hermitian matrices"),
        p!("cycle-rotation-identity", 1e-12, cycle_rotation_identity, "<s> + <s reversed> is unchanged by restarting the cycle"),
        p!("chen-switch-congruence", 1e-9, chen_switch_congruence, "Cdet(P_ij* A P_ij) = Cdet(A)"),
        p!("chen-scale", 1e-9, chen_scale, "Cdet scales by a on row n, column n, and by a*a under congruence"),
        p!("chen-replaced-row-zero", 1e-9, chen_replaced_row_zero, "Cdet vanishes when row n is a multiple of an earlier row"),
        p!("chen-replaced-column-zero", 1e-9, chen_replaced_column_zero, "Cdet vanishes when column n is a multiple of an earlier column"),
        p!("chen-addition-congruence", 1e-9, chen_addition_congruence, "Cdet(P_ij;a* A P_ij;a) = Cdet(A)"),
        p!("unitary-reduction", 1e-8, unitary_reduction, "unitaries reduce to diagonal form with |d1...dn| = 1 and LU residual below 1e-9"),
        p!("unitary-invariance", 1e-8, unitary_invariance, "Cdet(U* A U) = Cdet(A)"),
        p!("eigenvalue-product", 1e-8, eigenvalue_product, "prod(lambda) = Mdet = Cdet and Cdet(A*A) = Cdet(A)^2"),
        p!("cross-definition-equality", 1e-9, cross_definition_equality, "Moore, Dyson at every k, Chen and all Kyrchei determinants agree"),
        p!("hermitian-determinants-real", 1e-9, hermitian_determinants_real, "determinants of Hermitian matrices are dual numbers"),
        p!("singularity-criterion", 0.0, singularity_criterion, "Mdet = 0 iff a zero or two infinitesimal eigenvalues"),
        p!("unitary-spectrum-invariance", 1e-8, unitary_spectrum_invariance, "eigenvalues of U* A U equal those of A"),
        p!("charpoly-matches-mdet", 1e-8, charpoly_matches_mdet, "p(x) = Mdet(xI - A) at n + 1 points"),
        p!("charpoly-simple-roots", 1e-8, charpoly_simple_roots, "with simple standard spectrum the roots of p are the eigenvalues"),
        p!("charpoly-extra-root", 1e-8, charpoly_extra_root, "a repeated standard eigenvalue gives a root of p that is not an eigenvalue"),
        p!("quasi-charpoly", 1e-8, quasi_charpoly, "|p(x)|^2 = prod |x - lambda|^2 at 10 random points"),
        p!("quasi-det-consistency", 1e-8, quasi_det_consistency, "quasi_det(A) = prod(lambda)^2 = |p(0)|^2"),
        p!("mdet-finite-difference", 1e-10, mdet_finite_difference, "Mdet and prod(lambda) move together under a 1e-6 Hermitian perturbation"),
        p!("oracle-brute-agreement", 1e-10, oracle_brute_agreement, "brute-force sums match every determinant entry point"),
        p!("oracle-spectrum-agreement", 1e-8, oracle_spectrum_agreement, "standard eigenvalues match the complex adjoint, whose eigenvalues pair up"),
        p!("classical-reduction", 1e-9, classical_reduction, "Mdet of a real symmetric matrix is its ordinary determinant"),
    ]
}

/// Runs the registered properties (or the one named by `filter`) for
/// `trials` seeded trials each at size `n`.
pub fn run_verify(
    n: usize,
    trials: usize,
    seed: u64,
    filter: Option<&str>,
    cap: usize,
) -> Result<VerifyReport> {
    if n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    if n < 2 {
        return Err(Error::Shape("verification needs n >= 2".into()));
    }
    let all = properties();
    let selected: Vec<(usize, &Property)> = match filter {
        None => all.iter().enumerate().collect(),
        Some(id) => {
            let found: Vec<_> = all.iter().enumerate().filter(|(_, p)| p.id == id).collect();
            if found.is_empty() {
                return Err(Error::Parse(format!("unknown property id '{id}'")));
            }
            found
        }
    };
    let records: Vec<PropertyRecord> = selected
        .into_iter()
        .map(|(idx, p)| run_property(p, idx, n, trials, seed))
        .collect();
    Ok(VerifyReport {
        n,
        trials,
        seed,
        pass: records.iter().all(|r| r.failures == 0),
        properties: records,
    })
}

fn run_property(p: &Property, idx: usize, n: usize, trials: usize, seed: u64) -> PropertyRecord {
    let pseed = property_seed(seed, idx);
    let outcomes: Vec<Result<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| (p.trial)(n, &mut rng(trial_seed(pseed, t))))
        .collect();
    let mut failures = 0;
    let mut max_discrepancy = 0.0_f64;
    let mut first_error = None;
    for (t, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(d) if d.is_finite() => {
                max_discrepancy = max_discrepancy.max(d);
                if d > p.tolerance {
                    failures += 1;
                }
            }
            Ok(d) => {
                failures += 1;
                first_error.get_or_insert_with(|| format!("trial {t}: discrepancy {d}"));
            }
            Err(e) => {
                failures += 1;
                first_error.get_or_insert_with(|| format!("trial {t}: {e}"));
            }
        }
    }
    PropertyRecord {
        id: p.id.to_string(),
        description: p.description.to_string(),
        trials,
        failures,
        max_discrepancy,
        tolerance: p.tolerance,
        seed: pseed,
        first_error,
    }
}

fn dq(r: &mut ChaCha8Rng) -> DualQuaternion {
    random_dual_quaternion(r, 1.0)
}

fn herm(n: usize, r: &mut ChaCha8Rng) -> DQMatrix {
    random_hermitian_with(n, r, 1.0)
}

fn value(d: crate::determinant::DetResult) -> DualQuaternion {
    d.value
}

fn bool_gap(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

/// How far `a <= b` is from holding lexicographically, with slack `tol`
/// on the standard parts deciding ties.
fn order_gap(a: DualNumber, b: DualNumber, tol: f64) -> f64 {
    if a.s < b.s - tol {
        0.0
    } else if a.s > b.s + tol {
        a.s - b.s
    } else {
        (a.d - b.d).max(0.0)
    }
}

fn real_part_below_magnitude(_: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let q = dq(r);
    let gap = order_gap(q.re(), q.magnitude(), 1e-12);
    let nonneg = DualNumber::new(r.gen_range(0.1..2.0), r.gen_range(-1.0..1.0)).to_dq();
    let eq = dual_rel_err(nonneg.re(), nonneg.magnitude());
    Ok(gap.max(eq))
}

fn real_part_symmetry(_: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let (p, q) = (dq(r), dq(r));
    let a = dual_rel_err((p * q).re(), (q * p).re());
    let b = dual_rel_err(p.re(), p.conj().re());
    Ok(a.max(b))
}

fn magnitude_multiplicative(_: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let (p, q) = (dq(r), dq(r));
    Ok(dual_rel_err(
        (p * q).magnitude(),
        p.magnitude() * q.magnitude(),
    ))
}

fn magnitude_triangle(_: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let (p, q) = (dq(r), dq(r));
    Ok(order_gap(
        (p + q).magnitude(),
        p.magnitude() + q.magnitude(),
        1e-12,
    ))
}

fn conjugate_sum_real(_: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let q = dq(r);
    Ok((q + q.conj()).imag_max_abs())
}

fn product_ring_laws(_: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let (a, b, c) = (dq(r), dq(r), dq(r));
    let assoc = dq_rel_err((a * b) * c, a * (b * c));
    let left = dq_rel_err(a * (b + c), a * b + a * c);
    let right = dq_rel_err((a + b) * c, a * c + b * c);
    Ok(assoc.max(left).max(right))
}

fn random_convention(n: usize, r: &mut ChaCha8Rng) -> Convention {
    let anchor = r.gen_range(1..=n);
    match r.gen_range(0..4) {
        0 => Convention::MinFirstDesc,
        1 => Convention::MaxFirstDesc,
        2 => Convention::AnchoredRow(anchor),
        _ => Convention::AnchoredColumn(anchor),
    }
}

fn enumeration_canonical(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let n = n.min(6);
    let conv = random_convention(n, r);
    let all = enumerate(n, conv, n)?;
    let factorial: usize = (1..=n).product();
    let mut seen = std::collections::HashSet::new();
    let mut ok = all.len() == factorial;
    for d in &all {
        let p = d.to_permutation();
        ok &= seen.insert(p.images());
        ok &= decompose(&p, conv)? == *d;
        ok &= d.sign() == p.parity_sign();
    }
    Ok(bool_gap(ok))
}

fn random_permutation(n: usize, r: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(r);
    Permutation::from_images(&images).expect("shuffled identity")
}

fn cycle_reversal_sign(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let conv = random_convention(n, r);
    let d = decompose(&random_permutation(n, r), conv)?;
    let idx = r.gen_range(0..d.num_cycles());
    Ok(bool_gap(d.reverse_cycle(idx).sign() == d.sign()))
}

fn distinct_pair(n: usize, r: &mut ChaCha8Rng) -> (usize, usize) {
    let i = r.gen_range(1..=n);
    let mut j = r.gen_range(1..n);
    if j >= i {
        j += 1;
    }
    (i, j)
}

fn elementary_inverses(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let (i, j) = distinct_pair(n, r);
    let c = dq(r);
    let id = DQMatrix::identity(n);
    let s = elementary(Elementary::Switch(i, j), n)?;
    let a = elementary(Elementary::Add(i, j, c), n)?;
    let a_inv = elementary(Elementary::Add(i, j, -c), n)?;
    Ok((&s * &s)
        .max_abs_diff(&id)
        .max((&a * &a_inv).max_abs_diff(&id)))
}

fn congruence_keeps_hermitian(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let (i, j) = distinct_pair(n, r);
    let c = dq(r);
    let mut worst = 0.0_f64;
    for op in [
        Elementary::Switch(i, j),
        Elementary::Add(i, j, c),
        Elementary::Scale(i, c),
    ] {
        let b = a.congruence(&op.matrix(n)?)?;
        worst = worst.max(b.max_abs_diff(&b.adjoint()));
    }
    Ok(worst)
}

fn path_product(a: &DQMatrix, cycle: &[usize]) -> DualQuaternion {
    (0..cycle.len()).fold(DualQuaternion::ONE, |acc, t| {
        acc * a[(cycle[t], cycle[(t + 1) % cycle.len()])]
    })
}

fn reversed_keeping_first(c: &[usize]) -> Vec<usize> {
    let mut out = vec![c[0]];
    out.extend(c[1..].iter().rev());
    out
}

fn cycle_rotation_identity(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(r);
    let len = r.gen_range(2..=n);
    let cycle = &nodes[..len];
    let pos = r.gen_range(0..len);
    let mut rotated = cycle[pos..].to_vec();
    rotated.extend_from_slice(&cycle[..pos]);
    let lhs = path_product(&a, cycle) + path_product(&a, &reversed_keeping_first(cycle));
    let rhs = path_product(&a, &rotated) + path_product(&a, &reversed_keeping_first(&rotated));
    Ok(dq_rel_err(lhs, rhs))
}

fn chen_switch_congruence(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let (i, j) = distinct_pair(n, r);
    let b = a.congruence(&elementary(Elementary::Switch(i, j), n)?)?;
    Ok(dq_rel_err(value(chen_det(&b)?), value(chen_det(&a)?)))
}

fn chen_scale(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let alpha = dq(r);
    let base = value(chen_det(&a)?);
    let pn = elementary(Elementary::Scale(n, alpha), n)?;
    let left = dq_rel_err(value(chen_det(&(&pn * &a))?), alpha * base);
    let right = dq_rel_err(value(chen_det(&(&a * &pn))?), alpha * base);
    let i = r.gen_range(1..=n);
    let pi = elementary(Elementary::Scale(i, alpha), n)?;
    let cong = dq_rel_err(
        value(chen_det(&a.congruence(&pi)?)?),
        alpha.conj() * alpha * base,
    );
    Ok(left.max(right).max(cong))
}

/// Absolute size of a Chen determinant scaled by the entry magnitude.
fn det_scale(a: &DQMatrix) -> f64 {
    a.max_abs().max(1.0).powi(a.n_rows() as i32)
}

fn chen_replaced_row_zero(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let k = r.gen_range(0..n - 1);
    let alpha = dq(r);
    let row: Vec<DualQuaternion> = a.row(k).into_iter().map(|x| alpha * x).collect();
    let b = replace_line(&a, Line::Row(n), &row)?;
    Ok(value(chen_det(&b)?).max_abs() / det_scale(&b))
}

fn chen_replaced_column_zero(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let k = r.gen_range(0..n - 1);
    let alpha = dq(r);
    let col: Vec<DualQuaternion> = a.col(k).into_iter().map(|x| x * alpha).collect();
    let b = replace_line(&a, Line::Column(n), &col)?;
    Ok(value(chen_det(&b)?).max_abs() / det_scale(&b))
}

fn chen_addition_congruence(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let (i, j) = distinct_pair(n, r);
    let b = a.congruence(&elementary(Elementary::Add(i, j, dq(r)), n)?)?;
    Ok(dq_rel_err(value(chen_det(&b)?), value(chen_det(&a)?)))
}

fn unitary_reduction(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let u = random_unitary_with(n, r)?;
    let red = unitary_to_diagonal(&u)?;
    let prod = dual_rel_err(red.product_magnitude(), DualNumber::ONE);
    let diag = red.apply(&u)?.max_abs_diff(&DQMatrix::diag(&red.diagonal));
    let f = lu_partial_pivot(&u)?;
    let residual = (&f.p * &u).max_abs_diff(&(&f.l * &f.u));
    if residual >= 1e-9 {
        return Err(Error::Convergence(format!("LU residual {residual:e}")));
    }
    Ok(prod.max(diag))
}

fn unitary_invariance(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let u = random_unitary_with(n, r)?;
    let b = a.congruence(&u)?;
    Ok(dq_rel_err(value(chen_det(&b)?), value(chen_det(&a)?)))
}

fn eigenvalue_product(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let prod = hermitian_eig(&a, false)?.product().to_dq();
    let m = value(moore_det(&a)?);
    let c = value(chen_det(&a)?);
    let ata = &a.adjoint() * &a;
    let square = dq_rel_err(value(chen_det(&ata)?), c * c);
    Ok(dq_rel_err(prod, m).max(dq_rel_err(prod, c)).max(square))
}

fn all_definitions(n: usize) -> Vec<DetDefinition> {
    let mut defs = vec![DetDefinition::Moore, DetDefinition::Chen];
    for k in 1..=n {
        defs.push(DetDefinition::Dyson(k));
        defs.push(DetDefinition::KyrcheiRow(k));
        defs.push(DetDefinition::KyrcheiColumn(k));
    }
    defs
}

fn cross_definition_equality(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let values = all_definitions(n)
        .into_iter()
        .map(|d| determinant(&a, d, n).map(value))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0_f64;
    for (i, x) in values.iter().enumerate() {
        for y in &values[i + 1..] {
            worst = worst.max(dq_rel_err(*x, *y));
        }
    }
    Ok(worst)
}

fn hermitian_determinants_real(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let scale = det_scale(&a);
    let mut worst = 0.0_f64;
    for d in all_definitions(n) {
        worst = worst.max(determinant(&a, d, n)?.value.imag_max_abs() / scale);
    }
    Ok(worst)
}

/// `U diag(λ) U*` for a random unitary `U`.
fn with_spectrum(lambda: &[DualNumber], r: &mut ChaCha8Rng) -> Result<DQMatrix> {
    let u = random_unitary_with(lambda.len(), r)?;
    let d = DQMatrix::diag(&lambda.iter().map(|l| l.to_dq()).collect::<Vec<_>>());
    Ok(&(&u * &d) * &u.adjoint())
}

fn well_separated(n: usize, r: &mut ChaCha8Rng) -> Vec<DualNumber> {
    // standard parts at least 0.5 apart and away from zero
    (0..n)
        .map(|i| {
            let s = (i as f64 + 1.0) * if i % 2 == 0 { 1.0 } else { -1.0 };
            DualNumber::new(s + r.gen_range(-0.2..0.2), r.gen_range(-1.0..1.0))
        })
        .collect()
}

fn singularity_criterion(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let mut lambda = well_separated(n, r);
    let expect_zero = match r.gen_range(0..3) {
        0 => {
            lambda[0] = DualNumber::ZERO;
            true
        }
        1 => {
            lambda[0] = DualNumber::new(0.0, r.gen_range(0.5..1.5));
            lambda[1] = DualNumber::new(0.0, -r.gen_range(0.5..1.5));
            true
        }
        _ => {
            lambda[0] = DualNumber::new(0.0, r.gen_range(0.5..1.5));
            false
        }
    };
    let report = singularity_classify(&with_spectrum(&lambda, r)?)?;
    Ok(bool_gap(
        report.consistent && report.mdet_is_zero == expect_zero,
    ))
}

fn spectrum_gap(a: &[DualNumber], b: &[DualNumber]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| dual_rel_err(*x, *y))
        .fold(0.0, f64::max)
}

fn unitary_spectrum_invariance(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let u = random_unitary_with(n, r)?;
    let e1 = hermitian_eig(&a, false)?.eigenvalues;
    let e2 = hermitian_eig(&a.congruence(&u)?, false)?.eigenvalues;
    Ok(spectrum_gap(&e1, &e2))
}

fn shifted(a: &DQMatrix, x: DualNumber) -> DQMatrix {
    &DQMatrix::identity(a.n_rows()).scale(x) - a
}

fn charpoly_matches_mdet(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let n = n.min(4);
    let a = herm(n, r);
    let p = char_poly(&a)?;
    let mut worst = 0.0_f64;
    for _ in 0..=n {
        let x = DualNumber::real(r.gen_range(-3.0..3.0));
        let direct = moore_det(&shifted(&a, x))?.value;
        worst = worst.max(dq_rel_err(p.eval(x).to_dq(), direct));
    }
    Ok(worst)
}

fn charpoly_simple_roots(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = with_spectrum(&well_separated(n, r), r)?;
    let spectrum = hermitian_eig(&a, false)?;
    let mut roots = Vec::new();
    for root in char_poly(&a)?.roots()? {
        match root {
            DualRoot::Simple { root } => roots.push(root),
            DualRoot::Repeated { .. } => return Ok(1.0),
        }
    }
    roots.sort_by(|x, y| dual_compare(*y, *x));
    if roots.len() != n {
        return Ok(1.0);
    }
    Ok(spectrum_gap(&roots, &spectrum.eigenvalues))
}

fn charpoly_extra_root(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let mut lambda = well_separated(n, r);
    let d = r.gen_range(0.5..1.5);
    lambda[1] = DualNumber::new(lambda[0].s, lambda[0].d + d);
    let a = with_spectrum(&lambda, r)?;
    let spectrum = hermitian_eig(&a, false)?;
    let p = char_poly(&a)?;
    let repeated = p.roots()?.into_iter().find_map(|root| match root {
        DualRoot::Repeated {
            standard,
            any_dual_part: true,
            ..
        } => Some(standard),
        _ => None,
    });
    let Some(recovered) = repeated else {
        return Ok(1.0);
    };
    // a double root recovered from coefficients is only good to about
    // sqrt(machine epsilon); the candidate uses the eigenvalue's standard part
    let Some(cluster) = spectrum.clusters.iter().find(|c| c.len() > 1) else {
        return Ok(1.0);
    };
    let s = spectrum.eigenvalues[cluster[0]].s;
    if (recovered - s).abs() > 1e-6 * s.abs().max(1.0) {
        return Ok(1.0);
    }
    // a dual part far from every eigenvalue's
    let far = spectrum
        .eigenvalues
        .iter()
        .map(|l| l.d.abs())
        .fold(0.0, f64::max)
        + 10.0;
    let candidate = DualNumber::new(s, far);
    let not_eigenvalue = spectrum
        .eigenvalues
        .iter()
        .all(|l| dual_rel_err(*l, candidate) > 1e-3);
    let residual = p.eval(candidate);
    Ok(if not_eigenvalue {
        residual.s.abs().max(residual.d.abs()) / far
    } else {
        1.0
    })
}

fn quasi_charpoly(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let spectrum = hermitian_eig(&a, false)?;
    let p = char_poly(&a)?;
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let x = DualNumber::new(r.gen_range(-3.0..3.0), r.gen_range(-1.0..1.0));
        let product = spectrum.eigenvalues.iter().fold(DualNumber::ONE, |acc, l| {
            let m = (x - *l).abs();
            acc * m * m
        });
        worst = worst.max(dual_rel_err(quasi_char_poly_eval(&p, x), product));
    }
    Ok(worst)
}

fn quasi_det_consistency(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let q = quasi_det(&a)?;
    let prod = hermitian_eig(&a, false)?.product();
    let p = char_poly(&a)?;
    let at_zero = quasi_char_poly_eval(&p, DualNumber::ZERO);
    Ok(dual_rel_err(q, prod * prod).max(dual_rel_err(q, at_zero)))
}

fn mdet_finite_difference(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    const ETA: f64 = 1e-6;
    let a = herm(n, r);
    let e = herm(n, r).scale(DualNumber::real(ETA));
    let b = &a + &e;
    let dm = moore_det(&b)?.value - moore_det(&a)?.value;
    let dl = hermitian_eig(&b, false)?.product() - hermitian_eig(&a, false)?.product();
    let gap = (dm - dl.to_dq()).max_abs();
    Ok(gap / moore_det(&a)?.value.max_abs().max(1.0))
}

fn oracle_brute_agreement(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let n = n.min(BRUTE_CAP).min(5);
    let a = herm(n, r);
    let moore = brute_det(&a, BruteDef::Moore)?;
    let mut worst = dq_rel_err(moore, value(moore_det(&a)?));
    worst = worst.max(dq_rel_err(
        brute_det(&a, BruteDef::Chen)?,
        value(chen_det(&a)?),
    ));
    for k in 1..=n {
        worst = worst.max(dq_rel_err(moore, value(moore_det_dyson(&a, k)?)));
        worst = worst.max(dq_rel_err(
            brute_det(&a, BruteDef::KyrcheiRow(k))?,
            value(kyrchei_det(&a, KyrcheiMode::Row, k)?),
        ));
        worst = worst.max(dq_rel_err(
            brute_det(&a, BruteDef::KyrcheiColumn(k))?,
            value(kyrchei_det(&a, KyrcheiMode::Column, k)?),
        ));
    }
    Ok(worst)
}

fn oracle_spectrum_agreement(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let a = herm(n, r);
    let (oracle, pairing) = standard_spectrum(&a)?;
    let ours = hermitian_eig(&a, false)?.eigenvalues;
    let gap = ours
        .iter()
        .zip(&oracle)
        .map(|(l, o)| (l.s - o).abs() / o.abs().max(1.0))
        .fold(0.0, f64::max);
    Ok(gap.max(pairing))
}

fn classical_reduction(n: usize, r: &mut ChaCha8Rng) -> Result<f64> {
    let n = n.min(6);
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = random_quaternion(r, 1.0).w;
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    let a = DQMatrix::from_fn(n, n, |i, j| DualQuaternion::real(m[i][j]));
    let expected = cofactor_det(&m);
    let got = moore_det(&a)?.value;
    Ok(dq_rel_err(got, DualQuaternion::real(expected)))
}
