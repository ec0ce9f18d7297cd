//! Acceptance suite: nine criteria, one PASS/FAIL line each. Runs without
//! the test harness so the lines always reach the terminal.

use std::process::ExitCode;
use std::time::Instant;

use dqdet::decomposition::{
    char_poly, hermitian_eig, lu_partial_pivot, quasi_char_poly_eval, singularity_classify,
    unitary_to_diagonal, DualRoot,
};
use dqdet::determinant::{chen_det, determinant, moore_det, DetDefinition};
use dqdet::matrix::{random_hermitian, random_unitary, rng, DQMatrix};
use dqdet::oracle::{brute_det, cofactor_det, standard_spectrum, BruteDef};
use dqdet::scalar::{dq_rel_err, dual_compare, dual_rel_err};
use dqdet::verify::run_verify;
use dqdet::{DualNumber, DualQuaternion};
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

/// Seeds of the shared Hermitian corpus: 200 matrices per size.
fn corpus(n: usize) -> impl Iterator<Item = DQMatrix> {
    (0..200).map(move |t| random_hermitian(n, 10_000 * n as u64 + t, 1.0))
}

fn definitions(n: usize) -> Vec<DetDefinition> {
    let mut defs = vec![DetDefinition::Moore, DetDefinition::Chen];
    for k in 1..=n {
        defs.extend([
            DetDefinition::Dyson(k),
            DetDefinition::KyrcheiRow(k),
            DetDefinition::KyrcheiColumn(k),
        ]);
    }
    defs
}

fn value(a: &DQMatrix, def: DetDefinition) -> DualQuaternion {
    determinant(a, def, 8).expect("determinant").value
}

fn cross_definition_equality() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut count = 0;
    for n in 2..=5 {
        for a in corpus(n) {
            let values: Vec<_> = definitions(n).into_iter().map(|d| value(&a, d)).collect();
            for (i, x) in values.iter().enumerate() {
                for y in &values[i + 1..] {
                    worst = worst.max(dq_rel_err(*x, *y));
                }
            }
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-9 && secs < 60.0,
        format!(
            "{count} matrices, max pairwise rel {worst:.2e} (tol 1e-9), {secs:.2}s (limit 60s)"
        ),
    )
}

fn eigenvalue_product() -> Outcome {
    let mut worst_prod = 0.0_f64;
    let mut worst_square = 0.0_f64;
    for n in 2..=5 {
        for a in corpus(n) {
            let prod = hermitian_eig(&a, false).expect("eig").product().to_dq();
            worst_prod = worst_prod.max(dq_rel_err(prod, moore_det(&a).expect("mdet").value));
            let c = chen_det(&a).expect("cdet").value;
            let ata = &a.adjoint() * &a;
            worst_square = worst_square.max(dq_rel_err(chen_det(&ata).expect("cdet").value, c * c));
        }
    }
    outcome(
        worst_prod <= 1e-8 && worst_square <= 1e-8,
        format!("prod(lambda) vs Mdet {worst_prod:.2e}, Cdet(A*A) vs Cdet(A)^2 {worst_square:.2e} (tol 1e-8)"),
    )
}

fn chen_identities() -> Outcome {
    let ids = [
        "cycle-rotation-identity",
        "chen-switch-congruence",
        "chen-scale",
        "chen-replaced-row-zero",
        "chen-replaced-column-zero",
        "chen-addition-congruence",
    ];
    let mut parts = Vec::new();
    let mut passed = true;
    for id in ids {
        let report = run_verify(4, 100, 20_240_601, Some(id), 8).expect("verify");
        let rec = &report.properties[0];
        passed &= report.pass && rec.trials == 100;
        parts.push(format!(
            "{id} {}/100 max {:.1e}",
            100 - rec.failures,
            rec.max_discrepancy
        ));
    }
    outcome(passed, parts.join("; "))
}

fn unitary_invariance() -> Outcome {
    let mut worst = 0.0_f64;
    for n in 2..=4 {
        for t in 0..100 {
            let seed = 20_000 * n as u64 + t;
            let a = random_hermitian(n, seed, 1.0);
            let u = random_unitary(n, seed + 7).expect("unitary");
            let b = a.congruence(&u).expect("congruence");
            worst = worst.max(dq_rel_err(
                chen_det(&b).expect("cdet").value,
                chen_det(&a).expect("cdet").value,
            ));
        }
    }
    outcome(
        worst <= 1e-8,
        format!("300 pairs, max rel {worst:.2e} (tol 1e-8)"),
    )
}

fn unitary_reduction() -> Outcome {
    let mut worst_prod = 0.0_f64;
    let mut worst_lu = 0.0_f64;
    let mut worst_diag = 0.0_f64;
    for n in 2..=4 {
        for t in 0..100 {
            let u = random_unitary(n, 30_000 * n as u64 + t).expect("unitary");
            let r = unitary_to_diagonal(&u).expect("reduction");
            worst_prod = worst_prod.max(dual_rel_err(r.product_magnitude(), DualNumber::ONE));
            worst_diag = worst_diag.max(
                r.apply(&u)
                    .expect("apply")
                    .max_abs_diff(&DQMatrix::diag(&r.diagonal)),
            );
            let f = lu_partial_pivot(&u).expect("lu");
            worst_lu = worst_lu.max((&f.p * &u).max_abs_diff(&(&f.l * &f.u)));
        }
    }
    outcome(
        worst_prod <= 1e-8 && worst_lu < 1e-9,
        format!(
            "300 unitaries, | |d1..dn| - 1 | {worst_prod:.2e} (tol 1e-8), LU residual {worst_lu:.2e} (tol 1e-9), ops leave off-diagonal {worst_diag:.2e}"
        ),
    )
}

fn dn(s: f64, d: f64) -> DualQuaternion {
    DualNumber::new(s, d).to_dq()
}

fn singularity_criterion() -> Outcome {
    let mut consistent = 0;
    let mut total = 0;
    let families = [
        (DQMatrix::diag(&[dn(0.0, 1.0), dn(1.0, 0.0)]), false),
        (DQMatrix::diag(&[dn(0.0, 1.0), dn(0.0, 1.0)]), true),
        (DQMatrix::diag(&[dn(0.0, 0.0), dn(1.0, 1.0)]), true),
    ];
    for (a, zero) in &families {
        let r = singularity_classify(a).expect("classify");
        total += 1;
        if r.consistent && r.mdet_is_zero == *zero {
            consistent += 1;
        }
    }
    // U diag(0, λ₂, …) U*
    for t in 0..50u64 {
        let n = 2 + (t % 4) as usize;
        let mut g = rng(40_000 + t);
        let mut lambda = vec![DualQuaternion::ZERO];
        lambda.extend((1..n).map(|_| dn(g.gen_range(0.5..2.0), g.gen_range(-1.0..1.0))));
        let u = random_unitary(n, 40_500 + t).expect("unitary");
        let a = &(&u * &DQMatrix::diag(&lambda)) * &u.adjoint();
        let r = singularity_classify(&a).expect("classify");
        total += 1;
        if r.consistent && r.mdet_is_zero && r.zero_eigenvalue {
            consistent += 1;
        }
    }
    outcome(
        consistent == total,
        format!("{consistent}/{total} consistent (3 constructed families, 50 rank-deficient)"),
    )
}

fn characteristic_polynomial() -> Outcome {
    let mut worst_coeff = 0.0_f64;
    let mut worst_roots = 0.0_f64;
    let mut worst_quasi = 0.0_f64;
    let mut simple_cases = 0;
    for n in 1..=4 {
        for t in 0..50u64 {
            let a = random_hermitian(n, 50_000 * n as u64 + t, 1.0);
            let p = char_poly(&a).expect("charpoly");
            let spectrum = hermitian_eig(&a, false).expect("eig");
            let mut g = rng(51_000 * n as u64 + t);
            for _ in 0..=n {
                let x = DualNumber::real(g.gen_range(-3.0..3.0));
                let shifted = &DQMatrix::identity(n).scale(x) - &a;
                let direct = moore_det(&shifted).expect("mdet").value;
                worst_coeff = worst_coeff.max(dq_rel_err(p.eval(x).to_dq(), direct));
            }
            for _ in 0..10 {
                let x = DualNumber::new(g.gen_range(-3.0..3.0), g.gen_range(-1.0..1.0));
                let expected = spectrum.eigenvalues.iter().fold(DualNumber::ONE, |acc, l| {
                    let m = (x - *l).abs();
                    acc * m * m
                });
                let direct = p.eval(x).abs();
                worst_quasi = worst_quasi
                    .max(dual_rel_err(quasi_char_poly_eval(&p, x), expected))
                    .max(dual_rel_err(quasi_char_poly_eval(&p, x), direct * direct));
            }
            if !spectrum.has_repeated_standard_part() {
                simple_cases += 1;
                let mut roots: Vec<DualNumber> = p
                    .roots()
                    .expect("roots")
                    .into_iter()
                    .filter_map(|r| match r {
                        DualRoot::Simple { root } => Some(root),
                        DualRoot::Repeated { .. } => None,
                    })
                    .collect();
                roots.sort_by(|x, y| dual_compare(*y, *x));
                let gap = if roots.len() == n {
                    roots
                        .iter()
                        .zip(&spectrum.eigenvalues)
                        .map(|(r, l)| dual_rel_err(*r, *l))
                        .fold(0.0, f64::max)
                } else {
                    f64::INFINITY
                };
                worst_roots = worst_roots.max(gap);
            }
        }
    }

    // a double standard eigenvalue 1 with dual parts ±1 under a unitary
    let u = random_unitary(3, 52_000).expect("unitary");
    let d = DQMatrix::diag(&[dn(1.0, 1.0), dn(1.0, -1.0), dn(-2.0, 0.5)]);
    let a = &(&u * &d) * &u.adjoint();
    let p = char_poly(&a).expect("charpoly");
    let spectrum = hermitian_eig(&a, false).expect("eig");
    let repeated = p.roots().expect("roots").into_iter().any(|r| {
        matches!(
            r,
            DualRoot::Repeated {
                multiplicity: 2,
                any_dual_part: true,
                ..
            }
        )
    });
    let candidate = DualNumber::new(1.0, 7.0);
    let residual = p.eval(candidate);
    let extra_root = repeated
        && residual.s.abs().max(residual.d.abs()) <= 1e-8
        && spectrum
            .eigenvalues
            .iter()
            .all(|l| dual_rel_err(*l, candidate) > 1e-3);

    outcome(
        worst_coeff <= 1e-8 && worst_roots <= 1e-8 && worst_quasi <= 1e-8 && extra_root,
        format!(
            "p vs Mdet(xI-A) {worst_coeff:.2e}; roots vs eigenvalues {worst_roots:.2e} over {simple_cases} simple spectra; |p|^2 {worst_quasi:.2e} (tol 1e-8); 1+7e is a non-eigenvalue root: {extra_root}"
        ),
    )
}

fn oracle_agreement() -> Outcome {
    let mut worst_det = 0.0_f64;
    let mut worst_spec = 0.0_f64;
    let mut worst_pair = 0.0_f64;
    for n in 2..=5 {
        for a in corpus(n) {
            let moore = brute_det(&a, BruteDef::Moore).expect("brute");
            let checks = definitions(n).into_iter().map(|def| {
                let brute = match def {
                    DetDefinition::Chen => brute_det(&a, BruteDef::Chen),
                    DetDefinition::KyrcheiRow(k) => brute_det(&a, BruteDef::KyrcheiRow(k)),
                    DetDefinition::KyrcheiColumn(k) => brute_det(&a, BruteDef::KyrcheiColumn(k)),
                    _ => Ok(moore),
                }
                .expect("brute");
                dq_rel_err(brute, value(&a, def))
            });
            worst_det = checks.fold(worst_det, f64::max);
            let (oracle, pairing) = standard_spectrum(&a).expect("oracle");
            worst_pair = worst_pair.max(pairing);
            let ours = hermitian_eig(&a, false).expect("eig").eigenvalues;
            for (l, o) in ours.iter().zip(&oracle) {
                worst_spec = worst_spec.max((l.s - o).abs());
            }
        }
    }
    outcome(
        worst_det <= 1e-10 && worst_spec <= 1e-8 && worst_pair <= 1e-8,
        format!(
            "800 matrices, brute vs entry points {worst_det:.2e} (tol 1e-10), spectra {worst_spec:.2e}, adjoint pairing {worst_pair:.2e} (tol 1e-8)"
        ),
    )
}

fn classical_reduction() -> Outcome {
    let mut worst = 0.0_f64;
    for n in 1..=6 {
        for t in 0..50u64 {
            let mut g = rng(60_000 * n as u64 + t);
            let mut m = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in i..n {
                    let v = g.gen_range(-2.0..2.0);
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            let a = DQMatrix::from_fn(n, n, |i, j| DualQuaternion::real(m[i][j]));
            let got = moore_det(&a).expect("mdet").value;
            worst = worst.max(dq_rel_err(got, DualQuaternion::real(cofactor_det(&m))));
        }
    }
    outcome(
        worst <= 1e-9,
        format!("300 real symmetric matrices, n <= 6, max rel {worst:.2e} (tol 1e-9)"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cross-definition equality", cross_definition_equality),
        ("eigenvalue product", eigenvalue_product),
        ("chen identities", chen_identities),
        ("unitary invariance", unitary_invariance),
        ("unitary reduction", unitary_reduction),
        ("singularity criterion", singularity_criterion),
        ("characteristic polynomial", characteristic_polynomial),
        ("oracle agreement", oracle_agreement),
        ("classical reduction", classical_reduction),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {} {name}: {}", i + 1, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {}/9 passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
