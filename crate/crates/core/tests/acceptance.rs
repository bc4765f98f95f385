//! Acceptance suite. Runs every criterion in order, prints one pass/fail line
//! each and exits nonzero if any fails. Criterion 5 aggregates the traces
//! produced while running criteria 1 through 4, which is why this target
//! uses its own harness instead of independent `#[test]` functions.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use adicclean::engine::{decompose_traced, Trace};
use adicclean::lifting::{hensel_lift_traced, random_approximate_idempotent};
use adicclean::oracle::{minimal_pi_regular_degree, PiCleanOracle, DEFAULT_BUDGET};
use adicclean::regularity::{spectral_idempotent, spectral_idempotent_matrix};
use adicclean::{verify_certificate, AdicRing, CompleteRingSpec, EndoTag, FiniteRing, FiniteRingSpec};

type Outcome = Result<String, String>;

fn adic(spec: CompleteRingSpec) -> AdicRing {
    AdicRing::new(spec).expect("valid ring spec")
}

fn skew_m2f2() -> AdicRing {
    adic(CompleteRingSpec::skew_series(
        FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 2),
        EndoTag::Identity,
        8,
    ))
}

fn skew_dual2() -> AdicRing {
    adic(CompleteRingSpec::skew_series(
        FiniteRingSpec::dual(2),
        EndoTag::DualProjection,
        8,
    ))
}

/// Decomposes `count` random elements, verifying each certificate.
fn certify_random(ring: &AdicRing, count: usize, seed: u64, trace: &mut Trace) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..count {
        let x = ring.random(&mut rng);
        let (cert, t) = decompose_traced(&x).map_err(|e| format!("sample {i}: decompose({x}) failed: {e}"))?;
        trace.merge(&t);
        let verdict = verify_certificate(&cert);
        if !verdict.passed() {
            return Err(format!(
                "sample {i}: certificate for {x} fails {:?}",
                verdict.violations
            ));
        }
    }
    Ok(())
}

fn criterion_1(trace: &mut Trace) -> Outcome {
    let start = Instant::now();
    certify_random(&adic(CompleteRingSpec::padic_matrix(2, 2, 8)), 500, 1, trace)?;
    certify_random(&adic(CompleteRingSpec::padic_matrix(3, 3, 5)), 500, 2, trace)?;
    let secs = start.elapsed().as_secs_f64();
    if secs >= 30.0 {
        return Err(format!("1000 certificates verified but took {secs:.1}s (limit 30s)"));
    }
    Ok(format!("1000/1000 certificates verified in {secs:.2}s"))
}

/// Checks every element of `ring` against the oracle; returns the number of
/// elements with more than one valid idempotent.
fn exhaustive_oracle(ring: &AdicRing, trace: &mut Trace) -> Result<(u128, usize), String> {
    let oracle = PiCleanOracle::new(ring, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let size = ring.cardinality().expect("finite");
    let mut several = 0usize;
    for i in 0..size {
        let x = ring.element_at(i);
        let (cert, t) = decompose_traced(&x).map_err(|e| format!("decompose({x}) failed: {e}"))?;
        trace.merge(&t);
        let valid = oracle.classify(&x).map_err(|e| e.to_string())?;
        match valid.iter().find(|(e, _)| *e == cert.e) {
            Some((_, n)) if *n == cert.n => {}
            Some((_, n)) => return Err(format!("{x}: engine degree {} but oracle minimum {n}", cert.n)),
            None => return Err(format!("{x}: engine idempotent {} not among oracle witnesses", cert.e)),
        }
        if valid.len() > 1 {
            several += 1;
        }
    }
    Ok((size, several))
}

// M_2(Z/4) has 4^4 = 256 elements; the 65536-element ring of the same shape
// is M_2(Z/2^4), so both are scanned.
fn criterion_2(trace: &mut Trace) -> Outcome {
    let (small, s1) = exhaustive_oracle(&adic(CompleteRingSpec::padic_matrix(2, 2, 2)), trace)?;
    let (large, s2) = exhaustive_oracle(&adic(CompleteRingSpec::padic_matrix(2, 2, 4)), trace)?;
    Ok(format!(
        "M2(Z/4): {small}/{small} match, M2(Z/16): {large}/{large} match; {} admit more than one idempotent",
        s1 + s2
    ))
}

fn criterion_3(trace: &mut Trace) -> Outcome {
    certify_random(&skew_m2f2(), 500, 3, trace)?;
    certify_random(&skew_dual2(), 200, 4, trace)?;
    Ok("700/700 skew-series certificates verified".into())
}

fn criterion_4(trace: &mut Trace) -> Outcome {
    let ring = adic(CompleteRingSpec::padic_matrix(3, 2, 6));
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let x = ring.random(&mut rng);
        let (top, t) = decompose_traced(&x).map_err(|e| e.to_string())?;
        trace.merge(&t);
        for m in 1..=6 {
            let xm = x.truncate(m).map_err(|e| e.to_string())?;
            let (low, t) = decompose_traced(&xm).map_err(|e| e.to_string())?;
            trace.merge(&t);
            let cut = top.truncate(m).map_err(|e| e.to_string())?;
            if (&cut.e, &cut.u_inv, cut.n) != (&low.e, &low.u_inv, low.n) {
                return Err(format!("{x} at m = {m}: truncated {:?} vs direct {:?}", cut.e, low.e));
            }
        }
    }
    Ok("100 elements consistent at m = 1..6".into())
}

fn criterion_5(trace: &Trace) -> Outcome {
    if !trace.invariant_failures.is_empty() {
        return Err(format!(
            "{} failures, first: {}",
            trace.invariant_failures.len(),
            trace.invariant_failures[0]
        ));
    }
    if trace.sylvester_checks == 0 || trace.invariant_checks == 0 {
        return Err("no checks were recorded".into());
    }
    Ok(format!(
        "{} Sylvester post-checks and {} invariant checks over {} refinements, 0 failures",
        trace.sylvester_checks, trace.invariant_checks, trace.refinements
    ))
}

fn criterion_6() -> Outcome {
    let rings = [
        adic(CompleteRingSpec::padic_matrix(2, 2, 8)),
        adic(CompleteRingSpec::padic_matrix(3, 3, 5)),
        skew_m2f2(),
        skew_dual2(),
    ];
    let mut rng = StdRng::seed_from_u64(6);
    let mut steps = 0usize;
    for ring in &rings {
        let cap = ring.precision();
        for _ in 0..100 {
            let a = random_approximate_idempotent(ring, &mut rng).map_err(|e| e.to_string())?;
            let (e, defects) = hensel_lift_traced(&a).map_err(|e| format!("{a}: {e}"))?;
            if !e.is_idempotent() || e.residue() != a.residue() {
                return Err(format!("{a}: lift {e} is not an idempotent over the same residue"));
            }
            for w in defects.windows(2) {
                steps += 1;
                if w[1] < (2 * w[0]).min(cap) {
                    return Err(format!("{a}: defect valuations {defects:?}"));
                }
            }
        }
    }
    Ok(format!("400 lifts, {steps} iterations, every one at least doubling"))
}

fn criterion_7() -> Outcome {
    let mut compared = 0usize;
    for p in [2, 3] {
        let r = FiniteRing::new(FiniteRingSpec::matrix(FiniteRingSpec::zmod(p), 2)).map_err(|e| e.to_string())?;
        for x in r.elements() {
            let a = spectral_idempotent(&x).map_err(|e| e.to_string())?;
            let b = spectral_idempotent_matrix(&x).map_err(|e| e.to_string())?;
            if a.z != b.z || a.n != b.n {
                return Err(format!("M2(F{p}) at {x}: ({}, {}) vs ({}, {})", a.z, a.n, b.z, b.n));
            }
            compared += 1;
        }
    }
    for m in [8, 9, 27] {
        let r = FiniteRing::new(FiniteRingSpec::zmod(m)).map_err(|e| e.to_string())?;
        for x in r.elements() {
            let n = spectral_idempotent(&x).map_err(|e| e.to_string())?.n;
            let brute = minimal_pi_regular_degree(&x, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            if n != brute {
                return Err(format!("Z/{m} at {x}: spectral {n}, brute force {brute}"));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} elements agree"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn cli(args: &[&str]) -> Result<(i32, String, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_adicclean"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run adicclean: {e}"))?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    ))
}

/// Rewrites the certificate so that exactly one defining identity breaks and
/// returns the violation the verifier must name.
fn tamper(cert: &mut serde_json::Value) -> &'static str {
    let kind = cert["ring"]["kind"].as_str().unwrap_or_default().to_string();
    if kind == "padic_matrix" {
        // e + p·1 is never idempotent once the precision exceeds 1
        let p = cert["ring"]["p"].as_u64().unwrap();
        let modulus = p.pow(cert["ring"]["precision"].as_u64().unwrap() as u32);
        let e = cert["e"].as_array_mut().unwrap();
        for (i, row) in e.iter_mut().enumerate() {
            let entry = &mut row.as_array_mut().unwrap()[i];
            *entry = ((entry.as_u64().unwrap() + p) % modulus).into();
        }
        "NotIdempotent"
    } else {
        // u_inv + t: (x - e)(u_inv + t) = 1 + (x - e)t, and (x - e)t ≠ 0
        let coeffs = cert["u_inv"].as_array_mut().unwrap();
        let c1 = &mut coeffs[1];
        *c1 = match c1.clone() {
            serde_json::Value::Array(rows) if rows.first().is_some_and(|r| r.is_array()) => {
                let k = rows.len();
                serde_json::Value::Array(
                    rows.iter()
                        .enumerate()
                        .map(|(i, row)| {
                            let row = row.as_array().unwrap();
                            (0..k)
                                .map(|j| {
                                    let v = row[j].as_u64().unwrap();
                                    if i == j {
                                        (v + 1) % 2
                                    } else {
                                        v
                                    }
                                })
                                .collect::<Vec<_>>()
                                .into()
                        })
                        .collect(),
                )
            }
            serde_json::Value::Array(pair) => {
                serde_json::json!([(pair[0].as_u64().unwrap() + 1) % 2, pair[1]])
            }
            other => other,
        };
        "NotUnit"
    }
}

fn criterion_8() -> Outcome {
    let dir = fixtures();
    let index: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(dir.join("index.json")).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    if index.len() != 20 {
        return Err(format!("expected 20 fixtures, found {}", index.len()));
    }
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, case) in index.iter().enumerate() {
        let ring = dir.join(case["ring"].as_str().unwrap());
        let element = dir.join(case["element"].as_str().unwrap());
        let cert = work.path().join(format!("cert_{i:02}.json"));
        let args = [
            "decompose",
            "--ring",
            ring.to_str().unwrap(),
            "--element",
            element.to_str().unwrap(),
            "--out",
            cert.to_str().unwrap(),
        ];
        let (code, _, err) = cli(&args)?;
        if code != 0 {
            return Err(format!("fixture {i}: decompose exited {code}: {err}"));
        }
        let (code, out, err) = cli(&["verify", "--cert", cert.to_str().unwrap()])?;
        if code != 0 || out.trim() != "pass" {
            return Err(format!("fixture {i}: verify exited {code}: {out}{err}"));
        }
        let mut doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&cert).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let expected = tamper(&mut doc);
        let bad = work.path().join(format!("tampered_{i:02}.json"));
        fs::write(&bad, doc.to_string()).map_err(|e| e.to_string())?;
        let (code, out, err) = cli(&["verify", "--cert", bad.to_str().unwrap()])?;
        if code != 2 || !out.lines().any(|l| l.trim() == expected) {
            return Err(format!(
                "fixture {i}: tampered verify exited {code}, wanted {expected}: {out}{err}"
            ));
        }
    }
    Ok("20 fixtures round-trip; 20 tampered certificates rejected with exit 2".into())
}

fn main() -> ExitCode {
    let mut trace = Trace::default();
    // evaluated in order: criterion 5 reads the traces of 1 to 4
    let results = [
        (1, criterion_1(&mut trace)),
        (2, criterion_2(&mut trace)),
        (3, criterion_3(&mut trace)),
        (4, criterion_4(&mut trace)),
        (5, criterion_5(&trace)),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
    ];
    let mut failed = 0;
    for (id, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL ({why})");
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
