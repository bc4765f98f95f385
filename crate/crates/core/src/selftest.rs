//! A compact run of the library's invariants, exposed as `adicclean selftest`.

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::adic::{AdicRing, CompleteRingSpec};
use crate::engine::{decompose_traced, verify_certificate, Violation};
use crate::finite::{EndoTag, FiniteRing, FiniteRingSpec};
use crate::lifting::{hensel_lift_traced, random_approximate_idempotent};
use crate::oracle::{minimal_pi_regular_degree, PiCleanOracle, DEFAULT_BUDGET};
use crate::regularity::{spectral_idempotent, spectral_idempotent_matrix};

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

type Outcome = Result<(), String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(spec: FiniteRingSpec) -> Result<FiniteRing, String> {
    FiniteRing::new(spec).map_err(|e| e.to_string())
}

fn adic(spec: CompleteRingSpec) -> Result<AdicRing, String> {
    AdicRing::new(spec).map_err(|e| e.to_string())
}

fn ring_axioms() -> Outcome {
    for spec in [
        FiniteRingSpec::zmod(6),
        FiniteRingSpec::dual(3),
        FiniteRingSpec::triangular2(FiniteRingSpec::zmod(2)),
        FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 2),
    ] {
        let r = ring(spec)?;
        let elems: Vec<_> = r.elements().collect();
        let one = r.one();
        for a in &elems {
            ensure(&(a * &one) == a && &(&one * a) == a, || {
                format!("unit law fails at {a}")
            })?;
            for b in &elems {
                for c in &elems {
                    ensure((&(a * b) * c) == (a * &(b * c)), || {
                        format!("associativity fails at {a},{b},{c}")
                    })?;
                    ensure((a * &(b + c)) == (&(a * b) + &(a * c)), || {
                        format!("distributivity fails at {a},{b},{c}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn spectral_cross_check() -> Outcome {
    for p in [2, 3] {
        let r = ring(FiniteRingSpec::matrix(FiniteRingSpec::zmod(p), 2))?;
        for x in r.elements() {
            let a = spectral_idempotent(&x).map_err(|e| e.to_string())?;
            let b = spectral_idempotent_matrix(&x).map_err(|e| e.to_string())?;
            ensure(a.z == b.z && a.n == b.n, || format!("paths disagree at {x}"))?;
        }
    }
    Ok(())
}

fn degree_reconciliation() -> Outcome {
    for m in [8, 9, 27] {
        let r = ring(FiniteRingSpec::zmod(m))?;
        for x in r.elements() {
            let n = spectral_idempotent(&x).map_err(|e| e.to_string())?.n;
            let brute = minimal_pi_regular_degree(&x, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(n == brute, || format!("degree {n} vs {brute} at {x} in Z/{m}"))?;
        }
    }
    Ok(())
}

fn test_rings() -> Result<Vec<AdicRing>, String> {
    Ok(vec![
        adic(CompleteRingSpec::padic_matrix(2, 2, 8))?,
        adic(CompleteRingSpec::padic_matrix(3, 3, 5))?,
        adic(CompleteRingSpec::skew_series(
            FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 2),
            EndoTag::Identity,
            8,
        ))?,
        adic(CompleteRingSpec::skew_series(
            FiniteRingSpec::dual(2),
            EndoTag::DualProjection,
            8,
        ))?,
    ])
}

fn random_certificates() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5e1f);
    for r in test_rings()? {
        for _ in 0..25 {
            let x = r.random(&mut rng);
            let (cert, trace) = decompose_traced(&x).map_err(|e| format!("{x}: {e}"))?;
            ensure(verify_certificate(&cert).passed(), || {
                format!("certificate for {x} fails")
            })?;
            ensure(trace.invariant_failures.is_empty(), || {
                format!("{:?}", trace.invariant_failures)
            })?;
        }
    }
    Ok(())
}

fn hensel_doubling() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x4e75);
    for r in test_rings()? {
        let cap = r.precision();
        for _ in 0..25 {
            let a = random_approximate_idempotent(&r, &mut rng).map_err(|e| e.to_string())?;
            let (_, trace) = hensel_lift_traced(&a).map_err(|e| e.to_string())?;
            for w in trace.windows(2) {
                ensure(w[1] >= (2 * w[0]).min(cap), || format!("defects {trace:?} for {a}"))?;
            }
        }
    }
    Ok(())
}

fn oracle_agreement() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x0c1e);
    let r = adic(CompleteRingSpec::padic_matrix(2, 2, 2))?;
    let oracle = PiCleanOracle::new(&r, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    for _ in 0..300 {
        let x = r.random(&mut rng);
        let cert = crate::engine::decompose(&x).map_err(|e| e.to_string())?;
        let valid = oracle.classify(&x).map_err(|e| e.to_string())?;
        ensure(valid.contains(&(cert.e.clone(), cert.n)), || {
            format!("engine result for {x} not found by oracle")
        })?;
    }
    Ok(())
}

fn tamper_detection() -> Outcome {
    let r = adic(CompleteRingSpec::padic_matrix(2, 2, 4))?;
    let x = r.matrix(&[&[2, 1], &[0, 1]]).map_err(|e| e.to_string())?;
    let mut cert = crate::engine::decompose(&x).map_err(|e| e.to_string())?;
    cert.e = &cert.e + &r.from_int(2);
    ensure(
        verify_certificate(&cert).violations.contains(&Violation::NotIdempotent),
        || "tampered idempotent accepted".into(),
    )
}

pub fn run_all() -> Vec<CheckResult> {
    let checks: [Check; 7] = [
        ("ring axioms on small rings", ring_axioms),
        ("spectral paths agree on M2(F2), M2(F3)", spectral_cross_check),
        (
            "spectral degree matches brute force on Z/8, Z/9, Z/27",
            degree_reconciliation,
        ),
        ("random certificates verify", random_certificates),
        ("Hensel defect doubles", hensel_doubling),
        ("engine agrees with oracle on M2(Z/4)", oracle_agreement),
        ("tampered certificate rejected", tamper_detection),
    ];
    checks
        .iter()
        .map(|(name, f)| CheckResult { name, outcome: f() })
        .collect()
}
