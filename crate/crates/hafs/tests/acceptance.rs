//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use hafs_core::bridge::{verify, TheoremId, VerificationReport, VerifyOptions};
use hafs_core::equations::h_function;
use hafs_core::framework::{generate_random, RandomSpec};
use hafs_core::logic::Logic;
use hafs_core::value::ratio;
use hafs_core::Hafs;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SELF_SUPPORT: &str = "arg(a). supp(t1,a,a).";

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Deterministic frameworks with at most `max_u` elements; every third one
/// is generated support-acyclic.
fn corpus(count: usize, max_u: usize, salt: u64) -> Vec<Hafs> {
    (0..count)
        .map(|i| {
            let args = 1 + i % 4.min(max_u);
            let atts = ((i / 4) % 4).min(max_u - args);
            let mut supps = ((i / 16) % 4).min(max_u - args - atts);
            loop {
                let mut spec = RandomSpec::new(args, atts, supps, salt.wrapping_mul(1_000_003) + i as u64);
                spec.support_acyclic = i % 3 == 0;
                spec.higher_order_prob = 0.35;
                match generate_random(&spec) {
                    Ok(h) => return h,
                    Err(_) if supps > 0 => supps -= 1,
                    Err(e) => panic!("framework {i}: {e}"),
                }
            }
        })
        .collect()
}

/// Runs `theorem` on every framework; fails on the first error or failed
/// report.
fn check_all(frameworks: &[&Hafs], theorem: TheoremId, opts: &VerifyOptions) -> Result<usize, String> {
    let mut checked = 0;
    for h in frameworks {
        let report: VerificationReport =
            verify(h, theorem, opts).map_err(|e| format!("{theorem} on\n{h}: {e}"))?;
        if !report.passed {
            return Err(format!("{theorem} failed: {:?}", report.counterexample));
        }
        checked += report.checked;
    }
    Ok(checked)
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hafs"))
        .args(args)
        .env_remove("HAFS_MAX_U")
        .output()
        .expect("run hafs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> Result<T, String>) -> (Result<T, String>, Duration, bool) {
    let start = Instant::now();
    let r = f();
    let elapsed = start.elapsed();
    (r, elapsed, elapsed < limit)
}

fn criterion_1() -> Outcome {
    let (result, elapsed, in_time) = timed(Duration::from_secs(1), || {
        let (code, stdout) = run_cli(&["labellings", SELF_SUPPORT, "--semantics", "complete"]);
        if code != 0 {
            return Err(format!("exit status {code}"));
        }
        let json: Value = serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
        let got: BTreeSet<String> = json["labellings"]
            .as_array()
            .ok_or("no labellings array")?
            .iter()
            .map(|l| {
                format!(
                    "a={},t1={}",
                    l["arg:a"].as_str().unwrap_or("?"),
                    l["supp:t1"].as_str().unwrap_or("?")
                )
            })
            .collect();
        let want: BTreeSet<String> = ["a=1,t1=1", "a=0,t1=1", "a=1/2,t1=1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let count = json["labellings"].as_array().map_or(0, Vec::len);
        if got == want && count == 3 {
            Ok(())
        } else {
            Err(format!("got {got:?}"))
        }
    });
    match result {
        Ok(()) => outcome(in_time, format!("3 labellings in {elapsed:.2?}")),
        Err(e) => outcome(false, e),
    }
}

fn criteria_2_to_4(frameworks: &[Hafs]) -> [Outcome; 3] {
    let all: Vec<&Hafs> = frameworks.iter().collect();
    let opts = VerifyOptions::default();

    let (pl3, elapsed, in_time) = timed(Duration::from_secs(60), || {
        check_all(&all, TheoremId::TPl3, &opts)
    });
    let c2 = match pl3 {
        Ok(n) => outcome(
            in_time,
            format!("{} frameworks, {n} assignments in {elapsed:.2?}", all.len()),
        ),
        Err(e) => outcome(false, e),
    };

    let c3 = match check_all(&all, TheoremId::T1, &opts) {
        Ok(n) => outcome(
            true,
            format!("{n} complete extensions on {} frameworks", all.len()),
        ),
        Err(e) => outcome(false, e),
    };

    let acyclic: Vec<&Hafs> = frameworks.iter().filter(|h| h.is_support_acyclic()).collect();
    let c4 = match check_all(&acyclic, TheoremId::T2, &opts) {
        Ok(_) => outcome(
            acyclic.len() >= 300,
            format!("{} support-acyclic frameworks", acyclic.len()),
        ),
        Err(e) => outcome(false, e),
    };
    [c2, c3, c4]
}

fn criteria_5_to_8(frameworks: &[Hafs]) -> [Outcome; 4] {
    let all: Vec<&Hafs> = frameworks.iter().collect();
    let opts = VerifyOptions {
        grid_cap: 100_000,
        float_samples: 10_000,
        ..VerifyOptions::default()
    };

    let (eq, elapsed, in_time) = timed(Duration::from_secs(120), || {
        Ok(check_all(&all, TheoremId::EqG, &opts)? + check_all(&all, TheoremId::EqP, &opts)?)
    });
    let c5 = match eq {
        Ok(n) => outcome(
            in_time,
            format!("{n} assignments on {} frameworks in {elapsed:.2?}", all.len()),
        ),
        Err(e) => outcome(false, e),
    };

    let t16 = [Logic::Godel, Logic::Product].iter().try_fold(0, |acc, &logic| {
        let o = VerifyOptions {
            logic,
            ..opts.clone()
        };
        Ok::<_, String>(acc + check_all(&all, TheoremId::T16, &o)?)
    });
    let c6 = match t16 {
        Ok(n) => outcome(true, format!("{n} solutions ternarized")),
        Err(e) => outcome(false, e),
    };

    let c7 = match check_all(&all, TheoremId::Idem, &opts) {
        Ok(n) => outcome(true, format!("{n} complete labellings solve exactly")),
        Err(e) => outcome(false, e),
    };

    let c8 = match check_all(&all, TheoremId::CorrG, &opts) {
        Ok(n) => outcome(true, format!("{n} ternary and fixed-point solutions matched")),
        Err(e) => outcome(false, e),
    };
    [c5, c6, c7, c8]
}

/// Checks boundary conditions, symmetry and monotonicity of the encoded
/// equational function on random exact inputs.
fn criterion_9() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let zero = ratio(0, 1);
    let one = ratio(1, 1);
    for logic in Logic::ALL {
        let denom: i64 = if logic == Logic::L3 { 2 } else { 24 };
        let draw = |rng: &mut ChaCha8Rng| ratio(rng.gen_range(0..=denom), denom);
        for sample in 0..SAMPLES {
            let k = rng.gen_range(0..4);
            let m = rng.gen_range(0..4);
            let att: Vec<(BigRational, BigRational)> =
                (0..k).map(|_| (draw(&mut rng), draw(&mut rng))).collect();
            let sup: Vec<(BigRational, BigRational)> =
                (0..m).map(|_| (draw(&mut rng), draw(&mut rng))).collect();
            let base = h_function(&logic, &att, &sup);
            let fail = |what: &str| {
                outcome(
                    false,
                    format!("{logic}, sample {sample}: {what} ({att:?}, {sup:?})"),
                )
            };

            // (a): every attacker pair has a 0, every supporter pair has c = 1 or t = 0
            let mut a_att = att.clone();
            for p in a_att.iter_mut() {
                if rng.gen() {
                    p.0 = zero.clone()
                } else {
                    p.1 = zero.clone()
                }
            }
            let mut a_sup = sup.clone();
            for p in a_sup.iter_mut() {
                if rng.gen() {
                    p.0 = one.clone()
                } else {
                    p.1 = zero.clone()
                }
            }
            if h_function(&logic, &a_att, &a_sup) != one {
                return fail("boundary (a)");
            }

            // (b): some attacker pair is (1, 1)
            let mut b_att = att.clone();
            let at = rng.gen_range(0..=b_att.len());
            b_att.insert(at, (one.clone(), one.clone()));
            if h_function(&logic, &b_att, &sup) != zero {
                return fail("boundary (b)");
            }

            // (c): permutations
            let (mut p_att, mut p_sup) = (att.clone(), sup.clone());
            p_att.shuffle(&mut rng);
            p_sup.shuffle(&mut rng);
            if h_function(&logic, &p_att, &p_sup) != base {
                return fail("symmetry (c)");
            }

            // monotonicity: raise each coordinate in turn
            for i in 0..2 * (k + m) {
                let (mut r_att, mut r_sup) = (att.clone(), sup.clone());
                let slot = if i < 2 * k {
                    let p = &mut r_att[i / 2];
                    if i % 2 == 0 {
                        &mut p.0
                    } else {
                        &mut p.1
                    }
                } else {
                    let p = &mut r_sup[(i - 2 * k) / 2];
                    if i % 2 == 0 {
                        &mut p.0
                    } else {
                        &mut p.1
                    }
                };
                let raised = draw(&mut rng).max(slot.clone());
                *slot = raised;
                let moved = h_function(&logic, &r_att, &r_sup);
                let supporter_source = i >= 2 * k && i % 2 == 0;
                let ok = if supporter_source {
                    moved >= base
                } else {
                    moved <= base
                };
                if !ok {
                    return fail(if supporter_source { "Inc" } else { "Dec" });
                }
            }
        }
    }
    outcome(
        true,
        format!("{SAMPLES} inputs for each of {} logics", Logic::ALL.len()),
    )
}

fn criterion_10() -> Outcome {
    let invocations: [&[&str]; 6] = [
        &[
            "random",
            "--args",
            "4",
            "--atts",
            "3",
            "--supps",
            "3",
            "--seed",
            "11",
            "--higher-order",
            "0.4",
        ],
        &["labellings", SELF_SUPPORT, "--semantics", "grounded"],
        &[
            "extensions",
            "arg(a). arg(b). att(r1,a,b). att(r2,b,a).",
            "--semantics",
            "preferred",
        ],
        &["encode", SELF_SUPPORT, "--format", "json"],
        &[
            "solve",
            "arg(a). arg(b). att(r1,a,b). supp(t1,b,a).",
            "--logic",
            "product",
            "--seed",
            "5",
        ],
        &["verify", SELF_SUPPORT, "--seed", "3", "--float-samples", "500"],
    ];
    for args in invocations {
        let first = run_cli(args);
        let second = run_cli(args);
        if first != second {
            return outcome(false, format!("outputs differ for {args:?}"));
        }
        if first.1.is_empty() {
            return outcome(false, format!("no output for {args:?}"));
        }
    }
    outcome(true, format!("{} invocations byte-identical", invocations.len()))
}

fn main() {
    let started = Instant::now();
    let large = corpus(1000, 8, 1);
    let small = corpus(200, 6, 2);

    let mut results = vec![(
        "Self-supporting argument has three complete labellings",
        criterion_1(),
    )];
    let [c2, c3, c4] = criteria_2_to_4(&large);
    results.push((
        "Complete labellings equal three-valued models of the encoding",
        c2,
    ));
    results.push(("Extension-derived labellings are adjacent complete", c3));
    results.push((
        "Support-acyclic frameworks: derived and complete labellings coincide",
        c4,
    ));
    let [c5, c6, c7, c8] = criteria_5_to_8(&small);
    results.push(("Gödel and Product: models equal equation solutions", c5));
    results.push((
        "Zero-divisor-free logics: solutions ternarize to complete labellings",
        c6,
    ));
    results.push((
        "1/2-idempotent logic: complete labellings solve the equations",
        c7,
    ));
    results.push((
        "Gödel correspondence, exhaustive backward and sampled forward",
        c8,
    ));
    results.push((
        "Encoded equational function: boundary, symmetry, monotonicity",
        criterion_9(),
    ));
    results.push(("CLI output is deterministic", criterion_10()));

    let mut failures = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let status = if o.passed { "PASS" } else { "FAIL" };
        failures += usize::from(!o.passed);
        println!("{status} criterion {:>2}: {name} [{}]", i + 1, o.detail);
    }
    println!(
        "acceptance: {} of {} passed in {:.1?}",
        results.len() - failures,
        results.len(),
        started.elapsed()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
