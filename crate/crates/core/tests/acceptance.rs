//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use laguerre_lab::cli;
use laguerre_lab::combinatorics::{character, conjugacy_class_size, factorial, partitions};
use laguerre_lab::ensembles::{sample_bidiagonal, CompoundSpec, LaguerreParams, Substreams, DEFAULT_SEED};
use laguerre_lab::estimators::{
    coupled_smallest_eigenvalues, finiteness_verdict, fit_gap_exponent, hill_tail_index, mc_inverse_moment,
    n1_gap_constant, n1_inverse_moment, DivergenceFlag, DEFAULT_GRID,
};
use laguerre_lab::spectra::{eigenvalues_tridiagonal, gershgorin_bounds, smallest_eigenvalue};
use laguerre_lab::weingarten::{exact_inverse_moment, MomentOrder};
use laguerre_lab::Rational;
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn streams() -> Substreams {
    Substreams::new(DEFAULT_SEED)
}

fn cli_call(args: &[&str]) -> (i32, Vec<u8>) {
    let argv: Vec<String> = std::iter::once("laguerre-lab").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(&argv, &mut out, &mut err);
    (code, out)
}

fn threshold() -> Outcome {
    // (m, n, beta, c, finite); alpha = (m - n + 1) beta / 2 noted alongside
    let grid: [(usize, usize, f64, u32, bool); 12] = [
        (10, 3, 2.0, 7, true),  // alpha 8
        (10, 3, 2.0, 8, false), // boundary c = alpha
        (4, 3, 1.0, 1, false),  // boundary c = alpha = 1
        (4, 3, 2.0, 1, true),   // alpha 2
        (4, 3, 2.0, 2, false),  // boundary c = alpha
        (6, 4, 1.0, 1, true),   // alpha 3/2
        (6, 4, 1.0, 2, false),
        (7, 3, 1.0, 2, true),   // alpha 5/2
        (7, 3, 1.0, 3, false),
        (6, 1, 1.0, 3, false),  // alpha 3, boundary
        (3, 3, 4.0, 1, true),   // alpha 2
        (5, 5, 0.5, 1, false),  // alpha 1/4
    ];
    let start = Instant::now();
    let wrong: Vec<_> = grid
        .iter()
        .filter(|(m, n, b, c, want)| finiteness_verdict(&LaguerreParams::new(*m, *n, *b).unwrap(), *c) != *want)
        .collect();
    let elapsed = start.elapsed();
    outcome(
        wrong.is_empty() && elapsed < Duration::from_millis(1),
        format!("{} of 12 verdicts correct in {:?}", 12 - wrong.len(), elapsed),
    )
}

fn n1_oracle() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for (m, beta, c) in [(4usize, 2.0, 1u32), (3, 1.0, 1)] {
        let p = LaguerreParams::new(m, 1, beta).unwrap();
        let exact = n1_inverse_moment(p.alpha, c).unwrap();
        let est = mc_inverse_moment(&p, c, 100_000, &streams(), None).unwrap();
        let z = (est.estimate - exact) / est.stderr;
        pass &= z.abs() < 3.0;
        detail.push(format!("({m},{beta},{c}): {:.5} vs {exact:.5} ({z:+.2} se)", est.estimate));
    }
    outcome(pass, detail.join("; "))
}

fn symbolic_wg(mu: &[usize], z: i64) -> Rational {
    let z = Rational::from_int(z);
    let one = Rational::one();
    let z2 = &z * &z;
    let a = &z2 - &one;
    let b = &z2 - &Rational::from_int(4);
    match mu {
        [1] => z.recip(),
        [1, 1] => a.recip(),
        [2] => -(&z * &a).recip(),
        [1, 1, 1] => (&z2 - &Rational::from_int(2)) / (&(&z * &a) * &b),
        [2, 1] => -(&a * &b).recip(),
        [3] => Rational::from_int(2) / (&(&z * &a) * &b),
        _ => unreachable!(),
    }
}

fn weingarten_exactness() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in 1..=3usize {
        for z in [-12i64, -9, -7, -5, -3, 3, 4, 6, 10] {
            let (code, out) = cli_call(&["wg-table", "--q", &q.to_string(), "--z", &z.to_string()]);
            if code != 0 {
                bad.push(format!("wg-table q={q} z={z} exited {code}"));
                continue;
            }
            let v: Value = serde_json::from_slice(&out).unwrap();
            for row in v["table"].as_array().unwrap() {
                let mu: Vec<usize> = serde_json::from_value(row["class"].clone()).unwrap();
                let got: Rational = row["value"].as_str().unwrap().parse().unwrap();
                checked += 1;
                if got != symbolic_wg(&mu, z) {
                    bad.push(format!("Wg({mu:?}, {z}) = {got}"));
                }
            }
        }
    }
    for m in 2..=8usize {
        for n in 1..m {
            let got = exact_inverse_moment(&MomentOrder::trace_power(1), m, n).unwrap();
            checked += 1;
            if got != Rational::new(n as i64, (m - n) as i64) {
                bad.push(format!("E Tr W^-1 ({m},{n}) = {got}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(1),
        format!("{checked} exact comparisons, {} mismatches, {:?} {}", bad.len(), elapsed, bad.join(", ")),
    )
}

fn cross_route() -> Outcome {
    let start = Instant::now();
    let p = LaguerreParams::new(6, 2, 2.0).unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for c in [1u32, 2] {
        let exact = exact_inverse_moment(&MomentOrder::trace_power(c as usize), 6, 2).unwrap()
            * Rational::new(1, 1 << c);
        let est = mc_inverse_moment(&p, c, 100_000, &streams(), None).unwrap();
        let z = (est.estimate - exact.to_f64()) / est.stderr;
        pass &= z.abs() < 3.0;
        detail.push(format!("c={c}: {:.5} vs {exact} ({z:+.2} se)", est.estimate));
    }
    let elapsed = start.elapsed();
    outcome(pass && elapsed < Duration::from_secs(30), format!("{} in {elapsed:.1?}", detail.join("; ")))
}

fn gap_scaling() -> Outcome {
    let start = Instant::now();
    let trials = 1_000_000;
    let root2 = std::f64::consts::SQRT_2;
    let cases: [(usize, usize, f64, Vec<f64>); 2] = [
        (6, 4, 1.0, DEFAULT_GRID.to_vec()),
        (5, 3, 2.0, vec![0.2, 0.2 / root2, 0.1, 0.1 / root2]),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    for (i, (m, n, beta, grid)) in cases.iter().enumerate() {
        let p = LaguerreParams::new(*m, *n, *beta).unwrap();
        let fit = fit_gap_exponent(&p, grid, trials, &streams().fork(i as u64)).unwrap();
        let rel = (fit.alpha_hat - p.alpha).abs() / p.alpha;
        pass &= rel <= 0.10;
        detail.push(format!("({m},{n},{beta}) alpha_hat={:.3} vs {}", fit.alpha_hat, p.alpha));
    }
    let p = LaguerreParams::new(4, 1, 1.0).unwrap();
    let grid: Vec<f64> = (0..5).map(|i| 0.3 * 4f64.powf(-(i as f64) / 4.0)).collect();
    let fit = fit_gap_exponent(&p, &grid, trials, &streams().fork(2)).unwrap();
    let target = n1_gap_constant(p.alpha).ln();
    pass &= (fit.intercept - target).abs() <= 0.15 * target.abs();
    detail.push(format!("(4,1,1) intercept={:.3} vs log(1/8)={target:.3}", fit.intercept));
    let elapsed = start.elapsed();
    outcome(pass && elapsed < Duration::from_secs(300), format!("{} in {elapsed:.1?}", detail.join("; ")))
}

fn divergence_detection() -> Outcome {
    let start = Instant::now();
    let p = LaguerreParams::new(4, 3, 2.0).unwrap();
    let finite = mc_inverse_moment(&p, 1, 100_000, &streams(), None).unwrap();
    let infinite = mc_inverse_moment(&p, 2, 100_000, &streams(), None).unwrap();
    let hill = infinite.hill.index;
    let pass = finite.is_stable()
        && infinite.flags.contains(&DivergenceFlag::MassConcentration)
        && (1.7..=2.3).contains(&hill);
    let elapsed = start.elapsed();
    outcome(
        pass && elapsed < Duration::from_secs(60),
        format!(
            "c=1 flags {:?} (max share {:.4}); c=2 flags {:?} (max share {:.4}), Hill {hill:.3} (k={}) in {elapsed:.1?}",
            finite.flags, finite.max_share, infinite.flags, infinite.max_share, infinite.hill.k
        ),
    )
}

fn compound_sandwich() -> Outcome {
    let start = Instant::now();
    let spec = CompoundSpec::new(5, 2, 2, vec![1.0, 2.0, 2.0, 3.0, 5.0]).unwrap();
    let coupled = coupled_smallest_eigenvalues(&spec, 10_000, &streams()).unwrap();
    let violations = coupled
        .iter()
        .filter(|(mu, l)| !(spec.xi_min() * l <= *mu && *mu <= spec.xi_max() * l))
        .count();
    let trials = 2_000_000;
    let draws = coupled_smallest_eigenvalues(&spec, trials, &streams().fork(7)).unwrap();
    let inv: Vec<f64> = draws.iter().map(|(mu, _)| 1.0 / mu).collect();
    let k = (trials as f64).sqrt().ceil() as usize;
    let hill = hill_tail_index(&inv, k).unwrap();
    let alpha = spec.laguerre().alpha;
    let pass = violations == 0 && (hill - alpha).abs() <= 0.15 * alpha;
    let elapsed = start.elapsed();
    outcome(
        pass && elapsed < Duration::from_secs(60),
        format!(
            "{violations} sandwich violations in 10^4 draws; Hill(mu_1^-1)={hill:.3} vs {alpha} (k={k}, N={trials}) in {elapsed:.1?}"
        ),
    )
}

fn kernels() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut pass = true;

    let mut gram_err = 0.0f64;
    let mut sturm_err = 0.0f64;
    for (i, (m, n, beta)) in [(8usize, 5usize, 1.0), (6, 6, 2.0), (20, 12, 0.7)].into_iter().enumerate() {
        let p = LaguerreParams::new(m, n, beta).unwrap();
        let s = streams().fork(100 + i as u64);
        for t in 0..1000u64 {
            let x = sample_bidiagonal(&p, &mut s.stream(t));
            let d = x.to_dense();
            let dense = d.transpose() * &d;
            let tri = x.gram().to_dense();
            let scale = dense.amax();
            gram_err = gram_err.max((tri - &dense).amax() / scale);

            let g = x.gram();
            let spectrum = eigenvalues_tridiagonal(&g).unwrap();
            let (lo, hi) = gershgorin_bounds(&g);
            let bisect = smallest_eigenvalue(&g, 1e-14 * lo.abs().max(hi.abs())).unwrap();
            sturm_err = sturm_err.max((bisect - spectrum.smallest()).abs() / hi.abs().max(1.0));
        }
    }
    pass &= gram_err <= 1e-12 && sturm_err <= 1e-10;
    notes.push(format!("Gram rel err {gram_err:.1e}; Sturm vs QL err {sturm_err:.1e} over 3x1000 draws"));

    let mut worst_mass = 0.0f64;
    for (m, beta) in [(2usize, 1.0), (4, 1.0), (3, 2.0), (6, 2.0), (3, 4.0)] {
        let mass = common::wedge_mass(&LaguerreParams::new(m, 2, beta).unwrap());
        worst_mass = worst_mass.max((mass - 1.0).abs());
    }
    pass &= worst_mass <= 1e-5;
    notes.push(format!("n=2 density mass error {worst_mass:.1e}"));

    let mut orth_ok = true;
    for q in 1..=6usize {
        let classes = partitions(q).unwrap();
        for a in &classes {
            for b in &classes {
                let inner: i64 = classes
                    .iter()
                    .map(|mu| {
                        conjugacy_class_size(mu) as i64 * character(a, mu).unwrap() * character(b, mu).unwrap()
                    })
                    .sum();
                orth_ok &= inner == if a == b { factorial(q) as i64 } else { 0 };
            }
        }
    }
    pass &= orth_ok;
    notes.push(format!("character orthogonality q<=6 {}", if orth_ok { "exact" } else { "BROKEN" }));
    let elapsed = start.elapsed();
    outcome(pass && elapsed < Duration::from_secs(120), format!("{} in {elapsed:.1?}", notes.join("; ")))
}

fn determinism() -> Outcome {
    let commands: Vec<Vec<&str>> = vec![
        vec!["sample", "--m", "5", "--n", "3", "--beta", "1.5", "--count", "20"],
        vec!["sample", "--m", "5", "--n", "3", "--beta", "2", "--count", "20", "--form", "dense"],
        vec!["sample", "--m", "5", "--n", "2", "--beta", "2", "--xi", "1,2,2,3,5", "--count", "20", "--form", "dense"],
        vec!["sample", "--m", "5", "--n", "2", "--beta", "1", "--xi", "1,2,2,3,5", "--count", "20"],
        vec!["gap", "--m", "6", "--n", "4", "--beta", "1", "--grid", "0.1,0.03,0.01", "--trials", "20000"],
        vec!["exponent", "--m", "6", "--n", "4", "--beta", "1", "--trials", "50000"],
        vec!["exponent", "--m", "6", "--n", "4", "--beta", "1", "--trials", "50000", "--format", "csv"],
        vec!["moment-mc", "--m", "6", "--n", "2", "--c", "2", "--trials", "20000"],
        vec!["moment-mc", "--m", "6", "--n", "2", "--cycle-type", "1,1", "--trials", "20000"],
        vec!["moment-mc", "--m", "5", "--n", "2", "--xi", "1,2,2,3,5", "--c", "3", "--trials", "20000"],
        vec!["moment-exact", "--m", "8", "--n", "3", "--cycle-type", "2,1"],
        vec!["verdict", "--m", "5", "--n", "2", "--xi", "1,2,2,3,5", "--c", "3"],
        vec!["report", "--m", "4", "--n", "3", "--beta", "2", "--c", "2", "--trials", "20000"],
        vec!["report", "--m", "5", "--n", "2", "--xi", "1,2,2,3,5", "--c", "3", "--trials", "20000"],
        vec!["wg-table", "--q", "5", "--z", "-9"],
    ];
    let mut differing = Vec::new();
    for cmd in &commands {
        let with = |extra: &[&str]| {
            let mut args = cmd.clone();
            args.extend_from_slice(&["--seed", "977"]);
            args.extend_from_slice(extra);
            cli_call(&args)
        };
        let runs = [with(&["--threads", "1"]), with(&["--threads", "1"]), with(&["--threads", "4"]), with(&["--threads", "4"])];
        let ok = runs.iter().all(|r| r.0 == 0 && r.1 == runs[0].1);
        if !ok {
            differing.push(cmd[0]);
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} invocations x 2 runs x threads {{1, 4}}; differing: {:?}", commands.len(), differing),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("threshold correctness", threshold),
        ("n=1 closed-form oracle", n1_oracle),
        ("Weingarten exactness", weingarten_exactness),
        ("cross-route consistency", cross_route),
        ("gap scaling", gap_scaling),
        ("divergence detection", divergence_detection),
        ("compound sandwich", compound_sandwich),
        ("numerical kernels", kernels),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {} [{}] {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
