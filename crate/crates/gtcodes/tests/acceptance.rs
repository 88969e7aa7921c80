//! Acceptance suite: one test per headline property, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Everything here is exact and reproducible: combinatorial guarantees are
//! checked exhaustively at desk scale, bound formulas against an independent
//! evaluation route, and randomized constructions under fixed seeds.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gtcodes::bounds::{lb_sparse_codewords, lb_sparse_tests, lb_unrestricted, plan_sparse_tests};
use gtcodes::construct::{identity_stack, ks_build, random_constant_weight, CodePlan};
use gtcodes::decode::{cover_decode, KsListDecoder};
use gtcodes::gf::Field;
use gtcodes::matrix::{CodeMatrix, CodeMatrixBuilder};
use gtcodes::sim::{run_sim, DecoderKind, ErrorMode, SimConfig};
use gtcodes::verify::{disjunct_exact, disjunct_sufficient, Witness};

/// Run one criterion body, print its pass/fail line, enforce the time cap.
fn criterion(name: &str, cap: Option<Duration>, body: impl FnOnce() + std::panic::UnwindSafe) {
    let started = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed = started.elapsed();
    match &result {
        Ok(()) if cap.is_none_or(|c| elapsed < c) => {
            println!("acceptance {name}: PASS ({elapsed:.2?})");
        }
        Ok(()) => {
            println!("acceptance {name}: FAIL (over time cap: {elapsed:.2?} >= {cap:?})");
            panic!("{name} exceeded its runtime cap");
        }
        Err(_) => {
            println!("acceptance {name}: FAIL ({elapsed:.2?})");
        }
    }
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

fn ks_matrix(q: u64, k_q: u32, t_q: u32, n: usize) -> CodeMatrix {
    ks_build(&Field::new(q).unwrap(), k_q, t_q, n).unwrap()
}

/// Unpruned reference verifier: enumerate every covering set outright.
fn brute_force_witness(m: &CodeMatrix, d: u32, nu: u32) -> Option<(usize, Vec<usize>)> {
    for size in 0..=d as usize {
        for i in 0..m.cols() {
            let others: Vec<usize> = (0..m.cols()).filter(|&j| j != i).collect();
            for set in others.into_iter().combinations(size) {
                if m.residual_support(i, &set).unwrap() <= nu as usize {
                    return Some((i, set));
                }
            }
        }
    }
    None
}

fn assert_valid_witness(m: &CodeMatrix, w: &Witness, d: u32, nu: u32) {
    assert!(w.covering.len() <= d as usize);
    assert!(!w.covering.contains(&w.column));
    assert!(m.residual_support(w.column, &w.covering).unwrap() <= nu as usize);
}

#[test]
fn criterion_01_step_budget_achievability() {
    criterion(
        "01 single-step column budget",
        Some(Duration::from_secs(5)),
        || {
            for (q, d) in [(5u64, 2u32), (7, 4)] {
                let n = (q * q) as usize;
                let t_q = d + 1;
                let m = ks_matrix(q, 2, t_q, n);
                assert_eq!(m.rows(), (d as usize + 1) * q as usize, "t = (d+1) sqrt(n)");
                assert_eq!(m.cols(), n);
                for j in 0..n {
                    assert_eq!(m.col_weight(j), t_q as usize, "column weight");
                }
                for r in 0..m.rows() {
                    assert_eq!(m.row_weight(r), q as usize, "row weight");
                }
                let report = disjunct_exact(&m, d, 0).unwrap();
                assert!(report.is_disjunct, "q={q} must be {d}-disjunct");
            }

            // d = 3 must fail on the q = 5 instance, with a checkable witness
            let m = ks_matrix(5, 2, 3, 25);
            let report = disjunct_exact(&m, 3, 0).unwrap();
            assert!(!report.is_disjunct);
            let w = report.witness.expect("failing verdicts carry a witness");
            assert_valid_witness(&m, &w, 3, 0);

            // reference check without pruning, q = 5 both verdicts
            assert!(brute_force_witness(&m, 2, 0).is_none());
            assert!(brute_force_witness(&m, 3, 0).is_some());
        },
    );
}

#[test]
fn criterion_02_multiplicity_two_achievability() {
    criterion(
        "02 ladder column budget l=2",
        Some(Duration::from_secs(1)),
        || {
            let m = ks_matrix(4, 3, 3, 64);
            assert_eq!((m.rows(), m.cols()), (12, 64), "t = (ld+1) n^(1/(l+1))");
            let report = disjunct_exact(&m, 1, 0).unwrap();
            assert!(report.is_disjunct);
            // direct oracle: no ordered pair covers
            for i in 0..64 {
                for j in 0..64 {
                    if i != j {
                        assert!(
                            m.residual_support(i, &[j]).unwrap() > 0,
                            "column {j} covers column {i}"
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_03_noisy_construction_and_cover_decoding() {
    criterion(
        "03 noisy step budget + cover decoder",
        Some(Duration::from_secs(120)),
        || {
            let plan = CodePlan::kautz_singleton(49, 2, 2, 7, 2, 5);
            let m = plan.build_matrix().unwrap();
            assert!(disjunct_exact(&m, 2, 2).unwrap().is_disjunct);
            assert!(brute_force_witness(&m, 2, 2).is_none());

            // every pair, every error pattern of weight <= 1 (zero-flip + all
            // 35 single flips), threshold ceil(nu/2)+1 = 2
            let cfg = SimConfig {
                matrix: &m,
                plan: Some(&plan),
                d_active: 2,
                error_weight: 1,
                nu: 2,
                trials: 0,
                seed: 0,
                decoder: DecoderKind::Cover,
                error_mode: ErrorMode::Exhaustive,
                allow_beyond_guarantee: false,
                mixed_active_size: false,
                workers: 1,
            };
            let report = run_sim(&cfg).unwrap();
            assert_eq!(report.trials_run, 1176 * 36);
            assert_eq!(
                report.exact_recoveries, report.trials_run,
                "failures: {:?}",
                report.failures
            );
        },
    );
}

#[test]
fn criterion_04_noisy_list_decoding() {
    criterion(
        "04 list decoding under single flips",
        Some(Duration::from_secs(300)),
        || {
            // l=1, d=2, nu=1: t_q = 6, q = 7, n = 49, t = 42
            let plan = CodePlan::kautz_singleton(49, 2, 1, 7, 2, 6);
            let m = plan.build_matrix().unwrap();
            assert_eq!(plan.t, 42);
            let cfg = SimConfig {
                matrix: &m,
                plan: Some(&plan),
                d_active: 2,
                error_weight: 1,
                nu: 1,
                trials: 0,
                seed: 0,
                decoder: DecoderKind::ListRecovery,
                error_mode: ErrorMode::Exhaustive,
                allow_beyond_guarantee: false,
                mixed_active_size: false,
                workers: 1,
            };
            let report = run_sim(&cfg).unwrap();
            assert_eq!(report.trials_run, 1176 * 43);
            assert_eq!(
                report.exact_recoveries, report.trials_run,
                "failures: {:?}",
                report.failures
            );
        },
    );
}

#[test]
fn criterion_05_decoder_equivalence() {
    criterion("05 decoder equivalence on noiseless plans", None, || {
        let check = |plan: &CodePlan, m: &CodeMatrix, active: &[usize]| {
            let y = m.or_columns(active).unwrap();
            let cover = cover_decode(m, &y, 0).unwrap().items;
            let list = ks_list_decode_cached(plan, m, active);
            assert_eq!(cover, active, "cover decoder truth for {active:?}");
            assert_eq!(list, active, "list decoder truth for {active:?}");
        };
        fn ks_list_decode_cached(plan: &CodePlan, m: &CodeMatrix, active: &[usize]) -> Vec<usize> {
            let y = m.or_columns(active).unwrap();
            KsListDecoder::new(plan)
                .unwrap()
                .decode(&y, 0)
                .unwrap()
                .items
        }

        // exhaustive over all set sizes <= d for the small instances
        let plan = CodePlan::kautz_singleton(25, 2, 0, 5, 2, 3);
        let m = plan.build_matrix().unwrap();
        for size in 0..=2usize {
            for active in (0..25).combinations(size) {
                check(&plan, &m, &active);
            }
        }

        let plan = CodePlan::kautz_singleton(64, 1, 0, 4, 3, 3);
        let m = plan.build_matrix().unwrap();
        for size in 0..=1usize {
            for active in (0..64).combinations(size) {
                check(&plan, &m, &active);
            }
        }

        // q = 7, d = 4: pairs exhaustively, larger sets by seeded sampling
        let plan = CodePlan::kautz_singleton(49, 4, 0, 7, 2, 5);
        let m = plan.build_matrix().unwrap();
        let decoder = KsListDecoder::new(&plan).unwrap();
        let run = |active: &[usize]| {
            let y = m.or_columns(active).unwrap();
            assert_eq!(cover_decode(&m, &y, 0).unwrap().items, active);
            assert_eq!(decoder.decode(&y, 0).unwrap().items, active);
        };
        for size in 0..=2usize {
            for active in (0..49).combinations(size) {
                run(&active);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let size = rng.gen_range(3..=4usize);
            let mut active: Vec<usize> = Vec::new();
            while active.len() < size {
                let pick = rng.gen_range(0..49);
                if !active.contains(&pick) {
                    active.push(pick);
                }
            }
            active.sort_unstable();
            run(&active);
        }
    });
}

#[test]
fn criterion_06_row_budget_exact_optimality() {
    criterion("06 row budget exact optimality", None, || {
        let plan = plan_sparse_tests(25, 2, 0, 5);
        let lb = lb_sparse_tests(25, 2, 0, 5);
        assert_eq!(plan.t, 15);
        assert!((lb.value - 15.0).abs() < 1e-9, "bound must be exactly 15");
        assert_eq!(plan.t, lb.tests_required(), "zero gap");

        let plan = plan_sparse_tests(49, 2, 1, 7);
        let lb = lb_sparse_tests(49, 2, 1, 7);
        assert_eq!(plan.t, 28, "(d+nu+1) n / rho_max");
        assert!((lb.value - 28.0).abs() < 1e-9);
        assert_eq!(plan.t, lb.tests_required());
    });
}

// --- criterion 7: independent re-evaluation of every bound formula ---

fn oracle_unrestricted(n: usize, d: u32) -> f64 {
    let pairs = ((d as u128 + 2) * (d as u128 + 1) / 2) as f64;
    pairs.min(n as f64)
}

/// Direct-arithmetic route (powers and ratios evaluated literally), as
/// opposed to the log-domain route used by the library.
fn oracle_sparse_codewords(n: usize, d: u32, nu: u32, w_max: u32) -> f64 {
    let nf = n as f64;
    let floor = oracle_unrestricted(n, d);
    if w_max <= d + nu {
        return ((nu as f64 + 1.0) * nf).max(floor);
    }
    let l = (w_max - nu - 1) / d;
    let branch = if l == 1 {
        (((d + nu) as f64) * ((d + nu + 1) as f64) * nf)
            .sqrt()
            .min((nu as f64 + 1.0) * nf)
    } else if d >= 2 {
        let (lf, df, nuf) = (l as f64, d as f64, nu as f64);
        if nu == 0 {
            let num = ((lf - 1.0) * (df - 1.0)).powi(l as i32 + 1);
            let den = 2.0 * lf.exp() * (lf - 1.0) * (df - 1.0).powi(l as i32 - 1) + 1.0;
            (num / den).powf(1.0 / (lf + 1.0)) * nf.powf(1.0 / (lf + 1.0))
        } else {
            let term1 = 2.0 * lf.exp() / ((df + nuf).powi(2) * (lf - 1.0).powi(l as i32));
            let term2 = 1.0 / ((lf - 1.0) * (df - 1.0) + nuf).powi(l as i32 + 1);
            (term1 + term2).powf(-1.0 / (lf + 1.0)) * nf.powf(1.0 / (lf + 1.0))
        }
    } else {
        0.0
    };
    branch.max(floor)
}

fn oracle_sparse_tests(n: usize, d: u32, nu: u32, rho_max: usize) -> f64 {
    let nf = n as f64;
    let floor = oracle_unrestricted(n, d);
    let branch = if (rho_max as f64) > (d + nu + 1) as f64 / (nu as f64 + 1.0) {
        (d + nu + 1) as f64 * nf / rho_max as f64
    } else {
        (nu as f64 + 1.0) * nf
    };
    branch.max(floor)
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * b.abs().max(1.0)
}

#[test]
fn criterion_07_bound_formula_golden_grid() {
    criterion("07 bound formulas vs independent evaluation", None, || {
        let ns = [64usize, 128, 400, 1024, 10_000, 250_000];
        let ds = [2u32, 3, 5, 8];
        let nus = [0u32, 1, 3];
        let mut points = 0usize;

        for &n in &ns {
            for &d in &ds {
                // unrestricted
                assert!(rel_close(
                    lb_unrestricted(n, d).value,
                    oracle_unrestricted(n, d)
                ));
                for &nu in &nus {
                    let w_grid = [
                        d + nu,         // forced individual testing
                        d + nu + 1,     // single step
                        2 * d + nu + 1, // ladder l = 2
                        3 * d + nu + 2, // strictly between ladder points
                        4 * d + nu + 1, // ladder l = 4
                    ];
                    for &w_max in &w_grid {
                        let got = lb_sparse_codewords(n, d, nu, w_max).value;
                        let want = oracle_sparse_codewords(n, d, nu, w_max);
                        assert!(
                            rel_close(got, want),
                            "w: n={n} d={d} nu={nu} w={w_max}: {got} vs {want}"
                        );
                        points += 1;
                    }
                    for rho in [1usize, 2, (d + nu + 1) as usize, 5, 20, n / 4 + 1] {
                        let got = lb_sparse_tests(n, d, nu, rho).value;
                        let want = oracle_sparse_tests(n, d, nu, rho);
                        assert!(
                            rel_close(got, want),
                            "rho: n={n} d={d} nu={nu} rho={rho}: {got} vs {want}"
                        );
                        points += 1;
                    }
                }
            }
        }
        assert!(points >= 50, "grid has {points} points");

        // monotonicity along every grid line
        for &d in &ds {
            for &nu in &nus {
                for &w_max in &[d + nu, d + nu + 1, 2 * d + nu + 1, 4 * d + nu + 1] {
                    let mut prev = 0.0f64;
                    for &n in &ns {
                        let v = lb_sparse_codewords(n, d, nu, w_max).value;
                        assert!(v >= prev - 1e-9, "nondecreasing in n");
                        prev = v;
                    }
                }
                for rho in [2usize, 5, 20, 100] {
                    let mut prev = 0.0f64;
                    for &n in &ns {
                        let v = lb_sparse_tests(n, d, nu, rho).value;
                        assert!(v >= prev - 1e-9, "nondecreasing in n");
                        prev = v;
                    }
                }
            }
        }
        for &n in &ns {
            for &nu in &nus {
                for w_max in [8u32, 13, 21] {
                    let mut prev = 0.0f64;
                    for d in 2..=6u32 {
                        let v = lb_sparse_codewords(n, d, nu, w_max).value;
                        assert!(
                            v >= prev - 1e-9,
                            "nondecreasing in d: n={n} nu={nu} w={w_max} d={d}: {v} < {prev}"
                        );
                        prev = v;
                    }
                }
                for &d in &ds {
                    let mut prev = f64::INFINITY;
                    for w_max in 1..=(4 * d + nu + 2) {
                        let v = lb_sparse_codewords(n, d, nu, w_max).value;
                        assert!(v <= prev + 1e-9, "nonincreasing in w_max");
                        prev = v;
                    }
                    let mut prev = f64::INFINITY;
                    for rho in 1..=60usize {
                        let v = lb_sparse_tests(n, d, nu, rho).value;
                        assert!(v <= prev + 1e-9, "nonincreasing in rho_max");
                        prev = v;
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_08_random_construction_search() {
    criterion(
        "08 random constant-weight search",
        Some(Duration::from_secs(120)),
        || {
            // alpha = 0.5, n = 400, d = 2, nu = 0, c = 6:
            // w = c(d+nu) = 12, t = c(d+nu) n^(1-alpha) = 240, window [10, 40]
            let (t, n, w) = (240usize, 400usize, 12u32);
            let window = 10..=40usize;
            let mut found = None;
            for seed in 0..5u64 {
                let m = random_constant_weight(t, n, w, seed).unwrap();
                let rows_ok = (0..m.rows()).all(|r| window.contains(&m.row_weight(r)));
                if rows_ok && disjunct_exact(&m, 2, 0).unwrap().is_disjunct {
                    found = Some((seed, m));
                    break;
                }
            }
            let (seed, m) = found.expect("a verified instance within 5 seeded retries");
            println!("  criterion 08: verified instance at seed {seed}");
            for r in 0..m.rows() {
                assert!(window.contains(&m.row_weight(r)));
            }
            for j in 0..m.cols() {
                assert_eq!(m.col_weight(j), w as usize);
            }
        },
    );
}

#[test]
fn criterion_09_decode_time_scales_linearly() {
    criterion("09 list-decode time O(t)-dominated", None, || {
        let mut timings = Vec::new();
        for q in [11u64, 23, 47] {
            let n = (q * q) as usize;
            let plan = CodePlan::kautz_singleton(n, 2, 0, q as u32, 2, 3);
            let m = plan.build_matrix().unwrap();
            let decoder = KsListDecoder::new(&plan).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let outcomes: Vec<_> = (0..64)
                .map(|_| {
                    let a = rng.gen_range(0..n);
                    let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
                    m.or_columns(&[a.min(b), a.max(b)]).unwrap()
                })
                .collect();
            // sanity: decodes are exact, and step-1 work tracks t
            for (i, y) in outcomes.iter().enumerate() {
                let res = decoder.decode(y, 0).unwrap();
                assert_eq!(res.items.len(), 2, "outcome {i}");
                assert_eq!(res.work.columns_scanned, 3 * q as usize);
                assert!(res.work.candidates_interpolated <= 4);
            }
            // best-of-12 batch timing smooths scheduler noise
            let mut best = Duration::MAX;
            for _ in 0..12 {
                let started = Instant::now();
                for y in &outcomes {
                    std::hint::black_box(decoder.decode(std::hint::black_box(y), 0).unwrap());
                }
                best = best.min(started.elapsed());
            }
            timings.push((3 * q as usize, best.as_secs_f64() / outcomes.len() as f64));
        }
        println!("  criterion 09 timings: {timings:?}");
        for pair in timings.windows(2) {
            let (t0, s0) = pair[0];
            let (t1, s1) = pair[1];
            let ratio = s1 / s0;
            assert!(
                ratio <= 3.0,
                "decode time grew {ratio:.2}x from t={t0} to t={t1} (cap 3x per doubling)"
            );
        }
    });
}

// --- criterion 10: soundness across a matrix corpus ---

fn mutate(m: &CodeMatrix, edits: &[(usize, usize, bool)]) -> CodeMatrix {
    let mut b = CodeMatrixBuilder::new(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let mut bit = m.get(r, c);
            for &(er, ec, val) in edits {
                if (er, ec) == (r, c) {
                    bit = val;
                }
            }
            if bit {
                b.set(r, c);
            }
        }
    }
    b.build()
}

/// Copy column `src` over column `dst`.
fn duplicate_column(m: &CodeMatrix, src: usize, dst: usize) -> CodeMatrix {
    let edits: Vec<(usize, usize, bool)> = (0..m.rows()).map(|r| (r, dst, m.get(r, src))).collect();
    mutate(m, &edits)
}

#[test]
fn criterion_10_soundness_cross_checks() {
    criterion("10 sufficient => exact over the corpus", None, || {
        let ks5 = ks_matrix(5, 2, 3, 25);
        let ks7 = ks_matrix(7, 2, 5, 49);
        let mut corpus: Vec<(String, CodeMatrix)> = vec![
            ("identity 4".into(), CodeMatrix::identity(4)),
            ("identity 9".into(), CodeMatrix::identity(9)),
            ("identity stack nu=1".into(), identity_stack(5, 1)),
            ("identity stack nu=2".into(), identity_stack(3, 2)),
            ("identity stack nu=3".into(), identity_stack(6, 3)),
            ("ks q5".into(), ks5.clone()),
            ("ks q5 truncated".into(), ks_matrix(5, 2, 3, 20)),
            ("ks q7 noisy".into(), ks7.clone()),
            ("ks q7 list plan".into(), ks_matrix(7, 2, 6, 49)),
            ("ks q4 l2".into(), ks_matrix(4, 3, 3, 64)),
            ("ks q4 small".into(), ks_matrix(4, 2, 3, 16)),
            ("ks q8".into(), ks_matrix(8, 2, 4, 64)),
            ("ks q9".into(), ks_matrix(9, 2, 3, 81)),
            ("ks q3".into(), ks_matrix(3, 2, 3, 9)),
            ("ks q2 degenerate".into(), ks_matrix(2, 1, 1, 2)),
            (
                "random 40x100".into(),
                random_constant_weight(40, 100, 6, 1).unwrap(),
            ),
            (
                "random 24x30".into(),
                random_constant_weight(24, 30, 6, 2).unwrap(),
            ),
            (
                "random 20x50".into(),
                random_constant_weight(20, 50, 4, 3).unwrap(),
            ),
            (
                "random 12x30".into(),
                random_constant_weight(12, 30, 3, 4).unwrap(),
            ),
        ];
        // adversarial near-misses
        corpus.push((
            "ks q5 duplicated column".into(),
            duplicate_column(&ks5, 0, 1),
        ));
        corpus.push((
            "ks q5 weakened column".into(),
            mutate(&ks5, &[(0, 0, false)]), // column 0 drops to weight 2
        ));
        corpus.push((
            "ks q7 weakened column".into(),
            mutate(&ks7, &[(0, 0, false), (7, 0, false)]), // weight 5 -> 3
        ));
        corpus.push((
            "identity with empty column".into(),
            mutate(&CodeMatrix::identity(5), &[(2, 2, false)]),
        ));
        assert!(corpus.len() >= 20, "corpus has {}", corpus.len());

        let mut checked = 0usize;
        for (name, m) in &corpus {
            for d in 1..=3u32 {
                if (d as usize) >= m.cols() {
                    continue;
                }
                for nu in 0..=2u32 {
                    let sufficient = disjunct_sufficient(m, d, nu);
                    let exact = disjunct_exact(m, d, nu).unwrap();
                    checked += 1;
                    if sufficient.is_disjunct {
                        assert!(
                            exact.is_disjunct,
                            "{name}: sufficient said ({d},{nu})-disjunct but exact disagrees"
                        );
                    }
                    match (&exact.witness, exact.is_disjunct) {
                        (Some(w), false) => assert_valid_witness(m, w, d, nu),
                        (None, true) => {}
                        _ => panic!("{name}: witness present iff not disjunct"),
                    }
                }
            }
        }
        println!("  criterion 10: {checked} (matrix, d, nu) combinations checked");

        // pruned search agrees with the unpruned reference on small matrices
        for (name, m) in corpus.iter().filter(|(_, m)| m.cols() <= 30) {
            for d in 1..=2u32 {
                if (d as usize) >= m.cols() {
                    continue;
                }
                for nu in 0..=1u32 {
                    let exact = disjunct_exact(m, d, nu).unwrap();
                    let brute = brute_force_witness(m, d, nu);
                    assert_eq!(
                        exact.is_disjunct,
                        brute.is_none(),
                        "{name} d={d} nu={nu}: pruned and reference verdicts differ"
                    );
                }
            }
        }

        // cover decoding within its guarantee on verified noisy matrices
        let m = &ks7;
        assert!(disjunct_exact(m, 2, 2).unwrap().is_disjunct);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..200 {
            let a = rng.gen_range(0..49);
            let b = (a + 1 + rng.gen_range(0..48)) % 49;
            let active = vec![a.min(b), a.max(b)];
            let mut y = m.or_columns(&active).unwrap();
            y.flip(rng.gen_range(0..m.rows())); // one flip <= floor(nu/2)
            assert_eq!(cover_decode(m, &y, 2).unwrap().items, active);
        }
    });
}
