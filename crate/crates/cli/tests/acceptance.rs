//! Acceptance gate: one PASS/FAIL line per criterion, exact arithmetic throughout.
//!
//! Expected values come from oracles written here, not from the library:
//! `(mn)^k` counts, a standalone rank routine over `BigRational`, and
//! closed-form Hilbert functions for the classical checks.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use coinv_core::catalg::{hom_vanishing, intertwiner_space, ComoduleSpace};
use coinv_core::classical::{fft1_check, fft2_check};
use coinv_core::comod::CoinvSetting;
use coinv_core::fpquot::{Certification, Presentation};
use coinv_core::freealg::{FreeElement, Word};
use coinv_core::hopf::{check_hopf_compat, FMatrix, HopfPresentation};
use coinv_core::Rational;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// `(m, n, t, max k)` for the certification grid.
const GRID: [(usize, usize, usize, usize); 5] = [(1, 1, 1, 4), (2, 1, 1, 3), (2, 2, 1, 3), (1, 1, 2, 2), (2, 2, 2, 2)];

fn presets(t: usize) -> Vec<&'static str> {
    if t == 2 {
        vec!["preset:identity", "preset:diag:1,2", "preset:jordan"]
    } else {
        vec!["preset:identity"]
    }
}

fn f_of(source: &str, t: usize) -> FMatrix {
    coinv_cli::parse_f(source, t).unwrap()
}

fn cli(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["coinv"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let out = coinv_cli::run(argv);
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, json)
}

fn pow(b: usize, e: usize) -> usize {
    (0..e).fold(1, |acc, _| acc * b)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank by plain Gaussian elimination over `BigRational`.
fn oracle_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = &rows[r][c] / &pivot;
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The degree-`k` component of `x_{ij} ↦ Σ_a y_{ia} ⊗ z_{aj}` as a dense
/// matrix (rows = words in `x`, columns = pairs of `y`- and `z`-words), then its rank.
fn oracle_theta_rank(m: usize, n: usize, t: usize, k: usize) -> usize {
    let ycount = pow(m * t, k);
    let zcount = pow(t * n, k);
    let mut rows = Vec::new();
    for word in 0..pow(m * n, k) {
        let mut letters = Vec::new();
        let mut w = word;
        for _ in 0..k {
            letters.push((w % (m * n) / n, w % n));
            w /= m * n;
        }
        let mut row = vec![BigRational::zero(); ycount * zcount];
        for a_word in 0..pow(t, k) {
            let (mut yi, mut zi, mut a) = (0, 0, a_word);
            for &(i, j) in &letters {
                let ai = a % t;
                a /= t;
                yi = yi * m * t + i * t + ai;
                zi = zi * t * n + ai * n + j;
            }
            row[yi * zcount + zi] += BigRational::one();
        }
        rows.push(row);
    }
    oracle_rank(rows)
}

fn cases(report: &Value) -> &Vec<Value> {
    report["cases"].as_array().expect("cases array")
}

fn c1_squeeze() -> Outcome {
    let mut count = 0;
    let mut slowest = Duration::ZERO;
    let start = Instant::now();
    for (m, n, t, kmax) in GRID {
        for f in presets(t) {
            for k in 0..=kmax {
                let case_start = Instant::now();
                let args = [
                    "certify-fft", "-m", &m.to_string(), "-n", &n.to_string(), "-t", &t.to_string(), "--F", f, "-k", &k.to_string(),
                ];
                let (code, r) = cli(&args);
                slowest = slowest.max(case_start.elapsed());
                let c = &cases(&r)[0];
                let expected = pow(m * n, k);
                let oracle = oracle_theta_rank(m, n, t, k);
                ensure!(oracle == expected, "oracle rank {oracle} != (mn)^k = {expected} for ({m},{n},{t}) k={k}");
                ensure!(code == 0, "({m},{n},{t}) {f} k={k}: exit {code}, {r}");
                ensure!(c["dim_coinv"] == expected && c["dim_theta"] == expected, "({m},{n},{t}) {f} k={k}: {c}");
                ensure!(c["certified"] == true, "({m},{n},{t}) {f} k={k} not certified");
                count += 1;
            }
        }
    }
    ensure!(slowest < Duration::from_secs(300), "slowest case took {slowest:?}");
    Ok(format!("{count} cases, slowest {:.2}s, total {:.1}s", slowest.as_secs_f64(), start.elapsed().as_secs_f64()))
}

fn c2_off_diagonal() -> Outcome {
    let mut count = 0;
    for (m, n, t, _) in GRID {
        for f in presets(t) {
            let s = CoinvSetting::new(m, n, &f_of(f, t)).unwrap();
            for i in 0..=6usize {
                for j in 0..=6 - i {
                    if i == j {
                        continue;
                    }
                    let start = Instant::now();
                    let cert = s.off_diagonal_vanish(i, j).map_err(|e| format!("({i},{j}): {e}"))?;
                    ensure!(start.elapsed() < Duration::from_secs(1), "({i},{j}) took {:?}", start.elapsed());
                    ensure!(cert.exponent == j as i64 - i as i64, "({i},{j}) exponent {}", cert.exponent);
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} bidegrees certified zero"))
}

fn c3_theta_injective() -> Outcome {
    let mut count = 0;
    for (m, n, t, kmax) in GRID {
        for k in 0..=kmax {
            let (code, r) = cli(&["theta-rank", "-m", &m.to_string(), "-n", &n.to_string(), "-t", &t.to_string(), "-k", &k.to_string()]);
            let rank = cases(&r)[0]["dim_theta"].as_u64().unwrap_or(0) as usize;
            let oracle = oracle_theta_rank(m, n, t, k);
            ensure!(code == 0 && rank == oracle && oracle == pow(m * n, k), "({m},{n},{t}) k={k}: rank {rank}, oracle {oracle}");
            count += 1;
        }
    }
    Ok(format!("{count} components of full rank"))
}

fn c4_correspondence() -> Outcome {
    let mut words = 0;
    for (m, n, t, kmax) in GRID {
        for f in presets(t) {
            let k = kmax.min(2).to_string();
            let (code, r) = cli(&["correspondence", "-m", &m.to_string(), "-n", &n.to_string(), "-t", &t.to_string(), "--F", f, "-k", &k, "--up-to"]);
            ensure!(code == 0, "({m},{n},{t}) {f}: exit {code}, {r}");
            for c in cases(&r) {
                let deg = c["bidegree"][0].as_u64().unwrap() as usize;
                let expected = pow(m * n, deg) as u64;
                ensure!(c["words"] == expected && c["equalities"] == expected, "({m},{n},{t}) {f}: {c}");
                ensure!(c["psi_rank"] == expected, "({m},{n},{t}) {f}: psi images dependent: {c}");
                words += expected;
            }
        }
    }
    Ok(format!("{words} words matched, psi images independent"))
}

fn c5_hom_dimensions() -> Outcome {
    let mut checked = 0;
    for f in presets(2) {
        let hopf = Arc::new(HopfPresentation::new(&f_of(f, 2)).unwrap());
        let u = ComoduleSpace::u_left(&hopf);
        for i in 0..=2usize {
            for j in 0..=2usize {
                let maps = intertwiner_space(&hopf, 1, 1, i, j, i + j + 2).map_err(|e| e.to_string())?;
                let expected = usize::from(i == j);
                ensure!(maps.len() == expected, "{f} ({i},{j}): dim {} != {expected}", maps.len());
                if i != j {
                    let v = hom_vanishing(&u.tensor_power(i).unwrap(), &u.tensor_power(j).unwrap());
                    ensure!(v == Some((i as i64, j as i64)), "{f} ({i},{j}): no grading certificate");
                }
                let (code, _) = cli(&["intertwiners", "-t", "2", "--F", f, "-i", &i.to_string(), "-j", &j.to_string()]);
                ensure!(code == 0, "{f} ({i},{j}): cli exit {code}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} Hom spaces, dims = delta_ij"))
}

fn c6_hopf() -> Outcome {
    let mut certified = 0;
    for t in 1..=2 {
        for f in presets(t) {
            let h = HopfPresentation::new(&f_of(f, t)).unwrap();
            let r = check_hopf_compat(&h, 4).map_err(|e| e.to_string())?;
            ensure!(r.exact_ok() && r.all_certified(), "t={t} {f}: {} of {} checks", r.certified_count(), 3 * r.relations.len());
            certified += r.certified_count();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x600d);
    let mut relations = 0;
    for t in 1..=3 {
        for _ in 0..5 {
            let h = HopfPresentation::new(&FMatrix::random(t, &mut rng)).unwrap();
            for e in h.relation_entries() {
                ensure!(h.counit(&e.element).is_zero(), "t={t} F={}: counit of {} nonzero", h.f(), e.label());
                relations += 1;
            }
        }
    }
    Ok(format!("{certified} grid checks certified; counit zero on {relations} random-F relations"))
}

fn c7_fft2() -> Outcome {
    let r = fft2_check(2, 2, 1, 4);
    let dims: Vec<usize> = r.rows.iter().map(|x| x.kernel_dim).collect();
    // Degree-k part of the principal ideal (det) in 4 variables.
    let oracle: Vec<usize> = (0..=4).map(|k| if k < 2 { 0 } else { binom(k + 1, 3) }).collect();
    ensure!(r.passed() && dims == oracle, "(2,2,1): {dims:?} vs {oracle:?}, {:?}", r.failures);
    let r = fft2_check(3, 3, 2, 3);
    ensure!(r.passed() && r.rows[3].kernel_dim == 1, "(3,3,2): {:?}", r.failures);
    let r = fft2_check(2, 2, 2, 3);
    ensure!(r.passed() && r.rows.iter().all(|x| x.kernel_dim == 0 && x.minors_dim == 0), "(2,2,2): {:?}", r.failures);
    let (code, _) = cli(&["classical", "-m", "2", "-n", "2", "-t", "1", "--max-degree", "4"]);
    ensure!(code == 0, "cli exit {code}");
    Ok(format!("(2,2,1) kernel dims {dims:?}; (3,3,2) deg 3 dim 1; (2,2,2) zero"))
}

fn c8_fft1() -> Outcome {
    let r = fft1_check(2, 2, 1, 4);
    let dims: Vec<usize> = r.rows.iter().map(|x| x.invariants_dim).collect();
    // Hilbert function of the 2×2 determinantal hypersurface.
    let oracle: Vec<usize> = (0..=4).map(|k| (k + 1) * (k + 1)).collect();
    ensure!(r.passed() && dims == oracle, "(2,2,1): {dims:?} vs {oracle:?}, {:?}", r.failures);
    let r = fft1_check(2, 2, 2, 2);
    let dims2: Vec<usize> = r.rows.iter().map(|x| x.invariants_dim).collect();
    let oracle2: Vec<usize> = (0..=2).map(|k| binom(4 + k - 1, k)).collect();
    ensure!(r.passed() && dims2 == oracle2, "(2,2,2): {dims2:?} vs {oracle2:?}, {:?}", r.failures);
    Ok(format!("(2,2,1) dims {dims:?}; (2,2,2) dims {dims2:?}"))
}

fn c9_subalgebra() -> Outcome {
    let mut total = 0;
    for (m, n, t, f) in [(2, 2, 1, "preset:identity"), (1, 1, 2, "preset:jordan")] {
        let s = CoinvSetting::new(m, n, &f_of(f, t)).unwrap();
        let r = s.subalgebra_check(100, 4, 0x5eed).map_err(|e| e.to_string())?;
        ensure!(r.failures.is_empty() && r.certified == 100, "({m},{n},{t}) {f}: {:?}", r.failures);
        total += r.certified;
    }
    Ok(format!("{total} products certified, 0 failures"))
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, degree: usize) -> Word {
    let ls: Vec<u16> = (0..degree).map(|_| rng.gen_range(0..letters) as u16).collect();
    Word::from_letters(&ls)
}

/// `Σ c · a r b` over relations `r` and random words `a`, `b`.
fn ideal_element(rng: &mut ChaCha8Rng, p: &Presentation, d: usize) -> FreeElement {
    let g = p.generators();
    let mut x = FreeElement::zero(g);
    for _ in 0..rng.gen_range(1..=3) {
        let r = &p.relations()[rng.gen_range(0..p.relations().len())];
        let room = d - r.degree().unwrap();
        let da = rng.gen_range(0..=room);
        let db = rng.gen_range(0..=room - da);
        let a = FreeElement::word(g, random_word(rng, g.len(), da));
        let b = FreeElement::word(g, random_word(rng, g.len(), db));
        x.add_scaled(&Rational::new(rng.gen_range(1..=7), rng.gen_range(1..=5)), &(&(&a * r) * &b)).unwrap();
    }
    x
}

fn c10_soundness_and_determinism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let h = HopfPresentation::new(&FMatrix::jordan(2).unwrap()).unwrap();
    let q = h.quotient(4).unwrap();
    for _ in 0..100 {
        let x = ideal_element(&mut rng, h.presentation(), 4);
        ensure!(q.is_zero_mod(&x).unwrap() == Certification::CertifiedZero, "not certified: {x}");
    }
    let bin = env!("CARGO_BIN_EXE_coinv");
    let args = ["certify-fft", "-m", "2", "-n", "1", "-t", "2", "--F", "preset:jordan", "-k", "2", "--up-to", "--format", "json"];
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let out = Command::new(bin).args(args).output().unwrap();
            assert_eq!(out.status.code(), Some(0));
            out.stdout
        })
        .collect();
    ensure!(runs[0] == runs[1], "reports differ between runs");
    ensure!(!runs[0].is_empty(), "empty report");
    Ok(format!("100 ideal elements certified; {} byte report reproduced", runs[0].len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("squeeze certification", c1_squeeze),
        ("off-diagonal vanishing", c2_off_diagonal),
        ("theta injectivity", c3_theta_injective),
        ("coinvariant/morphism correspondence", c4_correspondence),
        ("Hom dimensions", c5_hom_dimensions),
        ("Hopf compatibility", c6_hopf),
        ("classical kernel = minors ideal", c7_fft2),
        ("classical invariants = image", c8_fft1),
        ("subalgebra property", c9_subalgebra),
        ("quotient soundness and determinism", c10_soundness_and_determinism),
    ];
    let mut failed = 0;
    for (idx, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", idx + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", idx + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
