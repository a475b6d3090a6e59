//! One line per acceptance criterion; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{build, small_corpus, Oracle};
use mfd_core::analysis::{Analysis, Options};
use mfd_core::arith::log_exact;
use mfd_core::catalog::{expand_catalog, Params};
use mfd_core::chartab::character_table;
use mfd_core::permdeg::realize_permutation;
use mfd_core::quasiperm::{galois_orbits, solve_c, CMode};
use mfd_core::verify::{run_suite, Status, Suite};
use mfd_core::Limits;

fn params(kv: &[(&str, i64)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

struct Run {
    a: Analysis,
    took: Duration,
}

fn run(family: &str, p: u64, kv: &[(&str, i64)], mu: bool) -> Result<Run, String> {
    let spec = expand_catalog(family, p, &params(kv)).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let a = Analysis::run(
        &spec,
        Options {
            mu,
            exhaustive_c: false,
        },
        &Limits::default(),
    )
    .map_err(|e| format!("{family}: {e}"))?;
    if let Some((stage, e)) = a.failures.first() {
        return Err(format!("{family}: {stage}: {e}"));
    }
    Ok(Run {
        a,
        took: start.elapsed(),
    })
}

fn c_of(r: &Run) -> u64 {
    r.a.c.as_ref().unwrap().c_value
}

fn mu_of(r: &Run) -> u64 {
    r.a.mu.as_ref().unwrap().mu_value
}

/// Checks `c` and the elapsed time of one group; returns a description.
fn expect_c(
    family: &str,
    p: u64,
    kv: &[(&str, i64)],
    want: u64,
    limit: Duration,
) -> Result<String, String> {
    let r = run(family, p, kv, false)?;
    let c = c_of(&r);
    let desc = format!("{family} p={p}: c={c} in {:.2}s", r.took.as_secs_f64());
    if c != want {
        return Err(format!("{desc}, expected {want}"));
    }
    if r.took > limit {
        return Err(format!("{desc}, over {}s", limit.as_secs()));
    }
    Ok(desc)
}

fn all(parts: Vec<Result<String, String>>) -> Result<String, String> {
    let failed: Vec<String> = parts.iter().filter_map(|r| r.clone().err()).collect();
    if failed.is_empty() {
        Ok(parts
            .into_iter()
            .map(Result::unwrap)
            .collect::<Vec<_>>()
            .join("; "))
    } else {
        Err(failed.join("; "))
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Position of the leading base-p digit of `c`, with exponent and top degree
/// exponents `(r, b, e)`.
fn digit_positions(r: &Run) -> (u32, u32, u32) {
    let p = r.a.structure.prime.unwrap();
    let top = r.a.c.as_ref().unwrap().base_p_digits.len() as u32;
    let b = log_exact(r.a.structure.exponent, p).unwrap();
    let e = log_exact(r.a.table.as_ref().unwrap().max_degree(), p).unwrap();
    (top, b, e)
}

fn criterion_1() -> Result<String, String> {
    all(vec![
        expect_c("xsp_p3_expP", 3, &[], 9, secs(5)),
        expect_c("xsp_p3_expP", 5, &[], 25, secs(5)),
    ])
}

fn criterion_2() -> Result<String, String> {
    let r = run("abelian", 3, &[("r1", 1), ("r2", 2)], true)?;
    let (c, mu) = (c_of(&r), mu_of(&r));
    let desc = format!("C3 x C9: c={c}, mu={mu} in {:.2}s", r.took.as_secs_f64());
    if c == 12 && mu == 12 && r.took <= secs(1) {
        Ok(desc)
    } else {
        Err(desc)
    }
}

fn criterion_3() -> Result<String, String> {
    let start = Instant::now();
    let h = run("xsp_x_cp", 3, &[], false)?;
    let k = run("xsp2_x_cp2", 3, &[], true)?;
    let took = start.elapsed();
    let desc = format!(
        "c(H x C3)={}, mu(H x C9)={} in {:.2}s",
        c_of(&h),
        mu_of(&k),
        took.as_secs_f64()
    );
    if c_of(&h) == 12 && mu_of(&k) == 18 && took <= secs(10) {
        Ok(desc)
    } else {
        Err(desc)
    }
}

fn criterion_4() -> Result<String, String> {
    all(vec![
        expect_c("phi4_221b", 5, &[], 150, secs(120)),
        expect_c("phi4_221f0", 5, &[], 250, secs(120)),
        expect_c("phi4_2111a", 5, &[], 50, secs(120)),
    ])
}

fn criterion_5() -> Result<String, String> {
    let g1 = run("phi10_g1", 5, &[], false)?;
    let g2 = run("phi10_g2", 5, &[], false)?;
    let g3 = run("phi12_g3", 5, &[], false)?;
    let (r1, b1, e1) = digit_positions(&g1);
    let (r2, b2, e2) = digit_positions(&g2);
    let (r3, b3, _) = digit_positions(&g3);
    let desc = format!(
        "c = {}, {}, {}; r={r1} b+e={} | {b2}<r={r2}<{} | r={r3} b={b3}",
        c_of(&g1),
        c_of(&g2),
        c_of(&g3),
        b1 + e1,
        b2 + e2
    );
    let ok = c_of(&g1) == 625
        && c_of(&g2) == 150
        && c_of(&g3) == 50
        && r1 == b1 + e1
        && b2 < r2
        && r2 < b2 + e2
        && r3 == b3;
    if ok {
        Ok(desc)
    } else {
        Err(desc)
    }
}

fn criterion_6() -> Result<String, String> {
    let r = run("phi9", 5, &[], false)?;
    let c = r.a.c.as_ref().unwrap();
    let linear = c.witness.iter().filter(|s| s.contains_linear).count();
    let desc = format!("c={}, linear sums in witness: {linear}", c.c_value);
    if c.c_value == 50 && linear == 1 {
        Ok(desc)
    } else {
        Err(desc)
    }
}

fn criterion_7() -> Result<String, String> {
    let budget = secs(1800);
    all(vec![
        expect_c("phi42_1", 5, &[], 625, budget),
        expect_c("phi42_2", 5, &[], 625, budget),
        expect_c("phi42_3k", 5, &[("k", 1)], 625, budget),
        expect_c("phi43_1", 5, &[], 625, budget),
        expect_c("phi43_2k", 5, &[("k", 1)], 625, budget),
    ])
}

fn criterion_8() -> Result<String, String> {
    let cases = [
        (4, 2, 25),
        (4, 3, 125),
        (5, 2, 25),
        (5, 3, 125),
        (5, 4, 625),
    ];
    all(cases
        .iter()
        .map(|&(n, i, want)| {
            let r = run("tower", 5, &[("n", n), ("i", i)], true)?;
            let m = r.a.mu.as_ref().unwrap();
            let action = realize_permutation(&r.a.group, &m.witness).map_err(|e| e.to_string())?;
            let desc = format!(
                "n={n} i={i}: mu={} in {:.2}s",
                m.mu_value,
                r.took.as_secs_f64()
            );
            if m.mu_value == want
                && m.optimal
                && action.degree as u64 == want
                && r.took <= secs(600)
            {
                Ok(desc)
            } else {
                Err(desc)
            }
        })
        .collect())
}

fn criterion_9() -> Result<String, String> {
    let budget = secs(1800);
    all(vec![
        expect_c("phi12_ex_g1", 5, &[], 150, budget),
        expect_c("phi12_ex_g2", 5, &[], 50, budget),
        expect_c("phi12_ex_g3", 5, &[], 250, budget),
    ])
}

fn criterion_10() -> Result<String, String> {
    let start = Instant::now();
    let mut counts = [0usize; 3];
    let mut failed = Vec::new();
    for suite in [Suite::Smoke, Suite::PaperP5, Suite::Stretch] {
        for r in run_suite(suite, &Limits::default(), None) {
            counts[r.status as usize] += 1;
            if r.status == Status::Fail {
                failed.push(format!("{} {} {}", r.group, r.params, r.check));
            }
        }
    }
    let desc = format!(
        "{} pass, {} fail, {} skipped in {:.1}s",
        counts[0],
        counts[1],
        counts[2],
        start.elapsed().as_secs_f64()
    );
    if failed.is_empty() {
        Ok(desc)
    } else {
        Err(format!("{desc}: {}", failed.join(", ")))
    }
}

fn criterion_11() -> Result<String, String> {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failed = Vec::new();
    let corpus = small_corpus();
    for (f, p, ps) in &corpus {
        let g = build(f, *p, ps);
        let oracle = Oracle::new(&g);
        let d = oracle.center_rank(*p);
        let t = character_table(&g, &limits).map_err(|e| e.to_string())?;
        let sums = galois_orbits(&t).map_err(|e| e.to_string())?;
        let fast =
            solve_c(&t, &sums, CMode::for_p_group(*p, d), &limits).map_err(|e| e.to_string())?;
        let full = solve_c(&t, &sums, CMode::Exhaustive, &limits).map_err(|e| e.to_string())?;
        let mu = mfd_core::permdeg::solve_mu(&g, &limits).map_err(|e| e.to_string())?;
        let want_mu = oracle.mu(*p);
        if fast.c_value != full.c_value || mu.mu_value != want_mu {
            failed.push(format!(
                "{f} p={p}: c {} vs {}, mu {} vs {want_mu}",
                fast.c_value, full.c_value, mu.mu_value
            ));
        }
    }
    let took = start.elapsed();
    let desc = format!("{} groups in {:.1}s", corpus.len(), took.as_secs_f64());
    if failed.is_empty() && took <= secs(300) {
        Ok(desc)
    } else {
        Err(format!("{desc}: {}", failed.join(", ")))
    }
}

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("class-2 formula on extraspecial p^3", criterion_1),
        ("abelian C3 x C9", criterion_2),
        ("direct products at p=3", criterion_3),
        ("order p^5 triple at p=5", criterion_4),
        ("digit positions at p=5", criterion_5),
        ("witness with a linear character", criterion_6),
        ("cyclic-center order p^6 groups", criterion_7),
        ("tower permutation degrees", criterion_8),
        ("order p^6 elementary-abelian example", criterion_9),
        ("property suites", criterion_10),
        ("small corpus against brute force", criterion_11),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("PASS {:>2} {name}: {d}", i + 1),
            Err(d) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {d}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
