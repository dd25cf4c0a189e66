//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Time limits are wall-clock seconds for the test
//! profile.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use braidcong::congruence::{
    bezout_decompose, in_congruence, is_pure, level2_equals_pure, random_member, random_pure_word_with, BezoutTarget,
    Level2Config,
};
use braidcong::dihedral::{
    derive_certificate, free_product_normal_form, growth_evidence, q_m, random_kernel_word, torsion_classify,
    verify_certificate, Torsion,
};
use braidcong::image::{check_dihedral, enumerate_image, ImageGens};
use braidcong::rep::{
    fig2_commutativity_witness, kure_sign, rho_v, rho_v_determinant, verify_relations, welded_relation_check,
    RelationFamily,
};
use braidcong::report::report_body;
use braidcong::report::ExperimentConfig;
use braidcong::suites::{run_suite, Suite};
use braidcong::word::{random_word_with, Alphabet, WordEnumerator};
use braidcong::{BraidWord, Generator};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn word(n: usize, letters: Vec<Generator>) -> BraidWord {
    BraidWord::new(n, letters).unwrap()
}

fn c1_relations() -> Verdict {
    let mut total = 0;
    for n in 2..=6usize {
        let report = verify_relations(n);
        ensure(report.passed(), || format!("n={n}: {:?}", report.families))?;
        let far = (n - 2) * n.saturating_sub(3) / 2;
        for f in &report.families {
            let expected = match f.family {
                RelationFamily::Classical => (n - 2) + far,
                RelationFamily::Virtual => (n - 2) + (n - 1) + far,
                RelationFamily::Mixed => (n - 2) + 2 * far,
            };
            ensure(f.instances == expected, || {
                format!("n={n} {:?}: {} instances, expected {expected}", f.family, f.instances)
            })?;
        }
        total += report.instances();
    }
    Ok(format!("{total} relation instances, 0 failures"))
}

fn level2(alphabet: Alphabet, pure_extra: bool) -> Verdict {
    let mut words = 0;
    for n in 2..=5usize {
        let exhaustive_len = if n <= 3 { 8 } else { 0 };
        let report = level2_equals_pure(Level2Config {
            n,
            exhaustive_len,
            samples: 10_000,
            sample_len: 20,
            seed: 2024 + n as u64,
            alphabet,
            budget: 10_000_000,
        })
        .map_err(e2s)?;
        ensure(report.passed(), || format!("n={n}: counterexample {}", report.counterexamples[0]))?;
        words += report.exhaustive_checked + report.random_checked + report.pure_checked;
    }
    if pure_extra {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for k in 0..10_000 {
            let n = 2 + k % 4;
            let w = random_pure_word_with(n, 25, Alphabet::Full, &mut rng).map_err(e2s)?;
            ensure(is_pure(&w) && in_congruence(&w, 2).map_err(e2s)?.in_subgroup, || {
                format!("pure word {w} not in level 2")
            })?;
        }
        words += 10_000;
    }
    Ok(format!("{words} words, 0 counterexamples"))
}

fn c4_kernel_witness() -> Verdict {
    for n in 2..=6 {
        for i in 1..n {
            let w = word(n, vec![Generator::sigma(i), Generator::tau(i), Generator::sigma(i), Generator::tau(i)]);
            ensure(rho_v(&w).is_identity(), || format!("rho_v({w}) != Id"))?;
        }
    }
    Ok("s_i t_i s_i t_i maps to Id over Z for n <= 6, all i".into())
}

fn c5_lcm() -> Verdict {
    let moduli: Vec<u64> = (1..=12).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pairs_in_lcm = 0;
    for k in 0..2000 {
        let n = 2 + k % 4;
        let w = if k < 1000 {
            let m = rng.gen_range(1..=12u64);
            let l = rng.gen_range(1..=12u64);
            random_member(n, m.lcm(&l), rng.gen_range(1..=3), 3, &mut rng).map_err(e2s)?
        } else {
            random_word_with(n, 20, Alphabet::Full, &mut rng).map_err(e2s)?
        };
        let image = rho_v(&w);
        let at = |k: u64| image.reduce_mod(k as i64).map(|x| x.is_identity()).map_err(e2s);
        for &m in &moduli {
            for &l in &moduli {
                let in_lcm = at(m.lcm(&l))?;
                pairs_in_lcm += usize::from(in_lcm);
                ensure((at(m)? && at(l)?) == in_lcm, || format!("{w} at m={m}, l={l}"))?;
            }
        }
    }
    ensure(pairs_in_lcm > 1000, || "constructed members never landed in a lcm level".into())?;
    Ok(format!("2000 words x 144 pairs consistent ({pairs_in_lcm} in the lcm level)"))
}

fn c6_product() -> Verdict {
    let mut count = 0;
    for l in (1..=15u64).step_by(2) {
        for n in 2..=5 {
            for i in 1..n {
                for target in [BezoutTarget::SigmaAt(i), BezoutTarget::TauAt(i)] {
                    let d = bezout_decompose(target, l, n).map_err(e2s)?;
                    let target_word = word(n, vec![target.generator()]);
                    ensure(in_congruence(&d.u, 2).map_err(e2s)?.in_subgroup, || format!("u={} not in level 2", d.u))?;
                    ensure(in_congruence(&d.v, l).map_err(e2s)?.in_subgroup, || format!("v={} not in level {l}", d.v))?;
                    ensure(d.u.concat(&d.v).map_err(e2s)?.free_reduce() == target_word, || {
                        format!("{} {} != {target_word}", d.u, d.v)
                    })?;
                    count += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..10_000 {
        let w = random_word_with(2 + k % 4, 20, Alphabet::Full, &mut rng).map_err(e2s)?;
        ensure(rho_v_determinant(&w) == kure_sign(&w), || format!("det != sgn for {w}"))?;
    }
    Ok(format!("{count} decompositions verified; det = sgn on 10000 words"))
}

fn c7_image() -> Verdict {
    for m in 1..=12u64 {
        let image = enumerate_image(2, m, ImageGens::VirtualBurau, 10_000_000, false).map_err(e2s)?;
        let expected = match m {
            1 => 1,
            2 => 2,
            _ => 2 * m as usize,
        };
        ensure(image.order() == expected, || format!("m={m}: order {} expected {expected}", image.order()))?;
        if m >= 3 {
            ensure(check_dihedral(&image).map_err(e2s)?, || format!("m={m}: dihedral check failed"))?;
        }
    }
    Ok("orders 1, 2, 6, 8, ..., 24; dihedral for m >= 3".into())
}

fn c8_fig2() -> Verdict {
    for n in [2usize, 3] {
        for m in [1u64, 2] {
            let w = fig2_commutativity_witness(n, m, 8).map_err(e2s)?;
            ensure(w.is_none(), || format!("n={n} m={m}: witness {}", w.unwrap()))?;
        }
        for m in 3..=9u64 {
            let w = fig2_commutativity_witness(n, m, 8).map_err(e2s)?;
            ensure(w.as_ref().is_some_and(|w| w.len() == 1), || format!("n={n} m={m}: witness {w:?}"))?;
        }
    }
    Ok("no witness for m = 1, 2 up to length 8; length-1 witness for m = 3..9".into())
}

fn c9_closure() -> Verdict {
    let mut certified = 0;
    let mut steps = 0;
    for m in 3..=9u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(900 + m);
        let mut words = Vec::new();
        for _ in 0..500 {
            let factors = rng.gen_range(1..=4);
            let conj_len = rng.gen_range(0..=8);
            words.push(random_kernel_word(m, factors, conj_len, &mut rng).map_err(e2s)?);
        }
        for w in WordEnumerator::new(2, 8, Alphabet::Full, 10_000_000).map_err(e2s)? {
            if q_m(&w, m).map_err(e2s)?.is_identity() {
                words.push(w);
            }
        }
        for w in &words {
            let cert = derive_certificate(w, m).map_err(|e| format!("{w} m={m}: {e}"))?;
            let text = serde_json::to_string(&cert.to_json()).map_err(e2s)?;
            ensure(braidcong::dihedral::verify_certificate_json(&text).map_err(e2s)?, || {
                format!("{w} m={m}: rejected")
            })?;
            ensure(verify_certificate(&cert).map_err(e2s)?, || format!("{w} m={m}: rejected"))?;
            certified += 1;
            steps += cert.steps.len();
        }
    }
    Ok(format!("{certified} certificates ({steps} steps) accepted"))
}

fn c10_growth() -> Verdict {
    let mut summary = Vec::new();
    for m in 3..=5u64 {
        let bound = 2 * m as usize + 2;
        let g = growth_evidence(m, bound).map_err(e2s)?;
        ensure(g.strictly_increasing(), || format!("m={m}: {:?}", g.per_length))?;
        for (k, &c) in g.per_length.iter().enumerate() {
            let j = (k / 2) as u32;
            let closed = if k == 0 {
                1
            } else if k % 2 == 0 {
                2 * (m - 1).pow(j)
            } else {
                (m - 1).pow(j) * m
            };
            ensure(c == closed, || format!("m={m} length {k}: {c} vs {closed}"))?;
        }
        let first = g.first_exceeding(2 * m);
        ensure(first.is_some_and(|l| l <= bound), || format!("m={m}: never exceeds {}", 2 * m))?;
        summary.push(format!("m={m} exceeds {} at L={}", 2 * m, first.unwrap()));
    }
    Ok(summary.join("; "))
}

fn c11_torsion() -> Verdict {
    let mut counts = [0usize; 3];
    for w in WordEnumerator::new(2, 8, Alphabet::Full, 10_000_000).map_err(e2s)? {
        let class = torsion_classify(&w).map_err(e2s)?;
        let squared = w.concat(&w).map_err(e2s)?;
        let square_trivial = free_product_normal_form(&squared, 0).map_err(e2s)?.is_identity();
        let trivial = free_product_normal_form(&w, 0).map_err(e2s)?.is_identity();
        ensure(square_trivial == (class != Torsion::Infinite), || {
            format!("{w}: {class} but square trivial = {square_trivial}")
        })?;
        ensure(trivial == (class == Torsion::Order1), || format!("{w}: {class} but trivial = {trivial}"))?;
        counts[match class {
            Torsion::Order1 => 0,
            Torsion::Order2 => 1,
            Torsion::Infinite => 2,
        }] += 1;
    }
    Ok(format!("order 1: {}, order 2: {}, infinite: {}", counts[0], counts[1], counts[2]))
}

fn c12_welded() -> Verdict {
    for n in 3..=6usize {
        let r = welded_relation_check(n).map_err(e2s)?;
        ensure(r.passed() && r.instances == n - 2, || format!("n={n}: {r:?}"))?;
        for i in 1..n - 1 {
            let lhs = word(n, vec![Generator::tau(i), Generator::sigma(i + 1), Generator::sigma(i)]);
            let rhs = word(n, vec![Generator::sigma(i + 1), Generator::sigma(i), Generator::tau(i + 1)]);
            ensure(rho_v(&lhs) == rho_v(&rhs), || format!("n={n} i={i}"))?;
        }
    }
    Ok("t_i s_(i+1) s_i = s_(i+1) s_i t_(i+1) under rho_v for n = 3..6".into())
}

fn strip_footer(text: &str) -> Result<&str, String> {
    text.find(",\n  \"footer\"").map(|k| &text[..k]).ok_or_else(|| "report has no footer".into())
}

fn c13_determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(e2s)?;
    let mut bodies = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("report{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_braidcong"))
            .args(["verify", "all", "--seed", "1", "--out"])
            .arg(&path)
            .stderr(std::process::Stdio::null())
            .status()
            .map_err(e2s)?;
        ensure(status.code() == Some(0), || format!("verify all exited with {status}"))?;
        bodies.push(std::fs::read_to_string(&path).map_err(e2s)?);
    }
    let (a, b) = (strip_footer(&bodies[0])?, strip_footer(&bodies[1])?);
    ensure(a == b, || "report bodies differ".into())?;
    ensure(report_body(&bodies[0]).map_err(e2s)? == report_body(&bodies[1]).map_err(e2s)?, || "bodies differ".into())?;
    let lib = run_suite(Suite::Torsion, &ExperimentConfig { seed: 1, ..Default::default() }).map_err(e2s)?;
    let lib_again = run_suite(Suite::Torsion, &ExperimentConfig { seed: 1, ..Default::default() }).map_err(e2s)?;
    ensure(lib.body_json() == lib_again.body_json(), || "library bodies differ".into())?;
    Ok(format!("two runs, identical {}-byte bodies", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "relations hold under rho_v, pi_v, pi_K (n = 2..6)", 5, c1_relations),
        (2, "classical level 2 equals pure braids", 30, || level2(Alphabet::Classical, false)),
        (3, "virtual level 2 equals pure virtual braids", 60, || level2(Alphabet::Full, true)),
        (4, "kernel witness s t s t is the identity", 1, c4_kernel_witness),
        (5, "intersection of levels is the lcm level", 60, c5_lcm),
        (6, "Bezout products and the determinant obstruction", 30, c6_product),
        (7, "two-strand image is dihedral of order 2m", 10, c7_image),
        (8, "commutative square only for m = 1, 2", 10, c8_fig2),
        (9, "relator certificates for ker q_m", 120, c9_closure),
        (10, "free product growth outruns the dihedral quotient", 5, c10_growth),
        (11, "torsion classification agrees with squares", 30, c11_torsion),
        (12, "welded relation under rho_v", 1, c12_welded),
        (13, "verify all is deterministic", 300, c13_determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if elapsed > Duration::from_secs(limit) => Err(format!("too slow ({detail})")),
            other => other,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        failed += usize::from(verdict.is_err());
        println!("{tag} {id:>2} {name} [{:.2}s / {limit}s] {detail}", elapsed.as_secs_f64());
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
