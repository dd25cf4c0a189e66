//! The verification suites behind `braidcong verify`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::congruence::{
    bezout_decompose, in_congruence, is_pure, level2_equals_pure, product_obstruction, random_member, sample_seed,
    BezoutTarget, Level2Config,
};
use crate::dihedral::{
    derive_certificate, f_embed, free_product_normal_form, growth_evidence, level2_kernel_gap_witness,
    membership_via_qm, q_m, random_kernel_word, torsion_classify, verify_certificate, DihedralElement, Torsion,
};
use crate::error::{Error, Result};
use crate::image::{check_dihedral, dihedral_relations_hold, enumerate_image, quotient_report, ImageGens};
use crate::perm::Permutation;
use crate::rep::{
    fig2_commutativity_witness, kure_sign, relation_instances, rho_v, rho_v_determinant, rho_v_mod, verify_relations,
    welded_relation_check, RelationFamily,
};
use crate::report::{Check, ExperimentConfig, Report, Status};
use crate::word::{random_word_with, tau_section, Alphabet, BraidWord, Generator, WordEnumerator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Relations,
    Fig2,
    Arnold,
    Vpure,
    Lcm,
    Product,
    Welded,
    Dihedral,
    Closure,
    Torsion,
}

impl Suite {
    /// Every concrete suite, in report order.
    pub const EACH: [Suite; 10] = [
        Suite::Relations,
        Suite::Fig2,
        Suite::Arnold,
        Suite::Vpure,
        Suite::Lcm,
        Suite::Product,
        Suite::Welded,
        Suite::Dihedral,
        Suite::Closure,
        Suite::Torsion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Relations => "relations",
            Suite::Fig2 => "fig2",
            Suite::Arnold => "arnold",
            Suite::Vpure => "vpure",
            Suite::Lcm => "lcm",
            Suite::Product => "product",
            Suite::Welded => "welded",
            Suite::Dihedral => "dihedral",
            Suite::Closure => "closure",
            Suite::Torsion => "torsion",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Verdict, evidence, and an optional counterexample word.
type Outcome = (bool, Value, Option<String>);

fn run_check(report: &mut Report, id: String, anchor: &'static str, f: impl FnOnce(u64) -> Result<Outcome>) {
    let start = Instant::now();
    let seed = sample_seed(report.config.seed, salt(&id));
    let (status, evidence, counterexample) = match f(seed) {
        Ok((ok, evidence, cx)) => (if ok { Status::Pass } else { Status::Fail }, evidence, cx),
        Err(e @ Error::BudgetExceeded { .. }) => (Status::Skip, json!({ "reason": e.to_string() }), None),
        Err(e) => (Status::Fail, json!({ "error": e.to_string() }), None),
    };
    report.push(Check { id, anchor, status, evidence, counterexample }, start.elapsed().as_secs_f64());
}

/// FNV-1a, to give every check its own sample stream.
fn salt(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

fn rng_for(seed: u64, k: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sample_seed(seed, k))
}

fn word_of(n: usize, letters: Vec<Generator>) -> BraidWord {
    BraidWord::new(n, letters).expect("indices in range")
}

/// Runs one suite, or all of them in order.
pub fn run_suite(suite: Suite, config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let mut report = Report::new(config.clone());
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        match s {
            Suite::All => unreachable!("expanded above"),
            Suite::Relations => relations(&mut report),
            Suite::Fig2 => fig2(&mut report),
            Suite::Arnold => level2(&mut report, Alphabet::Classical),
            Suite::Vpure => {
                level2(&mut report, Alphabet::Full);
                vpure_extras(&mut report);
            }
            Suite::Lcm => lcm(&mut report),
            Suite::Product => product(&mut report),
            Suite::Welded => welded(&mut report),
            Suite::Dihedral => dihedral(&mut report),
            Suite::Closure => closure(&mut report),
            Suite::Torsion => torsion(&mut report),
        }
    }
    Ok(report)
}

fn relations(report: &mut Report) {
    for n in report.config.strands() {
        let result = verify_relations(n);
        for family in result.families {
            let anchor = match family.family {
                RelationFamily::Classical => "Classical relations",
                RelationFamily::Virtual => "Virtual relations",
                RelationFamily::Mixed => "Mixed relations",
            };
            let name = format!("{:?}", family.family).to_lowercase();
            run_check(report, format!("relations/{name}/n={n}"), anchor, |_| {
                let counterexample = relation_instances(n)
                    .into_iter()
                    .filter(|r| r.family == family.family)
                    .find(|r| {
                        rho_v(&r.lhs) != rho_v(&r.rhs)
                            || r.lhs.underlying_permutation() != r.rhs.underlying_permutation()
                            || r.lhs.kure_projection() != r.rhs.kure_projection()
                    })
                    .map(|r| r.lhs.concat(&r.rhs.inverse()).expect("same n").to_string());
                let evidence = json!({
                    "instances": family.instances,
                    "maps": ["rho_v", "pi_v", "pi_K"],
                    "failures": family.failures,
                });
                Ok((family.failures.is_empty(), evidence, counterexample))
            });
        }
        run_check(
            report,
            format!("relations/kernel-witness/n={n}"),
            "verified through direct matrix computation",
            |_| {
                let failing = (1..n)
                    .map(|i| {
                        word_of(n, vec![Generator::sigma(i), Generator::tau(i), Generator::sigma(i), Generator::tau(i)])
                    })
                    .find(|w| !rho_v(w).is_identity());
                Ok((failing.is_none(), json!({ "indices": n - 1, "over": "Z" }), failing.map(|w| w.to_string())))
            },
        );
    }
}

fn fig2(report: &mut Report) {
    let cfg = report.config.clone();
    for n in cfg.strands().filter(|&n| n <= 3) {
        let max_len = cfg.exhaustive_len(n);
        for m in cfg.moduli() {
            run_check(report, format!("fig2/n={n}/m={m}"), "commutative exactly when m=1,2", |_| {
                let witness = fig2_commutativity_witness(n, m, max_len)?;
                let ok = if m <= 2 { witness.is_none() } else { witness.as_ref().is_some_and(|w| w.len() == 1) };
                let shown = witness.as_ref().map(ToString::to_string);
                let evidence = json!({ "searched_len": max_len, "witness": shown });
                Ok((ok, evidence, if ok { None } else { shown }))
            });
        }
    }
}

fn level2(report: &mut Report, alphabet: Alphabet) {
    let cfg = report.config.clone();
    let (suite, anchor) = match alphabet {
        Alphabet::Classical => ("arnold", "B_n[2]=P_n"),
        Alphabet::Full => ("vpure", "vB_n[2]=vP_n"),
    };
    for n in cfg.strands() {
        run_check(report, format!("{suite}/n={n}"), anchor, |seed| {
            let r = level2_equals_pure(Level2Config {
                n,
                exhaustive_len: cfg.exhaustive_len(n),
                samples: cfg.samples,
                sample_len: cfg.sample_len,
                seed,
                alphabet,
                budget: cfg.budget,
            })?;
            let evidence = json!({
                "exhaustive_len": cfg.exhaustive_len(n),
                "exhaustive_checked": r.exhaustive_checked,
                "random_checked": r.random_checked,
                "pure_checked": r.pure_checked,
                "members": r.members,
                "counterexamples": r.counterexamples.len(),
            });
            Ok((r.passed(), evidence, r.counterexamples.first().map(ToString::to_string)))
        });
    }
}

fn vpure_extras(report: &mut Report) {
    let cfg = report.config.clone();
    for n in cfg.strands() {
        run_check(report, format!("vpure/semidirect/n={n}"), "vB_n ≅ vB_n[2]⋊(vB_n/vB_n[2])", |seed| {
            let count = (cfg.samples / 10).max(1);
            let failing = (0..count as u64)
                .into_par_iter()
                .map(|k| -> Result<Option<BraidWord>> {
                    let w = random_word_with(n, cfg.sample_len, Alphabet::Full, &mut rng_for(seed, k))?;
                    let (pure, p) = w.semidirect_factor();
                    let rebuilt = pure.concat(&tau_section(&p))?.free_reduce();
                    let ok = is_pure(&pure) && in_congruence(&pure, 2)?.in_subgroup && rebuilt == w.free_reduce();
                    Ok((!ok).then_some(w))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            Ok((failing.is_none(), json!({ "words": count }), failing.map(|w| w.to_string())))
        });
        run_check(report, format!("vpure/virtual-only/n={n}"), "must contain a classical crossing", |_| {
            let moduli: Vec<u64> = cfg.moduli().filter(|&m| m >= 2).collect();
            let mut checked = 0usize;
            for p in Permutation::all(n).into_iter().filter(|p| !p.is_identity()) {
                let w = tau_section(&p);
                for &m in &moduli {
                    checked += 1;
                    if in_congruence(&w, m)?.in_subgroup {
                        return Ok((false, json!({ "checked": checked, "modulus": m }), Some(w.to_string())));
                    }
                }
            }
            Ok((true, json!({ "checked": checked, "moduli": moduli }), None))
        });
    }
}

/// First `(m, ℓ)` with `(w ∈ [m] ∧ w ∈ [ℓ]) ≠ (w ∈ [lcm])`, and how many
/// pairs had `w ∈ [lcm]`.
fn lcm_consistency(w: &BraidWord, moduli: &[u64]) -> Result<(Option<(u64, u64)>, usize)> {
    let image = rho_v(w);
    let needed: BTreeSet<u64> =
        moduli.iter().flat_map(|&m| moduli.iter().flat_map(move |&l| [m, l, m.lcm(&l)])).collect();
    let mut level = HashMap::new();
    for k in needed {
        level.insert(k, image.reduce_mod(k as i64)?.is_identity());
    }
    let mut hits = 0;
    for &m in moduli {
        for &l in moduli {
            let in_lcm = level[&m.lcm(&l)];
            hits += usize::from(in_lcm);
            if (level[&m] && level[&l]) != in_lcm {
                return Ok((Some((m, l)), hits));
            }
        }
    }
    Ok((None, hits))
}

fn lcm(report: &mut Report) {
    let cfg = report.config.clone();
    let strands: Vec<usize> = cfg.strands().collect();
    type LcmSample = (BraidWord, Option<(u64, u64)>, usize);
    let moduli: Vec<u64> = cfg.moduli().collect();
    for constructed in [true, false] {
        let id = if constructed { "lcm/constructed" } else { "lcm/random" };
        run_check(report, id.to_string(), "divisible by lcm(ℓ,m)", |seed| {
            let results = (0..cfg.constructed as u64)
                .into_par_iter()
                .map(|k| -> Result<LcmSample> {
                    let mut rng = rng_for(seed, k);
                    let n = strands[k as usize % strands.len()];
                    let w = if constructed {
                        let m = moduli[rng.gen_range(0..moduli.len())];
                        let l = moduli[rng.gen_range(0..moduli.len())];
                        let factors = rng.gen_range(1..=3);
                        random_member(n, m.lcm(&l), factors, 3, &mut rng)?
                    } else {
                        random_word_with(n, cfg.sample_len, Alphabet::Full, &mut rng)?
                    };
                    let (bad, hits) = lcm_consistency(&w, &moduli)?;
                    Ok((w, bad, hits))
                })
                .collect::<Result<Vec<_>>>()?;
            let hits: usize = results.iter().map(|r| r.2).sum();
            let failure = results.iter().find(|r| r.1.is_some());
            let evidence = json!({
                "words": results.len(),
                "pairs_per_word": moduli.len() * moduli.len(),
                "pairs_in_lcm_level": hits,
                "failing_pair": failure.and_then(|r| r.1),
            });
            Ok((failure.is_none(), evidence, failure.map(|r| r.0.to_string())))
        });
    }
    for n in cfg.strands() {
        run_check(report, format!("lcm/sigma-power/n={n}"), "σ_i^m ∈ B_n[m]", |_| {
            for i in 1..n {
                for m in cfg.moduli() {
                    for k in 1..=m {
                        let w = BraidWord::sigma_power(n, i, k as i64)?;
                        if rho_v_mod(&w, m)?.is_identity() != (k == m) {
                            return Ok((false, json!({ "modulus": m, "power": k }), Some(w.to_string())));
                        }
                    }
                }
            }
            Ok((true, json!({ "indices": n - 1, "moduli": [cfg.m_min, cfg.m_max] }), None))
        });
    }
}

fn product(report: &mut Report) {
    let cfg = report.config.clone();
    for l in (1..=cfg.l_max).step_by(2) {
        run_check(report, format!("product/bezout/l={l}"), "2a+ℓb=1", |_| {
            let mut count = 0;
            for n in cfg.strands() {
                for i in 1..n {
                    for target in [BezoutTarget::SigmaAt(i), BezoutTarget::TauAt(i)] {
                        let d = bezout_decompose(target, l, n)?;
                        count += 1;
                        if !d.verify()? {
                            let shown = format!("{} {}", d.u, d.v);
                            return Ok((false, json!({ "n": n, "target": format!("{:?}", target) }), Some(shown)));
                        }
                    }
                }
            }
            let example = bezout_decompose(BezoutTarget::TauAt(1), l, cfg.n_min)?;
            let evidence = json!({
                "a": example.a,
                "b": example.b,
                "decompositions": count,
                "example": { "target": "t1", "u": example.u.to_string(), "v": example.v.to_string() },
            });
            Ok((true, evidence, None))
        });
    }
    run_check(report, "product/determinant".into(), "det(ρ_v(σ_i))=1 and det(ρ_v(τ_i))=−1", |seed| {
        let strands: Vec<usize> = cfg.strands().collect();
        let failing = (0..cfg.samples as u64)
            .into_par_iter()
            .map(|k| -> Result<Option<BraidWord>> {
                let n = strands[k as usize % strands.len()];
                let w = random_word_with(n, cfg.sample_len, Alphabet::Full, &mut rng_for(seed, k))?;
                Ok((rho_v_determinant(&w) != kure_sign(&w)).then_some(w))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        Ok((failing.is_none(), json!({ "words": cfg.samples }), failing.map(|w| w.to_string())))
    });
    for (m, l) in [(3u64, 3u64), (3, 5), (4, 6), (5, 7)] {
        run_check(report, format!("product/obstruction/m={m},l={l}"), "if and only if m=2 and ℓ is odd", |seed| {
            let n = cfg.n_min;
            let witness = word_of(n, vec![Generator::tau(1)]);
            let excluded = !product_obstruction(&witness, m, l)?;
            let count = (cfg.samples / 100).max(1);
            let mut rng = rng_for(seed, 0);
            let mut products_ok = true;
            for _ in 0..count {
                let u = random_member(n, m, 2, 3, &mut rng)?;
                let v = random_member(n, l, 2, 3, &mut rng)?;
                products_ok &= product_obstruction(&u.concat(&v)?, m, l)?;
            }
            let evidence = json!({
                "witness": witness.to_string(),
                "witness_det": rho_v_determinant(&witness).to_string(),
                "products_checked": count,
            });
            Ok((excluded && products_ok, evidence, None))
        });
    }
}

fn welded(report: &mut Report) {
    let cfg = report.config.clone();
    for n in cfg.n_min.max(3)..=cfg.n_max.max(3) {
        run_check(report, format!("welded/n={n}"), "factors through the quotient", |_| {
            let r = welded_relation_check(n)?;
            let counterexample = (1..n - 1)
                .map(|i| {
                    let lhs = word_of(n, vec![Generator::tau(i), Generator::sigma(i + 1), Generator::sigma(i)]);
                    let rhs = word_of(n, vec![Generator::sigma(i + 1), Generator::sigma(i), Generator::tau(i + 1)]);
                    lhs.concat(&rhs.inverse()).expect("same n")
                })
                .find(|w| !rho_v(w).is_identity())
                .map(|w| w.to_string());
            let evidence = json!({
                "instances": r.instances,
                "companion_instances": r.companion_instances,
                "failures": r.failures,
                "companion_failures": r.companion_failures,
            });
            Ok((r.passed(), evidence, counterexample))
        });
    }
}

fn dihedral(report: &mut Report) {
    let cfg = report.config.clone();
    for m in cfg.moduli() {
        let anchor = if m >= 3 { "the infinite Dihedral group" } else { "as long as m≠2" };
        run_check(report, format!("dihedral/image/m={m}"), anchor, |_| {
            let image = enumerate_image(2, m, ImageGens::VirtualBurau, cfg.budget, false)?;
            let dihedral = check_dihedral(&image)?;
            let order = image.order() as u64;
            let ok = match m {
                1 => order == 1 && !dihedral,
                2 => order == 2 && !dihedral,
                _ => order == 2 * m && dihedral,
            };
            Ok((
                ok,
                json!({ "order": order, "dihedral": dihedral, "relations_hold": dihedral_relations_hold(m) }),
                None,
            ))
        });
    }
    run_check(report, "dihedral/f-injective".into(), "is an injective group homomorphism", |_| {
        let elements: Vec<DihedralElement> =
            (-50..=50).flat_map(|a| [DihedralElement { a, b: false }, DihedralElement { a, b: true }]).collect();
        let distinct =
            elements.iter().map(|&d| f_embed(d)).collect::<std::collections::HashSet<_>>().len() == elements.len();
        let mut homomorphic = true;
        for &x in elements.iter().step_by(3) {
            for &y in elements.iter().step_by(7) {
                homomorphic &= f_embed(crate::dihedral::dihedral_mul(x, y, 0)) == f_embed(x).mul(&f_embed(y))?;
            }
        }
        let collapses_mod_2 =
            f_embed(DihedralElement::S).reduce_mod(2)? == f_embed(DihedralElement::T).reduce_mod(2)?;
        let evidence = json!({ "range": [-50, 50], "distinct": distinct, "homomorphic": homomorphic, "collapses_mod_2": collapses_mod_2 });
        Ok((distinct && homomorphic && collapses_mod_2, evidence, None))
    });
    run_check(report, "dihedral/square".into(), "the infinite Dihedral group", |seed| {
        let moduli: Vec<u64> = cfg.moduli().filter(|&m| m >= 3).collect();
        let failing = (0..cfg.samples as u64)
            .into_par_iter()
            .map(|k| -> Result<Option<BraidWord>> {
                let w = random_word_with(2, cfg.sample_len, Alphabet::Full, &mut rng_for(seed, k))?;
                let image = rho_v(&w);
                let mut ok = f_embed(q_m(&w, 0)?) == image;
                for &m in &moduli {
                    ok &= f_embed(q_m(&w, m)?).reduce_mod(m as i64)? == image.reduce_mod(m as i64)?;
                }
                Ok((!ok).then_some(w))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        Ok((failing.is_none(), json!({ "words": cfg.samples, "moduli": moduli }), failing.map(|w| w.to_string())))
    });
    run_check(report, "dihedral/realized".into(), "the infinite Dihedral group", |_| {
        let len = cfg.exhaustive_len_n2;
        let mut realized = BTreeSet::new();
        for w in WordEnumerator::new(2, len, Alphabet::Full, cfg.budget)? {
            let d = q_m(&w, 0)?;
            if f_embed(d) != rho_v(&w) {
                return Ok((false, json!({ "len": len }), Some(w.to_string())));
            }
            realized.insert(d);
        }
        let reach = len as i64;
        let expected = (-reach..=reach)
            .map(|a| DihedralElement { a, b: false })
            .chain((1 - reach..reach).map(|a| DihedralElement { a, b: true }));
        let missing: Vec<String> = expected.filter(|d| !realized.contains(d)).map(|d| d.to_string()).collect();
        let evidence = json!({ "len": len, "realized": realized.len(), "missing": missing });
        Ok((missing.is_empty(), evidence, None))
    });
    for m in cfg.moduli().filter(|&m| m >= 3) {
        run_check(report, format!("dihedral/kernel/m={m}"), "the following short exact sequence", |seed| {
            let exhaustive: Vec<BraidWord> =
                WordEnumerator::new(2, cfg.exhaustive_len_n2, Alphabet::Full, cfg.budget)?.collect();
            let random: Vec<BraidWord> = (0..cfg.samples as u64)
                .map(|k| random_word_with(2, cfg.sample_len, Alphabet::Full, &mut rng_for(seed, k)))
                .collect::<Result<_>>()?;
            let mut members = 0;
            for w in exhaustive.iter().chain(&random) {
                let via_q = membership_via_qm(w, m)?;
                members += usize::from(via_q);
                if via_q != in_congruence(w, m)?.in_subgroup {
                    return Ok((false, json!({ "modulus": m }), Some(w.to_string())));
                }
            }
            let evidence = json!({ "exhaustive": exhaustive.len(), "random": random.len(), "members": members });
            Ok((true, evidence, None))
        });
    }
    run_check(report, "dihedral/level2".into(), "as long as m≠2", |_| {
        let len = cfg.exhaustive_len_n2;
        for w in WordEnumerator::new(2, len, Alphabet::Full, cfg.budget)? {
            let member = in_congruence(&w, 2)?.in_subgroup;
            if member != (w.len() % 2 == 0) || member != is_pure(&w) {
                return Ok((false, json!({ "len": len }), Some(w.to_string())));
            }
        }
        let witness = level2_kernel_gap_witness(len, cfg.budget)?;
        let evidence = json!({
            "len": len,
            "gap_witness": witness.as_ref().map(ToString::to_string),
            "witness_q2": witness.as_ref().map(|w| q_m(w, 2).map(|d| d.to_string())).transpose()?,
        });
        Ok((witness.is_some(), evidence, None))
    });
    run_check(report, "dihedral/quotient/n=3,m=2".into(), "vB_n[2]=vP_n", |_| {
        let q = quotient_report(&enumerate_image(3, 2, ImageGens::VirtualBurau, cfg.budget, false)?, cfg.budget)?;
        let ok = q.order == 6 && q.contains_permutations && q.classical_embeds == Some(true);
        Ok((ok, serde_json::to_value(&q).expect("serializes"), None))
    });
    let lagrange: Vec<(usize, u64)> = (2..=3)
        .flat_map(|n| cfg.moduli().filter(|&m| (2..=8).contains(&m)).map(move |m| (n, m)))
        .chain([(4, 2)])
        .collect();
    for (n, m) in lagrange {
        run_check(report, format!("dihedral/lagrange/n={n},m={m}"), "ker(r_m∘ρ_v)", |_| {
            let image = enumerate_image(n, m, ImageGens::VirtualBurau, cfg.budget, false)?;
            let factorial: usize = (1..=n).product();
            let ok = image.order() % factorial == 0 && (m != 2 || image.order() == factorial);
            Ok((ok, json!({ "order": image.order(), "n_factorial": factorial }), None))
        });
    }
}

fn closure(report: &mut Report) {
    let cfg = report.config.clone();
    for m in cfg.moduli().filter(|&m| (3..=9).contains(&m)) {
        run_check(report, format!("closure/m={m}"), "⟨⟨στστ, σ^m⟩⟩", |seed| {
            let mut words: Vec<BraidWord> = (0..cfg.certificates as u64)
                .map(|k| {
                    let mut rng = rng_for(seed, k);
                    let factors = rng.gen_range(1..=4);
                    let conj_len = rng.gen_range(0..=6);
                    random_kernel_word(m, factors, conj_len, &mut rng)
                })
                .collect::<Result<_>>()?;
            let random = words.len();
            for w in WordEnumerator::new(2, cfg.exhaustive_len_n2, Alphabet::Full, cfg.budget)? {
                if q_m(&w, m)?.is_identity() {
                    words.push(w);
                }
            }
            let results = words
                .par_iter()
                .map(|w| -> Result<(bool, usize)> {
                    let cert = derive_certificate(w, m)?;
                    Ok((verify_certificate(&cert)? && in_congruence(w, m)?.in_subgroup, cert.steps.len()))
                })
                .collect::<Result<Vec<_>>>()?;
            let failing = results.iter().position(|r| !r.0);
            let evidence = json!({
                "random": random,
                "exhaustive": words.len() - random,
                "total_steps": results.iter().map(|r| r.1).sum::<usize>(),
                "max_steps": results.iter().map(|r| r.1).max(),
            });
            Ok((failing.is_none(), evidence, failing.map(|k| words[k].to_string())))
        });
    }
    for m in cfg.moduli().filter(|&m| (3..=5).contains(&m)) {
        run_check(report, format!("closure/growth/m={m}"), "is infinite index in vB_2", |_| {
            let bound = 2 * m as usize + 2;
            let g = growth_evidence(m, bound)?;
            let first = g.first_exceeding(2 * m);
            let ok = g.strictly_increasing() && first.is_some_and(|l| l <= bound);
            let evidence = json!({
                "per_length": g.per_length,
                "cumulative": g.cumulative,
                "dihedral_order": 2 * m,
                "first_exceeding": first,
            });
            Ok((ok, evidence, None))
        });
    }
}

/// `torsion_classify` against powers of the normal form.
fn torsion_consistent(w: &BraidWord) -> Result<(bool, Torsion)> {
    let class = torsion_classify(w)?;
    let x = free_product_normal_form(w, 0)?;
    let square_trivial = x.pow(2).is_identity();
    let ok = match class {
        Torsion::Order1 => x.is_identity(),
        Torsion::Order2 => !x.is_identity() && square_trivial,
        Torsion::Infinite => (1..=6).all(|k| !x.pow(k).is_identity()),
    };
    Ok((ok && square_trivial == (class != Torsion::Infinite), class))
}

fn torsion(report: &mut Report) {
    let cfg = report.config.clone();
    for exhaustive in [true, false] {
        let id = if exhaustive { "torsion/exhaustive" } else { "torsion/random" };
        run_check(report, id.to_string(), "must be order 2", |seed| {
            let words: Vec<BraidWord> = if exhaustive {
                WordEnumerator::new(2, cfg.exhaustive_len_n2, Alphabet::Full, cfg.budget)?.collect()
            } else {
                (0..cfg.samples as u64)
                    .map(|k| random_word_with(2, cfg.sample_len, Alphabet::Full, &mut rng_for(seed, k)))
                    .collect::<Result<_>>()?
            };
            let mut histogram = BTreeMap::new();
            for w in &words {
                let (ok, class) = torsion_consistent(w)?;
                if !ok {
                    return Ok((false, json!({ "class": class.to_string() }), Some(w.to_string())));
                }
                *histogram.entry(class.to_string()).or_insert(0usize) += 1;
            }
            Ok((true, json!({ "words": words.len(), "classes": histogram }), None))
        });
    }
}
