//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use niho_core::field::{make_field, ExtCtx, FieldCtx, FiniteField};
use niho_core::mvpoly::{resultant, Corpus, CorpusEntry, MvPoly};
use niho_core::pp::{
    criterion, is_pp_exhaustive, is_pp_mu, lw_cubic_irreducible, lw_unique_root, QuarticSpec,
    TrinomialInstance,
};
use niho_core::replay::{run_all, RunReport, Stage, Status};
use niho_core::sweep::{verify_theorem, Necessity, SweepConfig};
use niho_core::unipoly::{resultant_formal, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, budget: Duration) -> Result<(), String> {
    ensure(t.elapsed() < budget, format!("took {:?}, budget {budget:?}", t.elapsed()))
}

fn rootless_by_scan(f: &FieldCtx) -> u64 {
    let q = f.size();
    (1..q)
        .filter(|&a| {
            let c = f.inv(a).unwrap();
            (0..q).all(|x| f.pow(x, 3) ^ x ^ c != 0)
        })
        .count() as u64
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    for n in [2, 3, 4] {
        let e = ExtCtx::of_degree(n).map_err(|e| e.to_string())?;
        let q = e.q();
        let (mut pairs, mut pps) = (0u64, 0u64);
        for a in 1..q {
            for bi in 1..q * q {
                let inst = TrinomialInstance::new(&e, a, e.element(bi)).map_err(|e| e.to_string())?;
                let ex = is_pp_exhaustive(&inst).map_err(|e| e.to_string())?;
                let mu = is_pp_mu(&inst);
                let cr = criterion(&inst).map_err(|e| e.to_string())?;
                ensure(ex == mu && mu == cr, format!("q={q}: oracles disagree at a={a:#x} b={}", e.format(inst.b())))?;
                pairs += 1;
                pps += ex as u64;
            }
        }
        let scan = rootless_by_scan(e.base());
        ensure(pps == scan, format!("q={q}: {pps} PPs vs {scan} rootless cubics"))?;
        parts.push(format!("q={q}: {pairs} pairs, {pps} PPs"));
    }
    ensure(parts[0].ends_with(" 1 PPs"), "q=4 must have exactly one PP")?;
    Ok(parts.join("; "))
}

fn sweep(n: u32, necessity: Necessity, workers: usize, seed: u64) -> Result<(String, u64), String> {
    let cfg = SweepConfig {
        n,
        necessity,
        exhaustive: false,
        workers,
        seed,
    };
    let r = verify_theorem(&cfg).map_err(|e| e.to_string())?;
    ensure(r.ok(), format!("q={}: {} disagreements, {} PPs vs {} rootless", r.q, r.disagreements.len(), r.pp_count, r.rootless_count))?;
    let line = format!(
        "q={}: {} diagonal + {} other pairs, {} PPs",
        r.q, r.diagonal_checked, r.off_diagonal_checked, r.pp_count
    );
    Ok((line, r.off_diagonal_checked))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let (a, others) = sweep(6, Necessity::All, 1, 0)?;
    ensure(others == 63 * 4095 - 63, format!("q=64 sweep size: {a}"))?;
    within(t, Duration::from_secs(300))?;
    let (b, _) = sweep(8, Necessity::Sampled(100_000), 8, 256)?;
    Ok(format!("{a}; {b}"))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    // A few samples land on the diagonal, which is swept separately.
    let budget = Necessity::Sampled(1_001_000);
    let (a, na) = sweep(10, budget, 8, 1024)?;
    let (b, nb) = sweep(12, budget, 8, 4096)?;
    ensure(na.min(nb) >= 1_000_000, "fewer than 10^6 off-diagonal samples")?;
    within(t, Duration::from_secs(3600))?;
    Ok(format!("{a}; {b}"))
}

fn roots_by_scan(f: &FieldCtx, coeffs: &[u64]) -> usize {
    (0..f.size())
        .filter(|&x| coeffs.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c) == 0)
        .count()
}

fn lw_i(f: &FieldCtx, a2: u64, a1: u64, a0: u64) -> Result<(), String> {
    let got = lw_unique_root(f, &QuarticSpec::new(a2, a1, a0)).map_err(|e| e.to_string())?;
    let scan = roots_by_scan(f, &[a0, a1, a2, 0, 1]) == 1;
    ensure(got == scan, format!("LW(i) over F_{}: ({a2:#x}, {a1:#x}, {a0:#x})", f.size()))
}

fn lw_ii(e: &ExtCtx, a2: u64, a1: u64) -> Result<(), String> {
    let got = lw_cubic_irreducible(e, a2, a1).map_err(|e| e.to_string())?;
    let scan = roots_by_scan(e.base(), &[a1, a2, 0, 1]) == 0;
    ensure(got == scan, format!("LW(ii) over F_{}: ({a2:#x}, {a1:#x})", e.q()))
}

fn criterion_4() -> Outcome {
    let mut counts = Vec::new();
    for n in [3, 4] {
        let f = make_field(n).map_err(|e| e.to_string())?;
        let q = f.size();
        let mut triples = 0;
        for a2 in 0..q {
            for a1 in 1..q {
                for a0 in 1..q {
                    lw_i(&f, a2, a1, a0)?;
                    triples += 1;
                }
            }
        }
        counts.push(format!("LW(i) F_{q}: {triples} triples"));
    }
    ensure(counts[0].ends_with(" 392 triples"), "F8 must have 392 valid triples")?;
    let e16 = ExtCtx::of_degree(4).map_err(|e| e.to_string())?;
    for a2 in 0..16 {
        for a1 in 1..16 {
            lw_ii(&e16, a2, a1)?;
        }
    }
    let e = ExtCtx::of_degree(10).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10_000 {
        let (a2, a1, a0) = (rng.gen_range(0..1024), rng.gen_range(1..1024), rng.gen_range(1..1024));
        lw_i(e.base(), a2, a1, a0)?;
        lw_ii(&e, a2, a1)?;
    }
    Ok(format!("{}; LW(ii) F_16: 240 pairs; F_1024: 10000 random", counts.join("; ")))
}

fn stage_summary(r: &RunReport, stages: &[Stage], budget: Duration, want: &[&str]) -> Outcome {
    let mut pass = 0;
    let mut display = 0;
    let mut millis = 0;
    let selected = || r.stages.iter().filter(|s| stages.contains(&s.stage));
    for s in selected() {
        millis += s.millis;
        for rec in &s.records {
            match rec.status {
                Status::Pass => pass += 1,
                Status::DisplayMismatch => display += 1,
                Status::Fail => {
                    return Err(format!("{}: {}", rec.id, rec.witness.as_deref().unwrap_or("")));
                }
            }
        }
    }
    for id in want {
        let rec = selected()
            .flat_map(|s| &s.records)
            .find(|x| x.id == *id)
            .ok_or(format!("identity {id} was not checked"))?;
        ensure(rec.status == Status::Pass, format!("{id} did not pass"))?;
    }
    ensure(Duration::from_millis(millis as u64) < budget, format!("took {millis} ms, budget {budget:?}"))?;
    Ok(format!("{pass} identities exact, {display} display mismatches recorded, {millis} ms"))
}

fn field_axioms<F: FiniteField>(f: &F, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mask = (f.order() - 1) as u64;
    for _ in 0..10_000 {
        let [x, y, z] = [0; 3].map(|_| f.element(rng.gen::<u64>() & mask));
        let ok = f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
            && f.mul(x, y) == f.mul(y, x)
            && f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
            && f.add(x, x) == f.zero()
            && f.mul(x, f.one()) == x
            && (x == f.zero() || f.mul(x, f.inv(x).unwrap()) == f.one());
        ensure(ok, format!("axiom failure in a field of 2^{} elements", f.bits()))?;
    }
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng) -> MvPoly {
    let mut p = MvPoly::zero();
    for _ in 0..rng.gen_range(2..7) {
        let m: Vec<(&str, u32)> = ["a", "b1", "k"].iter().map(|&v| (v, rng.gen_range(0..=4))).collect();
        p = p.add(&MvPoly::monomial(&m));
    }
    p
}

fn resultant_specialization(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let f = make_field(16).map_err(|e| e.to_string())?;
    let mut done = 0;
    while done < 100 {
        let (p, q) = (random_poly(rng), random_poly(rng));
        let (Some(m), Some(n)) = (p.degree_in("a"), q.degree_in("a")) else {
            continue;
        };
        if m == 0 || n == 0 {
            continue;
        }
        let r = resultant(&p, &q, "a").map_err(|e| e.to_string())?;
        let (b1, k) = (rng.gen_range(0..1 << 16), rng.gen_range(0..1 << 16));
        let value = |v: &str| match v {
            "b1" => Some(b1),
            "k" => Some(k),
            _ => None,
        };
        let spec = |p: &MvPoly| {
            let c = p.collect("a").iter().map(|c| c.eval(&f, value).unwrap()).collect();
            UniPoly::new(&f, c)
        };
        let lhs = r.eval(&f, value).map_err(|e| e.to_string())?;
        let rhs = resultant_formal(&spec(&p), &spec(&q), m as usize, n as usize).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, format!("specialization fails for Res({p}, {q}; a)"))?;
        done += 1;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let err = |e: niho_core::field::FieldError| e.to_string();
    for n in [2, 8, 16, 20, 24] {
        field_axioms(&make_field(n).map_err(err)?, &mut rng)?;
    }
    for n in [2, 10, 12] {
        field_axioms(&ExtCtx::of_degree(n).map_err(err)?, &mut rng)?;
    }
    resultant_specialization(&mut rng)?;

    let corpus = Corpus::builtin();
    for e in corpus.entries() {
        let back = CorpusEntry::parse_file(&e.to_file_text()).map_err(|x| x.to_string())?;
        ensure(&back == e, format!("{} does not round-trip", e.name))?;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    corpus.write_dir(dir.path()).map_err(|e| e.to_string())?;
    let path = dir.path().join("F6.poly");
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    std::fs::write(&path, text.replacen("a^12 + ", "", 1)).map_err(|e| e.to_string())?;
    let tampered = Corpus::load_dir(dir.path()).map_err(|e| e.to_string())?;
    let r = run_all(&tampered, &[Stage::Coefficients]).map_err(|e| e.to_string())?;
    let failed: Vec<_> = r.failures().collect();
    ensure(
        failed.len() == 1 && failed[0].id == "F6" && failed[0].witness.is_some(),
        format!("fault injection gave {} failures", failed.len()),
    )?;
    Ok(format!(
        "axioms on 8 contexts x 10^4 samples, 100 resultant specializations, {} corpus entries round-trip, fault injection isolated to F6",
        corpus.len()
    ))
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut report = |n: u32, name: &str, t: Instant, out: Outcome| {
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {n} PASS [{secs:.1}s] {name}: {msg}"),
            Err(msg) => {
                all_ok = false;
                println!("criterion {n} FAIL [{secs:.1}s] {name}: {msg}");
            }
        }
    };

    let t = Instant::now();
    report(1, "exhaustive equivalence q <= 16", t, criterion_1());
    let t = Instant::now();
    report(2, "q = 64 full and q = 256 sampled", t, criterion_2());
    let t = Instant::now();
    report(3, "q = 2^10 and 2^12 sufficiency plus 10^6 samples", t, criterion_3());
    let t = Instant::now();
    report(4, "Leonard-Williams criteria", t, criterion_4());

    let t = Instant::now();
    let replay = run_all(&Corpus::builtin(), &Stage::ALL);
    let replay_secs = t.elapsed();
    match replay {
        Ok(r) => {
            let corpus_ok = r.corpus.mismatches.is_empty();
            let t = Instant::now();
            let c5 = stage_summary(&r, &[Stage::Coefficients], Duration::from_secs(60), &["z-cancels", "C4", "E3", "F6"]);
            report(5, "replay: coefficients", t, c5.and_then(|m| {
                ensure(corpus_ok, "corpus digests do not match")?;
                Ok(m)
            }));
            let t = Instant::now();
            let c6 = stage_summary(
                &r,
                &[Stage::Elimination, Stage::Resultants],
                Duration::from_secs(20 * 60),
                &[
                    "H1-factor", "H2-factor", "H3-factor", "h1-congruence", "h3-congruence", "E2-E3",
                    "h1p-h2-a", "h2-h3p-a", "h1p-h2-b1", "h2-h3p-b1", "T2-T3-a", "T2-T3-k", "aux-b1",
                ],
            );
            report(6, "replay: elimination and resultants", t, c6);
            let t = Instant::now();
            let c7 = stage_summary(
                &r,
                &[Stage::Cases],
                Duration::from_secs(30 * 60),
                &[
                    "case1-res", "case2-gcd", "case2-E3", "case3.1-gcd", "S1-T4-k", "S1-T5-k", "S1-T6-k",
                    "T12-gcd", "T14-gcd", "T15-gcd", "T16-gcd", "T18-gcd", "T19-gcd",
                ],
            );
            report(7, "replay: cases", t, c7);
            let t = Instant::now();
            let c8 = stage_summary(
                &r,
                &[Stage::Closing, Stage::FixedB],
                Duration::from_secs(30 * 60),
                &["L1-closed", "L2-closed", "L3-closed", "F6", "D3", "unique-root-q4", "unique-root-q8", "unique-root-q16"],
            );
            report(8, "replay: closing and b in F_q", t, c8);
            println!("(full replay wall time {:.1}s)", replay_secs.as_secs_f64());
        }
        Err(e) => {
            for n in 5..=8 {
                report(n, "replay", t, Err(e.to_string()));
            }
        }
    }

    let t = Instant::now();
    report(9, "infrastructure properties", t, criterion_9());

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
