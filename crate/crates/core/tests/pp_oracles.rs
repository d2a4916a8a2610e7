use niho_core::field::{ExtCtx, ExtElem, FiniteField};
use niho_core::pp::{
    criterion, eval_f, fiber_quartic, is_pp_exhaustive, is_pp_mu, transport_check, transport_fiber,
    QuarticSource, TrinomialInstance,
};
use niho_core::sweep::sample_pair;

/// `#{a ∈ F_q^* : x^3 + x + 1/a ≠ 0 for every x ∈ F_q}` by a plain scan.
fn rootless_by_scan(e: &ExtCtx) -> u64 {
    let f = e.base();
    (1..e.q())
        .filter(|&a| {
            let c = f.inv(a).unwrap();
            (0..e.q()).all(|x| f.add(f.add(f.pow(x, 3), x), c) != 0)
        })
        .count() as u64
}

/// Runs all three oracles on every pair and returns the number of PPs.
fn exhaustive_agreement(n: u32) -> (u64, u64) {
    let e = ExtCtx::of_degree(n).unwrap();
    let q = e.q();
    let (mut pairs, mut pps) = (0, 0);
    for a in 1..q {
        for bi in 1..q * q {
            let inst = TrinomialInstance::new(&e, a, e.element(bi)).unwrap();
            let ex = is_pp_exhaustive(&inst).unwrap();
            let mu = is_pp_mu(&inst);
            let cr = criterion(&inst).unwrap();
            assert!(ex == mu && mu == cr, "q={q} a={a:#x} b={}: {ex} {mu} {cr}", e.format(inst.b()));
            pairs += 1;
            pps += ex as u64;
        }
    }
    assert_eq!(pps, rootless_by_scan(&e));
    (pairs, pps)
}

#[test]
fn oracles_agree_on_every_pair_q4() {
    assert_eq!(exhaustive_agreement(2), (45, 1));
}

#[test]
fn oracles_agree_on_every_pair_q8() {
    assert_eq!(exhaustive_agreement(3), (441, 3));
}

#[test]
fn oracles_agree_on_every_pair_q16() {
    assert_eq!(exhaustive_agreement(4), (3825, 5));
}

#[test]
fn random_pairs_agree_up_to_q64() {
    for n in [4, 5, 6] {
        let e = ExtCtx::of_degree(n).unwrap();
        for i in 0..10_000 {
            let (a, b) = sample_pair(&e, 7, i);
            let inst = TrinomialInstance::new(&e, a, b).unwrap();
            let mu = is_pp_mu(&inst);
            assert_eq!(mu, criterion(&inst).unwrap(), "n={n} sample {i}");
            if i % 50 == 0 {
                assert_eq!(mu, is_pp_exhaustive(&inst).unwrap(), "n={n} sample {i}");
            }
        }
    }
}

#[test]
fn diagonal_pairs_hit_the_criterion_at_q64() {
    let e = ExtCtx::of_degree(6).unwrap();
    for a in 1..e.q() {
        let inst = TrinomialInstance::new(&e, a, ExtElem::base(a)).unwrap();
        assert_eq!(is_pp_exhaustive(&inst).unwrap(), criterion(&inst).unwrap(), "a={a:#x}");
    }
}

/// A PP has no pole of g on the circle: 1 + a x + b x^3 has no root of norm 1.
#[test]
fn permutations_have_no_pole_on_the_circle() {
    for n in [2, 3, 4] {
        let e = ExtCtx::of_degree(n).unwrap();
        let mu = e.enumerate_mu();
        for a in 1..e.q() {
            for bi in 1..e.q() * e.q() {
                let inst = TrinomialInstance::new(&e, a, e.element(bi)).unwrap();
                if !is_pp_mu(&inst) {
                    continue;
                }
                let b = inst.b();
                for &x in &mu {
                    let v = e.add(e.add(ExtElem::ONE, e.scale(a, x)), e.mul(b, e.pow(x, 3)));
                    assert_ne!(v, ExtElem::ZERO);
                }
            }
        }
    }
}

#[test]
fn f_vanishes_only_at_zero_for_permutations() {
    let e = ExtCtx::of_degree(3).unwrap();
    let inst = (1..e.q())
        .map(|a| TrinomialInstance::new(&e, a, ExtElem::base(a)).unwrap())
        .find(is_pp_mu)
        .unwrap();
    let zeros = (0..e.order() as u64).filter(|&i| eval_f(&inst, e.element(i)) == ExtElem::ZERO).count();
    assert_eq!(zeros, 1);
}

/// Transported fibers and quartic roots describe the same set, and for a PP
/// the fibers partition F_q.
#[test]
fn fibers_match_quartic_roots() {
    for n in [2, 3, 4] {
        let e = ExtCtx::of_degree(n).unwrap();
        let q = e.q();
        let mut compared = 0;
        for a in 1..q {
            for bi in (1..q * q).step_by(3) {
                let Ok(inst) = TrinomialInstance::new(&e, a, e.element(bi)) else {
                    continue;
                };
                let f = e.base();
                let mut total = 0;
                let mut usable = true;
                for y in 0..q {
                    let (Ok(fiber), Ok(quartic)) = (transport_fiber(&inst, y), fiber_quartic(&inst, y)) else {
                        usable = false;
                        break;
                    };
                    let mut from_quartic: Vec<u64> = match quartic.source {
                        QuarticSource::SquaredDiagonal => {
                            quartic.roots.iter().map(|&r| f.sqrt(r)).collect()
                        }
                        _ => quartic.roots.clone(),
                    };
                    from_quartic.sort();
                    assert_eq!(fiber, from_quartic, "q={q} a={a:#x} b={} y={y:#x}", e.format(inst.b()));
                    total += fiber.len() as u64;
                }
                compared += usable as u32;
                if usable && is_pp_mu(&inst) {
                    assert_eq!(total, q);
                }
            }
        }
        assert!(compared > q as u32, "q={q}: only {compared} instances compared");
    }
}

#[test]
fn transport_check_agrees_with_fiber_membership() {
    let e = ExtCtx::of_degree(3).unwrap();
    let inst = TrinomialInstance::new(&e, 3, e.element(13)).unwrap();
    for y in 0..e.q() {
        let fiber = transport_fiber(&inst, y).unwrap();
        for x in 0..e.q() {
            assert_eq!(transport_check(&inst, x, y).unwrap(), fiber.contains(&x));
        }
    }
}
