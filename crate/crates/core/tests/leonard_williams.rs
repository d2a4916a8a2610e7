use niho_core::field::{make_field, ExtCtx, FieldCtx, FiniteField};
use niho_core::pp::{lw_cubic_irreducible, lw_unique_root, QuarticSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn roots_by_scan(f: &FieldCtx, coeffs: &[u64]) -> usize {
    (0..f.size())
        .filter(|&x| coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .count()
}

fn unique_root_agrees(f: &FieldCtx, a2: u64, a1: u64, a0: u64) -> bool {
    let scan = roots_by_scan(f, &[a0, a1, a2, 0, 1]) == 1;
    lw_unique_root(f, &QuarticSpec::new(a2, a1, a0)).unwrap() == scan
}

/// All triples with `α0 α1 ≠ 0`.
fn exhaustive_unique_root(n: u32) -> usize {
    let f = make_field(n).unwrap();
    let q = f.size();
    let mut triples = 0;
    for a2 in 0..q {
        for a1 in 1..q {
            for a0 in 1..q {
                assert!(unique_root_agrees(&f, a2, a1, a0), "q={q} ({a2:#x}, {a1:#x}, {a0:#x})");
                triples += 1;
            }
        }
    }
    triples
}

#[test]
fn unique_root_exhaustive_f8() {
    assert_eq!(exhaustive_unique_root(3), 392);
}

#[test]
fn unique_root_exhaustive_f16() {
    assert_eq!(exhaustive_unique_root(4), 3600);
}

#[test]
fn cubic_irreducibility_exhaustive_f16() {
    let e = ExtCtx::of_degree(4).unwrap();
    let f = e.base();
    for a2 in 0..16 {
        for a1 in 1..16 {
            let rootless = roots_by_scan(f, &[a1, a2, 0, 1]) == 0;
            assert_eq!(lw_cubic_irreducible(&e, a2, a1).unwrap(), rootless, "({a2:#x}, {a1:#x})");
        }
    }
}

#[test]
fn random_checks_f1024() {
    let e = ExtCtx::of_degree(10).unwrap();
    let f = e.base();
    let mut rng = ChaCha8Rng::seed_from_u64(1024);
    for _ in 0..10_000 {
        let (a2, a1, a0) = (rng.gen_range(0..1024), rng.gen_range(1..1024), rng.gen_range(1..1024));
        assert!(unique_root_agrees(f, a2, a1, a0), "({a2:#x}, {a1:#x}, {a0:#x})");
        let rootless = roots_by_scan(f, &[a1, a2, 0, 1]) == 0;
        assert_eq!(lw_cubic_irreducible(&e, a2, a1).unwrap(), rootless);
    }
}

#[test]
fn degenerate_inputs_are_rejected() {
    let f = make_field(3).unwrap();
    assert!(lw_unique_root(&f, &QuarticSpec::new(1, 0, 1)).is_err());
    assert!(lw_unique_root(&f, &QuarticSpec::new(1, 1, 0)).is_err());
    assert!(lw_cubic_irreducible(&ExtCtx::of_degree(3).unwrap(), 1, 0).is_err());
}
