use std::sync::OnceLock;

use niho_core::field::{make_field, make_quotient_field, ExtCtx, FieldCtx, FiniteField};
use niho_core::mvpoly::Corpus;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

const SAMPLES: u32 = 10_000;

fn axioms<F: FiniteField>(f: &F, i: u64, j: u64, l: u64) -> Result<(), TestCaseError> {
    let mask = (f.order() - 1) as u64;
    let (x, y, z) = (f.element(i & mask), f.element(j & mask), f.element(l & mask));
    prop_assert_eq!(f.add(x, y), f.add(y, x));
    prop_assert_eq!(f.mul(x, y), f.mul(y, x));
    prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
    prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
    prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
    prop_assert_eq!(f.add(x, f.zero()), x);
    prop_assert_eq!(f.mul(x, f.one()), x);
    prop_assert_eq!(f.add(x, x), f.zero());
    prop_assert_eq!(f.square(f.add(x, y)), f.add(f.square(x), f.square(y)));
    if x != f.zero() {
        prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
    } else {
        prop_assert!(f.inv(x).is_err());
    }
    Ok(())
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(SAMPLES)
}

fn base(n: u32) -> FieldCtx {
    make_field(n).unwrap()
}

/// A degree-35 modulus taken from the corpus, where it is checked to be irreducible.
fn quotient() -> FieldCtx {
    let t14 = Corpus::builtin().get("T14").unwrap().clone();
    let m = t14
        .collect("b1")
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(0u64, |m, (i, _)| m | 1 << i);
    make_quotient_field(m).unwrap()
}

macro_rules! axiom_suite {
    ($($name:ident: $ty:ty => $ctx:expr;)*) => {$(
        proptest! {
            #![proptest_config(config())]
            #[test]
            fn $name(i in any::<u64>(), j in any::<u64>(), l in any::<u64>()) {
                static CTX: OnceLock<$ty> = OnceLock::new();
                axioms(CTX.get_or_init(|| $ctx), i, j, l)?;
            }
        }
    )*};
}

axiom_suite! {
    gf4: FieldCtx => base(2);
    gf256_tables: FieldCtx => base(8);
    gf2_16_tables: FieldCtx => base(16);
    gf2_20_software: FieldCtx => base(20);
    gf2_24_software: FieldCtx => base(24);
    quotient_degree_35: FieldCtx => quotient();
    ext_of_gf4: ExtCtx => ExtCtx::of_degree(2).unwrap();
    ext_of_gf1024: ExtCtx => ExtCtx::of_degree(10).unwrap();
    ext_of_gf4096: ExtCtx => ExtCtx::of_degree(12).unwrap();
}

#[test]
fn frobenius_fixes_exactly_the_base_field() {
    let e = ExtCtx::of_degree(3).unwrap();
    for i in 0..e.order() as u64 {
        let x = e.element(i);
        assert_eq!(e.frob(x) == x, x.is_base(), "{}", e.format(x));
        assert!(e.trace(x) < e.q() && e.norm(x) < e.q());
    }
}
