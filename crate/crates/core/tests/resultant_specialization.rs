//! `Res(f, g; x)` evaluated at a point equals the Sylvester determinant of the
//! specialized pair, sized by the formal degrees in `x`.

use niho_core::field::{make_field, FieldCtx};
use niho_core::mvpoly::{resultant, resultant_sylvester, MvPoly};
use niho_core::unipoly::{resultant_formal, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VARS: [&str; 3] = ["a", "b1", "k"];

fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32) -> MvPoly {
    let mut p = MvPoly::zero();
    for _ in 0..rng.gen_range(2..7) {
        let m: Vec<(&str, u32)> = VARS.iter().map(|&v| (v, rng.gen_range(0..=max_deg))).collect();
        p = p.add(&MvPoly::monomial(&m));
    }
    p
}

fn specialize(f: &FieldCtx, p: &MvPoly, var: &str, point: &[(&str, u64)]) -> UniPoly<FieldCtx> {
    let value = |v: &str| point.iter().find(|(n, _)| *n == v).map(|&(_, x)| x);
    let coeffs = p.collect(var).iter().map(|c| c.eval(f, value).unwrap()).collect();
    UniPoly::new(f, coeffs)
}

#[test]
fn specialization_commutes_with_the_resultant() {
    let f = make_field(16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut instances = 0;
    while instances < 100 {
        let p = random_poly(&mut rng, 4);
        let q = random_poly(&mut rng, 4);
        let var = VARS[rng.gen_range(0..3)];
        let (Some(m), Some(n)) = (p.degree_in(var), q.degree_in(var)) else {
            continue;
        };
        if m == 0 || n == 0 {
            continue;
        }
        let r = resultant(&p, &q, var).unwrap();
        if instances < 20 {
            assert_eq!(r, resultant_sylvester(&p, &q, var).unwrap());
        }
        for _ in 0..3 {
            let point: Vec<(&str, u64)> = VARS.iter().map(|&v| (v, rng.gen_range(0..1 << 16))).collect();
            let value = |v: &str| point.iter().find(|(n, _)| *n == v).map(|&(_, x)| x);
            let lhs = r.eval(&f, value).unwrap();
            let (sp, sq) = (specialize(&f, &p, var, &point), specialize(&f, &q, var, &point));
            let rhs = resultant_formal(&sp, &sq, m as usize, n as usize).unwrap();
            assert_eq!(lhs, rhs, "Res({p}, {q}; {var}) at {point:?}");
        }
        instances += 1;
    }
}
