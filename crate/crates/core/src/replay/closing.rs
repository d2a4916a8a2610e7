//! The system once `E3 = 0`: elimination of `D3, D2, D1`, then `D0`, and the
//! `L` polynomials on the surviving curve.

use super::elimination::{chain, d_system, in_abk, scaled_match};
use super::{certificate, equal, p, Recorder, Session, Verdict};
use crate::mvpoly::{substitute_rational, MvPoly};

/// `(name, numerator, power of 1+a in the denominator)` of the closed forms.
const CLOSED_FORMS: [(&str, &str, u32); 3] = [
    ("L1", "a^24*(1+a^2+a^3)^6*(1+a+a^9)^2", 40),
    ("L2", "a^15*(1+a^2+a^3)^3*(1+a+a^9)", 25),
    (
        "L3",
        "a^16*(1+a^2+a^3)^5*(1+a^3+a^4)*(1+a^4+a^5+a^6+a^7+a^16+a^19+a^20+a^21)",
        36,
    ),
];

pub(super) fn run(s: &Session, rec: &mut Recorder) {
    for (j, eq) in d_system(true).iter().enumerate() {
        let name = format!("dsys0_{j}");
        rec.check(&name, &format!("coefficient of Y^{j} in D(D+E) = F with E3 = 0"), |_| {
            Ok(equal(eq, s.get(&name)?))
        });
    }

    // D3, D2, D1 are solved from the Y^3, Y^2, Y^1 equations with leading coefficient E0.
    for (target, source) in [("dred0_1", 6), ("dred0_2", 5), ("dred0_3", 4)] {
        rec.check(
            &format!("{target}-reduction"),
            "remaining equations after eliminating D3, D2, D1",
            |notes| {
                let g = |j: usize| s.get(&format!("dsys0_{j}"));
                let (r, exps) =
                    chain(g(source)?, &[(g(3)?, "D3"), (g(2)?, "D2"), (g(1)?, "D1")])?;
                notes.push(format!("pseudo-division exponents {exps:?} for D3, D2, D1"));
                let t = s.get(target)?;
                Ok(match scaled_match(&r, t, &MvPoly::var("E0"), exps.iter().sum()) {
                    Some(j) => {
                        notes.push(format!("remainder = E0^{j} * {target}"));
                        Verdict::Holds
                    }
                    None => Verdict::Fails(r.diff_witness(t, 6)),
                })
            },
        );
    }
    certificate::check(s, rec, 1, "reduced equations lie in the ideal of the system with E3 = 0");

    for i in 1..=3 {
        let name = format!("L{i}");
        rec.check(&name, "D0 eliminated with the quadratic D0^2+D0 E0+F0", |_| {
            let (_, r) = s.get(&format!("dred0_{i}"))?.divrem_monic(s.get("dred0_quad")?, "D0")?;
            Ok(equal(&r, s.get(&name)?))
        });
    }

    let (k_num, a2) = (p("(1+a)^5*(1+a^2+a^3)"), p("a^2"));
    let (b_num, b_den) = (p("a"), p("(1+a)^3"));
    for (name, num, den_exp) in CLOSED_FORMS {
        rec.check(
            &format!("{name}-closed"),
            &format!("{name} at k = (1+a)^5(1+a^2+a^3)/a^2, b1 = a/(1+a)^3 is {num}/(1+a)^{den_exp}"),
            |notes| {
                let l = in_abk(s, s.get(name)?)?;
                let ck = substitute_rational(&l, "k", &k_num, &a2)?;
                let cb = substitute_rational(&ck.poly, "b1", &b_num, &b_den)?;
                let (pa, pb) = (2 * ck.power, 3 * cb.power);
                notes.push(format!("cleared by a^{pa} (1+a)^{pb}"));
                // cb = a^pa (1+a)^pb L, so cb (1+a)^den_exp = a^pa (1+a)^pb num.
                let lhs = cb.poly.mul(&p("1+a").pow(den_exp));
                let rhs = p(num).mul(&p("a").pow(pa)).mul(&p("1+a").pow(pb));
                Ok(equal(&lhs, &rhs))
            },
        );
    }
    rec.check("k-vanishes", "1+a^2+a^3 divides the numerator of k", |_| {
        let q = k_num.div_exact(&p("1+a^2+a^3"))?;
        Ok(equal(&q, &p("(1+a)^5")))
    });
}
