//! From `D(D+E) = F` to three equations in `a, b1, k`.

use super::{certificate, equal, p, verdict, Recorder, Session, Verdict};
use crate::mvpoly::{
    pseudo_divrem, resultant, resultant_sylvester, substitute_rational, MvPoly, MvPolyError,
};

fn v(name: &str) -> MvPoly {
    MvPoly::var(name)
}

/// `Y`-coefficients of `D(D+E) + F` with formal `D_i, E_i, F_i`; `E3` is dropped when `e3_zero`.
pub(super) fn d_system(e3_zero: bool) -> Vec<MvPoly> {
    let series = |sym: &str, n: usize| -> MvPoly {
        (0..n)
            .filter(|&i| !(e3_zero && sym == "E" && i == 3))
            .map(|i| v(&format!("{sym}{i}")).mul(&MvPoly::monomial(&[("Y", i as u32)])))
            .fold(MvPoly::zero(), |acc, t| acc.add(&t))
    };
    let d = series("D", 4);
    let sys = d.mul(&d.add(&series("E", 4))).add(&series("F", 7));
    let mut c = sys.collect("Y");
    c.resize(7, MvPoly::zero());
    c
}

/// Eliminates the unknowns in `steps` one after another by pseudo-division and
/// returns the remainder with the exponents used.
pub(super) fn chain(f: &MvPoly, steps: &[(&MvPoly, &str)]) -> Result<(MvPoly, Vec<u32>), MvPolyError> {
    let mut r = f.clone();
    let mut exps = Vec::new();
    for (g, var) in steps {
        let pd = pseudo_divrem(&r, g, var)?;
        exps.push(pd.exponent);
        r = pd.remainder;
    }
    Ok((r, exps))
}

/// Finds `j` with `r = scale^j · target`.
pub(super) fn scaled_match(r: &MvPoly, target: &MvPoly, scale: &MvPoly, max: u32) -> Option<u32> {
    let mut t = target.clone();
    for j in 0..=max {
        if *r == t {
            return Some(j);
        }
        t = t.mul(scale);
    }
    None
}

/// Substitutes the derived `E_i`, `F_i` into a polynomial in those symbols.
pub(super) fn in_abk(s: &Session, poly: &MvPoly) -> Result<MvPoly, MvPolyError> {
    let d = s.derived()?;
    let names: Vec<String> = (0..4)
        .map(|i| format!("E{i}"))
        .chain((0..7).map(|i| format!("F{i}")))
        .collect();
    let vals: Vec<&MvPoly> = d.e.iter().chain(d.f.iter()).collect();
    let bindings: Vec<(&str, MvPoly)> = names
        .iter()
        .zip(vals)
        .filter(|(n, _)| poly.mentions(n))
        .map(|(n, v)| (n.as_str(), v.clone()))
        .collect();
    poly.substitute(&bindings)
}

pub(super) fn run(s: &Session, rec: &mut Recorder) {
    let sys = d_system(false);
    for (j, eq) in sys.iter().enumerate() {
        let name = format!("dsys_{j}");
        rec.check(&name, &format!("coefficient of Y^{j} in D(D+E) = F"), |_| {
            Ok(equal(eq, s.get(&name)?))
        });
    }

    // D2, D1, D0 are solved from the Y^5, Y^4, Y^3 equations with leading coefficient E3.
    for (target, source) in [("dred_1", 2), ("dred_2", 1), ("dred_3", 0)] {
        rec.check(
            &format!("{target}-reduction"),
            "remaining equations after eliminating D0, D1, D2",
            |notes| {
                let g = |j: usize| s.get(&format!("dsys_{j}"));
                let (r, exps) =
                    chain(g(source)?, &[(g(3)?, "D0"), (g(4)?, "D1"), (g(5)?, "D2")])?;
                notes.push(format!("pseudo-division exponents {exps:?} for D0, D1, D2"));
                let t = s.get(target)?;
                let max = exps.iter().sum();
                Ok(match scaled_match(&r, t, &v("E3"), max) {
                    Some(j) => {
                        notes.push(format!("remainder = E3^{j} * {target}"));
                        Verdict::Holds
                    }
                    None => Verdict::Fails(r.diff_witness(t, 6)),
                })
            },
        );
    }
    certificate::check(s, rec, 0, "reduced equations lie in the ideal of the D-system");

    for i in 1..=3 {
        let name = format!("H{i}");
        rec.check(&name, "D3 eliminated with the quadratic D3^2+D3 E3+F6", |_| {
            let (_, r) = s.get(&format!("dred_{i}"))?.divrem_monic(s.get("dred_quad")?, "D3")?;
            Ok(equal(&r, s.get(&name)?))
        });
    }

    let factor_checks = [("H1", "h1", 4, "1"), ("H2", "h2", 5, "(a^2 + b1^2*k)^2"), ("H3", "h3", 4, "1")];
    for (big, small, c4_exp, extra) in factor_checks {
        rec.check(
            &format!("{big}-factor"),
            &format!("{big} in a, b1, k equals C4^{c4_exp} {extra} {small}"),
            |_| {
                let lhs = in_abk(s, s.get(big)?)?;
                let rhs = s.derived()?.c[4].pow(c4_exp).mul(&p(extra)).mul(s.get(small)?);
                Ok(equal(&lhs, &rhs))
            },
        );
    }

    rec.check("k-degrees", "degrees in k of h1, h2, h3, h1', h3'", |notes| {
        let want = [("h1", 20), ("h2", 10), ("h3", 24), ("h1p", 9), ("h3p", 9)];
        let mut bad = Vec::new();
        for (n, d) in want {
            let got = s.get(n)?.degree_in("k").unwrap_or(0);
            notes.push(format!("deg_k {n} = {got}"));
            if got != d {
                bad.push(format!("{n}: {got} != {d}"));
            }
        }
        Ok(verdict(bad.is_empty(), || bad.join("; ")))
    });

    rec.check("a2+b1^2k", "h1 and h3 when k = a^2/b1^2", |notes| {
        let (num, den) = (p("a^2"), p("b1^2"));
        let h1 = substitute_rational(s.get("h1")?, "k", &num, &den)?;
        let h3 = substitute_rational(s.get("h3")?, "k", &num, &den)?;
        notes.push(format!("h1 cleared by b1^{}, h3 by b1^{}", 2 * h1.power, 2 * h3.power));
        let want1 = den.pow(h1.power).mul(&p("a^7*b1^10*(a^3 + b1 + a^2*b1)"));
        let want3 = den
            .pow(h3.power)
            .mul(&p("a^9*b1^12*(a^5 + b1 + a^4*b1 + b1^3 + a^4*b1^3)"));
        if h1.poly != want1 {
            return Ok(Verdict::Fails(format!("h1: {}", h1.poly.diff_witness(&want1, 6))));
        }
        Ok(equal(&h3.poly, &want3))
    });

    for (h, h_red, pw) in [("h1", "h1p", 8), ("h3", "h3p", 10)] {
        rec.check(
            &format!("{h}-congruence"),
            &format!("{h} reduced by h2 in k equals b1^{pw} {h_red}"),
            |notes| {
                let lhs = s.get(h)?.add(&v("b1").pow(pw).mul(s.get(h_red)?));
                let pd = pseudo_divrem(&lhs, s.get("h2")?, "k")?;
                notes.push(format!("pseudo-division exponent {}", pd.exponent));
                Ok(verdict(pd.remainder.is_zero(), || {
                    pd.remainder.diff_witness(&MvPoly::zero(), 6)
                }))
            },
        );
    }

    rec.check("E2-E3", "Res(E2, E3; a) = b1^17 k^2", |notes| {
        let d = s.derived()?;
        let r = resultant(&d.e[2], &d.e[3], "a")?;
        let r2 = resultant_sylvester(&d.e[2], &d.e[3], "a")?;
        notes.push("interpolation and Sylvester determinant agree".to_string());
        if r != r2 {
            return Ok(Verdict::Fails(format!("routes disagree: {}", r.diff_witness(&r2, 6))));
        }
        Ok(equal(&r, &p("b1^17*k^2")))
    });
}
