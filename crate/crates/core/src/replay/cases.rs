//! The case split on `a = 1`, `T1 = 0` and the factors of `Res(T2, T3; a)`.

use std::cell::OnceCell;

use super::resultants::check_resultant;
use super::{equal, p, verdict, Recorder, Session, Verdict};
use crate::field::{make_field, make_quotient_field, FieldCtx};
use crate::gf2x;
use crate::mvpoly::{gcd_univariate, resultant, substitute_rational, AlgebraicContext, MvPoly, MvPolyError};
use crate::unipoly::UniPoly;

/// `(1+a)^5 (1+a^2+a^3)`, the numerator of `k` on the curve `T1 = 0`.
const CASE2_K_NUM: &str = "(1+a)^5*(1+a^2+a^3)";
/// The common factor split off on `T1 = 0`; it vanishes exactly when `b1 = a/(1+a)^3`.
const CASE2_FACTOR: &str = "a + b1 + a*b1 + a^2*b1 + a^3*b1";

/// One branch of the `S1 = 0` case: the `T` factor of `Res(T2, T3; a)`, the
/// minimal polynomial of `b1`, the printed value of `k` and the expected gcd.
struct Branch {
    t: &'static str,
    min_poly: &'static str,
    k_shown: &'static str,
    gcd: &'static str,
}

const BRANCHES: [Branch; 6] = [
    Branch {
        t: "T4",
        min_poly: "T12",
        k_shown: "b1+b1^3+b1^4",
        gcd: "1+a",
    },
    Branch {
        t: "T4",
        min_poly: "T14",
        k_shown: "b1^2+b1^4+b1^6+b1^7+b1^10+b1^11+b1^18+b1^21+b1^22+b1^24+b1^25+b1^26+b1^27+b1^30",
        gcd: "(1+a)^3",
    },
    Branch {
        t: "T5",
        min_poly: "T15",
        k_shown: "b1^3+b1^6+b1^8+b1^9",
        gcd: "1",
    },
    Branch {
        t: "T5",
        min_poly: "T16",
        k_shown: "b1^2+b1^3+b1^4+b1^6+b1^11",
        gcd: "1+a",
    },
    Branch {
        t: "T6",
        min_poly: "T18",
        k_shown: "1+b1+b1^2+b1^3+b1^5+b1^6+b1^8+b1^11+b1^12+b1^14+b1^15+b1^16+b1^18",
        gcd: "1+a",
    },
    Branch {
        t: "T6",
        min_poly: "T19",
        k_shown: "b1^8+b1^9+b1^10+b1^12+b1^16+b1^17+b1^18+b1^19",
        gcd: "1",
    },
];

fn f2_poly(poly: &MvPoly, var: &str) -> Result<UniPoly<FieldCtx>, MvPolyError> {
    poly.to_unipoly(&make_field(1)?, var)
}

/// Bit encoding of a polynomial in `var` alone.
fn bits(poly: &MvPoly, var: &str) -> Result<u128, MvPolyError> {
    let mut out = 0u128;
    for (i, c) in poly.collect(var).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_one() || i >= 128 {
            return Err(MvPolyError::Unbound(format!("{poly} is not univariate in {var}")));
        }
        out |= 1 << i;
    }
    Ok(out)
}

fn from_bits(mut x: u64, var: &str) -> MvPoly {
    let mut acc = MvPoly::zero();
    let mut i = 0;
    while x != 0 {
        if x & 1 == 1 {
            acc = acc.add(&MvPoly::monomial(&[(var, i)]));
        }
        x >>= 1;
        i += 1;
    }
    acc
}

/// `poly` in `b1, k` as a polynomial in `k` over `F2[b1]/(m)`.
fn over_quotient(field: &FieldCtx, poly: &MvPoly) -> Result<UniPoly<FieldCtx>, MvPolyError> {
    let coeffs = poly
        .collect("k")
        .iter()
        .map(|c| Ok(gf2x::reduce(bits(c, "b1")?, field.modulus())))
        .collect::<Result<Vec<_>, MvPolyError>>()?;
    Ok(UniPoly::new(field, coeffs))
}

/// The root in `k` of the gcd of `S1` and `t` over `F2(b1)` with `b1` a root of `m`.
fn k_by_euclid(s: &Session, t: &MvPoly, m: &MvPoly) -> Result<Result<MvPoly, String>, MvPolyError> {
    let field = make_quotient_field(bits(m, "b1")? as u64)?;
    let g = over_quotient(&field, s.get("S1")?)?
        .gcd(&over_quotient(&field, t)?)
        .map_err(|e| MvPolyError::Corpus(e.to_string()))?;
    if g.degree() != Some(1) {
        return Ok(Err(format!("gcd has degree {:?}", g.degree())));
    }
    Ok(Ok(from_bits(g.coeff(0), "b1")))
}

pub(super) fn run(s: &Session, rec: &mut Recorder) {
    let at = |poly: &MvPoly, var: &str, val: &str| poly.substitute(&[(var, p(val))]);

    rec.check("case1-h1p", "h1' at a = 1 is b1^9 k^3 h1''", |_| {
        Ok(equal(&at(s.get("h1p")?, "a", "1")?, &p("b1^9*k^3").mul(s.get("h1pp")?)))
    });
    rec.check("case1-h2", "h2 at a = 1 is b1^9 k^3 h2''", |_| {
        Ok(equal(&at(s.get("h2")?, "a", "1")?, &p("b1^9*k^3").mul(s.get("h2pp")?)))
    });
    rec.check("case1-res", "Res(h1'', h2''; b1) = k^66", |_| {
        Ok(equal(&resultant(s.get("h1pp")?, s.get("h2pp")?, "b1")?, &p("k^66")))
    });

    let (k_num, a2) = (p(CASE2_K_NUM), p("a^2"));
    rec.check("T1-relation", "T1 = a^2 k + (1+a)^5 (1+a^2+a^3)", |_| {
        Ok(equal(s.get("T1")?, &a2.mul(&p("k")).add(&k_num)))
    });
    // The printed powers of a are negative; both sides are compared after clearing.
    for (h, star, shown_exp) in [("h1p", "h1star", -16), ("h2", "h2star", -20), ("h3p", "h3star", -17)] {
        rec.check(
            &format!("case2-{h}"),
            &format!("{h} on T1 = 0 is a^{shown_exp} (1+a)^4 ({CASE2_FACTOR}) {star}"),
            |notes| {
                let c = substitute_rational(s.get(h)?, "k", &k_num, &a2)?;
                notes.push(format!("cleared by a^{}", 2 * c.power));
                let shift = 2 * c.power as i64 + shown_exp;
                if shift < 0 {
                    return Ok(Verdict::Fails(format!("clearing power {} too small", 2 * c.power)));
                }
                let rhs = p(&format!("a^{shift}*(1+a)^4*({CASE2_FACTOR})")).mul(s.get(star)?);
                Ok(equal(&c.poly, &rhs))
            },
        );
    }
    rec.check("case2-gcd", "gcd(Res(h1*, h2*; a), Res(h2*, h3*; a)) = b1^1720", |_| {
        let r12 = resultant(s.get("h1star")?, s.get("h2star")?, "a")?;
        let r23 = resultant(s.get("h2star")?, s.get("h3star")?, "a")?;
        Ok(equal(&gcd_univariate(&r12, &r23, "b1")?, &p("b1^1720")))
    });
    rec.check("case2-E3", "E3 vanishes at k = (1+a)^5(1+a^2+a^3)/a^2, b1 = a/(1+a)^3", |notes| {
        let e3 = &s.derived()?.e[3];
        let c1 = substitute_rational(e3, "k", &k_num, &a2)?;
        let c2 = substitute_rational(&c1.poly, "b1", &p("a"), &p("(1+a)^3"))?;
        notes.push(format!("cleared by a^{} (1+a)^{}", 2 * c1.power, 3 * c2.power));
        Ok(verdict(c2.poly.is_zero(), || c2.poly.diff_witness(&MvPoly::zero(), 6)))
    });

    rec.check("case3.1-gcd", "gcd(Res(S2, S3; b1), Res(T2, T3; a)) = 1", |_| {
        let r1 = resultant(s.get("S2")?, s.get("S3")?, "b1")?;
        let r2 = resultant(s.get("T2")?, s.get("T3")?, "a")?;
        Ok(equal(&gcd_univariate(&r1, &r2, "k")?, &MvPoly::one()))
    });

    let (one, b1sq) = (MvPoly::one(), p("b1^2"));
    for (h, dag) in [("h1p", "h1dag"), ("h2", "h2dag"), ("h3p", "h3dag")] {
        rec.check(&format!("case3.2-{h}"), &format!("{h} at k = 1/b1^2 is a {dag}"), |notes| {
            let c = substitute_rational(s.get(h)?, "k", &one, &b1sq)?;
            notes.push(format!("cleared by b1^{}", 2 * c.power));
            Ok(equal(&c.poly, &b1sq.pow(c.power).mul(&p("a")).mul(s.get(dag)?)))
        });
    }
    check_resultant(
        s,
        rec,
        "h1dag-h2dag-a",
        ("h1dag", "h2dag", "a"),
        &[("b1", 119), ("1+b1+b1^2", 10), ("1+b1+b1^4", 2)],
    );
    check_resultant(
        s,
        rec,
        "h2dag-h3dag-a",
        ("h2dag", "h3dag", "a"),
        &[("b1", 135), ("1+b1+b1^2", 8), ("1+b1+b1^2+b1^4+b1^6", 2)],
    );
    check_resultant(
        s,
        rec,
        "h1dag-h2dag-b1",
        ("h1dag", "h2dag", "b1"),
        &[("a", 65), ("1+a", 54), ("1+a+a^2", 10), ("1+a+a^4", 2), ("1+a^3+a^4", 8)],
    );
    rec.check("h2dag-inverse", "h2dag at a = 1/b1 times b1^19", |notes| {
        let c = substitute_rational(s.get("h2dag")?, "a", &one, &p("b1"))?;
        notes.push(format!("cleared by b1^{}", c.power));
        let want = p("b1")
            .pow(c.power.saturating_sub(19))
            .mul(&p("(1+b1+b1^3)^2*(1+b1^2+b1^3)^2*(1+b1^3+b1^6)^2"));
        Ok(equal(&c.poly, &want))
    });

    for (name, var) in [
        ("T4", "k"),
        ("T5", "k"),
        ("T6", "k"),
        ("T7", "k"),
        ("T12", "b1"),
        ("T13", "b1"),
        ("T14", "b1"),
        ("T15", "b1"),
        ("T16", "b1"),
        ("T17", "b1"),
        ("T18", "b1"),
        ("T19", "b1"),
        ("T20", "b1"),
    ] {
        rec.check(&format!("{name}-irreducible"), &format!("{name} is irreducible over F2"), |notes| {
            let u = f2_poly(s.get(name)?, var)?;
            let deg = u.degree().unwrap_or(0);
            let parity = if deg % 2 == 0 { "even" } else { "odd" };
            notes.push(format!("degree {deg} ({parity})"));
            let irr = u.is_irreducible().map_err(|e| MvPolyError::Corpus(e.to_string()))?;
            Ok(verdict(irr, || format!("{name} factors over F2")))
        });
    }
    rec.check("T7-trace", "roots of T7 have absolute trace 0", |_| {
        let t7 = s.get("T7")?;
        let d = t7.degree_in("k").unwrap_or(0);
        Ok(verdict(d >= 1 && t7.coeff_in("k", d - 1).is_zero(), || {
            "subleading coefficient of T7 is 1".to_string()
        }))
    });

    for (t, facs) in [("T4", ["T12", "T13", "T14"]), ("T5", ["T15", "T16", "T17"]), ("T6", ["T18", "T19", "T20"])] {
        check_resultant(
            s,
            rec,
            &format!("S1-{t}-k"),
            ("S1", t, "k"),
            &[(facs[0], 1), (facs[1], 1), (facs[2], 1)],
        );
    }

    let t23_k: OnceCell<Result<MvPoly, MvPolyError>> = OnceCell::new();
    for br in &BRANCHES {
        let mut k_found: Option<MvPoly> = None;
        rec.check(
            &format!("{}-k", br.min_poly),
            &format!("k recovered by Euclid on S1, {} when {} = 0", br.t, br.min_poly),
            |notes| {
                let m = s.get(br.min_poly)?;
                let k = match k_by_euclid(s, s.get(br.t)?, m)? {
                    Ok(k) => k,
                    Err(w) => return Ok(Verdict::Fails(w)),
                };
                notes.push(format!("k = {k}"));
                k_found = Some(k.clone());
                let shown = AlgebraicContext::from_monic("b1", m)?.reduce(&p(br.k_shown))?;
                Ok(super::coefficients::compare_display(&k, &shown))
            },
        );
        rec.check(
            &format!("{}-gcd", br.min_poly),
            &format!("gcd(Res(h1', h2; b1), Res(T2, T3; k)) = {} when {} = 0", br.gcd, br.min_poly),
            |notes| {
                let Some(k) = k_found else {
                    return Ok(Verdict::Fails("no value of k was recovered".to_string()));
                };
                let ctx = AlgebraicContext::from_monic("b1", s.get(br.min_poly)?)?;
                let red = |n: &str| -> Result<MvPoly, MvPolyError> {
                    s.get(n)?.substitute_in(&[("k", k.clone())], &ctx)
                };
                let r = resultant(&red("h1p")?, &red("h2")?, "b1")?;
                notes.push(format!("h1', h2 reduced modulo {} before the resultant", br.min_poly));
                let t23 = t23_k
                    .get_or_init(|| resultant(s.get("T2")?, s.get("T3")?, "k"))
                    .clone()?;
                Ok(equal(&gcd_univariate(&r, &t23, "a")?, &p(br.gcd)))
            },
        );
    }
}
