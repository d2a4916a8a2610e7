//! Resultants of `h1', h2, h3'` and of the `T2, T3` pair.

use super::{p, Recorder, Session, Verdict};
use crate::mvpoly::{
    resultant_sylvester, resultant_with_stats, verify_factorization, Factor, MvPolyError,
};

/// A factor given either by a corpus name or by literal text.
pub(super) fn factor(s: &Session, spec: &str, exp: u32) -> Result<Factor, MvPolyError> {
    let poly = match s.get(spec) {
        Ok(poly) => poly.clone(),
        Err(_) => crate::mvpoly::parse(spec)?,
    };
    Ok(Factor::new(spec, poly, exp))
}

/// Computes `Res(f, g; var)` and compares it with the product of `factors`.
pub(super) fn check_resultant(
    s: &Session,
    rec: &mut Recorder,
    id: &str,
    (f, g, var): (&str, &str, &str),
    factors: &[(&str, u32)],
) {
    let rhs: Vec<String> = factors
        .iter()
        .map(|(n, e)| if *e == 1 { format!("({n})") } else { format!("({n})^{e}") })
        .collect();
    let anchor = format!("Res({f}, {g}; {var}) = {}", rhs.join(""));
    rec.check(id, &anchor, |notes| {
        let (r, stats) = resultant_with_stats(s.get(f)?, s.get(g)?, var)?;
        notes.push(format!(
            "evaluation grid over GF(2^{}) with {} points",
            stats.field_bits, stats.grid_points
        ));
        let fs = factors
            .iter()
            .map(|(n, e)| factor(s, n, *e))
            .collect::<Result<Vec<_>, _>>()?;
        let chk = verify_factorization(&r, &fs);
        Ok(match chk.witness {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        })
    });
}

pub(super) fn run(s: &Session, rec: &mut Recorder) {
    rec.check(
        "aux-b1",
        "Res(a^3+b1+a^2 b1, a^5+b1+a^4 b1+b1^3+a^4 b1^3; b1) = a^3(1+a)^4(1+a+a^3)^2",
        |notes| {
            let f = p("a^3 + b1 + a^2*b1");
            let g = p("a^5 + b1 + a^4*b1 + b1^3 + a^4*b1^3");
            let (r, _) = resultant_with_stats(&f, &g, "b1")?;
            let r2 = resultant_sylvester(&f, &g, "b1")?;
            if r != r2 {
                return Ok(Verdict::Fails(format!("routes disagree: {}", r.diff_witness(&r2, 6))));
            }
            notes.push("interpolation and Sylvester determinant agree".to_string());
            Ok(super::equal(&r, &p("a^3*(1+a)^4*(1+a+a^3)^2")))
        },
    );
    check_resultant(
        s,
        rec,
        "h1p-h2-a",
        ("h1p", "h2", "a"),
        &[("b1", 208), ("k", 37), ("1+b1+b1^2*k", 2), ("1+b1^2*k", 2), ("S1", 6), ("S2", 1)],
    );
    check_resultant(
        s,
        rec,
        "h2-h3p-a",
        ("h2", "h3p", "a"),
        &[("b1", 272), ("k", 69), ("1+b1+b1^2*k", 2), ("S1", 8), ("S3", 1)],
    );
    check_resultant(
        s,
        rec,
        "h1p-h2-b1",
        ("h1p", "h2", "b1"),
        &[("a", 108), ("1+a", 108), ("k", 131), ("T1", 6), ("T2", 1)],
    );
    check_resultant(
        s,
        rec,
        "h2-h3p-b1",
        ("h2", "h3p", "b1"),
        &[("a", 126), ("1+a", 152), ("k", 158), ("T1", 8), ("T3", 1)],
    );
    check_resultant(
        s,
        rec,
        "T2-T3-a",
        ("T2", "T3", "a"),
        &[("T4", 2), ("T5", 2), ("T6", 2), ("T7", 2)],
    );
    check_resultant(
        s,
        rec,
        "T2-T3-k",
        ("T2", "T3", "k"),
        &[("1+a", 44), ("T8", 2), ("T9", 2), ("T10", 2), ("T11", 2)],
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_factors_parse() {
        let c = crate::mvpoly::Corpus::builtin();
        let s = Session::new(&c);
        assert_eq!(factor(&s, "1+a", 2).unwrap().poly, p("a + 1"));
        assert_eq!(factor(&s, "T1", 1).unwrap().poly, *c.get("T1").unwrap());
    }
}
