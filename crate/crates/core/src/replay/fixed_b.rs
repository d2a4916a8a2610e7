//! The case `b ∈ F_q`: the same derivation with `b^q = b`, the forced
//! equality `a = b`, and the final quartic.

use super::coefficients::{compare_display, compare_lists, derive_fixed_b};
use super::{equal, p, verdict, Recorder, Session};
use crate::field::{make_field, FiniteField};
use crate::mvpoly::{MvPoly, MvPolyError};
use crate::pp::rootless_cubic_table;
use crate::unipoly::UniPoly;

/// Field degrees of the numeric check of the final quartic.
pub const QUARTIC_CHECK_DEGREES: [u32; 3] = [2, 3, 4];

pub(super) fn run(s: &Session, rec: &mut Recorder) {
    let d = match derive_fixed_b() {
        Ok(d) => d,
        Err(e) => {
            rec.check("derivation", "quartic coefficients for b in F_q", |_| Err(e));
            return;
        }
    };
    rec.check("A", "numerator A(X) for b in F_q", |_| {
        Ok(compare_display(&d.a_num, s.get("bq_disp_A")?))
    });
    rec.check("B", "denominator B(X) for b in F_q", |_| {
        Ok(compare_display(&d.b_den, s.get("bq_disp_B")?))
    });
    rec.check("z-cancels", "z drops out of the quartic in x", |_| {
        Ok(verdict(d.z_part.is_zero(), || d.z_part.diff_witness(&MvPoly::zero(), 6)))
    });
    compare_lists(s, rec, &d, "bq_", "coefficient lists for b in F_q");
    rec.check("E-sum", "C1^2 C4+C1 C2 C3+C0 C3^2 = b^2+a^2 k+b^2 k+(a+b)^2 Y+(a+b)^2 Y^2", |_| {
        Ok(equal(&d.e_sum, &p("b^2 + a^2*k + b^2*k + (a+b)^2*Y + (a+b)^2*Y^2")))
    });
    rec.check("E3-zero", "E3 = 0 for b in F_q", |_| {
        Ok(verdict(d.e[3].is_zero(), || d.e[3].to_text()))
    });
    rec.check("F6", "F6 = (a+b)^6", |_| Ok(equal(&d.f[6], &p("(a+b)^6"))));
    rec.check("D3", "D3^2 = F6 and D3 E2 = F5 force (a+b)^5 = (a+b)^6", |notes| {
        let d3 = p("(a+b)^3");
        if d3.square() != d.f[6] {
            return Ok(equal(&d3.square(), &d.f[6]));
        }
        notes.push("D3 = (a+b)^3 is the square root of F6".to_string());
        let lhs = d3.mul(&d.e[2]);
        if lhs != p("(a+b)^5") {
            return Ok(equal(&lhs, &p("(a+b)^5")));
        }
        Ok(equal(&d.f[5], &p("(a+b)^6")))
    });
    rec.check("a=b", "a = b gives C4 = 1, C3 = 0, C2 = C1 = a, C0 = k+a k+k^2+Y", |_| {
        let at: Vec<MvPoly> = d
            .c
            .iter()
            .map(|c| c.substitute(&[("b", p("a"))]))
            .collect::<Result<_, _>>()?;
        let want = [p("k + a*k + k^2 + Y"), p("a"), p("a"), MvPoly::zero(), MvPoly::one()];
        for (i, (got, w)) in at.iter().zip(&want).enumerate() {
            if got != w {
                return Ok(super::Verdict::Fails(format!("C{i}: {}", got.diff_witness(w, 6))));
            }
        }
        Ok(super::Verdict::Holds)
    });
    rec.check("squared-quartic", "squared quartic at a = b is X^4+a^2 X^2+a^2 X+(k+a k+k^2+Y)^2", |_| {
        let mut sq = MvPoly::zero();
        for (i, c) in d.c.iter().enumerate() {
            let c = c.substitute(&[("b", p("a"))])?;
            sq = sq.add(&c.square().mul(&MvPoly::monomial(&[("X", i as u32)])));
        }
        Ok(equal(&sq, &p("X^4 + a^2*X^2 + a^2*X + (k + a*k + k^2 + Y)^2")))
    });
    for n in QUARTIC_CHECK_DEGREES {
        rec.check(
            &format!("unique-root-q{}", 1u64 << n),
            &format!("over F_{}: unique root for every y iff X^3+X+1/a has no root", 1u64 << n),
            |notes| {
                let (bad, checked) = unique_root_equivalence(n)?;
                notes.push(format!("{checked} values of a, every y"));
                Ok(verdict(bad.is_empty(), || format!("disagreement at a = {}", bad.join(", "))))
            },
        );
    }
}

/// For each `a ≠ 0`, whether `x^4+a^2x^2+a^2x+(k+ak+k^2+y)^2` has exactly one root
/// for every `y`, against rootlessness of `X^3+X+1/a`. Returns the disagreeing `a`.
pub fn unique_root_equivalence(n: u32) -> Result<(Vec<String>, u64), MvPolyError> {
    let f = make_field(n)?;
    let q = f.size();
    let k = (1..q).find(|&k| f.trace(k) == 1).expect("trace-one element");
    let rootless = rootless_cubic_table(&f);
    let mut bad = Vec::new();
    for a in 1..q {
        let a2 = f.square(a);
        let c0base = f.add(f.add(k, f.mul(a, k)), f.square(k));
        let unique = (0..q).all(|y| {
            let c0 = f.square(f.add(c0base, y));
            let quartic = UniPoly::new(&f, vec![c0, a2, a2, 0, 1]);
            quartic.count_roots().map(|r| r == 1).unwrap_or(false)
        });
        if unique != rootless[a as usize] {
            bad.push(f.format(a));
        }
    }
    Ok((bad, q - 1))
}
