//! The quartic in `x` obtained from `g((X+z+1)/(X+z)) = A(X)/B(X)`.

use super::{equal, p, Recorder, Session, Verdict};
use crate::mvpoly::{AlgebraicContext, MvPoly, MvPolyError};

/// Polynomials produced by the derivation, all over F2.
#[derive(Debug, Clone)]
pub struct Derived {
    /// `A(X)` and `B(X)` before reduction by the relation for `z`.
    pub a_num: MvPoly,
    pub b_den: MvPoly,
    /// `z`-coefficient of the cross-multiplied equation after reduction; zero when the derivation is sound.
    pub z_part: MvPoly,
    /// `C0..C4`, coefficients of `X^i`, linear in `Y`.
    pub c: Vec<MvPoly>,
    /// `C1^2 C4 + C1 C2 C3 + C0 C3^2` and its `Y`-coefficients.
    pub e_sum: MvPoly,
    pub e: Vec<MvPoly>,
    /// `e_sum^2 + (C1 C3 + C2^2)^3` and its `Y`-coefficients.
    pub f: Vec<MvPoly>,
}

fn v(name: &str) -> MvPoly {
    MvPoly::var(name)
}

fn padded(p: &MvPoly, var: &str, len: usize) -> Vec<MvPoly> {
    let mut c = p.collect(var);
    c.resize(len, MvPoly::zero());
    c
}

/// `b` and `b^q` are given as polynomials in `z`, and the two sides of
/// `A(x)/B(x) = ρ (y+z+1)/(y+z)` are cross-multiplied with `ρ = num/den`.
fn derive(b: &MvPoly, bq: &MvPoly, num: &MvPoly, den: &MvPoly) -> Result<Derived, MvPolyError> {
    let (a, x, y, z) = (v("a"), v("X"), v("Y"), v("z"));
    let one = MvPoly::one();
    let x1 = &(&x + &z) + &one;
    let x0 = &x + &z;
    // g(X) = X (b^q + a X^2 + X^3) / (1 + a X + b X^3) at X = x1/x0, times x0^4 / x0^4.
    let a_num = x1.mul(&bq.mul(&x0.pow(3)).add(&a.mul(&x1.square()).mul(&x0)).add(&x1.pow(3)));
    let b_den = x0
        .pow(4)
        .add(&a.mul(&x1).mul(&x0.pow(3)))
        .add(&b.mul(&x1.pow(3)).mul(&x0));
    let yz = &y + &z;
    let lhs = a_num.mul(den).mul(&yz);
    let rhs = b_den.mul(num).mul(&(&yz + &one));
    let ctx = AlgebraicContext::new().with_relation("z", 2, &z + &v("k"))?;
    let eq = ctx.reduce(&lhs.add(&rhs))?;
    let z_part = eq.coeff_in("z", 1);
    let c = padded(&eq.coeff_in("z", 0), "X", 5);
    let e_sum = c[1]
        .square()
        .mul(&c[4])
        .add(&c[1].mul(&c[2]).mul(&c[3]))
        .add(&c[0].mul(&c[3].square()));
    let f_sum = e_sum
        .square()
        .add(&c[1].mul(&c[3]).add(&c[2].square()).pow(3));
    Ok(Derived {
        a_num,
        b_den,
        z_part,
        e: padded(&e_sum, "Y", 4),
        f: padded(&f_sum, "Y", 7),
        c,
        e_sum,
    })
}

/// `b = b1 z` with `b^q = b1 (z+1)`, so `ρ = (1+a+b1(z+1)) / (1+a+b1 z)`.
pub fn derive_extension() -> Result<Derived, MvPolyError> {
    let (b1, z) = (v("b1"), v("z"));
    let b = b1.mul(&z);
    let bq = b1.mul(&(&z + &MvPoly::one()));
    let base = &MvPoly::one() + &v("a");
    derive(&b, &bq, &(&base + &bq), &(&base + &b))
}

/// `b ∈ F_q`, so `b^q = b` and `ρ = 1`.
pub fn derive_fixed_b() -> Result<Derived, MvPolyError> {
    let one = MvPoly::one();
    derive(&v("b"), &v("b"), &one, &one)
}

/// Compares derived coefficient lists with the corpus under `prefix`.
pub(super) fn compare_lists(s: &Session, rec: &mut Recorder, d: &Derived, prefix: &str, anchor: &str) {
    let lists: [(&str, &Vec<MvPoly>); 3] = [("C", &d.c), ("E", &d.e), ("F", &d.f)];
    for (sym, list) in lists {
        for (i, derived) in list.iter().enumerate() {
            let name = format!("{prefix}{sym}{i}");
            rec.check(&name, &format!("{anchor}: {sym}{i}"), |_| {
                Ok(equal(derived, s.get(&name)?))
            });
        }
    }
}

/// A printed form that disagrees with the derivation is a display issue, not a failure.
pub(super) fn compare_display(derived: &MvPoly, shown: &MvPoly) -> Verdict {
    if derived == shown {
        Verdict::Holds
    } else {
        Verdict::Display(format!("derived vs displayed: {}", derived.diff_witness(shown, 6)))
    }
}

pub(super) fn run(s: &Session, rec: &mut Recorder) {
    let d = match s.derived() {
        Ok(d) => d.clone(),
        Err(e) => {
            rec.check("derivation", "quartic coefficients from A(X), B(X)", |_| Err(e));
            return;
        }
    };
    rec.check("A", "numerator A(X) of g((X+z+1)/(X+z))", |_| {
        Ok(compare_display(&d.a_num, s.get("disp_A")?))
    });
    rec.check("B", "denominator B(X) of g((X+z+1)/(X+z))", |_| {
        Ok(compare_display(&d.b_den, s.get("disp_B")?))
    });
    rec.check("z-cancels", "z drops out of the quartic in x", |_| {
        Ok(super::verdict(d.z_part.is_zero(), || {
            format!("residual z-coefficient: {}", d.z_part.diff_witness(&MvPoly::zero(), 6))
        }))
    });
    compare_lists(s, rec, &d, "", "coefficient lists of the quartic");
    rec.check("C4-sample", "C4 = a^2+a b1+b1^2 k+b1+1", |_| {
        Ok(equal(&d.c[4], &p("a^2 + a*b1 + b1^2*k + b1 + 1")))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_b_sum_is_short() {
        let d = derive_fixed_b().unwrap();
        assert!(d.z_part.is_zero());
        assert_eq!(d.e[3], MvPoly::zero());
        assert_eq!(d.c[4], p("1 + a + b"));
        assert_eq!(d.c[3], p("a + b"));
    }
}
