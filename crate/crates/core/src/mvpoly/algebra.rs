//! Substitution, reduction by algebraic relations, pseudo-division and
//! factorization checks.

use std::collections::HashMap;

use super::{Exps, MvPoly, MvPolyError};
use crate::field::make_field;

/// Relations `v^d = r(v, …)` with `deg_v r < d`, applied until no term exceeds them.
#[derive(Debug, Clone, Default)]
pub struct AlgebraicContext {
    relations: Vec<(String, u32, MvPoly)>,
}

/// Reduction passes allowed before a relation set is declared cyclic.
const MAX_REDUCTION_PASSES: usize = 1000;

impl AlgebraicContext {
    pub fn new() -> AlgebraicContext {
        AlgebraicContext::default()
    }

    /// Adds `var^degree = replacement`.
    pub fn with_relation(
        mut self,
        var: &str,
        degree: u32,
        replacement: MvPoly,
    ) -> Result<AlgebraicContext, MvPolyError> {
        if degree == 0 || replacement.degree_in(var).is_some_and(|d| d >= degree) {
            return Err(MvPolyError::BadRelation(var.to_string()));
        }
        self.relations.push((var.to_string(), degree, replacement));
        Ok(self)
    }

    /// The relation making `m` vanish, for `m` monic in `var`.
    pub fn from_monic(var: &str, m: &MvPoly) -> Result<AlgebraicContext, MvPolyError> {
        let d = m.degree_in(var).unwrap_or(0);
        if d == 0 || !m.leading_in(var).is_one() {
            return Err(MvPolyError::BadRelation(var.to_string()));
        }
        let lead = MvPoly::monomial(&[(var, d)]);
        AlgebraicContext::new().with_relation(var, d, m.add(&lead))
    }

    pub fn reduce(&self, p: &MvPoly) -> Result<MvPoly, MvPolyError> {
        let mut cur = p.clone();
        for _ in 0..MAX_REDUCTION_PASSES {
            let mut changed = false;
            for (v, d, rep) in &self.relations {
                if cur.degree_in(v).unwrap_or(0) < *d {
                    continue;
                }
                changed = true;
                cur = reduce_once(&cur, v, *d, rep);
            }
            if !changed {
                return Ok(cur);
            }
        }
        Err(MvPolyError::BadRelation("relation set does not terminate".to_string()))
    }
}

fn reduce_once(p: &MvPoly, v: &str, d: u32, rep: &MvPoly) -> MvPoly {
    let mut coeffs = p.collect(v);
    // Fold from the top so each replacement lands below degree d eventually.
    while coeffs.len() as u32 > d {
        let top = coeffs.len() - 1;
        let c = coeffs.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let shift = top as u32 - d;
        let add = c.mul(rep);
        for (i, part) in add.collect(v).into_iter().enumerate() {
            let idx = i + shift as usize;
            coeffs[idx] = coeffs[idx].add(&part);
        }
    }
    MvPoly::from_collected(v, &coeffs)
}

impl MvPoly {
    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, bindings: &[(&str, MvPoly)]) -> Result<MvPoly, MvPolyError> {
        for (v, b) in bindings {
            if b.mentions(v) {
                return Err(MvPolyError::SelfReferentialBinding(v.to_string()));
            }
        }
        let bound: Vec<(usize, &MvPoly)> = bindings
            .iter()
            .filter_map(|(v, b)| self.var_index(v).map(|i| (i, b)))
            .collect();
        if bound.is_empty() {
            return Ok(self.clone());
        }
        // Group terms by the exponents of the bound variables.
        let mut groups: HashMap<Vec<u16>, Vec<Exps>> = HashMap::new();
        for t in &self.terms {
            let key: Vec<u16> = bound.iter().map(|(i, _)| t[*i]).collect();
            let mut rest = *t;
            for (i, _) in &bound {
                rest[*i] = 0;
            }
            groups.entry(key).or_default().push(rest);
        }
        let mut powers: Vec<Vec<MvPoly>> = bound.iter().map(|_| vec![MvPoly::one()]).collect();
        let mut keys: Vec<Vec<u16>> = groups.keys().cloned().collect();
        keys.sort();
        let mut acc = MvPoly::zero();
        for key in keys {
            let mut factor = MvPoly::one();
            for (slot, &e) in key.iter().enumerate() {
                let pw = &mut powers[slot];
                while pw.len() <= e as usize {
                    let next = pw.last().expect("nonempty").mul(bound[slot].1);
                    pw.push(next);
                }
                factor = factor.mul(&pw[e as usize]);
            }
            let rest = MvPoly::from_parts(self.vars.clone(), groups.remove(&key).expect("key"));
            acc = acc.add(&rest.mul(&factor));
        }
        Ok(acc)
    }

    /// Substitution followed by reduction.
    pub fn substitute_in(
        &self,
        bindings: &[(&str, MvPoly)],
        ctx: &AlgebraicContext,
    ) -> Result<MvPoly, MvPolyError> {
        ctx.reduce(&self.substitute(bindings)?)
    }

    /// Quotient and remainder by `g`, which must be monic in `var`.
    pub fn divrem_monic(&self, g: &MvPoly, var: &str) -> Result<(MvPoly, MvPoly), MvPolyError> {
        let pd = pseudo_divrem(self, g, var)?;
        if !g.leading_in(var).is_one() {
            return Err(MvPolyError::NotDivisible(format!("{g} is not monic in {var}")));
        }
        Ok((pd.quotient, pd.remainder))
    }
}

/// Result of `lc(g)^exponent · f = quotient · g + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoDivision {
    pub quotient: MvPoly,
    pub remainder: MvPoly,
    pub exponent: u32,
}

/// Pseudo-division in `var` with the classical exponent `max(deg f - deg g + 1, 0)`.
pub fn pseudo_divrem(f: &MvPoly, g: &MvPoly, var: &str) -> Result<PseudoDivision, MvPolyError> {
    let n = g
        .degree_in(var)
        .ok_or_else(|| MvPolyError::NotDivisible("zero divisor".to_string()))?;
    let Some(m) = f.degree_in(var) else {
        return Ok(PseudoDivision {
            quotient: MvPoly::zero(),
            remainder: MvPoly::zero(),
            exponent: 0,
        });
    };
    if m < n {
        return Ok(PseudoDivision {
            quotient: MvPoly::zero(),
            remainder: f.clone(),
            exponent: 0,
        });
    }
    let gc = g.collect(var);
    let lc = gc[n as usize].clone();
    let monic = lc.is_one();
    let mut r = f.collect(var);
    let steps = (m - n + 1) as usize;
    let mut q = vec![MvPoly::zero(); steps];
    for k in (0..steps).rev() {
        let t = std::mem::take(&mut r[n as usize + k]);
        if !monic {
            for c in q.iter_mut().chain(r.iter_mut()) {
                if !c.is_zero() {
                    *c = c.mul(&lc);
                }
            }
        }
        if t.is_zero() {
            continue;
        }
        q[k] = q[k].add(&t);
        for (j, gj) in gc.iter().enumerate().take(n as usize) {
            if !gj.is_zero() {
                r[j + k] = r[j + k].add(&t.mul(gj));
            }
        }
    }
    let out = PseudoDivision {
        quotient: MvPoly::from_collected(var, &q),
        remainder: MvPoly::from_collected(var, &r),
        exponent: steps as u32,
    };
    if cfg!(debug_assertions) {
        let lhs = lc.pow(out.exponent).mul(f);
        let rhs = out.quotient.mul(g).add(&out.remainder);
        assert_eq!(lhs, rhs, "pseudo-division identity");
    }
    Ok(out)
}

/// A polynomial multiplied through by a denominator power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cleared {
    pub poly: MvPoly,
    /// The denominator was raised to this power.
    pub power: u32,
}

/// `den^D · p(var = num/den)` with `D = deg_var p`.
pub fn substitute_rational(
    p: &MvPoly,
    var: &str,
    num: &MvPoly,
    den: &MvPoly,
) -> Result<Cleared, MvPolyError> {
    if num.mentions(var) || den.mentions(var) {
        return Err(MvPolyError::SelfReferentialBinding(var.to_string()));
    }
    let d = p.degree_in(var).unwrap_or(0);
    let coeffs = p.collect(var);
    let mut num_pw = vec![MvPoly::one()];
    let mut den_pw = vec![MvPoly::one()];
    for i in 1..=d as usize {
        num_pw.push(num_pw[i - 1].mul(num));
        den_pw.push(den_pw[i - 1].mul(den));
    }
    let mut acc = MvPoly::zero();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&c.mul(&num_pw[j]).mul(&den_pw[d as usize - j]));
    }
    Ok(Cleared { poly: acc, power: d })
}

/// A named factor raised to a power.
#[derive(Debug, Clone)]
pub struct Factor {
    pub name: String,
    pub poly: MvPoly,
    pub exp: u32,
}

impl Factor {
    pub fn new(name: &str, poly: MvPoly, exp: u32) -> Factor {
        Factor {
            name: name.to_string(),
            poly,
            exp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCheck {
    pub holds: bool,
    pub witness: Option<String>,
}

/// Whether `lhs` equals the product of the factors; otherwise a term-diff witness.
pub fn verify_factorization(lhs: &MvPoly, factors: &[Factor]) -> FactorizationCheck {
    let rhs = factors
        .iter()
        .fold(MvPoly::one(), |acc, f| acc.mul(&f.poly.pow(f.exp)));
    if *lhs == rhs {
        FactorizationCheck {
            holds: true,
            witness: None,
        }
    } else {
        FactorizationCheck {
            holds: false,
            witness: Some(lhs.diff_witness(&rhs, 6)),
        }
    }
}

/// Monic gcd of two polynomials over F2 in the single variable `var`.
pub fn gcd_univariate(f: &MvPoly, g: &MvPoly, var: &str) -> Result<MvPoly, MvPolyError> {
    let f2 = make_field(1)?;
    let (uf, ug) = (f.to_unipoly(&f2, var)?, g.to_unipoly(&f2, var)?);
    if uf.is_zero() && ug.is_zero() {
        return Ok(MvPoly::zero());
    }
    let d = uf.gcd(&ug).expect("same field");
    Ok(MvPoly::from_f2_unipoly(&d, var))
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn p(s: &str) -> MvPoly {
        parse(s).unwrap()
    }

    #[test]
    fn pseudo_division_classical_exponent() {
        let r = pseudo_divrem(&p("k^2"), &p("b1*k"), "k").unwrap();
        assert_eq!(r.exponent, 2);
        assert_eq!(r.quotient, p("b1*k"));
        assert!(r.remainder.is_zero());
    }

    #[test]
    fn pseudo_division_identity_random_shape() {
        let f = p("a*k^5 + b1*k^3 + k*a^2 + 1");
        let g = p("(a+b1)*k^2 + a*k + b1");
        let r = pseudo_divrem(&f, &g, "k").unwrap();
        let lc = g.leading_in("k");
        assert_eq!(lc.pow(r.exponent).mul(&f), r.quotient.mul(&g).add(&r.remainder));
        assert!(r.remainder.degree_in("k").unwrap() < 2);
    }

    #[test]
    fn relation_reduction() {
        let ctx = AlgebraicContext::new()
            .with_relation("z", 2, p("z + k"))
            .unwrap();
        assert_eq!(ctx.reduce(&p("z^2")).unwrap(), p("z + k"));
        // z^3 = z*z^2 = z^2 + k z = z + k + k z
        assert_eq!(ctx.reduce(&p("z^3")).unwrap(), p("z + k + k*z"));
        assert!(AlgebraicContext::new().with_relation("z", 2, p("z^2")).is_err());
    }

    #[test]
    fn substitution() {
        let q = p("a^2*k + k");
        assert_eq!(q.substitute(&[("k", p("b1 + 1"))]).unwrap(), p("(a^2+1)*(b1+1)"));
        assert!(matches!(
            q.substitute(&[("k", p("k + 1"))]),
            Err(MvPolyError::SelfReferentialBinding(_))
        ));
        // Simultaneous, not sequential.
        assert_eq!(p("a + b1").substitute(&[("a", p("b1")), ("b1", p("a"))]).unwrap(), p("a + b1"));
    }

    #[test]
    fn rational_clearing() {
        // k^2 + a k with k = b1 / a: (b1^2 + a b1) cleared by a^2.
        let c = substitute_rational(&p("k^2 + a*k"), "k", &p("b1"), &p("a")).unwrap();
        assert_eq!(c.power, 2);
        assert_eq!(c.poly, p("b1^2 + a^2*b1"));
    }

    #[test]
    fn factorization_witness() {
        let ok = verify_factorization(&p("a^2 + 1"), &[Factor::new("1+a", p("a+1"), 2)]);
        assert!(ok.holds);
        let bad = verify_factorization(&p("a^2"), &[Factor::new("1+a", p("a+1"), 2)]);
        assert!(!bad.holds);
        assert!(bad.witness.unwrap().starts_with("1 differing terms: 1"));
    }
}
