//! Sparse multivariate polynomials over F2.
//!
//! Every coefficient is 1, so a polynomial is a set of monomials and addition is
//! symmetric difference. Variables are kept in a canonical order (`a, b, b1, k,
//! z, Y`, then any others alphabetically) and terms are stored in descending
//! lexicographic order of their exponent vectors, which is also the order the
//! text form uses.

mod algebra;
mod corpus;
mod resultant;
mod text;

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::field::{FieldCtx, FiniteField};
use crate::unipoly::UniPoly;

pub use algebra::{
    gcd_univariate, pseudo_divrem, substitute_rational, verify_factorization, AlgebraicContext, Cleared, Factor,
    FactorizationCheck, PseudoDivision,
};
pub use corpus::{Corpus, CorpusEntry, MANIFEST_FILE};
pub use resultant::{resultant, resultant_sylvester, resultant_with_stats, ResultantStats};
pub use text::{parse, parse_with_resolver, parse_with_vars, KNOWN_VARS};

/// Most variables a single polynomial may carry.
pub const MAX_VARS: usize = 16;

/// Exponent vector, indexed by the owning polynomial's variable list.
pub type Exps = [u16; MAX_VARS];

const HEAD: [&str; 6] = ["a", "b", "b1", "k", "z", "Y"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MvPolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("more than {MAX_VARS} variables")]
    TooManyVariables,
    #[error("{0} does not divide exactly")]
    NotDivisible(String),
    #[error("binding for {0} mentions {0} itself")]
    SelfReferentialBinding(String),
    #[error("relation for {0} does not lower its degree")]
    BadRelation(String),
    #[error("interpolated coefficient outside F2 at exponents {0:?}")]
    NonBinaryCoefficient(Vec<u32>),
    #[error("evaluation grid needs a field of 2^{0} elements")]
    GridTooLarge(u32),
    #[error("variable {0} has no value")]
    Unbound(String),
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("digest mismatch for {name}: manifest {expected}, content {actual}")]
    DigestMismatch {
        name: String,
        expected: String,
        actual: String,
    },
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

/// Position of a variable in the canonical order.
pub fn var_cmp(a: &str, b: &str) -> Ordering {
    fn rank(v: &str) -> usize {
        HEAD.iter().position(|h| *h == v).unwrap_or(HEAD.len())
    }
    rank(a).cmp(&rank(b)).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MvPoly {
    vars: Vec<String>,
    terms: Vec<Exps>,
}

impl fmt::Debug for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MvPoly({self})")
    }
}

impl fmt::Display for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut v: Vec<String> = a.iter().chain(b).cloned().collect();
    v.sort_by(|x, y| var_cmp(x, y));
    v.dedup();
    assert!(v.len() <= MAX_VARS, "more than {MAX_VARS} variables");
    v
}

fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut out = [0u16; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i].checked_add(b[i]).expect("exponent overflow");
    }
    out
}

impl MvPoly {
    pub fn zero() -> MvPoly {
        MvPoly::default()
    }

    pub fn one() -> MvPoly {
        MvPoly {
            vars: Vec::new(),
            terms: vec![[0; MAX_VARS]],
        }
    }

    pub fn var(name: &str) -> MvPoly {
        MvPoly::monomial(&[(name, 1)])
    }

    /// The monomial `∏ v^e`.
    pub fn monomial(factors: &[(&str, u32)]) -> MvPoly {
        let vars: Vec<String> = factors.iter().map(|(v, _)| v.to_string()).collect();
        let mut exps = [0u16; MAX_VARS];
        for (i, (_, e)) in factors.iter().enumerate() {
            exps[i] = u16::try_from(*e).expect("exponent overflow");
        }
        MvPoly::from_parts(vars, vec![exps])
    }

    /// Sum of monomials given as `(variable, exponent)` lists.
    pub fn from_monomials(monos: &[&[(&str, u32)]]) -> MvPoly {
        monos
            .iter()
            .fold(MvPoly::zero(), |acc, m| acc.add(&MvPoly::monomial(m)))
    }

    /// Build from unsorted terms over an arbitrary variable list; equal terms cancel in pairs.
    pub(crate) fn from_parts(vars: Vec<String>, mut terms: Vec<Exps>) -> MvPoly {
        assert!(vars.len() <= MAX_VARS, "more than {MAX_VARS} variables");
        // Canonical variable order.
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&i, &j| var_cmp(&vars[i], &vars[j]));
        let sorted = order.iter().enumerate().all(|(i, &j)| i == j);
        let mut vars = vars;
        if !sorted {
            vars = order.iter().map(|&i| vars[i].clone()).collect();
            for t in terms.iter_mut() {
                let old = *t;
                for (new_pos, &old_pos) in order.iter().enumerate() {
                    t[new_pos] = old[old_pos];
                }
            }
        }
        // Merge duplicate variable names, which only arise from careless callers.
        if vars.windows(2).any(|w| w[0] == w[1]) {
            let mut merged: Vec<String> = Vec::new();
            let mut map = Vec::new();
            for v in &vars {
                if merged.last() != Some(v) {
                    merged.push(v.clone());
                }
                map.push(merged.len() - 1);
            }
            for t in terms.iter_mut() {
                let old = *t;
                *t = [0; MAX_VARS];
                for (i, &m) in map.iter().enumerate() {
                    t[m] += old[i];
                }
            }
            vars = merged;
        }
        terms.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<Exps> = Vec::with_capacity(terms.len());
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        let mut p = MvPoly { vars, terms: out };
        p.drop_unused_vars();
        p
    }

    fn drop_unused_vars(&mut self) {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.iter().any(|t| t[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| used[i]).collect();
        self.vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        for t in self.terms.iter_mut() {
            let old = *t;
            *t = [0; MAX_VARS];
            for (n, &o) in keep.iter().enumerate() {
                t[n] = old[o];
            }
        }
    }

    /// Terms re-indexed onto a superset variable list.
    fn terms_over(&self, target: &[String]) -> Vec<Exps> {
        if self.vars == target {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|t| {
                let mut n = [0u16; MAX_VARS];
                for (i, &m) in map.iter().enumerate() {
                    n[m] = t[i];
                }
                n
            })
            .collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &[Exps] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty() && self.terms.len() == 1
    }

    fn var_index(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|x| x == v)
    }

    pub fn mentions(&self, v: &str) -> bool {
        self.var_index(v).is_some()
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.var_index(v) {
            None => 0,
            Some(i) => self.terms.iter().map(|t| t[i] as u32).max().unwrap_or(0),
        })
    }

    /// Exponent of each variable in each term, as `(variable, exponent)` pairs.
    pub fn term_factors(&self, t: &Exps) -> Vec<(&str, u32)> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| t[*i] != 0)
            .map(|(i, v)| (v.as_str(), t[i] as u32))
            .collect()
    }

    pub fn add(&self, other: &MvPoly) -> MvPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let vars = union_vars(&self.vars, &other.vars);
        let a = self.terms_over(&vars);
        let b = other.terms_over(&vars);
        // Both lists are sorted descending; merge and cancel.
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        let mut p = MvPoly { vars, terms: out };
        p.drop_unused_vars();
        p
    }

    pub fn mul(&self, other: &MvPoly) -> MvPoly {
        if self.is_zero() || other.is_zero() {
            return MvPoly::zero();
        }
        let vars = union_vars(&self.vars, &other.vars);
        let a = self.terms_over(&vars);
        let b = other.terms_over(&vars);
        let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
        if small.len() == 1 {
            let m = small[0];
            let terms = large.iter().map(|t| add_exps(t, &m)).collect();
            // Shifting by one monomial keeps the order.
            return MvPoly { vars, terms };
        }
        let mut acc: FxHashSet<Exps> = FxHashSet::default();
        acc.reserve(large.len() * 2);
        for s in small.iter() {
            for l in large.iter() {
                let m = add_exps(s, l);
                if !acc.remove(&m) {
                    acc.insert(m);
                }
            }
        }
        let mut terms: Vec<Exps> = acc.into_iter().collect();
        terms.sort_unstable_by(|x, y| y.cmp(x));
        let mut p = MvPoly { vars, terms };
        p.drop_unused_vars();
        p
    }

    /// Squaring is the Frobenius map: cross terms cancel in pairs.
    pub fn square(&self) -> MvPoly {
        let terms = self.terms.iter().map(|t| add_exps(t, t)).collect();
        MvPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> MvPoly {
        let mut acc = MvPoly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a MvPoly>) -> MvPoly {
        factors
            .into_iter()
            .fold(MvPoly::one(), |acc, f| acc.mul(f))
    }

    /// Coefficients in `v`: entry `i` multiplies `v^i`.
    pub fn collect(&self, v: &str) -> Vec<MvPoly> {
        let Some(d) = self.degree_in(v) else {
            return Vec::new();
        };
        let Some(idx) = self.var_index(v) else {
            return vec![self.clone()];
        };
        let mut buckets: Vec<Vec<Exps>> = vec![Vec::new(); d as usize + 1];
        for t in &self.terms {
            let mut r = *t;
            r[idx] = 0;
            buckets[t[idx] as usize].push(r);
        }
        buckets
            .into_iter()
            .map(|ts| {
                // Removing one coordinate keeps the relative order.
                let mut p = MvPoly {
                    vars: self.vars.clone(),
                    terms: ts,
                };
                p.drop_unused_vars();
                p
            })
            .collect()
    }

    /// `Σ coeffs[i] v^i`.
    pub fn from_collected(v: &str, coeffs: &[MvPoly]) -> MvPoly {
        coeffs
            .iter()
            .enumerate()
            .fold(MvPoly::zero(), |acc, (i, c)| {
                acc.add(&c.mul(&MvPoly::monomial(&[(v, i as u32)])))
            })
    }

    /// Coefficient of `v^d`.
    pub fn coeff_in(&self, v: &str, d: u32) -> MvPoly {
        self.collect(v).get(d as usize).cloned().unwrap_or_default()
    }

    /// Leading coefficient with respect to `v`.
    pub fn leading_in(&self, v: &str) -> MvPoly {
        self.collect(v).pop().unwrap_or_default()
    }

    /// Leading term in the canonical lexicographic order.
    pub fn leading_term(&self) -> Option<MvPoly> {
        let t = self.terms.first()?;
        Some(MvPoly {
            vars: self.vars.clone(),
            terms: vec![*t],
        })
        .map(|mut p| {
            p.drop_unused_vars();
            p
        })
    }

    /// Value at a point; every variable must be bound.
    pub fn eval<F: FiniteField>(
        &self,
        field: &F,
        value: impl Fn(&str) -> Option<F::Elem>,
    ) -> Result<F::Elem, MvPolyError> {
        let vals: Vec<F::Elem> = self
            .vars
            .iter()
            .map(|v| value(v).ok_or_else(|| MvPolyError::Unbound(v.clone())))
            .collect::<Result<_, _>>()?;
        let mut acc = field.zero();
        for t in &self.terms {
            let mut m = field.one();
            for (i, &x) in vals.iter().enumerate() {
                if t[i] != 0 {
                    m = field.mul(m, field.pow(x, t[i] as u128));
                }
            }
            acc = field.add(acc, m);
        }
        Ok(acc)
    }

    /// A polynomial in `v` alone, as a univariate polynomial over any field.
    pub fn to_unipoly<F: FiniteField>(&self, field: &F, v: &str) -> Result<UniPoly<F>, MvPolyError> {
        if let Some(other) = self.vars.iter().find(|x| *x != v) {
            return Err(MvPolyError::Unbound(other.clone()));
        }
        let coeffs = self
            .collect(v)
            .iter()
            .map(|c| if c.is_zero() { field.zero() } else { field.one() })
            .collect();
        Ok(UniPoly::new(field, coeffs))
    }

    /// Inverse of [`MvPoly::to_unipoly`] for polynomials over F2.
    pub fn from_f2_unipoly(p: &UniPoly<FieldCtx>, v: &str) -> MvPoly {
        assert_eq!(p.field().degree(), 1, "coefficients must lie in F2");
        let terms: Vec<Exps> = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(i, _)| {
                let mut e = [0u16; MAX_VARS];
                e[0] = u16::try_from(i).expect("exponent overflow");
                e
            })
            .collect();
        MvPoly::from_parts(vec![v.to_string()], terms)
    }

    /// Exact quotient by `d`, via lexicographic leading-term division.
    pub fn div_exact(&self, d: &MvPoly) -> Result<MvPoly, MvPolyError> {
        let lt = d
            .leading_term()
            .ok_or_else(|| MvPolyError::NotDivisible("zero".to_string()))?;
        let mut r = self.clone();
        let mut q_terms: Vec<MvPoly> = Vec::new();
        while let Some(rt) = r.leading_term() {
            let t = rt
                .div_monomial(&lt)
                .ok_or_else(|| MvPolyError::NotDivisible(d.to_string()))?;
            r = r.add(&t.mul(d));
            q_terms.push(t);
        }
        Ok(q_terms.iter().fold(MvPoly::zero(), |acc, t| acc.add(t)))
    }

    /// `self / m` for monomials, when it divides.
    fn div_monomial(&self, m: &MvPoly) -> Option<MvPoly> {
        let (a, b) = (self.terms.first()?, m.terms.first()?);
        let vars = union_vars(&self.vars, &m.vars);
        let a = MvPoly {
            vars: self.vars.clone(),
            terms: vec![*a],
        }
        .terms_over(&vars)[0];
        let b = MvPoly {
            vars: m.vars.clone(),
            terms: vec![*b],
        }
        .terms_over(&vars)[0];
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = a[i].checked_sub(b[i])?;
        }
        Some(MvPoly::from_parts(vars, vec![out]))
    }

    /// Largest `e` such that `v^e` divides, and the cofactor.
    pub fn split_var_power(&self, v: &str) -> (u32, MvPoly) {
        let Some(i) = self.var_index(v) else {
            return (0, self.clone());
        };
        let e = self.terms.iter().map(|t| t[i]).min().unwrap_or(0);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut n = *t;
                n[i] -= e;
                n
            })
            .collect();
        let mut p = MvPoly {
            vars: self.vars.clone(),
            terms,
        };
        p.drop_unused_vars();
        (e as u32, p)
    }

    /// Terms present in exactly one of the two polynomials, rendered as text.
    pub fn diff_witness(&self, other: &MvPoly, limit: usize) -> String {
        let d = self.add(other);
        let shown: Vec<String> = d
            .terms
            .iter()
            .take(limit)
            .map(|t| text::format_term(&d.vars, t))
            .collect();
        let more = d.num_terms().saturating_sub(limit);
        let mut s = format!("{} differing terms: {}", d.num_terms(), shown.join(" + "));
        if more > 0 {
            s.push_str(&format!(" + … ({more} more)"));
        }
        s
    }
}

impl std::ops::Add for &MvPoly {
    type Output = MvPoly;
    fn add(self, rhs: &MvPoly) -> MvPoly {
        MvPoly::add(self, rhs)
    }
}

impl std::ops::Mul for &MvPoly {
    type Output = MvPoly;
    fn mul(self, rhs: &MvPoly) -> MvPoly {
        MvPoly::mul(self, rhs)
    }
}
