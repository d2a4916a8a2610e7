//! Binary fields `F_{2^n}` and their quadratic extensions.
//!
//! A [`FieldCtx`] element is a `u64` holding a polynomial in the residue of `x`
//! modulo the field's defining polynomial. An [`ExtCtx`] element is a pair
//! `(u, v)` standing for `u + v z`, where `z^2 + z + k0 = 0` and `k0` is the
//! smallest-encoded element of absolute trace 1.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf2x;

pub type Elem = u64;

/// Largest extension degree accepted by [`make_field`].
pub const MAX_FIELD_DEGREE: u32 = 24;
/// Largest degree for which log/antilog tables are built.
pub const TABLE_DEGREE: u32 = 16;
/// Largest degree accepted by [`make_quotient_field`].
pub const MAX_QUOTIENT_DEGREE: u32 = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} is outside the supported range")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} is reducible; factor {factor:#x}")]
    Reducible { modulus: u64, factor: u64 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
    #[error("value {value:#x} does not fit in a field of degree {degree}")]
    OutOfRange { value: u64, degree: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Base,
    Quotient,
}

/// Operations shared by base fields and quadratic extensions.
pub trait FiniteField: Clone + fmt::Debug {
    type Elem: Copy + Eq + std::hash::Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem, FieldError>;
    /// Degree over F2.
    fn bits(&self) -> u32;
    /// The `i`-th element in encoding order, `i < 2^bits`.
    fn element(&self, i: u64) -> Self::Elem;
    /// Whether two contexts describe the same field presentation.
    fn same_field(&self, other: &Self) -> bool;
    fn format_elem(&self, a: Self::Elem) -> String;
    fn parse_elem(&self, text: &str) -> Result<Self::Elem, FieldError>;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn square(&self, a: Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Number of elements, `2^bits`.
    fn order(&self) -> u128 {
        1u128 << self.bits()
    }
}

#[derive(Debug)]
struct LogTables {
    log: Vec<u32>,
    // Doubled so a sum of two logs indexes without a reduction.
    exp: Vec<Elem>,
}

/// Arithmetic context for `F_2[x]/(m)` with `m` irreducible.
#[derive(Clone)]
pub struct FieldCtx {
    degree: u32,
    modulus: u64,
    generator: Elem,
    kind: FieldKind,
    trace_mask: u64,
    tables: Option<Arc<LogTables>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("degree", &self.degree)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &format_args!("{:#x}", self.generator))
            .field("kind", &self.kind)
            .finish()
    }
}

/// `F_{2^n}` under the smallest-encoded irreducible modulus of degree `n`.
pub fn make_field(n: u32) -> Result<FieldCtx, FieldError> {
    if !(1..=MAX_FIELD_DEGREE).contains(&n) {
        return Err(FieldError::UnsupportedDegree(n));
    }
    Ok(FieldCtx::build(n, gf2x::smallest_irreducible(n), FieldKind::Base))
}

/// `F_2[x]/(m)` for an irreducible `m` of degree 1..=63.
pub fn make_quotient_field(m: u64) -> Result<FieldCtx, FieldError> {
    let n = match gf2x::degree(m) {
        Some(d) if (1..=MAX_QUOTIENT_DEGREE).contains(&d) => d,
        d => return Err(FieldError::UnsupportedDegree(d.unwrap_or(0))),
    };
    if let Some(factor) = gf2x::proper_factor(m) {
        return Err(FieldError::Reducible { modulus: m, factor });
    }
    Ok(FieldCtx::build(n, m, FieldKind::Quotient))
}

impl FieldCtx {
    fn build(degree: u32, modulus: u64, kind: FieldKind) -> FieldCtx {
        let mut ctx = FieldCtx {
            degree,
            modulus,
            generator: 1,
            kind,
            trace_mask: 0,
            tables: None,
        };
        // The trace is F2-linear, so it is the parity of the bits selected by
        // the traces of the basis monomials.
        for i in 0..degree {
            if ctx.slow_trace(1 << i) == 1 {
                ctx.trace_mask |= 1 << i;
            }
        }
        ctx.generator = ctx.find_generator();
        if degree <= TABLE_DEGREE {
            ctx.tables = Some(Arc::new(ctx.build_tables()));
        }
        ctx
    }

    fn find_generator(&self) -> Elem {
        let group = (1u64 << self.degree) - 1;
        if group == 1 {
            return 1;
        }
        let cofactors: Vec<u64> = gf2x::prime_factors(group)
            .into_iter()
            .map(|p| group / p)
            .collect();
        (2..1u64 << self.degree)
            .find(|&g| cofactors.iter().all(|&c| self.pow(g, c as u128) != 1))
            .expect("the multiplicative group is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let group = (1usize << self.degree) - 1;
        let mut log = vec![0u32; group + 1];
        let mut exp = vec![0; 2 * group];
        let mut x: Elem = 1;
        for i in 0..group {
            exp[i] = x;
            exp[i + group] = x;
            log[x as usize] = i as u32;
            x = gf2x::mulmod(x, self.generator, self.modulus);
        }
        LogTables { log, exp }
    }

    fn slow_trace(&self, a: Elem) -> u64 {
        let mut t = 0;
        let mut s = a;
        for _ in 0..self.degree {
            t ^= s;
            s = gf2x::mulmod(s, s, self.modulus);
        }
        debug_assert!(t <= 1);
        t
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// `2^n`.
    pub fn size(&self) -> u64 {
        1 << self.degree
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Discrete log to the base of [`FieldCtx::generator`]; `None` for zero
    /// or when the field has no tables.
    pub fn log(&self, a: Elem) -> Option<u32> {
        let t = self.tables.as_ref()?;
        (a != 0).then(|| t.log[a as usize])
    }

    /// `generator^e`, `e` taken modulo the group order. Needs tables.
    pub fn exp(&self, e: u64) -> Elem {
        let t = self.tables.as_ref().expect("exp needs log tables");
        let group = self.size() - 1;
        t.exp[(e % group) as usize]
    }

    /// Absolute trace `Tr_{2^n/2}`, as 0 or 1.
    pub fn trace(&self, a: Elem) -> u64 {
        ((a & self.trace_mask).count_ones() & 1) as u64
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.degree == 64 || a >> self.degree == 0
    }

    pub fn check(&self, a: Elem) -> Result<Elem, FieldError> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(FieldError::OutOfRange {
                value: a,
                degree: self.degree,
            })
        }
    }

    /// Square root; the Frobenius is a bijection so every element has one.
    pub fn sqrt(&self, a: Elem) -> Elem {
        self.pow(a, 1u128 << (self.degree - 1))
    }

    /// A solution `t` of `t^2 + t = c`, when `Tr(c) = 0`.
    pub fn solve_artin_schreier(&self, c: Elem) -> Option<Elem> {
        if self.trace(c) != 0 {
            return None;
        }
        // Gaussian elimination on the F2-linear map t -> t^2 + t.
        let n = self.degree as usize;
        let mut rows: Vec<(u64, u64)> = (0..n)
            .map(|i| {
                let b = 1u64 << i;
                (self.mul(b, b) ^ b, b)
            })
            .collect();
        let mut target = c;
        let mut sol = 0u64;
        for bit in (0..n).rev() {
            let Some(p) = rows.iter().position(|r| r.0 >> bit & 1 == 1) else {
                continue;
            };
            let pivot = rows.swap_remove(p);
            for r in rows.iter_mut() {
                if r.0 >> bit & 1 == 1 {
                    r.0 ^= pivot.0;
                    r.1 ^= pivot.1;
                }
            }
            if target >> bit & 1 == 1 {
                target ^= pivot.0;
                sol ^= pivot.1;
            }
        }
        debug_assert_eq!(target, 0);
        Some(sol)
    }

    pub fn format(&self, a: Elem) -> String {
        format_elem(a)
    }

    pub fn parse(&self, text: &str) -> Result<Elem, FieldError> {
        self.check(parse_hex(text)?)
    }
}

impl FiniteField for FieldCtx {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        0
    }

    fn one(&self) -> Elem {
        1
    }

    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        a ^ b
    }

    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => gf2x::mulmod(a, b, self.modulus),
        }
    }

    fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let group = (self.size() - 1) as usize;
                t.exp[(group - t.log[a as usize] as usize) % group]
            }
            None => self.pow(a, (1u128 << self.degree) - 2),
        })
    }

    fn bits(&self) -> u32 {
        self.degree
    }

    fn element(&self, i: u64) -> Elem {
        i
    }

    fn same_field(&self, other: &Self) -> bool {
        self.degree == other.degree && self.modulus == other.modulus
    }

    fn format_elem(&self, a: Elem) -> String {
        self.format(a)
    }

    fn parse_elem(&self, text: &str) -> Result<Elem, FieldError> {
        self.parse(text)
    }
}

/// An element `u + v z` of the quadratic extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem {
    pub u: Elem,
    pub v: Elem,
}

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem { u: 0, v: 0 };
    pub const ONE: ExtElem = ExtElem { u: 1, v: 0 };

    pub fn new(u: Elem, v: Elem) -> ExtElem {
        ExtElem { u, v }
    }

    pub fn base(u: Elem) -> ExtElem {
        ExtElem { u, v: 0 }
    }

    pub fn is_base(self) -> bool {
        self.v == 0
    }
}

/// `F_{q^2} = F_q[z]/(z^2 + z + k0)` over a base context `F_q`.
#[derive(Clone, Debug)]
pub struct ExtCtx {
    base: FieldCtx,
    k0: Elem,
}

impl ExtCtx {
    pub fn new(base: FieldCtx) -> ExtCtx {
        let k0 = (1..base.size())
            .find(|&k| base.trace(k) == 1)
            .expect("trace is onto F2");
        ExtCtx { base, k0 }
    }

    /// Extension of the canonical `F_{2^n}`.
    pub fn of_degree(n: u32) -> Result<ExtCtx, FieldError> {
        Ok(ExtCtx::new(make_field(n)?))
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    /// The constant `k0` of the defining relation `z^2 = z + k0`.
    pub fn k0(&self) -> Elem {
        self.k0
    }

    /// `q`, the size of the base field.
    pub fn q(&self) -> u64 {
        self.base.size()
    }

    pub fn z(&self) -> ExtElem {
        ExtElem { u: 0, v: 1 }
    }

    /// `x^q`.
    #[inline]
    pub fn frob(&self, x: ExtElem) -> ExtElem {
        ExtElem { u: x.u ^ x.v, v: x.v }
    }

    /// `x + x^q`, an element of `F_q`.
    #[inline]
    pub fn trace(&self, x: ExtElem) -> Elem {
        x.v
    }

    /// `x^(q+1)`, an element of `F_q`.
    #[inline]
    pub fn norm(&self, x: ExtElem) -> Elem {
        let b = &self.base;
        b.mul(x.u, x.u) ^ b.mul(x.u, x.v) ^ b.mul(self.k0, b.mul(x.v, x.v))
    }

    /// `x^(q-1)` for nonzero `x`.
    pub fn pow_q_minus_1(&self, x: ExtElem) -> Result<ExtElem, FieldError> {
        Ok(self.mul(self.frob(x), self.inv(x)?))
    }

    pub fn scale(&self, c: Elem, x: ExtElem) -> ExtElem {
        ExtElem {
            u: self.base.mul(c, x.u),
            v: self.base.mul(c, x.v),
        }
    }

    /// Ascending-encoding search for a generator of `F_{q^2}^*`.
    pub fn generator(&self) -> ExtElem {
        let group = (self.q() as u128) * (self.q() as u128) - 1;
        let cofactors: Vec<u128> = prime_factors_u128(group)
            .into_iter()
            .map(|p| group / p)
            .collect();
        (2..self.order())
            .map(|i| self.element(i as u64))
            .find(|&g| cofactors.iter().all(|&c| self.pow(g, c) != ExtElem::ONE))
            .expect("the multiplicative group is cyclic")
    }

    /// The `q + 1` elements of norm 1, as powers `1, ζ, ζ^2, …` with `ζ = g^(q-1)`.
    pub fn enumerate_mu(&self) -> Vec<ExtElem> {
        let zeta = self.pow(self.generator(), self.q() as u128 - 1);
        let mut out = Vec::with_capacity(self.q() as usize + 1);
        let mut x = ExtElem::ONE;
        for _ in 0..=self.q() {
            out.push(x);
            x = self.mul(x, zeta);
        }
        debug_assert_eq!(x, ExtElem::ONE);
        out
    }

    /// A root in `F_{q^2}` of `t^2 + t = c` for `c` in `F_q`; one always exists.
    pub fn solve_artin_schreier(&self, c: Elem) -> ExtElem {
        match self.base.solve_artin_schreier(c) {
            Some(t) => ExtElem::base(t),
            // (t0 + z)^2 + (t0 + z) = t0^2 + t0 + k0.
            None => {
                let t0 = self
                    .base
                    .solve_artin_schreier(c ^ self.k0)
                    .expect("trace of c + k0 is zero");
                ExtElem { u: t0, v: 1 }
            }
        }
    }

    pub fn format(&self, x: ExtElem) -> String {
        format!("{}:{}", format_elem(x.u), format_elem(x.v))
    }

    pub fn parse(&self, text: &str) -> Result<ExtElem, FieldError> {
        let (u, v) = text
            .split_once(':')
            .ok_or_else(|| FieldError::Parse(text.to_string()))?;
        Ok(ExtElem {
            u: self.base.parse(u)?,
            v: self.base.parse(v)?,
        })
    }
}

impl FiniteField for ExtCtx {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem::ZERO
    }

    fn one(&self) -> ExtElem {
        ExtElem::ONE
    }

    #[inline]
    fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        ExtElem {
            u: a.u ^ b.u,
            v: a.v ^ b.v,
        }
    }

    #[inline]
    fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        let vv = f.mul(a.v, b.v);
        ExtElem {
            u: f.mul(a.u, b.u) ^ f.mul(self.k0, vv),
            v: f.mul(a.u, b.v) ^ f.mul(a.v, b.u) ^ vv,
        }
    }

    fn inv(&self, a: ExtElem) -> Result<ExtElem, FieldError> {
        let n = self.base.inv(self.norm(a))?;
        Ok(self.scale(n, self.frob(a)))
    }

    fn bits(&self) -> u32 {
        2 * self.base.degree()
    }

    fn element(&self, i: u64) -> ExtElem {
        let n = self.base.degree();
        ExtElem {
            u: i & (self.q() - 1),
            v: i >> n,
        }
    }

    fn same_field(&self, other: &Self) -> bool {
        self.base.same_field(&other.base) && self.k0 == other.k0
    }

    fn format_elem(&self, a: ExtElem) -> String {
        self.format(a)
    }

    fn parse_elem(&self, text: &str) -> Result<ExtElem, FieldError> {
        self.parse(text)
    }
}

fn prime_factors_u128(n: u128) -> Vec<u128> {
    // Only called on q^2 - 1 = (q - 1)(q + 1) with q ≤ 2^24.
    let mut ps: Vec<u128> = Vec::new();
    let q = ((n + 1) as f64).sqrt().round() as u64;
    debug_assert_eq!((q as u128) * (q as u128) - 1, n);
    for f in [q - 1, q + 1] {
        for p in gf2x::prime_factors(f) {
            if !ps.contains(&(p as u128)) {
                ps.push(p as u128);
            }
        }
    }
    ps
}

pub fn format_elem(a: Elem) -> String {
    format!("{a:#x}")
}

pub fn parse_hex(text: &str) -> Result<Elem, FieldError> {
    let t = text.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .ok_or_else(|| FieldError::Parse(text.to_string()))?;
    if digits.is_empty() {
        return Err(FieldError::Parse(text.to_string()));
    }
    u64::from_str_radix(digits, 16).map_err(|_| FieldError::Parse(text.to_string()))
}

/// Canonical moduli for degrees `1..=max`, one `n: hex` line each.
pub fn modulus_registry(max: u32) -> String {
    (1..=max)
        .map(|n| format!("{n}: {:#x}\n", gf2x::smallest_irreducible(n)))
        .collect()
}
