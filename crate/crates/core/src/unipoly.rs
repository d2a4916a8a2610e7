//! Dense univariate polynomials over a [`FiniteField`].

use std::fmt;

use thiserror::Error;

use crate::field::{FieldError, FiniteField};
use crate::gf2x;

/// Fields up to this many elements are searched by enumeration when counting roots.
pub const ENUMERATION_BITS: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniPolyError {
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("field of 2^{0} elements is too large to enumerate")]
    TooLarge(u32),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficients in ascending order, with no trailing zeros.
#[derive(Clone)]
pub struct UniPoly<F: FiniteField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: FiniteField> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl<F: FiniteField> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl<F: FiniteField> Eq for UniPoly<F> {}

impl<F: FiniteField> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        let z = field.zero();
        while coeffs.last() == Some(&z) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c X^d`.
    pub fn monomial(field: &F, c: F::Elem, d: usize) -> Self {
        let mut v = vec![field.zero(); d + 1];
        v[d] = c;
        Self::new(field, v)
    }

    pub fn x(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F::Elem {
        self.coeffs.last().copied().unwrap_or(self.field.zero())
    }

    pub fn eval(&self, x: F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn same(&self, other: &Self) -> Result<(), UniPolyError> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(UniPolyError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, UniPolyError> {
        self.same(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::new(f, v))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, UniPolyError> {
        self.same(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f));
        }
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Ok(Self::new(f, v))
    }

    pub fn scale(&self, c: F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), UniPolyError> {
        self.same(d)?;
        let f = &self.field;
        let dd = d.degree().ok_or(UniPolyError::DivisionByZero)?;
        let inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if f.is_zero(c) {
                continue;
            }
            let t = f.mul(c, inv);
            q[i - dd] = t;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = f.add(r[i - dd + j], f.mul(t, dc));
            }
        }
        r.truncate(dd);
        Ok((Self::new(f, q), Self::new(f, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, UniPolyError> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Result<Self, UniPolyError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.scale(self.field.inv(self.leading())?))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, UniPolyError> {
        self.same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = (1..self.coeffs.len())
            .map(|i| if i % 2 == 1 { self.coeffs[i] } else { f.zero() })
            .collect();
        Self::new(f, v)
    }

    /// `self^(2^k) mod m`.
    pub fn square_iter_mod(&self, k: u64, m: &Self) -> Result<Self, UniPolyError> {
        let mut p = self.rem(m)?;
        for _ in 0..k {
            p = p.mul(&p)?.rem(m)?;
        }
        Ok(p)
    }

    /// Number of distinct roots in the coefficient field.
    pub fn count_roots(&self) -> Result<usize, UniPolyError> {
        if self.is_zero() {
            return Err(UniPolyError::ZeroPolynomial);
        }
        let f = &self.field;
        if f.bits() <= ENUMERATION_BITS {
            return Ok((0..1u64 << f.bits())
                .filter(|&i| f.is_zero(self.eval(f.element(i))))
                .count());
        }
        // deg gcd(X^|F| - X, p) counts the distinct roots.
        let x = Self::x(f);
        let frob = x.square_iter_mod(f.bits() as u64, self)?;
        let g = self.gcd(&frob.add(&x)?)?;
        Ok(g.degree().unwrap_or(0))
    }

    /// All roots, by enumeration.
    pub fn roots(&self) -> Result<Vec<F::Elem>, UniPolyError> {
        if self.is_zero() {
            return Err(UniPolyError::ZeroPolynomial);
        }
        let f = &self.field;
        if f.bits() > 24 {
            return Err(UniPolyError::TooLarge(f.bits()));
        }
        Ok((0..1u64 << f.bits())
            .map(|i| f.element(i))
            .filter(|&x| f.is_zero(self.eval(x)))
            .collect())
    }

    /// Rabin's test over a field with `2^bits` elements.
    pub fn is_irreducible(&self) -> Result<bool, UniPolyError> {
        let d = match self.degree() {
            None => return Err(UniPolyError::ZeroPolynomial),
            Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(d) => d as u64,
        };
        let bits = self.field.bits() as u64;
        let x = Self::x(&self.field);
        if x.square_iter_mod(bits * d, self)? != x.rem(self)? {
            return Ok(false);
        }
        for r in gf2x::prime_factors(d) {
            let h = x.square_iter_mod(bits * (d / r), self)?.add(&x)?;
            if self.gcd(&h)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `c_d*X^d + … + c_0`, zero coefficients omitted; the zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        let f = &self.field;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| !f.is_zero(c))
            .map(|(i, &c)| {
                let c = f.format_elem(c);
                match i {
                    0 => c,
                    1 => format!("{c}*X"),
                    _ => format!("{c}*X^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    pub fn parse(field: &F, text: &str) -> Result<Self, UniPolyError> {
        let bad = || UniPolyError::Parse(text.to_string());
        let t = text.trim();
        if t == "0" {
            return Ok(Self::zero(field));
        }
        let mut coeffs: Vec<F::Elem> = Vec::new();
        for term in t.split('+') {
            let term = term.trim();
            let (c, power) = match term.split_once('*') {
                Some((c, x)) => (field.parse_elem(c.trim())?, parse_power(x.trim()).ok_or_else(bad)?),
                None if term.starts_with('X') => (field.one(), parse_power(term).ok_or_else(bad)?),
                None => (field.parse_elem(term)?, 0),
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, field.zero());
            }
            coeffs[power] = field.add(coeffs[power], c);
        }
        Ok(Self::new(field, coeffs))
    }
}

fn parse_power(x: &str) -> Option<usize> {
    match x {
        "X" => Some(1),
        _ => x.strip_prefix("X^")?.parse().ok(),
    }
}

impl<F: FiniteField> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Resultant by the Euclidean recurrence, using actual degrees.
pub fn resultant<F: FiniteField>(f: &UniPoly<F>, g: &UniPoly<F>) -> Result<F::Elem, UniPolyError> {
    f.same(g)?;
    let fld = f.field();
    let (Some(_), Some(_)) = (f.degree(), g.degree()) else {
        return Ok(fld.zero());
    };
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = fld.one();
    loop {
        let m = a.degree().expect("nonzero");
        let n = b.degree().expect("nonzero");
        if n == 0 {
            return Ok(fld.mul(acc, fld.pow(b.leading(), m as u128)));
        }
        if m == 0 {
            return Ok(fld.mul(acc, fld.pow(a.leading(), n as u128)));
        }
        if m < n {
            // Characteristic 2: swapping the arguments changes no sign.
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = a.rem(&b)?;
        let Some(k) = r.degree() else {
            return Ok(fld.zero());
        };
        acc = fld.mul(acc, fld.pow(b.leading(), (m - k) as u128));
        a = b;
        b = r;
    }
}

/// Resultant of the Sylvester matrix built for formal degrees `m ≥ deg f`, `n ≥ deg g`.
///
/// When one leading coefficient vanishes the determinant picks up a power of the
/// other leading coefficient; when both vanish it is zero.
pub fn resultant_formal<F: FiniteField>(
    f: &UniPoly<F>,
    g: &UniPoly<F>,
    m: usize,
    n: usize,
) -> Result<F::Elem, UniPolyError> {
    f.same(g)?;
    let fld = f.field();
    assert!(f.degree().is_none_or(|d| d <= m) && g.degree().is_none_or(|d| d <= n));
    match (f.degree(), g.degree()) {
        (None, None) => Ok(if m + n == 0 { fld.one() } else { fld.zero() }),
        (None, Some(_)) => Ok(if n == 0 { fld.pow(g.leading(), m as u128) } else { fld.zero() }),
        (Some(_), None) => Ok(if m == 0 { fld.pow(f.leading(), n as u128) } else { fld.zero() }),
        (Some(df), Some(dg)) => {
            if df < m && dg < n {
                return Ok(fld.zero());
            }
            let r = resultant(f, g)?;
            let r = fld.mul(r, fld.pow(g.leading(), (m - df) as u128));
            Ok(fld.mul(r, fld.pow(f.leading(), (n - dg) as u128)))
        }
    }
}

/// Determinant of the Sylvester matrix for formal degrees `m`, `n`, by elimination.
pub fn sylvester_determinant<F: FiniteField>(
    f: &UniPoly<F>,
    g: &UniPoly<F>,
    m: usize,
    n: usize,
) -> Result<F::Elem, UniPolyError> {
    f.same(g)?;
    let fld = f.field();
    let size = m + n;
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![fld.zero(); size];
        for j in 0..=m {
            row[i + j] = f.coeff(m - j);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![fld.zero(); size];
        for j in 0..=n {
            row[i + j] = g.coeff(n - j);
        }
        rows.push(row);
    }
    Ok(determinant(fld, rows)?)
}

/// Determinant by Gaussian elimination; row swaps carry no sign in characteristic 2.
pub fn determinant<F: FiniteField>(fld: &F, mut rows: Vec<Vec<F::Elem>>) -> Result<F::Elem, FieldError> {
    let size = rows.len();
    let mut det = fld.one();
    for col in 0..size {
        let Some(p) = (col..size).find(|&r| !fld.is_zero(rows[r][col])) else {
            return Ok(fld.zero());
        };
        rows.swap(col, p);
        let pivot = rows[col][col];
        det = fld.mul(det, pivot);
        let inv = fld.inv(pivot)?;
        let pivot_row = rows[col].clone();
        for row in rows.iter_mut().skip(col + 1) {
            let c = row[col];
            if fld.is_zero(c) {
                continue;
            }
            let t = fld.mul(c, inv);
            for (x, &pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = fld.add(*x, fld.mul(t, pv));
            }
        }
    }
    Ok(det)
}
