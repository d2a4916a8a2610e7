//! The trinomial `f(X) = X^4 (1 + a X^(q-1) + b X^(3(q-1)))` over `F_{q^2}`, `q` even.
//!
//! Three permutation oracles live here: a full scan of `F_{q^2}`, a scan of the
//! unit circle `μ_{q+1}` (the norm-1 subgroup), and the closed-form criterion
//! `a = b` with `X^3 + X + 1/a` rootless in `F_q`. The rest of the module
//! evaluates the change of variables `x ↦ (x + z + 1)/(x + z)` that turns the
//! circle problem into a quartic over `F_q`, plus the two root criteria for
//! characteristic-2 quartics and cubics that finish the argument.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{Elem, ExtCtx, ExtElem, FieldCtx, FieldError, FiniteField};
use crate::unipoly::{UniPoly, UniPolyError};

/// Largest `q^2` the exhaustive oracle accepts.
pub const EXHAUSTIVE_MAX_BITS: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PpError {
    #[error("a must be a nonzero element of F_q")]
    BadA,
    #[error("b must be nonzero")]
    ZeroB,
    #[error("field of 2^{0} elements is too large for an exhaustive scan")]
    TooLarge(u32),
    #[error("1 + a + b vanishes")]
    DegenerateConstant,
    #[error("the denominator of g vanishes at the transported point")]
    PoleHit,
    #[error("leading quartic coefficient vanished: {0}")]
    DegenerateQuartic(String),
    #[error("alpha0 * alpha1 must be nonzero")]
    DegenerateLw,
    #[error("alpha1 must be nonzero")]
    ZeroAlpha1,
    #[error("internal invariant violated: {0}")]
    Bug(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] UniPolyError),
}

/// A pair `(a, b)` together with the quantities derived from it.
#[derive(Debug, Clone)]
pub struct TrinomialInstance {
    ext: ExtCtx,
    a: Elem,
    b: ExtElem,
    b1: Elem,
    kb: Option<Elem>,
}

impl TrinomialInstance {
    pub fn new(ext: &ExtCtx, a: Elem, b: ExtElem) -> Result<TrinomialInstance, PpError> {
        if a == 0 || !ext.base().contains(a) {
            return Err(PpError::BadA);
        }
        if b == ExtElem::ZERO {
            return Err(PpError::ZeroB);
        }
        ext.base().check(b.u)?;
        ext.base().check(b.v)?;
        let b1 = ext.trace(b);
        let kb = if b1 == 0 {
            None
        } else {
            let f = ext.base();
            let k = f.div(ext.norm(b), f.square(b1))?;
            if f.trace(k) != 1 {
                return Err(PpError::Bug(format!("Tr(k_b) = 0 for b = {}", ext.format(b))));
            }
            Some(k)
        };
        Ok(TrinomialInstance {
            ext: ext.clone(),
            a,
            b,
            b1,
            kb,
        })
    }

    pub fn ext(&self) -> &ExtCtx {
        &self.ext
    }

    pub fn a(&self) -> Elem {
        self.a
    }

    pub fn b(&self) -> ExtElem {
        self.b
    }

    /// `b + b^q`.
    pub fn b1(&self) -> Elem {
        self.b1
    }

    /// `b^(1+q) / b1^2`, defined when `b ∉ F_q`.
    pub fn kb(&self) -> Option<Elem> {
        self.kb
    }

    pub fn b_in_base(&self) -> bool {
        self.b1 == 0
    }

    /// The element `z` of trace 1 used by the change of variables, and its norm `k`.
    pub fn transport_z(&self) -> (ExtElem, Elem) {
        match self.kb {
            Some(k) => {
                let inv = self.ext.base().inv(self.b1).expect("b1 nonzero");
                (self.ext.scale(inv, self.b), k)
            }
            None => (self.ext.z(), self.ext.k0()),
        }
    }
}

/// `f(x)`, using `x^(q-1) = x^q / x`.
pub fn eval_f(inst: &TrinomialInstance, x: ExtElem) -> ExtElem {
    let e = &inst.ext;
    if x == ExtElem::ZERO {
        return ExtElem::ZERO;
    }
    let t = e.pow_q_minus_1(x).expect("x nonzero");
    let t3 = e.mul(e.square(t), t);
    let inner = e.add(
        e.add(ExtElem::ONE, e.scale(inst.a, t)),
        e.mul(inst.b, t3),
    );
    e.mul(e.square(e.square(x)), inner)
}

/// Marks images of `f` over all of `F_{q^2}`; stops at the first collision.
pub fn is_pp_exhaustive(inst: &TrinomialInstance) -> Result<bool, PpError> {
    let e = &inst.ext;
    let bits = e.bits();
    if bits > EXHAUSTIVE_MAX_BITS {
        return Err(PpError::TooLarge(bits));
    }
    let n = e.base().degree();
    let mut seen = vec![0u64; (1usize << bits).div_ceil(64)];
    for i in 0..1u64 << bits {
        let y = eval_f(inst, e.element(i));
        let idx = (y.u | y.v << n) as usize;
        if seen[idx / 64] >> (idx % 64) & 1 == 1 {
            return Ok(false);
        }
        seen[idx / 64] |= 1 << (idx % 64);
    }
    Ok(true)
}

/// Reusable state for the circle test: the enumerated circle and a bit set over it.
#[derive(Debug, Clone)]
pub struct MuTester {
    ext: ExtCtx,
    mu: Arc<[ExtElem]>,
    seen: Vec<u64>,
}

impl MuTester {
    pub fn new(ext: &ExtCtx) -> MuTester {
        MuTester::with_mu(ext, ext.enumerate_mu().into())
    }

    /// Shares an already enumerated circle between workers.
    pub fn with_mu(ext: &ExtCtx, mu: Arc<[ExtElem]>) -> MuTester {
        MuTester {
            ext: ext.clone(),
            seen: vec![0; mu.len().div_ceil(64)],
            mu,
        }
    }

    pub fn mu(&self) -> &Arc<[ExtElem]> {
        &self.mu
    }

    /// Index of a circle element: `q` for 1, otherwise the `y ∈ F_q` with
    /// `x = (y + z + 1)/(y + z)`, read off as the `F_q` part of `1/(x + 1)`.
    fn index(&self, x: ExtElem) -> usize {
        if x == ExtElem::ONE {
            return self.ext.q() as usize;
        }
        let w = self
            .ext
            .inv(self.ext.add(x, ExtElem::ONE))
            .expect("x differs from 1");
        debug_assert_eq!(w.v, 1, "point off the unit circle");
        w.u as usize
    }

    /// Whether `x ↦ x^4 (1 + a x + b x^3)^(q-1)` permutes the circle.
    pub fn test(&mut self, a: Elem, b: ExtElem) -> bool {
        let e = &self.ext;
        self.seen.iter_mut().for_each(|w| *w = 0);
        for i in 0..self.mu.len() {
            let x = self.mu[i];
            let x2 = e.square(x);
            let w = e.add(
                e.add(ExtElem::ONE, e.scale(a, x)),
                e.mul(b, e.mul(x2, x)),
            );
            if w == ExtElem::ZERO {
                // The map sends x to 0, which is off the circle.
                return false;
            }
            let h = e.mul(e.square(x2), e.pow_q_minus_1(w).expect("w nonzero"));
            debug_assert_eq!(e.norm(h), 1);
            let idx = self.index(h);
            if self.seen[idx / 64] >> (idx % 64) & 1 == 1 {
                return false;
            }
            self.seen[idx / 64] |= 1 << (idx % 64);
        }
        true
    }
}

/// Circle test for one instance.
pub fn is_pp_mu(inst: &TrinomialInstance) -> bool {
    MuTester::new(&inst.ext).test(inst.a, inst.b)
}

/// `X^3 + X + c` over the given field.
fn cubic(field: &FieldCtx, c: Elem) -> UniPoly<FieldCtx> {
    UniPoly::new(field, vec![c, 1, 0, 1])
}

/// The closed-form criterion: `b = a` and `X^3 + X + 1/a` has no root in `F_q`.
pub fn criterion(inst: &TrinomialInstance) -> Result<bool, PpError> {
    if inst.b != ExtElem::base(inst.a) {
        return Ok(false);
    }
    let f = inst.ext.base();
    Ok(cubic(f, f.inv(inst.a)?).count_roots()? == 0)
}

/// Entry `a` is true when `X^3 + X + 1/a` has no root in `F_q` (entry 0 is false).
///
/// The cubic has a root iff `1/a` lies in the image of `x ↦ x^3 + x`.
pub fn rootless_cubic_table(f: &FieldCtx) -> Vec<bool> {
    let mut hit = vec![false; f.size() as usize];
    for x in 0..f.size() {
        hit[(f.mul(f.square(x), x) ^ x) as usize] = true;
    }
    let mut out = vec![false; f.size() as usize];
    for a in 1..f.size() {
        out[a as usize] = !hit[f.inv(a).expect("nonzero") as usize];
    }
    out
}

/// `g(X) = X (b^q + a X^2 + X^3) / (1 + a X + b X^3)`.
pub fn eval_g(inst: &TrinomialInstance, x: ExtElem) -> Result<ExtElem, PpError> {
    let e = &inst.ext;
    let x2 = e.square(x);
    let x3 = e.mul(x2, x);
    let num = e.mul(x, e.add(e.add(e.frob(inst.b), e.scale(inst.a, x2)), x3));
    let den = e.add(e.add(ExtElem::ONE, e.scale(inst.a, x)), e.mul(inst.b, x3));
    if den == ExtElem::ZERO {
        return Err(PpError::PoleHit);
    }
    Ok(e.mul(num, e.inv(den)?))
}

fn phi(e: &ExtCtx, z: ExtElem, x: Elem) -> ExtElem {
    let d = e.add(ExtElem::base(x), z);
    e.mul(e.add(d, ExtElem::ONE), e.inv(d).expect("z is not in F_q"))
}

/// Whether `g((x+z+1)/(x+z)) = (1+a+b)^(q-1) (y+z+1)/(y+z)`.
pub fn transport_check(inst: &TrinomialInstance, x: Elem, y: Elem) -> Result<bool, PpError> {
    let e = &inst.ext;
    let c = e.add(ExtElem::base(1 ^ inst.a), inst.b);
    if c == ExtElem::ZERO {
        return Err(PpError::DegenerateConstant);
    }
    let (z, _) = inst.transport_z();
    let lhs = eval_g(inst, phi(e, z, x))?;
    let rhs = e.mul(e.pow_q_minus_1(c)?, phi(e, z, y));
    Ok(lhs == rhs)
}

/// All `x ∈ F_q` satisfying [`transport_check`] for `y`.
pub fn transport_fiber(inst: &TrinomialInstance, y: Elem) -> Result<Vec<Elem>, PpError> {
    let mut out = Vec::new();
    for x in 0..inst.ext.q() {
        if transport_check(inst, x, y)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Which polynomial equation a fiber came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuarticSource {
    /// `Σ C_i(y) x^i = 0` with `b ∉ F_q`.
    Extension,
    /// `Σ C_i(y) x^i = 0` with `b ∈ F_q`, `a ≠ b`.
    BaseField,
    /// `x^4 + a^2 x^2 + a^2 x + (k + a k + k^2 + y)^2 = 0` with `a = b`; its
    /// roots are the squares of the transported solutions.
    SquaredDiagonal,
}

/// An instantiated quartic over `F_q`, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberQuartic {
    pub source: QuarticSource,
    pub coeffs: [Elem; 5],
    pub roots: Vec<Elem>,
}

/// `C_0(y), …, C_4` in the `b ∉ F_q` case.
pub fn quartic_coeffs_extension(f: &FieldCtx, a: Elem, b1: Elem, k: Elem, y: Elem) -> [Elem; 5] {
    let m = |x: Elem, y: Elem| f.mul(x, y);
    let a2 = m(a, a);
    let b12 = m(b1, b1);
    let k2 = m(k, k);
    let ab1 = m(a, b1);
    let b12k = m(b12, k);
    let c4 = a2 ^ ab1 ^ b12k ^ b1 ^ 1;
    let c3 = a2 ^ ab1 ^ a ^ b12k ^ m(b1, y);
    let c2 = b12k ^ m(b1, k) ^ m(a2 ^ a ^ b12k, y);
    let c1 = m(a2, k) ^ m(ab1, k) ^ m(a, k) ^ m(b12, k2) ^ b12k ^ m(b1, k)
        ^ m(a2 ^ a ^ b12k ^ m(b1, k), y);
    let c0 = m(a2, k2) ^ m(ab1, k2) ^ m(a, k) ^ m(b12, m(k2, k)) ^ m(b12, k2) ^ k2 ^ k
        ^ m(m(a2, k) ^ m(a, k) ^ a ^ m(b12, k2) ^ m(b1, k) ^ 1, y);
    [c0, c1, c2, c3, c4]
}

/// `C_0(y), …, C_4` in the `b ∈ F_q` case.
pub fn quartic_coeffs_base(f: &FieldCtx, a: Elem, b: Elem, k: Elem, y: Elem) -> [Elem; 5] {
    let m = |x: Elem, y: Elem| f.mul(x, y);
    let k2 = m(k, k);
    let apb = a ^ b;
    [
        k ^ m(b, k) ^ k2 ^ m(a, k2) ^ m(b, k2) ^ m(1 ^ m(a, k) ^ m(b, k), y),
        b ^ m(a, k) ^ m(b, k) ^ m(apb, y),
        b ^ m(apb, y),
        apb,
        1 ^ apb,
    ]
}

/// Roots in `F_q` of the quartic attached to `y`.
pub fn fiber_quartic(inst: &TrinomialInstance, y: Elem) -> Result<FiberQuartic, PpError> {
    let f = inst.ext.base();
    let (source, coeffs) = match inst.kb {
        Some(k) => {
            let c = quartic_coeffs_extension(f, inst.a, inst.b1, k, y);
            if c[4] == 0 {
                return Err(PpError::DegenerateQuartic(format!(
                    "a = {}, b = {}",
                    f.format(inst.a),
                    inst.ext.format(inst.b)
                )));
            }
            (QuarticSource::Extension, c)
        }
        None if inst.b.u == inst.a => {
            let k = inst.ext.k0();
            let a2 = f.square(inst.a);
            let c0 = f.square(k ^ f.mul(inst.a, k) ^ f.square(k) ^ y);
            (QuarticSource::SquaredDiagonal, [c0, a2, a2, 0, 1])
        }
        None => {
            let c = quartic_coeffs_base(f, inst.a, inst.b.u, inst.ext.k0(), y);
            if c[4] == 0 {
                return Err(PpError::DegenerateConstant);
            }
            (QuarticSource::BaseField, c)
        }
    };
    let roots = UniPoly::new(f, coeffs.to_vec()).roots()?;
    Ok(FiberQuartic {
        source,
        coeffs,
        roots,
    })
}

/// Coefficients of `x^4 + α2 x^2 + α1 x + α0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuarticSpec {
    pub alpha0: Elem,
    pub alpha1: Elem,
    pub alpha2: Elem,
    pub source: Option<QuarticSource>,
}

impl QuarticSpec {
    pub fn new(alpha2: Elem, alpha1: Elem, alpha0: Elem) -> QuarticSpec {
        QuarticSpec {
            alpha0,
            alpha1,
            alpha2,
            source: None,
        }
    }

    pub fn poly(&self, f: &FieldCtx) -> UniPoly<FieldCtx> {
        UniPoly::new(f, vec![self.alpha0, self.alpha1, self.alpha2, 0, 1])
    }
}

/// Unique-root criterion: the quartic has exactly one root in `F_q` iff
/// `X^3 + α2 X + α1` is irreducible, i.e. rootless.
pub fn lw_unique_root(f: &FieldCtx, spec: &QuarticSpec) -> Result<bool, PpError> {
    if f.mul(spec.alpha0, spec.alpha1) == 0 {
        return Err(PpError::DegenerateLw);
    }
    let c = UniPoly::new(f, vec![spec.alpha1, spec.alpha2, 0, 1]);
    Ok(c.count_roots()? == 0)
}

/// Irreducibility test for `X^3 + α2 X + α1` through a trace condition and a
/// rootlessness condition for `X^6 + α1 X^3 + α2^3` over `F_{q^2}`.
///
/// Only nonzero roots of the sextic count: when `α2 = 0` it is divisible by
/// `X^3`, and the literal condition would reject every cubic `X^3 + α1`.
pub fn lw_cubic_irreducible(ext: &ExtCtx, alpha2: Elem, alpha1: Elem) -> Result<bool, PpError> {
    let f = ext.base();
    if alpha1 == 0 {
        return Err(PpError::ZeroAlpha1);
    }
    let a23 = f.mul(f.square(alpha2), alpha2);
    let t = 1 ^ f.div(a23, f.square(alpha1))?;
    if f.trace(t) != 0 {
        return Ok(false);
    }
    let sextic = UniPoly::new(
        ext,
        vec![
            ExtElem::base(a23),
            ExtElem::ZERO,
            ExtElem::ZERO,
            ExtElem::base(alpha1),
            ExtElem::ZERO,
            ExtElem::ZERO,
            ExtElem::ONE,
        ],
    );
    let zero_root = usize::from(a23 == 0);
    Ok(sextic.count_roots()? == zero_root)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(n: u32) -> ExtCtx {
        ExtCtx::of_degree(n).unwrap()
    }

    #[test]
    fn derived_quantities() {
        let e = ext(2);
        let i = TrinomialInstance::new(&e, 1, ExtElem::ONE).unwrap();
        assert!(i.b_in_base());
        let i = TrinomialInstance::new(&e, 1, e.z()).unwrap();
        assert_eq!(i.b1(), 1);
        assert!(TrinomialInstance::new(&e, 0, e.z()).is_err());
        assert!(TrinomialInstance::new(&e, 1, ExtElem::ZERO).is_err());
        assert!(TrinomialInstance::new(&e, 4, e.z()).is_err());
    }

    #[test]
    fn eval_f_matches_powers() {
        let e = ext(4);
        let i = TrinomialInstance::new(&e, 3, ExtElem::new(5, 9)).unwrap();
        let q = e.q() as u128;
        for n in 0..256 {
            let x = e.element(n);
            let naive = e.mul(
                e.pow(x, 4),
                e.add(
                    e.add(ExtElem::ONE, e.scale(3, e.pow(x, q - 1))),
                    e.mul(i.b(), e.pow(x, 3 * (q - 1))),
                ),
            );
            let naive = if x == ExtElem::ZERO { ExtElem::ZERO } else { naive };
            assert_eq!(eval_f(&i, x), naive);
        }
        assert_eq!(eval_f(&i, ExtElem::ONE), e.add(ExtElem::base(1 ^ 3), i.b()));
    }

    #[test]
    fn q4_examples() {
        let e = ext(2);
        let w = 2;
        let pp = |a: Elem, b: ExtElem| {
            let i = TrinomialInstance::new(&e, a, b).unwrap();
            (is_pp_exhaustive(&i).unwrap(), is_pp_mu(&i), criterion(&i).unwrap())
        };
        assert_eq!(pp(1, ExtElem::ONE), (true, true, true));
        assert_eq!(pp(w, ExtElem::base(w)), (false, false, false));
        assert_eq!(pp(1, ExtElem::base(w)), (false, false, false));
    }

    #[test]
    fn phi_is_a_bijection_onto_the_circle() {
        let e = ext(3);
        let z = e.z();
        let mut img: Vec<ExtElem> = (0..8).map(|x| phi(&e, z, x)).collect();
        img.push(ExtElem::ONE);
        img.sort();
        let mut mu = e.enumerate_mu();
        mu.sort();
        assert_eq!(img, mu);
    }

    #[test]
    fn rootless_table_matches_root_scan() {
        let f = crate::field::make_field(5).unwrap();
        let t = rootless_cubic_table(&f);
        for a in 1..32 {
            let roots = cubic(&f, f.inv(a).unwrap()).count_roots().unwrap();
            assert_eq!(t[a as usize], roots == 0);
        }
    }

    #[test]
    fn lw_small_examples() {
        let f2 = crate::field::make_field(1).unwrap();
        assert!(lw_unique_root(&f2, &QuarticSpec::new(1, 1, 1)).unwrap());
        assert!(!lw_unique_root(&f2, &QuarticSpec::new(0, 1, 1)).unwrap());
        assert!(lw_unique_root(&f2, &QuarticSpec::new(1, 0, 1)).is_err());
        let e = ext(2);
        assert!(lw_cubic_irreducible(&e, 1, 1).unwrap());
        assert!(lw_cubic_irreducible(&e, 1, 0).is_err());
    }
}
