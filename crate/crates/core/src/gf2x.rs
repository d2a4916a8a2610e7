//! Polynomials over F2 packed into machine words.
//!
//! Bit `i` of a word is the coefficient of `x^i`. Products of two words are
//! carried in a `u128`, so every routine here accepts moduli of degree up to 63.

/// Degree of `p`, or `None` for the zero polynomial.
pub fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Carry-less product.
pub fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let a = a as u128;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

/// Remainder of a double-width polynomial modulo `m` (`m` nonzero, degree ≤ 63).
pub fn reduce(mut p: u128, m: u64) -> u64 {
    let dm = degree(m).expect("zero modulus");
    let m = m as u128;
    while p != 0 {
        let dp = 127 - p.leading_zeros();
        if dp < dm {
            break;
        }
        p ^= m << (dp - dm);
    }
    p as u64
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    reduce(clmul(a, b), m)
}

pub fn divrem(mut a: u64, b: u64) -> (u64, u64) {
    let db = degree(b).expect("division by zero polynomial");
    let mut q = 0u64;
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        q |= 1 << (da - db);
        a ^= b << (da - db);
    }
    (q, a)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = divrem(a, b).1;
        a = b;
        b = r;
    }
    a
}

/// A nontrivial proper factor of `m`, or `None` when `m` is irreducible.
///
/// Uses distinct-degree splitting: the first `i` with `gcd(x^(2^i) - x, m) != 1`
/// exposes the product of all irreducible factors of degree `i`.
pub fn proper_factor(m: u64) -> Option<u64> {
    let d = degree(m).expect("zero polynomial");
    if d <= 1 {
        return None;
    }
    let x = 0b10u64;
    let mut frob = x;
    for i in 1..=d / 2 {
        frob = mulmod(frob, frob, m);
        let g = gcd(m, frob ^ x);
        if g != 1 {
            if g == m {
                // Every factor has degree i; split by brute force over that degree.
                return Some(factor_equal_degree(m, i));
            }
            return Some(g);
        }
    }
    None
}

fn factor_equal_degree(m: u64, i: u32) -> u64 {
    // Monic polynomials of degree i, scanned in encoding order; i ≤ 31 here.
    (1u64 << i..1u64 << (i + 1))
        .find(|&c| divrem(m, c).1 == 0)
        .expect("equal-degree factor exists")
}

pub fn is_irreducible(m: u64) -> bool {
    degree(m).is_some_and(|d| d >= 1) && proper_factor(m).is_none()
}

/// Smallest-encoded irreducible polynomial of degree `n` (1 ≤ n ≤ 63).
pub fn smallest_irreducible(n: u32) -> u64 {
    assert!((1..=63).contains(&n));
    let top = 1u64 << n;
    (0..top)
        .map(|low| top | low)
        .find(|&m| is_irreducible(m))
        .expect("irreducible polynomials exist in every degree")
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles_match_brute_force() {
        // Irreducible iff no divisor of degree 1..=d/2, checked by plain division.
        for m in 2u64..1 << 10 {
            let d = degree(m).unwrap();
            let brute = d >= 1
                && (2u64..m)
                    .filter(|&c| degree(c).unwrap() <= d / 2 && degree(c).unwrap() >= 1)
                    .all(|c| divrem(m, c).1 != 0);
            assert_eq!(is_irreducible(m), brute, "m = {m:#b}");
        }
    }

    #[test]
    fn factors_are_proper_divisors() {
        for m in 4u64..1 << 12 {
            if let Some(f) = proper_factor(m) {
                assert_eq!(divrem(m, f).1, 0);
                assert!(f != 1 && f != m);
            }
        }
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2: equal-degree case.
        assert_eq!(proper_factor(0b10101), Some(0b111));
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(smallest_irreducible(1), 0b10);
        assert_eq!(smallest_irreducible(2), 0b111);
        assert_eq!(smallest_irreducible(3), 0b1011);
        assert_eq!(smallest_irreducible(4), 0b10011);
        assert_eq!(smallest_irreducible(8), 0x11b);
    }

    #[test]
    fn primes() {
        assert_eq!(prime_factors(255), vec![3, 5, 17]);
        assert_eq!(prime_factors((1 << 35) - 1), vec![31, 71, 127, 122921]);
    }
}
