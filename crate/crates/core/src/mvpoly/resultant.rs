//! Resultants of F2 polynomials with respect to one variable.
//!
//! The main route evaluates both polynomials on a grid over `F_{2^m}`, takes
//! univariate resultants there with the formal Sylvester degrees, and
//! interpolates the values back. Using formal degrees keeps every grid point
//! valid even where a leading coefficient vanishes. A fraction-free Sylvester
//! determinant over the polynomial ring is kept as an independent check for
//! small inputs.

use rayon::prelude::*;

use super::{var_cmp, Exps, MvPoly, MvPolyError, MAX_VARS};
use crate::field::{make_field, FieldCtx, FiniteField, TABLE_DEGREE};
use crate::unipoly::{resultant_formal, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultantStats {
    /// Degree of the evaluation field over F2.
    pub field_bits: u32,
    pub grid_points: usize,
    /// Degree bound used for each remaining variable.
    pub bounds: Vec<(String, u32)>,
}

/// `Res_var(f, g)` with the Sylvester matrix sized by `deg_var f` and `deg_var g`.
pub fn resultant(f: &MvPoly, g: &MvPoly, var: &str) -> Result<MvPoly, MvPolyError> {
    resultant_with_stats(f, g, var).map(|(r, _)| r)
}

pub fn resultant_with_stats(
    f: &MvPoly,
    g: &MvPoly,
    var: &str,
) -> Result<(MvPoly, ResultantStats), MvPolyError> {
    let (Some(m), Some(n)) = (f.degree_in(var), g.degree_in(var)) else {
        let stats = ResultantStats {
            field_bits: 0,
            grid_points: 0,
            bounds: Vec::new(),
        };
        return Ok((MvPoly::zero(), stats));
    };
    let mut rest: Vec<String> = f
        .vars()
        .iter()
        .chain(g.vars())
        .filter(|v| *v != var)
        .cloned()
        .collect();
    rest.sort_by(|a, b| var_cmp(a, b));
    rest.dedup();
    let bounds: Vec<u32> = rest
        .iter()
        .map(|w| m * g.degree_in(w).unwrap_or(0) + n * f.degree_in(w).unwrap_or(0))
        .collect();
    let max_bound = bounds.iter().copied().max().unwrap_or(0) as u64;
    let mut bits = 1;
    while (1u64 << bits) < max_bound + 1 {
        bits += 1;
    }
    if bits > TABLE_DEGREE {
        return Err(MvPolyError::GridTooLarge(bits));
    }
    let field = make_field(bits)?;
    let cf = Compiled::new(f, var, &rest);
    let cg = Compiled::new(g, var, &rest);

    let dims: Vec<usize> = bounds.iter().map(|&b| b as usize + 1).collect();
    let total: usize = dims.iter().product();
    let values: Vec<u64> = (0..total)
        .into_par_iter()
        .map_init(
            || vec![0u64; dims.len()],
            |point, flat| {
                let mut r = flat;
                for (d, &size) in dims.iter().enumerate().rev() {
                    point[d] = (r % size) as u64;
                    r /= size;
                }
                let fp = cf.specialize(&field, point);
                let gp = cg.specialize(&field, point);
                resultant_formal(&fp, &gp, m as usize, n as usize).expect("same field")
            },
        )
        .collect();

    let coeffs = interpolate_grid(&field, values, &dims);
    let mut terms: Vec<Exps> = Vec::new();
    for (flat, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut exps = [0u16; MAX_VARS];
        let mut r = flat;
        for (d, &size) in dims.iter().enumerate().rev() {
            exps[d] = (r % size) as u16;
            r /= size;
        }
        if c != 1 {
            return Err(MvPolyError::NonBinaryCoefficient(
                exps[..dims.len()].iter().map(|&e| e as u32).collect(),
            ));
        }
        terms.push(exps);
    }
    let stats = ResultantStats {
        field_bits: bits,
        grid_points: total,
        bounds: rest.iter().cloned().zip(bounds).collect(),
    };
    Ok((MvPoly::from_parts(rest, terms), stats))
}

/// Coefficients in the eliminated variable, each a term list over the remaining variables.
struct Compiled {
    coeffs: Vec<Vec<Vec<u32>>>,
}

impl Compiled {
    fn new(p: &MvPoly, var: &str, rest: &[String]) -> Compiled {
        let map: Vec<usize> = rest
            .iter()
            .map(|w| p.vars().iter().position(|v| v == w).unwrap_or(usize::MAX))
            .collect();
        let coeffs = p
            .collect(var)
            .iter()
            .map(|c| {
                let cmap: Vec<usize> = map
                    .iter()
                    .map(|&i| {
                        if i == usize::MAX {
                            usize::MAX
                        } else {
                            c.vars()
                                .iter()
                                .position(|v| *v == p.vars()[i])
                                .unwrap_or(usize::MAX)
                        }
                    })
                    .collect();
                c.terms()
                    .iter()
                    .map(|t| {
                        cmap.iter()
                            .map(|&i| if i == usize::MAX { 0 } else { t[i] as u32 })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Compiled { coeffs }
    }

    fn specialize(&self, field: &FieldCtx, point: &[u64]) -> UniPoly<FieldCtx> {
        let group = field.size() - 1;
        let logs: Vec<Option<u64>> = point.iter().map(|&x| field.log(x).map(u64::from)).collect();
        let coeffs = self
            .coeffs
            .iter()
            .map(|terms| {
                let mut acc = 0u64;
                'term: for t in terms {
                    let mut l = 0u64;
                    for (e, lg) in t.iter().zip(&logs) {
                        if *e == 0 {
                            continue;
                        }
                        match lg {
                            None => continue 'term,
                            Some(lg) => l += *e as u64 * lg,
                        }
                    }
                    acc ^= field.exp(l % group);
                }
                acc
            })
            .collect();
        UniPoly::new(field, coeffs)
    }
}

/// Converts grid values at points `0, 1, 2, …` along each axis into monomial coefficients.
fn interpolate_grid(field: &FieldCtx, mut values: Vec<u64>, dims: &[usize]) -> Vec<u64> {
    let total = values.len();
    for axis in 0..dims.len() {
        let size = dims[axis];
        if size == 1 {
            continue;
        }
        let stride: usize = dims[axis + 1..].iter().product();
        let plan = NewtonPlan::new(field, size);
        let mut line = vec![0u64; size];
        for base in 0..total {
            // Visit each line once, from its first element.
            if !(base / stride).is_multiple_of(size) {
                continue;
            }
            for (i, slot) in line.iter_mut().enumerate() {
                *slot = values[base + i * stride];
            }
            plan.to_monomial(field, &mut line);
            for (i, &v) in line.iter().enumerate() {
                values[base + i * stride] = v;
            }
        }
    }
    values
}

/// Newton interpolation at the points `0, 1, …, n-1` of a binary field.
struct NewtonPlan {
    n: usize,
    // inv_diff[i][j] = 1 / (x_i + x_j) for j < i.
    inv_diff: Vec<Vec<u64>>,
}

impl NewtonPlan {
    fn new(field: &FieldCtx, n: usize) -> NewtonPlan {
        let inv_diff = (0..n)
            .map(|i| {
                (0..i)
                    .map(|j| field.inv((i ^ j) as u64).expect("distinct points"))
                    .collect()
            })
            .collect();
        NewtonPlan { n, inv_diff }
    }

    fn to_monomial(&self, field: &FieldCtx, c: &mut [u64]) {
        let n = self.n;
        for j in 1..n {
            for i in (j..n).rev() {
                c[i] = field.mul(c[i] ^ c[i - 1], self.inv_diff[i][i - j]);
            }
        }
        // Horner in the Newton basis: p = c[n-1]; p = p (X - x_i) + c[i].
        let mut p = vec![0u64; n];
        p[0] = c[n - 1];
        for (deg, i) in (0..n - 1).rev().enumerate() {
            let xi = i as u64;
            // Multiply by (X + x_i).
            for k in (0..=deg).rev() {
                let t = p[k];
                p[k + 1] ^= t;
                p[k] = field.mul(t, xi);
            }
            p[0] ^= c[i];
        }
        c.copy_from_slice(&p);
    }
}

/// Fraction-free Sylvester determinant over the polynomial ring.
pub fn resultant_sylvester(f: &MvPoly, g: &MvPoly, var: &str) -> Result<MvPoly, MvPolyError> {
    let (Some(m), Some(n)) = (f.degree_in(var), g.degree_in(var)) else {
        return Ok(MvPoly::zero());
    };
    let (m, n) = (m as usize, n as usize);
    let fc = f.collect(var);
    let gc = g.collect(var);
    let size = m + n;
    if size == 0 {
        return Ok(MvPoly::one());
    }
    let mut rows: Vec<Vec<MvPoly>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![MvPoly::zero(); size];
        for j in 0..=m {
            row[i + j] = fc[m - j].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![MvPoly::zero(); size];
        for j in 0..=n {
            row[i + j] = gc[n - j].clone();
        }
        rows.push(row);
    }
    let mut prev = MvPoly::one();
    for k in 0..size - 1 {
        let Some(p) = (k..size).find(|&r| !rows[r][k].is_zero()) else {
            return Ok(MvPoly::zero());
        };
        rows.swap(k, p);
        for i in k + 1..size {
            for j in k + 1..size {
                let num = rows[k][k].mul(&rows[i][j]).add(&rows[i][k].mul(&rows[k][j]));
                rows[i][j] = num.div_exact(&prev)?;
            }
            rows[i][k] = MvPoly::zero();
        }
        prev = rows[k][k].clone();
    }
    Ok(rows[size - 1][size - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn p(s: &str) -> MvPoly {
        parse(s).unwrap()
    }

    #[test]
    fn univariate_cases() {
        assert!(resultant(&p("X^2 + X"), &p("X"), "X").unwrap().is_zero());
        assert!(resultant(&p("X^2 + X + 1"), &p("X"), "X").unwrap().is_one());
    }

    #[test]
    fn one_parameter() {
        // Res_X(X - a, X^2 + k) = a^2 + k.
        assert_eq!(resultant(&p("X + a"), &p("X^2 + k"), "X").unwrap(), p("a^2 + k"));
    }

    #[test]
    fn interpolation_matches_bareiss() {
        let cases = [
            ("a*X^2 + b1*X + k", "X^3 + a*k*X + b1^2"),
            ("(a+1)*X^3 + k^2*X + 1", "b1*X^2 + a*X + k"),
            ("a*X + b1", "a*X + b1 + 1"),
            ("X^2*a*b1 + X*k + a", "a*X^2 + k^3"),
        ];
        for (f, g) in cases {
            let (f, g) = (p(f), p(g));
            assert_eq!(
                resultant(&f, &g, "X").unwrap(),
                resultant_sylvester(&f, &g, "X").unwrap(),
                "{f} / {g}"
            );
        }
    }

    #[test]
    fn stats_report_bounds() {
        let (_, st) = resultant_with_stats(&p("a*X^2 + k"), &p("X + b1"), "X").unwrap();
        assert_eq!(
            st.bounds,
            vec![("a".to_string(), 1), ("b1".to_string(), 2), ("k".to_string(), 1)]
        );
        assert_eq!(st.grid_points, 2 * 3 * 2);
    }
}
