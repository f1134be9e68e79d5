//! Sylvester resultants, principal subresultant coefficients and
//! discriminants, all via fraction-free (Bareiss) determinants.

use super::MultiPoly;
use crate::error::{Error, Result};

/// Rows of the `j`-th Sylvester-Habicht matrix of `f` and `g` in `var`:
/// `deg g - j` shifted copies of `f` then `deg f - j` shifted copies of `g`,
/// columns ordered from the highest power down.
fn subresultant_matrix(f: &MultiPoly, g: &MultiPoly, var: usize, j: usize) -> Vec<Vec<MultiPoly>> {
    let n = f.nvars();
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let m = fc.len() - 1;
    let k = gc.len() - 1;
    let cols = m + k - j;
    let mut rows = Vec::with_capacity(m + k - 2 * j);
    for (src, copies) in [(&fc, k - j), (&gc, m - j)] {
        for s in 0..copies {
            let mut row = vec![MultiPoly::zero(n); cols];
            // row s holds x^(copies-1-s) * src
            for (e, c) in src.iter().enumerate() {
                let power = e + copies - 1 - s;
                row[cols - 1 - power] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free determinant of a square matrix over the polynomial ring.
pub fn det(mut a: Vec<Vec<MultiPoly>>, nvars: usize) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut sign_flip = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t
                    .exact_div(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        -&d
    } else {
        d
    }
}

/// Sylvester resultant of `f` and `g` eliminating `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    check(f, g, var)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = f.degree_in(var) as usize;
    let k = g.degree_in(var) as usize;
    if m == 0 && k == 0 {
        return Ok(MultiPoly::one(f.nvars()));
    }
    Ok(det(subresultant_matrix(f, g, var, 0), f.nvars()))
}

/// Principal subresultant coefficient `psc_j(f, g)` in `var`, for
/// `0 <= j <= min(deg f, deg g)`.
pub fn psc(f: &MultiPoly, g: &MultiPoly, var: usize, j: usize) -> Result<MultiPoly> {
    check(f, g, var)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = f.degree_in(var) as usize;
    let k = g.degree_in(var) as usize;
    if j > m.min(k) {
        return Err(Error::Precondition(format!(
            "psc index {j} exceeds min degree {}",
            m.min(k)
        )));
    }
    let size = m + k - 2 * j;
    let sq: Vec<Vec<MultiPoly>> = subresultant_matrix(f, g, var, j)
        .into_iter()
        .map(|row| row[..size].to_vec())
        .collect();
    Ok(det(sq, f.nvars()))
}

/// `res(f, ∂f/∂var) / lc(f)`.
pub fn discriminant(f: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.derivative(var)?;
    if d.is_zero() {
        return Ok(MultiPoly::one(f.nvars()));
    }
    let r = resultant(f, &d, var)?;
    r.exact_div(&f.leading_coeff_in(var))
        .ok_or_else(|| Error::Precondition("leading coefficient does not divide the resultant".into()))
}

fn check(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<()> {
    if f.nvars() != g.nvars() {
        return Err(Error::VarCountMismatch(f.nvars(), g.nvars()));
    }
    if var >= f.nvars() {
        return Err(Error::VarOutOfRange {
            var,
            nvars: f.nvars(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, Some(3)).unwrap()
    }

    #[test]
    fn circle_resultant() {
        assert_eq!(resultant(&p("x2^2 + x1^2 - 1"), &p("2*x2"), 1).unwrap(), p("4*x1^2 - 4"));
    }

    #[test]
    fn linear_pair() {
        // det [[1, -a], [1, -b]] = a - b
        assert_eq!(resultant(&p("x2 - 3"), &p("x2 - 5"), 1).unwrap(), p("-2"));
    }

    #[test]
    fn constant_in_var() {
        // deg f = 1, so the Sylvester matrix is the single entry x1^2
        assert_eq!(resultant(&p("x1^2*x3 - x2^2"), &p("x1^2"), 2).unwrap(), p("x1^2"));
        assert_eq!(resultant(&p("x1^2"), &p("x1^2*x3 - x2^2"), 2).unwrap(), p("x1^2"));
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p("x2^2 + x1^2 - 1"), 1).unwrap(), p("4*x1^2 - 4"));
        assert_eq!(discriminant(&p("x1*x2^2 + x2 + 1"), 1).unwrap(), p("4*x1 - 1"));
    }

    #[test]
    fn psc_top_is_lc_power() {
        let f = p("x2^3 + x1*x2 + 1");
        let g = f.derivative(1).unwrap();
        assert_eq!(psc(&f, &g, 1, 2).unwrap(), p("3"));
        assert_eq!(psc(&f, &g, 1, 0).unwrap(), resultant(&f, &g, 1).unwrap());
        assert!(resultant(&p("x1"), &p("x1"), 5).is_err());
    }
}
