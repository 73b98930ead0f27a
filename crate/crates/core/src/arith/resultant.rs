use num_traits::{One, Zero};

use super::poly::Poly;
use super::ring::Field;

/// Sylvester matrix of `p` and `q` as polynomials in their outer variable,
/// with the `deg q` shifted rows of `p` first, then the `deg p` rows of `q`.
pub fn sylvester<R: Field>(p: &Poly<Poly<R>>, q: &Poly<Poly<R>>) -> Vec<Vec<Poly<R>>> {
    let dp = p.degree().unwrap_or(0);
    let dq = q.degree().unwrap_or(0);
    let n = dp + dq;
    let mut rows = Vec::with_capacity(n);
    for (src, deg, count) in [(p, dp, dq), (q, dq, dp)] {
        for r in 0..count {
            let mut row = vec![Poly::zero(); n];
            for k in 0..=deg {
                // descending coefficients, shifted right by r
                row[r + k] = src.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free (Bareiss) determinant over `R[y]`.
pub fn determinant<R: Field>(mut m: Vec<Vec<Poly<R>>>) -> Poly<R> {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss step is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Resultant with respect to the outer variable, `det sylvester(p, q)`.
///
/// For monic `p` this equals the product of `q` over the roots of `p`.
pub fn resultant<R: Field>(p: &Poly<Poly<R>>, q: &Poly<Poly<R>>) -> crate::Result<Poly<R>> {
    if p.is_zero() || q.is_zero() {
        return Err(crate::Error::precondition(
            "resultant of a zero polynomial is undefined",
        ));
    }
    Ok(determinant(sylvester(p, q)))
}
