use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Diagonal of the Smith normal form of a square integer matrix, each entry
/// non-negative and dividing the next.
pub fn smith_diagonal(a: &[Vec<i64>]) -> Result<Vec<BigInt>> {
    let n = a.len();
    if let Some(r) = a.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: r.len() });
    }
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
            let Some((pi, pj)) = pivot else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), n - t));
                return Ok(diag);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..n {
                        let v = &q * &m[t][j];
                        m[i][j] -= v;
                    }
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..n {
                        let v = &q * &m[i][t];
                        m[i][j] -= v;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // enforce divisibility by folding an offending row into row t
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !m[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    Ok(diag)
}

/// Number of torus solutions of the binomial system `x^{a_i} = c_i`:
/// the product of the elementary divisors of `A`.
pub fn binomial_count_oracle(a: &[Vec<i64>]) -> Result<BigInt> {
    let d = smith_diagonal(a)?;
    if d.iter().any(Zero::is_zero) {
        return Err(Error::SingularMatrix);
    }
    Ok(d.iter().fold(BigInt::one(), |acc, x| acc * x))
}
