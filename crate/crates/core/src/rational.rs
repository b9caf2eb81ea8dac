//! Exact rational scalars and the small amount of dense linear algebra the
//! root-datum construction needs.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand constructor `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Renders as `p` or `p/q`; never floating point.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Converts an integral rational to `i64`, `None` if fractional or too large.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

/// Numeric types the Weyl-group code is generic over: machine integers for
/// lattice weights and [`Rational`] for everything else.
pub trait Scalar:
    Clone + Ord + std::fmt::Debug + Zero + One + Signed + std::ops::SubAssign + std::ops::AddAssign
{
    fn from_i64(v: i64) -> Self;
    fn to_rational(&self) -> Rational;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_rational(&self) -> Rational {
        int(*self)
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        int(v)
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Solves the square system `a x = b` by Gauss–Jordan elimination.
/// Returns `None` when `a` is singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in col..n {
                let t = &f * &a[col][k];
                a[r][k] -= t;
            }
            let t = &f * &b[col];
            b[r] -= t;
        }
    }
    Some(b)
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e = (0..n).map(|i| if i == j { int(1) } else { int(0) }).collect();
        cols.push(solve(a.to_vec(), e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Basis of the null space `{x : a x = 0}` of an `m x n` matrix.
pub fn null_space(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for k in 0..n {
            m[row][k] = &m[row][k] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..n {
                    let t = &f * &m[row][k];
                    m[r][k] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![int(0); n];
            v[f] = int(1);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det_i64(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-5/2"), Some(rat(-5, 2)));
        assert_eq!(parse_rational("4/2"), Some(int(2)));
        assert_eq!(parse_rational(" 7 "), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_rational(&rat(399, 2)), "399/2");
        assert_eq!(fmt_rational(&int(-3)), "-3");
    }

    #[test]
    fn solve_and_null_space() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(a, vec![int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(singular, vec![int(1), int(1)]).is_none());
        let ns = null_space(&[vec![int(1), int(1), int(0)]], 3);
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(det_i64(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&[vec![1, 2], vec![2, 4]]), 0);
    }
}
