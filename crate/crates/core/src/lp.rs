//! Exact linear programming over the integers.
//!
//! Problems are in standard form `A x = b, x ≥ 0` with integer data. The
//! solver is a two-phase simplex with Bland's rule on an integer-preserving
//! (fraction-free) tableau: every stored entry is the true entry times the
//! current basis determinant, and each pivot divides exactly by the previous
//! one. Arithmetic runs in checked `i128` and restarts in `BigInt` on
//! overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::{int, Rational};

trait Ring: Clone + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn sign(&self) -> i32;
    fn to_big(&self) -> BigInt;
}

impl Ring for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = (self / o, self % o);
        assert!(r == 0, "inexact fraction-free pivot");
        Some(q)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> i32 {
        self.signum() as i32
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o);
        assert!(r.is_zero(), "inexact fraction-free pivot");
        Some(q)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// `A x = b, x ≥ 0`.
#[derive(Clone, Debug)]
pub struct Problem {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A feasible point.
    Feasible(Vec<Rational>),
    /// Farkas certificate `y` with `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible(Vec<Rational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible(Vec<Rational>),
    Unbounded,
}

enum Outcome<T> {
    Infeasible(Vec<T>, T),
    Unbounded,
    Done(Tableau<T>),
}

struct Tableau<T> {
    n: usize,
    rows: Vec<Vec<T>>,
    obj: Vec<T>,
    basis: Vec<usize>,
    d: T,
}

impl<T: Ring> Tableau<T> {
    fn rhs(&self) -> usize {
        self.rows[0].len() - 1
    }

    fn pivot(&mut self, r: usize, s: usize) -> Option<()> {
        let p = self.rows[r][s].clone();
        let width = self.rows[r].len();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][s].clone();
            if f.sign() == 0 {
                // (T·p − 0)/d
                for j in 0..width {
                    self.rows[i][j] = self.rows[i][j].mul(&p)?.div_exact(&self.d)?;
                }
                continue;
            }
            for j in 0..width {
                let v = self.rows[i][j].mul(&p)?.sub(&f.mul(&self.rows[r][j])?)?;
                self.rows[i][j] = v.div_exact(&self.d)?;
            }
        }
        let f = self.obj[s].clone();
        for j in 0..width {
            let v = self.obj[j].mul(&p)?.sub(&f.mul(&self.rows[r][j])?)?;
            self.obj[j] = v.div_exact(&self.d)?;
        }
        self.basis[r] = s;
        if p.sign() < 0 {
            for row in self.rows.iter_mut().chain(std::iter::once(&mut self.obj)) {
                for x in row.iter_mut() {
                    *x = x.neg();
                }
            }
            self.d = p.neg();
        } else {
            self.d = p;
        }
        Some(())
    }

    /// Minimizes with Bland's rule over columns `< limit`. `Some(false)` means
    /// unbounded.
    fn run(&mut self, limit: usize) -> Option<bool> {
        let rhs = self.rhs();
        loop {
            let Some(s) = (0..limit).find(|&j| self.obj[j].sign() < 0) else {
                return Some(true);
            };
            let mut best: Option<usize> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][s].sign() <= 0 {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(k) => {
                        // rows[i][rhs]/rows[i][s] vs rows[k][rhs]/rows[k][s]
                        let lhs = self.rows[i][rhs].mul(&self.rows[k][s])?;
                        let rhs_v = self.rows[k][rhs].mul(&self.rows[i][s])?;
                        let c = lhs.sub(&rhs_v)?.sign();
                        if c < 0 || (c == 0 && self.basis[i] < self.basis[k]) {
                            Some(i)
                        } else {
                            Some(k)
                        }
                    }
                };
            }
            let Some(r) = best else {
                return Some(false);
            };
            self.pivot(r, s)?;
        }
    }

    fn solution(&self) -> Vec<Rational> {
        let rhs = self.rhs();
        let d = self.d.to_big();
        let mut x = vec![Rational::zero(); self.n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = Rational::new(self.rows[r][rhs].to_big(), d.clone());
            }
        }
        x
    }
}

fn solve<T: Ring>(p: &Problem, cost: Option<&[i64]>) -> Option<Outcome<T>> {
    let m = p.b.len();
    let n = p.a.first().map_or(0, |r| r.len());
    let signs: Vec<i64> = p.b.iter().map(|&v| if v < 0 { -1 } else { 1 }).collect();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(n + m + 1);
        row.extend(p.a[i].iter().map(|&v| T::from_i64(v * signs[i])));
        row.extend((0..m).map(|k| T::from_i64((k == i) as i64)));
        row.push(T::from_i64(p.b[i] * signs[i]));
        rows.push(row);
    }
    // Phase one: minimize the sum of artificials.
    let mut obj = vec![T::from_i64(0); n + m + 1];
    for j in 0..n {
        let s: i64 = (0..m).map(|i| p.a[i][j] * signs[i]).sum();
        obj[j] = T::from_i64(-s);
    }
    obj[n + m] = T::from_i64(-(0..m).map(|i| p.b[i] * signs[i]).sum::<i64>());
    let mut t = Tableau { n, rows, obj, basis: (n..n + m).collect(), d: T::from_i64(1) };
    let bounded = t.run(n + m)?;
    debug_assert!(bounded);

    if t.obj[n + m].sign() != 0 {
        // y_i = 1 − (reduced cost of artificial i), undoing the row flips.
        let y = (0..m)
            .map(|i| {
                let v = t.d.sub(&t.obj[n + i])?;
                if signs[i] < 0 {
                    Some(v.neg())
                } else {
                    Some(v)
                }
            })
            .collect::<Option<Vec<T>>>()?;
        return Some(Outcome::Infeasible(y, t.d));
    }

    // Drive remaining artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] < n {
            continue;
        }
        if let Some(j) = (0..n).find(|&j| t.rows[r][j].sign() != 0) {
            t.pivot(r, j)?;
        }
    }

    if let Some(c) = cost {
        let width = n + m + 1;
        let mut obj = Vec::with_capacity(width);
        for j in 0..width {
            let base = if j < n { T::from_i64(c[j]).mul(&t.d)? } else { T::from_i64(0) };
            let mut v = base;
            for (r, &b) in t.basis.iter().enumerate() {
                if b < n && c[b] != 0 {
                    v = v.sub(&T::from_i64(c[b]).mul(&t.rows[r][j])?)?;
                }
            }
            obj.push(v);
        }
        t.obj = obj;
        if !t.run(n)? {
            return Some(Outcome::Unbounded);
        }
    }
    Some(Outcome::Done(t))
}

fn to_rationals<T: Ring>(v: &[T], d: &T) -> Vec<Rational> {
    let d = d.to_big();
    v.iter().map(|x| Rational::new(x.to_big(), d.clone())).collect()
}

impl Problem {
    pub fn new(a: Vec<Vec<i64>>, b: Vec<i64>) -> Self {
        assert_eq!(a.len(), b.len());
        Problem { a, b }
    }

    fn run(&self, cost: Option<&[i64]>) -> Optimum {
        if let Some(out) = solve::<i128>(self, cost) {
            return self.finish(out, cost);
        }
        let out = solve::<BigInt>(self, cost).expect("BigInt arithmetic cannot overflow");
        self.finish(out, cost)
    }

    fn finish<T: Ring>(&self, out: Outcome<T>, cost: Option<&[i64]>) -> Optimum {
        match out {
            Outcome::Infeasible(y, d) => Optimum::Infeasible(to_rationals(&y, &d)),
            Outcome::Unbounded => Optimum::Unbounded,
            Outcome::Done(t) => {
                let x = t.solution();
                let value = match cost {
                    Some(c) => x.iter().zip(c).map(|(xi, &ci)| xi * int(ci)).sum(),
                    None => Rational::zero(),
                };
                Optimum::Optimal { value, x }
            }
        }
    }

    pub fn feasibility(&self) -> Feasibility {
        match self.run(None) {
            Optimum::Optimal { x, .. } => Feasibility::Feasible(x),
            Optimum::Infeasible(y) => Feasibility::Infeasible(y),
            Optimum::Unbounded => unreachable!("phase one is bounded"),
        }
    }

    pub fn minimize(&self, c: &[i64]) -> Optimum {
        self.run(Some(c))
    }

    pub fn maximize(&self, c: &[i64]) -> Optimum {
        let neg: Vec<i64> = c.iter().map(|v| -v).collect();
        match self.run(Some(&neg)) {
            Optimum::Optimal { value, x } => Optimum::Optimal { value: -value, x },
            other => other,
        }
    }

    /// Checks a feasibility or infeasibility certificate against the data.
    pub fn check(&self, f: &Feasibility) -> bool {
        let n = self.a.first().map_or(0, |r| r.len());
        match f {
            Feasibility::Feasible(x) => {
                x.len() == n
                    && x.iter().all(|v| !v.is_negative())
                    && self.a.iter().zip(&self.b).all(|(row, &bi)| {
                        row.iter().zip(x).map(|(&a, xv)| xv * int(a)).sum::<Rational>() == int(bi)
                    })
            }
            Feasibility::Infeasible(y) => {
                let yb: Rational = y.iter().zip(&self.b).map(|(yi, &bi)| yi * int(bi)).sum();
                yb.is_positive()
                    && (0..n).all(|j| {
                        let s: Rational = y.iter().zip(&self.a).map(|(yi, row)| yi * int(row[j])).sum();
                        !s.is_positive()
                    })
            }
        }
    }
}

/// Rational value as `i64` when integral.
pub fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("bound fits in i64")
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("bound fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn small_feasible_and_infeasible() {
        // x + y = 1, x − y = 0
        let p = Problem::new(vec![vec![1, 1], vec![1, -1]], vec![1, 0]);
        let f = p.feasibility();
        assert_eq!(f, Feasibility::Feasible(vec![rat(1, 2), rat(1, 2)]));
        assert!(p.check(&f));
        // x + y = 1, x + y = 2
        let q = Problem::new(vec![vec![1, 1], vec![1, 1]], vec![1, 2]);
        let g = q.feasibility();
        assert!(!g.is_feasible());
        assert!(q.check(&g));
        // −x = 1
        let r = Problem::new(vec![vec![-1]], vec![1]);
        let h = r.feasibility();
        assert!(!h.is_feasible() && r.check(&h));
    }

    #[test]
    fn optimize_with_redundant_rows() {
        // x + y + s = 4, 2x + 2y + 2s = 8: maximize x + 2y
        let p = Problem::new(vec![vec![1, 1, 1], vec![2, 2, 2]], vec![4, 8]);
        match p.maximize(&[1, 2, 0]) {
            Optimum::Optimal { value, .. } => assert_eq!(value, int(8)),
            o => panic!("{o:?}"),
        }
        match p.minimize(&[1, -1, 0]) {
            Optimum::Optimal { value, .. } => assert_eq!(value, int(-4)),
            o => panic!("{o:?}"),
        }
        let u = Problem::new(vec![vec![1, -1]], vec![0]);
        assert_eq!(u.maximize(&[1, 0]), Optimum::Unbounded);
    }

    #[test]
    fn big_coefficients_fall_back() {
        let big = 1i64 << 40;
        let p = Problem::new(
            vec![vec![big, 1, 0, 0], vec![1, big, 1, 0], vec![0, 1, big, 1], vec![0, 0, 1, big]],
            vec![big + 1, big + 2, big + 2, big + 1],
        );
        let f = p.feasibility();
        assert!(p.check(&f));
        assert_eq!(f, Feasibility::Feasible(vec![int(1); 4]));
    }
}
