//! The root datum of E7(-25) in its eight-coordinate realization, basis
//! conversions, and K-type predicates.
//!
//! Roots and weights live canonically as [`AmbientVector`]s. For the hot
//! paths every lattice weight is also carried in fundamental-weight (ζ-basis)
//! coordinates, where it is an integer 7-tuple; [`WeightLattice`] holds the
//! integer data (Cartan matrix, doubled Gram matrix) for that representation.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, invert, null_space, rat, solve, to_i64, Rational};

pub const RANK: usize = 7;
pub const AMBIENT_DIM: usize = 8;
/// Number of simple roots of the compact factor E6.
pub const COMPACT_RANK: usize = 6;

/// Integer coordinates of a lattice weight in the ζ-basis (fundamental weights of E7).
pub type Weight = [i64; RANK];

/// Exact vector in the ℝ⁸ realization.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AmbientVector(pub [Rational; AMBIENT_DIM]);

impl AmbientVector {
    pub fn zero() -> Self {
        AmbientVector(std::array::from_fn(|_| int(0)))
    }

    pub fn from_ints(c: [i64; AMBIENT_DIM]) -> Self {
        AmbientVector(c.map(int))
    }

    /// Components given as `(numerator, denominator)` pairs.
    pub fn from_fracs(c: [(i64, i64); AMBIENT_DIM]) -> Self {
        AmbientVector(c.map(|(n, d)| rat(n, d)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        AmbientVector(std::array::from_fn(|i| &self.0[i] * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for AmbientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AmbientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &AmbientVector {
    type Output = AmbientVector;
    fn add(self, o: &AmbientVector) -> AmbientVector {
        AmbientVector(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &AmbientVector {
    type Output = AmbientVector;
    fn sub(self, o: &AmbientVector) -> AmbientVector {
        AmbientVector(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &AmbientVector {
    type Output = AmbientVector;
    fn neg(self) -> AmbientVector {
        AmbientVector(std::array::from_fn(|i| -&self.0[i]))
    }
}

/// The invariant form: the standard dot product (roots have squared length 2).
pub fn inner(u: &AmbientVector, v: &AmbientVector) -> Rational {
    u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
}

/// `⟨v, α∨⟩ = 2(v, α)/(α, α)`.
pub fn pair_coroot(v: &AmbientVector, root: &AmbientVector) -> Result<Rational> {
    let len = inner(root, root);
    if len.is_zero() {
        return Err(Error::Domain("pairing with the zero vector".into()));
    }
    Ok(int(2) * inner(v, root) / len)
}

/// Which 7-coordinate basis a tuple is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `[a..g]` means `aζ1 + … + gζ7`.
    Zeta,
    /// `[a..g]` means `aϖ1 + … + fϖ6 + (g/3)ζ`.
    Varpi,
}

/// Highest weight of a K-type in the `{ϖ1..ϖ6, ζ/3}` basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KType(pub [i64; RANK]);

impl KType {
    /// Validates nonnegativity of `a..f` and the K-type integrality condition.
    pub fn new(coords: [i64; RANK]) -> Result<Self> {
        if is_k_type(&coords)? {
            Ok(KType(coords))
        } else {
            Err(Error::Domain(format!("{} fails K-type integrality", KType(coords))))
        }
    }

    pub fn coords(&self) -> &[i64; RANK] {
        &self.0
    }

    /// `[a,b,c,d,e,f,g] ↦ [f,b,e,d,c,a,−g]`.
    pub fn contragredient(&self) -> KType {
        let [a, b, c, d, e, f, g] = self.0;
        KType([f, b, e, d, c, a, -g])
    }

    /// Lowest weight `[−f,−b,−e,−d,−c,−a,g]`, in the same basis.
    pub fn lowest_weight(&self) -> [i64; RANK] {
        let [a, b, c, d, e, f, g] = self.0;
        [-f, -b, -e, -d, -c, -a, g]
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Debug for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, c: &[T]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in c.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

/// The integrality condition on `[a..g]`:
/// `−2a/3 − b − 4c/3 − 2d − 5e/3 − 4f/3 + g/3 ∈ ℤ`.
///
/// Negative `a..f` is a domain error.
pub fn is_k_type(coords: &[i64; RANK]) -> Result<bool> {
    if coords[..COMPACT_RANK].iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!(
            "K-type coordinates a..f must be nonnegative, got {coords:?}"
        )));
    }
    let [a, b, c, d, e, f, g] = *coords;
    let numer = -2 * a - 3 * b - 4 * c - 6 * d - 5 * e - 4 * f + g;
    Ok(numer.rem_euclid(3) == 0)
}

pub fn contragredient(k: &KType) -> KType {
    k.contragredient()
}

pub fn lowest_weight(k: &KType) -> [i64; RANK] {
    k.lowest_weight()
}

/// Infinitesimal character `aζ1 + … + gζ7`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfChar(pub [Rational; RANK]);

impl InfChar {
    pub fn from_ints(c: [i64; RANK]) -> Self {
        InfChar(c.map(int))
    }

    /// Integer coordinates when every entry is integral.
    pub fn as_weight(&self) -> Option<Weight> {
        let mut w = [0; RANK];
        for (o, r) in w.iter_mut().zip(&self.0) {
            *o = to_i64(r)?;
        }
        Some(w)
    }
}

impl fmt::Display for InfChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write_tuple(f, &parts)
    }
}

impl fmt::Debug for InfChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The explicit root datum of E7(-25).
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub simple_roots: [AmbientVector; RANK],
    pub positive_roots: Vec<AmbientVector>,
    /// `ζ1..ζ7`.
    pub fundamental_weights: [AmbientVector; RANK],
    /// `γ1..γ6 = α1..α6`.
    pub compact_simple: [AmbientVector; COMPACT_RANK],
    pub compact_positive: Vec<AmbientVector>,
    pub pplus_roots: Vec<AmbientVector>,
    pub pminus_roots: Vec<AmbientVector>,
    pub rho: AmbientVector,
    pub rho_c: AmbientVector,
    pub rho_n: AmbientVector,
    pub zeta: AmbientVector,
    /// `ϖ1..ϖ6`, fundamental weights of the compact factor.
    pub varpi: [AmbientVector; COMPACT_RANK],
    /// Simple-root coordinates of each positive root, parallel to `positive_roots`.
    pub positive_root_coeffs: Vec<Weight>,
    /// Normal to the 7-dimensional span of the roots.
    pub complement: AmbientVector,
}

fn simple_roots() -> [AmbientVector; RANK] {
    let h = |n: i64| (n, 2);
    let e = |i: usize, j: usize| {
        // e_i - e_j with 1-based coordinate labels
        let mut v = [0i64; AMBIENT_DIM];
        v[i - 1] += 1;
        v[j - 1] -= 1;
        AmbientVector::from_ints(v)
    };
    let mut a2 = [0i64; AMBIENT_DIM];
    a2[0] = 1;
    a2[1] = 1;
    [
        AmbientVector::from_fracs([h(1), h(-1), h(-1), h(-1), h(-1), h(-1), h(-1), h(1)]),
        AmbientVector::from_ints(a2),
        e(2, 1),
        e(3, 2),
        e(4, 3),
        e(5, 4),
        e(6, 5),
    ]
}

fn reflect_ambient(v: &AmbientVector, root: &AmbientVector) -> AmbientVector {
    let c = pair_coroot(v, root).expect("roots are nonzero");
    v - &root.scale(&c)
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

/// Builds the root datum and checks every structural invariant.
pub fn build_root_datum() -> Result<RootDatum> {
    let simple = simple_roots();

    // Root closure under the simple reflections.
    let mut roots: Vec<AmbientVector> = simple.to_vec();
    let mut seen: std::collections::HashSet<AmbientVector> = roots.iter().cloned().collect();
    let mut frontier = roots.clone();
    while let Some(r) = frontier.pop() {
        for a in &simple {
            let s = reflect_ambient(&r, a);
            if seen.insert(s.clone()) {
                roots.push(s.clone());
                frontier.push(s);
            }
        }
    }
    if roots.len() != 126 {
        return Err(internal(format!("root closure produced {} roots", roots.len())));
    }

    let gram: Vec<Vec<Rational>> = (0..RANK)
        .map(|i| (0..RANK).map(|j| inner(&simple[i], &simple[j])).collect())
        .collect();
    let coeffs_of = |v: &AmbientVector| -> Result<Vec<Rational>> {
        let rhs = simple.iter().map(|a| inner(v, a)).collect();
        solve(gram.clone(), rhs).ok_or_else(|| internal("simple roots are dependent"))
    };

    let mut positive = Vec::new();
    let mut positive_coeffs = Vec::new();
    for r in &roots {
        let c = coeffs_of(r)?;
        let ints: Option<Vec<i64>> = c.iter().map(to_i64).collect();
        let ints = ints.ok_or_else(|| internal(format!("root {r} is not integral")))?;
        if ints.iter().all(|&x| x >= 0) {
            positive.push(r.clone());
            positive_coeffs.push(<Weight>::try_from(ints).unwrap());
        } else if !ints.iter().all(|&x| x <= 0) {
            return Err(internal(format!("root {r} has mixed signs")));
        }
    }
    // Order by height, then lexicographically, so that output is canonical.
    let mut order: Vec<usize> = (0..positive.len()).collect();
    order.sort_by_key(|&i| (positive_coeffs[i].iter().sum::<i64>(), positive_coeffs[i]));
    let positive: Vec<AmbientVector> = order.iter().map(|&i| positive[i].clone()).collect();
    let positive_coeffs: Vec<Weight> = order.iter().map(|&i| positive_coeffs[i]).collect();

    // Fundamental weights within the span: ζ_i = Σ_k M_ik α_k with ⟨ζ_i, α_j∨⟩ = δ_ij.
    let gram_inv = invert(&gram).ok_or_else(|| internal("singular Gram matrix"))?;
    let fundamental: [AmbientVector; RANK] = std::array::from_fn(|i| {
        // α_j∨ = α_j since every root has squared length 2; checked below.
        let mut v = AmbientVector::zero();
        for k in 0..RANK {
            v = &v + &simple[k].scale(&gram_inv[i][k]);
        }
        v
    });
    for r in &roots {
        if inner(r, r) != int(2) {
            return Err(internal(format!("root {r} does not have squared length 2")));
        }
    }

    let compact_simple: [AmbientVector; COMPACT_RANK] = std::array::from_fn(|i| simple[i].clone());
    let zeta = fundamental[RANK - 1].clone();
    let mut compact_positive = Vec::new();
    let mut pplus = Vec::new();
    let mut pminus = Vec::new();
    for r in &positive {
        let s = inner(r, &zeta);
        if s.is_zero() {
            compact_positive.push(r.clone());
        } else if s.is_positive() {
            pplus.push(r.clone());
            pminus.push(-r);
        } else {
            return Err(internal(format!("positive root {r} pairs negatively with ζ")));
        }
    }

    let half = rat(1, 2);
    let sum = |vs: &[AmbientVector]| vs.iter().fold(AmbientVector::zero(), |acc, v| &acc + v);
    let rho = sum(&positive).scale(&half);
    let rho_c = sum(&compact_positive).scale(&half);
    let rho_n = &rho - &rho_c;

    // ϖ_i ∈ span(γ1..γ6) with ⟨ϖ_i, γ_j∨⟩ = δ_ij.
    let cgram: Vec<Vec<Rational>> = (0..COMPACT_RANK)
        .map(|i| (0..COMPACT_RANK).map(|j| gram[i][j].clone()).collect())
        .collect();
    let cgram_inv = invert(&cgram).ok_or_else(|| internal("singular E6 Gram matrix"))?;
    let varpi: [AmbientVector; COMPACT_RANK] = std::array::from_fn(|i| {
        let mut v = AmbientVector::zero();
        for k in 0..COMPACT_RANK {
            v = &v + &simple[k].scale(&cgram_inv[i][k]);
        }
        v
    });

    let rows: Vec<Vec<Rational>> = simple.iter().map(|a| a.0.to_vec()).collect();
    let ns = null_space(&rows, AMBIENT_DIM);
    if ns.len() != 1 {
        return Err(internal("roots do not span a hyperplane"));
    }
    let complement = AmbientVector(<[Rational; AMBIENT_DIM]>::try_from(ns[0].clone()).unwrap());

    let datum = RootDatum {
        simple_roots: simple,
        positive_roots: positive,
        fundamental_weights: fundamental,
        compact_simple,
        compact_positive,
        pplus_roots: pplus,
        pminus_roots: pminus,
        rho,
        rho_c,
        rho_n,
        zeta,
        varpi,
        positive_root_coeffs: positive_coeffs,
        complement,
    };
    datum.check_invariants()?;
    Ok(datum)
}

impl RootDatum {
    fn check_invariants(&self) -> Result<()> {
        let expect = |ok: bool, what: &str| if ok { Ok(()) } else { Err(internal(what.to_string())) };
        expect(self.positive_roots.len() == 63, "63 positive roots")?;
        expect(self.compact_positive.len() == 36, "36 compact positive roots")?;
        expect(self.pplus_roots.len() == 27 && self.pminus_roots.len() == 27, "dim p± = 27")?;
        for i in 0..RANK {
            for j in 0..RANK {
                let p = pair_coroot(&self.fundamental_weights[i], &self.simple_roots[j])?;
                expect(p == int((i == j) as i64), "⟨ζ_i, α_j∨⟩ = δ_ij")?;
            }
        }
        for i in 0..COMPACT_RANK {
            expect(inner(&self.varpi[i], &self.zeta).is_zero(), "ϖ_i ⊥ ζ")?;
            for j in 0..COMPACT_RANK {
                let p = pair_coroot(&self.varpi[i], &self.compact_simple[j])?;
                expect(p == int((i == j) as i64), "⟨ϖ_i, γ_j∨⟩ = δ_ij")?;
            }
        }
        for r in &self.compact_positive {
            expect(inner(r, &self.zeta).is_zero(), "compact roots pair to 0 with ζ")?;
        }
        for r in &self.pplus_roots {
            expect(inner(r, &self.zeta).is_positive(), "p⁺ roots pair positively with ζ")?;
        }
        for v in [&self.rho, &self.rho_c, &self.zeta] {
            expect(self.in_span(v), "ρ, ρ_c, ζ lie in the span")?;
        }
        Ok(())
    }

    /// Membership in the 7-dimensional span of the roots.
    pub fn in_span(&self, v: &AmbientVector) -> bool {
        inner(v, &self.complement).is_zero()
    }

    /// `β`, the highest root, which is the highest weight of p⁺.
    pub fn beta(&self) -> &AmbientVector {
        self.positive_roots.last().expect("nonempty")
    }

    pub fn to_ambient(&self, basis: Basis, coords: &[Rational; RANK]) -> AmbientVector {
        let mut v = AmbientVector::zero();
        match basis {
            Basis::Zeta => {
                for (c, z) in coords.iter().zip(&self.fundamental_weights) {
                    v = &v + &z.scale(c);
                }
            }
            Basis::Varpi => {
                for (c, w) in coords[..COMPACT_RANK].iter().zip(&self.varpi) {
                    v = &v + &w.scale(c);
                }
                v = &v + &self.zeta.scale(&(&coords[RANK - 1] * rat(1, 3)));
            }
        }
        v
    }

    pub fn to_ambient_ints(&self, basis: Basis, coords: &[i64; RANK]) -> AmbientVector {
        self.to_ambient(basis, &coords.map(int))
    }

    /// Coordinates of `v` in the given basis; errors if `v` is outside the span.
    pub fn from_ambient(&self, basis: Basis, v: &AmbientVector) -> Result<[Rational; RANK]> {
        if !self.in_span(v) {
            return Err(Error::Domain(format!("{v} is not in the span of the roots")));
        }
        let mut out: [Rational; RANK] = std::array::from_fn(|_| int(0));
        match basis {
            Basis::Zeta => {
                for (o, a) in out.iter_mut().zip(&self.simple_roots) {
                    *o = pair_coroot(v, a)?;
                }
            }
            Basis::Varpi => {
                for (o, a) in out.iter_mut().zip(&self.compact_simple) {
                    *o = pair_coroot(v, a)?;
                }
                out[RANK - 1] = int(3) * inner(v, &self.zeta) / inner(&self.zeta, &self.zeta);
            }
        }
        Ok(out)
    }
}

/// Integer data for computing with lattice weights in ζ-basis coordinates.
///
/// In these coordinates `v_i = ⟨v, α_i∨⟩`, so `s_i v = v − v_i·α_i` with `α_i`
/// the `i`-th row of the Cartan matrix, and the first six coordinates of a
/// weight coincide with its ϖ-coordinates.
#[derive(Clone, Debug)]
pub struct WeightLattice {
    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`.
    pub cartan: [[i64; RANK]; RANK],
    /// `2·(ζ_i, ζ_j)`; integral for E7.
    pub gram2: [[i64; RANK]; RANK],
    /// `g(v) = Σ gvec_k v_k` is the `ζ/3`-coordinate of `v` in the ϖ-basis.
    pub gvec: [i64; RANK],
    pub positive_root_coeffs: Vec<Weight>,
    /// ζ-basis coordinates of each positive root.
    pub positive_roots: Vec<Weight>,
    /// Root coordinates of `2ρ` (sum of positive roots).
    pub two_rho_coeffs: Weight,
    pub rho: Weight,
    pub rho_c: Weight,
    pub zeta: Weight,
}

impl WeightLattice {
    pub fn new(d: &RootDatum) -> Result<Self> {
        let cartan: [[i64; RANK]; RANK] = std::array::from_fn(|i| {
            std::array::from_fn(|j| to_i64(&pair_coroot(&d.simple_roots[i], &d.simple_roots[j]).unwrap()).unwrap())
        });
        let mut gram2 = [[0i64; RANK]; RANK];
        for i in 0..RANK {
            for j in 0..RANK {
                let g = int(2) * inner(&d.fundamental_weights[i], &d.fundamental_weights[j]);
                gram2[i][j] = to_i64(&g).ok_or_else(|| internal("2·Gram of ζ-basis is not integral"))?;
            }
        }
        let mut gvec = [0i64; RANK];
        for (k, o) in gvec.iter_mut().enumerate() {
            let g = int(2) * inner(&d.fundamental_weights[k], &d.zeta);
            *o = to_i64(&g).ok_or_else(|| internal("g-coordinate map is not integral"))?;
        }
        let to_w = |v: &AmbientVector| -> Result<Weight> {
            let c = d.from_ambient(Basis::Zeta, v)?;
            let mut w = [0; RANK];
            for (o, r) in w.iter_mut().zip(&c) {
                *o = to_i64(r).ok_or_else(|| internal(format!("{v} is not a lattice weight")))?;
            }
            Ok(w)
        };
        let positive_roots = d.positive_roots.iter().map(to_w).collect::<Result<Vec<_>>>()?;
        let mut two_rho_coeffs = [0; RANK];
        for c in &d.positive_root_coeffs {
            for k in 0..RANK {
                two_rho_coeffs[k] += c[k];
            }
        }
        Ok(WeightLattice {
            cartan,
            gram2,
            gvec,
            positive_root_coeffs: d.positive_root_coeffs.clone(),
            positive_roots,
            two_rho_coeffs,
            rho: to_w(&d.rho)?,
            rho_c: to_w(&d.rho_c)?,
            zeta: to_w(&d.zeta)?,
        })
    }

    /// `2‖v‖²`, an integer for lattice weights.
    pub fn norm2_doubled(&self, v: &Weight) -> i128 {
        let mut s = 0i128;
        for i in 0..RANK {
            if v[i] == 0 {
                continue;
            }
            let mut row = 0i128;
            for j in 0..RANK {
                row += self.gram2[i][j] as i128 * v[j] as i128;
            }
            s += v[i] as i128 * row;
        }
        s
    }

    pub fn norm2(&self, v: &Weight) -> Rational {
        Rational::new(self.norm2_doubled(v).into(), 2.into())
    }

    /// Exact squared norm of a rational ζ-basis vector.
    pub fn norm2_rational(&self, v: &[Rational; RANK]) -> Rational {
        let mut s = int(0);
        for i in 0..RANK {
            for j in 0..RANK {
                s += &v[i] * &v[j] * int(self.gram2[i][j]);
            }
        }
        s * rat(1, 2)
    }

    /// ϖ-basis coordinates of a lattice weight.
    pub fn to_varpi(&self, v: &Weight) -> [i64; RANK] {
        let mut out = *v;
        out[RANK - 1] = (0..RANK).map(|k| self.gvec[k] * v[k]).sum();
        out
    }

    /// ζ-basis coordinates of `[a..g]` in the ϖ-basis; `None` if not a lattice weight.
    pub fn from_varpi(&self, k: &[i64; RANK]) -> Option<Weight> {
        let last = self.gvec[RANK - 1];
        let partial: i64 = (0..RANK - 1).map(|i| self.gvec[i] * k[i]).sum();
        let num = k[RANK - 1] - partial;
        if num % last != 0 {
            return None;
        }
        let mut out = *k;
        out[RANK - 1] = num / last;
        Some(out)
    }

    /// ζ-basis coordinates of a K-type's highest weight.
    pub fn ktype_weight(&self, k: &KType) -> Weight {
        self.from_varpi(&k.0).expect("KType invariant guarantees integrality")
    }

    pub fn varpi_to_ktype(&self, v: &Weight) -> Result<KType> {
        KType::new(self.to_varpi(v))
    }

    /// ϖ-basis coordinates of a rational ζ-basis vector.
    pub fn to_varpi_rational(&self, v: &[Rational; RANK]) -> [Rational; RANK] {
        let mut out = v.clone();
        out[RANK - 1] = (0..RANK).map(|k| &v[k] * int(self.gvec[k])).sum();
        out
    }

    /// `(u, v)` for lattice weights, doubled so it is an integer.
    pub fn inner_doubled(&self, u: &Weight, v: &Weight) -> i128 {
        let mut s = 0i128;
        for i in 0..RANK {
            for j in 0..RANK {
                s += u[i] as i128 * self.gram2[i][j] as i128 * v[j] as i128;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum() -> RootDatum {
        build_root_datum().unwrap()
    }

    fn amb(c: [(i64, i64); 8]) -> AmbientVector {
        AmbientVector::from_fracs(c)
    }

    #[test]
    fn rho_and_friends_match_explicit_coordinates() {
        let d = datum();
        assert_eq!(d.rho, amb([(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (-17, 2), (17, 2)]));
        assert_eq!(d.rho_c, AmbientVector::from_ints([0, 1, 2, 3, 4, -4, -4, 4]));
        assert_eq!(d.zeta, amb([(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (-1, 2), (1, 2)]));
        assert_eq!(d.rho_n, amb([(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (9, 1), (-9, 2), (9, 2)]));
        assert_eq!(*d.beta(), AmbientVector::from_ints([0, 0, 0, 0, 0, 0, -1, 1]));
        assert_eq!(d.positive_root_coeffs.last().unwrap(), &[2, 2, 3, 4, 3, 2, 1]);
    }

    #[test]
    fn inner_and_coroot_pairings() {
        let d = datum();
        assert_eq!(inner(&d.rho, &d.rho), rat(399, 2));
        assert_eq!(pair_coroot(&d.rho, d.beta()).unwrap(), int(17));
        assert!(pair_coroot(&d.rho, &AmbientVector::zero()).is_err());
    }

    #[test]
    fn basis_conversions() {
        let d = datum();
        let ones = [1i64; 7];
        assert_eq!(d.to_ambient_ints(Basis::Zeta, &ones), d.rho);
        assert_eq!(d.to_ambient_ints(Basis::Varpi, &[1, 1, 1, 1, 1, 1, 0]), d.rho_c);
        let beta = d.from_ambient(Basis::Varpi, d.beta()).unwrap();
        assert_eq!(beta, [1, 0, 0, 0, 0, 0, 2].map(int));
        let minus_a7 = d.from_ambient(Basis::Varpi, &-&d.simple_roots[6]).unwrap();
        assert_eq!(minus_a7, [0, 0, 0, 0, 0, 1, -2].map(int));
        let outside = AmbientVector::from_ints([0, 0, 0, 0, 0, 0, 1, 1]);
        assert!(d.from_ambient(Basis::Zeta, &outside).is_err());
    }

    #[test]
    fn dimension_bookkeeping() {
        let d = datum();
        let dim_k = 2 * d.compact_positive.len() + RANK;
        let dim_p = d.pplus_roots.len() + d.pminus_roots.len();
        assert_eq!((dim_k, dim_p), (79, 54));
        assert_eq!(dim_p as i64 - dim_k as i64, -25);
    }

    #[test]
    fn k_type_predicate() {
        assert!(is_k_type(&[0; 7]).unwrap());
        assert!(is_k_type(&[1, 0, 0, 0, 0, 0, 2]).unwrap());
        assert!(!is_k_type(&[0, 0, 0, 0, 0, 0, 1]).unwrap());
        assert!(is_k_type(&[0, 0, -1, 0, 0, 0, 0]).is_err());
        assert!(KType::new([0, 0, 0, 0, 0, 0, 1]).is_err());
    }

    #[test]
    fn contragredient_examples() {
        let beta = KType([1, 0, 0, 0, 0, 0, 2]);
        assert_eq!(beta.contragredient(), KType([0, 0, 0, 0, 0, 1, -2]));
        assert_eq!(KType([0; 7]).contragredient(), KType([0; 7]));
        assert_eq!(KType([1, 1, 1, 1, 1, 1, 0]).contragredient(), KType([1, 1, 1, 1, 1, 1, 0]));
        assert_eq!(beta.lowest_weight(), [0, 0, 0, 0, 0, -1, 2]);
    }

    #[test]
    fn lowest_weight_is_w0_of_highest_weight() {
        // The contragredient formula must agree with the E6 longest element,
        // which pins down the ϖ labelling.
        let d = datum();
        let lat = WeightLattice::new(&d).unwrap();
        for k in [[1, 0, 0, 0, 0, 0, 2], [0, 2, 1, 0, 3, 1, 5], [2, 1, 0, 4, 0, 1, -4]] {
            let kt = KType(k);
            let mut v = lat.ktype_weight(&kt).map(|x| -x);
            // dominant representative of −μ for W(E6) is −w0μ
            crate::weyl::dominant_in_place(&lat, &mut v, COMPACT_RANK);
            let dual = lat.to_varpi(&v);
            assert_eq!(dual, kt.contragredient().0, "{kt}");
        }
    }

    #[test]
    fn lattice_matches_ambient() {
        let d = datum();
        let lat = WeightLattice::new(&d).unwrap();
        assert_eq!(lat.rho, [1; 7]);
        assert_eq!(lat.gvec, [2, 3, 4, 6, 5, 4, 3]);
        assert_eq!(lat.to_varpi(&lat.rho_c), [1, 1, 1, 1, 1, 1, 0]);
        assert_eq!(lat.norm2(&lat.rho), rat(399, 2));
        assert_eq!(lat.norm2(&[1, 0, 1, 1, 0, 1, 0]), int(78));
        for v in [[1, -2, 0, 3, 0, 1, 5], [0, 0, 0, 0, 0, 0, 1]] {
            let a = d.to_ambient_ints(Basis::Zeta, &v);
            assert_eq!(inner(&a, &a), lat.norm2(&v));
        }
    }
}
