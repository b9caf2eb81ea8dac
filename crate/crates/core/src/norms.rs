//! Lambda norm, spin norm, u-small hull membership, the Dirac inequality and
//! atlas height.

use crate::cone::{self, Projection};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::lp::{Feasibility, Problem};
use crate::rational::{to_i64, Rational};
use crate::structure::{AmbientVector, Basis, InfChar, KType, Weight, COMPACT_RANK, RANK};
use crate::weyl::{make_dominant, Chamber, NUM_CHAMBERS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaDatum {
    pub lambda_a: AmbientVector,
    pub lambda_norm_sq: Rational,
    pub witness_chamber: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinDatum {
    pub spin_norm_sq: Rational,
    pub achieving_chambers: Vec<usize>,
    /// `{μ − ρ_n^(j)}` for each achieving `j`, in ϖ-basis coordinates.
    pub prv_weights: Vec<[i64; RANK]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiracInequality {
    Strict,
    Equality,
    Violated,
}

/// Nearest point of the cone `C^(j)` spanned by `w^(j)ζ_1..w^(j)ζ_7`.
pub fn cone_project(e: &Engine, eta: &AmbientVector, chamber: &Chamber) -> Result<AmbientVector> {
    let mut v = e.datum.from_ambient(Basis::Zeta, eta)?;
    chamber.word.inverse().apply(&e.lat, &mut v);
    let mut x = e.cone.project_rational(&v)?;
    chamber.word.apply(&e.lat, &mut x);
    Ok(e.datum.to_ambient(Basis::Zeta, &x))
}

/// `x = P(u − ρ)` where `u` is the dominant representative of `μ + 2ρ_c`.
/// Then `λ_a(μ) = w^(j)x` for any allowable `j`, so norms and heights can
/// be read off `x` directly.
pub fn lambda_projection(e: &Engine, mu: &Weight) -> Result<Projection> {
    let rc = e.rho_c();
    let mut u: Weight = std::array::from_fn(|k| mu[k] + 2 * rc[k]);
    make_dominant(&e.lat, &mut u, RANK);
    let eta: Weight = std::array::from_fn(|k| u[k] - e.lat.rho[k]);
    e.cone.project(&eta)
}

pub fn lambda_norm_sq(e: &Engine, mu: &KType) -> Result<Rational> {
    let p = lambda_projection(e, &e.lat.ktype_weight(mu))?;
    Ok(cone::norm2(&e.lat, &p))
}

/// Scans the chambers in order, takes the first allowable one and projects.
/// Every other allowable chamber must give the same point.
pub fn lambda_datum(e: &Engine, mu: &KType) -> Result<LambdaDatum> {
    let w = e.lat.ktype_weight(mu);
    let rc = e.rho_c();
    let v: Weight = std::array::from_fn(|k| w[k] + 2 * rc[k]);
    let eta_amb = e.datum.to_ambient_ints(Basis::Zeta, &v);
    let mut found: Option<(usize, AmbientVector)> = None;
    for c in &e.chambers {
        if !c.is_dominant(&v) {
            continue;
        }
        let eta = &eta_amb - &c.rho_j;
        let p = cone_project(e, &eta, c)?;
        match &found {
            None => found = Some((c.index, p)),
            Some((j, q)) => {
                if *q != p {
                    return Err(Error::Internal(format!(
                        "λ_a({mu}) differs between allowable chambers {j} and {}",
                        c.index
                    )));
                }
            }
        }
    }
    let (j, lambda_a) = found.ok_or_else(|| Error::Internal(format!("no allowable chamber for {mu}")))?;
    let lambda_norm_sq = crate::structure::inner(&lambda_a, &lambda_a);
    Ok(LambdaDatum { lambda_a, lambda_norm_sq, witness_chamber: j })
}

/// `Σ_{α ∈ (Δ⁺)^(j)} ⟨λ_a(μ), α∨⟩ = ⟨x, 2ρ⟩`.
pub fn atlas_height(e: &Engine, mu: &KType) -> Result<i64> {
    let p = lambda_projection(e, &e.lat.ktype_weight(mu))?;
    height_from_projection(e, &p).ok_or_else(|| Error::Internal(format!("non-integral height for {mu}")))
}

/// Height from a projection already computed; `None` if not integral.
pub fn height_from_projection(e: &Engine, p: &Projection) -> Option<i64> {
    to_i64(&cone::two_rho_pairing(&e.lat, p))
}

/// `2‖{μ − ρ_n^(j)} + ρ_c‖²` for one chamber, with the K-dominant
/// representative written into `out`.
#[inline]
fn spin_candidate(e: &Engine, mu: &Weight, c: &Chamber, out: &mut Weight) -> i128 {
    for k in 0..RANK {
        out[k] = mu[k] - c.rho_n_w[k];
    }
    make_dominant(&e.lat, out, COMPACT_RANK);
    let rc = e.rho_c();
    let shifted: Weight = std::array::from_fn(|k| out[k] + rc[k]);
    e.lat.norm2_doubled(&shifted)
}

/// `2‖μ‖²_spin`.
pub fn spin_norm2_doubled(e: &Engine, mu: &Weight) -> i128 {
    let mut best = i128::MAX;
    let mut scratch = [0; RANK];
    for c in &e.chambers {
        best = best.min(spin_candidate(e, mu, c, &mut scratch));
    }
    best
}

pub fn spin_datum(e: &Engine, mu: &KType) -> SpinDatum {
    let w = e.lat.ktype_weight(mu);
    let mut scores = Vec::with_capacity(NUM_CHAMBERS);
    for c in &e.chambers {
        let mut out = [0; RANK];
        let s = spin_candidate(e, &w, c, &mut out);
        scores.push((s, out));
    }
    let best = scores.iter().map(|s| s.0).min().expect("56 chambers");
    let mut achieving = Vec::new();
    let mut prv = Vec::new();
    for (j, (s, out)) in scores.iter().enumerate() {
        if *s == best {
            achieving.push(j);
            prv.push(e.lat.to_varpi(out));
        }
    }
    SpinDatum {
        spin_norm_sq: Rational::new(best.into(), 2.into()),
        achieving_chambers: achieving,
        prv_weights: prv,
    }
}

pub fn spin_norm_sq(e: &Engine, mu: &KType) -> Rational {
    Rational::new(spin_norm2_doubled(e, &e.lat.ktype_weight(mu)).into(), 2.into())
}

/// The hull-membership linear program for `μ` (ϖ-basis coordinates).
///
/// The u-small hull is the convex hull of the `W(k)`-orbits of the points
/// `2ρ_n^(j)`. A K-dominant point lies in it iff it is dominated by a convex
/// combination of those 56 points, so the columns are `t_0..t_55` then
/// `s_1..s_6` and the rows are `Σ t_j = 1` followed by
/// `Σ t_j 2ρ_n^(j) − Σ s_i γ_i = μ`, coordinatewise.
pub fn usmall_problem(e: &Engine, mu_varpi: &[i64; RANK]) -> Problem {
    let nt = e.hull_vertices.len();
    let ncols = nt + COMPACT_RANK;
    let mut a = vec![vec![0i64; ncols]; RANK + 1];
    for j in 0..nt {
        a[0][j] = 1;
        for k in 0..RANK {
            a[k + 1][j] = e.hull_vertices[j][k];
        }
    }
    for i in 0..COMPACT_RANK {
        for k in 0..RANK {
            a[k + 1][nt + i] = -e.gamma_varpi[i][k];
        }
    }
    let mut b = vec![1];
    b.extend_from_slice(mu_varpi);
    Problem::new(a, b)
}

/// Feasibility together with its certificate.
pub fn usmall_certificate(e: &Engine, mu: &KType) -> Feasibility {
    usmall_problem(e, &mu.0).feasibility()
}

pub fn is_usmall(e: &Engine, mu: &KType) -> bool {
    usmall_certificate(e, mu).is_feasible()
}

pub fn infchar_norm_sq(e: &Engine, lambda: &InfChar) -> Rational {
    e.lat.norm2_rational(&lambda.0)
}

pub fn dirac_inequality_holds(e: &Engine, lambda: &InfChar, mu: &KType) -> DiracInequality {
    compare_with_spin(&infchar_norm_sq(e, lambda), &spin_norm_sq(e, mu))
}

pub fn compare_with_spin(lambda_sq: &Rational, spin_sq: &Rational) -> DiracInequality {
    match lambda_sq.cmp(spin_sq) {
        std::cmp::Ordering::Less => DiracInequality::Strict,
        std::cmp::Ordering::Equal => DiracInequality::Equality,
        std::cmp::Ordering::Greater => DiracInequality::Violated,
    }
}

/// `spin² − lambda²` for a K-type.
pub fn gap(e: &Engine, mu: &KType) -> Result<Rational> {
    Ok(spin_norm_sq(e, mu) - lambda_norm_sq(e, mu)?)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn e() -> &'static Engine {
        Engine::shared()
    }

    #[test]
    fn spin_norm_examples() {
        let e = e();
        assert_eq!(spin_norm_sq(e, &KType([0, 0, 0, 0, 0, 0, -12])), rat(231, 2));
        assert_eq!(spin_norm_sq(e, &KType([0, 0, 0, 0, 0, 0, -24])), rat(159, 2));
        assert_eq!(spin_norm_sq(e, &KType([0; 7])), rat(399, 2));
        let sd = spin_datum(e, &KType([0; 7]));
        assert_eq!(sd.spin_norm_sq, rat(399, 2));
        assert!(!sd.achieving_chambers.is_empty());
    }

    #[test]
    fn lambda_of_trivial_is_chamber_independent() {
        let e = e();
        let l = lambda_datum(e, &KType([0; 7])).unwrap();
        assert_eq!(l.lambda_norm_sq, lambda_norm_sq(e, &KType([0; 7])).unwrap());
        let beta = KType([1, 0, 0, 0, 0, 0, 2]);
        let lb = lambda_datum(e, &beta).unwrap();
        assert_eq!(lb.lambda_norm_sq, lambda_norm_sq(e, &beta).unwrap());
    }

    #[test]
    fn usmall_examples() {
        let e = e();
        assert!(is_usmall(e, &KType([0; 7])));
        assert!(is_usmall(e, &KType([0, 2, 0, 0, 0, 0, 0])));
        let two_rho_n = e.lat.to_varpi(&e.chambers[0].rho_n_w).map(|x| 2 * x);
        assert!(is_usmall(e, &KType::new(two_rho_n).unwrap()));
        let three_rho_n = e.lat.to_varpi(&e.chambers[0].rho_n_w).map(|x| 3 * x);
        let k = KType::new(three_rho_n).unwrap();
        let cert = usmall_certificate(e, &k);
        assert!(!cert.is_feasible());
        assert!(usmall_problem(e, &k.0).check(&cert));
    }

    #[test]
    fn dirac_inequality_examples() {
        let e = e();
        let l = InfChar::from_ints([1, 1, 1, 0, 1, 1, 1]);
        assert_eq!(dirac_inequality_holds(e, &l, &KType([0, 0, 0, 0, 0, 0, -12])), DiracInequality::Equality);
        let rho = InfChar::from_ints([1; 7]);
        assert_eq!(dirac_inequality_holds(e, &rho, &KType([0; 7])), DiracInequality::Equality);
        let l78 = InfChar::from_ints([1, 0, 1, 1, 0, 1, 0]);
        assert_eq!(infchar_norm_sq(e, &l78), int(78));
        assert_eq!(compare_with_spin(&int(78), &rat(159, 2)), DiracInequality::Strict);
    }
}
