//! The screening pipeline: admissibility of infinitesimal characters, the
//! u-small census and its Certs subset, the set Ω, Dirac-cohomology
//! candidates, spin lowest K-types, the Dirac-index parity test, and a
//! bounded check of the u-large gap.

use std::collections::{BTreeSet, HashSet};

use num_traits::Signed;
use rayon::prelude::*;

use crate::cone;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::lp::{ceil_i64, floor_i64, Optimum, Problem};
use crate::norms::{self, is_usmall, lambda_projection, spin_norm2_doubled};
use crate::rational::{int, rat, to_i64, Rational};
use crate::structure::{inner, is_k_type, InfChar, KType, Weight, COMPACT_RANK, RANK};
use crate::weyl::{dominant_in_place_generic, make_dominant};

/// Index sets (0-based into `[a..g]`) of the sixteen sums that must be
/// positive for an admissible infinitesimal character.
pub const ADMISSIBLE_SUMS: [&[usize]; 16] = [
    &[0, 2],
    &[1, 3],
    &[2, 3],
    &[3, 4],
    &[4, 5],
    &[5, 6],
    &[0, 1, 4],
    &[0, 1, 5],
    &[0, 1, 6],
    &[0, 3, 5],
    &[0, 3, 6],
    &[0, 4, 6],
    &[1, 2, 4],
    &[1, 2, 5],
    &[1, 2, 6],
    &[2, 4, 6],
];

/// Lower bound on the gap for the Certs subset.
pub const CERTS_GAP: i64 = 94;
/// Upper bound claimed for the gap on u-large K-types.
pub const ULARGE_GAP: i64 = 79;

pub fn hp_admissible(lambda: &InfChar) -> bool {
    let Some(w) = lambda.as_weight() else {
        return false;
    };
    hp_admissible_weight(&w)
}

pub fn hp_admissible_weight(w: &Weight) -> bool {
    w.iter().all(|&x| x >= 0) && ADMISSIBLE_SUMS.iter().all(|s| s.iter().map(|&i| w[i]).sum::<i64>() > 0)
}

/// For `Λ` vanishing on the coordinates of sum number `selector`, checks that
/// `wΛ` has a zero among its first six ϖ-coordinates for every `w ∈ W¹`, so
/// that no `{μ − ρ_n^(j)} + ρ_c` can equal `wΛ`.
pub fn vanishing_sum_witness(e: &Engine, lambda: &InfChar, selector: usize) -> Result<bool> {
    let sum = ADMISSIBLE_SUMS
        .get(selector)
        .ok_or_else(|| Error::Domain(format!("selector {selector} out of range 0..16")))?;
    let w = lambda
        .as_weight()
        .filter(|w| w.iter().all(|&x| x >= 0))
        .ok_or_else(|| Error::Domain(format!("{lambda} is not a nonnegative integral character")))?;
    if sum.iter().any(|&i| w[i] != 0) {
        return Err(Error::Domain(format!("{lambda} does not vanish on {sum:?}")));
    }
    Ok(e.chambers.iter().all(|c| {
        let v = c.word.apply_weight(&e.lat, &w);
        v[..COMPACT_RANK].iter().any(|&x| x == 0)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CertsEntry {
    pub ktype: KType,
    pub gap: Rational,
    pub lambda_norm_sq: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracCandidateSet {
    pub inf_char: InfChar,
    /// `(γ in ϖ-coordinates, index j of the witnessing w^(j))`, sorted.
    pub gammas: Vec<([Rational; RANK], usize)>,
}

impl DiracCandidateSet {
    pub fn contains(&self, varpi: &[i64; RANK]) -> bool {
        self.gammas.iter().any(|(g, _)| *g == varpi.map(int))
    }
}

/// Exact range of coordinate `k` over the hull, given that coordinates
/// `< k` are fixed to `prefix` and the remaining `a..f` are nonnegative.
fn coordinate_range(e: &Engine, prefix: &[i64], k: usize) -> Option<(i64, i64)> {
    let base = norms::usmall_problem(e, &[0; RANK]);
    let mut a = base.a;
    let mut b = base.b;
    // one column per free coordinate; g gets a ± pair
    let mut target = Vec::new();
    for c in prefix.len()..RANK {
        let r = c + 1;
        if c < COMPACT_RANK {
            for (i, line) in a.iter_mut().enumerate() {
                line.push(if i == r { -1 } else { 0 });
            }
            if c == k {
                target.push((a[0].len() - 1, 1));
            }
        } else {
            for (i, line) in a.iter_mut().enumerate() {
                line.push(if i == r { -1 } else { 0 });
                line.push(if i == r { 1 } else { 0 });
            }
            if c == k {
                target.push((a[0].len() - 2, 1));
                target.push((a[0].len() - 1, -1));
            }
        }
    }
    for (i, &v) in prefix.iter().enumerate() {
        b[i + 1] = v;
    }
    let mut cost = vec![0i64; a[0].len()];
    for (col, s) in target {
        cost[col] = s;
    }
    let p = Problem::new(a, b);
    let hi = match p.maximize(&cost) {
        Optimum::Optimal { value, .. } => floor_i64(&value),
        Optimum::Infeasible(_) => return None,
        Optimum::Unbounded => unreachable!("the hull is bounded"),
    };
    let lo = match p.minimize(&cost) {
        Optimum::Optimal { value, .. } => ceil_i64(&value),
        _ => unreachable!("feasibility established above"),
    };
    (lo <= hi).then_some((lo, hi))
}

/// Largest value of each coordinate `a..f` and of `|g|` over the hull: the
/// support function in the coordinate directions.
pub fn usmall_caps(e: &Engine) -> [i64; RANK] {
    let mut caps = [0; RANK];
    for k in 0..RANK {
        let (lo, hi) = coordinate_range(e, &[], k).expect("the hull contains 0");
        caps[k] = if k < COMPACT_RANK { hi } else { hi.max(-lo) };
    }
    caps
}

fn usmall_subtree(e: &Engine, prefix: &mut Vec<i64>, out: &mut Vec<KType>) {
    let k = prefix.len();
    let Some((lo, hi)) = coordinate_range(e, prefix, k) else {
        return;
    };
    for v in lo..=hi {
        prefix.push(v);
        if k + 1 == RANK {
            let coords: [i64; RANK] = prefix.as_slice().try_into().unwrap();
            if is_k_type(&coords).unwrap_or(false) {
                let kt = KType(coords);
                if is_usmall(e, &kt) {
                    out.push(kt);
                }
            }
        } else {
            usmall_subtree(e, prefix, out);
        }
        prefix.pop();
    }
}

/// Every u-small K-type, sorted.
///
/// Coordinates are fixed one at a time; the admissible range of the next
/// coordinate is read off two exact LPs over the hull, which makes the
/// search complete without a guessed box. Leaves are confirmed by
/// [`is_usmall`].
pub fn enumerate_usmall_ktypes(e: &Engine) -> Vec<KType> {
    let (lo, hi) = coordinate_range(e, &[], 0).expect("the hull contains 0");
    let mut all: Vec<KType> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            usmall_subtree(e, &mut vec![a], &mut out);
            out
        })
        .collect();
    all.sort();
    all
}

pub fn certs_entry(e: &Engine, k: &KType) -> Result<CertsEntry> {
    let lambda = norms::lambda_norm_sq(e, k)?;
    let spin = norms::spin_norm_sq(e, k);
    Ok(CertsEntry { ktype: *k, gap: spin - &lambda, lambda_norm_sq: lambda })
}

/// The u-small K-types whose gap is at least 94.
pub fn compute_certs(e: &Engine, usmall: &[KType]) -> Result<Vec<CertsEntry>> {
    let entries: Vec<CertsEntry> = usmall
        .par_iter()
        .map(|k| certs_entry(e, k))
        .collect::<Result<Vec<_>>>()?;
    let mut certs: Vec<CertsEntry> = entries.into_iter().filter(|c| c.gap >= int(CERTS_GAP)).collect();
    certs.sort();
    Ok(certs)
}

/// Dominant integral `Λ` with `lo ≤ ‖Λ‖² ≤ hi`, given as doubled bounds.
fn norm_shell(e: &Engine, lo2: i128, hi2: i128) -> Vec<Weight> {
    let g = &e.lat.gram2;
    debug_assert!(g.iter().flatten().all(|&x| x > 0));
    let mut out = Vec::new();
    let mut cur = [0i64; RANK];
    fn rec(g: &[[i64; RANK]; RANK], k: usize, cur: &mut Weight, partial: i128, lo2: i128, hi2: i128, out: &mut Vec<Weight>) {
        if k == RANK {
            if partial >= lo2 {
                out.push(*cur);
            }
            return;
        }
        let cross: i128 = (0..k).map(|j| 2 * g[k][j] as i128 * cur[j] as i128).sum();
        let mut v = 0i64;
        loop {
            let vv = v as i128;
            let val = partial + vv * vv * g[k][k] as i128 + vv * cross;
            if val > hi2 {
                break;
            }
            cur[k] = v;
            rec(g, k + 1, cur, val, lo2, hi2, out);
            v += 1;
        }
        cur[k] = 0;
    }
    rec(g, 0, &mut cur, 0, lo2, hi2, &mut out);
    out.sort();
    out
}

/// Ω: dominant integral `Λ` with `14 + 94 ≤ ‖Λ‖² ≤ 49 + 371/2`.
pub fn enumerate_omega(e: &Engine) -> Vec<InfChar> {
    // doubled: 216 ≤ 2‖Λ‖² ≤ 469
    let lo = 2 * (14 + CERTS_GAP as i128);
    let hi = 2 * 49 + 371;
    norm_shell(e, lo, hi).into_iter().map(InfChar::from_ints).collect()
}

/// `{wΛ − ρ_c : w ∈ W¹}` restricted to K-dominant weights, in ϖ-coordinates.
pub fn dirac_candidate_gammas(e: &Engine, lambda: &InfChar) -> DiracCandidateSet {
    let mut dom = lambda.0.clone();
    dominant_in_place_generic(&e.lat, &mut dom, RANK);
    let rc = e.rho_c().map(int);
    let mut seen = HashSet::new();
    let mut gammas = Vec::new();
    for c in &e.chambers {
        let mut v = dom.clone();
        c.word.apply(&e.lat, &mut v);
        let gamma: [Rational; RANK] = std::array::from_fn(|k| &v[k] - &rc[k]);
        if gamma[..COMPACT_RANK].iter().any(|x| x.is_negative()) {
            continue;
        }
        let varpi = e.lat.to_varpi_rational(&gamma);
        if seen.insert(varpi.clone()) {
            gammas.push((varpi, c.index));
        }
    }
    gammas.sort();
    DiracCandidateSet { inf_char: InfChar(dom), gammas }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinLkts {
    pub min_spin_sq: Rational,
    pub achievers: Vec<(KType, u64)>,
    pub hd_nonzero: bool,
}

/// Entries of minimal spin norm, and whether that minimum equals `‖Λ‖²`.
pub fn spin_lkts(e: &Engine, ktypes: &[(KType, u64)], lambda: &InfChar) -> Result<SpinLkts> {
    if ktypes.is_empty() {
        return Err(Error::Domain("spin_lkts needs a nonempty list".into()));
    }
    let norms: Vec<i128> = ktypes.iter().map(|(k, _)| spin_norm2_doubled(e, &e.lat.ktype_weight(k))).collect();
    let best = *norms.iter().min().unwrap();
    let achievers = ktypes.iter().zip(&norms).filter(|(_, &n)| n == best).map(|(k, _)| *k).collect();
    let min_spin_sq = Rational::new(best.into(), 2.into());
    let hd_nonzero = min_spin_sq == norms::infchar_norm_sq(e, lambda);
    Ok(SpinLkts { min_spin_sq, achievers, hd_nonzero })
}

/// `B(μ_i − μ, ζ)` for each spin lowest K-type `μ_i`.
///
/// With the form fixed by the root lengths, `B(ϖ_k, ζ) = 0` and
/// `B(ζ/3, ζ) = 1/2`, so the value is half the difference of the
/// g-coordinates.
pub fn index_pairings(e: &Engine, lkt: &KType, spin: &[KType]) -> Result<Vec<i64>> {
    let z = &e.datum.zeta;
    let base = e.datum.to_ambient_ints(crate::structure::Basis::Varpi, &lkt.0);
    spin.iter()
        .map(|m| {
            let v = e.datum.to_ambient_ints(crate::structure::Basis::Varpi, &m.0);
            let p = inner(&(&v - &base), z);
            to_i64(&p).ok_or_else(|| Error::Domain(format!("B({m} − {lkt}, ζ) = {p} is not an integer")))
        })
        .collect()
}

/// True iff all pairings are integers of one parity.
pub fn dirac_index_no_cancellation(e: &Engine, lkt: &KType, spin: &[KType]) -> Result<bool> {
    if spin.is_empty() {
        return Err(Error::Domain("empty spin lowest K-type set".into()));
    }
    Ok(same_parity(&index_pairings(e, lkt, spin)?))
}

pub fn same_parity(values: &[i64]) -> bool {
    values.windows(2).all(|w| (w[0] - w[1]).rem_euclid(2) == 0)
}

/// Linear lower bound `height(μ) ≥ Σ coef·[a..f] + gcoef·g + constant`
/// valid for `g` of the chosen sign, from one chamber.
#[derive(Clone, Debug)]
pub struct HeightBound {
    pub chamber: usize,
    pub coef: [i64; COMPACT_RANK],
    pub gcoef: i64,
    pub constant: i64,
}

/// For a dominant `u` and any `j`, `⟨u, ρ⟩ ≥ ⟨μ + 2ρ_c, ρ^(j)⟩`; and the
/// residual of a cone projection pairs nonpositively with `ρ`. Together:
/// `height(μ) ≥ 2⟨μ + 2ρ_c, ρ^(j)⟩ − 2‖ρ‖²`.
fn height_bound(e: &Engine, j: usize) -> Result<HeightBound> {
    let d = &e.datum;
    let rj = &e.chambers[j].rho_j;
    let as_int = |r: Rational| to_i64(&r).ok_or_else(|| Error::Internal("non-integral height bound".into()));
    let coef = (0..COMPACT_RANK)
        .map(|i| as_int(int(2) * inner(&d.varpi[i], rj)))
        .collect::<Result<Vec<_>>>()?;
    let gcoef = as_int(int(2) * inner(&d.zeta, rj) * rat(1, 3))?;
    let constant = as_int(int(4) * inner(&d.rho_c, rj) - int(2) * inner(&d.rho, &d.rho))?;
    Ok(HeightBound { chamber: j, coef: coef.try_into().unwrap(), gcoef, constant })
}

#[derive(Clone, Debug)]
pub struct GapReport {
    pub height_cap: i64,
    /// K-types inside the enumeration region.
    pub candidates: usize,
    /// u-large K-types with height at most the cap.
    pub checked: usize,
    pub max_gap: Option<Rational>,
    pub violations: Vec<(KType, Rational)>,
}

/// Checks `spin² − lambda² ≤ 79` for every u-large K-type of atlas height at
/// most `height_cap`. `usmall` must be the complete census.
pub fn bounded_ularge_gap(e: &Engine, usmall: &[KType], height_cap: i64) -> Result<GapReport> {
    let usmall: HashSet<KType> = usmall.iter().copied().collect();
    // chambers whose ρ_n is ±9ζ give bounds growing with |g|
    let plus = height_bound(e, 0)?;
    let minus_j = e
        .chambers
        .iter()
        .position(|c| c.rho_n_w.iter().zip(&e.chambers[0].rho_n_w).all(|(a, b)| *a == -*b))
        .ok_or_else(|| Error::Internal("no chamber opposite to the standard one".into()))?;
    let minus = height_bound(e, minus_j)?;
    for hb in [&plus, &minus] {
        if hb.coef.iter().any(|&c| c <= 0) {
            return Err(Error::Internal("height bound does not grow in a..f".into()));
        }
    }
    if plus.gcoef <= 0 || minus.gcoef >= 0 {
        return Err(Error::Internal("height bound does not grow in |g|".into()));
    }

    let coef: [i64; COMPACT_RANK] = std::array::from_fn(|i| plus.coef[i].min(minus.coef[i]));
    let mut prefixes = Vec::new();
    let mut cur = [0i64; COMPACT_RANK];
    collect_prefixes(&coef, 0, &mut cur, 0, height_cap - plus.constant.min(minus.constant), &mut prefixes);

    let results: Vec<(usize, usize, Option<Rational>, Vec<(KType, Rational)>)> = prefixes
        .par_iter()
        .map(|(pre, _)| -> Result<_> {
            let mut cands = 0;
            let mut checked = 0;
            let mut best: Option<Rational> = None;
            let mut bad = Vec::new();
            // g ≥ 0 uses the plus bound, g < 0 the minus bound
            let lin_p: i64 = (0..COMPACT_RANK).map(|i| plus.coef[i] * pre[i]).sum();
            let lin_m: i64 = (0..COMPACT_RANK).map(|i| minus.coef[i] * pre[i]).sum();
            let gmax = (height_cap - plus.constant - lin_p).div_euclid(plus.gcoef);
            let gmin = -(height_cap - minus.constant - lin_m).div_euclid(-minus.gcoef);
            let range = gmin.min(0)..=gmax.max(-1);
            for g in range {
                if (g >= 0 && g > gmax) || (g < 0 && g < gmin) {
                    continue;
                }
                let mut coords = [0i64; RANK];
                coords[..COMPACT_RANK].copy_from_slice(pre);
                coords[RANK - 1] = g;
                if !is_k_type(&coords)? {
                    continue;
                }
                cands += 1;
                let k = KType(coords);
                if usmall.contains(&k) {
                    continue;
                }
                let w = e.lat.ktype_weight(&k);
                let p = lambda_projection(e, &w)?;
                let h = norms::height_from_projection(e, &p)
                    .ok_or_else(|| Error::Internal(format!("non-integral height for {k}")))?;
                let bound = if g >= 0 { lin_p + plus.gcoef * g + plus.constant } else { lin_m + minus.gcoef * g + minus.constant };
                if h < bound {
                    return Err(Error::Internal(format!("height bound fails at {k}")));
                }
                if h > height_cap {
                    continue;
                }
                checked += 1;
                let gap = Rational::new(spin_norm2_doubled(e, &w).into(), 2.into()) - cone::norm2(&e.lat, &p);
                if gap > int(ULARGE_GAP) {
                    bad.push((k, gap.clone()));
                }
                if best.as_ref().map_or(true, |b| &gap > b) {
                    best = Some(gap);
                }
            }
            Ok((cands, checked, best, bad))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = GapReport { height_cap, candidates: 0, checked: 0, max_gap: None, violations: Vec::new() };
    for (c, k, b, v) in results {
        report.candidates += c;
        report.checked += k;
        if let Some(b) = b {
            if report.max_gap.as_ref().map_or(true, |m| &b > m) {
                report.max_gap = Some(b);
            }
        }
        report.violations.extend(v);
    }
    report.violations.sort();
    Ok(report)
}

fn collect_prefixes(
    coef: &[i64; COMPACT_RANK],
    k: usize,
    cur: &mut [i64; COMPACT_RANK],
    lin: i64,
    budget: i64,
    out: &mut Vec<([i64; COMPACT_RANK], i64)>,
) {
    if k == COMPACT_RANK {
        out.push((*cur, lin));
        return;
    }
    let mut v = 0;
    while lin + v * coef[k] <= budget {
        cur[k] = v;
        collect_prefixes(coef, k + 1, cur, lin + v * coef[k], budget, out);
        v += 1;
    }
    cur[k] = 0;
}

/// Sorted, deduplicated K-types.
pub fn canonical(ks: impl IntoIterator<Item = KType>) -> Vec<KType> {
    ks.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Dominant representative of an integral vector; exposed for callers that
/// compare against `W(g)`-orbits.
pub fn g_dominant(e: &Engine, v: &Weight) -> Weight {
    let mut out = *v;
    make_dominant(&e.lat, &mut out, RANK);
    out
}


#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> &'static Engine {
        Engine::shared()
    }

    #[test]
    fn admissibility_examples() {
        assert!(hp_admissible(&InfChar::from_ints([1; 7])));
        assert!(!hp_admissible(&InfChar::from_ints([0, 1, 0, 1, 1, 1, 1])));
        assert!(hp_admissible(&InfChar::from_ints([0, 1, 1, 0, 1, 1, 1])));
        assert!(!hp_admissible(&InfChar(std::array::from_fn(|_| rat(1, 2)))));
    }

    #[test]
    fn vanishing_sum_examples() {
        let e = e();
        assert!(vanishing_sum_witness(e, &InfChar::from_ints([0, 1, 0, 1, 1, 1, 1]), 0).unwrap());
        assert!(vanishing_sum_witness(e, &InfChar::from_ints([0, 2, 0, 3, 1, 2, 1]), 0).unwrap());
        assert!(vanishing_sum_witness(e, &InfChar::from_ints([1; 7]), 0).is_err());
    }

    #[test]
    fn omega_membership() {
        let e = e();
        let om = enumerate_omega(e);
        assert!(om.contains(&InfChar::from_ints([1; 7])));
        assert!(!om.contains(&InfChar::from_ints([0; 7])));
    }

    #[test]
    fn candidates_at_rho_are_the_rho_n() {
        let e = e();
        let c = dirac_candidate_gammas(e, &InfChar::from_ints([1; 7]));
        assert_eq!(c.gammas.len(), 56);
        for ch in &e.chambers {
            assert!(c.contains(&e.lat.to_varpi(&ch.rho_n_w)));
        }
    }

    #[test]
    fn parity() {
        assert!(same_parity(&[11, 3, -5]));
        assert!(same_parity(&[4]));
        assert!(!same_parity(&[1, 2]));
    }
}
