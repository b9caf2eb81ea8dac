//! Weyl-group algorithms on fundamental-weight coordinates: dominant
//! representatives, the 56 chambers containing the compact positive system,
//! and the Weyl dimension formula for the E6 factor of k.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational, Scalar};
use crate::structure::{AmbientVector, Basis, KType, RootDatum, Weight, WeightLattice, COMPACT_RANK, RANK};

pub const NUM_CHAMBERS: usize = 56;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// W(E7), simple reflections 1..7.
    G,
    /// W(E6) of the compact factor, simple reflections 1..6.
    K,
}

impl Group {
    pub fn rank(self) -> usize {
        match self {
            Group::G => RANK,
            Group::K => COMPACT_RANK,
        }
    }
}

/// `letters = [l0, …, l_{m−1}]` (1-based) denotes `s_{l0}⋯s_{l_{m−1}}`, so the
/// last letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord {
    pub letters: Vec<u8>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// `self · s_i`.
    pub fn then_right(&self, i: usize) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.push(i as u8 + 1);
        WeylWord { letters }
    }

    pub fn apply<T: Scalar>(&self, lat: &WeightLattice, v: &mut [T; RANK]) {
        for &l in self.letters.iter().rev() {
            reflect(lat, v, l as usize - 1);
        }
    }

    pub fn apply_weight(&self, lat: &WeightLattice, v: &Weight) -> Weight {
        let mut out = *v;
        self.apply(lat, &mut out);
        out
    }

    /// The 7×7 integer matrix of this element acting on ζ-basis coordinates.
    pub fn matrix(&self, lat: &WeightLattice) -> [[i64; RANK]; RANK] {
        let mut m = [[0i64; RANK]; RANK];
        for c in 0..RANK {
            let mut e = [0i64; RANK];
            e[c] = 1;
            let col = self.apply_weight(lat, &e);
            for r in 0..RANK {
                m[r][c] = col[r];
            }
        }
        m
    }

    /// Simple reflections occurring in the word, 0-based.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.letters.iter().map(|&l| l as usize - 1).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// `s_i v = v − ⟨v, α_i∨⟩ α_i`, in ζ-basis coordinates.
#[inline]
pub fn reflect<T: Scalar>(lat: &WeightLattice, v: &mut [T; RANK], i: usize) {
    let c = v[i].clone();
    if c.is_zero() {
        return;
    }
    for (j, a) in lat.cartan[i].iter().enumerate() {
        if *a != 0 {
            let t = c.clone() * T::from_i64(*a);
            v[j] -= t;
        }
    }
}

#[inline]
fn reflect_i64(lat: &WeightLattice, v: &mut Weight, i: usize) {
    let c = v[i];
    let row = &lat.cartan[i];
    for j in 0..RANK {
        v[j] -= c * row[j];
    }
}

/// Makes `v` dominant for the first `ngens` simple roots, always reflecting at
/// the lowest-index negative coordinate. Returns the reflections in the order
/// they were applied.
pub fn dominant_in_place(lat: &WeightLattice, v: &mut Weight, ngens: usize) -> Vec<u8> {
    let mut applied = Vec::new();
    while let Some(i) = (0..ngens).find(|&i| v[i] < 0) {
        reflect_i64(lat, v, i);
        applied.push(i as u8 + 1);
    }
    applied
}

/// Same as [`dominant_in_place`] without recording the word.
#[inline]
pub fn make_dominant(lat: &WeightLattice, v: &mut Weight, ngens: usize) {
    loop {
        let mut moved = false;
        for i in 0..ngens {
            if v[i] < 0 {
                reflect_i64(lat, v, i);
                moved = true;
                break;
            }
        }
        if !moved {
            return;
        }
    }
}

pub fn dominant_in_place_generic<T: Scalar>(lat: &WeightLattice, v: &mut [T; RANK], ngens: usize) -> Vec<u8> {
    let mut applied = Vec::new();
    while let Some(i) = (0..ngens).find(|&i| v[i].is_negative()) {
        reflect(lat, v, i);
        applied.push(i as u8 + 1);
    }
    applied
}

/// Dominant representative of `v` and a word carrying `v` to it.
///
/// For `Group::K` only the six compact reflections are used, so the
/// ζ-component is untouched.
pub fn dominant_rep(d: &RootDatum, lat: &WeightLattice, v: &AmbientVector, group: Group) -> Result<(AmbientVector, WeylWord)> {
    let mut c = d.from_ambient(Basis::Zeta, v)?;
    let applied = dominant_in_place_generic(lat, &mut c, group.rank());
    let word = WeylWord { letters: applied.into_iter().rev().collect() };
    Ok((d.to_ambient(Basis::Zeta, &c), word))
}

/// One of the 56 positive systems for g containing the compact positive system.
#[derive(Clone, Debug)]
pub struct Chamber {
    pub index: usize,
    pub word: WeylWord,
    /// `ρ^(j) = w^(j)ρ`.
    pub rho_j: AmbientVector,
    /// `ρ_n^(j) = ρ^(j) − ρ_c`.
    pub rho_n_j: AmbientVector,
    /// ζ-basis coordinates of `ρ^(j)`.
    pub rho_w: Weight,
    /// ζ-basis coordinates of `ρ_n^(j)`.
    pub rho_n_w: Weight,
    /// `w^(j)α_i` in ζ-basis coordinates.
    pub simple_roots: [Weight; RANK],
    /// `gram2 · w^(j)α_i`; `v` is dominant for the chamber iff every dot
    /// product with these rows is `≥ 0`.
    pub simple_duals: [Weight; RANK],
}

impl Chamber {
    pub fn is_dominant(&self, v: &Weight) -> bool {
        self.simple_duals.iter().all(|d| dot(d, v) >= 0)
    }

    pub fn is_dominant_rational(&self, v: &[Rational; RANK]) -> bool {
        self.simple_duals
            .iter()
            .all(|d| (0..RANK).map(|k| &v[k] * int(d[k])).sum::<Rational>() >= Rational::zero())
    }
}

#[inline]
pub fn dot(a: &Weight, b: &Weight) -> i64 {
    (0..RANK).map(|k| a[k] * b[k]).sum()
}

pub fn mat_vec(m: &[[i64; RANK]; RANK], v: &Weight) -> Weight {
    std::array::from_fn(|i| dot(&m[i], v))
}

/// Breadth-first search from the standard chamber, crossing only walls that
/// are noncompact simple roots of the current positive system.
pub fn enumerate_chambers(d: &RootDatum, lat: &WeightLattice) -> Result<Vec<Chamber>> {
    let rho_c = lat.rho_c;
    let make = |index: usize, word: WeylWord| -> Result<Chamber> {
        let rho_w = word.apply_weight(lat, &lat.rho);
        let rho_n_w: Weight = std::array::from_fn(|k| rho_w[k] - rho_c[k]);
        let simple_roots: [Weight; RANK] = std::array::from_fn(|i| word.apply_weight(lat, &lat.cartan[i]));
        let simple_duals = simple_roots.map(|r| mat_vec(&lat.gram2, &r));
        Ok(Chamber {
            index,
            rho_j: d.to_ambient_ints(Basis::Zeta, &rho_w),
            rho_n_j: d.to_ambient_ints(Basis::Zeta, &rho_n_w),
            word,
            rho_w,
            rho_n_w,
            simple_roots,
            simple_duals,
        })
    };

    let mut chambers = vec![make(0, WeylWord::identity())?];
    let mut seen: HashMap<Weight, usize> = HashMap::from([(lat.rho, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        for i in 0..RANK {
            let root = chambers[j].simple_roots[i];
            let g: i64 = dot(&lat.gvec, &root);
            if g == 0 {
                continue;
            }
            let next: Weight = std::array::from_fn(|k| chambers[j].rho_w[k] - root[k]);
            if seen.contains_key(&next) {
                continue;
            }
            let idx = chambers.len();
            seen.insert(next, idx);
            let word = chambers[j].word.then_right(i);
            let c = make(idx, word)?;
            if c.rho_w != next {
                return Err(Error::Internal("chamber word does not reproduce ρ^(j)".into()));
            }
            chambers.push(c);
            queue.push_back(idx);
        }
    }
    if chambers.len() != NUM_CHAMBERS {
        return Err(Error::Internal(format!("chamber search found {} chambers", chambers.len())));
    }
    for c in &chambers {
        if c.rho_n_w[..COMPACT_RANK].iter().any(|&x| x < 0) {
            return Err(Error::Internal(format!("ρ_n^({}) is not K-dominant", c.index)));
        }
    }
    Ok(chambers)
}

/// Dimension of the k-type with highest weight `k` (Weyl dimension formula
/// over the 36 compact positive roots; the ζ-part is a character).
pub fn weyl_dim_k(lat: &WeightLattice, k: &KType) -> BigInt {
    let shifted: Vec<i64> = k.0[..COMPACT_RANK].iter().map(|x| x + 1).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for c in &lat.positive_root_coeffs {
        if c[RANK - 1] != 0 {
            continue;
        }
        let top: i64 = (0..COMPACT_RANK).map(|i| c[i] * shifted[i]).sum();
        let bottom: i64 = c[..COMPACT_RANK].iter().sum();
        num *= top;
        den *= bottom;
    }
    num / den
}

/// `Σ_j dim E_{ρ_n^(j)} = 2^27`, the dimension of the spin module of p.
pub fn spin_module_dimension_check(lat: &WeightLattice, chambers: &[Chamber]) -> Result<bool> {
    let mut total = BigInt::zero();
    for c in chambers {
        let k = KType::new(lat.to_varpi(&c.rho_n_w))?;
        total += weyl_dim_k(lat, &k);
    }
    Ok(total == BigInt::from(1u64 << 27))
}

/// Indices `(i, j)` with `ρ_n^(i) = ρ_n^(j)`, `i < j`. Empty for E7(-25),
/// which is what multiplicity one in the spin decomposition needs.
pub fn rho_n_coincidences(chambers: &[Chamber]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..chambers.len() {
        for j in i + 1..chambers.len() {
            if chambers[i].rho_n_w == chambers[j].rho_n_w {
                out.push((i, j));
            }
        }
    }
    out
}

/// Reduced word of the element with matrix `m` (acting on ζ-coordinates),
/// read off by straightening `mρ`.
pub fn word_of_matrix(lat: &WeightLattice, m: &[[i64; RANK]; RANK]) -> WeylWord {
    let mut v = mat_vec(m, &lat.rho);
    // s_{ik}⋯s_{i1} m ρ = ρ, so m = s_{i1}⋯s_{ik}
    let applied = dominant_in_place(lat, &mut v, RANK);
    WeylWord { letters: applied }
}

/// Matrix of the reflection in a root given by ζ-coordinates `r` and root
/// coordinates `c`: `v ↦ v − (c·v) r`.
pub fn reflection_matrix(r: &Weight, c: &Weight) -> [[i64; RANK]; RANK] {
    std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as i64 - r[i] * c[j]))
}

pub fn mat_mul(a: &[[i64; RANK]; RANK], b: &[[i64; RANK]; RANK]) -> [[i64; RANK]; RANK] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..RANK).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn identity_matrix() -> [[i64; RANK]; RANK] {
    std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as i64))
}

/// Strongly orthogonal noncompact roots `β_1, β_2, …` (indices into the
/// positive roots): `β_1` is the highest root and each next one is the
/// highest noncompact root orthogonal to all previous ones.
pub fn strongly_orthogonal_chain(lat: &WeightLattice) -> Vec<usize> {
    let noncompact = |k: usize| lat.positive_root_coeffs[k][RANK - 1] != 0;
    let height = |k: usize| lat.positive_root_coeffs[k].iter().sum::<i64>();
    let pair = |a: usize, b: usize| dot(&lat.positive_root_coeffs[a], &lat.positive_roots[b]);
    let mut chain: Vec<usize> = Vec::new();
    loop {
        let next = (0..lat.positive_roots.len())
            .filter(|&k| noncompact(k) && chain.iter().all(|&b| pair(k, b) == 0))
            .max_by_key(|&k| height(k));
        match next {
            Some(k) => chain.push(k),
            None => return chain,
        }
    }
}

/// Matrix of the reflection in positive root number `k`.
pub fn root_reflection(lat: &WeightLattice, k: usize) -> [[i64; RANK]; RANK] {
    reflection_matrix(&lat.positive_roots[k], &lat.positive_root_coeffs[k])
}

/// Conjugacy classes of `s_{β_1}⋯s_{β_k}` for `k = 1..` the chain length,
/// each sorted. These are the Cartan involutions of the noncompact Cartan
/// subgroups, up to the choice of KGB element.
pub fn cayley_involution_classes(lat: &WeightLattice) -> Vec<Vec<[[i64; RANK]; RANK]>> {
    let simple: Vec<[[i64; RANK]; RANK]> = (0..RANK)
        .map(|i| {
            let mut c = [0; RANK];
            c[i] = 1;
            reflection_matrix(&lat.cartan[i], &c)
        })
        .collect();
    let mut theta = identity_matrix();
    let mut classes = Vec::new();
    for k in strongly_orthogonal_chain(lat) {
        theta = mat_mul(&theta, &root_reflection(lat, k));
        let mut seen = BTreeSet::from([theta]);
        let mut queue = VecDeque::from([theta]);
        while let Some(m) = queue.pop_front() {
            for s in &simple {
                let n = mat_mul(&mat_mul(s, &m), s);
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        classes.push(seen.into_iter().collect());
    }
    classes
}

/// Involutions from [`cayley_involution_classes`] whose reduced word uses
/// every simple reflection.
pub fn fully_supported_involutions(lat: &WeightLattice) -> Vec<[[i64; RANK]; RANK]> {
    cayley_involution_classes(lat)
        .into_iter()
        .flatten()
        .filter(|m| word_of_matrix(lat, m).support().len() == RANK)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::structure::{build_root_datum, inner};

    fn setup() -> (RootDatum, WeightLattice, Vec<Chamber>) {
        let d = build_root_datum().unwrap();
        let lat = WeightLattice::new(&d).unwrap();
        let ch = enumerate_chambers(&d, &lat).unwrap();
        (d, lat, ch)
    }

    #[test]
    fn fifty_six_chambers() {
        let (d, _lat, ch) = setup();
        assert_eq!(ch.len(), 56);
        assert_eq!(ch[0].rho_j, d.rho);
        assert_eq!(ch[0].rho_n_j, d.rho_n);
        let distinct: std::collections::HashSet<_> = ch.iter().map(|c| c.rho_w).collect();
        assert_eq!(distinct.len(), 56);
    }

    #[test]
    fn dominant_rep_of_rho_and_minus_rho() {
        let (d, lat, _) = setup();
        let (dom, w) = dominant_rep(&d, &lat, &d.rho, Group::G).unwrap();
        assert_eq!((dom, w.len()), (d.rho.clone(), 0));
        let (dom, w) = dominant_rep(&d, &lat, &-&d.rho, Group::G).unwrap();
        assert_eq!(dom, d.rho);
        assert_eq!(w.len(), 63);
    }

    #[test]
    fn k_dominant_minus_rho_n_lies_on_rho_orbit() {
        let (d, lat, _) = setup();
        let (dom, _) = dominant_rep(&d, &lat, &-&d.rho_n, Group::K).unwrap();
        let v = &dom + &d.rho_c;
        assert_eq!(inner(&v, &v), rat(399, 2));
        let (g_dom, _) = dominant_rep(&d, &lat, &v, Group::G).unwrap();
        assert_eq!(g_dom, d.rho);
        // the ζ-component is not touched by K
        assert_eq!(inner(&dom, &d.zeta), inner(&-&d.rho_n, &d.zeta));
    }

    #[test]
    fn kostant_representatives() {
        let (_, lat, ch) = setup();
        for c in &ch {
            let inv = c.word.inverse();
            for r in lat.positive_roots.iter().zip(&lat.positive_root_coeffs) {
                if r.1[RANK - 1] != 0 {
                    continue;
                }
                let img = inv.apply_weight(&lat, r.0);
                // positive iff its root coordinates are nonnegative
                let coeffs: Weight = std::array::from_fn(|i| dot(&lat.gram2[i], &img));
                assert!(coeffs.iter().all(|&x| x >= 0), "chamber {}", c.index);
            }
            assert!(c.is_dominant(&c.rho_w));
        }
    }

    #[test]
    fn weyl_dimensions() {
        let (_, lat, ch) = setup();
        assert_eq!(weyl_dim_k(&lat, &KType([0, 0, 0, 0, 0, 0, 5])), BigInt::from(1));
        assert_eq!(weyl_dim_k(&lat, &KType([1, 0, 0, 0, 0, 0, 2])), BigInt::from(27));
        assert_eq!(weyl_dim_k(&lat, &KType([0, 0, 0, 0, 0, 1, -2])), BigInt::from(27));
        assert_eq!(weyl_dim_k(&lat, &KType([0, 1, 0, 0, 0, 0, 0])), BigInt::from(78));
        assert!(spin_module_dimension_check(&lat, &ch).unwrap());
        assert!(rho_n_coincidences(&ch).is_empty());
    }

    #[test]
    fn word_recovered_from_matrix() {
        let (_, lat, ch) = setup();
        for c in &ch {
            let m = c.word.matrix(&lat);
            let w = word_of_matrix(&lat, &m);
            assert_eq!(w.matrix(&lat), m);
            assert_eq!(w.len(), c.word.len());
        }
    }

    #[test]
    fn cayley_classes() {
        let (_, lat, _) = setup();
        let chain = strongly_orthogonal_chain(&lat);
        let heights: Vec<i64> = chain.iter().map(|&k| lat.positive_root_coeffs[k].iter().sum()).collect();
        assert_eq!(heights, vec![17, 9, 1]);
        let sizes: Vec<usize> = cayley_involution_classes(&lat).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![63, 945, 315]);
        let fs = fully_supported_involutions(&lat);
        assert_eq!(fs.len(), 16 + 514 + 251);
        for m in &fs {
            assert_eq!(mat_mul(m, m), identity_matrix());
        }
    }
}
