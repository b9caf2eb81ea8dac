//! Fixture ingestion: KGB involutions, parameters, K-type branching, the
//! tables of fully supported Dirac series, and Dirac-series counts
//! per support. Everything here is data that an external atlas session
//! produced; the checks recompute what can be recomputed from the root datum.
//!
//! All files are line oriented, `|`-separated, with `#` comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::norms::{self, spin_datum};
use crate::rational::{fmt_rational, int, parse_rational, rat, Rational};
use crate::screening::{g_dominant, hp_admissible};
use crate::structure::{is_k_type, InfChar, KType, Weight, RANK};
use crate::weyl::{identity_matrix, mat_mul, word_of_matrix};

pub type Matrix = [[i64; RANK]; RANK];

/// Default bound on each coordinate in the Φ search.
pub const DEFAULT_COORD_CAP: i64 = 64;
/// `8·94`: the Φ condition `‖ν‖² < 94` reads `ΛᵀMΛ < 752` below.
const PHI_BOUND8: i64 = 8 * 94;

pub const KGB_FILE: &str = "fs_involutions.kgb";
pub const TABLE_KGB_FILE: &str = "table.kgb";
pub const TABLE_PARAMS_FILE: &str = "table.params";
pub const TABLE_FILE: &str = "tables.txt";
pub const COUNTS_FILE: &str = "dirac_counts.txt";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KgbRecord {
    pub id: u64,
    /// Sorted, 0-based simple-root indices.
    pub support: Vec<usize>,
    /// Acts on ζ-basis coordinates (columns are images of `ζ_j`).
    pub theta: Matrix,
}

impl KgbRecord {
    pub fn fully_supported(&self) -> bool {
        self.support.len() == RANK
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParamFlags {
    pub unitary: bool,
    pub fully_supported: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasParameter {
    pub x: u64,
    pub lambda: Weight,
    pub nu: [Rational; RANK],
    pub flags: ParamFlags,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingRecord {
    pub mult: u64,
    pub ktype: KType,
    pub height: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    /// Seven 0/1 digits, the infinitesimal character's ζ-coordinates.
    pub table_id: String,
    pub x: u64,
    pub x_prime: Option<u64>,
    pub lambda: Weight,
    pub nu: [Rational; RANK],
    pub spin_lkts: Vec<KType>,
    /// Which spin lowest K-types are also lowest K-types.
    pub lkt_flags: Vec<bool>,
    pub inf_char: InfChar,
    pub unipotent: bool,
    pub line: usize,
}

impl TableRow {
    /// Representations in the row: `x`, plus `x'` when present.
    pub fn multiplicity(&self) -> usize {
        1 + self.x_prime.is_some() as usize
    }
}

/// `N(S)` for proper subsets `S ⊂ {0..6}`, plus optional per-cardinality
/// totals `N_i` for cardinalities where the individual `N(S)` are not
/// available.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiracCounts {
    pub by_subset: BTreeMap<Vec<usize>, u64>,
    pub by_card: BTreeMap<usize, u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Kgb,
    Params,
    Branching,
    Table,
    DiracCounts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Records {
    Kgb(Vec<KgbRecord>),
    Params(Vec<AtlasParameter>),
    Branching(Vec<BranchingRecord>),
    Table(Vec<TableRow>),
    DiracCounts(DiracCounts),
}

pub fn parse_fixture(kind: FixtureKind, text: &str, file: &str) -> Result<Records> {
    Ok(match kind {
        FixtureKind::Kgb => Records::Kgb(parse_kgb(text, file)?),
        FixtureKind::Params => Records::Params(parse_params(text, file)?),
        FixtureKind::Branching => Records::Branching(parse_branching(text, file)?),
        FixtureKind::Table => Records::Table(parse_table(text, file)?),
        FixtureKind::DiracCounts => Records::DiracCounts(parse_dirac_counts(text, file)?),
    })
}

struct Line<'a> {
    file: &'a str,
    no: usize,
    fields: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { file: self.file.to_string(), line: self.no, msg: msg.into() }
    }

    fn expect_fields(&self, n: usize) -> Result<()> {
        if self.fields.len() != n {
            return Err(self.err(format!("expected {n} '|'-separated fields, found {}", self.fields.len())));
        }
        Ok(())
    }

    fn int<T: std::str::FromStr>(&self, s: &str, what: &str) -> Result<T> {
        s.trim().parse().map_err(|_| self.err(format!("bad {what} {:?}", s.trim())))
    }

    fn ints(&self, s: &str, what: &str) -> Result<Weight> {
        let v = s.split(',').map(|t| self.int::<i64>(t, what)).collect::<Result<Vec<_>>>()?;
        v.try_into().map_err(|v: Vec<i64>| self.err(format!("{what} needs {RANK} entries, found {}", v.len())))
    }

    fn rationals(&self, s: &str, what: &str) -> Result<[Rational; RANK]> {
        let v = s
            .split(',')
            .map(|t| parse_rational(t).ok_or_else(|| self.err(format!("bad {what} entry {:?}", t.trim()))))
            .collect::<Result<Vec<_>>>()?;
        v.try_into().map_err(|v: Vec<Rational>| self.err(format!("{what} needs {RANK} entries, found {}", v.len())))
    }

    fn subset(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s == "full" {
            return Ok((0..RANK).collect());
        }
        if s == "empty" || s.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = BTreeSet::new();
        for t in s.split(',') {
            let i: usize = self.int(t, "simple-root index")?;
            if i >= RANK {
                return Err(self.err(format!("simple-root index {i} out of range 0..{RANK}")));
            }
            if !out.insert(i) {
                return Err(self.err(format!("index {i} repeated")));
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn lines<'a>(text: &'a str, file: &'a str) -> impl Iterator<Item = Line<'a>> {
    text.lines().enumerate().filter_map(move |(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            return None;
        }
        Some(Line { file, no: i + 1, fields: body.split('|').map(str::trim).collect() })
    })
}

pub fn parse_kgb(text: &str, file: &str) -> Result<Vec<KgbRecord>> {
    let gram2 = Engine::shared().lat.gram2;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for l in lines(text, file) {
        l.expect_fields(3)?;
        let id: u64 = l.int(l.fields[0], "KGB id")?;
        let support = l.subset(l.fields[1])?;
        let rows: Vec<&str> = l.fields[2].split(';').collect();
        if rows.len() != RANK {
            return Err(l.err(format!("θ needs {RANK} rows, found {}", rows.len())));
        }
        let mut theta = [[0; RANK]; RANK];
        for (r, row) in rows.iter().enumerate() {
            theta[r] = l.ints(row, "θ row")?;
        }
        check_involution(&theta, &gram2).map_err(|m| l.err(format!("record {id}: {m}")))?;
        if !seen.insert(id) {
            return Err(l.err(format!("duplicate KGB id {id}")));
        }
        out.push(KgbRecord { id, support, theta });
    }
    Ok(out)
}

/// `θ² = 1` and `θᵀ G θ = G` for the ζ-basis Gram matrix `G`.
pub fn check_involution(theta: &Matrix, gram2: &Matrix) -> std::result::Result<(), String> {
    if mat_mul(theta, theta) != identity_matrix() {
        return Err("θ² ≠ 1".into());
    }
    let t: Matrix = std::array::from_fn(|i| std::array::from_fn(|j| theta[j][i]));
    if mat_mul(&mat_mul(&t, gram2), theta) != *gram2 {
        return Err("θ does not preserve the invariant form".into());
    }
    Ok(())
}

pub fn parse_params(text: &str, file: &str) -> Result<Vec<AtlasParameter>> {
    let mut out = Vec::new();
    for l in lines(text, file) {
        l.expect_fields(4)?;
        let x = l.int(l.fields[0], "KGB id")?;
        let lambda = l.ints(l.fields[1], "λ")?;
        let nu = l.rationals(l.fields[2], "ν")?;
        let mut flags = ParamFlags::default();
        for f in l.fields[3].split(',').map(str::trim).filter(|f| !f.is_empty() && *f != "-") {
            match f {
                "unitary" => flags.unitary = true,
                "fs" => flags.fully_supported = true,
                other => return Err(l.err(format!("unknown flag {other:?}"))),
            }
        }
        out.push(AtlasParameter { x, lambda, nu, flags, line: l.no });
    }
    Ok(out)
}

pub fn parse_branching(text: &str, file: &str) -> Result<Vec<BranchingRecord>> {
    let mut out = Vec::new();
    for l in lines(text, file) {
        l.expect_fields(3)?;
        let mult = l.int(l.fields[0], "multiplicity")?;
        let ktype = KType::new(l.ints(l.fields[1], "K-type")?).map_err(|e| l.err(e.to_string()))?;
        let height = l.int(l.fields[2], "height")?;
        out.push(BranchingRecord { mult, ktype, height });
    }
    Ok(out)
}

pub fn parse_table(text: &str, file: &str) -> Result<Vec<TableRow>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for l in lines(text, file) {
        l.expect_fields(7)?;
        let table_id = l.fields[0].to_string();
        let digits: Vec<i64> = table_id
            .chars()
            .map(|c| c.to_digit(10).map(i64::from))
            .collect::<Option<Vec<_>>>()
            .filter(|d| d.len() == RANK)
            .ok_or_else(|| l.err(format!("table id {table_id:?} is not {RANK} digits")))?;
        let inf_char = InfChar::from_ints(digits.try_into().unwrap());
        let x: u64 = l.int(l.fields[1], "KGB id")?;
        let x_prime = match l.fields[2] {
            "-" => None,
            s => Some(l.int(s, "KGB id")?),
        };
        for id in std::iter::once(x).chain(x_prime) {
            if !seen.insert(id) {
                return Err(l.err(format!("duplicate KGB id {id}")));
            }
        }
        let lambda = l.ints(l.fields[3], "λ")?;
        let nu = l.rationals(l.fields[4], "ν")?;
        let mut spin_lkts = Vec::new();
        let mut lkt_flags = Vec::new();
        for t in l.fields[5].split(';').map(str::trim) {
            let (flag, body) = match t.strip_prefix("LKT:") {
                Some(b) => (true, b),
                None => (false, t),
            };
            spin_lkts.push(KType(l.ints(body, "spin LKT")?));
            lkt_flags.push(flag);
        }
        let unipotent = match l.fields[6] {
            "0" => false,
            "1" => true,
            s => return Err(l.err(format!("unipotent flag must be 0 or 1, got {s:?}"))),
        };
        out.push(TableRow { table_id, x, x_prime, lambda, nu, spin_lkts, lkt_flags, inf_char, unipotent, line: l.no });
    }
    Ok(out)
}

/// Besides `<S> | <N(S)>` lines this accepts `card=<i> | <N_i>`, for the
/// cardinalities where only the total is known.
pub fn parse_dirac_counts(text: &str, file: &str) -> Result<DiracCounts> {
    let mut out = DiracCounts::default();
    for l in lines(text, file) {
        l.expect_fields(2)?;
        let n: u64 = l.int(l.fields[1], "count")?;
        if let Some(c) = l.fields[0].strip_prefix("card=") {
            let c: usize = l.int(c, "cardinality")?;
            if c >= RANK {
                return Err(l.err(format!("cardinality {c} is not that of a proper subset")));
            }
            if out.by_card.insert(c, n).is_some() {
                return Err(l.err(format!("duplicate total for cardinality {c}")));
            }
            continue;
        }
        let s = l.subset(l.fields[0])?;
        if s.len() == RANK {
            return Err(l.err("S must be a proper subset"));
        }
        if out.by_subset.insert(s.clone(), n).is_some() {
            return Err(l.err(format!("duplicate subset {s:?}")));
        }
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    if !path.exists() {
        return Err(Error::FixtureMissing(path.to_path_buf()));
    }
    Ok(std::fs::read_to_string(path)?)
}

pub fn load(kind: FixtureKind, path: &Path) -> Result<Records> {
    let text = read(path)?;
    parse_fixture(kind, &text, &path.display().to_string())
}

pub fn load_kgb(path: &Path) -> Result<Vec<KgbRecord>> {
    parse_kgb(&read(path)?, &path.display().to_string())
}

pub fn load_params(path: &Path) -> Result<Vec<AtlasParameter>> {
    parse_params(&read(path)?, &path.display().to_string())
}

pub fn load_branching(path: &Path) -> Result<Vec<BranchingRecord>> {
    parse_branching(&read(path)?, &path.display().to_string())
}

pub fn load_table(path: &Path) -> Result<Vec<TableRow>> {
    parse_table(&read(path)?, &path.display().to_string())
}

pub fn load_dirac_counts(path: &Path) -> Result<DiracCounts> {
    parse_dirac_counts(&read(path)?, &path.display().to_string())
}

fn apply(theta: &Matrix, v: &[Rational; RANK]) -> [Rational; RANK] {
    std::array::from_fn(|i| (0..RANK).map(|j| &v[j] * int(theta[i][j])).sum())
}

/// `ν = (Λ − θΛ)/2`.
pub fn nu_from_involution(lambda: &InfChar, theta: &KgbRecord) -> [Rational; RANK] {
    let t = apply(&theta.theta, &lambda.0);
    std::array::from_fn(|i| (&lambda.0[i] - &t[i]) * rat(1, 2))
}

pub fn norm_sq_nu(e: &Engine, nu: &[Rational; RANK]) -> Rational {
    e.lat.norm2_rational(nu)
}

/// `½(1 + θ)λ + ν`.
pub fn infinitesimal_char(p: &AtlasParameter, theta: &KgbRecord) -> Result<InfChar> {
    if p.x != theta.id {
        return Err(Error::Domain(format!("parameter at x={} paired with KGB record {}", p.x, theta.id)));
    }
    let l = p.lambda.map(int);
    let t = apply(&theta.theta, &l);
    Ok(InfChar(std::array::from_fn(|i| (&l[i] + &t[i]) * rat(1, 2) + &p.nu[i])))
}

/// Φ and its split `Φ_1..` by largest coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCensus {
    /// Sorted.
    pub phi: Vec<Weight>,
    /// `parts[m]` holds the `Λ ∈ Φ` with largest coordinate `m`.
    pub parts: BTreeMap<i64, Vec<Weight>>,
}

impl PhiCensus {
    pub fn part_sizes(&self) -> BTreeMap<i64, usize> {
        self.parts.iter().map(|(m, v)| (*m, v.len())).collect()
    }
}

/// `M = (1 − θ)ᵀ · 2G · (1 − θ)`, so `‖(Λ − θΛ)/2‖² = ΛᵀMΛ / 8`.
///
/// For dominant `Λ, Λ'` the form is `4(Λ, Λ' − θΛ')`, a pairing of a dominant
/// weight with a sum of positive roots, hence nonnegative. So every entry is
/// `≥ 0` and the form only grows as coordinates increase, which is what makes
/// the prefix bound in [`enumerate_phi`] valid.
fn nu_form(gram2: &Matrix, theta: &Matrix) -> Matrix {
    let a: Matrix = std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as i64 - theta[i][j]));
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..RANK).map(|p| (0..RANK).map(|q| a[p][i] * gram2[p][q] * a[q][j]).sum::<i64>()).sum())
    })
}

struct PhiSearch<'a> {
    forms: &'a [Matrix],
    cap: i64,
}

impl PhiSearch<'_> {
    /// `ΛᵀMΛ` on the prefix `cur[..=k]` (later coordinates zero), updated from
    /// the value on `cur[..k]`.
    fn extend(&self, t: usize, cur: &Weight, k: usize, base: i64) -> i64 {
        let m = &self.forms[t];
        let v = cur[k];
        let cross: i64 = (0..k).map(|i| m[i][k] * cur[i]).sum();
        base + 2 * v * cross + v * v * m[k][k]
    }

    fn dfs(&self, alive: &[(usize, i64)], k: usize, cur: &mut Weight, out: &mut Vec<Weight>) -> Result<()> {
        if k == RANK {
            if hp_admissible_min_zero(cur) {
                out.push(*cur);
            }
            return Ok(());
        }
        cur[k] = 0;
        loop {
            let next: Vec<(usize, i64)> = alive
                .iter()
                .map(|&(t, base)| (t, self.extend(t, cur, k, base)))
                .filter(|&(_, q)| q < PHI_BOUND8)
                .collect();
            if next.is_empty() {
                break;
            }
            if cur[k] >= self.cap {
                return Err(Error::ActiveCap { cap: self.cap, at: format!("{:?}", &cur[..=k]) });
            }
            self.dfs(&next, k + 1, cur, out)?;
            cur[k] += 1;
        }
        cur[k] = 0;
        Ok(())
    }
}

fn hp_admissible_min_zero(w: &Weight) -> bool {
    w.contains(&0) && crate::screening::hp_admissible_weight(w)
}

/// All `Λ` (ζ-coordinates) that are admissible, have a zero coordinate, and
/// satisfy `‖(Λ − θΛ)/2‖² < 94` for at least one fully supported record.
///
/// Coordinates are searched up to `coord_cap`; if the search is still alive
/// there the result would be incomplete and [`Error::ActiveCap`] is returned.
pub fn enumerate_phi(e: &Engine, involutions: &[KgbRecord], coord_cap: i64) -> Result<PhiCensus> {
    let forms: Vec<Matrix> =
        involutions.iter().filter(|r| r.fully_supported()).map(|r| nu_form(&e.lat.gram2, &r.theta)).collect();
    if forms.is_empty() {
        return Err(Error::Domain("no fully supported involutions".into()));
    }
    if coord_cap <= 0 {
        return Err(Error::Domain(format!("coordinate cap must be positive, got {coord_cap}")));
    }
    let search = PhiSearch { forms: &forms, cap: coord_cap };
    let alive: Vec<(usize, i64)> = (0..forms.len()).map(|t| (t, 0)).collect();
    // split on the first coordinate; each branch carries its own prefix
    let chunks: Vec<Vec<Weight>> = (0..=coord_cap)
        .into_par_iter()
        .map(|a| {
            let mut cur = [0; RANK];
            cur[0] = a;
            let next: Vec<(usize, i64)> = alive
                .iter()
                .map(|&(t, _)| (t, search.extend(t, &cur, 0, 0)))
                .filter(|&(_, q)| q < PHI_BOUND8)
                .collect();
            if next.is_empty() {
                return Ok(Vec::new());
            }
            if a == coord_cap {
                return Err(Error::ActiveCap { cap: coord_cap, at: format!("[{a}]") });
            }
            let mut out = Vec::new();
            search.dfs(&next, 1, &mut cur, &mut out)?;
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut phi: Vec<Weight> = chunks.into_iter().flatten().collect();
    phi.sort_unstable();
    let mut parts: BTreeMap<i64, Vec<Weight>> = BTreeMap::new();
    for w in &phi {
        parts.entry(*w.iter().max().unwrap()).or_default().push(*w);
    }
    Ok(PhiCensus { phi, parts })
}

/// Records built from the derived involutions, ids in list order, support
/// read off a reduced word of θ.
pub fn records_from_involutions(e: &Engine, thetas: &[Matrix]) -> Vec<KgbRecord> {
    thetas
        .iter()
        .enumerate()
        .map(|(id, t)| KgbRecord { id: id as u64, support: word_of_matrix(&e.lat, t).support(), theta: *t })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HjCounts {
    pub total: usize,
    pub fully_supported: usize,
    /// Fully supported with `‖ν‖² ≤ ‖ρ‖²`.
    pub old_bound: usize,
    /// Fully supported with `‖ν‖² < 94`.
    pub new_bound: usize,
}

/// Counts parameters at one infinitesimal character. Support comes from the
/// KGB record when there is one, otherwise from the parameter's flag.
pub fn hj_filter(e: &Engine, params: &[AtlasParameter], kgb: &BTreeMap<u64, KgbRecord>) -> HjCounts {
    let rho_sq = e.lat.norm2(&e.lat.rho);
    let mut c = HjCounts { total: params.len(), ..HjCounts::default() };
    for p in params {
        let fs = kgb.get(&p.x).map_or(p.flags.fully_supported, KgbRecord::fully_supported);
        if !fs {
            continue;
        }
        c.fully_supported += 1;
        let n = norm_sq_nu(e, &p.nu);
        if n <= rho_sq {
            c.old_bound += 1;
        }
        if n < int(94) {
            c.new_bound += 1;
        }
    }
    c
}

/// Parameters whose support flag disagrees with the KGB record, or whose `ν`
/// is not `(Λ − θΛ)/2`.
pub fn check_params(params: &[AtlasParameter], kgb: &BTreeMap<u64, KgbRecord>) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for p in params {
        let Some(r) = kgb.get(&p.x) else {
            bad.push(format!("x={}: no KGB record", p.x));
            continue;
        };
        if r.fully_supported() != p.flags.fully_supported {
            bad.push(format!("x={}: support flag disagrees with KGB record", p.x));
        }
        let lam = infinitesimal_char(p, r)?;
        if nu_from_involution(&lam, r) != p.nu {
            bad.push(format!("x={}: ν is not (Λ − θΛ)/2", p.x));
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReport {
    pub x: u64,
    pub failures: Vec<String>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "x={}: ok", self.x)
        } else {
            write!(f, "x={}: {}", self.x, self.failures.join("; "))
        }
    }
}

/// Recomputes what a table row claims:
/// each spin LKT is a K-type; its spin norm is `‖Λ‖²`; each of its PRV
/// components `{μ − ρ_n^(j)} + ρ_c` is `W(g)`-conjugate to `Λ`; and `Λ` is
/// dominant and admissible. Given the row's KGB record it also checks that
/// `½(1+θ)λ + ν = Λ` and `ν = (Λ − θΛ)/2`.
pub fn verify_table_row(e: &Engine, row: &TableRow, kgb: Option<&KgbRecord>) -> RowReport {
    let mut failures = Vec::new();
    let lam_sq = norms::infchar_norm_sq(e, &row.inf_char);
    let lam_w = row.inf_char.as_weight();
    if row.spin_lkts.is_empty() {
        failures.push("no spin LKTs".into());
    }
    for mu in &row.spin_lkts {
        match is_k_type(&mu.0) {
            Ok(true) => {}
            _ => {
                failures.push(format!("{mu} is not a K-type"));
                continue;
            }
        }
        let sd = spin_datum(e, mu);
        if sd.spin_norm_sq != lam_sq {
            failures.push(format!("{mu}: spin norm² {} ≠ ‖Λ‖² {}", fmt_rational(&sd.spin_norm_sq), fmt_rational(&lam_sq)));
        }
        if let Some(lw) = lam_w {
            let dom = g_dominant(e, &lw);
            let rc = e.rho_c();
            for (j, prv) in sd.achieving_chambers.iter().zip(&sd.prv_weights) {
                let z = e.lat.from_varpi(prv).expect("PRV weight is a lattice weight");
                let shifted: Weight = std::array::from_fn(|k| z[k] + rc[k]);
                if g_dominant(e, &shifted) != dom {
                    failures.push(format!("{mu}: PRV component in chamber {j} is not W(g)·Λ"));
                }
            }
        }
    }
    let dominant = row.inf_char.0.iter().all(|x| !x.is_negative());
    if !dominant || !hp_admissible(&row.inf_char) {
        failures.push(format!("{} is not dominant and admissible", row.inf_char));
    }
    let mut uniq = BTreeSet::new();
    for mu in &row.spin_lkts {
        if !uniq.insert(*mu) {
            failures.push(format!("{mu} listed twice"));
        }
    }
    if let Some(r) = kgb {
        let p = AtlasParameter { x: row.x, lambda: row.lambda, nu: row.nu.clone(), flags: ParamFlags::default(), line: row.line };
        match infinitesimal_char(&p, r) {
            Ok(ic) if ic == row.inf_char => {}
            Ok(ic) => failures.push(format!("½(1+θ)λ + ν = {ic} ≠ {}", row.inf_char)),
            Err(err) => failures.push(err.to_string()),
        }
        if nu_from_involution(&row.inf_char, r) != row.nu {
            failures.push("ν ≠ (Λ − θΛ)/2".into());
        }
        if !r.fully_supported() {
            failures.push("KGB element is not fully supported".into());
        }
    }
    RowReport { x: row.x, failures }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringCounts {
    pub n_of_s: BTreeMap<Vec<usize>, u64>,
    /// `N_0..N_6`.
    pub n: [u64; RANK],
    pub total: u64,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `N_i = Σ_{#S=i} N(S)` and the total. A cardinality is taken from the
/// individual subsets when all of them are present, from its `card=` total
/// otherwise; when both are present they must agree.
pub fn count_strings(c: &DiracCounts) -> Result<StringCounts> {
    let mut n = [0u64; RANK];
    for (i, slot) in n.iter_mut().enumerate() {
        let subsets: Vec<u64> = c.by_subset.iter().filter(|(s, _)| s.len() == i).map(|(_, v)| *v).collect();
        let complete = subsets.len() == binomial(RANK, i);
        let sum: u64 = subsets.iter().sum();
        *slot = match (complete, c.by_card.get(&i)) {
            (true, Some(&t)) if t != sum => {
                return Err(Error::Domain(format!("N_{i}: subsets sum to {sum} but the total says {t}")))
            }
            (true, _) => sum,
            (false, Some(&t)) => t,
            (false, None) => {
                return Err(Error::Domain(format!(
                    "missing subsets of size {i}: have {} of {}",
                    subsets.len(),
                    binomial(RANK, i)
                )))
            }
        };
    }
    Ok(StringCounts { n_of_s: c.by_subset.clone(), n, total: n.iter().sum() })
}

pub fn nu_is_zero(nu: &[Rational; RANK]) -> bool {
    nu.iter().all(Zero::is_zero)
}

/// One line of a kgb fixture.
pub fn format_kgb_record(r: &KgbRecord) -> String {
    let support = if r.fully_supported() {
        "full".to_string()
    } else if r.support.is_empty() {
        "empty".to_string()
    } else {
        r.support.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    };
    let rows: Vec<String> =
        r.theta.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
    format!("{} | {} | {}", r.id, support, rows.join(";"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::fully_supported_involutions;

    fn e() -> &'static Engine {
        Engine::shared()
    }

    fn theta_for(e: &Engine, lam: Weight, lambda: Weight, nu2: Weight) -> Matrix {
        // θΛ = Λ − 2ν and θλ = 2Λ − 2ν − λ
        let want_a: Weight = std::array::from_fn(|i| lam[i] - nu2[i]);
        let want_b: Weight = std::array::from_fn(|i| 2 * lam[i] - nu2[i] - lambda[i]);
        *fully_supported_involutions(&e.lat)
            .iter()
            .find(|m| crate::weyl::mat_vec(m, &lam) == want_a && crate::weyl::mat_vec(m, &lambda) == want_b)
            .expect("some involution fits")
    }

    #[test]
    fn kgb_line_parses() {
        let e = e();
        let t = theta_for(e, [1; RANK], [1; RANK], [8, 0, 0, 0, 0, 8, 2]);
        let r = KgbRecord { id: 3016, support: (0..RANK).collect(), theta: t };
        let line = format_kgb_record(&r).replace("full", "0,1,2,3,4,5,6");
        let parsed = parse_kgb(&line, "t").unwrap();
        assert_eq!(parsed, vec![r]);
        assert!(parsed[0].fully_supported());
    }

    #[test]
    fn kgb_errors() {
        let id = identity_matrix();
        let rows: Vec<String> = id.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        let truncated = format!("1 | full | {}", rows[..6].join(";"));
        match parse_kgb(&format!("# c\n\n{truncated}"), "f.kgb") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let short_row = format!("1 | full | {};1,0", rows[..6].join(";"));
        assert!(parse_kgb(&short_row, "f").is_err());
        let ok = format!("1 | empty | {}", rows.join(";"));
        assert!(parse_kgb(&format!("{ok}\n{ok}"), "f").unwrap_err().to_string().contains("duplicate"));
        let mut bad = id;
        bad[0][1] = 1;
        let rows: Vec<String> = bad.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        assert!(parse_kgb(&format!("2 | full | {}", rows.join(";")), "f").unwrap_err().to_string().contains("record 2"));
    }

    #[test]
    fn params_and_infinitesimal_character() {
        let e = e();
        let ps = parse_params("3016 | 1,1,1,1,1,1,1 | 4,0,0,0,0,4,1 | unitary,fs", "p").unwrap();
        let p = &ps[0];
        assert!(p.flags.unitary && p.flags.fully_supported);
        let r = KgbRecord { id: 3016, support: (0..RANK).collect(), theta: theta_for(e, [1; RANK], [1; RANK], [8, 0, 0, 0, 0, 8, 2]) };
        assert_eq!(infinitesimal_char(p, &r).unwrap(), InfChar::from_ints([1; RANK]));
        assert_eq!(norm_sq_nu(e, &p.nu), rat(371, 2));
        assert_eq!(nu_from_involution(&InfChar::from_ints([1; RANK]), &r), p.nu);
        let wrong = KgbRecord { id: 1, ..r };
        assert!(infinitesimal_char(p, &wrong).is_err());
        let zero = AtlasParameter { x: 1, lambda: [0; RANK], nu: [0; RANK].map(int), flags: ParamFlags::default(), line: 0 };
        assert_eq!(infinitesimal_char(&zero, &wrong).unwrap(), InfChar::from_ints([0; RANK]));
    }

    #[test]
    fn identity_involution_has_zero_nu() {
        let r = KgbRecord { id: 0, support: vec![], theta: identity_matrix() };
        assert!(nu_is_zero(&nu_from_involution(&InfChar::from_ints([3, 1, 4, 1, 5, 9, 2]), &r)));
    }

    #[test]
    fn minimal_representation_nu() {
        let e = e();
        let lam = [1, 1, 1, 0, 1, 1, 1];
        let t = theta_for(e, lam, [3, 2, 2, -1, 1, 1, 2], [8, 5, 5, -5, 0, 0, 5]);
        let r = KgbRecord { id: 2989, support: (0..RANK).collect(), theta: t };
        let nu = nu_from_involution(&InfChar::from_ints(lam), &r);
        assert_eq!(norm_sq_nu(e, &nu), int(97));
    }

    #[test]
    fn empty_hj_fixture() {
        assert_eq!(hj_filter(e(), &[], &BTreeMap::new()), HjCounts::default());
    }

    #[test]
    fn table_row_checks() {
        let e = e();
        let line = "1011010 | 2950 | 2949 | 1,0,1,1,0,4,0 | 0,0,0,0,0,4,0 | 0,0,0,0,0,1,25; 4,0,0,0,0,1,9; 0,0,0,0,0,5,-7 | 1";
        let row = &parse_table(line, "t").unwrap()[0];
        assert_eq!(row.multiplicity(), 2);
        assert!(verify_table_row(e, row, None).passed());
        let mut bent = row.clone();
        bent.spin_lkts[1] = KType([4, 0, 0, 0, 0, 1, 12]);
        let rep = verify_table_row(e, &bent, None);
        assert!(rep.failures.iter().any(|f| f.contains("spin norm")), "{rep}");
    }

    #[test]
    fn strings_need_every_cardinality() {
        let c = parse_dirac_counts("empty | 56\ncard=1 | 84", "c").unwrap();
        assert!(count_strings(&c).is_err());
        let full = "empty | 56\ncard=1 | 84\ncard=2 | 102\ncard=3 | 133\ncard=4 | 164\ncard=5 | 181\n\
            0,1,2,4,5,6 | 0\n0,1,2,3,5,6 | 4\n0,1,3,4,5,6 | 2\n0,1,2,3,4,6 | 6\n0,2,3,4,5,6 | 34\n1,2,3,4,5,6 | 50\n0,1,2,3,4,5 | 62";
        let s = count_strings(&parse_dirac_counts(full, "c").unwrap()).unwrap();
        assert_eq!(s.n, [56, 84, 102, 133, 164, 181, 158]);
        assert_eq!(s.total, 878);
        assert!(parse_dirac_counts("full | 3", "c").is_err());
        assert!(parse_dirac_counts("0,1 | 3\n1,0 | 4", "c").is_err());
        let clash = format!("{full}\ncard=6 | 157");
        assert!(count_strings(&parse_dirac_counts(&clash, "c").unwrap()).is_err());
    }
}
