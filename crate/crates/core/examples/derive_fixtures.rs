//! Regenerates the derived fixtures from the root datum and the transcribed
//! tables:
//!
//! * `fs_involutions.kgb`: the fully supported Cayley involutions, with
//!   sequential ids.
//! * `table.kgb` / `table.params`: for every table entry (and the trivial
//!   representation) the involution θ with `θΛ = Λ − 2ν` and
//!   `θλ = 2Λ − 2ν − λ`, keyed by the KGB number printed in the table.
//!
//! Usage: `cargo run -p dirac-core --example derive_fixtures -- fixtures`

use std::fmt::Write as _;
use std::path::PathBuf;

use dirac_core::atlas::{self, format_kgb_record, KgbRecord, Matrix};
use dirac_core::rational::{fmt_rational, int, Rational};
use dirac_core::structure::{Weight, RANK};
use dirac_core::weyl::{fully_supported_involutions, mat_vec};
use dirac_core::Engine;

fn main() -> dirac_core::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    let e = Engine::shared();
    let thetas = fully_supported_involutions(&e.lat);

    let mut out = String::from(
        "# Fully supported Cayley involutions: the W-conjugates of s_β1, s_β1 s_β2 and\n\
         # s_β1 s_β2 s_β3 (β_i strongly orthogonal noncompact) whose reduced words\n\
         # use every simple reflection. Ids are sequential, not atlas KGB numbers.\n\
         # id | support | θ on ζ-coordinates, rows ';'-separated\n",
    );
    for r in atlas::records_from_involutions(e, &thetas) {
        writeln!(out, "{}", format_kgb_record(&r)).unwrap();
    }
    std::fs::write(dir.join(atlas::KGB_FILE), out)?;

    let rows = atlas::load_table(&dir.join(atlas::TABLE_FILE))?;
    let mut entries: Vec<(u64, Weight, Weight, [Rational; RANK])> = vec![(3016, [1; RANK], [1; RANK], [4, 0, 0, 0, 0, 4, 1].map(int))];
    for row in &rows {
        let lam = row.inf_char.as_weight().expect("integral table id");
        for x in std::iter::once(row.x).chain(row.x_prime) {
            entries.push((x, lam, row.lambda, row.nu.clone()));
        }
    }
    let mut kgb = String::from(
        "# Involutions of the KGB elements in the tables, recovered from (Λ, λ, ν).\n\
         # id | support | θ on ζ-coordinates\n",
    );
    let mut params = String::from("# x | lambda | nu | flags\n");
    for (x, lam, lambda, nu) in &entries {
        let two_nu: Weight = std::array::from_fn(|i| dirac_core::rational::to_i64(&(&nu[i] * int(2))).expect("ν ∈ ½ℤ"));
        let want_a: Weight = std::array::from_fn(|i| lam[i] - two_nu[i]);
        let want_b: Weight = std::array::from_fn(|i| 2 * lam[i] - two_nu[i] - lambda[i]);
        let theta: Matrix = *thetas
            .iter()
            .find(|m| mat_vec(m, lam) == want_a && mat_vec(m, lambda) == want_b)
            .unwrap_or_else(|| panic!("no involution fits x={x}"));
        let r = KgbRecord { id: *x, support: (0..RANK).collect(), theta };
        writeln!(kgb, "{}", format_kgb_record(&r)).unwrap();
        let l: Vec<String> = lambda.iter().map(i64::to_string).collect();
        let n: Vec<String> = nu.iter().map(fmt_rational).collect();
        writeln!(params, "{x} | {} | {} | unitary,fs", l.join(","), n.join(",")).unwrap();
    }
    std::fs::write(dir.join(atlas::TABLE_KGB_FILE), kgb)?;
    std::fs::write(dir.join(atlas::TABLE_PARAMS_FILE), params)?;
    println!("{} involutions, {} table entries", thetas.len(), entries.len());
    Ok(())
}
