use std::sync::OnceLock;

use crate::cone::DominantCone;
use crate::error::Result;
use crate::structure::{build_root_datum, RootDatum, Weight, WeightLattice, COMPACT_RANK, RANK};
use crate::weyl::{enumerate_chambers, Chamber};

/// Everything derived once from the root datum and shared read-only.
#[derive(Debug)]
pub struct Engine {
    pub datum: RootDatum,
    pub lat: WeightLattice,
    pub chambers: Vec<Chamber>,
    pub cone: DominantCone,
    /// `2ρ_n^(j)` in ϖ-basis coordinates: the K-dominant vertices of the
    /// u-small hull.
    pub hull_vertices: Vec<[i64; RANK]>,
    /// `γ_i` in ϖ-basis coordinates.
    pub gamma_varpi: [[i64; RANK]; COMPACT_RANK],
}

static SHARED: OnceLock<Engine> = OnceLock::new();

impl Engine {
    pub fn new() -> Result<Self> {
        let datum = build_root_datum()?;
        let lat = WeightLattice::new(&datum)?;
        let chambers = enumerate_chambers(&datum, &lat)?;
        let cone = DominantCone::new(&lat)?;
        let hull_vertices = chambers.iter().map(|c| lat.to_varpi(&c.rho_n_w).map(|x| 2 * x)).collect();
        let gamma_varpi = std::array::from_fn(|i| lat.to_varpi(&lat.cartan[i]));
        Ok(Engine { datum, lat, chambers, cone, hull_vertices, gamma_varpi })
    }

    /// Process-wide instance, built on first use.
    pub fn shared() -> &'static Engine {
        SHARED.get_or_init(|| Engine::new().expect("root datum construction"))
    }

    pub fn rho_c(&self) -> &Weight {
        &self.lat.rho_c
    }
}
