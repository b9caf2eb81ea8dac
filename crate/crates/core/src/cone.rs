//! Nearest-point projection onto the dominant cone, exactly.
//!
//! In ζ-basis coordinates the dominant cone is the nonnegative orthant and
//! the metric is `G = gram2 / 2`. For a face `S` the candidate is the
//! solution of `gram2_SS x_S = (gram2 η)_S`, computed with a precomputed
//! adjugate so that everything stays integral; the unique face meeting the
//! KKT sign conditions is accepted. All 128 faces are checked if needed.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{det_i64, int, invert, to_i64, Rational};
use crate::structure::{Weight, WeightLattice, RANK};

#[derive(Clone, Debug)]
struct Face {
    mask: u8,
    idx: Vec<usize>,
    rest: Vec<usize>,
    det: i128,
    /// `adj(gram2_SS)`, row-major.
    adj: Vec<Vec<i128>>,
}

/// Precomputed faces of the dominant cone.
#[derive(Clone, Debug)]
pub struct DominantCone {
    gram2: [[i64; RANK]; RANK],
    faces: Vec<Face>,
}

/// `num / den` in ζ-basis coordinates, `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub num: [i128; RANK],
    pub den: i128,
    /// Bitmask of the coordinates left free (the supporting face).
    pub face: u8,
}

impl Projection {
    pub fn coords(&self) -> [Rational; RANK] {
        self.num.map(|x| Rational::new(BigInt::from(x), BigInt::from(self.den)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }
}

impl DominantCone {
    pub fn new(lat: &WeightLattice) -> Result<Self> {
        let mut faces = Vec::with_capacity(1 << RANK);
        for mask in 0u8..(1 << RANK) {
            let idx: Vec<usize> = (0..RANK).filter(|i| mask >> i & 1 == 1).collect();
            let rest: Vec<usize> = (0..RANK).filter(|i| mask >> i & 1 == 0).collect();
            let sub: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| lat.gram2[i][j]).collect()).collect();
            let det = det_i64(&sub);
            if det <= 0 {
                return Err(Error::Internal("ζ-basis Gram matrix is not positive definite".into()));
            }
            let adj = if idx.is_empty() {
                Vec::new()
            } else {
                let q: Vec<Vec<Rational>> = sub.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
                let inv = invert(&q).ok_or_else(|| Error::Internal("singular face".into()))?;
                let dr = Rational::from_integer(BigInt::from(det));
                inv.iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| to_i64(&(x * &dr)).map(|v| v as i128).ok_or_else(|| Error::Internal("adjugate".into())))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            faces.push(Face { mask, idx, rest, det, adj });
        }
        Ok(DominantCone { gram2: lat.gram2, faces })
    }

    fn try_face(&self, f: &Face, y: &[i128; RANK]) -> Option<Projection> {
        let k = f.idx.len();
        let mut z = [0i128; RANK];
        for a in 0..k {
            let mut s = 0i128;
            for b in 0..k {
                s += f.adj[a][b] * y[f.idx[b]];
            }
            if s < 0 {
                return None;
            }
            z[a] = s;
        }
        for &i in &f.rest {
            let mut s = 0i128;
            for a in 0..k {
                s += self.gram2[i][f.idx[a]] as i128 * z[a];
            }
            if f.det * y[i] - s > 0 {
                return None;
            }
        }
        let mut num = [0i128; RANK];
        for a in 0..k {
            num[f.idx[a]] = z[a];
        }
        Some(Projection { num, den: f.det, face: f.mask })
    }

    /// Projection of an integral `η` onto the dominant cone.
    pub fn project(&self, eta: &Weight) -> Result<Projection> {
        let y: [i128; RANK] =
            std::array::from_fn(|i| (0..RANK).map(|j| self.gram2[i][j] as i128 * eta[j] as i128).sum());
        let guess = (0..RANK).filter(|&i| eta[i] > 0).fold(0u8, |m, i| m | 1 << i);
        if let Some(p) = self.try_face(&self.faces[guess as usize], &y) {
            return Ok(reduce(p));
        }
        for f in &self.faces {
            if let Some(p) = self.try_face(f, &y) {
                return Ok(reduce(p));
            }
        }
        Err(Error::Internal(format!("no face satisfies KKT for {eta:?}")))
    }

    /// Projection of a rational `η`, by scaling to integers (the projection is
    /// positively homogeneous).
    pub fn project_rational(&self, eta: &[Rational; RANK]) -> Result<[Rational; RANK]> {
        let mut l = BigInt::from(1);
        for x in eta {
            l = num_integer::Integer::lcm(&l, x.denom());
        }
        let lr = Rational::from_integer(l.clone());
        let scaled: Option<Weight> = std::array::from_fn::<_, RANK, _>(|i| to_i64(&(&eta[i] * &lr)))
            .into_iter()
            .collect::<Option<Vec<i64>>>()
            .map(|v| v.try_into().unwrap());
        let scaled = scaled.ok_or_else(|| Error::Domain("vector too large for projection".into()))?;
        let p = self.project(&scaled)?;
        Ok(p.coords().map(|x| x / &lr))
    }
}

fn reduce(mut p: Projection) -> Projection {
    let mut g = p.den;
    for x in p.num {
        g = num_integer::Integer::gcd(&g, &x);
    }
    if g > 1 {
        for x in p.num.iter_mut() {
            *x /= g;
        }
        p.den /= g;
    }
    p
}

/// `2‖x‖²` of a projection, as a rational.
pub fn norm2(lat: &WeightLattice, p: &Projection) -> Rational {
    let mut s = 0i128;
    for i in 0..RANK {
        if p.num[i] == 0 {
            continue;
        }
        for j in 0..RANK {
            s += p.num[i] * lat.gram2[i][j] as i128 * p.num[j];
        }
    }
    Rational::new(BigInt::from(s), BigInt::from(2 * p.den * p.den))
}

/// `⟨x, 2ρ⟩ = Σ_{α>0} ⟨x, α∨⟩`.
pub fn two_rho_pairing(lat: &WeightLattice, p: &Projection) -> Rational {
    let s: i128 = (0..RANK).map(|k| p.num[k] * lat.two_rho_coeffs[k] as i128).sum();
    Rational::new(BigInt::from(s), BigInt::from(p.den))
}

pub fn is_zero_vec(v: &[Rational; RANK]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::build_root_datum;
    use num_traits::Signed;

    fn lat() -> WeightLattice {
        WeightLattice::new(&build_root_datum().unwrap()).unwrap()
    }

    /// Textbook check of the variational inequality for a candidate point.
    fn is_projection(lat: &WeightLattice, eta: &[Rational; RANK], x: &[Rational; RANK]) -> bool {
        let r: [Rational; RANK] = std::array::from_fn(|i| &eta[i] - &x[i]);
        // root coordinates of the residual, doubled
        let rc: Vec<Rational> = (0..RANK).map(|i| (0..RANK).map(|j| &r[j] * int(lat.gram2[i][j])).sum()).collect();
        x.iter().all(|v| !v.is_negative())
            && rc.iter().all(|v| !v.is_positive())
            && (0..RANK).all(|i| (&x[i] * &rc[i]).is_zero())
    }

    #[test]
    fn fixes_the_cone_and_kills_the_polar() {
        let lat = lat();
        let c = DominantCone::new(&lat).unwrap();
        let p = c.project(&[1, 0, 2, 0, 0, 3, 1]).unwrap();
        assert_eq!(p.coords(), [1, 0, 2, 0, 0, 3, 1].map(int));
        assert!(c.project(&[-2, 1, 0, -1, 0, 0, 0]).is_ok());
        // −(simple root) pairs ≤ 0 with every ζ_i
        let neg: Weight = lat.cartan[3].map(|x| -x);
        assert!(c.project(&neg).unwrap().is_zero());
    }

    #[test]
    fn agrees_with_variational_inequality() {
        let lat = lat();
        let c = DominantCone::new(&lat).unwrap();
        for eta in [[-3, 5, -1, 2, -7, 1, 0], [4, -4, 4, -4, 4, -4, 4], [-1, -1, -1, -1, -1, -1, 9]] {
            let p = c.project(&eta).unwrap();
            assert!(is_projection(&lat, &eta.map(int), &p.coords()), "{eta:?}");
        }
    }
}
