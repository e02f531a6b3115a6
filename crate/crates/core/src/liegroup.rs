//! Numeric model of `SU(2) x T^n` and of the conjugating homeomorphisms.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// Unit quaternion `w + x i + y j + z k`, identified with the matrix
/// `[[α, β], [-conj β, conj α]]` where `α = w + x i`, `β = y + z i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SU2Element {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SU2Element {
    pub const IDENTITY: SU2Element = SU2Element {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Normalizes `(w, x, y, z)`.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::InvalidArgument(
                "quaternion must be finite and nonzero".into(),
            ));
        }
        Ok(SU2Element {
            w: w / n,
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    /// `diag(e^{2πiψ}, e^{-2πiψ})`.
    pub fn diagonal(psi: f64) -> Self {
        let (s, c) = (TAU * psi).sin_cos();
        SU2Element {
            w: c,
            x: s,
            y: 0.0,
            z: 0.0,
        }
    }

    /// The matrix entries `(z_1, z_2)` of the first column, as `(re, im)` pairs.
    pub fn first_column(&self) -> ((f64, f64), (f64, f64)) {
        ((self.w, self.x), (-self.y, self.z))
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    fn renormalized(self) -> Self {
        let n = self.norm();
        SU2Element {
            w: self.w / n,
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        SU2Element {
            w: self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            x: self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            y: self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            z: self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        }
        .renormalized()
    }

    pub fn inverse(&self) -> Self {
        SU2Element {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Entrywise complex conjugate of the matrix.
    pub fn conj_entries(&self) -> Self {
        SU2Element {
            w: self.w,
            x: -self.x,
            y: self.y,
            z: -self.z,
        }
    }

    /// Euclidean distance in `R^4`.
    pub fn distance(&self, o: &Self) -> f64 {
        let d = [self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl Default for SU2Element {
    fn default() -> Self {
        Self::IDENTITY
    }
}

fn wrap(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// A point `(z, φ_1, ..., φ_n)` of `SU(2) x T^n`, angles in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupPoint {
    pub su2: SU2Element,
    pub angles: Vec<f64>,
}

impl GroupPoint {
    pub fn new(su2: SU2Element, angles: Vec<f64>) -> Self {
        GroupPoint {
            su2,
            angles: angles.into_iter().map(wrap).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        GroupPoint {
            su2: SU2Element::IDENTITY,
            angles: vec![0.0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    fn check_dim(&self, o: &Self) -> Result<()> {
        if self.dim() != o.dim() {
            return Err(Error::DimensionMismatch(format!(
                "torus factors of dimension {} and {}",
                self.dim(),
                o.dim()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        Ok(GroupPoint {
            su2: self.su2.mul(&o.su2),
            angles: self
                .angles
                .iter()
                .zip(&o.angles)
                .map(|(a, b)| wrap(a + b))
                .collect(),
        })
    }

    /// `L_g(x) = g x`.
    pub fn left_action(&self, x: &Self) -> Result<Self> {
        self.multiply(x)
    }

    pub fn inverse(&self) -> Self {
        GroupPoint {
            su2: self.su2.inverse(),
            angles: self.angles.iter().map(|a| wrap(-a)).collect(),
        }
    }

    /// `max(|z - z′|, max_i d_circle(φ_i, φ′_i))`.
    pub fn distance(&self, o: &Self) -> Result<f64> {
        self.check_dim(o)?;
        Ok(self
            .angles
            .iter()
            .zip(&o.angles)
            .map(|(a, b)| circle_distance(*a, *b))
            .fold(self.su2.distance(&o.su2), f64::max))
    }
}

/// The maximal-torus element with `SU(2)` phase `θ_0 + θ_1 + ... + θ_n` and torus
/// angles `(θ_1, ..., θ_n)`.
pub fn torus_embed(theta: &[f64]) -> Result<GroupPoint> {
    let (first, rest) = theta
        .split_first()
        .ok_or(Error::Empty("torus_embed needs at least θ_0"))?;
    if theta.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument("angles must be finite".into()));
    }
    let psi = first + rest.iter().sum::<f64>();
    Ok(GroupPoint::new(SU2Element::diagonal(psi), rest.to_vec()))
}

/// Rotation taking unit vector `u` to `e_x` under `v -> s v s^-1`, for `u_x >= 0`.
fn align_to_x(u: [f64; 3]) -> SU2Element {
    // axis u x e_x = (0, u_z, -u_y), half-angle quaternion (1 + u.e_x, u x e_x)
    SU2Element::new(1.0 + u[0], 0.0, u[2], -u[1]).expect("u_x >= 0")
}

const J: SU2Element = SU2Element {
    w: 0.0,
    x: 0.0,
    y: 1.0,
    z: 0.0,
};

/// `(θ, s)` with `s g s^-1 = torus_embed(θ)` and `θ`'s eigenphase in `[0, 1/2]`.
pub fn to_torus_representative(g: &GroupPoint) -> (Vec<f64>, GroupPoint) {
    let q = g.su2;
    let v = [q.x, q.y, q.z];
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let psi = r.atan2(q.w) / TAU;
    let s = if r < 1e-300 {
        SU2Element::IDENTITY
    } else {
        let u = [v[0] / r, v[1] / r, v[2] / r];
        if u[0] >= 0.0 {
            align_to_x(u)
        } else {
            // j flips the x and z components
            align_to_x([-u[0], u[1], -u[2]]).mul(&J)
        }
    };
    let mut theta = Vec::with_capacity(g.dim() + 1);
    theta.push(wrap(psi - g.angles.iter().sum::<f64>()));
    theta.extend_from_slice(&g.angles);
    (theta, GroupPoint::new(s, vec![0.0; g.dim()]))
}

/// `F^N(x_0) / N` for the translation lift `F(x) = x + θ`.
pub fn estimate_rotation_vector(theta: &[f64], x0: &[f64], steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if theta.len() != x0.len() {
        return Err(Error::DimensionMismatch(format!(
            "θ of length {} with start point of length {}",
            theta.len(),
            x0.len()
        )));
    }
    let mut x = x0.to_vec();
    for _ in 0..steps {
        for (xi, t) in x.iter_mut().zip(theta) {
            *xi += t;
        }
    }
    Ok(x.into_iter().map(|xi| xi / steps as f64).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapKind {
    /// Orientation of the `SU(2)` entries kept.
    H1,
    /// `SU(2)` entries complex-conjugated.
    H2,
}

/// `h(z, φ) = (diag(e^{2πiτφ}, e^{-2πiτφ}) κ(z), A φ)` with `κ` the entrywise
/// conjugation for `H2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyMap {
    pub kind: MapKind,
    pub sign: i32,
    pub ell: Vec<BigInt>,
    pub a: IntMatrix,
    pub a_inv: IntMatrix,
    /// Phase row `τ = ℓ - s 1 + 1 A` placed in front of `φ`; it absorbs the
    /// torus angles carried by the `SU(2)` phase of a torus element.
    pub twist: Vec<BigInt>,
}

fn to_f64_matrix(m: &IntMatrix) -> Result<Vec<Vec<f64>>> {
    m.to_rows()
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    x.to_f64()
                        .filter(|v| v.abs() < 9.0e15)
                        .ok_or_else(|| Error::InvalidArgument(format!("entry {x} too large")))
                })
                .collect()
        })
        .collect()
}

fn dot_mod1(row: &[BigInt], phi: &[f64]) -> f64 {
    row.iter()
        .zip(phi)
        .map(|(c, p)| wrap(c.to_f64().unwrap_or(0.0) * p))
        .sum()
}

pub fn build_conjugacy_map(sign: i32, ell: &[BigInt], a: &IntMatrix) -> Result<ConjugacyMap> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if ell.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "ell of length {} with {}x{} matrix",
            ell.len(),
            n,
            n
        )));
    }
    let kind = match sign {
        1 => MapKind::H1,
        -1 => MapKind::H2,
        _ => return Err(Error::InvalidArgument(format!("sign must be ±1, got {sign}"))),
    };
    let a_inv = a.inverse_unimodular()?;
    to_f64_matrix(a)?;
    to_f64_matrix(&a_inv)?;
    let s = BigInt::from(sign);
    let twist = (0..n)
        .map(|j| &ell[j] - &s + (0..n).map(|i| &a[(i, j)]).sum::<BigInt>())
        .collect();
    Ok(ConjugacyMap {
        kind,
        sign,
        ell: ell.to_vec(),
        a: a.clone(),
        a_inv,
        twist,
    })
}

impl ConjugacyMap {
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    fn orient(&self, z: &SU2Element) -> SU2Element {
        match self.kind {
            MapKind::H1 => *z,
            MapKind::H2 => z.conj_entries(),
        }
    }

    fn torus_part(m: &IntMatrix, phi: &[f64]) -> Vec<f64> {
        (0..m.rows()).map(|i| wrap(dot_mod1(m.row(i), phi))).collect()
    }

    pub fn evaluate(&self, p: &GroupPoint) -> Result<GroupPoint> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map on T^{} applied to a point of T^{}",
                self.dim(),
                p.dim()
            )));
        }
        let phase = SU2Element::diagonal(dot_mod1(&self.twist, &p.angles));
        Ok(GroupPoint {
            su2: phase.mul(&self.orient(&p.su2)),
            angles: Self::torus_part(&self.a, &p.angles),
        })
    }

    pub fn evaluate_inverse(&self, p: &GroupPoint) -> Result<GroupPoint> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map on T^{} applied to a point of T^{}",
                self.dim(),
                p.dim()
            )));
        }
        let angles = Self::torus_part(&self.a_inv, &p.angles);
        let phase = SU2Element::diagonal(-dot_mod1(&self.twist, &angles));
        Ok(GroupPoint {
            su2: self.orient(&phase.mul(&p.su2)),
            angles,
        })
    }
}

/// Uniform random unit quaternion.
pub fn random_su2<R: Rng>(rng: &mut R) -> SU2Element {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n2: f64 = q.iter().map(|v| v * v).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            return SU2Element::new(q[0], q[1], q[2], q[3]).expect("nonzero");
        }
    }
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> GroupPoint {
    let su2 = random_su2(rng);
    GroupPoint::new(su2, (0..n).map(|_| rng.random::<f64>()).collect())
}

/// `max_x d(h(g x), g′ h(x))` over `samples` seeded random points.
pub fn verify_conjugacy_numeric(
    map: &ConjugacyMap,
    g: &GroupPoint,
    g2: &GroupPoint,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let x = random_point(&mut rng, map.dim());
        let lhs = map.evaluate(&g.left_action(&x)?)?;
        let rhs = g2.left_action(&map.evaluate(&x)?)?;
        worst = worst.max(lhs.distance(&rhs)?);
    }
    Ok(worst)
}
