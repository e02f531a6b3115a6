//! Deciding topological conjugacy of left actions and producing certificates.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactreal::{common_denominator, same_table, ExactReal};
use crate::intlinalg::{mod_inverse, solve_integer, unimodular_complete, IntMatrix, RatMatrix};
use crate::rotation::RotationVector;

/// Integers `ell, N` with `target = Σ ell_i gens_i + N`, when they exist.
pub fn membership_zmod(
    target: &ExactReal,
    gens: &[ExactReal],
) -> Result<Option<(Vec<BigInt>, BigInt)>> {
    if gens.iter().any(|g| !same_table(g.table(), target.table())) {
        return Err(Error::MixedSymbolTables);
    }
    let coords: Vec<Vec<BigRational>> = gens.iter().map(ExactReal::coordinates).collect();
    let t = target.coordinates();
    let g = gens.len();
    let mut a = IntMatrix::zeros(t.len(), g + 1);
    let mut b = vec![BigInt::zero(); t.len()];
    for c in 0..t.len() {
        let row: Vec<&BigRational> = coords.iter().map(|x| &x[c]).chain([&t[c]]).collect();
        let l = BigRational::from_integer(common_denominator(row.iter().copied()));
        for (j, x) in coords.iter().enumerate() {
            a[(c, j)] = (&x[c] * &l).to_integer();
        }
        if c == 0 {
            a[(0, g)] = l.to_integer();
        }
        b[c] = (&t[c] * &l).to_integer();
    }
    Ok(solve_integer(&a, &b)?.map(|sol| {
        let mut x = sol.particular;
        let n = x.pop().expect("N unknown");
        (x, n)
    }))
}

/// `A ∈ GL_n(Z)` with `A ρ ≡ ρ′ (mod Z^n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCertificate {
    pub a: IntMatrix,
}

impl TorusCertificate {
    pub fn identity(n: usize) -> Self {
        TorusCertificate {
            a: IntMatrix::identity(n),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(TorusCertificate {
            a: self.a.inverse_unimodular()?,
        })
    }

    /// Certificate for `ρ -> ρ″` from `self: ρ -> ρ′` and `next: ρ′ -> ρ″`.
    pub fn compose(&self, next: &Self) -> Result<Self> {
        Ok(TorusCertificate {
            a: next.a.mul(&self.a)?,
        })
    }
}

/// `[[s, ℓ], [0, A]]` acting on `(θ_0, θ_1, ..., θ_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Su2Certificate {
    /// `+1` or `-1`.
    pub sign: i32,
    pub ell: Vec<BigInt>,
    pub a: IntMatrix,
}

impl Su2Certificate {
    pub fn identity(n: usize) -> Self {
        Su2Certificate {
            sign: 1,
            ell: vec![BigInt::zero(); n],
            a: IntMatrix::identity(n),
        }
    }

    pub fn block_matrix(&self) -> IntMatrix {
        let n = self.a.rows();
        let mut m = IntMatrix::zeros(n + 1, n + 1);
        m[(0, 0)] = BigInt::from(self.sign);
        for (j, l) in self.ell.iter().enumerate() {
            m[(0, j + 1)] = l.clone();
        }
        for i in 0..n {
            for j in 0..self.a.cols() {
                m[(i + 1, j + 1)] = self.a[(i, j)].clone();
            }
        }
        m
    }

    /// `[[s, -s ℓ A^-1], [0, A^-1]]`.
    pub fn inverse(&self) -> Result<Self> {
        let a_inv = self.a.inverse_unimodular()?;
        let s = BigInt::from(self.sign);
        let row = IntMatrix::new(1, self.ell.len(), self.ell.clone())?.mul(&a_inv)?;
        Ok(Su2Certificate {
            sign: self.sign,
            ell: row.row(0).iter().map(|x| -(&s * x)).collect(),
            a: a_inv,
        })
    }

    /// `[[s2 s1, s2 ℓ1 + ℓ2 A1], [0, A2 A1]]` for `self: ρ -> ρ′` and `next: ρ′ -> ρ″`.
    pub fn compose(&self, next: &Self) -> Result<Self> {
        let s2 = BigInt::from(next.sign);
        let l2a1 = IntMatrix::new(1, next.ell.len(), next.ell.clone())?.mul(&self.a)?;
        if l2a1.cols() != self.ell.len() {
            return Err(Error::DimensionMismatch("certificate sizes differ".into()));
        }
        Ok(Su2Certificate {
            sign: self.sign * next.sign,
            ell: self
                .ell
                .iter()
                .zip(l2a1.row(0))
                .map(|(l1, x)| &s2 * l1 + x)
                .collect(),
            a: next.a.mul(&self.a)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    Torus(TorusCertificate),
    Su2(Su2Certificate),
}

fn check_same_shape(f: &RotationVector, g: &RotationVector) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch(format!(
            "rotation vectors of lengths {} and {}",
            f.len(),
            g.len()
        )));
    }
    if !same_table(f.table(), g.table()) {
        return Err(Error::MixedSymbolTables);
    }
    Ok(())
}

/// Decides whether `L_f` and `L_g` on `T^n` are topologically conjugate.
///
/// Both vectors are brought to normal form `(β, k/d, 0)`; the irrational blocks
/// must be related by `β′ = M β + v` with `M ∈ GL_m(Z)` and the offset `v`
/// absorbed by the rational slot, after which the tail is matched by a Bézout
/// completion.
pub fn torus_conjugate(
    rho_f: &RotationVector,
    rho_g: &RotationVector,
) -> Result<Option<TorusCertificate>> {
    check_same_shape(rho_f, rho_g)?;
    let n = rho_f.len();
    let nf = rho_f.normal_form();
    let ng = rho_g.normal_form();
    if nf.m != ng.m || nf.d != ng.d {
        return Ok(None);
    }
    let m = nf.m;
    let d = nf.d.clone();

    let mut block_m = IntMatrix::zeros(m, m);
    let mut offsets = Vec::with_capacity(m);
    if m > 0 {
        let cols = rho_f.table().len();
        let basis = RatMatrix::from_rows(
            nf.betas.iter().map(ExactReal::irrational_coordinates).collect(),
            cols,
        )?;
        for (i, target) in ng.betas.iter().enumerate() {
            let Some(x) = basis.solve_left(&target.irrational_coordinates()) else {
                return Ok(None);
            };
            if x.iter().any(|q| !q.is_integer()) {
                return Ok(None);
            }
            let row: Vec<BigInt> = x.iter().map(BigRational::to_integer).collect();
            let image = ExactReal::integer_combination(&row, &nf.betas)?;
            let v = target.rational_part() - image.rational_part();
            let scaled = &v * BigRational::from_integer(d.clone());
            if !scaled.is_integer() {
                return Ok(None);
            }
            offsets.push(scaled.to_integer());
            for (j, c) in row.into_iter().enumerate() {
                block_m[(i, j)] = c;
            }
        }
        if !block_m.is_unimodular() {
            return Ok(None);
        }
    }

    let tail = n - m;
    let mut b = block_m.direct_sum(&IntMatrix::identity(tail));
    if !d.is_one() {
        let k_inv = mod_inverse(&nf.k, &d).expect("reduced fraction");
        for (i, dv) in offsets.iter().enumerate() {
            b[(i, m)] = (dv * &k_inv).mod_floor(&d);
        }
        let y = if tail == 1 {
            if ng.k == nf.k {
                BigInt::one()
            } else if (&ng.k + &nf.k).mod_floor(&d).is_zero() {
                -BigInt::one()
            } else {
                return Ok(None);
            }
        } else {
            (&ng.k * &k_inv).mod_floor(&d)
        };
        let tail_block = if tail == 1 {
            IntMatrix::new(1, 1, vec![y])?
        } else if y.is_one() {
            IntMatrix::identity(tail)
        } else {
            let mut first = vec![BigInt::zero(); tail];
            first[0] = y;
            first[1] = d.clone();
            unimodular_complete(&first, 0)?.transpose()
        };
        for i in 0..tail {
            for j in 0..tail {
                b[(m + i, m + j)] = tail_block[(i, j)].clone();
            }
        }
    }
    let a = ng.transform.inverse_unimodular()?.mul(&b)?.mul(&nf.transform)?;
    let cert = TorusCertificate { a };
    debug_assert!(verify_certificate(&Certificate::Torus(cert.clone()), rho_f, rho_g));
    Ok(Some(cert))
}

/// Decides conjugacy of left actions on `SU(2) x T^n`; entry 0 of each vector is
/// the `SU(2)` rotation number `θ_0`.
pub fn su2_conjugate(rho: &RotationVector, rho2: &RotationVector) -> Result<Option<Su2Certificate>> {
    check_same_shape(rho, rho2)?;
    let tail = rho.tail()?;
    let Some(torus) = torus_conjugate(&tail, &rho2.tail()?)? else {
        return Ok(None);
    };
    for sign in [1, -1] {
        let target = rho2.entry(0).sub(&rho.entry(0).scale_int(&BigInt::from(sign)))?;
        if let Some((ell, _)) = membership_zmod(&target, tail.entries())? {
            return Ok(Some(Su2Certificate {
                sign,
                ell,
                a: torus.a,
            }));
        }
    }
    Ok(None)
}

/// Exact re-check of a certificate against `ρ -> ρ′`.
pub fn verify_certificate(cert: &Certificate, rho: &RotationVector, rho2: &RotationVector) -> bool {
    if rho.len() != rho2.len() {
        return false;
    }
    let n = rho.len();
    let matrix = match cert {
        Certificate::Torus(c) => {
            if c.a.rows() != n || c.a.cols() != n {
                return false;
            }
            c.a.clone()
        }
        Certificate::Su2(c) => {
            if n < 2
                || c.a.rows() != n - 1
                || c.a.cols() != n - 1
                || c.ell.len() != n - 1
                || c.sign.abs() != 1
            {
                return false;
            }
            c.block_matrix()
        }
    };
    matrix.is_unimodular()
        && rho
            .apply_matrix(&matrix)
            .is_ok_and(|image| image.entries_mod_z_eq(rho2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleMode {
    Torus,
    Su2,
}

type State = Vec<BigRational>;

fn rational_state(rho: &RotationVector) -> Result<State> {
    rho.entries()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if x.is_rational() {
                Ok(x.rational_part().clone())
            } else {
                Err(Error::NonRational(i))
            }
        })
        .collect()
}

fn frac(q: BigRational) -> BigRational {
    let f = q.floor();
    q - f
}

fn successors(state: &State, mode: OracleMode) -> Vec<State> {
    let n = state.len();
    let lo = match mode {
        OracleMode::Torus => 0,
        OracleMode::Su2 => 1,
    };
    let mut out = Vec::new();
    for i in lo..n {
        let mut s = state.clone();
        s[i] = frac(-&s[i]);
        out.push(s);
        for j in lo..n {
            if i == j {
                continue;
            }
            if i < j {
                let mut s = state.clone();
                s.swap(i, j);
                out.push(s);
            }
            let mut s = state.clone();
            s[j] = frac(&s[j] + &state[i]);
            out.push(s);
        }
    }
    if mode == OracleMode::Su2 {
        let mut s = state.clone();
        s[0] = frac(-&s[0]);
        out.push(s);
        for i in 1..n {
            let mut s = state.clone();
            s[0] = frac(&s[0] + &state[i]);
            out.push(s);
        }
    }
    out
}

/// Orbit of a rational vector under the generators of `GL_n(Z)` (or of the
/// block-triangular group in `Su2` mode), reduced mod `Z`.
pub fn brute_force_orbit(rho: &RotationVector, mode: OracleMode) -> Result<HashSet<State>> {
    if mode == OracleMode::Su2 && rho.len() < 2 {
        return Err(Error::InvalidArgument(
            "su2 mode needs a vector of length at least 2".into(),
        ));
    }
    let start = rational_state(rho)?;
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        for next in successors(&state, mode) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Ground truth by exhaustive search; rational inputs only.
pub fn brute_force_oracle(
    rho_f: &RotationVector,
    rho_g: &RotationVector,
    mode: OracleMode,
) -> Result<bool> {
    check_same_shape(rho_f, rho_g)?;
    let target = rational_state(rho_g)?;
    Ok(brute_force_orbit(rho_f, mode)?.contains(&target))
}
