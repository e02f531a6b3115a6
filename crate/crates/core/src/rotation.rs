//! Rotation vectors on `T^n` and their exact invariants.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactreal::{same_table, ExactReal, SymbolTable};
use crate::intlinalg::{
    mod_inverse, primitive_left_kernel_vector, rational_rank, unimodular_complete, IntMatrix, RatMatrix,
};

/// A rotation vector `ρ ∈ T^n`, every entry stored with rational part in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationVector {
    table: Arc<SymbolTable>,
    entries: Vec<ExactReal>,
}

impl RotationVector {
    /// Canonicalizes the entries mod `Z`.
    pub fn new(entries: Vec<ExactReal>) -> Result<Self> {
        let table = entries
            .first()
            .ok_or(Error::Empty("rotation vector needs at least one entry"))?
            .table()
            .clone();
        if entries.iter().any(|x| !same_table(x.table(), &table)) {
            return Err(Error::MixedSymbolTables);
        }
        Ok(RotationVector {
            table,
            entries: entries.iter().map(ExactReal::canonical_mod_z).collect(),
        })
    }

    pub fn parse<S: AsRef<str>>(texts: &[S], table: &Arc<SymbolTable>) -> Result<Self> {
        let entries = texts
            .iter()
            .map(|t| ExactReal::parse(t.as_ref(), table))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn zero(table: &Arc<SymbolTable>, n: usize) -> Result<Self> {
        Self::new(vec![ExactReal::zero(table); n])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ExactReal] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &ExactReal {
        &self.entries[i]
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(ExactReal::is_rational)
    }

    /// Entries `1..n` (the torus tail of an `SU(2) x T^n` rotation vector).
    pub fn tail(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::InvalidArgument(
                "tail needs a vector of length at least 2".into(),
            ));
        }
        Self::new(self.entries[1..].to_vec())
    }

    pub fn entries_mod_z_eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(x, y)| x.eq_mod_z(y))
    }

    /// `M ρ mod Z^m` for an `m x n` integer matrix.
    pub fn apply_matrix(&self, m: &IntMatrix) -> Result<Self> {
        Self::new(apply_exact(&self.entries, m)?)
    }

    pub fn approx(&self) -> Vec<f64> {
        self.entries.iter().map(ExactReal::approx).collect()
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.entries)
    }

    pub fn reductive_rank(&self) -> usize {
        reductive_rank_of(&self.entries)
    }

    /// A primitive integer relation `Σ k_i θ_i = value ∈ Q`, or `None` when the
    /// entries together with `1` are rationally independent.
    pub fn relation(&self) -> Option<(Vec<BigInt>, BigRational)> {
        irrational_relation(&self.entries)
    }

    pub fn normal_form(&self) -> NormalForm {
        normal_form(self)
    }

    /// `(dimension, components)` of the orbit closure of the identity.
    pub fn orbit_invariants(&self) -> (usize, BigInt) {
        let nf = self.normal_form();
        (nf.m, nf.d)
    }

    pub fn su2_profile(&self) -> Result<InvariantProfile> {
        su2_profile(self)
    }
}

impl fmt::Display for RotationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// `M x` over the integers without reducing mod `Z`.
pub fn apply_exact(entries: &[ExactReal], m: &IntMatrix) -> Result<Vec<ExactReal>> {
    if m.cols() != entries.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix applied to a vector of length {}",
            m.rows(),
            m.cols(),
            entries.len()
        )));
    }
    (0..m.rows())
        .map(|i| ExactReal::integer_combination(m.row(i), entries))
        .collect()
}

fn coordinate_matrix(entries: &[ExactReal]) -> RatMatrix {
    let cols = entries.first().map_or(1, |x| x.table().len() + 1);
    RatMatrix::from_rows(entries.iter().map(ExactReal::coordinates).collect(), cols)
        .expect("shared table")
}

fn irrational_matrix(entries: &[ExactReal]) -> RatMatrix {
    let cols = entries.first().map_or(0, |x| x.table().len());
    RatMatrix::from_rows(
        entries.iter().map(ExactReal::irrational_coordinates).collect(),
        cols,
    )
    .expect("shared table")
}

/// `dim Span_Q {θ_i}`.
pub fn rank_of(entries: &[ExactReal]) -> usize {
    rational_rank(&coordinate_matrix(entries))
}

/// `dim Span_Q {1, θ_1, ..., θ_n} / Q`.
pub fn reductive_rank_of(entries: &[ExactReal]) -> usize {
    rational_rank(&irrational_matrix(entries))
}

fn normalize_sign(mut k: Vec<BigInt>) -> Vec<BigInt> {
    if k.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        for x in &mut k {
            *x = -&*x;
        }
    }
    k
}

fn relation_value(k: &[BigInt], entries: &[ExactReal]) -> BigRational {
    k.iter()
        .zip(entries)
        .map(|(c, x)| x.rational_part() * BigRational::from_integer(c.clone()))
        .sum()
}

fn irrational_relation(entries: &[ExactReal]) -> Option<(Vec<BigInt>, BigRational)> {
    let k = normalize_sign(primitive_left_kernel_vector(&irrational_matrix(entries))?);
    let value = relation_value(&k, entries);
    Some((k, value))
}

/// Greedy leftmost-first scan: the first index whose coordinate row lies in the
/// span of the independent rows before it, with that basis.
fn first_dependent(coords: &RatMatrix) -> Option<(usize, Vec<usize>)> {
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..coords.rows() {
        let mut candidate = basis.clone();
        candidate.push(i);
        if rational_rank(&coords.select_rows(&candidate)) == candidate.len() {
            basis = candidate;
        } else {
            return Some((i, basis));
        }
    }
    None
}

/// Normal form `(β_1, ..., β_m, k/d, 0, ..., 0)` of a rotation vector.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    /// Number of irrational slots; equals the reductive rank.
    pub m: usize,
    pub betas: Vec<ExactReal>,
    pub k: BigInt,
    /// Positive; `d = 1, k = 0` when there is no rational slot.
    pub d: BigInt,
    pub zeros: usize,
    /// `transform * ρ ≡ vector()` entrywise mod `Z`.
    pub transform: IntMatrix,
}

impl NormalForm {
    pub fn has_rational_slot(&self) -> bool {
        !self.d.is_one()
    }

    pub fn rational_slot(&self) -> BigRational {
        BigRational::new(self.k.clone(), self.d.clone())
    }

    pub fn len(&self) -> usize {
        self.m + usize::from(self.has_rational_slot()) + self.zeros
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The normal-form vector itself.
    pub fn vector(&self, table: &Arc<SymbolTable>) -> RotationVector {
        let mut entries = self.betas.clone();
        if self.has_rational_slot() {
            entries.push(ExactReal::from_rational(table, self.rational_slot()));
        }
        entries.extend(std::iter::repeat_n(ExactReal::zero(table), self.zeros));
        RotationVector::new(entries).expect("nonempty normal form")
    }
}

struct Reduction {
    current: Vec<ExactReal>,
    transform: IntMatrix,
}

impl Reduction {
    /// Applies `block ⊕ I` on the first `block.rows()` entries.
    fn apply(&mut self, block: &IntMatrix) {
        let n = self.current.len();
        let g = block.direct_sum(&IntMatrix::identity(n - block.rows()));
        self.current = apply_exact(&self.current, &g)
            .expect("square transform")
            .iter()
            .map(ExactReal::canonical_mod_z)
            .collect();
        self.transform = g.mul(&self.transform).expect("square transform");
    }

    /// Moves entry `from` to position `to` (`from <= to`), shifting the rest left.
    fn rotate_to(&mut self, from: usize, to: usize) {
        let n = self.current.len();
        let mut perm = IntMatrix::zeros(n, n);
        let mut order: Vec<usize> = (0..n).collect();
        let moved = order.remove(from);
        order.insert(to, moved);
        for (i, &src) in order.iter().enumerate() {
            perm[(i, src)] = BigInt::one();
        }
        self.apply(&perm);
    }
}

/// Reduces `ρ` to normal form.
///
/// First strips linear dependencies one at a time: complete the primitive relation
/// of the leftmost dependent entry to a unimodular matrix, apply it, and move the
/// produced zero to the end. The surviving entries are linearly independent over
/// `Q`; if their reductive rank is one short, the relation among their irrational
/// parts is completed the same way into the rational slot `k/d`.
pub fn normal_form(rho: &RotationVector) -> NormalForm {
    let n = rho.len();
    let table = rho.table().clone();
    let mut red = Reduction {
        current: rho.entries().to_vec(),
        transform: IntMatrix::identity(n),
    };
    let mut active = n;
    while let Some((j, basis)) = first_dependent(&coordinate_matrix(&red.current[..active])) {
        let mut support = basis.clone();
        support.push(j);
        let coords = coordinate_matrix(&red.current[..active]).select_rows(&support);
        let k = primitive_left_kernel_vector(&coords).expect("dependent rows");
        let mut row = vec![BigInt::zero(); active];
        for (&idx, c) in support.iter().zip(k) {
            row[idx] = c;
        }
        let block = unimodular_complete(&row, j).expect("primitive relation");
        red.apply(&block);
        debug_assert!(red.current[j].is_zero());
        red.rotate_to(j, active - 1);
        active -= 1;
    }

    let m = reductive_rank_of(&red.current[..active]);
    let mut k = BigInt::zero();
    let mut d = BigInt::one();
    if m + 1 == active {
        let (relation, _) =
            irrational_relation(&red.current[..active]).expect("reductive rank deficiency");
        let block = unimodular_complete(&relation, active - 1).expect("primitive relation");
        red.apply(&block);
        let slot = red.current[active - 1].rational_part().clone();
        debug_assert!(red.current[active - 1].is_rational());
        k = slot.numer().clone();
        d = slot.denom().clone();
        if active < n {
            // (k/d, 0) -> (1/d, 0) through [[k^-1, -t], [d, s]]
            let y1 = mod_inverse(&k, &d).expect("reduced fraction");
            let completion = unimodular_complete(&[y1, d.clone()], 0).expect("coprime pair");
            let y = completion.transpose();
            red.apply(&IntMatrix::identity(active - 1).direct_sum(&y));
            k = BigInt::one();
        } else if &k + &k > d {
            let mut block = IntMatrix::identity(active);
            block.negate_row(active - 1);
            red.apply(&block);
            k = &d - &k;
        }
    }
    let mut flip = IntMatrix::identity(m);
    for i in 0..m {
        let lead = red.current[i].symbol_coefficients().next().map(|(_, c)| c.is_negative());
        if lead == Some(true) {
            flip.negate_row(i);
        }
    }
    if flip != IntMatrix::identity(m) {
        red.apply(&flip);
    }
    let betas = red.current[..m].to_vec();
    let zeros = n - m - usize::from(!d.is_one());
    let nf = NormalForm {
        m,
        betas,
        k,
        d,
        zeros,
        transform: red.transform,
    };
    debug_assert!(rho
        .apply_matrix(&nf.transform)
        .expect("square")
        .entries_mod_z_eq(&nf.vector(&table)));
    nf
}

/// Which of the three possible shapes the invariants of `ρ(L_g)` take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `θ_0` rational.
    Case1,
    /// `θ_0` irrational and independent of the tail.
    Case2,
    /// `θ_0` irrational and dependent on the tail.
    Case3,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2 => "Case2",
            CaseTag::Case3 => "Case3",
        })
    }
}

/// Conjugacy invariants of a left action on `SU(2) x T^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantProfile {
    pub rank: usize,
    pub reductive_rank: usize,
    pub components: BigInt,
    pub tail_reductive_rank: usize,
    pub tail_components: BigInt,
    pub case: CaseTag,
}

impl InvariantProfile {
    /// The parts of the profile two conjugate actions must share.
    pub fn invariant_key(&self) -> (usize, &BigInt, usize, &BigInt) {
        (
            self.reductive_rank,
            &self.components,
            self.tail_reductive_rank,
            &self.tail_components,
        )
    }
}

pub fn su2_profile(rho: &RotationVector) -> Result<InvariantProfile> {
    let tail = rho.tail()?;
    let (reductive_rank, components) = rho.orbit_invariants();
    let (tail_reductive_rank, tail_components) = tail.orbit_invariants();
    let case = if rho.entry(0).is_rational() {
        CaseTag::Case1
    } else if reductive_rank == tail_reductive_rank + 1 {
        CaseTag::Case2
    } else {
        CaseTag::Case3
    };
    Ok(InvariantProfile {
        rank: rho.rank(),
        reductive_rank,
        components,
        tail_reductive_rank,
        tail_components,
        case,
    })
}
