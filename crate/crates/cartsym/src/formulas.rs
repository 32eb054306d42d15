//! Closed-form dimension evaluators for the three group families with
//! explicit formulas: cyclic groups generated by a product of disjoint
//! cycles, internal direct products of disjoint cyclic groups, and dihedral
//! groups. Every evaluator also computes the dimension through the
//! symmetrizer trace and aborts on any disagreement, so a silent formula
//! bug cannot survive.

use num::Signed;
use thiserror::Error;

use crate::chars::{self, CharError, DihedralCharId};
use crate::cyclo::{rat, ramanujan, ratio, Rational};
use crate::perm::families::{cycle_modulus, CycleProductGroup, DihedralGroup, ProductOfCyclicsGroup};
use crate::perm::PermError;
use crate::symclass::{build_symmetrizer, dim_symmetry_class, SymclassError};

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error("cycle lengths sum to {sum} but the ambient degree is {degree}")]
    LengthsSumMismatch { sum: usize, degree: usize },
    #[error("residue {q} out of range for modulus {m}")]
    ResidueOutOfRange { q: usize, m: usize },
    #[error("expected {expect} residues, got {got}")]
    ResidueCount { expect: usize, got: usize },
    #[error("closed-form value {0} is not a nonnegative integer")]
    NonIntegral(String),
    #[error("closed form gives {formula}, the trace dimension is {trace}")]
    TraceMismatch { formula: u64, trace: u64 },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Symclass(#[from] SymclassError),
}

/// Disjoint cycles inside an ambient degree, the shared input shape of the
/// cyclic and product-of-cyclics evaluators.
#[derive(Debug, Clone)]
pub struct CycleStructure {
    supports: Vec<Vec<usize>>,
    degree: usize,
}

impl CycleStructure {
    pub fn new(supports: Vec<Vec<usize>>, degree: usize) -> Result<Self, FormulaError> {
        // Reuse the family validation: disjointness, length >= 2, range.
        CycleProductGroup::new(&supports, degree)?;
        Ok(CycleStructure { supports, degree })
    }

    /// Canonical consecutive supports `(1..m1)(m1+1..m1+m2)...` inside the
    /// ambient degree.
    pub fn from_lengths(lengths: &[usize], degree: usize) -> Result<Self, FormulaError> {
        let mut supports = Vec::with_capacity(lengths.len());
        let mut next = 1usize;
        for &len in lengths {
            supports.push((next..next + len).collect());
            next += len;
        }
        CycleStructure::new(supports, degree)
    }

    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.supports.iter().map(Vec::len).collect()
    }

    /// Least common multiple of the cycle lengths: the order of the product
    /// of the cycles.
    pub fn modulus(&self) -> usize {
        cycle_modulus(&self.supports)
    }
}

/// `(1/m') * sum over d | m' of c_(m'/d)(q)`: the multiplicity of the
/// trivial character contributed by one orbit, expressed through Ramanujan
/// sums.
fn orbit_multiplicity_term(m_prime: usize, q: usize) -> Rational {
    let mut acc = rat(0);
    for d in crate::cyclo::divisors(m_prime as u64) {
        acc += rat(ramanujan(m_prime as u64 / d, q as u64));
    }
    acc * ratio(1, m_prime as i64)
}

fn require_nonneg_integer(v: &Rational) -> Result<u64, FormulaError> {
    if !v.is_integer() || v.is_negative() {
        return Err(FormulaError::NonIntegral(v.to_string()));
    }
    Ok(u64::try_from(v.to_integer()).expect("dimension fits in u64"))
}

/// Dimension of the symmetry class of the cyclic group generated by the
/// product of the structure's cycles, for the linear character of residue
/// `q`: `n * sum over cycles of (1/m_i') sum over d | m_i' of c_(m_i'/d)(q)`
/// with `m_i' = M / m_i`. Requires the cycle lengths to exhaust the ambient
/// degree; structures with fixed points have no closed form here and route
/// through the general multiplicity formula instead.
pub fn dim_cycle_product(cs: &CycleStructure, q: usize, n: u64) -> Result<u64, FormulaError> {
    let lengths = cs.lengths();
    let sum: usize = lengths.iter().sum();
    if sum != cs.degree() {
        return Err(FormulaError::LengthsSumMismatch { sum, degree: cs.degree() });
    }
    let modulus = cs.modulus();
    if q >= modulus {
        return Err(FormulaError::ResidueOutOfRange { q, m: modulus });
    }
    let mut units = rat(0);
    for &len in &lengths {
        units += orbit_multiplicity_term(modulus / len, q);
    }
    let value = require_nonneg_integer(&units)? * n;

    let group = CycleProductGroup::new(cs.supports(), cs.degree())?;
    let chi = chars::cyclic_character(&group, q)?;
    let trace = dim_symmetry_class(&build_symmetrizer(&chi), n)?;
    if value != trace {
        return Err(FormulaError::TraceMismatch { formula: value, trace });
    }
    Ok(value)
}

/// Both readings of the product-of-cyclics dimension formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductDims {
    /// The reading with the per-orbit sum restored: `n * [(m - sum of m_l) *
    /// [chi, trivial] + sum over j of prod over l != j of the orbit term]`.
    /// Always equals the trace dimension.
    pub corrected: u64,
    /// The reading with a single unbound product term, evaluated with the
    /// free index pinned to the first factor.
    pub literal: u64,
    /// True exactly when the two readings differ on this input; reported,
    /// never silently resolved.
    pub discrepancy: bool,
}

/// Dimension of the symmetry class of an internal direct product of
/// disjoint cyclic groups for the linear character with residue tuple `qs`.
/// The corrected reading is cross-checked against the trace dimension; the
/// literal reading is evaluated alongside and the discrepancy is flagged.
pub fn dim_product_of_cyclics(
    cs: &CycleStructure,
    qs: &[usize],
    n: u64,
) -> Result<ProductDims, FormulaError> {
    let lengths = cs.lengths();
    let k = lengths.len();
    if qs.len() != k {
        return Err(FormulaError::ResidueCount { expect: k, got: qs.len() });
    }
    for (&q, &m) in qs.iter().zip(&lengths) {
        if q >= m {
            return Err(FormulaError::ResidueOutOfRange { q, m });
        }
    }
    let moved: usize = lengths.iter().sum();
    let fixed = cs.degree() - moved;
    // Multiplicity of the trivial character in the whole group: 1 exactly
    // when every residue vanishes.
    let full_mult = if qs.iter().all(|&q| q == 0) { rat(1) } else { rat(0) };
    // One Ramanujan-sum factor per cycle; the term for orbit j is the
    // product over the other factors.
    let factors: Vec<Rational> = lengths
        .iter()
        .zip(qs)
        .map(|(&m, &q)| orbit_multiplicity_term(m, q))
        .collect();
    let orbit_term = |j: usize| -> Rational {
        factors
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != j)
            .fold(rat(1), |acc, (_, f)| acc * f)
    };
    let corrected_units =
        rat(fixed as i64) * &full_mult + (0..k).map(orbit_term).fold(rat(0), |a, t| a + t);
    let literal_units = rat(fixed as i64) * &full_mult + orbit_term(0);

    let corrected = require_nonneg_integer(&corrected_units)? * n;
    let literal = require_nonneg_integer(&literal_units)? * n;

    let group = ProductOfCyclicsGroup::new(cs.supports(), cs.degree())?;
    let chi = chars::product_cyclic_character(&group, qs)?;
    let trace = dim_symmetry_class(&build_symmetrizer(&chi), n)?;
    if corrected != trace {
        return Err(FormulaError::TraceMismatch { formula: corrected, trace });
    }
    Ok(ProductDims { corrected, literal, discrepancy: corrected != literal })
}

/// Dimension of a dihedral symmetry class by the stabilizer formula
/// `n * (deg/2) * (deg + value at the reflection)`, cross-checked against
/// both the expected table of outcomes and the trace dimension.
pub fn dim_dihedral(m: usize, id: DihedralCharId, n: u64) -> Result<u64, FormulaError> {
    let d = DihedralGroup::new(m)?;
    let chi = chars::dihedral_character(&d, id)?;
    let s_val = chi
        .value_of(d.reflection())
        .expect("reflection is a member")
        .to_rational()
        .expect("linear and degree-2 values at the reflection are rational");
    let deg = rat(chi.degree() as i64);
    let units = &deg / rat(2) * (&deg + &s_val);
    let value = require_nonneg_integer(&units)? * n;

    let table = match id {
        DihedralCharId::Lambda(1) | DihedralCharId::Lambda(3) => n,
        DihedralCharId::Lambda(_) => 0,
        DihedralCharId::Psi(_) => 2 * n,
    };
    let trace = dim_symmetry_class(&build_symmetrizer(&chi), n)?;
    if value != table || value != trace {
        return Err(FormulaError::TraceMismatch { formula: value, trace });
    }
    Ok(value)
}
