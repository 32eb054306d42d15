//! Decides whether a symmetry class has an O-basis: a basis of pairwise
//! orthogonal standard symmetrized vectors.
//!
//! The orthogonal decomposition into cyclic subspaces reduces the question
//! to one orbit at a time, and the vector index never matters (Gram entries
//! across different vector indices vanish identically), so the search runs
//! over subsets of a single orbit of coordinate points. Three routes are
//! available: a norm-window obstruction that certifies failure for
//! non-linear characters, the even-degree criterion for dihedral degree-2
//! characters, and an exhaustive per-orbit subset search that settles every
//! small instance outright.

use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::chars::{restriction_multiplicity, Character};
use crate::cyclo::{ratio, two_part, Rational};
use crate::symclass::{dim_cyclic_subspace, gram_entry, SymclassError};

/// Default number of search nodes allowed per orbit before the search gives
/// an explicit undecided status.
pub const DEFAULT_SUBSET_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum OBasisError {
    #[error("reflection character needs 0 < h < m/2, got h = {h} with m = {m}")]
    PsiOutOfRange { h: usize, m: usize },
    #[error("dihedral degree must be at least 3, got {0}")]
    Degree(usize),
    #[error(transparent)]
    Symclass(#[from] SymclassError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HasOBasis,
    NoOBasis,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::HasOBasis => "has-O-basis",
            Verdict::NoOBasis => "no-O-basis",
            Verdict::Undecided => "undecided-by-search",
        };
        write!(f, "{s}")
    }
}

/// How the verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Search,
    Criterion,
    Obstruction,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Search => "search",
            Method::Criterion => "criterion",
            Method::Obstruction => "obstruction",
        };
        write!(f, "{s}")
    }
}

/// Search record for one orbit with surviving multiplicity.
#[derive(Debug, Clone)]
pub struct OrbitSearch {
    pub representative: usize,
    pub orbit: Vec<usize>,
    /// Cyclic-subspace dimension: the orthogonal subset size needed.
    pub required: u64,
    /// Lexicographically first orthogonal subset of that size, if any.
    pub found: Option<Vec<usize>>,
    pub nodes: u64,
    pub budget_exceeded: bool,
}

/// Verdict and evidence for one symmetry class.
#[derive(Debug, Clone)]
pub struct OBasisReport {
    pub per_orbit: Vec<OrbitSearch>,
    /// A surviving representative whose squared norm lies strictly between
    /// 1/2 and 1, when one exists; certifies failure for degree >= 2.
    pub obstruction: Option<usize>,
    pub verdict: Verdict,
    pub method: Method,
}

/// Looks for a surviving representative whose squared norm lies strictly in
/// the open window (1/2, 1). For characters of degree at least 2 a hit
/// certifies that no O-basis exists; absence certifies nothing. Linear
/// characters always admit O-bases, so the answer is immediately empty.
pub fn norm_window_obstruction(chi: &Character) -> Result<Option<usize>, OBasisError> {
    if chi.degree() < 2 {
        return Ok(None);
    }
    let half = ratio(1, 2);
    let one = ratio(1, 1);
    let od = chi.group().orbit_data();
    for (&rep, stab) in od.representatives.iter().zip(&od.stabilizers) {
        let mult = restriction_multiplicity(chi, stab).map_err(SymclassError::from)?;
        if mult.is_zero() {
            continue;
        }
        let norm_sq = crate::symclass::norm_squared(chi, rep)?;
        if norm_sq > half && norm_sq < one {
            return Ok(Some(rep));
        }
    }
    Ok(None)
}

/// Exhaustively searches every surviving orbit for an orthogonal set of
/// standard symmetrized vectors of the cyclic-subspace size. Subsets are
/// enumerated lexicographically over ascending orbit points with the first
/// success winning, so reports are deterministic. A per-orbit node budget
/// turns oversized searches into an explicit undecided verdict; if the norm
/// window already certifies failure, the verdict stays decisive.
pub fn search_obasis(chi: &Character, budget: u64) -> Result<OBasisReport, OBasisError> {
    let obstruction = norm_window_obstruction(chi)?;
    let od = chi.group().orbit_data();
    let mut per_orbit = Vec::new();
    let mut all_found = true;
    let mut any_exceeded = false;
    let mut definitive_failure = false;
    for (&rep, orbit) in od.representatives.iter().zip(&od.orbits) {
        let required = dim_cyclic_subspace(chi, rep)?;
        if required == 0 {
            continue;
        }
        let k = orbit.len();
        let mut orthogonal = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                orthogonal[a][b] = a != b && gram_entry(chi, orbit[a], orbit[b])?.is_zero();
            }
        }
        let mut nodes = 0u64;
        let mut selection = Vec::new();
        let outcome = extend_orthogonal_set(
            &orthogonal,
            required as usize,
            &mut selection,
            0,
            &mut nodes,
            budget,
        );
        let (found, budget_exceeded) = match outcome {
            Ok(hit) => (hit.map(|sel| sel.iter().map(|&i| orbit[i]).collect()), false),
            Err(BudgetExceeded) => (None, true),
        };
        match (&found, budget_exceeded) {
            (Some(_), _) => {}
            (None, false) => {
                all_found = false;
                definitive_failure = true;
            }
            (None, true) => {
                all_found = false;
                any_exceeded = true;
            }
        }
        per_orbit.push(OrbitSearch {
            representative: rep,
            orbit: orbit.clone(),
            required,
            found,
            nodes,
            budget_exceeded,
        });
    }
    let (verdict, method) = if all_found {
        (Verdict::HasOBasis, Method::Search)
    } else if definitive_failure {
        (Verdict::NoOBasis, Method::Search)
    } else if any_exceeded && obstruction.is_some() {
        (Verdict::NoOBasis, Method::Obstruction)
    } else {
        (Verdict::Undecided, Method::Search)
    };
    Ok(OBasisReport { per_orbit, obstruction, verdict, method })
}

struct BudgetExceeded;

fn extend_orthogonal_set(
    orthogonal: &[Vec<bool>],
    required: usize,
    selection: &mut Vec<usize>,
    start: usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    if selection.len() == required {
        return Ok(Some(selection.clone()));
    }
    for cand in start..orthogonal.len() {
        *nodes += 1;
        if *nodes > budget {
            return Err(BudgetExceeded);
        }
        if selection.iter().all(|&a| orthogonal[a][cand]) {
            selection.push(cand);
            if let Some(hit) =
                extend_orthogonal_set(orthogonal, required, selection, cand + 1, nodes, budget)?
            {
                return Ok(Some(hit));
            }
            selection.pop();
        }
    }
    Ok(None)
}

/// The closed-form criterion for the degree-2 dihedral character `psi_h` on
/// the dihedral group of degree `m`: an O-basis exists exactly when `m` is
/// divisible by four times the 2-part of `h`.
pub fn dihedral_criterion(m: usize, h: usize) -> Result<bool, OBasisError> {
    if m < 3 {
        return Err(OBasisError::Degree(m));
    }
    if h == 0 || 2 * h >= m {
        return Err(OBasisError::PsiOutOfRange { h, m });
    }
    Ok(m.is_multiple_of(4 * two_part(h as u64) as usize))
}

/// Space-level verdict over a character family: the full product space has
/// an O-basis exactly when every symmetry class in the family does.
#[derive(Debug, Clone)]
pub struct SpaceObasisVerdict {
    /// Whether the squared degrees of the supplied family sum to the group
    /// order; a partial family can refute but never confirm.
    pub complete_family: bool,
    pub per_character: Vec<(String, Verdict)>,
    /// Conjunction of the per-character verdicts. `None` while undecided or
    /// while a fully positive answer rests on an incomplete family.
    pub verdict: Option<bool>,
}

pub fn space_obasis_verdict(
    family: &[(String, Character)],
    budget: u64,
) -> Result<SpaceObasisVerdict, OBasisError> {
    let group_order = family
        .first()
        .map(|(_, c)| c.group().order())
        .unwrap_or(0);
    let degree_square_sum: u64 = family.iter().map(|(_, c)| c.degree() * c.degree()).sum();
    let complete_family = degree_square_sum == group_order as u64;
    let mut per_character = Vec::with_capacity(family.len());
    for (label, chi) in family {
        let report = search_obasis(chi, budget)?;
        per_character.push((label.clone(), report.verdict));
    }
    let any_no = per_character.iter().any(|(_, v)| *v == Verdict::NoOBasis);
    let all_yes = per_character.iter().all(|(_, v)| *v == Verdict::HasOBasis);
    let verdict = if any_no {
        Some(false)
    } else if all_yes && complete_family {
        Some(true)
    } else {
        None
    };
    Ok(SpaceObasisVerdict { complete_family, per_character, verdict })
}

/// Re-validates a claimed orthogonal subset: correct size, pairwise-zero
/// Gram entries, and strictly positive norms.
pub fn validate_orthogonal_subset(
    chi: &Character,
    subset: &[usize],
    required: u64,
) -> Result<bool, OBasisError> {
    if subset.len() as u64 != required {
        return Ok(false);
    }
    for (i, &a) in subset.iter().enumerate() {
        if crate::symclass::norm_squared(chi, a)? <= Rational::zero() {
            return Ok(false);
        }
        for &b in &subset[i + 1..] {
            if !gram_entry(chi, a, b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
