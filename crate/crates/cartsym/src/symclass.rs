//! The Cartesian symmetrizer as an exact m-by-m projection matrix,
//! dimensions of symmetry classes and cyclic subspaces, Gram entries and
//! norms of standard symmetrized vectors, and the spanning-index bookkeeping.
//!
//! The projection on the full nm-dimensional product space is block diagonal
//! with n identical m-by-m blocks, because the coordinate permutation
//! operators act on the coordinate index alone. Everything is therefore
//! computed at size m and scaled by n; the nm-sized operator is only ever
//! materialized by the brute-force oracles used for cross-checking.

use num::{Signed, Zero};
use thiserror::Error;

use crate::chars::{restriction_multiplicity, Character, CharError};
use crate::cyclo::{rat, ratio, Cyclotomic, Rational};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Error)]
pub enum SymclassError {
    #[error("projection is not idempotent")]
    NotIdempotent,
    #[error("projection is not hermitian")]
    NotHermitian,
    #[error("projection trace is not a nonnegative integer: {0}")]
    BadTrace(String),
    #[error("trace dimension {trace} disagrees with the multiplicity formula value {formula}")]
    TraceFormulaMismatch { trace: u64, formula: String },
    #[error("cyclic subspace dimension is not a nonnegative integer: {0}")]
    NonIntegralCyclicDim(String),
    #[error("spanning-set selection stalled in the orbit of {rep}: needed {needed}, reached rank {found}")]
    SpanningSelectionFailed { rep: usize, needed: u64, found: usize },
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A dense square matrix over the cyclotomic field, 0-indexed.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    size: usize,
    data: Vec<Cyclotomic>,
}

impl SquareMatrix {
    pub fn zero(size: usize) -> Self {
        SquareMatrix { size, data: vec![Cyclotomic::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = SquareMatrix::zero(size);
        for i in 0..size {
            *m.get_mut(i, i) = Cyclotomic::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &Cyclotomic {
        &self.data[row * self.size + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut Cyclotomic {
        &mut self.data[row * self.size + col]
    }

    pub fn matmul(&self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.size, rhs.size);
        let mut out = SquareMatrix::zero(self.size);
        for i in 0..self.size {
            for k in 0..self.size {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.size {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) = out.get(i, j) + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> SquareMatrix {
        let mut out = SquareMatrix::zero(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                *out.get_mut(j, i) = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for i in 0..self.size {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> SquareMatrix {
        SquareMatrix {
            size: self.size,
            data: self.data.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn add(&self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.size, rhs.size);
        SquareMatrix {
            size: self.size,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Exact rank by Gaussian elimination over the cyclotomic field.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let n = a.size;
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot_row) = (rank..n).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != rank {
                for j in 0..n {
                    let tmp = a.get(rank, j).clone();
                    *a.get_mut(rank, j) = a.get(pivot_row, j).clone();
                    *a.get_mut(pivot_row, j) = tmp;
                }
            }
            let inv = a.get(rank, col).inverse().expect("pivot is nonzero");
            for r in rank + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) * &inv;
                for j in col..n {
                    let delta = &factor * a.get(rank, j);
                    *a.get_mut(r, j) = a.get(r, j) - &delta;
                }
            }
            rank += 1;
            if rank == n {
                break;
            }
        }
        rank
    }
}

/// The matrix of the coordinate permutation operator: column `q` has a
/// single 1 in row `tau(q)` (1-based points, 0-based matrix indices).
pub fn permutation_action_matrix(tau: &Permutation) -> SquareMatrix {
    let m = tau.degree();
    let mut out = SquareMatrix::zero(m);
    for q in 1..=m {
        *out.get_mut(tau.apply(q) - 1, q - 1) = Cyclotomic::one();
    }
    out
}

/// The Cartesian symmetrizer of a character, restricted to the coordinate
/// index: entry `(p, q)` is `(deg/|G|) * sum of values over the elements
/// mapping q to p`. Idempotent and hermitian for genuine characters; those
/// laws are checked by [`Symmetrizer::verify_projection_laws`].
#[derive(Clone, Debug)]
pub struct Symmetrizer {
    character: Character,
    matrix: SquareMatrix,
}

/// Builds the symmetrizer matrix of a character.
pub fn build_symmetrizer(chi: &Character) -> Symmetrizer {
    let group = chi.group();
    let m = group.degree();
    let mut matrix = SquareMatrix::zero(m);
    for (idx, tau) in group.elements().iter().enumerate() {
        let v = chi.value_at(idx);
        if v.is_zero() {
            continue;
        }
        for q in 1..=m {
            let p = tau.apply(q);
            *matrix.get_mut(p - 1, q - 1) = matrix.get(p - 1, q - 1) + v;
        }
    }
    let scale = Rational::new((chi.degree() as i64).into(), (group.order() as i64).into());
    Symmetrizer { character: chi.clone(), matrix: matrix.scale(&scale) }
}

impl Symmetrizer {
    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    /// Entry at 1-based coordinate points `(p, q)`.
    pub fn entry(&self, p: usize, q: usize) -> &Cyclotomic {
        self.matrix.get(p - 1, q - 1)
    }

    /// Exact idempotency, hermitian symmetry, and integrality of the trace.
    pub fn verify_projection_laws(&self) -> Result<(), SymclassError> {
        if self.matrix.matmul(&self.matrix) != self.matrix {
            return Err(SymclassError::NotIdempotent);
        }
        if self.matrix.conj_transpose() != self.matrix {
            return Err(SymclassError::NotHermitian);
        }
        self.trace_units()?;
        Ok(())
    }

    /// The trace as a nonnegative integer: the dimension contributed per
    /// unit of `n`.
    pub fn trace_units(&self) -> Result<u64, SymclassError> {
        let t = self.matrix.trace();
        let r = t.to_rational().ok_or_else(|| SymclassError::BadTrace(t.to_string()))?;
        if !r.is_integer() || r.is_negative() {
            return Err(SymclassError::BadTrace(r.to_string()));
        }
        Ok(u64::try_from(r.to_integer()).expect("trace fits in u64"))
    }
}

/// Per-unit dimension of the symmetry class by the multiplicity formula:
/// `deg * sum over orbit representatives of [chi restricted, trivial]`.
/// The independent route against which the trace is checked.
pub fn multiplicity_dimension_units(chi: &Character) -> Result<Rational, SymclassError> {
    let od = chi.group().orbit_data();
    let mut acc = Rational::zero();
    for stab in &od.stabilizers {
        acc += restriction_multiplicity(chi, stab)?;
    }
    Ok(acc * rat(chi.degree() as i64))
}

/// Dimension of the symmetry class for an n-dimensional underlying space:
/// `n * trace`. The trace route and the multiplicity closed form are both
/// evaluated and must agree exactly; a mismatch aborts, since it means the
/// supplied values were not a character.
pub fn dim_symmetry_class(sym: &Symmetrizer, n: u64) -> Result<u64, SymclassError> {
    let trace = sym.trace_units()?;
    let formula = multiplicity_dimension_units(sym.character())?;
    if formula != rat(trace as i64) {
        return Err(SymclassError::TraceFormulaMismatch {
            trace,
            formula: formula.to_string(),
        });
    }
    Ok(n * trace)
}

/// Dimension of the cyclic subspace attached to the point `j`:
/// `deg * [chi restricted to the stabilizer of j, trivial]`. Zero exactly
/// when the multiplicity vanishes; it does not depend on the vector index.
pub fn dim_cyclic_subspace(chi: &Character, j: usize) -> Result<u64, SymclassError> {
    let stab = chi.group().stabilizer(j)?;
    let mult = restriction_multiplicity(chi, &stab)?;
    let dim = mult * rat(chi.degree() as i64);
    if !dim.is_integer() || dim.is_negative() {
        return Err(SymclassError::NonIntegralCyclicDim(dim.to_string()));
    }
    Ok(u64::try_from(dim.to_integer()).expect("dimension fits in u64"))
}

/// Gram entry of the standard symmetrized vectors at coordinate points
/// `j` and `s` (for one fixed vector index): zero when the points lie in
/// different orbits, otherwise `(deg/|G|) * sum over g in the stabilizer of
/// j of chi(g * tau^-1)` where `tau` is any element with `tau(j) = s`. The
/// choice of `tau` does not matter; that is verified as a test property.
pub fn gram_entry(chi: &Character, j: usize, s: usize) -> Result<Cyclotomic, SymclassError> {
    let group = chi.group();
    let degree = group.degree();
    for point in [j, s] {
        if point == 0 || point > degree {
            return Err(PermError::PointOutOfRange { point, degree }.into());
        }
    }
    let Some(tau) = group.elements().iter().find(|t| t.apply(j) == s) else {
        return Ok(Cyclotomic::zero()); // j and s lie in different orbits
    };
    let tau_inv = tau.inverse();
    let mut acc = Cyclotomic::zero();
    for g in group.stabilizer(j)? {
        let idx = group
            .element_index(&g.compose(&tau_inv))
            .expect("group is closed under composition");
        acc = &acc + chi.value_at(idx);
    }
    Ok(acc.scale(&ratio(chi.degree() as i64, group.order() as i64)))
}

/// Squared norm of the standard symmetrized vector at the point `j`:
/// `deg * [chi restricted, trivial] / [G : G_j]`, exactly as a rational.
pub fn norm_squared(chi: &Character, j: usize) -> Result<Rational, SymclassError> {
    let group = chi.group();
    let stab = group.stabilizer(j)?;
    let mult = restriction_multiplicity(chi, &stab)?;
    let index = rat(group.order() as i64) / rat(stab.len() as i64);
    Ok(mult * rat(chi.degree() as i64) / index)
}

/// Everything the dimension theory says about one orbit.
#[derive(Debug, Clone)]
pub struct OrbitSummary {
    pub representative: usize,
    pub orbit: Vec<usize>,
    pub stabilizer_order: usize,
    /// Multiplicity of the trivial character in the restriction to the
    /// stabilizer of the representative.
    pub multiplicity: Rational,
    /// Dimension of the cyclic subspace: degree times the multiplicity.
    pub cyclic_dim: u64,
    pub norm_squared: Rational,
    /// Greedily chosen points of the orbit whose symmetrized vectors span
    /// the cyclic subspace; empty when the multiplicity vanishes.
    pub spanning: Vec<usize>,
}

/// Dimension data for a whole symmetry class.
#[derive(Debug, Clone)]
pub struct SymmetryClassSummary {
    pub n: u64,
    pub per_orbit: Vec<OrbitSummary>,
    /// Representatives with nonvanishing multiplicity.
    pub dbar: Vec<usize>,
    /// Trace of the symmetrizer: dimension contributed per unit of `n`.
    pub dim_per_unit: u64,
    pub dim: u64,
}

impl SymmetryClassSummary {
    /// The chosen spanning points across all orbits, in orbit order.
    pub fn spanning_indices(&self) -> Vec<usize> {
        self.per_orbit.iter().flat_map(|o| o.spanning.iter().copied()).collect()
    }
}

/// Full dimension bookkeeping for `(G, chi)` with an n-dimensional
/// underlying space: orbit representatives, surviving representatives,
/// per-orbit multiplicities, cyclic-subspace dimensions, norms, and a
/// deterministic greedy choice of spanning points (ascending through each
/// orbit, keeping a point exactly when it raises the rank of the Gram
/// submatrix of the points kept so far).
pub fn summarize(chi: &Character, n: u64) -> Result<SymmetryClassSummary, SymclassError> {
    let sym = build_symmetrizer(chi);
    let dim = dim_symmetry_class(&sym, n)?;
    let dim_per_unit = sym.trace_units()?;
    let od = chi.group().orbit_data();
    let mut per_orbit = Vec::new();
    let mut dbar = Vec::new();
    for ((&rep, orbit), stab) in od.representatives.iter().zip(&od.orbits).zip(&od.stabilizers) {
        let multiplicity = restriction_multiplicity(chi, stab)?;
        let cyclic_dim = dim_cyclic_subspace(chi, rep)?;
        let norm = norm_squared(chi, rep)?;
        let spanning = if cyclic_dim == 0 {
            Vec::new()
        } else {
            dbar.push(rep);
            select_spanning_points(chi, orbit, cyclic_dim)?
        };
        per_orbit.push(OrbitSummary {
            representative: rep,
            orbit: orbit.clone(),
            stabilizer_order: stab.len(),
            multiplicity,
            cyclic_dim,
            norm_squared: norm,
            spanning,
        });
    }
    let total_spanning: usize = per_orbit.iter().map(|o| o.spanning.len()).sum();
    debug_assert_eq!(total_spanning as u64, dim_per_unit);
    Ok(SymmetryClassSummary { n, per_orbit, dbar, dim_per_unit, dim })
}

fn select_spanning_points(
    chi: &Character,
    orbit: &[usize],
    target: u64,
) -> Result<Vec<usize>, SymclassError> {
    // Gram matrix over the whole orbit, then greedy rank extension on its
    // principal submatrices.
    let k = orbit.len();
    let mut gram = SquareMatrix::zero(k);
    for (a, &pa) in orbit.iter().enumerate() {
        for (b, &pb) in orbit.iter().enumerate() {
            *gram.get_mut(a, b) = gram_entry(chi, pa, pb)?;
        }
    }
    let mut chosen: Vec<usize> = Vec::new(); // indices into `orbit`
    let mut rank = 0usize;
    for cand in 0..k {
        if rank as u64 == target {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(cand);
        let sub = principal_submatrix(&gram, &trial);
        let r = sub.rank();
        if r > rank {
            rank = r;
            chosen = trial;
        }
    }
    if rank as u64 != target {
        return Err(SymclassError::SpanningSelectionFailed {
            rep: orbit[0],
            needed: target,
            found: rank,
        });
    }
    Ok(chosen.into_iter().map(|i| orbit[i]).collect())
}

fn principal_submatrix(m: &SquareMatrix, idx: &[usize]) -> SquareMatrix {
    let mut out = SquareMatrix::zero(idx.len());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            *out.get_mut(a, b) = m.get(i, j).clone();
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

/// The full nm-by-nm symmetrizer, built from the block action of the
/// coordinate permutations rather than by replicating the m-sized matrix.
/// Oracle-scale only.
pub fn block_symmetrizer(chi: &Character, n: u64) -> SquareMatrix {
    let group = chi.group();
    let m = group.degree();
    let size = n as usize * m;
    let mut matrix = SquareMatrix::zero(size);
    for (idx, tau) in group.elements().iter().enumerate() {
        let v = chi.value_at(idx);
        if v.is_zero() {
            continue;
        }
        for a in 0..n as usize {
            for q in 1..=m {
                let row = a * m + tau.apply(q) - 1;
                let col = a * m + q - 1;
                *matrix.get_mut(row, col) = matrix.get(row, col) + v;
            }
        }
    }
    matrix.scale(&ratio(chi.degree() as i64, group.order() as i64))
}

/// Inner product of two columns of a matrix, conjugate-linear in the first
/// argument.
pub fn column_inner_product(m: &SquareMatrix, col_a: usize, col_b: usize) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for row in 0..m.size() {
        let a = m.get(row, col_a);
        if a.is_zero() {
            continue;
        }
        acc = &acc + &(&a.conj() * m.get(row, col_b));
    }
    acc
}

/// Brute-force Gram oracle: materializes the standard symmetrized vectors
/// as columns of the nm-sized block symmetrizer and takes the literal inner
/// product. `i, r` are 1-based vector indices; `j, s` 1-based coordinate
/// points. Equals the Kronecker delta of `(i, r)` times [`gram_entry`].
pub fn brute_force_gram(
    chi: &Character,
    n: u64,
    i: usize,
    j: usize,
    r: usize,
    s: usize,
) -> Cyclotomic {
    let m = chi.group().degree();
    let block = block_symmetrizer(chi, n);
    column_inner_product(&block, (i - 1) * m + (j - 1), (r - 1) * m + (s - 1))
}

/// The unreduced double-sum form of the Gram entry:
/// `(deg^2/|G|^2) * sum over sigma, tau of chi(sigma) * conj(chi(tau))`
/// restricted to pairs with `sigma^-1(j) = tau^-1(s)`, times the Kronecker
/// delta of `(i, r)`. Used as a cross-check identity for [`gram_entry`].
pub fn double_sum_gram(chi: &Character, i: usize, j: usize, r: usize, s: usize) -> Cyclotomic {
    if i != r {
        return Cyclotomic::zero();
    }
    let group = chi.group();
    let mut acc = Cyclotomic::zero();
    for (si, sigma) in group.elements().iter().enumerate() {
        let sj = sigma.inverse().apply(j);
        for (ti, tau) in group.elements().iter().enumerate() {
            if tau.inverse().apply(s) == sj {
                acc = &acc + &(chi.value_at(si) * &chi.value_at(ti).conj());
            }
        }
    }
    let g = group.order() as i64;
    let d = chi.degree() as i64;
    acc.scale(&(ratio(d, g) * ratio(d, g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars;
    use crate::perm::families::{self, CycleProductGroup, DihedralGroup};
    use crate::perm::PermutationGroup;
    use std::sync::Arc;

    fn arc(g: PermutationGroup) -> Arc<PermutationGroup> {
        Arc::new(g)
    }

    #[test]
    fn action_matrix_is_a_homomorphism() {
        let id = Permutation::identity(3);
        assert_eq!(permutation_action_matrix(&id), SquareMatrix::identity(3));

        let t = Permutation::parse_cycles("(1 2)", 2).unwrap();
        let m = permutation_action_matrix(&t);
        assert!(m.get(0, 0).is_zero() && m.get(1, 1).is_zero());
        assert_eq!(m.get(1, 0), &Cyclotomic::one());
        assert_eq!(m.get(0, 1), &Cyclotomic::one());

        let d8 = DihedralGroup::new(4).unwrap();
        for a in d8.group().elements() {
            for b in d8.group().elements() {
                let lhs = permutation_action_matrix(&a.compose(b));
                let rhs = permutation_action_matrix(a).matmul(&permutation_action_matrix(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sign_symmetrizer_on_two_points() {
        let s2 = arc(families::symmetric(2).unwrap());
        let eps = chars::sign_character(&s2);
        let sym = build_symmetrizer(&eps);
        let half = ratio(1, 2);
        assert_eq!(sym.entry(1, 1).to_rational().unwrap(), half);
        assert_eq!(sym.entry(2, 2).to_rational().unwrap(), half);
        assert_eq!(sym.entry(1, 2).to_rational().unwrap(), -half.clone());
        assert_eq!(sym.entry(2, 1).to_rational().unwrap(), -half);
        sym.verify_projection_laws().unwrap();
    }

    #[test]
    fn principal_symmetrizer_on_transitive_groups() {
        for group in [arc(families::symmetric(3).unwrap()), Arc::clone(DihedralGroup::new(5).unwrap().group())] {
            let m = group.degree();
            let sym = build_symmetrizer(&chars::principal(&group));
            for p in 1..=m {
                for q in 1..=m {
                    assert_eq!(sym.entry(p, q).to_rational().unwrap(), ratio(1, m as i64));
                }
            }
            sym.verify_projection_laws().unwrap();
        }
    }

    #[test]
    fn complete_families_sum_to_identity() {
        let d8 = DihedralGroup::new(4).unwrap();
        let mut total = SquareMatrix::zero(4);
        for (_, chi) in chars::dihedral_family(&d8) {
            let sym = build_symmetrizer(&chi);
            sym.verify_projection_laws().unwrap();
            total = total.add(sym.matrix());
        }
        assert_eq!(total, SquareMatrix::identity(4));

        let c6 = CycleProductGroup::new(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        let mut total = SquareMatrix::zero(5);
        for chi in chars::cyclic_family(&c6) {
            total = total.add(build_symmetrizer(&chi).matrix());
        }
        assert_eq!(total, SquareMatrix::identity(5));
    }

    #[test]
    fn symmetry_class_dimensions() {
        for m in 2..=5 {
            let sm = arc(families::symmetric(m).unwrap());
            let principal = chars::principal(&sm);
            assert_eq!(dim_symmetry_class(&build_symmetrizer(&principal), 3).unwrap(), 3);
            let eps = chars::sign_character(&sm);
            let expect = if m == 2 { 3 } else { 0 };
            assert_eq!(dim_symmetry_class(&build_symmetrizer(&eps), 3).unwrap(), expect);
        }
    }

    #[test]
    fn cyclic_subspace_dimensions() {
        // Linear characters give 1 on surviving representatives.
        let c6 = CycleProductGroup::new(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        let q0 = chars::cyclic_character(&c6, 0).unwrap();
        assert_eq!(dim_cyclic_subspace(&q0, 1).unwrap(), 1);

        // The degree-2 dihedral character contributes 2 at the base point.
        for m in [4usize, 6, 7] {
            let d = DihedralGroup::new(m).unwrap();
            let psi = chars::dihedral_character(&d, chars::DihedralCharId::Psi(1)).unwrap();
            assert_eq!(dim_cyclic_subspace(&psi, 1).unwrap(), 2, "m = {m}");
        }

        // Residue 3 on the order-6 cyclic group vanishes on the 3-cycle orbit.
        let q3 = chars::cyclic_character(&c6, 3).unwrap();
        assert_eq!(dim_cyclic_subspace(&q3, 1).unwrap(), 0);
    }

    #[test]
    fn gram_entries() {
        // Same-point entry is the squared norm.
        let d8 = DihedralGroup::new(4).unwrap();
        let psi = chars::dihedral_character(&d8, chars::DihedralCharId::Psi(1)).unwrap();
        for j in 1..=4 {
            let diag = gram_entry(&psi, j, j).unwrap();
            assert_eq!(diag.to_rational().unwrap(), norm_squared(&psi, j).unwrap());
        }

        // The adjacent-point entry in exact root-of-unity form.
        for m in [4usize, 5, 7, 8] {
            let d = DihedralGroup::new(m).unwrap();
            for h in 1..m.div_ceil(2) {
                if 2 * h >= m {
                    continue;
                }
                let psi = chars::dihedral_character(&d, chars::DihedralCharId::Psi(h)).unwrap();
                let got = gram_entry(&psi, 1, 2).unwrap();
                let expect = (&Cyclotomic::root_of_unity(m, h as i64)
                    + &Cyclotomic::root_of_unity(m, -(h as i64)))
                    .scale(&ratio(1, m as i64));
                assert_eq!(got, expect, "m = {m}, h = {h}");
            }
        }

        // Points in different orbits give exactly zero.
        let c6 = CycleProductGroup::new(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        let q1 = chars::cyclic_character(&c6, 1).unwrap();
        assert!(gram_entry(&q1, 1, 4).unwrap().is_zero());
    }

    #[test]
    fn gram_entry_is_independent_of_tau() {
        let d8 = DihedralGroup::new(4).unwrap();
        let psi = chars::dihedral_character(&d8, chars::DihedralCharId::Psi(1)).unwrap();
        let group = d8.group();
        for j in 1..=4usize {
            for s in 1..=4usize {
                let reference = gram_entry(&psi, j, s).unwrap();
                for tau in group.elements().iter().filter(|t| t.apply(j) == s) {
                    let tau_inv = tau.inverse();
                    let mut acc = Cyclotomic::zero();
                    for g in group.stabilizer(j).unwrap() {
                        let idx = group.element_index(&g.compose(&tau_inv)).unwrap();
                        acc = &acc + psi.value_at(idx);
                    }
                    let val = acc.scale(&ratio(psi.degree() as i64, group.order() as i64));
                    assert_eq!(val, reference, "j = {j}, s = {s}, tau = {tau}");
                }
            }
        }
    }

    #[test]
    fn gram_matches_projection_matrix_entries() {
        let d10 = DihedralGroup::new(5).unwrap();
        let psi = chars::dihedral_character(&d10, chars::DihedralCharId::Psi(2)).unwrap();
        let sym = build_symmetrizer(&psi);
        for j in 1..=5 {
            for s in 1..=5 {
                assert_eq!(&gram_entry(&psi, j, s).unwrap(), sym.entry(j, s));
            }
        }
    }

    #[test]
    fn norm_values() {
        // theta - 1 at the last point of the symmetric group.
        for m in 3..=6 {
            let sm = arc(families::symmetric(m).unwrap());
            let chi = chars::theta_minus_one(&sm).unwrap();
            assert_eq!(norm_squared(&chi, m).unwrap(), ratio(m as i64 - 1, m as i64));
        }
        // Degree-2 dihedral characters.
        let d8 = DihedralGroup::new(4).unwrap();
        let psi = chars::dihedral_character(&d8, chars::DihedralCharId::Psi(1)).unwrap();
        for j in 1..=4 {
            assert_eq!(norm_squared(&psi, j).unwrap(), ratio(1, 2));
        }
        for q in [5usize, 7] {
            let d = DihedralGroup::new(q).unwrap();
            for h in 1..q.div_ceil(2) {
                if 2 * h >= q {
                    continue;
                }
                let psi = chars::dihedral_character(&d, chars::DihedralCharId::Psi(h)).unwrap();
                assert_eq!(norm_squared(&psi, 1).unwrap(), ratio(2, q as i64));
            }
        }
    }

    #[test]
    fn summaries() {
        // A linear character keeps one spanning point per surviving orbit.
        let c6 = CycleProductGroup::new(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        let q0 = chars::cyclic_character(&c6, 0).unwrap();
        let s = summarize(&q0, 2).unwrap();
        assert_eq!(s.dbar, vec![1, 4]);
        assert_eq!(s.dim, 4);
        for o in &s.per_orbit {
            assert_eq!(o.spanning.len(), 1);
        }

        // The dihedral degree-2 character spans with two points of the
        // single orbit.
        let d8 = DihedralGroup::new(4).unwrap();
        let psi = chars::dihedral_character(&d8, chars::DihedralCharId::Psi(1)).unwrap();
        let s = summarize(&psi, 2).unwrap();
        assert_eq!(s.dbar, vec![1]);
        assert_eq!(s.dim, 4);
        assert_eq!(s.per_orbit[0].spanning.len(), 2);

        // The sign character on three points has an empty surviving set.
        let s3 = arc(families::symmetric(3).unwrap());
        let eps = chars::sign_character(&s3);
        let s = summarize(&eps, 2).unwrap();
        assert!(s.dbar.is_empty());
        assert_eq!(s.dim, 0);
    }

    #[test]
    fn brute_force_oracle_agrees() {
        // Exhaustive comparison on the dihedral group of degree 4, n = 2.
        let d8 = DihedralGroup::new(4).unwrap();
        let psi = chars::dihedral_character(&d8, chars::DihedralCharId::Psi(1)).unwrap();
        let n = 2u64;
        let m = 4usize;
        let block = block_symmetrizer(&psi, n);
        for i in 1..=n as usize {
            for r in 1..=n as usize {
                for j in 1..=m {
                    for s in 1..=m {
                        let oracle =
                            column_inner_product(&block, (i - 1) * m + (j - 1), (r - 1) * m + (s - 1));
                        let expect = if i == r {
                            gram_entry(&psi, j, s).unwrap()
                        } else {
                            Cyclotomic::zero()
                        };
                        assert_eq!(oracle, expect, "i={i} r={r} j={j} s={s}");
                    }
                }
            }
        }

        // Diagonal of the oracle matches the closed-form norm.
        let s3 = arc(families::symmetric(3).unwrap());
        let chi = chars::theta_minus_one(&s3).unwrap();
        for j in 1..=3 {
            let oracle = brute_force_gram(&chi, 2, 1, j, 1, j);
            assert_eq!(
                oracle.to_rational().unwrap(),
                norm_squared(&chi, j).unwrap(),
                "j = {j}"
            );
        }
    }

    #[test]
    fn double_sum_form_agrees() {
        let c6 = CycleProductGroup::new(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        for q in 0..6 {
            let chi = chars::cyclic_character(&c6, q).unwrap();
            for j in 1..=5 {
                for s in 1..=5 {
                    assert_eq!(
                        double_sum_gram(&chi, 1, j, 1, s),
                        gram_entry(&chi, j, s).unwrap(),
                        "q={q} j={j} s={s}"
                    );
                    assert!(double_sum_gram(&chi, 1, j, 2, s).is_zero());
                }
            }
        }
    }

    #[test]
    fn rank_of_small_matrices() {
        let mut m = SquareMatrix::zero(3);
        *m.get_mut(0, 0) = Cyclotomic::one();
        *m.get_mut(1, 1) = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(m.rank(), 2);
        assert_eq!(SquareMatrix::identity(4).rank(), 4);
        assert_eq!(SquareMatrix::zero(4).rank(), 0);

        // A rank-1 outer product over the cyclotomics.
        let z = Cyclotomic::root_of_unity(5, 1);
        let v = [Cyclotomic::one(), z.clone(), &z * &z];
        let mut outer = SquareMatrix::zero(3);
        for i in 0..3 {
            for j in 0..3 {
                *outer.get_mut(i, j) = &v[i] * &v[j].conj();
            }
        }
        assert_eq!(outer.rank(), 1);
    }
}
