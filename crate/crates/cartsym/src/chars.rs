//! Class functions with exact cyclotomic values, and the concrete character
//! families used throughout: principal, sign, the fixed-point character
//! theta and theta - 1, linear characters of cyclic groups and their
//! products, and the dihedral linear and degree-2 characters.
//!
//! Characters are stored densely as one value per group element; groups here
//! are small and whole-group sums dominate, so class-indexed compression
//! would buy nothing.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, Signed, Zero};
use thiserror::Error;

use crate::cyclo::{rat, ratio, Cyclotomic, Rational};
use crate::perm::families::{CycleProductGroup, DihedralGroup, ProductOfCyclicsGroup};
use crate::perm::{PermError, Permutation, PermutationGroup};

#[derive(Debug, Error)]
pub enum CharError {
    #[error("characters live on different groups")]
    GroupMismatch,
    #[error("expected {expect} values, got {got}")]
    WrongLength { expect: usize, got: usize },
    #[error("values are not constant on conjugacy classes: {a} and {b} differ")]
    NotClassFunction { a: String, b: String },
    #[error("conjugate-inverse symmetry fails at {0}")]
    ConjSymmetry(String),
    #[error("value at the identity must be a positive integer, got {0}")]
    BadDegree(String),
    #[error("group is not 2-transitive: the fixed-point character minus one has norm {0}, not 1")]
    NotTwoTransitive(String),
    #[error("residue {q} out of range for modulus {m}")]
    ResidueOutOfRange { q: usize, m: usize },
    #[error("expected {expect} residues, got {got}")]
    ResidueCount { expect: usize, got: usize },
    #[error("linear dihedral characters are numbered 1 to 4, got {0}")]
    BadLambdaIndex(u8),
    #[error("lambda:3 and lambda:4 require even degree, got {0}")]
    OddDegreeLambda(usize),
    #[error("reflection character needs 0 < h < m/2, got h = {h} with m = {m}")]
    PsiOutOfRange { h: usize, m: usize },
    #[error("restriction multiplicity is not rational: {0}")]
    IrrationalMultiplicity(String),
    #[error("restriction multiplicity of a character must be a nonnegative integer, got {0}")]
    NonIntegralMultiplicity(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A class function on a permutation group with exact cyclotomic values,
/// one per element in enumeration order. Immutable once built.
#[derive(Clone, Debug)]
pub struct Character {
    group: Arc<PermutationGroup>,
    values: Vec<Cyclotomic>,
    label: String,
    degree: u64,
    certified: bool,
}

impl Character {
    /// Validates and wraps a class function: the value list must cover the
    /// group, be constant on conjugacy classes, satisfy
    /// `value(g^-1) = conj(value(g))`, and take a positive integer at the
    /// identity. The result is *not* certified as a character of an actual
    /// representation; see [`Character::is_certified`].
    pub fn from_class_function(
        group: Arc<PermutationGroup>,
        values: Vec<Cyclotomic>,
        label: impl Into<String>,
    ) -> Result<Self, CharError> {
        if values.len() != group.order() {
            return Err(CharError::WrongLength { expect: group.order(), got: values.len() });
        }
        let degree = integer_degree(&values[0])?;
        for class in group.conjugacy_classes() {
            let first = class[0];
            for &other in &class[1..] {
                if values[first] != values[other] {
                    return Err(CharError::NotClassFunction {
                        a: group.elements()[first].to_string(),
                        b: group.elements()[other].to_string(),
                    });
                }
            }
        }
        for (i, v) in values.iter().enumerate() {
            let inv = group.inverse_index(i);
            if values[inv] != v.conj() {
                return Err(CharError::ConjSymmetry(group.elements()[i].to_string()));
            }
        }
        Ok(Character { group, values, label: label.into(), degree, certified: false })
    }

    /// Wraps values with no validation whatsoever (beyond a sane degree).
    /// Exists so the verification suite can inject deliberately corrupted
    /// characters and watch the right check fail.
    pub fn unchecked(
        group: Arc<PermutationGroup>,
        values: Vec<Cyclotomic>,
        label: impl Into<String>,
    ) -> Self {
        assert_eq!(values.len(), group.order());
        let degree = integer_degree(&values[0]).expect("identity value must stay a positive integer");
        Character { group, values, label: label.into(), degree, certified: false }
    }

    /// Internal constructor for the built-in families: validates like
    /// [`Character::from_class_function`] and certifies the result.
    fn builtin(
        group: Arc<PermutationGroup>,
        values: Vec<Cyclotomic>,
        label: impl Into<String>,
    ) -> Self {
        let mut c = Character::from_class_function(group, values, label)
            .expect("built-in character family produced an invalid class function");
        c.certified = true;
        c
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Degree, i.e. the value at the identity.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// True when the values are known to come from an actual representation
    /// (all built-in families), false for user-supplied class functions.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Value on the element at a group index.
    pub fn value_at(&self, element_index: usize) -> &Cyclotomic {
        &self.values[element_index]
    }

    pub fn value_of(&self, p: &Permutation) -> Option<&Cyclotomic> {
        self.group.element_index(p).map(|i| &self.values[i])
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

fn integer_degree(v: &Cyclotomic) -> Result<u64, CharError> {
    let r = v.to_rational().ok_or_else(|| CharError::BadDegree(v.to_string()))?;
    if r.is_integer() && r.numer() > &BigInt::zero() {
        Ok(r.numer().try_into().expect("degree fits in u64"))
    } else {
        Err(CharError::BadDegree(v.to_string()))
    }
}

pub(crate) fn same_group(a: &Arc<PermutationGroup>, b: &Arc<PermutationGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.degree() == b.degree() && a.elements() == b.elements())
}

/// The principal character: 1 everywhere.
pub fn principal(group: &Arc<PermutationGroup>) -> Character {
    let values = vec![Cyclotomic::one(); group.order()];
    Character::builtin(Arc::clone(group), values, "principal")
}

/// The restriction of the alternating character of `S_m`.
pub fn sign_character(group: &Arc<PermutationGroup>) -> Character {
    let values = group.elements().iter().map(|g| Cyclotomic::from_int(g.sign())).collect();
    Character::builtin(Arc::clone(group), values, "sign")
}

/// The fixed-point character: the number of points each element fixes.
pub fn fixed_point_theta(group: &Arc<PermutationGroup>) -> Character {
    let values = group
        .elements()
        .iter()
        .map(|g| Cyclotomic::from_int(g.fixed_points() as i64))
        .collect();
    Character::builtin(Arc::clone(group), values, "theta")
}

/// The fixed-point character minus one. Irreducible exactly when the group
/// is 2-transitive, which is verified by an exact norm computation.
pub fn theta_minus_one(group: &Arc<PermutationGroup>) -> Result<Character, CharError> {
    let one = Cyclotomic::one();
    let values: Vec<Cyclotomic> = group
        .elements()
        .iter()
        .map(|g| &Cyclotomic::from_int(g.fixed_points() as i64) - &one)
        .collect();
    let c = Character::from_class_function(Arc::clone(group), values, "theta-1")?;
    let norm = inner_product(&c, &c)?;
    if norm != Cyclotomic::one() {
        return Err(CharError::NotTwoTransitive(norm.to_string()));
    }
    let mut c = c;
    c.certified = true;
    Ok(c)
}

/// The linear character of a cyclic group sending the designated generator
/// to `zeta_M^q`, where `M` is the generator's order.
pub fn cyclic_character(g: &CycleProductGroup, q: usize) -> Result<Character, CharError> {
    let m = g.modulus();
    if q >= m {
        return Err(CharError::ResidueOutOfRange { q, m });
    }
    let values = (0..g.group().order())
        .map(|idx| Cyclotomic::root_of_unity(m, (q * g.power(idx)) as i64))
        .collect();
    Ok(Character::builtin(Arc::clone(g.group()), values, format!("q:{q}")))
}

/// All irreducible characters of the cyclic group, indexed by residue.
pub fn cyclic_family(g: &CycleProductGroup) -> Vec<Character> {
    (0..g.modulus())
        .map(|q| cyclic_character(g, q).expect("residue in range"))
        .collect()
}

/// The linear character of an internal direct product of cyclic groups with
/// value `prod over l of zeta_(m_l)^(q_l * j_l)` on the element with
/// exponent tuple `(j_1, ..., j_k)`.
pub fn product_cyclic_character(
    g: &ProductOfCyclicsGroup,
    qs: &[usize],
) -> Result<Character, CharError> {
    let orders = g.orders();
    if qs.len() != orders.len() {
        return Err(CharError::ResidueCount { expect: orders.len(), got: qs.len() });
    }
    for (&q, &m) in qs.iter().zip(&orders) {
        if q >= m {
            return Err(CharError::ResidueOutOfRange { q, m });
        }
    }
    let values = (0..g.group().order())
        .map(|idx| {
            let tuple = g.exponents(idx);
            let mut v = Cyclotomic::one();
            for ((&j, &q), &m) in tuple.iter().zip(qs).zip(&orders) {
                v = &v * &Cyclotomic::root_of_unity(m, (q * j) as i64);
            }
            v
        })
        .collect();
    let label = format!(
        "qtuple:{}",
        qs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    );
    Ok(Character::builtin(Arc::clone(g.group()), values, label))
}

/// All residue tuples for the product of cyclic groups, in mixed-radix order.
pub fn product_cyclic_family(g: &ProductOfCyclicsGroup) -> Vec<(Vec<usize>, Character)> {
    let orders = g.orders();
    let total: usize = orders.iter().product();
    let mut out = Vec::with_capacity(total);
    for mut n in 0..total {
        let mut qs = Vec::with_capacity(orders.len());
        for &m in orders.iter().rev() {
            qs.push(n % m);
            n /= m;
        }
        qs.reverse();
        let c = product_cyclic_character(g, &qs).expect("tuple in range");
        out.push((qs, c));
    }
    out
}

/// Identifies one irreducible character of a dihedral group: a linear
/// `lambda` by index, or the degree-2 character `psi_h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralCharId {
    Lambda(u8),
    Psi(usize),
}

impl fmt::Display for DihedralCharId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralCharId::Lambda(i) => write!(f, "lambda:{i}"),
            DihedralCharId::Psi(h) => write!(f, "psi:{h}"),
        }
    }
}

/// An irreducible character of the dihedral group of degree `m`.
///
/// The linear characters follow the standard table, with the index
/// convention pinned by the dimension outcomes of the symmetry classes:
/// `lambda:1` and `lambda:3` give dimension `n`, `lambda:2` and `lambda:4`
/// give 0. A construction-time self-test enforces that binding. `psi:h`
/// takes `zeta_m^(kh) + zeta_m^(-kh)` on the k-th rotation (an exact form of
/// `2 cos(2*pi*k*h/m)`) and 0 on reflections; cosines are never floats here.
pub fn dihedral_character(d: &DihedralGroup, id: DihedralCharId) -> Result<Character, CharError> {
    let m = d.degree();
    let n_elems = d.group().order();
    let mut values = vec![Cyclotomic::zero(); n_elems];
    match id {
        DihedralCharId::Lambda(i) => {
            if !(1..=4).contains(&i) {
                return Err(CharError::BadLambdaIndex(i));
            }
            if (i == 3 || i == 4) && !m.is_multiple_of(2) {
                return Err(CharError::OddDegreeLambda(m));
            }
            for (idx, value) in values.iter_mut().enumerate() {
                let w = d.word(idx);
                let even = w.rotation_steps.is_multiple_of(2);
                let v: i64 = match (i, w.reflected) {
                    (1, _) => 1,
                    (2, false) => 1,
                    (2, true) => -1,
                    (3, _) => if even { 1 } else { -1 },
                    (4, false) => if even { 1 } else { -1 },
                    (4, true) => if even { -1 } else { 1 },
                    _ => unreachable!(),
                };
                *value = Cyclotomic::from_int(v);
            }
        }
        DihedralCharId::Psi(h) => {
            if h == 0 || 2 * h >= m {
                return Err(CharError::PsiOutOfRange { h, m });
            }
            for (idx, value) in values.iter_mut().enumerate() {
                let w = d.word(idx);
                *value = if w.reflected {
                    Cyclotomic::zero()
                } else {
                    let kh = w.rotation_steps as i64 * h as i64;
                    &Cyclotomic::root_of_unity(m, kh) + &Cyclotomic::root_of_unity(m, -kh)
                };
            }
        }
    }
    let c = Character::builtin(Arc::clone(d.group()), values, id.to_string());
    // Self-test for the index binding: the per-unit dimension of the
    // symmetry class is (deg/2)*(deg + value(s)), and the convention is
    // fixed by requiring 1, 0, 1, 0 on the linear characters and 2 on psi.
    let s_val = c
        .value_of(d.reflection())
        .expect("reflection is a member")
        .to_rational()
        .expect("value at the reflection is rational");
    let deg = rat(c.degree() as i64);
    let per_unit = &deg / rat(2) * (&deg + &s_val);
    let expected = match id {
        DihedralCharId::Lambda(1) | DihedralCharId::Lambda(3) => rat(1),
        DihedralCharId::Lambda(_) => rat(0),
        DihedralCharId::Psi(_) => rat(2),
    };
    assert_eq!(per_unit, expected, "dihedral character index binding violated for {id}");
    Ok(c)
}

/// The complete irreducible family of a dihedral group: 4 linear characters
/// for even degree (2 for odd), plus every `psi_h` with `0 < h < m/2`.
pub fn dihedral_family(d: &DihedralGroup) -> Vec<(DihedralCharId, Character)> {
    let m = d.degree();
    let mut ids: Vec<DihedralCharId> = if m.is_multiple_of(2) {
        (1..=4).map(DihedralCharId::Lambda).collect()
    } else {
        (1..=2).map(DihedralCharId::Lambda).collect()
    };
    ids.extend((1..m.div_ceil(2)).map(DihedralCharId::Psi));
    ids.into_iter()
        .map(|id| (id, dihedral_character(d, id).expect("family ids are in range")))
        .collect()
}

/// Exact inner product of class functions:
/// `(1/|G|) * sum over g of a(g) * conj(b(g))`.
pub fn inner_product(a: &Character, b: &Character) -> Result<Cyclotomic, CharError> {
    if !same_group(a.group(), b.group()) {
        return Err(CharError::GroupMismatch);
    }
    let mut acc = Cyclotomic::zero();
    for (x, y) in a.values.iter().zip(&b.values) {
        acc = &acc + &(x * &y.conj());
    }
    Ok(acc.scale(&ratio(1, a.group.order() as i64)))
}

/// Multiplicity of the trivial character in the restriction of `chi` to the
/// subgroup `h`: `(1/|H|) * sum over h of chi(h)`. For certified characters
/// the result is checked to be a nonnegative integer.
pub fn restriction_multiplicity(chi: &Character, h: &[Permutation]) -> Result<Rational, CharError> {
    if !chi.group.is_subgroup(h) {
        return Err(PermError::NotASubgroup.into());
    }
    let mut acc = Cyclotomic::zero();
    for p in h {
        let idx = chi.group.element_index(p).expect("subgroup members are in the group");
        acc = &acc + &chi.values[idx];
    }
    let sum = acc
        .to_rational()
        .ok_or_else(|| CharError::IrrationalMultiplicity(acc.to_string()))?;
    let mult = sum / rat(h.len() as i64);
    if chi.certified && (!mult.is_integer() || mult.is_negative()) {
        return Err(CharError::NonIntegralMultiplicity(mult.to_string()));
    }
    Ok(mult)
}
