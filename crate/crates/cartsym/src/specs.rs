//! The group and character specification grammar shared by the command-line
//! front end and the verification matrix.
//!
//! Group specs are `family:payload`:
//!
//! ```text
//! symmetric:m      alternating:m      dihedral:m
//! cycleprod:"(1 2 3)(4 5)"[@degree]
//! prodcyc:"(1 2 3);(4 5)"[@degree]
//! gens:"(1 2),(1 2 3)"@degree
//! ```
//!
//! Quotes are optional (they are usually consumed by the shell anyway); when
//! `@degree` is omitted the largest moved point is used. Character specs are
//! `principal`, `sign`, `theta-1`, `q:<int>`, `qtuple:<int,int,...>`,
//! `lambda:<1..4>`, `psi:<h>`, `file:<path>`, or `all`.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chars::{self, same_group, Character, CharError, DihedralCharId};
use crate::cyclo::Cyclotomic;
use crate::perm::families::{
    alternating, symmetric, CycleProductGroup, DihedralGroup, ProductOfCyclicsGroup,
};
use crate::perm::{parse_cycle_list, PermError, Permutation, PermutationGroup, DEFAULT_CLOSURE_CAP};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("unknown group family in '{0}': expected symmetric:, alternating:, dihedral:, cycleprod:, prodcyc: or gens:")]
    UnknownFamily(String),
    #[error("bad group spec '{spec}': {msg}")]
    BadGroupSpec { spec: String, msg: String },
    #[error("unknown character spec '{0}': expected principal, sign, theta-1, q:<int>, qtuple:<ints>, lambda:<1..4>, psi:<h>, file:<path> or all")]
    UnknownCharacter(String),
    #[error("character '{charspec}' does not apply to group '{group}': {msg}")]
    CharacterGroupMismatch { charspec: String, group: String, msg: String },
    #[error("character file '{path}': {msg}")]
    CharacterFile { path: String, msg: String },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// A parsed group specification, printable back to its canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize),
    CycleProduct { cycles: Vec<Vec<usize>>, degree: usize },
    ProductOfCyclics { cycles: Vec<Vec<usize>>, degree: usize },
    Generated { gens: Vec<Vec<Vec<usize>>>, degree: usize },
}

fn cycles_to_string(cycles: &[Vec<usize>]) -> String {
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(ToString::to_string).collect();
            format!("({})", pts.join(" "))
        })
        .collect()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(m) => write!(f, "symmetric:{m}"),
            GroupSpec::Alternating(m) => write!(f, "alternating:{m}"),
            GroupSpec::Dihedral(m) => write!(f, "dihedral:{m}"),
            GroupSpec::CycleProduct { cycles, degree } => {
                write!(f, "cycleprod:{}@{degree}", cycles_to_string(cycles))
            }
            GroupSpec::ProductOfCyclics { cycles, degree } => {
                let parts: Vec<String> =
                    cycles.iter().map(|c| cycles_to_string(std::slice::from_ref(c))).collect();
                write!(f, "prodcyc:{}@{degree}", parts.join(";"))
            }
            GroupSpec::Generated { gens, degree } => {
                let parts: Vec<String> = gens.iter().map(|g| cycles_to_string(g)).collect();
                write!(f, "gens:{}@{degree}", parts.join(","))
            }
        }
    }
}

fn strip_quotes(s: &str) -> &str {
    let s = s.trim();
    if s.len() >= 2 && s.starts_with('"') && s.ends_with('"') {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

/// Splits `payload` into the body and an optional trailing `@degree`.
fn split_degree(payload: &str, spec: &str) -> Result<(String, Option<usize>), SpecError> {
    match payload.rsplit_once('@') {
        Some((body, deg)) => {
            let degree = deg.trim().parse::<usize>().map_err(|_| SpecError::BadGroupSpec {
                spec: spec.into(),
                msg: format!("bad degree '{deg}'"),
            })?;
            Ok((strip_quotes(body).to_string(), Some(degree)))
        }
        None => Ok((strip_quotes(payload).to_string(), None)),
    }
}

fn max_point(cycles: &[Vec<usize>]) -> usize {
    cycles.iter().flat_map(|c| c.iter().copied()).max().unwrap_or(1)
}

/// Splits on `sep` at parenthesis depth zero, so cycle-internal commas
/// survive inside `gens:` payloads.
fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            c if c == sep && depth == 0 => {
                parts.push(std::mem::take(&mut current));
            }
            c => current.push(c),
        }
    }
    parts.push(current);
    parts
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let text = text.trim();
    let (family, payload) = text
        .split_once(':')
        .ok_or_else(|| SpecError::UnknownFamily(text.to_string()))?;
    let int_payload = |payload: &str| -> Result<usize, SpecError> {
        payload.trim().parse().map_err(|_| SpecError::BadGroupSpec {
            spec: text.to_string(),
            msg: format!("'{payload}' is not a positive integer"),
        })
    };
    match family {
        "symmetric" => Ok(GroupSpec::Symmetric(int_payload(payload)?)),
        "alternating" => Ok(GroupSpec::Alternating(int_payload(payload)?)),
        "dihedral" => Ok(GroupSpec::Dihedral(int_payload(payload)?)),
        "cycleprod" => {
            let (body, degree) = split_degree(payload, text)?;
            let cycles = parse_cycle_list(&body)?;
            if cycles.is_empty() {
                return Err(SpecError::BadGroupSpec {
                    spec: text.to_string(),
                    msg: "cycleprod needs at least one cycle".into(),
                });
            }
            let degree = degree.unwrap_or_else(|| max_point(&cycles));
            Ok(GroupSpec::CycleProduct { cycles, degree })
        }
        "prodcyc" => {
            let (body, degree) = split_degree(payload, text)?;
            let mut cycles = Vec::new();
            for part in split_top_level(&body, ';') {
                let mut parsed = parse_cycle_list(part.trim())?;
                if parsed.len() != 1 {
                    return Err(SpecError::BadGroupSpec {
                        spec: text.to_string(),
                        msg: format!("each prodcyc factor must be a single cycle, got '{part}'"),
                    });
                }
                cycles.push(parsed.remove(0));
            }
            let degree = degree.unwrap_or_else(|| max_point(&cycles));
            Ok(GroupSpec::ProductOfCyclics { cycles, degree })
        }
        "gens" => {
            let (body, degree) = split_degree(payload, text)?;
            let Some(degree) = degree else {
                return Err(SpecError::BadGroupSpec {
                    spec: text.to_string(),
                    msg: "gens: requires an explicit @degree".into(),
                });
            };
            let gens = split_top_level(&body, ',')
                .iter()
                .map(|p| parse_cycle_list(p.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            if gens.is_empty() {
                return Err(SpecError::BadGroupSpec {
                    spec: text.to_string(),
                    msg: "gens: needs at least one permutation".into(),
                });
            }
            Ok(GroupSpec::Generated { gens, degree })
        }
        other => Err(SpecError::UnknownFamily(other.to_string())),
    }
}

/// A resolved group: the enumerated group plus whatever family structure the
/// character constructors need.
#[derive(Debug, Clone)]
pub enum GroupHandle {
    Symmetric { m: usize, group: Arc<PermutationGroup> },
    Alternating { m: usize, group: Arc<PermutationGroup> },
    Dihedral(DihedralGroup),
    CycleProduct(CycleProductGroup),
    ProductOfCyclics(ProductOfCyclicsGroup),
    Generated { group: Arc<PermutationGroup> },
}

impl GroupHandle {
    pub fn group(&self) -> &Arc<PermutationGroup> {
        match self {
            GroupHandle::Symmetric { group, .. } => group,
            GroupHandle::Alternating { group, .. } => group,
            GroupHandle::Dihedral(d) => d.group(),
            GroupHandle::CycleProduct(c) => c.group(),
            GroupHandle::ProductOfCyclics(p) => p.group(),
            GroupHandle::Generated { group } => group,
        }
    }

    /// The canonical spec this handle came from.
    pub fn spec(&self) -> GroupSpec {
        match self {
            GroupHandle::Symmetric { m, .. } => GroupSpec::Symmetric(*m),
            GroupHandle::Alternating { m, .. } => GroupSpec::Alternating(*m),
            GroupHandle::Dihedral(d) => GroupSpec::Dihedral(d.degree()),
            GroupHandle::CycleProduct(c) => GroupSpec::CycleProduct {
                cycles: c.cycle_supports().to_vec(),
                degree: c.group().degree(),
            },
            GroupHandle::ProductOfCyclics(p) => GroupSpec::ProductOfCyclics {
                cycles: p.supports().to_vec(),
                degree: p.group().degree(),
            },
            GroupHandle::Generated { group } => GroupSpec::Generated {
                gens: group.generators().iter().map(|g| g.cycles()).collect(),
                degree: group.degree(),
            },
        }
    }

    pub fn spec_string(&self) -> String {
        self.spec().to_string()
    }

    /// The complete built-in irreducible family for this group, when one
    /// exists: cyclic, product-of-cyclics and dihedral families always, and
    /// the symmetric group on 2 or 3 points whose irreducibles are all
    /// reachable through principal, sign and the fixed-point character.
    pub fn complete_family(&self) -> Option<Vec<Character>> {
        match self {
            GroupHandle::CycleProduct(c) => Some(chars::cyclic_family(c)),
            GroupHandle::ProductOfCyclics(p) => {
                Some(chars::product_cyclic_family(p).into_iter().map(|(_, c)| c).collect())
            }
            GroupHandle::Dihedral(d) => {
                Some(chars::dihedral_family(d).into_iter().map(|(_, c)| c).collect())
            }
            GroupHandle::Symmetric { m: 2, group } => {
                Some(vec![chars::principal(group), chars::sign_character(group)])
            }
            GroupHandle::Symmetric { m: 3, group } => Some(vec![
                chars::principal(group),
                chars::sign_character(group),
                chars::theta_minus_one(group).expect("the symmetric group is 2-transitive"),
            ]),
            _ => None,
        }
    }
}

pub fn resolve_group(spec: &GroupSpec) -> Result<GroupHandle, SpecError> {
    match spec {
        GroupSpec::Symmetric(m) => Ok(GroupHandle::Symmetric {
            m: *m,
            group: Arc::new(symmetric(*m)?),
        }),
        GroupSpec::Alternating(m) => Ok(GroupHandle::Alternating {
            m: *m,
            group: Arc::new(alternating(*m)?),
        }),
        GroupSpec::Dihedral(m) => Ok(GroupHandle::Dihedral(DihedralGroup::new(*m)?)),
        GroupSpec::CycleProduct { cycles, degree } => {
            Ok(GroupHandle::CycleProduct(CycleProductGroup::new(cycles, *degree)?))
        }
        GroupSpec::ProductOfCyclics { cycles, degree } => {
            Ok(GroupHandle::ProductOfCyclics(ProductOfCyclicsGroup::new(cycles, *degree)?))
        }
        GroupSpec::Generated { gens, degree } => {
            let perms = gens
                .iter()
                .map(|cycles| Permutation::from_cycles(cycles, *degree))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GroupHandle::Generated {
                group: Arc::new(PermutationGroup::generate(&perms, DEFAULT_CLOSURE_CAP)?),
            })
        }
    }
}

/// A parsed character specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharSpec {
    Principal,
    Sign,
    ThetaMinusOne,
    Q(usize),
    QTuple(Vec<usize>),
    Lambda(u8),
    Psi(usize),
    File(String),
    All,
}

impl fmt::Display for CharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSpec::Principal => write!(f, "principal"),
            CharSpec::Sign => write!(f, "sign"),
            CharSpec::ThetaMinusOne => write!(f, "theta-1"),
            CharSpec::Q(q) => write!(f, "q:{q}"),
            CharSpec::QTuple(qs) => {
                let parts: Vec<String> = qs.iter().map(ToString::to_string).collect();
                write!(f, "qtuple:{}", parts.join(","))
            }
            CharSpec::Lambda(i) => write!(f, "lambda:{i}"),
            CharSpec::Psi(h) => write!(f, "psi:{h}"),
            CharSpec::File(p) => write!(f, "file:{p}"),
            CharSpec::All => write!(f, "all"),
        }
    }
}

pub fn parse_char_spec(text: &str) -> Result<CharSpec, SpecError> {
    let text = text.trim();
    match text {
        "principal" => return Ok(CharSpec::Principal),
        "sign" => return Ok(CharSpec::Sign),
        "theta-1" => return Ok(CharSpec::ThetaMinusOne),
        "all" => return Ok(CharSpec::All),
        _ => {}
    }
    let Some((kind, payload)) = text.split_once(':') else {
        return Err(SpecError::UnknownCharacter(text.to_string()));
    };
    let bad = || SpecError::UnknownCharacter(text.to_string());
    match kind {
        "q" => payload.trim().parse().map(CharSpec::Q).map_err(|_| bad()),
        "lambda" => payload.trim().parse().map(CharSpec::Lambda).map_err(|_| bad()),
        "psi" => payload.trim().parse().map(CharSpec::Psi).map_err(|_| bad()),
        "qtuple" => payload
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map(CharSpec::QTuple)
            .map_err(|_| bad()),
        "file" => Ok(CharSpec::File(payload.trim().to_string())),
        _ => Err(bad()),
    }
}

/// Resolves a character spec against a group. `All` is rejected here; the
/// callers that accept it expand the family themselves.
pub fn resolve_character(handle: &GroupHandle, spec: &CharSpec) -> Result<Character, SpecError> {
    let mismatch = |msg: &str| SpecError::CharacterGroupMismatch {
        charspec: spec.to_string(),
        group: handle.spec_string(),
        msg: msg.to_string(),
    };
    match spec {
        CharSpec::Principal => Ok(chars::principal(handle.group())),
        CharSpec::Sign => Ok(chars::sign_character(handle.group())),
        CharSpec::ThetaMinusOne => Ok(chars::theta_minus_one(handle.group())?),
        CharSpec::Q(q) => match handle {
            GroupHandle::CycleProduct(c) => Ok(chars::cyclic_character(c, *q)?),
            _ => Err(mismatch("q:<int> needs a cycleprod group")),
        },
        CharSpec::QTuple(qs) => match handle {
            GroupHandle::ProductOfCyclics(p) => Ok(chars::product_cyclic_character(p, qs)?),
            _ => Err(mismatch("qtuple:<ints> needs a prodcyc group")),
        },
        CharSpec::Lambda(i) => match handle {
            GroupHandle::Dihedral(d) => Ok(chars::dihedral_character(d, DihedralCharId::Lambda(*i))?),
            _ => Err(mismatch("lambda:<i> needs a dihedral group")),
        },
        CharSpec::Psi(h) => match handle {
            GroupHandle::Dihedral(d) => Ok(chars::dihedral_character(d, DihedralCharId::Psi(*h))?),
            _ => Err(mismatch("psi:<h> needs a dihedral group")),
        },
        CharSpec::File(path) => {
            let (_, chi) = load_character_file(path, Some(handle))?;
            Ok(chi)
        }
        CharSpec::All => Err(mismatch("'all' is only meaningful for table and verify")),
    }
}

// ---------------------------------------------------------------------------
// Character files
// ---------------------------------------------------------------------------

/// JSON form of a cyclotomic value: rational coefficient strings for the
/// powers of the given root of unity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CycloJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl CycloJson {
    pub fn from_cyclotomic(v: &Cyclotomic) -> Self {
        CycloJson {
            order: v.order(),
            coeffs: v.coeffs().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_cyclotomic(&self) -> Result<Cyclotomic, String> {
        if self.order == 0 {
            return Err("order must be positive".into());
        }
        if self.coeffs.len() > self.order {
            return Err(format!(
                "{} coefficients for order {}",
                self.coeffs.len(),
                self.order
            ));
        }
        let mut raw = Vec::new();
        for (k, text) in self.coeffs.iter().enumerate() {
            let c: BigRational = text
                .trim()
                .parse()
                .map_err(|e| format!("bad rational '{text}': {e}"))?;
            if !c.is_zero() {
                raw.push((k as i64, c));
            }
        }
        Ok(Cyclotomic::from_coeffs(self.order, &raw))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterFileGroup {
    pub generators: Vec<String>,
    pub degree: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterFileValue {
    pub element: String,
    pub coeffs: CycloJson,
}

/// On-disk character format: the group as generator strings plus one value
/// per element in cycle notation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterFile {
    pub group: CharacterFileGroup,
    #[serde(default)]
    pub label: Option<String>,
    pub values: Vec<CharacterFileValue>,
}

/// Loads and validates a character file. When `expected` is given, the
/// file's group must enumerate to the same subgroup. The returned character
/// is validated as a class function but not certified.
pub fn load_character_file(
    path: &str,
    expected: Option<&GroupHandle>,
) -> Result<(Arc<PermutationGroup>, Character), SpecError> {
    let err = |msg: String| SpecError::CharacterFile { path: path.to_string(), msg };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let file: CharacterFile = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
    let gens = file
        .group
        .generators
        .iter()
        .map(|g| Permutation::parse_cycles(g, file.group.degree))
        .collect::<Result<Vec<_>, _>>()?;
    let group = Arc::new(PermutationGroup::generate(&gens, DEFAULT_CLOSURE_CAP)?);
    let group = match expected {
        Some(handle) => {
            if !same_group(handle.group(), &group) {
                return Err(err(format!(
                    "file group has {} elements of degree {}, which is not the requested group {}",
                    group.order(),
                    group.degree(),
                    handle.spec_string()
                )));
            }
            Arc::clone(handle.group())
        }
        None => group,
    };
    let mut values: Vec<Option<Cyclotomic>> = vec![None; group.order()];
    for entry in &file.values {
        let p = Permutation::parse_cycles(&entry.element, group.degree())?;
        let idx = group
            .element_index(&p)
            .ok_or_else(|| err(format!("element {p} is not in the group")))?;
        if values[idx].is_some() {
            return Err(err(format!("duplicate value for element {p}")));
        }
        values[idx] = Some(entry.coeffs.to_cyclotomic().map_err(err)?);
    }
    let values: Vec<Cyclotomic> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| err(format!("missing value for element {}", group.elements()[i]))))
        .collect::<Result<_, _>>()?;
    let label = file.label.clone().unwrap_or_else(|| format!("file:{path}"));
    let chi = Character::from_class_function(Arc::clone(&group), values, label)?;
    Ok((group, chi))
}

/// Serializes a character into the on-disk format.
pub fn character_to_file(chi: &Character, group_spec: &GroupSpec) -> CharacterFile {
    let group = chi.group();
    let generators = match group_spec {
        GroupSpec::Generated { gens, .. } => gens.iter().map(|g| cycles_to_string(g)).collect(),
        _ => group.generators().iter().map(ToString::to_string).collect(),
    };
    CharacterFile {
        group: CharacterFileGroup { generators, degree: group.degree() },
        label: Some(chi.label().to_string()),
        values: group
            .elements()
            .iter()
            .enumerate()
            .map(|(i, g)| CharacterFileValue {
                element: g.to_string(),
                coeffs: CycloJson::from_cyclotomic(chi.value_at(i)),
            })
            .collect(),
    }
}
