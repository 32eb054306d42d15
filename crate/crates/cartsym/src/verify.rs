//! The verification engine: a fixed matrix of (group, character, n)
//! instances and, for each, a battery of named exactness checks tying every
//! implemented route to an independent one. Failures are report entries,
//! never panics, so a corrupted input shows up as the specific law it
//! breaks.
//!
//! Check names map to documented invariants: `projection.*` are the
//! symmetrizer laws, `dim.*` the two dimension routes and the per-family
//! closed forms, `gram.*` the inner-product identities, `obasis.*` the
//! criterion/search/obstruction agreements, and `family.*` the completeness
//! of full character families.

use std::collections::BTreeSet;
use std::time::Instant;

use num::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{self, Character};
use crate::cyclo::{ratio, Cyclotomic, Rational};
use crate::formulas::{self, CycleStructure};
use crate::obasis::{self, Verdict};
use crate::specs::{self, CharSpec, GroupHandle};
use crate::symclass::{
    self, block_symmetrizer, build_symmetrizer, column_inner_product, double_sum_gram, gram_entry,
    norm_squared, SquareMatrix,
};

/// How much of the battery to run. `Quick` covers every law that works at
/// matrix size m; `Full` adds the nm-sized block oracle and the unreduced
/// double-sum identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(format!("unknown level '{other}', expected quick or full")),
        }
    }
}

/// Block-oracle size bound: exact elimination and inner products at size nm
/// stay cheap up to here, and the m-sized checks already cover the
/// mathematics beyond it.
pub const BLOCK_ORACLE_LIMIT: usize = 36;

/// Group-order bound for the quadratic double-sum identity.
pub const DOUBLE_SUM_LIMIT: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn new(name: &str, ok: bool, expected: impl ToString, actual: impl ToString) -> Self {
        Check {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn undecided(name: &str, expected: impl ToString, actual: impl ToString) -> Self {
        Check {
            name: name.to_string(),
            status: Status::Undecided,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub group: String,
    pub character: String,
    pub n: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn undecided(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Undecided)
    }
}

pub fn suite_failed(reports: &[VerificationReport]) -> bool {
    reports.iter().any(VerificationReport::failed)
}

pub fn suite_undecided(reports: &[VerificationReport]) -> bool {
    reports.iter().any(VerificationReport::undecided)
}

/// One cell of the verification matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Instance {
    pub group: String,
    pub character: String,
    pub n: u64,
}

impl Instance {
    pub fn new(group: &str, character: &str, n: u64) -> Self {
        Instance { group: group.into(), character: character.into(), n }
    }

    pub fn id(&self) -> String {
        format!("{}|{}|n={}", self.group, self.character, self.n)
    }
}

/// The acceptance matrix: symmetric groups with principal, sign and the
/// fixed-point character minus one; the alternating group on four points;
/// the five cycle-product structures over all residues; the three products
/// of cyclic groups over all residue tuples; and every dihedral character
/// for degrees 3 through 12 — each at n = 2 and n = 3.
pub fn default_matrix() -> Vec<Instance> {
    let mut out = Vec::new();
    let ns = [2u64, 3];
    for n in ns {
        for m in 2..=5 {
            for c in ["principal", "sign", "theta-1"] {
                out.push(Instance::new(&format!("symmetric:{m}"), c, n));
            }
        }
        out.push(Instance::new("alternating:4", "theta-1", n));

        for lengths in [vec![3usize], vec![2, 2], vec![3, 2], vec![4, 3], vec![2, 2, 3]] {
            let degree: usize = lengths.iter().sum();
            let cs = CycleStructure::from_lengths(&lengths, degree)
                .expect("matrix cycle structures are valid");
            let spec = specs::GroupSpec::CycleProduct {
                cycles: cs.supports().to_vec(),
                degree,
            };
            for q in 0..cs.modulus() {
                out.push(Instance::new(&spec.to_string(), &format!("q:{q}"), n));
            }
        }

        for (lengths, degree) in [(vec![3usize, 2], 5), (vec![3, 2], 6), (vec![2, 2], 4)] {
            let cs = CycleStructure::from_lengths(&lengths, degree)
                .expect("matrix cycle structures are valid");
            let spec = specs::GroupSpec::ProductOfCyclics {
                cycles: cs.supports().to_vec(),
                degree,
            };
            let mut tuples = vec![Vec::new()];
            for &len in &lengths {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        (0..len).map(move |q| {
                            let mut t = t.clone();
                            t.push(q);
                            t
                        })
                    })
                    .collect();
            }
            for t in tuples {
                let qs: Vec<String> = t.iter().map(ToString::to_string).collect();
                out.push(Instance::new(
                    &spec.to_string(),
                    &format!("qtuple:{}", qs.join(",")),
                    n,
                ));
            }
        }

        for m in 3..=12usize {
            let group = format!("dihedral:{m}");
            let lambdas: u8 = if m % 2 == 0 { 4 } else { 2 };
            for i in 1..=lambdas {
                out.push(Instance::new(&group, &format!("lambda:{i}"), n));
            }
            for h in 1..m.div_ceil(2) {
                if 2 * h < m {
                    out.push(Instance::new(&group, &format!("psi:{h}"), n));
                }
            }
        }
    }
    out
}

/// Runs the battery on explicitly resolved inputs. `char_spec` enables the
/// per-family closed-form checks; pass `None` for ad-hoc characters.
pub fn run_checks(
    handle: &GroupHandle,
    char_spec: Option<&CharSpec>,
    chi: &Character,
    n: u64,
    level: Level,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let group = chi.group();

    // Class-function laws first: a corrupted value list fails here.
    let mut class_ok = true;
    'classes: for class in group.conjugacy_classes() {
        for &other in &class[1..] {
            if chi.value_at(class[0]) != chi.value_at(other) {
                class_ok = false;
                break 'classes;
            }
        }
    }
    checks.push(Check::new(
        "character.class_function",
        class_ok,
        "constant on conjugacy classes",
        if class_ok { "constant" } else { "differs within a class" },
    ));

    let conj_ok = (0..group.order())
        .all(|i| chi.value_at(group.inverse_index(i)) == &chi.value_at(i).conj());
    checks.push(Check::new(
        "character.conj_symmetry",
        conj_ok,
        "value(g^-1) = conj(value(g))",
        if conj_ok { "holds" } else { "violated" },
    ));

    let sym = build_symmetrizer(chi);
    let idempotent = sym.matrix().matmul(sym.matrix()) == *sym.matrix();
    checks.push(Check::new(
        "projection.idempotent",
        idempotent,
        "M*M = M",
        if idempotent { "equal" } else { "differs" },
    ));
    let hermitian = sym.matrix().conj_transpose() == *sym.matrix();
    checks.push(Check::new(
        "projection.hermitian",
        hermitian,
        "M = conj-transpose(M)",
        if hermitian { "equal" } else { "differs" },
    ));

    // Entries of the projection vanish across different orbits.
    let od = group.orbit_data();
    let m = group.degree();
    let mut block_structure = true;
    for j in 1..=m {
        for s in 1..=m {
            if !od.same_orbit(j, s) && !sym.entry(j, s).is_zero() {
                block_structure = false;
            }
        }
    }
    checks.push(Check::new(
        "projection.orbit_blocks",
        block_structure,
        "entries vanish across orbits",
        if block_structure { "vanish" } else { "nonzero entry across orbits" },
    ));

    let trace = sym.trace_units();
    checks.push(match &trace {
        Ok(t) => Check::new("dim.trace_integral", true, "nonnegative integer", t),
        Err(e) => Check::new("dim.trace_integral", false, "nonnegative integer", e),
    });

    if let Ok(t) = &trace {
        let formula = symclass::multiplicity_dimension_units(chi);
        match formula {
            Ok(f) => checks.push(Check::new(
                "dim.trace_vs_multiplicity",
                f == ratio(*t as i64, 1),
                format!("multiplicity route = {f}"),
                format!("trace route = {t}"),
            )),
            Err(e) => checks.push(Check::new(
                "dim.trace_vs_multiplicity",
                false,
                "computable multiplicity sum",
                e,
            )),
        }

        // Family closed forms, where one applies.
        if let Some(spec) = char_spec {
            if let Some(check) = family_closed_form_check(handle, spec, n, *t) {
                checks.push(check);
            }
        }
    }

    // Norms and Gram identities.
    checks.extend(gram_checks(chi, &sym));

    // O-basis laws.
    checks.extend(obasis_checks(handle, char_spec, chi));

    if level == Level::Full {
        if n as usize * m <= BLOCK_ORACLE_LIMIT {
            checks.push(block_oracle_check(chi, n));
        }
        if group.order() <= DOUBLE_SUM_LIMIT {
            checks.push(double_sum_check(chi));
        }
    }

    checks
}

fn family_closed_form_check(
    handle: &GroupHandle,
    spec: &CharSpec,
    n: u64,
    trace_units: u64,
) -> Option<Check> {
    let name = "dim.family_closed_form";
    let expected = n * trace_units;
    match (handle, spec) {
        (GroupHandle::CycleProduct(c), CharSpec::Q(q)) => {
            let lengths: Vec<usize> = c.cycle_lengths();
            let degree = c.group().degree();
            if lengths.iter().sum::<usize>() != degree {
                return None; // closed form needs the cycles to exhaust the degree
            }
            let cs = CycleStructure::new(c.cycle_supports().to_vec(), degree).ok()?;
            Some(match formulas::dim_cycle_product(&cs, *q, n) {
                Ok(v) => Check::new(name, v == expected, expected, v),
                Err(e) => Check::new(name, false, expected, e),
            })
        }
        (GroupHandle::ProductOfCyclics(p), CharSpec::QTuple(qs)) => {
            let cs = CycleStructure::new(p.supports().to_vec(), p.group().degree()).ok()?;
            Some(match formulas::dim_product_of_cyclics(&cs, qs, n) {
                Ok(v) => Check::new(
                    name,
                    v.corrected == expected,
                    expected,
                    format!(
                        "corrected = {}, literal = {}, discrepancy = {}",
                        v.corrected, v.literal, v.discrepancy
                    ),
                ),
                Err(e) => Check::new(name, false, expected, e),
            })
        }
        (GroupHandle::Dihedral(d), CharSpec::Lambda(i)) => {
            Some(match formulas::dim_dihedral(d.degree(), chars::DihedralCharId::Lambda(*i), n) {
                Ok(v) => Check::new(name, v == expected, expected, v),
                Err(e) => Check::new(name, false, expected, e),
            })
        }
        (GroupHandle::Dihedral(d), CharSpec::Psi(h)) => {
            Some(match formulas::dim_dihedral(d.degree(), chars::DihedralCharId::Psi(*h), n) {
                Ok(v) => Check::new(name, v == expected, expected, v),
                Err(e) => Check::new(name, false, expected, e),
            })
        }
        _ => None,
    }
}

fn gram_checks(chi: &Character, sym: &symclass::Symmetrizer) -> Vec<Check> {
    let mut checks = Vec::new();
    let group = chi.group();
    let m = group.degree();
    let od = group.orbit_data();

    // Diagonal Gram entries equal the closed-form squared norm.
    let mut diag_ok = true;
    for j in 1..=m {
        let diag = match gram_entry(chi, j, j) {
            Ok(v) => v,
            Err(_) => {
                diag_ok = false;
                break;
            }
        };
        let closed = match norm_squared(chi, j) {
            Ok(v) => v,
            Err(_) => {
                diag_ok = false;
                break;
            }
        };
        if diag.to_rational() != Some(closed) {
            diag_ok = false;
            break;
        }
    }
    checks.push(Check::new(
        "gram.norm_diagonal",
        diag_ok,
        "gram(j, j) equals the norm formula",
        if diag_ok { "equal for all j" } else { "differs" },
    ));

    // Surviving representatives have norms in (0, 1].
    let mut bound_ok = true;
    for (&rep, stab) in od.representatives.iter().zip(&od.stabilizers) {
        let mult = match chars::restriction_multiplicity(chi, stab) {
            Ok(v) => v,
            Err(_) => {
                bound_ok = false;
                break;
            }
        };
        if mult.is_zero() {
            continue;
        }
        match norm_squared(chi, rep) {
            Ok(ns) => {
                if !(ns > Rational::zero() && ns <= Rational::one()) {
                    bound_ok = false;
                }
            }
            Err(_) => bound_ok = false,
        }
    }
    checks.push(Check::new(
        "gram.norm_bound",
        bound_ok,
        "0 < norm^2 <= 1 on surviving representatives",
        if bound_ok { "within bounds" } else { "out of bounds" },
    ));

    // The stabilizer-sum Gram entry does not depend on the chosen
    // transporter, and matches the projection matrix entry.
    let mut tau_ok = true;
    let mut matrix_ok = true;
    let deg_over_order = ratio(chi.degree() as i64, group.order() as i64);
    for j in 1..=m {
        let stab = match group.stabilizer(j) {
            Ok(s) => s,
            Err(_) => continue,
        };
        for s in 1..=m {
            if !od.same_orbit(j, s) {
                continue;
            }
            let reference = match gram_entry(chi, j, s) {
                Ok(v) => v,
                Err(_) => {
                    tau_ok = false;
                    continue;
                }
            };
            if &reference != sym.entry(j, s) {
                matrix_ok = false;
            }
            for tau in group.elements().iter().filter(|t| t.apply(j) == s) {
                let tau_inv = tau.inverse();
                let mut acc = Cyclotomic::zero();
                for g in &stab {
                    let idx = group
                        .element_index(&g.compose(&tau_inv))
                        .expect("group is closed");
                    acc = &acc + chi.value_at(idx);
                }
                if acc.scale(&deg_over_order) != reference {
                    tau_ok = false;
                }
            }
        }
    }
    checks.push(Check::new(
        "gram.tau_independence",
        tau_ok,
        "same value for every transporter",
        if tau_ok { "independent" } else { "depends on the transporter" },
    ));
    checks.push(Check::new(
        "gram.matches_projection",
        matrix_ok,
        "gram(j, s) equals the projection entry",
        if matrix_ok { "equal" } else { "differs" },
    ));

    checks
}

fn obasis_checks(
    handle: &GroupHandle,
    char_spec: Option<&CharSpec>,
    chi: &Character,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let report = match obasis::search_obasis(chi, obasis::DEFAULT_SUBSET_BUDGET) {
        Ok(r) => r,
        Err(e) => {
            checks.push(Check::new("obasis.search", false, "search completes", e));
            return checks;
        }
    };

    // A norm-window hit must be confirmed by the search.
    match (report.obstruction, report.verdict) {
        (Some(j), Verdict::NoOBasis) => checks.push(Check::new(
            "obasis.obstruction_sound",
            true,
            "window hit confirmed by search",
            format!("window at {j}, search refutes"),
        )),
        (Some(j), Verdict::HasOBasis) => checks.push(Check::new(
            "obasis.obstruction_sound",
            false,
            "window hit must imply no orthogonal basis",
            format!("window at {j} but search found one"),
        )),
        (Some(j), Verdict::Undecided) => checks.push(Check::undecided(
            "obasis.obstruction_sound",
            "window hit confirmed by search",
            format!("window at {j}, search exceeded its budget"),
        )),
        (None, _) => checks.push(Check::new(
            "obasis.obstruction_sound",
            true,
            "vacuous without a window hit",
            "no window hit",
        )),
    }

    // Any found subset must re-validate exactly.
    let mut subsets_ok = true;
    for orbit in &report.per_orbit {
        if let Some(found) = &orbit.found {
            match obasis::validate_orthogonal_subset(chi, found, orbit.required) {
                Ok(true) => {}
                _ => subsets_ok = false,
            }
        }
    }
    checks.push(Check::new(
        "obasis.subset_validates",
        subsets_ok,
        "found subsets are orthogonal with positive norms",
        if subsets_ok { "validated" } else { "invalid subset" },
    ));

    // The dihedral criterion and the search must agree.
    if let (GroupHandle::Dihedral(d), Some(CharSpec::Psi(h))) = (handle, char_spec) {
        match obasis::dihedral_criterion(d.degree(), *h) {
            Ok(expected) => {
                let name = "obasis.criterion_vs_search";
                match report.verdict {
                    Verdict::Undecided => checks.push(Check::undecided(
                        name,
                        format!("criterion says {expected}"),
                        "search exceeded its budget",
                    )),
                    v => {
                        let got = v == Verdict::HasOBasis;
                        checks.push(Check::new(
                            name,
                            got == expected,
                            format!("criterion says {expected}"),
                            format!("search says {got}"),
                        ));
                    }
                }
            }
            Err(e) => checks.push(Check::new(
                "obasis.criterion_vs_search",
                false,
                "criterion evaluates",
                e,
            )),
        }
    }

    checks
}

fn block_oracle_check(chi: &Character, n: u64) -> Check {
    let m = chi.group().degree();
    let block = block_symmetrizer(chi, n);
    let mut mismatches = 0usize;
    let mut compared = 0usize;
    for i in 1..=n as usize {
        for r in 1..=n as usize {
            for j in 1..=m {
                for s in 1..=m {
                    let oracle =
                        column_inner_product(&block, (i - 1) * m + (j - 1), (r - 1) * m + (s - 1));
                    let expect = if i == r {
                        match gram_entry(chi, j, s) {
                            Ok(v) => v,
                            Err(_) => {
                                mismatches += 1;
                                continue;
                            }
                        }
                    } else {
                        Cyclotomic::zero()
                    };
                    compared += 1;
                    if oracle != expect {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    Check::new(
        "gram.block_oracle",
        mismatches == 0,
        format!("{compared} quadruples agree"),
        format!("{mismatches} mismatches"),
    )
}

fn double_sum_check(chi: &Character) -> Check {
    let m = chi.group().degree();
    let mut mismatches = 0usize;
    for j in 1..=m {
        for s in 1..=m {
            let reduced = match gram_entry(chi, j, s) {
                Ok(v) => v,
                Err(_) => {
                    mismatches += 1;
                    continue;
                }
            };
            if double_sum_gram(chi, 1, j, 1, s) != reduced {
                mismatches += 1;
            }
        }
    }
    if !double_sum_gram(chi, 1, 1, 2, 1).is_zero() {
        mismatches += 1;
    }
    Check::new(
        "gram.double_sum",
        mismatches == 0,
        "double-sum form equals the reduced form",
        format!("{mismatches} mismatches"),
    )
}

/// Runs one matrix instance end to end; resolution failures become report
/// entries rather than errors.
pub fn run_instance(inst: &Instance, level: Level) -> VerificationReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let resolved = specs::parse_group_spec(&inst.group)
        .map_err(|e| e.to_string())
        .and_then(|gs| specs::resolve_group(&gs).map_err(|e| e.to_string()))
        .and_then(|handle| {
            let cs = specs::parse_char_spec(&inst.character).map_err(|e| e.to_string())?;
            let chi = specs::resolve_character(&handle, &cs).map_err(|e| e.to_string())?;
            Ok((handle, cs, chi))
        });
    match resolved {
        Ok((handle, cs, chi)) => {
            checks.extend(run_checks(&handle, Some(&cs), &chi, inst.n, level));
        }
        Err(e) => checks.push(Check::new("resolve", false, "instance resolves", e)),
    }
    VerificationReport {
        instance: inst.id(),
        group: inst.group.clone(),
        character: inst.character.clone(),
        n: inst.n,
        checks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs the battery on an already-built character (used for user-supplied
/// and deliberately corrupted values).
pub fn run_instance_with_character(
    handle: &GroupHandle,
    char_label: &str,
    chi: &Character,
    n: u64,
    level: Level,
) -> VerificationReport {
    let start = Instant::now();
    let checks = run_checks(handle, None, chi, n, level);
    VerificationReport {
        instance: format!("{}|{}|n={}", handle.spec_string(), char_label, n),
        group: handle.spec_string(),
        character: char_label.to_string(),
        n,
        checks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Completeness checks for one group with a full built-in family: the
/// symmetrizers must sum to the identity and the dimensions to n*m.
pub fn family_completeness_report(group: &str, n: u64, level: Level) -> Option<VerificationReport> {
    let _ = level;
    let start = Instant::now();
    let handle = specs::parse_group_spec(group)
        .ok()
        .and_then(|gs| specs::resolve_group(&gs).ok())?;
    let family = handle.complete_family()?;
    let m = handle.group().degree();
    let mut checks = Vec::new();

    let mut matrix_sum = SquareMatrix::zero(m);
    let mut dim_sum = 0u64;
    let mut dims_ok = true;
    for chi in &family {
        let sym = build_symmetrizer(chi);
        matrix_sum = matrix_sum.add(sym.matrix());
        match symclass::dim_symmetry_class(&sym, n) {
            Ok(d) => dim_sum += d,
            Err(_) => dims_ok = false,
        }
    }
    let identity = SquareMatrix::identity(m);
    checks.push(Check::new(
        "family.projectors_sum_to_identity",
        matrix_sum == identity,
        "sum of symmetrizers = identity",
        if matrix_sum == identity { "identity" } else { "differs" },
    ));
    checks.push(Check::new(
        "family.dimensions_sum_to_nm",
        dims_ok && dim_sum == n * m as u64,
        n * m as u64,
        dim_sum,
    ));

    Some(VerificationReport {
        instance: format!("{group}|family|n={n}"),
        group: group.to_string(),
        character: "family".to_string(),
        n,
        checks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Runs the whole matrix, in parallel, plus one completeness report per
/// distinct group with a complete family; reports come back sorted by
/// instance id.
pub fn run_suite(matrix: &[Instance], level: Level) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> =
        matrix.par_iter().map(|inst| run_instance(inst, level)).collect();
    let family_keys: BTreeSet<(String, u64)> =
        matrix.iter().map(|i| (i.group.clone(), i.n)).collect();
    let family_reports: Vec<VerificationReport> = family_keys
        .into_par_iter()
        .filter_map(|(group, n)| family_completeness_report(&group, n, level))
        .collect();
    reports.extend(family_reports);
    reports.sort_by(|a, b| a.instance.cmp(&b.instance));
    reports
}
