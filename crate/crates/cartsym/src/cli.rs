//! Command-line front end: `dims`, `gram`, `obasis`, `table` and `verify`
//! over the group/character spec grammar, with text, JSON and CSV renderers.
//!
//! Exit codes: 0 success, 1 usage error, 2 internal invariant failure
//! (a cross-check between two exact routes disagreed), 3 search undecided
//! within budget.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::formulas::FormulaError;
use crate::obasis::{self, Verdict};
use crate::specs::{self, CharSpec, GroupHandle, SpecError};
use crate::symclass::{self, SymclassError};
use crate::verify::{self, Instance, Level, VerificationReport};

/// Environment variable overriding the per-orbit subset-search budget.
pub const BUDGET_ENV: &str = "CARTSYM_BUDGET";

#[derive(Parser)]
#[command(
    name = "cartsym",
    version,
    about = "Exact Cartesian symmetry classes: dimensions, Gram matrices and O-basis decisions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of a symmetry class with per-orbit multiplicities
    Dims {
        #[arg(long)]
        group: String,
        #[arg(long = "char")]
        character: String,
        /// Dimension of the underlying inner product space
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Gram matrices and norms of the standard symmetrized vectors
    Gram {
        #[arg(long)]
        group: String,
        #[arg(long = "char")]
        character: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide whether the symmetry class has an orthogonal basis of
    /// standard symmetrized vectors
    Obasis {
        #[arg(long)]
        group: String,
        #[arg(long = "char")]
        character: String,
        /// Per-orbit subset-search budget (overrides CARTSYM_BUDGET)
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dimension table over the complete character family of the group
    Table {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the verification suite (the full default matrix, or one
    /// group/character)
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "char")]
        character: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value = "quick")]
        level: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

enum RunError {
    Usage(String),
    Invariant(String),
    Undecided(String),
}

impl RunError {
    fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 1,
            RunError::Invariant(_) => 2,
            RunError::Undecided(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            RunError::Usage(m) | RunError::Invariant(m) | RunError::Undecided(m) => m,
        }
    }
}

impl From<SpecError> for RunError {
    fn from(e: SpecError) -> Self {
        RunError::Usage(e.to_string())
    }
}

impl From<SymclassError> for RunError {
    fn from(e: SymclassError) -> Self {
        RunError::Invariant(e.to_string())
    }
}

impl From<FormulaError> for RunError {
    fn from(e: FormulaError) -> Self {
        RunError::Invariant(e.to_string())
    }
}

impl From<obasis::OBasisError> for RunError {
    fn from(e: obasis::OBasisError) -> Self {
        RunError::Invariant(e.to_string())
    }
}

/// Parses arguments, runs one subcommand, prints the report, and returns
/// the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("cartsym: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, RunError> {
    match cmd {
        Command::Dims { group, character, n, format } => cmd_dims(&group, &character, n, format),
        Command::Gram { group, character, format } => cmd_gram(&group, &character, format),
        Command::Obasis { group, character, budget, format } => {
            cmd_obasis(&group, &character, budget, format)
        }
        Command::Table { group, n, format } => cmd_table(&group, n, format),
        Command::Verify { group, character, n, level, format } => {
            cmd_verify(group.as_deref(), character.as_deref(), n, &level, format)
        }
    }
}

fn resolve(group: &str, character: &str) -> Result<(GroupHandle, CharSpec, crate::chars::Character), RunError> {
    let gs = specs::parse_group_spec(group)?;
    let handle = specs::resolve_group(&gs)?;
    let cs = specs::parse_char_spec(character)?;
    let chi = specs::resolve_character(&handle, &cs)?;
    Ok((handle, cs, chi))
}

fn budget_from(cli_budget: Option<u64>) -> u64 {
    cli_budget
        .or_else(|| std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(obasis::DEFAULT_SUBSET_BUDGET)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

fn points_to_string(points: &[usize]) -> String {
    let parts: Vec<String> = points.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(" "))
}

/// JSON shape of one exact cyclotomic value: pretty form, coefficient list,
/// and a floating approximation for human consumption.
#[derive(Serialize)]
struct CycloOut {
    exact: String,
    order: usize,
    coeffs: Vec<String>,
    re: f64,
    im: f64,
}

impl CycloOut {
    fn new(v: &Cyclotomic) -> Self {
        let (re, im) = v.to_float();
        CycloOut {
            exact: v.to_string(),
            order: v.order(),
            coeffs: v.coeffs().iter().map(ToString::to_string).collect(),
            re,
            im,
        }
    }
}

// ---------------------------------------------------------------------------
// dims
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct DimsOrbitOut {
    rep: usize,
    orbit: Vec<usize>,
    stabilizer_order: usize,
    multiplicity: String,
    cyclic_dim: u64,
    norm_sq: String,
    spanning: Vec<usize>,
}

#[derive(Serialize)]
struct DimsOut {
    group: String,
    character: String,
    n: u64,
    dim: u64,
    orbits: Vec<Vec<usize>>,
    dbar: Vec<usize>,
    per_orbit: Vec<DimsOrbitOut>,
}

fn cmd_dims(group: &str, character: &str, n: u64, format: Format) -> Result<i32, RunError> {
    let (handle, _, chi) = resolve(group, character)?;
    let summary = symclass::summarize(&chi, n)?;
    let out = DimsOut {
        group: handle.spec_string(),
        character: chi.label().to_string(),
        n,
        dim: summary.dim,
        orbits: summary.per_orbit.iter().map(|o| o.orbit.clone()).collect(),
        dbar: summary.dbar.clone(),
        per_orbit: summary
            .per_orbit
            .iter()
            .map(|o| DimsOrbitOut {
                rep: o.representative,
                orbit: o.orbit.clone(),
                stabilizer_order: o.stabilizer_order,
                multiplicity: o.multiplicity.to_string(),
                cyclic_dim: o.cyclic_dim,
                norm_sq: o.norm_squared.to_string(),
                spanning: o.spanning.clone(),
            })
            .collect(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).expect("serializable")),
        Format::Csv => {
            println!(
                "group,character,n,rep,orbit,stabilizer_order,multiplicity,cyclic_dim,norm_sq,spanning,dim"
            );
            for o in &out.per_orbit {
                println!(
                    "{}",
                    csv_line(&[
                        out.group.clone(),
                        out.character.clone(),
                        out.n.to_string(),
                        o.rep.to_string(),
                        points_to_string(&o.orbit),
                        o.stabilizer_order.to_string(),
                        o.multiplicity.clone(),
                        o.cyclic_dim.to_string(),
                        o.norm_sq.clone(),
                        points_to_string(&o.spanning),
                        out.dim.to_string(),
                    ])
                );
            }
        }
        Format::Text => {
            println!("group:     {}", out.group);
            println!("character: {}", out.character);
            println!("n:         {}", out.n);
            println!("dim:       {}", out.dim);
            println!("dbar:      {}", points_to_string(&out.dbar));
            println!("rep | orbit | |G_j| | [chi,1] | cyclic dim | norm^2 | spanning");
            for o in &out.per_orbit {
                println!(
                    "{} | {} | {} | {} | {} | {} | {}",
                    o.rep,
                    points_to_string(&o.orbit),
                    o.stabilizer_order,
                    o.multiplicity,
                    o.cyclic_dim,
                    o.norm_sq,
                    points_to_string(&o.spanning),
                );
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// gram
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct GramEntryOut {
    row: usize,
    col: usize,
    value: CycloOut,
}

#[derive(Serialize)]
struct GramOrbitOut {
    rep: usize,
    orbit: Vec<usize>,
    norm_sq: String,
    entries: Vec<GramEntryOut>,
}

#[derive(Serialize)]
struct GramOut {
    group: String,
    character: String,
    per_orbit: Vec<GramOrbitOut>,
}

fn cmd_gram(group: &str, character: &str, format: Format) -> Result<i32, RunError> {
    let (handle, _, chi) = resolve(group, character)?;
    let od = chi.group().orbit_data();
    let mut per_orbit = Vec::new();
    for (&rep, orbit) in od.representatives.iter().zip(&od.orbits) {
        let mult = crate::chars::restriction_multiplicity(
            &chi,
            &chi.group().stabilizer(rep).map_err(SymclassError::from)?,
        )
        .map_err(SymclassError::from)?;
        if num::Zero::is_zero(&mult) {
            continue; // only surviving orbits carry Gram data
        }
        let mut entries = Vec::new();
        for &a in orbit {
            for &b in orbit {
                let v = symclass::gram_entry(&chi, a, b)?;
                entries.push(GramEntryOut { row: a, col: b, value: CycloOut::new(&v) });
            }
        }
        per_orbit.push(GramOrbitOut {
            rep,
            orbit: orbit.clone(),
            norm_sq: symclass::norm_squared(&chi, rep)?.to_string(),
            entries,
        });
    }
    let out = GramOut {
        group: handle.spec_string(),
        character: chi.label().to_string(),
        per_orbit,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).expect("serializable")),
        Format::Csv => {
            println!("group,character,rep,row,col,value,re,im");
            for o in &out.per_orbit {
                for e in &o.entries {
                    println!(
                        "{}",
                        csv_line(&[
                            out.group.clone(),
                            out.character.clone(),
                            o.rep.to_string(),
                            e.row.to_string(),
                            e.col.to_string(),
                            e.value.exact.clone(),
                            format!("{:.12}", e.value.re),
                            format!("{:.12}", e.value.im),
                        ])
                    );
                }
            }
        }
        Format::Text => {
            println!("group:     {}", out.group);
            println!("character: {}", out.character);
            for o in &out.per_orbit {
                println!("orbit of {}: {}  norm^2 = {}", o.rep, points_to_string(&o.orbit), o.norm_sq);
                let k = o.orbit.len();
                let cells: Vec<String> = o.entries.iter().map(|e| e.value.exact.clone()).collect();
                let width = cells.iter().map(String::len).max().unwrap_or(1);
                for r in 0..k {
                    let row: Vec<String> =
                        (0..k).map(|c| format!("{:>width$}", cells[r * k + c])).collect();
                    println!("  [ {} ]", row.join("  "));
                }
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// obasis
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ObasisOrbitOut {
    rep: usize,
    orbit: Vec<usize>,
    required: u64,
    found: Option<Vec<usize>>,
    nodes: u64,
    budget_exceeded: bool,
}

#[derive(Serialize)]
struct ObasisOut {
    group: String,
    character: String,
    verdict: String,
    method: String,
    obstruction: Option<usize>,
    criterion: Option<bool>,
    budget: u64,
    per_orbit: Vec<ObasisOrbitOut>,
}

fn cmd_obasis(
    group: &str,
    character: &str,
    budget: Option<u64>,
    format: Format,
) -> Result<i32, RunError> {
    let (handle, cs, chi) = resolve(group, character)?;
    let budget = budget_from(budget);
    let mut report = obasis::search_obasis(&chi, budget)?;
    // The dihedral closed-form criterion rides along where it applies, and
    // settles the verdict when the search ran out of budget.
    let criterion = match (&handle, &cs) {
        (GroupHandle::Dihedral(d), CharSpec::Psi(h)) => {
            Some(obasis::dihedral_criterion(d.degree(), *h)?)
        }
        _ => None,
    };
    if report.verdict == Verdict::Undecided {
        if let Some(c) = criterion {
            report.verdict = if c { Verdict::HasOBasis } else { Verdict::NoOBasis };
            report.method = obasis::Method::Criterion;
        }
    }
    let out = ObasisOut {
        group: handle.spec_string(),
        character: chi.label().to_string(),
        verdict: report.verdict.to_string(),
        method: report.method.to_string(),
        obstruction: report.obstruction,
        criterion,
        budget,
        per_orbit: report
            .per_orbit
            .iter()
            .map(|o| ObasisOrbitOut {
                rep: o.representative,
                orbit: o.orbit.clone(),
                required: o.required,
                found: o.found.clone(),
                nodes: o.nodes,
                budget_exceeded: o.budget_exceeded,
            })
            .collect(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).expect("serializable")),
        Format::Csv => {
            println!("group,character,verdict,method,rep,required,found,nodes");
            if out.per_orbit.is_empty() {
                println!(
                    "{}",
                    csv_line(&[
                        out.group.clone(),
                        out.character.clone(),
                        out.verdict.clone(),
                        out.method.clone(),
                        String::new(),
                        "0".into(),
                        String::new(),
                        "0".into(),
                    ])
                );
            }
            for o in &out.per_orbit {
                println!(
                    "{}",
                    csv_line(&[
                        out.group.clone(),
                        out.character.clone(),
                        out.verdict.clone(),
                        out.method.clone(),
                        o.rep.to_string(),
                        o.required.to_string(),
                        o.found.as_deref().map(points_to_string).unwrap_or_default(),
                        o.nodes.to_string(),
                    ])
                );
            }
        }
        Format::Text => {
            println!("group:     {}", out.group);
            println!("character: {}", out.character);
            println!("verdict:   {} (method: {})", out.verdict, out.method);
            if let Some(j) = out.obstruction {
                println!("norm-window obstruction at representative {j}");
            }
            if let Some(c) = out.criterion {
                println!("criterion: {}", if c { "has-O-basis" } else { "no-O-basis" });
            }
            for o in &out.per_orbit {
                let found = o.found.as_deref().map(points_to_string).unwrap_or_else(|| "none".into());
                println!(
                    "orbit of {}: required {}, found {}, nodes {}{}",
                    o.rep,
                    o.required,
                    found,
                    o.nodes,
                    if o.budget_exceeded { " (budget exceeded)" } else { "" }
                );
            }
        }
    }
    Ok(if report.verdict == Verdict::Undecided { 3 } else { 0 })
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TableRowOut {
    character: String,
    dim: u64,
}

#[derive(Serialize)]
struct TableOut {
    group: String,
    n: u64,
    rows: Vec<TableRowOut>,
    total: u64,
}

fn cmd_table(group: &str, n: u64, format: Format) -> Result<i32, RunError> {
    let gs = specs::parse_group_spec(group)?;
    let handle = specs::resolve_group(&gs)?;
    let Some(family) = handle.complete_family() else {
        return Err(RunError::Usage(format!(
            "table needs a group with a complete built-in character family \
             (cycleprod, prodcyc, dihedral, symmetric:2 or symmetric:3); '{group}' has none"
        )));
    };
    let mut rows = Vec::new();
    let mut total = 0u64;
    for chi in &family {
        let dim = symclass::dim_symmetry_class(&symclass::build_symmetrizer(chi), n)?;
        total += dim;
        rows.push(TableRowOut { character: chi.label().to_string(), dim });
    }
    let out = TableOut { group: handle.spec_string(), n, rows, total };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).expect("serializable")),
        Format::Csv => {
            println!("group,character,n,dim");
            for row in &out.rows {
                println!(
                    "{}",
                    csv_line(&[
                        out.group.clone(),
                        row.character.clone(),
                        out.n.to_string(),
                        row.dim.to_string(),
                    ])
                );
            }
        }
        Format::Text => {
            println!("group: {}   n: {}", out.group, out.n);
            let width = out.rows.iter().map(|r| r.character.len()).max().unwrap_or(8);
            for row in &out.rows {
                println!("{:<width$}  {}", row.character, row.dim);
            }
            println!("{:<width$}  {}", "total", out.total);
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(
    group: Option<&str>,
    character: Option<&str>,
    n: u64,
    level: &str,
    format: Format,
) -> Result<i32, RunError> {
    let level: Level = level.parse().map_err(RunError::Usage)?;
    let reports: Vec<VerificationReport> = match (group, character) {
        (None, None) => verify::run_suite(&verify::default_matrix(), level),
        (Some(g), None) => {
            let gs = specs::parse_group_spec(g)?;
            let handle = specs::resolve_group(&gs)?;
            let Some(family) = handle.complete_family() else {
                return Err(RunError::Usage(format!(
                    "verify with only --group needs a complete built-in family; \
                     '{g}' has none (pass --char as well)"
                )));
            };
            let matrix: Vec<Instance> = family
                .iter()
                .map(|chi| Instance::new(&handle.spec_string(), chi.label(), n))
                .collect();
            verify::run_suite(&matrix, level)
        }
        (Some(g), Some(c)) => {
            let gs = specs::parse_group_spec(g)?;
            let handle = specs::resolve_group(&gs)?;
            let cs = specs::parse_char_spec(c)?;
            match cs {
                CharSpec::All => {
                    let Some(family) = handle.complete_family() else {
                        return Err(RunError::Usage(format!(
                            "--char all needs a complete built-in family; '{g}' has none"
                        )));
                    };
                    let matrix: Vec<Instance> = family
                        .iter()
                        .map(|chi| Instance::new(&handle.spec_string(), chi.label(), n))
                        .collect();
                    verify::run_suite(&matrix, level)
                }
                CharSpec::File(ref path) => {
                    // File-supplied values run through the same battery;
                    // anything that is a valid class function but not a
                    // character fails the named projection checks.
                    let (_, chi) = specs::load_character_file(path, Some(&handle))?;
                    vec![verify::run_instance_with_character(
                        &handle,
                        chi.label(),
                        &chi,
                        n,
                        level,
                    )]
                }
                _ => {
                    let inst = Instance::new(g, c, n);
                    vec![verify::run_instance(&inst, level)]
                }
            }
        }
        (None, Some(_)) => {
            return Err(RunError::Usage("--char without --group is not meaningful".into()))
        }
    };

    match format {
        Format::Json => {
            for r in &reports {
                println!("{}", serde_json::to_string(r).expect("serializable"));
            }
        }
        Format::Csv => {
            println!("instance,check,status,expected,actual");
            for r in &reports {
                for c in &r.checks {
                    println!(
                        "{}",
                        csv_line(&[
                            r.instance.clone(),
                            c.name.clone(),
                            format!("{:?}", c.status).to_lowercase(),
                            c.expected.clone(),
                            c.actual.clone(),
                        ])
                    );
                }
            }
        }
        Format::Text => {
            let mut pass = 0usize;
            let mut fail = 0usize;
            let mut undecided = 0usize;
            for r in &reports {
                let status = if r.failed() {
                    fail += 1;
                    "FAIL"
                } else if r.undecided() {
                    undecided += 1;
                    "UNDECIDED"
                } else {
                    pass += 1;
                    "ok"
                };
                println!("{status:9} {} ({} checks, {:.1} ms)", r.instance, r.checks.len(), r.elapsed_ms);
                for c in r.checks.iter().filter(|c| c.status != verify::Status::Pass) {
                    println!("          {}: expected {}, got {}", c.name, c.expected, c.actual);
                }
            }
            println!("{pass} passed, {fail} failed, {undecided} undecided");
        }
    }

    if verify::suite_failed(&reports) {
        return Err(RunError::Invariant("verification suite reported failures".into()));
    }
    if verify::suite_undecided(&reports) {
        return Err(RunError::Undecided("verification suite left checks undecided".into()));
    }
    Ok(0)
}
