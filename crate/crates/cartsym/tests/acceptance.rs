//! Acceptance suite: every headline result the library claims, checked
//! end to end at zero tolerance (exact arithmetic throughout). One pass/fail
//! line prints per criterion; run with `--nocapture` to see them.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num::integer::gcd;

use cartsym::chars::{self, DihedralCharId};
use cartsym::cyclo::{ramanujan, rat, ratio, Cyclotomic};
use cartsym::formulas::{self, CycleStructure};
use cartsym::obasis::{self, Verdict};
use cartsym::perm::families::{self, DihedralGroup};
use cartsym::specs;
use cartsym::symclass::{
    block_symmetrizer, build_symmetrizer, column_inner_product, dim_symmetry_class, gram_entry,
    norm_squared, SquareMatrix,
};
use cartsym::verify::{self, Level};

fn criterion(number: u32, name: &str, run: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(run);
    match &outcome {
        Ok(()) => println!("acceptance {number:02} {name}: PASS"),
        Err(_) => println!("acceptance {number:02} {name}: FAIL"),
    }
    if let Err(e) = outcome {
        resume_unwind(e);
    }
}

fn dihedral_psi_range(m: usize) -> impl Iterator<Item = usize> {
    (1..m).filter(move |h| 2 * h < m)
}

#[test]
fn acceptance_01_dihedral_dimension_table() {
    criterion(1, "dihedral dimension table", || {
        for m in 3..=12usize {
            let start = Instant::now();
            for n in [2u64, 3] {
                let d = DihedralGroup::new(m).unwrap();
                for (id, chi) in chars::dihedral_family(&d) {
                    let dim = dim_symmetry_class(&build_symmetrizer(&chi), n).unwrap();
                    let expect = match id {
                        DihedralCharId::Lambda(1) | DihedralCharId::Lambda(3) => n,
                        DihedralCharId::Lambda(_) => 0,
                        DihedralCharId::Psi(_) => 2 * n,
                    };
                    assert_eq!(dim, expect, "m = {m}, n = {n}, {id}");
                    // The standalone closed form agrees.
                    assert_eq!(formulas::dim_dihedral(m, id, n).unwrap(), expect);
                }
            }
            let elapsed = start.elapsed();
            assert!(
                elapsed < Duration::from_secs(1),
                "degree {m} table took {elapsed:?}, budget is 1 s"
            );
        }
    });
}

#[test]
fn acceptance_02_family_completeness() {
    criterion(2, "complete families sum to n*m", || {
        let mut group_specs: Vec<String> = (3..=12).map(|m| format!("dihedral:{m}")).collect();
        group_specs.extend([
            "cycleprod:(1 2 3)@3".to_string(),
            "cycleprod:(1 2)(3 4)@4".to_string(),
            "cycleprod:(1 2 3)(4 5)@5".to_string(),
            "cycleprod:(1 2 3 4)(5 6 7)@7".to_string(),
            "cycleprod:(1 2)(3 4)(5 6 7)@7".to_string(),
            "prodcyc:(1 2 3);(4 5)@5".to_string(),
            "prodcyc:(1 2 3);(4 5)@6".to_string(),
            "prodcyc:(1 2);(3 4)@4".to_string(),
        ]);
        for spec in &group_specs {
            let handle = specs::resolve_group(&specs::parse_group_spec(spec).unwrap()).unwrap();
            let family = handle.complete_family().expect("matrix groups have full families");
            let m = handle.group().degree() as u64;
            for n in [2u64, 3] {
                let total: u64 = family
                    .iter()
                    .map(|chi| dim_symmetry_class(&build_symmetrizer(chi), n).unwrap())
                    .sum();
                assert_eq!(total, n * m, "{spec}, n = {n}");
            }
        }
    });
}

#[test]
fn acceptance_03_projection_laws() {
    criterion(3, "projection laws", || {
        // Every symmetrizer in the matrix is an exact hermitian idempotent.
        let mut seen = std::collections::BTreeSet::new();
        for inst in verify::default_matrix() {
            if !seen.insert((inst.group.clone(), inst.character.clone())) {
                continue;
            }
            let handle =
                specs::resolve_group(&specs::parse_group_spec(&inst.group).unwrap()).unwrap();
            let cs = specs::parse_char_spec(&inst.character).unwrap();
            let chi = specs::resolve_character(&handle, &cs).unwrap();
            build_symmetrizer(&chi)
                .verify_projection_laws()
                .unwrap_or_else(|e| panic!("{}: {e}", inst.id()));
        }
        // Complete families resolve the identity.
        for spec in [
            "dihedral:4",
            "dihedral:7",
            "dihedral:12",
            "cycleprod:(1 2 3)(4 5)@5",
            "prodcyc:(1 2);(3 4)@4",
            "symmetric:3",
        ] {
            let handle = specs::resolve_group(&specs::parse_group_spec(spec).unwrap()).unwrap();
            let m = handle.group().degree();
            let mut sum = SquareMatrix::zero(m);
            for chi in handle.complete_family().unwrap() {
                sum = sum.add(build_symmetrizer(&chi).matrix());
            }
            assert_eq!(sum, SquareMatrix::identity(m), "{spec}");
        }
    });
}

#[test]
fn acceptance_04_gram_block_oracle() {
    criterion(4, "gram entries match the nm block oracle", || {
        for inst in verify::default_matrix() {
            let handle =
                specs::resolve_group(&specs::parse_group_spec(&inst.group).unwrap()).unwrap();
            let m = handle.group().degree();
            let n = inst.n;
            if n as usize * m > 36 {
                continue;
            }
            let cs = specs::parse_char_spec(&inst.character).unwrap();
            let chi = specs::resolve_character(&handle, &cs).unwrap();
            let block = block_symmetrizer(&chi, n);
            for i in 1..=n as usize {
                for r in 1..=n as usize {
                    for j in 1..=m {
                        for s in 1..=m {
                            let oracle = column_inner_product(
                                &block,
                                (i - 1) * m + (j - 1),
                                (r - 1) * m + (s - 1),
                            );
                            let expect = if i == r {
                                gram_entry(&chi, j, s).unwrap()
                            } else {
                                Cyclotomic::zero()
                            };
                            assert_eq!(
                                oracle,
                                expect,
                                "{} i={i} r={r} j={j} s={s}",
                                inst.id()
                            );
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn acceptance_05_norm_values() {
    criterion(5, "closed-form norms", || {
        for m in 3..=6usize {
            let sm = Arc::new(families::symmetric(m).unwrap());
            let chi = chars::theta_minus_one(&sm).unwrap();
            assert_eq!(norm_squared(&chi, m).unwrap(), ratio(m as i64 - 1, m as i64));
        }
        let d8 = DihedralGroup::new(4).unwrap();
        let psi = chars::dihedral_character(&d8, DihedralCharId::Psi(1)).unwrap();
        for j in 1..=4 {
            assert_eq!(norm_squared(&psi, j).unwrap(), ratio(1, 2));
        }
        for q in [5usize, 7] {
            let d = DihedralGroup::new(q).unwrap();
            for h in dihedral_psi_range(q) {
                let psi = chars::dihedral_character(&d, DihedralCharId::Psi(h)).unwrap();
                assert_eq!(norm_squared(&psi, 1).unwrap(), ratio(2, q as i64), "q={q} h={h}");
            }
        }
    });
}

#[test]
fn acceptance_06_cycle_product_closed_form() {
    criterion(6, "cyclic closed form equals the trace", || {
        let start = Instant::now();
        for lengths in [vec![3usize], vec![2, 2], vec![3, 2], vec![4, 3], vec![2, 2, 3]] {
            let degree: usize = lengths.iter().sum();
            let cs = CycleStructure::from_lengths(&lengths, degree).unwrap();
            let group =
                cartsym::perm::families::CycleProductGroup::new(cs.supports(), degree).unwrap();
            for n in [2u64, 3] {
                let mut total = 0u64;
                for q in 0..cs.modulus() {
                    // dim_cycle_product aborts internally on any formula vs
                    // trace mismatch; re-derive the trace here regardless.
                    let formula = formulas::dim_cycle_product(&cs, q, n).unwrap();
                    let chi = chars::cyclic_character(&group, q).unwrap();
                    let trace = dim_symmetry_class(&build_symmetrizer(&chi), n).unwrap();
                    assert_eq!(formula, trace, "{lengths:?} q={q} n={n}");
                    total += formula;
                }
                assert_eq!(total, n * degree as u64, "{lengths:?} n={n}");
            }
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(2), "sweep took {elapsed:?}, budget is 2 s");
    });
}

#[test]
fn acceptance_07_product_of_cyclics_closed_form() {
    criterion(7, "product-of-cyclics closed form and discrepancy flag", || {
        let cases = [
            (vec![3usize, 2], 5usize),
            (vec![3, 2], 6),
            (vec![2, 2], 4),
        ];
        for (lengths, degree) in cases {
            let cs = CycleStructure::from_lengths(&lengths, degree).unwrap();
            let group =
                cartsym::perm::families::ProductOfCyclicsGroup::new(cs.supports(), degree)
                    .unwrap();
            let mut tuples = vec![Vec::new()];
            for &len in &lengths {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t: Vec<usize>| {
                        (0..len).map(move |q| {
                            let mut t = t.clone();
                            t.push(q);
                            t
                        })
                    })
                    .collect();
            }
            for qs in tuples {
                for n in [2u64, 3] {
                    let dims = formulas::dim_product_of_cyclics(&cs, &qs, n).unwrap();
                    let chi = chars::product_cyclic_character(&group, &qs).unwrap();
                    let trace = dim_symmetry_class(&build_symmetrizer(&chi), n).unwrap();
                    assert_eq!(dims.corrected, trace, "{lengths:?}@{degree} {qs:?} n={n}");
                    // The literal reading is evaluated and flagged, never
                    // silently replaced.
                    assert_eq!(
                        dims.discrepancy,
                        dims.corrected != dims.literal,
                        "{lengths:?}@{degree} {qs:?}"
                    );
                }
            }
        }
        // The all-zero tuple undercounts in the literal reading: the flag
        // must fire.
        let cs = CycleStructure::from_lengths(&[2, 2], 4).unwrap();
        let d = formulas::dim_product_of_cyclics(&cs, &[0, 0], 2).unwrap();
        assert!(d.discrepancy);
        assert_eq!(d.corrected, 4);
        assert_eq!(d.literal, 2);
    });
}

#[test]
fn acceptance_08_dihedral_criterion_vs_search() {
    criterion(8, "dihedral criterion equals exhaustive search", || {
        let start = Instant::now();
        for m in 3..=12usize {
            let d = DihedralGroup::new(m).unwrap();
            for h in dihedral_psi_range(m) {
                let by_criterion = obasis::dihedral_criterion(m, h).unwrap();
                let psi = chars::dihedral_character(&d, DihedralCharId::Psi(h)).unwrap();
                let report = obasis::search_obasis(&psi, obasis::DEFAULT_SUBSET_BUDGET).unwrap();
                let by_search = match report.verdict {
                    Verdict::HasOBasis => true,
                    Verdict::NoOBasis => false,
                    Verdict::Undecided => panic!("search must decide m={m} h={h}"),
                };
                assert_eq!(by_criterion, by_search, "m={m} h={h}");
            }
        }
        // Named instances.
        for (m, h) in [(4usize, 1usize), (8, 1), (8, 2)] {
            assert!(obasis::dihedral_criterion(m, h).unwrap(), "({m},{h})");
        }
        for m in [5usize, 6, 7, 9] {
            for h in dihedral_psi_range(m) {
                assert!(!obasis::dihedral_criterion(m, h).unwrap(), "({m},{h})");
            }
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(5), "sweep took {elapsed:?}, budget is 5 s");
    });
}

#[test]
fn acceptance_09_power_of_two_space_verdict() {
    criterion(9, "space-level verdict at powers of two", || {
        for m in 3..=12usize {
            let d = DihedralGroup::new(m).unwrap();
            let family: Vec<(String, chars::Character)> = chars::dihedral_family(&d)
                .into_iter()
                .map(|(id, c)| (id.to_string(), c))
                .collect();
            let v = obasis::space_obasis_verdict(&family, obasis::DEFAULT_SUBSET_BUDGET).unwrap();
            assert!(v.complete_family, "m = {m}");
            let expect = m == 4 || m == 8;
            assert_eq!(v.verdict, Some(expect), "m = {m}");
        }
    });
}

#[test]
fn acceptance_10_obstruction_soundness_and_converse_failure() {
    criterion(10, "norm window soundness; converse fails", || {
        // The window fires and the search confirms.
        let mut windowed: Vec<chars::Character> = Vec::new();
        for m in 3..=5usize {
            let sm = Arc::new(families::symmetric(m).unwrap());
            windowed.push(chars::theta_minus_one(&sm).unwrap());
        }
        let a4 = Arc::new(families::alternating(4).unwrap());
        windowed.push(chars::theta_minus_one(&a4).unwrap());
        for chi in &windowed {
            let hit = obasis::norm_window_obstruction(chi).unwrap();
            assert!(hit.is_some(), "{}", chi.label());
            let report = obasis::search_obasis(chi, obasis::DEFAULT_SUBSET_BUDGET).unwrap();
            assert_eq!(report.verdict, Verdict::NoOBasis, "{}", chi.label());
        }

        // Small norms escape the window, yet the classes still fail.
        for q in [5usize, 7] {
            let d = DihedralGroup::new(q).unwrap();
            for h in dihedral_psi_range(q) {
                let psi = chars::dihedral_character(&d, DihedralCharId::Psi(h)).unwrap();
                let ns = norm_squared(&psi, 1).unwrap();
                assert_eq!(ns, ratio(2, q as i64));
                assert!(ns < ratio(1, 2));
                assert!(obasis::norm_window_obstruction(&psi).unwrap().is_none());
                let report = obasis::search_obasis(&psi, obasis::DEFAULT_SUBSET_BUDGET).unwrap();
                assert_eq!(report.verdict, Verdict::NoOBasis, "q={q} h={h}");
            }
        }
    });
}

#[test]
fn acceptance_11_ramanujan_kernel() {
    criterion(11, "Ramanujan closed form equals the exponential sum", || {
        // Independent oracle: the literal root-of-unity sum over residues
        // coprime to m, evaluated in exact cyclotomic arithmetic.
        let exponential_sum = |m: u64, q: u64| -> Cyclotomic {
            let mut acc = Cyclotomic::zero();
            for s in 0..m {
                if m == 1 || gcd(s, m) == 1 {
                    acc = &acc + &Cyclotomic::root_of_unity(m as usize, (q * s) as i64);
                }
            }
            acc
        };
        for m in 1..=30u64 {
            for q in 0..=30u64 {
                let closed = ramanujan(m, q);
                assert_eq!(
                    exponential_sum(m, q),
                    Cyclotomic::from_rational(rat(closed)),
                    "c_{m}({q})"
                );
            }
        }
    });
}

#[test]
fn acceptance_12_negative_control() {
    criterion(12, "corrupted character fails a named check with exit 2", || {
        // Library level: doubling every value keeps a valid class function
        // but destroys idempotency; the suite must name the broken law.
        let d8 = DihedralGroup::new(4).unwrap();
        let psi = chars::dihedral_character(&d8, DihedralCharId::Psi(1)).unwrap();
        let doubled: Vec<Cyclotomic> = psi.values().iter().map(|v| v.scale(&rat(2))).collect();
        let corrupt = chars::Character::unchecked(
            Arc::clone(d8.group()),
            doubled.clone(),
            "doubled-psi",
        );
        let handle = specs::GroupHandle::Dihedral(d8.clone());
        let report =
            verify::run_instance_with_character(&handle, "doubled-psi", &corrupt, 2, Level::Quick);
        assert!(report.failed());
        assert!(
            report
                .checks
                .iter()
                .any(|c| c.status == verify::Status::Fail && c.name == "projection.idempotent"),
            "{:?}",
            report.checks
        );

        // CLI level: the same corruption through a character file exits 2.
        let spec = specs::parse_group_spec("dihedral:4").unwrap();
        let mut file = specs::character_to_file(&corrupt, &spec);
        file.label = Some("doubled-psi".to_string());
        let dir = std::env::temp_dir().join("cartsym-acceptance");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("corrupt-char.json");
        std::fs::write(&path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_cartsym"))
            .args([
                "verify",
                "--group",
                "dihedral:4",
                "--char",
                &format!("file:{}", path.display()),
            ])
            .output()
            .expect("binary runs");
        assert_eq!(output.status.code(), Some(2), "stdout: {}", String::from_utf8_lossy(&output.stdout));
        let stdout = String::from_utf8_lossy(&output.stdout);
        assert!(stdout.contains("projection.idempotent"), "{stdout}");

        // Sanity: the uncorrupted values pass through the same file path.
        let clean_file = specs::character_to_file(&psi, &spec);
        let clean_path = dir.join("clean-char.json");
        std::fs::write(&clean_path, serde_json::to_string_pretty(&clean_file).unwrap()).unwrap();
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_cartsym"))
            .args([
                "verify",
                "--group",
                "dihedral:4",
                "--char",
                &format!("file:{}", clean_path.display()),
            ])
            .output()
            .expect("binary runs");
        assert_eq!(output.status.code(), Some(0));
    });
}
