use chainmat::gallery::{self, Target};
use chainmat::indepsys::IndependenceSystem;
use chainmat::oracle;
use chainmat::Error;

const AG: &str = "ag32prime-z4";

#[test]
fn entries_verify() {
    for name in gallery::names() {
        if name == AG {
            continue;
        }
        let report = gallery::verify_entry(name).unwrap_or_else(|e| panic!("{e}"));
        assert!(report.passed());
    }
}

#[test]
fn ag32prime_matches_up_to_relabelling_only() {
    let report = gallery::inspect_entry(AG).unwrap();
    for c in &report.checks {
        if c.name == "circuits equal target" {
            assert!(!c.passed);
            // The 5-circuits follow from the 4-circuits, so only the swap of
            // one 4-circuit matters.
            let (extra, missing) = c.detail.split_once(" missing: ").unwrap();
            let four = |list: &str| -> Vec<String> {
                list.split(' ').filter(|s| s.matches(',').count() == 3).map(String::from).collect()
            };
            assert_eq!(four(extra.trim_start_matches("extra: ")), vec!["{a,c,f,h}"]);
            assert_eq!(four(missing), vec!["{e,f,g,h}"]);
        } else {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
    let err = gallery::verify_entry(AG).unwrap_err();
    assert!(matches!(err, Error::VerificationFailed(ref s) if s.contains("circuits equal target")));
    // The twisted plane itself is a circuit of the shipped matrix.
    let sys = IndependenceSystem::from_matrix(&gallery::matrix(AG).unwrap()).unwrap();
    let twisted = sys.parse_subset("b,d,e,g").unwrap();
    assert!(sys.circuits().members().contains(&twisted));
}

#[test]
fn small_entries_agree_with_definition() {
    for name in ["u26-z4", "p6-z4", "u23-z4-nonfree"] {
        let g = gallery::matrix(name).unwrap();
        let fast = IndependenceSystem::from_matrix(&g).unwrap();
        let mut sets = fast.independent_sets();
        sets.sort_unstable();
        assert_eq!(sets, oracle::independent_family_by_definition(&g).unwrap(), "{name}");
        assert_eq!(fast.circuits(), oracle::circuits_by_subset_scan(&g).unwrap(), "{name}");
    }
}

#[test]
fn field_references_are_consistent() {
    for name in gallery::names() {
        let m = gallery::manifest(name).unwrap();
        if let Target::Reference { matrix, .. } = &m.target {
            let reference = gallery::matrix_file(matrix).unwrap();
            let sys = IndependenceSystem::from_matrix(&reference).unwrap();
            assert!(sys.check_matroid().is_matroid, "{name}");
            assert_eq!(sys.full_rank(), m.claimed.rank, "{name}");
        }
    }
}

#[test]
fn free_entries_dualize() {
    for name in gallery::names() {
        let m = gallery::manifest(name).unwrap();
        match gallery::dual_entry(name) {
            Ok(d) => {
                assert!(m.claimed.free, "{name}");
                assert!(d.equals_dual_system, "{name}");
                if name != AG {
                    assert!(d.isomorphic_to_target_dual, "{name}");
                }
                assert_eq!(d.system.full_rank(), d.system.n() - m.claimed.rank);
            }
            Err(Error::NotFree) => assert!(!m.claimed.free, "{name}"),
            Err(e) => panic!("{name}: {e}"),
        }
    }
}

#[test]
fn unknown_entry() {
    assert!(matches!(gallery::verify_entry("nope"), Err(Error::UnknownEntry(_))));
}
