mod common;

use chainmat::enumgeo::*;
use chainmat::indepsys::IndependenceSystem;
use chainmat::modindep::{is_modular_independent, MuPath};
use chainmat::oracle::poset_width_by_matching;
use chainmat::Error;
use common::*;

#[test]
fn formula_matches_enumeration_up_to_2_16() {
    for spec in CHAIN_RINGS {
        let r = ring(spec);
        let shapes = shapes_up_to(&r, 1 << 16).unwrap();
        assert!(shapes.len() > 3, "{spec}");
        for shape in shapes {
            let brute = count_cyclic_brute(&shape, &r).unwrap();
            let formula: Vec<u64> = (1..=r.nu())
                .map(|s| count_cyclic_submodules(&shape, &r, s).unwrap() as u64)
                .collect();
            assert_eq!(formula, brute, "{spec} {:?}", shape.0);
        }
    }
}

#[test]
fn torsion_index_is_checked() {
    let z4 = ring("z:4");
    let shape = ModuleShape(vec![1, 1]);
    assert!(matches!(count_cyclic_submodules(&shape, &z4, 0), Err(Error::BadTorsionIndex(0, 2))));
    assert!(matches!(count_cyclic_submodules(&shape, &z4, 3), Err(Error::BadTorsionIndex(3, 2))));
    let t = ring("table:f2xy_xx_yy");
    assert!(count_cyclic_submodules(&ModuleShape(vec![1]), &t, 1).is_err());
    assert!(projective_line(&t).is_err());
    assert!(simple_size_bound(&t, 2).is_err());
}

#[test]
fn primitive_cyclic_counts() {
    assert_eq!(count_cyclic_submodules(&ModuleShape(vec![2]), &ring("z:4"), 2).unwrap(), 6);
    assert_eq!(count_cyclic_submodules(&ModuleShape(vec![2]), &ring("z:8"), 3).unwrap(), 12);
    for spec in CHAIN_RINGS {
        let r = ring(spec);
        for k in 1..=3u32 {
            let free = ModuleShape(vec![k as usize]);
            let n = count_cyclic_submodules(&free, &r, r.nu()).unwrap();
            assert_eq!(simple_size_bound(&r, k).unwrap(), n, "{spec} k={k}");
        }
        // Free cyclic submodules of R^2 are those with |R| elements.
        let free = cyclic_submodules(&r, 2)
            .unwrap()
            .iter()
            .filter(|s| s.len() == r.size())
            .count();
        assert_eq!(simple_size_bound(&r, 2).unwrap(), free as u128);
    }
}

#[test]
fn field_bounds_are_projective_space_counts() {
    for p in [2usize, 3, 5] {
        let f = ring(&format!("z:{p}"));
        for k in 1..=3u32 {
            let want = (p.pow(k) - 1) / (p - 1);
            assert_eq!(simple_size_bound(&f, k).unwrap(), want as u128);
        }
        assert_eq!(projective_line(&f).unwrap().len(), p + 1);
    }
    assert_eq!(cyc_antichain_bound(&ring("z:2"), 2).unwrap(), 3);
}

#[test]
fn projective_line_pairs_independent_triples_dependent() {
    for spec in CHAIN_RINGS {
        let r = ring(spec);
        let pts: Vec<Vec<_>> = projective_line(&r).unwrap().iter().map(|p| p.to_vec()).collect();
        assert_eq!(pts.len(), r.size() + r.size() / r.q());
        assert_eq!(projective_line_size(&r).unwrap(), pts.len());
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let pair = [pts[i].clone(), pts[j].clone()];
                assert!(is_modular_independent(&r, &pair, MuPath::Enumeration).unwrap());
                for l in j + 1..pts.len() {
                    let triple = [pts[i].clone(), pts[j].clone(), pts[l].clone()];
                    assert!(!is_modular_independent(&r, &triple, MuPath::Enumeration).unwrap());
                }
            }
        }
    }
}

#[test]
fn uniform_rank2_sharpness() {
    for (spec, max) in [("z:4", 6), ("z:8", 12), ("z:9", 12), ("fpu:2,2", 6)] {
        let r = ring(spec);
        for n in 1..=max {
            let a = uniform_rank2_representation(&r, n).unwrap().expect("within the bound");
            assert_eq!(a.ncols(), n);
            let m = IndependenceSystem::from_matrix(&a).unwrap();
            assert_eq!(m, IndependenceSystem::uniform(n.min(2), n).unwrap(), "{spec} n={n}");
        }
        assert!(uniform_rank2_representation(&r, max + 1).unwrap().is_none());
    }
    assert!(uniform_rank2_representation(&ring("z:4"), 0).is_err());
}

#[test]
fn antichain_width_agrees_with_dilworth() {
    for (spec, k) in [("z:4", 1), ("z:4", 2), ("z:8", 2), ("z:9", 2), ("fpu:2,2", 2), ("z:4", 3), ("z:2", 3)] {
        let r = ring(spec);
        let width = cyc_antichain_bound(&r, k).unwrap();
        let less = cyclic_poset(&r, k).unwrap();
        assert_eq!(width, poset_width_by_matching(&less), "{spec} k={k}");
        assert!(simple_size_bound(&r, k as u32).unwrap() <= width as u128, "{spec} k={k}");
    }
    assert_eq!(cyc_antichain_bound(&ring("z:4"), 1).unwrap(), 1);
    assert_eq!(cyc_antichain_bound(&ring("z:4"), 2).unwrap(), 6);
}

#[test]
fn cyclic_poset_is_a_strict_order() {
    let less = cyclic_poset(&ring("z:8"), 2).unwrap();
    let n = less.len();
    for a in 0..n {
        assert!(!less[a][a]);
        for b in 0..n {
            if less[a][b] {
                assert!(!less[b][a]);
                for c in 0..n {
                    if less[b][c] {
                        assert!(less[a][c]);
                    }
                }
            }
        }
    }
}
