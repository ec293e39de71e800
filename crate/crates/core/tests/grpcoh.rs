use std::sync::Arc;

use ecomu3_core::exactla::AbelianGroup;
use ecomu3_core::grpcoh::{
    catalog_module, cohomology_range, cyclic_group, group_by_name, group_cohomology, periodicity_verify,
    standard_modules, symmetric_group, CohomologySource, CohomologyTable, FiniteGroup, FreeResolution, GroupModule,
    GrpcohError, ResolutionCache, SelectionOrder,
};
use ecomu3_core::exactla::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

fn s3() -> Arc<FiniteGroup> {
    Arc::new(symmetric_group(3))
}

fn resolution(g: &Arc<FiniteGroup>, len: usize) -> FreeResolution {
    FreeResolution::compute(g.clone(), len, SelectionOrder::Forward).unwrap()
}

/// Expected `H^d(Σ3; M)` for the five catalog modules, d ≤ 12.
fn expected(name: &str, d: usize) -> AbelianGroup {
    let z3 = AbelianGroup::cyclic(3);
    match name {
        "trivial" => match (d, d % 4) {
            (0, _) => AbelianGroup::free(1),
            (_, 2) => AbelianGroup::cyclic(2),
            (_, 0) => AbelianGroup::cyclic(6),
            _ => AbelianGroup::zero(),
        },
        "sign" => match d % 4 {
            1 | 3 => AbelianGroup::cyclic(2),
            2 => z3,
            _ => AbelianGroup::zero(),
        },
        "standard" => if d % 4 == 3 { z3 } else { AbelianGroup::zero() },
        "standard⊗standard" => match (d, d % 4) {
            (0, _) => AbelianGroup::free(1),
            (_, 2) => z3,
            _ => AbelianGroup::zero(),
        },
        "standard⊗sign" => if d % 4 == 1 { z3 } else { AbelianGroup::zero() },
        _ => unreachable!(),
    }
}

#[test]
fn sigma3_tables_through_degree_twelve() {
    let g = s3();
    let res = resolution(&g, 13);
    for m in standard_modules(&g).unwrap() {
        let table = cohomology_range(&res, &m, 12).unwrap();
        for (d, h) in table.iter().enumerate() {
            assert_eq!(*h, expected(&m.name, d), "{} in degree {d}", m.name);
        }
    }
}

#[test]
fn standard_module_degree_three() {
    let g = s3();
    let res = resolution(&g, 4);
    let m = catalog_module(&g, "M").unwrap();
    assert_eq!(group_cohomology(&res, &m, 3).unwrap().to_string(), "Z/3");
}

#[test]
fn cyclic_two_trivial_and_sign() {
    let g = Arc::new(cyclic_group(2));
    let res = resolution(&g, 7);
    let triv = GroupModule::trivial(g.clone());
    let sign = GroupModule::sign(g.clone());
    let t = cohomology_range(&res, &triv, 6).unwrap();
    let s = cohomology_range(&res, &sign, 6).unwrap();
    for d in 0..=6 {
        let want_t = match d {
            0 => AbelianGroup::free(1),
            _ if d % 2 == 0 => AbelianGroup::cyclic(2),
            _ => AbelianGroup::zero(),
        };
        let want_s = if d % 2 == 1 { AbelianGroup::cyclic(2) } else { AbelianGroup::zero() };
        assert_eq!(t[d], want_t, "trivial {d}");
        assert_eq!(s[d], want_s, "sign {d}");
    }
}

#[test]
fn cyclic_five_trivial() {
    let g = Arc::new(cyclic_group(5));
    let res = resolution(&g, 5);
    let h = cohomology_range(&res, &GroupModule::trivial(g.clone()), 4).unwrap();
    assert_eq!(h[2], AbelianGroup::cyclic(5));
    assert_eq!(h[3], AbelianGroup::zero());
}

#[test]
fn degree_zero_matches_brute_force_invariants() {
    let g = s3();
    let res = resolution(&g, 2);
    for m in standard_modules(&g).unwrap() {
        let h0 = group_cohomology(&res, &m, 0).unwrap();
        assert_eq!(h0, AbelianGroup::free(m.invariants_brute_force().len()), "{}", m.name);
    }
}

#[test]
fn positive_degree_torsion_divides_group_order() {
    let g = s3();
    let res = resolution(&g, 10);
    for m in standard_modules(&g).unwrap() {
        for (d, h) in cohomology_range(&res, &m, 9).unwrap().iter().enumerate().skip(1) {
            assert_eq!(h.free_rank, 0);
            for t in &h.torsion {
                assert!((BigInt::from(6) % t).is_zero(), "{} degree {d}: {t}", m.name);
            }
        }
    }
}

#[test]
fn result_independent_of_generator_order() {
    let g = s3();
    let fwd = resolution(&g, 9);
    let rev = FreeResolution::compute(g.clone(), 9, SelectionOrder::Reversed).unwrap();
    for m in standard_modules(&g).unwrap() {
        assert_eq!(cohomology_range(&fwd, &m, 8).unwrap(), cohomology_range(&rev, &m, 8).unwrap(), "{}", m.name);
    }
}

#[test]
fn period_four_verified() {
    let g = s3();
    let res = resolution(&g, 13);
    for m in standard_modules(&g).unwrap() {
        assert!(periodicity_verify(&res, &m, 4, 12).unwrap(), "{}", m.name);
    }
    assert!(!periodicity_verify(&res, &catalog_module(&g, "Z").unwrap(), 2, 12).unwrap());
}

#[test]
fn table_extends_periodically() {
    let g = s3();
    let res = resolution(&g, 9);
    let m = catalog_module(&g, "M").unwrap();
    let table = CohomologyTable::compute(&res, &m, 8, Some(4)).unwrap();
    let (h, src) = table.get(15).unwrap();
    assert_eq!(h, AbelianGroup::cyclic(3));
    assert_eq!(src, CohomologySource::PeriodicExtension);
    assert_eq!(table.get(7).unwrap().1, CohomologySource::Computed);
}

#[test]
fn wrong_period_rejected() {
    let g = s3();
    let res = resolution(&g, 9);
    let m = catalog_module(&g, "Z").unwrap();
    assert!(matches!(CohomologyTable::compute(&res, &m, 8, Some(3)), Err(GrpcohError::PeriodicityFailure { .. })));
}

#[test]
fn resolution_too_short() {
    let g = s3();
    let res = resolution(&g, 3);
    let m = catalog_module(&g, "Z").unwrap();
    assert!(matches!(group_cohomology(&res, &m, 3), Err(GrpcohError::ResolutionTooShort { .. })));
}

#[test]
fn non_homomorphism_rejected() {
    let g = s3();
    let bad = vec![IntMatrix::from_rows(&[[0, 1], [1, 0]]), IntMatrix::from_rows(&[[0, 1], [1, 0]])];
    assert!(matches!(GroupModule::new("bad", g, bad), Err(GrpcohError::NotAHomomorphism { .. })));
}

#[test]
fn group_names() {
    assert_eq!(group_by_name("S3").unwrap().order(), 6);
    assert_eq!(group_by_name("Σ4").unwrap().order(), 24);
    assert_eq!(group_by_name("C7").unwrap().order(), 7);
    assert!(group_by_name("Q8").is_err());
}

#[test]
fn cache_hit_reproduces_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ResolutionCache::new(Some(dir.path().to_path_buf()));
    let g = s3();
    let (a, info_a) = cache.resolve(&g, 6, SelectionOrder::Forward).unwrap();
    let (b, info_b) = cache.resolve(&g, 6, SelectionOrder::Forward).unwrap();
    assert!(!info_a.hit && info_b.hit);
    assert_eq!(info_a.content_hash, info_b.content_hash);
    assert_eq!(a.boundaries, b.boundaries);
    assert_eq!(a.ranks, b.ranks);
}

#[test]
fn sigma4_trivial_low_degrees() {
    let g = Arc::new(symmetric_group(4));
    let res = resolution(&g, 3);
    let h = cohomology_range(&res, &GroupModule::trivial(g.clone()), 2).unwrap();
    assert_eq!(h[1], AbelianGroup::zero());
    // H^2(G; Z) is the character group of G^ab = Z/2
    assert_eq!(h[2], AbelianGroup::cyclic(2));
}
