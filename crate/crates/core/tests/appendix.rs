//! Searches for maps from the Picard modular group onto the order 1536
//! quotient and checks their kernels.

use ballq_core::fixtures;
use ballq_core::fpgroup::*;
use num_bigint::BigInt;

fn bundled(name: &str) -> Presentation {
    parse_group_file(fixtures::get(name).unwrap()).unwrap().presentation
}

fn surjections() -> (Presentation, Vec<FiniteImage>) {
    let f = bundled("f1536.grp");
    let gamma = bundled("gamma_picard.grp");
    let table = todd_coxeter(&f, &[], DEFAULT_MAX_COSETS).unwrap();
    let regular: Vec<Perm> = (0..f.ngens()).map(|g| Perm::new(table.generator_action(g)).unwrap()).collect();
    let elements = ElementTable::new(&regular, 2000).unwrap();
    assert_eq!(elements.len(), 1536);
    let opts = HomOptions {
        surjective_only: true,
        up_to_conjugacy: true,
        node_limit: 10_000_000,
    };
    let search = find_homomorphisms_in(&gamma, &elements, opts).unwrap();
    assert!(search.complete);
    let images = search
        .found
        .into_iter()
        .map(|rho| verify_finite_image(&gamma, rho).unwrap())
        .collect();
    (gamma, images)
}

#[test]
fn every_surjection_has_the_expected_kernel() {
    let (gamma, images) = surjections();
    // one class per outer automorphism of F that the search cannot see
    assert_eq!(images.len(), 8);
    let expected: Vec<BigInt> = [2; 9].into_iter().chain([4; 6]).map(BigInt::from).collect();
    for img in &images {
        assert_eq!(img.order, 1536u32.into());
        let ab = subgroup_abelianization(&gamma, img, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion, expected);
        assert_eq!(ab.to_string(), "(Z/2)^9 x (Z/4)^6");
    }
}

#[test]
fn cyclic_torsion_from_the_relators_survives() {
    let (gamma, images) = surjections();
    for (text, order) in [("i", 2), ("q", 2), ("i*q", 3), ("i*t", 12), ("i*q*t", 8)] {
        let w = gamma.parse_word(text).unwrap();
        for img in &images {
            for k in 1..order {
                assert!(!kernel_membership(img, &w.pow(k)), "{text}^{k}");
            }
            assert!(kernel_membership(img, &w.pow(order)));
        }
    }
}
