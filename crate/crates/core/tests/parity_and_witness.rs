//! Parity identities and witness-recipe completeness over the catalog.

use cobord::kink::{kink_of, spin_parity_check};
use cobord::manifold::{
    catalog, connected_sum, product, CobordismDescriptor, CoefficientField, ManifoldDescriptor,
    TriState,
};
use cobord::witness::{
    menu_for_dimension, revalidate_descriptor, revalidate_euler, solve_counts, WitnessError,
};

fn cat(name: &str, p: i64) -> ManifoldDescriptor {
    catalog(name, Some(p)).unwrap()
}

/// Closed spin catalog manifolds of even dimension, paired with dim/2.
fn even_spin_examples() -> Vec<ManifoldDescriptor> {
    let mut out = vec![
        cat("S", 2),
        cat("S", 4),
        cat("S", 6),
        cat("T", 2),
        cat("T", 4),
        cat("T", 6),
        cat("CP", 1),
        cat("CP", 3),
        cat("CP", 5),
        cat("HP", 1),
        cat("HP", 3),
        catalog("K3", None).unwrap(),
        product(&cat("S", 2), &cat("S", 2)),
        product(&cat("S", 2), &cat("S", 4)),
        product(&cat("S", 2), &cat("T", 2)),
        product(&cat("HP", 1), &cat("S", 2)),
        connected_sum(&catalog("K3", None).unwrap(), &catalog("K3", None).unwrap()).unwrap(),
    ];
    out.retain(|m| m.spin && m.dim % 2 == 0);
    out
}

#[test]
fn spin_manifolds_off_the_8_periodic_dims_have_even_euler() {
    // dim = 2q' with q' != 0 mod 4
    let mut tested = 0;
    for m in even_spin_examples() {
        let q = m.dim / 2;
        if q % 4 == 0 {
            continue;
        }
        assert_eq!(
            m.euler_characteristic() % 2,
            0,
            "{} has odd Euler characteristic",
            m.name
        );
        tested += 1;
    }
    assert!(tested >= 10);
}

fn odd_catalog() -> Vec<ManifoldDescriptor> {
    vec![
        cat("S", 1),
        cat("S", 3),
        cat("S", 5),
        cat("S", 7),
        cat("T", 3),
        cat("T", 5),
        cat("T", 7),
        cat("RP", 3),
        cat("RP", 7),
        product(&cat("S", 2), &cat("S", 3)),
        product(&cat("S", 1), &cat("S", 4)),
        product(&cat("S", 3), &cat("S", 4)),
    ]
}

#[test]
fn product_cobordisms_satisfy_the_boundary_parity_identity() {
    // For M = N x I: chi(M) = chi(N) and the boundary is two copies of N,
    // so chi(M) + chi-hat(dM) must be even.
    for n in odd_catalog() {
        let chi_m = n.euler_characteristic();
        let chi_hat = n.semi_characteristic(CoefficientField::Z2).unwrap() as i64;
        let total = chi_m + 2 * chi_hat;
        assert_eq!(total.rem_euclid(2), 0, "N = {}", n.name);

        let cob = CobordismDescriptor::new(
            n.dim + 1,
            chi_m,
            vec![n.clone()],
            vec![n.clone()],
            n.spin,
            TriState::Unknown,
        )
        .unwrap();
        let parity = (cob.euler + i64::from(cob.boundary_semi_characteristic_z2().unwrap()))
            .rem_euclid(2);
        assert_eq!(parity, 0, "N = {}", n.name);
    }
}

#[test]
fn punctured_disk_parity() {
    // D^{2q} has chi = 1 and boundary S^{2q-1} with chi-hat = 1.
    for q in 1..=4i64 {
        let sphere = cat("S", 2 * q - 1);
        let chi_hat = sphere.semi_characteristic(CoefficientField::Z2).unwrap() as i64;
        assert_eq!((1 + chi_hat).rem_euclid(2), 0, "q = {q}");
    }
}

#[test]
fn stably_parallelizable_boundary_parity_on_catalog_instances() {
    // chi-hat(dM) = chi(M) mod 2 for even-dimensional cobordisms with
    // stably parallelizable boundary, on instances we can build: N x I and
    // sphere-bounding disks.
    for n in [cat("S", 1), cat("S", 3), cat("T", 3), cat("T", 5)] {
        let cob = CobordismDescriptor::new(
            n.dim + 1,
            n.euler_characteristic(),
            vec![n.clone()],
            vec![n.clone()],
            n.spin,
            TriState::Yes,
        )
        .unwrap();
        let report = kink_of(&cob).unwrap();
        assert_eq!(report.kink, cob.euler);
        if cob.spin {
            assert_eq!(report.parity_ok, Some(true), "N = {}", n.name);
            assert!(spin_parity_check(&cob, report.kink).unwrap());
        }
    }
}

#[test]
fn parity_completeness_of_menus() {
    // even-delta menus solve exactly the even offsets; the 7 mod 8 menus
    // solve everything
    for n in [3usize, 5, 9, 11, 13] {
        let menu = menu_for_dimension(n).unwrap();
        for chi in -50i64..=50 {
            let res = solve_counts(chi, &menu, 0);
            if chi % 2 == 0 {
                let r = res.unwrap_or_else(|e| panic!("n={n} chi={chi}: {e}"));
                assert_eq!(revalidate_euler(&r, &menu).unwrap(), 0);
            } else {
                assert!(
                    matches!(res, Err(WitnessError::NoSolution { .. })),
                    "n={n} chi={chi} should hit the parity obstruction"
                );
            }
        }
    }
    for n in [7usize, 15] {
        let menu = menu_for_dimension(n).unwrap();
        for chi in -50i64..=50 {
            let r = solve_counts(chi, &menu, 0).unwrap();
            assert_eq!(revalidate_euler(&r, &menu).unwrap(), 0);
        }
    }
}

#[test]
fn recipes_preserve_spin_and_revalidate_by_descriptor_folding() {
    for n in [3usize, 5, 7, 9, 11, 13, 15] {
        let menu = menu_for_dimension(n).unwrap();
        for chi in [-6i64, -2, 0, 2, 6] {
            let r = match solve_counts(chi, &menu, 0) {
                Ok(r) => r,
                Err(WitnessError::NoSolution { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let fold = revalidate_descriptor(&r, &menu).unwrap();
            if let Some(f) = fold {
                assert!(f.spin, "n={n} chi={chi}");
                assert!(f.orientable);
            }
        }
    }
}
