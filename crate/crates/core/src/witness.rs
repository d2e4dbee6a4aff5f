//! Connected-sum recipes that drive the Euler characteristic of a cobordism
//! to zero (for Lorentzian witnesses) or to a prescribed value (for kink
//! witnesses).
//!
//! Each boundary dimension has a small menu of closed summands together with
//! the change `delta = chi(X) - chi(S^{n+1})` a single interior connected
//! summand causes. Zeroing the Euler characteristic is then a two-variable
//! nonnegative integer problem, solved by bounded exhaustive search so the
//! answer is canonical and deterministic.

use serde::{Deserialize, Serialize};

use crate::manifold::{
    catalog, connected_sum, product, sphere_euler_characteristic, CobordismDescriptor,
    ManifoldDescriptor, ManifoldError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("summand menus exist for odd boundary dimensions only (got {0})")]
    EvenBoundaryDimension(usize),
    #[error("boundary dimension 1 is degenerate: the circle is the only closed 1-manifold, no summand menu is needed")]
    DegenerateDimension,
    #[error("no nonnegative solution: offset {offset} is {residue} mod {modulus}, menu deltas only reach multiples of {modulus}")]
    NoSolution {
        offset: i64,
        residue: i64,
        modulus: i64,
    },
    #[error("prescribed-kink recipes need an even cobordism dimension >= 4 (got {0}); no closed surface raises chi under connected sum")]
    KinkDimensionUnsupported(usize),
    #[error("a prescribed kink target must be nonzero; use a Lorentzian witness (target 0) instead")]
    KinkTargetZero,
    #[error("spin-restricted recipes need a spin base cobordism")]
    NotSpin,
    #[error("recipe names summand '{0}' missing from the menu")]
    UnknownSummand(String),
    #[error("recipe arithmetic does not revalidate: expected {expected}, recomputed {got}")]
    Invalid { expected: i64, got: i64 },
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

/// One admissible connected summand and its effect on chi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MenuEntry {
    pub name: String,
    pub manifold: ManifoldDescriptor,
    pub delta: i64,
}

/// Summand menu for cobordisms of dimension `dim` (= boundary dim + 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandMenu {
    pub dim: usize,
    pub entries: Vec<MenuEntry>,
}

impl SummandMenu {
    fn from_manifolds(dim: usize, manifolds: Vec<ManifoldDescriptor>) -> Self {
        let chi_sphere = sphere_euler_characteristic(dim);
        let entries = manifolds
            .into_iter()
            .map(|m| {
                assert_eq!(m.dim, dim, "menu summand dimension");
                assert!(m.connected, "menu summands are connected");
                MenuEntry {
                    name: m.name.clone(),
                    delta: m.euler_characteristic() - chi_sphere,
                    manifold: m,
                }
            })
            .collect();
        Self { dim, entries }
    }

    pub fn all_spin(&self) -> bool {
        self.entries.iter().all(|e| e.manifold.spin)
    }

    pub fn deltas(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.delta).collect()
    }
}

/// Spin summand menu for zeroing chi of an (n+1)-cobordism, by boundary
/// dimension n:
///
/// - n = 3:           S^1 x S^3 (delta -2), S^2 x S^2 (delta +2)
/// - n = 4q+1, q >= 1: HP^q x S^2 (delta 2q), T^{4q+2} (delta -2)
/// - n = 8q+3, q >= 1: HP^{2q} x S^2 x S^2 (delta 8q+2), T^{8q+4} (delta -2)
/// - n = 8q+7:        HP^{2q+2} (delta 2q+1), T^{8q+8} (delta -2)
///
/// Every entry is spin, so recipes preserve the spin flag of the base.
pub fn menu_for_dimension(n: usize) -> Result<SummandMenu, WitnessError> {
    if n % 2 == 0 {
        return Err(WitnessError::EvenBoundaryDimension(n));
    }
    if n == 1 {
        return Err(WitnessError::DegenerateDimension);
    }
    let dim = n + 1;
    let sphere = |k: usize| catalog("S", Some(k as i64)).expect("sphere");
    let torus = || catalog("T", Some(dim as i64)).map_err(WitnessError::Manifold);
    let hp = |k: usize| catalog("HP", Some(k as i64)).expect("HP");

    let menu = if n == 3 {
        SummandMenu::from_manifolds(dim, vec![product(&sphere(1), &sphere(3)), product(&sphere(2), &sphere(2))])
    } else if n % 4 == 1 {
        let q = (n - 1) / 4;
        SummandMenu::from_manifolds(dim, vec![product(&hp(q), &sphere(2)), torus()?])
    } else if n % 8 == 3 {
        let q = (n - 3) / 8;
        let block = product(&product(&hp(2 * q), &sphere(2)), &sphere(2));
        SummandMenu::from_manifolds(dim, vec![block, torus()?])
    } else {
        debug_assert_eq!(n % 8, 7);
        let q = (n - 7) / 8;
        SummandMenu::from_manifolds(dim, vec![hp(2 * q + 2), torus()?])
    };
    debug_assert!(menu.all_spin());
    Ok(menu)
}

/// Menu for prescribed-kink recipes on an even-dimensional cobordism. These
/// live at the weak-Lorentzian level, so non-spin (and for dimensions
/// 2 mod 4, non-orientable) summands are allowed:
///
/// - CP^{d/2}      (delta d/2 - 1, odd when d = 0 mod 4)
/// - S^2 x S^{d-2} (delta +2)
/// - T^d           (delta -2)
/// - RP^d          (delta -1), added when d = 2 mod 4, where every closed
///   orientable manifold has even chi and CP^{d/2} cannot shift the parity.
pub fn kink_menu(dim: usize) -> Result<SummandMenu, WitnessError> {
    if dim % 2 != 0 || dim < 4 {
        return Err(WitnessError::KinkDimensionUnsupported(dim));
    }
    let sphere = |k: usize| catalog("S", Some(k as i64)).expect("sphere");
    let mut manifolds = vec![
        catalog("CP", Some((dim / 2) as i64))?,
        product(&sphere(2), &sphere(dim - 2)),
        catalog("T", Some(dim as i64))?,
    ];
    if dim % 4 == 2 {
        manifolds.push(catalog("RP", Some(dim as i64))?);
    }
    Ok(SummandMenu::from_manifolds(dim, manifolds))
}

/// Number of copies of one summand in a recipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandCount {
    pub summand: String,
    pub k: u64,
}

/// An explicit connected-sum prescription `M = base # k_1 X_1 # k_2 X_2 ...`
/// together with the Euler characteristic it achieves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecipe {
    pub dim: usize,
    pub base_chi: i64,
    pub target: i64,
    pub counts: Vec<SummandCount>,
    pub resulting_euler: i64,
}

impl WitnessRecipe {
    pub fn total_count(&self) -> u64 {
        self.counts.iter().map(|c| c.k).sum()
    }
}

/// Finds the minimal nonnegative counts with
/// `chi_base + sum k_i * delta_i = target`.
///
/// Minimality is lexicographic in (total count, k_1, k_2, ...), so identical
/// inputs always give identical recipes. The search is exhaustive up to a
/// total-count bound that provably contains a solution whenever the gcd of
/// the deltas divides the offset and the menu has deltas of both signs.
pub fn solve_counts(
    chi_base: i64,
    menu: &SummandMenu,
    target: i64,
) -> Result<WitnessRecipe, WitnessError> {
    assert!(!menu.entries.is_empty(), "menu must be nonempty");
    let deltas = menu.deltas();
    let offset = target - chi_base;
    let bound: u64 = offset.unsigned_abs() + deltas.iter().map(|d| d.unsigned_abs()).sum::<u64>() + 2;

    let mut counts = vec![0u64; deltas.len()];
    for total in 0..=bound {
        if search(&deltas, offset, total, 0, &mut counts) {
            return Ok(WitnessRecipe {
                dim: menu.dim,
                base_chi: chi_base,
                target,
                counts: menu
                    .entries
                    .iter()
                    .zip(&counts)
                    .map(|(e, &k)| SummandCount {
                        summand: e.name.clone(),
                        k,
                    })
                    .collect(),
                resulting_euler: target,
            });
        }
    }

    let modulus = deltas.iter().fold(0i64, |g, d| gcd(g, d.abs())).max(1);
    Err(WitnessError::NoSolution {
        offset,
        residue: offset.rem_euclid(modulus),
        modulus,
    })
}

fn search(deltas: &[i64], remaining: i64, budget: u64, idx: usize, counts: &mut Vec<u64>) -> bool {
    if idx == deltas.len() {
        return remaining == 0 && budget == 0;
    }
    if idx == deltas.len() - 1 {
        // last slot is forced: k = budget, check the arithmetic
        counts[idx] = budget;
        return deltas[idx].checked_mul(budget as i64) == Some(remaining);
    }
    for k in 0..=budget {
        counts[idx] = k;
        let used = deltas[idx] * k as i64;
        if search(deltas, remaining - used, budget - k, idx + 1, counts) {
            return true;
        }
    }
    false
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Recipe for a weakly Lorentzian cobordism with `Kink = t`: adjusts the
/// Euler characteristic of the base to `t`, so the kink theorem for even
/// cobordism dimension gives the prescribed kink number.
pub fn prescribed_kink_recipe(
    base: &CobordismDescriptor,
    t: i64,
) -> Result<WitnessRecipe, WitnessError> {
    if t == 0 {
        return Err(WitnessError::KinkTargetZero);
    }
    let menu = kink_menu(base.dim)?;
    solve_counts(base.euler, &menu, t)
}

/// Spin-restricted variant: summands come from the spin menu, so the result
/// is again a spin cobordism. Parity failures (a target the spin parity
/// identity forbids) surface as `NoSolution`.
pub fn prescribed_kink_recipe_spin(
    base: &CobordismDescriptor,
    t: i64,
) -> Result<WitnessRecipe, WitnessError> {
    if !base.spin {
        return Err(WitnessError::NotSpin);
    }
    if t == 0 {
        return Err(WitnessError::KinkTargetZero);
    }
    if base.dim % 2 != 0 || base.dim < 4 {
        return Err(WitnessError::KinkDimensionUnsupported(base.dim));
    }
    let menu = menu_for_dimension(base.dim - 1)?;
    solve_counts(base.euler, &menu, t)
}

/// Recomputes the Euler characteristic a recipe claims, from the summand
/// descriptors' own chi values (not the menu deltas), via
/// `chi(M # X) = chi(M) + chi(X) - chi(S^dim)`.
pub fn revalidate_euler(recipe: &WitnessRecipe, menu: &SummandMenu) -> Result<i64, WitnessError> {
    let chi_sphere = sphere_euler_characteristic(menu.dim);
    let mut chi = recipe.base_chi;
    for c in &recipe.counts {
        let entry = menu
            .entries
            .iter()
            .find(|e| e.name == c.summand)
            .ok_or_else(|| WitnessError::UnknownSummand(c.summand.clone()))?;
        chi += (c.k as i64) * (entry.manifold.euler_characteristic() - chi_sphere);
    }
    if chi != recipe.resulting_euler {
        return Err(WitnessError::Invalid {
            expected: recipe.resulting_euler,
            got: chi,
        });
    }
    Ok(chi)
}

/// Strict revalidation: folds the expanded summand multiset through actual
/// descriptor-level connected sums and checks both the resulting chi and
/// (for spin menus) that the fold stays spin. Requires orientable summands.
pub fn revalidate_descriptor(
    recipe: &WitnessRecipe,
    menu: &SummandMenu,
) -> Result<Option<ManifoldDescriptor>, WitnessError> {
    let mut fold: Option<ManifoldDescriptor> = None;
    for c in &recipe.counts {
        let entry = menu
            .entries
            .iter()
            .find(|e| e.name == c.summand)
            .ok_or_else(|| WitnessError::UnknownSummand(c.summand.clone()))?;
        for _ in 0..c.k {
            fold = Some(match fold {
                None => entry.manifold.clone(),
                Some(acc) => connected_sum(&acc, &entry.manifold)?,
            });
        }
    }
    let chi = match &fold {
        None => recipe.base_chi,
        Some(m) => {
            recipe.base_chi + m.euler_characteristic() - sphere_euler_characteristic(menu.dim)
        }
    };
    if chi != recipe.resulting_euler {
        return Err(WitnessError::Invalid {
            expected: recipe.resulting_euler,
            got: chi,
        });
    }
    Ok(fold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::TriState;

    fn counts_of(recipe: &WitnessRecipe) -> Vec<u64> {
        recipe.counts.iter().map(|c| c.k).collect()
    }

    #[test]
    fn menu_n3_matches_construction() {
        let menu = menu_for_dimension(3).unwrap();
        assert_eq!(menu.deltas(), vec![-2, 2]);
        assert_eq!(menu.entries[0].name, "S1 x S3");
        assert_eq!(menu.entries[1].name, "S2 x S2");
        assert!(menu.all_spin());
    }

    #[test]
    fn menu_n7_has_odd_delta() {
        let menu = menu_for_dimension(7).unwrap();
        assert_eq!(menu.deltas(), vec![1, -2]);
        assert_eq!(menu.entries[0].name, "HP2");
        assert_eq!(menu.entries[1].name, "T8");
    }

    #[test]
    fn menu_n5() {
        let menu = menu_for_dimension(5).unwrap();
        assert_eq!(menu.deltas(), vec![2, -2]);
        assert_eq!(menu.entries[0].name, "HP1 x S2");
    }

    #[test]
    fn menu_families_match_formulas() {
        // formula deltas per family, cross-checked against descriptor chi
        assert_eq!(menu_for_dimension(9).unwrap().deltas(), vec![4, -2]); // HP2 x S2
        assert_eq!(menu_for_dimension(11).unwrap().deltas(), vec![10, -2]); // HP2 x S2 x S2
        assert_eq!(menu_for_dimension(13).unwrap().deltas(), vec![6, -2]); // HP3 x S2
        assert_eq!(menu_for_dimension(15).unwrap().deltas(), vec![3, -2]); // HP4
    }

    #[test]
    fn menu_rejections() {
        assert!(matches!(
            menu_for_dimension(4),
            Err(WitnessError::EvenBoundaryDimension(4))
        ));
        assert!(matches!(
            menu_for_dimension(1),
            Err(WitnessError::DegenerateDimension)
        ));
    }

    #[test]
    fn solve_examples() {
        let n3 = menu_for_dimension(3).unwrap();
        let r = solve_counts(-4, &n3, 0).unwrap();
        assert_eq!(counts_of(&r), vec![0, 2]);
        assert_eq!(r.resulting_euler, 0);

        let n7 = menu_for_dimension(7).unwrap();
        let r = solve_counts(5, &n7, 0).unwrap();
        assert_eq!(counts_of(&r), vec![1, 3]); // 5 + 1 - 6 = 0
    }

    #[test]
    fn solve_parity_obstruction() {
        let n3 = menu_for_dimension(3).unwrap();
        let err = solve_counts(3, &n3, 0).unwrap_err();
        match err {
            WitnessError::NoSolution {
                residue, modulus, ..
            } => {
                assert_eq!(modulus, 2);
                assert_eq!(residue, 1);
            }
            other => panic!("expected parity obstruction, got {other}"),
        }
    }

    #[test]
    fn solve_is_deterministic_and_minimal() {
        let n7 = menu_for_dimension(7).unwrap();
        let a = solve_counts(5, &n7, 0).unwrap();
        let b = solve_counts(5, &n7, 0).unwrap();
        assert_eq!(a, b);
        // any other solution has total count >= 4
        assert_eq!(a.total_count(), 4);
    }

    fn base(dim: usize, euler: i64) -> CobordismDescriptor {
        CobordismDescriptor {
            dim,
            euler,
            boundary_in: vec![],
            boundary_out: vec![],
            spin: false,
            stably_parallelizable: TriState::Unknown,
        }
    }

    #[test]
    fn kink_recipe_dim4_positive_target() {
        // 0 + chi(CP2) - chi(S4) = 1, a single summand
        let r = prescribed_kink_recipe(&base(4, 0), 1).unwrap();
        assert_eq!(counts_of(&r), vec![1, 0, 0]);
        let menu = kink_menu(4).unwrap();
        assert_eq!(menu.entries[0].name, "CP2");
        assert_eq!(revalidate_euler(&r, &menu).unwrap(), 1);
    }

    #[test]
    fn kink_recipe_dim4_negative_target() {
        let r = prescribed_kink_recipe(&base(4, 0), -2).unwrap();
        assert_eq!(counts_of(&r), vec![0, 0, 1]); // one T4
    }

    #[test]
    fn kink_recipe_already_at_target() {
        let r = prescribed_kink_recipe(&base(4, 2), 2).unwrap();
        assert_eq!(r.total_count(), 0);
        assert_eq!(r.resulting_euler, 2);
    }

    #[test]
    fn kink_recipe_rejects_zero_target() {
        assert!(matches!(
            prescribed_kink_recipe(&base(4, 0), 0),
            Err(WitnessError::KinkTargetZero)
        ));
    }

    #[test]
    fn kink_menu_dim6_reaches_odd_targets() {
        // dim 6: CP3 has even delta, RP6 supplies the odd one
        let menu = kink_menu(6).unwrap();
        assert_eq!(menu.deltas(), vec![2, 2, -2, -1]);
        for t in [-3, -1, 1, 3] {
            let r = solve_counts(0, &menu, t).unwrap();
            assert_eq!(revalidate_euler(&r, &menu).unwrap(), t);
        }
    }

    #[test]
    fn kink_dim2_unsupported() {
        assert!(matches!(
            prescribed_kink_recipe(&base(2, 0), 1),
            Err(WitnessError::KinkDimensionUnsupported(2))
        ));
    }

    #[test]
    fn spin_kink_variant_parity() {
        let spin_base = CobordismDescriptor {
            spin: true,
            ..base(6, 0)
        };
        // odd target at dim 6: the spin menu (n = 5) has even deltas only
        assert!(matches!(
            prescribed_kink_recipe_spin(&spin_base, 3),
            Err(WitnessError::NoSolution { .. })
        ));
        let r = prescribed_kink_recipe_spin(&spin_base, 4).unwrap();
        assert_eq!(r.resulting_euler, 4);
        // at dim 8 the n = 7 menu has an odd delta, so odd targets work
        let spin_base8 = CobordismDescriptor {
            spin: true,
            ..base(8, 0)
        };
        let r = prescribed_kink_recipe_spin(&spin_base8, 3).unwrap();
        assert_eq!(r.resulting_euler, 3);
    }

    #[test]
    fn descriptor_revalidation_checks_spin_and_chi() {
        let menu = menu_for_dimension(3).unwrap();
        let r = solve_counts(-4, &menu, 0).unwrap();
        let fold = revalidate_descriptor(&r, &menu).unwrap().unwrap();
        assert!(fold.spin);
        assert_eq!(
            r.base_chi + fold.euler_characteristic() - 2,
            r.resulting_euler
        );
    }

    #[test]
    fn revalidation_catches_tampering() {
        let menu = menu_for_dimension(3).unwrap();
        let mut r = solve_counts(-4, &menu, 0).unwrap();
        r.resulting_euler = 1;
        assert!(matches!(
            revalidate_euler(&r, &menu),
            Err(WitnessError::Invalid { .. })
        ));
    }
}
