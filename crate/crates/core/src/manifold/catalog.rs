//! Built-in catalog of building-block manifolds and the user registry.
//!
//! Catalog names: `S` (spheres), `T` (tori), `CP`, `HP`, `RP` (complex,
//! quaternionic and real projective spaces), `K3` and `point`. Spheres, tori
//! and their products are the stably parallelizable stock; projective spaces
//! and K3 are marked not stably parallelizable; anything else is unknown.
//!
//! Where a cell structure is cheap (everything except K3) the catalog also
//! hands out an explicit chain complex so the closed-form Betti bookkeeping
//! can be cross-checked against the Smith-normal-form oracle.

use std::collections::BTreeMap;

use crate::homology::{ChainComplex, IntegerMatrix};

use super::descriptor::{ManifoldDescriptor, ManifoldError, TriState};

/// Built-in catalog lookup.
///
/// `param` is the dimension (for `S`, `T`, `RP`) or the projective index
/// (for `CP`, `HP`); `K3` and `point` take none.
pub fn catalog(name: &str, param: Option<i64>) -> Result<ManifoldDescriptor, ManifoldError> {
    let need_param = || -> Result<usize, ManifoldError> {
        match param {
            None => Err(ManifoldError::MissingParameter(name.to_string())),
            Some(v) if v < 0 => Err(ManifoldError::NegativeParameter {
                name: name.to_string(),
                value: v,
            }),
            Some(v) => usize::try_from(v).map_err(|_| ManifoldError::NegativeParameter {
                name: name.to_string(),
                value: v,
            }),
        }
    };
    let no_param = || -> Result<(), ManifoldError> {
        if param.is_some() {
            Err(ManifoldError::UnexpectedParameter(name.to_string()))
        } else {
            Ok(())
        }
    };

    let d = match name {
        "S" => sphere(need_param()?)?,
        "T" => torus(need_param()?)?,
        "CP" => complex_projective(need_param()?)?,
        "HP" => quaternionic_projective(need_param()?)?,
        "RP" => real_projective(need_param()?)?,
        "K3" => {
            no_param()?;
            k3()
        }
        "point" => {
            no_param()?;
            point()
        }
        _ => return Err(ManifoldError::UnknownName(name.to_string())),
    };
    debug_assert!(d.validate().is_ok(), "catalog produced invalid {}", d.name);
    Ok(d)
}

/// Cell complex of a catalog manifold, where one is cheap to write down.
/// K3 is descriptor-only.
pub fn catalog_complex(name: &str, param: Option<i64>) -> Option<ChainComplex> {
    let p = param.and_then(|v| usize::try_from(v).ok());
    match (name, p) {
        ("S", Some(n)) => Some(sphere_complex(n)),
        ("T", Some(n)) => Some(torus_complex(n)),
        ("CP", Some(k)) if k >= 1 => Some(even_cell_complex(2 * k, 2)),
        ("HP", Some(k)) if k >= 1 => Some(even_cell_complex(4 * k, 4)),
        ("RP", Some(k)) if k >= 1 => Some(real_projective_complex(k)),
        ("point", None) => Some(ChainComplex::point_like(1)),
        _ => None,
    }
}

fn point() -> ManifoldDescriptor {
    ManifoldDescriptor {
        name: "point".into(),
        dim: 0,
        betti_q: vec![1],
        betti_z2: vec![1],
        orientable: true,
        spin: true,
        stably_parallelizable: TriState::Yes,
        signature: Some(0),
        connected: true,
        components: 1,
    }
}

fn sphere(n: usize) -> Result<ManifoldDescriptor, ManifoldError> {
    check_dim(n)?;
    if n == 0 {
        // S^0 is two points.
        return Ok(ManifoldDescriptor {
            name: "S0".into(),
            dim: 0,
            betti_q: vec![2],
            betti_z2: vec![2],
            orientable: true,
            spin: true,
            stably_parallelizable: TriState::Yes,
            signature: Some(0),
            connected: false,
            components: 2,
        });
    }
    let mut betti = vec![0u64; n + 1];
    betti[0] = 1;
    betti[n] = 1;
    Ok(ManifoldDescriptor {
        name: format!("S{n}"),
        dim: n,
        betti_q: betti.clone(),
        betti_z2: betti,
        orientable: true,
        spin: true,
        stably_parallelizable: TriState::Yes,
        signature: (n % 4 == 0).then_some(0),
        connected: true,
        components: 1,
    })
}

fn torus(n: usize) -> Result<ManifoldDescriptor, ManifoldError> {
    check_dim(n)?;
    let betti: Vec<u64> = (0..=n).map(|k| binomial(n, k)).collect();
    Ok(ManifoldDescriptor {
        name: format!("T{n}"),
        dim: n,
        betti_q: betti.clone(),
        betti_z2: betti,
        orientable: true,
        spin: true,
        stably_parallelizable: TriState::Yes,
        signature: (n % 4 == 0).then_some(0),
        connected: true,
        components: 1,
    })
}

fn complex_projective(k: usize) -> Result<ManifoldDescriptor, ManifoldError> {
    require_positive_index("CP", k)?;
    check_dim(2 * k)?;
    let dim = 2 * k;
    let betti: Vec<u64> = (0..=dim).map(|i| u64::from(i % 2 == 0)).collect();
    Ok(ManifoldDescriptor {
        name: format!("CP{k}"),
        dim,
        betti_q: betti.clone(),
        betti_z2: betti,
        orientable: true,
        // c_1(CP^k) = (k+1)h, so w_2 vanishes exactly for odd k.
        spin: k % 2 == 1,
        stably_parallelizable: TriState::No,
        // Middle cohomology is <1> for even k, empty for odd k.
        signature: (dim % 4 == 0).then_some(1),
        connected: true,
        components: 1,
    })
}

fn quaternionic_projective(k: usize) -> Result<ManifoldDescriptor, ManifoldError> {
    require_positive_index("HP", k)?;
    check_dim(4 * k)?;
    let dim = 4 * k;
    let betti: Vec<u64> = (0..=dim).map(|i| u64::from(i % 4 == 0)).collect();
    Ok(ManifoldDescriptor {
        name: format!("HP{k}"),
        dim,
        betti_q: betti.clone(),
        betti_z2: betti,
        orientable: true,
        spin: true,
        stably_parallelizable: TriState::No,
        signature: Some(if k % 2 == 0 { 1 } else { 0 }),
        connected: true,
        components: 1,
    })
}

fn real_projective(k: usize) -> Result<ManifoldDescriptor, ManifoldError> {
    require_positive_index("RP", k)?;
    check_dim(k)?;
    let mut betti_q = vec![0u64; k + 1];
    betti_q[0] = 1;
    if k % 2 == 1 {
        betti_q[k] = 1;
    }
    Ok(ManifoldDescriptor {
        name: format!("RP{k}"),
        dim: k,
        betti_q,
        betti_z2: vec![1; k + 1],
        orientable: k % 2 == 1,
        spin: k % 4 == 3,
        stably_parallelizable: TriState::Unknown,
        signature: (k % 4 == 0).then_some(0),
        connected: true,
        components: 1,
    })
}

fn k3() -> ManifoldDescriptor {
    ManifoldDescriptor {
        name: "K3".into(),
        dim: 4,
        betti_q: vec![1, 0, 22, 0, 1],
        betti_z2: vec![1, 0, 22, 0, 1],
        orientable: true,
        spin: true,
        stably_parallelizable: TriState::No,
        // Intersection form 2(-E8) + 3H.
        signature: Some(-16),
        connected: true,
        components: 1,
    }
}

fn check_dim(n: usize) -> Result<(), ManifoldError> {
    // Torus Betti numbers C(n, k) stay within u64 up to n = 64.
    if n > 64 {
        Err(ManifoldError::DimensionTooLarge(n))
    } else {
        Ok(())
    }
}

fn require_positive_index(name: &str, k: usize) -> Result<(), ManifoldError> {
    if k == 0 {
        Err(ManifoldError::ParameterRange {
            name: name.to_string(),
            value: 0,
            reason: "index 0 degenerates to a point; use 'point'",
        })
    } else {
        Ok(())
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial exceeds u64")
}

// --- cell complexes ----------------------------------------------------------

fn circle_complex() -> ChainComplex {
    ChainComplex::new(vec![1, 1], vec![IntegerMatrix::zeros(1, 1)]).unwrap()
}

fn sphere_complex(n: usize) -> ChainComplex {
    if n == 0 {
        return ChainComplex::point_like(2);
    }
    let mut ranks = vec![0usize; n + 1];
    ranks[0] = 1;
    ranks[n] = 1;
    let boundaries = (1..=n)
        .map(|k| IntegerMatrix::zeros(ranks[k - 1], ranks[k]))
        .collect();
    ChainComplex::new(ranks, boundaries).unwrap()
}

/// Cubical model of the n-torus: the n-fold tensor power of the circle.
/// All differentials vanish.
fn torus_complex(n: usize) -> ChainComplex {
    let mut c = ChainComplex::point_like(1);
    for _ in 0..n {
        c = c.tensor_product(&circle_complex());
    }
    c
}

/// One cell in each degree divisible by `step`, zero differentials
/// (CP^k with step 2, HP^k with step 4).
fn even_cell_complex(dim: usize, step: usize) -> ChainComplex {
    let ranks: Vec<usize> = (0..=dim).map(|k| usize::from(k % step == 0)).collect();
    let boundaries = (1..=dim)
        .map(|k| IntegerMatrix::zeros(ranks[k - 1], ranks[k]))
        .collect();
    ChainComplex::new(ranks, boundaries).unwrap()
}

/// Standard cell structure of RP^k: one cell per degree, boundary maps
/// alternating 0, 2, 0, 2, ...
fn real_projective_complex(k: usize) -> ChainComplex {
    let ranks = vec![1usize; k + 1];
    let boundaries = (1..=k)
        .map(|i| {
            let entry = if i % 2 == 0 { 2 } else { 0 };
            IntegerMatrix::from_rows(1, 1, &[vec![entry]]).unwrap()
        })
        .collect();
    ChainComplex::new(ranks, boundaries).unwrap()
}

// --- user registry ------------------------------------------------------------

pub const BUILTIN_NAMES: [&str; 7] = ["S", "T", "CP", "HP", "RP", "K3", "point"];

/// Name resolution for manifold expressions: the built-in catalog plus
/// user-registered descriptors (for example surgery-built manifolds with a
/// prescribed fundamental group, supplied as invariant records).
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    user: BTreeMap<String, ManifoldDescriptor>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a user descriptor after validating its invariants.
    pub fn register(&mut self, d: ManifoldDescriptor) -> Result<(), ManifoldError> {
        d.validate()?;
        if BUILTIN_NAMES.contains(&d.name.as_str()) {
            return Err(ManifoldError::ReservedName(d.name));
        }
        self.user.insert(d.name.clone(), d);
        Ok(())
    }

    /// Resolves an atom. User names win over parameterized families only when
    /// the exact token matches; built-in family names are reserved.
    pub fn resolve(&self, name: &str, param: Option<i64>) -> Result<ManifoldDescriptor, ManifoldError> {
        if let Some(d) = self.user.get(name) {
            return if param.is_some() {
                Err(ManifoldError::UnexpectedParameter(name.to_string()))
            } else {
                Ok(d.clone())
            };
        }
        catalog(name, param)
    }

    /// True when `token` resolves without a separate parameter:
    /// a user name, `K3`, `point`, or a family name fused with its index
    /// (such as `S3` or `HP2`).
    pub fn is_known_atom_token(&self, token: &str) -> bool {
        if self.user.contains_key(token) || token == "K3" || token == "point" {
            return true;
        }
        split_fused_atom(token).is_some()
    }

    pub fn user_names(&self) -> impl Iterator<Item = &str> {
        self.user.keys().map(String::as_str)
    }
}

/// Splits a fused atom token such as `S3`, `CP12` into family name and index.
pub fn split_fused_atom(token: &str) -> Option<(&str, i64)> {
    let split = token.find(|c: char| c.is_ascii_digit())?;
    let (name, digits) = token.split_at(split);
    if digits.chars().all(|c| c.is_ascii_digit())
        && ["S", "T", "CP", "HP", "RP"].contains(&name)
    {
        digits.parse().ok().map(|v| (name, v))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::CoefficientField;

    #[test]
    fn quaternionic_projective_euler_and_spin() {
        // chi(HP^{2q+2}) = 2q+3, spin for all indices
        for q in 0..3usize {
            let hp = catalog("HP", Some(2 * q as i64 + 2)).unwrap();
            assert_eq!(hp.euler_characteristic(), 2 * q as i64 + 3);
            assert!(hp.spin);
        }
    }

    #[test]
    fn sphere_three_betti() {
        let s3 = catalog("S", Some(3)).unwrap();
        assert_eq!(s3.betti_q, vec![1, 0, 0, 1]);
        assert_eq!(s3.euler_characteristic(), 0);
    }

    #[test]
    fn torus_three_betti_matches_snf_oracle() {
        let t3 = catalog("T", Some(3)).unwrap();
        assert_eq!(t3.betti_q, vec![1, 3, 3, 1]);
        let h = catalog_complex("T", Some(3)).unwrap().homology();
        assert_eq!(h.betti_q, t3.betti_q);
        assert_eq!(h.betti_z2, t3.betti_z2);
    }

    #[test]
    fn projective_space_flags() {
        assert!(catalog("CP", Some(3)).unwrap().spin);
        assert!(!catalog("CP", Some(2)).unwrap().spin);
        assert!(catalog("RP", Some(3)).unwrap().orientable);
        assert!(catalog("RP", Some(3)).unwrap().spin);
        assert!(!catalog("RP", Some(4)).unwrap().orientable);
        assert!(!catalog("RP", Some(5)).unwrap().spin);
    }

    #[test]
    fn signatures() {
        assert_eq!(catalog("K3", None).unwrap().signature, Some(-16));
        assert_eq!(catalog("CP", Some(2)).unwrap().signature, Some(1));
        assert_eq!(catalog("CP", Some(3)).unwrap().signature, None);
        assert_eq!(catalog("HP", Some(2)).unwrap().signature, Some(1));
        assert_eq!(catalog("HP", Some(1)).unwrap().signature, Some(0));
        assert_eq!(catalog("T", Some(4)).unwrap().signature, Some(0));
    }

    #[test]
    fn rp_complex_matches_descriptor() {
        for k in 1..=6usize {
            let d = catalog("RP", Some(k as i64)).unwrap();
            let h = catalog_complex("RP", Some(k as i64)).unwrap().homology();
            assert_eq!(h.betti_q, d.betti_q, "RP{k} over Q");
            assert_eq!(h.betti_z2, d.betti_z2, "RP{k} over Z/2");
        }
    }

    #[test]
    fn errors_for_bad_input() {
        assert!(matches!(
            catalog("E8", None),
            Err(ManifoldError::UnknownName(_))
        ));
        assert!(matches!(
            catalog("S", Some(-1)),
            Err(ManifoldError::NegativeParameter { .. })
        ));
        assert!(matches!(
            catalog("S", None),
            Err(ManifoldError::MissingParameter(_))
        ));
        assert!(matches!(
            catalog("K3", Some(2)),
            Err(ManifoldError::UnexpectedParameter(_))
        ));
        assert!(matches!(
            catalog("CP", Some(0)),
            Err(ManifoldError::ParameterRange { .. })
        ));
    }

    #[test]
    fn registry_resolution_and_reserved_names() {
        let mut cat = Catalog::new();
        let mut ng = catalog("T", Some(5)).unwrap();
        ng.name = "NG5".into();
        cat.register(ng.clone()).unwrap();
        assert_eq!(cat.resolve("NG5", None).unwrap(), ng);
        assert!(cat.is_known_atom_token("NG5"));
        assert!(cat.is_known_atom_token("S3"));
        assert!(!cat.is_known_atom_token("B2"));

        let mut bad = catalog("S", Some(3)).unwrap();
        bad.name = "K3".into();
        assert!(matches!(
            cat.register(bad),
            Err(ManifoldError::ReservedName(_))
        ));
    }

    #[test]
    fn semi_characteristics_from_catalog() {
        let chi_hat = |name: &str, p: i64| {
            catalog(name, Some(p))
                .unwrap()
                .semi_characteristic(CoefficientField::Z2)
                .unwrap()
        };
        assert_eq!(chi_hat("S", 3), 1);
        assert_eq!(chi_hat("T", 3), 0); // 1 + 3
        assert_eq!(chi_hat("S", 5), 1); // 1 + 0 + 0
        assert_eq!(chi_hat("T", 5), 0); // 1 + 5 + 10 = 16
    }
}
