//! Connected sum, cartesian product and disjoint union on descriptors.

use super::descriptor::{
    sphere_euler_characteristic, ManifoldDescriptor, ManifoldError, TriState,
};

/// Connected sum of two closed connected orientable manifolds of equal
/// dimension n >= 1.
///
/// Betti numbers add in degrees 0 < k < n with b_0 = b_n = 1; the spin flag
/// propagates as a conjunction; signatures add when defined. Stable
/// parallelizability is only kept when both operands are spheres.
pub fn connected_sum(
    a: &ManifoldDescriptor,
    b: &ManifoldDescriptor,
) -> Result<ManifoldDescriptor, ManifoldError> {
    if a.dim != b.dim {
        return Err(ManifoldError::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let n = a.dim;
    if n == 0 {
        return Err(ManifoldError::InvalidDescriptor {
            name: a.name.clone(),
            reason: "connected sum needs dimension >= 1".into(),
        });
    }
    for m in [a, b] {
        if !m.connected {
            return Err(ManifoldError::NotConnected(m.name.clone()));
        }
        if !m.orientable {
            return Err(ManifoldError::NonOrientableOperand(m.name.clone()));
        }
    }

    let summed = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n + 1];
        out[0] = 1;
        out[n] = 1;
        for k in 1..n {
            out[k] = x[k] + y[k];
        }
        out
    };

    let both_spheres = a.has_sphere_invariants() && b.has_sphere_invariants();
    let result = ManifoldDescriptor {
        name: format!("{} # {}", a.name, b.name),
        dim: n,
        betti_q: summed(&a.betti_q, &b.betti_q),
        betti_z2: summed(&a.betti_z2, &b.betti_z2),
        orientable: true,
        spin: a.spin && b.spin,
        stably_parallelizable: if both_spheres {
            TriState::Yes
        } else {
            TriState::Unknown
        },
        signature: match (a.signature, b.signature) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        },
        connected: true,
        components: 1,
    };
    debug_assert_eq!(
        result.euler_characteristic(),
        a.euler_characteristic() + b.euler_characteristic() - sphere_euler_characteristic(n)
    );
    debug_assert!(result.validate().is_ok());
    Ok(result)
}

/// Cartesian product of closed manifolds.
///
/// Betti numbers are the Kuenneth convolution over each field (no Tor terms
/// over a field). The signature is multiplicative, with the usual convention
/// that a factor of dimension not divisible by 4 contributes 0; the product
/// then carries a signature exactly when its total dimension is 0 mod 4.
pub fn product(a: &ManifoldDescriptor, b: &ManifoldDescriptor) -> ManifoldDescriptor {
    let dim = a.dim + b.dim;
    let convolve = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; dim + 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                out[i + j] += xi * yj;
            }
        }
        out
    };

    let sig_or_zero = |m: &ManifoldDescriptor| m.signature.unwrap_or(0);
    let result = ManifoldDescriptor {
        name: format!("{} x {}", product_operand(a), product_operand(b)),
        dim,
        betti_q: convolve(&a.betti_q, &b.betti_q),
        betti_z2: convolve(&a.betti_z2, &b.betti_z2),
        orientable: a.orientable && b.orientable,
        spin: a.spin && b.spin,
        stably_parallelizable: a.stably_parallelizable.both(b.stably_parallelizable),
        signature: (dim % 4 == 0).then(|| sig_or_zero(a) * sig_or_zero(b)),
        connected: a.connected && b.connected,
        components: a.components * b.components,
    };
    debug_assert_eq!(
        result.euler_characteristic(),
        a.euler_characteristic() * b.euler_characteristic()
    );
    debug_assert!(result.validate().is_ok(), "{:?}", result.validate());
    result
}

fn product_operand(m: &ManifoldDescriptor) -> String {
    if m.name.contains(" # ") {
        format!("({})", m.name)
    } else {
        m.name.clone()
    }
}

/// Disjoint union of two closed manifolds of equal dimension.
pub fn disjoint_union(
    a: &ManifoldDescriptor,
    b: &ManifoldDescriptor,
) -> Result<ManifoldDescriptor, ManifoldError> {
    if a.dim != b.dim {
        return Err(ManifoldError::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let add = |x: &[u64], y: &[u64]| x.iter().zip(y).map(|(p, q)| p + q).collect();
    let result = ManifoldDescriptor {
        name: format!("{} \u{2294} {}", a.name, b.name),
        dim: a.dim,
        betti_q: add(&a.betti_q, &b.betti_q),
        betti_z2: add(&a.betti_z2, &b.betti_z2),
        orientable: a.orientable && b.orientable,
        spin: a.spin && b.spin,
        stably_parallelizable: a.stably_parallelizable.both(b.stably_parallelizable),
        signature: match (a.signature, b.signature) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        },
        connected: false,
        components: a.components + b.components,
    };
    debug_assert!(result.validate().is_ok());
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::catalog::catalog;
    use crate::manifold::CoefficientField;

    fn cat(name: &str, p: i64) -> ManifoldDescriptor {
        catalog(name, Some(p)).unwrap()
    }

    #[test]
    fn sphere_is_identity_for_sum() {
        let s3 = cat("S", 3);
        let sum = connected_sum(&s3, &s3).unwrap();
        assert!(sum.same_invariants(&s3));
        assert!(sum.stably_parallelizable.is_yes());
    }

    #[test]
    fn sum_of_s2xs2_with_itself() {
        let s2 = cat("S", 2);
        let x = product(&s2, &s2);
        let sum = connected_sum(&x, &x).unwrap();
        assert_eq!(sum.euler_characteristic(), 6);
        assert_eq!(sum.signature, Some(0));
        assert_eq!(sum.betti_q, vec![1, 0, 4, 0, 1]);
    }

    #[test]
    fn sum_of_k3_with_itself() {
        let k3 = catalog("K3", None).unwrap();
        let sum = connected_sum(&k3, &k3).unwrap();
        assert_eq!(sum.euler_characteristic(), 46);
        assert_eq!(sum.signature, Some(-32));
        assert!(sum.spin);
    }

    #[test]
    fn sum_rejects_nonorientable_and_mismatched() {
        let rp2 = cat("RP", 2);
        let t2 = cat("T", 2);
        assert!(matches!(
            connected_sum(&rp2, &t2),
            Err(ManifoldError::NonOrientableOperand(_))
        ));
        assert!(matches!(
            connected_sum(&t2, &cat("T", 3)),
            Err(ManifoldError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn product_with_point_is_identity() {
        let t4 = cat("T", 4);
        let p = product(&t4, &catalog("point", None).unwrap());
        assert!(p.same_invariants(&t4));
    }

    #[test]
    fn product_hp_q_with_s2_euler() {
        for q in 1..=3i64 {
            let m = product(&cat("HP", q), &cat("S", 2));
            assert_eq!(m.euler_characteristic(), 2 * (q + 1));
            assert!(m.spin);
        }
    }

    #[test]
    fn product_s2_s3_betti() {
        let m = product(&cat("S", 2), &cat("S", 3));
        assert_eq!(m.betti_q, vec![1, 0, 1, 1, 0, 1]);
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn signature_multiplicativity_conventions() {
        // both factors 0 mod 4
        let m = product(&cat("CP", 2), &catalog("K3", None).unwrap());
        assert_eq!(m.signature, Some(-16));
        // odd factor forces 0
        let m = product(&cat("S", 1), &cat("S", 3));
        assert_eq!(m.signature, Some(0));
        // 2 mod 4 times 2 mod 4
        let m = product(&cat("S", 2), &cat("S", 2));
        assert_eq!(m.signature, Some(0));
        // total dimension 2 mod 4 has none
        let m = product(&cat("S", 2), &cat("T", 4));
        assert_eq!(m.signature, None);
    }

    #[test]
    fn sum_and_product_commute_on_invariants() {
        let (a, b) = (cat("T", 4), product(&cat("S", 2), &cat("S", 2)));
        assert!(connected_sum(&a, &b)
            .unwrap()
            .same_invariants(&connected_sum(&b, &a).unwrap()));
        assert!(product(&a, &b).same_invariants(&product(&b, &a)));
    }

    #[test]
    fn disjoint_union_counts_components() {
        let s3 = cat("S", 3);
        let u = disjoint_union(&s3, &cat("T", 3)).unwrap();
        assert_eq!(u.components, 2);
        assert!(!u.connected);
        assert_eq!(u.betti_z2[3], 2);
        assert_eq!(u.semi_characteristic(CoefficientField::Z2).unwrap(), 1);
    }

    #[test]
    fn semichar_of_sum_adds_with_shift() {
        // chi-hat(A # B) = chi-hat(A) + chi-hat(B) + 1 mod 2 in odd dimensions
        let pieces = [cat("S", 3), cat("T", 3), cat("RP", 3)];
        for a in &pieces {
            for b in &pieces {
                let lhs = connected_sum(a, b)
                    .unwrap()
                    .semi_characteristic(CoefficientField::Z2)
                    .unwrap();
                let rhs = (a.semi_characteristic(CoefficientField::Z2).unwrap()
                    + b.semi_characteristic(CoefficientField::Z2).unwrap()
                    + 1)
                    % 2;
                assert_eq!(lhs, rhs, "{} # {}", a.name, b.name);
            }
        }
    }
}
