//! Gravitational kink arithmetic.
//!
//! The kink number of a weak Lorentzian cobordism with stably parallelizable
//! boundary is computed from Euler characteristics: it equals chi(M) when the
//! cobordism dimension is even, and half the difference of boundary Euler
//! characteristics (outgoing minus incoming) when it is odd. For spin
//! cobordisms of even dimension the kink is further constrained mod 2 by the
//! Z/2 semi-characteristic of the boundary; that parity identity is what
//! [`spin_parity_check`] evaluates. (As an identity it is guaranteed for
//! cobordism dimensions not divisible by 8.)

use serde::{Deserialize, Serialize};

use crate::manifold::{CobordismDescriptor, ManifoldError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KinkError {
    #[error("boundary component '{0}' is not known to be stably parallelizable; the kink formulas require it")]
    NotStablyParallelizableBoundary(String),
    #[error("boundary Euler characteristics differ by the odd number {0}; no valid closed boundary does this")]
    OddDifference(i64),
    #[error("the cobordism is not spin")]
    NotSpin,
    #[error("the spin parity identity applies to even-dimensional cobordisms (odd boundary); got dimension {0}")]
    EvenBoundaryDimension(usize),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

/// Which Euler-characteristic formula produced the kink value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KinkFormula {
    EvenDimChi,
    OddDimHalfDifference,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KinkReport {
    pub kink: i64,
    pub formula_used: KinkFormula,
    /// For spin cobordisms of even dimension: whether the value satisfies
    /// the mod-2 boundary semi-characteristic constraint.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_ok: Option<bool>,
}

/// Gravitational kink number of a cobordism.
///
/// Every boundary component must be flagged stably parallelizable; the
/// hypothesis is load-bearing, so `unknown` is rejected rather than assumed.
pub fn kink_of(cob: &CobordismDescriptor) -> Result<KinkReport, KinkError> {
    for b in cob.boundary() {
        if !b.stably_parallelizable.is_yes() {
            return Err(KinkError::NotStablyParallelizableBoundary(b.name.clone()));
        }
    }
    if cob.dim % 2 == 0 {
        let kink = cob.euler;
        let parity_ok = if cob.spin {
            Some(spin_parity_check(cob, kink)?)
        } else {
            None
        };
        Ok(KinkReport {
            kink,
            formula_used: KinkFormula::EvenDimChi,
            parity_ok,
        })
    } else {
        let diff = cob.euler_out() - cob.euler_in();
        if diff % 2 != 0 {
            return Err(KinkError::OddDifference(diff));
        }
        Ok(KinkReport {
            kink: diff / 2,
            formula_used: KinkFormula::OddDimHalfDifference,
            parity_ok: None,
        })
    }
}

/// Checks the spin restriction on kink numbers: for a spin cobordism of even
/// dimension, the kink is congruent mod 2 to the Z/2 semi-characteristic of
/// the whole boundary (summed over components).
pub fn spin_parity_check(cob: &CobordismDescriptor, claimed_kink: i64) -> Result<bool, KinkError> {
    if !cob.spin {
        return Err(KinkError::NotSpin);
    }
    if cob.dim % 2 != 0 {
        return Err(KinkError::EvenBoundaryDimension(cob.dim));
    }
    let chi_hat = cob.boundary_semi_characteristic_z2()?;
    Ok(i64::from(chi_hat) == claimed_kink.rem_euclid(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{catalog, CobordismDescriptor, ManifoldDescriptor, TriState};

    fn cat(name: &str, p: i64) -> ManifoldDescriptor {
        catalog(name, Some(p)).unwrap()
    }

    fn cob(
        dim: usize,
        euler: i64,
        inc: Vec<ManifoldDescriptor>,
        out: Vec<ManifoldDescriptor>,
        spin: bool,
    ) -> CobordismDescriptor {
        CobordismDescriptor::new(dim, euler, inc, out, spin, TriState::Unknown).unwrap()
    }

    #[test]
    fn even_dim_kink_is_euler() {
        let m = cob(4, 3, vec![cat("S", 3)], vec![cat("S", 3)], true);
        let r = kink_of(&m).unwrap();
        assert_eq!(r.kink, 3);
        assert_eq!(r.formula_used, KinkFormula::EvenDimChi);
        // chi-hat(S3 u S3) = 0, and 3 is odd: the parity identity flags it
        assert_eq!(r.parity_ok, Some(false));
    }

    #[test]
    fn odd_dim_kink_is_half_difference() {
        let m = cob(
            3,
            2,
            vec![cat("S", 2)],
            vec![cat("S", 2), cat("S", 2)],
            false,
        );
        let r = kink_of(&m).unwrap();
        assert_eq!(r.kink, 1);
        assert_eq!(r.formula_used, KinkFormula::OddDimHalfDifference);
    }

    #[test]
    fn lorentzian_witness_has_kink_zero() {
        let m = cob(4, 0, vec![cat("T", 3)], vec![cat("T", 3)], true);
        let r = kink_of(&m).unwrap();
        assert_eq!(r.kink, 0);
        assert_eq!(r.parity_ok, Some(true));
    }

    #[test]
    fn unknown_parallelizability_is_rejected() {
        let m = cob(4, 0, vec![cat("RP", 3)], vec![cat("RP", 3)], true);
        assert!(matches!(
            kink_of(&m),
            Err(KinkError::NotStablyParallelizableBoundary(_))
        ));
    }

    #[test]
    fn spin_parity_examples() {
        let both_s3 = cob(4, 0, vec![cat("S", 3)], vec![cat("S", 3)], true);
        assert!(spin_parity_check(&both_s3, 0).unwrap());

        let mixed = cob(4, 0, vec![cat("S", 3)], vec![cat("T", 3)], true);
        assert!(!spin_parity_check(&mixed, 2).unwrap());
        assert!(spin_parity_check(&mixed, 3).unwrap());
        assert!(spin_parity_check(&mixed, -1).unwrap());
    }

    #[test]
    fn spin_parity_preconditions() {
        let not_spin = cob(4, 0, vec![cat("S", 3)], vec![cat("S", 3)], false);
        assert!(matches!(
            spin_parity_check(&not_spin, 0),
            Err(KinkError::NotSpin)
        ));
        let odd_dim = cob(3, 0, vec![cat("S", 2)], vec![cat("S", 2)], true);
        assert!(matches!(
            spin_parity_check(&odd_dim, 0),
            Err(KinkError::EvenBoundaryDimension(3))
        ));
    }
}
