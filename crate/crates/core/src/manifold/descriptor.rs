//! Invariant records for closed manifolds and compact cobordisms.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Errors from descriptor construction and the manifold algebra.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ManifoldError {
    #[error("unknown manifold name '{0}'")]
    UnknownName(String),
    #[error("negative parameter {value} for '{name}'")]
    NegativeParameter { name: String, value: i64 },
    #[error("'{0}' requires an integer parameter (e.g. '{0}2')")]
    MissingParameter(String),
    #[error("'{0}' takes no parameter")]
    UnexpectedParameter(String),
    #[error("parameter {value} for '{name}' is out of range: {reason}")]
    ParameterRange {
        name: String,
        value: i64,
        reason: &'static str,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("'{0}' is not connected; connected sum needs connected operands")]
    NotConnected(String),
    #[error("'{0}' is not orientable; connected sum needs orientable operands")]
    NonOrientableOperand(String),
    #[error("semi-characteristic needs odd dimension, '{name}' has dimension {dim}")]
    EvenDimension { name: String, dim: usize },
    #[error("invalid descriptor '{name}': {reason}")]
    InvalidDescriptor { name: String, reason: String },
    #[error("'{0}' is a built-in catalog name and cannot be redefined")]
    ReservedName(String),
    #[error("dimension {0} is too large for exact Betti bookkeeping")]
    DimensionTooLarge(usize),
    #[error("cobordism boundary '{name}' has dimension {got}, expected {expected}")]
    BoundaryDimension {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("spin cobordism has non-spin boundary component '{0}'")]
    NonSpinBoundary(String),
}

/// Yes/no/unknown facts about a manifold (stable parallelizability has no
/// general decision procedure from Betti data alone).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl TriState {
    pub fn both(self, other: TriState) -> TriState {
        use TriState::*;
        match (self, other) {
            (Yes, Yes) => Yes,
            (No, _) | (_, No) => No,
            _ => Unknown,
        }
    }

    pub fn is_yes(self) -> bool {
        self == TriState::Yes
    }
}

// On the wire: true / false / null (or a missing field) for yes / no / unknown.
impl Serialize for TriState {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            TriState::Yes => s.serialize_bool(true),
            TriState::No => s.serialize_bool(false),
            TriState::Unknown => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for TriState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Option::<bool>::deserialize(d)? {
            Some(true) => TriState::Yes,
            Some(false) => TriState::No,
            None => TriState::Unknown,
        })
    }
}

impl Default for TriState {
    fn default() -> Self {
        TriState::Unknown
    }
}

/// Field of coefficients for (semi-)characteristics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientField {
    Q,
    Z2,
}

/// Invariant record of a closed smooth manifold.
///
/// Betti numbers are stored over Q and Z/2 separately; orientability, spin
/// and stable parallelizability are carried as flags with propagation rules
/// rather than as bundle data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldDescriptor {
    pub name: String,
    pub dim: usize,
    pub betti_q: Vec<u64>,
    pub betti_z2: Vec<u64>,
    pub orientable: bool,
    pub spin: bool,
    #[serde(default)]
    pub stably_parallelizable: TriState,
    #[serde(default)]
    pub signature: Option<i64>,
    #[serde(default = "default_true")]
    pub connected: bool,
    #[serde(default = "default_one")]
    pub components: u32,
}

fn default_true() -> bool {
    true
}

fn default_one() -> u32 {
    1
}

impl ManifoldDescriptor {
    /// Checks the record's internal consistency; every constructor and every
    /// user-supplied catalog extension goes through this.
    pub fn validate(&self) -> Result<(), ManifoldError> {
        let fail = |reason: String| ManifoldError::InvalidDescriptor {
            name: self.name.clone(),
            reason,
        };
        if self.betti_q.len() != self.dim + 1 || self.betti_z2.len() != self.dim + 1 {
            return Err(fail(format!(
                "Betti tables must have {} entries",
                self.dim + 1
            )));
        }
        if self.components == 0 {
            return Err(fail("a manifold has at least one component".into()));
        }
        if self.connected && self.components != 1 {
            return Err(fail("connected manifolds have one component".into()));
        }
        if self.connected && (self.betti_q[0] != 1 || self.betti_z2[0] != 1) {
            return Err(fail("connected manifolds have b_0 = 1".into()));
        }
        if self.betti_z2[self.dim] != u64::from(self.components) {
            return Err(fail(format!(
                "closed manifolds have top Z/2 Betti number equal to the component count {}",
                self.components
            )));
        }
        if self.connected && self.orientable && self.betti_q[self.dim] != 1 {
            return Err(fail(
                "closed connected orientable manifolds have top Q Betti number 1".into(),
            ));
        }
        if self.spin && !self.orientable {
            return Err(fail("spin manifolds are orientable".into()));
        }
        if (self.dim % 4 == 0) != self.signature.is_some() {
            return Err(fail(
                "signature must be present exactly when dim = 0 mod 4".into(),
            ));
        }
        Ok(())
    }

    /// Alternating sum of the rational Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.betti_q)
    }

    /// Kervaire semi-characteristic: the mod-2 sum of Betti numbers in
    /// degrees `0 ..= (dim-1)/2`. Defined for odd-dimensional closed
    /// manifolds only.
    pub fn semi_characteristic(&self, field: CoefficientField) -> Result<u8, ManifoldError> {
        if self.dim % 2 == 0 {
            return Err(ManifoldError::EvenDimension {
                name: self.name.clone(),
                dim: self.dim,
            });
        }
        let betti = match field {
            CoefficientField::Q => &self.betti_q,
            CoefficientField::Z2 => &self.betti_z2,
        };
        let q = (self.dim - 1) / 2;
        Ok(betti[..=q].iter().fold(0u8, |acc, b| acc ^ (*b % 2) as u8))
    }

    /// Invariant-record equality, ignoring the display name.
    pub fn same_invariants(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.betti_q == other.betti_q
            && self.betti_z2 == other.betti_z2
            && self.orientable == other.orientable
            && self.spin == other.spin
            && self.stably_parallelizable == other.stably_parallelizable
            && self.signature == other.signature
            && self.connected == other.connected
            && self.components == other.components
    }

    /// True when the record carries exactly the invariants of the n-sphere.
    pub fn has_sphere_invariants(&self) -> bool {
        if self.dim == 0 {
            return false;
        }
        let mut sphere = vec![0u64; self.dim + 1];
        sphere[0] = 1;
        sphere[self.dim] = 1;
        self.connected && self.orientable && self.betti_q == sphere && self.betti_z2 == sphere
    }
}

/// Euler characteristic of the n-sphere: 2 for even n, 0 for odd n.
pub fn sphere_euler_characteristic(n: usize) -> i64 {
    if n % 2 == 0 {
        2
    } else {
        0
    }
}

pub(crate) fn alternating_sum(betti: &[u64]) -> i64 {
    let sum: i128 = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let b = b as i128;
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum();
    i64::try_from(sum).expect("Euler characteristic exceeds i64")
}

/// Invariant record of a compact cobordism `(M; N1, N2)`.
///
/// Boundary components are split into the incoming side `N1` and outgoing
/// side `N2`; the ordering matters for the odd-dimensional kink formula,
/// which is a signed half-difference of boundary Euler characteristics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismDescriptor {
    pub dim: usize,
    pub euler: i64,
    pub boundary_in: Vec<ManifoldDescriptor>,
    pub boundary_out: Vec<ManifoldDescriptor>,
    pub spin: bool,
    #[serde(default)]
    pub stably_parallelizable: TriState,
}

impl CobordismDescriptor {
    pub fn new(
        dim: usize,
        euler: i64,
        boundary_in: Vec<ManifoldDescriptor>,
        boundary_out: Vec<ManifoldDescriptor>,
        spin: bool,
        stably_parallelizable: TriState,
    ) -> Result<Self, ManifoldError> {
        let cob = Self {
            dim,
            euler,
            boundary_in,
            boundary_out,
            spin,
            stably_parallelizable,
        };
        cob.validate()?;
        Ok(cob)
    }

    pub fn validate(&self) -> Result<(), ManifoldError> {
        for b in self.boundary() {
            b.validate()?;
            if b.dim + 1 != self.dim {
                return Err(ManifoldError::BoundaryDimension {
                    name: b.name.clone(),
                    got: b.dim,
                    expected: self.dim.saturating_sub(1),
                });
            }
            // A spin structure on M induces one on every boundary component.
            if self.spin && !b.spin {
                return Err(ManifoldError::NonSpinBoundary(b.name.clone()));
            }
        }
        Ok(())
    }

    /// All boundary components, incoming side first.
    pub fn boundary(&self) -> impl Iterator<Item = &ManifoldDescriptor> {
        self.boundary_in.iter().chain(self.boundary_out.iter())
    }

    pub fn euler_in(&self) -> i64 {
        self.boundary_in
            .iter()
            .map(ManifoldDescriptor::euler_characteristic)
            .sum()
    }

    pub fn euler_out(&self) -> i64 {
        self.boundary_out
            .iter()
            .map(ManifoldDescriptor::euler_characteristic)
            .sum()
    }

    /// Mod-2 sum of the Z/2 semi-characteristics over all boundary
    /// components. Boundary dimension must be odd.
    pub fn boundary_semi_characteristic_z2(&self) -> Result<u8, ManifoldError> {
        let mut acc = 0u8;
        for b in self.boundary() {
            acc ^= b.semi_characteristic(CoefficientField::Z2)?;
        }
        Ok(acc)
    }
}
