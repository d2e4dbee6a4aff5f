//! Finite chain complexes of free abelian groups and their exact homology.
//!
//! A complex of top degree `n` stores the boundary maps `D_1 .. D_n`, where
//! `D_k` maps k-chains to (k-1)-chains. Homology is computed degree by degree
//! from Smith normal forms (rational ranks and torsion) together with an
//! independent GF(2) elimination for the mod-2 Betti numbers. This module is
//! the brute-force oracle the closed-form Betti bookkeeping elsewhere in the
//! crate is validated against.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{smith_normal_form, IntegerMatrix};

/// Errors raised while building or reading a chain complex.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("boundary composition D_{degree_upper} after D_{} is nonzero: not a chain complex", degree_upper - 1)]
    NotAComplex { degree_upper: usize },
    #[error("degree {degree} boundary is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    BoundaryShape {
        degree: usize,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("expected {expected} chain-group ranks for top degree {dim}, got {got}")]
    RankCount {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("cannot infer the rank of the degree-{degree} chain group; supply an explicit \"ranks\" array")]
    AmbiguousShape { degree: usize },
    #[error("boundary matrix in degree {degree} has ragged rows")]
    RaggedMatrix { degree: usize },
    #[error("connected-sum assembly needs {0}")]
    SumAssembly(&'static str),
}

/// A bounded chain complex `0 -> C_n -> ... -> C_0 -> 0` over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    /// Builds a complex from chain-group ranks `c_0 .. c_n` and boundaries
    /// `D_1 .. D_n`, verifying shapes and that every composite `D_{k-1} D_k`
    /// vanishes. Fails fast rather than deferring to homology time.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self, ComplexError> {
        assert!(!ranks.is_empty(), "a complex has at least degree zero");
        let dim = ranks.len() - 1;
        if boundaries.len() != dim {
            return Err(ComplexError::RankCount {
                dim,
                expected: dim + 1,
                got: ranks.len(),
            });
        }
        for (k, d) in boundaries.iter().enumerate() {
            let degree = k + 1;
            if d.rows() != ranks[degree - 1] || d.cols() != ranks[degree] {
                return Err(ComplexError::BoundaryShape {
                    degree,
                    rows: ranks[degree - 1],
                    cols: ranks[degree],
                    got_rows: d.rows(),
                    got_cols: d.cols(),
                });
            }
        }
        for k in 1..boundaries.len() {
            let composite = boundaries[k - 1]
                .mul(&boundaries[k])
                .expect("shapes verified above");
            if !composite.is_zero() {
                return Err(ComplexError::NotAComplex {
                    degree_upper: k + 1,
                });
            }
        }
        Ok(Self { ranks, boundaries })
    }

    /// Single-degree complex (a set of 0-cells, no boundaries).
    pub fn point_like(rank: usize) -> Self {
        Self {
            ranks: vec![rank],
            boundaries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Rank of the k-chain group, zero outside `0..=dim`.
    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Boundary map in degree k (`D_k: C_k -> C_{k-1}`), for `1 <= k <= dim`.
    pub fn boundary(&self, k: usize) -> Option<&IntegerMatrix> {
        if k == 0 {
            None
        } else {
            self.boundaries.get(k - 1)
        }
    }

    /// Alternating sum of the chain-group ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Exact homology over Q and Z/2, with per-degree torsion coefficients.
    pub fn homology(&self) -> HomologySummary {
        let n = self.dim();
        let snfs: Vec<_> = self.boundaries.iter().map(smith_normal_form).collect();
        let ranks2: Vec<usize> = self.boundaries.iter().map(IntegerMatrix::rank_mod2).collect();

        let rank_q = |k: usize| -> usize {
            if k == 0 || k > n {
                0
            } else {
                snfs[k - 1].rank
            }
        };
        let rank_2 = |k: usize| -> usize {
            if k == 0 || k > n {
                0
            } else {
                ranks2[k - 1]
            }
        };

        let mut betti_q = Vec::with_capacity(n + 1);
        let mut betti_z2 = Vec::with_capacity(n + 1);
        let mut torsion = Vec::with_capacity(n + 1);
        for k in 0..=n {
            betti_q.push((self.ranks[k] - rank_q(k) - rank_q(k + 1)) as u64);
            betti_z2.push((self.ranks[k] - rank_2(k) - rank_2(k + 1)) as u64);
            let tors: Vec<BigInt> = if k < n {
                snfs[k]
                    .invariant_factors
                    .iter()
                    .filter(|f| **f > BigInt::from(1))
                    .cloned()
                    .collect()
            } else {
                Vec::new()
            };
            torsion.push(tors);
        }

        HomologySummary {
            betti_q,
            betti_z2,
            torsion,
        }
    }

    /// Tensor product of complexes, with the usual Koszul sign:
    /// `d(a (x) b) = da (x) b + (-1)^|a| a (x) db`.
    ///
    /// Basis of degree k is grouped by blocks (i, k-i) with i ascending, and
    /// within a block indexed row-major as `a_index * rank_b + b_index`.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let n = self.dim() + other.dim();
        let block_offset = |k: usize, i: usize| -> usize {
            // offset of block (i, k-i) inside degree k
            (0..i)
                .filter(|&p| k - p <= other.dim())
                .map(|p| self.rank(p) * other.rank(k - p))
                .sum()
        };
        let ranks: Vec<usize> = (0..=n)
            .map(|k| {
                (0..=k.min(self.dim()))
                    .filter(|&i| k - i <= other.dim())
                    .map(|i| self.rank(i) * other.rank(k - i))
                    .sum()
            })
            .collect();

        let mut boundaries = Vec::with_capacity(n);
        for k in 1..=n {
            let mut d = IntegerMatrix::zeros(ranks[k - 1], ranks[k]);
            for i in 0..=k.min(self.dim()) {
                let j = k - i;
                if j > other.dim() {
                    continue;
                }
                let (ra, rb) = (self.rank(i), other.rank(j));
                if ra == 0 || rb == 0 {
                    continue;
                }
                let src_base = block_offset(k, i);
                // d_a part: block (i, j) -> (i-1, j)
                if i >= 1 {
                    let da = self.boundary(i).unwrap();
                    let dst_base = block_offset(k - 1, i - 1);
                    for a_to in 0..self.rank(i - 1) {
                        for a_from in 0..ra {
                            let coeff = da.get(a_to, a_from);
                            if coeff.is_zero() {
                                continue;
                            }
                            for b in 0..rb {
                                let row = dst_base + a_to * rb + b;
                                let col = src_base + a_from * rb + b;
                                let v = d.get(row, col) + coeff;
                                d.set(row, col, v);
                            }
                        }
                    }
                }
                // (-1)^i d_b part: block (i, j) -> (i, j-1)
                if j >= 1 {
                    let db = other.boundary(j).unwrap();
                    let dst_base = block_offset(k - 1, i);
                    let rb_to = other.rank(j - 1);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for b_to in 0..rb_to {
                        for b_from in 0..rb {
                            let coeff = db.get(b_to, b_from);
                            if coeff.is_zero() {
                                continue;
                            }
                            let signed = coeff * sign;
                            for a in 0..ra {
                                let row = dst_base + a * rb_to + b_to;
                                let col = src_base + a * rb + b_from;
                                let v = d.get(row, col) + &signed;
                                d.set(row, col, v);
                            }
                        }
                    }
                }
            }
            boundaries.push(d);
        }

        Self::new(ranks, boundaries).expect("tensor product of complexes is a complex")
    }

    /// Cellular model of a connected sum, for complexes with a single 0-cell,
    /// a single top cell and vanishing `D_1` and `D_n` (any cell structure of
    /// a closed connected orientable manifold of this shape qualifies).
    ///
    /// The glued complex keeps one 0-cell, one fresh top cell, and the two
    /// middle parts side by side; homology then matches the Mayer-Vietoris
    /// answer for the sum in every degree, torsion included.
    pub fn connected_sum(&self, other: &Self) -> Result<Self, ComplexError> {
        let n = self.dim();
        if other.dim() != n || n < 1 {
            return Err(ComplexError::SumAssembly(
                "two complexes of equal top degree >= 1",
            ));
        }
        for c in [self, other] {
            if c.rank(0) != 1 || c.rank(n) != 1 {
                return Err(ComplexError::SumAssembly("a single 0-cell and top cell"));
            }
            if c.boundary(1).is_some_and(|d| !d.is_zero())
                || c.boundary(n).is_some_and(|d| !d.is_zero())
            {
                return Err(ComplexError::SumAssembly(
                    "vanishing bottom and top boundary maps",
                ));
            }
        }

        let mid = |c: &Self, k: usize| if k == 0 || k == n { 0 } else { c.rank(k) };
        let ranks: Vec<usize> = (0..=n)
            .map(|k| {
                if k == 0 || k == n {
                    1
                } else {
                    mid(self, k) + mid(other, k)
                }
            })
            .collect();

        let mut boundaries = Vec::with_capacity(n);
        for k in 1..=n {
            let mut d = IntegerMatrix::zeros(ranks[k - 1], ranks[k]);
            // D_1 and D_n of both pieces are zero, so only interior degrees
            // contribute, block-diagonally.
            if k >= 2 && k <= n - 1 {
                let da = self.boundary(k).unwrap();
                let db = other.boundary(k).unwrap();
                for i in 0..da.rows() {
                    for j in 0..da.cols() {
                        d.set(i, j, da.get(i, j).clone());
                    }
                }
                let (ro, co) = (mid(self, k - 1), mid(self, k));
                for i in 0..db.rows() {
                    for j in 0..db.cols() {
                        d.set(ro + i, co + j, db.get(i, j).clone());
                    }
                }
            }
            boundaries.push(d);
        }

        Self::new(ranks, boundaries)
    }
}

/// Betti numbers over Q and Z/2 plus the torsion coefficients, per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti_q: Vec<u64>,
    pub betti_z2: Vec<u64>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologySummary {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti_q
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

// --- JSON file format -------------------------------------------------------
//
// { "dim": n, "boundaries": [ [[...]], ... ], "ranks": [c_0, ..., c_n] }
//
// Boundaries are row-arrays of integers; the degree-k matrix has one row per
// (k-1)-cell. "ranks" is optional and only needed when a matrix with zero
// rows leaves a chain-group rank undetermined (e.g. the sphere's empty
// degree-2 boundary).

#[derive(Serialize, Deserialize)]
struct ComplexWire {
    dim: usize,
    boundaries: Vec<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ranks: Option<Vec<usize>>,
}

impl Serialize for ChainComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let boundaries = self
            .boundaries
            .iter()
            .map(|d| {
                (0..d.rows())
                    .map(|i| {
                        (0..d.cols())
                            .map(|j| i64::try_from(d.get(i, j)).map_err(|_| {
                                serde::ser::Error::custom("boundary entry exceeds i64 range")
                            }))
                            .collect::<Result<Vec<i64>, S::Error>>()
                    })
                    .collect::<Result<Vec<_>, S::Error>>()
            })
            .collect::<Result<Vec<_>, S::Error>>()?;
        ComplexWire {
            dim: self.dim(),
            boundaries,
            ranks: Some(self.ranks.clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChainComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = ComplexWire::deserialize(deserializer)?;
        complex_from_wire(wire).map_err(D::Error::custom)
    }
}

fn complex_from_wire(wire: ComplexWire) -> Result<ChainComplex, ComplexError> {
    let dim = wire.dim;
    if wire.boundaries.len() != dim {
        return Err(ComplexError::RankCount {
            dim,
            expected: dim,
            got: wire.boundaries.len(),
        });
    }
    if let Some(ranks) = &wire.ranks {
        if ranks.len() != dim + 1 {
            return Err(ComplexError::RankCount {
                dim,
                expected: dim + 1,
                got: ranks.len(),
            });
        }
    }

    // Column counts can be read off a nonempty matrix; otherwise they must
    // come from the ranks array or the next matrix's row count.
    let explicit_cols: Vec<Option<usize>> = wire
        .boundaries
        .iter()
        .enumerate()
        .map(|(idx, m)| {
            let degree = idx + 1;
            match m.first() {
                Some(row) => {
                    if m.iter().any(|r| r.len() != row.len()) {
                        Err(ComplexError::RaggedMatrix { degree })
                    } else {
                        Ok(Some(row.len()))
                    }
                }
                None => Ok(None),
            }
        })
        .collect::<Result<_, _>>()?;

    let mut ranks = vec![0usize; dim + 1];
    for k in 0..=dim {
        let inferred = if k == 0 {
            if dim >= 1 {
                Some(wire.boundaries[0].len())
            } else {
                None
            }
        } else {
            explicit_cols[k - 1].or_else(|| {
                if k < dim {
                    Some(wire.boundaries[k].len())
                } else {
                    None
                }
            })
        };
        ranks[k] = match (inferred, &wire.ranks) {
            (Some(r), Some(given)) => {
                if given[k] != r {
                    return Err(ComplexError::RankCount {
                        dim,
                        expected: r,
                        got: given[k],
                    });
                }
                r
            }
            (Some(r), None) => r,
            (None, Some(given)) => given[k],
            (None, None) => return Err(ComplexError::AmbiguousShape { degree: k }),
        };
    }

    let boundaries = wire
        .boundaries
        .iter()
        .enumerate()
        .map(|(idx, m)| {
            let degree = idx + 1;
            IntegerMatrix::from_rows(ranks[degree - 1], ranks[degree], m).map_err(|_| {
                ComplexError::BoundaryShape {
                    degree,
                    rows: ranks[degree - 1],
                    cols: ranks[degree],
                    got_rows: m.len(),
                    got_cols: m.first().map_or(ranks[degree], Vec::len),
                }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    ChainComplex::new(ranks, boundaries)
}
