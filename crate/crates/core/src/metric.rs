//! Pointwise Lorentzian metric construction.
//!
//! Given a positive-definite form `g_R` and a nonzero vector `V`, the form
//!
//! ```text
//! g(X, Y) = g_R(X, Y) - 2 g_R(X, V) g_R(Y, V) / g_R(V, V)
//! ```
//!
//! has signature (1, d-1) and makes the line of `V` timelike; restricted to
//! the g_R-orthogonal complement of `V` it stays positive definite. The
//! converse direction diagonalizes a Lorentzian form against a Riemannian
//! one and returns the eigenline of the unique negative generalized
//! eigenvalue. Everything here is a single-point linear-algebra check; no
//! manifold discretization is attempted.

use nalgebra::{Cholesky, DMatrix, DVector};

/// Absolute tolerance for symmetry of input forms.
pub const TOL_SYMMETRY: f64 = 1e-10;
/// Eigenvalue tolerance, relative to the spectral radius.
pub const TOL_EIGEN_REL: f64 = 1e-9;
/// Round-trip tolerance for line-field extraction.
pub const TOL_ROUND_TRIP: f64 = 1e-9;
/// Minimum norm for a line-field representative.
pub const TOL_VECTOR: f64 = 1e-12;
/// Largest supported form dimension.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {0} not supported (1..={MAX_DIM})")]
    UnsupportedDimension(usize),
    #[error("matrix is not symmetric: |g_ij - g_ji| reaches {deviation:e}")]
    NotSymmetric { deviation: f64 },
    #[error("input contains non-finite entries")]
    NonFinite,
    #[error("line field vector is (numerically) zero")]
    ZeroVector,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("form is numerically degenerate (eigenvalue within {TOL_EIGEN_REL:e} of zero, relative)")]
    Degenerate,
    #[error("expected Lorentzian signature (1, d-1), found {negatives} negative eigenvalues")]
    WrongSignature { negatives: usize },
    #[error("expected {expected} independent basis vectors, got {got}")]
    DegenerateBasis { expected: usize, got: usize },
}

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method:
/// sweeps of Givens rotations annihilating off-diagonal entries until their
/// norm is negligible. Returns unsorted eigenvalues with matching eigenvector
/// columns.
///
/// Small and dense is exactly our regime (d <= 64), where Jacobi is both
/// simple and highly accurate, including for clustered eigenvalues.
fn jacobi_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut vecs = DMatrix::identity(n, n);
    let frobenius = a.norm();

    for _sweep in 0..128 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= f64::EPSILON * frobenius.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                // tan of the rotation angle, the root of smaller magnitude
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(p, k)] = a[(k, p)];
                    a[(k, q)] = s * akp + c * akq;
                    a[(q, k)] = a[(k, q)];
                }
                for k in 0..n {
                    let (vkp, vkq) = (vecs[(k, p)], vecs[(k, q)]);
                    vecs[(k, p)] = c * vkp - s * vkq;
                    vecs[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    ((0..n).map(|i| a[(i, i)]).collect(), vecs)
}

/// A real symmetric bilinear form, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricForm {
    matrix: DMatrix<f64>,
}

impl SymmetricForm {
    /// Wraps a matrix, checking squareness, dimension bounds, finiteness and
    /// symmetry within [`TOL_SYMMETRY`]; the stored matrix is symmetrized.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self, MetricError> {
        if matrix.nrows() != matrix.ncols() {
            return Err(MetricError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let d = matrix.nrows();
        if d == 0 || d > MAX_DIM {
            return Err(MetricError::UnsupportedDimension(d));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(MetricError::NonFinite);
        }
        let mut deviation = 0.0f64;
        for i in 0..d {
            for j in (i + 1)..d {
                deviation = deviation.max((matrix[(i, j)] - matrix[(j, i)]).abs());
            }
        }
        if deviation > TOL_SYMMETRY {
            return Err(MetricError::NotSymmetric { deviation });
        }
        let sym = (&matrix + matrix.transpose()) * 0.5;
        Ok(Self { matrix: sym })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MetricError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MetricError::NotSquare { rows: r, cols: c });
        }
        Self::new(DMatrix::from_fn(r, c, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.matrix[(i, j)]).collect())
            .collect()
    }

    /// Evaluates the form on a pair of vectors.
    pub fn apply(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.matrix * y)[(0, 0)]
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let (mut ev, _) = jacobi_eigen(&self.matrix);
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    /// Counts of (negative, positive) eigenvalues; errors out when an
    /// eigenvalue sits within tolerance of zero.
    pub fn signature(&self) -> Result<(usize, usize), MetricError> {
        let ev = self.eigenvalues();
        let radius = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if radius == 0.0 || ev.iter().any(|v| v.abs() <= TOL_EIGEN_REL * radius) {
            return Err(MetricError::Degenerate);
        }
        let neg = ev.iter().filter(|v| **v < 0.0).count();
        Ok((neg, ev.len() - neg))
    }

    fn is_positive_definite(&self) -> bool {
        matches!(self.signature(), Ok((0, _)))
    }
}

/// A nonzero vector representing a line field at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct LineField {
    vector: DVector<f64>,
}

impl LineField {
    pub fn new(vector: DVector<f64>) -> Result<Self, MetricError> {
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(MetricError::NonFinite);
        }
        if vector.norm() <= TOL_VECTOR {
            return Err(MetricError::ZeroVector);
        }
        Ok(Self { vector })
    }

    pub fn from_slice(v: &[f64]) -> Result<Self, MetricError> {
        Self::new(DVector::from_row_slice(v))
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &DVector<f64> {
        &self.vector
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.vector.iter().copied().collect()
    }
}

/// Builds the Lorentzian form `g_R - 2 (g_R V)(g_R V)^T / g_R(V, V)` from a
/// positive-definite form and a nonzero vector.
///
/// The result depends on the line of `V` only: rescaling `V` by any nonzero
/// factor gives the same form.
pub fn lorentz_from_riemannian(
    g_r: &SymmetricForm,
    v: &LineField,
) -> Result<SymmetricForm, MetricError> {
    if g_r.dim() != v.dim() {
        return Err(MetricError::DimensionMismatch {
            left: g_r.dim(),
            right: v.dim(),
        });
    }
    if !g_r.is_positive_definite() {
        return Err(MetricError::NotPositiveDefinite);
    }
    let w = g_r.matrix() * v.vector(); // g_R(., V)
    let denom = v.vector().dot(&w); // g_R(V, V) > 0
    let g = g_r.matrix() - (&w * w.transpose()) * (2.0 / denom);
    SymmetricForm::new(g)
}

/// Whether the restriction of `g` to the span of `basis` is positive
/// definite. The basis must consist of `d - 1` independent vectors.
pub fn pullback_is_riemannian(
    g: &SymmetricForm,
    basis: &[DVector<f64>],
) -> Result<bool, MetricError> {
    let d = g.dim();
    if basis.len() != d - 1 {
        return Err(MetricError::DegenerateBasis {
            expected: d - 1,
            got: basis.len(),
        });
    }
    for v in basis {
        if v.len() != d {
            return Err(MetricError::DimensionMismatch {
                left: d,
                right: v.len(),
            });
        }
    }
    let b = DMatrix::from_fn(d, d - 1, |i, j| basis[j][i]);
    // Independence check via the Euclidean Gram matrix of the basis.
    let (gram_ev, _) = jacobi_eigen(&(b.transpose() * &b));
    let gmax = gram_ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let rank = gram_ev
        .iter()
        .filter(|v| **v > TOL_EIGEN_REL * gmax)
        .count();
    if gmax == 0.0 || rank < d - 1 {
        return Err(MetricError::DegenerateBasis {
            expected: d - 1,
            got: rank,
        });
    }

    let gram = b.transpose() * g.matrix() * &b;
    let (ev, _) = jacobi_eigen(&((&gram + gram.transpose()) * 0.5));
    let radius = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(radius > 0.0 && ev.iter().all(|v| *v > TOL_EIGEN_REL * radius))
}

/// Diagonalizes a Lorentzian form against a Riemannian one and returns the
/// line of the unique negative generalized eigenvalue, normalized to
/// g_R-unit length.
///
/// Solved by whitening: with `g_R = L L^T`, the generalized problem
/// `g x = lambda g_R x` becomes the symmetric problem for
/// `L^-1 g L^-T`, which preserves inertia.
pub fn extract_timelike_line(
    g: &SymmetricForm,
    g_r: &SymmetricForm,
) -> Result<LineField, MetricError> {
    if g.dim() != g_r.dim() {
        return Err(MetricError::DimensionMismatch {
            left: g.dim(),
            right: g_r.dim(),
        });
    }
    if !g_r.is_positive_definite() {
        return Err(MetricError::NotPositiveDefinite);
    }
    let chol = Cholesky::new(g_r.matrix().clone()).ok_or(MetricError::NotPositiveDefinite)?;
    let l = chol.l();
    let half = l
        .solve_lower_triangular(g.matrix())
        .ok_or(MetricError::Degenerate)?;
    let whitened = l
        .solve_lower_triangular(&half.transpose())
        .ok_or(MetricError::Degenerate)?;
    let (eigenvalues, eigenvectors) = jacobi_eigen(&((&whitened + whitened.transpose()) * 0.5));

    let radius = eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if radius == 0.0 || eigenvalues.iter().any(|v| v.abs() <= TOL_EIGEN_REL * radius) {
        return Err(MetricError::Degenerate);
    }
    let negatives: Vec<usize> = eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, v)| **v < 0.0)
        .map(|(i, _)| i)
        .collect();
    if negatives.len() != 1 {
        return Err(MetricError::WrongSignature {
            negatives: negatives.len(),
        });
    }

    let w = eigenvectors.column(negatives[0]).into_owned();
    let x = l
        .transpose()
        .solve_upper_triangular(&w)
        .ok_or(MetricError::Degenerate)?;
    let norm = g_r.apply(&x, &x).sqrt();
    LineField::new(x / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_form(d: usize) -> SymmetricForm {
        SymmetricForm::new(DMatrix::identity(d, d)).unwrap()
    }

    #[test]
    fn orthonormal_direction_gives_minkowski() {
        let g_r = identity_form(4);
        let v = LineField::from_slice(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let g = lorentz_from_riemannian(&g_r, &v).unwrap();
        let expected = DMatrix::from_diagonal(&DVector::from_row_slice(&[-1.0, 1.0, 1.0, 1.0]));
        assert!((g.matrix() - expected).norm() < 1e-12);
        assert_eq!(g.signature().unwrap(), (1, 3));
    }

    #[test]
    fn diagonal_direction_in_the_plane() {
        let g_r = identity_form(2);
        let v = LineField::from_slice(&[1.0, 1.0]).unwrap();
        let g = lorentz_from_riemannian(&g_r, &v).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, -1.0, 0.0]);
        assert!((g.matrix() - expected).norm() < 1e-12);
        let ev = g.eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn construction_rejects_indefinite_input() {
        let bad = SymmetricForm::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]))
            .unwrap();
        let v = LineField::from_slice(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            lorentz_from_riemannian(&bad, &v),
            Err(MetricError::NotPositiveDefinite)
        ));
    }

    #[test]
    fn pullback_on_spacelike_slice() {
        let g = SymmetricForm::new(DMatrix::from_diagonal(&DVector::from_row_slice(&[
            -1.0, 1.0, 1.0, 1.0,
        ])))
        .unwrap();
        let e = |i: usize| {
            let mut v = DVector::zeros(4);
            v[i] = 1.0;
            v
        };
        assert!(pullback_is_riemannian(&g, &[e(1), e(2), e(3)]).unwrap());
        assert!(!pullback_is_riemannian(&g, &[e(0), e(1), e(2)]).unwrap());
        assert!(matches!(
            pullback_is_riemannian(&g, &[e(1), e(2), e(2)]),
            Err(MetricError::DegenerateBasis { .. })
        ));
    }

    #[test]
    fn extraction_recovers_the_axis() {
        let g = SymmetricForm::new(DMatrix::from_diagonal(&DVector::from_row_slice(&[
            -1.0, 1.0, 1.0, 1.0,
        ])))
        .unwrap();
        let line = extract_timelike_line(&g, &identity_form(4)).unwrap();
        let v = line.vector();
        assert!((v[0].abs() - 1.0).abs() < 1e-12);
        assert!(v.iter().skip(1).all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn extraction_round_trips_the_plane_example() {
        let g = SymmetricForm::new(DMatrix::from_row_slice(2, 2, &[0.0, -1.0, -1.0, 0.0]))
            .unwrap();
        let line = extract_timelike_line(&g, &identity_form(2)).unwrap();
        let v = line.vector();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let aligned = (v[0] - s).abs() < 1e-12 && (v[1] - s).abs() < 1e-12;
        let flipped = (v[0] + s).abs() < 1e-12 && (v[1] + s).abs() < 1e-12;
        assert!(aligned || flipped);
    }

    #[test]
    fn extraction_rejects_riemannian_input() {
        assert!(matches!(
            extract_timelike_line(&identity_form(3), &identity_form(3)),
            Err(MetricError::WrongSignature { negatives: 0 })
        ));
    }

    #[test]
    fn symmetric_form_validation() {
        assert!(matches!(
            SymmetricForm::from_rows(&[vec![1.0, 0.5], vec![0.0, 1.0]]),
            Err(MetricError::NotSymmetric { .. })
        ));
        assert!(matches!(
            SymmetricForm::from_rows(&[vec![1.0, 0.0]]),
            Err(MetricError::NotSquare { .. })
        ));
        assert!(matches!(
            LineField::from_slice(&[0.0, 0.0]),
            Err(MetricError::ZeroVector)
        ));
    }
}
