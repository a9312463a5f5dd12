//! Seminorms of the form `v -> N(A v)` for an ambient norm `N`, with
//! unit-ball extraction in either facet or ellipsoid form.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::geometry::{GeometryError, SymmetricPolytope};
use crate::jacobian::Ellipsoid;

#[derive(Debug, Error, PartialEq)]
pub enum SeminormError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("seminorm has nontrivial kernel: unit ball is unbounded")]
    UnboundedBall,
    #[error("quadratic ambient matrix is not positive semidefinite")]
    NotPsd,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Norm on the ambient space `R^N`.
#[derive(Debug, Clone, PartialEq)]
pub enum AmbientNorm {
    Euclidean,
    MaxNorm,
    SumNorm,
    /// `|x|^2 = x^T Q x` for symmetric positive-semidefinite `Q`.
    Quadratic(DMatrix<f64>),
}

impl AmbientNorm {
    pub fn evaluate(&self, x: &DVector<f64>) -> f64 {
        match self {
            AmbientNorm::Euclidean => x.norm(),
            AmbientNorm::MaxNorm => x.iter().map(|c| c.abs()).fold(0.0, f64::max),
            AmbientNorm::SumNorm => x.iter().map(|c| c.abs()).sum(),
            AmbientNorm::Quadratic(q) => x.dot(&(q * x)).max(0.0).sqrt(),
        }
    }

    fn validate(&self, n: usize) -> Result<(), SeminormError> {
        if let AmbientNorm::Quadratic(q) = self {
            if q.nrows() != n || q.ncols() != n {
                return Err(SeminormError::DimensionMismatch {
                    expected: n,
                    got: q.nrows(),
                });
            }
            let sym_err = (q - q.transpose()).norm();
            if sym_err > 1e-10 * (1.0 + q.norm()) {
                return Err(SeminormError::NotPsd);
            }
            let eig = q.clone().symmetric_eigen();
            if eig.eigenvalues.iter().any(|&l| l < -1e-10) {
                return Err(SeminormError::NotPsd);
            }
        }
        Ok(())
    }
}

/// A seminorm `sigma(v) = N(A v)` on `R^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Seminorm {
    pub matrix: DMatrix<f64>,
    pub ambient: AmbientNorm,
}

/// Unit ball of a seminorm, in whichever representation its ambient norm
/// induces.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitBall {
    Polytope(SymmetricPolytope),
    Ellipsoid(Ellipsoid),
}

impl Seminorm {
    pub fn new(matrix: DMatrix<f64>, ambient: AmbientNorm) -> Result<Self, SeminormError> {
        ambient.validate(matrix.nrows())?;
        Ok(Self { matrix, ambient })
    }

    /// Euclidean norm on `R^k`.
    pub fn euclidean(k: usize) -> Self {
        Self {
            matrix: DMatrix::identity(k, k),
            ambient: AmbientNorm::Euclidean,
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn evaluate(&self, v: &DVector<f64>) -> Result<f64, SeminormError> {
        if v.len() != self.domain_dim() {
            return Err(SeminormError::DimensionMismatch {
                expected: self.domain_dim(),
                got: v.len(),
            });
        }
        Ok(self.ambient.evaluate(&(&self.matrix * v)))
    }

    /// Gram matrix `A^T Q A` of the quadratic part (`Q = I` for Euclidean).
    /// Only meaningful for Euclidean/Quadratic ambients.
    pub fn quadratic_shape(&self) -> Option<DMatrix<f64>> {
        match &self.ambient {
            AmbientNorm::Euclidean => Some(self.matrix.transpose() * &self.matrix),
            AmbientNorm::Quadratic(q) => Some(self.matrix.transpose() * q * &self.matrix),
            _ => None,
        }
    }

    /// True when the seminorm vanishes on a nontrivial subspace.
    pub fn is_degenerate(&self) -> bool {
        let k = self.domain_dim();
        if k == 0 {
            return false;
        }
        match &self.ambient {
            AmbientNorm::Euclidean | AmbientNorm::MaxNorm | AmbientNorm::SumNorm => {
                self.matrix.rank(1e-12) < k
            }
            AmbientNorm::Quadratic(_) => {
                let m = self.quadratic_shape().unwrap();
                let eig = m.symmetric_eigen();
                let max = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
                eig.eigenvalues.iter().any(|&l| l <= 1e-12 * max.max(1.0))
            }
        }
    }

    /// Unit ball `{v : sigma(v) <= 1}`.
    pub fn unit_ball(&self) -> Result<UnitBall, SeminormError> {
        if self.is_degenerate() {
            return Err(SeminormError::UnboundedBall);
        }
        match &self.ambient {
            AmbientNorm::MaxNorm => {
                // max_i |a_i . v| <= 1: one facet per row of A
                let facets = rows(&self.matrix);
                Ok(UnitBall::Polytope(SymmetricPolytope::new(facets)))
            }
            AmbientNorm::SumNorm => {
                // sum_i |a_i . v| = max over sign patterns of |sum eps_i a_i . v|,
                // so the facets are the signed row sums (first sign fixed by
                // central symmetry).
                let base = rows(&self.matrix);
                let n = base.len();
                let k = self.domain_dim();
                let mut facets = Vec::new();
                for bits in 0..(1u32 << (n - 1)) {
                    let mut f = DVector::zeros(k);
                    for (i, a) in base.iter().enumerate() {
                        let sign = if i == 0 {
                            1.0
                        } else if bits >> (i - 1) & 1 == 1 {
                            -1.0
                        } else {
                            1.0
                        };
                        f += a * sign;
                    }
                    facets.push(f);
                }
                Ok(UnitBall::Polytope(SymmetricPolytope::new(facets)))
            }
            AmbientNorm::Euclidean | AmbientNorm::Quadratic(_) => {
                let m = self.quadratic_shape().unwrap();
                Ok(UnitBall::Ellipsoid(Ellipsoid::new(m)?))
            }
        }
    }
}

fn rows(a: &DMatrix<f64>) -> Vec<DVector<f64>> {
    (0..a.nrows())
        .map(|i| DVector::from_fn(a.ncols(), |j, _| a[(i, j)]))
        .collect()
}

/// Metric differential of an affine map into a normed ambient space:
/// constant, with matrix the linear part of the map.
pub fn metric_differential(
    linear_part: DMatrix<f64>,
    ambient: AmbientNorm,
) -> Result<Seminorm, SeminormError> {
    Seminorm::new(linear_part, ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pt;
    use rand::{Rng, SeedableRng};

    #[test]
    fn euclidean_three_four_five() {
        let s = Seminorm::euclidean(2);
        assert_eq!(s.evaluate(&pt(&[3.0, 4.0])).unwrap(), 5.0);
    }

    #[test]
    fn max_norm_identity() {
        let s = Seminorm::new(DMatrix::identity(2, 2), AmbientNorm::MaxNorm).unwrap();
        assert_eq!(s.evaluate(&pt(&[3.0, -4.0])).unwrap(), 4.0);
    }

    #[test]
    fn homogeneity_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for ambient in [AmbientNorm::Euclidean, AmbientNorm::MaxNorm, AmbientNorm::SumNorm] {
            for _ in 0..100 {
                let a = DMatrix::from_fn(3, 2, |_, _| rng.gen_range(-1.0..1.0));
                let s = Seminorm::new(a, ambient.clone()).unwrap();
                let v = DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0));
                let lam: f64 = rng.gen_range(0.0..5.0);
                let lhs = s.evaluate(&(&v * lam)).unwrap();
                let rhs = lam * s.evaluate(&v).unwrap();
                assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs));
            }
        }
    }

    #[test]
    fn triangle_inequality_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let a = DMatrix::from_fn(2, 2, |_, _| rng.gen_range(-1.0..1.0));
            let q = &a * a.transpose();
            let ambient = match rng.gen_range(0..4) {
                0 => AmbientNorm::Euclidean,
                1 => AmbientNorm::MaxNorm,
                2 => AmbientNorm::SumNorm,
                _ => AmbientNorm::Quadratic(q),
            };
            let m = DMatrix::from_fn(2, 2, |_, _| rng.gen_range(-1.0..1.0));
            let s = Seminorm::new(m, ambient).unwrap();
            let u = DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0));
            let v = DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0));
            let sum = s.evaluate(&(&u + &v)).unwrap();
            assert!(sum <= s.evaluate(&u).unwrap() + s.evaluate(&v).unwrap() + 1e-12);
        }
    }

    #[test]
    fn max_norm_square_ball() {
        let s = Seminorm::new(DMatrix::identity(2, 2), AmbientNorm::MaxNorm).unwrap();
        match s.unit_ball().unwrap() {
            UnitBall::Polytope(p) => {
                assert_eq!(p.facets.len(), 2);
                assert!((p.volume().unwrap().value - 4.0).abs() < 1e-12);
            }
            _ => panic!("expected polytope"),
        }
    }

    #[test]
    fn euclidean_scaled_ellipse() {
        let a = DMatrix::from_diagonal(&pt(&[2.0, 1.0]));
        let s = Seminorm::new(a, AmbientNorm::Euclidean).unwrap();
        match s.unit_ball().unwrap() {
            UnitBall::Ellipsoid(e) => {
                // semi-axes 1/2 and 1: shape diag(4, 1)
                assert!((e.shape[(0, 0)] - 4.0).abs() < 1e-12);
                assert!((e.shape[(1, 1)] - 1.0).abs() < 1e-12);
                assert!(e.shape[(0, 1)].abs() < 1e-12);
            }
            _ => panic!("expected ellipsoid"),
        }
    }

    #[test]
    fn sum_norm_diamond_ball() {
        let s = Seminorm::new(DMatrix::identity(2, 2), AmbientNorm::SumNorm).unwrap();
        match s.unit_ball().unwrap() {
            UnitBall::Polytope(p) => {
                // diamond: facets (1,1) and (1,-1), volume 2, and the
                // vertices of the ball evaluate to 1 under the seminorm
                assert!((p.volume().unwrap().value - 2.0).abs() < 1e-12);
                for v in p.vertices().unwrap() {
                    assert!((s.evaluate(&v).unwrap() - 1.0).abs() < 1e-9);
                }
            }
            _ => panic!("expected polytope"),
        }
    }

    #[test]
    fn degenerate_projection_kernel() {
        let a = DMatrix::from_row_slice(1, 2, &[1.0, 0.0]);
        let s = Seminorm::new(a, AmbientNorm::Euclidean).unwrap();
        assert_eq!(s.evaluate(&pt(&[0.0, 1.0])).unwrap(), 0.0);
        assert!(s.is_degenerate());
        assert_eq!(s.unit_ball().unwrap_err(), SeminormError::UnboundedBall);
    }

    #[test]
    fn dual_consistency_random() {
        // every facet functional is bounded by 1 on sampled ball points
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let a = DMatrix::from_fn(3, 2, |_, _| rng.gen_range(-1.0..1.0_f64));
            let s = match Seminorm::new(a, AmbientNorm::SumNorm) {
                Ok(s) if !s.is_degenerate() => s,
                _ => continue,
            };
            let facets = match s.unit_ball().unwrap() {
                UnitBall::Polytope(p) => p.facets,
                _ => unreachable!(),
            };
            for _ in 0..1000 {
                let v = DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0));
                let nv = s.evaluate(&v).unwrap();
                if nv < 1e-9 {
                    continue;
                }
                let on_ball = &v / nv;
                for f in &facets {
                    assert!(f.dot(&on_ball).abs() <= 1.0 + 1e-9);
                }
            }
        }
    }

    #[test]
    fn metric_differential_is_linear_part() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        let s = metric_differential(a.clone(), AmbientNorm::Euclidean).unwrap();
        assert_eq!(s.matrix, a);
    }

    #[test]
    fn quadratic_rejects_indefinite() {
        let q = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let err = Seminorm::new(DMatrix::identity(2, 2), AmbientNorm::Quadratic(q)).unwrap_err();
        assert_eq!(err, SeminormError::NotPsd);
    }
}
