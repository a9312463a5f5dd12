//! The three Jacobians of a seminorm (Busemann, mass*, inscribed
//! Riemannian) and the inscribed John ellipsoid solver.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::geometry::GeometryError;
use crate::seminorm::{Seminorm, SeminormError, UnitBall};
use crate::unit_ball_volume;

#[derive(Debug, Error)]
pub enum JacobianError {
    #[error("John solver did not converge: residual optimality gap {gap:.3e}")]
    NonConvergence { best: Ellipsoid, gap: f64 },
    #[error("unsupported seminorm combination: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Seminorm(#[from] SeminormError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Which Jacobian to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum JacobianKind {
    Busemann,
    MassStar,
    InscribedRiemannian,
}

/// A centered ellipsoid `{v : v^T M v <= 1}` with symmetric
/// positive-definite shape matrix `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    pub shape: DMatrix<f64>,
}

impl Ellipsoid {
    pub fn new(shape: DMatrix<f64>) -> Result<Self, GeometryError> {
        let sym_err = (&shape - shape.transpose()).norm();
        if sym_err > 1e-9 * (1.0 + shape.norm()) {
            return Err(GeometryError::NotPositiveDefinite);
        }
        if shape.clone().cholesky().is_none() {
            return Err(GeometryError::NotPositiveDefinite);
        }
        Ok(Self { shape })
    }

    pub fn dim(&self) -> usize {
        self.shape.nrows()
    }

    /// Lebesgue volume `omega_k / sqrt(det M)`.
    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dim()) / self.shape.determinant().sqrt()
    }

    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        v.dot(&(&self.shape * v)) <= 1.0 + tol
    }
}

/// For Euclidean/Quadratic ambients the unit ball is an ellipsoid and
/// all three Jacobians coincide with `sqrt(det(A^T Q A))`.  Computing it
/// as the singular value product of `Q^(1/2) A` avoids the Gram
/// determinant's precision loss on ill-conditioned charts.
fn quadratic_jacobian(sigma: &Seminorm) -> Option<f64> {
    use crate::seminorm::AmbientNorm;
    let scaled = match &sigma.ambient {
        AmbientNorm::Euclidean => sigma.matrix.clone(),
        AmbientNorm::Quadratic(q) => {
            let eig = q.clone().symmetric_eigen();
            let sqrt_vals = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
            &eig.eigenvectors
                * DMatrix::from_diagonal(&sqrt_vals)
                * eig.eigenvectors.transpose()
                * &sigma.matrix
        }
        _ => return None,
    };
    Some(scaled.singular_values().iter().product())
}

/// Busemann Jacobian `omega_k / vol(B_sigma)`; 0 on degenerate seminorms.
pub fn jac_busemann(sigma: &Seminorm) -> Result<f64, JacobianError> {
    if sigma.is_degenerate() {
        return Ok(0.0);
    }
    if let Some(j) = quadratic_jacobian(sigma) {
        return Ok(j);
    }
    let k = sigma.domain_dim();
    let vol = match sigma.unit_ball()? {
        UnitBall::Polytope(p) => p.volume()?.value,
        UnitBall::Ellipsoid(e) => e.volume(),
    };
    Ok(unit_ball_volume(k) / vol)
}

/// Gromov mass* Jacobian: `max |det(xi_1,...,xi_k)|` over k-tuples in the
/// dual unit ball, equal to `2^k` over the volume of the smallest
/// enclosing parallelepiped of `B_sigma`.  Exact: the dual ball is either
/// a polytope with known vertices or an ellipsoid with a closed form.
pub fn jac_mass_star(sigma: &Seminorm) -> Result<f64, JacobianError> {
    if sigma.is_degenerate() {
        return Ok(0.0);
    }
    if let Some(j) = quadratic_jacobian(sigma) {
        return Ok(j);
    }
    let k = sigma.domain_dim();
    match sigma.unit_ball()? {
        // dual ball of {|xi_j . v| <= 1} is conv{+-xi_j}; the determinant
        // maximum over a product of polytopes is attained at vertices
        UnitBall::Polytope(p) => {
            let f = &p.facets;
            let mut best = 0.0_f64;
            let mut idx = vec![0usize; k];
            loop {
                let m = DMatrix::from_fn(k, k, |i, j| f[idx[j]][i]);
                best = best.max(m.determinant().abs());
                // odometer over k-subsets with repetition (repeats give 0)
                let mut carry = true;
                for d in (0..k).rev() {
                    if carry {
                        idx[d] += 1;
                        if idx[d] == f.len() {
                            idx[d] = 0;
                        } else {
                            carry = false;
                        }
                    }
                }
                if carry {
                    break;
                }
            }
            Ok(best)
        }
        // dual ball of {v^T M v <= 1} is {xi^T M^-1 xi <= 1}; the maximal
        // determinant over it is sqrt(det M), at an M-orthogonal frame
        UnitBall::Ellipsoid(e) => Ok(e.shape.determinant().sqrt()),
    }
}

/// Relative optimality tolerance for the John solver.
const JOHN_TOL: f64 = 1e-11;
const JOHN_MAX_ITERS: usize = 2_000_000;

/// Maximal-volume centered ellipsoid inside the unit ball.  Ellipsoid
/// input is returned as-is.  For polytopal input the solver runs
/// Frank-Wolfe with away steps on the dual D-optimal design problem:
/// the minimum-volume ellipsoid around the facet functionals is computed
/// and its polar is the John ellipsoid.
pub fn john_ellipsoid(ball: &UnitBall) -> Result<Ellipsoid, JacobianError> {
    match ball {
        UnitBall::Ellipsoid(e) => Ok(e.clone()),
        UnitBall::Polytope(p) => {
            let mvee = mvee_symmetric_points(&p.facets)?;
            // polar of {y: y^T P y <= 1} is {v: v^T P^-1 v <= 1}
            let shape = mvee
                .shape
                .try_inverse()
                .ok_or(GeometryError::NotPositiveDefinite)?;
            Ok(Ellipsoid::new(symmetrize(shape))?)
        }
    }
}

/// Minimum-volume centered ellipsoid containing the symmetric point set
/// `{+-p_i}`, via the Khachiyan/Todd Frank-Wolfe iteration with away
/// steps on design weights.  The returned ellipsoid always contains the
/// points (the shape is rescaled by the worst residual before returning).
pub fn mvee_symmetric_points(points: &[DVector<f64>]) -> Result<Ellipsoid, JacobianError> {
    let k = points[0].len();
    let m = points.len();
    let kf = k as f64;
    let mut u = vec![1.0 / m as f64; m];

    let design = |u: &[f64]| -> DMatrix<f64> {
        let mut s = DMatrix::zeros(k, k);
        for (j, p) in points.iter().enumerate() {
            if u[j] > 0.0 {
                s += p * p.transpose() * u[j];
            }
        }
        s
    };

    let mut result = None;
    for _ in 0..JOHN_MAX_ITERS {
        let mu = design(&u);
        let inv = match mu.clone().try_inverse() {
            Some(i) => i,
            None => return Err(GeometryError::NotPositiveDefinite.into()),
        };
        let kappa: Vec<f64> = points.iter().map(|p| p.dot(&(&inv * p))).collect();
        let (j_plus, &k_plus) = kappa
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let (j_minus, &k_minus) = kappa
            .iter()
            .enumerate()
            .filter(|(j, _)| u[*j] > 0.0)
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();

        let gap = (k_plus / kf - 1.0).max(1.0 - k_minus / kf);
        if k_plus / kf - 1.0 <= JOHN_TOL && 1.0 - k_minus / kf <= JOHN_TOL {
            result = Some((mu, k_plus));
            break;
        }
        result = Some((mu, k_plus));

        if k_plus / kf - 1.0 >= 1.0 - k_minus / kf {
            // add step towards the most-violating point
            let beta = (k_plus - kf) / (kf * (k_plus - 1.0));
            for w in u.iter_mut() {
                *w *= 1.0 - beta;
            }
            u[j_plus] += beta;
        } else {
            // away step from the least-useful support point; for
            // kappa <= 1 the unconstrained minimizer drops it entirely
            let drop_all = -u[j_minus] / (1.0 - u[j_minus]).max(1e-300);
            let beta = if k_minus > 1.0 {
                ((k_minus - kf) / (kf * (k_minus - 1.0))).max(drop_all)
            } else {
                drop_all
            };
            for w in u.iter_mut() {
                *w *= 1.0 - beta;
            }
            u[j_minus] += beta;
            if u[j_minus] < 1e-300 {
                u[j_minus] = 0.0;
            }
        }
        let _ = gap;
    }

    let (mu, k_plus) = result.unwrap();
    // shape kappa_max * M_u^-1 -> all points satisfy y^T P y <= 1
    let inv = mu
        .try_inverse()
        .ok_or(GeometryError::NotPositiveDefinite)?;
    let shape = symmetrize(inv / k_plus.max(kf));
    let ell = Ellipsoid::new(shape)?;
    let gap = k_plus / kf - 1.0;
    if gap > 1e-8 {
        return Err(JacobianError::NonConvergence { best: ell, gap });
    }
    Ok(ell)
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) / 2.0
}

/// Inscribed-Riemannian Jacobian `omega_k / vol(J(B_sigma))`; 0 on
/// degenerate seminorms.
pub fn jac_inscribed_riemannian(sigma: &Seminorm) -> Result<f64, JacobianError> {
    if sigma.is_degenerate() {
        return Ok(0.0);
    }
    if let Some(j) = quadratic_jacobian(sigma) {
        return Ok(j);
    }
    let ball = sigma.unit_ball()?;
    let john = john_ellipsoid(&ball)?;
    Ok(unit_ball_volume(sigma.domain_dim()) / john.volume())
}

/// Evaluate the requested Jacobian.
pub fn jacobian(sigma: &Seminorm, kind: JacobianKind) -> Result<f64, JacobianError> {
    match kind {
        JacobianKind::Busemann => jac_busemann(sigma),
        JacobianKind::MassStar => jac_mass_star(sigma),
        JacobianKind::InscribedRiemannian => jac_inscribed_riemannian(sigma),
    }
}

/// Vertex generators of the dual unit ball of a seminorm: either an
/// explicit finite vertex list (polytopal ball) or an ellipsoid factor
/// `M^(1/2)` whose image of the Euclidean sphere is the dual boundary.
enum DualBall {
    Vertices(Vec<DVector<f64>>),
    EllipsoidFactor(DMatrix<f64>),
}

fn dual_ball(sigma: &Seminorm) -> Result<DualBall, JacobianError> {
    match sigma.unit_ball()? {
        UnitBall::Polytope(p) => Ok(DualBall::Vertices(p.facets)),
        UnitBall::Ellipsoid(e) => {
            let eig = e.shape.clone().symmetric_eigen();
            let sqrt_vals = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
            let factor =
                &eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose();
            Ok(DualBall::EllipsoidFactor(factor))
        }
    }
}

/// `Jac^ir` of the l2-product seminorm
/// `(sigma1 x sigma2)(v1, v2) = sqrt(sigma1(v1)^2 + sigma2(v2)^2)`.
///
/// Quadratic x quadratic products are closed-form (the product ball is an
/// ellipsoid); all other combinations go through the polar: the John
/// ellipsoid is the polar of the minimum-volume ellipsoid around the
/// product dual ball, computed by lazy extreme-point generation.  The
/// quadratic-maximization oracle over the product dual ball reduces to a
/// largest-eigenvalue problem per dual-vertex pair.
pub fn jac_ir_l2_product(s1: &Seminorm, s2: &Seminorm) -> Result<f64, JacobianError> {
    if s1.is_degenerate() || s2.is_degenerate() {
        return Ok(0.0);
    }
    if let (Some(m1), Some(m2)) = (s1.quadratic_shape(), s2.quadratic_shape()) {
        // product ball is the ellipsoid with block-diagonal shape
        return Ok((m1.determinant() * m2.determinant()).sqrt());
    }
    let k1 = s1.domain_dim();
    let k2 = s2.domain_dim();
    let k = k1 + k2;
    let d1 = dual_ball(s1)?;
    let d2 = dual_ball(s2)?;

    // seed point set: each factor's dual ball embedded in its block
    let embed1 = |a: &DVector<f64>| {
        let mut x = DVector::zeros(k);
        x.rows_mut(0, k1).copy_from(a);
        x
    };
    let embed2 = |b: &DVector<f64>| {
        let mut x = DVector::zeros(k);
        x.rows_mut(k1, k2).copy_from(b);
        x
    };
    let mut points: Vec<DVector<f64>> = Vec::new();
    let seed_block = |d: &DualBall, embed: &dyn Fn(&DVector<f64>) -> DVector<f64>,
                      points: &mut Vec<DVector<f64>>| {
        match d {
            DualBall::Vertices(vs) => {
                for v in vs {
                    points.push(embed(v));
                }
            }
            DualBall::EllipsoidFactor(f) => {
                for c in 0..f.ncols() {
                    points.push(embed(&f.column(c).into_owned()));
                }
            }
        }
    };
    seed_block(&d1, &embed1, &mut points);
    seed_block(&d2, &embed2, &mut points);

    // lazy cutting-plane loop: grow the support set with the extreme
    // point of the product dual ball most violating the current MVEE
    let mut mvee = mvee_symmetric_points(&points)?;
    for _ in 0..500 {
        let (violation, worst) = product_oracle(&d1, &d2, k1, k2, &mvee.shape);
        if violation <= 1.0 + 1e-10 {
            // Jac^ir = omega_k / vol(polar of MVEE) = 1 / sqrt(det P)
            return Ok(1.0 / mvee.shape.determinant().sqrt());
        }
        points.push(worst);
        mvee = mvee_symmetric_points(&points)?;
    }
    Err(JacobianError::Unsupported(
        "product John solver failed to converge".into(),
    ))
}

/// Maximize `x^T P x` over the product dual ball
/// `{(xi, eta): s1*(xi)^2 + s2*(eta)^2 <= 1}`.  Extreme points have the
/// form `(cos t * a, sin t * b)` with `a`, `b` on the factor dual
/// boundaries; for fixed `(a, b)` the maximum over `t` is the largest
/// eigenvalue of a reduced symmetric matrix, and ellipsoidal factors
/// absorb their `M^(1/2)` into the reduction.
fn product_oracle(
    d1: &DualBall,
    d2: &DualBall,
    k1: usize,
    k2: usize,
    p: &DMatrix<f64>,
) -> (f64, DVector<f64>) {
    let p11 = p.view((0, 0), (k1, k1)).into_owned();
    let p12 = p.view((0, k1), (k1, k2)).into_owned();
    let p22 = p.view((k1, k1), (k2, k2)).into_owned();

    let mut best = (f64::NEG_INFINITY, DVector::zeros(k1 + k2));
    let mut consider = |reduced: DMatrix<f64>, lift: &dyn Fn(&DVector<f64>) -> DVector<f64>| {
        let eig = reduced.symmetric_eigen();
        let (idx, &val) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        if val > best.0 {
            let z = eig.eigenvectors.column(idx).into_owned();
            best = (val, lift(&z));
        }
    };

    match (d1, d2) {
        (DualBall::Vertices(v1), DualBall::Vertices(v2)) => {
            for a in v1 {
                for b in v2 {
                    let aa = a.dot(&(&p11 * a));
                    let bb = b.dot(&(&p22 * b));
                    let ab = a.dot(&(&p12 * b));
                    let reduced = DMatrix::from_row_slice(2, 2, &[aa, ab, ab, bb]);
                    let a = a.clone();
                    let b = b.clone();
                    consider(reduced, &move |z: &DVector<f64>| {
                        let mut x = DVector::zeros(k1 + k2);
                        x.rows_mut(0, k1).copy_from(&(&a * z[0]));
                        x.rows_mut(k1, k2).copy_from(&(&b * z[1]));
                        x
                    });
                }
            }
        }
        (DualBall::Vertices(v1), DualBall::EllipsoidFactor(f2)) => {
            for a in v1 {
                // z = (c, y) with |z| = 1, x = (c a, f2 y)
                let aa = a.dot(&(&p11 * a));
                let cross = f2.transpose() * p12.transpose() * a;
                let block = f2.transpose() * &p22 * f2;
                let mut reduced = DMatrix::zeros(1 + k2, 1 + k2);
                reduced[(0, 0)] = aa;
                for i in 0..k2 {
                    reduced[(0, 1 + i)] = cross[i];
                    reduced[(1 + i, 0)] = cross[i];
                    for j in 0..k2 {
                        reduced[(1 + i, 1 + j)] = block[(i, j)];
                    }
                }
                let a = a.clone();
                let f2 = f2.clone();
                consider(reduced, &move |z: &DVector<f64>| {
                    let mut x = DVector::zeros(k1 + k2);
                    x.rows_mut(0, k1).copy_from(&(&a * z[0]));
                    x.rows_mut(k1, k2)
                        .copy_from(&(&f2 * z.rows(1, k2).into_owned()));
                    x
                });
            }
        }
        (DualBall::EllipsoidFactor(f1), DualBall::Vertices(v2)) => {
            for b in v2 {
                let bb = b.dot(&(&p22 * b));
                let cross = f1.transpose() * &p12 * b;
                let block = f1.transpose() * &p11 * f1;
                let mut reduced = DMatrix::zeros(k1 + 1, k1 + 1);
                for i in 0..k1 {
                    for j in 0..k1 {
                        reduced[(i, j)] = block[(i, j)];
                    }
                    reduced[(i, k1)] = cross[i];
                    reduced[(k1, i)] = cross[i];
                }
                reduced[(k1, k1)] = bb;
                let b = b.clone();
                let f1 = f1.clone();
                consider(reduced, &move |z: &DVector<f64>| {
                    let mut x = DVector::zeros(k1 + k2);
                    x.rows_mut(0, k1)
                        .copy_from(&(&f1 * z.rows(0, k1).into_owned()));
                    x.rows_mut(k1, k2).copy_from(&(b.clone() * z[k1]));
                    x
                });
            }
        }
        (DualBall::EllipsoidFactor(f1), DualBall::EllipsoidFactor(f2)) => {
            // whole product dual ball is an ellipsoid; single eigenproblem
            let mut f = DMatrix::zeros(k1 + k2, k1 + k2);
            f.view_mut((0, 0), (k1, k1)).copy_from(f1);
            f.view_mut((k1, k1), (k2, k2)).copy_from(f2);
            let reduced = f.transpose() * p * &f;
            consider(symmetrize(reduced), &move |z: &DVector<f64>| &f * z);
        }
    }
    best
}
