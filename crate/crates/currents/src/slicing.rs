//! Slicing polyhedral currents by affine projections: the slice operator,
//! the Fubini mass identity, push-forward commutation, and the
//! characteristic-set consistency check.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::current::{CurrentError, PolyhedralCurrent};
use crate::geometry::Point;
use crate::jacobian::JacobianKind;

#[derive(Debug, Error)]
pub enum SliceError {
    #[error("projection rows are not orthonormal")]
    NotOrthonormal,
    #[error("slice parameter {level} hits a vertex image (within {tol:.1e})")]
    DegenerateLevel { level: f64, tol: f64 },
    #[error("projection target dimension {m} exceeds current dimension {k}")]
    TooManyAxes { m: usize, k: usize },
    #[error(transparent)]
    Current(#[from] CurrentError),
}

/// Orthogonal projection onto an m-plane, identified with `R^m` via the
/// orthonormal rows of the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub matrix: DMatrix<f64>,
}

impl Projection {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self, SliceError> {
        let g = &matrix * matrix.transpose();
        if (&g - DMatrix::identity(g.nrows(), g.ncols())).norm() > 1e-12 * g.nrows() as f64 {
            return Err(SliceError::NotOrthonormal);
        }
        Ok(Self { matrix })
    }

    /// Projection onto one coordinate axis of `R^n`.
    pub fn axis(n: usize, i: usize) -> Self {
        let mut m = DMatrix::zeros(1, n);
        m[(0, i)] = 1.0;
        Self { matrix: m }
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, p: &Point) -> DVector<f64> {
        &self.matrix * p
    }
}

const LEVEL_TOL: f64 = 1e-12;

fn check_regular_level(
    t: &PolyhedralCurrent,
    g: &dyn Fn(&Point) -> f64,
    level: f64,
) -> Result<(), SliceError> {
    let mut scale = 1.0_f64;
    for c in &t.cells {
        for v in &c.simplex.vertices {
            scale = scale.max(g(v).abs());
        }
    }
    let tol = LEVEL_TOL * scale.max(1.0);
    for c in &t.cells {
        for v in &c.simplex.vertices {
            if (g(v) - level).abs() < tol {
                return Err(SliceError::DegenerateLevel { level, tol });
            }
        }
    }
    Ok(())
}

/// Codimension-one slice of `T` along a scalar function `g`, affine on
/// every cell of `T` and of `boundary(T)`:
/// `<T, g, p> = boundary(T restricted to {g <= p}) - boundary(T)
/// restricted to {g <= p}`.  Everything away from the level set cancels,
/// so the result is carried by `{g = p}`.  With this convention
/// `boundary(<T, g, p>) = -<boundary(T), g, p>`.
pub fn slice_by_function(
    t: &PolyhedralCurrent,
    g: &dyn Fn(&Point) -> f64,
    level: f64,
    scale: f64,
) -> Result<PolyhedralCurrent, SliceError> {
    check_regular_level(t, g, level)?;
    let restricted = t.restrict_by_values(g, level, scale);
    let part1 = restricted.boundary();
    let part2 = t.boundary().restrict_by_values(g, level, scale);
    Ok(part1.add(&part2.negated())?)
}

/// Slice by an orthogonal projection at parameter `p` (one value per
/// projection row); `m > 1` is iterated codimension-one slicing.
pub fn slice(
    t: &PolyhedralCurrent,
    rho: &Projection,
    p: &[f64],
) -> Result<PolyhedralCurrent, SliceError> {
    let m = rho.rows();
    assert_eq!(p.len(), m);
    if m > t.k {
        return Err(SliceError::TooManyAxes { m, k: t.k });
    }
    let mut cur = t.clone();
    for i in 0..m {
        let row = rho.matrix.row(i).transpose();
        let g = move |x: &Point| row.dot(x);
        cur = slice_by_function(&cur, &g, p[i], 1.0)?;
    }
    Ok(cur)
}

/// Largest distance from a support point of `s` to the affine level set
/// `{g = level}` (gradient norm `scale`); used to verify slices are
/// carried by the level set.
pub fn support_deviation(
    s: &PolyhedralCurrent,
    g: &dyn Fn(&Point) -> f64,
    level: f64,
    scale: f64,
) -> f64 {
    let mut worst = 0.0_f64;
    for c in &s.cells {
        for v in &c.simplex.vertices {
            worst = worst.max((g(v) - level).abs() / scale);
        }
    }
    worst
}

/// Report of the Fubini mass identity for a codimension-one projection.
#[derive(Debug, Clone)]
pub struct FubiniReport {
    pub integral_of_slice_mass: f64,
    pub restricted_mass: f64,
    pub gap: f64,
    pub total_mass: f64,
    /// slicing inequality: integral <= (Lip rho) * M(T)
    pub inequality_holds: bool,
}

/// Gauss-Legendre nodes and weights on [-1, 1] via the Golub-Welsch
/// eigenvalue method.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::zeros(n, n);
    for i in 1..n {
        let b = i as f64 / ((4.0 * (i as f64).powi(2) - 1.0).sqrt());
        j[(i - 1, i)] = b;
        j[(i, i - 1)] = b;
    }
    let eig = j.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let w = 2.0 * eig.eigenvectors[(0, i)].powi(2);
            (node, w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

/// Sorted distinct vertex values of `g` over the cells of `t`.
fn breakpoints(t: &PolyhedralCurrent, g: &dyn Fn(&Point) -> f64) -> Vec<f64> {
    let mut vals: Vec<f64> = t
        .cells
        .iter()
        .flat_map(|c| c.simplex.vertices.iter().map(g))
        .collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    vals
}

/// Integrate `p -> f(p)` exactly over the breakpoint partition, assuming
/// `f` is piecewise polynomial of degree < 16 between breakpoints.
fn integrate_piecewise(
    bks: &[f64],
    f: &mut dyn FnMut(f64) -> Result<f64, SliceError>,
) -> Result<f64, SliceError> {
    let (nodes, weights) = gauss_legendre(8);
    let mut total = 0.0;
    for w in bks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 1e-12 {
            continue;
        }
        let mid = (a + b) / 2.0;
        let half = (b - a) / 2.0;
        for (x, wt) in nodes.iter().zip(&weights) {
            total += wt * half * f(mid + half * x)?;
        }
    }
    Ok(total)
}

/// Verify the Fubini mass identity
/// `integral of M(<T, rho, p>) dp = M(T restricted to (1, rho))`
/// for a one-row projection, with exact piecewise-polynomial integration
/// between vertex-image breakpoints.  The restricted mass weights each
/// cell's mass by the tangential component of the projection direction.
pub fn verify_mass_fubini(
    t: &PolyhedralCurrent,
    rho: &Projection,
) -> Result<FubiniReport, SliceError> {
    assert_eq!(rho.rows(), 1);
    let row = rho.matrix.row(0).transpose();
    let g = |x: &Point| row.dot(x);
    let bks = breakpoints(t, &g);
    let kind = JacobianKind::MassStar;

    let integral = integrate_piecewise(&bks, &mut |p| {
        let s = slice_by_function(t, &g, p, 1.0)?;
        Ok(s.total_mass(kind)?)
    })?;

    // weight: norm of the projection of the slicing direction onto the
    // cell's tangent plane (exact coarea factor for affine cells)
    let mut restricted = 0.0;
    for c in &t.cells {
        let e = c.simplex.edge_matrix();
        let gram = e.transpose() * &e;
        let inv = gram
            .try_inverse()
            .ok_or(CurrentError::ZeroMultiplicity);
        let tangential = match inv {
            Ok(gi) => (&e * gi * e.transpose() * &row).norm(),
            Err(_) => 0.0,
        };
        restricted += t.cell_mass(c, kind)? * tangential;
    }

    let total = t.total_mass(kind)?;
    Ok(FubiniReport {
        integral_of_slice_mass: integral,
        restricted_mass: restricted,
        gap: (integral - restricted).abs(),
        total_mass: total,
        inequality_holds: integral <= total + 1e-9,
    })
}

/// Report of the slice/push-forward commutation check.
#[derive(Debug, Clone)]
pub struct CommutationReport {
    pub levels_checked: usize,
    pub max_difference_mass: f64,
}

/// Compare `f_# <T, rho compose f, p>` with `<f_# T, rho, p>` at the
/// supplied regular levels.  `f` must be affine on every cell of `T` and
/// of its boundary.
pub fn verify_slice_pushforward_commute(
    t: &PolyhedralCurrent,
    image_ambient: crate::current::NormedAmbient,
    f: &dyn Fn(&Point) -> Point,
    rho: &Projection,
    levels: &[f64],
) -> Result<CommutationReport, SliceError> {
    assert_eq!(rho.rows(), 1);
    let row = rho.matrix.row(0).transpose();
    let ft = t.push_forward(image_ambient.clone(), f)?;
    let mut worst = 0.0_f64;
    let mut checked = 0;
    for &p in levels {
        let pulled = |x: &Point| row.dot(&f(x));
        let lhs_base = match slice_by_function(t, &pulled, p, 1.0) {
            Ok(s) => s,
            Err(SliceError::DegenerateLevel { .. }) => continue,
            Err(e) => return Err(e),
        };
        let lhs = lhs_base.push_forward(image_ambient.clone(), f)?;
        let g = |x: &Point| row.dot(x);
        let rhs = match slice_by_function(&ft, &g, p, 1.0) {
            Ok(s) => s,
            Err(SliceError::DegenerateLevel { .. }) => continue,
            Err(e) => return Err(e),
        };
        let diff = lhs.add(&rhs.negated())?;
        worst = worst.max(diff.total_mass(JacobianKind::MassStar)?);
        checked += 1;
    }
    Ok(CommutationReport {
        levels_checked: checked,
        max_difference_mass: worst,
    })
}

/// Report of the slice vs characteristic-set comparison.
#[derive(Debug, Clone)]
pub struct CharacteristicSliceReport {
    pub levels_checked: usize,
    /// max over levels of | unsigned slice measure - cut measure |
    pub max_measure_gap: f64,
    /// max distance of a slice vertex from every characteristic cut
    pub max_containment_gap: f64,
}

/// For sampled regular levels, check that the slice cells coincide with
/// the geometric cuts of the characteristic set by the level hyperplane.
pub fn slice_characteristic_consistency(
    t: &PolyhedralCurrent,
    rho: &Projection,
    levels: &[f64],
) -> Result<CharacteristicSliceReport, SliceError> {
    assert_eq!(rho.rows(), 1);
    let row = rho.matrix.row(0).transpose();
    let g = |x: &Point| row.dot(x);
    let mut max_measure_gap = 0.0_f64;
    let mut max_containment = 0.0_f64;
    let mut checked = 0;
    for &p in levels {
        let s = match slice_by_function(t, &g, p, 1.0) {
            Ok(s) => s,
            Err(SliceError::DegenerateLevel { .. }) => continue,
            Err(e) => return Err(e),
        };
        // unsigned slice measure: sum of |mult| * cell measure
        let mut slice_measure = 0.0;
        for c in &s.cells {
            slice_measure += c.multiplicity.unsigned_abs() as f64 * c.simplex.volume();
        }
        // geometric cuts: slice each characteristic simplex with
        // multiplicity one, unsigned
        let mut cut_measure = 0.0;
        let mut cuts: Vec<crate::geometry::Simplex> = Vec::new();
        for cell in &t.cells {
            let single = PolyhedralCurrent::new(
                t.ambient.clone(),
                t.k,
                vec![crate::current::Cell {
                    simplex: cell.simplex.clone(),
                    multiplicity: 1,
                }],
            )?;
            let cut = slice_by_function(&single, &g, p, 1.0)?;
            for c in &cut.cells {
                cut_measure += cell.multiplicity.unsigned_abs() as f64 * c.simplex.volume();
                cuts.push(c.simplex.clone());
            }
        }
        max_measure_gap = max_measure_gap.max((slice_measure - cut_measure).abs());
        // containment: every slice vertex lies in some cut simplex
        for c in &s.cells {
            for v in &c.simplex.vertices {
                let d = cuts
                    .iter()
                    .map(|cut| distance_to_simplex(v, cut))
                    .fold(f64::INFINITY, f64::min);
                max_containment = max_containment.max(d);
            }
        }
        checked += 1;
    }
    Ok(CharacteristicSliceReport {
        levels_checked: checked,
        max_measure_gap,
        max_containment_gap: max_containment,
    })
}

/// Euclidean distance from a point to a simplex, by projection onto its
/// affine hull followed by a coarse barycentric clamp (adequate for the
/// containment checks, where the true distance is ~0).
fn distance_to_simplex(x: &Point, s: &crate::geometry::Simplex) -> f64 {
    let e = s.edge_matrix();
    let d = x - &s.vertices[0];
    if s.dim() == 0 {
        return d.norm();
    }
    let gram = e.transpose() * &e;
    let coeff = match gram.try_inverse() {
        Some(gi) => gi * e.transpose() * &d,
        None => return f64::INFINITY,
    };
    let inside = coeff.iter().all(|&c| c >= -1e-9)
        && coeff.iter().sum::<f64>() <= 1.0 + 1e-9;
    let proj = &e * &coeff;
    let ortho = (&d - proj).norm();
    if inside {
        ortho
    } else {
        // fall back to vertex distance; good enough as an upper bound
        s.vertices
            .iter()
            .map(|v| (x - v).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Evaluate the discretized universal property: with `psi` piecewise
/// linear (breakpoints and values), compare the slice-average
/// `integral of <T, rho, p>(h, pi) psi(p) dp` with the direct evaluation
/// `T((psi compose rho) * h, (rho, pi))`.
pub fn universal_property_gap(
    t: &PolyhedralCurrent,
    rho: &Projection,
    psi_breaks: &[f64],
    psi_vals: &[f64],
    a: &DVector<f64>,
    c: f64,
    pi: &DMatrix<f64>,
) -> Result<f64, SliceError> {
    assert_eq!(rho.rows(), 1);
    assert_eq!(psi_breaks.len(), psi_vals.len());
    let row = rho.matrix.row(0).transpose();
    let g = |x: &Point| row.dot(x);
    let psi = |p: f64| -> f64 {
        if p <= psi_breaks[0] || p >= *psi_breaks.last().unwrap() {
            return 0.0;
        }
        let i = psi_breaks.partition_point(|&b| b <= p) - 1;
        let t01 = (p - psi_breaks[i]) / (psi_breaks[i + 1] - psi_breaks[i]);
        psi_vals[i] * (1.0 - t01) + psi_vals[i + 1] * t01
    };

    // left side: exact piecewise integration (integrand polynomial per
    // interval of the joint breakpoints)
    let mut bks = breakpoints(t, &g);
    bks.extend_from_slice(psi_breaks);
    bks.sort_by(|x, y| x.partial_cmp(y).unwrap());
    bks.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let lhs = integrate_piecewise(&bks, &mut |p| {
        let s = slice_by_function(t, &g, p, 1.0)?;
        Ok(s.evaluate_affine(a, c, pi) * psi(p))
    })?;

    // right side: T((psi . rho) h, (rho; pi)) with cells split at psi's
    // breakpoints so psi . rho is affine per piece
    let mut stacked = DMatrix::zeros(pi.nrows() + 1, pi.ncols());
    stacked.row_mut(0).copy_from(&rho.matrix.row(0));
    for i in 0..pi.nrows() {
        stacked.row_mut(i + 1).copy_from(&pi.row(i));
    }
    let mut rhs = 0.0;
    for w in psi_breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // piece of T with lo <= g <= hi
        let piece = t
            .restrict_by_values(&g, hi, 1.0)
            .restrict_by_values(|x: &Point| -g(x), -lo, 1.0);
        if piece.is_zero() {
            continue;
        }
        // psi on [lo, hi]: affine in g(x)
        let i = psi_breaks.iter().position(|&b| b == lo).unwrap();
        let slope = (psi_vals[i + 1] - psi_vals[i]) / (hi - lo);
        let psi_a = &row * slope;
        let psi_c = psi_vals[i] - slope * lo;
        rhs += piece.evaluate_affine_product(&psi_a, psi_c, a, c, &stacked);
    }
    Ok((lhs - rhs).abs())
}
