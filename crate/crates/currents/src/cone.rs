//! Euclidean cone metric, cone currents via charts, and the exact coning
//! mass identity M^ir(CT) = M^ir(T)/(k+1).

use nalgebra::DVector;
use thiserror::Error;

use crate::current::{Cell, CurrentError, NormedAmbient, PolyhedralCurrent};
use crate::geometry::Simplex;
use crate::jacobian::JacobianKind;
use crate::seminorm::Seminorm;

#[derive(Debug, Error)]
pub enum ConeError {
    #[error("current error: {0}")]
    Current(#[from] CurrentError),
    #[error("jacobian error: {0}")]
    Jacobian(#[from] crate::jacobian::JacobianError),
    #[error("geometry error: {0}")]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// A point of the cone CX = X x [0,1] / (X x {0}); all points with r = 0
/// are the apex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePoint {
    pub base: usize,
    pub r: f64,
}

impl ConePoint {
    pub fn apex() -> Self {
        Self { base: 0, r: 0.0 }
    }
    pub fn is_apex(&self) -> bool {
        self.r == 0.0
    }
}

/// Distance on the cone: law of cosines below base distance pi, the
/// two-radii path through the apex beyond.
pub fn cone_distance(d_base: f64, r: f64, s: f64) -> f64 {
    assert!(d_base >= 0.0 && (0.0..=1.0).contains(&r) && (0.0..=1.0).contains(&s));
    if d_base < std::f64::consts::PI {
        (r * r + s * s - 2.0 * r * s * d_base.cos()).max(0.0).sqrt()
    } else {
        r + s
    }
}

/// Lifted chart of a cone over a base chart with metric differential
/// `base_md`: at radius r the differential of (x, r) -> [(phi(x), r)] is
/// (v, s) -> sqrt(r^2 md(v)^2 + s^2).
#[derive(Debug, Clone)]
pub struct ConeChart {
    pub base_md: Seminorm,
}

impl ConeChart {
    pub fn lifted_md(&self, r: f64, v: &DVector<f64>, s: f64) -> f64 {
        let m = self.base_md.evaluate(v).expect("dimension mismatch");
        (r * r * m * m + s * s).sqrt()
    }
}

fn lift(p: &DVector<f64>) -> DVector<f64> {
    let mut q = DVector::zeros(p.len() + 1);
    q.rows_mut(0, p.len()).copy_from(p);
    q[p.len()] = 1.0;
    q
}

/// The cone current as a chart complex: each base k-cell [v0..vk] becomes
/// the (k+1)-cell [v0~..vk~, apex] in the parameter space R^{n+1}, where
/// vi~ = (vi, 1) and the apex is the origin.  The parameter ambient is
/// Euclidean bookkeeping only; cone masses are computed by the factorized
/// formula, not from this embedding.
pub fn cone_current(t: &PolyhedralCurrent) -> Result<PolyhedralCurrent, ConeError> {
    let n = t.ambient.dim;
    let apex = DVector::zeros(n + 1);
    let mut cells = Vec::new();
    for c in &t.cells {
        let mut verts: Vec<DVector<f64>> = c.simplex.vertices.iter().map(lift).collect();
        verts.push(apex.clone());
        cells.push(Cell {
            simplex: Simplex::new(verts, c.simplex.orientation)?,
            multiplicity: c.multiplicity,
        });
    }
    Ok(PolyhedralCurrent::new(
        NormedAmbient::euclidean(n + 1),
        t.k + 1,
        cells,
    )?)
}

/// The end copy e_# T at radius 1, carried into the parameter space with
/// the orientation sign (-1)^{k+1} so that the chain identity
/// `boundary(CT) = C(boundary T) + e_# T` holds for every k.
pub fn end_copy(t: &PolyhedralCurrent) -> Result<PolyhedralCurrent, ConeError> {
    let n = t.ambient.dim;
    let sign = if t.k % 2 == 0 { -1 } else { 1 };
    let mut cells = Vec::new();
    for c in &t.cells {
        let verts: Vec<DVector<f64>> = c.simplex.vertices.iter().map(lift).collect();
        cells.push(Cell {
            simplex: Simplex::new(verts, c.simplex.orientation)?,
            multiplicity: sign * c.multiplicity,
        });
    }
    Ok(PolyhedralCurrent::new(
        NormedAmbient::euclidean(n + 1),
        t.k,
        cells,
    )?)
}

/// Split boundary(CT) into the cone over the boundary and the end copy;
/// the chain-level identity is asserted before returning.
pub fn cone_boundary_decomposition(
    t: &PolyhedralCurrent,
) -> Result<(PolyhedralCurrent, PolyhedralCurrent), ConeError> {
    let cone_of_boundary = if t.k == 0 {
        // the boundary of a coned point is [apex] - [point~]: the apex
        // carries the total multiplicity
        let total: i64 = t
            .cells
            .iter()
            .map(|c| c.multiplicity * c.simplex.orientation as i64)
            .sum();
        let apex = DVector::zeros(t.ambient.dim + 1);
        let cells = if total == 0 {
            vec![]
        } else {
            vec![Cell {
                simplex: Simplex::new(vec![apex], 1)?,
                multiplicity: total,
            }]
        };
        PolyhedralCurrent::new(NormedAmbient::euclidean(t.ambient.dim + 1), 0, cells)?
    } else {
        cone_current(&t.boundary())?
    };
    let end = end_copy(t)?;
    let lhs = cone_current(t)?.boundary();
    let rhs = cone_of_boundary.add(&end)?;
    debug_assert!(lhs.add(&rhs.negated()).map(|d| d.is_zero()).unwrap_or(false));
    Ok((cone_of_boundary, end))
}

/// M^ir of the cone current by the chart factorization
/// Jac^ir(lifted md at radius r) = r^k Jac^ir(base md): the r-integral
/// int_0^1 r^k dr = 1/(k+1) is exact, so the cone mass is the per-cell
/// ir-mass summed and divided by k+1.
pub fn cone_mass_ir(t: &PolyhedralCurrent) -> Result<f64, ConeError> {
    let mut total = 0.0;
    for c in &t.cells {
        total += t.cell_mass(c, JacobianKind::InscribedRiemannian)?;
    }
    Ok(total / (t.k + 1) as f64)
}

/// Masses of a base current and its cone, plus their ratio.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConeMassReport {
    pub k: usize,
    pub base_mass_ir: f64,
    pub cone_mass_ir: f64,
    pub ratio: f64,
}

pub fn cone_mass_report(t: &PolyhedralCurrent) -> Result<ConeMassReport, ConeError> {
    let base = t.total_mass(JacobianKind::InscribedRiemannian)?;
    let cone = cone_mass_ir(t)?;
    Ok(ConeMassReport {
        k: t.k,
        base_mass_ir: base,
        cone_mass_ir: cone,
        ratio: if base > 0.0 { cone / base } else { 0.0 },
    })
}

/// The regular m-gon boundary curve inscribed in the unit circle.
pub fn regular_polygon_current(m: usize) -> PolyhedralCurrent {
    let pts: Vec<DVector<f64>> = (0..m)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
            crate::geometry::pt(&[a.cos(), a.sin()])
        })
        .collect();
    crate::current::curve_current(NormedAmbient::euclidean(2), &pts, true).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::current::{curve_current, unit_square_current};
    use crate::geometry::pt;
    use crate::jacobian::jac_ir_l2_product;
    use crate::seminorm::AmbientNorm;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn cone_distance_values() {
        assert!((cone_distance(PI / 2.0, 1.0, 1.0) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(cone_distance(2.3, 0.7, 0.0), 0.7);
        assert_eq!(cone_distance(4.0, 0.5, 0.5), 1.0);
    }

    #[test]
    fn cone_over_circle_is_flat_disk() {
        // angular distances on S^1 give chord distances in B^2
        for &(a, b) in &[(0.0f64, 1.0f64), (0.3, 2.5), (1.0, 3.0)] {
            let d = a - b;
            let d = d.abs().min(2.0 * PI - d.abs());
            let p = [a.cos(), a.sin()];
            let q = [b.cos(), b.sin()];
            let chord = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
            assert!((cone_distance(d, 1.0, 1.0) - chord).abs() < 1e-12);
        }
    }

    #[test]
    fn metric_axioms_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            // random three points on the circle with angular base metric
            let a: [f64; 3] = [rng.gen_range(0.0..2.0 * PI); 3].map(|_| rng.gen_range(0.0..2.0 * PI));
            let r: [f64; 3] = [0.0; 3].map(|_| rng.gen_range(0.0..1.0_f64));
            let d = |i: usize, j: usize| {
                let x = (a[i] - a[j]).abs();
                x.min(2.0 * PI - x)
            };
            let dij = cone_distance(d(0, 1), r[0], r[1]);
            let djk = cone_distance(d(1, 2), r[1], r[2]);
            let dik = cone_distance(d(0, 2), r[0], r[2]);
            assert!(dik <= dij + djk + 1e-9);
            assert!((cone_distance(d(0, 1), r[1], r[0]) - dij).abs() < 1e-15);
        }
    }

    #[test]
    fn end_map_is_one_lipschitz_and_functorial() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..2000 {
            let d = rng.gen_range(0.0..6.0);
            assert!(cone_distance(d, 1.0, 1.0) <= d + 1e-12);
            // monotone in the base distance: 1-Lipschitz base maps induce
            // 1-Lipschitz cone maps
            let d2 = rng.gen_range(0.0..d.max(1e-9));
            let r = rng.gen_range(0.0..1.0);
            let s = rng.gen_range(0.0..1.0);
            assert!(cone_distance(d2, r, s) <= cone_distance(d, r, s) + 1e-12);
        }
    }

    #[test]
    fn lifted_chart_matches_finite_differences() {
        // md of the cone chart vs numerical differentiation of the metric
        let sigma = Seminorm::new(
            nalgebra::dmatrix![1.0, 0.4; 0.0, 0.9],
            AmbientNorm::Euclidean,
        )
        .unwrap();
        let chart = ConeChart {
            base_md: sigma.clone(),
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let r = rng.gen_range(0.2..0.9);
            let v = pt(&[rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            let s = rng.gen_range(-1.0..1.0_f64);
            let t = 1e-5;
            // base distance between x and x + t v is t * md(v) to first order
            let d_base = t * sigma.evaluate(&v).unwrap();
            let fd = cone_distance(d_base, r, (r + t * s).clamp(0.0, 1.0)) / t;
            assert!(
                (fd - chart.lifted_md(r, &v, s)).abs() < 1e-3,
                "fd {fd} vs md {}",
                chart.lifted_md(r, &v, s)
            );
        }
    }

    #[test]
    fn ir_jacobian_factorizes_along_the_cone() {
        // Jac^ir of the lifted seminorm at radius r equals r^k Jac^ir(base)
        let sigma = Seminorm::new(
            nalgebra::dmatrix![1.0, 0.3; -0.2, 1.1],
            AmbientNorm::MaxNorm,
        )
        .unwrap();
        let radial = Seminorm::euclidean(1);
        let base = crate::jacobian::jacobian(&sigma, JacobianKind::InscribedRiemannian).unwrap();
        for &r in &[0.3, 0.7, 1.0] {
            let scaled = Seminorm::new(r * sigma.matrix.clone(), AmbientNorm::MaxNorm).unwrap();
            let lifted = jac_ir_l2_product(&scaled, &radial).unwrap();
            assert!((lifted - r * r * base).abs() < 1e-6 * (1.0 + base));
        }
    }

    #[test]
    fn sixty_four_gon_ratio_half() {
        let t = regular_polygon_current(64);
        let report = cone_mass_report(&t).unwrap();
        let perimeter = 128.0 * (PI / 64.0).sin();
        assert!((report.base_mass_ir - perimeter).abs() < 1e-9);
        assert!((report.cone_mass_ir - perimeter / 2.0).abs() < 1e-9);
        assert!((report.ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn point_square_boundary_and_square_ratios() {
        // k = 0: point of mass 1 -> unit segment
        let p = PolyhedralCurrent::new(
            NormedAmbient::euclidean(2),
            0,
            vec![Cell {
                simplex: Simplex::new(vec![pt(&[0.3, 0.4])], 1).unwrap(),
                multiplicity: 1,
            }],
        )
        .unwrap();
        assert!((cone_mass_ir(&p).unwrap() - 1.0).abs() < 1e-15);
        // k = 1: square boundary, ratio exactly 1/2
        let sq = unit_square_current(AmbientNorm::Euclidean).boundary();
        let rep = cone_mass_report(&sq).unwrap();
        assert!((rep.ratio - 0.5).abs() < 1e-15);
        // k = 2: square sheet, ratio 1/3
        let sheet = unit_square_current(AmbientNorm::Euclidean);
        let rep = cone_mass_report(&sheet).unwrap();
        assert!((rep.ratio - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_decomposition_segment_and_polygon() {
        let seg = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[1.0, 0.0]), pt(&[0.0, 1.0])],
            false,
        )
        .unwrap();
        let (cdt, end) = cone_boundary_decomposition(&seg).unwrap();
        // triangle boundary: two radial edges plus the top edge
        assert_eq!(cdt.cells.len(), 2);
        assert_eq!(end.cells.len(), 1);
        let total = cone_current(&seg).unwrap().boundary();
        assert!(total
            .add(&cdt.add(&end).unwrap().negated())
            .unwrap()
            .is_zero());

        let poly = regular_polygon_current(8);
        let (cdt, end) = cone_boundary_decomposition(&poly).unwrap();
        assert!(cdt.is_zero());
        let total = cone_current(&poly).unwrap().boundary();
        assert!(total.add(&end.negated()).unwrap().is_zero());

        // boundary mass bound M(boundary CT) <= M(C boundary T) + M(T)
        let m_total = total.total_mass(JacobianKind::MassStar).unwrap();
        let m_cdt = cdt.total_mass(JacobianKind::MassStar).unwrap();
        let m_base = poly.total_mass(JacobianKind::MassStar).unwrap();
        assert!(m_total <= m_cdt + m_base + 1e-12);
    }

    #[test]
    fn chain_identity_for_a_2_current() {
        let sheet = unit_square_current(AmbientNorm::Euclidean);
        let (cdt, end) = cone_boundary_decomposition(&sheet).unwrap();
        let total = cone_current(&sheet).unwrap().boundary();
        assert!(total
            .add(&cdt.add(&end).unwrap().negated())
            .unwrap()
            .is_zero());
    }
}
