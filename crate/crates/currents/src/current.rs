//! Polyhedral integral currents with integer multiplicities: boundary,
//! push-forward, restriction, mass measures, and a JSON exchange format.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{clip_simplex_halfspace, factorial, HalfSpace, Point, Simplex};
use crate::jacobian::{jacobian, JacobianError, JacobianKind};
use crate::seminorm::{AmbientNorm, Seminorm};

#[derive(Debug, Error)]
pub enum CurrentError {
    #[error("cell dimension mismatch: expected {expected}, got {got}")]
    CellDimension { expected: usize, got: usize },
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientDimension { expected: usize, got: usize },
    #[error("zero multiplicity cell")]
    ZeroMultiplicity,
    #[error("map is not affine on cell {cell}: centroid deviates by {deviation:.3e}")]
    RefinementRequired { cell: usize, deviation: f64 },
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error("invalid current JSON: {0}")]
    Json(String),
}

/// The ambient normed space a current lives in.
#[derive(Debug, Clone, PartialEq)]
pub struct NormedAmbient {
    pub dim: usize,
    pub norm: AmbientNorm,
}

impl NormedAmbient {
    pub fn euclidean(dim: usize) -> Self {
        Self {
            dim,
            norm: AmbientNorm::Euclidean,
        }
    }

    pub fn max_norm(dim: usize) -> Self {
        Self {
            dim,
            norm: AmbientNorm::MaxNorm,
        }
    }
}

/// One oriented cell with an integer multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub simplex: Simplex,
    pub multiplicity: i64,
}

/// Mass flavor: a Finsler mass by Jacobian kind, or the
/// Ambrosio-Kirchheim mass (equal to the mass*-Finsler mass on this
/// polyhedral class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MassKind {
    Jacobian(JacobianKind),
    AmbrosioKirchheim,
}

impl MassKind {
    pub fn jacobian_kind(self) -> JacobianKind {
        match self {
            MassKind::Jacobian(k) => k,
            MassKind::AmbrosioKirchheim => JacobianKind::MassStar,
        }
    }
}

/// Per-cell and total mass under a chosen mass flavor.
#[derive(Debug, Clone, PartialEq)]
pub struct MassMeasureReport {
    pub total: f64,
    pub per_cell: Vec<f64>,
    pub kind: MassKind,
}

/// A polyhedral current: a finite integer combination of oriented
/// simplices of a common dimension in a normed ambient space.  The cell
/// list is kept canonical: vertices sorted within each cell (orientation
/// folded into the multiplicity sign), cells sorted and merged.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCurrent {
    pub ambient: NormedAmbient,
    pub k: usize,
    pub cells: Vec<Cell>,
}

/// Coordinate quantum for vertex identification during canonicalization.
const SNAP: f64 = 1e-9;

fn quantize(p: &Point) -> Vec<i64> {
    p.iter().map(|c| (c / SNAP).round() as i64).collect()
}

impl PolyhedralCurrent {
    pub fn new(
        ambient: NormedAmbient,
        k: usize,
        cells: Vec<Cell>,
    ) -> Result<Self, CurrentError> {
        for c in &cells {
            if c.simplex.dim() != k {
                return Err(CurrentError::CellDimension {
                    expected: k,
                    got: c.simplex.dim(),
                });
            }
            if c.simplex.ambient_dim() != ambient.dim {
                return Err(CurrentError::AmbientDimension {
                    expected: ambient.dim,
                    got: c.simplex.ambient_dim(),
                });
            }
            if c.multiplicity == 0 {
                return Err(CurrentError::ZeroMultiplicity);
            }
        }
        let mut t = Self { ambient, k, cells };
        t.canonicalize();
        Ok(t)
    }

    pub fn zero(ambient: NormedAmbient, k: usize) -> Self {
        Self {
            ambient,
            k,
            cells: Vec::new(),
        }
    }

    /// Sort each cell's vertices (folding the permutation sign and the
    /// stored orientation into the multiplicity), merge cells with equal
    /// quantized vertex keys, drop zero and degenerate cells, and order
    /// the cell list by key.
    pub fn canonicalize(&mut self) {
        let mut merged: Vec<(Vec<Vec<i64>>, Simplex, i64)> = Vec::new();
        for cell in self.cells.drain(..) {
            if self.k >= 1 && cell.simplex.is_degenerate() {
                continue;
            }
            let mut order: Vec<usize> = (0..cell.simplex.vertices.len()).collect();
            let keys: Vec<Vec<i64>> =
                cell.simplex.vertices.iter().map(quantize).collect();
            order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
            let parity = permutation_sign(&order);
            let verts: Vec<Point> = order
                .iter()
                .map(|&i| cell.simplex.vertices[i].clone())
                .collect();
            let key: Vec<Vec<i64>> = order.iter().map(|&i| keys[i].clone()).collect();
            let mult = cell.multiplicity * parity as i64 * cell.simplex.orientation as i64;
            let s = Simplex::new(verts, 1).expect("canonical simplex");
            match merged.iter_mut().find(|(k, _, _)| *k == key) {
                Some((_, _, m)) => *m += mult,
                None => merged.push((key, s, mult)),
            }
        }
        merged.retain(|(_, _, m)| *m != 0);
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        self.cells = merged
            .into_iter()
            .map(|(_, simplex, multiplicity)| Cell {
                simplex,
                multiplicity,
            })
            .collect();
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Formal sum of two currents in the same ambient.
    pub fn add(&self, other: &Self) -> Result<Self, CurrentError> {
        assert_eq!(self.k, other.k);
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Self::new(self.ambient.clone(), self.k, cells)
    }

    pub fn negated(&self) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|c| Cell {
                simplex: c.simplex.clone(),
                multiplicity: -c.multiplicity,
            })
            .collect();
        Self {
            ambient: self.ambient.clone(),
            k: self.k,
            cells,
        }
    }

    /// Boundary current: the alternating sum of vertex-omitted facets of
    /// each cell, with integer cancellation.
    pub fn boundary(&self) -> Self {
        assert!(self.k >= 1, "boundary of a 0-current");
        let mut cells = Vec::new();
        for c in &self.cells {
            for i in 0..=self.k {
                let verts: Vec<Point> = c
                    .simplex
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, v)| v.clone())
                    .collect();
                let sign = if i % 2 == 0 { 1 } else { -1 };
                cells.push(Cell {
                    simplex: Simplex::new(verts, 1).expect("facet"),
                    multiplicity: c.multiplicity * c.simplex.orientation as i64 * sign,
                });
            }
        }
        let mut t = Self {
            ambient: self.ambient.clone(),
            k: self.k - 1,
            cells,
        };
        t.canonicalize();
        t
    }

    /// Push-forward along a map given vertex-wise; the map must be affine
    /// on every cell, which is checked at the centroid.  Degenerate image
    /// cells are dropped (by canonicalization).
    pub fn push_forward<F>(&self, ambient: NormedAmbient, f: F) -> Result<Self, CurrentError>
    where
        F: Fn(&Point) -> Point,
    {
        let mut cells = Vec::new();
        for (idx, c) in self.cells.iter().enumerate() {
            let verts: Vec<Point> = c.simplex.vertices.iter().map(|v| f(v)).collect();
            // affine maps commute with averaging vertices
            let image_centroid = f(&c.simplex.centroid());
            let mean: Point = verts.iter().fold(
                DVector::zeros(ambient.dim),
                |acc, v| acc + v,
            ) / verts.len() as f64;
            let scale = verts.iter().map(|v| v.norm()).fold(1.0_f64, f64::max);
            let deviation = (&image_centroid - &mean).norm();
            if deviation > 1e-9 * scale {
                return Err(CurrentError::RefinementRequired {
                    cell: idx,
                    deviation,
                });
            }
            cells.push(Cell {
                simplex: Simplex::new(verts, c.simplex.orientation)
                    .map_err(|_| CurrentError::AmbientDimension {
                        expected: ambient.dim,
                        got: 0,
                    })?,
                multiplicity: c.multiplicity,
            });
        }
        let mut t = Self {
            ambient,
            k: self.k,
            cells,
        };
        t.canonicalize();
        Ok(t)
    }

    /// Restriction to an intersection of half-spaces, by clipping each
    /// cell.
    pub fn restrict(&self, region: &[HalfSpace]) -> Self {
        let mut cells: Vec<Cell> = self.cells.clone();
        for h in region {
            let mut next = Vec::new();
            for c in cells {
                for piece in clip_simplex_halfspace(&c.simplex, h) {
                    next.push(Cell {
                        simplex: piece,
                        multiplicity: c.multiplicity,
                    });
                }
            }
            cells = next;
        }
        let mut t = Self {
            ambient: self.ambient.clone(),
            k: self.k,
            cells,
        };
        t.canonicalize();
        t
    }

    /// Restriction to `{g <= level}` for a function given by its vertex
    /// values, affine on every cell (e.g. a linear functional composed
    /// with a piecewise-affine map).  `scale` is the functional's
    /// gradient magnitude, used to normalize the on-boundary tolerance.
    pub fn restrict_by_values<G>(&self, g: G, level: f64, scale: f64) -> Self
    where
        G: Fn(&Point) -> f64,
    {
        let mut cells = Vec::new();
        for c in &self.cells {
            let vals: Vec<f64> = c
                .simplex
                .vertices
                .iter()
                .map(|v| g(v) - level)
                .collect();
            for piece in crate::geometry::clip_simplex_values(&c.simplex, &vals, scale) {
                cells.push(Cell {
                    simplex: piece,
                    multiplicity: c.multiplicity,
                });
            }
        }
        let mut t = Self {
            ambient: self.ambient.clone(),
            k: self.k,
            cells,
        };
        t.canonicalize();
        t
    }

    /// Metric differential of a cell's affine chart from the standard
    /// parameter simplex into the ambient norm.
    pub fn cell_seminorm(&self, cell: &Cell) -> Seminorm {
        Seminorm::new(cell.simplex.edge_matrix(), self.ambient.norm.clone())
            .expect("cell chart seminorm")
    }

    /// Mass of one cell under a Jacobian kind:
    /// `|multiplicity| * Jac(md chart) / k!`.
    pub fn cell_mass(&self, cell: &Cell, kind: JacobianKind) -> Result<f64, CurrentError> {
        if self.k == 0 {
            return Ok(cell.multiplicity.unsigned_abs() as f64);
        }
        let sigma = self.cell_seminorm(cell);
        let jac = jacobian(&sigma, kind)?;
        Ok(cell.multiplicity.unsigned_abs() as f64 * jac / factorial(self.k))
    }

    /// Mass measure report under a mass flavor.
    pub fn mass(&self, kind: MassKind) -> Result<MassMeasureReport, CurrentError> {
        let jk = kind.jacobian_kind();
        let per_cell: Result<Vec<f64>, CurrentError> =
            self.cells.iter().map(|c| self.cell_mass(c, jk)).collect();
        let per_cell = per_cell?;
        Ok(MassMeasureReport {
            total: per_cell.iter().sum(),
            per_cell,
            kind,
        })
    }

    /// Total mass under a Jacobian kind.
    pub fn total_mass(&self, kind: JacobianKind) -> Result<f64, CurrentError> {
        Ok(self.mass(MassKind::Jacobian(kind))?.total)
    }

    /// The cells carrying the current after cancellation.
    pub fn characteristic_set(&self) -> Vec<Simplex> {
        self.cells.iter().map(|c| c.simplex.clone()).collect()
    }

    /// Evaluate the current on an affine test tuple `(h, pi)`: `h` an
    /// affine function `a.x + c` and `pi` a list of `k` linear forms
    /// (rows of a k x N matrix).  Per cell the form part is constant and
    /// the affine integrand integrates to its centroid value.
    pub fn evaluate_affine(&self, a: &DVector<f64>, c: f64, pi: &DMatrix<f64>) -> f64 {
        assert_eq!(pi.nrows(), self.k);
        let mut total = 0.0;
        for cell in &self.cells {
            let det = if self.k == 0 {
                1.0
            } else {
                (pi * cell.simplex.edge_matrix()).determinant()
            };
            let h = a.dot(&cell.simplex.centroid()) + c;
            total += cell.multiplicity as f64
                * cell.simplex.orientation as f64
                * det
                * h
                / factorial(self.k);
        }
        total
    }

    /// Evaluate with a product integrand `h1 * h2` of two affine
    /// functions, exactly, via the vertex-value quadrature
    /// `vol/((k+1)(k+2)) * (sum f_i g_i + (sum f_i)(sum g_i))`.
    pub fn evaluate_affine_product(
        &self,
        a1: &DVector<f64>,
        c1: f64,
        a2: &DVector<f64>,
        c2: f64,
        pi: &DMatrix<f64>,
    ) -> f64 {
        assert_eq!(pi.nrows(), self.k);
        let kf = self.k as f64;
        let mut total = 0.0;
        for cell in &self.cells {
            let det = if self.k == 0 {
                1.0
            } else {
                (pi * cell.simplex.edge_matrix()).determinant()
            };
            let f: Vec<f64> = cell.simplex.vertices.iter().map(|v| a1.dot(v) + c1).collect();
            let g: Vec<f64> = cell.simplex.vertices.iter().map(|v| a2.dot(v) + c2).collect();
            let sf: f64 = f.iter().sum();
            let sg: f64 = g.iter().sum();
            let sfg: f64 = f.iter().zip(&g).map(|(x, y)| x * y).sum();
            let quad = (sfg + sf * sg) / ((kf + 1.0) * (kf + 2.0));
            total += cell.multiplicity as f64
                * cell.simplex.orientation as f64
                * det
                * quad
                / factorial(self.k);
        }
        total
    }
}

fn permutation_sign(order: &[usize]) -> i8 {
    let mut seen = vec![false; order.len()];
    let mut sign = 1i8;
    for start in 0..order.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = order[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Oriented 1-current of a polyline; `closed` appends the returning
/// segment.  Repeated consecutive points are dropped.
pub fn curve_current(
    ambient: NormedAmbient,
    polyline: &[Point],
    closed: bool,
) -> Result<PolyhedralCurrent, CurrentError> {
    assert!(polyline.len() >= 2);
    let mut pts: Vec<Point> = Vec::new();
    for p in polyline {
        if pts.last().map_or(true, |q| (q - p).norm() > 0.0) {
            pts.push(p.clone());
        }
    }
    if closed && (pts.first().unwrap() - pts.last().unwrap()).norm() == 0.0 {
        pts.pop();
    }
    let mut cells = Vec::new();
    let n = pts.len();
    let last = if closed { n } else { n - 1 };
    for i in 0..last {
        cells.push(Cell {
            simplex: Simplex::new(vec![pts[i].clone(), pts[(i + 1) % n].clone()], 1)
                .expect("segment"),
            multiplicity: 1,
        });
    }
    PolyhedralCurrent::new(ambient, 1, cells)
}

/// The standard square current `[0,1]^2` as two positively oriented
/// triangles in the given ambient norm.
pub fn unit_square_current(norm: AmbientNorm) -> PolyhedralCurrent {
    use crate::geometry::pt;
    let ambient = NormedAmbient { dim: 2, norm };
    let t1 = Simplex::new(vec![pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[1.0, 1.0])], 1).unwrap();
    let t2 = Simplex::new(vec![pt(&[0.0, 0.0]), pt(&[1.0, 1.0]), pt(&[0.0, 1.0])], 1).unwrap();
    PolyhedralCurrent::new(
        ambient,
        2,
        vec![
            Cell {
                simplex: t1,
                multiplicity: 1,
            },
            Cell {
                simplex: t2,
                multiplicity: 1,
            },
        ],
    )
    .unwrap()
}

// --- JSON exchange -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct NormDto {
    tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize, Deserialize)]
struct AmbientDto {
    dim: usize,
    norm: NormDto,
}

#[derive(Serialize, Deserialize)]
struct CellDto {
    vertices: Vec<Vec<f64>>,
    multiplicity: i64,
}

#[derive(Serialize, Deserialize)]
struct CurrentDto {
    ambient: AmbientDto,
    k: usize,
    cells: Vec<CellDto>,
}

impl PolyhedralCurrent {
    pub fn to_json(&self) -> String {
        let norm = match &self.ambient.norm {
            AmbientNorm::Euclidean => NormDto {
                tag: "euclidean".into(),
                matrix: None,
            },
            AmbientNorm::MaxNorm => NormDto {
                tag: "max".into(),
                matrix: None,
            },
            AmbientNorm::SumNorm => NormDto {
                tag: "sum".into(),
                matrix: None,
            },
            AmbientNorm::Quadratic(q) => NormDto {
                tag: "quadratic".into(),
                matrix: Some(
                    (0..q.nrows())
                        .map(|i| (0..q.ncols()).map(|j| q[(i, j)]).collect())
                        .collect(),
                ),
            },
        };
        let dto = CurrentDto {
            ambient: AmbientDto {
                dim: self.ambient.dim,
                norm,
            },
            k: self.k,
            cells: self
                .cells
                .iter()
                .map(|c| CellDto {
                    vertices: c
                        .simplex
                        .vertices
                        .iter()
                        .map(|v| v.iter().cloned().collect())
                        .collect(),
                    multiplicity: c.multiplicity * c.simplex.orientation as i64,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("current serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, CurrentError> {
        let dto: CurrentDto =
            serde_json::from_str(text).map_err(|e| CurrentError::Json(e.to_string()))?;
        let norm = match dto.ambient.norm.tag.as_str() {
            "euclidean" => AmbientNorm::Euclidean,
            "max" => AmbientNorm::MaxNorm,
            "sum" => AmbientNorm::SumNorm,
            "quadratic" => {
                let rows = dto
                    .ambient
                    .norm
                    .matrix
                    .ok_or_else(|| CurrentError::Json("quadratic norm without matrix".into()))?;
                let n = rows.len();
                AmbientNorm::Quadratic(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
            }
            other => return Err(CurrentError::Json(format!("unknown norm tag {other:?}"))),
        };
        let ambient = NormedAmbient {
            dim: dto.ambient.dim,
            norm,
        };
        let cells: Result<Vec<Cell>, CurrentError> = dto
            .cells
            .into_iter()
            .map(|c| {
                let verts: Vec<Point> = c
                    .vertices
                    .iter()
                    .map(|v| DVector::from_column_slice(v))
                    .collect();
                let simplex = Simplex::new(verts, 1)
                    .map_err(|e| CurrentError::Json(e.to_string()))?;
                Ok(Cell {
                    simplex,
                    multiplicity: c.multiplicity,
                })
            })
            .collect();
        Self::new(ambient, dto.k, cells?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pt;
    use rand::{Rng, SeedableRng};

    #[test]
    fn square_boundary_is_four_edges_of_length_four() {
        let sq = unit_square_current(AmbientNorm::Euclidean);
        let b = sq.boundary();
        assert_eq!(b.cells.len(), 4);
        let m = b.total_mass(JacobianKind::MassStar).unwrap();
        assert!((m - 4.0).abs() < 1e-12);
    }

    #[test]
    fn closed_polygon_has_zero_boundary() {
        let tri = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[0.0, 1.0])],
            true,
        )
        .unwrap();
        assert!(tri.boundary().is_zero());
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let cells: Vec<Cell> = (0..5)
                .map(|_| {
                    let verts = (0..4)
                        .map(|_| DVector::from_fn(3, |_, _| rng.gen_range(-1.0..1.0)))
                        .collect();
                    Cell {
                        simplex: Simplex::new(verts, 1).unwrap(),
                        multiplicity: rng.gen_range(-3..=3i64).max(1),
                    }
                })
                .collect();
            let t = PolyhedralCurrent::new(NormedAmbient::euclidean(3), 3, cells).unwrap();
            assert!(t.boundary().boundary().is_zero());
        }
    }

    #[test]
    fn unit_square_mass_one_all_kinds() {
        let sq = unit_square_current(AmbientNorm::Euclidean);
        for kind in [
            JacobianKind::Busemann,
            JacobianKind::MassStar,
            JacobianKind::InscribedRiemannian,
        ] {
            assert!((sq.total_mass(kind).unwrap() - 1.0).abs() < 1e-9);
        }
        let sq_inf = unit_square_current(AmbientNorm::MaxNorm);
        assert!((sq_inf.total_mass(JacobianKind::MassStar).unwrap() - 1.0).abs() < 1e-12);
        assert!(
            (sq_inf.boundary().total_mass(JacobianKind::MassStar).unwrap() - 4.0).abs() < 1e-12
        );
    }

    #[test]
    fn projection_push_forward_mass() {
        let diag = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, 0.0]), pt(&[1.0, 1.0])],
            false,
        )
        .unwrap();
        let proj = diag
            .push_forward(NormedAmbient::euclidean(2), |p| pt(&[p[0], 0.0]))
            .unwrap();
        let m = proj.total_mass(JacobianKind::MassStar).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert!(m <= diag.total_mass(JacobianKind::MassStar).unwrap());
    }

    #[test]
    fn push_forward_commutes_with_boundary() {
        let sq = unit_square_current(AmbientNorm::Euclidean);
        let f = |p: &Point| pt(&[2.0 * p[0] + p[1], p[1] - p[0]]);
        let a = sq
            .push_forward(NormedAmbient::euclidean(2), f)
            .unwrap()
            .boundary();
        let b = sq
            .boundary()
            .push_forward(NormedAmbient::euclidean(2), f)
            .unwrap();
        assert!(a.add(&b.negated()).unwrap().is_zero());
    }

    #[test]
    fn non_affine_push_forward_rejected() {
        let sq = unit_square_current(AmbientNorm::Euclidean);
        let err = sq
            .push_forward(NormedAmbient::euclidean(2), |p| {
                pt(&[p[0] * p[0], p[1]])
            })
            .unwrap_err();
        matches!(err, CurrentError::RefinementRequired { .. })
            .then_some(())
            .expect("expected RefinementRequired");
    }

    #[test]
    fn restrict_square_to_half() {
        let sq = unit_square_current(AmbientNorm::Euclidean);
        let half = sq.restrict(&[HalfSpace::new(pt(&[1.0, 0.0]), 0.5)]);
        let m = half.total_mass(JacobianKind::MassStar).unwrap();
        assert!((m - 0.5).abs() < 1e-12);
        let all = sq.restrict(&[HalfSpace::new(pt(&[1.0, 0.0]), 10.0)]);
        assert!((all.total_mass(JacobianKind::MassStar).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn restrict_mass_additivity_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let cells: Vec<Cell> = (0..4)
                .map(|_| {
                    let verts = (0..3)
                        .map(|_| DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0)))
                        .collect();
                    Cell {
                        simplex: Simplex::new(verts, 1).unwrap(),
                        multiplicity: *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap(),
                    }
                })
                .collect();
            let t = match PolyhedralCurrent::new(NormedAmbient::euclidean(2), 2, cells) {
                Ok(t) if !t.is_zero() => t,
                _ => continue,
            };
            let normal = DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0));
            let h = HalfSpace::new(normal.clone(), rng.gen_range(-0.5..0.5));
            let hc = HalfSpace::new(-normal, -h.offset);
            let total = t.total_mass(JacobianKind::MassStar).unwrap();
            let a = t.restrict(std::slice::from_ref(&h)).total_mass(JacobianKind::MassStar).unwrap();
            let b = t.restrict(std::slice::from_ref(&hc)).total_mass(JacobianKind::MassStar).unwrap();
            assert!((a + b - total).abs() < 1e-12 * (1.0 + total));
        }
    }

    #[test]
    fn cancellation_empties_characteristic_set() {
        let sq = unit_square_current(AmbientNorm::Euclidean);
        let sum = sq.add(&sq.negated()).unwrap();
        assert!(sum.characteristic_set().is_empty());
    }

    #[test]
    fn curve_current_endpoints_and_length() {
        let seg = curve_current(
            NormedAmbient::euclidean(1),
            &[pt(&[-1.0]), pt(&[1.0])],
            false,
        )
        .unwrap();
        let b = seg.boundary();
        assert!((b.total_mass(JacobianKind::MassStar).unwrap() - 2.0).abs() < 1e-12);
        let zig = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[1.0, 2.0])],
            false,
        )
        .unwrap();
        assert!((zig.total_mass(JacobianKind::MassStar).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn mass_ordering_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let cells: Vec<Cell> = (0..3)
                .map(|_| {
                    let verts = (0..3)
                        .map(|_| DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0)))
                        .collect();
                    Cell {
                        simplex: Simplex::new(verts, 1).unwrap(),
                        multiplicity: 1,
                    }
                })
                .collect();
            let t = match PolyhedralCurrent::new(NormedAmbient::max_norm(2), 2, cells) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let ms = t.total_mass(JacobianKind::MassStar).unwrap();
            let ir = t.total_mass(JacobianKind::InscribedRiemannian).unwrap();
            assert!(ms <= ir + 1e-9 * (1.0 + ir));
        }
    }

    #[test]
    fn json_round_trip_is_stable() {
        let sq = unit_square_current(AmbientNorm::MaxNorm);
        let text = sq.to_json();
        let back = PolyhedralCurrent::from_json(&text).unwrap();
        assert_eq!(back, sq);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn evaluate_affine_area_form() {
        // T(1, (x, y)) = signed area footprint = 1 for the unit square
        let sq = unit_square_current(AmbientNorm::Euclidean);
        let val = sq.evaluate_affine(&pt(&[0.0, 0.0]), 1.0, &DMatrix::identity(2, 2));
        assert!((val - 1.0).abs() < 1e-12);
    }
}
