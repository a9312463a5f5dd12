//! Low-dimensional affine geometry: simplices, volumes, symmetric
//! polytopes and affine maps.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// A point of the ambient space, stored as a dense coordinate vector.
pub type Point = DVector<f64>;

/// Build a point from a coordinate slice.
pub fn pt(coords: &[f64]) -> Point {
    DVector::from_column_slice(coords)
}

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("simplex dimension {k} exceeds ambient dimension {n}")]
    DimensionTooLarge { k: usize, n: usize },
    #[error("polytope is unbounded: facet functionals do not span R^k")]
    Unbounded,
    #[error("matrix is not symmetric positive-definite")]
    NotPositiveDefinite,
}

/// An affine map `x -> M x + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    pub matrix: DMatrix<f64>,
    pub offset: DVector<f64>,
}

impl AffineMap {
    pub fn new(matrix: DMatrix<f64>, offset: DVector<f64>) -> Result<Self, GeometryError> {
        if matrix.nrows() != offset.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: matrix.nrows(),
                got: offset.len(),
            });
        }
        Ok(Self { matrix, offset })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
            offset: DVector::zeros(n),
        }
    }

    pub fn linear(matrix: DMatrix<f64>) -> Self {
        let n = matrix.nrows();
        Self {
            matrix,
            offset: DVector::zeros(n),
        }
    }

    pub fn apply(&self, x: &Point) -> Point {
        &self.matrix * x + &self.offset
    }

    pub fn dim_in(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Relative tolerance on the smallest singular value of the edge matrix
/// below which a simplex is treated as degenerate.
const DEGENERACY_REL_TOL: f64 = 1e-13;

/// An oriented affine `k`-simplex in `R^N`, given by `k+1` vertices and a
/// sign flipping the orientation induced by the vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub vertices: Vec<Point>,
    pub orientation: i8,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>, orientation: i8) -> Result<Self, GeometryError> {
        assert!(orientation == 1 || orientation == -1);
        assert!(!vertices.is_empty());
        let n = vertices[0].len();
        let k = vertices.len() - 1;
        if k > n {
            return Err(GeometryError::DimensionTooLarge { k, n });
        }
        for v in &vertices {
            if v.len() != n {
                return Err(GeometryError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(GeometryError::NonFinite);
            }
        }
        Ok(Self {
            vertices,
            orientation,
        })
    }

    /// Dimension `k` of the simplex.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Ambient dimension `N`.
    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Edge matrix `[v_1 - v_0, ..., v_k - v_0]`, shape `N x k`.
    pub fn edge_matrix(&self) -> DMatrix<f64> {
        let n = self.ambient_dim();
        let k = self.dim();
        DMatrix::from_fn(n, k, |i, j| self.vertices[j + 1][i] - self.vertices[0][i])
    }

    fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self
            .edge_matrix()
            .singular_values()
            .iter()
            .cloned()
            .collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    fn max_edge_len(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                m = m.max((&self.vertices[i] - &self.vertices[j]).norm());
            }
        }
        m
    }

    /// True when the vertices fail the scale-invariant affine-independence
    /// test on the edge matrix singular values.
    pub fn is_degenerate(&self) -> bool {
        if self.dim() == 0 {
            return false;
        }
        let sv = self.singular_values();
        let max = sv[0];
        if max == 0.0 {
            return true;
        }
        sv[sv.len() - 1] < DEGENERACY_REL_TOL * max
    }

    /// The `k`-dimensional Hausdorff measure: the product of the edge
    /// matrix singular values over `k!`.  Degenerate simplices report
    /// volume zero.
    pub fn volume(&self) -> f64 {
        if self.dim() == 0 {
            return 1.0;
        }
        if self.is_degenerate() {
            return 0.0;
        }
        self.singular_values().iter().product::<f64>() / factorial(self.dim())
    }

    /// Centroid of the vertex set.
    pub fn centroid(&self) -> Point {
        let mut c = DVector::zeros(self.ambient_dim());
        for v in &self.vertices {
            c += v;
        }
        c / self.vertices.len() as f64
    }

    pub fn flipped(&self) -> Self {
        Self {
            vertices: self.vertices.clone(),
            orientation: -self.orientation,
        }
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// A closed half-space `{x : normal . x <= offset}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub normal: DVector<f64>,
    pub offset: f64,
}

impl HalfSpace {
    pub fn new(normal: DVector<f64>, offset: f64) -> Self {
        Self { normal, offset }
    }

    pub fn signed_distance(&self, x: &Point) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

/// Clip an oriented simplex by the half-space `h(x) <= c`, returning a
/// triangulation of the intersection.  Orientations and volumes are
/// inherited: the returned pieces triangulate the clipped region exactly.
///
/// The companion half of the cut is obtained by clipping with the negated
/// half-space; the two triangulations together exhaust the simplex.
pub fn clip_simplex_halfspace(s: &Simplex, h: &HalfSpace) -> Vec<Simplex> {
    let d: Vec<f64> = s.vertices.iter().map(|v| h.signed_distance(v)).collect();
    let scale = h.normal.norm().max(1.0);
    clip_simplex_values(s, &d, scale)
}

/// Clip an oriented simplex against `{g <= 0}` where `g` is the affine
/// function interpolating the given vertex values.  This is the primitive
/// behind both half-space clipping and slicing along (piecewise-)affine
/// functionals: only vertex values are consumed.  `scale` normalizes the
/// on-boundary tolerance (pass the functional's gradient norm).
pub fn clip_simplex_values(s: &Simplex, values: &[f64], scale: f64) -> Vec<Simplex> {
    let mut keep = Vec::new();
    clip_recursive(s.clone(), values.to_vec(), scale, &mut keep);
    keep
}

const CLIP_EPS: f64 = 1e-14;

fn clip_recursive(s: Simplex, d: Vec<f64>, scale: f64, out: &mut Vec<Simplex>) {
    let eps = CLIP_EPS * s.max_edge_len().max(1.0) * scale.max(1.0);
    let any_pos = d.iter().any(|&x| x > eps);
    let any_neg = d.iter().any(|&x| x < -eps);
    if !any_pos {
        // entirely inside (or on the boundary)
        if !s.is_degenerate() {
            out.push(s);
        }
        return;
    }
    if !any_neg {
        return;
    }
    // Split along one crossing edge; the intersection point sits on the
    // cutting level set, so each half makes strict progress.
    let a = d.iter().position(|&x| x < -eps).unwrap();
    let b = d.iter().position(|&x| x > eps).unwrap();
    let t = d[a] / (d[a] - d[b]);
    let w: Point = &s.vertices[a] * (1.0 - t) + &s.vertices[b] * t;

    let mut s1 = s.clone();
    s1.vertices[b] = w.clone();
    let mut d1 = d.clone();
    d1[b] = 0.0;
    let mut s2 = s;
    s2.vertices[a] = w;
    let mut d2 = d;
    d2[a] = 0.0;
    if !s1.is_degenerate() {
        clip_recursive(s1, d1, scale, out);
    }
    if !s2.is_degenerate() {
        clip_recursive(s2, d2, scale, out);
    }
}

/// An origin-symmetric polytope `{v : |xi_j . v| <= 1 for all j}` in
/// facet representation.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPolytope {
    pub facets: Vec<DVector<f64>>,
}

/// Result of a polytope volume computation.  The exact path (k <= 3) has
/// no error estimate; Monte Carlo reports a standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolytopeVolume {
    pub value: f64,
    pub std_error: Option<f64>,
}

impl SymmetricPolytope {
    pub fn new(facets: Vec<DVector<f64>>) -> Self {
        Self { facets }
    }

    pub fn dim(&self) -> usize {
        self.facets.first().map(|f| f.len()).unwrap_or(0)
    }

    pub fn contains(&self, v: &Point, tol: f64) -> bool {
        self.facets.iter().all(|f| f.dot(v).abs() <= 1.0 + tol)
    }

    fn spans(&self) -> bool {
        let k = self.dim();
        if self.facets.len() < k {
            return false;
        }
        let m = DMatrix::from_fn(self.facets.len(), k, |i, j| self.facets[i][j]);
        m.rank(1e-12) == k
    }

    /// Enumerate the vertices of the polytope (exact path, k <= 3).
    pub fn vertices(&self) -> Result<Vec<Point>, GeometryError> {
        let k = self.dim();
        if !self.spans() {
            return Err(GeometryError::Unbounded);
        }
        // All hyperplanes xi_j . v = +/-1; fix the first chosen sign to +1
        // and rely on central symmetry for the mirror vertices.
        let m = self.facets.len();
        let mut verts: Vec<Point> = Vec::new();
        let push_unique = |v: Point, verts: &mut Vec<Point>| {
            let tol = 1e-9 * (1.0 + v.norm());
            if !verts.iter().any(|u| (u - &v).norm() < tol) {
                verts.push(v);
            }
        };
        let idx_sets = k_subsets(m, k);
        for set in &idx_sets {
            for signs in 0..(1u32 << (k.saturating_sub(1))) {
                let mut a = DMatrix::zeros(k, k);
                let mut b = DVector::zeros(k);
                for (r, &j) in set.iter().enumerate() {
                    let sign = if r == 0 {
                        1.0
                    } else if signs >> (r - 1) & 1 == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    for c in 0..k {
                        a[(r, c)] = self.facets[j][c];
                    }
                    b[r] = sign;
                }
                let lu = a.lu();
                if let Some(v) = lu.solve(&b) {
                    if v.iter().all(|c| c.is_finite()) && self.contains(&v, 1e-9) {
                        push_unique(v.clone(), &mut verts);
                        push_unique(-v, &mut verts);
                    }
                }
            }
        }
        Ok(verts)
    }

    /// Volume of the polytope: exact (vertex enumeration plus a facet
    /// decomposition) for k <= 3, hit-or-miss Monte Carlo above.
    pub fn volume(&self) -> Result<PolytopeVolume, GeometryError> {
        let k = self.dim();
        if !self.spans() {
            return Err(GeometryError::Unbounded);
        }
        match k {
            0 => Ok(PolytopeVolume {
                value: 1.0,
                std_error: None,
            }),
            1 => {
                let mx = self
                    .facets
                    .iter()
                    .map(|f| f[0].abs())
                    .fold(0.0_f64, f64::max);
                Ok(PolytopeVolume {
                    value: 2.0 / mx,
                    std_error: None,
                })
            }
            2 | 3 => self.volume_exact_low_dim(),
            _ => Ok(self.volume_monte_carlo(1_000_000, 0)),
        }
    }

    fn volume_exact_low_dim(&self) -> Result<PolytopeVolume, GeometryError> {
        let k = self.dim();
        let verts = self.vertices()?;
        // Pyramid decomposition over facets: vol = (1/k) * sum over facet
        // hyperplanes of dist(0, plane) * vol_{k-1}(facet).  Symmetric
        // facets contribute twice.
        let mut total = 0.0;
        for f in &self.facets {
            let on_facet: Vec<&Point> = verts
                .iter()
                .filter(|v| (f.dot(v) - 1.0).abs() < 1e-8 * (1.0 + v.norm()))
                .collect();
            if on_facet.len() < k {
                continue;
            }
            let area = match k {
                2 => {
                    // collinear points: facet length = max pairwise distance
                    let mut m: f64 = 0.0;
                    for i in 0..on_facet.len() {
                        for j in (i + 1)..on_facet.len() {
                            m = m.max((on_facet[i] - on_facet[j]).norm());
                        }
                    }
                    m
                }
                3 => polygon_area_3d(&on_facet, f),
                _ => unreachable!(),
            };
            total += 2.0 * area / f.norm() / k as f64;
        }
        Ok(PolytopeVolume {
            value: total,
            std_error: None,
        })
    }

    /// Hit-or-miss Monte Carlo in a bounding parallelepiped spanned by k
    /// facet hyperplane pairs with maximal determinant.
    pub fn volume_monte_carlo(&self, samples: usize, seed: u64) -> PolytopeVolume {
        use rand::{Rng, SeedableRng};
        let k = self.dim();
        // Greedy pick of k facets with large determinant; the polytope is
        // contained in the preimage of the cube [-1,1]^k under them.
        let mut chosen: Vec<usize> = Vec::new();
        let mut basis: Vec<DVector<f64>> = Vec::new();
        for _ in 0..k {
            let mut best = None;
            let mut best_score = -1.0;
            for (j, f) in self.facets.iter().enumerate() {
                if chosen.contains(&j) {
                    continue;
                }
                // score: residual after projecting off the chosen rows
                let mut r = f.clone();
                for b in &basis {
                    let bn = b.norm_squared();
                    if bn > 0.0 {
                        let c = r.dot(b) / bn;
                        r -= b * c;
                    }
                }
                let score = r.norm();
                if score > best_score {
                    best_score = score;
                    best = Some(j);
                }
            }
            let j = best.unwrap();
            chosen.push(j);
            basis.push(self.facets[j].clone());
        }
        let xi = DMatrix::from_fn(k, k, |i, j| self.facets[chosen[i]][j]);
        let xi_inv = xi.clone().try_inverse().expect("chosen facets singular");
        let par_vol = 2.0_f64.powi(k as i32) / xi.determinant().abs();

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut hits = 0usize;
        for _ in 0..samples {
            let u = DVector::from_fn(k, |_, _| rng.gen_range(-1.0..1.0));
            let v = &xi_inv * u;
            if self.contains(&v, 0.0) {
                hits += 1;
            }
        }
        let p = hits as f64 / samples as f64;
        let se = par_vol * (p * (1.0 - p) / samples as f64).sqrt();
        PolytopeVolume {
            value: par_vol * p,
            std_error: Some(se),
        }
    }

    /// Dilate all facet thresholds by `lambda` (the body scales by `lambda`).
    pub fn dilated(&self, lambda: f64) -> Self {
        Self {
            facets: self.facets.iter().map(|f| f / lambda).collect(),
        }
    }
}

/// Area of a convex planar polygon given as points on the plane
/// `normal . x = 1`, in arbitrary order.
fn polygon_area_3d(points: &[&Point], normal: &DVector<f64>) -> f64 {
    assert!(points.len() >= 3);
    let n = normal / normal.norm();
    // orthonormal in-plane basis
    let mut e1 = DVector::from_column_slice(&[1.0, 0.0, 0.0]);
    if n[0].abs() > 0.9 {
        e1 = DVector::from_column_slice(&[0.0, 1.0, 0.0]);
    }
    let e1n = &e1 - &n * n.dot(&e1);
    let e1 = &e1n / e1n.norm();
    let e2 = cross3(&n, &e1);
    let centroid: Point = points.iter().fold(DVector::zeros(3), |acc, p| acc + *p) / points.len() as f64;
    let mut planar: Vec<(f64, f64, f64)> = points
        .iter()
        .map(|p| {
            let d = *p - &centroid;
            let x = e1.dot(&d);
            let y = e2.dot(&d);
            (y.atan2(x), x, y)
        })
        .collect();
    planar.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut area = 0.0;
    for i in 0..planar.len() {
        let (_, x1, y1) = planar[i];
        let (_, x2, y2) = planar[(i + 1) % planar.len()];
        area += x1 * y2 - x2 * y1;
    }
    area.abs() / 2.0
}

fn cross3(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    DVector::from_column_slice(&[
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn simplex(verts: &[&[f64]]) -> Simplex {
        Simplex::new(verts.iter().map(|v| pt(v)).collect(), 1).unwrap()
    }

    #[test]
    fn standard_two_simplex_volume() {
        let s = simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        assert!((s.volume() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn segment_volumes() {
        let s = simplex(&[&[0.0], &[3.0]]);
        assert!((s.volume() - 3.0).abs() < 1e-15);
        let d = simplex(&[&[0.0, 0.0], &[1.0, 1.0]]);
        assert!((d.volume() - 2.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_simplex_flagged() {
        let s = simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]]);
        assert!(s.is_degenerate());
        assert_eq!(s.volume(), 0.0);
    }

    #[test]
    fn volume_isometry_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let verts: Vec<Point> = (0..4)
                .map(|_| DVector::from_fn(3, |_, _| rng.gen_range(-1.0..1.0)))
                .collect();
            let s = Simplex::new(verts.clone(), 1).unwrap();
            // random rotation from QR
            let a = DMatrix::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0_f64));
            let qr = a.qr();
            let q = qr.q();
            let shift = DVector::from_fn(3, |_, _| rng.gen_range(-1.0..1.0));
            let rot_verts: Vec<Point> = verts.iter().map(|v| &q * v + &shift).collect();
            let r = Simplex::new(rot_verts, 1).unwrap();
            assert!((s.volume() - r.volume()).abs() < 1e-12);
        }
    }

    #[test]
    fn clip_square_half() {
        // unit square as two triangles, clipped by x <= 1/2
        let t1 = simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]);
        let t2 = simplex(&[&[0.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]);
        let h = HalfSpace::new(pt(&[1.0, 0.0]), 0.5);
        let total: f64 = clip_simplex_halfspace(&t1, &h)
            .iter()
            .chain(clip_simplex_halfspace(&t2, &h).iter())
            .map(|s| s.volume())
            .sum();
        assert!((total - 0.5).abs() < 1e-12);
    }

    #[test]
    fn clip_miss_keeps_simplex() {
        let t = simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        let h = HalfSpace::new(pt(&[1.0, 0.0]), 5.0);
        let pieces = clip_simplex_halfspace(&t, &h);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0], t);
    }

    #[test]
    fn clip_additivity_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let verts: Vec<Point> = (0..3)
                .map(|_| DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0)))
                .collect();
            let t = Simplex::new(verts, 1).unwrap();
            if t.is_degenerate() {
                continue;
            }
            let normal = DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0));
            let h = HalfSpace::new(normal.clone(), rng.gen_range(-0.5..0.5));
            let neg = HalfSpace::new(-normal, -h.offset);
            let a: f64 = clip_simplex_halfspace(&t, &h).iter().map(|s| s.volume()).sum();
            let b: f64 = clip_simplex_halfspace(&t, &neg).iter().map(|s| s.volume()).sum();
            assert!((a + b - t.volume()).abs() < 1e-12);
        }
    }

    #[test]
    fn clip_orientation_inherited() {
        let t = simplex(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        let h = HalfSpace::new(pt(&[1.0, 0.0]), 0.5);
        for p in clip_simplex_halfspace(&t, &h) {
            // signed area of each piece has the same sign as the parent
            let e = p.edge_matrix();
            let signed = e.determinant() * p.orientation as f64;
            assert!(signed > 0.0);
        }
    }

    #[test]
    fn square_polytope_volume() {
        let p = SymmetricPolytope::new(vec![pt(&[1.0, 0.0]), pt(&[0.0, 1.0])]);
        let v = p.volume().unwrap();
        assert!((v.value - 4.0).abs() < 1e-12);
    }

    #[test]
    fn diamond_polytope_volume() {
        let p = SymmetricPolytope::new(vec![pt(&[1.0, 1.0]), pt(&[1.0, -1.0])]);
        let v = p.volume().unwrap();
        assert!((v.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cube_polytope_volume_3d() {
        let p = SymmetricPolytope::new(vec![
            pt(&[1.0, 0.0, 0.0]),
            pt(&[0.0, 1.0, 0.0]),
            pt(&[0.0, 0.0, 1.0]),
        ]);
        let v = p.volume().unwrap();
        assert!((v.value - 8.0).abs() < 1e-10);
    }

    #[test]
    fn octahedron_volume_3d() {
        // l1 ball in R^3: facets are the 4 sign patterns (up to symmetry)
        let p = SymmetricPolytope::new(vec![
            pt(&[1.0, 1.0, 1.0]),
            pt(&[1.0, 1.0, -1.0]),
            pt(&[1.0, -1.0, 1.0]),
            pt(&[1.0, -1.0, -1.0]),
        ]);
        let v = p.volume().unwrap();
        assert!((v.value - 4.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn random_3d_polytope_matches_monte_carlo() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let facets: Vec<Point> = (0..6)
            .map(|_| DVector::from_fn(3, |_, _| rng.gen_range(-1.0..1.0)))
            .collect();
        let p = SymmetricPolytope::new(facets);
        if let Ok(exact) = p.volume() {
            let mc = p.volume_monte_carlo(10_000_000, 5);
            let se = mc.std_error.unwrap();
            assert!(
                (exact.value - mc.value).abs() < 3.0 * se + 1e-9,
                "exact {} vs mc {} (se {})",
                exact.value,
                mc.value,
                se
            );
        }
    }

    #[test]
    fn dilation_scaling() {
        let p = SymmetricPolytope::new(vec![pt(&[1.0, 1.0]), pt(&[1.0, -1.0])]);
        let v = p.volume().unwrap().value;
        let v2 = p.dilated(2.5).volume().unwrap().value;
        assert!((v2 - 2.5_f64.powi(2) * v).abs() < 1e-12);
    }

    #[test]
    fn unbounded_polytope_rejected() {
        let p = SymmetricPolytope::new(vec![pt(&[1.0, 0.0])]);
        assert_eq!(p.volume().unwrap_err(), GeometryError::Unbounded);
    }
}
