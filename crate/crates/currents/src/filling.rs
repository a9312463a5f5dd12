//! Filling-volume experiments: mesh metric spaces, McShane extensions,
//! the coordinate-wise l-infinity filling bound, the sphere-sampling
//! embedding, the flat-football family, and the max-norm square witness.

use std::cell::RefCell;
use std::collections::{BinaryHeap, HashMap};
use std::rc::Rc;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::current::{Cell, CurrentError, NormedAmbient, PolyhedralCurrent};
use crate::geometry::{pt, Point, Simplex};
use crate::jacobian::{jacobian, JacobianError, JacobianKind};
use crate::seminorm::{AmbientNorm, Seminorm};

#[derive(Debug, Error)]
pub enum FillingError {
    #[error("values are not {bound}-Lipschitz: |f({i}) - f({j})| = {gap:.6} > {bound} * d = {ld:.6}")]
    NotLipschitz {
        i: usize,
        j: usize,
        gap: f64,
        ld: f64,
        bound: f64,
    },
    #[error("boundary identification is not isometric at pair ({i}, {j}): mesh {mesh:.9} vs ambient {ambient:.9}")]
    NotIsometric {
        i: usize,
        j: usize,
        mesh: f64,
        ambient: f64,
    },
    #[error("boundary heights must vanish")]
    BoundaryHeight,
    #[error(transparent)]
    Current(#[from] CurrentError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

#[derive(PartialEq, PartialOrd)]
struct OrdF64(f64);
impl Eq for OrdF64 {}
impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.partial_cmp(other).unwrap()
    }
}

/// A finite metric space carried by a graph: vertices with display
/// coordinates, weighted edges, and the shortest-path metric, computed
/// lazily per source and cached.
#[derive(Debug, Clone)]
pub struct MeshMetricSpace {
    pub vertices: Vec<Point>,
    pub edges: Vec<(usize, usize, f64)>,
    /// oriented triangles (positively oriented in their local chart)
    pub triangles: Vec<[usize; 3]>,
    adjacency: Vec<Vec<(usize, f64)>>,
    edge_length: HashMap<(usize, usize), f64>,
    cache: RefCell<HashMap<usize, Rc<Vec<f64>>>>,
}

impl MeshMetricSpace {
    pub fn new(
        vertices: Vec<Point>,
        edges: Vec<(usize, usize, f64)>,
        triangles: Vec<[usize; 3]>,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut edge_length = HashMap::new();
        for &(a, b, l) in &edges {
            assert!(l > 0.0);
            adjacency[a].push((b, l));
            adjacency[b].push((a, l));
            edge_length.insert((a.min(b), a.max(b)), l);
        }
        Self {
            vertices,
            edges,
            triangles,
            adjacency,
            edge_length,
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// Build from a surface triangulation: edges are the triangle sides,
    /// measured by Euclidean length of the display coordinates.
    pub fn from_triangles(vertices: Vec<Point>, triangles: Vec<[usize; 3]>) -> Self {
        let mut seen = HashMap::new();
        for t in &triangles {
            for e in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (e.0.min(e.1), e.0.max(e.1));
                seen.entry(key).or_insert_with(|| {
                    (vertices[key.0].clone() - &vertices[key.1]).norm()
                });
            }
        }
        let edges = {
            let mut v: Vec<(usize, usize, f64)> =
                seen.into_iter().map(|((a, b), l)| (a, b, l)).collect();
            v.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
            v
        };
        Self::new(vertices, edges, triangles)
    }

    pub fn distances_from(&self, src: usize) -> Rc<Vec<f64>> {
        if let Some(d) = self.cache.borrow().get(&src) {
            return d.clone();
        }
        let mut dist = vec![f64::INFINITY; self.vertices.len()];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push((std::cmp::Reverse(OrdF64(0.0)), src));
        while let Some((std::cmp::Reverse(OrdF64(d)), v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, l) in &self.adjacency[v] {
                let nd = d + l;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push((std::cmp::Reverse(OrdF64(nd)), w));
                }
            }
        }
        let rc = Rc::new(dist);
        self.cache.borrow_mut().insert(src, rc.clone());
        rc
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.distances_from(i)[j]
    }

    fn triangle_area(&self, t: &[usize; 3]) -> f64 {
        let l = |a: usize, b: usize| self.edge_length[&(a.min(b), a.max(b))];
        heron(l(t[0], t[1]), l(t[1], t[2]), l(t[2], t[0]))
    }

    /// Intrinsic area: triangle areas from edge lengths.
    pub fn total_area(&self) -> f64 {
        self.triangles.iter().map(|t| self.triangle_area(t)).sum()
    }

    /// Net directed boundary edges after interior cancellation.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        let mut net: HashMap<(usize, usize), i64> = HashMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (a.min(b), a.max(b));
                *net.entry(key).or_insert(0) += if a < b { 1 } else { -1 };
            }
        }
        let mut out: Vec<(usize, usize)> = net
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|((a, b), c)| if c > 0 { (a, b) } else { (b, a) })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Numerically stable Heron formula (Kahan): the inputs are sorted so
/// the products of sums and differences stay well conditioned.
pub fn heron(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let (a, b, c) = (s[0], s[1], s[2]);
    let t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * t.max(0.0).sqrt()
}

/// McShane extension on a mesh metric space: the minimal L-Lipschitz
/// extension `min_a (f(a) + L d(x, a))` of values given on the subset A.
pub fn mcshane_extend(
    space: &MeshMetricSpace,
    a_ids: &[usize],
    f: &[f64],
    big_l: f64,
    queries: &[usize],
) -> Result<Vec<f64>, FillingError> {
    assert_eq!(a_ids.len(), f.len());
    let dists: Vec<Rc<Vec<f64>>> = a_ids.iter().map(|&a| space.distances_from(a)).collect();
    for i in 0..a_ids.len() {
        for j in (i + 1)..a_ids.len() {
            let d = dists[i][a_ids[j]];
            if (f[i] - f[j]).abs() > big_l * d + 1e-12 {
                return Err(FillingError::NotLipschitz {
                    i: a_ids[i],
                    j: a_ids[j],
                    gap: (f[i] - f[j]).abs(),
                    ld: big_l * d,
                    bound: big_l,
                });
            }
        }
    }
    Ok(queries
        .iter()
        .map(|&q| {
            (0..a_ids.len())
                .map(|i| f[i] + big_l * dists[i][q])
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}

/// A convex body in R^n: vertex representation with volume and a
/// boundary mesh current.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    pub n: usize,
    pub vertices: Vec<Point>,
    pub volume: f64,
    pub boundary: PolyhedralCurrent,
}

impl ConvexBody {
    /// A convex polygon in R^2, vertices in counterclockwise order.
    pub fn polygon(points: &[Point]) -> Self {
        let m = points.len();
        assert!(m >= 3);
        let mut area = 0.0;
        for i in 0..m {
            let p = &points[i];
            let q = &points[(i + 1) % m];
            area += p[0] * q[1] - q[0] * p[1];
            // convexity: every corner turns left
            let r = &points[(i + 2) % m];
            let cross = (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0]);
            assert!(cross > -1e-12, "polygon is not convex and CCW");
        }
        let boundary =
            crate::current::curve_current(NormedAmbient::euclidean(2), points, true).unwrap();
        Self {
            n: 2,
            vertices: points.to_vec(),
            volume: area / 2.0,
            boundary,
        }
    }

    pub fn unit_square() -> Self {
        Self::polygon(&[
            pt(&[0.0, 0.0]),
            pt(&[1.0, 0.0]),
            pt(&[1.0, 1.0]),
            pt(&[0.0, 1.0]),
        ])
    }
}

/// A candidate filling: a mesh surface with its boundary vertices
/// identified, in order, with points on the boundary of a convex body.
#[derive(Debug, Clone)]
pub struct FillingCandidate {
    pub mesh: MeshMetricSpace,
    pub boundary_loop: Vec<usize>,
    pub boundary_points: Vec<Point>,
}

/// Graph surface over the unit square: grid vertices lifted to
/// `(x, y, z(x, y))` with the intrinsic (edge-length) metric; the height
/// must vanish on the square's boundary.
pub fn graph_surface_candidate(
    n: usize,
    height: impl Fn(f64, f64) -> f64,
) -> Result<FillingCandidate, FillingError> {
    let id = |i: usize, j: usize| i * (n + 1) + j;
    let mut vertices = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let (x, y) = (i as f64 / n as f64, j as f64 / n as f64);
            vertices.push(pt(&[x, y, height(x, y)]));
        }
    }
    let mut triangles = Vec::new();
    for i in 0..n {
        for j in 0..n {
            triangles.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            triangles.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    // counterclockwise perimeter
    let mut boundary_loop = Vec::new();
    for i in 0..n {
        boundary_loop.push(id(i, 0));
    }
    for j in 0..n {
        boundary_loop.push(id(n, j));
    }
    for i in (1..=n).rev() {
        boundary_loop.push(id(i, n));
    }
    for j in (1..=n).rev() {
        boundary_loop.push(id(0, j));
    }
    let boundary_points: Vec<Point> = boundary_loop
        .iter()
        .map(|&v| {
            if vertices[v][2].abs() > 1e-12 {
                None
            } else {
                Some(pt(&[vertices[v][0], vertices[v][1]]))
            }
        })
        .collect::<Option<Vec<_>>>()
        .ok_or(FillingError::BoundaryHeight)?;
    Ok(FillingCandidate {
        mesh: MeshMetricSpace::from_triangles(vertices, triangles),
        boundary_loop,
        boundary_points,
    })
}

/// Fan triangulation of a convex polygon body as its own (flat) filling.
pub fn polygon_fan_candidate(body: &ConvexBody) -> FillingCandidate {
    let m = body.vertices.len();
    let mut vertices = body.vertices.clone();
    let center = {
        let mut c = DVector::zeros(2);
        for p in &body.vertices {
            c += p;
        }
        c / m as f64
    };
    vertices.push(center);
    let triangles: Vec<[usize; 3]> = (0..m).map(|i| [i, (i + 1) % m, m]).collect();
    FillingCandidate {
        mesh: MeshMetricSpace::from_triangles(vertices, triangles),
        boundary_loop: (0..m).collect(),
        boundary_points: body.vertices.clone(),
    }
}

/// Report of the l-infinity filling bound for one candidate.
#[derive(Debug, Clone)]
pub struct FillingReport {
    pub mass_x: f64,
    pub vol_c: f64,
    pub gap: f64,
    pub pushforward_mass: f64,
    pub boundary_chain_ok: bool,
    pub lipschitz_max: f64,
}

fn linf(p: &Point, q: &Point) -> f64 {
    (p - q).amax()
}

/// The Gromov observation: extend the boundary identification
/// coordinate-wise by McShane into l-infinity R^n, push the candidate
/// forward, and compare its intrinsic mass with the body's volume.  The
/// reported gap must be nonnegative up to mesh tolerance.
pub fn ell_infty_filling_bound(
    body: &ConvexBody,
    x: &FillingCandidate,
) -> Result<FillingReport, FillingError> {
    let nb = x.boundary_loop.len();
    assert_eq!(nb, x.boundary_points.len());
    // boundary isometry: consecutive mesh edges match ambient arc steps,
    // and no mesh pair is shorter than its l-infinity target distance
    for i in 0..nb {
        let j = (i + 1) % nb;
        let mesh = x.mesh.distance(x.boundary_loop[i], x.boundary_loop[j]);
        let amb = (&x.boundary_points[i] - &x.boundary_points[j]).norm();
        if (mesh - amb).abs() > 1e-9 {
            return Err(FillingError::NotIsometric {
                i: x.boundary_loop[i],
                j: x.boundary_loop[j],
                mesh,
                ambient: amb,
            });
        }
    }
    for i in 0..nb {
        let d = x.mesh.distances_from(x.boundary_loop[i]);
        for j in (i + 1)..nb {
            let mesh = d[x.boundary_loop[j]];
            let amb = linf(&x.boundary_points[i], &x.boundary_points[j]);
            if mesh < amb - 1e-9 {
                return Err(FillingError::NotIsometric {
                    i: x.boundary_loop[i],
                    j: x.boundary_loop[j],
                    mesh,
                    ambient: amb,
                });
            }
        }
    }

    // coordinate-wise McShane extension of the boundary identification
    let nv = x.mesh.vertices.len();
    let all: Vec<usize> = (0..nv).collect();
    let mut coords = vec![vec![0.0; nv]; body.n];
    for (c, coord) in coords.iter_mut().enumerate() {
        let f: Vec<f64> = x.boundary_points.iter().map(|p| p[c]).collect();
        *coord = mcshane_extend(&x.mesh, &x.boundary_loop, &f, 1.0, &all)?;
    }
    let image: Vec<Point> = (0..nv)
        .map(|v| pt(&(0..body.n).map(|c| coords[c][v]).collect::<Vec<_>>()))
        .collect();

    // per-edge Lipschitz constant of the extension into l-infinity
    let mut lip = 0.0f64;
    for &(a, b, l) in &x.mesh.edges {
        lip = lip.max(linf(&image[a], &image[b]) / l);
    }

    // push the candidate forward and check the boundary chain
    let mut cells = Vec::new();
    for t in &x.mesh.triangles {
        let verts = vec![image[t[0]].clone(), image[t[1]].clone(), image[t[2]].clone()];
        if let Ok(s) = Simplex::new(verts, 1) {
            cells.push(Cell {
                simplex: s,
                multiplicity: 1,
            });
        }
    }
    let pushed = PolyhedralCurrent::new(NormedAmbient::max_norm(body.n), 2, cells)?;
    let mut bcells = Vec::new();
    for (a, b) in x.mesh.boundary_edges() {
        if let Ok(s) = Simplex::new(vec![image[a].clone(), image[b].clone()], 1) {
            bcells.push(Cell {
                simplex: s,
                multiplicity: 1,
            });
        }
    }
    let pushed_boundary = PolyhedralCurrent::new(NormedAmbient::max_norm(body.n), 1, bcells)?;
    let target = {
        let mut cells = Vec::new();
        for i in 0..nb {
            let j = (i + 1) % nb;
            cells.push(Cell {
                simplex: Simplex::new(
                    vec![x.boundary_points[i].clone(), x.boundary_points[j].clone()],
                    1,
                )?,
                multiplicity: 1,
            });
        }
        PolyhedralCurrent::new(NormedAmbient::max_norm(body.n), 1, cells)?
    };
    let boundary_chain_ok = pushed_boundary
        .add(&target.negated())
        .map(|d| d.is_zero())
        .unwrap_or(false);

    let mass_x = x.mesh.total_area();
    Ok(FillingReport {
        mass_x,
        vol_c: body.volume,
        gap: mass_x - body.volume,
        pushforward_mass: pushed.total_mass(JacobianKind::MassStar)?,
        boundary_chain_ok,
        lipschitz_max: lip,
    })
}

/// Equally spaced sample directions on S^{n-1} (n = 2) with quadrature
/// weights n/m.
#[derive(Debug, Clone)]
pub struct SphereDiscretization {
    pub n: usize,
    pub m: usize,
    pub directions: Vec<Point>,
}

impl SphereDiscretization {
    pub fn circle(m: usize) -> Self {
        assert!(m >= 3);
        let directions = (0..m)
            .map(|j| {
                let a = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                pt(&[a.cos(), a.sin()])
            })
            .collect();
        Self {
            n: 2,
            m,
            directions,
        }
    }

    pub fn weight(&self) -> f64 {
        self.n as f64 / self.m as f64
    }

    /// Matrix whose rows are the sample directions.
    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.m, self.n, |i, j| self.directions[i][j])
    }
}

/// The embedding Phi_x(p_j) = <x, p_j>.
pub fn phi_embedding(x: &Point, d: &SphereDiscretization) -> DVector<f64> {
    assert_eq!(x.len(), d.n);
    DVector::from_fn(d.m, |j, _| d.directions[j].dot(x))
}

/// Weighted l2 norm with the quadrature weights n/m; for n = 2 and
/// m >= 3 this makes phi_embedding exactly norm-preserving.
pub fn weighted_l2_norm(v: &DVector<f64>, d: &SphereDiscretization) -> f64 {
    (d.weight() * v.norm_squared()).sqrt()
}

/// Report of the determinant non-increase probe.
#[derive(Debug, Clone)]
pub struct DetProbeReport {
    pub trials: usize,
    pub det_violations: usize,
    pub max_det: f64,
    pub ir_checked: usize,
    pub ir_violations: usize,
}

/// Random 1-Lipschitz linear maps into max-norm R^m: the weighted-l2
/// rescaling never increases n-volumes, and the inscribed-Riemannian
/// Jacobian comparison agrees.  The Jacobian comparison runs on every
/// sample with m <= 16 and on a 1% subsample otherwise (the max-norm
/// John ellipsoid is the expensive part).
pub fn det_nonincrease_probe(
    trials: usize,
    n: usize,
    m: usize,
    seed: u64,
) -> Result<DetProbeReport, FillingError> {
    assert!(m >= n);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut det_violations = 0;
    let mut max_det = 0.0f64;
    let mut ir_checked = 0;
    let mut ir_violations = 0;
    for trial in 0..trials {
        let mut a = DMatrix::from_fn(m, n, |_, _| rng.gen_range(-1.0..1.0f64));
        for i in 0..m {
            let norm = a.row(i).norm();
            if norm > 1.0 {
                let row = a.row(i) / norm;
                a.set_row(i, &row);
            }
        }
        let gram = a.transpose() * &a;
        let det = ((n as f64 / m as f64).powi(n as i32) * gram.determinant().max(0.0)).sqrt();
        max_det = max_det.max(det);
        if det > 1.0 + 1e-9 {
            det_violations += 1;
        }
        if m <= 16 || trial % 100 == 0 {
            ir_checked += 1;
            let weighted = Seminorm::new(
                a.clone(),
                AmbientNorm::Quadratic(DMatrix::identity(m, m) * (n as f64 / m as f64)),
            )
            .expect("scaled identity is positive definite");
            let maxnorm = Seminorm::new(a.clone(), AmbientNorm::MaxNorm).unwrap();
            let jw = jacobian(&weighted, JacobianKind::InscribedRiemannian)?;
            let jm = jacobian(&maxnorm, JacobianKind::InscribedRiemannian)?;
            if jw > jm + 1e-9 * (1.0 + jm) {
                ir_violations += 1;
            }
        }
    }
    Ok(DetProbeReport {
        trials,
        det_violations,
        max_det,
        ir_checked,
        ir_violations,
    })
}

/// The flat football M_eps = B+ u R_eps u B-, built as a single planar
/// triangulation in unfolded coordinates: the upper half-disk at y >= 0,
/// the strip occupying [-1, 1] x [-eps, 0] trimmed by half-width caps at
/// the ends, and the lower half-disk hanging below y = -eps.  The strip
/// is glued to the half-disk diameters only where |x| >= L/2; the middle
/// parts are slits.
#[derive(Debug, Clone)]
pub struct FootballReport {
    pub mesh: MeshMetricSpace,
    pub f_image: Vec<Point>,
    pub volume: f64,
    pub lipschitz_max: f64,
    pub pushforward_boundary: PolyhedralCurrent,
    pub winding: f64,
    pub eps: f64,
    pub big_l: f64,
    pub h: f64,
}

/// Winding number of a polyhedral 1-cycle in R^2 about a center, by the
/// signed-angle sum (order independent).
pub fn winding_number(t: &PolyhedralCurrent, center: &Point) -> f64 {
    let mut total = 0.0;
    for c in &t.cells {
        let u = &c.simplex.vertices[0] - center;
        let v = &c.simplex.vertices[1] - center;
        let angle = (u[0] * v[1] - u[1] * v[0]).atan2(u.dot(&v));
        total += (c.multiplicity * c.simplex.orientation as i64) as f64 * angle;
    }
    total / (2.0 * std::f64::consts::PI)
}

pub fn make_flat_football(eps: f64, big_l: f64, h: f64) -> Result<FootballReport, FillingError> {
    assert!(big_l > 0.0 && big_l < 2.0 && eps > 0.0 && h > 0.0);
    let nr = (1.0 / h).ceil() as usize;
    let na = (std::f64::consts::PI / h).ceil() as usize;
    let ns = ((eps / h).ceil() as usize).max(1);

    let mut vertices: Vec<Point> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let push_vertex = |vertices: &mut Vec<Point>, x: f64, y: f64| -> usize {
        vertices.push(pt(&[x, y]));
        vertices.len() - 1
    };
    // orient positively in the unfolded plane
    let push_triangle =
        |vertices: &[Point], triangles: &mut Vec<[usize; 3]>, a: usize, b: usize, c: usize| {
            let (p, q, r) = (&vertices[a], &vertices[b], &vertices[c]);
            let area2 = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
            if area2.abs() < 1e-18 {
                return;
            }
            if area2 > 0.0 {
                triangles.push([a, b, c]);
            } else {
                triangles.push([a, c, b]);
            }
        };

    // half-disk polar mesh at vertical offset y0, sign = +1 above / -1
    // below; returns grid ids [ring][angle] with ring 0 the center
    let half_disk = |vertices: &mut Vec<Point>,
                         triangles: &mut Vec<[usize; 3]>,
                         y0: f64,
                         sign: f64|
     -> Vec<Vec<usize>> {
        let mut ids = vec![vec![push_vertex(vertices, 0.0, y0)]];
        for j in 1..=nr {
            let r = j as f64 / nr as f64;
            let mut ring = Vec::with_capacity(na + 1);
            for i in 0..=na {
                let th = std::f64::consts::PI * i as f64 / na as f64;
                ring.push(push_vertex(
                    vertices,
                    r * th.cos(),
                    y0 + sign * r * th.sin(),
                ));
            }
            ids.push(ring);
        }
        for i in 0..na {
            push_triangle(vertices, triangles, ids[0][0], ids[1][i], ids[1][i + 1]);
        }
        for j in 1..nr {
            for i in 0..na {
                let (a, b) = (ids[j][i], ids[j][i + 1]);
                let (c, d) = (ids[j + 1][i], ids[j + 1][i + 1]);
                push_triangle(vertices, triangles, a, c, d);
                push_triangle(vertices, triangles, a, d, b);
            }
        }
        ids
    };

    let upper = half_disk(&mut vertices, &mut triangles, 0.0, 1.0);
    let lower = half_disk(&mut vertices, &mut triangles, -eps, -1.0);

    // diameter vertex of a half-disk at signed column position j in
    // -nr..=nr (angle 0 on the right, angle pi on the left)
    let diameter = |ids: &Vec<Vec<usize>>, j: i64| -> usize {
        if j == 0 {
            ids[0][0]
        } else if j > 0 {
            ids[j as usize][0]
        } else {
            ids[(-j) as usize][na]
        }
    };

    // strip columns: x = j/nr trimmed by the eps/2 end caps, rows from
    // y = 0 down to y = -eps; glued rows reuse the diameter vertices
    let trim = 1.0 - eps / 2.0;
    let cols: Vec<i64> = (-(nr as i64)..=(nr as i64))
        .filter(|&j| (j as f64 / nr as f64).abs() <= trim + 1e-12)
        .collect();
    let glue = |j: i64| (j as f64 / nr as f64).abs() >= big_l / 2.0 - 1e-12;
    let mut strip_ids: Vec<Vec<usize>> = Vec::new();
    for &j in &cols {
        let x = j as f64 / nr as f64;
        let mut col = Vec::with_capacity(ns + 1);
        for t in 0..=ns {
            let y = -eps * t as f64 / ns as f64;
            if t == 0 && glue(j) {
                col.push(diameter(&upper, j));
            } else if t == ns && glue(j) {
                col.push(diameter(&lower, j));
            } else {
                col.push(push_vertex(&mut vertices, x, y));
            }
        }
        strip_ids.push(col);
    }
    for w in 0..cols.len() - 1 {
        for t in 0..ns {
            let (a, b) = (strip_ids[w][t], strip_ids[w][t + 1]);
            let (c, d) = (strip_ids[w + 1][t], strip_ids[w + 1][t + 1]);
            push_triangle(&vertices, &mut triangles, a, b, d);
            push_triangle(&vertices, &mut triangles, a, d, c);
        }
    }

    let mesh = MeshMetricSpace::from_triangles(vertices, triangles);

    // the collapse map: identity above, squash the strip band, shift the
    // lower half-disk up by eps
    let f_image: Vec<Point> = mesh
        .vertices
        .iter()
        .map(|p| {
            let y = if p[1] >= 0.0 {
                p[1]
            } else if p[1] <= -eps {
                p[1] + eps
            } else {
                0.0
            };
            pt(&[p[0], y])
        })
        .collect();

    let mut lip = 0.0f64;
    for &(a, b, l) in &mesh.edges {
        lip = lip.max((&f_image[a] - &f_image[b]).norm() / l);
    }

    let mut bcells = Vec::new();
    for (a, b) in mesh.boundary_edges() {
        if let Ok(s) = Simplex::new(vec![f_image[a].clone(), f_image[b].clone()], 1) {
            bcells.push(Cell {
                simplex: s,
                multiplicity: 1,
            });
        }
    }
    let pushed = PolyhedralCurrent::new(NormedAmbient::euclidean(2), 1, bcells)?;
    let winding = winding_number(&pushed, &pt(&[0.0, 0.0]));

    Ok(FootballReport {
        volume: mesh.total_area(),
        lipschitz_max: lip,
        pushforward_boundary: pushed,
        winding,
        mesh,
        f_image,
        eps,
        big_l,
        h,
    })
}

/// Intrinsic distance between the probe points (0, t) on the upper
/// half-disk and its mirror on the lower one.
pub fn football_slit_distance(report: &FootballReport, t: f64) -> f64 {
    let find = |target_y: f64| {
        report
            .mesh
            .vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| {
                OrdF64(((p[0]).powi(2) + (p[1] - target_y).powi(2)).sqrt())
            })
            .unwrap()
            .0
    };
    let a = find(t);
    let b = find(-report.eps - t);
    report.mesh.distance(a, b)
}

/// The max-norm square non-rigidity witness.
#[derive(Debug, Clone)]
pub struct LinftySquareReport {
    pub mass_euclidean: f64,
    pub mass_linfty: f64,
    pub boundary_euclidean: f64,
    pub boundary_linfty: f64,
    pub witness: (Point, Point),
    pub dist_euclidean: f64,
    pub dist_linfty: f64,
}

pub fn make_linfty_square() -> Result<LinftySquareReport, FillingError> {
    let sq_e = crate::current::unit_square_current(AmbientNorm::Euclidean);
    let sq_m = crate::current::unit_square_current(AmbientNorm::MaxNorm);
    let p = pt(&[0.0, 0.0]);
    let q = pt(&[1.0, 1.0]);
    Ok(LinftySquareReport {
        mass_euclidean: sq_e.total_mass(JacobianKind::MassStar)?,
        mass_linfty: sq_m.total_mass(JacobianKind::MassStar)?,
        boundary_euclidean: sq_e.boundary().total_mass(JacobianKind::MassStar)?,
        boundary_linfty: sq_m.boundary().total_mass(JacobianKind::MassStar)?,
        dist_euclidean: (&q - &p).norm(),
        dist_linfty: (&q - &p).amax(),
        witness: (p, q),
    })
}
