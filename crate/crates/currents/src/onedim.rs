//! Decomposition of integer polyhedral 1-currents into simple loops and
//! injective paths, and the dimension-one rigidity chain.

use std::collections::BinaryHeap;

use thiserror::Error;

use crate::current::PolyhedralCurrent;
use crate::geometry::Point;
use crate::jacobian::JacobianKind;

#[derive(Debug, Error)]
pub enum OnedimError {
    #[error("input is not a 1-current")]
    NotOneDimensional,
    #[error("inconsistent boundary parity: leftover edges form no cycle and no path")]
    InconsistentParity,
    #[error("map is not 1-Lipschitz on edge ({0}, {1})")]
    NotLipschitz(usize, usize),
    #[error("boundary condition violated: push-forward of the boundary is not [b] - [a]")]
    BoundaryMismatch,
}

/// A 1-current as a directed multigraph: merged parallel edges with
/// integer multiplicities and positive lengths.
#[derive(Debug, Clone)]
pub struct CurrentGraph {
    pub vertices: Vec<Point>,
    /// (tail, head, multiplicity, length); tail < head after merging,
    /// negative multiplicity meaning the reversed orientation
    pub edges: Vec<(usize, usize, i64, f64)>,
}

const SNAP: f64 = 1e-9;

fn vertex_key(p: &Point) -> Vec<i64> {
    p.iter().map(|c| (c / SNAP).round() as i64).collect()
}

impl CurrentGraph {
    /// Build the graph of a polyhedral 1-current, snapping vertices and
    /// measuring edges by their mass* length in the ambient norm.
    pub fn from_current(t: &PolyhedralCurrent) -> Result<Self, OnedimError> {
        if t.k != 1 {
            return Err(OnedimError::NotOneDimensional);
        }
        let mut vertices: Vec<Point> = Vec::new();
        let mut keys: Vec<Vec<i64>> = Vec::new();
        let index_of = |p: &Point, vertices: &mut Vec<Point>, keys: &mut Vec<Vec<i64>>| {
            let k = vertex_key(p);
            match keys.iter().position(|q| *q == k) {
                Some(i) => i,
                None => {
                    vertices.push(p.clone());
                    keys.push(k);
                    vertices.len() - 1
                }
            }
        };
        let mut edges: Vec<(usize, usize, i64, f64)> = Vec::new();
        for c in &t.cells {
            let a = index_of(&c.simplex.vertices[0], &mut vertices, &mut keys);
            let b = index_of(&c.simplex.vertices[1], &mut vertices, &mut keys);
            let mult = c.multiplicity * c.simplex.orientation as i64;
            let len = t.cell_mass(c, JacobianKind::MassStar).unwrap_or(0.0)
                / c.multiplicity.unsigned_abs() as f64;
            let (lo, hi, m) = if a < b { (a, b, mult) } else { (b, a, -mult) };
            match edges.iter_mut().find(|(x, y, _, _)| *x == lo && *y == hi) {
                Some(e) => e.2 += m,
                None => edges.push((lo, hi, m, len)),
            }
        }
        edges.retain(|e| e.2 != 0);
        Ok(Self { vertices, edges })
    }

    /// Total mass: sum of |multiplicity| * length.
    pub fn total_mass(&self) -> f64 {
        self.edges
            .iter()
            .map(|(_, _, m, l)| m.unsigned_abs() as f64 * l)
            .sum()
    }

    /// Net signed degree (out minus in) per vertex; the boundary of the
    /// current places this multiplicity at each vertex.
    pub fn net_degree(&self) -> Vec<i64> {
        let mut deg = vec![0i64; self.vertices.len()];
        for &(a, b, m, _) in &self.edges {
            // oriented a -> b for m > 0
            deg[b] += m;
            deg[a] -= m;
        }
        deg
    }
}

/// Decomposition into injective paths and simple loops (vertex index
/// sequences; loops do not repeat the initial vertex).
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub paths: Vec<Vec<usize>>,
    pub loops: Vec<Vec<usize>>,
    pub path_lengths: Vec<f64>,
    pub loop_lengths: Vec<f64>,
}

impl Decomposition {
    pub fn total_length(&self) -> f64 {
        self.path_lengths.iter().sum::<f64>() + self.loop_lengths.iter().sum::<f64>()
    }
}

/// Directed edge multiset with remaining capacities, after expanding
/// multiplicities and orienting negative edges backwards.
struct Residual {
    n: usize,
    /// (tail, head, length, remaining copies)
    arcs: Vec<(usize, usize, f64, u64)>,
}

impl Residual {
    fn from_graph(g: &CurrentGraph) -> Self {
        let arcs = g
            .edges
            .iter()
            .map(|&(a, b, m, l)| {
                if m > 0 {
                    (a, b, l, m as u64)
                } else {
                    (b, a, l, (-m) as u64)
                }
            })
            .collect();
        Self {
            n: g.vertices.len(),
            arcs,
        }
    }

    fn out_arcs(&self, v: usize) -> impl Iterator<Item = (usize, &(usize, usize, f64, u64))> {
        self.arcs
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.0 == v && a.3 > 0)
    }

    /// Dijkstra over remaining arcs; returns distances and predecessor
    /// arc indices.
    fn shortest_from(&self, src: usize) -> (Vec<f64>, Vec<Option<usize>>) {
        let mut dist = vec![f64::INFINITY; self.n];
        let mut pred: Vec<Option<usize>> = vec![None; self.n];
        let mut heap: BinaryHeap<(std::cmp::Reverse<ordered>, usize)> = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push((std::cmp::Reverse(ordered(0.0)), src));
        while let Some((std::cmp::Reverse(ordered(d)), v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for (ai, arc) in self.out_arcs(v) {
                let nd = d + arc.2;
                if nd < dist[arc.1] {
                    dist[arc.1] = nd;
                    pred[arc.1] = Some(ai);
                    heap.push((std::cmp::Reverse(ordered(nd)), arc.1));
                }
            }
        }
        (dist, pred)
    }
}

#[derive(PartialEq, PartialOrd)]
#[allow(non_camel_case_types)]
struct ordered(f64);
impl Eq for ordered {}
impl Ord for ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.partial_cmp(other).unwrap()
    }
}

/// Decompose an integer 1-current into simple loops (shortest first) and
/// injective paths, conserving the edge multiset exactly.
pub fn decompose_1current(t: &PolyhedralCurrent) -> Result<Decomposition, OnedimError> {
    let g = CurrentGraph::from_current(t)?;
    decompose_graph(&g)
}

pub fn decompose_graph(g: &CurrentGraph) -> Result<Decomposition, OnedimError> {
    let mut res = Residual::from_graph(g);
    let mut loops = Vec::new();
    let mut loop_lengths = Vec::new();

    // peel the globally shortest simple cycle until none remains
    loop {
        let mut best: Option<(f64, Vec<usize>)> = None;
        for ai in 0..res.arcs.len() {
            let (tail, head, len, copies) = res.arcs[ai];
            if copies == 0 {
                continue;
            }
            let (dist, pred) = res.shortest_from(head);
            if dist[tail].is_finite() {
                let total = len + dist[tail];
                if best.as_ref().map_or(true, |(b, _)| total < *b - 1e-15) {
                    // arc path head -> tail, then the closing arc
                    let mut arcs_on_cycle = vec![ai];
                    let mut v = tail;
                    while v != head {
                        let pa = pred[v].unwrap();
                        arcs_on_cycle.push(pa);
                        v = res.arcs[pa].0;
                    }
                    arcs_on_cycle.reverse();
                    best = Some((total, arcs_on_cycle));
                }
            }
        }
        match best {
            None => break,
            Some((total, arcs_on_cycle)) => {
                let cycle: Vec<usize> =
                    arcs_on_cycle.iter().map(|&ai| res.arcs[ai].0).collect();
                for ai in arcs_on_cycle {
                    res.arcs[ai].3 -= 1;
                }
                loops.push(cycle);
                loop_lengths.push(total);
            }
        }
    }

    // the residual is acyclic: walk paths from surplus vertices
    let mut paths = Vec::new();
    let mut path_lengths = Vec::new();
    loop {
        let mut surplus = vec![0i64; res.n];
        for &(a, b, _, c) in &res.arcs {
            surplus[a] += c as i64;
            surplus[b] -= c as i64;
        }
        let start = match (0..res.n).find(|&v| surplus[v] > 0) {
            Some(v) => v,
            None => {
                if res.arcs.iter().any(|a| a.3 > 0) {
                    return Err(OnedimError::InconsistentParity);
                }
                break;
            }
        };
        let mut path = vec![start];
        let mut len = 0.0;
        let mut v = start;
        loop {
            let next = res
                .out_arcs(v)
                .min_by_key(|(_, a)| a.1)
                .map(|(ai, _)| ai);
            match next {
                Some(ai) => {
                    res.arcs[ai].3 -= 1;
                    len += res.arcs[ai].2;
                    v = res.arcs[ai].1;
                    path.push(v);
                }
                None => break,
            }
        }
        paths.push(path);
        path_lengths.push(len);
    }

    Ok(Decomposition {
        paths,
        loops,
        path_lengths,
        loop_lengths,
    })
}

/// Outcome of the dimension-one rigidity check.
#[derive(Debug, Clone, PartialEq)]
pub enum RigidityVerdict {
    Rigid,
    NotRigid { witness: String },
}

/// Run the chain `|b - a| <= d(x1, x2) <= length(gamma) <= M(T)` for a
/// graph 1-current mapped 1-Lipschitz onto the interval `[a, b]` by the
/// vertex values `f`.  Returns `Rigid` when every link is an equality,
/// the decomposition is a single injective path and no loops remain;
/// otherwise reports the first strict inequality.
pub fn check_n1_rigidity(
    g: &CurrentGraph,
    f: &[f64],
    interval: (f64, f64),
) -> Result<RigidityVerdict, OnedimError> {
    let (a, b) = interval;
    assert_eq!(f.len(), g.vertices.len());
    for &(u, v, _, l) in &g.edges {
        if (f[u] - f[v]).abs() > l + 1e-12 {
            return Err(OnedimError::NotLipschitz(u, v));
        }
    }
    // boundary condition: net degrees push forward to [b] - [a]
    let deg = g.net_degree();
    let mut signed: Vec<(f64, i64)> = Vec::new();
    for (v, &d) in deg.iter().enumerate() {
        if d != 0 {
            signed.push((f[v], d));
        }
    }
    let x2 = deg.iter().position(|&d| d > 0);
    let x1 = deg.iter().position(|&d| d < 0);
    let ok = signed.len() == 2
        && x1.is_some()
        && x2.is_some()
        && deg[x1.unwrap()] == -1
        && deg[x2.unwrap()] == 1
        && (f[x1.unwrap()] - a).abs() < 1e-12
        && (f[x2.unwrap()] - b).abs() < 1e-12;
    if !ok {
        return Err(OnedimError::BoundaryMismatch);
    }
    let (x1, x2) = (x1.unwrap(), x2.unwrap());

    // undirected graph distance between the boundary points
    let sym = {
        let mut arcs: Vec<(usize, usize, f64, u64)> = Vec::new();
        for &(u, v, m, l) in &g.edges {
            arcs.push((u, v, l, m.unsigned_abs()));
            arcs.push((v, u, l, m.unsigned_abs()));
        }
        Residual {
            n: g.vertices.len(),
            arcs,
        }
    };
    let d12 = sym.shortest_from(x1).0[x2];

    let dec = decompose_graph(g)?;
    let mass = g.total_mass();
    let gamma_len = dec.path_lengths.first().copied().unwrap_or(0.0);

    let tol = 1e-12 * (1.0 + mass);
    if d12 > (b - a).abs() + tol {
        return Ok(RigidityVerdict::NotRigid {
            witness: format!("d(x1,x2) = {:.12} > |b-a| = {:.12}", d12, (b - a).abs()),
        });
    }
    if !dec.loops.is_empty() || dec.paths.len() != 1 {
        return Ok(RigidityVerdict::NotRigid {
            witness: format!(
                "M(T) = {:.12} > l(gamma) = {:.12} (extra loops or paths)",
                mass, gamma_len
            ),
        });
    }
    if gamma_len > d12 + tol {
        return Ok(RigidityVerdict::NotRigid {
            witness: format!("l(gamma) = {:.12} > d(x1,x2) = {:.12}", gamma_len, d12),
        });
    }
    if mass > gamma_len + tol {
        return Ok(RigidityVerdict::NotRigid {
            witness: format!("M(T) = {:.12} > l(gamma) = {:.12}", mass, gamma_len),
        });
    }
    Ok(RigidityVerdict::Rigid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::current::{curve_current, NormedAmbient};
    use crate::geometry::pt;
    use rand::{Rng, SeedableRng};

    fn expanded_edge_count(d: &Decomposition) -> usize {
        d.paths.iter().map(|p| p.len() - 1).sum::<usize>()
            + d.loops.iter().map(|l| l.len()).sum::<usize>()
    }

    #[test]
    fn segment_plus_triangle_loop() {
        let seg = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, 0.0]), pt(&[1.0, 0.0])],
            false,
        )
        .unwrap();
        let tri = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[3.0, 0.0]), pt(&[4.0, 0.0]), pt(&[3.0, 1.0])],
            true,
        )
        .unwrap();
        let t = seg.add(&tri).unwrap();
        let d = decompose_1current(&t).unwrap();
        assert_eq!(d.paths.len(), 1);
        assert_eq!(d.loops.len(), 1);
        let boundary_mass = t
            .boundary()
            .total_mass(JacobianKind::MassStar)
            .unwrap();
        assert_eq!(boundary_mass, 2.0 * d.paths.len() as f64);
        assert!((d.total_length() - t.total_mass(JacobianKind::MassStar).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn figure_eight_two_loops() {
        let a = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[0.5, 1.0])],
            true,
        )
        .unwrap();
        let b = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, 0.0]), pt(&[-1.0, 0.0]), pt(&[-0.5, -1.0])],
            true,
        )
        .unwrap();
        let t = a.add(&b).unwrap();
        let d = decompose_1current(&t).unwrap();
        assert_eq!(d.paths.len(), 0);
        assert_eq!(d.loops.len(), 2);
        assert_eq!(expanded_edge_count(&d), 6);
    }

    #[test]
    fn random_integer_graphs_conserve_edges() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            // random graph on a grid of points; random closed structure by
            // taking boundary-consistent multiloops
            let n = rng.gen_range(3..7);
            let pts: Vec<Point> = (0..n)
                .map(|_| pt(&[rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]))
                .collect();
            // random cycles through random vertex subsets
            let mut cells = Vec::new();
            for _ in 0..rng.gen_range(1..4) {
                let mut order: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    order.swap(i, rng.gen_range(0..=i));
                }
                let len = rng.gen_range(3..=n);
                let cyc: Vec<Point> = order[..len].iter().map(|&i| pts[i].clone()).collect();
                match curve_current(NormedAmbient::euclidean(2), &cyc, true) {
                    Ok(c) => cells.push(c),
                    Err(_) => continue,
                }
            }
            if cells.is_empty() {
                continue;
            }
            let mut t = cells[0].clone();
            for c in &cells[1..] {
                t = t.add(c).unwrap();
            }
            if t.is_zero() {
                continue;
            }
            let g = CurrentGraph::from_current(&t).unwrap();
            let d = decompose_graph(&g).unwrap();
            // cycle currents decompose into loops only
            assert_eq!(d.paths.len(), 0);
            let input_edges: u64 = g.edges.iter().map(|e| e.2.unsigned_abs()).sum();
            assert_eq!(expanded_edge_count(&d) as u64, input_edges);
            assert!(
                (d.total_length() - g.total_mass()).abs() < 1e-12 * (1.0 + g.total_mass())
            );
        }
    }

    #[test]
    fn straight_segment_is_rigid() {
        let t = curve_current(
            NormedAmbient::euclidean(1),
            &[pt(&[-1.0]), pt(&[0.0]), pt(&[1.0])],
            false,
        )
        .unwrap();
        let g = CurrentGraph::from_current(&t).unwrap();
        let f: Vec<f64> = g.vertices.iter().map(|v| v[0]).collect();
        let v = check_n1_rigidity(&g, &f, (-1.0, 1.0)).unwrap();
        assert_eq!(v, RigidityVerdict::Rigid);
    }

    #[test]
    fn extra_loop_breaks_rigidity() {
        let seg = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[-1.0, 0.0]), pt(&[1.0, 0.0])],
            false,
        )
        .unwrap();
        let sq = curve_current(
            NormedAmbient::euclidean(2),
            &[
                pt(&[5.0, 0.0]),
                pt(&[5.025, 0.0]),
                pt(&[5.025, 0.025]),
                pt(&[5.0, 0.025]),
            ],
            true,
        )
        .unwrap();
        let t = seg.add(&sq).unwrap();
        let g = CurrentGraph::from_current(&t).unwrap();
        let f: Vec<f64> = g.vertices.iter().map(|v| v[0].clamp(-1.0, 1.0)).collect();
        let v = check_n1_rigidity(&g, &f, (-1.0, 1.0)).unwrap();
        match v {
            RigidityVerdict::NotRigid { witness } => {
                assert!(witness.contains("M(T)"), "witness: {witness}")
            }
            _ => panic!("expected NotRigid"),
        }
    }

    #[test]
    fn zigzag_breaks_rigidity() {
        let t = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[-1.0, 0.0]), pt(&[0.0, 0.75]), pt(&[1.0, 0.0])],
            false,
        )
        .unwrap();
        let g = CurrentGraph::from_current(&t).unwrap();
        let f: Vec<f64> = g.vertices.iter().map(|v| v[0]).collect();
        let v = check_n1_rigidity(&g, &f, (-1.0, 1.0)).unwrap();
        match v {
            RigidityVerdict::NotRigid { witness } => {
                assert!(witness.contains("d(x1,x2)"), "witness: {witness}")
            }
            _ => panic!("expected NotRigid"),
        }
    }

    #[test]
    fn non_lipschitz_rejected() {
        let t = curve_current(
            NormedAmbient::euclidean(1),
            &[pt(&[0.0]), pt(&[1.0])],
            false,
        )
        .unwrap();
        let g = CurrentGraph::from_current(&t).unwrap();
        let f = vec![0.0, 2.0];
        assert!(matches!(
            check_n1_rigidity(&g, &f, (0.0, 2.0)),
            Err(OnedimError::NotLipschitz(_, _))
        ));
    }
}
