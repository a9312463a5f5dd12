//! Simplicial flat norm F(t) = min { M(u) + M(v) : t = u + boundary(v) }
//! as a linear program over a shared simplicial complex, plus extrinsic
//! flat distances and a lower-semicontinuity probe.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::current::{Cell, CurrentError, NormedAmbient, PolyhedralCurrent};
use crate::geometry::{Point, Simplex};
use crate::jacobian::JacobianKind;
use crate::simplex_lp::{solve_with_basis, LpError};

#[derive(Debug, Error)]
pub enum FlatNormError {
    #[error("inputs do not share an ambient space")]
    AmbientMismatch,
    #[error("cell became degenerate after vertex snapping")]
    DegenerateCell,
    #[error("chain has wrong length: expected {expected}, got {got}")]
    ChainLength { expected: usize, got: usize },
    #[error("no cells of dimension {0} in the complex")]
    NoSuchDimension(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Current(#[from] CurrentError),
}

const SNAP: f64 = 1e-9;

/// A chain: real coefficients over the k-cells of a complex.
#[derive(Debug, Clone)]
pub struct ChainVector {
    pub dim: usize,
    pub coeffs: DVector<f64>,
}

/// A finite simplicial complex: cells per dimension as sorted vertex
/// index tuples, closed under taking faces.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    pub ambient: NormedAmbient,
    pub vertices: Vec<Point>,
    pub cells: Vec<Vec<Vec<usize>>>,
}

fn vertex_key(p: &Point) -> Vec<i64> {
    p.iter().map(|c| (c / SNAP).round() as i64).collect()
}

fn sort_with_parity(idx: &[usize]) -> (Vec<usize>, i64) {
    let mut v: Vec<usize> = idx.to_vec();
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (v, sign)
}

impl SimplicialComplex {
    pub fn new(ambient: NormedAmbient) -> Self {
        Self {
            ambient,
            vertices: Vec::new(),
            cells: Vec::new(),
        }
    }

    fn vertex_index(&mut self, p: &Point) -> usize {
        let key = vertex_key(p);
        match self
            .vertices
            .iter()
            .position(|q| vertex_key(q) == key)
        {
            Some(i) => i,
            None => {
                self.vertices.push(p.clone());
                self.vertices.len() - 1
            }
        }
    }

    /// Register a cell (sorted) and all of its faces; returns its index
    /// among d-cells.
    fn register(&mut self, sorted: Vec<usize>) -> usize {
        let d = sorted.len() - 1;
        while self.cells.len() <= d {
            self.cells.push(Vec::new());
        }
        if d > 0 {
            for omit in 0..sorted.len() {
                let mut face = sorted.clone();
                face.remove(omit);
                self.register(face);
            }
        }
        match self.cells[d].iter().position(|c| *c == sorted) {
            Some(i) => i,
            None => {
                self.cells[d].push(sorted);
                self.cells[d].len() - 1
            }
        }
    }

    pub fn num_cells(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, |c| c.len())
    }

    fn cell_position(&self, d: usize, sorted: &[usize]) -> Option<usize> {
        self.cells.get(d)?.iter().position(|c| c == sorted)
    }

    /// Signed incidence matrix of the boundary operator from d-cells to
    /// (d-1)-cells.
    pub fn boundary_matrix(&self, d: usize) -> DMatrix<f64> {
        let n = self.num_cells(d);
        let m = if d == 0 { 0 } else { self.num_cells(d - 1) };
        let mut b = DMatrix::zeros(m, n);
        if d == 0 {
            return b;
        }
        for (j, cell) in self.cells[d].iter().enumerate() {
            for omit in 0..cell.len() {
                let mut face = cell.clone();
                face.remove(omit);
                let i = self
                    .cell_position(d - 1, &face)
                    .expect("complex closed under faces");
                b[(i, j)] += if omit % 2 == 0 { 1.0 } else { -1.0 };
            }
        }
        b
    }

    fn cell_simplex(&self, d: usize, ci: usize) -> Simplex {
        let verts: Vec<Point> = self.cells[d][ci]
            .iter()
            .map(|&vi| self.vertices[vi].clone())
            .collect();
        Simplex::new(verts, 1).expect("complex cell")
    }

    /// Mass weight of one d-cell under a Jacobian kind (multiplicity 1).
    pub fn cell_weight(&self, d: usize, ci: usize, kind: JacobianKind) -> Result<f64, FlatNormError> {
        let carrier = PolyhedralCurrent::new(
            self.ambient.clone(),
            d,
            vec![Cell {
                simplex: self.cell_simplex(d, ci),
                multiplicity: 1,
            }],
        )?;
        Ok(carrier.total_mass(kind)?)
    }

    pub fn weights(&self, d: usize, kind: JacobianKind) -> Result<DVector<f64>, FlatNormError> {
        let n = self.num_cells(d);
        let mut w = DVector::zeros(n);
        for i in 0..n {
            w[i] = self.cell_weight(d, i, kind)?;
        }
        Ok(w)
    }

    pub fn chain_mass(
        &self,
        chain: &ChainVector,
        kind: JacobianKind,
    ) -> Result<f64, FlatNormError> {
        let w = self.weights(chain.dim, kind)?;
        Ok(chain
            .coeffs
            .iter()
            .zip(w.iter())
            .map(|(c, w)| c.abs() * w)
            .sum())
    }

    /// Turn an (integer-rounded) chain back into a polyhedral current.
    pub fn chain_to_current(&self, chain: &ChainVector) -> Result<PolyhedralCurrent, FlatNormError> {
        let mut cells = Vec::new();
        for (i, &c) in chain.coeffs.iter().enumerate() {
            let m = c.round() as i64;
            if m != 0 {
                cells.push(Cell {
                    simplex: self.cell_simplex(chain.dim, i),
                    multiplicity: m,
                });
            }
        }
        Ok(PolyhedralCurrent::new(
            self.ambient.clone(),
            chain.dim,
            cells,
        )?)
    }

    /// Evaluate a chain against an affine test tuple (see
    /// `PolyhedralCurrent::evaluate_affine`), allowing real coefficients.
    pub fn evaluate_affine(
        &self,
        chain: &ChainVector,
        a: &DVector<f64>,
        c: f64,
        pi: &DMatrix<f64>,
    ) -> f64 {
        let mut total = 0.0;
        for (i, &coef) in chain.coeffs.iter().enumerate() {
            if coef == 0.0 {
                continue;
            }
            let s = self.cell_simplex(chain.dim, i);
            let det = if chain.dim == 0 {
                1.0
            } else {
                (pi * s.edge_matrix()).determinant()
            };
            let h = a.dot(&s.centroid()) + c;
            total += coef * det * h / crate::geometry::factorial(chain.dim);
        }
        total
    }
}

/// Build the smallest complex containing every input as an integer chain;
/// returns the complex and each input's chain coordinates.
pub fn build_complex(
    currents: &[&PolyhedralCurrent],
) -> Result<(SimplicialComplex, Vec<ChainVector>), FlatNormError> {
    let ambient = currents
        .first()
        .map(|t| t.ambient.clone())
        .unwrap_or_else(|| NormedAmbient::euclidean(1));
    if currents.iter().any(|t| t.ambient != ambient) {
        return Err(FlatNormError::AmbientMismatch);
    }
    let mut complex = SimplicialComplex::new(ambient);
    // register all cells and their closures
    for t in currents {
        for cell in &t.cells {
            let idx: Vec<usize> = cell
                .simplex
                .vertices
                .iter()
                .map(|p| complex.vertex_index(p))
                .collect();
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != idx.len() {
                return Err(FlatNormError::DegenerateCell);
            }
            complex.register(sorted);
        }
    }
    // chain coordinates per input
    let mut chains = Vec::new();
    for t in currents {
        let d = t.k;
        let n = complex.num_cells(d);
        let mut coeffs = DVector::zeros(n);
        for cell in &t.cells {
            let idx: Vec<usize> = cell
                .simplex
                .vertices
                .iter()
                .map(|p| {
                    let key = vertex_key(p);
                    complex
                        .vertices
                        .iter()
                        .position(|q| vertex_key(q) == key)
                        .expect("registered vertex")
                })
                .collect();
            let (sorted, parity) = sort_with_parity(&idx);
            let ci = complex
                .cell_position(d, &sorted)
                .expect("registered cell");
            coeffs[ci] +=
                (cell.multiplicity * cell.simplex.orientation as i64 * parity) as f64;
        }
        chains.push(ChainVector { dim: d, coeffs });
    }
    Ok((complex, chains))
}

/// Result of a flat-norm solve.  `value` is the LP optimum (a lower bound
/// for the integer problem); `upper_bound` is the cost of the rounded
/// integer decomposition; when they coincide the result is certified
/// optimal over integer chains (automatic in codimension one, where the
/// boundary matrix is totally unimodular).
#[derive(Debug, Clone)]
pub struct FlatNormResult {
    pub value: f64,
    pub u: ChainVector,
    pub v: ChainVector,
    pub certified: bool,
    pub upper_bound: f64,
}

pub fn flat_norm(
    t: &ChainVector,
    complex: &SimplicialComplex,
    kind: JacobianKind,
) -> Result<FlatNormResult, FlatNormError> {
    let k = t.dim;
    let m = complex.num_cells(k);
    if m == 0 {
        return Err(FlatNormError::NoSuchDimension(k));
    }
    if t.coeffs.len() != m {
        return Err(FlatNormError::ChainLength {
            expected: m,
            got: t.coeffs.len(),
        });
    }
    let p = complex.num_cells(k + 1);
    let wk = complex.weights(k, kind)?;
    let wk1 = if p > 0 {
        complex.weights(k + 1, kind)?
    } else {
        DVector::zeros(0)
    };
    let bmat = if p > 0 {
        complex.boundary_matrix(k + 1)
    } else {
        DMatrix::zeros(m, 0)
    };

    // variables [u+, u-, v+, v-]; constraints u+ - u- + B v+ - B v- = t
    let n = 2 * m + 2 * p;
    let mut a = DMatrix::zeros(m, n);
    for i in 0..m {
        a[(i, i)] = 1.0;
        a[(i, m + i)] = -1.0;
    }
    if p > 0 {
        a.view_mut((0, 2 * m), (m, p)).copy_from(&bmat);
        a.view_mut((0, 2 * m + p), (m, p)).copy_from(&(-&bmat));
    }
    let mut cost = DVector::zeros(n);
    for i in 0..m {
        cost[i] = wk[i];
        cost[m + i] = wk[i];
    }
    for j in 0..p {
        cost[2 * m + j] = wk1[j];
        cost[2 * m + p + j] = wk1[j];
    }
    // feasible starting basis: the signed identity columns matching t
    let basis: Vec<usize> = (0..m)
        .map(|i| if t.coeffs[i] >= 0.0 { i } else { m + i })
        .collect();
    let sol = solve_with_basis(&a, &t.coeffs, &cost, basis)?;

    let u = ChainVector {
        dim: k,
        coeffs: DVector::from_fn(m, |i, _| sol.x[i] - sol.x[m + i]),
    };
    let v = ChainVector {
        dim: k + 1,
        coeffs: DVector::from_fn(p, |j, _| sol.x[2 * m + j] - sol.x[2 * m + p + j]),
    };
    // integer certificate: round v, recompute u exactly, compare costs
    let v_round = DVector::from_fn(p, |j, _| v.coeffs[j].round());
    let u_round = &t.coeffs - &bmat * &v_round;
    let upper: f64 = (0..m).map(|i| u_round[i].abs() * wk[i]).sum::<f64>()
        + (0..p).map(|j| v_round[j].abs() * wk1[j]).sum::<f64>();
    let certified = (upper - sol.value).abs() <= 1e-9 * (1.0 + sol.value.abs());
    Ok(FlatNormResult {
        value: sol.value,
        u,
        v,
        certified,
        upper_bound: upper,
    })
}

/// Flat norm of the difference chain of two currents in a shared
/// complex.  This is an extrinsic UPPER BOUND for the intrinsic flat
/// distance: the infimum over all complete ambient spaces is out of
/// scope, and reports must carry this caveat.
pub const FLAT_DISTANCE_CAVEAT: &str =
    "extrinsic upper bound: intrinsic flat distance infimum over all ambient embeddings is not computed";

pub fn flat_distance(
    complex: &SimplicialComplex,
    t1: &ChainVector,
    t2: &ChainVector,
    kind: JacobianKind,
) -> Result<FlatNormResult, FlatNormError> {
    assert_eq!(t1.dim, t2.dim);
    let diff = ChainVector {
        dim: t1.dim,
        coeffs: &t1.coeffs - &t2.coeffs,
    };
    flat_norm(&diff, complex, kind)
}

/// Exhaustive oracle over v in {-1, 0, 1}^p: the integer flat norm.
/// Exponential in the number of (k+1)-cells; only for small complexes.
pub fn brute_force_flat_norm(
    complex: &SimplicialComplex,
    t: &ChainVector,
    kind: JacobianKind,
) -> Result<f64, FlatNormError> {
    let k = t.dim;
    let p = complex.num_cells(k + 1);
    let wk = complex.weights(k, kind)?;
    let wk1 = complex.weights(k + 1, kind)?;
    let b = complex.boundary_matrix(k + 1);
    let mut best = f64::INFINITY;
    for code in 0..3usize.pow(p as u32) {
        let mut v = DVector::zeros(p);
        let mut c = code;
        for j in 0..p {
            v[j] = (c % 3) as f64 - 1.0;
            c /= 3;
        }
        let u = &t.coeffs - &b * &v;
        let cost: f64 = u.iter().zip(wk.iter()).map(|(x, w)| x.abs() * w).sum::<f64>()
            + v.iter().zip(wk1.iter()).map(|(x, w)| x.abs() * w).sum::<f64>();
        best = best.min(cost);
    }
    Ok(best)
}

/// Lower semicontinuity of mass along a flat-converging sequence.
#[derive(Debug, Clone)]
pub struct LscReport {
    pub masses: Vec<f64>,
    pub limit_mass: f64,
    pub liminf: f64,
    pub ok: bool,
}

pub fn lower_semicontinuity_probe(
    complex: &SimplicialComplex,
    sequence: &[ChainVector],
    limit: &ChainVector,
    kind: JacobianKind,
) -> Result<LscReport, FlatNormError> {
    let masses: Result<Vec<f64>, _> = sequence
        .iter()
        .map(|t| complex.chain_mass(t, kind))
        .collect();
    let masses = masses?;
    let limit_mass = complex.chain_mass(limit, kind)?;
    // liminf of the tail of a finite sequence: min over the last half
    let tail = masses.len().div_ceil(2);
    let liminf = masses[masses.len() - tail..]
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    Ok(LscReport {
        ok: limit_mass <= liminf + 1e-9,
        masses,
        limit_mass,
        liminf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::current::{curve_current, unit_square_current};
    use crate::geometry::pt;
    use crate::seminorm::AmbientNorm;
    use rand::{Rng, SeedableRng};

    fn square_setup(side: f64) -> (SimplicialComplex, ChainVector) {
        let sheet = unit_square_current(AmbientNorm::Euclidean)
            .push_forward(crate::current::NormedAmbient::euclidean(2), |p| side * p)
            .unwrap();
        let (complex, chains) = build_complex(&[&sheet]).unwrap();
        let b2 = complex.boundary_matrix(2);
        let t = ChainVector {
            dim: 1,
            coeffs: &b2 * &chains[0].coeffs,
        };
        (complex, t)
    }

    fn brute_force(complex: &SimplicialComplex, t: &ChainVector, kind: JacobianKind) -> f64 {
        brute_force_flat_norm(complex, t, kind).unwrap()
    }

    #[test]
    fn square_complex_shape() {
        let (complex, _) = square_setup(1.0);
        assert_eq!(complex.num_cells(0), 4);
        assert_eq!(complex.num_cells(1), 5);
        assert_eq!(complex.num_cells(2), 2);
    }

    #[test]
    fn boundary_of_boundary_zero() {
        let (complex, _) = square_setup(1.0);
        let prod = complex.boundary_matrix(1) * complex.boundary_matrix(2);
        assert_eq!(prod, DMatrix::zeros(4, 2));
    }

    #[test]
    fn chain_masses_reproduce_inputs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let pts: Vec<Point> = (0..4)
                .map(|_| pt(&[rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]))
                .collect();
            let t = match curve_current(NormedAmbient::euclidean(2), &pts, true) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let (complex, chains) = build_complex(&[&t]).unwrap();
            let m = complex.chain_mass(&chains[0], JacobianKind::MassStar).unwrap();
            assert!((m - t.total_mass(JacobianKind::MassStar).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn unit_square_boundary_fills() {
        let (complex, t) = square_setup(1.0);
        let r = flat_norm(&t, &complex, JacobianKind::MassStar).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9, "value {}", r.value);
        assert!(r.certified);
        assert!(r.u.coeffs.iter().all(|c| c.abs() < 1e-9));
        let oracle = brute_force(&complex, &t, JacobianKind::MassStar);
        assert!((r.value - oracle).abs() < 1e-9);
    }

    #[test]
    fn side_s_square_min_area_perimeter() {
        for &s in &[0.5, 8.0] {
            let (complex, t) = square_setup(s);
            let r = flat_norm(&t, &complex, JacobianKind::MassStar).unwrap();
            let expect = (s * s).min(4.0 * s);
            assert!((r.value - expect).abs() < 1e-9, "s={s}: {}", r.value);
            assert!(r.certified);
            let oracle = brute_force(&complex, &t, JacobianKind::MassStar);
            assert!((r.value - oracle).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_chain_zero_norm() {
        let (complex, t) = square_setup(1.0);
        let z = ChainVector {
            dim: 1,
            coeffs: DVector::zeros(t.coeffs.len()),
        };
        let r = flat_norm(&z, &complex, JacobianKind::MassStar).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn norm_axioms_and_mass_bound() {
        let (complex, t) = square_setup(1.0);
        let m = t.coeffs.len();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let s = ChainVector {
                dim: 1,
                coeffs: DVector::from_fn(m, |_, _| rng.gen_range(-2..3) as f64),
            };
            let q = ChainVector {
                dim: 1,
                coeffs: DVector::from_fn(m, |_, _| rng.gen_range(-2..3) as f64),
            };
            let fs = flat_norm(&s, &complex, JacobianKind::MassStar).unwrap().value;
            let fq = flat_norm(&q, &complex, JacobianKind::MassStar).unwrap().value;
            let sum = ChainVector {
                dim: 1,
                coeffs: &s.coeffs + &q.coeffs,
            };
            let fsum = flat_norm(&sum, &complex, JacobianKind::MassStar)
                .unwrap()
                .value;
            assert!(fsum <= fs + fq + 1e-9);
            let neg = ChainVector {
                dim: 1,
                coeffs: -2.0 * &s.coeffs,
            };
            let fneg = flat_norm(&neg, &complex, JacobianKind::MassStar)
                .unwrap()
                .value;
            assert!((fneg - 2.0 * fs).abs() < 1e-9);
            assert!(fs <= complex.chain_mass(&s, JacobianKind::MassStar).unwrap() + 1e-12);
        }
    }

    fn ladder(h: f64) -> (SimplicialComplex, ChainVector, ChainVector) {
        let seg1 = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, 0.0]), pt(&[1.0, 0.0])],
            false,
        )
        .unwrap();
        let seg2 = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, h]), pt(&[1.0, h])],
            false,
        )
        .unwrap();
        // connecting rectangle as two triangles
        let tris = PolyhedralCurrent::new(
            NormedAmbient::euclidean(2),
            2,
            vec![
                Cell {
                    simplex: Simplex::new(
                        vec![pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[1.0, h])],
                        1,
                    )
                    .unwrap(),
                    multiplicity: 1,
                },
                Cell {
                    simplex: Simplex::new(
                        vec![pt(&[0.0, 0.0]), pt(&[1.0, h]), pt(&[0.0, h])],
                        1,
                    )
                    .unwrap(),
                    multiplicity: 1,
                },
            ],
        )
        .unwrap();
        let (complex, chains) = build_complex(&[&seg1, &seg2, &tris]).unwrap();
        (complex, chains[0].clone(), chains[1].clone())
    }

    #[test]
    fn parallel_segments_distance() {
        let h = 0.1;
        let (complex, t1, t2) = ladder(h);
        let r = flat_distance(&complex, &t1, &t2, JacobianKind::MassStar).unwrap();
        // fill with the rectangle: area h plus two side rungs of length h
        assert!(r.value <= h + 2.0 * h + 1e-9, "value {}", r.value);
        let diff = ChainVector {
            dim: 1,
            coeffs: &t1.coeffs - &t2.coeffs,
        };
        let oracle = brute_force(&complex, &diff, JacobianKind::MassStar);
        assert!((r.value - oracle).abs() < 1e-9);
        // identical inputs are at distance zero
        let zero = flat_distance(&complex, &t1, &t1, JacobianKind::MassStar).unwrap();
        assert_eq!(zero.value, 0.0);
    }

    #[test]
    fn flat_convergence_implies_weak_convergence() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let forms: Vec<(DVector<f64>, f64, DMatrix<f64>)> = (0..10)
            .map(|_| {
                (
                    DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0)),
                    rng.gen_range(-1.0..1.0),
                    DMatrix::from_fn(1, 2, |_, _| rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        for &h in &[0.1, 0.01, 0.001] {
            let (complex, t1, t2) = ladder(h);
            let f = flat_distance(&complex, &t1, &t2, JacobianKind::MassStar)
                .unwrap()
                .value;
            for (a, c, pi) in &forms {
                let e1 = complex.evaluate_affine(&t1, a, *c, pi);
                let e2 = complex.evaluate_affine(&t2, a, *c, pi);
                // evaluations differ by at most a form-dependent multiple
                // of the flat distance
                assert!((e1 - e2).abs() <= 10.0 * f + 1e-6);
            }
        }
    }

    #[test]
    fn lsc_constant_and_zigzag() {
        let (complex, t) = square_setup(1.0);
        let seq = vec![t.clone(), t.clone(), t.clone()];
        let rep = lower_semicontinuity_probe(&complex, &seq, &t, JacobianKind::MassStar).unwrap();
        assert!(rep.ok);
        assert!((rep.liminf - rep.limit_mass).abs() < 1e-12);

        // zigzag staircases converging to the diagonal keep length 2
        let diag = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[0.0, 0.0]), pt(&[1.0, 1.0])],
            false,
        )
        .unwrap();
        let zig = |n: usize| {
            let mut pts = vec![pt(&[0.0, 0.0])];
            for i in 0..n {
                let x0 = i as f64 / n as f64;
                let x1 = (i + 1) as f64 / n as f64;
                pts.push(pt(&[x1, x0]));
                pts.push(pt(&[x1, x1]));
            }
            curve_current(NormedAmbient::euclidean(2), &pts, false).unwrap()
        };
        let zigs: Vec<PolyhedralCurrent> = (1..5).map(zig).collect();
        let mut inputs: Vec<&PolyhedralCurrent> = vec![&diag];
        inputs.extend(zigs.iter());
        let (complex, chains) = build_complex(&inputs).unwrap();
        let rep = lower_semicontinuity_probe(
            &complex,
            &chains[1..],
            &chains[0],
            JacobianKind::MassStar,
        )
        .unwrap();
        assert!(rep.ok);
        assert!((rep.liminf - 2.0).abs() < 1e-12);
        assert!((rep.limit_mass - 2f64.sqrt()).abs() < 1e-12);
        assert!(rep.liminf > rep.limit_mass + 0.5);
    }
}
