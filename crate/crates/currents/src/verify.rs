//! Acceptance suite: the library's headline identities bundled as
//! deterministic, seeded pass/fail checks shared by the CLI and the
//! integration tests.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::{cone_mass_report, regular_polygon_current};
use crate::current::{curve_current, unit_square_current, Cell, NormedAmbient, PolyhedralCurrent};
use crate::filling::{
    det_nonincrease_probe, ell_infty_filling_bound, football_slit_distance,
    graph_surface_candidate, make_flat_football, make_linfty_square, phi_embedding,
    polygon_fan_candidate, ConvexBody, SphereDiscretization,
};
use crate::flatnorm::{build_complex, brute_force_flat_norm, flat_norm, ChainVector};
use crate::geometry::{pt, Point, Simplex};
use crate::jacobian::{
    jac_inscribed_riemannian, jac_ir_l2_product, jac_mass_star, jacobian, john_ellipsoid,
    JacobianKind,
};
use crate::onedim::{check_n1_rigidity, decompose_graph, CurrentGraph, RigidityVerdict};
use crate::seminorm::{AmbientNorm, Seminorm};
use crate::slicing::{verify_mass_fubini, verify_slice_pushforward_commute, Projection};
use crate::unit_ball_volume;

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Criterion {
    fn ok(name: &'static str, detail: String) -> Self {
        Criterion {
            name,
            pass: true,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        Criterion {
            name,
            pass: false,
            detail,
        }
    }
}

const KINDS: [JacobianKind; 3] = [
    JacobianKind::Busemann,
    JacobianKind::MassStar,
    JacobianKind::InscribedRiemannian,
];

fn random_seminorm(rng: &mut ChaCha8Rng, k: usize, max_ambient: bool) -> Seminorm {
    loop {
        let rows = k + rng.gen_range(0..3);
        let a = DMatrix::from_fn(rows, k, |_, _| rng.gen_range(-1.0..1.0f64));
        let ambient = if max_ambient {
            AmbientNorm::MaxNorm
        } else {
            AmbientNorm::Euclidean
        };
        let s = Seminorm::new(a, ambient).unwrap();
        if !s.is_degenerate() {
            return s;
        }
    }
}

/// Criterion 1: normalization, monotonicity and the transformation law
/// for all three Jacobians on random seminorms in dimensions 1-3.
pub fn c1_jacobian_axioms(seed: u64) -> Criterion {
    let name = "jacobian-axioms";
    // normalization: every Jacobian is 1 on the Euclidean seminorm
    for k in 1..=3 {
        for kind in KINDS {
            let j = match jacobian(&Seminorm::euclidean(k), kind) {
                Ok(j) => j,
                Err(e) => return Criterion::fail(name, format!("normalization dim {k}: {e}")),
            };
            if (j - 1.0).abs() > 1e-9 {
                return Criterion::fail(name, format!("normalization dim {k} {kind:?}: {j}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa1);
    let mut max_mono = 0.0f64;
    let mut max_law = 0.0f64;
    for i in 0..1000 {
        let k = 1 + i % 3;
        let s = random_seminorm(&mut rng, k, i % 2 == 1);
        // sigma' >= sigma via a uniform scale and via an extra row
        let c = rng.gen_range(1.0..2.0f64);
        let scaled = Seminorm::new(c * s.matrix.clone(), s.ambient.clone()).unwrap();
        let extra = {
            let mut a = s.matrix.clone().insert_row(s.matrix.nrows(), 0.0);
            for j in 0..k {
                a[(s.matrix.nrows(), j)] = rng.gen_range(-1.0..1.0);
            }
            Seminorm::new(a, s.ambient.clone()).unwrap()
        };
        // invertible change of variables
        let t = loop {
            let t = DMatrix::from_fn(k, k, |_, _| rng.gen_range(-1.0..1.0f64));
            if t.determinant().abs() > 0.1 {
                break t;
            }
        };
        let composed = Seminorm::new(&s.matrix * &t, s.ambient.clone()).unwrap();
        for kind in KINDS {
            let j = jacobian(&s, kind).unwrap();
            let js = jacobian(&scaled, kind).unwrap();
            let je = jacobian(&extra, kind).unwrap();
            let jt = jacobian(&composed, kind).unwrap();
            max_mono = max_mono.max(j - js).max(j - je);
            let law = (jt - t.determinant().abs() * j).abs() / (1.0 + j);
            max_law = max_law.max(law);
            if j - js > 1e-8 || j - je > 1e-8 {
                return Criterion::fail(
                    name,
                    format!("monotonicity violated at sample {i} {kind:?}: {j} vs {js}/{je}"),
                );
            }
            if law > 1e-8 {
                return Criterion::fail(
                    name,
                    format!("transformation law off by {law:.3e} at sample {i} {kind:?}"),
                );
            }
        }
    }
    Criterion::ok(
        name,
        format!(
            "1000 seminorms, dims 1-3: normalization 1e-9, worst monotonicity slack {:.2e}, worst transformation-law error {:.2e}",
            max_mono.max(0.0),
            max_law
        ),
    )
}

/// Largest-volume inscribed ellipsoid of a symmetric polygon by grid
/// refinement, maximizing det S subject to a^T S a <= 1 per facet row.
/// Parametrize S = R(theta) diag(l1, l2) R(theta)^T: for fixed theta the
/// constraints are linear in (l1, l2) with nonnegative coefficients, and
/// log l1 + log l2(l1) is concave in l1, so golden-section search solves
/// the inner problem exactly; the angle is scanned and refined.
fn john_grid_oracle(rows: &[DVector<f64>]) -> f64 {
    let det_at = |theta: f64| -> f64 {
        let (c, s) = (theta.cos(), theta.sin());
        // constraint coefficients A l1 + B l2 <= 1
        let coefs: Vec<(f64, f64)> = rows
            .iter()
            .map(|a| {
                let d1 = a[0] * c + a[1] * s;
                let d2 = -a[0] * s + a[1] * c;
                (d1 * d1, d2 * d2)
            })
            .collect();
        let l1max = coefs
            .iter()
            .filter(|(a, _)| *a > 1e-300)
            .map(|(a, _)| 1.0 / a)
            .fold(f64::INFINITY, f64::min);
        let l2_of = |l1: f64| -> f64 {
            coefs
                .iter()
                .filter(|(_, b)| *b > 1e-300)
                .map(|(a, b)| (1.0 - a * l1) / b)
                .fold(f64::INFINITY, f64::min)
        };
        let f = |l1: f64| l1 * l2_of(l1).max(0.0);
        // golden-section on the concave log of the product
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut lo, mut hi) = (1e-12 * l1max, l1max * (1.0 - 1e-12));
        let (mut x1, mut x2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..120 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = f(x1);
            }
        }
        f1.max(f2)
    };
    let n = 256usize;
    let mut best = f64::NEG_INFINITY;
    let mut center = 0.0;
    for i in 0..n {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / n as f64;
        let d = det_at(theta);
        if d > best {
            best = d;
            center = theta;
        }
    }
    let mut hw = std::f64::consts::FRAC_PI_2 / n as f64;
    for _ in 0..40 {
        let mut arg = center;
        for i in 0..=32 {
            let theta = center - hw + 2.0 * hw * i as f64 / 32.0;
            let d = det_at(theta);
            if d > best {
                best = d;
                arg = theta;
            }
        }
        center = arg;
        hw *= 0.5;
    }
    unit_ball_volume(2) * best.max(0.0).sqrt()
}

/// Criterion 2: exact mass*-Jacobian of the max norm, the ir product
/// rule, and the John ellipsoid against the grid-refinement oracle.
pub fn c2_john_and_products(seed: u64) -> Criterion {
    let name = "john-and-products";
    for k in 1..=3 {
        let linf = Seminorm::new(DMatrix::identity(k, k), AmbientNorm::MaxNorm).unwrap();
        let j = jac_mass_star(&linf).unwrap();
        if j != 1.0 {
            return Criterion::fail(name, format!("Jac_m*(linf) dim {k}: {j} != 1"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa2);
    let mut max_prod = 0.0f64;
    for i in 0..100 {
        let s1 = random_seminorm(&mut rng, 1 + i % 2, true);
        let s2 = random_seminorm(&mut rng, 1 + (i / 2) % 2, i % 3 == 0);
        let lhs = jac_ir_l2_product(&s1, &s2).unwrap();
        let rhs = jac_inscribed_riemannian(&s1).unwrap() * jac_inscribed_riemannian(&s2).unwrap();
        let err = (lhs - rhs).abs() / (1.0 + rhs);
        max_prod = max_prod.max(err);
        if err > 1e-6 {
            return Criterion::fail(name, format!("ir product rule off by {err:.3e} at pair {i}"));
        }
    }
    let mut max_john = 0.0f64;
    for i in 0..20 {
        // symmetric polygon from facet rows with spread directions
        let m = rng.gen_range(3..=6usize);
        let rows: Vec<DVector<f64>> = (0..m)
            .map(|j| {
                let theta = std::f64::consts::PI * (j as f64 / m as f64)
                    + rng.gen_range(-0.2..0.2);
                let r = rng.gen_range(0.6..1.8f64);
                DVector::from_vec(vec![r * theta.cos(), r * theta.sin()])
            })
            .collect();
        let mut a = DMatrix::zeros(m, 2);
        for (j, row) in rows.iter().enumerate() {
            a.set_row(j, &row.transpose());
        }
        let s = Seminorm::new(a, AmbientNorm::MaxNorm).unwrap();
        if s.is_degenerate() {
            continue;
        }
        let john = john_ellipsoid(&s.unit_ball().unwrap()).unwrap().volume();
        let oracle = john_grid_oracle(&rows);
        let err = (john - oracle).abs();
        max_john = max_john.max(err);
        if err > 1e-4 {
            return Criterion::fail(
                name,
                format!("John volume {john:.8} vs grid oracle {oracle:.8} at polygon {i}"),
            );
        }
    }
    Criterion::ok(
        name,
        format!(
            "Jac_m*(linf) = 1 exact; ir product rule worst {:.2e} on 100 pairs; John vs grid oracle worst {:.2e} on 20 polygons",
            max_prod, max_john
        ),
    )
}

/// Criterion 3: the coning identity M_ir(CT)/M_ir(T) = 1/(k+1).
pub fn c3_coning(_seed: u64) -> Criterion {
    let name = "coning-identity";
    let ambient = NormedAmbient::euclidean(2);
    let point = PolyhedralCurrent::new(
        ambient.clone(),
        0,
        vec![Cell {
            simplex: Simplex::new(vec![pt(&[0.6, -0.3])], 1).unwrap(),
            multiplicity: 2,
        }],
    )
    .unwrap();
    let segment = curve_current(ambient, &[pt(&[-0.4, 0.8]), pt(&[0.9, 0.1])], false).unwrap();
    let square = unit_square_current(AmbientNorm::Euclidean);
    let cases: [(&str, &PolyhedralCurrent); 3] =
        [("point", &point), ("segment", &segment), ("square", &square)];
    let mut worst = 0.0f64;
    for (label, t) in cases {
        let r = match cone_mass_report(t) {
            Ok(r) => r,
            Err(e) => return Criterion::fail(name, format!("{label}: {e}")),
        };
        let expect = 1.0 / (t.k + 1) as f64;
        let err = (r.ratio - expect).abs();
        worst = worst.max(err);
        if err > 1e-9 {
            return Criterion::fail(name, format!("{label}: ratio {} vs {expect}", r.ratio));
        }
    }
    // the 64-gon circle: cone masses approximate the flat disk
    let circle = regular_polygon_current(64);
    let r = cone_mass_report(&circle).unwrap();
    let pi = std::f64::consts::PI;
    if (r.ratio - 0.5).abs() > 1e-9
        || (r.base_mass_ir - 2.0 * pi).abs() > 0.01
        || (r.cone_mass_ir - pi).abs() > 0.01
    {
        return Criterion::fail(
            name,
            format!(
                "64-gon: ratio {} base {} cone {}",
                r.ratio, r.base_mass_ir, r.cone_mass_ir
            ),
        );
    }
    Criterion::ok(
        name,
        format!(
            "ratios 1/(k+1) for k in 0..=2 within {:.2e}; 64-gon cone mass {:.6} vs pi",
            worst.max(1e-16),
            r.cone_mass_ir
        ),
    )
}

fn random_planar_current(rng: &mut ChaCha8Rng, ncells: usize) -> Option<PolyhedralCurrent> {
    let cells: Vec<Cell> = (0..ncells)
        .map(|_| {
            let verts = (0..3)
                .map(|_| DVector::from_fn(2, |_, _| rng.gen_range(-1.0..1.0)))
                .collect();
            Cell {
                simplex: Simplex::new(verts, 1).unwrap(),
                multiplicity: [1i64, -1, 2][rng.gen_range(0..3)],
            }
        })
        .collect();
    PolyhedralCurrent::new(NormedAmbient::euclidean(2), 2, cells)
        .ok()
        .filter(|t| !t.is_zero())
}

/// Criterion 4: the Fubini mass identity, the slicing inequality, and
/// slice/push-forward commutation on random planar currents.
pub fn c4_fubini(seed: u64) -> Criterion {
    let name = "fubini-slicing";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa4);
    let mut done = 0;
    let mut worst_gap = 0.0f64;
    let mut attempts = 0;
    while done < 50 && attempts < 500 {
        attempts += 1;
        let t = match random_planar_current(&mut rng, 4) {
            Some(t) => t,
            None => continue,
        };
        let theta = rng.gen_range(0.0..std::f64::consts::PI);
        let rho =
            Projection::new(DMatrix::from_row_slice(1, 2, &[theta.cos(), theta.sin()])).unwrap();
        let r = match verify_mass_fubini(&t, &rho) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let gap = (r.integral_of_slice_mass - r.restricted_mass).abs() / (1.0 + r.total_mass);
        worst_gap = worst_gap.max(gap);
        if gap > 1e-9 {
            return Criterion::fail(name, format!("Fubini gap {gap:.3e} at sample {done}"));
        }
        if !r.inequality_holds {
            return Criterion::fail(name, format!("slicing inequality violated at sample {done}"));
        }
        done += 1;
    }
    if done < 50 {
        return Criterion::fail(name, format!("only {done} Fubini samples succeeded"));
    }
    // commutation with random invertible affine maps
    let mut commuted = 0;
    let mut worst_comm = 0.0f64;
    attempts = 0;
    while commuted < 20 && attempts < 300 {
        attempts += 1;
        let t = match random_planar_current(&mut rng, 3) {
            Some(t) => t,
            None => continue,
        };
        let m = DMatrix::from_fn(2, 2, |_, _| rng.gen_range(-1.0..1.0f64));
        if m.determinant().abs() < 0.2 {
            continue;
        }
        let b = DVector::from_fn(2, |_, _| rng.gen_range(-0.5..0.5));
        let f = {
            let m = m.clone();
            let b = b.clone();
            move |p: &Point| &m * p + &b
        };
        let rho = Projection::axis(2, 0);
        let levels: Vec<f64> = (0..5).map(|_| rng.gen_range(-0.7..0.7)).collect();
        let r = match verify_slice_pushforward_commute(
            &t,
            NormedAmbient::euclidean(2),
            &f,
            &rho,
            &levels,
        ) {
            Ok(r) => r,
            Err(_) => continue,
        };
        worst_comm = worst_comm.max(r.max_difference_mass.abs());
        if r.max_difference_mass > 1e-9 {
            return Criterion::fail(
                name,
                format!("commutation difference {:.3e}", r.max_difference_mass),
            );
        }
        commuted += 1;
    }
    if commuted < 20 {
        return Criterion::fail(name, format!("only {commuted} commutation samples succeeded"));
    }
    Criterion::ok(
        name,
        format!(
            "50 Fubini samples, worst relative gap {:.2e}; 20 commutation samples, worst difference mass {:.2e}",
            worst_gap, worst_comm
        ),
    )
}

fn random_graph_current(rng: &mut ChaCha8Rng) -> Option<PolyhedralCurrent> {
    let n = rng.gen_range(3..7);
    let pts: Vec<Point> = (0..n)
        .map(|_| pt(&[rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]))
        .collect();
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(1..4) {
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let closed = rng.gen_bool(0.6);
        let len = rng.gen_range(if closed { 3 } else { 2 }..=n);
        let cyc: Vec<Point> = order[..len].iter().map(|&i| pts[i].clone()).collect();
        if let Ok(c) = curve_current(NormedAmbient::euclidean(2), &cyc, closed) {
            parts.push(c);
        }
    }
    let mut t = parts.pop()?;
    for c in &parts {
        t = t.add(c).ok()?;
    }
    Some(t).filter(|t| !t.is_zero())
}

/// Criterion 5: 1-current decomposition invariants on random integer
/// graph currents, plus the n = 1 rigidity verdicts.
pub fn c5_decomposition(seed: u64) -> Criterion {
    let name = "one-dim-decomposition";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5);
    let mut done = 0;
    let mut attempts = 0;
    while done < 1000 && attempts < 5000 {
        attempts += 1;
        let t = match random_graph_current(&mut rng) {
            Some(t) => t,
            None => continue,
        };
        let g = match CurrentGraph::from_current(&t) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let d = match decompose_graph(&g) {
            Ok(d) => d,
            Err(_) => continue,
        };
        // exact edge-multiset conservation
        let mut used: std::collections::HashMap<(usize, usize), i64> =
            std::collections::HashMap::new();
        let walk = |seq: &[usize], closed: bool, used: &mut std::collections::HashMap<(usize, usize), i64>| {
            let m = seq.len();
            let steps = if closed { m } else { m - 1 };
            for s in 0..steps {
                let (a, b) = (seq[s], seq[(s + 1) % m]);
                *used.entry((a.min(b), a.max(b))).or_insert(0) += if a < b { 1 } else { -1 };
            }
        };
        for p in &d.paths {
            walk(p, false, &mut used);
        }
        for l in &d.loops {
            walk(l, true, &mut used);
        }
        for &(u, v, m, _) in &g.edges {
            if used.remove(&(u, v)).unwrap_or(0) != m {
                return Criterion::fail(name, format!("edge multiset broken at sample {done}"));
            }
        }
        if used.values().any(|&c| c != 0) {
            return Criterion::fail(name, format!("spurious edges at sample {done}"));
        }
        let mass = g.total_mass();
        if (d.total_length() - mass).abs() > 1e-12 * (1.0 + mass) {
            return Criterion::fail(name, format!("length sum off at sample {done}"));
        }
        let bmass = t.boundary().total_mass(JacobianKind::MassStar).unwrap();
        if bmass != 2.0 * d.paths.len() as f64 {
            return Criterion::fail(
                name,
                format!("M(dT) = {bmass} vs 2 x {} paths at sample {done}", d.paths.len()),
            );
        }
        done += 1;
    }
    if done < 1000 {
        return Criterion::fail(name, format!("only {done} graph samples succeeded"));
    }
    // rigidity verdicts: geodesic instances and their perturbations
    for i in 0..50 {
        let n = rng.gen_range(3..8);
        let mut xs: Vec<f64> = (1..n - 1).map(|_| rng.gen_range(0.05..0.95)).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
        let mut coords = vec![0.0];
        coords.extend(xs);
        coords.push(1.0);
        let straight: Vec<Point> = coords.iter().map(|&x| pt(&[x, 0.0])).collect();
        let t = curve_current(NormedAmbient::euclidean(2), &straight, false).unwrap();
        let g = CurrentGraph::from_current(&t).unwrap();
        let f: Vec<f64> = g.vertices.iter().map(|p| p[0]).collect();
        match check_n1_rigidity(&g, &f, (0.0, 1.0)) {
            Ok(RigidityVerdict::Rigid) => {}
            other => return Criterion::fail(name, format!("geodesic {i} not rigid: {other:?}")),
        }
        // bend one interior vertex off the axis: strictly longer curve
        let mut bent = straight.clone();
        let j = rng.gen_range(1..bent.len() - 1);
        bent[j] = pt(&[bent[j][0], rng.gen_range(0.2..0.5)]);
        let t = curve_current(NormedAmbient::euclidean(2), &bent, false).unwrap();
        let g = CurrentGraph::from_current(&t).unwrap();
        let f: Vec<f64> = g.vertices.iter().map(|p| p[0]).collect();
        match check_n1_rigidity(&g, &f, (0.0, 1.0)) {
            Ok(RigidityVerdict::NotRigid { witness }) if !witness.is_empty() => {}
            other => return Criterion::fail(name, format!("bent {i} verdict {other:?}")),
        }
        // disjoint loop inflates the mass above the path length
        let tri = curve_current(
            NormedAmbient::euclidean(2),
            &[pt(&[3.0, 0.0]), pt(&[4.0, 0.0]), pt(&[3.5, 1.0])],
            true,
        )
        .unwrap();
        let t = curve_current(NormedAmbient::euclidean(2), &straight, false)
            .unwrap()
            .add(&tri)
            .unwrap();
        let g = CurrentGraph::from_current(&t).unwrap();
        let f: Vec<f64> = g.vertices.iter().map(|p| p[0].min(1.0)).collect();
        match check_n1_rigidity(&g, &f, (0.0, 1.0)) {
            Ok(RigidityVerdict::NotRigid { witness }) if !witness.is_empty() => {}
            other => return Criterion::fail(name, format!("loop {i} verdict {other:?}")),
        }
    }
    Criterion::ok(
        name,
        "1000 graphs: edge multiset, length sum and M(dT) = 2|paths| hold; 150 rigidity verdicts correct".to_string(),
    )
}

/// Criterion 6: flat norm against the {-1, 0, 1} oracle, integer
/// certification, and F <= M.
pub fn c6_flat_norm(seed: u64) -> Criterion {
    let name = "flat-norm";
    let kind = JacobianKind::MassStar;
    let square_chain = |side: f64| {
        let sheet = unit_square_current(AmbientNorm::Euclidean)
            .push_forward(NormedAmbient::euclidean(2), |p| side * p)
            .unwrap();
        let (complex, chains) = build_complex(&[&sheet]).unwrap();
        let b2 = complex.boundary_matrix(2);
        let t = ChainVector {
            dim: 1,
            coeffs: &b2 * &chains[0].coeffs,
        };
        (complex, t)
    };
    for &s in &[0.5f64, 1.0, 8.0] {
        let (complex, t) = square_chain(s);
        let r = flat_norm(&t, &complex, kind).unwrap();
        let expect = (s * s).min(4.0 * s);
        let oracle = brute_force_flat_norm(&complex, &t, kind).unwrap();
        if (r.value - expect).abs() > 1e-9 || (r.value - oracle).abs() > 1e-9 || !r.certified {
            return Criterion::fail(
                name,
                format!("side {s}: value {} oracle {oracle} certified {}", r.value, r.certified),
            );
        }
        let m = complex.chain_mass(&t, kind).unwrap();
        if r.value > m + 1e-9 {
            return Criterion::fail(name, format!("side {s}: F = {} > M = {m}", r.value));
        }
    }
    // random integer 1-chains on the unit-square complex
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa6);
    let (complex, _) = square_chain(1.0);
    let ne = complex.num_cells(1);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let t = ChainVector {
            dim: 1,
            coeffs: DVector::from_fn(ne, |_, _| rng.gen_range(-2i64..=2) as f64),
        };
        let r = flat_norm(&t, &complex, kind).unwrap();
        let oracle = brute_force_flat_norm(&complex, &t, kind).unwrap();
        // the oracle caps |v| at 1; still an upper bound for the LP value
        if r.value > oracle + 1e-9 || !r.certified {
            return Criterion::fail(
                name,
                format!("chain {i}: value {} oracle {oracle} certified {}", r.value, r.certified),
            );
        }
        let m = complex.chain_mass(&t, kind).unwrap();
        if r.value > m + 1e-9 {
            return Criterion::fail(name, format!("chain {i}: F = {} > M = {m}", r.value));
        }
        worst = worst.max(oracle - r.value);
    }
    Criterion::ok(
        name,
        format!(
            "square crossover min(s^2, 4s) exact at s in {{1/2, 1, 8}}; 50 random chains certified, F <= M, LP below the capped oracle by at most {:.2}",
            worst
        ),
    )
}

/// Criterion 7: the l-infinity filling lower bound on the shipped
/// corpus of candidate fillings.
pub fn c7_filling(_seed: u64) -> Criterion {
    let name = "filling-bound";
    let square = ConvexBody::unit_square();
    let tent = |c: f64| move |x: f64, y: f64| 2.0 * c * x.min(1.0 - x).min(y).min(1.0 - y);
    let bump = |a: f64| {
        move |x: f64, y: f64| {
            a * (std::f64::consts::PI * x).sin() * (std::f64::consts::PI * y).sin()
        }
    };
    let twobump = |x: f64, y: f64| {
        0.12 * (2.0 * std::f64::consts::PI * x).sin() * (std::f64::consts::PI * y).sin()
    };
    let mut details = Vec::new();
    let mut check = |label: &str, body: &ConvexBody, cand, flat: bool| -> Result<(), String> {
        let r = ell_infty_filling_bound(body, &cand).map_err(|e| format!("{label}: {e}"))?;
        if r.gap < -1e-9 {
            return Err(format!("{label}: gap {:.3e} < -1e-9", r.gap));
        }
        if !flat && r.gap < 0.01 {
            return Err(format!("{label}: non-flat gap {:.3e} < 0.01", r.gap));
        }
        if !r.boundary_chain_ok {
            return Err(format!("{label}: boundary chain mismatch"));
        }
        details.push(format!("{label} gap {:.4}", r.gap));
        Ok(())
    };
    let mut run = || -> Result<(), String> {
        check("identity", &square, graph_surface_candidate(16, |_, _| 0.0).unwrap(), true)?;
        check("tent-0.50", &square, graph_surface_candidate(16, tent(0.5)).unwrap(), false)?;
        check("tent-0.25", &square, graph_surface_candidate(16, tent(0.25)).unwrap(), false)?;
        check("bump-0.30", &square, graph_surface_candidate(20, bump(0.30)).unwrap(), false)?;
        check("bump-0.15", &square, graph_surface_candidate(20, bump(0.15)).unwrap(), false)?;
        check("twobump-0.12", &square, graph_surface_candidate(24, twobump).unwrap(), false)?;
        let hexagon = ConvexBody::polygon(
            &(0..6)
                .map(|i| {
                    let t = 2.0 * std::f64::consts::PI * i as f64 / 6.0;
                    pt(&[t.cos(), t.sin()])
                })
                .collect::<Vec<_>>(),
        );
        check("hexagon-fan", &hexagon, polygon_fan_candidate(&hexagon), true)?;
        Ok(())
    };
    match run() {
        Ok(()) => Criterion::ok(name, details.join(", ")),
        Err(e) => Criterion::fail(name, e),
    }
}

/// Criterion 8: weighted-l2 exactness of the sphere embedding and the
/// determinant non-increase probe.
pub fn c8_embedding(seed: u64) -> Criterion {
    let name = "embedding-pipeline";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa8);
    let mut worst = 0.0f64;
    for m in 3..=256usize {
        let d = SphereDiscretization::circle(m);
        for _ in 0..4 {
            let x = pt(&[rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            let phi = phi_embedding(&x, &d);
            let err = (crate::filling::weighted_l2_norm(&phi, &d) - x.norm()).abs();
            worst = worst.max(err);
            if err > 1e-12 {
                return Criterion::fail(name, format!("m = {m}: |Phi(x)| off by {err:.3e}"));
            }
        }
    }
    let mut trials = 0;
    let mut ir_checked = 0;
    for (t, n, m) in [(4000usize, 2usize, 6usize), (3000, 2, 16), (2000, 3, 8), (1000, 3, 32)] {
        let r = match det_nonincrease_probe(t, n, m, seed ^ (m as u64)) {
            Ok(r) => r,
            Err(e) => return Criterion::fail(name, format!("probe n={n} m={m}: {e}")),
        };
        if r.det_violations != 0 || r.ir_violations != 0 {
            return Criterion::fail(
                name,
                format!(
                    "probe n={n} m={m}: {} det and {} ir violations",
                    r.det_violations, r.ir_violations
                ),
            );
        }
        trials += r.trials;
        ir_checked += r.ir_checked;
    }
    Criterion::ok(
        name,
        format!(
            "Phi exact within {:.2e} for m in 3..=256; {trials} det trials ({ir_checked} ir-checked), zero violations",
            worst
        ),
    )
}

/// Criterion 9: the flat-football family does not converge to the disk.
pub fn c9_football(_seed: u64) -> Criterion {
    let name = "flat-football";
    let (eps, big_l, h) = (0.05, 1.0, 0.01);
    let r = match make_flat_football(eps, big_l, h) {
        Ok(r) => r,
        Err(e) => return Criterion::fail(name, format!("{e}")),
    };
    let pi = std::f64::consts::PI;
    if r.volume < pi - 1e-9 || r.volume > pi + 2.0 * eps + 0.05 {
        return Criterion::fail(name, format!("volume {} outside [pi, pi + 0.15]", r.volume));
    }
    if r.lipschitz_max > 1.02 {
        return Criterion::fail(name, format!("Lipschitz {} > 1.02", r.lipschitz_max));
    }
    if (r.winding - 1.0).abs() > 1e-6 {
        return Criterion::fail(name, format!("winding {}", r.winding));
    }
    let t = 0.01;
    let d = football_slit_distance(&r, t);
    let expect = 2.0 * ((big_l / 2.0) * (big_l / 2.0) + t * t).sqrt();
    if (d - expect).abs() > 0.1 * expect {
        return Criterion::fail(name, format!("slit distance {d:.5} vs {expect:.5}"));
    }
    Criterion::ok(
        name,
        format!(
            "eps = 0.05, h = 0.01: volume {:.5}, Lipschitz {:.5}, winding {:.3}, slit distance {:.5} vs {:.5}",
            r.volume, r.lipschitz_max, r.winding, d, expect
        ),
    )
}

/// Criterion 10: the max-norm square witness tuple.
pub fn c10_witness(_seed: u64) -> Criterion {
    let name = "non-rigidity-witness";
    let r = match make_linfty_square() {
        Ok(r) => r,
        Err(e) => return Criterion::fail(name, format!("{e}")),
    };
    let sqrt2 = 2f64.sqrt();
    let checks = [
        ("mass euclidean", r.mass_euclidean, 1.0),
        ("mass linf", r.mass_linfty, 1.0),
        ("boundary euclidean", r.boundary_euclidean, 4.0),
        ("boundary linf", r.boundary_linfty, 4.0),
        ("distance euclidean", r.dist_euclidean, sqrt2),
        ("distance linf", r.dist_linfty, 1.0),
    ];
    for (label, got, want) in checks {
        if (got - want).abs() > 1e-12 {
            return Criterion::fail(name, format!("{label}: {got} vs {want}"));
        }
    }
    Criterion::ok(
        name,
        "tuple (1, 1, 4, 4, sqrt 2 vs 1) exact to 1e-12".to_string(),
    )
}

/// Run every acceptance criterion with the given seed.
pub fn run_all(seed: u64) -> Vec<Criterion> {
    vec![
        c1_jacobian_axioms(seed),
        c2_john_and_products(seed),
        c3_coning(seed),
        c4_fubini(seed),
        c5_decomposition(seed),
        c6_flat_norm(seed),
        c7_filling(seed),
        c8_embedding(seed),
        c9_football(seed),
        c10_witness(seed),
    ]
}

/// One line per criterion, stable across runs with the same seed.
pub fn render_report(criteria: &[Criterion]) -> String {
    let mut out = String::new();
    for c in criteria {
        out.push_str(&format!(
            "{}: {} - {}\n",
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail
        ));
    }
    out
}
