//! Polyhedral integral currents in finite-dimensional normed spaces.
//!
//! The crate provides exact-leaning low-dimensional machinery for
//! polyhedral currents: Finsler mass functionals driven by Jacobians of
//! seminorms (Busemann, mass*, inscribed-Riemannian), slicing by affine
//! projections, decomposition of 1-currents into paths and loops,
//! Euclidean cones, a simplicial flat norm solved as a linear program,
//! and filling-volume experiments over triangulated candidate surfaces.

pub mod cone;
pub mod current;
pub mod filling;
pub mod flatnorm;
pub mod geometry;
pub mod jacobian;
pub mod onedim;
pub mod seminorm;
pub mod simplex_lp;
pub mod slicing;
pub mod svg;
pub mod verify;

pub use current::{MassKind, NormedAmbient, PolyhedralCurrent};
pub use geometry::{AffineMap, Point, Simplex, SymmetricPolytope};
pub use jacobian::Ellipsoid;
pub use seminorm::{AmbientNorm, Seminorm};

/// Volume of the Euclidean unit ball in `R^k`.
pub fn unit_ball_volume(k: usize) -> f64 {
    // omega_k = pi^(k/2) / Gamma(k/2 + 1), computed by the two-step recursion
    // omega_k = 2 pi / k * omega_{k-2}.
    match k {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / k as f64 * unit_ball_volume(k - 2),
    }
}

#[cfg(test)]
mod tests {
    use super::unit_ball_volume;
    use std::f64::consts::PI;

    #[test]
    fn unit_ball_volumes() {
        assert_eq!(unit_ball_volume(0), 1.0);
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-15);
    }
}
