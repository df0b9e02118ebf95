//! Degrees at the file boundary, radians everywhere else.

use beamalign::angular::TAU;

/// Decimal places used for every emitted angle.
pub const ANGLE_DECIMALS: usize = 6;

/// Converts and snaps values within float noise of the full turn to `2pi`.
pub fn deg_to_rad(deg: f64) -> f64 {
    let r = deg.to_radians();
    if (r - TAU).abs() < 1e-12 {
        TAU
    } else {
        r
    }
}

pub fn rad_to_deg(rad: f64) -> f64 {
    rad.to_degrees()
}

pub fn fmt_deg(rad: f64) -> String {
    format!("{:.*}", ANGLE_DECIMALS, rad_to_deg(rad))
}

/// Degrees in `[0, 360]` and finite.
pub fn check_deg(deg: f64) -> bool {
    deg.is_finite() && (0.0..=360.0).contains(&deg)
}
