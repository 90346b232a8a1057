//! Rotation-angle fields for the collision operators.
//!
//! The weight-loading side uses one angle per axis,
//! `gP_a(r) = arccos sqrt((1 + 3 u_a(r)) / 2)`, splitting each axis
//! pair's weight between the forward and backward directions.
//!
//! The recombination side evaluates shifted velocities. Writing
//! `D_a(r) = 2 + 3 u_a(r - e_a) - 3 u_a(r + e_a)` (the axis pair's
//! total shifted weight over the common lattice weight), the angles are
//!
//! * `gQ_a(r)  = arccos sqrt((1 + 3 u_a(r - e_a)) / D_a(r))` per axis,
//! * `gQ_lambda(r) = arccos sqrt(w D_x(r) / (1 - w_0))`, splitting the
//!   x pair from the remaining axes (`sqrt(D_x/6)` for D3Q7), and
//! * `gQ_mu(r) = arccos sqrt(D_y(r) / (4 - 3 u_x(r - e_x) + 3 u_x(r + e_x)))`
//!   (3D only), splitting y from z. For a divergence-free field the
//!   denominator equals `D_y + D_z`, so the split is exact.

use super::TransformError;
use crate::lattice::{GridSpec, LatticeModel, VelocityField};

/// One real rotation angle per grid site, in `[0, pi/2]`.
#[derive(Clone, Debug)]
pub struct AngleField {
    pub grid: GridSpec,
    pub data: Vec<f64>,
}

fn checked_arccos_sqrt(arg: f64) -> Result<f64, TransformError> {
    // Tolerate rounding just outside [0, 1].
    if !(-1e-12..=1.0 + 1e-12).contains(&arg) {
        return Err(TransformError::Domain(format!(
            "arccos argument {arg} outside [0, 1]; velocity exceeds 1/3?"
        )));
    }
    Ok(arg.clamp(0.0, 1.0).sqrt().acos())
}

/// Weight-loading angle for one axis: `arccos sqrt((1 + 3 u_axis) / 2)`.
pub fn prep_angles(u: &VelocityField, axis: usize) -> Result<AngleField, TransformError> {
    if axis >= u.grid.dims {
        return Err(TransformError::Shape(format!(
            "axis {axis} out of range for a {}-dimensional field",
            u.grid.dims
        )));
    }
    let data = u
        .data
        .iter()
        .map(|v| checked_arccos_sqrt((1.0 + 3.0 * v[axis]) / 2.0))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AngleField { grid: u.grid, data })
}

/// The recombination angle fields: one per axis plus the axis-splitting
/// angles (`mu` present only in 3D).
#[derive(Clone, Debug)]
pub struct UnprepAngles {
    /// Per-axis pair angles `gQ_a`, indexed by axis.
    pub per_axis: Vec<AngleField>,
    /// First axis split (x from the rest).
    pub lambda: AngleField,
    /// Second axis split (y from z); 3D only.
    pub mu: Option<AngleField>,
}

/// Per-axis shifted pair weight ratio `D_a(r)`.
fn pair_weight(u: &VelocityField, site: usize, axis: usize) -> f64 {
    let back = u.grid.shift(site, axis, -1);
    let fwd = u.grid.shift(site, axis, 1);
    2.0 + 3.0 * u.data[back][axis] - 3.0 * u.data[fwd][axis]
}

/// Evaluates every recombination angle field for a model.
pub fn unprep_angles(
    u: &VelocityField,
    model: &LatticeModel,
) -> Result<UnprepAngles, TransformError> {
    let grid = u.grid;
    if grid.dims != model.dims {
        return Err(TransformError::Shape(format!(
            "{}-dimensional field for model {}",
            grid.dims,
            model.kind.name()
        )));
    }
    let w = model.weights[1];
    let moving = 1.0 - model.weights[0];

    let mut per_axis = Vec::with_capacity(grid.dims);
    for axis in 0..grid.dims {
        let mut data = Vec::with_capacity(grid.sites());
        for site in 0..grid.sites() {
            let d = pair_weight(u, site, axis);
            if d <= 0.0 {
                return Err(TransformError::Domain(format!(
                    "non-positive pair weight {d} at site {site}, axis {axis}"
                )));
            }
            let back = grid.shift(site, axis, -1);
            data.push(checked_arccos_sqrt((1.0 + 3.0 * u.data[back][axis]) / d)?);
        }
        per_axis.push(AngleField { grid, data });
    }

    let mut lambda = Vec::with_capacity(grid.sites());
    for site in 0..grid.sites() {
        lambda.push(checked_arccos_sqrt(w * pair_weight(u, site, 0) / moving)?);
    }
    let lambda = AngleField { grid, data: lambda };

    let mu = if grid.dims == 3 {
        let mut data = Vec::with_capacity(grid.sites());
        for site in 0..grid.sites() {
            let back = grid.shift(site, 0, -1);
            let fwd = grid.shift(site, 0, 1);
            let denom = 4.0 - 3.0 * u.data[back][0] + 3.0 * u.data[fwd][0];
            if denom <= 0.0 {
                return Err(TransformError::Domain(format!(
                    "non-positive split denominator {denom} at site {site}"
                )));
            }
            data.push(checked_arccos_sqrt(pair_weight(u, site, 1) / denom)?);
        }
        Some(AngleField { grid, data })
    } else {
        None
    };

    Ok(UnprepAngles {
        per_axis,
        lambda,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_model, presets};
    use std::f64::consts::FRAC_PI_2;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn prep_angle_limits() {
        let g = GridSpec::new(2, 4).unwrap();
        for (ux, expected) in [
            (0.0, FRAC_PI_4),
            (1.0 / 3.0, 0.0),
            (-1.0 / 3.0, FRAC_PI_2),
        ] {
            let u = presets::constant(g, [ux, 0.0, 0.0]);
            let a = prep_angles(&u, 0).unwrap();
            for v in &a.data {
                assert!((v - expected).abs() < 1e-12, "{v} vs {expected}");
            }
        }
    }

    #[test]
    fn unprep_angles_at_zero_velocity() {
        let m = build_model("D3Q7").unwrap();
        let g = GridSpec::new(3, 4).unwrap();
        let u = VelocityField::zero(g);
        let a = unprep_angles(&u, &m).unwrap();
        let lambda_expected = (1.0f64 / 3.0).sqrt().acos();
        for axis in 0..3 {
            for v in &a.per_axis[axis].data {
                assert!((v - FRAC_PI_4).abs() < 1e-14);
            }
        }
        for v in &a.lambda.data {
            assert!((v - lambda_expected).abs() < 1e-14);
        }
        for v in &a.mu.unwrap().data {
            assert!((v - FRAC_PI_4).abs() < 1e-14);
        }
    }

    #[test]
    fn constant_velocity_gives_constant_angles() {
        let m = build_model("D3Q7").unwrap();
        let g = GridSpec::new(3, 8).unwrap();
        let u = presets::constant(g, [0.1, -0.05, 0.2]);
        let a = unprep_angles(&u, &m).unwrap();
        for field in a.per_axis.iter().chain([&a.lambda]) {
            let first = field.data[0];
            assert!(field.data.iter().all(|v| (v - first).abs() < 1e-15));
        }
    }

    #[test]
    fn all_angles_in_quarter_circle() {
        let m = build_model("D3Q7").unwrap();
        let g = GridSpec::new(3, 8).unwrap();
        let u = presets::random_divergence_free(g, 1.0 / 3.0, 9);
        let a = unprep_angles(&u, &m).unwrap();
        for field in a.per_axis.iter().chain([&a.lambda]).chain(a.mu.as_ref()) {
            for v in &field.data {
                assert!((0.0..=FRAC_PI_2 + 1e-12).contains(v));
            }
        }
    }

    #[test]
    fn overspeed_rejected() {
        let g = GridSpec::new(2, 4).unwrap();
        let u = presets::constant(g, [0.5, 0.0, 0.0]);
        assert!(prep_angles(&u, 0).is_err());
    }
}
