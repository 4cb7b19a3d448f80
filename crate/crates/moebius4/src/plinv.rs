//! Piecewise inversion in the boundary of an axis-aligned cube.
//!
//! Conjugating the round-sphere inversion by the radial sup-norm rescale
//! gives the closed form J(x) = o + s²·u/‖u‖∞² with u = x − o, which is
//! exact on rationals: the only norm that appears is the sup norm, whose
//! square is rational. J fixes the cube boundary ‖u‖∞ = s pointwise, swaps
//! inside and outside, exchanges the center with ∞, and is an involution.

use crate::inversive::PointOrInfinity;
use crate::rat::{format_rat, sup_norm_sq, vec4_add, vec4_scale, vec4_sub, Rat, Vec4};
use num::traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlInversionError {
    #[error("half width must be positive, got {0}")]
    NonPositiveHalfWidth(String),
}

/// The inversion in the boundary of the cube with the given center and half
/// width (the unit cubes of the cubulation have half width 1/2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeInversion {
    center: Vec4,
    half_width: Rat,
}

impl CubeInversion {
    pub fn new(center: Vec4, half_width: Rat) -> Result<Self, PlInversionError> {
        if !half_width.is_positive() {
            return Err(PlInversionError::NonPositiveHalfWidth(format_rat(
                &half_width,
            )));
        }
        Ok(CubeInversion { center, half_width })
    }

    pub fn center(&self) -> &Vec4 {
        &self.center
    }

    pub fn half_width(&self) -> &Rat {
        &self.half_width
    }

    /// Sign of ‖x − o‖∞² − s²: negative inside the cube, zero on the
    /// boundary, positive outside.
    pub fn boundary_excess(&self, x: &Vec4) -> Rat {
        sup_norm_sq(&vec4_sub(x, &self.center)) - &self.half_width * &self.half_width
    }

    /// J(x) = o + (s²/‖x−o‖∞²)(x−o), with o ↦ ∞ and ∞ ↦ o.
    pub fn invert(&self, p: &PointOrInfinity) -> PointOrInfinity {
        match p {
            PointOrInfinity::Infinity => PointOrInfinity::Finite(self.center.clone()),
            PointOrInfinity::Finite(x) => {
                let u = vec4_sub(x, &self.center);
                let n = sup_norm_sq(&u);
                if n.is_zero() {
                    return PointOrInfinity::Infinity;
                }
                let scale = &self.half_width * &self.half_width / n;
                PointOrInfinity::Finite(vec4_add(&self.center, &vec4_scale(&scale, &u)))
            }
        }
    }
}

/// First sample that failed the involution or side-swap assertion.
#[derive(Debug, Clone)]
pub struct InvolutionFailure {
    pub sample: PointOrInfinity,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct InvolutionReport {
    pub samples_checked: usize,
    pub failure: Option<InvolutionFailure>,
}

impl InvolutionReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Assert J(J(x)) = x exactly on every sample, that boundary points are
/// fixed, and that inside and outside are strictly exchanged for
/// non-boundary points. Stops at the first failing sample.
pub fn involution_check(ci: &CubeInversion, samples: &[PointOrInfinity]) -> InvolutionReport {
    let mut checked = 0;
    for sample in samples {
        checked += 1;
        let image = ci.invert(sample);
        let round_trip = ci.invert(&image);
        if round_trip != *sample {
            return InvolutionReport {
                samples_checked: checked,
                failure: Some(InvolutionFailure {
                    sample: sample.clone(),
                    reason: "double inversion does not return the sample".to_string(),
                }),
            };
        }
        let side = match sample {
            PointOrInfinity::Infinity => Rat::from_integer(1.into()),
            PointOrInfinity::Finite(x) => ci.boundary_excess(x),
        };
        let image_side = match &image {
            PointOrInfinity::Infinity => Rat::from_integer(1.into()),
            PointOrInfinity::Finite(x) => ci.boundary_excess(x),
        };
        let ok = if side.is_zero() {
            image == *sample
        } else {
            (side.is_positive() && image_side.is_negative())
                || (side.is_negative() && image_side.is_positive())
        };
        if !ok {
            let reason = if side.is_zero() {
                "boundary point not fixed".to_string()
            } else {
                "inside/outside not strictly exchanged".to_string()
            };
            return InvolutionReport {
                samples_checked: checked,
                failure: Some(InvolutionFailure {
                    sample: sample.clone(),
                    reason,
                }),
            };
        }
    }
    InvolutionReport {
        samples_checked: checked,
        failure: None,
    }
}
