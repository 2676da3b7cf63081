//! Polyhedral ordering cones and their convex-geometric primitives.
//!
//! A cone is represented by an N x D constraint matrix `W` with unit-norm
//! rows, as the solution set
//!
//! ```text
//!   C = { x in R^D : W x >= 0 },      Int(C) = { x : W x > 0 }.
//! ```
//!
//! The library assumes `C` is an ordering cone (closed, convex, pointed,
//! solid). Pointedness and solidity are not enforced by the constructor --
//! verifying them exactly is a linear-programming problem -- but the built-in
//! families below satisfy them by construction, and the cached coefficients
//! `alpha_n` (see [`PolyhedralCone::alphas`]) fail loudly for cones that are
//! degenerate enough to break downstream gap computations.
//!
//! Projections onto polyhedra `{ y : W y >= b }` are computed with Dykstra's
//! alternating projection method over the halfspaces. For halfspaces every
//! Dykstra correction is a nonnegative multiple of the constraint normal, so
//! the iteration carries one scalar per row and terminates with the KKT
//! multipliers of the projection problem for free:
//!
//! ```text
//!   y* = x + sum_n t_n w_n,   t_n >= 0,   t_n (w_n' y* - b_n) = 0.
//! ```
//!
//! Two constants summarize how much the cone distorts distances relative to
//! their cone-constrained counterparts:
//!
//! ```text
//!   beta1 = sup_{x not in C}  d(x, C n (x + C)) / d(x, C)
//!   beta2 = sup_{x in Int C}  d(x, (Int C)^c n (x - C)) / d(x, (Int C)^c)
//! ```
//!
//! Both are >= 1. Closed forms are known for the two built-in families
//! ([`beta_closed_form`]); for arbitrary cones only a sampling lower bound is
//! offered ([`beta_empirical`]).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::Rng;

/// Default tolerance for boundary classification in membership tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Rows must satisfy | ||w_n|| - 1 | <= this after construction.
pub const ROW_NORM_TOL: f64 = 1e-12;

const DYKSTRA_MOVEMENT_TOL: f64 = 1e-10;
const DYKSTRA_MAX_CYCLES: usize = 100_000;
const DYKSTRA_VIOLATION_TOL: f64 = 1e-8;
const DYKSTRA_SLACKNESS_TOL: f64 = 1e-6;

/// Ratios with a denominator below this are skipped by [`beta_empirical`]:
/// near the boundary both distances vanish and the quotient of two
/// projection results (each accurate to ~1e-10) is no longer meaningful.
const BETA_DENOMINATOR_FLOOR: f64 = 1e-3;

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// A polyhedral ordering cone `{ x : W x >= 0 }` with unit-norm rows.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    rows: Vec<Vec<f64>>,
    dim: usize,
    alphas: Vec<f64>,
}

impl PolyhedralCone {
    /// Build a cone from constraint normals. Rows are normalized to unit
    /// length; the coefficients `alpha_n = sup { w_n' u : u in C, ||u|| <= 1 }`
    /// are computed once here (as the norm of the projection of `w_n` onto
    /// the cone) and cached.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter(
                "cone needs at least one constraint row".into(),
            ));
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "cone dimension must be >= 1".into(),
            ));
        }
        let mut normalized = Vec::with_capacity(rows.len());
        for (n, row) in rows.into_iter().enumerate() {
            check_dim(dim, row.len())?;
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "constraint row {n} contains a non-finite entry"
                )));
            }
            let len = norm(&row);
            if len <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "constraint row {n} is the zero vector"
                )));
            }
            normalized.push(row.into_iter().map(|v| v / len).collect::<Vec<f64>>());
        }

        let mut cone = PolyhedralCone {
            rows: normalized,
            dim,
            alphas: Vec::new(),
        };
        cone.alphas = cone.compute_alphas()?;
        Ok(cone)
    }

    /// The nonnegative orthant of the given dimension (identity `W`).
    pub fn orthant(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "orthant dimension must be >= 1".into(),
            ));
        }
        let rows = (0..dim)
            .map(|n| {
                let mut row = vec![0.0; dim];
                row[n] = 1.0;
                row
            })
            .collect();
        Self::from_rows(rows)
    }

    /// The 2-D sector of polar angles `[pi/4 - theta/2, pi/4 + theta/2]`
    /// for `theta` in (0, pi), described by its two inward boundary normals.
    ///
    /// `theta = pi/2` gives the nonnegative orthant; smaller angles tighten
    /// the order, larger angles relax it.
    pub fn theta_cone(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!(
                "sector angle must lie in (0, pi), got {theta}"
            )));
        }
        let lo = std::f64::consts::FRAC_PI_4 - theta / 2.0;
        let hi = std::f64::consts::FRAC_PI_4 + theta / 2.0;
        // Inward normal of the lower boundary ray points a quarter turn
        // counterclockwise; for the upper ray a quarter turn clockwise.
        let a = lo + std::f64::consts::FRAC_PI_2;
        let b = hi - std::f64::consts::FRAC_PI_2;
        Self::from_rows(vec![vec![a.cos(), a.sin()], vec![b.cos(), b.sin()]])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_constraints(&self) -> usize {
        self.rows.len()
    }

    /// The unit-norm constraint rows `w_1', ..., w_N'`.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// The coefficients `alpha_n` in (0, 1]; `alpha_n = 1` exactly when
    /// `w_n` itself lies in the cone.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Generators of the dual cone `C+ = { sum_n lambda_n w_n : lambda >= 0 }`:
    /// the rows of `W`. Every generator `g` satisfies `g' x >= 0` for all
    /// `x` in the cone, which is the weight-vector reading of the order.
    pub fn dual_generators(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Membership test: `min_n w_n' x >= -tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        Ok(self.min_slack(x)? >= -tol)
    }

    /// Interior membership test: `min_n w_n' x > tol`.
    pub fn strictly_contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        Ok(self.min_slack(x)? > tol)
    }

    /// `min_n w_n' x`; nonnegative exactly on the cone.
    pub fn min_slack(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        Ok(self
            .rows
            .iter()
            .map(|w| dot(w, x))
            .fold(f64::INFINITY, f64::min))
    }

    /// Euclidean projection onto the cone.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        let zeros = vec![0.0; self.rows.len()];
        Ok(project_onto_polyhedron(&self.rows, &zeros, x)?.point)
    }

    /// Euclidean distance to the cone; zero exactly on the cone.
    pub fn distance(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        let p = self.project(x)?;
        Ok(x.iter()
            .zip(&p)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    /// Distance from `x` to the complement of the open cone:
    /// `max(0, min_n w_n' x)`. The formula is exact because rows are
    /// unit-norm: `x - (w_n' x) w_n` lies outside `Int(C)` and realizes the
    /// distance for the minimizing row.
    pub fn distance_to_interior_complement(&self, x: &[f64]) -> Result<f64> {
        Ok(self.min_slack(x)?.max(0.0))
    }

    fn compute_alphas(&self) -> Result<Vec<f64>> {
        let zeros = vec![0.0; self.rows.len()];
        let mut alphas = Vec::with_capacity(self.rows.len());
        for (n, w) in self.rows.iter().enumerate() {
            let proj = project_onto_polyhedron(&self.rows, &zeros, w)?;
            // sup over the unit ball of the cone of w' u equals the norm of
            // the projection of w onto the cone (Moreau: the residual is
            // orthogonal to the projection and nonpositive on the cone).
            let alpha = norm(&proj.point).min(1.0);
            if alpha <= DEFAULT_TOL {
                return Err(Error::DegenerateCone(format!(
                    "alpha_{n} = {alpha:.3e}; the cone has empty interior or is \
                     too thin for gap computations"
                )));
            }
            alphas.push(alpha);
        }
        Ok(alphas)
    }
}

/// Result of projecting a point onto `{ y : W y >= b }`.
#[derive(Debug, Clone)]
pub struct Projection {
    /// The projected point.
    pub point: Vec<f64>,
    /// KKT multipliers: `point = x + sum_n multipliers[n] * w_n`.
    pub multipliers: Vec<f64>,
    /// Dykstra cycles used.
    pub cycles: usize,
    /// Largest remaining constraint violation, in distance units.
    pub max_violation: f64,
    /// Largest complementary-slackness product `t_n * (w_n' y - b_n)`.
    pub slackness: f64,
}

/// Euclidean projection of `x` onto the polyhedron `{ y : rows[n]' y >= bounds[n] }`
/// by Dykstra's alternating projections over the halfspaces.
///
/// The iteration stops once a full cycle moves the iterate by less than
/// 1e-10, with a cap of 1e5 cycles. On exit the point must violate no
/// constraint by more than 1e-8 and have slackness residual at most 1e-6,
/// otherwise a convergence error reporting both residuals is returned.
/// The polyhedron is assumed nonempty.
pub fn project_onto_polyhedron(rows: &[Vec<f64>], bounds: &[f64], x: &[f64]) -> Result<Projection> {
    if rows.is_empty() {
        return Err(Error::InvalidParameter(
            "polyhedron needs at least one halfspace".into(),
        ));
    }
    let dim = x.len();
    if bounds.len() != rows.len() {
        return Err(Error::DimensionMismatch {
            expected: rows.len(),
            actual: bounds.len(),
        });
    }
    let mut norms_sq = Vec::with_capacity(rows.len());
    for row in rows {
        check_dim(dim, row.len())?;
        let nsq = dot(row, row);
        if nsq <= 0.0 {
            return Err(Error::InvalidParameter(
                "polyhedron row is the zero vector".into(),
            ));
        }
        norms_sq.push(nsq);
    }

    let mut point = x.to_vec();
    let mut multipliers = vec![0.0; rows.len()];
    let mut prev = vec![0.0; dim];
    let mut cycles = 0;

    while cycles < DYKSTRA_MAX_CYCLES {
        cycles += 1;
        prev.copy_from_slice(&point);
        for (n, row) in rows.iter().enumerate() {
            // Remove this constraint's previous correction (-t_n w_n), then
            // project the restored point onto the halfspace.
            let t_old = multipliers[n];
            if t_old != 0.0 {
                for (p, w) in point.iter_mut().zip(row) {
                    *p -= t_old * w;
                }
            }
            let deficit = (bounds[n] - dot(row, &point)) / norms_sq[n];
            if deficit > 0.0 {
                for (p, w) in point.iter_mut().zip(row) {
                    *p += deficit * w;
                }
                multipliers[n] = deficit;
            } else {
                multipliers[n] = 0.0;
            }
        }
        let moved = point
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if moved < DYKSTRA_MOVEMENT_TOL {
            break;
        }
    }

    let mut max_violation = 0.0f64;
    let mut slackness = 0.0f64;
    for (n, row) in rows.iter().enumerate() {
        let slack = dot(row, &point) - bounds[n];
        max_violation = max_violation.max(-slack / norms_sq[n].sqrt());
        slackness = slackness.max(multipliers[n] * slack.max(0.0));
    }

    // A capped-out iteration can still be acceptable if the residuals are
    // already inside the tolerances; a stalled one that stopped short of
    // feasibility is not.
    if max_violation > DYKSTRA_VIOLATION_TOL || slackness > DYKSTRA_SLACKNESS_TOL {
        return Err(Error::ProjectionDidNotConverge {
            cycles,
            violation: max_violation,
            slackness,
        });
    }

    Ok(Projection {
        point,
        multipliers,
        cycles,
        max_violation,
        slackness,
    })
}

/// The two cone families with known distortion constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConeFamily {
    /// Nonnegative orthant in the given dimension.
    Orthant(usize),
    /// 2-D sector of angular width theta (radians), centered on the diagonal.
    Theta2D(f64),
}

impl ConeFamily {
    pub fn build(&self) -> Result<PolyhedralCone> {
        match *self {
            ConeFamily::Orthant(dim) => PolyhedralCone::orthant(dim),
            ConeFamily::Theta2D(theta) => PolyhedralCone::theta_cone(theta),
        }
    }
}

/// How a set of distortion constants was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaProvenance {
    ClosedForm,
    /// Sampling maximum: a lower bound on the true supremum.
    EmpiricalEstimate,
}

/// The distortion constants `beta1`, `beta2` and `beta = max(beta1, beta2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeConstants {
    pub beta1: f64,
    pub beta2: f64,
    pub beta: f64,
    pub provenance: BetaProvenance,
}

impl ConeConstants {
    fn new(beta1: f64, beta2: f64, provenance: BetaProvenance) -> Self {
        ConeConstants {
            beta1,
            beta2,
            beta: beta1.max(beta2),
            provenance,
        }
    }
}

/// Exact distortion constants for the built-in families.
///
/// The orthant has `beta1 = beta2 = 1` in every dimension. The 2-D sector of
/// width theta has `beta1 = beta2 = csc(theta)` for theta in (0, pi/2] and
/// `beta1 = beta2 = 1` for theta in (pi/2, pi): once the sector contains the
/// orthant, shifting the cone by an outside point no longer cuts off the
/// nearest boundary region.
pub fn beta_closed_form(family: ConeFamily) -> Result<ConeConstants> {
    match family {
        ConeFamily::Orthant(dim) => {
            if dim == 0 {
                return Err(Error::InvalidParameter(
                    "orthant dimension must be >= 1".into(),
                ));
            }
            Ok(ConeConstants::new(1.0, 1.0, BetaProvenance::ClosedForm))
        }
        ConeFamily::Theta2D(theta) => {
            if !(theta > 0.0 && theta < std::f64::consts::PI) {
                return Err(Error::InvalidParameter(format!(
                    "sector angle must lie in (0, pi), got {theta}"
                )));
            }
            let b = if theta <= std::f64::consts::FRAC_PI_2 {
                1.0 / theta.sin()
            } else {
                1.0
            };
            Ok(ConeConstants::new(b, b, BetaProvenance::ClosedForm))
        }
    }
}

/// Sampling estimate of the distortion constants for an arbitrary cone.
///
/// Draws `samples` standard Gaussian points (scale does not matter: both
/// ratios are positively homogeneous of degree zero). Points outside the
/// cone contribute to the `beta1` ratio
/// `d(x, C n (x+C)) / d(x, C)` -- the numerator set is the polyhedron
/// `{ y : W y >= (W x)+ }`, so both distances come from projections.
/// Interior points contribute to the `beta2` ratio, whose numerator
/// `d(x, (Int C)^c n (x - C))` reduces to the closed form
/// `min_n (w_n' x)+ / alpha_n` (the escape-gap identity), and whose
/// denominator is `min_n w_n' x`.
///
/// Samples whose denominator falls below 1e-3 are skipped: so close to the
/// boundary the quotient is dominated by projection tolerance rather than
/// geometry. Returned constants are clamped to >= 1, which every ordering
/// cone satisfies. The result is a lower bound on the true suprema and is
/// tagged [`BetaProvenance::EmpiricalEstimate`].
pub fn beta_empirical(
    cone: &PolyhedralCone,
    samples: usize,
    rng_seed: u64,
) -> Result<ConeConstants> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let mut rng = Rng::new(rng_seed);
    let mut best1: Option<f64> = None;
    let mut best2: Option<f64> = None;

    for _ in 0..samples {
        let x = rng.gaussian_vec(cone.dim());
        let slack = cone.min_slack(&x)?;
        if slack < 0.0 {
            // x outside the cone: beta1 ratio.
            let denom = cone.distance(&x)?;
            if denom < BETA_DENOMINATOR_FLOOR {
                continue;
            }
            let shifted: Vec<f64> = cone.rows().iter().map(|w| dot(w, &x).max(0.0)).collect();
            let proj = project_onto_polyhedron(cone.rows(), &shifted, &x)?;
            let num = x
                .iter()
                .zip(&proj.point)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let ratio = num / denom;
            best1 = Some(best1.map_or(ratio, |b| b.max(ratio)));
        } else if slack > 0.0 {
            // x interior: beta2 ratio via the escape-gap closed form.
            let denom = slack;
            if denom < BETA_DENOMINATOR_FLOOR {
                continue;
            }
            let num = cone
                .rows()
                .iter()
                .zip(cone.alphas())
                .map(|(w, &a)| dot(w, &x).max(0.0) / a)
                .fold(f64::INFINITY, f64::min);
            let ratio = num / denom;
            best2 = Some(best2.map_or(ratio, |b| b.max(ratio)));
        }
    }

    match (best1, best2) {
        (Some(b1), Some(b2)) => Ok(ConeConstants::new(
            b1.max(1.0),
            b2.max(1.0),
            BetaProvenance::EmpiricalEstimate,
        )),
        _ => Err(Error::EstimationFailed(
            "no usable samples on one side of the cone boundary; \
             increase the sample count"
                .into(),
        )),
    }
}

// JSON form: {"dim": D, "rows": [[w11, ..., w1D], ...]}. Rows are
// re-normalized on load and non-finite entries are rejected.
#[derive(Serialize, Deserialize)]
struct ConeRepr {
    dim: usize,
    rows: Vec<Vec<f64>>,
}

impl Serialize for PolyhedralCone {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ConeRepr {
            dim: self.dim,
            rows: self.rows.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyhedralCone {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ConeRepr::deserialize(deserializer)?;
        if repr.rows.iter().any(|r| r.len() != repr.dim) {
            return Err(D::Error::custom(format!(
                "cone rows do not match declared dimension {}",
                repr.dim
            )));
        }
        PolyhedralCone::from_rows(repr.rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn orthant_rows_are_identity() {
        let cone = PolyhedralCone::orthant(2).unwrap();
        assert_eq!(cone.rows(), &[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let one = PolyhedralCone::orthant(1).unwrap();
        assert_eq!(one.rows(), &[vec![1.0]]);
    }

    #[test]
    fn orthant_membership_signs() {
        let cone = PolyhedralCone::orthant(3).unwrap();
        assert!(cone.contains(&[1.0, 1.0, 1.0], 0.0).unwrap());
        assert!(!cone.contains(&[-1.0, 0.0, 0.0], 0.0).unwrap());
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(matches!(
            PolyhedralCone::orthant(0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn theta_cone_right_angle_is_the_orthant() {
        let cone = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_2).unwrap();
        assert!(cone.contains(&[1.0, 0.0], DEFAULT_TOL).unwrap());
        assert!(cone.contains(&[0.0, 1.0], DEFAULT_TOL).unwrap());
        assert!(!cone.contains(&[-0.01, 1.0], DEFAULT_TOL).unwrap());
    }

    #[test]
    fn theta_cone_quarter_angle_membership() {
        let cone = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_4).unwrap();
        let diag = [
            std::f64::consts::FRAC_PI_4.cos(),
            std::f64::consts::FRAC_PI_4.sin(),
        ];
        assert!(cone.contains(&diag, DEFAULT_TOL).unwrap());
        assert!(!cone.contains(&[1.0, 0.0], DEFAULT_TOL).unwrap());
    }

    #[test]
    fn theta_cone_boundary_direction_has_zero_slack() {
        // Width 3pi/4: lower boundary ray sits at angle pi/4 - 3pi/8 = -pi/8.
        let cone = PolyhedralCone::theta_cone(3.0 * std::f64::consts::FRAC_PI_4).unwrap();
        let a = -std::f64::consts::PI / 8.0;
        let x = [a.cos(), a.sin()];
        let slacks: Vec<f64> = cone.rows().iter().map(|w| dot(w, &x)).collect();
        assert!(
            slacks.iter().any(|s| s.abs() <= 1e-9),
            "expected one zero slack, got {slacks:?}"
        );
        assert!(cone.contains(&x, 1e-9).unwrap());
    }

    #[test]
    fn theta_cone_rejects_bad_angles() {
        assert!(PolyhedralCone::theta_cone(0.0).is_err());
        assert!(PolyhedralCone::theta_cone(std::f64::consts::PI).is_err());
        assert!(PolyhedralCone::theta_cone(-1.0).is_err());
    }

    #[test]
    fn membership_tolerance_semantics() {
        let cone = PolyhedralCone::orthant(2).unwrap();
        assert!(cone.contains(&[-1e-12, 2.0], 1e-9).unwrap());
        assert!(cone.strictly_contains(&[1.0, 2.0], 0.0).unwrap());
        assert!(!cone.strictly_contains(&[0.0, 2.0], 0.0).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch_errors() {
        let cone = PolyhedralCone::orthant(2).unwrap();
        assert!(matches!(
            cone.contains(&[1.0, 2.0, 3.0], 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rows_are_normalized() {
        let cone = PolyhedralCone::from_rows(vec![vec![3.0, 0.0], vec![5.0, 5.0]]).unwrap();
        for row in cone.rows() {
            assert!((norm(row) - 1.0).abs() <= ROW_NORM_TOL);
        }
    }

    #[test]
    fn non_finite_rows_are_rejected() {
        assert!(PolyhedralCone::from_rows(vec![vec![f64::NAN, 1.0]]).is_err());
        assert!(PolyhedralCone::from_rows(vec![vec![f64::INFINITY, 1.0]]).is_err());
        assert!(PolyhedralCone::from_rows(vec![vec![0.0, 0.0]]).is_err());
    }

    #[test]
    fn projection_clips_orthant() {
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let p = project_onto_polyhedron(&rows, &[0.0, 0.0], &[-1.0, -1.0]).unwrap();
        assert_close(p.point[0], 0.0, 1e-12);
        assert_close(p.point[1], 0.0, 1e-12);

        let q = project_onto_polyhedron(&rows, &[0.0, 0.0], &[1.0, 2.0]).unwrap();
        assert_eq!(q.point, vec![1.0, 2.0]);
    }

    #[test]
    fn projection_onto_shifted_orthant() {
        // Feasible set {y1 >= 0, y2 >= 4}; projection of (-3, 4) is (0, 4).
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let p = project_onto_polyhedron(&rows, &[0.0, 4.0], &[-3.0, 4.0]).unwrap();
        assert_close(p.point[0], 0.0, 1e-9);
        assert_close(p.point[1], 4.0, 1e-9);
        let d = ((-3.0 - p.point[0]) as f64).hypot(4.0 - p.point[1]);
        assert_close(d, 3.0, 1e-9);
    }

    #[test]
    fn projection_multipliers_reconstruct_point() {
        let cone = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_4).unwrap();
        let x = [-0.3, -1.1];
        let zeros = vec![0.0; 2];
        let p = project_onto_polyhedron(cone.rows(), &zeros, &x).unwrap();
        for d in 0..2 {
            let rebuilt = x[d]
                + p.multipliers
                    .iter()
                    .zip(cone.rows())
                    .map(|(t, w)| t * w[d])
                    .sum::<f64>();
            assert_close(rebuilt, p.point[d], 1e-12);
        }
        assert!(p.max_violation <= 1e-8);
        assert!(p.slackness <= 1e-6);
    }

    #[test]
    fn distance_examples() {
        let cone = PolyhedralCone::orthant(2).unwrap();
        assert_close(
            cone.distance(&[-1.0, -1.0]).unwrap(),
            std::f64::consts::SQRT_2,
            1e-9,
        );
        assert_close(cone.distance(&[3.0, 0.0]).unwrap(), 0.0, 1e-12);

        // Sector of width pi/4: (1, 0) sits at angle pi/8 below the lower
        // boundary ray, so the distance is sin(pi/8).
        let sector = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_4).unwrap();
        assert_close(
            sector.distance(&[1.0, 0.0]).unwrap(),
            (std::f64::consts::PI / 8.0).sin(),
            1e-9,
        );
    }

    #[test]
    fn interior_complement_distance_examples() {
        let cone = PolyhedralCone::orthant(2).unwrap();
        assert_close(
            cone.distance_to_interior_complement(&[2.0, 3.0]).unwrap(),
            2.0,
            1e-12,
        );
        assert_close(
            cone.distance_to_interior_complement(&[-1.0, 3.0]).unwrap(),
            0.0,
            1e-12,
        );
        let sector = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_2).unwrap();
        assert_close(
            sector.distance_to_interior_complement(&[5.0, 1.0]).unwrap(),
            1.0,
            1e-9,
        );
    }

    #[test]
    fn alpha_examples() {
        let orthant = PolyhedralCone::orthant(2).unwrap();
        assert_eq!(orthant.alphas(), &[1.0, 1.0]);

        // Width pi/4: each normal is pi/4 away from the nearest cone direction.
        let sector = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_4).unwrap();
        for &a in sector.alphas() {
            assert_close(a, std::f64::consts::FRAC_PI_4.cos(), 1e-9);
        }

        let right = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_2).unwrap();
        for &a in right.alphas() {
            assert_close(a, 1.0, 1e-9);
        }
    }

    #[test]
    fn beta_closed_forms() {
        let o = beta_closed_form(ConeFamily::Orthant(5)).unwrap();
        assert_eq!((o.beta1, o.beta2, o.beta), (1.0, 1.0, 1.0));
        assert_eq!(o.provenance, BetaProvenance::ClosedForm);

        let small = beta_closed_form(ConeFamily::Theta2D(std::f64::consts::FRAC_PI_4)).unwrap();
        assert_close(small.beta, std::f64::consts::SQRT_2, 1e-15);

        let large =
            beta_closed_form(ConeFamily::Theta2D(3.0 * std::f64::consts::FRAC_PI_4)).unwrap();
        assert_eq!(large.beta, 1.0);

        assert!(beta_closed_form(ConeFamily::Theta2D(4.0)).is_err());
        assert!(beta_closed_form(ConeFamily::Orthant(0)).is_err());
    }

    #[test]
    fn beta_empirical_orthant_is_one() {
        let cone = PolyhedralCone::orthant(2).unwrap();
        let est = beta_empirical(&cone, 1000, 17).unwrap();
        assert!(
            est.beta >= 1.0 && est.beta <= 1.0 + 1e-6,
            "beta={}",
            est.beta
        );
        assert_eq!(est.provenance, BetaProvenance::EmpiricalEstimate);
    }

    #[test]
    fn beta_empirical_wide_sector_is_one() {
        let cone = PolyhedralCone::theta_cone(3.0 * std::f64::consts::FRAC_PI_4).unwrap();
        let est = beta_empirical(&cone, 1000, 18).unwrap();
        assert!(
            est.beta >= 1.0 && est.beta <= 1.0 + 1e-6,
            "beta={}",
            est.beta
        );
    }

    #[test]
    fn dual_generators_of_orthant_are_self_dual() {
        let cone = PolyhedralCone::orthant(2).unwrap();
        for g in cone.dual_generators() {
            assert!(cone.contains(g, 0.0).unwrap());
        }
    }

    #[test]
    fn dual_generators_of_quarter_sector() {
        let cone = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_4).unwrap();
        let angles: Vec<f64> = cone
            .dual_generators()
            .iter()
            .map(|g| g[1].atan2(g[0]))
            .collect();
        assert_close(angles[0], 5.0 * std::f64::consts::PI / 8.0, 1e-12);
        assert_close(angles[1], -std::f64::consts::PI / 8.0, 1e-12);
        for g in cone.dual_generators() {
            assert_close(norm(g), 1.0, 1e-12);
        }
    }

    #[test]
    fn dual_generators_are_nonnegative_on_the_cone() {
        let cone = PolyhedralCone::theta_cone(2.0).unwrap();
        let mut rng = Rng::new(5);
        for _ in 0..1000 {
            let raw = rng.gaussian_vec(2);
            let x = cone.project(&raw).unwrap();
            for g in cone.dual_generators() {
                assert!(dot(g, &x) >= -1e-9);
            }
        }
    }

    #[test]
    fn cone_json_round_trip() {
        let cone = PolyhedralCone::theta_cone(1.1).unwrap();
        let json = serde_json::to_string(&cone).unwrap();
        let back: PolyhedralCone = serde_json::from_str(&json).unwrap();
        for (a, b) in cone.rows().iter().zip(back.rows()) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn cone_json_rejects_non_finite_and_bad_dim() {
        let bad: std::result::Result<PolyhedralCone, _> =
            serde_json::from_str(r#"{"dim": 2, "rows": [[1.0, null]]}"#);
        assert!(bad.is_err());
        let mismatched: std::result::Result<PolyhedralCone, _> =
            serde_json::from_str(r#"{"dim": 3, "rows": [[1.0, 0.0]]}"#);
        assert!(mismatched.is_err());
    }
}
