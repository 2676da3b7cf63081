//! Direction-free gaps between designs under a cone order.
//!
//! For a mean difference `delta = mu_j - mu_i` the two gaps are
//!
//! ```text
//!   escape(delta) = min step along any unit cone direction added to mu_i
//!                   that lifts i out of strong domination by j
//!                 = min_n (w_n' delta)+ / alpha_n
//!   cover(delta)  = min step along any unit cone direction added to mu_j
//!                   that makes j weakly dominate i
//!                 = d(delta, C n (delta + C))
//! ```
//!
//! The escape gap has the closed form above, so the nonconvex set behind its
//! distance characterization is never projected onto. The cover gap has no
//! closed form; it is the distance from `delta` to the polyhedron
//! `{ y : W y >= (W delta)+ }` and is computed by projection.
//!
//! Exactly one of three regimes holds for every pair: `delta` interior
//! (escape > 0, cover = 0), `delta` on the boundary (both zero), or `delta`
//! outside the cone (escape = 0, cover > 0). In particular at least one gap
//! is always zero.
//!
//! The per-pair distance ratio in (0, 1] compares the unconstrained distance
//! (to the cone, or to the interior complement) with its constrained
//! counterpart above; it is bounded below by `1/beta` and scales the noise
//! level a pair can tolerate before its empirical order flips.

use std::fmt;
use std::io::Write;

use crate::cone::{PolyhedralCone, check_dim, dot, project_onto_polyhedron};
use crate::error::{Error, Result};
use crate::pareto::{DesignSet, pareto_set};

/// Trichotomy of a mean difference relative to the cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `delta` interior: i strictly improved by j.
    StrongDominance,
    /// `delta` on the cone boundary.
    BoundaryDominance,
    /// `delta` outside the cone.
    NoDominance,
}

impl fmt::Display for Dominance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dominance::StrongDominance => "strong",
            Dominance::BoundaryDominance => "boundary",
            Dominance::NoDominance => "none",
        })
    }
}

/// Minimum improving step that frees the trailing design from strong
/// domination: `min_n (w_n' delta)+ / alpha_n`. Strictly positive exactly
/// when `delta` lies in the cone interior.
pub fn escape_gap(cone: &PolyhedralCone, delta: &[f64]) -> Result<f64> {
    check_dim(cone.dim(), delta.len())?;
    Ok(cone
        .rows()
        .iter()
        .zip(cone.alphas())
        .map(|(w, &a)| dot(w, delta).max(0.0) / a)
        .fold(f64::INFINITY, f64::min))
}

/// Minimum improving step that makes the leading design weakly dominate:
/// the distance from `delta` to `{ y : W y >= (W delta)+ }`. Zero exactly
/// when `delta` lies in the cone.
pub fn cover_gap(cone: &PolyhedralCone, delta: &[f64]) -> Result<f64> {
    check_dim(cone.dim(), delta.len())?;
    let bounds: Vec<f64> = cone.rows().iter().map(|w| dot(w, delta).max(0.0)).collect();
    let proj = project_onto_polyhedron(cone.rows(), &bounds, delta)?;
    Ok(delta
        .iter()
        .zip(&proj.point)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// Classify `delta` against the cone at the given boundary tolerance.
pub fn classify(cone: &PolyhedralCone, delta: &[f64], tol: f64) -> Result<Dominance> {
    let slack = cone.min_slack(delta)?;
    Ok(if slack > tol {
        Dominance::StrongDominance
    } else if slack >= -tol {
        Dominance::BoundaryDominance
    } else {
        Dominance::NoDominance
    })
}

/// Ratio of unconstrained to constrained distance for one pair, in (0, 1].
///
/// Outside the cone it is `d(delta, C) / cover(delta)`; in the interior it is
/// `d(delta, (Int C)^c) / escape(delta)` (the escape gap equals the distance
/// to `(Int C)^c n (delta - C)`); on the boundary it is 1 by convention.
/// A constrained distance below `tol` is treated as the boundary case rather
/// than an error: exact-boundary differences are measure zero but do occur
/// in synthetic data.
pub fn distance_ratio(cone: &PolyhedralCone, delta: &[f64], tol: f64) -> Result<f64> {
    let slack = cone.min_slack(delta)?;
    let (numerator, denominator) = if slack < -tol {
        (cone.distance(delta)?, cover_gap(cone, delta)?)
    } else if slack > tol {
        (
            cone.distance_to_interior_complement(delta)?,
            escape_gap(cone, delta)?,
        )
    } else {
        return Ok(1.0);
    };
    if denominator < tol {
        return Ok(1.0);
    }
    Ok((numerator / denominator).min(1.0))
}

/// Both gaps, the distance ratio, and the dominance class for one ordered
/// pair of designs.
#[derive(Debug, Clone, Copy)]
pub struct PairwiseGaps {
    pub escape: f64,
    pub cover: f64,
    pub distance_ratio: f64,
    pub class: Dominance,
}

/// All pairwise gaps of a design set plus the per-design suboptimality gaps
/// `max over Pareto j of escape(mu_j - mu_i)` and the Pareto membership mask.
#[derive(Debug, Clone)]
pub struct GapTable {
    n_designs: usize,
    pairwise: Vec<PairwiseGaps>,
    suboptimality: Vec<f64>,
    pareto: Vec<bool>,
}

impl GapTable {
    pub fn n_designs(&self) -> usize {
        self.n_designs
    }

    /// Gaps for the ordered pair (i, j), i.e. for `delta = mu_j - mu_i`.
    /// The diagonal holds the self-comparison (both gaps zero).
    pub fn pair(&self, i: usize, j: usize) -> &PairwiseGaps {
        &self.pairwise[i * self.n_designs + j]
    }

    /// Suboptimality gap of each design; exactly zero for Pareto designs.
    pub fn suboptimality(&self) -> &[f64] {
        &self.suboptimality
    }

    pub fn pareto_mask(&self) -> &[bool] {
        &self.pareto
    }

    /// Indices of the Pareto designs, ascending.
    pub fn pareto_indices(&self) -> Vec<usize> {
        self.pareto
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i))
            .collect()
    }

    /// CSV with one row per ordered pair: `i,j,m,M,theta,class`.
    pub fn write_pairwise_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "i,j,m,M,theta,class")?;
        for i in 0..self.n_designs {
            for j in 0..self.n_designs {
                if i == j {
                    continue;
                }
                let p = self.pair(i, j);
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    i, j, p.escape, p.cover, p.distance_ratio, p.class
                )?;
            }
        }
        Ok(())
    }

    /// CSV with one row per design: `i,delta_star,is_pareto`.
    pub fn write_per_design_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "i,delta_star,is_pareto")?;
        for i in 0..self.n_designs {
            writeln!(out, "{},{},{}", i, self.suboptimality[i], self.pareto[i])?;
        }
        Ok(())
    }
}

/// Build the full gap table for a design set under a cone.
pub fn build_gap_table(design: &DesignSet, cone: &PolyhedralCone, tol: f64) -> Result<GapTable> {
    let k = design.len();
    if k == 0 {
        return Err(Error::EmptyInput("design set has no designs".into()));
    }
    check_dim(cone.dim(), design.dim())?;

    let pareto_idx = pareto_set(design, cone, tol)?;
    let mut pareto = vec![false; k];
    for &i in &pareto_idx {
        pareto[i] = true;
    }

    let mut pairwise = Vec::with_capacity(k * k);
    let mut delta = vec![0.0; design.dim()];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                pairwise.push(PairwiseGaps {
                    escape: 0.0,
                    cover: 0.0,
                    distance_ratio: 1.0,
                    class: Dominance::BoundaryDominance,
                });
                continue;
            }
            for (d, slot) in delta.iter_mut().enumerate() {
                *slot = design.mean(j)[d] - design.mean(i)[d];
            }
            pairwise.push(PairwiseGaps {
                escape: escape_gap(cone, &delta)?,
                cover: cover_gap(cone, &delta)?,
                distance_ratio: distance_ratio(cone, &delta, tol)?,
                class: classify(cone, &delta, tol)?,
            });
        }
    }

    // Pareto designs get an exact zero rather than a recomputed maximum.
    let suboptimality = (0..k)
        .map(|i| {
            if pareto[i] {
                0.0
            } else {
                pareto_idx
                    .iter()
                    .map(|&j| pairwise[i * k + j].escape)
                    .fold(0.0, f64::max)
            }
        })
        .collect();

    Ok(GapTable {
        n_designs: k,
        pairwise,
        suboptimality,
        pareto,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::DEFAULT_TOL;

    fn orthant2() -> PolyhedralCone {
        PolyhedralCone::orthant(2).unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn escape_gap_orthant_examples() {
        assert_close(escape_gap(&orthant2(), &[1.0, 2.0]).unwrap(), 1.0, 1e-12);
        assert_close(escape_gap(&orthant2(), &[-1.0, 2.0]).unwrap(), 0.0, 1e-12);
    }

    #[test]
    fn escape_gap_quarter_sector_diagonal() {
        // Normals at -pi/8 and 5pi/8, both with slack cos(pi/8) - sin(pi/8)
        // on the diagonal; alpha = cos(pi/4).
        let cone = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_4).unwrap();
        let expected = ((std::f64::consts::PI / 8.0).cos() - (std::f64::consts::PI / 8.0).sin())
            / std::f64::consts::FRAC_PI_4.cos();
        let got = escape_gap(&cone, &[1.0, 1.0]).unwrap();
        assert_close(got, expected, 1e-9);
        assert_close(got, 0.7653668647, 1e-9);
    }

    #[test]
    fn cover_gap_orthant_examples() {
        assert_close(
            cover_gap(&orthant2(), &[-1.0, -1.0]).unwrap(),
            std::f64::consts::SQRT_2,
            1e-9,
        );
        assert_close(cover_gap(&orthant2(), &[1.0, 1.0]).unwrap(), 0.0, 1e-9);
        // Feasible set {y1 >= 0, y2 >= 4}; nearest point to (-3, 4) is (0, 4).
        assert_close(cover_gap(&orthant2(), &[-3.0, 4.0]).unwrap(), 3.0, 1e-9);
    }

    #[test]
    fn classify_trichotomy() {
        let c = orthant2();
        assert_eq!(
            classify(&c, &[1.0, 1.0], DEFAULT_TOL).unwrap(),
            Dominance::StrongDominance
        );
        assert_eq!(
            classify(&c, &[1.0, 0.0], DEFAULT_TOL).unwrap(),
            Dominance::BoundaryDominance
        );
        assert_eq!(
            classify(&c, &[-1.0, -1.0], DEFAULT_TOL).unwrap(),
            Dominance::NoDominance
        );
    }

    #[test]
    fn distance_ratio_boundary_and_orthant() {
        let c = orthant2();
        assert_close(
            distance_ratio(&c, &[1.0, 0.0], DEFAULT_TOL).unwrap(),
            1.0,
            1e-12,
        );
        // Outside the orthant both distances equal sqrt(2).
        assert_close(
            distance_ratio(&c, &[-1.0, -1.0], DEFAULT_TOL).unwrap(),
            1.0,
            1e-9,
        );
    }

    #[test]
    fn distance_ratio_outside_narrow_sector() {
        // delta at polar angle 3pi/4, radius 1: outside the width-pi/4 sector.
        let cone = PolyhedralCone::theta_cone(std::f64::consts::FRAC_PI_4).unwrap();
        let a = 3.0 * std::f64::consts::FRAC_PI_4;
        let delta = [a.cos(), a.sin()];
        let ratio = distance_ratio(&cone, &delta, DEFAULT_TOL).unwrap();
        let beta = 1.0 / std::f64::consts::FRAC_PI_4.sin();
        assert!(
            ratio >= 1.0 / beta - 1e-6 && ratio <= 1.0 + 1e-12,
            "ratio={ratio}"
        );
    }

    #[test]
    fn gap_table_two_designs() {
        let design = DesignSet::from_means(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let table = build_gap_table(&design, &orthant2(), DEFAULT_TOL).unwrap();
        assert_eq!(table.pareto_indices(), vec![1]);
        assert_close(table.suboptimality()[0], 1.0, 1e-12);
        assert_eq!(table.suboptimality()[1], 0.0);
        assert_eq!(table.pair(0, 1).class, Dominance::StrongDominance);
    }

    #[test]
    fn gap_table_incomparable_designs() {
        let design = DesignSet::from_means(vec![vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
        let table = build_gap_table(&design, &orthant2(), DEFAULT_TOL).unwrap();
        assert_eq!(table.pareto_indices(), vec![0, 1]);
        assert_eq!(table.suboptimality(), &[0.0, 0.0]);
        assert_eq!(table.pair(0, 1).class, Dominance::NoDominance);
    }

    #[test]
    fn gap_table_single_design() {
        let design = DesignSet::from_means(vec![vec![2.0, 2.0]]).unwrap();
        let table = build_gap_table(&design, &orthant2(), DEFAULT_TOL).unwrap();
        assert_eq!(table.pareto_indices(), vec![0]);
        assert_eq!(table.suboptimality(), &[0.0]);
    }

    #[test]
    fn csv_export_shapes() {
        let design = DesignSet::from_means(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let table = build_gap_table(&design, &orthant2(), DEFAULT_TOL).unwrap();

        let mut pairwise = Vec::new();
        table.write_pairwise_csv(&mut pairwise).unwrap();
        let text = String::from_utf8(pairwise).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("i,j,m,M,theta,class"));
        assert_eq!(text.lines().count(), 3); // header + two off-diagonal pairs

        let mut per_design = Vec::new();
        table.write_per_design_csv(&mut per_design).unwrap();
        let text = String::from_utf8(per_design).unwrap();
        assert!(text.starts_with("i,delta_star,is_pareto\n"));
        assert!(text.contains("0,1,false"));
        assert!(text.contains("1,0,true"));
    }

    #[test]
    fn gaps_reject_dimension_mismatch() {
        assert!(escape_gap(&orthant2(), &[1.0]).is_err());
        assert!(cover_gap(&orthant2(), &[1.0, 2.0, 3.0]).is_err());
    }
}
