//! Design sets and Pareto optimality under the cone order.
//!
//! Design i is dominated by design j when `mu_j - mu_i` lies in the cone and
//! is not the zero vector. The Pareto set collects the designs dominated by
//! nobody. Duplicated mean vectors never dominate each other (the zero
//! difference is excluded), so exact duplicates are all Pareto; the
//! tolerance decides what counts as "exact".

use serde::{Deserialize, Serialize};

use crate::cone::{PolyhedralCone, check_dim, norm};
use crate::error::{Error, Result};

/// A finite set of designs with mean reward vectors in `R^D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSet {
    means: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl DesignSet {
    /// Labels default to the row index.
    pub fn from_means(means: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (0..means.len()).map(|i| i.to_string()).collect();
        Self::new(means, labels)
    }

    pub fn new(means: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::EmptyInput("design set has no designs".into()));
        }
        if labels.len() != means.len() {
            return Err(Error::DimensionMismatch {
                expected: means.len(),
                actual: labels.len(),
            });
        }
        let dim = means[0].len();
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "design vectors must have dimension >= 1".into(),
            ));
        }
        for (i, mean) in means.iter().enumerate() {
            check_dim(dim, mean.len())?;
            if mean.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "design {i} has a non-finite mean entry"
                )));
            }
        }
        Ok(DesignSet { means, labels })
    }

    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.means[0].len()
    }

    pub fn mean(&self, i: usize) -> &[f64] {
        &self.means[i]
    }

    pub fn means(&self) -> &[Vec<f64>] {
        &self.means
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// True when design `i` (mean `mu_i`) is dominated by design `j` (mean
/// `mu_j`): the difference lies in the cone (within `tol`) and its norm
/// exceeds `tol`.
pub fn dominates(cone: &PolyhedralCone, mu_i: &[f64], mu_j: &[f64], tol: f64) -> Result<bool> {
    check_dim(mu_i.len(), mu_j.len())?;
    let delta: Vec<f64> = mu_j.iter().zip(mu_i).map(|(a, b)| a - b).collect();
    Ok(cone.contains(&delta, tol)? && norm(&delta) > tol)
}

/// Indices (ascending) of the designs not dominated by any other design.
/// Pairwise O(K^2), which is adequate for design sets up to a few thousand.
pub fn pareto_set(design: &DesignSet, cone: &PolyhedralCone, tol: f64) -> Result<Vec<usize>> {
    check_dim(cone.dim(), design.dim())?;
    let k = design.len();
    let mut result = Vec::new();
    'candidates: for i in 0..k {
        for j in 0..k {
            if i != j && dominates(cone, design.mean(i), design.mean(j), tol)? {
                continue 'candidates;
            }
        }
        result.push(i);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::DEFAULT_TOL;

    fn orthant2() -> PolyhedralCone {
        PolyhedralCone::orthant(2).unwrap()
    }

    #[test]
    fn boundary_difference_dominates() {
        assert!(dominates(&orthant2(), &[0.0, 0.0], &[1.0, 0.0], DEFAULT_TOL).unwrap());
    }

    #[test]
    fn zero_difference_never_dominates() {
        assert!(!dominates(&orthant2(), &[1.0, 1.0], &[1.0, 1.0], DEFAULT_TOL).unwrap());
    }

    #[test]
    fn wide_sector_dominance() {
        // (2, -0.5) sits at about -14 degrees, inside the width-3pi/4 sector
        // spanning [-22.5, 112.5] degrees.
        let cone = PolyhedralCone::theta_cone(3.0 * std::f64::consts::FRAC_PI_4).unwrap();
        assert!(dominates(&cone, &[0.0, 0.0], &[2.0, -0.5], DEFAULT_TOL).unwrap());
    }

    #[test]
    fn pareto_set_simple() {
        let design =
            DesignSet::from_means(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(
            pareto_set(&design, &orthant2(), DEFAULT_TOL).unwrap(),
            vec![1]
        );
    }

    #[test]
    fn pareto_set_all_incomparable() {
        let design =
            DesignSet::from_means(vec![vec![0.0, 3.0], vec![3.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(
            pareto_set(&design, &orthant2(), DEFAULT_TOL).unwrap(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn duplicate_means_are_all_pareto() {
        let design = DesignSet::from_means(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(
            pareto_set(&design, &orthant2(), DEFAULT_TOL).unwrap(),
            vec![0, 1]
        );
    }

    #[test]
    fn design_set_validation() {
        assert!(DesignSet::from_means(vec![]).is_err());
        assert!(DesignSet::from_means(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(DesignSet::from_means(vec![vec![f64::NAN]]).is_err());
        assert!(DesignSet::new(vec![vec![1.0]], vec![]).is_err());
    }

    #[test]
    fn dominates_rejects_dimension_mismatch() {
        assert!(dominates(&orthant2(), &[0.0], &[1.0, 0.0], DEFAULT_TOL).is_err());
    }
}
