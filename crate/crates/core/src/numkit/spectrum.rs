use serde::{Deserialize, Serialize};

pub const DEFAULT_GAP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub basis: Vec<Vec<f64>>,
}

/// Eigenvalues grouped into `(value, multiplicity)` with eigenbases.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClusteredSpectrum {
    pub clusters: Vec<Cluster>,
}

impl ClusteredSpectrum {
    pub fn dimension(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    /// `(value, multiplicity)` pairs, ascending.
    pub fn pattern(&self) -> Vec<(f64, usize)> {
        self.clusters.iter().map(|c| (c.value, c.multiplicity)).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.multiplicity).collect()
    }

    /// Whether the pattern equals `expected` with values within `tol`.
    pub fn matches(&self, expected: &[(f64, usize)], tol: f64) -> bool {
        self.clusters.len() == expected.len()
            && self.clusters.iter().zip(expected).all(|(c, &(v, m))| c.multiplicity == m && (c.value - v).abs() <= tol)
    }

    pub fn without_bases(mut self) -> Self {
        for c in &mut self.clusters {
            c.basis.clear();
        }
        self
    }
}

/// Merges consecutive values closer than `gap_tol`; a cluster's value is
/// the mean of its members. `vectors` may be empty.
pub fn cluster_spectrum(values: &[f64], vectors: &[Vec<f64>], gap_tol: f64) -> ClusteredSpectrum {
    let mut clusters: Vec<(Vec<f64>, Vec<Vec<f64>>)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let vec = vectors.get(i).cloned();
        match clusters.last_mut() {
            Some((members, basis)) if (v - members[members.len() - 1]).abs() <= gap_tol => {
                members.push(v);
                basis.extend(vec);
            }
            _ => clusters.push((vec![v], vec.into_iter().collect())),
        }
    }
    ClusteredSpectrum {
        clusters: clusters
            .into_iter()
            .map(|(members, basis)| Cluster {
                value: members.iter().sum::<f64>() / members.len() as f64,
                multiplicity: members.len(),
                basis,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_merge() {
        let s = cluster_spectrum(&[1.0, 1.0 + 1e-12, 5.0], &[], 1e-9);
        assert_eq!(s.multiplicities(), vec![2, 1]);
        assert!((s.clusters[0].value - 1.0).abs() < 1e-11);
        assert_eq!(s.clusters[1].value, 5.0);
    }

    #[test]
    fn equal_values_single_cluster() {
        let s = cluster_spectrum(&[0.5; 7], &[], DEFAULT_GAP_TOL);
        assert_eq!(s.pattern(), vec![(0.5, 7)]);
    }

    #[test]
    fn empty_input() {
        assert_eq!(cluster_spectrum(&[], &[], 1e-8).dimension(), 0);
    }
}
