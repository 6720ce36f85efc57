use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::hermite_function;

/// Weighted ℓ² norms on spectral coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    L2,
    /// weight k
    H10,
    /// weight max(1, |k|)
    H1p,
    /// weight max(1, k)
    H1Neumann,
    /// weight √(2k+1)
    H1h,
    /// weight √k / |φ_{k-1}(a)|, and 1 for k = 0
    Hha(f64),
}

/// Below this, φ_{k-1}(a) is treated as a zero of the Hermite function.
const HERMITE_ZERO: f64 = 1e-13;

impl NormKind {
    pub fn weight(self, k: i64) -> Result<f64> {
        let kf = k as f64;
        Ok(match self {
            NormKind::L2 => 1.0,
            NormKind::H10 => kf,
            NormKind::H1p => kf.abs().max(1.0),
            NormKind::H1Neumann => kf.max(1.0),
            NormKind::H1h => (2.0 * kf + 1.0).sqrt(),
            NormKind::Hha(a) => {
                if k == 0 {
                    1.0
                } else {
                    let h = hermite_function(k as usize - 1, a);
                    if h.abs() <= HERMITE_ZERO {
                        return Err(Error::domain(format!(
                            "φ_{}({a}) vanishes, so the weight for index {k} is undefined",
                            k - 1
                        )));
                    }
                    kf.sqrt() / h.abs()
                }
            }
        })
    }

    pub fn weights(self, indices: &[i64]) -> Result<Vec<f64>> {
        indices.iter().map(|&k| self.weight(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(NormKind::H10.weight(3).unwrap(), 3.0);
        assert_eq!(NormKind::H1p.weight(-4).unwrap(), 4.0);
        assert_eq!(NormKind::H1p.weight(0).unwrap(), 1.0);
        assert_eq!(NormKind::H1Neumann.weight(0).unwrap(), 1.0);
        assert!((NormKind::H1h.weight(2).unwrap() - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(NormKind::Hha(0.3).weight(0).unwrap(), 1.0);
    }

    #[test]
    fn hermite_zero_is_a_domain_error() {
        // φ_1(0) = 0
        let err = NormKind::Hha(0.0).weight(2).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("index 2")));
        assert!(NormKind::Hha(0.0).weight(1).is_ok());
    }
}
