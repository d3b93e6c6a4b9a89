use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// `max_i |est_i - ref_i| / ref_i`.
    pub max_relative_error: f64,
    pub l1_error: f64,
    /// Vertex where the maximum is attained.
    pub worst_vertex: usize,
    pub reference: String,
}

/// Maximum relative error of `est` against a strictly positive `reference`.
pub fn max_relative_error(est: &[f64], reference: &[f64]) -> Result<ErrorReport> {
    if est.len() != reference.len() {
        return Err(Error::DimensionMismatch {
            expected: reference.len(),
            actual: est.len(),
        });
    }
    let mut worst = 0.0;
    let mut worst_vertex = 0;
    let mut l1 = 0.0;
    for (v, (&e, &r)) in est.iter().zip(reference).enumerate() {
        if !(r > 0.0) {
            return Err(Error::ZeroReference { vertex: v });
        }
        let diff = (e - r).abs();
        l1 += diff;
        let rel = diff / r;
        if rel > worst {
            worst = rel;
            worst_vertex = v;
        }
    }
    Ok(ErrorReport {
        max_relative_error: worst,
        l1_error: l1,
        worst_vertex,
        reference: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_vectors() {
        let r = max_relative_error(&[0.25, 0.75], &[0.25, 0.75]).unwrap();
        assert_eq!(r.max_relative_error, 0.0);
        assert_eq!(r.l1_error, 0.0);
    }

    #[test]
    fn simple_arithmetic() {
        let r = max_relative_error(&[0.45, 0.55], &[0.5, 0.5]).unwrap();
        assert!((r.max_relative_error - 0.1).abs() < 1e-15);
        assert!((r.l1_error - 0.1).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            max_relative_error(&[1.0], &[0.5, 0.5]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            max_relative_error(&[0.5, 0.5], &[1.0, 0.0]),
            Err(Error::ZeroReference { vertex: 1 })
        ));
    }
}
