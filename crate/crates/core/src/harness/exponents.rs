use serde::{Deserialize, Serialize};

/// Norms closer to 1 than this get their margin recorded.
pub const BOUNDARY_WINDOW: f64 = 1e-6;

/// Exponents `s_j` of the composite bound: `0` when `‖g_j‖ ≤ 1`, else `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentSelector {
    pub norms: Vec<f64>,
    pub r: u32,
    pub exponents: Vec<u32>,
    /// `(j, |‖g_j‖ − 1|)` for norms within [`BOUNDARY_WINDOW`] of 1.
    pub boundary_margins: Vec<(usize, f64)>,
}

impl ExponentSelector {
    /// `Π_j ‖g_j‖^{s_j}`.
    pub fn product(&self) -> f64 {
        self.norms
            .iter()
            .zip(&self.exponents)
            .map(|(&g, &s)| if s == 0 { 1.0 } else { g.powi(s as i32) })
            .product()
    }
}

/// Applies the two-case rule with an exact comparison at the computed norm.
pub fn select_exponents(norms: &[f64], r: u32) -> ExponentSelector {
    let exponents = norms.iter().map(|&g| if g <= 1.0 { 0 } else { r }).collect();
    let boundary_margins = norms
        .iter()
        .enumerate()
        .filter_map(|(j, &g)| {
            let d = (g - 1.0).abs();
            (d < BOUNDARY_WINDOW).then_some((j, d))
        })
        .collect();
    ExponentSelector {
        norms: norms.to_vec(),
        r,
        exponents,
        boundary_margins,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(select_exponents(&[0.5], 3).exponents, vec![0]);
        assert_eq!(select_exponents(&[2.0], 3).exponents, vec![3]);
        let s = select_exponents(&[1.0, 1.5], 2);
        assert_eq!(s.exponents, vec![0, 2]);
        assert_eq!(s.boundary_margins, vec![(0, 0.0)]);
        assert_eq!(s.product(), 2.25);
    }

    #[test]
    fn scaling_one_norm() {
        let a = select_exponents(&[1.5, 3.0], 3);
        let b = select_exponents(&[1.5 * 2.0, 3.0], 3);
        assert!((b.product() / a.product() - 8.0).abs() < 1e-14);
    }
}
