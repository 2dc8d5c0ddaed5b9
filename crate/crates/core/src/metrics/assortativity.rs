use crate::network::ThresholdGraph;

const DEGENERATE: f64 = 1e-12;

/// Degree–degree Pearson correlation over edges.
///
/// With `M` edges and sums over edges `i < j` of `k_i k_j` (S1),
/// `k_i + k_j` (S2) and `k_i^2 + k_j^2` (S3), the coefficient is
/// `(4 M S1 - S2^2) / (2 M S3 - S2^2)`. The sums are exact integers, so the
/// only rounding is the final division.
pub fn assortativity(g: &ThresholdGraph) -> f64 {
    let (mut m, mut s1, mut s2, mut s3) = (0i128, 0i128, 0i128, 0i128);
    for (i, j) in g.edges() {
        let (ki, kj) = (g.degree(i) as i128, g.degree(j) as i128);
        m += 1;
        s1 += ki * kj;
        s2 += ki + kj;
        s3 += ki * ki + kj * kj;
    }
    if m == 0 {
        return 0.0;
    }
    let num = 4 * m * s1 - s2 * s2;
    let den = 2 * m * s3 - s2 * s2;
    // The unscaled denominator is den / (4 M^2).
    if (den as f64) / ((4 * m * m) as f64) < DEGENERATE {
        return 0.0;
    }
    num as f64 / den as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_is_disassortative() {
        let s3 = ThresholdGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(assortativity(&s3), -1.0);
    }

    #[test]
    fn regular_and_empty_give_zero() {
        let k4 = ThresholdGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(assortativity(&k4), 0.0);
        assert_eq!(assortativity(&ThresholdGraph::from_edges(3, &[])), 0.0);
    }

    #[test]
    fn two_stars_joined_at_leaves() {
        // 0-1-2-3 path: degrees 1,2,2,1 -> rho = -1/2
        let p4 = ThresholdGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(assortativity(&p4), -0.5);
    }
}
