//! Small statistical helpers for the trial-based checks.

/// Chi-square homogeneity statistic for two samples over the same outcome
/// categories. Returns (statistic, degrees of freedom). Categories that are
/// empty in both samples are skipped.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> (f64, usize) {
    assert_eq!(a.len(), b.len(), "count vectors must align");
    let total_a: u64 = a.iter().sum();
    let total_b: u64 = b.iter().sum();
    let grand = (total_a + total_b) as f64;
    let mut stat = 0.0;
    let mut used = 0usize;
    for (&ca, &cb) in a.iter().zip(b) {
        let col = (ca + cb) as f64;
        if col == 0.0 {
            continue;
        }
        used += 1;
        let ea = col * total_a as f64 / grand;
        let eb = col * total_b as f64 / grand;
        stat += (ca as f64 - ea).powi(2) / ea;
        stat += (cb as f64 - eb).powi(2) / eb;
    }
    (stat, used.saturating_sub(1))
}

/// Upper critical values of the chi-square distribution at p = 0.001
/// (standard table values). A statistic below the critical value means
/// p > 0.001.
pub fn chi_square_critical_p001(dof: usize) -> f64 {
    const TABLE: [f64; 12] = [
        10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322, 26.124, 27.877, 29.588, 31.264,
        32.909,
    ];
    assert!(
        (1..=TABLE.len()).contains(&dof),
        "chi-square table covers 1..={} dof, got {}",
        TABLE.len(),
        dof
    );
    TABLE[dof - 1]
}

/// Five-sigma binomial half-width: 5·sqrt(p(1-p)/n).
pub fn binomial_five_sigma(p: f64, n: usize) -> f64 {
    5.0 * (p * (1.0 - p) / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_give_zero_statistic() {
        let (stat, dof) = chi_square_homogeneity(&[50, 50], &[50, 50]);
        assert_eq!(stat, 0.0);
        assert_eq!(dof, 1);
    }

    #[test]
    fn lopsided_samples_exceed_critical() {
        let (stat, dof) = chi_square_homogeneity(&[100, 0], &[0, 100]);
        assert!(stat > chi_square_critical_p001(dof));
    }

    #[test]
    fn empty_categories_are_skipped() {
        let (stat, dof) = chi_square_homogeneity(&[30, 0, 70], &[28, 0, 72]);
        assert_eq!(dof, 1);
        assert!(stat < 1.0);
    }
}
