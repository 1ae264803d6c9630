//! Agreement statistics between two paired series.
//!
//! Three views of agreement:
//! * [`spearman`] — rank correlation. Ties get average (fractional) ranks
//!   and the coefficient is Pearson's r applied to the ranks, which reduces
//!   to the classic `1 - 6*Σd²/(n(n²-1))` formula exactly when there are no
//!   ties.
//! * [`ccc`] — concordance correlation, `2*cov / (σx² + σy² + (μx-μy)²)`,
//!   which penalizes location and scale shifts that a plain correlation
//!   ignores. Population (1/n) moments throughout.
//! * [`mae`] — mean absolute error, on the raw values.

use crate::error::{Error, Result};

/// Two same-length series of finite values, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSeries {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl PairedSeries {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<PairedSeries> {
        if x.len() != y.len() {
            return Err(Error::SeriesLengthMismatch {
                x_len: x.len(),
                y_len: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::SeriesTooShort { needed: 1, got: 0 });
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        Ok(PairedSeries { x, y })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one pair
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }
}

/// Assign 1-based ranks, giving tied values the mean of the ranks they span.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("values are finite"));

    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Positions i..=j (0-based) hold equal values; they share the mean
        // of 1-based ranks i+1..=j+1, which is (i + j)/2 + 1.
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Pearson's r. Errors if either side has zero variance, where the
/// coefficient is undefined.
fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;

    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mean_x;
        let dy = yi - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantSeries);
    }
    // sqrt(sxx*syy) rather than sqrt(sxx)*sqrt(syy): with equal rank
    // vectors this is sqrt(s*s), which a correctly-rounded sqrt maps back
    // to s exactly, so perfect agreement yields exactly ±1.0.
    Ok(sxy / (sxx * syy).sqrt())
}

/// Spearman rank correlation with average-rank tie handling.
///
/// Needs at least two pairs; errors if either side is constant (all one
/// rank), where the coefficient is undefined.
pub fn spearman(series: &PairedSeries) -> Result<f64> {
    if series.len() < 2 {
        return Err(Error::SeriesTooShort {
            needed: 2,
            got: series.len(),
        });
    }
    let rx = average_ranks(series.x());
    let ry = average_ranks(series.y());
    pearson(&rx, &ry)
}

fn population_moments(x: &[f64], y: &[f64]) -> (f64, f64, f64, f64, f64) {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    let mut cov = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mean_x;
        let dy = yi - mean_y;
        var_x += dx * dx;
        var_y += dy * dy;
        cov += dx * dy;
    }
    (mean_x, mean_y, var_x / n, var_y / n, cov / n)
}

/// Concordance correlation coefficient with population (1/n) moments.
///
/// If exactly one side is constant the coefficient is 0 (no covariance but
/// a nonzero denominator). If both sides are constant *and equal* the
/// denominator vanishes and the coefficient is undefined.
pub fn ccc(series: &PairedSeries) -> Result<f64> {
    if series.len() < 2 {
        return Err(Error::SeriesTooShort {
            needed: 2,
            got: series.len(),
        });
    }
    let (mean_x, mean_y, var_x, var_y, cov) = population_moments(series.x(), series.y());
    let mean_diff = mean_x - mean_y;
    let denom = var_x + var_y + mean_diff * mean_diff;
    if denom == 0.0 {
        return Err(Error::DegenerateCcc);
    }
    Ok(2.0 * cov / denom)
}

/// Mean absolute error. Defined for any nonempty series.
pub fn mae(series: &PairedSeries) -> f64 {
    let n = series.len() as f64;
    series
        .x()
        .iter()
        .zip(series.y())
        .map(|(&xi, &yi)| (xi - yi).abs())
        .sum::<f64>()
        / n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(x: &[f64], y: &[f64]) -> PairedSeries {
        PairedSeries::new(x.to_vec(), y.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates_inputs() {
        assert_eq!(
            PairedSeries::new(vec![1.0], vec![1.0, 2.0])
                .unwrap_err()
                .code(),
            "series_length_mismatch"
        );
        assert_eq!(
            PairedSeries::new(vec![], vec![]).unwrap_err().code(),
            "series_too_short"
        );
        assert_eq!(
            PairedSeries::new(vec![f64::NAN], vec![1.0])
                .unwrap_err()
                .code(),
            "non_finite_value"
        );
        assert_eq!(
            PairedSeries::new(vec![1.0], vec![f64::INFINITY])
                .unwrap_err()
                .code(),
            "non_finite_value"
        );
    }

    #[test]
    fn average_ranks_handle_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 30.0]), vec![1.0, 2.0, 3.0]);
        assert_eq!(
            average_ranks(&[1.0, 2.0, 2.0, 4.0]),
            vec![1.0, 2.5, 2.5, 4.0]
        );
        assert_eq!(average_ranks(&[5.0, 5.0, 5.0]), vec![2.0, 2.0, 2.0]);
        assert_eq!(
            average_ranks(&[3.0, 1.0, 3.0, 3.0, 0.5]),
            vec![4.0, 2.0, 4.0, 4.0, 1.0]
        );
    }

    #[test]
    fn spearman_on_monotone_series_is_exact() {
        // Equal (or exactly reversed) rank vectors must give ±1.0 to the
        // bit, not within an epsilon.
        let s = series(&[1.0, 2.0, 3.0, 4.0], &[10.0, 20.0, 30.0, 40.0]);
        assert_eq!(spearman(&s).unwrap(), 1.0);
        let r = series(&[1.0, 2.0, 3.0, 4.0], &[40.0, 30.0, 20.0, 10.0]);
        assert_eq!(spearman(&r).unwrap(), -1.0);
        let five = series(&[0.2, 0.5, 0.1, 0.9, 0.4], &[2.0, 5.0, 1.0, 9.0, 4.0]);
        assert_eq!(spearman(&five).unwrap(), 1.0);
    }

    #[test]
    fn spearman_matches_hand_computation() {
        // Ranks y = [2,1,3,4] against x = [1,2,3,4]: Σd² = 2, n = 4,
        // 1 - 6*2/(4*15) = 0.8.
        let s = series(&[10.0, 20.0, 30.0, 40.0], &[15.0, 5.0, 25.0, 35.0]);
        assert!((spearman(&s).unwrap() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn spearman_with_ties_uses_average_ranks() {
        // Tied x ranks [1.5, 1.5, 3] vs y ranks [1, 2, 3]:
        // Pearson on ranks = 1.5/sqrt(1.5*2) = 0.866..., while the naive
        // closed form would give 0.875.
        let s = series(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0]);
        let rho = spearman(&s).unwrap();
        assert!((rho - 1.5 / (1.5f64 * 2.0).sqrt()).abs() < 1e-15);
        assert!((rho - 0.875).abs() > 1e-3);
    }

    #[test]
    fn spearman_undefined_cases() {
        let short = series(&[1.0], &[2.0]);
        assert_eq!(spearman(&short).unwrap_err().code(), "series_too_short");
        let constant = series(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]);
        assert_eq!(spearman(&constant).unwrap_err().code(), "constant_series");
    }

    #[test]
    fn ccc_matches_hand_computation() {
        // μx=2.5 μy=2.75 σx²=1.25 σy²=2.1875 cov=1.625 →
        // 2*1.625 / (1.25 + 2.1875 + 0.0625) = 3.25/3.5.
        let s = series(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 3.0, 5.0]);
        assert!((ccc(&s).unwrap() - 3.25 / 3.5).abs() < 1e-15);
    }

    #[test]
    fn ccc_is_one_only_on_identity() {
        let identical = series(&[0.1, 0.4, 0.2], &[0.1, 0.4, 0.2]);
        assert_eq!(ccc(&identical).unwrap(), 1.0);

        // Perfectly correlated but shifted: correlation would say 1,
        // concordance must not.
        let shifted = series(&[1.0, 2.0, 3.0], &[2.0, 3.0, 4.0]);
        let c = ccc(&shifted).unwrap();
        assert!(c < 1.0);
        assert!(c > 0.0);
    }

    #[test]
    fn ccc_with_one_constant_side_is_zero() {
        let s = series(&[3.0, 3.0, 3.0], &[1.0, 2.0, 3.0]);
        assert_eq!(ccc(&s).unwrap(), 0.0);
    }

    #[test]
    fn ccc_with_two_distinct_constants_is_zero() {
        let s = series(&[1.0, 1.0], &[2.0, 2.0]);
        assert_eq!(ccc(&s).unwrap(), 0.0);
    }

    #[test]
    fn ccc_degenerate_when_both_sides_equal_constant() {
        let s = series(&[2.0, 2.0], &[2.0, 2.0]);
        assert_eq!(ccc(&s).unwrap_err().code(), "degenerate_ccc");
    }

    #[test]
    fn mae_matches_hand_computation() {
        let s = series(&[1.0, 2.0, 3.0], &[2.0, 2.0, 5.0]);
        assert!((mae(&s) - 1.0).abs() < 1e-15);
        let zero = series(&[0.5, 0.25], &[0.5, 0.25]);
        assert_eq!(mae(&zero), 0.0);
    }

    #[test]
    fn mae_is_symmetric() {
        let a = series(&[0.0, 0.3, 0.9], &[0.1, 0.2, 0.4]);
        let b = series(&[0.1, 0.2, 0.4], &[0.0, 0.3, 0.9]);
        assert_eq!(mae(&a), mae(&b));
    }
}
