use alloc::vec;
use alloc::vec::Vec;

use super::GlmError;

#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    /// `(false positive rate, true positive rate)` from `(0,0)` to `(1,1)`,
    /// one point per distinct score threshold.
    pub points: Vec<(f64, f64)>,
    pub auc: f64,
}

/// ROC curve over all distinct thresholds and its trapezoid area.
///
/// The area is accumulated in integer counts, so it equals the Mann-Whitney
/// concordance `(2·concordant + tied) / (2·P·N)` exactly.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<RocCurve, GlmError> {
    assert_eq!(scores.len(), labels.len(), "scores and labels differ in length");
    let positives = labels.iter().filter(|&&l| l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(GlmError::SingleClass {
            positives,
            negatives,
        });
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let (p, n) = (positives as f64, negatives as f64);
    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0u64, 0u64);
    // twice the area in units of one (positive, negative) cell
    let mut area2: u128 = 0;
    let mut i = 0;
    while i < order.len() {
        let threshold = scores[order[i]];
        let (tp_prev, fp_prev) = (tp, fp);
        while i < order.len() && scores[order[i]] == threshold {
            if labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        area2 += (fp - fp_prev) as u128 * (tp + tp_prev) as u128;
        points.push((fp as f64 / n, tp as f64 / p));
    }
    let auc = area2 as f64 / (2 * positives as u128 * negatives as u128) as f64;
    Ok(RocCurve { points, auc })
}
