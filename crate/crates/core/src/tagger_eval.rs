//! Intrinsic evaluation of a word-level tagger against gold labels.
//!
//! A prediction run is compared token by token with a gold corpus into a
//! 3×3 confusion table, from which accuracy and macro-averaged precision,
//! recall and F1 are derived. All metrics are reported on the percent
//! scale. A class that is never predicted (or never occurs) would divide
//! by zero; its precision/recall is defined as 0 instead, which only ever
//! lowers the macro averages.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::corpus::{LabeledSentenceCorpus, SentimentLabel};
use crate::error::{Error, Result};

/// Gold-by-predicted counts; rows are gold classes, columns predictions,
/// both in negative/neutral/positive order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionTable {
    counts: [[usize; 3]; 3],
}

impl ConfusionTable {
    pub fn record(&mut self, gold: SentimentLabel, predicted: SentimentLabel) {
        self.counts[gold.index()][predicted.index()] += 1;
    }

    pub fn count(&self, gold: SentimentLabel, predicted: SentimentLabel) -> usize {
        self.counts[gold.index()][predicted.index()]
    }

    /// Combine two tables; counting is associative, so partial tables from
    /// any work schedule merge to the same result.
    pub fn merge(mut self, other: ConfusionTable) -> ConfusionTable {
        for g in 0..3 {
            for p in 0..3 {
                self.counts[g][p] += other.counts[g][p];
            }
        }
        self
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    /// Correctly classified tokens (the diagonal).
    pub fn trace(&self) -> usize {
        (0..3).map(|i| self.counts[i][i]).sum()
    }

    fn gold_total(&self, class: SentimentLabel) -> usize {
        self.counts[class.index()].iter().sum()
    }

    fn predicted_total(&self, class: SentimentLabel) -> usize {
        (0..3).map(|g| self.counts[g][class.index()]).sum()
    }
}

/// Per-class precision/recall/F1, percent scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Evaluation result: overall accuracy and macro averages over the three
/// classes, all on the percent scale, plus the per-class breakdown and the
/// table itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggerMetrics {
    pub overall_accuracy: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    /// Negative, neutral, positive — in that order.
    pub per_class: [ClassMetrics; 3],
    pub confusion: ConfusionTable,
    pub total_tokens: usize,
}

fn percent_ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        100.0 * numerator as f64 / denominator as f64
    }
}

impl TaggerMetrics {
    /// Derive all metrics from a confusion table.
    pub fn from_confusion(confusion: ConfusionTable) -> TaggerMetrics {
        let per_class = SentimentLabel::ALL.map(|class| {
            let hits = confusion.count(class, class);
            let precision = percent_ratio(hits, confusion.predicted_total(class));
            let recall = percent_ratio(hits, confusion.gold_total(class));
            let f1 = if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            ClassMetrics {
                precision,
                recall,
                f1,
            }
        });

        TaggerMetrics {
            overall_accuracy: percent_ratio(confusion.trace(), confusion.total()),
            macro_precision: per_class.iter().map(|c| c.precision).sum::<f64>() / 3.0,
            macro_recall: per_class.iter().map(|c| c.recall).sum::<f64>() / 3.0,
            macro_f1: per_class.iter().map(|c| c.f1).sum::<f64>() / 3.0,
            per_class,
            confusion,
            total_tokens: confusion.total(),
        }
    }
}

/// Check that predictions line up with the gold corpus sentence by
/// sentence and token by token.
fn validate_alignment(
    gold: &LabeledSentenceCorpus,
    predictions: &[Vec<SentimentLabel>],
) -> Result<()> {
    if gold.sentences.len() != predictions.len() {
        return Err(Error::SeriesLengthMismatch {
            x_len: gold.sentences.len(),
            y_len: predictions.len(),
        });
    }
    for (idx, (sentence, predicted)) in gold.sentences.iter().zip(predictions).enumerate() {
        if sentence.len() != predicted.len() {
            return Err(Error::AlignmentMismatch {
                sentence: idx,
                gold: sentence.len(),
                predicted: predicted.len(),
            });
        }
    }
    Ok(())
}

fn confusion_for_sentence(
    sentence: &[crate::corpus::LabeledToken],
    predicted: &[SentimentLabel],
) -> ConfusionTable {
    let mut table = ConfusionTable::default();
    for (token, &pred) in sentence.iter().zip(predicted) {
        table.record(token.label, pred);
    }
    table
}

/// Score a prediction run against a gold corpus.
///
/// `predictions[i][j]` is the predicted label of token `j` of sentence `i`;
/// any misalignment is an error naming the first offending sentence.
pub fn evaluate_tagger(
    gold: &LabeledSentenceCorpus,
    predictions: &[Vec<SentimentLabel>],
) -> Result<TaggerMetrics> {
    validate_alignment(gold, predictions)?;

    #[cfg(feature = "parallel")]
    let confusion = gold
        .sentences
        .par_iter()
        .zip(predictions.par_iter())
        .map(|(sentence, predicted)| confusion_for_sentence(sentence, predicted))
        .reduce(ConfusionTable::default, ConfusionTable::merge);

    #[cfg(not(feature = "parallel"))]
    let confusion = gold
        .sentences
        .iter()
        .zip(predictions)
        .map(|(sentence, predicted)| confusion_for_sentence(sentence, predicted))
        .fold(ConfusionTable::default(), ConfusionTable::merge);

    Ok(TaggerMetrics::from_confusion(confusion))
}
