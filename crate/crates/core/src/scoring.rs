//! Corpus-level scoring: turn per-document sentiment proportions into
//! agreement statistics between the dialogue side and the summary side.
//!
//! A corpus yields one paired series per channel: the dialogue's proportion
//! against each summary's (or the per-pair mean, under the `mean` policy).
//! Pairs whose *dialogue* carries zero sentiment words on the channel are
//! removed before computing statistics — a document with nothing to
//! preserve says nothing about preservation — and the surviving count is
//! reported as `n_used`. The zero test is on integer counts, never on
//! floating-point proportions.

use serde::{Deserialize, Serialize};

use crate::corpus::DialogueSummaryPair;
use crate::error::{Error, Result};
use crate::lexicon::TagSet;
use crate::parallel;
use crate::psent::{psent_for_pair, Channel, PSentTriple, SummaryPolicy, SummaryPsent};
use crate::stats::{ccc, mae, spearman, PairedSeries};

/// The three agreement statistics for one channel, plus how many series
/// entries survived zero-sample removal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelScores {
    pub spearman: f64,
    pub ccc: f64,
    pub mae: f64,
    pub n_used: usize,
}

/// A channel that could not be scored, with the machine-readable error code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelFailure {
    pub code: String,
    pub message: String,
}

/// Result of scoring one channel: statistics, or an explicit failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChannelOutcome {
    Ok(ChannelScores),
    Error(ChannelFailure),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelEntry {
    pub channel: Channel,
    #[serde(flatten)]
    pub outcome: ChannelOutcome,
}

/// Run details attached to every score report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub summary_policy: SummaryPolicy,
    /// Identity of the tagger that produced the word labels,
    /// e.g. `lexicon:2006+4783` or `external:tags.jsonl`.
    pub tagger: String,
    /// Variance convention used by the concordance statistic.
    pub variance_convention: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl ReportMetadata {
    pub fn new(policy: SummaryPolicy, tagger: String, timestamp: Option<String>) -> Self {
        ReportMetadata {
            summary_policy: policy,
            tagger,
            variance_convention: "population".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp,
        }
    }
}

/// A full scoring run: one entry per requested channel plus run details.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub channels: Vec<ChannelEntry>,
    pub metadata: ReportMetadata,
}

/// Per-pair proportions for a whole corpus, computed in parallel when the
/// `parallel` feature is on. Hard data errors (missing tags, empty
/// documents) surface here.
pub fn corpus_psents(
    pairs: &[DialogueSummaryPair],
    tags: &TagSet,
    policy: SummaryPolicy,
) -> Result<Vec<(PSentTriple, SummaryPsent)>> {
    parallel::try_map_collect(pairs, |pair| psent_for_pair(pair, tags, policy))
}

/// Assemble the paired series for one channel from precomputed proportions,
/// applying zero-sample removal, and compute the statistics.
pub fn channel_scores(
    psents: &[(PSentTriple, SummaryPsent)],
    channel: Channel,
) -> Result<ChannelScores> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut total = 0usize;
    for (dialogue, summary) in psents {
        let values = summary.channel_values(channel);
        total += values.len();
        if channel.count_of(&dialogue.counts) == 0 {
            continue;
        }
        let x = channel.value_of(dialogue);
        for y in values {
            xs.push(x);
            ys.push(y);
        }
    }

    let survivors = xs.len();
    if survivors < 2 {
        return Err(Error::InsufficientSamples { survivors, total });
    }

    let series = PairedSeries::new(xs, ys)?;
    Ok(ChannelScores {
        spearman: spearman(&series)?,
        ccc: ccc(&series)?,
        mae: mae(&series),
        n_used: survivors,
    })
}

/// Score one channel of a corpus end to end.
pub fn score_corpus(
    pairs: &[DialogueSummaryPair],
    tags: &TagSet,
    channel: Channel,
    policy: SummaryPolicy,
) -> Result<ChannelScores> {
    let psents = corpus_psents(pairs, tags, policy)?;
    channel_scores(&psents, channel)
}

/// Score several channels into a report. Data errors still fail the whole
/// run; statistical failures (too few surviving samples, constant ranks,
/// degenerate concordance) are recorded per channel instead of aborting,
/// so one flat channel cannot hide the others' results.
pub fn score_report(
    pairs: &[DialogueSummaryPair],
    tags: &TagSet,
    channels: &[Channel],
    policy: SummaryPolicy,
    tagger: String,
    timestamp: Option<String>,
) -> Result<ScoreReport> {
    let psents = corpus_psents(pairs, tags, policy)?;
    let entries = channels
        .iter()
        .map(|&channel| ChannelEntry {
            channel,
            outcome: match channel_scores(&psents, channel) {
                Ok(scores) => ChannelOutcome::Ok(scores),
                Err(err) => ChannelOutcome::Error(ChannelFailure {
                    code: err.code().into(),
                    message: err.to_string(),
                }),
            },
        })
        .collect();
    Ok(ScoreReport {
        channels: entries,
        metadata: ReportMetadata::new(policy, tagger, timestamp),
    })
}

/// Which documents disqualify a pair during corpus filtering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterMode {
    /// Drop a pair if the dialogue *or any summary* carries no sentiment
    /// words.
    TrainLike,
    /// Drop a pair only if the dialogue carries no sentiment words.
    TestLike,
}

/// Book-keeping from a filtering run. A pair that fails both tests is
/// counted under the dialogue cause: the dialogue is checked first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    pub mode: FilterMode,
    pub total: usize,
    pub kept: usize,
    pub dropped_zero_dialogue: usize,
    pub dropped_zero_summary: usize,
    /// `kept / total`, or 0 for an empty corpus.
    pub kept_fraction: f64,
}

/// Remove pairs with no sentiment to preserve. The zero test uses the
/// combined positive+negative word count.
pub fn filter_corpus(
    pairs: &[DialogueSummaryPair],
    tags: &TagSet,
    mode: FilterMode,
) -> Result<(Vec<DialogueSummaryPair>, FilterReport)> {
    let psents = corpus_psents(pairs, tags, SummaryPolicy::Each)?;

    let mut kept = Vec::new();
    let mut dropped_zero_dialogue = 0usize;
    let mut dropped_zero_summary = 0usize;
    for (pair, (dialogue, summary)) in pairs.iter().zip(&psents) {
        if Channel::All.count_of(&dialogue.counts) == 0 {
            dropped_zero_dialogue += 1;
            continue;
        }
        if mode == FilterMode::TrainLike {
            let any_zero_summary = match summary {
                SummaryPsent::Each(triples) => triples
                    .iter()
                    .any(|t| Channel::All.count_of(&t.counts) == 0),
                SummaryPsent::Mean(_) => unreachable!("filtering computes per-summary counts"),
            };
            if any_zero_summary {
                dropped_zero_summary += 1;
                continue;
            }
        }
        kept.push(pair.clone());
    }

    let total = pairs.len();
    let report = FilterReport {
        mode,
        total,
        kept: kept.len(),
        dropped_zero_dialogue,
        dropped_zero_summary,
        kept_fraction: if total == 0 {
            0.0
        } else {
            kept.len() as f64 / total as f64
        },
    };
    Ok((kept, report))
}

/// Five-number box summary of a value set, with whiskers at the most
/// extreme data points within 1.5×IQR of the quartiles and everything
/// beyond listed as outliers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSummary {
    pub n: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    /// Values strictly outside the whisker fences, ascending.
    pub outliers: Vec<f64>,
}

/// Linear-interpolation quantile over a sorted slice (the convention most
/// statistics environments default to): index `p * (n-1)`, interpolating
/// between the neighbors.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = p * (n - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// Summarize a value set for box-plot style reporting.
pub fn distribution_summary(values: &[f64]) -> Result<DistributionSummary> {
    if values.is_empty() {
        return Err(Error::EmptyValues);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));

    let q1 = quantile_sorted(&sorted, 0.25);
    let median = quantile_sorted(&sorted, 0.5);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let low_fence = q1 - 1.5 * iqr;
    let high_fence = q3 + 1.5 * iqr;

    // Both whiskers exist: q1 and q3 lie inside the data range, so at least
    // one data point sits within each fence.
    let whisker_low = *sorted
        .iter()
        .find(|&&v| v >= low_fence)
        .expect("a data point lies within the lower fence");
    let whisker_high = *sorted
        .iter()
        .rev()
        .find(|&&v| v <= high_fence)
        .expect("a data point lies within the upper fence");

    let outliers = sorted
        .iter()
        .copied()
        .filter(|&v| v < low_fence || v > high_fence)
        .collect();

    Ok(DistributionSummary {
        n: sorted.len(),
        median,
        q1,
        q3,
        whisker_low,
        whisker_high,
        outliers,
    })
}

/// The raw proportion values of a corpus on one channel, unfiltered:
/// one dialogue value per pair, and summary values per the policy.
pub fn collect_psent_values(
    pairs: &[DialogueSummaryPair],
    tags: &TagSet,
    channel: Channel,
    policy: SummaryPolicy,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let psents = corpus_psents(pairs, tags, policy)?;
    let dialogue_values = psents
        .iter()
        .map(|(d, _)| channel.value_of(d))
        .collect();
    let summary_values = psents
        .iter()
        .flat_map(|(_, s)| s.channel_values(channel))
        .collect();
    Ok((dialogue_values, summary_values))
}
