//! Sentiment-proportion measures over tagged documents.
//!
//! For a document with `pos_n` positive-tagged words, `neg_n` negative, and
//! `total_n` words overall, the headline proportion is
//! `(pos_n + neg_n) / total_n` — the share of words carrying any sentiment —
//! with per-polarity variants `pos_n / total_n` and `neg_n / total_n`.

use serde::{Deserialize, Serialize};

use crate::corpus::{DialogueSummaryPair, SentimentLabel};
use crate::error::{Error, Result};
use crate::lexicon::{DocRef, TagSet};

/// Raw label counts for one document. Exact integers, so "no sentiment
/// words at all" is decidable without float comparisons.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenCounts {
    pub pos_n: usize,
    pub neg_n: usize,
    pub total_n: usize,
}

impl TokenCounts {
    pub fn from_labels(labels: &[SentimentLabel]) -> TokenCounts {
        let mut counts = TokenCounts {
            total_n: labels.len(),
            ..TokenCounts::default()
        };
        for label in labels {
            match label {
                SentimentLabel::Positive => counts.pos_n += 1,
                SentimentLabel::Negative => counts.neg_n += 1,
                SentimentLabel::Neutral => {}
            }
        }
        counts
    }
}

/// The three sentiment proportions of one document, plus the counts they
/// were derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PSentTriple {
    /// Share of words tagged either positive or negative.
    pub psent: f64,
    /// Share of words tagged positive.
    pub psent_p: f64,
    /// Share of words tagged negative.
    pub psent_n: f64,
    pub counts: TokenCounts,
}

impl PSentTriple {
    /// Derive the proportions from counts. Fails on an empty document, the
    /// only case where the ratios are undefined.
    pub fn from_counts(counts: TokenCounts) -> Result<PSentTriple> {
        if counts.total_n == 0 {
            return Err(Error::EmptyDocument);
        }
        let total = counts.total_n as f64;
        Ok(PSentTriple {
            psent: (counts.pos_n + counts.neg_n) as f64 / total,
            psent_p: counts.pos_n as f64 / total,
            psent_n: counts.neg_n as f64 / total,
            counts,
        })
    }
}

/// Compute the proportion triple straight from a label sequence.
pub fn compute_psent(labels: &[SentimentLabel]) -> Result<PSentTriple> {
    PSentTriple::from_counts(TokenCounts::from_labels(labels))
}

/// Which proportion a downstream statistic reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    /// Positive and negative words together.
    #[serde(rename = "all")]
    All,
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "neg")]
    Negative,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::All, Channel::Positive, Channel::Negative];

    pub fn value_of(self, triple: &PSentTriple) -> f64 {
        match self {
            Channel::All => triple.psent,
            Channel::Positive => triple.psent_p,
            Channel::Negative => triple.psent_n,
        }
    }

    /// The integer count backing this channel — used for exact zero tests.
    pub fn count_of(self, counts: &TokenCounts) -> usize {
        match self {
            Channel::All => counts.pos_n + counts.neg_n,
            Channel::Positive => counts.pos_n,
            Channel::Negative => counts.neg_n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Channel::All => "all",
            Channel::Positive => "pos",
            Channel::Negative => "neg",
        }
    }
}

impl std::fmt::Display for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How a pair's multiple summaries enter the score series.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SummaryPolicy {
    /// Every summary contributes its own series entry, paired with the same
    /// dialogue value.
    #[default]
    Each,
    /// The summaries' proportions are averaged into one entry per pair.
    Mean,
}

/// Averaged proportions across a pair's summaries (no meaningful single
/// count set exists once documents are mixed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsentMean {
    pub psent: f64,
    pub psent_p: f64,
    pub psent_n: f64,
    /// How many summaries went into the average.
    pub n_summaries: usize,
}

/// Summary-side proportions of one pair, in the shape the active policy
/// dictates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SummaryPsent {
    Each(Vec<PSentTriple>),
    Mean(PsentMean),
}

impl SummaryPsent {
    /// The series entries this pair contributes on `channel`
    /// (one per summary under `Each`, exactly one under `Mean`).
    pub fn channel_values(&self, channel: Channel) -> Vec<f64> {
        match self {
            SummaryPsent::Each(triples) => {
                triples.iter().map(|t| channel.value_of(t)).collect()
            }
            SummaryPsent::Mean(mean) => vec![match channel {
                Channel::All => mean.psent,
                Channel::Positive => mean.psent_p,
                Channel::Negative => mean.psent_n,
            }],
        }
    }
}

/// Proportions for one pair: the dialogue triple and the summary side under
/// the requested policy. Fails if any tag sequence is missing or any
/// document is empty.
pub fn psent_for_pair(
    pair: &DialogueSummaryPair,
    tags: &TagSet,
    policy: SummaryPolicy,
) -> Result<(PSentTriple, SummaryPsent)> {
    let missing = |which: DocRef| Error::MissingTag {
        doc_id: pair.id.clone(),
        which,
    };

    let dialogue_labels = tags
        .get(&pair.id, DocRef::Dialogue)
        .ok_or_else(|| missing(DocRef::Dialogue))?;
    let dialogue = compute_psent(dialogue_labels)?;

    let mut triples = Vec::with_capacity(pair.summaries.len());
    for k in 0..pair.summaries.len() {
        let labels = tags
            .get(&pair.id, DocRef::Summary(k))
            .ok_or_else(|| missing(DocRef::Summary(k)))?;
        triples.push(compute_psent(labels)?);
    }
    if triples.is_empty() {
        return Err(missing(DocRef::Summary(0)));
    }

    let summary = match policy {
        SummaryPolicy::Each => SummaryPsent::Each(triples),
        SummaryPolicy::Mean => {
            let n = triples.len() as f64;
            SummaryPsent::Mean(PsentMean {
                psent: triples.iter().map(|t| t.psent).sum::<f64>() / n,
                psent_p: triples.iter().map(|t| t.psent_p).sum::<f64>() / n,
                psent_n: triples.iter().map(|t| t.psent_n).sum::<f64>() / n,
                n_summaries: triples.len(),
            })
        }
    };

    Ok((dialogue, summary))
}
