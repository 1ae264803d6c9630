//! Measures of how well a summary preserves the *sentiment* of the dialogue
//! it summarizes.
//!
//! The pipeline: tokenize dialogue and summary, tag every word positive /
//! negative / neutral (with a polarity lexicon or any external word-level
//! tagger), reduce each document to its sentiment proportions, then compare
//! the dialogue series against the summary series across a corpus with rank
//! correlation, concordance correlation, and mean absolute error. The same
//! machinery supports filtering corpora down to pairs that carry sentiment
//! at all, box-plot style distribution summaries, and intrinsic evaluation
//! of taggers against gold labels.
//!
//! ```
//! use psent_core::corpus::{DialogueSummaryPair, SummaryOrigin};
//! use psent_core::lexicon::{tag_pairs, SentimentLexicon, TagSet};
//! use psent_core::psent::{Channel, SummaryPolicy};
//! use psent_core::scoring::score_corpus;
//! use psent_core::tokenize::TokenizeOptions;
//!
//! let lexicon = SentimentLexicon::new(["good", "great"], ["bad", "awful"])?;
//! let pairs: Vec<DialogueSummaryPair> = vec![
//!     DialogueSummaryPair {
//!         id: "a".into(),
//!         dialogue: "#Person1#: That was a great game , really good .".into(),
//!         summaries: vec!["They enjoyed a good game .".into()],
//!         origin: SummaryOrigin::Reference,
//!     },
//!     DialogueSummaryPair {
//!         id: "b".into(),
//!         dialogue: "#Person1#: What an awful day . #Person2#: Bad luck .".into(),
//!         summaries: vec!["The day went badly , it was awful .".into()],
//!         origin: SummaryOrigin::Reference,
//!     },
//! ];
//! let tags = TagSet::from_assignments(tag_pairs(&pairs, &lexicon, TokenizeOptions::default()))?;
//! let scores = score_corpus(&pairs, &tags, Channel::All, SummaryPolicy::Each)?;
//! assert_eq!(scores.n_used, 2);
//! # Ok::<(), psent_core::error::Error>(())
//! ```
//!
//! The `parallel` feature (on by default) runs corpus-level work on a rayon
//! thread pool; disabling it yields a dependency-light sequential build
//! with identical results.

pub mod corpus;
pub mod error;
pub mod lexicon;
mod parallel;
pub mod psent;
pub mod scoring;
pub mod stats;
pub mod tagger_eval;
pub mod tokenize;

pub use corpus::{
    load_labeled_corpus, load_labeled_corpus_from_reader, load_pairs, load_pairs_from_reader,
    merge_five_to_three, write_pairs, DialogueSummaryPair, FiveClassLabel, LabeledSentenceCorpus,
    LabeledToken, PairFormat, SentimentLabel, Split, SummaryOrigin,
};
pub use error::{Error, Result};
pub use lexicon::{
    load_external_tags, load_external_tags_from_reader, load_lexicon, tag_pair, tag_pairs,
    tag_tokens, write_tags, DocRef, SentimentLexicon, TagAssignment, TagSet,
};
pub use psent::{compute_psent, Channel, PSentTriple, SummaryPolicy, SummaryPsent, TokenCounts};
pub use scoring::{
    channel_scores, collect_psent_values, corpus_psents, distribution_summary, filter_corpus,
    score_corpus, score_report, ChannelEntry, ChannelOutcome, ChannelScores, DistributionSummary,
    FilterMode, FilterReport, ReportMetadata, ScoreReport,
};
pub use stats::{ccc, mae, spearman, PairedSeries};
pub use tagger_eval::{evaluate_tagger, ConfusionTable, TaggerMetrics};
pub use tokenize::{tokenize, tokenize_with, Token, TokenStream, TokenizeOptions};
