//! Error type shared across the crate.
//!
//! Every variant carries enough context (file line, document id, offending
//! word) to be actionable from a CLI diagnostic, and maps to a stable
//! machine-readable code via [`Error::code`].

use std::path::PathBuf;

use crate::lexicon::DocRef;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: malformed record: {message}")]
    MalformedRecord { line: usize, message: String },

    #[error("line {line}: duplicate id {id:?}")]
    DuplicateId { line: usize, id: String },

    #[error("line {line}: unknown label {label:?}")]
    UnknownLabel { line: usize, label: String },

    #[error("line {line}: empty sentence")]
    EmptySentence { line: usize },

    #[error("word {word:?} appears in both the positive and the negative lexicon")]
    LexiconOverlap { word: String },

    #[error("lexicon is empty: no positive and no negative entries loaded")]
    EmptyLexicon,

    #[error("empty document")]
    EmptyDocument,

    #[error("{doc_id}/{which}: tag sequence has {actual} labels but the document tokenizes to {expected} tokens")]
    TagLengthMismatch {
        doc_id: String,
        which: DocRef,
        expected: usize,
        actual: usize,
    },

    #[error("tag file references unknown document id {id:?}")]
    UnknownDocId { id: String },

    #[error("duplicate tag assignment for {doc_id}/{which}")]
    DuplicateTag { doc_id: String, which: DocRef },

    #[error("missing tag assignment for {doc_id}/{which}")]
    MissingTag { doc_id: String, which: DocRef },

    #[error("paired series length mismatch: {x_len} vs {y_len}")]
    SeriesLengthMismatch { x_len: usize, y_len: usize },

    #[error("paired series contains a non-finite value")]
    NonFiniteValue,

    #[error("series of length {got} is too short: need at least {needed} points")]
    SeriesTooShort { needed: usize, got: usize },

    #[error("undefined correlation (zero rank variance)")]
    ConstantSeries,

    #[error("degenerate CCC (zero denominator)")]
    DegenerateCcc,

    #[error("insufficient samples after zero-filtering: {survivors} of {total} remain, need at least 2")]
    InsufficientSamples { survivors: usize, total: usize },

    #[error("sentence {sentence}: gold has {gold} tokens but prediction has {predicted}")]
    AlignmentMismatch {
        sentence: usize,
        gold: usize,
        predicted: usize,
    },

    #[error("no values to summarize")]
    EmptyValues,

    #[error("pair format supports at most 3 summaries per record, got {count} for id {id:?}")]
    TooManySummaries { id: String, count: usize },
}

impl Error {
    /// Stable machine-readable code for CLI diagnostics and CI assertions.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::MalformedRecord { .. } => "malformed_record",
            Error::DuplicateId { .. } => "duplicate_id",
            Error::UnknownLabel { .. } => "unknown_label",
            Error::EmptySentence { .. } => "empty_sentence",
            Error::LexiconOverlap { .. } => "lexicon_overlap",
            Error::EmptyLexicon => "empty_lexicon",
            Error::EmptyDocument => "empty_document",
            Error::TagLengthMismatch { .. } => "tag_length_mismatch",
            Error::UnknownDocId { .. } => "unknown_doc_id",
            Error::DuplicateTag { .. } => "duplicate_tag",
            Error::MissingTag { .. } => "missing_tag",
            Error::SeriesLengthMismatch { .. } => "series_length_mismatch",
            Error::NonFiniteValue => "non_finite_value",
            Error::SeriesTooShort { .. } => "series_too_short",
            Error::ConstantSeries => "constant_series",
            Error::DegenerateCcc => "degenerate_ccc",
            Error::InsufficientSamples { .. } => "insufficient_samples",
            Error::AlignmentMismatch { .. } => "alignment_mismatch",
            Error::EmptyValues => "empty_values",
            Error::TooManySummaries { .. } => "too_many_summaries",
        }
    }
}
