//! Corpus ingestion and the canonical in-memory data model.
//!
//! Two line-delimited file formats live here: pair files (one JSON record
//! per line with `id`/`fname`, `dialogue`, `summary`, optional `summary2`,
//! `summary3`, `origin`) and token-label files (a `#labels=3` or `#labels=5`
//! header followed by one sentence per line of `word/label` tokens).
//! Loaded corpora are immutable and keep file order.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether a summary came from a human reference or a generation system.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SummaryOrigin {
    #[default]
    Reference,
    Generated,
}

/// One dialogue with one or more summaries, keyed by a stable identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DialogueSummaryPair {
    pub id: String,
    pub dialogue: String,
    pub summaries: Vec<String>,
    pub origin: SummaryOrigin,
}

/// Word-level polarity. The derived order is negative < neutral < positive.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Negative,
    Neutral,
    Positive,
}

impl SentimentLabel {
    pub const ALL: [SentimentLabel; 3] = [
        SentimentLabel::Negative,
        SentimentLabel::Neutral,
        SentimentLabel::Positive,
    ];

    /// Dense index used by confusion tables: negative 0, neutral 1, positive 2.
    pub fn index(self) -> usize {
        match self {
            SentimentLabel::Negative => 0,
            SentimentLabel::Neutral => 1,
            SentimentLabel::Positive => 2,
        }
    }

    /// Single-character code used in tag files.
    pub fn code(self) -> char {
        match self {
            SentimentLabel::Negative => 'n',
            SentimentLabel::Neutral => 'o',
            SentimentLabel::Positive => 'p',
        }
    }

    pub fn from_code(code: &str) -> Option<SentimentLabel> {
        match code {
            "n" => Some(SentimentLabel::Negative),
            "o" => Some(SentimentLabel::Neutral),
            "p" => Some(SentimentLabel::Positive),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SentimentLabel::Negative => "negative",
            SentimentLabel::Neutral => "neutral",
            SentimentLabel::Positive => "positive",
        }
    }

    fn parse3(s: &str) -> Option<SentimentLabel> {
        match s {
            "negative" => Some(SentimentLabel::Negative),
            "neutral" => Some(SentimentLabel::Neutral),
            "positive" => Some(SentimentLabel::Positive),
            _ => None,
        }
    }
}

impl fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The 5-point scale used by fine-grained sentiment annotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FiveClassLabel {
    VeryNegative,
    Negative,
    Neutral,
    Positive,
    VeryPositive,
}

impl FiveClassLabel {
    fn parse5(s: &str) -> Option<FiveClassLabel> {
        match s {
            "very_negative" => Some(FiveClassLabel::VeryNegative),
            "negative" => Some(FiveClassLabel::Negative),
            "neutral" => Some(FiveClassLabel::Neutral),
            "positive" => Some(FiveClassLabel::Positive),
            "very_positive" => Some(FiveClassLabel::VeryPositive),
            _ => None,
        }
    }
}

/// Collapse the 5-point scale onto the 3-point one: the extreme grades fold
/// into their plain counterparts, everything else keeps its name.
pub fn merge_five_to_three(label5: FiveClassLabel) -> SentimentLabel {
    match label5 {
        FiveClassLabel::VeryNegative | FiveClassLabel::Negative => SentimentLabel::Negative,
        FiveClassLabel::Neutral => SentimentLabel::Neutral,
        FiveClassLabel::Positive | FiveClassLabel::VeryPositive => SentimentLabel::Positive,
    }
}

/// A gold-labeled word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledToken {
    pub text: String,
    pub label: SentimentLabel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Validation => "validation",
            Split::Test => "test",
        })
    }
}

/// Sentences of gold-labeled words, all on the 3-point scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSentenceCorpus {
    pub sentences: Vec<Vec<LabeledToken>>,
    pub split: Split,
}

impl LabeledSentenceCorpus {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn total_tokens(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }
}

/// How a pair record's summary fields are collected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFormat {
    /// Only the `summary` field is read.
    Simple,
    /// `summary`, `summary2`, `summary3` are collected in field order.
    MultiReference,
}

#[derive(Deserialize)]
struct RawPairRecord {
    #[serde(alias = "fname")]
    id: String,
    dialogue: String,
    summary: String,
    #[serde(default)]
    summary2: Option<String>,
    #[serde(default)]
    summary3: Option<String>,
    #[serde(default)]
    origin: Option<SummaryOrigin>,
}

#[derive(Serialize)]
struct PairRecordOut<'a> {
    id: &'a str,
    dialogue: &'a str,
    summary: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary2: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary3: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    origin: Option<SummaryOrigin>,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}

/// Load dialogue–summary pairs from a line-delimited record file.
///
/// Records keep file order. Unknown fields are ignored. A malformed record
/// or an empty summary fails with its line number; a repeated id fails
/// naming the id.
pub fn load_pairs(path: impl AsRef<Path>, format: PairFormat) -> Result<Vec<DialogueSummaryPair>> {
    let path = path.as_ref();
    load_pairs_from_reader(open(path)?, format)
}

/// Same as [`load_pairs`] but over any reader.
pub fn load_pairs_from_reader(
    reader: impl Read,
    format: PairFormat,
) -> Result<Vec<DialogueSummaryPair>> {
    let reader = BufReader::new(reader);
    let mut pairs: Vec<DialogueSummaryPair> = Vec::new();
    let mut seen = std::collections::HashSet::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: "<reader>".into(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RawPairRecord =
            serde_json::from_str(&line).map_err(|err| Error::MalformedRecord {
                line: line_no,
                message: err.to_string(),
            })?;

        if record.id.trim().is_empty() {
            return Err(Error::MalformedRecord {
                line: line_no,
                message: "empty id".into(),
            });
        }
        if !seen.insert(record.id.clone()) {
            return Err(Error::DuplicateId {
                line: line_no,
                id: record.id,
            });
        }

        let mut summaries = vec![record.summary];
        if format == PairFormat::MultiReference {
            summaries.extend(record.summary2);
            summaries.extend(record.summary3);
        }
        for summary in &summaries {
            if summary.trim().is_empty() {
                return Err(Error::MalformedRecord {
                    line: line_no,
                    message: format!("empty summary field in record {:?}", record.id),
                });
            }
        }

        pairs.push(DialogueSummaryPair {
            id: record.id,
            dialogue: record.dialogue,
            summaries,
            origin: record.origin.unwrap_or_default(),
        });
    }

    Ok(pairs)
}

/// Serialize pairs back to the line-delimited record format.
///
/// The format carries at most three summaries per record; `origin` is only
/// written when it is `generated`.
pub fn write_pairs(mut writer: impl Write, pairs: &[DialogueSummaryPair]) -> Result<()> {
    for pair in pairs {
        if pair.summaries.len() > 3 {
            return Err(Error::TooManySummaries {
                id: pair.id.clone(),
                count: pair.summaries.len(),
            });
        }
        let record = PairRecordOut {
            id: &pair.id,
            dialogue: &pair.dialogue,
            summary: &pair.summaries[0],
            summary2: pair.summaries.get(1).map(String::as_str),
            summary3: pair.summaries.get(2).map(String::as_str),
            origin: match pair.origin {
                SummaryOrigin::Reference => None,
                SummaryOrigin::Generated => Some(SummaryOrigin::Generated),
            },
        };
        let json = serde_json::to_string(&record).expect("pair record serializes");
        writeln!(writer, "{json}").map_err(|source| Error::Io {
            path: "<writer>".into(),
            source,
        })?;
    }
    Ok(())
}

/// Load a token-label corpus.
///
/// The first line must be `#labels=3` or `#labels=5`; 5-point labels are
/// merged onto the 3-point scale on the way in. Each following line is one
/// sentence of `word/label` tokens separated by single spaces; a `/` inside
/// a word is escaped as `\/`.
pub fn load_labeled_corpus(path: impl AsRef<Path>, split: Split) -> Result<LabeledSentenceCorpus> {
    let path = path.as_ref();
    load_labeled_corpus_from_reader(open(path)?, split)
}

/// Same as [`load_labeled_corpus`] but over any reader.
pub fn load_labeled_corpus_from_reader(
    reader: impl Read,
    split: Split,
) -> Result<LabeledSentenceCorpus> {
    let reader = BufReader::new(reader);
    let mut lines = reader.lines().enumerate();

    let scale = match lines.next() {
        Some((_, Ok(header))) => match header.trim() {
            "#labels=3" => 3,
            "#labels=5" => 5,
            other => {
                return Err(Error::MalformedRecord {
                    line: 1,
                    message: format!("expected `#labels=3` or `#labels=5` header, got {other:?}"),
                })
            }
        },
        Some((_, Err(source))) => {
            return Err(Error::Io {
                path: "<reader>".into(),
                source,
            })
        }
        None => {
            return Err(Error::MalformedRecord {
                line: 1,
                message: "empty file: missing `#labels=` header".into(),
            })
        }
    };

    let mut sentences = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: "<reader>".into(),
            source,
        })?;
        if line.trim().is_empty() {
            return Err(Error::EmptySentence { line: line_no });
        }
        let mut sentence = Vec::new();
        for token in line.split(' ').filter(|t| !t.is_empty()) {
            sentence.push(parse_labeled_token(token, line_no, scale)?);
        }
        if sentence.is_empty() {
            return Err(Error::EmptySentence { line: line_no });
        }
        sentences.push(sentence);
    }

    Ok(LabeledSentenceCorpus { sentences, split })
}

fn parse_labeled_token(token: &str, line: usize, scale: u8) -> Result<LabeledToken> {
    let (word_raw, label_raw) =
        split_word_label(token).ok_or_else(|| Error::MalformedRecord {
            line,
            message: format!("token {token:?} has no `/label` part"),
        })?;
    let text = word_raw.replace("\\/", "/");
    if text.is_empty() {
        return Err(Error::MalformedRecord {
            line,
            message: format!("token {token:?} has an empty word"),
        });
    }

    let label = if scale == 3 {
        SentimentLabel::parse3(label_raw)
    } else {
        FiveClassLabel::parse5(label_raw).map(merge_five_to_three)
    }
    .ok_or_else(|| Error::UnknownLabel {
        line,
        label: label_raw.to_string(),
    })?;

    Ok(LabeledToken { text, label })
}

/// Split at the last `/` that is not escaped by a backslash.
fn split_word_label(token: &str) -> Option<(&str, &str)> {
    let bytes = token.as_bytes();
    for i in (0..bytes.len()).rev() {
        if bytes[i] == b'/' && (i == 0 || bytes[i - 1] != b'\\') {
            return Some((&token[..i], &token[i + 1..]));
        }
    }
    None
}
