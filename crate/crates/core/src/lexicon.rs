//! Lexicon-based word tagging and the tag store that downstream measures
//! read from.
//!
//! A [`SentimentLexicon`] is two disjoint word sets. Tagging lowercases each
//! token and looks it up: positive set → positive, negative set → negative,
//! otherwise neutral. Tags can also be loaded from an external file so that
//! any word-level tagger can be plugged in; the file is validated against
//! the corpus it claims to annotate.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{DialogueSummaryPair, SentimentLabel};
use crate::error::{Error, Result};
use crate::parallel;
use crate::tokenize::{tokenize_with, TokenStream, TokenizeOptions};

/// Positive and negative word sets; words are stored lowercased.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SentimentLexicon {
    positive: HashSet<String>,
    negative: HashSet<String>,
}

impl SentimentLexicon {
    /// Build from word iterators, lowercasing and deduplicating.
    ///
    /// Fails if a word lands in both sets or if both sets come out empty.
    pub fn new<P, N>(positive: P, negative: N) -> Result<SentimentLexicon>
    where
        P: IntoIterator,
        P::Item: AsRef<str>,
        N: IntoIterator,
        N::Item: AsRef<str>,
    {
        let positive: HashSet<String> = positive
            .into_iter()
            .map(|w| w.as_ref().to_lowercase())
            .collect();
        let negative: HashSet<String> = negative
            .into_iter()
            .map(|w| w.as_ref().to_lowercase())
            .collect();
        if let Some(word) = positive.intersection(&negative).next() {
            return Err(Error::LexiconOverlap { word: word.clone() });
        }
        if positive.is_empty() && negative.is_empty() {
            return Err(Error::EmptyLexicon);
        }
        Ok(SentimentLexicon { positive, negative })
    }

    /// Polarity of a single word (case-insensitive; unknown words are neutral).
    pub fn label_of(&self, word: &str) -> SentimentLabel {
        let lower = word.to_lowercase();
        if self.positive.contains(&lower) {
            SentimentLabel::Positive
        } else if self.negative.contains(&lower) {
            SentimentLabel::Negative
        } else {
            SentimentLabel::Neutral
        }
    }

    pub fn positive_len(&self) -> usize {
        self.positive.len()
    }

    pub fn negative_len(&self) -> usize {
        self.negative.len()
    }

    /// Identity string recorded in score reports, e.g. `lexicon:2006+4783`.
    pub fn identity(&self) -> String {
        format!("lexicon:{}+{}", self.positive.len(), self.negative.len())
    }
}

fn read_word_list(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut words = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let entry = line.trim();
        if entry.is_empty() || entry.starts_with(';') {
            continue;
        }
        if entry.chars().any(char::is_whitespace) {
            return Err(Error::MalformedRecord {
                line: idx + 1,
                message: format!("lexicon entry {entry:?} contains whitespace"),
            });
        }
        words.push(entry.to_string());
    }
    Ok(words)
}

/// Load a lexicon from two word-list files (one word per line, `;` comments
/// and blank lines ignored).
pub fn load_lexicon(
    positive_path: impl AsRef<Path>,
    negative_path: impl AsRef<Path>,
) -> Result<SentimentLexicon> {
    let positive = read_word_list(positive_path.as_ref())?;
    let negative = read_word_list(negative_path.as_ref())?;
    SentimentLexicon::new(positive, negative)
}

/// Tag every token in a stream.
pub fn tag_tokens(tokens: &TokenStream, lexicon: &SentimentLexicon) -> Vec<SentimentLabel> {
    tokens
        .tokens
        .iter()
        .map(|t| lexicon.label_of(&t.text))
        .collect()
}

/// Which document of a pair a tag sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DocRef {
    Dialogue,
    /// Index into the pair's summary list (0-based).
    Summary(usize),
}

impl fmt::Display for DocRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocRef::Dialogue => f.write_str("dialogue"),
            DocRef::Summary(k) => write!(f, "summary:{k}"),
        }
    }
}

impl FromStr for DocRef {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<DocRef, String> {
        if s == "dialogue" {
            return Ok(DocRef::Dialogue);
        }
        if let Some(idx) = s.strip_prefix("summary:") {
            return idx
                .parse::<usize>()
                .map(DocRef::Summary)
                .map_err(|_| format!("bad summary index in doc ref {s:?}"));
        }
        Err(format!(
            "bad doc ref {s:?}: expected `dialogue` or `summary:<k>`"
        ))
    }
}

impl Serialize for DocRef {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DocRef {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<DocRef, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One document's word tags, keyed by pair id and document slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagAssignment {
    pub id: String,
    pub which: DocRef,
    pub labels: Vec<SentimentLabel>,
}

/// All tags for a corpus, indexed by `(pair id, document slot)`.
#[derive(Debug, Clone, Default)]
pub struct TagSet {
    map: HashMap<(String, DocRef), Vec<SentimentLabel>>,
}

impl TagSet {
    pub fn from_assignments(assignments: Vec<TagAssignment>) -> Result<TagSet> {
        let mut map = HashMap::with_capacity(assignments.len());
        for a in assignments {
            if map
                .insert((a.id.clone(), a.which), a.labels)
                .is_some()
            {
                return Err(Error::DuplicateTag {
                    doc_id: a.id,
                    which: a.which,
                });
            }
        }
        Ok(TagSet { map })
    }

    pub fn get(&self, id: &str, which: DocRef) -> Option<&[SentimentLabel]> {
        self.map.get(&(id.to_string(), which)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Tag one pair's dialogue and every summary with a lexicon.
pub fn tag_pair(
    pair: &DialogueSummaryPair,
    lexicon: &SentimentLexicon,
    opts: TokenizeOptions,
) -> Vec<TagAssignment> {
    let mut out = Vec::with_capacity(1 + pair.summaries.len());
    out.push(TagAssignment {
        id: pair.id.clone(),
        which: DocRef::Dialogue,
        labels: tag_tokens(&tokenize_with(&pair.dialogue, opts), lexicon),
    });
    for (k, summary) in pair.summaries.iter().enumerate() {
        out.push(TagAssignment {
            id: pair.id.clone(),
            which: DocRef::Summary(k),
            labels: tag_tokens(&tokenize_with(summary, opts), lexicon),
        });
    }
    out
}

/// Tag a whole corpus. Output order follows the input pair order
/// (dialogue first, then summaries in order) regardless of how the work is
/// scheduled.
pub fn tag_pairs(
    pairs: &[DialogueSummaryPair],
    lexicon: &SentimentLexicon,
    opts: TokenizeOptions,
) -> Vec<TagAssignment> {
    parallel::map_collect(pairs, |pair| tag_pair(pair, lexicon, opts))
        .into_iter()
        .flatten()
        .collect()
}

/// Read tags produced by an external tagger and validate them against the
/// corpus they annotate: every record must name a known pair, an in-range
/// summary slot, and carry exactly one label per token of that document.
pub fn load_external_tags(
    path: impl AsRef<Path>,
    pairs: &[DialogueSummaryPair],
    opts: TokenizeOptions,
) -> Result<TagSet> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_external_tags_from_reader(file, pairs, opts)
}

/// Same as [`load_external_tags`] but over any reader.
pub fn load_external_tags_from_reader(
    reader: impl Read,
    pairs: &[DialogueSummaryPair],
    opts: TokenizeOptions,
) -> Result<TagSet> {
    #[derive(Deserialize)]
    struct RawTagRecord {
        id: String,
        which: DocRef,
        labels: Vec<String>,
    }

    let by_id: HashMap<&str, &DialogueSummaryPair> =
        pairs.iter().map(|p| (p.id.as_str(), p)).collect();

    let mut assignments = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: "<reader>".into(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RawTagRecord =
            serde_json::from_str(&line).map_err(|err| Error::MalformedRecord {
                line: line_no,
                message: err.to_string(),
            })?;

        let pair = by_id
            .get(record.id.as_str())
            .copied()
            .ok_or_else(|| Error::UnknownDocId {
                id: record.id.clone(),
            })?;
        let text = match record.which {
            DocRef::Dialogue => &pair.dialogue,
            DocRef::Summary(k) => pair.summaries.get(k).ok_or_else(|| Error::UnknownDocId {
                id: format!("{}#{}", record.id, record.which),
            })?,
        };

        let mut labels = Vec::with_capacity(record.labels.len());
        for code in &record.labels {
            labels.push(SentimentLabel::from_code(code).ok_or_else(|| Error::UnknownLabel {
                line: line_no,
                label: code.clone(),
            })?);
        }

        let expected = tokenize_with(text, opts).len();
        if labels.len() != expected {
            return Err(Error::TagLengthMismatch {
                doc_id: record.id,
                which: record.which,
                expected,
                actual: labels.len(),
            });
        }

        assignments.push(TagAssignment {
            id: record.id,
            which: record.which,
            labels,
        });
    }

    TagSet::from_assignments(assignments)
}

/// Write tag assignments as line-delimited records with single-character
/// label codes (`p`/`o`/`n`), one document per line.
pub fn write_tags(mut writer: impl Write, assignments: &[TagAssignment]) -> Result<()> {
    #[derive(Serialize)]
    struct TagRecordOut<'a> {
        id: &'a str,
        which: DocRef,
        labels: Vec<String>,
    }

    for a in assignments {
        let record = TagRecordOut {
            id: &a.id,
            which: a.which,
            labels: a.labels.iter().map(|l| l.code().to_string()).collect(),
        };
        let json = serde_json::to_string(&record).expect("tag record serializes");
        writeln!(writer, "{json}").map_err(|source| Error::Io {
            path: "<writer>".into(),
            source,
        })?;
    }
    Ok(())
}
