//! `psent` — measure how well summaries preserve the sentiment of the
//! dialogues they summarize.
//!
//! Subcommands cover the whole pipeline: `tokenize` and `tag` expose the
//! intermediate representations, `score` computes the corpus-level
//! agreement statistics, `filter` removes pairs without sentiment words,
//! `stats` summarizes the proportion distributions, and `eval-tagger`
//! scores a word tagger against gold labels.
//!
//! All outputs are deterministic for a given input and flag set; wall-clock
//! timestamps only appear when `--stamp` is passed. Files are written
//! atomically (temp file + rename), so a failed run never leaves a partial
//! output behind.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use psent_core::corpus::{
    load_labeled_corpus, load_pairs, write_pairs, DialogueSummaryPair, LabeledSentenceCorpus,
    PairFormat, SentimentLabel, Split,
};
use psent_core::lexicon::{
    load_external_tags, load_lexicon, tag_pairs, write_tags, DocRef, SentimentLexicon, TagSet,
};
use psent_core::psent::{Channel, SummaryPolicy};
use psent_core::scoring::{
    collect_psent_values, distribution_summary, filter_corpus, score_report, ChannelOutcome,
    DistributionSummary, FilterMode, ReportMetadata, ScoreReport,
};
use psent_core::tagger_eval::{evaluate_tagger, TaggerMetrics};
use psent_core::tokenize::{tokenize_with, TokenizeOptions};

/// Environment variable naming a directory with `positive-words.txt` and
/// `negative-words.txt`, used when no lexicon flags are given.
const LEXICON_DIR_VAR: &str = "PSENT_LEXICON_DIR";

#[derive(Parser)]
#[command(
    name = "psent",
    version,
    about = "Sentiment-preservation measures for dialogue summaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tokenize dialogues and summaries into word tokens
    Tokenize(TokenizeCmd),
    /// Tag every word with a sentiment label using a polarity lexicon
    Tag(TagCmd),
    /// Score sentiment preservation across a corpus
    Score(ScoreCmd),
    /// Drop pairs whose documents carry no sentiment words
    Filter(FilterCmd),
    /// Summarize the sentiment-proportion distributions of a corpus
    Stats(StatsCmd),
    /// Evaluate a word tagger against gold token labels
    EvalTagger(EvalTaggerCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// Read only the `summary` field of each record
    Simple,
    /// Also read `summary2` and `summary3` when present
    MultiReference,
}

impl From<FormatArg> for PairFormat {
    fn from(value: FormatArg) -> PairFormat {
        match value {
            FormatArg::Simple => PairFormat::Simple,
            FormatArg::MultiReference => PairFormat::MultiReference,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    /// Positive and negative words together
    All,
    /// Positive words only
    Pos,
    /// Negative words only
    Neg,
}

impl From<ChannelArg> for Channel {
    fn from(value: ChannelArg) -> Channel {
        match value {
            ChannelArg::All => Channel::All,
            ChannelArg::Pos => Channel::Positive,
            ChannelArg::Neg => Channel::Negative,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    /// Pair every summary with its dialogue as its own sample
    Each,
    /// Average each pair's summaries into one sample
    Mean,
}

impl From<PolicyArg> for SummaryPolicy {
    fn from(value: PolicyArg) -> SummaryPolicy {
        match value {
            PolicyArg::Each => SummaryPolicy::Each,
            PolicyArg::Mean => SummaryPolicy::Mean,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Drop a pair if the dialogue or any summary has no sentiment words
    TrainLike,
    /// Drop a pair only if the dialogue has no sentiment words
    TestLike,
}

impl From<ModeArg> for FilterMode {
    fn from(value: ModeArg) -> FilterMode {
        match value {
            ModeArg::TrainLike => FilterMode::TrainLike,
            ModeArg::TestLike => FilterMode::TestLike,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Train,
    Validation,
    Test,
}

impl From<SplitArg> for Split {
    fn from(value: SplitArg) -> Split {
        match value {
            SplitArg::Train => Split::Train,
            SplitArg::Validation => Split::Validation,
            SplitArg::Test => Split::Test,
        }
    }
}

/// Flags shared by every subcommand that reads a pair file.
#[derive(Args)]
struct PairsOpts {
    /// Pair records, one JSON object per line
    #[arg(long, value_name = "FILE")]
    pairs: PathBuf,

    /// How summary fields are collected from each record
    #[arg(long, value_enum, default_value = "simple")]
    format: FormatArg,

    /// Keep speaker markers such as `#Person1#:` as tokens
    #[arg(long)]
    keep_speaker_tokens: bool,
}

impl PairsOpts {
    fn tokenize_options(&self) -> TokenizeOptions {
        TokenizeOptions {
            keep_speaker_tokens: self.keep_speaker_tokens,
        }
    }

    fn load(&self) -> Result<Vec<DialogueSummaryPair>, CliError> {
        Ok(load_pairs(&self.pairs, self.format.into())?)
    }
}

/// Lexicon flags with an environment fallback.
#[derive(Args)]
struct LexiconOpts {
    /// Positive word list, one word per line (`;` starts a comment)
    #[arg(long, value_name = "FILE", requires = "lexicon_neg")]
    lexicon_pos: Option<PathBuf>,

    /// Negative word list, one word per line
    #[arg(long, value_name = "FILE", requires = "lexicon_pos")]
    lexicon_neg: Option<PathBuf>,
}

impl LexiconOpts {
    fn resolve(&self) -> Result<SentimentLexicon, CliError> {
        if let (Some(pos), Some(neg)) = (&self.lexicon_pos, &self.lexicon_neg) {
            return Ok(load_lexicon(pos, neg)?);
        }
        match std::env::var_os(LEXICON_DIR_VAR) {
            Some(dir) => {
                let dir = PathBuf::from(dir);
                Ok(load_lexicon(
                    dir.join("positive-words.txt"),
                    dir.join("negative-words.txt"),
                )?)
            }
            None => Err(CliError::Usage(format!(
                "no lexicon: pass --lexicon-pos/--lexicon-neg or set {LEXICON_DIR_VAR}"
            ))),
        }
    }
}

/// Where word tags come from: a lexicon or a pre-computed tag file.
#[derive(Args)]
struct TagSourceOpts {
    #[command(flatten)]
    lexicon: LexiconOpts,

    /// Pre-computed word tags from an external tagger
    #[arg(long, value_name = "FILE", conflicts_with_all = ["lexicon_pos", "lexicon_neg"])]
    tags: Option<PathBuf>,
}

impl TagSourceOpts {
    /// Produce the tag set and the identity string recorded in reports.
    fn resolve(
        &self,
        pairs: &[DialogueSummaryPair],
        opts: TokenizeOptions,
    ) -> Result<(TagSet, String), CliError> {
        if let Some(path) = &self.tags {
            let tags = load_external_tags(path, pairs, opts)?;
            return Ok((tags, format!("external:{}", path.display())));
        }
        let lexicon = self.lexicon.resolve()?;
        let identity = lexicon.identity();
        let tags = TagSet::from_assignments(tag_pairs(pairs, &lexicon, opts))?;
        Ok((tags, identity))
    }
}

#[derive(Args)]
struct TokenizeCmd {
    #[command(flatten)]
    pairs: PairsOpts,

    /// Write here instead of stdout (atomic)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TagCmd {
    #[command(flatten)]
    pairs: PairsOpts,

    #[command(flatten)]
    lexicon: LexiconOpts,

    /// Write here instead of stdout (atomic)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScoreCmd {
    #[command(flatten)]
    pairs: PairsOpts,

    #[command(flatten)]
    tag_source: TagSourceOpts,

    /// Restrict scoring to one channel (default: all three)
    #[arg(long, value_enum)]
    channel: Option<ChannelArg>,

    /// How multiple summaries per pair enter the series
    #[arg(long, value_enum, default_value = "each")]
    summary_policy: PolicyArg,

    /// Emit CSV instead of JSON
    #[arg(long)]
    csv: bool,

    /// Record the wall-clock time in the report metadata
    #[arg(long)]
    stamp: bool,

    /// Write here instead of stdout (atomic)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FilterCmd {
    #[command(flatten)]
    pairs: PairsOpts,

    #[command(flatten)]
    tag_source: TagSourceOpts,

    /// Which documents disqualify a pair
    #[arg(long, value_enum, default_value = "train-like")]
    mode: ModeArg,

    /// Where the surviving pairs are written (atomic)
    #[arg(long, value_name = "FILE")]
    out: PathBuf,

    /// Write the filter report here instead of stdout (atomic)
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct StatsCmd {
    #[command(flatten)]
    pairs: PairsOpts,

    #[command(flatten)]
    tag_source: TagSourceOpts,

    /// Which proportion to summarize
    #[arg(long, value_enum, default_value = "all")]
    channel: ChannelArg,

    /// How multiple summaries per pair enter the value set
    #[arg(long, value_enum, default_value = "each")]
    summary_policy: PolicyArg,

    /// Record the wall-clock time in the report metadata
    #[arg(long)]
    stamp: bool,

    /// Write here instead of stdout (atomic)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalTaggerCmd {
    /// Gold token labels (`#labels=3` or `#labels=5` header)
    #[arg(long, value_name = "FILE")]
    gold: PathBuf,

    /// Which split the gold file is, recorded in the output
    #[arg(long, value_enum, default_value = "test")]
    split: SplitArg,

    #[command(flatten)]
    lexicon: LexiconOpts,

    /// Predicted labels as a second token-label file aligned with the gold
    /// one, instead of tagging with a lexicon
    #[arg(long, value_name = "FILE", conflicts_with_all = ["lexicon_pos", "lexicon_neg"])]
    pred: Option<PathBuf>,

    /// Emit a one-row CSV instead of JSON
    #[arg(long)]
    csv: bool,

    /// Write here instead of stdout (atomic)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

// ------------------------------------------------------------------ errors

#[derive(Debug)]
enum CliError {
    Core(psent_core::Error),
    Usage(String),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn code(&self) -> &str {
        match self {
            CliError::Core(err) => err.code(),
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(err) => err.fmt(f),
            CliError::Usage(message) => f.write_str(message),
            CliError::Io { path, source } => write!(f, "{}: {}", path.display(), source),
        }
    }
}

impl From<psent_core::Error> for CliError {
    fn from(err: psent_core::Error) -> CliError {
        CliError::Core(err)
    }
}

// ------------------------------------------------------------------ output

/// Write to a file atomically, or to stdout when no path is given.
fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(parent) if !parent.as_os_str().is_empty() => parent,
                _ => Path::new("."),
            };
            let io_err = |source| CliError::Io {
                path: path.to_path_buf(),
                source,
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
            tmp.write_all(content.as_bytes()).map_err(io_err)?;
            tmp.persist(path).map_err(|err| io_err(err.error))?;
            Ok(())
        }
    }
}

fn json_lines<T: Serialize>(records: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    out
}

fn pretty_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serializes");
    out.push('\n');
    out
}

fn timestamp(stamp: bool) -> Option<String> {
    stamp.then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

// ------------------------------------------------------------ subcommands

fn run_tokenize(cmd: TokenizeCmd) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct TokenRecord<'a> {
        id: &'a str,
        which: DocRef,
        tokens: Vec<String>,
    }

    let pairs = cmd.pairs.load()?;
    let opts = cmd.pairs.tokenize_options();

    let mut records = Vec::new();
    for pair in &pairs {
        records.push(TokenRecord {
            id: &pair.id,
            which: DocRef::Dialogue,
            tokens: tokenize_with(&pair.dialogue, opts).into_texts(),
        });
        for (k, summary) in pair.summaries.iter().enumerate() {
            records.push(TokenRecord {
                id: &pair.id,
                which: DocRef::Summary(k),
                tokens: tokenize_with(summary, opts).into_texts(),
            });
        }
    }
    emit(cmd.out.as_deref(), &json_lines(records))
}

fn run_tag(cmd: TagCmd) -> Result<(), CliError> {
    let pairs = cmd.pairs.load()?;
    let lexicon = cmd.lexicon.resolve()?;
    let assignments = tag_pairs(&pairs, &lexicon, cmd.pairs.tokenize_options());
    let mut buf = Vec::new();
    write_tags(&mut buf, &assignments)?;
    emit(
        cmd.out.as_deref(),
        std::str::from_utf8(&buf).expect("tag records are UTF-8"),
    )
}

fn score_csv(report: &ScoreReport) -> String {
    let mut out = String::from("channel,spearman,ccc,mae,n_used,status\n");
    for entry in &report.channels {
        match &entry.outcome {
            ChannelOutcome::Ok(scores) => {
                out.push_str(&format!(
                    "{},{},{},{},{},ok\n",
                    entry.channel, scores.spearman, scores.ccc, scores.mae, scores.n_used
                ));
            }
            ChannelOutcome::Error(failure) => {
                out.push_str(&format!("{},,,,,{}\n", entry.channel, failure.code));
            }
        }
    }
    out
}

fn run_score(cmd: ScoreCmd) -> Result<(), CliError> {
    let pairs = cmd.pairs.load()?;
    let opts = cmd.pairs.tokenize_options();
    let (tags, tagger) = cmd.tag_source.resolve(&pairs, opts)?;

    let channels: Vec<Channel> = match cmd.channel {
        Some(channel) => vec![channel.into()],
        None => Channel::ALL.to_vec(),
    };
    let report = score_report(
        &pairs,
        &tags,
        &channels,
        cmd.summary_policy.into(),
        tagger,
        timestamp(cmd.stamp),
    )?;

    let content = if cmd.csv {
        score_csv(&report)
    } else {
        pretty_json(&report)
    };
    emit(cmd.out.as_deref(), &content)
}

fn run_filter(cmd: FilterCmd) -> Result<(), CliError> {
    let pairs = cmd.pairs.load()?;
    let opts = cmd.pairs.tokenize_options();
    let (tags, _) = cmd.tag_source.resolve(&pairs, opts)?;

    let (kept, report) = filter_corpus(&pairs, &tags, cmd.mode.into())?;

    let mut buf = Vec::new();
    write_pairs(&mut buf, &kept)?;
    emit(
        Some(&cmd.out),
        std::str::from_utf8(&buf).expect("pair records are UTF-8"),
    )?;
    emit(cmd.report.as_deref(), &pretty_json(&report))
}

fn run_stats(cmd: StatsCmd) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct DistributionReport {
        channel: Channel,
        dialogue: DistributionSummary,
        summary: DistributionSummary,
        metadata: ReportMetadata,
    }

    let pairs = cmd.pairs.load()?;
    let opts = cmd.pairs.tokenize_options();
    let (tags, tagger) = cmd.tag_source.resolve(&pairs, opts)?;

    let channel: Channel = cmd.channel.into();
    let policy: SummaryPolicy = cmd.summary_policy.into();
    let (dialogue_values, summary_values) =
        collect_psent_values(&pairs, &tags, channel, policy)?;

    let report = DistributionReport {
        channel,
        dialogue: distribution_summary(&dialogue_values)?,
        summary: distribution_summary(&summary_values)?,
        metadata: ReportMetadata::new(policy, tagger, timestamp(cmd.stamp)),
    };
    emit(cmd.out.as_deref(), &pretty_json(&report))
}

fn lexicon_predictions(
    gold: &LabeledSentenceCorpus,
    lexicon: &SentimentLexicon,
) -> Vec<Vec<SentimentLabel>> {
    gold.sentences
        .iter()
        .map(|sentence| {
            sentence
                .iter()
                .map(|token| lexicon.label_of(&token.text))
                .collect()
        })
        .collect()
}

fn run_eval_tagger(cmd: EvalTaggerCmd) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct EvalReport {
        tagger: String,
        split: Split,
        sentences: usize,
        metrics: TaggerMetrics,
    }

    let split: Split = cmd.split.into();
    let gold = load_labeled_corpus(&cmd.gold, split)?;

    let (predictions, tagger) = match &cmd.pred {
        Some(path) => {
            let predicted = load_labeled_corpus(path, split)?;
            let labels = predicted
                .sentences
                .into_iter()
                .map(|sentence| sentence.into_iter().map(|t| t.label).collect())
                .collect();
            (labels, format!("external:{}", path.display()))
        }
        None => {
            let lexicon = cmd.lexicon.resolve()?;
            (lexicon_predictions(&gold, &lexicon), lexicon.identity())
        }
    };

    let metrics = evaluate_tagger(&gold, &predictions)?;
    let content = if cmd.csv {
        format!(
            "overall_accuracy,precision,recall,f1\n{},{},{},{}\n",
            metrics.overall_accuracy,
            metrics.macro_precision,
            metrics.macro_recall,
            metrics.macro_f1
        )
    } else {
        pretty_json(&EvalReport {
            tagger,
            split,
            sentences: gold.len(),
            metrics,
        })
    };
    emit(cmd.out.as_deref(), &content)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Tokenize(cmd) => run_tokenize(cmd),
        Command::Tag(cmd) => run_tag(cmd),
        Command::Score(cmd) => run_score(cmd),
        Command::Filter(cmd) => run_filter(cmd),
        Command::Stats(cmd) => run_stats(cmd),
        Command::EvalTagger(cmd) => run_eval_tagger(cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error[{}]: {err}", err.code());
            ExitCode::FAILURE
        }
    }
}
