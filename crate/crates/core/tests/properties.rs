//! Property tests for the crate's documented invariants.
//!
//! The statistics are additionally checked against independent oracles
//! written from the textbook formulas (closed-form rank correlation on
//! tie-free data, concordance from means/variances/covariance via the
//! correlation factorization), not by re-calling the code under test.

use proptest::prelude::*;

use psent_core::corpus::{DialogueSummaryPair, SentimentLabel, SummaryOrigin};
use psent_core::lexicon::{tag_pairs, SentimentLexicon, TagSet};
use psent_core::psent::{compute_psent, Channel, SummaryPolicy};
use psent_core::scoring::{distribution_summary, filter_corpus, score_corpus, FilterMode};
use psent_core::stats::{ccc, mae, spearman, PairedSeries};
use psent_core::tokenize::{tokenize_with, TokenizeOptions};
use psent_core::{load_pairs_from_reader, write_pairs, PairFormat};

// ---------------------------------------------------------------- oracles

/// 1-based ranks of a series with no ties.
fn ranks_tie_free(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; values.len()];
    for (r, &idx) in order.iter().enumerate() {
        ranks[idx] = (r + 1) as f64;
    }
    ranks
}

/// Closed-form rank correlation, valid only without ties:
/// `1 - 6*Σd² / (n(n²-1))`.
fn closed_form_spearman(x: &[f64], y: &[f64]) -> f64 {
    let rx = ranks_tie_free(x);
    let ry = ranks_tie_free(y);
    let n = x.len() as f64;
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

fn population_stats(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var)
}

fn pearson_oracle(x: &[f64], y: &[f64]) -> f64 {
    let (mx, vx) = population_stats(x);
    let (my, vy) = population_stats(y);
    let n = x.len() as f64;
    let cov = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a - mx) * (b - my))
        .sum::<f64>()
        / n;
    cov / (vx.sqrt() * vy.sqrt())
}

/// Concordance via the correlation factorization
/// `ρ * 2σxσy / (σx² + σy² + (μx-μy)²)` — a different computation route
/// than the implementation's `2cov/denom`.
fn ccc_oracle(x: &[f64], y: &[f64]) -> f64 {
    let (mx, vx) = population_stats(x);
    let (my, vy) = population_stats(y);
    let rho = pearson_oracle(x, y);
    rho * 2.0 * vx.sqrt() * vy.sqrt() / (vx + vy + (mx - my) * (mx - my))
}

// -------------------------------------------------------------- strategies

fn label_vec(max_len: usize) -> impl Strategy<Value = Vec<SentimentLabel>> {
    prop::collection::vec(
        prop::sample::select(vec![
            SentimentLabel::Negative,
            SentimentLabel::Neutral,
            SentimentLabel::Positive,
        ]),
        1..max_len,
    )
}

/// Two same-length series with all-distinct values on each side.
fn tie_free_series() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (3usize..60).prop_flat_map(|n| {
        (
            prop::collection::hash_set(0u32..1_000_000, n).prop_map(|s| {
                s.into_iter().map(f64::from).collect::<Vec<_>>()
            }),
            prop::collection::hash_set(0u32..1_000_000, n).prop_map(|s| {
                s.into_iter().map(f64::from).collect::<Vec<_>>()
            }),
        )
    })
}

/// Two same-length series, ties allowed, x side non-constant.
fn general_series() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..60)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0u32..30, n),
                prop::collection::vec(0u32..30, n),
            )
        })
        .prop_map(|(x, y)| {
            (
                x.into_iter().map(f64::from).collect::<Vec<_>>(),
                y.into_iter().map(f64::from).collect::<Vec<_>>(),
            )
        })
        .prop_filter("x must not be constant", |(x, _)| {
            x.iter().any(|&v| v != x[0])
        })
}

fn word() -> impl Strategy<Value = String> {
    prop::string::string_regex("[a-zA-Z]{1,8}").unwrap()
}

fn sentence() -> impl Strategy<Value = String> {
    prop::collection::vec(word(), 1..12).prop_map(|words| words.join(" "))
}

fn corpus_strategy() -> impl Strategy<Value = Vec<DialogueSummaryPair>> {
    prop::collection::vec((sentence(), prop::collection::vec(sentence(), 1..=3)), 3..10)
        .prop_map(|items| {
            items
                .into_iter()
                .enumerate()
                .map(|(idx, (dialogue, summaries))| DialogueSummaryPair {
                    id: format!("p{idx}"),
                    dialogue,
                    summaries,
                    origin: SummaryOrigin::Reference,
                })
                .collect()
        })
}

fn test_lexicon() -> SentimentLexicon {
    // Lowercase entries chosen to collide often with the random words.
    let positive: Vec<String> = "abcdefghijklm".chars().map(|c| c.to_string()).collect();
    let negative: Vec<String> = "nopqrstuvwxyz".chars().map(|c| c.to_string()).collect();
    SentimentLexicon::new(positive, negative).unwrap()
}

// ------------------------------------------------------------- tokenizing

proptest! {
    #[test]
    fn tokens_are_nonempty_and_whitespace_free(text in any::<String>(), keep in any::<bool>()) {
        let opts = TokenizeOptions { keep_speaker_tokens: keep };
        let stream = tokenize_with(&text, opts);
        for token in &stream.tokens {
            prop_assert!(!token.text.is_empty());
            prop_assert!(!token.text.chars().any(char::is_whitespace));
        }
    }

    #[test]
    fn spans_map_back_to_the_source(text in any::<String>()) {
        let chars: Vec<char> = text.chars().collect();
        let stream = tokenize_with(&text, TokenizeOptions { keep_speaker_tokens: true });
        for token in &stream.tokens {
            let (start, end) = token.span;
            prop_assert!(end <= chars.len());
            let slice: String = chars[start..end].iter().collect();
            prop_assert_eq!(&slice, &token.text);
        }
    }

    #[test]
    fn spans_are_disjoint_and_increasing(text in any::<String>()) {
        let stream = tokenize_with(&text, TokenizeOptions::default());
        for window in stream.tokens.windows(2) {
            prop_assert!(window[0].span.1 <= window[1].span.0);
        }
        for token in &stream.tokens {
            prop_assert!(token.span.0 < token.span.1);
        }
    }

    #[test]
    fn retokenizing_the_token_texts_is_stable(text in any::<String>(), keep in any::<bool>()) {
        let opts = TokenizeOptions { keep_speaker_tokens: keep };
        let first = tokenize_with(&text, opts);
        let joined = first
            .tokens
            .iter()
            .map(|t| t.text.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        let second = tokenize_with(&joined, opts);
        let first_texts: Vec<_> = first.tokens.iter().map(|t| t.text.clone()).collect();
        let second_texts: Vec<_> = second.tokens.iter().map(|t| t.text.clone()).collect();
        prop_assert_eq!(first_texts, second_texts);
    }
}

// ------------------------------------------------------------ proportions

proptest! {
    #[test]
    fn psent_decomposes_into_polarities(labels in label_vec(200)) {
        let t = compute_psent(&labels).unwrap();
        prop_assert!((t.psent - (t.psent_p + t.psent_n)).abs() < 1e-12);
    }

    #[test]
    fn psent_values_are_proportions(labels in label_vec(200)) {
        let t = compute_psent(&labels).unwrap();
        for v in [t.psent, t.psent_p, t.psent_n] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert!(t.psent_p <= t.psent);
        prop_assert!(t.psent_n <= t.psent);
    }

    #[test]
    fn psent_ignores_label_order(labels in label_vec(100), seed in any::<u64>()) {
        let t1 = compute_psent(&labels).unwrap();
        let mut shuffled = labels.clone();
        // Deterministic Fisher–Yates driven by the seed.
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
        }
        let t2 = compute_psent(&shuffled).unwrap();
        prop_assert_eq!(t1, t2);
    }

    #[test]
    fn counts_are_exact(labels in label_vec(200)) {
        let t = compute_psent(&labels).unwrap();
        let pos = labels.iter().filter(|&&l| l == SentimentLabel::Positive).count();
        let neg = labels.iter().filter(|&&l| l == SentimentLabel::Negative).count();
        prop_assert_eq!(t.counts.pos_n, pos);
        prop_assert_eq!(t.counts.neg_n, neg);
        prop_assert_eq!(t.counts.total_n, labels.len());
        prop_assert_eq!(Channel::All.count_of(&t.counts), pos + neg);
    }
}

// -------------------------------------------------------------- statistics

proptest! {
    #[test]
    fn spearman_matches_closed_form_without_ties((x, y) in tie_free_series()) {
        let series = PairedSeries::new(x.clone(), y.clone()).unwrap();
        let rho = spearman(&series).unwrap();
        let oracle = closed_form_spearman(&x, &y);
        prop_assert!((rho - oracle).abs() < 1e-12, "{rho} vs oracle {oracle}");
    }

    #[test]
    fn spearman_stays_in_bounds((x, y) in general_series()) {
        let series = PairedSeries::new(x, y).unwrap();
        if let Ok(rho) = spearman(&series) {
            prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&rho));
        }
    }

    #[test]
    fn spearman_is_symmetric((x, y) in tie_free_series()) {
        let a = spearman(&PairedSeries::new(x.clone(), y.clone()).unwrap()).unwrap();
        let b = spearman(&PairedSeries::new(y, x).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn spearman_flips_sign_under_negation((x, y) in tie_free_series()) {
        let a = spearman(&PairedSeries::new(x.clone(), y.clone()).unwrap()).unwrap();
        let neg_y: Vec<f64> = y.iter().map(|v| -v).collect();
        let b = spearman(&PairedSeries::new(x, neg_y).unwrap()).unwrap();
        prop_assert!((a + b).abs() < 1e-12);
    }

    #[test]
    fn spearman_ignores_monotone_rescaling((x, y) in tie_free_series()) {
        let a = spearman(&PairedSeries::new(x.clone(), y.clone()).unwrap()).unwrap();
        let scaled: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let b = spearman(&PairedSeries::new(scaled, y).unwrap()).unwrap();
        // Identical ranks, hence an identical computation.
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ccc_matches_the_factorized_oracle((x, y) in general_series()) {
        prop_assume!(y.iter().any(|&v| v != y[0]));
        let series = PairedSeries::new(x.clone(), y.clone()).unwrap();
        let c = ccc(&series).unwrap();
        let oracle = ccc_oracle(&x, &y);
        prop_assert!((c - oracle).abs() < 1e-12, "{c} vs oracle {oracle}");
    }

    #[test]
    fn ccc_never_exceeds_correlation((x, y) in general_series()) {
        prop_assume!(y.iter().any(|&v| v != y[0]));
        let series = PairedSeries::new(x.clone(), y.clone()).unwrap();
        let c = ccc(&series).unwrap();
        let r = pearson_oracle(&x, &y);
        prop_assert!(c.abs() <= r.abs() + 1e-12);
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&c));
    }

    #[test]
    fn ccc_of_a_series_with_itself_is_exactly_one((x, _) in general_series()) {
        let series = PairedSeries::new(x.clone(), x).unwrap();
        prop_assert_eq!(ccc(&series).unwrap(), 1.0);
    }

    #[test]
    fn spearman_of_a_series_with_itself_is_exactly_one((x, _) in tie_free_series()) {
        let series = PairedSeries::new(x.clone(), x).unwrap();
        prop_assert_eq!(spearman(&series).unwrap(), 1.0);
    }

    #[test]
    fn ccc_is_symmetric((x, y) in general_series()) {
        prop_assume!(y.iter().any(|&v| v != y[0]));
        let a = ccc(&PairedSeries::new(x.clone(), y.clone()).unwrap()).unwrap();
        let b = ccc(&PairedSeries::new(y, x).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mae_properties((x, y) in general_series()) {
        let series = PairedSeries::new(x.clone(), y.clone()).unwrap();
        let forward = mae(&series);
        prop_assert!(forward >= 0.0);
        prop_assert_eq!(forward, mae(&PairedSeries::new(y.clone(), x.clone()).unwrap()));

        let self_series = PairedSeries::new(x.clone(), x.clone()).unwrap();
        prop_assert_eq!(mae(&self_series), 0.0);

        // Direct recomputation.
        let oracle = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum::<f64>() / x.len() as f64;
        prop_assert!((forward - oracle).abs() < 1e-12);
    }

    #[test]
    fn mae_is_translation_invariant((x, y) in general_series(), shift in -100i32..100) {
        let c = f64::from(shift);
        let base = mae(&PairedSeries::new(x.clone(), y.clone()).unwrap());
        let shifted = mae(&PairedSeries::new(
            x.iter().map(|v| v + c).collect(),
            y.iter().map(|v| v + c).collect(),
        ).unwrap());
        prop_assert!((base - shifted).abs() < 1e-9);
    }
}

// ----------------------------------------------------------------- scoring

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corpus_scores_ignore_pair_order(pairs in corpus_strategy(), seed in any::<u64>()) {
        let lexicon = test_lexicon();
        let tags = TagSet::from_assignments(
            tag_pairs(&pairs, &lexicon, TokenizeOptions::default()),
        ).unwrap();
        let base = score_corpus(&pairs, &tags, Channel::All, SummaryPolicy::Each);
        prop_assume!(base.is_ok());
        let base = base.unwrap();

        let mut shuffled = pairs.clone();
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
        }
        let tags = TagSet::from_assignments(
            tag_pairs(&shuffled, &lexicon, TokenizeOptions::default()),
        ).unwrap();
        let reordered = score_corpus(&shuffled, &tags, Channel::All, SummaryPolicy::Each).unwrap();

        prop_assert_eq!(base.n_used, reordered.n_used);
        prop_assert!((base.spearman - reordered.spearman).abs() < 1e-12);
        prop_assert!((base.ccc - reordered.ccc).abs() < 1e-12);
        prop_assert!((base.mae - reordered.mae).abs() < 1e-12);
    }

    #[test]
    fn filter_accounting_adds_up(pairs in corpus_strategy()) {
        let lexicon = test_lexicon();
        let tags = TagSet::from_assignments(
            tag_pairs(&pairs, &lexicon, TokenizeOptions::default()),
        ).unwrap();

        for mode in [FilterMode::TrainLike, FilterMode::TestLike] {
            let (kept, report) = filter_corpus(&pairs, &tags, mode).unwrap();
            prop_assert_eq!(report.kept, kept.len());
            prop_assert_eq!(
                report.kept + report.dropped_zero_dialogue + report.dropped_zero_summary,
                report.total
            );
            prop_assert_eq!(report.total, pairs.len());
            // Kept pairs appear in corpus order.
            let ids: Vec<_> = pairs.iter().map(|p| p.id.clone()).collect();
            let mut last = 0usize;
            for pair in &kept {
                let at = ids.iter().position(|id| *id == pair.id).unwrap();
                prop_assert!(at >= last);
                last = at;
            }
        }

        let (train_kept, train_report) =
            filter_corpus(&pairs, &tags, FilterMode::TrainLike).unwrap();
        let (test_kept, test_report) =
            filter_corpus(&pairs, &tags, FilterMode::TestLike).unwrap();
        prop_assert!(train_kept.len() <= test_kept.len());
        prop_assert_eq!(test_report.dropped_zero_summary, 0);
        prop_assert_eq!(
            train_report.dropped_zero_dialogue,
            test_report.dropped_zero_dialogue
        );
        // Every train-like survivor also survives test-like filtering.
        for pair in &train_kept {
            prop_assert!(test_kept.iter().any(|p| p.id == pair.id));
        }
    }

    #[test]
    fn distribution_summary_invariants(values in prop::collection::vec(0u32..1000, 1..80)) {
        let values: Vec<f64> = values.into_iter().map(f64::from).collect();
        let d = distribution_summary(&values).unwrap();
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

        prop_assert!(d.q1 <= d.median && d.median <= d.q3);
        prop_assert_eq!(d.n, values.len());

        // Whiskers are data points at most 1.5·IQR beyond the quartiles.
        // They can land above q1 (or below q3) when every point on that
        // side of the box is an outlier.
        let iqr = d.q3 - d.q1;
        prop_assert!(min <= d.whisker_low && d.whisker_high <= max);
        prop_assert!(d.whisker_low <= d.whisker_high);
        prop_assert!(d.whisker_low >= d.q1 - 1.5 * iqr - 1e-9);
        prop_assert!(d.whisker_high <= d.q3 + 1.5 * iqr + 1e-9);
        prop_assert!(values.contains(&d.whisker_low));
        prop_assert!(values.contains(&d.whisker_high));

        // Whiskers and outliers partition the data, outliers strictly
        // outside the whiskers and sorted ascending.
        let within = values
            .iter()
            .filter(|&&v| v >= d.whisker_low && v <= d.whisker_high)
            .count();
        prop_assert_eq!(within + d.outliers.len(), values.len());
        for o in &d.outliers {
            prop_assert!(*o < d.whisker_low || *o > d.whisker_high);
        }
        for w in d.outliers.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn pair_files_round_trip(pairs in corpus_strategy()) {
        let mut buf = Vec::new();
        write_pairs(&mut buf, &pairs).unwrap();
        let reloaded = load_pairs_from_reader(&buf[..], PairFormat::MultiReference).unwrap();
        prop_assert_eq!(pairs, reloaded);
    }
}
