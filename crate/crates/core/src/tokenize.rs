//! Deterministic word segmentation.
//!
//! The token count of a document is the denominator of every proportion the
//! crate computes, so the segmentation rules are fixed and simple: split on
//! Unicode whitespace, strip leading and trailing punctuation from each
//! piece, drop pieces that are punctuation only, and drop speaker markers of
//! the form `#Person<digits>#` (with an optional trailing `:`). Case is kept
//! in the token text; lookups lowercase at lookup time.

use serde::{Deserialize, Serialize};

/// A single word token with its `(start, end)` character offsets into the
/// original text. The span covers the token after punctuation stripping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    pub span: (usize, usize),
}

/// Ordered tokens produced from one document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStream {
    pub tokens: Vec<Token>,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token texts in order.
    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.text.as_str())
    }

    pub fn into_texts(self) -> Vec<String> {
        self.tokens.into_iter().map(|t| t.text).collect()
    }
}

/// Segmentation switches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TokenizeOptions {
    /// Keep `#Person<digits>#` markers as tokens instead of dropping them.
    /// Kept markers are emitted verbatim, untouched by punctuation stripping.
    pub keep_speaker_tokens: bool,
}

/// Tokenize with default options (speaker markers dropped).
pub fn tokenize(text: &str) -> TokenStream {
    tokenize_with(text, TokenizeOptions::default())
}

/// Tokenize `text` into word tokens.
///
/// Empty or all-whitespace input yields an empty stream; this never fails.
pub fn tokenize_with(text: &str, opts: TokenizeOptions) -> TokenStream {
    let mut tokens = Vec::new();
    let mut piece = String::new();
    let mut piece_start = 0usize;

    let flush = |piece: &mut String, start: usize, tokens: &mut Vec<Token>| {
        if !piece.is_empty() {
            if let Some(token) = process_piece(piece, start, opts) {
                tokens.push(token);
            }
            piece.clear();
        }
    };

    for (ci, ch) in text.chars().enumerate() {
        if ch.is_whitespace() {
            flush(&mut piece, piece_start, &mut tokens);
        } else {
            if piece.is_empty() {
                piece_start = ci;
            }
            piece.push(ch);
        }
    }
    flush(&mut piece, piece_start, &mut tokens);

    TokenStream { tokens }
}

/// `#Person<digits>#` with an optional trailing `:`.
pub fn is_speaker_marker(piece: &str) -> bool {
    let piece = piece.strip_suffix(':').unwrap_or(piece);
    let Some(rest) = piece.strip_prefix("#Person") else {
        return false;
    };
    let Some(digits) = rest.strip_suffix('#') else {
        return false;
    };
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

fn process_piece(piece: &str, start: usize, opts: TokenizeOptions) -> Option<Token> {
    if is_speaker_marker(piece) {
        if opts.keep_speaker_tokens {
            return Some(Token {
                text: piece.to_string(),
                span: (start, start + piece.chars().count()),
            });
        }
        return None;
    }

    let chars: Vec<char> = piece.chars().collect();
    let mut lo = 0;
    let mut hi = chars.len();
    while lo < hi && !chars[lo].is_alphanumeric() {
        lo += 1;
    }
    while hi > lo && !chars[hi - 1].is_alphanumeric() {
        hi -= 1;
    }
    if lo == hi {
        return None;
    }
    Some(Token {
        text: chars[lo..hi].iter().collect(),
        span: (start + lo, start + hi),
    })
}
