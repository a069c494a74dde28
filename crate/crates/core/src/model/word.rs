use std::fmt;

use serde::{Deserialize, Serialize};

/// An event symbol. Tokens are opaque, non-empty text and compare by exact text.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Token(String);

impl Token {
    /// Panics if `text` is empty; use [`Token::try_new`] for untrusted input.
    pub fn new(text: impl Into<String>) -> Self {
        Self::try_new(text).expect("token text must be non-empty")
    }

    pub fn try_new(text: impl Into<String>) -> Result<Self, String> {
        let text = text.into();
        if text.is_empty() {
            Err("token text must be non-empty".to_owned())
        } else {
            Ok(Self(text))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Token {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Self::try_new(value)
    }
}

impl From<Token> for String {
    fn from(token: Token) -> Self {
        token.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite token sequence. The empty word is ε and serializes as `[]`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Token>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(tokens: Vec<Token>) -> Self {
        Self(tokens)
    }

    /// One token per character, for single-character alphabets: `"ab"` is `a·b`.
    pub fn from_symbols(symbols: &str) -> Self {
        Self(symbols.chars().map(|c| Token::new(c.to_string())).collect())
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self · event`
    pub fn then(&self, event: &Token) -> Self {
        let mut tokens = self.0.clone();
        tokens.push(event.clone());
        Self(tokens)
    }

    /// Concatenated token text; ε joins to the empty string.
    pub fn joined(&self) -> String {
        self.0.iter().map(Token::as_str).collect()
    }
}

impl FromIterator<Token> for Word {
    fn from_iter<I: IntoIterator<Item = Token>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.joined())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// What one agent sees of a string: a projected word, or an opaque table label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Observation {
    Word(Word),
    Label(String),
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observation::Word(w) => w.fmt(f),
            Observation::Label(l) => f.write_str(l),
        }
    }
}

impl fmt::Debug for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observation::Word(w) => write!(f, "{w:?}"),
            Observation::Label(l) => write!(f, "Label({l:?})"),
        }
    }
}
