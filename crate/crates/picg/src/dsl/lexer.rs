//! Tokenizer for model files: whitespace-separated words, brace/bracket
//! punctuation, `#` comments to end of line. Every token carries its
//! 1-based line and column.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Word(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
}

impl std::fmt::Display for TokenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TokenKind::Word(w) => write!(f, "`{w}`"),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(src: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for (line_index, line) in src.lines().enumerate() {
        let line_no = line_index + 1;
        let mut word_start: Option<usize> = None;
        let flush = |tokens: &mut Vec<Token>, start: &mut Option<usize>, end: usize, line: &str| {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    kind: TokenKind::Word(line[s..end].to_string()),
                    line: line_no,
                    col: line[..s].chars().count() + 1,
                });
            }
        };
        let mut comment = false;
        for (byte, ch) in line.char_indices() {
            if comment {
                break;
            }
            match ch {
                '#' => {
                    flush(&mut tokens, &mut word_start, byte, line);
                    comment = true;
                }
                c if c.is_whitespace() => flush(&mut tokens, &mut word_start, byte, line),
                '{' | '}' | '[' | ']' => {
                    flush(&mut tokens, &mut word_start, byte, line);
                    let kind = match ch {
                        '{' => TokenKind::LBrace,
                        '}' => TokenKind::RBrace,
                        '[' => TokenKind::LBracket,
                        _ => TokenKind::RBracket,
                    };
                    tokens.push(Token {
                        kind,
                        line: line_no,
                        col: line[..byte].chars().count() + 1,
                    });
                }
                _ => {
                    if word_start.is_none() {
                        word_start = Some(byte);
                    }
                }
            }
        }
        if !comment {
            flush(&mut tokens, &mut word_start, line.len(), line);
        }
    }
    tokens
}
