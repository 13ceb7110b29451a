use super::{ParseDiagnostic, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TokenKind {
    /// Letters, digits, `_`, and inner `-` joining letter-led parts
    /// (`similarity-all`). Identifiers are words without `-`.
    Word(String),
    Str(String),
    Int(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    DashDash,
    Newline,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Word(w) => format!("`{w}`"),
            TokenKind::Str(_) => "string".to_owned(),
            TokenKind::Int(i) => format!("integer `{i}`"),
            TokenKind::LBrace => "`{`".to_owned(),
            TokenKind::RBrace => "`}`".to_owned(),
            TokenKind::LBracket => "`[`".to_owned(),
            TokenKind::RBracket => "`]`".to_owned(),
            TokenKind::Comma => "`,`".to_owned(),
            TokenKind::DashDash => "`--`".to_owned(),
            TokenKind::Newline => "end of line".to_owned(),
            TokenKind::Eof => "end of input".to_owned(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn second(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }
}

/// Splits the source into tokens. Lexical errors are reported and the
/// offending characters skipped, so the token stream always ends in `Eof`.
pub(crate) fn tokenize(source: &str) -> (Vec<Token>, Vec<ParseDiagnostic>) {
    let source = source.strip_prefix('\u{feff}').unwrap_or(source);
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    let mut diags = Vec::new();

    loop {
        let (line, column) = (cur.line, cur.column);
        let span = |len: usize| SourceSpan::new(line, column, len);
        let Some(c) = cur.peek() else {
            tokens.push(Token {
                kind: TokenKind::Eof,
                span: span(0),
            });
            break;
        };
        match c {
            '\n' => {
                cur.bump();
                tokens.push(Token {
                    kind: TokenKind::Newline,
                    span: span(1),
                });
            }
            ' ' | '\t' | '\r' => {
                cur.bump();
            }
            '#' => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
            }
            '{' | '}' | '[' | ']' | ',' => {
                cur.bump();
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    _ => TokenKind::Comma,
                };
                tokens.push(Token {
                    kind,
                    span: span(1),
                });
            }
            '-' => {
                cur.bump();
                if cur.peek() == Some('-') {
                    cur.bump();
                    tokens.push(Token {
                        kind: TokenKind::DashDash,
                        span: span(2),
                    });
                } else {
                    diags.push(ParseDiagnostic::error(
                        span(1),
                        "unexpected character `-` (interfaces use `--`)",
                    ));
                }
            }
            '"' => {
                cur.bump();
                let mut text = String::new();
                let mut len = 1;
                let mut closed = false;
                while let Some(c) = cur.peek() {
                    if c == '\n' || c == '\r' {
                        break;
                    }
                    cur.bump();
                    len += 1;
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => {
                            let esc_col = cur.column - 1;
                            match cur.peek() {
                                Some(e @ ('"' | '\\' | 'n' | 't' | 'r')) => {
                                    cur.bump();
                                    len += 1;
                                    text.push(match e {
                                        'n' => '\n',
                                        't' => '\t',
                                        'r' => '\r',
                                        other => other,
                                    });
                                }
                                _ => diags.push(ParseDiagnostic::error(
                                    SourceSpan::new(line, esc_col, 1),
                                    "invalid escape sequence in string",
                                )),
                            }
                        }
                        other => text.push(other),
                    }
                }
                if !closed {
                    diags.push(ParseDiagnostic::error(span(len), "unterminated string"));
                }
                tokens.push(Token {
                    kind: TokenKind::Str(text),
                    span: span(len),
                });
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                    cur.bump();
                    digits.push(d);
                }
                let len = digits.len();
                tokens.push(Token {
                    kind: TokenKind::Int(digits),
                    span: span(len),
                });
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                loop {
                    while let Some(w) = cur
                        .peek()
                        .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
                    {
                        cur.bump();
                        word.push(w);
                    }
                    if cur.peek() == Some('-')
                        && cur.second().is_some_and(|c| c.is_ascii_alphabetic())
                    {
                        cur.bump();
                        word.push('-');
                    } else {
                        break;
                    }
                }
                let len = word.chars().count();
                tokens.push(Token {
                    kind: TokenKind::Word(word),
                    span: span(len),
                });
            }
            other => {
                cur.bump();
                diags.push(ParseDiagnostic::error(
                    span(1),
                    format!("illegal character `{}`", other.escape_debug()),
                ));
            }
        }
    }
    (tokens, diags)
}
