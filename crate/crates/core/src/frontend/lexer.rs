use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `?name`, stored with the question mark.
    Var(String),
    Str(String),
    Int(u32),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    Caret,
    Tilde,
    Amp,
    Bar,
    Bang,
    Eq,
    Neq,
    Sub,
    Equiv,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Var(s) => format!("variable `{s}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Int(n) => format!("number {n}"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Caret => "^",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Bang => "!",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::Sub => "<=",
            Tok::Equiv => "==",
            Tok::Newline => "newline",
            Tok::Eof => "end of input",
            Tok::Ident(_) => "identifier",
            Tok::Var(_) => "variable",
            Tok::Str(_) => "string",
            Tok::Int(_) => "number",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

/// Tokens of `text`. Newlines are significant only outside brackets.
pub fn lex(text: &str) -> Result<Vec<Token>, LexError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let (mut line, mut col) = (1u32, 1u32);
    let mut depth = 0i32;
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let advance = |n: usize, i: &mut usize, col: &mut u32| {
            *i += n;
            *col += n as u32;
        };
        match c {
            '\n' => {
                if depth == 0 {
                    out.push(Token {
                        tok: Tok::Newline,
                        span,
                    });
                }
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => advance(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '"' => {
                let mut s = String::new();
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None | Some('\n') => {
                            return Err(LexError {
                                span,
                                message: "unterminated string".into(),
                            })
                        }
                        Some('\\') => {
                            match chars.get(j + 1) {
                                Some(e @ ('"' | '\\')) => s.push(*e),
                                _ => {
                                    return Err(LexError {
                                        span,
                                        message: "bad escape in string".into(),
                                    })
                                }
                            }
                            j += 2;
                        }
                        Some('"') => {
                            j += 1;
                            break;
                        }
                        Some(ch) => {
                            s.push(*ch);
                            j += 1;
                        }
                    }
                }
                out.push(Token {
                    tok: Tok::Str(s),
                    span,
                });
                advance(j - i, &mut i, &mut col);
            }
            '?' => {
                let mut j = i + 1;
                while j < chars.len() && is_ident(chars[j]) {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(LexError {
                        span,
                        message: "expected a variable name after `?`".into(),
                    });
                }
                let s: String = chars[i..j].iter().collect();
                out.push(Token {
                    tok: Tok::Var(s),
                    span,
                });
                advance(j - i, &mut i, &mut col);
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                let n = s.parse::<u32>().map_err(|_| LexError {
                    span,
                    message: format!("number {s} is too large"),
                })?;
                out.push(Token {
                    tok: Tok::Int(n),
                    span,
                });
                advance(j - i, &mut i, &mut col);
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident(chars[j]) {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(s),
                    span,
                });
                advance(j - i, &mut i, &mut col);
            }
            _ => {
                let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
                let (tok, n) = match two.as_str() {
                    "!=" => (Tok::Neq, 2),
                    "<=" => (Tok::Sub, 2),
                    "==" => (Tok::Equiv, 2),
                    _ => {
                        let t = match c {
                            '(' => Tok::LParen,
                            ')' => Tok::RParen,
                            '{' => Tok::LBrace,
                            '}' => Tok::RBrace,
                            '[' => Tok::LBracket,
                            ']' => Tok::RBracket,
                            ',' => Tok::Comma,
                            ';' => Tok::Semi,
                            ':' => Tok::Colon,
                            '.' => Tok::Dot,
                            '^' => Tok::Caret,
                            '~' => Tok::Tilde,
                            '&' => Tok::Amp,
                            '|' => Tok::Bar,
                            '!' => Tok::Bang,
                            '=' => Tok::Eq,
                            _ => {
                                return Err(LexError {
                                    span,
                                    message: format!("unexpected character {c:?}"),
                                })
                            }
                        };
                        (t, 1)
                    }
                };
                match tok {
                    Tok::LParen | Tok::LBrace | Tok::LBracket => depth += 1,
                    Tok::RParen | Tok::RBrace | Tok::RBracket => depth -= 1,
                    _ => {}
                }
                out.push(Token { tok, span });
                advance(n, &mut i, &mut col);
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
    });
    Ok(out)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}
