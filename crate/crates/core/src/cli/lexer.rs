use num_bigint::BigInt;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(BigInt),
    /// The tensor separator `(x)`.
    Tensor,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Comma,
    Semi,
    Colon,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eq,
    Newline,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Tensor => "`(x)`".into(),
            Tok::Newline => "end of line".into(),
            other => {
                let s = match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Lt => "<",
                    Tok::Gt => ">",
                    Tok::Comma => ",",
                    Tok::Semi => ";",
                    Tok::Colon => ":",
                    Tok::Arrow => "->",
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Star => "*",
                    Tok::Slash => "/",
                    Tok::Caret => "^",
                    _ => "=",
                };
                format!("`{s}`")
            }
        }
    }
}

/// A token with its one-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Tokenizes one line. `col0` is the one-based column of the first character of `text`.
pub fn lex_line(text: &str, line: usize, col0: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line, col });
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c == '(' && chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') {
            push(&mut out, Tok::Tensor);
            i += 3;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            push(&mut out, Tok::Arrow);
            i += 2;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            push(&mut out, Tok::Num(s.parse().expect("digits")));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '=' => Tok::Eq,
            _ => return Err(ParseError::new(line, col, format!("unexpected character `{c}`"))),
        };
        push(&mut out, tok);
        i += 1;
    }
    Ok(out)
}
