//! Tokens of the workspace language.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tok {
    /// Identifier, possibly carrying attached subset braces such as `f^{1,2}` or `assoc_{1}`.
    Name(String),
    Int(String),
    Punct(&'static str),
    Eof,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

impl Token {
    pub fn text(&self) -> String {
        match &self.tok {
            Tok::Name(s) | Tok::Int(s) => s.clone(),
            Tok::Punct(p) => p.to_string(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const PUNCT: &[&str] = &[
    "|->", "->", "|", "{", "}", "(", ")", "[", "]", ",", ";", ":", "=", "+", "-", "*", "/", "<", ">",
];

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Length of an attached `{1,2}` or `^{1,2}` group at the start of `s`, if any.
fn subset_group(s: &[char]) -> Option<usize> {
    let start = match s.first() {
        Some('^') if s.get(1) == Some(&'{') => 2,
        Some('{') => 1,
        _ => return None,
    };
    let mut k = start;
    while k < s.len() && (s[k].is_ascii_digit() || s[k] == ',') {
        k += 1;
    }
    (k > start && s.get(k) == Some(&'}')).then_some(k + 1)
}

pub fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |n: usize, i: &mut usize, col: &mut usize| {
        *i += n;
        *col += n;
    };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (l0, c0) = (line, col);
        if is_name_start(c) {
            let mut j = i;
            loop {
                if j < chars.len() && is_name_char(chars[j]) {
                    j += 1;
                } else if let Some(n) = subset_group(&chars[j..]) {
                    j += n;
                } else {
                    break;
                }
            }
            let s: String = chars[i..j].iter().collect();
            out.push(Token { tok: Tok::Name(s), line: l0, col: c0 });
            advance(j - i, &mut i, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            out.push(Token { tok: Tok::Int(s), line: l0, col: c0 });
            advance(j - i, &mut i, &mut col);
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match PUNCT.iter().find(|p| rest.starts_with(*p)) {
            Some(p) => {
                out.push(Token { tok: Tok::Punct(p), line: l0, col: c0 });
                advance(p.len(), &mut i, &mut col);
            }
            None => {
                return Err(Error::Parse {
                    line,
                    col,
                    token: c.to_string(),
                    msg: "unexpected character".into(),
                })
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}
