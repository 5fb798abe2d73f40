use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Lower-case identifier or digit string.
    Name(String),
    Var(String),
    Str(String),
    Neck,
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const PUNCT: &str = "()[]{},|./=+*";

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, msg: String| Error::Syntax { line, col, msg };

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tl, tc) = (line, col);
        let start = i;
        if c.is_ascii_alphanumeric() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            if i < chars.len() && chars[i] == '\'' {
                return Err(err(
                    line,
                    col,
                    format!("`{word}'`: names ending in a prime are reserved"),
                ));
            }
            let first = word.chars().next().unwrap_or('_');
            let tok = if first.is_ascii_uppercase() || first == '_' {
                Tok::Var(word)
            } else if first.is_ascii_digit() && !word.chars().all(|c| c.is_ascii_digit()) {
                return Err(err(tl, tc, format!("malformed number `{word}`")));
            } else {
                Tok::Name(word)
            };
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            });
            continue;
        }
        if c == '"' {
            i += 1;
            col += 1;
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(err(tl, tc, "unterminated string".into())),
                    Some('"') => {
                        i += 1;
                        col += 1;
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                        col += 1;
                    }
                }
            }
            out.push(Token {
                tok: Tok::Str(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c == ':' && chars.get(i + 1) == Some(&'-') {
            i += 2;
            col += 2;
            out.push(Token {
                tok: Tok::Neck,
                line: tl,
                col: tc,
            });
            continue;
        }
        if PUNCT.contains(c) {
            i += 1;
            col += 1;
            out.push(Token {
                tok: Tok::Punct(c),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c == '\'' {
            return Err(err(
                tl,
                tc,
                "quoted atoms and primes are not supported".into(),
            ));
        }
        return Err(err(tl, tc, format!("unexpected character `{c}`")));
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}
