use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    Float(f64),
    Sym(char),
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

impl Token {
    pub fn describe(&self) -> String {
        match &self.tok {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Float(v) => format!("number `{v}`"),
            Tok::Sym(c) => format!("`{c}`"),
        }
    }
}

const SYMBOLS: &str = "+-*^/(){}[],;:=";

/// Splits text into tokens; `#` starts a comment running to end of line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
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
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start_col = col;
        if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - s;
            out.push(Token {
                tok: Tok::Ident(chars[s..i].iter().collect()),
                line,
                col: start_col,
            });
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let s = i;
            let mut is_float = false;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                is_float = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    is_float = true;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[s..i].iter().collect();
            col += i - s;
            let tok = if is_float {
                Tok::Float(text.parse().map_err(|_| Error::Parse {
                    line,
                    col: start_col,
                    message: format!("malformed number `{text}`"),
                })?)
            } else {
                Tok::Int(text)
            };
            out.push(Token {
                tok,
                line,
                col: start_col,
            });
            continue;
        }
        if SYMBOLS.contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Parse {
            line,
            col,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_positions() {
        let t = tokenize("rmin=1e1;\n  x^2 # comment\n3/4").unwrap();
        assert_eq!(t[2].tok, Tok::Float(10.0));
        assert_eq!((t[4].line, t[4].col), (2, 3));
        assert_eq!(t[7].tok, Tok::Int("3".into()));
        assert_eq!(t.len(), 10);
    }

    #[test]
    fn bad_character() {
        let e = tokenize("x + $").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 5, .. }));
    }
}
