use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Sym(&'static str),
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: [&str; 17] = [
    "==", "<=", ">=", "(", ")", "[", "]", ",", ";", "=", "/", "*", "+", "-", "^", "<", ">",
];

/// Newlines inside brackets are dropped so calls may span lines.
pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start, mut depth) = (0usize, 1usize, 0usize, 0usize);
    while i < b.len() {
        let c = b[i];
        let col = src[line_start..i].chars().count() + 1;
        match c {
            b'\n' => {
                if depth == 0 {
                    out.push(Token {
                        tok: Tok::Newline,
                        start: i,
                        end: i + 1,
                        line,
                        col,
                    });
                }
                i += 1;
                line += 1;
                line_start = i;
            }
            b' ' | b'\t' | b'\r' => i += 1,
            b'#' => {
                while i < b.len() && b[i] != b'\n' {
                    i += 1;
                }
            }
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                let s = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(src[s..i].to_string()),
                    start: s,
                    end: i,
                    line,
                    col,
                });
            }
            _ if c.is_ascii_digit() => {
                let s = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Int(src[s..i].to_string()),
                    start: s,
                    end: i,
                    line,
                    col,
                });
            }
            _ => {
                let sym = SYMBOLS
                    .iter()
                    .find(|s| b[i..].starts_with(s.as_bytes()))
                    .ok_or_else(|| {
                        let ch = src[i..].chars().next().unwrap_or('?');
                        ParseError::new(line, col, format!("unexpected character `{ch}`"), vec![])
                    })?;
                match *sym {
                    "(" | "[" => depth += 1,
                    ")" | "]" => depth = depth.saturating_sub(1),
                    _ => {}
                }
                out.push(Token {
                    tok: Tok::Sym(sym),
                    start: i,
                    end: i + sym.len(),
                    line,
                    col,
                });
                i += sym.len();
            }
        }
    }
    let col = src[line_start..].chars().count() + 1;
    out.push(Token {
        tok: Tok::Eof,
        start: b.len(),
        end: b.len(),
        line,
        col,
    });
    Ok(out)
}
