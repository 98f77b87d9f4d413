//! Minimal s-expressions: lists, bare symbols and double-quoted strings
//! with `\"` and `\\` escapes. `;` comments run to end of line.

use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Sym(String),
    Str(String),
    List(Vec<Sexp>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("s-expression error at byte {pos}: {msg}")]
pub struct SexpError {
    pub pos: usize,
    pub msg: String,
}

pub fn parse_all(text: &str) -> Result<Vec<Sexp>, SexpError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        skip_ws(bytes, &mut pos);
        if pos >= bytes.len() {
            return Ok(out);
        }
        out.push(parse_one(text, &mut pos)?);
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() {
        match bytes[*pos] {
            b';' => {
                while *pos < bytes.len() && bytes[*pos] != b'\n' {
                    *pos += 1;
                }
            }
            c if c.is_ascii_whitespace() => *pos += 1,
            _ => return,
        }
    }
}

fn parse_one(text: &str, pos: &mut usize) -> Result<Sexp, SexpError> {
    let bytes = text.as_bytes();
    let err = |pos: usize, msg: &str| SexpError {
        pos,
        msg: msg.to_string(),
    };
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        None => Err(err(*pos, "unexpected end of input")),
        Some(b')') => Err(err(*pos, "unbalanced `)`")),
        Some(b'(') => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    None => return Err(err(*pos, "unclosed `(`")),
                    Some(b')') => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    _ => items.push(parse_one(text, pos)?),
                }
            }
        }
        Some(b'"') => {
            let start = *pos;
            *pos += 1;
            let mut s = String::new();
            let mut chars = text[*pos..].char_indices();
            while let Some((i, c)) = chars.next() {
                match c {
                    '"' => {
                        *pos += i + 1;
                        return Ok(Sexp::Str(s));
                    }
                    '\\' => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => s.push(e),
                        Some((_, 'n')) => s.push('\n'),
                        _ => return Err(err(*pos + i, "bad escape")),
                    },
                    c => s.push(c),
                }
            }
            Err(err(start, "unterminated string"))
        }
        Some(_) => {
            let start = *pos;
            while *pos < bytes.len()
                && !bytes[*pos].is_ascii_whitespace()
                && !b"()\";".contains(&bytes[*pos])
            {
                *pos += 1;
            }
            Ok(Sexp::Sym(text[start..*pos].to_string()))
        }
    }
}

pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Writes `(head items...)` on one line if short, else one item per line.
pub fn write_pretty(e: &Sexp, indent: usize, out: &mut String) {
    let flat = flat(e);
    if flat.len() + indent <= 100 || !matches!(e, Sexp::List(_)) {
        out.push_str(&flat);
        return;
    }
    let Sexp::List(items) = e else { unreachable!() };
    out.push('(');
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
            out.push_str(&" ".repeat(indent + 2));
        }
        write_pretty(it, indent + 2, out);
    }
    out.push(')');
}

fn flat(e: &Sexp) -> String {
    match e {
        Sexp::Sym(s) => s.clone(),
        Sexp::Str(s) => quote(s),
        Sexp::List(items) => {
            let mut out = String::from("(");
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", flat(it));
            }
            out.push(')');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"(Hyp "P(a0) |- P(a0)" (formula "say \"hi\" \\ ok")) ; trailing
                      (x)"#;
        let es = parse_all(text).unwrap();
        assert_eq!(es.len(), 2);
        let Sexp::List(items) = &es[0] else { panic!() };
        assert_eq!(items[0], Sexp::Sym("Hyp".into()));
        let Sexp::List(w) = &items[2] else { panic!() };
        assert_eq!(w[1], Sexp::Str("say \"hi\" \\ ok".into()));
        let mut out = String::new();
        write_pretty(&es[0], 0, &mut out);
        assert_eq!(parse_all(&out).unwrap()[0], es[0]);
    }

    #[test]
    fn errors() {
        assert!(parse_all("(a").is_err());
        assert!(parse_all(")").is_err());
        assert!(parse_all("\"abc").is_err());
    }
}
