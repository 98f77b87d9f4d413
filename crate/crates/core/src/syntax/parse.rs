use std::collections::{BTreeMap, HashMap};

use super::{Formula, Signature, SignatureError, Term};
use crate::nominal::{Atom, AtomSet};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character `{found}` at {pos}")]
    Lex { pos: usize, found: char },
    #[error("expected {expected} at {pos}, found {found}")]
    Expected {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("`{name}` at {pos} expects {expected} arguments, got {found}")]
    Arity {
        pos: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("signature line {line}: {msg}")]
    Signature { line: usize, msg: String },
}

/// How the parser treats symbols: checked against a fixed signature, or
/// recorded into a signature being inferred from the input.
pub enum SigMode<'a> {
    Fixed(&'a Signature),
    Infer(&'a mut Signature),
}

impl SigMode<'_> {
    fn sig(&self) -> &Signature {
        match self {
            SigMode::Fixed(s) => s,
            SigMode::Infer(s) => s,
        }
    }
}

/// Maps surface identifiers to atoms and back.
///
/// Identifiers of the form `a<digits>` denote that atom index directly.
/// Any other atom identifier gets the lowest index not already claimed by a
/// name or by an `aN` literal seen in the input.
#[derive(Clone, Debug, Default)]
pub struct AtomNames {
    by_name: HashMap<String, Atom>,
    by_atom: BTreeMap<Atom, String>,
    reserved: AtomSet,
}

fn literal_index(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('a')?;
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
        return None;
    }
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

impl AtomNames {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom(&mut self, name: &str) -> Atom {
        if let Some(i) = literal_index(name) {
            self.reserved.insert(Atom(i));
            return Atom(i);
        }
        if let Some(&a) = self.by_name.get(name) {
            return a;
        }
        let mut taken = self.reserved.clone();
        taken.extend(self.by_atom.keys().copied());
        let a = crate::nominal::fresh(&taken);
        self.by_name.insert(name.to_string(), a);
        self.by_atom.insert(a, name.to_string());
        a
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        literal_index(name)
            .map(Atom)
            .or_else(|| self.by_name.get(name).copied())
    }

    pub fn name_of(&self, a: Atom) -> String {
        self.by_atom
            .get(&a)
            .cloned()
            .unwrap_or_else(|| a.to_string())
    }

    fn reserve_literals(&mut self, toks: &[(usize, Tok)]) {
        for (_, t) in toks {
            if let Tok::Ident(s) = t {
                if let Some(i) = literal_index(s) {
                    self.reserved.insert(Atom(i));
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Not,
    Imp,
    Iff,
    Eq,
    Turnstile,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Not => "`~`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &str| text[i..].starts_with(s);
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        } else if two("/\\") {
            i += 2;
            Tok::And
        } else if two("\\/") {
            i += 2;
            Tok::Or
        } else if two("<->") {
            i += 3;
            Tok::Iff
        } else if two("->") {
            i += 2;
            Tok::Imp
        } else if two("|-") {
            i += 2;
            Tok::Turnstile
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b'.' => Tok::Dot,
                b'~' => Tok::Not,
                b'=' => Tok::Eq,
                _ => {
                    let found = text[start..].chars().next().unwrap_or('?');
                    return Err(ParseError::Lex { pos: start, found });
                }
            }
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "forall" | "bottom" | "top")
}

fn is_atom_name(s: &str) -> bool {
    s.as_bytes().first().is_some_and(|c| c.is_ascii_lowercase()) && !is_keyword(s)
}

struct Parser<'a, 'n> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    mode: SigMode<'a>,
    names: &'n mut AtomNames,
}

impl Parser<'_, '_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&want.describe()))
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Expected {
            pos: self.offset(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::Ident(s) if s == "forall" => {
                self.bump();
                let pos = self.offset();
                let a = match self.bump() {
                    Tok::Ident(name) if is_atom_name(&name) && !self.mode.sig().contains(&name) => {
                        self.names.atom(&name)
                    }
                    other => {
                        return Err(ParseError::Expected {
                            pos,
                            expected: "a bound atom".into(),
                            found: other.describe(),
                        })
                    }
                };
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(Formula::all(a, body))
            }
            _ => self.atomic(),
        }
    }

    fn is_predicate(&self, name: &str) -> bool {
        let sig = self.mode.sig();
        if sig.predicate_arity(name).is_some() {
            return true;
        }
        match &self.mode {
            SigMode::Fixed(_) => false,
            SigMode::Infer(s) => {
                s.function_arity(name).is_none()
                    && (*self.peek_at(1) == Tok::LParen
                        || name
                            .as_bytes()
                            .first()
                            .is_some_and(|c| c.is_ascii_uppercase()))
            }
        }
    }

    fn atomic(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "bottom" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(s) if s == "top" => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Ident(name) if self.is_predicate(&name) => {
                let pos = self.offset();
                self.bump();
                let args = self.args()?;
                self.check_arity(pos, &name, args.len(), true)?;
                Ok(Formula::pred(&name, args))
            }
            Tok::Ident(_) => {
                let l = self.term()?;
                self.expect(Tok::Eq)?;
                let r = self.term()?;
                Ok(Formula::eq(l, r))
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if *self.peek() != Tok::LParen {
            return Ok(args);
        }
        self.bump();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    break;
                }
                _ => return Err(self.error("`,` or `)`")),
            }
        }
        Ok(args)
    }

    fn check_arity(
        &mut self,
        pos: usize,
        name: &str,
        found: usize,
        predicate: bool,
    ) -> Result<(), ParseError> {
        let known = if predicate {
            self.mode.sig().predicate_arity(name)
        } else {
            self.mode.sig().function_arity(name)
        };
        match known {
            Some(n) if n == found => Ok(()),
            Some(n) => Err(ParseError::Arity {
                pos,
                name: name.to_string(),
                expected: n,
                found,
            }),
            None => match &mut self.mode {
                SigMode::Infer(sig) => {
                    let r = if predicate {
                        sig.add_predicate(name, found)
                    } else {
                        sig.add_function(name, found)
                    };
                    r.map_err(|e| match e {
                        SignatureError::Duplicate(_) => ParseError::Expected {
                            pos,
                            expected: format!("`{name}` used consistently as one kind of symbol"),
                            found: "conflicting use".into(),
                        },
                        _ => ParseError::UnknownSymbol {
                            pos,
                            name: name.to_string(),
                        },
                    })
                }
                SigMode::Fixed(_) => Err(ParseError::UnknownSymbol {
                    pos,
                    name: name.to_string(),
                }),
            },
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.offset();
        let name = match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => s,
            _ => return Err(self.error("a term")),
        };
        let sig = self.mode.sig();
        let is_fun = sig.function_arity(&name).is_some()
            || (matches!(self.mode, SigMode::Infer(_))
                && sig.predicate_arity(&name).is_none()
                && *self.peek_at(1) == Tok::LParen);
        if is_fun {
            self.bump();
            let args = self.args()?;
            self.check_arity(pos, &name, args.len(), false)?;
            return Ok(Term::app(&name, args));
        }
        if is_atom_name(&name) && !sig.contains(&name) {
            self.bump();
            return Ok(Term::Var(self.names.atom(&name)));
        }
        Err(ParseError::UnknownSymbol { pos, name })
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

fn parser<'a, 'n>(
    text: &str,
    mode: SigMode<'a>,
    names: &'n mut AtomNames,
) -> Result<Parser<'a, 'n>, ParseError> {
    let toks = lex(text)?;
    names.reserve_literals(&toks);
    Ok(Parser {
        toks,
        pos: 0,
        mode,
        names,
    })
}

/// Parses a formula against a fixed signature. Atom identifiers other than
/// `aN` are numbered in order of first appearance.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse_formula_with(text, SigMode::Fixed(sig), &mut AtomNames::new())
}

pub fn parse_formula_with(
    text: &str,
    mode: SigMode<'_>,
    names: &mut AtomNames,
) -> Result<Formula, ParseError> {
    let mut p = parser(text, mode, names)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a formula, recording every symbol it uses into `sig`.
pub fn parse_formula_inferring(
    text: &str,
    sig: &mut Signature,
    names: &mut AtomNames,
) -> Result<Formula, ParseError> {
    parse_formula_with(text, SigMode::Infer(sig), names)
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    parse_term_with(text, SigMode::Fixed(sig), &mut AtomNames::new())
}

pub fn parse_term_with(
    text: &str,
    mode: SigMode<'_>,
    names: &mut AtomNames,
) -> Result<Term, ParseError> {
    let mut p = parser(text, mode, names)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `φ1, ..., φn |- ψ1, ..., ψm`; either side may be empty.
pub fn parse_sequent_sides(
    text: &str,
    mode: SigMode<'_>,
    names: &mut AtomNames,
) -> Result<(Vec<Formula>, Vec<Formula>), ParseError> {
    let mut p = parser(text, mode, names)?;
    let mut left = Vec::new();
    if *p.peek() != Tok::Turnstile {
        loop {
            left.push(p.formula()?);
            if *p.peek() == Tok::Comma {
                p.bump();
            } else {
                break;
            }
        }
    }
    p.expect(Tok::Turnstile)?;
    let mut right = Vec::new();
    if *p.peek() != Tok::End {
        loop {
            right.push(p.formula()?);
            if *p.peek() == Tok::Comma {
                p.bump();
            } else {
                break;
            }
        }
    }
    p.finish()?;
    Ok((left, right))
}

/// Reads `fun name arity` / `pred name arity` lines; `#` starts a comment.
pub fn parse_signature(text: &str) -> Result<Signature, ParseError> {
    let mut sig = Signature::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ParseError::Signature { line: i + 1, msg };
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [kind, name, arity] = parts.as_slice() else {
            return Err(err(format!("expected `fun|pred NAME ARITY`, got `{line}`")));
        };
        let valid_name = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !is_keyword(name)
            && literal_index(name).is_none();
        if !valid_name {
            return Err(err(format!("invalid symbol name `{name}`")));
        }
        let arity: usize = arity
            .parse()
            .map_err(|_| err(format!("invalid arity `{arity}`")))?;
        let r = match *kind {
            "fun" => sig.add_function(name, arity),
            "pred" => sig.add_predicate(name, arity),
            other => return Err(err(format!("unknown declaration `{other}`"))),
        };
        r.map_err(|e| err(e.to_string()))?;
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    fn sig() -> Signature {
        Signature::new()
            .with_function("f", 1)
            .with_function("g", 2)
            .with_function("c", 0)
            .with_predicate("P", 1)
            .with_predicate("Q", 1)
            .with_predicate("R", 2)
    }

    #[test]
    fn forall_binds_weakest() {
        let phi = parse_formula("forall a. P(a) /\\ Q(b)", &sig()).unwrap();
        let (a, b) = (Atom(0), Atom(1));
        let want = Formula::all(
            a,
            Formula::and(
                Formula::pred("P", vec![Term::Var(a)]),
                Formula::pred("Q", vec![Term::Var(b)]),
            ),
        );
        assert_eq!(phi, want);
    }

    #[test]
    fn negated_equality() {
        let phi = parse_formula("~ (x = y)", &sig()).unwrap();
        assert_eq!(
            phi,
            Formula::neg(Formula::eq(Term::Var(Atom(0)), Term::Var(Atom(1))))
        );
    }

    #[test]
    fn application_with_arity() {
        let s = Signature::new()
            .with_function("f", 1)
            .with_predicate("P", 2);
        let phi = parse_formula("P(f(a), b)", &s).unwrap();
        assert_eq!(
            phi,
            Formula::pred(
                "P",
                vec![Term::app("f", vec![Term::Var(Atom(0))]), Term::Var(Atom(1))]
            )
        );
    }

    #[test]
    fn literal_atoms_are_reserved() {
        let phi = parse_formula("R(x, a0)", &sig()).unwrap();
        assert_eq!(
            phi,
            Formula::pred("R", vec![Term::Var(Atom(1)), Term::Var(Atom(0))])
        );
    }

    #[test]
    fn precedence_and_sugar() {
        let s = sig();
        let x = parse_formula("P(a) /\\ Q(a) \\/ ~P(a) -> Q(a) <-> top", &s).unwrap();
        let pa = Formula::pred("P", vec![Term::Var(Atom(0))]);
        let qa = Formula::pred("Q", vec![Term::Var(Atom(0))]);
        let want = Formula::iff(
            Formula::imp(
                Formula::or(Formula::and(pa.clone(), qa.clone()), Formula::neg(pa)),
                qa,
            ),
            Formula::top(),
        );
        assert_eq!(x, want);
    }

    #[test]
    fn errors_carry_positions() {
        let s = sig();
        assert!(matches!(
            parse_formula("P(a, b)", &s),
            Err(ParseError::Arity { pos: 0, .. })
        ));
        assert!(matches!(
            parse_formula("S(a)", &s),
            Err(ParseError::UnknownSymbol { .. })
        ));
        assert!(matches!(
            parse_formula("P(a) $", &s),
            Err(ParseError::Lex { pos: 5, .. })
        ));
        assert!(matches!(
            parse_formula("P(a) /\\", &s),
            Err(ParseError::Expected { .. })
        ));
    }

    #[test]
    fn pretty_round_trip() {
        let s = sig();
        for text in [
            "forall a. P(a) \\/ ~P(a)",
            "~(x = f(y)) /\\ R(c, g(x, c))",
            "(P(a) -> Q(a)) -> P(a)",
            "forall x. forall y. R(x, y) <-> R(y, x)",
            "~(forall a. P(a)) /\\ top",
            "bottom \\/ (P(a) /\\ Q(b))",
        ] {
            let phi = parse_formula(text, &s).unwrap();
            let printed = phi.to_string();
            let back = parse_formula(&printed, &s).unwrap();
            assert!(alpha_eq(&phi, &back), "{text} -> {printed}");
            assert_eq!(phi, back);
        }
    }

    #[test]
    fn inference_records_symbols() {
        let mut s = Signature::new();
        let mut names = AtomNames::new();
        parse_formula_inferring("forall a. P(a) \\/ ~ P(f(a, c()))", &mut s, &mut names).unwrap();
        assert_eq!(s.predicate_arity("P"), Some(1));
        assert_eq!(s.function_arity("f"), Some(2));
        assert_eq!(s.function_arity("c"), Some(0));
        assert!(parse_formula_inferring("P(a, b)", &mut s, &mut names).is_err());
    }

    #[test]
    fn sequents_and_signatures() {
        let s = sig();
        let mut names = AtomNames::new();
        let (l, r) =
            parse_sequent_sides("P(a), R(a, f(b)) |- Q(b)", SigMode::Fixed(&s), &mut names)
                .unwrap();
        assert_eq!((l.len(), r.len()), (2, 1));
        let (l, r) = parse_sequent_sides("|-", SigMode::Fixed(&s), &mut names).unwrap();
        assert!(l.is_empty() && r.is_empty());

        let parsed = parse_signature("# demo\nfun f 1\npred P 2 # binary\n\nfun c 0\n").unwrap();
        assert_eq!(parsed.function_arity("f"), Some(1));
        assert_eq!(parsed.predicate_arity("P"), Some(2));
        assert!(parse_signature("fun f").is_err());
        assert!(parse_signature("fun f 1\npred f 1").is_err());
        assert!(parse_signature("rel f 1").is_err());
    }
}
