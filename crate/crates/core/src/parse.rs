//! Surface syntax.
//!
//! ```text
//! def <name> : <type> := <term>
//!
//! type ::= (x : A) -> B | A -> B | U i | Bool i | El t | Lift A | (A)
//! term ::= fun x y => t | t u | x | true i | false i | lift t | unlift t
//!        | code A | elimB i j (x. P) t f b | (t)
//! ```
//!
//! Names are resolved to de Bruijn indices while parsing. A name that is not
//! bound locally refers to an earlier definition, whose (closed) body is
//! inlined. Comments run from `--` to the end of the line.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{Level, Tm, Ty};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// A parsed definition. `ty` and `body` are closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub ty: Ty,
    pub body: Tm,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    Colon,
    Define,
    Arrow,
    FatArrow,
    Dot,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Define => f.write_str("`:=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::FatArrow => f.write_str("`=>`"),
            Tok::Dot => f.write_str("`.`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

const KEYWORDS: &[&str] = &[
    "def", "fun", "U", "El", "Lift", "Bool", "true", "false", "elimB", "lift", "unlift", "code",
];

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    for (line_no, line) in src.lines().enumerate() {
        let line_no = line_no + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let push = |toks: &mut Vec<Spanned>, tok| {
                toks.push(Spanned {
                    tok,
                    line: line_no,
                    col,
                })
            };
            if c.is_whitespace() {
                i += 1;
            } else if c == '-' && chars.get(i + 1) == Some(&'-') {
                break;
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                push(&mut toks, Tok::Arrow);
                i += 2;
            } else if c == '=' && chars.get(i + 1) == Some(&'>') {
                push(&mut toks, Tok::FatArrow);
                i += 2;
            } else if c == ':' && chars.get(i + 1) == Some(&'=') {
                push(&mut toks, Tok::Define);
                i += 2;
            } else if c == ':' {
                push(&mut toks, Tok::Colon);
                i += 1;
            } else if c == '(' {
                push(&mut toks, Tok::LParen);
                i += 1;
            } else if c == ')' {
                push(&mut toks, Tok::RParen);
                i += 1;
            } else if c == '.' {
                push(&mut toks, Tok::Dot);
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse().map_err(|_| ParseError {
                    line: line_no,
                    col,
                    message: format!("number `{text}` is too large"),
                })?;
                push(&mut toks, Tok::Num(n));
            } else if is_ident_start(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                push(&mut toks, Tok::Ident(chars[start..i].iter().collect()));
            } else {
                return Err(ParseError {
                    line: line_no,
                    col,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    /// Local binders, innermost last. `None` is an anonymous binder.
    scope: Vec<Option<String>>,
    globals: &'a HashMap<String, Tm>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = match self.toks.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => self.toks.last().map(|s| (s.line, s.col + 1)).unwrap_or((1, 1)),
        };
        Err(ParseError {
            line,
            col,
            message: message.into(),
        })
    }

    fn describe_next(&self) -> String {
        self.peek()
            .map(|t| t.to_string())
            .unwrap_or_else(|| "end of input".to_string())
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {tok}, found {}", self.describe_next()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{kw}`, found {}", self.describe_next()))
        }
    }

    fn binder_name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected a name, found {}", self.describe_next())),
        }
    }

    fn level(&mut self) -> Result<Level, ParseError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                match Level::new(n) {
                    Some(l) => {
                        self.pos += 1;
                        Ok(l)
                    }
                    None => self.error(format!("level {n} exceeds the maximum {}", Level::MAX)),
                }
            }
            _ => self.error(format!("expected a level, found {}", self.describe_next())),
        }
    }

    fn with_binder<T>(
        &mut self,
        name: Option<String>,
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        self.scope.push(name);
        let r = f(self);
        self.scope.pop();
        r
    }

    fn ty(&mut self) -> Result<Ty, ParseError> {
        if self.peek() == Some(&Tok::LParen)
            && matches!(self.peek_at(1), Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()))
            && self.peek_at(2) == Some(&Tok::Colon)
        {
            self.pos += 1;
            let name = self.binder_name()?;
            self.expect(Tok::Colon)?;
            let dom = self.ty()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Arrow)?;
            let cod = self.with_binder(Some(name), |p| p.ty())?;
            return Ok(Ty::pi(dom, cod));
        }
        let dom = self.ty_app()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let cod = self.with_binder(None, |p| p.ty())?;
            return Ok(Ty::pi(dom, cod));
        }
        Ok(dom)
    }

    fn ty_app(&mut self) -> Result<Ty, ParseError> {
        if self.is_keyword("El") {
            self.pos += 1;
            return Ok(Ty::el(self.tm_atom()?));
        }
        if self.is_keyword("Lift") {
            self.pos += 1;
            return Ok(Ty::lift(self.ty_app()?));
        }
        self.ty_atom()
    }

    fn ty_atom(&mut self) -> Result<Ty, ParseError> {
        if self.is_keyword("U") {
            self.pos += 1;
            return Ok(Ty::U(self.level()?));
        }
        if self.is_keyword("Bool") {
            self.pos += 1;
            return Ok(Ty::Bool(self.level()?));
        }
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let ty = self.ty()?;
            self.expect(Tok::RParen)?;
            return Ok(ty);
        }
        self.error(format!("expected a type, found {}", self.describe_next()))
    }

    fn tm(&mut self) -> Result<Tm, ParseError> {
        if self.is_keyword("fun") {
            self.pos += 1;
            let mut names = vec![self.binder_name()?];
            while self.peek() != Some(&Tok::FatArrow) {
                names.push(self.binder_name()?);
            }
            self.expect(Tok::FatArrow)?;
            let count = names.len();
            self.scope.extend(names.into_iter().map(Some));
            let body = self.tm();
            self.scope.truncate(self.scope.len() - count);
            let mut body = body?;
            for _ in 0..count {
                body = Tm::lam(body);
            }
            return Ok(body);
        }
        let mut head = self.tm_head()?;
        while self.starts_atom() {
            let arg = self.tm_atom()?;
            head = Tm::app(head, arg);
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::LParen) => true,
            Some(Tok::Ident(s)) => s == "true" || s == "false" || !KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn tm_head(&mut self) -> Result<Tm, ParseError> {
        if self.is_keyword("lift") {
            self.pos += 1;
            return Ok(Tm::lift(self.tm_atom()?));
        }
        if self.is_keyword("unlift") {
            self.pos += 1;
            return Ok(Tm::unlift(self.tm_atom()?));
        }
        if self.is_keyword("code") {
            self.pos += 1;
            return Ok(Tm::code(self.ty_atom()?));
        }
        if self.is_keyword("elimB") {
            self.pos += 1;
            let scrut_level = self.level()?;
            let motive_level = self.level()?;
            self.expect(Tok::LParen)?;
            let x = self.binder_name()?;
            self.expect(Tok::Dot)?;
            let motive = self.with_binder(Some(x), |p| p.ty())?;
            self.expect(Tok::RParen)?;
            let on_true = self.tm_atom()?;
            let on_false = self.tm_atom()?;
            let scrutinee = self.tm_atom()?;
            return Ok(Tm::elim_b(
                scrut_level,
                motive_level,
                motive,
                on_true,
                on_false,
                scrutinee,
            ));
        }
        self.tm_atom()
    }

    fn tm_atom(&mut self) -> Result<Tm, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.tm()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                Ok(Tm::True(self.level()?))
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                Ok(Tm::False(self.level()?))
            }
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                if let Some(pos) = self.scope.iter().rposition(|n| n.as_deref() == Some(&s)) {
                    self.pos += 1;
                    return Ok(Tm::Var(self.scope.len() - 1 - pos));
                }
                if let Some(body) = self.globals.get(&s) {
                    self.pos += 1;
                    return Ok(body.clone());
                }
                self.error(format!("unbound name `{s}`"))
            }
            _ => self.error(format!("expected a term, found {}", self.describe_next())),
        }
    }
}

/// Parses a whole file of definitions.
pub fn parse_file(src: &str) -> Result<Vec<Definition>, ParseError> {
    let toks = lex(src)?;
    let mut globals: HashMap<String, Tm> = HashMap::new();
    let mut defs = Vec::new();
    let mut pos = 0;
    while pos < toks.len() {
        let mut p = Parser {
            toks: &toks,
            pos,
            scope: Vec::new(),
            globals: &globals,
        };
        let line = toks[pos].line;
        p.expect_keyword("def")?;
        let name = p.binder_name()?;
        if defs.iter().any(|d: &Definition| d.name == name) {
            return p.error(format!("`{name}` is defined twice"));
        }
        p.expect(Tok::Colon)?;
        let ty = p.ty()?;
        p.expect(Tok::Define)?;
        let body = p.tm()?;
        if p.peek().is_some() && !p.is_keyword("def") {
            return p.error(format!("expected `def` or end of input, found {}", p.describe_next()));
        }
        pos = p.pos;
        globals.insert(name.clone(), body.clone());
        defs.push(Definition { name, ty, body, line });
    }
    Ok(defs)
}

/// Parses a closed type.
pub fn parse_ty(src: &str) -> Result<Ty, ParseError> {
    parse_with(src, &[], |p| p.ty())
}

/// Parses a term whose free names are `scope` (outermost first).
pub fn parse_tm(src: &str, scope: &[&str]) -> Result<Tm, ParseError> {
    parse_with(src, scope, |p| p.tm())
}

/// Parses a type whose free names are `scope` (outermost first).
pub fn parse_ty_in(src: &str, scope: &[&str]) -> Result<Ty, ParseError> {
    parse_with(src, scope, |p| p.ty())
}

fn parse_with<T>(
    src: &str,
    scope: &[&str],
    f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let toks = lex(src)?;
    let globals = HashMap::new();
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        scope: scope.iter().map(|s| Some(s.to_string())).collect(),
        globals: &globals,
    };
    let out = f(&mut p)?;
    if p.peek().is_some() {
        return p.error(format!("unexpected {}", p.describe_next()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pretty::{tm_to_string, ty_to_string};
    use crate::syntax::lvl;

    #[test]
    fn parses_definitions() {
        let src = "-- identity\ndef id : (x : Bool 0) -> Bool 0 := fun x => x\n\
                   def notTrue : Bool 0 := elimB 0 0 (b. Bool 0) (false 0) (true 0) (true 0)\n";
        let defs = parse_file(src).unwrap();
        assert_eq!(defs.len(), 2);
        assert_eq!(defs[0].name, "id");
        assert_eq!(defs[0].ty, Ty::pi(Ty::Bool(lvl(0)), Ty::Bool(lvl(0))));
        assert_eq!(defs[0].body, Tm::lam(Tm::var(0)));
        assert_eq!(defs[1].line, 3);
        assert_eq!(
            defs[1].body,
            Tm::elim_b(
                lvl(0),
                lvl(0),
                Ty::Bool(lvl(0)),
                Tm::False(lvl(0)),
                Tm::True(lvl(0)),
                Tm::True(lvl(0))
            )
        );
    }

    #[test]
    fn earlier_definitions_are_inlined() {
        let src = "def t : Bool 0 := true 0\ndef u : Bool 0 := (fun x => x) t";
        let defs = parse_file(src).unwrap();
        assert_eq!(defs[1].body, Tm::app(Tm::lam(Tm::var(0)), Tm::True(lvl(0))));
    }

    #[test]
    fn arrow_sugar_and_dependent_types() {
        let ty = parse_ty("(A : U 0) -> El A -> El A").unwrap();
        assert_eq!(
            ty,
            Ty::pi(Ty::U(lvl(0)), Ty::pi(Ty::el(Tm::var(0)), Ty::el(Tm::var(1))))
        );
        assert_eq!(
            parse_ty("Lift Lift Bool 0").unwrap(),
            Ty::lift(Ty::lift(Ty::Bool(lvl(0))))
        );
    }

    #[test]
    fn applications_associate_left() {
        let t = parse_tm("f lift x y", &["f", "x", "y"]);
        // `lift` is a head form, not an argument.
        assert!(t.is_err());
        let t = parse_tm("f (lift x) y", &["f", "x", "y"]).unwrap();
        assert_eq!(t, Tm::app(Tm::app(Tm::var(2), Tm::lift(Tm::var(1))), Tm::var(0)));
        let t = parse_tm("fun a b => a", &[]).unwrap();
        assert_eq!(t, Tm::lam(Tm::lam(Tm::var(1))));
    }

    #[test]
    fn reports_locations() {
        let err = parse_file("def x : Bool 0 :=\n  y").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
        assert!(err.message.contains("unbound"));
        let err = parse_file("def x : Bool 99 := true 0").unwrap_err();
        assert!(err.message.contains("level"));
        assert!(parse_file("def x : Bool 0 := true 0 )").is_err());
        assert!(parse_file("def x : Bool 0 := true 0\ndef x : Bool 0 := true 0").is_err());
        assert!(parse_file("").unwrap().is_empty());
    }

    #[test]
    fn printer_output_parses_back() {
        let samples = [
            "fun x => fun y => x y",
            "elimB 0 1 (b. U 0) (code (Bool 0)) (code (Lift (Bool 0))) (true 0)",
            "(fun x => unlift x) (lift (true 0))",
            "code ((a : U 0) -> El a -> El a)",
        ];
        for src in samples {
            let t = parse_tm(src, &[]).unwrap();
            let printed = tm_to_string(0, &t);
            assert_eq!(parse_tm(&printed, &[]).unwrap(), t, "{printed}");
        }
        let ty = parse_ty("(a : U 0) -> Lift (El a) -> Bool 1").unwrap();
        assert_eq!(parse_ty(&ty_to_string(0, &ty)).unwrap(), ty);
    }
}
