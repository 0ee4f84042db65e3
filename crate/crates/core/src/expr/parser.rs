//! Lexer and recursive-descent parser for the congruence file format and
//! its expression language.
//!
//! The file format is line oriented, `#` starts a comment:
//!
//! ```text
//! name = "example"
//! domain = u1 in (-1, 1), u2 in (-1, 1)
//! x = (u1, u2^2, u1*u2^2)
//! omega = ((1, 0, u2^2), (0, u2^3 + 1, u1))     # columns w1, w2 (optional)
//! xi = normal(omega)                            # or an explicit 3-vector
//! ```
//!
//! Expressions know the identifiers `u1`, `u2` (or the curve parameter `t`),
//! the functions `sqrt`, `sin`, `cos`, the operators `+ - * / ^` and
//! parentheses. `^` takes an integer literal exponent and binds tighter than
//! unary minus.

use super::ast::{ScalarExpr, Var, VectorExpr};
use crate::scene::{CongruenceScene, CurveExpr, DomainRect};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("parse error at {line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, col, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Str(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    In,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let bytes: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let col = i + 1;
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                }
                '(' => {
                    out.push(Token { tok: Tok::LParen, line: line_no, col });
                    i += 1;
                }
                ')' => {
                    out.push(Token { tok: Tok::RParen, line: line_no, col });
                    i += 1;
                }
                ',' => {
                    out.push(Token { tok: Tok::Comma, line: line_no, col });
                    i += 1;
                }
                '=' => {
                    out.push(Token { tok: Tok::Eq, line: line_no, col });
                    i += 1;
                }
                '+' => {
                    out.push(Token { tok: Tok::Plus, line: line_no, col });
                    i += 1;
                }
                '-' => {
                    out.push(Token { tok: Tok::Minus, line: line_no, col });
                    i += 1;
                }
                '*' => {
                    out.push(Token { tok: Tok::Star, line: line_no, col });
                    i += 1;
                }
                '/' => {
                    out.push(Token { tok: Tok::Slash, line: line_no, col });
                    i += 1;
                }
                '^' => {
                    out.push(Token { tok: Tok::Caret, line: line_no, col });
                    i += 1;
                }
                '"' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < bytes.len() && bytes[j] != '"' {
                        j += 1;
                    }
                    if j == bytes.len() {
                        return Err(ParseError::new(line_no, col, "unterminated string"));
                    }
                    let s: String = bytes[start..j].iter().collect();
                    out.push(Token { tok: Tok::Str(s), line: line_no, col });
                    i = j + 1;
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i < bytes.len() && bytes[i] == '.' {
                        i += 1;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                    if i < bytes.len() && (bytes[i] == 'e' || bytes[i] == 'E') {
                        let mut j = i + 1;
                        if j < bytes.len() && (bytes[j] == '+' || bytes[j] == '-') {
                            j += 1;
                        }
                        if j < bytes.len() && bytes[j].is_ascii_digit() {
                            i = j;
                            while i < bytes.len() && bytes[i].is_ascii_digit() {
                                i += 1;
                            }
                        }
                    }
                    let s: String = bytes[start..i].iter().collect();
                    let v: f64 = s.parse().map_err(|_| {
                        ParseError::new(line_no, col, format!("bad number literal '{s}'"))
                    })?;
                    out.push(Token { tok: Tok::Number(v), line: line_no, col });
                }
                c if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                        i += 1;
                    }
                    let s: String = bytes[start..i].iter().collect();
                    let tok = if s == "in" { Tok::In } else { Tok::Ident(s) };
                    out.push(Token { tok, line: line_no, col });
                }
                other => {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        format!("unexpected character '{other}'"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Names the expression variables may use; scene expressions use
/// ("u1", "u2"), curve expressions use ("t", None).
#[derive(Debug, Clone, Copy)]
pub enum VarSet {
    Chart,
    CurveParam,
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    vars: VarSet,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Token], vars: VarSet) -> Parser<'a> {
        Parser { toks, pos: 0, vars }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) => ParseError::new(t.line, t.col, message),
            None => ParseError::new(1, 1, message),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.tok == tok => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err_here(format!("expected {what}"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    // expr := term (('+'|'-') term)*
    fn scalar(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = ScalarExpr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = ScalarExpr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = ScalarExpr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = ScalarExpr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // unary := '-' unary | power   (so -u1^2 parses as -(u1^2))
    fn unary(&mut self) -> Result<ScalarExpr, ParseError> {
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Minus)) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(ScalarExpr::Neg(Box::new(inner)));
        }
        self.power()
    }

    // power := atom ('^' '-'? int)?
    fn power(&mut self) -> Result<ScalarExpr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Caret)) {
            self.pos += 1;
            let neg = if matches!(self.peek().map(|t| &t.tok), Some(Tok::Minus)) {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = match self.next().map(|t| (t.tok.clone(), t.line, t.col)) {
                Some((Tok::Number(v), line, col)) => {
                    if v.fract() != 0.0 || v.abs() > i32::MAX as f64 {
                        return Err(ParseError::new(line, col, "exponent must be an integer literal"));
                    }
                    v as i32
                }
                _ => return Err(self.err_here("expected integer exponent after '^'")),
            };
            let k = if neg { -k } else { k };
            return Ok(ScalarExpr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ScalarExpr, ParseError> {
        let token = match self.next() {
            Some(t) => t.clone(),
            None => return Err(self.err_here("expected expression")),
        };
        match token.tok {
            Tok::Number(v) => Ok(ScalarExpr::Const(v)),
            Tok::LParen => {
                let e = self.scalar()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "u1" if matches!(self.vars, VarSet::Chart) => Ok(ScalarExpr::Var(Var::U1)),
                "u2" if matches!(self.vars, VarSet::Chart) => Ok(ScalarExpr::Var(Var::U2)),
                "t" if matches!(self.vars, VarSet::CurveParam) => Ok(ScalarExpr::Var(Var::U1)),
                "sqrt" | "sin" | "cos" => {
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let arg = self.scalar()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(match name.as_str() {
                        "sqrt" => ScalarExpr::Sqrt(Box::new(arg)),
                        "sin" => ScalarExpr::Sin(Box::new(arg)),
                        _ => ScalarExpr::Cos(Box::new(arg)),
                    })
                }
                other => Err(ParseError::new(
                    token.line,
                    token.col,
                    format!("unknown identifier '{other}'"),
                )),
            },
            _ => Err(ParseError::new(token.line, token.col, "expected expression")),
        }
    }

    // vector := cross(v, v) | normalize(v) | normal(omega) | (s, s, s)
    fn vector(&mut self, omega_in_scope: bool) -> Result<VectorExpr, ParseError> {
        match self.peek().map(|t| (t.tok.clone(), t.line, t.col)) {
            Some((Tok::Ident(name), line, col)) if name == "cross" => {
                self.pos += 1;
                self.expect(Tok::LParen, "'('")?;
                let a = self.vector(omega_in_scope)?;
                self.expect(Tok::Comma, "','")?;
                let b = self.vector(omega_in_scope)?;
                self.expect(Tok::RParen, "')'")?;
                let _ = (line, col);
                Ok(VectorExpr::Cross(Box::new(a), Box::new(b)))
            }
            Some((Tok::Ident(name), _, _)) if name == "normalize" => {
                self.pos += 1;
                self.expect(Tok::LParen, "'('")?;
                let v = self.vector(omega_in_scope)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(VectorExpr::Normalize(Box::new(v)))
            }
            Some((Tok::Ident(name), line, col)) if name == "normal" => {
                self.pos += 1;
                self.expect(Tok::LParen, "'('")?;
                match self.next().map(|t| t.tok.clone()) {
                    Some(Tok::Ident(id)) if id == "omega" => {}
                    _ => return Err(ParseError::new(line, col, "normal() takes the identifier 'omega'")),
                }
                self.expect(Tok::RParen, "')'")?;
                if !omega_in_scope {
                    return Err(ParseError::new(
                        line,
                        col,
                        "normal(omega) used but no omega is defined in this file",
                    ));
                }
                Ok(VectorExpr::Normal)
            }
            Some((Tok::LParen, line, col)) => {
                self.pos += 1;
                let mut comps = vec![self.scalar()?];
                while matches!(self.peek().map(|t| &t.tok), Some(Tok::Comma)) {
                    self.pos += 1;
                    comps.push(self.scalar()?);
                }
                self.expect(Tok::RParen, "')' or ','")?;
                if comps.len() != 3 {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!("vector needs exactly 3 components, found {}", comps.len()),
                    ));
                }
                let c3 = comps.pop().unwrap();
                let c2 = comps.pop().unwrap();
                let c1 = comps.pop().unwrap();
                Ok(VectorExpr::components(c1, c2, c3))
            }
            _ => Err(self.err_here("expected a vector expression")),
        }
    }

    fn number_like(&mut self) -> Result<f64, ParseError> {
        // Constant scalar expression (e.g. -1/10) evaluated to a number.
        let e = self.scalar()?;
        const_eval(&e).ok_or_else(|| self.err_here("expected a constant number"))
    }
}

fn const_eval(e: &ScalarExpr) -> Option<f64> {
    match e {
        ScalarExpr::Var(_) => None,
        ScalarExpr::Const(v) => Some(*v),
        ScalarExpr::Neg(a) => Some(-const_eval(a)?),
        ScalarExpr::Add(a, b) => Some(const_eval(a)? + const_eval(b)?),
        ScalarExpr::Sub(a, b) => Some(const_eval(a)? - const_eval(b)?),
        ScalarExpr::Mul(a, b) => Some(const_eval(a)? * const_eval(b)?),
        ScalarExpr::Div(a, b) => Some(const_eval(a)? / const_eval(b)?),
        ScalarExpr::Pow(a, k) => Some(const_eval(a)?.powi(*k)),
        ScalarExpr::Sqrt(a) => Some(const_eval(a)?.sqrt()),
        ScalarExpr::Sin(a) => Some(const_eval(a)?.sin()),
        ScalarExpr::Cos(a) => Some(const_eval(a)?.cos()),
    }
}

/// Parse a standalone scalar expression in the chart variables.
pub fn parse_scalar(text: &str) -> Result<ScalarExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser::new(&toks, VarSet::Chart);
    let e = p.scalar()?;
    if !p.at_end() {
        return Err(p.err_here("trailing input after expression"));
    }
    Ok(e)
}

/// Parse a standalone vector expression in the chart variables.
/// `omega_in_scope` permits `normal(omega)`.
pub fn parse_vector(text: &str, omega_in_scope: bool) -> Result<VectorExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser::new(&toks, VarSet::Chart);
    let v = p.vector(omega_in_scope)?;
    if !p.at_end() {
        return Err(p.err_here("trailing input after expression"));
    }
    Ok(v)
}

/// Parse a curve `u1(t), u2(t)` in the parameter `t`.
pub fn parse_curve(text: &str) -> Result<CurveExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser::new(&toks, VarSet::CurveParam);
    let c1 = p.scalar()?;
    p.expect(Tok::Comma, "',' between the two curve components")?;
    let c2 = p.scalar()?;
    if !p.at_end() {
        return Err(p.err_here("trailing input after curve"));
    }
    Ok(CurveExpr { u1: c1, u2: c2 })
}

/// Parse a whole congruence file.
pub fn parse_scene(text: &str) -> Result<CongruenceScene, ParseError> {
    let mut name = None;
    let mut domain = None;
    let mut x = None;
    let mut omega: Option<[VectorExpr; 2]> = None;
    let mut xi_src: Option<(usize, String)> = None;

    for (li, raw) in text.lines().enumerate() {
        let line_no = li + 1;
        let line = match raw.find('#') {
            Some(h) => &raw[..h],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let eq = line.find('=').ok_or_else(|| {
            ParseError::new(line_no, 1, "expected 'key = value'")
        })?;
        let key = line[..eq].trim();
        let value = &line[eq + 1..];
        let toks = lex(value)?;
        // lexed from a slice of the original line: positions are per-value,
        // re-anchor the line number
        let toks: Vec<Token> = toks
            .into_iter()
            .map(|mut t| {
                t.line = line_no;
                t.col += eq + 1;
                t
            })
            .collect();
        match key {
            "name" => {
                let mut p = Parser::new(&toks, VarSet::Chart);
                match p.next().map(|t| t.tok.clone()) {
                    Some(Tok::Str(s)) => name = Some(s),
                    _ => return Err(ParseError::new(line_no, eq + 2, "name takes a quoted string")),
                }
            }
            "domain" => {
                let mut p = Parser::new(&toks, VarSet::Chart);
                let mut bounds = [[0.0f64; 2]; 2];
                for (slot, var) in ["u1", "u2"].iter().enumerate() {
                    match p.next().map(|t| t.tok.clone()) {
                        Some(Tok::Ident(id)) if id == *var => {}
                        _ => {
                            return Err(p.err_here(format!("expected '{var} in (a, b)'")));
                        }
                    }
                    p.expect(Tok::In, "'in'")?;
                    p.expect(Tok::LParen, "'('")?;
                    bounds[slot][0] = p.number_like()?;
                    p.expect(Tok::Comma, "','")?;
                    bounds[slot][1] = p.number_like()?;
                    p.expect(Tok::RParen, "')'")?;
                    if slot == 0 {
                        p.expect(Tok::Comma, "',' between the u1 and u2 ranges")?;
                    }
                }
                let rect = DomainRect::new(bounds[0][0], bounds[0][1], bounds[1][0], bounds[1][1])
                    .map_err(|m| ParseError::new(line_no, eq + 2, m))?;
                domain = Some(rect);
            }
            "x" => {
                let mut p = Parser::new(&toks, VarSet::Chart);
                let v = p.vector(false)?;
                if !p.at_end() {
                    return Err(p.err_here("trailing input after x"));
                }
                x = Some(v);
            }
            "omega" => {
                let mut p = Parser::new(&toks, VarSet::Chart);
                p.expect(Tok::LParen, "'('")?;
                let w1 = p.vector(false)?;
                p.expect(Tok::Comma, "','")?;
                let w2 = p.vector(false)?;
                p.expect(Tok::RParen, "')'")?;
                if !p.at_end() {
                    return Err(p.err_here("trailing input after omega"));
                }
                omega = Some([w1, w2]);
            }
            "xi" => {
                // xi may reference omega, which can be declared later; defer.
                xi_src = Some((line_no, value.to_string()));
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("unknown key '{other}' (expected name, domain, x, omega, xi)"),
                ));
            }
        }
    }

    let (xi_line, xi_text) = xi_src.ok_or_else(|| ParseError::new(1, 1, "xi is missing"))?;
    let xi = {
        let toks = lex(&xi_text)?;
        let toks: Vec<Token> = toks
            .into_iter()
            .map(|mut t| {
                t.line = xi_line;
                t
            })
            .collect();
        let mut p = Parser::new(&toks, VarSet::Chart);
        let v = p.vector(omega.is_some())?;
        if !p.at_end() {
            return Err(p.err_here("trailing input after xi"));
        }
        v
    };
    let x = x.ok_or_else(|| ParseError::new(1, 1, "x is missing"))?;
    let domain = domain.ok_or_else(|| ParseError::new(1, 1, "domain is missing"))?;

    Ok(CongruenceScene::assemble(
        name.unwrap_or_else(|| "unnamed".to_string()),
        domain,
        x,
        omega,
        xi,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ast::{ScalarExpr as S, Var};

    #[test]
    fn ast_transcription() {
        // nodes exactly as written
        let v = parse_vector("(u1, u2^2, u1*u2^2)", false).unwrap();
        let expect = VectorExpr::components(
            S::Var(Var::U1),
            S::Pow(Box::new(S::Var(Var::U2)), 2),
            S::Mul(
                Box::new(S::Var(Var::U1)),
                Box::new(S::Pow(Box::new(S::Var(Var::U2)), 2)),
            ),
        );
        assert_eq!(v, expect);
    }

    #[test]
    fn power_binds_tighter_than_unary_minus() {
        let e = parse_scalar("-u2^2").unwrap();
        assert_eq!(
            e,
            S::Neg(Box::new(S::Pow(Box::new(S::Var(Var::U2)), 2)))
        );
    }

    #[test]
    fn negative_exponent() {
        let e = parse_scalar("u1^-2").unwrap();
        assert_eq!(e, S::Pow(Box::new(S::Var(Var::U1)), -2));
    }

    #[test]
    fn arity_error() {
        let err = parse_vector("(u1, u2)", false).unwrap_err();
        assert!(err.message.contains("3 components"), "{err}");
    }

    #[test]
    fn unknown_identifier() {
        let err = parse_scalar("u3 + 1").unwrap_err();
        assert!(err.message.contains("unknown identifier 'u3'"));
        assert_eq!((err.line, err.col), (1, 1));
    }

    #[test]
    fn fractional_exponent_rejected() {
        let err = parse_scalar("u1^1.5").unwrap_err();
        assert!(err.message.contains("integer"));
    }

    #[test]
    fn normal_requires_omega() {
        let text = "name = \"bad\"\ndomain = u1 in (0,1), u2 in (0,1)\nx = (u1, u2, 0)\nxi = normal(omega)\n";
        let err = parse_scene(text).unwrap_err();
        assert!(err.message.contains("no omega"));
    }

    #[test]
    fn missing_xi() {
        let text = "name = \"bad\"\ndomain = u1 in (0,1), u2 in (0,1)\nx = (u1, u2, 0)\n";
        let err = parse_scene(text).unwrap_err();
        assert!(err.message.contains("xi is missing"));
    }

    #[test]
    fn error_carries_position() {
        let text = "name = \"bad\"\ndomain = u1 in (0,1), u2 in (0,1)\nx = (u1, u2, )\nxi = (0,0,1)\n";
        let err = parse_scene(text).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.col > 1);
    }

    #[test]
    fn domain_accepts_fractions() {
        let text = "domain = u1 in (-1/10, 1/10), u2 in (-4, 4)\nx = (u1, u2, 0)\nxi = (0, 0, 1)\n";
        let sc = parse_scene(text).unwrap();
        assert!((sc.domain.u1_min + 0.1).abs() < 1e-15);
        assert!((sc.domain.u2_max - 4.0).abs() < 1e-15);
    }

    #[test]
    fn print_parse_round_trip() {
        for src in [
            "(u1, u2^2, u1*u2^2)",
            "(sqrt(u1^2 + u2^2), sin(u1)*cos(u2), 2/5*u2^5 + u2^2)",
            "normalize(cross((1, 0, u2^2), (0, u2^3 + 1, u1)))",
            "(-u1^3, u1 - u2 - 1, (u1 + u2)^-2)",
        ] {
            let v = parse_vector(src, false).unwrap();
            let printed = v.to_string();
            let reparsed = parse_vector(&printed, false).unwrap();
            assert_eq!(v, reparsed, "round trip failed for {src} -> {printed}");
        }
    }
}
