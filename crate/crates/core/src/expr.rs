//! A small expression language for states.
//!
//! ```text
//! expr := ['-'] term (('+' | '-') term)*
//! term := rational? atom
//! atom := 'one'                      vacuum
//!       | NAME                       named field or generator
//!       | 'd' INT? '(' expr ')'      iterated derivative
//!       | 'W' '(' expr {',' expr} ')'  right-nested Wick product
//!       | 'C' '(' expr ',' expr ',' INT ')'  circle product
//!       | '(' expr ')'
//! ```
//!
//! Every formula a report quotes is written in this grammar, so anchors
//! stay machine-checkable.

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::state::State;
use crate::wick::Engine;

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Vacuum,
    Name(String),
    /// Sum of coefficient-weighted atoms.
    Sum(Vec<(Scalar, Ast)>),
    /// Right-nested Wick product of two or more factors.
    Wick(Vec<Ast>),
    Circle(Box<Ast>, Box<Ast>, i64),
    Derive(u32, Box<Ast>),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Name(String),
    Plus,
    Minus,
    Slash,
    Comma,
    Open,
    Close,
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            ',' => {
                out.push((i, Token::Comma));
                i += 1;
            }
            '(' => {
                out.push((i, Token::Open));
                i += 1;
            }
            ')' => {
                out.push((i, Token::Close));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let value = text.parse::<i64>().map_err(|_| Error::Parse {
                    offset: start,
                    message: format!("integer `{text}` is out of range"),
                })?;
                out.push((start, Token::Int(value)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Name(input[start..i].to_string())));
            }
            other => {
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.fail(format!("expected {what}"))
            }
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                true
            }
            _ => false,
        };
        loop {
            let (coeff, atom) = self.term()?;
            let signed = if negative { -coeff } else { coeff };
            terms.push((signed, atom));
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    negative = false;
                }
                Some(Token::Minus) => {
                    self.bump();
                    negative = true;
                }
                _ => break,
            }
        }
        if terms.len() == 1 && scalar::is_one(&terms[0].0) {
            Ok(terms.pop().expect("one term").1)
        } else {
            Ok(Ast::Sum(terms))
        }
    }

    fn term(&mut self) -> Result<(Scalar, Ast)> {
        let coeff = match self.peek() {
            Some(Token::Int(_)) => self.rational()?,
            _ => scalar::int(1),
        };
        let atom = self.atom()?;
        Ok((coeff, atom))
    }

    fn rational(&mut self) -> Result<Scalar> {
        let numer = match self.bump() {
            Some(Token::Int(n)) => n,
            _ => return self.fail("expected an integer"),
        };
        if self.peek() == Some(&Token::Slash) {
            self.bump();
            match self.bump() {
                Some(Token::Int(d)) if d != 0 => Ok(scalar::frac(numer, d)),
                _ => self.fail("expected a nonzero denominator"),
            }
        } else {
            Ok(scalar::int(numer))
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Token::Int(n)) => Ok(if negative { -n } else { n }),
            _ => self.fail("expected an integer"),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.bump() {
            Some(Token::Open) => {
                let inner = self.expr()?;
                self.expect(Token::Close, "`)`")?;
                Ok(inner)
            }
            Some(Token::Name(name)) => match name.as_str() {
                "one" => Ok(Ast::Vacuum),
                "W" if self.peek() == Some(&Token::Open) => {
                    self.bump();
                    let mut factors = vec![self.expr()?];
                    while self.peek() == Some(&Token::Comma) {
                        self.bump();
                        factors.push(self.expr()?);
                    }
                    self.expect(Token::Close, "`)`")?;
                    if factors.len() < 2 {
                        return self.fail("W(...) needs at least two factors");
                    }
                    Ok(Ast::Wick(factors))
                }
                "C" if self.peek() == Some(&Token::Open) => {
                    self.bump();
                    let left = self.expr()?;
                    self.expect(Token::Comma, "`,`")?;
                    let right = self.expr()?;
                    self.expect(Token::Comma, "`,`")?;
                    let n = self.signed_int()?;
                    self.expect(Token::Close, "`)`")?;
                    Ok(Ast::Circle(Box::new(left), Box::new(right), n))
                }
                "d" if self.peek() == Some(&Token::Open) => {
                    self.bump();
                    let inner = self.expr()?;
                    self.expect(Token::Close, "`)`")?;
                    Ok(Ast::Derive(1, Box::new(inner)))
                }
                _ => {
                    // `d<INT>(expr)` arrives from the lexer as a single name.
                    if let Some(rest) = name.strip_prefix('d') {
                        if !rest.is_empty()
                            && rest.bytes().all(|b| b.is_ascii_digit())
                            && self.peek() == Some(&Token::Open)
                        {
                            let order: u32 = rest.parse().map_err(|_| Error::Parse {
                                offset: self.offset(),
                                message: format!("derivative order `{rest}` is out of range"),
                            })?;
                            self.bump();
                            let inner = self.expr()?;
                            self.expect(Token::Close, "`)`")?;
                            return Ok(Ast::Derive(order, Box::new(inner)));
                        }
                    }
                    Ok(Ast::Name(name))
                }
            },
            _ => self.fail("expected a field name, number, or `(`"),
        }
    }
}

pub fn parse(input: &str) -> Result<Ast> {
    let tokens = lex(input)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: input.len(),
    };
    let ast = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.fail("trailing input after expression");
    }
    Ok(ast)
}

/// Canonical text form; `parse(&print(ast))` reproduces the tree up to
/// flattening of one-element sums.
pub fn print(ast: &Ast) -> String {
    match ast {
        Ast::Vacuum => "one".to_string(),
        Ast::Name(name) => name.clone(),
        Ast::Wick(factors) => {
            let inner: Vec<String> = factors.iter().map(print).collect();
            format!("W({})", inner.join(", "))
        }
        Ast::Circle(a, b, n) => format!("C({}, {}, {n})", print(a), print(b)),
        Ast::Derive(order, inner) => {
            if *order == 1 {
                format!("d({})", print(inner))
            } else {
                format!("d{order}({})", print(inner))
            }
        }
        Ast::Sum(terms) => {
            let mut out = String::new();
            for (i, (coeff, atom)) in terms.iter().enumerate() {
                let negative = scalar::signum(coeff) < 0;
                if i == 0 {
                    if negative {
                        out.push_str("- ");
                    }
                } else if negative {
                    out.push_str(" - ");
                } else {
                    out.push_str(" + ");
                }
                let magnitude = if negative {
                    -coeff.clone()
                } else {
                    coeff.clone()
                };
                let needs_parens =
                    matches!(atom, Ast::Sum(_)) && (!scalar::is_one(&magnitude) || i > 0);
                if !scalar::is_one(&magnitude) {
                    out.push_str(&scalar::render(&magnitude));
                    out.push(' ');
                }
                if needs_parens || matches!(atom, Ast::Sum(_)) {
                    out.push('(');
                    out.push_str(&print(atom));
                    out.push(')');
                } else {
                    out.push_str(&print(atom));
                }
            }
            out
        }
    }
}

/// Evaluates against an engine plus a name resolver (library fields first,
/// then bare generators, is the usual arrangement).
pub fn eval(ast: &Ast, engine: &Engine, resolve: &dyn Fn(&str) -> Option<State>) -> Result<State> {
    match ast {
        Ast::Vacuum => Ok(State::vacuum()),
        Ast::Name(name) => resolve(name).ok_or_else(|| Error::UnknownField(name.clone())),
        Ast::Sum(terms) => {
            let mut total = State::zero();
            for (coeff, atom) in terms {
                let value = eval(atom, engine, resolve)?;
                total.add_scaled(coeff, &value);
            }
            Ok(total)
        }
        Ast::Wick(factors) => {
            let states = factors
                .iter()
                .map(|f| eval(f, engine, resolve))
                .collect::<Result<Vec<_>>>()?;
            Ok(engine.wick_many(&states))
        }
        Ast::Circle(a, b, n) => {
            let left = eval(a, engine, resolve)?;
            let right = eval(b, engine, resolve)?;
            Ok(engine.circle(&left, &right, *n))
        }
        Ast::Derive(order, inner) => {
            let mut state = eval(inner, engine, resolve)?;
            for _ in 0..*order {
                state = engine.derivative(&state);
            }
            Ok(state)
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(
    input: &str,
    engine: &Engine,
    resolve: &dyn Fn(&str) -> Option<State>,
) -> Result<State> {
    eval(&parse(input)?, engine, resolve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_system, SystemCase};
    use crate::scalar::{frac, int};
    use crate::state::{generator_state, states_equal};

    #[test]
    fn parses_terms_sums_and_rationals() {
        let ast = parse("3/2 W(a, b) - c + 2 one").unwrap();
        match ast {
            Ast::Sum(terms) => {
                assert_eq!(terms.len(), 3);
                assert_eq!(terms[0].0, frac(3, 2));
                assert_eq!(terms[1].0, int(-1));
                assert_eq!(terms[2].0, int(2));
                assert_eq!(terms[2].1, Ast::Vacuum);
            }
            other => panic!("expected a sum, got {other:?}"),
        }
    }

    #[test]
    fn distinguishes_keywords_from_names() {
        // `d`, `W`, `C`, `d2` are ordinary names unless followed by `(`.
        assert_eq!(parse("d").unwrap(), Ast::Name("d".into()));
        assert_eq!(parse("W_field").unwrap(), Ast::Name("W_field".into()));
        assert!(matches!(parse("d2(x)").unwrap(), Ast::Derive(2, _)));
        assert!(matches!(parse("d(x)").unwrap(), Ast::Derive(1, _)));
        assert!(matches!(
            parse("C(a, b, -2)").unwrap(),
            Ast::Circle(_, _, -2)
        ));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("").is_err());
        assert!(parse("1/0 x").is_err());
        assert!(parse("W(a)").is_err());
        assert!(parse("a + ").is_err());
        assert!(parse("a b extra )").is_err());
        assert!(parse("x^2").is_err());
    }

    #[test]
    fn evaluates_against_the_heisenberg_system() {
        let sys = build_system(SystemCase::Heisenberg).unwrap();
        let engine = Engine::new(&sys);
        let resolve = |name: &str| generator_state(&sys, name).ok();
        let jj = eval_str("1/2 W(j, j)", &engine, &resolve).unwrap();
        // L = (1/2):jj: satisfies C(L, L, 3) = 1/2 one.
        let central = eval_str("C(1/2 W(j, j), 1/2 W(j, j), 3)", &engine, &resolve).unwrap();
        assert!(states_equal(&central, &State::vacuum().scale(&frac(1, 2))));
        let two_l = eval_str("2 (1/2 W(j, j))", &engine, &resolve).unwrap();
        assert!(states_equal(&two_l, &jj.scale(&int(2))));
    }

    #[test]
    fn print_parse_round_trip_on_a_nested_tree() {
        let text = "- 1/2 W(a, d2(b), C(a, b, 0)) + 3 one - (a - b)";
        let ast = parse(text).unwrap();
        assert_eq!(parse(&print(&ast)).unwrap(), ast);
    }
}
