//! Tiny expression grammar shared by scalars and linear combinations.
//!
//! ```text
//! sum     := ['+'|'-'] product (('+'|'-') product)*
//! product := factor (('*'|'/') factor)*
//! factor  := INTEGER | 'i' | 'e' INDEX | '(' sum ')'
//! ```
//!
//! Each product may contain at most one basis factor `eK` (1-based). Division
//! is only allowed by nonzero scalars.

use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Term {
    pub coefficient: GaussianRational,
    /// 0-based basis index.
    pub basis: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    I,
    Basis(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '/' => out.push(Token::Slash),
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            'i' => out.push(Token::I),
            'e' => {
                let start = k + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(format!("expected basis index after `e` in `{s}`"));
                }
                let idx: usize = chars[start..end].iter().collect::<String>().parse().map_err(|e| format!("{e}"))?;
                if idx == 0 {
                    return Err("basis vectors are numbered from e1".into());
                }
                out.push(Token::Basis(idx - 1));
                k = end;
                continue;
            }
            d if d.is_ascii_digit() => {
                let mut end = k;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let lit: String = chars[k..end].iter().collect();
                let n: i64 = lit.parse().map_err(|_| format!("integer literal `{lit}` too large"))?;
                out.push(Token::Int(n));
                k = end;
                continue;
            }
            other => return Err(format!("unexpected character `{other}` in `{s}`")),
        }
        k += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Vec<Term>, String> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let product = self.product()?;
            for mut t in product {
                if negate {
                    t.coefficient = -t.coefficient;
                }
                terms.push(t);
            }
            match self.peek() {
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    /// A product expands to a list of terms because a parenthesized factor may
    /// itself be a sum.
    fn product(&mut self) -> Result<Vec<Term>, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = multiply(acc, rhs)?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let divisor = as_scalar(&rhs).ok_or("division by a basis vector")?;
                    let inv = divisor.inv().ok_or("division by zero")?;
                    for t in &mut acc {
                        t.coefficient = &t.coefficient * &inv;
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Vec<Term>, String> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(vec![Term { coefficient: GaussianRational::from_int(n), basis: None }]),
            Some(Token::I) => Ok(vec![Term { coefficient: GaussianRational::i(), basis: None }]),
            Some(Token::Basis(k)) => Ok(vec![Term { coefficient: GaussianRational::one(), basis: Some(k) }]),
            Some(Token::Open) => {
                let inner = self.sum()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err("missing `)`".into()),
                }
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

fn as_scalar(terms: &[Term]) -> Option<GaussianRational> {
    let mut acc = GaussianRational::zero();
    for t in terms {
        if t.basis.is_some() {
            return None;
        }
        acc += &t.coefficient;
    }
    Some(acc)
}

fn multiply(lhs: Vec<Term>, rhs: Vec<Term>) -> Result<Vec<Term>, String> {
    let mut out = Vec::with_capacity(lhs.len() * rhs.len());
    for a in &lhs {
        for b in &rhs {
            let basis = match (a.basis, b.basis) {
                (Some(_), Some(_)) => return Err("product of two basis vectors".into()),
                (x, None) | (None, x) => x,
            };
            out.push(Term { coefficient: &a.coefficient * &b.coefficient, basis });
        }
    }
    Ok(out)
}

pub(crate) fn parse_expression(s: &str) -> Result<Vec<Term>, String> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { tokens, pos: 0 };
    let terms = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input in `{s}`"));
    }
    Ok(terms)
}

/// Parses `c1*e1 + ...` into a coordinate vector of length `dim`. A bare
/// scalar `0` is the zero vector.
pub(crate) fn parse_linear_combination(s: &str, dim: usize) -> Result<Vec<GaussianRational>, String> {
    let terms = parse_expression(s)?;
    let mut v = vec![GaussianRational::zero(); dim];
    for t in terms {
        match t.basis {
            Some(k) if k < dim => v[k] += &t.coefficient,
            Some(k) => return Err(format!("basis vector e{} exceeds dimension {dim}", k + 1)),
            None if t.coefficient.is_zero() => {}
            None => return Err(format!("term `{}` has no basis vector", t.coefficient)),
        }
    }
    Ok(v)
}

/// Inverse of [`parse_linear_combination`].
pub(crate) fn render_linear_combination(v: &[GaussianRational]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (negative, mag) = if c.prefers_negation() { (true, -c) } else { (false, c.clone()) };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mag.is_one() {
        } else if mag.is_real() || mag.re().is_zero() {
            out.push_str(&format!("{mag}*"));
        } else {
            out.push_str(&format!("({mag})*"));
        }
        out.push_str(&format!("e{}", k + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
