//! Plain-text problem files.
//!
//! ```text
//! # two objectives over one binary and two continuous variables
//! objectives 2
//! int z 0 1
//! cont t0 0 1
//! cont t1 0 1
//! min t0 + t1 + 1/2 z
//! min 1 - 1/2 z - t0 - 1/2 t1
//! st t0 + z <= 1
//! st t1 - z <= 0
//! ```
//!
//! Numbers are integers, decimals or fractions and are read exactly.
//! Bounds may be `inf` or `-inf` for continuous variables; a continuous
//! variable declared without bounds is nonnegative. `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

use momilp_core::lp::{Constraint, Relation};
use momilp_core::problem::{MomilpProblem, Variable};
use momilp_core::rational::parse_rational;
use momilp_core::Rational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_problem(path: &Path) -> Result<MomilpProblem, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_problem_str(&text)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Rel(Relation),
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '<' | '>' | '=' => {
                let two = chars.get(i + 1) == Some(&'=');
                let rel = match c {
                    '<' if two => Relation::Le,
                    '>' if two => Relation::Ge,
                    '=' => Relation::Eq,
                    _ => return Err(syntax(line, format!("use `{c}=` for inequalities"))),
                };
                out.push(Token::Rel(rel));
                i += if two { 2 } else { 1 };
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/') {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let value = parse_rational(&lit).map_err(|_| syntax(line, format!("bad number `{lit}`")))?;
                out.push(Token::Num(value));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(syntax(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

/// Sparse linear form: coefficients by variable index plus a constant.
#[derive(Default)]
struct Linear {
    coeffs: BTreeMap<usize, Rational>,
    constant: Rational,
}

impl Linear {
    fn dense(&self, n: usize) -> Vec<Rational> {
        (0..n).map(|i| self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)).collect()
    }
}

fn parse_linear(tokens: &[Token], names: &BTreeMap<String, usize>, line: usize) -> Result<Linear, ParseError> {
    if tokens.is_empty() {
        return Err(syntax(line, "empty expression"));
    }
    let mut out = Linear::default();
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut sign = Rational::from_integer(1.into());
        match tokens[i] {
            Token::Plus => i += 1,
            Token::Minus => {
                sign = -sign;
                i += 1;
            }
            _ if first => {}
            _ => return Err(syntax(line, "expected `+` or `-` between terms")),
        }
        first = false;
        let mut coeff = sign;
        let mut saw_number = false;
        if let Some(Token::Num(v)) = tokens.get(i) {
            coeff *= v;
            saw_number = true;
            i += 1;
            if tokens.get(i) == Some(&Token::Star) {
                i += 1;
                if !matches!(tokens.get(i), Some(Token::Ident(_))) {
                    return Err(syntax(line, "expected a variable after `*`"));
                }
            }
        }
        match tokens.get(i) {
            Some(Token::Ident(name)) => {
                let &idx = names
                    .get(name)
                    .ok_or_else(|| syntax(line, format!("unknown variable `{name}`")))?;
                *out.coeffs.entry(idx).or_insert_with(Rational::zero) += coeff;
                i += 1;
            }
            _ if saw_number => out.constant += coeff,
            _ => return Err(syntax(line, "expected a number or a variable")),
        }
    }
    Ok(out)
}

fn parse_bound(text: &str, line: usize) -> Result<Option<Rational>, ParseError> {
    match text {
        "inf" | "+inf" | "-inf" => Ok(None),
        _ => {
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, text),
            };
            let v = parse_rational(body).map_err(|_| syntax(line, format!("bad bound `{text}`")))?;
            Ok(Some(if neg { -v } else { v }))
        }
    }
}

pub fn parse_problem_str(text: &str) -> Result<MomilpProblem, ParseError> {
    let mut k: Option<(usize, usize)> = None;
    let mut variables: Vec<Variable> = Vec::new();
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    let mut objectives: Vec<Linear> = Vec::new();
    let mut constraints: Vec<(Linear, Relation)> = Vec::new();
    let mut last_line = 0;

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match keyword {
            "objectives" => {
                if k.is_some() {
                    return Err(syntax(line, "objective count declared twice"));
                }
                let count: usize = rest
                    .parse()
                    .map_err(|_| syntax(line, format!("bad objective count `{rest}`")))?;
                if count < 2 {
                    return Err(syntax(line, "at least two objectives are required"));
                }
                k = Some((count, line));
            }
            "int" | "cont" => {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let Some(&name) = fields.first() else {
                    return Err(syntax(line, "variable name expected"));
                };
                if !name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                    || !name.chars().all(|c| c.is_alphanumeric() || c == '_')
                {
                    return Err(syntax(line, format!("bad variable name `{name}`")));
                }
                if names.contains_key(name) {
                    return Err(syntax(line, format!("variable `{name}` declared twice")));
                }
                let (lower, upper) = match fields.len() {
                    1 if keyword == "cont" => (Some(Rational::zero()), None),
                    1 => (None, None),
                    3 => (parse_bound(fields[1], line)?, parse_bound(fields[2], line)?),
                    _ => return Err(syntax(line, "expected `NAME LOWER UPPER`")),
                };
                if keyword == "int" && (lower.is_none() || upper.is_none()) {
                    return Err(syntax(line, "integer variable requires finite bounds"));
                }
                let var = if keyword == "int" {
                    Variable {
                        kind: momilp_core::VarKind::Integer,
                        ..Variable::continuous(name, lower, upper)
                    }
                } else {
                    Variable::continuous(name, lower, upper)
                };
                names.insert(name.to_string(), variables.len());
                variables.push(var);
            }
            "min" => {
                let tokens = tokenize(rest, line)?;
                objectives.push(parse_linear(&tokens, &names, line)?);
            }
            "st" => {
                let tokens = tokenize(rest, line)?;
                let rels: Vec<usize> = (0..tokens.len()).filter(|&i| matches!(tokens[i], Token::Rel(_))).collect();
                let [at] = rels[..] else {
                    return Err(syntax(line, "a constraint needs exactly one of `<=`, `>=`, `=`"));
                };
                let Token::Rel(rel) = tokens[at] else { unreachable!() };
                let lhs = parse_linear(&tokens[..at], &names, line)?;
                let rhs = parse_linear(&tokens[at + 1..], &names, line)?;
                let mut diff = lhs;
                for (i, c) in rhs.coeffs {
                    *diff.coeffs.entry(i).or_insert_with(Rational::zero) -= c;
                }
                diff.constant -= rhs.constant;
                constraints.push((diff, rel));
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }

    let Some((count, decl_line)) = k else {
        return Err(syntax(last_line.max(1), "missing `objectives` declaration"));
    };
    if objectives.len() != count {
        return Err(syntax(
            decl_line,
            format!("{count} objectives declared, {} given", objectives.len()),
        ));
    }
    let n = variables.len();
    let offsets = objectives.iter().map(|o| o.constant.clone()).collect();
    let rows = objectives.iter().map(|o| o.dense(n)).collect();
    let constraints = constraints
        .into_iter()
        .map(|(l, rel)| Constraint::new(l.dense(n), rel, -l.constant))
        .collect();
    MomilpProblem::new(variables, rows, offsets, constraints).map_err(|e| syntax(last_line, e.to_string()))
}
