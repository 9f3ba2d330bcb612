//! Text formats: the field description grammar, canonical element strings,
//! and a small arithmetic-expression evaluator used for both element input
//! and extension moduli.
//!
//! ```text
//! field   := atom suffix*
//! atom    := "Q" | "F" <prime>
//! suffix  := "[" var "]/(" <monic poly in var> ")" | "(" var ")"
//! ```

use num_bigint::BigInt;

use super::{Field, FieldKind, Value};
use crate::error::{Error, Result};
use crate::poly::dense;

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn parse_field(src: &str) -> Result<Field> {
    let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |m: &str| Error::parse(format!("field `{src}`: {m}"));
    let mut pos;
    let mut field = match s.first() {
        Some('Q') => {
            pos = 1;
            Field::rational()
        }
        Some('F') => {
            pos = 1;
            while pos < s.len() && s[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = s[1..pos].iter().collect();
            if digits.is_empty() {
                return Err(err("expected a prime after `F`"));
            }
            let p: u64 = digits
                .parse()
                .map_err(|_| Error::Unsupported(format!("prime {digits} exceeds 64 bits")))?;
            Field::prime(p)?
        }
        _ => return Err(err("expected `Q` or `F<p>`")),
    };
    while pos < s.len() {
        match s[pos] {
            '[' => {
                let close = find_from(&s, pos, ']').ok_or_else(|| err("unclosed `[`"))?;
                let var: String = s[pos + 1..close].iter().collect();
                if s.get(close + 1) != Some(&'/') || s.get(close + 2) != Some(&'(') {
                    return Err(err("expected `/(` after the variable"));
                }
                let open = close + 2;
                let end = matching_paren(&s, open).ok_or_else(|| err("unbalanced `(`"))?;
                let text: String = s[open + 1..end].iter().collect();
                if !is_identifier(&var) {
                    return Err(err(&format!("invalid variable `{var}`")));
                }
                let modulus = parse_poly(&field, &var, &text)?;
                field = Field::extension(&field, &var, modulus)?;
                pos = end + 1;
            }
            '(' => {
                let close = find_from(&s, pos, ')').ok_or_else(|| err("unclosed `(`"))?;
                let var: String = s[pos + 1..close].iter().collect();
                field = Field::function_field(&field, &var)?;
                pos = close + 1;
            }
            c => return Err(err(&format!("unexpected `{c}`"))),
        }
    }
    Ok(field)
}

fn find_from(s: &[char], from: usize, c: char) -> Option<usize> {
    s[from..].iter().position(|&x| x == c).map(|i| i + from)
}

fn matching_paren(s: &[char], open: usize) -> Option<usize> {
    let mut depth = 0;
    for (i, &c) in s.iter().enumerate().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Parses a polynomial expression in `var` with coefficients in `base`.
pub(crate) fn parse_poly(base: &Field, var: &str, text: &str) -> Result<Vec<Value>> {
    let alg = PolyAlgebra { base, var };
    eval_expr(&alg, text)
}

pub(crate) fn format_value(field: &Field, v: &Value) -> String {
    match (field.kind(), v) {
        (FieldKind::Rational, Value::Rational(r)) => r.to_string(),
        (FieldKind::Prime(_), Value::Residue(x)) => x.to_string(),
        (FieldKind::Extension { base, modulus, .. }, Value::Ext(c)) => {
            let n = modulus.len() - 1;
            let items: Vec<String> = (0..n)
                .map(|i| match c.get(i) {
                    Some(x) => base.format(x),
                    None => base.format(&base.zero()),
                })
                .collect();
            format!("[{}]", items.join(","))
        }
        (FieldKind::FunctionField { base, .. }, Value::Frac(n, d)) => {
            format!("{}|{}", format_list(base, n), format_list(base, d))
        }
        _ => panic!("value {v:?} does not belong to field {field}"),
    }
}

fn format_list(base: &Field, c: &[Value]) -> String {
    let items: Vec<String> = c.iter().map(|x| base.format(x)).collect();
    format!("[{}]", items.join(","))
}

pub(crate) fn parse_value(field: &Field, s: &str) -> Result<Value> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse(format!("empty element for field {field}")));
    }
    match field.kind() {
        FieldKind::Extension { base, modulus, .. } if s.starts_with('[') => {
            let items = split_list(s)?;
            if items.len() > modulus.len() - 1 {
                return Err(Error::parse(format!(
                    "`{s}` has more than {} coefficients",
                    modulus.len() - 1
                )));
            }
            let c = items
                .iter()
                .map(|x| base.parse_value(x))
                .collect::<Result<Vec<_>>>()?;
            Ok(Value::Ext(dense::trimmed(c)))
        }
        FieldKind::FunctionField { base, .. } if top_level_pipe(s).is_some() => {
            let at = top_level_pipe(s).unwrap();
            let parse_side = |t: &str| -> Result<Vec<Value>> {
                split_list(t.trim())?
                    .iter()
                    .map(|x| base.parse_value(x))
                    .collect::<Result<Vec<_>>>()
                    .map(dense::trimmed)
            };
            let num = parse_side(&s[..at])?;
            let den = parse_side(&s[at + 1..])?;
            if den.is_empty() {
                return Err(Error::DivisionByZero);
            }
            field.canonical(&Value::Frac(num, den))
        }
        _ => eval_expr(&FieldAlgebra { field }, s),
    }
}

fn top_level_pipe(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '|' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Splits `[a,b,...]` on top-level commas.
fn split_list(s: &str) -> Result<Vec<String>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(format!("expected a bracketed list, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur).trim().to_string());
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(Error::parse(format!("unbalanced brackets in `{s}`")));
    }
    out.push(cur.trim().to_string());
    Ok(out)
}

// ---------------------------------------------------------------------------
// rendering

pub(crate) fn render_value(field: &Field, v: &Value) -> String {
    match (field.kind(), v) {
        (FieldKind::Rational, Value::Rational(r)) => r.to_string(),
        (FieldKind::Prime(_), Value::Residue(x)) => x.to_string(),
        (FieldKind::Extension { base, var, .. }, Value::Ext(c)) => render_poly(base, c, var),
        (FieldKind::FunctionField { base, var }, Value::Frac(n, d)) => {
            if d.len() == 1 {
                render_poly(base, n, var)
            } else {
                format!(
                    "({})/({})",
                    render_poly(base, n, var),
                    render_poly(base, d, var)
                )
            }
        }
        _ => panic!("value {v:?} does not belong to field {field}"),
    }
}

fn is_atomic(s: &str) -> bool {
    let t = s.strip_prefix('-').unwrap_or(s);
    if !t.is_empty() && t.chars().all(|c| c.is_ascii_digit()) {
        return true;
    }
    match s.split_once('^') {
        Some((v, e)) => is_identifier(v) && e.chars().all(|c| c.is_ascii_digit()),
        None => is_identifier(s),
    }
}

/// Descending-degree expression for a polynomial in `var`.
pub(crate) fn render_poly(base: &Field, c: &[Value], var: &str) -> String {
    let mut out = String::new();
    for (i, x) in c.iter().enumerate().rev() {
        if x.is_zero() {
            continue;
        }
        let cs = base.render(x);
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            cs
        } else if base.is_one(x) {
            mon
        } else if cs == "-1" {
            format!("-{mon}")
        } else if is_atomic(&cs) {
            format!("{cs}*{mon}")
        } else {
            format!("({cs})*{mon}")
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

// ---------------------------------------------------------------------------
// expressions

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

trait Algebra {
    type T: Clone;
    fn number(&self, n: &BigInt) -> Result<Self::T>;
    fn ident(&self, name: &str) -> Result<Self::T>;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    fn div(&self, a: &Self::T, b: &Self::T) -> Result<Self::T>;
    fn pow(&self, a: &Self::T, e: u64) -> Self::T;
}

struct FieldAlgebra<'a> {
    field: &'a Field,
}

fn tower_generator(field: &Field, name: &str) -> Option<Value> {
    match field.kind() {
        FieldKind::Extension { var, .. } | FieldKind::FunctionField { var, .. } if var == name => {
            field.generator()
        }
        _ => {
            let base = field.base()?;
            let g = tower_generator(base, name)?;
            field.embed(base, &g).ok()
        }
    }
}

impl Algebra for FieldAlgebra<'_> {
    type T = Value;
    fn number(&self, n: &BigInt) -> Result<Value> {
        Ok(self.field.from_bigint(n))
    }
    fn ident(&self, name: &str) -> Result<Value> {
        tower_generator(self.field, name).ok_or_else(|| {
            Error::parse(format!("unknown variable `{name}` in field {}", self.field))
        })
    }
    fn add(&self, a: &Value, b: &Value) -> Value {
        self.field.add(a, b)
    }
    fn sub(&self, a: &Value, b: &Value) -> Value {
        self.field.sub(a, b)
    }
    fn mul(&self, a: &Value, b: &Value) -> Value {
        self.field.mul(a, b)
    }
    fn neg(&self, a: &Value) -> Value {
        self.field.neg(a)
    }
    fn div(&self, a: &Value, b: &Value) -> Result<Value> {
        self.field.div(a, b)
    }
    fn pow(&self, a: &Value, e: u64) -> Value {
        self.field.pow_u64(a, e)
    }
}

struct PolyAlgebra<'a> {
    base: &'a Field,
    var: &'a str,
}

impl Algebra for PolyAlgebra<'_> {
    type T = Vec<Value>;
    fn number(&self, n: &BigInt) -> Result<Vec<Value>> {
        Ok(dense::trimmed(vec![self.base.from_bigint(n)]))
    }
    fn ident(&self, name: &str) -> Result<Vec<Value>> {
        if name == self.var {
            return Ok(vec![self.base.zero(), self.base.one()]);
        }
        let c = FieldAlgebra { field: self.base }.ident(name)?;
        Ok(dense::trimmed(vec![c]))
    }
    fn add(&self, a: &Vec<Value>, b: &Vec<Value>) -> Vec<Value> {
        dense::add(self.base, a, b)
    }
    fn sub(&self, a: &Vec<Value>, b: &Vec<Value>) -> Vec<Value> {
        dense::sub(self.base, a, b)
    }
    fn mul(&self, a: &Vec<Value>, b: &Vec<Value>) -> Vec<Value> {
        dense::mul(self.base, a, b)
    }
    fn neg(&self, a: &Vec<Value>) -> Vec<Value> {
        dense::neg(self.base, a)
    }
    fn div(&self, a: &Vec<Value>, b: &Vec<Value>) -> Result<Vec<Value>> {
        match b.as_slice() {
            [] => Err(Error::DivisionByZero),
            [c] => Ok(dense::scale(self.base, a, &self.base.inv(c)?)),
            _ => Err(Error::parse(format!(
                "division by a non-constant polynomial in `{}`",
                self.var
            ))),
        }
    }
    fn pow(&self, a: &Vec<Value>, e: u64) -> Vec<Value> {
        dense::pow(self.base, a, e)
    }
}

fn eval_expr<A: Algebra>(alg: &A, s: &str) -> Result<A::T> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::parse("empty expression"));
    }
    let mut p = ExprParser {
        toks,
        pos: 0,
        alg,
        src: s,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct ExprParser<'a, A: Algebra> {
    toks: Vec<Tok>,
    pos: usize,
    alg: &'a A,
    src: &'a str,
}

impl<A: Algebra> ExprParser<'_, A> {
    fn error(&self, msg: &str) -> Error {
        Error::parse(format!("{msg} in expression `{}`", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<A::T> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.alg.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.alg.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A::T> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = self.alg.mul(&acc, &t);
            } else if self.eat('/') {
                let t = self.unary()?;
                acc = self.alg.div(&acc, &t)?;
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))
            ) {
                // implicit product, e.g. `3z^2`
                let t = self.power()?;
                acc = self.alg.mul(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<A::T> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.alg.neg(&v));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<A::T> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u64 = n
                        .try_into()
                        .map_err(|_| self.error("exponent out of range"))?;
                    return Ok(self.alg.pow(&base, e));
                }
                _ => return Err(self.error("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<A::T> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                self.alg.number(&n)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.alg.ident(&name)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert!(is_identifier("w"));
        assert!(is_identifier("a12"));
        assert!(!is_identifier("1a"));
        assert!(!is_identifier(""));
    }

    #[test]
    fn list_splitting() {
        assert_eq!(split_list("[1,[2,3],4]").unwrap(), vec!["1", "[2,3]", "4"]);
        assert_eq!(split_list("[]").unwrap(), Vec::<String>::new());
        assert!(split_list("1,2").is_err());
    }

    #[test]
    fn render_round_trip() {
        let f = Field::parse("F2[w]/(w^2+w+1)").unwrap();
        assert_eq!(f.descriptor(), "F2[w]/(w^2+w+1)");
        let g = Field::parse("F2[w]/(w^2+w+1)[v]/(v^3+w)").unwrap();
        assert_eq!(g.descriptor(), "F2[w]/(w^2+w+1)[v]/(v^3+w)");
        assert_eq!(Field::parse(g.descriptor()).unwrap(), g);
        let q = Field::parse("Q[s]/( s^2 - 2 )").unwrap();
        assert_eq!(q.descriptor(), "Q[s]/(s^2-2)");
    }

    #[test]
    fn expression_precedence() {
        let q = Field::rational();
        let v = q.parse_value("-2/3*3+1").unwrap();
        assert_eq!(q.format(&v), "-1");
        let v = q.parse_value("2^3-(1+1)^2").unwrap();
        assert_eq!(q.format(&v), "4");
        assert!(q.parse_value("2^").is_err());
        assert!(q.parse_value("x").is_err());
    }
}
