//! Text forms: an expression parser for rational functions in `x` (and `t` for
//! extension fields), coefficient lists, and renderers for every value type.

use crate::algebraic::AlgebraicRelation;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::noncomm::{NcSeries, Word};
use crate::rational::{rat_expand, RationalFunction};
use crate::series::Series;

const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    X,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    n.push(d);
                    chars.next();
                }
                out.push(Tok::Num(n));
            }
            _ => {
                chars.next();
                out.push(match c {
                    'x' | 'X' => Tok::X,
                    't' => Tok::T,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
                });
            }
        }
    }
    Ok(out)
}

fn residue(field: &Field, digits: &str) -> Elem {
    let p = field.characteristic() as u64;
    let r = digits.bytes().fold(0u64, |acc, d| (acc * 10 + u64::from(d - b'0')) % p);
    field.from_u64(r)
}

struct Parser<'a> {
    field: &'a Field,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn constant(&self, c: Elem) -> RationalFunction {
        RationalFunction::polynomial(self.field, vec![c])
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().cloned() {
            match op {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg())?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.div(&d)?;
                }
                Some(Tok::Num(_) | Tok::X | Tok::T | Tok::LParen) => {
                    acc = acc.mul(&self.power()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let exp = match self.bump() {
            Some(Tok::Num(n)) => n.parse::<u64>().ok().filter(|&e| e <= MAX_EXPONENT),
            _ => None,
        }
        .ok_or_else(|| Error::Parse(format!("exponent must be an integer in [0, {MAX_EXPONENT}]")))?;
        Ok(base.pow(exp as u32))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(self.constant(residue(self.field, &n))),
            Some(Tok::X) => Ok(RationalFunction::polynomial(self.field, vec![Elem::ZERO, Elem::ONE])),
            Some(Tok::T) => {
                if self.field.is_prime_field() {
                    return Err(Error::Parse("'t' is only defined in extension fields".into()));
                }
                Ok(self.constant(self.field.generator()))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// A rational function written with `+ - * / ^`, parentheses, `x`, `t` and integers.
pub fn parse_rational(field: &Field, s: &str) -> Result<RationalFunction> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { field, toks, pos: 0 };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(r)
}

fn parse_int_list(s: &str) -> Option<Vec<i64>> {
    let parts: Vec<&str> = s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
    if parts.len() < 2 && !s.contains(',') {
        return None;
    }
    parts.iter().map(|t| t.parse::<i64>().ok()).collect()
}

/// A series given as a coefficient list (`"1,1,0"` or `"1 1 0"`, order = its length)
/// or as an expression expanded to `order`.
pub fn parse_series(field: &Field, s: &str, order: usize) -> Result<Series> {
    let s = s.trim();
    if let Some(values) = parse_int_list(s) {
        if values.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        return Series::from_ints(field, &values);
    }
    if order == 0 {
        return Err(Error::Parse("order must be positive".into()));
    }
    rat_expand(&parse_rational(field, s)?, order)
}

/// `"2*[1,2] + [2,1] - [] "`: letters are 1-based; a bare integer is a constant.
pub fn parse_nc(field: &Field, letters: usize, degree: usize, s: &str) -> Result<NcSeries> {
    let bad = |m: &str| Error::Parse(format!("non-commutative series: {m}"));
    let mut pieces: Vec<(bool, &str)> = Vec::new();
    let (mut depth, mut start, mut negative) = (0i32, 0usize, false);
    let src = s.trim();
    for (i, ch) in src.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let piece = src[start..i].trim();
                if !piece.is_empty() {
                    pieces.push((negative, piece));
                } else if !pieces.is_empty() || i > start {
                    return Err(bad("empty term"));
                }
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(bad("unbalanced brackets"));
        }
    }
    let last = src[start..].trim();
    if last.is_empty() {
        return Err(bad("empty term"));
    }
    pieces.push((negative, last));

    let mut terms: Vec<(Word, Elem)> = Vec::new();
    for (negative, piece) in pieces {
        let (coeff_text, word) = match piece.find('[') {
            Some(open) => {
                let inner = piece[open + 1..].strip_suffix(']').ok_or_else(|| bad("expected ']' at end of term"))?;
                let word = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| match t.parse::<usize>() {
                        Ok(i) if (1..=letters).contains(&i) => Ok(i - 1),
                        _ => Err(bad(&format!("letter {t:?} not in 1..={letters}"))),
                    })
                    .collect::<Result<Word>>()?;
                let c = piece[..open].trim_end();
                let c = match c.strip_suffix('*') {
                    Some(c) => c.trim_end(),
                    None if c.is_empty() => c,
                    None => return Err(bad("expected '*' before '['")),
                };
                (c, word)
            }
            None => (piece, Vec::new()),
        };
        let coeff = if coeff_text.is_empty() { Elem::ONE } else { parse_elem(field, coeff_text)? };
        terms.push((word, if negative { field.neg(coeff) } else { coeff }));
    }
    NcSeries::from_terms(field, letters, degree, &terms)
}

fn parse_elem(field: &Field, s: &str) -> Result<Elem> {
    let r = parse_rational(field, s)?;
    if r.num().len() > 1 || r.den().len() > 1 {
        return Err(Error::Parse(format!("{s:?} is not a field element")));
    }
    Ok(r.constant_term())
}

/// Field element: an integer in a prime field, `a0+a1*t+...` otherwise.
pub fn render_elem(field: &Field, a: Elem) -> String {
    if field.is_prime_field() {
        return a.packed().to_string();
    }
    let terms: Vec<String> = field
        .coords(a)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| monomial(&c.to_string(), "t", i))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// `c*v^n` with `1*` and `^1` elided.
fn monomial(c: &str, var: &str, n: usize) -> String {
    let power = match n {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{n}"),
    };
    match (c, n) {
        (_, 0) => c.to_string(),
        ("1", _) => power,
        _ => format!("{c}*{power}"),
    }
}

fn wrapped_elem(field: &Field, a: Elem) -> String {
    let s = render_elem(field, a);
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

/// `c0 + c1*x + ...` listing nonzero terms; `0` when every known coefficient is zero.
pub fn render_series(s: &Series) -> String {
    let f = s.field();
    let terms: Vec<String> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, &c)| monomial(&wrapped_elem(f, c), "x", n))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Space-separated coefficients.
pub fn render_coeff_list(s: &Series) -> String {
    s.coeffs().iter().map(|&c| render_elem(s.field(), c)).collect::<Vec<_>>().join(" ")
}

/// Compact polynomial with balanced residues in prime fields, e.g. `1-x^2-x^3`.
pub fn render_poly(field: &Field, coeffs: &[Elem]) -> String {
    let p = field.characteristic();
    let mut out = String::new();
    for (n, &c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (negative, body) = if field.is_prime_field() {
            let v = c.packed();
            if p > 2 && v > p / 2 { (true, (p - v).to_string()) } else { (false, v.to_string()) }
        } else {
            (false, wrapped_elem(field, c))
        };
        let term = monomial(&body, "x", n);
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn multi_term(coeffs: &[Elem]) -> bool {
    coeffs.iter().filter(|c| !c.is_zero()).count() > 1
}

pub fn render_rational(r: &RationalFunction) -> String {
    let f = r.field();
    let num = render_poly(f, r.num());
    if r.den() == [Elem::ONE] {
        return num;
    }
    let num = if multi_term(r.num()) { format!("({num})") } else { num };
    let den = render_poly(f, r.den());
    let den = if multi_term(r.den()) { format!("({den})") } else { den };
    format!("{num}/{den}")
}

/// `sum_j P_j(x)*y^j`, highest power of `y` first.
pub fn render_relation(r: &AlgebraicRelation) -> String {
    let terms: Vec<String> = r
        .coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, row)| row.iter().any(|c| !c.is_zero()))
        .map(|(j, row)| {
            let body = render_poly(&r.field, row);
            let body = if multi_term(row) && j > 0 { format!("({body})") } else { body };
            monomial(&body, "y", j)
        })
        .collect();
    let mut out = String::new();
    for t in terms {
        match (out.is_empty(), t.strip_prefix('-')) {
            (true, _) => out = t,
            (false, Some(rest)) => out = format!("{out} - {rest}"),
            (false, None) => out = format!("{out} + {t}"),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `c*[i,j,...]` terms with 1-based letters; `0` for the zero series.
pub fn render_nc(s: &NcSeries) -> String {
    let terms: Vec<String> = s
        .terms()
        .into_iter()
        .map(|(w, c)| {
            let letters: Vec<String> = w.iter().map(|x| (x + 1).to_string()).collect();
            format!("{}*[{}]", wrapped_elem(s.field(), c), letters.join(","))
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
