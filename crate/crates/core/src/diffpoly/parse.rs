//! Text grammar for differential polynomials and system files.
//!
//! ```text
//! poly   := ['-'|'+'] term (('+'|'-') term)*
//! term   := coeff ['*' factor]* | factor ('*' factor)*
//! coeff  := int ['/' int] | '(' tpoly ')' ['/' '(' tpoly ')']
//! factor := ident ['_' nat] ['^' nat]
//! ```
//!
//! A system file starts with `vars: x, y; order: l;` (optionally followed by
//! `consts: a, b;`) and then lists one polynomial per line. Blank lines and
//! lines starting with `#` are skipped.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{is_ident, DiffPolynomial, JetLayout};
use crate::error::{Error, Result};
use crate::ratfunc::{RationalFunction, UniPoly};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.offset + self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn int(&mut self) -> Result<BigInt> {
        Ok(self.digits()?.parse().unwrap())
    }

    fn nat(&mut self) -> Result<u32> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse().or_else(|_| {
            self.pos = at;
            self.err("exponent too large")
        })
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        } else {
            self.err("expected an identifier")
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.int()?;
        let save = self.pos;
        if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let d = self.int()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(BigRational::new(n, d));
        }
        self.pos = save;
        Ok(BigRational::from_integer(n))
    }

    fn t_term(&mut self) -> Result<UniPoly> {
        let c = match self.peek() {
            Some(d) if d.is_ascii_digit() => {
                let c = self.rational()?;
                if !self.eat(b'*') {
                    return Ok(UniPoly::constant(c));
                }
                c
            }
            _ => BigRational::one(),
        };
        let at = self.pos;
        if self.ident()? != "t" {
            self.pos = at;
            self.ws();
            return self.err("only `t` may appear inside a coefficient");
        }
        let e = if self.eat(b'^') { self.nat()? } else { 1 };
        let mut coeffs = vec![BigRational::zero(); e as usize + 1];
        coeffs[e as usize] = c;
        Ok(UniPoly::from_coeffs(coeffs))
    }

    fn t_poly(&mut self) -> Result<UniPoly> {
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = UniPoly::zero();
        loop {
            let term = self.t_term()?;
            acc = if neg { &acc - &term } else { &acc + &term };
            match self.peek() {
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn coeff(&mut self) -> Result<RationalFunction> {
        if self.eat(b'(') {
            let num = self.t_poly()?;
            self.expect(b')')?;
            let save = self.pos;
            if self.eat(b'/') {
                if !self.eat(b'(') {
                    self.pos = save;
                    self.ws();
                    return self.err("denominator of a t-coefficient must be parenthesized");
                }
                let den = self.t_poly()?;
                self.expect(b')')?;
                return match RationalFunction::new(num, den) {
                    Some(r) => Ok(r),
                    None => self.err("zero denominator"),
                };
            }
            Ok(RationalFunction::from_poly(num))
        } else {
            Ok(RationalFunction::from_rational(self.rational()?))
        }
    }

    fn factor(&mut self, layout: &JetLayout, exps: &mut [u32]) -> Result<()> {
        let at = self.pos;
        let name = self.ident()?;
        let order = if self.src.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            Some(self.nat()?)
        } else {
            None
        };
        let e = if self.eat(b'^') { self.nat()? } else { 1 };
        if let Some(i) = layout.var_index(name) {
            let j = order.unwrap_or(0);
            if j > layout.order() {
                return Err(Error::JetOrderExceeded { var: name.to_string(), order: j, max: layout.order() });
            }
            exps[layout.index(i, j)] += e;
        } else if let Some(k) = layout.const_index(name) {
            if order.is_some() {
                self.pos = at;
                self.ws();
                return self.err(format!("constant `{name}` has no derivatives"));
            }
            exps[layout.s() + k] += e;
        } else if name == "t" {
            self.pos = at;
            self.ws();
            return self.err("`t` belongs in a parenthesized coefficient");
        } else {
            return Err(Error::UnknownVariable(name.to_string()));
        }
        Ok(())
    }

    fn term(&mut self, layout: &JetLayout) -> Result<(Vec<u32>, RationalFunction)> {
        let mut exps = vec![0; layout.s() + layout.constants().len()];
        let c = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'(' => {
                let c = self.coeff()?;
                if !self.eat(b'*') {
                    return Ok((exps, c));
                }
                c
            }
            Some(_) => RationalFunction::one(),
            None => return self.err("unexpected end of input"),
        };
        loop {
            self.factor(layout, &mut exps)?;
            if !self.eat(b'*') {
                return Ok((exps, c));
            }
        }
    }

    fn poly(&mut self, layout: &JetLayout) -> Result<DiffPolynomial> {
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut terms = Vec::new();
        loop {
            let (e, c) = self.term(layout)?;
            terms.push((e, if neg { -&c } else { c }));
            match self.peek() {
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                None => break,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        DiffPolynomial::from_terms(layout, terms)
    }
}

/// Parses a single polynomial over `layout`.
pub fn parse_poly(text: &str, layout: &JetLayout) -> Result<DiffPolynomial> {
    parse_at(text, 0, layout)
}

fn parse_at(text: &str, offset: usize, layout: &JetLayout) -> Result<DiffPolynomial> {
    Parser { src: text.as_bytes(), pos: 0, offset }.poly(layout)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemFile {
    pub layout: JetLayout,
    pub polys: Vec<DiffPolynomial>,
}

fn parse_header(line: &str, offset: usize) -> Result<JetLayout> {
    let bad = |msg: &str| Error::Syntax { pos: offset, msg: msg.to_string() };
    let mut vars = None;
    let mut order = None;
    let mut consts: Vec<String> = Vec::new();
    for item in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once(':').ok_or_else(|| bad("header entries look like `key: value`"))?;
        let list = || -> Result<Vec<String>> {
            let names: Vec<String> = value.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
            match names.iter().find(|n| !is_ident(n)) {
                Some(n) => Err(bad(&format!("`{n}` is not an identifier"))),
                None => Ok(names),
            }
        };
        match key.trim() {
            "vars" => vars = Some(list()?),
            "consts" => consts = list()?,
            "order" => order = Some(value.trim().parse::<u32>().map_err(|_| bad("order must be a natural number"))?),
            other => return Err(bad(&format!("unknown header key `{other}`"))),
        }
    }
    let vars = vars.ok_or_else(|| bad("header is missing `vars:`"))?;
    let order = order.ok_or_else(|| bad("header is missing `order:`"))?;
    JetLayout::with_constants(&vars, order, &consts)
}

/// Parses a system file: header line, then one polynomial per line.
pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut layout = None;
    let mut polys = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches(['\n', '\r']);
        let here = offset;
        offset += raw.len();
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match &layout {
            None => layout = Some(parse_header(line, here)?),
            Some(l) => polys.push(parse_at(line, here, l)?),
        }
    }
    let layout = layout.ok_or(Error::Syntax { pos: 0, msg: "missing `vars: ...; order: ...;` header".into() })?;
    Ok(SystemFile { layout, polys })
}

/// Parses a system whose header names a base layout but whose polynomials
/// live on its first prolongation (`x_1` denoting the prolongation of `x`).
pub fn parse_prolongated_system(text: &str) -> Result<(JetLayout, Vec<DiffPolynomial>)> {
    let mut base = None;
    let mut ext = None;
    let mut polys = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches(['\n', '\r']);
        let here = offset;
        offset += raw.len();
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match &ext {
            None => {
                let b = parse_header(line, here)?;
                ext = Some(b.first_prolongation());
                base = Some(b);
            }
            Some(l) => polys.push(parse_at(line, here, l)?),
        }
    }
    let base = base.ok_or(Error::Syntax { pos: 0, msg: "missing `vars: ...; order: ...;` header".into() })?;
    Ok((base, polys))
}

impl SystemFile {
    /// Renders the file back in parseable form.
    pub fn to_text(&self) -> String {
        let l = &self.layout;
        let mut out = format!("vars: {}; order: {};", l.vars().join(", "), l.order());
        if !l.constants().is_empty() {
            out.push_str(&format!(" consts: {};", l.constants().join(", ")));
        }
        out.push('\n');
        for p in &self.polys {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> JetLayout {
        JetLayout::new(&["x", "y"], 1).unwrap()
    }

    #[test]
    fn parses_simple_polynomial() {
        let p = parse_poly("x*y - 1", &JetLayout::new(&["x", "y"], 0).unwrap()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&[1, 1]), RationalFunction::one());
        assert_eq!(p.coefficient(&[0, 0]), RationalFunction::from_int(-1));
    }

    #[test]
    fn parses_t_coefficients() {
        let p = parse_poly("(t^2 + 1)/(t - 3)*x_1^2 - 3/4*y", &xy()).unwrap();
        let c = p.coefficient(&[0, 2, 0, 0]);
        assert_eq!(
            c,
            RationalFunction::new(UniPoly::from_ints(&[1, 0, 1]), UniPoly::from_ints(&[-3, 1])).unwrap()
        );
        assert_eq!(p.coefficient(&[0, 0, 1, 0]), RationalFunction::from_rational(BigRational::new((-3).into(), 4.into())));
        let q = parse_poly("(2*t)*x + (-t + 5)", &xy()).unwrap();
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn repeated_factors_multiply() {
        let p = parse_poly("x*x_1*x", &xy()).unwrap();
        assert_eq!(p.coefficient(&[2, 1, 0, 0]), RationalFunction::one());
    }

    #[test]
    fn errors() {
        let l = xy();
        assert_eq!(parse_poly("z + 1", &l), Err(Error::UnknownVariable("z".into())));
        assert_eq!(
            parse_poly("x_2", &l),
            Err(Error::JetOrderExceeded { var: "x".into(), order: 2, max: 1 })
        );
        assert!(matches!(parse_poly("x +", &l), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x * * y", &l), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("t*x", &l), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0*x", &l), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(t)/(0)", &l), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x y", &l), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn system_file_round_trip() {
        let text = "# hyperbola\nvars: x, y; order: 1; consts: c;\n\nx*y - 1\nx_1*y + x*y_1 - c\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(sys.layout.n(), 2);
        assert_eq!(sys.layout.constants(), &["c"]);
        assert_eq!(sys.polys.len(), 2);
        assert_eq!(parse_system(&sys.to_text()).unwrap(), sys);
    }

    #[test]
    fn system_file_errors_report_absolute_offsets() {
        let text = "vars: x; order: 0;\nx + + 1\n";
        match parse_system(text) {
            Err(Error::Syntax { pos, .. }) => assert!(pos >= 19),
            other => panic!("{other:?}"),
        }
        assert!(parse_system("x + 1\n").is_err());
        assert!(parse_system("vars: x;\n").is_err());
    }
}
