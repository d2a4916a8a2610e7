//! Text form: terms joined by `+`, factors `var^e` joined by `*`, `1` for the
//! empty product and `0` for the zero polynomial. The parser also accepts
//! parenthesised groups with exponents, which the printer never emits.

use super::{var_cmp, Exps, MvPoly, MvPolyError};

/// Variables accepted by [`parse`].
pub const KNOWN_VARS: &[&str] = &[
    "a", "b", "b1", "k", "z", "Y", "X", "D0", "D1", "D2", "D3", "E0", "E1", "E2", "E3", "F0", "F1",
    "F2", "F3", "F4", "F5", "F6",
];

pub fn parse(text: &str) -> Result<MvPoly, MvPolyError> {
    parse_with_vars(text, KNOWN_VARS)
}

/// Parse, accepting only the listed variable names.
pub fn parse_with_vars<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<MvPoly, MvPolyError> {
    parse_with_resolver(text, vars, &|_| None)
}

/// Parse with `@name` factors looked up through `resolve`.
pub fn parse_with_resolver<S: AsRef<str>>(
    text: &str,
    vars: &[S],
    resolve: &dyn Fn(&str) -> Option<MvPoly>,
) -> Result<MvPoly, MvPolyError> {
    let mut p = Parser {
        s: text.as_bytes(),
        i: 0,
        vars: vars.iter().map(|v| v.as_ref()).collect(),
        resolve,
    };
    p.skip_ws();
    if p.i == p.s.len() {
        return Err(p.err("empty input"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    vars: Vec<&'a str>,
    resolve: &'a dyn Fn(&str) -> Option<MvPoly>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> MvPolyError {
        MvPolyError::Parse {
            pos: self.i,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<MvPoly, MvPolyError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.i += 1;
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MvPoly, MvPolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MvPoly, MvPolyError> {
        let base = match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => match self.number()? {
                0 => MvPoly::zero(),
                1 => MvPoly::one(),
                _ => return Err(self.err("coefficients must be 0 or 1")),
            },
            Some(b'@') => {
                self.i += 1;
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_')
                {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                (self.resolve)(name).ok_or_else(|| {
                    self.i = start;
                    MvPolyError::UnknownVariable(format!("@{name}"))
                })?
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_alphanumeric() {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                if !self.vars.contains(&name) {
                    self.i = start;
                    return Err(MvPolyError::UnknownVariable(name.to_string()));
                }
                MvPoly::var(name)
            }
            _ => return Err(self.err("expected a variable, constant or '('")),
        };
        if self.peek() == Some(b'^') {
            self.i += 1;
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {}
                _ => return Err(self.err("malformed exponent")),
            }
            let e = self.number()?;
            let e = u32::try_from(e)
                .ok()
                .filter(|&e| e <= u16::MAX as u32)
                .ok_or_else(|| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64, MvPolyError> {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .expect("ascii")
            .parse()
            .map_err(|_| self.err("number out of range"))
    }
}

pub(crate) fn format_term(vars: &[String], t: &Exps) -> String {
    let fs: Vec<String> = vars
        .iter()
        .enumerate()
        .filter(|(i, _)| t[*i] != 0)
        .map(|(i, v)| match t[i] {
            1 => v.clone(),
            e => format!("{v}^{e}"),
        })
        .collect();
    if fs.is_empty() {
        "1".to_string()
    } else {
        fs.join("*")
    }
}

impl MvPoly {
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.term_strings().join(" + ")
    }

    pub(crate) fn term_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|t| format_term(&self.vars, t))
            .collect()
    }

    /// True when `vars` is in canonical order; used to validate corpus headers.
    pub fn is_canonical_var_list<S: AsRef<str>>(vars: &[S]) -> bool {
        vars.windows(2)
            .all(|w| var_cmp(w[0].as_ref(), w[1].as_ref()).is_lt())
    }
}
