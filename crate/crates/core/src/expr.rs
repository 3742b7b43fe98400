//! Group expressions and their text syntax.
//!
//! ```text
//! expr := term { ('x' | '*') term }
//! term := atom { '^' int }
//! atom := 'Z' | 'S1' | 'F(' int ')' | 'M(' int ')' | 'N(' int ')' | '(' expr ')'
//! ```
//!
//! `M(g)` is the fundamental group of the closed orientable surface of genus
//! `g`, `N(q)` that of the non-orientable surface with `q` crosscaps, `F(k)`
//! the free group of rank `k`, and `Z`/`S1` the integers (the circle).
//! Whitespace is ignored everywhere.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupExpr {
    /// `Z`, the fundamental group of the circle.
    Integers,
    Free(u32),
    Orientable(u32),
    /// Non-orientable surface group, by crosscap number.
    NonOrientable(u32),
    Product(Vec<GroupExpr>),
}

impl GroupExpr {
    pub fn free(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Semantic(
                "F(0) is the trivial group; free groups need rank at least 1".into(),
            ));
        }
        Ok(GroupExpr::Free(k))
    }

    pub fn orientable(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Semantic(
                "M(0) is the sphere, which is not aspherical; genus must be at least 1".into(),
            ));
        }
        Ok(GroupExpr::Orientable(genus))
    }

    pub fn non_orientable(crosscaps: u32) -> Result<Self> {
        match crosscaps {
            0 => Err(Error::Semantic(
                "N(0) has no crosscaps (it is the sphere, which is not aspherical); \
                 crosscap number must be at least 2"
                    .into(),
            )),
            1 => Err(Error::Semantic(
                "N(1): the projective plane is not aspherical; crosscap number must be at least 2"
                    .into(),
            )),
            q => Ok(GroupExpr::NonOrientable(q)),
        }
    }

    /// Product of the given factors, with nested products flattened. A
    /// single factor is returned unwrapped.
    pub fn product(factors: impl IntoIterator<Item = GroupExpr>) -> Result<Self> {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                GroupExpr::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(Error::Semantic("empty product".into())),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(GroupExpr::Product(flat)),
        }
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Semantic("exponent must be at least 1".into()));
        }
        Self::product(std::iter::repeat_n(self.clone(), k as usize))
    }

    /// Checks the parameter constraints, recursively.
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupExpr::Integers => Ok(()),
            GroupExpr::Free(k) => Self::free(k).map(drop),
            GroupExpr::Orientable(g) => Self::orientable(g).map(drop),
            GroupExpr::NonOrientable(q) => Self::non_orientable(q).map(drop),
            GroupExpr::Product(ref fs) if fs.is_empty() => {
                Err(Error::Semantic("empty product".into()))
            }
            GroupExpr::Product(ref fs) => fs.iter().try_for_each(GroupExpr::validate),
        }
    }

    /// Non-product factors, with nested products flattened, in order.
    pub fn factors(&self) -> Vec<&GroupExpr> {
        match self {
            GroupExpr::Product(fs) => fs.iter().flat_map(GroupExpr::factors).collect(),
            other => vec![other],
        }
    }

    /// Flattened with factors sorted. Invariants are symmetric in the
    /// factors, so this is the cache key.
    pub fn normalized(&self) -> GroupExpr {
        let mut fs: Vec<GroupExpr> = self.factors().into_iter().cloned().collect();
        fs.sort();
        if fs.len() == 1 {
            fs.pop().unwrap()
        } else {
            GroupExpr::Product(fs)
        }
    }

    pub fn has_free_factor(&self) -> bool {
        self.factors().iter().any(|f| matches!(f, GroupExpr::Free(_)))
    }

    pub fn is_orientable_product(&self) -> bool {
        self.factors().iter().all(|f| !matches!(f, GroupExpr::NonOrientable(_)))
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Integers => f.write_str("Z"),
            GroupExpr::Free(k) => write!(f, "F({k})"),
            GroupExpr::Orientable(g) => write!(f, "M({g})"),
            GroupExpr::NonOrientable(q) => write!(f, "N({q})"),
            GroupExpr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    if matches!(x, GroupExpr::Product(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

pub fn parse_expr(text: &str) -> Result<GroupExpr> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, len: text.len() };
    let e = p.expr()?;
    p.skip_ws();
    if let Some((at, c)) = p.peek() {
        return Err(syntax(at, format!("unexpected character {c:?} after expression")));
    }
    Ok(e)
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.pos).copied()
    }

    /// Byte offset of the next non-whitespace character.
    fn here(&mut self) -> usize {
        self.skip_ws();
        self.peek().map_or(self.len, |(at, _)| at)
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek().is_some_and(|(_, c)| c == want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        let at = self.here();
        if self.eat(want) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |(_, c)| format!("{c:?}"));
            Err(syntax(at, format!("expected {want:?}, found {found}")))
        }
    }

    fn int(&mut self) -> Result<u32> {
        let start = self.here();
        let mut digits = String::new();
        while let Some((_, c)) = self.peek().filter(|(_, c)| c.is_ascii_digit()) {
            digits.push(c);
            self.pos += 1;
            self.skip_ws();
        }
        if digits.is_empty() {
            return Err(syntax(start, "expected an integer"));
        }
        digits.parse().map_err(|_| syntax(start, format!("integer {digits} is too large")))
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.term()?];
        while self.eat('x') || self.eat('*') {
            factors.push(self.term()?);
        }
        GroupExpr::product(factors)
    }

    fn term(&mut self) -> Result<GroupExpr> {
        let mut t = self.atom()?;
        while self.eat('^') {
            let at = self.here();
            let k = self.int()?;
            t = t.power(k).map_err(|e| match e {
                Error::Semantic(msg) => Error::Semantic(format!("at position {at}: {msg}")),
                other => other,
            })?;
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<GroupExpr> {
        let at = self.here();
        let Some((_, c)) = self.peek() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match c {
            'Z' => Ok(GroupExpr::Integers),
            'S' => {
                self.expect('1')?;
                Ok(GroupExpr::Integers)
            }
            'F' | 'M' | 'N' => {
                self.expect('(')?;
                let k = self.int()?;
                self.expect(')')?;
                match c {
                    'F' => GroupExpr::free(k),
                    'M' => GroupExpr::orientable(k),
                    _ => GroupExpr::non_orientable(k),
                }
            }
            '(' => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            other => Err(syntax(at, format!("unexpected character {other:?}"))),
        }
    }
}
