use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors produced while reading the `^l`/`^r` type notation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeParseError {
    #[error("malformed simple type `{token}`: {reason}")]
    Malformed { token: String, reason: &'static str },
}

/// An atomic grammatical category such as `n` (noun) or `s` (sentence).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicType(String);

impl BasicType {
    /// Panics if `name` is empty or contains a separator character.
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_valid_base(&name), "invalid basic type name {name:?}");
        BasicType(name)
    }

    pub fn noun() -> Self {
        BasicType("n".into())
    }

    pub fn sentence() -> Self {
        BasicType("s".into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BasicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_valid_base(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| !c.is_whitespace() && c != '.' && c != '^')
}

/// A basic type together with its adjoint order.
///
/// Order `0` is the plain type, `+1` its right adjoint (`n^r`, cancels on the
/// left against `n`), `-1` its left adjoint (`n^l`, cancels on the right
/// against `n`). Iterated adjoints are plain integers beyond that.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub base: BasicType,
    pub adjoint: i32,
}

impl SimpleType {
    pub fn new(base: BasicType, adjoint: i32) -> Self {
        SimpleType { base, adjoint }
    }

    pub fn plain(base: BasicType) -> Self {
        SimpleType { base, adjoint: 0 }
    }

    pub fn left_adjoint(&self) -> Self {
        SimpleType {
            base: self.base.clone(),
            adjoint: self.adjoint - 1,
        }
    }

    pub fn right_adjoint(&self) -> Self {
        SimpleType {
            base: self.base.clone(),
            adjoint: self.adjoint + 1,
        }
    }

    /// `self · other <= 1` by a single contraction: `x · x^r` or `x^l · x`,
    /// which both amount to `other` being one adjoint step to the right.
    pub fn contracts_with(&self, other: &SimpleType) -> bool {
        self.base == other.base && other.adjoint == self.adjoint + 1
    }
}

/// Free-function form of [`SimpleType::contracts_with`].
pub fn contracts(a: &SimpleType, b: &SimpleType) -> bool {
    a.contracts_with(b)
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if self.adjoint != 0 {
            let mark = if self.adjoint > 0 { 'r' } else { 'l' };
            f.write_str("^")?;
            for _ in 0..self.adjoint.unsigned_abs() {
                write!(f, "{mark}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SimpleType {
    type Err = TypeParseError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let malformed = |reason| TypeParseError::Malformed {
            token: token.to_string(),
            reason,
        };
        let (name, marks) = match token.split_once('^') {
            Some((name, marks)) => (name, Some(marks)),
            None => (token, None),
        };
        if name.is_empty() {
            return Err(malformed("missing base name"));
        }
        if !is_valid_base(name) {
            return Err(malformed("invalid character in base name"));
        }
        let mut adjoint = 0i32;
        if let Some(marks) = marks {
            if marks.is_empty() {
                return Err(malformed("expected `l` or `r` after `^`"));
            }
            for c in marks.chars() {
                adjoint = match c {
                    'l' => adjoint.checked_sub(1),
                    'r' => adjoint.checked_add(1),
                    _ => return Err(malformed("adjoint marks must be `l` or `r`")),
                }
                .ok_or_else(|| malformed("adjoint order overflow"))?;
            }
        }
        Ok(SimpleType::new(BasicType(name.to_string()), adjoint))
    }
}

/// A product of simple types; the empty product is the unit `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PregroupType(Vec<SimpleType>);

impl PregroupType {
    pub fn unit() -> Self {
        PregroupType(Vec::new())
    }

    pub fn sentence() -> Self {
        PregroupType(vec![SimpleType::plain(BasicType::sentence())])
    }

    pub fn simples(&self) -> &[SimpleType] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &PregroupType) -> PregroupType {
        let mut simples = self.0.clone();
        simples.extend_from_slice(&other.0);
        PregroupType(simples)
    }
}

impl From<Vec<SimpleType>> for PregroupType {
    fn from(simples: Vec<SimpleType>) -> Self {
        PregroupType(simples)
    }
}

impl FromIterator<SimpleType> for PregroupType {
    fn from_iter<I: IntoIterator<Item = SimpleType>>(iter: I) -> Self {
        PregroupType(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PregroupType {
    type Item = &'a SimpleType;
    type IntoIter = std::slice::Iter<'a, SimpleType>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for PregroupType {
    type Err = TypeParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_type(text)
    }
}

/// Parses whitespace- or `.`-separated simple types, e.g. `n^r s n^l`.
///
/// Each `l` after `^` lowers the adjoint order by one and each `r` raises it,
/// so `n^rl` is plain `n`.
pub fn parse_type(text: &str) -> Result<PregroupType, TypeParseError> {
    text.split(|c: char| c.is_whitespace() || c == '.')
        .filter(|tok| !tok.is_empty())
        .map(str::parse)
        .collect()
}
