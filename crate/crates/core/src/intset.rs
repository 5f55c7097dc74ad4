//! Finite sorted integer sets, the discrete counterpart of `IntervalSet`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Finite set of integers, stored sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerSet {
    elements: Vec<i64>,
}

impl IntegerSet {
    pub fn empty() -> Self {
        IntegerSet { elements: Vec::new() }
    }

    pub fn new(mut elements: Vec<i64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        IntegerSet { elements }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

impl fmt::Display for IntegerSet {
    /// Brace literal, e.g. `{0,2,4,8}`; the empty set prints as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for IntegerSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected `{{a,b,...}}` literal, got `{trimmed}`")))?;
        if inner.trim().is_empty() {
            return Ok(IntegerSet::empty());
        }
        let elements = inner
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("invalid integer `{}`", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegerSet::new(elements))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip() {
        let x: IntegerSet = "{8, 0, 2, 4, 2}".parse().unwrap();
        assert_eq!(x.elements(), &[0, 2, 4, 8]);
        assert_eq!(x.to_string(), "{0,2,4,8}");
        assert_eq!("{}".parse::<IntegerSet>().unwrap(), IntegerSet::empty());
        assert!("0,1".parse::<IntegerSet>().is_err());
        assert!("{a}".parse::<IntegerSet>().is_err());
    }
}
