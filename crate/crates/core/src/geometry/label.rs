use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name attached to a ray or ground element.
///
/// `Simple(i)` names a vertex of a single simplex; `Pair(i, j)` names copy `j`
/// of vertex `i` inside a product of `d` simplices (`j` runs from 1 to `d`).
/// The wire forms are `"i"` and `"i:j"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Simple(u32),
    Pair(u32, u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Simple(i) => write!(f, "{i}"),
            Label::Pair(i, j) => write!(f, "{i}:{j}"),
        }
    }
}

impl Label {
    pub fn parse(s: &str) -> Result<Label> {
        let parse_u32 = |t: &str| -> Result<u32> {
            t.parse::<u32>()
                .map_err(|_| Error::invalid(format!("bad label component {t:?}")))
        };
        match s.split_once(':') {
            None => Ok(Label::Simple(parse_u32(s)?)),
            Some((a, b)) => Ok(Label::Pair(parse_u32(a)?, parse_u32(b)?)),
        }
    }
}
