use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered Jordan block sizes (m_1, ..., m_r).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct JordanSpec {
    blocks: Vec<usize>,
}

impl TryFrom<Vec<usize>> for JordanSpec {
    type Error = Error;
    fn try_from(blocks: Vec<usize>) -> Result<Self> {
        JordanSpec::new(blocks)
    }
}

impl From<JordanSpec> for Vec<usize> {
    fn from(s: JordanSpec) -> Self {
        s.blocks
    }
}

impl JordanSpec {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::Shape(format!("invalid block sizes {blocks:?}")));
        }
        Ok(JordanSpec { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// 0-based flat index of the first coordinate of block `alpha` (0-based).
    pub fn offset(&self, alpha: usize) -> usize {
        self.blocks[..alpha].iter().sum()
    }

    /// 0-based flat index of inner index `i` (0-based) in block `alpha`.
    pub fn flat(&self, alpha: usize, i: usize) -> usize {
        assert!(i < self.blocks[alpha]);
        self.offset(alpha) + i
    }

    /// (block, inner) of a 0-based flat index.
    pub fn label(&self, flat: usize) -> (usize, usize) {
        let mut rest = flat;
        for (a, &m) in self.blocks.iter().enumerate() {
            if rest < m {
                return (a, rest);
            }
            rest -= m;
        }
        panic!("flat index {flat} out of range");
    }

    pub fn block_of(&self, flat: usize) -> usize {
        self.label(flat).0
    }

    pub fn inner(&self, flat: usize) -> usize {
        self.label(flat).1
    }

    /// Compact identifier, e.g. "211".
    pub fn id(&self) -> String {
        self.blocks.iter().map(|m| m.to_string()).collect()
    }

    pub fn parse_id(id: &str) -> Result<Self> {
        let blocks: Option<Vec<usize>> = id.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        JordanSpec::new(blocks.ok_or_else(|| Error::Parse(format!("bad spec id '{id}'")))?)
    }
}
