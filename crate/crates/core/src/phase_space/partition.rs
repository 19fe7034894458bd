use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid_arg, Error, Result};

/// A bipartition `left | right` of (a subset of) the modes.
///
/// Indices are zero-based; the string form uses one-based labels, so
/// `ModePartition::new(vec![0], vec![1, 2])` renders as `"1|23"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModePartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl ModePartition {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return invalid_arg("both sides of a partition must be non-empty");
        }
        left.sort_unstable();
        right.sort_unstable();
        left.dedup();
        right.dedup();
        if left.iter().any(|m| right.contains(m)) {
            return invalid_arg("partition sides must be disjoint");
        }
        Ok(Self { left, right })
    }

    /// `probe | everything else` on an `n_modes` system.
    pub fn probe(probe: usize, n_modes: usize) -> Result<Self> {
        if probe >= n_modes {
            return invalid_arg(format!("probe mode {probe} out of range"));
        }
        Self::new(vec![probe], (0..n_modes).filter(|&m| m != probe).collect())
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// All modes named by the partition, sorted.
    pub fn modes(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.left.iter().chain(&self.right).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn covers(&self, n_modes: usize) -> bool {
        self.modes() == (0..n_modes).collect::<Vec<_>>()
    }
}

impl fmt::Display for ModePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.left {
            write!(f, "{}", m + 1)?;
        }
        f.write_str("|")?;
        for m in &self.right {
            write!(f, "{}", m + 1)?;
        }
        Ok(())
    }
}

impl FromStr for ModePartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once('|')
            .ok_or_else(|| Error::InvalidArgument(format!("partition `{s}` lacks a `|`")))?;
        let parse = |side: &str| -> Result<Vec<usize>> {
            side.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d >= 1 => Ok(d as usize - 1),
                    _ => invalid_arg(format!("bad mode label `{c}` in partition `{s}`")),
                })
                .collect()
        };
        Self::new(parse(l)?, parse(r)?)
    }
}

impl Serialize for ModePartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModePartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
