use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Upper bound on chart dimension; index tuples are stored as bit masks.
pub const MAX_DIM: usize = 32;

/// A single global coordinate chart: an ordered list of coordinate names,
/// optionally marking one coordinate as the distinguished exponential variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
    distinguished: Option<usize>,
}

/// Shared handle to a chart. Every polynomial and tensor carries one.
pub type ChartRef = Arc<Chart>;

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<ChartRef> {
        Self::build(names, None)
    }

    /// A chart whose coordinate `s` carries formal exponentials `e^{λs}`.
    pub fn with_distinguished<S: AsRef<str>>(names: &[S], s: &str) -> Result<ChartRef> {
        Self::build(names, Some(s))
    }

    fn build<S: AsRef<str>>(names: &[S], s: Option<&str>) -> Result<ChartRef> {
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        if names.len() > MAX_DIM {
            return Err(Error::InvalidChart(format!(
                "dimension {} exceeds the supported maximum {MAX_DIM}",
                names.len()
            )));
        }
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) || n == "d" || n == "e" {
                return Err(Error::InvalidChart(format!("`{n}` is not a usable coordinate name")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        let distinguished = match s {
            None => None,
            Some(s) => Some(
                names
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| Error::InvalidChart(format!("no coordinate named `{s}`")))?,
            ),
        };
        Ok(Arc::new(Chart { names, distinguished }))
    }

    /// Darboux chart `q1..qn, p1..pn`.
    pub fn darboux(n: usize) -> Result<ChartRef> {
        Self::new(&Self::darboux_names(n))
    }

    pub fn darboux_names(n: usize) -> Vec<String> {
        (1..=n)
            .map(|i| format!("q{i}"))
            .chain((1..=n).map(|i| format!("p{i}")))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn distinguished(&self) -> Option<usize> {
        self.distinguished
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, dim: self.dim() })
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(", "))
    }
}

pub(crate) fn same_chart(a: &ChartRef, b: &ChartRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same(a: &ChartRef, b: &ChartRef) -> Result<()> {
    if same_chart(a, b) {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_charts() {
        assert!(Chart::new::<&str>(&[]).is_err());
        assert!(Chart::new(&["x", "x"]).is_err());
        assert!(Chart::new(&["1x"]).is_err());
        assert!(Chart::new(&["d"]).is_err());
        assert!(Chart::with_distinguished(&["x"], "s").is_err());
    }

    #[test]
    fn darboux_layout() {
        let c = Chart::darboux(2).unwrap();
        assert_eq!(c.names(), &["q1", "q2", "p1", "p2"]);
        assert_eq!(c.index_of("p1"), Some(2));
    }
}
