use std::collections::BTreeMap;
use std::fmt;

use crate::CoreError;

/// Index of a basis entry inside its [`GradedBasis`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisId(pub u32);

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Ordered list of named generators with integer degrees.
///
/// The enumeration order is fixed at construction and is the deterministic
/// order used everywhere downstream (word enumeration, pivot selection,
/// report ordering). Identifiers are unique and drawn from
/// `[A-Za-z0-9_]+` so they can appear unquoted in text formats.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedBasis {
    entries: Vec<(String, i64)>,
    index: BTreeMap<String, u32>,
}

fn valid_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl GradedBasis {
    pub fn new(entries: Vec<(String, i64)>) -> Result<Self, CoreError> {
        let mut index = BTreeMap::new();
        for (pos, (id, _)) in entries.iter().enumerate() {
            if !valid_identifier(id) {
                return Err(CoreError::MalformedInput(format!(
                    "invalid identifier {id:?}: expected [A-Za-z0-9_]+"
                )));
            }
            if index.insert(id.clone(), pos as u32).is_some() {
                return Err(CoreError::MalformedInput(format!(
                    "duplicate identifier {id:?}"
                )));
            }
        }
        Ok(GradedBasis { entries, index })
    }

    pub fn from_pairs(pairs: &[(&str, i64)]) -> Result<Self, CoreError> {
        Self::new(pairs.iter().map(|(s, d)| (s.to_string(), *d)).collect())
    }

    /// Parses the tab-separated `identifier<TAB>degree` text format.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, CoreError> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, deg) = line.split_once('\t').ok_or_else(|| {
                CoreError::MalformedInput(format!(
                    "line {}: expected identifier<TAB>degree",
                    lineno + 1
                ))
            })?;
            let deg: i64 = deg.trim().parse().map_err(|_| {
                CoreError::MalformedInput(format!("line {}: unreadable degree {deg:?}", lineno + 1))
            })?;
            entries.push((id.to_string(), deg));
        }
        Self::new(entries)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, deg) in &self.entries {
            out.push_str(id);
            out.push('\t');
            out.push_str(&deg.to_string());
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn id_of(&self, name: &str) -> Option<BasisId> {
        self.index.get(name).map(|&i| BasisId(i))
    }

    pub fn name(&self, id: BasisId) -> &str {
        &self.entries[id.0 as usize].0
    }

    pub fn degree(&self, id: BasisId) -> i64 {
        self.entries[id.0 as usize].1
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisId, &str, i64)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, (name, deg))| (BasisId(i as u32), name.as_str(), *deg))
    }

    pub fn ids(&self) -> impl Iterator<Item = BasisId> + '_ {
        (0..self.entries.len() as u32).map(BasisId)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let b = GradedBasis::parse("x\t-1\ny\t0\n# comment\nz_2\t3\n").unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b.degree(b.id_of("x").unwrap()), -1);
        assert_eq!(b.degree(b.id_of("z_2").unwrap()), 3);
        let again = GradedBasis::parse(&b.to_text()).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(GradedBasis::from_pairs(&[("x", 0), ("x", 1)]).is_err());
        assert!(GradedBasis::from_pairs(&[("a b", 0)]).is_err());
        assert!(GradedBasis::parse("x\tnotanumber\n").is_err());
    }
}
