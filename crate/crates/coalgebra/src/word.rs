use std::fmt;

use shak_core::{BasisId, GradedBasis};

use crate::error::CoalgebraError;

/// Word in the tensor factors of the cogenerator space: a nonempty sequence
/// of letters from a graded alphabet. Stored as letter ids.
///
/// Ordering is by (length, letter sequence), which is the canonical order
/// used everywhere words are sorted or enumerated.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct TensorWord {
    pub letters: Vec<u32>,
}

impl Ord for TensorWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for TensorWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl TensorWord {
    pub fn new(letters: Vec<u32>) -> Self {
        assert!(!letters.is_empty(), "tensor words are nonempty");
        TensorWord { letters }
    }

    pub fn single(letter: u32) -> Self {
        TensorWord { letters: vec![letter] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the alphabet degrees of the letters.
    pub fn letter_degree_sum(&self, gb: &GradedBasis) -> i64 {
        self.letters.iter().map(|&l| gb.degree(BasisId(l))).sum()
    }

    /// Degree of the word as a single-factor element: letter degrees minus
    /// one for the factor itself.
    pub fn factor_degree(&self, gb: &GradedBasis) -> i64 {
        self.letter_degree_sum(gb) - 1
    }

    pub fn sorted_letters(&self) -> Vec<u32> {
        let mut l = self.letters.clone();
        l.sort_unstable();
        l
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "#{l}")?;
        }
        Ok(())
    }
}

/// Product of tensor-word factors. Canonical form keeps factors sorted
/// ascending; words with a repeated factor of odd factor degree are zero
/// and never appear as keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct WedgeWord {
    pub factors: Vec<TensorWord>,
}

impl WedgeWord {
    pub fn new(factors: Vec<TensorWord>) -> Self {
        assert!(!factors.is_empty(), "wedge words are nonempty");
        WedgeWord { factors }
    }

    pub fn single(factor: TensorWord) -> Self {
        WedgeWord { factors: vec![factor] }
    }

    pub fn letter(letter: u32) -> Self {
        WedgeWord::single(TensorWord::single(letter))
    }

    /// Total number of letters across factors.
    pub fn weight(&self) -> usize {
        self.factors.iter().map(|t| t.len()).sum()
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Sum of factor degrees; the homological grading of the word.
    pub fn degree(&self, gb: &GradedBasis) -> i64 {
        self.factors.iter().map(|t| t.factor_degree(gb)).sum()
    }

    /// Multiset of letters, sorted. Both cooperations preserve it.
    pub fn sorted_letters(&self) -> Vec<u32> {
        let mut l: Vec<u32> = self
            .factors
            .iter()
            .flat_map(|t| t.letters.iter().copied())
            .collect();
        l.sort_unstable();
        l
    }

    pub fn is_canonical_order(&self) -> bool {
        self.factors.windows(2).all(|p| p[0] <= p[1])
    }

    /// True when the word is a single letter.
    pub fn is_letter(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].len() == 1
    }

    pub fn pretty(&self, gb: &GradedBasis) -> String {
        self.factors
            .iter()
            .map(|t| {
                t.letters
                    .iter()
                    .map(|&l| gb.name(BasisId(l)).to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect::<Vec<_>>()
            .join("^")
    }

    /// Parses the `a.b^c` syntax against an alphabet: letters joined by
    /// `.` form tensor factors, factors joined by `^` form the word.
    pub fn parse(gb: &GradedBasis, s: &str) -> Result<Self, CoalgebraError> {
        let mut factors = Vec::new();
        for fpart in s.split('^') {
            let fpart = fpart.trim();
            if fpart.is_empty() {
                return Err(CoalgebraError::Parse(format!("empty factor in word '{s}'")));
            }
            let mut letters = Vec::new();
            for lpart in fpart.split('.') {
                let lpart = lpart.trim();
                let id = gb.id_of(lpart).ok_or_else(|| {
                    CoalgebraError::Parse(format!("unknown letter '{lpart}' in word '{s}'"))
                })?;
                letters.push(id.0);
            }
            factors.push(TensorWord::new(letters));
        }
        if factors.is_empty() {
            return Err(CoalgebraError::Parse(format!("empty word '{s}'")));
        }
        Ok(WedgeWord::new(factors))
    }
}

impl fmt::Display for WedgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "^")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet() -> GradedBasis {
        GradedBasis::from_pairs(&[("x", 0), ("y", 1), ("z", 2)]).unwrap()
    }

    #[test]
    fn degrees_count_factors() {
        let gb = alphabet();
        let w = WedgeWord::parse(&gb, "x.y^z").unwrap();
        assert_eq!(w.weight(), 3);
        assert_eq!(w.factor_count(), 2);
        // (0 + 1 - 1) + (2 - 1) = 1.
        assert_eq!(w.degree(&gb), 1);
    }

    #[test]
    fn parse_pretty_roundtrip() {
        let gb = alphabet();
        for s in ["x", "x.y", "x^y^z", "z.z.x^y"] {
            let w = WedgeWord::parse(&gb, s).unwrap();
            assert_eq!(w.pretty(&gb), s);
        }
        assert!(WedgeWord::parse(&gb, "x..y").is_err());
        assert!(WedgeWord::parse(&gb, "w").is_err());
        assert!(WedgeWord::parse(&gb, "").is_err());
    }

    #[test]
    fn canonical_order_is_length_then_lex() {
        let a = TensorWord::new(vec![5]);
        let b = TensorWord::new(vec![0, 9]);
        let c = TensorWord::new(vec![1, 2]);
        assert!(a < b && b < c);
    }
}
