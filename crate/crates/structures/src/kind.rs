use shak_coalgebra::WedgeWord;

/// Family a structure or morphism belongs to, ordered by how much of the
/// cogenerator space its symbols may touch. `Linfty` lives on pure wedge
/// words, `Cinfty` on single tensor factors, `Ginfty` anywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StructureKind {
    Linfty,
    Cinfty,
    Ginfty,
}

impl StructureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StructureKind::Linfty => "linfty",
            StructureKind::Cinfty => "cinfty",
            StructureKind::Ginfty => "ginfty",
        }
    }

    pub fn parse(s: &str) -> Option<StructureKind> {
        match s {
            "linfty" => Some(StructureKind::Linfty),
            "cinfty" => Some(StructureKind::Cinfty),
            "ginfty" => Some(StructureKind::Ginfty),
            _ => None,
        }
    }

    /// Whether a symbol may sit on words of this factor shape.
    pub fn admits(&self, signature: &[usize]) -> bool {
        match self {
            StructureKind::Linfty => signature.iter().all(|&p| p == 1),
            StructureKind::Cinfty => signature.len() == 1,
            StructureKind::Ginfty => true,
        }
    }
}

impl std::fmt::Display for StructureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Factor lengths of a word, e.g. `a.b^c` has signature (2, 1).
pub fn signature_of(w: &WedgeWord) -> Vec<usize> {
    w.factors.iter().map(|t| t.letters.len()).collect()
}

/// Signature rendered the way structure files spell it: `2,1`.
pub fn signature_string(w: &WedgeWord) -> String {
    signature_of(w)
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admits_matches_the_three_families() {
        let l = StructureKind::Linfty;
        let c = StructureKind::Cinfty;
        let g = StructureKind::Ginfty;
        assert!(l.admits(&[1, 1, 1]));
        assert!(!l.admits(&[2]));
        assert!(c.admits(&[3]));
        assert!(!c.admits(&[1, 1]));
        assert!(g.admits(&[2, 1]));
        assert!(g.admits(&[1]));
    }

    #[test]
    fn parse_round_trips() {
        for k in [
            StructureKind::Linfty,
            StructureKind::Cinfty,
            StructureKind::Ginfty,
        ] {
            assert_eq!(StructureKind::parse(k.as_str()), Some(k));
        }
        assert_eq!(StructureKind::parse("a-infty"), None);
    }
}
