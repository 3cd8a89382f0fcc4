use shak_coalgebra::{extend, ExtendMode, Symbol};

use crate::error::StructuresError;
use crate::kind::{signature_of, StructureKind};
use crate::structure::{validate_symbol, HomotopyStructure};

/// A morphism of homotopy structures presented by its corestriction: for
/// each canonical source word, the letter part of the image. Components
/// are degree 0 and follow the same kind discipline as the endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct MorphismData {
    kind: StructureKind,
    source: HomotopyStructure,
    target: HomotopyStructure,
    components: Symbol,
    max_weight: usize,
}

impl MorphismData {
    pub fn new(
        kind: StructureKind,
        source: HomotopyStructure,
        target: HomotopyStructure,
        components: Symbol,
        max_weight: usize,
    ) -> Result<Self, StructuresError> {
        if source.kind() != kind || target.kind() != kind {
            return Err(StructuresError::Malformed(format!(
                "morphism kind {kind} does not match endpoint kinds {} and {}",
                source.kind(),
                target.kind()
            )));
        }
        validate_symbol(
            source.base(),
            target.base(),
            kind,
            &components,
            max_weight,
            0,
            "component",
        )?;
        Ok(MorphismData {
            kind,
            source,
            target,
            components,
            max_weight,
        })
    }

    /// The identity morphism of a structure.
    pub fn identity(s: &HomotopyStructure) -> MorphismData {
        let mut components = Symbol::new();
        for (id, _, _) in s.base().iter() {
            components.set(
                shak_coalgebra::WedgeWord::letter(id.0),
                shak_core::Element::term(id, shak_core::Scalar::one()),
            );
        }
        MorphismData {
            kind: s.kind(),
            source: s.clone(),
            target: s.clone(),
            components,
            max_weight: s.max_weight(),
        }
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn source(&self) -> &HomotopyStructure {
        &self.source
    }

    pub fn target(&self) -> &HomotopyStructure {
        &self.target
    }

    pub fn components(&self) -> &Symbol {
        &self.components
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// Keeps the components the target kind admits, restricting both
    /// endpoint structures the same way.
    pub fn restrict(&self, kind: StructureKind) -> Result<MorphismData, StructuresError> {
        if self.kind == kind {
            return Ok(self.clone());
        }
        if self.kind != StructureKind::Ginfty {
            return Err(StructuresError::Malformed(format!(
                "cannot restrict a {} morphism to {kind}",
                self.kind
            )));
        }
        let mut components = Symbol::new();
        for (w, val) in self.components.iter() {
            if kind.admits(&signature_of(w)) {
                components.set(w.clone(), val.clone());
            }
        }
        Ok(MorphismData {
            kind,
            source: self.source.restrict(kind)?,
            target: self.target.restrict(kind)?,
            components,
            max_weight: self.max_weight,
        })
    }
}

/// Composition `outer` after `inner` up to the given weight: the image
/// table of `inner` fed through the components of `outer`.
pub fn compose(
    outer: &MorphismData,
    inner: &MorphismData,
    max_weight: usize,
) -> Result<MorphismData, StructuresError> {
    if inner.target() != outer.source() {
        return Err(StructuresError::Malformed(
            "composition endpoints do not match".to_string(),
        ));
    }
    if inner.kind() != outer.kind() {
        return Err(StructuresError::Malformed(format!(
            "composition kinds {} and {} differ",
            outer.kind(),
            inner.kind()
        )));
    }
    let declared = inner.max_weight().min(outer.max_weight());
    if max_weight > declared {
        return Err(StructuresError::BeyondBound {
            asked: max_weight,
            declared,
        });
    }
    let src_ctx = inner.source().ctx();
    let mid_ctx = inner.target().ctx();
    let words = src_ctx.wedge_words_up_to(&inner.source().letters(), max_weight)?;
    let table = extend(
        &src_ctx,
        &mid_ctx,
        inner.components(),
        ExtendMode::Morphism,
        &words,
    )?;
    let mut components = Symbol::new();
    for w in &words {
        let val = table.get(w).expect("word ensured");
        components.set(w.clone(), outer.components().apply(val));
    }
    MorphismData::new(
        inner.kind(),
        inner.source().clone(),
        outer.target().clone(),
        components,
        max_weight,
    )
}
