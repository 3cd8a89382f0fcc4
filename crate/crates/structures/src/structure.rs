use std::collections::BTreeMap;

use shak_core::GradedBasis;
use shak_coalgebra::{CoalgebraCtx, Conventions, Symbol, WedgeWord};

use crate::error::StructuresError;
use crate::kind::{signature_of, StructureKind};

/// A homotopy algebra structure presented by its cogenerator symbols: for
/// each canonical word up to a declared weight bound, the letter part of
/// the structure coderivation. Symbols are degree +1 and only sit on
/// words whose factor shape the kind admits.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyStructure {
    base: GradedBasis,
    kind: StructureKind,
    symbol: Symbol,
    max_weight: usize,
}

/// Shared symbol validation for structures (degree +1) and morphism
/// components (degree 0).
pub(crate) fn validate_symbol(
    base: &GradedBasis,
    value_base: &GradedBasis,
    kind: StructureKind,
    symbol: &Symbol,
    max_weight: usize,
    op_degree: i64,
    what: &str,
) -> Result<(), StructuresError> {
    let ctx = CoalgebraCtx::new(base.clone(), Conventions::default());
    for (w, val) in symbol.iter() {
        let pretty = w.pretty(base);
        if w.weight() > max_weight {
            return Err(StructuresError::Malformed(format!(
                "{what} at {pretty} has weight {} beyond the bound {max_weight}",
                w.weight()
            )));
        }
        if !kind.admits(&signature_of(w)) {
            return Err(StructuresError::Malformed(format!(
                "{what} at {pretty} has a factor shape the {kind} kind does not admit"
            )));
        }
        let nf = ctx.normalize_wedge(w)?;
        let expect = shak_coalgebra::CowElement::basis(w.clone());
        if nf != expect {
            return Err(StructuresError::Malformed(format!(
                "{what} at {pretty}: not a canonical basis word"
            )));
        }
        let want = w.degree(base) + op_degree;
        for (id, _) in val.iter() {
            // A letter as a weight-one word sits one below its alphabet
            // degree.
            let got = value_base.degree(id) - 1;
            if got != want {
                return Err(StructuresError::Malformed(format!(
                    "{what} at {pretty}: value letter {} has word degree {got}, expected {want}",
                    value_base.name(id)
                )));
            }
        }
    }
    Ok(())
}

impl HomotopyStructure {
    pub fn new(
        base: GradedBasis,
        kind: StructureKind,
        symbol: Symbol,
        max_weight: usize,
    ) -> Result<Self, StructuresError> {
        validate_symbol(&base, &base, kind, &symbol, max_weight, 1, "symbol")?;
        Ok(HomotopyStructure {
            base,
            kind,
            symbol,
            max_weight,
        })
    }

    pub fn base(&self) -> &GradedBasis {
        &self.base
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    /// Weight up to which the symbols are declared; checks refuse to go
    /// further rather than assume vanishing.
    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn ctx(&self) -> CoalgebraCtx {
        CoalgebraCtx::new(self.base.clone(), Conventions::default())
    }

    pub fn letters(&self) -> Vec<u32> {
        self.base.ids().map(|id| id.0).collect()
    }

    /// Distinct word weights carrying a symbol.
    pub fn symbol_weights(&self) -> Vec<usize> {
        let mut ws: Vec<usize> = self.symbol.iter().map(|(w, _)| w.weight()).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    /// Keeps the symbols the target kind admits. The input must be the
    /// universal kind, or already of the target kind (identity).
    pub fn restrict(&self, kind: StructureKind) -> Result<HomotopyStructure, StructuresError> {
        if self.kind == kind {
            return Ok(self.clone());
        }
        if self.kind != StructureKind::Ginfty {
            return Err(StructuresError::Malformed(format!(
                "cannot restrict a {} structure to {kind}",
                self.kind
            )));
        }
        let mut symbol = Symbol::new();
        for (w, val) in self.symbol.iter() {
            if kind.admits(&signature_of(w)) {
                symbol.set(w.clone(), val.clone());
            }
        }
        Ok(HomotopyStructure {
            base: self.base.clone(),
            kind,
            symbol,
            max_weight: self.max_weight,
        })
    }

    /// Splits the symbol by word weight; the parts sum back to the whole.
    /// Weights without symbols do not appear.
    pub fn weight_decompose(&self) -> BTreeMap<usize, HomotopyStructure> {
        let mut parts: BTreeMap<usize, Symbol> = BTreeMap::new();
        for (w, val) in self.symbol.iter() {
            parts
                .entry(w.weight())
                .or_insert_with(Symbol::new)
                .set(w.clone(), val.clone());
        }
        parts
            .into_iter()
            .map(|(n, symbol)| {
                (
                    n,
                    HomotopyStructure {
                        base: self.base.clone(),
                        kind: self.kind,
                        symbol,
                        max_weight: self.max_weight,
                    },
                )
            })
            .collect()
    }

    /// Canonical words the structure's own weight bound covers, by weight.
    pub fn words_of_weight(&self, weight: usize) -> Result<Vec<WedgeWord>, StructuresError> {
        Ok(self.ctx().wedge_words(&self.letters(), weight)?)
    }
}
