use shak_core::{Element, GradedBasis};
use shak_coalgebra::{ExtendMode, Extender, WedgeWord};

use crate::error::StructuresError;
use crate::morphism::MorphismData;
use crate::structure::HomotopyStructure;

/// One failing word of an identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub weight: usize,
    pub word: WedgeWord,
    pub residual: Element,
}

/// Nonzero residuals of a checked identity, lowest weight first. Empty
/// means the identity holds on every word up to the bound.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ViolationReport {
    items: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.items.iter()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.items.first()
    }

    fn push(&mut self, weight: usize, word: WedgeWord, residual: Element) {
        self.items.push(Violation {
            weight,
            word,
            residual,
        });
    }

    fn finish(mut self) -> Self {
        self.items
            .sort_by(|a, b| (a.weight, &a.word).cmp(&(b.weight, &b.word)));
        self
    }

    pub fn render(&self, base: &GradedBasis, value_base: &GradedBasis) -> String {
        let mut out = String::new();
        for v in &self.items {
            out.push_str(&format!(
                "weight {}: {} -> {}\n",
                v.weight,
                v.word.pretty(base),
                v.residual.display(value_base)
            ));
        }
        out
    }
}

fn ensure_bound(asked: usize, declared: usize) -> Result<(), StructuresError> {
    if asked > declared {
        return Err(StructuresError::BeyondBound { asked, declared });
    }
    Ok(())
}

/// Verifies that the structure coderivation squares to zero on every
/// canonical word of weight at most `max_weight`, by corestriction: the
/// residual at a word is the letter part of d(d applied to it). Since the
/// square of a coderivation is again a coderivation, vanishing letter
/// parts everywhere force the whole square to vanish.
///
/// A word of weight m can only contribute when m = n1 + n2 - 1 for symbol
/// weights n1, n2; other weights are skipped as structurally zero.
pub fn check_square_zero(
    s: &HomotopyStructure,
    max_weight: usize,
    cap: usize,
) -> Result<ViolationReport, StructuresError> {
    ensure_bound(max_weight, s.max_weight())?;
    let mut report = ViolationReport::default();
    let weights = s.symbol_weights();
    let mut relevant: Vec<usize> = Vec::new();
    for &n1 in &weights {
        for &n2 in &weights {
            let m = n1 + n2 - 1;
            if (1..=max_weight).contains(&m) {
                relevant.push(m);
            }
        }
    }
    relevant.sort_unstable();
    relevant.dedup();

    let ctx = s.ctx();
    let letters = s.letters();
    let mut ex = Extender::new(
        &ctx,
        &ctx,
        s.symbol(),
        ExtendMode::Coderivation { degree: 1 },
        cap,
    )?;
    for m in relevant {
        for w in ctx.wedge_words(&letters, m)? {
            let dw = ex.value_of(&w)?;
            let residual = s.symbol().apply(&dw);
            if !residual.is_zero() {
                report.push(m, w, residual);
            }
        }
    }
    Ok(report.finish())
}

/// Verifies the morphism equation by corestriction: at every canonical
/// source word the letter part of (image of the source differential)
/// minus (target differential on the image) must vanish.
pub fn check_morphism(
    phi: &MorphismData,
    max_weight: usize,
    cap: usize,
) -> Result<ViolationReport, StructuresError> {
    let declared = phi
        .max_weight()
        .min(phi.source().max_weight())
        .min(phi.target().max_weight());
    ensure_bound(max_weight, declared)?;

    let src_ctx = phi.source().ctx();
    let tgt_ctx = phi.target().ctx();
    let letters = phi.source().letters();
    let mut d_src = Extender::new(
        &src_ctx,
        &src_ctx,
        phi.source().symbol(),
        ExtendMode::Coderivation { degree: 1 },
        cap,
    )?;
    let mut image = Extender::new(
        &src_ctx,
        &tgt_ctx,
        phi.components(),
        ExtendMode::Morphism,
        cap,
    )?;

    let mut report = ViolationReport::default();
    for m in 1..=max_weight {
        for w in src_ctx.wedge_words(&letters, m)? {
            let dw = d_src.value_of(&w)?;
            let fw = image.value_of(&w)?;
            let mut residual = phi.components().apply(&dw);
            residual = residual.sub(&phi.target().symbol().apply(&fw));
            if !residual.is_zero() {
                report.push(m, w, residual);
            }
        }
    }
    Ok(report.finish())
}
