//! Small exactly-known fixtures: a truncated multivector algebra, a tiny
//! differential Lie algebra, and gauge twists of either by random
//! coalgebra automorphisms. Everything here is deterministic given the
//! seed, so downstream tests can assert exact outputs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shak_core::{BasisId, Element, GradedBasis, Scalar};
use shak_coalgebra::{
    extend, invert_unipotent, ExtendMode, Symbol, Table, WedgeWord,
};

use crate::error::StructuresError;
use crate::kind::StructureKind;
use crate::morphism::MorphismData;
use crate::structure::HomotopyStructure;

/// A bracket/product pair on a graded basis, given on ordered key pairs.
/// Missing keys mean zero; the flipped key is consulted through the
/// graded symmetry of the operation before giving up.
#[derive(Clone, Debug)]
pub struct PairModel {
    pub base: GradedBasis,
    pub differential: BTreeMap<BasisId, Element>,
    pub bracket: BTreeMap<(BasisId, BasisId), Element>,
    pub product: BTreeMap<(BasisId, BasisId), Element>,
}

impl PairModel {
    /// Bracket value on an ordered pair; antisymmetric in the letter
    /// degrees when only the flipped entry is stored.
    pub fn bracket_of(&self, i: BasisId, j: BasisId) -> Element {
        if let Some(v) = self.bracket.get(&(i, j)) {
            return v.clone();
        }
        if let Some(v) = self.bracket.get(&(j, i)) {
            let e = self.base.degree(i) * self.base.degree(j) + 1;
            return v.scale(&Scalar::neg_one_pow(e));
        }
        Element::zero()
    }

    /// Product value on an ordered pair; commutative in the letter
    /// degrees shifted by one when only the flipped entry is stored.
    pub fn product_of(&self, i: BasisId, j: BasisId) -> Element {
        if let Some(v) = self.product.get(&(i, j)) {
            return v.clone();
        }
        if let Some(v) = self.product.get(&(j, i)) {
            let e = (self.base.degree(i) + 1) * (self.base.degree(j) + 1);
            return v.scale(&Scalar::neg_one_pow(e));
        }
        Element::zero()
    }
}

/// Sign twist applied to a binary operation when it is folded into the
/// word calculus; the exponent may depend on the first argument's degree.
/// The constant variants only appear in the audit tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) enum Twist {
    Plus,
    Minus,
    DegFirst,
    DegFirstPlus,
}

impl Twist {
    fn sign(self, d_first: i64) -> Scalar {
        match self {
            Twist::Plus => Scalar::one(),
            Twist::Minus => -Scalar::one(),
            Twist::DegFirst => Scalar::neg_one_pow(d_first),
            Twist::DegFirstPlus => Scalar::neg_one_pow(d_first + 1),
        }
    }
}

/// Folds a differential/bracket/product triple into a structure symbol
/// with explicit twist choices. The public constructors freeze the twists
/// the square-zero audit pins down.
pub(crate) fn structure_with_twists(
    model: &PairModel,
    kind: StructureKind,
    bound: usize,
    bracket_twist: Twist,
    product_twist: Twist,
) -> Result<HomotopyStructure, StructuresError> {
    if !model.bracket.is_empty() && !kind.admits(&[1, 1]) {
        return Err(StructuresError::Malformed(format!(
            "a {kind} structure cannot carry a bracket"
        )));
    }
    if !model.product.is_empty() && !kind.admits(&[2]) {
        return Err(StructuresError::Malformed(format!(
            "a {kind} structure cannot carry a product"
        )));
    }
    let base = &model.base;
    let ctx = shak_coalgebra::CoalgebraCtx::new(base.clone(), Default::default());
    let ids: Vec<BasisId> = base.ids().collect();
    let mut symbol = Symbol::new();

    for (&id, val) in &model.differential {
        symbol.set(WedgeWord::letter(id.0), val.clone());
    }

    // Bracket on canonical wedge pairs i^j; a repeated letter needs even
    // factor degree to survive the quotient.
    for (a, &i) in ids.iter().enumerate() {
        for &j in &ids[a..] {
            if i == j && (base.degree(i) - 1) % 2 != 0 {
                continue;
            }
            let v = model.bracket_of(i, j);
            if v.is_zero() {
                continue;
            }
            let w = WedgeWord::new(vec![
                shak_coalgebra::TensorWord::new(vec![i.0]),
                shak_coalgebra::TensorWord::new(vec![j.0]),
            ]);
            symbol.set(w, v.scale(&bracket_twist.sign(base.degree(i))));
        }
    }

    // Product on the section arrangements of every letter pair.
    for (a, &i) in ids.iter().enumerate() {
        for &j in &ids[a..] {
            for t in ctx.sections_of(&[i.0.min(j.0), i.0.max(j.0)])? {
                let (p, q) = (BasisId(t.letters[0]), BasisId(t.letters[1]));
                let v = model.product_of(p, q);
                if v.is_zero() {
                    continue;
                }
                let w = WedgeWord::new(vec![t]);
                symbol.set(w, v.scale(&product_twist.sign(base.degree(p))));
            }
        }
    }

    HomotopyStructure::new(base.clone(), kind, symbol, bound)
}

/// Builds the structure whose coderivation carries the model's bracket on
/// wedge pairs and product on tensor pairs, with the degree-shift signs
/// the square-zero audit pinned down.
pub fn pair_structure(
    model: &PairModel,
    kind: StructureKind,
    bound: usize,
) -> Result<HomotopyStructure, StructuresError> {
    structure_with_twists(model, kind, bound, Twist::DegFirstPlus, Twist::DegFirst)
}

/// Multivector fields of the line truncated at order three: functions
/// 1, x, x^2 and vector fields x d/dx, x^2 d/dx, with the Schouten
/// bracket and the wedge product. Nilpotent enough to be finite, rich
/// enough to exercise every sign path.
pub fn truncated_line_model() -> PairModel {
    let base = GradedBasis::from_pairs(&[
        ("one", -1),
        ("x", -1),
        ("x2", -1),
        ("xd", 0),
        ("x2d", 0),
    ])
    .expect("valid fixture basis");
    let id = |n: &str| base.id_of(n).unwrap();
    let term = |n: &str, k: i64| Element::term(id(n), Scalar::from_int(k));

    let mut bracket = BTreeMap::new();
    bracket.insert((id("x"), id("xd")), term("x", -1));
    bracket.insert((id("x"), id("x2d")), term("x2", -1));
    bracket.insert((id("x2"), id("xd")), term("x2", -2));
    bracket.insert((id("xd"), id("x2d")), term("x2d", 1));

    let mut product = BTreeMap::new();
    product.insert((id("one"), id("one")), term("one", 1));
    product.insert((id("one"), id("x")), term("x", 1));
    product.insert((id("one"), id("x2")), term("x2", 1));
    product.insert((id("one"), id("xd")), term("xd", 1));
    product.insert((id("one"), id("x2d")), term("x2d", 1));
    product.insert((id("x"), id("x")), term("x2", 1));
    product.insert((id("x"), id("xd")), term("x2d", 1));

    PairModel {
        base,
        differential: BTreeMap::new(),
        bracket,
        product,
    }
}

pub fn truncated_line_structure(bound: usize) -> HomotopyStructure {
    pair_structure(&truncated_line_model(), StructureKind::Ginfty, bound)
        .expect("fixture is well formed")
}

/// A three-letter differential Lie algebra: d(t) = dt, [t, one] = one,
/// [t, dt] = -dt, everything else zero.
pub fn interval_dgla_model() -> PairModel {
    let base =
        GradedBasis::from_pairs(&[("one", -1), ("t", 0), ("dt", 1)]).expect("valid fixture basis");
    let id = |n: &str| base.id_of(n).unwrap();
    let term = |n: &str, k: i64| Element::term(id(n), Scalar::from_int(k));

    let mut differential = BTreeMap::new();
    differential.insert(id("t"), term("dt", 1));

    // Stored on canonical (id-ordered) pairs: [one, t] = -[t, one].
    let mut bracket = BTreeMap::new();
    bracket.insert((id("one"), id("t")), term("one", -1));
    bracket.insert((id("t"), id("dt")), term("dt", -1));

    PairModel {
        base,
        differential,
        bracket,
        product: BTreeMap::new(),
    }
}

pub fn interval_dgla_structure(bound: usize) -> HomotopyStructure {
    pair_structure(&interval_dgla_model(), StructureKind::Linfty, bound)
        .expect("fixture is well formed")
}

/// A coalgebra automorphism with identity letter part and random sparse
/// higher components, paired with the conjugated structure that makes it
/// a morphism: the returned map sends (base, twisted) to (base, s) and
/// passes the morphism check by construction.
pub fn gauge_pair(
    s: &HomotopyStructure,
    seed: u64,
    bound: usize,
) -> Result<(MorphismData, HomotopyStructure), StructuresError> {
    if s.kind() != StructureKind::Ginfty {
        return Err(StructuresError::Malformed(
            "gauge twisting needs the universal kind".to_string(),
        ));
    }
    if bound > s.max_weight() {
        return Err(StructuresError::BeyondBound {
            asked: bound,
            declared: s.max_weight(),
        });
    }
    let ctx = s.ctx();
    let letters = s.letters();
    let base = s.base();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut components = Symbol::new();
    for id in base.ids() {
        components.set(WedgeWord::letter(id.0), Element::term(id, Scalar::one()));
    }
    for m in 2..=bound {
        for w in ctx.wedge_words(&letters, m)? {
            if rng.gen_bool(0.5) {
                continue;
            }
            // Degree-zero component: letters one above the word degree.
            let want = w.degree(base) + 1;
            let cands: Vec<BasisId> =
                base.ids().filter(|&id| base.degree(id) == want).collect();
            if cands.is_empty() {
                continue;
            }
            let mut val = Element::zero();
            let picks = 1 + rng.gen_range(0..cands.len().min(2));
            for _ in 0..picks {
                let id = cands[rng.gen_range(0..cands.len())];
                let c = *[-2i64, -1, 1, 2]
                    .get(rng.gen_range(0..4))
                    .expect("fixed range");
                val.add_term(id, Scalar::from_int(c));
            }
            components.set(w, val);
        }
    }

    let words = ctx.wedge_words_up_to(&letters, bound)?;
    let psi = extend(&ctx, &ctx, &components, ExtendMode::Morphism, &words)?;
    let psi_inv = invert_unipotent(&psi)?;
    let d1 = extend(
        &ctx,
        &ctx,
        s.symbol(),
        ExtendMode::Coderivation { degree: 1 },
        &words,
    )?;

    let mut conj = Table::new();
    for w in &words {
        let image = psi.get(w).expect("word ensured");
        let moved = d1.apply(image)?;
        conj.insert(w.clone(), psi_inv.apply(&moved)?);
    }
    let twisted = HomotopyStructure::new(
        base.clone(),
        StructureKind::Ginfty,
        conj.corestriction(),
        bound,
    )?;

    let phi = MorphismData::new(
        StructureKind::Ginfty,
        twisted.clone(),
        s.clone(),
        components,
        bound,
    )?;
    Ok((phi, twisted))
}

/// Copy with the first structure constant bumped by one; detection tests
/// expect the square-zero check to localize the damage.
pub fn corrupt_structure(s: &HomotopyStructure) -> HomotopyStructure {
    let mut symbol = s.symbol().clone();
    let (w, val) = s.symbol().iter().next().expect("nonempty symbol");
    let (id, _) = val.iter().next().expect("nonzero value");
    let mut bumped = val.clone();
    bumped.add_term(id, Scalar::one());
    symbol.set(w.clone(), bumped);
    HomotopyStructure::new(s.base().clone(), s.kind(), symbol, s.max_weight())
        .expect("degree-preserving bump")
}

/// Copy with one component bumped by one. The target is the lowest
/// component of weight at least two and strictly below the bound: damage
/// to a top-weight component only surfaces beyond the bound when the
/// weight-one symbols vanish, and damage to the letter part would break
/// invertibility instead of the equation.
pub fn corrupt_morphism(phi: &MorphismData) -> MorphismData {
    let mut components = phi.components().clone();
    let mut entries: Vec<_> = phi.components().iter().collect();
    entries.sort_by_key(|(w, _)| (w.weight(), (*w).clone()));
    let pick = entries
        .iter()
        .find(|(w, _)| w.weight() >= 2 && w.weight() < phi.max_weight())
        .or_else(|| entries.iter().find(|(w, _)| w.weight() >= 2))
        .or_else(|| entries.first())
        .expect("nonempty components");
    let (w, val) = *pick;
    let (id, _) = val.iter().next().expect("nonzero value");
    let mut bumped = val.clone();
    bumped.add_term(id, Scalar::one());
    components.set(w.clone(), bumped);
    MorphismData::new(
        phi.kind(),
        phi.source().clone(),
        phi.target().clone(),
        components,
        phi.max_weight(),
    )
    .expect("degree-preserving bump")
}
