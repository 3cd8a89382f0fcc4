//! Bridges from the concrete calculus to the coderivation-table layer:
//! finite multivector alphabets whose Schouten bracket and wedge product
//! close, a small operator Lie algebra closed under b and the bracket,
//! and the HKR map packaged as a morphism between structures.

use std::collections::BTreeMap;

use shak_core::{BasisId, Element, GradedBasis, Scalar};
use shak_coalgebra::{Symbol, WedgeWord};
use shak_structures::synthetic::{pair_structure, PairModel};
use shak_structures::{HomotopyStructure, MorphismData, StructureKind};

use crate::boxes::TruncationBox;
use crate::error::HochschildError;
use crate::multivector::MultiVector;
use crate::ops::{OpKey, PolyDiffOp};
use crate::poly::{Exponents, Polynomial};

/// A finite multivector alphabet with a coordinate map back from
/// calculus results. Letters are single monomial-coefficient terms, so
/// decomposition is a lookup per term.
pub struct MultivectorLetters {
    pub base: GradedBasis,
    pub letters: Vec<MultiVector>,
    index: BTreeMap<(Vec<usize>, Exponents), usize>,
}

const VAR_NAMES: [&str; 2] = ["x", "y"];

fn monomial_name(exps: &[u32]) -> String {
    let mut name = String::new();
    for (v, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        name.push_str(VAR_NAMES[v]);
        if e > 1 {
            name.push_str(&e.to_string());
        }
    }
    name
}

fn field_name(indices: &[usize]) -> String {
    match indices {
        [] => "one".into(),
        [0, 1] => "pi".into(),
        [i] => format!("d{}", VAR_NAMES[*i]),
        other => panic!("no letter name for field indices {other:?}"),
    }
}

impl MultivectorLetters {
    /// The dilation-stable alphabet: monomial coefficient degree at most
    /// the arity. The scaling weight (degree minus arity) is additive
    /// under both wedge and Schouten and nonpositive on every letter, so
    /// the span is closed under both operations.
    pub fn dilation_stable(n: usize) -> Result<Self, HochschildError> {
        if n == 0 || n > 2 {
            return Err(HochschildError::Malformed(format!(
                "dilation-stable alphabet is defined for one or two variables, not {n}"
            )));
        }
        let mut names: Vec<(String, i64)> = Vec::new();
        let mut letters = Vec::new();
        let mut index = BTreeMap::new();

        let mut push = |indices: Vec<usize>, exps: Exponents| {
            let mono = monomial_name(&exps);
            let field = field_name(&indices);
            let name = if mono.is_empty() {
                field
            } else {
                format!("{mono}_{field}")
            };
            let degree = indices.len() as i64 - 1;
            let poly = Polynomial::monomial(n, exps.clone(), Scalar::one())
                .expect("enumerated exponents match vars");
            let mv = MultiVector::term(n, indices.clone(), poly)
                .expect("enumerated indices are valid");
            index.insert((indices, exps), letters.len());
            names.push((name, degree));
            letters.push(mv);
        };

        // Arity k admits coefficient degree up to k.
        let field_tuples: Vec<Vec<usize>> = match n {
            1 => vec![vec![], vec![0]],
            _ => vec![vec![], vec![0], vec![1], vec![0, 1]],
        };
        for indices in field_tuples {
            for exps in crate::boxes::bounded_exponents(n, indices.len() as u32) {
                push(indices.clone(), exps);
            }
        }

        let base = GradedBasis::new(names)?;
        Ok(MultivectorLetters {
            base,
            letters,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Id of the letter equal to the given single-term multivector shape.
    pub fn id_of(&self, indices: &[usize], exps: &[u32]) -> Option<BasisId> {
        self.index
            .get(&(indices.to_vec(), exps.to_vec()))
            .map(|&i| BasisId(i as u32))
    }

    /// Coordinates of a multivector in the alphabet. Errors when a term
    /// falls outside the span.
    pub fn element_of(&self, mv: &MultiVector) -> Result<Element, HochschildError> {
        let mut out = Element::zero();
        for (indices, poly) in mv.iter() {
            for (exps, c) in poly.iter() {
                match self.index.get(&(indices.clone(), exps.clone())) {
                    Some(&i) => out.add_term(BasisId(i as u32), c.clone()),
                    None => {
                        return Err(HochschildError::Malformed(format!(
                            "multivector outside the alphabet span: {mv}"
                        )));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The multivector a coordinate vector stands for. All letters of one
    /// element must share an arity.
    pub fn multivector_of(&self, el: &Element) -> Result<MultiVector, HochschildError> {
        let mut terms: Vec<(usize, Scalar)> = Vec::new();
        for (id, c) in el.iter() {
            let i = id.0 as usize;
            if i >= self.letters.len() {
                return Err(HochschildError::Malformed(format!(
                    "letter id {i} outside the alphabet"
                )));
            }
            terms.push((i, c.clone()));
        }
        let arity = match terms.first() {
            None => 0,
            Some((i, _)) => self.letters[*i].arity(),
        };
        let n = self.base.len();
        let vars = self.letters.first().map(|l| l.vars()).unwrap_or(1);
        debug_assert_eq!(n, self.letters.len());
        let mut out = MultiVector::zero(vars, arity);
        for (i, c) in terms {
            if self.letters[i].arity() != arity {
                return Err(HochschildError::Malformed(
                    "mixed arities in one coordinate vector".into(),
                ));
            }
            out = out.add(&self.letters[i].scale(&c));
        }
        Ok(out)
    }
}

/// The Gerstenhaber pair (Schouten bracket, wedge product) tabulated on
/// the dilation-stable alphabet. Tables are computed by the actual
/// calculus and decomposed back, so closure is verified on the way.
pub fn gerstenhaber_model(n: usize) -> Result<PairModel, HochschildError> {
    let ls = MultivectorLetters::dilation_stable(n)?;
    let mut bracket = BTreeMap::new();
    let mut product = BTreeMap::new();
    for i in 0..ls.len() {
        for j in i..ls.len() {
            let br = ls.letters[i].schouten(&ls.letters[j]);
            if !br.is_zero() {
                bracket.insert(
                    (BasisId(i as u32), BasisId(j as u32)),
                    ls.element_of(&br)?,
                );
            }
            let pr = ls.letters[i].wedge(&ls.letters[j]);
            if !pr.is_zero() {
                product.insert(
                    (BasisId(i as u32), BasisId(j as u32)),
                    ls.element_of(&pr)?,
                );
            }
        }
    }
    Ok(PairModel {
        base: ls.base,
        differential: BTreeMap::new(),
        bracket,
        product,
    })
}

/// The multivector algebra as a structure: d1 carries the Schouten
/// bracket on wedge pairs and the exterior product on tensor pairs.
pub fn gerstenhaber_structure(
    n: usize,
    bound: usize,
) -> Result<HomotopyStructure, HochschildError> {
    Ok(pair_structure(
        &gerstenhaber_model(n)?,
        StructureKind::Ginfty,
        bound,
    )?)
}

/// Same alphabet with a spurious unary differential wired in: degree
/// bookkeeping still passes, square zero fails first at weight two,
/// where the differential couples to the bracket.
pub fn corrupted_gerstenhaber_structure(
    n: usize,
    bound: usize,
) -> Result<HomotopyStructure, HochschildError> {
    let ls = MultivectorLetters::dilation_stable(n)?;
    let mut model = gerstenhaber_model(n)?;
    let one = ls
        .id_of(&[], &vec![0; n])
        .expect("constant letter exists");
    let mut x_exp = vec![0u32; n];
    x_exp[0] = 1;
    let x_dx = ls.id_of(&[0], &x_exp).expect("x d/dx letter exists");
    model
        .differential
        .insert(one, Element::term(x_dx, Scalar::one()));
    Ok(pair_structure(&model, StructureKind::Ginfty, bound)?)
}

/// Five operators on one variable closed under both b and the
/// Gerstenhaber bracket: the constant, the identity, the multiplication,
/// d/dx, and x d/dx. Tables computed by the calculus.
pub fn hochschild_dgla_model() -> Result<PairModel, HochschildError> {
    let vars = 1;
    let ops = vec![
        PolyDiffOp::from_polynomial(Polynomial::one(vars)),
        PolyDiffOp::identity(vars),
        PolyDiffOp::multiplication(vars),
        PolyDiffOp::partial(vars, 0)?,
        PolyDiffOp::term(vars, vec![vec![1]], Polynomial::variable(vars, 0)?)?,
    ];
    let names = [("one", -1), ("i", 0), ("em", 1), ("d", 0), ("xd", 0)];
    let base = GradedBasis::from_pairs(&names)?;

    let index: BTreeMap<(usize, OpKey, Exponents), usize> = ops
        .iter()
        .enumerate()
        .flat_map(|(i, op)| {
            op.iter()
                .flat_map(move |(key, poly)| {
                    poly.iter()
                        .map(move |(exps, _)| ((op.arity(), key.clone(), exps.clone()), i))
                })
        })
        .collect();
    let element_of = |op: &PolyDiffOp| -> Result<Element, HochschildError> {
        let mut out = Element::zero();
        for (key, poly) in op.iter() {
            for (exps, c) in poly.iter() {
                match index.get(&(op.arity(), key.clone(), exps.clone())) {
                    Some(&i) => out.add_term(BasisId(i as u32), c.clone()),
                    None => {
                        return Err(HochschildError::Malformed(format!(
                            "operator outside the five-letter span: {op}"
                        )));
                    }
                }
            }
        }
        Ok(out)
    };

    let mut differential = BTreeMap::new();
    for (i, op) in ops.iter().enumerate() {
        let b = op.hochschild_b();
        if !b.is_zero() {
            differential.insert(BasisId(i as u32), element_of(&b)?);
        }
    }
    let mut bracket = BTreeMap::new();
    for i in 0..ops.len() {
        for j in i..ops.len() {
            let br = ops[i].gerstenhaber(&ops[j]);
            if !br.is_zero() {
                bracket.insert((BasisId(i as u32), BasisId(j as u32)), element_of(&br)?);
            }
        }
    }
    Ok(PairModel {
        base,
        differential,
        bracket,
        product: BTreeMap::new(),
    })
}

/// The five-letter operator algebra as a differential graded Lie
/// structure.
pub fn hochschild_dgla_structure(bound: usize) -> Result<HomotopyStructure, HochschildError> {
    Ok(pair_structure(
        &hochschild_dgla_model()?,
        StructureKind::Linfty,
        bound,
    )?)
}

fn box_letter_name(exps: &[u32], key: &OpKey) -> String {
    let digits = |v: &[u32]| v.iter().map(|d| d.to_string()).collect::<String>();
    let mut name = format!("c{}", digits(exps));
    for slot in key {
        name.push_str("_k");
        name.push_str(&digits(slot));
    }
    name
}

/// The operator window of a box as a structure whose only symbol is
/// m1 = b. The top arity maps out of the window, so b is truncated to
/// zero there; square zero survives because b of the next arity down
/// still lands in the kernel.
pub fn hochschild_box_structure(
    bx: &TruncationBox,
    bound: usize,
) -> Result<HomotopyStructure, HochschildError> {
    let mut names: Vec<(String, i64)> = Vec::new();
    let mut ops: Vec<PolyDiffOp> = Vec::new();
    let mut index: BTreeMap<(usize, OpKey, Exponents), usize> = BTreeMap::new();
    for k in 0..=bx.arity_max {
        for op in bx.basis(k)? {
            let (key, poly) = op.iter().next().expect("basis operators are single terms");
            let (exps, _) = poly.iter().next().expect("basis coefficients are monomials");
            names.push((box_letter_name(exps, key), k as i64 - 1));
            index.insert((k, key.clone(), exps.clone()), ops.len());
            ops.push(op.clone());
        }
    }
    let base = GradedBasis::new(names)?;

    let mut symbol = Symbol::new();
    for (i, op) in ops.iter().enumerate() {
        if op.arity() == bx.arity_max {
            continue;
        }
        let b = op.hochschild_b();
        let mut val = Element::zero();
        for (key, poly) in b.iter() {
            for (exps, c) in poly.iter() {
                match index.get(&(b.arity(), key.clone(), exps.clone())) {
                    Some(&t) => val.add_term(BasisId(t as u32), c.clone()),
                    None => {
                        return Err(HochschildError::Malformed(format!(
                            "b leaves the box on basis operator {op}"
                        )));
                    }
                }
            }
        }
        if !val.is_zero() {
            symbol.set(WedgeWord::letter(i as u32), val);
        }
    }
    Ok(HomotopyStructure::new(
        base,
        StructureKind::Ginfty,
        symbol,
        bound,
    )?)
}

/// The HKR map packaged as a morphism of structures: the source is the
/// multivector alphabet with the zero structure, the target the box
/// window with m1 = b, and the single component sends each letter to its
/// HKR operator. The morphism equation at weight one is exactly
/// b(hkr(alpha)) = 0; all higher weights vanish structurally.
pub fn hkr_morphism(bound: usize) -> Result<MorphismData, HochschildError> {
    let (source, target, ls, bx) = hkr_endpoints(bound)?;
    let components = hkr_components(&ls, &bx, &target)?;
    Ok(MorphismData::new(
        StructureKind::Ginfty,
        source,
        target,
        components,
        bound,
    )?)
}

/// Same endpoints, with an order-two operator added to one component.
/// The degree bookkeeping accepts it; the weight-one check reports it,
/// because the perturbed image is no longer a cocycle.
pub fn perturbed_hkr_morphism(bound: usize) -> Result<MorphismData, HochschildError> {
    let (source, target, ls, bx) = hkr_endpoints(bound)?;
    let mut components = hkr_components(&ls, &bx, &target)?;
    let x_dx = ls.id_of(&[0], &[1]).expect("x d/dx letter exists");
    let perturbed_id = target
        .base()
        .id_of("c1_k2")
        .expect("the order-two letter x d^2 is in the box");
    let mut val = components.get(&WedgeWord::letter(x_dx.0));
    val.add_term(perturbed_id, Scalar::one());
    components.set(WedgeWord::letter(x_dx.0), val);
    Ok(MorphismData::new(
        StructureKind::Ginfty,
        source,
        target,
        components,
        bound,
    )?)
}

fn hkr_endpoints(
    bound: usize,
) -> Result<
    (
        HomotopyStructure,
        HomotopyStructure,
        SourceLetters,
        TruncationBox,
    ),
    HochschildError,
> {
    let ls = source_letters()?;
    let source = HomotopyStructure::new(
        ls.base.clone(),
        StructureKind::Ginfty,
        Symbol::new(),
        bound,
    )
    .map_err(HochschildError::from)?;
    let bx = TruncationBox::new(1, 2, 2, 2)?;
    let target = hochschild_box_structure(&bx, bound)?;
    Ok((source, target, ls, bx))
}

struct SourceLetters {
    base: GradedBasis,
    letters: Vec<MultiVector>,
}

impl SourceLetters {
    fn id_of(&self, indices: &[usize], exps: &[u32]) -> Option<BasisId> {
        let probe = {
            let poly = Polynomial::monomial(1, exps.to_vec(), Scalar::one()).ok()?;
            MultiVector::term(1, indices.to_vec(), poly).ok()?
        };
        self.letters
            .iter()
            .position(|l| *l == probe)
            .map(|i| BasisId(i as u32))
    }
}

/// Functions and vector fields on the line with coefficient degree at
/// most two: one, x, x2, dx, x_dx, x2_dx.
fn source_letters() -> Result<SourceLetters, HochschildError> {
    let mut names: Vec<(String, i64)> = Vec::new();
    let mut letters = Vec::new();
    for (indices, deg) in [(vec![], -1i64), (vec![0usize], 0)] {
        for e in 0..=2u32 {
            let mono = monomial_name(&[e]);
            let field = field_name(&indices);
            let name = if mono.is_empty() {
                field
            } else {
                format!("{mono}_{field}")
            };
            names.push((name, deg));
            letters.push(
                MultiVector::term(
                    1,
                    indices.clone(),
                    Polynomial::monomial(1, vec![e], Scalar::one())?,
                )
                .expect("fixed indices are valid"),
            );
        }
    }
    Ok(SourceLetters {
        base: GradedBasis::new(names)?,
        letters,
    })
}

fn hkr_components(
    ls: &SourceLetters,
    bx: &TruncationBox,
    target: &HomotopyStructure,
) -> Result<Symbol, HochschildError> {
    debug_assert!(bx.vars == 1);
    let mut components = Symbol::new();
    for (i, mv) in ls.letters.iter().enumerate() {
        let op = mv.hkr();
        let mut val = Element::zero();
        for (key, poly) in op.iter() {
            for (exps, c) in poly.iter() {
                let name = box_letter_name(exps, key);
                let id = target.base().id_of(&name).ok_or_else(|| {
                    HochschildError::Malformed(format!(
                        "HKR image letter {name} missing from the box"
                    ))
                })?;
                val.add_term(id, c.clone());
            }
        }
        components.set(WedgeWord::letter(i as u32), val);
    }
    Ok(components)
}
