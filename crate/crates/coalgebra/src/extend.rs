use std::collections::BTreeMap;

use shak_core::{BasisId, Element, FactoredSystem, Scalar, SparseVec, DEFAULT_SOLVER_CAP};

use crate::ctx::{CoalgebraCtx, CowElement, PairElement};
use crate::error::CoalgebraError;
use crate::word::WedgeWord;

/// Cogenerator-level data: for each canonical word, the letter component
/// of the value. Missing words mean zero.
#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct Symbol {
    map: BTreeMap<WedgeWord, Element>,
}

impl Symbol {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, w: WedgeWord, value: Element) {
        if value.is_zero() {
            self.map.remove(&w);
        } else {
            self.map.insert(w, value);
        }
    }

    pub fn get(&self, w: &WedgeWord) -> Element {
        self.map.get(w).cloned().unwrap_or_else(Element::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WedgeWord, &Element)> {
        self.map.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn max_weight(&self) -> usize {
        self.map.keys().map(|w| w.weight()).max().unwrap_or(0)
    }

    /// Applies the symbol to a combination of canonical words.
    pub fn apply(&self, e: &CowElement) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.iter() {
            for (id, v) in self.get(w).iter() {
                out.add_term(id, v * c);
            }
        }
        out
    }
}

/// Values of a map out of the coalgebra on canonical words.
#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct Table {
    map: BTreeMap<WedgeWord, CowElement>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, w: WedgeWord, value: CowElement) {
        self.map.insert(w, value);
    }

    pub fn get(&self, w: &WedgeWord) -> Option<&CowElement> {
        self.map.get(w)
    }

    pub fn contains(&self, w: &WedgeWord) -> bool {
        self.map.contains_key(w)
    }

    pub fn words(&self) -> impl Iterator<Item = &WedgeWord> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WedgeWord, &CowElement)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Linear application; every word of `e` must have an entry.
    pub fn apply(&self, e: &CowElement) -> Result<CowElement, CoalgebraError> {
        let mut out = CowElement::zero();
        for (w, c) in e.iter() {
            let v = self.get(w).ok_or_else(|| CoalgebraError::MissingEntry {
                word: w.to_string(),
            })?;
            out.add_scaled(v, c);
        }
        Ok(out)
    }

    /// Letter components of the values: the cogenerator-level data this
    /// table extends.
    pub fn corestriction(&self) -> Symbol {
        let mut sym = Symbol::new();
        for (w, val) in self.iter() {
            let mut e = Element::zero();
            for (u, c) in val.iter() {
                if u.is_letter() {
                    e.add_term(BasisId(u.factors[0].letters[0]), c.clone());
                }
            }
            sym.set(w.clone(), e);
        }
        sym
    }

    /// Identity on a set of canonical words.
    pub fn identity(words: impl IntoIterator<Item = WedgeWord>) -> Table {
        let mut t = Table::new();
        for w in words {
            t.insert(w.clone(), CowElement::basis(w));
        }
        t
    }
}

/// What kind of map is being extended from its cogenerator data.
pub enum ExtendMode<'a> {
    /// Coderivation of the coalgebra of the given degree: both
    /// cooperations satisfy the co-Leibniz rule.
    Coderivation { degree: i64 },
    /// Coalgebra morphism (degree 0): both cooperations intertwine.
    Morphism,
    /// Degree-`degree` map N with the co-Leibniz rule taken along known
    /// morphism tables: cooperations of N(w) decompose as N x right +
    /// left x N. With left = right it linearizes morphism equations in
    /// one unknown direction; with two tables it is the shape of a
    /// homotopy between them.
    DerivationAlong {
        left: &'a Table,
        right: &'a Table,
        degree: i64,
    },
}

impl ExtendMode<'_> {
    fn degree(&self) -> i64 {
        match self {
            ExtendMode::Coderivation { degree } => *degree,
            ExtendMode::Morphism => 0,
            ExtendMode::DerivationAlong { degree, .. } => *degree,
        }
    }
}

struct BlockSystem {
    cands: Vec<WedgeWord>,
    /// Row space: (0, pair) rows from the coproduct, (1, pair) from the
    /// cobracket.
    pair_index: BTreeMap<(u8, WedgeWord, WedgeWord), u32>,
    factored: FactoredSystem,
}

/// Extends cogenerator data over a downward-closed set of words, solving
/// the two co-Leibniz (or intertwining) constraints word by word.
///
/// The constraints split by the letter multiset and weight of the value
/// components, so each word costs a handful of small exact solves. The
/// systems are provably uniquely solvable; a failure therefore signals an
/// inconsistent sign convention or malformed input and comes back as an
/// error carrying the offending word.
pub struct Extender<'a> {
    src: &'a CoalgebraCtx,
    tgt: &'a CoalgebraCtx,
    sym: &'a Symbol,
    mode: ExtendMode<'a>,
    cap: usize,
    blocks: BTreeMap<(usize, Vec<u32>, i64), BlockSystem>,
    table: Table,
}

/// One-call interface: extend `sym` on the given words (legs demanded by
/// the recursion are included in the result).
pub fn extend(
    src: &CoalgebraCtx,
    tgt: &CoalgebraCtx,
    sym: &Symbol,
    mode: ExtendMode,
    words: &[WedgeWord],
) -> Result<Table, CoalgebraError> {
    let mut ex = Extender::new(src, tgt, sym, mode, DEFAULT_SOLVER_CAP)?;
    for w in words {
        ex.ensure(w)?;
    }
    Ok(ex.into_table())
}

impl<'a> Extender<'a> {
    pub fn new(
        src: &'a CoalgebraCtx,
        tgt: &'a CoalgebraCtx,
        sym: &'a Symbol,
        mode: ExtendMode<'a>,
        cap: usize,
    ) -> Result<Self, CoalgebraError> {
        // Symbol values must be homogeneous of the mode degree.
        let op_degree = mode.degree();
        for (w, val) in sym.iter() {
            let want = w.degree(src.alphabet()) + op_degree;
            for (id, _) in val.iter() {
                // As a weight-one word a letter sits one below its
                // alphabet degree.
                let got = tgt.alphabet().degree(id) - 1;
                if got != want {
                    return Err(CoalgebraError::BadSymbol {
                        word: w.to_string(),
                        detail: format!(
                            "value letter {} has word degree {got}, expected {want}",
                            tgt.alphabet().name(id)
                        ),
                    });
                }
            }
        }
        Ok(Extender {
            src,
            tgt,
            sym,
            mode,
            cap,
            blocks: BTreeMap::new(),
            table: Table::new(),
        })
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn into_table(self) -> Table {
        self.table
    }

    /// Computes (memoized) the value on `w` and everything it depends on.
    pub fn ensure(&mut self, w: &WedgeWord) -> Result<(), CoalgebraError> {
        if self.table.contains(w) {
            return Ok(());
        }
        let val = self.compute(w)?;
        self.table.insert(w.clone(), val);
        Ok(())
    }

    /// Value on `w` without memoizing it. Lower-weight legs still land in
    /// the table, so sweeping a whole weight stratum through this keeps the
    /// table bounded by the strata below it.
    pub fn value_of(&mut self, w: &WedgeWord) -> Result<CowElement, CoalgebraError> {
        if let Some(v) = self.table.get(w) {
            return Ok(v.clone());
        }
        self.compute(w)
    }

    fn compute(&mut self, w: &WedgeWord) -> Result<CowElement, CoalgebraError> {
        let m = w.weight();
        if m == 1 {
            return Ok(embed_letters(&self.sym.get(w)));
        }

        let cop = self.src.reduced_coproduct(w);
        let cob = self.src.cobracket(w)?;
        for ((a, b), _) in cop.iter().chain(cob.iter()) {
            self.ensure(a)?;
            self.ensure(b)?;
        }

        let rhs_cop = self.assemble(&cop, 0)?;
        let rhs_cob = self.assemble(&cob, 1)?;

        let mut val = embed_letters(&self.sym.get(w));
        let tdeg = w.degree(self.src.alphabet()) + self.mode.degree();

        // Group the right-hand sides by value-component weight and letter
        // multiset; each group pins one component block of the value.
        let mut groups: BTreeMap<(usize, Vec<u32>), (PairElement, PairElement)> = BTreeMap::new();
        for (which, rhs) in [(0u8, &rhs_cop), (1u8, &rhs_cob)] {
            for ((a, b), c) in rhs.iter() {
                let k = a.weight() + b.weight();
                let mut ms = a.sorted_letters();
                ms.extend(b.sorted_letters());
                ms.sort_unstable();
                let entry = groups
                    .entry((k, ms))
                    .or_insert_with(|| (PairElement::zero(), PairElement::zero()));
                let slot = if which == 0 { &mut entry.0 } else { &mut entry.1 };
                slot.add_term((a.clone(), b.clone()), c.clone());
            }
        }

        for ((k, ms), (rd, rc)) in groups {
            let solved = self.solve_block(w, k, &ms, tdeg, &rd, &rc)?;
            val.add(&solved);
        }
        Ok(val)
    }

    /// Right-hand side pairs for the value of `w`, from the pairs of a
    /// cooperation applied to `w` itself. `coop_degree` is 1 for the odd
    /// cobracket: commuting the map past the cooperation contributes a
    /// global Koszul sign on top of the within-pair pass.
    fn assemble(&self, pairs: &PairElement, coop_degree: i64) -> Result<PairElement, CoalgebraError> {
        let gbs = self.src.alphabet();
        let glob = Scalar::neg_one_pow(self.mode.degree() * coop_degree);
        let mut out = PairElement::zero();
        for ((w1, w2), s) in pairs.iter() {
            match &self.mode {
                ExtendMode::Coderivation { degree } => {
                    let d1 = self.table.get(w1).expect("leg computed");
                    let d2 = self.table.get(w2).expect("leg computed");
                    for (u, cu) in d1.iter() {
                        out.add_term((u.clone(), w2.clone()), &(s * cu) * &glob);
                    }
                    let pass = &Scalar::neg_one_pow(degree * w1.degree(gbs)) * &glob;
                    for (v, cv) in d2.iter() {
                        out.add_term((w1.clone(), v.clone()), &(s * cv) * &pass);
                    }
                }
                ExtendMode::Morphism => {
                    let f1 = self.table.get(w1).expect("leg computed");
                    let f2 = self.table.get(w2).expect("leg computed");
                    for (u, cu) in f1.iter() {
                        for (v, cv) in f2.iter() {
                            out.add_term((u.clone(), v.clone()), &(s * cu) * cv);
                        }
                    }
                }
                ExtendMode::DerivationAlong { left, right, degree } => {
                    let n1 = self.table.get(w1).expect("leg computed");
                    let n2 = self.table.get(w2).expect("leg computed");
                    let t1 = left.get(w1).ok_or_else(|| CoalgebraError::MissingEntry {
                        word: w1.to_string(),
                    })?;
                    let t2 = right.get(w2).ok_or_else(|| CoalgebraError::MissingEntry {
                        word: w2.to_string(),
                    })?;
                    for (u, cu) in n1.iter() {
                        for (v, cv) in t2.iter() {
                            out.add_term((u.clone(), v.clone()), &(&(s * cu) * cv) * &glob);
                        }
                    }
                    let pass = &Scalar::neg_one_pow(degree * w1.degree(gbs)) * &glob;
                    for (u, cu) in t1.iter() {
                        for (v, cv) in n2.iter() {
                            out.add_term((u.clone(), v.clone()), &(&(s * cu) * cv) * &pass);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn solve_block(
        &mut self,
        at: &WedgeWord,
        k: usize,
        ms: &[u32],
        tdeg: i64,
        rd: &PairElement,
        rc: &PairElement,
    ) -> Result<CowElement, CoalgebraError> {
        let key = (k, ms.to_vec(), tdeg);
        if !self.blocks.contains_key(&key) {
            let block = self.build_block(k, ms, tdeg)?;
            self.blocks.insert(key.clone(), block);
        }
        let block = &self.blocks[&key];

        // Equations whose pair never occurs in any candidate image are
        // 0 = rhs; they must vanish.
        let mut rhs = SparseVec::new();
        for (which, part) in [(0u8, rd), (1u8, rc)] {
            for ((a, b), c) in part.iter() {
                match block.pair_index.get(&(which, a.clone(), b.clone())) {
                    Some(&row) => rhs.add_scaled(&SparseVec::unit(row), c),
                    None => {
                        return Err(CoalgebraError::ConventionViolation {
                            word: at.to_string(),
                            detail: format!(
                                "required pair {a} (x) {b} unreachable from any candidate value"
                            ),
                        })
                    }
                }
            }
        }

        let x = block
            .factored
            .solve(&rhs)
            .map_err(|cert| CoalgebraError::ConventionViolation {
                word: at.to_string(),
                detail: format!(
                    "block weight {k} over {ms:?}: equations inconsistent (residual {})",
                    cert.residual
                ),
            })?;
        let mut out = CowElement::zero();
        for (i, c) in x.iter() {
            out.add_term(block.cands[i as usize].clone(), c.clone());
        }
        Ok(out)
    }

    fn build_block(
        &self,
        k: usize,
        ms: &[u32],
        tdeg: i64,
    ) -> Result<BlockSystem, CoalgebraError> {
        let cands = self.tgt.wedge_words_of_multiset(ms, tdeg)?;
        let mut pair_index: BTreeMap<(u8, WedgeWord, WedgeWord), u32> = BTreeMap::new();
        let mut images: Vec<(PairElement, PairElement)> = Vec::with_capacity(cands.len());
        for cand in &cands {
            debug_assert_eq!(cand.weight(), k);
            let d = self.tgt.reduced_coproduct(cand);
            let c = self.tgt.cobracket(cand)?;
            for (which, part) in [(0u8, &d), (1u8, &c)] {
                for ((a, b), _) in part.iter() {
                    let key = (which, a.clone(), b.clone());
                    let next = pair_index.len() as u32;
                    pair_index.entry(key).or_insert(next);
                }
            }
            images.push((d, c));
        }
        let mut cols: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); cands.len()];
        for (j, (d, c)) in images.iter().enumerate() {
            for (which, part) in [(0u8, d), (1u8, c)] {
                for ((a, b), coeff) in part.iter() {
                    let row = pair_index[&(which, a.clone(), b.clone())];
                    cols[j].push((row, coeff.clone()));
                }
            }
        }
        let nrows = pair_index.len();
        let mut rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); nrows];
        for (j, col) in cols.into_iter().enumerate() {
            for (row, coeff) in col {
                rows[row as usize].push((j as u32, coeff));
            }
        }
        let rows: Vec<SparseVec> = rows
            .into_iter()
            .map(|r| SparseVec::from_pairs(r))
            .collect();
        let factored = FactoredSystem::new(rows, cands.len() as u32, self.cap)?;
        if k >= 2 && factored.rank() < cands.len() {
            return Err(CoalgebraError::NotUnique {
                word: format!("block over {ms:?} degree {tdeg}"),
                weight: k,
            });
        }
        Ok(BlockSystem {
            cands,
            pair_index,
            factored,
        })
    }
}

/// Letters of an alphabet element as weight-one words.
pub fn embed_letters(e: &Element) -> CowElement {
    let mut out = CowElement::zero();
    for (id, c) in e.iter() {
        out.add_term(WedgeWord::letter(id.0), c.clone());
    }
    out
}

/// Checks the coderivation co-Leibniz rules on every given word; returns
/// the words that violate them with a short description.
pub fn verify_coderivation(
    ctx: &CoalgebraCtx,
    table: &Table,
    degree: i64,
    words: &[WedgeWord],
) -> Result<Vec<(WedgeWord, String)>, CoalgebraError> {
    let mut bad = Vec::new();
    for w in words {
        let val = table.get(w).ok_or_else(|| CoalgebraError::MissingEntry {
            word: w.to_string(),
        })?;
        for (which, lhs_pairs, rhs_pairs) in cooperation_sides(ctx, table, None, degree, w, val)? {
            let mut diff = lhs_pairs;
            diff.sub(&rhs_pairs);
            if !diff.is_zero() {
                bad.push((w.clone(), format!("co-Leibniz fails for cooperation {which}")));
            }
        }
    }
    Ok(bad)
}

/// Checks the morphism intertwining rules on every given word.
pub fn verify_morphism(
    src: &CoalgebraCtx,
    tgt: &CoalgebraCtx,
    table: &Table,
    words: &[WedgeWord],
) -> Result<Vec<(WedgeWord, String)>, CoalgebraError> {
    let mut bad = Vec::new();
    for w in words {
        let val = table.get(w).ok_or_else(|| CoalgebraError::MissingEntry {
            word: w.to_string(),
        })?;
        // Left sides: cooperations of the value in the target.
        let mut lhs_cop = PairElement::zero();
        let mut lhs_cob = PairElement::zero();
        for (u, c) in val.iter() {
            lhs_cop.add_scaled(&tgt.reduced_coproduct(u), c);
            lhs_cob.add_scaled(&tgt.cobracket(u)?, c);
        }
        // Right sides: (table x table) of the source cooperations.
        let mut rhs_cop = PairElement::zero();
        for ((a, b), s) in src.reduced_coproduct(w).iter() {
            let (fa, fb) = (apply_req(table, a)?, apply_req(table, b)?);
            for (u, cu) in fa.iter() {
                for (v, cv) in fb.iter() {
                    rhs_cop.add_term((u.clone(), v.clone()), &(s * cu) * cv);
                }
            }
        }
        let mut rhs_cob = PairElement::zero();
        for ((a, b), s) in src.cobracket(w)?.iter() {
            let (fa, fb) = (apply_req(table, a)?, apply_req(table, b)?);
            for (u, cu) in fa.iter() {
                for (v, cv) in fb.iter() {
                    rhs_cob.add_term((u.clone(), v.clone()), &(s * cu) * cv);
                }
            }
        }
        let mut d1 = lhs_cop;
        d1.sub(&rhs_cop);
        if !d1.is_zero() {
            bad.push((w.clone(), "coproduct intertwining fails".to_string()));
        }
        let mut d2 = lhs_cob;
        d2.sub(&rhs_cob);
        if !d2.is_zero() {
            bad.push((w.clone(), "cobracket intertwining fails".to_string()));
        }
    }
    Ok(bad)
}

fn apply_req<'t>(table: &'t Table, w: &WedgeWord) -> Result<&'t CowElement, CoalgebraError> {
    table.get(w).ok_or_else(|| CoalgebraError::MissingEntry {
        word: w.to_string(),
    })
}

#[allow(clippy::type_complexity)]
fn cooperation_sides(
    ctx: &CoalgebraCtx,
    table: &Table,
    along: Option<(&Table, &Table)>,
    degree: i64,
    w: &WedgeWord,
    val: &CowElement,
) -> Result<Vec<(&'static str, PairElement, PairElement)>, CoalgebraError> {
    let gb = ctx.alphabet();
    let mut out = Vec::new();
    for which in ["coproduct", "cobracket"] {
        // Commuting the map past the odd cobracket costs a global sign.
        let glob = if which == "cobracket" {
            Scalar::neg_one_pow(degree)
        } else {
            Scalar::one()
        };
        let pairs_of = |u: &WedgeWord| -> Result<PairElement, CoalgebraError> {
            Ok(if which == "coproduct" {
                ctx.reduced_coproduct(u)
            } else {
                ctx.cobracket(u)?
            })
        };
        let mut lhs = PairElement::zero();
        for (u, c) in val.iter() {
            lhs.add_scaled(&pairs_of(u)?, c);
        }
        let mut rhs = PairElement::zero();
        for ((a, b), s) in pairs_of(w)?.iter() {
            let da = apply_req(table, a)?;
            let db = apply_req(table, b)?;
            let (ta, tb) = match along {
                Some((left, right)) => (apply_req(left, a)?.clone(), apply_req(right, b)?.clone()),
                None => (CowElement::basis(a.clone()), CowElement::basis(b.clone())),
            };
            for (u, cu) in da.iter() {
                for (v, cv) in tb.iter() {
                    rhs.add_term((u.clone(), v.clone()), &(&(s * cu) * cv) * &glob);
                }
            }
            let pass = &Scalar::neg_one_pow(degree * a.degree(gb)) * &glob;
            for (u, cu) in ta.iter() {
                for (v, cv) in db.iter() {
                    rhs.add_term((u.clone(), v.clone()), &(&(s * cu) * cv) * &pass);
                }
            }
        }
        out.push((which, lhs, rhs));
    }
    Ok(out)
}

/// Composition `outer` after `inner` on the domain of `inner`.
pub fn compose_tables(outer: &Table, inner: &Table) -> Result<Table, CoalgebraError> {
    let mut out = Table::new();
    for (w, e) in inner.iter() {
        out.insert(w.clone(), outer.apply(e)?);
    }
    Ok(out)
}

/// Inverts a morphism table whose weight-graded top is the identity.
/// The result is defined on the same words; every dependency must be in
/// the domain.
pub fn invert_unipotent(table: &Table) -> Result<Table, CoalgebraError> {
    let mut words: Vec<WedgeWord> = table.words().cloned().collect();
    words.sort_by_key(|w| (w.weight(), w.clone()));
    let mut inv = Table::new();
    for w in &words {
        let val = table.get(w).expect("domain word");
        // Unipotence: the top-weight part must be exactly w.
        let mut nw = val.clone();
        nw.add_term(w.clone(), -Scalar::one());
        if nw.keys().any(|u| u.weight() >= w.weight()) {
            return Err(CoalgebraError::ConventionViolation {
                word: w.to_string(),
                detail: "table is not unipotent at this word".to_string(),
            });
        }
        // phi(w + r) = w  =>  r = -N(w) - N(r), solved by iteration since
        // N strictly drops weight.
        let mut r = CowElement::zero();
        loop {
            let mut next = apply_n(table, &r, w)?;
            next.add(&nw);
            let next = next.neg();
            if next == r {
                break;
            }
            r = next;
        }
        let mut res = CowElement::basis(w.clone());
        res.add(&r);
        // Exactness check by substitution.
        let back = table.apply(&res)?;
        if back != CowElement::basis(w.clone()) {
            return Err(CoalgebraError::ConventionViolation {
                word: w.to_string(),
                detail: "inverse substitution check failed".to_string(),
            });
        }
        inv.insert(w.clone(), res);
    }
    Ok(inv)
}

/// N(e) = table(e) - e, requiring entries for every key.
fn apply_n(table: &Table, e: &CowElement, _at: &WedgeWord) -> Result<CowElement, CoalgebraError> {
    let mut out = table.apply(e)?;
    out.sub(e);
    Ok(out)
}
