use std::cell::RefCell;
use std::collections::BTreeMap;

use shak_core::{
    sort_by_key_with_sign, BasisId, FactoredSystem, GradedBasis, Scalar, SparseVec,
    DEFAULT_SOLVER_CAP,
};

use crate::error::CoalgebraError;
use crate::lincomb::LinComb;
use crate::word::{TensorWord, WedgeWord};

pub type TensElement = LinComb<TensorWord>;
pub type CowElement = LinComb<WedgeWord>;
pub type PairElement = LinComb<(WedgeWord, WedgeWord)>;

/// Sign conventions that are fixed per context.
///
/// `shuffle_shift` is added to every letter degree inside shuffle products
/// and cogenerator splits. The default 0 uses the alphabet degrees as they
/// are; the consistency audits in the test suite pin this choice down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conventions {
    pub shuffle_shift: i64,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { shuffle_shift: 0 }
    }
}

/// One letter multiset worth of shuffle data: every arrangement, the
/// subset that survives as basis words (sections), and the rewriting of
/// the rest into sections.
struct Block {
    sections: Vec<TensorWord>,
    reductions: BTreeMap<TensorWord, TensElement>,
}

/// Alphabet plus conventions plus cached shuffle blocks. All word-level
/// operations go through one of these; contexts are cheap to build and
/// single-threaded by design.
pub struct CoalgebraCtx {
    alphabet: GradedBasis,
    conv: Conventions,
    blocks: RefCell<BTreeMap<Vec<u32>, std::rc::Rc<Block>>>,
}

impl CoalgebraCtx {
    pub fn new(alphabet: GradedBasis, conv: Conventions) -> Self {
        CoalgebraCtx {
            alphabet,
            conv,
            blocks: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn with_default_conventions(alphabet: GradedBasis) -> Self {
        Self::new(alphabet, Conventions::default())
    }

    pub fn alphabet(&self) -> &GradedBasis {
        &self.alphabet
    }

    pub fn conventions(&self) -> Conventions {
        self.conv
    }

    pub fn letter_degree(&self, letter: u32) -> i64 {
        self.alphabet.degree(BasisId(letter))
    }

    /// Degree used in shuffle and split signs.
    pub fn shuffle_degree(&self, letter: u32) -> i64 {
        self.alphabet.degree(BasisId(letter)) + self.conv.shuffle_shift
    }

    /// Shuffle product of two letter sequences as a combination of
    /// arrangements, with Koszul signs over the shuffle-sign degrees.
    pub fn shuffle_product(&self, u: &[u32], v: &[u32]) -> TensElement {
        let n = u.len();
        let m = v.len();
        let mut out = TensElement::zero();
        // Choose positions for u among n + m slots; letters keep order.
        let mut choice: Vec<usize> = (0..n).collect();
        loop {
            let mut word = vec![u32::MAX; n + m];
            for (i, &pos) in choice.iter().enumerate() {
                word[pos] = u[i];
            }
            let mut vi = 0;
            let mut exp = 0i64;
            for slot in word.iter_mut() {
                if *slot == u32::MAX {
                    *slot = v[vi];
                    vi += 1;
                } else if vi > 0 {
                    // This u-letter jumped past the v-letters already placed.
                    let du = self.shuffle_degree(*slot);
                    let dv: i64 = v[..vi].iter().map(|&l| self.shuffle_degree(l)).sum();
                    exp += du * dv;
                }
            }
            out.add_term(TensorWord::new(word), Scalar::neg_one_pow(exp));

            // Next combination in lexicographic order.
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if choice[k] < n + m - (n - k) {
                    choice[k] += 1;
                    for j in k + 1..n {
                        choice[j] = choice[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn block(&self, multiset: &[u32]) -> Result<std::rc::Rc<Block>, CoalgebraError> {
        if let Some(b) = self.blocks.borrow().get(multiset) {
            return Ok(b.clone());
        }
        let b = std::rc::Rc::new(self.build_block(multiset)?);
        self.blocks
            .borrow_mut()
            .insert(multiset.to_vec(), b.clone());
        Ok(b)
    }

    fn build_block(&self, multiset: &[u32]) -> Result<Block, CoalgebraError> {
        debug_assert!(multiset.windows(2).all(|w| w[0] <= w[1]));
        let arrangements = distinct_permutations(multiset);
        let index: BTreeMap<&TensorWord, u32> = arrangements
            .iter()
            .enumerate()
            .map(|(i, w)| (w, i as u32))
            .collect();

        // One relation per ordered pair of complementary nonempty
        // sub-arrangements: their shuffle product is zero in the quotient.
        let mut rows: Vec<SparseVec> = Vec::new();
        if multiset.len() >= 2 {
            for (sub, rest) in proper_splits(multiset) {
                for u in distinct_permutations(&sub) {
                    for v in distinct_permutations(&rest) {
                        let rel = self.shuffle_product(&u.letters, &v.letters);
                        rows.push(SparseVec::from_pairs(
                            rel.iter().map(|(w, c)| (index[w], c.clone())),
                        ));
                    }
                }
            }
        }

        let sys = FactoredSystem::new(rows, arrangements.len() as u32, DEFAULT_SOLVER_CAP)?;
        let sections: Vec<TensorWord> = sys
            .free_cols()
            .iter()
            .map(|&c| arrangements[c as usize].clone())
            .collect();
        let mut reductions = BTreeMap::new();
        for k in 0..sys.rank() {
            let (col, row) = sys.pivot_row(k);
            let mut red = TensElement::zero();
            for (j, c) in row.iter() {
                if j != col {
                    red.add_term(arrangements[j as usize].clone(), -c.clone());
                }
            }
            reductions.insert(arrangements[col as usize].clone(), red);
        }
        Ok(Block {
            sections,
            reductions,
        })
    }

    /// Basis arrangements (honest words) for a letter multiset.
    pub fn sections_of(&self, multiset: &[u32]) -> Result<Vec<TensorWord>, CoalgebraError> {
        Ok(self.block(multiset)?.sections.clone())
    }

    /// Rewrites a tensor word into the shuffle-quotient basis.
    pub fn normalize_tensor(&self, t: &TensorWord) -> Result<TensElement, CoalgebraError> {
        let block = self.block(&t.sorted_letters())?;
        match block.reductions.get(t) {
            Some(red) => Ok(red.clone()),
            None => Ok(TensElement::basis(t.clone())),
        }
    }

    /// Sorts already-reduced factors into canonical order, tracking the
    /// Koszul sign over factor degrees. None when the word dies on a
    /// repeated odd factor.
    pub fn sort_factors(&self, mut factors: Vec<TensorWord>) -> Option<(WedgeWord, Scalar)> {
        let gb = &self.alphabet;
        let sign = sort_by_key_with_sign(&mut factors, |t| t.clone(), |t| t.factor_degree(gb));
        for pair in factors.windows(2) {
            if pair[0] == pair[1] && pair[0].factor_degree(gb) % 2 != 0 {
                return None;
            }
        }
        Some((WedgeWord::new(factors), sign))
    }

    /// Full normal form of a wedge word: reduce each factor, distribute,
    /// sort factors, kill repeated odd factors.
    pub fn normalize_wedge(&self, w: &WedgeWord) -> Result<CowElement, CoalgebraError> {
        let mut acc: Vec<(Vec<TensorWord>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for f in &w.factors {
            let nf = self.normalize_tensor(f)?;
            let mut next = Vec::with_capacity(acc.len() * nf.len().max(1));
            for (prefix, coeff) in &acc {
                for (t, c) in nf.iter() {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    next.push((p, coeff * c));
                }
            }
            acc = next;
        }
        let mut out = CowElement::zero();
        for (factors, coeff) in acc {
            if let Some((word, sign)) = self.sort_factors(factors) {
                out.add_term(word, coeff * sign);
            }
        }
        Ok(out)
    }

    /// Normalizes every key of a combination of possibly non-canonical
    /// wedge words.
    pub fn normalize_cow(&self, e: &CowElement) -> Result<CowElement, CoalgebraError> {
        let mut out = CowElement::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&self.normalize_wedge(w)?, c);
        }
        Ok(out)
    }
}

/// All distinct arrangements of a sorted multiset, in lexicographic order.
fn distinct_permutations(multiset: &[u32]) -> Vec<TensorWord> {
    let mut cur = multiset.to_vec();
    let mut out = Vec::new();
    loop {
        out.push(TensorWord::new(cur.clone()));
        // Next lexicographic permutation with repeats.
        let n = cur.len();
        let mut i = n.wrapping_sub(1);
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Proper two-part splits of a sorted multiset into (sub, complement),
/// each nonempty, enumerated once per distinct sub-multiset.
fn proper_splits(multiset: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    // Count runs of equal letters, then choose how many of each run goes
    // into the sub-multiset.
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &l in multiset {
        match runs.last_mut() {
            Some((v, n)) if *v == l => *n += 1,
            _ => runs.push((l, 1)),
        }
    }
    let mut out = Vec::new();
    let mut counts = vec![0usize; runs.len()];
    loop {
        // Advance the mixed-radix counter.
        let mut k = 0;
        loop {
            if k == runs.len() {
                return out;
            }
            if counts[k] < runs[k].1 {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
            k += 1;
        }
        let taken: usize = counts.iter().sum();
        if taken == 0 || taken == multiset.len() {
            continue;
        }
        let mut sub = Vec::new();
        let mut rest = Vec::new();
        for (i, &(v, n)) in runs.iter().enumerate() {
            sub.extend(std::iter::repeat(v).take(counts[i]));
            rest.extend(std::iter::repeat(v).take(n - counts[i]));
        }
        out.push((sub, rest));
    }
}
