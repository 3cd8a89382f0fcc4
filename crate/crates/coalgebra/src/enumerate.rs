use crate::ctx::CoalgebraCtx;
use crate::error::CoalgebraError;
use crate::word::{TensorWord, WedgeWord};

/// Sorted multisets of `size` entries drawn from `letters` (sorted,
/// deduplicated by the caller), lexicographic order.
fn multisets(letters: &[u32], size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(letters: &[u32], from: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..letters.len() {
            cur.push(letters[i]);
            rec(letters, i, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(letters, 0, size, &mut cur, &mut out);
    out
}

impl CoalgebraCtx {
    /// Canonical basis words of the cogenerator space in a given length
    /// over a letter subset: shuffle-basis arrangements of every multiset.
    pub fn section_words(
        &self,
        letters: &[u32],
        len: usize,
    ) -> Result<Vec<TensorWord>, CoalgebraError> {
        let mut ls = letters.to_vec();
        ls.sort_unstable();
        ls.dedup();
        let mut out = Vec::new();
        for m in multisets(&ls, len) {
            out.extend(self.sections_of(&m)?);
        }
        out.sort();
        Ok(out)
    }

    /// Canonical wedge words of exact total weight over a letter subset:
    /// nondecreasing factor sequences of section words, repeated factors
    /// only in even factor degree.
    pub fn wedge_words(
        &self,
        letters: &[u32],
        weight: usize,
    ) -> Result<Vec<WedgeWord>, CoalgebraError> {
        let mut by_len: Vec<Vec<TensorWord>> = vec![Vec::new()];
        for l in 1..=weight {
            by_len.push(self.section_words(letters, l)?);
        }
        let gb = self.alphabet().clone();
        let mut out = Vec::new();
        let mut stack: Vec<TensorWord> = Vec::new();
        fn rec(
            by_len: &[Vec<TensorWord>],
            gb: &shak_core::GradedBasis,
            left: usize,
            stack: &mut Vec<TensorWord>,
            out: &mut Vec<WedgeWord>,
        ) {
            if left == 0 {
                out.push(WedgeWord::new(stack.clone()));
                return;
            }
            for l in 1..=left {
                for t in &by_len[l] {
                    if let Some(last) = stack.last() {
                        if t < last {
                            continue;
                        }
                        if t == last && t.factor_degree(gb) % 2 != 0 {
                            continue;
                        }
                    }
                    stack.push(t.clone());
                    rec(by_len, gb, left - l, stack, out);
                    stack.pop();
                }
            }
        }
        rec(&by_len, &gb, weight, &mut stack, &mut out);
        out.sort();
        Ok(out)
    }

    /// Wedge words of every weight from 1 to `max_weight`.
    pub fn wedge_words_up_to(
        &self,
        letters: &[u32],
        max_weight: usize,
    ) -> Result<Vec<WedgeWord>, CoalgebraError> {
        let mut out = Vec::new();
        for m in 1..=max_weight {
            out.extend(self.wedge_words(letters, m)?);
        }
        Ok(out)
    }

    /// Canonical wedge words with an exact letter multiset and word degree.
    pub fn wedge_words_of_multiset(
        &self,
        multiset: &[u32],
        degree: i64,
    ) -> Result<Vec<WedgeWord>, CoalgebraError> {
        // Partition the multiset into factor sub-multisets; each part
        // contributes its section arrangements.
        let gb = self.alphabet().clone();
        let mut out = Vec::new();
        let mut stack: Vec<TensorWord> = Vec::new();
        let mut parts: Vec<Vec<u32>> = Vec::new();
        self.multiset_words_rec(&mut parts, multiset, &mut stack, &mut out)?;
        out.retain(|w| w.degree(&gb) == degree);
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn multiset_words_rec(
        &self,
        parts: &mut Vec<Vec<u32>>,
        remaining: &[u32],
        stack: &mut Vec<TensorWord>,
        out: &mut Vec<WedgeWord>,
    ) -> Result<(), CoalgebraError> {
        if remaining.is_empty() {
            // Expand each part into its sections, keep canonical words.
            self.expand_parts(parts, 0, stack, out)?;
            return Ok(());
        }
        // Choose the sub-multiset containing the smallest remaining
        // letter to avoid enumerating ordered partitions twice.
        let first = remaining[0];
        let rest: Vec<u32> = remaining[1..].to_vec();
        for (sub, comp) in sub_multisets_containing_first(first, &rest) {
            parts.push(sub);
            self.multiset_words_rec(parts, &comp, stack, out)?;
            parts.pop();
        }
        Ok(())
    }

    fn expand_parts(
        &self,
        parts: &Vec<Vec<u32>>,
        idx: usize,
        stack: &mut Vec<TensorWord>,
        out: &mut Vec<WedgeWord>,
    ) -> Result<(), CoalgebraError> {
        if idx == parts.len() {
            let gb = self.alphabet();
            let mut factors = stack.clone();
            factors.sort();
            let ok = factors
                .windows(2)
                .all(|p| p[0] != p[1] || p[0].factor_degree(gb) % 2 == 0);
            if ok {
                out.push(WedgeWord::new(factors));
            }
            return Ok(());
        }
        for t in self.sections_of(&parts[idx])? {
            stack.push(t);
            self.expand_parts(parts, idx + 1, stack, out)?;
            stack.pop();
        }
        Ok(())
    }
}

/// Splits `first + rest` into (sub, complement) where sub always contains
/// `first`; covers unordered partitions exactly once per recursion level.
fn sub_multisets_containing_first(first: u32, rest: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    // Runs of equal letters in rest.
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &l in rest {
        match runs.last_mut() {
            Some((v, n)) if *v == l => *n += 1,
            _ => runs.push((l, 1)),
        }
    }
    let mut counts = vec![0usize; runs.len()];
    loop {
        let mut sub = vec![first];
        let mut comp = Vec::new();
        for (i, &(v, n)) in runs.iter().enumerate() {
            sub.extend(std::iter::repeat(v).take(counts[i]));
            comp.extend(std::iter::repeat(v).take(n - counts[i]));
        }
        out.push((sub, comp));
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
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use shak_core::GradedBasis;

    fn ctx() -> CoalgebraCtx {
        CoalgebraCtx::with_default_conventions(
            GradedBasis::from_pairs(&[("x", 0), ("y", 1), ("z", 2)]).unwrap(),
        )
    }

    #[test]
    fn weight_one_words_are_letters() {
        let c = ctx();
        let w = c.wedge_words(&[0, 1, 2], 1).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.iter().all(|w| w.is_letter()));
    }

    #[test]
    fn weight_two_words_split_into_shapes() {
        let c = ctx();
        let w = c.wedge_words(&[0, 1], 2).unwrap();
        // Single factor of length 2: xy and yy survive; xx dies because
        // the even letter's square is itself a shuffle. Two factors: x^y
        // plus y^y (y has even factor degree); x^x dies (odd factor
        // degree).
        let single: Vec<_> = w.iter().filter(|w| w.factor_count() == 1).collect();
        let double: Vec<_> = w.iter().filter(|w| w.factor_count() == 2).collect();
        assert_eq!(single.len(), 2, "{single:?}");
        assert_eq!(double.len(), 2, "{double:?}");
    }

    #[test]
    fn multiset_enumeration_matches_filtered_full_enumeration() {
        let c = ctx();
        let gb = c.alphabet().clone();
        let all = c.wedge_words(&[0, 1, 2], 3).unwrap();
        for ms in [vec![0, 1, 2], vec![0, 0, 1], vec![1, 1, 2]] {
            let degrees: Vec<i64> = {
                let mut d: Vec<i64> = all
                    .iter()
                    .filter(|w| w.sorted_letters() == ms)
                    .map(|w| w.degree(&gb))
                    .collect();
                d.sort_unstable();
                d.dedup();
                d
            };
            for deg in degrees {
                let got = c.wedge_words_of_multiset(&ms, deg).unwrap();
                let expect: Vec<WedgeWord> = all
                    .iter()
                    .filter(|w| w.sorted_letters() == ms && w.degree(&gb) == deg)
                    .cloned()
                    .collect();
                assert_eq!(got, expect, "multiset {ms:?} degree {deg}");
            }
        }
    }
}
