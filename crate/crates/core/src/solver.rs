use std::collections::BTreeMap;

use crate::{BasisId, CoreError, Element, Scalar};

/// Sparse vector: strictly increasing column indices, no zero entries.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseVec(Vec<(u32, Scalar)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(col: u32) -> Self {
        SparseVec(vec![(col, Scalar::one())])
    }

    /// Builds from arbitrary (index, coeff) pairs, merging duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Scalar)>) -> Self {
        let mut map: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (i, c) in pairs {
            if c.is_zero() {
                continue;
            }
            let e = map.entry(i).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                map.remove(&i);
            }
        }
        SparseVec(map.into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn leading(&self) -> Option<u32> {
        self.0.first().map(|(i, _)| *i)
    }

    pub fn get(&self, col: u32) -> Option<&Scalar> {
        self.0
            .binary_search_by_key(&col, |(i, _)| *i)
            .ok()
            .map(|k| &self.0[k].1)
    }

    pub fn scale_in_place(&mut self, s: &Scalar) {
        if s.is_zero() {
            self.0.clear();
            return;
        }
        for (_, c) in &mut self.0 {
            *c = &*c * s;
        }
    }

    /// self += s * other, merging sorted entry lists.
    pub fn add_scaled(&mut self, other: &SparseVec, s: &Scalar) {
        if s.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ia, _)), Some(&&(ib, _))) if ia == ib => {
                    let (_, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let c = ca + &(cb * s);
                    if !c.is_zero() {
                        out.push((ia, c));
                    }
                }
                (Some(&&(ia, _)), Some(&&(ib, _))) if ia < ib => {
                    out.push(a.next().unwrap().clone());
                }
                (Some(_), Some(_)) | (None, Some(_)) => {
                    let (ib, cb) = b.next().unwrap();
                    out.push((*ib, cb * s));
                }
                (Some(_), None) => {
                    out.push(a.next().unwrap().clone());
                }
                (None, None) => break,
            }
        }
        self.0 = out;
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (i, c) in short.iter() {
            if let Some(d) = long.get(i) {
                acc += c * d;
            }
        }
        acc
    }
}

pub const DEFAULT_SOLVER_CAP: usize = 20_000_000;

/// Row-reduced linear system `A x = b` with the reduction fixed once and the
/// right-hand side supplied per solve.
///
/// Every reduced row remembers the combination of original rows it came
/// from, so solving for a new `b` is a matter of dotting those combinations
/// against `b`, and inconsistency always comes with a checkable certificate:
/// a combination of the original equations whose left side vanished but
/// whose right side does not.
///
/// Determinism: columns are processed in ascending order and the pivot for
/// a column is the candidate row with the fewest entries (ties broken by
/// lowest original row index). Free variables are set to zero in particular
/// solutions, which is the minimal-support rule used across the workspace.
pub struct FactoredSystem {
    ncols: u32,
    nrows: usize,
    /// (pivot column, reduced row, combination of original rows).
    pivots: Vec<(u32, SparseVec, SparseVec)>,
    /// Combinations of original rows that reduce to zero on the left.
    null_combs: Vec<SparseVec>,
    free_cols: Vec<u32>,
}

/// Witness that a right-hand side is not in the image: dotting
/// `row_combination` against the rows of `A` gives zero, but against `b`
/// gives `residual`.
#[derive(Clone, Debug)]
pub struct InconsistencyCertificate {
    pub row_combination: SparseVec,
    pub residual: Scalar,
}

impl FactoredSystem {
    pub fn new(rows: Vec<SparseVec>, ncols: u32, cap: usize) -> Result<Self, CoreError> {
        let nrows = rows.len();
        let mut work: Vec<(SparseVec, SparseVec)> = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| (r, SparseVec::unit(i as u32)))
            .collect();
        let mut pivots: Vec<(u32, SparseVec, SparseVec)> = Vec::new();
        let mut free_cols = Vec::new();
        let mut entries: usize = work.iter().map(|(r, _)| r.len() + 1).sum();

        for col in 0..ncols {
            // Unpivoted rows are reduced below all previous pivot columns,
            // so a row is a candidate exactly when its leading entry is col.
            let mut best: Option<usize> = None;
            for (k, (row, _)) in work.iter().enumerate() {
                if row.leading() == Some(col) {
                    best = match best {
                        None => Some(k),
                        Some(b) if row.len() < work[b].0.len() => Some(k),
                        Some(b) => Some(b),
                    };
                }
            }
            let Some(k) = best else {
                free_cols.push(col);
                continue;
            };
            let (mut prow, mut pcomb) = work.swap_remove(k);
            let inv = prow.get(col).unwrap().inv()?;
            prow.scale_in_place(&inv);
            pcomb.scale_in_place(&inv);
            for (row, comb) in work.iter_mut() {
                if let Some(c) = row.get(col).cloned() {
                    let neg = -c;
                    entries = entries.saturating_sub(row.len() + comb.len());
                    row.add_scaled(&prow, &neg);
                    comb.add_scaled(&pcomb, &neg);
                    entries += row.len() + comb.len();
                }
            }
            for (_, rrow, rcomb) in pivots.iter_mut() {
                if let Some(c) = rrow.get(col).cloned() {
                    let neg = -c;
                    rrow.add_scaled(&prow, &neg);
                    rcomb.add_scaled(&pcomb, &neg);
                }
            }
            pivots.push((col, prow, pcomb));
            if entries > cap {
                return Err(CoreError::CapacityExceeded(format!(
                    "solver working set passed {cap} entries"
                )));
            }
        }

        // Whatever is left reduced to zero on the left; keep the
        // combinations as consistency checks and certificates.
        let null_combs = work
            .into_iter()
            .map(|(row, comb)| {
                debug_assert!(row.is_zero());
                comb
            })
            .collect();

        Ok(FactoredSystem {
            ncols,
            nrows,
            pivots,
            null_combs,
            free_cols,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> u32 {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn free_cols(&self) -> &[u32] {
        &self.free_cols
    }

    /// k-th pivot: its column and the reduced row (unit at the pivot
    /// column, other entries only at free columns).
    pub fn pivot_row(&self, k: usize) -> (u32, &SparseVec) {
        let (col, row, _) = &self.pivots[k];
        (*col, row)
    }

    pub fn check_consistent(&self, rhs: &SparseVec) -> Result<(), InconsistencyCertificate> {
        for comb in &self.null_combs {
            let r = comb.dot(rhs);
            if !r.is_zero() {
                return Err(InconsistencyCertificate {
                    row_combination: comb.clone(),
                    residual: r,
                });
            }
        }
        Ok(())
    }

    /// Particular solution with free variables zero. `rhs` is indexed by
    /// original row number.
    pub fn solve(&self, rhs: &SparseVec) -> Result<SparseVec, InconsistencyCertificate> {
        self.check_consistent(rhs)?;
        let mut pairs = Vec::with_capacity(self.pivots.len());
        for (col, _, comb) in &self.pivots {
            let v = comb.dot(rhs);
            if !v.is_zero() {
                pairs.push((*col, v));
            }
        }
        pairs.sort_by_key(|(c, _)| *c);
        Ok(SparseVec(pairs))
    }

    /// Linear functional `f` on the unknowns, precomposed with the solve:
    /// the result dots against right-hand sides directly. Only meaningful
    /// together with [`check_consistent`](Self::check_consistent); the free
    /// variables are taken as zero.
    pub fn solution_functional(&self, f: &SparseVec) -> SparseVec {
        let mut w = SparseVec::new();
        for (col, _, comb) in &self.pivots {
            if let Some(c) = f.get(*col) {
                w.add_scaled(comb, c);
            }
        }
        w
    }

    /// Basis of the homogeneous solutions, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.free_cols
            .iter()
            .map(|&fc| {
                let mut pairs = vec![(fc, Scalar::one())];
                for (col, row, _) in &self.pivots {
                    if let Some(c) = row.get(fc) {
                        pairs.push((*col, -c.clone()));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }

    /// Residual `A x - b` recomputed against the original rows; used by
    /// callers that want to double-check a solution independently.
    pub fn verify(rows: &[SparseVec], x: &SparseVec, rhs: &SparseVec) -> bool {
        for (i, row) in rows.iter().enumerate() {
            let lhs = row.dot(x);
            let b = rhs.get(i as u32).cloned().unwrap_or_else(Scalar::zero);
            if lhs != b {
                return false;
            }
        }
        true
    }
}

/// Convenience wrapper bundling rows for repeated solves and verification.
pub struct SparseMatrix {
    pub rows: Vec<SparseVec>,
    pub ncols: u32,
}

impl SparseMatrix {
    pub fn new(ncols: u32) -> Self {
        SparseMatrix {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn push_row(&mut self, row: SparseVec) {
        self.rows.push(row);
    }

    pub fn factor(&self, cap: usize) -> Result<FactoredSystem, CoreError> {
        FactoredSystem::new(self.rows.clone(), self.ncols, cap)
    }

    /// Matrix-vector product, `x` over columns, result over row indices.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(self.rows.iter().enumerate().filter_map(|(i, row)| {
            let v = row.dot(x);
            if v.is_zero() {
                None
            } else {
                Some((i as u32, v))
            }
        }))
    }
}

/// Outcome of [`solve_linear`].
pub enum SolveOutcome {
    /// `solution[u]` is the value assigned to the unknown in slot `u`.
    /// `kernel_patterns` spans the coefficient combinations that map every
    /// equation to zero: the full solution set is obtained by adding, for
    /// any pattern kappa and any basis vector v, the assignment
    /// `slot u -> kappa[u] * v`.
    Solved {
        solution: Vec<Element>,
        kernel_patterns: Vec<Element>,
    },
    Inconsistent {
        /// Combination of equation indices with zero left-hand side.
        row_combination: Vec<(usize, Scalar)>,
        /// Coordinate of the right-hand side where the combination fails.
        coordinate: BasisId,
        residual: Scalar,
    },
}

pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub rank: usize,
}

/// Solves a system of vector-valued equations `sum_u pattern_i[u] * X_u =
/// target_i`, one unknown vector `X_u` per basis slot of the common space.
///
/// Elimination happens once on the pattern matrix; each coordinate of the
/// targets reuses it. Particular solutions set every free combination to
/// zero, making the answer support-minimal and deterministic.
pub fn solve_linear(
    dim: usize,
    system: &[(Element, Element)],
    cap: usize,
) -> Result<SolveReport, CoreError> {
    let rows: Vec<SparseVec> = system
        .iter()
        .map(|(p, _)| SparseVec::from_pairs(p.iter().map(|(id, c)| (id.0, c.clone()))))
        .collect();
    let factored = FactoredSystem::new(rows, dim as u32, cap)?;

    // Gather the coordinates that actually occur on the right.
    let mut coords: Vec<u32> = Vec::new();
    for (_, t) in system {
        for (id, _) in t.iter() {
            coords.push(id.0);
        }
    }
    coords.sort_unstable();
    coords.dedup();

    let mut solution = vec![Element::zero(); dim];
    for &t in &coords {
        let rhs = SparseVec::from_pairs(system.iter().enumerate().filter_map(|(i, (_, tgt))| {
            let c = tgt.coeff(BasisId(t));
            if c.is_zero() {
                None
            } else {
                Some((i as u32, c))
            }
        }));
        match factored.solve(&rhs) {
            Ok(x) => {
                for (u, c) in x.iter() {
                    solution[u as usize].add_term(BasisId(t), c.clone());
                }
            }
            Err(cert) => {
                return Ok(SolveReport {
                    rank: factored.rank(),
                    outcome: SolveOutcome::Inconsistent {
                        row_combination: cert
                            .row_combination
                            .iter()
                            .map(|(i, c)| (i as usize, c.clone()))
                            .collect(),
                        coordinate: BasisId(t),
                        residual: cert.residual,
                    },
                });
            }
        }
    }

    let kernel_patterns = factored
        .kernel()
        .into_iter()
        .map(|k| Element::from_terms(k.iter().map(|(i, c)| (BasisId(i), c.clone()))))
        .collect();

    Ok(SolveReport {
        rank: factored.rank(),
        outcome: SolveOutcome::Solved {
            solution,
            kernel_patterns,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(u32, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, c)| (i, Scalar::from_int(c))))
    }

    #[test]
    fn solves_small_unique_system() {
        // x0 + 2 x1 = 5; 3 x1 = 3.
        let rows = vec![sv(&[(0, 1), (1, 2)]), sv(&[(1, 3)])];
        let f = FactoredSystem::new(rows.clone(), 2, DEFAULT_SOLVER_CAP).unwrap();
        let rhs = sv(&[(0, 5), (1, 3)]);
        let x = f.solve(&rhs).unwrap();
        assert_eq!(x, sv(&[(0, 3), (1, 1)]));
        assert!(FactoredSystem::verify(&rows, &x, &rhs));
        assert!(f.kernel().is_empty());
    }

    #[test]
    fn free_variables_stay_zero() {
        // x0 + x1 = 2 with x1 free.
        let rows = vec![sv(&[(0, 1), (1, 1)])];
        let f = FactoredSystem::new(rows, 2, DEFAULT_SOLVER_CAP).unwrap();
        let x = f.solve(&sv(&[(0, 2)])).unwrap();
        assert_eq!(x, sv(&[(0, 2)]));
        let kernel = f.kernel();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], sv(&[(0, -1), (1, 1)]));
    }

    #[test]
    fn inconsistency_certificate_checks_out() {
        // x0 = 1 and x0 = 2.
        let rows = vec![sv(&[(0, 1)]), sv(&[(0, 1)])];
        let f = FactoredSystem::new(rows.clone(), 1, DEFAULT_SOLVER_CAP).unwrap();
        let rhs = sv(&[(0, 1), (1, 2)]);
        let cert = f.solve(&rhs).unwrap_err();
        // The combination annihilates the rows but not the right side.
        let mut lhs = SparseVec::new();
        for (i, c) in cert.row_combination.iter() {
            lhs.add_scaled(&rows[i as usize], c);
        }
        assert!(lhs.is_zero());
        assert_eq!(cert.row_combination.dot(&rhs), cert.residual);
        assert!(!cert.residual.is_zero());
    }

    #[test]
    fn functional_matches_direct_solution() {
        let rows = vec![sv(&[(0, 2), (1, 1)]), sv(&[(1, 5)]), sv(&[(0, 2), (1, 6)])];
        let f = FactoredSystem::new(rows, 2, DEFAULT_SOLVER_CAP).unwrap();
        let rhs = sv(&[(0, 7), (1, 10), (2, 17)]);
        f.check_consistent(&rhs).unwrap();
        let x = f.solve(&rhs).unwrap();
        let probe = sv(&[(0, 3), (1, -2)]);
        let w = f.solution_functional(&probe);
        assert_eq!(w.dot(&rhs), probe.dot(&x));
    }

    #[test]
    fn capacity_cap_trips() {
        let rows: Vec<SparseVec> = (0..20)
            .map(|i| sv(&[(i, 1), ((i + 1) % 20, 1), ((i + 7) % 20, 1)]))
            .collect();
        let r = FactoredSystem::new(rows, 20, 10);
        assert!(matches!(r, Err(CoreError::CapacityExceeded(_))));
    }
}
