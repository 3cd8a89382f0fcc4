//! Finite-dimensional windows into the polydifferential complex: all
//! operators whose per-slot derivative order and coefficient degree stay
//! under fixed bounds. The Hochschild differential keeps both bounds
//! (inserting an argument adds an order-0 slot; splitting a slot never
//! raises a slot's order and never touches coefficients), so each arity
//! window maps to the next one and cohomology becomes exact linear
//! algebra.

use std::collections::BTreeMap;

use shak_core::{FactoredSystem, Scalar, SparseVec};

use crate::error::HochschildError;
use crate::ops::{OpKey, PolyDiffOp};
use crate::poly::{Exponents, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationBox {
    /// Number of variables.
    pub vars: usize,
    /// Largest arity callers may ask about.
    pub arity_max: usize,
    /// Per-slot total derivative order bound.
    pub slot_order: u32,
    /// Coefficient total degree bound.
    pub coeff_degree: u32,
}

/// Result of a box-level rank computation at one arity.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    /// dim H^k = cocycle_rank - boundary_rank.
    pub dimension: usize,
    /// Cocycles spanning a complement of the boundaries, echelon-reduced.
    pub representatives: Vec<PolyDiffOp>,
    /// dim V(k), the whole window at this arity.
    pub space_dimension: usize,
    /// dim ker b restricted to the window.
    pub cocycle_rank: usize,
    /// rank of b out of the previous window.
    pub boundary_rank: usize,
}

impl TruncationBox {
    pub fn new(
        vars: usize,
        arity_max: usize,
        slot_order: u32,
        coeff_degree: u32,
    ) -> Result<Self, HochschildError> {
        if vars == 0 {
            return Err(HochschildError::Malformed(
                "a truncation box needs at least one variable".into(),
            ));
        }
        Ok(TruncationBox {
            vars,
            arity_max,
            slot_order,
            coeff_degree,
        })
    }

    /// All derivative multi-indices a slot may carry.
    fn slot_indices(&self) -> Vec<Exponents> {
        bounded_exponents(self.vars, self.slot_order)
    }

    /// All coefficient monomial exponents.
    fn monomials(&self) -> Vec<Exponents> {
        bounded_exponents(self.vars, self.coeff_degree)
    }

    pub fn dim(&self, k: usize) -> usize {
        self.slot_indices().len().pow(k as u32) * self.monomials().len()
    }

    /// Whether the operator's shape fits the order and degree bounds
    /// (arity is not consulted; windows above `arity_max` are legitimate
    /// codomains for b).
    pub fn admits(&self, op: &PolyDiffOp) -> bool {
        op.vars() == self.vars
            && op.max_slot_order() <= self.slot_order
            && op.max_coeff_degree() <= self.coeff_degree
    }

    pub fn contains(&self, op: &PolyDiffOp) -> bool {
        op.arity() <= self.arity_max && self.admits(op)
    }

    /// The basis of V(k): one operator per (key, monomial) pair, in a
    /// deterministic order.
    pub fn basis(&self, k: usize) -> Result<Vec<PolyDiffOp>, HochschildError> {
        if k > self.arity_max {
            return Err(HochschildError::Malformed(format!(
                "arity {k} beyond the box bound {}",
                self.arity_max
            )));
        }
        Ok(self
            .window(k)
            .coords
            .iter()
            .map(|(key, exps)| basis_op(self.vars, key, exps))
            .collect())
    }

    fn window(&self, k: usize) -> Window {
        let slots = self.slot_indices();
        let monomials = self.monomials();
        let mut coords: Vec<(OpKey, Exponents)> = Vec::new();
        let mut key = Vec::with_capacity(k);
        enumerate_keys(&slots, k, &mut key, &mut |key| {
            for m in &monomials {
                coords.push((key.to_vec(), m.clone()));
            }
        });
        let index = coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i as u32))
            .collect();
        Window { coords, index }
    }

    /// dim H^k within the box, with echelonized cocycle representatives.
    /// `cap` bounds the solver working set.
    pub fn truncated_cohomology(
        &self,
        k: usize,
        cap: usize,
    ) -> Result<CohomologyReport, HochschildError> {
        if k > self.arity_max {
            return Err(HochschildError::Malformed(format!(
                "arity {k} beyond the box bound {}",
                self.arity_max
            )));
        }
        let source = self.window(k);
        let target = self.window(k + 1);
        let dim_k = source.coords.len();

        // b out of V(k), assembled row-per-target-coordinate so the
        // kernel of the factored system is the cocycle space.
        let mut rows: BTreeMap<u32, SparseVec> = BTreeMap::new();
        for (j, (key, exps)) in source.coords.iter().enumerate() {
            let op = basis_op(self.vars, key, exps);
            for (coord, c) in target.coordinates(&op.hochschild_b())? {
                rows.entry(coord)
                    .or_insert_with(SparseVec::new)
                    .add_scaled(&SparseVec::unit(j as u32), &c);
            }
        }
        let cocycle_system =
            FactoredSystem::new(rows.into_values().collect(), dim_k as u32, cap)?;
        let cocycle_rank = dim_k - cocycle_system.rank();

        // b into V(k): echelonize the boundary space.
        let mut image_rows: Vec<SparseVec> = Vec::new();
        if k > 0 {
            for (key, exps) in &self.window(k - 1).coords {
                let op = basis_op(self.vars, key, exps);
                let row = SparseVec::from_pairs(source.coordinates(&op.hochschild_b())?);
                if !row.is_zero() {
                    image_rows.push(row);
                }
            }
        }
        let image_system = FactoredSystem::new(image_rows, dim_k as u32, cap)?;
        let boundary_rank = image_system.rank();

        // Reduce kernel vectors against the boundaries; what survives is
        // an echelon basis of the cohomology.
        let mut echelon: Vec<(u32, SparseVec)> = Vec::new();
        let mut representatives = Vec::new();
        for mut v in cocycle_system.kernel() {
            for p in 0..image_system.rank() {
                let (col, prow) = image_system.pivot_row(p);
                if let Some(c) = v.get(col).cloned() {
                    v.add_scaled(prow, &-c);
                }
            }
            for (lead, w) in &echelon {
                if let Some(c) = v.get(*lead).cloned() {
                    v.add_scaled(w, &-c);
                }
            }
            let Some(lead) = v.leading() else { continue };
            let inv = v
                .get(lead)
                .expect("leading entry exists")
                .inv()
                .expect("leading entry is nonzero");
            v.scale_in_place(&inv);
            let pos = echelon.partition_point(|(l, _)| *l < lead);
            echelon.insert(pos, (lead, v.clone()));
            representatives.push(source.op_from_coords(self.vars, k, &v));
        }
        // The boundaries sit inside the cocycles (b is square zero), so
        // the surviving count is forced.
        debug_assert_eq!(representatives.len(), cocycle_rank - boundary_rank);

        Ok(CohomologyReport {
            dimension: cocycle_rank - boundary_rank,
            representatives,
            space_dimension: dim_k,
            cocycle_rank,
            boundary_rank,
        })
    }

    /// Decomposes `target` as b(w) + r with w inside this box at the given
    /// arity; returns the preimage w when the remainder r is zero.
    pub fn b_preimage(
        &self,
        arity: usize,
        target: &PolyDiffOp,
        cap: usize,
    ) -> Result<Option<PolyDiffOp>, HochschildError> {
        if target.vars() != self.vars {
            return Err(HochschildError::Malformed(
                "preimage target over a different variable count".into(),
            ));
        }
        if target.arity() != arity + 1 {
            return Err(HochschildError::Malformed(format!(
                "preimage target of arity {} for sources of arity {arity}",
                target.arity()
            )));
        }
        let source = self.window(arity);
        let codomain = self.window(arity + 1);
        let Ok(rhs_pairs) = codomain.coordinates(target) else {
            // Support outside the window: no preimage inside this box.
            return Ok(None);
        };
        let mut rows: BTreeMap<u32, SparseVec> = BTreeMap::new();
        for (j, (key, exps)) in source.coords.iter().enumerate() {
            let op = basis_op(self.vars, key, exps);
            for (coord, c) in codomain.coordinates(&op.hochschild_b())? {
                rows.entry(coord)
                    .or_insert_with(SparseVec::new)
                    .add_scaled(&SparseVec::unit(j as u32), &c);
            }
        }
        // Row index i in the system corresponds to the i-th occupied
        // target coordinate; the right side must be rebased the same way.
        let occupied: Vec<u32> = rows.keys().copied().collect();
        let rebase: BTreeMap<u32, u32> = occupied
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let mut rhs = SparseVec::new();
        for (coord, c) in rhs_pairs {
            match rebase.get(&coord) {
                Some(&i) => rhs.add_scaled(&SparseVec::unit(i), &c),
                // The target has support where b of the whole window
                // has none: not exact.
                None => return Ok(None),
            }
        }
        let system = FactoredSystem::new(
            rows.into_values().collect(),
            source.coords.len() as u32,
            cap,
        )?;
        // The system rows are functionals on V(arity); transpose back by
        // solving with the target's rebased coordinates as the right side.
        match system.solve(&rhs) {
            Ok(x) => Ok(Some(source.op_from_coords(self.vars, arity, &x))),
            Err(_) => Ok(None),
        }
    }
}

fn basis_op(vars: usize, key: &OpKey, exps: &Exponents) -> PolyDiffOp {
    PolyDiffOp::term(
        vars,
        key.clone(),
        Polynomial::monomial(vars, exps.clone(), Scalar::one())
            .expect("enumerated exponents match vars"),
    )
    .expect("enumerated keys match vars")
}

struct Window {
    coords: Vec<(OpKey, Exponents)>,
    index: BTreeMap<(OpKey, Exponents), u32>,
}

impl Window {
    /// Coordinates of an operator in this window; errors when a term
    /// falls outside it.
    fn coordinates(&self, op: &PolyDiffOp) -> Result<Vec<(u32, Scalar)>, HochschildError> {
        let mut out = Vec::new();
        for (key, poly) in op.iter() {
            for (exps, c) in poly.iter() {
                let probe = (key.clone(), exps.clone());
                match self.index.get(&probe) {
                    Some(&i) => out.push((i, c.clone())),
                    None => {
                        return Err(HochschildError::Malformed(format!(
                            "operator term outside the window: {op}"
                        )));
                    }
                }
            }
        }
        Ok(out)
    }

    fn op_from_coords(&self, vars: usize, arity: usize, v: &SparseVec) -> PolyDiffOp {
        let mut op = PolyDiffOp::zero(vars, arity);
        for (i, c) in v.iter() {
            let (key, exps) = &self.coords[i as usize];
            op = op.add(
                &PolyDiffOp::term(
                    vars,
                    key.clone(),
                    Polynomial::monomial(vars, exps.clone(), c.clone())
                        .expect("window coordinates are well formed"),
                )
                .expect("window coordinates are well formed"),
            );
        }
        op
    }
}

/// All exponent vectors over `vars` variables with total sum <= `bound`,
/// in lexicographic order.
pub(crate) fn bounded_exponents(vars: usize, bound: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut current = vec![0u32; vars];
    fill_exponents(vars, bound, 0, &mut current, &mut out);
    out.sort();
    out
}

fn fill_exponents(
    vars: usize,
    remaining: u32,
    pos: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Exponents>,
) {
    if pos == vars {
        out.push(current.clone());
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill_exponents(vars, remaining - e, pos + 1, current, out);
    }
    current[pos] = 0;
}

fn enumerate_keys(
    slots: &[Exponents],
    k: usize,
    current: &mut Vec<Exponents>,
    visit: &mut impl FnMut(&[Exponents]),
) {
    if current.len() == k {
        visit(current);
        return;
    }
    for s in slots {
        current.push(s.clone());
        enumerate_keys(slots, k, current, visit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_sizes_are_products() {
        let b = TruncationBox::new(1, 3, 2, 2).unwrap();
        // 3 multi-indices per slot, 3 monomials.
        assert_eq!(b.dim(0), 3);
        assert_eq!(b.dim(1), 9);
        assert_eq!(b.dim(2), 27);
        assert_eq!(b.basis(2).unwrap().len(), 27);
        assert!(b.basis(4).is_err());

        let b2 = TruncationBox::new(2, 3, 2, 2).unwrap();
        assert_eq!(b2.dim(3), 6usize.pow(3) * 6);
    }

    #[test]
    fn exponent_enumeration_is_sorted_and_complete() {
        let e = bounded_exponents(2, 1);
        assert_eq!(e, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(bounded_exponents(2, 2).len(), 6);
        assert_eq!(bounded_exponents(3, 2).len(), 10);
    }
}
