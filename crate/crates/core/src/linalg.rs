//! Exact linear algebra on sparse coordinate vectors: kernels of column
//! families, span membership, and dense reduced row echelon form.

use std::collections::BTreeMap;

use crate::rings::{Field, Ring, Scalar};

/// Sparse vector indexed by an ordered key (words, monomials, ...).
pub type SparseVec<K> = BTreeMap<K, Scalar>;

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, factor: &Scalar, w: &SparseVec<K>) {
    for (k, c) in w {
        let delta = factor.mul(c);
        match v.get_mut(k) {
            Some(slot) => {
                *slot = slot.sub(&delta);
                if slot.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(k.clone(), delta.neg());
            }
        }
    }
}

fn dense_axpy(v: &mut [Scalar], factor: &Scalar, w: &[Scalar]) {
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            *a = a.sub(&factor.mul(b));
        }
    }
}

/// Incremental echelon basis of a family of sparse vectors. Each stored
/// vector is normalized to 1 at its pivot (its smallest key) and carries the
/// combination of inserted vectors that produced it.
pub struct Echelon<K> {
    field: Field,
    width: usize,
    pivots: BTreeMap<K, (SparseVec<K>, Vec<Scalar>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Echelon<K> {
    /// `width` bounds how many vectors will be inserted.
    pub fn new(field: Field, width: usize) -> Self {
        Echelon {
            field,
            width,
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// combination `c` with `v - sum c_j inserted_j = residual`.
    pub fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, Vec<Scalar>) {
        let mut combo = vec![self.field.zero(); self.width];
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.iter().next(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c), std::ops::Bound::Unbounded))
                    .next(),
            };
            let Some((k, c)) = next.map(|(k, c)| (k.clone(), c.clone())) else {
                break;
            };
            if let Some((pv, pc)) = self.pivots.get(&k) {
                axpy(&mut v, &c, pv);
                // residual = v - c * pv, and pv = sum pc_j inserted_j
                for (slot, p) in combo.iter_mut().zip(pc) {
                    if !p.is_zero() {
                        *slot = slot.add(&c.mul(p));
                    }
                }
            }
            cursor = Some(k);
        }
        (v, combo)
    }

    /// Inserts the next vector. Returns a kernel relation
    /// (coefficients over all inserted vectors, including this one) when it
    /// is dependent on the earlier ones.
    pub fn insert(&mut self, v: SparseVec<K>) -> Option<Vec<Scalar>> {
        assert!(self.inserted < self.width, "echelon width exceeded");
        let idx = self.inserted;
        self.inserted += 1;
        let (residual, combo) = self.reduce(v);
        // residual = v - combo . inserted
        let mut relation: Vec<Scalar> = combo.iter().map(|c| c.neg()).collect();
        relation[idx] = self.field.one();
        match residual.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            None => Some(relation),
            Some((k, lead)) => {
                let inv = lead.inv().expect("nonzero lead");
                let normalized: SparseVec<K> =
                    residual.into_iter().map(|(k, c)| (k, c.mul(&inv))).collect();
                let rel: Vec<Scalar> = relation.iter().map(|c| c.mul(&inv)).collect();
                self.pivots.insert(k, (normalized, rel));
                None
            }
        }
    }
}

/// Basis of `{c : sum_j c_j columns[j] = 0}` in reduced row echelon form with
/// respect to the column order.
pub fn kernel<K: Ord + Clone>(field: Field, columns: &[SparseVec<K>]) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(field, columns.len());
    let relations: Vec<_> = columns
        .iter()
        .filter_map(|c| ech.insert(c.clone()))
        .collect();
    rref(field, relations)
}

/// Coefficients expressing `target` in the span of `columns`, if it lies
/// there.
pub fn solve_in_span<K: Ord + Clone>(
    field: Field,
    target: &SparseVec<K>,
    columns: &[SparseVec<K>],
) -> Option<Vec<Scalar>> {
    let mut ech = Echelon::new(field, columns.len());
    for c in columns {
        ech.insert(c.clone());
    }
    let (residual, combo) = ech.reduce(target.clone());
    residual.is_empty().then_some(combo)
}

/// Reduced row echelon form, zero rows dropped.
pub fn rref(field: Field, mut rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in rows[rank].iter_mut() {
            *c = c.mul(&inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                dense_axpy(row, &f, &pivot_row);
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    debug_assert!(rows.iter().all(|r| r.iter().all(|c| c.field() == field)));
    rows
}
