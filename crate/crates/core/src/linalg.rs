//! Small dense linear algebra over GF(q): row reduction, rank, kernels.
//!
//! Everything here works on `Vec<Vec<FieldElem>>` rows at desk scale; the
//! consumers are subspace canonicalization (linear sets), conic fitting, and
//! frame solving, none of which exceed a few hundred rows.

use crate::gf::{FieldElem, FieldSpec};

/// Reduced row-echelon form in place; returns the pivot columns.
/// Zero rows are dropped, so `rows.len()` afterwards is the rank.
pub fn rref(rows: &mut Vec<Vec<FieldElem>>, spec: &FieldSpec) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = spec.inv(rows[r][col]).expect("pivot nonzero");
        for x in rows[r].iter_mut() {
            *x = spec.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x = spec.sub(*x, spec.mul(f, pv));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<FieldElem>], spec: &FieldSpec) -> usize {
    let mut copy: Vec<Vec<FieldElem>> = rows.to_vec();
    rref(&mut copy, spec);
    copy.len()
}

/// Basis of the right kernel {x : M·x = 0} of the matrix given by rows.
pub fn kernel_basis(rows: &[Vec<FieldElem>], width: usize, spec: &FieldSpec) -> Vec<Vec<FieldElem>> {
    let mut m: Vec<Vec<FieldElem>> = rows.to_vec();
    let pivots = rref(&mut m, spec);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![FieldElem::ZERO; width];
        v[fc] = FieldElem::ONE;
        for (ri, &pc) in pivots.iter().enumerate() {
            // pivot row: x_pc + Σ a_j x_j = 0  →  x_pc = -a_fc
            v[pc] = spec.neg(m[ri][fc]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn rref_and_rank_over_gf3() {
        let f3 = make_field(3, 1, None).unwrap();
        let e = |r: u64| f3.elem(r);
        let mut rows = vec![
            vec![e(1), e(2), e(0)],
            vec![e(0), e(1), e(1)],
            vec![e(0), e(0), e(1)],
        ];
        let pivots = rref(&mut rows, &f3);
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(rows.len(), 3);
        // identity after reduction
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { e(1) } else { e(0) });
            }
        }
        let indep = vec![vec![e(1), e(2), e(0)], vec![e(0), e(1), e(1)]];
        assert_eq!(rank(&indep, &f3), 2);
        // (2,1,0) = 2·(1,2,0) over GF(3): dependent rows collapse
        let dep = vec![vec![e(1), e(2), e(0)], vec![e(2), e(1), e(0)]];
        assert_eq!(rank(&dep, &f3), 1);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f5 = make_field(5, 1, None).unwrap();
        let e = |r: u64| f5.elem(r);
        let rows = vec![vec![e(1), e(2), e(3), e(4)], vec![e(0), e(1), e(4), e(2)]];
        let ker = kernel_basis(&rows, 4, &f5);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &rows {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| f5.add(acc, f5.mul(a, b)));
                assert!(dot.is_zero());
            }
        }
    }
}
